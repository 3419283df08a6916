"""Bracket-notation skip patterns.

A pattern such as ``[2 1 3]`` records consecutive skip sizes along a walk
in the skip graph; a signed pattern such as ``[+2 +1 -3]`` also fixes the
direction of each step.  Signed patterns can be realized from a start
term, producing the sequence of visited terms and the arcs they traverse:
a ``+a`` step must leave from an even multiple of ``a`` (the left end of
an a-arc) and a ``-a`` step from an odd multiple (the right end).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Union


class PatternSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SignInferenceError(ValueError):
    def __init__(self, index: int, term: int, skip: int):
        super().__init__(
            f"term {term} is not a multiple of skip {skip} (step {index})"
        )
        self.index = index


@dataclass(frozen=True)
class Pattern:
    """An unsigned sequence of skip sizes."""

    skips: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.skips:
            raise ValueError("pattern must contain at least one skip")
        if any(s < 1 for s in self.skips):
            raise ValueError(f"skips must be positive, got {self.skips}")

    def __len__(self) -> int:
        return len(self.skips)

    def scaled(self, d: int) -> "Pattern":
        return Pattern(tuple(d * s for s in self.skips))


@dataclass(frozen=True)
class SignedPattern:
    """A sequence of (sign, skip) steps with sign in {+1, -1}."""

    steps: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("pattern must contain at least one step")
        for sign, skip in self.steps:
            if sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {sign}")
            if skip < 1:
                raise ValueError(f"skips must be positive, got {skip}")

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def skips(self) -> tuple[int, ...]:
        return tuple(skip for _, skip in self.steps)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(sign for sign, _ in self.steps)

    @property
    def signed_sum(self) -> int:
        return sum(sign * skip for sign, skip in self.steps)

    def unsigned(self) -> Pattern:
        return Pattern(self.skips)

    def scaled(self, d: int) -> "SignedPattern":
        return SignedPattern(tuple((sign, d * skip) for sign, skip in self.steps))

    def reversed_(self) -> "SignedPattern":
        """The same walk traced backwards: order and signs both flip."""
        return SignedPattern(tuple((-sign, skip) for sign, skip in reversed(self.steps)))


AnyPattern = Union[Pattern, SignedPattern]

_TOKEN = re.compile(r"\s*([+-]?)\s*(\d+)")


def parse_pattern(text: str) -> AnyPattern:
    """Parse bracket notation into a Pattern or SignedPattern.

    Steps are either all signed or all unsigned; mixing is an error.
    Signed steps may be juxtaposed without whitespace ("[+18+9-3]").
    """
    s = text.strip().replace("−", "-")
    if not (s.startswith("[") and s.endswith("]")):
        raise PatternSyntaxError("pattern must be enclosed in brackets", 0)
    body = s[1:-1]
    tokens: list[tuple[str, int]] = []
    pos = 0
    while True:
        m = _TOKEN.match(body, pos)
        if m is None:
            if body[pos:].strip():
                raise PatternSyntaxError(
                    f"unexpected text {body[pos:].strip()!r}", pos + 1
                )
            break
        sign, digits = m.group(1), m.group(2)
        skip = int(digits)
        if skip == 0:
            raise PatternSyntaxError("skip sizes must be positive", m.start(2) + 1)
        tokens.append((sign, skip))
        pos = m.end()
    if not tokens:
        raise PatternSyntaxError("pattern must contain at least one skip", 1)
    n_signed = sum(1 for sign, _ in tokens if sign)
    if n_signed == 0:
        return Pattern(tuple(skip for _, skip in tokens))
    if n_signed != len(tokens):
        raise PatternSyntaxError("signs must be given on all steps or none", 1)
    return SignedPattern(tuple((1 if sign == "+" else -1, skip) for sign, skip in tokens))


def format_pattern(p: AnyPattern) -> str:
    """Canonical text form: signs attached, single spaces between steps."""
    if isinstance(p, SignedPattern):
        return "[" + " ".join(f"{'+' if sign > 0 else '-'}{skip}" for sign, skip in p.steps) + "]"
    return "[" + " ".join(str(skip) for skip in p.skips) + "]"


def infer_signs(p: Pattern, start: int) -> SignedPattern:
    """Assign directions by walking from ``start``.

    Each step goes up when the current term is an even multiple of the
    next skip and down when it is an odd multiple; any term that is not a
    multiple of the next skip is an error.
    """
    if start < 0:
        raise ValueError(f"start term must be nonnegative, got {start}")
    t = start
    steps = []
    for k, skip in enumerate(p.skips):
        q, rem = divmod(t, skip)
        if rem:
            raise SignInferenceError(k, t, skip)
        sign = 1 if q % 2 == 0 else -1
        steps.append((sign, skip))
        t += sign * skip
    return SignedPattern(tuple(steps))


@dataclass(frozen=True)
class Realization:
    """A signed pattern walked from a concrete start term.

    ``terms[k]`` is the value before step k; ``arcs[k]`` is the unordered
    interval the step covers, stored as (left endpoint, right endpoint).
    ``parity_violations`` lists steps leaving from the wrong multiple
    (odd where an even multiple is required, or vice versa, or from a
    non-multiple entirely).
    """

    pattern: SignedPattern
    start: int
    terms: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]
    parity_violations: tuple[int, ...]

    @property
    def is_parity_valid(self) -> bool:
        return not self.parity_violations

    @property
    def is_closed(self) -> bool:
        return self.terms[0] == self.terms[-1]

    @property
    def has_negative_terms(self) -> bool:
        return any(t < 0 for t in self.terms)

    def repeated_terms(self, as_cycle: bool = False) -> tuple[int, ...]:
        """Term values visited more than once.

        With ``as_cycle`` a closed walk's final return to the start term is
        not a repeat (a cycle of k skips has k terms, not k+1).
        """
        terms = self.terms
        if as_cycle and self.is_closed:
            terms = terms[:-1]
        counts = Counter(terms)
        return tuple(sorted(t for t, c in counts.items() if c > 1))

    def repeated_arcs(self) -> tuple[tuple[int, int], ...]:
        counts = Counter(self.arcs)
        return tuple(sorted(a for a, c in counts.items() if c > 1))

    def is_strict(self, as_cycle: bool = False) -> bool:
        """True when the walk is parity-valid and repeats no term or arc."""
        return (
            not self.parity_violations
            and not self.has_negative_terms
            and not self.repeated_terms(as_cycle=as_cycle)
            and not self.repeated_arcs()
        )

    def to_json_dict(self) -> dict:
        return {
            "start": self.start,
            "signs": list(self.pattern.signs),
            "skips": list(self.pattern.skips),
            "terms": list(self.terms),
        }


def realize(sp: SignedPattern, start: int) -> Realization:
    """Walk ``sp`` from ``start``, recording terms, arcs and any violations."""
    if start < 0:
        raise ValueError(f"start term must be nonnegative, got {start}")
    t = start
    terms = [t]
    arcs = []
    violations = []
    for k, (sign, skip) in enumerate(sp.steps):
        want = 0 if sign > 0 else skip
        if t < 0 or t % (2 * skip) != want:
            violations.append(k)
        nxt = t + sign * skip
        arcs.append((min(t, nxt), max(t, nxt)))
        terms.append(nxt)
        t = nxt
    return Realization(sp, start, tuple(terms), tuple(arcs), tuple(violations))
