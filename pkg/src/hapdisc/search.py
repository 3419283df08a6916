"""Forbidden-pattern rule engine and pruned search for extremal paths
and odd cycles over a skip set.

The rule engine rejects skip sequences that can never be traced without
repeats, using local window shapes: an immediately repeated skip, the
[a b a] window with a not dividing b, [a b a b], a window [a b c a] whose
outer skip exceeds both inner ones, any three pairs packed into six
consecutive steps, the seven-step shape [b a c a b a c], odd runs of odd
skips fenced by even skips, span gcd obstructions, and the sign rules on
adjacent steps.  These are necessary conditions only; surviving every
rule does not certify realizability.

The depth-first search enumerates signed extensions, pruning with those
window rules, with a single incrementally merged start-term congruence
(one gcd merge per node decides weak realizability of the whole prefix),
and with term/arc freshness.  Every surviving node is therefore a
realizable path; cycle candidates additionally need an odd length and a
zero signed sum.  Among maximum-length candidates the result is the one
with the least witness start, then lexicographically least signs
(+ before -), then skips.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .numeric import Congruence, crt_merge, two_adic_valuation
from .pattern import AnyPattern, Pattern, SignedPattern, format_pattern
from .realizability import (
    REALIZABLE,
    step_congruence,
    strict_realizability,
    valid_odd_cycle,
)

RULE_IDS = (
    "AA",
    "ABA-div",
    "ABAB",
    "GCD-span",
    "PLUS-PLUS",
    "CLASS-SIGN",
    "ODD-BLOCKS",
    "ABCA",
    "AABBCC",
    "NO-PAIRS",
    "BACABAC",
)


@dataclass(frozen=True)
class RuleVerdict:
    forbidden: bool
    rule_id: str | None = None
    span: tuple[int, int] | None = None  # inclusive step-index range


@dataclass(frozen=True)
class SearchResult:
    kind: str  # "path" or "odd-cycle"
    length: int
    start: int
    pattern: Pattern
    signed: SignedPattern
    lower_bound: bool = False

    def table_row(self, size: int) -> str:
        row = f"{size} {self.kind.replace('odd-', '')} {self.length} {self.start} {format_pattern(self.pattern)}"
        return row + (" (lower bound)" if self.lower_bound else "")

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "length": self.length,
            "start": self.start,
            "pattern": format_pattern(self.pattern),
            "signed": format_pattern(self.signed),
            "lower_bound": self.lower_bound,
        }


def _scan_aa(skips):
    for k in range(len(skips) - 1):
        if skips[k] == skips[k + 1]:
            return k, k + 1
    return None


def _scan_aba_div(skips):
    for k in range(len(skips) - 2):
        if skips[k] == skips[k + 2] and skips[k + 1] % skips[k]:
            return k, k + 2
    return None


def _scan_abab(skips):
    for k in range(len(skips) - 3):
        if skips[k] == skips[k + 2] and skips[k + 1] == skips[k + 3]:
            return k, k + 3
    return None


def _scan_abca(skips):
    for k in range(len(skips) - 3):
        a, b, c, d = skips[k : k + 4]
        if a == d and a > b and a > c:
            return k, k + 3
    return None


def _pairs_window(skips, k, width):
    window = skips[k : k + width]
    counts = Counter(window)
    return len(counts) == width // 2 and all(c == 2 for c in counts.values())


def _scan_aabbcc(skips):
    for k in range(len(skips) - 5):
        if _pairs_window(skips, k, 6):
            return k, k + 5
    return None


def _scan_no_pairs(skips):
    # Umbrella for one, two or three pairs in a window; the specific
    # shapes are caught by AA / ABAB / AABBCC first, so this only fires
    # when those scans are bypassed.
    for width in (2, 4, 6):
        for k in range(len(skips) - width + 1):
            if _pairs_window(skips, k, width):
                return k, k + width - 1
    return None


def _scan_bacabac(skips):
    for k in range(len(skips) - 6):
        w = skips[k : k + 7]
        if (
            w[0] == w[4]
            and w[1] == w[3] == w[5]
            and w[2] == w[6]
            and len({w[0], w[1], w[2]}) == 3
        ):
            return k, k + 6
    return None


def _scan_odd_blocks(skips):
    even_positions = [k for k, s in enumerate(skips) if s % 2 == 0]
    for p, q in zip(even_positions, even_positions[1:]):
        if (q - p - 1) % 2:
            return p, q
    return None


def _scan_gcd_span_unsigned(skips):
    n = len(skips)
    for i in range(n):
        for j in range(i + 2, n):
            g = math.gcd(skips[i], skips[j])
            reachable = {0}
            for x in skips[i + 1 : j]:
                reachable = {(r + x) % g for r in reachable} | {
                    (r - x) % g for r in reachable
                }
            if 0 not in reachable:
                return i, j
    return None


def _scan_gcd_span_signed(steps):
    n = len(steps)
    for i in range(n):
        inner = 0
        for j in range(i + 2, n):
            inner += steps[j - 1][0] * steps[j - 1][1]
            if inner % math.gcd(steps[i][1], steps[j][1]):
                return i, j
    return None


def _scan_plus_plus(steps):
    for k in range(len(steps) - 1):
        (s1, a), (s2, b) = steps[k], steps[k + 1]
        if s1 != s2:
            continue
        va, vb = two_adic_valuation(a), two_adic_valuation(b)
        if (s1 == 1 and va <= vb) or (s1 == -1 and va >= vb):
            return k, k + 1
    return None


def _scan_class_sign(steps):
    for k in range(len(steps) - 1):
        (s1, a), (s2, b) = steps[k], steps[k + 1]
        if s1 == 1 and s2 == -1 and two_adic_valuation(a) != two_adic_valuation(b):
            return k, k + 1
    return None


def rule_scan(p: AnyPattern) -> RuleVerdict:
    """First forbidden-shape match, or a clean verdict.

    Unsigned scans run on any input; the sign rules and the exact span
    sums need a signed pattern.  Rules are checked in a fixed order with
    the cheap local shapes first, so overlapping matches report the most
    specific rule (for example an odd inner block of odd skips is also a
    gcd-span obstruction, but reports as ODD-BLOCKS).
    """
    skips = p.skips if isinstance(p, SignedPattern) else p.skips
    checks: list[tuple[str, object]] = [
        ("AA", _scan_aa(skips)),
        ("ABAB", _scan_abab(skips)),
        ("ABA-div", _scan_aba_div(skips)),
        ("ABCA", _scan_abca(skips)),
        ("AABBCC", _scan_aabbcc(skips)),
        ("NO-PAIRS", _scan_no_pairs(skips)),
        ("BACABAC", _scan_bacabac(skips)),
        ("ODD-BLOCKS", _scan_odd_blocks(skips)),
    ]
    if isinstance(p, SignedPattern):
        checks.append(("PLUS-PLUS", _scan_plus_plus(p.steps)))
        checks.append(("CLASS-SIGN", _scan_class_sign(p.steps)))
        checks.append(("GCD-span", _scan_gcd_span_signed(p.steps)))
    else:
        checks.append(("GCD-span", _scan_gcd_span_unsigned(skips)))
    for rule_id, hit in checks:
        if hit is not None:
            return RuleVerdict(True, rule_id, hit)  # type: ignore[arg-type]
    return RuleVerdict(False)


def _suffix_forbidden(skips: list[int], a: int) -> bool:
    """Window rules restricted to windows ending at the next step.

    Used as a cheap pre-filter in the search before the congruence merge;
    anything cut here is cut by the merge or the freshness checks too.
    """
    n = len(skips)
    if n >= 1 and skips[-1] == a:
        return True
    if n >= 2 and skips[-2] == a and skips[-1] % a:
        return True
    if n >= 3 and skips[-3] == skips[-1] and skips[-2] == a:
        return True
    if n >= 3 and skips[-3] == a and a > skips[-2] and a > skips[-1]:
        return True
    if n >= 5:
        counts = Counter(skips[-5:])
        counts[a] += 1
        if len(counts) == 3 and all(c == 2 for c in counts.values()):
            return True
    if n >= 6:
        w = skips[-6:] + [a]
        if (
            w[0] == w[4]
            and w[1] == w[3] == w[5]
            and w[2] == w[6]
            and len({w[0], w[1], w[2]}) == 3
        ):
            return True
    if a % 2 == 0:
        run = 0
        for s in reversed(skips):
            if s % 2 == 0:
                if run % 2:
                    return True
                break
            run += 1
    return False


def _search(skips: Iterable[int], max_len: int, cycles: bool):
    skip_list = sorted(set(skips))
    if not skip_list or skip_list[0] < 1:
        raise ValueError(f"skips must be positive, got {skip_list}")
    if max_len < 1:
        raise ValueError(f"max_len must be positive, got {max_len}")
    max_skip = skip_list[-1]

    best: list[tuple | None] = [None]
    truncated = [False]
    steps: list[tuple[int, int]] = []
    unsigned: list[int] = []
    prefix: list[int] = [0]
    seen = {0}
    arcs: set[tuple[int, int]] = set()

    def consider(length: int, start: int, closing: tuple[int, int] | None) -> None:
        all_steps = steps + [closing] if closing else steps
        key = (
            -length,
            start,
            tuple((1 - s) // 2 for s, _ in all_steps),
            tuple(a for _, a in all_steps),
        )
        if best[0] is None or key < best[0]:
            best[0] = key + (tuple(all_steps),)

    def recurse(acc: Congruence) -> None:
        depth = len(steps)
        if depth == max_len:
            truncated[0] = True
            return
        base = prefix[-1]
        for a in skip_list:
            for sign in (1, -1):
                if cycles and depth == 0 and sign == -1:
                    continue  # a least-start cycle leaves its minimum upward
                if steps and _suffix_forbidden(unsigned, a):
                    continue
                new_sum = base + sign * a
                if cycles and new_sum < 0:
                    continue  # rotations from the minimum vertex suffice
                if new_sum in seen:
                    if (
                        cycles
                        and new_sum == 0
                        and depth >= 2
                        and (depth + 1) % 2 == 1
                        and (min(base, 0), a) not in arcs
                    ):
                        merged = crt_merge(acc, step_congruence(sign, a, base))
                        if merged is not None:
                            consider(depth + 1, merged.residue, (sign, a))
                    continue
                if cycles and abs(new_sum) > (max_len - depth - 1) * max_skip:
                    continue
                merged = crt_merge(acc, step_congruence(sign, a, base))
                if merged is None:
                    continue
                steps.append((sign, a))
                unsigned.append(a)
                prefix.append(new_sum)
                seen.add(new_sum)
                arc = (min(base, new_sum), a)
                arcs.add(arc)
                if not cycles:
                    consider(depth + 1, merged.residue, None)
                recurse(merged)
                arcs.discard(arc)
                seen.discard(new_sum)
                prefix.pop()
                unsigned.pop()
                steps.pop()

    recurse(Congruence(0, 1))
    if best[0] is None:
        return None, truncated[0]
    neg_len, start, _, _, found = best[0]
    return (SignedPattern(found), -neg_len, start), truncated[0]


def longest_path(skips: Iterable[int], max_len: int = 64) -> SearchResult:
    """Longest realizable path over the skip set, up to ``max_len``.

    When the depth cap cuts off unexplored branches the result is flagged
    as a lower bound.
    """
    found, truncated = _search(skips, max_len, cycles=False)
    assert found is not None  # every single skip realizes as a path
    sp, length, start = found
    verdict = strict_realizability(sp)
    if verdict.status != REALIZABLE or verdict.witness_start != start:
        raise RuntimeError(f"search produced an invalid path: {sp.steps}")
    return SearchResult("path", length, start, sp.unsigned(), sp, truncated)


def longest_odd_cycle(skips: Iterable[int], max_len: int = 64) -> SearchResult | None:
    """Longest odd cycle over the skip set, or None when none exists
    within the depth cap."""
    found, truncated = _search(skips, max_len, cycles=True)
    if found is None:
        return None
    sp, length, start = found
    verdict = valid_odd_cycle(sp)
    if not verdict.valid or verdict.witness_start != start:
        raise RuntimeError(f"search produced an invalid cycle: {sp.steps}")
    return SearchResult("odd-cycle", length, start, sp.unsigned(), sp, truncated)
