"""Realizability of signed patterns in the skip graph.

A signed pattern can be traced somewhere in the graph (possibly reusing
terms or arcs, "weakly realizable") exactly when every subpath satisfies
two arithmetic conditions on its end skips a_i, a_j and the signed sum I
of the skips strictly between them:

* divisibility: gcd(a_i, a_j) divides I;
* parity: I is an even multiple of the gcd if and only if the sign of
  the end skip in the lower 2-adic class points the required way (the
  lower-class skip on the left must be negative, on the right positive,
  and equal classes force opposite signs).

Equivalently, the start term T must solve one congruence per step (step
k leaves from an even multiple of a_k when positive, an odd multiple when
negative), a system decided by the non-coprime congruence solver.  The
least nonnegative solution is reported as the witness start.  Strict
realizability additionally demands that the walk repeat no term or arc,
which depends only on the pattern, not on the chosen start.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterator

from .numeric import Congruence, crt_merge, crt_solve, two_adic_valuation
from .pattern import AnyPattern, Pattern, SignedPattern, realize

FORBIDDEN = "forbidden"
WEAKLY_REALIZABLE = "weakly-realizable"
REALIZABLE = "realizable"


@dataclass(frozen=True)
class SubpathReport:
    """Divisibility/parity verdict for the subpath spanned by steps i..j."""

    i: int
    j: int
    intermediate_sum: int
    gcd: int
    divisibility_ok: bool
    parity_ok: bool

    @property
    def ok(self) -> bool:
        return self.divisibility_ok and self.parity_ok

    @property
    def reason(self) -> str | None:
        if not self.divisibility_ok:
            return "divisibility"
        if not self.parity_ok:
            return "parity"
        return None


@dataclass(frozen=True)
class RealizabilityVerdict:
    status: str
    witness_start: int | None = None
    failure: SubpathReport | None = None
    signed: SignedPattern | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness_start is not None:
            out["start"] = self.witness_start
        if self.failure is not None:
            out["failure"] = {
                "i": self.failure.i,
                "j": self.failure.j,
                "reason": self.failure.reason,
            }
        return out


@dataclass(frozen=True)
class CycleVerdict:
    valid: bool
    signed_sum: int
    witness_start: int | None = None
    reason: str | None = None


def _span_conditions(
    a_first: int, sign_first: int, inner_sum: int, a_last: int, sign_last: int
) -> tuple[bool, bool]:
    """Evaluate (divisibility_ok, parity_ok) for a span of the pattern."""
    g = math.gcd(a_first, a_last)
    if inner_sum % g:
        return False, False
    even = (inner_sum // g) % 2 == 0
    va = two_adic_valuation(a_first)
    vb = two_adic_valuation(a_last)
    if va < vb:
        required = sign_first == -1
    elif va > vb:
        required = sign_last == 1
    else:
        required = sign_first == -sign_last
    return True, even == required


def check_subpath(sp: SignedPattern, i: int, j: int) -> SubpathReport:
    """Report the conditions for the subpath from step i to step j (i < j)."""
    n = len(sp)
    if not (0 <= i < j < n):
        raise IndexError(f"need 0 <= i < j < {n}, got i={i}, j={j}")
    steps = sp.steps
    inner = sum(sign * skip for sign, skip in steps[i + 1 : j])
    div_ok, par_ok = _span_conditions(
        steps[i][1], steps[i][0], inner, steps[j][1], steps[j][0]
    )
    return SubpathReport(i, j, inner, math.gcd(steps[i][1], steps[j][1]), div_ok, par_ok)


def basic_parity_test(sp: SignedPattern) -> bool:
    """Parity condition on every adjacent pair of steps.

    This encodes the sign rules for neighbors: two pluses (or two minuses
    read backwards) need the first skip in the strictly higher 2-adic
    class, equal classes force opposite signs, and a higher-class skip
    places no constraint on its own sign.
    """
    return all(check_subpath(sp, k, k + 1).parity_ok for k in range(len(sp) - 1))


def step_congruence(sign: int, skip: int, offset: int) -> Congruence:
    """Constraint on the start term T for one step.

    ``offset`` is the signed sum of the earlier steps, so T + offset is the
    term the step leaves from; it must be an even multiple of the skip for
    an up step and an odd multiple for a down step.
    """
    return Congruence(((1 - sign) // 2) * skip - offset, 2 * skip)


def pattern_congruences(sp: SignedPattern) -> list[Congruence]:
    out = []
    offset = 0
    for sign, skip in sp.steps:
        out.append(step_congruence(sign, skip, offset))
        offset += sign * skip
    return out


def _first_failing_subpath(sp: SignedPattern) -> SubpathReport | None:
    n = len(sp)
    for i in range(n):
        for j in range(i + 1, n):
            report = check_subpath(sp, i, j)
            if not report.ok:
                return report
    return None


def weakly_realizable(sp: SignedPattern) -> RealizabilityVerdict:
    """Decide weak realizability and produce the least witness start.

    The start-term congruence system is solved directly; when it has no
    solution the lexicographically first failing (i, j) subpath is
    reported, which always exists because the two criteria are equivalent.
    """
    solved = crt_solve(pattern_congruences(sp))
    if solved is not None:
        return RealizabilityVerdict(WEAKLY_REALIZABLE, solved.residue, signed=sp)
    failure = _first_failing_subpath(sp)
    if failure is None:
        raise RuntimeError(
            "congruence system unsolvable but every subpath passed; "
            f"pattern {sp.steps} breaks the engine's core equivalence"
        )
    return RealizabilityVerdict(FORBIDDEN, failure=failure)


def _strict_from_weak(verdict: RealizabilityVerdict) -> RealizabilityVerdict:
    sp = verdict.signed
    assert sp is not None and verdict.witness_start is not None
    walk = realize(sp, verdict.witness_start)
    if walk.is_strict(as_cycle=False):
        return replace(verdict, status=REALIZABLE)
    return verdict


def _signings(p: Pattern) -> Iterator[tuple[SignedPattern, int]]:
    """Sign assignments that are weakly realizable, in lexicographic order
    (+ before -), each with its least witness start.

    Enumeration prunes on the incrementally merged congruence system, so
    prefixes that already violate an adjacent-pair or longer-span condition
    are dropped without expanding the subtree.
    """
    skips = p.skips
    n = len(skips)
    chosen: list[tuple[int, int]] = []

    def rec(k: int, offset: int, acc: Congruence) -> Iterator[tuple[SignedPattern, int]]:
        if k == n:
            yield SignedPattern(tuple(chosen)), acc.residue
            return
        for sign in (1, -1):
            merged = crt_merge(acc, step_congruence(sign, skips[k], offset))
            if merged is None:
                continue
            chosen.append((sign, skips[k]))
            yield from rec(k + 1, offset + sign * skips[k], merged)
            chosen.pop()

    yield from rec(0, 0, Congruence(0, 1))


def _sign_free_divisibility_failure(p: Pattern) -> SubpathReport | None:
    """A subpath whose divisibility fails under every sign assignment.

    For the span (i, j) the realizable intermediate sums modulo
    gcd(a_i, a_j) are exactly those reachable by +/- choices, so an empty
    intersection with 0 is a sign-independent obstruction.
    """
    skips = p.skips
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
                inner = sum(skips[i + 1 : j])
                return SubpathReport(i, j, inner, g, False, False)
    return None


def strict_realizability(p: AnyPattern) -> RealizabilityVerdict:
    """Three-way verdict: forbidden, weakly realizable only, or realizable.

    A signed pattern is checked at its least witness start; term and arc
    coincidences are start-independent, so one witness decides.  An
    unsigned pattern is realizable when some sign assignment is, with the
    lexicographically least qualifying assignment reported.
    """
    if isinstance(p, SignedPattern):
        verdict = weakly_realizable(p)
        if verdict.status == FORBIDDEN:
            return verdict
        return _strict_from_weak(verdict)

    first_weak: RealizabilityVerdict | None = None
    for sp, start in _signings(p):
        verdict = RealizabilityVerdict(WEAKLY_REALIZABLE, start, signed=sp)
        upgraded = _strict_from_weak(verdict)
        if upgraded.status == REALIZABLE:
            return upgraded
        if first_weak is None:
            first_weak = verdict
    if first_weak is not None:
        return first_weak
    failure = _sign_free_divisibility_failure(p)
    if failure is None:
        all_plus = SignedPattern(tuple((1, s) for s in p.skips))
        failure = _first_failing_subpath(all_plus)
    return RealizabilityVerdict(FORBIDDEN, failure=failure)


def valid_odd_cycle(sp: SignedPattern) -> CycleVerdict:
    """Check that ``sp`` closes into an odd cycle somewhere in the graph.

    Valid means: odd length, signed sum zero, weakly realizable, and the
    closed walk repeats no arc and no term other than its final return to
    the start.
    """
    total = sp.signed_sum
    if len(sp) % 2 == 0:
        return CycleVerdict(False, total, reason="even-length")
    if total != 0:
        return CycleVerdict(False, total, reason="nonzero-sum")
    weak = weakly_realizable(sp)
    if weak.status == FORBIDDEN:
        return CycleVerdict(False, total, reason="not-weakly-realizable")
    start = weak.witness_start
    assert start is not None
    walk = realize(sp, start)
    if walk.repeated_terms(as_cycle=True):
        return CycleVerdict(False, total, witness_start=start, reason="repeated-term")
    if walk.repeated_arcs():
        return CycleVerdict(False, total, witness_start=start, reason="repeated-arc")
    return CycleVerdict(True, total, witness_start=start)


def both_paths_agree(sp: SignedPattern, i: int, j: int) -> bool:
    """Cross-check the two spans a cycle offers between steps i and j.

    Viewing a zero-sum pattern as a cycle, steps i and j are joined by the
    inner span (steps strictly between) and the outer, wrap-around span.
    When the signed sum is zero the two spans always give identical
    divisibility and parity verdicts, which licenses checking only one.
    """
    if sp.signed_sum != 0:
        raise ValueError("pattern is not a cycle: signed sum is nonzero")
    n = len(sp)
    if not (0 <= i < j < n):
        raise IndexError(f"need 0 <= i < j < {n}, got i={i}, j={j}")
    steps = sp.steps
    (sign_i, a_i), (sign_j, a_j) = steps[i], steps[j]
    inner = sum(sign * skip for sign, skip in steps[i + 1 : j])
    outer = -(sign_i * a_i + inner + sign_j * a_j)
    via_inner = _span_conditions(a_i, sign_i, inner, a_j, sign_j)
    via_outer = _span_conditions(a_j, sign_j, outer, a_i, sign_i)
    return via_inner == via_outer
