"""Weak-map and quotient relations between matroids on equal-size ground sets.

A bijection is a weak map when every circuit image contains a circuit of the
target (equivalently, independent sets pull back independent).  Quotients are
recognised by the union-of-circuits criterion.  The canonical-image pipeline
shows a fully structured matroid is a weak-map image of the truncated dual
interval matroid on the same parameters, after aligning the circuit phase.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bitset
from .constructions import truncate
from .core import MatroidOracle
from .cyclic import CyclicOrdering, STParams, certify, natural_ordering
from .transversal import MultiPathPresentation, dual_transversal, psi


@dataclass(frozen=True)
class ElementBijection:
    """Bijection between two ground sets of equal size, as 1-based targets."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(1, n + 1)):
            raise ValueError("mapping must be a bijection onto 1..n")

    @classmethod
    def identity(cls, n: int) -> "ElementBijection":
        return cls(tuple(range(1, n + 1)))

    def inverse(self) -> "ElementBijection":
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping, start=1):
            inv[j - 1] = i
        return ElementBijection(tuple(inv))

    def apply(self, mask: int) -> int:
        return bitset.permute(mask, self.mapping)


@dataclass(frozen=True)
class WeakMapReport:
    holds: bool
    violating_circuit: int | None = None
    note: str = ""


def is_weak_map(
    source: MatroidOracle, target: MatroidOracle, phi: ElementBijection | None = None
) -> WeakMapReport:
    """Does every circuit of `source` map onto a dependent set of `target`?"""
    if source.n != target.n:
        raise ValueError("weak maps need ground sets of equal size")
    phi = phi or ElementBijection.identity(source.n)
    if len(phi.mapping) != source.n:
        raise ValueError("bijection size must match the ground sets")
    for circuit in source.circuits():
        if target.indep(phi.apply(circuit)):
            return WeakMapReport(False, circuit)
    return WeakMapReport(True)


def is_weak_map_by_independence(
    source: MatroidOracle, target: MatroidOracle, phi: ElementBijection | None = None
) -> WeakMapReport:
    """Equivalent test through independent sets: phi^{-1} of every independent
    set of the target is independent in the source.  Exhaustive, so only for
    enumeration-scale ground sets; kept as the second route for cross-checks."""
    if source.n != target.n:
        raise ValueError("weak maps need ground sets of equal size")
    phi = phi or ElementBijection.identity(source.n)
    inv = phi.inverse()
    for mask in range(1 << target.n):
        if target.indep(mask) and not source.indep(inv.apply(mask)):
            return WeakMapReport(False, inv.apply(mask))
    return WeakMapReport(True)


def is_quotient(upper: MatroidOracle, lower: MatroidOracle) -> WeakMapReport:
    """`lower` is a quotient of `upper` iff every circuit of `upper` is a
    union of circuits of `lower` (equivalently each of its elements is covered
    by a `lower` circuit inside it)."""
    if upper.n != lower.n:
        raise ValueError("quotients need a common ground set")
    lower_circuits = lower.circuits().members
    for circuit in upper.circuits():
        covered = 0
        for c in lower_circuits:
            if bitset.is_subset(c, circuit):
                covered |= c
                if covered == circuit:
                    break
        if covered != circuit:
            return WeakMapReport(False, circuit)
    return WeakMapReport(True)


@dataclass(frozen=True)
class IntervalRankOutcome:
    """Result of the consecutive-interval rank comparison.

    When the condition holds, the dual of the presentation is freer than the
    compared matroid and the weak map below is asserted to hold.
    """

    condition: bool
    violation: tuple[int, int] | None
    weak_map: WeakMapReport | None


def interval_rank_condition(
    oracle: MatroidOracle, pres: MultiPathPresentation
) -> IntervalRankOutcome:
    """Compare ranks of every union of consecutive presentation intervals in
    `oracle` against the dual of the presented matroid.  If no union has
    larger rank in `oracle` (and the presentation covers every element), the
    identity map from the dual is a weak map onto `oracle`."""
    if oracle.n != pres.n:
        raise ValueError("the compared matroid must share the ground set")
    if not pres.base.loop_free():
        raise ValueError("the presented matroid must be loop-free")
    dual = dual_transversal(pres.base)
    m = pres.m
    for i in range(1, m + 1):
        for k in range(1, m + 1):
            union = pres.run_union(i, (i + k - 2) % m + 1)
            if oracle.rank(union) > dual.rank(union):
                return IntervalRankOutcome(False, (i, k), None)
    report = is_weak_map(dual, oracle)
    if not report.holds:
        raise RuntimeError(
            "interval rank condition held but the weak map failed; "
            "this cannot happen for a loop-free interval presentation"
        )
    return IntervalRankOutcome(True, None, report)


def truncated_psi_certificate(n: int, s: int, t: int):
    """Certificate of the natural ordering of the ((t-s)/2)-th truncation of
    psi(n, s) for parameters (s, t); the result must be full."""
    if not 2 <= s <= t:
        raise ValueError(f"need t >= s >= 2, got s={s}, t={t}")
    if (t - s) % 2:
        raise ValueError(f"need s = t mod 2, got s={s}, t={t}")
    if n % 2 or n < s + t - 2:
        raise ValueError(f"need even n >= s + t - 2, got n={n}")
    oracle = truncate(psi(n, s), (t - s) // 2)
    return certify(oracle, natural_ordering(n), STParams(s, t))


def weak_image_of_truncated_psi(
    oracle: MatroidOracle, ordering: CyclicOrdering, params: STParams
) -> WeakMapReport:
    """A fully (s, t)-structured matroid on n >= s + t - 1 elements is a
    weak-map image of the ((t-s)/2)-th truncation of psi(n, s).

    The ordering is rotated by one step when its circuit windows start at
    even positions, so that the image's odd-start circuit phase lines up;
    the applied rotation is recorded in the report note.
    """
    s, t = params.s, params.t
    if t < s:
        raise ValueError("the canonical image needs t >= s; dualise first")
    n = oracle.n
    if n < s + t - 1:
        raise ValueError(f"the canonical image needs n >= s + t - 1, got n={n}")
    cert = certify(oracle, ordering, params)
    if not cert.full:
        raise ValueError("the compared matroid must carry a full certificate")
    if cert.circuit_phase is None:
        raise ValueError("circuit windows have no single parity; cannot align")
    rotation = 0 if cert.circuit_phase == 1 else 1
    aligned = ordering.rotated(rotation)
    target = truncate(psi(n, s), (t - s) // 2)
    phi = ElementBijection(aligned.order)
    report = is_weak_map(target, oracle, phi)
    return WeakMapReport(report.holds, report.violating_circuit, note=f"rotation={rotation}")
