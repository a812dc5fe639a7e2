"""Independence oracles and derived matroid quantities.

A matroid is represented by its ground set and a deterministic independence
predicate over bitmasks.  Rank, closure, circuits, cocircuits, duals and
minors are all derived from the predicate; enumerations are capped so that
exponential sweeps stay a deliberate choice rather than an accident.
"""

from __future__ import annotations

import itertools
import os
import random
import threading
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from . import bitset

DEFAULT_ENUM_CAP = 20
ENUM_CAP_ENV = "CYCMAT_MAX_N"


class CapExceeded(ValueError):
    """Raised when an exhaustive sweep would exceed the configured cap."""


def enum_cap() -> int:
    value = os.environ.get(ENUM_CAP_ENV)
    if value is None:
        return DEFAULT_ENUM_CAP
    cap = int(value)
    if cap < 1:
        raise ValueError(f"{ENUM_CAP_ENV} must be positive, got {value}")
    return cap


@dataclass(frozen=True)
class GroundSet:
    """Elements e_1..e_n, addressed by 1-based index."""

    n: int
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"ground set needs at least one element, got n={self.n}")
        labels = self.labels or tuple(f"e{i}" for i in range(1, self.n + 1))
        if len(labels) != self.n or len(set(labels)) != self.n:
            raise ValueError("labels must be distinct and match the element count")
        object.__setattr__(self, "labels", labels)

    @property
    def full(self) -> int:
        return bitset.full_mask(self.n)

    def mask(self, elements: Iterable[int]) -> int:
        m = bitset.mask_of(elements)
        if m & ~self.full:
            raise ValueError("element index out of range")
        return m

    def label_of(self, index: int) -> str:
        return self.labels[index - 1]


@dataclass(frozen=True)
class CircuitFamily:
    """Complete list of minimal dependent sets, canonically sorted."""

    n: int
    members: tuple[int, ...]

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "CircuitFamily":
        return cls(n, tuple(sorted(set(masks), key=bitset.subset_key)))

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in set(self.members)

    def of_size(self, k: int) -> tuple[int, ...]:
        return tuple(m for m in self.members if m.bit_count() == k)

    def as_indices(self) -> list[list[int]]:
        return [list(bitset.indices(m)) for m in self.members]


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    violations: tuple[tuple[str, tuple], ...]


@dataclass(frozen=True)
class VerificationReport:
    """Pass/fail record of one structural check, with counterwitnesses."""

    check: str
    ok: bool
    checked: int
    witnesses: tuple = ()
    note: str = ""


class MatroidOracle:
    """Matroid given by an independence predicate on bitmasks.

    Instances are immutable after construction: the predicate must be pure,
    and all derived state (memoised independence calls, enumerated circuit
    families) is filled behind a lock, so oracles can be shared freely
    across threads.
    """

    def __init__(self, ground: GroundSet, indep: Callable[[int], bool], name: str = ""):
        self.ground = ground
        self.name = name or "matroid"
        self._indep = indep
        self._memo: dict[int, bool] = {}
        self._lock = threading.Lock()
        self._circuits: CircuitFamily | None = None
        self._cocircuits: CircuitFamily | None = None
        self._rank_full: int | None = None

    # -- predicate and rank ---------------------------------------------------

    @property
    def n(self) -> int:
        return self.ground.n

    def indep(self, mask: int) -> bool:
        if mask & ~self.ground.full:
            raise ValueError("subset is not contained in the ground set")
        cached = self._memo.get(mask)
        if cached is None:
            cached = bool(self._indep(mask))
            self._memo[mask] = cached
        return cached

    def dep(self, mask: int) -> bool:
        return not self.indep(mask)

    def rank(self, mask: int | None = None) -> int:
        """Size of a maximal independent subset, built greedily.

        Greedy extension is exact on matroids; the axiom sweep in
        `verify_matroid_axioms` is the guard that the predicate really is one.
        """
        if mask is None:
            if self._rank_full is None:
                self._rank_full = self.rank(self.ground.full)
            return self._rank_full
        current = 0
        for bit in bitset.singletons(mask):
            if self.indep(current | bit):
                current |= bit
        return current.bit_count()

    def closure(self, mask: int) -> int:
        base = self.rank(mask)
        out = mask
        for bit in bitset.singletons(self.ground.full & ~mask):
            if self.rank(mask | bit) == base:
                out |= bit
        return out

    def in_closure(self, element: int, mask: int) -> bool:
        bit = 1 << (element - 1)
        if bit & mask:
            return True
        return self.rank(mask | bit) == self.rank(mask)

    # -- circuits and cocircuits --------------------------------------------

    def is_circuit(self, mask: int) -> bool:
        if mask == 0 or self.indep(mask):
            return False
        return all(self.indep(mask ^ bit) for bit in bitset.singletons(mask))

    def is_coindependent(self, mask: int) -> bool:
        return self.rank(self.ground.full & ~mask) == self.rank()

    def is_cocircuit(self, mask: int) -> bool:
        if mask == 0 or self.is_coindependent(mask):
            return False
        return all(self.is_coindependent(mask ^ bit) for bit in bitset.singletons(mask))

    def circuits(self, cap: int | None = None) -> CircuitFamily:
        with self._lock:
            if self._circuits is None:
                self._circuits = self._enumerate_circuits(cap)
            return self._circuits

    def cocircuits(self, cap: int | None = None) -> CircuitFamily:
        with self._lock:
            if self._cocircuits is None:
                self._cocircuits = self.dual()._enumerate_circuits(cap)
            return self._cocircuits

    def _enumerate_circuits(self, cap: int | None) -> CircuitFamily:
        limit = cap if cap is not None else enum_cap()
        n = self.n
        if n > limit:
            raise CapExceeded(
                f"circuit enumeration needs n <= {limit}, got n={n}; "
                f"raise the cap explicitly (or via {ENUM_CAP_ENV}) to proceed"
            )
        found: list[int] = []
        # A dependent k-set with every (k-1)-deletion independent is minimal;
        # sweeping sizes upward makes the deletion test complete.
        for k in range(1, self.rank() + 2):
            for combo in itertools.combinations(range(n), k):
                mask = 0
                for i in combo:
                    mask |= 1 << i
                if self.is_circuit(mask):
                    found.append(mask)
        return CircuitFamily.from_masks(n, found)

    # -- derived matroids ----------------------------------------------------

    def dual(self) -> "MatroidOracle":
        full = self.ground.full
        rank_full = self.rank()
        return MatroidOracle(
            self.ground,
            lambda mask: self.rank(full & ~mask) == rank_full,
            name=f"dual({self.name})",
        )

    def minor(self, delete: int = 0, contract: int = 0) -> "MatroidOracle":
        """Delete/contract disjoint subsets; survivors keep their labels."""
        if delete & contract:
            raise ValueError("delete and contract sets must be disjoint")
        if (delete | contract) & ~self.ground.full:
            raise ValueError("minor sets must lie inside the ground set")
        fixed = 0
        for bit in bitset.singletons(contract):
            if self.indep(fixed | bit):
                fixed |= bit
        kept = bitset.indices(self.ground.full & ~(delete | contract))
        if not kept:
            raise ValueError("minor would have an empty ground set")
        ground = GroundSet(len(kept), tuple(self.ground.label_of(i) for i in kept))
        lift = {new_bit: 1 << (old - 1) for new_bit, old in enumerate(kept)}

        def indep(mask: int, _fixed=fixed, _lift=lift) -> bool:
            lifted = _fixed
            for b, old_bit in _lift.items():
                if mask >> b & 1:
                    lifted |= old_bit
            return self.indep(lifted)

        return MatroidOracle(ground, indep, name=f"{self.name}/minor")

    def __repr__(self) -> str:
        return f"MatroidOracle({self.name}, n={self.n})"


def oracle_from_circuits(
    ground: GroundSet, circuits: Iterable[int], name: str = "", validate: bool = True
) -> MatroidOracle:
    """Oracle with X independent iff X contains no listed circuit."""
    family = CircuitFamily.from_masks(ground.n, circuits)
    if validate:
        report = validate_circuit_axioms(family, ground.n)
        if not report.ok:
            raise ValueError(f"circuit family fails the axioms: {report.violations[0]}")
    if ground.n <= 18:
        table = bitset.dependence_table(ground.n, family.members)
        indep = lambda mask: not table[mask]
    else:
        members = family.members
        indep = lambda mask: all(c & ~mask for c in members)
    oracle = MatroidOracle(ground, indep, name=name or "from-circuits")
    oracle._circuits = family
    return oracle


def rank(oracle: MatroidOracle, mask: int) -> int:
    return oracle.rank(mask)


def closure(oracle: MatroidOracle, mask: int) -> int:
    return oracle.closure(mask)


def orthogonality_check(circuit: int, cocircuit: int) -> bool:
    """A circuit and a cocircuit never meet in exactly one element."""
    return (circuit & cocircuit).bit_count() != 1


def validate_circuit_axioms(family: CircuitFamily | Iterable[int], n: int) -> AxiomReport:
    """Check antichain, non-emptiness and weak elimination for a family.

    Weak elimination: for distinct members C1, C2 and e in their
    intersection, some member lies inside (C1 | C2) - e.  Failures are
    collected, not raised.
    """
    members = tuple(family.members if isinstance(family, CircuitFamily) else family)
    violations: list[tuple[str, tuple]] = []
    for c in members:
        if c == 0:
            violations.append(("empty-circuit", ()))
        if c & ~bitset.full_mask(n):
            violations.append(("out-of-range", (bitset.indices(c),)))
    for a, b in itertools.combinations(members, 2):
        if bitset.is_subset(a, b) or bitset.is_subset(b, a):
            violations.append(("antichain", (bitset.indices(a), bitset.indices(b))))
    if n <= 18:
        table = bitset.dependence_table(n, members)
        contains_member = lambda mask: bool(table[mask])
    else:
        contains_member = lambda mask: any(bitset.is_subset(c, mask) for c in members)
    for a, b in itertools.combinations(members, 2):
        common = a & b
        if not common:
            continue
        union = a | b
        for bit in bitset.singletons(common):
            if not contains_member(union ^ bit):
                violations.append(
                    ("elimination", (bitset.indices(a), bitset.indices(b), bit.bit_length()))
                )
    return AxiomReport(ok=not violations, violations=tuple(violations))


def verify_matroid_axioms(
    oracle: MatroidOracle,
    exhaustive_limit: int = 12,
    samples: int = 4000,
    seed: int = 0,
) -> VerificationReport:
    """Sweep the independence axioms: empty set, downward closure, exchange.

    Exhaustive up to `exhaustive_limit` elements, seeded random spot checks
    above that (a full sweep is exponential).
    """
    if not oracle.indep(0):
        return VerificationReport("matroid-axioms", False, 1, (("empty-set",),))
    if oracle.n <= exhaustive_limit:
        return _exhaustive_axiom_sweep(oracle)
    return _sampled_axiom_sweep(oracle, samples, seed)


def _exhaustive_axiom_sweep(oracle: MatroidOracle) -> VerificationReport:
    n = oracle.n
    independents: list[int] = [m for m in range(1 << n) if oracle.indep(m)]
    checked = 1 << n
    for m in independents:
        for bit in bitset.singletons(m):
            if not oracle.indep(m ^ bit):
                return VerificationReport(
                    "matroid-axioms", False, checked,
                    (("downward-closure", bitset.indices(m), bit.bit_length()),),
                )
    by_size: dict[int, list[int]] = {}
    for m in independents:
        by_size.setdefault(m.bit_count(), []).append(m)
    # Exchange, vectorised: Y can take some element of X iff X meets the set
    # of elements whose addition keeps Y independent.
    avail = {}
    for sy, ys in by_size.items():
        avail[sy] = np.array(
            [_extension_mask(oracle, y) & ~y for y in ys], dtype=np.int64
        )
    sizes = sorted(by_size)
    for sy in sizes:
        ys_arr = avail[sy]
        for sx in sizes:
            if sx <= sy:
                continue
            xs_arr = np.array(by_size[sx], dtype=np.int64)
            checked += len(ys_arr) * len(xs_arr)
            hits = (ys_arr[:, None] & xs_arr[None, :]) == 0
            if hits.any():
                yi, xi = np.argwhere(hits)[0]
                return VerificationReport(
                    "matroid-axioms", False, checked,
                    (("exchange",
                      bitset.indices(by_size[sx][int(xi)]),
                      bitset.indices(by_size[sy][int(yi)])),),
                )
    return VerificationReport("matroid-axioms", True, checked)


def _extension_mask(oracle: MatroidOracle, y: int) -> int:
    out = 0
    for bit in bitset.singletons(oracle.ground.full & ~y):
        if oracle.indep(y | bit):
            out |= bit
    return out


def _sampled_axiom_sweep(oracle: MatroidOracle, samples: int, seed: int) -> VerificationReport:
    rng = random.Random(seed)
    n = oracle.n
    elements = list(range(n))
    checked = 0
    for _ in range(samples):
        order = elements[:]
        rng.shuffle(order)
        x = 0
        target = rng.randint(0, n)
        for i in order:
            if x.bit_count() >= target:
                break
            if oracle.indep(x | 1 << i):
                x |= 1 << i
        sub = x
        for bit in bitset.singletons(x):
            if rng.random() < 0.5:
                sub ^= bit
        checked += 1
        if not oracle.indep(sub):
            return VerificationReport(
                "matroid-axioms", False, checked,
                (("downward-closure", bitset.indices(x), bitset.indices(sub)),),
            )
        rng.shuffle(order)
        y = 0
        for i in order:
            if y.bit_count() >= x.bit_count() // 2:
                break
            if oracle.indep(y | 1 << i):
                y |= 1 << i
        if x.bit_count() > y.bit_count():
            if not (x & (_extension_mask(oracle, y) & ~y)):
                return VerificationReport(
                    "matroid-axioms", False, checked,
                    (("exchange", bitset.indices(x), bitset.indices(y)),),
                )
    return VerificationReport("matroid-axioms", True, checked, note="sampled")
