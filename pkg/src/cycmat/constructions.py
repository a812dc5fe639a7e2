"""Named matroid families used as fixtures and cross-checks.

Uniform matroids, wheels (graphic), whirls (rim relaxation of the wheel),
free tipless spikes, and the truncation operator.  Wheels and whirls use the
alternating labelling e_1 = spoke_1, e_2 = rim_1, e_3 = spoke_2, ... so that
their natural cyclic order is the structured one.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bitset
from .core import (
    CircuitFamily,
    GroundSet,
    MatroidOracle,
    oracle_from_circuits,
    validate_circuit_axioms,
)


def uniform(r: int, n: int) -> MatroidOracle:
    """Independence is having at most r elements."""
    if not 0 <= r <= n:
        raise ValueError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    return MatroidOracle(GroundSet(n), lambda mask: mask.bit_count() <= r, name=f"U({r},{n})")


def _wheel_edges(r: int) -> list[tuple[int, int]]:
    # vertex 0 is the hub; rim vertices are 1..r
    edges = []
    for i in range(1, r + 1):
        edges.append((0, i))  # e_{2i-1}: spoke i
        edges.append((i, i % r + 1))  # e_{2i}: rim edge i -> i+1
    return edges


def wheel(r: int) -> MatroidOracle:
    """Graphic matroid of the r-spoke wheel; independence = forest."""
    if r < 2:
        raise ValueError(f"wheel needs r >= 2, got r={r}")
    edges = _wheel_edges(r)

    def indep(mask: int) -> bool:
        parent = list(range(r + 1))

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for i in bitset.iter_indices(mask):
            a, b = edges[i - 1]
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    return MatroidOracle(GroundSet(2 * r), indep, name=f"wheel({r})")


def rim_mask(r: int) -> int:
    return bitset.mask_of(2 * i for i in range(1, r + 1))


def whirl(r: int) -> MatroidOracle:
    """Relax the rim circuit of the wheel: the rim becomes independent and
    each rim-plus-spoke set becomes a circuit."""
    if r < 2:
        raise ValueError(f"whirl needs r >= 2, got r={r}")
    base = wheel(r).circuits()
    rim = rim_mask(r)
    if rim not in base:
        raise RuntimeError("wheel circuit enumeration lost the rim")
    relaxed = [c for c in base if c != rim]
    relaxed.extend(rim | 1 << (2 * i) for i in range(r))
    return oracle_from_circuits(GroundSet(2 * r), relaxed, name=f"whirl({r})", validate=True)


@dataclass(frozen=True)
class PairPartition:
    """Partition of e_1..e_{2r} into consecutive pairs {e_{2i-1}, e_{2i}}."""

    pairs: tuple[int, ...]

    @classmethod
    def consecutive(cls, r: int) -> "PairPartition":
        return cls(tuple(bitset.mask_of((2 * i - 1, 2 * i)) for i in range(1, r + 1)))

    def count_inside(self, mask: int) -> int:
        return sum(1 for p in self.pairs if bitset.is_subset(p, mask))


def free_spike(r: int, validate: bool = True) -> tuple[MatroidOracle, PairPartition]:
    """Rank-r free tipless spike on pairs L_i = {e_{2i-1}, e_{2i}}.

    Rank of X is min(r, |X| - max(0, p - 1)) where p counts pairs inside X.
    The closed form is validated at build time: circuit axioms hold and every
    union of two pairs is both a 4-element circuit and a 4-element cocircuit.
    """
    if r < 3:
        raise ValueError(f"spike needs r >= 3, got r={r}")
    partition = PairPartition.consecutive(r)

    def rank_of(mask: int) -> int:
        p = partition.count_inside(mask)
        return min(r, mask.bit_count() - max(0, p - 1))

    oracle = MatroidOracle(
        GroundSet(2 * r), lambda mask: rank_of(mask) == mask.bit_count(), name=f"spike({r})"
    )
    if validate:
        report = validate_circuit_axioms(oracle.circuits(), 2 * r)
        if not report.ok:
            raise RuntimeError(f"spike circuit family fails the axioms: {report.violations[0]}")
        for a in range(r):
            for b in range(a + 1, r):
                union = partition.pairs[a] | partition.pairs[b]
                if not oracle.is_circuit(union):
                    raise RuntimeError("pair union is not a circuit; rank form is wrong")
                if not oracle.is_cocircuit(union):
                    raise RuntimeError("pair union is not a cocircuit; rank form is wrong")
    return oracle, partition


def truncate(oracle: MatroidOracle, i: int) -> MatroidOracle:
    """Drop the rank by i: independent sets keep only those of size <= r - i."""
    r = oracle.rank()
    if not 0 <= i <= r:
        raise ValueError(f"truncation steps must satisfy 0 <= i <= rank, got i={i}, rank={r}")
    if i == 0:
        return oracle
    limit = r - i
    return MatroidOracle(
        oracle.ground,
        lambda mask: mask.bit_count() <= limit and oracle.indep(mask),
        name=f"T^{i}({oracle.name})",
    )


def truncation_circuits(oracle: MatroidOracle, i: int) -> CircuitFamily:
    """Expected circuits of the i-th truncation, from the parent matroid.

    Small circuits survive; every independent set of size r - i + 1 becomes a
    circuit.  Used to cross-check the truncation oracle.
    """
    r = oracle.rank()
    if not 1 <= i <= r:
        raise ValueError("cross-check applies to 1 <= i <= rank")
    keep = [c for c in oracle.circuits() if c.bit_count() <= r - i + 1]
    import itertools

    n = oracle.n
    for combo in itertools.combinations(range(n), r - i + 1):
        mask = 0
        for b in combo:
            mask |= 1 << b
        if oracle.indep(mask):
            keep.append(mask)
    return CircuitFamily.from_masks(n, keep)
