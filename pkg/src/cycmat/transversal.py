"""Transversal matroids from bipartite presentations, and their duals.

A presentation lists neighbourhoods N(1..m) over the ground set.  A subset X
is independent in the presented transversal matroid iff X matches into [m];
it is independent in the dual iff [m] matches completely into E - X.  The
interval-presentation family built here has N(i) covering s consecutive
elements starting at e_{2i-1}; its dual (rank n/2, self-dual) is the central
fixture of the whole library.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import bitset
from .core import GroundSet, MatroidOracle


@dataclass(frozen=True)
class BipartitePresentation:
    """Neighbourhoods N(1..m) as masks over the ground set."""

    ground: GroundSet
    neighborhoods: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.neighborhoods:
            raise ValueError("a presentation needs at least one neighbourhood")
        for nbr in self.neighborhoods:
            if nbr & ~self.ground.full:
                raise ValueError("neighbourhood reaches outside the ground set")

    @property
    def m(self) -> int:
        return len(self.neighborhoods)

    def neighborhood(self, i: int) -> int:
        return self.neighborhoods[i - 1]

    def neighborhood_union(self, lefts) -> int:
        out = 0
        for i in lefts:
            out |= self.neighborhoods[i - 1]
        return out

    def covered(self) -> int:
        return self.neighborhood_union(range(1, self.m + 1))

    def loop_free(self) -> bool:
        return self.covered() == self.ground.full


@dataclass(frozen=True)
class MatchingResult:
    """Maximum matching of [m] into E - avoid, with a Hall certificate.

    `pairs` maps left vertices to elements (both 1-based).  When the matching
    is incomplete, `witness` is a set J of left vertices with
    |N(J) - avoid| < |J|, extracted from the final alternating-reachability
    sets; its deficiency |J| - |N(J) - avoid| equals m - size, the maximum.
    """

    size: int
    pairs: tuple[tuple[int, int], ...]
    witness: tuple[int, ...] | None

    @property
    def complete(self) -> bool:
        return self.witness is None


def _augment(i: int, adjacency: list[int], match_of_right: dict[int, int], seen: int) -> tuple[bool, int]:
    for bit in bitset.singletons(adjacency[i] & ~seen):
        seen |= bit
        holder = match_of_right.get(bit)
        if holder is None:
            match_of_right[bit] = i
            return True, seen
        ok, seen = _augment(holder, adjacency, match_of_right, seen)
        if ok:
            match_of_right[bit] = i
            return True, seen
    return False, seen


def _matching(adjacency: list[int]) -> dict[int, int]:
    """Kuhn's augmenting paths; left vertices processed in ascending order."""
    match_of_right: dict[int, int] = {}
    for i in range(len(adjacency)):
        _augment(i, adjacency, match_of_right, 0)
    return match_of_right


def max_matching(pres: BipartitePresentation, avoid: int = 0) -> MatchingResult:
    if avoid & ~pres.ground.full:
        raise ValueError("avoid set lies outside the ground set")
    adjacency = [nbr & ~avoid for nbr in pres.neighborhoods]
    match_of_right = _matching(adjacency)
    size = len(match_of_right)
    pairs = tuple(
        sorted((left + 1, bit.bit_length()) for bit, left in match_of_right.items())
    )
    if size == pres.m:
        return MatchingResult(size, pairs, None)
    matched_left = set(match_of_right.values())
    reach_left = {i for i in range(pres.m) if i not in matched_left}
    reach_right = 0
    frontier = list(reach_left)
    while frontier:
        rights = 0
        for i in frontier:
            rights |= adjacency[i]
        rights &= ~reach_right
        reach_right |= rights
        frontier = []
        for bit in bitset.singletons(rights):
            j = match_of_right.get(bit)
            if j is not None and j not in reach_left:
                reach_left.add(j)
                frontier.append(j)
    witness = tuple(sorted(i + 1 for i in reach_left))
    return MatchingResult(size, pairs, witness)


def brute_force_matching_size(pres: BipartitePresentation, avoid: int = 0) -> int:
    """Exhaustive matching maximiser; the naive cross-check for `max_matching`."""
    adjacency = [nbr & ~avoid for nbr in pres.neighborhoods]

    def best(i: int, used: int) -> int:
        if i == len(adjacency):
            return 0
        out = best(i + 1, used)
        for bit in bitset.singletons(adjacency[i] & ~used):
            out = max(out, 1 + best(i + 1, used | bit))
        return out

    return best(0, 0)


def transversal_matroid(pres: BipartitePresentation) -> MatroidOracle:
    """X independent iff X has a complete matching into [m]."""
    lefts_of = [0] * pres.ground.n
    for i, nbr in enumerate(pres.neighborhoods):
        for bit in bitset.singletons(nbr):
            lefts_of[bit.bit_length() - 1] |= 1 << i

    def indep(mask: int) -> bool:
        adjacency = [lefts_of[bit.bit_length() - 1] for bit in bitset.singletons(mask)]
        return len(_matching(adjacency)) == len(adjacency)

    return MatroidOracle(pres.ground, indep, name=f"transversal(m={pres.m})")


def dual_transversal(pres: BipartitePresentation) -> MatroidOracle:
    """X independent iff [m] matches completely into E - X."""
    m = pres.m

    def indep(mask: int) -> bool:
        adjacency = [nbr & ~mask for nbr in pres.neighborhoods]
        return len(_matching(adjacency)) == m

    return MatroidOracle(pres.ground, indep, name=f"dual-transversal(m={m})")


@dataclass(frozen=True)
class MultiPathPresentation:
    """Presentation whose neighbourhoods are cyclic intervals sigma(x_i, y_i).

    The interval endpoints must be monotone around the cycle and the
    intervals must form an antichain; both are checked at construction.
    """

    base: BipartitePresentation
    xs: tuple[int, ...]
    ys: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.base.ground.n
        m = self.base.m
        if len(self.xs) != m or len(self.ys) != m:
            raise ValueError("endpoint lists must have one entry per neighbourhood")
        if len(set(self.xs)) != m or len(set(self.ys)) != m:
            raise ValueError("interval endpoints must be distinct")
        for i in range(m):
            expected = bitset.cyclic_interval(n, self.xs[i], self.ys[i])
            if expected != self.base.neighborhoods[i]:
                raise ValueError(f"neighbourhood {i + 1} is not the interval sigma(x,y)")
        # cyclic monotonicity is vacuous for fewer than three intervals
        for i in range(m if m > 2 else 0):
            prev_x, next_x = self.xs[(i - 1) % m], self.xs[(i + 1) % m]
            prev_y, next_y = self.ys[(i - 1) % m], self.ys[(i + 1) % m]
            if not bitset.cyclic_interval(n, prev_x, next_x) >> (self.xs[i] - 1) & 1:
                raise ValueError("start points are not cyclically monotone")
            if not bitset.cyclic_interval(n, prev_y, next_y) >> (self.ys[i] - 1) & 1:
                raise ValueError("end points are not cyclically monotone")
        for i in range(m):
            for j in range(m):
                if i != j and bitset.is_subset(
                    self.base.neighborhoods[i], self.base.neighborhoods[j]
                ):
                    raise ValueError("intervals must form an antichain")

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def n(self) -> int:
        return self.base.ground.n

    def run_union(self, i: int, j: int) -> int:
        """Union of neighbourhoods over the cyclic run [i, j] of left vertices."""
        length = (j - i) % self.m + 1
        out = 0
        for step in range(length):
            out |= self.base.neighborhood((i - 1 + step) % self.m + 1)
        return out

    def run_length(self, i: int, j: int) -> int:
        return (j - i) % self.m + 1


@lru_cache(maxsize=None)
def interval_presentation(n: int, s: int) -> MultiPathPresentation:
    """The presentation with N(i) = {e_{2i-1}, ..., e_{2i+s-2}} for i in [n/2].

    Requires n even and n >= 2s - 2; below that floor the intervals wrap onto
    themselves and the construction is rejected rather than guessed at.
    """
    if n % 2:
        raise ValueError(f"ground set size must be even, got n={n}")
    if s < 2:
        raise ValueError(f"interval length must be at least 2, got s={s}")
    if n < 2 * s - 2:
        raise ValueError(f"need n >= 2s - 2 to avoid wrap-around degeneracy, got n={n}, s={s}")
    ground = GroundSet(n)
    m = n // 2
    xs = tuple(2 * i - 1 for i in range(1, m + 1))
    ys = tuple((2 * i + s - 3) % n + 1 for i in range(1, m + 1))
    neighborhoods = tuple(
        bitset.cyclic_interval(n, xs[i], ys[i]) for i in range(m)
    )
    base = BipartitePresentation(ground, neighborhoods)
    return MultiPathPresentation(base, xs, ys)


def psi(n: int, s: int) -> MatroidOracle:
    """Dual of the interval-presented transversal matroid; rank n/2."""
    pres = interval_presentation(n, s)
    oracle = dual_transversal(pres.base)
    oracle.name = f"psi({n},{s})"
    return oracle


def psi_basis_test(n: int, s: int, mask: int) -> bool:
    """Interval-count basis test for psi(n, s), independent of the matching oracle.

    X is a basis iff |X| = n/2 and every window of s + 2k consecutive
    elements starting at an odd position contains fewer than s + k elements
    of X, for 0 <= k <= n/2 - s.
    """
    interval_presentation(n, s)  # validate parameters
    if mask.bit_count() != n // 2:
        return False
    for i in range(1, n + 1, 2):
        for k in range(0, n // 2 - s + 1):
            window = bitset.cyclic_interval(n, i, i + s - 1 + 2 * k)
            if (mask & window).bit_count() >= s + k:
                return False
    return True


def self_duality_map(n: int, s: int) -> tuple[int, ...]:
    """Permutation carrying psi(n, s) onto its dual.

    Identity for even s; the one-step rotation e_i -> e_{i+1} for odd s.
    """
    interval_presentation(n, s)
    if s % 2 == 0:
        return tuple(range(1, n + 1))
    return tuple(i % n + 1 for i in range(1, n + 1))


@dataclass(frozen=True)
class CircuitClassification:
    """Outcome of the two-shape circuit classifier for dual interval matroids.

    Every circuit is either spanning (|E| - m + 1 elements) or pinned to a
    run [i, j] of neighbourhoods whose union is the interval sigma(x_i, y_j).
    A third tag would be a structure violation and must never appear for a
    genuine circuit.
    """

    kind: str
    i: int | None = None
    j: int | None = None

    @property
    def ok(self) -> bool:
        return self.kind in ("spanning", "interval")


def classify_circuit(pres: MultiPathPresentation, circuit: int) -> CircuitClassification:
    oracle = dual_transversal(pres.base)
    if not oracle.is_circuit(circuit):
        raise ValueError("classification requires a circuit of the dual matroid")
    n, m = pres.n, pres.m
    if circuit.bit_count() == n - m + 1:
        return CircuitClassification("spanning")
    closure = oracle.closure(circuit)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            union = pres.run_union(i, j)
            interval = bitset.cyclic_interval(n, pres.xs[i - 1], pres.ys[j - 1])
            if union != interval:
                continue
            if not bitset.is_subset(circuit, union):
                continue
            if circuit.bit_count() != union.bit_count() - pres.run_length(i, j) + 1:
                continue
            if i != j:
                inner = pres.run_union(i % m + 1, j)
                if not bitset.is_subset(union & ~inner, circuit):
                    continue
                inner = pres.run_union(i, (j - 2) % m + 1)
                if not bitset.is_subset(union & ~inner, circuit):
                    continue
            if not bitset.is_subset(interval, closure):
                continue
            return CircuitClassification("interval", i, j)
    return CircuitClassification("unclassified")
