"""Cyclic orderings and their circuit/cocircuit window structure.

An ordering is *nearly* structured for parameters (s, t) when every s-1
consecutive elements lie in an s-element circuit and every t-1 consecutive
elements lie in a t-element cocircuit.  It is *fully* structured when the
windows themselves are circuits/cocircuits recurring with step two.  This
module certifies both properties, searches for orderings, and machine-checks
the window-level consequences (flanking cocircuits, parity structure,
closure, window ranks, the rank formula, uniqueness, and the
nearly-to-fully upgrade at the proven size bounds).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

from . import bitset
from .core import CapExceeded, MatroidOracle, VerificationReport

NEITHER = "neither"
NEARLY = "nearly"
FULL = "full"

DEFAULT_SEARCH_CAP = 12
SEARCH_CAP_ENV = "CYCMAT_SEARCH_CAP"


def search_cap() -> int:
    value = os.environ.get(SEARCH_CAP_ENV)
    return DEFAULT_SEARCH_CAP if value is None else int(value)


@dataclass(frozen=True)
class STParams:
    """Circuit size s and cocircuit size t, both at least 2."""

    s: int
    t: int

    def __post_init__(self) -> None:
        if self.s < 2 or self.t < 2:
            raise ValueError(f"window sizes must exceed one, got s={self.s}, t={self.t}")

    @property
    def t1(self) -> int:
        return min(self.s, self.t)

    @property
    def t2(self) -> int:
        return max(self.s, self.t)


@dataclass(frozen=True, eq=False)
class CyclicOrdering:
    """A cyclic ordering of e_1..e_n, up to rotation and reflection.

    Equality and hashing use the canonical representative (lexicographically
    least among all rotations of both directions); the ordering as given is
    kept for window arithmetic.
    """

    order: tuple[int, ...]
    canonical: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        n = len(self.order)
        if sorted(self.order) != list(range(1, n + 1)):
            raise ValueError("ordering must be a permutation of 1..n")
        object.__setattr__(self, "canonical", _canonical_form(self.order))

    @property
    def n(self) -> int:
        return len(self.order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicOrdering):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def rotated(self, k: int) -> "CyclicOrdering":
        k %= self.n
        return CyclicOrdering(self.order[k:] + self.order[:k])

    def reversed_order(self) -> "CyclicOrdering":
        return CyclicOrdering(tuple(reversed(self.order)))

    def element_at(self, position: int) -> int:
        return self.order[(position - 1) % self.n]

    def interval(self, i: int, j: int) -> int:
        """Mask of the elements at cyclic positions i..j (wrapping when i > j)."""
        return self.window(i, (j - i) % self.n + 1)

    def window(self, start: int, length: int) -> int:
        mask = 0
        for k in range(length):
            mask |= 1 << (self.order[(start - 1 + k) % self.n] - 1)
        return mask


def _canonical_form(order: tuple[int, ...]) -> tuple[int, ...]:
    candidates = []
    for direction in (order, tuple(reversed(order))):
        for k in range(len(order)):
            candidates.append(direction[k:] + direction[:k])
    return min(candidates)


def natural_ordering(n: int) -> CyclicOrdering:
    return CyclicOrdering(tuple(range(1, n + 1)))


def interval(ordering: CyclicOrdering, i: int, j: int) -> int:
    return ordering.interval(i, j)


@dataclass(frozen=True)
class OrderingCertificate:
    """Outcome of certifying one ordering against (s, t) window structure.

    `circuit_starts` / `cocircuit_starts` list the window positions that are
    themselves circuits / cocircuits; phases give the parity class of those
    starts (1 = odd positions) and are reported only for full certificates on
    more than s + t - 2 elements, where the parity is well defined.
    """

    kind: str
    n: int
    s: int
    t: int
    circuit_starts: tuple[int, ...]
    cocircuit_starts: tuple[int, ...]
    circuit_phase: int | None
    cocircuit_phase: int | None
    failures: tuple[tuple[str, int], ...] = ()

    @property
    def nearly(self) -> bool:
        return self.kind in (NEARLY, FULL)

    @property
    def full(self) -> bool:
        return self.kind == FULL


def _phase(starts: tuple[int, ...]) -> int | None:
    parities = {i % 2 for i in starts}
    if len(parities) == 1:
        return parities.pop()
    return None


@lru_cache(maxsize=2048)
def _certify(oracle: MatroidOracle, order: tuple[int, ...], params: STParams) -> OrderingCertificate:
    # keyed on the raw order: rotations are distinct here even though
    # CyclicOrdering compares equal across its equivalence class
    ordering = CyclicOrdering(order)
    n, s, t = oracle.n, params.s, params.t
    if ordering.n != n:
        raise ValueError("ordering length must match the ground set")
    if n < max(s, t) - 1:
        raise ValueError(
            f"an (s,t)-structured matroid needs at least max(s,t)-1 elements, got n={n}"
        )
    full_set = oracle.ground.full
    failures: list[tuple[str, int]] = []

    # a window that wraps onto itself (n < length) has fewer than `length`
    # distinct elements and never counts as a window circuit/cocircuit
    circuit_starts = tuple(
        i
        for i in range(1, n + 1)
        if (w := ordering.window(i, s)).bit_count() == s and oracle.is_circuit(w)
    )
    cocircuit_starts = tuple(
        i
        for i in range(1, n + 1)
        if (w := ordering.window(i, t)).bit_count() == t and oracle.is_cocircuit(w)
    )

    for i in range(1, n + 1):
        w = ordering.window(i, s - 1)
        if not any(
            oracle.is_circuit(w | bit) for bit in bitset.singletons(full_set & ~w)
        ):
            failures.append(("window-not-in-circuit", i))
        w = ordering.window(i, t - 1)
        if not any(
            oracle.is_cocircuit(w | bit) for bit in bitset.singletons(full_set & ~w)
        ):
            failures.append(("window-not-in-cocircuit", i))
    nearly_ok = not failures

    full_ok = True
    if not (1 in circuit_starts or 2 in circuit_starts):
        failures.append(("no-leading-circuit-window", 1))
        full_ok = False
    if not (1 in cocircuit_starts or 2 in cocircuit_starts):
        failures.append(("no-leading-cocircuit-window", 1))
        full_ok = False
    for i in circuit_starts:
        if (i + 1) % n + 1 not in circuit_starts:
            failures.append(("circuit-window-step", i))
            full_ok = False
    for i in cocircuit_starts:
        if (i + 1) % n + 1 not in cocircuit_starts:
            failures.append(("cocircuit-window-step", i))
            full_ok = False

    kind = FULL if (full_ok and nearly_ok) else NEARLY if nearly_ok else NEITHER
    phase = cophase = None
    if kind == FULL and n > s + t - 2:
        phase = _phase(circuit_starts)
        cophase = _phase(cocircuit_starts)
    return OrderingCertificate(
        kind, n, s, t, circuit_starts, cocircuit_starts, phase, cophase, tuple(failures)
    )


def certify(oracle: MatroidOracle, ordering: CyclicOrdering, params: STParams) -> OrderingCertificate:
    return _certify(oracle, ordering.order, params)


def is_nearly_cyclic(oracle: MatroidOracle, ordering: CyclicOrdering, params: STParams) -> OrderingCertificate:
    return certify(oracle, ordering, params)


def is_fully_cyclic(oracle: MatroidOracle, ordering: CyclicOrdering, params: STParams) -> OrderingCertificate:
    return certify(oracle, ordering, params)


@dataclass(frozen=True)
class BoundsReport:
    """Which ground-set size constraints hold for given (s, t)."""

    n: int
    s: int
    t: int
    nearly_allowed: bool
    full_allowed: bool
    violated: tuple[str, ...]


def size_bounds(n: int, params: STParams, full: bool = False) -> BoundsReport:
    """Evaluate the proven size constraints: the floor n >= s + t - 2 always,
    and for full structure on n > s + t - 2 also n even with s = t mod 2."""
    s, t = params.s, params.t
    violated: list[str] = []
    nearly_allowed = n >= s + t - 2
    if not nearly_allowed:
        violated.append("floor")
    full_allowed = nearly_allowed
    if full and n > s + t - 2:
        if n % 2:
            violated.append("even-size")
            full_allowed = False
        if (s - t) % 2:
            violated.append("window-parity")
            full_allowed = False
    return BoundsReport(n, s, t, nearly_allowed, full_allowed, tuple(violated))


def find_orderings(
    oracle: MatroidOracle,
    params: STParams,
    mode: str = NEARLY,
    limit: int | None = None,
    cap: int | None = None,
) -> list[CyclicOrdering]:
    """All orderings (one per rotation/reflection class) whose certificate
    meets `mode`, in lexicographic order of their canonical form.

    Backtracking over positions: a prefix dies as soon as a completed
    (s-1)- or (t-1)-window is in no s-circuit / t-cocircuit.
    """
    if mode not in (NEARLY, FULL):
        raise ValueError(f"mode must be '{NEARLY}' or '{FULL}'")
    n = oracle.n
    limit_n = cap if cap is not None else search_cap()
    if n > limit_n:
        raise CapExceeded(
            f"ordering search needs n <= {limit_n}, got n={n}; "
            f"raise the cap explicitly (or via {SEARCH_CAP_ENV}) to proceed"
        )
    s, t = params.s, params.t
    full_set = oracle.ground.full
    results: list[CyclicOrdering] = []

    def window_extends(window: int, want_circuit: bool) -> bool:
        test = oracle.is_circuit if want_circuit else oracle.is_cocircuit
        return any(test(window | bit) for bit in bitset.singletons(full_set & ~window))

    def prefix_ok(prefix: list[int]) -> bool:
        p = len(prefix)
        start = p - s + 2
        if start >= 1:
            window = 0
            for q in range(start - 1, p):
                window |= 1 << (prefix[q] - 1)
            if not window_extends(window, True):
                return False
        start = p - t + 2
        if start >= 1:
            window = 0
            for q in range(start - 1, p):
                window |= 1 << (prefix[q] - 1)
            if not window_extends(window, False):
                return False
        return True

    def extend(prefix: list[int], used: int) -> bool:
        if limit is not None and len(results) >= limit:
            return True
        if len(prefix) == n:
            if n > 2 and prefix[1] > prefix[-1]:
                return False  # reflection twin; its mirror was emitted already
            ordering = CyclicOrdering(tuple(prefix))
            cert = certify(oracle, ordering, params)
            if cert.nearly if mode == NEARLY else cert.full:
                results.append(ordering)
            return limit is not None and len(results) >= limit
        for e in range(1, n + 1):
            bit = 1 << (e - 1)
            if used & bit:
                continue
            prefix.append(e)
            if prefix_ok(prefix):
                if extend(prefix, used | bit):
                    prefix.pop()
                    return True
            prefix.pop()
        return False

    extend([1], 1)
    return results


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def check_adjacent_windows(
    oracle: MatroidOracle, ordering: CyclicOrdering, params: STParams
) -> VerificationReport:
    """Each circuit window is flanked by cocircuit windows at distance t on
    both sides, and dually.  Requires a full certificate on n > s + t - 2."""
    cert = certify(oracle, ordering, params)
    n, s, t = cert.n, cert.s, cert.t
    _require(cert.full, "adjacent-window check needs a fully structured ordering")
    _require(n > s + t - 2, f"adjacent-window check needs n > s + t - 2, got n={n}")
    witnesses = []
    checked = 0
    for i in cert.circuit_starts:
        for start in (i - t, i + s):
            checked += 1
            if not oracle.is_cocircuit(ordering.window((start - 1) % n + 1, t)):
                witnesses.append(("missing-flank-cocircuit", i, start))
    for i in cert.cocircuit_starts:
        for start in (i - s, i + t):
            checked += 1
            if not oracle.is_circuit(ordering.window((start - 1) % n + 1, s)):
                witnesses.append(("missing-flank-circuit", i, start))
    return VerificationReport("adjacent-windows", not witnesses, checked, tuple(witnesses))


def check_window_structure(
    oracle: MatroidOracle, ordering: CyclicOrdering, params: STParams
) -> VerificationReport:
    """Parity structure at each circuit window: for even s, t the cocircuit
    window shares the start; for odd s, t it is shifted by one.  The shifted
    s-window is independent and the appropriate t-window coindependent."""
    cert = certify(oracle, ordering, params)
    n, s, t = cert.n, cert.s, cert.t
    _require(cert.full, "window-structure check needs a fully structured ordering")
    _require(n > s + t - 2, f"window-structure check needs n > s + t - 2, got n={n}")
    _require((s - t) % 2 == 0, "window-structure check needs s = t mod 2")
    even = s % 2 == 0
    witnesses = []
    checked = 0
    for i in cert.circuit_starts:
        cocirc_start = i if even else i + 1
        coindep_start = i + 1 if even else i
        checked += 3
        if not oracle.is_cocircuit(ordering.window((cocirc_start - 1) % n + 1, t)):
            witnesses.append(("expected-cocircuit", i, cocirc_start))
        if not oracle.indep(ordering.window(i % n + 1, s)):
            witnesses.append(("expected-independent", i, i + 1))
        if not oracle.is_coindependent(ordering.window((coindep_start - 1) % n + 1, t)):
            witnesses.append(("expected-coindependent", i, coindep_start))
    return VerificationReport("window-structure", not witnesses, checked, tuple(witnesses))


def check_window_closure(
    oracle: MatroidOracle,
    ordering: CyclicOrdering,
    params: STParams,
    i: int,
    k: int,
) -> tuple[bool, bool]:
    """Both closure biconditionals at (i, k): the next element enters the
    closure of the k-window iff the trailing s-window is a circuit, and the
    preceding element does iff the leading s-window is one."""
    cert = certify(oracle, ordering, params)
    n, s, t = cert.n, cert.s, cert.t
    _require(cert.full, "closure check needs a fully structured ordering")
    _require(n > s + t - 2, f"closure check needs n > s + t - 2, got n={n}")
    _require(s - 1 <= k <= n - t, f"closure check needs s-1 <= k <= n-t, got k={k}")
    window = ordering.window(i, k)
    next_elem = ordering.element_at(i + k)
    ahead = oracle.in_closure(next_elem, window) == oracle.is_circuit(
        ordering.window((i + k - s) % n + 1, s)
    )
    prev_elem = ordering.element_at(i - 1)
    behind = oracle.in_closure(prev_elem, window) == oracle.is_circuit(
        ordering.window((i - 2) % n + 1, s)
    )
    return ahead, behind


def window_rank_prediction(
    oracle: MatroidOracle,
    ordering: CyclicOrdering,
    params: STParams,
    i: int,
    k: int,
) -> tuple[int, int]:
    """Predicted vs oracle rank of the k-window at position i.

    Below s the window is independent; from s on the rank is
    floor((s+k-1)/2) when the leading s-window is a circuit and the ceiling
    otherwise.
    """
    cert = certify(oracle, ordering, params)
    n, s, t = cert.n, cert.s, cert.t
    _require(cert.full, "window-rank check needs a fully structured ordering")
    _require(n > s + t - 2, f"window-rank check needs n > s + t - 2, got n={n}")
    _require(1 <= k <= n - t + 1, f"window-rank check needs 1 <= k <= n-t+1, got k={k}")
    if k < s:
        predicted = k
    elif i in cert.circuit_starts:
        predicted = (s + k - 1) // 2
    else:
        predicted = (s + k) // 2
    return predicted, oracle.rank(ordering.window(i, k))


def check_rank_formula(oracle: MatroidOracle, params: STParams) -> bool:
    """Rank (n+s-t)/2 and corank (n-s+t)/2, exactly."""
    n, s, t = oracle.n, params.s, params.t
    if (n + s - t) % 2:
        return False
    r = oracle.rank()
    return r == (n + s - t) // 2 and n - r == (n - s + t) // 2


def full_from_odd_circuits(
    oracle: MatroidOracle, ordering: CyclicOrdering, params: STParams
) -> OrderingCertificate:
    """When a nearly structured ordering on n >= s + t elements has circuits
    at every odd window start, the full certificate must follow; returns it
    for the caller to assert."""
    cert = certify(oracle, ordering, params)
    n, s, t = cert.n, cert.s, cert.t
    _require(cert.nearly, "upgrade needs a nearly structured ordering")
    _require(n >= s + t, f"upgrade needs n >= s + t, got n={n}")
    missing = [i for i in range(1, n + 1, 2) if i not in cert.circuit_starts]
    _require(not missing, f"odd window starts {missing} are not circuits")
    return cert


def unique_window_circuits(
    oracle: MatroidOracle, ordering: CyclicOrdering, params: STParams
) -> VerificationReport:
    """On n >= s + 2t - 4 elements, each (s-1)-window extends to exactly one
    s-element circuit."""
    cert = certify(oracle, ordering, params)
    n, s, t = cert.n, cert.s, cert.t
    _require(cert.nearly, "uniqueness check needs a nearly structured ordering")
    _require(n >= s + 2 * t - 4, f"uniqueness check needs n >= s + 2t - 4, got n={n}")
    witnesses = []
    full_set = oracle.ground.full
    for i in range(1, n + 1):
        window = ordering.window(i, s - 1)
        count = sum(
            1
            for bit in bitset.singletons(full_set & ~window)
            if oracle.is_circuit(window | bit)
        )
        if count != 1:
            witnesses.append(("window-circuit-count", i, count))
    return VerificationReport("unique-window-circuit", not witnesses, n, tuple(witnesses))


def upgrade_from_nearly(
    oracle: MatroidOracle, ordering: CyclicOrdering, params: STParams
) -> VerificationReport:
    """Nearly structured implies fully structured once n >= 3*t1 + t2 - 5 and
    n >= t1 + 2*t2 - 1; below the bounds the check is vacuous (noted)."""
    s, t = params.s, params.t
    _require(s >= 3 and t >= 3, "the nearly-to-fully upgrade needs s, t >= 3")
    cert = certify(oracle, ordering, params)
    _require(cert.nearly, "upgrade needs a nearly structured ordering")
    t1, t2 = params.t1, params.t2
    if cert.n >= 3 * t1 + t2 - 5 and cert.n >= t1 + 2 * t2 - 1:
        return VerificationReport(
            "nearly-upgrade", cert.full, 1,
            () if cert.full else ((cert.kind, cert.failures),),
        )
    return VerificationReport("nearly-upgrade", True, 0, note="size bounds not met; vacuous")
