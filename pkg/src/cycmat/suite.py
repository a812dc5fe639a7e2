"""The verification suite: every structural check over a fixture grid.

Fixtures are built once per run and shared, so oracle memoisation carries
across checks.  Entries are keyed by check name and parameters and the
report is assembled in sorted order, making the output independent of
execution order and byte-stable across runs with the same seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Any, Callable

from . import bitset
from .constructions import free_spike, truncate, truncation_circuits, uniform, wheel, whirl
from .core import (
    GroundSet,
    MatroidOracle,
    orthogonality_check,
    validate_circuit_axioms,
    verify_matroid_axioms,
)
from .counterexample import forced_dependents, psi_two_block_circuits, rank_bound_contradiction
from .cyclic import (
    NEARLY,
    STParams,
    certify,
    check_adjacent_windows,
    check_rank_formula,
    check_window_closure,
    check_window_structure,
    find_orderings,
    full_from_odd_circuits,
    natural_ordering,
    size_bounds,
    unique_window_circuits,
    upgrade_from_nearly,
    window_rank_prediction,
)
from .transversal import (
    BipartitePresentation,
    brute_force_matching_size,
    dual_transversal,
    interval_presentation,
    max_matching,
    psi,
    psi_basis_test,
    self_duality_map,
    transversal_matroid,
)
from .weakmap import (
    interval_rank_condition,
    is_quotient,
    truncated_psi_certificate,
    weak_image_of_truncated_psi,
)

DEFAULT_SEED = 20260810
DEFAULT_MAX_N = 12

PSI_GRID = ((8, 3), (10, 3), (12, 3), (8, 4), (12, 4), (12, 5))
PSI_GRID_14 = ((14, 3), (14, 4))
TRUNCATION_GRID = ((10, 3, 5), (12, 3, 5), (12, 4, 6))
TRUNCATION_GRID_14 = ((14, 3, 5), (14, 3, 7))
UNIFORM_GRID = ((2, 4, 3, 3), (2, 5, 3, 4), (3, 6, 4, 4))  # (r, n, s, t)
WHEEL_GRID = (3, 4, 5, 6)
SPIKE_GRID = (3, 4, 5, 6)
TWO_BLOCK_GRID = ((8, 4), (12, 4), (12, 5))
CONTRADICTION_GRID = ((8, 4), (12, 5))
RANDOM_COUNT = 20

FAMILY_NAMES = (
    "uniform", "wheel", "whirl", "spike", "psi", "truncation", "random", "counterexample",
)


@dataclass
class Fixture:
    family: str
    label: str
    oracle: MatroidOracle
    st: STParams | None = None
    psi_params: tuple[int, int] | None = None


class FixtureSet:
    """Lazily built, cached fixtures for one suite run."""

    def __init__(self, max_n: int, seed: int, families: tuple[str, ...]):
        self.max_n = max_n
        self.seed = seed
        self.families = families
        self._built: dict[str, list[Fixture]] = {}

    def enabled(self, family: str) -> bool:
        return family in self.families

    def group(self, family: str) -> list[Fixture]:
        if not self.enabled(family):
            return []
        if family not in self._built:
            self._built[family] = list(self._build(family))
        return self._built[family]

    def _build(self, family: str):
        if family == "psi":
            grid = PSI_GRID + (PSI_GRID_14 if self.max_n >= 14 else ())
            for n, s in grid:
                if n <= self.max_n:
                    yield Fixture("psi", f"psi({n},{s})", psi(n, s), STParams(s, s), (n, s))
        elif family == "truncation":
            grid = TRUNCATION_GRID + (TRUNCATION_GRID_14 if self.max_n >= 14 else ())
            for n, s, t in grid:
                if n <= self.max_n:
                    oracle = truncate(psi(n, s), (t - s) // 2)
                    yield Fixture("truncation", f"T^{(t - s) // 2}(psi({n},{s}))",
                                  oracle, STParams(s, t), (n, s))
        elif family == "uniform":
            for r, n, s, t in UNIFORM_GRID:
                if n <= self.max_n:
                    yield Fixture("uniform", f"U({r},{n})", uniform(r, n), STParams(s, t))
        elif family == "wheel":
            for r in WHEEL_GRID:
                if 2 * r <= self.max_n:
                    yield Fixture("wheel", f"wheel({r})", wheel(r), STParams(3, 3))
        elif family == "whirl":
            for r in WHEEL_GRID:
                if 2 * r <= self.max_n:
                    yield Fixture("whirl", f"whirl({r})", whirl(r), STParams(3, 3))
        elif family == "spike":
            for r in SPIKE_GRID:
                if 2 * r <= self.max_n:
                    oracle, _ = free_spike(r)
                    yield Fixture("spike", f"spike({r})", oracle, STParams(4, 4))
        elif family == "random":
            rng = random.Random(self.seed)
            for idx in range(RANDOM_COUNT):
                yield Fixture("random", f"random-{idx}", random_transversal(rng, 8))

    def all_oracles(self) -> list[Fixture]:
        out: list[Fixture] = []
        for family in ("uniform", "wheel", "whirl", "spike", "psi", "truncation"):
            out.extend(self.group(family))
        return out

    def cyclic_fixtures(self) -> list[Fixture]:
        return self.group("psi") + self.group("truncation")


def random_transversal(rng: random.Random, n: int) -> MatroidOracle:
    m = rng.randint(3, 5)
    neighborhoods = []
    for _ in range(m):
        size = rng.randint(2, 5)
        neighborhoods.append(bitset.mask_of(rng.sample(range(1, n + 1), size)))
    pres = BipartitePresentation(GroundSet(n), tuple(neighborhoods))
    return transversal_matroid(pres)


@dataclass(frozen=True)
class SuiteEntry:
    check: str
    params: dict
    ok: bool
    witness: Any = None


def _mask_list(masks) -> list[list[int]]:
    return [list(bitset.indices(m)) for m in masks]


def run_suite(
    max_n: int = DEFAULT_MAX_N,
    seed: int = DEFAULT_SEED,
    families: tuple[str, ...] | None = None,
    inject_mutant: bool = False,
) -> dict:
    chosen = tuple(families) if families else FAMILY_NAMES
    unknown = set(chosen) - set(FAMILY_NAMES)
    if unknown:
        raise ValueError(f"unknown fixture families: {sorted(unknown)}")
    fixtures = FixtureSet(max_n, seed, chosen)
    entries: list[SuiteEntry] = []

    def record(check: str, params: dict, thunk: Callable[[], tuple[bool, Any]]) -> None:
        try:
            ok, witness = thunk()
        except Exception as exc:  # a crash is a failed entry, not a dead run
            ok, witness = False, f"error: {exc}"
        entries.append(SuiteEntry(check, params, ok, witness))

    _structural_checks(fixtures, record)
    _transversal_checks(fixtures, record)
    _window_checks(fixtures, record)
    _ordering_checks(fixtures, record)
    _relation_checks(fixtures, record)
    _counterexample_checks(fixtures, record)
    if inject_mutant:
        record("circuit-axioms", {"matroid": "mutant-U(2,4)"}, _mutant_check)

    entries.sort(key=lambda e: (e.check, json.dumps(e.params, sort_keys=True)))
    failed = [e for e in entries if not e.ok]
    report = {
        "schema": 1,
        "seed": seed,
        "max_n": max_n,
        "families": sorted(chosen),
        "entries": [
            {"check": e.check, "params": e.params, "ok": e.ok, "witness": e.witness}
            for e in entries
        ],
        "summary": {
            "total": len(entries),
            "passed": len(entries) - len(failed),
            "failed": len(failed),
            "first_failure": None if not failed else {
                "check": failed[0].check,
                "params": failed[0].params,
                "witness": failed[0].witness,
            },
        },
    }
    return report


def _mutant_check() -> tuple[bool, Any]:
    full = [bitset.mask_of(c) for c in ([1, 2, 3], [1, 2, 4], [1, 3, 4])]
    report = validate_circuit_axioms(full, 4)
    return report.ok, report.violations[:1] or None


def _structural_checks(fixtures: FixtureSet, record) -> None:
    for fx in fixtures.all_oracles():
        params = {"matroid": fx.label}
        record("dual-rank-sum", params, lambda fx=fx: (
            fx.oracle.rank() + fx.oracle.dual().rank() == fx.oracle.n, None))
        record("circuit-axioms", params, lambda fx=fx: _axioms_entry(fx))
        record("exchange-sweep", params, lambda fx=fx: _exchange_entry(fx))
        record("orthogonality", params, lambda fx=fx: _orthogonality_entry(fx))
        if fx.oracle.n <= 8:
            record("dual-involution", params, lambda fx=fx: _dual_involution_entry(fx))


def _axioms_entry(fx: Fixture) -> tuple[bool, Any]:
    report = validate_circuit_axioms(fx.oracle.circuits(), fx.oracle.n)
    return report.ok, report.violations[:1] or None


def _exchange_entry(fx: Fixture) -> tuple[bool, Any]:
    report = verify_matroid_axioms(fx.oracle)
    return report.ok, report.witnesses[:1] or None


def _orthogonality_entry(fx: Fixture) -> tuple[bool, Any]:
    circuits = fx.oracle.circuits()
    cocircuits = fx.oracle.cocircuits()
    for c in circuits:
        for d in cocircuits:
            if not orthogonality_check(c, d):
                return False, _mask_list((c, d))
    return True, None


def _dual_involution_entry(fx: Fixture) -> tuple[bool, Any]:
    double = fx.oracle.dual().dual()
    for mask in range(1 << fx.oracle.n):
        if fx.oracle.indep(mask) != double.indep(mask):
            return False, list(bitset.indices(mask))
    return True, None


def _transversal_checks(fixtures: FixtureSet, record) -> None:
    for fx in fixtures.group("psi"):
        n, s = fx.psi_params
        params = {"n": n, "s": s}
        pres = interval_presentation(n, s)
        if n <= 12:
            record("dual-transversal-equivalence", params,
                   lambda n=n, s=s, pres=pres: _dual_equivalence_entry(n, pres))
            record("basis-characterization", params,
                   lambda n=n, s=s, fx=fx: _basis_entry(n, s, fx.oracle))
            record("self-duality", params,
                   lambda n=n, s=s, fx=fx: _self_duality_entry(n, s, fx.oracle))
            record("circuit-classification", params,
                   lambda pres=pres, fx=fx: _classification_entry(pres, fx.oracle))
            record("deficiency-dichotomy", params,
                   lambda pres=pres, fx=fx: _deficiency_entry(pres, fx.oracle))
        record("matching-cross-check", params,
               lambda pres=pres, seed=fixtures.seed: _matching_entry(pres, seed))


def _dual_equivalence_entry(n: int, pres) -> tuple[bool, Any]:
    direct = dual_transversal(pres.base)
    generic = transversal_matroid(pres.base).dual()
    for mask in range(1 << n):
        if direct.indep(mask) != generic.indep(mask):
            return False, list(bitset.indices(mask))
    return True, None


def _basis_entry(n: int, s: int, oracle: MatroidOracle) -> tuple[bool, Any]:
    half = n // 2
    for mask in range(1 << n):
        by_counts = psi_basis_test(n, s, mask)
        by_matching = mask.bit_count() == half and oracle.indep(mask)
        if by_counts != by_matching:
            return False, list(bitset.indices(mask))
    return True, None


def _self_duality_entry(n: int, s: int, oracle: MatroidOracle) -> tuple[bool, Any]:
    perm = self_duality_map(n, s)
    mapped = {bitset.permute(c, perm) for c in oracle.circuits()}
    actual = set(oracle.cocircuits().members)
    if mapped != actual:
        return False, {
            "missing": _mask_list(sorted(actual - mapped)[:2]),
            "extra": _mask_list(sorted(mapped - actual)[:2]),
        }
    return True, None


def _classification_entry(pres, oracle: MatroidOracle) -> tuple[bool, Any]:
    from .transversal import classify_circuit

    for circuit in oracle.circuits():
        outcome = classify_circuit(pres, circuit)
        if not outcome.ok:
            return False, list(bitset.indices(circuit))
    return True, None


def _deficiency_entry(pres, oracle: MatroidOracle) -> tuple[bool, Any]:
    m = pres.m
    for circuit in oracle.circuits():
        for j_mask in range(1, 1 << m):
            lefts = bitset.indices(j_mask)
            union = pres.base.neighborhood_union(lefts)
            if (union & ~circuit).bit_count() < len(lefts):
                size_ok = circuit.bit_count() == union.bit_count() - len(lefts) + 1
                if not (bitset.is_subset(circuit, union) and size_ok):
                    return False, {"circuit": list(bitset.indices(circuit)), "J": list(lefts)}
    return True, None


def _matching_entry(pres, seed: int) -> tuple[bool, Any]:
    rng = random.Random(seed)
    n = pres.n
    avoids = [0] + [1 << i for i in range(n)] + [
        rng.getrandbits(n) for _ in range(40)
    ]
    for avoid in avoids:
        avoid &= pres.base.ground.full
        fast = max_matching(pres.base, avoid)
        slow = brute_force_matching_size(pres.base, avoid)
        if fast.size != slow:
            return False, {"avoid": list(bitset.indices(avoid)), "fast": fast.size, "slow": slow}
        if fast.size < pres.m:
            lefts = fast.witness
            union = pres.base.neighborhood_union(lefts)
            if (union & ~avoid).bit_count() >= len(lefts):
                return False, {"avoid": list(bitset.indices(avoid)), "witness": list(lefts)}
    return True, None


def _window_checks(fixtures: FixtureSet, record) -> None:
    for fx in fixtures.cyclic_fixtures():
        st = fx.st
        n = fx.oracle.n
        params = {"matroid": fx.label, "s": st.s, "t": st.t}
        ordering = natural_ordering(n)
        record("rank-formula", params, lambda fx=fx, st=st: (check_rank_formula(fx.oracle, st), None))
        if n > st.s + st.t - 2:
            record("window-flanks", params, lambda fx=fx, o=ordering, st=st: _report_entry(
                check_adjacent_windows(fx.oracle, o, st)))
            if (st.s - st.t) % 2 == 0:
                record("window-structure", params, lambda fx=fx, o=ordering, st=st: _report_entry(
                    check_window_structure(fx.oracle, o, st)))
            record("window-closure", params, lambda fx=fx, o=ordering, st=st: _closure_entry(
                fx.oracle, o, st))
            record("window-rank", params, lambda fx=fx, o=ordering, st=st: _window_rank_entry(
                fx.oracle, o, st))
        if n >= st.s + st.t:
            record("odd-start-upgrade", params, lambda fx=fx, o=ordering, st=st: (
                full_from_odd_circuits(fx.oracle, o, st).full, None))
        if n >= st.s + 2 * st.t - 4:
            record("unique-window-circuit", params, lambda fx=fx, o=ordering, st=st: _report_entry(
                unique_window_circuits(fx.oracle, o, st)))
        record("reversal-closure", params, lambda fx=fx, o=ordering, st=st: (
            certify(fx.oracle, o.reversed_order(), st).full
            == certify(fx.oracle, o, st).full, None))
    for fx in fixtures.group("uniform"):
        params = {"matroid": fx.label, "s": fx.st.s, "t": fx.st.t}
        record("rank-formula", params, lambda fx=fx: (check_rank_formula(fx.oracle, fx.st), None))
        record("boundary-certificate", params, lambda fx=fx: (
            certify(fx.oracle, natural_ordering(fx.oracle.n), fx.st).full, None))
    for n, s, t, nearly_ok, full_ok in (
        (9, 3, 5, True, False),
        (6, 3, 4, True, False),
        (1, 2, 2, False, False),
        (8, 3, 3, True, True),
    ):
        params = {"n": n, "s": s, "t": t}
        record("size-bounds", params, lambda n=n, s=s, t=t, a=nearly_ok, b=full_ok: (
            (lambda rep: rep.nearly_allowed == a and rep.full_allowed == b)(
                size_bounds(n, STParams(s, t), full=True)), None))


def _report_entry(report) -> tuple[bool, Any]:
    return report.ok, list(report.witnesses[:1]) or None


def _closure_entry(oracle, ordering, st) -> tuple[bool, Any]:
    n = oracle.n
    for i in range(1, n + 1):
        for k in range(st.s - 1, n - st.t + 1):
            ahead, behind = check_window_closure(oracle, ordering, st, i, k)
            if not (ahead and behind):
                return False, {"i": i, "k": k}
    return True, None


def _window_rank_entry(oracle, ordering, st) -> tuple[bool, Any]:
    n = oracle.n
    for i in range(1, n + 1):
        for k in range(1, n - st.t + 2):
            predicted, actual = window_rank_prediction(oracle, ordering, st, i, k)
            if predicted != actual:
                return False, {"i": i, "k": k, "predicted": predicted, "actual": actual}
    return True, None


def _ordering_checks(fixtures: FixtureSet, record) -> None:
    st = STParams(3, 3)
    targets: list[tuple[str, MatroidOracle]] = []
    if fixtures.enabled("psi") and fixtures.max_n >= 8:
        targets.append(("psi(8,3)", psi(8, 3)))
    if fixtures.enabled("wheel") and fixtures.max_n >= 8:
        targets.append(("wheel(4)", wheel(4)))
    for fx in fixtures.group("random"):
        targets.append((fx.label, fx.oracle))
    for label, oracle in targets:
        record("nearly-upgrade", {"matroid": label}, lambda oracle=oracle: _upgrade_entry(oracle, st))
    if fixtures.enabled("whirl"):
        record("below-bound-survey", {"matroid": "whirl(3)"},
               lambda: _survey_entry(whirl(3), st))
    if fixtures.enabled("wheel"):
        # the 3-spoke wheel is the known source of nearly-not-full data at n = 6
        record("below-bound-survey", {"matroid": "wheel(3)"},
               lambda: _survey_entry(wheel(3), st))
    if fixtures.enabled("uniform"):
        record("below-bound-survey", {"matroid": "U(2,4)"},
               lambda: _survey_entry(uniform(2, 4), st))


def _upgrade_entry(oracle: MatroidOracle, st: STParams) -> tuple[bool, Any]:
    orderings = find_orderings(oracle, st, mode=NEARLY)
    for ordering in orderings:
        report = upgrade_from_nearly(oracle, ordering, st)
        if not report.ok:
            return False, {"order": list(ordering.order)}
    return True, {"nearly_orderings": len(orderings)}


def _survey_entry(oracle: MatroidOracle, st: STParams) -> tuple[bool, Any]:
    # informational: report nearly-but-not-full orderings below the bound
    orderings = find_orderings(oracle, st, mode=NEARLY)
    gaps = [o for o in orderings if not certify(oracle, o, st).full]
    return True, {
        "nearly_orderings": len(orderings),
        "nearly_not_full": len(gaps),
        "example": list(gaps[0].order) if gaps else None,
    }


def _relation_checks(fixtures: FixtureSet, record) -> None:
    if fixtures.enabled("truncation"):
        for n, s, t in (TRUNCATION_GRID + ((12, 4, 4),)):
            if n <= fixtures.max_n:
                record("truncation-cyclic", {"n": n, "s": s, "t": t},
                       lambda n=n, s=s, t=t: (truncated_psi_certificate(n, s, t).full, None))
    if fixtures.enabled("psi") and fixtures.max_n >= 10:
        pipeline = [
            ("wheel(4)", wheel(4), STParams(3, 3)),
            ("spike(4)", free_spike(4)[0], STParams(4, 4)),
            ("T^1(psi(10,3))", truncate(psi(10, 3), 1), STParams(3, 5)),
        ]
        for label, oracle, st in pipeline:
            record("weak-map-pipeline", {"matroid": label, "s": st.s, "t": st.t},
                   lambda oracle=oracle, st=st: _pipeline_entry(oracle, st))
    if fixtures.enabled("psi") and fixtures.max_n >= 8:
        for label, oracle, expected in (
            ("wheel(4)", wheel(4), True),
            ("psi(8,3)", psi(8, 3), True),
            ("U(8,8)", uniform(8, 8), False),
        ):
            record("interval-rank-weakmap", {"matroid": label}, lambda oracle=oracle,
                   expected=expected: _interval_rank_entry(oracle, expected))
    for fx in fixtures.all_oracles():
        if fx.oracle.n <= 10 and fx.oracle.rank() >= 1:
            params = {"matroid": fx.label}
            record("quotient-truncation", params, lambda fx=fx: (
                is_quotient(fx.oracle, truncate(fx.oracle, 1)).holds, None))
            record("truncation-circuits", params, lambda fx=fx: _truncation_circuits_entry(fx))


def _pipeline_entry(oracle: MatroidOracle, st: STParams) -> tuple[bool, Any]:
    report = weak_image_of_truncated_psi(oracle, natural_ordering(oracle.n), st)
    witness = None if report.holds else _mask_list([report.violating_circuit])
    return report.holds, witness


def _interval_rank_entry(oracle: MatroidOracle, expected: bool) -> tuple[bool, Any]:
    outcome = interval_rank_condition(oracle, interval_presentation(8, 3))
    if outcome.condition != expected:
        return False, {"condition": outcome.condition}
    if outcome.condition and not outcome.weak_map.holds:
        return False, "condition held but weak map failed"
    return True, None


def _truncation_circuits_entry(fx: Fixture) -> tuple[bool, Any]:
    truncated = truncate(fx.oracle, 1)
    expected = set(truncation_circuits(fx.oracle, 1).members)
    actual = set(truncated.circuits().members)
    if expected != actual:
        return False, {
            "missing": _mask_list(sorted(expected - actual)[:2]),
            "extra": _mask_list(sorted(actual - expected)[:2]),
        }
    return True, None


def _counterexample_checks(fixtures: FixtureSet, record) -> None:
    if not fixtures.enabled("counterexample"):
        return
    for n, s in TWO_BLOCK_GRID:
        if n <= fixtures.max_n:
            record("two-block-circuits", {"n": n, "s": s},
                   lambda n=n, s=s: _report_entry(psi_two_block_circuits(n, s)))
            record("forced-ledger", {"n": n, "s": s},
                   lambda n=n, s=s: _ledger_entry(n, s))
    for n, s in CONTRADICTION_GRID:
        if n <= fixtures.max_n:
            record("rank-contradiction", {"n": n, "s": s}, lambda n=n, s=s: (
                rank_bound_contradiction(n, s).ok, None))


def _ledger_entry(n: int, s: int) -> tuple[bool, Any]:
    ledger = forced_dependents(n, s)
    report = ledger.verify_dependent(psi(n, s))
    if not report.ok:
        return False, list(report.witnesses[:1])
    return True, {"entries": len(ledger), "instances": ledger.instance_count()}
