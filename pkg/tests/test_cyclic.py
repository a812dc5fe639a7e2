import pytest
from hypothesis import given
from hypothesis import strategies as st

from cycmat import bitset, psi, uniform, wheel, whirl
from cycmat.constructions import free_spike, truncate
from cycmat.core import CapExceeded
from cycmat.cyclic import (
    FULL,
    NEARLY,
    CyclicOrdering,
    STParams,
    certify,
    check_adjacent_windows,
    check_rank_formula,
    check_window_closure,
    check_window_structure,
    find_orderings,
    full_from_odd_circuits,
    interval,
    natural_ordering,
    size_bounds,
    unique_window_circuits,
    upgrade_from_nearly,
    window_rank_prediction,
)

ST33 = STParams(3, 3)


def test_st_params_validation():
    with pytest.raises(ValueError):
        STParams(1, 3)
    p = STParams(3, 5)
    assert (p.t1, p.t2) == (3, 5)


def test_ordering_must_be_permutation():
    with pytest.raises(ValueError):
        CyclicOrdering((1, 2, 2))


def test_interval_positions():
    o = natural_ordering(8)
    assert interval(o, 7, 2) == bitset.mask_of([7, 8, 1, 2])
    assert interval(o, 3, 3) == bitset.mask_of([3])
    assert interval(natural_ordering(12), 1, 5) == bitset.mask_of([1, 2, 3, 4, 5])


def test_interval_respects_permutation():
    o = CyclicOrdering((3, 1, 4, 2))
    assert o.interval(1, 2) == bitset.mask_of([3, 1])
    assert o.interval(4, 1) == bitset.mask_of([2, 3])


permutations8 = st.permutations(range(1, 9))


@given(permutations8, st.integers(0, 7), st.booleans())
def test_canonical_invariant_under_symmetry(perm, k, flip):
    o = CyclicOrdering(tuple(perm))
    other = o.rotated(k)
    if flip:
        other = other.reversed_order()
    assert other.canonical == o.canonical
    assert other == o and hash(other) == hash(o)


def test_uniform_any_ordering_nearly():
    M = uniform(2, 4)
    cert = certify(M, natural_ordering(4), ST33)
    assert cert.nearly


def test_certificate_floor():
    with pytest.raises(ValueError):
        certify(uniform(2, 4), natural_ordering(4), STParams(3, 6))


def test_psi_natural_full_with_phases(psi_oracles):
    cert = certify(psi_oracles[(8, 3)], natural_ordering(8), ST33)
    assert cert.full
    assert cert.circuit_starts == (1, 3, 5, 7)
    assert cert.circuit_phase == 1
    assert cert.cocircuit_phase == 0  # shifted by one, whirl-like


def test_psi_even_family_same_phase(psi_oracles):
    cert = certify(psi_oracles[(12, 4)], natural_ordering(12), STParams(4, 4))
    assert cert.full
    assert cert.circuit_phase == cert.cocircuit_phase == 1


def test_wheel_non_alternating_ordering_fails():
    M = wheel(4)
    # spokes first, rims after: windows of three spokes are independent
    scrambled = CyclicOrdering((1, 3, 5, 7, 2, 4, 6, 8))
    cert = certify(M, scrambled, ST33)
    assert cert.kind == "neither"


def test_certificates_rotation_and_reflection_invariant(psi_oracles):
    M = psi_oracles[(8, 3)]
    base = natural_ordering(8)
    kinds = {certify(M, base.rotated(k), ST33).kind for k in range(8)}
    kinds.add(certify(M, base.reversed_order(), ST33).kind)
    assert kinds == {"full"}


def test_full_certificates_have_single_parity(psi_oracles):
    # above the size floor, window circuits live at exactly one parity class
    for (n, s), M in psi_oracles.items():
        cert = certify(M, natural_ordering(n), STParams(s, s))
        assert cert.full
        assert cert.circuit_phase is not None
        assert cert.cocircuit_phase is not None
        expected_shift = 0 if s % 2 == 0 else 1
        assert (cert.circuit_phase - cert.cocircuit_phase) % 2 == expected_shift


def test_full_implies_nearly_on_examples(psi_oracles):
    fixtures = [
        (psi_oracles[(8, 3)], ST33),
        (free_spike(4)[0], STParams(4, 4)),
        (uniform(2, 5), STParams(3, 4)),
    ]
    for M, p in fixtures:
        cert = certify(M, natural_ordering(M.n), p)
        assert cert.full and cert.nearly


def test_size_bounds_table():
    assert size_bounds(9, STParams(3, 5), full=True).nearly_allowed
    assert not size_bounds(9, STParams(3, 5), full=True).full_allowed  # odd n
    rep = size_bounds(6, STParams(3, 4), full=True)
    assert not rep.full_allowed and "window-parity" in rep.violated
    assert not size_bounds(1, STParams(2, 2)).nearly_allowed
    assert size_bounds(5, ST33).nearly_allowed


def test_find_orderings_uniform_24():
    # full symmetry: all (4-1)!/2 = 3 dihedral classes qualify
    found = find_orderings(uniform(2, 4), ST33, mode=NEARLY)
    assert len(found) == 3
    assert all(o.order[0] == 1 for o in found)


def test_find_orderings_wheel_contains_alternating():
    found = find_orderings(wheel(4), ST33, mode=FULL)
    assert natural_ordering(8) in found


def test_find_orderings_spike_pairs_consecutive():
    M, pairs = free_spike(3)
    found = find_orderings(M, STParams(4, 4), mode=NEARLY)
    # every ordering that keeps each pair consecutive qualifies
    def pairs_consecutive(o):
        pos = {e: i for i, e in enumerate(o.order)}
        return all(
            (pos[2 * i + 2] - pos[2 * i + 1]) % 6 in (1, 5) for i in range(3)
        )
    qualifying = [o for o in found if pairs_consecutive(o)]
    assert qualifying
    for o in found:
        assert certify(M, o, STParams(4, 4)).nearly


def test_find_orderings_respects_limit_and_cap():
    assert len(find_orderings(uniform(2, 4), ST33, mode=NEARLY, limit=1)) == 1
    with pytest.raises(CapExceeded):
        find_orderings(uniform(6, 13), ST33)


def naive_orderings(oracle, params, mode):
    """Unpruned reference enumeration: certify every dihedral representative."""
    import itertools

    n = oracle.n
    out = []
    for rest in itertools.permutations(range(2, n + 1)):
        if n > 2 and rest[0] > rest[-1]:
            continue
        ordering = CyclicOrdering((1,) + rest)
        cert = certify(oracle, ordering, params)
        if cert.nearly if mode == NEARLY else cert.full:
            out.append(ordering.canonical)
    return out


def test_search_matches_naive_enumeration():
    fixtures = [
        (uniform(2, 4), ST33, NEARLY),
        (uniform(2, 5), STParams(3, 4), FULL),
        (whirl(3), ST33, NEARLY),
        (whirl(3), ST33, FULL),
        (free_spike(3)[0], STParams(4, 4), NEARLY),
    ]
    for oracle, params, mode in fixtures:
        fast = [o.canonical for o in find_orderings(oracle, params, mode=mode)]
        assert fast == naive_orderings(oracle, params, mode)


def test_find_orderings_deterministic(psi_oracles):
    M = psi_oracles[(8, 3)]
    a = [o.canonical for o in find_orderings(M, ST33, mode=NEARLY)]
    b = [o.canonical for o in find_orderings(M, ST33, mode=NEARLY)]
    assert a == b


def test_adjacent_windows_psi83(psi_oracles):
    M = psi_oracles[(8, 3)]
    report = check_adjacent_windows(M, natural_ordering(8), ST33)
    assert report.ok
    # circuit at position 1 forces cocircuits at 6..8 and 4..6
    assert M.is_cocircuit(bitset.mask_of([6, 7, 8]))
    assert M.is_cocircuit(bitset.mask_of([4, 5, 6]))


def test_adjacent_windows_rejects_boundary():
    with pytest.raises(ValueError):
        check_adjacent_windows(uniform(2, 5), natural_ordering(5), STParams(3, 4))


def test_window_structure_even_and_odd(psi_oracles):
    even = check_window_structure(psi_oracles[(12, 4)], natural_ordering(12), STParams(4, 4))
    assert even.ok
    odd = check_window_structure(psi_oracles[(8, 3)], natural_ordering(8), ST33)
    assert odd.ok
    # the odd case's shifted independent window, concretely
    assert psi_oracles[(8, 3)].indep(bitset.mask_of([2, 3, 4]))


def test_window_closure_examples(psi_oracles):
    M = psi_oracles[(8, 3)]
    o = natural_ordering(8)
    assert check_window_closure(M, o, ST33, 1, 2) == (True, True)
    assert M.in_closure(3, bitset.mask_of([1, 2]))
    assert not M.in_closure(4, bitset.mask_of([2, 3]))
    with pytest.raises(ValueError):
        check_window_closure(M, o, ST33, 1, 7)


def test_window_closure_sweep(psi_oracles):
    M = psi_oracles[(12, 4)]
    o = natural_ordering(12)
    p = STParams(4, 4)
    for i in range(1, 13):
        for k in range(3, 9):
            assert check_window_closure(M, o, p, i, k) == (True, True)


def test_window_rank_examples(psi_oracles):
    M = psi_oracles[(8, 3)]
    o = natural_ordering(8)
    # circuit phase start: floor((3+5-1)/2) = 3; off-phase: ceil = 4
    assert window_rank_prediction(M, o, ST33, 1, 5) == (3, 3)
    assert window_rank_prediction(M, o, ST33, 2, 5) == (4, 4)
    assert window_rank_prediction(M, o, ST33, 1, 2) == (2, 2)


def test_rank_formula(psi_oracles):
    assert check_rank_formula(psi_oracles[(12, 4)], STParams(4, 4))
    assert check_rank_formula(truncate(psi(10, 3), 1), STParams(3, 5))
    assert check_rank_formula(uniform(2, 5), STParams(3, 4))
    assert not check_rank_formula(uniform(2, 5), STParams(3, 3))


def test_full_from_odd_circuits(psi_oracles):
    cert = full_from_odd_circuits(psi_oracles[(8, 3)], natural_ordering(8), ST33)
    assert cert.full
    with pytest.raises(ValueError):
        full_from_odd_circuits(uniform(2, 5), natural_ordering(5), STParams(3, 4))


def test_unique_window_circuits(psi_oracles):
    for key, p in (((8, 3), ST33), ((12, 4), STParams(4, 4))):
        report = unique_window_circuits(psi_oracles[key], natural_ordering(key[0]), p)
        assert report.ok
    # below the bound the check is refused; U(2,4) indeed has two triangles per pair
    with pytest.raises(ValueError):
        unique_window_circuits(uniform(2, 4), natural_ordering(4), ST33)
    M = uniform(2, 4)
    window = bitset.mask_of([1, 2])
    count = sum(1 for e in (3, 4) if M.is_circuit(window | 1 << (e - 1)))
    assert count == 2


def test_random_matroid_certificate_invariants():
    import random

    from cycmat.suite import random_transversal

    rng = random.Random(3)
    for _ in range(12):
        M = random_transversal(rng, 7)
        order = list(range(1, 8))
        rng.shuffle(order)
        o = CyclicOrdering(tuple(order))
        for p in (ST33, STParams(3, 4)):
            cert = certify(M, o, p)
            assert not cert.full or cert.nearly
            for k in (1, 4):
                assert certify(M, o.rotated(k), p).kind == cert.kind
            assert certify(M, o.reversed_order(), p).kind == cert.kind


def test_wheel3_nearly_not_full_witness():
    # below the upgrade bounds a nearly ordering need not be full: with the
    # 3-spoke wheel, every 2-window of this order sits in a triangle and a
    # vertex star, yet the 3-window at position 3 is not a circuit
    M = wheel(3)
    witness = CyclicOrdering((1, 2, 3, 4, 6, 5))
    cert = certify(M, witness, ST33)
    assert cert.kind == "nearly"
    assert not M.is_circuit(bitset.mask_of([3, 4, 6]))
    report = upgrade_from_nearly(M, witness, ST33)
    assert report.ok and report.checked == 0  # vacuous: 6 < 8


def test_empirical_contrapositive_below_bounds():
    # every nearly-but-not-full instance found by search sits below a bound
    for M, p in ((wheel(3), ST33), (whirl(3), ST33)):
        for o in find_orderings(M, p, mode=NEARLY):
            if not certify(M, o, p).full:
                t1, t2 = p.t1, p.t2
                assert M.n < max(3 * t1 + t2 - 5, t1 + 2 * t2 - 1)


def test_upgrade_applies_above_bounds(psi_oracles):
    report = upgrade_from_nearly(psi_oracles[(8, 3)], natural_ordering(8), ST33)
    assert report.ok and report.checked == 1


def test_upgrade_vacuous_below_bounds():
    report = upgrade_from_nearly(whirl(3), natural_ordering(6), ST33)
    assert report.ok and report.checked == 0 and "vacuous" in report.note


def test_upgrade_rejects_small_parameters():
    with pytest.raises(ValueError):
        upgrade_from_nearly(uniform(1, 2), natural_ordering(2), STParams(2, 2))


def test_truncated_psi_full_at_3_5():
    T = truncate(psi(14, 3), 1)
    report = upgrade_from_nearly(T, natural_ordering(14), STParams(3, 5))
    # n = 14 >= max(3*3+5-5, 3+2*5-1) = 12: the upgrade truly applies
    assert report.ok and report.checked == 1
