import random

import pytest

from cycmat import bitset
from cycmat.core import GroundSet
from cycmat.transversal import (
    BipartitePresentation,
    MultiPathPresentation,
    brute_force_matching_size,
    classify_circuit,
    dual_transversal,
    interval_presentation,
    max_matching,
    psi,
    psi_basis_test,
    self_duality_map,
    transversal_matroid,
)


def hall_indep(pres, mask):
    """Quantifier form of dual independence: every J has |N(J) - X| >= |J|.

    An oracle independent of the augmenting-path code path.
    """
    m = pres.m
    for j_mask in range(1, 1 << m):
        lefts = bitset.indices(j_mask)
        union = pres.neighborhood_union(lefts)
        if (union & ~mask).bit_count() < len(lefts):
            return False
    return True


def test_interval_presentation_shape():
    pres = interval_presentation(8, 3)
    assert pres.m == 4
    assert pres.base.neighborhood(1) == bitset.mask_of([1, 2, 3])
    assert pres.base.neighborhood(4) == bitset.mask_of([7, 8, 1])
    assert pres.xs == (1, 3, 5, 7)


def test_interval_presentation_rejects_bad_params():
    for n, s in ((9, 3), (8, 1), (4, 4)):
        with pytest.raises(ValueError):
            interval_presentation(n, s)


def test_max_matching_complete():
    pres = interval_presentation(8, 3)
    result = max_matching(pres.base)
    assert result.size == 4
    assert result.complete


def test_max_matching_deficiency_witness():
    # avoiding N(1) entirely starves left vertex 1
    pres = interval_presentation(8, 3)
    result = max_matching(pres.base, avoid=bitset.mask_of([1, 2, 3]))
    assert result.size == 3
    assert result.witness == (1,)


def test_witness_certifies_deficiency():
    pres = interval_presentation(12, 4)
    rng = random.Random(5)
    for _ in range(120):
        avoid = rng.getrandbits(12)
        result = max_matching(pres.base, avoid)
        assert result.size == brute_force_matching_size(pres.base, avoid)
        if not result.complete:
            union = pres.base.neighborhood_union(result.witness)
            deficiency = len(result.witness) - (union & ~avoid).bit_count()
            # the extracted J attains the maximum deficiency
            assert deficiency == pres.m - result.size


def test_matching_pairs_respect_neighborhoods():
    pres = interval_presentation(10, 3)
    result = max_matching(pres.base, avoid=bitset.mask_of([2, 3]))
    for left, elem in result.pairs:
        assert pres.base.neighborhood(left) >> (elem - 1) & 1


def test_transversal_matroid_single_block():
    ground = GroundSet(5)
    pres = BipartitePresentation(ground, (ground.full,))
    M = transversal_matroid(pres)
    for mask in range(1 << 5):
        assert M.indep(mask) == (mask.bit_count() <= 1)


def test_transversal_matroid_disjoint_pairs():
    ground = GroundSet(6)
    pres = BipartitePresentation(
        ground, tuple(bitset.mask_of([2 * i + 1, 2 * i + 2]) for i in range(3))
    )
    M = transversal_matroid(pres)
    for mask in range(1 << 6):
        expected = all(
            (mask & bitset.mask_of([2 * i + 1, 2 * i + 2])).bit_count() <= 1 for i in range(3)
        )
        assert M.indep(mask) == expected


def test_dual_transversal_matches_hall_oracle():
    for n, s in ((8, 3), (10, 4)):
        pres = interval_presentation(n, s)
        M = dual_transversal(pres.base)
        for mask in range(1 << n):
            assert M.indep(mask) == hall_indep(pres.base, mask)


def test_dual_transversal_equals_generic_dual():
    pres = interval_presentation(8, 3)
    direct = dual_transversal(pres.base)
    generic = transversal_matroid(pres.base).dual()
    for mask in range(1 << 8):
        assert direct.indep(mask) == generic.indep(mask)


def test_psi_parameters_and_rank():
    assert psi(12, 4).rank() == 6
    assert psi(8, 3).rank() == 4
    with pytest.raises(ValueError):
        psi(9, 3)
    with pytest.raises(ValueError):
        psi(6, 5)  # 6 < 2*5 - 2


def test_smallest_psi_parameters_build():
    M = psi(4, 2)
    for mask in range(1 << 4):
        expected = (mask & 0b0011).bit_count() <= 1 and (mask & 0b1100).bit_count() <= 1
        assert M.indep(mask) == expected
    assert psi(4, 3).rank() == 2


def test_psi_s2_is_disjoint_pairs():
    M = psi(8, 2)
    for mask in range(1 << 8):
        expected = all(
            (mask & bitset.mask_of([2 * i + 1, 2 * i + 2])).bit_count() <= 1 for i in range(4)
        )
        assert M.indep(mask) == expected


def test_dependent_triple_in_psi83():
    M = psi(8, 3)
    assert not M.indep(bitset.mask_of([1, 2, 3]))
    pres = interval_presentation(8, 3)
    result = max_matching(pres.base, avoid=bitset.mask_of([1, 2, 3]))
    assert result.witness == (1,)


def test_augmented_two_block_starves_matching():
    # avoiding a two-block set plus a gap element leaves no complete matching
    pres = interval_presentation(12, 4)
    for avoid in (
        bitset.mask_of([1, 2, 3, 5, 6]),
        bitset.mask_of([1, 2, 4, 5, 6]),
        bitset.mask_of([1, 2, 3, 4, 5]),
    ):
        assert max_matching(pres.base, avoid).size < 6


def test_psi_basis_examples():
    assert psi_basis_test(8, 3, bitset.mask_of([1, 3, 5, 7]))
    assert not psi_basis_test(8, 3, bitset.mask_of([1, 2, 3, 5]))


def test_basis_characterization_agrees_with_matching(psi_oracles):
    for n, s in ((8, 3), (12, 4)):
        M = psi_oracles[(n, s)]
        half = n // 2
        for mask in range(1 << n):
            lhs = psi_basis_test(n, s, mask)
            rhs = mask.bit_count() == half and M.indep(mask)
            assert lhs == rhs


def test_self_duality_map_shape():
    assert self_duality_map(8, 4) == tuple(range(1, 9))
    assert self_duality_map(8, 3) == (2, 3, 4, 5, 6, 7, 8, 1)


def test_self_duality_on_circuits(psi_oracles):
    for n, s in ((8, 3), (8, 4), (10, 3), (12, 4), (12, 5)):
        M = psi_oracles[(n, s)]
        perm = self_duality_map(n, s)
        assert {bitset.permute(c, perm) for c in M.circuits()} == set(M.cocircuits().members)


def test_self_duality_basis_route(psi_oracles):
    # complement-then-unrotate carries bases to bases
    M = psi(10, 3)
    n = 10
    perm = self_duality_map(n, 3)
    inverse = tuple(sorted(range(1, n + 1), key=lambda i: perm[i - 1]))
    full = M.ground.full
    for mask in range(1 << n):
        if mask.bit_count() == 5 and M.indep(mask):
            image = bitset.permute(full & ~mask, inverse)
            assert M.indep(image) and image.bit_count() == 5


def test_classification_interval_example():
    pres = interval_presentation(8, 3)
    outcome = classify_circuit(pres, bitset.mask_of([1, 2, 3]))
    assert outcome.kind == "interval"
    assert (outcome.i, outcome.j) == (1, 1)


def test_classification_spanning_example():
    pres = interval_presentation(8, 3)
    M = dual_transversal(pres.base)
    five = [c for c in M.circuits() if c.bit_count() == 5]
    assert five
    for c in five:
        assert classify_circuit(pres, c).kind == "spanning"


def test_classification_rejects_non_circuit():
    pres = interval_presentation(8, 3)
    with pytest.raises(ValueError):
        classify_circuit(pres, bitset.mask_of([1, 2]))


def test_classification_total(psi_oracles):
    for n, s in ((8, 3), (12, 5)):
        pres = interval_presentation(n, s)
        M = psi_oracles[(n, s)]
        for circuit in M.circuits():
            assert classify_circuit(pres, circuit).ok


def test_circuit_size_dichotomy(psi_oracles):
    # circuits are spanning-size or interval-size s + k
    for n, s in ((8, 3), (12, 4)):
        M = psi_oracles[(n, s)]
        m = n // 2
        interval_sizes = {s + k for k in range(0, m - s + 1)}
        for c in M.circuits():
            assert c.bit_count() == n - m + 1 or c.bit_count() in interval_sizes


def test_multipath_validation_rejects_nested_intervals():
    ground = GroundSet(6)
    nbrs = (
        bitset.cyclic_interval(6, 1, 4),
        bitset.cyclic_interval(6, 2, 3),
    )
    with pytest.raises(ValueError):
        MultiPathPresentation(BipartitePresentation(ground, nbrs), (1, 2), (4, 3))


def test_multipath_run_union():
    pres = interval_presentation(8, 3)
    assert pres.run_union(1, 2) == bitset.cyclic_interval(8, 1, 5)
    assert pres.run_union(4, 1) == bitset.cyclic_interval(8, 7, 3)
    assert pres.run_length(4, 1) == 2
