"""Tests for the decomposition-atom lattice and its duality."""

from itertools import combinations

import numpy as np
import pytest

from entroconj import (
    JointDistribution,
    MonotoneBooleanFunction,
    antichain_to_bf,
    bf_to_antichain,
    cmi_atom_set,
    dual,
    enumerate_atoms,
    pid_conjugate_check,
    reference_pid,
    verify_theorem1_sets,
)
from entroconj.pid import atom_leq

from helpers import copy_triple, random_distribution, xor_triple

TOL = 1e-9


def brute_force_atoms(n: int) -> set[int]:
    """Oracle: scan every truth table for monotone nonconstant ones."""
    size = 1 << n
    found = set()
    for bits in range(1, (1 << size) - 1):
        ok = True
        for mask in range(size):
            for b in range(n):
                if (mask >> b) & 1 and (bits >> (mask ^ (1 << b))) & 1 > (bits >> mask) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.add(bits)
    return found


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def test_atom_counts():
    assert len(enumerate_atoms(1)) == 1
    assert len(enumerate_atoms(2)) == 4
    assert len(enumerate_atoms(3)) == 18
    assert len(enumerate_atoms(4)) == 166


def test_atom_count_n5():
    assert len(enumerate_atoms(5)) == 7579


def test_enumeration_matches_brute_force():
    for n in (1, 2, 3):
        assert {f.bits for f in enumerate_atoms(n)} == brute_force_atoms(n)


def test_enumeration_is_sorted_and_deduplicated():
    atoms = enumerate_atoms(3)
    tables = [f.table() for f in atoms]
    assert tables == sorted(tables)
    assert len(set(tables)) == len(tables)


def test_enumeration_range_check():
    with pytest.raises(ValueError):
        enumerate_atoms(0)
    with pytest.raises(ValueError):
        enumerate_atoms(6)


def test_invalid_tables_rejected():
    with pytest.raises(ValueError):
        MonotoneBooleanFunction(2, 0)  # constant 0
    with pytest.raises(ValueError):
        MonotoneBooleanFunction(2, 0b1111)  # constant 1
    with pytest.raises(ValueError):
        MonotoneBooleanFunction(2, 0b0100)  # f({2})=1 but f({1,2})=0


# ---------------------------------------------------------------------------
# antichain isomorphism
# ---------------------------------------------------------------------------


def test_synergy_antichain_table():
    f = antichain_to_bf([[1, 2]], 2)
    assert f.table() == "0001"


def test_full_redundancy_has_singleton_antichain():
    n = 3
    bits = sum(1 << m for m in range(1, 1 << n))  # ones everywhere but the empty set
    f = MonotoneBooleanFunction(n, bits)
    assert bf_to_antichain(f) == ((1,), (2,), (3,))


def test_antichain_round_trip_exhaustive():
    for n in (1, 2, 3, 4):
        for f in enumerate_atoms(n):
            assert antichain_to_bf(bf_to_antichain(f), n) == f


def test_antichain_validation():
    with pytest.raises(ValueError):
        antichain_to_bf([], 2)
    with pytest.raises(ValueError):
        antichain_to_bf([[]], 2)
    with pytest.raises(ValueError):
        antichain_to_bf([[1], [1, 2]], 2)  # nested members


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------


def test_dual_worked_examples():
    f = antichain_to_bf([[1, 2]], 2)
    assert bf_to_antichain(dual(f)) == ((1,), (2,))
    g = antichain_to_bf([[1, 2], [1, 3]], 3)
    assert bf_to_antichain(dual(g)) == ((1,), (2, 3))
    unique = antichain_to_bf([[1]], 2)
    assert dual(unique) == unique


def test_dual_is_order_reversing_involution():
    for n in (2, 3, 4):
        atoms = enumerate_atoms(n)
        for f in atoms:
            assert dual(dual(f)) == f
        for f, g in combinations(atoms, 2):
            assert atom_leq(f, g) == atom_leq(dual(g), dual(f))


# ---------------------------------------------------------------------------
# conditional-MI atom sets and the duality identity
# ---------------------------------------------------------------------------


def test_cmi_atom_set_full_information():
    assert set(cmi_atom_set(2, [1, 2])) == set(enumerate_atoms(2))


def test_cmi_atom_set_conditional_pair():
    atoms = cmi_atom_set(2, [1], [2])
    expected = {antichain_to_bf([[1]], 2), antichain_to_bf([[1, 2]], 2)}
    assert set(atoms) == expected


def test_cmi_atom_set_single_source():
    assert len(cmi_atom_set(1, [1])) == 1


def test_cmi_atom_set_rejects_overlap():
    with pytest.raises(ValueError):
        cmi_atom_set(2, [1], [1])
    with pytest.raises(ValueError):
        cmi_atom_set(2, [])


def test_theorem1_sets_pairwise():
    assert verify_theorem1_sets(2, [1], [2])


def test_theorem1_sets_exhaustive():
    for n in (2, 3, 4):
        for amask in range(1, 1 << n):
            a = [i + 1 for i in range(n) if (amask >> i) & 1]
            rest = [i + 1 for i in range(n) if not (amask >> i) & 1]
            for r in range(len(rest) + 1):
                for b in combinations(rest, r):
                    assert verify_theorem1_sets(n, a, b), (n, a, b)


# ---------------------------------------------------------------------------
# reference decomposition
# ---------------------------------------------------------------------------


def _values_by_antichain(dist):
    return {bf_to_antichain(f): v for f, v in reference_pid(dist).items()}


def test_xor_is_pure_synergy():
    values = _values_by_antichain(xor_triple())
    assert values[((1, 2),)] == pytest.approx(1.0, abs=TOL)
    for antichain, v in values.items():
        if antichain != ((1, 2),):
            assert v == pytest.approx(0.0, abs=TOL)


def test_copy_is_pure_redundancy():
    values = _values_by_antichain(copy_triple())
    assert values[((1,), (2,))] == pytest.approx(1.0, abs=TOL)
    for antichain, v in values.items():
        if antichain != ((1,), (2,)):
            assert v == pytest.approx(0.0, abs=TOL)


def test_independent_target_gives_zero_atoms():
    rng = np.random.default_rng(3)
    source = rng.random((2, 2))
    source /= source.sum()
    pmf = np.multiply.outer(source, np.array([0.5, 0.5]))
    for v in reference_pid(JointDistribution(pmf)).values():
        assert v == pytest.approx(0.0, abs=TOL)


def test_degenerate_target_gives_zero_atoms():
    d = JointDistribution.from_pmf({(0, 0, 0): 0.5, (1, 1, 0): 0.5})
    for v in reference_pid(d).values():
        assert v == pytest.approx(0.0, abs=TOL)


def test_reference_pid_rejects_many_sources():
    with pytest.raises(ValueError):
        reference_pid(JointDistribution(np.full((2,) * 5, 1 / 32)))


def test_cumulative_sums_rebuild_every_mi():
    rng = np.random.default_rng(21)
    for _ in range(30):
        nsources = int(rng.integers(2, 4))
        d = random_distribution(rng, rng.integers(2, 3, size=nsources + 1))
        values = reference_pid(d)
        for mask in range(1, 1 << nsources):
            members = [i + 1 for i in range(nsources) if (mask >> i) & 1]
            total = sum(v for f, v in values.items() if f.value(mask))
            expected = d.conditional_mutual_information(members, (nsources + 1,))
            assert total == pytest.approx(expected, abs=TOL)


# ---------------------------------------------------------------------------
# the conjugation check
# ---------------------------------------------------------------------------


def test_conjugate_check_on_xor():
    lhs, rhs = pid_conjugate_check(xor_triple(), [1])
    assert lhs == pytest.approx(1.0, abs=TOL)
    assert rhs == pytest.approx(1.0, abs=TOL)


def test_conjugate_check_on_copy():
    lhs, rhs = pid_conjugate_check(copy_triple(), [1])
    assert lhs == pytest.approx(0.0, abs=TOL)
    assert rhs == pytest.approx(0.0, abs=TOL)


def test_conjugate_check_agrees_on_random_distributions():
    rng = np.random.default_rng(22)
    for _ in range(20):
        nsources = int(rng.integers(2, 4))
        d = random_distribution(rng, rng.integers(2, 3, size=nsources + 1))
        for amask in range(1, 1 << nsources):
            a = [i + 1 for i in range(nsources) if (amask >> i) & 1]
            rest = [i + 1 for i in range(nsources) if not (amask >> i) & 1]
            for r in range(len(rest) + 1):
                for b in combinations(rest, r):
                    lhs, rhs = pid_conjugate_check(d, a, b)
                    assert lhs == pytest.approx(rhs, abs=TOL)


def test_redundancy_minus_synergy_flips_under_duality():
    # the dual of (redundancy - synergy) is (synergy - redundancy)
    red = antichain_to_bf([[1], [2]], 2)
    syn = antichain_to_bf([[1, 2]], 2)
    for d in (xor_triple(), copy_triple()):
        values = reference_pid(d)
        balance = values[red] - values[syn]
        dual_balance = values[dual(red)] - values[dual(syn)]
        assert dual_balance == pytest.approx(-balance, abs=TOL)
