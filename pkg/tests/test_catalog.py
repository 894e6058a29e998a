from collections import Counter

import pytest
from hypothesis import given, strategies as st

from akproj import catalog
from akproj.catalog import (FAMILIES, PARAMETRIC, BadParameter, ExcludedPair, UnsupportedPrime, a_value, b_value,
                            check_generator_hypothesis, instantiate_group, instantiate_pair, m_l_value)


def test_group_examples():
    su7 = instantiate_group("SU", 7, 5)
    assert su7.algebra.names == tuple(f"c{i}" for i in range(2, 8))
    assert su7.type_sequence == (2, 3, 4, 5, 6, 7)
    so8 = instantiate_group("SO_even", 4, 7)
    assert set(so8.algebra.names) == {"p1", "p2", "p3", "e4"}
    assert so8.type_sequence == (2, 4, 4, 6)
    e6 = instantiate_group("E6", None, 7)
    assert e6.algebra.names == ("x4", "x10", "x12", "x16", "x18", "x24")


def test_p_regularity():
    assert instantiate_group("SU", 7, 11).p_regular
    assert not instantiate_group("SU", 7, 7).p_regular


def test_exceptional_needs_p_above_5():
    with pytest.raises(UnsupportedPrime):
        instantiate_group("E8", None, 5)


def test_pair_examples():
    pr = instantiate_pair("SU_SO", 3, 13)
    assert (pr.G.name, pr.H.name) == ("SU(7)", "SO(7)")
    assert pr.m_l == (7, 7)
    assert pr.quotient_types == (3, 5, 7)
    e = instantiate_pair("E6_F4", None, 11)
    assert e.m_l == (12, 9) and e.quotient_types == (5, 9)
    s = instantiate_pair("Spin8_G2", None, 2)
    assert not s.has_cohomology and s.fact_for(2, 2) is not None


def test_excluded_pair():
    with pytest.raises(ExcludedPair):
        instantiate_pair("SU_Sp", 1, 5)


def test_threshold_examples():
    assert a_value("E6_F4", None, 2) == 19
    assert a_value("Spin8_G2", None, 3) == 16
    assert a_value("SO_even", 5, 2) == 13
    assert b_value("E6_F4", None, 2) == 21
    assert b_value("SU_SO", 3, 2) == 14
    assert b_value("Spin8_G2", None, 2) == 10


def _params(fam):
    return [None] if fam not in PARAMETRIC else [n for n in range(1, 9) if _ok(fam, n)]


def _ok(fam, n):
    try:
        m_l_value(fam, n)
        return True
    except BadParameter:
        return False


@pytest.mark.parametrize("fam", FAMILIES)
def test_a_equals_b_except_e6(fam):
    for n in _params(fam):
        for k in range(2, 7):
            shift = 2 if fam == "E6_F4" else 0
            assert a_value(fam, n, k) == b_value(fam, n, k) - shift


@given(st.sampled_from(FAMILIES), st.integers(1, 8), st.integers(1, 10))
def test_a_strictly_increasing(fam, n, k):
    n = None if fam not in PARAMETRIC else n
    if not _ok(fam, n):
        return
    assert a_value(fam, n, k + 1) > a_value(fam, n, k)


def _classical():
    for fam in PARAMETRIC:
        for n in range(1, 7):
            if _ok(fam, n) and not (fam == "SU_Sp" and n == 1):
                yield fam, n


@pytest.mark.parametrize("fam,n", list(_classical()))
def test_type_partition(fam, n):
    pr = instantiate_pair(fam, n, 7)
    assert Counter(pr.G.type_sequence) == Counter(pr.H.type_sequence) + Counter(pr.quotient_types)


@pytest.mark.parametrize("fam,n", list(_classical()) + [("E6_F4", None), ("Spin8_G2", None)])
def test_generator_hypothesis(fam, n):
    assert check_generator_hypothesis(instantiate_pair(fam, n, 13))


def test_types_match_degrees():
    for fam, n in _classical():
        G = instantiate_pair(fam, n, 11).G
        assert sorted(d // 2 for d in G.algebra.degrees) == sorted(G.type_sequence)


def test_citations_present():
    assert all(isinstance(v, str) and v for v in catalog.CITE.values())
