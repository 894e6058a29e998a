import pytest

from akproj.catalog import (FAMILIES, PARAMETRIC, BadParameter, a_value, b_value, instantiate_pair,
                            m_l_value)
from akproj.obstruction import (LExceedsPMinusOne, ak_verdict, clearance, condition_one, criterion_check,
                                max_ak, projective_cells, reverify, x_cells)


def test_projective_cells():
    assert projective_cells(2, 2, 5).dims == (4, 8)
    assert projective_cells(4, 3, 5).dims == (8, 16, 24)
    assert projective_cells(2, 1, 7).dims == (4,)
    assert projective_cells(2, 0, 7).dims == ()
    with pytest.raises(LExceedsPMinusOne):
        projective_cells(2, 5, 5)


def test_x_cells_examples():
    assert x_cells(instantiate_pair("Spin8_G2", None, 11), 2, 11).max == 20
    e6 = x_cells(instantiate_pair("E6_F4", None, 23), 2, 23)
    assert e6.dims == (10, 14, 18, 20, 22, 26, 28, 30, 34, 36, 42)


def test_clearance_examples():
    sp = instantiate_pair("Spin8_G2", None, 11)
    assert clearance(sp.G, x_cells(sp, 2, 11), 11) == (True, [])
    sp7 = instantiate_pair("Spin8_G2", None, 7)
    assert clearance(sp7.G, x_cells(sp7, 2, 7), 7) == (False, [16, 20])
    e6 = instantiate_pair("E6_F4", None, 19)
    ok, _ = clearance(e6.G, x_cells(e6, 2, 19), 19)
    assert ok


def _pairs(nmax=8):
    for fam in FAMILIES:
        for n in (range(1, nmax + 1) if fam in PARAMETRIC else [None]):
            try:
                m_l_value(fam, n)
            except BadParameter:
                continue
            if fam == "SU_Sp" and n == 1:
                continue
            yield fam, n


def test_clearance_iff_b_k():
    for fam, n in _pairs(5):
        for k in (2, 3):
            b = b_value(fam, n, k)
            for p in (q for q in range(k + 1, b + 8) if all(q % d for d in range(2, q)) and q > 2):
                try:
                    pr = instantiate_pair(fam, n, p)
                except ValueError:
                    continue
                ok, _ = clearance(pr.G, x_cells(pr, k, p), p)
                e6_extra = fam == "E6_F4" and p == 12 * k - 5
                assert ok == (p >= b or e6_extra), (fam, n, k, p)


def test_criterion_witness_su_so():
    v = criterion_check(instantiate_pair("SU_SO", 3, 13), 13, 2)
    assert v.obstructed
    assert (v.m_k, v.witness_str(), str(v.ideal)) == (2, "6*c7^2", "(c2)")
    reverify(v)


def test_criterion_witness_spin8():
    v = criterion_check(instantiate_pair("Spin8_G2", None, 7), 7, 2)
    assert v.obstructed
    assert (v.m_k, v.witness_str(), str(v.ideal)) == (2, "4*p2^2", "(p1)")
    reverify(v)


def test_criterion_inconclusive_above_threshold():
    assert criterion_check(instantiate_pair("SU_SO", 3, 17), 17, 2).status == "inconclusive"


def test_condition_one_rejects_type_sum():
    G = instantiate_pair("SU_SO", 3, 13).G
    A = G.algebra
    # c2^2: the second factor has type 2, not above m_k = 2
    assert not condition_one(G, A.parse_monomial("c2^2"), 2)
    # c4*c3 at m_k = 3: 3 - 3 = 0 is no type sum, and 4 > 3
    assert condition_one(G, A.parse_monomial("c4*c3"), 3)
    # c3*c7 at m_k = 5: 5 - 3 = 2 is a type
    assert not condition_one(G, A.parse_monomial("c7*c3"), 5)
    assert condition_one(G, A.parse_monomial("c7^2"), 2)


def test_verdict_examples():
    v = ak_verdict(instantiate_pair("SU_SO", 3, 17), 17, 2)
    assert v.status == "is_Ak"
    assert ak_verdict(instantiate_pair("SO_even", 5, 11), 11, 2).status == "unknown"
    v2 = ak_verdict(instantiate_pair("Spin8_G2", None, 2), 2, 2)
    assert v2.status == "not_Ak"
    assert ("cited fact", v2.pair.fact_for(2, 2).citation) in v2.reasons


def test_e6_special_extension():
    v = ak_verdict(instantiate_pair("E6_F4", None, 19), 19, 2)
    assert v.status == "is_Ak"


def _odd_primes(hi):
    return [q for q in range(3, hi) if all(q % d for d in range(2, q))]


@pytest.mark.parametrize("fam,n", [f for f in _pairs(4) if f[0] != "SO_even"])
def test_verdict_matches_threshold_and_downward_closed(fam, n):
    for p in _odd_primes(a_value(fam, n, 4) + 2):
        try:
            pr = instantiate_pair(fam, n, p)
        except ValueError:
            continue
        statuses = [ak_verdict(pr, p, k, run_criterion=False).status for k in range(2, 5)]
        for k, s in zip(range(2, 5), statuses):
            assert s == ("is_Ak" if p >= pr.a(k) else "not_Ak")
        # is_Ak at k forces is_Ak below k
        for j in range(len(statuses)):
            if statuses[j] == "is_Ak":
                assert all(s == "is_Ak" for s in statuses[:j])
        assert max_ak(pr, p) >= 1


def test_so_even_gap():
    for n in range(4, 7):
        for p in _odd_primes(40):
            pr = instantiate_pair("SO_even", n, p)
            a = pr.a(2)
            s = ak_verdict(pr, p, 2, run_criterion=False).status
            if p >= a:
                assert s == "is_Ak"
            elif p < a - n + 2:
                assert s == "not_Ak"
            else:
                assert s == "unknown"


@pytest.mark.parametrize("fam,n", [("SU_SO", 1), ("SU_SO", 2), ("SU_SO", 3), ("SU_Sp", 2), ("SU_Sp", 3),
                                   ("Spin8_G2", None)])
def test_criterion_consistent_with_verdict(fam, n):
    for k in (2, 3):
        for p in _odd_primes(a_value(fam, n, k + 1)):
            try:
                pr = instantiate_pair(fam, n, p)
            except ValueError:
                continue
            if not pr.has_cohomology or k > p - 1:
                continue
            c = criterion_check(pr, p, k)
            v = ak_verdict(pr, p, k, run_criterion=False)
            if c.obstructed:
                assert v.status == "not_Ak"
                reverify(c)
            if v.status == "is_Ak":
                assert not c.obstructed
