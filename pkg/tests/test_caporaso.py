import itertools

import pytest

from refsev.caporaso import (
    CHTable,
    P2,
    P11m,
    Sigma,
    canon_seq,
    iseq,
    relative_degree,
    severi_degree,
    welschinger_degree,
)
from refsev.floor_diagrams import floor_diagram_count
from refsev.graphs import refined_count, s_beta
from refsev.ylaurent import YLaurent


def test_initial_condition_line(chtable):
    assert relative_degree(P2(1), 0, (1,), (), table=chtable).is_one()


def test_cubic_twelve(chtable):
    v = relative_degree(P2(3), 1, (), (3,), table=chtable)
    assert v.at_one() == 12
    assert v == floor_diagram_count(0, 1, 3, 1)


def test_rational_degrees_all_one(chtable):
    for d in range(1, 7):
        assert severi_degree(P2(d), 0, table=chtable).is_one()
        assert refined_count(s_beta(0, 1, d), 0).is_one()


def test_sequence_mismatch_rejected(chtable):
    with pytest.raises(ValueError):
        relative_degree(P2(3), 0, (1,), (1,), table=chtable)


def test_strict_flags_negative_gamma(chtable):
    # d = 1, delta huge: gamma < 0
    with pytest.raises(ValueError):
        relative_degree(P2(1), 9, (), (1,), table=chtable, strict=True)
    assert relative_degree(P2(1), 9, (), (1,), table=chtable).is_zero()


def test_bundle_invariants():
    b = Sigma(2, 1, 3)
    assert b.HL == 7
    assert b.dim_L == (3 + 1) * (1 + 1) + 2 * 3 * 4 // 2 - 1
    assert b.L2 == 2 * 1 * 3 + 2 * 9
    assert b.LK == -(2 * 1 + 4 * 3)
    assert b.chi_L - b.chi_O == b.qexp
    p = P2(4)
    assert (p.dim_L, p.HL, p.L2, p.LK, p.K2) == (14, 4, 16, -12, 9)


def test_dim_formulas():
    # dim|L|(P2, d) = d(d+3)/2; dim|L|(Sigma_m) = (d+1)(c+1) + m d(d+1)/2 - 1
    for d in range(1, 7):
        assert P2(d).dim_L == d * (d + 3) // 2
    for (m, c, d) in itertools.product(range(3), range(3), range(1, 4)):
        assert Sigma(m, c, d).dim_L == (d + 1) * (c + 1) + m * d * (d + 1) // 2 - 1


def test_p11m_equals_sigma_with_c_zero(chtable):
    for m in (1, 2, 3):
        for d in (1, 2, 3):
            for delta in (0, 1, 2):
                assert severi_degree(P11m(m, d), delta, table=chtable) == \
                    severi_degree(Sigma(m, 0, d), delta, table=chtable)


def test_cross_engine_spot_grid(chtable):
    for (m, c, d) in [(0, 2, 3), (1, 1, 3), (2, 0, 3), (3, 2, 2), (1, 3, 2)]:
        for delta in range(4):
            assert severi_degree(Sigma(m, c, d), delta, table=chtable) == \
                refined_count(s_beta(c, m, d), delta)


def test_integer_fast_paths_match_specialization(chtable):
    for d in (3, 4, 5):
        for delta in (1, 2, 3):
            N = severi_degree(P2(d), delta, table=chtable)
            assert severi_degree(P2(d), delta, y=1, table=chtable) == N.at_one()
            assert welschinger_degree(P2(d), delta, table=chtable) == N.at_minus_one()


def test_relative_memo_values_palindromic_nonnegative(chtable):
    severi_degree(Sigma(2, 1, 3), 2, table=chtable)
    checked = 0
    for key, val in chtable.memo["sym"].items():
        if val.is_zero():
            continue
        assert val.is_palindromic(), key
        assert all(v > 0 and v.denominator == 1 for v in val.terms.values()), key
        checked += 1
    assert checked > 50


def test_determinism_cold_table(chtable):
    fresh = CHTable()
    for delta in range(3):
        a = severi_degree(Sigma(1, 2, 3), delta, table=fresh)
        b = severi_degree(Sigma(1, 2, 3), delta, table=chtable)
        assert a == b


def test_canon_seq():
    assert canon_seq((1, 0, 2, 0, 0)) == (1, 0, 2)
    assert canon_seq([0, 0]) == ()
    assert iseq((2, 0, 1)) == 2 + 3
    with pytest.raises(ValueError):
        canon_seq((1, -1))


def test_welschinger_known_values(chtable):
    # W^{3,1} = 8 and W^{4,1} = 2*N^{4,1}(-1) sanity via both engines
    assert welschinger_degree(P2(3), 1, table=chtable) == 8
    assert welschinger_degree(P2(4), 1, table=chtable) == \
        refined_count(s_beta(0, 1, 4), 1, "welschinger")
