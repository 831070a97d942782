import random

import pytest

from refsev.graphs import (
    LongEdgeGraph,
    count_orderings,
    count_orderings_bruteforce,
    enumerate_graphs,
    enumerate_templates,
    eval_phi_linear,
    fit_phi_linear,
    phi,
    phi_bruteforce,
    q_log_count,
    refined_count,
    s_beta,
)
from refsev.qseries import QSeries
from refsev.rationals import QQ
from refsev.ylaurent import YLaurent, YL_ZERO

random.seed(1759)


# -- construction and enumeration ---------------------------------------------


def test_short_edges_forbidden():
    with pytest.raises(ValueError):
        LongEdgeGraph([(0, 1, 1)])


def test_enumerate_cogenus_zero():
    assert enumerate_graphs(0, 5) == [LongEdgeGraph([])]


def test_enumerate_cogenus_one():
    got = set(enumerate_graphs(1, 2))
    expect = {
        LongEdgeGraph([(0, 1, 2)]),
        LongEdgeGraph([(0, 2, 1)]),
        LongEdgeGraph([(1, 2, 2)]),
    }
    assert got == expect  # the shift (0,1,2) -> (1,2,2) is a distinct graph


def _naive_enumerate(delta, maxv):
    """Independent oracle: nested loops over bounded edge tuples."""
    types = [
        (i, j, w)
        for i in range(maxv)
        for j in range(i + 1, maxv + 1)
        for w in range(1, delta + 2)
        if (j - i) * w - 1 <= delta and not (j == i + 1 and w == 1)
    ]
    seen = set()

    def rec(start, rem, acc):
        if rem == 0:
            seen.add(tuple(sorted(acc)))
            return
        for t in range(start, len(types)):
            e = types[t]
            x = (e[1] - e[0]) * e[2] - 1
            if 1 <= x <= rem:
                rec(t, rem - x, acc + [e])

    rec(0, delta, [])
    return seen


@pytest.mark.parametrize("delta", [1, 2, 3])
def test_enumeration_matches_naive_oracle(delta):
    got = {G.edges for G in enumerate_graphs(delta, 4)}
    assert got == _naive_enumerate(delta, 4)
    assert all(G.cogenus() == delta for G in enumerate_graphs(delta, 4))


def test_templates_are_spanned():
    for delta in (1, 2, 3):
        for T in enumerate_templates(delta):
            assert T.minv() == 0
            assert T.is_template()


# -- multiplicities -------------------------------------------------------------


def test_multiplicity_empty():
    G = LongEdgeGraph([])
    assert G.multiplicity("refined").is_one()
    assert G.multiplicity("severi") == 1
    assert G.multiplicity("welschinger") == 1


def test_multiplicity_single_weight_two():
    G = LongEdgeGraph([(0, 1, 2)])
    assert G.multiplicity("refined") == YLaurent({2: 1, 0: 2, -2: 1})
    assert G.multiplicity("severi") == 4
    assert G.multiplicity("welschinger") == 0


def test_multiplicity_specializations_agree():
    for G in enumerate_graphs(3, 3):
        m = G.multiplicity("refined")
        assert m.at_one() == G.multiplicity("severi")
        assert m.at_minus_one() == G.multiplicity("welschinger")


# -- ordering counts --------------------------------------------------------------


def test_orderings_empty_graph():
    assert count_orderings(LongEdgeGraph([]), (3, 1, 4)) == 1


def test_orderings_single_long_edge():
    # one edge (0 -> 2, w=1) with beta = (1,1): the orderings (0 e 1 2), (0 1 e 2)
    G = LongEdgeGraph([(0, 2, 1)])
    assert count_orderings(G, (1, 1)) == 2


def test_orderings_zero_when_not_allowable():
    G = LongEdgeGraph([(0, 2, 3)])
    assert not G.beta_allowable((1, 1))
    assert count_orderings(G, (1, 1)) == 0


@pytest.mark.parametrize("delta", [1, 2, 3])
def test_orderings_match_bruteforce(delta):
    betas = [(2, 2, 2), (3, 1, 2), (4, 4), (1, 3, 2), (5, 0, 2), (2, 4, 6)]
    for G in enumerate_graphs(delta, 3):
        for beta in betas:
            for strict in (False, True):
                assert count_orderings(G, beta, strict) == \
                    count_orderings_bruteforce(G, beta, strict), (G, beta, strict)


# -- the log transform ---------------------------------------------------------------


def test_phi_single_edge_equals_p():
    G = LongEdgeGraph([(0, 1, 2)])
    assert phi(G, (4,)) == QQ(count_orderings(G, (4,)))


def test_phi_two_identical_edges():
    # ordered multiset decompositions: Phi = P(G) - P({e})^2 / 2
    G = LongEdgeGraph([(0, 2, 1), (0, 2, 1)])
    e = LongEdgeGraph([(0, 2, 1)])
    b = (3, 3)
    assert phi(G, b) == QQ(count_orderings(G, b)) - QQ(count_orderings(e, b)) ** 2 / 2


@pytest.mark.parametrize("delta", [1, 2])
def test_phi_matches_literal_partition_sum(delta):
    for G in enumerate_graphs(delta, 3):
        for beta in [(2, 2, 2), (3, 1, 2), (4, 4)]:
            for strict in (False, True):
                assert phi(G, beta, strict) == phi_bruteforce(G, beta, strict)


def test_phi_strict_vanishes_off_shifted_templates():
    beta = (3, 4, 5, 6)
    for delta in (1, 2, 3):
        for G in enumerate_graphs(delta, len(beta)):
            if not G.shift(-G.minv()).is_template():
                assert phi(G, beta, strict=True) == 0


def test_phi_strict_bracketing():
    # Phi^s(T_(k)) equals Phi(T_(k)) exactly for 1-eps0 <= k <= M+eps1-l
    beta = (3, 4, 5, 6)
    M = len(beta) - 1
    for delta in (1, 2, 3):
        for T in enumerate_templates(delta):
            l, e0, e1 = T.length(), T.eps0(), T.eps1()
            for k in range(0, M + 2):
                G = T.shift(k)
                if G.maxv() > M + 1:
                    continue
                strict_val = phi(G, beta, strict=True)
                if (1 - e0) <= k <= (M + e1 - l):
                    assert strict_val == phi(G, beta)
                else:
                    assert strict_val == 0


# -- counts ---------------------------------------------------------------------------


def test_refined_count_cogenus_zero():
    assert refined_count(s_beta(0, 1, 3), 0).is_one()


def test_severi_twelve():
    assert refined_count(s_beta(0, 1, 3), 1, "severi") == 12


def test_refined_d3_delta1():
    N = refined_count(s_beta(0, 1, 3), 1)
    assert N == YLaurent({2: 1, 0: 10, -2: 1})
    assert N.at_one() == 12
    assert N.at_minus_one() == 8


def test_welschinger_is_specialization():
    for (c, m, d) in [(0, 1, 3), (1, 1, 3), (0, 2, 2), (2, 0, 3)]:
        for delta in (1, 2, 3):
            N = refined_count(s_beta(c, m, d), delta)
            W = refined_count(s_beta(c, m, d), delta, "welschinger")
            assert N.at_minus_one() == W
            assert N.at_one() == refined_count(s_beta(c, m, d), delta, "severi")


def test_refined_counts_palindromic_nonnegative():
    for (c, m, d) in [(0, 1, 4), (2, 1, 3), (1, 2, 3)]:
        for delta in range(4):
            N = refined_count(s_beta(c, m, d), delta)
            assert N.is_palindromic()
            assert N.is_integral()
            assert all(v >= 0 and v.denominator == 1 for v in N.terms.values())


def test_qlog_first_order_is_count():
    for d in (2, 3, 4):
        beta = s_beta(0, 1, d)
        assert q_log_count(beta, 1) == refined_count(beta, 1)


@pytest.mark.parametrize("args", [(1, 1, 4), (0, 1, 4), (2, 2, 3), (3, 0, 3)])
def test_qlog_equals_series_log(args):
    beta = s_beta(*args)
    Ns = [refined_count(beta, delta) for delta in range(5)]
    logN = QSeries(Ns, trunc=5).log()
    for delta in (1, 2, 3, 4):
        assert q_log_count(beta, delta) == logN.coeff_at(delta)


def test_qlog_degree_two_in_d():
    # fitted on d = delta..delta+2, predicts d = delta+3..delta+5
    from refsev.linalg import solve_exact_vec
    for delta in (1, 2):
        samples = {d: q_log_count(s_beta(0, 1, d), delta)
                   for d in range(delta, delta + 6)}
        A = [[QQ(1), QQ(d), QQ(d * d)] for d in range(delta, delta + 3)]
        rhs = [samples[d] for d in range(delta, delta + 3)]
        c0, c1, c2 = solve_exact_vec(A, rhs)
        for d in range(delta + 3, delta + 6):
            pred = c0 + c1.scale(d) + c2.scale(d * d)
            assert pred == samples[d]


# -- linearity ---------------------------------------------------------------------------


def test_phi_linear_single_edge_window():
    T = LongEdgeGraph([(0, 1, 2)])
    form = fit_phi_linear(T, [(1, 9, 9), (2, 9, 9), (5, 9, 9), (3, 1, 1)])
    const, coeffs = form
    assert const == -1 and coeffs[0] == 1 and coeffs[1] == 0


def test_phi_linear_empty_graph():
    const, coeffs = fit_phi_linear(LongEdgeGraph([]), [(1, 2), (3, 4)])
    assert const == 0 and not coeffs


def test_phi_linear_held_out():
    for delta in (1, 2, 3):
        for T in enumerate_templates(delta):
            base = [T.lambda_bar_j(j + 1) for j in range(T.maxv() + 2)]
            probes = []
            while len(probes) < 22:
                b = tuple(x + random.randint(0, 6) for x in base)
                if T.beta_semiallowable(b):
                    probes.append(b)
            form = fit_phi_linear(T, probes[:12])
            for b in probes[12:]:
                assert eval_phi_linear(form, b) == phi(T, b)


def test_phi_linear_rank_deficiency_detected():
    T = LongEdgeGraph([(0, 1, 2)])
    with pytest.raises(ValueError):
        fit_phi_linear(T, [(3, 9), (3, 9), (3, 9)])
