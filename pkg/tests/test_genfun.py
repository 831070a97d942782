import random

import pytest

from refsev.caporaso import P2, Sigma, severi_degree
from refsev.genfun import Invariants, base_series, reform_eval, solve_universal_B
from refsev.modular import b_series, b_bar_series
from refsev.qseries import QSeries
from refsev.rationals import QQ
from refsev.ylaurent import YLaurent

random.seed(404)


def rand_unit(trunc):
    coeffs = [YLaurent.const(1)]
    for _ in range(trunc - 1):
        coeffs.append(
            YLaurent({k: QQ(random.randint(-2, 2)) for k in (-1, 0, 1)})
        )
    return QSeries(coeffs, trunc=trunc)


def test_three_forms_agree_on_toy_data():
    # the equivalence of the three formulas is constructive: check it on
    # random small R with toy intersection numbers
    for _ in range(3):
        R = rand_unit(8)
        B1, B2 = rand_unit(8), rand_unit(8)
        inv = Invariants(K2=2, LK=-3, chi_L=5, chi_O=1)
        f1 = reform_eval(inv, B1, B2, form=1, order=6, R=R)
        S = reform_eval(inv, B1, B2, form=2, order=4, R=R)
        # assemble sum_delta M^delta P^delta from the form-2 coefficients
        dg, _, _ = base_series(6)
        acc = QSeries.zero(6)
        powers = QSeries.one(6)
        for delta in range(5):
            acc = acc + powers.scale(S.coeff_at(delta))
            powers = (powers * dg).truncate(6)
        assert acc.agrees_with(f1.truncate(5))
        for delta in range(4):
            f3 = reform_eval(inv, B1, B2, form=3, order=delta, R=R)
            assert f3 == S.coeff_at(delta), delta


def test_form3_is_plane_curve_identity(chtable):
    # with R = 1 and P^2 invariants, form 3 is the node-polynomial formula,
    # valid for delta <= 2d - 2
    B1, B2 = b_series(1, 18), b_series(2, 18)
    for d in (2, 3):
        inv = Invariants.of(P2(d))
        for delta in range(2 * d - 1):
            got = reform_eval(inv, B1, B2, form=3, order=delta)
            assert got == severi_degree(P2(d), delta, table=chtable)


def test_form2_matches_engines(chtable):
    B1, B2 = b_series(1, 18), b_series(2, 18)
    for bundle in (P2(5), Sigma(0, 5, 5), Sigma(1, 4, 4)):
        S = reform_eval(Invariants.of(bundle), B1, B2, form=2, order=4)
        for delta in range(5):
            assert S.coeff_at(delta) == severi_degree(bundle, delta, table=chtable)


def test_form2_welschinger(chtable):
    B1, B2 = b_bar_series(1, 10), b_bar_series(2, 10)
    S = reform_eval(Invariants.of(P2(6)), B1, B2, form=2, order=6, y=-1)
    for delta in range(7):
        w = severi_degree(P2(6), delta, y=-1, table=chtable)
        assert S.coeff_at(delta) == YLaurent.const(w)


def test_form2_welschinger_ruled(chtable):
    # the ruled-surface side of the Welschinger identity
    B1, B2 = b_bar_series(1, 10), b_bar_series(2, 10)
    for bundle in (Sigma(0, 6, 6), Sigma(1, 5, 5), Sigma(2, 5, 4)):
        S = reform_eval(Invariants.of(bundle), B1, B2, form=2, order=5, y=-1)
        for delta in range(6):
            w = severi_degree(bundle, delta, y=-1, table=chtable)
            assert S.coeff_at(delta) == YLaurent.const(w), (bundle, delta)


def test_solve_recovers_synthetic_b():
    # forward-generate node values from made-up B's, then invert
    B1, B2 = rand_unit(6), rand_unit(6)
    data = []
    for inv in (Invariants(K2=9, LK=-15, chi_L=21),
                Invariants(K2=8, LK=-20, chi_L=36)):
        S = reform_eval(inv, B1, B2, form=2, order=5)
        data.append((inv, {d: S.coeff_at(d) for d in range(6)}))
    r1, r2 = solve_universal_B(data, 6)
    assert r1.agrees_with(B1) and r2.agrees_with(B2)


def test_solve_requires_two_bundles():
    with pytest.raises(ValueError):
        solve_universal_B([(Invariants(K2=9, LK=-15, chi_L=21), {1: YLaurent.const(1)})], 2)


def test_solve_rejects_rank_deficient():
    B1, B2 = rand_unit(4), rand_unit(4)
    inv1 = Invariants(K2=9, LK=-15, chi_L=21)
    inv2 = Invariants(K2=18, LK=-30, chi_L=36)  # proportional (K2, LK)
    data = []
    for inv in (inv1, inv2):
        S = reform_eval(inv, B1, B2, form=2, order=3)
        data.append((inv, {d: S.coeff_at(d) for d in range(4)}))
    with pytest.raises(ValueError):
        solve_universal_B(data, 4)


def test_solve_detects_inconsistent_data(chtable):
    # three bundles overdetermine the 2x2 system; poisoning one datum must
    # surface as a nonzero residual
    bundles = [P2(5), Sigma(0, 5, 5), Sigma(1, 4, 4)]
    data = []
    for b in bundles:
        data.append((Invariants.of(b),
                     {d: severi_degree(b, d, table=chtable) for d in range(3)}))
    r1, r2 = solve_universal_B(data, 3)  # consistent as-is
    assert r1.coeff_at(0).is_one()
    data[2][1][2] = data[2][1][2] + YLaurent.const(1)
    with pytest.raises(ValueError):
        solve_universal_B(data, 3)
