import random

import pytest

from refsev.modular import ddgtilde2, delta_tilde, dgtilde2, eta, theta2_of_qsq
from refsev.qseries import QSeries, TruncationError, compose, compose_inverse
from refsev.rationals import QQ
from refsev.ylaurent import YLaurent

random.seed(20260808)


def rand_series(trunc, lead=0, unit=False, span=2):
    coeffs = []
    for i in range(trunc - lead):
        if unit and i == 0:
            coeffs.append(YLaurent.const(1))
            continue
        coeffs.append(
            YLaurent({k: QQ(random.randint(-4, 4)) for k in range(-span, span + 1)})
        )
    return QSeries(coeffs, lead=lead, trunc=trunc)


def test_mul_identity():
    a = rand_series(9)
    assert (a * QSeries.one(9)).agrees_with(a)


def test_monomial_cancellation():
    num = QSeries([1, 1], lead=1, trunc=9)
    assert (num / QSeries.monomial(1, trunc=9)).agrees_with(QSeries([1, 1], trunc=8))


def test_eta_quotient_is_theta():
    # eta(q)^2/eta(q^2) = 1 - 2q + 2q^4 - 2q^9 + ...
    K = 16
    e = eta(K)
    got = e * e / e.subs_qpow(2)
    assert got.offset24 == 0
    assert got.agrees_with(theta2_of_qsq(K))


def test_geometric_series():
    inv = QSeries([1, 1], trunc=10).pow(-1)
    expect = QSeries([(-1) ** n for n in range(10)], trunc=10)
    assert inv.agrees_with(expect)


def test_pow_zero():
    a = rand_series(7, unit=True)
    assert a.pow(0).agrees_with(QSeries.one(7))


def test_sqrt_of_refined_product_leads_with_q():
    # Delta-tilde and D(DGtilde2) both start at q with coefficient 1
    K = 8
    prod = delta_tilde(K) * ddgtilde2(K)
    root = prod.pow(QQ(1, 2))
    assert root.lead == 1 and root.offset24 == 0
    assert root.coeff_at(1).is_one()
    assert (root * root).agrees_with(prod)


def test_exp_log_roundtrip():
    s = QSeries([1, 1, 1], trunc=9)
    assert s.log().exp().agrees_with(s)
    for _ in range(5):
        u = rand_series(8, unit=True)
        assert u.log().exp().agrees_with(u)


def test_log_requires_unit():
    with pytest.raises(ValueError):
        QSeries([2, 1], trunc=5).log()
    with pytest.raises(ValueError):
        QSeries([1], lead=1, trunc=5).log()


def test_pow_inverse_pairs():
    for _ in range(5):
        u = rand_series(8, unit=True)
        r = QQ(random.randint(1, 5), random.choice((1, 2, 3)))
        assert (u.pow(r) * u.pow(-r)).agrees_with(QSeries.one(8))


def test_fractional_pow_needs_unit_lead():
    s = QSeries([2, 1], trunc=6)
    with pytest.raises(ValueError):
        s.pow(QQ(1, 2))


def test_fractional_pow_lattice_violation():
    s = QSeries([1], lead=0, trunc=4, offset24=1)  # q^(1/24) * 1
    with pytest.raises(ValueError):
        s.pow(QQ(1, 5))


def test_leibniz_rule():
    for _ in range(4):
        a, b = rand_series(8), rand_series(8)
        assert (a * b).D().agrees_with(a.D() * b + a * b.D())


def test_d_operator_counts_offset():
    s = QSeries.monomial(0, trunc=4, offset24=3)  # q^(1/8)
    assert s.D().coeff_at(QQ(1, 8)) == YLaurent.const(QQ(1, 8))


def test_offsets_add_under_mul():
    e = eta(8)
    assert (e * e).offset24 == 2
    assert (e * e / e).offset24 == 1


def test_compose_inverse_identity():
    t = QSeries([1], lead=1, trunc=7)
    assert compose_inverse(QSeries([1], lead=1, trunc=7)).agrees_with(t)


def test_compose_inverse_of_point_series_low_orders():
    # the compositional inverse of the point series begins
    #   t - ((y^2+4y+1)/y) t^2 + ((y^4+14y^3+30y^2+14y+1)/y^2) t^3
    g = compose_inverse(dgtilde2(6))
    assert g.coeff_at(1).is_one()
    assert g.coeff_at(2) == YLaurent({2: -1, 0: -4, -2: -1})
    assert g.coeff_at(3) == YLaurent({4: 1, 2: 14, 0: 30, -2: 14, -4: 1})


def test_compose_inverse_roundtrip_random():
    for _ in range(5):
        a = rand_series(7, lead=1)
        coeffs = list(a.coeffs)
        coeffs[0] = YLaurent.const(1)
        a = QSeries(coeffs, lead=1, trunc=7)
        g = compose_inverse(a)
        t = QSeries([1], lead=1, trunc=7)
        assert compose(a, g).agrees_with(t)
        assert compose(g, a).agrees_with(t)


def test_coeff_at():
    assert QSeries.one(3).coeff_at(0).is_one()
    s = QSeries([5], lead=2, trunc=7, offset24=3)
    assert s.coeff_at(QQ(1, 2)).is_zero()  # off the lattice but below trunc
    with pytest.raises(TruncationError):
        s.coeff_at(10)


def test_division_by_known_zero():
    with pytest.raises(ZeroDivisionError):
        QSeries.one(5) / QSeries.zero(5)


def test_truncation_bound_after_division():
    a = QSeries([1, 1], trunc=2)
    b = QSeries([1, 1, 1], trunc=3)
    q = a / b  # known only mod q^2
    with pytest.raises(TruncationError):
        q.coeff_at(2)


def test_half_step_lattice():
    # theta_2(q) lives on half-integer q-powers; mixing with integer-step
    # series refines the lattice exactly
    from refsev.modular import theta2
    th = theta2(10)
    assert th.step24 == 12
    assert th.coeff_at(QQ(1, 2)) == YLaurent.const(-2)
    mixed = th * QSeries([1, 1], trunc=5)
    assert mixed.coeff_at(QQ(3, 2)) == YLaurent.const(-2)


def test_specialize_y():
    s = dgtilde2(6)
    at1 = s.specialize_y(1)
    assert at1.coeff_at(2) == YLaurent.const(6)  # 2*1 + 1*[2]_1^2
    atm1 = s.specialize_y(-1)
    assert atm1.coeff_at(2) == YLaurent.const(2)  # [2]_{-1} = 0


def test_json_roundtrip():
    s = dgtilde2(5)
    assert QSeries.from_dict(s.to_dict()).agrees_with(s)
    assert QSeries.from_dict(s.to_dict()) == s
