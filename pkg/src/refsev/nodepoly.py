"""Node-polynomial fitting.

Q_delta, the t^delta coefficient of log of the degree generating series,
is polynomial in the bundle parameters once they are large enough:

  * degree <= 2 in d at fixed (c, m);
  * a linear combination of 1, c, d, cd, m, md, md^2 for c, d >= delta;
  * of 1, c+d, cd on P^1 x P^1;
  * of 1, m, d, dm, d^2m for d, m >= delta.

Fits are exact (rational linear solves), always validated on held-out
sample points, and exponentiate to node polynomials N_delta.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import q_log_count, s_beta
from .linalg import solve_exact_vec
from .qseries import QSeries
from .rationals import QQ
from .ylaurent import YLaurent, YL_ZERO

__all__ = ["NodePolynomial", "fit_node_polynomial", "node_values", "q_value"]


BASES = {
    "p2": ("1", "d", "d^2"),
    "p11m-fixed-m": ("1", "d", "d^2"),
    "p1xp1": ("1", "c+d", "cd"),
    "sigma": ("1", "c", "d", "cd", "m", "md", "md^2"),
    "p11m": ("1", "m", "d", "dm", "d^2m"),
}

_MONOMIALS = {
    "1": lambda c, m, d: 1,
    "d": lambda c, m, d: d,
    "d^2": lambda c, m, d: d * d,
    "c": lambda c, m, d: c,
    "cd": lambda c, m, d: c * d,
    "c+d": lambda c, m, d: c + d,
    "m": lambda c, m, d: m,
    "md": lambda c, m, d: m * d,
    "md^2": lambda c, m, d: m * d * d,
    "dm": lambda c, m, d: d * m,
    "d^2m": lambda c, m, d: d * d * m,
}


@dataclass
class NodePolynomial:
    """A fitted Q_delta with its provenance; evaluation reproduces the
    engine value exactly on the validated range."""

    family: str
    delta: int
    basis: tuple
    coeffs: list
    fitted_from: list = field(default_factory=list)
    validated_on: list = field(default_factory=list)

    def q_at(self, c=0, m=0, d=0) -> YLaurent:
        acc = YL_ZERO
        for name, coef in zip(self.basis, self.coeffs):
            k = _MONOMIALS[name](c, m, d)
            if k:
                acc = acc + coef.scale(QQ(k))
        return acc

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "delta": self.delta,
            "basis": list(self.basis),
            "coeffs": [c.to_triples() for c in self.coeffs],
            "fitted_from": [list(p) for p in self.fitted_from],
            "validated_on": [list(p) for p in self.validated_on],
        }

    @staticmethod
    def from_dict(d: dict) -> "NodePolynomial":
        return NodePolynomial(
            d["family"], d["delta"], tuple(d["basis"]),
            [YLaurent.from_triples(t) for t in d["coeffs"]],
            fitted_from=[tuple(p) for p in d["fitted_from"]],
            validated_on=[tuple(p) for p in d["validated_on"]],
        )


def _engine_q(beta_args, delta: int) -> YLaurent:
    c, m, d = beta_args
    return q_log_count(s_beta(c, m, d), delta)


def _fit(family: str, delta: int, probes, holdout):
    """Solve Q_delta = sum coeff_i * monomial_i on probes; verify holdout."""
    basis = BASES[family]
    A = []
    rhs = []
    for (c, m, d) in probes:
        A.append([QQ(_MONOMIALS[name](c, m, d)) for name in basis])
        rhs.append(_engine_q((c, m, d), delta))
    coeffs = solve_exact_vec(A, rhs)
    np = NodePolynomial(family, delta, basis, coeffs,
                        fitted_from=list(probes), validated_on=[])
    for (c, m, d) in holdout:
        pred = np.q_at(c=c, m=m, d=d)
        real = _engine_q((c, m, d), delta)
        if pred != real:
            raise ValueError(
                f"held-out mismatch for {family} delta={delta} at "
                f"(c,m,d)=({c},{m},{d}): fit rejected"
            )
        np.validated_on.append((c, m, d))
    return np


def fit_node_polynomial(family: str, delta: int, m: int = None,
                        c: int = None) -> NodePolynomial:
    """Fit Q_delta for the family, on the ranges the shape theorems allow.

    'p2': degree 2 in d, fitted on d = delta..delta+2, validated on
    d = delta+3..delta+5. 'p11m-fixed-m' same at fixed m (pass m).
    'p1xp1': {1, c+d, cd} on c,d >= delta. 'sigma': the seven-term form on
    c,d >= delta, m in {0,1,2}. 'p11m': {1,m,d,dm,d^2m} on d,m >= delta.
    """
    if delta == 0:
        raise ValueError("Q_delta starts at delta = 1; N_0 = 1 identically")
    d0 = max(delta, 1)
    if family == "p2":
        probes = [(0, 1, d) for d in range(d0, d0 + 3)]
        holdout = [(0, 1, d) for d in range(d0 + 3, d0 + 6)]
        return _fit("p2", delta, probes, holdout)
    if family == "p11m-fixed-m":
        if m is None:
            raise ValueError("pass m for the fixed-m fit")
        probes = [(0, m, d) for d in range(d0, d0 + 3)]
        holdout = [(0, m, d) for d in range(d0 + 3, d0 + 6)]
        return _fit("p11m-fixed-m", delta, probes, holdout)
    if family == "p1xp1":
        pts = [(a, 0, b) for a in range(d0, d0 + 2) for b in range(d0, d0 + 2)]
        holdout = [(d0 + 2, 0, d0 + 2), (d0, 0, d0 + 3), (d0 + 3, 0, d0 + 1)]
        return _fit("p1xp1", delta, pts, holdout)
    if family == "sigma":
        # the m = 0 block separates {1, c, d, cd}; three d-values at m = 1
        # separate {m, md, md^2}
        pts = [(a, 0, b) for a in (d0, d0 + 1) for b in (d0, d0 + 1)]
        pts += [(d0, 1, b) for b in (d0, d0 + 1, d0 + 2)]
        holdout = [
            (a, mm, b)
            for mm in (0, 1, 2)
            for (a, b) in ((d0 + 2, d0 + 2), (d0, d0 + 3), (d0 + 3, d0 + 1))
        ]
        return _fit("sigma", delta, pts, holdout)
    if family == "p11m":
        pts = [(0, d0, b) for b in (d0, d0 + 1, d0 + 2)]
        pts += [(0, d0 + 1, b) for b in (d0, d0 + 1)]
        holdout = [(0, d0 + 3, d0 + 2), (0, d0, d0 + 3), (0, d0 + 2, d0 + 3),
                   (0, d0 + 2, d0 + 1)]
        return _fit("p11m", delta, pts, holdout)
    raise ValueError(f"unknown family {family!r}")


def q_value(fits: dict, delta: int, c=0, m=0, d=0) -> YLaurent:
    return fits[delta].q_at(c=c, m=m, d=d)


def node_values(fits: dict, delta_max: int, c=0, m=0, d=0) -> dict:
    """N_delta values at a parameter point from fitted Q polynomials:
    the exponential of sum Q_delta t^delta."""
    qs = [YL_ZERO]
    for delta in range(1, delta_max + 1):
        qs.append(fits[delta].q_at(c=c, m=m, d=d))
    series = QSeries(qs, trunc=delta_max + 1).exp()
    return {delta: series.coeff_at(delta) for delta in range(delta_max + 1)}
