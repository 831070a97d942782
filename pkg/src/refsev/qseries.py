"""Truncated Laurent series in q over the YLaurent ring.

A QSeries stores dense coefficients on an exponent lattice
    exponent(k) = (offset24 + k*step24) / 24,   lead <= k < trunc,
with a single global fractional prefactor per series (offset24), never
per-term fractional powers. Everything below `lead` is exactly zero; the
only knowledge boundary is `trunc`. step24 is 24 (integer q-powers) for all
but one construction (theta_2(q) needs half-integer steps).

All operations are exact; truncations combine by the min rule, shifted by
leading orders under multiplication and division.
"""
from __future__ import annotations

from math import gcd

from .rationals import QQ
from .ylaurent import YLaurent, YL_ONE, YL_ZERO

__all__ = ["QSeries", "compose", "compose_inverse"]


class TruncationError(ValueError):
    """Result would have no known coefficients."""


def _gcd(*xs):
    g = 0
    for x in xs:
        g = gcd(g, abs(x))
    return g


def _coerce_coeff(c) -> YLaurent:
    if isinstance(c, YLaurent):
        return c
    return YLaurent.const(c)


class QSeries:
    __slots__ = ("offset24", "step24", "lead", "trunc", "coeffs")

    def __init__(self, coeffs, lead=0, trunc=None, offset24=0, step24=24):
        coeffs = [_coerce_coeff(c) for c in coeffs]
        if trunc is None:
            trunc = lead + len(coeffs)
        if trunc - lead > len(coeffs):
            coeffs = coeffs + [YL_ZERO] * (trunc - lead - len(coeffs))
        elif trunc - lead < len(coeffs):
            raise ValueError("coeffs length exceeds the window [lead, trunc)")
        # canonical form: strip exactly-zero leading coefficients and keep
        # the fractional offset inside [0, step24)
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
            lead += 1
        if offset24 // step24:
            whole, offset24 = divmod(offset24, step24)
            lead += whole
            trunc += whole
        self.coeffs = coeffs
        self.lead = lead
        self.trunc = trunc
        self.offset24 = offset24
        self.step24 = step24

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(trunc: int, offset24: int = 0, step24: int = 24) -> "QSeries":
        return QSeries([], lead=trunc, trunc=trunc, offset24=offset24, step24=step24)

    @staticmethod
    def one(trunc: int) -> "QSeries":
        return QSeries.monomial(0, trunc=trunc)

    @staticmethod
    def monomial(k: int, coeff=1, trunc: int = None, offset24: int = 0) -> "QSeries":
        if trunc is None:
            trunc = k + 1
        return QSeries([coeff], lead=k, trunc=trunc, offset24=offset24)

    # -- views --------------------------------------------------------------

    def exponent(self, k: int) -> QQ:
        """The q-exponent of lattice index k, as an exact rational."""
        return QQ(self.offset24 + k * self.step24, 24)

    def coeff_index(self, k: int) -> YLaurent:
        if k >= self.trunc:
            raise TruncationError(
                f"coefficient index {k} is beyond truncation {self.trunc}"
            )
        if k < self.lead:
            return YL_ZERO
        return self.coeffs[k - self.lead]

    def coeff_at(self, n) -> YLaurent:
        """Exact coefficient of q^n; zero off the lattice, error past trunc."""
        e24 = QQ(n) * 24
        num = e24 - self.offset24
        k, rem = divmod(int(num), self.step24) if num == int(num) else (None, 1)
        if k is None or rem != 0:
            # off the lattice: known-zero only below the truncation boundary
            if e24 >= self.offset24 + self.trunc * self.step24:
                raise TruncationError(f"q^{n} is beyond the truncation bound")
            return YL_ZERO
        return self.coeff_index(k)

    def known_length(self) -> int:
        return self.trunc - self.lead

    def is_known_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        """Exact equality of the stored data (same lattice, same window)."""
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = _align(self, other)
        return (
            a.lead == b.lead
            and a.trunc == b.trunc
            and a.offset24 == b.offset24
            and a.coeffs == b.coeffs
        )

    def first_difference(self, other: "QSeries"):
        """Earliest exponent where the two series disagree on the common
        known window, or None. Returns (exponent, coeff_self, coeff_other)."""
        a, b = _align(self, other)
        lo = min(a.lead, b.lead)
        hi = min(a.trunc, b.trunc)
        for k in range(lo, hi):
            ca, cb = a.coeff_index(k), b.coeff_index(k)
            if ca != cb:
                return (a.exponent(k), ca, cb)
        return None

    def agrees_with(self, other: "QSeries") -> bool:
        return self.first_difference(other) is None

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QSeries):
            c = _coerce_coeff(other)
            e24_t = self.offset24 + self.trunc * self.step24
            trunc_c = max(1, -(-e24_t // 24) + 1)  # past our own boundary
            other = QSeries([c], lead=0, trunc=trunc_c)
        a, b = _align(self, other)
        lead = min(a.lead, b.lead)
        trunc = min(a.trunc, b.trunc)
        coeffs = [a.coeff_index(k) + b.coeff_index(k) for k in range(lead, trunc)]
        return QSeries(coeffs, lead=lead, trunc=trunc,
                       offset24=a.offset24, step24=a.step24)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], lead=self.lead, trunc=self.trunc,
                       offset24=self.offset24, step24=self.step24)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return self + (-QQ(other) if not isinstance(other, YLaurent) else -other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = _coerce_coeff(c)
        return QSeries([ci * c for ci in self.coeffs], lead=self.lead,
                       trunc=self.trunc, offset24=self.offset24, step24=self.step24)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        a, b = _unify_step(self, other)
        na, nb = a.known_length(), b.known_length()
        if a.is_known_zero() or b.is_known_zero():
            # a = O(q^ta) exactly zero below, so a*b = O(q^(ta+lb))
            cands = []
            if a.is_known_zero():
                cands.append(a.trunc + b.lead)
            if b.is_known_zero():
                cands.append(b.trunc + a.lead)
            return QSeries.zero(max(cands),
                                offset24=a.offset24 + b.offset24, step24=a.step24)
        n = min(na, nb)
        lead = a.lead + b.lead
        out = [YL_ZERO] * n
        for i, ca in enumerate(a.coeffs):
            if ca.is_zero() or i >= n:
                continue
            for j, cb in enumerate(b.coeffs):
                k = i + j
                if k >= n:
                    break
                out[k] = out[k] + ca * cb
        return QSeries(out, lead=lead, trunc=lead + n,
                       offset24=a.offset24 + b.offset24, step24=a.step24)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, QSeries):
            inv = QQ(1) / QQ(other)
            return self.scale(inv)
        a, b = _unify_step(self, other)
        if b.is_known_zero():
            raise ZeroDivisionError("division by a series with no nonzero known part")
        if a.is_known_zero():
            return QSeries.zero(a.trunc - b.lead,
                                offset24=a.offset24 - b.offset24, step24=a.step24)
        nb = b.known_length()
        na = a.known_length()
        n = min(na, nb)
        if n <= 0:
            raise TruncationError("division result has no known coefficients")
        b0 = b.coeffs[0]
        out = []
        acoef = a.coeffs
        for k in range(n):
            s = acoef[k] if k < len(acoef) else YL_ZERO
            for j in range(1, min(k, nb - 1) + 1):
                bj = b.coeffs[j]
                if not bj.is_zero():
                    s = s - bj * out[k - j]
            out.append(_divide_coeff(s, b0))
        lead = a.lead - b.lead
        return QSeries(out, lead=lead, trunc=lead + n,
                       offset24=a.offset24 - b.offset24, step24=a.step24)

    def __pow__(self, r):
        return self.pow(r)

    def pow(self, r) -> "QSeries":
        """Raise to an exact rational power.

        Integer r works for any series with invertible leading coefficient.
        Fractional r needs leading coefficient 1 and the leading exponent
        times r must land back on the 1/24 lattice.
        """
        r = QQ(r)
        if self.is_known_zero():
            if r < 0:
                raise ZeroDivisionError("negative power of known-zero series")
            if r == 0:
                return QSeries.one(1)
            return QSeries.zero(self.trunc, offset24=self.offset24, step24=self.step24)
        if r == 0:
            return QSeries.one(self.known_length())
        e24_lead = self.offset24 + self.lead * self.step24
        e24_new = QQ(e24_lead) * r
        if e24_new.denominator != 1:
            raise ValueError("fractional power leaves the 1/24 exponent lattice")
        e24_new = int(e24_new)
        n = self.known_length()
        u = self.coeffs  # unit part, u[0] != 0
        u0 = u[0]
        if r.denominator != 1 and not u0.is_one():
            raise ValueError("fractional power requires leading coefficient 1")
        out = [_pow_coeff(u0, r)]
        for m in range(1, n):
            s = YL_ZERO
            for k in range(1, m + 1):
                uk = u[k] if k < len(u) else YL_ZERO
                if uk.is_zero():
                    continue
                s = s + (uk * out[m - k]).scale(QQ(k) * r - QQ(m - k))
            out.append(_divide_coeff(s.scale(QQ(1, m)), u0))
        return QSeries(out, lead=0, trunc=n, offset24=e24_new, step24=self.step24)

    def log(self) -> "QSeries":
        """Formal logarithm; requires constant term exactly 1."""
        if self.offset24 + self.lead * self.step24 != 0 or not self.coeffs or not self.coeffs[0].is_one():
            raise ValueError("log requires a series with constant term 1")
        n = self.known_length()
        u = self.coeffs
        out = [YL_ZERO]
        for m in range(1, n):
            s = u[m]
            for k in range(1, m):
                if not out[k].is_zero() and not u[m - k].is_zero():
                    s = s - (out[k] * u[m - k]).scale(QQ(k, m))
            out.append(s)
        return QSeries(out, lead=0, trunc=n, offset24=0, step24=self.step24)

    def exp(self) -> "QSeries":
        """Formal exponential; requires constant term 0 and no lower terms."""
        if self.lead < 0 or self.offset24 != 0:
            raise ValueError("exp requires a power series (no negative exponents)")
        if self.lead == 0 and self.coeffs and not self.coeffs[0].is_zero():
            raise ValueError("exp requires constant term 0")
        n = self.trunc
        if n <= 0:
            raise TruncationError("exp has no known coefficients")
        a = [self.coeff_index(k) if self.lead <= k < self.trunc else YL_ZERO
             for k in range(n)]
        out = [YL_ONE]
        for m in range(1, n):
            s = YL_ZERO
            for k in range(1, m + 1):
                if not a[k].is_zero():
                    s = s + (a[k] * out[m - k]).scale(QQ(k, m))
            out.append(s)
        return QSeries(out, lead=0, trunc=n, offset24=0, step24=self.step24)

    # -- operators -----------------------------------------------------------

    def D(self) -> "QSeries":
        """q d/dq: multiplies each coefficient by its full exponent
        (including the offset24/24 part)."""
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.exponent(self.lead + i)
            out.append(c.scale(e))
        return QSeries(out, lead=self.lead, trunc=self.trunc,
                       offset24=self.offset24, step24=self.step24)

    def dy(self) -> "QSeries":
        """y d/dy applied to every coefficient."""
        return QSeries([c.dy() for c in self.coeffs], lead=self.lead,
                       trunc=self.trunc, offset24=self.offset24, step24=self.step24)

    def tderiv(self) -> "QSeries":
        """d/dt for plain power series (offset 0, integer steps)."""
        if self.offset24 != 0 or self.step24 != 24:
            raise ValueError("tderiv needs an integer-exponent power series")
        new_trunc = self.trunc - 1
        slots = {}
        for i, c in enumerate(self.coeffs):
            k = self.lead + i
            if k != 0:
                slots[k - 1] = c.scale(k)
        if not slots:
            return QSeries.zero(new_trunc)
        lead = min(slots)
        dense = [slots.get(k, YL_ZERO) for k in range(lead, new_trunc)]
        return QSeries(dense, lead=lead, trunc=new_trunc, offset24=0, step24=24)

    def subs_qpow(self, r: int) -> "QSeries":
        """Substitute q -> q^r for a positive integer r."""
        if r <= 0:
            raise ValueError("subs_qpow needs a positive integer power")
        if r == 1:
            return self
        out = []
        for i, c in enumerate(self.coeffs):
            if i > 0:
                out.extend([YL_ZERO] * (r - 1))
            out.append(c)
        return QSeries(out, lead=self.lead * r, trunc=(self.trunc - 1) * r + 1,
                       offset24=self.offset24 * r, step24=self.step24)

    def specialize_y(self, y: int) -> "QSeries":
        """Evaluate every coefficient at y = 1 or y = -1."""
        if y == 1:
            vals = [c.at_one() for c in self.coeffs]
        elif y == -1:
            vals = [c.at_minus_one() for c in self.coeffs]
        else:
            raise ValueError("only y = 1 and y = -1 specializations are exact here")
        return QSeries([YLaurent.const(v) for v in vals], lead=self.lead,
                       trunc=self.trunc, offset24=self.offset24, step24=self.step24)

    def truncate(self, new_trunc: int) -> "QSeries":
        if new_trunc >= self.trunc:
            return self
        if new_trunc <= self.lead:
            return QSeries.zero(new_trunc, offset24=self.offset24, step24=self.step24)
        return QSeries(self.coeffs[: new_trunc - self.lead], lead=self.lead,
                       trunc=new_trunc, offset24=self.offset24, step24=self.step24)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (integer lattice steps)."""
        return QSeries(list(self.coeffs), lead=self.lead + k, trunc=self.trunc + k,
                       offset24=self.offset24, step24=self.step24)

    def map_coeffs(self, f) -> "QSeries":
        return QSeries([f(c) for c in self.coeffs], lead=self.lead, trunc=self.trunc,
                       offset24=self.offset24, step24=self.step24)

    def is_palindromic(self) -> bool:
        return all(c.is_palindromic() for c in self.coeffs)

    # -- io --------------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "offset24": self.offset24,
            "step24": self.step24,
            "lead": self.lead,
            "trunc": self.trunc,
            "coeffs": [c.to_triples() for c in self.coeffs],
        }

    @staticmethod
    def from_dict(d: dict) -> "QSeries":
        return QSeries(
            [YLaurent.from_triples(t) for t in d["coeffs"]],
            lead=d["lead"], trunc=d["trunc"],
            offset24=d["offset24"], step24=d.get("step24", 24),
        )

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs[:8]):
            if c.is_zero():
                continue
            e = self.exponent(self.lead + i)
            parts.append(f"({c})q^{e}")
        tail = " + ..." if self.known_length() > 8 else ""
        body = " + ".join(parts) if parts else "0"
        return f"QSeries[{body}{tail}; trunc q^{self.exponent(self.trunc)}]"


# -- helpers ---------------------------------------------------------------


def _divide_coeff(num: YLaurent, den: YLaurent) -> YLaurent:
    if den.is_one():
        return num
    if len(den.terms) == 1:
        (e, c), = den.terms.items()
        return YLaurent({k - e: v / c for k, v in num.terms.items()}, _canonical=True)
    return num.divexact(den)


def _pow_coeff(c: YLaurent, r: QQ) -> YLaurent:
    if c.is_one():
        return YL_ONE
    if r.denominator != 1:
        raise ValueError("fractional power requires leading coefficient 1")
    ri = int(r)
    if ri >= 0:
        return c ** ri
    if len(c.terms) == 1:
        (e, v), = c.terms.items()
        inv = YLaurent({-e: QQ(1) / v}, _canonical=True)
        return inv ** (-ri)
    raise ValueError("leading coefficient is not invertible in the Laurent ring")


def _unify_step(a: QSeries, b: QSeries):
    if a.step24 == b.step24:
        return a, b
    s = _gcd(a.step24, b.step24)
    return _respace(a, s), _respace(b, s)


def _align(a: QSeries, b: QSeries):
    """Put two series on a common (offset24, step24) lattice for add/compare."""
    if a.offset24 == b.offset24 and a.step24 == b.step24:
        return a, b
    s = _gcd(a.step24, b.step24, a.offset24 - b.offset24)
    o = a.offset24 % s
    return _rebase(a, o, s), _rebase(b, o, s)


def _respace(a: QSeries, new_step: int) -> QSeries:
    return _rebase(a, a.offset24, new_step)


def _rebase(a: QSeries, new_offset24: int, new_step: int) -> QSeries:
    if (a.offset24 - new_offset24) % new_step or a.step24 % new_step:
        raise ValueError("incompatible exponent lattices")
    ratio = a.step24 // new_step
    base = (a.offset24 - new_offset24) // new_step
    lead = base + a.lead * ratio
    trunc = base + a.trunc * ratio
    out = [YL_ZERO] * (trunc - lead)
    for i, c in enumerate(a.coeffs):
        out[i * ratio] = c
    return QSeries(out, lead=lead, trunc=trunc, offset24=new_offset24, step24=new_step)


def compose(outer: QSeries, inner: QSeries) -> QSeries:
    """outer(inner). inner must be a plain power series of positive order.

    Negative outer leads are allowed (Laurent in q): they use the inverse
    of inner's unit part.
    """
    if inner.offset24 != 0 or inner.step24 != 24 or inner.lead < 1:
        raise ValueError("compose needs inner = O(t) with integer exponents")
    if outer.offset24 != 0 or outer.step24 != 24:
        raise ValueError("compose needs an integer-exponent outer series")
    m = inner.trunc
    lo = outer.lead
    n_abs = min(outer.trunc, m if lo >= 0 else lo + m - 1)
    if lo >= 0:
        # Horner from the top coefficient down, then restore the lead power
        acc = QSeries.zero(n_abs)
        for k in range(outer.trunc - 1, lo - 1, -1):
            acc = (acc * inner).truncate(n_abs) + outer.coeff_index(k)
        for _ in range(lo):
            acc = (acc * inner).truncate(n_abs)
        return acc.truncate(n_abs)
    # Laurent case: outer = q^lo * (regular part)
    reg = QSeries(list(outer.coeffs), lead=0, trunc=outer.trunc - lo)
    comp = compose(reg, inner)
    inv = inner.pow(lo)  # t^lo * unit^lo
    return (comp * inv).truncate(n_abs)


def compose_inverse(a: QSeries) -> QSeries:
    """The compositional inverse g with a(g(t)) = t to truncation order.

    a must be t + O(t^2) on the integer lattice.
    """
    if a.offset24 != 0 or a.step24 != 24 or a.lead != 1 or not a.coeffs or not a.coeffs[0].is_one():
        raise ValueError("compositional inverse needs a = t + O(t^2)")
    n = a.trunc
    g = QSeries([YL_ONE], lead=1, trunc=2)
    for order in range(2, n):
        g = QSeries(list(g.coeffs) + [YL_ZERO] * (order + 1 - g.trunc),
                    lead=1, trunc=order + 1)
        err = compose(a.truncate(order + 1), g) - QSeries([YL_ONE], lead=1, trunc=order + 1)
        c = err.coeff_at(order)
        if not c.is_zero():
            coeffs = list(g.coeffs)
            coeffs[order - 1] = coeffs[order - 1] - c
            g = QSeries(coeffs, lead=1, trunc=order + 1)
    return g
