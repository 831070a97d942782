"""The refined Caporaso-Harris recursion for P^2, P(1,1,m) and Sigma_m.

States are (m, c, d, delta, alpha, beta) with I(alpha) + I(beta) = HL,
HL the lattice length c + m*d of the bottom edge of Delta_{c,m,d}. P^2 and
P(1,1,m) run through the Sigma_m states with c = 0 (same polygons, same
degrees); the recursion terminates at the fiber bundles (d = 0): the count
is 1 exactly for delta = 0, beta = 0 and alpha = c simple contacts.

Three modes share the implementation: 'sym' computes exact Laurent
polynomials in y; 1 and -1 are pure integer fast paths (classical Severi
degrees and tropical Welschinger numbers).
"""
from __future__ import annotations

import itertools
import json
import sys
from dataclasses import dataclass
from math import comb

from .cache import CacheStore
from .rationals import QQ
from .ylaurent import YLaurent, YL_ZERO, qnum, qnum_at

__all__ = [
    "SurfaceBundle",
    "P2",
    "P11m",
    "Sigma",
    "CHTable",
    "relative_degree",
    "severi_degree",
    "welschinger_degree",
    "canon_seq",
    "iseq",
]


# -- sequences ---------------------------------------------------------------


def canon_seq(seq) -> tuple:
    """Strip trailing zeros; sequences are indexed from 1."""
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    if any(x < 0 for x in seq):
        raise ValueError("sequences have nonnegative entries")
    return tuple(seq)


def iseq(seq) -> int:
    return sum((i + 1) * x for i, x in enumerate(seq))


def _binom_seq(a: tuple, b: tuple) -> int:
    """prod_i C(a_i, b_i); zero when b_i > a_i somewhere."""
    out = 1
    for i in range(max(len(a), len(b))):
        ai = a[i] if i < len(a) else 0
        bi = b[i] if i < len(b) else 0
        if bi > ai:
            return 0
        out *= comb(ai, bi)
    return out


# -- surfaces ----------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceBundle:
    """A pair (surface, line bundle) from the three h-transversal families.

    family 'p2' is (P^2, dH); 'p11m' is (P(1,1,m), dH); 'sigma' is
    (Sigma_m, cF + dH). The recursion only sees the polygon Delta_{c,m,d};
    the intersection numbers below feed the generating-function checks.
    """

    family: str
    m: int
    c: int
    d: int

    def __post_init__(self):
        if self.family not in ("p2", "p11m", "sigma"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "p2" and (self.m != 1 or self.c != 0):
            raise ValueError("P2 bundles have m = 1, c = 0")
        if self.family == "p11m" and self.c != 0:
            raise ValueError("P(1,1,m) bundles have c = 0")
        if self.m < 0 or self.c < 0 or self.d < 0:
            raise ValueError("parameters must be nonnegative")

    # lattice data of Delta_{c,m,d}

    @property
    def HL(self) -> int:
        return self.c + self.m * self.d

    @property
    def dim_L(self) -> int:
        return (self.d + 1) * (self.c + 1) + self.m * self.d * (self.d + 1) // 2 - 1

    # intersection numbers

    @property
    def chi_O(self) -> int:
        return 1

    @property
    def chi_L(self) -> int:
        return self.dim_L + 1

    @property
    def L2(self):
        if self.family == "p2":
            return self.d * self.d
        return 2 * self.c * self.d + self.m * self.d * self.d

    @property
    def LK(self):
        if self.family == "p2":
            return -3 * self.d
        return -(2 * self.c + (self.m + 2) * self.d)

    @property
    def K2(self):
        if self.family == "p2":
            return 9
        if self.family == "sigma":
            return 8
        return QQ((self.m + 2) ** 2, self.m)

    @property
    def qexp(self):
        """(L^2 - L.K)/2, the coefficient-extraction exponent."""
        num = self.L2 - self.LK
        if isinstance(num, int):
            if num % 2 == 0:
                return num // 2
            return QQ(num, 2)
        return num / 2

    def sub_H(self) -> "SurfaceBundle":
        return SurfaceBundle(self.family, self.m, self.c, self.d - 1)


def P2(d: int) -> SurfaceBundle:
    return SurfaceBundle("p2", 1, 0, d)


def P11m(m: int, d: int) -> SurfaceBundle:
    return SurfaceBundle("p11m", m, 0, d)


def Sigma(m: int, c: int, d: int) -> SurfaceBundle:
    return SurfaceBundle("sigma", m, c, d)


# -- memo table --------------------------------------------------------------


class CHTable:
    """Memo for recursion values, optionally backed by an append-only store.

    Entries are immutable once written; recomputation of a key reproduces
    the stored value bit for bit (asserted in the test suite).
    """

    def __init__(self, store: CacheStore | None = None):
        self.memo = {"sym": {}, 1: {}, -1: {}}
        self.store = store

    @staticmethod
    def _store_key(mode, key) -> str:
        m, c, d, delta, alpha, beta = key
        a = ",".join(map(str, alpha))
        b = ",".join(map(str, beta))
        return f"{mode}|{m}|{c}|{d}|{delta}|{a}|{b}"

    def lookup(self, mode, key):
        hit = self.memo[mode].get(key)
        if hit is not None:
            return hit
        if self.store is not None:
            payload = self.store.get(self._store_key(mode, key))
            if payload is not None:
                if mode == "sym":
                    val = YLaurent.from_triples(json.loads(payload))
                else:
                    val = int(payload)
                self.memo[mode][key] = val
                return val
        return None

    def insert(self, mode, key, value):
        self.memo[mode][key] = value
        if self.store is not None:
            if mode == "sym":
                payload = json.dumps(value.to_triples(), separators=(",", ":"))
            else:
                payload = str(value)
            self.store.put(self._store_key(mode, key), payload)

    def flush(self):
        if self.store is not None:
            self.store.flush()


_DEFAULT_TABLE = CHTable()


# -- mode helpers --------------------------------------------------------------

_QPOW: dict = {}


def _qnum_pow(i: int, e: int, mode):
    """[i]_y ** e in the given mode; None signals an exactly-zero factor."""
    if mode == 1:
        return i ** e
    if mode == -1:
        v = qnum_at(i, -1)
        if v == 0:
            return None
        return 1 if (v == 1 or e % 2 == 0) else -1
    key = (i, e)
    hit = _QPOW.get(key)
    if hit is None:
        hit = qnum(i) ** e
        _QPOW[key] = hit
    return hit


_PARTS_OF: dict = {}


def _partitions(e: int):
    """All partitions of e as tuples of parts >= 1, descending."""
    if e in _PARTS_OF:
        return _PARTS_OF[e]
    out = []

    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rest, maxpart), 0, -1):
            acc.append(p)
            rec(rest - p, p, acc)
            acc.pop()

    rec(e, e, [])
    _PARTS_OF[e] = out
    return out


# -- the recursion -------------------------------------------------------------


def relative_degree(s: SurfaceBundle, delta: int, alpha, beta, y="sym",
                    table: CHTable | None = None, strict: bool = False):
    """The relative refined degree N^{(S,L),delta}(alpha,beta).

    alpha are fixed contacts with the bottom divisor, beta moving ones;
    I(alpha) + I(beta) must equal HL. y is 'sym' for the Laurent polynomial,
    1 or -1 for the integer specializations.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    alpha = canon_seq(alpha)
    beta = canon_seq(beta)
    if iseq(alpha) + iseq(beta) != s.HL:
        raise ValueError(
            f"I(alpha) + I(beta) = {iseq(alpha) + iseq(beta)} != HL = {s.HL}"
        )
    if y not in ("sym", 1, -1):
        raise ValueError("y must be 'sym', 1 or -1")
    if strict:
        gamma = s.dim_L - s.HL + sum(beta) - delta
        if gamma < 0:
            raise ValueError(f"gamma = {gamma} < 0 for the requested state")
    if table is None:
        table = _DEFAULT_TABLE
    old = sys.getrecursionlimit()
    if old < 50000:
        sys.setrecursionlimit(50000)
    try:
        return _N(s.m, s.c, s.d, delta, alpha, beta, y, table)
    finally:
        sys.setrecursionlimit(old)


def _N(m, c, d, delta, alpha, beta, mode, table):
    key = (m, c, d, delta, alpha, beta)
    hit = table.lookup(mode, key)
    if hit is not None:
        return hit

    zero = YL_ZERO if mode == "sym" else 0
    # initial conditions: the fiber bundles cF on Sigma_m
    if d == 0 and delta == 0 and not beta and alpha == canon_seq((c,)):
        val = YLaurent.const(1) if mode == "sym" else 1
        table.insert(mode, key, val)
        return val

    dim = (d + 1) * (c + 1) + m * d * (d + 1) // 2 - 1
    HL = c + m * d
    gamma = dim - HL + sum(beta) - delta
    if gamma <= 0:
        table.insert(mode, key, zero)
        return zero

    total = zero
    # first sum: trade one moving contact of order k for a fixed one
    for k_idx, bk in enumerate(beta):
        if bk <= 0:
            continue
        k = k_idx + 1
        factor = _qnum_pow(k, 1, mode)
        if factor is None:
            continue
        a2 = list(alpha) + [0] * (k - len(alpha))
        a2[k - 1] += 1
        b2 = list(beta)
        b2[k - 1] -= 1
        sub = _N(m, c, d, delta, canon_seq(a2), canon_seq(b2), mode, table)
        if mode == "sym":
            total = total + factor * sub
        else:
            total += factor * sub

    # second sum: peel off the divisor H (d -> d-1); the fiber bundles are
    # the bottom of the tower
    if d == 0:
        table.insert(mode, key, total)
        return total
    HL2 = c + m * (d - 1)
    ibeta = iseq(beta)
    ranges = [range(x + 1) for x in alpha]
    for a2_raw in itertools.product(*ranges):
        a2 = canon_seq(a2_raw)
        R = HL2 - iseq(a2) - ibeta
        if R < 0:
            continue
        ca = _binom_seq(alpha, a2)
        emax = delta - HL2 + R
        if emax < 0:
            continue
        for e in range(0, min(R, emax) + 1):
            delta2 = delta - HL2 + R - e
            for mu in _partitions(e):
                ones = R - e - len(mu)
                if ones < 0:
                    continue
                # gamma' has `ones` parts of size 1 and parts mu_j + 1
                gam: dict = {}
                if ones:
                    gam[1] = ones
                for p in mu:
                    gam[p + 1] = gam.get(p + 1, 0) + 1
                factor = ca
                sym_factor = None
                ok = True
                for i, gi in gam.items():
                    f = _qnum_pow(i, gi, mode)
                    if f is None:
                        ok = False
                        break
                    if mode == "sym":
                        sym_factor = f if sym_factor is None else sym_factor * f
                    else:
                        factor *= f
                if not ok:
                    continue
                b2 = list(beta) + [0] * (max(gam) - len(beta) if gam else 0)
                for i, gi in gam.items():
                    b2[i - 1] += gi
                b2t = canon_seq(b2)
                cb = _binom_seq(b2t, beta)
                if cb == 0:
                    continue
                sub = _N(m, c, d - 1, delta2, a2, b2t, mode, table)
                if mode == "sym":
                    if sub.is_zero():
                        continue
                    term = sub * (factor * cb)
                    if sym_factor is not None:
                        term = term * sym_factor
                    total = total + term
                else:
                    total += factor * cb * sub

    table.insert(mode, key, total)
    return total


def severi_degree(s: SurfaceBundle, delta: int, y="sym",
                  table: CHTable | None = None):
    """N^{(S,L),delta}(y): all HL contacts with the bottom divisor simple
    and moving, i.e. alpha = 0, beta = (HL)."""
    beta = (s.HL,) if s.HL > 0 else ()
    return relative_degree(s, delta, (), beta, y=y, table=table)


def welschinger_degree(s: SurfaceBundle, delta: int,
                       table: CHTable | None = None) -> int:
    """Tropical Welschinger number: the y = -1 specialization, computed on
    the dedicated integer path."""
    return severi_degree(s, delta, y=-1, table=table)
