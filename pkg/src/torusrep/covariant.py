"""The shift-covariant quotient of the doubly-infinite trace-zero affine algebra.

Classes of E_{m,n} (x) t^k under the relation identifying a basis vector
with q^k times its N-step diagonal shift.  Canonical coordinates are

    e_{i,j}(m0, m1)  <->  class of E_{i, N*m1+j} (x) t^m0,
    e_{i,i}(m0, 0)   <->  (1 - q^{-m0})^{-1} class of (E_{i,i}-E_{N+i,N+i}) (x) t^m0,
    hbar_r           <->  class of E_{r,r}-E_{r+1,r+1},
    kprime           <->  class of E_{r,r}-E_{N+r,N+r} (any r),
    k                <->  the affine center.

The bracket is the orbit-summed affine bracket; for two matrix-unit classes
at most two shifts contribute.  Folding the second torus exponent into the
COLUMN (canonical representatives have their ROW in 1..N) is forced: it is
the unique orientation for which the coordinate relabeling
E_{i,j} t0^m0 t1^m1 -> e_{i,j}(m0, m1) intertwines the torus-side bracket
with the orbit-summed bracket; with the opposite orientation the two cross
terms trade the exponents q^{m1*n0} and q^{n1*m0}.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Tuple, Union

from .errors import NotInSl, NotInSlInfinity
from .liealg import GlqElement, K0, K1, require_sl
from .scalars import Rational, as_scalar, qpow

K = "k"
KPRIME = "kprime"
EKey = Tuple[str, int, int, int, int]    # ("e", i, j, m0, m1)
HKey = Tuple[str, int]                   # ("h", r)
CovKey = Union[EKey, HKey, str]


def ekey(i: int, j: int, m0: int, m1: int) -> EKey:
    if (i - j, m0, m1) == (0, 0, 0):
        raise ValueError("e_{i,i}(0,0) is not a basis vector")
    return ("e", i, j, m0, m1)


def hkey(r: int) -> HKey:
    return ("h", r)


def _sort_key(k: CovKey):
    if k == K:
        return (0,)
    if k == KPRIME:
        return (1,)
    if k[0] == "h":
        return (2, k[1])
    return (3,) + k[1:]


class CovElement:
    """Finite rational combination over the canonical basis."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Dict[CovKey, Fraction] = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = as_scalar(c)
            if c != 0:
                clean[k] = c
        self._terms = clean

    @staticmethod
    def zero() -> "CovElement":
        return CovElement()

    @staticmethod
    def basis(key: CovKey, coeff: Rational = 1) -> "CovElement":
        return CovElement({key: as_scalar(coeff)})

    def items(self) -> Iterator[Tuple[CovKey, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0])))

    def coeff(self, key: CovKey) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "CovElement") -> "CovElement":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return CovElement(out)

    def __sub__(self, other: "CovElement") -> "CovElement":
        return self + (-other)

    def __neg__(self) -> "CovElement":
        return CovElement({k: -c for k, c in self._terms.items()})

    def scale(self, c: Rational) -> "CovElement":
        c = as_scalar(c)
        return CovElement({k: c * v for k, v in self._terms.items()})

    def __rmul__(self, c: Rational) -> "CovElement":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, CovElement) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"CovElement({format_cov(self)!r})"


def _split_row(m: int, N: int) -> Tuple[int, int]:
    """Write m = N*m1 + i with 1 <= i <= N."""
    i = (m - 1) % N + 1
    return (m - i) // N, i


def canonicalize(m: int, n: int, k: int, N: int, q: Rational) -> Tuple[Fraction, EKey]:
    """Canonical form of the class of E_{m,n} (x) t^k, for m != n.

    Shifts the row into 1..N, picking up the character power q^{-k*m1}.
    """
    if m == n:
        raise NotInSlInfinity("single diagonal unit is not trace-zero")
    q = as_scalar(q)
    m1, i = _split_row(m, N)
    n1, j = _split_row(n, N)
    return qpow(q, -k * m1), ekey(i, j, k, n1 - m1)


def canonicalize_diag_diff(m: int, n: int, k: int, N: int, q: Rational) -> CovElement:
    """Canonical form of the class of (E_{m,m} - E_{n,n}) (x) t^k."""
    if m == n:
        return CovElement.zero()
    q = as_scalar(q)
    m1, i = _split_row(m, N)
    n1, j = _split_row(n, N)
    if k != 0:
        out = CovElement.basis(ekey(i, i, k, 0), qpow(q, -k * m1))
        return out - CovElement.basis(ekey(j, j, k, 0), qpow(q, -k * n1))
    out = CovElement.basis(KPRIME, n1 - m1) if m1 != n1 else CovElement.zero()
    return out + _hbar_diff(i, j)


def _hbar_diff(i: int, j: int) -> CovElement:
    """Class of E_{i,i} - E_{j,j} (1 <= i,j <= N) in the hbar_r coordinates."""
    out: Dict[CovKey, Fraction] = {}
    if i < j:
        for r in range(i, j):
            out[hkey(r)] = Fraction(1)
    else:
        for r in range(j, i):
            out[hkey(r)] = Fraction(-1)
    return CovElement(out)


# -- raw (pre-canonical) arithmetic -----------------------------------------
#
# Raw keys: ("u", r, s, t) for E_{r,s} (x) t^t with r != s, ("d", r, t) for a
# diagonal unit, and K for the center.  Diagonal raw coefficients must sum to
# zero per t-degree before canonicalization.

RawKey = Tuple


def _raw_of_key(key: CovKey, N: int, q: Fraction) -> Dict[RawKey, Fraction]:
    if key == K:
        return {(K,): Fraction(1)}
    if key == KPRIME:
        return {("d", 1, 0): Fraction(1), ("d", N + 1, 0): Fraction(-1)}
    if key[0] == "h":
        r = key[1]
        return {("d", r, 0): Fraction(1), ("d", r + 1, 0): Fraction(-1)}
    _, i, j, m0, m1 = key
    if i == j and m1 == 0:
        c = 1 / (1 - qpow(q, -m0))
        return {("d", i, m0): c, ("d", N + i, m0): -c}
    return {("u", i, N * m1 + j, m0): Fraction(1)}


def _canonicalize_raw(raw: Dict[RawKey, Fraction], N: int, q: Fraction) -> CovElement:
    out = CovElement.zero()
    diag: Dict[int, Dict[int, Fraction]] = {}
    for key, c in raw.items():
        if c == 0:
            continue
        if key == (K,):
            out = out + CovElement.basis(K, c)
        elif key[0] == "u":
            _, r, s, t = key
            coeff, ck = canonicalize(r, s, t, N, q)
            out = out + CovElement.basis(ck, c * coeff)
        else:
            _, r, t = key
            slot = diag.setdefault(t, {})
            slot[r] = slot.get(r, Fraction(0)) + c
    for t, cs in sorted(diag.items()):
        live = {r: c for r, c in cs.items() if c != 0}
        if not live:
            continue
        if sum(live.values()) != 0:
            raise NotInSl("raw diagonal part has nonzero trace")
        r0 = min(live)
        for r, c in sorted(live.items()):
            if r == r0:
                continue
            out = out + canonicalize_diag_diff(r, r0, t, N, q).scale(c)
    return out


def _raw_bracket(a: int, b: int, m: int, c: int, d: int, n: int,
                 N: int, q: Fraction, coeff: Fraction,
                 acc: Dict[RawKey, Fraction]) -> None:
    """Accumulate [class(E_{a,b} t^m), class(E_{c,d} t^n)] into acc.

    Only shifts g aligning b with c, or d with a, contribute.
    """
    def add(key: RawKey, v: Fraction):
        if v != 0:
            acc[key] = acc.get(key, Fraction(0)) + v

    if (c - b) % N == 0:
        g = (c - b) // N
        w = coeff * qpow(q, g * m)
        r, s = a + N * g, d
        add(("d", r, m + n) if r == s else ("u", r, s, m + n), w)
        if r == s and m + n == 0:
            add((K,), w * m)
    if (d - a) % N == 0:
        g = (d - a) // N
        w = coeff * qpow(q, g * m)
        r, s = c, b + N * g
        add(("d", r, m + n) if r == s else ("u", r, s, m + n), -w)


def cov_bracket(u: CovElement, v: CovElement, N: int, q: Rational) -> CovElement:
    q = as_scalar(q)
    acc: Dict[RawKey, Fraction] = {}
    for ku, cu in u.items():
        ru = _raw_of_key(ku, N, q)
        for kv, cv in v.items():
            rv = _raw_of_key(kv, N, q)
            for rku, rcu in ru.items():
                if rku == (K,):
                    continue
                for rkv, rcv in rv.items():
                    if rkv == (K,):
                        continue
                    a, b, m = (rku[1], rku[1], rku[2]) if rku[0] == "d" else rku[1:]
                    c, d, n = (rkv[1], rkv[1], rkv[2]) if rkv[0] == "d" else rkv[1:]
                    _raw_bracket(a, b, m, c, d, n, N, q, cu * cv * rcu * rcv, acc)
    return _canonicalize_raw(acc, N, q)


# -- the coordinate isomorphism with the quantum-torus algebra --------------

def theta(x: GlqElement, N: int, q: Rational) -> CovElement:
    """Relabel a trace-zero element into covariant coordinates."""
    q = as_scalar(q)
    require_sl(x, N)
    out = CovElement.zero()
    diag0: Dict[int, Fraction] = {}
    for key, c in x.items():
        if key == K0:
            out = out + CovElement.basis(K, c)
        elif key == K1:
            out = out + CovElement.basis(KPRIME, c)
        else:
            i, j, m0, m1 = key
            if i > N or j > N:
                raise NotInSl(f"index out of range for N={N}")
            if i == j and m0 == 0 and m1 == 0:
                diag0[i] = c
            else:
                out = out + CovElement.basis(ekey(i, j, m0, m1), c)
    if diag0:
        # traceless by require_sl; telescope into the hbar_r basis
        acc = Fraction(0)
        for r in range(1, N):
            acc += diag0.get(r, Fraction(0))
            if acc != 0:
                out = out + CovElement.basis(hkey(r), acc)
    return out


def theta_inv(u: CovElement, N: int, q: Rational) -> GlqElement:
    out = GlqElement.zero()
    for key, c in u.items():
        if key == K:
            out = out + GlqElement.k0(c)
        elif key == KPRIME:
            out = out + GlqElement.k1(c)
        elif key[0] == "h":
            r = key[1]
            out = out + (GlqElement.matrix_unit(r, r)
                         - GlqElement.matrix_unit(r + 1, r + 1)).scale(c)
        else:
            _, i, j, m0, m1 = key
            out = out + GlqElement.matrix_unit(i, j, m0, m1, c)
    return out


def cov_basis_keys(N: int, max_exp: int) -> Iterable[CovKey]:
    """Canonical basis keys with |m0|, |m1| <= max_exp."""
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for m0 in range(-max_exp, max_exp + 1):
                for m1 in range(-max_exp, max_exp + 1):
                    if (i - j, m0, m1) != (0, 0, 0):
                        yield ekey(i, j, m0, m1)
    for r in range(1, N):
        yield hkey(r)
    yield KPRIME
    yield K


def format_cov(u: CovElement) -> str:
    if u.is_zero():
        return "0"
    parts = []
    for key, c in u.items():
        if key == K:
            mono = "k"
        elif key == KPRIME:
            mono = "kprime"
        elif key[0] == "h":
            mono = f"hbar[{key[1]}]"
        else:
            _, i, j, m0, m1 = key
            mono = f"e[{i},{j}]({m0},{m1})"
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
