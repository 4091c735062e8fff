"""Charged free fermions, their graded Fock space, and the three actions.

Generators are stored in flat coordinates: a generator is the tuple
(p, kind, idx) with flavor p in 1..ell, kind 0 for psi / 1 for psibar, and
idx the flat index gluing the matrix label i in 1..N to the mode n by

    psi_i^p(n)    <-> idx = n*N - i
    psibar_i^p(n) <-> idx = n*N + i - 1.

In flat coordinates both families create exactly when idx < 0, a psi/psibar
pair contracts exactly when the flavors agree and the indices sum to -1,
and the product A(mu) of the highest-weight construction is already sorted.
All signs are transposition counts against the global (p, kind, idx) order.
"""
from __future__ import annotations

import itertools
from bisect import bisect_left
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import InvalidParams
from .liealg import GlqElement, K0, K1
from .scalars import ParameterSet, Rational, as_scalar, qpow

PSI = 0
PSIBAR = 1
Gen = Tuple[int, int, int]          # (p, kind, idx)
Monomial = Tuple[Gen, ...]          # strictly increasing creators
VACUUM: Monomial = ()


def psi(i: int, p: int, n: int, N: int) -> Gen:
    if not 1 <= i <= N:
        raise ValueError("matrix label out of range")
    return (p, PSI, n * N - i)


def psibar(i: int, p: int, n: int, N: int) -> Gen:
    if not 1 <= i <= N:
        raise ValueError("matrix label out of range")
    return (p, PSIBAR, n * N + i - 1)


def gen_mode(g: Gen, N: int) -> int:
    """The mode n of the generator."""
    _, kind, idx = g
    return idx // N + 1 if kind == PSI else idx // N


def gen_label(g: Gen, N: int) -> int:
    """The matrix label i in 1..N."""
    _, kind, idx = g
    n = gen_mode(g, N)
    return n * N - idx if kind == PSI else idx - n * N + 1


def gen_degree(g: Gen, N: int) -> int:
    return -gen_mode(g, N)


def is_creator(g: Gen) -> bool:
    return g[2] < 0


def monomial_degree(m: Monomial, N: int) -> int:
    return sum(gen_degree(g, N) for g in m)


def monomial_weight(m: Monomial, ell: int) -> Tuple[int, ...]:
    """Diagonal torus weight: per flavor, #psi minus #psibar."""
    w = [0] * ell
    for p, kind, _ in m:
        w[p - 1] += 1 if kind == PSI else -1
    return tuple(w)


class FockVector:
    """Finite rational combination of canonical creation monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Dict[Monomial, Fraction] = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = as_scalar(c)
            if c != 0:
                clean[m] = c
        self._terms = clean

    @staticmethod
    def zero() -> "FockVector":
        return FockVector()

    @staticmethod
    def vacuum(coeff: Rational = 1) -> "FockVector":
        return FockVector({VACUUM: as_scalar(coeff)})

    @staticmethod
    def monomial(m: Monomial, coeff: Rational = 1) -> "FockVector":
        return FockVector({m: as_scalar(coeff)})

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> List[Monomial]:
        return sorted(self._terms)

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        v = FockVector.__new__(FockVector)
        v._terms = out
        return v

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __neg__(self) -> "FockVector":
        return FockVector({m: -c for m, c in self._terms.items()})

    def scale(self, c: Rational) -> "FockVector":
        c = as_scalar(c)
        if c == 0:
            return FockVector.zero()
        v = FockVector.__new__(FockVector)
        v._terms = {m: c * x for m, x in self._terms.items()}
        return v

    def __rmul__(self, c: Rational) -> "FockVector":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, FockVector) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"FockVector<{len(self._terms)} terms>"


def apply_gen(g: Gen, vec: FockVector) -> FockVector:
    """Left multiplication by a single Clifford generator.

    Creators insert at their sorted slot (zero on repetition); annihilators
    contract against the unique partner, if present.  Signs count the
    generators jumped over.
    """
    out: Dict[Monomial, Fraction] = {}
    if is_creator(g):
        for m, c in vec._terms.items():
            pos = bisect_left(m, g)
            if pos < len(m) and m[pos] == g:
                continue
            if pos & 1:
                c = -c
            key = m[:pos] + (g,) + m[pos:]
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    else:
        p, kind, idx = g
        partner = (p, 1 - kind, -idx - 1)
        for m, c in vec._terms.items():
            pos = bisect_left(m, partner)
            if pos >= len(m) or m[pos] != partner:
                continue
            if pos & 1:
                c = -c
            key = m[:pos] + m[pos + 1:]
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    v = FockVector.__new__(FockVector)
    v._terms = out
    return v


def apply_word(gens: Sequence[Gen], vec: FockVector) -> FockVector:
    """Apply a product of generators, rightmost factor first."""
    for g in reversed(gens):
        vec = apply_gen(g, vec)
        if vec.is_zero():
            break
    return vec


def normal_order_pair(m: int, n: int) -> Tuple[bool, int]:
    """Ordering rule for :psi(m) psibar(n):, returned as (psi_first, sign)."""
    return (True, 1) if m <= n else (False, -1)


def normal_order_pair_mode_criterion(m: int, n: int) -> Tuple[bool, int]:
    """Equivalent rule keyed on the psibar mode alone."""
    return (True, 1) if n >= 0 else (False, -1)


def _gen_on_monomial(g: Gen, mono: Monomial) -> Optional[Tuple[int, Monomial]]:
    """Single-generator left action on one monomial: (sign, monomial) or None."""
    if g[2] < 0:
        pos = bisect_left(mono, g)
        if pos < len(mono) and mono[pos] == g:
            return None
        return (-1 if pos & 1 else 1, mono[:pos] + (g,) + mono[pos:])
    partner = (g[0], 1 - g[1], -g[2] - 1)
    pos = bisect_left(mono, partner)
    if pos >= len(mono) or mono[pos] != partner:
        return None
    return (-1 if pos & 1 else 1, mono[:pos] + mono[pos + 1:])


def bilinear_on_monomial(i: int, p: int, m: int, j: int, pb: int, n: int,
                         mono: Monomial, N: int,
                         rule=normal_order_pair) -> Optional[Tuple[int, Monomial]]:
    """:psi_i^p(m) psibar_j^pb(n): on one monomial; at most one term."""
    psi_first, sign = rule(m, n)
    a, b = psi(i, p, m, N), psibar(j, pb, n, N)
    first, second = (b, a) if psi_first else (a, b)
    step = _gen_on_monomial(first, mono)
    if step is None:
        return None
    s1, mono1 = step
    step = _gen_on_monomial(second, mono1)
    if step is None:
        return None
    s2, mono2 = step
    return (sign * s1 * s2, mono2)


def apply_bilinear(i: int, p: int, m: int, j: int, pb: int, n: int,
                   vec: FockVector, N: int, rule=normal_order_pair) -> FockVector:
    """Apply :psi_i^p(m) psibar_j^pb(n): to vec."""
    out: Dict[Monomial, Fraction] = {}
    for mono, c in vec._terms.items():
        step = bilinear_on_monomial(i, p, m, j, pb, n, mono, N, rule)
        if step is None:
            continue
        sign, mono2 = step
        s = out.get(mono2, Fraction(0)) + (c if sign == 1 else -c)
        if s:
            out[mono2] = s
        elif mono2 in out:
            del out[mono2]
    v = FockVector.__new__(FockVector)
    v._terms = out
    return v


def rho_mat_on_monomial(i: int, j: int, m0: int, m1: int,
                        params: ParameterSet, mono: Monomial,
                        rule=normal_order_pair) -> Dict[Monomial, Fraction]:
    """One matrix-unit torus generator on one monomial.

    The mode sum is expanded over the finite window [m0 - d, d] (d the
    monomial degree) outside which both orderings kill the monomial; the
    diagonal scalar correction applies when m0 = 0, i = j, m1 != 0.
    """
    N, ell, q, a = params.N, params.ell, params.q, params.a
    if i > N or j > N:
        raise InvalidParams(f"matrix index out of range for N={N}")
    out: Dict[Monomial, Fraction] = {}
    d = monomial_degree(mono, N)
    lo = m0 - d
    if m1:
        ap = [qpow(x, m1) for x in a]
        qstep = qpow(q, -m1)
        qk = qpow(q, -m1 * lo)
    for k in range(lo, d + 1):
        for p in range(1, ell + 1):
            step = bilinear_on_monomial(i, p, m0 - k, j, p, k, mono, N, rule)
            if step is None:
                continue
            sign, mono2 = step
            cc = Fraction(sign) if m1 == 0 else sign * ap[p - 1] * qk
            s = out.get(mono2, Fraction(0)) + cc
            if s:
                out[mono2] = s
            elif mono2 in out:
                del out[mono2]
        if m1:
            qk *= qstep
    if m0 == 0 and i == j and m1 != 0:
        s0 = sum((qpow(ap, m1) for ap in a), Fraction(0))
        cc = s0 * qpow(q, m1) / (1 - qpow(q, m1))
        s = out.get(mono, Fraction(0)) + cc
        if s:
            out[mono] = s
        elif mono in out:
            del out[mono]
    return out


def rho_action(x: GlqElement, params: ParameterSet, vec: FockVector,
               rule=normal_order_pair) -> FockVector:
    """Action of the extended torus algebra: k0 -> ell, k1 -> 0, and
    E_{i,j} t0^m0 t1^m1 acting by the fermionic bilinear sums."""
    ell = params.ell
    acc: Dict[Monomial, Fraction] = {}

    def add(mono, c):
        s = acc.get(mono, Fraction(0)) + c
        if s:
            acc[mono] = s
        elif mono in acc:
            del acc[mono]

    for key, coeff in x.items():
        if key == K0:
            for mono, c in vec._terms.items():
                add(mono, c * coeff * ell)
            continue
        if key == K1:
            continue
        i, j, m0, m1 = key
        for mono, c in vec._terms.items():
            for mono2, c2 in rho_mat_on_monomial(i, j, m0, m1, params, mono, rule).items():
                add(mono2, c * coeff * c2)
    v = FockVector.__new__(FockVector)
    v._terms = acc
    return v


def gl_ell_action(r: int, s: int, vec: FockVector, N: int) -> FockVector:
    """The commuting finite general-linear action E_{r,s}."""
    acc: Dict[Monomial, Fraction] = {}
    for mono, c in vec._terms.items():
        d = monomial_degree(mono, N)
        for i in range(1, N + 1):
            for n in range(-d, d + 1):
                step = bilinear_on_monomial(i, r, -n, i, s, n, mono, N)
                if step is None:
                    continue
                sign, mono2 = step
                s2 = acc.get(mono2, Fraction(0)) + (c if sign == 1 else -c)
                if s2:
                    acc[mono2] = s2
                elif mono2 in acc:
                    del acc[mono2]
    v = FockVector.__new__(FockVector)
    v._terms = acc
    return v


def glbar_action(mrow: int, ncol: int, vec: FockVector, N: int, ell: int,
                 flavors: Optional[Sequence[int]] = None) -> FockVector:
    """Action of the centrally extended doubly-infinite matrix unit
    E_{mrow,ncol}; the optional flavor block restricts the sum."""
    m, i = (mrow - 1) // N, (mrow - 1) % N + 1
    n, j = (ncol - 1) // N, (ncol - 1) % N + 1
    out = FockVector.zero()
    for p in (flavors if flavors is not None else range(1, ell + 1)):
        out = out + apply_bilinear(i, p, -m, j, p, n, vec, N)
    return out


def hw_vector(mu: Sequence[int], params: ParameterSet) -> FockVector:
    """The product A(mu)|0> in flat coordinates; already canonically sorted."""
    N = params.N
    if len(mu) != params.ell:
        raise InvalidParams("mu must have length ell")
    gens: List[Gen] = []
    for p, m in enumerate(mu, start=1):
        if m >= 1:
            gens.extend((p, PSI, t) for t in range(-m, 0))
        elif m <= -1:
            gens.extend((p, PSIBAR, t) for t in range(m, 0))
    return FockVector.monomial(tuple(gens))


def hw_degree(mu: Sequence[int], params: ParameterSet) -> int:
    mono = next(iter(hw_vector(mu, params)._terms))
    return monomial_degree(mono, params.N)


def graded_dim(n: int, N: int, ell: int) -> int:
    """Dimension of the degree-n slice: coefficient of x^n in
    2^(N*ell) * prod_{m>=1} (1 + x^m)^(2*N*ell)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    coeffs = [0] * (n + 1)
    coeffs[0] = 2 ** (N * ell)
    for m in range(1, n + 1):
        for _ in range(2 * N * ell):
            for d in range(n, m - 1, -1):
                coeffs[d] += coeffs[d - m]
    return coeffs[n]


def creators_of_degree(d: int, N: int, ell: int) -> List[Gen]:
    out: List[Gen] = []
    for p in range(1, ell + 1):
        if d == 0:
            out.extend(psi(i, p, 0, N) for i in range(1, N + 1))
        else:
            out.extend(psi(i, p, -d, N) for i in range(1, N + 1))
            out.extend(psibar(i, p, -d, N) for i in range(1, N + 1))
    return sorted(out)


def basis_monomials(n: int, N: int, ell: int) -> List[Monomial]:
    """All canonical monomials of degree exactly n, sorted."""
    pools = [creators_of_degree(d, N, ell) for d in range(n + 1)]
    out: List[Monomial] = []

    def pick(d: int, chosen: List[Gen], remaining: int):
        if d > n:
            if remaining == 0:
                out.append(tuple(sorted(chosen)))
            return
        if d == 0:
            for r in range(len(pools[0]) + 1):
                for combo in itertools.combinations(pools[0], r):
                    pick(1, chosen + list(combo), remaining)
            return
        for r in range(0, remaining // d + 1):
            for combo in itertools.combinations(pools[d], r):
                pick(d + 1, chosen + list(combo), remaining - r * d)

    pick(0, [], n)
    return sorted(out)


def rho_action_tensor_oracle(x: GlqElement, params: ParameterSet,
                             vec: FockVector) -> FockVector:
    """Evaluation-module oracle: act factor by factor with the one-flavor
    level-one action at a = 1, weighting flavor p by a_p^{m1}.

    The bilinear operators are even, so splitting a monomial by flavor and
    reassembling introduces no sign.
    """
    N, ell, q, a = params.N, params.ell, params.q, params.a
    one = ParameterSet.of(q, [1], N)
    out = FockVector.zero()
    for key, coeff in x.items():
        if key == K0:
            out = out + vec.scale(coeff * ell)
            continue
        if key == K1:
            continue
        i, j, m0, m1 = key
        for mono, c in vec._terms.items():
            parts = {p: tuple((1, kind, idx) for (pp, kind, idx) in mono if pp == p)
                     for p in range(1, ell + 1)}
            for p in range(1, ell + 1):
                acted = rho_action(GlqElement.matrix_unit(i, j, m0, m1),
                                   one, FockVector.monomial(parts[p]))
                for sub, cs in acted._terms.items():
                    rebuilt = sorted(
                        [(p, kind, idx) for (_, kind, idx) in sub]
                        + [g for g in mono if g[0] != p])
                    out = out + FockVector.monomial(
                        tuple(rebuilt), c * cs * coeff * qpow(a[p - 1], m1))
    return out


# -- text form ---------------------------------------------------------------

def format_gen(g: Gen, N: int) -> str:
    name = "psi" if g[1] == PSI else "psibar"
    return f"{name}[{gen_label(g, N)},{g[0]}]({gen_mode(g, N)})"


def format_monomial(m: Monomial, N: int) -> str:
    if not m:
        return "|0>"
    return "*".join(format_gen(g, N) for g in m) + "|0>"


def vector_to_json(vec: FockVector, N: int) -> Dict[str, str]:
    return {format_monomial(m, N): str(c) for m, c in vec.items()}
