"""Exact rational scalars, the (q, a) parameter data, and genericity checks.

Every coefficient in the package is a `fractions.Fraction`; no floating
point arithmetic occurs anywhere.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .errors import InvalidParams, InvalidQ, NotGeneric

Scalar = Fraction
Rational = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(x: Rational) -> Fraction:
    """Coerce ints, Fractions, or "p/r" strings to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise InvalidParams(f"not an exact rational: {x!r}")


def format_scalar(x: Fraction) -> str:
    """Render as "p/r" (or plain "p"), sign on the numerator."""
    return str(x)


def parse_scalar(s: str) -> Fraction:
    return as_scalar(s)


def qpow(q: Fraction, n: int) -> Fraction:
    """q**n for any integer n, exactly."""
    return Fraction(q) ** n


def check_q(q: Fraction) -> Fraction:
    q = as_scalar(q)
    if q in (0, 1, -1):
        raise InvalidQ(f"q = {q} is excluded")
    return q


@dataclass(frozen=True)
class SetPartition:
    """A set partition of {1, ..., ell}; blocks sorted, ordered by minimum."""

    blocks: Tuple[Tuple[int, ...], ...]

    @staticmethod
    def of(blocks: Sequence[Sequence[int]]) -> "SetPartition":
        norm = tuple(sorted((tuple(sorted(b)) for b in blocks), key=min))
        seen = set()
        for b in norm:
            if not b:
                raise InvalidParams("empty block")
            seen.update(b)
        ell = sum(len(b) for b in norm)
        if seen != set(range(1, ell + 1)):
            raise InvalidParams(f"blocks {norm} do not partition 1..{ell}")
        return SetPartition(norm)

    @staticmethod
    def discrete(ell: int) -> "SetPartition":
        return SetPartition(tuple((i,) for i in range(1, ell + 1)))

    @staticmethod
    def full(ell: int) -> "SetPartition":
        return SetPartition((tuple(range(1, ell + 1)),))

    @property
    def ell(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_of(self, i: int) -> Tuple[int, ...]:
        for b in self.blocks:
            if i in b:
                return b
        raise KeyError(i)

    def same_block(self, i: int, j: int) -> bool:
        return j in self.block_of(i)

    def shifted(self, offset: int) -> "SetPartition":
        return SetPartition(tuple(tuple(i + offset for i in b) for b in self.blocks))

    def union(self, other: "SetPartition") -> "SetPartition":
        """Disjoint union; `other` is re-indexed to start after self."""
        return SetPartition.of(list(self.blocks) + list(other.shifted(self.ell).blocks))

    def power(self, m: int) -> "SetPartition":
        """The partition {k*ell + B} of {1..m*ell} made of m shifted copies."""
        ell = self.ell
        blocks = [tuple(k * ell + i for i in b) for k in range(m) for b in self.blocks]
        return SetPartition.of(blocks)

    def describe(self) -> str:
        return "blocks=" + str([list(b) for b in self.blocks])


@dataclass(frozen=True)
class ParameterSet:
    """The specialization data (q, a_1..a_ell) for a fixed N >= 2."""

    q: Fraction
    a: Tuple[Fraction, ...]
    N: int

    def __post_init__(self):
        check_q(self.q)
        if self.N < 2:
            raise InvalidParams("N must be >= 2")
        if any(x == 0 for x in self.a):
            raise InvalidParams("all a_p must be nonzero")

    @staticmethod
    def of(q: Rational, a: Sequence[Rational], N: int) -> "ParameterSet":
        return ParameterSet(as_scalar(q), tuple(as_scalar(x) for x in a), N)

    @property
    def ell(self) -> int:
        return len(self.a)

    def spectrum_partition(self) -> SetPartition:
        return validate_spectrum(self.a, self.q)


def gamma_q_exponent(x: Rational, q: Rational) -> Optional[int]:
    """Return n with x == q**n, or None if x is not in the cyclic group of q.

    For rational q with |q| not in {0, 1} the exponent is unique; the search
    is bounded because |q|**n is monotone in n and must reach |x| exactly.
    """
    x = as_scalar(x)
    q = check_q(q)
    if x == 0:
        raise InvalidParams("x must be nonzero")
    if x == 1:
        return 0
    if abs(q) < 1:
        n = gamma_q_exponent(x, 1 / q)
        return None if n is None else -n
    # |q| > 1 now; walk |q|**n toward |x| and compare exactly at each step.
    if abs(x) > 1:
        acc, n = q, 1
        while abs(acc) <= abs(x):
            if acc == x:
                return n
            acc *= q
            n += 1
        return None
    acc, n = 1 / q, -1
    while abs(acc) >= abs(x):
        if acc == x:
            return n
        acc /= q
        n -= 1
    return None


def validate_spectrum(a: Sequence[Rational], q: Rational) -> SetPartition:
    """Check the genericity condition on (a_1..a_ell) and return its partition.

    For every pair, either a_i == a_j or a_i/a_j is not an integer power
    of q.  Violations raise NotGeneric(i, j, n) with a_i = q^n a_j, n > 0.
    """
    q = check_q(q)
    vals = [as_scalar(x) for x in a]
    if any(v == 0 for v in vals):
        raise InvalidParams("all a_p must be nonzero")
    ell = len(vals)
    for i, j in itertools.permutations(range(1, ell + 1), 2):
        if vals[i - 1] == vals[j - 1]:
            continue
        n = gamma_q_exponent(vals[i - 1] / vals[j - 1], q)
        if n is not None and n > 0:
            raise NotGeneric(i, j, n)
    blocks = []
    for i in range(1, ell + 1):
        for b in blocks:
            if vals[b[0] - 1] == vals[i - 1]:
                b.append(i)
                break
        else:
            blocks.append([i])
    return SetPartition.of(blocks)


def block_representatives(a: Sequence[Rational], part: SetPartition) -> Tuple[Fraction, ...]:
    vals = [as_scalar(x) for x in a]
    return tuple(vals[b[0] - 1] for b in part.blocks)
