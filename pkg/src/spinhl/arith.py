"""Exact rational scalars, q-Pochhammer symbols, and seeded generic-point sampling.

Every scalar in this library is an exact ``fractions.Fraction``.  The square
root of q is carried as an independent rational parameter t with q = t**2, so
no algebraic field extensions are ever needed: all formulas are polynomial in
the square root of q.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

Rat = Fraction


class PoleError(ZeroDivisionError):
    """Raised when a denominator that must stay nonzero vanishes."""

    def __init__(self, what):
        super().__init__("vanishing denominator: %s" % what)
        self.what = what


def rat(value):
    """Coerce an int, Fraction, or 'p/q' string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError("cannot interpret %r as a rational" % (value,))


def rat_str(x):
    """Render a rational as 'p/q' with the denominator always present."""
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def qpoch(a, q, n):
    """q-Pochhammer symbol (a;q)_n = prod of (1 - a*q^i) over 0 <= i < n.

    The empty product (n = 0) is 1.
    """
    if n < 0:
        raise ValueError("negative length in q-Pochhammer symbol")
    out = Fraction(1)
    power = Fraction(1)
    for _ in range(n):
        out *= 1 - a * power
        power *= q
    return out


@dataclass(frozen=True)
class SpinParams:
    """Spin parameters: a finite prefix s_0 .. s_{p-1} followed by a constant tail.

    ``lookup(j)`` returns s_j, which equals the tail value for every j >= p.
    Shifting drops leading prefix entries; the tail is a single scalar and is
    never materialized.
    """

    prefix: tuple
    tail: Fraction

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(Fraction(v) for v in self.prefix))
        object.__setattr__(self, "tail", Fraction(self.tail))

    @property
    def p(self):
        return len(self.prefix)

    def lookup(self, j):
        if j < 0:
            raise IndexError("spin index must be non-negative")
        return self.prefix[j] if j < len(self.prefix) else self.tail

    def shift(self, m):
        """Spin sequence starting at s_m, i.e. j -> s_{j+m}."""
        return SpinParams(self.prefix[m:], self.tail)

    @classmethod
    def constant(cls, s):
        return cls((), Fraction(s))


@dataclass(frozen=True)
class ParamPoint:
    """A generic evaluation point: t = q^(1/2), gamma, spin sequence, and spectral values u_i."""

    t: Fraction
    gamma: Fraction
    spin: SpinParams
    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        object.__setattr__(self, "u", tuple(Fraction(v) for v in self.u))
        if len(set(self.u)) != len(self.u):
            raise ValueError("spectral parameters u_i must be pairwise distinct")

    @property
    def q(self):
        return self.t * self.t

    @property
    def n(self):
        return len(self.u)

    def s(self, j):
        return self.spin.lookup(j)

    def with_u(self, u):
        return ParamPoint(self.t, self.gamma, self.spin, tuple(u))

    def with_spin(self, spin):
        return ParamPoint(self.t, self.gamma, spin, self.u)

    def restrict(self, indices):
        """Point on the sub-family u_i, i in ``indices`` (0-based, kept in order)."""
        return self.with_u(tuple(self.u[i] for i in indices))


def _draw_rational(rng):
    # numerators and denominators in [2, 50]; reject values reducing to 1
    while True:
        val = Fraction(rng.randint(2, 50), rng.randint(2, 50))
        if val != 1:
            return val


def sample_point(seed, n, p=0, pole_list=(), max_tries=200):
    """Deterministically sample a generic ParamPoint with n spectral values.

    ``pole_list`` is an iterable of callables mapping a candidate point to a
    denominator value; candidates at which any of them vanishes are rejected.
    The u_i are always pairwise distinct.  Raises RuntimeError once the retry
    budget is exhausted, which signals a pathological pole list.
    """
    pole_list = tuple(pole_list)
    for attempt in range(max_tries):
        rng = random.Random(seed * 1000003 + attempt)
        t = _draw_rational(rng)
        gamma = _draw_rational(rng)
        tail = _draw_rational(rng)
        prefix = tuple(_draw_rational(rng) for _ in range(p))
        u = []
        while len(u) < n:
            cand = _draw_rational(rng)
            if cand not in u:
                u.append(cand)
        point = ParamPoint(t, gamma, SpinParams(prefix, tail), tuple(u))
        if all(fn(point) != 0 for fn in pole_list):
            return point
    raise RuntimeError(
        "sample_point: no generic point found after %d tries (seed=%r)" % (max_tries, seed)
    )
