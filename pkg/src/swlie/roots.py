"""Exact real-root isolation for univariate rational polynomials.

Dense coefficient lists [c0, c1, ...] over Fraction, Sturm sequences for
counting, bisection for refinement.  Everything is deterministic; the only
approximation is the final interval width.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from .errors import InputError

Coeffs = list[Fraction]


def trim(p: Sequence[Union[int, Fraction]]) -> Coeffs:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Coeffs) -> int:
    return len(trim(p)) - 1


def eval_at(p: Coeffs, x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(p):
        total = total * x + c
    return total


def derivative(p: Coeffs) -> Coeffs:
    return trim([c * i for i, c in enumerate(p)][1:])


def poly_divmod(num: Coeffs, den: Coeffs) -> tuple[Coeffs, Coeffs]:
    num = trim(num)
    den = trim(den)
    if not den:
        raise InputError("polynomial division by zero")
    quo = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    rem = num[:]
    dlead = den[-1]
    while len(rem) >= len(den) and any(c != 0 for c in rem):
        shift = len(rem) - len(den)
        factor = rem[-1] / dlead
        quo[shift] = factor
        for i, c in enumerate(den):
            rem[shift + i] -= factor * c
        rem = trim(rem)
        if not rem:
            break
    return trim(quo), trim(rem)


def _primitive(p: Coeffs) -> Coeffs:
    p = trim(p)
    if not p:
        return p
    num = 0
    den = 1
    for c in p:
        num = gcd(num, abs(c.numerator))
        den = den * c.denominator // gcd(den, c.denominator)
    scale = Fraction(den, num)
    if p[-1] < 0:
        scale = -scale
    return [c * scale for c in p]


def poly_gcd(a: Coeffs, b: Coeffs) -> Coeffs:
    a, b = trim(a), trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, trim(r)
    return _primitive(a) if a else a


def poly_mul(a: Coeffs, b: Coeffs) -> Coeffs:
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def poly_add(a: Coeffs, b: Coeffs) -> Coeffs:
    n = max(len(a), len(b))
    return trim(
        [
            (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
            for i in range(n)
        ]
    )


def poly_ext_gcd(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs, Coeffs]:
    """Extended Euclid over Q[x]: (g, s, t) with s*a + t*b = g, g monic
    unless zero."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, trim(r)
        s0, s1 = s1, poly_add(s0, [-c for c in poly_mul(q, s1)])
        t0, t1 = t1, poly_add(t0, [-c for c in poly_mul(q, t1)])
    if r0:
        lead = r0[-1]
        r0 = [c / lead for c in r0]
        s0 = [c / lead for c in s0]
        t0 = [c / lead for c in t0]
    return r0, s0, t0


def squarefree_part(p: Coeffs) -> Coeffs:
    p = trim(p)
    if len(p) <= 1:
        return p
    g = poly_gcd(p, derivative(p))
    if degree(g) <= 0:
        return _primitive(p)
    q, r = poly_divmod(p, g)
    if r:
        raise InputError("inexact division in squarefree reduction")
    return _primitive(q)


def sturm_chain(p: Coeffs) -> list[Coeffs]:
    p = trim(p)
    chain = [p, derivative(p)]
    while chain[-1]:
        _, r = poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_changes_at(chain: list[Coeffs], x: Fraction) -> int:
    signs = [s for s in (_sign(eval_at(p, x)) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sign_changes_at_inf(chain: list[Coeffs], positive: bool) -> int:
    signs = []
    for p in chain:
        s = _sign(p[-1])
        if not positive and (len(p) - 1) % 2 == 1:
            s = -s
        if s != 0:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: list[Coeffs], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    return sign_changes_at(chain, lo) - sign_changes_at(chain, hi)


def cauchy_bound(p: Coeffs) -> Fraction:
    p = trim(p)
    if len(p) <= 1:
        return Fraction(1)
    lead = abs(p[-1])
    bound = Fraction(1) + max(abs(c) for c in p[:-1]) / lead
    return bound


@dataclass(frozen=True)
class RootInterval:
    """One real root, either exact or bracketed to the requested width."""

    lo: Fraction
    hi: Fraction
    exact: bool

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def as_float(self) -> float:
        return float(self.midpoint)

    def to_dict(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "exact": self.exact,
            "approx": float(self.midpoint),
        }


def real_roots(
    p: Sequence[Union[int, Fraction]],
    width: Fraction = Fraction(1, 10**9),
    lo: Fraction | None = None,
    hi: Fraction | None = None,
) -> list[RootInterval]:
    """Distinct real roots of p, each isolated then refined below `width`.

    Searches (lo, hi] when bounds are given, otherwise all of R via the
    Cauchy bound.  Raises on the zero polynomial; constants have no roots.
    """
    if width <= 0:
        raise InputError("width must be positive")
    sf = squarefree_part(trim(p))
    if not sf:
        raise InputError("the zero polynomial has every point as a root")
    if len(sf) == 1:
        return []
    chain = sturm_chain(sf)
    bound = cauchy_bound(sf)
    a = lo if lo is not None else -bound
    b = hi if hi is not None else bound
    if a >= b:
        return []

    roots: list[RootInterval] = []

    def emit_exact(x: Fraction) -> None:
        roots.append(RootInterval(x, x, True))

    def refine(a: Fraction, b: Fraction) -> None:
        # one simple root in (a, b], f(a) != 0
        fa = eval_at(sf, a)
        fb = eval_at(sf, b)
        if fb == 0:
            emit_exact(b)
            return
        while b - a > width:
            m = (a + b) / 2
            fm = eval_at(sf, m)
            if fm == 0:
                emit_exact(m)
                return
            if _sign(fa) * _sign(fm) < 0:
                b, fb = m, fm
            else:
                a, fa = m, fm
        roots.append(RootInterval(a, b, False))

    def isolate(a: Fraction, b: Fraction, n: int) -> None:
        if n == 0:
            return
        if n == 1:
            refine(a, b)
            return
        m = (a + b) / 2
        if eval_at(sf, m) == 0:
            emit_exact(m)
            shift = width / 4
            while True:
                if eval_at(sf, m - shift) != 0 and eval_at(sf, m + shift) != 0:
                    left = count_roots(chain, a, m - shift)
                    right = count_roots(chain, m + shift, b)
                    if left + right + 1 == n:
                        break
                shift /= 2
            isolate(a, m - shift, left)
            isolate(m + shift, b, right)
            return
        left = count_roots(chain, a, m)
        isolate(a, m, left)
        isolate(m, b, n - left)

    # make the left edge exclusive-safe: a root exactly at `a` is outside (a, b]
    total = count_roots(chain, a, b)
    if eval_at(sf, a) == 0 and lo is None:
        # widen so the Cauchy-bound edge cannot sit on a root
        a -= 1
        total = count_roots(chain, a, b)
    isolate(a, b, total)
    roots.sort(key=lambda r: (r.lo, r.hi))
    return roots


def cbrt(x: float) -> float:
    """Real cube root with sign (math.cbrt arrived in 3.11)."""
    return x ** (1.0 / 3.0) if x >= 0 else -((-x) ** (1.0 / 3.0))
