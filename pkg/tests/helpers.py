"""Shared exact-arithmetic helpers for the test suite.

The random-algebra generator works by change of basis: starting from a
catalog algebra at numeric parameters, conjugate the structure constants
and the metric by a random invertible rational matrix.  The result is
guaranteed to satisfy the Jacobi identity and to be isometric to the
original, so every frame-independent quantity must survive unchanged.
"""
from __future__ import annotations

import random
from fractions import Fraction

from swlie import (
    Metric,
    MetricLieAlgebra,
    StructureConstants,
    Tensor,
    build_family,
)

Mat = list[list[Fraction]]


def mat_det(P: Mat) -> Fraction:
    a, b, c = P[0]
    d, e, f = P[1]
    g, h, i = P[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def mat_inverse(P: Mat) -> Mat:
    """Exact 3x3 inverse via the adjugate."""
    det = mat_det(P)
    if det == 0:
        raise ZeroDivisionError("matrix is singular")
    a, b, c = P[0]
    d, e, f = P[1]
    g, h, i = P[2]
    adj = [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]
    return [[entry / det for entry in row] for row in adj]


def conjugate(mla: MetricLieAlgebra, P: Mat, name: str = "conjugated") -> MetricLieAlgebra:
    """Change of basis f_i = sum_j P[j][i] e_j applied to a numeric algebra.

    New structure constants: c'[d][i][j] = sum P[a][i] P[b][j] c[c][a][b] Q[d][c]
    with Q = P^-1, and the metric pulls back as g' = P^T g P.
    """
    if mla.is_symbolic():
        raise ValueError("conjugation helper only handles numeric algebras")
    Q = mat_inverse(P)
    dim = mla.dim
    c = mla.sc.c

    def new_c(idx: tuple[int, ...]) -> Fraction:
        d_, i_, j_ = idx
        total = Fraction(0)
        for a in range(dim):
            for b in range(dim):
                for cc in range(dim):
                    val = c.item(cc, a, b)
                    if val == 0:
                        continue
                    total += P[a][i_] * P[b][j_] * val * Q[d_][cc]
        return total

    g = mla.metric.g

    def new_g(idx: tuple[int, ...]) -> Fraction:
        i_, j_ = idx
        return sum(
            (P[a][i_] * g.item(a, b) * P[b][j_] for a in range(dim) for b in range(dim)),
            Fraction(0),
        )

    sc = StructureConstants(Tensor.from_function(dim, "ull", new_c))
    metric = Metric(Tensor.from_function(dim, "ll", new_g))
    return MetricLieAlgebra(name, (), sc, metric)


def random_invertible(rng: random.Random, span: int = 3) -> Mat:
    while True:
        P = [
            [Fraction(rng.randint(-span, span), rng.randint(1, 2)) for _ in range(3)]
            for _ in range(3)
        ]
        if mat_det(P) != 0:
            return P


def random_nonzero(rng: random.Random, span: int = 4) -> Fraction:
    while True:
        v = Fraction(rng.randint(-span, span), rng.randint(1, 3))
        if v != 0:
            return v


def random_catalog_numeric(rng: random.Random) -> MetricLieAlgebra:
    """A catalog algebra at random rational parameters (Jacobi always holds)."""
    family = rng.choice(("A1", "A2", "A3", "A4-variant"))
    if family == "A1":
        params = {k: Fraction(rng.randint(-4, 4)) for k in ("l1", "l2", "l3")}
    elif family == "A2":
        params = {k: Fraction(rng.randint(-4, 4)) for k in ("l1", "l2")}
    elif family == "A3":
        params = {"l": Fraction(rng.randint(-4, 4))}
    else:
        params = {
            "a": Fraction(rng.randint(-3, 3)),
            "b": random_nonzero(rng, 3),
            "l3": Fraction(rng.randint(-3, 3)),
        }
    return build_family(family, params)


def random_conjugated_algebra(rng: random.Random) -> MetricLieAlgebra:
    base = random_catalog_numeric(rng)
    return conjugate(base, random_invertible(rng), name=f"rnd-{base.name}")
