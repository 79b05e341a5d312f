"""Curvature pipeline on left-invariant frames.

Everything here acts on frame-constant tensors, so partial derivatives
vanish identically and covariant derivatives reduce to Christoffel
contractions.  Sign and slot conventions for those contractions vary in
the literature; this module fixes one stack, recorded in CONVENTION_TAG
and pinned by the calibration tests against published component tables:

- Christoffel symbols from the Koszul formula
  2<nabla_{E_i}E_j, E_k> = <[E_i,E_j],E_k> - <[E_j,E_k],E_i> + <[E_k,E_i],E_j>
  (the unique torsion-free metric-compatible choice).
- Curvature R(E_i,E_j)E_k = nabla_j nabla_i E_k - nabla_i nabla_j E_k
  + nabla_{[E_i,E_j]} E_k, Ricci r_ij = R^k_{ikj}, scalar rho = g^{ij} r_ij.
- Rank-2 curvature potential A = r - rho*g/4 (dimension 3), with
  SW_ijk = A_ij,k - A_ik,j.
- Covariant derivative of a covariant tensor, derivative slot appended
  last: DerivConvention.PAPER uses T_{..,k} = +sum_s T[..l..] G^l_{k i_s},
  DerivConvention.STANDARD the textbook negative of the same contraction.
- Vector fields: PAPER uses V^i_{,k} = -V^l G^i_{lk}; STANDARD the
  textbook V^i_{,k} = +V^l G^i_{kl}.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebras import MetricLieAlgebra, StructureConstants
from .errors import InputError
from .scalars import (
    Polynomial,
    Scalar,
    scalar_add,
    scalar_is_zero,
    scalar_mul,
    scalar_neg,
    scalar_sub,
)
from .tensors import Metric, Tensor, VarianceError


class DerivConvention(enum.Enum):
    PAPER = "paper"
    STANDARD = "standard"


#: Gamma slot carrying the derivative index in cov_deriv: "first" means
#: G^l_{k i} for derivative index k, "second" means G^l_{i k}.  Pinned by
#: the calibration suite; see tests/test_calibration.py.
SW_DERIV_SLOT = "first"

CONVENTION_TAG = (
    "koszul:curvature-reversed-commutator:ricci-r^k_ikj:"
    f"deriv-paper-plus-{SW_DERIV_SLOT}-slot"
)


@dataclass(frozen=True)
class Connection:
    """gamma.item(m, i, j) is Gamma^m_{ij}: nabla_{E_i} E_j = Gamma^m_{ij} E_m."""

    gamma: Tensor

    @property
    def dim(self) -> int:
        return self.gamma.dim


def christoffel(mla: MetricLieAlgebra) -> Connection:
    n = mla.dim
    g = mla.metric.g
    g_inv = mla.metric.g_inv
    c = mla.sc.c

    def c_low(i: int, j: int, k: int) -> Scalar:
        # <[E_i,E_j], E_k>
        total: Scalar = Fraction(0)
        for l in range(n):
            total = scalar_add(total, scalar_mul(c.item(l, i, j), g.item(l, k)))
        return total

    half = Fraction(1, 2)
    lowered = [
        [
            [
                scalar_mul(
                    half,
                    scalar_add(
                        scalar_sub(c_low(i, j, k), c_low(j, k, i)), c_low(k, i, j)
                    ),
                )
                for k in range(n)
            ]
            for j in range(n)
        ]
        for i in range(n)
    ]

    def entry(idx: tuple[int, ...]) -> Scalar:
        m, i, j = idx
        total: Scalar = Fraction(0)
        for k in range(n):
            total = scalar_add(total, scalar_mul(g_inv.item(m, k), lowered[i][j][k]))
        return total

    return Connection(Tensor.from_function(n, "ull", entry))


def riemann(conn: Connection, sc: StructureConstants) -> Tensor:
    """R.item(l, i, j, k) = R^l_{ijk} for R(E_i,E_j)E_k with the reversed
    commutator: nabla_j nabla_i E_k - nabla_i nabla_j E_k + nabla_{[E_i,E_j]}E_k."""
    n = conn.dim
    gamma = conn.gamma
    c = sc.c

    def entry(idx: tuple[int, ...]) -> Scalar:
        l, i, j, k = idx
        total: Scalar = Fraction(0)
        for m in range(n):
            total = scalar_add(
                total, scalar_mul(gamma.item(m, i, k), gamma.item(l, j, m))
            )
            total = scalar_sub(
                total, scalar_mul(gamma.item(m, j, k), gamma.item(l, i, m))
            )
            total = scalar_add(total, scalar_mul(c.item(m, i, j), gamma.item(l, m, k)))
        return total

    return Tensor.from_function(n, "ulll", entry)


def ricci_and_scalar(R: Tensor, metric: Metric) -> tuple[Tensor, Scalar]:
    """r(E_i,E_j) = trace(Z -> R(E_i,Z)E_j) = R^k_{ikj}; rho = g^{ij} r_ij."""
    n = R.dim

    def entry(idx: tuple[int, ...]) -> Scalar:
        i, j = idx
        total: Scalar = Fraction(0)
        for k in range(n):
            total = scalar_add(total, R.item(k, i, k, j))
        return total

    r = Tensor.from_function(n, "ll", entry)
    rho: Scalar = Fraction(0)
    for i in range(n):
        for j in range(n):
            rho = scalar_add(rho, scalar_mul(metric.g_inv.item(i, j), r.item(i, j)))
    return r, rho


def curvature_potential(r: Tensor, rho: Scalar, metric: Metric) -> Tensor:
    """A = (r - rho*g/(2(n-1)))/(n-2); in dimension 3, A = r - rho*g/4."""
    n = r.dim
    if n < 3:
        raise InputError(f"curvature potential needs dim >= 3, got {n}")
    shift = Fraction(1, 2 * (n - 1))
    scale = Fraction(1, n - 2)

    def entry(idx: tuple[int, ...]) -> Scalar:
        i, j = idx
        return scalar_mul(
            scale,
            scalar_sub(
                r.item(i, j), scalar_mul(shift, scalar_mul(rho, metric.g.item(i, j)))
            ),
        )

    return Tensor.from_function(n, "ll", entry)


def _deriv_term(gamma: Tensor, sign: int, slot: str, l: int, tensor_idx: int, k: int) -> Scalar:
    if slot == "first":
        value = gamma.item(l, k, tensor_idx)
    elif slot == "second":
        value = gamma.item(l, tensor_idx, k)
    else:
        raise InputError(f"unknown derivative slot {slot!r}")
    return scalar_neg(value) if sign < 0 else value


def cov_deriv_ex(T: Tensor, conn: Connection, sign: int, slot: str) -> Tensor:
    """Covariant derivative with explicit sign and Gamma slot choice
    (calibration machinery; public code paths use cov_deriv)."""
    if "u" in T.variance:
        raise VarianceError("cov_deriv handles covariant tensors only")
    n = T.dim
    gamma = conn.gamma
    p = T.rank
    if p == 0:
        return Tensor.zeros(n, "l")

    def entry(idx: tuple[int, ...]) -> Scalar:
        base = idx[:p]
        k = idx[p]
        total: Scalar = Fraction(0)
        for s in range(p):
            for l in range(n):
                src = base[:s] + (l,) + base[s + 1 :]
                total = scalar_add(
                    total,
                    scalar_mul(
                        T.item(*src), _deriv_term(gamma, sign, slot, l, base[s], k)
                    ),
                )
        return total

    return Tensor.from_function(n, T.variance + "l", entry)


def cov_deriv(
    T: Tensor, conn: Connection, mode: DerivConvention = DerivConvention.PAPER
) -> Tensor:
    """T_{i_1..i_p,k} with the derivative index k appended as the last slot."""
    sign = 1 if mode is DerivConvention.PAPER else -1
    return cov_deriv_ex(T, conn, sign, SW_DERIV_SLOT)


def vector_cov_deriv(
    V: Tensor, conn: Connection, mode: DerivConvention = DerivConvention.PAPER
) -> Tensor:
    """V^i_{,k}: PAPER = -V^l G^i_{lk}; STANDARD = +V^l G^i_{kl}."""
    if V.variance != "u":
        raise VarianceError("vector_cov_deriv takes a contravariant vector")
    n = V.dim
    gamma = conn.gamma

    def entry(idx: tuple[int, ...]) -> Scalar:
        i, k = idx
        total: Scalar = Fraction(0)
        for l in range(n):
            if mode is DerivConvention.PAPER:
                total = scalar_sub(
                    total, scalar_mul(V.item(l), gamma.item(i, l, k))
                )
            else:
                total = scalar_add(
                    total, scalar_mul(V.item(l), gamma.item(i, k, l))
                )
        return total

    return Tensor.from_function(n, "ul", entry)


def curl(T: Tensor, conn: Connection, mode: DerivConvention = DerivConvention.PAPER) -> Tensor:
    """curl(T)_{t i_1..i_p} = T_{i_1..i_p,t} - sum_s T_{i_1..t..i_p,i_s}."""
    if "u" in T.variance:
        raise VarianceError("curl handles covariant tensors only")
    p = T.rank
    if p == 0:
        raise VarianceError("curl needs rank >= 1")
    dT = cov_deriv(T, conn, mode)

    def entry(idx: tuple[int, ...]) -> Scalar:
        t = idx[0]
        base = idx[1:]
        total = dT.item(*base, t)
        for s in range(p):
            swapped = base[:s] + (t,) + base[s + 1 :]
            total = scalar_sub(total, dT.item(*swapped, base[s]))
        return total

    return Tensor.from_function(T.dim, "l" * (p + 1), entry)


def divergence(
    T: Tensor,
    conn: Connection,
    metric: Metric,
    slot: int = 0,
    mode: DerivConvention = DerivConvention.PAPER,
) -> Tensor:
    """g^{st} T_{..s..,t} contracting the chosen covariant slot with the
    derivative index."""
    if "u" in T.variance:
        raise VarianceError("divergence handles covariant tensors only")
    if not 0 <= slot < T.rank:
        raise VarianceError(f"slot {slot} out of range for rank {T.rank}")
    dT = cov_deriv(T, conn, mode)
    n = T.dim

    def entry(idx: tuple[int, ...]) -> Scalar:
        total: Scalar = Fraction(0)
        for s in range(n):
            for t in range(n):
                src = idx[:slot] + (s,) + idx[slot:]
                total = scalar_add(
                    total,
                    scalar_mul(metric.g_inv.item(s, t), dT.item(*src, t)),
                )
        return total

    return Tensor.from_function(n, "l" * (T.rank - 1), entry)


# --- assembled pipeline ---


@dataclass(frozen=True)
class CurvatureBundle:
    mla: MetricLieAlgebra
    conn: Connection
    R: Tensor
    r: Tensor
    rho: Scalar
    A: Tensor
    SW: Tensor

    def norm2_sw(self) -> Scalar:
        return self.mla.metric.norm_squared(self.SW)


def curvature_bundle(
    mla: MetricLieAlgebra, mode: DerivConvention = DerivConvention.PAPER
) -> CurvatureBundle:
    conn = christoffel(mla)
    R = riemann(conn, mla.sc)
    r, rho = ricci_and_scalar(R, mla.metric)
    A = curvature_potential(r, rho, mla.metric)
    dA = cov_deriv(A, conn, mode)

    def sw_entry(idx: tuple[int, ...]) -> Scalar:
        i, j, k = idx
        return scalar_sub(dA.item(i, j, k), dA.item(i, k, j))

    SW = Tensor.from_function(mla.dim, "lll", sw_entry)
    return CurvatureBundle(mla, conn, R, r, rho, A, SW)


def sw_tensor(mla: MetricLieAlgebra, mode: DerivConvention = DerivConvention.PAPER) -> Tensor:
    return curvature_bundle(mla, mode).SW


def sw_norm2(mla: MetricLieAlgebra, mode: DerivConvention = DerivConvention.PAPER) -> Scalar:
    return curvature_bundle(mla, mode).norm2_sw()


def sw_curl(mla: MetricLieAlgebra, mode: DerivConvention = DerivConvention.PAPER) -> Tensor:
    bundle = curvature_bundle(mla, mode)
    return curl(bundle.SW, bundle.conn, mode)


def sw_divergence(
    mla: MetricLieAlgebra,
    kind: str = "I",
    mode: DerivConvention = DerivConvention.PAPER,
) -> Tensor:
    """Type I contracts the first SW slot with the derivative index
    (g^{it} SW_{ijk,t}); type II the second (g^{jt} SW_{ijk,t})."""
    if kind not in ("I", "II"):
        raise InputError(f"divergence kind must be 'I' or 'II', got {kind!r}")
    bundle = curvature_bundle(mla, mode)
    slot = 0 if kind == "I" else 1
    return divergence(bundle.SW, bundle.conn, mla.metric, slot=slot, mode=mode)


def extend_tensor(T: Tensor, variables: Sequence[str]) -> Tensor:
    """Re-express polynomial entries over a superset variable tuple."""
    target = tuple(variables)

    def widen(x: Scalar) -> Scalar:
        if isinstance(x, Polynomial):
            return x.extend(target)
        return x

    return T.map(widen)


def vector_symbols(mla: MetricLieAlgebra) -> tuple[tuple[str, ...], Tensor]:
    """Adjoin V1, V2, V3 to the algebra parameters; returns (variables, V)."""
    names = tuple(f"V{i + 1}" for i in range(mla.dim))
    clash = [v for v in names if v in mla.variables]
    if clash:
        raise InputError(f"vector symbols {clash} collide with parameters")
    variables = mla.variables + names
    V = Tensor.from_function(
        mla.dim, "u", lambda idx: Polynomial.var(variables, names[idx[0]])
    )
    return variables, V


def sw_contract(
    mla: MetricLieAlgebra,
    V: Tensor,
    mode: DerivConvention = DerivConvention.PAPER,
) -> Tensor:
    """w_ij = V^k SW_kij (contraction on the first SW slot)."""
    if V.variance != "u" or V.dim != mla.dim:
        raise InputError("V must be a contravariant vector of matching dimension")
    SW = sw_tensor(mla, mode)
    variables = _merged_variables(SW, V)
    SW = extend_tensor(SW, variables)
    V = extend_tensor(V, variables)
    n = mla.dim

    def entry(idx: tuple[int, ...]) -> Scalar:
        i, j = idx
        total: Scalar = Fraction(0)
        for k in range(n):
            total = scalar_add(total, scalar_mul(V.item(k), SW.item(k, i, j)))
        return total

    return Tensor.from_function(n, "ll", entry)


def _merged_variables(*tensors: Tensor) -> tuple[str, ...]:
    merged: list[str] = []
    for T in tensors:
        for x in T.data:
            if isinstance(x, Polynomial):
                for v in x.variables:
                    if v not in merged:
                        merged.append(v)
    return tuple(merged)


def tensor2_curl_div(
    w: Tensor,
    conn: Connection,
    metric: Metric,
    mode: DerivConvention = DerivConvention.PAPER,
) -> tuple[Tensor, Tensor]:
    """curl(w)_{tij} = w_{ij,t} - w_{tj,i} - w_{it,j}; div(w)_j = g^{it} w_{ij,t}."""
    if w.variance != "ll":
        raise VarianceError("tensor2_curl_div takes a rank-2 covariant tensor")
    variables = _merged_variables(w, conn.gamma)
    w = extend_tensor(w, variables)
    gamma = extend_tensor(conn.gamma, variables)
    conn = Connection(gamma)
    return (
        curl(w, conn, mode),
        divergence(w, conn, metric, slot=0, mode=mode),
    )


@dataclass(frozen=True)
class VectorOps:
    cov_deriv: Tensor
    curl: Tensor
    div: Scalar
    norm2: Scalar


def vector_ops(
    mla: MetricLieAlgebra,
    V: Tensor,
    mode: DerivConvention = DerivConvention.PAPER,
) -> VectorOps:
    """curl(V)^{ij} = V^i_{,j} - V^j_{,i}, div(V) = V^i_{,i}, norm2 = g_ij V^i V^j."""
    if V.variance != "u" or V.dim != mla.dim:
        raise InputError("V must be a contravariant vector of matching dimension")
    conn = christoffel(mla)
    variables = _merged_variables(V, conn.gamma, mla.metric.g)
    V = extend_tensor(V, variables)
    conn = Connection(extend_tensor(conn.gamma, variables))
    g = extend_tensor(mla.metric.g, variables)
    dV = vector_cov_deriv(V, conn, mode)
    n = mla.dim

    def curl_entry(idx: tuple[int, ...]) -> Scalar:
        i, j = idx
        return scalar_sub(dV.item(i, j), dV.item(j, i))

    curl_t = Tensor.from_function(n, "uu", curl_entry)
    div: Scalar = Fraction(0)
    for i in range(n):
        div = scalar_add(div, dV.item(i, i))
    norm2: Scalar = Fraction(0)
    for i in range(n):
        for j in range(n):
            norm2 = scalar_add(
                norm2, scalar_mul(g.item(i, j), scalar_mul(V.item(i), V.item(j)))
            )
    return VectorOps(dV, curl_t, div, norm2)


# --- predicates ---


@dataclass(frozen=True)
class PredicateReport:
    which: str
    symbolic: bool
    verdict: bool | None
    conditions: tuple[Polynomial, ...]
    details: dict


def _condition_set(entries: Sequence[Scalar]) -> tuple[Polynomial, ...]:
    """Normalized primitive polynomials of the nonzero entries, deduplicated,
    sorted canonically."""
    seen: dict[str, Polynomial] = {}
    for x in entries:
        if isinstance(x, Polynomial):
            if x.is_zero:
                continue
            prim = x.primitive()
        else:
            if x == 0:
                continue
            prim = Polynomial.const((), Fraction(1))
        seen.setdefault(prim.to_str(), prim)
    return tuple(seen[k] for k in sorted(seen))


def predicates(
    mla: MetricLieAlgebra,
    which: str,
    V: Tensor | None = None,
    mode: DerivConvention = DerivConvention.PAPER,
) -> PredicateReport:
    """Verdicts for 'isotropic', 'almost-harmonic', 'harmonic-w', 'harmonic-v'.

    Numeric algebras give booleans; symbolic ones return the defining
    polynomial condition set instead (verdict None).
    """
    symbolic = mla.is_symbolic()
    if which == "isotropic":
        bundle = curvature_bundle(mla, mode)
        norm2 = bundle.norm2_sw()
        sw_nonzero = not bundle.SW.is_zero()
        if symbolic:
            return PredicateReport(
                which,
                True,
                None,
                _condition_set([norm2]),
                {"sw_identically_zero": not sw_nonzero},
            )
        return PredicateReport(
            which,
            False,
            scalar_is_zero(norm2) and sw_nonzero,
            (),
            {"norm2": norm2, "sw_nonzero": sw_nonzero},
        )
    if which == "almost-harmonic":
        bundle = curvature_bundle(mla, mode)
        curl_sw = curl(bundle.SW, bundle.conn, mode)
        div_sw = divergence(bundle.SW, bundle.conn, mla.metric, slot=0, mode=mode)
        entries = list(curl_sw.data) + list(div_sw.data)
        if symbolic:
            return PredicateReport(
                which, True, None, _condition_set(entries), {}
            )
        return PredicateReport(
            which,
            False,
            all(scalar_is_zero(x) for x in entries),
            (),
            {},
        )
    if which == "harmonic-w":
        if V is None:
            raise InputError("harmonic-w needs a vector")
        w = sw_contract(mla, V, mode)
        conn = christoffel(mla)
        curl_w, div_w = tensor2_curl_div(w, conn, mla.metric, mode)
        entries = list(curl_w.data) + list(div_w.data)
        if symbolic or any(isinstance(x, Polynomial) and not x.is_constant() for x in entries):
            return PredicateReport(which, True, None, _condition_set(entries), {})
        return PredicateReport(
            which, False, all(scalar_is_zero(x) for x in entries), (), {}
        )
    if which == "harmonic-v":
        if V is None:
            raise InputError("harmonic-v needs a vector")
        ops = vector_ops(mla, V, mode)
        entries = list(ops.curl.data) + [ops.div]
        if symbolic or any(isinstance(x, Polynomial) and not x.is_constant() for x in entries):
            return PredicateReport(
                which, True, None, _condition_set(entries), {"norm2": str(ops.norm2)}
            )
        return PredicateReport(
            which,
            False,
            all(scalar_is_zero(x) for x in entries),
            (),
            {"norm2": ops.norm2},
        )
    raise InputError(
        f"unknown predicate {which!r}; expected isotropic, almost-harmonic, "
        "harmonic-w, or harmonic-v"
    )
