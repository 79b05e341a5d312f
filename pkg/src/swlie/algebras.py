"""Metric Lie algebras on frames: structure constants, the catalog of
3-dimensional unimodular families A1-A4, validators, and JSON I/O.

Structure constants are stored as a rank-3 tensor c with c.item(k, i, j)
the coefficient of e_k in [e_i, e_j]; antisymmetry in (i, j) is enforced
at construction.  Entries are rationals or polynomials over the declared
parameter variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import InputError
from .scalars import (
    Polynomial,
    PolynomialSyntaxError,
    Scalar,
    encode_scalar,
    parse_polynomial,
    scalar_add,
    scalar_is_zero,
    scalar_mul,
    scalar_neg,
)
from .tensors import Metric, Tensor

LIE_TYPES = ("su(2)", "sl(2,R)", "e(2)", "e(1,1)", "h", "R^3")

FAMILY_IDS = ("A1", "A2", "A3", "A4", "A4-variant")


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[int, int, int]
    components: tuple[Scalar, ...]


@dataclass(frozen=True)
class StructureConstants:
    c: Tensor

    def __post_init__(self) -> None:
        if self.c.variance != "ull":
            raise InputError("structure constants need variance 'ull'")
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    skew = scalar_add(self.c.item(k, i, j), self.c.item(k, j, i))
                    if not scalar_is_zero(skew):
                        raise InputError(
                            f"structure constants not antisymmetric at ({k},{i},{j})"
                        )

    @property
    def dim(self) -> int:
        return self.c.dim

    @staticmethod
    def from_brackets(
        dim: int, brackets: Mapping[tuple[int, int], Mapping[int, Scalar]]
    ) -> "StructureConstants":
        """Build from 1-indexed brackets: {(i, j): {k: coeff}} meaning
        [e_i, e_j] = sum_k coeff * e_k; the (j, i) entries are filled in."""
        table: dict[tuple[int, int, int], Scalar] = {}
        for (i, j), coeffs in brackets.items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise InputError(f"bracket indices ({i},{j}) out of range 1..{dim}")
            if i == j:
                raise InputError(f"bracket ({i},{i}) must be absent (antisymmetry)")
            for k, value in coeffs.items():
                if not 1 <= k <= dim:
                    raise InputError(f"bracket target index {k} out of range 1..{dim}")
                key = (k - 1, i - 1, j - 1)
                if key in table:
                    raise InputError(f"duplicate bracket entry for ({i},{j}) -> {k}")
                table[key] = value
                table[(k - 1, j - 1, i - 1)] = scalar_neg(value)

        def entry(idx: tuple[int, ...]) -> Scalar:
            return table.get(idx, Fraction(0))

        return StructureConstants(Tensor.from_function(dim, "ull", entry))

    def bracket(self, i: int, j: int) -> tuple[Scalar, ...]:
        """Components of [e_i, e_j] (0-indexed arguments and result)."""
        return tuple(self.c.item(k, i, j) for k in range(self.dim))

    def ad_traces(self) -> tuple[Scalar, ...]:
        """trace(ad_{e_j}) for each j; all zero iff unimodular."""
        return tuple(
            [
                _sum(self.c.item(k, j, k) for k in range(self.dim))
                for j in range(self.dim)
            ]
        )

    def is_unimodular(self) -> bool:
        return all(scalar_is_zero(t) for t in self.ad_traces())

    def jacobi_violations(self) -> list[JacobiViolation]:
        """Cyclic Jacobi defects [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
        for i<j<k, reported per output component when nonzero."""
        violations = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    comps = []
                    for m in range(n):
                        total: Scalar = Fraction(0)
                        for l in range(n):
                            total = scalar_add(
                                total,
                                scalar_mul(self.c.item(l, i, j), self.c.item(m, l, k)),
                            )
                            total = scalar_add(
                                total,
                                scalar_mul(self.c.item(l, j, k), self.c.item(m, l, i)),
                            )
                            total = scalar_add(
                                total,
                                scalar_mul(self.c.item(l, k, i), self.c.item(m, l, j)),
                            )
                        comps.append(total)
                    if any(not scalar_is_zero(x) for x in comps):
                        violations.append(
                            JacobiViolation((i + 1, j + 1, k + 1), tuple(comps))
                        )
        return violations

    def killing_form(self) -> Tensor:
        """K_ij = trace(ad_i ad_j) = c^m_{il} c^l_{jm}."""
        n = self.dim

        def entry(idx: tuple[int, ...]) -> Scalar:
            i, j = idx
            total: Scalar = Fraction(0)
            for m in range(n):
                for l in range(n):
                    total = scalar_add(
                        total,
                        scalar_mul(self.c.item(m, i, l), self.c.item(l, j, m)),
                    )
            return total

        return Tensor.from_function(n, "ll", entry)


def _sum(values) -> Scalar:
    total: Scalar = Fraction(0)
    for v in values:
        total = scalar_add(total, v)
    return total


@dataclass(frozen=True)
class MetricLieAlgebra:
    name: str
    variables: tuple[str, ...]
    sc: StructureConstants
    metric: Metric

    @property
    def dim(self) -> int:
        return self.sc.dim

    def is_symbolic(self) -> bool:
        return bool(self.variables)

    def substitute(self, assignment: Mapping[str, Union[int, Fraction]]) -> "MetricLieAlgebra":
        """Numeric instantiation: every declared variable must be assigned."""
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise InputError(f"missing parameter values for {missing}")
        exact = {k: Fraction(v) for k, v in assignment.items()}

        def subs_scalar(x: Scalar) -> Scalar:
            if isinstance(x, Polynomial):
                return x.evaluate(exact)
            return x

        c = self.sc.c.map(subs_scalar)
        g = self.metric.g.map(subs_scalar)
        return MetricLieAlgebra(self.name, (), StructureConstants(c), Metric(g))


# --- catalog ---

_DIAG_MPP = ((-1, 0, 0), (0, 1, 0), (0, 0, 1))
_DIAG_PPM = ((1, 0, 0), (0, 1, 0), (0, 0, -1))


def _p(variables: Sequence[str], text: str) -> Polynomial:
    return parse_polynomial(text, variables)


def _family_spec(family: str):
    if family == "A1":
        v = ("l1", "l2", "l3")
        return v, {
            (1, 2): {3: _p(v, "l3")},
            (1, 3): {2: _p(v, "-l2")},
            (2, 3): {1: _p(v, "l1")},
        }, _DIAG_MPP
    if family == "A2":
        v = ("l1", "l2")
        return v, {
            (1, 2): {2: _p(v, "-1"), 3: _p(v, "1-l2")},
            (1, 3): {2: _p(v, "-(1+l2)"), 3: _p(v, "1")},
            (2, 3): {1: _p(v, "l1")},
        }, _DIAG_PPM
    if family == "A3":
        v = ("l",)
        return v, {
            (1, 2): {1: _p(v, "1"), 3: _p(v, "-l")},
            (1, 3): {1: _p(v, "-1"), 2: _p(v, "-l")},
            (2, 3): {1: _p(v, "l"), 2: _p(v, "1"), 3: _p(v, "1")},
        }, _DIAG_PPM
    if family in ("A4", "A4-variant"):
        v = ("a", "b", "l3")
        first = {3: _p(v, "l3")} if family == "A4-variant" else {2: _p(v, "l3")}
        return v, {
            (1, 2): first,
            (1, 3): {1: _p(v, "-b"), 2: _p(v, "-a")},
            (2, 3): {1: _p(v, "-a"), 2: _p(v, "b")},
        }, _DIAG_MPP
    raise InputError(f"unknown family {family!r}; expected one of {FAMILY_IDS}")


def family_variables(family: str) -> tuple[str, ...]:
    return _family_spec(family)[0]


def build_family(
    family: str, params: Mapping[str, Union[int, Fraction]] | None = None
) -> MetricLieAlgebra:
    """Catalog constructor.  params=None gives the symbolic algebra over the
    family's parameters; numeric params instantiate it (A4 requires b != 0)."""
    variables, brackets, diag = _family_spec(family)
    metric = Metric.from_rows([[Fraction(x) for x in row] for row in diag])
    sc = StructureConstants.from_brackets(3, brackets)
    mla = MetricLieAlgebra(family, variables, sc, metric)
    if params is None:
        return mla
    unknown = [k for k in params if k not in variables]
    if unknown:
        raise InputError(f"unknown parameters {unknown} for family {family}")
    numeric = mla.substitute(params)
    if family in ("A4", "A4-variant") and Fraction(params["b"]) == 0:
        raise InputError("family A4 requires b != 0")
    return numeric


def build_frame_variant(
    mla: MetricLieAlgebra,
    timelike_axis: int | None = None,
    parameter_signs: Mapping[str, int] | None = None,
) -> MetricLieAlgebra:
    """Rebuild an algebra with the timelike metric axis moved and/or some
    parameters negated.

    Both operations produce legitimate metric Lie algebras; they exist so that
    reference component sets recorded under a shifted frame can be regenerated
    and compared against the catalog frame.  timelike_axis is 1-indexed and
    requires the current metric to be a +-1 diagonal.
    """
    sc = mla.sc
    if parameter_signs:
        unknown = [k for k in parameter_signs if k not in mla.variables]
        if unknown:
            raise InputError(f"unknown parameters {unknown} in parameter_signs")
        bad = [k for k, s in parameter_signs.items() if s not in (1, -1)]
        if bad:
            raise InputError(f"parameter_signs values must be +1 or -1, got {bad}")
        images = {
            k: Polynomial.var(mla.variables, k) * Fraction(s)
            for k, s in parameter_signs.items()
            if s == -1
        }
        if images:

            def remap(x: Scalar) -> Scalar:
                if isinstance(x, Polynomial):
                    return x.subs(images)
                return x

            sc = StructureConstants(sc.c.map(remap))
    metric = mla.metric
    if timelike_axis is not None:
        n = mla.dim
        if not 1 <= timelike_axis <= n:
            raise InputError(f"timelike_axis must be in 1..{n}")
        for i in range(n):
            for j in range(n):
                entry = metric.g.item(i, j)
                ok = entry == 0 if i != j else entry in (1, -1, Fraction(1), Fraction(-1))
                if isinstance(entry, Polynomial) or not ok:
                    raise InputError("timelike_axis requires a +-1 diagonal metric")
        rows = [
            [Fraction(-1 if i == j == timelike_axis - 1 else (1 if i == j else 0))
             for j in range(n)]
            for i in range(n)
        ]
        metric = Metric.from_rows(rows)
    return MetricLieAlgebra(mla.name, mla.variables, sc, metric)


def classify_type(family: str, params: Mapping[str, Union[int, Fraction]]) -> str:
    """Lie-algebra type per the classification table, on numeric parameters."""
    variables = family_variables(family)
    missing = [v for v in variables if v not in params]
    if missing:
        raise InputError(f"missing parameter values for {missing}")
    vals = {k: Fraction(v) for k, v in params.items()}
    if family == "A1":
        return _classify_signs(vals["l1"], vals["l2"], vals["l3"])
    if family == "A2":
        n_zero = (vals["l1"] == 0) + (vals["l2"] == 0)
        return ("sl(2,R)", "e(1,1)", "h")[n_zero]
    if family == "A3":
        return "sl(2,R)" if vals["l"] != 0 else "e(1,1)"
    if family in ("A4", "A4-variant"):
        if vals["b"] == 0:
            raise InputError("family A4 requires b != 0")
        return "sl(2,R)" if vals["l3"] != 0 else "e(1,1)"
    raise InputError(f"unknown family {family!r}")


def _classify_signs(l1: Fraction, l2: Fraction, l3: Fraction) -> str:
    """Sign-triple classification, invariant under basis permutation (which
    permutes the triple) and overall negation (basis vector flip)."""
    signs = sorted((1 if x > 0 else -1 if x < 0 else 0) for x in (l1, l2, l3))
    n_pos = signs.count(1)
    n_neg = signs.count(-1)
    n_zero = signs.count(0)
    if n_neg > n_pos:
        n_pos, n_neg = n_neg, n_pos
    table = {
        (3, 0, 0): "su(2)",
        (2, 0, 1): "sl(2,R)",
        (2, 1, 0): "e(2)",
        (1, 1, 1): "e(1,1)",
        (1, 2, 0): "h",
        (0, 3, 0): "R^3",
    }
    return table[(n_pos, n_zero, n_neg)]


# --- JSON I/O ---


def load_algebra(doc: Mapping) -> MetricLieAlgebra:
    """Parse the JSON algebra document format:

    {"name": str, "dim": 3, "variables": [str],
     "metric": [[num | "p/q"]],
     "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1-l2"}}]}
    """
    if not isinstance(doc, Mapping):
        raise InputError("algebra document must be a JSON object")
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise InputError("algebra needs a nonempty string 'name'")
    dim = doc.get("dim")
    if dim != 3:
        raise InputError(f"only dim 3 is supported, got {dim!r}")
    variables = doc.get("variables", [])
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise InputError("'variables' must be a list of strings")
    vars_tuple = tuple(variables)

    raw_metric = doc.get("metric")
    if (
        not isinstance(raw_metric, list)
        or len(raw_metric) != dim
        or any(not isinstance(r, list) or len(r) != dim for r in raw_metric)
    ):
        raise InputError(f"'metric' must be a {dim}x{dim} array")
    rows = [[_decode_entry(x, vars_tuple, "metric") for x in r] for r in raw_metric]
    try:
        metric = Metric.from_rows(rows)
    except ValueError as exc:
        raise InputError(f"bad metric: {exc}") from exc

    raw_brackets = doc.get("brackets")
    if not isinstance(raw_brackets, list):
        raise InputError("'brackets' must be a list")
    brackets: dict[tuple[int, int], dict[int, Scalar]] = {}
    for item in raw_brackets:
        if not isinstance(item, Mapping):
            raise InputError("each bracket must be an object")
        i, j = item.get("i"), item.get("j")
        if not isinstance(i, int) or not isinstance(j, int):
            raise InputError("bracket 'i' and 'j' must be integers")
        if (i, j) in brackets or (j, i) in brackets:
            raise InputError(f"duplicate bracket pair ({i},{j})")
        coeffs = item.get("coeffs", {})
        if not isinstance(coeffs, Mapping):
            raise InputError("bracket 'coeffs' must be an object")
        parsed: dict[int, Scalar] = {}
        for key, value in coeffs.items():
            try:
                k = int(key)
            except (TypeError, ValueError):
                raise InputError(f"bracket coefficient key {key!r} is not an index")
            parsed[k] = _decode_entry(value, vars_tuple, f"bracket ({i},{j})")
        brackets[(i, j)] = parsed
    sc = StructureConstants.from_brackets(dim, brackets)
    return MetricLieAlgebra(name, vars_tuple, sc, metric)


def _decode_entry(raw: object, variables: tuple[str, ...], where: str) -> Scalar:
    if isinstance(raw, bool):
        raise InputError(f"{where}: booleans are not scalars")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        raise InputError(f"{where}: floats are not exact; use 'p/q' strings")
    if isinstance(raw, str):
        try:
            poly = parse_polynomial(raw, variables)
        except PolynomialSyntaxError as exc:
            raise InputError(f"{where}: {exc}") from exc
        if poly.is_constant():
            return poly.constant_value()
        return poly
    raise InputError(f"{where}: cannot decode {type(raw).__name__}")


def dump_algebra(mla: MetricLieAlgebra) -> dict:
    doc: dict = {
        "name": mla.name,
        "dim": mla.dim,
        "variables": list(mla.variables),
        "metric": [
            [encode_scalar(mla.metric.g.item(i, j)) for j in range(mla.dim)]
            for i in range(mla.dim)
        ],
        "brackets": [],
    }
    for i in range(mla.dim):
        for j in range(i + 1, mla.dim):
            coeffs = {
                str(k + 1): encode_scalar(v)
                for k, v in enumerate(mla.sc.bracket(i, j))
                if not scalar_is_zero(v)
            }
            if coeffs:
                doc["brackets"].append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
    return doc
