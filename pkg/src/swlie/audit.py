"""Verification of the published reference data by independent computation.

Every table row, condition system, component set, and numeric constant in
the reference material is recomputed from the catalog algebras and compared
exactly where the data is exact, and against stated tolerances where only
decimal annotations exist.  Discrepancies are reported with the evidence
that exposes them; nothing is adjusted to force agreement.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence, Union

from .algebras import (
    FAMILY_IDS,
    LIE_TYPES,
    MetricLieAlgebra,
    StructureConstants,
    build_family,
    build_frame_variant,
    classify_type,
    family_variables,
)
from .errors import InputError
from .geometry import (
    CONVENTION_TAG,
    christoffel,
    curvature_bundle,
    predicates,
    sw_contract,
    sw_curl,
    sw_divergence,
    sw_norm2,
    sw_tensor,
    tensor2_curl_div,
    vector_ops,
    vector_symbols,
)
from .roots import (
    RootInterval,
    cbrt,
    eval_at,
    poly_add,
    poly_divmod,
    poly_ext_gcd,
    poly_gcd,
    poly_mul,
    real_roots,
    trim,
)
from .scalars import Polynomial, compile_float, encode_scalar, parse_polynomial
from .systems import LinearSystemInV, PolySystem, systems_match, verify_locus

Scalar = Union[Fraction, Polynomial]

PREDICATE_IDS = (
    "isotropy",
    "almost-harmonic-curl",
    "harmonic-contraction",
    "harmonic-vector",
)

_PREDICATE_KEYS = {
    "isotropy": "sw_norm2/{}",
    "almost-harmonic-curl": "curl_system/{}",
    "harmonic-contraction": "contraction_system/{}",
    "harmonic-vector": "vector_system/{}",
}

_VECTOR_NAMES = ("V1", "V2", "V3")


# --- reference catalog ---

_CATALOG: dict | None = None


def reference_catalog() -> dict:
    global _CATALOG
    if _CATALOG is None:
        text = resources.files("swlie.data").joinpath("reference_systems.json").read_text()
        _CATALOG = json.loads(text)
    return _CATALOG


def reference_entry(key: str) -> dict:
    entries = reference_catalog()["entries"]
    if key not in entries:
        raise InputError(f"no reference entry {key!r}; known: {sorted(entries)}")
    return entries[key]


def reference_system(key: str) -> PolySystem:
    """Reference data as a condition system; scalar entries become a
    one-member system (dropped when identically zero)."""
    entry = reference_entry(key)
    variables = tuple(entry["variables"])
    if entry["kind"] == "scalar":
        texts = [entry["value"]]
    elif entry["kind"] == "system":
        texts = list(entry["members"])
    else:
        raise InputError(f"entry {key!r} holds {entry['kind']}, not a system")
    return PolySystem.from_strings(key, variables, texts)


def reference_components(key: str) -> tuple[tuple[str, ...], dict[tuple[int, ...], Polynomial], dict]:
    """Component map of a reference tensor with the antisymmetry closure
    applied: rank 3 is antisymmetric in the last two indices, rank 2 in
    both.  Indices are 0-based in the result; unlisted components are zero
    by convention and simply absent here."""
    entry = reference_entry(key)
    if entry["kind"] != "component-set":
        raise InputError(f"entry {key!r} holds {entry['kind']}, not components")
    variables = tuple(entry["variables"])
    rank = entry["tensor_rank"]
    table: dict[tuple[int, ...], Polynomial] = {}

    def put(idx: tuple[int, ...], value: Polynomial) -> None:
        if idx in table:
            if table[idx] != value:
                raise InputError(f"entry {key!r} lists conflicting values at {idx}")
            return
        table[idx] = value

    for text_idx, text in entry["components"].items():
        idx = tuple(int(t) - 1 for t in text_idx.split(","))
        if len(idx) != rank:
            raise InputError(f"entry {key!r}: index {text_idx!r} has wrong rank")
        value = parse_polynomial(text, variables)
        put(idx, value)
        if rank == 3:
            put((idx[0], idx[2], idx[1]), -value)
        elif rank == 2:
            put((idx[1], idx[0]), -value)
    return variables, table, dict(entry.get("frame", {}))


# --- frames and generation ---


def published_frame(family: str, predicate: str) -> dict:
    """Frame recorded with the reference entry this predicate is compared
    against (empty dict means the catalog frame)."""
    if predicate not in _PREDICATE_KEYS:
        raise InputError(f"unknown predicate {predicate!r}; expected one of {PREDICATE_IDS}")
    return dict(reference_entry(_PREDICATE_KEYS[predicate].format(family)).get("frame", {}))


def _framed_algebra(family: str, frame: Mapping | None) -> MetricLieAlgebra:
    mla = build_family(family)
    if not frame:
        return mla
    known = {"timelike_axis", "parameter_signs", "overall_sign"}
    unknown = set(frame) - known
    if unknown:
        raise InputError(f"unknown frame fields {sorted(unknown)}")
    return build_frame_variant(
        mla,
        timelike_axis=frame.get("timelike_axis"),
        parameter_signs=frame.get("parameter_signs"),
    )


def _as_polynomials(variables: tuple[str, ...], entries: Sequence[Scalar]) -> list[Polynomial]:
    out = []
    for x in entries:
        if isinstance(x, Polynomial):
            out.append(x.extend(variables))
        elif x != 0:
            out.append(Polynomial.const(variables, Fraction(x)))
    return out


def generate_system(
    family: str, predicate: str, frame: Mapping | None = None
) -> PolySystem:
    """Regenerate a condition system from the curvature engine.

    frame=None uses the frame recorded with the corresponding reference
    entry, so generated and reference systems live over the same symbols.
    """
    if predicate not in _PREDICATE_KEYS:
        raise InputError(f"unknown predicate {predicate!r}; expected one of {PREDICATE_IDS}")
    if frame is None:
        frame = published_frame(family, predicate)
    mla = _framed_algebra(family, frame)
    name = f"generated/{predicate}/{family}"
    if predicate == "isotropy":
        n2 = sw_norm2(mla)
        return PolySystem.from_polynomials(
            name, mla.variables, _as_polynomials(mla.variables, [n2])
        )
    if predicate == "almost-harmonic-curl":
        T = sw_curl(mla)
        return PolySystem.from_polynomials(
            name, mla.variables, _as_polynomials(mla.variables, T.data)
        )
    if predicate == "harmonic-contraction":
        variables, V = vector_symbols(mla)
        w = sw_contract(mla, V)
        curl_w, div_w = tensor2_curl_div(w, christoffel(mla), mla.metric)
        entries = list(curl_w.data) + list(div_w.data)
        return PolySystem.from_polynomials(name, variables, _as_polynomials(variables, entries))
    variables, V = vector_symbols(mla)
    ops = vector_ops(mla, V)
    entries = list(ops.curl.data) + [ops.div]
    return PolySystem.from_polynomials(name, variables, _as_polynomials(variables, entries))


def compare_with_reference(family: str, predicate: str, seed: int = 0):
    """(generated, reference, MatchReport) for one family/predicate pair."""
    key = _PREDICATE_KEYS[predicate].format(family)
    ref = reference_system(key)
    gen = generate_system(family, predicate)
    return gen, ref, systems_match(gen, ref, seed=seed)


def compare_component_tensor(family: str, which: str) -> dict:
    """Exact per-component comparison of an engine tensor against the
    reference component set recorded for it.

    which: 'sw' (rank 3) or 'contraction' (rank 2, contracted with a
    symbolic vector).  The engine tensor is built in the recorded frame;
    an overall_sign in the frame multiplies the engine output.
    """
    if which == "sw":
        key = f"sw_components/{family}"
    elif which == "contraction":
        key = f"contraction_components/{family}"
    else:
        raise InputError(f"unknown component set {which!r}; expected 'sw' or 'contraction'")
    variables, expected, frame = reference_components(key)
    sign = Fraction(frame.get("overall_sign", 1))
    mla = _framed_algebra(family, frame)
    if which == "sw":
        T = sw_tensor(mla)
    else:
        _, V = vector_symbols(mla)
        T = sw_contract(mla, V)
    n = T.dim
    rank = len(T.variance)
    mismatches = []
    checked = 0
    for idx in _all_indices(n, rank):
        got = T.item(*idx)
        got_poly = (
            got.extend(variables)
            if isinstance(got, Polynomial)
            else Polynomial.const(variables, Fraction(got))
        ) * sign
        want = expected.get(idx, Polynomial.zero(variables))
        checked += 1
        if got_poly != want:
            mismatches.append(
                {
                    "index": [i + 1 for i in idx],
                    "engine": got_poly.to_str(),
                    "reference": want.to_str(),
                }
            )
    return {
        "key": key,
        "frame": frame,
        "components_checked": checked,
        "mismatches": mismatches,
        "exact_match": not mismatches,
    }


def _all_indices(n: int, rank: int):
    if rank == 1:
        for i in range(n):
            yield (i,)
    elif rank == 2:
        for i in range(n):
            for j in range(n):
                yield (i, j)
    else:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    yield (i, j, k)


# --- linear structure of the contraction system ---


def contraction_matrix(family: str, source: str = "reference") -> LinearSystemInV:
    """The harmonic-contraction system as M(params) · V = 0.

    source='reference' keeps the published member scaling; 'generated'
    rebuilds the rows from the engine (same zero set, row scale may differ).
    """
    if source == "reference":
        key = f"contraction_system/{family}"
        system = reference_system(key)
        unknowns = tuple(reference_entry(key)["unknowns"])
    elif source == "generated":
        system = generate_system(family, "harmonic-contraction")
        unknowns = _VECTOR_NAMES
    else:
        raise InputError(f"source must be 'reference' or 'generated', got {source!r}")
    return LinearSystemInV.from_system(system, unknowns)


def _divexact(num: Polynomial, den: Polynomial) -> Polynomial | None:
    """Exact multivariate division; None when den does not divide num."""
    variables = num.variables
    den = den.extend(variables) if den.variables != variables else den
    if den.is_zero:
        raise InputError("division by the zero polynomial")
    quotient = Polynomial.zero(variables)
    rem = num
    d_exps, d_coeff = den.leading()
    while not rem.is_zero:
        r_exps, r_coeff = rem.leading()
        q_exps = tuple(r - d for r, d in zip(r_exps, d_exps))
        if any(e < 0 for e in q_exps):
            return None
        term = Polynomial(variables, {q_exps: r_coeff / d_coeff})
        quotient = quotient + term
        rem = rem - term * den
    return quotient


def det_locus(family: str, width: Fraction = Fraction(1, 10**9)) -> dict:
    """Determinant of the contraction matrix and the structure of its zero
    set: isolated real roots (one parameter) or an exact factorization
    plus notable kernel points (two parameters)."""
    lin = contraction_matrix(family)
    if not lin.is_square():
        raise InputError(f"contraction system of {family} is not square")
    det = lin.determinant()
    out: dict = {
        "family": family,
        "parameters": list(lin.parameters),
        "symmetric": lin.is_symmetric(),
        "determinant": det.to_str(),
    }
    if len(lin.parameters) == 1:
        name = lin.parameters[0]
        dense = det.to_univariate(name)
        k = 0
        while k < len(dense) and dense[k] == 0:
            k += 1
        out["origin_multiplicity"] = k
        roots = real_roots(dense, width=width)
        out["real_roots"] = [r.to_dict() for r in roots]
        out["real_root_values"] = [float(r.midpoint) for r in roots]
        reduced = trim(dense[k:])
        if reduced and all(reduced[i] == 0 for i in range(1, len(reduced), 2)):
            out["even_reduction"] = [str(c) for c in reduced[0::2]]
        return out
    if family == "A2":
        factor = parse_polynomial("-l1*(l1^3+l1^2+4*l2^2+4)", det.variables)
        quotient = _divexact(det, factor)
        out["known_factor"] = factor.to_str()
        out["factor_divides"] = quotient is not None
        if quotient is not None:
            out["cofactor"] = quotient.to_str()
        kernel = lin.kernel_at({"l1": Fraction(-2), "l2": Fraction(0)})
        out["kernel_dimension_at_l1=-2,l2=0"] = len(kernel)
    return out


# --- published closed-form constants ---


def _poly2(text: str) -> Polynomial:
    return parse_polynomial(text, ("x", "y"))


_P_TEXT = "53*x^6-150*x^5*y+507*x^4*y^2-308*x^3*y^3+507*x^2*y^4-150*x*y^5+53*y^6"
_Q_TEXT = "13*x^6-22*x^5*y+163*x^4*y^2-52*x^3*y^3+163*x^2*y^4-22*x*y^5+13*y^6"
_H_TEXT = "x^4+28*x^3*y+6*x^2*y^2+28*x*y^3+y^4"

# direction components of the one-parameter family, as published
_F_NUM = [Fraction(0), Fraction(30400), Fraction(0), Fraction(-47248),
          Fraction(0), Fraction(9047), Fraction(0), Fraction(440)]
_F_DEN = 8192
_H_NUM_PRINTED = [Fraction(2112), Fraction(0), Fraction(-4322), Fraction(0),
                  Fraction(-2219), Fraction(0), Fraction(-88)]
_H_DEN = 2048


def closed_form_L1L2(x: float, y: float, scale_corrected: bool = False) -> tuple[float, float]:
    """The published closed-form parameter pair for a direction (0, x, y).

    scale_corrected=True divides the first value by x*y; the published
    expression is homogeneous of degree 2 in (x, y) although the condition
    system is linear in the direction, so only the rescaled value can
    parameterize the locus (see the direction-table audit)."""
    if x == 0 or y == 0:
        raise InputError("closed form requires nonzero direction components")
    P = _poly2(_P_TEXT).evaluate({"x": float(x), "y": float(y)})
    Q = _poly2(_Q_TEXT).evaluate({"x": float(x), "y": float(y)})
    H = _poly2(_H_TEXT).evaluate({"x": float(x), "y": float(y)})
    radicand = 6.0 * (x * x + y * y) * (x - y) ** 4 * Q
    if radicand < 0:
        raise InputError("negative radicand in the closed form")
    F = cbrt(P + 6.0 * math.sqrt(radicand))
    L1 = (F + H / F - (x + y) ** 2) / 6.0
    if scale_corrected:
        L1 /= x * y
    L2 = (y * y - x * x) / (2.0 * x * y)
    return L1, L2


def closed_form_L3(radical_inclusive_B: bool = True) -> dict:
    """The published closed-form root candidate for the one-parameter
    family, evaluated under both readings of the inner constant B (the
    trailing /A either inside or outside the square root)."""
    A = cbrt(3763.0 + 6.0 * math.sqrt(154029.0))
    B_arg = 409929.0 * A - 3072.0 * A * A - 629760.0
    B = math.sqrt(B_arg / A) if radical_inclusive_B else math.sqrt(B_arg) / A
    inner = 6.0 * (136643.0 + 512.0 * A + 104960.0 / A + 85821417.0 / B)
    L3 = 0.25 * math.sqrt(math.sqrt(inner) - 483.0 - B)
    return {"A": A, "B": B, "L3": L3}


def footnote_constants() -> dict:
    """Recompute every closed-form constant attached to the direction
    table, under both precedence readings where the published text is
    ambiguous, and test the root candidates against the exact determinant
    roots."""
    P, Q, H = _poly2(_P_TEXT), _poly2(_Q_TEXT), _poly2(_H_TEXT)
    weight = parse_polynomial("216*(x^2+y^2)*(x-y)^4", ("x", "y"))
    cube_identity = (P * P - weight * Q) == H * H * H

    unit = {"x": Fraction(1), "y": Fraction(1)}
    p11, q11, h11 = P.evaluate(unit), Q.evaluate(unit), H.evaluate(unit)
    # the radicand weight carries (x-y)^4, so it vanishes at the unit
    # direction and the cube root argument collapses to P(1,1)
    radicand_11 = weight.evaluate(unit) * q11
    f11 = Fraction(round(float(p11) ** (1.0 / 3.0)))
    if radicand_11 != 0 or f11**3 != p11:
        raise RuntimeError("unit-direction cube root is not exact")
    l1_11 = (f11 + h11 / f11 - 4) / 6
    l2_12 = Fraction(2 * 2 - 1 * 1, 2 * 1 * 2)
    spots = {
        "P(1,1)": str(p11),
        "Q(1,1)": str(q11),
        "H(1,1)": str(h11),
        "F(1,1)": str(f11),
        "L1(1,1)": str(l1_11),
        "L2(1,2)": str(l2_12),
        "f(0)": str(Fraction(_F_NUM[0], _F_DEN)),
        "h(0)": str(Fraction(_H_NUM_PRINTED[0], _H_DEN)),
    }

    A = cbrt(3763.0 + 6.0 * math.sqrt(154029.0))
    B_rad = closed_form_L3(radical_inclusive_B=True)
    B_lit = closed_form_L3(radical_inclusive_B=False)
    annotation_B = 565.076
    b_verdicts = {
        "radical_inclusive": {
            "value": B_rad["B"],
            "within_1e-2_of_annotation": abs(B_rad["B"] - annotation_B) < 1e-2,
        },
        "as_printed": {
            "value": B_lit["B"],
            "within_1e-2_of_annotation": abs(B_lit["B"] - annotation_B) < 1e-2,
        },
    }
    matching = [k for k, v in b_verdicts.items() if v["within_1e-2_of_annotation"]]

    locus = det_locus("A3", width=Fraction(1, 10**12))
    root_values = locus["real_root_values"]

    def nearest_root_distance(value: float) -> float:
        return min(abs(value - r) for r in root_values)

    candidates = {
        "annotation": 89.072,
        "closed_form_radical_B": B_rad["L3"],
        "closed_form_printed_B": B_lit["L3"],
    }
    candidate_verdicts = {
        name: {
            "value": value,
            "distance_to_nearest_root": nearest_root_distance(value),
            "is_root": nearest_root_distance(value) < 1e-6,
        }
        for name, value in candidates.items()
    }
    positive_roots = [r for r in root_values if r > 1e-9]
    sqrt6_relation = None
    if positive_roots:
        lam = max(positive_roots)
        sqrt6_relation = {
            "closed_form_radical_B_over_sqrt6": B_rad["L3"] / math.sqrt(6.0),
            "positive_root": lam,
            "difference": B_rad["L3"] / math.sqrt(6.0) - lam,
            "matches_within_1e-9": abs(B_rad["L3"] / math.sqrt(6.0) - lam) < 1e-9,
        }

    L1_11, L2_11 = closed_form_L1L2(1.0, 1.0)
    L1_12, L2_12 = closed_form_L1L2(1.0, 2.0)

    return {
        "cube_identity_exact": cube_identity,
        "spot_values": spots,
        "A": {"value": A, "annotation": 18.289, "within_1e-3": abs(A - 18.289) < 1e-3},
        "B": {"annotation": annotation_B, "readings": b_verdicts, "matching_readings": matching},
        "L3": {
            "det_real_roots": root_values,
            "candidates": candidate_verdicts,
            "sqrt6_relation": sqrt6_relation,
        },
        "L1_L2_samples": {
            "(1,1)": {"L1": L1_11, "L2": L2_11},
            "(1,2)": {"L1": L1_12, "L2": L2_12},
        },
        "exclusion_slopes": exclusion_slopes(),
    }


def exclusion_slopes() -> dict:
    """Real slopes where the closed form degenerates: roots of the
    palindromic quartic s^4 + 28 s^3 + 6 s^2 + 28 s + 1."""
    quartic = [Fraction(1), Fraction(28), Fraction(6), Fraction(28), Fraction(1)]
    # palindromic reduction: H(s) = s^2 * q(s + 1/s) with q(t) = t^2 + 28 t + 4,
    # verified exactly: (s^2+1)^2 + 28 s (s^2+1) + 4 s^2 == H(s)
    s2p1 = [Fraction(1), Fraction(0), Fraction(1)]
    expansion = poly_add(
        poly_add(poly_mul(s2p1, s2p1), poly_mul([Fraction(0), Fraction(28)], s2p1)),
        [Fraction(0), Fraction(0), Fraction(4)],
    )
    reduction_exact = expansion == quartic
    roots = real_roots(quartic, width=Fraction(1, 10**12))
    values = [float(r.midpoint) for r in roots]
    sqrt3 = math.sqrt(3.0)
    inner = math.sqrt(24.0 + 14.0 * sqrt3)
    printed = {
        "-7+4*sqrt3+2*sqrt(24+14*sqrt3)": -7.0 + 4.0 * sqrt3 + 2.0 * inner,
        "-7-4*sqrt3+2*sqrt(24+14*sqrt3)": -7.0 - 4.0 * sqrt3 + 2.0 * inner,
    }
    corrected = {
        "-7-4*sqrt3+2*sqrt(24+14*sqrt3)": -7.0 - 4.0 * sqrt3 + 2.0 * inner,
        "-7-4*sqrt3-2*sqrt(24+14*sqrt3)": -7.0 - 4.0 * sqrt3 - 2.0 * inner,
    }

    def verdicts(cands: dict) -> dict:
        return {
            text: {
                "value": value,
                "is_root": min(abs(value - r) for r in values) < 1e-9,
            }
            for text, value in cands.items()
        }

    return {
        "quartic_real_roots": values,
        "palindromic_reduction_exact": reduction_exact,
        "resolvent": "t^2 + 28*t + 4, t = s + 1/s; real branch t = -14 - 8*sqrt(3)",
        "printed_pair": verdicts(printed),
        "sign_corrected_pair": verdicts(corrected),
    }


# --- independent type classification ---


def _frac_vec(values: Sequence[Scalar]) -> list[Fraction]:
    out = []
    for v in values:
        if isinstance(v, Polynomial):
            if not v.is_constant():
                raise InputError("independent classification needs numeric structure constants")
            out.append(v.constant_value())
        else:
            out.append(Fraction(v))
    return out


def _echelon(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    m = [row[:] for row in rows]
    out = []
    cols = len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        out.append(m[r])
        r += 1
    return out


def _ad_apply(sc: StructureConstants, i: int, u: Sequence[Fraction]) -> list[Fraction]:
    n = sc.dim
    return [
        sum((u[k] * Fraction(sc.c.item(m, i, k)) for k in range(n)), Fraction(0))
        for m in range(n)
    ]


def _bracket_vectors(sc: StructureConstants, u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
    n = sc.dim
    out = [Fraction(0)] * n
    for a in range(n):
        if u[a] == 0:
            continue
        for b in range(n):
            if v[b] == 0:
                continue
            for m in range(n):
                out[m] += u[a] * v[b] * Fraction(sc.c.item(m, a, b))
    return out


def _coords_in_plane(u1, u2, w) -> tuple[Fraction, Fraction]:
    """Solve alpha*u1 + beta*u2 = w exactly (w must lie in the span)."""
    for i in range(3):
        for j in range(i + 1, 3):
            det = u1[i] * u2[j] - u1[j] * u2[i]
            if det != 0:
                alpha = (w[i] * u2[j] - w[j] * u2[i]) / det
                beta = (u1[i] * w[j] - u1[j] * w[i]) / det
                k = 3 - i - j
                if alpha * u1[k] + beta * u2[k] != w[k]:
                    raise InputError("vector does not lie in the derived subalgebra")
                return alpha, beta
    raise InputError("degenerate basis of the derived subalgebra")


def _killing_negative_definite(K: list[list[Fraction]]) -> bool:
    minors = [
        -K[0][0],
        K[0][0] * K[1][1] - K[0][1] * K[1][0],
        -(
            K[0][0] * (K[1][1] * K[2][2] - K[1][2] * K[2][1])
            - K[0][1] * (K[1][0] * K[2][2] - K[1][2] * K[2][0])
            + K[0][2] * (K[1][0] * K[2][1] - K[1][1] * K[2][0])
        ),
    ]
    return all(m > 0 for m in minors)


def classify_by_invariants(sc: StructureConstants) -> str:
    """Type of a numeric 3-dimensional unimodular Lie algebra from basis-free
    invariants: derived-subalgebra rank, the determinant of the complement
    action on an abelian derived plane, and the Killing signature.

    Independent of the sign-pattern table, so it can cross-check it.
    """
    if sc.dim != 3:
        raise InputError("invariant classification implemented for dimension 3")
    rows = [
        _frac_vec(sc.bracket(0, 1)),
        _frac_vec(sc.bracket(0, 2)),
        _frac_vec(sc.bracket(1, 2)),
    ]
    basis = _echelon(rows)
    rank = len(basis)
    if rank == 0:
        return "R^3"
    if rank == 1:
        u = basis[0]
        central = all(all(x == 0 for x in _ad_apply(sc, i, u)) for i in range(3))
        if central:
            return "h"
        raise InputError("1-dimensional non-central derived subalgebra (not unimodular)")
    if rank == 2:
        u1, u2 = basis
        if any(x != 0 for x in _bracket_vectors(sc, u1, u2)):
            raise InputError("non-abelian 2-dimensional derived subalgebra (not unimodular)")
        unit = [[Fraction(1), 0, 0], [0, Fraction(1), 0], [0, 0, Fraction(1)]]
        k = next(i for i in range(3) if len(_echelon([u1, u2, unit[i]])) == 3)
        a1, b1 = _coords_in_plane(u1, u2, _ad_apply(sc, k, u1))
        a2, b2 = _coords_in_plane(u1, u2, _ad_apply(sc, k, u2))
        det = a1 * b2 - a2 * b1
        if det > 0:
            return "e(2)"
        if det < 0:
            return "e(1,1)"
        raise InputError("degenerate complement action on the derived plane")
    K = sc.killing_form()
    Km = [[Fraction(K.item(i, j)) for j in range(3)] for i in range(3)]
    return "su(2)" if _killing_negative_definite(Km) else "sl(2,R)"


# --- classification table ---

_T1_ROWS = {
    "A1": (
        ("(+,+,+)", "su(2)"),
        ("(+,+,-)", "sl(2,R)"),
        ("(+,+,0)", "e(2)"),
        ("(+,0,-)", "e(1,1)"),
        ("(+,0,0)", "h"),
        ("(0,0,0)", "R^3"),
    ),
    "A2": (
        ("l1 != 0 and l2 != 0", "sl(2,R)"),
        ("exactly one of l1, l2 is zero", "e(1,1)"),
        ("l1 = l2 = 0", "h"),
    ),
    "A3": (("l != 0", "sl(2,R)"), ("l = 0", "e(1,1)")),
    "A4": (("l3 != 0", "sl(2,R)"), ("l3 = 0", "e(1,1)")),
}

_PINNED_DRAWS = {
    "A1": (
        (1, 1, 1),
        (2, 1, -1),
        (1, 1, 0),
        (1, -1, 0),
        (1, 0, 0),
        (0, 0, 0),
        (-3, -1, -2),
    ),
    "A2": ((1, 1), (2, 3), (0, 1), (1, 0), (-1, 0), (0, -2), (0, 0), (1, 2)),
    "A3": ((1,), (0,), (-2,)),
    "A4": ((1, 1, 1), (0, 1, 0), (2, -1, 0), (1, 2, -3)),
}


def _sign_pattern(values: Sequence[Fraction]) -> str:
    signs = [1 if v > 0 else -1 if v < 0 else 0 for v in values]
    if signs.count(-1) > signs.count(1):
        signs = [-s for s in signs]
    signs.sort(reverse=True)
    marks = {1: "+", 0: "0", -1: "-"}
    return "(" + ",".join(marks[s] for s in signs) + ")"


def _row_for(family: str, vals: Mapping[str, Fraction]) -> tuple[str, str]:
    rows = _T1_ROWS[family]
    if family == "A1":
        pattern = _sign_pattern([vals["l1"], vals["l2"], vals["l3"]])
        for label, t in rows:
            if label == pattern:
                return label, t
        raise InputError(f"sign pattern {pattern} missing from the classification rows")
    if family == "A2":
        zeros = (vals["l1"] == 0) + (vals["l2"] == 0)
        return rows[zeros]
    key = "l" if family == "A3" else "l3"
    return rows[0] if vals[key] != 0 else rows[1]


def _draw_params(rng: random.Random, family: str) -> dict[str, Fraction]:
    def value(zero_ok: bool = True) -> Fraction:
        if zero_ok and rng.random() < 0.3:
            return Fraction(0)
        return Fraction(rng.randint(1, 12) * rng.choice((-1, 1)), rng.randint(1, 6))

    names = family_variables(family)
    out = {}
    for name in names:
        out[name] = value(zero_ok=(name != "b"))
    return out


def _invariant_algebra(family: str, params: Mapping[str, Fraction]) -> StructureConstants:
    # the printed three-parameter bracket family violates the Jacobi identity
    # whenever its l3 is nonzero; invariants are computed on the consistent
    # variant, which coincides with it at l3 = 0
    build = "A4-variant" if family == "A4" else family
    return build_family(build, params=params).sc


def reproduce_table1(seed: int = 0, draws: int = 1000) -> dict:
    """Re-derive the family/type classification on randomized parameters.

    Two independent checks per draw: the sign/zero row lookup against the
    type classifier, and both against the basis-free invariant
    classification.  Row-lookup disagreements would refute the classifier;
    invariant disagreements expose wrong printed type assignments.
    """
    rng = random.Random(seed)
    families = ("A1", "A2", "A3", "A4")
    row_hits: dict[tuple[str, str], int] = {}
    observed_types: dict[str, set] = {f: set() for f in families}
    classifier_disagreements: list[dict] = []
    invariant_mismatches: dict[tuple[str, str, str], dict] = {}
    total = 0
    for family in families:
        pinned = [
            dict(zip(family_variables(family), map(Fraction, tup)))
            for tup in _PINNED_DRAWS[family]
        ]
        pinned = [p for p in pinned if not (family == "A4" and p["b"] == 0)]
        samples = pinned + [_draw_params(rng, family) for _ in range(draws)]
        for vals in samples:
            total += 1
            label, printed_type = _row_for(family, vals)
            row_hits[(family, label)] = row_hits.get((family, label), 0) + 1
            got = classify_type(family, vals)
            observed_types[family].add(got)
            if got != printed_type:
                classifier_disagreements.append(
                    {"family": family, "params": {k: str(v) for k, v in vals.items()},
                     "row": label, "printed": printed_type, "classifier": got}
                )
            independent = classify_by_invariants(_invariant_algebra(family, vals))
            if independent != printed_type:
                key = (family, printed_type, independent)
                slot = invariant_mismatches.setdefault(
                    key,
                    {"family": family, "printed": printed_type,
                     "independent": independent, "count": 0, "examples": []},
                )
                slot["count"] += 1
                if len(slot["examples"]) < 4:
                    slot["examples"].append({k: str(v) for k, v in vals.items()})
    allowed = {f: {t for _, t in _T1_ROWS[f]} for f in families}
    impossible_hits = {
        f: sorted(observed_types[f] - allowed[f]) for f in families if observed_types[f] - allowed[f]
    }
    rows_missed = [
        f"{family}:{label}"
        for family in families
        for label, _ in _T1_ROWS[family]
        if (family, label) not in row_hits
    ]
    return {
        "table": 1,
        "draws_per_family": draws,
        "total_samples": total,
        "row_hits": {f"{fam}:{lab}": n for (fam, lab), n in sorted(row_hits.items())},
        "rows_missed": rows_missed,
        "classifier_disagreements": classifier_disagreements,
        "classifier_agrees": not classifier_disagreements and not rows_missed,
        "impossible_cells_hit": impossible_hits,
        "invariant_mismatches": sorted(
            invariant_mismatches.values(), key=lambda d: (d["family"], d["printed"])
        ),
        "invariant_note": "invariants computed on the Jacobi-consistent bracket variant for the two-parameter-plus-scale family",
    }


# --- isotropy table ---


def _pure_power_gcd(polys: Sequence[Polynomial], var: str) -> dict:
    """gcd of univariate restrictions, reported when it is c * var^k (so the
    common zero set in that variable is exactly {0})."""
    dense = None
    for p in polys:
        if p.is_zero:
            continue
        d = p.to_univariate(var)
        dense = d if dense is None else poly_gcd(dense, d)
    if dense is None:
        return {"all_zero": True}
    k = 0
    while k < len(dense) and dense[k] == 0:
        k += 1
    pure = len(dense) == k + 1
    return {
        "all_zero": False,
        "gcd": [str(c) for c in dense],
        "pure_power": pure,
        "multiplicity": k,
    }


def reproduce_table2(seed: int = 0, draws: int = 40) -> dict:
    """Isotropy loci: norm vanishing plus a nonzero tensor on each printed
    locus, numeric spot checks, and the type claims on randomized locus
    points."""
    rng = random.Random(seed)
    mla2 = build_family("A2")
    bundle2 = curvature_bundle(mla2)
    n2_a2 = bundle2.norm2_sw()
    comps2 = [c for c in bundle2.SW.data if isinstance(c, Polynomial)]
    mla3 = build_family("A3")
    bundle3 = curvature_bundle(mla3)
    n2_a3 = bundle3.norm2_sw()
    comps3 = [c for c in bundle3.SW.data if isinstance(c, Polynomial)]

    def nonzero_draw() -> Fraction:
        return Fraction(rng.randint(1, 9) * rng.choice((-1, 1)), rng.randint(1, 4))

    rows = []

    sub = {"l1": Fraction(0)}
    restricted = [c.subs(sub) for c in comps2]
    locus_gcd = _pure_power_gcd(restricted, "l2")
    type_checks = []
    for _ in range(draws):
        l2 = nonzero_draw()
        params = {"l1": Fraction(0), "l2": l2}
        type_checks.append(
            classify_type("A2", params) == "e(1,1)"
            and classify_by_invariants(build_family("A2", params=params).sc) == "e(1,1)"
        )
    rows.append(
        {
            "row": "two-parameter family, l1 = 0 (l2 != 0)",
            "printed_type": "e(1,1)",
            "norm_vanishes_identically": n2_a2.subs(sub).is_zero,
            "tensor_zero_exactly_at": locus_gcd,
            "side_condition_matches": locus_gcd.get("pure_power", False)
            and locus_gcd.get("multiplicity", 0) >= 1,
            "type_agreement": all(type_checks),
        }
    )

    l1_poly = Polynomial.var(("l1", "l2"), "l1")
    sub_diag = {"l2": l1_poly}
    restricted = [c.subs(sub_diag) for c in comps2]
    locus_gcd = _pure_power_gcd(restricted, "l1")
    type_checks = []
    for _ in range(draws):
        l1 = nonzero_draw()
        params = {"l1": l1, "l2": l1}
        type_checks.append(
            classify_type("A2", params) == "sl(2,R)"
            and classify_by_invariants(build_family("A2", params=params).sc) == "sl(2,R)"
        )
    rows.append(
        {
            "row": "two-parameter family, l1 = l2 (l1 != 0)",
            "printed_type": "sl(2,R)",
            "norm_vanishes_identically": n2_a2.subs(sub_diag).is_zero,
            "tensor_zero_exactly_at": locus_gcd,
            "side_condition_matches": locus_gcd.get("pure_power", False)
            and locus_gcd.get("multiplicity", 0) >= 1,
            "type_agreement": all(type_checks),
        }
    )

    locus_gcd = _pure_power_gcd(comps3, "l")
    type_checks = []
    for _ in range(draws):
        l = nonzero_draw()
        type_checks.append(
            classify_type("A3", {"l": l}) == "sl(2,R)"
            and classify_by_invariants(build_family("A3", params={"l": l}).sc) == "sl(2,R)"
        )
    rows.append(
        {
            "row": "one-parameter family, any l != 0",
            "printed_type": "sl(2,R)",
            "norm_vanishes_identically": (
                n2_a3.is_zero if isinstance(n2_a3, Polynomial) else n2_a3 == 0
            ),
            "tensor_zero_exactly_at": locus_gcd,
            "side_condition_matches": locus_gcd.get("pure_power", False)
            and locus_gcd.get("multiplicity", 0) >= 1,
            "type_agreement": all(type_checks),
        }
    )

    spots = []
    for family, params, expected in (
        ("A2", {"l1": 0, "l2": 1}, True),
        ("A2", {"l1": 1, "l2": 1}, True),
        ("A3", {"l": 2}, True),
        ("A2", {"l1": 1, "l2": 2}, False),
    ):
        numeric = build_family(family, params={k: Fraction(v) for k, v in params.items()})
        report = predicates(numeric, "isotropic")
        spot = {
            "family": family,
            "params": {k: str(v) for k, v in params.items()},
            "expected_isotropic": expected,
            "computed_isotropic": report.verdict,
            "agrees": report.verdict == expected,
            "norm2": str(report.details.get("norm2")),
        }
        if not expected:
            spot["norm2_exactly_minus_3"] = report.details.get("norm2") == Fraction(-3)
        spots.append(spot)

    return {
        "table": 2,
        "rows": rows,
        "spot_checks": spots,
        "all_rows_confirmed": all(
            r["norm_vanishes_identically"] and r["side_condition_matches"] and r["type_agreement"]
            for r in rows
        ),
        "all_spots_agree": all(s["agrees"] for s in spots),
    }


# --- curl-condition table ---


def _slope_coefficients(p: Polynomial, d: int) -> list[Fraction]:
    # coefficient of x^(d-k) y^k lands at slope-polynomial index k
    dense = [Fraction(0)] * (d + 1)
    for exps, coeff in p.terms.items():
        dense[exps[1]] += coeff
    return trim(dense)


def _origin_certificate(system: PolySystem) -> dict | None:
    """Exact proof that a 2-variable system vanishes only at the origin:
    two homogeneous members whose slope polynomials share no real root and
    which do not both contain the second axis."""
    if len(system.variables) != 2:
        return None
    origin = {v: Fraction(0) for v in system.variables}
    if any(m.evaluate(origin) != 0 for m in system.members):
        return None
    homog = []
    for m in system.members:
        d = m.degree()
        if d >= 1 and all(sum(e) == d for e in m.terms):
            homog.append((m, d))
    for i in range(len(homog)):
        for j in range(i + 1, len(homog)):
            (h1, d1), (h2, d2) = homog[i], homog[j]
            s1 = _slope_coefficients(h1, d1)
            s2 = _slope_coefficients(h2, d2)
            if len(s1) <= d1 and len(s2) <= d2:
                continue  # both vanish on the second axis
            g = poly_gcd(s1, s2)
            if len(g) > 1 and real_roots(g):
                continue
            return {
                "members": [h1.to_str(), h2.to_str()],
                "slope_polynomials": [[str(c) for c in s1], [str(c) for c in s2]],
                "slope_gcd": [str(c) for c in g],
                "origin_in_zero_set": True,
            }
    return None


def reproduce_table3(seed: int = 0) -> dict:
    """Identically-flat loci of the curl conditions: the tensor vanishes on
    each printed point, the published and regenerated systems have zero
    residual there, the zero set contains nothing else, and the type claims
    hold."""
    rows = []

    sub2 = {"l1": 0, "l2": 0}
    sw2 = sw_tensor(build_family("A2"))
    sw_zero_a2 = all(
        (c.subs({"l1": Fraction(0), "l2": Fraction(0)}).is_zero if isinstance(c, Polynomial) else c == 0)
        for c in sw2.data
    )
    ref2 = reference_system("curl_system/A2")
    gen2 = generate_system("A2", "almost-harmonic-curl")
    params = {"l1": Fraction(0), "l2": Fraction(0)}
    rows.append(
        {
            "row": "two-parameter family, l1 = l2 = 0",
            "printed_type": "h",
            "tensor_vanishes": sw_zero_a2,
            "reference_zero_residual": verify_locus(ref2, sub2).confirmed,
            "generated_zero_residual": verify_locus(gen2, sub2).confirmed,
            "uniqueness_certificate": _origin_certificate(ref2),
            "generated_uniqueness_certificate": _origin_certificate(gen2),
            "type_agreement": classify_type("A2", params) == "h"
            and classify_by_invariants(build_family("A2", params=params).sc) == "h",
        }
    )

    sub3 = {"l": 0}
    sw3 = sw_tensor(build_family("A3"))
    sw_zero_a3 = all(
        (c.subs({"l": Fraction(0)}).is_zero if isinstance(c, Polynomial) else c == 0)
        for c in sw3.data
    )
    ref3 = reference_system("curl_system/A3")
    gen3 = generate_system("A3", "almost-harmonic-curl")
    gcd_ref = _pure_power_gcd(list(ref3.members), "l")
    gcd_gen = _pure_power_gcd(list(gen3.members), "l")
    rows.append(
        {
            "row": "one-parameter family, l = 0",
            "printed_type": "e(1,1)",
            "tensor_vanishes": sw_zero_a3,
            "reference_zero_residual": verify_locus(ref3, sub3).confirmed,
            "generated_zero_residual": verify_locus(gen3, sub3).confirmed,
            "uniqueness_certificate": gcd_ref,
            "generated_uniqueness_certificate": gcd_gen,
            "type_agreement": classify_type("A3", {"l": Fraction(0)}) == "e(1,1)"
            and classify_by_invariants(build_family("A3", params={"l": Fraction(0)}).sc)
            == "e(1,1)",
        }
    )

    def row_ok(r: dict) -> bool:
        unique = r["uniqueness_certificate"]
        unique_ok = bool(unique) and (
            unique.get("pure_power", True) if isinstance(unique, dict) else False
        )
        return bool(
            r["tensor_vanishes"]
            and r["reference_zero_residual"]
            and r["generated_zero_residual"]
            and unique_ok
            and r["type_agreement"]
        )

    return {"table": 3, "rows": rows, "all_rows_confirmed": all(row_ok(r) for r in rows)}


# --- harmonic-direction table ---


def _pmod(p: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    return trim(poly_divmod(p, m)[1])


def _pscale(p: Sequence[Fraction], c: Fraction) -> list[Fraction]:
    return trim([x * c for x in p])


def _a3_minimal_polynomial(lin: LinearSystemInV) -> tuple[list[Fraction], dict]:
    """Primitive even divisor of det M carrying the nonzero roots: det
    factors exactly as (unit) * l^k * m(l)."""
    det = lin.determinant()
    dense = det.to_univariate(lin.parameters[0])
    k = 0
    while k < len(dense) and dense[k] == 0:
        k += 1
    shifted = trim(dense[k:])
    m = poly_gcd(shifted, shifted)  # primitive, positive leading coefficient
    unit = shifted[-1] / m[-1]
    evidence = {
        "determinant": det.to_str(),
        "origin_multiplicity": k,
        "unit": str(unit),
        "reduced_factor": [str(c) for c in m],
        "factorization_exact": _pscale(m, unit) == shifted,
        "even": all(m[i] == 0 for i in range(1, len(m), 2)),
    }
    return m, evidence


def direction_analysis_one_parameter() -> dict:
    """Exact analysis of the closed-form direction row of the one-parameter
    family: solve the contraction system for the direction at the
    determinant roots in the quotient ring Q[l]/(m), compare both direction
    components against the published formulas coefficient by coefficient,
    and settle harmonicity there."""
    lin = contraction_matrix("A3")
    m, det_evidence = _a3_minimal_polynomial(lin)
    rows = [[entry.to_univariate("l") for entry in row] for row in lin.rows]
    f_dense = [c / _F_DEN for c in _F_NUM]
    h_printed = [c / _H_DEN for c in _H_NUM_PRINTED]

    solved = None
    for i, j in ((0, 1), (0, 2), (1, 2)):
        a, b, c = rows[i]
        d, e, f = rows[j]
        D = poly_add(poly_mul(a, e), _pscale(poly_mul(b, d), Fraction(-1)))
        g, s, _ = poly_ext_gcd(D, m)
        if g == [Fraction(1)]:
            N1 = poly_add(poly_mul(b, f), _pscale(poly_mul(c, e), Fraction(-1)))
            N2 = poly_add(poly_mul(c, d), _pscale(poly_mul(a, f), Fraction(-1)))
            solved = (i, j, D, s, N1, N2)
            break
    if solved is None:
        raise InputError("no invertible row pair modulo the reduced determinant factor")
    i, j, D, s, N1, N2 = solved

    # first component: published formula checked exactly at every root of m
    first_residual = _pmod(
        poly_add(poly_mul(N1, [Fraction(1)]), _pscale(poly_mul(D, f_dense), Fraction(-1))), m
    )
    # second component: exact value in Q[l]/(m)
    second_exact = _pmod(poly_mul(N2, s), m)
    coefficient_comparison = []
    width = max(len(second_exact), len(h_printed))
    for deg in range(width):
        got = second_exact[deg] if deg < len(second_exact) else Fraction(0)
        pub = h_printed[deg] if deg < len(h_printed) else Fraction(0)
        if got != pub:
            coefficient_comparison.append(
                {
                    "degree": deg,
                    "computed": str(got),
                    "published": str(pub),
                    "computed_times_neg2048": str(-got * 2048),
                    "published_times_neg2048": str(-pub * 2048),
                }
            )

    def kernel_residuals(second: Sequence[Fraction]) -> list[list[str]]:
        out = []
        for row in rows:
            res = poly_add(
                poly_add(poly_mul(row[0], f_dense), poly_mul(row[1], list(second))),
                row[2],
            )
            out.append([str(c) for c in _pmod(res, m)])
        return out

    corrected_residuals = kernel_residuals(second_exact)
    printed_residuals = kernel_residuals(h_printed)
    printed_common = m
    for res in printed_residuals:
        dense = [Fraction(c) for c in map(Fraction, res)] if res else []
        printed_common = poly_gcd(printed_common, dense) if dense else printed_common

    harmonic = {}
    vec = reference_system("vector_system/A3")
    for label, second in (("published", h_printed), ("corrected", second_exact)):
        # vector condition -l*V1 + 2*V2 + 2*V3 along (f, second, 1)
        hv = poly_add(
            poly_add(_pscale(poly_mul([Fraction(0), Fraction(1)], f_dense), Fraction(-1)), _pscale(list(second), Fraction(2))),
            [Fraction(2)],
        )
        hv_mod = _pmod(hv, m)
        shared = poly_gcd(hv_mod, m) if hv_mod else m
        harmonic[label] = {
            "condition_residual_mod_m": [str(c) for c in hv_mod],
            "vanishes_at_some_root": len(shared) > 1,
        }

    return {
        "system": "contraction_system/A3",
        "vector_condition": [p.to_str() for p in vec.members],
        "determinant": det_evidence,
        "row_pair_used": [i, j],
        "first_component_residual_mod_m": [str(c) for c in first_residual],
        "first_component_exact": not first_residual,
        "second_component_exact_mod_m": [str(c) for c in second_exact],
        "second_component_published": [str(c) for c in h_printed],
        "coefficient_discrepancies": coefficient_comparison,
        "corrected_direction_in_kernel": all(not r for r in corrected_residuals),
        "published_direction_kernel_residuals_mod_m": printed_residuals,
        "published_direction_hits_some_root": len(printed_common) > 1,
        "harmonicity": harmonic,
        "not_harmonic_at_roots": not harmonic["corrected"]["vanishes_at_some_root"],
    }


def direction_analysis_two_parameter(
    samples: Sequence[tuple[int, int]] = ((1, 2), (2, 3), (3, 5)),
) -> dict:
    """Exact analysis of the closed-form direction row of the two-parameter
    family at rational direction samples: with the second parameter at its
    published value the system members acquire a common cubic factor whose
    real root the published first-parameter formula misses by exactly the
    factor x*y."""
    system = reference_system("contraction_system/A2")
    lin = contraction_matrix("A2")
    det = lin.determinant()
    out_samples = []
    gcd_by_slope: dict[Fraction, list[str]] = {}
    for x, y in samples:
        l2 = Fraction(y * y - x * x, 2 * x * y)
        subs = {"l2": l2, "V1": Fraction(0), "V2": Fraction(x), "V3": Fraction(y)}
        dense = None
        for member in system.raw:
            restricted = member.subs(subs)
            if restricted.is_zero:
                continue
            u = restricted.to_univariate("l1")
            dense = u if dense is None else poly_gcd(dense, u)
        roots = real_roots(dense, width=Fraction(1, 10**12)) if dense else []
        printed, _ = closed_form_L1L2(float(x), float(y))
        corrected = printed / (x * y)
        root_values = [float(r.midpoint) for r in roots]
        nearest_printed = min((abs(printed - r) for r in root_values), default=math.inf)
        nearest_corrected = min((abs(corrected - r) for r in root_values), default=math.inf)
        out_samples.append(
            {
                "direction": [0, x, y],
                "second_parameter": str(l2),
                "common_factor": [str(c) for c in (dense or [])],
                "common_factor_degree": len(dense) - 1 if dense else -1,
                "real_roots": root_values,
                "published_value": printed,
                "published_is_root": nearest_printed < 1e-9,
                "rescaled_value": corrected,
                "rescaled_is_root": nearest_corrected < 1e-9,
                "published_over_rescaled": x * y,
                "determinant_at_published": det.evaluate({"l1": printed, "l2": float(l2)}),
                "determinant_at_rescaled": det.evaluate({"l1": corrected, "l2": float(l2)}),
            }
        )
        gcd_by_slope.setdefault(Fraction(y, x), [str(c) for c in (dense or [])])

    # scaling the direction must not move the locus; the published value
    # is homogeneous of degree 2 in the direction, the rescaled one of
    # degree 0
    x, y = samples[0]
    doubled = (2 * x, 2 * y)
    l2 = Fraction(y * y - x * x, 2 * x * y)
    subs = {"l2": l2, "V1": Fraction(0), "V2": Fraction(doubled[0]), "V3": Fraction(doubled[1])}
    dense = None
    for member in system.raw:
        restricted = member.subs(subs)
        if restricted.is_zero:
            continue
        u = restricted.to_univariate("l1")
        dense = u if dense is None else poly_gcd(dense, u)
    scale_invariant = [str(c) for c in (dense or [])] == gcd_by_slope[Fraction(y, x)]

    exact_11 = verify_locus(
        system,
        {"l1": 2, "l2": 0, "V1": 0, "V2": 1, "V3": 1},
    )
    return {
        "system": "contraction_system/A2",
        "samples": out_samples,
        "direction_scaling_leaves_locus": scale_invariant,
        "unit_direction_sample": {
            "direction": [0, 1, 1],
            "published_values": {"L1": 2.0, "L2": 0.0},
            "zero_residual": exact_11.confirmed,
            "note": "x*y = 1 hides the missing direction-product factor",
        },
        "published_formula_parameterizes_locus": all(
            s["published_is_root"] for s in out_samples
        ),
        "rescaled_formula_parameterizes_locus": all(
            s["rescaled_is_root"] for s in out_samples
        ),
    }


def reproduce_table4(seed: int = 0) -> dict:
    """The harmonic-direction rows: zero residual of every fully symbolic
    row, the closed-form rows re-derived exactly, and the published
    harmonicity verdicts recomputed."""
    sys2 = reference_system("contraction_system/A2")
    vec2 = reference_system("vector_system/A2")
    sys3 = reference_system("contraction_system/A3")
    vec3 = reference_system("vector_system/A3")
    lin2 = contraction_matrix("A2")

    rows = []

    kernel = lin2.kernel_at({"l1": Fraction(-2), "l2": Fraction(0)})
    params = {"l1": Fraction(-2), "l2": Fraction(0)}
    rows.append(
        {
            "row": "two-parameter family: l1 = -2, l2 = 0, any direction",
            "zero_residual": verify_locus(sys2, {"l1": -2, "l2": 0}).confirmed,
            "kernel_dimension": len(kernel),
            "harmonic": verify_locus(vec2, {"l1": -2}).confirmed,
            "printed_harmonic": True,
            "printed_type": "e(1,1)",
            "type_agreement": classify_type("A2", params) == "e(1,1)"
            and classify_by_invariants(build_family("A2", params=params).sc) == "e(1,1)",
        }
    )

    closed2 = direction_analysis_two_parameter()
    rows.append(
        {
            "row": "two-parameter family: closed-form parameters, direction (0, V2, V3)",
            "closed_form": closed2,
            "harmonic": True,  # V1 = 0 kills the only vector condition
            "printed_harmonic": True,
            "published_formula_confirmed": closed2["published_formula_parameterizes_locus"],
            "rescaled_formula_confirmed": closed2["rescaled_formula_parameterizes_locus"],
        }
    )

    rows.append(
        {
            "row": "two-parameter family: l2 = 0, direction (0, V2, V2)",
            "zero_residual": verify_locus(sys2, {"l2": 0, "V1": 0, "V3": "V2"}).confirmed,
            "harmonic": verify_locus(vec2, {"V1": 0}).confirmed,
            "printed_harmonic": True,
            "printed_type": "e(1,1)",
            "type_note": "independent invariants give e(2) when l1 > 0; see the type findings",
        }
    )

    fourth_residuals = [m.subs({"l1": Fraction(0)}).to_str() for m in vec2.members]
    rows.append(
        {
            "row": "two-parameter family: l1 = 0, direction (V1, 0, 0)",
            "zero_residual": verify_locus(sys2, {"l1": 0, "V2": 0, "V3": 0}).confirmed,
            "vector_condition_residual": fourth_residuals,
            "harmonic": all(
                m.subs({"l1": Fraction(0)}).is_zero for m in vec2.members
            ),
            "printed_harmonic": False,
        }
    )

    rows.append(
        {
            "row": "one-parameter family: l = 0, direction (0, -V3, V3)",
            "zero_residual": verify_locus(sys3, {"l": 0, "V1": 0, "V2": "-V3"}).confirmed,
            "harmonic": all(
                m.subs(
                    {
                        "l": Fraction(0),
                        "V1": Fraction(0),
                        "V2": parse_polynomial("-V3", vec3.variables),
                    }
                ).is_zero
                for m in vec3.members
            ),
            "printed_harmonic": True,
            "printed_type": "e(1,1)",
            "type_agreement": classify_type("A3", {"l": Fraction(0)}) == "e(1,1)"
            and classify_by_invariants(build_family("A3", params={"l": Fraction(0)}).sc)
            == "e(1,1)",
        }
    )

    closed3 = direction_analysis_one_parameter()
    rows.append(
        {
            "row": "one-parameter family: closed-form root, direction (f(l), h(l), 1) V3",
            "closed_form": closed3,
            "first_component_confirmed": closed3["first_component_exact"],
            "second_component_confirmed": not closed3["coefficient_discrepancies"],
            "published_direction_in_kernel": closed3["published_direction_hits_some_root"],
            "corrected_direction_in_kernel": closed3["corrected_direction_in_kernel"],
            "harmonic": not closed3["not_harmonic_at_roots"],
            "printed_harmonic": False,
        }
    )

    symbolic_rows_confirmed = all(
        r.get("zero_residual", True) for r in rows if "zero_residual" in r
    )
    harmonicity_verdicts_reproduced = all(
        r["harmonic"] == r["printed_harmonic"] for r in rows if "printed_harmonic" in r
    )
    return {
        "table": 4,
        "rows": rows,
        "symbolic_rows_confirmed": symbolic_rows_confirmed,
        "harmonicity_verdicts_reproduced": harmonicity_verdicts_reproduced,
    }


def reproduce_table(table_id: int, seed: int = 0, draws: int = 1000) -> dict:
    if table_id == 1:
        return reproduce_table1(seed=seed, draws=draws)
    if table_id == 2:
        return reproduce_table2(seed=seed)
    if table_id == 3:
        return reproduce_table3(seed=seed)
    if table_id == 4:
        return reproduce_table4(seed=seed)
    raise InputError(f"table id must be 1..4, got {table_id}")


# --- findings and the audit driver ---


@dataclass(frozen=True)
class Finding:
    """One audited claim: CONFIRMED when reproduced by independent
    computation, DISCREPANT when contradicted (evidence attached), INFO
    for recorded context that is neither."""

    ident: str
    verdict: str
    summary: str
    evidence: dict

    def to_dict(self) -> dict:
        return {
            "id": self.ident,
            "verdict": self.verdict,
            "summary": self.summary,
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class AuditReport:
    seed: int
    draws: int
    convention: str
    elapsed_seconds: float
    findings: tuple[Finding, ...]

    @property
    def discrepancies(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.verdict == "DISCREPANT")

    def counts(self) -> dict:
        out: dict[str, int] = {}
        for f in self.findings:
            out[f.verdict] = out.get(f.verdict, 0) + 1
        return out

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "draws": self.draws,
            "convention": self.convention,
            "elapsed_seconds": self.elapsed_seconds,
            "counts": self.counts(),
            "findings": [f.to_dict() for f in self.findings],
        }


def run_audit(seed: int = 0, draws: int = 1000) -> AuditReport:
    """Run every verification pass and collect the findings.

    The audit reports what the computation shows; where the published text
    is ambiguous it records both readings instead of deciding between
    them.  A nonempty discrepancy list is the expected outcome when the
    published data contains transcription defects.
    """
    start = time.perf_counter()
    findings: list[Finding] = []
    add = findings.append

    # bracket structure
    for family in ("A1", "A2", "A3"):
        mla = build_family(family)
        ok = mla.sc.is_unimodular() and not mla.sc.jacobi_violations()
        add(
            Finding(
                f"structure/unimodular/{family}",
                "CONFIRMED" if ok else "DISCREPANT",
                f"{family}: bracket satisfies Jacobi and every ad operator is traceless, for all parameter values",
                {"ad_traces": [encode_scalar(t) for t in mla.sc.ad_traces()]},
            )
        )
    printed4 = build_family("A4")
    variant4 = build_family("A4-variant")
    printed_jacobi = printed4.sc.jacobi_violations()
    printed_bad = not printed4.sc.is_unimodular() or bool(printed_jacobi)
    add(
        Finding(
            "structure/unimodular/A4-as-printed",
            "DISCREPANT" if printed_bad else "CONFIRMED",
            "A4 as printed: the third parameter sits in a bracket slot that breaks both unimodularity and the Jacobi identity unless it vanishes",
            {
                "ad_traces": [encode_scalar(t) for t in printed4.sc.ad_traces()],
                "jacobi_violations": [
                    {
                        "triple": list(v.triple),
                        "components": [encode_scalar(c) for c in v.components],
                    }
                    for v in printed_jacobi
                ],
            },
        )
    )
    variant_ok = variant4.sc.is_unimodular() and not variant4.sc.jacobi_violations()
    add(
        Finding(
            "structure/unimodular/A4-variant",
            "CONFIRMED" if variant_ok else "DISCREPANT",
            "A4 with the third parameter moved to the slot that closes Jacobi: unimodular for all parameter values",
            {"ad_traces": [encode_scalar(t) for t in variant4.sc.ad_traces()]},
        )
    )

    # component sets
    for family in ("A2", "A3"):
        for which in ("sw", "contraction"):
            comp = compare_component_tensor(family, which)
            add(
                Finding(
                    f"components/{which}/{family}",
                    "CONFIRMED" if comp["exact_match"] else "DISCREPANT",
                    f"{family}: published {which} components equal the engine output exactly in the recorded frame",
                    comp,
                )
            )

    # scalar invariant
    for family in ("A2", "A3"):
        entry = reference_entry(f"sw_norm2/{family}")
        variables = tuple(entry["variables"])
        ref_poly = parse_polynomial(entry["value"], variables)
        mla = _framed_algebra(family, entry.get("frame"))
        got = sw_norm2(mla)
        got_poly = (
            got.extend(variables)
            if isinstance(got, Polynomial)
            else Polynomial.const(variables, Fraction(got))
        )
        equal = got_poly == ref_poly
        add(
            Finding(
                f"scalar/norm2/{family}",
                "CONFIRMED" if equal else "DISCREPANT",
                f"{family}: published squared norm of the invariant tensor matches exactly",
                {"engine": got_poly.to_str(), "published": ref_poly.to_str()},
            )
        )

    # stated identity: divergence on the first index vanishes
    for family in ("A2", "A3"):
        div1_zero = sw_divergence(build_family(family), kind="I").is_zero()
        add(
            Finding(
                f"identity/div-first-index/{family}",
                "CONFIRMED" if div1_zero else "DISCREPANT",
                f"{family}: divergence of the invariant tensor on its first index vanishes identically, as stated",
                {"all_components_zero": div1_zero},
            )
        )

    # condition systems
    for predicate in PREDICATE_IDS:
        for family in ("A2", "A3"):
            _, _, report = compare_with_reference(family, predicate, seed=seed)
            ok = report.verdict == "MATCH" or (
                report.verdict == "MATCH-up-to-span" and report.witness_count == 0
            )
            add(
                Finding(
                    f"system/{predicate}/{family}",
                    "CONFIRMED" if ok else "DISCREPANT",
                    f"{family}: regenerated {predicate} system "
                    + (
                        "matches the published members up to units"
                        if report.verdict == "MATCH"
                        else "spans the published zero set (member scaling differs)"
                        if ok
                        else "disagrees with the published system"
                    ),
                    report.to_dict(),
                )
            )

    # frame bookkeeping
    frames = {
        key: entry.get("frame")
        for key, entry in reference_catalog()["entries"].items()
        if entry.get("frame")
    }
    add(
        Finding(
            "frame/published-blocks",
            "INFO",
            "no single sign/axis convention reproduces every published block; each block's recorded frame is used for its comparison",
            {"frames": frames},
        )
    )

    # determinant structure of the contraction systems
    for family in ("A2", "A3"):
        add(
            Finding(
                f"matrix/contraction/{family}",
                "INFO",
                f"{family}: zero-set structure of the contraction-system determinant",
                det_locus(family),
            )
        )

    # classification table
    t1 = reproduce_table1(seed=seed, draws=draws)
    rows_ok = t1["classifier_agrees"] and not t1["impossible_cells_hit"]
    add(
        Finding(
            "table/1/rows",
            "CONFIRMED" if rows_ok else "DISCREPANT",
            "randomized parameter draws land on exactly the printed rows; the sign classifier agrees with the row conditions and no family reaches a type outside its printed cells",
            {
                k: t1[k]
                for k in (
                    "draws_per_family",
                    "total_samples",
                    "row_hits",
                    "rows_missed",
                    "classifier_disagreements",
                    "impossible_cells_hit",
                )
            },
        )
    )
    mismatches = t1["invariant_mismatches"]
    add(
        Finding(
            "type/degenerate-two-parameter-row",
            "DISCREPANT" if mismatches else "CONFIRMED",
            (
                "the printed type e(1,1) for the exactly-one-zero row of the two-parameter family fails on half its locus: "
                "the action on the derived complement has determinant l1, so l2 = 0 with l1 > 0 gives e(2)"
                if mismatches
                else "basis-free invariants agree with every printed type assignment"
            ),
            {"mismatches": mismatches, "note": t1["invariant_note"]},
        )
    )

    # isotropy table
    t2 = reproduce_table2(seed=seed)
    add(
        Finding(
            "table/2/isotropy-rows",
            "CONFIRMED" if t2["all_rows_confirmed"] else "DISCREPANT",
            "each printed isotropy row is exactly the vanishing locus of the squared norm with a nonzero tensor, and the printed types agree with both classifiers",
            {"rows": t2["rows"]},
        )
    )
    add(
        Finding(
            "table/2/spot-checks",
            "CONFIRMED" if t2["all_spots_agree"] else "DISCREPANT",
            "numeric spot checks on and off the isotropy locus agree with the printed rows",
            {"spots": t2["spot_checks"]},
        )
    )

    # zero-tensor table
    t3 = reproduce_table3(seed=seed)
    add(
        Finding(
            "table/3/zero-tensor-rows",
            "CONFIRMED" if t3["all_rows_confirmed"] else "DISCREPANT",
            "the invariant tensor vanishes exactly on the printed loci, those loci are unique, and both published condition systems have zero residual there",
            {"rows": t3["rows"]},
        )
    )

    # direction table and its constants
    t4 = reproduce_table4(seed=seed)
    closed2 = t4["rows"][1]["closed_form"]
    closed3 = t4["rows"][5]["closed_form"]
    add(
        Finding(
            "table/4/symbolic-rows",
            "CONFIRMED" if t4["symbolic_rows_confirmed"] else "DISCREPANT",
            "every fully symbolic direction row has zero residual in the published condition systems",
            {
                "rows": [
                    {k: r[k] for k in ("row", "zero_residual") if k in r}
                    for r in t4["rows"]
                    if "zero_residual" in r
                ]
            },
        )
    )
    add(
        Finding(
            "harmonicity/verdicts",
            "CONFIRMED" if t4["harmonicity_verdicts_reproduced"] else "DISCREPANT",
            "the published harmonic / not-harmonic verdicts are reproduced, and survive every constant correction reported below",
            {
                "rows": [
                    {
                        "row": r["row"],
                        "computed": r["harmonic"],
                        "published": r["printed_harmonic"],
                    }
                    for r in t4["rows"]
                    if "printed_harmonic" in r
                ]
            },
        )
    )

    fc = footnote_constants()
    add(
        Finding(
            "constants/cube-identity",
            "CONFIRMED" if fc["cube_identity_exact"] else "DISCREPANT",
            "the cube identity tying the three direction polynomials holds exactly, and all spot values check out",
            {"spot_values": fc["spot_values"]},
        )
    )
    add(
        Finding(
            "constants/cube-root-constant",
            "CONFIRMED" if fc["A"]["within_1e-3"] else "DISCREPANT",
            "the inner cube-root constant matches its printed decimal annotation",
            fc["A"],
        )
    )
    add(
        Finding(
            "constants/inner-radical-reading",
            "INFO",
            "the printed inner-radical expression is precedence-ambiguous; readings matching the printed decimal annotation are recorded without deciding intent",
            fc["B"],
        )
    )
    l3 = fc["L3"]
    closed_is_root = (
        l3["candidates"]["closed_form_radical_B"]["is_root"]
        or l3["candidates"]["closed_form_printed_B"]["is_root"]
    )
    add(
        Finding(
            "constants/root-closed-form",
            "CONFIRMED" if closed_is_root else "DISCREPANT",
            (
                "the closed-form root candidate is a determinant root"
                if closed_is_root
                else "the closed-form root candidate misses every determinant root under both radical readings; "
                "dividing the annotation-matching reading by sqrt(6) lands on the positive root to within 1e-9"
            ),
            l3,
        )
    )
    annotation_is_root = l3["candidates"]["annotation"]["is_root"]
    add(
        Finding(
            "constants/root-annotation",
            "CONFIRMED" if annotation_is_root else "DISCREPANT",
            (
                "the printed decimal annotation for the root matches a determinant root"
                if annotation_is_root
                else "the printed decimal annotation for the root is not a determinant root and matches neither closed-form reading"
            ),
            l3["candidates"]["annotation"],
        )
    )

    scale_ok = closed2["published_formula_parameterizes_locus"]
    add(
        Finding(
            "constants/direction-closed-form-scale",
            "CONFIRMED" if scale_ok else "DISCREPANT",
            (
                "the published first-parameter closed form parameterizes the locus"
                if scale_ok
                else "the published first-parameter closed form is homogeneous of degree 2 in the direction although the system "
                "is linear in it; dividing by the product of the two direction components parameterizes the locus exactly, "
                "and the published unit-direction sample hides the defect because that product is 1"
            ),
            closed2,
        )
    )
    add(
        Finding(
            "constants/first-direction-component",
            "CONFIRMED" if closed3["first_component_exact"] else "DISCREPANT",
            "the printed polynomial for the first direction component solves the system exactly at every determinant root",
            {
                "residual_mod_reduced_factor": closed3["first_component_residual_mod_m"],
                "row_pair_used": closed3["row_pair_used"],
            },
        )
    )
    h_ok = not closed3["coefficient_discrepancies"]
    add(
        Finding(
            "constants/second-direction-component",
            "CONFIRMED" if h_ok else "DISCREPANT",
            (
                "the printed polynomial for the second direction component solves the system exactly"
                if h_ok
                else "one printed coefficient of the second direction component is wrong: the exact solve in the quotient ring "
                "gives -27/128 at degree 2 where the printed value is -2161/1024 (integer 432 printed as 4322); "
                "with the printed value the direction lies in no kernel at any determinant root"
            ),
            closed3,
        )
    )
    ex = fc["exclusion_slopes"]
    printed_ok = all(v["is_root"] for v in ex["printed_pair"].values())
    add(
        Finding(
            "constants/excluded-slopes",
            "CONFIRMED" if printed_ok else "DISCREPANT",
            (
                "both printed excluded-slope radicals are roots of the degeneracy quartic"
                if printed_ok
                else "one printed excluded-slope radical has a sign error: the palindromic reduction of the degeneracy quartic "
                "gives -7 - 4*sqrt(3) +/- 2*sqrt(24 + 14*sqrt(3)), and only the sign-corrected pair matches the real roots"
            ),
            ex,
        )
    )

    elapsed = time.perf_counter() - start
    return AuditReport(
        seed=seed,
        draws=draws,
        convention=CONVENTION_TAG,
        elapsed_seconds=elapsed,
        findings=tuple(findings),
    )


# --- float scan for isotropy candidates ---


@dataclass(frozen=True)
class ScanReport:
    family: str
    variables: tuple[str, ...]
    box: dict
    grid: int
    seed: int
    eps_zero: float
    eps_nonzero: float
    points_scanned: int
    flagged: tuple[dict, ...]
    max_locus_distance: float
    elapsed_seconds: float

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "variables": list(self.variables),
            "box": self.box,
            "grid": self.grid,
            "seed": self.seed,
            "eps_zero": self.eps_zero,
            "eps_nonzero": self.eps_nonzero,
            "points_scanned": self.points_scanned,
            "flagged_count": len(self.flagged),
            "max_locus_distance": self.max_locus_distance,
            "elapsed_seconds": self.elapsed_seconds,
            "flagged": list(self.flagged),
        }

    def to_csv(self) -> str:
        header = list(self.variables) + ["norm2", "max_abs_sw", "locus_distance"]
        lines = [",".join(header)]
        for p in self.flagged:
            row = [repr(p["values"][v]) for v in self.variables]
            row += [repr(p["norm2"]), repr(p["max_abs_sw"]), repr(p["locus_distance"])]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def scan(
    family: str = "A2",
    box: Union[Mapping[str, tuple[float, float]], None] = None,
    grid: int = 201,
    seed: int = 0,
    eps_zero: float = 1e-8,
    eps_nonzero: float = 1e-6,
    predicate: str = "isotropy",
    algebra: Union[MetricLieAlgebra, None] = None,
) -> ScanReport:
    """Float sweep over a parameter box flagging isotropy candidates.

    A grid point is flagged when the invariant tensor is clearly nonzero
    (max |component| > eps_nonzero) while its squared norm vanishes
    relative to the tensor size (|norm2| < eps_zero * max^2).  The
    relative band keeps the rule meaningful where the tensor itself is
    small.  Each flagged point carries its exact distance to the known
    isotropy locus when the family has one.

    algebra scans a custom algebra instead of a catalog family; its
    declared variables are the box axes and no locus distance is known.
    """
    start = time.perf_counter()
    if predicate != "isotropy":
        raise InputError(
            f"scan supports the isotropy predicate only, got {predicate!r}"
        )
    if grid < 2:
        raise InputError("grid must be at least 2")
    if eps_zero <= 0 or eps_nonzero <= 0:
        raise InputError("tolerances must be positive")
    if algebra is not None:
        mla = algebra
        family = mla.name
        variables = mla.variables
        known_locus = None
    else:
        mla = build_family(family)
        variables = family_variables(family)
        known_locus = family
    if box is None:
        box = {v: (-3.0, 3.0) for v in variables}
    if set(box) != set(variables):
        raise InputError(
            f"box keys {sorted(box)} must match the scan parameters {list(variables)}"
        )
    ranges: dict[str, tuple[float, float]] = {}
    for v in variables:
        lo, hi = float(box[v][0]), float(box[v][1])
        if not lo < hi:
            raise InputError(f"empty range for {v}: {lo}..{hi}")
        ranges[v] = (lo, hi)

    norm = sw_norm2(mla)
    norm_poly = (
        norm.extend(variables)
        if isinstance(norm, Polynomial)
        else Polynomial.const(variables, Fraction(norm))
    )
    norm_fn = compile_float(norm_poly, variables)
    sw = sw_tensor(mla)
    comp_fns = []
    for idx in _all_indices(sw.dim, 3):
        c = sw.item(*idx)
        if isinstance(c, Fraction):
            if c != 0:
                comp_fns.append(lambda *a, _v=float(c): _v)
        elif not c.is_zero:
            comp_fns.append(compile_float(c.extend(variables), variables))
    if not comp_fns:
        comp_fns.append(lambda *a: 0.0)

    def locus_distance(vals: tuple[float, ...]) -> float:
        if known_locus == "A2":
            l1, l2 = vals
            return min(abs(l1), abs(l1 - l2) / math.sqrt(2.0))
        if known_locus == "A3":
            return 0.0
        return float("nan")

    axes = []
    for v in variables:
        lo, hi = ranges[v]
        axes.append([lo + (hi - lo) * k / (grid - 1) for k in range(grid)])
    flagged: list[dict] = []
    points = 0
    for vals in itertools.product(*axes):
        points += 1
        m = max(abs(fn(*vals)) for fn in comp_fns)
        n2 = norm_fn(*vals)
        if m > eps_nonzero and abs(n2) < eps_zero * m * m:
            flagged.append(
                {
                    "values": dict(zip(variables, vals)),
                    "norm2": n2,
                    "max_abs_sw": m,
                    "locus_distance": locus_distance(vals),
                }
            )
    finite = [p["locus_distance"] for p in flagged if not math.isnan(p["locus_distance"])]
    max_dist = max(finite) if finite else float("nan")
    return ScanReport(
        family=family,
        variables=variables,
        box={v: [ranges[v][0], ranges[v][1]] for v in variables},
        grid=grid,
        seed=seed,
        eps_zero=eps_zero,
        eps_nonzero=eps_nonzero,
        points_scanned=points,
        flagged=tuple(flagged),
        max_locus_distance=max_dist,
        elapsed_seconds=time.perf_counter() - start,
    )
