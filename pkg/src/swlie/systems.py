"""Polynomial condition systems: canonical sets, matching, locus checks,
and the linear-in-V reductions of the harmonic-contraction equations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import InputError
from .scalars import Polynomial, parse_polynomial, parse_rational

SubsValue = Union[int, Fraction, Polynomial, str]


def union_variables(a: Sequence[str], b: Sequence[str]) -> tuple[str, ...]:
    out = list(a)
    for v in b:
        if v not in out:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class PolySystem:
    """A finite set of polynomial conditions "member = 0".

    `raw` keeps the supplied members in their original order (duplicates and
    units intact, zeros dropped); `members` is the deduplicated set of
    primitive representatives used for matching.
    """

    name: str
    variables: tuple[str, ...]
    raw: tuple[Polynomial, ...]
    members: tuple[Polynomial, ...]

    @staticmethod
    def from_polynomials(
        name: str, variables: Sequence[str], polys: Sequence[Polynomial]
    ) -> "PolySystem":
        target = tuple(variables)
        raw = []
        seen: dict[Polynomial, None] = {}
        for p in polys:
            q = p.extend(target) if p.variables != target else p
            if q.is_zero:
                continue
            raw.append(q)
            seen.setdefault(q.primitive())
        members = tuple(sorted(seen, key=lambda m: (m.degree(), m.to_str())))
        return PolySystem(name, target, tuple(raw), members)

    @staticmethod
    def from_strings(
        name: str, variables: Sequence[str], texts: Sequence[str]
    ) -> "PolySystem":
        target = tuple(variables)
        return PolySystem.from_polynomials(
            name, target, [parse_polynomial(t, target) for t in texts]
        )

    def vanishes_at(self, point: Mapping[str, Fraction]) -> bool:
        return all(m.evaluate(point) == 0 for m in self.members)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "variables": list(self.variables),
            "members": [m.to_str() for m in self.members],
        }


@dataclass(frozen=True)
class MatchReport:
    verdict: str  # MATCH | MATCH-up-to-span | MISMATCH
    matched: tuple[tuple[str, str, str], ...]  # (generated, reference, unit)
    unmatched_generated: tuple[str, ...]
    unmatched_reference: tuple[str, ...]
    witness: dict | None
    common_zero_samples: tuple[dict, ...]
    residual_fingerprints: tuple[dict, ...]
    seed: int

    @property
    def witness_count(self) -> int:
        return 0 if self.witness is None else 1

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "matched": [
                {"generated": g, "reference": r, "unit": u} for g, r, u in self.matched
            ],
            "unmatched_generated": list(self.unmatched_generated),
            "unmatched_reference": list(self.unmatched_reference),
            "witness": self.witness,
            "common_zero_samples": list(self.common_zero_samples),
            "residual_fingerprints": list(self.residual_fingerprints),
            "seed": self.seed,
        }


def _raw_unit_for(system: PolySystem, primitive: Polynomial) -> Fraction:
    for p in system.raw:
        unit, prim = p.extend(primitive.variables).normalized()
        if prim == primitive:
            return unit
    return Fraction(1)


def _fingerprint_points(
    variables: Sequence[str], seed: int, count: int = 5
) -> list[dict[str, Fraction]]:
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        points.append(
            {v: Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for v in variables}
        )
    return points


def _candidate_points(variables: Sequence[str], seed: int) -> list[dict[str, Fraction]]:
    """Deterministic candidate list for locating common zeros and witnesses."""
    n = len(variables)
    if n <= 2:
        axis = [Fraction(k, 2) for k in range(-6, 7)]
        grids = [axis] * n
    else:
        axis = [Fraction(k) for k in (-2, -1, 0, 1, 2)]
        grids = [axis] * n
    points: list[dict[str, Fraction]] = []

    def rec(i: int, acc: list[Fraction]) -> None:
        if i == n:
            points.append(dict(zip(variables, acc)))
            return
        for val in grids[i]:
            rec(i + 1, acc + [val])

    rec(0, [])
    rng = random.Random(seed ^ 0x5EED)
    for _ in range(50):
        points.append(
            {v: Fraction(rng.randint(-12, 12), rng.randint(1, 5)) for v in variables}
        )
    return points


def systems_match(
    generated: PolySystem, reference: PolySystem, seed: int = 0
) -> MatchReport:
    """Compare two condition systems.

    MATCH: the primitive member sets coincide (units recorded from raw forms).
    MATCH-up-to-span: leftovers on either side vanish at every located common
    zero, and no witness point separates the two zero sets.
    MISMATCH: a witness point lies on one system's zero set but not the other's.
    """
    variables = union_variables(generated.variables, reference.variables)
    gen = {m.extend(variables).primitive() for m in generated.members}
    ref = {m.extend(variables).primitive() for m in reference.members}
    matched = []
    for m in sorted(gen & ref, key=lambda p: (p.degree(), p.to_str())):
        ug = _raw_unit_for(generated, m)
        ur = _raw_unit_for(reference, m)
        unit = ug / ur if ur else Fraction(1)
        matched.append((m.to_str(), m.to_str(), str(unit)))
    unmatched_gen = sorted(gen - ref, key=lambda p: (p.degree(), p.to_str()))
    unmatched_ref = sorted(ref - gen, key=lambda p: (p.degree(), p.to_str()))

    fingerprints = []
    if unmatched_gen or unmatched_ref:
        fp_points = _fingerprint_points(variables, seed)
        for side, residuals in (
            ("generated", unmatched_gen),
            ("reference", unmatched_ref),
        ):
            for m in residuals:
                fingerprints.append(
                    {
                        "side": side,
                        "member": m.to_str(),
                        "values": [str(m.evaluate(pt)) for pt in fp_points],
                    }
                )

    if not unmatched_gen and not unmatched_ref:
        return MatchReport(
            "MATCH", tuple(matched), (), (), None, (), (), seed
        )

    gen_all = sorted(gen, key=lambda p: (p.degree(), p.to_str()))
    ref_all = sorted(ref, key=lambda p: (p.degree(), p.to_str()))
    witness = None
    samples: list[dict] = []
    for point in _candidate_points(variables, seed):
        gen_vanishes = all(m.evaluate(point) == 0 for m in gen_all)
        ref_vanishes = all(m.evaluate(point) == 0 for m in ref_all)
        if gen_vanishes and ref_vanishes:
            if len(samples) < 10:
                samples.append({v: str(point[v]) for v in variables})
            continue
        if ref_vanishes and not gen_vanishes:
            bad = next(m for m in gen_all if m.evaluate(point) != 0)
            witness = {
                "point": {v: str(point[v]) for v in variables},
                "vanishing_side": "reference",
                "nonzero_member": bad.to_str(),
                "value": str(bad.evaluate(point)),
            }
            break
        if gen_vanishes and not ref_vanishes:
            bad = next(m for m in ref_all if m.evaluate(point) != 0)
            witness = {
                "point": {v: str(point[v]) for v in variables},
                "vanishing_side": "generated",
                "nonzero_member": bad.to_str(),
                "value": str(bad.evaluate(point)),
            }
            break
    verdict = "MISMATCH" if witness is not None else "MATCH-up-to-span"
    return MatchReport(
        verdict,
        tuple(matched),
        tuple(m.to_str() for m in unmatched_gen),
        tuple(m.to_str() for m in unmatched_ref),
        witness,
        tuple(samples),
        tuple(fingerprints),
        seed,
    )


@dataclass(frozen=True)
class LocusReport:
    system: str
    substitution: dict
    residuals: tuple[dict, ...]  # nonzero residuals with raw-member index
    confirmed: bool

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "substitution": self.substitution,
            "residuals": list(self.residuals),
            "confirmed": self.confirmed,
        }


def _parse_substitution(
    system: PolySystem, substitution: Mapping[str, SubsValue]
) -> dict[str, Union[Fraction, Polynomial]]:
    unknown = [k for k in substitution if k not in system.variables]
    if unknown:
        raise InputError(
            f"substitution references unknown symbols {unknown}; "
            f"system variables are {list(system.variables)}"
        )
    parsed: dict[str, Union[Fraction, Polynomial]] = {}
    for key, value in substitution.items():
        if isinstance(value, Polynomial):
            parsed[key] = value.extend(system.variables)
        elif isinstance(value, str):
            text = value.strip()
            try:
                parsed[key] = parse_rational(text)
            except (ValueError, ZeroDivisionError):
                parsed[key] = parse_polynomial(text, system.variables)
        else:
            parsed[key] = Fraction(value)
    return parsed


def verify_locus(
    system: PolySystem, substitution: Mapping[str, SubsValue]
) -> LocusReport:
    """Substitute (possibly partially) into every raw member; CONFIRMED iff
    every residual is the zero polynomial."""
    parsed = _parse_substitution(system, substitution)
    residuals = []
    for index, member in enumerate(system.raw):
        r = member.subs(parsed)
        if not r.is_zero:
            residuals.append({"member_index": index, "residual": r.to_str()})
    echo = {
        k: (v.to_str() if isinstance(v, Polynomial) else str(v))
        for k, v in parsed.items()
    }
    return LocusReport(system.name, echo, tuple(residuals), not residuals)


@dataclass(frozen=True)
class LinearSystemInV:
    """A polynomial system rewritten as M · V = 0 with M over the parameter
    ring; construction fails unless every equation is linear homogeneous in
    the unknowns."""

    parameters: tuple[str, ...]
    unknowns: tuple[str, ...]
    rows: tuple[tuple[Polynomial, ...], ...]

    @staticmethod
    def from_system(
        system: PolySystem, unknowns: Sequence[str]
    ) -> "LinearSystemInV":
        unknowns = tuple(unknowns)
        missing = [u for u in unknowns if u not in system.variables]
        if missing:
            raise InputError(f"unknowns {missing} absent from system variables")
        parameters = tuple(v for v in system.variables if v not in unknowns)
        upos = [system.variables.index(u) for u in unknowns]
        ppos = [system.variables.index(p) for p in parameters]
        rows = []
        for eq_index, member in enumerate(system.raw):
            row = [
                {} for _ in unknowns
            ]  # per-unknown coefficient terms over parameters
            for exps, coeff in member.terms.items():
                vdeg = [exps[i] for i in upos]
                if sum(vdeg) != 1 or any(d not in (0, 1) for d in vdeg):
                    raise InputError(
                        f"equation {eq_index} is not linear homogeneous in "
                        f"{list(unknowns)}: monomial with unknown-degrees {vdeg}"
                    )
                which = vdeg.index(1)
                pexps = tuple(exps[i] for i in ppos)
                row[which][pexps] = row[which].get(pexps, Fraction(0)) + coeff
            rows.append(
                tuple(Polynomial(parameters, terms) for terms in row)
            )
        return LinearSystemInV(parameters, unknowns, tuple(rows))

    def is_square(self) -> bool:
        return len(self.rows) == len(self.unknowns)

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        n = len(self.unknowns)
        return all(
            self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i)
        )

    def determinant(self) -> Polynomial:
        if not self.is_square():
            raise InputError("determinant requires a square system")
        return _poly_det([list(row) for row in self.rows])

    def evaluate(self, assignment: Mapping[str, Union[int, Fraction]]) -> list[list[Fraction]]:
        vals = {k: Fraction(v) for k, v in assignment.items()}
        return [[entry.evaluate(vals) for entry in row] for row in self.rows]

    def kernel_at(
        self, assignment: Mapping[str, Union[int, Fraction]]
    ) -> list[list[Fraction]]:
        """Exact kernel basis of M evaluated at a numeric parameter point."""
        m = self.evaluate(assignment)
        rows = len(m)
        cols = len(self.unknowns)
        aug = [row[:] for row in m]
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            pivot = next((i for i in range(r, rows) if aug[i][c] != 0), None)
            if pivot is None:
                continue
            aug[r], aug[pivot] = aug[pivot], aug[r]
            inv = aug[r][c]
            aug[r] = [x / inv for x in aug[r]]
            for i in range(rows):
                if i != r and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
            if r == rows:
                break
        free = [c for c in range(cols) if c not in pivots]
        basis = []
        for f in free:
            vec = [Fraction(0)] * cols
            vec[f] = Fraction(1)
            for row_idx, c in enumerate(pivots):
                vec[c] = -aug[row_idx][f]
            basis.append(vec)
        return basis


def _poly_det(rows: list[list[Polynomial]]) -> Polynomial:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("determinant of a non-square matrix")
    if n == 1:
        return rows[0][0]
    variables = rows[0][0].variables
    total = Polynomial.zero(variables)
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = entry * _poly_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total
