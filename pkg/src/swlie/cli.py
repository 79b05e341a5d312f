"""Command-line front end.

Loads catalog or custom algebras, runs pipeline stages, regenerates and
compares condition systems, reproduces the published tables, and runs the
full audit and numeric scans.  Reports are pretty JSON on standard output
(CSV for scan findings with --csv); timing goes to standard error so
reports stay byte-identical across runs.

Exit codes: 0 success / everything confirmed; 1 completed with
mismatch or discrepancy findings; 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Mapping, Sequence, Union

from . import __version__, audit
from .algebras import (
    FAMILY_IDS,
    MetricLieAlgebra,
    build_family,
    load_algebra,
)
from .errors import InputError
from .geometry import (
    CONVENTION_TAG,
    christoffel,
    curvature_bundle,
    predicates,
    sw_norm2,
    sw_tensor,
    vector_symbols,
)
from .scalars import (
    Polynomial,
    PolynomialSyntaxError,
    encode_scalar,
    parse_polynomial,
    parse_rational,
)
from .tensors import Tensor

_PREDICATE_CHOICES = ("isotropic", "almost-harmonic", "harmonic-w", "harmonic-v")


# --- small parsers for flag payloads ---


def _parse_params(text: str) -> dict[str, Fraction]:
    """--params "l1=1,l2=-2/3" -> exact rational bindings."""
    out: dict[str, Fraction] = {}
    if not text.strip():
        return out
    for chunk in text.split(","):
        if "=" not in chunk:
            raise InputError(f"bad parameter binding {chunk!r}; expected name=value")
        name, value = chunk.split("=", 1)
        name = name.strip()
        if not name:
            raise InputError(f"bad parameter binding {chunk!r}; empty name")
        if name in out:
            raise InputError(f"parameter {name!r} bound twice")
        try:
            out[name] = parse_rational(value)
        except PolynomialSyntaxError as exc:
            raise InputError(f"parameter {name!r}: {exc}") from exc
    return out


def _parse_box(text: str) -> dict[str, tuple[float, float]]:
    """--box "l1=-3:3,l2=-3:3" -> per-parameter float intervals."""
    out: dict[str, tuple[float, float]] = {}
    for chunk in text.split(","):
        if "=" not in chunk:
            raise InputError(f"bad box entry {chunk!r}; expected name=lo:hi")
        name, rng = chunk.split("=", 1)
        name = name.strip()
        if ":" not in rng:
            raise InputError(f"bad box range {rng!r} for {name!r}; expected lo:hi")
        lo_text, hi_text = rng.split(":", 1)
        try:
            lo, hi = float(Fraction(lo_text)), float(Fraction(hi_text))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad box range {rng!r} for {name!r}: {exc}") from exc
        if name in out:
            raise InputError(f"box parameter {name!r} given twice")
        out[name] = (lo, hi)
    return out


def _parse_vector(text: str) -> Tensor:
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError(f"--vector needs three comma-separated rationals, got {text!r}")
    try:
        values = [parse_rational(p) for p in parts]
    except PolynomialSyntaxError as exc:
        raise InputError(f"--vector: {exc}") from exc
    return Tensor.from_function(3, "u", lambda idx: values[idx[0]])


# --- algebra input resolution ---


def _bind_params(mla: MetricLieAlgebra, params: Mapping[str, Fraction]) -> MetricLieAlgebra:
    """Bind some or all parameters; omitted ones stay symbolic."""
    if not params:
        return mla
    unknown = sorted(k for k in params if k not in mla.variables)
    if unknown:
        raise InputError(
            f"unknown parameters {unknown}; this algebra has {list(mla.variables) or 'none'}"
        )
    if set(params) == set(mla.variables):
        return mla.substitute(params)
    remaining = tuple(v for v in mla.variables if v not in params)
    exact = {k: Fraction(v) for k, v in params.items()}

    def rebind(x):
        if isinstance(x, Polynomial):
            reduced = x.subs(exact)
            return parse_polynomial(reduced.to_str(), remaining)
        return x

    from .algebras import StructureConstants
    from .tensors import Metric

    return MetricLieAlgebra(
        mla.name,
        remaining,
        StructureConstants(mla.sc.c.map(rebind)),
        Metric(mla.metric.g.map(rebind)),
    )


def _resolve_algebra(args: argparse.Namespace) -> tuple[MetricLieAlgebra, dict]:
    """Exactly one input source: --family or --file.  Returns the algebra
    (with --params bound) and an input echo for the report."""
    family = getattr(args, "family", None)
    path = getattr(args, "file", None)
    if (family is None) == (path is None):
        raise InputError("exactly one of --family or --file is required")
    if family is not None:
        mla = build_family(family)
        echo: dict = {"family": family}
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
        mla = load_algebra(doc)
        echo = {"file": path, "name": mla.name}
    params = _parse_params(getattr(args, "params", None) or "")
    if params:
        mla = _bind_params(mla, params)
        echo["params"] = {k: encode_scalar(v) for k, v in sorted(params.items())}
    violations = mla.sc.jacobi_violations()
    if violations:
        triples = [list(v.triple) for v in violations]
        if getattr(args, "strict", False):
            raise InputError(f"Jacobi identity fails on bracket triples {triples}")
        print(
            f"[swlie] warning: Jacobi identity fails on bracket triples {triples}",
            file=sys.stderr,
        )
    return mla, echo


# --- report serialization ---


def _tensor_nested(t: Tensor):
    rank = len(t.variance)

    def rec(prefix: tuple[int, ...]):
        if len(prefix) == rank:
            return encode_scalar(t.item(*prefix))
        return [rec(prefix + (i,)) for i in range(t.dim)]

    return rec(())


def _jsonable(value):
    if isinstance(value, Polynomial):
        return value.to_str()
    if isinstance(value, Fraction):
        return encode_scalar(value)
    if isinstance(value, Tensor):
        return _tensor_nested(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(report, args, as_csv: bool = False) -> None:
    text = report if as_csv else json.dumps(report, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _envelope(command: str, echo: dict, results) -> dict:
    return {
        "tool": "swlie",
        "version": __version__,
        "convention": CONVENTION_TAG,
        "command": command,
        "input": echo,
        "results": results,
    }


# --- subcommand bodies: return (payload, exit_code, csv_flag) ---


def _cmd_validate(args) -> tuple[dict, int]:
    try:
        with open(args.path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{args.path}: invalid JSON at line {exc.lineno}, column {exc.colno}"
        ) from exc
    mla = load_algebra(doc)
    violations = [
        {"triple": list(v.triple), "components": [encode_scalar(c) for c in v.components]}
        for v in mla.sc.jacobi_violations()
    ]
    results = {
        "name": mla.name,
        "dim": mla.dim,
        "variables": list(mla.variables),
        "unimodular": mla.sc.is_unimodular(),
        "ad_traces": [encode_scalar(t) for t in mla.sc.ad_traces()],
        "jacobi_violations": violations,
        "verdict": "DISCREPANT" if violations else "CONFIRMED",
    }
    return _envelope("validate", {"file": args.path}, results), 1 if violations else 0


def _cmd_curvature(args) -> tuple[dict, int]:
    mla, echo = _resolve_algebra(args)
    bundle = curvature_bundle(mla)
    results = {
        "variables": list(mla.variables),
        "christoffel": _tensor_nested(bundle.conn.gamma),
        "riemann": _tensor_nested(bundle.R),
        "ricci": _tensor_nested(bundle.r),
        "scalar_curvature": encode_scalar(bundle.rho),
        "schouten": _tensor_nested(bundle.A),
        "sw": _tensor_nested(bundle.SW),
        "sw_norm2": encode_scalar(bundle.norm2_sw()),
    }
    return _envelope("curvature", echo, results), 0


def _cmd_sw(args) -> tuple[dict, int]:
    mla, echo = _resolve_algebra(args)
    sw = sw_tensor(mla)
    nonzero = {}
    for i in range(sw.dim):
        for j in range(sw.dim):
            for k in range(sw.dim):
                value = sw.item(i, j, k)
                if isinstance(value, Polynomial):
                    if value.is_zero:
                        continue
                elif value == 0:
                    continue
                nonzero[f"{i + 1},{j + 1},{k + 1}"] = encode_scalar(value)
    results = {
        "variables": list(mla.variables),
        "components": _tensor_nested(sw),
        "nonzero": nonzero,
        "sw_norm2": encode_scalar(sw_norm2(mla)),
    }
    return _envelope("sw", echo, results), 0


def _cmd_predicate(args) -> tuple[dict, int]:
    mla, echo = _resolve_algebra(args)
    V = None
    if args.vector is not None:
        V = _parse_vector(args.vector)
        echo["vector"] = args.vector
    elif args.which in ("harmonic-w", "harmonic-v"):
        _, V = vector_symbols(mla)
        echo["vector"] = "symbolic"
    report = predicates(mla, args.which, V=V)
    results = {
        "which": report.which,
        "symbolic": report.symbolic,
        "verdict": report.verdict,
        "conditions": [c.to_str() for c in report.conditions],
        "details": _jsonable(report.details),
    }
    return _envelope("predicate", echo, results), 0


def _cmd_system(args) -> tuple[dict, int]:
    if args.family is None:
        raise InputError("system needs --family (reference systems exist for catalog families)")
    generated, reference, match = audit.compare_with_reference(
        args.family, args.predicate, seed=args.seed
    )
    ok = match.verdict == "MATCH" or (
        match.verdict == "MATCH-up-to-span" and match.witness_count == 0
    )
    results = {
        "family": args.family,
        "predicate": args.predicate,
        "compare_target": args.compare,
        "frame": audit.published_frame(args.family, args.predicate),
        "generated": [m.to_str() for m in generated.members],
        "reference": [m.to_str() for m in reference.members],
        "match": match.to_dict(),
    }
    echo = {"family": args.family, "predicate": args.predicate, "seed": args.seed}
    return _envelope("system", echo, results), 0 if ok else 1


def _table_discrepant(table_id: int, data: dict) -> bool:
    if table_id == 1:
        return bool(data["invariant_mismatches"]) or not data["classifier_agrees"] or bool(
            data["impossible_cells_hit"]
        )
    if table_id == 2:
        return not (data["all_rows_confirmed"] and data["all_spots_agree"])
    if table_id == 3:
        return not data["all_rows_confirmed"]
    closed2 = data["rows"][1]
    closed3 = data["rows"][5]
    return (
        not data["symbolic_rows_confirmed"]
        or not data["harmonicity_verdicts_reproduced"]
        or not closed2["published_formula_confirmed"]
        or not closed3["second_component_confirmed"]
    )


def _cmd_table(args) -> tuple[dict, int]:
    data = audit.reproduce_table(args.id, seed=args.seed, draws=args.draws)
    echo = {"id": args.id, "seed": args.seed}
    if args.id == 1:
        echo["draws"] = args.draws
    discrepant = _table_discrepant(args.id, data)
    return _envelope("table", echo, data), 1 if discrepant else 0


def _cmd_audit(args) -> tuple[dict, int]:
    draws = args.draws if args.draws is not None else (1000 if args.full else 200)
    report = audit.run_audit(seed=args.seed, draws=draws)
    code = 1 if report.discrepancies else 0
    return _envelope("audit", {"seed": args.seed, "draws": draws, "full": args.full}, report.to_dict()), code


def _cmd_scan(args) -> tuple[Union[dict, str], int, bool]:
    box = _parse_box(args.box) if args.box else None
    algebra = None
    family = args.family
    if args.file is not None:
        if family is not None:
            raise InputError("exactly one of --family or --file is required")
        with open(args.file, "r", encoding="utf-8") as fh:
            algebra = load_algebra(json.load(fh))
    elif family is None:
        family = "A2"
    report = audit.scan(
        family=family or "A2",
        box=box,
        grid=args.grid,
        seed=args.seed,
        eps_zero=args.eps_zero,
        eps_nonzero=args.eps_nonzero,
        predicate=args.predicate,
        algebra=algebra,
    )
    if args.csv:
        return report.to_csv(), 0, True
    echo = {
        "family": report.family,
        "grid": args.grid,
        "seed": args.seed,
        "box": report.box,
    }
    return _envelope("scan", echo, report.to_dict()), 0, False


# --- argument parser ---


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # keep exit code 2 but with our prefix
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _add_algebra_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILY_IDS, help="catalog family")
    p.add_argument("--file", help="custom algebra JSON file")
    p.add_argument("--params", help='rational bindings, e.g. "l1=1,l2=-2/3"')
    p.add_argument("--strict", action="store_true", help="fail on Jacobi violations")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="swlie",
        description=(
            "Exact curvature and Schouten-Weyl invariants of left-invariant "
            "Lorentzian metrics on 3-dimensional unimodular Lie groups."
        ),
    )
    parser.add_argument("--version", action="version", version=f"swlie {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("validate", help="validate a custom algebra JSON file")
    p.add_argument("path", help="algebra JSON file")
    p.add_argument("--out", help="write the report here instead of stdout")

    for name, description in (
        ("curvature", "full curvature pipeline report"),
        ("sw", "Schouten-Weyl tensor and its squared norm"),
    ):
        p = sub.add_parser(name, help=description)
        _add_algebra_source(p)
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("predicate", help="evaluate a geometric predicate")
    _add_algebra_source(p)
    p.add_argument("--which", required=True, choices=_PREDICATE_CHOICES)
    p.add_argument("--vector", help='contraction vector, e.g. "1,0,0" (omit for symbolic)')
    p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("system", help="regenerate a condition system and compare")
    p.add_argument("--family", choices=FAMILY_IDS, required=True)
    p.add_argument("--predicate", required=True, choices=audit.PREDICATE_IDS)
    p.add_argument(
        "--compare",
        choices=("reference", "paper"),
        default="reference",
        help="comparison target (both names select the published reference systems)",
    )
    p.add_argument("--seed", type=int, default=0, help="fingerprint seed")
    p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("table", help="reproduce a published table")
    p.add_argument("--id", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=1000, help="random draws per family (table 1)")
    p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("audit", help="run the verification passes")
    p.add_argument("--full", action="store_true", help="full randomized draw budget")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, help="override the draw budget")
    p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("scan", help="numeric parameter scan for isotropy candidates")
    p.add_argument("--family", choices=FAMILY_IDS, help="catalog family (default A2)")
    p.add_argument("--file", help="custom algebra JSON file")
    p.add_argument("--box", help='per-parameter ranges, e.g. "l1=-3:3,l2=-3:3"')
    p.add_argument("--grid", type=int, default=201, help="grid points per axis")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps-zero", type=float, default=1e-8, dest="eps_zero")
    p.add_argument("--eps-nonzero", type=float, default=1e-6, dest="eps_nonzero")
    p.add_argument("--predicate", default="isotropy", help="scan predicate (isotropy)")
    p.add_argument("--csv", action="store_true", help="emit flagged points as CSV")
    p.add_argument("--out", help="write the report here instead of stdout")
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "curvature": _cmd_curvature,
    "sw": _cmd_sw,
    "predicate": _cmd_predicate,
    "system": _cmd_system,
    "table": _cmd_table,
    "audit": _cmd_audit,
}


def main(argv: Union[Sequence[str], None] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        if args.subcommand == "scan":
            payload, code, as_csv = _cmd_scan(args)
        else:
            payload, code = _HANDLERS[args.subcommand](args)
            as_csv = False
        _emit(payload, args, as_csv=as_csv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PolynomialSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start
    print(f"[swlie] {args.subcommand} completed in {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
