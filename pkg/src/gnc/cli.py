"""Command line front end: ``gnc <command> [options] MODEL.json``.

Model files use 1-based indices::

    {"ambient": 3, "facets": [[1, 2], [2, 3], [1, 3]], "boundary": {"3": "1/2"}}

Every command prints one JSON report. Exit codes: 0 success, 1 invalid input
(the report carries the axiom witness or a parse diagnostic), 2 a failed
internal check.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .cohomology import (
    GenericForm,
    InvariantDivisor,
    check_vanishing,
    classify_hypotheses,
    euler_characteristic,
    multiplication_verdict,
    sheaf_cohomology,
)
from .complex_core import GncModel, ValidationError, lc_centers, lcs, lcs_chain, sing, validate
from .ideals import check_ideal_sequence, hilbert_function, intersect_with_lcs
from .simplicial import (
    ALL_TUPLES,
    STRICT_ORDERED,
    check_level_adjunction,
    component_degree,
    level_components,
    log_canonical_degree,
)
from .suite import projective, run_suite

EXIT_OK, EXIT_INVALID, EXIT_BREACH = 0, 1, 2
MODEL_KEYS = {"ambient", "facets", "boundary"}


class InputError(ValueError):
    """Malformed model file or command line."""


class Breach(RuntimeError):
    """A check that must hold came out false."""

    def __init__(self, message: str, results: dict):
        super().__init__(message)
        self.results = results


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# ------------------------------------------------------------------ serialization


def face_json(face) -> list[int]:
    return sorted(i + 1 for i in face)


def faces_json(faces) -> list[list[int]]:
    return sorted((face_json(f) for f in faces), key=lambda f: (len(f), f))


def boundary_json(boundary) -> dict[str, str]:
    return {str(i + 1): str(Fraction(b)) for i, b in sorted(boundary.items()) if b}


def model_json(model: GncModel | None) -> dict | None:
    if model is None:
        return None
    body = {"ambient": model.ambient, "facets": faces_json(model.facets), "boundary": boundary_json(model.boundary)}
    digest = hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()
    return {**body, "digest": digest}


def witness_json(witness: dict) -> dict:
    out = {}
    for key, value in witness.items():
        if key in ("face", "facet") and all(isinstance(i, int) for i in value):
            out[key] = face_json(value)
        elif key == "pair":
            out[key] = [face_json(f) for f in value]
        elif key == "index" and isinstance(value, int):
            out[key] = value + 1
        else:
            out[key] = value
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


# ------------------------------------------------------------------ parsing


def _index(value, ambient: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: index {value!r} is not an integer")
    if not 1 <= value <= ambient:
        raise InputError(f"{where}: index {value} outside 1..{ambient}")
    return value - 1


def parse_model(data) -> GncModel:
    """Turn decoded JSON into a validated model (raises InputError or ValidationError)."""
    if not isinstance(data, dict):
        raise InputError("model file must hold a JSON object")
    extra = set(data) - MODEL_KEYS
    if extra:
        raise InputError(f"unexpected keys {sorted(extra)}; allowed: {sorted(MODEL_KEYS)}")
    missing = {"ambient", "facets"} - set(data)
    if missing:
        raise InputError(f"missing keys {sorted(missing)}")
    ambient = data["ambient"]
    if isinstance(ambient, bool) or not isinstance(ambient, int) or ambient < 1:
        raise InputError(f"ambient must be a positive integer, got {ambient!r}")
    if not isinstance(data["facets"], list) or not all(isinstance(f, list) for f in data["facets"]):
        raise InputError("facets must be a list of lists of indices")
    facets = [[_index(i, ambient, "facets") for i in f] for f in data["facets"]]
    raw_boundary = data.get("boundary", {})
    if not isinstance(raw_boundary, dict):
        raise InputError("boundary must be an object mapping indices to rationals")
    boundary = {}
    for key, value in raw_boundary.items():
        try:
            i = int(key)
        except ValueError:
            raise InputError(f"boundary key {key!r} is not an index") from None
        if isinstance(value, bool) or not isinstance(value, (str, int)):
            raise InputError(f"boundary value for {key} must be a string like \"p/q\"")
        try:
            b = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"boundary value {value!r} for {key} is not a rational") from None
        boundary[_index(i, ambient, "boundary")] = b
    return validate(ambient, facets, boundary, strip_unused=False)


def load_model(path: str) -> GncModel:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_model(data)


def _vector(text: str, ambient: int) -> tuple[int, ...]:
    try:
        c = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"divisor {text!r} is not a comma-separated list of integers") from None
    if len(c) != ambient or any(x < 0 for x in c):
        raise InputError(f"divisor needs {ambient} nonnegative entries")
    return c


def _face_arg(text: str, ambient: int) -> frozenset:
    text = text.strip()
    if text in ("", "{}", "-"):
        return frozenset()
    try:
        items = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"face {text!r} is not a comma-separated list of indices") from None
    return frozenset(_index(i, ambient, "centers") for i in items)


def default_seed() -> int:
    raw = os.environ.get("GNC_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"GNC_SEED={raw!r} is not an integer") from None


# ------------------------------------------------------------------ commands


def cmd_validate(model, args):
    return {
        "valid": True,
        "core": face_json(model.core),
        "reduced_core": face_json(model.reduced_core),
        "psi": {str(i + 1): str(x) for i, x in enumerate(model.psi) if x},
        "ell": str(log_canonical_degree(model)),
        "facet_size": model.facet_size,
    }


def cmd_centers(model, args):
    return {"lc_centers": faces_json(lc_centers(model))}


def cmd_lcs(model, args):
    return {"lcs": model_json(lcs(model))}


def cmd_lcs_chain(model, args):
    return {"chain": [model_json(m) for m in lcs_chain(model)]}


def cmd_sing(model, args):
    return {"sing": model_json(sing(model))}


def cmd_resolve(model, args):
    comps = level_components(model, args.level, args.mode)
    return {
        "level": args.level,
        "mode": args.mode,
        "components": [
            {"tuple": [face_json(f) for f in c.tuple], "intersection": face_json(c.intersection),
             "boundary": {str(i + 1): str(b) for i, b in c.induced_boundary}}
            for c in comps
        ],
    }


def cmd_adjunction(model, args):
    degrees = sorted({component_degree(model, c) for c in level_components(model, args.level, STRICT_ORDERED)
                      if c.intersection})
    ok = check_level_adjunction(model, args.level)
    results = {"level": args.level, "ell": str(log_canonical_degree(model)), "degrees": [str(x) for x in degrees],
               "passed": ok}
    if not ok:
        raise Breach("level adjunction failed", results)
    return results


def cmd_cohomology(model, args):
    pm = projective(model)
    return {"twist": args.twist, "dims": list(sheaf_cohomology(pm, args.twist))}


def cmd_euler(model, args):
    pm = projective(model)
    chi = euler_characteristic(pm, args.twist)
    alt = sum((-1) ** q * h for q, h in enumerate(sheaf_cohomology(pm, args.twist)))
    results = {"twist": args.twist, "euler": chi, "alternating_sum": alt, "agree": chi == alt}
    if chi != alt:
        raise Breach("Euler characteristic disagrees with cohomology", results)
    return results


def _verdicts(pm, d, mult):
    return [{"q": v["q"], "source_dim": v["source_dim"], "target_dim": v["target_dim"], "rank": v["rank"],
             "injective": v["injective"], "tag": "vacuous" if v["vacuous"] else "substantive"}
            for v in multiplication_verdict(pm, d, mult)]


def cmd_check_injectivity(model, args):
    pm = projective(model)
    if args.divisor is not None:
        mult = InvariantDivisor(_vector(args.divisor, model.ambient))
        verdicts = _verdicts(pm, args.twist, mult)
        results = {"twist": args.twist, "divisor": list(mult.c), "verdicts": verdicts}
    else:
        if args.generic_degree < 1:
            raise InputError("--generic-degree must be at least 1")
        seed = default_seed() if args.seed is None else args.seed
        seeds = [seed, seed + 1, seed + 2]
        runs = [_verdicts(pm, args.twist, GenericForm.random(pm, args.generic_degree, s)) for s in seeds]
        mult = GenericForm.random(pm, args.generic_degree, seed)
        verdicts = runs[0]
        results = {"twist": args.twist, "generic_degree": args.generic_degree, "seeds": seeds, "verdicts": verdicts,
                   "seeds_agree": all(r == runs[0] for r in runs)}
        if not results["seeds_agree"]:
            raise Breach("generic verdicts depend on the seed", results)
    hyp = classify_hypotheses(pm, args.twist, mult)
    results["hypotheses"] = hyp
    results["ell"] = str(log_canonical_degree(model))
    if (hyp["EV"] or hyp["TK"]) and not all(v["injective"] for v in verdicts):
        raise Breach("injectivity fails although a theorem hypothesis holds", results)
    return results


def cmd_check_vanishing(model, args):
    results = check_vanishing(projective(model), range(args.d_from, args.d_to + 1))
    if not results["passed"]:
        raise Breach("vanishing fails above the log canonical degree", results)
    return results


def cmd_ideal_seq(model, args):
    if lcs(model) is None:
        raise InputError("the LCS locus of this model is empty; the ideal sequence is undefined")
    z = [_face_arg(t, model.ambient) for t in args.centers]
    centers = lc_centers(model)
    bad = [face_json(g) for g in z if g not in centers]
    if bad:
        raise InputError(f"not lc centers: {bad}")
    y = lcs(model)
    zy = intersect_with_lcs(model, z)
    table = []
    for d in range(args.dmax + 1):
        table.append({"d": d, "Z": hilbert_function(z, d), "Y": hilbert_function(y.facets, d),
                      "Z_union_Y": hilbert_function(set(z) | set(y.facets), d), "Z_meet_Y": hilbert_function(zy, d)})
    ok = check_ideal_sequence(model, z, args.dmax)
    results = {"centers": faces_json(z), "Z_meet_Y": faces_json(zy), "hilbert": table, "passed": ok}
    if not ok:
        raise Breach("ideal sequence is not exact", results)
    return results


def cmd_report(model, args):
    results = run_suite(model, default_seed())
    if not results["passed"]:
        raise Breach("suite failure", results)
    return results


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gnc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the axioms")
    add("centers", cmd_centers, "list lc centers")
    add("lcs", cmd_lcs, "LCS locus")
    add("lcs-chain", cmd_lcs_chain, "iterated LCS loci")
    add("sing", cmd_sing, "singular locus")
    p = add("resolve", cmd_resolve, "components of a level of the simplicial resolution")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--mode", choices=[ALL_TUPLES, STRICT_ORDERED], default=ALL_TUPLES)
    p = add("adjunction", cmd_adjunction, "degree check on a level")
    p.add_argument("--level", type=int, required=True)
    p = add("cohomology", cmd_cohomology, "h^q(O(d)) of the projective realization")
    p.add_argument("--twist", type=int, required=True)
    p = add("euler", cmd_euler, "Euler characteristic of O(d)")
    p.add_argument("--twist", type=int, required=True)
    p = add("check-injectivity", cmd_check_injectivity, "injectivity of multiplication maps on cohomology")
    p.add_argument("--twist", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--divisor", help="exponent vector c1,...,cN")
    group.add_argument("--generic-degree", type=int)
    p.add_argument("--seed", type=int)
    p = add("check-vanishing", cmd_check_vanishing, "h^q(O(d)) = 0 for q >= 1 above the log canonical degree")
    p.add_argument("--from", dest="d_from", type=int, required=True)
    p.add_argument("--to", dest="d_to", type=int, required=True)
    p = add("ideal-seq", cmd_ideal_seq, "exactness of the ideal sequence for a union of lc centers")
    p.add_argument("--centers", nargs="+", required=True, help='faces like "1,2" (use "{}" for the empty face)')
    p.add_argument("--dmax", type=int, required=True)
    add("report", cmd_report, "run the full property suite on one model")
    for p in sub.choices.values():
        p.add_argument("model", help="model JSON file")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, dict]:
    argv = list(sys.argv[1:] if argv is None else argv)
    report: dict = {"command": argv}
    try:
        args = build_parser().parse_args(argv)
        report["command"] = {"name": args.command, "argv": argv}
        model = load_model(args.model)
        report["model"] = model_json(model)
        report["results"] = args.func(model, args)
        report["status"] = "ok"
        return EXIT_OK, report
    except ValidationError as exc:
        report.update(status="invalid", axiom=exc.axiom, witness=witness_json(exc.witness),
                      message=f"axiom {exc.axiom} does not hold; see the 1-based witness")
        return EXIT_INVALID, report
    except InputError as exc:
        report.update(status="invalid", message=str(exc))
        return EXIT_INVALID, report
    except Breach as exc:
        report.update(status="fail", message=str(exc), results=exc.results)
        return EXIT_BREACH, report
    except Exception as exc:  # invariant breach inside the engine
        report.update(status="error", message=f"{type(exc).__name__}: {exc}")
        return EXIT_BREACH, report


def main(argv: Sequence[str] | None = None) -> int:
    code, report = run(argv)
    print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
