"""Command-line surface: problem/witness ingestion and machine reports.

Commands: classify, good, generic, special, psi-trace, verify, dim, deform.
Reports are JSON with sorted keys (byte-stable for identical inputs); pass
--human for a prose rendering.  Exit status: 0 success, 1 negative/unknown
answer where documented, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .criteria import PsiTrace, TieVerdictError, is_good, rigidity_report
from .eigenvalues import (
    ADDITIVE,
    DEFAULT_RELATION_CAP,
    MULTIPLICATIVE,
    GenericAssignmentError,
    MultiplicativeEigenvalue,
    NonGenericityRelation,
    ProblemError,
    RelationSearchCapError,
    TupleProblem,
    generate_generic,
    is_generic,
)
from .exactnum import ExactNumberError, GaussianRational, format_rational, parse_rational
from .jnf_core import ClassSpec, JnfError, JnfShape, Partition
from .linalg import LinalgError, Matrix
from .solver import (
    UNKNOWN,
    Verdict,
    apply_subordinate_witness,
    classify,
    expected_dimension,
)
from .special import SpecialSearchError, classify_specialness
from .witness import (
    DeformationError,
    DeformationRequest,
    MatrixTuple,
    WitnessError,
    WitnessPreconditionError,
    centralizer_dimension,
    check_surjectivity,
    class_membership,
    deform_step,
    euler_characteristic,
    is_irreducible,
    local_dimension,
    verify_relation,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


class CliInputError(ValueError):
    pass


# -- document parsing ----------------------------------------------------------


def _expect(condition: bool, path: str, message: str):
    if not condition:
        raise CliInputError(f"{path}: {message}")


def _parse_value(doc, mode: str, path: str):
    _expect(isinstance(doc, dict), path, "eigenvalue value must be an object")
    try:
        if mode == ADDITIVE:
            _expect(
                set(doc) <= {"re", "im"} and "re" in doc,
                path,
                'additive values use {"re": "p/q", "im": "p/q"}',
            )
            return GaussianRational(
                parse_rational(doc["re"]), parse_rational(doc.get("im", "0"))
            )
        _expect(
            set(doc) <= {"angle", "magnitude"} and "angle" in doc,
            path,
            'multiplicative values use {"angle": "p/q", "magnitude": "p/q"}',
        )
        return MultiplicativeEigenvalue(
            parse_rational(doc["angle"]), parse_rational(doc.get("magnitude", "1"))
        )
    except (ExactNumberError, ProblemError) as exc:
        raise CliInputError(f"{path}: {exc}") from exc


def parse_problem(doc) -> TupleProblem:
    """Validate and convert a problem document; errors carry JSON paths."""
    _expect(isinstance(doc, dict), "$", "problem document must be an object")
    mode = doc.get("mode")
    _expect(mode in (ADDITIVE, MULTIPLICATIVE), "mode", f"must be '{ADDITIVE}' or '{MULTIPLICATIVE}'")
    n = doc.get("n")
    _expect(isinstance(n, int) and n >= 1, "n", "must be a positive integer")
    classes_doc = doc.get("classes")
    _expect(isinstance(classes_doc, list) and classes_doc, "classes", "must be a non-empty list")
    classes = []
    for j, cdoc in enumerate(classes_doc):
        cpath = f"classes[{j}]"
        _expect(isinstance(cdoc, dict), cpath, "must be an object")
        evs = cdoc.get("eigenvalues")
        _expect(isinstance(evs, list) and evs, f"{cpath}.eigenvalues", "must be a non-empty list")
        partitions, values = [], []
        total = 0
        for k, edoc in enumerate(evs):
            epath = f"{cpath}.eigenvalues[{k}]"
            _expect(isinstance(edoc, dict), epath, "must be an object")
            value = _parse_value(edoc.get("value"), mode, f"{epath}.value")
            mult = edoc.get("multiplicity")
            _expect(isinstance(mult, int) and mult >= 1, f"{epath}.multiplicity", "must be a positive integer")
            blocks = edoc.get("blocks")
            _expect(
                isinstance(blocks, list) and blocks and all(isinstance(b, int) for b in blocks),
                f"{epath}.blocks",
                "must be a non-empty list of integers",
            )
            try:
                part = Partition(blocks)
            except JnfError as exc:
                raise CliInputError(f"{epath}.blocks: {exc}") from exc
            _expect(
                part.size == mult,
                f"{epath}.blocks",
                f"block sizes sum to {part.size}, multiplicity is {mult}",
            )
            partitions.append(part)
            values.append(value)
            total += mult
        _expect(total == n, cpath, f"multiplicities sum to {total}, expected n = {n}")
        try:
            classes.append(ClassSpec(JnfShape(partitions), values))
        except JnfError as exc:
            raise CliInputError(f"{cpath}: {exc}") from exc
    try:
        return TupleProblem(mode, n, classes)
    except ProblemError as exc:
        raise CliInputError(f"$: {exc}") from exc


def _value_to_json(value):
    if isinstance(value, GaussianRational):
        return {"re": format_rational(value.re), "im": format_rational(value.im)}
    if isinstance(value, MultiplicativeEigenvalue):
        return {
            "angle": format_rational(value.angle),
            "magnitude": format_rational(value.magnitude),
        }
    raise CliInputError(f"unserializable value {value!r}")


def serialize_problem(problem: TupleProblem) -> dict:
    return {
        "mode": problem.mode,
        "n": problem.n,
        "classes": [
            {
                "eigenvalues": [
                    {
                        "value": _value_to_json(v),
                        "multiplicity": c.shape.multiplicity(i),
                        "blocks": list(c.shape.blocks[i].parts),
                    }
                    for i, v in enumerate(c.values)
                ]
            }
            for c in problem.classes
        ],
    }


def _parse_entry(doc, path: str) -> GaussianRational:
    _expect(isinstance(doc, dict) and "re" in doc, path, 'entries use {"re": "p/q", "im": "p/q"}')
    try:
        return GaussianRational(parse_rational(doc["re"]), parse_rational(doc.get("im", "0")))
    except ExactNumberError as exc:
        raise CliInputError(f"{path}: {exc}") from exc


def parse_witness(doc) -> MatrixTuple:
    _expect(isinstance(doc, dict), "$", "witness document must be an object")
    mode = doc.get("mode")
    _expect(mode in (ADDITIVE, MULTIPLICATIVE), "mode", "must be a known mode")
    n = doc.get("n")
    _expect(isinstance(n, int) and n >= 1, "n", "must be a positive integer")
    mats_doc = doc.get("matrices")
    _expect(isinstance(mats_doc, list) and mats_doc, "matrices", "must be a non-empty list")
    matrices = []
    for j, mdoc in enumerate(mats_doc):
        mpath = f"matrices[{j}]"
        _expect(
            isinstance(mdoc, list) and len(mdoc) == n,
            mpath,
            f"must be a list of {n} rows",
        )
        rows = []
        for i, rdoc in enumerate(mdoc):
            _expect(
                isinstance(rdoc, list) and len(rdoc) == n,
                f"{mpath}[{i}]",
                f"must be a list of {n} entries",
            )
            rows.append([_parse_entry(e, f"{mpath}[{i}][{k}]") for k, e in enumerate(rdoc)])
        matrices.append(Matrix(rows))
    try:
        return MatrixTuple(mode, matrices)
    except WitnessError as exc:
        raise CliInputError(f"$: {exc}") from exc


def serialize_witness(t: MatrixTuple) -> dict:
    return {
        "mode": t.mode,
        "n": t.n,
        "matrices": [
            [
                [
                    {"re": format_rational(x.re), "im": format_rational(x.im)}
                    for x in row
                ]
                for row in m.rows
            ]
            for m in t.matrices
        ],
    }


# -- report helpers -------------------------------------------------------------


def _shape_json(shape: JnfShape):
    return shape.as_lists()


def _relation_json(rel: NonGenericityRelation | None):
    if rel is None:
        return None
    return {"cardinality": rel.m, "counts": [list(t) for t in rel.counts]}


def _trace_json(trace: PsiTrace):
    return {
        "terminal": trace.terminal,
        "levels": [
            {
                "n": step.n,
                "shapes": [_shape_json(s) for s in step.shapes],
                "kappa": step.report.kappa,
                "sum_r": step.report.sum_r,
                "chosen_labels": list(step.chosen_labels) if step.chosen_labels else None,
                "n1": step.n1,
            }
            for step in trace.steps
        ],
    }


def _verdict_json(verdict: Verdict):
    out = {
        "dsp": verdict.dsp,
        "weak_dsp": verdict.weak_dsp,
        "kappa": verdict.rigidity.kappa,
        "expected_dimension": verdict.expected_dimension,
        "good": verdict.good.good,
        "generic": None if verdict.genericity is None else verdict.genericity.generic,
        "justification": [
            {"rule": r.name, "statement": r.statement, "detail": r.detail}
            for r in verdict.justification
        ],
    }
    if verdict.genericity_note:
        out["genericity_note"] = verdict.genericity_note
    if verdict.specialness is not None:
        out["special"] = verdict.specialness.special
        out["special_diagonal"] = verdict.specialness.special_diagonal
    return out


def _certificate_json(cert):
    return {
        "l": cert.l,
        "n1": cert.n1,
        "diagonal": cert.diagonal,
        "inner_kappa": cert.inner_kappa,
        "inner_shapes": [_shape_json(c.shape) for c in cert.inner_classes],
        "subordinate_shapes": [_shape_json(c.shape) for c in cert.subordinate_classes],
    }


def _render_human(report, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for key in sorted(report):
            value = report[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_render_human(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(report, list):
        for value in report:
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_render_human(value, indent + 1))
            else:
                lines.append(f"{pad}- {value}")
    else:
        lines.append(f"{pad}{report}")
    return "\n".join(lines)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{path} is not valid JSON: {exc}") from exc


def _load_problem(path: str) -> TupleProblem:
    return parse_problem(_load_json(path))


def _load_witness(path: str) -> MatrixTuple:
    return parse_witness(_load_json(path))


# -- commands -------------------------------------------------------------------


def _cmd_classify(args) -> tuple[int, dict]:
    problem = _load_problem(args.problem)
    verdict = classify(
        problem,
        relation_cap=args.relation_cap,
        exhaustive_ties=args.exhaustive_ties,
    )
    if args.subordinate_witness:
        if not args.subordinate_classes:
            raise CliInputError(
                "--subordinate-witness requires --subordinate-classes"
            )
        wit = _load_witness(args.subordinate_witness)
        sub_problem = _load_problem(args.subordinate_classes)
        verdict = apply_subordinate_witness(
            problem, wit, sub_problem.classes, base_verdict=verdict
        )
    report = {"command": "classify", "verdict": _verdict_json(verdict)}
    code = EXIT_OK if UNKNOWN not in (verdict.dsp, verdict.weak_dsp) else EXIT_NEGATIVE
    return code, report


def _cmd_good(args) -> tuple[int, dict]:
    problem = _load_problem(args.problem)
    result = is_good(problem.shapes, exhaustive_ties=args.exhaustive_ties)
    report = {
        "command": "good",
        "good": result.good,
        "branches_explored": result.branches_explored,
        "trace": _trace_json(result.trace),
    }
    return (EXIT_OK if result.good else EXIT_NEGATIVE), report


def _cmd_generic(args) -> tuple[int, dict]:
    problem = _load_problem(args.problem)
    if args.generate:
        try:
            generated = generate_generic(problem.shapes, problem.mode, seed=args.seed)
        except GenericAssignmentError as exc:
            return EXIT_NEGATIVE, {
                "command": "generic",
                "generated": False,
                "error": str(exc),
            }
        doc = serialize_problem(generated)
        if args.output:
            _write_json(args.output, doc)
        return EXIT_OK, {"command": "generic", "generated": True, "problem": doc}
    result = is_generic(problem, cap=args.relation_cap)
    report = {
        "command": "generic",
        "generic": result.generic,
        "witness": _relation_json(result.witness),
    }
    return (EXIT_OK if result.generic else EXIT_NEGATIVE), report


def _cmd_special(args) -> tuple[int, dict]:
    problem = _load_problem(args.problem)
    result = classify_specialness(problem, relation_cap=args.relation_cap)
    report = {
        "command": "special",
        "special": result.special,
        "special_diagonal": result.special_diagonal,
        "quasi_generic": result.quasi_generic,
        "certificates": [_certificate_json(c) for c in result.certificates],
    }
    return (EXIT_OK if result.special else EXIT_NEGATIVE), report


def _cmd_psi_trace(args) -> tuple[int, dict]:
    problem = _load_problem(args.problem)
    result = is_good(problem.shapes, exhaustive_ties=args.exhaustive_ties)
    report = {
        "command": "psi-trace",
        "good": result.good,
        "trace": _trace_json(result.trace),
    }
    return (EXIT_OK if result.good else EXIT_NEGATIVE), report


def _cmd_verify(args) -> tuple[int, dict]:
    problem = _load_problem(args.problem)
    wit = _load_witness(args.witness)
    if wit.mode != problem.mode or wit.n != problem.n or wit.count != problem.class_count:
        raise CliInputError("witness mode/size/class count does not match the problem")
    relation = verify_relation(wit)
    memberships = [
        class_membership(m, c) for m, c in zip(wit.matrices, problem.classes)
    ]
    cdim = centralizer_dimension(wit)
    surjective = check_surjectivity(wit.matrices[:-1]) if wit.count > 1 else None
    irred = is_irreducible(wit)
    chi = euler_characteristic(wit)
    kappa = rigidity_report(problem.shapes).kappa
    local_dim = None
    local_dim_note = None
    if relation and all(memberships):
        local_dim = local_dimension(wit, problem.classes)
    else:
        local_dim_note = "skipped: relation or membership failed"
    expected = expected_dimension(problem)
    report = {
        "command": "verify",
        "relation": relation,
        "class_membership": memberships,
        "centralizer_dimension": cdim,
        "centralizer_trivial": cdim == 1,
        "surjective_without_last": surjective,
        "irreducible": irred.irreducible,
        "algebra_dimension": irred.algebra_dimension,
        "euler_characteristic": chi,
        "kappa": kappa,
        "euler_matches_kappa": chi == kappa,
        "local_dimension": local_dim,
        "expected_dimension": expected,
        "dimension_consistent": (local_dim == expected) if (local_dim is not None and cdim == 1) else None,
    }
    if local_dim_note:
        report["local_dimension_note"] = local_dim_note
    passed = relation and all(memberships)
    return (EXIT_OK if passed else EXIT_NEGATIVE), report


def _cmd_dim(args) -> tuple[int, dict]:
    problem = _load_problem(args.problem)
    report = {
        "command": "dim",
        "expected_dimension": expected_dimension(problem),
        "kappa": rigidity_report(problem.shapes).kappa,
    }
    if args.witness:
        wit = _load_witness(args.witness)
        try:
            report["local_dimension"] = local_dimension(wit, problem.classes)
        except WitnessPreconditionError as exc:
            report["local_dimension"] = None
            report["local_dimension_note"] = str(exc)
            return EXIT_NEGATIVE, report
    return EXIT_OK, report


def _parse_epsilon(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliInputError(f"--epsilon: cannot parse {text!r}: {exc}") from exc


def _cmd_deform(args) -> tuple[int, dict]:
    base = _load_witness(args.base)
    directions_doc = _load_witness(args.directions)
    if directions_doc.n != base.n or directions_doc.count != base.count:
        raise CliInputError("directions must match the base tuple in size and count")
    request = DeformationRequest(
        base=base,
        directions=directions_doc.matrices,
        epsilon=_parse_epsilon(args.epsilon),
        tolerance=args.tolerance,
    )
    result = deform_step(request)
    doc = serialize_witness(result.deformed)
    if args.output:
        _write_json(args.output, doc)
    report = {
        "command": "deform",
        "epsilon": format_rational(result.epsilon),
        "residual": format_rational(result.residual),
        "residual_float": result.residual_float,
        "residual_bound": None if result.bound is None else format_rational(result.bound),
        "within_tolerance": result.within_tolerance,
        "deformed": doc if not args.output else {"written_to": args.output},
    }
    return (EXIT_OK if result.within_tolerance else EXIT_NEGATIVE), report


def _write_json(path: str, doc) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise CliInputError(f"cannot write {path}: {exc}") from exc


# -- entry point ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsp",
        description="Exact decision and verification tools for matrix tuples "
        "with prescribed conjugacy classes (sum zero or product identity).",
    )
    parser.add_argument("--human", action="store_true", help="prose report instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, problem=True):
        if problem:
            p.add_argument("problem", help="problem document (JSON)")
        p.add_argument("--relation-cap", type=int, default=DEFAULT_RELATION_CAP,
                       help="bound on the genericity search size")
        p.add_argument("--exhaustive-ties", action="store_true",
                       help="explore every tie branch of the reduction chain")
        p.add_argument("--human", action="store_true",
                       help="prose report instead of JSON")

    p = sub.add_parser("classify", help="full solvability verdict")
    add_common(p)
    p.add_argument("--subordinate-witness", help="witness document for the subordinate-solution rule")
    p.add_argument("--subordinate-classes", help="problem document listing the witness classes")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("good", help="goodness of the shape tuple")
    add_common(p)
    p.set_defaults(func=_cmd_good)

    p = sub.add_parser("generic", help="genericity of the eigenvalue data")
    add_common(p)
    p.add_argument("--generate", action="store_true",
                   help="generate a verified-generic assignment for the problem's shapes")
    p.add_argument("--seed", type=int, default=0, help="generation seed")
    p.add_argument("--output", help="write the generated problem document here")
    p.set_defaults(func=_cmd_generic)

    p = sub.add_parser("special", help="search for repeated-block certificates")
    add_common(p)
    p.set_defaults(func=_cmd_special)

    p = sub.add_parser("psi-trace", help="full reduction chain")
    add_common(p)
    p.set_defaults(func=_cmd_psi_trace)

    p = sub.add_parser("verify", help="all witness checks against a problem")
    add_common(p)
    p.add_argument("witness", help="witness document (JSON)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("dim", help="expected and (with a witness) local dimension")
    add_common(p)
    p.add_argument("--witness", help="witness document (JSON)")
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("deform", help="first-order deformation step")
    p.add_argument("base", help="base witness document (JSON)")
    p.add_argument("directions", help="direction matrices (witness-format JSON)")
    p.add_argument("--epsilon", required=True, help="step size, e.g. 1/1024")
    p.add_argument("--tolerance", type=float, default=1e-9,
                   help="acceptable residual for exit status 0")
    p.add_argument("--output", help="write the deformed witness here")
    p.add_argument("--human", action="store_true",
                   help="prose report instead of JSON")
    p.set_defaults(func=_cmd_deform)

    return parser


def run_command(argv) -> tuple[int, dict]:
    """Parse argv and execute; returns (exit_code, report)."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliInputError as exc:
        return EXIT_INPUT, {"error": str(exc)}
    except (ProblemError, JnfError, WitnessError, SpecialSearchError,
            RelationSearchCapError, TieVerdictError, DeformationError,
            LinalgError) as exc:
        return EXIT_INPUT, {"error": f"{type(exc).__name__}: {exc}"}


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    human = "--human" in argv
    code, report = run_command(argv)
    if human:
        print(_render_human(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
