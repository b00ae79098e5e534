"""Command line driver emitting schema-checked JSON reports.

Every invocation is normalized into a run configuration, validated against
the shipped schema before dispatch, and answered with a single JSON report
on stdout carrying the input echo, seed, field, and version.  Identical
configurations produce byte-identical reports.  Exit codes: 0 success,
2 usage or schema violation, 3 mathematical precondition failure,
4 internal inconsistency or a failed self-verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

import jsonschema

from . import __version__
from .errors import InconsistencyError, PreconditionError
from .fields import QQ, PrimeField

USAGE_EXIT = 2
PRECONDITION_EXIT = 3
INCONSISTENCY_EXIT = 4

_INPUT_DEFS = {
    "pfaffian": "pfaffianInput",
    "complex-classify": "pfaffianInput",
    "pencil-analyze": "pencilInput",
    "net-analyze": "netInput",
    "net-fournets": "netInput",
}

_FIELD_COMMANDS = set(_INPUT_DEFS)


def load_schema() -> dict:
    text = (
        resources.files("skewloci") / "schema" / "report.schema.json"
    ).read_text()
    return json.loads(text)


def _validate_or_messages(instance, schema) -> list:
    validator = jsonschema.Draft202012Validator(schema)
    return [
        f"{'/'.join(str(p) for p in err.absolute_path) or '<root>'}: {err.message}"
        for err in sorted(validator.iter_errors(instance), key=str)
    ]


def _def_schema(schema: dict, name: str) -> dict:
    sub = dict(schema["$defs"][name])
    sub["$defs"] = schema["$defs"]
    return sub


def parse_field(name: str):
    if name in ("QQ", "Q"):
        return QQ
    if name.startswith("F"):
        base = name[1:]
        if "^" in base:
            raise PreconditionError(
                "extension fields arise only in outputs; start from Q or F<p>"
            )
        return PrimeField(int(base))
    raise PreconditionError(f"unknown field descriptor {name!r}")


def encode_element(x):
    v = x.v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return str(v)
    return [int(c) for c in v]


def decode_scalar(field, s):
    if isinstance(s, bool) or not isinstance(s, (int, str)):
        raise PreconditionError(f"cannot read {s!r} as a scalar")
    if isinstance(s, int):
        return field(s)
    if "/" in s:
        num, den = s.split("/", 1)
        if field is QQ:
            return field(Fraction(int(num), int(den)))
        return field(int(num)) * field(int(den)).inverse()
    return field(int(s))


def serialize_space(space) -> dict:
    return {
        "proj_dim": space.proj_dim,
        "basis": [[encode_element(x) for x in row] for row in space.rows],
    }


def _decode_matrix(field, doc):
    from .linalg import skew_from_pairs

    if "pairs" in doc:
        coeffs = [decode_scalar(field, s) for s in doc["pairs"]]
        return skew_from_pairs(field, coeffs)
    if "matrix" in doc:
        return [[decode_scalar(field, s) for s in row] for row in doc["matrix"]]
    raise PreconditionError("input needs either 'pairs' or 'matrix'")


def _decode_pairs_vectors(field, doc, count):
    gens = doc["generators"]
    return [[decode_scalar(field, s) for s in g] for g in gens[:count]]


# ---------------------------------------------------------------------------
# command handlers: each returns the result object


def run_pfaffian(field, doc, seed, trials):
    from .linalg import check_skew, pfaffian_field, rank

    M = _decode_matrix(field, doc)
    check_skew(field, M)
    return {
        "order": len(M),
        "pfaffian": encode_element(pfaffian_field(field, M)),
        "rank": rank(field, M),
    }


def run_classify(field, doc, seed, trials):
    from .complexes import LinearComplex

    cx = LinearComplex(field, _decode_matrix(field, doc))
    cls = cx.complex_class()
    return {
        "kind": cls.kind,
        "rank": cx.rank(),
        "pfaffian": encode_element(cls.pf),
        "singular_space": serialize_space(cls.singular_space),
    }


def run_pencil(field, doc, seed, trials):
    from .complexes import LinearComplex
    from .pencils import Pencil, alpha

    g1, g2 = _decode_pairs_vectors(field, doc, 2)
    pen = Pencil(
        field,
        LinearComplex.from_pairs(field, g1),
        LinearComplex.from_pairs(field, g2),
    )
    rep = alpha(pen, seed=seed)
    members = [
        {
            "parameter": [encode_element(m.lam), encode_element(m.mu)],
            "multiplicity": m.multiplicity,
            "kind": m.kind,
            "field": m.complex.field.short(),
            "singular_space": serialize_space(m.complex.kernel_space()),
        }
        for m in rep.members
    ]
    configuration = None
    if rep.configuration is not None:
        cfg = rep.configuration
        configuration = {
            "case": cfg.case_id,
            "span_dim": cfg.span_dim,
            "pairwise_meets": list(cfg.pairwise_meets),
            "trisecant": (
                serialize_space(cfg.trisecant) if cfg.trisecant is not None else None
            ),
        }
    return {
        "verdict": rep.verdict,
        "members": members,
        "lines": (
            [serialize_space(l) for l in rep.lines]
            if rep.lines is not None
            else None
        ),
        "configuration": configuration,
        "second_type_witness": (
            serialize_space(rep.second_type_witness)
            if rep.second_type_witness is not None
            else None
        ),
    }


def run_net(field, doc, seed, trials):
    from .errors import DegenerateInputError, UnsupportedFieldError
    from .nets import (
        EXHAUSTIVE_PRIME_CAP,
        Net,
        count_scroll_points,
        degree_probe,
        directrix_planes,
        net_pfaffian_cubic,
        net_type,
    )

    net = Net.from_pair_vectors(field, _decode_pairs_vectors(field, doc, 3))
    notes = []
    trep = net_type(net, seed=seed)
    type_obj = {
        "kind": trep.kind,
        "witness_kind": trep.witness_kind,
        "witness": (
            [encode_element(x) for x in trep.witness]
            if trep.witness is not None
            else None
        ),
        "witness_field": trep.field.short() if trep.field is not None else None,
        "generator_index": trep.generator_index,
        "caveat": trep.caveat,
    }

    cubic_obj = None
    cubic = None
    try:
        cubic = net_pfaffian_cubic(net)
    except DegenerateInputError:
        notes.append("the restricted Pfaffian vanishes; no base cubic")
    if cubic is not None:
        try:
            smooth = cubic.smoothness(seed=seed).smooth
        except UnsupportedFieldError:
            smooth = None
            notes.append("smoothness is undecided over this field")
        cubic_obj = {
            "coefficients": [encode_element(c) for c in cubic.coeffs],
            "smooth": smooth,
        }

    count_obj = None
    if field.order is not None and field.degree == 1 and field.char <= EXHAUSTIVE_PRIME_CAP:
        rep = count_scroll_points(net)
        count_obj = {
            "q": rep.q,
            "x_count": rep.x_count,
            "c_count": rep.c_count,
            "fibered": rep.fibered,
            "ranks_all_four": rep.ranks_all_four,
            "fibers_disjoint": rep.fibers_disjoint,
        }
    else:
        notes.append("exhaustive counting is limited to prime fields up to 11")

    directrix_obj = None
    if trep.kind != "general":
        notes.append("plane search skipped: the net has a rank-2 member")
    elif field.order is None:
        notes.append("plane search skipped: it enumerates a finite field")
    else:
        try:
            drep = directrix_planes(net, seed=seed)
            directrix_obj = {
                "planes": [serialize_space(p) for p in drep.planes],
                "infinite_family": drep.infinite_family,
            }
        except PreconditionError as e:
            notes.append(f"plane search skipped: {e}")

    probe_obj = None
    if trials:
        try:
            prep = degree_probe(net, trials=trials, seed=seed)
            probe_obj = {
                "trials": len(prep.trials),
                "max_generic": prep.max_generic,
                "attained_six": prep.attained_six,
            }
        except PreconditionError as e:
            notes.append(f"degree probe skipped: {e}")
    return {
        "type": type_obj,
        "cubic": cubic_obj,
        "count": count_obj,
        "directrix": directrix_obj,
        "probe": probe_obj,
        "notes": notes,
    }


def run_fournets(field, doc, seed, trials):
    from .fournets import companion_nets
    from .nets import Net

    net = Net.from_pair_vectors(field, _decode_pairs_vectors(field, doc, 3))
    rep = companion_nets(net, cross_samples=trials or 50, seed=seed)
    return {
        "complete": rep.complete,
        "torsion_classes_found": rep.torsion_classes_found,
        "self_recovered": rep.self_recovered,
        "all_general": rep.all_general,
        "pairwise_distinct": rep.pairwise_distinct,
        "companions": [
            {
                "generators": [
                    [encode_element(x) for x in g.coeffs()]
                    for g in comp.generators
                ]
            }
            for comp in rep.companion_nets
        ],
        "cross": [
            {
                "forward_checked": c.forward_checked,
                "backward_checked": c.backward_checked,
                "forward_ok": c.forward_ok,
                "backward_ok": c.backward_ok,
            }
            for c in rep.cross_verification
        ],
        "escalations": [
            {
                "torsion_rep": [encode_element(x) for x in trep],
                "point": (
                    [encode_element(x) for x in pt] if pt is not None else None
                ),
                "reason": reason,
            }
            for trep, pt, reason in rep.field_escalations
        ],
    }


def _render_table(table, conflict_at) -> list:
    n = table.n
    head = ["p"] + [f"h{i}" for i in range(n + 1)] + ["notes"]
    rows = []
    for row in table.rows:
        cells = [str(row.p)]
        for i, e in enumerate(row.entries):
            if row.provenance[i] == "conflict":
                pred, orc = conflict_at[(i, row.p)]
                cells.append(f"{pred}!{orc}")
            else:
                cells.append(str(e))
        notes = []
        for i in range(n + 1):
            if row.provenance[i] == "conflict":
                pred, orc = conflict_at[(i, row.p)]
                notes.append(f"conflict at i={i}: predicted {pred}, oracle {orc}")
        if not row.chi_consistent:
            notes.append("chi gap")
        cells.append("; ".join(notes))
        rows.append(cells)
    widths = [
        max(len(r[c]) for r in [head] + rows) for c in range(len(head) - 1)
    ]
    out = []
    for cells in [head] + rows:
        line = "  ".join(c.rjust(w) for c, w in zip(cells, widths))
        if cells[-1]:
            line += "  " + cells[-1]
        out.append(line.rstrip())
    return out


def run_cohomology(n, m, p_from, p_to, seed):
    from .cohomology import buchsbaum_sv_check, degree_formula, en_table

    p_range = None
    if p_from is not None or p_to is not None:
        if p_from is None or p_to is None:
            raise PreconditionError("--from and --to must be given together")
        p_range = (p_from, p_to)
    table = en_table(n, m, p_range=p_range)
    sv = buchsbaum_sv_check(table)
    conflicts = table.conflicts()
    conflict_at = {(i, p): (pred, orc) for i, p, pred, orc in conflicts}
    return {
        "n": n,
        "m": m,
        "window": list(table.window),
        "degree": degree_formula(n, m),
        "rows": [
            {
                "twist": row.p,
                "entries": list(row.entries),
                "provenance": list(row.provenance),
                "chi_consistent": row.chi_consistent,
                "caveat": row.caveat,
            }
            for row in table.rows
        ],
        "conflicts": [
            {"i": i, "twist": p, "predicted": pred, "oracle": orc}
            for i, p, pred, orc in conflicts
        ],
        "chi_gaps": table.chi_gaps(),
        "sv": {
            "holds": sv.holds,
            "witness": (
                [list(sv.witness[0]), list(sv.witness[1])]
                if sv.witness is not None
                else None
            ),
        },
        "rendered": _render_table(table, conflict_at),
    }


def run_selftest():
    from .selftest import run_all

    results = run_all(progress=lambda r: print(r.line(), file=sys.stderr))
    return {
        "criteria": [
            {"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }


# ---------------------------------------------------------------------------
# argument plumbing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewloci",
        description="Exact degeneracy-locus geometry of skew forms on P^5.",
    )
    sub = parser.add_subparsers(dest="group", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument(
                "source",
                help="input file path, or an inline JSON object starting with '{'",
            )
        p.add_argument("--field", default=None,
                       help="field descriptor: QQ or F<p> (overrides the file)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--json-out", default=None)

    p = sub.add_parser("pfaffian", help="Pfaffian and rank of one skew matrix")
    common(p)

    p = sub.add_parser("complex", help="single complex commands")
    s = p.add_subparsers(dest="action", required=True)
    common(s.add_parser("classify", help="rank class and singular space"))

    p = sub.add_parser("pencil", help="pencil commands")
    s = p.add_subparsers(dest="action", required=True)
    common(s.add_parser("analyze", help="singular members and their lines"))

    p = sub.add_parser("net", help="net commands")
    s = p.add_subparsers(dest="action", required=True)
    common(s.add_parser("analyze", help="type, cubic, counts, planes"))
    common(s.add_parser("fournets", help="the four companion nets"))

    p = sub.add_parser("cohomology", help="cohomology commands")
    s = p.add_subparsers(dest="action", required=True)
    t = s.add_parser("table", help="ideal-sheaf cohomology table")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--from", dest="p_from", type=int, default=None)
    t.add_argument("--to", dest="p_to", type=int, default=None)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--json-out", default=None)

    p = sub.add_parser("degree", help="degree of the degeneracy locus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json-out", default=None)

    p = sub.add_parser("selftest", help="run the verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json-out", default=None)
    return parser


def _command_name(args) -> str:
    group = args.group
    action = getattr(args, "action", None)
    if group in ("pfaffian", "degree", "selftest"):
        return {"pfaffian": "pfaffian", "degree": "degree",
                "selftest": "selftest"}[group]
    return {
        ("complex", "classify"): "complex-classify",
        ("pencil", "analyze"): "pencil-analyze",
        ("net", "analyze"): "net-analyze",
        ("net", "fournets"): "net-fournets",
        ("cohomology", "table"): "cohomology-table",
    }[(group, action)]


def _load_input(source: str):
    if source.lstrip().startswith("{"):
        return json.loads(source), None
    with open(source, "r") as fh:
        return json.load(fh), source


def _usage_error(msg: str) -> int:
    print(f"skewloci: {msg}", file=sys.stderr)
    return USAGE_EXIT


def _structured_error(exc: Exception, code: int) -> int:
    doc = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    print(json.dumps(doc, indent=2, sort_keys=True), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_EXIT

    command = _command_name(args)
    schema = load_schema()

    input_doc = None
    input_path = None
    if command in _INPUT_DEFS:
        try:
            input_doc, input_path = _load_input(args.source)
        except (OSError, json.JSONDecodeError) as e:
            return _usage_error(f"cannot read input: {e}")

    config = {
        "command": command,
        "field": getattr(args, "field", None)
        or (input_doc.get("field") if isinstance(input_doc, dict) else None),
        "seed": getattr(args, "seed", 0),
        "trials": getattr(args, "trials", None),
        "input": input_doc,
        "input_path": input_path,
        "json_out": getattr(args, "json_out", None),
        "n": getattr(args, "n", None),
        "m": getattr(args, "m", None),
        "from": getattr(args, "p_from", None),
        "to": getattr(args, "p_to", None),
    }
    problems = _validate_or_messages(config, _def_schema(schema, "runConfig"))
    if command in _INPUT_DEFS:
        if config["field"] is None:
            problems.append("field: a field descriptor is required")
        problems += _validate_or_messages(
            input_doc, _def_schema(schema, _INPUT_DEFS[command])
        )
    if problems:
        for msg in problems:
            print(f"skewloci: config: {msg}", file=sys.stderr)
        return USAGE_EXIT

    try:
        field = None
        if command in _FIELD_COMMANDS:
            field = parse_field(config["field"])
        if command == "pfaffian":
            result = run_pfaffian(field, input_doc, args.seed, args.trials)
        elif command == "complex-classify":
            result = run_classify(field, input_doc, args.seed, args.trials)
        elif command == "pencil-analyze":
            result = run_pencil(field, input_doc, args.seed, args.trials)
        elif command == "net-analyze":
            result = run_net(field, input_doc, args.seed, args.trials)
        elif command == "net-fournets":
            result = run_fournets(field, input_doc, args.seed, args.trials)
        elif command == "cohomology-table":
            result = run_cohomology(args.n, args.m, args.p_from, args.p_to,
                                    args.seed)
        elif command == "degree":
            from .cohomology import degree_formula

            result = {"degree": degree_formula(args.n, args.m)}
        else:
            result = run_selftest()
    except PreconditionError as e:
        return _structured_error(e, PRECONDITION_EXIT)
    except InconsistencyError as e:
        return _structured_error(e, INCONSISTENCY_EXIT)

    report = {
        "command": command,
        "version": __version__,
        "field": field.short() if field is not None else None,
        "seed": config["seed"],
        "input": input_doc if input_doc is not None else {
            k: config[k] for k in ("n", "m", "from", "to") if config[k] is not None
        } or None,
        "result": result,
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if config["json_out"]:
        with open(config["json_out"], "w") as fh:
            fh.write(text)
    if command == "selftest" and not result["all_passed"]:
        return INCONSISTENCY_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
