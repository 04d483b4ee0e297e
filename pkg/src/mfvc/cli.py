"""Command-line interface.

Subcommands: quiver, homtable, mirror-check, transport-verify, invariants,
signs, milnor.  Exit codes: 0 success / check passed, 1 check failed,
2 invalid input.  JSON output is deterministic for fixed flags and seed.
"""

import argparse
import json
import sys
from fractions import Fraction

from .families import FAMILIES, FamilySpec

SCHEMA = "1"


def frac_str(fr: Fraction):
    return f"{fr.numerator}/{fr.denominator}" if fr.denominator != 1 else str(fr.numerator)


def _spec_from_args(args):
    return FamilySpec(args.family, args.p, args.q)


def _emit(args, payload):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# DOT


def quiver_to_dot(quiver, display, groups=None):
    lines = ["digraph quiver {", '  rankdir="BT";']
    ids = {v: f"v{i}" for i, v in enumerate(quiver.vertices)}
    if groups:
        for gname, members in groups.items():
            lines.append(f"  subgraph cluster_{gname} {{")
            lines.append(f'    label="{gname}";')
            for v in members:
                lines.append(f'    {ids[v]} [label="{display(v)}"];')
            lines.append("  }")
        grouped = {v for members in groups.values() for v in members}
    else:
        grouped = set()
    for v in quiver.vertices:
        if v not in grouped:
            lines.append(f'  {ids[v]} [label="{display(v)}"];')
    for k, (a, b) in enumerate(quiver.arrows):
        lines.append(f'  {ids[a]} -> {ids[b]} [label="a{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot(text):
    """Minimal reader for the DOT subset emitted above: returns
    (node ids, edge list).  Used by the round-trip test."""
    nodes = set()
    edges = []
    for raw in text.splitlines():
        line = raw.strip().rstrip(";")
        if not line or line.startswith(("digraph", "}", "{", "subgraph", "label=", "rankdir")):
            continue
        if "->" in line:
            lhs, rhs = line.split("->", 1)
            tgt = rhs.split("[", 1)[0].strip()
            edges.append((lhs.strip(), tgt))
            nodes.update((lhs.strip(), tgt))
        elif "[" in line:
            nodes.add(line.split("[", 1)[0].strip())
    return nodes, edges


def _display_label(label):
    kind = label[0]
    if kind == "K0":
        return f"K0({label[1]},{label[2]})"
    if kind == "Kx":
        return f"Kx({label[1]})[3]"
    if kind == "Ky":
        return f"Ky({label[1]})[3]"
    if kind == "Kf":
        return "Kf[3]"
    if kind == "V0":
        return f"V0({label[1]},{label[2]})"
    if kind == "Vyf":
        return f"Vyf({label[1]})"
    if kind == "Vxf":
        return f"Vxf({label[1]})"
    return "Vxy"


def _vertex_groups(labels):
    groups = {}
    for lab in labels:
        groups.setdefault(lab[0], []).append(lab)
    return groups


# ---------------------------------------------------------------------------
# subcommands


def cmd_milnor(args):
    spec = _spec_from_args(args)
    if args.format == "json":
        _emit(args, {"schema": SCHEMA, "spec": spec.label(), "milnor": spec.milnor(),
                     "decomposition": spec.milnor_decomposition()})
    else:
        print(spec.milnor())
    return 0


def _object_shift(label):
    return 3 if label[0] in ("Kx", "Ky", "Kf") else 0


def cmd_quiver(args):
    from .aside import assemble_directed_algebra
    from .bside import composition_table
    from .directed import extract_quiver
    from .grading import make_grading_group

    spec = _spec_from_args(args)

    def build(side):
        algebra = composition_table(spec) if side == "B" else assemble_directed_algebra(spec)
        quiver, _ = extract_quiver(algebra)
        return quiver

    if args.side == "both":
        if args.format == "dot":
            print("error: --side both supports only --format json", file=sys.stderr)
            return 2
        payload = {
            "schema": SCHEMA,
            "spec": spec.label(),
            "A": build("A").to_json_dict(_display_label, _object_shift),
            "B": build("B").to_json_dict(_display_label, _object_shift),
            "grading_group": make_grading_group(spec.family, spec.p, spec.q).invariants(),
        }
        _emit(args, payload)
        return 0

    quiver = build(args.side)
    if args.format == "dot":
        text = quiver_to_dot(quiver, _display_label, _vertex_groups(quiver.vertices))
        if args.out:
            open(args.out, "w").write(text)
        else:
            sys.stdout.write(text)
    else:
        payload = quiver.to_json_dict(_display_label, _object_shift)
        payload["spec"] = spec.label()
        payload["side"] = args.side
        payload["grading_group"] = make_grading_group(spec.family, spec.p, spec.q).invariants()
        _emit(args, payload)
    return 0


def cmd_homtable(args):
    from .bside import hom_table

    spec = _spec_from_args(args)
    window = (-args.degree_window, args.degree_window)
    table = hom_table(spec, window)
    payload = {
        "schema": SCHEMA,
        "spec": spec.label(),
        "window": list(window),
        "homs": table.rows(),
    }
    _emit(args, payload)
    return 0


def cmd_mirror_check(args):
    from .compare import mirror_check

    spec = _spec_from_args(args)
    window = (-args.degree_window, args.degree_window)
    report = mirror_check(spec, window)
    report["schema"] = SCHEMA
    _emit(args, report)
    return 0 if report["pass"] else 1


def cmd_invariants(args):
    from .aside import intersection_table, path_schedule, surface_invariants
    from .grading import make_grading_group

    spec = _spec_from_args(args)
    group = make_grading_group(spec.family, spec.p, spec.q)
    sched = path_schedule(spec)
    payload = {
        "schema": SCHEMA,
        "spec": spec.label(),
        "surface": surface_invariants(spec),
        "grading_group": group.invariants(),
        "milnor": spec.milnor(),
        "decomposition": spec.milnor_decomposition(),
        "schedule": {f"{l},{m}": frac_str(th) for (l, m), th in sorted(sched.theta.items())},
        "fingers": [[list(a), list(b)] for a, b in sched.fingers],
        "order": [_display_label(lab) for lab in sched.order],
        "intersections": [
            {"src": _display_label(a), "tgt": _display_label(b), "count": c}
            for (a, b), c in sorted(intersection_table(spec).items(),
                                    key=lambda kv: (sched.order.index(kv[0][0]),
                                                    sched.order.index(kv[0][1])))
        ],
    }
    _emit(args, payload)
    return 0


def cmd_signs(args):
    from .aside import random_grid_signs, sign_rectify

    spec = _spec_from_args(args)
    A, B = spec.p - 1, spec.q - 1
    right, up = random_grid_signs(A, B, args.seed)
    fixed_r, fixed_u = sign_rectify(A, B, right, up)
    squares = [
        {"i": i, "j": j,
         "commutes": fixed_r[(i, j)] * fixed_u[(i + 1, j)] == fixed_u[(i, j)] * fixed_r[(i, j + 1)]}
        for i in range(1, A) for j in range(1, B)
    ]
    payload = {
        "schema": SCHEMA,
        "spec": spec.label(),
        "seed": args.seed,
        "grid": [A, B],
        "flipped_edges": sorted(
            f"r({i},{j})" for (i, j) in fixed_r if fixed_r[(i, j)] != right[(i, j)]
        ),
        "squares_commute": all(s["commutes"] for s in squares),
        "squares": squares,
    }
    _emit(args, payload)
    return 0 if payload["squares_commute"] else 1


def cmd_transport_verify(args):
    from .transport import verification_grid

    spec = _spec_from_args(args)
    reports = verification_grid(spec, delta=args.delta, eps=args.eps, tol=args.tol)
    lines = ["l,m,s,angle_error,modulus_error,steps"]
    for r in reports:
        lines.append(f"{r['l']},{r['m']},{r['s']},{r['angle_error']:.3e},{r['modulus_error']:.3e},{r['steps']}")
    text = "\n".join(lines) + "\n"
    if args.out:
        open(args.out, "w").write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r["ok"] for r in reports) else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mfvc",
        description="Matrix-factorisation and vanishing-cycle categories of "
                    "two-variable invertible polynomials, with a mirror check.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, degree_window=False, numeric=False, seed=False):
        sp.add_argument("--family", required=True, choices=FAMILIES)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--format", choices=("json", "dot", "text"), default="json")
        sp.add_argument("--out", default=None)
        if degree_window:
            sp.add_argument("--degree-window", dest="degree_window", type=int, default=6)
        if numeric:
            sp.add_argument("--eps", type=float, default=0.1)
            sp.add_argument("--delta", type=float, default=1e-3)
            sp.add_argument("--tol", type=float, default=1e-6)
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("milnor", help="Milnor number and its decomposition")
    add_common(sp)
    sp.set_defaults(func=cmd_milnor, format="text")

    sp = sub.add_parser("quiver", help="Gabriel quiver with relations")
    add_common(sp)
    sp.add_argument("--side", choices=("A", "B", "both"), default="B")
    sp.set_defaults(func=cmd_quiver)

    sp = sub.add_parser("homtable", help="hom dimensions between the basic objects")
    add_common(sp, degree_window=True)
    sp.set_defaults(func=cmd_homtable)

    sp = sub.add_parser("mirror-check", help="verify the two sides agree")
    add_common(sp, degree_window=True)
    sp.set_defaults(func=cmd_mirror_check)

    sp = sub.add_parser("invariants", help="surface and grading-group invariants")
    add_common(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("signs", help="sign-rectification sweep on a random grid")
    add_common(sp, seed=True)
    sp.set_defaults(func=cmd_signs)

    sp = sub.add_parser("transport-verify", help="closed form vs numeric transport (CSV)")
    add_common(sp, numeric=True)
    sp.set_defaults(func=cmd_transport_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
