"""Command line front end: ``qpsilt COMMAND FILE [options]``.

Exit codes: 0 all verdicts pass, 1 a mathematical failure, 2 an input
error, 3 a cap or truncation limit was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

import numpy as np

from .algebra import gabriel_quiver, jacobian_algebra
from .complexes import BoundedComplex
from .diagnostics import SHIFT_CHECK_NOTE, almost_split_candidate, is_projective_simple, omega4_report
from .endalg import SummandAlgebra
from .errors import (CapExceededError, LeavesWindowError, NotMutableError, NotRigidError, ParseError,
                     QPSiltError, TruncationError, UnknownNameError)
from .exactlin import Field
from .modules import is_self_injective
from .qp import mutate, mutable_at
from .session import Session
from .twoterm import (decompose_complex, enumerate_two_term_silting, is_presilting, is_silting,
                      is_tilting_candidate, silting_mutate, stalk, support_tau_tilting_pair)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# rendering helpers


def matrix_json(field, arr) -> list:
    a = np.asarray(arr)
    if a.ndim == 0:
        return field.to_jsonable(a.item())
    return [matrix_json(field, x) for x in a]


def complex_json(x: BoundedComplex) -> dict:
    alg = x.alg
    f = alg.field
    labels = alg.vertices
    out = {"degrees": {}, "differentials": {}}
    for n in x.degrees():
        out["degrees"][str(n)] = [labels[v] for v in x.term(n)]
    for n in x.degrees():
        if x.term(n) and x.term(n + 1):
            out["differentials"][str(n)] = matrix_json(f, x.diff(n))
    return out


def quiver_arrows(q) -> list:
    return sorted([a.source, a.target] for a in q.arrows)


def qp_json(qp) -> dict:
    f = qp.field
    return {"vertices": list(qp.quiver.vertices),
            "arrows": [[a.name, a.source, a.target] for a in qp.quiver.arrows],
            "potential": [[" ".join(w), f.to_jsonable(c)] for w, c in sorted(qp.potential.terms.items())]}


# ---------------------------------------------------------------------------
# commands (each returns a report dict with a "verdict" key)


def cmd_verify_mizuno(session: Session, qp_name: str, vertices, sides) -> dict:
    vertices = [str(v) for v in vertices]
    sides = [s.upper() for s in sides] if sides else ["L"] * len(vertices)
    if len(sides) != len(vertices):
        raise ValueError("need one side per vertex")
    if any(s not in ("L", "R") for s in sides):
        raise ValueError("sides must be L or R")
    qp = session.qp(qp_name)
    rep = {"command": "verify-mizuno", "qp": qp_name, "field": session.field.name,
           "sequence": vertices, "sides": sides}
    J = jacobian_algebra(qp, cap=session.trunc)
    si, nu = is_self_injective(J)
    rep["self_injective"] = si
    rep["nakayama"] = nu
    if not si:
        rep["verdict"] = "FAIL"
        rep["reason"] = "the Jacobian algebra is not self-injective; the comparison does not apply"
        return rep
    # QP side
    cur = qp
    for k, v in enumerate(vertices):
        if not mutable_at(cur, v):
            raise NotMutableError(f"step {k}: vertex {v} lies on a loop or 2-cycle", index=k, vertex=v)
        cur = mutate(cur, v)
    J2 = jacobian_algebra(cur, cap=session.trunc)
    g_qp = gabriel_quiver(J2)
    # silting side
    parts = [stalk(J, (i,)) for i in range(J.n)]
    steps = []
    for k, (v, side) in enumerate(zip(vertices, sides)):
        try:
            parts = silting_mutate(parts, J.vindex(v), side)
        except LeavesWindowError as e:
            raise LeavesWindowError(f"step {k}: {e}", complex=e.complex) from None
        steps.append({"vertex": v, "side": side, "new_summand": complex_json(parts[J.vindex(v)])})
    E = SummandAlgebra(parts, names=J.vertices).alg
    g_end = gabriel_quiver(E)
    same_quiver = Counter(map(tuple, quiver_arrows(g_end.quiver))) == Counter(map(tuple, quiver_arrows(g_qp.quiver)))
    same_dim = g_end.dim == g_qp.dim
    same_layers = list(g_end.rad_layers) == list(g_qp.rad_layers)
    ok = same_quiver and same_dim and same_layers
    rep.update({
        "silting_steps": steps,
        "endomorphism_side": {"arrows": quiver_arrows(g_end.quiver), "dim": g_end.dim,
                              "rad_layers": list(g_end.rad_layers), "cartan": g_end.cartan},
        "qp_side": {"mutated_qp": qp_json(cur), "arrows": quiver_arrows(g_qp.quiver), "dim": g_qp.dim,
                    "rad_layers": list(g_qp.rad_layers), "cartan": g_qp.cartan},
        "checks": {"quiver": same_quiver, "dim": same_dim, "rad_layers": same_layers},
        "verdict": "invariant-level PASS" if ok else "FAIL",
    })
    return rep


def cmd_necessity(session: Session, alg_name: str) -> dict:
    a = session.algebra(alg_name)
    r = omega4_report(a)
    rep = {"command": "necessity", "algebra": alg_name, "field": session.field.name}
    rep.update({k: v for k, v in r.to_dict().items() if k not in ("algebra", "verdict")})
    rep["necessity_verdict"] = r.verdict
    cands = []
    consistent = True
    for i in range(a.n):
        if is_projective_simple(a, i):
            continue
        c = almost_split_candidate(a, i)
        entry = {"vertex": str(c.vertex), "obstruction": c.obstruction, "checks": c.checks}
        if c.C is not None:
            entry["C"] = complex_json(c.C)
        cands.append(entry)
        if not r.obstructed and not c.passed:
            consistent = False
    rep["almost_split"] = cands
    rep["verdict"] = "PASS" if consistent else "FAIL"
    return rep


def _pair_json(n) -> dict:
    p = support_tau_tilting_pair(n)
    return {"module_dim_vector": list(p.module.dim_vector), "projective": list(p.projective)}


def cmd_enumerate(session: Session, alg_name: str, cap: int = 500) -> dict:
    a = session.algebra(alg_name)
    en = enumerate_two_term_silting(a, node_cap=cap)
    ws = en.workspace
    objs = []
    for node in en.nodes:
        parts = [ws.items[k] for k in node]
        objs.append({"summands": [int(k) for k in node], "support_tau_tilting_pair": _pair_json(parts)})
    used = sorted({k for node in en.nodes for k in node})
    return {"command": "enumerate", "algebra": alg_name, "field": session.field.name,
            "count": len(en.nodes), "indecomposables": {str(k): complex_json(ws.items[k]) for k in used},
            "silting": objs, "edges": [[s, t, int(k), side] for s, t, k, side in en.edges],
            "exhaustive": en.exhaustive, "verdict": "PASS"}


def cmd_present(session: Session, ctx_name: str, obj_name: str | None = None) -> dict:
    ctx = session.context(ctx_name)
    rep = {"command": "present", "context": ctx_name, "field": session.field.name,
           "A": {"dim": ctx.A.dim, "quiver": gabriel_quiver(ctx.A).to_dict()}}
    if obj_name is None:
        x = ctx.of_M()
        rep["object"] = "M"
    else:
        rep["object"] = obj_name
        pr = ctx.in_pr(session.complex(obj_name))
        if pr is None:
            rep["verdict"] = "FAIL"
            rep["reason"] = "not presented by minimal approximation"
            return rep
        x = pr.obj
    px = ctx.P_obj(x)
    rep["presentation"] = {"minus": list(x.minus), "zero": list(x.zero)}
    rep["image"] = complex_json(px)
    rep["image_summands"] = [[complex_json(c), m] for c, m in decompose_complex(px)]
    rep["presilting"] = is_presilting(px)
    silt = is_silting(px)
    rep["silting"] = silt
    if silt:
        rep["support_tau_tilting_pair"] = _pair_json(px)
    rep["verdict"] = "PASS"
    return rep


def cmd_mutate_qp(session: Session, qp_name: str, vertices) -> dict:
    qp = session.qp(qp_name)
    vertices = [str(v) for v in vertices]
    seq = [qp]
    for k, v in enumerate(vertices):
        if not mutable_at(seq[-1], v):
            raise NotMutableError(f"step {k}: vertex {v} lies on a loop or 2-cycle", index=k, vertex=v)
        seq.append(mutate(seq[-1], v))
    rep = {"command": "mutate-qp", "qp": qp_name, "field": session.field.name, "sequence": vertices,
           "steps": [qp_json(q) for q in seq[1:]]}
    notes = []
    for k in range(1, len(vertices)):
        if vertices[k] == vertices[k - 1]:
            before, after = seq[k - 1], seq[k + 1]
            same = Counter((a.source, a.target) for a in before.quiver.arrows) == \
                Counter((a.source, a.target) for a in after.quiver.arrows)
            notes.append({"steps": [k - 1, k], "vertex": vertices[k], "quiver_restored": same,
                          "potential_comparison": "right-equivalence not decided"})
    rep["involutivity"] = notes
    try:
        rep["jacobian_dim"] = jacobian_algebra(seq[-1], cap=session.trunc).dim
    except CapExceededError:
        rep["jacobian_dim"] = None
    rep["verdict"] = "PASS" if all(n["quiver_restored"] for n in notes) else "FAIL"
    return rep


def cmd_experiment_tilting(session: Session, alg_name: str, cap: int = 500) -> dict:
    a = session.algebra(alg_name)
    en = enumerate_two_term_silting(a, node_cap=cap)
    rows = []
    for node in en.nodes:
        parts = [en.workspace.items[k] for k in node]
        rows.append({"summands": [int(k) for k in node], **is_tilting_candidate(parts)})
    return {"command": "experiment-tilting", "algebra": alg_name, "field": session.field.name,
            "objects": rows, "tilting": sum(1 for r in rows if r["hom_minus1"] == 0),
            "note": "experiment only; no claim is asserted", "shift_check_note": SHIFT_CHECK_NOTE,
            "verdict": "PASS"}


# ---------------------------------------------------------------------------
# text rendering


def render_text(rep: dict) -> str:
    lines = [f"{rep['command']}: {rep.get('verdict')}"]
    for k, v in rep.items():
        if k in ("command", "verdict"):
            continue
        if isinstance(v, (dict, list)):
            s = json.dumps(v, default=str)
            if len(s) > 160:
                s = s[:157] + "..."
        else:
            s = str(v)
        lines.append(f"  {k}: {s}")
    return "\n".join(lines)


def _exit_for(rep: dict) -> int:
    return EXIT_PASS if "PASS" in str(rep.get("verdict")) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="fp:32003", help="q or fp:<prime>")
    common.add_argument("--degree-cap", type=int, default=12)
    common.add_argument("--trunc", type=int, default=24)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    p = argparse.ArgumentParser(prog="qpsilt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("verify-mizuno", parents=[common])
    s.add_argument("file")
    s.add_argument("qp")
    s.add_argument("--vertices", nargs="*", default=[])
    s.add_argument("--sides", nargs="*", default=None)
    s = sub.add_parser("necessity", parents=[common])
    s.add_argument("file")
    s.add_argument("algebra")
    s = sub.add_parser("enumerate", parents=[common])
    s.add_argument("file")
    s.add_argument("algebra")
    s.add_argument("--cap", type=int, default=500)
    s = sub.add_parser("present", parents=[common])
    s.add_argument("file")
    s.add_argument("context")
    s.add_argument("object", nargs="?")
    s = sub.add_parser("mutate-qp", parents=[common])
    s.add_argument("file")
    s.add_argument("qp")
    s.add_argument("--vertices", nargs="+", required=True)
    s = sub.add_parser("experiment-tilting", parents=[common])
    s.add_argument("file")
    s.add_argument("algebra")
    s.add_argument("--cap", type=int, default=500)
    return p


def run(args) -> tuple[dict, int]:
    field = Field.parse(args.field)
    session = Session.from_file(args.file, field=field, degree_cap=args.degree_cap, trunc=args.trunc)
    if args.command == "verify-mizuno":
        rep = cmd_verify_mizuno(session, args.qp, args.vertices, args.sides)
    elif args.command == "necessity":
        rep = cmd_necessity(session, args.algebra)
    elif args.command == "enumerate":
        rep = cmd_enumerate(session, args.algebra, args.cap)
    elif args.command == "present":
        rep = cmd_present(session, args.context, args.object)
    elif args.command == "mutate-qp":
        rep = cmd_mutate_qp(session, args.qp, args.vertices)
    else:
        rep = cmd_experiment_tilting(session, args.algebra, args.cap)
    rep["seed"] = args.seed
    return rep, _exit_for(rep)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep, code = run(args)
    except (ParseError, UnknownNameError, NotMutableError, NotRigidError, FileNotFoundError, ValueError) as e:
        rep = {"command": args.command, "verdict": "ERROR", "error": type(e).__name__, "message": str(e)}
        if isinstance(e, NotMutableError):
            rep["index"] = e.index
        if isinstance(e, ParseError):
            rep["line"], rep["col"] = e.line, e.col
        code = EXIT_INPUT
    except (CapExceededError, TruncationError) as e:
        rep = {"command": args.command, "verdict": "ERROR", "error": type(e).__name__, "message": str(e)}
        code = EXIT_CAP
    except LeavesWindowError as e:
        rep = {"command": args.command, "verdict": "FAIL", "error": type(e).__name__, "message": str(e)}
        code = EXIT_FAIL
    except QPSiltError as e:
        rep = {"command": args.command, "verdict": "FAIL", "error": type(e).__name__, "message": str(e)}
        code = EXIT_FAIL
    text = json.dumps(rep, indent=2, default=str)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text if args.json else render_text(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
