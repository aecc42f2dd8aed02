"""Command-line front end.

Exit status: 0 when every asserted property holds, 1 when one fails,
2 on malformed input. Reports go to stdout; diagnostics to stderr as JSON.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import affine
from .assembly import GluingError, transit_digraph
from .examples import GOLDEN
from .fatgraph import FatgraphError, NotAdmissible, boundary_components, check_admissibility, surface_invariants
from .io import InputError, condensation_dot, dumps, format_chain, chain_to_dict, load_complex, load_fatgraph, load_gluing, transit_dot
from .lozenges import chains as ch
from .lozenges.complex import ComplexError
from .lozenges.symmetry import find_translation_symmetry, invariant_chain
from .smale import report as smale_report, smale_classes


class Failed(Exception):
    """An asserted property does not hold (exit 1)."""


def _emit(args, obj, text=None, dot=None):
    fmt = getattr(args, "format", "json")
    if fmt == "dot":
        if dot is None:
            raise InputError("--format dot is not available for this command")
        sys.stdout.write(dot)
    elif fmt == "text" and text is not None:
        sys.stdout.write(text.rstrip("\n") + "\n")
    else:
        sys.stdout.write(dumps(obj))


# -- fatgraph / assembly / smale -----------------------------------------------

def cmd_fatgraph_check(args):
    fg = load_fatgraph(args.file)
    rep = check_admissibility(fg, flip=args.flip)
    chi, g, b = surface_invariants(fg)
    loops = boundary_components(fg)
    out = {
        "name": fg.name,
        "vertices": fg.num_vertices,
        "edges": fg.num_edges,
        "euler_characteristic": chi,
        "genus": g,
        "boundary_count": b,
        "loops": [
            {"name": lp.name, "sides": [fg.labels[h] for h in lp.sides], "polarity": rep.partition[lp.index] if rep.partition else "unassigned"}
            for lp in loops
        ],
        "admissibility": rep.to_dict(),
    }
    text = "\n".join(
        [f"V={fg.num_vertices} E={fg.num_edges} chi={chi} genus={g} b={b}",
         f"admissible: {rep.accepting}"] + [f"  {f}" for f in rep.failures()]
    )
    _emit(args, out, text)
    if not rep.accepting:
        raise Failed("; ".join(rep.failures()))


def cmd_assemble(args):
    glued = load_gluing(args.file, flip=args.flip)
    td = transit_digraph(glued)
    out = {
        "pieces": [
            {
                "name": p.name,
                "orbits": {p.fatgraph.vertex_name(v): {"prong_count": k} for v, k in enumerate(p.prongs)},
                "annuli": {a.name: {"out_loop": p.tori[a.out_loop].name, "in_loop": p.tori[a.in_loop].name} for a in p.annuli},
                "tori": {t.name: {"polarity": t.polarity, "lamination_leaf_count": t.leaf_count} for t in p.tori},
            }
            for p in glued.pieces
        ],
        "matches": [[glued.torus(a).ref, glued.torus(b).ref] for a, b in glued.gluing.matches],
        "attractors": [glued.torus(k).ref for k in glued.attractors],
        "repellers": [glued.torus(k).ref for k in glued.repellers],
        "closed": glued.is_closed,
        "genericity_assumed": glued.gluing.genericity_assumed,
        "lamination_condition_assumed": glued.gluing.lamination_condition_assumed,
        "transit": {n.id: td.successors(n.id) for n in td.nodes},
    }
    text = "\n".join(f"{n.id} -> {', '.join(td.successors(n.id)) or '-'}" for n in td.nodes)
    _emit(args, out, text, transit_dot(td))


def cmd_smale_report(args):
    dec = smale_classes(transit_digraph(load_gluing(args.file, flip=args.flip)))
    rep = smale_report(dec)
    lines = [f"class {c['index']} ({c['kind']}): {', '.join(c['members'])}  prongs: {', '.join(c['prong_closure']) or '-'}"
             for c in rep["classes"]]
    lines.append("order: " + ", ".join(f"{a}<{b}" for a, b in rep["order"]))
    lines.append("chain classes: " + "; ".join(str(cc) for cc in rep["chain_classes"]))
    lines.append("non-wandering vs chain-recurrent: " + rep["nonwandering_vs_chainrecurrent"])
    _emit(args, rep, "\n".join(lines), condensation_dot(dec))


# -- chains ---------------------------------------------------------------------------

def _get_chain(chains, name):
    if name not in chains:
        raise InputError(f"no chain named {name!r}; available: {sorted(chains)}")
    return chains[name]


def cmd_chain_verify(args):
    cx, _, chains = load_complex(args.file)
    c = _get_chain(chains, args.chain)
    rep = ch.is_smale_chain(cx, c)
    out = {
        "chain": format_chain(c),
        "is_chain": ch.is_chain(cx, c),
        "is_line": ch.is_line(cx, c),
        "line_break": ch.line_break(cx, c),
        "pivot_only": ch.is_pivot_only(cx, c),
        "smale": rep.to_dict(),
    }
    if c.is_bi_infinite:
        out["minimal"] = ch.is_minimal(cx, c)
        out["tree_is_path"] = ch.chain_tree(cx, c).is_path()
    _emit(args, out, "\n".join(f"{k}: {v}" for k, v in out.items()))
    if not rep.conditions_ok:
        raise Failed("Smale chain conditions fail")


def cmd_chain_merge(args):
    cx, _, chains = load_complex(args.file)
    w, w2 = _get_chain(chains, args.w), _get_chain(chains, args.w2)
    m = ch.merge(cx, w, w2, args.k)
    rep = ch.is_smale_chain(cx, m)
    _emit(args, {"merged": chain_to_dict(m), "smale": rep.to_dict()}, format_chain(m))
    if not rep.conditions_ok:
        raise Failed("merged chain fails the Smale chain conditions")


def cmd_chain_extend(args):
    cx, _, chains = load_complex(args.file)
    out = ch.extend_to_smale_chain(cx, _get_chain(chains, args.chain))
    rep = ch.is_smale_chain(cx, out)
    _emit(args, {"extended": chain_to_dict(out), "smale": rep.to_dict()}, format_chain(out))
    if not rep.is_smale_chain:
        raise Failed("extension is not a Smale chain")


def cmd_chain_symmetry(args):
    cx, autos, chains = load_complex(args.file)
    c = _get_chain(chains, args.chain)
    gens = dict(autos)
    if args.with_translation:
        from .lozenges.complex import Automorphism

        gens["t"] = Automorphism.translation(cx, 1, "t")
    sym = find_translation_symmetry(cx, c, gens, args.max_len)
    if sym is None:
        _emit(args, {"found": False, "max_len": args.max_len}, f"no symmetry up to word length {args.max_len}")
        raise Failed("no translation symmetry found")
    inv = invariant_chain(cx, sym, c)
    out = {"found": True, "word": sym.word_str, "k": sym.k, "i": sym.i, "invariant_chain": chain_to_dict(inv)}
    _emit(args, out, f"g = {sym.word_str}, k = {sym.k}\n{format_chain(inv)}")


# -- affine -------------------------------------------------------------------------------

def _matrix(s):
    try:
        a, b, c, d = (int(x) for x in s.split(","))
    except ValueError:
        raise InputError(f"--matrix expects four comma-separated integers, got {s!r}") from None
    try:
        return affine.check_matrix(((a, b), (c, d)))
    except affine.AffineError as e:
        raise InputError(str(e)) from None


def cmd_affine_classify(args):
    A = _matrix(args.matrix)
    out = []
    for w in args.words:
        try:
            g = affine.evaluate(w, A)
        except affine.AffineError as e:
            raise InputError(str(e)) from None
        c = affine.classify_element(g)
        d = {"word": w, "element": g.to_dict(), **c.to_dict()}
        if c.kind == affine.HYPERBOLIC:
            d["eigen_pattern_ok"] = affine.eigen_check(A, g.n)
        out.append(d)
    _emit(args, out, "\n".join(f"{d['word']}: {d['kind']}" for d in out))
    if any(d.get("eigen_pattern_ok") is False for d in out):
        raise Failed("expansion/contraction pattern check failed")


def cmd_affine_density(args):
    A = _matrix(args.matrix)
    a0, a1, b0, b1 = args.window
    try:
        reps = [affine.fixed_leaf_density(n, ((a0, a1), (b0, b1)), A) for n in range(1, args.bound + 1)]
    except affine.AffineError as e:
        raise InputError(str(e)) from None
    rows = [r.to_dict() for r in reps]
    mono = all(y["plus_gap"] <= x["plus_gap"] and y["minus_gap"] <= x["minus_gap"] for x, y in zip(rows, rows[1:]))
    _emit(args, {"reports": rows, "non_increasing": mono},
          "\n".join(f"n={r['bound']} points={r['fixed_points']} gap+={r['plus_gap']:.6g} gap-={r['minus_gap']:.6g}" for r in rows))
    if not mono:
        raise Failed("gaps increased with the bound")


# -- examples -------------------------------------------------------------------------------

def cmd_examples_run(args):
    checks, dec = GOLDEN[args.name]()
    if args.format == "dot":
        sys.stdout.write(condensation_dot(dec))
    else:
        out = {"example": args.name, "checks": [c.to_dict() for c in checks], "report": smale_report(dec)}
        text = "\n".join(f"{'PASS' if c.ok else 'FAIL'}  {c.name}" for c in checks)
        _emit(args, out, text)
    if not all(c.ok for c in checks):
        raise Failed("golden checks failed: " + ", ".join(c.name for c in checks if not c.ok))


def cmd_examples_random(args):
    from .random_models import random_assembly

    rng = random.Random(args.seed)
    glued = random_assembly(rng)
    dec = smale_classes(transit_digraph(glued))
    rep = smale_report(dec)
    rep["seed"] = args.seed
    _emit(args, rep, None, condensation_dot(dec))


# -- parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smalekit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=("json", "text")):
        sp.add_argument("--format", choices=choices, default="json")

    fg = sub.add_parser("fatgraph", help="ribbon fatgraph tools").add_subparsers(dest="sub", required=True)
    s = fg.add_parser("check", help="surface invariants and admissibility")
    s.add_argument("file")
    s.add_argument("--flip", action="store_true", help="swap the in/out orientation")
    fmt(s)
    s.set_defaults(func=cmd_fatgraph_check)

    s = sub.add_parser("assemble", help="validate a gluing and print the transit digraph")
    s.add_argument("file")
    s.add_argument("--flip", action="store_true")
    fmt(s, ("json", "text", "dot"))
    s.set_defaults(func=cmd_assemble)

    sm = sub.add_parser("smale", help="Smale decomposition").add_subparsers(dest="sub", required=True)
    s = sm.add_parser("report")
    s.add_argument("file")
    s.add_argument("--flip", action="store_true")
    fmt(s, ("json", "text", "dot"))
    s.set_defaults(func=cmd_smale_report)

    c = sub.add_parser("chain", help="lozenge chain operations").add_subparsers(dest="sub", required=True)
    s = c.add_parser("verify")
    s.add_argument("file")
    s.add_argument("--chain", default="W")
    fmt(s)
    s.set_defaults(func=cmd_chain_verify)
    s = c.add_parser("merge")
    s.add_argument("file")
    s.add_argument("--w", default="W")
    s.add_argument("--w2", default="W2")
    s.add_argument("-k", type=int, required=True)
    fmt(s)
    s.set_defaults(func=cmd_chain_merge)
    s = c.add_parser("extend")
    s.add_argument("file")
    s.add_argument("--chain", default="seed")
    fmt(s)
    s.set_defaults(func=cmd_chain_extend)
    s = c.add_parser("symmetry")
    s.add_argument("file")
    s.add_argument("--chain", default="W")
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--with-translation", action="store_true", help="add the unit translation t as a generator")
    fmt(s)
    s.set_defaults(func=cmd_chain_symmetry)

    a = sub.add_parser("affine", help="affine model on the trivial plane").add_subparsers(dest="sub", required=True)
    s = a.add_parser("classify")
    s.add_argument("words", nargs="+", help='words such as "a t1 a^-1"')
    s.add_argument("--matrix", default="2,1,1,1")
    fmt(s)
    s.set_defaults(func=cmd_affine_classify)
    s = a.add_parser("density")
    s.add_argument("--bound", type=int, default=4)
    s.add_argument("--window", type=float, nargs=4, default=[0.0, 1.0, 0.0, 1.0], metavar=("A0", "A1", "B0", "B1"))
    s.add_argument("--matrix", default="2,1,1,1")
    fmt(s)
    s.set_defaults(func=cmd_affine_density)

    e = sub.add_parser("examples", help="golden examples").add_subparsers(dest="sub", required=True)
    s = e.add_parser("run")
    s.add_argument("name", choices=sorted(GOLDEN))
    fmt(s, ("json", "text", "dot"))
    s.set_defaults(func=cmd_examples_run)
    s = e.add_parser("random", help="decompose a seeded random assembly")
    s.add_argument("--seed", type=int, default=0)
    fmt(s, ("json", "dot"))
    s.set_defaults(func=cmd_examples_random)
    return p


BAD_INPUT = (InputError, FatgraphError, NotAdmissible, GluingError, ComplexError, ch.ChainError, affine.AffineError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except Failed as e:
        sys.stderr.write(json.dumps({"status": "failed", "error": str(e)}) + "\n")
        return 1
    except BAD_INPUT as e:
        diag = {"status": "malformed_input", "error": str(e), "type": type(e).__name__}
        if getattr(e, "position", None):
            diag["position"] = e.position
        sys.stderr.write(json.dumps(diag) + "\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
