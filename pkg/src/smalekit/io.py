"""JSON loading, DOT export and plain-text rendering."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .assembly import ATTRACTOR, REPELLER, GluedFlow, GluingSpec, TransitDigraph, derive_piece, validate_gluing
from .fatgraph import RibbonFatgraph, build_fatgraph, check_admissibility
from .lozenges.chains import Chain
from .lozenges.complex import Automorphism, LozengeComplex, make_complex


class InputError(ValueError):
    """Malformed input file. ``position`` is a JSON-pointer-like path."""

    def __init__(self, message, position=None, source=None):
        self.position = position
        self.source = source
        where = " ".join(str(x) for x in (source, position) if x)
        super().__init__(f"{where}: {message}" if where else message)


DATA = resources.files("smalekit") / "data"


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    return json.loads((resources.files("smalekit") / "schemas" / f"{name}.v1.json").read_text())


def _check(doc, name, source=None):
    v = jsonschema.Draft202012Validator(schema(name))
    errs = sorted(v.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errs:
        e = errs[0]
        pos = "/".join(str(p) for p in e.absolute_path) or "$"
        raise InputError(e.message, pos, source)


def read_json(path) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg}", f"line {e.lineno} column {e.colno}", str(path)) from None
    except OSError as e:
        raise InputError(str(e.strerror or e), None, str(path)) from None


def resolve_data(name: str, base: Path | None = None) -> Path:
    """A path relative to ``base`` if it exists there, else a packaged data file."""
    for cand in ([base / name] if base else []) + [Path(name)]:
        if cand.exists():
            return cand
    packaged = DATA / name
    if packaged.is_file():
        return Path(str(packaged))
    raise InputError(f"file not found: {name}")


# -- fatgraphs --------------------------------------------------------------

def fatgraph_from_dict(doc: dict, source=None) -> RibbonFatgraph:
    _check(doc, "fatgraph", source)
    from .fatgraph import FatgraphError

    try:
        return build_fatgraph(
            doc["vertices"],
            [tuple(e) for e in doc["edges"]],
            name=doc.get("name", ""),
            vertex_names=doc.get("vertex_names"),
            edge_names=doc.get("edge_names"),
            loop_names=doc.get("loop_names"),
        )
    except FatgraphError as e:
        raise InputError(e.args[0], e.position, source) from None


def load_fatgraph(path) -> RibbonFatgraph:
    path = resolve_data(str(path))
    return fatgraph_from_dict(read_json(path), str(path))


def fatgraph_to_dict(fg: RibbonFatgraph) -> dict:
    doc = {
        "vertices": [[fg.labels[i] for i in vs] for vs in fg.vertices],
        "edges": [[fg.labels[a], fg.labels[b]] for a, b in fg.edges],
    }
    if fg.name:
        doc["name"] = fg.name
    if fg.vertex_names:
        doc["vertex_names"] = list(fg.vertex_names)
    if fg.edge_names:
        doc["edge_names"] = list(fg.edge_names)
    if fg.loop_names:
        doc["loop_names"] = {n: fg.labels[h] for n, h in fg.loop_names}
    return doc


# -- gluings -------------------------------------------------------------------

def _split_ref(s: str, k: int, source):
    piece, _, torus = s.partition(".")
    if not piece or not torus:
        raise InputError(f"torus reference {s!r} must look like piece.torus", f"matches/{k}", source)
    return piece, torus


def gluing_from_dict(doc: dict, base: Path | None = None, source=None, flip: bool = False) -> GluedFlow:
    from .assembly import GluingError

    _check(doc, "gluing", source)
    pieces = []
    for k, entry in enumerate(doc["pieces"]):
        if isinstance(entry, str):
            entry = {"fatgraph": entry}
        fgref = entry["fatgraph"]
        if isinstance(fgref, dict):
            fg = fatgraph_from_dict(fgref, f"{source}#pieces/{k}")
        else:
            p = resolve_data(fgref, base)
            fg = fatgraph_from_dict(read_json(p), str(p))
        name = entry.get("name") or fg.name or f"P{k}"
        rep = check_admissibility(fg, flip=bool(entry.get("flip", False)) ^ flip)
        if not rep.accepting:
            raise InputError("piece is not admissible: " + "; ".join(rep.failures()), f"pieces/{k}", source)
        pieces.append(derive_piece(fg, rep, name))
    matches = tuple(
        (_split_ref(a, k, source), _split_ref(b, k, source)) for k, (a, b) in enumerate(doc["matches"])
    )
    spec = GluingSpec(matches, True, doc.get("lamination_condition_assumed", True))
    try:
        return validate_gluing(pieces, spec)
    except GluingError as e:
        raise InputError(str(e), "matches", source) from None


def load_gluing(path, flip: bool = False) -> GluedFlow:
    path = resolve_data(str(path))
    return gluing_from_dict(read_json(path), path.parent, str(path), flip)


# -- lozenge complexes ------------------------------------------------------------

def complex_from_dict(doc: dict, source=None):
    """Returns ``(complex, automorphisms, chains)``."""
    from .lozenges.complex import ComplexError

    _check(doc, "complex", source)
    try:
        lz = {}
        for lab, spec in doc["lozenges"].items():
            c0, c1 = spec["corners"]
            lz[lab] = (c0, c1, spec.get("wandering", True))
        cx = make_complex(
            doc["corners"], lz, doc.get("side_sharing", ()), doc.get("periodic", False), doc.get("name", "")
        )
        autos = {}
        for name, m in doc.get("automorphisms", {}).items():
            g = Automorphism.from_maps(m["corners"], m["lozenges"], name)
            g.validate(cx)
            autos[name] = g
        chains = {name: chain_from_dict(c, cx, autos, f"chains/{name}") for name, c in doc.get("chains", {}).items()}
    except ComplexError as e:
        raise InputError(str(e), None, source) from None
    return cx, autos, chains


def parse_map_word(word: str, cx: LozengeComplex, autos: dict) -> Automorphism:
    """``"t^2"``, ``"g"``, ``"g h^-1"``: a product of named automorphisms and translations."""
    from .lozenges.complex import ComplexError

    out = None
    for tok in word.split():
        name, _, exp = tok.partition("^")
        e = int(exp) if exp else 1
        if name == "t":
            step, e = Automorphism.translation(cx, e), 1
        elif name in autos:
            step = autos[name] if e > 0 else autos[name].inverse()
        else:
            raise ComplexError(f"unknown automorphism {name!r}")
        for _ in range(abs(e)):
            out = step if out is None else out * step
    if out is None:
        raise ComplexError(f"empty map word {word!r}")
    return out


def chain_from_dict(doc: dict, cx, autos, position=None) -> Chain:
    from .lozenges.complex import ComplexError

    def refs(key):
        out = [tuple(x) for x in doc.get(key, [])]
        for r in out:
            if not cx.has_lozenge(r):
                raise ComplexError(f"{position}/{key}: unknown lozenge {r!r}")
        return tuple(out)

    right, left = refs("right"), refs("left")
    return Chain(
        refs("core"),
        right=right,
        right_map=parse_map_word(doc["right_map"], cx, autos) if right else None,
        left=left,
        left_map=parse_map_word(doc["left_map"], cx, autos) if left else None,
        start=doc.get("start", 0),
    )


def chain_to_dict(chain: Chain) -> dict:
    d = {"core": [list(r) for r in chain.core], "start": chain.start}
    if chain.right:
        d["right"] = [list(r) for r in chain.right]
        d["right_map"] = chain.right_map.name or "?"
    if chain.left:
        d["left"] = [list(r) for r in chain.left]
        d["left_map"] = chain.left_map.name or "?"
    return d


def load_complex(path):
    path = resolve_data(str(path))
    return complex_from_dict(read_json(path), str(path))


def format_chain(chain: Chain, periods: int = 1) -> str:
    """One-line rendering: ``... | left | core | right | ...``."""
    def show(refs):
        return " ".join(f"{lab}{n:+d}" if n else lab for lab, n in refs)

    parts = []
    if chain.left:
        lo = chain.start - periods * len(chain.left)
        parts.append("... " + show(chain[i] for i in range(lo, chain.start)))
    parts.append(f"[{chain.start}] " + show(chain.core))
    if chain.right:
        hi = chain.end + periods * len(chain.right)
        parts.append(show(chain[i] for i in range(chain.end, hi)) + " ...")
    return " | ".join(parts)


# -- DOT ------------------------------------------------------------------------

_COLORS = {ATTRACTOR: "tomato", REPELLER: "lightblue", "annulus": "white"}


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def transit_dot(td: TransitDigraph) -> str:
    lines = ["digraph transit {", "  rankdir=LR;"]
    for n in td.nodes:
        shape = "box" if n.kind == "annulus" else "ellipse"
        lines.append(f"  {_q(n.id)} [shape={shape}, style=filled, fillcolor={_COLORS[n.kind]}];")
    for i, j in td.edges():
        lines.append(f"  {_q(td.nodes[i].id)} -> {_q(td.nodes[j].id)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def condensation_dot(dec) -> str:
    """Smale classes as nodes, the Hasse diagram of the order as edges,
    chain classes as clusters."""
    lines = ["digraph smale {", "  rankdir=LR;", "  compound=true;"]
    in_cluster = set()
    for k, cc in enumerate(dec.chain_classes):
        lines.append(f"  subgraph cluster_chain{k} {{")
        lines.append(f"    label={_q(f'chain class {k}')};")
        for c in cc:
            in_cluster.add(c)
            lines.append("    " + _class_node(dec, c))
        lines.append("  }")
    for c in range(len(dec.classes)):
        if c not in in_cluster:
            lines.append("  " + _class_node(dec, c))
    pairs = set(dec.order_pairs())
    for a, b in sorted(pairs):
        if not any((a, m) in pairs and (m, b) in pairs for m in range(len(dec.classes))):
            lines.append(f"  c{a} -> c{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _class_node(dec, c) -> str:
    cls = dec.classes[c]
    return f"c{c} [label={_q(dec.label(c))}, style=filled, fillcolor={_COLORS[cls.kind]}];"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
