"""Seeded random admissible fatgraphs and random assemblies.

Half-edges at each vertex alternate "out" and "in", and every edge pairs an
out half-edge with an in half-edge. Then sigma and alpha both swap the two
colours, so phi = sigma o alpha keeps them and the loops 2-colour with each
edge between colours. Only the parity condition can still fail; it is
repaired by swapping partners of random edges.
"""

from __future__ import annotations

import random

from .assembly import GluingSpec, derive_piece, validate_gluing
from .fatgraph import FatgraphError, boundary_components, build_fatgraph, check_admissibility


def random_admissible_fatgraph(rng: random.Random, max_vertices: int = 4, valences=(4, 4, 6, 8), name="", tries: int = 200):
    for _ in range(tries):
        nv = rng.randint(1, max_vertices)
        vals = [rng.choice(valences) for _ in range(nv)]
        hs = [[f"v{v}.{j}" for j in range(d)] for v, d in enumerate(vals)]
        outs = [h for hl in hs for j, h in enumerate(hl) if j % 2 == 0]
        ins = [h for hl in hs for j, h in enumerate(hl) if j % 2 == 1]
        rng.shuffle(ins)
        for _ in range(60):
            try:
                fg = build_fatgraph(hs, list(zip(outs, ins)), name=name, vertex_names=[f"v{v}" for v in range(nv)])
            except FatgraphError:
                break  # disconnected, draw again
            odd = [lp for lp in boundary_components(fg) if lp.side_count % 2]
            if not odd:
                if check_admissibility(fg).accepting:
                    return fg
                break
            i, j = rng.sample(range(len(ins)), 2) if len(ins) > 1 else (0, 0)
            ins[i], ins[j] = ins[j], ins[i]
    raise RuntimeError("no admissible fatgraph found; raise tries")


def random_assembly(rng: random.Random, max_pieces: int = 3, max_vertices: int = 3, match_prob: float = 0.7):
    """Random pieces with a random partial out->in matching; the rest is plugged."""
    pieces = []
    for k in range(rng.randint(1, max_pieces)):
        fg = random_admissible_fatgraph(rng, max_vertices, name=f"P{k}")
        rep = check_admissibility(fg, flip=rng.random() < 0.5)
        pieces.append(derive_piece(fg, rep, f"P{k}"))
    outs = [(p.name, t.loop) for p in pieces for t in p.tori if t.polarity == "outgoing"]
    ins = [(p.name, t.loop) for p in pieces for t in p.tori if t.polarity == "incoming"]
    rng.shuffle(outs)
    rng.shuffle(ins)
    matches = tuple((o, i) for o, i in zip(outs, ins) if rng.random() < match_prob)
    return validate_gluing(pieces, GluingSpec(matches))
