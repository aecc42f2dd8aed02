"""Independent reference implementations used as test oracles.

Nothing here imports smalekit internals: faces are traced from the raw
vertex/edge lists and reachability is a plain DFS.
"""


def trace_faces(vertices, edges):
    """Face orbits from raw labels, phi(h) = next-at-vertex(partner(h))."""
    nxt = {}
    for vs in vertices:
        for i, h in enumerate(vs):
            nxt[h] = vs[(i + 1) % len(vs)]
    partner = {}
    for a, b in edges:
        partner[a], partner[b] = b, a
    seen, faces = set(), []
    for vs in vertices:
        for h in vs:
            if h in seen:
                continue
            face, x = [], h
            while x not in seen:
                seen.add(x)
                face.append(x)
                x = nxt[partner[x]]
            faces.append(face)
    return faces


def two_colourable(vertices, edges):
    """Brute force over all colourings; only for a handful of faces."""
    faces = trace_faces(vertices, edges)
    face_of = {h: i for i, f in enumerate(faces) for h in f}
    n = len(faces)
    good = []
    for mask in range(1 << n):
        if all((mask >> face_of[a]) & 1 != (mask >> face_of[b]) & 1 for a, b in edges):
            good.append(mask)
    return faces, good


def reachable(n, edges):
    """reach[i] = set of nodes reachable from i by a path of length >= 0."""
    succ = [[] for _ in range(n)]
    for i, j in edges:
        succ[i].append(j)
    out = []
    for s in range(n):
        seen, stack = {s}, [s]
        while stack:
            u = stack.pop()
            for v in succ[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        out.append(seen)
    return out


def on_cycle(n, edges):
    """Nodes lying on a directed cycle (a path of length >= 1 back to themselves)."""
    succ = [[] for _ in range(n)]
    for i, j in edges:
        succ[i].append(j)
    reach = reachable(n, edges)
    return {i for i in range(n) if any(i in reach[j] for j in succ[i])}


def components(n, edges):
    """Mutual-reachability classes, ordered by least member."""
    reach = reachable(n, edges)
    seen, out = set(), []
    for i in range(n):
        if i in seen:
            continue
        comp = sorted(j for j in range(n) if j in reach[i] and i in reach[j])
        seen.update(comp)
        out.append(comp)
    return out


# -- Smale decomposition against the oracles above --------------------------

def check_against_oracle(dec):
    td = dec.digraph
    n = len(td)
    edges = list(td.edges())
    reach = reachable(n, edges)
    cyc = on_cycle(n, edges)
    expected = [c for c in components(n, edges) if td.nodes[c[0]].kind != "annulus" or c[0] in cyc]
    assert [list(c.members) for c in dec.classes] == expected
    assert dec.wandering == sorted(i for i in range(n) if td.nodes[i].kind == "annulus" and i not in cyc)
    for c1 in dec.classes:
        for c2 in dec.classes:
            assert dec.leq(c1.index, c2.index) == (c2.members[0] in reach[c1.members[0]])


def check_order_axioms(dec):
    k = len(dec.classes)
    le = [[dec.leq(a, b) for b in range(k)] for a in range(k)]
    for a in range(k):
        assert le[a][a]
        for b in range(k):
            if a != b:
                assert not (le[a][b] and le[b][a])
            for c in range(k):
                if le[a][b] and le[b][c]:
                    assert le[a][c]
    for c in dec.classes:
        if c.kind == "attractor":
            assert not any(le[c.index][b] for b in range(k) if b != c.index)
        if c.kind == "repeller":
            assert not any(le[a][c.index] for a in range(k) if a != c.index)
