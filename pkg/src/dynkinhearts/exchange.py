"""Exchange-graph intervals: enumeration, paths, faces, H_1, CY quotients.

Vertices are hearts between a standard base and its k-th shift; edges are
simple forward tilts.  The graph is deduplicated through canonical heart
keys, so the serialized form does not depend on BFS order.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .exactalg import int_kernel_lattice, smith_normal_form
from .hearts import (
    Heart,
    forward_tilt,
    heart_leq,
    initial_heart,
    is_standard,
    make_heart,
    tilt_image,
)
from .quiver import QuiverError, positive_roots, root_index
from .zq import IndecObject, build_zq, hom_derived


class ExchangeGraphError(ValueError):
    pass


@dataclass
class Face:
    kind: str  # "square" | "pentagon"
    vertices: tuple  # vertex indices along the cycle, starting at the source
    edges: tuple  # (edge index, +1/-1) along the boundary cycle


@dataclass
class ExchangeGraph:
    quiver: object
    base: Heart
    window: int
    hearts: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)  # (from_idx, to_idx, label)
    edge_index: dict = field(default_factory=dict)
    out_edges: dict = field(default_factory=dict)
    in_edges: dict = field(default_factory=dict)
    faces: list = field(default_factory=list)

    def vertex(self, heart):
        return self.index[heart.key()]

    def heart_at(self, idx):
        return self.hearts[idx]

    def __contains__(self, heart):
        return heart.key() in self.index

    def add_heart(self, heart):
        key = heart.key()
        if key in self.index:
            return self.index[key]
        idx = len(self.hearts)
        self.hearts.append(heart)
        self.index[key] = idx
        self.out_edges[idx] = []
        self.in_edges[idx] = []
        return idx

    def add_edge(self, u, v, label):
        key = (u, v, label)
        if key in self.edge_index:
            return self.edge_index[key]
        idx = len(self.edges)
        self.edges.append(key)
        self.edge_index[key] = idx
        self.out_edges[u].append(idx)
        self.in_edges[v].append(idx)
        return idx


def enumerate_interval(q, base, k):
    """EG(Q; base, base[k]): BFS over forward tilts from a standard base.

    Complete because every heart in the interval is reachable from the
    base by a directed path staying inside the interval (the base is
    standard).  Vertices are re-indexed by canonical key at the end, so
    the result is independent of traversal order.
    """
    if k < 1:
        raise ExchangeGraphError("interval window k must be >= 1")
    if not is_standard(base):
        raise ExchangeGraphError("interval enumeration requires a standard base")
    top = base.shifted(k)

    def member(h):
        return heart_leq(base, h) and heart_leq(h, top)

    assert member(base)
    g = ExchangeGraph(q, base, k)
    g.add_heart(base)
    frontier = [base]
    seen_edges = []
    while frontier:
        nxt = []
        for h in frontier:
            for s in h.simples:
                h2 = forward_tilt(h, s)
                if not member(h2):
                    continue
                fresh = h2 not in g
                g.add_heart(h2)
                seen_edges.append((h, h2, s))
                if fresh:
                    nxt.append(h2)
        frontier = nxt
    # canonical re-index
    order = sorted(range(len(g.hearts)), key=lambda i: g.hearts[i].key())
    g2 = ExchangeGraph(q, base, k)
    for i in order:
        g2.add_heart(g.hearts[i])
    for (h, h2, s) in sorted(seen_edges, key=lambda e: (e[0].key(), e[1].key(), e[2])):
        g2.add_edge(g2.vertex(h), g2.vertex(h2), s)
    return g2


# ---------------------------------------------------------------------------
# directed paths
# ---------------------------------------------------------------------------

def _between_subgraph(g, u, v):
    """Vertices on some directed path u -> v, with adjacency restricted there."""
    n = len(g.hearts)
    fwd = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for e in g.out_edges[x]:
            y = g.edges[e][1]
            if y not in fwd:
                fwd.add(y)
                stack.append(y)
    bwd = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for e in g.in_edges[x]:
            y = g.edges[e][0]
            if y not in bwd:
                bwd.add(y)
                stack.append(y)
    keep = fwd & bwd
    adj = {x: [e for e in g.out_edges[x] if g.edges[e][1] in keep] for x in keep}
    return keep, adj


def _suffix_counts(g, adj, v):
    """Number of directed paths from each vertex to v (DAG memoization)."""
    counts = {}

    def count(x):
        if x in counts:
            return counts[x]
        if x == v:
            counts[x] = 1
            return 1
        total = 0
        for e in adj[x]:
            total += count(g.edges[e][1])
        counts[x] = total
        return total

    for x in adj:
        count(x)
    return counts


def directed_paths(g, h1, h2, mode="all", sample=None, seed=None):
    """Directed paths h1 -> h2 as edge-index lists.

    mode: "all", "shortest", "longest", or "sample" (requires sample=n
    and an explicit seed; sampling is uniform over paths via
    suffix-count weighting and deterministic for a fixed seed).
    """
    u, v = g.vertex(h1), g.vertex(h2)
    keep, adj = _between_subgraph(g, u, v)
    if u not in keep:
        return []
    if mode == "sample":
        if sample is None or seed is None:
            raise ExchangeGraphError("sampling needs sample=n and an explicit seed")
        counts = _suffix_counts(g, adj, v)
        rng = random.Random(seed)
        out = []
        for _ in range(sample):
            path = []
            x = u
            while x != v:
                choices = [(e, counts[g.edges[e][1]]) for e in adj[x]]
                total = sum(c for _, c in choices)
                pick = rng.randrange(total)
                for e, c in choices:
                    if pick < c:
                        path.append(e)
                        x = g.edges[e][1]
                        break
                    pick -= c
            out.append(path)
        return out
    if mode in ("shortest", "longest"):
        dist = _extreme_dists(g, adj, v, longest=(mode == "longest"))
        paths = []
        stack = [(u, [])]
        while stack:
            x, pref = stack.pop()
            if x == v:
                paths.append(pref)
                continue
            for e in adj[x]:
                y = g.edges[e][1]
                if dist[x] == dist[y] + 1:
                    stack.append((y, pref + [e]))
        return sorted(paths)
    if mode == "all":
        paths = []
        stack = [(u, [])]
        while stack:
            x, pref = stack.pop()
            if x == v:
                paths.append(pref)
                continue
            for e in adj[x]:
                stack.append((g.edges[e][1], pref + [e]))
        return sorted(paths)
    raise ExchangeGraphError(f"unknown path mode {mode!r}")


def _extreme_dists(g, adj, v, longest):
    dist = {}

    def val(x):
        if x in dist:
            return dist[x]
        if x == v:
            dist[x] = 0
            return 0
        vals = [val(g.edges[e][1]) + 1 for e in adj[x]]
        dist[x] = (max if longest else min)(vals)
        return dist[x]

    for x in adj:
        val(x)
    return dist


def path_labels(g, path):
    return [g.edges[e][2] for e in path]


def count_indec_between(g, h1, h2):
    """#Ind(P_1 - P_2) for hearts h1 <= h2, counted on the finite window."""
    from .hearts import in_tstructure

    q = g.quiver
    zq = build_zq(q)
    lo = min(h1.shift_range()[0], h2.shift_range()[0]) - 1
    hi = max(h1.shift_range()[1], h2.shift_range()[1]) + 1
    cnt = 0
    for s in range(lo, hi + 1):
        for x in zq.objects_with_shift(s):
            if in_tstructure(h1, x) and not in_tstructure(h2, x):
                cnt += 1
    return cnt


def distance_diameter(g, h1, h2):
    """(dis, dia): exact min/max directed path lengths h1 -> h2.

    Checked against the interval bounds: dia <= #Ind(P_1 - P_2) and
    dis >= (pf(h2) - pf(h1)) / h_Q.
    """
    u, v = g.vertex(h1), g.vertex(h2)
    keep, adj = _between_subgraph(g, u, v)
    if u not in keep:
        raise ExchangeGraphError("no directed path between the given hearts")
    dis = _extreme_dists(g, adj, v, longest=False)[u]
    dia = _extreme_dists(g, adj, v, longest=True)[u]
    zq = build_zq(g.quiver)
    bound = count_indec_between(g, h1, h2)
    if dia > bound:
        raise AssertionError("diameter exceeds #Ind(P1-P2)")
    pf_gap = zq.pf_of_heart_simples(h2.simples) - zq.pf_of_heart_simples(h1.simples)
    # dis >= pf gap / h  (exact arithmetic: compare dis*h >= gap)
    if dis * zq.h < pf_gap:
        raise AssertionError("distance beats the position-function bound")
    return dis, dia


# ---------------------------------------------------------------------------
# squares, pentagons, H_1 of the face complex
# ---------------------------------------------------------------------------

def faces(g):
    """All square/pentagon faces whose vertices lie in the graph.

    At each heart and each unordered pair of its simples, the two local
    configurations are rebuilt by tilting and checked to commute exactly
    as the square/pentagon shapes predict.
    """
    q = g.quiver
    out = []
    for idx, h in enumerate(g.hearts):
        simples = h.simples
        for a in range(len(simples)):
            for b in range(a + 1, len(simples)):
                si, sj = simples[a], simples[b]
                dij = hom_derived(q, si, sj.shifted(1))
                dji = hom_derived(q, sj, si.shifted(1))
                if dij and dji:
                    raise AssertionError("hom bound violated at a heart")
                if dij:
                    si, sj = sj, si  # ensure Hom^1(si, sj) = 0
                    dij, dji = dji, dij
                # now Hom^1(si, sj) = 0
                hi = forward_tilt(h, si)
                hj = forward_tilt(h, sj)
                hij = forward_tilt(hj, si)
                if dji == 0:
                    # square: tilts commute
                    other = forward_tilt(hi, sj)
                    if other != hij:
                        raise AssertionError("square of tilts failed to close")
                    quad = [h, hi, hij, hj]
                    if not all(x in g for x in quad):
                        continue
                    vi = [g.vertex(x) for x in quad]
                    e1 = g.edge_index.get((vi[0], vi[1], si))
                    e2 = g.edge_index.get((vi[1], vi[2], sj))
                    e3 = g.edge_index.get((vi[3], vi[2], si))
                    e4 = g.edge_index.get((vi[0], vi[3], sj))
                    if None in (e1, e2, e3, e4):
                        continue
                    out.append(
                        Face("square", tuple(vi), ((e1, 1), (e2, 1), (e3, -1), (e4, -1)))
                    )
                else:
                    # pentagon: h -> hi -> h* -> hij and h -> hj -> hij
                    tj = tilt_image(h, si, sj)
                    hstar = forward_tilt(hi, tj)
                    closing = forward_tilt(hstar, sj)
                    if closing != hij:
                        raise AssertionError("pentagon of tilts failed to close")
                    pent = [h, hi, hstar, hij, hj]
                    if not all(x in g for x in pent):
                        continue
                    vi = [g.vertex(x) for x in pent]
                    e1 = g.edge_index.get((vi[0], vi[1], si))
                    e2 = g.edge_index.get((vi[1], vi[2], tj))
                    e3 = g.edge_index.get((vi[2], vi[3], sj))
                    e4 = g.edge_index.get((vi[4], vi[3], si))
                    e5 = g.edge_index.get((vi[0], vi[4], sj))
                    if None in (e1, e2, e3, e4, e5):
                        continue
                    out.append(
                        Face(
                            "pentagon",
                            tuple(vi),
                            ((e1, 1), (e2, 1), (e3, 1), (e4, -1), (e5, -1)),
                        )
                    )
    g.faces = out
    return out


def h1_of_complex(g):
    """H_1 of the 2-complex (vertices, tilt edges, square/pentagon faces).

    Computed as ker d1 / im d2 with integer kernels from Smith normal
    form; returns {"free_rank": r, "torsion": [d, ...]} and H_1 = 0 iff
    both parts are trivial.
    """
    face_list = g.faces if g.faces else faces(g)
    nv, ne = len(g.hearts), len(g.edges)
    d1 = [[0] * ne for _ in range(nv)]
    for i, (u, v, _lab) in enumerate(g.edges):
        d1[v][i] += 1
        d1[u][i] -= 1
    d2 = [[0] * max(len(face_list), 1) for _ in range(ne)]
    for j, f in enumerate(face_list):
        for (e, sgn) in f.edges:
            d2[e][j] += sgn
    # d1 . d2 = 0
    for j in range(len(face_list)):
        for row in range(nv):
            s = sum(d1[row][e] * d2[e][j] for e in range(ne))
            if s:
                raise AssertionError("face boundary is not a cycle")
    kernel = int_kernel_lattice(d1)  # basis of ker d1 in Z^E
    k = len(kernel)
    if not face_list:
        return {"free_rank": k, "torsion": []}
    # express d2 columns in the kernel basis: solve K^T x = col
    kt = [[kernel[c][r] for c in range(k)] for r in range(ne)]
    cols = []
    for j in range(len(face_list)):
        col = [d2[e][j] for e in range(ne)]
        cols.append(_solve_int(kt, col))
    x = [[cols[j][r] for j in range(len(face_list))] for r in range(k)]
    factors, _u, _v = smith_normal_form(x) if k else ((), None, None)
    rank = sum(1 for d in factors if d != 0)
    torsion = [abs(d) for d in factors if d not in (0, 1, -1)]
    return {"free_rank": k - rank, "torsion": torsion}


def _solve_int(a, b):
    """Solve a x = b exactly for integer a (full column rank), x integer."""
    from fractions import Fraction

    rows = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(a, b)]
    ncols = len(a[0])
    piv = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                sel = i
                break
        if sel is None:
            raise AssertionError("singular system in H1 computation")
        rows[r], rows[sel] = rows[sel], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            raise AssertionError("face boundary escapes the cycle lattice")
    out = [0] * ncols
    for rr, c in enumerate(piv):
        val = rows[rr][ncols]
        if val.denominator != 1:
            raise AssertionError("non-integral solution in saturated lattice")
        out[c] = int(val)
    return out


# ---------------------------------------------------------------------------
# Calabi-Yau quotient graph
# ---------------------------------------------------------------------------

def cy_quotient(q, big_n):
    """The quotient-graph shadow: EG_N interval with tilt lines closed up.

    Vertices are the hearts with base[1] <= h <= base[N-1]; every maximal
    tilt-line segment of a fixed direction is closed into an (N-1)-cycle
    by one extra edge.  A segment of any other length contradicts the
    interval structure and aborts.
    """
    if big_n < 2:
        raise ExchangeGraphError("CY quotient needs N >= 2")
    base = initial_heart(q)
    roots = positive_roots(q)
    if big_n == 2:
        h1 = base.shifted(1)
        vertices = [h1]
        edges = []
        closure = [(0, 0, s, True) for s in h1.simples]
        return {
            "N": big_n,
            "vertices": vertices,
            "edges": edges + closure,
            "lines": [
                {"direction": roots[s.root], "cycle_length": 1} for s in h1.simples
            ],
        }
    g = enumerate_interval(q, base.shifted(1), big_n - 2)
    # group edges by direction (root index of the label)
    by_dir = {}
    for idx, (u, v, lab) in enumerate(g.edges):
        by_dir.setdefault(lab.root, []).append((u, v, lab))
    lines = []
    closure = []
    edges = [(u, v, lab, False) for (u, v, lab) in g.edges]
    for rt, arr in sorted(by_dir.items()):
        heads = {u for (u, _v, _l) in arr}
        tails = {v for (_u, v, _l) in arr}
        nxt = {u: (v, lab) for (u, v, lab) in arr}
        starts = sorted(heads - tails)
        covered = set()
        for s0 in starts:
            chain = [s0]
            last_label = None
            x = s0
            while x in nxt:
                y, lab = nxt[x]
                chain.append(y)
                covered.add((x, y))
                last_label = lab
                x = y
            if len(chain) != big_n - 1:
                raise ExchangeGraphError(
                    f"tilt-line segment of length {len(chain)} != N-1 = {big_n - 1}"
                )
            # the closing edge stands for the braid identification: the next
            # tilt in the line direction, wrapped back to the start
            closure.append((chain[-1], chain[0], last_label.shifted(1), True))
            lines.append(
                {"direction": roots[rt], "cycle_length": big_n - 1, "vertices": chain}
            )
        if len(covered) != len(arr):
            raise ExchangeGraphError("direction edges left over after chain closure")
    # every heart lies on one line per simple
    per_vertex = {i: 0 for i in range(len(g.hearts))}
    for ln in lines:
        for v in ln["vertices"]:
            per_vertex[v] += 1
    for i, h in enumerate(g.hearts):
        if per_vertex[i] != len(h.simples):
            raise ExchangeGraphError("a heart misses a tilt line for one of its simples")
    return {
        "N": big_n,
        "vertices": g.hearts,
        "edges": edges + closure,
        "lines": lines,
    }


# ---------------------------------------------------------------------------
# export / import
# ---------------------------------------------------------------------------

def export_graph(g, fmt, path=None):
    """Serialize as DOT or JSON (schema eg/1); returns the text."""
    roots = positive_roots(g.quiver)
    if fmt == "dot":
        lines = ["digraph exchange {"]
        for i, h in enumerate(g.hearts):
            lines.append(f'  v{i} [label="{h.label()}"];')
        for (u, v, lab) in g.edges:
            rt = ",".join(map(str, roots[lab.root]))
            lines.append(f'  v{u} -> v{v} [label="{rt}@{lab.shift}"];')
        lines.append("}")
        text = "\n".join(lines)
    elif fmt == "json":
        face_list = g.faces if g.faces else []
        data = {
            "schema": "eg/1",
            "quiver": json.loads(g.quiver.to_json()),
            "base": json.loads(g.base.to_json()),
            "window": g.window,
            "vertices": [json.loads(h.to_json()) for h in g.hearts],
            "edges": [
                {
                    "from": u,
                    "to": v,
                    "label": {"root": list(roots[lab.root]), "shift": lab.shift},
                }
                for (u, v, lab) in g.edges
            ],
            "faces": [
                {"kind": f.kind, "vertices": list(f.vertices),
                 "edges": [[e, s] for (e, s) in f.edges]}
                for f in face_list
            ],
        }
        text = json.dumps(data, indent=1, sort_keys=True)
    else:
        raise ExchangeGraphError(f"unknown export format {fmt!r}")
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise ExchangeGraphError(f"cannot write {fmt} export to {path}: {exc}") from exc
    return text


def import_graph(text):
    """Rebuild an ExchangeGraph from its eg/1 JSON form."""
    from .quiver import Quiver

    data = json.loads(text)
    if data.get("schema") != "eg/1":
        raise ExchangeGraphError("unknown exchange-graph schema")
    q = Quiver.from_json(json.dumps(data["quiver"]))
    base = Heart.from_json(q, json.dumps(data["base"]))
    g = ExchangeGraph(q, base, data["window"])
    for vdata in data["vertices"]:
        g.add_heart(Heart.from_json(q, json.dumps(vdata)))
    for e in data["edges"]:
        lab = IndecObject(root_index(q, tuple(e["label"]["root"])), e["label"]["shift"])
        g.add_edge(e["from"], e["to"], lab)
    for f in data.get("faces", []):
        g.faces.append(
            Face(f["kind"], tuple(f["vertices"]), tuple((e, s) for e, s in f["edges"]))
        )
    return g


def graphs_equal(g1, g2):
    return (
        [h.key() for h in g1.hearts] == [h.key() for h in g2.hearts]
        and g1.edges == g2.edges
        and [(f.kind, f.vertices, f.edges) for f in g1.faces]
        == [(f.kind, f.vertices, f.edges) for f in g2.faces]
    )
