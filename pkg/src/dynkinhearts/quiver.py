"""ADE quivers: diagrams, orientations, Euler form, positive roots, Coxeter numbers.

Vertices are labeled 1..n.  A quiver is an orientation of one of the
simply laced diagrams A_n (n>=1), D_n (n>=4), E_6, E_7, E_8.  Arbitrary
vertex labelings are accepted as long as the underlying unoriented graph
is a tree isomorphic to the named diagram; this is needed because the
standard examples in the literature (totally stable orientations, the
D_4 counterexample) use their own labelings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

ADE_TYPES = ("A", "D", "E")

# Coxeter numbers: A_n -> n+1, D_n -> 2(n-1), E_6/7/8 -> 12, 18, 30.
_E_COXETER = {6: 12, 7: 18, 8: 30}


class QuiverError(ValueError):
    """Raised for malformed type tags, orientations or dimension data."""


def parse_type_tag(tag):
    """Split a tag like "A2", "D4", "E8" into (letter, rank)."""
    tag = tag.strip().upper()
    if len(tag) < 2 or tag[0] not in ADE_TYPES:
        raise QuiverError(f"unknown Dynkin type tag {tag!r}")
    try:
        n = int(tag[1:])
    except ValueError:
        raise QuiverError(f"unknown Dynkin type tag {tag!r}") from None
    letter = tag[0]
    if letter == "A" and n >= 1:
        return letter, n
    if letter == "D" and n >= 4:
        return letter, n
    if letter == "E" and n in (6, 7, 8):
        return letter, n
    raise QuiverError(f"rank {n} out of range for type {letter}")


def diagram_edges(letter, n):
    """Unoriented edges of the canonically labeled diagram.

    A_n is the path 1-2-...-n.  D_n is the path 1-...-(n-2) with n-1 and n
    attached to n-2.  E_n is the path 1-2-3-5-6-7-8 (truncated at n) with
    4 attached to 3.
    """
    if letter == "A":
        return [(i, i + 1) for i in range(1, n)]
    if letter == "D":
        edges = [(i, i + 1) for i in range(1, n - 2)]
        edges += [(n - 2, n - 1), (n - 2, n)]
        return edges
    # E_n: chain on 1,2,3,5,...,n plus the edge 3-4.
    chain = [1, 2, 3] + list(range(5, n + 1))
    edges = [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    edges.append((3, 4))
    return sorted(edges)


def _leg_lengths(n, adj):
    """Sorted branch lengths from the unique degree-3 vertex, or None for a path."""
    deg3 = [v for v in range(1, n + 1) if len(adj[v]) == 3]
    if not deg3:
        return None
    if len(deg3) > 1:
        raise QuiverError("underlying graph has more than one branch vertex")
    c = deg3[0]
    legs = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise QuiverError("underlying graph is not an ADE diagram")
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    return tuple(sorted(legs))


def _validate_shape(letter, n, edges):
    """Check that `edges` form a tree on 1..n isomorphic to the named diagram."""
    if len(edges) != n - 1:
        raise QuiverError(f"expected {n - 1} edges for rank {n}, got {len(edges)}")
    seen = set()
    adj = {v: [] for v in range(1, n + 1)}
    for i, j in edges:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise QuiverError(f"edge ({i},{j}) out of range 1..{n}")
        key = frozenset((i, j))
        if key in seen:
            raise QuiverError(f"duplicate edge between {i} and {j}")
        seen.add(key)
        adj[i].append(j)
        adj[j].append(i)
    # connectivity makes it a tree given the edge count
    stack, reached = [1], {1}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in reached:
                reached.add(w)
                stack.append(w)
    if len(reached) != n:
        raise QuiverError("underlying graph is not connected")
    if max(len(a) for a in adj.values()) > 3:
        raise QuiverError("underlying graph has a vertex of degree > 3")
    legs = _leg_lengths(n, adj)
    if letter == "A":
        if legs is not None:
            raise QuiverError("underlying graph is not an A_n path")
    elif letter == "D":
        want = tuple(sorted((1, 1, n - 3)))
        if legs != want:
            raise QuiverError(f"underlying graph is not a D_{n} diagram")
    else:
        want = {6: (1, 2, 2), 7: (1, 2, 3), 8: (1, 2, 4)}[n]
        if legs != want:
            raise QuiverError(f"underlying graph is not an E_{n} diagram")
    return adj


@dataclass(frozen=True)
class Quiver:
    """An oriented ADE diagram on vertices 1..n."""

    letter: str
    n: int
    arrows: tuple  # tuple of (tail, head) pairs, tail -> head

    type_tag: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "type_tag", f"{self.letter}{self.n}")
        _validate_shape(self.letter, self.n, self.arrows)

    # -- basic structure -------------------------------------------------
    @property
    def vertices(self):
        return range(1, self.n + 1)

    def arrows_out(self, i):
        return [j for (a, j) in self.arrows if a == i]

    def arrows_in(self, i):
        return [a for (a, j) in self.arrows if j == i]

    def neighbors(self, i):
        return self.arrows_out(i) + self.arrows_in(i)

    def is_sink(self, i):
        return not self.arrows_out(i)

    def is_source(self, i):
        return not self.arrows_in(i)

    def sinks(self):
        return [i for i in self.vertices if self.is_sink(i)]

    def topological_order(self):
        """Vertices ordered so every arrow goes from earlier to later."""
        order, placed = [], set()
        remaining = set(self.vertices)
        while remaining:
            ready = sorted(
                v for v in remaining if all(a in placed for a in self.arrows_in(v))
            )
            if not ready:
                raise QuiverError("orientation has a cycle")  # impossible on a tree
            for v in ready:
                order.append(v)
                placed.add(v)
                remaining.discard(v)
        return order

    def reverse_at(self, i):
        """The quiver with every arrow incident to vertex i reversed."""
        flipped = tuple(
            (j, a) if (a == i or j == i) else (a, j) for (a, j) in self.arrows
        )
        return Quiver(self.letter, self.n, flipped)

    def opposite(self):
        return Quiver(self.letter, self.n, tuple((j, a) for (a, j) in self.arrows))

    # -- serialization ----------------------------------------------------
    def to_json(self):
        return json.dumps(
            {"type": self.type_tag, "arrows": [list(a) for a in self.arrows]}
        )

    @staticmethod
    def from_json(text):
        data = json.loads(text)
        letter, n = parse_type_tag(data["type"])
        arrows = tuple((int(i), int(j)) for i, j in data["arrows"])
        return Quiver(letter, n, arrows)

    def __repr__(self):
        arr = ",".join(f"{i}>{j}" for i, j in self.arrows)
        return f"Quiver({self.type_tag}: {arr})"


def parse_orientation(spec):
    """Parse "2>1,3>1" / "2->1;3->1" style orientation strings."""
    pairs = []
    for chunk in spec.replace(";", ",").split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ">" in chunk:
            a, b = chunk.split(">", 1)
            a = a.rstrip("-")
        else:
            raise QuiverError(f"cannot parse orientation fragment {chunk!r}")
        pairs.append((int(a.strip()), int(b.strip())))
    return pairs


def build_quiver(type_tag, orientation=None):
    """Build a validated quiver of the given ADE type.

    `orientation` is either None (every diagram edge directed from the
    smaller label to the larger, as in the canonical labeling), a string
    like "2>1,3>1,4>1", or an iterable of (tail, head) pairs.  The
    underlying edge set must be a diagram of the named type; conflicting
    or duplicated directions are rejected.
    """
    letter, n = parse_type_tag(type_tag)
    if orientation is None:
        arrows = tuple(diagram_edges(letter, n))
    else:
        if isinstance(orientation, str):
            orientation = parse_orientation(orientation)
        arrows = tuple((int(i), int(j)) for i, j in orientation)
    return Quiver(letter, n, arrows)


# -- Euler form -----------------------------------------------------------

def euler_matrix(q):
    """Matrix E with E[i][i] = 1 and E[i][j] -= 1 for each arrow i -> j."""
    n = q.n
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = 1
    for (i, j) in q.arrows:
        mat[i - 1][j - 1] -= 1
    return mat


def euler_form(q, alpha, beta):
    """<alpha, beta> = sum a_i b_i - sum over arrows i->j of a_i b_j."""
    if len(alpha) != q.n or len(beta) != q.n:
        raise QuiverError("dimension vector length does not match quiver rank")
    total = sum(a * b for a, b in zip(alpha, beta))
    for (i, j) in q.arrows:
        total -= alpha[i - 1] * beta[j - 1]
    return total


def symmetrized_euler(q, alpha, beta):
    return euler_form(q, alpha, beta) + euler_form(q, beta, alpha)


_ROOTS_CACHE = {}


def positive_roots(q):
    """All positive roots of the underlying diagram, graded-lex ordered.

    Enumerated as the closure of the simple roots under the simple
    reflections of the underlying graph; the order (by height, then
    lexicographically) is the canonical indexing used everywhere else.
    """
    key = (q.letter, q.n, frozenset(frozenset(e) for e in q.arrows))
    cached = _ROOTS_CACHE.get(key)
    if cached is not None:
        return cached
    n = q.n
    adj = [[] for _ in range(n)]
    for (i, j) in q.arrows:
        adj[i - 1].append(j - 1)
        adj[j - 1].append(i - 1)

    def reflect(alpha, i):
        out = list(alpha)
        out[i] = -alpha[i] + sum(alpha[j] for j in adj[i])
        return tuple(out)

    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for alpha in frontier:
            for i in range(n):
                beta = reflect(alpha, i)
                if beta in seen:
                    continue
                if all(c >= 0 for c in beta):
                    seen.add(beta)
                    nxt.append(beta)
        frontier = nxt
    roots = sorted(seen, key=lambda a: (sum(a), a))
    for a in roots:
        if euler_form(q, a, a) != 1:
            raise AssertionError(f"root {a} fails <a,a>=1")
    _ROOTS_CACHE[key] = roots
    return roots


def root_index(q, alpha):
    roots = positive_roots(q)
    alpha = tuple(alpha)
    try:
        return roots.index(alpha)
    except ValueError:
        raise QuiverError(f"{alpha} is not a positive root of {q.type_tag}") from None


def coxeter_number(q):
    """h_Q: n+1 for A_n, 2(n-1) for D_n, 12/18/30 for E_6/7/8."""
    if q.letter == "A":
        h = q.n + 1
    elif q.letter == "D":
        h = 2 * (q.n - 1)
    else:
        h = _E_COXETER[q.n]
    # cross-check against the root count: #roots = n*h/2
    assert 2 * len(positive_roots(q)) == q.n * h
    return h
