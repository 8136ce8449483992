"""The combinatorial model of Ind D(Q): shifted indecomposables on ZQ.

Objects are (root index, shift) pairs.  The translation quiver structure
is knitted from the projective section (which carries the opposite
orientation of Q) by the mesh rule; each ZQ vertex is matched to a
shifted indecomposable by sign bookkeeping on K-classes ([M[1]] = -[M]).
The model is windowed by shift and grown on demand; every computation
here lives in a finite window because interval exchange graphs are
finite.
"""

from __future__ import annotations

from typing import NamedTuple

from .quiver import QuiverError, coxeter_number, positive_roots
from .reps import rep_cache


class IndecObject(NamedTuple):
    """An indecomposable of D(Q): a positive root index plus a shift."""

    root: int
    shift: int

    def shifted(self, k):
        return IndecObject(self.root, self.shift + k)


def obj_root_vec(q, x):
    return positive_roots(q)[x.root]


def obj_kclass(q, x):
    sign = -1 if x.shift % 2 else 1
    return tuple(sign * c for c in obj_root_vec(q, x))


class ZQModel:
    """Windowed coordinatization of Ind D(Q) inside the translation quiver."""

    def __init__(self, q):
        self.q = q
        self.n = q.n
        self.h = coxeter_number(q)
        self.roots = positive_roots(q)
        self.root_idx = {r: k for k, r in enumerate(self.roots)}
        self.nroots = len(self.roots)
        self.heights = self._heights()
        self.topo = q.topological_order()
        self.obj = {}  # (m, i) -> IndecObject
        self.coord = {}  # IndecObject -> (m, i)
        self._shift_count = {}
        p = self.heights
        self.m_lo = min(p.values())
        self.m_hi = max(p.values())
        for i in q.vertices:
            dim = self._projective_dim(i)
            self._place((p[i], i), IndecObject(self.root_idx[dim], 0))
        # complete the seed rectangle so forward/backward fills see full columns
        self._fill_forward(self.m_hi)
        self._fill_backward(self.m_lo)

    # -- construction helpers ------------------------------------------------
    def _heights(self):
        q = self.q
        p = {1: 0}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in q.arrows_out(v):
                if w not in p:
                    p[w] = p[v] - 1
                    stack.append(w)
            for w in q.arrows_in(v):
                if w not in p:
                    p[w] = p[v] + 1
                    stack.append(w)
        return p

    def _projective_dim(self, i):
        q = self.q
        reach = {i}
        stack = [i]
        while stack:
            v = stack.pop()
            for w in q.arrows_out(v):
                if w not in reach:
                    reach.add(w)
                    stack.append(w)
        return tuple(1 if v in reach else 0 for v in q.vertices)

    def _place(self, coord, x):
        self.obj[coord] = x
        self.coord[x] = coord
        self._shift_count[x.shift] = self._shift_count.get(x.shift, 0) + 1

    def _kclass_at(self, coord):
        return obj_kclass(self.q, self.obj[coord])

    def _identify(self, cvec, anchor, direction):
        """Match a signed K-class to (root, shift) next to the anchor object.

        direction +1: the new vertex is tau^{-1} of the anchor (shift can
        rise by one); -1: tau of the anchor (shift can drop by one).
        """
        if all(c >= 0 for c in cvec) and any(cvec):
            root, sign = tuple(cvec), 1
        elif all(c <= 0 for c in cvec) and any(cvec):
            root, sign = tuple(-c for c in cvec), -1
        else:
            raise AssertionError(f"knitted class {cvec} is not a signed root")
        idx = self.root_idx.get(root)
        if idx is None:
            raise AssertionError(f"knitted class {cvec} is not a root")
        s0 = anchor.shift
        candidates = (s0, s0 + 1) if direction > 0 else (s0, s0 - 1)
        for s in candidates:
            if (1 if s % 2 == 0 else -1) == sign:
                return IndecObject(idx, s)
        raise AssertionError("no shift assignment matches the K-class sign")

    def _fill_forward(self, to_m):
        p = self.heights
        q = self.q
        m = self.m_hi
        start = min(p.values()) + 1
        for col in range(start, to_m + 1):
            for i in self.topo:
                if col <= p[i] or (col, i) in self.obj:
                    continue
                total = [0] * self.n
                for j in q.arrows_out(i):
                    for k, c in enumerate(self._kclass_at((col - 1, j))):
                        total[k] += c
                for k in q.arrows_in(i):
                    for kk, c in enumerate(self._kclass_at((col, k))):
                        total[kk] += c
                prev = self.obj[(col - 1, i)]
                for kk, c in enumerate(obj_kclass(q, prev)):
                    total[kk] -= c
                self._place((col, i), self._identify(total, prev, +1))
        self.m_hi = max(self.m_hi, to_m)

    def _fill_backward(self, to_m):
        p = self.heights
        q = self.q
        start = max(p.values()) - 1
        for col in range(start, to_m - 1, -1):
            for i in reversed(self.topo):
                if col >= p[i] or (col, i) in self.obj:
                    continue
                total = [0] * self.n
                for j in q.arrows_out(i):
                    for k, c in enumerate(self._kclass_at((col, j))):
                        total[k] += c
                for k in q.arrows_in(i):
                    for kk, c in enumerate(self._kclass_at((col + 1, k))):
                        total[kk] += c
                nxt = self.obj[(col + 1, i)]
                for kk, c in enumerate(obj_kclass(q, nxt)):
                    total[kk] -= c
                self._place((col, i), self._identify(total, nxt, -1))
        self.m_lo = min(self.m_lo, to_m)

    # -- window management -----------------------------------------------------
    def ensure_shift_window(self, lo, hi):
        """Grow until every shift in [lo, hi] has all its objects placed."""
        guard = 0
        while any(self._shift_count.get(s, 0) < self.nroots for s in range(lo, hi + 1)):
            guard += 1
            if guard > 500:
                raise AssertionError("ZQ window growth failed to converge")
            need_hi = any(
                self._shift_count.get(s, 0) < self.nroots for s in range(max(lo, 0), hi + 1)
            )
            need_lo = any(
                self._shift_count.get(s, 0) < self.nroots for s in range(lo, min(hi, 0) + 1)
            )
            if need_hi:
                self._fill_forward(self.m_hi + self.h)
            if need_lo or not need_hi:
                self._fill_backward(self.m_lo - self.h)

    def coord_of(self, x):
        if x not in self.coord:
            self.ensure_shift_window(min(x.shift, 0), max(x.shift, 0))
        return self.coord[x]

    def object_at(self, coord):
        m, i = coord
        if coord not in self.obj:
            if m > self.m_hi:
                self._fill_forward(m)
            if m < self.m_lo:
                self._fill_backward(m)
        return self.obj[coord]

    # -- translation, shift, position ------------------------------------------
    def tau(self, x, power=1):
        m, i = self.coord_of(x)
        return self.object_at((m - power, i))

    def pf(self, x):
        m, i = self.coord_of(x)
        return 2 * m - self.heights[i] - self.heights[1]

    def pf_of_heart_simples(self, simples):
        return sum(self.pf(s) for s in simples)

    # -- sections ------------------------------------------------------------------
    def section_through(self, x, direction):
        """Ps(x) for direction 'fwd', Ps^{-1}(x) for 'bwd', as {vertex: column}.

        Sections are computed by the tree walk: each diagram edge crossed
        against (fwd) or along (bwd) its arrow moves one column.
        """
        q = self.q
        m0, i0 = self.coord_of(x)
        cols = {i0: m0}
        stack = [i0]
        visited = {i0}
        while stack:
            v = stack.pop()
            for w in q.neighbors(v):
                if w in visited:
                    continue
                visited.add(w)
                if direction == "fwd":
                    # out-arrows: (m,v)->(m,w) for v->w; (m,v)->(m+1,w) for w->v
                    cols[w] = cols[v] + (0 if w in q.arrows_out(v) else 1)
                else:
                    # in-arrows: (m,w)->(m,v) for w->v; (m-1,w)->(m,v) for v->w
                    cols[w] = cols[v] - (0 if w in q.arrows_in(v) else 1)
                stack.append(w)
        return cols

    def sectional(self, x, direction):
        """All objects on sectional paths from (fwd) / into (bwd) x.

        The result is a section: one object per tau-orbit, acyclic, n
        objects total (checked).
        """
        cols = self.section_through(x, direction)
        out = []
        for i, m in cols.items():
            out.append(self.object_at((m, i)))
        assert len({self.coord_of(y)[1] for y in out}) == self.n
        return sorted(out)

    def is_successor(self, x, y):
        """Whether y is a successor-or-equal of x (lies in [Ps(x), infinity))."""
        cols = self.section_through(x, "fwd")
        m, i = self.coord_of(y)
        return m >= cols[i]

    def is_predecessor(self, x, y):
        """Whether y is a predecessor-or-equal of x (lies in (-infinity, Ps^{-1}(x)])."""
        cols = self.section_through(x, "bwd")
        m, i = self.coord_of(y)
        return m <= cols[i]

    def objects_with_shift(self, s):
        self.ensure_shift_window(s, s)
        return sorted(IndecObject(r, s) for r in range(self.nroots))

    def arrows_out(self, x):
        m, i = self.coord_of(x)
        q = self.q
        out = [(m, j) for j in q.arrows_out(i)] + [(m + 1, k) for k in q.arrows_in(i)]
        return [self.object_at(c) for c in out]

    def arrows_in(self, x):
        m, i = self.coord_of(x)
        q = self.q
        inn = [(m, k) for k in q.arrows_in(i)] + [(m - 1, j) for j in q.arrows_out(i)]
        return [self.object_at(c) for c in inn]


_ZQ_CACHE = {}


def build_zq(q, window=None):
    """The (cached, lazily grown) ZQ model for a quiver.

    `window` is an optional (lo, hi) shift range to prefill.
    """
    model = _ZQ_CACHE.get(q)
    if model is None:
        model = ZQModel(q)
        _ZQ_CACHE[q] = model
    if window is not None:
        model.ensure_shift_window(window[0], window[1])
    return model


def hom_derived(q, x, y):
    """dim Hom_{D(Q)}(X, Y) for shifted indecomposables.

    Hereditary degree window: hom in equal shifts, Ext^1 across a gap of
    one, zero otherwise.
    """
    d = y.shift - x.shift
    if d < 0 or d > 1:
        return 0
    cache = rep_cache(q)
    if d == 0:
        return cache.hom_dim_indec(x.root, y.root)
    return cache.ext1_dim_indec(x.root, y.root)


def hom_total(q, x, y):
    """dim Hom^bullet(X, Y) summed over all degrees (shift independent)."""
    cache = rep_cache(q)
    return cache.hom_dim_indec(x.root, y.root) + cache.ext1_dim_indec(x.root, y.root)
