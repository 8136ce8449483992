"""Explicit indecomposable representations over Q and their Hom/Ext calculus.

Indecomposables are built once per quiver by BGP reflection functors from
simple representations, following an admissible (sinks-first) vertex
sweep; Gabriel's theorem makes the dimension vector a complete
isomorphism invariant, so objects are identified by root index
everywhere downstream.  All matrices are integral; hom spaces are kernels
of integer intertwiner systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactalg import (
    generic_rank,
    int_nullspace,
    modp_rank,
    param_matrix,
    smith_normal_form,
    sparse_int_rank,
)
from .quiver import QuiverError, euler_form, positive_roots, root_index


@dataclass
class Rep:
    """A representation: dimension vector plus one matrix per arrow.

    matrices[(i, j)] has shape dim[j-1] x dim[i-1] (rows act on the head).
    Entries are ints (or Fractions for derived sub/quotient objects).
    """

    quiver: object
    dim: tuple
    matrices: dict

    def mat(self, arrow):
        return self.matrices[arrow]

    def total_dim(self):
        return sum(self.dim)

    def __repr__(self):
        return f"Rep{self.dim}"


def simple_rep(q, i):
    dim = tuple(1 if v == i else 0 for v in q.vertices)
    return Rep(q, dim, {(a, b): _zero_matrix(dim[b - 1], dim[a - 1]) for (a, b) in q.arrows})


def _zero_matrix(rows, cols):
    return [[0] * cols for _ in range(rows)]


def _mat_mul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    oi[j] += x * bk[j]
    return out


def _reflect_dim(q, alpha, i):
    """Simple reflection of a dimension vector at vertex i (underlying graph)."""
    out = list(alpha)
    out[i - 1] = -alpha[i - 1] + sum(alpha[j - 1] for j in q.neighbors(i))
    return tuple(out)


def _source_reflection(rep, i):
    """BGP functor at a source i: reps of Q' -> reps of (Q' reversed at i).

    New space at i is coker(N_i -> sum of head spaces); the projection is
    taken from the unimodular row transform of the Smith normal form, so
    the result stays integral.
    """
    q = rep.quiver
    targets = sorted(q.arrows_out(i))
    assert q.is_source(i), f"vertex {i} is not a source"
    offs = []
    total = 0
    for j in targets:
        offs.append(total)
        total += rep.dim[j - 1]
    ni = rep.dim[i - 1]
    # phi: N_i -> E, stacked arrow matrices
    phi = [[0] * ni for _ in range(total)]
    for t, j in enumerate(targets):
        m = rep.mat((i, j))
        for r in range(rep.dim[j - 1]):
            phi[offs[t] + r] = list(m[r])
    if total == 0:
        rank = 0
        proj = []
    elif ni == 0:
        rank = 0
        proj = [[int(r == c) for c in range(total)] for r in range(total)]
    else:
        factors, u, _v = smith_normal_form(phi)
        rank = sum(1 for d in factors if d != 0)
        proj = u[rank:]
    new_q = q.reverse_at(i)
    new_dim = list(rep.dim)
    new_dim[i - 1] = total - rank
    mats = {}
    for (a, b) in new_q.arrows:
        if b == i:  # arrows j -> i replacing i -> j
            j = a
            t = targets.index(j)
            block = [
                [proj[r][offs[t] + c] for c in range(rep.dim[j - 1])]
                for r in range(total - rank)
            ]
            mats[(a, b)] = block
        else:
            mats[(a, b)] = [list(r) for r in rep.mat((a, b))]
    return Rep(new_q, tuple(new_dim), mats)


class RepCache:
    """All indecomposables of one Dynkin quiver plus memoized hom data."""

    def __init__(self, q):
        self.quiver = q
        self.roots = positive_roots(q)
        self.indecs = {}
        self._hom_dims = {}
        self._hom_bases = {}
        self._mono = {}
        self._build_all()

    # -- construction ------------------------------------------------------
    def _build_all(self):
        q = self.quiver
        sweep = list(reversed(q.topological_order()))  # sinks first
        n = q.n
        nroots = len(self.roots)
        # quivers along the sweep: Q^(j) = s_{i_j} ... s_{i_1} Q
        quivers = [q]
        max_steps = n * (nroots + 2)
        for j in range(max_steps):
            i = sweep[j % n]
            assert quivers[-1].is_sink(i), "sweep vertex is not a sink"
            quivers.append(quivers[-1].reverse_at(i))
        seen = {}
        alive = {v: True for v in q.vertices}
        m = 0
        # step m emits the m-th slice object C-_{i_1}..C-_{i_{m-1}} S_{i_m};
        # a vertex whose tau-orbit hits its injective stops emitting, but its
        # reflections stay in the word for the orbits still running.
        while len(seen) < nroots:
            i_m = sweep[m % n]
            m += 1
            assert m <= max_steps, "root sweep failed to terminate"
            if not alive[i_m]:
                continue
            beta = tuple(1 if v == i_m else 0 for v in q.vertices)
            for j in range(m - 1, 0, -1):
                beta = _reflect_dim(q, beta, sweep[(j - 1) % n])
            if not (all(c >= 0 for c in beta) and any(beta)):
                alive[i_m] = False
                continue
            rep = simple_rep(quivers[m - 1], i_m)
            for j in range(m - 1, 0, -1):
                want = _reflect_dim(rep.quiver, rep.dim, sweep[(j - 1) % n])
                rep = _source_reflection(rep, sweep[(j - 1) % n])
                assert rep.dim == want, "reflection functor was not injective"
            assert rep.quiver.arrows == q.arrows
            rep = Rep(q, rep.dim, rep.matrices)
            assert rep.dim == beta, f"reflection functors missed root {beta}"
            assert beta not in seen, f"root {beta} built twice"
            seen[beta] = rep
        for idx, root in enumerate(self.roots):
            rep = seen[root]
            self.indecs[idx] = rep
        for idx in self.indecs:
            if self.hom_dim_indec(idx, idx) != 1:
                raise AssertionError(
                    f"indecomposable {self.roots[idx]} has End of dimension != 1"
                )

    def indec(self, idx):
        return self.indecs[idx]

    def indec_by_root(self, root):
        return self.indecs[root_index(self.quiver, root)]

    # -- hom spaces ----------------------------------------------------------
    def hom_dim_indec(self, ia, ib):
        key = (ia, ib)
        val = self._hom_dims.get(key)
        if val is None:
            val = hom_dim(self.indecs[ia], self.indecs[ib])
            self._hom_dims[key] = val
        return val

    def hom_basis_indec(self, ia, ib):
        key = (ia, ib)
        val = self._hom_bases.get(key)
        if val is None:
            val = hom_basis(self.indecs[ia], self.indecs[ib])
            self._hom_bases[key] = val
        return val

    def ext1_dim_indec(self, ia, ib):
        return self.hom_dim_indec(ia, ib) - euler_form(
            self.quiver, self.roots[ia], self.roots[ib]
        )

    def exists_mono_indec(self, ia, ib):
        key = (ia, ib)
        val = self._mono.get(key)
        if val is None:
            if ia == ib:
                val = True
            else:
                val = exists_mono(self.indecs[ia], self.indecs[ib])
            self._mono[key] = val
        return val


_CACHE = {}


def rep_cache(q):
    c = _CACHE.get(q)
    if c is None:
        c = RepCache(q)
        _CACHE[q] = c
    return c


def indec_rep(q, root):
    """The indecomposable with the given dimension vector (a positive root)."""
    return rep_cache(q).indec_by_root(tuple(root))


# ---------------------------------------------------------------------------
# intertwiner systems
# ---------------------------------------------------------------------------

def _intertwiner_rows(m_rep, n_rep):
    """Sparse rows of the system N(a) f_i = f_j M(a); unknowns vec(f_i)."""
    q = m_rep.quiver
    if n_rep.quiver.arrows != q.arrows:
        raise QuiverError("hom between representations of different quivers")
    offs = []
    total = 0
    for v in q.vertices:
        offs.append(total)
        total += n_rep.dim[v - 1] * m_rep.dim[v - 1]
    rows = []
    for (i, j) in q.arrows:
        na = n_rep.mat((i, j))
        ma = m_rep.mat((i, j))
        mi, mj = m_rep.dim[i - 1], m_rep.dim[j - 1]
        ni, nj = n_rep.dim[i - 1], n_rep.dim[j - 1]
        for r in range(nj):
            for c in range(mi):
                row = {}
                for k in range(ni):
                    x = na[r][k]
                    if x:
                        row[offs[i - 1] + k * mi + c] = row.get(offs[i - 1] + k * mi + c, 0) + x
                for l in range(mj):
                    x = ma[l][c]
                    if x:
                        key = offs[j - 1] + r * mj + l
                        row[key] = row.get(key, 0) - x
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows, total, offs


def _integerize_rows(rows):
    out = []
    for row in rows:
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        if den != 1:
            row = {k: int(v * den) for k, v in row.items()}
        else:
            row = {k: int(v) for k, v in row.items()}
        out.append(row)
    return out


def hom_dim(m_rep, n_rep):
    """dim Hom(M, N): nullity of the intertwiner system, exactly.

    A rank over GF(p) can only undershoot the rank over Q, so a zero
    nullity mod p certifies hom = 0; positive candidates are recomputed
    by exact integer elimination.
    """
    rows, total, _ = _intertwiner_rows(m_rep, n_rep)
    if total == 0:
        return 0
    rows = _integerize_rows(rows)
    if not rows:
        return total
    nullity_p = total - modp_rank(rows, total)
    if nullity_p == 0:
        return 0
    return total - sparse_int_rank(rows, total)


def hom_basis(m_rep, n_rep):
    """Basis of Hom(M, N): list of per-vertex matrix tuples f[v-1]."""
    rows, total, offs = _intertwiner_rows(m_rep, n_rep)
    q = m_rep.quiver
    if total == 0:
        return []
    rows = _integerize_rows(rows)
    vectors = int_nullspace(rows, total)
    basis = []
    for vec in vectors:
        mats = []
        for v in q.vertices:
            mi, ni = m_rep.dim[v - 1], n_rep.dim[v - 1]
            block = [
                [vec[offs[v - 1] + r * mi + c] for c in range(mi)] for r in range(ni)
            ]
            mats.append(block)
        basis.append(mats)
    return basis


def ext1_dim(m_rep, n_rep):
    """dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>; asserted nonnegative."""
    val = hom_dim(m_rep, n_rep) - euler_form(m_rep.quiver, m_rep.dim, n_rep.dim)
    if val < 0:
        raise AssertionError("negative Ext dimension: upstream bug")
    return val


def _int_matrix_rank(mat):
    rows = []
    for r in mat:
        row = {c: int(v) for c, v in enumerate(r) if v}
        if row:
            rows.append(row)
    ncols = len(mat[0]) if mat else 0
    return sparse_int_rank(rows, ncols)


def exists_mono(l_rep, m_rep):
    """Whether some map L -> M is injective at every vertex.

    Injectivity is a generic condition on the hom space, so the test is:
    every vertex block of sum_k t_k f^(k) has generic column rank dim L_v.
    Cheap deterministic specializations are tried first as witnesses; the
    symbolic generic-rank computation settles the negative case.
    """
    if any(l > m for l, m in zip(l_rep.dim, m_rep.dim)):
        return False
    if l_rep is m_rep:
        return True
    basis = hom_basis(l_rep, m_rep)
    if not basis:
        return False
    h = len(basis)
    q = l_rep.quiver
    live = [v for v in q.vertices if l_rep.dim[v - 1] > 0]
    # witness search at fixed specialization points
    trials = []
    for k in range(h):
        trials.append([1 if t == k else 0 for t in range(h)])
    trials.append([1] * h)
    trials.append([1 + t for t in range(h)])
    trials.append([(t + 1) ** 2 for t in range(h)])
    for t in trials:
        ok = True
        for v in live:
            li = l_rep.dim[v - 1]
            mi = m_rep.dim[v - 1]
            blk = [[0] * li for _ in range(mi)]
            for k in range(h):
                coeff = t[k]
                if coeff:
                    bk = basis[k][v - 1]
                    for r in range(mi):
                        for c in range(li):
                            blk[r][c] += coeff * bk[r][c]
            if _int_matrix_rank(blk) < li:
                ok = False
                break
        if ok:
            return True
    # symbolic: generic rank of each vertex block
    for v in live:
        li = l_rep.dim[v - 1]
        mi = m_rep.dim[v - 1]
        if mi < li:
            return False
        rows = []
        for r in range(mi):
            row = []
            for c in range(li):
                lin = {}
                for k in range(h):
                    x = basis[k][v - 1][r][c]
                    if x:
                        lin[k] = x
                row.append((0, lin))
            rows.append(row)
        if generic_rank(param_matrix(rows, h)) < li:
            return False
    return True


def extension_middle(a_rep, b_rep):
    """Root of the middle term of the unique nonsplit extension of B by A.

    Requires dim Ext^1(B, A) = 1; the sum dim A + dim B must itself be a
    positive root (Gabriel uniqueness pins down the middle term), and a
    violation aborts loudly since it signals broken tilting theory.
    """
    q = a_rep.quiver
    if ext1_dim(b_rep, a_rep) != 1:
        raise QuiverError("extension_middle requires dim Ext^1(B, A) = 1")
    total = tuple(x + y for x, y in zip(a_rep.dim, b_rep.dim))
    if total not in positive_roots(q):
        raise AssertionError(
            f"extension middle {total} is not a root: tilting invariant violated"
        )
    return total


# ---------------------------------------------------------------------------
# sub/quotient machinery (used by HN filtrations and torsion pairs)
# ---------------------------------------------------------------------------

def _rref(mat):
    """Reduced row echelon form over Q; returns (rows, pivot_cols)."""
    rows = [[Fraction(x) for x in r] for r in mat if any(r)]
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def subrep_from_spans(m_rep, spans):
    """Invariant-subspace spans per vertex -> (sub Rep, inclusion matrices).

    spans[v-1] is a list of vectors in Q^{dim M_v}; invariance under the
    arrow maps is asserted.
    """
    q = m_rep.quiver
    bases = []
    for v in q.vertices:
        basis_rows, _ = _rref([list(x) for x in spans[v - 1]]) if spans[v - 1] else ([], [])
        bases.append(basis_rows)
    dim = tuple(len(b) for b in bases)
    incl = []  # per vertex: matrix (dim M_v) x (sub dim), columns = basis vectors
    for v in q.vertices:
        cols = bases[v - 1]
        mat = [[cols[c][r] for c in range(len(cols))] for r in range(m_rep.dim[v - 1])]
        incl.append(mat)
    mats = {}
    for (i, j) in q.arrows:
        # solve incl_j * X = M_a * incl_i  (incl_j has full column rank)
        target = _mat_mul(m_rep.mat((i, j)), incl[i - 1])
        mats[(i, j)] = _solve_in_basis(bases[j - 1], target, m_rep.dim[j - 1])
    return Rep(q, dim, mats), incl


def _solve_in_basis(basis_rows, target_cols, ambient_dim):
    """Express each column of target (ambient coords) in the RREF basis rows."""
    k = len(basis_rows)
    ncols = len(target_cols[0]) if target_cols else 0
    if ambient_dim == 0 or ncols == 0:
        return [[0] * ncols for _ in range(k)]
    # basis_rows are RREF rows; pivot of row r is its first nonzero column
    pivots = []
    for row in basis_rows:
        for c, x in enumerate(row):
            if x != 0:
                pivots.append(c)
                break
    out = [[Fraction(0)] * ncols for _ in range(k)]
    for col in range(ncols):
        vec = [Fraction(target_cols[r][col]) for r in range(ambient_dim)]
        for r in range(k):
            coef = vec[pivots[r]]
            if coef:
                out[r][col] = coef
                vec = [x - coef * y for x, y in zip(vec, basis_rows[r])]
        if any(vec):
            raise AssertionError("subspace is not invariant under arrow map")
    return out


def quotient_rep(m_rep, spans):
    """Quotient of M by the invariant subspace spanned per vertex.

    Returns (quotient Rep, projection matrices per vertex).
    """
    q = m_rep.quiver
    projs = []
    bases = []
    for v in q.vertices:
        rows, pivots = _rref([list(x) for x in spans[v - 1]]) if spans[v - 1] else ([], [])
        bases.append((rows, pivots))
        nonpiv = [c for c in range(m_rep.dim[v - 1]) if c not in pivots]
        # projection: reduce by the RREF rows, keep non-pivot coordinates
        proj = []
        for c_out in nonpiv:
            row = [Fraction(0)] * m_rep.dim[v - 1]
            row[c_out] = Fraction(1)
            proj.append(row)
        # subtract pivot contributions: e_c maps to e_c - sum rows with v[p]
        # correction built by applying reduction to each standard vector
        full = []
        for c in range(m_rep.dim[v - 1]):
            vec = [Fraction(int(r == c)) for r in range(m_rep.dim[v - 1])]
            for rr, pc in zip(rows, pivots):
                coef = vec[pc]
                if coef:
                    vec = [x - coef * y for x, y in zip(vec, rr)]
            full.append([vec[c2] for c2 in nonpiv])
        # full[c] = coordinates of image of e_c
        projs.append([[full[c][r] for c in range(m_rep.dim[v - 1])] for r in range(len(nonpiv))])
    dim = tuple(m_rep.dim[v - 1] - len(bases[v - 1][1]) for v in q.vertices)
    mats = {}
    for (i, j) in q.arrows:
        # induced map: proj_j . M_a restricted to chosen complement coords of i
        nonpiv_i = [c for c in range(m_rep.dim[i - 1]) if c not in bases[i - 1][1]]
        ma = m_rep.mat((i, j))
        cols = []
        for c in nonpiv_i:
            img = [Fraction(ma[r][c]) for r in range(m_rep.dim[j - 1])]
            red = _apply_rows(projs[j - 1], img)
            cols.append(red)
        mats[(i, j)] = [[cols[c][r] for c in range(len(nonpiv_i))] for r in range(dim[j - 1])]
    return Rep(q, dim, mats), projs


def _apply_rows(matrix, vec):
    return [sum(row[k] * vec[k] for k in range(len(vec))) for row in matrix]


def max_add_quotient(m_rep, t_rep):
    """Universal map M -> T^h for h = dim Hom(M, T): kernel and multiplicity.

    Returns (kernel_dim, multiplicity, kernel Rep).  The image is T^m,
    verified by the vertexwise rank bookkeeping rank(g_v) = m * dim T_v.
    """
    q = m_rep.quiver
    basis = hom_basis(m_rep, t_rep)
    h = len(basis)
    if h == 0:
        return m_rep.dim, 0, m_rep
    ranks = []
    kernels = []
    for v in q.vertices:
        mi = m_rep.dim[v - 1]
        ti = t_rep.dim[v - 1]
        stacked = []
        for k in range(h):
            for r in range(ti):
                stacked.append([basis[k][v - 1][r][c] for c in range(mi)])
        if not stacked:
            stacked = [[0] * mi] if mi else []
        rows = [{c: int(x) for c, x in enumerate(r) if x} for r in stacked]
        rows = [r for r in rows if r]
        rank = sparse_int_rank(rows, mi) if mi else 0
        ranks.append(rank)
        kernels.append(int_nullspace(rows, mi) if mi else [])
    mult = None
    for v in q.vertices:
        ti = t_rep.dim[v - 1]
        if ti:
            m_here = ranks[v - 1] // ti
            if ranks[v - 1] % ti:
                raise AssertionError("image of universal map is not add(T)")
            if mult is None:
                mult = m_here
            elif mult != m_here:
                raise AssertionError("image of universal map is not T^m")
        elif ranks[v - 1]:
            raise AssertionError("image exceeds the support of T")
    mult = mult or 0
    kernel, _ = subrep_from_spans(m_rep, kernels)
    return kernel.dim, mult, kernel
