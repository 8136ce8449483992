"""Hearts as simple-sets: membership, order, simple tilts, standardization.

A heart is stored as its n simple objects only; t-structure membership is
derived from Hom-vanishing against the simples, never stored.  Simple
forward/backward tilts implement the new-simple formula case-wise on
shifts; every constructed heart is validated against the simple-set
axioms, so a wrong tilt aborts loudly instead of corrupting downstream
computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import json

from .quiver import QuiverError, positive_roots, root_index
from .reps import extension_middle, hom_basis, rep_cache, sparse_int_rank
from .zq import IndecObject, build_zq, hom_derived, hom_total, obj_kclass


def _int_det(mat):
    """Determinant of a small integer matrix (fraction-free elimination)."""
    a = [list(r) for r in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class HeartError(ValueError):
    """A candidate simple set violates the heart axioms."""


@dataclass(frozen=True)
class Heart:
    """A finite heart of D(Q), given by its simples in canonical order."""

    quiver: object
    simples: tuple

    def __post_init__(self):
        object.__setattr__(self, "simples", tuple(sorted(self.simples)))

    @property
    def n(self):
        return self.quiver.n

    def shifted(self, k):
        return Heart(self.quiver, tuple(s.shifted(k) for s in self.simples))

    def shift_range(self):
        shifts = [s.shift for s in self.simples]
        return min(shifts), max(shifts)

    def key(self):
        return self.simples

    def label(self):
        roots = positive_roots(self.quiver)
        return "|".join(
            ",".join(map(str, roots[s.root])) + f"@{s.shift}" for s in self.simples
        )

    def to_json(self):
        roots = positive_roots(self.quiver)
        return json.dumps(
            {"simples": [{"root": list(roots[s.root]), "shift": s.shift} for s in self.simples]}
        )

    @staticmethod
    def from_json(q, text):
        data = json.loads(text)
        simples = tuple(
            IndecObject(root_index(q, tuple(e["root"])), int(e["shift"]))
            for e in data["simples"]
        )
        return make_heart(q, simples)

    def __repr__(self):
        return f"Heart[{self.label()}]"


def validate_heart(heart):
    """Simple-set axioms: hom bounds, no maps in degrees <= 0, K-basis."""
    q = heart.quiver
    simples = heart.simples
    if len(simples) != q.n or len(set(simples)) != q.n:
        raise HeartError(f"heart needs {q.n} distinct simples, got {simples}")
    for a in range(len(simples)):
        for b in range(len(simples)):
            if a == b:
                continue
            x, y = simples[a], simples[b]
            if hom_total(q, x, y) + hom_total(q, y, x) > 1:
                raise HeartError(f"hom bound violated for {x}, {y}")
            for k in (x.shift - y.shift, x.shift - y.shift + 1):
                if k <= 0 and hom_derived(q, x, y.shifted(k)):
                    raise HeartError(f"nonzero Hom^{k}({x}, {y}) in a heart")
    kmat = [list(obj_kclass(q, s)) for s in simples]
    if abs(_int_det(kmat)) != 1:
        raise HeartError("simple K-classes do not form a Z-basis")
    return heart


def make_heart(q, simples):
    return validate_heart(Heart(q, tuple(simples)))


def initial_heart(q):
    """The canonical heart mod kQ: simple roots at shift zero."""
    roots = positive_roots(q)
    simples = []
    for i in q.vertices:
        e = tuple(1 if v == i else 0 for v in q.vertices)
        simples.append(IndecObject(roots.index(e), 0))
    return make_heart(q, simples)


# ---------------------------------------------------------------------------
# t-structure membership and the partial order
# ---------------------------------------------------------------------------

def in_tstructure(heart, x):
    """X in P_H iff Hom(X, S[k]) = 0 for every simple S and every k <= -1."""
    q = heart.quiver
    for s in heart.simples:
        base = x.shift - s.shift
        for k in (base, base + 1):
            if k <= -1 and hom_derived(q, x, s.shifted(k)):
                return False
    return True


def in_perp(heart, x):
    """X in P_H^perp iff Hom(S[k], X) = 0 for every simple S and every k >= 0."""
    q = heart.quiver
    for s in heart.simples:
        base = x.shift - s.shift
        for k in (base, base - 1):
            if k >= 0 and hom_derived(q, s.shifted(k), x):
                return False
    return True


def heart_leq(h1, h2):
    """H1 <= H2 iff P_1 contains P_2, tested on the simples of H2."""
    return all(in_tstructure(h1, s) for s in h2.simples)


# ---------------------------------------------------------------------------
# simple tilts
# ---------------------------------------------------------------------------

def _map_ranks(q, x_root, y_root):
    """Vertexwise ranks of the unique-up-to-scalar map X -> Y, plus dims."""
    cache = rep_cache(q)
    basis = cache.hom_basis_indec(x_root, y_root)
    assert len(basis) == 1, "expected a one-dimensional hom space"
    f = basis[0]
    ranks = []
    for v in q.vertices:
        block = f[v - 1]
        rows = [{c: int(val) for c, val in enumerate(r) if val} for r in block]
        rows = [r for r in rows if r]
        ncols = len(block[0]) if block else 0
        ranks.append(sparse_int_rank(rows, ncols) if ncols else 0)
    return ranks


def _forward_image(q, s, x):
    """Image of a simple X != S under the forward tilt at S."""
    d = hom_derived(q, x, s.shifted(1))
    if d == 0:
        return x
    assert d == 1, "hom bound violated in tilt"
    roots = positive_roots(q)
    a, b = s.shift, x.shift
    if b == a:
        # module-level extension 0 -> s -> T -> x -> 0
        cache = rep_cache(q)
        mid = extension_middle(cache.indec(s.root), cache.indec(x.root))
        return IndecObject(roots.index(mid), a)
    if b == a + 1:
        # unique module map f: x -> s; T = Cone(f)[a]
        ranks = _map_ranks(q, x.root, s.root)
        xdim, sdim = roots[x.root], roots[s.root]
        if all(r == d_x for r, d_x in zip(ranks, xdim)):  # injective
            ddim = tuple(ds - dx for ds, dx in zip(sdim, xdim))
            return IndecObject(roots.index(ddim), a)
        if all(r == d_s for r, d_s in zip(ranks, sdim)):  # surjective
            ddim = tuple(dx - ds for dx, ds in zip(xdim, sdim))
            return IndecObject(roots.index(ddim), a + 1)
        raise AssertionError("tilt map neither injective nor surjective")
    raise AssertionError("unreachable shift gap in forward tilt")


def _backward_image(q, s, x):
    """Image of a simple X != S under the backward tilt at S."""
    d = hom_derived(q, s.shifted(-1), x)
    if d == 0:
        return x
    assert d == 1, "hom bound violated in tilt"
    roots = positive_roots(q)
    a, b = s.shift, x.shift
    if b == a:
        # Hom(S[-1], X) = Ext^1(s, x): extension 0 -> x -> T -> s -> 0 at shift a
        cache = rep_cache(q)
        mid = extension_middle(cache.indec(x.root), cache.indec(s.root))
        return IndecObject(roots.index(mid), a)
    if b == a - 1:
        # unique module map g: s -> x; T = Cone(g)[a-1]
        ranks = _map_ranks(q, s.root, x.root)
        sdim, xdim = roots[s.root], roots[x.root]
        if all(r == d_s for r, d_s in zip(ranks, sdim)):  # injective
            ddim = tuple(dx - ds for dx, ds in zip(xdim, sdim))
            return IndecObject(roots.index(ddim), a - 1)
        if all(r == d_x for r, d_x in zip(ranks, xdim)):  # surjective
            ddim = tuple(ds - dx for ds, dx in zip(sdim, xdim))
            return IndecObject(roots.index(ddim), a)
        raise AssertionError("tilt map neither injective nor surjective")
    raise AssertionError("unreachable shift gap in backward tilt")


def _tilt(heart, s, direction):
    q = heart.quiver
    if s not in heart.simples:
        raise HeartError(f"{s} is not a simple of {heart}")
    out = []
    for x in heart.simples:
        if x == s:
            out.append(s.shifted(1 if direction > 0 else -1))
        elif direction > 0:
            out.append(_forward_image(q, s, x))
        else:
            out.append(_backward_image(q, s, x))
    return make_heart(q, out)


def forward_tilt(heart, s):
    """Simple forward tilt at s; the inverse backward tilt is verified."""
    new = _tilt(heart, s, +1)
    back = _tilt(new, s.shifted(1), -1)
    if back != heart:
        raise AssertionError("tilt round-trip failed")
    return new


def backward_tilt(heart, s):
    """Simple backward tilt at s; the inverse forward tilt is verified."""
    new = _tilt(heart, s, -1)
    fwd = _tilt(new, s.shifted(-1), +1)
    if fwd != heart:
        raise AssertionError("tilt round-trip failed")
    return new


def tilt_image(heart, s, x):
    """Where the simple x of `heart` lands under the forward tilt at s."""
    if x == s:
        return s.shifted(1)
    return _forward_image(heart.quiver, s, x)


# ---------------------------------------------------------------------------
# homology with respect to a heart, width, standardness
# ---------------------------------------------------------------------------

def homology_range(heart, x):
    """Extreme degrees (k_min, k_max) of the nonzero H-homologies of x.

    Convention: an object M[a] has its single canonical-heart homology in
    degree a.  k_min is the largest k with x in P[k]; k_max the smallest
    k with x in P^perp[k+1].
    """
    lo, hi = heart.shift_range()
    a = x.shift
    k = a - hi - 1  # x is in P[k] for all k <= a - hi - 1
    assert in_tstructure(heart, x.shifted(-k))
    while in_tstructure(heart, x.shifted(-(k + 1))):
        k += 1
        assert k <= a - lo + 2, "homology scan escaped its window"
    k_min = k
    k = a - lo + 1  # x is in P^perp[k+1] for all k >= a - lo + 1... scan down
    assert in_perp(heart, x.shifted(-(k + 1)))
    while k - 1 >= k_min and in_perp(heart, x.shifted(-k)):
        k -= 1
    k_max = k
    assert k_max >= k_min
    return k_min, k_max


def width(heart, x):
    k_min, k_max = homology_range(heart, x)
    return k_max - k_min


def is_standard(heart):
    """Whether every indecomposable lies in P or P^perp.

    Objects with shifts outside [min simple shift - 1, max simple shift + 1]
    are automatically in P (above) or P^perp (below) by the hereditary
    degree window, so only the finite ambiguity window is scanned.
    """
    q = heart.quiver
    zq = build_zq(q)
    lo, hi = heart.shift_range()
    for s in range(lo - 1, hi + 2):
        for x in zq.objects_with_shift(s):
            if not (in_tstructure(heart, x) or in_perp(heart, x)):
                return False
    return True


# ---------------------------------------------------------------------------
# leftmost objects and L-tilting (standardization)
# ---------------------------------------------------------------------------

def _window_objects(heart, extra=1):
    q = heart.quiver
    zq = build_zq(q)
    lo, hi = heart.shift_range()
    out = []
    for s in range(lo - extra, hi + extra + 1):
        out.extend(zq.objects_with_shift(s))
    return out


def _p_members(heart, objs):
    return {x for x in objs if in_tstructure(heart, x)}


def is_leftmost(heart, s):
    """No predecessor of s other than s itself lies in the t-structure P.

    Membership in P forces shift >= (min simple shift) - 1 here, so the
    predecessor scan is finite.
    """
    if s not in heart.simples:
        raise HeartError(f"{s} is not a simple of {heart}")
    q = heart.quiver
    zq = build_zq(q)
    lo, _hi = heart.shift_range()
    for sh in range(lo - 1, s.shift + 2):
        for x in zq.objects_with_shift(sh):
            if x == s:
                continue
            if zq.is_predecessor(s, x) and in_tstructure(heart, x):
                return False
    return True


def standardize(heart, check_each_step=True):
    """Iterate L-tilts (forward tilts at leftmost simples) until standard.

    Returns (list of tilted simples, standard heart).  Each L-tilt step is
    checked against Ind P^sharp = Ind P - {S} on the ambiguity window.
    """
    steps = []
    current = heart
    guard = 0
    while not is_standard(current):
        guard += 1
        if guard > 500:
            raise AssertionError("standardize failed to terminate")
        leftmost = [s for s in current.simples if is_leftmost(current, s)]
        assert leftmost, "nonstandard heart with no leftmost simple"
        s = leftmost[0]
        new = forward_tilt(current, s)
        if check_each_step:
            objs = set(_window_objects(current)) | set(_window_objects(new))
            before = _p_members(current, objs)
            after = _p_members(new, objs)
            if before - after != {s} or after - before:
                raise AssertionError("L-tilt did not remove exactly {S} from Ind P")
        steps.append(s)
        current = new
    return steps, current
