"""HN strata, torsion pairs from path prefixes, exact stability functions.

A stratum is an ordered tuple <T_l, ..., T_1> of module objects (shift
zero), stored highest-phase first; the corresponding directed path tilts
T_1 first.  Two independent validators are provided: the walk through
the exchange graph and the greedy filtration construction; their
agreement is the content of the strata/paths correspondence.

Central charges are exact: each Z(S_i) is an integer pair (after
clearing denominators), and phases are compared by integer cross
products only.
"""

from __future__ import annotations

import functools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .hearts import forward_tilt, initial_heart
from .quiver import QuiverError, positive_roots, root_index
from .reps import hom_dim, max_add_quotient, quotient_rep, rep_cache, subrep_from_spans
from .zq import IndecObject


class StabilityError(ValueError):
    pass


# ---------------------------------------------------------------------------
# HN strata
# ---------------------------------------------------------------------------

def stratum_from_roots(q, roots_in_order):
    """Build a stratum <T_l, ..., T_1> from dimension vectors (highest first)."""
    return tuple(IndecObject(root_index(q, tuple(r)), 0) for r in roots_in_order)


def stratum_to_json(q, stratum):
    roots = positive_roots(q)
    return json.dumps([{"root": list(roots[t.root]), "shift": 0} for t in stratum])


def stratum_from_json(q, text):
    data = json.loads(text)
    for e in data:
        if e.get("shift", 0) != 0:
            raise StabilityError("stratum entries must be modules (shift 0)")
    return stratum_from_roots(q, [tuple(e["root"]) for e in data])


def validate_stratum_by_path(q, stratum):
    """Walk from H_Q tilting at T_1, ..., T_l; valid iff it lands on H_Q[1]."""
    if any(t.shift != 0 for t in stratum):
        return False
    if len(set(stratum)) != len(stratum):
        return False
    current = initial_heart(q)
    for t in reversed(stratum):  # T_1 first
        if t not in current.simples:
            return False
        current = forward_tilt(current, t)
    return current == initial_heart(q).shifted(1)


def validate_stratum_by_filtration(q, stratum):
    """Greedy HN filtrations: every indecomposable filters along the stratum.

    Checks the one-way Hom-vanishing first, then filters each module by
    repeatedly splitting off the maximal add-quotient at the least
    admissible index (equivalently the latest list position), requiring
    strictly increasing indices and full exhaustion.
    """
    if any(t.shift != 0 for t in stratum):
        return False
    if len(set(stratum)) != len(stratum):
        return False
    cache = rep_cache(q)
    reps = [cache.indec(t.root) for t in stratum]
    l = len(reps)
    for p in range(l):
        for p2 in range(p + 1, l):
            # list position p holds T_{l-p}: larger index never maps forward
            if cache.hom_dim_indec(stratum[p].root, stratum[p2].root):
                return False
    for idx in range(len(cache.roots)):
        m_rep = cache.indec(idx)
        bound = l  # next factor must sit at a strictly earlier position
        while m_rep.total_dim() > 0:
            # the max list position with a hom is the least index: the
            # torsion-quotient step of the greedy filtration
            best = None
            for p in range(bound):
                if hom_dim(m_rep, reps[p]) > 0:
                    best = p
            if best is None:
                return False
            _kdim, mult, kernel = max_add_quotient(m_rep, reps[best])
            if mult == 0:
                return False
            m_rep = kernel
            bound = best
    return True


def torsion_pair_from_prefix(q, stratum, j):
    """(F_j, T_j) as sets of module objects, with the torsion-pair axioms checked.

    F_j is generated by T_1..T_j (the last j list positions), T_j by the
    rest.  Membership is by Hom-vanishing against the generators; the
    axioms (no maps from torsion to free, every indecomposable an
    extension of free by torsion) are verified on the computed sets.
    """
    l = len(stratum)
    if not 0 <= j <= l:
        raise StabilityError(f"prefix index {j} out of range 0..{l}")
    cache = rep_cache(q)
    f_gens = [stratum[p] for p in range(l - j, l)]  # T_1..T_j
    t_gens = [stratum[p] for p in range(0, l - j)]  # T_{j+1}..T_l
    f_set = []
    t_set = []
    for idx in range(len(cache.roots)):
        if all(cache.hom_dim_indec(g.root, idx) == 0 for g in t_gens):
            f_set.append(IndecObject(idx, 0))
        if all(cache.hom_dim_indec(idx, g.root) == 0 for g in f_gens):
            t_set.append(IndecObject(idx, 0))
    # axiom: Hom(T, F) = 0
    for t in t_set:
        for f in f_set:
            if cache.hom_dim_indec(t.root, f.root):
                raise StabilityError("torsion pair axiom Hom(T,F)=0 failed")
    # axiom: each indecomposable is an extension of free by torsion:
    # the trace of the torsion class is a subobject in T with quotient in F
    for idx in range(len(cache.roots)):
        m_rep = cache.indec(idx)
        spans = [[] for _ in q.vertices]
        for t in t_set:
            for f_map in cache.hom_basis_indec(t.root, idx):
                for v in q.vertices:
                    block = f_map[v - 1]
                    tdim = cache.indec(t.root).dim[v - 1]
                    for c in range(tdim):
                        spans[v - 1].append([block[r][c] for r in range(m_rep.dim[v - 1])])
        torsion, _incl = subrep_from_spans(m_rep, spans)
        quotient, _proj = quotient_rep(m_rep, spans)
        for g in f_gens:
            if hom_dim(torsion, cache.indec(g.root)):
                raise StabilityError("torsion part maps to a free generator")
        for g in t_gens:
            if hom_dim(cache.indec(g.root), quotient):
                raise StabilityError("free quotient receives a torsion generator")
    return f_set, t_set


# ---------------------------------------------------------------------------
# stability functions
# ---------------------------------------------------------------------------

def _as_int_pairs(charges):
    """Normalize rational (x, y) pairs to integer pairs by a common scale."""
    fracs = [(Fraction(x), Fraction(y)) for (x, y) in charges]
    den = 1
    for x, y in fracs:
        den = den * x.denominator // gcd(den, x.denominator)
        den = den * y.denominator // gcd(den, y.denominator)
    return tuple((int(x * den), int(y * den)) for x, y in fracs)


@dataclass(frozen=True)
class StabilityFunction:
    """Exact central charge on K(mod kQ): one (x, y) pair per vertex.

    Each Z(S_i) must lie in the half-open upper half-plane (y > 0, or
    y = 0 and x > 0); additivity then keeps every module's charge there.
    """

    quiver: object
    charges: tuple  # integer pairs, one per vertex

    def __post_init__(self):
        object.__setattr__(self, "charges", _as_int_pairs(self.charges))
        for x, y in self.charges:
            if not (y > 0 or (y == 0 and x > 0)):
                raise StabilityError(f"charge ({x},{y}) outside the upper half-plane")

    def z_of(self, alpha):
        x = sum(a * cx for a, (cx, _cy) in zip(alpha, self.charges))
        y = sum(a * cy for a, (_cx, cy) in zip(alpha, self.charges))
        return (x, y)

    def z_of_root(self, idx):
        return self.z_of(positive_roots(self.quiver)[idx])

    def to_json(self):
        return json.dumps(
            {f"S{i+1}": [str(x), str(y)] for i, (x, y) in enumerate(self.charges)}
        )

    @staticmethod
    def from_json(q, text):
        data = json.loads(text)
        charges = []
        for i in range(q.n):
            x, y = data[f"S{i+1}"]
            charges.append((Fraction(x), Fraction(y)))
        return StabilityFunction(q, tuple(charges))


def in_half_plane(z):
    x, y = z
    return y > 0 or (y == 0 and x > 0)


def phase_cmp(z1, z2):
    """-1/0/+1 comparison of phases in [0, pi), by the cross product sign."""
    if not (in_half_plane(z1) and in_half_plane(z2)):
        raise StabilityError("phase comparison outside the upper half-plane")
    cross = z1[0] * z2[1] - z1[1] * z2[0]
    return (cross > 0) - (cross < 0)  # +1 means phase(z1) < phase(z2)


_MONO_TABLES = {}


def mono_table(q):
    """For each root index, the proper indecomposable subobjects (cached)."""
    tbl = _MONO_TABLES.get(q)
    if tbl is None:
        tbl = {}
        _MONO_TABLES[q] = tbl
    return tbl


def _monos_into(q, idx):
    tbl = mono_table(q)
    if idx not in tbl:
        cache = rep_cache(q)
        roots = cache.roots
        target = roots[idx]
        subs = []
        for j, r in enumerate(roots):
            if j == idx or any(a > b for a, b in zip(r, target)):
                continue
            if cache.exists_mono_indec(j, idx):
                subs.append(j)
        tbl[idx] = subs
    return tbl[idx]


def _phase_violators(q, idx, z, include_equal):
    """Comparable-dimension roots whose phase exceeds (or ties) phase(M).

    Only these can violate (semi)stability, so the expensive subobject
    test runs on this short list.
    """
    roots = positive_roots(q)
    target = roots[idx]
    zm = z.z_of_root(idx)
    out = []
    for j, r in enumerate(roots):
        if j == idx or any(a > b for a, b in zip(r, target)):
            continue
        cmp = phase_cmp(z.z_of_root(j), zm)
        if cmp < 0 or (cmp == 0 and include_equal):
            out.append(j)
    return out


def is_semistable(q, m, z):
    """Semistability of an indecomposable module via indecomposable subobjects.

    Sound reduction: the phase of a sum of upper-half-plane vectors never
    exceeds the max summand phase, and summands of subobjects are
    subobjects.  Equal phases are allowed.
    """
    idx = m.root if isinstance(m, IndecObject) else root_index(q, tuple(m))
    for j in _phase_violators(q, idx, z, include_equal=False):
        if j in _monos_into(q, idx):
            return False
    return True


def is_stable(q, m, z):
    """Stability: every proper indecomposable subobject has strictly smaller phase."""
    idx = m.root if isinstance(m, IndecObject) else root_index(q, tuple(m))
    for j in _phase_violators(q, idx, z, include_equal=True):
        if j in _monos_into(q, idx):
            return False
    return True


def stable_indecs(q, z):
    return [idx for idx in range(len(positive_roots(q))) if is_stable(q, IndecObject(idx, 0), z)]


def is_totally_stable(q, z):
    return len(stable_indecs(q, z)) == len(positive_roots(q))


def is_discrete_on_stables(q, z):
    stables = stable_indecs(q, z)
    for a in range(len(stables)):
        for b in range(a + 1, len(stables)):
            if phase_cmp(z.z_of_root(stables[a]), z.z_of_root(stables[b])) == 0:
                return False
    return True


def induced_stratum(q, z, validate=True):
    """Stable indecomposables in decreasing phase order, as an HN stratum.

    Requires Z discrete on stables; the result is verified against both
    stratum validators unless validate=False.
    """
    stables = stable_indecs(q, z)
    for a in range(len(stables)):
        for b in range(a + 1, len(stables)):
            if phase_cmp(z.z_of_root(stables[a]), z.z_of_root(stables[b])) == 0:
                raise StabilityError("stability function is not discrete on stables")

    # decreasing phase: phase_cmp(z_a, z_b) = +1 means phase(a) < phase(b),
    # which must sort a AFTER b
    ordered = sorted(
        stables,
        key=functools.cmp_to_key(
            lambda a, b: phase_cmp(z.z_of_root(a), z.z_of_root(b))
        ),
    )
    stratum = tuple(IndecObject(i, 0) for i in ordered)
    if validate:
        if not validate_stratum_by_path(q, stratum):
            raise AssertionError("induced stratum failed the path validator")
        if not validate_stratum_by_filtration(q, stratum):
            raise AssertionError("induced stratum failed the filtration validator")
    return stratum


def search_inducing(q, target, budget=100000, seed=0, initial=None):
    """Heuristic search for a stability function inducing the given stratum.

    Seeded random restarts plus +/-1 coordinate hill climbing over integer
    charges; any returned witness is verified via induced_stratum.
    Returning None does NOT prove nonexistence.
    """
    n = q.n
    rng = random.Random(seed)
    target = tuple(target)
    target_set = {t.root for t in target}

    def candidate_stratum(z):
        try:
            stables = stable_indecs(q, z)
        except StabilityError:
            return None
        if set(stables) != target_set or not is_discrete_on_stables(q, z):
            return None
        try:
            got = induced_stratum(q, z, validate=False)
        except StabilityError:
            return None
        return got

    def score(z):
        stables = set(stable_indecs(q, z))
        s = -len(stables.symmetric_difference(target_set)) * 10
        # order agreement on the common part
        common = [t.root for t in target if t.root in stables]
        for a in range(len(common)):
            for b in range(a + 1, len(common)):
                c = phase_cmp(z.z_of_root(common[a]), z.z_of_root(common[b]))
                s += 1 if c < 0 else -1  # want phase(common[a]) > phase(common[b])
        return s

    evals = 0

    def make(charges):
        try:
            return StabilityFunction(q, charges)
        except StabilityError:
            return None

    seeds = []
    if initial is not None:
        seeds.append(tuple(initial))
    while evals < budget:
        if seeds:
            charges = seeds.pop(0)
        else:
            charges = tuple(
                (rng.randint(-60, 60), rng.randint(1, 40)) for _ in range(n)
            )
        z = make(charges)
        evals += 1
        if z is None:
            continue
        got = candidate_stratum(z)
        if got == target:
            induced_stratum(q, z)  # full verification
            return z
        best, best_z = score(z), z
        stuck = 0
        while evals < budget and stuck < 2:
            improved = False
            for k in range(n):
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1), (3, 0), (-3, 0)):
                    ch = list(best_z.charges)
                    ch[k] = (ch[k][0] + dx, ch[k][1] + dy)
                    z2 = make(tuple(ch))
                    evals += 1
                    if z2 is None:
                        continue
                    got = candidate_stratum(z2)
                    if got == target:
                        induced_stratum(q, z2)
                        return z2
                    sc = score(z2)
                    if sc > best:
                        best, best_z = sc, z2
                        improved = True
                if evals >= budget:
                    break
            if not improved:
                stuck += 1
    return None


# ---------------------------------------------------------------------------
# the paper-level examples: orientations and totally stable charges
# ---------------------------------------------------------------------------

def an_linear_quiver(q_or_n):
    """A_n with orientation n -> n-1 -> ... -> 1."""
    from .quiver import build_quiver

    n = q_or_n
    return build_quiver(f"A{n}", [(j + 1, j) for j in range(1, n)])


def an_total_charges(n):
    return tuple((-j, 1) for j in range(1, n + 1))


def dn_stability_quiver(n):
    """D_n with n-1 -> 1, n -> 1 and the chain 1 -> 2 -> ... -> n-2."""
    from .quiver import build_quiver

    arrows = [(n - 1, 1), (n, 1)] + [(j, j + 1) for j in range(1, n - 2)]
    return build_quiver(f"D{n}", arrows)


def dn_total_charges(n, t=10):
    charges = [(j, 1) for j in range(1, n - 1)]
    charges += [(0, t), (0, t)]
    return tuple(charges)


def e_stability_quiver(n):
    """The E-type orientations carrying the published totally stable charges.

    All arrows point toward the branch vertex side (vertex 1 for E6/E7,
    vertex 2's side for E8): this is the unique orientation for which the
    published charge tables are totally stable, opposite to the arrows as
    drawn in the source's diagram code.
    """
    from .quiver import build_quiver

    arrows = {
        6: [(6, 4), (4, 1), (3, 1), (2, 1), (5, 2)],
        7: [(3, 2), (2, 1), (4, 1), (5, 1), (6, 5), (7, 6)],
        8: [(4, 1), (4, 2), (5, 2), (6, 2), (6, 3), (8, 3), (8, 7)],
    }[n]
    return build_quiver(f"E{n}", arrows)


# The published E6 table prints Z(S_5) = -99 + 64i, but the accompanying
# AR-quiver picture places S_5 at -99 + 56i, and only the latter value is
# totally stable (for any orientation of the labeled tree).  The corrected
# value is used; the printed one is kept for the documenting sentinel test.
E6_PRINTED_S5 = (-99, 64)
E6_CORRECTED_S5 = (-99, 56)


def e_total_charges(n, as_printed=False):
    tables = {
        6: [(258, 9), (-53, 32), (-150, 36), (-75, 33), E6_CORRECTED_S5, (-101, 10)],
        7: [(165, 10), (-22, 33), (-35, 36), (-63, 37), (-14, 28), (-27, 21), (-39, 24)],
        8: [(47, 16), (135, 9), (93, 11), (-66, 40), (-57, 32), (-92, 57), (42, 25), (-45, 45)],
    }
    charges = list(tables[n])
    if n == 6 and as_printed:
        charges[4] = E6_PRINTED_S5
    return tuple(charges)


def minimal_total_stability_t(n, t_max=64):
    """Smallest integer t making the D_n table totally stable (ascending scan)."""
    q = dn_stability_quiver(n)
    for t in range(1, t_max + 1):
        z = StabilityFunction(q, dn_total_charges(n, t))
        if is_totally_stable(q, z):
            return t
    return None
