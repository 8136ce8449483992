"""Truncated quantum affine space over Q(v) and DT-type invariants.

Sign convention (fixed once, guarded by the flipped-pentagon sentinel):

    y^a y^b = v^(<a,b> - <b,a>) y^(a+b)

with v = q^(1/2).  The quantum dilogarithm is

    E(X) = sum_j v^(j^2) X^j / prod_{k<j} (v^(2j) - v^(2k)),

whose j-th coefficient simplifies to v^j / prod_{m<=j} (v^(2m) - 1).
Products over paths put the factor of the LAST tilt leftmost, so a
directed path tilting T_1, ..., T_l contributes E(y^{T_l}) ... E(y^{T_1}).
Series are truncated by total exponent degree.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import (
    P_ONE,
    RF_ONE,
    RF_ZERO,
    RatFun,
    pmul,
    pshift,
    ratfun_to_str,
)
from .exchange import directed_paths, enumerate_interval, path_labels
from .hearts import forward_tilt, heart_leq, initial_heart, tilt_image
from .quiver import QuiverError, euler_form, positive_roots
from .zq import IndecObject, build_zq


class QSeriesError(ValueError):
    pass


@dataclass
class QuantumContext:
    """The truncated quantum affine space of a quiver at degree D."""

    quiver: object
    degree: int
    flip: bool = False  # negate the commutation exponent (sentinel only)
    _lam: dict = field(default_factory=dict)

    def lam(self, a, b):
        key = (a, b)
        val = self._lam.get(key)
        if val is None:
            val = euler_form(self.quiver, a, b) - euler_form(self.quiver, b, a)
            if self.flip:
                val = -val
            self._lam[key] = val
        return val


def monomial_mul(ctx, a, b):
    """(power of v, combined exponent) for y^a . y^b."""
    return ctx.lam(a, b), tuple(x + y for x, y in zip(a, b))


@dataclass
class QSeries:
    """Sparse truncated series: exponent tuple in N^n -> RatFun coefficient."""

    ctx: QuantumContext
    terms: dict

    def coeff(self, alpha):
        return self.terms.get(tuple(alpha), RF_ZERO)

    def is_one(self):
        return list(self.terms.items()) == [(self._zero_exp(), RF_ONE)]

    def _zero_exp(self):
        return (0,) * self.ctx.quiver.n

    def __eq__(self, other):
        return self.ctx.degree == other.ctx.degree and self.terms == other.terms

    def __mul__(self, other):
        ctx = self.ctx
        d = ctx.degree
        out = {}
        for a, ca in self.terms.items():
            da = sum(a)
            for b, cb in other.terms.items():
                if da + sum(b) > d:
                    continue
                k, e = monomial_mul(ctx, a, b)
                val = (ca * cb).mul_v_power(k)
                prev = out.get(e)
                tot = val if prev is None else prev + val
                if tot.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = tot
        return QSeries(ctx, out)

    def inverse(self):
        """Two-sided inverse of a series with constant term 1 (degreewise)."""
        ctx = self.ctx
        zero = self._zero_exp()
        if self.terms.get(zero) != RF_ONE:
            raise QSeriesError("series inverse needs constant term 1")
        inv = {zero: RF_ONE}
        by_degree = {}
        for a, c in self.terms.items():
            if a != zero:
                by_degree.setdefault(sum(a), []).append((a, c))
        for deg in range(1, ctx.degree + 1):
            for gamma in _exponents_of_degree(ctx.quiver.n, deg):
                acc = RF_ZERO
                for d_a in range(1, deg + 1):
                    for a, ca in by_degree.get(d_a, ()):
                        b = tuple(g - x for g, x in zip(gamma, a))
                        if any(x < 0 for x in b):
                            continue
                        cb = inv.get(b)
                        if cb is None:
                            continue
                        k = ctx.lam(a, b)
                        acc = acc + (ca * cb).mul_v_power(k)
                if not acc.is_zero():
                    inv[gamma] = -acc
        out = QSeries(ctx, inv)
        check = self * out
        if not check.is_one():
            raise AssertionError("right inverse failed")
        check = out * self
        if not check.is_one():
            raise AssertionError("left inverse is not two-sided")
        return out

    def to_json(self):
        items = sorted(self.terms.items())
        return json.dumps(
            [{"alpha": list(a), "coeff": ratfun_to_str(c)} for a, c in items]
        )

    def __repr__(self):
        parts = [f"{ratfun_to_str(c)}*y^{a}" for a, c in sorted(self.terms.items())]
        return " + ".join(parts) if parts else "0"


def _exponents_of_degree(n, deg):
    if n == 1:
        yield (deg,)
        return
    for first in range(deg + 1):
        for rest in _exponents_of_degree(n - 1, deg - first):
            yield (first,) + rest


def qs_one(ctx):
    return QSeries(ctx, {(0,) * ctx.quiver.n: RF_ONE})


_ECOEFF_CACHE = {}


def dilog_coeff(j):
    """c_j = v^j / prod_{m=1..j} (v^{2m} - 1), the E-series coefficient."""
    val = _ECOEFF_CACHE.get(j)
    if val is None:
        den = P_ONE
        for m in range(1, j + 1):
            factor = [0] * (2 * m + 1)
            factor[0] = -1
            factor[2 * m] = 1
            den = pmul(den, tuple(factor))
        val = RatFun(pshift(P_ONE, j), den)
        _ECOEFF_CACHE[j] = val
    return val


def qexp(ctx, alpha):
    """E(y^alpha) truncated at the context degree."""
    alpha = tuple(alpha)
    if all(x == 0 for x in alpha) or any(x < 0 for x in alpha):
        raise QSeriesError("quantum dilogarithm needs a nonzero class in N^n")
    size = sum(alpha)
    terms = {}
    for j in range(0, ctx.degree // size + 1):
        terms[tuple(j * x for x in alpha)] = dilog_coeff(j)
    return QSeries(ctx, terms)


def qseries_inverse(s):
    return s.inverse()


# ---------------------------------------------------------------------------
# DT products over paths
# ---------------------------------------------------------------------------

class _FactorCache:
    def __init__(self, ctx):
        self.ctx = ctx
        self.plus = {}
        self.minus = {}

    def factor(self, root_vec, sign):
        key = tuple(root_vec)
        store = self.plus if sign > 0 else self.minus
        val = store.get(key)
        if val is None:
            if sign > 0:
                val = qexp(self.ctx, key)
            else:
                val = self.factor(key, +1).inverse()
            store[key] = val
        return val


def dt_path(q, edges, degree, ctx=None, cache=None):
    """Ordered E-product over a (possibly signed) path.

    edges: iterable of (IndecObject label, +1/-1) in traversal order.
    Labels must be modules (shift 0); the factor of the last edge ends up
    leftmost.
    """
    ctx = ctx or QuantumContext(q, degree)
    cache = cache or _FactorCache(ctx)
    roots = positive_roots(q)
    acc = qs_one(ctx)
    for lab, sign in edges:
        if lab.shift != 0:
            raise QSeriesError(f"path label {lab} is not a module")
        acc = cache.factor(roots[lab.root], sign) * acc
    return acc


def _interval_graph(q):
    return enumerate_interval(q, initial_heart(q), 1)


def _lex_path(g, h1, h2):
    """The lexicographically least directed path h1 -> h2 (greedy on labels)."""
    paths = directed_paths(g, h1, h2, "all")
    if not paths:
        raise QSeriesError("no directed path between the given hearts")
    labeled = sorted((tuple(path_labels(g, p)), p) for p in paths)
    return labeled[0][1]


def dt_between(q, h1, h2, degree, graph=None):
    """DT(Q; h1, h2) computed along the lex-least directed path."""
    g = graph or _interval_graph(q)
    if h1 == h2:
        return qs_one(QuantumContext(q, degree))
    path = _lex_path(g, h1, h2)
    return dt_path(q, [(lab, +1) for lab in path_labels(g, path)], degree)


def dt_invariant(q, degree):
    """DT(Q) = DT(Q; H_Q, H_Q[1])."""
    g = _interval_graph(q)
    h = initial_heart(q)
    return dt_between(q, h, h.shifted(1), degree, graph=g)


def verify_path_independence(q, degree, policy="all", sample=None, seed=None):
    """Compare the E-product over directed (and sampled signed) paths.

    Returns a report dict; report["equal"] must be True.  Directed paths
    are enumerated with shared-prefix products; signed paths are sampled
    random walks in the interval (no immediate backtracking).
    """
    ctx = QuantumContext(q, degree)
    cache = _FactorCache(ctx)
    g = _interval_graph(q)
    h = initial_heart(q)
    target = h.shifted(1)
    roots = positive_roots(q)
    u, v = g.vertex(h), g.vertex(target)

    if policy == "all":
        paths = directed_paths(g, h, target, "all")
    elif policy == "longest":
        paths = directed_paths(g, h, target, "longest")
    elif policy == "sample":
        if sample is None or seed is None:
            raise QSeriesError("sampling policy needs sample and seed")
        paths = directed_paths(g, h, target, "sample", sample=sample, seed=seed)
    else:
        raise QSeriesError(f"unknown policy {policy!r}")

    reference = None
    bad = None
    # shared-prefix evaluation: paths arrive sorted, so a stack of partial
    # products is reused across common prefixes
    stack = []  # (edge_idx, series)
    count = 0
    for path in sorted(paths):
        common = 0
        while common < len(stack) and common < len(path) and stack[common][0] == path[common]:
            common += 1
        del stack[common:]
        for e in path[common:]:
            lab = g.edges[e][2]
            base = stack[-1][1] if stack else qs_one(ctx)
            stack.append((e, cache.factor(roots[lab.root], +1) * base))
        series = stack[-1][1] if stack else qs_one(ctx)
        count += 1
        if reference is None:
            reference = series
            ref_path = path
        elif series != reference and bad is None:
            bad = (ref_path, path)
    report = {
        "quiver": q.type_tag,
        "degree": degree,
        "directed_paths": count,
        "signed_paths": 0,
        "equal": bad is None,
    }
    if bad:
        report["offending"] = [
            [str(lab) for lab in path_labels(g, bad[0])],
            [str(lab) for lab in path_labels(g, bad[1])],
        ]
        return report
    if policy == "sample" or sample:
        rng = random.Random(seed if seed is not None else 0)
        max_len = 4 * len(g.hearts)
        walks_done = 0
        attempts = 0
        nsample = sample or 0
        while walks_done < nsample and attempts < 50 * max(nsample, 1):
            attempts += 1
            walk = []
            x = u
            prev_edge = None
            for _step in range(max_len):
                if x == v and walk:
                    break
                options = [(e, +1) for e in g.out_edges[x]]
                options += [(e, -1) for e in g.in_edges[x]]
                if prev_edge is not None:
                    options = [o for o in options if o[0] != prev_edge] or options
                e, sgn = options[rng.randrange(len(options))]
                walk.append((e, sgn))
                x = g.edges[e][1] if sgn > 0 else g.edges[e][0]
                prev_edge = e
            if x != v or not walk:
                continue
            walks_done += 1
            edges = [(g.edges[e][2], sgn) for (e, sgn) in walk]
            series = dt_path(q, edges, degree, ctx=ctx, cache=cache)
            if series != reference and bad is None:
                bad = ("reference", [f"{'+' if s > 0 else '-'}{e}" for e, s in walk])
        report["signed_paths"] = walks_done
        report["equal"] = bad is None
        if bad:
            report["offending"] = [str(bad[0]), str(bad[1])]
    report["series"] = json.loads(reference.to_json()) if reference else []
    return report


# ---------------------------------------------------------------------------
# pentagon / square / Ind-vs-Sim identities
# ---------------------------------------------------------------------------

def pentagon_check(degree, flipped=False):
    """E(X)E(Y) = E(Y)E(q^{-1/2}XY)E(X) for XY = qYX, to the given degree.

    With flipped=True the commutation sign is negated while the middle
    factor stays y^(1,1); this is the sign-convention sentinel and must
    FAIL at degree >= 2.
    """
    from .quiver import build_quiver

    q = build_quiver("A2")
    ctx = QuantumContext(q, degree, flip=flipped)
    x = (0, 1)  # y^{S_2}
    y = (1, 0)  # y^{S_1}
    if not flipped:
        k, mid = monomial_mul(ctx, x, y)
        assert k == 1 and mid == (1, 1)  # XY = q^(1/2) y^(1,1): middle is y^(1,1)
    lhs = qexp(ctx, x) * qexp(ctx, y)
    rhs = qexp(ctx, y) * qexp(ctx, (1, 1)) * qexp(ctx, x)
    return lhs == rhs


def square_check(degree):
    """Commuting variables give commuting dilogarithms."""
    from .quiver import build_quiver

    q = build_quiver("A3")
    ctx = QuantumContext(q, degree)
    x = (1, 0, 0)
    y = (0, 0, 1)
    assert ctx.lam(x, y) == 0
    return qexp(ctx, x) * qexp(ctx, y) == qexp(ctx, y) * qexp(ctx, x)


def ls_identity_check(q, degree):
    """prod over Ind H (decreasing pf) E(y^M) = prod over Sim H (increasing pf).

    Position-function ties commute (their commutation exponent vanishes),
    which is asserted before ordering arbitrarily.
    """
    ctx = QuantumContext(q, degree)
    cache = _FactorCache(ctx)
    zq = build_zq(q)
    roots = positive_roots(q)
    indecs = [IndecObject(i, 0) for i in range(len(roots))]
    simples = initial_heart(q).simples

    def sorted_by_pf(objs):
        vals = [(zq.pf(x), x) for x in objs]
        for a in range(len(vals)):
            for b in range(a + 1, len(vals)):
                if vals[a][0] == vals[b][0]:
                    assert (
                        ctx.lam(roots[vals[a][1].root], roots[vals[b][1].root]) == 0
                    ), "position-function tie does not commute"
        return [x for _pf, x in sorted(vals)]

    lhs = qs_one(ctx)  # decreasing pf left-to-right: multiply ascending on the left
    for x in sorted_by_pf(indecs):
        lhs = cache.factor(roots[x.root], +1) * lhs
    rhs = qs_one(ctx)  # increasing pf left-to-right
    for x in reversed(sorted_by_pf(list(simples))):
        rhs = cache.factor(roots[x.root], +1) * rhs
    return lhs == rhs


# ---------------------------------------------------------------------------
# wall crossing for APR tilts, restricted to the shared region
# ---------------------------------------------------------------------------

def _kclass_matrix_solve(q, columns):
    """Invert the integer matrix with the given columns (det +-1)."""
    n = len(columns)
    aug = [[Fraction(columns[c][r]) for c in range(n)] + [Fraction(0)] * n for r in range(n)]
    for r in range(n):
        aug[r][n + r] = Fraction(1)
    # Gauss-Jordan
    row = 0
    for col in range(n):
        sel = None
        for i in range(row, n):
            if aug[i][col] != 0:
                sel = i
                break
        if sel is None:
            raise AssertionError("K-class base change is singular")
        aug[row], aug[sel] = aug[sel], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        row += 1
    inv = [[aug[r][n + c] for c in range(n)] for r in range(n)]
    for r in range(n):
        for c in range(n):
            if inv[r][c].denominator != 1:
                raise AssertionError("K-class base change is not unimodular")
    return [[int(x) for x in row] for row in inv]


def wall_crossing_check(q, sink, degree):
    """Restricted wall-crossing: DT(Q;.,.) vs the dictionary image of DT(Q';.,.).

    Q' reverses the arrows at a sink i.  On the shared region
    EG(Q; H_{Q'}, H_Q[1]) all edge labels are modules over both path
    algebras; the dictionary z^{T_i} = (y^{S_i})^{-1}, z^{S_j} = y^{S_j}
    acts on exponents by the K-theory base change, which is checked to be
    an isometry of the commutation forms on the occurring classes.
    """
    if not q.is_sink(sink):
        raise QuiverError(f"vertex {sink} is not a sink of {q.type_tag}")
    qp = q.reverse_at(sink)
    roots = positive_roots(q)
    roots_p = positive_roots(qp)
    h0 = initial_heart(q)
    s_i = None
    for s in h0.simples:
        if roots[s.root] == tuple(1 if v == sink else 0 for v in q.vertices):
            s_i = s
    h_qp = forward_tilt(h0, s_i)
    # per-vertex new simples T_j; the K-theory base change e'_j -> [T_j]
    t_by_vertex = {}
    for j in q.vertices:
        e_j = tuple(1 if v == j else 0 for v in q.vertices)
        s_j = IndecObject(roots.index(e_j), 0)
        t_by_vertex[j] = tilt_image(h0, s_i, s_j)
    from .zq import obj_kclass

    phi_cols = [list(obj_kclass(q, t_by_vertex[j])) for j in q.vertices]
    phi = [[phi_cols[c][r] for c in range(q.n)] for r in range(q.n)]
    phi_inv = _kclass_matrix_solve(q, phi_cols)

    def to_prime(vec):  # dim' of a class given in the S-basis
        return tuple(sum(phi_inv[r][c] * vec[c] for c in range(q.n)) for r in range(q.n))

    def from_prime(vec):  # back to the S-basis
        return tuple(sum(phi[r][c] * vec[c] for c in range(q.n)) for r in range(q.n))

    # The base change does not preserve total degree, so the Q' side is
    # computed at an elevated truncation: every class with |alpha| <= D
    # has |alpha'| <= D * max column 1-norm of phi^{-1}.
    blowup = max(
        sum(abs(phi_inv[r][c]) for r in range(q.n)) for c in range(q.n)
    )
    ctx = QuantumContext(q, degree)
    ctx_p = QuantumContext(qp, max(degree, degree * blowup))
    for a in range(q.n):
        for b in range(q.n):
            ea = tuple(1 if k == a else 0 for k in range(q.n))
            eb = tuple(1 if k == b else 0 for k in range(q.n))
            if ctx_p.lam(ea, eb) != ctx.lam(from_prime(ea), from_prime(eb)):
                raise AssertionError("dictionary is not an isometry of lambda forms")

    g = _interval_graph(q)
    region = [h for h in g.hearts if heart_leq(h_qp, h)]
    region_keys = {h.key() for h in region}
    # directed-path tree from H_{Q'} inside the region, with products on both sides
    cache = _FactorCache(ctx)
    cache_p = _FactorCache(ctx_p)
    prod_q = {h_qp.key(): qs_one(ctx)}
    prod_p = {h_qp.key(): qs_one(ctx_p)}
    frontier = [h_qp]
    while frontier:
        nxt = []
        for h in frontier:
            for s in h.simples:
                h2 = forward_tilt(h, s)
                if h2.key() not in region_keys or h2.key() in prod_q:
                    continue
                if s.shift != 0:
                    raise AssertionError("shared-region label is not a module")
                root_vec = roots[s.root]
                prime_vec = to_prime(root_vec)
                if any(x < 0 for x in prime_vec) or tuple(prime_vec) not in roots_p:
                    raise AssertionError("shared-region label is not a Q' module")
                prod_q[h2.key()] = cache.factor(root_vec, +1) * prod_q[h.key()]
                prod_p[h2.key()] = cache_p.factor(prime_vec, +1) * prod_p[h.key()]
                nxt.append(h2)
        frontier = nxt
    if len(prod_q) != len(region):
        raise AssertionError("shared region is not reachable from the APR heart")

    pairs = 0
    for h1 in region:
        for h2 in region:
            if h1 == h2 or not heart_leq(h1, h2):
                continue
            dt_q = prod_q[h2.key()] * prod_q[h1.key()].inverse()
            dt_p = prod_p[h2.key()] * prod_p[h1.key()].inverse()
            mapped = {}
            for a, c in dt_p.terms.items():
                image = from_prime(a)
                if any(x < 0 for x in image):
                    raise AssertionError("dictionary image leaves the positive cone")
                if sum(image) <= degree:
                    mapped[image] = c
            if mapped != dt_q.terms:
                return {
                    "quiver": q.type_tag,
                    "sink": sink,
                    "degree": degree,
                    "pairs": pairs,
                    "equal": False,
                    "offending": [h1.label(), h2.label()],
                }
            pairs += 1
    return {
        "quiver": q.type_tag,
        "sink": sink,
        "degree": degree,
        "region_size": len(region),
        "pairs": pairs,
        "equal": True,
    }
