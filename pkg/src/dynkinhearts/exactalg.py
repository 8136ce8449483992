"""Exact scalar and matrix arithmetic: Q(v), integer linear algebra, SNF, GF(4).

Everything downstream runs on this module.  Design constraints:

* no floating point anywhere;
* rational functions in v = q^(1/2) are stored as coprime integer
  polynomial pairs (clearing denominators loses nothing over Q);
* hot paths avoid fractions.Fraction, which is slow at the volumes the
  quantum-series code needs, in favor of plain int arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

Rat = Fraction  # exact rational scalars


# ---------------------------------------------------------------------------
# integer polynomials in one variable, as trimmed tuples (index = degree)
# ---------------------------------------------------------------------------

P_ZERO = ()
P_ONE = (1,)


def ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return ptrim(out)


def pneg(a):
    return tuple(-x for x in a)


def psub(a, b):
    return padd(a, pneg(b))


def pscale(a, k):
    if k == 0:
        return P_ZERO
    return tuple(x * k for x in a)


def pshift(a, k):
    """Multiply by v^k (k >= 0)."""
    if not a:
        return a
    return (0,) * k + tuple(a)


def pmul(a, b):
    if not a or not b:
        return P_ZERO
    if len(a) == 1:
        return pscale(b, a[0])
    if len(b) == 1:
        return pscale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return ptrim(out)


def pcontent(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


def pprim(a):
    c = pcontent(a)
    if c in (0, 1):
        return a, max(c, 1)
    return tuple(x // c for x in a), c


@lru_cache(maxsize=1 << 15)
def pdivmod(a, b):
    """Polynomial division over Q, returned exactly when it is integral.

    Returns (quotient, remainder) with fraction-free arithmetic via
    pseudo-division, then rescales; only used where exactness over Z is
    expected (callers assert on the remainder as needed).
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return P_ZERO, a
    # pseudo-division: lc(b)^k * a = q*b + r
    rem = list(a)
    qout = [0] * (len(a) - len(b) + 1)
    lb = b[-1]
    scale = 1
    for k in range(len(a) - len(b), -1, -1):
        lead = rem[k + len(b) - 1]
        if lead == 0:
            continue
        g = gcd(lead, lb)
        mul_rem = lb // g
        coef = lead // g
        if mul_rem != 1:
            rem = [x * mul_rem for x in rem]
            qout = [x * mul_rem for x in qout]
            scale *= mul_rem
        qout[k] = coef
        for i, y in enumerate(b):
            rem[i + k] -= coef * y
    if scale != 1:
        if all(x % scale == 0 for x in qout) and all(x % scale == 0 for x in rem):
            qout = [x // scale for x in qout]
            rem = [x // scale for x in rem]
        else:
            # keep the scaled identity: scale*a = q*b + r; report non-exactness
            return None, ptrim(rem)
    return ptrim(qout), ptrim(rem)


def pdiv_exact(a, b):
    q, r = pdivmod(a, b)
    if q is None or r:
        raise ArithmeticError("polynomial division was not exact")
    return q


@lru_cache(maxsize=1 << 15)
def pgcd(a, b):
    """Primitive gcd in Z[v], positive leading coefficient."""
    a, _ = pprim(a)
    b, _ = pprim(b)
    while b:
        # pseudo-remainder keeps everything integral
        if len(a) < len(b):
            a, b = b, a
            continue
        lb = b[-1]
        rem = list(a)
        for k in range(len(a) - len(b), -1, -1):
            lead = rem[k + len(b) - 1]
            if lead == 0:
                continue
            g = gcd(lead, lb)
            m = lb // g
            if m != 1:
                rem = [x * m for x in rem]
            c = lead * m // lb
            for i, y in enumerate(b):
                rem[i + k] -= c * y
        a, b = b, pprim(ptrim(rem))[0]
    if not a:
        return P_ZERO
    if a[-1] < 0:
        a = pneg(a)
    return a


def peval(a, x):
    """Evaluate at a Fraction (or int) point."""
    acc = x * 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_from_fraction_coeffs(coeffs):
    """Clear denominators: returns (int poly, common denominator)."""
    den = 1
    for c in coeffs:
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    ints = tuple(int(Fraction(c) * den) for c in coeffs)
    return ptrim(ints), den


# ---------------------------------------------------------------------------
# RatFun: the field Q(v)
# ---------------------------------------------------------------------------

class RatFun:
    """A rational function in v over Q, canonical coprime integer-poly pair.

    Canonical form: num/den with den nonzero, leading coefficient of den
    positive, poly gcd(num, den) = 1 and gcd(content num, content den) = 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE, _canonical=False):
        if _canonical:
            self.num = num
            self.den = den
            return
        num = ptrim(num)
        den = ptrim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = P_ZERO, P_ONE
            return
        # monomial denominator fast path: cancel powers of v
        if len([c for c in den if c]) == 1 and den[-1] != 0:
            k = len(den) - 1
            low = 0
            while low < len(num) and num[low] == 0:
                low += 1
            t = min(k, low)
            if t:
                num = num[t:]
                den = den[t:]
        else:
            g = pgcd(num, den)
            if len(g) > 1:
                num = pdiv_exact(num, g)
                den = pdiv_exact(den, g)
        cn = pcontent(num)
        cd = pcontent(den)
        c = gcd(cn, cd)
        if c > 1:
            num = tuple(x // c for x in num)
            den = tuple(x // c for x in den)
        if den[-1] < 0:
            num = pneg(num)
            den = pneg(den)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------
    @staticmethod
    def from_int(k):
        return RatFun((k,)) if k else RF_ZERO

    @staticmethod
    def from_rat(x):
        x = Fraction(x)
        return RatFun((x.numerator,), (x.denominator,))

    @staticmethod
    def v_power(k):
        """v^k for any integer k (negative powers go to the denominator)."""
        if k >= 0:
            return RatFun(pshift(P_ONE, k), P_ONE, _canonical=True)
        return RatFun(P_ONE, pshift(P_ONE, -k), _canonical=True)

    # -- predicates ----------------------------------------------------------
    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == P_ONE and self.den == P_ONE

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return RatFun(padd(self.num, other.num), self.den)
        g = pgcd(self.den, other.den)
        if g == P_ONE:
            num = padd(pmul(self.num, other.den), pmul(other.num, self.den))
            return RatFun(num, pmul(self.den, other.den))
        da = pdiv_exact(self.den, g)
        db = pdiv_exact(other.den, g)
        num = padd(pmul(self.num, db), pmul(other.num, da))
        return RatFun(num, pmul(self.den, db))

    def __neg__(self):
        return RatFun(pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.num or not other.num:
            return RF_ZERO
        # cross-cancel before multiplying to keep degrees low
        n1, d2 = self.num, other.den
        n2, d1 = other.num, self.den
        if d2 != P_ONE:
            g1 = pgcd(n1, d2)
            if len(g1) > 1:
                n1 = pdiv_exact(n1, g1)
                d2 = pdiv_exact(d2, g1)
        if d1 != P_ONE:
            g2 = pgcd(n2, d1)
            if len(g2) > 1:
                n2 = pdiv_exact(n2, g2)
                d1 = pdiv_exact(d1, g2)
        return RatFun(pmul(n1, n2), pmul(d1, d2))

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverting zero rational function")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = pneg(num), pneg(den)
        return RatFun(num, den, _canonical=True)

    def __truediv__(self, other):
        return self * other.inv()

    def mul_v_power(self, k):
        """Fast multiplication by v^k."""
        if k == 0 or not self.num:
            return self
        if k > 0:
            low_d = 0
            while low_d < len(self.den) and self.den[low_d] == 0:
                low_d += 1
            t = min(k, low_d)
            den = self.den[t:] if t else self.den
            num = pshift(self.num, k - t)
            return RatFun(num, den, _canonical=True)
        k = -k
        low_n = 0
        while low_n < len(self.num) and self.num[low_n] == 0:
            low_n += 1
        t = min(k, low_n)
        num = self.num[t:] if t else self.num
        den = pshift(self.den, k - t)
        return RatFun(num, den, _canonical=True)

    # -- comparisons / hashing ------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- evaluation -------------------------------------------------------------
    def eval_at(self, x):
        """Evaluate at a rational point; raises on a pole."""
        x = Fraction(x)
        dv = peval(self.den, x)
        if dv == 0:
            raise ZeroDivisionError(f"evaluation at pole v={x}")
        return Fraction(peval(self.num, x)) / dv

    # -- printing ---------------------------------------------------------------
    def __repr__(self):
        return ratfun_to_str(self)


RF_ZERO = RatFun(P_ZERO, P_ONE, _canonical=True)
RF_ONE = RatFun(P_ONE, P_ONE, _canonical=True)


def _poly_to_str(p):
    if not p:
        return "0"
    parts = []
    for d in range(len(p) - 1, -1, -1):
        c = p[d]
        if not c:
            continue
        if d == 0:
            term = str(abs(c))
        else:
            vpow = "v" if d == 1 else f"v^{d}"
            term = vpow if abs(c) == 1 else f"{abs(c)}*{vpow}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+{term}" if c > 0 else f"-{term}")
    return "".join(parts)


def _needs_parens(s):
    return "+" in s.lstrip("-") or "-" in s.lstrip("-")


def ratfun_to_str(f):
    """Canonical text form, e.g. "v^3/(v^4-2*v^2+1)"; parsed back losslessly."""
    ns = _poly_to_str(f.num)
    if f.den == P_ONE:
        return ns
    ds = _poly_to_str(f.den)
    if _needs_parens(ns):
        ns = f"({ns})"
    if _needs_parens(ds) or "*" in ds:
        ds = f"({ds})"
    return f"{ns}/{ds}"


class _Tok:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        ch = self.peek()
        self.pos += 1
        return ch

    def number(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])


def parse_ratfun(text):
    """Parse "v^3/(v^2-1)^2" style expressions into a canonical RatFun."""
    tk = _Tok(text)

    def parse_expr():
        sign = 1
        while tk.peek() and tk.peek() in "+-":
            if tk.take() == "-":
                sign = -sign
        val = parse_term()
        if sign < 0:
            val = -val
        while tk.peek() and tk.peek() in "+-":
            op = tk.take()
            rhs = parse_term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def parse_term():
        val = parse_factor()
        while True:
            ch = tk.peek()
            if ch == "*":
                tk.take()
                val = val * parse_factor()
            elif ch == "/":
                tk.take()
                val = val / parse_factor()
            else:
                return val

    def parse_factor():
        base = parse_base()
        if tk.peek() == "^":
            tk.take()
            neg = False
            if tk.peek() == "-":
                tk.take()
                neg = True
            e = tk.number()
            out = RF_ONE
            for _ in range(e):
                out = out * base
            if neg:
                out = out.inv()
            return out
        return base

    def parse_base():
        ch = tk.peek()
        if ch == "(":
            tk.take()
            val = parse_expr()
            if tk.take() != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return val
        if ch == "-":
            tk.take()
            return -parse_base()
        if ch == "v":
            tk.take()
            return RatFun.v_power(1)
        if ch.isdigit():
            return RatFun.from_int(tk.number())
        raise ValueError(f"cannot parse rational function {text!r} at {tk.pos}")

    val = parse_expr()
    if tk.peek():
        raise ValueError(f"trailing input in {text!r}")
    return val


# ---------------------------------------------------------------------------
# integer linear algebra
# ---------------------------------------------------------------------------

_MODP = 2147483629  # prime < 2^31, so products fit in int64


def modp_rank(rows, ncols):
    """Rank over GF(p) of a sparse integer matrix; a lower bound on rank over Q.

    Used as a fast screen: nullity_p >= nullity_Q never understates the
    nullspace, so a zero nullity here is an exact certificate over Q.
    """
    if not rows or ncols == 0:
        return 0
    mat = np.zeros((len(rows), ncols), dtype=np.int64)
    for r, row in enumerate(rows):
        for c, val in row.items():
            mat[r, c] = val % _MODP
    rank = 0
    col = 0
    nrows = mat.shape[0]
    while rank < nrows and col < ncols:
        piv = np.nonzero(mat[rank:, col])[0]
        if piv.size == 0:
            col += 1
            continue
        p = rank + int(piv[0])
        if p != rank:
            mat[[rank, p]] = mat[[p, rank]]
        inv = pow(int(mat[rank, col]), _MODP - 2, _MODP)
        mat[rank] = (mat[rank] * inv) % _MODP
        below = mat[rank + 1:, col].copy()
        nz = np.nonzero(below)[0]
        if nz.size:
            mat[rank + 1 + nz] = (
                mat[rank + 1 + nz] - below[nz, None] * mat[rank][None, :]
            ) % _MODP
        rank += 1
        col += 1
    return rank


def sparse_int_rank(rows, ncols):
    """Exact rank over Q of a sparse integer matrix (rows: dicts col -> int)."""
    work = [dict(r) for r in rows if r]
    rank = 0
    while work:
        # pick the shortest row to limit fill-in
        work.sort(key=len)
        row = work.pop(0)
        if not row:
            continue
        rank += 1
        c = min(row, key=lambda k: (abs(row[k]), k))
        pv = row[c]
        nxt = []
        for r in work:
            if c in r:
                a = r[c]
                g = gcd(pv, a)
                m_r, m_p = pv // g, a // g
                new = {}
                for k, vv in r.items():
                    new[k] = vv * m_r
                for k, vv in row.items():
                    new[k] = new.get(k, 0) - vv * m_p
                new = {k: vv for k, vv in new.items() if vv}
                if new:
                    g2 = 0
                    for vv in new.values():
                        g2 = gcd(g2, vv)
                        if g2 == 1:
                            break
                    if g2 > 1:
                        new = {k: vv // g2 for k, vv in new.items()}
                    nxt.append(new)
            elif r:
                nxt.append(r)
        work = nxt
    return rank


def int_nullspace(rows, ncols):
    """Integer basis of the rational nullspace of a sparse integer matrix.

    Basis vectors are primitive but the lattice is not necessarily
    saturated; fine for spanning the solution space over Q.
    """
    # dense fraction-free Gauss-Jordan, tracking pivots
    mat = [[0] * ncols for _ in range(len(rows))]
    for i, r in enumerate(rows):
        for c, val in r.items():
            mat[i][c] = val
    pivots = {}  # col -> row index
    prow = 0
    for col in range(ncols):
        sel = None
        best = None
        for i in range(prow, len(mat)):
            if mat[i][col]:
                a = abs(mat[i][col])
                if best is None or a < best:
                    best, sel = a, i
                    if a == 1:
                        break
        if sel is None:
            continue
        mat[prow], mat[sel] = mat[sel], mat[prow]
        pv = mat[prow][col]
        for i in range(len(mat)):
            if i != prow and mat[i][col]:
                a = mat[i][col]
                g = gcd(pv, a)
                mr, mp = pv // g, a // g
                rowi = mat[i]
                rowp = mat[prow]
                for k in range(col, ncols):
                    rowi[k] = rowi[k] * mr - rowp[k] * mp
                g2 = 0
                for k in range(col, ncols):
                    g2 = gcd(g2, rowi[k])
                    if g2 == 1:
                        break
                if g2 > 1:
                    for k in range(col, ncols):
                        rowi[k] //= g2
        pivots[col] = prow
        prow += 1
        if prow == len(mat):
            break
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for pc, pr in pivots.items():
            # pivot row: mat[pr][pc]*x_pc + ... = 0
            if mat[pr][fc]:
                vec[pc] = Fraction(-mat[pr][fc], mat[pr][pc])
        den = 1
        for x in vec:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in vec]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        basis.append(tuple(ints))
    return basis


def smith_normal_form(matrix):
    """Invariant factors d_1 | d_2 | ... of an integer matrix.

    Returns (factors, U, V) with U*matrix*V = diag(factors) verified;
    U and V are built from elementary unimodular operations.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, k):  # row_i -= k*row_j
        ai, aj = a[i], a[j]
        for c in range(n):
            ai[c] -= k * aj[c]
        ui, uj = u[i], u[j]
        for c in range(m):
            ui[c] -= k * uj[c]

    def col_op(i, j, k):  # col_i -= k*col_j
        for r in range(m):
            a[r][i] -= k * a[r][j]
        for r in range(n):
            v[r][i] -= k * v[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(n):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    size = min(m, n)
    for s in range(size):
        while True:
            # find the minimal nonzero entry in the trailing block
            best = None
            for i in range(s, m):
                for j in range(s, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < abs(best[2])):
                        best = (i, j, x)
            if best is None:
                break
            bi, bj, _ = best
            if bi != s:
                swap_rows(s, bi)
            if bj != s:
                swap_cols(s, bj)
            if a[s][s] < 0:
                negate_row(s)
            pv = a[s][s]
            dirty = False
            for i in range(s + 1, m):
                if a[i][s]:
                    row_op(i, s, a[i][s] // pv)
                    if a[i][s]:
                        dirty = True
            for j in range(s + 1, n):
                if a[s][j]:
                    col_op(j, s, a[s][j] // pv)
                    if a[s][j]:
                        dirty = True
            if dirty:
                continue
            # divisibility sweep
            offender = None
            for i in range(s + 1, m):
                for j in range(s + 1, n):
                    if a[i][j] % pv:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(s, offender, -1)
    factors = [a[i][i] for i in range(size)]
    # verify U*matrix*V == diag
    check = _mat_mul(_mat_mul(u, [list(map(int, row)) for row in matrix]), v)
    for i in range(m):
        for j in range(n):
            want = factors[i] if (i == j and i < size) else 0
            if check[i][j] != want:
                raise AssertionError("SNF transform verification failed")
    return tuple(factors), u, v


def _mat_mul(a, b):
    if not a or not b:
        return []
    rows, inner, cols = len(a), len(b), len(b[0])
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


def int_kernel_lattice(matrix):
    """Saturated integer kernel basis of an integer matrix, via SNF columns."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if m == 0:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    factors, _u, v = smith_normal_form(matrix)
    rank = sum(1 for d in factors if d != 0)
    return [tuple(v[r][c] for r in range(n)) for c in range(rank, n)]


# ---------------------------------------------------------------------------
# multivariate polynomials and generic rank over Q(t_1..t_h)
# ---------------------------------------------------------------------------

def mp_const(c):
    return {(): c} if c else {}


def mp_var(k, h):
    e = tuple(1 if i == k else 0 for i in range(h))
    return {e: 1}


def mp_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def mp_neg(a):
    return {e: -c for e, c in a.items()}


def mp_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def mp_div_exact(a, b):
    """Exact division of multivariate integer polynomials (lex order)."""
    if not b:
        raise ZeroDivisionError
    if not a:
        return {}
    rem = dict(a)
    out = {}
    blead = max(b)
    bc = b[blead]
    while rem:
        alead = max(rem)
        ac = rem[alead]
        e = tuple(x - y for x, y in zip(alead, blead))
        if any(x < 0 for x in e) or ac % bc:
            raise ArithmeticError("multivariate division not exact")
        q = ac // bc
        out[e] = q
        for be, bcf in b.items():
            ee = tuple(x + y for x, y in zip(e, be))
            s = rem.get(ee, 0) - q * bcf
            if s:
                rem[ee] = s
            else:
                rem.pop(ee, None)
    return out


@dataclass
class ParamMatrix:
    """Matrix with entries affine-linear in parameters t_1..t_h over Q.

    entries[r][c] is a dict mapping exponent tuples (length h, total
    degree <= 1 for affine input) to integer coefficients; build via
    `param_matrix` which clears rational denominators row by row.
    """

    nrows: int
    ncols: int
    h: int
    entries: list


def param_matrix(rows, h):
    """Rows of affine entries; each entry is (const, {param_index: coeff})."""
    ents = []
    for row in rows:
        out_row = []
        den = 1
        parsed = []
        for ent in row:
            if isinstance(ent, dict):
                const, lin = ent.get("const", 0), ent.get("lin", {})
            elif isinstance(ent, tuple):
                const, lin = ent
            else:
                const, lin = ent, {}
            const = Fraction(const)
            lin = {k: Fraction(c) for k, c in lin.items()}
            parsed.append((const, lin))
            for c in [const] + list(lin.values()):
                den = den * c.denominator // gcd(den, c.denominator)
        for const, lin in parsed:
            poly = {}
            cc = int(const * den)
            if cc:
                poly[(0,) * h] = cc
            for k, c in lin.items():
                ci = int(c * den)
                if ci:
                    poly[tuple(1 if i == k else 0 for i in range(h))] = ci
            out_row.append(poly)
        ents.append(out_row)
    return ParamMatrix(len(ents), len(ents[0]) if ents else 0, h, ents)


def generic_rank(pm):
    """Rank over the fraction field Q(t_1..t_h): deterministic Bareiss elimination.

    Equals the maximum rank attained by any specialization of the
    parameters (the rank drops only on the zero locus of some minor).
    """
    a = [[dict(e) for e in row] for row in pm.entries]
    m, n = pm.nrows, pm.ncols
    rank = 0
    prev = mp_const(1)
    rowperm = list(range(m))
    for _step in range(min(m, n)):
        piv = None
        for i in range(rank, m):
            for j in range(rank, n):
                if a[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        pi, pj = piv
        if pi != rank:
            a[rank], a[pi] = a[pi], a[rank]
            rowperm[rank], rowperm[pi] = rowperm[pi], rowperm[rank]
        if pj != rank:
            for row in a:
                row[rank], row[pj] = row[pj], row[rank]
        pivot = a[rank][rank]
        for i in range(rank + 1, m):
            for j in range(rank + 1, n):
                num = mp_add(
                    mp_mul(pivot, a[i][j]), mp_neg(mp_mul(a[i][rank], a[rank][j]))
                )
                a[i][j] = mp_div_exact(num, prev) if prev != mp_const(1) else num
            a[i][rank] = {}
        prev = pivot
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# GF(4)
# ---------------------------------------------------------------------------

# elements 0, 1, w, w+1 encoded 0..3; addition is xor, multiplication by table
GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)
GF4_INV = (None, 1, 3, 2)


class GF4:
    """The field with four elements, table-driven."""

    __slots__ = ("value",)

    def __init__(self, value):
        if value not in (0, 1, 2, 3):
            raise ValueError(f"not a GF(4) element code: {value!r}")
        self.value = value

    def __add__(self, other):
        return GF4(self.value ^ other.value)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        return GF4(GF4_MUL[self.value][other.value])

    def inv(self):
        if self.value == 0:
            raise ZeroDivisionError("inverting 0 in GF(4)")
        return GF4(GF4_INV[self.value])

    def __eq__(self, other):
        return isinstance(other, GF4) and self.value == other.value

    def __hash__(self):
        return hash(("GF4", self.value))

    def __repr__(self):
        return ["0", "1", "w", "w+1"][self.value]
