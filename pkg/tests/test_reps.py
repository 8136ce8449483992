import pytest

from dynkinhearts.quiver import QuiverError, build_quiver, euler_form, positive_roots
from dynkinhearts.reps import (
    exists_mono,
    ext1_dim,
    extension_middle,
    hom_basis,
    hom_dim,
    indec_rep,
    max_add_quotient,
    quotient_rep,
    rep_cache,
)
from dynkinhearts.zq import IndecObject, build_zq


def test_indec_examples_a2():
    q = build_quiver("A2")
    p1 = indec_rep(q, (1, 1))
    assert p1.mat((1, 2)) == [[1]]
    s1 = indec_rep(q, (1, 0))
    assert s1.dim == (1, 0)
    assert s1.mat((1, 2)) == []  # 0 x 1 matrix
    with pytest.raises(QuiverError):
        indec_rep(q, (2, 1))


def test_indec_end_dim_one_d4():
    q = build_quiver("D4", "2>1,3>1,4>1")
    m1 = indec_rep(q, (2, 1, 1, 1))
    assert hom_dim(m1, m1) == 1


def test_hom_examples():
    q = build_quiver("A2")
    p1, s1, s2 = indec_rep(q, (1, 1)), indec_rep(q, (1, 0)), indec_rep(q, (0, 1))
    assert hom_dim(p1, s1) == 1
    assert hom_dim(s1, s2) == 0
    for m in (p1, s1, s2):
        assert hom_dim(m, m) == 1


def test_ext_examples():
    q = build_quiver("A2")
    s1, s2 = indec_rep(q, (1, 0)), indec_rep(q, (0, 1))
    assert ext1_dim(s1, s2) == 1
    assert ext1_dim(s2, s1) == 0
    for root in positive_roots(q):
        m = indec_rep(q, root)
        assert ext1_dim(m, m) == 0


def test_euler_form_identity_sample():
    for tag, orient in (("A3", None), ("D4", "2>1,3>1,4>1")):
        q = build_quiver(tag, orient)
        roots = positive_roots(q)
        for a in roots:
            for b in roots:
                m, n = indec_rep(q, a), indec_rep(q, b)
                assert hom_dim(m, n) - ext1_dim(m, n) == euler_form(q, a, b)


def test_ar_formula_spot_checks():
    # Ext^1(Y, X) = Hom(X, tau Y) for non-projective Y
    for tag, orient in (("A3", None), ("D4", "2>1,3>1,4>1")):
        q = build_quiver(tag, orient)
        zq = build_zq(q, (-1, 1))
        roots = positive_roots(q)
        for iy, ry in enumerate(roots):
            ty = zq.tau(IndecObject(iy, 0))
            if ty.shift != 0:
                continue  # Y projective: tau leaves the module category
            for ix, rx in enumerate(roots):
                lhs = ext1_dim(indec_rep(q, ry), indec_rep(q, rx))
                rhs = hom_dim(indec_rep(q, rx), indec_rep(q, roots[ty.root]))
                assert lhs == rhs, (ry, rx)


def test_exists_mono_examples():
    q = build_quiver("A2")
    p1, s1, s2 = indec_rep(q, (1, 1)), indec_rep(q, (1, 0)), indec_rep(q, (0, 1))
    assert exists_mono(s2, p1)
    assert not exists_mono(s1, p1)
    assert exists_mono(p1, p1)


def test_exists_mono_implies_dim_dominance():
    q = build_quiver("D4", "2>1,3>1,4>1")
    cache = rep_cache(q)
    roots = positive_roots(q)
    for i in range(len(roots)):
        for j in range(len(roots)):
            if cache.exists_mono_indec(i, j):
                assert all(a <= b for a, b in zip(roots[i], roots[j]))


def _thin_mono_oracle(q, rl, rm):
    sl = {i + 1 for i, x in enumerate(rl) if x}
    sm = {i + 1 for i, x in enumerate(rm) if x}
    if not sl <= sm:
        return False
    for (a, b) in q.arrows:
        if a in sl and b in sm and b not in sl:
            return False
    return True


def test_exists_mono_thin_oracle_d4():
    # independent combinatorial subobject test for multiplicity-free modules
    q = build_quiver("D4", "2>1,3>1,4>1")
    cache = rep_cache(q)
    roots = positive_roots(q)
    for i, ri in enumerate(roots):
        for j, rj in enumerate(roots):
            if i == j or max(ri) > 1 or max(rj) > 1:
                continue
            assert cache.exists_mono_indec(i, j) == _thin_mono_oracle(q, ri, rj)


def test_extension_middle_examples():
    q = build_quiver("A2")
    s1, s2 = indec_rep(q, (1, 0)), indec_rep(q, (0, 1))
    assert extension_middle(s2, s1) == (1, 1)
    q3 = build_quiver("A3")
    assert extension_middle(indec_rep(q3, (0, 0, 1)), indec_rep(q3, (0, 1, 0))) == (0, 1, 1)
    with pytest.raises(QuiverError):
        extension_middle(s1, s2)  # ext^1(S_2, S_1) = 0


def test_extension_middle_explicit_witness():
    # the A_2 middle term admits S_2 as a sub and S_1 as a quotient
    q = build_quiver("A2")
    e = indec_rep(q, extension_middle(indec_rep(q, (0, 1)), indec_rep(q, (1, 0))))
    assert exists_mono(indec_rep(q, (0, 1)), e)
    assert hom_dim(e, indec_rep(q, (1, 0))) == 1
    quot, _ = quotient_rep(e, [[], [[1]]])  # kill the socle S_2
    assert quot.dim == (1, 0)


def test_max_add_quotient_examples():
    q = build_quiver("A2")
    p1, s1, s2 = indec_rep(q, (1, 1)), indec_rep(q, (1, 0)), indec_rep(q, (0, 1))
    kdim, mult, kernel = max_add_quotient(p1, s1)
    assert (kdim, mult) == ((0, 1), 1)
    assert hom_dim(kernel, s2) == 1  # kernel is S_2
    kdim, mult, _ = max_add_quotient(p1, s2)
    assert (kdim, mult) == ((1, 1), 0)
    kdim, mult, _ = max_add_quotient(p1, p1)
    assert (kdim, mult) == ((0, 0), 1)


def test_hom_basis_spans_intertwiners():
    q = build_quiver("A3")
    m = indec_rep(q, (1, 1, 0))
    n = indec_rep(q, (1, 1, 1))
    basis = hom_basis(m, n)
    assert len(basis) == hom_dim(m, n)
    for f in basis:
        for (i, j) in q.arrows:
            na, ma = n.mat((i, j)), m.mat((i, j))
            fi, fj = f[i - 1], f[j - 1]
            lhs = [
                [sum(na[r][k] * fi[k][c] for k in range(len(fi))) for c in range(m.dim[i - 1])]
                for r in range(n.dim[j - 1])
            ]
            rhs = [
                [sum(fj[r][l] * ma[l][c] for l in range(len(ma))) for c in range(m.dim[i - 1])]
                for r in range(n.dim[j - 1])
            ]
            assert lhs == rhs
