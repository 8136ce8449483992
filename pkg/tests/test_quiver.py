import pytest
from hypothesis import given, settings, strategies as st

from dynkinhearts.quiver import (
    Quiver,
    QuiverError,
    build_quiver,
    coxeter_number,
    euler_form,
    positive_roots,
)


def test_a2_default_orientation():
    q = build_quiver("A2")
    assert q.arrows == ((1, 2),)


def test_d4_counterexample_orientation():
    q = build_quiver("D4", "2>1,3>1,4>1")
    assert set(q.arrows) == {(2, 1), (3, 1), (4, 1)}
    assert q.is_sink(1)


def test_duplicate_edge_direction_rejected():
    with pytest.raises(QuiverError):
        build_quiver("A2", [(1, 2), (2, 1)])


def test_wrong_shape_rejected():
    # path on 4 vertices is not D4
    with pytest.raises(QuiverError):
        build_quiver("D4", [(1, 2), (2, 3), (3, 4)])
    with pytest.raises(QuiverError):
        build_quiver("B3")
    with pytest.raises(QuiverError):
        build_quiver("E9")


def test_euler_form_examples():
    q = build_quiver("A2")
    assert euler_form(q, (1, 0), (0, 1)) == -1
    assert euler_form(q, (0, 1), (1, 0)) == 0
    assert euler_form(q, (1, 1), (1, 1)) == 1
    with pytest.raises(QuiverError):
        euler_form(q, (1, 0, 0), (0, 1))


def _roots_by_tits_form(q, max_entry):
    """Independent oracle: positive alpha with <alpha, alpha> = 1."""
    n = q.n
    found = []

    def rec(prefix):
        if len(prefix) == n:
            if any(prefix) and euler_form(q, prefix, prefix) == 1:
                found.append(tuple(prefix))
            return
        for v in range(max_entry + 1):
            rec(prefix + [v])

    rec([])
    return sorted(found, key=lambda a: (sum(a), a))


@pytest.mark.parametrize(
    "tag,orient,count,max_entry",
    [("A2", None, 3, 1), ("A3", None, 6, 1), ("D4", "2>1,3>1,4>1", 12, 2)],
)
def test_positive_roots_against_tits_oracle(tag, orient, count, max_entry):
    q = build_quiver(tag, orient)
    roots = positive_roots(q)
    assert len(roots) == count
    assert roots == _roots_by_tits_form(q, max_entry)


def test_root_counts_all_types():
    expected = {"A2": 3, "A3": 6, "D4": 12, "E6": 36, "E7": 63, "E8": 120}
    for tag, count in expected.items():
        q = build_quiver(tag)
        assert len(positive_roots(q)) == count


def test_coxeter_numbers():
    assert coxeter_number(build_quiver("A2")) == 3
    assert coxeter_number(build_quiver("D4")) == 6
    assert coxeter_number(build_quiver("E6")) == 12
    assert coxeter_number(build_quiver("E7")) == 18
    assert coxeter_number(build_quiver("E8")) == 30
    # cross-check #roots = n h / 2
    for tag in ("A5", "D5", "E6", "E7", "E8"):
        q = build_quiver(tag)
        assert 2 * len(positive_roots(q)) == q.n * coxeter_number(q)


def test_roots_pairwise_positive_definite():
    # <a-b, a-b> >= 1 for distinct roots (positive definiteness on the lattice)
    for tag in ("A3", "D4"):
        q = build_quiver(tag)
        roots = positive_roots(q)
        for i, a in enumerate(roots):
            for b in roots[i + 1:]:
                d = tuple(x - y for x, y in zip(a, b))
                assert euler_form(q, d, d) >= 1


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=8, max_size=8))
def test_euler_bilinearity(vals):
    q = build_quiver("D4")
    a = tuple(vals[0:4])
    ap = tuple(vals[4:8])
    b = (1, 2, 0, 1)
    lhs = euler_form(q, tuple(x + y for x, y in zip(a, ap)), b)
    assert lhs == euler_form(q, a, b) + euler_form(q, ap, b)
    rhs = euler_form(q, b, tuple(x + y for x, y in zip(a, ap)))
    assert rhs == euler_form(q, b, a) + euler_form(q, b, ap)


def test_json_round_trip():
    q = build_quiver("D4", "2>1,3>1,4>1")
    text = q.to_json()
    assert '"type": "D4"' in text
    q2 = Quiver.from_json(text)
    assert q2 == q
