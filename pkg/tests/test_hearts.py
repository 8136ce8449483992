import pytest

from dynkinhearts.hearts import (
    Heart,
    HeartError,
    backward_tilt,
    forward_tilt,
    heart_leq,
    homology_range,
    in_perp,
    in_tstructure,
    initial_heart,
    is_leftmost,
    is_standard,
    make_heart,
    standardize,
    width,
)
from dynkinhearts.quiver import build_quiver, positive_roots
from dynkinhearts.zq import IndecObject, hom_total


def _a2():
    q = build_quiver("A2")
    roots = positive_roots(q)
    idx = {r: i for i, r in enumerate(roots)}
    s1 = IndecObject(idx[(1, 0)], 0)
    s2 = IndecObject(idx[(0, 1)], 0)
    p1 = IndecObject(idx[(1, 1)], 0)
    return q, s1, s2, p1


def test_initial_heart():
    q, s1, s2, _p1 = _a2()
    h = initial_heart(q)
    assert set(h.simples) == {s1, s2}
    q4 = build_quiver("D4", "2>1,3>1,4>1")
    h4 = initial_heart(q4)
    assert all(s.shift == 0 for s in h4.simples)
    assert len(h4.simples) == 4


def test_forward_tilt_examples():
    q, s1, s2, p1 = _a2()
    h = initial_heart(q)
    assert set(forward_tilt(h, s2).simples) == {p1, s2.shifted(1)}
    assert set(forward_tilt(h, s1).simples) == {s1.shifted(1), s2}
    with pytest.raises(HeartError):
        forward_tilt(h, p1)


def test_tilt_round_trip_on_a3_interval():
    q = build_quiver("A3")
    h = initial_heart(q)
    seen = {h.key()}
    frontier = [h]
    top = h.shifted(1)
    while frontier:
        nxt = []
        for cur in frontier:
            for s in cur.simples:
                new = forward_tilt(cur, s)
                assert backward_tilt(new, s.shifted(1)) == cur
                if heart_leq(h, new) and heart_leq(new, top) and new.key() not in seen:
                    seen.add(new.key())
                    nxt.append(new)
        frontier = nxt
    assert len(seen) == 14


def test_in_tstructure_examples():
    q, s1, s2, p1 = _a2()
    h = initial_heart(q)
    for x in (s1, s2, p1):
        assert in_tstructure(h, x)
        assert not in_tstructure(h, x.shifted(-1))
        assert in_perp(h, x.shifted(-1))
    h2 = forward_tilt(h, s2)
    assert in_tstructure(h2, s2.shifted(1))


def test_heart_leq_chain():
    q, s1, s2, _p1 = _a2()
    h = initial_heart(q)
    h2 = forward_tilt(h, s2)
    assert heart_leq(h, h.shifted(1))
    assert not heart_leq(h.shifted(1), h)
    assert heart_leq(h, h2) and heart_leq(h2, h.shifted(1))


def test_tilt_line_pairwise_distinct():
    # iterating tilts at S, S[1], ... gives pairwise distinct hearts
    q, s1, _s2, _p1 = _a2()
    h = initial_heart(q)
    seen = {h.key()}
    cur, s = h, s1
    for _ in range(6):
        cur = forward_tilt(cur, s)
        s = s.shifted(1)
        assert cur.key() not in seen
        seen.add(cur.key())


def test_width_and_standardness():
    q, s1, s2, p1 = _a2()
    h = initial_heart(q)
    assert is_standard(h)
    assert is_standard(h.shifted(7))
    apr = forward_tilt(h, s2)  # {P_1, S_2[1]}: the APR heart, standard
    assert is_standard(apr)
    assert width(apr, s1) == 0  # S_1 is the extension of S_2[1] on top of P_1
    other = forward_tilt(h, s1)  # {S_1[1], S_2}: not standard
    assert not is_standard(other)
    assert width(other, p1) == 1
    assert width(other, p1.shifted(5)) == width(other, p1)
    for x in (s1, s2, p1):
        assert width(h, x.shifted(3)) == 0
        assert homology_range(h, x.shifted(3)) == (3, 3)


def test_hom_bound_on_heart_simples():
    # lem:lem total hom bound, on every heart of the A_2 pentagon
    q, s1, s2, _p1 = _a2()
    h = initial_heart(q)
    hearts = [h, forward_tilt(h, s1), forward_tilt(h, s2)]
    hearts.append(forward_tilt(hearts[2], hearts[2].simples[1]))
    hearts.append(h.shifted(1))
    for heart in hearts:
        a, b = heart.simples
        assert hom_total(q, a, b) + hom_total(q, b, a) <= 1


def test_invalid_heart_rejected():
    q, s1, s2, p1 = _a2()
    with pytest.raises(HeartError):
        make_heart(q, (s1, p1))  # hom(S_1 <- ... ) bound violated
    with pytest.raises(HeartError):
        make_heart(q, (s1, s1.shifted(1)))  # K-classes not a basis


def test_leftmost_and_standardize():
    q, s1, s2, p1 = _a2()
    h = initial_heart(q)
    assert standardize(h) == ([], h)
    bad = forward_tilt(h, s1)  # {S_1[1], S_2}, nonstandard
    assert is_leftmost(bad, s2)
    steps, result = standardize(bad)
    assert result == h.shifted(1)
    assert steps == [s2]


def test_standardize_terminates_on_a3_interval():
    q = build_quiver("A3")
    base = initial_heart(q)
    bound = len(positive_roots(q))
    frontier, seen = [base], {base.key()}
    top = base.shifted(1)
    while frontier:
        nxt = []
        for cur in frontier:
            steps, result = standardize(cur)
            assert is_standard(result)
            assert len(steps) <= bound
            for s in cur.simples:
                new = forward_tilt(cur, s)
                if heart_leq(base, new) and heart_leq(new, top) and new.key() not in seen:
                    seen.add(new.key())
                    nxt.append(new)
        frontier = nxt


def test_heart_json_round_trip():
    q, s1, s2, _p1 = _a2()
    h = forward_tilt(initial_heart(q), s2)
    text = h.to_json()
    assert Heart.from_json(q, text) == h
