import pytest

from bsgeodesic.oracle import (
    Ball,
    CapacityExceeded,
    OutOfBall,
    build_ball,
    cached_ball,
    check_geodesic,
    oracle_distance,
    oracle_geodesic,
)
from bsgeodesic.words import GroupElement, Letter, evaluate, identity, parse_word

from conftest import ball

W = parse_word


def test_small_balls():
    assert len(build_ball(2, 0)) == 1
    for p in (2, 3, 5):
        assert len(build_ball(p, 1)) == 5


def test_distance_examples():
    b = ball(2, 7)
    assert oracle_distance(b, identity(2)) == 0
    assert oracle_distance(b, evaluate(W("aaaa"), 2)) == 4
    assert oracle_distance(b, evaluate(W("aaaaaa"), 2)) == 5
    assert oracle_distance(b, evaluate(W("AtAtaTT"), 2)) == 1
    assert oracle_distance(b, evaluate(W("Tat"), 2)) == 3


def test_geodesic_examples():
    b = ball(2, 7)
    assert oracle_geodesic(b, identity(2)) == ()
    for text, d in (("aa", 2), ("aaaaaa", 5)):
        g = evaluate(W(text), 2)
        w = oracle_geodesic(b, g)
        assert len(w) == d and evaluate(w, 2) == g


def test_check_geodesic():
    b = ball(2, 7)
    assert check_geodesic((), 2, b)
    assert not check_geodesic(W("aAa"), 2, b)
    assert check_geodesic(W("taaaT"), 2, b)
    with pytest.raises(ValueError):
        check_geodesic((), 3, b)


def test_out_of_ball():
    b = ball(2, 3)
    with pytest.raises(OutOfBall):
        oracle_distance(b, evaluate(W("aaaaaa"), 2))
    with pytest.raises(OutOfBall):
        oracle_geodesic(b, evaluate(W("tttt"), 2))


def test_capacity():
    with pytest.raises(CapacityExceeded):
        build_ball(2, 10, budget=100)


def test_invalid_radius():
    with pytest.raises(ValueError):
        build_ball(2, -1)


@pytest.mark.parametrize("p", [2, 3])
def test_ball_is_consistent(p):
    b = ball(p, 7)
    # every stored element's witness word evaluates to it with matching length
    for key, (d, _, _) in list(b.table.items())[:3000]:
        g = GroupElement(p, *key)
        w = b.geodesic(g)
        assert len(w) == d and evaluate(w, p) == g
    # neighbours differ by at most one
    for key, (d, parent, _) in b.table.items():
        if parent is not None:
            assert b.table[parent][0] == d - 1


def test_ball_contains_all_short_words():
    import itertools

    b = ball(3, 5)
    for n in range(6):
        for w in itertools.product(list(Letter), repeat=n):
            assert oracle_distance(b, evaluate(w, 3)) <= n


def test_cache_round_trip(tmp_path):
    first = cached_ball(2, 5, str(tmp_path))
    second = cached_ball(2, 5, str(tmp_path))
    assert first.table == second.table
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"nope")
    with pytest.raises(ValueError):
        Ball.load(str(bad))
