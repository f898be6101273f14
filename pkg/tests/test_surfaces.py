import itertools
from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from friezegrowth.frieze import FriezeLattice, classify, is_positive_integer_infinite
from friezegrowth.growth import growth_coefficient, growth_sequence
from friezegrowth.surfaces import (
    Annulus,
    FanTriangulation,
    InvalidTriangulation,
    NotCuttable,
    PolygonTriangulation,
    catalan,
    continuant,
    cut,
    enumerate_triangulations,
    fan_entry_checks,
    fan_triangles,
    glue,
    inner_quiddity,
    load_surface,
    outer_quiddity,
    polygon_quiddity,
    rotational_symmetry_order,
    s_q_continuant,
    s_q_sum_formula,
    verify_glue_cut_invariance,
    verify_inner_outer,
)

fan_lists = st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=4)


def cyclic_equal(a, b):
    a, b = tuple(a), tuple(b)
    return len(a) == len(b) and any(a[k:] + a[:k] == b for k in range(len(a)))


def signed_tridiagonal(xs):
    """Determinant with 1 above and -1 below the diagonal."""
    k = len(xs)
    if k == 0:
        return 1
    M = sympy.zeros(k, k)
    for r, x in enumerate(xs):
        M[r, r] = x
        if r + 1 < k:
            M[r, r + 1], M[r + 1, r] = 1, -1
    return M.det()


def example_b(n1, m1, n2, m2):
    # r = 2 expansion written out term by term
    return 2 + m2 * n2 + m2 * n1 + m1 * n1 + m2 * n2 * m1 * n1 + n2 * m1


def test_one_fan_triangles():
    T = FanTriangulation(((4, 3),))
    tris = fan_triangles(T)
    assert len(tris) == 7
    assert sum(1 for t in tris if t[0] == ("inner", 1)) == 4
    assert sum(1 for t in tris if t[0] == ("outer", 5)) == 3
    assert len(fan_triangles(FanTriangulation(((1, 1),)))) == 2


@given(fan_lists)
def test_segment_coverage(fs):
    T = FanTriangulation(tuple(fs))
    tris = fan_triangles(T)
    assert len(tris) == T.n + T.m
    edges = Counter()
    for t in tris:
        for a, b in itertools.combinations(t, 2):
            if a[0] == b[0] and abs(a[1] - b[1]) == 1:
                edges[a[0], min(a[1], b[1])] += 1
    assert all(edges["outer", j] == 1 for j in range(1, T.n + 1))
    assert all(edges["inner", j] == 1 for j in range(1, T.m + 1))


def test_quiddity_examples():
    T = FanTriangulation(((4, 3),))
    assert cyclic_equal(outer_quiddity(T), (2, 2, 2, 5))
    assert cyclic_equal(inner_quiddity(T), (2, 2, 6))
    assert outer_quiddity(FanTriangulation(((1, 1),))) == (3,)
    T2 = FanTriangulation(((1, 1), (1, 1)))
    assert outer_quiddity(T2) == (3, 3) and inner_quiddity(T2) == (3, 3)


def test_continuant_examples():
    assert continuant([]) == 1
    assert continuant([5, 7]) == 36
    assert continuant([2, 1, 3]) == 11


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), max_size=8))
def test_continuant_reversal_and_determinant(xs):
    assert continuant(xs) == continuant(xs[::-1])
    det = signed_tridiagonal([sympy.Rational(x.numerator, x.denominator) for x in xs])
    assert continuant(xs) == det


def test_s_q_examples():
    T = FanTriangulation(((4, 3),))
    assert s_q_continuant(T) == 14 == s_q_sum_formula(T) == 2 + 4 * 3
    assert s_q_continuant(FanTriangulation(((1, 1), (1, 1)))) == 7


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))
def test_example_b_expansion(n1, m1, n2, m2):
    T = FanTriangulation(((n1, m1), (n2, m2)))
    assert s_q_sum_formula(T) == example_b(n1, m1, n2, m2) == s_q_continuant(T)


def test_exhaustive_fan_formulas():
    for r in (1, 2, 3):
        for vals in itertools.product(range(1, 4), repeat=2 * r):
            T = FanTriangulation(tuple(zip(vals[::2], vals[1::2])))
            s = growth_coefficient(outer_quiddity(T))
            assert s_q_continuant(T) == s_q_sum_formula(T) == s
            assert growth_coefficient(inner_quiddity(T)) == s
            assert s > 2


@settings(max_examples=80)
@given(fan_lists)
def test_fan_entries_three_ways(fs):
    T = FanTriangulation(tuple(fs))
    rep = fan_entry_checks(T)
    assert rep.ok, rep.to_dict()
    assert verify_inner_outer(T).ok


def test_fan_entry_one_fan_value():
    rep = fan_entry_checks(FanTriangulation(((4, 3),)))
    assert rep.extra["m_1_N"] == [17]
    L = FriezeLattice((2, 2, 2, 5))
    assert L.entry(1, 4) == 17


@given(fan_lists)
def test_average_quiddity_is_three(fs):
    T = FanTriangulation(tuple(fs))
    assert sum(outer_quiddity(T)) + sum(inner_quiddity(T)) == 3 * (T.n + T.m)


def test_glue_cut_examples():
    assert glue((3,), 1) == (5, 1)
    assert glue((6, 1, 2, 5, 1), 1) == (7, 1, 2, 2, 5, 1)
    assert cut((5, 1), 2) == (3,)
    assert cut((7, 1, 2, 2, 5, 1), 2) == (6, 1, 2, 5, 1)
    assert glue((1, 2, 6), 3) == (2, 2, 7, 1)
    with pytest.raises(NotCuttable):
        cut((1, 2, 6), 2)


def test_invariance_examples():
    assert verify_glue_cut_invariance((3,), [("glue", 1)]).ok
    assert growth_coefficient((5, 1)) == 3
    for i in range(1, 5):
        rep = verify_glue_cut_invariance((2, 2, 2, 5), [("glue", i)])
        assert rep.ok and rep.checks[0].detail["s_q"] == 14
    for i in range(1, 4):
        assert verify_glue_cut_invariance((1, 2, 6), [("glue", i)]).ok


def test_a52_reduction():
    ops = [("cut", 2), ("cut", 2), ("cut", 3)]
    rep = verify_glue_cut_invariance((6, 1, 2, 5, 1), ops)
    assert rep.ok
    assert rep.extra["path"][-1]["quiddity"] == [3, 3]
    core = FanTriangulation(((1, 1), (1, 1)))
    A = Annulus(core, (("outer", 2), ("outer", 1), ("outer", 1)))
    assert A.outer == (6, 1, 2, 5, 1) and A.inner == (3, 3)
    assert growth_coefficient(A.outer) == growth_coefficient(A.inner) == 7


@st.composite
def glue_cut_programs(draw):
    q = outer_quiddity(FanTriangulation(tuple(draw(fan_lists))))
    ops = []
    cur = q
    for _ in range(draw(st.integers(1, 6))):
        ones = [i + 1 for i, a in enumerate(cur) if a == 1]
        if ones and len(cur) >= 2 and draw(st.booleans()):
            i = draw(st.sampled_from(ones))
            ops.append(("cut", i))
            cur = cut(cur, i)
        else:
            i = draw(st.integers(1, len(cur)))
            ops.append(("glue", i))
            cur = glue(cur, i)
    return q, ops


@settings(max_examples=60)
@given(glue_cut_programs())
def test_random_programs_preserve_s(prog):
    q, ops = prog
    assert verify_glue_cut_invariance(q, ops).ok


@given(fan_lists, st.integers(1, 30))
def test_glue_then_cut_round_trips(fs, i):
    q = outer_quiddity(FanTriangulation(tuple(fs)))
    i = (i - 1) % len(q) + 1
    g = glue(q, i)
    assert cut(g, i % len(q) + 1 if i < len(q) else len(g)) == q
    assert is_positive_integer_infinite(g)


def test_polygon_examples():
    P = PolygonTriangulation(5, frozenset({(1, 3), (1, 4)}))
    # triangles 123, 134, 145
    assert polygon_quiddity(P) == (3, 1, 2, 2, 1)
    assert polygon_quiddity(PolygonTriangulation(3, frozenset())) == (1, 1, 1)
    zig = PolygonTriangulation(6, frozenset({(1, 3), (3, 6), (4, 6)}))
    assert cyclic_equal(polygon_quiddity(zig), (1, 3, 2, 1, 3, 2))
    assert rotational_symmetry_order(zig) == 2
    assert growth_sequence(polygon_quiddity(zig), 1)[1] == 0
    tri = PolygonTriangulation(6, frozenset({(1, 3), (3, 5), (5, 1)}))
    assert rotational_symmetry_order(tri) == 3
    assert growth_sequence(polygon_quiddity(tri), 1)[1] == 1
    assert rotational_symmetry_order(P) == 1
    assert growth_sequence(polygon_quiddity(P), 1)[1] == -2


def test_invalid_triangulations():
    with pytest.raises(InvalidTriangulation):
        PolygonTriangulation(6, frozenset({(1, 4), (2, 5), (3, 6)})).validate()
    with pytest.raises(InvalidTriangulation):
        PolygonTriangulation(6, frozenset({(1, 3)})).validate()
    with pytest.raises(InvalidTriangulation):
        PolygonTriangulation(5, frozenset({(1, 2), (1, 3)})).validate()


def test_catalan_and_symmetry_sweep():
    expected = {1: -2, 2: 0, 3: 1}
    for n in range(3, 10):
        tris = list(enumerate_triangulations(n))
        assert len(tris) == catalan(n - 2)
        assert len({P.diagonals for P in tris}) == len(tris)
        for P in tris:
            q = polygon_quiddity(P)
            assert sum(q) == 3 * n - 6
            c = classify(q, 2 * n)
            assert c.kind == "Finite" and c.order == n
            assert growth_sequence(q, 1)[1] == expected[rotational_symmetry_order(P)]


def test_load_surface_formats():
    assert load_surface('{"fans":[{"n":2,"m":1}]}') == FanTriangulation(((2, 1),))
    P = load_surface({"n": 6, "diagonals": [[1, 3], [3, 6], [4, 6]]})
    assert isinstance(P, PolygonTriangulation)
    A = load_surface({"fans": [{"n": 1, "m": 1}], "glue_ops": [{"boundary": "outer", "index": 1}]})
    assert A.outer == (5, 1)
    with pytest.raises(ValueError):
        load_surface({"nothing": 1})
    with pytest.raises(ValueError):
        FanTriangulation(((0, 1),))
    assert Fraction(sum(outer_quiddity(A.core)), 1) == 3
