"""Triangulated polygons and annuli, their quiddity sequences and growth coefficients.

An annulus triangulation in which every arc is bridging is stored as its
alternating fans ``(n_1, m_1), ..., (n_r, m_r)``.  In the periodic strip
picture the outer boundary carries vertices ``1 .. n`` and the inner one
``1 .. m``; fan ``k`` contributes ``n_k`` triangles with apex at inner vertex
``M_{k-1}+1`` over outer edges ``N_{k-1}+1 .. N_k+1`` and then ``m_k``
triangles with apex at outer vertex ``N_k+1`` over inner edges
``M_{k-1}+1 .. M_k+1``.  Peripheral triangles are added afterwards with
gluing operations (:class:`Annulus`).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Sequence

from .exact import Number, is_integer, normalize
from .frieze import FriezeLattice, as_quiddity, is_positive_integer_infinite
from .growth import Check, Report, growth_coefficient, growth_sequence

__all__ = [
    "FanTriangulation",
    "Annulus",
    "PolygonTriangulation",
    "NotCuttable",
    "InvalidTriangulation",
    "fan_triangles",
    "outer_quiddity",
    "inner_quiddity",
    "continuant",
    "s_q_continuant",
    "s_q_sum_formula",
    "fan_entry_checks",
    "glue",
    "cut",
    "verify_glue_cut_invariance",
    "verify_inner_outer",
    "polygon_quiddity",
    "rotational_symmetry_order",
    "enumerate_triangulations",
    "catalan",
    "load_surface",
]


class NotCuttable(ValueError):
    pass


class InvalidTriangulation(ValueError):
    pass


@dataclass(frozen=True)
class FanTriangulation:
    fans: tuple  # ((n_1, m_1), ..., (n_r, m_r))

    def __post_init__(self):
        fans = tuple((int(a), int(b)) for a, b in self.fans)
        if not fans:
            raise ValueError("a fan triangulation needs at least one fan")
        if any(a < 1 or b < 1 for a, b in fans):
            raise ValueError("fan sizes must be positive integers")
        object.__setattr__(self, "fans", fans)

    @classmethod
    def from_lists(cls, ns: Sequence[int], ms: Sequence[int]) -> "FanTriangulation":
        if len(ns) != len(ms):
            raise ValueError("need as many outer as inner fan sizes")
        return cls(tuple(zip(ns, ms)))

    @property
    def r(self) -> int:
        return len(self.fans)

    @property
    def ns(self) -> list:
        return [a for a, _ in self.fans]

    @property
    def ms(self) -> list:
        return [b for _, b in self.fans]

    @property
    def N(self) -> list:
        """Partial sums ``N_0 = 0, N_1, ..., N_r``."""
        return [0] + list(itertools.accumulate(self.ns))

    @property
    def M(self) -> list:
        return [0] + list(itertools.accumulate(self.ms))

    @property
    def n(self) -> int:
        return self.N[-1]

    @property
    def m(self) -> int:
        return self.M[-1]

    def to_dict(self) -> dict:
        return {"fans": [{"n": a, "m": b} for a, b in self.fans]}


def fan_triangles(T: FanTriangulation) -> list:
    """Triangles of one fundamental domain as triples of ``(side, index)``.

    Indices are strip positions, so ``("outer", n+1)`` is the first outer vertex
    of the next domain.
    """
    N, M = T.N, T.M
    tris = []
    for k in range(1, T.r + 1):
        apex = ("inner", M[k - 1] + 1)
        for j in range(N[k - 1] + 1, N[k] + 1):
            tris.append((apex, ("outer", j), ("outer", j + 1)))
        apex = ("outer", N[k] + 1)
        for j in range(M[k - 1] + 1, M[k] + 1):
            tris.append((apex, ("inner", j), ("inner", j + 1)))
    return tris


def _incidences(T: FanTriangulation, side: str) -> list:
    size = T.n if side == "outer" else T.m
    counts = [0] * size
    for tri in fan_triangles(T):
        for s, idx in tri:
            if s == side:
                counts[(idx - 1) % size] += 1
    return counts


def outer_quiddity(T: FanTriangulation) -> tuple:
    """Incidence counts on the outer boundary, starting at outer vertex 1.

    Vertex 1 is the apex of the last inner fan; with this labelling the
    entries ``m[1, N_k]`` and ``m[2, N_k]`` count matchings along the fans.
    """
    return tuple(_incidences(T, "outer"))


def inner_quiddity(T: FanTriangulation) -> tuple:
    """Incidence counts on the inner boundary, starting at inner vertex 1."""
    return tuple(_incidences(T, "inner"))


def continuant(xs: Sequence) -> Number:
    """``P_k(x_1..x_k) = x_k P_{k-1} + P_{k-2}`` with ``P_0 = 1``."""
    prev, cur = 0, 1
    for x in xs:
        prev, cur = cur, normalize(x * cur + prev)
    return cur


def _interleave(T: FanTriangulation) -> list:
    out = []
    for a, b in T.fans:
        out += [a, b]
    return out


def s_q_continuant(T: FanTriangulation) -> Number:
    seq = _interleave(T)
    return normalize(continuant(seq) + continuant(seq[1:-1]))


def s_q_sum_formula(T: FanTriangulation) -> Number:
    """``2`` plus all alternating chains ``m n m n ...`` and ``n m n m ...``.

    An ``m_i`` may be followed by ``n_j`` only for ``i >= j`` and an ``n_i`` by
    ``m_j`` only for ``i > j``; only chains of even length count.
    """
    ns, ms = T.ns, T.ms

    def walk(letter, idx, prod, length):
        total = prod if length % 2 == 0 else 0
        if letter == "m":
            nxt = range(1, idx + 1)
            for j in nxt:
                total += walk("n", j, prod * ns[j - 1], length + 1)
        else:
            for j in range(1, idx):
                total += walk("m", j, prod * ms[j - 1], length + 1)
        return total

    total = 2
    for i in range(1, T.r + 1):
        total += walk("m", i, ms[i - 1], 1)
        total += walk("n", i, ns[i - 1], 1)
    return total


def fan_entry_checks(T: FanTriangulation) -> Report:
    """Compare ``m[1,N_k]``, ``m[2,N_k]``, ``m[2,N_k - 1]`` three ways for every ``k``.

    The fan recursions, the continuant identities and the lattice of the
    outer quiddity sequence must agree exactly.
    """
    ns, ms, N, r = T.ns, T.ms, T.N, T.r
    mr = ms[-1]
    L = FriezeLattice(outer_quiddity(T))

    # fan recursions; index 0 holds m[1, 0] = 1 and m[2, 0] = 0
    m1 = [1]
    m2 = [0]
    m2m = [None]
    for k in range(1, r + 1):
        inner1 = sum(ms[i - 1] * m1[i] for i in range(1, k))
        m1.append(m1[k - 1] + ns[k - 1] * (inner1 + mr + 1))
        inner2 = 1 + sum(ms[i - 1] * m2[i] for i in range(1, k))
        m2.append(m2[k - 1] + ns[k - 1] * inner2)
        m2m.append(m2[k] - inner2)

    rep = Report()
    bad = {name: None for name in ("relfan_vs_lattice", "continuant_i", "continuant_ii",
                                   "continuant_iii", "continuant_iv", "relfan1_closed")}
    seq = _interleave(T)
    for k in range(1, r + 1):
        lat = (L.entry(1, N[k]), L.entry(2, N[k]), L.entry(2, N[k] - 1))
        if (m1[k], m2[k], m2m[k]) != lat:
            bad["relfan_vs_lattice"] = bad["relfan_vs_lattice"] or k
        head = [mr + 1] + seq[:2 * k - 1]  # m_r+1, n_1, m_1, ..., n_k
        if continuant(head) != lat[0] or continuant(head) != m1[k]:
            bad["continuant_i"] = bad["continuant_i"] or k
        lhs = 1 + mr + sum(ms[i - 1] * m1[i] for i in range(1, k + 1))
        if continuant([mr + 1] + seq[:2 * k]) != lhs:
            bad["continuant_ii"] = bad["continuant_ii"] or k
        if continuant(seq[:2 * k - 1]) != lat[1]:
            bad["continuant_iii"] = bad["continuant_iii"] or k
        lhs = 1 + sum(ms[i - 1] * m2[i] for i in range(1, k + 1))
        if continuant(seq[:2 * k]) != lhs:
            bad["continuant_iv"] = bad["continuant_iv"] or k
        closed = 1 + sum(ns[j - 1] * (sum(ms[i - 1] * m1[i] for i in range(1, j)) + mr + 1)
                         for j in range(1, k + 1))
        if closed != m1[k]:
            bad["relfan1_closed"] = bad["relfan1_closed"] or k
    for name, k in bad.items():
        rep.add(Check(name, k is None, k))
    rep.extra["m_1_N"] = m1[1:]
    rep.extra["m_2_N"] = m2[1:]
    rep.extra["m_2_N_minus_1"] = m2m[1:]
    return rep


def glue(q: Sequence, i: int) -> tuple:
    """Glue a peripheral triangle above ``(a_i, a_{i+1})`` (1-based, cyclic)."""
    q = list(as_quiddity(q))
    n = len(q)
    if n == 1:
        return (normalize(q[0] + 2), 1)
    if not 1 <= i <= n:
        raise IndexError(f"glue position {i} outside 1..{n}")
    if i == n:
        q[0] += 1
        q[-1] += 1
        return as_quiddity(q + [1])
    q[i - 1] += 1
    q[i] += 1
    return as_quiddity(q[:i] + [1] + q[i:])


def cut(q: Sequence, i: int) -> tuple:
    """Remove the peripheral triangle at a vertex with ``a_i = 1`` (1-based, cyclic)."""
    q = list(as_quiddity(q))
    n = len(q)
    if not 1 <= i <= n:
        raise IndexError(f"cut position {i} outside 1..{n}")
    if q[i - 1] != 1:
        raise NotCuttable(f"entry a_{i} = {q[i - 1]} is not 1")
    if n < 2:
        raise NotCuttable("cannot cut a sequence of length 1")
    if not is_positive_integer_infinite(q):
        raise NotCuttable("cutting needs positive integers without consecutive ones")
    if n == 2:
        return (normalize(q[i % 2] - 2),)
    before, after = (i - 2) % n, i % n
    q[before] -= 1
    q[after] -= 1
    return as_quiddity(q[:i - 1] + q[i:])


def verify_glue_cut_invariance(q: Sequence, ops: Sequence) -> Report:
    """Apply ``("glue"|"cut", i)`` steps and check ``s_q`` never changes."""
    q = as_quiddity(q)
    s0 = growth_coefficient(q)
    path = [(q, s0)]
    bad = None
    for step, (op, i) in enumerate(ops, 1):
        q = glue(q, i) if op == "glue" else cut(q, i)
        s = growth_coefficient(q)
        path.append((q, s))
        if s != s0 and bad is None:
            bad = step
    rep = Report([Check("glue_cut_invariance", bad is None, bad, {"s_q": s0})])
    rep.extra["path"] = [{"quiddity": list(p), "s_q": s} for p, s in path]
    return rep


def verify_inner_outer(T: FanTriangulation) -> Report:
    q, qb = outer_quiddity(T), inner_quiddity(T)
    s_out, s_in = growth_coefficient(q), growth_coefficient(qb)
    s_cont, s_sum = s_q_continuant(T), s_q_sum_formula(T)
    rep = Report()
    rep.add(Check("inner_equals_outer", s_out == s_in, None if s_out == s_in else [s_out, s_in]))
    rep.add(Check("continuant_formula", s_cont == s_out, None if s_cont == s_out else s_cont))
    rep.add(Check("sum_formula", s_sum == s_out, None if s_sum == s_out else s_sum))
    rep.extra.update(outer=list(q), inner=list(qb), s_q=s_out)
    return rep


@dataclass(frozen=True)
class Annulus:
    """Bridging fan core plus peripheral triangles glued on either boundary.

    ``glue_ops`` holds ``(boundary, index)`` pairs applied in order to the
    outer or inner quiddity sequence.
    """

    core: FanTriangulation
    glue_ops: tuple = ()

    def quiddities(self) -> tuple:
        outer, inner = outer_quiddity(self.core), inner_quiddity(self.core)
        for boundary, idx in self.glue_ops:
            if boundary == "outer":
                outer = glue(outer, idx)
            elif boundary == "inner":
                inner = glue(inner, idx)
            else:
                raise ValueError(f"unknown boundary {boundary!r}")
        return outer, inner

    @property
    def outer(self) -> tuple:
        return self.quiddities()[0]

    @property
    def inner(self) -> tuple:
        return self.quiddities()[1]

    def to_dict(self) -> dict:
        d = self.core.to_dict()
        d["glue_ops"] = [{"boundary": b, "index": i} for b, i in self.glue_ops]
        return d


def _ccw_between(a: int, b: int, x: int) -> bool:
    """``x`` strictly inside the arc from ``a`` to ``b`` for ``a < b``."""
    return a < x < b


@dataclass(frozen=True)
class PolygonTriangulation:
    n: int
    diagonals: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        diags = frozenset(tuple(sorted((int(a), int(b)))) for a, b in self.diagonals)
        object.__setattr__(self, "diagonals", diags)

    def validate(self) -> "PolygonTriangulation":
        n = self.n
        if n < 3:
            raise InvalidTriangulation("a polygon needs at least 3 vertices")
        for a, b in self.diagonals:
            if not (1 <= a <= n and 1 <= b <= n) or b - a in (0, 1, n - 1):
                raise InvalidTriangulation(f"({a}, {b}) is not a diagonal of a {n}-gon")
        if len(self.diagonals) != n - 3:
            raise InvalidTriangulation(
                f"expected {n - 3} diagonals, got {len(self.diagonals)}")
        for (a, b), (c, d) in itertools.combinations(sorted(self.diagonals), 2):
            if len({a, b, c, d}) == 4 and _ccw_between(a, b, c) != _ccw_between(a, b, d):
                raise InvalidTriangulation(f"diagonals ({a}, {b}) and ({c}, {d}) cross")
        if len(self.triangles()) != n - 2:
            raise InvalidTriangulation("diagonals do not cut the polygon into triangles")
        return self

    def edges(self) -> set:
        n = self.n
        e = {tuple(sorted((v, v % n + 1))) for v in range(1, n + 1)}
        return e | set(self.diagonals)

    def triangles(self) -> list:
        """Faces, found as mutually adjacent vertex triples."""
        e = self.edges()
        return [t for t in itertools.combinations(range(1, self.n + 1), 3)
                if all(tuple(sorted(p)) in e for p in itertools.combinations(t, 2))]

    def rotate(self, k: int) -> "PolygonTriangulation":
        n = self.n
        return PolygonTriangulation(
            n, frozenset(((a - 1 + k) % n + 1, (b - 1 + k) % n + 1) for a, b in self.diagonals))

    def to_dict(self) -> dict:
        return {"n": self.n, "diagonals": [list(d) for d in sorted(self.diagonals)]}


def polygon_quiddity(P: PolygonTriangulation) -> tuple:
    P.validate()
    counts = [0] * P.n
    for tri in P.triangles():
        for v in tri:
            counts[v - 1] += 1
    return tuple(counts)


def rotational_symmetry_order(P: PolygonTriangulation) -> int:
    P.validate()
    n = P.n
    if n % 3 == 0 and P.rotate(n // 3).diagonals == P.diagonals:
        return 3
    if n % 2 == 0 and P.rotate(n // 2).diagonals == P.diagonals:
        return 2
    return 1


def enumerate_triangulations(n: int) -> Iterator[PolygonTriangulation]:
    """Every triangulation of the ``n``-gon (``catalan(n-2)`` of them)."""

    def rec(vs):
        if len(vs) < 3:
            yield frozenset()
            return
        a, b = vs[0], vs[-1]
        for k in range(1, len(vs) - 1):
            c = vs[k]
            here = set()
            if k > 1:
                here.add((a, c))
            if k < len(vs) - 2:
                here.add((c, b))
            for left in rec(vs[:k + 1]):
                for right in rec(vs[k:]):
                    yield frozenset(here) | left | right

    for diags in rec(list(range(1, n + 1))):
        yield PolygonTriangulation(n, diags)


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def load_surface(data) -> object:
    """Build a surface object from the JSON input formats.

    ``{"fans": [{"n": 2, "m": 1}, ...]}`` gives a :class:`FanTriangulation`,
    the same with ``"glue_ops"`` an :class:`Annulus`, and
    ``{"n": 6, "diagonals": [[1, 3], ...]}`` a :class:`PolygonTriangulation`.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if "fans" in data:
        core = FanTriangulation(tuple((f["n"], f["m"]) for f in data["fans"]))
        if "glue_ops" in data:
            ops = tuple((op["boundary"], int(op["index"])) for op in data["glue_ops"])
            return Annulus(core, ops)
        return core
    if "diagonals" in data:
        return PolygonTriangulation(int(data["n"]), frozenset(map(tuple, data["diagonals"]))).validate()
    raise ValueError("unrecognised surface description")
