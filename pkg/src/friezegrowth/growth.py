"""Growth coefficients of periodic friezes and the recursions they drive."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .exact import Number, format_number, normalize
from .frieze import FriezeLattice, as_quiddity

__all__ = [
    "Check",
    "Report",
    "GrowthSequence",
    "PreconditionFailed",
    "minimal_period",
    "growth_coefficient",
    "growth_sequence",
    "recursion_sequence",
    "closed_form_sk",
    "chebyshev_sk",
    "verify_diagonal_recursion",
    "verify_constant_difference",
    "verify_linear_combination_recursion",
    "arithmetic_diagonal_check",
]


class PreconditionFailed(ValueError):
    pass


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (bool, str, int, float)) or x is None:
        return x
    try:
        return format_number(x)
    except TypeError:
        return str(x)


@dataclass
class Check:
    name: str
    ok: bool
    counterexample: Optional[object] = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"name": self.name, "ok": self.ok,
             "counterexample": _jsonable(self.counterexample)}
        if self.detail:
            d["detail"] = _jsonable(self.detail)
        return d


@dataclass
class Report:
    """A bag of named checks plus optional growth data.

    Serializes to ``{"s": [...], "checks": [{"name", "ok", "counterexample"}]}``.
    """

    checks: list = field(default_factory=list)
    s: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    def to_dict(self) -> dict:
        d = {"s": [format_number(v) for v in self.s],
             "checks": [c.to_dict() for c in self.checks]}
        for k, v in self.extra.items():
            d[k] = _jsonable(v)
        return d


@dataclass(frozen=True)
class GrowthSequence:
    s: tuple
    n_min: int

    def __getitem__(self, k):
        return self.s[k]

    def __len__(self):
        return len(self.s)

    @property
    def principal(self) -> Number:
        return self.s[1]


def minimal_period(q: Sequence) -> int:
    q = as_quiddity(q)
    n = len(q)
    for d in range(1, n + 1):
        if n % d == 0 and all(q[i] == q[(i + d) % n] for i in range(n)):
            return d
    return n


def _lattice(q) -> FriezeLattice:
    return q if isinstance(q, FriezeLattice) else FriezeLattice(q)


def growth_coefficient(q) -> Number:
    """``m[1, n] - m[2, n-1]`` with ``n`` the length of *q* exactly as given."""
    L = _lattice(q)
    n = L.n
    return normalize(L.entry(1, n) - L.entry(2, n - 1))


def recursion_sequence(s1, K: int, s0=2) -> list:
    """``s0, s1, ...`` up to index *K* under ``s[k+2] = s1 s[k+1] - s[k]``."""
    out = [normalize(s0), normalize(s1)]
    while len(out) <= K:
        out.append(normalize(s1 * out[-1] - out[-2]))
    return out[:K + 1]


def growth_sequence(q, K: int) -> GrowthSequence:
    """``s_0 .. s_K`` read off the lattice at the minimal period.

    Raises :class:`AssertionError` if the lattice values disagree with the
    coefficient recursion (which would indicate a bug, not bad input).
    """
    if K < 0:
        raise ValueError("K must be non-negative")
    q = as_quiddity(q.quiddity if isinstance(q, FriezeLattice) else q)
    n = minimal_period(q)
    L = FriezeLattice(q[:n])
    s = [normalize(L.entry(1, k * n) - L.entry(2, k * n - 1)) for k in range(K + 1)]
    if K >= 1:
        expected = recursion_sequence(s[1], K)
        if s != expected:
            k = next(k for k in range(K + 1) if s[k] != expected[k])
            raise AssertionError(f"growth coefficient s_{k} disagrees with the recursion")
    return GrowthSequence(tuple(s), n)


def closed_form_sk(s1, k: int) -> Number:
    """``s1^k + k * sum_l (-1)^l binom(k-l, l)/(k-l) * s1^(k-2l)`` for ``k >= 1``."""
    if k < 1:
        raise ValueError("closed form is stated for k >= 1")
    total = normalize(s1) ** k
    for l in range(1, k // 2 + 1):
        c = Fraction(k, k - l) * comb(k - l, l)
        assert c.denominator == 1, f"non-integral coefficient at k={k}, l={l}"
        total = total + (-1) ** l * c.numerator * normalize(s1) ** (k - 2 * l)
    return normalize(total)


def chebyshev_sk(s1, k: int) -> Number:
    """``2 T_k(s1/2)`` via ``T_{k+1} = 2x T_k - T_{k-1}``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    x = normalize(s1) / Fraction(2)
    t_prev, t = 1, x
    if k == 0:
        return 2
    for _ in range(k - 1):
        t_prev, t = t, normalize(2 * x * t - t_prev)
    return normalize(2 * t)


def _window_cells(window) -> Iterable:
    i0, j0, h, w = window
    for i in range(i0, i0 + h):
        for j in range(j0, j0 + w):
            yield i, j


def verify_diagonal_recursion(L, q=None, window=(1, -8, 6, 16)) -> Report:
    """``m[i, j+2n] = s_q m[i, j+n] - m[i, j]`` and ``m[i-2n, j] = s_q m[i-n, j] - m[i, j]``."""
    L = L if isinstance(L, FriezeLattice) else _lattice(L if q is None else q)
    n = L.n
    sq = growth_coefficient(L)
    rep = Report()
    se = ne = None
    for i, j in _window_cells(window):
        if se is None and L.entry(i, j + 2 * n) != sq * L.entry(i, j + n) - L.entry(i, j):
            se = (i, j)
        if ne is None and L.entry(i - 2 * n, j) != sq * L.entry(i - n, j) - L.entry(i, j):
            ne = (i, j)
    rep.add(Check("diagonal_recursion_se", se is None, se, {"s_q": sq}))
    rep.add(Check("diagonal_recursion_sw", ne is None, ne, {"s_q": sq}))
    return rep


def verify_constant_difference(L, q=None, k_range=range(0, 11)) -> Report:
    """``m[k+1, k+n] - m[k+2, k+n-1]`` is the same for every ``k`` in *k_range*."""
    L = L if isinstance(L, FriezeLattice) else _lattice(L if q is None else q)
    n = L.n
    sq = growth_coefficient(L)
    bad = None
    for k in k_range:
        if L.entry(k + 1, k + n) - L.entry(k + 2, k + n - 1) != sq:
            bad = k
            break
    return Report([Check("constant_difference", bad is None, bad, {"s_q": sq})])


def verify_linear_combination_recursion(L, q=None, terms=(), window=None) -> Report:
    """Linear combinations ``sum lambda_k m[i_k, j_k + t n]`` obey the same recursion.

    *terms* is a list of ``(coefficient, i_k, j_k)``.  If *window* is given as
    ``(j_start, j_stop)`` the whole family is shifted along the diagonals by
    every offset in ``range(j_start, j_stop)``.
    """
    L = L if isinstance(L, FriezeLattice) else _lattice(L if q is None else q)
    n = L.n
    sq = growth_coefficient(L)
    shifts = range(*window) if window is not None else (0,)
    bad = None
    for t in shifts:
        def comb_(off):
            return sum((lam * L.entry(i, j + t + off) for lam, i, j in terms), 0)
        if comb_(2 * n) != sq * comb_(n) - comb_(0):
            bad = t
            break
    return Report([Check("linear_combination_recursion", bad is None, bad, {"s_q": sq})])


def arithmetic_diagonal_check(L, q=None, window=(1, -2, None, 6)) -> Report:
    """Along each diagonal, entries ``n`` apart form arithmetic progressions.

    Only meaningful for friezes whose principal growth coefficient is 2.
    *window* is ``(i0, j0, width, steps)``: diagonals ``i0 .. i0+width-1``,
    starting columns ``j0 .. j0+n-1`` relative to ``i``, ``steps`` further
    terms per progression.  The step ``d`` for each ``(i, j mod n)`` is
    returned in ``extra["steps"]``.
    """
    L = L if isinstance(L, FriezeLattice) else _lattice(L if q is None else q)
    s = growth_sequence(L.quiddity, 1)
    if s[1] != 2:
        raise PreconditionFailed(f"principal growth coefficient is {format_number(s[1])}, not 2")
    n = L.n
    i0, j0, width, steps = window
    width = width if width is not None else n
    rep = Report()
    steps_out = {}
    bad = None
    for i in range(i0, i0 + width):
        for off in range(j0, j0 + n):
            j = i + off
            d = L.entry(i, j + n) - L.entry(i, j)
            steps_out[f"{i},{j % n}"] = d
            for k in range(1, steps + 1):
                if L.entry(i, j + (k + 1) * n) - L.entry(i, j + k * n) != d:
                    bad = bad or (i, j, k)
    rep.add(Check("arithmetic_diagonals", bad is None, bad))
    rep.extra["steps"] = steps_out
    return rep
