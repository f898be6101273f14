"""The coefficient recursion ``r[k+2] = r1 r[k+1] - r[k]`` and its one-stage Moebius form.

Fixed points are the roots of ``x^2 - s x + 1``, so ``S + U = s`` and
``S U = 1``; for ``s >= 2`` the larger root ``S`` attracts every orbit except
the one started at ``U``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import (NotRepresentable, Number, Quadratic, format_number, is_exact,
                    normalize, quadratic, sign, sqrt_exact, to_float)
from .growth import Check, PreconditionFailed, Report, growth_coefficient, recursion_sequence

__all__ = [
    "NEG_INFINITY",
    "NoRealFixedPoint",
    "RecursionOrbit",
    "OneStageOrbit",
    "FixedPoints",
    "DynamicsReport",
    "iterate",
    "one_stage",
    "ratio_consistency",
    "fixed_points",
    "generalized_recursion_check",
    "s_p_equals_two",
    "nearest_cosine",
    "periodic_subsequence_check",
    "family_pattern",
    "classify",
    "region",
    "convergence_certificate",
    "null_set_prefix",
    "frieze_growth_bound_check",
]

FLOAT_TOL = 1e-9


class NoRealFixedPoint(ValueError):
    pass


class _NegInfinity:
    """Orbit value after passing through zero; sorts below every number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INFINITY"

    def __str__(self):
        return "-inf"


NEG_INFINITY = _NegInfinity()


def _fmt(x) -> str:
    if x is NEG_INFINITY:
        return "-inf"
    if isinstance(x, float):
        return repr(x)
    return format_number(x)


def _is_float(x) -> bool:
    return isinstance(x, float)


def _num(x):
    """Exact numbers are normalized, floats pass through."""
    if _is_float(x):
        return x
    return normalize(x)


def _eq(a, b, tol=FLOAT_TOL) -> bool:
    if _is_float(a) or _is_float(b):
        return abs(float(a) - float(b)) <= tol * max(1.0, abs(float(a)), abs(float(b)))
    return a == b


def _div(a, b):
    if _is_float(a) or _is_float(b):
        return float(a) / float(b)
    a = a if isinstance(a, Quadratic) else Fraction(a)
    return normalize(a / b)


def _sgn(x) -> int:
    if _is_float(x):
        return (x > 0) - (x < 0)
    return sign(x)


@dataclass(frozen=True)
class RecursionOrbit:
    r0: object
    r1: object
    values: tuple
    mode: str = "exact"

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)


def iterate(r0, r1, K: int) -> RecursionOrbit:
    """``r_0 .. r_K``; floats anywhere switch the orbit to float mode."""
    if K < 2:
        raise ValueError("K must be at least 2")
    mode = "float" if _is_float(r0) or _is_float(r1) else "exact"
    if mode == "float":
        r0, r1 = float(r0), float(r1)
    else:
        r0, r1 = normalize(r0), normalize(r1)
    vals = [r0, r1]
    for _ in range(K - 1):
        vals.append(_num(r1 * vals[-1] - vals[-2]))
    return RecursionOrbit(r0, r1, tuple(vals), mode)


@dataclass(frozen=True)
class OneStageOrbit:
    s: object
    values: tuple  # x_1 .. x_K, stored 0-based
    events: tuple = ()

    def x(self, k: int):
        return self.values[k - 1]


def one_stage(x1, s, K: int) -> OneStageOrbit:
    """``x[k+1] = s - 1/x[k]`` with the extension ``0 -> -inf -> s``."""
    if K < 1:
        raise ValueError("K must be at least 1")
    s = _num(s)
    x = x1 if x1 is NEG_INFINITY else _num(x1)
    vals, events = [x], []
    for k in range(1, K):
        if x is NEG_INFINITY:
            x = s
        elif _sgn(x) == 0:
            x = NEG_INFINITY
            events.append({"k": k, "event": "through_zero"})
        else:
            x = _num(s - Fraction(1) / x) if not _is_float(x) else s - 1.0 / x
        vals.append(x)
    return OneStageOrbit(s, tuple(vals), tuple(events))


def ratio_consistency(r0, r1, K: int = 20) -> Report:
    """One-stage values against ``r[k+1]/r[k]``, including the pass through zero.

    With ``x_k = r[k+1]/r[k]`` and ``x_1 = r_2/r_1``, a zero ``x_j`` means
    ``r[j+1] = 0``; the next value is the sentinel and the orbit must then
    satisfy ``sign(r[j] r[j+2]) = -1``.
    """
    orb = iterate(r0, r1, K + 1)
    r = orb.values
    if _sgn(r[1]) == 0:
        raise PreconditionFailed("r_1 = 0 gives no one-stage orbit")
    xs = one_stage(_div(r[2], r[1]), r[1], K)
    bad = None
    sign_events = []
    for k in range(1, K + 1):
        xk = xs.x(k)
        if xk is NEG_INFINITY:
            ok = _sgn(r[k]) == 0 and _sgn(r[k - 1] * r[k + 1]) == -1
            sign_events.append({"k": k, "sign_r_k_minus_1_r_k_plus_1": _sgn(r[k - 1] * r[k + 1])})
        else:
            ok = _sgn(r[k]) != 0 and _eq(xk, _div(r[k + 1], r[k]))
        if not ok and bad is None:
            bad = k
    rep = Report([Check("ratio_consistency", bad is None, bad)])
    rep.extra["events"] = list(xs.events)
    rep.extra["sign_bookkeeping"] = sign_events
    return rep


@dataclass(frozen=True)
class FixedPoints:
    S: object
    U: object
    exact: bool

    def to_dict(self) -> dict:
        return {"S": _fmt(self.S), "U": _fmt(self.U), "exact": self.exact,
                "convention": "roots of x^2 - s x + 1"}


def fixed_points(r1) -> FixedPoints:
    """``S, U = (r1 +- sqrt(r1^2 - 4))/2``, exact when the root is representable."""
    if _is_float(r1):
        if abs(r1) < 2:
            raise NoRealFixedPoint(f"|r1| = {abs(r1)} < 2 has no real fixed point")
        root = math.sqrt(max(r1 * r1 - 4.0, 0.0))
        return FixedPoints((r1 + root) / 2, (r1 - root) / 2, False)
    r1 = normalize(r1)
    disc = normalize(r1 * r1 - 4)
    if sign(disc) < 0:
        raise NoRealFixedPoint(f"|r1| < 2 has no real fixed point (r1 = {format_number(r1)})")
    try:
        root = sqrt_exact(disc)
    except NotRepresentable:
        f = to_float(r1)
        root = math.sqrt(max(f * f - 4.0, 0.0))
        return FixedPoints((f + root) / 2, (f - root) / 2, False)
    return FixedPoints(normalize((r1 + root) / Fraction(2)),
                       normalize((r1 - root) / Fraction(2)), True)


def _printed_fixed_points(r1) -> tuple:
    """``(1 +- sqrt(r1^2 - 4))/2``, the other normalization in circulation."""
    root = sqrt_exact(normalize(r1 * r1 - 4))
    return normalize((1 + root) / Fraction(2)), normalize((1 - root) / Fraction(2))


def generalized_recursion_check(r0, r1, p_max: int, K: int) -> Report:
    """``r[k+2p] = s_p r[k+p] - r[k]`` for ``0 <= p <= p_max``, ``0 <= k <= K``."""
    orb = iterate(r0, r1, max(2, K + 2 * p_max))
    s = recursion_sequence(orb.r1, max(1, p_max)) if orb.mode == "exact" else _float_s(orb.r1, p_max)
    r = orb.values
    bad = None
    for p in range(p_max + 1):
        for k in range(K + 1):
            if not _eq(r[k + 2 * p], _num(s[p] * r[k + p] - r[k])):
                bad = bad or (p, k)
    rep = Report([Check("generalized_recursion", bad is None, bad)], s=s[:p_max + 1] if orb.mode == "exact" else [])
    return rep


def _float_s(r1: float, K: int) -> list:
    s = [2.0, r1]
    while len(s) <= K:
        s.append(r1 * s[-1] - s[-2])
    return s[:K + 1]


def nearest_cosine(r1, p: int) -> tuple:
    """``(k, 2 cos(2 k pi / p))`` closest to *r1*."""
    f = float(r1) if _is_float(r1) else to_float(r1)
    best = min(range(p + 1), key=lambda k: abs(2 * math.cos(2 * k * math.pi / p) - f))
    return best, 2 * math.cos(2 * best * math.pi / p)


def s_p_equals_two(r1, p: int) -> bool:
    if p < 1:
        raise ValueError("p must be positive")
    if _is_float(r1):
        return abs(_float_s(r1, p)[p] - 2.0) <= FLOAT_TOL
    return recursion_sequence(normalize(r1), p)[p] == 2


def periodic_subsequence_check(r0, r1, p: int, K: Optional[int] = None) -> Report:
    """Ratios ``y_l = r[l+p]/r[l]`` against the periodic-subsequence criterion.

    If ``s_p = 2`` and ``y_0 = y_1 = 1`` the whole orbit must be
    ``p``-periodic; that implication is checked by replay.  Whether ``s_p = 2``
    alone forced ``y_0 = y_1 = 1`` is recorded as an observation only.
    """
    K = K if K is not None else 4 * p + 2
    orb = iterate(r0, r1, max(2, K + p))
    r = orb.values
    sp2 = s_p_equals_two(orb.r1, p)

    def y(l):
        if _sgn(r[l]) == 0:
            return None
        return _div(r[l + p], r[l])

    y0, y1 = y(0), y(1)
    rep = Report()
    premise = sp2 and y0 is not None and y1 is not None and _eq(y0, 1) and _eq(y1, 1)
    periodic = all(_eq(r[k + p], r[k]) for k in range(K + 1))
    rep.add(Check("periodic_if_criterion", (not premise) or periodic, None if (not premise) or periodic else p))
    for l in range(p):
        yl = y(l)
        if yl is None:
            continue
        sub_periodic = all(_eq(r[l + (n + 1) * p], r[l + n * p])
                           for n in range((K - l) // p) if l + (n + 1) * p < len(r))
        iff = sub_periodic == (sp2 and _eq(yl, 1))
        if not iff:
            rep.add(Check("subsequence_iff", False, l))
            break
    else:
        rep.add(Check("subsequence_iff", True))
    rep.extra.update(s_p_is_two=sp2, y0=None if y0 is None else _fmt(y0),
                     y1=None if y1 is None else _fmt(y1), periodic=periodic,
                     remark_observed=(not sp2) or (y0 is not None and y1 is not None
                                                   and _eq(y0, 1) and _eq(y1, 1)))
    return rep


@dataclass
class DynamicsReport:
    kind: str
    r0: object
    r1: object
    period: Optional[int] = None
    pattern: Optional[tuple] = None
    anti_period: Optional[int] = None
    rate: object = None
    certificate: str = ""
    certificate_ok: Optional[bool] = None
    mode: str = "exact"
    data: dict = field(default_factory=dict)

    @property
    def rate_numeric(self) -> Optional[float]:
        if self.rate is None:
            return None
        return self.rate if _is_float(self.rate) else to_float(self.rate)

    def to_dict(self) -> dict:
        d = {"class": self.kind, "r0": _fmt(self.r0), "r1": _fmt(self.r1),
             "period": self.period,
             "pattern": None if self.pattern is None else [_fmt(v) for v in self.pattern],
             "anti_period": self.anti_period,
             "rate": None if self.rate is None else _fmt(self.rate),
             "rate_numeric": self.rate_numeric,
             "certificate": self.certificate, "certificate_ok": self.certificate_ok,
             "mode": self.mode}
        if self.data:
            d["data"] = {k: (_fmt(v) if (is_exact(v) and not isinstance(v, int)) or v is NEG_INFINITY
                             else v) for k, v in self.data.items()}
        return d

    def __str__(self):
        extra = f"{{{self.period}}}" if self.period else ""
        return f"{self.kind}{extra}"


def _is_root(r1, d: int) -> int:
    """``+1``/``-1`` if ``r1 = +-sqrt(d)``, else 0."""
    if isinstance(r1, Quadratic) and r1.p == 0 and r1.d == d and abs(r1.q) == 1:
        return 1 if r1.q > 0 else -1
    if _is_float(r1) and abs(abs(r1) - math.sqrt(d)) <= FLOAT_TOL:
        return 1 if r1 > 0 else -1
    return 0


def family_pattern(r0, r1) -> Optional[tuple]:
    """``(period, anti_period, pattern)`` for the closed-form periodic families.

    Built from the explicit formulas, not by running the recursion, so that
    :func:`classify` can replay one against the other.
    """
    neg = lambda xs: tuple(_num(-v) for v in xs)  # noqa: E731
    if _eq(r1, 2) and _eq(r0, 2):
        return 1, None, (r0,)
    if _eq(r1, -2) and _eq(r0, 2):
        return 2, 1, (r0, r1)
    if _eq(r1, 0):
        half = (r0, r1)
        return 4, 2, half + neg(half)
    if _eq(r1, 1):
        half = (r0, r1, _num(1 - r0))
        return 6, 3, half + neg(half)
    if _eq(r1, -1):
        return 3, None, (r0, r1, _num(1 - r0))
    if _is_root(r1, 2):
        t = r1
        half = (r0, t, _num(2 - r0), _num(t * (1 - r0)))
        return 8, 4, half + neg(half)
    if _is_root(r1, 3):
        t = r1
        half = (r0, t, _num(3 - r0), _num(t * (2 - r0)), _num(3 - 2 * r0), _num(t * (1 - r0)))
        return 12, 6, half + neg(half)
    return None


def _scan_period(values: Sequence, max_p: int) -> Optional[int]:
    """Smallest ``p`` with two full repetitions visible in *values*."""
    for p in range(1, max_p + 1):
        if 3 * p > len(values):
            break
        if all(_eq(values[k + p], values[k]) for k in range(2 * p)):
            return p
    return None


def _scan_anti(values: Sequence, max_p: int) -> Optional[int]:
    for p in range(1, max_p + 1):
        if 3 * p > len(values):
            break
        if all(_eq(values[k + p], -values[k]) for k in range(2 * p)):
            return p
    return None


def classify(r0, r1, K: int = 36) -> DynamicsReport:
    """Decide the behaviour of the recursion from ``(r0, r1)``.

    Exact inputs are classified exactly; floats use tolerance ``1e-9``.  Each
    verdict carries a certificate that is replayed before it is returned.
    """
    if K < 24:
        raise ValueError("K must be at least 24")
    orb = iterate(r0, r1, K)
    r0, r1, r, mode = orb.r0, orb.r1, orb.values, orb.mode
    two = 2.0 if mode == "float" else 2

    fam = family_pattern(r0, r1)
    if fam is not None:
        p, anti, pattern = fam
        replay = iterate(pattern[0], r1, 4 * p).values
        ok = all(_eq(replay[k], pattern[k % p]) for k in range(4 * p + 1)) and s_p_equals_two(r1, p)
        ok = ok and all(_eq(r[k], pattern[k % p]) for k in range(len(r)))
        kind = "Constant" if p == 1 else "Periodic"
        return DynamicsReport(kind, r0, r1, period=p, pattern=pattern, anti_period=anti,
                              certificate="closed_form_family", certificate_ok=ok, mode=mode)

    if _eq(r1, two):
        ok = all(_eq(r[k + 1], _num((k + 1) * r1 - k * r0)) for k in range(len(r) - 1))
        return DynamicsReport("LinearGrowth", r0, r1, rate=_num(r1 - r0),
                              certificate="r[k+1] = (k+1) r1 - k r0", certificate_ok=ok,
                              mode=mode, data={"step": _num(r1 - r0)})
    if _eq(r1, -two):
        t = [_num((-1) ** k * r[k]) for k in range(len(r))]
        ok = all(_eq(t[k + 1], _num((k + 1) * t[1] - k * t[0])) for k in range(len(t) - 1))
        return DynamicsReport("SignAlternatingLinear", r0, r1, rate=_num(t[1] - t[0]),
                              certificate="(-1)^k r[k] is arithmetic", certificate_ok=ok,
                              mode=mode, data={"step": _num(t[1] - t[0])})

    big = (r1 > 2.0 if mode == "float" else sign(normalize(r1 - 2)) > 0)
    small = (r1 < -2.0 if mode == "float" else sign(normalize(r1 + 2)) < 0)
    if big or small:
        s = r1 if big else _num(-r1)
        fp = fixed_points(s)
        x1 = None
        if _sgn(r[1]) != 0:
            x1 = _div(r[2], r[1])
            if small:
                x1 = _num(-x1)
        kind = "ExponentialGrowth" if big else "SignAlternatingExponential"
        if x1 is not None and _eq(x1, fp.U):
            return DynamicsReport(kind, r0, r1, rate=fp.U, certificate="x1 = U (unstable fixed point)",
                                  certificate_ok=True, mode=mode, data={"x1": x1})
        ok, how = None, "fixed point not exact; float rate only"
        if fp.exact and x1 is not None:
            try:
                ok = convergence_certificate(x1, s, K).ok
                how = "one-stage convergence certificate"
            except PreconditionFailed as exc:
                ok, how = None, str(exc)
        elif x1 is None:
            # r1 = 0 never happens here, r[1] == r1
            ok, how = None, "r_1 = 0"
        return DynamicsReport(kind, r0, r1, rate=fp.S, certificate=how, certificate_ok=ok,
                              mode=mode, data={} if x1 is None else {"x1": x1})

    # |r1| < 2 outside the closed-form families
    p = _scan_period(r, K // 3)
    anti = _scan_anti(r, K // 3)
    data = {"empirical_period": p, "empirical_anti_period": anti, "window": len(r)}
    if mode == "float":
        data["nearest_cosine"] = [nearest_cosine(r1, q)[1] for q in ((p,) if p else ())]
    return DynamicsReport("Unresolved", r0, r1, certificate="empirical period scan",
                          certificate_ok=None, mode=mode, data=data)


def region(x, fp: FixedPoints) -> str:
    """``IV = [-inf, 0)``, ``III = [0, U)``, ``II = (U, S)``, ``I = (S, inf)``."""
    if x is NEG_INFINITY or sign(x) < 0:
        return "IV"
    if x == fp.U:
        return "U"
    if x == fp.S:
        return "S"
    if sign(normalize(x - fp.U)) < 0:
        return "III"
    if sign(normalize(x - fp.S)) < 0:
        return "II"
    return "I"


_DIRECTION = {"IV": 1, "II": 1, "III": -1, "I": -1, "U": 0, "S": 0}


def _step_sign(a, b) -> int:
    if a is NEG_INFINITY:
        return 0 if b is NEG_INFINITY else 1
    if b is NEG_INFINITY:
        return -1
    return sign(normalize(b - a))


def convergence_certificate(x1, s1, K: int = 60) -> Report:
    """Exact monotonicity and convergence-rate checks for ``x -> s1 - 1/x``.

    Every step is compared with the monotone-region table and with the sign
    of ``-F(s1, x)/x`` where ``F(s, x) = x^2 - s x + 1``.  Orbits starting in
    ``(U, S)`` are checked against the left estimate, all others against the
    right estimate from the first index with ``x_K > S``.  The left estimate
    is an equality when ``k = 1`` (``S - x[K+1] = (S - x[K])/(S x[K])``), so
    it is required strictly only for ``k >= 2``.
    """
    if _is_float(s1) or (x1 is not NEG_INFINITY and _is_float(x1)):
        raise PreconditionFailed("convergence certificates need exact input")
    s1 = normalize(s1)
    if sign(normalize(s1 - 2)) < 0:
        raise PreconditionFailed(f"s1 = {format_number(s1)} < 2")
    fp = fixed_points(s1)
    if not fp.exact:
        raise PreconditionFailed("fixed points are not exactly representable")
    S, U = fp.S, fp.U
    if x1 is not NEG_INFINITY and normalize(x1) == U:
        raise PreconditionFailed("x1 = U is the unstable fixed point")
    orb = one_stage(x1, s1, K)
    xs = orb.values
    rep = Report()

    table_bad = f_bad = contr_bad = None
    for k in range(len(xs) - 1):
        a, b = xs[k], xs[k + 1]
        step = _step_sign(a, b)
        if step != _DIRECTION[region(a, fp)] and table_bad is None:
            table_bad = k + 1
        if a is not NEG_INFINITY and sign(a) != 0:
            F = normalize(a * a - s1 * a + 1)
            if step != -sign(F) * sign(a) and f_bad is None:
                f_bad = k + 1
            if b != normalize(_div(a - S, S * a) + S) and contr_bad is None:
                contr_bad = k + 1
    rep.add(Check("monotone_regions", table_bad is None, table_bad))
    rep.add(Check("direction_matches_F", f_bad is None, f_bad))
    rep.add(Check("contraction_identity", contr_bad is None, contr_bad))

    start = region(xs[0], fp)
    rep.extra.update(S=S, U=U, region=start, events=list(orb.events))
    if start == "S":
        rep.add(Check("fixed", all(x == S for x in xs)))
        return rep
    if start == "II":
        strict_bad = k1_bad = None
        equal_k1 = True
        for Kx in range(len(xs)):
            xK = xs[Kx]
            factor = _div(1, S * xK)
            bound = normalize(S - xK)
            for k in range(1, len(xs) - Kx):
                bound = normalize(bound * factor)
                gap = normalize(S - xs[Kx + k])
                c = sign(normalize(gap - bound))
                if k == 1:
                    equal_k1 = equal_k1 and c == 0
                    if c > 0 and k1_bad is None:
                        k1_bad = (Kx + 1, k)
                elif c >= 0 and strict_bad is None:
                    strict_bad = (Kx + 1, k)
        inc = all(sign(normalize(xs[k + 1] - xs[k])) > 0 and sign(normalize(S - xs[k + 1])) > 0
                  for k in range(len(xs) - 1))
        rep.add(Check("increasing_below_S", inc))
        rep.add(Check("leftconv_k1", k1_bad is None, k1_bad, {"equality": equal_k1}))
        rep.add(Check("leftconv", strict_bad is None, strict_bad))
        return rep

    K0 = next((k for k, x in enumerate(xs)
               if x is not NEG_INFINITY and sign(normalize(x - S)) > 0), None)
    rep.add(Check("enters_above_S", K0 is not None, None if K0 is not None else len(xs)))
    if K0 is None:
        return rep
    rep.extra["K"] = K0 + 1
    dec = all(sign(normalize(xs[k] - xs[k + 1])) > 0 and sign(normalize(xs[k + 1] - S)) > 0
              for k in range(K0, len(xs) - 1))
    rep.add(Check("decreasing_above_S", dec))
    q = _div(1, S * S)
    bad = None
    for Kx in range(K0, len(xs)):
        bound = normalize(xs[Kx] - S)
        for k in range(1, len(xs) - Kx):
            bound = normalize(bound * q)
            if sign(normalize(xs[Kx + k] - S - bound)) >= 0 and bad is None:
                bad = (Kx + 1, k)
    rep.add(Check("rightconv", bad is None, bad))
    return rep


def null_set_prefix(s1, depth: int) -> list:
    """``y_1 .. y_depth`` with ``y_1 = 1/s1`` and ``y[k+1] = 1/(s1 - y[k])``.

    These are the starting values whose orbit reaches 0.  Raises
    :class:`AssertionError` if they fail to increase strictly inside ``[1/s1, U)``.
    """
    s1 = normalize(s1)
    if sign(normalize(s1 - 2)) < 0:
        raise PreconditionFailed("the null set is described for s1 >= 2")
    fp = fixed_points(s1)
    ys = []
    y = 0
    for _ in range(depth):
        y = _div(1, s1 - y)
        ys.append(y)
    assert ys[0] == _div(1, s1), "y_1 differs from 1/s1"
    assert all(sign(normalize(b - a)) > 0 for a, b in zip(ys, ys[1:])), "not increasing"
    if fp.exact:
        assert all(sign(normalize(fp.U - y)) > 0 for y in ys), "reached U"
    return ys


def frieze_growth_bound_check(q, l_max: int = 10, delta=Fraction(1, 10)) -> Report:
    """``s_kappa S^l < s_(kappa+l) < s_kappa (S + delta)^l`` for ``l = 1 .. l_max``.

    ``S`` is the larger root of ``x^2 - s1 x + 1``.  ``kappa`` is the least
    index with ``S^(-2(kappa-1)) (s1 - S - 1) <= delta``.  The report also
    carries the same inequality evaluated with ``S = (1 + sqrt(s1^2 - 4))/2``
    and the two-sided bound ``s_kappa (S - delta)^l < s_(kappa+l) < s_kappa S^l``.
    """
    s1 = growth_coefficient(q)
    if isinstance(s1, Quadratic):
        raise PreconditionFailed("growth bound needs a rational principal coefficient")
    if s1 <= 2:
        raise PreconditionFailed(f"s1 = {format_number(s1)} is not greater than 2")
    delta = normalize(Fraction(str(delta)) if isinstance(delta, float) else delta)
    fp = fixed_points(s1)

    def kappa_for(S):
        Sf, c = to_float(S), to_float(normalize(s1 - S - 1))
        k = 1
        while Sf ** (-2 * (k - 1)) * c > float(delta):
            k += 1
        return k

    def run(S, kappa, lo_base, hi_base):
        seq = recursion_sequence(s1, kappa + l_max)
        sk = seq[kappa]
        lo_bad = hi_bad = None
        lo_pow = hi_pow = 1
        for l in range(1, l_max + 1):
            lo_pow = normalize(lo_pow * lo_base)
            hi_pow = normalize(hi_pow * hi_base)
            v = seq[kappa + l]
            if not sign(normalize(v - sk * lo_pow)) > 0 and lo_bad is None:
                lo_bad = l
            if not sign(normalize(sk * hi_pow - v)) > 0 and hi_bad is None:
                hi_bad = l
        return lo_bad, hi_bad

    S = fp.S
    kappa = kappa_for(S)
    lo_bad, hi_bad = run(S, kappa, S, normalize(S + delta))
    rep = Report(s=recursion_sequence(s1, kappa + l_max))
    rep.add(Check("lower_bound", lo_bad is None, lo_bad))
    rep.add(Check("upper_bound", hi_bad is None, hi_bad))

    Sp, _ = _printed_fixed_points(s1)
    kp = kappa_for(Sp)
    plo, phi = run(Sp, kp, Sp, normalize(Sp + delta))
    # the corrected two-sided bound needs its own (larger) kappa
    ck = next((k for k in range(1, 65)
               if run(S, k, normalize(S - delta), S) == (None, None)), None)
    clo, chi = run(S, ck or kappa, normalize(S - delta), S)
    rep.extra.update(
        convention="S = (s1 + sqrt(s1^2 - 4))/2, larger root of x^2 - s1 x + 1",
        S=S, kappa=kappa, delta=delta,
        printed_convention={"S": Sp, "kappa": kp, "lower_ok": plo is None,
                            "upper_ok": phi is None,
                            "first_failure": {"lower": plo, "upper": phi}},
        corrected_bound={"statement": "s_kappa (S - delta)^l < s_(kappa+l) < s_kappa S^l",
                         "kappa": ck, "lower_ok": clo is None, "upper_ok": chi is None},
    )
    return rep
