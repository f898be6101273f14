"""The lattice ``(m[i, j])`` of a periodic tame frieze and its structural checks.

Indexing follows the usual convention: ``m[i, i] = a_i`` is the quiddity row,
``m[i, i-1] = 1`` and ``m[i, i-2] = 0`` are the boundary rows.  Every entry is
produced by the three-term rule ``m[i, j] = a_j m[i, j-1] - m[i, j-2]`` run
forwards and backwards from the boundary rows, which covers the whole plane
(including the sign-reversed mirror image below the row of zeros).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .exact import Number, format_number, is_integer, normalize, parse_number

__all__ = [
    "FriezeLattice",
    "FriezeClass",
    "WindowReport",
    "DepthTooSmall",
    "as_quiddity",
    "parse_quiddity",
    "format_quiddity",
    "is_positive_integer_infinite",
    "entry_via_determinant",
    "verify_window",
    "classify",
    "render_text",
    "window_to_tsv",
    "parse_tsv",
    "TableLattice",
]


class DepthTooSmall(ValueError):
    pass


def as_quiddity(entries: Iterable) -> tuple:
    q = tuple(normalize(a) for a in entries)
    if not q:
        raise ValueError("a quiddity sequence needs at least one entry")
    return q


def parse_quiddity(text: str) -> tuple:
    """``"1,2,6"`` -> ``(1, 2, 6)``; entries use the exact number grammar."""
    return as_quiddity(parse_number(tok) for tok in text.split(",") if tok.strip())


def format_quiddity(q: Sequence, ascii: bool = False) -> str:
    return ",".join(format_number(a, ascii=ascii) for a in q)


def is_positive_integer_infinite(q: Sequence) -> bool:
    """Positive integers with no two cyclically consecutive ones."""
    q = as_quiddity(q)
    if not all(is_integer(a) and a > 0 for a in q):
        return False
    n = len(q)
    return not any(q[i] == 1 and q[(i + 1) % n] == 1 for i in range(n))


class FriezeLattice:
    """Memoized lattice of the frieze generated by a quiddity sequence.

    Entries depend on ``i`` only through ``i mod n``, so each diagonal class
    keeps two growing lists: ``_fwd[r][t] = m[i, i-2+t]`` and
    ``_bwd[r][t] = m[i, i-1-t]``.
    """

    def __init__(self, quiddity: Sequence):
        self.quiddity = as_quiddity(quiddity)
        self.n = len(self.quiddity)
        self._fwd = {r: [0, 1] for r in range(self.n)}
        self._bwd = {r: [1, 0] for r in range(self.n)}
        self._lock = threading.Lock()

    def a(self, j: int) -> Number:
        return self.quiddity[(j - 1) % self.n]

    def entry(self, i: int, j: int) -> Number:
        r = (i - 1) % self.n
        base = r + 1
        d = j - i
        if d >= -2:
            t = d + 2
            vals = self._fwd[r]
            if t >= len(vals):
                with self._lock:
                    while len(vals) <= t:
                        k = len(vals)
                        vals.append(normalize(self.a(base - 2 + k) * vals[k - 1] - vals[k - 2]))
            return vals[t]
        t = -1 - d
        vals = self._bwd[r]
        if t >= len(vals):
            with self._lock:
                while len(vals) <= t:
                    k = len(vals)
                    vals.append(normalize(self.a(base + 1 - k) * vals[k - 1] - vals[k - 2]))
        return vals[t]

    __call__ = entry

    def row(self, d: int, i0: int, count: int) -> list:
        """Entries ``m[i, i+d]`` for ``i = i0 .. i0+count-1``."""
        return [self.entry(i, i + d) for i in range(i0, i0 + count)]

    def window(self, i0: int, j0: int, h: int, w: int) -> list:
        return [(i, j, self.entry(i, j))
                for i in range(i0, i0 + h) for j in range(j0, j0 + w)]

    def __repr__(self):
        return f"FriezeLattice(({format_quiddity(self.quiddity)}))"


class TableLattice:
    """Lattice backed by an explicit table of entries (e.g. a parsed TSV window)."""

    def __init__(self, entries: dict):
        self.entries = dict(entries)

    def entry(self, i: int, j: int) -> Number:
        try:
            return self.entries[i, j]
        except KeyError:
            raise KeyError(f"entry ({i}, {j}) is not in the table") from None

    __call__ = entry


def entry_via_determinant(q: Sequence, i: int, j: int) -> Number:
    """Tridiagonal determinant with diagonal ``a_i..a_j`` and unit off-diagonals."""
    q = as_quiddity(q)
    n = len(q)
    if j < i - 2:
        raise ValueError("entry_via_determinant needs j >= i - 2")
    prev, cur = 0, 1
    for k in range(i, j + 1):
        prev, cur = cur, normalize(q[(k - 1) % n] * cur - prev)
    return cur if j >= i - 1 else prev


@dataclass
class WindowReport:
    diamond_ok: bool = True
    tame_ok: bool = True
    mirror_ok: bool = True
    ptolemy_ok: bool = True
    counterexamples: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.diamond_ok and self.tame_ok and self.mirror_ok and self.ptolemy_ok

    def to_checks(self) -> list:
        out = []
        for name in ("diamond", "tame", "mirror", "ptolemy"):
            cx = self.counterexamples.get(name)
            out.append({"name": name, "ok": getattr(self, f"{name}_ok"),
                        "counterexample": list(cx) if cx is not None else None})
        return out


def _det3(m) -> Number:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def verify_window(L, i0: int, j0: int, h: int, w: int) -> WindowReport:
    """Exact check of the lattice rules on ``i0 <= i < i0+h``, ``j0 <= j < j0+w``.

    Diamonds and 3x3 tameness blocks are checked whenever the whole block lies
    in the window; the mirror identity for every cell below the zero row; the
    splitting rule ``m[i,j] = m[i,k-1] m[k,j] - m[i,k-2] m[k+1,j]`` for every
    cell with ``i <= j`` and every ``i <= k <= j+1``.  The first failure of each
    kind is recorded as coordinates.  Instances that need an entry the lattice
    does not have (a :class:`TableLattice` window) are skipped and not counted.
    """
    if h < 3 or w < 3:
        raise ValueError("window must be at least 3x3")
    m = L.entry
    rep = WindowReport()
    counts = {"diamond": 0, "tame": 0, "mirror": 0, "ptolemy": 0}

    def fail(name, coords):
        setattr(rep, f"{name}_ok", False)
        rep.counterexamples.setdefault(name, coords)

    for i in range(i0, i0 + h - 1):
        for j in range(j0, j0 + w - 1):
            try:
                bad = m(i, j) * m(i + 1, j + 1) - m(i, j + 1) * m(i + 1, j) != 1
            except KeyError:
                continue
            counts["diamond"] += 1
            if bad:
                fail("diamond", (i, j))
    for i in range(i0, i0 + h - 2):
        for j in range(j0, j0 + w - 2):
            try:
                block = [[m(i + c, j + r) for c in range(3)] for r in range(3)]
            except KeyError:
                continue
            counts["tame"] += 1
            if _det3(block) != 0:
                fail("tame", (i, j))
    for i in range(i0, i0 + h):
        for j in range(j0, j0 + w):
            if j - i < -2:
                try:
                    bad = m(i, j) != -m(j + 2, i - 2)
                except KeyError:
                    bad = None
                if bad is not None:
                    counts["mirror"] += 1
                    if bad:
                        fail("mirror", (i, j))
            if i <= j:
                for k in range(i, j + 2):
                    try:
                        bad = m(i, j) != m(i, k - 1) * m(k, j) - m(i, k - 2) * m(k + 1, j)
                    except KeyError:
                        continue
                    counts["ptolemy"] += 1
                    if bad:
                        fail("ptolemy", (i, k, j))
    rep.counts = counts
    return rep


@dataclass(frozen=True)
class FriezeClass:
    """Depth-bounded verdict; every infinite verdict is provisional."""

    kind: str  # Finite, InfinitePositiveInteger, InfiniteReal, IndeterminateAtDepth
    order: Optional[int] = None
    depth: Optional[int] = None

    @property
    def provisional(self) -> bool:
        return self.kind != "Finite"

    def to_dict(self) -> dict:
        return {"class": self.kind, "order": self.order, "depth": self.depth,
                "provisional": self.provisional}


def classify(q: Sequence, depth: int) -> FriezeClass:
    """Scan ``m[1, j]`` for ``j <= depth`` looking for the closing rows of 1's and 0's."""
    L = q if isinstance(q, FriezeLattice) else FriezeLattice(q)
    n = L.n
    if depth < n:
        raise DepthTooSmall(f"depth {depth} is smaller than the period {n}")
    for js in range(1, depth + 1):
        if L.entry(1, js) == 0 and L.entry(1, js - 1) == 1:
            d = js - 1
            if all(L.entry(i, i + d) == 0 and L.entry(i, i + d - 1) == 1
                   for i in range(1, n + 1)):
                return FriezeClass("Finite", order=js + 1)
    zero_seen = False
    all_pos_int = True
    for i in range(1, n + 1):
        for d in range(0, depth):
            v = L.entry(i, i + d)
            if v == 0:
                zero_seen = True
            if not (is_integer(v) and v > 0):
                all_pos_int = False
    if all_pos_int:
        return FriezeClass("InfinitePositiveInteger", depth=depth)
    if zero_seen:
        return FriezeClass("IndeterminateAtDepth", depth=depth)
    return FriezeClass("InfiniteReal", depth=depth)


def render_text(L, rows: int, cols: Optional[int] = None, i0: int = 1,
                first_row: int = -2, ascii: bool = False) -> str:
    """Diamond-aligned text of rows ``d = first_row .. first_row+rows-1``.

    Row ``d`` holds ``m[i, i+d]``; cell ``(i, j)`` sits at horizontal slot
    ``i + j`` so consecutive rows interleave as in a hand-drawn frieze.
    """
    n = getattr(L, "n", 1)
    cols = cols if cols is not None else max(2 * n, 6)
    cells = []
    for d in range(first_row, first_row + rows):
        for i in range(i0, i0 + cols):
            cells.append((i, i + d, format_number(L.entry(i, i + d), ascii=ascii)))
    width = max(len(s) for _, _, s in cells) + 1
    base = min(i + j for i, j, _ in cells)
    lines = []
    for d in range(first_row, first_row + rows):
        slots = {}
        for i in range(i0, i0 + cols):
            slots[2 * i + d - base] = format_number(L.entry(i, i + d), ascii=ascii)
        line = "".join(slots.get(x, "").rjust(width) for x in range(max(slots) + 1))
        lines.append(line.rstrip())
    return "\n".join(lines) + "\n"


def window_to_tsv(entries: Iterable, ascii: bool = False) -> str:
    lines = ["i\tj\tvalue"]
    lines += [f"{i}\t{j}\t{format_number(v, ascii=ascii)}" for i, j, v in entries]
    return "\n".join(lines) + "\n"


def parse_tsv(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#") or line.startswith("i\t"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected i<TAB>j<TAB>value, got {line!r}")
        out[int(parts[0]), int(parts[1])] = parse_number(parts[2])
    return out
