"""Depth-n prefractals on the m-adic grid and exact membership decisions.

Two independent constructions of the same square sets are provided: the
geometric route (each square spawns one child per generator-lattice
shift) and the digit route (keep exactly the index pairs whose digitwise
sums stay inside the alphabet).  `equivalence_check` compares them as
sets.  Membership of an exact rational point in the limit set is decided
by searching the finite graph of remainder pairs for a reachable cycle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ResourceError
from .radix import DigitSystem, ValueInterval, frac_digit_choices

__all__ = [
    "DEFAULT_MAX_SQUARES",
    "GeneratorLattice",
    "GridSquare",
    "Prefractal",
    "MembershipAutomaton",
    "lattice",
    "lattice_cardinality",
    "index_bounds",
    "unit_square",
    "iterate",
    "ifs_prefractal",
    "prefractal_by_digits",
    "equivalence_check",
    "member",
    "covers_point",
    "prefractal_to_json",
    "prefractal_from_json",
]

DEFAULT_MAX_SQUARES = 10**7

# lexicographic sort key i * 2^32 + j; safe while |index| < 2^31
_KEY_SHIFT = np.int64(2) ** 32


@dataclass(frozen=True)
class GeneratorLattice:
    """Shift pairs (k, h) with k, h and k + h all inside the digit alphabet."""

    system: DigitSystem
    points: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return self.system.m

    @property
    def b(self) -> int:
        return self.system.b

    def __len__(self) -> int:
        return len(self.points)


class GridSquare(NamedTuple):
    """The closed cell [i, i+1]/m^depth x [j, j+1]/m^depth."""

    depth: int
    i: int
    j: int

    def bounds(self, system: DigitSystem) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(x0, x1, y0, y1) of the cell, exact."""
        side = Fraction(1, system.m**self.depth)
        return (self.i * side, (self.i + 1) * side, self.j * side, (self.j + 1) * side)


def lattice(m: int, b: int = 0) -> GeneratorLattice:
    """Enumerate the generator lattice for the (m, b) digit system."""
    system = DigitSystem(m, b)
    lo, hi = system.min_digit, system.max_digit
    pts = [
        (k, h)
        for k in range(lo, hi + 1)
        for h in range(lo, hi + 1)
        if lo <= k + h <= hi
    ]
    pts.sort()
    return GeneratorLattice(system, tuple(pts))


def lattice_cardinality(m: int, b: int = 0) -> int:
    """Closed form m(m+1)/2 + b(m-1-b) for the generator lattice size."""
    DigitSystem(m, b)
    return m * (m + 1) // 2 + b * (m - 1 - b)


def index_bounds(system: DigitSystem, depth: int) -> tuple[int, int]:
    """Range of indices with a depth-n digit decomposition inside the alphabet."""
    g = (system.m**depth - 1) // (system.m - 1)  # 1 + m + ... + m^(depth-1)
    return -system.b * g, (system.m - 1 - system.b) * g


class Prefractal:
    """A depth-n set of grid squares, lex-sorted by (i, j) and duplicate-free.

    Square (i, j) denotes [i/m^n, (i+1)/m^n] x [j/m^n, (j+1)/m^n].
    Indices may be negative in balanced systems.
    """

    __slots__ = ("system", "depth", "squares", "_keys")

    def __init__(self, system: DigitSystem, depth: int, squares):
        if depth < 0:
            raise DomainError(f"depth must be nonnegative, got {depth}")
        arr = np.asarray(squares, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise DomainError("squares must be an array of (i, j) pairs")
        lo, hi = index_bounds(system, depth)
        if arr.size and (int(arr.min()) < lo or int(arr.max()) > hi):
            raise DomainError(f"square index outside depth-{depth} range [{lo}, {hi}]")
        keys = arr[:, 0] * _KEY_SHIFT + arr[:, 1]
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        if keys.size and bool(np.any(keys[1:] == keys[:-1])):
            raise DomainError("duplicate grid squares")
        self.system = system
        self.depth = depth
        self.squares = arr[order]
        self._keys = keys

    def __len__(self) -> int:
        return int(self._keys.size)

    def __iter__(self):
        return (tuple(row) for row in self.squares.tolist())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Prefractal)
            and self.system == other.system
            and self.depth == other.depth
            and np.array_equal(self._keys, other._keys)
        )

    def __repr__(self) -> str:
        return f"Prefractal(system={self.system}, depth={self.depth}, squares={len(self)})"

    def has_square(self, i: int, j: int) -> bool:
        key = np.int64(i) * _KEY_SHIFT + np.int64(j)
        pos = int(np.searchsorted(self._keys, key))
        return pos < len(self) and self._keys[pos] == key


def unit_square(system: DigitSystem) -> Prefractal:
    """The depth-0 prefractal: the single square (0, 0)."""
    return Prefractal(system, 0, [(0, 0)])


def iterate(p: Prefractal, lat: GeneratorLattice,
            max_squares: int | None = DEFAULT_MAX_SQUARES) -> Prefractal:
    """One construction step: every square spawns one child per lattice shift.

    The child of square (i, j) under shift (k, h) is (i + k*m^depth,
    j + h*m^depth) at depth + 1.  Distinct parents and shifts never
    collide; a duplicate aborts rather than being silently merged.
    """
    if p.system != lat.system:
        raise DomainError(f"prefractal system {p.system} does not match lattice {lat.system}")
    expected = len(p) * len(lat)
    if max_squares is not None and expected > max_squares:
        raise ResourceError(
            f"depth {p.depth + 1} needs {expected} squares, over the cap {max_squares}"
        )
    shifts = np.asarray(lat.points, dtype=np.int64) * p.system.m**p.depth
    kids = (p.squares[:, None, :] + shifts[None, :, :]).reshape(-1, 2)
    return Prefractal(p.system, p.depth + 1, kids)


def ifs_prefractal(system: DigitSystem, n: int,
                   max_squares: int | None = DEFAULT_MAX_SQUARES) -> Prefractal:
    """Iterate the unit square n times through the generator lattice."""
    if n < 0:
        raise DomainError(f"depth must be nonnegative, got {n}")
    lat = lattice(system.m, system.b)
    p = unit_square(system)
    for _ in range(n):
        p = iterate(p, lat, max_squares)
    return p


def _digit_matrix(vals: np.ndarray, system: DigitSystem, n: int) -> np.ndarray:
    """Depth-n alphabet digits of each value, least significant first."""
    v = vals.copy()
    out = np.empty((len(vals), n), dtype=np.int8)
    for t in range(n):
        r = v % system.m
        d = np.where(r <= system.max_digit, r, r - system.m)
        out[:, t] = d
        v = (v - d) // system.m
    if bool(np.any(v)):
        raise DomainError(f"value not representable in {n} digits of base {system}")
    return out


def prefractal_by_digits(system: DigitSystem, n: int,
                         max_squares: int | None = DEFAULT_MAX_SQUARES) -> Prefractal:
    """Depth-n squares selected by the digit condition alone.

    Every representable index is decomposed into its n alphabet digits;
    a pair (i, j) is kept iff each positionwise digit sum stays inside
    the alphabet.  This scans all m^n x m^n index pairs, independently of
    the geometric iteration.
    """
    if n < 0:
        raise DomainError(f"depth must be nonnegative, got {n}")
    if n == 0:
        return unit_square(system)
    if max_squares is not None:
        expected = lattice_cardinality(system.m, system.b) ** n
        if expected > max_squares or system.m ** (2 * n) > 32 * max_squares:
            raise ResourceError(f"digit scan at depth {n} exceeds the cap {max_squares}")
    lo, hi = index_bounds(system, n)
    vals = np.arange(lo, hi + 1, dtype=np.int64)
    digits = _digit_matrix(vals, system, n)
    d_lo, d_hi = system.min_digit, system.max_digit
    rows_i = []
    rows_j = []
    block = 4096  # bound the (block x m^n) pair mask
    for start in range(0, len(vals), block):
        da = digits[start : start + block]
        ok = np.ones((da.shape[0], len(vals)), dtype=bool)
        for t in range(n):
            s = da[:, t : t + 1] + digits[:, t][None, :]
            ok &= (s >= d_lo) & (s <= d_hi)
        bi, bj = np.nonzero(ok)
        rows_i.append(vals[bi + start])
        rows_j.append(vals[bj])
    squares = np.column_stack([np.concatenate(rows_i), np.concatenate(rows_j)])
    return Prefractal(system, n, squares)


def equivalence_check(system: DigitSystem, n: int,
                      max_squares: int | None = DEFAULT_MAX_SQUARES) -> bool:
    """Whether the geometric and digit constructions agree as square sets."""
    return ifs_prefractal(system, n, max_squares) == prefractal_by_digits(system, n, max_squares)


class MembershipAutomaton:
    """Memoized search over remainder pairs deciding limit-set membership.

    From state (rx, ry), a digit pair (dx, dy) with dx + dy inside the
    alphabet leads to (m*rx - dx, m*ry - dy); both remainders must stay
    in the value interval.  The start point belongs to the limit set
    exactly when an infinite digit path exists, i.e. when its state can
    reach a cycle of the finite reachable graph.  Decided by iterative
    three-color depth-first search.
    """

    _GRAY, _BLACK = 1, 2

    def __init__(self, system: DigitSystem, max_states: int = 10**6):
        self.system = system
        self.max_states = max_states
        self._interval = ValueInterval.of(system)
        self._alive: dict[tuple[Fraction, Fraction], bool] = {}
        self._color: dict[tuple[Fraction, Fraction], int] = {}
        self._choices: dict[Fraction, list[tuple[int, Fraction]]] = {}

    def states(self) -> dict[tuple[Fraction, Fraction], str]:
        """Visited remainder pairs mapped to 'alive' or 'dead'."""
        return {s: ("alive" if ok else "dead") for s, ok in self._alive.items()}

    def _digit_choices(self, r: Fraction):
        got = self._choices.get(r)
        if got is None:
            got = self._choices[r] = frac_digit_choices(r, self.system)
        return got

    def _successors(self, state):
        rx, ry = state
        out = []
        for dx, nx in self._digit_choices(rx):
            for dy, ny in self._digit_choices(ry):
                if self.system.has_digit(dx + dy):
                    out.append((nx, ny))
        return out

    def decide(self, x, y) -> bool:
        """Exact membership of the rational point (x, y)."""
        x, y = Fraction(x), Fraction(y)
        if not (self._interval.contains(x) and self._interval.contains(y)):
            return False
        root = (x, y)
        known = self._alive.get(root)
        if known is not None:
            return known
        color = self._color
        alive = self._alive
        color[root] = self._GRAY
        stack = [[root, iter(self._successors(root)), False]]
        while stack:
            frame = stack[-1]
            pushed = False
            if not frame[2]:
                for nxt in frame[1]:
                    c = color.get(nxt)
                    if c == self._GRAY:  # cycle through the current path
                        frame[2] = True
                        break
                    if c == self._BLACK:
                        if alive[nxt]:
                            frame[2] = True
                            break
                        continue
                    if len(color) >= self.max_states:
                        raise ResourceError(
                            f"membership search exceeded {self.max_states} states"
                        )
                    color[nxt] = self._GRAY
                    stack.append([nxt, iter(self._successors(nxt)), False])
                    pushed = True
                    break
            if pushed:
                continue
            node, _, found = stack.pop()
            color[node] = self._BLACK
            alive[node] = found
            if stack and found:
                stack[-1][2] = True
        return alive[root]


def member(x, y, system: DigitSystem, max_states: int = 10**6) -> bool:
    """Exact membership of the rational point (x, y) in the limit set."""
    return MembershipAutomaton(system, max_states).decide(x, y)


def covers_point(p: Prefractal, x, y) -> bool:
    """Whether (x, y) lies in the closed union of the prefractal squares."""
    scale = p.system.m**p.depth

    def candidates(t):
        t = Fraction(t) * scale
        f = math.floor(t)
        return (f, f - 1) if f == t else (f,)

    return any(p.has_square(i, j) for i in candidates(x) for j in candidates(y))


def prefractal_to_json(p: Prefractal) -> str:
    """One-line JSON export, squares lex-sorted, integers only."""
    payload = {
        "m": p.system.m,
        "b": p.system.b,
        "depth": p.depth,
        "count": len(p),
        "squares": p.squares.tolist(),
    }
    return json.dumps(payload, separators=(",", ":"))


def prefractal_from_json(text: str) -> Prefractal:
    """Parse and validate a prefractal JSON export."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"bad prefractal JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise DomainError("bad prefractal JSON: expected an object")
    try:
        system = DigitSystem(payload["m"], payload["b"])
        depth = payload["depth"]
        count = payload["count"]
        squares = payload["squares"]
    except KeyError as exc:
        raise DomainError(f"bad prefractal JSON: missing field {exc}") from None
    if not isinstance(depth, int) or not isinstance(count, int):
        raise DomainError("bad prefractal JSON: depth and count must be integers")
    p = Prefractal(system, depth, squares)
    if len(p) != count:
        raise DomainError(f"square count {len(p)} does not match declared {count}")
    return p
