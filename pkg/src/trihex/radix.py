"""Exact signed-digit numerals: standard base m and b-balanced base m.

A digit system fixes a radix m >= 2 and a balance offset b, giving the
digit alphabet [-b, m-1-b].  b = 0 is the ordinary alphabet 0..m-1;
b >= 1 shifts it to straddle zero (balanced ternary is m=3, b=1).
Digit strings are finite, exponent-indexed numerals with a radix point;
every operation here is exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "DigitSystem",
    "DigitString",
    "ValueInterval",
    "int_to_digits",
    "digits_to_rational",
    "add",
    "carry_free",
    "frac_digit_choices",
    "expansions",
    "format_numeral",
    "parse_numeral",
]


@dataclass(frozen=True)
class DigitSystem:
    """Radix m with digit alphabet [-b, m-1-b]."""

    m: int
    b: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or not isinstance(self.b, int):
            raise DomainError("radix and balance must be integers")
        if self.m < 2:
            raise DomainError(f"radix must be at least 2, got m={self.m}")
        if self.b != 0 and (self.m <= 2 or not 1 <= self.b <= self.m // 2):
            raise DomainError(
                f"balance must be 0, or 1 <= b <= m/2 with m > 2; got m={self.m}, b={self.b}"
            )

    @property
    def min_digit(self) -> int:
        return -self.b

    @property
    def max_digit(self) -> int:
        return self.m - 1 - self.b

    def digits(self) -> range:
        """The alphabet as an integer range."""
        return range(self.min_digit, self.max_digit + 1)

    def has_digit(self, d: int) -> bool:
        return self.min_digit <= d <= self.max_digit

    def digit_for(self, n: int) -> int:
        """The unique alphabet member congruent to n modulo m."""
        r = n % self.m
        return r if r <= self.max_digit else r - self.m

    def interval(self) -> "ValueInterval":
        return ValueInterval.of(self)

    def __str__(self) -> str:
        return f"{self.m}b{self.b}"


@dataclass(frozen=True)
class ValueInterval:
    """Closed range of values of pure-fractional digit strings.

    All-minimal digits sum to -b/(m-1) and all-maximal digits to
    (m-1-b)/(m-1); for b = 0 the interval is [0, 1].
    """

    lo: Fraction
    hi: Fraction

    @classmethod
    def of(cls, system: DigitSystem) -> "ValueInterval":
        return cls(
            Fraction(-system.b, system.m - 1),
            Fraction(system.m - 1 - system.b, system.m - 1),
        )

    def contains(self, r) -> bool:
        return self.lo <= r <= self.hi


class DigitString:
    """Immutable sparse numeral: a finite map exponent -> digit plus its system.

    Exponent e contributes digit * m**e.  Absent exponents are zero and
    explicit zeros are never stored, so equal values compare equal.
    """

    __slots__ = ("system", "_digits")

    def __init__(self, system: DigitSystem, digits=None):
        table = {}
        if digits:
            items = digits.items() if hasattr(digits, "items") else digits
            for e, d in items:
                if not isinstance(e, int) or not isinstance(d, int):
                    raise DomainError("exponents and digits must be integers")
                if not system.has_digit(d):
                    raise DomainError(f"digit {d} outside alphabet of base {system}")
                if d != 0:
                    table[e] = d
        self.system = system
        self._digits = table

    def digit(self, e: int) -> int:
        return self._digits.get(e, 0)

    def exponents(self) -> list[int]:
        """Exponents with nonzero digits, ascending."""
        return sorted(self._digits)

    @property
    def is_zero(self) -> bool:
        return not self._digits

    @property
    def min_exponent(self) -> int | None:
        return min(self._digits) if self._digits else None

    @property
    def max_exponent(self) -> int | None:
        return max(self._digits) if self._digits else None

    def value(self) -> Fraction:
        """Exact value sum(digit * m**e) over the stored exponents."""
        if not self._digits:
            return Fraction(0)
        m = self.system.m
        low = min(self._digits)
        scaled = sum(d * m ** (e - low) for e, d in self._digits.items())
        if low >= 0:
            return Fraction(scaled * m**low)
        return Fraction(scaled, m**-low)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DigitString)
            and self.system == other.system
            and self._digits == other._digits
        )

    def __hash__(self) -> int:
        return hash((self.system, tuple(sorted(self._digits.items()))))

    def __str__(self) -> str:
        return format_numeral(self)

    def __repr__(self) -> str:
        return f"DigitString({format_numeral(self)!r})"


def int_to_digits(n: int, system: DigitSystem) -> DigitString:
    """Expand an integer into digits of the system.

    Repeatedly replaces n by (n - d) / m where d is the alphabet digit
    congruent to n mod m, until n reaches zero.  Standard systems carry
    no sign, so negative integers are rejected when b = 0; balanced
    systems encode any integer.
    """
    if system.b == 0 and n < 0:
        raise DomainError(f"standard base cannot represent negative integer {n}")
    digits = {}
    e = 0
    while n != 0:
        d = system.digit_for(n)
        if d:
            digits[e] = d
        n = (n - d) // system.m
        e += 1
    return DigitString(system, digits)


def digits_to_rational(x: DigitString) -> Fraction:
    """Exact value of a digit string."""
    return x.value()


def add(x: DigitString, y: DigitString) -> DigitString:
    """Digit-by-digit sum, lowest exponent first, with carries in {-1, 0, +1}.

    Each position keeps the unique alphabet digit congruent to the raw
    sum mod m; the excess (negative in balanced systems when the sum
    undershoots the alphabet) moves one position up.
    """
    if x.system != y.system:
        raise DomainError(f"mismatched digit systems: {x.system} vs {y.system}")
    system = x.system
    if x.is_zero:
        return y
    if y.is_zero:
        return x
    lo = min(x.min_exponent, y.min_exponent)
    hi = max(x.max_exponent, y.max_exponent)
    out = {}
    carry = 0
    e = lo
    while e <= hi or carry:
        s = x.digit(e) + y.digit(e) + carry
        d = system.digit_for(s)
        carry = (s - d) // system.m
        if d:
            out[e] = d
        e += 1
    return DigitString(system, out)


def carry_free(x: DigitString, y: DigitString) -> bool:
    """True when every pointwise digit sum stays inside the alphabet."""
    if x.system != y.system:
        raise DomainError(f"mismatched digit systems: {x.system} vs {y.system}")
    system = x.system
    spots = set(x.exponents()) | set(y.exponents())
    return all(system.has_digit(x.digit(e) + y.digit(e)) for e in spots)


def frac_digit_choices(r, system: DigitSystem) -> list[tuple[int, Fraction]]:
    """Digits that can start a fractional expansion of r, with remainders.

    A digit d extends to a full expansion exactly when m*r - d lies back
    in the value interval.  That window has width 1, so there are one or
    two choices; two only when the remainder lands on an endpoint.
    Returned in ascending digit order.
    """
    r = Fraction(r)
    iv = ValueInterval.of(system)
    if not iv.contains(r):
        raise DomainError(f"{r} outside value interval [{iv.lo}, {iv.hi}] of base {system}")
    t = system.m * r
    d_min = max(math.ceil(t - iv.hi), system.min_digit)
    d_max = min(math.floor(t - iv.lo), system.max_digit)
    return [(d, t - d) for d in range(d_min, d_max + 1)]


def expansions(r, system: DigitSystem, depth: int) -> list[DigitString]:
    """All distinct depth-digit prefixes of fractional expansions of r.

    Prefixes occupy exponents -1 .. -depth and are returned in ascending
    digit order (depth-first, smallest digit branch first).
    """
    if depth < 0:
        raise DomainError(f"depth must be nonnegative, got {depth}")
    r = Fraction(r)
    iv = ValueInterval.of(system)
    if not iv.contains(r):
        raise DomainError(f"{r} outside value interval [{iv.lo}, {iv.hi}] of base {system}")
    found: list[DigitString] = []

    def walk(acc: dict, rem: Fraction, k: int) -> None:
        if k == depth:
            found.append(DigitString(system, dict(acc)))
            return
        for d, nxt in frac_digit_choices(rem, system):
            if d:
                acc[-(k + 1)] = d
                walk(acc, nxt, k + 1)
                del acc[-(k + 1)]
            else:
                walk(acc, nxt, k + 1)

    walk({}, r, 0)
    # distinct digit choices give distinct prefixes; the set only guards regressions
    seen = set()
    out = []
    for p in found:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


# Numeral text format: space-separated decimal digits inside brackets, an
# optional '.' token as the radix point, then '@<m>b<b>'.
# Examples: [1 -1 -1 -1]@3b1   [1 0 . 2]@3b0   [0]@2b0
_NUMERAL_RE = re.compile(r"\A\s*\[([^\[\]@]*)\]@(\d+)b(\d+)\s*\Z")
_TOKEN_RE = re.compile(r"\A-?\d+\Z")


def format_numeral(x: DigitString) -> str:
    """Render a digit string in the bracketed text format, with interior zeros."""
    top = x.max_exponent
    start = max(top if top is not None else 0, 0)
    tokens = [str(x.digit(e)) for e in range(start, -1, -1)]
    bottom = x.min_exponent
    if bottom is not None and bottom < 0:
        tokens.append(".")
        tokens.extend(str(x.digit(e)) for e in range(-1, bottom - 1, -1))
    return "[{}]@{}".format(" ".join(tokens), x.system)


def parse_numeral(text: str) -> DigitString:
    """Inverse of format_numeral; rejects anything outside the grammar."""
    m = _NUMERAL_RE.match(text)
    if not m:
        raise DomainError(f"malformed numeral: {text!r}")
    body, radix, balance = m.groups()
    system = DigitSystem(int(radix), int(balance))
    tokens = body.split()
    if tokens.count(".") > 1:
        raise DomainError(f"more than one radix point in numeral: {text!r}")
    point = tokens.index(".") if "." in tokens else len(tokens)
    digits = {}

    def put(tok: str, e: int) -> None:
        if not _TOKEN_RE.match(tok):
            raise DomainError(f"bad digit token {tok!r} in numeral: {text!r}")
        d = int(tok)
        if not system.has_digit(d):
            raise DomainError(f"digit {d} outside alphabet of base {system}")
        if d:
            digits[e] = d

    ipart, fpart = tokens[:point], tokens[point + 1 :]
    for spot, tok in enumerate(ipart):
        put(tok, len(ipart) - 1 - spot)
    for spot, tok in enumerate(fpart):
        put(tok, -(spot + 1))
    return DigitString(system, digits)
