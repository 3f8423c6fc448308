"""Ordinals below w^w in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents and positive coefficients, denoting
``w^e1*c1 + w^e2*c2 + ...``.  The empty tuple is zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Tuple

Term = Tuple[int, int]


class OrdinalError(ArithmeticError):
    pass


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        terms = tuple((int(e), int(c)) for e, c in self.terms)
        prev = None
        for e, c in terms:
            if e < 0 or c < 1:
                raise OrdinalError(f"bad term w^{e}*{c}")
            if prev is not None and e >= prev:
                raise OrdinalError("exponents must be strictly decreasing")
            prev = e
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, value) -> "Ordinal":
        """Coerce an int, string, term list or Ordinal."""
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not an ordinal")
        if isinstance(value, int):
            if value < 0:
                raise OrdinalError("negative ordinal")
            return cls(((0, value),)) if value else cls()
        if isinstance(value, str):
            return parse(value)
        return cls(tuple(tuple(t) for t in value))

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] >= 1

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0] == 0:
            return self.terms[-1][1]
        return 0

    @property
    def limit_part(self) -> "Ordinal":
        """The largest limit ordinal (or zero) below or equal to self."""
        if self.terms and self.terms[-1][0] == 0:
            return Ordinal(self.terms[:-1])
        return self

    def __int__(self):
        if not self.is_finite():
            raise OrdinalError(f"{self} is infinite")
        return self.finite_part

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other) -> "Ordinal":
        other = Ordinal.of(other)
        if not other.terms:
            return self
        lead = other.terms[0][0]
        kept = [t for t in self.terms if t[0] > lead]
        same = [t for t in self.terms if t[0] == lead]
        first = (lead, other.terms[0][1] + (same[0][1] if same else 0))
        return Ordinal(tuple(kept) + (first,) + other.terms[1:])

    def __radd__(self, other) -> "Ordinal":
        return Ordinal.of(other) + self

    def __sub__(self, other):
        return NotImplemented

    def succ(self) -> "Ordinal":
        return self + 1

    def pred(self) -> "Ordinal":
        if not self.is_successor():
            raise OrdinalError(f"{self} has no predecessor")
        e, c = self.terms[-1]
        return Ordinal(self.terms[:-1] + (((0, c - 1),) if c > 1 else ()))

    def left_subtract(self, smaller) -> "Ordinal":
        """The unique ``d`` with ``smaller + d == self``; requires smaller <= self."""
        smaller = Ordinal.of(smaller)
        if smaller > self:
            raise OrdinalError(f"{smaller} exceeds {self}")
        # first position where the CNF sequences diverge
        i = 0
        while i < len(smaller.terms) and i < len(self.terms) and smaller.terms[i] == self.terms[i]:
            i += 1
        if i == len(smaller.terms):
            return Ordinal(self.terms[i:])
        e, c = self.terms[i]
        if smaller.terms[i][0] == e:
            rest = ((e, c - smaller.terms[i][1]),) + self.terms[i + 1:]
            return Ordinal(rest)
        return Ordinal(self.terms[i:])

    # -- ordering ----------------------------------------------------------
    def _key(self):
        return self.terms

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return ord_cmp(self, other) < 0

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self == Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Ordinal({render(self)!r})"

    def pretty(self) -> str:
        """Compact human form, e.g. ``w*2+3``."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
                continue
            base = "w" if e == 1 else f"w^{e}"
            parts.append(base if c == 1 else f"{base}*{c}")
        return "+".join(parts)


ZERO = Ordinal()
ONE = Ordinal(((0, 1),))
OMEGA = Ordinal(((1, 1),))


def ord_cmp(a: Ordinal, b: Ordinal) -> int:
    """Return -1, 0 or 1.  Lexicographic on CNF terms, where a missing term
    is smaller than any present one."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea != eb:
            return -1 if ea < eb else 1
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) == len(b.terms):
        return 0
    return -1 if len(a.terms) < len(b.terms) else 1


def ord_add(a, b) -> Ordinal:
    return Ordinal.of(a) + Ordinal.of(b)


def ord_succ(a) -> Ordinal:
    return Ordinal.of(a).succ()


def ord_is_limit(a) -> bool:
    return Ordinal.of(a).is_limit()


def ord_sup(values: Iterable) -> Ordinal:
    values = [Ordinal.of(v) for v in values]
    if not values:
        raise OrdinalError("supremum of the empty set is undefined here")
    return max(values)


def omega_times(k: int) -> Ordinal:
    return Ordinal(((1, k),)) if k else ZERO


def render(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    return " + ".join(f"w^{e}*{c}" for e, c in a.terms)


_TERM = re.compile(r"^(?:(w|ω)(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


def parse(text: str) -> Ordinal:
    """Parse rendered or compact forms: ``w^1*2 + w^0*3``, ``w*2+3``, ``w``, ``7``."""
    text = text.replace(" ", "")
    if not text:
        raise OrdinalError("empty ordinal text")
    total = ZERO
    for chunk in text.split("+"):
        m = _TERM.match(chunk)
        if m is None:
            raise OrdinalError(f"cannot parse ordinal term {chunk!r}")
        if m.group(4) is not None:
            total = total + int(m.group(4))
            continue
        e = int(m.group(2)) if m.group(2) is not None else 1
        c = int(m.group(3)) if m.group(3) is not None else 1
        if c:
            total = total + Ordinal(((e, c),))
    return total


def to_json(a: Ordinal) -> dict:
    return {"terms": [[e, c] for e, c in a.terms]}


def from_json(obj) -> Ordinal:
    if isinstance(obj, (int, str)):
        return Ordinal.of(obj)
    if not isinstance(obj, dict) or "terms" not in obj:
        raise OrdinalError(f"expected {{'terms': [...]}}, got {obj!r}")
    return Ordinal(tuple(tuple(t) for t in obj["terms"]))
