"""Exact finite measure theory.

Every space is a finite ordered set of points and every subset is
measurable, so a probability measure is just one rational weight per
point.  Probabilities are :class:`fractions.Fraction` throughout; nothing
in this module ever touches a float.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional, Sequence

Point = Hashable

__all__ = [
    "Point", "MeasureError", "SpaceMismatch", "UnknownPoint",
    "NotAbsolutelyContinuous", "Space", "ProductSpace", "product",
    "Dist", "Event", "Density", "Decomposition", "parse_rat", "format_rat",
    "mass", "support", "tensor", "absolutely_continuous",
    "mutually_singular", "rn_derivative", "lebesgue_decompose", "events",
]


class MeasureError(ValueError):
    pass


class SpaceMismatch(MeasureError):
    pass


class UnknownPoint(MeasureError):
    pass


class NotAbsolutelyContinuous(MeasureError):
    """Raised when a density is requested against a base that misses mass."""


_RAT = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?")


def parse_rat(text) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` exactly.  Decimals are rejected."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    m = _RAT.fullmatch(str(text))
    if m is None:
        raise ValueError(f"not a rational of the form a/b: {text!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Space:
    """A finite space: a label and an ordered tuple of distinct points."""

    label: str
    points: tuple
    _index: dict = field(default=None, init=False, repr=False,
                         compare=False, hash=False)

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise MeasureError(f"space {self.label!r} has no points")
        index = {p: i for i, p in enumerate(pts)}
        if len(index) != len(pts):
            raise MeasureError(f"space {self.label!r} has repeated points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return p in self._index

    def index(self, p) -> int:
        try:
            return self._index[p]
        except (KeyError, TypeError):
            raise UnknownPoint(f"{p!r} is not a point of {self.label}") from None


@dataclass(frozen=True)
class ProductSpace(Space):
    """``left x right`` with pair points in row-major order.

    On a finite set the product and tensor sigma-algebras are both the full
    powerset, so this one type stands for either.
    """

    left: Space = None
    right: Space = None


def product(left: Space, right: Space) -> ProductSpace:
    pts = tuple(itertools.product(left.points, right.points))
    return ProductSpace(f"{left.label}×{right.label}", pts, left, right)


def _check_same(a: Space, b: Space, what: str = "operands"):
    if a != b:
        raise SpaceMismatch(f"{what} live on different spaces: {a.label} vs {b.label}")


@dataclass(frozen=True)
class Dist:
    """A probability measure on a finite space, one exact weight per point."""

    space: Space
    weights: tuple

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        if len(ws) != len(self.space):
            raise MeasureError(
                f"{len(ws)} weights given for {len(self.space)} points of {self.space.label}")
        if any(w < 0 for w in ws):
            raise MeasureError("negative weight")
        if sum(ws) != 1:
            raise MeasureError(f"weights sum to {format_rat(sum(ws))}, not 1")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def from_mapping(cls, space: Space, weights: Mapping) -> "Dist":
        for p in weights:
            space.index(p)
        return cls(space, tuple(Fraction(weights.get(p, 0)) for p in space.points))

    @classmethod
    def uniform(cls, space: Space) -> "Dist":
        n = len(space)
        return cls(space, (Fraction(1, n),) * n)

    def __getitem__(self, p) -> Fraction:
        return self.weights[self.space.index(p)]

    def items(self):
        return zip(self.space.points, self.weights)

    def as_dict(self) -> dict:
        return dict(self.items())

    def __repr__(self):
        body = ", ".join(f"{p!r}: {format_rat(w)}" for p, w in self.items() if w)
        return f"Dist[{self.space.label}]({{{body}}})"


@dataclass(frozen=True)
class Event:
    space: Space
    members: frozenset

    def __post_init__(self):
        members = frozenset(self.members)
        for p in members:
            self.space.index(p)
        object.__setattr__(self, "members", members)

    def __contains__(self, p):
        return p in self.members

    def __len__(self):
        return len(self.members)

    def sorted(self) -> list:
        return [p for p in self.space.points if p in self.members]

    @classmethod
    def full(cls, space: Space) -> "Event":
        return cls(space, frozenset(space.points))

    @classmethod
    def empty(cls, space: Space) -> "Event":
        return cls(space, frozenset())

    def complement(self) -> "Event":
        return Event(self.space, frozenset(p for p in self.space.points if p not in self.members))


@dataclass(frozen=True)
class Density:
    """A non-negative function on a space; need not sum to one."""

    space: Space
    values: tuple

    def __post_init__(self):
        vs = tuple(Fraction(v) for v in self.values)
        if len(vs) != len(self.space):
            raise MeasureError("density length does not match its space")
        if any(v < 0 for v in vs):
            raise MeasureError("negative density value")
        object.__setattr__(self, "values", vs)

    def __getitem__(self, p) -> Fraction:
        return self.values[self.space.index(p)]

    def integrate(self, nu: Dist, event: Optional[Event] = None) -> Fraction:
        """``sum over event of h(p) nu(p)``; the whole space by default."""
        _check_same(self.space, nu.space)
        if event is None:
            return sum((h * w for h, w in zip(self.values, nu.weights)), Fraction(0))
        _check_same(self.space, event.space)
        return sum((h * w for p, h, w in zip(self.space.points, self.values, nu.weights)
                    if p in event.members), Fraction(0))

    def times(self, nu: Dist) -> Dist:
        """The probability ``h . nu``; fails unless it has total mass one."""
        _check_same(self.space, nu.space)
        return Dist(self.space, tuple(h * w for h, w in zip(self.values, nu.weights)))


@dataclass(frozen=True)
class Decomposition:
    """``mu = alpha * continuous + (1 - alpha) * singular`` relative to a base.

    ``continuous`` is None when alpha == 0, ``singular`` is None when
    alpha == 1.
    """

    alpha: Fraction
    continuous: Optional[Dist]
    singular: Optional[Dist]

    def recombine(self) -> Dist:
        part = self.continuous if self.continuous is not None else self.singular
        ws = [Fraction(0)] * len(part.space)
        for coeff, d in ((self.alpha, self.continuous), (1 - self.alpha, self.singular)):
            if d is not None:
                ws = [a + coeff * b for a, b in zip(ws, d.weights)]
        return Dist(part.space, ws)


def mass(P: Dist, A: Event) -> Fraction:
    _check_same(P.space, A.space)
    return sum((w for p, w in P.items() if p in A.members), Fraction(0))


def support(P: Dist) -> Event:
    return Event(P.space, frozenset(p for p, w in P.items() if w > 0))


def tensor(P: Dist, Q: Dist) -> Dist:
    return Dist(product(P.space, Q.space),
                tuple(a * b for a in P.weights for b in Q.weights))


def absolutely_continuous(mu: Dist, nu: Dist) -> bool:
    _check_same(mu.space, nu.space)
    return all(b > 0 for a, b in zip(mu.weights, nu.weights) if a > 0)


def mutually_singular(mu: Dist, nu: Dist) -> bool:
    _check_same(mu.space, nu.space)
    return not any(a > 0 and b > 0 for a, b in zip(mu.weights, nu.weights))


def rn_derivative(mu: Dist, nu: Dist) -> Density:
    """Density of ``mu`` against ``nu``, fixed to zero off the support of ``nu``."""
    if not absolutely_continuous(mu, nu):
        bad = [p for p, a, b in zip(mu.space.points, mu.weights, nu.weights) if a > 0 and b == 0]
        raise NotAbsolutelyContinuous(
            f"measure charges {bad[0]!r} where the base has no mass")
    return Density(mu.space, tuple(a / b if b else Fraction(0)
                                   for a, b in zip(mu.weights, nu.weights)))


def _restrict(mu: Dist, keep: Sequence[bool], total: Fraction) -> Dist:
    return Dist(mu.space, tuple(w / total if k else Fraction(0)
                                for w, k in zip(mu.weights, keep)))


def lebesgue_decompose(mu: Dist, nu: Dist) -> Decomposition:
    _check_same(mu.space, nu.space)
    on_base = [b > 0 for b in nu.weights]
    alpha = sum((a for a, k in zip(mu.weights, on_base) if k), Fraction(0))
    cont = _restrict(mu, on_base, alpha) if alpha > 0 else None
    sing = _restrict(mu, [not k for k in on_base], 1 - alpha) if alpha < 1 else None
    return Decomposition(alpha, cont, sing)


def events(space: Space) -> Iterable[Event]:
    """Every subset of ``space``; only sensible for small spaces."""
    pts = space.points
    for r in range(len(pts) + 1):
        for combo in itertools.combinations(pts, r):
            yield Event(space, frozenset(combo))
