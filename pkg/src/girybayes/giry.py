"""The finite Giry monad and its Kleisli category.

``G(X)`` is represented extensionally by :class:`~girybayes.measure.Dist`.
Elements of ``G(G(X))`` that actually arise are finitely supported, so a
:class:`MetaDist` is an outer distribution over an index space together
with one inner measure per index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Union

from .measure import (
    Dist, MeasureError, ProductSpace, Space, SpaceMismatch, product,
)

__all__ = [
    "Map", "Kernel", "MetaDist", "dirac", "pushforward", "det_kernel",
    "graph_map", "graph_point", "graph_point_right", "mu", "kleisli_compose", "kernel_apply",
    "identity_map", "compose_maps", "projection_left", "projection_right",
    "product_map", "swap_map", "identity_kernel", "unit_meta", "lift",
]


@dataclass(frozen=True)
class Map:
    """A total function between finite spaces."""

    source: Space
    target: Space
    images: tuple

    def __post_init__(self):
        imgs = tuple(self.images)
        if len(imgs) != len(self.source):
            raise MeasureError("map must assign an image to every source point")
        for y in imgs:
            self.target.index(y)
        object.__setattr__(self, "images", imgs)

    @classmethod
    def from_function(cls, source: Space, target: Space, fn: Callable) -> "Map":
        return cls(source, target, tuple(fn(x) for x in source.points))

    @classmethod
    def from_mapping(cls, source: Space, target: Space, table: Mapping) -> "Map":
        missing = [x for x in source.points if x not in table]
        if missing:
            raise MeasureError(f"no image given for {missing[0]!r}")
        return cls(source, target, tuple(table[x] for x in source.points))

    def __call__(self, x):
        return self.images[self.source.index(x)]

    def preimage(self, ys) -> frozenset:
        ys = set(ys)
        return frozenset(x for x, y in zip(self.source.points, self.images) if y in ys)


@dataclass(frozen=True)
class Kernel:
    """A Kleisli arrow ``source -> G(target)``: one row per source point."""

    source: Space
    target: Space
    rows: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        if len(rows) != len(self.source):
            raise MeasureError("kernel needs one row per source point")
        for r in rows:
            if not isinstance(r, Dist) or r.space != self.target:
                raise SpaceMismatch(f"kernel row does not live on {self.target.label}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_function(cls, source: Space, target: Space, fn: Callable) -> "Kernel":
        return cls(source, target, tuple(fn(x) for x in source.points))

    def row(self, x) -> Dist:
        return self.rows[self.source.index(x)]

    def items(self):
        return zip(self.source.points, self.rows)

    def is_deterministic(self) -> bool:
        return all(max(r.weights) == 1 for r in self.rows)

    def replace_row(self, x, new: Dist) -> "Kernel":
        i = self.source.index(x)
        return Kernel(self.source, self.target, self.rows[:i] + (new,) + self.rows[i + 1:])


Measure = Union[Dist, "MetaDist"]


def _base(m) -> Space:
    return m.space if isinstance(m, Dist) else m.base


@dataclass(frozen=True, eq=False)
class MetaDist:
    """A finitely supported measure on measures.

    ``inners`` is aligned with ``outer.space.points``; the inners are either
    all Dists on one space or all MetaDists over one base.  Equality is
    semantic: two MetaDists are equal when they put the same total weight on
    each distinct inner measure.
    """

    outer: Dist
    inners: tuple

    def __post_init__(self):
        inners = tuple(self.inners)
        if len(inners) != len(self.outer.space):
            raise MeasureError("one inner measure per outer point is required")
        kinds = {type(m) for m in inners}
        if len(kinds) != 1 or not kinds <= {Dist, MetaDist}:
            raise MeasureError("inner measures must be all Dists or all MetaDists")
        bases = {_base(m) for m in inners}
        if len(bases) != 1:
            raise SpaceMismatch("inner measures must share one space")
        object.__setattr__(self, "inners", inners)

    @property
    def base(self) -> Space:
        return _base(self.inners[0])

    @property
    def depth(self) -> int:
        inner = self.inners[0]
        return 2 if isinstance(inner, Dist) else inner.depth + 1

    def collapsed(self) -> dict:
        acc: dict = {}
        for w, m in zip(self.outer.weights, self.inners):
            if w:
                acc[m] = acc.get(m, Fraction(0)) + w
        return acc

    def __eq__(self, other):
        if not isinstance(other, MetaDist):
            return NotImplemented
        return self.collapsed() == other.collapsed()

    def __hash__(self):
        return hash(frozenset(self.collapsed().items()))


def dirac(X: Space, x) -> Dist:
    i = X.index(x)
    return Dist(X, tuple(Fraction(int(j == i)) for j in range(len(X))))


def pushforward(f: Map, P: Dist) -> Dist:
    if P.space != f.source:
        raise SpaceMismatch(f"cannot push a measure on {P.space.label} along a map from {f.source.label}")
    ws = [Fraction(0)] * len(f.target)
    for w, y in zip(P.weights, f.images):
        ws[f.target.index(y)] += w
    return Dist(f.target, ws)


def identity_map(X: Space) -> Map:
    return Map(X, X, X.points)


def compose_maps(g: Map, f: Map) -> Map:
    """``g after f``."""
    if f.target != g.source:
        raise SpaceMismatch("maps are not composable")
    return Map(f.source, g.target, tuple(g(y) for y in f.images))


def det_kernel(f: Map) -> Kernel:
    return Kernel(f.source, f.target, tuple(dirac(f.target, y) for y in f.images))


def identity_kernel(X: Space) -> Kernel:
    return det_kernel(identity_map(X))


def graph_map(f: Map) -> Map:
    """``x -> (x, f(x))``."""
    XY = product(f.source, f.target)
    return Map(XY.left, XY, tuple(zip(f.source.points, f.images)))


def graph_point(X: Space, Y: Space, x) -> Map:
    """The constant graph map ``y -> (x, y)``."""
    X.index(x)
    XY = product(X, Y)
    return Map(Y, XY, tuple((x, y) for y in Y.points))


def graph_point_right(X: Space, Y: Space, y) -> Map:
    """``x -> (x, y)``, the other constant graph map."""
    Y.index(y)
    XY = product(X, Y)
    return Map(X, XY, tuple((x, y) for x in X.points))


def _as_product(XY: Space) -> ProductSpace:
    if not isinstance(XY, ProductSpace):
        raise SpaceMismatch(f"{XY.label} is not a product space")
    return XY


def projection_left(XY: Space) -> Map:
    XY = _as_product(XY)
    return Map(XY, XY.left, tuple(p[0] for p in XY.points))


def projection_right(XY: Space) -> Map:
    XY = _as_product(XY)
    return Map(XY, XY.right, tuple(p[1] for p in XY.points))


def swap_map(XY: Space) -> Map:
    XY = _as_product(XY)
    YX = product(XY.right, XY.left)
    return Map(XY, YX, tuple((b, a) for a, b in XY.points))


def product_map(f: Map, g: Map) -> Map:
    """``(x, y) -> (f(x), g(y))``."""
    src = product(f.source, g.source)
    tgt = product(f.target, g.target)
    return Map(src, tgt, tuple((f(x), g(y)) for x, y in src.points))


def unit_meta(m: Measure) -> MetaDist:
    """The unit at ``G(X)``: a point mass on the measure ``m``."""
    return MetaDist(dirac(Space("1", (0,)), 0), (m,))


def lift(P: Dist, fn: Callable) -> MetaDist:
    """Apply ``G`` to ``fn: X -> G(Y)`` and evaluate at ``P``."""
    return MetaDist(P, tuple(fn(x) for x in P.space.points))


def mu(M: MetaDist) -> Measure:
    """Multiplication: average the inner measures against the outer one.

    For inners that are themselves MetaDists this is the multiplication at
    ``G(X)`` and the result is again a MetaDist.
    """
    first = M.inners[0]
    if isinstance(first, MetaDist):
        pairs = []
        for i, (w, inner) in enumerate(zip(M.outer.weights, M.inners)):
            for j, (v, m) in enumerate(zip(inner.outer.weights, inner.inners)):
                pairs.append(((i, j), w * v, m))
        index = Space("index", tuple(p for p, _, _ in pairs))
        return MetaDist(Dist(index, tuple(w for _, w, _ in pairs)),
                        tuple(m for _, _, m in pairs))
    ws = [Fraction(0)] * len(first.space)
    for w, Q in zip(M.outer.weights, M.inners):
        if w:
            for k, q in enumerate(Q.weights):
                ws[k] += w * q
    return Dist(first.space, ws)


def kernel_apply(k: Kernel, P: Dist, *, multiply=mu) -> Dist:
    """``k * P`` with ``P`` viewed as an arrow ``1 -> G(X)``."""
    if P.space != k.source:
        raise SpaceMismatch(f"kernel expects {k.source.label}, got {P.space.label}")
    return multiply(MetaDist(P, k.rows))


def kleisli_compose(k2: Kernel, k1: Kernel, *, multiply=mu) -> Kernel:
    """``k2 after k1`` in the Kleisli category."""
    if k1.target != k2.source:
        raise SpaceMismatch(f"cannot compose {k1.target.label} -> with {k2.source.label} ->")
    return Kernel(k1.source, k2.target,
                  tuple(kernel_apply(k2, row, multiply=multiply) for row in k1.rows))
