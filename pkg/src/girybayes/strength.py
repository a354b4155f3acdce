"""Strength of the finite Giry monad.

``tau_rr(x, Q)`` embeds a measure on ``Y`` into ``X x Y`` along the
constant graph map at ``x``; ``tau_rl`` is its mirror image.  ``st`` and
``joint_from_kernel`` are built from these exactly as composites, and the
naturality squares are checked instance by instance.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator

from .giry import (
    Kernel, Map, MetaDist, graph_point, graph_point_right, identity_map,
    mu, product_map, pushforward,
)
from .measure import Dist, Space, SpaceMismatch, product

__all__ = [
    "tau_rr", "tau_rl", "st", "joint_from_kernel", "check_tau_naturality",
    "tau_naturality_failures",
]


def tau_rr(X: Space, x, Q: Dist) -> Dist:
    """``(x, Q) -> Q . Gamma_x^{-1}`` on ``X x Y``."""
    return pushforward(graph_point(X, Q.space, x), Q)


def tau_rl(P: Dist, Y: Space, y) -> Dist:
    """``(P, y) -> P . Gamma_y^{-1}`` on ``X x Y``; equal to ``P (x) dirac(y)``."""
    return pushforward(graph_point_right(P.space, Y, y), P)


def st(f: Map) -> Callable[[Dist], Dist]:
    """Return ``G(f)`` assembled as ``G(ev) . tau'' . Gamma_f``.

    The function space ``Y^X`` is never built in full.  The one-point
    subspace holding ``f`` is enough for evaluation to make sense, and
    ``ev(g, x) = g(x)`` is a genuine map on ``{f} x X``.
    """
    F = Space(f"{f.target.label}^{f.source.label}", (f,))
    FX = product(F, f.source)
    ev = Map(FX, f.target, tuple(g(x) for g, x in FX.points))

    def apply(P: Dist) -> Dist:
        if P.space != f.source:
            raise SpaceMismatch(f"st({f.source.label}->{f.target.label}) applied to {P.space.label}")
        return pushforward(ev, tau_rr(F, f, P))

    return apply


def joint_from_kernel(P: Dist, k: Kernel, *, multiply=mu) -> Dist:
    """Joint measure on ``X x Y`` from a prior and a kernel.

    Pushes ``P`` along the graph ``x -> (x, k(x))`` into ``X (x) G(Y)``,
    applies ``G(tau'')`` to land in ``G(G(X x Y))``, then multiplies.
    """
    if P.space != k.source:
        raise SpaceMismatch(f"kernel expects {k.source.label}, got {P.space.label}")
    X, Y = k.source, k.target
    XG = Space(f"{X.label}⊗G({Y.label})", tuple(k.items()))
    on_graph = pushforward(Map(X, XG, XG.points), P)
    meta = MetaDist(on_graph, tuple(tau_rr(X, x, Q) for x, Q in XG.points))
    return multiply(meta)


def tau_naturality_failures(f: Map, g: Map, samples: Iterable) -> Iterator[tuple]:
    """Yield ``(square, x, Q, lhs, rhs)`` for each sampled square that fails.

    ``samples`` holds pairs ``(x, Q)`` with ``x`` in ``f.source`` and ``Q`` a
    measure on ``g.source``.
    """
    X, Y = f.source, g.source
    f_times_1 = product_map(f, identity_map(Y))
    one_times_g = product_map(identity_map(X), g)
    for x, Q in samples:
        t = tau_rr(X, x, Q)
        lhs = pushforward(f_times_1, t)
        rhs = tau_rr(f.target, f(x), Q)
        if lhs != rhs:
            yield ("first", x, Q, lhs, rhs)
        lhs = pushforward(one_times_g, t)
        rhs = tau_rr(X, x, pushforward(g, Q))
        if lhs != rhs:
            yield ("second", x, Q, lhs, rhs)


def check_tau_naturality(f: Map, g: Map, samples: Iterable) -> bool:
    return next(tau_naturality_failures(f, g, samples), None) is None
