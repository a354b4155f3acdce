"""Bayesian inference maps on finite spaces.

Two constructions are provided for a deterministic model ``(P_X, f)``:

* ``infer_rn`` takes the density ``h`` of the joint ``P_X . Gamma_f^{-1}``
  against the product ``P_X (x) P_Y`` and integrates it against
  ``P_X . Gamma_y^{-1}`` for each observation ``y``;
* ``infer_decomp`` splits the joint against ``P_X . Gamma_y^{-1}`` and keeps
  the absolutely continuous part.

A general model is first rewritten as the deterministic model
``(P, pi_Y)`` on ``X x Y`` and solved there.  Outside ``V`` the joint
itself is used as the row, so every kernel stays total.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .giry import (
    Kernel, Map, det_kernel, graph_map, kernel_apply, projection_left,
    projection_right, pushforward,
)
from .measure import (
    Density, Dist, Event, ProductSpace, SpaceMismatch, absolutely_continuous,
    lebesgue_decompose, mutually_singular, product, rn_derivative, support,
    tensor,
)
from .strength import joint_from_kernel, tau_rl

__all__ = [
    "InvariantError", "BayesModel", "DeterministicModel", "InferenceResult",
    "METHODS", "joint", "marginal_y", "infer_rn", "infer_decomp",
    "reduce_nondet", "infer", "posterior_from_joint_kernel",
    "joint_kernel_from_posterior", "verify_bayes", "bayes_witness",
]

METHODS = ("rn", "decomp")


class InvariantError(RuntimeError):
    """An identity that must hold exactly did not."""


@dataclass(frozen=True)
class BayesModel:
    prior: Dist
    likelihood: Kernel

    def __post_init__(self):
        if self.prior.space != self.likelihood.source:
            raise SpaceMismatch("prior and likelihood disagree on the hidden space")

    @property
    def X(self):
        return self.prior.space

    @property
    def Y(self):
        return self.likelihood.target


@dataclass(frozen=True)
class DeterministicModel:
    prior: Dist
    f: Map

    def __post_init__(self):
        if self.prior.space != self.f.source:
            raise SpaceMismatch("prior and map disagree on the hidden space")

    @property
    def X(self):
        return self.prior.space

    @property
    def Y(self):
        return self.f.target

    def as_bayes(self) -> BayesModel:
        return BayesModel(self.prior, det_kernel(self.f))


Model = Union[BayesModel, DeterministicModel]


@dataclass(frozen=True)
class InferenceResult:
    joint: Dist
    marginal_y: Dist
    V: Event
    joint_kernel: Kernel
    posterior: Kernel
    method: str
    alpha: Optional[dict] = None
    density: Optional[Density] = None


def joint(model: Model) -> Dist:
    if isinstance(model, DeterministicModel):
        return pushforward(graph_map(model.f), model.prior)
    return joint_from_kernel(model.prior, model.likelihood)


def marginal_y(P: Dist) -> Dist:
    return pushforward(projection_right(P.space), P)


def _row_support_check(V: Event, PY: Dist, what: str):
    if V != support(PY):
        raise InvariantError(f"{what}: V = {V.sorted()} differs from supp(P_Y) = {support(PY).sorted()}")


def _finish(model, P, PY, V, rows, method, alpha=None, density=None) -> InferenceResult:
    jk = Kernel(model.Y, P.space, rows)
    if kernel_apply(jk, PY) != P or fibre_weights(jk, PY) != P.weights:
        raise InvariantError(f"{method}: constructed kernel violates Bayes equation")
    return InferenceResult(P, PY, V, jk, posterior_from_joint_kernel(jk), method,
                           alpha, density)


def infer_rn(model: DeterministicModel) -> InferenceResult:
    P = joint(model)
    PY = marginal_y(P)
    base = tensor(model.prior, PY)
    if not absolutely_continuous(P, base):
        raise InvariantError("joint is not absolutely continuous w.r.t. P_X (x) P_Y")
    h = rn_derivative(P, base)
    Y = model.Y
    members, rows = set(), []
    for y in Y.points:
        nu_y = tau_rl(model.prior, Y, y)
        if h.integrate(nu_y) == 1:
            members.add(y)
            rows.append(h.times(nu_y))
        else:
            rows.append(P)
    V = Event(Y, members)
    _row_support_check(V, PY, "rn")
    return _finish(model, P, PY, V, rows, "rn", density=h)


def infer_decomp(model: DeterministicModel) -> InferenceResult:
    P = joint(model)
    PY = marginal_y(P)
    Y = model.Y
    members, rows, alpha = set(), [], {}
    for y in Y.points:
        nu_y = tau_rl(model.prior, Y, y)
        parts = lebesgue_decompose(P, nu_y)
        alpha[y] = parts.alpha
        if mutually_singular(P, nu_y):
            rows.append(P)
        else:
            members.add(y)
            rows.append(parts.continuous)
    V = Event(Y, members)
    _row_support_check(V, PY, "decomp")
    return _finish(model, P, PY, V, rows, "decomp", alpha=alpha)


_SOLVERS = {"rn": infer_rn, "decomp": infer_decomp}


def reduce_nondet(model: BayesModel) -> DeterministicModel:
    """Rewrite ``(P_X, P_{Y|X})`` as the deterministic model ``(P, pi_Y)``."""
    P = joint(model)
    return DeterministicModel(P, projection_right(P.space))


def infer(model: Model, method: str = "rn") -> InferenceResult:
    try:
        solve = _SOLVERS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}") from None
    if isinstance(model, DeterministicModel):
        return solve(model)
    reduced = reduce_nondet(model)
    r = solve(reduced)
    P = reduced.prior
    back = projection_left(r.joint.space)
    rows = tuple(pushforward(back, row) for row in r.joint_kernel.rows)
    return _finish(model, P, r.marginal_y, r.V, rows, method, r.alpha, r.density)


def posterior_from_joint_kernel(jk: Kernel) -> Kernel:
    if not isinstance(jk.target, ProductSpace):
        raise SpaceMismatch(f"{jk.target.label} is not a product space")
    proj = projection_left(jk.target)
    return Kernel(jk.source, proj.target, tuple(pushforward(proj, r) for r in jk.rows))


def joint_kernel_from_posterior(p: Kernel) -> Kernel:
    Y = p.source
    XY = product(p.target, Y)
    return Kernel(Y, XY, tuple(tau_rl(row, Y, y) for y, row in p.items()))


def _check_candidate(model: Model, candidate: Kernel) -> Dist:
    P = joint(model)
    if candidate.source != model.Y or candidate.target != P.space:
        raise SpaceMismatch(
            f"candidate must map {model.Y.label} -> {P.space.label}, "
            f"got {candidate.source.label} -> {candidate.target.label}")
    return P


def fibre_weights(candidate: Kernel, PY: Dist) -> tuple:
    """Per-point values of ``zeta -> integral of candidate(zeta & X x {y} | y) dP_Y``.

    This is the left side of Bayes equation written with constant graph maps.
    Mass a supported row puts off its own fibre is dropped, so the total
    falls below 1 exactly when some supported row leaves its fibre.
    """
    XY = candidate.target
    return tuple(PY[y] * candidate.row(y)[(x, y)] for x, y in XY.points)


def verify_bayes(model: Model, candidate: Kernel) -> bool:
    """Whether ``candidate`` satisfies Bayes equation against the joint exactly.

    Supported rows must live on their fibres ``X x {y}`` and integrate
    against ``P_Y`` to the joint; when they do the check coincides with
    ``candidate * P_Y == joint``. Rows at ``P_Y``-null points are free.
    """
    P = _check_candidate(model, candidate)
    return fibre_weights(candidate, marginal_y(P)) == P.weights


def bayes_witness(model: Model, candidate: Kernel):
    """None if Bayes equation holds, else ``(event, lhs, rhs)``.

    The event collects the points where the joint exceeds the candidate
    side. It is nonempty whenever the two differ, since the candidate side
    never has total mass above 1.
    """
    P = _check_candidate(model, candidate)
    lhs = fibre_weights(candidate, marginal_y(P))
    if lhs == P.weights:
        return None
    members = frozenset(p for p, a, b in zip(P.space.points, lhs, P.weights) if a < b)
    zeta = Event(P.space, members)
    left = sum((a for p, a in zip(P.space.points, lhs) if p in members), Fraction(0))
    right = sum((P[p] for p in members), Fraction(0))
    return zeta, left, right
