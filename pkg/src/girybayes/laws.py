"""Randomized exact checks of the monad, Kleisli, strength and inference laws."""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field
from typing import Callable, TextIO

from . import sampling
from .giry import (
    MetaDist, dirac, identity_kernel, kernel_apply, kleisli_compose, lift, mu,
    unit_meta,
)
from .inference import infer, joint, marginal_y
from .strength import tau_naturality_failures

SUITES = ("monad", "kleisli", "naturality", "methods", "bayes")


@dataclass
class LawSummary:
    trials: int
    passed: dict = field(default_factory=lambda: dict.fromkeys(SUITES, 0))
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _monad(rng, K, multiply):
    X = sampling.random_space(rng, "X", K)
    P = sampling.random_dist(rng, X)
    Q = sampling.random_dist(rng, X)
    if multiply(unit_meta(Q)) != Q:
        return f"mu(eta(Q)) != Q for Q = {Q}"
    if multiply(lift(P, lambda x: dirac(X, x))) != P:
        return f"mu(G(eta)(P)) != P for P = {P}"
    M3 = sampling.random_metadist(rng, X, depth=3, max_outer=K)
    inner_first = multiply(MetaDist(M3.outer, tuple(multiply(m) for m in M3.inners)))
    outer_first = multiply(multiply(M3))
    if inner_first != outer_first:
        return f"associativity fails: mu.G(mu) = {inner_first}, mu.mu = {outer_first}"
    return None


def _kleisli(rng, K, multiply):
    W, X, Y, Z = (sampling.random_space(rng, s, K) for s in "WXYZ")
    k1 = sampling.random_kernel(rng, W, X)
    k2 = sampling.random_kernel(rng, X, Y)
    k3 = sampling.random_kernel(rng, Y, Z)

    def comp(a, b):
        return kleisli_compose(a, b, multiply=multiply)

    if comp(identity_kernel(X), k1) != k1 or comp(k1, identity_kernel(W)) != k1:
        return f"identity kernel is not a unit for {k1}"
    lhs = comp(comp(k3, k2), k1)
    rhs = comp(k3, comp(k2, k1))
    if lhs != rhs:
        return f"associativity fails: {lhs} != {rhs}"
    return None


def _naturality(rng, K, multiply):
    X, X2, Y, Y2 = (sampling.random_space(rng, s, K) for s in ("X", "Xp", "Y", "Yp"))
    f = sampling.random_map(rng, X, X2)
    g = sampling.random_map(rng, Y, Y2)
    samples = [(rng.choice(X.points), sampling.random_dist(rng, Y)) for _ in range(3)]
    for square, x, Q, lhs, rhs in tau_naturality_failures(f, g, samples):
        return f"{square} naturality square fails at x={x!r}, Q={Q}: {lhs} != {rhs}"
    return None


def _methods_and_bayes(rng, K, multiply):
    model = sampling.random_model(rng, K)
    rn = infer(model, "rn")
    dec = infer(model, "decomp")
    out = {}
    for y in rn.V.sorted():
        if rn.joint_kernel.row(y) != dec.joint_kernel.row(y):
            out["methods"] = f"methods disagree at y={y!r} for {model}"
            break
    P = joint(model)
    PY = marginal_y(P)
    for r in (rn, dec):
        if kernel_apply(r.joint_kernel, PY, multiply=multiply) != P:
            out["bayes"] = f"Bayes equation fails ({r.method}) for {model}"
    return out


def run_laws(seed: int = 1, max_points: int = 4, trials: int = 200, *,
             multiply: Callable = mu, out: TextIO | None = None) -> LawSummary:
    """Run every suite ``trials`` times.  ``multiply`` replaces ``mu`` (test hook)."""
    if max_points < 1:
        raise ValueError("max_points must be at least 1")
    if trials < 0:
        raise ValueError("trials must be non-negative")
    out = sys.stdout if out is None else out
    rng = random.Random(seed)
    summary = LawSummary(trials)
    checks = {"monad": _monad, "kleisli": _kleisli, "naturality": _naturality}
    for t in range(trials):
        for name, check in checks.items():
            try:
                msg = check(rng, max_points, multiply)
            except Exception as exc:
                msg = f"raised {type(exc).__name__}: {exc}"
            if msg is None:
                summary.passed[name] += 1
            else:
                summary.failures.append((name, t, msg))
        try:
            found = _methods_and_bayes(rng, max_points, multiply)
        except Exception as exc:
            msg = f"raised {type(exc).__name__}: {exc}"
            found = {"methods": msg, "bayes": msg}
        for name in ("methods", "bayes"):
            if name in found:
                summary.failures.append((name, t, found[name]))
            else:
                summary.passed[name] += 1

    for name in SUITES:
        print(f"{name:<11} {summary.passed[name]}/{trials} passed", file=out)
    for name, t, msg in summary.failures[:10]:
        print(f"COUNTEREXAMPLE [{name}, trial {t}]: {msg}", file=out)
    if len(summary.failures) > 10:
        print(f"... {len(summary.failures) - 10} more failures", file=out)
    print("all laws hold" if summary.ok else "LAW VIOLATIONS FOUND", file=out)
    return summary
