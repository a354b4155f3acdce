import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from girybayes import sampling
from girybayes.giry import (
    Kernel, Map, det_kernel, dirac, graph_map, identity_map, kernel_apply,
    projection_left, projection_right, pushforward, swap_map,
)
from girybayes.measure import Dist, Space, UnknownPoint, tensor
from girybayes.strength import (
    check_tau_naturality, joint_from_kernel, st as strength_st, tau_rl, tau_rr,
)

from conftest import dists, kernels, maps, spaces
import oracles

X = Space("X", ("a", "b", "c"))
U = Space("Y", ("u", "v"))


def d(space, *ws):
    return Dist(space, tuple(F(w) for w in ws))


class TestTauRR:
    def test_dirac(self):
        assert tau_rr(X, "b", dirac(U, "v")) == dirac(tau_rr(X, "b", dirac(U, "v")).space, ("b", "v"))

    def test_pushforward_oracle(self):
        t = tau_rr(X, "a", d(U, F(1, 3), F(2, 3)))
        expected = {p: F(0) for p in t.space.points}
        expected.update({("a", "u"): F(1, 3), ("a", "v"): F(2, 3)})
        assert t.as_dict() == expected

    def test_unknown_point(self):
        with pytest.raises(UnknownPoint):
            tau_rr(X, "z", Dist.uniform(U))

    @given(st.data())
    def test_marginals(self, data):
        A, B = data.draw(spaces("A")), data.draw(spaces("B"))
        x = data.draw(st.sampled_from(A.points))
        Q = data.draw(dists(B))
        t = tau_rr(A, x, Q)
        assert pushforward(projection_left(t.space), t) == dirac(A, x)
        assert pushforward(projection_right(t.space), t) == Q


class TestTauRL:
    def test_dirac(self):
        t = tau_rl(dirac(X, "c"), U, "u")
        assert t[("c", "u")] == 1

    def test_pushforward_oracle(self):
        S = Space("X", ("x1", "x2"))
        B = Space("Y", ("a", "b"))
        t = tau_rl(Dist.uniform(S), B, "b")
        assert t.as_dict() == {("x1", "a"): 0, ("x1", "b"): F(1, 2),
                               ("x2", "a"): 0, ("x2", "b"): F(1, 2)}

    @given(st.data())
    def test_symmetry_and_tensor(self, data):
        A, B = data.draw(spaces("A")), data.draw(spaces("B"))
        P = data.draw(dists(A))
        y = data.draw(st.sampled_from(B.points))
        left = tau_rl(P, B, y)
        assert left == pushforward(swap_map(tau_rr(B, y, P).space), tau_rr(B, y, P))
        assert left == tensor(P, dirac(B, y))


class TestSt:
    def test_identity(self):
        P = d(X, F(1, 2), F(1, 3), F(1, 6))
        assert strength_st(identity_map(X))(P) == P

    def test_unit_naturality(self):
        f = Map(X, U, ("u", "v", "v"))
        for x in X.points:
            assert strength_st(f)(dirac(X, x)) == dirac(U, f(x))

    def test_merge_oracle(self):
        f = Map(X, U, ("u", "u", "v"))
        expected = oracles.preimage_sum([F(1, 3)] * 3, list(f.images), list(U.points))
        assert expected == [F(2, 3), F(1, 3)]
        assert list(strength_st(f)(Dist.uniform(X)).weights) == expected

    @given(st.data())
    def test_agrees_with_pushforward(self, data):
        A, B = data.draw(spaces("A")), data.draw(spaces("B"))
        f = data.draw(maps(A, B))
        P = data.draw(dists(A))
        assert strength_st(f)(P) == pushforward(f, P)


class TestJointFromKernel:
    def test_deterministic_collapse(self):
        f = Map(X, U, ("u", "v", "u"))
        P = d(X, F(1, 2), F(1, 4), F(1, 4))
        assert joint_from_kernel(P, det_kernel(f)) == pushforward(graph_map(f), P)

    def test_dirac_prior(self):
        k = Kernel(X, U, (d(U, F(1, 3), F(2, 3)), Dist.uniform(U), dirac(U, "u")))
        assert joint_from_kernel(dirac(X, "a"), k) == tau_rr(X, "a", k.row("a"))

    def test_elementwise_oracle(self):
        S = Space("X", ("x1", "x2"))
        rows = [[F(3, 4), F(1, 4)], [F(1, 4), F(3, 4)]]
        expected = [F(1, 2) * w for r in rows for w in r]
        assert expected == [F(3, 8), F(1, 8), F(1, 8), F(3, 8)]
        k = Kernel(S, U, tuple(Dist(U, r) for r in rows))
        assert list(joint_from_kernel(Dist.uniform(S), k).weights) == expected

    @given(st.data())
    def test_marginals_and_equivalent_forms(self, data):
        A, B = data.draw(spaces("A")), data.draw(spaces("B"))
        P, k = data.draw(dists(A)), data.draw(kernels(A, B))
        J = joint_from_kernel(P, k)
        assert pushforward(projection_left(J.space), J) == P
        assert pushforward(projection_right(J.space), J) == kernel_apply(k, P)
        lifted = Kernel(A, J.space, tuple(tau_rr(A, x, k.row(x)) for x in A.points))
        assert J == kernel_apply(lifted, P)
        for (x, y), w in J.items():
            assert w == P[x] * k.row(x)[y]


class TestNaturality:
    def test_identities(self):
        samples = [(x, Dist.uniform(U)) for x in X.points]
        assert check_tau_naturality(identity_map(X), identity_map(U), samples)

    def test_dirac_samples(self):
        f = Map(X, U, ("u", "u", "v"))
        samples = [(x, dirac(X, y)) for x in X.points for y in X.points]
        assert check_tau_naturality(f, identity_map(X), samples)

    def test_random_three_point(self):
        rng = random.Random(7)
        A = Space("A", ("a1", "a2", "a3"))
        for _ in range(100):
            f = sampling.random_map(rng, A, A)
            g = sampling.random_map(rng, A, A)
            x = rng.choice(A.points)
            Q = sampling.random_dist(rng, A, 16)
            assert check_tau_naturality(f, g, [(x, Q)])
