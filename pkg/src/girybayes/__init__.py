"""Exact Giry-monad machinery and Bayesian inference maps on finite spaces."""

from .giry import (
    Kernel, Map, MetaDist, det_kernel, dirac, graph_map, graph_point,
    kernel_apply, kleisli_compose, mu, pushforward,
)
from .inference import (
    BayesModel, DeterministicModel, InferenceResult, InvariantError, infer,
    infer_decomp, infer_rn, joint, reduce_nondet, verify_bayes,
)
from .measure import (
    Decomposition, Density, Dist, Event, Space, lebesgue_decompose, mass,
    product, rn_derivative, support, tensor,
)
from .strength import joint_from_kernel, st, tau_rl, tau_rr

__version__ = "0.1.0"
