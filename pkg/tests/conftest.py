import numpy as np
import pytest

from bunching import Gaussian, kernels
from bunching.detector import gauss_legendre_rule


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Touch each kernel once so JIT compile time never pollutes timed tests."""
    xs = np.array([0.0, 0.5])
    pair = (Gaussian(1.0, 0.5), Gaussian(1.0, -0.5))
    kernels.eval_grid(pair[0], xs)
    kernels.joint_grid(*pair, xs, 1e-3)
    nodes, weights = gauss_legendre_rule(32)
    kernels.finite_grid(*pair, xs, 1e-3, nodes, weights)
