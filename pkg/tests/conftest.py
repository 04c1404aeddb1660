import numpy as np
import pytest

from ptscarf import Params, broken_constraint_params


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_unbroken(rng, n):
    """n random unbroken parameter points at desk scale."""
    out = []
    for _ in range(n):
        a = rng.uniform(0.2, 3.0)
        b = rng.uniform(-3.0, 3.0)
        alpha = rng.uniform(0.5, 2.0)
        out.append(Params(a, b, alpha, 0.0))
    return out


def random_broken(rng, n):
    """n random broken points; c_pt kept away from the classification band."""
    out = []
    for _ in range(n):
        a = rng.uniform(0.2, 3.0)
        alpha = rng.uniform(0.5, 2.0)
        c = rng.uniform(0.1, 1.5) * rng.choice([-1.0, 1.0])
        out.append(broken_constraint_params(a, alpha, c))
    return out


def assert_multiset_close(computed, expected, tol):
    """Greedy nearest matching of two complex multisets within tol."""
    remaining = list(computed)
    for e in expected:
        errs = [abs(e - c) for c in remaining]
        assert errs, f"no candidate left for expected value {e}"
        k = int(np.argmin(errs))
        assert errs[k] <= tol, f"expected {e}, nearest computed {remaining[k]} (err {errs[k]:.3e})"
        remaining.pop(k)
    assert not remaining, f"unexpected extra values: {remaining}"
