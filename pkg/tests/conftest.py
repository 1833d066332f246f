import numpy as np
import pytest

import sqbarrier as sq

STANDARD_RECT = sq.ComplexRect(0.1, 6.0, -2.0, -1e-9)
WIDE_RECT = sq.ComplexRect(0.1, 7.5, -2.0, -1e-9)


@pytest.fixture(scope="session")
def barrier():
    return sq.reference_barrier()


@pytest.fixture(scope="session")
def free_barrier():
    return sq.BarrierSpec(v0=0.0, a=1.0, b=2.0)


@pytest.fixture(scope="session")
def poles_l0(barrier):
    """Certified l=0 poles on the standard search rectangle, shared."""
    return sq.find_poles(0, STANDARD_RECT, barrier)


@pytest.fixture(scope="session")
def poles_l0_wide(barrier):
    return sq.find_poles(0, WIDE_RECT, barrier)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_complex_k(rng, n, re_range=(0.3, 5.0), im_range=(-0.8, 0.8)):
    return rng.uniform(*re_range, n) + 1j * rng.uniform(*im_range, n)
