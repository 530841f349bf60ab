import numpy as np
import pytest

from trusskit import _kernels
from trusskit.groups import cyclic, symmetric3
from trusskit.trusses import (
    FinitePreTruss,
    pretruss,
    product_pretruss,
    truss_from_brace,
    truss_from_near_ring,
    truss_from_ring,
)
from trusskit.heaps import heap_from_group


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    _kernels.warm_up()


def ring_truss(n: int) -> FinitePreTruss:
    idx = np.arange(n)
    return truss_from_ring(cyclic(n), (idx[:, None] * idx[None, :]) % n)


def trivial_brace_truss(n: int) -> FinitePreTruss:
    g = cyclic(n)
    return truss_from_brace(g, g)


def s3_brace_truss() -> FinitePreTruss:
    g = symmetric3()
    return truss_from_brace(g, g)


def projection_nearring_truss() -> FinitePreTruss:
    """mul(a, b) = b for a != 0, else 0, over the cyclic group of order 4;
    left distributive but not right distributive over the ternary operation."""
    m = np.array([[b if a else 0 for b in range(4)] for a in range(4)])
    return truss_from_near_ring(cyclic(4), m)


def left_projection_truss() -> FinitePreTruss:
    """The two-element structure with mul(a, b) = a on the heap of Z2."""
    return pretruss(heap_from_group(cyclic(2)), np.array([[0, 0], [1, 1]]))


def example_product_truss() -> FinitePreTruss:
    """T(B) x T(R) for the trivial brace and the ring on two elements."""
    idx = np.arange(2)
    b = trivial_brace_truss(2)
    r = truss_from_ring(cyclic(2), (idx[:, None] * idx[None, :]) % 2)
    return product_pretruss(b, r)


@pytest.fixture(scope="session")
def catalogue():
    """Finite pre-trusses of order <= 6 used by the exhaustive theorem scans."""
    return {
        "T(Z2)": ring_truss(2),
        "T(Z3)": ring_truss(3),
        "T(Z4)": ring_truss(4),
        "T(Z5)": ring_truss(5),
        "T(Z6)": ring_truss(6),
        "brace-Z4": trivial_brace_truss(4),
        "brace-S3": s3_brace_truss(),
        "left-projection": left_projection_truss(),
        "nearring-Z4": projection_nearring_truss(),
        "product-BxR": example_product_truss(),
    }


@pytest.fixture(scope="session")
def tz4():
    return ring_truss(4)


@pytest.fixture(scope="session")
def tz6():
    return ring_truss(6)
