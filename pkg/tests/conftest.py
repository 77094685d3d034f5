import random

import pytest

from mincplx import KComplex
from mincplx.complex_core import make_complete_complex


def random_small_complex(rng: random.Random, n_max: int = 12, k_choices=(2, 3)) -> KComplex:
    """A random small complex for oracle comparisons."""
    k = rng.choice(k_choices)
    n = rng.randint(k + 2, n_max)
    p = rng.random()
    from mincplx import RandomParams, sample_complex
    return sample_complex(RandomParams(n=n, k=k, seed=rng.getrandbits(63), p=p))


@pytest.fixture
def tetra_boundary():
    """The four triangles bounding a tetrahedron on vertices 1..4."""
    return [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


@pytest.fixture
def k4():
    return make_complete_complex(4, 2)
