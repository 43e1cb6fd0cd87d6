import math

import pytest
from hypothesis import settings

from pseudoiso.core import Vec3

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def assert_vec_close(u: Vec3, v, tol=1e-12):
    for a, b in zip(u, v):
        assert math.isclose(a, b, rel_tol=tol, abs_tol=tol), (tuple(u), tuple(v))


@pytest.fixture
def vec_close():
    return assert_vec_close
