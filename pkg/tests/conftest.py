import pytest

from gtkv.kv import solve_kv
from gtkv.ncalg import Context


@pytest.fixture(scope="session")
def sol_n2_N6():
    return solve_kv(Context(2, 6))


@pytest.fixture(scope="session")
def sol_n2_N5():
    return solve_kv(Context(2, 5))


@pytest.fixture(scope="session")
def sol_n3_N5():
    return solve_kv(Context(3, 5))
