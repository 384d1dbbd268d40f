import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from skewfield.fields import GF, QQ
from skewfield.linalg import Matrix
from skewfield.module import ModuleInstance

F2, F3 = GF(2), GF(3)
F4 = GF(2, (1, 1, 1))
F9 = GF(3, (1, 0, 1))


def mat(F, rows):
    return Matrix.from_ints(F, rows)


def unit(F, n, i, j):
    return mat(F, [[int(r == i and c == j) for c in range(n)] for r in range(n)])


def as_ints(M: Matrix):
    return [list(r) for r in M.rows]


def random_instance(rng: random.Random, p=None, n=None, count=None) -> ModuleInstance:
    p = p or rng.choice([2, 3])
    n = n or rng.randint(1, 4)
    count = count or rng.randint(1, 3)
    F = GF(p)
    gens = tuple(mat(F, [[rng.randrange(p) for _ in range(n)] for _ in range(n)]) for _ in range(count))
    return ModuleInstance(F, n, gens)


@pytest.fixture
def rng():
    return random.Random(20240611)


QUAT_I = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
QUAT_J = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]


@pytest.fixture
def quaternions():
    return ModuleInstance(QQ, 4, (mat(QQ, QUAT_I), mat(QQ, QUAT_J)))


@pytest.fixture
def mat2_f2():
    return ModuleInstance(F2, 2, tuple(unit(F2, 2, i, j) for i in range(2) for j in range(2)))
