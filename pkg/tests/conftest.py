import numpy as np
import pytest

from flagmeas import BodyKind, RngStream, standard_body


@pytest.fixture
def stream() -> RngStream:
    return RngStream(seed=7)


@pytest.fixture
def gen() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def cube3():
    return standard_body(BodyKind.CUBE, 3)


@pytest.fixture(scope="session")
def simplex3():
    return standard_body(BodyKind.SIMPLEX, 3)


@pytest.fixture(scope="session")
def ball3():
    return standard_body(BodyKind.BALL, 3)


def random_orthogonal(n: int, gen: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(gen.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_frame(n: int, d: int, gen: np.random.Generator) -> np.ndarray:
    q, _ = np.linalg.qr(gen.standard_normal((n, d)))
    return q
