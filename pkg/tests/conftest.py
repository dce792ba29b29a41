import numpy as np
import pytest

CORPUS_SEED = 20260808


def random_corpus(cases: int, max_n: int = 15, seed: int = CORPUS_SEED):
    """Seeded random probability vectors, n uniform in [1, max_n]."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(cases):
        n = int(rng.integers(1, max_n + 1))
        out.append(rng.random(n))
    return out


@pytest.fixture(scope="session")
def corpus():
    """The 1000-vector cross-validation corpus shared by oracle tests."""
    return random_corpus(1000)
