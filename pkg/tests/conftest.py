import random

import pytest

from qnormal import corpus
from qnormal.coordinates import quad_violations


SMALL = [n for n in corpus.names() if corpus.load(n).num_tetrahedra <= 4]
ORIENTABLE = [n for n in corpus.names() if corpus.load(n).is_orientable()]


@pytest.fixture(params=corpus.names())
def corpus_name(request):
    return request.param


def random_admissible_sums(vertices, count, seed=0, kind="standard", max_terms=4, max_coeff=3):
    """``count`` random nonnegative combinations of ``vertices`` that keep the quad condition."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        total = [0] * len(vertices[0])
        for _ in range(rng.randint(1, max_terms)):
            v = rng.choice(vertices)
            c = rng.randint(1, max_coeff)
            trial = [x + c * y for x, y in zip(total, v)]
            if not quad_violations(trial, kind):
                total = trial
        if any(total):
            out.append(tuple(total))
    return out
