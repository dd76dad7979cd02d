import random

import pytest

from extpack import catalog
from extpack.complexes import PolygonComplex
from extpack.errors import InvalidComplexError


@pytest.fixture(scope="session")
def seeds():
    return {n: catalog.seed_complex(n) for n in (7, 8, 9, 12)}


def random_complexes(count, seed=20240817, max_polygons=3, max_edges=7):
    """Deterministic stream of small random valid complexes."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(1, max_polygons)
        e = rng.randint(max(1, k // 2), max_edges)
        total = 2 * e
        if total < k:
            continue
        cuts = sorted(rng.sample(range(1, total), k - 1)) if k > 1 else []
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        positions = [(p, i) for p, sz in enumerate(sizes) for i in range(sz)]
        rng.shuffle(positions)
        words = [[0] * sz for sz in sizes]
        for lab in range(1, e + 1):
            (p1, i1), (p2, i2) = positions[2 * lab - 2], positions[2 * lab - 1]
            words[p1][i1] = lab
            words[p2][i2] = lab if rng.random() < 0.5 else -lab
        try:
            out.append(PolygonComplex(tuple(tuple(w) for w in words)))
        except InvalidComplexError:
            continue  # disconnected draw; try again
    return out
