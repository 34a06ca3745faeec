import random
import sys
from pathlib import Path

from hypothesis import settings, strategies as st

from semicoarse import new_space

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def spaces(draw, min_vertices=1, max_vertices=7, labels="int"):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    if labels == "str":
        name = lambda i: f"v{i}"
        return new_space([name(i) for i in range(n)], [(name(a), name(b)) for a, b in chosen])
    return new_space(range(n), chosen)


def random_space(rng: random.Random, n: int, p: float = 0.5):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return new_space(range(n), pairs)


def random_connected_space(rng: random.Random, n: int, p: float = 0.3):
    order = list(range(n))
    rng.shuffle(order)
    pairs = {(order[i], order[rng.randrange(i)]) for i in range(1, n)}
    pairs |= {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    return new_space(range(n), pairs)
