import pytest

from growthtrees import (
    SUBDIVISION,
    path_tree,
    random_labeled_tree,
    single_edge,
    star_fractal,
    star_tree,
)

# The named seed corpus every cross-checking suite runs over.  Random seeds
# are pinned so the corpus is identical on every run and platform.
CORPUS = [
    ("edge", single_edge),
    ("path(3)", lambda: path_tree(3)),
    ("path(4)", lambda: path_tree(4)),
    ("star(3)", lambda: star_tree(3)),
    ("random(4,1)", lambda: random_labeled_tree(4, 1)),
    ("random(5,2)", lambda: random_labeled_tree(5, 2)),
    ("random(6,3)", lambda: random_labeled_tree(6, 3)),
    ("random(7,4)", lambda: random_labeled_tree(7, 4)),
    ("random(8,5)", lambda: random_labeled_tree(8, 5)),
]

ALL_OPS = [SUBDIVISION] + [star_fractal(m) for m in (0, 1, 2, 3)]


@pytest.fixture(scope="session")
def corpus_seeds():
    return [(name, build()) for name, build in CORPUS]
