import pytest

from hyperwalk.convolution import convolution_table
from hyperwalk.exceptions import InvalidUsageError, LevelOutOfRangeError, NotSelfCenteredError
from hyperwalk.generators import build
from hyperwalk.generators.lazy import tree
from hyperwalk.graph.core import FiniteGraph
from hyperwalk.montecarlo import mc_estimate

SAMPLES = 100_000
SEED = 7


@pytest.mark.parametrize(
    "g, v0, i, j",
    [
        (build("complete:4"), 0, 1, 1),
        (build("prism:3"), 0, 1, 1),
        (build("prism:3"), 0, 1, 2),
        (tree(3), "", 1, 1),
        (tree(3), "a", 2, 1),
    ],
)
def test_frequencies_within_four_sigma(g, v0, i, j):
    estimate = mc_estimate(g, v0, i, j, SAMPLES, SEED)
    level = None if isinstance(g, FiniteGraph) else max(i, j)
    exact = convolution_table(g, v0, level).row(i, j)
    assert sum(estimate.counts.values()) == SAMPLES
    assert set(estimate.counts) <= set(exact.support())
    for z in estimate.deviations(exact).values():
        assert abs(z) <= 4


def test_estimate_is_reproducible():
    g = build("prism:5")
    first = mc_estimate(g, 0, 2, 2, 20_000, SEED)
    second = mc_estimate(g, 0, 2, 2, 20_000, SEED)
    assert first.counts == second.counts


def test_estimate_does_not_depend_on_workers():
    g = build("petersen")
    serial = mc_estimate(g, 0, 2, 1, 30_000, SEED, workers=1)
    threaded = mc_estimate(g, 0, 2, 1, 30_000, SEED, workers=4)
    assert serial.counts == threaded.counts


def test_frequencies_sum_to_one():
    estimate = mc_estimate(build("complete:5"), 0, 1, 1, 5_000, 3)
    assert sum(estimate.frequencies.values()) == pytest.approx(1.0)


def test_zero_samples_is_a_usage_error():
    with pytest.raises(InvalidUsageError):
        mc_estimate(build("complete:4"), 0, 1, 1, 0, SEED)


def test_level_beyond_eccentricity():
    with pytest.raises(LevelOutOfRangeError):
        mc_estimate(build("complete:4"), 0, 2, 1, 100, SEED)


def test_not_self_centered_is_refused():
    with pytest.raises(NotSelfCenteredError):
        mc_estimate(build("path:3"), 0, 1, 1, 100, SEED)
