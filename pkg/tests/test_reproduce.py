import pytest

from toric_invariants.configuration import Configuration
from toric_invariants.reproduce import (
    CHECK_GROUPS,
    mgon_total_betti,
    pentagon_pairing_pattern,
    run_reproduction,
)


@pytest.fixture(scope="module")
def config():
    return Configuration(random_complex_count=5, random_complex_max_vertices=5)


@pytest.mark.parametrize("group", sorted(CHECK_GROUPS))
def test_check_group_passes(config, group):
    report = run_reproduction(config, [group])
    assert report.checks
    assert report.failures == []
    assert all(check.group == group for check in report.checks)
    assert all(check.seconds >= 0 for check in report.checks)


def test_keys_are_unique_within_a_group(config):
    report = run_reproduction(config, ["genus", "torus"])
    keys = [(check.group, check.key) for check in report.checks]
    assert len(keys) == len(set(keys))


def test_unknown_group():
    with pytest.raises(KeyError):
        run_reproduction(groups=["nonsense"])


@pytest.mark.parametrize(
    "m, expected",
    [
        (4, (1, 0, 0, 2, 0, 0, 1)),
        (5, (1, 0, 0, 5, 5, 0, 0, 1)),
        (6, (1, 0, 0, 9, 16, 9, 0, 0, 1)),
    ],
)
def test_mgon_total_betti(m, expected):
    assert mgon_total_betti(m) == expected


def test_pentagon_pairing_pattern():
    assert pentagon_pairing_pattern()
