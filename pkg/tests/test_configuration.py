import pytest
from pydantic import ValidationError

from toric_invariants.configuration import ArrangementKind, BettiMethod, Configuration, OutputFormat


@pytest.fixture
def clean_environment(monkeypatch):
    for name in Configuration.model_fields:
        monkeypatch.delenv(name.upper(), raising=False)
    return monkeypatch


def test_defaults(clean_environment):
    config = Configuration.from_overrides()
    assert config.betti_method is BettiMethod.KOSZUL
    assert config.arrangement_kind is ArrangementKind.COORD
    assert config.output_format is OutputFormat.TEXT
    assert config.max_concurrent_strands == 1
    assert config.forms_degree_bound is None
    assert config.check_pairing


def test_overrides_are_coerced(clean_environment):
    config = Configuration.from_overrides({"betti_method": "both", "max_concurrent_strands": "4", "forms_degree_bound": None})
    assert config.betti_method is BettiMethod.BOTH
    assert config.max_concurrent_strands == 4
    assert config.forms_degree_bound is None


def test_environment_takes_precedence(clean_environment):
    clean_environment.setenv("BETTI_METHOD", "hochster")
    clean_environment.setenv("CHECK_PAIRING", "false")
    config = Configuration.from_overrides({"betti_method": "koszul"})
    assert config.betti_method is BettiMethod.HOCHSTER
    assert not config.check_pairing


def test_unknown_method_is_rejected(clean_environment):
    with pytest.raises(ValidationError):
        Configuration.from_overrides({"betti_method": "spectral"})

