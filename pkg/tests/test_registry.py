"""Test preset registration."""

import pytest

import rrdist
from rrdist.config import BatchConfig, HistogramConfig
from rrdist.registry import PresetRegistry, get_spec


def test_default_presets_are_registered():
    presets = rrdist.list_presets()
    for id in ["table2-paper", "table3-paper", "fit-paper", "reduction-1000"]:
        assert id in presets
    for size in [19, 29, 47, 68, 120, 238, 714]:
        assert f"hist-{size}" in presets


def test_make_merges_overrides():
    config = rrdist.make("table3-paper", count_per_size=5, seed=7)
    assert isinstance(config, BatchConfig)
    assert config.count_per_size == 5
    assert config.seed == 7
    assert config.buckets[0] == (10, 19)
    assert get_spec("table3-paper").mode == "reduced"
    assert get_spec("table2-paper").mode == "raw"


def test_histogram_preset():
    config = rrdist.make("hist-120", min_count=50)
    assert isinstance(config, HistogramConfig)
    assert (config.target, config.min_count) == (120, 50)
    assert rrdist.make("hist-19").min_count == 24067
    assert get_spec("hist-19").kind == "histogram"


def test_registry_refuses_duplicates():
    registry = PresetRegistry()
    registry.register("small", BatchConfig, {"sizes": (5,)})
    with pytest.raises(ValueError):
        registry.register("small", BatchConfig, {"sizes": (6,)})
    registry.register("small", BatchConfig, {"sizes": (6,)}, force=True)
    assert registry.make("small").sizes == (6,)
    assert registry.list() == ["small"]


def test_registry_unknown_preset_and_kind():
    registry = PresetRegistry()
    with pytest.raises(ValueError):
        registry.make("missing")
    with pytest.raises(ValueError):
        registry.register("odd", BatchConfig, kind="plot")


def test_make_does_not_share_default_kwargs():
    registry = PresetRegistry()
    defaults = {"sizes": [5, 6]}
    registry.register("copy", dict, {"options": defaults})
    made = registry.make("copy")
    made["options"]["sizes"].append(7)
    assert defaults["sizes"] == [5, 6]
