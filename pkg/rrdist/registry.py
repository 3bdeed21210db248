"""
Preset registration system for rrdist.

Similar to an environment registry: named experiment presets are created
with rrdist.make('preset-id'), keyword overrides merged over the defaults.
"""

from typing import Any, Callable, Dict, Optional
import copy

KINDS = ("buckets", "fit", "histogram", "reduction")


class PresetSpec:
    """Specification for a registered experiment preset."""

    def __init__(
        self,
        id: str,
        entry_point: Callable,
        kwargs: Optional[Dict[str, Any]] = None,
        kind: str = "buckets",
        mode: Optional[str] = None,
        description: str = "",
    ):
        if kind not in KINDS:
            raise ValueError(f"Unknown preset kind {kind!r}. Available: {list(KINDS)}")
        self.id = id
        self.entry_point = entry_point
        self.kwargs = kwargs or {}
        self.kind = kind
        self.mode = mode
        self.description = description

    def make(self, **kwargs) -> Any:
        """Create the configuration object of this preset."""
        # Merge default kwargs with user-provided kwargs
        _kwargs = copy.deepcopy(self.kwargs)
        _kwargs.update(kwargs)
        return self.entry_point(**_kwargs)


class PresetRegistry:
    """Registry for experiment presets."""

    def __init__(self):
        self.preset_specs: Dict[str, PresetSpec] = {}

    def register(
        self,
        id: str,
        entry_point: Callable,
        kwargs: Optional[Dict[str, Any]] = None,
        kind: str = "buckets",
        mode: Optional[str] = None,
        description: str = "",
        force: bool = False,
    ):
        """
        Register a preset.

        Args:
            id: Preset ID (e.g., 'table2-paper')
            entry_point: Callable that builds the configuration
            kwargs: Default keyword arguments for the configuration
            kind: What the preset runs: buckets, fit, histogram or reduction
            mode: 'raw' or 'reduced' for bucket and fit presets
            description: One line shown by list_presets
            force: If True, overwrite existing registration
        """
        if id in self.preset_specs and not force:
            raise ValueError(
                f"Preset {id} already registered. Use force=True to overwrite."
            )

        self.preset_specs[id] = PresetSpec(
            id=id,
            entry_point=entry_point,
            kwargs=kwargs,
            kind=kind,
            mode=mode,
            description=description,
        )

    def spec(self, id: str) -> PresetSpec:
        if id not in self.preset_specs:
            raise ValueError(
                f"Preset {id} not found. Available presets: {list(self.preset_specs.keys())}"
            )
        return self.preset_specs[id]

    def make(self, id: str, **kwargs) -> Any:
        """
        Create a configuration by preset ID.

        Args:
            id: Preset ID
            **kwargs: Additional keyword arguments to override defaults

        Returns:
            Configuration instance
        """
        return self.spec(id).make(**kwargs)

    def list(self):
        """List all registered presets."""
        return list(self.preset_specs.keys())


# Global registry instance
registry = PresetRegistry()


def register(
    id: str,
    entry_point: Callable,
    kwargs: Optional[Dict[str, Any]] = None,
    kind: str = "buckets",
    mode: Optional[str] = None,
    description: str = "",
    force: bool = False,
):
    """
    Register a preset in the global registry.

    Example:
        >>> rrdist.register(
        ...     id='small-buckets',
        ...     entry_point=BatchConfig,
        ...     kwargs={'buckets': ((10, 19), (20, 29)), 'count_per_size': 100},
        ...     mode='raw',
        ... )
    """
    registry.register(id, entry_point, kwargs, kind, mode, description, force)


def make(id: str, **kwargs) -> Any:
    """
    Create a configuration by preset ID.

    Example:
        >>> import rrdist
        >>> config = rrdist.make('table2-paper')
        >>> config = rrdist.make('hist-19', min_count=500, threads=4)
    """
    return registry.make(id, **kwargs)


def get_spec(id: str) -> PresetSpec:
    return registry.spec(id)


def list_presets():
    """List all registered presets."""
    return registry.list()
