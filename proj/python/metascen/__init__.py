"""Scenario taxonomy toolkit: enumeration, notation, filtering, concept
lattices and developmental trajectories."""

try:
    from ._metascen_core import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # pragma: no cover - in-tree builds put the module on sys.path
    from _metascen_core import *  # noqa: F401,F403

__version__ = "0.1.0"
