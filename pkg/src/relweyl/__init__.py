"""Relative Weyl groups, coinvariant algebras and the W(L)-action on H*(G/P)."""

from .root_system import CartanType, RootSystem, build_root_system
from .weyl_group import (RelativeWeylGroup, WeylElement, WeylGroup, parabolic_subgroup,
                         relative_weyl_group, weyl_group)

__all__ = ["CartanType", "RootSystem", "build_root_system", "RelativeWeylGroup", "WeylElement",
           "WeylGroup", "parabolic_subgroup", "relative_weyl_group", "weyl_group"]
__version__ = "0.1.0"
