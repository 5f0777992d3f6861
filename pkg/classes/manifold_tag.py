"""Manifold, basis-case and gluing-mode enumerations."""

from enum import Enum


class ManifoldTag(str, Enum):
    """Enum representing the discretized manifolds."""

    TORUS3 = "torus3"
    TORUS2 = "torus2"
    MODULAR_SOLID = "modular_solid"
    DISC2_X_CIRCLE = "disc2_x_circle"
    DISC2 = "disc2"


class CaseTag(str, Enum):
    """Enum representing the families of the flat-torus eigenbasis."""

    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"
    CONSTANT = "Constant"


class FrontGluing(str, Enum):
    """Enum representing how the front face of the modular solid is glued."""

    OVERLAP = "overlap"
    EXACT = "exact"
