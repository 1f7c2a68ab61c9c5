"""Exact construction, verification and minimisation of Kochen-Specker ray sets."""

from .colouring import Colouring, Mode, NonColourable, ParityCertificate, solve, validate
from .construct import compose_zp, iterate_lift, lift
from .rays import Ray, RaySet, canonicalize, dot, format_set, parse_set

__all__ = [
    "Colouring", "Mode", "NonColourable", "ParityCertificate", "Ray", "RaySet",
    "canonicalize", "compose_zp", "dot", "format_set", "iterate_lift", "lift",
    "parse_set", "solve", "validate",
]
