"""Genus-2 Jacobian arithmetic, Grant's embedding, and linear complexity of Jacobian walks."""

from .curve import Curve, curve_new, enumerate_points, point_counts
from .field import Ext2Element, FieldElement
from .generator import CoordinateFunction, WalkConfig, emit_stream, walk_nth
from .grant import GrantPoint, grant_add, grant_embed, mumford_from_grant
from .jacobian import MumfordDivisor, cantor_add, group_order, identity, mumford_new, scalar_mul
from .lincomp import berlekamp_massey, profile

__all__ = [
    "Curve", "curve_new", "enumerate_points", "point_counts",
    "Ext2Element", "FieldElement",
    "CoordinateFunction", "WalkConfig", "emit_stream", "walk_nth",
    "GrantPoint", "grant_add", "grant_embed", "mumford_from_grant",
    "MumfordDivisor", "cantor_add", "group_order", "identity", "mumford_new", "scalar_mul",
    "berlekamp_massey", "profile",
]
