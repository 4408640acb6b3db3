"""Finite fields, F_q[T], its ideals and unit groups, and F_q(T)."""

from .factor import factor, factor_cz, is_irreducible, monic_irreducibles
from .finite_field import GF, FiniteField
from .ideals import MonicIdeal, UnitGroup, crt, discrete_log, euler_phi, unit_group
from .parse import ParseError, parse_expr, parse_poly
from .poly import Poly, all_polys_below, monics
from .rational import RatFunc

__all__ = [
    "FiniteField", "GF", "Poly", "RatFunc", "MonicIdeal", "UnitGroup",
    "factor", "factor_cz", "is_irreducible", "monic_irreducibles", "unit_group",
    "discrete_log", "euler_phi", "crt", "parse_poly", "parse_expr", "ParseError",
    "monics", "all_polys_below",
]
