"""Exact cone volume measures of polytopes and subspace concentration audits."""

from .audit import AFFINE, LINEAR, check_scc, enumerate_candidates, equality_diagnosis
from .exact import Fraction, affine_hull, determinant, linear_hull, rank_and_solve
from .generator import GenSpec, canonical, generate
from .lifting import build_tower, chain_bounds, lift_once, phi_embed, star_pyramid_volume
from .measure import cone_volumes, measure_on_affine, support_value, translated_weight
from .polytope import Polytope, center, centroid, convex_hull, is_pyramid, polar, volume

__version__ = "0.1.0"
