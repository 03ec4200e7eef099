"""Exact verification of Courant algebroid identities and the L-infinity algebra they carry."""

from .algebroid import ConstructionError, LieAlgebroid, LieBialgebroidPair, bialgebroid_compat_check
from .courant import CourantInstance, Section, bialgebroid_double, drinfeld_double, quadratic_lie_algebra, so3, standard_instance
from .dirac import DiracCandidate, extract_bialgebroid, is_dirac, is_integrable, is_isotropic
from .kernels import BACKEND
from .linfty import Resolution, shla_defect
from .planfile import load_plan, load_plan_file
from .poly import Poly, format_poly, parse_poly
from .runner import run_plan

__all__ = [
    "BACKEND",
    "ConstructionError",
    "CourantInstance",
    "DiracCandidate",
    "LieAlgebroid",
    "LieBialgebroidPair",
    "Poly",
    "Resolution",
    "Section",
    "bialgebroid_compat_check",
    "bialgebroid_double",
    "drinfeld_double",
    "extract_bialgebroid",
    "format_poly",
    "is_dirac",
    "is_integrable",
    "is_isotropic",
    "load_plan",
    "load_plan_file",
    "parse_poly",
    "quadratic_lie_algebra",
    "run_plan",
    "shla_defect",
    "so3",
    "standard_instance",
]
