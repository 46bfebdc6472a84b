"""Coefficient bounds for m-fold symmetric bi-univalent function classes."""

from .series import TruncatedSeries, SeriesError, revert, compose, mfold_lift, is_mfold_symmetric
from .ma_minda import PhiSpec, power_alpha, mobius_beta, custom_phi, parse_phi
from .bounds import ClassParams, BoundValue, bound_a_m1, bound_a_2m1, fekete_szego_bound, h_gamma
from .schwarz import SchwarzPoint, check_membership, coefficients_from_point
from .extremal import FeasibleRegion, empirical_max, validate_bounds

__version__ = "0.1.0"
