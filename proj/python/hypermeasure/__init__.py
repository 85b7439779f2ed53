"""Python access to the hypermeasure core."""

import json
from fractions import Fraction

from ._core import HypermeasureError, d_mnr, hyp2f1_remainder, n_dmnr, poly_str, tables_csv
from . import _core

__all__ = [
    "HypermeasureError",
    "x_poly",
    "y_poly",
    "poly_str",
    "d_mnr",
    "n_dmnr",
    "hyp2f1_remainder",
    "measure",
    "tables_csv",
]


def x_poly(m, n, r):
    """Coefficients of X_{m,n,r}, lowest degree first."""
    return [Fraction(c) for c in _core.x_poly(m, n, r)]


def y_poly(m, n, r):
    return [Fraction(c) for c in _core.y_poly(m, n, r)]


def measure(a, b, m, n, prec=50, cn=None, log_dn=None):
    """Measure constants for ((a)/(b))^(m/n) as a dict; a, b are strings like "4+sqrt(-3)"."""
    return json.loads(_core.measure_json(str(a), str(b), m, n, prec, cn, log_dn))
