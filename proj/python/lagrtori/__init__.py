"""Lagrangian tori of the projective plane."""

import json

from ._lagrtori import (  # noqa: F401
    LagrtoriError,
    __version__,
    chekanov_periods,
    classify_type,
    enc_verdict,
    fiber_periods,
    ks_determinant,
    maslov_d1,
    moment_map,
    plot_svg,
    symbol_flow,
)
from . import _lagrtori


def bs_count(level, closed=False):
    return json.loads(_lagrtori._bs_count(level, closed))


def enc_report(grid):
    return json.loads(_lagrtori._enc_report(grid))


def chekanov_scan(mu=1.0, a_min=0.1, a_max=0.9, a_step=0.1, delta_min=-0.9, delta_max=0.9, delta_step=0.1,
                  cert_grid=128):
    return json.loads(_lagrtori._chekanov_scan(complex(mu), a_min, a_max, a_step, delta_min, delta_max,
                                               delta_step, cert_grid))
