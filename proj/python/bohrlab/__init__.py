"""Bohr-type inequalities on shifted disks."""

from ._core import (
    CSV_HEADER,
    BohrReport,
    Certified,
    PowerSeries,
    area_ratio,
    evaluate,
    extremal_fa,
    family_radius,
    fournier_ruscheweyh_radius,
    gadget,
    majorant_sum,
    make_p,
    make_q,
    random_schur_pullback,
    replay,
    run_campaign,
    sharpness_witness,
)

__all__ = [
    "CSV_HEADER",
    "BohrReport",
    "Certified",
    "PowerSeries",
    "area_ratio",
    "evaluate",
    "extremal_fa",
    "family_radius",
    "fournier_ruscheweyh_radius",
    "gadget",
    "majorant_sum",
    "make_p",
    "make_q",
    "random_schur_pullback",
    "replay",
    "run_campaign",
    "sharpness_witness",
]
