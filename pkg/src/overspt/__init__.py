"""Exact arithmetic for overpartition spt functions, their ranks and cranks,
and an executable catalog of the identities that connect them."""

from __future__ import annotations

from .counting import VARIANTS, spt_count, spt_counts
from .cyclotomic import CycInt
from .identities import CATALOG, CheckReport, run_check
from .laurent import ZLaurentSeries, specialize_at_root
from .qseries import QSeries, dissect, poch_inf, poch_product, reassemble
from .tables import TwoVarTable, nsb_table, stat_table

__all__ = [
    "CATALOG",
    "CheckReport",
    "CycInt",
    "QSeries",
    "TwoVarTable",
    "VARIANTS",
    "ZLaurentSeries",
    "dissect",
    "nsb_table",
    "poch_inf",
    "poch_product",
    "reassemble",
    "run_check",
    "specialize_at_root",
    "spt_count",
    "spt_counts",
    "stat_table",
]

__version__ = "0.1.0"
