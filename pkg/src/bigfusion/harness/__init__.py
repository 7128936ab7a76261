"""Seeded instance generation, JSON persistence and batch verification."""

from .generate import InstanceSpec, draw_spec, generate, random_invertible, random_unitary
from .persist import dump_pair, load, pair_to_document, pairs_identical, parse_pair, save
from .suite import Report, TheoremCheck, run_suite

__all__ = [
    "InstanceSpec",
    "Report",
    "TheoremCheck",
    "draw_spec",
    "dump_pair",
    "generate",
    "load",
    "pair_to_document",
    "pairs_identical",
    "parse_pair",
    "random_invertible",
    "random_unitary",
    "run_suite",
    "save",
]
