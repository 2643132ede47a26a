"""Transfinite rank, Noetherian certification and Adamek chains for finitely
presented skeletons of higher categories."""
from __future__ import annotations

from .fixpoint import (FixpointReport, NoStabilizationWithinBudget, StabilizedAt, lambek_check,
                       run_chain)
from .noetherian import Certified, CounterTower, certify, replay_tower
from .ordinals import LAMBDA, OMEGA, Ordinal, parse_ordinal, print_ordinal
from .rank import BOTTOM, Bottom, NoSmallRank, Of, member, member_via_homs, rank_of
from .skeleton import SkeletonEnv, construct
from .syntax import parse_expr, parse_file, print_env, print_expr

__version__ = "0.1.0"
