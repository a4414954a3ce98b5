"""Schur and Bogomolov multipliers via the tails cover, plus a cocycle oracle."""

from .bogomolov import BogomolovResult, bogomolov_multiplier, schur_multiplier
from .cover import CoverContext, build_cover, lifted_commutator
from .oracle import OracleMode, h2_oracle

__all__ = ["BogomolovResult", "bogomolov_multiplier", "schur_multiplier", "CoverContext",
           "build_cover", "lifted_commutator", "OracleMode", "h2_oracle"]
