"""Monomial actions on Laurent variables and staged action scripts."""

from __future__ import annotations

import json
from importlib import resources

from .action import (ActionVerdict, FaithfulnessVerdict, evaluate_word, faithfulness_check,
                     integer_left_kernel, invariant_sublattice, verify_group_action)
from .builder import SCRIPT_NAMES, SHIPPED_PRIMES, build_script, build_shipped, step1_table
from .maps import MonomialMap, compose, inverse
from .script import (ActionScript, ScriptReport, Stage, StageReport, induced_table, load_script,
                     perturb, verify_script)

__all__ = [
    "MonomialMap", "compose", "inverse", "evaluate_word", "verify_group_action", "faithfulness_check",
    "invariant_sublattice", "integer_left_kernel", "ActionVerdict", "FaithfulnessVerdict",
    "ActionScript", "Stage", "StageReport", "ScriptReport", "load_script", "verify_script", "perturb",
    "induced_table", "build_script", "build_shipped", "step1_table", "SCRIPT_NAMES", "SHIPPED_PRIMES",
    "shipped_script", "shipped_primes", "verify_shipped",
]


def _shipped_doc(name: str) -> dict:
    if name not in SCRIPT_NAMES:
        raise KeyError(f"unknown script {name!r}; shipped: {', '.join(SCRIPT_NAMES)}")
    text = resources.files(__package__).joinpath("scripts", f"{name}.json").read_text()
    return json.loads(text)


def shipped_primes(name: str) -> list[int]:
    return [int(d["prime"]) for d in _shipped_doc(name)["instances"]]


def shipped_script(name: str, p: int) -> ActionScript:
    """A shipped script instance; primes without a shipped file are built on the fly."""
    for doc in _shipped_doc(name)["instances"]:
        if int(doc["prime"]) == p:
            return load_script(doc)
    return load_script(build_script(name, p))


def verify_shipped(p: int, names=SCRIPT_NAMES, budget: int | None = None) -> list[ScriptReport]:
    return [verify_script(shipped_script(n, p), budget) for n in names]
