"""Action scripts: staged variable changes with checkable claims.

A script is a JSON document::

    {"format": "b0kit-action-script", "version": 1, "name": ..., "prime": p,
     "group": {"family": ID, "p": p} | {"dsl": TEXT},
     "root_order": N,
     "stages": [STAGE, ...]}

and a stage is::

    {"name": ..., "variables": [...],
     "generators": {g: {"rows": {var: {var: exp}}, "scalars": {var: k},
                        "opaque_rows": [var, ...]}},
     "substitution": null | {"from": STAGE, "monomials": {var: {prev_var: exp}},
                             "complement": [prev_var, ...],
                             "coefficient_block": [prev_var, ...],
                             "distinguished": prev_var},
     "claims": [{"kind": "FullLatticeChange"}
                | {"kind": "InvariantSublattice", "generators": [g, ...],
                   "opaque_model": {g: {prev_var: k}}}
                | {"kind": "LinearizationPattern", "generator": g, "cycle": [var, ...]}
                | {"kind": "Faithful"}],
     "notes": [...], "corrections": [...]}

Rows omitted from a generator table are fixed.  A row listed under
``opaque_rows`` carries an extra unit from a fixed coefficient field; only its
monomial shape is checked.  ``complement`` names previous variables that
complete the substitution to a basis; ``coefficient_block`` names previous
variables that become coefficients (their span must be invariant).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from ..abelian import determinant, hermite_normal_form
from ..errors import B0KitError, PresentationError
from ..pc.presentation import PcPresentation, parse_presentation
from .action import faithfulness_check, invariant_sublattice, verify_group_action
from .maps import MonomialMap

FORMAT = "b0kit-action-script"
CLAIM_KINDS = ("FullLatticeChange", "InvariantSublattice", "LinearizationPattern", "Faithful")


@dataclass
class Stage:
    name: str
    variables: list[str]
    generators: dict[str, dict]
    substitution: dict | None = None
    claims: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    corrections: list[str] = field(default_factory=list)

    @property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.variables)}

    def map(self, g: str, root_order: int, shape_only: bool = False) -> MonomialMap:
        pos = self.index
        n = len(self.variables)
        A = np.eye(n, dtype=np.int64)
        c = np.zeros(n, dtype=np.int64)
        entry = self.generators.get(g, {})
        for v, row in entry.get("rows", {}).items():
            i = pos[v]
            A[i] = 0
            for k, e in row.items():
                A[i, pos[k]] += int(e)
        if not shape_only:
            for v, k in entry.get("scalars", {}).items():
                c[pos[v]] = int(k)
        return MonomialMap.from_arrays(A, c, root_order)

    def opaque_rows(self, g: str) -> set[str]:
        return set(self.generators.get(g, {}).get("opaque_rows", []))

    def has_opaque(self) -> bool:
        return any(e.get("opaque_rows") for e in self.generators.values())

    def to_dict(self) -> dict:
        return {"name": self.name, "variables": self.variables, "generators": self.generators,
                "substitution": self.substitution, "claims": self.claims,
                "notes": self.notes, "corrections": self.corrections}


@dataclass
class ActionScript:
    name: str
    prime: int
    group: dict
    root_order: int
    stages: list[Stage]
    description: str = ""

    def presentation(self) -> PcPresentation:
        if "family" in self.group:
            import warnings

            from ..catalog import family_presentation
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                return family_presentation(self.group["family"], int(self.group.get("p", self.prime)))
        return parse_presentation(self.group["dsl"], p=self.prime, name=self.name)

    def stage(self, name: str) -> Stage:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"format": FORMAT, "version": 1, "name": self.name, "prime": self.prime,
                "description": self.description, "group": self.group,
                "root_order": self.root_order, "stages": [s.to_dict() for s in self.stages]}

    @classmethod
    def from_dict(cls, doc: dict) -> "ActionScript":
        if doc.get("format") != FORMAT:
            raise PresentationError(f"not an action script (format {doc.get('format')!r})")
        stages = [Stage(s["name"], list(s["variables"]), dict(s.get("generators", {})),
                        s.get("substitution"), list(s.get("claims", [])),
                        list(s.get("notes", [])), list(s.get("corrections", [])))
                  for s in doc["stages"]]
        return cls(doc["name"], int(doc["prime"]), dict(doc["group"]), int(doc["root_order"]),
                   stages, doc.get("description", ""))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def load_script(source) -> ActionScript:
    """From a dict, JSON text, or a path."""
    if isinstance(source, dict):
        return ActionScript.from_dict(source)
    text = str(source)
    if not text.lstrip().startswith("{"):
        with open(text) as fh:
            text = fh.read()
    return ActionScript.from_dict(json.loads(text))


# ----------------------------------------------------------------------------
# reports

@dataclass
class Check:
    check: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"check": self.check, "ok": self.ok, "detail": self.detail}


@dataclass
class StageReport:
    stage: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def violation(self) -> str | None:
        for c in self.checks:
            if not c.ok:
                return f"{self.stage}: {c.check}: {c.detail}"
        return None

    def to_dict(self) -> dict:
        return {"stage": self.stage, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


@dataclass
class ScriptReport:
    script: str
    prime: int
    stages: list[StageReport]
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.skipped and all(s.ok for s in self.stages)

    @property
    def first_violation(self) -> str | None:
        for s in self.stages:
            if not s.ok:
                return s.violation
        return None

    @property
    def verdict(self) -> str:
        return "Pass" if self.ok else "Fail"

    def to_dict(self) -> dict:
        return {"script": self.script, "prime": self.prime, "outcome": self.verdict,
                "first_violation": self.first_violation,
                "stages": [s.to_dict() for s in self.stages], "skipped_stages": self.skipped}


# ----------------------------------------------------------------------------
# verification

class _Fail(Exception):
    pass


def _rational_inverse(T: np.ndarray) -> list[list[Fraction]]:
    n = T.shape[0]
    M = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(T.tolist())]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise _Fail("substitution matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def _solve(v, Tinv) -> list[Fraction]:
    n = len(Tinv)
    return [sum((Fraction(int(v[i])) * Tinv[i][j] for i in range(n) if v[i]), Fraction(0)) for j in range(n)]


def _mono_text(vec, names) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, vec) if e]
    return "*".join(parts) if parts else "1"


class _StageContext:
    """Previous-stage data needed to check a substitution."""

    def __init__(self, script: ActionScript, stage: Stage, prev: Stage):
        sub = stage.substitution
        self.script, self.stage, self.prev = script, stage, prev
        self.N = script.root_order
        ppos = prev.index
        self.block = [ppos[v] for v in sub.get("coefficient_block", [])]
        self.free = [i for i in range(len(prev.variables)) if i not in set(self.block)]
        m = len(prev.variables)
        S = np.zeros((len(stage.variables), m), dtype=np.int64)
        for k, v in enumerate(stage.variables):
            mono = sub["monomials"].get(v)
            if mono is None:
                raise _Fail(f"no substitution monomial for {v}")
            for name, e in mono.items():
                if name not in ppos:
                    raise _Fail(f"substitution for {v} uses unknown variable {name}")
                S[k, ppos[name]] += int(e)
        self.S = S
        comp = sub.get("complement", [])
        C = np.zeros((len(comp), m), dtype=np.int64)
        for k, v in enumerate(comp):
            C[k, ppos[v]] = 1
        self.C = C
        T = np.concatenate([S, C])[:, self.free]
        if T.shape[0] != T.shape[1]:
            raise _Fail(f"substitution plus complement has {T.shape[0]} rows for "
                        f"{T.shape[1]} free variables")
        self.T = T
        self.det = determinant(T.tolist())
        self.Tinv = _rational_inverse(T) if self.det else None

    def coordinates(self, vec) -> tuple[list[int], list[int]] | None:
        """Write vec (free part) as t_S S + t_C C; None unless integral."""
        t = _solve([vec[i] for i in self.free], self.Tinv)
        if any(x.denominator != 1 for x in t):
            return None
        k = self.S.shape[0]
        return [int(x) for x in t[:k]], [int(x) for x in t[k:]]


def _prev_map(ctx: _StageContext, g: str, model: dict | None = None) -> tuple[MonomialMap, set[int]]:
    """Previous map of g and the indices of rows whose scalars are unknown."""
    prev = ctx.prev
    f = prev.map(g, ctx.N)
    opaque = {prev.index[v] for v in prev.opaque_rows(g)}
    if model and g in model:
        c = f.scalars.copy()
        for v, k in model[g].items():
            c[prev.index[v]] = int(k)
            opaque.discard(prev.index[v])
        if opaque:
            raise _Fail(f"opaque rows of {g} lack a model: "
                        + ", ".join(prev.variables[i] for i in sorted(opaque)))
        f = MonomialMap.from_arrays(f.matrix, c, ctx.N)
    return f, opaque


def _check_block(ctx: _StageContext, gens) -> None:
    if not ctx.block:
        return
    bset = set(ctx.block)
    for g in gens:
        A = ctx.prev.map(g, ctx.N).matrix
        for i in ctx.block:
            outside = [j for j in np.flatnonzero(A[i]) if j not in bset]
            if outside:
                raise _Fail(f"coefficient block is not invariant: {g} moves {ctx.prev.variables[i]} "
                            f"onto {ctx.prev.variables[outside[0]]}")


def _induced_rows(ctx: _StageContext, g: str, model: dict | None):
    """Per new variable: (exponent vector, scalar, carries an opaque unit)."""
    f, unknown = _prev_map(ctx, g, model)
    A, c = f.matrix, f.scalars
    out = []
    for k, v in enumerate(ctx.stage.variables):
        row = ctx.S[k]
        img = row @ A
        scalar = int(row @ c) % ctx.N
        opaque = any(img[i] for i in ctx.block) or any(row[i] for i in unknown)
        co = ctx.coordinates(img)
        if co is None or any(co[1]):
            raise _Fail(f"{g}({v}) leaves the span of the new variables")
        out.append((co[0], scalar, opaque))
    return out


def _check_induced(ctx: _StageContext, gens, model: dict | None) -> None:
    """The stage table must equal the action induced through the substitution."""
    names = ctx.stage.variables
    for g in gens:
        mine = ctx.stage.map(g, ctx.N)
        declared = ctx.stage.opaque_rows(g)
        for k, (t, scalar, opaque) in enumerate(_induced_rows(ctx, g, model)):
            v = names[k]
            if list(mine.matrix[k]) != t:
                raise _Fail(f"{g}({v}): table says {_mono_text(mine.matrix[k], names)}, "
                            f"induced action gives {_mono_text(t, names)}")
            if opaque and v not in declared:
                raise _Fail(f"{g}({v}) picks up a coefficient-field unit that the table does not declare")
            if not opaque and v not in declared and scalar != int(mine.scalars[k]):
                raise _Fail(f"{g}({v}): table scalar zeta^{int(mine.scalars[k])}, induced zeta^{scalar}")


def induced_table(script: ActionScript, stage: Stage, prev: Stage) -> dict:
    """{g: {var: (monomial dict, scalar, opaque)}} induced from `prev`."""
    ctx = _StageContext(script, stage, prev)
    model = {}
    for c in stage.claims:
        model.update(c.get("opaque_model", {}))
    out = {}
    for g in script.presentation().gens:
        rows = {}
        for v, (t, scalar, opaque) in zip(stage.variables, _induced_rows(ctx, g, model)):
            rows[v] = ({n: e for n, e in zip(stage.variables, t) if e}, scalar, opaque)
        out[g] = rows
    return out


def _check_distinguished(ctx: _StageContext, gens) -> None:
    d = ctx.stage.substitution.get("distinguished")
    if d is None:
        return
    i = ctx.prev.index[d]
    if i in ctx.block or d not in ctx.stage.substitution.get("complement", []):
        raise _Fail(f"distinguished variable {d} must be in the complement")
    for g in gens:
        f = ctx.prev.map(g, ctx.N)
        vec = f.matrix[i].copy()
        vec[i] -= 1
        co = ctx.coordinates(vec)
        if co is None or any(co[1]):
            raise _Fail(f"{g}({d}) is not a unit of the new field times {d}")


def _claim_full(ctx: _StageContext, claim) -> str:
    if abs(ctx.det) != 1:
        raise _Fail(f"substitution determinant is {ctx.det}, not +-1")
    return "unimodular"


def _claim_invariant(ctx: _StageContext, claim) -> str:
    if ctx.block or len(ctx.C):
        raise _Fail("InvariantSublattice needs a plain substitution")
    model = claim.get("opaque_model")
    maps = [_prev_map(ctx, g, model)[0] for g in claim["generators"]]
    for g, f in zip(claim["generators"], maps):
        for k, v in enumerate(ctx.stage.variables):
            if not f.fixes(ctx.S[k]):
                raise _Fail(f"{v} = {_mono_text(ctx.S[k], ctx.prev.variables)} is not fixed by {g}")
    L = invariant_sublattice(maps)
    H = hermite_normal_form(ctx.S.tolist(), ctx.S.shape[1])
    if H != L:
        idx = abs(determinant(L)) if len(L) == len(L[0] if L else []) else "?"
        raise _Fail(f"substitution monomials span a lattice of index {abs(ctx.det)}, "
                    f"the fixed lattice has index {idx}")
    return f"index {abs(ctx.det)}"


def _claim_pattern(script: ActionScript, stage: Stage, claim) -> str:
    g, cyc = claim["generator"], claim["cycle"]
    pos = stage.index
    f = stage.map(g, script.root_order)
    A, c = f.matrix, f.scalars
    n = len(stage.variables)
    units = [z for z in cyc if z in stage.opaque_rows(g)]
    if units:
        raise _Fail(f"{g}({units[0]}) carries a coefficient unit; the pattern must be exact")
    for a, b in zip(cyc, cyc[1:]):
        want = np.zeros(n, dtype=np.int64)
        want[pos[b]] = 1
        if not (A[pos[a]] == want).all() or c[pos[a]]:
            raise _Fail(f"{g}({a}) should be {b}")
    want = np.zeros(n, dtype=np.int64)
    for z in cyc:
        want[pos[z]] = -1
    if not (A[pos[cyc[-1]]] == want).all() or c[pos[cyc[-1]]]:
        raise _Fail(f"{g}({cyc[-1]}) should be ({'*'.join(cyc)})^-1")
    return f"{g} cycles {len(cyc)} variables"


def verify_stage(script: ActionScript, stage: Stage, prev: Stage | None, pres: PcPresentation,
                 budget: int | None = None) -> StageReport:
    rep = StageReport(stage.name)
    gens = list(pres.gens)

    def run(name, fn):
        try:
            rep.checks.append(Check(name, True, fn() or ""))
            return True
        except _Fail as exc:
            rep.checks.append(Check(name, False, str(exc)))
            return False
        except (B0KitError, ValueError) as exc:
            # e.g. a singular exponent matrix in a table
            rep.checks.append(Check(name, False, str(exc)))
            return False

    def wellformed():
        pos = stage.index
        if len(pos) != len(stage.variables):
            raise _Fail("duplicate variable names")
        for g, entry in stage.generators.items():
            if g not in gens:
                raise _Fail(f"unknown generator {g}")
            for v, row in entry.get("rows", {}).items():
                if v not in pos or any(k not in pos for k in row):
                    raise _Fail(f"row {g}({v}) mentions an unknown variable")
            for v in list(entry.get("scalars", {})) + list(entry.get("opaque_rows", [])):
                if v not in pos:
                    raise _Fail(f"scalar for unknown variable {v} under {g}")
        for c in stage.claims:
            if c.get("kind") not in CLAIM_KINDS:
                raise _Fail(f"unknown claim kind {c.get('kind')!r}")
        return f"{len(stage.variables)} variables"

    if not run("well-formed", wellformed):
        return rep

    table = {g: stage.map(g, script.root_order) for g in gens}

    def action():
        shape = stage.has_opaque()
        v = verify_group_action(pres, table, shape_only=shape)
        if not v.ok:
            raise _Fail(v.violation)
        return f"{v.relations_checked} relations" + (" (shapes only)" if shape else "")

    if not run("group action", action):
        return rep

    if stage.substitution is not None:
        if prev is None:
            rep.checks.append(Check("substitution", False, "no previous stage"))
            return rep
        try:
            ctx = _StageContext(script, stage, prev)
        except _Fail as exc:
            rep.checks.append(Check("substitution", False, str(exc)))
            return rep
        if ctx.Tinv is None:
            rep.checks.append(Check("substitution", False, "substitution matrix is singular"))
            return rep
        model = {}
        for c in stage.claims:
            model.update(c.get("opaque_model", {}))
        if not run("coefficient block", lambda: _check_block(ctx, gens)):
            return rep
        if not run("induced action", lambda: _check_induced(ctx, gens, model)):
            return rep
        if not run("AHK shape", lambda: _check_distinguished(ctx, gens)):
            return rep
    for claim in stage.claims:
        kind = claim["kind"]
        label = kind + (f"({claim['generator']})" if "generator" in claim else "")
        if kind == "LinearizationPattern":
            ok = run(label, lambda: _claim_pattern(script, stage, claim))
        elif kind == "Faithful":
            def faithful():
                v = faithfulness_check(pres, table, budget)
                if not v.faithful:
                    raise _Fail(f"{v.witness} acts trivially")
                return f"{v.elements} elements"
            ok = run(label, faithful)
        else:
            if stage.substitution is None:
                rep.checks.append(Check(label, False, "claim needs a substitution"))
                return rep
            fn = _claim_full if kind == "FullLatticeChange" else _claim_invariant
            if kind == "InvariantSublattice":
                label += "(" + ",".join(claim["generators"]) + ")"
            ok = run(label, lambda: fn(ctx, claim))
        if not ok:
            return rep
    return rep


def verify_script(script, budget: int | None = None) -> ScriptReport:
    """Stage-by-stage report; stops at the first stage with a violated claim."""
    if not isinstance(script, ActionScript):
        script = load_script(script)
    pres = script.presentation()
    report = ScriptReport(script.name, script.prime, [])
    prev = None
    for i, stage in enumerate(script.stages):
        src = prev
        if stage.substitution and stage.substitution.get("from"):
            src = script.stage(stage.substitution["from"])
        rep = verify_stage(script, stage, src, pres, budget)
        report.stages.append(rep)
        if not rep.ok:
            report.skipped = [s.name for s in script.stages[i + 1:]]
            break
        prev = stage
    return report


def perturb(script: ActionScript, stage_name: str, rng=None) -> tuple[ActionScript, str]:
    """Copy of the script with one exponent of one stage changed.

    Prefers a table row that moves a variable; falls back to a substitution
    exponent.  Returns the new script and a description of the change.
    """
    import copy
    import random

    rng = rng or random.Random(0)
    doc = copy.deepcopy(script.to_dict())
    st = next(s for s in doc["stages"] if s["name"] == stage_name)
    moving = [(g, v) for g, e in sorted(st["generators"].items()) for v in sorted(e.get("rows", {}))]
    if moving:
        g, v = moving[rng.randrange(len(moving))]
        row = st["generators"][g]["rows"][v]
        k = sorted(row)[rng.randrange(len(row))]
        row[k] = int(row[k]) + 1
        what = f"{stage_name}: exponent of {k} in {g}({v}) raised by 1"
    else:
        mono = st["substitution"]["monomials"]
        v = sorted(mono)[rng.randrange(len(mono))]
        k = sorted(mono[v])[0]
        mono[v][k] = int(mono[v][k]) + 1
        what = f"{stage_name}: exponent of {k} in the substitution for {v} raised by 1"
    return ActionScript.from_dict(doc), what
