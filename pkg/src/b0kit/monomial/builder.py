"""Constructors for the shipped action scripts.

Each generator table is written down from the displayed formulas of the
Noether argument for Phi15(21^4) and the two linearization lemmas, one helper
per display.  Scalars are exponents of eta, a primitive p^2-th root of unity,
so omega^k is eta^(p k).  Where a display cannot be right (it disagrees with
the action induced from the previous stage), the builder uses the induced row
and records the printed one under ``corrections``; ``literal=True`` keeps the
printed row instead.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from ..catalog.arithmetic import smallest_primitive_root
from .maps import MonomialMap

SCRIPT_NAMES = ("phi15_step1", "phi15_step2", "phi15_step3", "lemma36", "cor37", "lemma38")
SHIPPED_PRIMES = (5, 7)


class TableBuilder:
    """Sparse generator tables over named variables; unset rows are identity."""

    def __init__(self, variables, gens, root_order: int):
        self.vars = list(variables)
        self.pos = {v: i for i, v in enumerate(self.vars)}
        self.gens = list(gens)
        self.N = root_order
        self.rows = {g: {} for g in self.gens}      # gen -> var -> {var: exp}
        self.scalars = {g: {} for g in self.gens}   # gen -> var -> scalar exponent
        self.opaque = {g: set() for g in self.gens}

    def set(self, g: str, var: str, mono: dict, scalar: int = 0, opaque: bool = False):
        self.rows[g][var] = {k: v for k, v in mono.items() if v}
        if scalar % self.N:
            self.scalars[g][var] = scalar % self.N
        else:
            self.scalars[g].pop(var, None)
        if opaque:
            self.opaque[g].add(var)

    def scale(self, g: str, var: str, scalar: int):
        self.set(g, var, {var: 1}, scalar)

    def cycle(self, g: str, chain):
        """Lemma 3.6 pattern z1 -> z2 -> ... -> z_{p-1} -> (z1...z_{p-1})^-1."""
        for a, b in zip(chain, chain[1:]):
            self.set(g, a, {b: 1})
        self.set(g, chain[-1], {z: -1 for z in chain})

    def recycle(self, g: str, chain):
        """Corollary 3.7 pattern on (x1, ..., x_{p-1}):
        x1 -> x1 x2^p, x2 -> ... -> x_{p-1} -> 1/(x1 x2^{p-1} ... x_{p-1}^2)."""
        p = len(chain) + 1
        self.set(g, chain[0], {chain[0]: 1, chain[1]: p})
        for a, b in zip(chain[1:], chain[2:]):
            self.set(g, a, {b: 1})
        self.set(g, chain[-1], {chain[0]: -1, **{z: -(p - k) for k, z in enumerate(chain[1:], 1)}})

    def permute(self, g: str, chain):
        """Plain cycle a1 -> a2 -> ... -> ak -> a1."""
        for a, b in zip(chain, chain[1:] + chain[:1]):
            self.set(g, a, {b: 1})

    def map(self, g: str) -> MonomialMap:
        n = len(self.vars)
        A = [[0] * n for _ in range(n)]
        c = [0] * n
        for i, v in enumerate(self.vars):
            row = self.rows[g].get(v, {v: 1})
            for k, e in row.items():
                A[i][self.pos[k]] += e
            c[i] = self.scalars[g].get(v, 0)
        return MonomialMap(tuple(map(tuple, A)), tuple(c), self.N)

    def to_json(self) -> dict:
        out = {}
        for g in self.gens:
            entry = {"rows": {v: dict(r) for v, r in self.rows[g].items() if r != {v: 1}},
                     "scalars": dict(self.scalars[g])}
            if self.opaque[g]:
                entry["opaque_rows"] = sorted(self.opaque[g], key=self.pos.get)
            out[g] = entry
        return out


def _name(s: str, i: int, j: int | None = None) -> str:
    return f"{s}{i}" if j is None else f"{s}{i}{j}" if max(i, j) < 10 else f"{s}{i}_{j}"


# ----------------------------------------------------------------------------
# Phi15(21^4)

PHI15_GENS = ("a1", "a2", "a3", "a4", "b1", "b2")


def step1_table(p: int, halves=("x", "y")) -> TableBuilder:
    """The six displayed generator actions on x_ij, y_ij (0 <= i, j < p)."""
    th = smallest_primitive_root(p)
    w = p  # omega = eta^p
    names = [_name(h, i, j) for h in halves for i in range(p) for j in range(p)]
    t = TableBuilder(names, PHI15_GENS, p * p)
    for h in halves:
        for j in range(p):
            t.permute("a2", [_name(h, i, j) for i in range(p)])
        for i in range(p):
            t.permute("a3", [_name(h, i, j) for j in range(p)])
        for i in range(p):
            for j in range(p):
                v = _name(h, i, j)
                if h == "x":
                    t.scale("a1", v, w * j)
                    t.scale("a4", v, w * (-th * i + 1))
                    t.scale("b2", v, w)
                else:
                    t.scale("a1", v, w * (i + j) + 1)
                    t.scale("a4", v, w * (-th * i - j))
                    t.scale("b1", v, w)
                    t.scale("b2", v, w)
    return t


def phi15_group(p: int) -> dict:
    return {"family": "phi15_21^4", "p": p}


def write_script(doc: dict, directory: Path) -> Path:
    path = Path(directory) / f"{doc['name']}.json"
    path.write_text(json.dumps(doc, indent=1, sort_keys=False) + "\n")
    return path


def scripts_dir():
    return resources.files(__package__).joinpath("scripts")


# ----------------------------------------------------------------------------
# stage assembly

def _J(p):
    return [(i, j) for i in range(p) for j in range(p) if (i, j) != (0, 0)]


def _stage(name, t: TableBuilder, substitution=None, claims=(), notes=()):
    return {"name": name, "variables": list(t.vars), "generators": t.to_json(),
            "substitution": substitution, "claims": list(claims), "notes": list(notes),
            "corrections": []}


def _unit_sub(src, names, complement=(), block=(), rename=None):
    rename = rename or {}
    mono = {n: {rename.get(n, n): 1} for n in names}
    out = {"from": src, "monomials": mono}
    if complement:
        out["complement"] = list(complement)
    if block:
        out["coefficient_block"] = list(block)
    return out


def _orbit_monomials(stage: dict, g: str, start: str, count: int, N: int) -> list[dict]:
    """Monomial parts of start, g.start, ..., g^(count-1).start from a stage table."""
    from .script import Stage

    st = Stage(stage["name"], stage["variables"], stage["generators"])
    f = st.map(g, N, shape_only=True)
    pos = st.index
    vec = [0] * len(st.variables)
    vec[pos[start]] = 1
    out = []
    for _ in range(count):
        out.append({v: e for v, e in zip(st.variables, vec) if e})
        vec = f.apply(vec)[1]
    return out


def _u_stage(p, h, src, side):
    """Step 2/3 u-variables from x (side 2) or y (side 3)."""
    th = smallest_primitive_root(p)
    w = p
    names = [_name("u", i, j) for i, j in _J(p)]
    t = TableBuilder(names, PHI15_GENS, p * p)
    U = lambda i, j: _name("u", i, j)  # noqa: E731
    for j in range(1, p):
        t.set("a2", U(0, j), {U(1, j): 1, U(1, j - 1): -1, U(0, j): 1})
    for j in range(p):
        t.cycle("a2", [U(i, j) for i in range(1, p)])
    t.cycle("a3", [U(0, j) for j in range(1, p)])
    for i in range(1, p):
        t.permute("a3", [U(i, j) for j in range(p)])
    for i, j in _J(p):
        if i == 0:
            t.scale("a1", U(i, j), w)
            if side == 3:
                t.scale("a4", U(i, j), -w)
        else:
            t.scale("a4", U(i, j), -w * th)
            if side == 3:
                t.scale("a1", U(i, j), w)
    X = lambda i, j: _name(h, i, j)  # noqa: E731
    mono = {}
    for i, j in _J(p):
        if i == 0:
            mono[U(0, j)] = {X(0, j): 1, X(0, j - 1): -1}
        else:
            mono[U(i, j)] = {X(i, j): 1, X(i - 1, j): -1}
    sub = {"from": src, "monomials": mono, "complement": [X(0, 0)], "distinguished": X(0, 0)}
    return _stage("u", t, sub, [{"kind": "FullLatticeChange"}],
                  [f"L = k(u); every group element sends {X(0, 0)} into L*{X(0, 0)}"])


def _v_stage_step2(p):
    names = [_name("v", i, j) for i, j in _J(p)]
    t = TableBuilder(names, PHI15_GENS, p * p)
    V = lambda i, j: _name("v", i, j)  # noqa: E731
    U = lambda i, j: _name("u", i, j)  # noqa: E731
    for j in range(1, p):
        t.set("a2", V(0, j), {V(1, j): 1, V(0, j): 1})
    t.set("a2", V(1, 0), {V(1, 0): 1, V(2, 0): p})
    t.recycle("a2", [V(i, 0) for i in range(1, p)])
    t.set("a2", V(1, 0), {V(1, 0): 1, V(2, 0): p})
    for j in range(1, p):
        t.cycle("a2", [V(i, j) for i in range(1, p)])
    t.cycle("a3", [V(0, j) for j in range(1, p)])
    t.set("a3", V(1, 0), {V(1, 1): p, V(1, 0): 1})
    for i in range(2, p):
        t.set("a3", V(i, 0), {V(i, 1): 1, V(i - 1, 1): -1, V(i, 0): 1})
    for i in range(1, p):
        t.cycle("a3", [V(i, j) for j in range(1, p)])
    for j in range(1, p):
        t.scale("a1", V(0, j), p)
    mono = {V(1, 0): {U(1, 0): p}}
    for i in range(2, p):
        mono[V(i, 0)] = {U(i, 0): 1, U(i - 1, 0): -1}
    for j in range(1, p):
        mono[V(0, j)] = {U(0, j): 1}
    for i in range(1, p):
        for j in range(1, p):
            mono[V(i, j)] = {U(i, j): 1, U(i, j - 1): -1}
    return _stage("v", t, {"from": "u", "monomials": mono},
                  [{"kind": "InvariantSublattice", "generators": ["a4"]}],
                  ["k(v) is the fixed field of a4 on L"])


def _v_stage_step3(p):
    th = smallest_primitive_root(p)
    names = [_name("v", i, j) for i, j in _J(p)]
    t = TableBuilder(names, PHI15_GENS, p * p)
    V = lambda i, j: _name("v", i, j)  # noqa: E731
    U = lambda i, j: _name("u", i, j)  # noqa: E731
    t.set("a2", V(0, 1), {V(1, 1): 1, V(2, 0): -1, V(0, 1): 1})
    for j in range(2, p):
        t.set("a2", V(0, j), {V(1, j): 1, V(1, j - 1): -1, V(0, j): 1})
    t.recycle("a2", [V(i, 0) for i in range(1, p)])
    for j in range(1, p):
        t.cycle("a2", [V(i, j) for i in range(1, p)])
    t.recycle("a3", [V(0, j) for j in range(1, p)])
    t.set("a3", V(0, 1), {V(0, 2): 1, V(1, 1): -1, V(0, 1): 1})
    t.set("a3", V(1, 0), {V(1, 1): p, V(1, 0): 1})
    for i in range(2, p):
        t.set("a3", V(i, 0), {V(i, 1): 1, V(i - 1, 1): -1, V(i, 0): 1})
    for i in range(1, p):
        t.cycle("a3", [V(i, j) for j in range(1, p)])
    t.scale("a4", V(0, 1), p * (th - 1))
    mono = {V(1, 0): {U(1, 0): p}, V(0, 1): {U(0, 1): 1, U(1, 0): -1}}
    for i in range(2, p):
        mono[V(i, 0)] = {U(i, 0): 1, U(i - 1, 0): -1}
    for j in range(2, p):
        mono[V(0, j)] = {U(0, j): 1, U(0, j - 1): -1}
    for i in range(1, p):
        for j in range(1, p):
            mono[V(i, j)] = {U(i, j): 1, U(i, j - 1): -1}
    return _stage("v", t, {"from": "u", "monomials": mono},
                  [{"kind": "InvariantSublattice", "generators": ["a1"]}],
                  ["k(v) is the fixed field of a1 on L"])


def _w_stage(p, side):
    names = [_name("w", i, j) for i, j in _J(p)]
    t = TableBuilder(names, PHI15_GENS, p * p)
    W = lambda i, j: _name("w", i, j)  # noqa: E731
    V = lambda i, j: _name("v", i, j)  # noqa: E731
    t.set("a2", W(0, 1), {W(0, 1): 1, W(1, 0): p})
    for j in range(2, p):
        t.set("a2", W(0, j), {W(1, j): 1, W(1, j - 1): -1, W(0, j): 1})
    t.recycle("a2", [W(i, 0) for i in range(1, p)])
    for j in range(1, p):
        t.cycle("a2", [W(i, j) for i in range(1, p)])
    t.recycle("a3", [W(0, j) for j in range(1, p)])
    t.set("a3", W(1, 0), {W(1, 1): p, W(1, 0): 1})
    for i in range(2, p):
        t.set("a3", W(i, 0), {W(i, 1): 1, W(i - 1, 1): -1, W(i, 0): 1})
    for i in range(1, p):
        t.cycle("a3", [W(i, j) for j in range(1, p)])
    mono = {}
    for i, j in _J(p):
        mono[W(i, j)] = {V(i, j): 1}
    mono[W(0, 1)] = {V(0, 1): p}
    if side == 2:
        for j in range(2, p):
            mono[W(0, j)] = {V(0, j): 1, V(0, j - 1): -1}
    gen = "a1" if side == 2 else "a4"
    notes = [f"k(w) is the fixed field of {gen} on k(v)"]
    if side == 3:
        notes.append("table written with the step-2 w formulas, which the text says carry over")
    return _stage("w", t, {"from": "v", "monomials": mono},
                  [{"kind": "InvariantSublattice", "generators": [gen]}], notes)


def _rs_stages(p):
    """From the w-stage: r_i = w_0i, s_i = w_i0 over F, the block M of w_ij (i, j >= 1)."""
    W = lambda i, j: _name("w", i, j)  # noqa: E731
    R = [f"r{i}" for i in range(1, p)]
    S = [f"s{i}" for i in range(1, p)]
    M = [W(i, j) for i in range(1, p) for j in range(1, p)]
    rs_prev = [W(0, i) for i in range(1, p)] + [W(i, 0) for i in range(1, p)]
    out = []

    t = TableBuilder(M, PHI15_GENS, p * p)
    for i in range(1, p):
        t.cycle("a3", [W(i, j) for j in range(1, p)])
    for j in range(1, p):
        t.cycle("a2", [W(i, j) for i in range(1, p)])
    claims = [{"kind": "LinearizationPattern", "generator": "a3", "cycle": [W(i, j) for j in range(1, p)]}
              for i in range(1, p)]
    claims += [{"kind": "LinearizationPattern", "generator": "a2", "cycle": [W(i, j) for i in range(1, p)]}
               for j in range(1, p)]
    out.append(_stage("M", t, _unit_sub("w", M, complement=rs_prev), claims,
                      ["M = k(w_ij : i, j >= 1) is invariant; rows and columns follow the bicyclic lemma"]))

    t = TableBuilder(R + S, PHI15_GENS, p * p)
    t.set("a2", "r1", {"s1": p, "r1": 1})
    for r in R[1:]:
        t.set("a2", r, {r: 1}, opaque=True)
    t.recycle("a2", S)
    t.recycle("a3", R)
    for s in S:
        t.set("a3", s, {s: 1}, opaque=True)
    rename = {f"r{i}": W(0, i) for i in range(1, p)} | {f"s{i}": W(i, 0) for i in range(1, p)}
    out.append(_stage("rs", t, _unit_sub("w", R + S, block=M, rename=rename), [{"kind": "FullLatticeChange"}],
                      ["F = M^<a2,a3> is a coefficient field; units from M are opaque (shape only)"]))
    return out


def _primed_stages(p, rs_stage: dict):
    R = [f"r{i}" for i in range(1, p)]
    S = [f"s{i}" for i in range(1, p)]
    Rp = [f"rp{i}" for i in range(1, p)]
    Sp = [f"sp{i}" for i in range(1, p)]
    N = p * p
    out = []
    mono = dict(zip(Rp, _orbit_monomials(rs_stage, "a3", "r2", p - 1, N)))
    mono |= dict(zip(Sp, _orbit_monomials(rs_stage, "a2", "s2", p - 1, N)))
    t = TableBuilder(Rp + Sp, PHI15_GENS, N)
    for r in Rp:
        t.set("a2", r, {r: 1}, opaque=True)
    t.cycle("a2", Sp)
    t.cycle("a3", Rp)
    for s in Sp:
        t.set("a3", s, {s: 1}, opaque=True)
    out.append(_stage("rs'", t, {"from": "rs", "monomials": mono},
                      [{"kind": "FullLatticeChange"},
                       {"kind": "LinearizationPattern", "generator": "a3", "cycle": Rp},
                       {"kind": "LinearizationPattern", "generator": "a2", "cycle": Sp}],
                      ["r'_1 = r_2, r'_i = a3^(i-1).r_2 and s'_1 = s_2, s'_i = a2^(i-1).s_2"]))

    for half, mover, other, cyc, rest in (("r'", "a3", "a2", Rp, Sp), ("s'", "a2", "a3", Sp, Rp)):
        t = TableBuilder(cyc, PHI15_GENS, N)
        t.cycle(mover, cyc)
        for z in cyc:
            t.set(other, z, {z: 1}, opaque=True)
        out.append(_stage(half, t, _unit_sub("rs'", cyc, complement=rest), [],
                          [f"the {half} half spans an invariant sublattice"]))
        tn = "t" if half == "r'" else "tp"
        T = [f"{tn}{i}" for i in range(1, p)]
        t = TableBuilder(T, PHI15_GENS, N)
        t.recycle(mover, T)
        tm = {T[0]: {cyc[0]: p}}
        for k in range(1, p - 1):
            tm[T[k]] = {cyc[k]: 1, cyc[k - 1]: -1}
        model = {other: {z: p for z in cyc}}
        out.append(_stage(tn, t, {"from": half, "monomials": tm},
                          [{"kind": "InvariantSublattice", "generators": [other], "opaque_model": model}],
                          [f"{other} scales every {half} variable by the same coefficient unit; "
                           "modelled as omega, the reading under which the fixed field is k(t)"]))
        zn = "z" if half == "r'" else "zp"
        Z = [f"{zn}{i}" for i in range(1, p)]
        zstage = out[-1]
        t = TableBuilder(Z, PHI15_GENS, N)
        t.cycle(mover, Z)
        out.append(_stage(zn, t, {"from": tn, "monomials": dict(zip(Z, _orbit_monomials(zstage, mover, T[1], p - 1, N)))},
                          [{"kind": "FullLatticeChange"},
                           {"kind": "LinearizationPattern", "generator": mover, "cycle": Z}],
                          [f"z_1 = t_2, z_i = {mover}^(i-1).t_2 linearizes {mover}"]))
    return out


# ----------------------------------------------------------------------------
# reconciliation with the induced action

def _row_text(mono: dict, scalar: int, opaque: bool, N: int) -> str:
    parts = [k if e == 1 else f"{k}^{e}" for k, e in mono.items()]
    text = "*".join(parts) if parts else "1"
    if scalar:
        text = f"eta^{scalar}*{text}"
    return ("[unit]*" + text) if opaque else text


def _reconcile(doc: dict, literal: bool) -> dict:
    """Replace printed rows that disagree with the induced action."""
    from .script import ActionScript, _Fail, induced_table

    N = doc["root_order"]
    done = []
    for st in doc["stages"]:
        if st["substitution"] is None or literal:
            done.append(st)
            continue
        partial = ActionScript.from_dict({**doc, "stages": done + [st]})
        stage = partial.stages[-1]
        prev = partial.stage(st["substitution"].get("from") or done[-1]["name"])
        try:
            induced = induced_table(partial, stage, prev)
        except _Fail:
            done.append(st)
            continue
        for g, rows in induced.items():
            entry = st["generators"].setdefault(g, {"rows": {}, "scalars": {}})
            declared = set(entry.get("opaque_rows", []))
            for v, (mono, scalar, opaque) in rows.items():
                printed = entry["rows"].get(v, {v: 1})
                pscalar = int(entry["scalars"].get(v, 0))
                same_shape = {k: e for k, e in printed.items() if e} == mono
                same_scalar = opaque or v in declared or pscalar == scalar
                if same_shape and same_scalar and (not opaque or v in declared):
                    continue
                st["corrections"].append(
                    f"{g}({v}): printed {_row_text(printed, pscalar, v in declared, N)}, "
                    f"induced {_row_text(mono, 0 if opaque else scalar, opaque, N)}")
                if mono == {v: 1}:
                    entry["rows"].pop(v, None)
                else:
                    entry["rows"][v] = mono
                if opaque:
                    entry["scalars"].pop(v, None)
                    declared.add(v)
                    entry["opaque_rows"] = sorted(declared, key=st["variables"].index)
                elif scalar:
                    entry["scalars"][v] = scalar
                else:
                    entry["scalars"].pop(v, None)
        done.append(st)
    return doc


# ----------------------------------------------------------------------------
# the scripts

def _doc(name, p, group, stages, description, root_order=None, literal=False):
    doc = {"format": "b0kit-action-script", "version": 1, "name": name, "prime": p,
           "description": description, "group": group,
           "root_order": root_order or p * p, "stages": stages}
    return _reconcile(doc, literal)


def phi15_step1(p: int, literal: bool = False) -> dict:
    t = step1_table(p)
    st = _stage("W", t, None, [{"kind": "Faithful"}],
                ["W spanned by x_ij and y_ij; scalars are powers of eta (p^2-th root)"])
    return _doc("phi15_step1", p, phi15_group(p), [st],
                "Step 1: the faithful representation W of Phi15(21^4)", literal=literal)


def _phi15_tail(p, stages, literal):
    stages += _rs_stages(p)
    doc = _doc("tmp", p, phi15_group(p), stages, "", literal=literal)
    stages = doc["stages"]
    rs = next(s for s in stages if s["name"] == "rs")
    stages += _primed_stages(p, rs)
    return stages


def phi15_step2(p: int, literal: bool = False) -> dict:
    x = step1_table(p, ("x",))
    stages = [_stage("x", x, None, [], ["x-half of W; b1 acts trivially here"]),
              _u_stage(p, "x", "x", 2), _v_stage_step2(p), _w_stage(p, 2)]
    stages = _phi15_tail(p, stages, literal)
    return _doc("phi15_step2", p, phi15_group(p), stages,
                "Step 2: K = k(x_ij)^G through the u, v, w, r, s, t variable changes", literal=literal)


def phi15_step3(p: int, literal: bool = False) -> dict:
    y = step1_table(p, ("y",))
    stages = [_stage("y", y, None, [], ["y-half of W"]),
              _u_stage(p, "y", "y", 3), _v_stage_step3(p), _w_stage(p, 3)]
    stages[-1]["notes"].append("the displayed part of step 3 ends here; the rest is argued "
                               "by analogy with step 2 and is not scripted")
    return _doc("phi15_step3", p, phi15_group(p), stages,
                "Step 3: K(y_ij)^G over K down to the w variables", literal=literal)


def _cyclic_group(p, names=("b",)):
    return {"dsl": f"group C{p}^{len(names)} prime {p}\ngens {', '.join(names)}\n"}


def lemma36(p: int, literal: bool = False) -> dict:
    X = [f"x{i}" for i in range(1, p)]
    t = TableBuilder(X, ("b",), p)
    t.cycle("b", X)
    st = _stage("x", t, None, [{"kind": "LinearizationPattern", "generator": "b", "cycle": X}],
                ["b has order p: the cycle closes after p steps"])
    return _doc("lemma36", p, _cyclic_group(p), [st], "Cyclic action of order p on p-1 variables",
                root_order=p, literal=literal)


def cor37(p: int, literal: bool = False) -> dict:
    X = [f"x{i}" for i in range(1, p)]
    Z = [f"z{i}" for i in range(1, p)]
    t = TableBuilder(X, ("b",), p)
    t.recycle("b", X)
    s1 = _stage("x", t, None, [], ["x1 -> x1 x2^p, x2 -> ... -> x_{p-1} -> 1/(x1 x2^{p-1} ... x_{p-1}^2)"])
    t2 = TableBuilder(Z, ("b",), p)
    t2.cycle("b", Z)
    mono = dict(zip(Z, _orbit_monomials(s1, "b", "x2", p - 1, p)))
    s2 = _stage("z", t2, {"from": "x", "monomials": mono},
                [{"kind": "FullLatticeChange"}, {"kind": "LinearizationPattern", "generator": "b", "cycle": Z}],
                ["z_1 = x_2, z_i = b^(i-1).x_2"])
    return _doc("cor37", p, _cyclic_group(p), [s1, s2], "Linearizing the recycled action",
                root_order=p, literal=literal)


def lemma38(p: int, literal: bool = False) -> dict:
    X = [_name("x", i, j) for i in range(1, p) for j in range(1, p)]
    t = TableBuilder(X, ("a", "b"), p)
    claims = []
    for i in range(1, p):
        row = [_name("x", i, j) for j in range(1, p)]
        t.cycle("a", row)
        claims.append({"kind": "LinearizationPattern", "generator": "a", "cycle": row})
    for j in range(1, p):
        col = [_name("x", i, j) for i in range(1, p)]
        t.cycle("b", col)
        claims.append({"kind": "LinearizationPattern", "generator": "b", "cycle": col})
    st = _stage("x", t, None, claims, ["a acts along rows, b along columns; the group check covers [a, b] = 1"])
    return _doc("lemma38", p, _cyclic_group(p, ("a", "b")), [st], "Bicyclic row/column action",
                root_order=p, literal=literal)


BUILDERS = {"phi15_step1": phi15_step1, "phi15_step2": phi15_step2, "phi15_step3": phi15_step3,
            "lemma36": lemma36, "cor37": cor37, "lemma38": lemma38}


def build_script(name: str, p: int, literal: bool = False) -> dict:
    return BUILDERS[name](p, literal=literal)


def build_shipped(directory=None, primes=SHIPPED_PRIMES) -> list[Path]:
    """Write one JSON file per script, holding an instance per prime."""
    directory = Path(directory) if directory else Path(str(scripts_dir()))
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in SCRIPT_NAMES:
        doc = {"format": "b0kit-action-script-set", "name": name,
               "instances": [build_script(name, p) for p in primes]}
        path = directory / f"{name}.json"
        path.write_text(json.dumps(doc, separators=(",", ":"), sort_keys=False) + "\n")
        out.append(path)
    return out
