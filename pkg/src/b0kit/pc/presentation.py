"""Polycyclic presentations and the text DSL that describes them.

DSL statements (one per line, `;` also separates, `#` starts a comment)::

    group phi18 prime p
    param r=0
    gens a, a1, b, a2, a3, g
    pow a1^p = 1
    conj [a2, a] = a3          # x_i^{x_j} = x_i * WORD  for i > j, WORD in x_i..x_n
    comm [a, b] = g            # commutator form [u, w] = WORD, any order

Exponents are integer expressions in p, C(p,k), v, theta, inv2 and params.
`comm` is a convenience: it is rewritten to the equivalent `conj` relation.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from math import comb, prod

from ..errors import PresentationError
from .collector import Collector, to_word


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PcPresentation:
    """A (possibly inconsistent) polycyclic presentation with normalized words.

    power_words[i] and conjugate words are exponent vectors in normal form.
    `conjugate(i, j)` is the exponent vector of x_i^{x_j} for i > j.
    """

    def __init__(self, prime, gens, relative_orders, power_words, conjugate_words,
                 name="", notes=()):
        self.prime = int(prime)
        self.gens = tuple(gens)
        self.relative_orders = tuple(int(r) for r in relative_orders)
        self.power_words = tuple(tuple(w) for w in power_words)
        # only nontrivial conjugates are stored
        self.conjugate_words = {k: tuple(v) for k, v in conjugate_words.items()}
        self.name = name
        self.notes = tuple(notes)
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return len(self.gens)

    @property
    def order(self) -> int:
        return prod(self.relative_orders)

    def conjugate(self, i: int, j: int) -> tuple:
        w = self.conjugate_words.get((i, j))
        if w is None:
            return tuple(int(k == i) for k in range(self.n))
        return w

    def index_of(self, name: str) -> int:
        try:
            return self.gens.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def collector(self) -> Collector:
        c = self._cache.get("collector")
        if c is None:
            c = _make_collector(self.relative_orders, self.power_words, self.conjugate_words)
            self._cache["collector"] = c
        return c

    @classmethod
    def from_relations(cls, prime, gens, relative_orders, powers, conjugates, name="", notes=()):
        """Build from raw relations.

        powers:     {i: signed letters} with x_i^{r_i} = word (letters > i)
        conjugates: {(i, j): signed letters} with x_i^{x_j} = x_i * word (letters > i)
        Signed letters are (generator, exponent) with any integer exponent.
        Words are normalized bottom-up, so each only needs the rules above it.
        """
        n = len(gens)
        rel = [int(r) for r in relative_orders]
        for i, r in enumerate(rel):
            if r < 2 or not _is_power_of(r, prime):
                raise PresentationError(f"relative order of {gens[i]} must be a power of {prime}, got {r}")
        for i, w in powers.items():
            for g, _ in w:
                if g <= i:
                    raise PresentationError(
                        f"power relation of {gens[i]} mentions {gens[g]}, which is not later in the sequence")
        for (i, j), w in conjugates.items():
            if not i > j:
                raise PresentationError(f"conjugate relation [{gens[i]}, {gens[j]}] needs the first index larger")
            for g, _ in w:
                if g < i:
                    raise PresentationError(
                        f"conjugate relation [{gens[i]}, {gens[j]}] has tail generator {gens[g]} "
                        f"earlier than {gens[i]}")
        power_nf: list = [None] * n
        conj_nf: list = [[None] * n for _ in range(n)]
        power_w: list = [[] for _ in range(n)]
        col = Collector(rel, power_w, conj_nf)
        for i in range(n - 1, -1, -1):
            e = [0] * n
            col.collect_signed(e, powers.get(i, []))
            power_nf[i] = tuple(e)
            power_w[i] = to_word(e)
            for j in range(i):
                w = conjugates.get((i, j))
                if w:
                    e = [0] * n
                    col.collect_signed(e, [(i, 1)] + list(w))
                    if to_word(e) != [(i, 1)]:
                        conj_nf[i][j] = to_word(e)
        conj_vectors = {}
        for i in range(n):
            for j in range(i):
                if conj_nf[i][j] is not None:
                    v = [0] * n
                    for g, k in conj_nf[i][j]:
                        v[g] = k
                    conj_vectors[(i, j)] = tuple(v)
        return cls(prime, gens, rel, power_nf, conj_vectors, name=name, notes=notes)

    def to_dsl(self) -> str:
        """Render as DSL text (exponents as integer literals)."""
        lines = [f"group {self.name or 'G'} prime {self.prime}", "gens " + ", ".join(self.gens)]

        def word(v):
            parts = [f"{self.gens[k]}^{x}" if x != 1 else self.gens[k]
                     for k, x in enumerate(v) if x]
            return " ".join(parts) if parts else "1"

        for i, r in enumerate(self.relative_orders):
            lines.append(f"pow {self.gens[i]}^{r} = {word(self.power_words[i])}")
        col = self.collector()
        for (i, j), v in sorted(self.conjugate_words.items()):
            # tail = x_i^-1 * x_i^{x_j}
            e, _ = col.inverse([int(k == i) for k in range(self.n)])
            col.collect(e, to_word(v))
            lines.append(f"conj [{self.gens[i]}, {self.gens[j]}] = {word(e)}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"PcPresentation({self.name or '?'}, p={self.prime}, gens={list(self.gens)})"


def _is_power_of(r: int, p: int) -> bool:
    while r > 1 and r % p == 0:
        r //= p
    return r == 1


def _make_collector(rel, power_words, conjugate_words) -> Collector:
    n = len(rel)
    conj = [[None] * n for _ in range(n)]
    for (i, j), v in conjugate_words.items():
        conj[i][j] = to_word(v)
    return Collector(rel, [to_word(w) for w in power_words], conj)


# ----------------------------------------------------------------------------
# DSL

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Pow, ast.FloorDiv, ast.Mod)


@dataclass
class ExprContext:
    p: int
    params: dict = field(default_factory=dict)

    def names(self) -> dict:
        from ..catalog.arithmetic import smallest_nonresidue, smallest_primitive_root
        env = dict(self.params)
        env["p"] = self.p
        if self.p > 2:
            env.setdefault("v", smallest_nonresidue(self.p))
            env.setdefault("theta", smallest_primitive_root(self.p))
            env.setdefault("inv2", pow(2, -1, self.p))
        return env


def eval_exponent(expr: str, ctx: ExprContext, env: dict | None = None) -> int:
    """Evaluate an exponent expression such as `C(p,3)`, `-inv2` or `r+inv2`."""
    text = expr.strip().replace("^", "**")
    if env is None:
        env = ctx.names()
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError:
        raise PresentationError(f"cannot parse exponent {expr!r}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise PresentationError(f"unknown symbol {node.id!r} in exponent {expr!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            x = ev(node.operand)
            return -x if isinstance(node.op, ast.USub) else x
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.FloorDiv):
                return a // b
            if isinstance(node.op, ast.Mod):
                return a % b
            if b < 0 or b > 64:
                raise PresentationError(f"exponent power out of range in {expr!r}")
            return a ** b
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id == "C" and len(node.args) == 2 and not node.keywords):
            return comb(ev(node.args[0]), ev(node.args[1]))
        raise PresentationError(f"unsupported exponent expression {expr!r}")

    return int(ev(tree))


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*)(?:\^(\([^()]*(?:\([^()]*\)[^()]*)*\)|[-+]?[A-Za-z0-9_]+(?:\([^()]*\))?))?\s*\*?")


def parse_word(text: str, gens: dict, ctx: ExprContext, env: dict) -> list[tuple[int, int]]:
    """Parse `a^2 b^-1 g^C(p,3)` into signed letters."""
    text = text.strip()
    if text in ("", "1", "e", "id"):
        return []
    letters = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"cannot parse word {text!r} near {text[pos:]!r}")
        name, exp = m.group(1), m.group(2)
        if name not in gens:
            raise PresentationError(f"undeclared generator {name!r}")
        k = 1 if exp is None else eval_exponent(exp, ctx, env)
        if k:
            letters.append((gens[name], k))
        pos = m.end()
    return letters


def invert_letters(letters):
    return [(g, -k) for g, k in reversed(letters)]


_HEADER = re.compile(r"^group\s+(\S+)(?:\s+prime\s+(\S+))?$")
_PARAM = re.compile(r"^param\s+([A-Za-z_]\w*)\s*=\s*(.+)$")
_GENS = re.compile(r"^gens\s+(.*)$")
_POW = re.compile(r"^pow\s+([A-Za-z_][\w']*)\s*\^\s*(.+?)\s*=\s*(.*)$")
_REL2 = re.compile(r"^(conj|comm)\s*\[\s*([A-Za-z_][\w']*)\s*,\s*([A-Za-z_][\w']*)\s*\]\s*=\s*(.*)$")


def parse_presentation(text: str, p: int | None = None, params: dict | None = None,
                       name: str | None = None) -> PcPresentation:
    """Parse DSL source into a PcPresentation.

    `p` supplies the prime when the header says `prime p`; `params` override
    `param` defaults.  Errors are PresentationError with a line number.
    """
    statements = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        for part in body.split(";"):
            part = part.strip()
            if part:
                statements.append((lineno, part))

    group_name = name
    prime = p
    declared_params: dict = {}
    gens: list[str] = []
    pows = []
    rels = []
    for lineno, st in statements:
        try:
            if m := _HEADER.match(st):
                group_name = group_name or m.group(1)
                if m.group(2) and m.group(2) != "p":
                    lit = int(m.group(2))
                    if prime is not None and prime != lit:
                        raise PresentationError(f"prime {prime} conflicts with header prime {lit}")
                    prime = lit
            elif m := _PARAM.match(st):
                declared_params[m.group(1)] = m.group(2)
            elif m := _GENS.match(st):
                if gens:
                    raise PresentationError("generators declared twice")
                gens = [g.strip() for g in m.group(1).split(",") if g.strip()]
                if len(set(gens)) != len(gens):
                    raise PresentationError("duplicate generator name")
            elif m := _POW.match(st):
                pows.append((lineno, m.group(1), m.group(2), m.group(3)))
            elif m := _REL2.match(st):
                rels.append((lineno, m.group(1), m.group(2), m.group(3), m.group(4)))
            else:
                raise PresentationError(f"unrecognized statement {st!r}")
        except PresentationError as exc:
            raise exc.at(lineno)
        except ValueError as exc:
            raise PresentationError(str(exc), line=lineno) from None

    if prime is None:
        raise PresentationError("no prime given (header `prime <int>` or p argument)")
    if not is_prime(prime):
        raise PresentationError(f"{prime} is not prime")
    if not gens:
        raise PresentationError("no generators declared")

    ctx = ExprContext(prime)
    env = ctx.names()
    for key, expr in declared_params.items():
        env[key] = eval_exponent(expr, ctx, env)
    for key, val in (params or {}).items():
        env[key] = int(val)
    ctx.params = {k: env[k] for k in declared_params}

    index = {g: i for i, g in enumerate(gens)}
    rel_orders = [prime] * len(gens)
    powers: dict = {}
    conjugates: dict = {}
    seen_pow = set()
    for lineno, g, e, w in pows:
        try:
            if g not in index:
                raise PresentationError(f"undeclared generator {g!r}")
            i = index[g]
            if i in seen_pow:
                raise PresentationError(f"duplicate power relation for {g}")
            seen_pow.add(i)
            r = eval_exponent(e, ctx, env)
            if r < 2 or not _is_power_of(r, prime):
                raise PresentationError(f"relative order {r} of {g} is not a power of {prime}")
            rel_orders[i] = r
            letters = parse_word(w, index, ctx, env)
            for k, _ in letters:
                if k <= i:
                    raise PresentationError(
                        f"power relation of {g} references {gens[k]}, which is not later than {g}")
            powers[i] = letters
        except PresentationError as exc:
            raise exc.at(lineno)
    for lineno, kind, u, w_name, rhs in rels:
        try:
            for x in (u, w_name):
                if x not in index:
                    raise PresentationError(f"undeclared generator {x!r}")
            i, j = index[u], index[w_name]
            if i == j:
                raise PresentationError(f"relation [{u}, {w_name}] pairs a generator with itself")
            letters = parse_word(rhs, index, ctx, env)
            if kind == "conj":
                if i < j:
                    raise PresentationError(
                        f"conj [{u}, {w_name}] needs {u} later than {w_name}; use comm for the other order")
                key = (i, j)
            else:
                # [u,w] = c.  If u is later: u^w = u c.  Otherwise [w,u] = c^{-1}.
                if i > j:
                    key = (i, j)
                else:
                    key = (j, i)
                    letters = invert_letters(letters)
            hi = key[0]
            for k, _ in letters:
                if k < hi:
                    raise PresentationError(
                        f"relation [{u}, {w_name}] has tail generator {gens[k]}, "
                        f"which comes before {gens[hi]}")
            if key in conjugates:
                raise PresentationError(f"duplicate relation for the pair ({gens[key[0]]}, {gens[key[1]]})")
            conjugates[key] = letters
        except PresentationError as exc:
            raise exc.at(lineno)

    return PcPresentation.from_relations(prime, gens, rel_orders, powers, conjugates,
                                         name=group_name or "")
