"""Collection from the left for polycyclic presentations, optionally with tails.

Words are lists of (generator index, positive exponent) pairs.  A collector
works on a mutable exponent list `e` and, in the tails cover, a mutable
integer tail vector `t`.  Tails are central, so every time a relation is
applied its tail is simply added to `t`.
"""

from __future__ import annotations

Word = list[tuple[int, int]]


def to_word(exps) -> Word:
    return [(i, int(x)) for i, x in enumerate(exps) if x]


class Collector:
    """Rewriting engine for one presentation.

    rel:    relative orders r_i
    power:  power[i] = normal-form word for x_i^{r_i} (generators > i)
    conj:   conj[i][j] (i > j) = normal-form word for x_i^{x_j}, or None for x_i
    ptail / ctail: tail indices (cover mode) or None
    """

    def __init__(self, rel, power, conj, ptail=None, ctail=None, ntails=0):
        self.n = len(rel)
        self.rel = list(rel)
        self.power = power
        self.conj = conj
        self.ptail = ptail
        self.ctail = ctail
        self.ntails = ntails
        self.tails = ptail is not None
        self._cpow: dict = {}
        self._inv: dict = {}

    # ------------------------------------------------------------------
    def identity(self):
        return [0] * self.n, ([0] * self.ntails if self.tails else None)

    def conj_power(self, m: int, g: int, k: int):
        """(x_m^k)^{x_g} as (word, tail vector) for m > g, 0 < k < r_m."""
        key = (m, g, k)
        hit = self._cpow.get(key)
        if hit is not None:
            return hit
        base = self.conj[m][g]
        if base is None:
            word = [(m, k)]
            tail = None
            if self.tails:
                tail = [0] * self.ntails
                tail[self.ctail[m][g]] += k
            res = (word, tail)
        else:
            e, t = self.identity()
            self.collect(e, base * k, t)
            if self.tails:
                t[self.ctail[m][g]] += k
            res = (to_word(e), t)
        self._cpow[key] = res
        return res

    def collect(self, e: list, word: Word, t: list | None = None) -> None:
        """In place: e (and t) <- e * word."""
        n = self.n
        rel = self.rel
        tails = self.tails and t is not None
        stack = list(reversed(word))
        while stack:
            g, k = stack.pop()
            # is anything to the right of position g?
            top = n - 1
            while top > g and not e[top]:
                top -= 1
            if top == g:
                s = e[g] + k
                if s < rel[g]:
                    e[g] = s
                    continue
                q, s = divmod(s, rel[g])
                e[g] = s
                if tails:
                    t[self.ptail[g]] += q
                w = self.power[g]
                if w:
                    stack.extend(reversed(w * q))
                continue
            # move one x_g across the suffix x_{g+1..top}
            if k > 1:
                stack.append((g, k - 1))
            for m in range(top, g, -1):
                em = e[m]
                if em:
                    e[m] = 0
                    w, tv = self.conj_power(m, g, em)
                    stack.extend(reversed(w))
                    if tails:
                        for i, x in enumerate(tv):
                            if x:
                                t[i] += x
            stack.append((g, 1))

    # ------------------------------------------------------------------
    def multiply(self, a, b, ta=None, tb=None):
        e = list(a)
        t = None
        if self.tails:
            t = list(ta) if ta is not None else [0] * self.ntails
            if tb is not None:
                for i, x in enumerate(tb):
                    t[i] += x
        self.collect(e, to_word(b), t)
        return e, t

    def gen_inverse(self, g: int):
        """x_g^{-1} = x_g^{r-1} * (power word)^{-1} * tail^{-1}."""
        hit = self._inv.get(g)
        if hit is not None:
            return hit
        e, t = self.identity()
        e[g] = self.rel[g] - 1
        w = self.power[g]
        if w:
            we, _ = self.identity()
            self.collect(we, w)
            wi, wti = self.inverse(we)
            self.collect(e, to_word(wi), t)
            if self.tails:
                for i, x in enumerate(wti):
                    t[i] += x
        if self.tails:
            t[self.ptail[g]] -= 1
        self._inv[g] = (e, t)
        return e, t

    def inverse(self, a, ta=None):
        e, t = self.identity()
        for g in range(self.n - 1, -1, -1):
            k = a[g]
            if k:
                ge, gt = self.gen_inverse(g)
                w = to_word(ge)
                for _ in range(k):
                    self.collect(e, w, t)
                    if self.tails:
                        for i, x in enumerate(gt):
                            t[i] += x
        if self.tails and ta is not None:
            for i, x in enumerate(ta):
                t[i] -= x
        return e, t

    def collect_signed(self, e: list, letters, t: list | None = None) -> None:
        """Multiply by a word of signed letters (g, k) with k possibly negative."""
        for g, k in letters:
            if k > 0:
                self.collect(e, [(g, k)] if k < self.rel[g] else [(g, 1)] * k, t)
            elif k < 0:
                ge, gt = self.gen_inverse(g)
                w = to_word(ge)
                for _ in range(-k):
                    self.collect(e, w, t)
                    if t is not None and self.tails:
                        for i, x in enumerate(gt):
                            t[i] += x
