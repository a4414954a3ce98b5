"""Exact integer normal forms and finitely generated abelian groups.

Matrices are lists of lists of Python ints so entries never overflow.

>>> group_from_relations(1, [[6], [4]])
AbelianStructure(invariants=(2,), free_rank=0)
>>> smith_normal_form([[2, 0], [0, 3]])[1]
[[1, 0], [0, 6]]
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def as_int_matrix(a, cols: int | None = None) -> IntMatrix:
    """Copy anything array-like into a list-of-lists of Python ints."""
    out = [[int(x) for x in row] for row in a]
    if cols is not None and any(len(r) != cols for r in out):
        raise ValueError("ragged matrix")
    return out


@dataclass(frozen=True)
class AbelianStructure:
    """A finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_k.

    The invariant factors satisfy d_1 | d_2 | ... | d_k and every d_i > 1.
    """

    invariants: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariants)
        if any(d <= 1 for d in inv):
            raise ValueError(f"invariant factors must exceed 1: {inv}")
        if any(inv[i + 1] % inv[i] for i in range(len(inv) - 1)):
            raise ValueError(f"not a divisibility chain: {inv}")
        object.__setattr__(self, "invariants", inv)

    @classmethod
    def from_orders(cls, orders: Sequence[int], free_rank: int = 0) -> "AbelianStructure":
        """Normalize an arbitrary list of cyclic orders (0 meaning Z) to invariant factors."""
        diag = [int(d) for d in orders]
        free = free_rank + sum(1 for d in diag if d == 0)
        torsion = [d for d in diag if d > 1]
        n = len(torsion)
        s = smith_normal_form([[torsion[i] if i == j else 0 for j in range(n)] for i in range(n)])[1]
        return cls(tuple(s[i][i] for i in range(n) if s[i][i] > 1), free)

    @property
    def order(self) -> int | None:
        """Order of the group, or None when it is infinite."""
        return None if self.free_rank else prod(self.invariants)

    @property
    def torsion(self) -> "AbelianStructure":
        return AbelianStructure(self.invariants, 0)

    @property
    def is_trivial(self) -> bool:
        return not self.invariants and not self.free_rank

    def direct_sum(self, other: "AbelianStructure") -> "AbelianStructure":
        return AbelianStructure.from_orders(
            list(self.invariants) + list(other.invariants), self.free_rank + other.free_rank
        )

    def tensor(self, other: "AbelianStructure") -> "AbelianStructure":
        """Tensor product of the torsion parts (free parts must be absent)."""
        if self.free_rank or other.free_rank:
            raise ValueError("tensor product only implemented for finite groups")
        return AbelianStructure.from_orders(
            [gcd(a, b) for a in self.invariants for b in other.invariants]
        )

    def __str__(self) -> str:
        parts = [f"C{d}" for d in self.invariants] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "1"


def smith_normal_form(a) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V) with U*A*V = S, U and V unimodular.

    S is diagonal, nonnegative, with s_1 | s_2 | ... .  Pivots are chosen with
    minimal absolute value to keep intermediate entries small.
    """
    s = as_int_matrix(a)
    m = len(s)
    n = len(s[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        if k:
            rs, rd = s[src], s[dst]
            for c in range(n):
                rd[c] += k * rs[c]
            us, ud = u[src], u[dst]
            for c in range(m):
                ud[c] += k * us[c]

    def add_col(src, dst, k):
        if k:
            for row in s:
                row[dst] += k * row[src]
            for row in v:
                row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot: nonzero entry of minimal absolute value in the trailing block
        best = None
        for i in range(t, m):
            row = s[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(t, i, -(s[i][t] // piv))
                    if s[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(t, j, -(s[t][j] // piv))
                    if s[t][j]:
                        dirty = True
            if dirty:
                # a remainder is smaller than the pivot: move it into place
                best = None
                for i in range(t, m):
                    x = s[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, "r")
                for j in range(t, n):
                    x = s[t][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            # row and column cleared; enforce divisibility on the rest
            piv = s[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, s, v


def smith_diagonal(a) -> list[int]:
    """Diagonal of the Smith form (length min(rows, cols))."""
    _, s, _ = smith_normal_form(a)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


def hermite_normal_form(a, cols: int | None = None) -> IntMatrix:
    """Row-style Hermite normal form: echelon rows, positive pivots, entries
    above each pivot reduced into [0, pivot).  Zero rows are dropped."""
    rows = [r for r in as_int_matrix(a) if any(r)]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    h: IntMatrix = []
    r = 0
    for c in range(cols):
        # gcd-combine all remaining rows in column c into a single pivot row
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            while rows[i][c]:
                q = rows[r][c] // rows[i][c]
                rows[r] = [x - q * y for x, y in zip(rows[r], rows[i])]
                rows[r], rows[i] = rows[i], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        r += 1
        rows = rows[:r] + [row for row in rows[r:] if any(row)]
    h = rows[:r]
    # reduce above pivots
    pivots = [next(j for j, x in enumerate(row) if x) for row in h]
    for k, (row, c) in enumerate(zip(h, pivots)):
        for i in range(k):
            q = h[i][c] // row[c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], row)]
    return h


def hnf_pivots(h: IntMatrix) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in h]


def hnf_coordinates(h: IntMatrix, vec: Sequence[int]) -> list[int] | None:
    """Coefficients c with sum c_i h_i = vec, or None if vec is outside the lattice."""
    rest = [int(x) for x in vec]
    coeffs = []
    for row, c in zip(h, hnf_pivots(h)):
        if any(rest[:c]):
            return None
        q, r = divmod(rest[c], row[c])
        if r:
            return None
        coeffs.append(q)
        if q:
            rest = [x - q * y for x, y in zip(rest, row)]
    return coeffs if not any(rest) else None


def hnf_contains(h: IntMatrix, vec: Sequence[int]) -> bool:
    return hnf_coordinates(h, vec) is not None


def group_from_relations(n_generators: int, relations) -> AbelianStructure:
    """Structure of Z^n modulo the row span of `relations`."""
    rel = [r for r in as_int_matrix(relations) if any(r)]
    if not rel:
        return AbelianStructure((), n_generators)
    for r in rel:
        if len(r) != n_generators:
            raise ValueError("relation length does not match generator count")
    diag = smith_diagonal(rel)
    rank = sum(1 for d in diag if d)
    return AbelianStructure(tuple(d for d in diag if d > 1), n_generators - rank)


def quotient_structure(sup, sub) -> AbelianStructure:
    """Structure of span(sup)/span(sub); every row of `sub` must lie in span(sup)."""
    h = hermite_normal_form(sup)
    if not h:
        return AbelianStructure()
    coords = []
    for v in as_int_matrix(sub):
        c = hnf_coordinates(h, v)
        if c is None:
            raise ValueError("sub lattice is not contained in sup lattice")
        coords.append(c)
    return group_from_relations(len(h), coords)


def kernel_mod(a, m: int) -> IntMatrix:
    """Basis of the lattice {x in Z^n : A x = 0 mod m} (A has n columns)."""
    rows = as_int_matrix(a)
    n = len(rows[0]) if rows else 0
    if not rows:
        return identity(n)
    _, s, v = smith_normal_form(rows)
    basis = []
    for i in range(n):
        d = s[i][i] if i < len(s) else 0
        scale = m // gcd(d, m) if d else 1
        basis.append([v[k][i] * scale for k in range(n)])
    return hermite_normal_form(basis, n)


class Lattice:
    """Incrementally grown integer row lattice kept in Hermite form."""

    def __init__(self, dim: int, rows=()):
        self.dim = dim
        self.basis: IntMatrix = []
        for r in rows:
            self.add(r)

    def __contains__(self, vec) -> bool:
        return hnf_contains(self.basis, vec)

    def add(self, vec) -> bool:
        """Add a vector; return True when the lattice grew."""
        vec = [int(x) for x in vec]
        if len(vec) != self.dim:
            raise ValueError("dimension mismatch")
        if not any(vec) or vec in self:
            return False
        self.basis = hermite_normal_form(self.basis + [vec], self.dim)
        return True

    def rank(self) -> int:
        return len(self.basis)

    def quotient(self) -> AbelianStructure:
        """Structure of Z^dim / self."""
        return group_from_relations(self.dim, self.basis)


def determinant(a) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = as_int_matrix(a)
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ----------------------------------------------------------------------------
# Smith form over the local ring Z/p^k (dense numpy, used by the cocycle oracle)

def local_smith(a, p: int, k: int, want_transform: bool = True):
    """Diagonalize A over Z/p^k by row and column operations.

    Returns (vals, Q, Qinv) where vals[i] is the valuation of the i-th
    diagonal entry (k for a zero entry or a missing row) for every column i,
    and A Q = P^-1 D for some invertible P.  Zero rows are dropped as soon as
    they appear, so tall redundant systems shrink quickly.
    """
    import numpy as np

    m = p**k
    dt = np.int32 if 2 * m * m < 2**31 else np.int64
    A = np.array(a, dtype=np.int64) % m
    A = A.astype(dt)
    rows, cols = A.shape
    Q = np.eye(cols, dtype=dt) if want_transform else None
    Qi = np.eye(cols, dtype=dt) if want_transform else None
    vals = []
    t = 0
    while t < cols and A.shape[0] > t:
        sub = A[t:, t:]
        pos = None
        pa = 1
        # cheap path: a unit in the leading column
        unit_rows = np.flatnonzero(sub[:, 0] % p)
        if unit_rows.size:
            pos, a_ = (int(unit_rows[0]), 0), 0
        for a_ in ([] if pos else range(k)):
            hit = np.flatnonzero((sub % (pa * p)).ravel())
            if hit.size:
                pos = divmod(int(hit[0]), sub.shape[1])
                break
            pa *= p
        if pos is None:
            break
        i, j = pos[0] + t, pos[1] + t
        if i != t:
            A[[t, i]] = A[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            if want_transform:
                Q[:, [t, j]] = Q[:, [j, t]]
                Qi[[t, j]] = Qi[[j, t]]
        unit = int(A[t, t]) // pa
        A[t] = (A[t] * pow(unit, -1, m)) % m
        # clear the column below the pivot (row operations)
        f = A[t + 1:, t] // pa
        nz = np.flatnonzero(f)
        if nz.size:
            A[t + 1 + nz, t:] = (A[t + 1 + nz, t:] - np.outer(f[nz], A[t, t:])) % m
        # clear the pivot row (column operations; the column is zero elsewhere)
        g = A[t, t + 1:] // pa
        if want_transform and g.any():
            Q[:, t + 1:] = (Q[:, t + 1:] - np.outer(Q[:, t], g)) % m
            Qi[t] = (Qi[t] + g @ Qi[t + 1:]) % m
        A[t, t + 1:] = 0
        vals.append(a_)
        t += 1
        # drop zero rows below the pivot block
        if A.shape[0] > t + 64:
            keep = A[t:, t:].any(axis=1)
            if not keep.all():
                A = np.concatenate([A[:t], A[t:][keep]])
    vals += [k] * (cols - len(vals))
    return vals, Q, Qi


def local_quotient_invariants(relations, orders_exp: list[int], p: int, k: int) -> AbelianStructure:
    """Structure of (+ Z/p^{a_i}) modulo the row span of `relations` (entries mod p^k)."""
    import numpy as np

    r = len(orders_exp)
    if r == 0:
        return AbelianStructure()
    diag = np.zeros((r, r), dtype=np.int64)
    for i, a in enumerate(orders_exp):
        diag[i, i] = p**a % p**k
    rel = np.asarray(relations, dtype=np.int64).reshape(-1, r)
    vals, _, _ = local_smith(np.concatenate([rel, diag]), p, k, want_transform=False)
    return AbelianStructure.from_orders([p**v for v in vals if v > 0])
