"""Monomial automorphisms of a Laurent polynomial field.

A map sends x_i to zeta^{c_i} * prod_j x_j^{A[i, j]}, with zeta a fixed
primitive N-th root of unity.  Scalars are residues mod N, never numbers.

Maps act on the left by substitution: (f o g)(x) = f(g(x)) means "apply the
substitution g, then substitute f into the result", so a group
homomorphism rho satisfies rho(gh) = rho(g) o rho(h).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..abelian import determinant
from ..errors import PreconditionError


@dataclass(frozen=True)
class MonomialMap:
    A: tuple[tuple[int, ...], ...]
    c: tuple[int, ...]
    root_order: int

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        n = len(A)
        if any(len(r) != n for r in A):
            raise ValueError("exponent matrix must be square")
        if len(self.c) != n:
            raise ValueError("scalar vector length must match the matrix")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "c", tuple(int(x) % self.root_order for x in self.c))

    # ------------------------------------------------------------------
    @classmethod
    def identity(cls, n: int, root_order: int) -> "MonomialMap":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n, root_order)

    @classmethod
    def from_arrays(cls, A, c, root_order: int) -> "MonomialMap":
        return cls(tuple(map(tuple, np.asarray(A, dtype=np.int64).tolist())),
                   tuple(np.asarray(c, dtype=np.int64).tolist()), root_order)

    @property
    def dim(self) -> int:
        return len(self.A)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.A, dtype=np.int64).reshape(self.dim, self.dim)

    @property
    def scalars(self) -> np.ndarray:
        return np.array(self.c, dtype=np.int64)

    def is_identity(self) -> bool:
        return self == MonomialMap.identity(self.dim, self.root_order)

    # ------------------------------------------------------------------
    def apply(self, exponents: Sequence[int], scalar: int = 0) -> tuple[int, tuple[int, ...]]:
        """Image of zeta^scalar * x^e as (scalar, exponent vector)."""
        e = np.asarray(exponents, dtype=np.int64)
        s = (int(scalar) + int(e @ self.scalars)) % self.root_order
        return s, tuple(int(x) for x in e @ self.matrix)

    def fixes(self, exponents: Sequence[int]) -> bool:
        s, img = self.apply(exponents)
        return s == 0 and img == tuple(int(x) for x in exponents)

    def __matmul__(self, other: "MonomialMap") -> "MonomialMap":
        return compose(self, other)

    def inverse(self) -> "MonomialMap":
        return inverse(self)

    def __pow__(self, k: int) -> "MonomialMap":
        if k < 0:
            return inverse(self) ** (-k)
        out = MonomialMap.identity(self.dim, self.root_order)
        base = self
        while k:
            if k & 1:
                out = compose(out, base)
            k >>= 1
            if k:
                base = compose(base, base)
        return out

    def describe(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.dim)]
        out = []
        for i, row in enumerate(self.A):
            mono = "*".join(f"{names[j]}^{e}" if e != 1 else names[j] for j, e in enumerate(row) if e) or "1"
            sc = f"z^{self.c[i]}*" if self.c[i] else ""
            out.append(f"{names[i]} -> {sc}{mono}")
        return "; ".join(out)


def compose(f: MonomialMap, g: MonomialMap) -> MonomialMap:
    """f o g: substitute f into the images of g.

    g(x_i) = zeta^{c_g,i} x^{A_g[i]}, so f(g(x_i)) = zeta^{c_g,i + A_g[i].c_f} x^{A_g[i] A_f}.
    """
    if f.dim != g.dim or f.root_order != g.root_order:
        raise ValueError("maps differ in dimension or root order")
    Af, Ag = f.matrix, g.matrix
    return MonomialMap.from_arrays(Ag @ Af, g.scalars + Ag @ f.scalars, f.root_order)


def inverse(f: MonomialMap) -> MonomialMap:
    A = f.matrix
    det = determinant(A.tolist())
    if abs(det) != 1:
        raise PreconditionError(f"exponent matrix has determinant {det}; the map is not invertible")
    B = _integer_inverse(A)
    return MonomialMap.from_arrays(B, -(B @ f.scalars), f.root_order)


def _integer_inverse(A: np.ndarray) -> np.ndarray:
    """Inverse of a unimodular integer matrix by exact Gauss-Jordan over Python ints."""
    from fractions import Fraction

    n = A.shape[0]
    M = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A.tolist())]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    out = np.array([[int(x) for x in row[n:]] for row in M], dtype=np.int64)
    if any(x.denominator != 1 for row in M for x in row[n:]):
        raise AssertionError("inverse is not integral")
    return out
