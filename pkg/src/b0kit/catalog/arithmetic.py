"""Number-theoretic constants that appear inside the printed presentations."""

from __future__ import annotations

from math import comb


def _check_odd_prime(p: int) -> None:
    if p == 2:
        raise ValueError("p must be an odd prime")
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")


def smallest_nonresidue(p: int) -> int:
    """Least v >= 2 that is not a square mod p."""
    _check_odd_prime(p)
    squares = {x * x % p for x in range(1, p)}
    return next(v for v in range(2, p) if v not in squares)


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def smallest_primitive_root(p: int) -> int:
    """Least theta >= 2 generating (Z/p)^*."""
    _check_odd_prime(p)
    qs = prime_factors(p - 1)
    return next(t for t in range(2, p) if all(pow(t, (p - 1) // q, p) != 1 for q in qs))


def phi43_kl(p: int, r: int = 0) -> tuple[int, int, int]:
    """(k, l, n) for the Phi43 family.

    (k, l) is the lexicographically least pair of positive integers with
    (k - v)^2 - v (l + v)^2 = r mod p, and n = v + C(p, 3).
    """
    if p <= 3:
        raise ValueError("phi43_kl needs p > 3")
    if not 0 <= r < p:
        raise ValueError("r must lie in [0, p)")
    v = smallest_nonresidue(p)
    for k in range(1, p + 1):
        for l in range(1, p + 1):
            if ((k - v) ** 2 - v * (l + v) ** 2 - r) % p == 0:
                return k, l, v + comb(p, 3)
    raise AssertionError("no solution found")  # the quadratic form is universal


def sigma(n: int) -> int:
    """n(n-1)(2n-1)/6, the exponent of the [a,b,a,a]-type term for [a^n, b]."""
    return n * (n - 1) * (2 * n - 1) // 6


def pth_power_expansion(chain: list[str], j: int, p: int, upto: int | None = None) -> list[tuple[str, int]]:
    """The letters of chain[j]^{(p)} = chain[j]^p chain[j+1]^{C(p,2)} ... .

    The product stops at the last chain element (or at index `upto`).
    """
    last = len(chain) - 1 if upto is None else upto
    return [(chain[j + k], comb(p, k + 1)) for k in range(last - j + 1)]
