"""Elementary arithmetic functions used throughout the package.

Everything here works on Python integers and is exact.  Factorizations are
by trial division and memoized, which is plenty for the sizes we touch
(arguments stay below ~10^7).
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

import numpy as np


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``|n|`` as ``((p, e), ...)`` with p increasing."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = factorize(n)
    return len(f) == 1 and f[0][1] == 1


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(n + 1) if sieve[i]]


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(n))


def num_prime_divisors(n: int) -> int:
    """Number of distinct primes dividing n."""
    return len(factorize(n))


def sigma(n: int) -> int:
    """Sum of the positive divisors of n."""
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    total = 1
    for p, e in factorize(n):
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    f = factorize(n) if n > 1 else ()
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def sigma5(n: int) -> int:
    """Twisted divisor sum: sum over d | n of (d/5) * n/d."""
    if n < 1:
        raise ValueError("sigma5 needs n >= 1")
    return sum(kronecker(d, 5) * (n // d) for d in divisors(n))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), extending the Jacobi symbol to all integers n.

    Conventions: (a/0) = 1 if a = +-1 else 0; (a/-1) = -1 if a < 0 else 1;
    (a/2) = 0 for even a, 1 for a = +-1 (mod 8), -1 for a = +-3 (mod 8).
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_array(a: int, ms) -> np.ndarray:
    """(a/m) for every entry of a positive int64 array ``ms`` (|a| < 2^31).

    Same conventions as ``kronecker``; the Jacobi loop runs on all entries
    at once, dropping the finished ones as it goes.
    """
    m = np.array(ms, dtype=np.int64).ravel()
    shape = np.shape(ms)
    if np.any(m <= 0):
        raise ValueError("kronecker_array needs positive moduli")
    out = np.ones(m.shape, dtype=np.int64)
    tz = np.zeros(m.shape, dtype=np.int64)
    low = m & -m
    while True:
        even = low > 1
        if not even.any():
            break
        low[even] >>= 1
        m[even] >>= 1
        tz[even] += 1
    if a % 2 == 0:
        out[tz > 0] = 0
    elif a % 8 in (3, 5):
        out[tz % 2 == 1] *= -1
    idx = np.flatnonzero(out != 0)
    x = a % m[idx]
    n = m[idx]
    sign = out[idx]
    while len(idx):
        done = x == 0
        if done.any():
            out[idx[done]] = np.where(n[done] == 1, sign[done], 0)
            keep = ~done
            idx, x, n, sign = idx[keep], x[keep], n[keep], sign[keep]
            if not len(idx):
                break
        while True:
            ev = (x & 1) == 0
            if not ev.any():
                break
            x[ev] >>= 1
            r = n[ev] & 7
            sign[ev] *= np.where((r == 3) | (r == 5), -1, 1)
        x, n = n, x
        sign *= np.where(((x & 3) == 3) & ((n & 3) == 3), -1, 1)
        x %= n
    return out.reshape(shape)


@lru_cache(maxsize=4)
def _smallest_prime_factors(n: int) -> np.ndarray:
    spf = np.arange(n + 1, dtype=np.int64)
    for p in range(2, isqrt(n) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            np.copyto(block, p, where=block == np.arange(p * p, n + 1, p))
    return spf


def kronecker_table(a: int, n: int) -> np.ndarray:
    """(a/m) for m = 0..n, using that m -> (a/m) is completely multiplicative.

    Primes get Euler's criterion (vectorized square-and-multiply), and
    composites are filled from their smallest-prime-factor chains.
    """
    if n < 1:
        return np.array([kronecker(a, 0)], dtype=np.int64)[: n + 1]
    if n >= 1 << 31:
        raise ValueError("table too large")
    size = 1 << max(10, n.bit_length())
    spf = _smallest_prime_factors(size)[: n + 1]
    ms = np.arange(n + 1, dtype=np.int64)
    primes = np.flatnonzero((spf == ms) & (ms >= 3))
    # Euler's criterion a^((p-1)/2) mod p
    base = a % primes
    exp = (primes - 1) // 2
    acc = np.ones_like(primes)
    while exp.any():
        odd = (exp & 1) == 1
        acc[odd] = acc[odd] * base[odd] % primes[odd]
        base = base * base % primes
        exp >>= 1
    chi_p = np.zeros(n + 1, dtype=np.int64)
    chi_p[primes] = np.where(acc == 1, 1, np.where(acc == 0, 0, -1))
    if n >= 2:
        chi_p[2] = kronecker(a, 2)
    out = np.ones(n + 1, dtype=np.int64)
    out[0] = kronecker(a, 0)
    rest = ms.copy()
    live = np.flatnonzero(rest > 1)
    while len(live):
        p = spf[rest[live]]
        out[live] *= chi_p[p]
        rest[live] //= p
        live = live[rest[live] > 1]
    return out


def is_discriminant(d: int) -> bool:
    return d % 4 in (0, 1)


def fundamental_part(d: int) -> tuple[int, int]:
    """Write a non-square discriminant d as ``fund * f**2``; return (fund, f)."""
    if not is_discriminant(d) or d == 0:
        raise ValueError(f"{d} is not a nonzero discriminant")
    sign = -1 if d < 0 else 1
    core, k = 1, 1
    for p, e in factorize(d):
        core *= p ** (e % 2)
        k *= p ** (e // 2)
    core *= sign
    if core % 4 == 1:
        return core, k
    # core = 2, 3 (mod 4): the fundamental discriminant is 4*core
    return 4 * core, k // 2


def is_fundamental(d: int) -> bool:
    if not is_discriminant(d) or d == 0:
        return False
    fund, f = fundamental_part(d)
    return f == 1 and fund == d


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
