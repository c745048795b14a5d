"""Exact integer and modular arithmetic: factorization, CRT, orders, discrete logs.

Everything is deterministic. Factorization trial-divides below 10**6 and then
switches to Brent's variant of Pollard rho, with a deterministic Miller-Rabin
(witness set valid below 3.3e24) deciding primality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .errors import NoGenerator, NonCoprimeModuli, NotAUnit

_TRIAL_LIMIT = 10**6
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> List[int]:
    """Sieve of Eratosthenes, inclusive."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = bytearray(len(range(start, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite n (Brent cycle finding, deterministic)."""
    if n % 2 == 0:
        return 2
    if n % 3 == 0:
        return 3
    c = 1
    while True:
        x = y = 2
        d = q = r = 1
        ys = y
        while d == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and d == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                d = math.gcd(q, n)
                k += 128
            r <<= 1
        if d == n:
            d = 1
            while d == 1:
                ys = (ys * ys + c) % n
                d = math.gcd(abs(x - ys), n)
        if d != n:
            return d
        c += 1


@dataclass(frozen=True)
class FactoredModulus:
    """A positive integer together with its full prime factorization.

    ``core`` is the radical (product of the distinct primes), ``omega`` the
    number of distinct primes, ``tau`` the divisor count.  ``largest_prime``
    is 1 for value 1.
    """

    value: int
    factors: Dict[int, int]
    core: int
    omega: int
    tau: int
    largest_prime: int

    def divisors(self) -> List[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.factors.items():
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)

    def is_squarefree(self) -> bool:
        return all(e == 1 for e in self.factors.values())

    def phi(self) -> int:
        out = 1
        for p, e in self.factors.items():
            out *= p ** (e - 1) * (p - 1)
        return out


def factor(n: int) -> FactoredModulus:
    """Full factorization of n >= 1, deterministic, primes ascending."""
    if n < 1:
        raise ValueError("factor() requires n >= 1")
    factors: Dict[int, int] = {}
    m = n
    for p in (2, 3, 5):
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    # wheel over 6k+-1 up to the trial limit
    d = 7
    incr = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d <= _TRIAL_LIMIT and d * d <= m:
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += incr[i]
        i = (i + 1) % 8
    if m > 1:
        stack = [m]
        while stack:
            v = stack.pop()
            if v == 1:
                continue
            if is_prime(v):
                factors[v] = factors.get(v, 0) + 1
                continue
            f = _pollard_brent(v)
            stack.append(f)
            stack.append(v // f)
    ordered = dict(sorted(factors.items()))
    value = 1
    core = 1
    tau = 1
    for p, e in ordered.items():
        value *= p**e
        core *= p
        tau *= e + 1
    assert value == n, "factorization failed to reassemble"
    return FactoredModulus(
        value=n,
        factors=ordered,
        core=core,
        omega=len(ordered),
        tau=tau,
        largest_prime=max(ordered) if ordered else 1,
    )


def euler_phi(n: int) -> int:
    return factor(n).phi()


def crt_combine(residues: Sequence[Tuple[int, int]]) -> int:
    """Combine (residue, modulus) pairs with pairwise coprime moduli.

    Returns the unique x in [0, prod moduli) with x = r_i mod n_i.
    """
    x, n = 0, 1
    for r, m in residues:
        if m < 1:
            raise ValueError("moduli must be positive")
        if math.gcd(n, m) != 1:
            raise NonCoprimeModuli(f"modulus {m} shares a factor with {n}")
        # x' = x + n*t with x + n*t = r (mod m)
        t = (r - x) * pow(n % m, -1, m) % m if m > 1 else 0
        x = x + n * t
        n *= m
    return x % n


def multiplicative_order(a: int, modulus: int) -> int:
    """Least k >= 1 with a^k = 1 mod modulus."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if modulus == 1:
        return 1
    a %= modulus
    if math.gcd(a, modulus) != 1:
        raise NotAUnit(f"{a} is not a unit mod {modulus}")
    order = factor(modulus).phi()
    for p in factor(order).factors:
        while order % p == 0 and pow(a, order // p, modulus) == 1:
            order //= p
    return order


class NoSolutionInGroup(ArithmeticError):
    pass


def _bsgs(base: int, target: int, order: int, modulus: int) -> int:
    """x with base^x = target mod modulus, 0 <= x < order (order of base divides `order`)."""
    m = math.isqrt(order) + 1
    table = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * base % modulus
    giant = pow(base, -m, modulus)
    g = target % modulus
    for i in range(m + 1):
        if g in table:
            return (i * m + table[g]) % order
        g = g * giant % modulus
    raise NoSolutionInGroup(base, target, modulus)


def discrete_log(g: int, y: int, modulus: int) -> int:
    """Exponent x with g^x = y mod modulus, for g generating the units of an
    odd prime power (2 and 4 are also allowed; higher powers of two are not
    cyclic and raise NoGenerator).

    Pohlig-Hellman over the factorization of the group order, baby-step
    giant-step inside each prime-order layer.
    """
    fm = factor(modulus)
    if fm.omega != 1:
        raise NoGenerator(f"{modulus} is not a prime power")
    p = fm.largest_prime
    k = fm.factors[p]
    if p == 2 and k >= 3:
        raise NoGenerator("units mod 2^k (k>=3) are not cyclic; use the (-1,5) decomposition")
    g %= modulus
    y %= modulus
    if math.gcd(y, modulus) != 1:
        raise NotAUnit(f"{y} is not a unit mod {modulus}")
    if math.gcd(g, modulus) != 1:
        raise NotAUnit(f"{g} is not a unit mod {modulus}")
    n = fm.phi()
    if multiplicative_order(g, modulus) != n:
        raise NoGenerator(f"{g} does not generate the units mod {modulus}")
    if n == 1:
        return 0
    parts = []
    for ell, e in factor(n).factors.items():
        le = ell**e
        g_i = pow(g, n // le, modulus)
        y_i = pow(y, n // le, modulus)
        # digits of x mod ell^e
        x_i = 0
        gamma = pow(g_i, le // ell, modulus)  # order ell
        for j in range(e):
            exp = le // ell ** (j + 1)
            t = pow(y_i * pow(g_i, -x_i, modulus) % modulus, exp, modulus)
            d = _bsgs(gamma, t, ell, modulus)
            x_i += d * ell**j
        parts.append((x_i, le))
    return crt_combine(parts)


@lru_cache(maxsize=None)
def least_primitive_root(p: int, k: int = 1) -> int:
    """Least g generating the unit group of p^k, p an odd prime (or p^k in {2,4})."""
    pk = p**k
    if pk == 1:
        return 1
    if pk == 2:
        return 1
    if pk == 4:
        return 3
    if p == 2:
        raise NoGenerator("units mod 2^k (k>=3) are not cyclic")
    phi = p ** (k - 1) * (p - 1)
    prime_divs = list(factor(phi).factors)
    g = 2
    while True:
        if math.gcd(g, p) == 1 and all(pow(g, phi // q, pk) != 1 for q in prime_divs):
            return g
        g += 1
