"""Dirichlet characters mod composite q as CRT bundles of prime-power components.

Character values are exact roots of unity e(a/n) kept as reduced fractions of
the phase; complex floats only appear when a caller asks for them.  Components
are indexed against fixed generators: the least primitive root for each odd
prime power, and the pair (-1, 5) for 2^k with k >= 3.

A character is named by the stable token ``q=<int>;idx=<i1,...,ik>`` with one
flat index per prime-power factor of q (primes ascending).  For 2^k, k >= 3,
the flat index i encodes the pair (i // 2^(k-2) on -1, i % 2^(k-2) on 5).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .arith import FactoredModulus, factor, least_primitive_root
from .errors import IndexOutOfRange, InvalidSplit

_CACHE_DIR: Optional[str] = None


def set_cache_dir(path: Optional[str]) -> None:
    """Directory for on-disk unit-group tables (or None to disable).

    Falls back to the CHARSUM_CACHE environment variable.  A missing or
    unreadable cache is never an error; tables are rebuilt.
    """
    global _CACHE_DIR
    _CACHE_DIR = path


def _cache_dir() -> Optional[str]:
    return _CACHE_DIR or os.environ.get("CHARSUM_CACHE") or None


class RootOfUnity:
    """e(a/n) = exp(2*pi*i*a/n), held as the reduced phase a/n in [0, 1)."""

    __slots__ = ("phase",)

    def __init__(self, phase) -> None:
        self.phase = Fraction(phase) % 1

    @property
    def numerator(self) -> int:
        return self.phase.numerator

    @property
    def denominator(self) -> int:
        return self.phase.denominator

    @property
    def complex(self) -> complex:
        t = 2.0 * math.pi * float(self.phase)
        return complex(math.cos(t), math.sin(t))

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.phase + other.phase)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.phase * k)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity(-self.phase)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootOfUnity) and self.phase == other.phase

    def __hash__(self) -> int:
        return hash(self.phase)

    def __repr__(self) -> str:
        return f"e({self.phase})"


ONE = RootOfUnity(0)


class _UnitGroup:
    """Structure of (Z/p^k)* with a fixed generating set and full index table.

    orders: cyclic factor orders; gens: the matching generators.
    index_of[x] = exponent tuple of x on the generators.
    """

    __slots__ = ("p", "k", "modulus", "orders", "gens", "index_of")

    def __init__(self, p: int, k: int) -> None:
        self.p = p
        self.k = k
        self.modulus = p**k
        if p == 2:
            if k == 1:
                self.orders, self.gens = (1,), ()
                self.index_of = {1: ()}
                return
            if k == 2:
                self.orders, self.gens = (2,), (3,)
                self.index_of = {1: (0,), 3: (1,)}
                return
            half = 2 ** (k - 2)
            self.orders, self.gens = (2, half), (self.modulus - 1, 5)
            table: Dict[int, Tuple[int, ...]] = {}
            v = 1
            for b in range(half):
                table[v] = (0, b)
                table[self.modulus - v] = (1, b)
                v = v * 5 % self.modulus
            self.index_of = table
            return
        g = least_primitive_root(p, k)
        phi = p ** (k - 1) * (p - 1)
        self.orders, self.gens = (phi,), (g,)
        cached = _load_table(p, k, phi)
        if cached is not None:
            self.index_of = cached
            return
        table = {}
        v = 1
        for e in range(phi):
            table[v] = (e,)
            v = v * g % self.modulus
        self.index_of = table
        _store_table(p, k, table)

    @property
    def group_order(self) -> int:
        return math.prod(self.orders)


def _load_table(p: int, k: int, phi: int) -> Optional[Dict[int, Tuple[int, ...]]]:
    d = _cache_dir()
    if not d:
        return None
    path = os.path.join(d, f"dlog_{p}_{k}.json")
    try:
        with open(path) as fh:
            flat = json.load(fh)
        if len(flat) != p**k:
            return None
        return {x: (e,) for x, e in enumerate(flat) if e >= 0}
    except (OSError, ValueError):
        return None


def _store_table(p: int, k: int, table: Dict[int, Tuple[int, ...]]) -> None:
    d = _cache_dir()
    if not d:
        return
    flat = [-1] * p**k
    for x, (e,) in table.items():
        flat[x] = e
    try:
        os.makedirs(d, exist_ok=True)
        with open(os.path.join(d, f"dlog_{p}_{k}.json"), "w") as fh:
            json.dump(flat, fh)
    except OSError:
        pass


@lru_cache(maxsize=None)
def unit_group(p: int, k: int) -> _UnitGroup:
    return _UnitGroup(p, k)


def _v(p: int, n: int) -> int:
    """p-adic valuation of n > 0."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class ComponentCharacter:
    """Character of (Z/p^k)* given by exponent indices on the fixed generators."""

    prime: int
    exp: int
    indices: Tuple[int, ...]

    @property
    def prime_power(self) -> int:
        return self.prime**self.exp

    @property
    def group(self) -> _UnitGroup:
        return unit_group(self.prime, self.exp)

    @property
    def order(self) -> int:
        return math.lcm(*(n // math.gcd(c, n) for c, n in zip(self.indices, self.group.orders)), 1)

    @property
    def conductor(self) -> int:
        p, k = self.prime, self.exp
        if all(c == 0 for c in self.indices):
            return 1
        if p != 2:
            c = self.indices[0]
            n = self.group.orders[0]
            # chi is trivial on {x = 1 mod p^j} iff p^(k-j) divides gcd(c, n)
            return p ** (k - _v(p, math.gcd(c, n)))
        if k == 2:
            return 4
        a, b = self.indices
        if b == 0:
            return 4
        return 2 ** (k - _v(2, b))

    def phase(self, x: int) -> Optional[Fraction]:
        """Phase of the value at x, or None when x is not a unit."""
        exps = self.group.index_of.get(x % self.prime_power)
        if exps is None:
            return None
        total = Fraction(0)
        for c, e, n in zip(self.indices, exps, self.group.orders):
            if c:
                total += Fraction(c * e, n)
        return total % 1


@dataclass(frozen=True)
class DirichletCharacter:
    """CRT bundle of prime-power component characters mod q."""

    modulus: FactoredModulus
    components: Tuple[ComponentCharacter, ...]

    @property
    def order(self) -> int:
        return math.lcm(*(c.order for c in self.components), 1)

    @property
    def conductor(self) -> int:
        return math.prod(c.conductor for c in self.components) if self.components else 1

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus.value

    def phase(self, x: int) -> Optional[Fraction]:
        """Exact phase of the value at x (None encodes the value 0)."""
        total = Fraction(0)
        for comp in self.components:
            ph = comp.phase(x)
            if ph is None:
                return None
            total += ph
        return total % 1

    def value(self, x: int) -> Optional[RootOfUnity]:
        ph = self.phase(x)
        return None if ph is None else RootOfUnity(ph)

    def __call__(self, x: int) -> Optional[RootOfUnity]:
        return self.value(x)

    @property
    def token(self) -> str:
        return format_token(self)

    def __repr__(self) -> str:
        return f"DirichletCharacter({self.token})"


def _flat_to_indices(group: _UnitGroup, flat: int) -> Tuple[int, ...]:
    if not group.gens:
        if flat != 0:
            raise IndexOutOfRange(f"index {flat} out of range for trivial group mod {group.modulus}")
        return ()
    if len(group.orders) == 1:
        if not 0 <= flat < group.orders[0]:
            raise IndexOutOfRange(f"index {flat} out of range mod {group.modulus}")
        return (flat,)
    half = group.orders[1]
    if not 0 <= flat < 2 * half:
        raise IndexOutOfRange(f"index {flat} out of range mod {group.modulus}")
    return (flat // half, flat % half)


def _indices_to_flat(comp: ComponentCharacter) -> int:
    orders = comp.group.orders
    if not orders or not comp.indices:
        return 0
    if len(orders) == 1:
        return comp.indices[0]
    return comp.indices[0] * orders[1] + comp.indices[1]


def build_character(modulus, component_indices: Sequence[int]) -> DirichletCharacter:
    """Character from one flat index per prime-power factor, primes ascending."""
    fm = modulus if isinstance(modulus, FactoredModulus) else factor(modulus)
    items = list(fm.factors.items())
    if len(component_indices) != len(items):
        raise IndexOutOfRange(
            f"expected {len(items)} component indices for q={fm.value}, got {len(component_indices)}"
        )
    comps = []
    for (p, k), flat in zip(items, component_indices):
        g = unit_group(p, k)
        comps.append(ComponentCharacter(p, k, _flat_to_indices(g, flat)))
    return DirichletCharacter(fm, tuple(comps))


def principal_character(modulus) -> DirichletCharacter:
    fm = modulus if isinstance(modulus, FactoredModulus) else factor(modulus)
    return build_character(fm, [0] * fm.omega)


def evaluate(chi: DirichletCharacter, x: int) -> Optional[RootOfUnity]:
    """chi(x) as an exact root of unity; None when gcd(x, q) > 1."""
    return chi.value(x)


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def format_token(chi: DirichletCharacter) -> str:
    idx = ",".join(str(_indices_to_flat(c)) for c in chi.components)
    return f"q={chi.modulus.value};idx={idx}"


def parse_token(token: str) -> DirichletCharacter:
    """Inverse of format_token; accepts 'q=45;idx=1,2'."""
    try:
        qpart, ipart = token.split(";")
        q = int(qpart.split("=", 1)[1])
        raw = ipart.split("=", 1)[1]
        indices = [int(s) for s in raw.split(",")] if raw else []
    except (ValueError, IndexError) as exc:
        raise ValueError(f"malformed character token {token!r}") from exc
    return build_character(q, indices)


def decompose(chi: DirichletCharacter, modulus_split: Sequence[int]) -> List[DirichletCharacter]:
    """Regroup the components of chi along a coprime factorization of q.

    Each split part must be a product of full prime-power factors of q; the
    returned characters multiply pointwise back to chi on every integer.
    """
    q = chi.modulus.value
    parts = list(modulus_split)
    if math.prod(parts) != q:
        raise InvalidSplit(f"split {parts} does not multiply to {q}")
    for i, a in enumerate(parts):
        for b in parts[i + 1 :]:
            if math.gcd(a, b) != 1:
                raise InvalidSplit(f"split parts {a} and {b} are not coprime")
    out = []
    for part in parts:
        if part < 1:
            raise InvalidSplit("split parts must be positive")
        fm = factor(part)
        for p, e in fm.factors.items():
            if chi.modulus.factors.get(p) != e:
                raise InvalidSplit(f"part {part} does not consist of full prime powers of {q}")
        comps = tuple(c for c in chi.components if c.prime in fm.factors)
        out.append(DirichletCharacter(fm, comps))
    return out


def enumerate_characters(modulus, primitive_only: bool = False) -> Iterator[DirichletCharacter]:
    """All characters mod q in lexicographic order of their flat component indices."""
    fm = modulus if isinstance(modulus, FactoredModulus) else factor(modulus)
    items = list(fm.factors.items())
    sizes = [unit_group(p, k).group_order for p, k in items]

    def rec(i: int, chosen: List[int]) -> Iterator[DirichletCharacter]:
        if i == len(items):
            chi = build_character(fm, chosen)
            if not primitive_only or chi.is_primitive:
                yield chi
            return
        for flat in range(sizes[i]):
            chosen.append(flat)
            yield from rec(i + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def primitive_quadratic_characters(qmax: int) -> Iterator[DirichletCharacter]:
    """All primitive real (order 2) characters with modulus <= qmax, by modulus."""
    for q in range(3, qmax + 1):
        fm = factor(q)
        choices: List[List[int]] = []
        ok = True
        for p, k in fm.factors.items():
            g = unit_group(p, k)
            opts = []
            for flat in range(g.group_order):
                comp = ComponentCharacter(p, k, _flat_to_indices(g, flat))
                if comp.order == 2 and comp.conductor == p**k:
                    opts.append(flat)
            if not opts:
                ok = False
                break
            choices.append(opts)
        if not ok:
            continue

        def rec(i: int, chosen: List[int]) -> Iterator[DirichletCharacter]:
            if i == len(choices):
                yield build_character(fm, chosen)
                return
            for flat in choices[i]:
                chosen.append(flat)
                yield from rec(i + 1, chosen)
                chosen.pop()

        yield from rec(0, [])
