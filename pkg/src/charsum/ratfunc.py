"""Factored rational functions f(x) = prod (x - a)^d and the admissibility test.

Degree follows the convention that a quotient adds the numerator and
denominator degrees: deg f = sum |d_a|.  Text form is
``(x-a1)^d1 (x-a2)^d2 ...`` with roots ascending (``x`` alone is the root 0,
``1`` the empty product).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .arith import factor
from .errors import LogLogUndefined, NotSquarefree


@dataclass(frozen=True)
class FactoredRational:
    """Terms (root, multiplicity) with distinct roots, ascending, multiplicities nonzero."""

    terms: Tuple[Tuple[int, int], ...]

    @staticmethod
    def from_terms(pairs: Iterable[Tuple[int, int]]) -> "FactoredRational":
        merged: Dict[int, int] = {}
        for a, d in pairs:
            merged[a] = merged.get(a, 0) + d
        return FactoredRational(tuple(sorted((a, d) for a, d in merged.items() if d != 0)))

    @staticmethod
    def identity() -> "FactoredRational":
        return FactoredRational(((0, 1),))

    @staticmethod
    def one() -> "FactoredRational":
        return FactoredRational(())

    @property
    def degree(self) -> int:
        return sum(abs(d) for _, d in self.terms)

    @property
    def roots(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.terms)

    def inverse(self) -> "FactoredRational":
        return FactoredRational(tuple((a, -d) for a, d in self.terms))

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        return FactoredRational.from_terms(self.terms + other.terms)

    def translated(self, c: int) -> "FactoredRational":
        """f(x + c); roots move to a - c."""
        return FactoredRational(tuple(sorted((a - c, d) for a, d in self.terms)))

    def evaluate_fraction(self, x) -> Optional[Fraction]:
        """Exact value at x, or None at a pole."""
        xf = Fraction(x)
        if any(d < 0 and xf == a for a, d in self.terms):
            return None
        out = Fraction(1)
        for a, d in self.terms:
            out *= (xf - a) ** d
        return out

    def evaluate_mod(self, x: int, n: int) -> Optional[int]:
        """Value mod n; None when a negative-multiplicity base is not a unit."""
        out = 1
        for a, d in self.terms:
            base = (x - a) % n
            if d < 0:
                if math.gcd(base, n) != 1:
                    return None
                out = out * pow(base, d, n) % n
            else:
                out = out * pow(base, d, n) % n
        return out

    def __str__(self) -> str:
        return format_ratfunc(self)


def reduce_mod_p(f: FactoredRational, p: int) -> FactoredRational:
    """Merge roots by congruence class mod p, summing multiplicities.

    Classes whose multiplicities cancel disappear, so the result describes f
    as a function on Z/p.
    """
    merged: Dict[int, int] = {}
    for a, d in f.terms:
        r = a % p
        merged[r] = merged.get(r, 0) + d
    return FactoredRational(tuple(sorted((a, d) for a, d in merged.items() if d != 0)))


def satisfies_star(f: FactoredRational, p: int) -> bool:
    """True iff f mod p has a simple root or a simple pole."""
    return any(abs(d) == 1 for _, d in reduce_mod_p(f, p).terms)


@dataclass(frozen=True)
class AdmissibilityReport:
    q_bar: int
    tau: float
    good_primes: Tuple[int, ...]
    good_product: int
    threshold: float
    admissible: bool

    def to_dict(self) -> dict:
        return {
            "q_bar": self.q_bar,
            "tau": self.tau,
            "good_primes": list(self.good_primes),
            "good_product": self.good_product,
            "threshold": self.threshold,
            "admissible": self.admissible,
        }


def default_tau(q_r: int) -> float:
    """10 / log log q_r; undefined at or below e."""
    if q_r <= 2:
        raise LogLogUndefined(f"log log {q_r} is undefined; supply tau explicitly")
    return 10.0 / math.log(math.log(q_r))


def admissible(
    f: FactoredRational, q_bar: int, q_r: int, tau: Optional[float] = None
) -> AdmissibilityReport:
    """Goodness of the primes of squarefree q_bar | q_r for f, against q_bar / q_r^tau.

    The pair is admissible when the product of primes p | q_bar at which f mod
    p keeps a simple root or pole exceeds q_bar / q_r^tau.
    """
    fm = factor(q_bar)
    if not fm.is_squarefree():
        raise NotSquarefree(f"q_bar={q_bar} is not squarefree")
    if q_r % q_bar != 0:
        raise ValueError(f"q_bar={q_bar} does not divide q_r={q_r}")
    if tau is None:
        tau = default_tau(q_r)
    good = tuple(p for p in fm.factors if satisfies_star(f, p))
    good_product = math.prod(good) if good else 1
    threshold = q_bar / q_r**tau if tau * math.log(q_r) < 700 else 0.0
    # compare in logs to dodge overflow; strict inequality as in the definition
    ok = math.log(good_product) > math.log(q_bar) - tau * math.log(q_r)
    return AdmissibilityReport(q_bar, tau, good, good_product, threshold, ok)


_TERM_RE = re.compile(r"\s*(?:\(x(?P<off>[+-]\d+)\)|(?P<bare>x)|(?P<one>1))(?:\^(?P<exp>-?\d+))?")


def parse_ratfunc(text: str) -> FactoredRational:
    """Parse '(x-1)(x-2)^-1', 'x^2 (x+3)', or '1'."""
    pos = 0
    pairs: List[Tuple[int, int]] = []
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse rational function {text!r} at offset {pos}")
        exp = int(m.group("exp")) if m.group("exp") else 1
        if m.group("one"):
            pass
        elif m.group("bare"):
            pairs.append((0, exp))
        else:
            pairs.append((-int(m.group("off")), exp))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return FactoredRational.from_terms(pairs)


def format_ratfunc(f: FactoredRational) -> str:
    if not f.terms:
        return "1"
    parts = []
    for a, d in f.terms:
        if a == 0:
            base = "x"
        elif a > 0:
            base = f"(x-{a})"
        else:
            base = f"(x+{-a})"
        parts.append(base if d == 1 else f"{base}^{d}")
    return " ".join(parts)
