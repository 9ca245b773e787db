"""Exact scalar arithmetic: rational combinations of even powers of pi and
formal products of multiple zeta symbols.

Everything here is symbolic and exact.  Numeric evaluation lives in
:mod:`multitangent.mzv`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

import mpmath as mp

from .words import Composition

RationalLike = Fraction | int


class PiRational:
    """A finite sum  sum_m  c_m * pi^(2m)  with rational c_m, m >= 0."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, RationalLike] | RationalLike = 0):
        self._terms: dict[int, Fraction] = {}
        if isinstance(terms, (int, Fraction)):
            terms = {0: terms}
        for exp, coef in terms.items():
            if exp < 0 or exp % 2:
                raise ValueError(f"pi exponent must be even and nonnegative, got {exp}")
            c = Fraction(coef)
            if c:
                self._terms[exp] = self._terms.get(exp, Fraction(0)) + c
                if not self._terms[exp]:
                    del self._terms[exp]

    @classmethod
    def pi_power(cls, exp: int, coef: RationalLike = 1) -> "PiRational":
        return cls({exp: coef})

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PiRational(other)
        if not isinstance(other, PiRational):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "PiRational | RationalLike") -> "PiRational":
        if isinstance(other, (int, Fraction)):
            other = PiRational(other)
        out = dict(self._terms)
        for exp, coef in other._terms.items():
            out[exp] = out.get(exp, Fraction(0)) + coef
            if not out[exp]:
                del out[exp]
        return PiRational(out)

    __radd__ = __add__

    def __neg__(self) -> "PiRational":
        return PiRational({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "PiRational | RationalLike") -> "PiRational":
        if isinstance(other, (int, Fraction)):
            other = PiRational(other)
        return self + (-other)

    def __mul__(self, other: "PiRational | RationalLike") -> "PiRational":
        if isinstance(other, (int, Fraction)):
            return PiRational({e: c * Fraction(other) for e, c in self._terms.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return PiRational(out)

    __rmul__ = __mul__

    def __truediv__(self, k: RationalLike) -> "PiRational":
        return self * (Fraction(1) / Fraction(k))

    @property
    def rational_part(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def max_weight(self) -> int:
        """Largest pi exponent present (pi^2 counts as weight 2)."""
        return max(self._terms, default=0)

    def is_homogeneous(self, weight: int) -> bool:
        return all(e == weight for e in self._terms)

    def to_mpf(self) -> mp.mpf:
        """Value at the current mpmath working precision."""
        total = mp.mpf(0)
        for exp, coef in self._terms.items():
            total += mp.mpf(coef.numerator) / coef.denominator * mp.pi ** exp
        return total

    def to_json(self) -> list[dict]:
        return [{"pi2": e, "coef": f"{c.numerator}/{c.denominator}"} for e, c in self.items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "PiRational":
        return cls({int(d["pi2"]): Fraction(d["coef"]) for d in data})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for exp, coef in self.items():
            if exp == 0:
                bits.append(str(coef))
            elif coef == 1:
                bits.append(f"pi^{exp}")
            else:
                bits.append(f"{coef}*pi^{exp}")
        return " + ".join(bits)

    __repr__ = __str__


ZERO = PiRational(0)
ONE = PiRational(1)


class MzvMonomial:
    """A commutative product of zeta symbols Ze[s^1]...Ze[s^d].

    Factors are kept as a sorted tuple of compositions; the empty product is
    the scalar one.  Factors are expected to index convergent nested sums
    (first part >= 2); enforcing that is left to the constructors in
    :mod:`multitangent.mzv` so that intermediate formal work stays cheap.
    """

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[Composition] = ()):
        object.__setattr__(self, "factors", tuple(sorted(factors, key=Composition.sort_key)))

    def __setattr__(self, *args):
        raise AttributeError("MzvMonomial is immutable")

    @classmethod
    def one(cls) -> "MzvMonomial":
        return cls(())

    @classmethod
    def symbol(cls, s: Composition) -> "MzvMonomial":
        return cls((s,))

    @property
    def degree(self) -> int:
        return len(self.factors)

    @property
    def weight(self) -> int:
        return sum(f.weight for f in self.factors)

    def __mul__(self, other: "MzvMonomial") -> "MzvMonomial":
        return MzvMonomial(self.factors + other.factors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MzvMonomial):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def sort_key(self):
        return (self.weight, self.degree, tuple(f.sort_key() for f in self.factors))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"Ze[{f}]" for f in self.factors)

    __repr__ = __str__


class CoeffExpr:
    """Exact scalar: a map from MZV monomials to PiRational coefficients.

    Products of monomials are kept formal; linearization through the stuffle
    is an explicit pass (:func:`multitangent.mzv.linearize`).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[MzvMonomial, PiRational] | None = None):
        self._terms: dict[MzvMonomial, PiRational] = {}
        if terms:
            for mono, coef in terms.items():
                if coef:
                    cur = self._terms.get(mono)
                    coef = coef if cur is None else cur + coef
                    if coef:
                        self._terms[mono] = coef
                    elif mono in self._terms:
                        del self._terms[mono]

    @classmethod
    def zero(cls) -> "CoeffExpr":
        return cls()

    @classmethod
    def scalar(cls, value: PiRational | RationalLike) -> "CoeffExpr":
        if isinstance(value, (int, Fraction)):
            value = PiRational(value)
        return cls({MzvMonomial.one(): value})

    @classmethod
    def symbol(cls, s: Composition, coef: PiRational | RationalLike = 1) -> "CoeffExpr":
        if isinstance(coef, (int, Fraction)):
            coef = PiRational(coef)
        return cls({MzvMonomial.symbol(s): coef})

    def items(self) -> Iterator[tuple[MzvMonomial, PiRational]]:
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0].sort_key()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "CoeffExpr") -> "CoeffExpr":
        out = dict(self._terms)
        for mono, coef in other._terms.items():
            cur = out.get(mono)
            new = coef if cur is None else cur + coef
            if new:
                out[mono] = new
            elif mono in out:
                del out[mono]
        return CoeffExpr(out)

    def __neg__(self) -> "CoeffExpr":
        return CoeffExpr({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "CoeffExpr") -> "CoeffExpr":
        return self + (-other)

    def scale(self, k: PiRational | RationalLike) -> "CoeffExpr":
        if isinstance(k, (int, Fraction)):
            k = PiRational(k)
        if not k:
            return CoeffExpr()
        return CoeffExpr({m: c * k for m, c in self._terms.items()})

    def __rmul__(self, k):
        if isinstance(k, (int, Fraction, PiRational)):
            return self.scale(k)
        return NotImplemented

    def __mul__(self, other: "CoeffExpr") -> "CoeffExpr":
        """Formal product: monomials multiply, no stuffle linearization."""
        if isinstance(other, (int, Fraction, PiRational)):
            return self.scale(other)
        out: dict[MzvMonomial, PiRational] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                c = c1 * c2
                cur = out.get(m)
                c = c if cur is None else cur + c
                if c:
                    out[m] = c
                elif m in out:
                    del out[m]
        return CoeffExpr(out)

    def coefficient(self, mono: MzvMonomial) -> PiRational:
        return self._terms.get(mono, ZERO)

    def scalar_part(self) -> PiRational:
        return self._terms.get(MzvMonomial.one(), ZERO)

    def monomials(self) -> list[MzvMonomial]:
        return sorted(self._terms, key=MzvMonomial.sort_key)

    def max_degree(self) -> int:
        return max((m.degree for m in self._terms), default=0)

    def is_weight_homogeneous(self, weight: int) -> bool:
        """Every term has total weight ``weight`` (pi^2 weighs 2, each zeta
        symbol its own weight)."""
        for mono, coef in self._terms.items():
            for exp, _ in coef.items():
                if mono.weight + exp != weight:
                    return False
        return True

    def map_symbols(self, fn) -> "CoeffExpr":
        """Replace every length-1 factor through ``fn: Composition -> CoeffExpr``.

        Used for basis substitution; products of factors are substituted
        factor by factor and multiplied formally.
        """
        out = CoeffExpr()
        for mono, coef in self._terms.items():
            term = CoeffExpr.scalar(coef)
            for factor in mono.factors:
                term = term * fn(factor)
            out = out + term
        return out

    def to_json(self) -> dict:
        terms = []
        for mono, coef in self.items():
            for exp, frac in coef.items():
                terms.append(
                    {
                        "pi2": exp,
                        "coef": f"{frac.numerator}/{frac.denominator}",
                        "mzv": [list(f.parts) for f in mono.factors],
                    }
                )
        return {"terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "CoeffExpr":
        out = cls()
        for term in data["terms"]:
            mono = MzvMonomial(Composition(tuple(p)) for p in term["mzv"])
            coef = PiRational({int(term["pi2"]): Fraction(term["coef"])})
            out = out + cls({mono: coef})
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for mono, coef in self.items():
            c = str(coef)
            if mono.degree == 0:
                bits.append(c)
            elif c == "1":
                bits.append(str(mono))
            else:
                needs_parens = "+" in c or " " in c
                bits.append((f"({c})" if needs_parens else c) + "*" + str(mono))
        return " + ".join(bits)

    __repr__ = __str__
