"""Multivariate polynomials in named parameters with exact rational coefficients.

Used as an alternative coefficient domain so shift matrices can carry symbolic
entries (a1, a2, ...): a single vanishing check then covers a Zariski-dense
family of numeric shift matrices at once.  Only ring operations are needed,
never division by a parameter.
"""

from __future__ import annotations

from fractions import Fraction


class ParamPolynomial:
    """Sparse polynomial: monomial tuple ((name, exp), ...) -> Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[mono] = self.terms.get(mono, Fraction(0)) + c
            self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def const(cls, c) -> "ParamPolynomial":
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def variable(cls, name: str) -> "ParamPolynomial":
        return cls({((name, 1),): Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @staticmethod
    def _coerce(other):
        if isinstance(other, ParamPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPolynomial.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, Fraction(0)) + c
            if v:
                terms[m] = v
            elif m in terms:
                del terms[m]
        out = ParamPolynomial()
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = ParamPolynomial()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = terms.get(m, Fraction(0)) + c1 * c2
                if v:
                    terms[m] = v
                elif m in terms:
                    del terms[m]
        out = ParamPolynomial()
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, values: dict) -> Fraction:
        """Evaluate at rational parameter values (all names must be bound)."""
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for name, exp in mono:
                v *= Fraction(values[name]) ** exp
            total += v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            factors = [f"{name}^{exp}" if exp > 1 else name for name, exp in mono]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"ParamPolynomial({self})"


def _mono_mul(m1, m2):
    exps: dict = {}
    for name, e in m1 + m2:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def coeff_is_zero(c) -> bool:
    if isinstance(c, ParamPolynomial):
        return c.is_zero
    return c == 0


def coeff_to_str(c) -> str:
    """Render a coefficient; parametric ones are parenthesized."""
    if isinstance(c, ParamPolynomial):
        return f"({c})"
    return str(c)
