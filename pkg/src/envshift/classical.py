"""The graded shadow: commutative polynomials on the dual space g*.

Coordinate functions are indexed by the same canonical generators as the
quantum side.  This module provides Lie-Poisson brackets, trace invariants
and their argument-shift expansions, characteristic-polynomial shift
invariants, exact gradients, and rank-2 point sampling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import AlgebraError, AlgebraSpec, bracket_structure, matrix_to_coordinates
from .params import ParamPolynomial
from .pbw import NCPolynomial


class ClassicalPolynomial:
    """Sparse commutative polynomial: ((gen_id, exp), ...) -> Fraction."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms=None):
        self.spec = spec
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    v = self.terms.get(mono, Fraction(0)) + c
                    if v:
                        self.terms[mono] = v
                    elif mono in self.terms:
                        del self.terms[mono]

    @classmethod
    def zero(cls, spec):
        return cls(spec)

    @classmethod
    def const(cls, spec, c):
        c = Fraction(c)
        return cls(spec, {(): c} if c else {})

    @classmethod
    def coordinate(cls, spec, i, j):
        """The coordinate function of X[i,j]; zero for the so-type zero generator."""
        sign, pair = spec.canonicalize_pair(i, j)
        if pair is None:
            return cls(spec)
        g = spec.generator_ids[pair]
        return cls(spec, {((g, 1),): Fraction(sign)})

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def _coerce(self, other):
        if isinstance(other, ClassicalPolynomial):
            if other.spec != self.spec:
                raise AlgebraError("mixed-algebra classical polynomials")
            return other
        if isinstance(other, (int, Fraction)):
            return ClassicalPolynomial.const(self.spec, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = ClassicalPolynomial(self.spec)
        out.terms = dict(self.terms)
        for m, c in other.terms.items():
            v = out.terms.get(m, Fraction(0)) + c
            if v:
                out.terms[m] = v
            elif m in out.terms:
                del out.terms[m]
        return out

    __radd__ = __add__

    def __neg__(self):
        out = ClassicalPolynomial(self.spec)
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
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            out = ClassicalPolynomial(self.spec)
            if c:
                out.terms = {m: v * c for m, v in self.terms.items()}
            return out
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = ClassicalPolynomial(self.spec)
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = acc.get(m, Fraction(0)) + c1 * c2
                if v:
                    acc[m] = v
                elif m in acc:
                    del acc[m]
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (Fraction(1) / Fraction(k))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def partial(self, gen_id: int) -> "ClassicalPolynomial":
        out = ClassicalPolynomial(self.spec)
        acc: dict = {}
        for mono, c in self.terms.items():
            for t, (g, e) in enumerate(mono):
                if g == gen_id:
                    rest = mono[:t] + ((g, e - 1),) if e > 1 else mono[:t]
                    rest = rest + mono[t + 1 :]
                    v = acc.get(rest, Fraction(0)) + c * e
                    if v:
                        acc[rest] = v
                    elif rest in acc:
                        del acc[rest]
                    break
        out.terms = acc
        return out

    def evaluate(self, values) -> Fraction:
        """values: gen_id -> Fraction (missing ids count as 0)."""
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for g, e in mono:
                x = values.get(g, Fraction(0))
                if not x:
                    v = Fraction(0)
                    break
                v *= x**e
            total += v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        gens = self.spec.canonical_generators
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m)):
            c = self.terms[mono]
            facs = []
            for g, e in mono:
                name = "X[%d,%d]" % gens[g]
                facs.append(name if e == 1 else f"{name}^{e}")
            if not facs:
                parts.append(str(c))
            elif c == 1:
                parts.append(".".join(facs))
            else:
                parts.append(f"{c}*" + ".".join(facs))
        return " + ".join(parts)

    def __repr__(self):
        return f"<ClassicalPolynomial {self.spec.designator}: {self}>"


def _mono_mul(m1, m2):
    exps: dict = {}
    for g, e in m1 + m2:
        exps[g] = exps.get(g, 0) + e
    return tuple(sorted(exps.items()))


def derive_rng(*parts) -> random.Random:
    """A deterministic RNG keyed by the string forms of the given parts."""
    return random.Random("|".join(str(p) for p in parts))


# ---------------------------------------------------------------------------
# quantum -> classical


def graded_symbol(p: NCPolynomial, degree: int) -> ClassicalPolynomial:
    """The degree-d graded part of a PBW polynomial as a commutative polynomial."""
    spec = p.spec
    acc: dict = {}
    for word, c in p.terms.items():
        if len(word) != degree:
            continue
        if isinstance(c, ParamPolynomial):
            raise AlgebraError("classical images need numeric coefficients")
        exps: dict = {}
        for g in word:
            exps[g] = exps.get(g, 0) + 1
        mono = tuple(sorted(exps.items()))
        acc[mono] = acc.get(mono, Fraction(0)) + c
    return ClassicalPolynomial(spec, acc)


def top_symbol(p: NCPolynomial) -> ClassicalPolynomial:
    """Highest-degree part of a PBW polynomial as a commutative polynomial."""
    if p.is_zero:
        return ClassicalPolynomial.zero(p.spec)
    return graded_symbol(p, p.degree())


# ---------------------------------------------------------------------------
# Lie-Poisson bracket

_CLASSICAL_BRACKETS: dict = {}


def _coordinate_bracket(spec: AlgebraSpec, ga: int, gb: int) -> ClassicalPolynomial:
    key = (spec, ga, gb)
    out = _CLASSICAL_BRACKETS.get(key)
    if out is None:
        pa = spec.canonical_generators[ga]
        pb = spec.canonical_generators[gb]
        acc = {}
        for pair, c in bracket_structure(spec, pa, pb).items():
            acc[((spec.generator_ids[pair], 1),)] = Fraction(c)
        out = _CLASSICAL_BRACKETS[key] = ClassicalPolynomial(spec, acc)
    return out


def lie_poisson_bracket(f: ClassicalPolynomial, g: ClassicalPolynomial) -> ClassicalPolynomial:
    """{f, g} = sum df/dx_a dg/dx_b {x_a, x_b}; bilinear, antisymmetric, Leibniz."""
    if f.spec != g.spec:
        raise AlgebraError("mixed-algebra classical polynomials")
    spec = f.spec
    gens_f = sorted({gid for m in f.terms for gid, _ in m})
    gens_g = sorted({gid for m in g.terms for gid, _ in m})
    out = ClassicalPolynomial.zero(spec)
    for ga in gens_f:
        dfa = f.partial(ga)
        if dfa.is_zero:
            continue
        for gb in gens_g:
            br = _coordinate_bracket(spec, ga, gb)
            if br.is_zero:
                continue
            dgb = g.partial(gb)
            if dgb.is_zero:
                continue
            out = out + dfa * dgb * br
    return out


# ---------------------------------------------------------------------------
# trace invariants and argument-shift expansions


def coordinate_matrix(spec: AlgebraSpec, indices=None):
    idx = tuple(indices) if indices is not None else spec.index_set
    return [[ClassicalPolynomial.coordinate(spec, i, j) for j in idx] for i in idx]


def power_trace(spec: AlgebraSpec, M: int, indices=None) -> ClassicalPolynomial:
    """S^M(X) = tr(X^M) with cyclic index contraction, as a polynomial."""
    if M < 1:
        raise ValueError("power must be >= 1")
    X = coordinate_matrix(spec, indices)
    P = X
    for _ in range(M - 1):
        P = linalg.mat_mul(P, X)
    return _poly_trace(spec, P)


def shift_pair_trace(spec: AlgebraSpec, rows, M: int, indices=None) -> ClassicalPolynomial:
    """tr(A X^M): the classical image of the shifted generator (A X^M)."""
    X = coordinate_matrix(spec, indices)
    P = [[ClassicalPolynomial.const(spec, c) for c in row] for row in rows]
    for _ in range(M):
        P = linalg.mat_mul(P, X)
    return _poly_trace(spec, P)


def _poly_trace(spec, P):
    acc = ClassicalPolynomial.zero(spec)
    for r in range(len(P)):
        acc = acc + P[r][r]
    return acc


def shift_expand(spec: AlgebraSpec, M: int, rows, indices=None):
    """Coefficients [S_A^{1,M}, ..., S_A^{M,M}] of tr((X + t A)^M) in powers of t.

    The k = 0 coefficient is tr(X^M) itself and is not returned; the k = M
    entry is the constant tr(A^M).
    """
    if M < 1:
        raise ValueError("power must be >= 1")
    X = coordinate_matrix(spec, indices)
    A = [[ClassicalPolynomial.const(spec, c) for c in row] for row in rows]
    m = len(X)
    graded = [_poly_identity(spec, m)]
    for _ in range(M):
        nxt = []
        for k in range(len(graded) + 1):
            term = None
            if k < len(graded):
                term = linalg.mat_mul(graded[k], X)
            if k >= 1:
                t2 = linalg.mat_mul(graded[k - 1], A)
                term = t2 if term is None else linalg.mat_add(term, t2)
            nxt.append(term)
        graded = nxt
    return [_poly_trace(spec, graded[k]) for k in range(1, M + 1)]


def _poly_identity(spec, m):
    one = ClassicalPolynomial.const(spec, 1)
    zero = ClassicalPolynomial.zero(spec)
    return [[one if r == c else zero for c in range(m)] for r in range(m)]


# ---------------------------------------------------------------------------
# characteristic-polynomial shift invariants (sums of minors)


class _LambdaSeries:
    """Truncated polynomial in the shift parameter with ring-element coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)

    def _pad(self, n):
        return self.coeffs + [Fraction(0)] * (n - len(self.coeffs))

    def __add__(self, other):
        if not isinstance(other, _LambdaSeries):
            other = _LambdaSeries([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return _LambdaSeries([a + b for a, b in zip(self._pad(n), other._pad(n))])

    __radd__ = __add__

    def __neg__(self):
        return _LambdaSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, _LambdaSeries):
            other = _LambdaSeries([other])
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, _LambdaSeries):
            other = _LambdaSeries([other])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            if isinstance(ca, Fraction) and not ca:
                continue
            for b, cb in enumerate(other.coeffs):
                out[a + b] = out[a + b] + ca * cb
        return _LambdaSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return _LambdaSeries([c / k for c in self.coeffs])

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def coefficient(self, k):
        if k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)


def shifted_charpoly_coefficient(X_rows, A_rows, M: int, k: int):
    """The t^k part of the M-th characteristic-polynomial coefficient of X + t A.

    Entries may be numbers or polynomials; the result is a linear combination
    of order-(M-k) minors of X against order-k minors of A.
    """
    m = len(X_rows)
    if not (1 <= k < M <= m):
        raise ValueError("need 1 <= k < M <= matrix size")
    series = [
        [_LambdaSeries([X_rows[r][c], A_rows[r][c]]) for c in range(m)] for r in range(m)
    ]
    cs = linalg.charpoly(series, div=lambda x, n: x / n)
    return cs[M].coefficient(k)


def charpoly_shift_invariants(spec: AlgebraSpec, M: int, k: int, rows) -> ClassicalPolynomial:
    """P_A^{k,M} over the coordinate functions of the algebra."""
    X = coordinate_matrix(spec)
    A = [[ClassicalPolynomial.const(spec, c) for c in row] for row in rows]
    out = shifted_charpoly_coefficient(X, A, M, k)
    if isinstance(out, Fraction):
        return ClassicalPolynomial.const(spec, out)
    return out


# ---------------------------------------------------------------------------
# points on the dual space and gradients


@dataclass(frozen=True)
class PointOnDual:
    """A rational point of g*, stored as values of the canonical coordinates."""

    spec: AlgebraSpec
    values: tuple  # aligned with canonical_generators

    @classmethod
    def from_coordinates(cls, spec, coords: dict):
        vals = [Fraction(0)] * spec.dim
        for pair, c in coords.items():
            vals[spec.generator_ids[pair]] = Fraction(c)
        return cls(spec, tuple(vals))

    @classmethod
    def from_matrix(cls, spec, rows):
        return cls.from_coordinates(spec, matrix_to_coordinates(spec, rows))

    @classmethod
    def random(cls, spec, rng: random.Random, lo=-10, hi=10):
        return cls(spec, tuple(Fraction(rng.randint(lo, hi)) for _ in range(spec.dim)))

    def value_map(self) -> dict:
        return {g: v for g, v in enumerate(self.values)}

    def matrix(self):
        rows = [[Fraction(0)] * self.spec.matrix_size for _ in range(self.spec.matrix_size)]
        for g, v in enumerate(self.values):
            if v:
                dm = self.spec.defining_matrix(self.spec.canonical_generators[g])
                for r in range(self.spec.matrix_size):
                    for c in range(self.spec.matrix_size):
                        if dm[r][c]:
                            rows[r][c] += v * dm[r][c]
        return rows


def evaluate(f: ClassicalPolynomial, point: PointOnDual) -> Fraction:
    return f.evaluate(point.value_map())


def gradient(f: ClassicalPolynomial, point: PointOnDual):
    """Exact partial derivatives over the canonical coordinates at the point."""
    vals = point.value_map()
    return tuple(f.partial(g).evaluate(vals) for g in range(f.spec.dim))


def _involution_partner(spec, rows):
    """tau(B)_ij = -eps_i eps_j B_{-j,-i}; B + tau(B) lies in the algebra."""
    m = spec.matrix_size
    out = [[Fraction(0)] * m for _ in range(m)]
    for i in spec.index_set:
        for j in spec.index_set:
            out[spec.position(i)][spec.position(j)] = (
                -spec.eps(i) * spec.eps(j) * rows[spec.position(-j)][spec.position(-i)]
            )
    return out


def random_rank2_point(spec: AlgebraSpec, seed, retries=64) -> PointOnDual:
    """A random point of g* with matrix rank exactly 2.

    gl: a sum of two random dyads u v^T + w z^T.  so/sp: a single dyad plus
    its involution partner (a two-dyad combination that lands in the algebra);
    projecting a generic two-dyad sum would exceed rank 2.
    """
    rng = derive_rng("rank2", seed)
    m = spec.matrix_size
    for _ in range(retries):
        if spec.is_gl:
            u, v, w, z = (
                [Fraction(rng.randint(-10, 10)) for _ in range(m)] for _ in range(4)
            )
            rows = [[u[r] * v[c] + w[r] * z[c] for c in range(m)] for r in range(m)]
        else:
            u, v = ([Fraction(rng.randint(-10, 10)) for _ in range(m)] for _ in range(2))
            dyad = [[u[r] * v[c] for c in range(m)] for r in range(m)]
            rows = linalg.mat_add(dyad, _involution_partner(spec, dyad))
        if linalg.rank(rows) == 2:
            return PointOnDual.from_matrix(spec, rows)
    raise AlgebraError("rank-2 sampling exhausted its retry budget")


def antisymmetric_rank2_matrix(size: int, seed):
    """u v^T - v u^T in the plain antisymmetric realization (cross-check helper)."""
    rng = derive_rng("antisym", seed)
    while True:
        u = [Fraction(rng.randint(-10, 10)) for _ in range(size)]
        v = [Fraction(rng.randint(-10, 10)) for _ in range(size)]
        rows = [[u[r] * v[c] - v[r] * u[c] for c in range(size)] for r in range(size)]
        if linalg.rank(rows) == 2:
            return rows
