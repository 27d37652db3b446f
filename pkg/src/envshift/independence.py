"""Transcendency-degree certificates via exact Jacobian ranks at random points.

Quantum generators are ranked through their top-degree classical images, so a
certified rank is a Schwartz-Zippel style lower bound on the number of
algebraically independent generators; the upper bound (dim g + ind g)/2 comes
from the theory, so PASS means the bound is attained.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import AlgebraError, AlgebraSpec, dimension_and_index
from .chains import ChainSpec, chain_generators
from .classical import (
    ClassicalPolynomial,
    PointOnDual,
    derive_rng,
    gradient,
    power_trace,
    shift_expand,
    shift_pair_trace,
    top_symbol,
)
from .pbw import NCPolynomial
from .shifts import ShiftMatrix


@dataclass(frozen=True)
class RankCertificate:
    family: str
    labels: tuple
    target: int
    seed: int
    trials: int
    ranks: tuple                 # per-point rank, in seed order
    points_hashes: tuple = ()    # reproducibility hints (seeds used per point)

    @property
    def rank(self) -> int:
        return max(self.ranks)

    @property
    def stable(self) -> bool:
        return len(set(self.ranks)) == 1

    @property
    def verdict(self) -> str:
        return "PASS" if self.rank == self.target else "FAIL"

    def serialize(self) -> dict:
        return {
            "family": self.family,
            "labels": list(self.labels),
            "target": self.target,
            "seed": self.seed,
            "trials": self.trials,
            "ranks": list(self.ranks),
            "rank": self.rank,
            "stable": self.stable,
            "verdict": self.verdict,
            "bound_kind": "rank is a probabilistic lower bound; target is the proven upper bound",
        }


def _to_classical(gen) -> ClassicalPolynomial:
    if isinstance(gen, NCPolynomial):
        return top_symbol(gen)
    if isinstance(gen, ClassicalPolynomial):
        return gen
    raise AlgebraError(f"cannot rank generator of type {type(gen).__name__}")


def jacobian_rank(generators, spec: AlgebraSpec, trials=3, seed=42,
                  target=None, labels=None, family="") -> RankCertificate:
    """Stack exact gradients at ``trials`` random rational points and rank them."""
    if not generators:
        raise AlgebraError("empty generator list")
    classical = [_to_classical(g) for g in generators]
    for f in classical:
        if isinstance(f, ClassicalPolynomial) and f.spec != spec:
            raise AlgebraError("mixed-algebra generators")
    dim, ind = dimension_and_index(spec)
    if target is None:
        target = (dim + ind) // 2
    if labels is None:
        labels = [f"g{k}" for k in range(len(classical))]
    ranks = []
    for t in range(trials):
        point = PointOnDual.random(spec, derive_rng(seed, t))
        rows = [list(gradient(f, point)) for f in classical]
        ranks.append(linalg.rank(rows))
    return RankCertificate(
        family=family or spec.designator,
        labels=tuple(labels),
        target=target,
        seed=seed,
        trials=trials,
        ranks=tuple(ranks),
        points_hashes=tuple(f"{seed}.{t}" for t in range(trials)),
    )


def transcendency_check(chain: ChainSpec, trials=3, seed=42) -> RankCertificate:
    """Rank the classical images of a chain family against (dim g + ind g)/2."""
    fam = chain_generators(chain)
    return jacobian_rank(
        fam.polys, chain.algebra, trials=trials, seed=seed,
        labels=fam.labels, family=fam.name,
    )


# ---------------------------------------------------------------------------
# gradient duality between the roles of the point and the shift


@dataclass(frozen=True)
class DualityOutcome:
    k: int
    M: int
    holds_shifted_index: bool   # gradient match with index M-k-1
    holds_plain_index: bool     # gradient match with index M-k

    @property
    def validated(self):
        out = []
        if self.holds_shifted_index:
            out.append("M-k-1")
        if self.holds_plain_index:
            out.append("M-k")
        return out


def _shift_component(spec, rows, M, j):
    """S_X^{j,M} as a polynomial of the coordinates (j = 0 is the plain trace)."""
    if j == 0:
        return power_trace(spec, M)
    return shift_expand(spec, M, rows)[j - 1]


def brailov_duality_check(spec: AlgebraSpec, k: int, M: int,
                          point_X: PointOnDual, point_A: PointOnDual) -> DualityOutcome:
    """Compare d_X S_A^{k,M} at X with d_A S_X^{j,M} at A for both index readings."""
    if not (1 <= k < M):
        raise AlgebraError("need 1 <= k < M")
    A_rows = point_A.matrix()
    X_rows = point_X.matrix()
    lhs = gradient(shift_expand(spec, M, A_rows)[k - 1], point_X)
    shifted = gradient(_shift_component(spec, X_rows, M, M - k - 1), point_A)
    plain = gradient(_shift_component(spec, X_rows, M, M - k), point_A)
    return DualityOutcome(
        k=k, M=M,
        holds_shifted_index=(lhs == shifted),
        holds_plain_index=(lhs == plain),
    )


# ---------------------------------------------------------------------------
# tangent-space intersection with the shift orbit direction [A, g]


def _matrix_gradient_rows(spec, fs, point):
    """Matrix gradients (via the trace form) of polynomials at a point, flattened."""
    gens = spec.canonical_generators
    basis = [spec.defining_matrix(p) for p in gens]
    m = spec.matrix_size
    gram = [
        [
            sum(basis[a][r][c] * basis[b][c][r] for r in range(m) for c in range(m))
            for b in range(len(gens))
        ]
        for a in range(len(gens))
    ]
    out = []
    for f in fs:
        grad = list(gradient(f, point))
        coeffs = _solve(gram, grad)
        flat = [Fraction(0)] * (m * m)
        for g, cg in enumerate(coeffs):
            if cg:
                bm = basis[g]
                for r in range(m):
                    for c in range(m):
                        if bm[r][c]:
                            flat[r * m + c] += cg * bm[r][c]
        out.append(flat)
    return out


def _solve(mat, rhs):
    n = len(mat)
    aug = [[Fraction(x) for x in mat[r]] + [Fraction(rhs[r])] for r in range(n)]
    red, pivots = linalg.rref(aug)
    if len(pivots) != n or n in pivots:
        raise AlgebraError("singular trace form; cannot invert")
    sol = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        sol[c] = red[r][n]
    return sol


def shift_family_classical(spec: AlgebraSpec, A_rows, max_shift=None):
    """Classical images of the shift family: trace powers plus shifted traces."""
    dim, ind = dimension_and_index(spec)
    if max_shift is None:
        max_shift = 2 * spec.n
    fs = []
    labels = []
    if spec.is_gl:
        powers = range(1, spec.n + 1)
        shifts = range(1, max_shift + 1)
    else:
        powers = range(2, 2 * spec.n + 1, 2)
        shifts = range(1, max_shift + 2, 2)
    for M in powers:
        fs.append(power_trace(spec, M))
        labels.append(f"tr(X^{M})")
    for N in shifts:
        f = shift_pair_trace(spec, A_rows, N)
        if not f.is_zero:
            fs.append(f)
            labels.append(f"tr(A.X^{N})")
    return fs, labels


def tangent_intersection_dim(spec: AlgebraSpec, A: ShiftMatrix, trials=8, seed=42):
    """(lhs, rhs) for the shift family's gradient span against [A, g].

    rhs = dim[A, g]/2 = (dim g - dim g_A)/2.  lhs is the dimension of the
    family's matrix-gradient span projected onto [A, g] along g_A (for a
    semisimple A, g = g_A + [A, g] is direct, so this equals the dimension of
    (span + g_A) intersected with [A, g]).  The projection is the quantity
    stable under trading generators that vanish on the rank-2 orbit: such
    generators contribute only stabilizer-direction (conormal) gradients.
    Gradients are taken at a random regular point, regular meaning the Casimir
    gradients attain the full rank ind g.
    """
    from .elements import stabilizer_basis  # local import to avoid a cycle

    rows_A = A.numeric_rows()
    if linalg.rank(rows_A) != 2:
        raise AlgebraError("the shift matrix must have matrix rank exactly 2")
    if not linalg.is_semisimple(rows_A):
        raise AlgebraError("the shift matrix must be semisimple")
    dim, ind = dimension_and_index(spec)
    stab = stabilizer_basis(spec, rows_A)
    dim_gA = len(stab)
    bracket_dim = dim - dim_gA
    if bracket_dim % 2:
        raise AlgebraError("dim [A, g] is odd; inconsistent stabilizer")
    rhs = bracket_dim // 2

    fs, _ = shift_family_classical(spec, rows_A)
    casimirs = [power_trace(spec, M) for M in (
        range(1, spec.n + 1) if spec.is_gl else range(2, 2 * spec.n + 1, 2)
    )]
    m = spec.matrix_size
    point = None
    for t in range(trials):
        cand = PointOnDual.random(spec, derive_rng(seed, t))
        rows = [list(gradient(f, cand)) for f in casimirs]
        if linalg.rank(rows) == ind:
            point = cand
            break
    if point is None:
        raise AlgebraError("no regular point found within the trial budget")

    grad_rows = _matrix_gradient_rows(spec, fs, point)
    stab_rows = [
        [mat[r][c] for r in range(m) for c in range(m)] for mat in stab
    ]
    # dim proj_[A,g](D) = dim(D + g_A) - dim g_A
    lhs = linalg.rank(grad_rows + stab_rows) - dim_gA
    return lhs, rhs
