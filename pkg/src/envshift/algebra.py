"""Classical matrix Lie algebras over exact rationals, in signed-index form.

gl(n) is spanned by X[i,j] with i,j running over 1..n.  The orthogonal and
symplectic algebras are realized inside gl as spans of X[i,j] with signed
indices: so(2n+1) uses -n..n, so(2n) and sp(n) use -n..-1,1..n, together
with the pair relation

    X[i,j] = -eps(i)*eps(j) * X[-j,-i],

where eps is identically 1 for so and eps(j) = sgn(j) for sp.  Only one
member of each {(i,j), (-j,-i)} pair is stored as a canonical generator;
for so the self-paired X[i,-i] vanish identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

GL = "gl"
SO_ODD = "so_odd"
SO_EVEN = "so_even"
SP = "sp"

FAMILIES = (GL, SO_ODD, SO_EVEN, SP)


class AlgebraError(ValueError):
    """Unknown family, bad rank parameter, or an index outside the index set."""


@dataclass(frozen=True)
class GeneratorRef:
    """Resolution of a raw index pair against the canonical generator set.

    (i, j) is the canonical representative, ``sign`` relates the queried pair
    to it (X[query] = sign * X[i,j]), and ``canonical`` records whether the
    queried pair already was the representative.  The zero generator (so-type
    X[i,-i]) is represented by ``canonicalize`` returning None instead.
    """

    i: int
    j: int
    canonical: bool
    sign: int


@dataclass(frozen=True)
class AlgebraSpec:
    """One classical matrix Lie algebra: a family tag plus rank parameter n."""

    family: str
    n: int

    @cached_property
    def index_set(self) -> tuple[int, ...]:
        if self.family == GL:
            return tuple(range(1, self.n + 1))
        if self.family == SO_ODD:
            return tuple(range(-self.n, self.n + 1))
        return tuple(i for i in range(-self.n, self.n + 1) if i != 0)

    @cached_property
    def matrix_size(self) -> int:
        return len(self.index_set)

    @cached_property
    def _pos(self) -> dict:
        return {idx: p for p, idx in enumerate(self.index_set)}

    @property
    def is_gl(self) -> bool:
        return self.family == GL

    @property
    def pair_sign(self) -> int:
        """eps(j)*eps(-j), constant over the paired indices: +1 so, -1 sp."""
        return -1 if self.family == SP else 1

    @property
    def designator(self) -> str:
        if self.family == GL:
            return f"gl:{self.n}"
        if self.family == SP:
            return f"sp:{self.n}"
        return f"so:{self.matrix_size}"

    def eps(self, j: int) -> int:
        if self.family == SP:
            return -1 if j < 0 else 1
        return 1

    @cached_property
    def epsilon(self) -> dict:
        return {j: self.eps(j) for j in self.index_set}

    def position(self, i: int) -> int:
        try:
            return self._pos[i]
        except KeyError:
            raise AlgebraError(f"index {i} not in index set of {self.designator}") from None

    def canonicalize_pair(self, i: int, j: int):
        """Return (sign, canonical pair) with pair None for the zero generator."""
        self.position(i)
        self.position(j)
        if self.family == GL:
            return 1, (i, j)
        if i + j > 0:
            return 1, (i, j)
        if i + j < 0:
            return -self.eps(i) * self.eps(j), (-j, -i)
        # self-paired: X[i,-i] = -eps(i)eps(-i) X[i,-i]
        if self.family == SP:
            return 1, (i, j)
        return 1, None

    @cached_property
    def canonical_generators(self) -> tuple[tuple[int, int], ...]:
        """Canonical nonzero generators in the fixed total (PBW) order."""
        gens = []
        for i in self.index_set:
            for j in self.index_set:
                sign, pair = self.canonicalize_pair(i, j)
                if pair == (i, j) and sign == 1:
                    gens.append(pair)
        return tuple(gens)

    @cached_property
    def generator_ids(self) -> dict:
        return {pair: k for k, pair in enumerate(self.canonical_generators)}

    @property
    def dim(self) -> int:
        return len(self.canonical_generators)

    @property
    def rank(self) -> int:
        return self.n

    def defining_matrix(self, pair) -> tuple:
        """The generator as a matrix over the index set (rows/cols by position)."""
        i, j = pair
        m = self.matrix_size
        rows = [[Fraction(0)] * m for _ in range(m)]
        rows[self.position(i)][self.position(j)] += 1
        if self.family != GL:
            rows[self.position(-j)][self.position(-i)] -= self.eps(i) * self.eps(j)
        return tuple(tuple(r) for r in rows)


def make_algebra(family: str, n: int) -> AlgebraSpec:
    if family not in FAMILIES:
        raise AlgebraError(f"unknown family {family!r}")
    if not isinstance(n, int) or n < 1:
        raise AlgebraError(f"rank parameter must be a positive integer, got {n!r}")
    return AlgebraSpec(family, n)


def parse_algebra(text: str) -> AlgebraSpec:
    """Parse a designator like ``gl:3``, ``so:5`` (matrix size) or ``sp:2``."""
    try:
        fam, _, num = text.partition(":")
        m = int(num)
    except ValueError:
        raise AlgebraError(f"bad algebra designator {text!r}") from None
    if fam == "gl":
        return make_algebra(GL, m)
    if fam == "sp":
        return make_algebra(SP, m)
    if fam == "so":
        if m < 3:
            raise AlgebraError(f"so:{m} not supported (matrix size must be >= 3)")
        if m % 2:
            return make_algebra(SO_ODD, m // 2)
        return make_algebra(SO_EVEN, m // 2)
    raise AlgebraError(f"bad algebra designator {text!r}")


def canonicalize(spec: AlgebraSpec, pair):
    """Spec-level canonicalization returning a GeneratorRef (None if zero)."""
    i, j = pair
    sign, rep = spec.canonicalize_pair(i, j)
    if rep is None:
        return None
    return GeneratorRef(rep[0], rep[1], canonical=(rep == (i, j) and sign == 1), sign=sign)


def bracket_structure(spec: AlgebraSpec, a, b) -> dict:
    """[X[a], X[b]] as a map {canonical pair: integer coefficient}.

    gl:     [X_ij, X_kl] = d_kj X_il - d_il X_kj
    so/sp:  adds eps_i eps_j (d_{j,-l} X_{k,-i} - d_{k,-i} X_{-j,l}).
    """
    (i, j), (k, l) = a, b
    for idx in (i, j, k, l):
        spec.position(idx)
    acc: dict = {}

    def add(i2, j2, c):
        s, rep = spec.canonicalize_pair(i2, j2)
        if rep is None:
            return
        acc[rep] = acc.get(rep, 0) + c * s
        if acc[rep] == 0:
            del acc[rep]

    if k == j:
        add(i, l, 1)
    if i == l:
        add(k, j, -1)
    if not spec.is_gl:
        e = spec.eps(i) * spec.eps(j)
        if j == -l:
            add(k, -i, e)
        if k == -i:
            add(-j, l, -e)
    return acc


def dimension_and_index(spec: AlgebraSpec) -> tuple[int, int]:
    """(dim g, ind g); the index equals the rank for these families."""
    return spec.dim, spec.n


# ---------------------------------------------------------------------------
# numeric matrices over the index set


def zero_matrix(m: int):
    return [[Fraction(0)] * m for _ in range(m)]


def matrix_in_algebra(spec: AlgebraSpec, rows) -> bool:
    """Whether a numeric matrix lies in the family's matrix algebra."""
    if spec.is_gl:
        return True
    return _symmetry_holds(spec, rows, -1)


def _symmetry_holds(spec: AlgebraSpec, rows, s: int) -> bool:
    for i in spec.index_set:
        for j in spec.index_set:
            lhs = rows[spec.position(i)][spec.position(j)]
            rhs = rows[spec.position(-j)][spec.position(-i)]
            if lhs != s * spec.eps(i) * spec.eps(j) * rhs:
                return False
    return True


def symmetry_signs(spec: AlgebraSpec, rows):
    """The set of signs s with A_ij = s*eps_i*eps_j*A_{-j,-i} (so/sp only)."""
    if spec.is_gl:
        return set()
    return {s for s in (1, -1) if _symmetry_holds(spec, rows, s)}


def matrix_to_coordinates(spec: AlgebraSpec, rows) -> dict:
    """Coordinates of an algebra member over the canonical generators."""
    if not matrix_in_algebra(spec, rows):
        raise AlgebraError("matrix is not in the family's matrix algebra")
    coords = {}
    for pair in spec.canonical_generators:
        i, j = pair
        val = Fraction(rows[spec.position(i)][spec.position(j)])
        if not spec.is_gl and i == -j:
            val /= 2  # self-paired sp generator maps to 2*E[i,-i]
        if val:
            coords[pair] = val
    return coords


def coordinates_to_matrix(spec: AlgebraSpec, coords):
    rows = zero_matrix(spec.matrix_size)
    for pair, c in coords.items():
        mat = spec.defining_matrix(pair)
        for r in range(spec.matrix_size):
            for s in range(spec.matrix_size):
                if mat[r][s]:
                    rows[r][s] += c * mat[r][s]
    return rows
