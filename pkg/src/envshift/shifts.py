"""Shift matrices: the constant matrices contracted against matrix-power elements.

A ShiftMatrix lives over an index subset of an algebra (the full index set by
default; a chain level's block otherwise).  Entries are exact rationals or
parameter polynomials.  For so/sp the symmetry condition

    A[i,j] = s * eps(i)*eps(j) * A[-j,-i],   s in {+1, -1}

is detected on construction; the in-algebra case is s = -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import SP, AlgebraError, AlgebraSpec
from .params import ParamPolynomial, coeff_is_zero


@dataclass(frozen=True)
class ShiftMatrix:
    spec: AlgebraSpec
    indices: tuple          # algebra indices the matrix is defined over, in order
    rows: tuple             # rows[r][c] aligned with ``indices``

    def __post_init__(self):
        m = len(self.indices)
        if len(self.rows) != m or any(len(r) != m for r in self.rows):
            raise AlgebraError("shift matrix shape does not match its index set")
        for idx in self.indices:
            self.spec.position(idx)

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def is_numeric(self) -> bool:
        return all(not isinstance(x, ParamPolynomial) for row in self.rows for x in row)

    def entry(self, i: int, j: int):
        return self.rows[self.indices.index(i)][self.indices.index(j)]

    def numeric_rows(self):
        if not self.is_numeric:
            raise AlgebraError("operation requires a numeric shift matrix")
        return [[Fraction(x) for x in row] for row in self.rows]

    def symmetry_signs(self) -> set:
        """Signs s satisfied entrywise (so/sp; empty set for gl or neither sign)."""
        if self.spec.is_gl:
            return set()
        idx = {v: p for p, v in enumerate(self.indices)}
        out = set()
        for s in (1, -1):
            ok = True
            for i in self.indices:
                for j in self.indices:
                    if -j not in idx or -i not in idx:
                        ok = False
                        break
                    lhs = self.rows[idx[i]][idx[j]]
                    rhs = self.rows[idx[-j]][idx[-i]]
                    e = self.spec.eps(i) * self.spec.eps(j)
                    diff = lhs - (s * e) * rhs
                    if not coeff_is_zero(diff):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.add(s)
        return out

    def rank(self) -> int:
        return linalg.rank(self.numeric_rows())

    def is_semisimple(self) -> bool:
        return linalg.is_semisimple(self.numeric_rows())

    def describe(self) -> str:
        if all(
            coeff_is_zero(self.rows[r][c])
            for r in range(self.size)
            for c in range(self.size)
            if r != c
        ):
            kind = "diag" if self.is_numeric else "sym-diag"
            return kind + ":" + ",".join(str(self.rows[r][r]) for r in range(self.size))
        return "matrix:" + ";".join(
            ",".join(str(x) for x in row) for row in self.rows
        )


def _parse_entry(text: str):
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        pass
    if text and (text[0].isalpha() or text[0] == "_"):
        return ParamPolynomial.variable(text)
    raise AlgebraError(f"bad shift matrix entry {text!r}")


def shift_from_designator(spec: AlgebraSpec, text: str, indices=None, declared_sign=None):
    """Build a ShiftMatrix from ``diag:...``, ``sym-diag:...`` or ``matrix:r;r;...``."""
    indices = tuple(indices) if indices is not None else spec.index_set
    m = len(indices)
    kind, _, body = text.partition(":")
    if kind in ("diag", "sym-diag"):
        entries = [_parse_entry(x) for x in body.split(",")]
        if len(entries) != m:
            raise AlgebraError(
                f"diagonal designator has {len(entries)} entries, index set has {m}"
            )
        if kind == "diag" and any(isinstance(e, ParamPolynomial) for e in entries):
            raise AlgebraError("diag: entries must be numeric; use sym-diag: for parameters")
        rows = tuple(
            tuple(entries[r] if r == c else Fraction(0) for c in range(m)) for r in range(m)
        )
    elif kind == "matrix":
        rows = tuple(
            tuple(_parse_entry(x) for x in row.split(",")) for row in body.split(";")
        )
    else:
        raise AlgebraError(f"bad shift matrix designator {text!r}")
    return make_shift(spec, rows, indices=indices, declared_sign=declared_sign)


def shift_from_rows(spec: AlgebraSpec, rows, indices=None, declared_sign=None):
    indices = tuple(indices) if indices is not None else spec.index_set
    parsed = tuple(
        tuple(x if isinstance(x, ParamPolynomial) else Fraction(x) for x in row)
        for row in rows
    )
    return make_shift(spec, parsed, indices=indices, declared_sign=declared_sign)


def canonical_shift(spec: AlgebraSpec, sign: int) -> ShiftMatrix:
    """A rank-2 semisimple diagonal shift with the requested symmetry sign.

    sign -1 lies in the algebra (E[n,n] - E[-n,-n]); sign +1 is its
    involution-odd partner (E[n,n] + E[-n,-n]).  gl gets diag(1, 2, 0, ...).
    """
    m = spec.matrix_size
    rows = [[Fraction(0)] * m for _ in range(m)]
    if spec.is_gl:
        rows[0][0] = Fraction(1)
        rows[1][1] = Fraction(2)
        return make_shift(spec, rows, spec.index_set)
    top = spec.position(spec.n)
    bot = spec.position(-spec.n)
    rows[top][top] = Fraction(1)
    rows[bot][bot] = Fraction(sign)
    return make_shift(spec, rows, spec.index_set, declared_sign=sign)


def symbolic_shift(spec: AlgebraSpec, sign=None, prefix="a") -> ShiftMatrix:
    """A fully symbolic shift matrix: one parameter per free entry.

    sign None leaves every entry free (for gl, or as an unconstrained so/sp
    matrix); sign +-1 parameterizes the subspace satisfying the symmetry
    condition, so a vanishing result for this matrix proves the identity for
    every numeric matrix of that sign at once.
    """
    m = spec.matrix_size
    rows = [[ParamPolynomial.const(0) for _ in range(m)] for _ in range(m)]
    if sign is None:
        for r in range(m):
            for c in range(m):
                rows[r][c] = ParamPolynomial.variable(f"{prefix}{r}_{c}")
        return make_shift(spec, rows, spec.index_set)
    if spec.is_gl:
        raise AlgebraError("symmetry signs only apply to so/sp")
    count = 0
    seen = set()
    for i in spec.index_set:
        for j in spec.index_set:
            if (i, j) in seen:
                continue
            seen.add((i, j))
            if (i, j) == (-j, -i):
                # self-paired entry: forced to zero unless the sign fixes it
                if sign * spec.eps(i) * spec.eps(j) == 1:
                    rows[spec.position(i)][spec.position(j)] = ParamPolynomial.variable(
                        f"{prefix}{count}"
                    )
                    count += 1
                continue
            seen.add((-j, -i))
            p = ParamPolynomial.variable(f"{prefix}{count}")
            count += 1
            rows[spec.position(i)][spec.position(j)] = p
            rows[spec.position(-j)][spec.position(-i)] = p * (
                sign * spec.eps(i) * spec.eps(j)
            )
    return make_shift(spec, rows, spec.index_set, declared_sign=sign)


def violating_shift(spec: AlgebraSpec) -> ShiftMatrix:
    """A shift matrix violating both symmetry signs, with a non-commuting
    shifted family at low powers (negative control).

    No such matrix exists for sp(1): every 2x2 matrix is an algebra member
    plus a multiple of the identity, and the identity only contributes
    central elements.
    """
    if spec.is_gl:
        raise AlgebraError("gl shifts carry no symmetry condition")
    if spec.family == SP and spec.n == 1:
        raise AlgebraError("sp(1) admits no sign-violating shift with effect")
    m = spec.matrix_size
    rows = [[Fraction(0)] * m for _ in range(m)]
    if spec.family == SP:
        rows[spec.position(-spec.n)][spec.position(-(spec.n - 1))] = Fraction(1)
    elif 0 in spec.index_set:
        rows[spec.position(-spec.n)][spec.position(0)] = Fraction(1)
    else:
        rows[spec.position(-spec.n)][spec.position(spec.n)] = Fraction(1)
        rows[spec.position(-spec.n)][spec.position(-spec.n)] = Fraction(1)
    mat = make_shift(spec, rows, spec.index_set)
    if mat.symmetry_signs():
        raise AlgebraError("violating-shift construction failed")
    return mat


def make_shift(spec, rows, indices, declared_sign=None):
    mat = ShiftMatrix(spec, tuple(indices), tuple(tuple(r) for r in rows))
    if declared_sign is not None:
        if spec.is_gl:
            raise AlgebraError("symmetry sign declarations only apply to so/sp")
        if declared_sign not in mat.symmetry_signs():
            raise AlgebraError(
                f"shift matrix violates the declared symmetry sign {declared_sign:+d}"
            )
    return mat
