"""Descending subalgebra chains and the commutative families they generate.

A chain starts at the full algebra and steps down by k in {1, 2}. Levels are
realized as index blocks: gl levels take the last i indices, so/sp levels the
symmetric inner block.  Every level contributes its Casimir elements (trace
powers; even ones for so/sp), every size-2 step (and every sp level of rank
>= 2) contributes shifted generators for its attached rank-2 semisimple shift
matrix, and the terminal abelian level contributes its linear generator.
Pairwise commutativity of the emitted family is checked, never assumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import GL, SP, AlgebraError, AlgebraSpec, parse_algebra
from .elements import casimir, matrix_power_element, shift_generator
from .pbw import NCPolynomial, commutator
from .shifts import ShiftMatrix, shift_from_designator, shift_from_rows


@dataclass(frozen=True)
class ChainStep:
    k: int
    shift: ShiftMatrix | None = None


@dataclass(frozen=True)
class ChainSpec:
    algebra: AlgebraSpec
    steps: tuple


@dataclass(frozen=True)
class FamilyGenerator:
    label: str
    provenance: str
    poly: NCPolynomial


@dataclass(frozen=True)
class CommutativeFamily:
    name: str
    algebra: AlgebraSpec
    generators: tuple

    @property
    def labels(self):
        return [g.label for g in self.generators]

    @property
    def polys(self):
        return [g.poly for g in self.generators]


# ---------------------------------------------------------------------------
# level bookkeeping


def _level_sizes(spec: AlgebraSpec, ks):
    """Matrix sizes of the chain levels, starting at the full algebra."""
    sizes = [spec.matrix_size]
    for k in ks:
        sizes.append(sizes[-1] - (2 if spec.family == SP else k))
    return sizes


def level_indices(spec: AlgebraSpec, size: int):
    """The index block realizing the chain level of the given matrix size."""
    if size < 0 or size > spec.matrix_size:
        raise AlgebraError(f"level size {size} out of range")
    if spec.family == GL:
        return spec.index_set[spec.matrix_size - size :]
    if size % 2 == 1 and 0 not in spec.index_set:
        raise AlgebraError("odd so level needs the odd-family index 0")
    half = size // 2
    return tuple(
        i for i in spec.index_set if -half <= i <= half and (i != 0 or size % 2 == 1)
    )


def _level_name(spec: AlgebraSpec, size: int) -> str:
    if spec.family == GL:
        return f"gl({size})"
    if spec.family == SP:
        return f"sp({size // 2})"
    return f"so({size})"


def _auto_shift(spec: AlgebraSpec, idx) -> ShiftMatrix:
    """Canonical rank-2 semisimple shift on a level block, fixing the deeper block."""
    m = len(idx)
    rows = [[Fraction(0)] * m for _ in range(m)]
    if spec.family == GL:
        rows[0][0] = Fraction(1)
        rows[1][1] = Fraction(2)
    else:
        top = max(idx)
        rows[idx.index(top)][idx.index(top)] = Fraction(1)
        rows[idx.index(-top)][idx.index(-top)] = Fraction(-1)
    return shift_from_rows(spec, rows, indices=idx)


def make_chain(spec: AlgebraSpec, steps) -> ChainSpec:
    """Validate and assemble a chain; steps are (k, shift-or-None-or-'auto')."""
    parsed = []
    sizes = [spec.matrix_size]
    for k, shift in steps:
        if spec.family == SP:
            if k != 1:
                raise AlgebraError("sp chains step down one rank at a time")
            new = sizes[-1] - 2
        else:
            if k not in (1, 2):
                raise AlgebraError(f"invalid step size {k}")
            new = sizes[-1] - k
        if new < 0:
            raise AlgebraError("chain steps below the trivial algebra")
        level_idx = level_indices(spec, sizes[-1])
        next_idx = level_indices(spec, new)  # raises for unrealizable levels
        if not set(next_idx) <= set(level_idx):
            raise AlgebraError(
                f"level block of size {new} does not embed in its parent block"
            )
        wants_shift = (spec.family == SP and sizes[-1] >= 4) or (
            spec.family != SP and k == 2
        )
        if shift == "auto":
            shift = _auto_shift(spec, level_idx) if wants_shift else None
        if wants_shift and shift is None:
            raise AlgebraError(
                f"step from {_level_name(spec, sizes[-1])} needs a shift matrix"
            )
        if not wants_shift and shift is not None:
            raise AlgebraError("only size-2 steps (or sp levels of rank >= 2) carry shifts")
        if shift is not None:
            _validate_chain_shift(spec, shift, level_idx)
        sizes.append(new)
        parsed.append(ChainStep(k, shift))
    terminal_ok = (spec.family == GL and sizes[-1] in (0, 1)) or (
        spec.family != GL and sizes[-1] == 2
    )
    if not terminal_ok:
        raise AlgebraError(
            f"chain must terminate at the abelian level, ended at size {sizes[-1]}"
        )
    return ChainSpec(spec, tuple(parsed))


def _validate_chain_shift(spec, shift: ShiftMatrix, level_idx):
    if tuple(shift.indices) != tuple(level_idx):
        raise AlgebraError("shift matrix block does not match its chain level")
    if not shift.is_numeric:
        raise AlgebraError("chain shift matrices must be numeric")
    if shift.rank() != 2:
        raise AlgebraError("chain shift matrices must have matrix rank exactly 2")
    if not shift.is_semisimple():
        raise AlgebraError("chain shift matrices must be semisimple")
    if not spec.is_gl and -1 not in shift.symmetry_signs():
        raise AlgebraError("so/sp chain shifts must lie in the algebra (sign -1)")


# ---------------------------------------------------------------------------
# generator emission


def _level_casimirs(spec, size, idx):
    name = _level_name(spec, size)
    out = []
    if spec.family == GL:
        if size == 1:
            i = idx[0]
            out.append(
                FamilyGenerator(
                    f"X[{i},{i}]", f"abelian@{name}", matrix_power_element(spec, 1, i, i, idx)
                )
            )
        else:
            for M in range(1, size + 1):
                out.append(
                    FamilyGenerator(f"tr(X^{M})@{name}", f"casimir@{name}", casimir(spec, M, idx))
                )
        return out
    if spec.family != SP and size == 2:
        # terminal so(2): the single linear generator
        i = max(idx)
        out.append(
            FamilyGenerator(
                f"X[{i},{i}]", f"abelian@{name}", matrix_power_element(spec, 1, i, i, idx)
            )
        )
        return out
    # so/sp levels: even trace powers, one per unit of the level's rank
    for M in range(2, 2 * (size // 2) + 1, 2):
        out.append(
            FamilyGenerator(f"tr(X^{M})@{name}", f"casimir@{name}", casimir(spec, M, idx))
        )
    return out


def _shift_powers(spec, size):
    if spec.family == GL:
        return range(1, size)
    # so/sp shifted generators: odd powers only (even ones vanish classically)
    return range(1, size, 2)


def chain_generators(chain: ChainSpec) -> CommutativeFamily:
    spec = chain.algebra
    sizes = _level_sizes(spec, [s.k for s in chain.steps])
    gens = []
    for lvl, size in enumerate(sizes):
        if size == 0:
            continue
        idx = level_indices(spec, size)
        gens.extend(_level_casimirs(spec, size, idx))
        if lvl < len(chain.steps):
            shift = chain.steps[lvl].shift
            if shift is not None:
                name = _level_name(spec, size)
                for N in _shift_powers(spec, size):
                    gens.append(
                        FamilyGenerator(
                            f"tr(A.X^{N})@{name}",
                            f"shift@{name}",
                            shift_generator(spec, shift, N),
                        )
                    )
    if spec.family == SP:
        # the torus below sp(1): the terminal abelian generator X[1,1]
        gens.append(
            FamilyGenerator(
                "X[1,1]", "abelian@gl(1)", matrix_power_element(spec, 1, 1, 1, (1,))
            )
        )
    name = spec.designator + " chain " + "-".join(str(s.k) for s in chain.steps)
    return CommutativeFamily(name, spec, tuple(gens))


def commutativity_failures(family: CommutativeFamily):
    """All non-commuting pairs with their residuals (empty list = commutative)."""
    out = []
    gens = family.generators
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            r = commutator(gens[a].poly, gens[b].poly)
            if not r.is_zero:
                out.append((gens[a].label, gens[b].label, r))
    return out


# ---------------------------------------------------------------------------
# chain files: {"algebra": "gl:4", "steps": [{"k": 2, "shift": "diag:1,2,0,0"}, ...]}


def chain_from_dict(data: dict) -> ChainSpec:
    try:
        spec = parse_algebra(data["algebra"])
        raw_steps = data["steps"]
    except (KeyError, TypeError):
        raise AlgebraError("chain file needs 'algebra' and 'steps'") from None
    steps = []
    sizes = [spec.matrix_size]
    for entry in raw_steps:
        if not isinstance(entry, dict) or "k" not in entry:
            raise AlgebraError("each chain step needs a step size 'k'")
        k = entry["k"]
        if not isinstance(k, int):
            raise AlgebraError("step size must be an integer")
        shift = entry.get("shift")
        if shift is not None and shift != "auto":
            idx = level_indices(spec, sizes[-1])
            if isinstance(shift, str):
                shift = shift_from_designator(spec, shift, indices=idx)
            elif isinstance(shift, list):
                shift = shift_from_rows(spec, [[_entry_to_frac(x) for x in row] for row in shift], indices=idx)
            else:
                raise AlgebraError("shift must be a designator string or row lists")
        step_drop = 2 if spec.family == SP else k
        sizes.append(sizes[-1] - step_drop)
        steps.append((k, shift))
    return make_chain(spec, steps)


def _entry_to_frac(x):
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return Fraction(int(num), int(den)) if den else Fraction(int(num))
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise AlgebraError(f"bad matrix entry {x!r}")


def load_chain_file(path) -> ChainSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"chain file is not valid JSON: {exc}") from None
    return chain_from_dict(data)


def default_chain(spec: AlgebraSpec) -> ChainSpec:
    """A canonical maximal chain with auto shifts (gl/so: all-2 steps; sp: all-1)."""
    steps = []
    size = spec.matrix_size
    if spec.family == SP:
        while size > 2:
            steps.append((1, "auto"))
            size -= 2
    elif spec.family == GL:
        while size > 1:
            k = 2 if size >= 2 else 1
            steps.append((k, "auto"))
            size -= k
    else:
        while size > 2:
            k = 2 if size - 2 >= 2 else 1
            steps.append((k, "auto"))
            size -= k
    return make_chain(spec, steps)
