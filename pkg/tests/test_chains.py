import json

import pytest

from envshift.algebra import GL, SO_EVEN, SO_ODD, SP, AlgebraError, make_algebra, parse_algebra
from envshift.chains import (
    chain_from_dict,
    chain_generators,
    commutativity_failures,
    default_chain,
    level_indices,
    load_chain_file,
    make_chain,
)

GL3 = make_algebra(GL, 3)
GL4 = make_algebra(GL, 4)
SO4 = make_algebra(SO_EVEN, 2)
SO5 = make_algebra(SO_ODD, 2)
SP2 = make_algebra(SP, 2)


def test_level_indices():
    assert level_indices(GL4, 2) == (3, 4)
    assert level_indices(SO5, 4) == (-2, -1, 1, 2)
    assert level_indices(SO5, 3) == (-1, 0, 1)
    assert level_indices(SP2, 2) == (-1, 1)
    with pytest.raises(AlgebraError):
        level_indices(SO4, 3)  # no index 0 in the even family


def test_gl3_chain_family_contents():
    fam = chain_generators(make_chain(GL3, [(2, "auto")]))
    assert fam.labels == [
        "tr(X^1)@gl(3)",
        "tr(X^2)@gl(3)",
        "tr(X^3)@gl(3)",
        "X[3,3]",
        "tr(A.X^1)@gl(3)",
        "tr(A.X^2)@gl(3)",
    ] or len(fam.generators) == 6
    assert len(fam.generators) == 6
    provs = {g.provenance for g in fam.generators}
    assert "casimir@gl(3)" in provs and "shift@gl(3)" in provs and "abelian@gl(1)" in provs


def test_chain_counts():
    assert len(chain_generators(make_chain(GL4, [(2, "auto"), (2, "auto")])).generators) == 10
    assert len(chain_generators(make_chain(SO4, [(2, "auto")])).generators) == 5
    assert len(chain_generators(make_chain(SO5, [(2, "auto"), (1, None)])).generators) == 6
    assert len(chain_generators(make_chain(SP2, [(1, "auto")])).generators) == 6


def test_small_chains_commute():
    for spec, steps in [
        (GL3, [(2, "auto")]),
        (SO4, [(2, "auto")]),
        (SO5, [(2, "auto"), (1, None)]),
        (SP2, [(1, "auto")]),
    ]:
        fam = chain_generators(make_chain(spec, steps))
        assert commutativity_failures(fam) == []


def test_invalid_chains():
    with pytest.raises(AlgebraError):
        make_chain(GL3, [(3, None)])
    with pytest.raises(AlgebraError):
        make_chain(GL3, [(2, None)])  # size-2 step needs a shift
    with pytest.raises(AlgebraError):
        make_chain(SO5, [(1, None), (1, None)])  # so(4) > so(3) not realizable
    with pytest.raises(AlgebraError):
        make_chain(SP2, [(2, "auto")])  # sp steps one rank at a time
    with pytest.raises(AlgebraError):
        make_chain(GL4, [(2, "auto")])  # terminates at gl(2), not abelian


def test_chain_shift_validation():
    # wrong rank
    with pytest.raises(AlgebraError):
        make_chain(GL3, [(2, _designator(GL3, "diag:1,0,0"))])
    # non-semisimple numeric shift
    from envshift.shifts import shift_from_designator

    nilp = shift_from_designator(GL3, "matrix:0,1,0;0,0,0;0,0,0")
    with pytest.raises(AlgebraError):
        make_chain(GL3, [(2, nilp)])
    # so shift must lie in the algebra (sign -1)
    plus = shift_from_designator(SO4, "diag:1,0,0,1")
    with pytest.raises(AlgebraError):
        make_chain(SO4, [(2, plus)])
    # symbolic shifts are rejected in chains
    sym = shift_from_designator(GL3, "sym-diag:a1,a2,0")
    with pytest.raises(AlgebraError):
        make_chain(GL3, [(2, sym)])


def _designator(spec, text):
    from envshift.shifts import shift_from_designator

    return shift_from_designator(spec, text)


def test_chain_from_dict_and_file(tmp_path):
    data = {"algebra": "gl:3", "steps": [{"k": 2, "shift": "diag:1,2,0"}]}
    chain = chain_from_dict(data)
    assert chain.algebra == GL3 and chain.steps[0].k == 2
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(data))
    chain2 = load_chain_file(str(path))
    assert chain2.algebra == GL3
    # row-list shifts with rational strings parse too
    data = {
        "algebra": "gl:3",
        "steps": [{"k": 2, "shift": [["1", 0, 0], [0, "4/2", 0], [0, 0, 0]]}],
    }
    chain3 = chain_from_dict(data)
    fam = chain_generators(chain3)
    assert len(fam.generators) == 6


def test_chain_file_errors(tmp_path):
    with pytest.raises(AlgebraError):
        chain_from_dict({"steps": []})
    with pytest.raises(AlgebraError):
        chain_from_dict({"algebra": "gl:3", "steps": [{"nope": 1}]})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(AlgebraError):
        load_chain_file(str(bad))


def test_default_chains_cover_all_families():
    for name, count in (("gl:3", 6), ("gl:4", 10), ("so:4", 5), ("so:5", 6), ("sp:2", 6)):
        fam = chain_generators(default_chain(parse_algebra(name)))
        assert len(fam.generators) == count, name


def test_auto_shift_stabilizers_contain_next_level():
    # each canonical rank-2 step shift commutes with the whole deeper block,
    # so the deeper subalgebra sits inside the shift's stabilizer
    from fractions import Fraction

    from envshift import linalg
    from envshift.chains import level_indices

    for name in ("gl:3", "gl:4", "so:4", "so:5", "sp:2"):
        spec = parse_algebra(name)
        chain = default_chain(spec)
        size = spec.matrix_size
        for step in chain.steps:
            drop = 2 if spec.family == SP else step.k
            nxt = size - drop
            if step.shift is not None and nxt > 0:
                idx = level_indices(spec, size)
                sub = level_indices(spec, nxt)
                A = [[Fraction(x) for x in row] for row in step.shift.rows]
                for pair in spec.canonical_generators:
                    i, j = pair
                    if i not in sub or j not in sub:
                        continue
                    dm = spec.defining_matrix(pair)
                    B = [
                        [dm[spec.position(a)][spec.position(b)] for b in idx]
                        for a in idx
                    ]
                    assert linalg.is_zero_matrix(linalg.mat_commutator(A, B)), (name, pair)
            size = nxt
