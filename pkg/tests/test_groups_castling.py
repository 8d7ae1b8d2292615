import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extriples import diagrams
from extriples.castling import (CastlingError, apply_castle, canonical_key, castle_reduce,
                                congruent, inverse_move, isomorphic, module_total_dim, move_for)
from extriples.groups import (Factor, ModelError, decompose_components, direct_sum, h_structure, is_locally_trivial,
                              is_orthogonal_module, is_strongly_faithful, is_trivial_triple, module_dim, parse_factor)
from extriples.oracle import generic_stabilizer_dim, rep_build
from extriples.specio import SpecSemanticError, parse_spec, parse_triple


def gv(text):
    d = parse_spec(text)
    return d.group, d.module


def test_factor_types_and_low_rank_coincidences():
    assert Factor("so", 3).rank == 1
    assert Factor("so", 3).defining_weight == (2,)
    assert Factor("sp", 2).type == Factor("sl", 2).type
    assert Factor("so", 6).type.family == "D"
    assert Factor("e7").defining_dim == 56
    with pytest.raises(ModelError):
        Factor("so", 4)
    with pytest.raises(ModelError):
        Factor("sp", 5)
    with pytest.raises(ModelError):
        Factor("h", 3)


def test_parse_factor():
    assert parse_factor(" SO(8) ") == Factor("so", 8)
    assert parse_factor("g2") == Factor("g2")


def test_matrix_only_skips_validation():
    f = Factor.matrix_only("so", 4)
    assert f.defining_dim == 4


def test_module_dimensions():
    g, v = gv("G = so(8) * so(3)\nV = 2 * phi(1)@1 (x) phi(1)@2 + phi(4)@1\n")
    assert module_dim(g, v) == 56


def test_orthogonality():
    assert is_orthogonal_module(*gv("G = so(7)\nV = phi(3)@1\n"))
    assert not is_orthogonal_module(*gv("G = sl(4)\nV = phi(1)@1\n"))
    assert is_orthogonal_module(*gv("G = sl(4)\nV = phi(1)@1 + phi(3)@1\n"))
    # symplectic (x) symplectic is orthogonal
    assert is_orthogonal_module(*gv("G = sp(4) * sl(2)\nV = phi(1)@1 (x) phi(1)@2\n"))
    assert not is_orthogonal_module(*gv("G = so(12)\nV = phi(6)@1\n"))


def test_components_and_structure():
    t = diagrams.entry("T8").instance()
    assert len(decompose_components(t)) == 1
    s = direct_sum(diagrams.entry("F1").instance(), diagrams.entry("L1").instance())
    assert len(decompose_components(s)) == 2
    assert h_structure(diagrams.entry("T1").instance())[0] == "diagonal"
    assert h_structure(diagrams.entry("F5").instance())[0] == "straight"


def test_locally_trivial_and_strongly_faithful():
    assert is_locally_trivial(diagrams.entry("T5").instance())
    assert is_strongly_faithful(diagrams.entry("F5").instance())
    assert not is_strongly_faithful(diagrams.entry("O").instance())
    t = parse_triple("G = so(7) * so(7)\nH = so(7)[diag -> 1,2]\nV = phi(1)@1 (x) phi(1)@2\n")
    assert not is_locally_trivial(t)


def test_trivial_triple():
    t = parse_triple("G = so(8)\nH = G\nV = phi(1)@1\n")
    assert is_trivial_triple(t)
    assert not is_trivial_triple(diagrams.entry("F2").instance())


def test_validation_rejects_bad_embeddings():
    with pytest.raises(SpecSemanticError, match="same factor"):
        parse_triple("G = so(8) * so(7)\nH = so(8)[diag -> 1,2]\nV = phi(1)@1\n")
    with pytest.raises(SpecSemanticError):
        parse_triple("G = so(8)\nH = so(7)[id -> 1]\nV = phi(1)@1\n")


# ----------------------------------------------------------------------
# castling


def test_castle_sl3_sl2_to_dual():
    x = gv("G = sl(3) * sl(2)\nV = phi(1)@1 (x) phi(1)@2\n")
    m = move_for(x, 0, 1)
    assert (m.dim_u, m.dim_w, m.dim_w_check) == (3, 2, 1)
    g, v = apply_castle(x, m)
    assert [str(f) for f in g.factors] == ["sl(3)"]
    assert v.terms[0][0].slots == ((0, 1),)
    assert castle_reduce(x) == (g, v) or congruent(castle_reduce(x), (g, v))


def test_castle_round_trip_triple():
    t = parse_triple("G = sl(6) * sl(5)\n"
                     "H = sl(3)[tensor -> 1] * sl(2)[tensor -> 1] * sl(5)[id -> 2]\n"
                     "V = phi(1)@1 (x) phi(1)@2\n")
    m = move_for(t, 0, 1)
    u = apply_castle(t, m)
    assert len(u.G.factors) == 1
    back = apply_castle(u, inverse_move(t, m, u))
    assert isomorphic(back, t)


def test_castle_rejects():
    x = gv("G = so(8) * sl(3)\nV = phi(1)@1 (x) phi(1)@2\n")
    with pytest.raises(CastlingError):
        move_for(x, 0, 0)
    with pytest.raises(CastlingError):
        move_for(gv("G = sl(3)\nV = 2 * phi(1)@1\n"), 0, 0)
    # SO3 sits in SL3 through a non-identity map, so the SL3 factor cannot be castled
    t = parse_triple("G = sl(4) * sl(3)\nH = sl(4)[id -> 1] * so(3)[std -> 2]\nV = phi(1)@1 (x) phi(1)@2\n")
    with pytest.raises(CastlingError, match="both H and G"):
        move_for(t, 0, 1)


@given(st.integers(2, 5), st.integers(2, 4), st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_castling_preserves_stabilizer_dimension(a, b, w):
    # SL(a) x SL(b) x SL(w) on C^a (x) C^b (x) C^w; castle the SL(w) factor when possible
    if w >= a * b or w < 2 and a * b - w < 2:
        return
    text = f"G = sl({a}) * sl({b})" + (f" * sl({w})" if w >= 2 else "") + "\n"
    text += "V = phi(1)@1 (x) phi(1)@2" + (" (x) phi(1)@3" if w >= 2 else "") + "\n"
    x = gv(text)
    move = move_for(x, 0, 2 if w >= 2 else None)
    y = apply_castle(x, move)
    if module_total_dim(x) > 120 or module_total_dim(y) > 120:
        return
    assert generic_stabilizer_dim(rep_build(*x)) == generic_stabilizer_dim(rep_build(*y))
    assert congruent(apply_castle(y, inverse_move(x, move, y)), x)


# ----------------------------------------------------------------------
# canonical keys


def test_canonical_key_ignores_factor_order_and_twists():
    a = gv("G = so(7) * sl(3)\nV = phi(1)@1 (x) phi(1)@2\n")
    b = gv("G = sl(3) * so(7)\nV = phi(2)@1 (x) phi(1)@2\n")
    assert canonical_key(a) == canonical_key(b)
    c = gv("G = sl(3) * so(7)\nV = phi(2)@1 (x) phi(3)@2\n")
    assert canonical_key(a) != canonical_key(c)


def test_canonical_key_sp2_is_sl2():
    a = gv("G = sp(2) * sl(4)\nV = phi(1)@1 (x) phi(1)@2\n")
    b = gv("G = sl(2) * sl(4)\nV = phi(1)@1 (x) phi(1)@2\n")
    assert canonical_key(a) == canonical_key(b)


def test_canonical_key_triality_for_diagonal_pair():
    a = diagrams.entry("T3").instance()
    b = parse_triple("G = so(8) * so(8)\nH = so(8)[diag -> 1,2]\nV = phi(4)@1 + phi(1)@2\n")
    assert diagrams.match_entry(diagrams.entry("T3"), b) is not None
    assert diagrams.match_entry(diagrams.entry("T3"), a) is not None
