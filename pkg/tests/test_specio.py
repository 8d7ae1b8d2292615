import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extriples.groups import Factor, GroupSpec, ModuleSpec, ModuleSummand
from extriples.specio import (SpecSemanticError, SpecSyntaxError, format_document, format_group_module, format_triple,
                              load_spec, parse_spec, parse_triple)
from extriples.trees import INF


def test_parse_triple_fields():
    t = parse_triple("NAME = t5\nG = so(7) * so(7)\nH = so(7)[diag -> 1,2]\nV = 2 * phi(1)@1 + phi(3)@2\n")
    assert t.name == "t5"
    assert t.G.factors == (Factor("so", 7),) * 2
    assert t.embedding.maps[0].mode == "diagonal"
    assert t.V.terms == ((ModuleSummand(((1, 0, 0), None)), 2), (ModuleSummand((None, (0, 0, 1))), 1))


def test_tensor_parts_numbered_in_order():
    t = parse_triple("G = sl(6)\nH = sl(3)[tensor -> 1] * sl(2)[tensor -> 1]\nV = phi(1)@1\n")
    assert [m.part for m in t.embedding.maps] == [0, 1]


def test_comments_and_continuations():
    t = parse_triple("# a comment\nG = so(8)\nH = so(7)[spin -> 1]\nV = phi(1)@1\n  + phi(3)@1\n")
    assert [s.slots for s in t.V.summands] == [((1, 0, 0, 0),), ((0, 0, 1, 0),)]


def test_identity_and_trivial_h():
    t = parse_triple("G = so(8)\nH = G\nV = phi(1)@1\n")
    assert t.H == t.G
    t = parse_triple("G = torus(1)\nH = 1\nV = charge(1)\n")
    assert t.H.factors == () and t.H.torus_rank == 0


def test_tree_document():
    doc = parse_spec("TREE: 0:1 1:2 2:inf ; edges 0-1 1-2\n")
    assert doc.kind == "tree"
    assert doc.tree.weights == (1, 2, INF)


def test_group_document():
    doc = parse_spec("G = so(8) * so(3)\nV = phi(1)@1 (x) phi(1)@2\n")
    assert doc.kind == "group"
    assert doc.as_triple().H == doc.group


@pytest.mark.parametrize("text,line,col", [
    ("G = so(8)\nH = so(7)[spin -> 1]\nV = phi(1)@1 (x\n", 3, 14),
    ("G = foo(3)\nV = phi(1)@1\n", 1, 5),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(SpecSyntaxError) as exc:
        parse_spec(text)
    assert (exc.value.line, exc.value.col) == (line, col)


@pytest.mark.parametrize("text,match", [
    ("G = so(8)\nV = phi(9)@1\n", "out of range"),
    ("NAME = x\n", "missing G"),
    ("G = so(8)\nG = so(7)\nV = phi(1)@1\n", "twice"),
    ("G = so(8) * so(7)\nH = so(8)[diag -> 1,2]\nV = phi(1)@1\n", "same factor"),
])
def test_semantic_errors(text, match):
    with pytest.raises(SpecSemanticError, match=match):
        parse_spec(text)


def test_round_trip_of_every_corpus_file(corpus_dir):
    paths = sorted(corpus_dir.glob("*.triple"))
    assert len(paths) >= 40
    for p in paths:
        doc = load_spec(p)
        text = format_document(doc)
        assert parse_spec(text) == doc, p.name
        assert format_document(parse_spec(text)) == text


_FACTORS = [Factor("sl", 3), Factor("so", 8), Factor("so", 3), Factor("sp", 4), Factor("g2"), Factor("so", 7)]


@st.composite
def group_modules(draw):
    fs = draw(st.lists(st.sampled_from(_FACTORS), min_size=1, max_size=3))
    g = GroupSpec(tuple(fs))
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        slots = []
        for f in fs:
            if draw(st.booleans()):
                slots.append(f.fundamental(draw(st.integers(1, f.rank))))
            else:
                slots.append(None)
        if not any(slots):
            slots[0] = fs[0].defining_weight
        terms.append((ModuleSummand(tuple(slots)), draw(st.integers(1, 3))))
    return g, ModuleSpec(tuple(terms))


@given(group_modules())
@settings(max_examples=100, deadline=None)
def test_round_trip_random_group_modules(gv):
    g, v = gv
    doc = parse_spec(format_group_module(g, v, name="x"))
    assert doc.group == g
    assert doc.module == v


@given(group_modules())
@settings(max_examples=50, deadline=None)
def test_round_trip_random_identity_triples(gv):
    g, v = gv
    doc = parse_spec(format_group_module(g, v))
    t = doc.as_triple()
    assert parse_triple(format_triple(t)) == t
