import pytest

from extriples import diagrams
from extriples.specio import parse_triple


def test_ids_are_unique_and_complete():
    ids = [e.id for e in diagrams.ENTRIES]
    assert len(ids) == len(set(ids)) == 37
    assert {e.family for e in diagrams.ENTRIES} == {"T", "F", "O", "L", "A"}
    with pytest.raises(KeyError):
        diagrams.entry("Z1")


@pytest.mark.parametrize("v,t", [
    ("phi(1)@1 (x) phi(1)@2", 3),
    ("phi(1)@1 (x) phi(1)@2 + phi(1)@2", 3),
    ("phi(1)@1 + phi(1)@2", 1),
    ("phi(1)@1 + phi(1)@1 (x) phi(1)@2", 4),
])
def test_o_counts_vector_copies(v, t):
    x = parse_triple(f"G = so(8) * so(3)\nH = so(7)[spin -> 1] * so(3)[id -> 2]\nV = {v}\n")
    assert diagrams.o_count(x)["t"] == t
    assert (diagrams.match_o(x) is not None) == (t <= 3)


def test_t8_parameters_are_one_based():
    p = diagrams.match_t8(diagrams.entry("T8").instance())
    assert p == {"a": 1, "b": 2, "so3": 3, "check": [4]}


def test_t8_rejects_same_module_on_both_copies():
    x = parse_triple("G = so(8) * so(8) * so(3)\nH = so(8)[diag -> 1,2] * so(3)[id -> 3]\n"
                     "V = phi(1)@1 + phi(1)@2 (x) phi(1)@3\n")
    assert diagrams.match_t8(x) is None


def test_l5_and_a5_split_on_k():
    l5 = parse_triple("G = sl(4) * sl(3)\nH = sl(4)[id -> 1] * so(3)[std -> 2]\nV = phi(1)@1 (x) phi(1)@2\n")
    a5 = parse_triple("G = sl(3) * sl(3)\nH = sl(3)[id -> 1] * so(3)[std -> 2]\nV = phi(1)@1 (x) phi(1)@2\n")
    assert diagrams.match_l5(l5) and not diagrams.match_a5(l5)
    assert diagrams.match_a5(a5)["degrees"] == [3] and not diagrams.match_l5(a5)


def test_export_is_json_ready():
    d = diagrams.export_tables()
    assert d["schema"] == diagrams.SCHEMA
    a9 = next(e for e in d["entries"] if e["id"] == "A9")
    assert a9["degrees"] == [2, 4, 6]


def test_corpus_instances_cover_second_parameters():
    firsts = diagrams.corpus_instances(second=False)
    both = diagrams.corpus_instances(second=True)
    assert len(both) > len(firsts) == 37
