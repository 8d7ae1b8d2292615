import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extriples import diagrams
from extriples.groups import Factor, GroupSpec, ModuleSpec, ModuleSummand
from extriples.oracle import (OracleError, bracket_closed, build_pair, generic_orbit_dim, generic_stabilizer_dim,
                              is_exceptional_oracle, preserves_form, rep_build, symmetric_invariant_forms,
                              torus_triviality_check)
from extriples.realize import RealizationError, clifford_spin, exterior_power, factor_basis, irrep_realizer
from extriples.specio import parse_spec, parse_triple


def copies(f: Factor, k: int):
    return GroupSpec((f,)), ModuleSpec(((ModuleSummand((f.defining_weight,)), k),))


def so_dim(n):
    return n * (n - 1) // 2 if n >= 2 else 0


# Stabilizer of k generic vectors, by hand: SO(n-k) in SO(n); in SL(n), matrices fixing k columns
@given(st.integers(3, 9), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_so_on_vectors(n, k):
    if n in (4,):
        return
    g, v = copies(Factor("so", n), k)
    assert generic_stabilizer_dim(rep_build(g, v)) == (so_dim(n - k) if k < n else 0)


@given(st.integers(2, 6), st.integers(1, 6))
@settings(max_examples=30, deadline=None)
def test_sl_on_vectors(n, k):
    g, v = copies(Factor("sl", n), k)
    want = n * (n - k) - 1 if k < n else 0
    assert generic_stabilizer_dim(rep_build(g, v)) == want


def test_known_prehomogeneous_spaces():
    # Spin7 on the spinor is transitive on the quadric complement: stabilizer G2
    d = parse_spec("G = so(7)\nV = phi(3)@1\n")
    r = rep_build(d.group, d.module)
    assert r.dim == 8 and generic_orbit_dim(r) == 7
    d = parse_spec("G = so(12)\nV = phi(6)@1\n")
    assert generic_stabilizer_dim(rep_build(d.group, d.module)) == 35


def test_seed_stability():
    t = diagrams.entry("T7").instance()
    g, h = build_pair(t)
    assert {generic_orbit_dim(g, seed=s) for s in range(4)} == {generic_orbit_dim(g)}
    assert {generic_orbit_dim(h, seed=s) for s in range(4)} == {generic_orbit_dim(h)}


def test_oracle_verdicts():
    o = is_exceptional_oracle(diagrams.entry("F2").instance())
    assert o.exceptional and o.codim == 1 and o.dim_V == 8
    o = is_exceptional_oracle(parse_triple("G = sl(4)\nH = sp(4)[phi1 -> 1]\nV = 2 * phi(1)@1\n"))
    assert not o.exceptional and (o.g_orbit_dim, o.h_orbit_dim) == (8, 7)
    assert o.as_dict()["codim"] == 0


def test_dim_cap():
    t = diagrams.entry("F3").instance()
    with pytest.raises((OracleError, RealizationError)):
        is_exceptional_oracle(t, dim_cap=8)


def test_torus_triviality():
    # scalars on C^3 (x) C^3 under SL3 x SL3 move the determinant
    d = parse_spec("G = sl(3) * sl(3) * torus(1)\nV = phi(1)@1 (x) phi(1)@2 (x) charge(1)\n")
    assert not torus_triviality_check(d.group, d.module)
    # scalars on C^3 under SL3: SL3 already has an open orbit
    d = parse_spec("G = sl(3) * torus(1)\nV = phi(1)@1 (x) charge(1)\n")
    assert torus_triviality_check(d.group, d.module)


@pytest.mark.parametrize("id_", ["F1", "F3", "F4", "F5", "F6", "T2", "T3", "O", "L2", "L5", "T9"])
def test_builds_are_lie_algebras_preserving_forms(id_):
    g, h = build_pair(diagrams.entry(id_).instance())
    assert bracket_closed(g) and bracket_closed(h)
    for form in symmetric_invariant_forms(g):
        assert preserves_form(h, form)


def test_realizers_are_homomorphisms():
    f = Factor("so", 7)
    spin = clifford_spin(7)
    basis = factor_basis(f)
    for x in basis[:6]:
        for y in basis[:6]:
            assert spin(x.bracket(y)) == spin(x).bracket(spin(y))
    wedge = exterior_power(5, 2)
    sl5 = factor_basis(Factor("sl", 5))
    for x in sl5[:5]:
        for y in sl5[-5:]:
            assert wedge(x.bracket(y)) == wedge(x).bracket(wedge(y))
    assert irrep_realizer(Factor("g2"), (1, 0)).dim == 7
