import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from commvar import rootsys, strata
from commvar.classifier import ParabolicSpec, classify_borel_irreducible
from commvar.fforacle import fq
from commvar.fforacle.fitting import fit_degree
from commvar.modtables import TABULATED
from commvar.rootsys import ReductiveShape, parse_shape, parse_type
from commvar.strata import StratumDatum, StratumError


def spec(text, *I):
    shape = parse_shape(text)
    return ParabolicSpec(shape, tuple(frozenset(s) for s in I) if I else ())


def test_cprime_examples():
    gl3 = spec("A2+T1")
    assert strata.cprime_dim(strata.torus_stratum(gl3)) == 6
    a2 = spec("A2")
    d = StratumDatum(a2, (frozenset({1, 2}),), 3, 3)
    assert strata.cprime_dim(d) == (2 - 2) + a2.dim + 0


def test_stratum_examples():
    for name in ("A1", "B3", "E6", "A3+T1"):
        s = spec(name)
        assert strata.stratum_dim(strata.torus_stratum(s)) == s.dim + s.shape.rank
    s = spec("A3")
    d = StratumDatum(s, (frozenset({2}),), 1, 1)
    assert strata.stratum_dim(d) == s.dim + 3 - 1
    b7 = spec("B7")
    d = StratumDatum(b7, (frozenset(range(1, 8)),), 7, 0)
    assert strata.stratum_dim(d) == b7.dim + 7
    assert strata.stratum_dim(d) >= strata.component_floor(b7)


def test_floor_examples():
    assert strata.component_floor(spec("A3+T1")) == 14
    assert strata.component_floor(spec("A2")) == 7
    p = spec("A2", {1})
    assert p.dim == 6 and strata.component_floor(p) == 8


def test_torus_stratum_is_floor_everywhere():
    for t in sorted(TABULATED):
        for I in ([], [1], list(range(1, t.rank + 1)), list(range(1, t.rank + 1, 2))):
            s = ParabolicSpec(ReductiveShape((t,)), (frozenset(I),))
            assert strata.stratum_dim(strata.torus_stratum(s)) == strata.component_floor(s)


@st.composite
def data(draw):
    comps = draw(st.lists(st.sampled_from(rootsys.catalogue(8)), min_size=1, max_size=3))
    shape = ReductiveShape(tuple(comps), draw(st.integers(0, 3)))
    I = tuple(frozenset(draw(st.sets(st.integers(1, t.rank)))) for t in shape.components)
    J = tuple(frozenset(draw(st.sets(st.integers(1, t.rank)))) for t in shape.components)
    s = ParabolicSpec(shape, I)
    probe = StratumDatum(s, J, 0, 0)
    sheet = draw(st.integers(0, probe.dim_p_cap_h))
    return StratumDatum(s, J, sheet, draw(st.integers(0, sheet)))


@settings(max_examples=300)
@given(data())
def test_affine_relation(d):
    assert strata.stratum_dim(d) - strata.cprime_dim(d) == d.ambient.dim - d.dim_p_cap_h


@settings(max_examples=300)
@given(data(), st.integers(0, 40))
def test_upper_bound(d, slack):
    gap = d.sheet_dim - d.orbit_dim
    assert strata.stratum_dim(d) <= strata.stratum_upper_bound(d, gap + slack)
    assert strata.stratum_upper_bound(d, gap) == strata.stratum_dim(d)
    assert strata.stratum_upper_bound(d, slack) == strata.component_floor(d.ambient) - d.ssrank + slack


@settings(max_examples=200)
@given(data())
def test_dim_p_cap_h_bounds(d):
    assert d.rank <= d.dim_p_cap_h <= d.ambient.dim
    full = StratumDatum(d.ambient, tuple(frozenset(range(1, t.rank + 1)) for t in d.ambient.shape.components), 0, 0)
    assert full.dim_p_cap_h == d.ambient.dim


def test_datum_validation():
    s = spec("A2")
    with pytest.raises(StratumError):
        StratumDatum(s, (frozenset({1}),), 1, 2)
    with pytest.raises(StratumError):
        StratumDatum(s, (frozenset({1}),), -1, 0)
    with pytest.raises(StratumError):
        StratumDatum(s, (frozenset({1}),), 99, 0)
    with pytest.raises(StratumError):
        StratumDatum(s, (frozenset({3}),), 0, 0)
    with pytest.raises(StratumError):
        StratumDatum(s, (frozenset(), frozenset()), 0, 0)


def test_candidates():
    s = spec("A3")
    assert strata.is_component_candidate(strata.torus_stratum(s))
    assert not strata.is_component_candidate(StratumDatum(s, (frozenset({1}),), 0, 0))


def test_reducibility_evidence():
    for name in ("B7", "E8", "A16"):
        verdict = classify_borel_irreducible(parse_type(name))
        ev = strata.reducibility_evidence(verdict)
        assert ev.stratum_dim_lower >= ev.floor
    with pytest.raises(StratumError):
        strata.reducibility_evidence(classify_borel_irreducible(parse_type("A3")))


def test_load_and_evaluate(tmp_path):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"ambient": "A2+T1", "strata": [
        {"levi": [], "sheet_dim": 0, "orbit_dim": 0},
        {"levi": [1], "sheet_dim": 1, "orbit_dim": 1},
        {"levi": "all", "sheet_dim": 3, "orbit_dim": 2},
    ]}))
    s, items = strata.load_strata(f)
    rows = strata.evaluate(items)
    assert [r["stratum_dim"] for r in rows] == [9, 8, 8]
    assert [r["cprime_dim"] for r in rows] == [6, 6, 8]
    assert rows[0]["floor"] == 9 and rows[0]["component_candidate"]
    f.write_text(json.dumps({"ambient": "A2", "parabolic": [1], "strata": [{"levi": [2], "sheet_dim": 0}]}))
    with pytest.raises(StratumError):
        strata.load_strata(f)
    f.write_text(json.dumps({"ambient": "Q2", "strata": []}))
    with pytest.raises(StratumError):
        strata.load_strata(f)




def test_gl2_strata_match_point_counts():
    """Pairs split into the torus stratum and the J={1} strata; degrees match."""
    s = spec("A1+T1")
    torus = strata.stratum_dim(strata.torus_stratum(s))
    levi = max(strata.stratum_dim(StratumDatum(s, (frozenset({1}),), dS, j)) for dS, j in [(0, 0), (1, 1)])
    split = {"torus": [], "levi": []}
    for q in (2, 3, 5, 7, 11):
        X = fq.to_matrices(fq.elements(2, q, "borel"), 2, "borel")
        comm = ((np.einsum("aij,bjk->abik", X, X) - np.einsum("bij,ajk->abik", X, X)) % q == 0).all(axis=(2, 3))
        scalar_like = X[:, 0, 0] == X[:, 1, 1]
        both = comm & scalar_like[:, None] & scalar_like[None, :]
        split["levi"].append((q, int(both.sum())))
        split["torus"].append((q, int(comm.sum() - both.sum())))
    # scalar translations make every count divisible by q^2
    for part, expected in (("torus", torus), ("levi", levi)):
        fit = fit_degree(split[part], shift=2)
        assert fit.status.value == "confirmed"
        assert fit.degree == expected
    assert (torus, levi) == (5, 4)
