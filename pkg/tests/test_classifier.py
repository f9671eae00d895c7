import json

import pytest
from hypothesis import given, settings, strategies as st

from commvar import classifier, rootsys
from commvar.classifier import (ModalityOracle, OracleConflictError, ParabolicSpec, Property, Status,
                                Verdict, classify_borel, classify_borel_closed_form,
                                classify_borel_equidimensional, classify_borel_irreducible,
                                classify_borel_normal, classify_parabolic_irreducible,
                                classify_parabolic_normal_conditional, levi_monotonicity_check)
from commvar.modtables import Kind, ModalityValue, TABULATED
from commvar.rootsys import ReductiveShape, parse_shape, parse_type

TAB_TYPES = sorted(TABULATED)
IRREDUCIBLE = {f"A{r}" for r in range(1, 16)} | {f"B{r}" for r in range(2, 7)} | \
    {f"C{r}" for r in range(3, 7)} | {f"D{r}" for r in range(4, 8)} | {"G2", "E6"}
NORMAL = {f"A{r}" for r in range(1, 15)} | {f"B{r}" for r in range(2, 6)} | \
    {f"C{r}" for r in range(3, 6)} | {f"D{r}" for r in range(4, 8)}

shapes = st.builds(lambda c, k: ReductiveShape(tuple(c), k),
                   st.lists(st.sampled_from(TAB_TYPES), max_size=4), st.integers(0, 3))


def v(text, prop=Property.IRREDUCIBLE, **kw):
    return classify_borel(parse_shape(text), prop, **kw)


@pytest.mark.parametrize("t", TAB_TYPES, ids=str)
def test_tabulated_verdicts(t):
    irr = classify_borel_irreducible(t)
    assert irr.status is (Status.IRREDUCIBLE if str(t) in IRREDUCIBLE else Status.REDUCIBLE)
    assert irr.status == classify_borel_closed_form(t).status
    norm = classify_borel_normal(t)
    assert norm.status is (Status.NORMAL if str(t) in NORMAL else Status.NOT_NORMAL)
    assert norm.status == classifier.classify_borel_normal_closed_form(t).status
    for method in ("connected",):
        for prop in Property:
            a, b = classify_borel(t, prop, "sweep"), classify_borel(t, prop, method)
            assert (a.status, a.witness) == (b.status, b.witness)


def test_borel_examples():
    assert v("B6").status is Status.IRREDUCIBLE
    b7 = v("B7")
    assert b7.status is Status.REDUCIBLE
    assert b7.witness.levi.subset == frozenset(range(1, 8))
    assert b7.witness.modality == ModalityValue.exact(7)
    a16 = v("A16")
    assert a16.status is Status.REDUCIBLE
    assert a16.witness.levi.subset == frozenset(range(1, 17))
    assert a16.witness.modality == ModalityValue.at_least(16)
    a1 = v("A1")
    assert (a1.status, a1.dimension) == (Status.IRREDUCIBLE, 3)
    e8 = v("E8")
    assert e8.witness.levi.subset == frozenset(range(1, 8))
    assert e8.witness.levi.component_types == (parse_type("E7"),)


def test_closed_form_examples():
    assert classify_borel_closed_form(parse_shape("D7,A15")).status is Status.IRREDUCIBLE
    assert classify_borel_closed_form(parse_shape("E7")).status is Status.REDUCIBLE
    torus = classify_borel_closed_form(parse_shape("T5"))
    assert (torus.status, torus.dimension) == (Status.IRREDUCIBLE, 10)
    assert v("T5").status is Status.IRREDUCIBLE


def test_normal_examples():
    assert v("D7", Property.NORMAL).status is Status.NORMAL
    for name in ("G2", "A15", "E6"):
        assert v(name).status is Status.IRREDUCIBLE
        assert v(name, Property.NORMAL).status is Status.NOT_NORMAL
        assert classifier.normality_summary(parse_shape(name))[0] == "irreducible, not normal"
    g2 = v("G2", Property.NORMAL).witness
    assert g2.modality == ModalityValue.exact(1) and g2.levi.ssrank == 2


def test_equidimensional_examples():
    assert v("B7", Property.EQUIDIMENSIONAL).status is Status.EQUIDIMENSIONAL
    assert v("A16", Property.EQUIDIMENSIONAL).status is Status.UNKNOWN
    assert v("A4", Property.EQUIDIMENSIONAL).status is Status.EQUIDIMENSIONAL
    assert v("B8", Property.EQUIDIMENSIONAL).status is Status.NOT_EQUIDIMENSIONAL
    assert v("A17", Property.EQUIDIMENSIONAL).status is Status.NOT_EQUIDIMENSIONAL


def test_beyond_table():
    # the A16 sub-Levi already violates, no extrapolation needed
    a18 = v("A18")
    assert a18.status is Status.REDUCIBLE and a18.witness.levi.ssrank == 16
    big = v("D30")
    assert big.status is Status.REDUCIBLE and classifier.FLAG_CONNECTED in big.flags


def test_gap_in_table_gives_unknown():
    table = classifier.ModalityTable({t: e for t, e in TABULATED.items() if str(t) != "A5"})
    verdict = classify_borel_irreducible(parse_type("A5"), table)
    assert verdict.status is Status.UNKNOWN
    assert verdict.witness.levi.ssrank == 5 and verdict.witness.modality.kind is Kind.UNKNOWN
    assert classify_borel_irreducible(parse_type("A6"), table).status is Status.UNKNOWN
    # a confirmed violation elsewhere beats an undecided Levi
    assert classify_borel_irreducible(parse_shape("A6,B7"), table).status is Status.REDUCIBLE


@settings(max_examples=60)
@given(shapes)
def test_sweep_agrees_with_closed_form_on_products(shape):
    a = classify_borel_irreducible(shape)
    assert a.status == classify_borel_closed_form(shape).status
    assert classify_borel_normal(shape).status == classifier.classify_borel_normal_closed_form(shape).status


@settings(max_examples=60)
@given(shapes)
def test_logical_implications(shape):
    irr = classify_borel_irreducible(shape)
    norm = classify_borel_normal(shape)
    eq = classify_borel_equidimensional(shape)
    if norm.status is Status.NORMAL:
        assert irr.status is Status.IRREDUCIBLE
    if irr.status is Status.IRREDUCIBLE:
        assert eq.status is Status.EQUIDIMENSIONAL
        d = rootsys.dims(shape)
        assert irr.dimension == d.dim_borel + d.rank


@settings(max_examples=60)
@given(shapes)
def test_conjunction_over_components(shape):
    for prop in Property:
        whole = classify_borel(shape, prop)
        parts = [classify_borel(t, prop).holds for t in shape.components]
        if all(p is True for p in parts):
            assert whole.holds is True
        elif any(p is False for p in parts):
            assert whole.holds is False
        else:
            assert whole.status is Status.UNKNOWN


@settings(max_examples=60)
@given(shapes)
def test_witness_soundness(shape):
    for prop in Property:
        verdict = classify_borel(shape, prop)
        if verdict.holds is False:
            w = verdict.witness
            assert w is not None
            assert w.modality.at_least_as_large_as(classifier.threshold(prop, w.levi.ssrank))
        if verdict.status is Status.UNKNOWN:
            assert verdict.witness.modality.kind is not Kind.EXACT or \
                not verdict.witness.modality.certainly_below(classifier.threshold(prop, verdict.witness.levi.ssrank))


def test_witness_is_lex_least_minimal():
    # brute force over all subsets of B8 for the irreducible property
    t = parse_type("B8")
    table = classifier.DEFAULT_TABLE
    bad = [lc.subset for lc in rootsys.levi_classes(t)
           if lc.subset and table.mod_borel_product(lc.component_types).at_least_as_large_as(lc.ssrank)]
    best = min(bad, key=lambda s: (len(s), sorted(s)))
    assert classify_borel_irreducible(t).witness.levi.subset == best


@settings(max_examples=40)
@given(shapes)
def test_verdict_json_roundtrip(shape):
    for prop in Property:
        verdict = classify_borel(shape, prop)
        again = Verdict.from_dict(json.loads(verdict.to_json()))
        assert again == verdict


def test_verdict_schema_checked():
    d = v("A3").to_dict()
    d["schema"] = "other/9"
    with pytest.raises(ValueError):
        Verdict.from_dict(d)


# --- parabolics -------------------------------------------------------------

@given(st.sets(st.integers(1, 5)))
def test_any_parabolic_in_a5_irreducible(I):
    spec = ParabolicSpec(parse_shape("A5"), (frozenset(I),))
    verdict = classify_parabolic_irreducible(spec)
    assert verdict.status is Status.IRREDUCIBLE
    assert verdict.dimension == spec.dim + 5
    assert classifier.FLAG_STANDARD_LEVI not in verdict.flags


@pytest.mark.parametrize("name", ["A3", "B7", "E8", "A16", "A3,E7+T1"])
def test_borel_spec_delegates(name):
    shape = parse_shape(name)
    a = classify_parabolic_irreducible(ParabolicSpec(shape))
    b = classify_borel_irreducible(shape)
    assert (a.status, a.witness, a.dimension) == (b.status, b.witness, b.dimension)


def test_gl600_block_parabolic(tmp_path):
    f = tmp_path / "oracle.json"
    f.write_text(json.dumps([{"type": "A599", "J": "all", "relative": {"all_but": [200]},
                              "kind": "lower_bound", "value": 599, "provenance": "user bound"}]))
    oracle = ModalityOracle.from_file(f)
    spec = ParabolicSpec(parse_shape("A599"), (frozenset(range(1, 600)) - {200},))
    assert spec.dim == 599 + 599 * 600 // 2 + (199 * 200 // 2 + 399 * 400 // 2)
    verdict = classify_parabolic_irreducible(spec, oracle)
    assert verdict.status is Status.REDUCIBLE
    assert verdict.witness.levi.ssrank == 599
    assert verdict.witness.relative == spec.levi_subsets[0]


def test_parabolic_standard_levi_flag():
    # A17 Borel is reducible, but a maximal parabolic with zero relative modalities passes
    t = parse_type("A17")
    I = frozenset(range(1, 18)) - {9}
    entries = {(t, C, C & I): (ModalityValue.exact(0), "test data")
               for C in rootsys.connected_subsets(t) if C & I and C & I != C}
    spec = ParabolicSpec(ReductiveShape((t,)), (I,))
    verdict = classify_parabolic_irreducible(spec, ModalityOracle(entries=entries))
    assert verdict.status is Status.IRREDUCIBLE
    assert classifier.FLAG_STANDARD_LEVI in verdict.flags
    assert verdict.dimension == spec.dim + 17
    # without the data the same parabolic is undecided
    assert classify_parabolic_irreducible(spec).status is Status.UNKNOWN


def test_levi_equal_relative_is_zero():
    oracle = ModalityOracle()
    t = parse_type("E8")
    assert oracle.lookup(t, frozenset({1, 3, 4}), {1, 3, 4}) == ModalityValue.exact(0)
    with pytest.raises(OracleConflictError):
        ModalityOracle(entries={(t, frozenset({1, 3}), frozenset({1, 3})): (ModalityValue.exact(2), "x")})


def test_oracle_conflict_on_borel_case():
    t = parse_type("A5")
    with pytest.raises(OracleConflictError):
        ModalityOracle(entries={(t, frozenset(range(1, 6)), frozenset()): (ModalityValue.exact(3), "bad")})
    ok = ModalityOracle(entries={(t, frozenset(range(1, 6)), frozenset()): (ModalityValue.exact(1), "agrees")})
    assert ok.lookup(t, frozenset(range(1, 6)), ()) == ModalityValue.exact(1)


@pytest.mark.parametrize("entry", [
    {"type": "A5", "J": [1, 9], "kind": "exact", "value": 0, "provenance": "x"},
    {"type": "A5", "J": [1, 2], "relative": [3], "kind": "exact", "value": 0, "provenance": "x"},
    {"type": "A5", "J": [1, 2], "kind": "exact", "value": 0},
    {"type": "Q5", "J": [1, 2], "kind": "exact", "value": 0, "provenance": "x"},
])
def test_oracle_file_validation(tmp_path, entry):
    f = tmp_path / "o.json"
    f.write_text(json.dumps([entry]))
    with pytest.raises(ValueError):
        ModalityOracle.from_file(f)


def test_parabolic_normal_conditional():
    spec = ParabolicSpec(parse_shape("A15"), (frozenset({1}),))
    verdict = classify_parabolic_normal_conditional(spec)
    assert verdict.status is not Status.NOT_NORMAL
    assert classifier.FLAG_CONDITIONAL_CM in verdict.flags
    borel = classify_parabolic_normal_conditional(ParabolicSpec(parse_shape("A15")))
    assert borel.status is Status.NOT_NORMAL
    ok = classify_parabolic_normal_conditional(ParabolicSpec(parse_shape("A4"), (frozenset({2}),)))
    assert ok.status in (Status.NORMAL, Status.UNKNOWN)


def test_parabolic_spec_validation():
    with pytest.raises(rootsys.InvalidTypeError):
        ParabolicSpec(parse_shape("A3"), (frozenset({4}),))
    with pytest.raises(rootsys.InvalidTypeError):
        ParabolicSpec(parse_shape("A3"), (frozenset(), frozenset()))
    assert ParabolicSpec(parse_shape("A2"), (frozenset({1}),)).dim == 6


# --- Levi monotonicity --------------------------------------------------------

def test_monotonicity_a15():
    report = levi_monotonicity_check(parse_type("A15"))
    assert report.ok and report.checked == 2 ** 15


def test_monotonicity_vacuous_and_small():
    assert levi_monotonicity_check(parse_type("B7")).checked == 0
    assert levi_monotonicity_check(parse_shape("A2,A2")).ok


@pytest.mark.parametrize("t", [t for t in TAB_TYPES if str(t) in IRREDUCIBLE and t.rank <= 12], ids=str)
def test_monotonicity_all_irreducible(t):
    assert levi_monotonicity_check(t).ok
