"""Acceptance criteria, one test each, printing a PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

import itertools
import json
import time

import numpy as np
import pytest

from commvar import classifier, cli, rootsys, strata
from commvar.classifier import ParabolicSpec, Property, Status
from commvar.fforacle import counting, orbits, tangent
from commvar.fforacle.fitting import FitStatus, fit_degree
from commvar.modtables import TABULATED
from commvar.rootsys import ReductiveShape
from commvar.strata import StratumDatum

IRREDUCIBLE = {f"A{r}" for r in range(1, 16)} | {f"B{r}" for r in range(2, 7)} | \
    {f"C{r}" for r in range(3, 7)} | {f"D{r}" for r in range(4, 8)} | {"G2", "E6"}
NORMAL = {f"A{r}" for r in range(1, 15)} | {f"B{r}" for r in range(2, 6)} | \
    {f"C{r}" for r in range(3, 6)} | {f"D{r}" for r in range(4, 8)}


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, elapsed, limit, detail=""):
        in_time = limit is None or elapsed < limit
        verdict = "PASS" if ok and in_time else "FAIL"
        budget = f" (limit {limit:g}s)" if limit else ""
        line = f"[{verdict}] criterion {number}: {title} in {elapsed:.2f}s{budget}"
        if detail:
            line += f" -- {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, detail
        assert in_time, f"runtime {elapsed:.2f}s exceeds {limit}s"
    return emit


def test_criterion_1_closed_form_reproduction(report):
    classifier._borel_component.cache_clear()
    t0 = time.perf_counter()
    mismatches, wrong = [], []
    for t in sorted(TABULATED):
        sweep = classifier.classify_borel(t, Property.IRREDUCIBLE, "sweep")
        closed = classifier.classify_borel(t, Property.IRREDUCIBLE, "closed-form")
        if sweep.status != closed.status:
            mismatches.append(str(t))
        expected = Status.IRREDUCIBLE if str(t) in IRREDUCIBLE else Status.REDUCIBLE
        if sweep.status is not expected:
            wrong.append(str(t))
    elapsed = time.perf_counter() - t0
    report(1, "Borel irreducibility list via sweep, zero mismatches vs closed form",
           not mismatches and not wrong, elapsed, 1.0,
           f"{len(TABULATED)} types, mismatches {mismatches}, wrong {wrong}")


def test_criterion_2_normality_reproduction(report):
    classifier._borel_component.cache_clear()
    t0 = time.perf_counter()
    wrong = []
    for t in sorted(TABULATED):
        summary, irr, norm = classifier.normality_summary(t)
        if (norm.status is Status.NORMAL) != (str(t) in NORMAL):
            wrong.append(str(t))
        if norm.status != classifier.classify_borel(t, Property.NORMAL, "closed-form").status:
            wrong.append(f"{t} (closed form)")
    for name in ("G2", "E6", "A15", "B6", "C6"):
        if classifier.normality_summary(rootsys.parse_type(name))[0] != "irreducible, not normal":
            wrong.append(f"{name} summary")
    elapsed = time.perf_counter() - t0
    report(2, "normal exactly for A<=14, B/C<=5, D<=7; G2, E6, A15, B6, C6 irreducible but not normal",
           not wrong, elapsed, 1.0, f"wrong {wrong}")


def test_criterion_3_dimension_at_desk_scale(report):
    t0 = time.perf_counter()
    qs = (2, 3, 5, 7, 11, 13)
    samples = [(q, counting.count_commuting_pairs(2, q, "borel").count) for q in qs]
    fit = fit_degree(samples, shift=2)
    gl2_ok = fit.degree == 5 and fit.status is FitStatus.CONFIRMED
    # held-out check: interpolate without q=13, predict it exactly
    held = fit_degree(samples[:-1], shift=2)
    held_ok = held(13) == samples[-1][1]
    gl3 = {}
    for q in (2, 3):
        a = counting.count_commuting_pairs(3, q, "borel", "centralizer-sum").count
        b = counting.count_commuting_pairs(3, q, "borel", "enumeration").count
        gl3[q] = (a, b)
    methods_ok = all(a == b for a, b in gl3.values())
    lower_ok = all(gl3[q][0] >= q ** 9 for q in gl3)
    C = gl3[2][0] / 2 ** 9
    upper_ok = gl3[3][0] <= C * 3 ** 9
    elapsed = time.perf_counter() - t0
    report(3, "gl_2 Borel count degree 5 = dim b + rank; gl_3 counts bracketed by q^9",
           gl2_ok and held_ok and methods_ok and lower_ok and upper_ok, elapsed, 300.0,
           f"fit {fit.polynomial()} ({fit.status.value}), held-out q=13 {held_ok}, "
           f"gl_3 counts {gl3[2][0]}, {gl3[3][0]}, C={C:.4f}, ratio at q=3 {gl3[3][0] / 3 ** 9:.4f}")


def test_criterion_4_modality_bridge(report):
    t0 = time.perf_counter()
    u3 = orbits.empirical_modality("U", 3, [2, 3, 5, 7])
    u3_ok = u3.fit.polynomial() == "q^2 + q - 1" and u3.fit.status is FitStatus.CONFIRMED and u3.agrees
    u4 = orbits.empirical_modality("U", 4, [2, 3, 5, 7, 11])
    u4_ok = u4.fit.degree == 3 and u4.fit.status is FitStatus.CONFIRMED and u4.agrees
    b_counts = {n: [orbits.orbit_census("B", n, q).orbit_count for q in (2, 3, 5)] for n in (3, 4)}
    b_ok = all(len(set(c)) == 1 for c in b_counts.values())
    elapsed = time.perf_counter() - t0
    report(4, "U-orbit counts fit q^2+q-1 (n=3) and degree 3 (n=4); B-orbit counts constant",
           u3_ok and u4_ok and b_ok, elapsed, 600.0,
           f"n=4 fit {u4.fit.polynomial()}, B counts {b_counts}")


def test_criterion_5_smoothness(report):
    t0 = time.perf_counter()
    violations = {}
    for n in (2, 3):
        for q in (2, 5):
            rep = tangent.smoothness_sample(n, q, 1000, seed=20261015)
            violations[(n, q)] = len(rep.violations)
    ex = tangent.smoothness_exhaustive(2, 2)
    witness = tangent.singular_witness(3, 5)
    ok = not any(violations.values()) and ex.ok and ex.trials > 0 and witness[2] > 9
    elapsed = time.perf_counter() - t0
    report(5, "tangent dim = dim b + n at regular pairs; singular witness above it",
           ok, elapsed, 120.0,
           f"violations {violations}, exhaustive pairs {ex.trials}, witness tangent {witness[2]} > 9")


def test_criterion_6_stratification_arithmetic(report):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for t in sorted(TABULATED):
        for k in range(t.rank + 1):
            for I in itertools.combinations(range(1, t.rank + 1), k):
                spec = ParabolicSpec(ReductiveShape((t,)), (frozenset(I),))
                checked += 1
                if strata.stratum_dim(strata.torus_stratum(spec)) != strata.component_floor(spec):
                    bad.append((str(t), I))
    rng = np.random.default_rng(6)
    types = rootsys.catalogue(8)
    affine_bad = 0
    for _ in range(10_000):
        comps = tuple(types[i] for i in rng.integers(0, len(types), size=rng.integers(1, 4)))
        shape = ReductiveShape(comps, int(rng.integers(0, 4)))
        I = tuple(frozenset(int(i) + 1 for i in np.nonzero(rng.random(c.rank) < 0.5)[0]) for c in shape.components)
        J = tuple(frozenset(int(i) + 1 for i in np.nonzero(rng.random(c.rank) < 0.5)[0]) for c in shape.components)
        spec = ParabolicSpec(shape, I)
        top = StratumDatum(spec, J, 0, 0).dim_p_cap_h
        sheet = int(rng.integers(0, top + 1))
        d = StratumDatum(spec, J, sheet, int(rng.integers(0, sheet + 1)))
        if strata.stratum_dim(d) - strata.cprime_dim(d) != spec.dim - d.dim_p_cap_h:
            affine_bad += 1
    elapsed = time.perf_counter() - t0
    report(6, "torus stratum equals the component floor; affine stratum relation",
           not bad and not affine_bad, elapsed, None,
           f"{checked} parabolics, {len(bad)} floor mismatches, 10000 random data, {affine_bad} affine failures")


def test_criterion_7_oracle_cross_validation(report):
    t0 = time.perf_counter()
    counts = {}
    for n, q in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        counts[(n, q)] = (counting.count_commuting_pairs(n, q, "borel", "centralizer-sum").count,
                          counting.count_commuting_pairs(n, q, "borel", "enumeration").count)
    burnside = {g: (orbits.burnside_count(g, 3, 2), orbits.orbit_census(g, 3, 2).orbit_count) for g in "UB"}
    ok = all(a == b for a, b in counts.values()) and all(a == b for a, b in burnside.values())
    elapsed = time.perf_counter() - t0
    report(7, "centralizer-sum = enumeration counts; Burnside = BFS orbit counts", ok, elapsed, None,
           f"counts {counts}, burnside vs census {burnside}")


def _structured(argv, threads, capsys):
    code = cli.main([*argv, "--threads", str(threads), "--format", "structured"])
    out = capsys.readouterr().out
    assert code == 0
    return out


def test_criterion_8_determinism(report, capsys):
    t0 = time.perf_counter()
    commands = [
        ["verify", "count", "--n", "3", "--q", "2,3", "--support", "borel", "--method", "both"],
        ["verify", "count", "--n", "2", "--q", "2,3,5,7,11,13"],
        ["verify", "orbits", "--group", "U", "--n", "4", "--q", "2,3,5", "--burnside"],
        ["verify", "orbits", "--group", "B", "--n", "3", "--q", "2,3,5"],
        ["verify", "smooth", "--n", "3", "--q", "5", "--trials", "1000", "--seed", "12345"],
        ["verify", "smooth", "--n", "3", "--q", "2", "--trials", "1000", "--seed", "7", "--exhaustive"],
    ]
    differing = []
    for argv in commands:
        outs = [_structured(argv, threads, capsys) for threads in (1, 4, 8)]
        if not outs[0] == outs[1] == outs[2]:
            differing.append(" ".join(argv))
        json.loads(outs[0])
    elapsed = time.perf_counter() - t0
    report(8, "verify reports byte-identical across 1, 4 and 8 threads", not differing, elapsed, None,
           f"{len(commands)} commands, differing: {differing}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
