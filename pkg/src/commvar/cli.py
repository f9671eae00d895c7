"""Command-line interface.

Type grammar: simple types ``X<rank>`` (X in A B C D E F G) joined by commas,
optionally followed by ``+T<k>`` for a central torus, e.g. ``A3,A3,D5`` or
``A2+T1``.  Levi subsets are 1-based node lists such as ``1,3``; use ``;`` to
separate components (``1,3;2``).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import classifier, modtables, rootsys, strata
from .classifier import ModalityOracle, OracleConflictError, ParabolicSpec, Property
from .fforacle import counting, orbits, tangent
from .fforacle.budget import BudgetExceeded, load_settings
from .fforacle.fitting import fit_degree
from .fforacle.fq import Support
from .fforacle.reports import dumps, make_report
from .modtables import OverrideError
from .rootsys import InvalidTypeError

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2

CITE_COUNT = "C(p) = {(X,Y) in p x p : [X,Y] = 0}; irreducible C(p) has dimension dim p + rank"
CITE_ORBITS = "mod(U:u) = mod(B:u) + ssrank; modality read off as the degree of the orbit-count polynomial"
CITE_SMOOTH = "(X,Y) in C(b) with X regular is a smooth point; tangent space {(W,Z) : [X,Z]+[W,Y] = 0}"


class InputError(Exception):
    """Bad command-line input; reported with exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _levi_subsets(text: str, shape: rootsys.ReductiveShape) -> tuple[frozenset[int], ...]:
    parts = text.split(";") if text else []
    if len(parts) < len(shape.components):
        parts += [""] * (len(shape.components) - len(parts))
    if len(parts) != len(shape.components):
        raise InputError(f"malformed subset {text!r}: {len(parts)} groups for {len(shape.components)} components")
    out = []
    for t, part in zip(shape.components, parts):
        try:
            s = frozenset(int(x) for x in part.split(",") if x.strip())
        except ValueError:
            raise InputError(f"malformed subset {part!r}: expected comma-separated node numbers")
        if not s <= frozenset(range(1, t.rank + 1)):
            raise InputError(f"malformed subset {part!r}: nodes of {t} are 1..{t.rank}")
        out.append(s)
    return tuple(out)


def _table(args) -> modtables.ModalityTable:
    table = modtables.ModalityTable(modtables.TABULATED, extrapolate=getattr(args, "extrapolate", False))
    if getattr(args, "overrides", None):
        table = table.with_overrides(modtables.load_overrides(args.overrides))
    return table


def _emit(args, report: dict, text: str) -> None:
    if args.format == "structured":
        sys.stdout.write(dumps(report))
    else:
        print(text)


def _verdict_line(v: classifier.Verdict) -> str:
    line = f"{v.shape}: {v.status.value}"
    if v.dimension is not None:
        line += f" (dim {v.dimension})"
    if v.witness:
        w = v.witness
        line += (f"; witness {w.component} J={sorted(w.levi.subset)} "
                 f"({','.join(str(t) for t in w.levi.component_types)}), {w.inequality}")
    if v.flags:
        line += f" [{'; '.join(v.flags)}]"
    return line


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

def cmd_classify_borel(args) -> int:
    shape = rootsys.parse_shape(args.type)
    table = _table(args)
    prop = Property(args.property)
    if prop is Property.NORMAL:
        summary, irr, norm = classifier.normality_summary(shape, table, args.method)
        verdicts = [irr, norm]
        text = f"{shape}: {summary}\n" + "\n".join(_verdict_line(v) for v in verdicts)
    else:
        v = classifier.classify_borel(shape, prop, args.method, table)
        verdicts, summary = [v], v.status.value
        text = _verdict_line(v)
    citations = sorted({c for v in verdicts for c in v.citations})
    report = make_report("classify borel",
                         {"type": str(shape), "property": prop.value, "method": args.method,
                          "extrapolate": args.extrapolate, "overrides": args.overrides},
                         {"summary": summary, "verdicts": [v.to_dict() for v in verdicts]},
                         citations=citations)
    _emit(args, report, text)
    return EXIT_OK


def cmd_classify_parabolic(args) -> int:
    shape = rootsys.parse_shape(args.type)
    spec = ParabolicSpec(shape, _levi_subsets(args.levi, shape))
    oracle = ModalityOracle.from_file(args.oracle, _table(args)) if args.oracle else ModalityOracle(_table(args))
    if args.property == "irreducible":
        v = classifier.classify_parabolic_irreducible(spec, oracle, args.method)
    else:
        v = classifier.classify_parabolic_normal_conditional(spec, oracle, args.method)
    report = make_report("classify parabolic",
                         {"type": str(shape), "levi": [sorted(s) for s in spec.levi_subsets],
                          "property": args.property, "method": args.method, "oracle": args.oracle},
                         {"summary": v.status.value, "dim_p": spec.dim, "verdicts": [v.to_dict()]},
                         citations=list(v.citations))
    _emit(args, report, f"parabolic dim {spec.dim}\n" + _verdict_line(v))
    return EXIT_OK


# ---------------------------------------------------------------------------
# tables / strata
# ---------------------------------------------------------------------------

def cmd_tables_show(args) -> int:
    table = _table(args)
    rows = table.rows(args.family)
    if args.family and not rows:
        raise InputError(f"no tabulated types in family {args.family!r}")
    report = make_report("tables show", {"family": args.family},
                         {"rows": [{"type": str(t), **v.to_dict(), "provenance": p} for t, v, p in rows]})
    _emit(args, report, "\n".join(f"{str(t):<5} {str(v):>5}  {p}" for t, v, p in rows))
    return EXIT_OK


def cmd_tables_cartan(args) -> int:
    t = rootsys.parse_type(args.type)
    mat = rootsys.cartan_matrix(t)
    d = rootsys.dims(t)
    report = make_report("tables cartan", {"type": str(t)},
                         {"cartan": [list(r) for r in mat], "dims": d._asdict(),
                          "positive_roots": t.num_positive_roots})
    text = "\n".join(" ".join(f"{x:>2}" for x in row) for row in mat)
    _emit(args, report, f"{t}: dim g {d.dim_g}, rank {d.rank}, |Phi+| {t.num_positive_roots}\n{text}")
    return EXIT_OK


def cmd_strata_eval(args) -> int:
    spec, data = strata.load_strata(args.file)
    rows = strata.evaluate(data)
    report = make_report("strata eval",
                         {"ambient": str(spec.shape), "parabolic": [sorted(s) for s in spec.levi_subsets]},
                         {"dim_p": spec.dim, "floor": strata.component_floor(spec), "strata": rows})
    lines = [f"{spec.shape}: dim p {spec.dim}, component floor {strata.component_floor(spec)}"]
    for r in rows:
        lines.append(f"  J={r['levi']} dim S={r['sheet_dim']} j={r['orbit_dim']}: "
                     f"C' {r['cprime_dim']}, stratum {r['stratum_dim']}"
                     + ("" if r["component_candidate"] else " (below floor)"))
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def cmd_verify_count(args) -> int:
    settings = load_settings(args.config, args.budget, args.threads)
    methods = list(counting.METHODS) if args.method == "both" else [args.method]
    support = Support(args.support)
    counts, used = [], 0

    def run():
        nonlocal used
        for q in args.q:
            per = {}
            for m in methods:
                pc = counting.count_commuting_pairs(args.n, q, support, m, settings.threads, settings.budget)
                used += pc.work
                per[m] = pc
            values = {pc.count for pc in per.values()}
            if len(values) != 1:
                raise ArithmeticError(f"counting methods disagree at q={q}: {sorted(values)}")
            counts.append((q, per))
    _, elapsed = _timed(run)
    result = {"counts": [{"q": q, **{m: pc.to_dict() for m, pc in per.items()}} for q, per in counts]}
    samples = [(q, next(iter(per.values())).count) for q, per in counts]
    lines = [f"q={q}: count {c}" for q, c in samples]
    if len(samples) >= 2:
        shift = 0 if support is Support.NILRADICAL else 2
        fit = fit_degree(samples, shift=shift)
        d = rootsys.dims(rootsys.parse_shape(f"A{args.n - 1}+T1")) if args.n > 1 else None
        result["fit"] = fit.to_dict()
        lines.append(f"fit: {fit.polynomial()} (degree {fit.degree}, {fit.status.value})")
        if support is Support.BOREL and d is not None:
            result["expected_degree"] = d.dim_borel + d.rank
            lines.append(f"expected degree dim b + rank = {d.dim_borel + d.rank}")
    report = make_report("verify count",
                         {"n": args.n, "q": args.q, "support": support.value, "method": args.method},
                         result, budget_used=used, runtime=elapsed if args.timing else None,
                         citations=[CITE_COUNT])
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def cmd_verify_orbits(args) -> int:
    settings = load_settings(args.config, args.budget, args.threads)
    space = Support(args.space)
    censuses, used = [], 0

    def run():
        nonlocal used
        for q in args.q:
            c = orbits.orbit_census(args.group, args.n, q, space, settings.threads, settings.budget)
            used += orbits.estimate_work(args.group, args.n, q, space)
            if args.burnside:
                b = orbits.burnside_count(args.group, args.n, q, space, settings.budget)
                if b != c.orbit_count:
                    raise ArithmeticError(f"Burnside count {b} differs from census {c.orbit_count} at q={q}")
            censuses.append(c)
    _, elapsed = _timed(run)
    result = {"censuses": [c.to_dict() for c in censuses]}
    lines = [f"q={c.q}: {c.orbit_count} orbits, sizes {c.size_multiset()}" for c in censuses]
    if len(censuses) >= 2:
        fit = fit_degree([(c.q, c.orbit_count) for c in censuses],
                         max_degree=rootsys.dims(rootsys.parse_shape(f"A{args.n - 1}+T1")).dim_borel)
        result["fit"] = fit.to_dict()
        lines.append(f"fit: {fit.polynomial()} (degree {fit.degree}, {fit.status.value})")
        if space is Support.NILRADICAL and args.n >= 2:
            exp = orbits.expected_degree(args.group, args.n)
            result["expected_degree"] = exp.to_dict()
            lines.append(f"expected degree from the modality table: {exp}")
    report = make_report("verify orbits",
                         {"group": args.group, "n": args.n, "q": args.q, "space": space.value,
                          "burnside": args.burnside},
                         result, budget_used=used, runtime=elapsed if args.timing else None,
                         citations=[CITE_ORBITS])
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def cmd_verify_smooth(args) -> int:
    settings = load_settings(args.config, args.budget, args.threads)
    seed = args.seed
    if seed is None:
        if args.format == "structured":
            raise InputError("structured output of a randomized command needs --seed")
        seed = int(np.random.SeedSequence().entropy % (1 << 32))
    v = classifier.classify_borel_irreducible(rootsys.parse_shape(f"A{args.n - 1}")) if args.n > 1 else None
    if v is not None and v.status is not classifier.Status.IRREDUCIBLE:
        raise InputError(f"C(b) for gl_{args.n} is not known to be irreducible")

    def run():
        rep = tangent.smoothness_sample(args.n, args.q, args.trials, seed, settings.threads, settings.budget)
        ex = tangent.smoothness_exhaustive(args.n, args.q, settings.budget) if args.exhaustive else None
        wit = tangent.singular_witness(args.n, args.q) if args.n >= 2 else None
        return rep, ex, wit
    (rep, ex, wit), elapsed = _timed(run)
    result = {"sample": rep.to_dict()}
    lines = [f"seed {seed}: {rep.trials} trials, {len(rep.violations)} violations "
             f"(expected tangent dim {rep.expected})"]
    if ex is not None:
        result["exhaustive"] = ex.to_dict()
        lines.append(f"exhaustive: {ex.trials} pairs, {len(ex.violations)} violations")
    if wit is not None:
        X, Y, t = wit
        result["singular_witness"] = {"X": X.tolist(), "Y": Y.tolist(), "tangent_dim": t}
        lines.append(f"singular witness: tangent dim {t} > {rep.expected}")
    report = make_report("verify smooth",
                         {"n": args.n, "q": args.q, "trials": args.trials, "exhaustive": args.exhaustive},
                         result, seed=seed, budget_used=args.trials,
                         runtime=elapsed if args.timing else None, citations=[CITE_SMOOTH])
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if rep.ok and (ex is None or ex.ok) else EXIT_INPUT


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="commvar", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    verbs = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "structured"), default="text")

    def runtime_opts(sp):
        sp.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
        sp.add_argument("--budget", type=int, default=None, help="elementary-operation cap")
        sp.add_argument("--config", help="JSON file with budget/threads")
        sp.add_argument("--timing", action="store_true", help="record wall-clock runtime in reports")

    def table_opts(sp):
        sp.add_argument("--extrapolate", action="store_true", help="rank+1 lower bounds beyond the table")
        sp.add_argument("--overrides", help="JSON file of modality overrides")

    cl = verbs.add_parser("classify", help="decide irreducibility, normality, equidimensionality")
    cls = cl.add_subparsers(dest="target", required=True, parser_class=_Parser)
    b = cls.add_parser("borel", help="commuting variety of a Borel subalgebra")
    b.add_argument("--type", required=True)
    b.add_argument("--property", default="irreducible",
                   choices=("irreducible", "normal", "equidimensional", "equidim"))
    b.add_argument("--method", default="sweep", choices=("sweep", "connected", "closed-form"))
    table_opts(b)
    fmt(b)
    b.set_defaults(func=cmd_classify_borel)
    pa = cls.add_parser("parabolic", help="commuting variety of a standard parabolic")
    pa.add_argument("--type", required=True)
    pa.add_argument("--levi", default="", help="Levi subset I of the parabolic, e.g. 1,3")
    pa.add_argument("--oracle", help="JSON file of relative modalities")
    pa.add_argument("--property", default="irreducible", choices=("irreducible", "normal"))
    pa.add_argument("--method", default="sweep", choices=("sweep", "connected"))
    table_opts(pa)
    fmt(pa)
    pa.set_defaults(func=cmd_classify_parabolic)

    tb = verbs.add_parser("tables", help="show tabulated data")
    tbs = tb.add_subparsers(dest="target", required=True, parser_class=_Parser)
    sh = tbs.add_parser("show", help="modality table")
    sh.add_argument("--family", choices=tuple("ABCDEFG"), type=str.upper)
    table_opts(sh)
    fmt(sh)
    sh.set_defaults(func=cmd_tables_show)
    ca = tbs.add_parser("cartan", help="Cartan matrix and dimensions of a simple type")
    ca.add_argument("--type", required=True)
    fmt(ca)
    ca.set_defaults(func=cmd_tables_cartan)

    st = verbs.add_parser("strata", help="stratum dimension bookkeeping")
    sts = st.add_subparsers(dest="target", required=True, parser_class=_Parser)
    ev = sts.add_parser("eval", help="evaluate a JSON stratum description")
    ev.add_argument("--file", required=True)
    fmt(ev)
    ev.set_defaults(func=cmd_strata_eval)

    vf = verbs.add_parser("verify", help="finite-field brute-force checks for gl_n")
    vfs = vf.add_subparsers(dest="target", required=True, parser_class=_Parser)
    co = vfs.add_parser("count", help="count commuting pairs")
    co.add_argument("--n", type=int, required=True)
    co.add_argument("--q", type=_int_list, required=True, help="primes, e.g. 2,3,5")
    co.add_argument("--support", default="borel", choices=[s.value for s in Support])
    co.add_argument("--method", default="centralizer-sum", choices=(*counting.METHODS, "both"))
    runtime_opts(co)
    fmt(co)
    co.set_defaults(func=cmd_verify_count)
    ob = vfs.add_parser("orbits", help="U(q)/B(q) orbit census")
    ob.add_argument("--group", choices=("U", "B"), required=True)
    ob.add_argument("--n", type=int, required=True)
    ob.add_argument("--q", type=_int_list, required=True)
    ob.add_argument("--space", default="nilradical", choices=("nilradical", "borel"))
    ob.add_argument("--burnside", action="store_true", help="cross-check by fixed-point averaging")
    runtime_opts(ob)
    fmt(ob)
    ob.set_defaults(func=cmd_verify_orbits)
    sm = vfs.add_parser("smooth", help="tangent dimensions at regular commuting pairs")
    sm.add_argument("--n", type=int, required=True)
    sm.add_argument("--q", type=int, required=True)
    sm.add_argument("--trials", type=int, default=1000)
    sm.add_argument("--seed", type=int)
    sm.add_argument("--exhaustive", action="store_true", help="also check every pair")
    runtime_opts(sm)
    fmt(sm)
    sm.set_defaults(func=cmd_verify_smooth)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "property", None) == "equidim":
        args.property = "equidimensional"
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidTypeError as exc:
        print(f"error: invalid type: {exc}", file=sys.stderr)
    except OracleConflictError as exc:
        print(f"error: oracle conflicts with table: {exc}", file=sys.stderr)
    except OverrideError as exc:
        print(f"error: bad override file: {exc}", file=sys.stderr)
    except strata.StratumError as exc:
        print(f"error: bad stratum data: {exc}", file=sys.stderr)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
