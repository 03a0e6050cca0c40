"""Command-line front end: ``capergodic COMMAND [SPECFILE] [options]``.

Every command prints a report that starts with the command echo and the
digest of the parsed input, followed by ``key=value`` lines grouped in
sections.  ``--machine`` drops the headings and prints bare ``key=value``
lines.  ``--expect KEY[=VALUE]`` (repeatable, ``not-KEY`` for false) turns
a result into an exit status.

Exit codes: 0 success, 1 a property failed (an ``--expect`` mismatch or an
audit failure), 2 bad input.  ``CAPERGODIC_SEED`` sets the default seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import harness
from .capacity import classify, conjugate
from .choquet import asymmetry_check, choquet_integral
from .credal import core_membership, core_min, core_vertices_convex, exactness_audit
from .dynamics import (
    choquet_invariance_check,
    conjugate_invariance_check,
    ergodicity_classify,
    invariant_structure,
    is_invariant_capacity,
    orbit_average,
    quasi_sure_constant,
    visit_frequency_capacity,
)
from .errors import CapacityError
from .independence import (
    block_independent,
    identically_distributed,
    rvs_independent,
    sigma_of,
    zero_one_audit,
)
from .processes import (
    SimulationConfig,
    default_report_points,
    shift_reduction_audit,
    slln_monte_carlo,
    stationarity_check,
)
from .specfile import ParseError, SpecDocument, ValidationError, load

SEED_ENV = "CAPERGODIC_SEED"


class UsageError(CapacityError):
    """Bad flag value or a name that does not resolve in the document."""


def fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(fmt(v) for v in value) + ")"
    return str(value)


@dataclass
class Report:
    command: str
    digest: str | None = None
    source: str | None = None
    sections: list = field(default_factory=list)  # (title, [(key, value)])
    summary: str | None = None
    trailer: str = ""
    exit_code: int = 0

    def section(self, title: str, items) -> None:
        self.sections.append((title, [(k, v if isinstance(v, str) else fmt(v)) for k, v in items]))

    def values(self) -> dict:
        return {k: v for _, items in self.sections for k, v in items}

    def render(self, machine: bool = False) -> str:
        out = []
        if machine:
            out.append(f"command={self.command}")
            if self.source is not None:
                out += [f"input={self.source}", f"digest={self.digest}"]
            for _, items in self.sections:
                out += [f"{k}={v}" for k, v in items]
            out.append(f"exit={self.exit_code}")
        else:
            out.append(f"$ {self.command}")
            if self.source is not None:
                out.append(f"input {self.source} digest {self.digest}")
            for title, items in self.sections:
                out += ["", f"[{title}]"] + [f"{k}={v}" for k, v in items]
            if self.summary:
                out += ["", self.summary]
        text = "\n".join(out) + "\n"
        if self.trailer:
            text += ("\n" if not machine else "") + self.trailer
        return text


def _need(table: dict, name: str | None, kind: str):
    if name is None:
        if len(table) == 1:
            return next(iter(table.items()))
        raise UsageError(f"--{kind} is required (document has {len(table)} {kind} blocks)")
    if name not in table:
        raise UsageError(f"no {kind} named {name!r}; available: {', '.join(table) or 'none'}")
    return name, table[name]


def _capacity(doc, args):
    return _need(doc.capacities, args.capacity, "capacity")


def _map(doc, args):
    return _need(doc.maps, args.map, "map")


def _rv(doc, name):
    try:
        return doc.variable(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _event(doc: SpecDocument, text: str) -> int:
    text = text.strip().strip("{}")
    labels = [p.strip() for p in text.split(",") if p.strip()]
    try:
        return doc.space.event(labels)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _vars(doc, text):
    if text is None:
        if doc.process is None:
            raise UsageError("--vars is required when the document has no process block")
        return list(doc.process.variables), [f"Y{k}" for k in range(1, doc.process.horizon + 1)]
    names = [p.strip() for p in text.split(",") if p.strip()]
    if not names:
        raise UsageError("--vars needs at least one name")
    return [_rv(doc, n) for n in names], names


def _vector(text: str) -> list[Fraction]:
    try:
        return [Fraction(p.strip()) for p in text.strip("()").split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"cannot read a rational vector from {text!r}") from None


# --- commands ---------------------------------------------------------------


def cmd_validate(doc, args, rep):
    names = [args.capacity] if args.capacity else list(doc.capacities)
    rows = []
    for name in names:
        _, mu = _need(doc.capacities, name, "capacity")
        rows.append((f"capacity.{name}", "valid"))
    rep.section("validation", [("points", doc.space.n)] + rows + [
        ("maps", len(doc.maps)), ("rvs", len(doc.rvs)), ("priors", len(doc.priors)),
        ("process_horizon", doc.process.horizon if doc.process else 0)])
    rep.summary = "all capacities valid"


def cmd_classify(doc, args, rep):
    name, mu = _capacity(doc, args)
    r = classify(mu)
    rep.section(f"classification of {name}", r.flags().items())
    witnesses = []
    for key in sorted(r.witnesses):
        w = r.witnesses[key]
        if w is None:
            continue
        witnesses.append((f"witness.{key}", " ".join(doc.space.format(m) for m in w)))
    if witnesses:
        rep.section("witnesses", witnesses)
    bar = classify(conjugate(mu))
    rep.section(f"classification of conjugate({name})", [(f"conjugate.{k}", v) for k, v in bar.flags().items()])


def cmd_conjugate(doc, args, rep):
    name, mu = _capacity(doc, args)
    bar = conjugate(mu)
    rep.section(f"conjugate({name})", [(doc.space.format(m), v) for m, v in enumerate(bar.values)])


def cmd_choquet(doc, args, rep):
    name, mu = _capacity(doc, args)
    xi = _rv(doc, args.rv)
    res = choquet_integral(mu, xi)
    sym = asymmetry_check(mu, xi)
    rep.section(f"choquet integral of {args.rv} against {name}", [
        ("value", res.value),
        ("value_decimal", f"{float(res.value):.6f}"),
        ("conjugate_value", choquet_integral(conjugate(mu), xi).value),
        ("asymmetry_holds", sym.holds),
    ])
    if args.layers:
        rep.section("layers", [("base", res.base)] + [
            (f"layer.{i}", f"threshold={l.threshold} event={doc.space.format(l.event)} weight={l.weight}")
            for i, l in enumerate(res.layers, 1)])


def cmd_core(doc, args, rep):
    name, v = _capacity(doc, args)
    items = []
    if args.event is not None:
        event = _event(doc, args.event)
        res = core_min(v, event)
        items += [("event", doc.space.format(event)), ("status", res.status), ("core_min", res.optimum),
                  ("capacity_value", v(event)), ("argmin", res.argmin)]
    if args.member is not None:
        m = core_membership(v, _vector(args.member))
        items += [("member", m.member), ("violated", doc.space.format(m.violated) if m.violated is not None else None)]
    if args.audit_exactness:
        ex = exactness_audit(v)
        items += [("nonempty", ex.nonempty), ("exact", ex.exact),
                  ("violations", len(ex.violations))]
        items += [(f"violation.{doc.space.format(a)}", f"v={val} core_min={lo}") for a, val, lo in ex.violations[:10]]
    if args.vertices:
        verts = core_vertices_convex(v)
        items += [("vertex_count", len(verts))] + [(f"vertex.{i}", p) for i, p in enumerate(verts, 1)]
    if not items:
        raise UsageError("core needs one of --event, --member, --audit-exactness, --vertices")
    rep.section(f"core of {name}", items)


def cmd_invariants(doc, args, rep):
    name, theta = _map(doc, args)
    s = invariant_structure(theta)
    rep.section(f"invariant sets of {name}", [
        ("count", len(s.sets)),
        ("sets", " ".join(doc.space.format(b) for b in s.sets)),
        ("atoms", " ".join(doc.space.format(a) for a in s.atoms)),
    ])


def cmd_check_invariance(doc, args, rep):
    cname, mu = _capacity(doc, args)
    mname, theta = _map(doc, args)
    r = is_invariant_capacity(mu, theta)
    items = [("invariant", r.invariant), ("witness", doc.space.format(r.witness) if r.witness is not None else None),
             ("conjugate_agrees", conjugate_invariance_check(mu, theta))]
    if args.rv and r.invariant:
        c = choquet_invariance_check(mu, theta, _rv(doc, args.rv))
        items += [("choquet_preserved", c.holds), ("choquet_original", c.original), ("choquet_shifted", c.shifted)]
    rep.section(f"{cname} under {mname}", items)


def cmd_ergodic(doc, args, rep):
    cname, mu = _capacity(doc, args)
    mname, theta = _map(doc, args)
    r = ergodicity_classify(mu, theta)
    f = doc.space.format
    rep.section(f"ergodicity of {cname} under {mname}", [
        ("invariant", r.invariant),
        ("values", r.values),
        ("cond_i", r.cond_i),
        ("cond_ii", r.cond_ii),
        ("witness_i", f(r.witness_i) if r.witness_i is not None else None),
        ("witness_ii", f(r.witness_ii) if r.witness_ii is not None else None),
        ("weak_ergodic", r.weak_ergodic),
        ("ergodic", r.ergodic),
    ])
    rep.summary = f"weak_ergodic={fmt(r.weak_ergodic)} ergodic={fmt(r.ergodic)}"


def cmd_orbit_average(doc, args, rep):
    mname, theta = _map(doc, args)
    xi = _rv(doc, args.rv)
    avg = orbit_average(theta, xi)
    items = [(f"limit.{doc.space.labels[i]}", f"{c} tail={t} period={p}")
             for i, (c, t, p) in enumerate(zip(avg.limits, avg.tail_start, avg.period))]
    if args.capacity is not None or len(doc.capacities) == 1:
        cname, mu = _capacity(doc, args)
        q = quasi_sure_constant(mu, avg.as_variable(doc.space))
        items += [("quasi_sure_constant", q.value is not None), ("constant", q.value),
                  ("exceptional", doc.space.format(q.exceptional))]
    rep.section(f"orbit averages of {args.rv} under {mname}", items)


def cmd_visit_frequency(doc, args, rep):
    mname, theta = _map(doc, args)
    try:
        start = doc.space.index(args.start)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    mu = visit_frequency_capacity(theta, start)
    rep.section(f"visit frequencies from {args.start} under {mname}",
                [(doc.space.format(1 << i), mu(1 << i)) for i in range(doc.space.n)])


def cmd_independence(doc, args, rep):
    cname, mu = _capacity(doc, args)
    ys, names = _vars(doc, args.vars)
    f = doc.space.format
    v = rvs_independent(mu, ys)
    items = [("variables", ",".join(names)), ("independent", v.independent)]
    if not v.independent:
        items += [("witness", " ".join(f(e) for e in v.witness)), ("witness_joint", v.joint),
                  ("witness_product", v.product)]
    rep.section(f"independence under {cname}", items)
    if args.split is not None:
        try:
            b = block_independent(mu, ys, args.split)
        except CapacityError as exc:
            raise UsageError(str(exc)) from None
        items = [("split", args.split), ("blocks_independent", b.independent)]
        if not b.independent:
            items += [("block_witness", " ".join(f(e) for e in b.witness)), ("block_joint", b.joint),
                      ("block_product", b.product)]
        rep.section("block independence", items)
    if args.identical is not None:
        parts = args.identical.split(";")
        if len(parts) != 2:
            raise UsageError("--identical takes two groups separated by ';', e.g. 'Y1,Y2;Y3,Y4'")
        xs, _ = _vars(doc, parts[0])
        zs, _ = _vars(doc, parts[1])
        try:
            d = identically_distributed(mu, xs, zs)
        except CapacityError as exc:
            raise UsageError(str(exc)) from None
        items = [("identical", d.identical)]
        if not d.identical:
            items += [("distribution_witness", "{" + ", ".join(fmt(t) for t in d.witness) + "}"),
                      ("first", d.first), ("second", d.second)]
        rep.section(f"distribution of {parts[0]} versus {parts[1]}", items)
    if args.zero_one:
        z = zero_one_audit(mu, sigma_of(ys))
        items = [("self_independent", z.self_independent), ("zero_one", z.zero_one),
                 ("complement_null", z.complement_null), ("zero_one_law_holds", z.holds)]
        rep.section("zero-one pivot", items)


def _process(doc):
    if doc.process is None:
        raise UsageError("document has no process block")
    return doc.process


def cmd_stationary(doc, args, rep):
    cname, mu = _capacity(doc, args)
    s = stationarity_check(mu, _process(doc))
    items = [("horizon", doc.process.horizon), ("stationary", s.stationary)]
    if s.witness is not None:
        n, k, a = s.witness
        items += [("window_start", n), ("window_length", k + 1),
                  ("witness", "{" + ", ".join(fmt(t) for t in a) + "}"), ("first", s.first), ("second", s.second)]
    rep.section(f"stationarity under {cname}", items)


def cmd_shift_audit(doc, args, rep):
    cname, mu = _capacity(doc, args)
    a = shift_reduction_audit(mu, _process(doc))
    items = [("stationary", a.stationary), ("shift_invariant", a.shift_invariant), ("agree", a.agree),
             ("cylinders_checked", a.cylinders_checked)]
    if a.cylinder_witness is not None:
        m, h = a.cylinder_witness
        items += [("cylinder_depth", m), ("cylinder", "{" + ", ".join(fmt(t) for t in h) + "}")]
    if a.translated is not None:
        items += [("translated_depth", a.translated[0]), ("aligned", a.aligned)]
    rep.section(f"shift reduction under {cname}", items)


def cmd_ellsberg(doc, args, rep):
    points = default_report_points(args.n) if args.report_points is None else tuple(
        int(p) for p in args.report_points.split(",") if p.strip())
    try:
        cfg = SimulationConfig(Fraction(args.true), args.n, args.seed, points, (Fraction(args.low), Fraction(args.high)))
        report = slln_monte_carlo(cfg, workers=args.workers)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    lines = report.lines()
    cut = lines.index("series:")
    rep.section("ellsberg urn", [tuple(line.split("=", 1)) for line in lines[:cut]])
    rep.trailer = "\n".join(lines[cut:]) + "\n"
    if args.series_out:
        Path(args.series_out).write_text("\n".join(lines[cut + 1:]) + "\n", encoding="utf-8")


def cmd_audit(doc, args, rep):
    try:
        out = harness.run_audit(args.theorem, args.n, args.count, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep.section(f"audit {args.theorem}", [tuple(line.split("=", 1)) for line in out.lines()])
    if out.failures and args.dump_dir:
        d = Path(args.dump_dir)
        d.mkdir(parents=True, exist_ok=True)
        for fail in out.failures:
            (d / f"{args.theorem}-seed{args.seed}-{fail.index}.spec").write_text(
                f"# {fail.message}\n" + fail.witness, encoding="utf-8")
    rep.summary = f"{out.passes} passed, {out.skips} skipped, {len(out.failures)} failed of {out.instances}"
    if out.failures:
        rep.exit_code = 1


def cmd_search(doc, args, rep):
    try:
        w = harness.search_counterexample(args.target, args.budget, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    items = [("target", args.target), ("budget", args.budget), ("seed", args.seed), ("found", w is not None)]
    if w is not None:
        items += [("index", w.index), ("witness_digest", w.document.digest())]
        rep.trailer = w.text
        if args.out:
            Path(args.out).write_text(w.text, encoding="utf-8")
    rep.section("counterexample search", items)


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "conjugate": cmd_conjugate,
    "choquet": cmd_choquet,
    "core": cmd_core,
    "invariants": cmd_invariants,
    "check-invariance": cmd_check_invariance,
    "ergodic": cmd_ergodic,
    "orbit-average": cmd_orbit_average,
    "visit-frequency": cmd_visit_frequency,
    "independence": cmd_independence,
    "stationary": cmd_stationary,
    "shift-audit": cmd_shift_audit,
    "ellsberg": cmd_ellsberg,
    "audit": cmd_audit,
    "search": cmd_search,
}
NO_SPEC = {"ellsberg", "audit", "search"}


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", help="bare key=value output")
    common.add_argument("--expect", action="append", default=[], metavar="KEY[=VALUE]",
                        help="exit 1 unless the report has KEY=true (or KEY=VALUE); not-KEY expects false")
    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("spec", help="instance file")
    cap = argparse.ArgumentParser(add_help=False)
    cap.add_argument("--capacity", help="capacity name (optional when there is only one)")
    mp = argparse.ArgumentParser(add_help=False)
    mp.add_argument("--map", help="map name (optional when there is only one)")

    parser = argparse.ArgumentParser(prog="capergodic", description="Exact computations with capacities on finite spaces.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, parents, help_text):
        return sub.add_parser(name, parents=[common] + parents, help=help_text)

    add("validate", [spec, cap], "parse and validate every block")
    add("classify", [spec, cap], "concave, convex, sub/superadditive, additive")
    add("conjugate", [spec, cap], "table of the conjugate capacity")
    p = add("choquet", [spec, cap], "Choquet integral of a random variable")
    p.add_argument("--rv", required=True)
    p.add_argument("--layers", action="store_true")
    p = add("core", [spec, cap], "core of a lower probability")
    p.add_argument("--event")
    p.add_argument("--member", help="probability vector to test for membership")
    p.add_argument("--audit-exactness", action="store_true")
    p.add_argument("--vertices", action="store_true")
    add("invariants", [spec, mp], "invariant sets and atoms of a map")
    p = add("check-invariance", [spec, cap, mp], "whether a map preserves a capacity")
    p.add_argument("--rv", help="also compare Choquet integrals of rv and rv after the map")
    add("ergodic", [spec, cap, mp], "ergodicity conditions")
    p = add("orbit-average", [spec, cap, mp], "exact Cesàro limits along orbits")
    p.add_argument("--rv", required=True)
    p = add("visit-frequency", [spec, mp], "visit-frequency capacity of one orbit")
    p.add_argument("--from", dest="start", required=True, metavar="POINT")
    p = add("independence", [spec, cap], "independence of random variables")
    p.add_argument("--vars", help="comma-separated names; default: the process variables")
    p.add_argument("--split", type=int)
    p.add_argument("--identical", metavar="'X1,X2;Z1,Z2'")
    p.add_argument("--zero-one", action="store_true")
    add("stationary", [spec, cap], "stationarity of the process block")
    add("shift-audit", [spec, cap], "stationarity versus shift-invariance on cylinders")
    p = add("ellsberg", [], "Monte-Carlo law of large numbers for the Ellsberg urn")
    p.add_argument("--low", default="3/10")
    p.add_argument("--high", default="7/10")
    p.add_argument("--true", default="2/5")
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--report-points", help="comma-separated sample counts")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--series-out", help="write the n,mean series to this file")
    p = add("audit", [], "theorem audit over generated invariant instances")
    p.add_argument("--theorem", required=True, choices=harness.THEOREMS)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--dump-dir", help="write failing instances here")
    p = add("search", [], "search for an instance accepted by a named predicate")
    p.add_argument("--target", required=True, choices=harness.TARGETS)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="write the witness here")
    return parser


def _echo(argv) -> str:
    return " ".join(["capergodic"] + [os.path.basename(a) if a.endswith(".spec") else a for a in argv])


def _check_expectations(rep: Report, expectations) -> None:
    values = rep.values()
    for exp in expectations:
        want = "true"
        key = exp
        if "=" in exp:
            key, want = exp.split("=", 1)
        elif exp.startswith("not-"):
            key, want = exp[4:], "false"
        key = key.replace("-", "_")
        if key not in values:
            raise UsageError(f"--expect: the report has no key {key!r}")
        if values[key] != want:
            rep.sections.append(("expectation failed", [(f"expected.{key}", want), (f"actual.{key}", values[key])]))
            rep.exit_code = 1


def dispatch(doc: SpecDocument | None, command: str, args: argparse.Namespace, echo: str = "") -> Report:
    """Run one command on a parsed document and build its report."""
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    rep = Report(echo or command)
    if doc is not None:
        rep.digest = doc.digest()
        rep.source = os.path.basename(args.spec) if getattr(args, "spec", None) else "-"
    if command in NO_SPEC and getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    COMMANDS[command](doc, args, rep)
    _check_expectations(rep, getattr(args, "expect", []))
    return rep


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = None if args.command in NO_SPEC else load(args.spec)
        rep = dispatch(doc, args.command, args, _echo(argv))
    except (ParseError, ValidationError) as exc:
        print(f"capergodic: {args.spec}: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"capergodic: {exc}", file=err)
        return 2
    except (CapacityError, ValueError, KeyError) as exc:
        print(f"capergodic: {exc}", file=err)
        return 2
    out.write(rep.render(args.machine))
    return rep.exit_code


def main() -> None:
    sys.exit(run())
