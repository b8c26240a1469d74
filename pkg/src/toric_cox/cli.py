"""Command-line interface: ``toric-cox <command> <fan> ...``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input
error. Output is JSON by default; ``--format text`` renders the same
object. Add ``--timing`` to include the wall time (it makes the output
nondeterministic, hence opt-in).
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from pathlib import Path
from typing import Optional, Sequence

from . import cohomology, io
from .charts import chart_monoid, compare_cox_toric
from .cones import Fan, classify_fan, generate_random_fan
from .graded import (
    GradedSubmodule,
    NotBig,
    cox_ring,
    irrelevant_ideal,
    saturate,
    torsion_submodule,
)
from .lattice import Subgroup, subgroup_index
from .picard import (
    TheoremViolation,
    build_diagram,
    fan_classification_theorems,
    picard_group,
    picard_via_polytopes,
)
from .polynomials import format_monomial, parse_polynomial


class UsageError(ValueError):
    pass


class CheckFailed(Exception):
    """Raised with the results when a mathematical check fails (exit 1)."""

    def __init__(self, results: dict):
        super().__init__("check failed")
        self.results = results


# ---------------------------------------------------------- arguments


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"cannot read integer vector {text!r}") from None


def _vectors(text: str, rank: int) -> list[tuple[int, ...]]:
    """``"1;-4"`` or ``"1,-4"`` for rank one, ``"1,0;0,1"`` in general."""
    text = text.strip()
    if not text:
        return []
    if ";" in text:
        out = [_ints(p) for p in text.split(";") if p.strip()]
    elif rank == 1:
        out = [(v,) for v in _ints(text)]
    else:
        out = [_ints(text)]
    for v in out:
        if len(v) != rank:
            raise UsageError(f"vector {list(v)} has {len(v)} entries, the class group has rank {rank}")
    return out


def _twist(text: str, rank: int) -> tuple[int, ...]:
    v = _ints(text)
    if len(v) != rank:
        raise UsageError(f"twist {text!r} needs {rank} entries")
    return v


def _range(text: str, rank: int) -> list[tuple[int, ...]]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise UsageError(f"range must look like lo..hi, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    import itertools

    return [tuple(p) for p in itertools.product(range(lo, hi + 1), repeat=rank)]


def _load(arg: str):
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", io.NormalizationWarning)
            doc = io.load_fan(arg)
        fan = doc.to_fan()
    except FileNotFoundError as e:
        raise UsageError(str(e)) from None
    except ValueError as e:
        raise UsageError(f"{arg}: {e}") from None
    text = io.resolve_fan_path(arg).read_text()
    return doc, fan, text, [str(w.message) for w in caught]


def _group_rank(d) -> int:
    return len(d.A.moduli)


# ----------------------------------------------------------- commands


def cmd_classify(args, fan: Fan) -> dict:
    d = build_diagram(fan)
    flags = classify_fan(fan)
    pic = picard_group(d)
    theorems = fan_classification_theorems(d, flags, raise_on_violation=False)
    out = {
        "flags": flags.as_dict(),
        "diagram": {"rays": [list(r) for r in fan.rays], "A": d.A.describe(),
                    "ray_degrees": [list(a) for a in d.alpha]},
        "picard": {"group": pic.as_group().describe(), "generators": [list(g) for g in pic.generators],
                   "index": _index(pic)},
        "theorems": theorems,
    }
    if not theorems["all_hold"]:
        raise CheckFailed(out)
    return out


def _index(s: Subgroup):
    i = subgroup_index(s)
    return "infinite" if i == float("inf") else int(i)


def cmd_picard(args, fan: Fan) -> dict:
    d = build_diagram(fan)
    pic = picard_group(d)
    cmp = picard_via_polytopes(d)
    out = {
        "A": d.A.describe(),
        "intersection_route": {"group": pic.as_group().describe(), "generators": [list(g) for g in pic.generators],
                               "index": _index(pic)},
        "polytope_route": {"group": cmp.group.describe(),
                           "witness_images": [list(g) for g in cmp.generator_images]},
        "well_defined": cmp.well_defined,
        "onto": cmp.onto,
        "isomorphic": cmp.isomorphic,
        "agree": cmp.ok,
    }
    if not cmp.ok:
        raise CheckFailed(out)
    return out


def _ring(fan: Fan, subgroup: Optional[str]):
    d = build_diagram(fan)
    B = None
    if subgroup:
        B = Subgroup(d.A, _vectors(subgroup, _group_rank(d)))
    try:
        return cox_ring(d, B)
    except NotBig as e:
        raise UsageError(str(e)) from None


def cmd_cox(args, fan: Fan) -> dict:
    r = _ring(fan, args.subgroup)
    I = irrelevant_ideal(r)
    return {
        "variables": [f"Z_{i}" for i in range(r.nvars)],
        "degrees": [list(x) for x in r.degrees],
        "A": r.diagram.A.describe(),
        "B_generators": [list(g) for g in r.grading_group.generators],
        "B_index": _index(r.grading_group),
        "irrelevant_ideal": [format_monomial(next(iter(g))[1]) if len(g) == 1 else str(g) for g in I.groebner],
        "degree_monoid_generators": [format_monomial(m) for m in r.monoid_generators],
    }


def cmd_charts(args, fan: Fan) -> dict:
    d = build_diagram(fan)
    charts = []
    for s in fan.max_cones:
        cm = chart_monoid(d, s)
        charts.append({"cone": sorted(s), "hilbert_basis": [list(v) for v in cm.hilbert_basis],
                       "units": [list(v) for v in cm.units], "stable": cm.stable})
    cmp = compare_cox_toric(d)
    out = {"charts": charts, "cox_vs_toric": cmp}
    if cmp["verdict"] == "mismatch":
        raise CheckFailed(out)
    return out


def _module(path: str, ring) -> GradedSubmodule:
    try:
        return io.parse_module(Path(path).read_text(), ring)
    except OSError as e:
        raise UsageError(str(e)) from None
    except ValueError as e:
        raise UsageError(f"{path}: {e}") from None


def _ideal(spec: str, ring) -> GradedSubmodule:
    if spec == "irrelevant":
        return irrelevant_ideal(ring)
    polys = [parse_polynomial(p, ring.nvars) for p in spec.replace(";", ",").split(",") if p.strip()]
    return GradedSubmodule.ideal(ring, polys)


def cmd_saturate(args, fan: Fan) -> dict:
    r = _ring(fan, args.subgroup)
    n = _module(args.module, r)
    a = _ideal(args.ideal, r)
    sat = saturate(n, a)
    return {"input": n.describe(), "ideal": a.describe(), "saturation": sat.describe(),
            "torsion_preimage": torsion_submodule(n, a).describe(), "was_saturated": sat == n}


def cmd_sheaf_eq(args, fan: Fan) -> dict:
    from .charts import xi_equal, xi_equal_chartwise

    r = _ring(fan, args.subgroup)
    a, b = _module(args.a, r), _module(args.b, r)
    if a.shifts != b.shifts:
        raise UsageError("the two modules live in different free modules")
    eq = xi_equal(a, b)
    return {"verdict": "EQUAL" if eq else "DIFFERENT", "chartwise": xi_equal_chartwise(a, b)}


def _box(args) -> Optional[int]:
    return args.box


def cmd_cohomology(args, fan: Fan) -> dict:
    d = build_diagram(fan)
    k = _group_rank(d)
    shifts = _vectors(args.shifts, k) or [tuple([0] * k)]
    t = _twist(args.twist, k)
    h, stable, r = cohomology.sheaf_cohomology(d, shifts, t, _box(args))
    hl, stable2, _ = cohomology.local_cohomology(d, shifts, t, r)
    return {"shifts": [list(s) for s in shifts], "twist": list(t), "sheaf": list(h), "local": list(hl),
            "box_radius": r, "stable": stable and stable2}


def cmd_sg_verify(args, fan: Fan) -> dict:
    d = build_diagram(fan)
    k = _group_rank(d)
    shifts = _vectors(args.shifts, k) or [tuple([0] * k)]
    twists = _range(args.range, k)
    rep = cohomology.serre_grothendieck_verify(d, shifts, twists, _box(args), raise_on_violation=False)
    out = rep.as_dict()
    if not rep.ok:
        raise CheckFailed(out)
    return out


def cmd_fixtures(args) -> dict:
    out = []
    for name in io.list_fixtures():
        doc = io.parse_fan(io.fixture_path(name).read_text())
        out.append({"name": name, "rays": [list(r) for r in doc.rays], "max_cones": [list(c) for c in doc.max_cones]})
    return {"fixtures": out}


def cmd_random_fan(args) -> dict:
    fan = generate_random_fan(args.seed, args.dim, args.max_rays, args.complete)
    doc = io.FanDocument(fan.ambient_dim, fan.rays, tuple(tuple(sorted(c)) for c in fan.max_cones),
                         f"random-{args.dim}d-{args.seed}")
    import json

    return json.loads(doc.to_json())


# ------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toric-cox", description="Exact toric geometry from fans.")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    sub = p.add_subparsers(dest="command", required=True)

    def fan_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("fan", help="fan file or fixture name")
        sp.set_defaults(fn=fn, needs_fan=True)
        return sp

    fan_cmd("classify", cmd_classify, "fan flags, diagram, Pic and the classification checks")
    fan_cmd("picard", cmd_picard, "Pic by both routes with the witness map")
    sp = fan_cmd("cox", cmd_cox, "Cox ring, irrelevant ideal, degree monoid")
    sp.add_argument("--subgroup", help="generators of B, e.g. '2' or '1,0;0,2'")
    fan_cmd("charts", cmd_charts, "chart monoids and the Cox-vs-toric comparison")
    sp = fan_cmd("saturate", cmd_saturate, "saturate a submodule")
    sp.add_argument("--module", required=True, help="*.mod.json file")
    sp.add_argument("--ideal", default="irrelevant", help="'irrelevant' or polynomials separated by ','")
    sp.add_argument("--subgroup")
    sp = fan_cmd("sheaf-eq", cmd_sheaf_eq, "compare the sheaves of two submodules")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--subgroup")
    sp = fan_cmd("cohomology", cmd_cohomology, "sheaf and local cohomology of a shifted-free module")
    sp.add_argument("--shifts", default="")
    sp.add_argument("--twist", required=True)
    sp.add_argument("--box", type=int)
    sp = fan_cmd("sg-verify", cmd_sg_verify, "check the Serre-Grothendieck correspondence degree-wise")
    sp.add_argument("--shifts", default="")
    sp.add_argument("--range", required=True, help="lo..hi, applied to every coordinate")
    sp.add_argument("--box", type=int)
    sp = sub.add_parser("fixtures", help="list the shipped fans")
    sp.set_defaults(fn=cmd_fixtures, needs_fan=False)
    sp = sub.add_parser("random-fan", help="emit a random fan document")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--max-rays", type=int, default=6)
    sp.add_argument("--complete", action="store_true")
    sp.set_defaults(fn=cmd_random_fan, needs_fan=False)
    return p


_VALUE_FLAGS = ("--range", "--twist", "--shifts", "--subgroup")


def _join_values(argv: list[str]) -> list[str]:
    """``--range -5..5`` would be read as two options; glue such values on."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except SystemExit as e:
        return int(e.code or 0)
    start = time.perf_counter()
    code = 0
    warns: list[str] = []
    texts: list[str] = []
    try:
        if args.needs_fan:
            _, fan, text, warns = _load(args.fan)
            texts.append(text)
            for attr in ("module", "a", "b"):
                path = getattr(args, attr, None)
                if path and Path(path).is_file():
                    texts.append(Path(path).read_text())
            results = args.fn(args, fan)
        else:
            results = args.fn(args)
    except UsageError as e:
        print(f"toric-cox: error: {e}", file=sys.stderr)
        return 2
    except (CheckFailed, TheoremViolation, cohomology.CorrespondenceViolation) as e:
        results = e.results if isinstance(e, CheckFailed) else {"error": str(e)}
        code = 1
    except ValueError as e:
        # malformed polynomials, vectors or module documents
        print(f"toric-cox: error: {e}", file=sys.stderr)
        return 2
    report = io.RunReport([args.command] + argv[argv.index(args.command) + 1:], io.digest(*texts), results,
                          time.perf_counter() - start if args.timing else None, warns)
    sys.stdout.write(io.emit_report(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
