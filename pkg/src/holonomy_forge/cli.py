"""Command-line surface.

Subcommands: algebra build|bracket-table, berger check, wirr check,
metric build, holonomy compute, verify campaign.  Exit codes: 0 success,
1 verdict mismatch, 2 input or validation error.  Output is canonical
JSON (sorted keys), so identical inputs and seeds give byte-identical
output.
"""

import argparse
import hashlib
import json
import os
import sys
import time

from . import jsonio
from .ambient import ValidationError
from .families import spec_from_json, build_family
from .liealg import is_special_su
from .invariance import check_weak_irreducibility
from .curvature import berger_check
from .metrics import build_metric_model
from .holonomy import holonomy_at_origin

VERSION = "0.1.0"


class InputError(Exception):
    pass


def _load_json(path):
    try:
        with open(path, "r") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError("file not found: %s" % path)
    except json.JSONDecodeError as e:
        raise InputError("malformed JSON in %s: %s" % (path, e))


def _load_algebra(path):
    """Accept a family spec, an explicit basis, or named standard
    subalgebras ({"n": 1, "standard": ["N1", "C"]} or entries like
    {"tag": "sod", "lo": 1, "hi": 2})."""
    data = _load_json(path)
    if "family" in data and "basis" not in data:
        return build_family(spec_from_json(data))
    if "standard" in data:
        from .ambient import standard_subalgebra
        from .liealg import algebra_from_tuples

        n = data["n"]
        tuples = []
        for entry in data["standard"]:
            if isinstance(entry, str):
                tuples += standard_subalgebra(entry, n)
            else:
                kw = {k: entry[k] for k in ("lo", "hi", "m") if k in entry}
                tuples += standard_subalgebra(entry["tag"], n, **kw)
        return algebra_from_tuples(n, tuples)
    return jsonio.algebra_from_json(data)


def _emit(obj, out):
    text = jsonio.dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_algebra_build(args):
    alg = _load_algebra(args.spec)
    _emit(jsonio.algebra_to_json(alg), args.out)
    return 0


def cmd_algebra_bracket_table(args):
    alg = _load_algebra(args.spec)
    table = alg.structure_constants()
    out = {
        "n": alg.n,
        "dim": alg.dim,
        "structure_constants": [
            [[jsonio.q_to_json(x) for x in row] for row in table_i]
            for table_i in table
        ],
    }
    _emit(out, args.out)
    return 0


def cmd_berger_check(args):
    alg = _load_algebra(args.algebra)
    rep = berger_check(alg)
    _emit(jsonio.berger_report_to_json(rep), args.out)
    return 0


def cmd_wirr_check(args):
    alg = _load_algebra(args.algebra)
    verdict = check_weak_irreducibility(alg, probe_count=args.probes, seed=args.seed)
    _emit(jsonio.verdict_to_json(verdict), args.out)
    return 0


def cmd_metric_build(args):
    spec = spec_from_json(_load_json(args.spec))
    model, _ = build_metric_model(spec)
    _emit(jsonio.metric_to_json(model), args.out)
    return 0


def cmd_holonomy_compute(args):
    model = jsonio.metric_from_json(_load_json(args.metric))
    target = None
    if model.spec is not None:
        target = build_family(model.spec)
    cache_dir = os.environ.get("HOLONOMY_FORGE_CACHE")
    cache_path = None
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        key = hashlib.sha256(
            (jsonio.dumps(jsonio.metric_to_json(model)) + repr(args.max_order)).encode()
        ).hexdigest()
        cache_path = os.path.join(cache_dir, "holonomy-%s.json" % key)
        if os.path.exists(cache_path):
            with open(cache_path) as fh:
                _emit(json.load(fh), args.out)
            return 0
    rep = holonomy_at_origin(model, max_order=args.max_order, target=target)
    payload = jsonio.holonomy_report_to_json(rep)
    if cache_path:
        with open(cache_path, "w") as fh:
            fh.write(jsonio.dumps(payload))
    _emit(payload, args.out)
    return 0


def run_case(case):
    """Execute one VerificationCase dict; returns the certificate dict."""
    t0 = time.time()
    case_id = case.get("id", "<unnamed>")
    spec = spec_from_json(case["family"])
    expect = case.get("expect", {})
    probes = case.get("probes", 64)
    seed = case.get("seed", 0)
    max_order = case.get("max_order")
    alg = build_family(spec)
    computed = {"dim": alg.dim}
    checks = {}

    def record(name, got, want):
        computed[name] = got
        checks[name] = (got == want)

    if "dim" in expect:
        checks["dim"] = alg.dim == expect["dim"]
    if "berger" in expect or "dim_R" in expect:
        rep = berger_check(alg)
        if "berger" in expect:
            record("berger", rep["berger"], expect["berger"])
        if "dim_R" in expect:
            record("dim_R", rep["dim_R"], expect["dim_R"])
    if "weakly_irreducible" in expect:
        verdict = check_weak_irreducibility(alg, probe_count=probes, seed=seed)
        wanted = "WeaklyIrreducible" if expect["weakly_irreducible"] else "NotWeaklyIrreducible"
        checks["weakly_irreducible"] = verdict.status == wanted
        computed["wirr_status"] = verdict.status
        if verdict.certificate:
            computed["wirr_certificate"] = verdict.certificate
    if "special_su" in expect:
        record("special_su", is_special_su(alg), expect["special_su"])
    if "holonomy" in expect:
        model, target = build_metric_model(spec)
        rep = holonomy_at_origin(model, max_order=max_order, target=target)
        record("holonomy", rep.verdict["relation"], expect["holonomy"])
        computed["holonomy_dims_per_order"] = rep.dims_per_order
        computed["holonomy_stabilized"] = rep.stabilized
        if not rep.stabilized:
            checks["holonomy_stabilized"] = False
    ok = all(checks.values())
    return {
        "id": case_id,
        "family": spec.family,
        "pass": ok,
        "checks": {k: bool(v) for k, v in sorted(checks.items())},
        "computed": computed,
        "expected": expect,
        "seed": seed,
        "probes": probes,
        "tool_version": VERSION,
        "wall_clock_s": round(time.time() - t0, 3),
    }


def cmd_verify(args):
    data = _load_json(args.campaign)
    cases = data.get("cases")
    if not isinstance(cases, list) or not cases:
        raise InputError("campaign JSON must have a nonempty 'cases' list")
    ids = [c.get("id") for c in cases]
    if len(set(ids)) != len(ids) or None in ids:
        raise InputError("case ids must be present and unique")
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(run_case, cases))
    else:
        results = [run_case(c) for c in cases]
    results.sort(key=lambda r: r["id"])
    all_ok = True
    for r in results:
        status = "PASS" if r["pass"] else "FAIL"
        all_ok = all_ok and r["pass"]
        detail = " ".join("%s=%s" % (k, "ok" if v else "MISMATCH")
                          for k, v in sorted(r["checks"].items()))
        print("[%s] %s (%s) %s" % (status, r["id"], r["family"], detail))
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for r in results:
            with open(os.path.join(args.out_dir, "%s.json" % r["id"]), "w") as fh:
                fh.write(jsonio.dumps(r))
    return 0 if all_ok else 1


def build_parser():
    p = argparse.ArgumentParser(prog="holonomy-forge",
                                description="exact Lie-algebra, curvature and holonomy toolkit "
                                            "for signature (2, 2n+2)")
    sub = p.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="family algebra operations")
    alg_sub = alg.add_subparsers(dest="subcommand", required=True)
    b = alg_sub.add_parser("build", help="build a family algebra from a spec file")
    b.add_argument("spec")
    b.add_argument("--out")
    b.set_defaults(func=cmd_algebra_build)
    bt = alg_sub.add_parser("bracket-table", help="structure constants of a family algebra")
    bt.add_argument("spec")
    bt.add_argument("--out")
    bt.set_defaults(func=cmd_algebra_bracket_table)

    ber = sub.add_parser("berger", help="curvature space and Berger verdict")
    ber_sub = ber.add_subparsers(dest="subcommand", required=True)
    bc = ber_sub.add_parser("check")
    bc.add_argument("algebra")
    bc.add_argument("--out")
    bc.set_defaults(func=cmd_berger_check)

    wirr = sub.add_parser("wirr", help="weak irreducibility search")
    wirr_sub = wirr.add_subparsers(dest="subcommand", required=True)
    wc = wirr_sub.add_parser("check")
    wc.add_argument("algebra")
    wc.add_argument("--probes", type=int, default=64)
    wc.add_argument("--seed", type=int, default=0)
    wc.add_argument("--out")
    wc.set_defaults(func=cmd_wirr_check)

    met = sub.add_parser("metric", help="polynomial metric construction")
    met_sub = met.add_subparsers(dest="subcommand", required=True)
    mb = met_sub.add_parser("build")
    mb.add_argument("spec")
    mb.add_argument("--out")
    mb.set_defaults(func=cmd_metric_build)

    hol = sub.add_parser("holonomy", help="holonomy algebra at the origin")
    hol_sub = hol.add_subparsers(dest="subcommand", required=True)
    hc = hol_sub.add_parser("compute")
    hc.add_argument("metric")
    hc.add_argument("--max-order", type=int, default=None)
    hc.add_argument("--out")
    hc.set_defaults(func=cmd_holonomy_compute)

    ver = sub.add_parser("verify", help="run a verification campaign")
    ver.add_argument("campaign")
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--out-dir")
    ver.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValidationError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError, AttributeError, IndexError) as e:
        print("error: malformed input (%s: %s)" % (type(e).__name__, e), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
