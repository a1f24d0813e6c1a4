"""Command-line front-end and JSON reporting.

Subcommands: verify | extend | closure | spectrum | seam | algebra | zeta |
report.  Every run echoes its configuration, emits one result per check with
status pass/fail/unresolved, and exits 0 when everything passed, 1 on any
failure, 2 when something could not be decided (unresolved spectra, capped
closures, bad configuration).
"""

import argparse
import json
import os
import platform
import sys
import time

from .classical_reps import (
    burau_reduced,
    lkb,
    lkb_nonstandard_tau,
    nonstandard_block_tau,
    standard_extension,
    standard_rep,
    unreduced_burau_extension,
)
from .errors import (
    CapExceeded,
    ConfigParseError,
    NecklaceError,
    ParameterDegenerate,
    SpectrumNotResolved,
)
from .local_reps import BVS, bvs_catalog, local_necklace_rep, conjecture_ratio, ising
from .loop_actions import lb_generators, zeta, zeta_kernel_check
from .presentations import (
    loop_braid_relations,
    necklace_relations_full,
    symmetric_group_assignment,
    verify,
)
from .scalar import parse_scalar, var
from .tl_chain import (
    build_chain,
    build_seam,
    gamma_spectrum_table,
    seamed_standard_extension,
)
from .twisted_algebras import (
    nes_assignment,
    nes_conjugation_identities,
    nes_local_assignment,
    nes_matrix_model,
    nes_mod_n_closure_check,
    quat_assignment,
    quat_conjugation_table,
    quat_hom_check,
)

VERSION = "0.1.0"

VERIFY_FAMILIES = (
    "symmetric",
    "standard",
    "block-tau",
    "burau",
    "burau-reduced",
    "lkb",
    "lkb-nonstandard",
    "ising",
    "gaussian",
    "nes",
    "quaternionic",
    "seamed-tl",
    "loop",
)

EXTEND_REPS = (
    "standard",
    "block-tau",
    "burau",
    "burau-reduced",
    "lkb",
    "seamed-tl",
)


class RunConfig:
    """One CLI invocation.  Scalar parameters stay strings here so the echo
    in the report is verbatim; they are parsed on use."""

    FIELDS = (
        "command",
        "n",
        "m",
        "family",
        "rep",
        "mode",
        "branch",
        "check",
        "bvs",
        "params",
        "cap",
        "budget_dim",
        "out",
        "checkpoint",
        "seed",
        "jobs",
        "path",
    )

    def __init__(self, **kw):
        for f in self.FIELDS:
            setattr(self, f, kw.pop(f, None))
        if kw:
            raise ConfigParseError("unknown config fields: %s" % sorted(kw))
        self.params = dict(self.params or {})
        for key in ("cap", "budget_dim"):
            value = getattr(self, key)
            if value is not None and value <= 0:
                raise ConfigParseError("%s must be positive" % key)

    def scalar(self, name, default=None):
        """Parse parameter `name`; default is a fresh variable of that name."""
        raw = self.params.get(name)
        if raw is None:
            return default if default is not None else var(name)
        try:
            return parse_scalar(raw)
        except NecklaceError as e:
            raise ConfigParseError("parameter %s: %s" % (name, e))

    def int_param(self, name, default):
        raw = self.params.get(name)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            raise ConfigParseError("parameter %s must be an integer" % name)

    def to_json(self):
        return {f: getattr(self, f) for f in self.FIELDS if getattr(self, f) is not None}


class Report:
    """Config echo, per-check results, timings and versions."""

    def __init__(self, config, results, notes=None, timings=None):
        self.config = config
        self.results = results
        self.notes = notes or {}
        self.timings = timings or {}

    @property
    def exit_code(self):
        statuses = {r["status"] for r in self.results}
        if "fail" in statuses:
            return 1
        if "unresolved" in statuses or not self.results:
            return 2
        return 0

    def to_json(self):
        out = {
            "command": self.config.command,
            "config": self.config.to_json(),
            "results": self.results,
            "status": {0: "pass", 1: "fail", 2: "unresolved"}[self.exit_code],
            "timings": self.timings,
            "versions": {
                "necklace": VERSION,
                "python": platform.python_version(),
            },
        }
        if self.notes:
            out["notes"] = self.notes
        return out


def _relation_results(report, prefix=""):
    out = []
    for r in report.results:
        item = {"name": prefix + r["label"], "status": r["status"]}
        if r.get("witness"):
            item["witness"] = r["witness"]
        out.append(item)
    return out


def _bool_results(d, prefix=""):
    return [
        {"name": prefix + k, "status": "pass" if v else "fail"}
        for k, v in d.items()
        if isinstance(v, bool) and k != "ok"
    ]


def _budget(config):
    return config.budget_dim or 4096


# -- subcommand handlers ---------------------------------------------------------

def _necklace_suite(assignment):
    return verify(assignment, necklace_relations_full(assignment.n))


def _build_family(config):
    """(results, notes) for the requested built-in family."""
    fam, n = config.family, config.n
    if fam is None or n is None:
        raise ConfigParseError("verify needs --family and --n")
    if fam == "symmetric":
        report = _necklace_suite(symmetric_group_assignment(n))
        return _relation_results(report), {}
    if fam == "standard":
        ext = standard_extension(standard_rep(n, config.scalar("z")))
        return _relation_results(ext.report), {"flags": _jsonable(ext.flags)}
    if fam == "block-tau":
        ext = nonstandard_block_tau(n, config.scalar("z"), config.scalar("t"))
        return _relation_results(ext.report), {"flags": _jsonable(ext.flags)}
    if fam == "burau":
        ext, extra = unreduced_burau_extension(n, config.scalar("t"), config.scalar("a"))
        return _relation_results(ext.report), {"irreducibility": _jsonable(extra)}
    if fam == "burau-reduced":
        ext = standard_extension(burau_reduced(n, config.scalar("t")))
        return _relation_results(ext.report), {"flags": _jsonable(ext.flags)}
    if fam == "lkb":
        ext = standard_extension(lkb(n, config.scalar("q"), config.scalar("t")))
        return _relation_results(ext.report), {"flags": _jsonable(ext.flags)}
    if fam == "lkb-nonstandard":
        ext = lkb_nonstandard_tau(
            n, config.scalar("q"), config.scalar("t"), config.branch or 0
        )
        return _relation_results(ext.report), {"flags": _jsonable(ext.flags)}
    if fam == "ising":
        report = _necklace_suite(local_necklace_rep(ising(), n, budget=_budget(config)))
        return _relation_results(report), {}
    if fam == "gaussian":
        m = config.m or config.int_param("m", 2)
        report = _necklace_suite(nes_local_assignment(m, n, budget=_budget(config)))
        return _relation_results(report), {"m": m}
    if fam == "nes":
        m = config.m or config.int_param("m", 2)
        report = _necklace_suite(nes_assignment(m, n))
        return _relation_results(report), {"m": m}
    if fam == "quaternionic":
        report = _necklace_suite(quat_assignment(n))
        return _relation_results(report), {}
    if fam == "seamed-tl":
        seam = build_seam(
            build_chain(n, config.scalar("t"), budget=_budget(config)),
            config.scalar("a"),
        )
        results = _bool_results(seam.report, "seam.")
        results += _relation_results(seam.circular_report, "circular.")
        return results, {"y_f": str(seam.y_f), "x": str(seam.x)}
    if fam == "loop":
        report = verify(lb_generators(n), loop_braid_relations(n))
        return _relation_results(report), {}
    raise ConfigParseError(
        "unknown family %r (choose from %s)" % (fam, ", ".join(VERIFY_FAMILIES))
    )


def _cmd_verify(config):
    results, notes = _build_family(config)
    return results, notes


def _cmd_extend(config):
    rep, n = config.rep, config.n
    if rep is None or n is None:
        raise ConfigParseError("extend needs --rep and --n")
    branch = config.branch or 0
    mode = config.mode or "standard"
    if rep == "standard":
        ext = standard_extension(standard_rep(n, config.scalar("z")), branch)
    elif rep == "block-tau":
        ext = nonstandard_block_tau(n, config.scalar("z"), config.scalar("t"))
    elif rep == "burau":
        ext, _ = unreduced_burau_extension(n, config.scalar("t"), config.scalar("a"))
    elif rep == "burau-reduced":
        ext = standard_extension(burau_reduced(n, config.scalar("t")), branch)
    elif rep == "lkb" and mode == "nonstandard":
        ext = lkb_nonstandard_tau(n, config.scalar("q"), config.scalar("t"), branch)
    elif rep == "lkb":
        ext = standard_extension(
            lkb(n, config.scalar("q"), config.scalar("t")), branch
        )
    elif rep == "seamed-tl":
        seam = build_seam(
            build_chain(n, config.scalar("t"), budget=_budget(config)),
            config.scalar("a"),
        )
        ext = seamed_standard_extension(seam, branch=branch)
    else:
        raise ConfigParseError(
            "unknown rep %r (choose from %s)" % (rep, ", ".join(EXTEND_REPS))
        )
    payload = ext.to_json()
    return _relation_results(ext.report), {
        "flags": payload["flags"],
        "matrices": payload["matrices"],
    }


def _load_bvs(name):
    catalog = bvs_catalog()
    if name in catalog:
        return catalog[name]()
    if os.path.exists(name):
        with open(name) as fh:
            try:
                return BVS.from_json(json.load(fh))
            except (ValueError, KeyError) as e:
                raise ConfigParseError("bad braided-vector-space file: %s" % e)
    raise ConfigParseError(
        "unknown braided vector space %r (builtins: %s)"
        % (name, ", ".join(sorted(catalog)))
    )


def _cmd_closure(config):
    if config.bvs is None or config.n is None:
        raise ConfigParseError("closure needs --bvs and --n")
    bvs = _load_bvs(config.bvs)
    resume = False
    if config.checkpoint:
        _write_sidecar(config)
        resume = any(
            os.path.exists("%s-%s.npz" % (config.checkpoint, label))
            for label in ("b", "affine", "nb")
        )

    def progress(msg, *rest):
        print("# %s %s" % (msg, " ".join(map(str, rest))), file=sys.stderr)

    out = conjecture_ratio(
        bvs,
        config.n,
        cap=config.cap or 2_000_000,
        budget=_budget(config),
        checkpoint=config.checkpoint,
        resume=resume,
        progress=progress,
    )
    results = [
        {"name": "ratio_verdict", "status": "pass" if out["verdict"] else "fail"}
    ]
    return results, out


def _write_sidecar(config):
    path = "%s-config.json" % config.checkpoint
    if not os.path.exists(path):
        with open(path, "w") as fh:
            json.dump(config.to_json(), fh, indent=2)


def checkpoint_resume(prefix):
    """Resume an interrupted closure run from its checkpoint prefix.

    The original configuration is read back from the sidecar written when
    checkpointing started; the final order is independent of where the
    interruption happened.
    """
    path = "%s-config.json" % prefix
    if not os.path.exists(path):
        raise ConfigParseError("no closure config found at %s" % path)
    with open(path) as fh:
        config = RunConfig(**json.load(fh))
    config.checkpoint = prefix
    return run(config)


def _cmd_spectrum(config):
    if config.n is None:
        raise ConfigParseError("spectrum needs --n")
    rows = gamma_spectrum_table(config.n, n_min=config.n)
    results = [
        {
            "name": "n=%d l=%d" % (r["n"], r["l"]),
            "status": "pass" if r["matches_reference"] else "fail",
        }
        for r in rows
    ]
    return results, {"rows": rows}


def _cmd_seam(config):
    if config.n is None:
        raise ConfigParseError("seam needs --n")
    chain = build_chain(config.n, config.scalar("t"), budget=_budget(config))
    seam = build_seam(chain, config.scalar("a"))
    results = _bool_results(seam.report, "seam.")
    results += _relation_results(seam.circular_report, "circular.")
    return results, {
        "y_f": str(seam.y_f),
        "x": str(seam.x),
        "loop_scalar": str(chain.loop_scalar),
    }


def _cmd_algebra(config):
    fam, n = config.family, config.n
    if fam is None or n is None:
        raise ConfigParseError("algebra needs --family and --n")
    check = config.check or "all"
    results, notes = [], {}
    if fam == "nes":
        m = config.m or 2
        notes["m"] = m
        if check in ("all", "closure"):
            results += _bool_results(nes_mod_n_closure_check(m, n), "mod_n_closure.")
        if check in ("all", "conjugation"):
            for i in range(1, n + 1):
                results += _bool_results(
                    nes_conjugation_identities(m, n, i), "conjugation[%d]." % i
                )
        if check in ("all", "model"):
            model = nes_matrix_model(m, n, budget=_budget(config))
            results += _bool_results(model.relations_report(), "model.")
        if check in ("all", "suite"):
            results += _relation_results(_necklace_suite(nes_assignment(m, n)), "suite.")
    elif fam == "quaternionic":
        if check in ("all", "hom"):
            results += _bool_results(quat_hom_check(n), "hom.")
        if check in ("all", "table"):
            for i in range(1, n + 1):
                results += _bool_results(
                    quat_conjugation_table(n, i), "table[%d]." % i
                )
    else:
        raise ConfigParseError("unknown algebra family %r (nes, quaternionic)" % fam)
    if not results:
        raise ConfigParseError("unknown check %r" % check)
    return results, notes


def _cmd_zeta(config):
    if config.n is None:
        raise ConfigParseError("zeta needs --n")
    n = config.n
    check = config.check or "all"
    results, notes = [], {}
    if check in ("all", "relations"):
        loop_report = verify(lb_generators(n), loop_braid_relations(n))
        results += _relation_results(loop_report, "loop.")
        necklace_report = _necklace_suite(zeta(n))
        results += _relation_results(necklace_report, "necklace.")
    if check in ("all", "kernel"):
        kernel = zeta_kernel_check(n)
        results += _bool_results(kernel, "kernel.")
        for name, sub in kernel["matrix_reps"].items():
            results += _bool_results(sub, "kernel.%s." % name)
        notes["tau_image_order"] = kernel["tau_image_order"]
    if not results:
        raise ConfigParseError("unknown check %r (all, relations, kernel)" % check)
    return results, notes


def _cmd_report(config):
    if not config.path:
        raise ConfigParseError("report needs a JSON report path")
    try:
        with open(config.path) as fh:
            doc = json.load(fh)
        results = list(doc["results"])
    except (OSError, ValueError, KeyError) as e:
        raise ConfigParseError("cannot read report %s: %s" % (config.path, e))
    return results, {"source": config.path, "command": doc.get("command")}


_HANDLERS = {
    "verify": _cmd_verify,
    "extend": _cmd_extend,
    "closure": _cmd_closure,
    "spectrum": _cmd_spectrum,
    "seam": _cmd_seam,
    "algebra": _cmd_algebra,
    "zeta": _cmd_zeta,
    "report": _cmd_report,
}


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


def run(config):
    """Dispatch a RunConfig; module errors become report entries, never
    tracebacks.  Unresolved spectra and capped closures exit 2."""
    if config.jobs:
        try:
            import numba

            numba.set_num_threads(config.jobs)
        except (ImportError, ValueError):
            pass
    t0 = time.time()
    handler = _HANDLERS.get(config.command)
    if handler is None:
        raise ConfigParseError("unknown command %r" % config.command)
    try:
        results, notes = handler(config)
    except ConfigParseError:
        raise
    except SpectrumNotResolved as e:
        results = [{"name": "spectrum", "status": "unresolved", "detail": str(e)}]
        notes = {}
    except CapExceeded as e:
        results = [
            {
                "name": "closure",
                "status": "unresolved",
                "detail": str(e),
                "partial_count": e.partial_count,
            }
        ]
        notes = {}
    except (ParameterDegenerate, NecklaceError) as e:
        results = [
            {"name": type(e).__name__, "status": "fail", "detail": str(e)}
        ]
        notes = {}
    report = Report(
        config,
        results,
        notes=_jsonable(notes),
        timings={"wall_seconds": round(time.time() - t0, 3)},
    )
    if config.out:
        with open(config.out, "w") as fh:
            json.dump(report.to_json(), fh, indent=2)
            fh.write("\n")
    return report


def _parser():
    top = argparse.ArgumentParser(
        prog="necklace",
        description="Exact verification of necklace braid group representations.",
    )
    top.add_argument("--version", action="version", version=VERSION)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, n_required=False):
        p.add_argument("--n", type=int, required=n_required, help="strand count")
        p.add_argument(
            "--param",
            action="append",
            default=[],
            metavar="K=V",
            help="scalar parameter binding, repeatable",
        )
        p.add_argument("--cap", type=int, help="closure element cap")
        p.add_argument("--budget-dim", type=int, help="dense matrix budget")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--checkpoint", help="closure checkpoint path prefix")
        p.add_argument("--seed", type=int, default=7, help="sampling seed echo")
        p.add_argument("--jobs", type=int, help="worker threads for closures")

    p = sub.add_parser("verify", help="run a relation suite for a built-in family")
    common(p, n_required=True)
    p.add_argument("--family", required=True, choices=VERIFY_FAMILIES)
    p.add_argument("--m", type=int, help="site dimension for local models")
    p.add_argument("--branch", type=int, default=0)
    for name in ("z", "t", "q", "a"):
        p.add_argument("--%s" % name, help="scalar value for %s" % name)

    p = sub.add_parser("extend", help="build a rotation extension")
    common(p, n_required=True)
    p.add_argument("--rep", required=True, choices=EXTEND_REPS)
    p.add_argument("--mode", choices=("standard", "nonstandard"), default="standard")
    p.add_argument("--branch", type=int, default=0)
    for name in ("z", "t", "q", "a"):
        p.add_argument("--%s" % name, help="scalar value for %s" % name)

    p = sub.add_parser("closure", help="finite image orders and the ratio verdict")
    common(p, n_required=True)
    p.add_argument("--bvs", required=True, help="builtin name or JSON file")

    p = sub.add_parser("spectrum", help="rotation-power spectrum table")
    common(p, n_required=True)

    p = sub.add_parser("seam", help="seamed braid translator checks")
    common(p, n_required=True)
    for name in ("t", "a"):
        p.add_argument("--%s" % name, help="scalar value for %s" % name)

    p = sub.add_parser("algebra", help="twisted algebra identity suites")
    common(p, n_required=True)
    p.add_argument("--family", required=True, choices=("nes", "quaternionic"))
    p.add_argument("--m", type=int, help="clock order for the nes family")
    p.add_argument("--check", default="all")

    p = sub.add_parser("zeta", help="free-group action relation and kernel checks")
    common(p, n_required=True)
    p.add_argument("--check", default="all", choices=("all", "relations", "kernel"))

    p = sub.add_parser("report", help="reload a JSON report and recompute its verdict")
    p.add_argument("path", help="report file")
    common(p)

    return top


def _config_from_args(args):
    params = {}
    for binding in getattr(args, "param", []) or []:
        if "=" not in binding:
            raise ConfigParseError("--param needs K=V, got %r" % binding)
        k, v = binding.split("=", 1)
        params[k.strip()] = v
    for name in ("z", "t", "q", "a"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        m=getattr(args, "m", None),
        family=getattr(args, "family", None),
        rep=getattr(args, "rep", None),
        mode=getattr(args, "mode", None),
        branch=getattr(args, "branch", None),
        check=getattr(args, "check", None),
        bvs=getattr(args, "bvs", None),
        params=params,
        cap=getattr(args, "cap", None),
        budget_dim=getattr(args, "budget_dim", None),
        out=getattr(args, "out", None),
        checkpoint=getattr(args, "checkpoint", None),
        seed=getattr(args, "seed", None),
        jobs=getattr(args, "jobs", None),
        path=getattr(args, "path", None),
    )


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        report = run(config)
    except ConfigParseError as e:
        print("config error: %s" % e, file=sys.stderr)
        return 2
    print(json.dumps(report.to_json(), indent=2))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
