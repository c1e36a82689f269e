"""Command-line front end.

Exit codes: 0 when no check fails (flagged checks only warn), 1 when a
mathematical check fails, 2 for malformed input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .bwb import ALL_VANISH, bwb_cohomology, verify_mu_j_vanishing
from .chevalley import build_chevalley, verify_graded_vanishing, verify_omega_nc1_closed, verify_relative_differentials
from .domains import HermitianDomain, chamber_degrees, parse_group, rho_components, validate_domain
from .examples import reproduce_examples
from .penrose import (
    canonical_mu_c,
    check_chamber,
    check_injectivity,
    check_nontriviality_necessary,
    check_property_w,
    check_property_w_specialized,
    search_cup_pairs,
    threshold_n,
    verify_beta_alpha_lemma,
)
from .report import Report, emit_report
from .roots import Vec, format_vec, parse_vec

PREDICATES = ("injectivity", "nontrivial", "chamber", "propw")
VERIFICATIONS = ("compact-witness", "compact-witness-strong", "graded-vanishing", "omega-closed", "mu-j")
COMMANDS = ("describe", "validate", "check", "canonical", "threshold", "cup-search", "verify", "bwb", "reproduce-examples", "batch")


class UsageError(Exception):
    """Malformed input; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _group(text: str) -> HermitianDomain:
    try:
        return parse_group(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _weight(text: str) -> Vec:
    try:
        return parse_vec(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "jsonl"), default="text", help="report format")

    p = _Parser(prog="flagkit", description="Root-level checks for Penrose transformations on Hermitian flag domains.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("describe", help="root split, rho components, counts")
    s.add_argument("group", type=_group)
    s = sub.add_parser("validate", parents=[common], help="structural checks on the split")
    s.add_argument("group", type=_group)
    s = sub.add_parser("check", parents=[common], help="weight predicates")
    s.add_argument("predicate", choices=PREDICATES)
    s.add_argument("group", type=_group)
    s.add_argument("--weight", type=_weight, required=True)
    s = sub.add_parser("canonical", parents=[common], help="mu'_c and k0")
    s.add_argument("group", type=_group)
    s = sub.add_parser("threshold", parents=[common], help="threshold N for the canonical family")
    s.add_argument("group", type=_group)
    s.add_argument("--mu0", type=_weight)
    s = sub.add_parser("cup-search", parents=[common], help="bounded search for cup-product pairs")
    s.add_argument("group", type=_group)
    s.add_argument("--bound", type=int, default=5)
    s = sub.add_parser("verify", parents=[common], help="verification reports")
    s.add_argument("name", choices=VERIFICATIONS)
    s.add_argument("group", type=_group)
    s.add_argument("--weight", type=_weight, help="mu' for mu-j (default 0)")
    s = sub.add_parser("bwb", parents=[common], help="Borel-Weil-Bott on the base cycle")
    s.add_argument("group", type=_group)
    s.add_argument("--weight", type=_weight, required=True)
    sub.add_parser("reproduce-examples", parents=[common], help="run the full worked-example suite")
    s = sub.add_parser("batch", parents=[common], help="run jobs from a JSON config")
    s.add_argument("config")
    return p


def _dim_ok(dom: HermitianDomain, *weights: Vec | None) -> None:
    for w in weights:
        if w is not None and len(w) != dom.rs.ambient_dim:
            raise UsageError(f"weight {format_vec(w)} has dimension {len(w)}, expected {dom.rs.ambient_dim}")


def _describe(dom: HermitianDomain) -> str:
    rho = rho_components(dom)
    fmt = lambda xs: "; ".join(format_vec(x) for x in xs) or "(empty)"  # noqa: E731
    c = dom.counts
    lines = [
        f"group: {dom.label}",
        f"Delta_c+: {fmt(dom.delta_c)}",
        f"Delta_nc1+: {fmt(dom.nc1)}",
        f"Delta_nc2+: {fmt(dom.nc2)}",
        f"q = {c['q']}, p = {c['p']}, d = {c['d']}",
        f"rho = {format_vec(rho.rho)}",
        f"rho_c = {format_vec(rho.rho_c)}",
        f"rho_nc = {format_vec(rho.rho_nc)}",
        f"rho_nc1 = {format_vec(rho.rho_nc1)}",
        f"rho_nc2 = {format_vec(rho.rho_nc2)}",
        f"rho_prime = {format_vec(rho.rho_prime)}",
        f"rho_prime_nc = {format_vec(rho.rho_prime_nc)}",
        f"rho_nc - rho_c = {format_vec(rho.rho_nc - rho.rho_c)}",
    ]
    return "\n".join(lines) + "\n"


def _check(args) -> Report:
    dom, w = args.group, args.weight
    _dim_ok(dom, w)
    rep = Report(dom.label, dict(dom.parameters) | {"weight": format_vec(w)})
    if args.predicate == "injectivity":
        try:
            res = check_injectivity(dom, w)
        except ValueError as exc:
            rep.add("injectivity", "injectivity", False, [], str(exc))
        else:
            rep.add("injectivity", "injectivity", res.holds, res.lines())
    elif args.predicate == "nontrivial":
        rep.add("nontrivial", "nontrivial", check_nontriviality_necessary(dom, w))
    elif args.predicate == "chamber":
        deg = chamber_degrees(dom, w)
        rep.add("chamber", "chamber", check_chamber(dom, w), [], f"q={deg.q_of} q'={deg.q_prime_of} regular={str(deg.regular).lower()}")
    else:
        try:
            general = check_property_w(dom, w)
        except ValueError as exc:
            rep.add("property-w", "property-w", False, [], str(exc))
            return rep
        rep.add("property-w", "property-w", general, [], "general form")
        rho = rho_components(dom)
        if check_chamber(dom, w + rho.rho):
            special = check_property_w_specialized(dom, w + 2 * rho.rho_nc1)
            rep.add("property-w-forms-agree", "property-w", special == general, [], f"specialized form {str(special).lower()}")
    return rep


def _verify(args) -> Report:
    dom = args.group
    if args.name == "compact-witness":
        return verify_beta_alpha_lemma(dom)
    if args.name == "compact-witness-strong":
        try:
            return verify_beta_alpha_lemma(dom, strong=True)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if args.name == "mu-j":
        w = args.weight if args.weight is not None else dom.zero()
        _dim_ok(dom, w)
        try:
            return verify_mu_j_vanishing(dom, w)
        except ValueError as exc:
            rep = Report(dom.label, dict(dom.parameters) | {"mu_prime": format_vec(w)})
            rep.add("precondition", "mu-j", False, [], str(exc))
            return rep
    table = build_chevalley(dom)
    if args.name == "graded-vanishing":
        rep = verify_graded_vanishing(table)
        rep.extend(verify_relative_differentials(table))
        return rep
    return verify_omega_nc1_closed(table)


def _threshold(args) -> Report:
    dom = args.group
    _dim_ok(dom, args.mu0)
    mu0 = args.mu0 if args.mu0 is not None else dom.zero()
    rep = Report(dom.label, dict(dom.parameters) | {"mu0": format_vec(mu0)})
    try:
        res = threshold_n(dom, mu0)
    except ValueError as exc:
        rep.add("threshold", "threshold", False, [], str(exc))
        return rep
    wit = [f"{g}: k>={k}" for g, k in res.per_constraint]
    if res.failing_below:
        wit.append(f"fails at N-1: {','.join(res.failing_below)}")
    rep.add("threshold", "threshold", True, wit, f"N={res.N} k0={res.k0} mu'_c={format_vec(res.mu_c_prime)}")
    return rep


def _cup(args) -> Report:
    dom = args.group
    if args.bound < 1:
        raise UsageError("--bound must be positive")
    pairs = search_cup_pairs(dom, args.bound)
    rep = Report(dom.label, dict(dom.parameters) | {"bound": str(args.bound)})
    wit = [f"mu0={format_vec(m)} lambda0={format_vec(l)}" for m, l in pairs]
    rep.add("cup-search", "cup", True, wit, f"{len(pairs)} pairs found in box [-{args.bound},{args.bound}]^{dom.rs.ambient_dim}")
    return rep


def _bwb(args) -> Report:
    dom, w = args.group, args.weight
    _dim_ok(dom, w)
    rep = Report(dom.label, dict(dom.parameters) | {"weight": format_vec(w)})
    try:
        out = bwb_cohomology(dom, w)
    except ValueError as exc:
        rep.add("bwb", "bwb", False, [], str(exc))
        return rep
    if out.status == ALL_VANISH:
        rep.add("bwb", "bwb", True, [], "AllVanish: lam + rho_c is singular")
    else:
        rep.add("bwb", "bwb", True, [f"dominant_rep={format_vec(out.dominant_rep)}"], f"Concentrated degree={out.degree} dimension={out.dimension}")
    return rep


def _canonical(args) -> Report:
    dom = args.group
    mu_c, k0 = canonical_mu_c(dom)
    rep = Report(dom.label, dict(dom.parameters))
    rep.add("canonical", "canonical", True, [f"mu'_c={format_vec(mu_c)}", f"k0={k0}"])
    return rep


@dataclass
class Outcome:
    code: int
    out: bytes
    err: str


def _finish(rep: Report, fmt: str) -> Outcome:
    err = ""
    if rep.flagged:
        err = f"warning: {len(rep.flagged)} flagged check(s) in {rep.group}\n"
    return Outcome(1 if rep.failed else 0, emit_report(rep, fmt), err)


_VALUE_FLAGS = ("--weight", "--mu0", "--bound")


def _glue_values(argv: Sequence[str]) -> list[str]:
    """Attach values such as ``-1,1,0`` to their flag so they are not read as options."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str]) -> Outcome:
    """Execute one command, capturing its output."""
    try:
        args = build_parser().parse_args(_glue_values(argv))
        if args.command == "describe":
            return Outcome(0, _describe(args.group).encode(), "")
        if args.command == "batch":
            return _batch(args.config, args.format)
        handler = {
            "validate": lambda a: validate_domain(a.group),
            "check": _check,
            "canonical": _canonical,
            "threshold": _threshold,
            "cup-search": _cup,
            "verify": _verify,
            "bwb": _bwb,
            "reproduce-examples": lambda a: reproduce_examples(),
        }[args.command]
        return _finish(handler(args), args.format)
    except UsageError as exc:
        return Outcome(2, b"", f"{exc}\nusage: flagkit <command> ... (see flagkit --help)\n")


def _job_argv(job: dict, idx: int, fmt: str) -> list[str]:
    if not isinstance(job, dict) or "command" not in job:
        raise UsageError(f"job {idx}: needs a 'command' field")
    argv = str(job["command"]).split()
    if not argv or argv[0] not in COMMANDS or argv[0] == "batch":
        raise UsageError(f"job {idx}: unsupported command {job['command']!r}")
    if job.get("group") is not None:
        argv.append(str(job["group"]))
    if job.get("weight") is not None:
        argv += ["--weight", str(job["weight"])]
    options = job.get("options") or {}
    if not isinstance(options, dict):
        raise UsageError(f"job {idx}: options must be a mapping")
    for key, val in sorted(options.items()):
        argv += [f"--{key}", str(val)]
    if "format" not in options and argv[0] != "describe":
        argv += ["--format", fmt]
    return argv


def load_batch(path: str, fmt: str = "text") -> list[list[str]]:
    """Parse a batch file into per-job argument vectors, validating every job."""
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read batch config {path}: {exc}") from exc
    jobs = cfg.get("jobs") if isinstance(cfg, dict) else None
    if not isinstance(jobs, list):
        raise UsageError("batch config needs a 'jobs' list")
    argvs = [_job_argv(job, i, fmt) for i, job in enumerate(jobs)]
    parser = build_parser()
    for i, argv in enumerate(argvs):
        try:
            parser.parse_args(_glue_values(argv))
        except UsageError as exc:
            raise UsageError(f"job {i}: {exc}") from exc
    return argvs


def max_workers(n_jobs: int) -> int:
    env = os.environ.get("FLAGKIT_MAX_WORKERS")
    cap = os.cpu_count() or 1
    if env:
        try:
            cap = max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"FLAGKIT_MAX_WORKERS must be an integer, got {env!r}") from exc
    return max(1, min(cap, n_jobs))


def _batch(path: str, fmt: str) -> Outcome:
    argvs = load_batch(path, fmt)
    if not argvs:
        return Outcome(0, b"", "")
    with ThreadPoolExecutor(max_workers=max_workers(len(argvs))) as pool:
        results = list(pool.map(run, argvs))
    code = max(r.code for r in results)
    return Outcome(code, b"".join(r.out for r in results), "".join(r.err for r in results))


def main(argv: Sequence[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.buffer.write(res.out)
    sys.stdout.flush()
    if res.err:
        sys.stderr.write(res.err)
    return res.code


if __name__ == "__main__":
    raise SystemExit(main())
