"""Command-line front end.

Subcommands: check, to-complex, verify-reality, derive-ode, invariants,
rigid-check, dual, self-test.  Input arrives inline (``--theta``,
``--xi``, ``--phi``) or from a plain-text file of ``key = value`` lines
(keys ``vars``, ``order``, ``theta``, ``xi``, ``phi``; values may be
double-quoted; ``#`` starts a comment).  Every command prints one JSON
report (see the report module for the schema) to stdout or ``--output``.

Exit codes: 0 for any clean verdict (including non-spherical), 1 for
input errors, 2 for internal cross-check failures.  Reports are
byte-identical across runs unless ``--timings`` is given.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from typing import Optional

from .defining import ComplexDefining, RealGraph, levi_delta, to_complex_defining, verify_reality
from .errors import CrsError, InternalCheckError
from .invariants import aj4, koppisch_check, rigid_invariant, sphericality_verdict
from .parsing import parse_series, render_series
from .report import (
    Report,
    VERDICT_ERROR,
    VERDICT_LEVI_DEGENERATE,
    VERDICT_NON_SPHERICAL,
    VERDICT_OK,
    VERDICT_REALITY_VIOLATED,
    VERDICT_SPHERICAL,
    render_report,
)
from .selftest import run_self_test
from .transfer import SolutionManifold, associated_ode, dual_manifold

DEFAULT_ORDER = 10
DEFAULT_ORDER_CAP = 16
# the sixth-order pipeline loses six derivative orders; anything below
# seven cannot report past degree zero
MIN_ORDER = {"check": 7, "invariants": 7, "rigid-check": 7}

THETA_VARS = ("z", "zb", "wb")
GRAPH_VARS = ("x", "y", "v")
XI_VARS = ("z", "zb")


@dataclass
class JobConfig:
    command: str
    theta: Optional[str] = None
    xi: Optional[str] = None
    phi: Optional[str] = None
    vars: tuple = THETA_VARS
    order: int = DEFAULT_ORDER
    output: Optional[str] = None
    pretty: bool = False
    timings: bool = False

    def __post_init__(self):
        cap = int(os.environ.get("CRS_MAX_ORDER", str(DEFAULT_ORDER_CAP)))
        if self.order > cap:
            self.order = cap
        minimum = MIN_ORDER.get(self.command, 4)
        if self.order < minimum:
            raise ValueError(
                f"order {self.order} too small for {self.command!r} (minimum {minimum})"
            )


def _read_job_file(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            value = value.strip()
            if len(value) >= 2 and value[0] == value[-1] == '"':
                value = value[1:-1]
            values[key.strip()] = value
    return values


def _stage_timer(enabled: bool):
    timings = {}

    def clock(stage, fn):
        start = time.perf_counter()
        result = fn()
        if enabled:
            timings[stage] = int((time.perf_counter() - start) * 1000)
        return result

    return timings, clock


def _parse_theta(cfg: JobConfig) -> ComplexDefining:
    if cfg.theta is None:
        raise ValueError(f"{cfg.command!r} needs a defining function (--theta)")
    theta = parse_series(cfg.theta, cfg.vars, cfg.order)
    return ComplexDefining.from_theta(theta)


def run_job(cfg: JobConfig) -> Report:
    command = cfg.command
    timings, clock = _stage_timer(cfg.timings)

    if command == "check":
        d = clock("parse", lambda: _parse_theta(cfg))
        report = sphericality_verdict(d, cfg.order, with_timings=cfg.timings)
        report.timings = {**timings, **report.timings}
        return report

    if command == "verify-reality":
        d = clock("parse", lambda: _parse_theta(cfg))
        witness = clock("reality", lambda: verify_reality(d))
        if witness is None:
            return Report(VERDICT_OK, tested_order=d.theta.order, timings=timings)
        mono, coeff = witness
        return Report(
            VERDICT_REALITY_VIOLATED,
            tested_order=d.theta.order,
            witness_monomial=mono,
            witness_coefficient=coeff,
            timings=timings,
        )

    if command == "to-complex":
        if cfg.phi is None:
            raise ValueError("'to-complex' needs a real graphing function (--phi)")
        phi = clock("parse", lambda: parse_series(cfg.phi, GRAPH_VARS, cfg.order))
        d = clock("solve", lambda: to_complex_defining(RealGraph(phi), cfg.order))
        delta, _ = levi_delta(d)
        return Report(
            VERDICT_OK,
            tested_order=d.theta.order,
            delta_at_origin=delta.constant_term(),
            timings=timings,
            payload={"theta": render_series(d.theta), "rigid": d.rigid},
        )

    if command == "derive-ode":
        d = clock("parse", lambda: _parse_theta(cfg))
        delta, nondegenerate = levi_delta(d)
        if not nondegenerate:
            return Report(
                VERDICT_LEVI_DEGENERATE,
                tested_order=d.theta.order,
                delta_at_origin=delta.constant_term(),
                timings=timings,
            )
        ode = clock("eliminate", lambda: associated_ode(SolutionManifold(d.theta), cfg.order))
        return Report(
            VERDICT_OK,
            tested_order=ode.f.order,
            delta_at_origin=delta.constant_term(),
            timings=timings,
            payload={"ode_rhs": render_series(ode.f), "ode_vars": list(ode.f.vars)},
        )

    if command == "invariants":
        d = clock("parse", lambda: _parse_theta(cfg))
        report = sphericality_verdict(d, cfg.order, with_timings=cfg.timings)
        report.timings = {**timings, **report.timings}
        if report.verdict in (VERDICT_SPHERICAL, VERDICT_NON_SPHERICAL):
            report.payload["aj4_vanishes"] = aj4(d).is_zero()
            report.payload["aj6_vanishes"] = report.verdict == VERDICT_SPHERICAL
        return report

    if command == "rigid-check":
        if cfg.xi is None:
            raise ValueError("'rigid-check' needs a rigid part (--xi)")
        xi = clock("parse", lambda: parse_series(cfg.xi, XI_VARS, cfg.order))
        herm = xi.conjugate({"z": "zb", "zb": "z"}).reorder(XI_VARS)
        defect = xi - herm
        if not defect.is_zero():
            mono, coeff = defect.lowest_term()
            return Report(
                VERDICT_REALITY_VIOLATED,
                tested_order=xi.order,
                witness_monomial=mono,
                witness_coefficient=coeff,
                timings=timings,
            )
        levi = xi.derive("z").derive("zb").constant_term()
        if levi.is_zero():
            return Report(
                VERDICT_LEVI_DEGENERATE,
                tested_order=xi.order,
                delta_at_origin=levi,
                timings=timings,
            )
        inv = clock("invariant", lambda: rigid_invariant(xi))
        if inv.is_zero():
            return Report(
                VERDICT_SPHERICAL,
                tested_order=inv.order,
                delta_at_origin=levi,
                timings=timings,
            )
        mono, coeff = inv.lowest_term()
        return Report(
            VERDICT_NON_SPHERICAL,
            tested_order=inv.order,
            witness_monomial=mono,
            witness_coefficient=coeff,
            delta_at_origin=levi,
            timings=timings,
        )

    if command == "dual":
        d = clock("parse", lambda: _parse_theta(cfg))
        m = SolutionManifold(d.theta)
        dual = clock("dual", lambda: dual_manifold(m, cfg.order))
        # for a surface satisfying the reality condition the dual graph is
        # the coefficient-conjugate with the conjugated slot leading
        conj = d.theta.conjugate({"z": "zb", "zb": "z", "wb": "wb"}).rename(
            {"zb": "x", "z": "a", "wb": "b"}
        )
        k = min(dual.q.order, conj.order)
        koppisch = koppisch_check(m, cfg.order)
        return Report(
            VERDICT_OK,
            tested_order=dual.q.order,
            timings=timings,
            payload={
                "dual": render_series(dual.q),
                "dual_vars": list(dual.q.vars),
                "conjugate_equal": dual.q.truncate(k) == conj.truncate(k),
                "koppisch": {
                    "i1_vanishes": koppisch.i1_vanishes,
                    "i2_vanishes": koppisch.i2_vanishes,
                    "dual_i1_vanishes": koppisch.dual_i1_vanishes,
                    "dual_i2_vanishes": koppisch.dual_i2_vanishes,
                    "order": koppisch.order,
                },
            },
        )

    if command == "self-test":
        passed = clock("corpus", run_self_test)
        return Report(
            VERDICT_OK,
            tested_order=cfg.order,
            timings=timings,
            payload={"checks": {name: "pass" for name in passed}},
        )

    raise ValueError(f"unknown command {cfg.command!r}")


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        print(text)
        return
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".crsphere-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        os.replace(tmp, output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors (exit 1); exit 2 is reserved for
    # internal cross-check failures
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="crsphere",
        description="Exact sphericality checks for hypersurfaces w = Theta(z, zb, wb) in C^2",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    specs = {
        "check": "full sphericality verdict for a defining function",
        "to-complex": "convert a real graph u = phi(x, y, v) to a complex defining equation",
        "verify-reality": "check the reality condition of a defining function",
        "derive-ode": "eliminate the parameters: the associated second-order ODE",
        "invariants": "sphericality verdict plus invariant vanishing flags",
        "rigid-check": "sphericality of a rigid surface from its part Xi(z, zb)",
        "dual": "dual solution manifold and duality cross-checks",
        "self-test": "run the pinned fixture corpus",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        if name in ("check", "verify-reality", "derive-ode", "invariants", "dual"):
            p.add_argument("--theta", help="defining function over (z, zb, wb)")
        if name == "rigid-check":
            p.add_argument("--xi", help="rigid part over (z, zb)")
        if name == "to-complex":
            p.add_argument("--phi", help="real graphing function over (x, y, v)")
        p.add_argument("--input", help="job file of 'key = value' lines")
        p.add_argument("--vars", help="comma-separated variable names")
        p.add_argument("--order", type=int, help=f"truncation order (default {DEFAULT_ORDER})")
        p.add_argument("--output", help="write the report to this path (atomically)")
        p.add_argument("--json", action="store_true", help="compact JSON output (default)")
        p.add_argument("--pretty", action="store_true", help="indented JSON output")
        p.add_argument("--timings", action="store_true", help="include stage timings (breaks byte determinism)")
    return parser


def _config_from_args(args) -> JobConfig:
    values = {}
    if args.input:
        values = _read_job_file(args.input)
    theta = getattr(args, "theta", None) or values.get("theta")
    xi = getattr(args, "xi", None) or values.get("xi")
    phi = getattr(args, "phi", None) or values.get("phi")
    if args.vars:
        vars_ = tuple(v.strip() for v in args.vars.split(","))
    elif "vars" in values:
        vars_ = tuple(v.strip() for v in values["vars"].split(","))
    else:
        vars_ = THETA_VARS
    if args.order is not None:
        order = args.order
    elif "order" in values:
        order = int(values["order"])
    else:
        order = DEFAULT_ORDER
    return JobConfig(
        command=args.command,
        theta=theta,
        xi=xi,
        phi=phi,
        vars=vars_,
        order=order,
        output=args.output,
        pretty=args.pretty,
        timings=args.timings,
    )


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    pretty = args.pretty
    output = args.output
    try:
        cfg = _config_from_args(args)
        report = run_job(cfg)
        code = 0
    except InternalCheckError as exc:
        report = Report(VERDICT_ERROR, tested_order=0, payload={"message": str(exc)})
        code = 2
    except (CrsError, ValueError, OSError) as exc:
        report = Report(VERDICT_ERROR, tested_order=0, payload={"message": str(exc)})
        code = 1
    _emit(render_report(report, pretty=pretty), output)
    return code


if __name__ == "__main__":
    sys.exit(main())
