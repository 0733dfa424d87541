"""Command line front end.

Thin adapters only: every subcommand parses its arguments, calls the
library, and serializes the result.  No math lives here.

Conventions shared by all subcommands:

  * the primary document goes to stdout as indented JSON, or to the file
    named by --out; surveys additionally print a short aligned summary to
    stderr so long runs stay legible,
  * --csv switches tabular subcommands (spectrum, evolve, measure) to CSV
    on stdout with the run manifest as one JSON line on stderr,
  * every JSON document embeds a run manifest: argv, tool version, the
    inputs, seed where one applies, start/finish timestamps, and a sha256
    digest of the canonical payload so re-runs can be compared byte for
    byte,
  * exit codes: 0 success, 1 verification failure (an oracle or
    certificate check did not hold), 2 usage or input errors, 3 a survey
    found a violation.

Times are printed the way they are parsed: "pi/2", "3*pi/4", "pi", "0".
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from datetime import datetime, timezone
from typing import Sequence

import numpy as np

from . import __version__
from .bitspace import (ConnectionSet, DimensionMismatchError, GroupElement,
                       SetFormatError, parse_set)
from .dynamics import (GaussianInteger, RationalAngle, all_amplitudes,
                       all_fidelities, amplitude_exact, exact_components,
                       measurement_distribution)
from .graphwalk import (bfs_profile, bipartite_functional,
                        is_complete_bipartite)
from .oracle import OracleMismatchError, verify_equivalence
from .pst import (CertificationError, certify, decide_pst_exact, folded_cube,
                  plan_route, pst_at_half_pi)
from .scanner import ScanReport, antipodality_audit, conjecture_scan, scan_sets
from .spectral import classify_set


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


def _payload_digest(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _manifest(args: argparse.Namespace, payload: dict,
              inputs: dict, seed=None) -> dict:
    return {
        "tool": "cubewalk",
        "version": __version__,
        "argv": list(args.raw_argv),
        "inputs": inputs,
        "seed": seed,
        "started": args.started_at,
        "finished": _utc_now(),
        "payload_sha256": _payload_digest(payload),
    }


def _emit(args: argparse.Namespace, payload: dict, inputs: dict, *,
          seed=None, rows: list | None = None,
          header: list[str] | None = None,
          summary_lines: list[str] | None = None) -> None:
    """Serialize one command result according to the output flags."""
    manifest = _manifest(args, payload, inputs, seed)
    if getattr(args, "csv", False) and rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
        print(json.dumps({"manifest": manifest}), file=sys.stderr)
    else:
        doc = dict(payload)
        doc["manifest"] = manifest
        text = json.dumps(doc, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    if summary_lines:
        for line in summary_lines:
            print(line, file=sys.stderr)


def _angle_of(args: argparse.Namespace):
    """The time argument as a RationalAngle (--t-pi) or float (--t-real)."""
    if args.t_pi is not None:
        try:
            return RationalAngle.parse(args.t_pi)
        except ValueError as exc:
            raise SetFormatError(str(exc)) from None
    return float(args.t_real)


def _gauss_json(z: GaussianInteger) -> dict:
    return {"re": z.re, "im": z.im}


def _phase_json(phase) -> dict:
    if isinstance(phase, GaussianInteger):
        return _gauss_json(phase)
    return {"re": float(phase.real), "im": float(phase.imag)}


def _jobs_of(args: argparse.Namespace) -> int:
    if args.jobs is not None:
        value = args.jobs
    else:
        value = int(os.environ.get("CUBEWALK_JOBS", "1"))
    if value < 1:
        raise ValueError(f"--jobs must be at least 1, got {value}")
    return value


# ── subcommands ───────────────────────────────────────────────────────────

def cmd_spectrum(args: argparse.Namespace) -> int:
    omega = parse_set(args.omega, args.n)
    report = classify_set(omega)
    entries = [{
        "v": format(e.v, f"0{args.n}b"),
        "lambda": e.eigenvalue,
        "k": e.k,
        "congruence_class": e.congruence_class,
        "ok": e.ok,
    } for e in report.entries]
    payload = {
        "command": "spectrum",
        "n": args.n,
        "omega": omega.format(),
        "d": omega.d,
        "u": str(omega.u),
        "case": report.case,
        "all_pass": report.all_pass,
        "eigenvalues": entries,
    }
    rows = [[e["v"], e["lambda"], e["k"], e["congruence_class"]]
            for e in entries]
    _emit(args, payload, {"n": args.n, "omega": omega.format()},
          rows=rows, header=["v_binary", "lambda", "k", "congruence_class"])
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    omega = parse_set(args.omega, args.n)
    t = _angle_of(args)
    size = 1 << args.n
    exact = isinstance(t, RationalAngle) and t.is_quarter_exact
    fid = all_fidelities(omega, t)
    entries = []
    if exact:
        re, im = exact_components(omega, t)
        for db in range(size):
            entries.append({
                "delta": format(db, f"0{args.n}b"),
                "fidelity": float(fid[db]),
                "amplitude_exact": {"re": int(re[db]), "im": int(im[db])},
                "amplitude": {"re": int(re[db]) / size,
                              "im": int(im[db]) / size},
            })
    else:
        radians = t.radians if isinstance(t, RationalAngle) else t
        amp = all_amplitudes(omega, radians) / size
        for db in range(size):
            entries.append({
                "delta": format(db, f"0{args.n}b"),
                "fidelity": float(fid[db]),
                "amplitude": {"re": float(amp[db].real),
                              "im": float(amp[db].imag)},
            })
    payload = {
        "command": "evolve",
        "n": args.n,
        "omega": omega.format(),
        "time": str(t) if isinstance(t, RationalAngle) else t,
        "mode": "exact" if exact else "float",
        "fidelities": entries,
    }
    rows = [[e["delta"], repr(e["fidelity"]), repr(e["amplitude"]["re"]),
             repr(e["amplitude"]["im"])] for e in entries]
    _emit(args, payload,
          {"n": args.n, "omega": omega.format(), "time": payload["time"]},
          rows=rows, header=["delta_binary", "fidelity", "re", "im"])
    return 0


def cmd_fidelity(args: argparse.Namespace) -> int:
    omega = parse_set(args.omega, args.n)
    delta = GroupElement.parse(args.delta, args.n)
    t = _angle_of(args)
    exact = isinstance(t, RationalAngle) and t.is_quarter_exact
    fid = all_fidelities(omega, t)
    payload = {
        "command": "fidelity",
        "n": args.n,
        "omega": omega.format(),
        "delta": str(delta),
        "time": str(t) if isinstance(t, RationalAngle) else t,
        "mode": "exact" if exact else "float",
        "fidelity": float(fid[delta.bits]),
    }
    if exact:
        payload["amplitude_exact"] = _gauss_json(
            amplitude_exact(omega, delta, t))
    _emit(args, payload, {"n": args.n, "omega": omega.format(),
                          "delta": str(delta), "time": payload["time"]})
    return 0


def cmd_measure(args: argparse.Namespace) -> int:
    omega = parse_set(args.omega, args.n)
    start = GroupElement.parse(args.a, args.n) if args.a \
        else GroupElement.zero(args.n)
    t = _angle_of(args)
    dist = measurement_distribution(omega, start, t)
    entries = [{"vertex": format(v, f"0{args.n}b"), "p": float(dist[v])}
               for v in range(1 << args.n)]
    payload = {
        "command": "measure",
        "n": args.n,
        "omega": omega.format(),
        "a": str(start),
        "time": str(t) if isinstance(t, RationalAngle) else t,
        "distribution": entries,
    }
    if isinstance(t, RationalAngle) and t.q == 2:
        # Odd multiple of pi/2 (p is odd in lowest terms): the outcome is
        # deterministic either way, which is what makes this time a
        # measurement-based detector for whether the xor-sum vanishes.
        if omega.u.bits == 0:
            payload["note"] = ("xor-sum is zero: the walker is back at its "
                               "start with certainty at this time")
        else:
            payload["note"] = ("the walker is at a xor u with certainty at "
                               "this time; away from the exact grid the "
                               "distribution spreads over the cube")
    rows = [[e["vertex"], repr(e["p"])] for e in entries]
    _emit(args, payload,
          {"n": args.n, "omega": omega.format(), "a": str(start),
           "time": payload["time"]},
          rows=rows, header=["vertex_binary", "probability"])
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    omega = parse_set(args.omega, args.n)
    source = GroupElement.parse(args.source, args.n) if args.source \
        else GroupElement.zero(args.n)
    profile = bfs_profile(omega, source)
    functional = bipartite_functional(omega)
    parts = is_complete_bipartite(omega)
    payload = {
        "command": "graph",
        "n": args.n,
        "omega": omega.format(),
        "d": omega.d,
        "source": str(source),
        "connected": profile.connected,
        "diameter": profile.diameter,
        "shells": profile.shell_sizes(),
        "distances": [{"v": format(v, f"0{args.n}b"),
                       "dist": int(profile.dist[v]) if profile.dist[v] >= 0
                       else None}
                      for v in range(1 << args.n)],
        "bipartite": functional is not None,
        "bipartite_functional": str(functional) if functional else None,
        "complete_bipartite": list(parts) if parts else None,
    }
    if profile.connected:
        far = np.nonzero(profile.dist == profile.diameter)[0]
        payload["antipodal"] = [format(int(v), f"0{args.n}b") for v in far]
    else:
        payload["antipodal"] = None
    _emit(args, payload, {"n": args.n, "omega": omega.format(),
                          "source": str(source)})
    return 0


def cmd_pst_check(args: argparse.Namespace) -> int:
    omega = parse_set(args.omega, args.n)
    cert = pst_at_half_pi(omega)
    payload = {
        "command": "pst-check",
        "n": args.n,
        "omega": omega.format(),
        "d": omega.d,
        "u": str(omega.u),
        "pst": cert is not None,
    }
    if cert is not None:
        payload["time"] = str(cert.time)
        payload["delta"] = str(cert.delta)
        payload["phase"] = _phase_json(cert.phase)
        payload["method"] = cert.method
    else:
        payload["note"] = "revival at pi/2"
    _emit(args, payload, {"n": args.n, "omega": omega.format()})
    return 0


def cmd_pst_search(args: argparse.Namespace) -> int:
    omega = parse_set(args.omega, args.n)
    delta = GroupElement.parse(args.delta, args.n)
    found = decide_pst_exact(omega, delta)
    payload = {
        "command": "pst-search",
        "n": args.n,
        "omega": omega.format(),
        "delta": str(delta),
        "pst": found is not None,
    }
    if found is not None:
        cert = certify(omega, delta, found)
        payload["time"] = str(found)
        payload["phase"] = _phase_json(cert.phase)
        payload["method"] = cert.method
    _emit(args, payload, {"n": args.n, "omega": omega.format(),
                          "delta": str(delta)})
    return 0


def cmd_route(args: argparse.Namespace) -> int:
    target = GroupElement.parse(args.target, args.n)
    plan = plan_route(args.n, target)
    payload = {
        "command": "route",
        "n": args.n,
        "target": str(target),
        "base": plan.base.format(),
        "total_time": str(plan.total_time),
        "stages": [{
            "omega": s.omega.format(),
            "hop": str(s.hop),
            "time": str(s.time),
            "phase": _phase_json(s.certificate.phase),
        } for s in plan.stages],
    }
    _emit(args, payload, {"n": args.n, "target": str(target)})
    return 0


def _survey_summary(report: ScanReport) -> list[str]:
    label_width = max(len(k) for k in report.summary) + 2
    lines = [f"{report.kind}  n={report.n}  "
             f"wall={report.wall_time_s:.2f}s"]
    for key, val in report.summary.items():
        lines.append(f"  {key:<{label_width}}{val}")
    lines.append(f"  {'digest':<{label_width}}{report.digest()[:16]}")
    return lines


def _emit_survey(args: argparse.Namespace, report: ScanReport,
                 inputs: dict, seed=None) -> int:
    payload = {"command": args.command, "report": report.payload()}
    manifest_extra = {"wall_time_s": report.wall_time_s}
    manifest = _manifest(args, payload, inputs, seed)
    manifest.update(manifest_extra)
    doc = dict(payload)
    doc["manifest"] = manifest
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    for line in _survey_summary(report):
        print(line, file=sys.stderr)
    return 3 if report.violations else 0


def cmd_scan(args: argparse.Namespace) -> int:
    jobs = _jobs_of(args)
    common = dict(d_min=args.d_min, d_max=args.d_max, sample=args.sample,
                  seed=args.seed, jobs=jobs)
    if args.u_zero:
        report = conjecture_scan(args.n, **common)
    else:
        report = scan_sets(args.n, **common)
    return _emit_survey(args, report,
                        {"n": args.n, "filters": report.filters},
                        seed=args.seed if args.sample else None)


def cmd_audit(args: argparse.Namespace) -> int:
    report = antipodality_audit(args.n, jobs=_jobs_of(args))
    return _emit_survey(args, report, {"n": args.n})


def cmd_oracle_verify(args: argparse.Namespace) -> int:
    result = verify_equivalence(trials=args.trials, pair_trials=args.pairs,
                                seed=args.seed, n_max=args.n_max)
    payload = {"command": "oracle-verify", **result}
    _emit(args, payload, {"trials": args.trials, "pairs": args.pairs,
                          "n_max": args.n_max}, seed=args.seed)
    return 0 if result["ok"] else 1


# ── parser ────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubewalk",
        description="Perfect state transfer on cubelike graphs: exact "
                    "spectra, walk dynamics, transfer certificates, "
                    "routing, and surveys.")
    parser.add_argument("--version", action="version",
                        version=f"cubewalk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, set_args=True, time_args=False,
            csv_arg=False):
        p = sub.add_parser(name, help=help_text)
        if set_args:
            p.add_argument("--n", type=int, required=True,
                           help="dimension of the label space")
            p.add_argument("--omega", required=True,
                           help="comma-separated labels, n-bit binary "
                                "or 0x-hex")
        if time_args:
            grp = p.add_mutually_exclusive_group(required=True)
            grp.add_argument("--t-pi", metavar="P/Q",
                             help="time as a rational multiple of pi")
            grp.add_argument("--t-real", type=float, metavar="T",
                             help="time in plain radians")
        if csv_arg:
            p.add_argument("--csv", action="store_true",
                           help="tabular output instead of JSON")
        p.add_argument("--out", help="write the JSON document here "
                                     "instead of stdout")
        return p

    add("spectrum", "integer spectrum and congruence classes", csv_arg=True)

    add("evolve", "fidelities (and amplitudes) for every offset at one "
        "time", time_args=True, csv_arg=True)

    p = add("fidelity", "fidelity at one offset and one time",
            time_args=True)
    p.add_argument("--delta", required=True, help="offset a xor b")

    p = add("measure", "position-measurement distribution at one time",
            time_args=True, csv_arg=True)
    p.add_argument("--a", help="start vertex (default all-zero)")

    p = add("graph", "distances, diameter, antipodal offsets, bipartite "
            "type")
    p.add_argument("--source", help="BFS source (default all-zero)")

    add("pst-check", "closed-form transfer test at pi/2")

    p = add("pst-search", "exact earliest-transfer decision for one offset")
    p.add_argument("--delta", required=True, help="offset to test")

    p = add("route", "chain quarter-period hops to a target offset",
            set_args=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", required=True, help="target offset, nonzero")

    p = add("scan", "survey sets for transfer offsets", set_args=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u-zero", action="store_true",
                   help="restrict to xor-sum-zero sets (conjecture scan; "
                        "findings are counterexamples and exit 3)")
    p.add_argument("--d-min", type=int)
    p.add_argument("--d-max", type=int)
    p.add_argument("--sample", type=int,
                   help="sample this many sets instead of exhausting")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int,
                   help="worker processes (default $CUBEWALK_JOBS or 1)")

    p = add("audit-antipodal", "antipodality audit of every transfer "
            "offset", set_args=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int,
                   help="worker processes (default $CUBEWALK_JOBS or 1)")

    p = add("oracle-verify", "drive the dense reference paths against the "
            "transform path", set_args=False)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-max", type=int, default=6)

    handlers = {
        "spectrum": cmd_spectrum,
        "evolve": cmd_evolve,
        "fidelity": cmd_fidelity,
        "measure": cmd_measure,
        "graph": cmd_graph,
        "pst-check": cmd_pst_check,
        "pst-search": cmd_pst_search,
        "route": cmd_route,
        "scan": cmd_scan,
        "audit-antipodal": cmd_audit,
        "oracle-verify": cmd_oracle_verify,
    }
    parser.set_defaults(handlers=handlers)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.raw_argv = argv
    args.started_at = _utc_now()
    handler = args.handlers[args.command]
    try:
        return handler(args)
    except (CertificationError, OracleMismatchError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (SetFormatError, DimensionMismatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
