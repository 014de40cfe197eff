"""Command-line front end.

    python -m trisect homology paper-sec9 --json
    python -m trisect torsion paper-sec9 --basis sec9-basis

A diagram argument is a file path or the name of a bundled fixture.  Exit
codes: 0 success, 1 the diagram (or its phi) fails validation, 2 usage or
parse errors.  JSON output is deterministic: sorted keys, no timestamps.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .checks import run_all
from .diagram import DiagramError, InvalidDiagram, validate_diagram
from .fixtures import FIXTURES, fixture_text, load_diagram, load_json_arg
from .forms import FormError, h1h3_form, h1h3_twisted, wall_form, wall_form_twisted
from .homology import TrivialPhi, alexander, homology_twisted, homology_z, twisted_setup
from .torsion import BasisError, parse_basis, torsion_X
from .word import PhiMap, WordError, parse_word


class UsageError(Exception):
    pass


def _document(d, command: str, section: dict) -> dict:
    return {"tool": "trisect", "version": __version__, "digest": d.digest(), "command": command,
            command: section}


def _phi_arg(path: Optional[str], d) -> Optional[PhiMap]:
    if path is None:
        return None
    try:
        doc = load_json_arg(path)
    except (OSError, KeyError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read phi file: {e}") from e
    if not isinstance(doc, dict):
        raise UsageError("phi file must hold a JSON object")
    doc = {k: v for k, v in doc.items() if k != "mode"}
    try:
        return PhiMap.from_dict(d.genus, doc["rank"], doc.get("values", {}))
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"bad phi file: {e}") from e


def _basis_arg(path: Optional[str], d, nvars: int):
    if path is None:
        return None, None
    try:
        doc = load_json_arg(path)
    except (OSError, KeyError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read basis file: {e}") from e
    return parse_basis(doc, d.genus, nvars)


# --- text rendering ----------------------------------------------------------


def _group(rank, torsion) -> str:
    parts = ["Z"] * (1 if rank else 0)
    s = " + ".join((["Z^%d" % rank] if rank > 1 else parts) + [f"Z/{t}" for t in torsion])
    return s or "0"


def _print_matrix(rows, out):
    for row in rows:
        out.write("  [" + ", ".join(str(x) for x in row) + "]\n")


def _text(command: str, sec: dict, out) -> None:
    if command == "validate":
        out.write("valid\n" if sec["ok"] else "INVALID\n")
        for p in sec.get("failures", []):
            out.write(f"  {p}\n")
        for k, v in sec["heegaard"].items():
            out.write(f"  {k}: k = {v['k']}\n")
    elif command == "homology" and "dims" in sec:
        out.write("twisted dims (h1, h2, h3) = (%d, %d, %d)\n" % tuple(sec["dims"][k] for k in "123"))
        out.write("relator class: (" + ", ".join(sec["relator_class"]) + ")\n")
    elif command == "homology":
        for i in range(5):
            e = sec[str(i)]
            out.write(f"H{i} = {_group(e['rank'], e['torsion'])}\n")
    elif command == "forms":
        for name, f in sec.items():
            out.write(f"{name}:\n")
            _print_matrix(f["matrix"], out)
            for k in ("signature", "parity", "unimodular"):
                if k in f:
                    out.write(f"  {k}: {f[k]}\n")
    elif command == "alexander":
        out.write(f"rank {sec['rank']}\nDelta = {sec['delta']}\n")
    elif command == "torsion":
        out.write(f"tau = {sec['tau']}  (up to {sec['ambiguity']})\n")
        out.write(f"tau of punctured = {sec['tau_punctured']}  u = {sec['u']}\n")


# --- commands -----------------------------------------------------------------


def cmd_validate(args):
    d = load_diagram(args.diagram)
    rep = validate_diagram(d)
    sec = rep.to_json()
    sec["failures"] = rep.failures()
    return d, sec, 0 if rep.ok else 1


def cmd_homology(args):
    d = load_diagram(args.diagram)
    if args.twisted:
        tw = homology_twisted(d, _phi_arg(args.phi, d))
        return d, tw.to_json(), 0
    return d, homology_z(d).to_json(), 0


def cmd_forms(args):
    d = load_diagram(args.diagram)
    if not args.twisted:
        hz = homology_z(d)
        return d, {"wall": wall_form(d, hz).to_json(), "h1h3": h1h3_form(d, hz).to_json()}, 0
    tw = homology_twisted(d, _phi_arg(args.phi, d))
    h, _ = _basis_arg(args.basis, d, tw.phi.rank)
    h = h or {}
    sec = {
        "wall": wall_form_twisted(d, tw=tw, basis=h.get(2) or None).to_json(),
        "h1h3": h1h3_twisted(d, tw=tw, h1=h.get(1) or None, h3=h.get(3) or None).to_json(),
    }
    return d, sec, 0


def cmd_alexander(args):
    d = load_diagram(args.diagram)
    return d, alexander(d, _phi_arg(args.phi, d)).to_json(), 0


def cmd_torsion(args):
    d = load_diagram(args.diagram)
    S = twisted_setup(d, _phi_arg(args.phi, d))
    h, u = _basis_arg(args.basis, d, S.nvars)
    if args.u is not None:
        try:
            u = parse_word(args.u, d.genus)
        except WordError as e:
            raise UsageError(f"--u: {e}") from e
    rep = torsion_X(d, h=h, u=u, setup=S)
    return d, rep.to_json(), 0


COMMANDS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "forms": cmd_forms,
    "alexander": cmd_alexander,
    "torsion": cmd_torsion,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trisect", description="Invariants of 4-manifolds from trisection diagrams.")
    p.add_argument("--version", action="version", version=f"trisect {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        q = sub.add_parser(name)
        q.add_argument("diagram", help="diagram file or fixture name (%s)" % ", ".join(FIXTURES))
        q.add_argument("--json", action="store_true", help="machine-readable output")
        if name in ("homology", "forms"):
            q.add_argument("--twisted", action="store_true", help="phi-twisted version")
        if name != "validate":
            q.add_argument("--phi", help="file with an explicit coefficient map {rank, values}")
        if name in ("forms", "torsion"):
            q.add_argument("--basis", help="homology basis file {h1, h2, h3, u}")
        if name == "torsion":
            q.add_argument("--u", help="loop word u with phi(u) != 1")
    q = sub.add_parser("example", help="print a bundled fixture")
    q.add_argument("name", choices=FIXTURES)
    q = sub.add_parser("check", help="run the property suite")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--json", action="store_true")
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse already wrote to stderr
        return 0 if e.code == 0 else 2

    if args.command == "example":
        out.write(fixture_text(args.name))
        return 0
    if args.command == "check":
        results = run_all(seed=args.seed, stop_on_failure=True)
        ok = all(r[1] for r in results)
        if args.json:
            json.dump({"ok": ok, "checks": [{"name": n, "ok": p, "detail": m} for n, p, m in results]},
                      out, sort_keys=True, indent=2)
            out.write("\n")
        else:
            for n, p, m in results:
                out.write(f"{'PASS' if p else 'FAIL'}  {n}{': ' + m if m else ''}\n")
        return 0 if ok else 1

    try:
        d, sec, code = COMMANDS[args.command](args)
    except (DiagramError, UsageError, BasisError, KeyError, OSError) as e:
        err.write(f"trisect: error: {e}\n")
        return 2
    except (InvalidDiagram, TrivialPhi, FormError) as e:
        err.write(f"trisect: {args.command}: {e}\n")
        return 1
    if args.json:
        json.dump(_document(d, args.command, sec), out, sort_keys=True, indent=2)
        out.write("\n")
    else:
        _text(args.command, sec, out)
    if code:
        for p in sec.get("failures", []):
            err.write(f"trisect: validate: {p}\n")
    return code


def main() -> None:
    sys.exit(run())
