"""Command-line entry point: build, verify, symplectify, jet, prequantum, vdim-table."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import BadSpecJSON, DarbouxError, MasterEquationFails
from .models import (
    DarbouxSpec,
    ShiftClass,
    build_alternative_contact_form,
    build_contact,
    build_symplectic,
    canonical_hamiltonian,
    extend_with_artin_generators,
    instance_from_json,
    multiplicity_length,
)
from .report import CheckReport, emit_report
from .stacks import build_jet_instance, build_prequantum_instance
from .symplectify import symplectify, verify_symplectification
from .verify import DEFAULT_POINTS, DEFAULT_SEED, verify_instance, virtual_dimension


class UnknownSubcommand(DarbouxError):
    pass


def _seed(args) -> int:
    env = os.environ.get("DARBOUX_SEED")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise BadSpecJSON(f"DARBOUX_SEED must be an integer, got {env!r}") from None
    return args.seed


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise BadSpecJSON(f"cannot read {path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise BadSpecJSON(f"{path}: {e}") from None


def _load_instance(args, default_kind: str = "contact"):
    """Return an instance from either a DarbouxSpec or a serialized instance."""
    data = _load_json(args.spec)
    if not isinstance(data, dict):
        raise BadSpecJSON("top level must be a JSON object")
    if data.get("kind") in ("contact", "symplectic") and "gens" in data:
        try:
            inst = instance_from_json(data)
        except (KeyError, TypeError, ValueError) as e:
            raise BadSpecJSON(f"malformed instance JSON: {e}") from None
    else:
        try:
            spec = DarbouxSpec.from_json(data)
        except (KeyError, TypeError, ValueError) as e:
            raise BadSpecJSON(f"malformed spec JSON: {e}") from None
        kind = data.get("kind", default_kind)
        if kind not in ("contact", "symplectic"):
            raise BadSpecJSON(f"unknown kind {kind!r}")
        inst = build_contact(spec) if kind == "contact" else build_symplectic(spec)
    if getattr(args, "alt_form", False):
        inst = build_alternative_contact_form(inst)
    if getattr(args, "artin_w", 0):
        inst = extend_with_artin_generators(inst, args.artin_w)
    return inst


def _write(args, payload: bytes) -> None:
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode())


def _emit(args, rep: CheckReport, extra: dict | None = None) -> int:
    if args.format == "json" and extra is not None:
        body = {"report": rep.to_json(), **extra}
        payload = (json.dumps(body, sort_keys=True, indent=2) + "\n").encode()
    else:
        payload = emit_report(rep, args.format)
    _write(args, payload)
    return 0 if rep.passed else 2


def _failure_report(name: str, err: Exception) -> CheckReport:
    rep = CheckReport("")
    rep.add(name, False, {"error": type(err).__name__, "message": str(err)})
    return rep


# ---------------------------------------------------------------------------
# subcommands

def cmd_build(args) -> int:
    try:
        inst = _load_instance(args)
    except MasterEquationFails as e:
        return _emit(args, _failure_report("master_equation", e))
    rep = CheckReport(inst.digest())
    sq = inst.d.square_check()
    rep.add("d_squared", sq.passed, sq.witness)
    if args.format == "json":
        return _emit(args, rep, {"instance": inst.to_json()})
    return _emit(args, rep)


def cmd_verify(args) -> int:
    try:
        inst = _load_instance(args)
    except MasterEquationFails as e:
        return _emit(args, _failure_report("master_equation", e))
    rep = verify_instance(inst, n_points=args.points, seed=_seed(args))
    return _emit(args, rep)


def cmd_symplectify(args) -> int:
    try:
        inst = _load_instance(args)
    except MasterEquationFails as e:
        return _emit(args, _failure_report("master_equation", e))
    if inst.kind != "contact":
        raise BadSpecJSON("symplectify needs a contact instance")
    s = symplectify(inst)
    rep = verify_symplectification(s, n_points=args.points, seed=_seed(args))
    return _emit(args, rep, {"instance": s.to_json()})


def cmd_jet(args) -> int:
    inst = build_jet_instance(args.shift, args.dim)
    return _emit(args, verify_instance(inst, n_points=args.points, seed=_seed(args)))


def cmd_prequantum(args) -> int:
    twist = None
    if args.twist:
        twist = _load_json(args.twist) if Path(args.twist).exists() else _parse_inline(args.twist)
    inst = build_prequantum_instance(args.dim, twist)
    return _emit(args, verify_instance(inst, n_points=args.points, seed=_seed(args)))


def _parse_inline(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise BadSpecJSON(f"--twist: {e}") from None


def vdim_rows(ks, ms=(1, 2)) -> list[dict]:
    """Virtual dimensions over a small multiplicity grid, per shift."""
    rows = []
    for k in ks:
        n = multiplicity_length(k)
        for mv in ms:
            for mid in ms:
                m = tuple([mv] * (n - 1) + [mid]) if n > 1 else (mv,)
                spec = DarbouxSpec(k, m, canonical_hamiltonian(k, m))
                rows.append({
                    "k": k, "class": ShiftClass.of(k).value, "m": list(m),
                    "contact": virtual_dimension(build_contact(spec)),
                    "symplectic": virtual_dimension(build_symplectic(spec)),
                })
                if n == 1:
                    break
    return rows


def vdim_table_report(ks) -> CheckReport:
    rows = vdim_rows(ks)
    rep = CheckReport("vdim-table")
    for k in ks:
        cls = ShiftClass.of(k)
        mine = [r for r in rows if r["k"] == k]
        if cls is ShiftClass.ODD:
            rep.add(f"k={k} contact=-1", all(r["contact"] == -1 for r in mine))
            rep.add(f"k={k} symplectic=0", all(r["symplectic"] == 0 for r in mine))
        elif cls is ShiftClass.ZERO_MOD_4:
            rep.add(f"k={k} symplectic even", all(r["symplectic"] % 2 == 0 for r in mine))
        else:
            parities = {r["symplectic"] % 2 for r in mine}
            rep.add(f"k={k} symplectic both parities", parities == {0, 1}, {"parities": sorted(parities)})
        if cls is not ShiftClass.ODD:
            rep.add(f"k={k} contact=symplectic+1", all(r["contact"] == r["symplectic"] + 1 for r in mine))
    rep.notes = rows
    return rep


def cmd_vdim_table(args) -> int:
    rep = vdim_table_report(args.k)
    if args.format == "text":
        lines = [f"{'k':>4} {'class':>9} {'m':<14} {'contact':>8} {'symplectic':>11}"]
        for r in rep.notes:
            lines.append(f"{r['k']:>4} {r['class']:>9} {str(r['m']):<14} {r['contact']:>8} {r['symplectic']:>11}")
        text = "\n".join(lines) + "\n" + emit_report(CheckReport(rep.instance, rep.checks), "text").decode()
        _write(args, text.encode())
        return 0 if rep.passed else 2
    return _emit(args, rep)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="darboux", description="Exact Darboux-model builder and verifier.")
    sub = p.add_subparsers(dest="command")

    def common(sp, spec=True):
        if spec:
            sp.add_argument("--spec", required=True, help="DarbouxSpec or instance JSON ('-' for stdin)")
            sp.add_argument("--alt-form", action="store_true", help="use the alternative contact form (odd k)")
            sp.add_argument("--artin-w", type=int, default=0, help="append N degree k-1 generators")
        sp.add_argument("--points", type=int, default=DEFAULT_POINTS)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("json", "text"), default="json")

    common(sub.add_parser("build", help="build an instance from a spec"))
    common(sub.add_parser("verify", help="build and run the verifier suite"))
    common(sub.add_parser("symplectify", help="symplectify a contact instance"))
    j = sub.add_parser("jet", help="n-shifted 1-jet instance")
    j.add_argument("--shift", type=int, required=True)
    j.add_argument("--dim", type=int, required=True)
    common(j, spec=False)
    q = sub.add_parser("prequantum", help="prequantum G_m-bundle instance")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--twist", default=None, help="closed 1-form JSON (inline or path)")
    common(q, spec=False)
    v = sub.add_parser("vdim-table", help="virtual dimensions per shift class")
    v.add_argument("--k", type=int, nargs="+", required=True)
    common(v, spec=False)
    return p


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "symplectify": cmd_symplectify,
    "jet": cmd_jet,
    "prequantum": cmd_prequantum,
    "vdim-table": cmd_vdim_table,
}


def run_pipeline(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code else 0
    try:
        if args.command not in COMMANDS:
            raise UnknownSubcommand(f"unknown subcommand {args.command!r}")
        return COMMANDS[args.command](args)
    except DarbouxError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_pipeline())


if __name__ == "__main__":
    main()
