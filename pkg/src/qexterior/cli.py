"""Command-line front end.

Commands: check, cohomology, dolbeault, equivariant, lefschetz, chern,
integral.  All reports are UTF-8 JSON, byte-identical for identical
(command, config, seed); LaTeX emission is optional for tables.

Exit codes: 0 success, 1 property failure, 2 malformed input or violated
precondition.
"""

from __future__ import annotations

import argparse
import sys

from .hpoly import HLaurent, HPoly
from .sampling import PRNG_NAME
from .serialize import (CONVENTIONS, action_from_json, connection_from_json,
                        dump_json, form_from_json, model_from_json,
                        spectrum_to_json, table_to_json, table_to_latex)

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_BAD_INPUT = 2


class CliError(Exception):
    def __init__(self, message, code=EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


def _load_json(path):
    import json
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(f"file not found: {path}")
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {path}: {exc}")


def _load_model(args):
    if not args.model:
        raise CliError("--model is required for this command")
    try:
        return model_from_json(_load_json(args.model))
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise CliError(f"bad model file: {exc}")


def _ring(args):
    return HLaurent if args.ring == "laurent" else HPoly


def _emit(args, payload: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _report_header(args, command):
    return {"command": command, "seed": args.seed, "prng": PRNG_NAME,
            "conventions": CONVENTIONS}


def cmd_check(args) -> int:
    from .suites import SUITES, run_suite
    model = _load_model(args) if args.model else None
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES and name != "negative-control":
            raise CliError(f"unknown suite {args.suite!r}; choose from "
                           f"{', '.join(SUITES)} or 'all'")
    results = []
    failed = False
    for name in names:
        try:
            res = run_suite(name, model, args.trials, args.seed)
        except (ValueError, KeyError) as exc:
            raise CliError(f"suite {name}: {exc}")
        results.append(res.to_json())
        if not res.ok:
            failed = True
    payload = dict(_report_header(args, "check"))
    payload["results"] = results
    payload["status"] = "fail" if failed else "pass"
    _emit(args, dump_json(payload))
    return EXIT_PROPERTY_FAILURE if failed else EXIT_OK


def _table_payload(args, command, table):
    payload = dict(_report_header(args, command))
    payload.update(table_to_json(table))
    text = dump_json(payload)
    if args.latex:
        text += table_to_latex(table) + "\n"
    return text


def cmd_cohomology(args) -> int:
    from .cohomology import quantum_derham_table
    model = _load_model(args)
    try:
        table = quantum_derham_table(model, mode_box=args.mode_box,
                                     max_degree=args.max_degree,
                                     ring=_ring(args))
    except ValueError as exc:
        raise CliError(str(exc))
    _emit(args, _table_payload(args, "cohomology", table))
    return EXIT_OK


def cmd_dolbeault(args) -> int:
    from .cohomology import quantum_dolbeault_table
    model = _load_model(args)
    try:
        table = quantum_dolbeault_table(model, mode_box=args.mode_box,
                                        ring=_ring(args))
    except ValueError as exc:
        raise CliError(str(exc))
    _emit(args, _table_payload(args, "dolbeault", table))
    return EXIT_OK


def cmd_equivariant(args) -> int:
    from .equivariant import equivariant_cohomology_table
    model = _load_model(args)
    if not args.action:
        raise CliError("--action is required for equivariant tables")
    try:
        action = action_from_json(_load_json(args.action), model)
        table = equivariant_cohomology_table(model, action,
                                             cutoff=args.cutoff,
                                             mode_box=args.mode_box,
                                             ring=HPoly)
    except ValueError as exc:
        raise CliError(str(exc))
    _emit(args, _table_payload(args, "equivariant", table))
    return EXIT_OK


def cmd_lefschetz(args) -> int:
    from .lefschetz import commutator_check, hard_lefschetz_check
    n = args.n
    if n < 1 or n > 3:
        raise CliError("lefschetz reports cover n in 1..3")
    comm = commutator_check(n)
    hl = hard_lefschetz_check(n)
    payload = dict(_report_header(args, "lefschetz"))
    payload["n"] = n
    payload["commutators"] = {k: bool(v) for k, v in comm.results.items()}
    payload["commutator_notes"] = comm.notes
    payload["blocks"] = {
        str(k): spectrum_to_json(b, hl.conformance[k])
        for k, b in sorted(hl.blocks.items())}
    payload["all_invertible"] = hl.all_invertible
    payload["status"] = "pass" if (comm.ok and hl.all_invertible) else "fail"
    _emit(args, dump_json(payload))
    return EXIT_OK if comm.ok and hl.all_invertible else EXIT_PROPERTY_FAILURE


def cmd_chern(args) -> int:
    from .chern import char_form_certificate, quantum_curvature
    from .serialize import form_to_json
    model = _load_model(args)
    if not args.connection:
        raise CliError("--connection is required for chern reports")
    try:
        conn = connection_from_json(_load_json(args.connection), model)
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"bad connection file: {exc}")
    F = quantum_curvature(conn)
    payload = dict(_report_header(args, "chern"))
    payload["rank"] = conn.rank
    payload["curvature"] = [[form_to_json(F[i][j]) for j in range(conn.rank)]
                            for i in range(conn.rank)]
    chars = {}
    closed = True
    for k in range(1, args.power + 1):
        form, cert = char_form_certificate(F, k, model)
        chars[str(k)] = {"form": form_to_json(form),
                         "d_h": form_to_json(cert),
                         "closed": cert.is_zero()}
        closed = closed and cert.is_zero()
    payload["char_forms"] = chars
    payload["status"] = "pass" if closed else "fail"
    _emit(args, dump_json(payload))
    return EXIT_OK if closed else EXIT_PROPERTY_FAILURE


def cmd_integral(args) -> int:
    from .calculus import qintegral, stokes_check
    from .hpoly import hpoly_to_json
    model = _load_model(args)
    if not args.form:
        raise CliError("--form is required for integrals")
    try:
        form = form_from_json(_load_json(args.form), model,
                              laurent=(args.ring == "laurent"))
        value = qintegral(form, model)
        stokes = stokes_check(form, model)
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(str(exc))
    payload = dict(_report_header(args, "integral"))
    payload["integral"] = hpoly_to_json(value)
    payload["stokes"] = {"int_d": hpoly_to_json(stokes.int_d),
                         "int_h_delta": hpoly_to_json(stokes.int_hdelta),
                         "int_dh": hpoly_to_json(stokes.int_dh),
                         "pass": bool(stokes)}
    payload["status"] = "pass" if stokes else "fail"
    _emit(args, dump_json(payload))
    return EXIT_OK if stokes else EXIT_PROPERTY_FAILURE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qexterior",
        description="Exact quantum exterior calculus on Poisson model spaces")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--model", help="model JSON file")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--trials", type=int, default=100)
        sp.add_argument("--mode-box", dest="mode_box", type=int, default=1)
        sp.add_argument("--max-degree", dest="max_degree", type=int,
                        default=None)
        sp.add_argument("--ring", choices=["polynomial", "laurent"],
                        default="laurent")
        sp.add_argument("--latex", action="store_true")
        sp.add_argument("--out", help="output path (default stdout)")

    sp = sub.add_parser("check", help="run randomized property suites")
    common(sp)
    sp.add_argument("--suite", default="all")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("cohomology", help="quantum de Rham table")
    common(sp)
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("dolbeault", help="quantum Dolbeault table")
    common(sp)
    sp.set_defaults(func=cmd_dolbeault)

    sp = sub.add_parser("equivariant", help="equivariant cohomology table")
    common(sp)
    sp.add_argument("--action", help="action JSON file")
    sp.add_argument("--cutoff", type=int, default=6)
    sp.set_defaults(func=cmd_equivariant)

    sp = sub.add_parser("lefschetz", help="Lefschetz spectrum report")
    common(sp)
    sp.add_argument("--n", type=int, default=1)
    sp.set_defaults(func=cmd_lefschetz)

    sp = sub.add_parser("chern", help="quantum characteristic forms")
    common(sp)
    sp.add_argument("--connection", help="connection JSON file")
    sp.add_argument("--power", type=int, default=2)
    sp.set_defaults(func=cmd_chern)

    sp = sub.add_parser("integral", help="quantum integral and Stokes check")
    common(sp)
    sp.add_argument("--form", help="form JSON file")
    sp.set_defaults(func=cmd_integral)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        error = {"error": {"code": exc.code, "message": str(exc)}}
        out = dump_json(error)
        if getattr(args, "out", None):
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(out)
        sys.stderr.write(out)
        return exc.code


if __name__ == "__main__":
    raise SystemExit(main())
