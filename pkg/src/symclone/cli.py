"""Command-line surface.

Exit codes: 0 on success/pass, 1 on a verified negative result (a candidate
fails verification, the readout equation is infeasible, a refutation or size
witness is produced), 2 on usage, parse, or shape errors.  Reports are
deterministic for fixed arguments and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .classical import (
    CloningProcess,
    InfeasibleError,
    NotApplicableError,
    basic_cloner,
    clone_residual_probe,
    general_cloner,
    readout_solver,
    size_witness,
    verify_cloning,
)
from .diagrams import (
    check_cloning_diagram,
    diagram_from_process,
    hilbert_cloning_diagram,
)
from .exact import (
    DegenerateFormError,
    RatMatrix,
    ShapeError,
    SkewForm,
    darboux_basis,
    is_symplectic_map,
    standard_form,
)
from .quantum import (
    HypothesisViolationError,
    complex_matrix_from_json,
    complex_vector_from_json,
    standard_refutation,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit(report: dict, fmt: str, human_lines) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


class CliError(Exception):
    """Usage-level failure; maps to exit code 2."""


def _cmd_construct_basic(args) -> int:
    process = basic_cloner()
    _emit(process.to_json(), args.format, ["basic cloning process on R^2, machine R^2, phi 6x6"])
    return EXIT_OK


def _cmd_construct_general(args) -> int:
    if args.dim < 0 or args.dim % 2:
        raise CliError(f"--dim must be even and nonnegative, got {args.dim}")
    process = general_cloner(standard_form(args.dim // 2))
    _emit(
        process.to_json(),
        args.format,
        [f"cloning process on the standard {args.dim}-dimensional space, machine dim {args.dim}"],
    )
    return EXIT_OK


def _load_process(path: str) -> CloningProcess:
    data = _load_json(path)
    try:
        return CloningProcess.from_json(data)
    except (KeyError, TypeError) as exc:
        raise CliError(f"{path}: missing or malformed field: {exc}")
    except (ShapeError, DegenerateFormError, ValueError) as exc:
        raise CliError(f"{path}: {exc}")


def _cmd_verify(args) -> int:
    process = _load_process(args.input)
    report = verify_cloning(process)
    out = report.to_json()
    if report.symplectic_defect_norm:
        from .classical import symplectic_defect

        defect = symplectic_defect(process.phi, process.total_form(), process.total_form())
        loc = next(
            (i, j)
            for i in range(defect.rows)
            for j in range(defect.cols)
            if defect[i, j]
        )
        out["first_defect_entry"] = {"row": loc[0], "col": loc[1], "value": str(defect[loc])}
    lines = [f"verdict: {report.verdict}"]
    if not report.passed:
        lines.append(f"reason: {report.reason}")
        lines.append(f"symplectic defect (max abs): {report.symplectic_defect_norm}")
        lines.append(f"cloning residual (max abs): {report.cloning_residual}")
    _emit(out, args.format, lines)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_darboux(args) -> int:
    data = _load_json(args.input)
    try:
        form = SkewForm.from_json(data)
    except (KeyError, TypeError) as exc:
        raise CliError(f"{args.input}: missing or malformed field: {exc}")
    except (ShapeError, DegenerateFormError, ValueError) as exc:
        raise CliError(f"{args.input}: {exc}")
    basis = darboux_basis(form)
    ok = is_symplectic_map(basis, standard_form(form.dim // 2), form)
    _emit(
        {"basis": basis.to_json(), "pullback_standard": ok},
        args.format,
        [f"normalizing basis computed; exact standard pullback: {ok}"],
    )
    return EXIT_OK


def _cmd_readout_solve(args) -> int:
    try:
        F = readout_solver(args.m, args.k)
    except InfeasibleError as exc:
        _emit(
            {"infeasible": True, "reason": exc.reason, "detail": str(exc)},
            args.format,
            [f"infeasible: {exc}"],
        )
        return EXIT_FAIL
    _emit(
        {"infeasible": False, "readout": F.to_json()},
        args.format,
        [f"readout map found: {2 * args.k}x{2 * args.m}"],
    )
    return EXIT_OK


def _cmd_size_witness(args) -> int:
    process = _load_process(args.input)
    try:
        witness = size_witness(process)
    except NotApplicableError as exc:
        raise CliError(str(exc))
    _emit(
        witness.to_json(),
        args.format,
        [
            "machine too small: readout kernel vector "
            + "(" + ", ".join(str(x) for x in witness.vector) + ")",
            f"object form pairs it with a partner to {witness.pairing} != 0, "
            "but the machine-form pullback vanishes on it",
        ],
    )
    return EXIT_FAIL  # a witness refutes the candidate


def _cmd_quantum_refute(args) -> int:
    try:
        refutation = standard_refutation(args.dim, args.psi_overlap)
    except HypothesisViolationError as exc:
        raise CliError(str(exc))
    _emit(
        refutation.to_json(),
        args.format,
        [
            f"cloning both states would force machine overlap {refutation.implied_machine_overlap:.6g}",
            f"Cauchy-Schwarz excess: {refutation.cauchy_schwarz_excess:.6g}",
            f"distance to nearest exact clone: {refutation.cloning_residual:.6g}",
        ],
    )
    return EXIT_FAIL  # refutation produced


def _cmd_probe(args) -> int:
    try:
        best = clone_residual_probe(args.m, args.k, args.iters, args.seed)
    except (NotApplicableError, ValueError) as exc:
        raise CliError(str(exc))
    out = {"best_defect": best, "m": args.m, "k": args.k, "iters": args.iters, "seed": args.seed}
    if args.k == 0:
        out["forced_lower_bound"] = math.sqrt(2 * args.m)
    _emit(out, args.format, [f"best symplectic defect found: {best:.6g}"])
    return EXIT_OK


def _cmd_diagram_check(args) -> int:
    if args.instance == "symp":
        process = _load_process(args.input)
        inst, diagram = diagram_from_process(process)
        report = check_cloning_diagram(inst, diagram)
    else:
        data = _load_json(args.input)
        try:
            U = complex_matrix_from_json(data["unitary"])
            beta = complex_vector_from_json(data["beta"])
            rho = complex_vector_from_json(data["rho"]) if "rho" in data else None
        except (KeyError, TypeError, ValueError) as exc:
            raise CliError(f"{args.input}: missing or malformed field: {exc}")
        try:
            inst, diagram = hilbert_cloning_diagram(U, beta, rho)
        except ShapeError as exc:
            raise CliError(f"{args.input}: {exc}")
        import numpy as np

        states = inst.sample_states(diagram.object_a, count=args.samples,
                                    rng=np.random.default_rng(args.seed))
        report = check_cloning_diagram(inst, diagram, states)
    out = report.to_json()
    lines = [
        f"diagram commutes on {out['checked'] - out['failures']}/{out['checked']} sampled states",
        out["note"],
    ]
    _emit(out, args.format, lines)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symclone",
        description="Construct, verify, and refute cloning processes for "
        "symplectic vector spaces and finite-dimensional Hilbert spaces.",
    )
    parser.add_argument("--format", choices=["json", "human"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("construct-basic", help="emit the explicit 2-dimensional cloning process")

    p = sub.add_parser("construct-general", help="cloning process for the standard form")
    p.add_argument("--dim", type=int, required=True, help="object phase-space dimension (even)")

    p = sub.add_parser("verify", help="verify a candidate process from a JSON file")
    p.add_argument("--input", required=True)

    p = sub.add_parser("darboux", help="normalize a skew form from a JSON file")
    p.add_argument("--input", required=True)

    p = sub.add_parser("readout-solve", help="solve the readout-form equation")
    p.add_argument("--m", type=int, required=True, help="object pair count (dim M = 2m)")
    p.add_argument("--k", type=int, required=True, help="machine pair count (dim N = 2k)")

    p = sub.add_parser("size-witness", help="kernel witness for an undersized machine")
    p.add_argument("--input", required=True)

    p = sub.add_parser("quantum-refute", help="run the quantum no-cloning contradiction")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--psi-overlap", type=float, default=2 ** -0.5)

    p = sub.add_parser("probe", help="numerical defect search in the infeasible regime")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--iters", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("diagram-check", help="check a cloning diagram on sampled states")
    p.add_argument("--instance", choices=["symp", "hilb"], required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--samples", type=int, default=8, help="extra random states (hilb only)")
    p.add_argument("--seed", type=int, default=0)

    return parser


_HANDLERS = {
    "construct-basic": _cmd_construct_basic,
    "construct-general": _cmd_construct_general,
    "verify": _cmd_verify,
    "darboux": _cmd_darboux,
    "readout-solve": _cmd_readout_solve,
    "size-witness": _cmd_size_witness,
    "quantum-refute": _cmd_quantum_refute,
    "probe": _cmd_probe,
    "diagram-check": _cmd_diagram_check,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _HANDLERS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ShapeError, DegenerateFormError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
