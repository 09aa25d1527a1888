"""Command-line interface: ``posdirac <command> [options]``.

Settings resolve as defaults < ``--config`` file < explicit flags.  Every
command writes one artifact to ``--output`` (atomically) or to stdout.
Set POSDIRAC_THREADS to cap the BLAS/OpenMP thread pools.

Exit status: 0 on success, 2 for usage or configuration errors, 1 for
numerical failures.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import ConfigError, merge, read_config_file

_THREAD_VARS = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")


def _apply_threads():
    n = os.environ.get("POSDIRAC_THREADS")
    if n is None:
        return
    if not n.isdigit() or int(n) < 1:
        raise ConfigError(f"POSDIRAC_THREADS must be a positive integer, got {n!r}")
    for var in _THREAD_VARS:
        os.environ[var] = n


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", type=Path, help="key=value configuration file")
    p.add_argument("--output", "-o", type=Path, help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--alpha", type=float, help="fine-structure constant (default 1/137)")


def _basis_flags(p: argparse.ArgumentParser):
    p.add_argument("--case", type=int, choices=(1, 2, 3))
    p.add_argument("--J", type=int, dest="J")
    p.add_argument("--rho0", type=float, help="basis radius in Bohr")
    p.add_argument("--M", type=int, dest="M", help="number of basis functions")
    p.add_argument("--quadrature", choices=("exact", "dvr", "gauss", "nodal"))
    p.add_argument("--count", type=int, help="number of levels to report")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="posdirac",
                                 description="Two-body Dirac positronium calculations.")
    ap.add_argument("--list", action="store_true", help="list artifact kinds and exit")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("pauli-table", help="Pauli energies and Breit corrections")
    _common(p)
    p.add_argument("--table", type=int, choices=(1, 2))

    p = sub.add_parser("dirac-solve", help="bound levels of one partial-wave case")
    _common(p)
    _basis_flags(p)
    p.add_argument("--rep", choices=("momentum", "fem"))
    p.add_argument("--n", type=int, help="principal quantum number for FEM grid scaling")
    p.add_argument("--grid-profile", dest="grid_profile",
                   choices=("paper_default", "anomalous_region1"))
    p.add_argument("--profile", action="store_true", help="emit ground-state channel profiles")

    p = sub.add_parser("anomalous", help="anomalous small-distance states")
    _common(p)
    _basis_flags(p)
    p.add_argument("--rep", choices=("momentum", "fem", "dvr"))
    p.add_argument("--grid-profile", dest="grid_profile",
                   choices=("paper_default", "anomalous_region1"))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--profiles", action="store_true", help="emit wavefunction profiles")
    g.add_argument("--catalog", action="store_true", help="emit the J=0 family catalog")

    p = sub.add_parser("coupling-profile", help="large/small components near the origin")
    _common(p)
    p.add_argument("--n", type=int)

    p = sub.add_parser("bs-project", help="projected Bethe-Salpeter spectrum")
    _common(p)
    _basis_flags(p)
    p.add_argument("--kind", choices=("feynman", "retarded"))

    p = sub.add_parser("verify-addition", help="addition-theorem residuals")
    _common(p)
    p.add_argument("--J", type=int, dest="J")
    p.add_argument("--j-max", type=float, dest="j_max")
    p.add_argument("--seed", type=int)

    sub.add_parser("list", help="list artifact kinds")
    return ap


def _print_kinds(stream):
    from .artifacts import ARTIFACT_KINDS
    width = max(map(len, ARTIFACT_KINDS))
    for kind, (cmd, desc) in ARTIFACT_KINDS.items():
        stream.write(f"{kind:<{width}}  posdirac {cmd:<36} {desc}\n")


_FLAG_FIELDS = ("alpha", "output", "format", "table", "case", "J", "rho0", "M", "quadrature",
                "count", "rep", "n", "grid_profile", "kind", "j_max", "seed")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.list or args.command == "list":
        _print_kinds(sys.stdout)
        return 0
    if args.command is None:
        ap.print_usage(sys.stderr)
        return 2
    try:
        _apply_threads()
        file_values = read_config_file(args.config) if args.config else {}
        flags = {k: getattr(args, k) for k in _FLAG_FIELDS if hasattr(args, k)}
        cfg = merge(args.command, file_values, flags)
    except (ConfigError, OSError) as exc:
        print(f"posdirac: error: {exc}", file=sys.stderr)
        return 2
    variant = next((v for v in ("profile", "profiles", "catalog") if getattr(args, v, False)),
                   None)
    # heavy imports only after the thread variables are set
    from ..eigen import EigenSolverError
    from ..special import QuadratureError, RootBracketError
    from .artifacts import render, write_atomic
    from .producers import produce
    try:
        text = render(produce(cfg, variant), cfg.format)
    except (EigenSolverError, QuadratureError, RootBracketError, ValueError, KeyError) as exc:
        print(f"posdirac: {args.command} failed: {exc}", file=sys.stderr)
        return 1
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        write_atomic(cfg.output, text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
