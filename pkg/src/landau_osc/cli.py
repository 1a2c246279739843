"""Command-line entry point: ``landau-osc <subcommand> [options]``.

Exit codes: 0 all checks pass, 1 a check failed or propagation broke down,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from landau_osc import suites
from landau_osc.classical import DivergenceError
from landau_osc.config import ConfigError, RunConfig, load_config_file, parse_overrides
from landau_osc.entangle import CutoffExceeded
from landau_osc.quantum_grid import InstabilityError, grid_metadata, grid_to_rows
from landau_osc.report import ensure_dir, rows_to_csv, write_atomic, write_report

log = logging.getLogger("landau_osc")

# flag dest -> config key
_FLAG_KEYS = {
    "charge": "charge",
    "field": "field",
    "mass": "mass",
    "light_speed": "light_speed",
    "hbar": "hbar",
    "grid_n": "grid_n",
    "grid_length": "grid_length",
    "dt": "dt",
    "classical_dt": "classical_dt",
    "periods": "periods",
    "max_quanta": "max_quanta",
    "quad_order": "quad_order",
    "seed": "seed",
    "out": "out",
    "format": "format",
}


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="key = value file; flags override it")
    g.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="generic override, e.g. tol.consistency=1e-4")
    g.add_argument("--out", help="output directory (default: out)")
    g.add_argument("--format", choices=("json", "csv"))
    g.add_argument("--seed", type=int)
    g.add_argument("--charge", type=float)
    g.add_argument("--field", "-B", type=float)
    g.add_argument("--mass", type=float)
    g.add_argument("--light-speed", type=float)
    g.add_argument("--hbar", type=float)
    g.add_argument("--grid-n", type=int)
    g.add_argument("--grid-length", type=float, help="grid side in oscillator lengths")
    g.add_argument("--dt", type=float, help="quantum step in units of 1/omega_L")
    g.add_argument("--classical-dt", type=float, help="RK4 step in units of 1/|omega|")
    g.add_argument("--periods", type=float, help="classical horizon in cyclotron periods")
    g.add_argument("--max-quanta", type=int)
    g.add_argument("--quad-order", type=int, help="0 picks the exact order")
    g.add_argument("--theta", action="append", default=[],
                   help="rotation angle(s) in radians; repeat or comma-separate")
    g.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="landau-osc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("classical-equiv", "trajectory equivalence, energy conservation, RK4 convergence"),
        ("canonicity", "rotation exponential, symplectic Jacobian, Kamiltonian residual"),
        ("hermite-verify", "generating function, orthonormality, eigen-equation"),
        ("spectrum", "stationary energies of mapped eigenstates"),
        ("report", "every suite plus the errata table"),
    ):
        _common(sub.add_parser(name, help=help_))
    c = sub.add_parser("coefficients", help="expansion tables of a rotated Fock state")
    _common(c)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--m", type=int, default=0)
    pr = sub.add_parser("propagate", help="grid evolution of a mapped superposition")
    _common(pr)
    pr.add_argument("--state", default="1,0,1;0,1,1", help='"n1,n2,amp;..." (complex amp like 1+2j)')
    pr.add_argument("--k", type=float, default=0.0, help="longitudinal wavenumber")
    pr.add_argument("--t-end", type=float, default=1.0, help="in cyclotron periods")
    pr.add_argument("--samples", type=int, default=10)
    return p


def config_from_args(args) -> RunConfig:
    pairs = {}
    if args.config:
        pairs.update(load_config_file(args.config))
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        pairs[k.strip()] = v.strip()
    for dest, key in _FLAG_KEYS.items():
        v = getattr(args, dest, None)
        if v is not None:
            pairs[key] = str(v)
    if args.theta:
        pairs["thetas"] = ",".join(args.theta)
    return parse_overrides(pairs)


def _emit(report, artifacts: dict, cfg: RunConfig) -> None:
    out = ensure_dir(cfg.out)
    for name, text in artifacts.items():
        if isinstance(text, str):
            write_atomic(out / name, text)
    for path in write_report(report, out, cfg.format):
        log.info("wrote %s", path)
    sys.stdout.write(report.summary())


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        start = time.perf_counter()
        cmd = args.command
        if cmd == "classical-equiv":
            rep, art = suites.classical_equiv(cfg)
        elif cmd == "canonicity":
            rep, art = suites.canonicity(cfg)
        elif cmd == "hermite-verify":
            rep, art = suites.hermite_verify(cfg)
        elif cmd == "spectrum":
            rep, art = suites.spectrum(cfg)
        elif cmd == "coefficients":
            rep, art = suites.coefficients(cfg, sources=[(args.n, args.m)])
            art = _table_artifacts(art.pop("tables"), args.n, args.m, cfg.format)
        elif cmd == "propagate":
            state = suites.parse_state(args.state, args.k)
            if args.t_end < 0:
                raise ConfigError("--t-end must be nonnegative")
            rep, art = suites.propagate(cfg, state, args.t_end, args.samples)
            art = _propagate_artifacts(art, cfg.format)
        else:
            rep, art = suites.full_report(cfg)
        log.info("%s finished in %.1f s", cmd, time.perf_counter() - start)
        _emit(rep, art, cfg)
        return rep.exit_code
    except (ConfigError, CutoffExceeded) as exc:
        print(f"landau-osc: error: {exc}", file=sys.stderr)
        return 2
    except (InstabilityError, DivergenceError) as exc:
        print(f"landau-osc: propagation failed: {exc}", file=sys.stderr)
        return 1


def _table_artifacts(tables, n, m, fmt) -> dict:
    import json

    out = {}
    for i, t in enumerate(tables):
        stem = f"coefficients_{n}_{m}_theta{i}"
        if fmt == "json":
            out[stem + ".json"] = json.dumps(t.to_dict(), indent=2)
        else:
            out[stem + ".csv"] = rows_to_csv(
                ("theta", "l1", "l2", "oracle", "closed_form", "abs_diff"),
                ([t.theta, a, b, float(o), float(c), float(abs(c - o))]
                 for (a, b), o, c in zip(t.targets, t.oracle, t.closed_form)),
            )
    return out


def _propagate_artifacts(art: dict, fmt: str) -> dict:
    import json

    grid = art.pop("grid")
    if fmt == "json":
        art["final_grid.json"] = json.dumps({
            **grid_metadata(grid),
            "re": grid.psi.real.tolist(),
            "im": grid.psi.imag.tolist(),
        })
    else:
        art["final_grid.csv"] = rows_to_csv(("i", "j", "re", "im"),
                                            ([int(i), int(j), float(r), float(m)] for i, j, r, m in grid_to_rows(grid)))
    return art


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
