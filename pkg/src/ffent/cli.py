"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 configuration or
validation error, 3 numerical health failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .ensemble.config import ExperimentConfig
from .ensemble.experiments import EXPERIMENTS, padding_check
from .errors import ConfigError, FfentError, FitUnderdetermined, NumericError
from .hamiltonian import assemble, sample_potential
from .lattice import LatticeSpec
from .spectral import diagonalize
from .verify import SUITES, dropped_sqrt_h0, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

# fields that take a comma-separated list on the command line
_LIST_FIELDS = {"block_half_widths": int, "renyi_alphas": float}
_SCALAR_TYPES = {
    "dimension": int,
    "padding": int,
    "realizations": int,
    "master_seed": int,
    "chemical_potential": float,
    "filling_fraction": str,
    "r_max": int,
    "split_box_half_width": int,
    "halfspace_box_half_width": int,
    "resolvent_energy": float,
    "resolvent_epsilon": float,
    "moment_s": float,
}
FAULTS = {"dropped-sqrt": dropped_sqrt_h0}


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _list_of(kind):
    def parse(text: str):
        try:
            return [kind(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated {kind.__name__} values, got {text!r}")

    return parse


def _add_overrides(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("config overrides")
    for f in dataclasses.fields(ExperimentConfig):
        if f.name in ("model", "master_seed", "realizations"):
            continue
        flags = [f"--{f.name}"]
        if "_" in f.name:
            flags.append(f"--{f.name.replace('_', '-')}")
        kind = _LIST_FIELDS.get(f.name)
        g.add_argument(*flags, dest=f"override_{f.name}", metavar="VALUE",
                       type=_list_of(kind) if kind else _SCALAR_TYPES[f.name], default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in EXPERIMENTS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", required=True, help="experiment JSON, or a manifest.json from an earlier run")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override master_seed")
        p.add_argument("--realizations", type=int, default=None, help="override the number of realizations")
        p.add_argument("--threads", type=int, default=1, help="worker threads (0 = all cores)")
        p.add_argument("--dump-potential", action="store_true", help="write each realization's potential as CSV")
        p.add_argument("--dump-spectrum", action="store_true", help="write each realization's eigenvalues as CSV")
        p.add_argument("--timing", action="store_true", help="record wall_ms (breaks bit-identical reruns)")
        if name == "sweep":
            p.add_argument("--padding-check", action="store_true",
                           help="also rerun with doubled padding and report the change in the mean")
        _add_overrides(p)

    p = sub.add_parser("oracle-check", help="many-body oracle equivalence, JSON report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="also write the report to this file")

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", choices=sorted(FAULTS), default=None,
                   help="replace h0 with a known-bad variant (properties suite)")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of a table")
    return parser


# --------------------------------------------------------------------------
# config loading
# --------------------------------------------------------------------------


def load_config(path: str, args: argparse.Namespace) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(data, dict) and "config_hash" in data and "config" in data:
        data = data["config"]
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    data = dict(data)
    for f in dataclasses.fields(ExperimentConfig):
        value = getattr(args, f"override_{f.name}", None)
        if value is not None:
            data[f.name] = value
            if f.name == "chemical_potential":
                data["filling_fraction"] = None
            if f.name == "filling_fraction":
                data["chemical_potential"] = None
    if args.seed is not None:
        data["master_seed"] = args.seed
    if args.realizations is not None:
        data["realizations"] = args.realizations
    try:
        return ExperimentConfig.from_dict(data)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


# --------------------------------------------------------------------------
# outputs
# --------------------------------------------------------------------------


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def write_jsonl(path: Path, records: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in records:
            fh.write(json.dumps(r, sort_keys=True, default=_json_default) + "\n")


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])


def experiment_boxes(name: str, config: ExperimentConfig) -> list[int]:
    """Box half-widths an experiment diagonalizes, for the dump options."""
    blocks = [config.box_half_width(m) for m in config.block_half_widths]
    if name in ("sweep", "variance"):
        return sorted(set(blocks))
    if name == "split":
        return [config.split_box_half_width or 4 * max(config.block_half_widths)]
    if name == "halfspace":
        return sorted(set(blocks) | {config.halfspace_box_half_width or max(blocks)})
    return [max(blocks)]


def dump_realizations(name: str, config: ExperimentConfig, out: Path, potential: bool, spectrum: bool) -> dict:
    paths = {}
    if potential:
        (out / "potentials").mkdir(exist_ok=True)
        paths["potentials"] = "potentials"
    if spectrum:
        (out / "spectra").mkdir(exist_ok=True)
        paths["spectra"] = "spectra"
    for M in experiment_boxes(name, config):
        spec = LatticeSpec(config.dimension, M)
        for i in range(config.realizations):
            real = sample_potential(config.model, spec, config.master_seed, i)
            stem = f"M{M}_r{i:05d}.csv"
            if potential:
                real.to_csv(out / "potentials" / stem)
            if spectrum:
                w = diagonalize(assemble(spec, real)).eigenvalues
                write_csv(out / "spectra" / stem, ["index", "eigenvalue"], [[k, float(x)] for k, x in enumerate(w)])
    return paths


def run_experiment(name: str, args: argparse.Namespace) -> int:
    started = _now()
    config = load_config(args.config, args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fn = EXPERIMENTS[name]
    kwargs = {"threads": args.threads, "timing": args.timing}
    if name in ("decay", "proximity", "fracmom"):
        kwargs["strict"] = False
    result = fn(config, **kwargs)
    summary = result.summary()
    if getattr(args, "padding_check", False):
        summary["padding_check"] = {str(k): v for k, v in padding_check(config, args.threads).items()}

    write_jsonl(out / "results.jsonl", result.records)
    header, rows = result.table()
    write_csv(out / "summary.csv", header, rows)
    outputs = {"results": "results.jsonl", "summary": "summary.csv", "manifest": "manifest.json"}
    outputs.update(dump_realizations(name, config, out, args.dump_potential, args.dump_spectrum))
    manifest = {
        "config_hash": config.hash(),
        "tool_version": __version__,
        "experiment": name,
        "started": started,
        "finished": _now(),
        "outputs": outputs,
        "master_seed": config.master_seed,
        "realizations": config.realizations,
        "config": config.to_dict(),
        "summary": summary,
    }
    with open(out / "manifest.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")
    print(f"{name}: {len(result.records)} records -> {out}")
    fit_error = summary.get("fit_error")
    if fit_error:
        print(f"error: fit: {fit_error}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _print_table(report: dict) -> None:
    print(f"suite {report['suite']} ({report['seconds']} s)")
    width = max(len(c["name"]) for c in report["checks"])
    for c in report["checks"]:
        flag = "PASS" if c["passed"] else "FAIL"
        worst = "" if c["worst"] is None else f"worst={c['worst']:.3g} limit={c['limit']:.3g}"
        print(f"  {flag}  {c['name']:<{width}}  cases={c['cases']:<4d} {worst}")
        if not c["passed"]:
            print(f"        witness: {json.dumps(c['witness'], default=_json_default)}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            fault = FAULTS.get(args.inject_fault) if args.inject_fault else None
            report = run_suite(args.suite, args.seed, h0_function=fault)
            if args.json:
                print(json.dumps(report, indent=2, default=_json_default))
            else:
                _print_table(report)
            return EXIT_OK if report["passed"] else EXIT_VERIFY
        if args.command == "oracle-check":
            report = run_suite("oracle", args.seed)
            text = json.dumps(report, indent=2, default=_json_default)
            print(text)
            if args.out:
                Path(args.out).write_text(text + "\n", encoding="utf-8")
            return EXIT_OK if report["passed"] else EXIT_VERIFY
        return run_experiment(args.command, args)
    except (NumericError, FitUnderdetermined) as exc:
        print(f"error: numerical health: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (FfentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
