"""Command-line front end: binds JSON configs to the experiment drivers.

Every subcommand writes ``<name>.csv`` plus a ``<name>.meta.json`` sidecar
carrying the fully resolved configuration, the master seed, and the tool
version.  Exit codes: 0 success, 2 configuration error (diagnostic names
the offending key or path), 1 runtime failure.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .arrays import ArrayGeometry
from .experiments import (
    ConfigError,
    ScenarioConfig,
    run_dof_table,
    run_eigen_spectrum,
    run_nmse_sweep,
    run_snr_sweep,
    run_trial,
)
from .subspace import generate_basis

_FMT = "%.17g"


def _fmt(x) -> str:
    return _FMT % float(x)


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(text)


def _write_meta(path: Path, payload: dict) -> None:
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def load_config(path: str | None, overrides: list[str]) -> ScenarioConfig:
    """Parse a JSON scenario document and apply key=value overrides.

    Absent fields fall back to the reference defaults.  Override keys use
    dotted paths into the document (e.g. ``trials=10``, ``ris.m_h=32``);
    values are parsed as JSON with a bare-string fallback.
    """
    doc: dict = {}
    if path is not None:
        p = Path(path)
        if not p.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            doc = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc

    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        key, raw = item.split("=", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        node = doc
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"override {key!r} conflicts with a non-object value")
        node[parts[-1]] = value

    return ScenarioConfig.from_dict(doc)


def _meta_payload(config: ScenarioConfig | None = None, **extra) -> dict:
    payload = {"tool_version": __version__}
    if config is not None:
        payload["config"] = config.to_dict()
        payload["master_seed"] = config.master_seed
        payload["config_digest"] = config.digest()
    payload.update(extra)
    return payload


def _geometry_from_flags(m_h, m_v, d_h, d_v) -> ArrayGeometry:
    try:
        return ArrayGeometry(m_h=m_h, m_v=m_v, d_h=d_h, d_v=d_v)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _cmd_basis(args) -> int:
    d_h = args.d if args.d_h is None else args.d_h
    d_v = args.d if args.d_v is None else args.d_v
    geom = _geometry_from_flags(args.m_h, args.m_v, d_h, d_v)
    basis = generate_basis(geom)
    lines = ["index,azimuth_rad,elevation_rad,k,l"]
    for idx, pair in enumerate(basis.pairs):
        lines.append(
            f"{idx},{_fmt(pair.azimuth)},{_fmt(pair.elevation)},{basis.k[idx]},{basis.l[idx]}"
        )
    out = Path(args.out_dir)
    _write_text(out / "basis.csv", "\n".join(lines) + "\n")
    _write_meta(
        out / "basis.meta.json",
        _meta_payload(
            geometry={"m_h": geom.m_h, "m_v": geom.m_v, "d_h": geom.d_h, "d_v": geom.d_v},
            eta=basis.eta,
        ),
    )
    print(f"basis: eta={basis.eta} -> {out / 'basis.csv'}")
    return 0


def _parse_grid(raw: str, cast, flag: str) -> list:
    try:
        return [cast(s) for s in raw.split(",")]
    except ValueError as exc:
        raise ConfigError(f"invalid {flag} value {raw!r}: {exc}") from exc


def _cmd_dof_table(args) -> int:
    sizes = _parse_grid(args.sizes, int, "--sizes")
    spacings = _parse_grid(args.spacings, float, "--spacings")
    rows = run_dof_table(sizes, spacings)
    lines = ["m,d,eta,eta_over_m,dof_approx_over_m"]
    for r in rows:
        lines.append(f"{r.m},{_fmt(r.d)},{r.eta},{_fmt(r.eta_over_m)},{_fmt(r.dof_approx_over_m)}")
    out = Path(args.out_dir)
    _write_text(out / "dof_table.csv", "\n".join(lines) + "\n")
    _write_meta(out / "dof_table.meta.json", _meta_payload(sizes=sizes, spacings=spacings))
    print(f"dof-table: {len(rows)} rows -> {out / 'dof_table.csv'}")
    return 0


def _cmd_eigen(args) -> int:
    spacings = _parse_grid(args.spacings, float, "--spacings")
    geometries = [_geometry_from_flags(args.size, args.size, d, d) for d in spacings]
    results = run_eigen_spectrum(geometries, n_samples=args.n_samples, seed=args.seed)
    lines = ["label,index,eigenvalue,eta"]
    for label, spectrum, eta in results:
        for idx, value in enumerate(spectrum.eigenvalues):
            lines.append(f"{label},{idx},{_fmt(value)},{eta}")
    out = Path(args.out_dir)
    _write_text(out / "eigen.csv", "\n".join(lines) + "\n")
    _write_meta(
        out / "eigen.meta.json",
        _meta_payload(size=args.size, spacings=spacings, n_samples=args.n_samples, seed=args.seed),
    )
    print(f"eigen: {len(results)} spectra -> {out / 'eigen.csv'}")
    return 0


def _sweep_command(args, runner, name: str) -> int:
    config = load_config(args.config, args.set or [])
    if args.seed is not None:
        config = ScenarioConfig.from_dict({**config.to_dict(), "master_seed": args.seed})
    result = runner(config)
    out = Path(args.out_dir)
    _write_text(out / f"{name}.csv", result.to_csv_text())
    _write_meta(out / f"{name}.meta.json", _meta_payload(config=config))
    print(f"{name}: {len(result.rows)} rows -> {out / f'{name}.csv'}")
    return 0


def _cmd_trial(args) -> int:
    config = load_config(args.config, args.set or [])
    if args.seed is not None:
        config = ScenarioConfig.from_dict({**config.to_dict(), "master_seed": args.seed})
    record = run_trial(config, args.rho_dbm, args.trial_index)
    lines = ["rho_dbm,trial_index,metric,value"]
    for metric in ("nmse_rsls", "nmse_ls", "snr_perfect_db", "snr_rsls_db", "snr_ls_db"):
        lines.append(f"{_fmt(args.rho_dbm)},{args.trial_index},{metric},{_fmt(getattr(record, metric))}")
    out = Path(args.out_dir)
    _write_text(out / "trial.csv", "\n".join(lines) + "\n")
    _write_meta(
        out / "trial.meta.json",
        _meta_payload(config=config, rho_dbm=args.rho_dbm, trial_index=args.trial_index),
    )
    print("\n".join(lines))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rissim",
        description="RIS channel-subspace simulation and estimation experiments",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_config=True):
        p.add_argument("--out-dir", default="results", help="output directory")
        if with_config:
            p.add_argument("--config", default=None, help="JSON scenario config path")
            p.add_argument(
                "--set",
                action="append",
                metavar="KEY=VALUE",
                help="override a config key (dotted path), repeatable",
            )
            p.add_argument("--seed", type=int, default=None, help="override the master seed")

    p = sub.add_parser("basis", help="emit the orthogonal angle-pair table")
    p.add_argument("--m-h", type=int, default=8)
    p.add_argument("--m-v", type=int, default=8)
    p.add_argument("--d", type=float, default=0.25, help="spacing for both axes")
    p.add_argument("--d-h", type=float, default=None)
    p.add_argument("--d-v", type=float, default=None)
    add_common(p, with_config=False)
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("dof-table", help="subspace dimension vs array size and spacing")
    p.add_argument("--sizes", default="4,8,16,32,64,128")
    p.add_argument("--spacings", default="0.125,0.25,0.5")
    add_common(p, with_config=False)
    p.set_defaults(func=_cmd_dof_table)

    p = sub.add_parser("eigen", help="sampled correlation eigenvalue spectra")
    p.add_argument("--size", type=int, default=32)
    p.add_argument("--spacings", default="0.25,0.125")
    p.add_argument("--n-samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=20240131)
    add_common(p, with_config=False)
    p.set_defaults(func=_cmd_eigen)

    p = sub.add_parser("nmse-sweep", help="estimation NMSE over the pilot-power grid")
    add_common(p)
    p.set_defaults(func=lambda a: _sweep_command(a, run_nmse_sweep, "nmse_sweep"))

    p = sub.add_parser("snr-sweep", help="data-transmission SNR over the pilot-power grid")
    add_common(p)
    p.set_defaults(func=lambda a: _sweep_command(a, run_snr_sweep, "snr_sweep"))

    p = sub.add_parser("trial", help="run a single trial at one pilot power")
    p.add_argument("--rho-dbm", type=float, required=True)
    p.add_argument("--trial-index", type=int, default=0)
    add_common(p)
    p.set_defaults(func=_cmd_trial)

    return parser


def parse_and_run(argv) -> int:
    "Run one CLI invocation; returns the process exit code."
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(parse_and_run(sys.argv[1:]))


if __name__ == "__main__":
    main()
