"""Command-line front end: config file, sweep, CSV and SVG output.

Config files hold one ``key = value`` pair per line; ``#`` starts a comment.
Lists are comma separated and ``start:step:stop`` expands to an inclusive
range. Every key can also be given as a flag of the same name with hyphens,
e.g. ``--d-s 2:2:40``; flags win over the file.
"""

from __future__ import annotations

import argparse
import io
import math
import re
import sys
from pathlib import Path

from .association import AssociationPolicy
from .engine import RunSpec, Scenario, ScenarioConfig, run_sweep
from .metrics import SweepResult
from .svg import PlotMode, render_svg

CSV_COLUMNS = ("d_s_m", "theta_bw_deg", "threshold_db", "scenario", "association",
               "coverage", "ase_bps_hz_m2", "realizations", "seed")


class ConfigError(ValueError):
    pass


def _parse_number(text, kind):
    try:
        return int(text) if kind is int else float(text)
    except ValueError:
        raise ValueError(f"not a number: {text!r}") from None


def parse_values(text: str, kind=float) -> list:
    """Expand ``a, b, c`` and ``start:step:stop`` items into a flat list."""
    values = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise ValueError("empty list item")
        if ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise ValueError(f"range must be start:step:stop, got {item!r}")
            start, step, stop = (_parse_number(p.strip(), float) for p in parts)
            if step == 0 or (stop - start) * step < 0:
                raise ValueError(f"range {item!r} never reaches its stop value")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            values.extend(round(start + k * step, 10) for k in range(count))
        else:
            values.append(_parse_number(item, kind))
    return values


def _one(kind):
    def parse(text):
        values = parse_values(text, kind)
        if len(values) != 1:
            raise ValueError("expected a single value")
        return values[0]
    return parse


def _names(parser):
    def parse(text):
        return [parser(item) for item in text.split(",")]
    return parse


# key -> (parser, help text)
KEYS = {
    "scenario": (_names(Scenario.parse), "hand or pocket; comma list runs several"),
    "d_s": (parse_values, "inter-site distances in m (list or start:step:stop)"),
    "theta_bw": (parse_values, "main-lobe beamwidths in degrees"),
    "threshold": (parse_values, "SINR thresholds in dB"),
    "association": (_names(AssociationPolicy.parse), "min-dist and/or max-power"),
    "realizations": (_one(int), "Monte Carlo snapshots per grid point"),
    "seed": (_one(int), "master seed"),
    "ap_height_m": (_one(float), "AP height above the UE plane, m"),
    "area_side_m": (_one(float), "side of the square venue, m"),
    "body_width_m": (_one(float), "body width, m"),
    "dist_to_body_m": (_one(float), "device-to-body distance, m (overrides the scenario)"),
    "dist_top_head_m": (_one(float), "device-to-head-top distance, m"),
    "body_loss_db": (_one(float), "body penetration loss, dB"),
    "tx_power_dbm": (_one(float), "AP transmit power, dBm"),
    "carrier_freq_ghz": (_one(float), "carrier frequency, GHz"),
    "bandwidth_mhz": (_one(float), "bandwidth, MHz"),
    "noise_figure_db": (_one(float), "UE noise figure, dB"),
    "pathloss_exponent": (_one(float), "path-loss exponent"),
    "side_lobe_gain_db": (_one(float), "AP side-lobe gain, dB"),
    "min_beamwidth_deg": (_one(float), "narrowest accepted beamwidth, degrees"),
}

_CONFIG_FIELDS = {
    "ap_height_m": ("ap_height_m", 1.0), "area_side_m": ("area_side_m", 1.0),
    "body_width_m": ("body_width_m", 1.0), "dist_to_body_m": ("dist_to_body_m", 1.0),
    "dist_top_head_m": ("dist_top_head_m", 1.0), "body_loss_db": ("body_loss_db", 1.0),
    "tx_power_dbm": ("tx_power_dbm", 1.0), "carrier_freq_ghz": ("carrier_freq_hz", 1e9),
    "bandwidth_mhz": ("bandwidth_hz", 1e6), "noise_figure_db": ("noise_figure_db", 1.0),
    "pathloss_exponent": ("pathloss_exponent", 1.0), "side_lobe_gain_db": ("side_lobe_gain_db", 1.0),
    "min_beamwidth_deg": ("min_beamwidth_deg", 1.0),
}


def read_config_text(text: str, source="<config>") -> dict:
    """Raw ``key -> value string`` pairs from config text."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        if key not in KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        raw[key] = value
    return raw


def build_config(raw: dict):
    """(ScenarioConfig, RunSpec) from raw strings; missing keys take the defaults."""
    parsed = {}
    for key, value in raw.items():
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}")
        try:
            parsed[key] = KEYS[key][0](value)
        except ValueError as err:
            raise ConfigError(f"invalid value for {key!r}: {err}") from None

    fields = {}
    for key, (name, unit) in _CONFIG_FIELDS.items():
        if key in parsed:
            fields[name] = parsed[key] * unit
    scenarios = parsed.get("scenario", [Scenario.HAND])
    try:
        config = ScenarioConfig(scenario=scenarios[0], **fields)
    except ValueError as err:
        raise ConfigError(f"invalid physical parameters: {err}") from None

    spec_fields = {"scenarios": tuple(scenarios) if len(scenarios) > 1 else ()}
    for key, name in (("d_s", "d_s_m"), ("theta_bw", "theta_bw_deg"), ("threshold", "threshold_db"),
                      ("association", "policies"), ("realizations", "realizations"),
                      ("seed", "master_seed")):
        if key in parsed:
            spec_fields[name] = tuple(parsed[key]) if isinstance(parsed[key], list) else parsed[key]
    for key in ("d_s", "theta_bw"):
        bad = [v for v in parsed.get(key, []) if not v > 0]
        if bad:
            raise ConfigError(f"invalid value for {key!r}: must be positive, got {bad[0]:g}")
    for theta in parsed.get("theta_bw", []):
        try:
            config.pattern(theta)
        except ValueError as err:
            raise ConfigError(f"invalid value for 'theta_bw': {err}") from None
    for d_s in parsed.get("d_s", []):
        if d_s > config.area_side_m:
            raise ConfigError(f"invalid value for 'd_s': {d_s:g} m exceeds the venue side")
    try:
        spec = RunSpec(**spec_fields)
    except ValueError as err:
        raise ConfigError(f"invalid run parameters: {err}") from None
    return config, spec


def parse_config(path):
    """Read a config file into (ScenarioConfig, RunSpec)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err.strerror or err}") from None
    return build_config(read_config_text(text, str(path)))


def _cell(value):
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return format(value, ".6g")


def format_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in result.rows:
        buf.write(",".join(_cell(getattr(row, c)) for c in CSV_COLUMNS) + "\n")
    return buf.getvalue()


def emit_csv(result: SweepResult, path):
    """Write the result table: header plus one line per row."""
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_csv(result))
    except OSError as err:
        raise OSError(f"cannot write {path}: {err.strerror or err}") from err


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmwave-indoor",
        description="Coverage and area spectral efficiency of ceiling-mounted indoor mmWave APs.")
    parser.add_argument("--config", metavar="PATH", help="key = value config file")
    parser.add_argument("--out", metavar="PATH", help="CSV output (default: stdout)")
    parser.add_argument("--plot", metavar="MODE", choices=[m.value for m in PlotMode],
                        help="also render an SVG chart: " + ", ".join(m.value for m in PlotMode))
    parser.add_argument("--plot-out", metavar="PATH", help="SVG output path, required with --plot")
    parser.add_argument("--plot-threshold", metavar="DB", type=float,
                        help="threshold shown in the chart (default: lowest swept)")
    parser.add_argument("--workers", metavar="N", type=int,
                        help="worker threads (default: $MMWAVE_SIM_THREADS, else CPU count)")
    group = parser.add_argument_group("parameters (override the config file)")
    for key, (_, text) in KEYS.items():
        group.add_argument("--" + key.replace("_", "-"), dest=key, metavar="VALUE", help=text)
    return parser


_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def _attach_negative_values(argv):
    # argparse reads "-5,0" as an option; glue such values to their flag
    out = []
    for token in argv:
        if out and _NEGATIVE_VALUE.match(token) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        if args.plot and not args.plot_out:
            raise ConfigError("--plot needs --plot-out")
        raw = {}
        if args.config:
            try:
                raw.update(read_config_text(Path(args.config).read_text(encoding="utf-8"), args.config))
            except OSError as err:
                raise ConfigError(f"cannot read {args.config}: {err.strerror or err}") from None
        raw.update({k: getattr(args, k) for k in KEYS if getattr(args, k) is not None})
        config, spec = build_config(raw)
        result = run_sweep(spec, config, workers=args.workers)
        if args.out:
            emit_csv(result, args.out)
        else:
            sys.stdout.write(format_csv(result))
        if args.plot:
            render_svg(result, args.plot, args.plot_out, threshold_db=args.plot_threshold)
    except (ValueError, OSError) as err:
        print(f"mmwave-indoor: error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
