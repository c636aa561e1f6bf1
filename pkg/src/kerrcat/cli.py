"""``kerrcat`` command-line entry point.

Subcommands::

    kerrcat sweep          --alpha-squared 1,10 --m 2..20 [--method gram|fock|both]
                           [--cutoff D] [--tau-grid t1,t2,...] [--out file.csv]
    kerrcat verify-fourier [--max-m 64] [--out report.json]
    kerrcat cat            --alpha 1+0j --m 2 [--out state.json]
    kerrcat energy-scaling --m 2,4,8 [--fraction 0.99] [--out file.csv]

Every subcommand also takes ``--config FILE``: ``key = value`` lines using
the flag names (``alpha-squared = 1, 10``); explicit flags win.

Exit status: 0 success, 1 verification failure, 2 configuration error,
3 bisection bracket failure, 4 output could not be written.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import harness
from .exceptions import BracketError
from .harness import ConfigError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2
EXIT_BRACKET = 3
EXIT_IO = 4


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in str(text).replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise ConfigError(f"bad number list {text!r}") from exc


def parse_int_list(text: str) -> list[int]:
    """Comma-separated integers; ``a..b`` expands to the inclusive range."""
    out = []
    for part in str(text).replace(" ", "").split(","):
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError as exc:
            raise ConfigError(f"bad integer list {text!r}") from exc
    return out


def parse_complex(text: str) -> complex:
    s = str(text).replace(" ", "").replace("i", "j")
    try:
        z = complex(s)
    except ValueError as exc:
        raise ConfigError(f"bad complex amplitude {text!r}") from exc
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ConfigError(f"amplitude must be finite, got {text!r}")
    return z


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (p.strip() for p in line.split("=", 1))
        values[key.lstrip("-").replace("_", "-")] = value
    return values


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="kerrcat", description="Entanglement of Kerr-generated split cat states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def common(p):
        p.add_argument("--config", help="key = value file with defaults for these flags")
        p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("sweep", help="entanglement over an (|alpha|^2, M) grid, CSV")
    common(p)
    p.add_argument("--alpha-squared", help="comma-separated |alpha|^2 values")
    p.add_argument("--m", help="comma-separated M values; a..b for ranges")
    p.add_argument("--method", choices=["gram", "fock", "both"])
    p.add_argument("--cutoff", type=int, help="per-mode Fock cutoff override")
    p.add_argument("--tau-grid", help="comma-separated Kerr times; Fock route, M unused")

    p = sub.add_parser("verify-fourier", help="closed-form vs DFT Fourier coefficients, JSON")
    common(p)
    p.add_argument("--max-m", type=int)

    p = sub.add_parser("cat", help="dump the split cat state, JSON")
    common(p)
    p.add_argument("--alpha", help="complex amplitude, e.g. 1+0.5j")
    p.add_argument("--m", type=int)

    p = sub.add_parser("energy-scaling", help="minimal |alpha|^2 for a target entanglement, CSV")
    common(p)
    p.add_argument("--m", help="comma-separated M values; a..b for ranges")
    p.add_argument("--fraction", type=float, help="target fraction of log2(M), in (0, 1)")
    return parser


def _merged(args) -> dict:
    """Flag values layered over the config file, keyed by flag name."""
    values = read_config(args.config) if args.config else {}
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        values[key.replace("_", "-")] = value
    return values


def _require(values, key):
    if key not in values or values[key] in ("", None):
        raise ConfigError(f"--{key} is required")
    return values[key]


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _sweep(values) -> tuple[str, int]:
    tau = values.get("tau-grid")
    config = harness.SweepConfig(
        alpha_squared=parse_float_list(_require(values, "alpha-squared")),
        m=parse_int_list(values.get("m", "")),
        method=str(values.get("method", "fock" if tau else "gram")),
        cutoff=int(values["cutoff"]) if values.get("cutoff") not in (None, "") else None,
        tau_grid=parse_float_list(tau) if tau else None,
    )
    if config.tau_grid is not None:
        return harness.to_csv(harness.TAU_HEADER, harness.tau_rows(config)), EXIT_OK
    rows = harness.sweep_rows(config)
    return harness.to_csv(harness.SWEEP_HEADER, [r.as_tuple() for r in rows]), EXIT_OK


def _verify(values) -> tuple[str, int]:
    report = harness.verify_fourier(int(values.get("max-m", 64)))
    code = EXIT_OK if report["passed"] else EXIT_VERIFY
    return json.dumps(report, indent=2) + "\n", code


def _cat(values) -> tuple[str, int]:
    alpha = parse_complex(_require(values, "alpha"))
    m = int(_require(values, "m"))
    if m < 1:
        raise ConfigError("--m must be a positive integer")
    return json.dumps(harness.cat_report(alpha, m), indent=2) + "\n", EXIT_OK


def _scaling(values) -> tuple[str, int]:
    ms = parse_int_list(_require(values, "m"))
    fraction = float(values.get("fraction", 0.99))
    rows = harness.energy_scaling_rows(ms, fraction)
    return harness.to_csv(harness.SCALING_HEADER, rows), EXIT_OK


COMMANDS = {
    "sweep": _sweep,
    "verify-fourier": _verify,
    "cat": _cat,
    "energy-scaling": _scaling,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        values = _merged(args)
        text, code = COMMANDS[args.command](values)
    except ConfigError as exc:
        print(f"kerrcat: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BracketError as exc:
        print(f"kerrcat: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    try:
        _emit(text, values.get("out"))
    except OSError as exc:
        print(f"kerrcat: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
