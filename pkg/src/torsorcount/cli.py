"""Batch front end: ``torsorcount {count,constant,check,convergence}``.

Exit codes: 0 success, 2 configuration error, 3 hypothesis failure,
4 budget exceeded.  Errors are reported as one JSON line on stderr and no
output file is written.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .fan import (
    Fan,
    FanError,
    check_globally_generated,
    f_invariant,
    fan_from_dict,
    global_generation_witness,
    validate_fan,
)
from .library import get_fan
from .peyre import constant_report, leading_constant, predicted_count
from .quadfield import FieldError, make_field
from .torsor import count_points, count_points_moebius

EXIT_OK, EXIT_CONFIG, EXIT_HYPOTHESIS, EXIT_BUDGET = 0, 2, 3, 4
DEFAULT_BUDGET = 5 * 10**7
MODES = ("count", "constant", "check", "convergence")


class CliError(Exception):
    def __init__(self, code: int, kind: str, reason: str):
        super().__init__(reason)
        self.code, self.kind, self.reason = code, kind, reason


@dataclass
class ExperimentConfig:
    mode: str
    fan_name: str | None = None
    fan_file: str | None = None
    D: int = 1
    B: list = field(default_factory=lambda: [100])
    prime_bound: int = 10**4
    shards: int = 1
    seed: int = 0
    out: str | None = None
    moebius: bool = False
    timing: bool = False
    budget: int = DEFAULT_BUDGET

    def validate(self) -> None:
        if self.mode not in MODES:
            raise CliError(EXIT_CONFIG, "config", f"unknown mode {self.mode!r}")
        if (self.fan_name is None) == (self.fan_file is None):
            raise CliError(EXIT_CONFIG, "config", "give exactly one of --fan or --fan-file")
        if any(b < 1 for b in self.B) or any(b2 <= b1 for b1, b2 in zip(self.B, self.B[1:])):
            raise CliError(EXIT_CONFIG, "config", "B values must be >= 1 and strictly increasing")
        if self.prime_bound < 2:
            raise CliError(EXIT_CONFIG, "config", "prime bound must be >= 2")
        if self.shards < 1:
            raise CliError(EXIT_CONFIG, "config", "shards must be >= 1")


def parse_B(text: str) -> list:
    """``100,1000`` or a x10 ladder ``100..100000``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(float(v)) for v in text.split(".."))
            out = []
            b = lo
            while b <= hi:
                out.append(b)
                b *= 10
            return out
        return [_number(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise CliError(EXIT_CONFIG, "config", f"cannot parse B schedule {text!r}") from exc


def _number(v: str):
    v = v.strip()
    if "e" in v.lower():
        x = float(v)
        if x.is_integer():
            return int(x)
    q = Fraction(v)
    return q.numerator if q.denominator == 1 else q


class _Parser(argparse.ArgumentParser):
    """Report usage errors as CliError instead of printing and exiting."""

    def error(self, message):
        raise CliError(EXIT_CONFIG, "config", f"invalid command line: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torsorcount", description=__doc__.splitlines()[0])
    p.add_argument("mode", choices=MODES)
    p.add_argument("--fan", help="library fan name")
    p.add_argument("--fan-file", help="JSON fan file")
    p.add_argument("--field-D", type=int, help="K = Q(sqrt(-D))")
    p.add_argument("--B", help="comma list or ladder LO..HI (x10 steps)")
    p.add_argument("--prime-bound", type=int)
    p.add_argument("--shards", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--moebius", action="store_true", help="also fill the N_moebius column")
    p.add_argument("--timing", action="store_true", help="fill the seconds column (output no longer reproducible)")
    p.add_argument("--budget", type=int, help="maximum predicted number of torsor points")
    return p


def config_from_args(argv) -> ExperimentConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    base: dict = {}
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(EXIT_CONFIG, "config", f"cannot read config: {exc}") from exc
        allowed = {"mode", "fan", "fan_file", "field", "B", "prime_bound", "shards", "seed", "out", "moebius", "budget"}
        unknown = set(base) - allowed
        if unknown:
            raise CliError(EXIT_CONFIG, "config", f"unknown config keys {sorted(unknown)}")
        if base.get("mode", ns.mode) != ns.mode:
            raise CliError(EXIT_CONFIG, "config", f"config mode {base['mode']!r} contradicts verb {ns.mode!r}")
    cfg = ExperimentConfig(ns.mode)
    cfg.fan_name = ns.fan if ns.fan is not None else (base.get("fan") if not ns.fan_file else None)
    cfg.fan_file = ns.fan_file if ns.fan_file is not None else (base.get("fan_file") if not ns.fan else None)
    D = ns.field_D if ns.field_D is not None else base.get("field", {}).get("D", 1)
    cfg.D = D
    if ns.B is not None:
        cfg.B = parse_B(ns.B)
    elif "B" in base:
        cfg.B = parse_B(base["B"]) if isinstance(base["B"], str) else [_number(str(b)) for b in base["B"]]
    elif ns.mode == "convergence":
        cfg.B = parse_B("10..10000")
    cfg.prime_bound = ns.prime_bound if ns.prime_bound is not None else base.get("prime_bound", 10**4)
    cfg.shards = ns.shards if ns.shards is not None else base.get("shards", 1)
    cfg.seed = ns.seed if ns.seed is not None else base.get("seed", 0)
    cfg.out = ns.out if ns.out is not None else base.get("out")
    cfg.moebius = ns.moebius or bool(base.get("moebius", False))
    cfg.timing = ns.timing
    cfg.budget = ns.budget if ns.budget is not None else base.get("budget", DEFAULT_BUDGET)
    cfg.validate()
    return cfg


def load_config_fan(cfg: ExperimentConfig) -> Fan:
    if cfg.fan_name is not None:
        try:
            return get_fan(cfg.fan_name)
        except KeyError as exc:
            raise CliError(EXIT_CONFIG, "config", str(exc.args[0])) from exc
    try:
        with open(cfg.fan_file, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_CONFIG, "config", f"cannot read fan file: {exc}") from exc
    try:
        return fan_from_dict(data)
    except FanError as exc:
        raise CliError(EXIT_HYPOTHESIS, "fan", str(exc)) from exc


def _field(cfg: ExperimentConfig):
    try:
        return make_field(cfg.D)
    except FieldError as exc:
        raise CliError(EXIT_CONFIG, "field", str(exc)) from exc


def _require_counting(fan: Fan) -> None:
    rep = validate_fan(fan)
    if not rep.ok:
        raise CliError(EXIT_HYPOTHESIS, "hypothesis", rep.reasons[0])
    if not check_globally_generated(fan):
        s, r, a = global_generation_witness(fan)
        raise CliError(EXIT_HYPOTHESIS, "hypothesis", f"-K not globally generated: a[{s},{r}] = {a}")


def _num(x, digits: int = 12) -> str:
    return mpmath.nstr(x, digits)


# ---------------------------------------------------------------------------
# modes


def run_check(cfg: ExperimentConfig, seed: int) -> str:
    fan = load_config_fan(cfg)
    rep = validate_fan(fan, seed=seed)
    if not rep.ok:
        raise CliError(EXIT_HYPOTHESIS, "hypothesis", rep.reasons[0])
    gg = check_globally_generated(fan)
    out = {
        "fan": fan.name,
        "fingerprint": fan.fingerprint(),
        **rep.to_dict(),
        "globally_generated": gg,
        "r": fan.picard_rank,
        "f": f_invariant(fan),
        "max_cones": len(fan.max_cones),
    }
    if not gg:
        s, r, a = global_generation_witness(fan)
        raise CliError(EXIT_HYPOTHESIS, "hypothesis", f"-K not globally generated: a[{s},{r}] = {a}")
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


def run_constant(cfg: ExperimentConfig) -> str:
    fan = load_config_fan(cfg)
    _require_counting(fan)
    return json.dumps(constant_report(fan, _field(cfg), cfg.prime_bound), indent=2) + "\n"


def _check_budget(cfg, fan, K, const) -> None:
    Bmax = max(cfg.B)
    if Bmax <= 1:
        return
    pred = predicted_count(fan, K, Bmax, const=const).hi
    work = pred * K.omega**fan.picard_rank / const.kappa.value
    if work > cfg.budget:
        raise CliError(
            EXIT_BUDGET,
            "budget",
            f"about {int(work)} torsor points needed for B = {Bmax}, budget is {cfg.budget}",
        )


def _rows(cfg: ExperimentConfig):
    fan = load_config_fan(cfg)
    _require_counting(fan)
    K = _field(cfg)
    const = leading_constant(fan, K, cfg.prime_bound)
    _check_budget(cfg, fan, K, const)
    t0 = time.perf_counter()
    report = count_points(fan, K, cfg.B, shards=cfg.shards)
    elapsed = time.perf_counter() - t0
    rows = []
    for j, B in enumerate(cfg.B):
        n = report.N_direct[j]
        nm = count_points_moebius(fan, K, B) if cfg.moebius else ""
        if B > 1:
            pred = predicted_count(fan, K, B, const=const)
            mid = (pred.lo + pred.hi) / 2
            ratio = n / mid
            cols = [_num(mid), _num(pred.lo), _num(pred.hi), _num(ratio, 8)]
        else:
            ratio = None
            cols = ["", "", "", ""]
        rows.append((B, n, nm, report.per_class_string(j), f"{elapsed:.3f}" if cfg.timing else "", cols, ratio))
    return rows


def run_count(cfg: ExperimentConfig) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["B", "N_direct", "N_moebius", "per_class_counts", "seconds", "predicted", "lo", "hi", "ratio"])
    for B, n, nm, pc, sec, cols, _ in _rows(cfg):
        w.writerow([B, n, nm, pc, sec, *cols])
    return buf.getvalue()


def run_convergence(cfg: ExperimentConfig) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["B", "N_direct", "predicted", "lo", "hi", "ratio", "abs_deviation", "trend"])
    prev = None
    for B, n, _, _, _, cols, ratio in _rows(cfg):
        if ratio is None:
            w.writerow([B, n, "", "", "", "", "", ""])
            continue
        dev = abs(ratio - 1)
        trend = "" if prev is None else ("toward" if dev < prev else "away")
        prev = dev
        w.writerow([B, n, *cols, _num(dev, 8), trend])
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(cfg: ExperimentConfig) -> str:
    if cfg.mode == "check":
        return run_check(cfg, cfg.seed)
    if cfg.mode == "constant":
        return run_constant(cfg)
    if cfg.mode == "count":
        return run_count(cfg)
    return run_convergence(cfg)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
        text = run(cfg)
        if cfg.out:
            write_atomic(cfg.out, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    except CliError as exc:
        sys.stderr.write(json.dumps({"error": exc.kind, "exit": exc.code, "reason": exc.reason}) + "\n")
        return exc.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
