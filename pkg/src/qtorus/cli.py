"""Command line entry point: batch verification runs and table export.

Examples::

    qtorus verify id236
    qtorus verify prop11 --N 2 --range -2:2 --qmode root:2
    qtorus verify theorem --N 1 --range -1:1 --tau -1 --degree 3
    qtorus act "a_1(1) a*_1(-1)"
    qtorus export --N 1 --range 0:0
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import asdict, dataclass, field

from . import b0n
from .fock import FockVector, ModeFactor, apply_quadratic, apply_word, pi, test_states
from .fock_verify import (UnderdeterminedCentral, verify_id236, verify_lemma21, verify_props,
                          verify_theorem)
from .scalar_field import QMode, QModeError

SCHEMA_VERSION = 1
OUTPUT_ENV = "QTORUS_OUTPUT_DIR"
SUITES = ("prop11", "lemma21", "props2", "theorem", "id236")
MAX_WINDOW = 16
MAX_DEGREE = 8


class ConfigError(ValueError):
    pass


@dataclass
class SessionConfig:
    qmode: str = "generic"
    N: int = 1
    tau: int = 1
    lo: int = -1
    hi: int = 1
    degree: int = 2
    window: int = 2
    seed: int = 0
    n_random: int = 0
    output: str | None = None
    # wall-clock timings make reports differ between runs, so they are opt-in
    timing: bool = False
    id236_range: tuple = field(default=(-6, 6))

    def validate(self) -> QMode:
        try:
            mode = QMode.parse(self.qmode)
        except QModeError as exc:
            raise ConfigError(str(exc)) from None
        if not isinstance(self.N, int) or self.N < 1:
            raise ConfigError("N must be a positive integer")
        if self.tau not in (1, -1):
            raise ConfigError("tau must be +1 or -1")
        if max(abs(self.lo), abs(self.hi)) > MAX_WINDOW:
            raise ConfigError(f"exponent window must lie in [-{MAX_WINDOW}, {MAX_WINDOW}]")
        if not 1 <= self.degree <= MAX_DEGREE:
            raise ConfigError(f"degree must be in 1..{MAX_DEGREE}")
        if not 0 <= self.window <= MAX_WINDOW:
            raise ConfigError("state window must be in 0..16")
        if not -(2 ** 63) <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit integer")
        if self.n_random < 0:
            raise ConfigError("n_random must be non-negative")
        return mode

    def to_json(self):
        d = asdict(self)
        d["id236_range"] = list(self.id236_range)
        d.pop("output")
        return d


def parse_range(text: str) -> tuple:
    m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", text)
    if not m:
        raise ConfigError(f"cannot parse range {text!r}; use lo:hi")
    return int(m.group(1)), int(m.group(2))


def _states(cfg: SessionConfig):
    return test_states(cfg.N, cfg.degree, cfg.window, n_random=cfg.n_random, seed=cfg.seed)


def _run_one(name: str, cfg: SessionConfig, mode: QMode):
    if name == "prop11":
        return b0n.verify_prop11(cfg.N, cfg.lo, cfg.hi, mode)
    if name == "id236":
        return verify_id236(*cfg.id236_range, mode)
    states = _states(cfg)
    if name == "lemma21":
        return verify_lemma21(cfg.N, cfg.lo, cfg.hi, cfg.tau, cfg.degree, cfg.window,
                              states=states, mode=mode)
    if name == "props2":
        return verify_props(cfg.N, cfg.lo, cfg.hi, cfg.tau, mode, cfg.degree, cfg.window, states=states)
    if name == "theorem":
        return verify_theorem(cfg.N, cfg.lo, cfg.hi, cfg.tau, mode, cfg.degree, cfg.window, states=states)
    raise ConfigError(f"unknown suite {name!r}")


def default_output(name: str) -> str:
    return os.path.join(os.environ.get(OUTPUT_ENV, "reports"), f"{name}.json")


def write_json(obj, path: str):
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def build_report(name: str, cfg: SessionConfig) -> dict:
    """Run a suite (or ``all``) and return the report document."""
    mode = cfg.validate()
    names = SUITES if name == "all" else (name,)
    if any(n not in SUITES for n in names):
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    suites, timings = [], {}
    for n in names:
        t0 = time.perf_counter()
        try:
            rep = _run_one(n, cfg, mode).to_json()
        except UnderdeterminedCentral as exc:
            rep = {"suite": n, "ok": False, "error": str(exc), "equations": [], "ledger": []}
        timings[n] = round(time.perf_counter() - t0, 3)
        suites.append(rep)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "suite": name,
        "config": cfg.to_json(),
        "seed": cfg.seed,
        "ok": all(r["ok"] for r in suites),
        "n_failures": sum(r.get("n_failures", 0) for r in suites),
        "ledger": [e for r in suites for e in r["ledger"]],
        "central": next((r["meta"]["central"] for r in suites
                         if r["suite"] == "theorem" and "meta" in r), None),
        "suites": suites,
    }
    if cfg.timing:
        doc["timing_seconds"] = timings
    return doc


def run_suite(name: str, cfg: SessionConfig) -> int:
    """Run, write the report, and return the exit code (0 ok, 1 failures, 2 bad config)."""
    try:
        doc = build_report(name, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    path = cfg.output or default_output(name)
    write_json(doc, path)
    status = "ok" if doc["ok"] else f"{doc['n_failures']} failures"
    print(f"{name}: {status}; {len(doc['ledger'])} ledger entries; report at {path}")
    return 0 if doc["ok"] else 1


def export_tables(cfg: SessionConfig) -> int:
    """Write the closed-form bracket of every ordered generator pair on the grid."""
    try:
        mode = cfg.validate()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    gens = []
    for fam in b0n.FAMILY_RANK:
        gens.extend(b0n.generators(cfg.N, fam, cfg.lo, cfg.hi))
    gens.sort(key=lambda g: g.sort_key())
    table = [{"a": a.to_json(), "b": b.to_json(),
              "bracket": b0n.expected_bracket(a, b, cfg.N, mode).to_json()}
             for a in gens for b in gens]
    path = cfg.output or default_output("tables")
    write_json({"schema_version": SCHEMA_VERSION, "config": cfg.to_json(), "table": table}, path)
    print(f"{len(table)} entries written to {path}")
    return 0


# ---------------------------------------------------------------------------
# operator words for ``act``
# ---------------------------------------------------------------------------

_FACTOR = re.compile(r"(a\*?)_(\d+)\((-?\d+)\)|e\((-?\d+)\)")
_QUAD = re.compile(r"(e0|e\*|[fghe])_?(\d*)\((-?\d+),(-?\d+)\)")


def parse_word(text: str):
    """Tokens ``a_i(x)``, ``a*_i(x)``, ``e(x)`` or images like ``f_11(m,n)``, ``e*_1(m,n)``."""
    out = []
    for tok in text.replace(" ,", ",").replace(", ", ",").split():
        m = _FACTOR.fullmatch(tok)
        if m:
            if m.group(4) is not None:
                out.append(ModeFactor("e", 0, int(m.group(4))))
            else:
                out.append(ModeFactor(m.group(1), int(m.group(2)), int(m.group(3))))
            continue
        m = _QUAD.fullmatch(tok)
        if not m:
            raise ConfigError(f"cannot parse operator {tok!r}")
        fam, idx = m.group(1), m.group(2)
        i = int(idx[0]) if idx else 0
        j = int(idx[1]) if len(idx) > 1 else 0
        out.append(b0n.GeneratorRef(fam, i, j, int(m.group(3)), int(m.group(4))))
    return out


def act(text: str, mode: QMode, tau: int, vector: FockVector | None = None) -> FockVector:
    v = vector if vector is not None else FockVector.vacuum(mode)
    for tok in reversed(parse_word(text)):
        if isinstance(tok, ModeFactor):
            v = apply_word([tok], v, tau)
        else:
            pf, op = pi(tok, tau)
            v = apply_quadratic(op, v, tau)
            if pf != 1:
                v = v.scale(mode.scalar(pf))
    return v


def _add_common(p):
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--range", default="-1:1", help="exponent window lo:hi")
    p.add_argument("--qmode", default="generic", help="generic or root:d")
    p.add_argument("--tau", type=int, default=1)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--window", type=int, default=2, help="creator modes in [-window, 0]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-random", type=int, default=0)
    p.add_argument("--output", default=None)
    p.add_argument("--timing", action="store_true")


def _config(args) -> SessionConfig:
    lo, hi = parse_range(args.range)
    return SessionConfig(qmode=args.qmode, N=args.N, tau=args.tau, lo=lo, hi=hi, degree=args.degree,
                         window=args.window, seed=args.seed, n_random=args.n_random,
                         output=args.output, timing=args.timing)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="qtorus", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)
    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=SUITES + ("all",))
    _add_common(pv)
    pe = sub.add_parser("export", help="export bracket tables")
    _add_common(pe)
    pa = sub.add_parser("act", help="apply an operator word to the vacuum")
    pa.add_argument("word")
    pa.add_argument("--qmode", default="generic")
    pa.add_argument("--tau", type=int, default=1)
    pa.add_argument("--state", default=None, help="FockVector JSON (default: vacuum)")
    argv = list(sys.argv[1:] if argv is None else argv)
    # "--range -1:1" would otherwise be read as an option
    for k in range(len(argv) - 1):
        if argv[k] == "--range":
            argv[k:k + 2] = [f"--range={argv[k + 1]}", ""]
    args = ap.parse_args([a for a in argv if a != ""])
    try:
        if args.verb == "act":
            mode = QMode.parse(args.qmode)
            vec = FockVector.from_json(mode, json.loads(args.state)) if args.state else None
            print(json.dumps(act(args.word, mode, args.tau, vec).to_json(), sort_keys=True))
            return 0
        cfg = _config(args)
    except (ConfigError, QModeError, b0n.BadIndex, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if args.verb == "export":
        return export_tables(cfg)
    return run_suite(args.suite, cfg)


if __name__ == "__main__":
    sys.exit(main())
