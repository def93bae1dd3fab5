"""Batch experiment harness: construct codes from a JSON config, run
encode/decode round-trips, Monte Carlo campaigns, and subfield
factorizations, and emit machine-readable JSON Lines records.

Exit codes: 0 success, 2 configuration error, 3 internal invariant
violation.  Seeds are mandatory for simulation so outputs are
byte-reproducible.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .directsum import DirectSumCode, decode_experiment, rank_event_rate, success_probability
from .field import FieldTower
from .gabidulin import DecodingFailure, GabidulinCode, default_generator
from .qlinalg import count_rank_matrices, random_error, rank_of_vector
from .subfield import SubfieldEmbedding, compute_factorization, verify_uniqueness
from .subspace import SubspaceBasis


class ConfigError(Exception):
    pass


class InternalError(Exception):
    pass


def _load_config(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc


def _build_tower(cfg: dict) -> FieldTower:
    try:
        field_cfg = cfg["field"]
        q = int(field_cfg["q"])
        n = int(field_cfg["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"field section needs integer q and n: {exc}") from exc
    modulus = field_cfg.get("modulus")
    try:
        return FieldTower(q, n, modulus=modulus)
    except ValueError as exc:
        raise ConfigError(f"field: {exc}") from exc


def _build_code(cfg: dict, tower: FieldTower) -> GabidulinCode:
    code_cfg = cfg.get("code") or {}
    try:
        k = int(code_cfg["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"code section needs integer k: {exc}") from exc
    g = code_cfg.get("g")
    h = code_cfg.get("h")
    if g is None and h is None:
        g = default_generator(tower)
    try:
        return GabidulinCode(tower, k,
                             g=tuple(g) if g is not None else None,
                             h=tuple(h) if h is not None else None)
    except ValueError as exc:
        raise ConfigError(f"code: {exc}") from exc


def _build_parts(cfg: dict, tower: FieldTower):
    parts = cfg.get("parts")
    if not parts:
        raise ConfigError("this command needs a nonempty 'parts' list")
    try:
        return [SubspaceBasis(tower, p) for p in parts]
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"parts: {exc}") from exc


def _channel(cfg: dict, args) -> dict:
    ch = dict(cfg.get("channel") or {})
    if getattr(args, "trials", None) is not None:
        ch["trials"] = args.trials
    if getattr(args, "seed", None) is not None:
        ch["seed"] = args.seed
    if getattr(args, "t", None) is not None:
        ch["t_values"] = args.t
    ch.setdefault("mode", "uniform-matrix")
    ch.setdefault("decode_trials", 0)
    if ch.get("seed") is None:
        raise ConfigError("a seed is required (config channel.seed or --seed)")
    if not isinstance(ch.get("trials"), int) or ch["trials"] < 1:
        raise ConfigError("channel.trials must be a positive integer")
    t_values = ch.get("t_values")
    if t_values is None or not all(isinstance(t, int) and t >= 0 for t in t_values):
        raise ConfigError("channel.t_values must be a list of nonnegative integers")
    if ch["mode"] not in ("uniform-matrix", "exact-rank"):
        raise ConfigError(f"unknown channel mode {ch['mode']!r}")
    return ch


def _emit(records, args):
    lines = [json.dumps(r, sort_keys=True, separators=(",", ":")) for r in records]
    out_path = getattr(args, "output", None)
    if out_path:
        with open(out_path, "w") as fh:
            for line in lines:
                fh.write(line + "\n")
    else:
        for line in lines:
            print(line)
    csv_path = getattr(args, "csv", None)
    if csv_path and records:
        keys = sorted({k for r in records for k in _flatten(r)})
        with open(csv_path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=keys)
            writer.writeheader()
            for r in records:
                writer.writerow(_flatten(r))


def _flatten(record, prefix=""):
    flat = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            flat[name] = json.dumps(value)
        else:
            flat[name] = value
    return flat


# ---------------------------------------------------------------------------
# subcommands

def _cmd_code_info(args):
    cfg = _load_config(args.config)
    tower = _build_tower(cfg)
    code = _build_code(cfg, tower)
    record = {
        "q": tower.q,
        "n": tower.n,
        "modulus": list(tower.modulus),
        "length": code.length,
        "k": code.k,
        "d": code.d,
        "capability": code.capability,
        "g": list(code.g) if code.g is not None else None,
        "h": list(code.h),
        "generator_rank": rank_of_vector(tower, code.g) if code.g is not None else None,
        "parity_rank": rank_of_vector(tower, code.h),
    }
    _emit([record], args)
    return 0


def _cmd_roundtrip(args):
    import random

    cfg = _load_config(args.config)
    tower = _build_tower(cfg)
    code = _build_code(cfg, tower)
    if code.g is None:
        raise ConfigError("roundtrip needs a generator vector")
    if args.seed is None:
        raise ConfigError("roundtrip needs --seed")
    if args.t > code.capability:
        raise ConfigError(f"--t {args.t} exceeds capability {code.capability}")
    rng = random.Random(args.seed)
    muls0 = tower.mul_count
    successes = 0
    for _ in range(args.trials):
        message = tuple(tower.random_element(rng) for _ in range(code.k))
        sent = code.encode(message)
        error = random_error(tower, code.length, args.t, rng)
        received = tuple(tower.add(a, b) for a, b in zip(sent, error))
        try:
            got_c, got_e = code.decode(received)
        except DecodingFailure:
            continue
        if got_c == sent and got_e == error:
            successes += 1
    record = {
        "command": "roundtrip",
        "trials": args.trials,
        "t": args.t,
        "seed": args.seed,
        "successes": successes,
        "field_mul_count": tower.mul_count - muls0,
        "code": {"q": tower.q, "n": tower.n, "k": code.k, "d": code.d},
    }
    _emit([record], args)
    if successes != args.trials:
        raise InternalError(
            f"bounded-distance decoding failed {args.trials - successes} "
            f"round-trips at t={args.t} <= capability")
    return 0


def _cmd_simulate(args):
    cfg = _load_config(args.config)
    tower = _build_tower(cfg)
    code = _build_code(cfg, tower)
    parts = _build_parts(cfg, tower)
    ch = _channel(cfg, args)
    try:
        dsc = DirectSumCode(code, parts)
    except ValueError as exc:
        raise ConfigError(f"parts: {exc}") from exc
    decode_trials = ch["decode_trials"]
    if decode_trials and any(sub.is_trivial for sub in dsc.subcodes):
        raise ConfigError("decode_trials needs every part dimension >= d")
    records = []
    for t in ch["t_values"]:
        muls0 = tower.mul_count
        mc = rank_event_rate(tower.q, dsc.dims, dsc.capability, t,
                             ch["trials"], ch["seed"], channel=ch["mode"])
        exact = success_probability(tower.q, dsc.dims, dsc.capability, t)
        leading = success_probability(tower.q, dsc.dims, dsc.capability, t,
                                      form="leading-order")
        record = {
            "command": "simulate",
            "params": {
                "q": tower.q,
                "n": tower.n,
                "modulus": list(tower.modulus),
                "k": code.k,
                "d": code.d,
                "capability": dsc.capability,
                "dims": dsc.dims,
                "parts": [list(p.elements) for p in dsc.parts],
                "t": t,
                "mode": ch["mode"],
                "trials": ch["trials"],
                "decode_trials": decode_trials,
                "seed": ch["seed"],
            },
            "exact_probability": float(exact),
            "exact_fraction": [exact.numerator, exact.denominator],
            "leading_order": leading,
            "empirical": mc.frequency,
            "half_width": mc.half_width,
            "successes": mc.successes,
        }
        if decode_trials:
            exp = decode_experiment(dsc, t, decode_trials, ch["seed"],
                                    channel=ch["mode"])
            record["decode_successes"] = exp.successes
            record["decode_event_successes"] = exp.event_successes
        else:
            record["decode_successes"] = None
        record["field_mul_count"] = tower.mul_count - muls0
        records.append(record)
    _emit(records, args)
    return 0


def _cmd_subfield(args):
    cfg = _load_config(args.config)
    tower = _build_tower(cfg)
    code = _build_code(cfg, tower)
    s = args.s if args.s is not None else (cfg.get("subfield") or {}).get("s")
    if s is None:
        raise ConfigError("subfield degree required (config subfield.s or --s)")
    try:
        emb = SubfieldEmbedding(tower, int(s))
        factz = compute_factorization(code, int(s), embedding=emb)
    except ValueError as exc:
        raise ConfigError(f"subfield: {exc}") from exc
    ok, problem = verify_uniqueness(code, factz)
    if not ok:
        raise InternalError(f"uniqueness verification failed: {problem}")
    record = {
        "command": "subfield",
        "q": tower.q,
        "n": tower.n,
        "k": code.k,
        "d": code.d,
        "s": factz.s,
        "subfield_basis": list(factz.subfield_basis),
        "ext_basis": list(factz.ext_basis),
        "A": [list(r) for r in factz.block],
        "S": [list(r) for r in factz.transform],
        "H_qs": [list(r) for r in factz.parity],
        "unique": ok,
    }
    _emit([record], args)
    return 0


def _cmd_count(args):
    value = count_rank_matrices(args.q, args.m, args.t, args.rank)
    _emit([{"command": "count", "q": args.q, "m": args.m, "t": args.t,
            "rank": args.rank, "count": str(value)}], args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankcodes",
        description="Rank-metric code constructions and decoding experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", help="write JSON Lines here instead of stdout")
        p.add_argument("--csv", help="also write a flat CSV projection")

    p_info = sub.add_parser("code-info", help="resolve and describe a code")
    p_info.add_argument("--config", required=True)
    add_common(p_info)
    p_info.set_defaults(func=_cmd_code_info)

    p_rt = sub.add_parser("roundtrip", help="seeded encode/decode round-trips")
    p_rt.add_argument("--config", required=True)
    p_rt.add_argument("--trials", type=int, default=100)
    p_rt.add_argument("--t", type=int, default=1, help="error rank per trial")
    p_rt.add_argument("--seed", type=int)
    add_common(p_rt)
    p_rt.set_defaults(func=_cmd_roundtrip)

    p_sim = sub.add_parser("simulate", help="Monte Carlo success-rate campaign")
    p_sim.add_argument("--config", required=True)
    p_sim.add_argument("--trials", type=int)
    p_sim.add_argument("--seed", type=int)
    p_sim.add_argument("--t", type=int, nargs="+", help="override t values")
    add_common(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_sf = sub.add_parser("subfield", help="compute the subfield factorization")
    p_sf.add_argument("--config", required=True)
    p_sf.add_argument("--s", type=int)
    add_common(p_sf)
    p_sf.set_defaults(func=_cmd_subfield)

    p_cnt = sub.add_parser("count", help="count q-ary matrices by rank")
    p_cnt.add_argument("q", type=int)
    p_cnt.add_argument("m", type=int)
    p_cnt.add_argument("t", type=int)
    p_cnt.add_argument("rank", type=int)
    add_common(p_cnt)
    p_cnt.set_defaults(func=_cmd_count)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
