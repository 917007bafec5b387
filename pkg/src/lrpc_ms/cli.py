"""Command-line front end: key lifecycle, parameter reports, simulations,
and micro-benchmarks.

Exit codes: 0 success, 1 usage, 2 I/O or malformed input, 3 decapsulation
failure.
"""

from __future__ import annotations

import argparse
import os
import statistics
import sys
import time

from . import analysis, kem, simulator
from .packing import BadLength, BadPadding
from .sampler import SEED_BYTES, derive_seed

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_DECAP_FAILURE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


class InputError(Exception):
    pass


def _seed_from_arg(value: str | None) -> bytes:
    if value is None:
        seed = os.urandom(SEED_BYTES)
        print(f"seed={seed.hex()}", file=sys.stderr)
        return seed
    try:
        seed = bytes.fromhex(value)
    except ValueError:
        raise InputError("seed must be hex") from None
    if len(seed) != SEED_BYTES:
        raise InputError(f"seed must be {2 * SEED_BYTES} hex characters")
    return seed


def _master_seed_from_arg(value: str | None) -> bytes:
    if value is None:
        seed = os.urandom(SEED_BYTES)
        print(f"seed={seed.hex()}", file=sys.stderr)
        return seed
    try:
        return bytes.fromhex(value)
    except ValueError:
        raise InputError("seed must be hex") from None


def _read_file(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write_file(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


def _params_from_args(args) -> kem.ParameterSet:
    if getattr(args, "params", None):
        return kem.get_params(args.params)
    raw = [args.n, args.k, args.m, args.r, args.d, args.ell]
    if any(v is None for v in raw):
        raise InputError("give --params NAME or all of --n --k --m --r --d --ell")
    name = f"custom-{args.n}-{args.k}-{args.m}-{args.r}-{args.d}-{args.ell}"
    return kem.ParameterSet(name, kem.UNSTRUCTURED, kem.STANDARD,
                            args.n, args.k, args.m, args.r, args.d, args.ell)


def _cmd_keygen(args) -> int:
    params = kem.get_params(args.params)
    seed = _seed_from_arg(args.seed)
    pk, sk = kem.keygen(params, seed)
    _write_file(args.pk, kem.serialize_public_key(params, pk))
    _write_file(args.sk, kem.serialize_secret_key(params, sk))
    return EXIT_OK


def _cmd_encap(args) -> int:
    params = kem.get_params(args.params)
    seed = _seed_from_arg(args.seed)
    pk = kem.deserialize_public_key(params, _read_file(args.pk))
    ct, ss = kem.encap(params, pk, seed)
    _write_file(args.ct, kem.serialize_ciphertext(params, ct))
    _write_file(args.ss, ss)
    return EXIT_OK


def _cmd_decap(args) -> int:
    params = kem.get_params(args.params)
    sk = kem.deserialize_secret_key(params, _read_file(args.sk))
    ct = kem.deserialize_ciphertext(params, _read_file(args.ct))
    ss = kem.decap(params, sk, ct)
    if ss is None:
        print("decapsulation failed", file=sys.stderr)
        return EXIT_DECAP_FAILURE
    _write_file(args.ss, ss)
    return EXIT_OK


def _cmd_params(args) -> int:
    if args.name:
        targets = [kem.get_params(args.name)]
    else:
        targets = list(kem.REGISTRY.values())
    if args.format == "kv":
        blocks = []
        for p in targets:
            blocks.append("\n".join(analysis.params_kv_lines(p, args.omega)))
        print("\n\n".join(blocks))
    else:
        print(analysis.render_params_table(targets, args.omega))
    for p in targets:
        for warning in analysis.security_warnings(p, args.omega):
            print(f"warning: {p.name}: {warning}", file=sys.stderr)
    return EXIT_OK


def _cmd_dfr_sim(args) -> int:
    params = _params_from_args(args)
    cfg = simulator.TrialConfig(trials=args.trials,
                                master_seed=_master_seed_from_arg(args.seed),
                                params=params)
    stats = simulator.dfr_trials(cfg)
    row = simulator.dfr_row(cfg, stats)
    _emit_rows(args.out, [row])
    return EXIT_OK


def _cmd_thm51_sim(args) -> int:
    cfg = simulator.TrialConfig(trials=args.trials,
                                master_seed=_master_seed_from_arg(args.seed),
                                m=args.m, n=args.n, n1=args.n1, n2=args.n2,
                                r=args.r, d=args.d)
    stats = simulator.product_support_trials(cfg)
    row = simulator.product_support_row(cfg, stats)
    _emit_rows(args.out, [row])
    return EXIT_OK


def _emit_rows(out_path: str | None, rows) -> None:
    if out_path:
        with open(out_path, "w", newline="") as fh:
            simulator.write_csv(fh, rows)
    else:
        simulator.write_csv(sys.stdout, rows)


def _cmd_bench(args) -> int:
    params = kem.get_params(args.params)
    keygen_ns, encap_ns, decap_ns = [], [], []
    master = os.urandom(SEED_BYTES)
    for i in range(args.iters):
        kg_seed = derive_seed(master, i, 0)
        enc_seed = derive_seed(master, i, 1)
        t0 = time.perf_counter_ns()
        pk, sk = kem.keygen(params, kg_seed)
        t1 = time.perf_counter_ns()
        ct, ss = kem.encap(params, pk, enc_seed)
        t2 = time.perf_counter_ns()
        out = kem.decap(params, sk, ct)
        t3 = time.perf_counter_ns()
        if out != ss:
            print(f"warning: round-trip mismatch at iteration {i}",
                  file=sys.stderr)
        keygen_ns.append(t1 - t0)
        encap_ns.append(t2 - t1)
        decap_ns.append(t3 - t2)
    print(f"name={params.name}")
    print(f"iters={args.iters}")
    for label, samples in (("keygen", keygen_ns), ("encap", encap_ns),
                           ("decap", decap_ns)):
        print(f"{label}_median_ms={statistics.median(samples) / 1e6:.3f}")
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="lrpcms", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--params", required=True)
    p.add_argument("--seed", help="80 hex characters; random when omitted")
    p.add_argument("--pk", required=True)
    p.add_argument("--sk", required=True)
    p.set_defaults(fn=_cmd_keygen)

    p = sub.add_parser("encap", help="encapsulate a shared secret")
    p.add_argument("--params", required=True)
    p.add_argument("--pk", required=True)
    p.add_argument("--seed")
    p.add_argument("--ct", required=True)
    p.add_argument("--ss", required=True)
    p.set_defaults(fn=_cmd_encap)

    p = sub.add_parser("decap", help="decapsulate a ciphertext")
    p.add_argument("--params", required=True)
    p.add_argument("--sk", required=True)
    p.add_argument("--ct", required=True)
    p.add_argument("--ss", required=True)
    p.set_defaults(fn=_cmd_decap)

    p = sub.add_parser("params", help="sizes, DFR bounds, attack costs")
    p.add_argument("--name")
    p.add_argument("--omega", type=float, default=2.0)
    p.add_argument("--format", choices=("table", "kv"), default="table")
    p.set_defaults(fn=_cmd_params)

    p = sub.add_parser("dfr-sim", help="empirical decoding failure rate")
    p.add_argument("--params")
    for flag in ("--n", "--k", "--m", "--r", "--d", "--ell"):
        p.add_argument(flag, type=int)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_dfr_sim)

    p = sub.add_parser("thm51-sim", help="product-support failure rate")
    for flag in ("--m", "--n", "--n1", "--n2", "--r", "--d"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_thm51_sim)

    p = sub.add_parser("bench", help="median wall-clock per operation")
    p.add_argument("--params", required=True)
    p.add_argument("--iters", type=int, default=10)
    p.set_defaults(fn=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except (InputError, KeyError, OSError, BadLength, BadPadding,
            kem.MalformedKey, kem.MalformedCiphertext,
            kem.DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
