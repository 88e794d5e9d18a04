"""Command-line front end: code generation, decoding, delay and simulation."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .alist import read_alist, write_alist
from .decoders import DecoderConfig, decode_fwbf, decode_imwbf, decode_mlp_wbf
from .delay import PipelineParams, iteration_delay, throughput_estimate
from .eg import eg_ldpc_construct
from .harness import ExperimentConfig, format_summary, run_experiment, run_point, sweep_alpha
from .matrix import code_spec, validate_rc

_STALL = {"terminate": "terminate", "flipmax": "flip-global-max"}


def _load_code(spec: str):
    """Resolve 'eg:S' or 'alist:PATH' (a bare path is read as alist)."""
    if spec.startswith("eg:"):
        return eg_ldpc_construct(int(spec[3:]))
    if spec.startswith("alist:"):
        return read_alist(spec[6:])
    return read_alist(spec)


def _z_hex(z: np.ndarray) -> str:
    """Pack bits MSB-first (bit 0 of z is the top bit) into lowercase hex."""
    v = 0
    for bit in z:
        v = (v << 1) | int(bit)
    ndigits = (len(z) + 3) // 4
    v <<= (4 * ndigits - len(z))  # pad on the LSB side
    return f"{v:0{ndigits}x}"


def _decoder_cfg(args) -> DecoderConfig:
    return DecoderConfig(
        alpha=args.alpha,
        k_max=args.kmax,
        lam=getattr(args, "lam", 1) or 1,
        block_len_p=getattr(args, "p", None),
        stall_policy=_STALL[args.stall],
        mlp_threshold=not getattr(args, "mlp_flip_all", False),
    )


def _cmd_gen_code(args) -> int:
    h = eg_ldpc_construct(args.eg)
    write_alist(h, args.out)
    print(f"wrote {h.n_rows}x{h.n_cols} matrix to {args.out}")
    return 0


def _cmd_code_info(args) -> int:
    h = read_alist(args.path)
    spec = code_spec(h)
    rc = validate_rc(h)
    print(f"n={spec.n}")
    print(f"k={spec.k}")
    print(f"rate={spec.rate:.6f}")
    print(f"row_weight={spec.row_weight if spec.row_weight is not None else 'irregular'}")
    print(f"col_weight={spec.col_weight if spec.col_weight is not None else 'irregular'}")
    print(f"rc={'pass' if rc.ok else 'fail'}")
    if not rc.ok:
        print(f"rc_row_pair={rc.row_pair}")
        print(f"rc_col_pair={rc.col_pair}")
    return 0


def _cmd_decode(args) -> int:
    h = _load_code(args.code)
    cfg = _decoder_cfg(args)
    y = np.array([float(line) for line in sys.stdin.read().split()])
    if y.size != h.n_cols:
        print(f"error: expected {h.n_cols} samples, got {y.size}", file=sys.stderr)
        return 2
    decode = {"imwbf": decode_imwbf, "mlp": decode_mlp_wbf, "fwbf": decode_fwbf}[args.decoder]
    out = decode(h, y, cfg)
    print(f"{int(out.converged)},{out.iterations},{int(out.stalled)},"
          f"{out.flips_total},{_z_hex(out.z_final)}")
    return 0


def _cmd_delay(args) -> int:
    params = PipelineParams.from_code_length(args.n, args.q)
    report = iteration_delay(params, args.algorithm, lam=args.lam)
    print("algorithm,q,n_padded,lambda,metric_clocks,choose_clocks,total_per_iteration")
    print(f"{report.algorithm},{report.q},{report.n_padded},{report.lam},"
          f"{report.metric_clocks},{report.choose_clocks},{report.total_per_iteration}")
    if args.clock_hz is not None:
        if args.k is None or args.avg_iters is None:
            print("error: --clock-hz requires --k and --avg-iters", file=sys.stderr)
            return 2
        bps = throughput_estimate(report, args.avg_iters, args.clock_hz, args.k)
        print(f"throughput_bps,{bps!r}")
    return 0


def _experiment_config(args) -> ExperimentConfig:
    codeword = None
    if getattr(args, "codeword", None):
        codeword = np.loadtxt(args.codeword, dtype=np.uint8)
    return ExperimentConfig(
        h=_load_code(args.code),
        decoder=args.decoder,
        decoder_cfg=_decoder_cfg(args),
        ebn0_db=tuple(float(x) for x in args.ebn0.split(",")),
        sigma_override=args.sigma,
        target_word_errors=args.target_we,
        max_frames=args.max_frames,
        master_seed=args.seed,
        codeword=codeword,
        workers=args.workers,
        out_path=getattr(args, "out", None),
    )


def _cmd_simulate(args) -> int:
    run_experiment(_experiment_config(args))
    return 0


def _cmd_sweep_alpha(args) -> int:
    config = _experiment_config(args)
    grid = [float(x) for x in args.alphas.split(",")]
    result = sweep_alpha(config, grid)
    for alpha, stats in result.entries:
        print(f"alpha={alpha:.4f}  " + format_summary([stats]).splitlines()[1].strip())
    print(f"best_alpha={result.best_alpha}")
    return 0


def _add_decoder_flags(p: argparse.ArgumentParser, *, with_p_lambda: bool = True):
    p.add_argument("--decoder", required=True, choices=["imwbf", "mlp", "fwbf"])
    p.add_argument("--alpha", type=float, default=0.2)
    p.add_argument("--kmax", type=int, default=10)
    if with_p_lambda:
        p.add_argument("--lambda", dest="lam", type=int, default=1,
                       help="flip count for the multi-bit decoder")
        p.add_argument("--p", type=int, default=None, help="block length for fwbf")
    p.add_argument("--stall", choices=sorted(_STALL), default="flipmax")
    p.add_argument("--mlp-flip-all", action="store_true",
                   help="flip all lambda selections even when their metric is <= 0")


def _add_sim_flags(p: argparse.ArgumentParser):
    p.add_argument("--code", required=True, help="eg:S or alist:PATH")
    _add_decoder_flags(p)
    p.add_argument("--ebn0", required=True, help="comma-separated Eb/N0 values in dB")
    p.add_argument("--sigma", type=float, default=None,
                   help="raw noise sigma override (ignores --ebn0 mapping)")
    p.add_argument("--target-we", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=10_000_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--codeword", default=None,
                   help="file of N bits to transmit instead of the all-zero word")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fwbf",
                                 description="Weighted bit-flipping LDPC decoder toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-code", help="construct an EG-LDPC code and write it as alist")
    p.add_argument("--eg", type=int, required=True, help="geometry parameter s")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen_code)

    p = sub.add_parser("code-info", help="print N, K, rate, weights and RC status")
    p.add_argument("--in", dest="path", required=True)
    p.set_defaults(func=_cmd_code_info)

    p = sub.add_parser("decode", help="decode one frame of N reals from stdin")
    p.add_argument("--code", required=True, help="eg:S or alist:PATH")
    _add_decoder_flags(p)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("delay", help="per-iteration clock counts for the choose hardware")
    p.add_argument("--n", type=int, required=True, help="metric vector length before padding")
    p.add_argument("--q", type=int, required=True, help="first-stage comparator count")
    p.add_argument("--algorithm", required=True, choices=["mlp", "fwbf"])
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.add_argument("--clock-hz", type=float, default=None)
    p.add_argument("--k", type=int, default=None, help="information bits per frame")
    p.add_argument("--avg-iters", type=float, default=None)
    p.set_defaults(func=_cmd_delay)

    p = sub.add_parser("simulate", help="Monte Carlo BER/FER over an SNR grid")
    _add_sim_flags(p)
    p.add_argument("--out", default=None, help="CSV output path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep-alpha", help="FER across an alpha grid at one SNR point")
    _add_sim_flags(p)
    p.add_argument("--alphas", required=True, help="comma-separated alpha grid")
    p.set_defaults(func=_cmd_sweep_alpha)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
