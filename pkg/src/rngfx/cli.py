"""Command-line front end.

Subcommands:

    gen         stream raw 32-bit words or normal deviates
    census      exhaustive preimage census of a 32-bit map
    audit       one of the built-in forensic audits
    experiment  chi-square growth curve for a normal sampler
    seedcheck   related-seed correlation checks

Exit codes: 0 on success, 2 on usage or configuration errors, 3 when a
census counter saturates (results would be floors, not counts).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import _kernels, reports
from ._bridge import VID_BY_VARIANT, kernel_tables, make_regs
from .errors import CounterSaturation, RngfxError
from .forensics import (
    bins,
    census as census_mod,
    chi2,
    experiment as experiment_mod,
    orbits,
    seeds as seeds_mod,
    tail as tail_mod,
)
from .generators import ICNG_SEED_DEFAULT, MWC_W_DEFAULT, MWC_Z_DEFAULT
from .ziggurat import build_table

# CLI spelling -> internal variant key. randn-uni is the combined
# new-lcg + new-xorshift sum used by the classic normal generator.
GEN_VARIANTS = {
    "shr3": "shr3",
    "shr0": "shr0",
    "cng": "cng",
    "mwc32": "mwc32",
    "randn-uni": "cng-plus-shr0",
    "kiss-xplustx": "kiss-xplustx",
    "shrcong-xplustx": "shrcong-xplustx",
    "ideal": "ideal",
}

EXPERIMENT_VARIANTS = {
    "shr3": "shr3",
    "shr0": "shr0",
    "cng-plus-shr0": "cng-plus-shr0",
    "mwc32": "mwc32",
    "kiss-xplustx": "kiss-xplustx",
    "shrcong-xplustx": "shrcong-xplustx",
    "ideal": "ideal",
}


def default_workers() -> int:
    env = os.environ.get("RNGFX_WORKERS")
    if env:
        try:
            n = int(env)
        except ValueError as exc:
            raise SystemExit(f"RNGFX_WORKERS must be an integer, got {env!r}") from exc
        if n < 1:
            raise SystemExit("RNGFX_WORKERS must be >= 1")
        return n
    return os.cpu_count() or 1


def _u32(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 32:
        raise argparse.ArgumentTypeError(f"{text} is not a 32-bit value")
    return value


def _emit_report(args, kind: str, config: dict, result: dict) -> None:
    doc = reports.make_report(kind, config, result)
    text = reports.dumps17(doc)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _progress_stderr(label: str):
    def cb(done, total):
        sys.stderr.write(f"{label}: {done}/{total}\n")
        sys.stderr.flush()

    return cb


def cmd_gen(args) -> int:
    variant = GEN_VARIANTS[args.variant]
    jsr = 1
    icng = ICNG_SEED_DEFAULT
    if args.seed_vector is not None:
        jsr, icng = args.seed_vector
    elif args.seed is not None:
        jsr = args.seed
    if args.seed_icng is not None:
        icng = args.seed_icng
    extra = args.seed if (variant == "ideal" and args.seed is not None) else 0
    regs = make_regs(
        variant,
        jsr=jsr if variant != "ideal" else 1,
        icng=icng,
        z=args.seed_z,
        w=args.seed_w,
        extra=extra,
    )
    vid = VID_BY_VARIANT[variant]
    if args.normal:
        table = build_table(args.k)
        kn, wn, fn, r, kmask = kernel_tables(table)
        out = np.zeros(args.count, dtype=np.float64)
        _kernels.gen_deviates(vid, regs, kn, wn, fn, r, kmask, out)
        for d in out:
            print("%.17g" % d)
    else:
        out = np.zeros(args.count, dtype=np.uint32)
        _kernels.gen_words(vid, regs, out)
        if args.format == "hex":
            for w in out:
                print(f"{int(w):08x}")
        else:
            for w in out:
                print(int(w))
    return 0


def cmd_census(args) -> int:
    config = {
        "map": args.map,
        "chunks": args.chunks,
        "domain_bits": args.domain_bits,
        "shifts": list(args.shifts),
        "workers": args.workers,
    }
    census = census_mod.preimage_census(
        args.map,
        chunks=args.chunks,
        workers=args.workers,
        domain_bits=args.domain_bits,
        shifts=tuple(args.shifts),
        progress=_progress_stderr("chunk") if not args.quiet else None,
        checkpoint_dir=args.checkpoint_dir,
        resume=args.resume,
    )
    _emit_report(args, "census", config, reports.census_result(census))
    return 0


def cmd_audit(args) -> int:
    if args.audit == "zigg-bins":
        config = {
            "audit": args.audit,
            "variant": args.variant,
            "k": args.k,
            "seed_lo": args.seed_lo,
            "seed_hi": args.seed_hi,
            "workers": args.workers,
        }
        census = bins.first_output_bin_census(
            GEN_VARIANTS[args.variant],
            k=args.k,
            seed_lo=args.seed_lo,
            seed_hi=args.seed_hi,
            workers=args.workers,
            progress=_progress_stderr("span") if not args.quiet else None,
        )
        _emit_report(args, "audit", config, reports.zigg_bins_result(census))
        return 0
    if args.audit == "tail":
        config = {"audit": args.audit, "k": 128}
        entering, census = tail_mod.tail_audit_shr0()
        _emit_report(args, "audit", config, reports.tail_result(entering, census))
        return 0
    if args.audit == "mwc-orbit":
        config = {"audit": args.audit, "a": args.a}
        one, other = orbits.mwc_orbit_pair(args.a)
        _emit_report(args, "audit", config, reports.orbit_pair_result(one, other))
        return 0
    # lowbits: distribution of the low bits of a map over its whole domain
    config = {
        "audit": args.audit,
        "map": args.map,
        "nbits": args.nbits,
        "domain_bits": args.domain_bits,
        "workers": args.workers,
    }
    counts = census_mod.low_bits_census(
        args.map,
        nbits=args.nbits,
        domain_bits=args.domain_bits,
        workers=args.workers,
    )
    total = int(counts.sum())
    npat = len(counts)
    p = np.full(npat, 1.0 / npat)
    q = counts / total
    eps = q / p - 1.0
    result = {
        "map": args.map,
        "nbits": args.nbits,
        "domain_size": total,
        "counts": counts.tolist(),
        "spread": int(counts.max() - counts.min()),
        "max_abs_eps": float(np.max(np.abs(eps))),
    }
    _emit_report(args, "audit", config, result)
    return 0


def cmd_experiment(args) -> int:
    if args.checkpoints:
        checkpoints = args.checkpoints
    else:
        checkpoints = [
            n for n in experiment_mod.DEFAULT_CHECKPOINTS if n <= args.max
        ]
        if not checkpoints or checkpoints[-1] != args.max:
            checkpoints.append(args.max)
    config = {
        "variant": args.variant,
        "k": args.k,
        "bins": args.bins,
        "range": list(args.range),
        "checkpoints": checkpoints,
        "seed": args.seed,
        "protocol": args.protocol,
    }
    res = experiment_mod.normal_chi2_experiment(
        EXPERIMENT_VARIANTS[args.variant],
        checkpoints=checkpoints,
        nbins=args.bins,
        lo=args.range[0],
        hi=args.range[1],
        k=args.k,
        jsr=args.seed if args.variant != "ideal" else 1,
        extra=args.seed,
        protocol=args.protocol,
        progress=_progress_stderr("deviates") if not args.quiet else None,
    )
    if args.csv:
        reports.write_curve_csv(args.csv, res)
    _emit_report(args, "experiment", config, reports.experiment_result(res))
    return 0


def cmd_seedcheck(args) -> int:
    if args.check == "lowbits":
        icng_a = args.i
        icng_b = args.j if args.j is not None else (args.i + args.delta) & 0xFFFFFFFF
        config = {
            "check": args.check,
            "jsr": args.jsr,
            "icng_a": icng_a,
            "icng_b": icng_b,
            "nsteps": args.nsteps,
            "nlowbits": args.nlowbits,
        }
        check = seeds_mod.related_seed_lowbits_check(
            args.jsr, icng_a, icng_b, nsteps=args.nsteps, nlowbits=args.nlowbits
        )
        _emit_report(args, "seedcheck", config, reports.lowbits_result(check))
        return 0
    # quadruple
    if args.random is not None:
        rng = np.random.default_rng(args.random_seed)
        seed_list = [int(s) for s in rng.integers(1, 1 << 32, size=args.random)]
    elif args.seeds:
        seed_list = args.seeds
    else:
        seed_list = [1, 2, 5, 6, 3141592, 2718281, 1414213, 1732050]
    config = {
        "check": args.check,
        "seeds": seed_list,
        "nsteps": args.nsteps,
    }
    quads = seeds_mod.find_zero_xor_quadruples(seed_list)
    lock = [
        seeds_mod.quadruple_lockstep_report(q, nsteps=args.nsteps) for q in quads
    ]
    result = reports.quadruple_result(
        quads, lock, seeds_mod.expected_random_quadruples(len(seed_list))
    )
    _emit_report(args, "seedcheck", config, result)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rngfx",
        description="Forensic toolkit for classic 32-bit generators "
        "and the ziggurat normal sampler built on them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="stream words or normal deviates")
    p_gen.add_argument("--variant", choices=sorted(GEN_VARIANTS), default="shr3")
    p_gen.add_argument("--count", type=int, default=10)
    p_gen.add_argument("--seed", type=_u32, default=None,
                       help="scalar seed (jsr register; 64-bit state for ideal)")
    p_gen.add_argument("--seed-vector", type=_u32, nargs=2, metavar=("A", "B"),
                       default=None, help="vector seed: jsr, icng")
    p_gen.add_argument("--seed-icng", type=_u32, default=None)
    p_gen.add_argument("--seed-z", type=_u32, default=MWC_Z_DEFAULT)
    p_gen.add_argument("--seed-w", type=_u32, default=MWC_W_DEFAULT)
    p_gen.add_argument("--normal", action="store_true",
                       help="emit normal deviates instead of words")
    p_gen.add_argument("--k", type=int, choices=(128, 64), default=128)
    p_gen.add_argument("--format", choices=("decimal", "hex"), default="decimal")
    p_gen.set_defaults(func=cmd_gen)

    p_cen = sub.add_parser("census", help="exhaustive preimage census")
    p_cen.add_argument("--map", choices=sorted(census_mod.MAPS), required=True)
    p_cen.add_argument("--chunks", type=int, default=16)
    p_cen.add_argument("--domain-bits", type=int, default=32)
    p_cen.add_argument("--shifts", type=int, nargs=3, metavar=("S1", "S2", "S3"),
                       default=list(census_mod.DEFAULT_SHIFTS))
    p_cen.add_argument("--workers", type=int, default=None)
    p_cen.add_argument("--checkpoint-dir", default=None)
    p_cen.add_argument("--resume", action="store_true")
    p_cen.add_argument("--quiet", action="store_true")
    p_cen.add_argument("-o", "--output", default=None)
    p_cen.set_defaults(func=cmd_census)

    p_aud = sub.add_parser("audit", help="built-in forensic audits")
    p_aud.add_argument("audit", choices=("zigg-bins", "tail", "mwc-orbit", "lowbits"))
    p_aud.add_argument("--variant", choices=sorted(GEN_VARIANTS), default="shr3")
    p_aud.add_argument("--k", type=int, choices=(128, 64), default=128)
    p_aud.add_argument("--seed-lo", type=int, default=1)
    p_aud.add_argument("--seed-hi", type=int, default=1 << 32)
    p_aud.add_argument("--a", type=int, choices=(36969, 18000), default=36969)
    p_aud.add_argument("--map", choices=sorted(census_mod.MAPS), default="x-plus-tx")
    p_aud.add_argument("--nbits", type=int, default=7)
    p_aud.add_argument("--domain-bits", type=int, default=32)
    p_aud.add_argument("--workers", type=int, default=None)
    p_aud.add_argument("--quiet", action="store_true")
    p_aud.add_argument("-o", "--output", default=None)
    p_aud.set_defaults(func=cmd_audit)

    p_exp = sub.add_parser("experiment", help="chi-square growth curve")
    p_exp.add_argument("--variant", choices=sorted(EXPERIMENT_VARIANTS),
                       default="shr3")
    p_exp.add_argument("--max", type=int, default=1 << 30,
                       help="largest checkpoint when --checkpoints is not given")
    p_exp.add_argument("--checkpoints", type=int, nargs="+", default=None)
    p_exp.add_argument("--bins", type=int, default=200)
    p_exp.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"),
                       default=(-7.0, 7.0))
    p_exp.add_argument("--k", type=int, choices=(128, 64), default=128)
    p_exp.add_argument("--seed", type=int, default=1)
    p_exp.add_argument("--protocol", choices=("stream", "restart"),
                       default="stream",
                       help="continuous stream, or one deviate per "
                            "sequential seed")
    p_exp.add_argument("--csv", default=None)
    p_exp.add_argument("--quiet", action="store_true")
    p_exp.add_argument("-o", "--output", default=None)
    p_exp.set_defaults(func=cmd_experiment)

    p_seed = sub.add_parser("seedcheck", help="related-seed correlation checks")
    p_seed.add_argument("check", choices=("lowbits", "quadruple"))
    p_seed.add_argument("--jsr", type=_u32, default=1)
    p_seed.add_argument("--i", type=_u32, default=0)
    p_seed.add_argument("--j", type=_u32, default=None)
    p_seed.add_argument("--delta", type=_u32, default=64)
    p_seed.add_argument("--nsteps", type=int, default=1_000_000)
    p_seed.add_argument("--nlowbits", type=int, default=6)
    p_seed.add_argument("--seeds", type=_u32, nargs="+", default=None)
    p_seed.add_argument("--random", type=int, default=None,
                        help="draw this many random seeds instead of --seeds")
    p_seed.add_argument("--random-seed", type=int, default=0)
    p_seed.add_argument("-o", "--output", default=None)
    p_seed.set_defaults(func=cmd_seedcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", None) is None and hasattr(args, "workers"):
        args.workers = default_workers()
    try:
        return args.func(args)
    except CounterSaturation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (RngfxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main(argv=sys.argv[1:]))
