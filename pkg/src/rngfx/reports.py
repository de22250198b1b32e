"""Report serialization: versioned JSON documents and CSV curves.

Every JSON report is {header fields..., "result": ...}. The header
carries the schema version, tool name/version, the invocation config,
and the only timestamp in the document; the result subtree is a pure
function of the computation, so two runs with the same config produce
byte-identical result sections (diff-friendly and cacheable).

Floats are printed at 17 significant digits, enough to round-trip an
IEEE double exactly, so probabilities can be compared across runs and
platforms without hidden rounding.
"""

from __future__ import annotations

import math
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .errors import NoDeviations
from .forensics.bins import BinCensus, top_deviation_ranking
from .forensics.census import PreimageCensus
from .forensics.experiment import ExperimentResult
from .forensics.orbits import OrbitStats, combined_period_log2
from .forensics.seeds import LowBitsCheck, QuadrupleReport

SCHEMA_VERSION = 1
TOOL_NAME = "rngfx"


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return "%.17g" % x


def dumps17(obj, indent: int = 1) -> str:
    """JSON text with floats at 17 significant digits.

    Dict keys keep insertion order (reports are built in a fixed order,
    so output is deterministic). Accepts the usual JSON types plus
    numpy scalars and arrays.
    """

    def emit(o, depth: int) -> str:
        pad = " " * (indent * (depth + 1))
        close_pad = " " * (indent * depth)
        if isinstance(o, str):
            return '"' + o.replace("\\", "\\\\").replace('"', '\\"') + '"'
        if o is None:
            return "null"
        if isinstance(o, bool):
            return "true" if o else "false"
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return _fmt_float(float(o))
        if isinstance(o, np.ndarray):
            o = o.tolist()
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            items = [emit(v, depth + 1) for v in o]
            return "[\n" + ",\n".join(pad + s for s in items) + "\n" + close_pad + "]"
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [
                pad + emit(str(k), depth + 1) + ": " + emit(v, depth + 1)
                for k, v in o.items()
            ]
            return "{\n" + ",\n".join(items) + "\n" + close_pad + "}"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return emit(obj, 0) + "\n"


def make_report(kind: str, config: dict, result: dict) -> dict:
    """Wrap a result subtree in the versioned header."""
    return {
        "schema": SCHEMA_VERSION,
        "tool": TOOL_NAME,
        "version": __version__,
        "kind": kind,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config": config,
        "result": result,
    }


def census_result(census: PreimageCensus) -> dict:
    return {
        "map": census.map_name,
        "domain_bits": census.domain_bits,
        "domain_size": census.domain_size,
        "chunks": census.chunks,
        "shifts": list(census.shifts),
        "multiplicity_counts": {
            str(m): c for m, c in sorted(census.multiplicity_counts.items())
        },
    }


def bin_rows(census: BinCensus) -> list[dict]:
    """Per-bin rows; bins are numbered from 1 in reports."""
    rows = []
    for j in range(census.nbins):
        rows.append(
            {
                "bin": j + 1,
                "lo": float(census.edges[j]),
                "hi": float(census.edges[j + 1]),
                "count": int(census.counts[j]),
                "p": float(census.p[j]),
                "q": float(census.q[j]),
                "eps": float(census.eps[j]),
                "p_eps2": float(census.p[j] * census.eps[j] ** 2),
            }
        )
    return rows


def zigg_bins_result(census: BinCensus, top: int = 8) -> dict:
    try:
        detect = census.detection_size()
    except NoDeviations:
        detect = None
    return {
        "trials": census.trials,
        "bins": census.nbins,
        "sum_p_eps2": census.weighted_sq_deviation(),
        "detection_sample_size": detect,
        "top_bins_by_p_eps2": top_deviation_ranking(census, top),
        "rows": bin_rows(census),
    }


def tail_result(entering: int, census: BinCensus) -> dict:
    return {
        "entering_states": entering,
        "rows": bin_rows(census),
    }


def orbit_result(stats: OrbitStats) -> dict:
    return {
        "a": stats.a,
        "start_state": stats.start_state,
        "period": stats.period,
        "msb7_counts": stats.msb7_counts.tolist(),
        "probabilities": stats.probabilities.tolist(),
        "eps": stats.eps.tolist(),
    }


def orbit_pair_result(one: OrbitStats, other: OrbitStats) -> dict:
    return {
        "modulus": one.a * 65536 - 1,
        "orbits": [orbit_result(one), orbit_result(other)],
        "state_space_covered": one.period + other.period + 2,
        "combined_log2_with_w": combined_period_log2(one.period, 589823999)
        if one.a == 36969
        else None,
    }


def lowbits_result(check: LowBitsCheck) -> dict:
    return {
        "jsr": check.jsr,
        "icng_a": check.icng_a,
        "icng_b": check.icng_b,
        "nsteps": check.nsteps,
        "nlowbits": check.nlowbits,
        "violations": check.violations,
        "first_violation_step": check.first_violation_step,
        "locked": check.locked,
    }


def quadruple_result(
    quads: list[tuple[int, int, int, int]],
    reports: list[QuadrupleReport],
    expected_random: float,
) -> dict:
    return {
        "quadruples": [list(q) for q in quads],
        "expected_random_quadruples": expected_random,
        "lockstep": [
            {
                "seeds": list(r.seeds),
                "nsteps": r.nsteps,
                "xor_zero_all_steps": r.xor_zero_all_steps,
                "index_xor_zero_rate": r.index_xor_zero_rate,
                "sign_xor_zero_rate": r.sign_xor_zero_rate,
            }
            for r in reports
        ],
    }


def experiment_result(res: ExperimentResult) -> dict:
    return {
        "variant": res.variant,
        "k": res.k,
        "bins": res.nbins,
        "range": [res.lo, res.hi],
        "c": res.c,
        "protocol": res.protocol,
        "rows": [
            {
                "n": row.n_nominal,
                "inside": row.inside,
                "overflow": row.overflow,
                "k_eff": row.k_eff,
                "statistic": row.statistic,
                "threshold": row.threshold,
                "verdict": row.verdict,
            }
            for row in res.rows
        ],
    }


def write_curve_csv(path: str, res: ExperimentResult) -> None:
    """Growth curve as CSV: one row per checkpoint, N,T,threshold.

    The comment header records the binning so the curve is
    self-describing.
    """
    with open(path, "w") as fh:
        fh.write(
            f"# variant={res.variant} bins={res.nbins} "
            f"range=[{res.lo:g},{res.hi:g}] k={res.k} c={res.c:g}\n"
        )
        fh.write("N,T,threshold\n")
        for row in res.rows:
            fh.write(f"{row.n_nominal},{row.statistic:.17g},{row.threshold:.17g}\n")
