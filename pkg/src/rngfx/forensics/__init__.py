"""Forensic instruments: exhaustive censuses, orbit walks, tail audits,
related-seed checks, and chi-square machinery for word generators and
the normal sampler built on them."""

from .bins import (
    BinCensus,
    census_from_counts,
    first_output_bin_census,
    top_deviation_ranking,
)
from .census import (
    DEFAULT_SHIFTS,
    MAPS,
    PreimageCensus,
    low_bits_census,
    preimage_census,
)
from .chi2 import (
    Chi2Report,
    chi2_statistic,
    detection_sample_size,
    expected_chi2,
    interval_prob_abs,
    interval_prob_signed,
    normal_bin_probs,
    signed_bin_probs,
)
from .experiment import (
    DEFAULT_CHECKPOINTS,
    CheckpointRow,
    ExperimentResult,
    merged_partition,
    normal_chi2_experiment,
)
from .orbits import (
    OrbitStats,
    combined_period_log2,
    expected_periods,
    fixed_states,
    is_quadratic_residue,
    modulus,
    mwc_orbit_census,
    mwc_orbit_pair,
    second_orbit_start,
)
from .seeds import (
    LowBitsCheck,
    QuadrupleReport,
    expected_random_quadruples,
    find_zero_xor_quadruples,
    gf2_linearity_check,
    quadruple_lockstep_report,
    related_seed_lowbits_check,
    shr0_stream,
)
from .tail import TAIL_EDGES_ABOVE_R, tail_audit_shr0

__all__ = [
    "BinCensus",
    "census_from_counts",
    "first_output_bin_census",
    "top_deviation_ranking",
    "DEFAULT_SHIFTS",
    "MAPS",
    "PreimageCensus",
    "low_bits_census",
    "preimage_census",
    "Chi2Report",
    "chi2_statistic",
    "detection_sample_size",
    "expected_chi2",
    "interval_prob_abs",
    "interval_prob_signed",
    "normal_bin_probs",
    "signed_bin_probs",
    "DEFAULT_CHECKPOINTS",
    "CheckpointRow",
    "ExperimentResult",
    "merged_partition",
    "normal_chi2_experiment",
    "OrbitStats",
    "combined_period_log2",
    "expected_periods",
    "fixed_states",
    "is_quadratic_residue",
    "modulus",
    "mwc_orbit_census",
    "mwc_orbit_pair",
    "second_orbit_start",
    "LowBitsCheck",
    "QuadrupleReport",
    "expected_random_quadruples",
    "find_zero_xor_quadruples",
    "gf2_linearity_check",
    "quadruple_lockstep_report",
    "related_seed_lowbits_check",
    "shr0_stream",
    "TAIL_EDGES_ABOVE_R",
    "tail_audit_shr0",
]
