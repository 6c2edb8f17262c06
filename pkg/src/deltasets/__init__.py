"""Distance sets ``Delta(A) = {a - a' : a > a'}`` of integer sequences.

Finite sets and their distance histograms, a small sequence language,
constructive witnesses for ``Delta(A) & Delta(B)``, finite-prefix
diagnostics for growth conditions and a few canned experiments.
"""
from .errors import *  # noqa: F401,F403
from .finite_sets import (
    DistanceHistogram,
    FiniteSet,
    delta_set,
    delta_with_provenance,
    distance_histogram,
    load_set,
    prefix_count,
    recursion_set,
    save_set,
    set_from_json,
    set_to_json,
    shift_intersect_count,
)
from .sequences import (
    GenerationReport,
    SequenceSpec,
    builtin_term,
    first_primes,
    generate,
    parse_spec,
    primes_up_to,
    terms_up_to,
)
from .witness import (
    CommonDistanceReport,
    KhintchineRow,
    WitnessReport,
    find_pigeonhole_prefix,
    khintchine_scan,
    lemma_bound,
    lemma_witness,
    lemma_witnesses,
    pigeonhole_witness,
)
from .diagnostics import (
    PowerVerdict,
    RatioSeries,
    Verdict,
    geometric_grid,
    power_constant_check,
    ratio_series,
    theorem_condition_check,
)
from .experiments import ExperimentReport, run_experiment

__version__ = "0.1.0"
