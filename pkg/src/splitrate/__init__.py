"""Cutoff rates and error exponents for combined and split channels.

Submodules: dmc (channels, E0, capacity), exponents (random-coding
exponents and erasure closed forms), gf2 (binary matrix algebra),
combine (label maps and channel synthesis), split (successive-
cancellation rate allocations), cli (command-line front end).
"""

from .dmc import (
    Channel,
    ChannelValidationError,
    bec,
    bsc,
    capacity,
    cutoff_rate,
    e0,
    load_channel,
    max_e0,
    mec,
    mutual_info,
    product,
    save_channel,
    uniform_dist,
)
from .exponents import (
    ExponentCurve,
    TradeoffFigures,
    critical_rate,
    divergence,
    er,
    er_q,
    erasure_capacity,
    erasure_cutoff,
    massey_curves,
    massey_rate_curves,
    mec_exponent,
    ml_tradeoff,
    write_curves_csv,
)
from .combine import (
    LabelMap,
    MapValidationError,
    SynthChannel,
    TableBudgetError,
    apply_map,
    synth_to_json,
    synthesize,
)
from .split import (
    ChainModel,
    MemoryBudgetError,
    RateAllocation,
    chain_mutual_info,
    chain_rates,
    conditional_cutoff,
    spectral_chain,
    syndrome_structure,
    write_allocation_csv,
)

__all__ = [
    "Channel",
    "ChannelValidationError",
    "ChainModel",
    "ExponentCurve",
    "LabelMap",
    "MapValidationError",
    "MemoryBudgetError",
    "RateAllocation",
    "SynthChannel",
    "TableBudgetError",
    "TradeoffFigures",
    "apply_map",
    "bec",
    "bsc",
    "capacity",
    "chain_mutual_info",
    "chain_rates",
    "conditional_cutoff",
    "critical_rate",
    "cutoff_rate",
    "divergence",
    "e0",
    "er",
    "er_q",
    "erasure_capacity",
    "erasure_cutoff",
    "load_channel",
    "massey_curves",
    "massey_rate_curves",
    "max_e0",
    "mec",
    "mec_exponent",
    "ml_tradeoff",
    "mutual_info",
    "product",
    "save_channel",
    "spectral_chain",
    "syndrome_structure",
    "synth_to_json",
    "synthesize",
    "uniform_dist",
    "write_allocation_csv",
    "write_curves_csv",
]

__version__ = "0.1.0"
