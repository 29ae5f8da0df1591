"""Successive-cancellation decoding of polar codes over the noisy d-deletion channel.

The decoder tracks, at every factor-graph node, how many of the ``d``
deletions fall before and inside the node's segment ("scenarios").  Low
probability scenarios can be pruned with a global threshold (SSSC), a
per-node error budget (PSPC) or a cheap peak-based approximation of that
budget (SPSPC).
"""

from .analysis import count_scenarios, profile_prune_error
from .channel import (
    ChannelParams,
    DeletionPattern,
    apply_deletions,
    esn0_db_to_sigma2,
    modulate,
    sample_deletion_pattern,
    transmit,
    trial_rng,
)
from .decoder import (
    Counters,
    DecodeDegenerateError,
    DecodeResult,
    DeletionSCDecoder,
    decode,
)
from .oracle import brute_force_decode
from .polar import CodeConfig, construct_frozen_set, encode, sc_decode_reference
from .scenarios import (
    NodeCoord,
    PruneKind,
    PrunePolicy,
    Scenario,
    SegmentSplit,
    ThresholdTable,
    build_threshold_table,
    enumerate_scenarios,
    joint_weight,
    segment_split,
)
from .simulate import run_simulation

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "CodeConfig",
    "Counters",
    "DecodeDegenerateError",
    "DecodeResult",
    "DeletionPattern",
    "DeletionSCDecoder",
    "NodeCoord",
    "PruneKind",
    "PrunePolicy",
    "Scenario",
    "SegmentSplit",
    "ThresholdTable",
    "apply_deletions",
    "brute_force_decode",
    "build_threshold_table",
    "construct_frozen_set",
    "count_scenarios",
    "decode",
    "encode",
    "enumerate_scenarios",
    "esn0_db_to_sigma2",
    "joint_weight",
    "modulate",
    "profile_prune_error",
    "run_simulation",
    "sample_deletion_pattern",
    "sc_decode_reference",
    "segment_split",
    "transmit",
    "trial_rng",
]
