"""Weighted bit-flipping LDPC decoding toolkit.

Code construction (EG-LDPC, alist I/O), the weighted bit-flipping decoder
family (single-bit, multi-bit, block-parallel), an AWGN/BPSK Monte Carlo
harness, and a clock-accurate model of the comparator-pipeline bit-choose
hardware.
"""

from .alist import (AlistError, AlistFormatError, AlistMismatchError,
                    AlistRangeError, read_alist, write_alist)
from .channel import (ChannelParams, ReceivedFrame, awgn_apply, bpsk_modulate,
                      ebn0_to_sigma, frame_rng, transmit)
from .decoders import (DecodeOutcome, DecoderConfig, DecodeState, WeightTable,
                       all_metrics, bit_metric, block_argmax, compute_weights,
                       decode_fwbf, decode_imwbf, decode_mlp_wbf, hard_decision)
from .delay import (DelayReport, PipelineParams, fwbf_choose_delay,
                    iteration_delay, mlp_choose_delay, pad_metrics,
                    simulate_pipeline, throughput_estimate)
from .eg import eg_ldpc_construct
from .gf import GaloisField, gf_build
from .harness import (ExperimentConfig, PointStats, SweepResult, run_experiment,
                      run_point, sweep_alpha, write_csv)
from .matrix import (CodeSpec, ParityCheckMatrix, RcReport, code_spec, gf2_rank,
                     validate_rc)

__version__ = "0.1.0"
