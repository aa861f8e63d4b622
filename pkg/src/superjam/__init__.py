"""Secure 4-QAM transmission with superposed private-codebook jamming.

Library surface: constellation geometry and detection, closed-form and
Monte Carlo symbol error probabilities for the legitimate and
eavesdropping receivers, power-allocation planning, a seeded AWGN wiretap
channel, jamming codebooks derived from a shared knowledge base, a
deterministic image codec, the nHSIC dependence statistic, and Gumbel
categorical sampling of 4-QAM symbols.
"""

from .channel import ChannelSpec, awgn
from .codebook import Codebook, KnowledgeBase, build_codebook, derive_inner_sequence, pick_index
from .codec import CodecSpec, Image, decode, encode, read_image, write_image
from .constellation import (PowerAllocation, all_super_points,
                            cancel_interference, eve_detect_outer,
                            ml_detect_outer, ml_detect_super, outer_point,
                            pack_super, split_super, super_point, superpose)
from .gumbel import (category_to_symbol, gumbel_softmax_sample, hard_sample,
                     hard_sample_batch)
from .independence import (LossWeights, gram_linear, load_sample_matrix,
                           loss_stage1, loss_stage2, loss_stage3, nhsic)
from .metrics import empirical_sep, mse, psnr
from .pipeline import (CampaignReport, LinkConfig, LinkReport, SimResult,
                       frame_config, monte_carlo_sep, run_campaign,
                       transmit_frame)
from .sep import (InfeasiblePlanError, SepCurve, SepPoint, eve_scp,
                  eve_scp_closed_form, plan_pac, q_function,
                  sep_eavesdropper, sep_eavesdropper_closed_form,
                  sep_legitimate, sigma_from_snr, sweep_curve)

__version__ = "0.1.0"

__all__ = [
    "ChannelSpec", "awgn",
    "Codebook", "KnowledgeBase", "build_codebook", "derive_inner_sequence", "pick_index",
    "CodecSpec", "Image", "decode", "encode", "read_image", "write_image",
    "PowerAllocation", "all_super_points", "cancel_interference",
    "eve_detect_outer", "ml_detect_outer", "ml_detect_super", "outer_point",
    "pack_super", "split_super", "super_point", "superpose",
    "category_to_symbol", "gumbel_softmax_sample", "hard_sample", "hard_sample_batch",
    "LossWeights", "gram_linear", "load_sample_matrix",
    "loss_stage1", "loss_stage2", "loss_stage3", "nhsic",
    "empirical_sep", "mse", "psnr",
    "CampaignReport", "LinkConfig", "LinkReport", "SimResult",
    "frame_config", "monte_carlo_sep", "run_campaign", "transmit_frame",
    "InfeasiblePlanError", "SepCurve", "SepPoint", "eve_scp",
    "eve_scp_closed_form", "plan_pac", "q_function", "sep_eavesdropper",
    "sep_eavesdropper_closed_form", "sep_legitimate", "sigma_from_snr",
    "sweep_curve",
    "__version__",
]
