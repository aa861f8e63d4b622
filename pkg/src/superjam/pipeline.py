"""End-to-end frame transmission and Monte Carlo link simulation.

One frame: encode the image into the outer 4-QAM sequence, pick a jamming
codeword, superpose, and push the result through two independent AWGN
paths.  Bob regenerates the codeword from the shared index, cancels it,
and detects plain 4-QAM; Eve detects the outer label directly on the
16-point map.  Both ends decode back to an image.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math

import numpy as np

from . import rng
from .channel import ChannelSpec, awgn
from .codebook import Codebook, pick_index
from .codec import CodecSpec, Image, decode, encode
from .constellation import (PowerAllocation, cancel_interference,
                            eve_detect_outer, ml_detect_outer, outer_point,
                            superpose)
from .metrics import empirical_sep, psnr
from .sep import sep_eavesdropper, sep_legitimate, sigma_from_snr


@dataclass(frozen=True)
class LinkConfig:
    """Everything one frame transmission depends on besides the payloads."""

    pa: PowerAllocation
    snr_leg_db: float
    snr_eve_db: float
    master_seed: int = 0
    index_seed: int = 0
    codec: CodecSpec = field(default_factory=CodecSpec)
    regen_flip_prob: float = 0.0  # probability of corrupting each regenerated label

    def __post_init__(self) -> None:
        if not (math.isfinite(self.snr_leg_db) and math.isfinite(self.snr_eve_db)):
            raise ValueError("SNRs must be finite")
        if not 0.0 <= self.regen_flip_prob <= 1.0:
            raise ValueError("regen_flip_prob must be in [0, 1]")


@dataclass(frozen=True)
class LinkReport:
    """Per-frame outcome: empirical SEPs and reconstruction quality."""

    index: int
    sep_emp_leg: float
    sep_emp_eve: float
    psnr_bob_db: float  # math.inf when Bob's image is exact
    psnr_eve_db: float
    symbol_count: int


@dataclass(frozen=True)
class CampaignReport:
    """Symbol-weighted pooling over frames.

    PSNR means skip infinite (exact-reconstruction) frames; their count is
    reported separately so averages stay meaningful.
    """

    frames: int
    symbol_count: int
    sep_emp_leg: float
    sep_emp_eve: float
    psnr_bob_db: float
    psnr_eve_db: float
    psnr_bob_inf_frames: int
    psnr_eve_inf_frames: int


def _regenerate_inner(labels: np.ndarray, cfg: LinkConfig) -> np.ndarray:
    """Bob's codeword regeneration; optionally corrupted to model mismatch."""
    if cfg.regen_flip_prob == 0.0:
        return labels
    u = rng.uniforms(cfg.master_seed, rng.STREAM_REGEN_FLIP, 0, 2 * labels.size)
    flip = u[: labels.size] < cfg.regen_flip_prob
    # corrupted labels move to one of the other three values, uniformly
    delta = 1 + np.floor(u[labels.size:] * 3.0).astype(np.uint8)
    return np.where(flip, (labels + delta) % 4, labels).astype(np.uint8)


def transmit_frame(img: Image, codebook: Codebook,
                   cfg: LinkConfig) -> tuple[Image, Image, LinkReport]:
    """Run one image through the full legitimate and eavesdropping paths."""
    outer_labels = encode(img, cfg.codec)
    if codebook.length != outer_labels.size:
        raise ValueError(
            f"codebook length {codebook.length} != codec output "
            f"{outer_labels.size} for shape {img.shape}")
    index = pick_index(codebook, cfg.index_seed)
    y1 = outer_point(outer_labels)
    y2 = codebook.points(index)
    y = superpose(y1, y2, cfg.pa)

    s1 = awgn(y, ChannelSpec(cfg.snr_leg_db, cfg.master_seed, rng.STREAM_BOB))
    y2_hat = outer_point(_regenerate_inner(codebook.labels(index), cfg))
    y1_hat = cancel_interference(s1, y2_hat, cfg.pa)
    bob_labels = ml_detect_outer(y1_hat)
    bob_img = decode(bob_labels, img.shape, cfg.codec)

    s2 = awgn(y, ChannelSpec(cfg.snr_eve_db, cfg.master_seed, rng.STREAM_EVE))
    eve_labels = eve_detect_outer(s2, cfg.pa)
    eve_img = decode(eve_labels, img.shape, cfg.codec)

    report = LinkReport(
        index=index,
        sep_emp_leg=empirical_sep(outer_labels, bob_labels),
        sep_emp_eve=empirical_sep(outer_labels, eve_labels),
        psnr_bob_db=psnr(img, bob_img),
        psnr_eve_db=psnr(img, eve_img),
        symbol_count=outer_labels.size,
    )
    return bob_img, eve_img, report


def frame_config(cfg: LinkConfig, frame: int) -> LinkConfig:
    """The per-frame configuration a campaign uses for frame number ``frame``.

    Noise and index seeds are derived from the campaign seeds and the frame
    number, so frames are independent and order-insensitive.
    """
    return LinkConfig(
        pa=cfg.pa, snr_leg_db=cfg.snr_leg_db, snr_eve_db=cfg.snr_eve_db,
        master_seed=rng.derive_seed(cfg.master_seed, 2 * frame),
        index_seed=rng.derive_seed(cfg.index_seed, 2 * frame + 1),
        codec=cfg.codec, regen_flip_prob=cfg.regen_flip_prob)


def run_campaign(images: list[Image], codebook: Codebook,
                 cfg: LinkConfig) -> CampaignReport:
    """Transmit frames with per-frame derived seeds and pool the reports."""
    if not images:
        raise ValueError("need at least one image")
    reports = []
    for k, img in enumerate(images):
        reports.append(transmit_frame(img, codebook, frame_config(cfg, k))[2])
    total = sum(r.symbol_count for r in reports)
    err_leg = sum(r.sep_emp_leg * r.symbol_count for r in reports)
    err_eve = sum(r.sep_emp_eve * r.symbol_count for r in reports)

    def finite_mean(values):
        finite = [v for v in values if math.isfinite(v)]
        return (sum(finite) / len(finite)) if finite else math.inf

    bob_psnrs = [r.psnr_bob_db for r in reports]
    eve_psnrs = [r.psnr_eve_db for r in reports]
    return CampaignReport(
        frames=len(reports),
        symbol_count=total,
        sep_emp_leg=err_leg / total,
        sep_emp_eve=err_eve / total,
        psnr_bob_db=finite_mean(bob_psnrs),
        psnr_eve_db=finite_mean(eve_psnrs),
        psnr_bob_inf_frames=sum(math.isinf(v) for v in bob_psnrs),
        psnr_eve_inf_frames=sum(math.isinf(v) for v in eve_psnrs),
    )


@dataclass(frozen=True)
class SimResult:
    """Analytic vs Monte Carlo SEPs with binomial 3-sigma half-widths."""

    a: float
    snr_leg_db: float
    snr_eve_db: float
    symbols: int
    sep_leg_analytic: float
    sep_leg_empirical: float
    sep_leg_halfwidth: float
    sep_eve_analytic: float
    sep_eve_empirical: float
    sep_eve_halfwidth: float


def _mc_chunk(pa: PowerAllocation, snr_leg_db: float, snr_eve_db: float,
              seed: int, start: int, count: int) -> tuple[int, int]:
    """Symbol errors of both receivers over sample indices [start, start+count)."""
    outer = rng.random_labels(seed, rng.STREAM_OUTER_LABELS, start, count)
    inner = rng.random_labels(seed, rng.STREAM_INNER_LABELS, start, count)
    y = superpose(outer_point(outer), outer_point(inner), pa)

    s1 = awgn(y, ChannelSpec(snr_leg_db, seed, rng.STREAM_BOB), start_index=start)
    y1_hat = cancel_interference(s1, outer_point(inner), pa)
    err_leg = int(np.count_nonzero(ml_detect_outer(y1_hat) != outer))

    s2 = awgn(y, ChannelSpec(snr_eve_db, seed, rng.STREAM_EVE), start_index=start)
    err_eve = int(np.count_nonzero(eve_detect_outer(s2, pa) != outer))
    return err_leg, err_eve


def monte_carlo_sep(pa: PowerAllocation, snr_leg_db: float, snr_eve_db: float,
                    symbols: int, seed: int = 0, workers: int = 1,
                    chunk_size: int = 1 << 18) -> SimResult:
    """Estimate both SEPs by direct link simulation with uniform labels.

    Labels and noise are pure functions of the sample index, so any worker
    count or chunk size yields identical counts.
    """
    if symbols < 1:
        raise ValueError("symbols must be >= 1")
    spans = [(s, min(chunk_size, symbols - s))
             for s in range(0, symbols, chunk_size)]
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                lambda sp: _mc_chunk(pa, snr_leg_db, snr_eve_db, seed, *sp), spans))
    else:
        parts = [_mc_chunk(pa, snr_leg_db, snr_eve_db, seed, *sp) for sp in spans]
    err_leg = sum(p[0] for p in parts)
    err_eve = sum(p[1] for p in parts)

    leg = sep_legitimate(pa, sigma_from_snr(snr_leg_db))
    eve = sep_eavesdropper(pa, sigma_from_snr(snr_eve_db))

    def halfwidth(p: float) -> float:
        return 3.0 * math.sqrt(p * (1.0 - p) / symbols)

    return SimResult(
        a=pa.a, snr_leg_db=snr_leg_db, snr_eve_db=snr_eve_db, symbols=symbols,
        sep_leg_analytic=leg, sep_leg_empirical=err_leg / symbols,
        sep_leg_halfwidth=halfwidth(leg),
        sep_eve_analytic=eve, sep_eve_empirical=err_eve / symbols,
        sep_eve_halfwidth=halfwidth(eve),
    )
