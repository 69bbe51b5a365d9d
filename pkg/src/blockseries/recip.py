"""Blockwise power-series reciprocal via a fused third-order Newton step.

Given a length-m base-case inverse, the iteration produces 3s blocks in four
phases: (1) a division loop extends the inverse to s blocks; (2) the product
of input and partial inverse yields the negated low defect blocks; (3) a
fused pass accumulates defect-square and high-defect spectra and spends a
single inverse transform per block on their difference; (4) the third-order
update multiplies the partial inverse by the assembled correction.  Total
cost: exactly 13s - 3 transforms of length 2m (7s - 1 forward, 6s - 2
inverse) beyond the base case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import baselines
from .blockwise import (
    BlockSeries,
    TransformCache,
    combined_block,
    decompose,
    product_block,
    shifted,
)
from .oracle import mul_schoolbook
from .transform import (
    TransformLedger,
    as_series,
    forward,
    inverse,
    next_supported,
    pointwise_mul,
    require_unit_constant,
)

MAX_BLOCKS = 16


@dataclass(frozen=True)
class RecipPlan:
    """Chosen precision split: 3 * blocks * block_size >= n."""

    n: int
    blocks: int
    block_size: int


def choose_params(n: int, blocks_override: int | None = None) -> RecipPlan:
    """Pick the block-count parameter s and block size for precision n."""
    if n < 1:
        raise ValueError("precision must be >= 1")
    if blocks_override is not None:
        if blocks_override < 1:
            raise ValueError("block count must be >= 1")
        s = blocks_override
    else:
        s = min(MAX_BLOCKS, max(1, round(math.log2(n) / 6)))
    block_size = next_supported(-(-n // (3 * s)))
    return RecipPlan(n, s, block_size)


def recip_block_iter(
    f: BlockSeries,
    g0,
    s: int,
    ledger: TransformLedger,
    *,
    on_phase=None,
    capture: dict | None = None,
) -> np.ndarray:
    """Inverse of f to 3s*m coefficients from a length-m base case g0.

    The input's constant term must be 1 and f must supply at least 3s blocks.
    Adds exactly 13s - 3 length-2m transforms to the ledger.  ``on_phase``,
    if given, is called with a phase name after each phase completes;
    ``capture`` collects the correction blocks for structural tests.
    """
    m = f.block_size
    if s < 1:
        raise ValueError("block count must be >= 1")
    if f.num_blocks < 3 * s:
        raise ValueError(f"need {3 * s} input blocks, have {f.num_blocks}")
    g0 = as_series(g0)
    if len(g0) != m:
        raise ValueError("base-case block must match the block size")

    inv_low = BlockSeries(m)
    inv_low.append(g0)
    inv_cache = TransformCache(inv_low)
    g0_spec = inv_cache.ensure(0, ledger)
    f_cache = TransformCache(f)
    for i in range(3 * s):
        f_cache.ensure(i, ledger)
    if on_phase:
        on_phase("setup")

    # Phase 1: division loop; each new block cancels the residual of the
    # partial product f * inv against 1.
    for k in range(1, s):
        resid = product_block(f_cache, inv_cache, k, ledger)
        resid_spec = forward(resid, 2 * m, ledger)
        upd = inverse(pointwise_mul(g0_spec, resid_spec), ledger)
        inv_low.append(-upd[:m])
        inv_cache.ensure(k, ledger)
    if on_phase:
        on_phase("division")

    # Phase 2: negated low defect blocks of f * inv.
    corr = BlockSeries(m)
    corr_cache = TransformCache(corr)
    for k in range(s):
        blk = product_block(f_cache, inv_cache, k + s, ledger)
        corr.append(-blk)
        corr_cache.ensure(k, ledger)
    if on_phase:
        on_phase("low-defect")

    # Phase 3: fused pass.  Block k (s <= k < 2s) of the correction is
    # (corr_low^2) at k-s minus (f * inv) at k+s, combined in the spectral
    # domain and realized with a single inverse transform per block.
    corr_sq = shifted(corr_cache, s)
    f_high = shifted(f_cache, -s)
    for k in range(s, 2 * s):
        blk = combined_block(
            [(corr_sq, corr_cache, +1), (f_high, inv_cache, -1)], k, ledger
        )
        corr.append(blk)
        corr_cache.ensure(k, ledger)
    if on_phase:
        on_phase("fused-square")

    # Phase 4: third-order update; upper output blocks are the product of the
    # correction with the partial inverse, no new forward transforms.
    out = list(inv_low.blocks)
    for k in range(s, 3 * s):
        out.append(product_block(corr_cache, inv_cache, k - s, ledger))
    if on_phase:
        on_phase("update")

    if capture is not None:
        capture["correction_blocks"] = [b.copy() for b in corr.blocks]
    return np.concatenate(out)


def recip(
    f,
    n: int,
    ledger: TransformLedger,
    *,
    blocks: int | None = None,
    block_size: int | None = None,
    base_ledger: TransformLedger | None = None,
) -> np.ndarray:
    """Reciprocal of a series with constant term 1, to n coefficients.

    Base-case transforms are counted in base_ledger (a private one if not
    given), keeping the main ledger's 13s - 3 count exact.
    """
    f = as_series(f)
    require_unit_constant(f)
    plan = choose_params(n, blocks)
    m = block_size if block_size is not None else plan.block_size
    s = plan.blocks
    if 3 * s * m < n:
        raise ValueError(f"3*{s} blocks of {m} cover only {3 * s * m} < {n} coefficients")
    padded = np.zeros(3 * s * m, dtype=np.complex128)
    padded[: min(n, len(f))] = f[:n]
    fs = decompose(padded, m, 3 * s)
    base = base_ledger if base_ledger is not None else TransformLedger()
    g0 = baselines.recip_schonhage(fs.blocks[0], m, base)
    out = recip_block_iter(fs, g0, s, ledger)
    return out[:n]


def third_order_step_identity_check(g, f, n: int) -> float:
    """Residual of the schoolbook third-order update (test support, no FFT).

    Requires f*g = 1 to order n; forms g' = g*(1 - d*x^n + d^2*x^{2n}) with d
    read off from f*g and returns max |f*g' - 1| over coefficients below 3n.
    """
    f = as_series(f)
    g = as_series(g)
    if n < 1:
        raise ValueError("precision must be >= 1")
    prod = np.zeros(3 * n, dtype=np.complex128)
    full = mul_schoolbook(f, g)
    prod[: min(len(full), 3 * n)] = full[: 3 * n]
    head = prod[:n].copy()
    head[0] -= 1.0
    if np.abs(head).max() > 1e-6:
        raise ValueError("f*g is not 1 to order n")
    defect = prod[n:]
    corr = np.zeros(3 * n, dtype=np.complex128)
    corr[0] = 1.0
    corr[n:] -= defect
    corr[2 * n :] += mul_schoolbook(defect, defect)[:n]
    gp = np.zeros(3 * n, dtype=np.complex128)
    full = mul_schoolbook(g, corr)
    gp[: min(len(full), 3 * n)] = full[: 3 * n]
    resid = np.zeros(3 * n, dtype=np.complex128)
    full = mul_schoolbook(f, gp)
    resid[: min(len(full), 3 * n)] = full[: 3 * n]
    resid[0] -= 1.0
    return float(np.abs(resid).max())
