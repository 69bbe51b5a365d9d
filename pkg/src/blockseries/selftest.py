"""Self-contained invariant suites behind the `selftest` CLI command.

Each suite returns (passed, detail); the detail strings carry the maximum
observed errors or count deltas so a failing run points at the broken layer.
"""

from __future__ import annotations

import numpy as np

from . import baselines, oracle
from .bench import run_case
from .blockwise import TransformCache, combined_block, decompose, product_block
from .corpus import conditioned_series, random_monic, random_series
from .recip import recip, recip_block_iter, third_order_step_identity_check
from .sqrt import sqrt, sqrt_block_iter, sqrt_rem
from .transform import (
    TransformLedger,
    cyclic_convolution,
    forward,
    inverse,
    middle_product,
    next_supported,
)


def _warm_caches(f, g, m, nb, ledger):
    fc = TransformCache(decompose(f, m, nb))
    gc = TransformCache(decompose(g, m, nb))
    for i in range(nb):
        fc.ensure(i, ledger)
        gc.ensure(i, ledger)
    return fc, gc


def suite_roundtrip(full: bool):
    sizes = [2, 3, 6, 8, 12, 27, 96, 108, 729, 1536]
    if full:
        sizes += [4096, 6561, 9216, 16384]
    rng = np.random.default_rng(0)
    worst = 0.0
    led = TransformLedger()
    for n in sizes:
        p = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        worst = max(worst, float(np.abs(inverse(forward(p, n, led), led) - p).max()))
    return worst <= 1e-10, f"max roundtrip error {worst:.3e} (tol 1e-10)"


def suite_transform_identities(full: bool):
    led = TransformLedger()
    errs = []
    errs.append(np.abs(forward([1], 2, led) - [1, 1]).max())
    errs.append(np.abs(forward([0, 1], 2, led) - [1, -1]).max())
    errs.append(np.abs(forward([1, 2, 3, 4], 4, led) - [10, -2 - 2j, -2, -2 + 2j]).max())
    for m in [1, 2, 3, 6, 9, 16, 24]:
        x = np.zeros(m + 1)
        x[m] = 1.0
        alt = np.where(np.arange(2 * m) % 2, -1.0, 1.0)
        errs.append(np.abs(forward(x, 2 * m, led) - alt).max())
    ok_sizes = [next_supported(k) for k in (1, 5, 8, 25, 100)] == [1, 6, 8, 27, 108]
    worst = float(max(errs))
    return worst <= 1e-12 and ok_sizes, f"max identity error {worst:.3e}, sizes ok {ok_sizes}"


def suite_convolution(full: bool):
    rng = np.random.default_rng(1)
    worst = 0.0
    led = TransformLedger()
    for n in [2, 6, 16, 54, 96] + ([1152] if full else []):
        g1 = rng.uniform(-1, 1, n)
        g2 = rng.uniform(-1, 1, n)
        got = cyclic_convolution(g1, g2, n, led)
        fullp = oracle.mul_schoolbook(g1, g2)
        want = fullp[:n].copy()
        want[: n - 1] += fullp[n:]
        tol = 1e-9 * n * max(1.0, np.abs(fullp).max())
        worst = max(worst, float(np.abs(got - want).max() / tol))
    return worst <= 1.0, f"worst error/tolerance ratio {worst:.3e}"


def suite_middle_product(full: bool):
    rng = np.random.default_rng(2)
    worst = 0.0
    led = TransformLedger()
    for n in [1, 2, 8, 27, 48] + ([2048] if full else []):
        g = rng.uniform(-1, 1, 2 * n)
        h = rng.uniform(-1, 1, n)
        got = middle_product(g, h, n, led)
        want = oracle.middle_product_naive(g, h, n)
        tol = 1e-9 * n * max(1.0, np.abs(want).max())
        worst = max(worst, float(np.abs(got - want).max() / max(tol, 1e-300)))
    return worst <= 1.0, f"worst error/tolerance ratio {worst:.3e}"


def suite_ledger_exactness(full: bool):
    led = TransformLedger()
    cyclic_convolution([1, 1], [1, 1], 2, led)
    ok = dict(led.forward) == {2: 2} and dict(led.inverse) == {2: 1}
    led = TransformLedger()
    middle_product([1, 2, 3, 4], [5, 6], 2, led)
    ok = ok and dict(led.forward) == {4: 2} and dict(led.inverse) == {4: 1}
    return ok, "cyclic = 2F+1I at n, middle = 2F+1I at 2n" if ok else "count mismatch"


def suite_block_products(full: bool):
    rng = np.random.default_rng(3)
    worst, cases = 0.0, 0
    for m in [1, 2, 4, 8, 16]:
        for nb in [1, 3, 8]:
            led = TransformLedger()
            f = rng.uniform(-1, 1, m * nb)
            g = rng.uniform(-1, 1, m * nb)
            fc, gc = _warm_caches(f, g, m, nb, led)
            fullp = oracle.mul_schoolbook(f, g)
            snap = led.snapshot()
            for k in range(nb):
                blk = product_block(fc, gc, k, led)
                want = np.zeros(m, dtype=np.complex128)
                seg = fullp[k * m : (k + 1) * m]
                want[: len(seg)] = seg
                tol = 1e-9 * m * (k + 1)
                worst = max(worst, float(np.abs(blk - want).max() / tol))
                cases += 1
            dfwd, dinv = led.delta(snap)
            if sum(dfwd.values()) != 0 or sum(dinv.values()) != nb:
                return False, f"economy broken at m={m} nb={nb}: {dict(dfwd)}F {dict(dinv)}I"
            # combined: block of f*f - f*g with one inverse
            snap = led.snapshot()
            k = nb - 1
            blk = combined_block([(fc, fc, +1), (fc, gc, -1)], k, led)
            want = np.zeros(m, dtype=np.complex128)
            diff = oracle.mul_schoolbook(f, f) - fullp
            seg = diff[k * m : (k + 1) * m]
            want[: len(seg)] = seg
            worst = max(worst, float(np.abs(blk - want).max() / (1e-9 * m * (k + 1))))
            dfwd, dinv = led.delta(snap)
            if sum(dfwd.values()) != 0 or sum(dinv.values()) != 1:
                return False, "combined_block used more than one inverse"
            cases += 1
    return worst <= 1.0, f"{cases} cases, worst error/tolerance ratio {worst:.3e}"


def suite_sqrt_counts(full: bool):
    m = 32
    for r in range(1, 17):
        f = random_series(40 + r, r * m)
        fs = decompose(f, m, r)
        g0 = oracle.sqrt_recurrence(fs.blocks[0], m)
        g0_inv = oracle.recip_recurrence(g0, m)
        led = TransformLedger()
        sqrt_block_iter(fs, g0, g0_inv, r, led)
        if dict(led.forward) != ({2 * m: 2 * (r - 1) + 1}) or (
            dict(led.inverse) != ({2 * m: 2 * (r - 1)} if r > 1 else {})
        ):
            return False, f"r={r}: got {dict(led.forward)}F {dict(led.inverse)}I"
    return True, "4r-3 transforms at 2m, split 2(r-1)+1 / 2(r-1), r = 1..16"


def suite_recip_counts(full: bool):
    m = 16
    for s in range(1, 9):
        f = random_series(60 + s, 3 * s * m)
        fs = decompose(f, m, 3 * s)
        g0 = oracle.recip_recurrence(fs.blocks[0], m)
        led = TransformLedger()
        recip_block_iter(fs, g0, s, led)
        if dict(led.forward) != {2 * m: 7 * s - 1} or dict(led.inverse) != {2 * m: 6 * s - 2}:
            return False, f"s={s}: got {dict(led.forward)}F {dict(led.inverse)}I"
    return True, "13s-3 transforms at 2m, split 7s-1 / 6s-2, s = 1..8"


def suite_sqrt_correctness(full: bool):
    sizes = [16, 100, 512] + ([1024, 4096] if full else [])
    worst = 0.0
    for n in sizes:
        for seed in range(3):
            f = conditioned_series(seed, n)
            g = sqrt(f, n, TransformLedger())
            err = float(np.abs(g - oracle.sqrt_recurrence(f, n)).max())
            resid = oracle.mul_schoolbook(g, g)[:n] - f
            err = max(err, float(np.abs(resid).max()))
            worst = max(worst, err / (1e-8 * n))
    return worst <= 1.0, f"worst error/tolerance ratio {worst:.3e} over n={sizes}"


def suite_recip_correctness(full: bool):
    sizes = [9, 96, 768] + ([3072] if full else [])
    worst = 0.0
    for n in sizes:
        for seed in range(3):
            f = conditioned_series(seed, n)
            g = recip(f, n, TransformLedger())
            err = float(np.abs(g - oracle.recip_recurrence(f, n)).max())
            resid = oracle.mul_schoolbook(f, g)[:n]
            resid[0] -= 1.0
            err = max(err, float(np.abs(resid).max()))
            worst = max(worst, err / (1e-8 * n))
    return worst <= 1.0, f"worst error/tolerance ratio {worst:.3e} over n={sizes}"


def suite_sqrt_step_identity(full: bool):
    # In each iteration, twice the leading root block times the new block
    # must equal the input block minus the partial square's overshoot.
    m, r = 8, 5
    f = random_series(99, r * m)
    fs = decompose(f, m, r)
    g0 = oracle.sqrt_recurrence(fs.blocks[0], m)
    g0_inv = oracle.recip_recurrence(g0, m)
    g = sqrt_block_iter(fs, g0, g0_inv, r, TransformLedger())
    worst = 0.0
    for k in range(1, r):
        prefix = g[: k * m]
        sq = oracle.mul_schoolbook(prefix, prefix)
        excess = np.zeros(m, dtype=np.complex128)
        seg = sq[k * m : (k + 1) * m]
        excess[: len(seg)] = seg
        lhs = 2.0 * oracle.mul_schoolbook(g0, g[k * m : (k + 1) * m])[:m]
        rhs = fs.blocks[k] - excess
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst <= 1e-10, f"max identity error {worst:.3e}"


def suite_recip_structure(full: bool):
    m, s = 4, 3
    f = random_series(123, 3 * s * m)
    fs = decompose(f, m, 3 * s)
    g0 = oracle.recip_recurrence(fs.blocks[0], m)
    led = TransformLedger()
    phases: list[tuple[str, int, int]] = []

    def on_phase(name):
        fwd, inv = led.snapshot()
        phases.append((name, sum(fwd.values()), sum(inv.values())))

    cap: dict = {}
    g = recip_block_iter(fs, g0, s, led, on_phase=on_phase, capture=cap)
    # fused pass economy: phase 3 spends exactly s inverse transforms
    marks = {name: (f_, i_) for name, f_, i_ in phases}
    d_inv = marks["fused-square"][1] - marks["low-defect"][1]
    d_fwd = marks["fused-square"][0] - marks["low-defect"][0]
    if (d_fwd, d_inv) != (s, s):
        return False, f"fused pass used {d_fwd}F {d_inv}I, want {s}F {s}I"
    # assembled correction blocks match -defect + defect^2 * X^s from schoolbook
    inv_low = g[: s * m]
    prod = oracle.mul_schoolbook(np.concatenate(fs.blocks), inv_low)[: 3 * s * m]
    defect = prod[s * m :].copy()  # f*g = 1 + defect*X^s
    want = -defect[: 2 * s * m]
    dsq = oracle.mul_schoolbook(defect[: s * m], defect[: s * m])
    want[s * m :] += dsq[: s * m]
    got = np.concatenate(cap["correction_blocks"])
    err = float(np.abs(got - want).max())
    # division loop identity: f0 * g_k = -(partial product overshoot)
    worst_div = 0.0
    for k in range(1, s):
        partial = oracle.mul_schoolbook(
            np.concatenate(fs.blocks[: k + 1]), inv_low[: k * m]
        )
        resid = np.zeros(m, dtype=np.complex128)
        seg = partial[k * m : (k + 1) * m]
        resid[: len(seg)] = seg
        lhs = oracle.mul_schoolbook(fs.blocks[0], g[k * m : (k + 1) * m])[:m]
        worst_div = max(worst_div, float(np.abs(lhs + resid).max()))
    ok = err <= 1e-10 and worst_div <= 1e-10
    return ok, f"correction error {err:.3e}, division identity error {worst_div:.3e}"


def suite_third_order_identity(full: bool):
    r1 = third_order_step_identity_check([1, 1], [1, -1], 2)
    f = random_series(7, 24)
    g = oracle.recip_recurrence(f, 8)
    r2 = third_order_step_identity_check(g, f, 8)
    worst = max(r1, r2)
    return worst <= 1e-10, f"max residual {worst:.3e}"


def suite_sqrt_rem(full: bool):
    worst = 0.0
    for seed in range(5 if not full else 10):
        f = random_monic(seed, 128)
        led = TransformLedger()
        cap: dict = {}
        g, rem = sqrt_rem(f, led, capture=cap)
        r = cap["blocks"]
        it_f, it_i = cap["iter_counts"]
        extra_f = sum((led.forward - it_f).values())
        extra_i = sum((led.inverse - it_i).values())
        if (extra_f, extra_i) != (1, r):
            return False, f"extra cost {extra_f}F {extra_i}I, want 1F {r}I"
        resid = f - oracle.mul_schoolbook(g, g)
        resid[:64] -= rem
        worst = max(worst, float(np.abs(resid).max()), abs(g[-1] - 1.0))
    return worst <= 1e-7, f"max residual {worst:.3e} (tol 1e-7)"


def suite_baselines(full: bool):
    n = 512 if full else 256
    f = conditioned_series(11, n)
    led = TransformLedger()
    e1 = float(np.abs(baselines.recip_schonhage(f, n, led) - oracle.recip_recurrence(f, n)).max())
    g, ginv = baselines.sqrt_newton_coupled(f, n, TransformLedger())
    e2 = float(np.abs(g - oracle.sqrt_recurrence(f, n)).max())
    unit = oracle.mul_schoolbook(g, ginv)[:n]
    unit[0] -= 1.0
    e3 = float(np.abs(unit).max())
    worst = max(e1, e2, e3)
    return worst <= 1e-8 * n, f"max baseline error {worst:.3e}"


def suite_crossover(full: bool):
    m = 256
    svals = range(4, 9) if full else [4, 6]
    rows = []
    for s in svals:
        n = 3 * s * m
        rec = run_case("recip", n, blocks=s, seed=1)
        sch = run_case("recip_schonhage", n, seed=1)
        total = rec.weighted_cost + rec.base_cost
        rows.append((s, total, sch.weighted_cost))
        if total >= sch.weighted_cost:
            return False, f"s={s}: blockwise {total:.0f} >= doubling {sch.weighted_cost:.0f}"
    detail = "; ".join(f"s={s}: {a:.0f} < {b:.0f}" for s, a, b in rows)
    return True, detail


def suite_determinism(full: bool):
    f = random_series(5, 300)
    a = sqrt(f, 300, TransformLedger())
    b = sqrt(f, 300, TransformLedger())
    c = recip(f, 300, TransformLedger())
    d = recip(f, 300, TransformLedger())
    ok = np.array_equal(a, b) and np.array_equal(c, d)
    return ok, "bit-identical repeated runs" if ok else "outputs differ between runs"


SUITES = [
    ("transform-roundtrip", suite_roundtrip),
    ("transform-identities", suite_transform_identities),
    ("cyclic-convolution", suite_convolution),
    ("middle-product", suite_middle_product),
    ("ledger-exactness", suite_ledger_exactness),
    ("block-products", suite_block_products),
    ("sqrt-counts", suite_sqrt_counts),
    ("recip-counts", suite_recip_counts),
    ("sqrt-correctness", suite_sqrt_correctness),
    ("recip-correctness", suite_recip_correctness),
    ("sqrt-step-identity", suite_sqrt_step_identity),
    ("recip-structure", suite_recip_structure),
    ("third-order-identity", suite_third_order_identity),
    ("sqrt-remainder", suite_sqrt_rem),
    ("baselines", suite_baselines),
    ("cost-crossover", suite_crossover),
    ("determinism", suite_determinism),
]


def run_selftest(full: bool, echo=print) -> bool:
    """Run every suite, print one line each, return overall success."""
    all_ok = True
    for name, fn in SUITES:
        try:
            ok, detail = fn(full)
        except Exception as exc:  # a crashed suite is a failed suite
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok &= ok
        echo(f"{'PASS' if ok else 'FAIL'}  {name:<22s} {detail}")
    echo(f"selftest {'passed' if all_ok else 'FAILED'} ({'full' if full else 'quick'} mode)")
    return all_ok
