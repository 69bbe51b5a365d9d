"""Complex FFT engine with transform counting.

Forward transforms evaluate a polynomial at the n-th roots of unity using the
positive orientation, ``result[j] = p(e^{+2*pi*i*j/n})``; the inverse applies
the conjugate transform scaled by 1/n.  Supported lengths are the 3-smooth
integers 2^a * 3^b, handled by a mixed radix-4/2/3 decimation implemented with
vectorized numpy butterflies.  Twiddle tables are built once per length and
are read-only afterwards.

Every forward/inverse call increments a caller-supplied TransformLedger, the
instrument that makes transform-count assertions exact integers.  A ledger
must not be shared between concurrently running operations; use one per task
and merge afterwards.
"""

from __future__ import annotations

import math
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

# Type aliases: a Poly is a dense complex128 coefficient vector, a Spectrum is
# the vector of its values at the roots of unity.
Poly = np.ndarray
Spectrum = np.ndarray


class UnsupportedLengthError(ValueError):
    """Requested transform length is not of the form 2^a * 3^b."""


@dataclass
class TransformLedger:
    """Counts of forward and inverse transforms, keyed by length."""

    forward: Counter = field(default_factory=Counter)
    inverse: Counter = field(default_factory=Counter)

    def record_forward(self, n: int) -> None:
        self.forward[n] += 1

    def record_inverse(self, n: int) -> None:
        self.inverse[n] += 1

    def total(self) -> int:
        return sum(self.forward.values()) + sum(self.inverse.values())

    def snapshot(self) -> tuple[Counter, Counter]:
        return Counter(self.forward), Counter(self.inverse)

    def delta(self, snap: tuple[Counter, Counter]) -> tuple[Counter, Counter]:
        """Counts added since ``snap`` (counts never decrease)."""
        return self.forward - snap[0], self.inverse - snap[1]

    def merge(self, other: "TransformLedger") -> None:
        self.forward.update(other.forward)
        self.inverse.update(other.inverse)

    def weighted_cost(self) -> float:
        """Sum of length * log2(length) over all recorded transforms."""
        cost = 0.0
        for table in (self.forward, self.inverse):
            for n, c in table.items():
                if n > 1:
                    cost += c * n * math.log2(n)
        return cost


def is_supported(n: int) -> bool:
    """True if n >= 1 and n has no prime factor other than 2 and 3."""
    if n < 1:
        return False
    while n % 2 == 0:
        n //= 2
    while n % 3 == 0:
        n //= 3
    return n == 1


def next_supported(n: int) -> int:
    """Smallest supported (3-smooth) length >= n."""
    if n < 1:
        raise ValueError("length must be >= 1")
    best: int | None = None
    p3 = 1
    while True:
        if p3 >= n:
            cand = p3
        else:
            q = -(-n // p3)
            cand = p3 << (q - 1).bit_length()
        if best is None or cand < best:
            best = cand
        if p3 >= best:
            return best
        p3 *= 3


# Primitive cube root of unity, positive orientation.
_W3 = complex(-0.5, math.sqrt(3.0) / 2.0)

# length -> (radix, twiddle table of shape (radix, length // radix)); entries
# are immutable once created.
_PLANS: dict[int, tuple[int, np.ndarray]] = {}

# Test hook (see twiddle_fault): flips one twiddle sign in every composite
# stage, corrupting all transforms of length >= 6.
_FAULT = False


@contextmanager
def twiddle_fault():
    """Deliberately corrupt the FFT while the context is active (test hook)."""
    global _FAULT
    _FAULT = True
    try:
        yield
    finally:
        _FAULT = False


def _plan(n: int) -> tuple[int, np.ndarray]:
    plan = _PLANS.get(n)
    if plan is None:
        if n % 4 == 0:
            radix = 4
        elif n % 2 == 0:
            radix = 2
        else:
            radix = 3
        w = np.exp((2j * np.pi / n) * np.outer(np.arange(radix), np.arange(n // radix)))
        plan = (radix, w)
        _PLANS[n] = plan
    return plan


def _dft(x: np.ndarray) -> np.ndarray:
    """Positive-orientation DFT along the last axis; x has shape (batch, n)."""
    n = x.shape[-1]
    if n == 1:
        return x.copy()
    if n == 2:
        a, b = x[:, 0], x[:, 1]
        return np.stack([a + b, a - b], axis=-1)
    if n == 3:
        a, b, c = x[:, 0], x[:, 1], x[:, 2]
        w, wc = _W3, _W3.conjugate()
        return np.stack([a + b + c, a + w * b + wc * c, a + wc * b + w * c], axis=-1)
    if n == 4:
        s, d = x[:, 0] + x[:, 2], x[:, 0] - x[:, 2]
        t, u = x[:, 1] + x[:, 3], x[:, 1] - x[:, 3]
        return np.stack([s + t, d + 1j * u, s - t, d - 1j * u], axis=-1)
    radix, w = _plan(n)
    if _FAULT:
        w = w.copy()
        w[1, 1] = -w[1, 1]
    m = n // radix
    b = x.shape[0]
    sub = _dft(x.reshape(b, m, radix).transpose(0, 2, 1).reshape(b * radix, m))
    z = sub.reshape(b, radix, m) * w
    if radix == 2:
        return np.concatenate([z[:, 0] + z[:, 1], z[:, 0] - z[:, 1]], axis=-1)
    if radix == 3:
        z0, z1, z2 = z[:, 0], z[:, 1], z[:, 2]
        w3, w3c = _W3, _W3.conjugate()
        return np.concatenate(
            [z0 + z1 + z2, z0 + w3 * z1 + w3c * z2, z0 + w3c * z1 + w3 * z2], axis=-1
        )
    z0, z1, z2, z3 = z[:, 0], z[:, 1], z[:, 2], z[:, 3]
    s, d = z0 + z2, z0 - z2
    t, u = z1 + z3, z1 - z3
    return np.concatenate([s + t, d + 1j * u, s - t, d - 1j * u], axis=-1)


def as_series(f) -> Poly:
    """Coerce to a 1-D complex128 coefficient vector."""
    f = np.asarray(f, dtype=np.complex128)
    if f.ndim != 1:
        raise ValueError("coefficient sequence must be one-dimensional")
    return f


def require_unit_constant(f: Poly) -> None:
    """Reject series whose constant term is not 1."""
    if len(f) == 0 or abs(f[0] - 1.0) > 1e-9:
        raise ValueError("series must have constant term 1")


def forward(p, n: int, ledger: TransformLedger) -> Spectrum:
    """Evaluate p at the n-th roots of unity; counts one forward transform."""
    if not is_supported(n):
        raise UnsupportedLengthError(f"transform length {n} is not 2^a * 3^b")
    p = as_series(p)
    if len(p) > n:
        raise ValueError(f"polynomial length {len(p)} exceeds transform length {n}")
    if len(p) and not np.isfinite(p).all():
        raise ValueError("non-finite coefficient in input")
    x = np.zeros(n, dtype=np.complex128)
    x[: len(p)] = p
    out = _dft(x.reshape(1, n))[0]
    ledger.record_forward(n)
    return out


def inverse(s, ledger: TransformLedger) -> Poly:
    """Recover coefficients from a spectrum; counts one inverse transform."""
    s = as_series(s)
    n = len(s)
    if not is_supported(n):
        raise UnsupportedLengthError(f"transform length {n} is not 2^a * 3^b")
    out = np.conj(_dft(np.conj(s).reshape(1, n))[0]) / n
    ledger.record_inverse(n)
    return out


def pointwise_mul(a: Spectrum, b: Spectrum) -> Spectrum:
    """Componentwise product of two equal-length spectra; no ledger change."""
    if len(a) != len(b):
        raise ValueError(f"spectrum length mismatch: {len(a)} vs {len(b)}")
    return a * b


def cyclic_convolution(g1, g2, n: int, ledger: TransformLedger) -> Poly:
    """g1 * g2 mod x^n - 1, costing exactly 2 forward + 1 inverse transforms."""
    s1 = forward(g1, n, ledger)
    s2 = forward(g2, n, ledger)
    return inverse(pointwise_mul(s1, s2), ledger)


def middle_product(g, h, n: int, ledger: TransformLedger) -> Poly:
    """Coefficients n..2n-1 of g*h, for deg g < 2n and deg h < n.

    Computed as the second half of a length-2n cyclic convolution (the
    wrapped-around part of the product never lands in that window), costing
    2 forward + 1 inverse transforms of length 2n.
    """
    g = as_series(g)
    h = as_series(h)
    if len(g) > 2 * n:
        raise ValueError(f"first factor length {len(g)} exceeds 2n = {2 * n}")
    if len(h) > n:
        raise ValueError(f"second factor length {len(h)} exceeds n = {n}")
    s1 = forward(g, 2 * n, ledger)
    s2 = forward(h, 2 * n, ledger)
    return inverse(pointwise_mul(s1, s2), ledger)[n:]
