"""Calibrated-noise release mechanisms.

``laplace_release`` perturbs an aggregate with Laplace(0, sensitivity/epsilon)
noise drawn by inverse-CDF from a seeded generator.  ``randomized_response``
is the per-record (local) mechanism for one bit: report the truth with
probability e^eps / (1 + e^eps).  Both are pure functions of (inputs, seed).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from ..errors import InvalidEpsilon


@dataclass(frozen=True)
class DpParams:
    epsilon: float
    sensitivity: float
    seed: int

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise InvalidEpsilon(f"epsilon must be > 0, got {self.epsilon}")
        if self.sensitivity < 0:
            raise ValueError("sensitivity must be >= 0")

    @property
    def scale(self) -> float:
        return self.sensitivity / self.epsilon


def _laplace_draw(rng: random.Random, scale: float) -> float:
    # Inverse CDF: u uniform on (-1/2, 1/2), noise = b * sign(u) * ln(1 - 2|u|).
    r = rng.random()
    while r == 0.0:
        r = rng.random()
    u = r - 0.5
    sign = 1.0 if u >= 0 else -1.0
    return scale * sign * math.log1p(-2.0 * abs(u))


def laplace_noise(params: DpParams, n: int) -> list[float]:
    """n Laplace(0, scale) draws from one generator seeded with params.seed."""
    rng = random.Random(params.seed)
    scale = params.scale
    return [_laplace_draw(rng, scale) for _ in range(n)]


def laplace_release(value: float, params: DpParams) -> float:
    """value + Laplace(0, sensitivity/epsilon); exact when sensitivity is 0."""
    if params.sensitivity == 0:
        return float(value)
    return float(value) + laplace_noise(params, 1)[0]


def report_probability(epsilon: float) -> float:
    """Probability that randomized response reports the true bit."""
    if epsilon < 0:
        raise InvalidEpsilon(f"epsilon must be >= 0, got {epsilon}")
    return math.exp(epsilon) / (1.0 + math.exp(epsilon))


def randomized_response(bit: int, epsilon: float, seed: int) -> int:
    """Report ``bit`` with probability e^eps/(1+e^eps), its flip otherwise."""
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    p = report_probability(epsilon)
    rng = random.Random(seed)
    return bit if rng.random() < p else 1 - bit


def randomized_response_bits(bits: list[int], epsilon: float, seed: int) -> list[int]:
    """Apply randomized response per record, drawing from one seeded stream."""
    p = report_probability(epsilon)
    rng = random.Random(seed)
    out = []
    for bit in bits:
        if bit not in (0, 1):
            raise ValueError(f"bit must be 0 or 1, got {bit!r}")
        out.append(bit if rng.random() < p else 1 - bit)
    return out


def debiased_proportion(reported: list[int], epsilon: float) -> float:
    """Unbiased estimate of the true 1-proportion from reported bits.

    Inverts the response channel: (f_hat - (1 - p)) / (2p - 1).  Undefined
    at epsilon 0, where the channel carries no information.
    """
    if epsilon <= 0:
        raise InvalidEpsilon("debiasing requires epsilon > 0")
    if not reported:
        raise ValueError("no reported bits")
    p = report_probability(epsilon)
    f_hat = sum(reported) / len(reported)
    return (f_hat - (1.0 - p)) / (2.0 * p - 1.0)
