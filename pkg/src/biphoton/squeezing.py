"""Multimode squeezed-vacuum photon statistics with beamsplitter loss.

Each Schmidt mode is an independent single-mode squeezer with parameter
xi_mode = xi * sqrt(r); loss is an amplitude transmission eta applied as a
beamsplitter before an ideal detector.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lgamma, log, tanh

import numpy as np

from .errors import InvalidArgumentError, TruncationError

DEFAULT_MAX_N = 20
TAIL_TOL = 1e-10


@dataclass(frozen=True)
class SqueezingSpec:
    """Global squeezing strength, Schmidt weights, and per-mode transmissions."""

    global_xi: float
    schmidt_coefficients: np.ndarray
    transmissions: np.ndarray = None

    def __post_init__(self):
        if self.global_xi < 0:
            raise InvalidArgumentError(f"global_xi must be >= 0, got {self.global_xi}")
        r = np.asarray(self.schmidt_coefficients, dtype=float)
        object.__setattr__(self, "schmidt_coefficients", r)
        if np.any(r < 0):
            raise InvalidArgumentError("Schmidt coefficients must be nonnegative")
        if self.transmissions is None:
            eta = np.ones_like(r)
        else:
            eta = np.broadcast_to(np.asarray(self.transmissions, dtype=float), r.shape).copy()
        if np.any((eta < 0) | (eta > 1)):
            raise InvalidArgumentError("transmissions must lie in [0, 1]")
        object.__setattr__(self, "transmissions", eta)

    @property
    def mode_xi(self) -> np.ndarray:
        return self.global_xi * np.sqrt(self.schmidt_coefficients)


def mean_photon_number(spec: SqueezingSpec) -> float:
    """Sum over modes of eta^2 * sinh(xi_mode)^2."""
    return float(np.sum(spec.transmissions**2 * np.sinh(spec.mode_xi) ** 2))


def trigger_probability(spec: SqueezingSpec) -> float:
    """Probability that a threshold detector clicks at least once.

    Per-mode no-click probabilities multiply across independent modes:
    p = 1 - prod sech(xi) / sqrt(1 - (1 - eta^2)^2 tanh(xi)^2).
    """
    xi = spec.mode_xi
    eta = spec.transmissions
    no_click = 1.0 / (np.cosh(xi) * np.sqrt(1.0 - (1.0 - eta**2) ** 2 * np.tanh(xi) ** 2))
    return float(1.0 - np.prod(no_click))


def lossy_density_diagonal(
    xi_mode: float,
    eta: float,
    max_n: int = DEFAULT_MAX_N,
    tail_tol: float = TAIL_TOL,
    auto_extend: bool = True,
) -> np.ndarray:
    """Photon-number probabilities of one lossy squeezed mode.

    Returns p[m] for m = 0 .. 2*max_n, from the double sum over squeezed
    pair number n and photons lost k (surviving m = 2n - k). The series is
    extended automatically until the missing tail is below ``tail_tol``,
    unless ``auto_extend`` is false, in which case a TruncationError is
    raised with a workable max_n.
    """
    if max_n < 0:
        raise InvalidArgumentError(f"max_n must be >= 0, got {max_n}")
    if not 0.0 <= eta <= 1.0:
        raise InvalidArgumentError(f"eta must be in [0, 1], got {eta}")
    if xi_mode < 0:
        raise InvalidArgumentError(f"xi_mode must be >= 0, got {xi_mode}")
    n_top = max_n
    while True:
        probs = _diagonal_upto(xi_mode, eta, n_top)
        tail = 1.0 - probs.sum()
        if tail < tail_tol:
            break
        if not auto_extend:
            needed = n_top
            while True:
                needed *= 2
                if needed > 100000:
                    raise TruncationError("series does not converge within 1e5 terms")
                if 1.0 - _diagonal_upto(xi_mode, eta, needed).sum() < tail_tol:
                    break
            raise TruncationError(
                f"truncation tail {tail:.3e} exceeds {tail_tol:.1e}; use max_n >= {needed}"
            )
        n_top *= 2
        if n_top > 100000:
            raise TruncationError("series does not converge within 1e5 terms")
    return probs


def _diagonal_upto(xi_mode: float, eta: float, n_top: int) -> np.ndarray:
    """Evaluate the double sum with pair number n <= n_top, in log space."""
    probs = np.zeros(2 * n_top + 1)
    if xi_mode == 0.0:
        probs[0] = 1.0
        return probs
    t = tanh(xi_mode)
    log_cosh = log(np.cosh(xi_mode))
    log_t2 = 2.0 * log(t)
    log_eta2 = 2.0 * log(eta) if eta > 0.0 else -np.inf
    log_loss = log(1.0 - eta**2) if eta < 1.0 else -np.inf
    for n in range(n_top + 1):
        # log of (tanh^2n) * ((2n)! / (2^n n!))^2 / cosh
        base = n * log_t2 + 2.0 * (lgamma(2 * n + 1) - n * log(2.0) - lgamma(n + 1)) - log_cosh
        for k in range(2 * n + 1):
            m = 2 * n - k
            if m > 0 and eta == 0.0:
                continue
            if k > 0 and eta == 1.0:
                continue
            term = base - lgamma(k + 1) - lgamma(m + 1)
            if m > 0:
                term += m * log_eta2
            if k > 0:
                term += k * log_loss
            probs[m] += np.exp(term)
    return probs
