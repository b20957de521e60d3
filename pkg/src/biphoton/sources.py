"""Joint spectral amplitude builders for waveguide and microring pair sources.

Both builders discretize

    F(ws, wi) = [ring factors] * integral dw a(w) * b(ws + wi - w) * kernel(ws, wi, w)

on a square signal/idler grid, integrating the pump convolution with the
trapezoid rule on a dedicated 1D grid around the first pump line, then
normalize to unit L2 so that sum |F|^2 * ds * di = 1.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .dispersion import DispersionModel, phase_matching
from .errors import (
    DegenerateInputError,
    GridMismatchError,
    InvalidArgumentError,
    RingDetuningWarning,
    UnderResolvedError,
)
from .spectral import (
    FilterSpec,
    FrequencyGrid,
    PumpLine,
    pump_amplitude,
    sample_filter,
    wavelength_to_omega,
)

# quadrature defaults for the pump convolution integral
MIN_POINTS_PER_FWHM = 8
DEFAULT_POINTS_PER_FWHM = 16
DEFAULT_HALFWIDTH_FWHMS = 8.0


@dataclass(frozen=True)
class WaveguideSource:
    """A straight (spiral) waveguide source: length [m] plus dispersion."""

    length: float
    dispersion: DispersionModel

    def __post_init__(self):
        if self.length < 0:
            raise InvalidArgumentError(f"length must be >= 0, got {self.length}")


@dataclass(frozen=True)
class RingSource:
    """A microring source described by its resonance comb.

    The degenerate signal/idler resonance sits at ``center_wavelength``;
    the two pump resonances sit ``pump_comb_index`` FSRs below and above
    it. ``detuning_p1``/``detuning_p2`` shift the pump resonances (in
    metres) to model thermal tuning, e.g. the ring driven off resonance.
    """

    q_factor: float
    fsr: float
    center_wavelength: float
    pump_comb_index: int = 2
    detuning_p1: float = 0.0
    detuning_p2: float = 0.0

    def __post_init__(self):
        if self.q_factor <= 0:
            raise InvalidArgumentError(f"q_factor must be positive, got {self.q_factor}")
        if self.fsr <= 0:
            raise InvalidArgumentError(f"fsr must be positive, got {self.fsr}")

    def resonance(self, which: str) -> "RingResonance":
        if which == "signal" or which == "idler":
            lam = self.center_wavelength
        elif which == "pump1":
            lam = self.center_wavelength - self.pump_comb_index * self.fsr + self.detuning_p1
        elif which == "pump2":
            lam = self.center_wavelength + self.pump_comb_index * self.fsr + self.detuning_p2
        else:
            raise InvalidArgumentError(f"unknown resonance {which!r}")
        return RingResonance(center_wavelength=lam, fwhm=lam / self.q_factor)


@dataclass(frozen=True)
class RingResonance:
    """One comb line: center wavelength and FWHM (both metres), peak-normalized."""

    center_wavelength: float
    fwhm: float

    @property
    def center_omega(self) -> float:
        return float(wavelength_to_omega(self.center_wavelength))

    @property
    def fwhm_omega(self) -> float:
        # d(omega) = (2 pi c / lambda^2) d(lambda)
        return self.center_omega / self.center_wavelength * self.fwhm

    def amplitude(self, omega) -> np.ndarray:
        """Complex amplitude Lorentzian, |l| = 1 at resonance.

        l(w) = (G/2) / (G/2 + i (w - wr)) where G is the FWHM of |l|^2.
        The complex form keeps the physical resonance phase in the JSA.
        """
        half = self.fwhm_omega / 2.0
        return half / (half + 1j * (np.asarray(omega, dtype=float) - self.center_omega))


@dataclass(frozen=True)
class JointSpectralAmplitude:
    """Discretized complex F(ws, wi), signal-major, on a pair of grids."""

    grid_s: FrequencyGrid
    grid_i: FrequencyGrid
    values: np.ndarray
    norm_applied: bool = False
    survival: float = 1.0

    def __post_init__(self):
        if self.values.shape != (self.grid_s.n_points, self.grid_i.n_points):
            raise GridMismatchError(
                f"values shape {self.values.shape} does not match grids "
                f"({self.grid_s.n_points}, {self.grid_i.n_points})"
            )

    @property
    def measure(self) -> float:
        return self.grid_s.step * self.grid_i.step

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.measure)


def jsi(jsa: JointSpectralAmplitude) -> np.ndarray:
    """Joint spectral intensity |F|^2 (elementwise)."""
    return np.abs(jsa.values) ** 2


def _pump_quadrature(line: PumpLine, points_per_fwhm: int, halfwidth_fwhms: float):
    """Trapezoid nodes/weights on a window around one pump line."""
    if points_per_fwhm < MIN_POINTS_PER_FWHM:
        raise UnderResolvedError(
            f"pump quadrature needs >= {MIN_POINTS_PER_FWHM} points per FWHM, "
            f"got {points_per_fwhm}"
        )
    n = int(round(2 * halfwidth_fwhms * points_per_fwhm)) + 1
    w0 = line.center_omega
    half = halfwidth_fwhms * line.linewidth_fwhm
    nodes = w0 + np.linspace(-half, half, n)
    step = nodes[1] - nodes[0]
    weights = np.full(n, step)
    weights[0] = weights[-1] = step / 2.0
    return nodes, weights


def _normalize(
    grid_s: FrequencyGrid, grid_i: FrequencyGrid, values: np.ndarray, context: str
) -> JointSpectralAmplitude:
    norm2 = np.sum(np.abs(values) ** 2) * grid_s.step * grid_i.step
    if norm2 < 1e-300:
        raise DegenerateInputError(f"{context} produced an all-zero joint spectrum")
    return JointSpectralAmplitude(
        grid_s=grid_s, grid_i=grid_i, values=values / np.sqrt(norm2), norm_applied=True
    )


def build_waveguide_jsa(
    pump1: PumpLine,
    pump2: PumpLine,
    source: WaveguideSource,
    grid: FrequencyGrid,
    points_per_fwhm: int = DEFAULT_POINTS_PER_FWHM,
    halfwidth_fwhms: float = DEFAULT_HALFWIDTH_FWHMS,
) -> JointSpectralAmplitude:
    """Unit-normalized JSA of a waveguide source on a square grid.

    Integrates a(w) * b(ws + wi - w) * pm(ws, wi, w) over the first pump
    line's support; ``pm`` is the sinc phase-matching factor.
    """
    nodes, weights = _pump_quadrature(pump1, points_per_fwhm, halfwidth_fwhms)
    pts = grid.points()
    omega_sum = pts[:, None] + pts[None, :]
    acc = np.zeros((grid.n_points, grid.n_points), dtype=complex)
    a1 = pump_amplitude(pump1, nodes)
    for node, wgt, a in zip(nodes, weights, a1):
        b = pump_amplitude(pump2, omega_sum - node)
        pm = phase_matching(source.dispersion, source.length, pts[:, None], pts[None, :], node)
        acc += (wgt * a) * b * pm
    return _normalize(grid, grid, acc, "waveguide builder")


def build_ring_jsa(
    pump1: PumpLine,
    pump2: PumpLine,
    ring: RingSource,
    grid: FrequencyGrid,
    points_per_fwhm: int = DEFAULT_POINTS_PER_FWHM,
    halfwidth_fwhms: float = DEFAULT_HALFWIDTH_FWHMS,
    detune_warn_linewidths: float = 10.0,
) -> JointSpectralAmplitude:
    """Unit-normalized JSA of a microring source.

    Signal and idler pick up the degenerate-resonance Lorentzian; the pump
    convolution is weighted by the two pump-resonance Lorentzians.
    """
    res_s = ring.resonance("signal")
    res_p1 = ring.resonance("pump1")
    res_p2 = ring.resonance("pump2")
    # warn when a pump is parked far off its comb line (RingOff regime)
    for line, res, tag in ((pump1, res_p1, "pump1"), (pump2, res_p2, "pump2")):
        detune = abs(line.center_omega - res.center_omega)
        if detune > detune_warn_linewidths * res.fwhm_omega:
            warnings.warn(
                f"{tag} is {detune / res.fwhm_omega:.1f} linewidths from its ring "
                "resonance (RingOff regime)",
                RingDetuningWarning,
            )
    nodes, weights = _pump_quadrature(pump1, points_per_fwhm, halfwidth_fwhms)
    pts = grid.points()
    omega_sum = pts[:, None] + pts[None, :]
    acc = np.zeros((grid.n_points, grid.n_points), dtype=complex)
    a1 = pump_amplitude(pump1, nodes) * res_p1.amplitude(nodes)
    for node, wgt, a in zip(nodes, weights, a1):
        b = pump_amplitude(pump2, omega_sum - node) * res_p2.amplitude(omega_sum - node)
        acc += (wgt * a) * b
    acc *= res_s.amplitude(pts)[:, None] * res_s.amplitude(pts)[None, :]
    return _normalize(grid, grid, acc, "ring builder")


def apply_filter(
    jsa: JointSpectralAmplitude,
    filter_s: FilterSpec,
    filter_i: FilterSpec,
    min_survival: float = 1e-12,
) -> JointSpectralAmplitude:
    """Apply amplitude filters to both axes and re-normalize.

    The pre-renormalization L2 survival fraction is recorded on the result
    (a heralding-efficiency proxy).
    """
    if not jsa.norm_applied:
        raise InvalidArgumentError("apply_filter expects a normalized JSA")
    f_s = sample_filter(filter_s, jsa.grid_s)
    f_i = sample_filter(filter_i, jsa.grid_i)
    filtered = jsa.values * f_s[:, None] * f_i[None, :]
    survival = float(np.sum(np.abs(filtered) ** 2) * jsa.measure)
    if survival < min_survival:
        raise DegenerateInputError(
            f"filter annihilates the joint spectrum (survival {survival:.3e})"
        )
    out = _normalize(jsa.grid_s, jsa.grid_i, filtered, "filtering")
    return replace(out, survival=survival)
