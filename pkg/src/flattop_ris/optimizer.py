"""
Phase-only flat-top refinement.

The aperture modulus is fixed to the eigenmode taper |u1|; only the element
phases phi move, so every iterate w = |u1| * exp(j phi) is feasible. The
objective on the optimization grid is

    J = ripple_weight * [smax(P_pass) + smax(-P_pass)]
      + sidelobe_weight * smax([0, P_stop - mean(P_pass) - target])

with P in dB and smax the log-sum-exp smooth maximum at temperature tau.
It is minimized by gradient descent with Armijo backtracking; the largest
modulus element keeps its phase to fix the global-phase gauge.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable

import numpy as np
from numpy.typing import NDArray
from scipy.special import logsumexp, softmax

from flattop_ris.constants import USEFUL_RIPPLE_DB, InitPolicy, Provenance
from flattop_ris.exceptions import FlatTopValidationError
from flattop_ris.models.antenna import ElementPattern
from flattop_ris.models.optimization import (
    FlatTopSpec,
    GridSensitivityReport,
    OptimizationReport,
    OptimizerConfig,
)
from flattop_ris.models.pattern import AngularGrid
from flattop_ris.models.profile import PhaseProfile
from flattop_ris.pattern import flat_top_metrics, linear_pattern
from flattop_ris.propagation import element_gain

logger = logging.getLogger(__name__)

StepCallback = Callable[[int, NDArray[np.float64], float], None]

_DB_PER_NEPER = 10.0 / math.log(10.0)


class _Objective:
    """Smoothed flat-top objective and its analytic gradient."""

    def __init__(
        self,
        modulus: NDArray[np.float64],
        spec: FlatTopSpec,
        element: ElementPattern,
        power_floor: float,
    ) -> None:
        self.modulus = modulus
        self.spec = spec
        self.power_floor = power_floor
        pass_angles = spec.passband_grid()
        stop_angles = spec.stopband_grid()
        self.n_pass = pass_angles.size
        angles = np.concatenate([pass_angles, stop_angles])
        k = np.arange(modulus.size, dtype=np.float64)
        self.steering_h = np.exp(-1j * np.pi * np.multiply.outer(np.sin(angles), k))
        self.gain = element_gain(element, np.abs(angles))

    def power_db(self, phases: NDArray[np.float64]) -> NDArray[np.float64]:
        response = self.steering_h @ (self.modulus * np.exp(1j * phases))
        return _DB_PER_NEPER * np.log(np.abs(response) ** 2 * self.gain + self.power_floor)

    def grid_ripple(self, phases: NDArray[np.float64]) -> float:
        band = self.power_db(phases)[: self.n_pass]
        return float(band.max() - band.min())

    def _terms(self, power_db: NDArray[np.float64], tau: float) -> tuple[float, float]:
        band = power_db[: self.n_pass]
        ripple = tau * (logsumexp(band / tau) + logsumexp(-band / tau))
        sidelobe = 0.0
        stop = power_db[self.n_pass :]
        if stop.size:
            excess = (stop - band.mean() - self.spec.sidelobe_target_db) / tau
            sidelobe = tau * float(logsumexp(np.concatenate([[0.0], excess])))
        return float(ripple), sidelobe

    def value(self, phases: NDArray[np.float64], tau: float) -> float:
        ripple, sidelobe = self._terms(self.power_db(phases), tau)
        return self.spec.ripple_weight * ripple + self.spec.sidelobe_weight * sidelobe

    def gradient(self, phases: NDArray[np.float64], tau: float) -> NDArray[np.float64]:
        weights = self.modulus * np.exp(1j * phases)
        response = self.steering_h @ weights
        power = np.abs(response) ** 2 * self.gain + self.power_floor
        power_db = _DB_PER_NEPER * np.log(power)

        # d P / d phi_k = -2 E Im(conj(s) a_k w_k)
        d_power = -2.0 * self.gain[:, None] * np.imag(
            np.conj(response)[:, None] * self.steering_h * weights[None, :]
        )
        d_power_db = _DB_PER_NEPER * d_power / power[:, None]

        band = power_db[: self.n_pass]
        d_band = self.spec.ripple_weight * (softmax(band / tau) - softmax(-band / tau))
        d_stop = np.zeros(power_db.size - self.n_pass)
        stop = power_db[self.n_pass :]
        if stop.size:
            excess = (stop - band.mean() - self.spec.sidelobe_target_db) / tau
            share = softmax(np.concatenate([[0.0], excess]))[1:]
            d_stop = self.spec.sidelobe_weight * share
            d_band = d_band - d_stop.sum() / self.n_pass

        return d_power_db[: self.n_pass].T @ d_band + d_power_db[self.n_pass :].T @ d_stop


def _initial_phases(
    init: PhaseProfile, config: OptimizerConfig
) -> NDArray[np.float64]:
    if config.init_policy is InitPolicy.RANDOM:
        rng = np.random.default_rng(config.seed)
        return rng.uniform(-np.pi, np.pi, init.n_elements)
    return np.array(init.phases, dtype=np.float64)


def optimize_phases(
    modulus: NDArray[np.float64],
    init: PhaseProfile,
    spec: FlatTopSpec,
    config: OptimizerConfig | None = None,
    element: ElementPattern | None = None,
    callback: StepCallback | None = None,
) -> OptimizationReport:
    """
    Refine the phases of ``init`` against ``spec`` under the modulus constraint.

    Non-convergence is reported through ``converged=False`` with the best
    iterate found. If the result has larger optimization-grid ripple than
    the start point, the start point is returned and ``reverted`` is set.

    Raises:
        FlatTopValidationError: modulus and init differ in length, or the
            modulus is not finite and nonnegative.
    """
    config = config or OptimizerConfig()
    element = element or ElementPattern.patch()
    modulus = np.asarray(modulus, dtype=np.float64)
    if modulus.shape != (init.n_elements,):
        raise FlatTopValidationError(
            "Modulus length does not match the initial profile",
            field="modulus",
            value=modulus.shape,
            expected=f"({init.n_elements},)",
        )
    if not np.all(np.isfinite(modulus)) or np.any(modulus < 0.0):
        raise FlatTopValidationError(
            "Modulus must be finite and nonnegative", field="modulus", expected=">= 0"
        )

    objective = _Objective(modulus, spec, element, config.power_floor)
    start = _initial_phases(init, config)
    pinned = int(np.argmax(modulus))

    phases = start.copy()
    tau = config.temperature
    value = objective.value(phases, tau)
    trace = [value]
    step = config.initial_step
    iterations = 0
    converged = False

    while iterations < config.max_iterations:
        gradient = objective.gradient(phases, tau)
        gradient[pinned] = 0.0
        slope = float(gradient @ gradient)
        if slope == 0.0:
            converged = True
            break

        accepted = False
        for _ in range(config.max_backtracks):
            candidate = phases - step * gradient
            candidate_value = objective.value(candidate, tau)
            if candidate_value <= value - config.armijo * step * slope:
                accepted = True
                break
            step *= config.backtrack_factor
        if not accepted:
            # No descent direction left at machine precision
            converged = True
            break

        phases = candidate
        value = candidate_value
        iterations += 1
        step = min(step * config.step_growth, config.max_step)

        if iterations % config.anneal_every == 0 and tau > config.min_temperature:
            tau = max(tau * config.temperature_decay, config.min_temperature)
            value = objective.value(phases, tau)
            logger.debug(
                "Iteration %d: objective %.6f dB, temperature %.4g", iterations, value, tau
            )
        trace.append(value)

        if callback is not None:
            callback(iterations, phases.copy(), value)

        if len(trace) > config.patience and trace[-1 - config.patience] - trace[-1] < config.tolerance_db:
            converged = True
            break

    initial_ripple = objective.grid_ripple(start)
    final_ripple = objective.grid_ripple(phases)
    reverted = final_ripple > initial_ripple
    if reverted:
        logger.warning(
            "Optimized ripple %.3f dB exceeds the start point's %.3f dB; keeping the start point",
            final_ripple,
            initial_ripple,
        )
        phases = start
        final_ripple = initial_ripple

    profile = PhaseProfile.from_phases(phases, Provenance.OPTIMIZED)
    dense = linear_pattern(
        modulus * profile.values,
        AngularGrid.uniform(config.dense_points),
        element,
    )
    metrics = flat_top_metrics(dense, spec.passband)
    useful = metrics.is_useful(USEFUL_RIPPLE_DB, grid_ripple_db=final_ripple)

    logger.info(
        "Spec %s (%d grid points): %s after %d iterations, grid ripple %.3f dB, dense ripple %.3f dB, %s",
        spec.name,
        spec.grid_points,
        "converged" if converged else "stopped",
        iterations,
        final_ripple,
        metrics.passband_ripple_db,
        "useful" if useful else "not useful",
    )
    return OptimizationReport(
        spec=spec,
        phases=profile,
        iterations=iterations,
        objective_trace=np.asarray(trace),
        initial_ripple_db=initial_ripple,
        final_ripple_db=final_ripple,
        metrics=metrics,
        converged=converged,
        useful=useful,
        reverted=reverted,
        final_temperature=tau,
    )


def grid_sensitivity_experiment(
    modulus: NDArray[np.float64],
    init: PhaseProfile,
    spec: FlatTopSpec,
    config: OptimizerConfig | None = None,
    grid_points: Iterable[int] = (5, 15),
    element: ElementPattern | None = None,
) -> GridSensitivityReport:
    """Optimize the same mask at each passband grid density."""
    runs = tuple(
        optimize_phases(modulus, init, spec.with_grid_points(points), config, element)
        for points in grid_points
    )
    return GridSensitivityReport(runs=runs)

