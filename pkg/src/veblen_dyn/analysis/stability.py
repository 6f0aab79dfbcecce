"""Jacobian, stability conditions and bifurcation detection along sweeps."""

import cmath
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from veblen_dyn.analysis.equilibria import find_equilibria, refine_transition
from veblen_dyn.domain import (
    BifurcationType,
    Crossing,
    DomainError,
    Equilibrium,
    Jacobian,
    ModelParams,
    StabilityReport,
    State,
    SweepParam,
    Verdict,
)
from veblen_dyn.model import broken_windows_prob
from veblen_dyn.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

JUMP_GUARD = 0.2
PARAM_TOL = 1e-8

_MARGIN_TYPES = {
    "fold": BifurcationType.FOLD,
    "flip": BifurcationType.FLIP,
    "ns": BifurcationType.NS,
}


def jacobian_entries(
    e: float, pi: float, params: ModelParams
) -> tuple[float, float, float, float]:
    """Row-major entries (j11, j12, j21, j22) of the Jacobian at (e, pi).

    Plain floats for tight loops; the caller guarantees pi > -1.
    """
    p = broken_windows_prob(e, params)
    return (
        pi / (1.0 + pi),
        (e + params.bracket) / (1.0 + pi) ** 2,
        (1.0 - params.alpha) * params.beta * p * (1.0 - p),
        params.alpha,
    )


def jacobian_at(state: State, params: ModelParams) -> Jacobian:
    """Analytic Jacobian of the map at any state."""
    if not state.pi > -1.0:
        raise DomainError(f"Green preference weight must exceed -1, got {state.pi}")

    j11, j12, j21, j22 = jacobian_entries(state.e, state.pi, params)
    return Jacobian(j11=j11, j12=j12, j21=j21, j22=j22)


def eta_at(eq: Equilibrium, params: ModelParams) -> float:
    """Elasticity of green preferences with respect to environmental quality."""
    if eq.pi_bar == 0.0:
        raise DomainError("Elasticity is undefined at pi_bar = 0")
    j21 = jacobian_at(eq.as_state(), params).j21
    return eq.e_bar / eq.pi_bar * j21


def eta_closed_form(eq: Equilibrium, params: ModelParams) -> float:
    """(1-alpha)*beta*e_bar*(1-pi_bar), equal to eta_at via the logistic derivative."""
    return (1.0 - params.alpha) * params.beta * eq.e_bar * (1.0 - eq.pi_bar)


def eigenvalues(trace: float, det: float) -> tuple[complex, complex]:
    """Roots of lambda^2 - trace*lambda + det."""
    root = cmath.sqrt(trace * trace - 4.0 * det)
    return (trace + root) / 2.0, (trace - root) / 2.0


def _verdict(fold: float, flip: float, ns: float) -> Verdict:
    margins = (("fold", fold), ("flip", flip), ("ns", ns))
    violated = [name for name, margin in margins if margin <= 0.0]
    if not violated:
        return Verdict.STABLE
    if len(violated) > 1:
        return Verdict.UNSTABLE_MULTIPLE
    return {
        "fold": Verdict.FOLD_UNSTABLE,
        "flip": Verdict.FLIP_UNSTABLE,
        "ns": Verdict.NS_UNSTABLE,
    }[violated[0]]


def classify_equilibrium(eq: Equilibrium, params: ModelParams) -> StabilityReport:
    """Stability of a steady state from the trace/determinant conditions.

    The margins 1 - tr + det, 1 + tr + det and 1 - det are all positive
    exactly when both eigenvalues lie inside the unit circle.
    """
    eta = eta_at(eq, params)
    pi_bar = eq.pi_bar
    trace = pi_bar / (1.0 + pi_bar) + params.alpha
    det = (params.alpha * pi_bar - eta) / (1.0 + pi_bar)

    fold = 1.0 - trace + det
    flip = 1.0 + trace + det
    ns = 1.0 - det

    return StabilityReport(
        jacobian=jacobian_at(eq.as_state(), params),
        trace=trace,
        det=det,
        eta=eta,
        cond_fold=fold,
        cond_flip=flip,
        cond_ns=ns,
        eigenvalues=eigenvalues(trace, det),
        verdict=_verdict(fold, flip, ns),
    )


def rearranged_conditions(eq: Equilibrium, params: ModelParams) -> dict[str, float]:
    """Margins of the three stability inequalities in their rearranged form.

    ``flip_chain`` is condition (ii) before simplification,
    (1+alpha)(1+pi)(1+pi/(1+pi)) - eta, which equals ``flip``.
    Each margin times 1/(1+pi_bar) equals the matching trace/determinant
    margin; ``ns`` additionally carries a factor pi_bar.
    """
    eta = eta_at(eq, params)
    pi_bar, alpha = eq.pi_bar, params.alpha
    return {
        "fold": (1.0 - alpha) - eta,
        "flip": (1.0 + alpha) * (1.0 + 2.0 * pi_bar) - eta,
        "flip_chain": (1.0 + alpha) * (1.0 + pi_bar) * (1.0 + pi_bar / (1.0 + pi_bar)) - eta,
        "ns": (1.0 - alpha) + (1.0 + eta) / pi_bar,
    }


def eigen_summary(report: StabilityReport) -> dict[str, float | bool]:
    """Dominant modulus, whether the pair is complex, and its rotation angle."""
    lam = max(report.eigenvalues, key=abs)
    is_complex = abs(lam.imag) > 0.0
    return {
        "modulus": abs(lam),
        "complex": is_complex,
        "angle": abs(cmath.phase(lam)) if is_complex else 0.0,
    }


@dataclass
class _Branch:
    id: int
    pi_bar: float
    report: StabilityReport


@dataclass
class _GridPoint:
    value: float
    equilibria: list[Equilibrium]
    reports: list[StabilityReport] = field(default_factory=list)


def _analyse(params: ModelParams, name: str, value: float) -> _GridPoint:
    p = params.with_value(name, value)
    equilibria = find_equilibria(p)
    return _GridPoint(value, equilibria, [classify_equilibrium(eq, p) for eq in equilibria])


def _match(branches: list[_Branch], roots: list[Equilibrium]) -> dict[int, int]:
    """Greedy nearest-pi matching of live branches to roots within the jump guard."""
    pairs = sorted(
        (abs(branch.pi_bar - root.pi_bar), b, r)
        for b, branch in enumerate(branches)
        for r, root in enumerate(roots)
    )
    matched: dict[int, int] = {}
    used_roots: set[int] = set()
    for distance, b, r in pairs:
        if distance > JUMP_GUARD:
            break
        if b in matched or r in used_roots:
            continue
        matched[b] = r
        used_roots.add(r)
    return matched


def _nearest(params: ModelParams, pi_target: float) -> Optional[tuple[Equilibrium, StabilityReport]]:
    equilibria = find_equilibria(params)
    eq = min(equilibria, key=lambda candidate: abs(candidate.pi_bar - pi_target))
    if abs(eq.pi_bar - pi_target) > JUMP_GUARD:
        return None
    return eq, classify_equilibrium(eq, params)


def _refine_margin(
    params: ModelParams,
    name: str,
    margin: str,
    lo: tuple[float, float],
    hi: tuple[float, float],
) -> tuple[float, Optional[tuple[Equilibrium, StabilityReport]], bool]:
    """Bisect the parameter on the sign of one margin of a tracked branch.

    ``lo`` and ``hi`` are (parameter value, pi_bar) at the bracketing grid points.
    """
    (a, pi_a), (b, pi_b) = lo, hi

    def pi_guess(x: float) -> float:
        return pi_a + (pi_b - pi_a) * (x - a) / (b - a) if b != a else pi_a

    def positive(x: float) -> bool:
        found = _nearest(params.with_value(name, x), pi_guess(x))
        if found is None:
            raise LookupError(x)
        return found[1].margins[margin] > 0.0

    try:
        value = refine_transition(positive, a, b, PARAM_TOL)
    except LookupError as exc:
        logger.warning("Branch lost while refining %s crossing near %s=%s", margin, name, exc.args[0])
        return 0.5 * (a + b), None, False

    logger.debug("%s margin changes sign at %s=%.10f", margin, name, value)
    return value, _nearest(params.with_value(name, value), pi_guess(value)), True


def detect_bifurcation(
    params: ModelParams,
    sweep_param: SweepParam | str,
    value_range: tuple[float, float],
    steps: int,
    threads: int = 1,
) -> list[Crossing]:
    """Locate bifurcations of the steady states along a one-parameter sweep.

    Every steady-state branch is followed across the grid; a sign change of
    one of its condition margins is reported as Fold, Flip or NS, and a
    change in the number of steady states as Pitchfork. Crossings are refined
    by bisection in the parameter.
    """
    name = SweepParam(sweep_param).value
    if steps < 2:
        raise ValueError(f"A sweep needs at least 2 steps, got {steps}")

    grid = np.linspace(value_range[0], value_range[1], steps)
    points = ordered_map(lambda value: _analyse(params, name, float(value)), grid, threads)

    crossings: list[Crossing] = []
    next_id = 0
    branches: list[_Branch] = []
    for eq, report in zip(points[0].equilibria, points[0].reports):
        branches.append(_Branch(next_id, eq.pi_bar, report))
        next_id += 1

    for previous, current in zip(points, points[1:]):
        if len(previous.equilibria) != len(current.equilibria):
            n_before = len(previous.equilibria)

            def same_count(x: float, n: int = n_before) -> bool:
                return len(find_equilibria(params.with_value(name, x))) == n

            value = refine_transition(same_count, previous.value, current.value, PARAM_TOL)
            crossings.append(Crossing(param_value=value, type=BifurcationType.PITCHFORK))

        matched = _match(branches, current.equilibria)
        survivors: list[_Branch] = []
        for b, branch in enumerate(branches):
            if b not in matched:
                logger.debug("Branch %d terminates after %s=%.6f", branch.id, name, previous.value)
                continue
            r = matched[b]
            report = current.reports[r]
            pi_now = current.equilibria[r].pi_bar

            for margin, kind in _MARGIN_TYPES.items():
                before = branch.report.margins[margin] > 0.0
                after = report.margins[margin] > 0.0
                if before == after:
                    continue
                value, found, refined = _refine_margin(
                    params,
                    name,
                    margin,
                    (previous.value, branch.pi_bar),
                    (current.value, pi_now),
                )
                if found is not None and kind is BifurcationType.NS:
                    if abs(found[1].eigenvalues[0].imag) == 0.0:
                        logger.debug("Real eigenvalues at det=1 near %s=%.6f; not an NS", name, value)
                        continue
                crossings.append(
                    Crossing(
                        param_value=value,
                        type=kind,
                        branch=branch.id,
                        pi_bar=found[0].pi_bar if found else None,
                        eigenvalues=found[1].eigenvalues if found else None,
                        refined=refined,
                    )
                )

            survivors.append(_Branch(branch.id, pi_now, report))

        claimed = set(matched.values())
        for r, (eq, report) in enumerate(zip(current.equilibria, current.reports)):
            if r not in claimed:
                survivors.append(_Branch(next_id, eq.pi_bar, report))
                next_id += 1
        branches = survivors

    return crossings
