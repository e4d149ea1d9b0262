"""Numeric mass-action dynamics, steady states, and basis verification."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .core import CRNError, Network
from .graph import conservation_laws
from .linalg import rank, row_space
from .toric import BasisBinomial
from .translation import GeneralizedNetwork

RESIDUAL_FLOOR = 1e-30


class ConvergenceError(CRNError):
    def __init__(self, message: str, diagnostic: dict):
        self.diagnostic = diagnostic
        super().__init__(message)


def rate_vector(net: Network, k: Mapping[str, float]) -> np.ndarray:
    missing = [lab for lab in net.rate_labels if lab not in k]
    if missing:
        raise ValueError(f"no rate given for {', '.join(missing)}")
    vals = np.array([float(k[lab]) for lab in net.rate_labels])
    if not np.all(vals > 0) or not np.all(np.isfinite(vals)):
        raise ValueError("rate constants must be positive and finite")
    return vals


class MassActionSystem:
    """Vectorised ``dx/dt = N diag(k) x^Y`` for a network.

    For a generalized network the monomial exponents ``Y`` come from the
    kinetic complexes of the source nodes and ``N`` from the translated
    complexes.
    """

    def __init__(self, net: Network | GeneralizedNetwork, k: Mapping[str, float]):
        if isinstance(net, GeneralizedNetwork):
            base = net.base
            sources = [net.kinetic_complex(base.source_of[i]) for i in range(base.r)]
        else:
            base = net
            sources = [rx.source for rx in base.reactions]
        self.net = base
        self.k = rate_vector(base, k)
        m = base.m
        self.exponents = np.array([c.vector(m) for c in sources], dtype=float).reshape(base.r, m)
        self.stoich = np.array(base.reaction_vectors(), dtype=float).reshape(base.r, m).T

    def rates(self, x: np.ndarray) -> np.ndarray:
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        # 0**0 == 1 in numpy, matching the mass-action convention.
        return self.k * np.prod(x[None, :] ** self.exponents, axis=1)

    def rhs(self, x: np.ndarray) -> np.ndarray:
        return self.stoich @ self.rates(x)

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        r, m = self.exponents.shape
        drate = np.zeros((r, m))
        for j in range(m):
            e = self.exponents[:, j]
            active = e > 0
            if not active.any():
                continue
            reduced = self.exponents[active].copy()
            reduced[:, j] -= 1.0
            drate[active, j] = self.k[active] * e[active] * np.prod(x[None, :] ** reduced, axis=1)
        return self.stoich @ drate


def mass_action_rhs(net: Network | GeneralizedNetwork, k: Mapping[str, float], x: Sequence[float]) -> np.ndarray:
    return MassActionSystem(net, k).rhs(np.asarray(x, dtype=float))


def relative_residual(system: MassActionSystem, x: np.ndarray) -> float:
    scale = max(1.0, float(np.max(np.abs(x))) * float(np.max(system.k)))
    return float(np.max(np.abs(system.rhs(x)))) / scale


@dataclass(frozen=True)
class SteadyState:
    x: np.ndarray
    residual: float
    conservation_drift: float
    rhs_evaluations: int
    newton_iterations: int


class SteadyStateSolver:
    """Time integration to near-equilibrium, then Newton on ``(Q^T f, W x - c)``.

    ``Q`` is an orthonormal basis of the stoichiometric subspace and ``W`` the
    conservation laws, so the Newton system is square and preserves totals.
    """

    def __init__(
        self,
        net: Network,
        *,
        target: float = 1e-14,
        accept: float = 1e-10,
        handoff: float = 1e-6,
        horizon: float = 10.0,
        max_rhs_evaluations: int = 200_000,
        stall_rounds: int = 4,
        max_newton: int = 50,
        conservation_tol: float = 1e-9,
    ):
        self.net = net
        self.target = target
        self.accept = accept
        self.handoff = handoff
        self.horizon = horizon
        self.max_rhs_evaluations = max_rhs_evaluations
        self.stall_rounds = stall_rounds
        self.max_newton = max_newton
        self.conservation_tol = conservation_tol

        vectors = net.reaction_vectors()
        basis = np.array([[float(v) for v in row] for row in row_space(vectors)]).reshape(-1, net.m)
        q, _ = np.linalg.qr(basis.T)
        self.q = q[:, : rank(vectors)]
        laws = conservation_laws(net)
        self.w = np.array([[float(v) for v in row] for row in laws]).reshape(len(laws), net.m)

    def _drift(self, x: np.ndarray, x0: np.ndarray) -> float:
        if not len(self.w):
            return 0.0
        scale = np.abs(self.w) @ np.abs(x0)
        return float(np.max(np.abs(self.w @ (x - x0)) / np.maximum(scale, RESIDUAL_FLOOR)))

    def _scaled_residual(self, system: MassActionSystem, x: np.ndarray, totals: np.ndarray):
        # Each species row is divided by its gross flux and each conservation
        # row by its total, so tiny species are resolved to relative precision.
        rates = system.rates(x)
        gross = np.maximum(np.abs(system.stoich) @ rates, np.finfo(float).tiny)
        wscale = np.maximum(np.abs(self.w) @ x, np.finfo(float).tiny)
        f = np.concatenate([(system.stoich @ rates) / gross, (self.w @ x - totals) / wscale])
        return f, gross, wscale

    def _newton(self, system: MassActionSystem, x: np.ndarray, totals: np.ndarray) -> tuple[np.ndarray, int]:
        """Damped Newton in log coordinates on the row-scaled system."""
        f, gross, wscale = self._scaled_residual(system, x, totals)
        norm = float(np.linalg.norm(f))
        it = 0
        for it in range(1, self.max_newton + 1):
            if norm < self.target:
                break
            jac = np.vstack([system.jacobian(x) / gross[:, None], self.w / wscale[:, None]]) * x[None, :]
            step = np.linalg.lstsq(jac, -f, rcond=None)[0]
            lam = min(1.0, 2.0 / max(float(np.max(np.abs(step))), 1e-300))
            while lam > 1e-6:
                cand = x * np.exp(lam * step)
                fc, gc, wc = self._scaled_residual(system, cand, totals)
                nc = float(np.linalg.norm(fc))
                if nc < norm:
                    x, f, gross, wscale, norm = cand, fc, gc, wc, nc
                    break
                lam *= 0.5
            else:
                break
        return x, it

    def _polish(self, system, x, totals):
        x = np.maximum(x, 1e-30 * float(np.max(x)))
        x, its = self._newton(system, x, totals)
        ok = bool(np.all(np.isfinite(x)))
        return x, its, (relative_residual(system, x) if ok else math.inf)

    def solve(self, k: Mapping[str, float], x0: Sequence[float]) -> SteadyState:
        x0 = np.asarray(x0, dtype=float)
        if x0.shape != (self.net.m,) or not np.all(x0 > 0):
            raise ValueError("initial state must be a strictly positive vector of length m")
        system = MassActionSystem(self.net, k)
        totals = self.w @ x0
        evaluations = iterations = rounds = 0
        t, x, end = 0.0, x0.copy(), self.horizon / float(np.min(system.k))
        resid = relative_residual(system, x)
        handoff = self.handoff
        best = (math.inf, x)

        while True:
            if resid <= handoff:
                cand, its, pres = self._polish(system, x, totals)
                iterations += its
                if pres < self.accept:
                    break
                best = min(best, (pres, cand), key=lambda p: p[0])
                if handoff > self.accept * 1e-6:
                    # Newton stalled; integrate closer to equilibrium and retry.
                    handoff *= 1e-3
                    continue
                pres, cand = best
                break
            if evaluations >= self.max_rhs_evaluations:
                pres, cand = best
                break
            sol = solve_ivp(
                lambda _t, z: system.rhs(z),
                (t, end),
                x,
                method="LSODA",
                jac=lambda _t, z: system.jacobian(z),
                rtol=1e-9,
                atol=1e-14 * max(1.0, float(np.max(x0))),
            )
            evaluations += sol.nfev + sol.njev
            if not sol.success:
                raise ConvergenceError(
                    f"integrator failed: {sol.message}",
                    {"residual": resid, "rhs_evaluations": evaluations, "t": t},
                )
            rounds += 1
            t, x = end, np.maximum(sol.y[:, -1], 0.0)
            end *= 2.0
            resid = relative_residual(system, x)
            if resid > handoff and rounds >= self.stall_rounds:
                # The trajectory is not settling (for instance a stable limit
                # cycle around an unstable equilibrium). The time average over
                # the last window lies close to the equilibrium, so polish it.
                mean = np.trapezoid(sol.y, sol.t, axis=1) / (sol.t[-1] - sol.t[0])
                cand, its, pres = self._polish(system, mean, totals)
                iterations += its
                if pres < self.accept:
                    break
                best = min(best, (pres, cand), key=lambda p: p[0])

        x, resid = cand, pres
        drift = self._drift(x, x0)
        diagnostic = {
            "residual": resid,
            "conservation_drift": drift,
            "rhs_evaluations": evaluations,
            "newton_iterations": iterations,
        }
        if not (resid < self.accept):
            raise ConvergenceError("steady-state residual above tolerance", diagnostic)
        if drift > self.conservation_tol:
            raise ConvergenceError("conserved totals drifted", diagnostic)
        if not np.all(x > 0):
            raise ConvergenceError("steady state is not strictly positive", diagnostic)
        return SteadyState(x, resid, drift, evaluations, iterations)


def find_steady_state(net: Network, k: Mapping[str, float], x0: Sequence[float], **options) -> SteadyState:
    """Positive steady state in the compatibility class of ``x0``.

    Raises :class:`ConvergenceError` (with a diagnostic dict) rather than
    returning an unconverged state.
    """
    return SteadyStateSolver(net, **options).solve(k, x0)


def sample_rates(net: Network, rng: np.random.Generator, low: float = 0.1, high: float = 10.0) -> dict[str, float]:
    vals = np.exp(rng.uniform(math.log(low), math.log(high), size=net.r))
    return dict(zip(net.rate_labels, vals.tolist()))


def sample_state(net: Network, rng: np.random.Generator, low: float = 0.1, high: float = 10.0) -> np.ndarray:
    return np.exp(rng.uniform(math.log(low), math.log(high), size=net.m))


@dataclass
class Trial:
    rates: dict[str, float]
    x0: list[float]
    state: SteadyState | None
    error: str | None = None

    @property
    def converged(self) -> bool:
        return self.state is not None


def sample_steady_states(net: Network, trials: int, seed: int, **options) -> list[Trial]:
    """Seeded sample of ``trials`` (rates, steady state) pairs."""
    rng = np.random.default_rng(seed)
    solver = SteadyStateSolver(net, **options)
    out = []
    for _ in range(trials):
        k = sample_rates(net, rng)
        x0 = sample_state(net, rng)
        try:
            out.append(Trial(k, x0.tolist(), solver.solve(k, x0)))
        except ConvergenceError as exc:
            out.append(Trial(k, x0.tolist(), None, str(exc)))
    return out


@dataclass
class TrialResult:
    converged: bool
    residual_ode: float | None
    residual_basis_max: float | None
    failing: list[int] = field(default_factory=list)


@dataclass
class VerificationReport:
    trials: int
    seed: int
    tol: float
    per_trial: list[TrialResult]
    passed: bool
    no_evidence: bool
    min_converged_fraction: float
    ode_tol: float = 1e-10

    @property
    def converged(self) -> int:
        return sum(t.converged for t in self.per_trial)

    @property
    def failing_binomials(self) -> list[int]:
        return sorted({i for t in self.per_trial for i in t.failing})

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "tolerances": {
                "basis": self.tol,
                "ode": self.ode_tol,
                "min_converged_fraction": self.min_converged_fraction,
            },
            "per_trial": [asdict(t) for t in self.per_trial],
            "converged": self.converged,
            "failing_binomials": self.failing_binomials,
            "no_evidence": self.no_evidence,
            "pass": self.passed,
        }


def check_basis(
    basis: Sequence[BasisBinomial],
    samples: Sequence[Trial],
    tol: float = 1e-6,
    seed: int = 0,
    min_converged_fraction: float = 0.9,
    floor: float = RESIDUAL_FLOOR,
) -> VerificationReport:
    """Evaluate every binomial at previously sampled steady states."""
    results = []
    for trial in samples:
        if trial.state is None:
            results.append(TrialResult(False, None, None))
            continue
        x = trial.state.x
        residuals = [b.residual(trial.rates, x, floor) for b in basis]
        worst = max(residuals, default=0.0)
        failing = [i for i, r in enumerate(residuals) if not r < tol]
        results.append(TrialResult(True, trial.state.residual, worst, failing))
    n = len(results)
    converged = sum(r.converged for r in results)
    passed = all(not r.failing for r in results) and (n == 0 or converged >= min_converged_fraction * n)
    return VerificationReport(
        trials=n,
        seed=seed,
        tol=tol,
        per_trial=results,
        passed=passed,
        no_evidence=converged == 0,
        min_converged_fraction=min_converged_fraction,
    )


def verify_basis(
    net: Network,
    g: GeneralizedNetwork,
    basis: Sequence[BasisBinomial],
    trials: int = 20,
    tol: float = 1e-6,
    seed: int = 0,
    min_converged_fraction: float = 0.9,
) -> VerificationReport:
    """Check that ``basis`` vanishes at ODE steady states of ``net``.

    Rates are log-uniform in [0.1, 10]; initial states log-uniform in
    [0.1, 10]. A trial that fails to converge is inconclusive and counts
    against ``min_converged_fraction``, never toward passing.
    """
    if g.original is not net and g.original != net:
        raise ValueError("generalized network was not derived from this network")
    samples = sample_steady_states(net, trials, seed)
    return check_basis(basis, samples, tol, seed, min_converged_fraction)
