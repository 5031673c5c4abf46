"""Adaptive energy-biased random walk for trapping a walker inside a seed's cluster.

Every vertex carries a positive energy; moving from u, a neighbor v is chosen
with probability proportional to min(energy[v]/energy[u], 1), and the departed
vertex's energy is multiplied by the current factor f >= 1. Vertices the walk
keeps revisiting accumulate energy, which makes leaving their neighborhood
ever less likely. Energies are kept in log space so long runs cannot overflow.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .diffusion import ClusterReport, sweep_cut
from .graph import Graph, component_of

DEFAULT_F_LADDER = (1.1, 1.3, 2.0)
DEFAULT_RESTARTS_PER_F = 10


def default_schedule(expected_size: int) -> tuple[tuple[float, int], ...]:
    """Short restart phases, gentle factor first: 10 phases of ``expected_size``
    steps at each of f = 1.1, 1.3, 2.0. Restarting from the seed at every phase
    boundary keeps early cross-boundary excursions from accumulating energy."""
    return tuple(
        (f, int(expected_size)) for f in DEFAULT_F_LADDER for _ in range(DEFAULT_RESTARTS_PER_F)
    )


@dataclass(frozen=True)
class WalkConfig:
    """Adaptive-walk parameters.

    ``alpha`` scales the background energy (alpha / degree), ``beta`` the
    seed's initial energy (beta / seed degree). ``f_schedule`` is a sequence
    of (factor, steps) phases; when omitted it is built from ``expected_size``
    (a rough guess of the cluster size). ``literal_init`` switches the
    background to alpha / seed-degree for every vertex instead of each
    vertex's own degree.
    """

    alpha: float = 1.0
    beta: float = 100.0
    f_schedule: tuple[tuple[float, int], ...] | None = None
    expected_size: int = 5
    rng_seed: int = 0
    literal_init: bool = False

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive")
        if self.beta < self.alpha:
            raise ValueError("beta must be at least alpha")
        if self.expected_size < 1:
            raise ValueError("expected_size must be >= 1")
        for f, steps in self.phases():
            if f < 1.0:
                raise ValueError(f"every f must be >= 1, got {f}")
            if steps < 0:
                raise ValueError("phase step counts must be nonnegative")

    def phases(self) -> tuple[tuple[float, int], ...]:
        if self.f_schedule is not None:
            return tuple((float(f), int(s)) for f, s in self.f_schedule)
        return default_schedule(self.expected_size)


@dataclass(eq=False)
class EnergyTable:
    """Walk state: per-vertex log energies, visit counts, current position."""

    log_energies: np.ndarray
    visit_counts: np.ndarray
    current_vertex: int
    seed: int
    f: float = 1.0

    @property
    def energies(self) -> np.ndarray:
        return np.exp(self.log_energies)

    def energy_of(self, u: int) -> float:
        return float(math.exp(self.log_energies[u]))


@dataclass
class PhaseStats:
    f: float
    steps: int
    visits: dict[int, int]
    seconds: float


@dataclass
class WalkTelemetry:
    phases: list[PhaseStats] = field(default_factory=list)

    @property
    def total_steps(self) -> int:
        return sum(p.steps for p in self.phases)


def init_energies(g: Graph, seed: int, cfg: WalkConfig = WalkConfig()) -> EnergyTable:
    """Background energy alpha/d_w everywhere, beta/d_seed at the seed."""
    seed = g.check_vertex(seed)
    if g.degree(seed) == 0:
        raise ValueError(f"seed vertex {seed} is isolated; walk undefined")
    with np.errstate(divide="ignore"):
        if cfg.literal_init:
            log_e = np.full(g.vertex_count, math.log(cfg.alpha / g.degree(seed)))
        else:
            log_e = np.log(cfg.alpha / g.degrees.astype(np.float64))
    log_e[seed] = math.log(cfg.beta / g.degree(seed))
    visits = np.zeros(g.vertex_count, dtype=np.int64)
    visits[seed] = 1
    return EnergyTable(
        log_energies=log_e, visit_counts=visits, current_vertex=seed, seed=seed
    )


def acceptance_probability(state: EnergyTable, u: int, v: int) -> float:
    """min(energy[v]/energy[u], 1): the unnormalized weight of a u->v move."""
    return math.exp(min(0.0, state.log_energies[v] - state.log_energies[u]))


def transition_weights(g: Graph, state: EnergyTable, u: int) -> tuple[np.ndarray, np.ndarray]:
    """Neighbors of u and their normalized move probabilities."""
    nbrs = g.neighbors(u)
    if nbrs.size == 0:
        raise ValueError(f"vertex {u} has no neighbors")
    rel = np.minimum(state.log_energies[nbrs] - state.log_energies[u], 0.0)
    w = np.exp(rel - rel.max())
    return nbrs, w / w.sum()


def walk_step(g: Graph, state: EnergyTable, rng: np.random.Generator) -> EnergyTable:
    """One move of the walk, in place: sample a neighbor by energy weight,
    multiply the departed vertex's energy by f, count the arrival."""
    u = state.current_vertex
    if g.degree(u) == 0:
        raise ValueError(f"vertex {u} has no neighbors")
    uniforms = rng.random(1)
    state.current_vertex = _kernels.walk_phase(
        g.indptr,
        g.indices,
        state.log_energies,
        state.visit_counts,
        u,
        math.log(state.f),
        uniforms,
    )
    return state


def run_walk(
    g: Graph, seed: int, cfg: WalkConfig = WalkConfig()
) -> tuple[EnergyTable, WalkTelemetry]:
    """Execute the f-schedule, resetting the walker to the seed at each phase."""
    state = init_energies(g, seed, cfg)
    rng = np.random.default_rng(cfg.rng_seed)
    telemetry = WalkTelemetry()

    for f, steps in cfg.phases():
        t0 = time.perf_counter()
        state.f = float(f)
        state.current_vertex = state.seed
        before = state.visit_counts.copy()
        if steps > 0:
            uniforms = rng.random(steps)
            state.current_vertex = _kernels.walk_phase(
                g.indptr,
                g.indices,
                state.log_energies,
                state.visit_counts,
                state.current_vertex,
                math.log(f),
                uniforms,
            )
        delta = state.visit_counts - before
        visited = np.flatnonzero(delta)
        telemetry.phases.append(
            PhaseStats(
                f=float(f),
                steps=int(steps),
                visits={int(u): int(delta[u]) for u in visited},
                seconds=time.perf_counter() - t0,
            )
        )
    return state, telemetry


def extract_cluster_from_energy(
    g: Graph, state: EnergyTable, telemetry: WalkTelemetry | None = None
) -> ClusterReport:
    """Sweep the seed's component ordered by final energy (descending)."""
    total_steps = telemetry.total_steps if telemetry else int(state.visit_counts.sum() - 1)
    if total_steps <= 0:
        return ClusterReport(
            seed=state.seed,
            members=np.array([state.seed], dtype=np.int64),
            conductance=1.0,
            belongingness={state.seed: 1.0},
            converged=False,
            degenerate=True,
        )

    comp = component_of(g, state.seed)
    log_e = state.log_energies[comp]
    order = comp[np.lexsort((comp, -log_e))]
    members, phi, fallback = sweep_cut(g, order, state.seed)
    seed_log = state.log_energies[state.seed]
    belong = {int(u): math.exp(state.log_energies[u] - seed_log) for u in members}
    return ClusterReport(
        seed=state.seed,
        members=members,
        conductance=phi,
        belongingness=belong,
        converged=True,
        degenerate=fallback,
    )


def find_cluster_walk(g: Graph, seed: int, cfg: WalkConfig = WalkConfig()) -> ClusterReport:
    """Convenience wrapper: run the walk then extract the energy sweep cluster."""
    state, telemetry = run_walk(g, seed, cfg)
    return extract_cluster_from_energy(g, state, telemetry)
