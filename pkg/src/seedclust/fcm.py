"""Overlapping clusters: diffusion-vector embeddings + fuzzy c-means.

Each chosen center vertex contributes one embedding dimension: the converged
truncated-diffusion mass seen from that center. Fuzzy c-means with the l2
metric then yields soft memberships; thresholding them gives overlapping
vertex sets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diffusion import DiffusionConfig, run_diffusion
from .graph import Graph


@dataclass(frozen=True, eq=False)
class EmbeddingMatrix:
    """n x D matrix; column j is the diffusion distribution seeded at centers[j]."""

    matrix: np.ndarray
    centers: tuple[int, ...]

    @property
    def dimensions(self) -> int:
        return int(self.matrix.shape[1])


@dataclass(frozen=True, eq=False)
class MembershipMatrix:
    """Row-stochastic fuzzy memberships (n x k) plus the k cluster centers."""

    memberships: np.ndarray
    centers: np.ndarray
    fuzzifier: float
    objective: float
    iterations: int
    objective_history: tuple[float, ...] = ()

    @property
    def cluster_count(self) -> int:
        return int(self.memberships.shape[1])

    def to_csv(self, g: Graph) -> str:
        k = self.cluster_count
        lines = ["vertex," + ",".join(f"membership_{j}" for j in range(k))]
        for u, row in enumerate(self.memberships):
            lines.append(g.label_of(u) + "," + ",".join(repr(float(x)) for x in row))
        return "\n".join(lines) + "\n"


def build_embedding(
    g: Graph,
    centers,
    cfg: DiffusionConfig = DiffusionConfig(),
    degree_normalize: bool = False,
) -> EmbeddingMatrix:
    """Run one diffusion per center and stack the densified distributions.

    ``degree_normalize`` divides each row by the vertex degree, turning raw
    mass into the same closeness score the sweep cut orders by; the overlap
    pipeline uses that form so that high-degree vertices do not dominate the
    l2 metric.
    """
    centers = [g.check_vertex(c) for c in centers]
    if len(centers) < 2:
        raise ValueError("need at least 2 centers for an embedding")
    if len(set(centers)) != len(centers):
        raise ValueError("centers must be distinct")
    cols = []
    for c in centers:
        mass, _ = run_diffusion(g, c, cfg)
        cols.append(mass.to_dense(g.vertex_count))
    matrix = np.stack(cols, axis=1)
    if degree_normalize:
        matrix = matrix / g.degrees[:, None]
    return EmbeddingMatrix(matrix=matrix, centers=tuple(centers))


def _as_matrix(embedding) -> np.ndarray:
    if isinstance(embedding, EmbeddingMatrix):
        return embedding.matrix
    return np.asarray(embedding, dtype=np.float64)


def fcm_objective(embedding, msm: MembershipMatrix) -> float:
    """F_m = sum_ij u_ij^m ||x_i - c_j||^2."""
    x = _as_matrix(embedding)
    d2 = ((x[:, None, :] - msm.centers[None, :, :]) ** 2).sum(axis=2)
    return float(((msm.memberships ** msm.fuzzifier) * d2).sum())


def _memberships_from_distances(d2: np.ndarray, m: float) -> np.ndarray:
    n, k = d2.shape
    u = np.empty((n, k), dtype=np.float64)
    zero_rows = (d2 <= 0.0).any(axis=1)
    for i in np.flatnonzero(zero_rows):
        u[i] = 0.0
        u[i, int(np.argmax(d2[i] <= 0.0))] = 1.0
    rest = ~zero_rows
    if rest.any():
        w = d2[rest] ** (-1.0 / (m - 1.0))
        u[rest] = w / w.sum(axis=1, keepdims=True)
    return u


def fcm_fit(
    embedding,
    k: int,
    m: float = 2.0,
    tol: float = 1e-9,
    max_iters: int = 300,
    rng_seed: int = 0,
    initial_centers: np.ndarray | None = None,
) -> MembershipMatrix:
    """Alternating optimization of memberships and centers.

    Centers start at k distinct data rows drawn with ``rng_seed`` unless
    ``initial_centers`` is given. Stops when the objective decreases by less
    than ``tol`` between iterations.
    """
    x = _as_matrix(embedding)
    n = x.shape[0]
    if k < 2:
        raise ValueError("cluster count k must be >= 2")
    if k > n:
        raise ValueError("more clusters than data points")
    if m <= 1.0:
        raise ValueError("fuzzifier m must be > 1 (m=1 is the hard-assignment limit)")

    if initial_centers is not None:
        centers = np.asarray(initial_centers, dtype=np.float64).copy()
        if centers.shape != (k, x.shape[1]):
            raise ValueError("initial_centers must have shape (k, D)")
    else:
        rng = np.random.default_rng(rng_seed)
        centers = x[rng.choice(n, size=k, replace=False)].copy()

    prev = np.inf
    u = None
    obj = np.inf
    iterations = 0
    history: list[float] = []
    for iterations in range(1, max_iters + 1):
        d2 = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        u = _memberships_from_distances(d2, m)
        um = u ** m
        denom = um.sum(axis=0)
        occupied = denom > 0.0
        centers[occupied] = (um.T[occupied] @ x) / denom[occupied, None]
        d2 = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        obj = float((um * d2).sum())
        history.append(obj)
        if prev - obj < tol:
            break
        prev = obj

    return MembershipMatrix(
        memberships=u,
        centers=centers,
        fuzzifier=m,
        objective=obj,
        iterations=iterations,
        objective_history=tuple(history),
    )


@dataclass(frozen=True, eq=False)
class OverlapReport:
    """Overlapping vertex sets derived from thresholded memberships."""

    clusters: tuple[np.ndarray, ...]
    threshold: float

    def to_json_dict(self, g: Graph) -> dict:
        return {
            "schema": "seedclust/overlap-report/v1",
            "threshold": self.threshold,
            "clusters": [
                {"cluster": j, "members": [g.label_of(int(u)) for u in members]}
                for j, members in enumerate(self.clusters)
            ],
        }


def overlap_report(msm: MembershipMatrix, threshold: float = 0.3) -> OverlapReport:
    """Vertex u joins every cluster with membership >= threshold; its argmax
    cluster is always included so no vertex is left unassigned."""
    if not 0.0 < threshold <= 0.5:
        raise ValueError("threshold must be in (0, 0.5]")
    u = msm.memberships
    chosen = u >= threshold
    chosen[np.arange(u.shape[0]), u.argmax(axis=1)] = True
    clusters = tuple(
        np.flatnonzero(chosen[:, j]).astype(np.int64) for j in range(u.shape[1])
    )
    return OverlapReport(clusters=clusters, threshold=threshold)
