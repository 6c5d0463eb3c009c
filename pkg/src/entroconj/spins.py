"""Boltzmann spin ensembles, their u_k profiles, and the PCA report.

Generates systems of n spins with pairwise Gaussian couplings under three
conditions (ferromagnetic, weak, frustrated), builds each system's exact
Boltzmann distribution, computes its u_k interdependence profile, and
summarises the ensemble with a principal component analysis.  Everything is
a pure function of the configuration, so reruns are byte-identical.

The energy of a configuration x in {-1,+1}^n is

    E(x) = -(2 / (n (n-1))) * sum_{i<j} J_ij x_i x_j,

so a positive coupling mean favours aligned spins (ferromagnetic) and a
negative mean makes pairwise preferences mutually unsatisfiable
(frustrated), which is what pushes interdependence into higher orders.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from . import __version__
from .algebra import EntropyExpression, UBasisVector, from_u_basis
from .distributions import JointDistribution

__all__ = [
    "CONDITIONS",
    "SpinEnsembleConfig",
    "EnsembleResult",
    "PCAResult",
    "condition_mean",
    "sample_couplings",
    "boltzmann_distribution",
    "run_ensemble",
    "pca",
    "pc_metric",
    "run_experiment",
    "emit_results",
    "loading_symmetry_deviation",
    "loading_skew_deviation",
    "linearly_separable",
]

CONDITIONS = ("ferromagnetic", "weak", "frustrated")
RNG_NAME = "numpy-default-rng-pcg64"
MAX_SPINS = 12  # exact enumeration of 2^n states


@dataclass(frozen=True)
class SpinEnsembleConfig:
    """Parameters of one ensemble run.

    ``mu`` is the coupling mean of the ferromagnetic condition; the
    frustrated condition uses its negation and the weak condition zero.
    The two thresholds are acceptance knobs for the PCA structure checks.
    """

    n: int = 8
    beta: float = 1.0
    mu: float = 5.0
    sigma2: float = 2.0
    systems_per_condition: int = 10
    seed: int = 42
    loading_symmetry_tol: float = 0.25
    variance_share_min: float = 0.9

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least two spins")
        if self.n > MAX_SPINS:
            raise ValueError(f"at most {MAX_SPINS} spins (exact enumeration)")
        if self.sigma2 < 0:
            raise ValueError("coupling variance must be nonnegative")
        if self.systems_per_condition < 1:
            raise ValueError("need at least one system per condition")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SpinEnsembleConfig":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})


def condition_mean(config: SpinEnsembleConfig, condition: str) -> float:
    """Coupling mean used by a condition."""
    if condition == "ferromagnetic":
        return config.mu
    if condition == "weak":
        return 0.0
    if condition == "frustrated":
        return -config.mu
    raise ValueError(f"unknown condition {condition!r}")


def sample_couplings(
    config: SpinEnsembleConfig, condition: str, system_index: int
) -> np.ndarray:
    """Symmetric zero-diagonal coupling matrix for one system.

    Upper-triangle entries are i.i.d. Gaussian draws with the condition's
    mean and variance sigma2, taken from a PCG64 stream seeded by
    (seed, condition, system); the draw order is fixed, so results are
    reproducible bit for bit.
    """
    mean = condition_mean(config, condition)
    rng = np.random.default_rng(
        [config.seed, CONDITIONS.index(condition), int(system_index)]
    )
    n = config.n
    draws = rng.normal(mean, math.sqrt(config.sigma2), size=n * (n - 1) // 2)
    J = np.zeros((n, n))
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            J[i, j] = J[j, i] = draws[idx]
            idx += 1
    return J


def boltzmann_distribution(J: np.ndarray, beta: float) -> JointDistribution:
    """Exact Boltzmann distribution of n spins with couplings ``J``.

    Enumerates all 2^n configurations (symbol 0 is spin -1, symbol 1 is
    spin +1), computes their energies, and normalises by the partition sum.
    """
    J = np.asarray(J, dtype=float)
    n = J.shape[0]
    if J.shape != (n, n):
        raise ValueError("coupling matrix must be square")
    if n > MAX_SPINS:
        raise ValueError(f"at most {MAX_SPINS} spins (exact enumeration)")
    states = np.array(
        [[(s >> b) & 1 for b in range(n)] for s in range(1 << n)], dtype=float
    )
    x = 2.0 * states - 1.0
    upper = np.triu(J, k=1)
    energies = -(2.0 / (n * (n - 1))) * np.einsum("si,ij,sj->s", x, upper, x)
    logw = -beta * energies
    logw -= logw.max()  # guards exp overflow; cancels in the normalisation
    weights = np.exp(logw)
    pmf = (weights / weights.sum()).reshape((2,) * n, order="F")
    return JointDistribution(pmf)


@dataclass(frozen=True, eq=False)
class EnsembleResult:
    """u_k profiles of every generated system, tagged with its condition."""

    conditions: tuple[str, ...]
    system_ids: tuple[int, ...]
    u_matrix: np.ndarray  # rows follow conditions/system_ids; columns are u_1..u_{n-1}


def run_ensemble(config: SpinEnsembleConfig) -> EnsembleResult:
    """Generate all systems and compute their u_k profiles, in bits."""
    labels: list[str] = []
    ids: list[int] = []
    rows: list[tuple[float, ...]] = []
    for condition in CONDITIONS:
        for system_index in range(config.systems_per_condition):
            J = sample_couplings(config, condition, system_index)
            dist = boltzmann_distribution(J, config.beta)
            labels.append(condition)
            ids.append(system_index)
            rows.append(dist.u_values())
    return EnsembleResult(tuple(labels), tuple(ids), np.array(rows))


@dataclass(frozen=True, eq=False)
class PCAResult:
    """First two principal directions of the u_k profiles."""

    loadings_pc1: np.ndarray
    loadings_pc2: np.ndarray
    explained_variance: np.ndarray  # full spectrum, nonincreasing
    scores: np.ndarray  # per-system (pc1, pc2) projections


def _orient(vector: np.ndarray) -> np.ndarray:
    # fix the sign: the entry of largest magnitude (first on ties) is positive
    idx = int(np.argmax(np.abs(vector)))
    return -vector if vector[idx] < 0 else vector


def pca(data: np.ndarray) -> PCAResult:
    """Principal component analysis of row observations.

    Columns are centered but not rescaled (all u_k share units).  Components
    are eigenvectors of the sample covariance, sorted by eigenvalue; each is
    oriented so its largest-magnitude entry is positive.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[0] < 2:
        raise ValueError("need a matrix with at least two rows")
    centered = data - data.mean(axis=0)
    cov = centered.T @ centered / (data.shape[0] - 1)
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = np.maximum(eigenvalues[order], 0.0)
    eigenvectors = eigenvectors[:, order]
    pc1 = _orient(eigenvectors[:, 0])
    pc2 = _orient(eigenvectors[:, 1]) if eigenvectors.shape[1] > 1 else pc1 * 0.0
    scores = centered @ np.column_stack([pc1, pc2])
    return PCAResult(pc1, pc2, eigenvalues, scores)


def pc_metric(loadings: Sequence[float]) -> EntropyExpression:
    """The high-order metric sum_k loading_k * u_k as an entropy expression.

    Loadings are converted to exact rationals at 1e-12 precision before
    expansion, so the result lives in the symbolic layer.
    """
    coeffs = tuple(
        Fraction(float(x)).limit_denominator(10**12) for x in loadings
    )
    return from_u_basis(UBasisVector(len(coeffs) + 1, coeffs))


def loading_symmetry_deviation(loadings: Sequence[float]) -> float:
    """Relative deviation of a loading vector from index-reversal symmetry."""
    v = np.asarray(loadings, dtype=float)
    scale = float(np.abs(v).max())
    if scale == 0.0:
        return 0.0
    return float(np.abs(v - v[::-1]).max()) / scale


def loading_skew_deviation(loadings: Sequence[float]) -> float:
    """Relative deviation of a loading vector from index-reversal antisymmetry."""
    v = np.asarray(loadings, dtype=float)
    scale = float(np.abs(v).max())
    if scale == 0.0:
        return 0.0
    return float(np.abs(v + v[::-1]).max()) / scale


def linearly_separable(points_a: np.ndarray, points_b: np.ndarray) -> bool:
    """Whether two 2-D point clouds admit a strictly separating line.

    Solves the feasibility program w.x + b <= -1 on one side and >= +1 on
    the other; strict separability is scale-free, so feasibility of the
    unit-margin program is equivalent.
    """
    a = np.atleast_2d(np.asarray(points_a, dtype=float))
    b = np.atleast_2d(np.asarray(points_b, dtype=float))
    rows = [[p[0], p[1], 1.0] for p in a] + [[-p[0], -p[1], -1.0] for p in b]
    bounds = [(None, None)] * 3
    res = linprog(
        c=[0.0, 0.0, 0.0],
        A_ub=np.array(rows),
        b_ub=-np.ones(len(rows)),
        bounds=bounds,
        method="highs",
    )
    return res.status == 0


def run_experiment(config: SpinEnsembleConfig) -> tuple[EnsembleResult, PCAResult]:
    """Full pipeline: sample couplings, evaluate u_k profiles, run PCA."""
    ensemble = run_ensemble(config)
    return ensemble, pca(ensemble.u_matrix)


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(x) if isinstance(x, float) else str(x) for x in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def emit_results(
    ensemble: EnsembleResult,
    pca_result: PCAResult,
    out_dir: Path | str,
    config: SpinEnsembleConfig,
) -> dict[str, Path]:
    """Write the experiment's data products into ``out_dir``.

    Produces u_profiles.csv, loadings.csv, scores.csv and manifest.json.
    Output is deterministic byte for byte for a fixed configuration.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        n_cols = ensemble.u_matrix.shape[1]
        paths = {
            "u_profiles": out / "u_profiles.csv",
            "loadings": out / "loadings.csv",
            "scores": out / "scores.csv",
            "manifest": out / "manifest.json",
        }
        _write_csv(
            paths["u_profiles"],
            ["condition", "system_id"] + [f"u{k}" for k in range(1, n_cols + 1)],
            (
                [cond, sid] + [float(x) for x in row]
                for cond, sid, row in zip(
                    ensemble.conditions, ensemble.system_ids, ensemble.u_matrix
                )
            ),
        )
        _write_csv(
            paths["loadings"],
            ["k", "pc1", "pc2"],
            (
                [k + 1, float(pca_result.loadings_pc1[k]), float(pca_result.loadings_pc2[k])]
                for k in range(n_cols)
            ),
        )
        _write_csv(
            paths["scores"],
            ["condition", "system_id", "pc1", "pc2"],
            (
                [cond, sid, float(s[0]), float(s[1])]
                for cond, sid, s in zip(
                    ensemble.conditions, ensemble.system_ids, pca_result.scores
                )
            ),
        )
        total = float(pca_result.explained_variance.sum())
        manifest = {
            "config": config.to_dict(),
            "conditions": list(CONDITIONS),
            "explained_variance": [float(v) for v in pca_result.explained_variance],
            "variance_share_pc1_pc2": (
                float(pca_result.explained_variance[:2].sum()) / total
                if total > 0
                else 0.0
            ),
            "rng": RNG_NAME,
            "version": f"entroconj-{__version__}",
        }
        paths["manifest"].write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
            newline="\n",
        )
    except OSError as exc:
        raise OSError(f"cannot write experiment outputs under {out}: {exc}") from exc
    return paths
