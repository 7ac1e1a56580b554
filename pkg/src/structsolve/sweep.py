"""The delta-sweep experiment: factor and solve adversarial systems across
a range of cancellation depths, recording accuracy and growth per strategy.

The "ones" right-hand side reproduces the classic T x = 1 experiment with
the all-ones vector as the *known exact solution*, i.e. b = T @ 1.  The
adversarial matrices are near-singular by construction (their smallest
singular value scales with delta), and solving against a right-hand side
with a large component in the left near-null space would drown every
strategy in the same ||x||-driven rounding floor; pinning the exact
solution keeps ||x|| = sqrt(n) and lets the stable and unstable pivoting
strategies actually separate.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .cauchy_gko import PivotStrategy
from .core import SingularMatrixError
from .dft import toeplitz_cauchy_nodes
from .diagnostics import backward_error_toeplitz, growth_report, solve_quality
from .oracle import cond_estimate, dense_toeplitz
from .testgen import AdversarialSpec, adversarial_toeplitz
from .toeplitz import toeplitz_factor, toeplitz_solve

__all__ = ["SweepConfig", "SweepRecord", "SweepResult", "run_sweep", "records_to_csv"]

CSV_COLUMNS = (
    "delta",
    "strategy",
    "forward_err",
    "residual",
    "cond",
    "g1",
    "g2",
    "g3",
    "bmax_over_bmin",
    "backward_err",
)


@dataclass(frozen=True)
class SweepConfig:
    """Sweep parameters; defaults follow the order-8, k = 2..16 experiment."""

    n: int = 8
    delta_exponents: tuple = tuple(range(2, 17))
    strategies: tuple = (PivotStrategy.PARTIAL_ROW, PivotStrategy.ROW1_COL1)
    rhs: str = "ones"  # "ones": b = T @ 1 (exact solution all-ones); or "random"
    seed: int = 0
    regression_exponents: tuple = (2, 6)

    def __post_init__(self):
        if self.n < 4 or self.n % 2 != 0:
            raise ValueError("sweep order must be even and at least 4")
        if any(k <= 0 for k in self.delta_exponents):
            raise ValueError("delta exponents must be positive")
        if self.rhs not in ("ones", "random"):
            raise ValueError(f"rhs must be 'ones' or 'random', got {self.rhs!r}")
        object.__setattr__(
            self,
            "strategies",
            tuple(PivotStrategy.coerce(s) for s in self.strategies),
        )


@dataclass
class SweepRecord:
    delta: float
    strategy: str
    forward_err: float = np.nan
    residual: float = np.nan
    cond: float = np.nan
    g1: float = np.nan
    g2: float = np.nan
    g3: float = np.nan
    bmax_over_bmin: float = np.nan
    backward_err: float = np.nan
    ok: bool = True
    error: str = ""

    def csv_row(self) -> str:
        vals = [repr(float(getattr(self, c))) for c in CSV_COLUMNS if c != "strategy"]
        vals.insert(1, self.strategy)
        return ",".join(vals)

    def to_dict(self) -> dict:
        d = {c: getattr(self, c) for c in CSV_COLUMNS}
        d["ok"] = self.ok
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class SweepResult:
    config: SweepConfig
    records: list
    summary: dict

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.records)


def _rhs_for(config: SweepConfig, T: np.ndarray, kexp: int) -> np.ndarray:
    if config.rhs == "ones":
        return T @ np.ones(config.n, dtype=complex)
    rng = np.random.default_rng([config.seed, kexp])
    return rng.uniform(-1.0, 1.0, config.n).astype(complex)


def _slope(ks, vals) -> float:
    ks = np.asarray(ks, dtype=float)
    vals = np.asarray(vals, dtype=float)
    keep = np.isfinite(vals) & (vals > 0)
    if keep.sum() < 2:
        return np.nan
    return float(np.polyfit(ks[keep], np.log10(vals[keep]), 1)[0])


def run_sweep(config: SweepConfig) -> SweepResult:
    """Run the sweep and return records plus regression-slope summary.

    Records appear in delta-major, strategy-minor order and failures are
    recorded as rows (ok=False) without aborting the remaining cells.  The
    summary regresses log10 of forward error and residual against the delta
    exponent k (delta = 10^-k) over ``regression_exponents``; since
    log10(1/delta) = k these are the log-log slopes versus 1/delta.
    """
    records = []
    nodes = toeplitz_cauchy_nodes(config.n)
    for kexp in config.delta_exponents:
        delta = 10.0 ** (-kexp)
        coeffs = adversarial_toeplitz(AdversarialSpec(n=config.n, delta=delta))
        T = dense_toeplitz(coeffs)
        b = _rhs_for(config, T, kexp)
        cond = cond_estimate(T)
        for strategy in config.strategies:
            rec = SweepRecord(delta=delta, strategy=strategy.value, cond=cond)
            try:
                f = toeplitz_factor(coeffs, strategy)
                x = toeplitz_solve(f, b)
                quality = solve_quality(coeffs, b, x)
                growth = growth_report(f.inner.trace, f.inner, nodes)
                rec.forward_err = quality.forward_err
                rec.residual = quality.residual
                rec.g1 = growth.g1
                rec.g2 = growth.g2
                rec.g3 = growth.g3
                rec.bmax_over_bmin = growth.bmax_over_bmin
                rec.backward_err = backward_error_toeplitz(coeffs, f).rel_err
            except (SingularMatrixError, np.linalg.LinAlgError) as exc:
                rec.ok = False
                rec.error = str(exc)
            records.append(rec)

    lo, hi = config.regression_exponents
    window = [k for k in config.delta_exponents if lo <= k <= hi]
    summary = {"regression_exponents": list(window), "strategies": {}}
    for strategy in config.strategies:
        by_k = {
            int(round(-np.log10(r.delta))): r
            for r in records
            if r.strategy == strategy.value and r.ok
        }
        ks = [k for k in window if k in by_k]
        summary["strategies"][strategy.value] = {
            "slope_forward_err": _slope(ks, [by_k[k].forward_err for k in ks]),
            "slope_residual": _slope(ks, [by_k[k].residual for k in ks]),
            "max_residual_in_window": (
                max(by_k[k].residual for k in ks) if ks else np.nan
            ),
        }
    return SweepResult(config=config, records=records, summary=summary)


def records_to_csv(records) -> str:
    """Fixed-header CSV body; float fields use repr so identical runs are
    byte-identical."""
    out = io.StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    for rec in records:
        out.write(rec.csv_row() + "\n")
    return out.getvalue()
