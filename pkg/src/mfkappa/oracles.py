"""Synthetic dust generators with theoretically known spectra.

Self-similar two-branch cascades have closed-form (equal ratios) or
root-findable (unequal ratios) multifractal spectra, so they serve as
ground-truth oracles for the histogram estimator. The Farey dust (all
reduced fractions with bounded denominator) provides the qualitative
decreasing-spectrum fixture, and uniform dusts the trivial (1,1) case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .errors import DepthTooLarge, GridTooCoarse, SpecError
from .measure import CantorDust

# cascade interval lengths must stay above double-precision underflow
_MAX_LOG_SHRINK = 690.0


@dataclass(frozen=True)
class SelfSimilarSpec:
    """Two-branch multiplicative cascade: weights (p1,p2), ratios (r1,r2)."""

    p: tuple[float, float]
    r: tuple[float, float]
    depth: int
    S: int
    seed: int = 0

    def __post_init__(self):
        p1, p2 = self.p
        r1, r2 = self.r
        if abs(p1 + p2 - 1.0) > 1e-12:
            raise SpecError(f"weights must sum to 1, got {p1 + p2!r}")
        if p1 <= 0 or p2 <= 0:
            raise SpecError("weights must be strictly positive")
        if r1 <= 0 or r2 <= 0 or r1 + r2 > 1.0 + 1e-12:
            raise SpecError("ratios must be positive with r1 + r2 <= 1")
        if self.depth < 1:
            raise SpecError("depth must be >= 1")
        if self.S < 1:
            raise SpecError("sample size must be >= 1")

    def as_dict(self) -> dict:
        return {"p": list(self.p), "r": list(self.r), "depth": self.depth,
                "S": self.S, "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "SelfSimilarSpec":
        return cls(p=tuple(d["p"]), r=tuple(d["r"]), depth=int(d["depth"]),
                   S=int(d["S"]), seed=int(d.get("seed", 0)))


@dataclass(frozen=True)
class OracleSpectrum:
    """Theoretical (alpha(q), f(q)) curve over a q grid."""

    q_grid: np.ndarray
    alphas: np.ndarray
    fs: np.ndarray


def _cascade_points(spec: SelfSimilarSpec, n: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Sample n points i.i.d. from the depth-d cascade measure: walk d levels
    choosing child 1 with probability p1, return final-interval midpoints.
    Child 1 is left-aligned, child 2 right-aligned (middle gap)."""
    p1 = spec.p[0]
    r1, r2 = spec.r
    if spec.depth * math.log(1.0 / min(r1, r2)) > _MAX_LOG_SHRINK:
        raise DepthTooLarge(
            f"depth {spec.depth} underflows interval lengths")
    lo = np.zeros(n)
    length = np.ones(n)
    for _ in range(spec.depth):
        left = rng.random(n) < p1
        lo = np.where(left, lo, lo + length * (1.0 - r2))
        length = np.where(left, length * r1, length * r2)
    return lo + 0.5 * length


def gen_selfsimilar(spec: SelfSimilarSpec) -> CantorDust:
    """Deterministic dust of spec.S cascade samples (seeded RNG)."""
    rng = np.random.default_rng(spec.seed)
    return CantorDust(_cascade_points(spec, spec.S, rng))


def gen_superposed(spec_a: SelfSimilarSpec, spec_b: SelfSimilarSpec,
                   mix: float, disjoint: bool = False) -> CantorDust:
    """Union dust from two cascades sharing the unit segment.

    mix is the fraction of the total budget (spec_a.S + spec_b.S) drawn from
    the first cascade. With disjoint=True the first measure is squeezed into
    [0, 0.5) and the second into [0.5, 1], so each keeps its own support.
    """
    if not 0.0 < mix < 1.0:
        raise SpecError(f"mix must lie strictly in (0,1), got {mix}")
    total = spec_a.S + spec_b.S
    n_a = round(mix * total)
    n_b = total - n_a
    pts_a = _cascade_points(spec_a, n_a, np.random.default_rng(spec_a.seed))
    pts_b = _cascade_points(spec_b, n_b, np.random.default_rng(spec_b.seed))
    if disjoint:
        pts_a = 0.5 * pts_a
        pts_b = 0.5 + 0.5 * pts_b
    return CantorDust(np.concatenate([pts_a, pts_b]))


def oracle_spectrum(spec: SelfSimilarSpec, q_grid) -> OracleSpectrum:
    """Theoretical spectrum of the self-similar measure over a q grid.

    Equal ratios r1 = r2 = r admit the closed form
        alpha(q) = (p1^q ln p1 + p2^q ln p2) / ((p1^q + p2^q) ln r)
        f(q)     = q alpha(q) - ln(p1^q + p2^q) / ln r.
    Unequal ratios: tau(q) is the root of p1^q r1^tau + p2^q r2^tau = 1,
    alpha = dtau/dq by centered differences, f = q alpha - tau. Endpoints
    of the grid are dropped in that path.
    """
    q = np.asarray(q_grid, dtype=float)
    if q.size < 3:
        raise GridTooCoarse("q grid needs >= 3 points")
    p1, p2 = spec.p
    r1, r2 = spec.r
    if r1 == r2:
        ln_r = math.log(r1)
        w1, w2 = p1 ** q, p2 ** q
        z = w1 + w2
        alphas = (w1 * math.log(p1) + w2 * math.log(p2)) / (z * ln_r)
        fs = q * alphas - np.log(z) / ln_r
        return OracleSpectrum(q, alphas, fs)

    steps = np.diff(q)
    if np.max(steps) > 0.05 + 1e-12:
        raise GridTooCoarse("centered differencing needs grid step <= 0.05")

    def tau_of(qi: float) -> float:
        def g(t):
            return p1 ** qi * r1 ** t + p2 ** qi * r2 ** t - 1.0
        lo, hi = -100.0, 100.0
        while g(lo) < 0:
            lo *= 2
        while g(hi) > 0:
            hi *= 2
        return brentq(g, lo, hi, xtol=1e-14, rtol=8.9e-16)

    taus = np.array([tau_of(qi) for qi in q])
    alphas = (taus[2:] - taus[:-2]) / (q[2:] - q[:-2])
    q_in = q[1:-1]
    fs = q_in * alphas - taus[1:-1]
    return OracleSpectrum(q_in, alphas, fs)


def gen_farey(Q: int) -> CantorDust:
    """All reduced fractions p/q in [0,1] with denominator q <= Q."""
    if Q < 2:
        raise SpecError(f"max denominator must be >= 2, got {Q}")
    fracs = {Fraction(0), Fraction(1)}
    for den in range(2, Q + 1):
        for num in range(1, den):
            if math.gcd(num, den) == 1:
                fracs.add(Fraction(num, den))
    return CantorDust(np.array(sorted(float(f) for f in fracs)))


def gen_uniform(S: int, mode: str = "equispaced",
                seed: int = 0) -> CantorDust:
    """Uniform dust: equispaced midpoints (k+0.5)/S or S i.i.d. draws."""
    if S < 1:
        raise SpecError(f"sample size must be >= 1, got {S}")
    if mode == "equispaced":
        return CantorDust((np.arange(S) + 0.5) / S)
    if mode == "random":
        return CantorDust(np.random.default_rng(seed).random(S))
    raise SpecError(f"unknown uniform mode {mode!r}")
