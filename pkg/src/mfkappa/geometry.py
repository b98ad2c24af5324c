"""Spectrum geometry: features, shape diagnostics, regime classification.

The three regimes are read off the shape of the (alpha, f) curve:
a one-piece cap is the road-to-crisis shape, a constant-slope run inside a
one-piece spectrum marks the crisis (the slope q = f'(alpha) collapses to a
constant), and a spectrum broken into fragments separated by alpha-gaps is
the post-crisis bi-multifractal situation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NeedsSweep, TooFewPoints
from .spectrum import Spectrum


@dataclass(frozen=True)
class SpectrumFeatures:
    alpha_min: float
    alpha_max: float
    alpha_M: float        # argmax of f, ties broken toward smaller alpha
    f_max: float
    delta_alpha: float    # alpha_max - alpha_min, the width of the curve
    bisectrix_gap: float  # min over points of (alpha - f); distance to y=x

    def as_dict(self) -> dict:
        return {
            "alpha_min": self.alpha_min,
            "alpha_max": self.alpha_max,
            "alpha_M": self.alpha_M,
            "f_max": self.f_max,
            "delta_alpha": self.delta_alpha,
            "bisectrix_gap": self.bisectrix_gap,
        }


@dataclass(frozen=True)
class CapShapeResult:
    is_cap: bool
    violations: tuple[int, ...]  # indices of interior valley points
    degenerate: bool             # peak sits at either end of the curve


@dataclass(frozen=True)
class SegmentReport:
    found: bool
    run: tuple[int, int] | None = None  # inclusive index range
    slope: float | None = None          # the collapsed q = f'(alpha)
    residual: float | None = None       # max |deviation| from the fitted line

    def as_dict(self) -> dict:
        return {"found": self.found, "run": list(self.run) if self.run else None,
                "slope": self.slope, "residual": self.residual}


@dataclass(frozen=True)
class IsolatedPoint:
    index: int
    alpha: float
    f: float
    on_axis: bool  # f == 0: a lone box, not an embryonic second spectrum

    def as_dict(self) -> dict:
        return {"index": self.index, "alpha": self.alpha, "f": self.f,
                "on_axis": self.on_axis}


@dataclass(frozen=True)
class FragmentReport:
    fragments: tuple[tuple[int, int], ...]  # inclusive index ranges
    gaps: tuple[float, ...]                 # alpha widths between fragments
    isolated_points: tuple[IsolatedPoint, ...]
    gap_threshold: float

    def as_dict(self) -> dict:
        return {
            "fragments": [list(r) for r in self.fragments],
            "gaps": list(self.gaps),
            "isolated_points": [p.as_dict() for p in self.isolated_points],
            "gap_threshold": self.gap_threshold,
        }


@dataclass(frozen=True)
class GeometryConfig:
    residual_tol: float = 0.02
    min_run: int | None = None        # default: max(4, ceil(n/2))
    gap_threshold: float | None = None  # default: see default_gap_threshold
    tol: float = 0.2                  # cap-shape noise tolerance in f units

    def as_dict(self) -> dict:
        return {"residual_tol": self.residual_tol, "min_run": self.min_run,
                "gap_threshold": self.gap_threshold, "tol": self.tol}


@dataclass(frozen=True)
class RegimeReport:
    regime: str  # PreCrisis | Crisis | PostCrisisBiMultifractal | Indeterminate
    features: SpectrumFeatures
    segment: SegmentReport
    fragmentation: FragmentReport
    cap: CapShapeResult | None
    config: dict = field(default_factory=dict)  # resolved thresholds used

    def as_dict(self) -> dict:
        return {
            "regime": self.regime,
            "features": self.features.as_dict(),
            "segment": self.segment.as_dict(),
            "fragmentation": self.fragmentation.as_dict(),
            "cap_shaped": None if self.cap is None else self.cap.is_cap,
            "config": self.config,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent)


def _sorted_points(spectrum: Spectrum):
    order = np.argsort(spectrum.alphas, kind="stable")
    return spectrum.alphas[order], spectrum.fs[order]


def features(spectrum: Spectrum) -> SpectrumFeatures:
    """Extract the curve summary; at equal f_max the smaller alpha wins."""
    alphas, fs = _sorted_points(spectrum)
    k = int(np.argmax(fs))  # argmax takes the first max: the smaller alpha
    return SpectrumFeatures(
        alpha_min=float(alphas[0]),
        alpha_max=float(alphas[-1]),
        alpha_M=float(alphas[k]),
        f_max=float(fs[k]),
        delta_alpha=float(alphas[-1] - alphas[0]),
        bisectrix_gap=float(np.min(alphas - fs)),
    )


def compare_sweep(features_list) -> dict:
    """Signed feature deltas across a box-count sweep (first to last entry).

    Flags approaching_bisectrix when the gap to the line y=x strictly
    decreases along the whole sweep: the left-and-up shift of the curve.
    """
    if len(features_list) < 2:
        raise NeedsSweep("trend comparison needs >= 2 feature sets")
    first, last = features_list[0], features_list[-1]
    gaps = [f.bisectrix_gap for f in features_list]
    return {
        "delta_alpha_min": last.alpha_min - first.alpha_min,
        "delta_alpha_M": last.alpha_M - first.alpha_M,
        "delta_f_max": last.f_max - first.f_max,
        "delta_bisectrix_gap": last.bisectrix_gap - first.bisectrix_gap,
        "approaching_bisectrix": all(b < a for a, b in zip(gaps, gaps[1:])),
    }


def cap_shape_check(spectrum: Spectrum, tol: float = 0.02) -> CapShapeResult:
    """Single-peak test: no interior point sits more than tol below both
    neighbours. A peak at either end passes but is flagged degenerate."""
    alphas, fs = _sorted_points(spectrum)
    n = fs.size
    if n < 3:
        raise TooFewPoints(f"cap test needs >= 3 points, got {n}")
    violations = [j for j in range(1, n - 1)
                  if fs[j] < fs[j - 1] - tol and fs[j] < fs[j + 1] - tol]
    k = int(np.argmax(fs))
    return CapShapeResult(is_cap=not violations,
                          violations=tuple(violations),
                          degenerate=k in (0, n - 1))


def _line_fit_residual(alphas, fs):
    """Least-squares line through the points; returns (slope, max |resid|)."""
    coef = np.polyfit(alphas, fs, 1)
    resid = fs - np.polyval(coef, alphas)
    return float(coef[0]), float(np.max(np.abs(resid)))


def detect_segment(spectrum: Spectrum, residual_tol: float = 0.02,
                   min_run: int = 4) -> SegmentReport:
    """Longest run of consecutive points collinear within residual_tol.

    Max-residual against the least-squares line encodes "f'(alpha) constant"
    robustly on the short point lists this estimator produces.
    """
    min_run = max(4, min_run)
    alphas, fs = _sorted_points(spectrum)
    n = fs.size
    best = None
    for i in range(n):
        for j in range(i + min_run - 1, n):
            slope, resid = _line_fit_residual(alphas[i:j + 1], fs[i:j + 1])
            if resid <= residual_tol:
                length = j - i + 1
                if best is None or length > best[0] or \
                        (length == best[0] and resid < best[3]):
                    best = (length, i, j, resid, slope)
    if best is None:
        return SegmentReport(found=False)
    _, i, j, resid, slope = best
    return SegmentReport(found=True, run=(i, j), slope=slope, residual=resid)


def detect_fragments(spectrum: Spectrum,
                     gap_threshold: float) -> FragmentReport:
    """Split the alpha-sorted points wherever consecutive spacing exceeds
    gap_threshold; size-1 fragments become isolated points, flagged on-axis
    when their f is zero."""
    if gap_threshold <= 0:
        raise ValueError("gap_threshold must be positive")
    alphas, fs = _sorted_points(spectrum)
    n = alphas.size
    frags = []
    start = 0
    gaps = []
    for k in range(1, n):
        spacing = alphas[k] - alphas[k - 1]
        if spacing > gap_threshold:
            frags.append((start, k - 1))
            gaps.append(float(spacing))
            start = k
    frags.append((start, n - 1))
    isolated = tuple(
        IsolatedPoint(index=i, alpha=float(alphas[i]), f=float(fs[i]),
                      on_axis=bool(fs[i] <= 1e-12))
        for i, j in frags if i == j)
    return FragmentReport(fragments=tuple(frags), gaps=tuple(gaps),
                          isolated_points=isolated,
                          gap_threshold=gap_threshold)


def default_gap_threshold(spectrum: Spectrum) -> float:
    """Widest spacing still counted as connected, by default.

    Anything under 1.5 bin widths is quantization, not a gap, so the floor
    is 1.5 * epsilon_alpha when the bin width is known; the absolute floor
    of 0.1 keeps sub-0.1 jitter in sparse noise tails from splitting a
    spectrum (alpha lives on an O(1) scale).
    """
    alphas, _ = _sorted_points(spectrum)
    if alphas.size < 2:
        return math.inf
    eps_a = spectrum.params.epsilon_alpha
    if eps_a > 0:
        return max(1.5 * eps_a, 0.1)
    med = float(np.median(np.diff(alphas)))
    return max(3.0 * med, 0.1) if med > 0 else math.inf


def classify(spectrum: Spectrum,
             config: GeometryConfig = GeometryConfig()) -> RegimeReport:
    """Decision rule: >= 2 fragments is post-crisis bi-multifractality; one
    fragment with a collinear run is crisis; one cap-shaped fragment without
    a run is pre-crisis; anything else is indeterminate."""
    n = len(spectrum)
    gap_threshold = (config.gap_threshold if config.gap_threshold is not None
                     else default_gap_threshold(spectrum))
    min_run = (config.min_run if config.min_run is not None
               else max(4, math.ceil(n / 2)))
    frag = detect_fragments(spectrum, gap_threshold)
    seg = (detect_segment(spectrum, config.residual_tol, min_run)
           if n >= min_run else SegmentReport(found=False))
    cap = None
    if n >= 3:
        cap = cap_shape_check(spectrum, config.tol)

    if len(frag.fragments) >= 2:
        regime = "PostCrisisBiMultifractal"
    elif seg.found:
        regime = "Crisis"
    elif cap is not None and cap.is_cap:
        regime = "PreCrisis"
    else:
        regime = "Indeterminate"

    resolved = {"residual_tol": config.residual_tol, "min_run": min_run,
                "gap_threshold": gap_threshold, "tol": config.tol}
    return RegimeReport(regime=regime, features=features(spectrum),
                        segment=seg, fragmentation=frag, cap=cap,
                        config=resolved)
