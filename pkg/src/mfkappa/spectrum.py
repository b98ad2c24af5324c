"""Histogram-method multifractal spectrum at a single box scale.

Per occupied box, the concentration alpha = ln(mu_i)/ln(eps_l); the spectrum
collects alphas into A equal-width bins and converts bin counts to dimensions
f = ln(N)/ln(1/eps_l). No cross-scale regression happens here: one spectrum
per box count B, with sweep_boxes exposing scale sensitivity instead.

Sizing discipline: the sample scale, box scale and bin scale must stay
separated, S >= B^2 and B >= A^2, with a tolerated band up to B <= 2*sqrt(S).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import FormatError, SizingViolation, TooFewSamples
from .measure import CantorDust, NaturalMeasure, atomic_write, cover


class SizingStatus(str, Enum):
    OK = "Ok"
    WARNING = "Warning"
    VIOLATION = "Violation"


@dataclass(frozen=True)
class SizingVerdict:
    status: SizingStatus
    messages: tuple[str, ...] = ()


@dataclass(frozen=True)
class AlphaField:
    """Concentration exponent per occupied box."""

    box_indices: np.ndarray
    alphas: np.ndarray
    box_count: int

    @property
    def epsilon_l(self) -> float:
        return 1.0 / self.box_count


@dataclass(frozen=True)
class SpectrumParams:
    S: int
    B: int
    A: int
    epsilon_alpha: float
    sizing: SizingVerdict = field(
        default_factory=lambda: SizingVerdict(SizingStatus.OK))


@dataclass(frozen=True)
class Spectrum:
    """Finite (alpha, f) point list, alphas strictly increasing."""

    alphas: np.ndarray
    fs: np.ndarray
    params: SpectrumParams

    def __len__(self) -> int:
        return int(self.alphas.size)

    def points(self):
        return list(zip(self.alphas.tolist(), self.fs.tolist()))


def alpha_field(measure: NaturalMeasure) -> AlphaField:
    """Compute alpha = ln(mu)/ln(eps_l) for every occupied box."""
    occ = measure.occupied
    log_eps = math.log(measure.box_length)
    alphas = np.log(measure.mu[occ]) / log_eps
    return AlphaField(box_indices=occ, alphas=alphas,
                      box_count=measure.box_count)


def histogram_spectrum(fld: AlphaField, A: int) -> Spectrum:
    """Bin the alpha field into A equal-width bins and emit (alpha, f) points.

    Bins span [min(alpha), max(alpha)], last bin closed; a bin holding N
    boxes contributes the point (bin midpoint, ln N / ln B). Empty bins are
    omitted. If all alphas coincide the spectrum collapses to one point.
    """
    if A < 1:
        raise ValueError(f"bin count must be >= 1, got {A}")
    if fld.alphas.size == 0:
        raise ValueError("alpha field is empty")
    a_lo = float(fld.alphas.min())
    a_hi = float(fld.alphas.max())
    log_b = math.log(fld.box_count)
    if a_hi == a_lo:
        n = fld.alphas.size
        params = SpectrumParams(S=0, B=fld.box_count, A=A, epsilon_alpha=0.0)
        return Spectrum(np.array([a_lo]),
                        np.array([math.log(n) / log_b]), params)
    eps_a = (a_hi - a_lo) / A
    bins = ((fld.alphas - a_lo) / eps_a).astype(np.int64)
    np.clip(bins, 0, A - 1, out=bins)  # closed last bin
    counts = np.bincount(bins, minlength=A)
    occupied = np.flatnonzero(counts)
    mids = a_lo + (occupied + 0.5) * eps_a
    fs = np.log(counts[occupied]) / log_b
    params = SpectrumParams(S=0, B=fld.box_count, A=A, epsilon_alpha=eps_a)
    return Spectrum(mids, fs, params)


def validate_sizing(S: int, B: int, A: int) -> SizingVerdict:
    """Check the scale-separation inequalities S >= B^2 and B >= A^2.

    B up to twice sqrt(S) is tolerated as a Warning: pushing the box count
    past sqrt(S) trades smoothness for resolution but stays usable.
    """
    msgs = []
    violated = False
    if S < B * B:
        if B <= 2 * math.sqrt(S):
            msgs.append(f"B={B} exceeds sqrt(S)={math.sqrt(S):.6g}: "
                        "spectrum smoothness at risk")
        else:
            msgs.append(f"S >= B^2 violated: S={S} < B^2={B * B}")
            violated = True
    if B < A * A:
        msgs.append(f"B >= A^2 violated: B={B} < A^2={A * A}")
        violated = True
    if violated:
        return SizingVerdict(SizingStatus.VIOLATION, tuple(msgs))
    if msgs:
        return SizingVerdict(SizingStatus.WARNING, tuple(msgs))
    return SizingVerdict(SizingStatus.OK)


def auto_size(S: int) -> tuple[int, int]:
    """Pick B = floor(sqrt(S)) and A slightly below sqrt(B), floored at 3."""
    if S < 16:
        raise TooFewSamples(f"auto-sizing needs S >= 16, got {S}")
    B = math.isqrt(S)
    A = max(3, math.isqrt(B) - 1)
    return B, A


def estimate(dust: CantorDust, B: int, A: int, force: bool = False) -> Spectrum:
    """Full pipeline: cover, alpha field, histogram. Refuses sizing Violations
    unless force is set; the verdict travels in the output params."""
    verdict = validate_sizing(dust.sample_size, B, A)
    if verdict.status is SizingStatus.VIOLATION and not force:
        raise SizingViolation("; ".join(verdict.messages))
    spec = histogram_spectrum(alpha_field(cover(dust, B)), A)
    params = SpectrumParams(S=dust.sample_size, B=B, A=A,
                            epsilon_alpha=spec.params.epsilon_alpha,
                            sizing=verdict)
    return Spectrum(spec.alphas, spec.fs, params)


@dataclass(frozen=True)
class SweepEntry:
    B: int
    spectrum: Spectrum | None
    error: str | None = None


def sweep_boxes(dust: CantorDust, B_list, A: int,
                force: bool = False) -> list[SweepEntry]:
    """Estimate one spectrum per B; per-entry failures do not abort the sweep."""
    out = []
    for B in B_list:
        try:
            out.append(SweepEntry(B, estimate(dust, B, A, force=force)))
        except Exception as exc:  # recorded, not raised
            out.append(SweepEntry(B, None, f"{type(exc).__name__}: {exc}"))
    return out


# --- spectrum CSV ---------------------------------------------------------

def format_spectrum_csv(spec: Spectrum) -> str:
    p = spec.params
    lines = [
        f"# S={p.S}",
        f"# B={p.B}",
        f"# A={p.A}",
        f"# epsilon_alpha={p.epsilon_alpha!r}",
        f"# sizing={p.sizing.status.value}",
    ]
    for msg in p.sizing.messages:
        lines.append(f"# sizing_note={msg}")
    lines.append("alpha,f")
    for a, f in zip(spec.alphas, spec.fs):
        lines.append(f"{float(a)!r},{float(f)!r}")
    return "\n".join(lines) + "\n"


def write_spectrum_csv(spec: Spectrum, path) -> None:
    atomic_write(path, format_spectrum_csv(spec))


def read_spectrum_csv(path) -> Spectrum:
    meta = {}
    alphas = []
    fs = []
    saw_header = False
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                key, _, val = body.partition("=")
                meta[key.strip()] = val.strip()
                continue
            if line.lower() == "alpha,f":
                saw_header = True
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise FormatError(f"{path}:{lineno}: expected 'alpha,f' row")
            try:
                alphas.append(float(parts[0]))
                fs.append(float(parts[1]))
            except ValueError:
                raise FormatError(f"{path}:{lineno}: non-numeric row")
    if not saw_header or not alphas:
        raise FormatError(f"{path}: not a spectrum CSV")
    status = SizingStatus(meta.get("sizing", "Ok"))
    params = SpectrumParams(
        S=int(meta.get("S", 0)), B=int(meta.get("B", 0)),
        A=int(meta.get("A", 0)),
        epsilon_alpha=float(meta.get("epsilon_alpha", 0.0)),
        sizing=SizingVerdict(status))
    order = np.argsort(alphas)
    return Spectrum(np.array(alphas)[order], np.array(fs)[order], params)
