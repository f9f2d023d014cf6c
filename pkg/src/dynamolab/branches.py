"""Eigenvalue branch tracking under profile scaling and exceptional-point bisection.

A sweep scales a base profile, alpha_C(r) = C * alpha*(r), solves the full
spectrum at each C, and follows the leading branches by nearest-neighbor
matching in the complex plane.  Where a matched step moves a branch farther
than a quarter of the distance to its neighbors, the step is halved (up to six
times) before matching, so branch identities cannot silently jump between
well-separated modes.  A pair of branches that collides and turns into a
conjugate pair is the tracked phenomenon, not a matching failure: such pairs
are exempt from the refinement criterion and are recorded as events.

locate_ep bisects the signed indicator g(C) = max|Im| - |Re gap|/2 of a
selected eigenvalue pair; g changes sign exactly where the pair switches
between two real branches and one conjugate pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import BracketError, ConfigurationError, TrackingError
from .grid import build_grid
from .operator import assemble
from .profiles import AlphaProfile
from .spectral import eigen

MatrixFamily = Callable[[float], np.ndarray]

MAX_REFINEMENTS = 6
MOVE_GAP_RATIO = 0.25


def dynamo_family(base: AlphaProfile, l: int, n: int) -> MatrixFamily:
    """Matrix family C -> dynamo matrix for the scaled profile C * alpha*."""
    grid = build_grid(n)

    def family(c: float) -> np.ndarray:
        return assemble(grid, base.scaled(float(c)), l).matrix

    return family


@dataclass(frozen=True)
class SweepConfig:
    base: AlphaProfile
    c_min: float
    c_max: float
    steps: int
    l: int = 1
    n: int = 100
    track_count: int = 6
    pair_tol: float = 1e-8

    def __post_init__(self) -> None:
        if not self.c_min < self.c_max:
            raise ConfigurationError(f"need c_min < c_max, got [{self.c_min}, {self.c_max}]")
        if self.steps < 2:
            raise ConfigurationError(f"need at least 2 sweep steps, got {self.steps}")
        if self.track_count < 1:
            raise ConfigurationError("track_count must be positive")
        if self.pair_tol <= 0:
            raise ConfigurationError("pair_tol must be positive")


@dataclass(frozen=True)
class BranchEvent:
    c_lo: float
    c_hi: float
    branches: Tuple[int, int]
    kind: str  # RealToComplex | ComplexToReal | Crossing


@dataclass(frozen=True)
class BranchTrace:
    c_values: np.ndarray
    spectra: list
    branches: np.ndarray  # (track_count, steps) complex
    events: list
    step_bounds: np.ndarray  # per-interval recorded movement bound
    pair_tol: float

    @property
    def track_count(self) -> int:
        return self.branches.shape[0]

    def branch(self, i: int) -> np.ndarray:
        return self.branches[i]


def _greedy_assign(prev: np.ndarray, vals: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Injective nearest-neighbor assignment, globally greedy and deterministic."""
    t = prev.shape[0]
    dist = np.abs(prev[:, None] - vals[None, :])
    assigned = np.full(t, -1, dtype=int)
    used = np.zeros(vals.shape[0], dtype=bool)
    for _ in range(t):
        masked = dist.copy()
        masked[assigned != -1, :] = np.inf
        masked[:, used] = np.inf
        i, j = np.unravel_index(np.argmin(masked), masked.shape)
        assigned[i] = j
        used[j] = True
    matched = vals[assigned]
    return matched, np.abs(matched - prev)


def _transition_pairs(prev: np.ndarray, matched: np.ndarray, pair_tol: float) -> set:
    """Branch index pairs that switch between two-real and conjugate-pair states."""
    in_band_a = np.abs(prev.imag) <= pair_tol
    in_band_b = np.abs(matched.imag) <= pair_tol
    scale = 1.0 + np.max(np.abs(matched))
    pairs = set()
    t = prev.shape[0]
    for i in range(t):
        for j in range(i + 1, t):
            if in_band_a[i] != in_band_b[i] and in_band_a[j] != in_band_b[j]:
                # conjugate partners on whichever side is complex
                side = matched if not in_band_b[i] else prev
                if abs(side[i] - np.conj(side[j])) <= 1e-6 * scale:
                    pairs.add((i, j))
    return pairs


def _advance(
    spectrum_at: Callable[[float], np.ndarray],
    prev: np.ndarray,
    c_a: float,
    c_b: float,
    pair_tol: float,
    depth: int = 0,
) -> Tuple[np.ndarray, np.ndarray]:
    """Match branches from c_a to c_b, refining the step when movement is ambiguous."""
    vals = spectrum_at(c_b)
    matched, movement = _greedy_assign(prev, vals)
    exempt = _transition_pairs(prev, matched, pair_tol)
    floor = 1e-9 * (1.0 + np.max(np.abs(prev)))
    t = prev.shape[0]
    gaps = np.full(t, np.inf)
    for i in range(t):
        for j in range(t):
            if j == i or (min(i, j), max(i, j)) in exempt:
                continue
            d = abs(prev[i] - prev[j])
            if d > floor:
                gaps[i] = min(gaps[i], d)
    violating = [i for i in range(t) if movement[i] > MOVE_GAP_RATIO * gaps[i]]
    if not violating:
        return matched, movement
    if depth >= MAX_REFINEMENTS:
        # last resort: treat each violating branch together with its nearest
        # neighbor as a colliding pair losing individual identity; accept when
        # the pair moves as a set without approaching any third branch
        for i in violating:
            others = [j for j in range(t) if j != i]
            if not others:
                continue
            j = min(others, key=lambda j: abs(prev[j] - prev[i]))
            pair_prev = np.array([prev[i], prev[j]])
            pair_new = np.array([matched[i], matched[j]])
            hausdorff = max(
                np.min(np.abs(pair_new[:, None] - pair_prev[None, :]), axis=1).max(),
                np.min(np.abs(pair_prev[:, None] - pair_new[None, :]), axis=1).max(),
            )
            third = [abs(prev[k] - prev[i]) for k in range(t) if k not in (i, j)]
            third_gap = min(third) if third else np.inf
            if hausdorff > MOVE_GAP_RATIO * third_gap:
                raise TrackingError(
                    f"branch matching unresolved on C-interval [{c_a!r}, {c_b!r}] "
                    f"after {MAX_REFINEMENTS} refinements (branch {i}, movement "
                    f"{movement[i]:.3e}, gap {gaps[i]:.3e})"
                )
        return matched, movement
    c_m = 0.5 * (c_a + c_b)
    mid, mv1 = _advance(spectrum_at, prev, c_a, c_m, pair_tol, depth + 1)
    out, mv2 = _advance(spectrum_at, mid, c_m, c_b, pair_tol, depth + 1)
    return out, mv1 + mv2


def sweep(cfg: SweepConfig, family: Optional[MatrixFamily] = None) -> BranchTrace:
    """Track the leading eigenvalue branches of a matrix family over a C range.

    The family defaults to the dynamo matrices of the scaled base profile; any
    callable C -> square matrix may be substituted (test hook for families
    with known exceptional points).
    """
    if family is None:
        family = dynamo_family(cfg.base, cfg.l, cfg.n)
    cache: dict = {}

    def spectrum_at(c: float) -> np.ndarray:
        key = float(c)
        if key not in cache:
            cache[key] = eigen(family(key)).eigenvalues
        return cache[key]

    cs = np.linspace(cfg.c_min, cfg.c_max, cfg.steps)
    first = spectrum_at(cs[0])
    track = min(cfg.track_count, first.shape[0])
    branches = np.empty((track, cfg.steps), dtype=complex)
    branches[:, 0] = first[:track]
    bounds = np.zeros(cfg.steps - 1)
    for k in range(cfg.steps - 1):
        matched, movement = _advance(
            spectrum_at, branches[:, k], cs[k], cs[k + 1], cfg.pair_tol
        )
        branches[:, k + 1] = matched
        bounds[k] = movement.max() * (1.0 + 1e-12) + 1e-300
    events = _collect_events(cs, branches, cfg.pair_tol)
    for arr in (cs, branches, bounds):
        arr.setflags(write=False)
    return BranchTrace(
        c_values=cs,
        spectra=[spectrum_at(c) for c in cs],
        branches=branches,
        events=events,
        step_bounds=bounds,
        pair_tol=cfg.pair_tol,
    )


def _collect_events(cs: np.ndarray, branches: np.ndarray, pair_tol: float) -> list:
    events = []
    t, steps = branches.shape
    for k in range(steps - 1):
        a = branches[:, k]
        b = branches[:, k + 1]
        in_a = np.abs(a.imag) <= pair_tol
        in_b = np.abs(b.imag) <= pair_tol
        seen = set()
        scale = 1.0 + np.max(np.abs(b))
        for i in range(t):
            if i in seen or in_a[i] == in_b[i]:
                continue
            side = b if not in_b[i] else a
            partners = [
                j
                for j in range(t)
                if j != i and j not in seen and in_a[j] != in_b[j] and in_a[j] == in_a[i]
            ]
            if not partners:
                continue
            j = min(partners, key=lambda j: abs(side[i] - np.conj(side[j])))
            if abs(side[i] - np.conj(side[j])) > 1e-6 * scale:
                continue
            kind = "RealToComplex" if in_a[i] else "ComplexToReal"
            events.append(BranchEvent(float(cs[k]), float(cs[k + 1]), (min(i, j), max(i, j)), kind))
            seen.update((i, j))
        contact_tol = 1e-8 * scale
        for i in range(t):
            for j in range(i + 1, t):
                if (i, j) in seen or i in seen or j in seen:
                    continue
                if in_a[i] and in_a[j] and in_b[i] and in_b[j]:
                    da = a[i].real - a[j].real
                    db = b[i].real - b[j].real
                    # order exchange, or two real branches entering contact at
                    # the interval end (value-only matching relabels colliding
                    # branches, so contact is the observable signature)
                    exchanged = da * db < 0
                    entering_contact = abs(db) <= contact_tol < abs(da)
                    if exchanged or entering_contact:
                        events.append(
                            BranchEvent(float(cs[k]), float(cs[k + 1]), (i, j), "Crossing")
                        )
    return events


def _closest_pair(vals: np.ndarray) -> np.ndarray:
    if vals.shape[0] == 2:
        return vals
    d = np.abs(vals[:, None] - vals[None, :]) + np.diag(np.full(vals.shape[0], np.inf))
    i, j = np.unravel_index(np.argmin(d), d.shape)
    return vals[[min(i, j), max(i, j)]]


def locate_ep(
    family: MatrixFamily,
    bracket: Tuple[float, float],
    tol_c: float,
    lambda_ref: Optional[complex] = None,
) -> Tuple[float, complex]:
    """Bisect a real <-> complex transition of one eigenvalue pair to width tol_c.

    The pair is chosen nearest to lambda_ref when given, otherwise as the
    closest mutual pair in the spectrum.  Returns the bracket midpoint and the
    mean of the coalescing pair there.
    """
    c_lo, c_hi = (float(bracket[0]), float(bracket[1]))
    if not (c_lo < c_hi):
        raise BracketError(f"bracket must be increasing, got {bracket!r}")
    if tol_c <= 0:
        raise BracketError("tol_c must be positive")

    def pair_at(c: float) -> np.ndarray:
        vals = eigen(family(c)).eigenvalues
        if lambda_ref is not None:
            idx = np.argsort(np.abs(vals - lambda_ref), kind="stable")[:2]
            return vals[np.sort(idx)]
        return _closest_pair(vals)

    def indicator(c: float) -> float:
        a, b = pair_at(c)
        return max(abs(a.imag), abs(b.imag)) - 0.5 * abs(a.real - b.real)

    g_lo = indicator(c_lo)
    g_hi = indicator(c_hi)
    if g_lo == 0.0 or g_hi == 0.0 or (g_lo > 0) == (g_hi > 0):
        raise BracketError(
            f"bracket ({c_lo}, {c_hi}) does not straddle a real/complex transition "
            f"(indicator {g_lo:.3e} and {g_hi:.3e})"
        )
    while c_hi - c_lo > tol_c:
        c_m = 0.5 * (c_lo + c_hi)
        g_m = indicator(c_m)
        if g_m == 0.0:
            c_lo = c_m - 0.25 * tol_c
            c_hi = c_m + 0.25 * tol_c
            break
        if (g_m > 0) == (g_lo > 0):
            c_lo, g_lo = c_m, g_m
        else:
            c_hi, g_hi = c_m, g_m
    c_star = 0.5 * (c_lo + c_hi)
    pair = pair_at(c_star)
    return c_star, complex(np.mean(pair))
