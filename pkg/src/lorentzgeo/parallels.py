"""Timelike lines and rays on sampled spaces.

Covers the line/geodesic witness on uniform parameter grids, weak and
synchronised parallelism, the constant-separation profile F(c) between
parallel lines with its one-sided derivative, flat-strip reconstruction
with explicit planar coordinates, asymptotic-ray extraction with
convergence diagnostics, and the zero-angle concatenation test.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DomainError,
    NotInPast,
    ShapeError,
    StripInconsistent,
    WindowExhausted,
)
from .modelspace import Kappa
from .sampled import (
    Chain,
    SampledSpace,
    _chain_from_vertex,
    estimate_angle,
    geodesic_between,
)
from .tolerances import DEFAULT_GEO_TOL, DEFAULT_TOL_ANGLE, DEFAULT_TOL_TAU, scaled


@dataclass(frozen=True)
class LineSample:
    """A line or ray sampled on a uniform parameter grid t0 + k*step."""

    points: np.ndarray
    t0: float
    step: float
    kind: str = "line"  # line | future-ray | past-ray
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=int))
        if self.step <= 0:
            raise ShapeError("line step must be positive")
        if self.kind not in ("line", "future-ray", "past-ray"):
            raise ShapeError(f"unknown line kind {self.kind!r}")

    @property
    def params(self) -> np.ndarray:
        return self.t0 + self.step * np.arange(len(self.points))

    def shifted(self, dt: float) -> "LineSample":
        """Same sampled points, parameters shifted by dt."""
        return LineSample(self.points, self.t0 + dt, self.step, self.kind, self.label)

    def point_at(self, t: float) -> int:
        k = round((t - self.t0) / self.step)
        if not (0 <= k < len(self.points)) or abs(self.t0 + k * self.step - t) > 1e-9 * (
            1 + abs(t)
        ):
            raise KeyError(f"parameter {t} not on the grid of {self.label or 'line'}")
        return int(self.points[k])

    def __len__(self) -> int:
        return len(self.points)


def is_line(space: SampledSpace, line: LineSample, tol: float = DEFAULT_GEO_TOL):
    """Geodesic witness on the whole grid: tau(p_i, p_j) = (j-i)*step.

    Returns (ok, worst) where worst reports the pair with the largest
    deviation between parameter difference and sampled separation.
    """
    pts = line.points
    if len(pts) <= 1:
        return True, {"deficit": 0.0, "pair": None}
    prm = line.params
    target = prm[None, :] - prm[:, None]
    actual = space.tau[np.ix_(pts, pts)]
    upper = np.triu(np.ones_like(actual, dtype=bool), 1)
    dev = np.where(upper, target - actual, 0.0)
    worst_idx = np.unravel_index(int(np.argmax(np.abs(dev))), dev.shape)
    worst = {
        "deficit": float(dev[worst_idx]),
        "pair": (int(pts[worst_idx[0]]), int(pts[worst_idx[1]])),
        "params": (float(prm[worst_idx[0]]), float(prm[worst_idx[1]])),
    }
    ok = bool(np.all(np.abs(dev) <= tol * (1.0 + np.abs(target))))
    return ok, worst


def _index_shift_range(alpha: LineSample, beta: LineSample):
    """Integer index shifts d for which alpha_i, beta_{i+d} overlap."""
    na, nb = len(alpha), len(beta)
    return range(-(na - 1), nb)


def _offset_pairs(alpha: LineSample, beta: LineSample, d: int):
    """Overlapping index pairs (i, i+d)."""
    lo = max(0, -d)
    hi = min(len(alpha), len(beta) - d)
    if hi <= lo:
        return None
    i = np.arange(lo, hi)
    return i, i + d


def weakly_parallel_offset(space, alpha: LineSample, beta: LineSample, window: float | None = None):
    """Smallest nonnegative grid offsets realizing mutual causal precedence.

    Returns (s_ab, s_ba) with alpha(t) <= beta(t + s_ab) and
    beta(t) <= alpha(t + s_ba) on every overlapping grid parameter, or
    None when no tested offset works.  Raises WindowExhausted when a
    caller-supplied window is smaller than what the data could test.
    """
    if abs(alpha.step - beta.step) > 1e-12 * (1 + alpha.step):
        raise ShapeError("incompatible grid steps")
    h = alpha.step

    def scan(first: LineSample, second: LineSample):
        found = None
        capacity = 0.0
        for d in _index_shift_range(first, second):
            s = (second.t0 + d * h) - first.t0
            if s < -1e-12:
                continue
            pairs = _offset_pairs(first, second, d)
            if pairs is None:
                continue
            capacity = max(capacity, s)
            if window is not None and s > window:
                continue
            i, j = pairs
            if space.causal[first.points[i], second.points[j]].all():
                found = s
                break
        return found, capacity

    s_ab, cap_ab = scan(alpha, beta)
    s_ba, cap_ba = scan(beta, alpha)
    if s_ab is not None and s_ba is not None:
        return float(s_ab), float(s_ba)
    if window is not None and window < max(cap_ab, cap_ba):
        raise WindowExhausted(
            f"no offset found up to window {window}; data allows offsets up to "
            f"{max(cap_ab, cap_ba)}"
        )
    return None


@dataclass
class SyncFit:
    t0: float
    c0: float
    max_tau_error: float
    causal_mismatches: int
    worst: dict


def sync_parallel_fit(space, alpha: LineSample, beta: LineSample, tol: float = DEFAULT_TOL_TAU):
    """Fit the synchronised-parallel normal form between two lines.

    Seeks (t0, c0) with tau(alpha(s), beta(t)) = sqrt((t + t0 - s)^2 - c0^2)
    and causality exactly at t + t0 - s >= c0, validated on every sampled
    pair.  Returns a SyncFit or None (with the worst witness unavailable
    when the regression itself is degenerate).
    """
    pa, pb = alpha.points, beta.points
    A, B = alpha.params, beta.params
    tau = space.tau[np.ix_(pa, pb)]
    causal = space.causal[np.ix_(pa, pb)]
    u = B[None, :] - A[:, None]
    chron = tau > 0
    if chron.sum() < 2:
        return None
    # tau^2 - u^2 = 2 u t0 + (t0^2 - c0^2) on chronological pairs
    x = 2.0 * u[chron]
    yv = tau[chron] ** 2 - u[chron] ** 2
    Amat = np.column_stack([x, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(Amat, yv, rcond=None)
    t0 = float(coef[0])
    c0sq = t0 * t0 - float(coef[1])
    if c0sq < -scaled(tol, 1.0):
        return None
    c0 = math.sqrt(max(c0sq, 0.0))

    delta = u + t0
    inside = delta >= c0 - scaled(tol, c0)
    pred = np.where(inside, np.sqrt(np.maximum(delta * delta - c0 * c0, 0.0)), 0.0)
    err = np.abs(tau - pred)
    worst_idx = np.unravel_index(int(np.argmax(err)), err.shape)
    mism = int(np.count_nonzero(causal != inside))
    fit = SyncFit(
        t0=t0,
        c0=c0,
        max_tau_error=float(err.max()),
        causal_mismatches=mism,
        worst={
            "pair": (int(pa[worst_idx[0]]), int(pb[worst_idx[1]])),
            "tau": float(tau[worst_idx]),
            "predicted": float(pred[worst_idx]),
        },
    )
    if fit.max_tau_error > scaled(tol, float(np.max(tau))) or mism:
        return None
    return fit


@dataclass
class StripProfile:
    """Separation profile between weakly parallel lines.

    F[k] is the mean of tau(alpha(t), beta(t + offsets[k])) over the
    overlap, max_dev[k] its worst deviation from the mean (constancy),
    Fp[k] the one-sided derivative estimate.
    """

    offsets: np.ndarray
    F: np.ndarray
    Fp: np.ndarray
    max_dev: np.ndarray
    angle_probe: dict = field(default_factory=dict)

    def value_at(self, c: float):
        k = int(np.argmin(np.abs(self.offsets - c)))
        return self.F[k], self.Fp[k]


def strip_profile(space, alpha: LineSample, beta: LineSample, offsets=None, kappa=Kappa(0.0), angle_probes: int = 0):
    """Per-offset constancy statistics of the separation profile.

    The derivative F'(c+) is taken from a one-sided three-point stencil
    applied to F^2 (a quadratic for synchronised flat strips, hence exact
    there) and divided by 2F.
    """
    h = alpha.step
    if abs(beta.step - h) > 1e-12 * (1 + h):
        raise ShapeError("incompatible grid steps")
    cands = []
    for d in _index_shift_range(alpha, beta):
        s = (beta.t0 + d * h) - alpha.t0
        pairs = _offset_pairs(alpha, beta, d)
        if s < -1e-12 or pairs is None:
            continue
        cands.append((s, pairs))
    cands.sort(key=lambda c: c[0])
    if offsets is not None:
        wanted = np.asarray(offsets, dtype=float)
        cands = [
            (s, p) for s, p in cands if np.any(np.abs(wanted - s) <= 1e-9 * (1 + s))
        ]
    if len(cands) < 3:
        raise WindowExhausted("need at least three offsets for the profile")
    offs = np.array([s for s, _ in cands])
    F = np.empty(len(cands))
    max_dev = np.empty(len(cands))
    for k, (s, (i, j)) in enumerate(cands):
        vals = space.tau[alpha.points[i], beta.points[j]]
        F[k] = vals.mean()
        max_dev[k] = np.abs(vals - F[k]).max() if len(vals) > 1 else 0.0

    G = F * F
    Fp = np.full(len(F), np.nan)
    for k in range(len(F) - 2):
        dh = offs[k + 1] - offs[k]
        gp = (-3.0 * G[k] + 4.0 * G[k + 1] - G[k + 2]) / (2.0 * dh)
        Fp[k] = gp / (2.0 * F[k]) if F[k] > 0 else np.nan

    probe = {}
    if angle_probes > 0:
        probe = _angle_constancy_probe(space, alpha, beta, offs, F, kappa, angle_probes)
    return StripProfile(offsets=offs, F=F, Fp=Fp, max_dev=max_dev, angle_probe=probe)


def _angle_constancy_probe(space, alpha, beta, offs, F, kappa, n_probes):
    """Angle of the hinge at beta(t) toward alpha(t - c) and along beta."""
    active = np.flatnonzero(F > 1e-9)
    if not active.size:
        return {}
    c = float(offs[active[0]])
    h = beta.step
    values = []
    A, B = alpha.params, beta.params
    for t in np.linspace(B[1], B[-2], n_probes):
        tb = B[np.argmin(np.abs(B - t))]
        ta = tb - c
        k = np.argmin(np.abs(A - ta))
        if abs(A[k] - ta) > 1e-9 * (1 + abs(ta)):
            continue
        pa = int(alpha.points[k])
        ib = int(round((tb - beta.t0) / h))
        if ib + 1 >= len(beta):
            continue
        pb = int(beta.points[ib])
        if space.tau[pa, pb] <= 0:
            continue
        past = geodesic_between(space, pa, pb)
        ahead = Chain(beta.points[ib : ib + 2], np.array([0.0, h]))
        try:
            est = estimate_angle(space, past, ahead, pb, kappa)
            values.append(est.value)
        except DomainError:
            continue
    if not values:
        return {}
    return {
        "offset": c,
        "values": values,
        "deviation": float(max(values) - min(values)),
    }


@dataclass
class FlatStrip:
    shift: float
    c0: float
    width: float
    max_tau_error: float
    causal_mismatches: int
    offset_used: float

    def embed_alpha(self, t):
        return (t, 0.0)

    def embed_beta(self, t):
        return (t + self.shift, self.width)


def flat_strip_reconstruct(space, alpha: LineSample, beta: LineSample, tol: float = DEFAULT_TOL_TAU):
    """Planar embedding of the strip spanned by two parallel lines.

    The spatial separation comes from the profile identity
    width^2 = (dF^2/dc / 2)^2 - F^2, which must agree with the
    synchronised spacelike distance; disagreement (curvature along the
    strip) raises StripInconsistent.
    """
    fit = sync_parallel_fit(space, alpha, beta, tol)
    if fit is None:
        raise StripInconsistent("lines do not fit the synchronised normal form")
    profile = strip_profile(space, alpha, beta)
    active = np.flatnonzero(profile.F > scaled(tol, 0.0))
    width = None
    c_used = float("nan")
    for k in active:
        if k + 2 < len(profile.F) and np.all(profile.F[k : k + 3] > 0):
            dh = profile.offsets[k + 1] - profile.offsets[k]
            G = profile.F**2
            gp = (-3.0 * G[k] + 4.0 * G[k + 1] - G[k + 2]) / (2.0 * dh)
            wsq = (gp / 2.0) ** 2 - G[k]
            if wsq < -scaled(tol, 1.0):
                raise StripInconsistent(f"negative squared width {wsq} at offset {profile.offsets[k]}")
            width = math.sqrt(max(wsq, 0.0))
            c_used = float(profile.offsets[k])
            break
    if width is None:
        width = fit.c0  # degenerate strip: no active offsets (same line)
        c_used = float(profile.offsets[0]) if len(profile.offsets) else 0.0
    if abs(width - fit.c0) > scaled(tol * 10, fit.c0) + 1e-6:
        raise StripInconsistent(
            f"width identity fails: profile width {width} vs spacelike distance {fit.c0}"
        )

    # validate the explicit embedding on all sampled pairs
    A, B = alpha.params, beta.params
    coords = {}
    for k, p in enumerate(alpha.points):
        coords.setdefault(int(p), (A[k], 0.0))
    for k, p in enumerate(beta.points):
        coords.setdefault(int(p), (B[k] + fit.t0, width))
    pts = list(coords)
    arr = np.array([coords[p] for p in pts])
    dt = arr[None, :, 0] - arr[:, None, 0]
    dx = arr[None, :, 1] - arr[:, None, 1]
    q2 = dt * dt - dx * dx
    scale = dt * dt + dx * dx + 1e-300
    null = np.abs(q2) <= 1e-12 * scale
    model_tau = np.where((q2 > 0) & (dt > 0) & ~null, np.sqrt(np.maximum(q2, 0.0)), 0.0)
    model_causal = (q2 >= -1e-12 * scale) & (dt >= 0)
    actual_tau = space.tau[np.ix_(pts, pts)]
    actual_causal = space.causal[np.ix_(pts, pts)]
    err = float(np.abs(actual_tau - model_tau).max())
    mism = int(np.count_nonzero(actual_causal != model_causal))
    return FlatStrip(
        shift=fit.t0,
        c0=fit.c0,
        width=width,
        max_tau_error=err,
        causal_mismatches=mism,
        offset_used=c_used,
    )


# ---------------------------------------------------------------------------
# Asymptotic rays.
# ---------------------------------------------------------------------------


@dataclass
class RayReport:
    chain: Chain
    horizons: list
    drifts: list
    ratios: list
    prefix: float
    stabilized: bool


def _comparison_offsets(space, anchor_past, anchor_future, points):
    """Trilaterate points into the plane between two anchors.

    Places anchor_past at the origin and anchor_future on the time axis;
    returns the invariant spatial offsets of the points.
    """
    T = space.tau[anchor_past, anchor_future]
    d1 = space.tau[anchor_past, points]
    d2 = space.tau[points, anchor_future]
    tbar = (T * T + d1 * d1 - d2 * d2) / (2.0 * T)
    return np.sqrt(np.maximum(tbar * tbar - d1 * d1, 0.0))


def asymptotic_ray(
    space,
    alpha: LineSample,
    p: int,
    horizons,
    geo_tol: float = DEFAULT_GEO_TOL,
    prefix_fraction: float = 0.5,
) -> RayReport:
    """Geodesics from p to ever-later line points, with drift diagnostics.

    The drift between consecutive approximants is the largest change of
    the comparison-plane spatial offset (anchored at p and at the later
    line point) across parameter-matched prefix points; it tends to zero
    exactly when the approximants stabilize toward the parallel ray.
    """
    horizons = sorted(horizons)
    if len(horizons) < 2:
        raise ValueError("need at least two horizon parameters")
    targets = []
    for t in horizons:
        idx = alpha.point_at(t)
        if space.tau[p, idx] <= 0:
            raise NotInPast(f"point {p} is not in the past of the line at parameter {t}")
        targets.append(idx)
    chains = [geodesic_between(space, p, idx, geo_tol) for idx in targets]
    prefix = prefix_fraction * chains[0].total
    drifts = []
    for a, b, far in zip(chains, chains[1:], targets[1:]):
        pa = a.points[(a.params > 0) & (a.params <= prefix)]
        sa = a.params[(a.params > 0) & (a.params <= prefix)]
        pb = b.points[(b.params > 0)]
        sb = b.params[(b.params > 0)]
        if not len(pa) or not len(pb):
            drifts.append(float("nan"))
            continue
        xa = _comparison_offsets(space, p, far, pa)
        xb_all = _comparison_offsets(space, p, far, pb)
        nearest = np.abs(sb[None, :] - sa[:, None]).argmin(axis=1)
        drifts.append(float(np.abs(xa - xb_all[nearest]).max()))
    ratios = [
        drifts[k + 1] / drifts[k]
        for k in range(len(drifts) - 1)
        if drifts[k] and np.isfinite(drifts[k]) and np.isfinite(drifts[k + 1])
    ]
    finite = [d for d in drifts if np.isfinite(d)]
    stabilized = len(finite) >= 2 and finite[-1] <= finite[0]
    last = chains[-1]
    keep = last.params <= max(prefix, last.params[1] if len(last) > 1 else prefix)
    keep[0] = True
    truncated = Chain(last.points[keep], last.params[keep]) if keep.sum() >= 2 else last
    return RayReport(
        chain=truncated,
        horizons=list(horizons),
        drifts=drifts,
        ratios=ratios,
        prefix=float(prefix),
        stabilized=bool(stabilized),
    )


def concat_angle(
    space,
    beta_minus: Chain,
    beta_plus: Chain,
    p: int,
    kappa=Kappa(0.0),
    tol_angle: float = DEFAULT_TOL_ANGLE,
    geo_tol: float = DEFAULT_GEO_TOL,
):
    """Angle between a past and a future chain at p, and the line test.

    Returns (angle, is_line, estimate): is_line checks the geodesic
    witness across the concatenation, which the zero-angle criterion
    predicts to hold exactly when the angle vanishes.
    """
    est = estimate_angle(space, beta_minus, beta_plus, p, kappa, tol_angle=tol_angle)
    pts_m, s_m, o_m = _chain_from_vertex(beta_minus, p)
    pts_p, s_p, o_p = _chain_from_vertex(beta_plus, p)
    if o_m == o_p:
        raise DomainError("concatenation needs one past- and one future-directed chain")
    through = np.maximum(
        space.tau[np.ix_(pts_m, pts_p)], space.tau[np.ix_(pts_p, pts_m)].T
    )
    want = s_m[:, None] + s_p[None, :]
    ok = bool(np.all(np.abs(through - want) <= geo_tol * (1.0 + want)))
    return est.value, ok, est
