"""The splitting pipeline.

Builds product spaces (time axis crossed with a metric base) as ground
truth, extracts and classifies parallel-line families, recovers the base
distance between line classes from causal data alone, verifies the metric
axioms plus the nonpositive-curvature midpoint inequality on the recovered
base, and checks that mapping (t, class) to the sampled line point is
separation- and causality-preserving.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NotParallel, ShapeError, WindowExhausted
from .parallels import LineSample, is_line, sync_parallel_fit, weakly_parallel_offset
from .sampled import SampledSpace
from .tolerances import DEFAULT_GEO_TOL, DEFAULT_TOL_TAU, scaled


@dataclass
class MetricSampleIn:
    """Finite metric space: symmetric distance matrix plus optional midpoints."""

    dist: np.ndarray
    labels: list | None = None
    midpoints: dict = field(default_factory=dict)  # (i, j) -> midpoint index
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.dist = np.asarray(self.dist, dtype=float)
        m = self.dist.shape[0]
        if self.dist.shape != (m, m):
            raise ShapeError(f"distance matrix must be square, got {self.dist.shape}")
        if not np.allclose(self.dist, self.dist.T, atol=1e-12):
            raise ShapeError("distance matrix must be symmetric")
        if np.any(np.abs(np.diag(self.dist)) > 0):
            raise ShapeError("distance matrix must have zero diagonal")
        if np.any(self.dist < 0):
            raise ShapeError("distances must be nonnegative")

    @property
    def m(self) -> int:
        return self.dist.shape[0]

    def check_triangle_inequality(self, tol: float = 1e-12):
        d = self.dist
        for j in range(self.m):
            lhs = d[:, j][:, None] + d[j, :][None, :]
            if np.any(d > lhs + tol * (1.0 + lhs)):
                i, k = np.argwhere(d > lhs + tol * (1.0 + lhs))[0]
                return (int(i), j, int(k))
        return None


def build_product(base: MetricSampleIn, t_grid):
    """Product space over a metric base: point (k, x) has index x*T + k.

    tau((s,x),(t,y)) = sqrt((t-s)^2 - d(x,y)^2) when t - s >= d(x,y);
    causality is exactly t - s >= d(x,y).  Returns the space and the
    canonical vertical lines, one per base point.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if len(t_grid) < 2:
        raise ShapeError("t_grid needs at least two values")
    steps = np.diff(t_grid)
    if np.any(np.abs(steps - steps[0]) > 1e-12 * (1 + steps[0])):
        raise ShapeError("t_grid must be uniform")
    T = len(t_grid)
    m = base.m
    dt = t_grid[None, :] - t_grid[:, None]  # (T, T)
    d = base.dist  # (m, m)
    dt4 = dt[None, :, None, :]
    d4 = d[:, None, :, None]
    causal4 = dt4 >= d4 - 1e-15 * (1.0 + d4)
    q2 = dt4 * dt4 - d4 * d4
    tau4 = np.where(causal4 & (q2 > 0), np.sqrt(np.maximum(q2, 0.0)), 0.0)
    n = m * T
    tau = tau4.reshape(n, n)
    causal = causal4.reshape(n, n)
    labels = None
    if base.labels is not None:
        labels = [f"{x}@t={t:g}" for x in base.labels for t in t_grid]
    space = SampledSpace(
        tau=tau,
        causal=causal,
        labels=labels,
        meta={
            "generator": "product",
            "t0": float(t_grid[0]),
            "step": float(steps[0]),
            "n_times": T,
            "base_points": m,
            **base.meta,
        },
    )
    lines = [
        LineSample(
            points=np.arange(x * T, (x + 1) * T),
            t0=float(t_grid[0]),
            step=float(steps[0]),
            kind="line",
            label=f"base[{x}]",
        )
        for x in range(m)
    ]
    return space, lines


@dataclass
class LineClass:
    representative: LineSample
    members: list
    shift_to_reference: float
    c0_to_reference: float


def extract_line_classes(space, lines, reference: LineSample, tol: float = DEFAULT_TOL_TAU, geo_tol: float = DEFAULT_GEO_TOL):
    """Group lines by shift equivalence and synchronise them to a reference.

    Raises NotParallel when a line fails the geodesic witness or is not
    weakly parallel to the reference within the sampled windows.
    """
    all_lines = list(lines)
    for ln in all_lines + [reference]:
        ok, worst = is_line(space, ln, geo_tol)
        if not ok:
            raise NotParallel(f"{ln.label or 'line'} fails the line witness: {worst}")
    for ln in all_lines:
        if weakly_parallel_offset(space, reference, ln) is None:
            raise NotParallel(f"{ln.label or 'line'} is not weakly parallel to the reference")

    def same_class(l1: LineSample, l2: LineSample):
        h = l1.step
        for dshift in range(-(len(l1) - 1), len(l2)):
            lo = max(0, -dshift)
            hi = min(len(l1), len(l2) - dshift)
            if hi - lo < min(len(l1), len(l2)) // 2 + 1:
                continue
            if np.array_equal(l1.points[lo:hi], l2.points[lo + dshift : hi + dshift]):
                return True
        return False

    groups = []
    for ln in all_lines:
        for g in groups:
            if same_class(g[0], ln):
                g.append(ln)
                break
        else:
            groups.append([ln])

    classes = []
    for g in groups:
        fit = sync_parallel_fit(space, reference, g[0], tol)
        if fit is None:
            raise NotParallel(
                f"{g[0].label or 'line'} cannot be synchronised to the reference"
            )
        rep = g[0].shifted(fit.t0)
        classes.append(
            LineClass(
                representative=rep,
                members=[ln.label for ln in g],
                shift_to_reference=fit.t0,
                c0_to_reference=fit.c0,
            )
        )
    return classes


@dataclass
class BaseMetric:
    """Recovered distance matrix over synchronised line classes."""

    dS: np.ndarray
    dS_alt: np.ndarray
    witnesses: dict
    infinite_pairs: list
    step: float
    classes: list = field(default_factory=list)

    @property
    def m(self) -> int:
        return self.dS.shape[0]


def compute_dS(space, classes, tol: float = DEFAULT_TOL_TAU) -> BaseMetric:
    """Base distance between classes from the causal data.

    Primary formula: half the infimal causal window (s, t) with
    beta(s) <= alpha(0) <= beta(t); cross-checked against the infimum of
    t - s over alpha(s) <= beta(t).  The two must agree to one grid step.
    Pairs with no causal connection inside the window are flagged +inf.
    """
    reps = [c.representative for c in classes]
    m = len(reps)
    step = reps[0].step if reps else 0.0
    dS = np.zeros((m, m))
    dS_alt = np.zeros((m, m))
    witnesses = {}
    infinite = []
    for a in range(m):
        alpha = reps[a]
        k0 = int(np.argmin(np.abs(alpha.params)))
        a0 = int(alpha.points[k0])
        s0 = float(alpha.params[k0])
        for b in range(m):
            if a == b:
                continue
            beta = reps[b]
            bp = beta.params
            before = space.causal[beta.points, a0]
            after = space.causal[a0, beta.points]
            du = bp[None, :] - alpha.params[:, None]
            causal_ab = space.causal[np.ix_(alpha.points, beta.points)]
            if not before.any() or not after.any():
                dS[a, b] = np.inf
                infinite.append((a, b, "window"))
            else:
                s_star = float(bp[np.flatnonzero(before)].max())
                t_star = float(bp[np.flatnonzero(after)].min())
                dS[a, b] = 0.5 * (t_star - s_star)
                witnesses[(a, b)] = {"s": s_star, "t": t_star, "base": s0}
            if causal_ab.any():
                dS_alt[a, b] = float(du[causal_ab].min())
            else:
                dS_alt[a, b] = np.inf
    cross = np.abs(dS - dS_alt)
    cross_ok = np.all((cross <= step + scaled(tol, step)) | ~np.isfinite(dS))
    if not cross_ok:
        i, j = np.argwhere(cross > step + scaled(tol, step))[0]
        raise WindowExhausted(
            f"dS cross-check failed for classes ({i},{j}): {dS[i,j]} vs {dS_alt[i,j]}"
        )
    return BaseMetric(
        dS=dS,
        dS_alt=dS_alt,
        witnesses=witnesses,
        infinite_pairs=infinite,
        step=step,
        classes=classes,
    )


@dataclass
class Cat0Report:
    symmetry_dev: float
    triangle_violation: tuple | None
    margins: list
    min_margin: float
    checked: int
    skipped_no_midpoint: int

    @property
    def ok(self) -> bool:
        return self.triangle_violation is None and self.min_margin >= -1e-9


def verify_base_metric_cat0(dist, midpoints, tol: float = 1e-9) -> Cat0Report:
    """Metric axioms plus the nonpositive-curvature midpoint inequality.

    For each triple (x; y, z) whose midpoint m of (y, z) is available:
    d(x,m)^2 <= d(x,y)^2/2 + d(x,z)^2/2 - d(y,z)^2/4.  Margins are the
    slack of that inequality; triples without midpoints are counted and
    skipped.
    """
    if isinstance(dist, BaseMetric):
        dist = dist.dS
    d = np.asarray(dist, dtype=float)
    m = d.shape[0]
    symmetry_dev = float(np.abs(d - d.T).max())
    tri = MetricSampleIn(dist=0.5 * (d + d.T)).check_triangle_inequality(tol)
    margins = []
    skipped = 0
    mid = {}
    for (i, j), k in midpoints.items():
        mid[(i, j)] = k
        mid[(j, i)] = k
    for y in range(m):
        for z in range(y + 1, m):
            if (y, z) not in mid:
                skipped += 1
                continue
            mm = mid[(y, z)]
            for x in range(m):
                if x in (y, z):
                    continue
                margin = (
                    0.5 * d[x, y] ** 2
                    + 0.5 * d[x, z] ** 2
                    - 0.25 * d[y, z] ** 2
                    - d[x, mm] ** 2
                )
                margins.append({"triple": (x, y, z), "midpoint": mm, "margin": float(margin)})
    min_margin = min((r["margin"] for r in margins), default=0.0)
    return Cat0Report(
        symmetry_dev=symmetry_dev,
        triangle_violation=tri,
        margins=margins,
        min_margin=float(min_margin),
        checked=len(margins),
        skipped_no_midpoint=skipped,
    )


@dataclass
class EmbeddingReport:
    max_tau_error: float
    causal_agreement: float
    worst: dict | None
    pairs_checked: int
    pairs_trimmed: int
    untrimmed_max_error: float


def verify_embedding(space, classes, base: BaseMetric, trim_steps: int = 3) -> EmbeddingReport:
    """Compare sampled separations against the recovered product model.

    For synchronised representatives alpha, beta the model predicts
    tau = sqrt(max(0, (t-s)^2 - dS^2)) and causality at t - s >= dS.
    Pairs within trim_steps grid steps of the model cone are excluded
    from the stats (the inf-formula quantizes dS up by at most one step,
    which distorts exactly that band) but counted.
    """
    reps = [c.representative for c in classes]
    h = base.step
    max_err = 0.0
    untrimmed = 0.0
    worst = None
    agree = 0
    kept = 0
    trimmed = 0
    for a, alpha in enumerate(reps):
        for b, beta in enumerate(reps):
            ds = base.dS[a, b] if a != b else 0.0
            du = beta.params[None, :] - alpha.params[:, None]
            actual_tau = space.tau[np.ix_(alpha.points, beta.points)]
            actual_causal = space.causal[np.ix_(alpha.points, beta.points)]
            if not np.isfinite(ds):
                model_tau = np.zeros_like(du)
                model_causal = np.zeros_like(du, dtype=bool)
                band = np.zeros_like(du, dtype=bool)
            else:
                q2 = du * du - ds * ds
                model_causal = du >= ds - 1e-12 * (1 + ds)
                model_tau = np.where(model_causal & (q2 > 0), np.sqrt(np.maximum(q2, 0)), 0.0)
                band = np.abs(du - ds) < trim_steps * h
            if a == b:
                band |= du <= 0  # only future-directed self pairs are informative
            err = np.abs(actual_tau - model_tau)
            untrimmed = max(untrimmed, float(err.max()))
            keep = ~band
            trimmed += int(band.sum())
            kept += int(keep.sum())
            agree += int((actual_causal == model_causal)[keep].sum())
            if keep.any():
                e = float(err[keep].max())
                if e > max_err:
                    max_err = e
                    i, j = np.unravel_index(int(np.argmax(np.where(keep, err, -1))), err.shape)
                    worst = {
                        "classes": (a, b),
                        "pair": (int(alpha.points[i]), int(beta.points[j])),
                        "tau": float(actual_tau[i, j]),
                        "model": float(model_tau[i, j]),
                    }
    agreement = agree / kept if kept else 1.0
    return EmbeddingReport(
        max_tau_error=max_err,
        causal_agreement=float(agreement),
        worst=worst,
        pairs_checked=kept,
        pairs_trimmed=trimmed,
        untrimmed_max_error=untrimmed,
    )


@dataclass
class RoundTripReport:
    max_deviation: float
    symmetry_dev: float
    cross_check_dev: float
    base: BaseMetric
    embedding: EmbeddingReport
    cat0: Cat0Report | None

    def summary(self) -> str:
        return (
            f"round trip: max |dS - d| = {self.max_deviation:.4g}, symmetry "
            f"{self.symmetry_dev:.2e}, formulas within {self.cross_check_dev:.4g}, "
            f"embedding error {self.embedding.max_tau_error:.4g}, causal agreement "
            f"{self.embedding.causal_agreement:.4f}"
        )


def round_trip(base: MetricSampleIn, t_grid, tol: float = DEFAULT_TOL_TAU) -> RoundTripReport:
    """Full pipeline check: product -> lines -> classes -> dS -> compare.

    The recovered dS must match the generator's distances to one grid
    step entrywise.
    """
    space, lines = build_product(base, t_grid)
    classes = extract_line_classes(space, lines, reference=lines[0], tol=tol)
    recovered = compute_dS(space, classes, tol)
    # canonical lines arrive one per base point, in order
    dev = float(np.abs(recovered.dS - base.dist).max())
    finite = np.isfinite(recovered.dS)
    sym = float(np.abs(recovered.dS - recovered.dS.T)[finite & finite.T].max())
    cross = float(np.abs(recovered.dS - recovered.dS_alt)[finite].max())
    embedding = verify_embedding(space, classes, recovered)
    cat0 = None
    if base.midpoints:
        cat0 = verify_base_metric_cat0(base.dist, base.midpoints)
    return RoundTripReport(
        max_deviation=dev,
        symmetry_dev=sym,
        cross_check_dev=cross,
        base=recovered,
        embedding=embedding,
        cat0=cat0,
    )
