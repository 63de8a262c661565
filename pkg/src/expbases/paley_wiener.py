"""Bandlimited translation systems seen through their spectral weights.

A translation system is modeled by the modulus profile of its window on
the frequency domain. Its Gram is a weighted exponential Gram, so
two-sided bound transfer between the exponential system and the
translates reduces to eigenvalue sandwiches that this module verifies,
on the full domain when the weight never vanishes and on the weight's
support otherwise.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional

import numpy as np

from .domain import Box, Domain, QuadratureRule, quadrature
from .numerics import ORDER_CAP
from .spectra import (BoundsReport, FrequencySet, GramMatrix, OnbVerdict,
                      exp_gram, frame_bounds_of_operator, is_orthonormal_system,
                      riesz_bounds)

# Node values at or below this modulus count as outside the support.
SUPPORT_TOL = 1e-12

# Slack applied to both sides of the transfer sandwiches: relative, with
# an absolute floor for bounds at eigensolver noise scale.
SANDWICH_RTOL = 1e-8
SANDWICH_ATOL = 1e-10


def _sandwich_slack(predicted: float) -> float:
    return max(SANDWICH_RTOL * abs(predicted), SANDWICH_ATOL)

# Node-sample versus exact profile extremes are flagged above this gap.
PROFILE_MISMATCH_TOL = 1e-9

_NAMED_PROFILES = ("indicator", "constant", "affine", "bump", "table")


@dataclass(frozen=True, init=False)
class SpectralWeight:
    """Complex weight sampled on a quadrature rule over a domain.

    inf_mod and sup_mod are taken from the node samples (inf over the
    support only). Named profiles additionally carry exact extremes so
    that under-resolved sampling can be flagged.
    """

    domain: Domain
    rule: QuadratureRule
    values: np.ndarray
    profile: str
    support_mask: np.ndarray
    inf_mod: float
    sup_mod: float
    exact_inf: Optional[float]
    exact_sup: Optional[float]

    def __init__(self, domain, rule, values, profile="table", exact_inf=None, exact_sup=None):
        if profile not in _NAMED_PROFILES:
            raise ValueError(f"unknown profile {profile!r}")
        vals = np.ascontiguousarray(np.asarray(values, dtype=complex))
        if vals.shape != (rule.n_nodes,):
            raise ValueError(f"need one value per node, got shape {vals.shape} for {rule.n_nodes} nodes")
        mods = np.abs(vals)
        mask = mods > SUPPORT_TOL
        if not mask.any():
            raise ValueError("weight vanishes at every node")
        vals.setflags(write=False)
        mask = np.ascontiguousarray(mask)
        mask.setflags(write=False)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "rule", rule)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "support_mask", mask)
        object.__setattr__(self, "inf_mod", float(mods[mask].min()))
        object.__setattr__(self, "sup_mod", float(mods.max()))
        object.__setattr__(self, "exact_inf", None if exact_inf is None else float(exact_inf))
        object.__setattr__(self, "exact_sup", None if exact_sup is None else float(exact_sup))

    @property
    def profile_mismatch(self) -> float:
        """Largest gap between node-sampled and exact modulus extremes."""
        gaps = []
        if self.exact_inf is not None:
            gaps.append(abs(self.inf_mod - self.exact_inf))
        if self.exact_sup is not None:
            gaps.append(abs(self.sup_mod - self.exact_sup))
        return max(gaps, default=0.0)


def _default_rule(domain: Domain, rule: Optional[QuadratureRule], nodes_per_axis: int) -> QuadratureRule:
    return rule if rule is not None else quadrature(domain, nodes_per_axis)


def indicator_weight(domain: Domain, nodes_per_axis: int = 32,
                     rule: Optional[QuadratureRule] = None) -> SpectralWeight:
    """Weight identically one on the domain."""
    rule = _default_rule(domain, rule, nodes_per_axis)
    return SpectralWeight(domain, rule, np.ones(rule.n_nodes), profile="indicator",
                          exact_inf=1.0, exact_sup=1.0)


def constant_weight(domain: Domain, value, nodes_per_axis: int = 32,
                    rule: Optional[QuadratureRule] = None) -> SpectralWeight:
    """Constant complex weight."""
    value = complex(value)
    if value == 0:
        raise ValueError("constant weight must be nonzero")
    rule = _default_rule(domain, rule, nodes_per_axis)
    return SpectralWeight(domain, rule, np.full(rule.n_nodes, value), profile="constant",
                          exact_inf=abs(value), exact_sup=abs(value))


def _box_corner_values(lower, upper, offset: float, gradient: np.ndarray) -> np.ndarray:
    corners = np.array(list(product(*zip(lower, upper))))
    return offset + corners @ gradient


def _affine_extremes(domain: Domain, offset: float, gradient: np.ndarray) -> tuple[float, float]:
    # An affine map attains its extremes at cell corners; the modulus
    # infimum is zero whenever a single convex piece changes sign.
    inf_abs = np.inf
    sup_abs = 0.0
    pieces = []
    if domain.boxes:
        pieces = [(np.asarray(b.lower), np.asarray(b.upper)) for b in domain.boxes]
    else:
        mask = domain.mask
        origin = np.asarray(mask.origin)
        widths = np.asarray(mask.widths)
        for idx in mask.included_cells():
            lo = origin + idx * widths
            pieces.append((lo, lo + widths))
    for lo, hi in pieces:
        vals = _box_corner_values(lo, hi, offset, gradient)
        if vals.min() <= 0.0 <= vals.max():
            inf_abs = 0.0
        else:
            inf_abs = min(inf_abs, float(np.min(np.abs(vals))))
        sup_abs = max(sup_abs, float(np.max(np.abs(vals))))
    return float(inf_abs), float(sup_abs)


def affine_weight(domain: Domain, offset: float, gradient,
                  nodes_per_axis: int = 32,
                  rule: Optional[QuadratureRule] = None) -> SpectralWeight:
    """Real affine weight offset + <gradient, x>."""
    gradient = np.atleast_1d(np.asarray(gradient, dtype=float))
    if gradient.shape != (domain.dimension,):
        raise ValueError(f"gradient must have dimension {domain.dimension}")
    rule = _default_rule(domain, rule, nodes_per_axis)
    values = offset + rule.nodes @ gradient
    exact_inf, exact_sup = _affine_extremes(domain, float(offset), gradient)
    return SpectralWeight(domain, rule, values.astype(complex), profile="affine",
                          exact_inf=exact_inf, exact_sup=exact_sup)


def bump_values(x, steepness: float = 1.0) -> np.ndarray:
    """Smooth bump exp(-steepness / (x (1 - x))) on (0, 1), zero elsewhere."""
    x = np.asarray(x, dtype=float)
    y = x * (1.0 - x)
    out = np.zeros_like(y)
    inside = y > 0.0
    out[inside] = np.exp(-steepness / y[inside])
    return out


def _bump_extremes(domain: Domain, steepness: float) -> tuple[float, float]:
    def piece(lo: float, hi: float) -> tuple[float, float]:
        edge = bump_values(np.array([lo, hi]), steepness)
        low = float(edge.min())
        if lo <= 0.5 <= hi:
            high = float(bump_values(np.array([0.5]), steepness)[0])
        else:
            high = float(edge.max())
        return low, high

    inf_abs = np.inf
    sup_abs = 0.0
    if domain.boxes:
        intervals = [(b.lower[0], b.upper[0]) for b in domain.boxes]
    else:
        mask = domain.mask
        intervals = [(mask.origin[0] + i * mask.widths[0], mask.origin[0] + (i + 1) * mask.widths[0])
                     for (i,) in mask.included_cells()]
    for lo, hi in intervals:
        low, high = piece(lo, hi)
        inf_abs = min(inf_abs, low)
        sup_abs = max(sup_abs, high)
    return float(inf_abs), float(sup_abs)


def bump_window(domain: Domain, steepness: float = 1.0, nodes_per_axis: int = 64,
                rule: Optional[QuadratureRule] = None) -> SpectralWeight:
    """Compactly supported smooth window on a one-dimensional domain in [0, 1].

    A domain touching 0 or 1 is allowed but the window vanishes there, so
    the effective support drops the nodes below the modulus threshold; a
    warning points that out.
    """
    if domain.dimension != 1:
        raise ValueError("bump windows are one-dimensional")
    if steepness <= 0:
        raise ValueError(f"steepness must be positive, got {steepness}")
    pieces = domain.boxes if domain.boxes else [None]
    lo = min(b.lower[0] for b in domain.boxes) if domain.boxes else domain.mask.origin[0]
    if domain.boxes:
        hi = max(b.upper[0] for b in domain.boxes)
    else:
        m = domain.mask
        hi = m.origin[0] + m.counts[0] * m.widths[0]
    if lo < -SUPPORT_TOL or hi > 1.0 + SUPPORT_TOL:
        raise ValueError(f"bump support is [0, 1]; domain spans [{lo}, {hi}]")
    rule = _default_rule(domain, rule, nodes_per_axis)
    values = bump_values(rule.nodes[:, 0], steepness)
    exact_inf, exact_sup = _bump_extremes(domain, steepness)
    if exact_inf <= SUPPORT_TOL:
        warnings.warn("bump vanishes at the domain boundary; support is trimmed "
                      "to the nodes above the modulus threshold", stacklevel=2)
    return SpectralWeight(domain, rule, values.astype(complex), profile="bump",
                          exact_inf=exact_inf, exact_sup=exact_sup)


def table_weight(domain: Domain, rule: QuadratureRule, values) -> SpectralWeight:
    """Weight given directly by its node samples."""
    return SpectralWeight(domain, rule, values, profile="table")


def translation_gram(domain: Domain, freqs: FrequencySet, weight: SpectralWeight) -> GramMatrix:
    """Gram of the translation system: the |weight|^2-weighted exponential Gram.

    Indicator and constant profiles on box domains keep the closed form;
    everything else is assembled on the weight's quadrature rule.
    """
    if weight.domain != domain:
        raise ValueError("weight was sampled on a different domain")
    if domain.boxes and weight.profile in ("indicator", "constant"):
        base = exp_gram(domain, freqs)
        scale = weight.sup_mod ** 2
        matrix = base.matrix if scale == 1.0 else base.matrix * scale
        return GramMatrix(matrix, freqs=freqs, provenance="closed_form")
    return exp_gram(domain, freqs, weight=weight)


@dataclass(frozen=True)
class TransferReport:
    """Outcome of the Riesz bound transfer between exponentials and translates."""

    exp_bounds: BoundsReport
    translation_bounds: BoundsReport
    inf_mod: float
    sup_mod: float
    predicted_lower: float
    predicted_upper: float
    lower_margin: float
    upper_margin: float
    sandwich_holds: bool
    weight_resolution_flagged: bool


def verify_riesz_transfer(domain: Domain, freqs: FrequencySet,
                          weight: SpectralWeight) -> TransferReport:
    """Check the two-sided bound transfer for a nowhere-vanishing weight.

    The translation bounds must land inside the window scaled by the
    squared modulus extremes of the weight. Both Gram matrices are built
    with matching provenance (one shared rule, or both closed form), so
    the sandwich holds at the discrete level up to SANDWICH_RTOL slack.
    """
    if weight.domain != domain:
        raise ValueError("weight was sampled on a different domain")
    if not bool(weight.support_mask.all()):
        missing = int((~weight.support_mask).sum())
        raise ValueError(
            f"spectral weight vanishes at {missing} of {weight.rule.n_nodes} nodes; "
            "the Riesz transfer needs a nowhere-zero weight, use verify_frame_transfer")
    closed = bool(domain.boxes) and weight.profile in ("indicator", "constant")
    if closed:
        g_exp = exp_gram(domain, freqs)
    else:
        g_exp = exp_gram(domain, freqs, rule=weight.rule)
    g_trans = translation_gram(domain, freqs, weight)
    exp_b = riesz_bounds(g_exp)
    trans_b = riesz_bounds(g_trans)
    predicted_lower = weight.inf_mod ** 2 * exp_b.lower
    predicted_upper = weight.sup_mod ** 2 * exp_b.upper
    holds = (trans_b.lower >= predicted_lower - _sandwich_slack(predicted_lower)
             and trans_b.upper <= predicted_upper + _sandwich_slack(predicted_upper))
    return TransferReport(
        exp_bounds=exp_b,
        translation_bounds=trans_b,
        inf_mod=weight.inf_mod,
        sup_mod=weight.sup_mod,
        predicted_lower=predicted_lower,
        predicted_upper=predicted_upper,
        lower_margin=trans_b.lower - predicted_lower,
        upper_margin=predicted_upper - trans_b.upper,
        sandwich_holds=holds,
        weight_resolution_flagged=weight.profile_mismatch > PROFILE_MISMATCH_TOL,
    )


@dataclass(frozen=True)
class FrameTransferReport:
    """Outcome of the frame bound transfer on the weight's support."""

    weighted_bounds: BoundsReport
    unweighted_bounds: BoundsReport
    weight_floor_sq: float
    weight_ceil_sq: float
    predicted_lower: float
    predicted_upper: float
    lower_margin: float
    upper_margin: float
    sandwich_holds: bool
    space_dim: int
    n_vectors: int
    support_is_proper: bool
    note: str

_FRAME_NOTE = ("frame bounds are certified on the quadrature model of the weight "
               "support only; nothing is claimed about signals concentrated where "
               "the weight vanishes")


def verify_frame_transfer(domain: Domain, freqs: FrequencySet,
                          weight: SpectralWeight) -> FrameTransferReport:
    """Frame-bound sandwich for weights that may vanish on part of the domain.

    The model space keeps only the quadrature nodes inside the support.
    Both frame operators (weighted and unweighted exponentials) act there,
    and the weighted bounds must sit inside the unweighted ones scaled by
    the extreme squared moduli over the support.
    """
    if weight.domain != domain:
        raise ValueError("weight was sampled on a different domain")
    mask = weight.support_mask
    n_support = int(mask.sum())
    if n_support > ORDER_CAP:
        raise ValueError(
            f"{n_support} support nodes exceed the dense-solver cap {ORDER_CAP}; "
            "coarsen the rule")
    nodes = weight.rule.nodes[mask]
    wts = weight.rule.weights[mask]
    vals = weight.values[mask]
    droot = np.sqrt(wts)
    phases = np.exp(-2j * np.pi * (nodes @ freqs.points.T))
    v_plain = droot[:, np.newaxis] * phases
    v_weighted = (droot * vals)[:, np.newaxis] * phases
    s_plain = v_plain @ v_plain.conj().T
    s_weighted = v_weighted @ v_weighted.conj().T
    s_plain = 0.5 * (s_plain + s_plain.conj().T)
    s_weighted = 0.5 * (s_weighted + s_weighted.conj().T)
    unweighted = frame_bounds_of_operator(s_plain)
    weighted = frame_bounds_of_operator(s_weighted)
    mods_sq = np.abs(vals) ** 2
    floor_sq = float(mods_sq.min())
    ceil_sq = float(mods_sq.max())
    predicted_lower = floor_sq * unweighted.lower
    predicted_upper = ceil_sq * unweighted.upper
    holds = (weighted.lower >= predicted_lower - _sandwich_slack(predicted_lower)
             and weighted.upper <= predicted_upper + _sandwich_slack(predicted_upper))
    return FrameTransferReport(
        weighted_bounds=weighted,
        unweighted_bounds=unweighted,
        weight_floor_sq=floor_sq,
        weight_ceil_sq=ceil_sq,
        predicted_lower=predicted_lower,
        predicted_upper=predicted_upper,
        lower_margin=weighted.lower - predicted_lower,
        upper_margin=predicted_upper - weighted.upper,
        sandwich_holds=holds,
        space_dim=n_support,
        n_vectors=freqs.size,
        support_is_proper=not bool(mask.all()),
        note=_FRAME_NOTE,
    )


@dataclass(frozen=True, init=False)
class BandlimitedSignal:
    """Signal given by frequency samples on a rule; norms via Plancherel."""

    domain: Domain
    rule: QuadratureRule
    coeffs: np.ndarray

    def __init__(self, domain, rule, coeffs):
        c = np.ascontiguousarray(np.asarray(coeffs, dtype=complex))
        if c.shape != (rule.n_nodes,):
            raise ValueError(f"need one coefficient per node, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "rule", rule)
        object.__setattr__(self, "coeffs", c)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(self.rule.weights * np.abs(self.coeffs) ** 2))


def indicator_signal(domain: Domain, rule: QuadratureRule) -> BandlimitedSignal:
    return BandlimitedSignal(domain, rule, np.ones(rule.n_nodes))


def random_signal(domain: Domain, rule: QuadratureRule, rng) -> BandlimitedSignal:
    re = rng.uniforms(rule.n_nodes, -1.0, 1.0)
    im = rng.uniforms(rule.n_nodes, -1.0, 1.0)
    return BandlimitedSignal(domain, rule, re + 1j * im)


def smooth_random_signal(domain: Domain, rule: QuadratureRule, rng,
                         max_order: int = 3) -> BandlimitedSignal:
    """Random trigonometric polynomial profile with decaying coefficients."""
    if domain.dimension != 1:
        raise ValueError("smooth random signals are one-dimensional")
    xi = rule.nodes[:, 0]
    coeffs = np.zeros(rule.n_nodes, dtype=complex)
    for k in range(-max_order, max_order + 1):
        c = (rng.uniform(-1.0, 1.0) + 1j * rng.uniform(-1.0, 1.0)) / (1.0 + k * k)
        coeffs += c * np.exp(2j * np.pi * k * xi)
    return BandlimitedSignal(domain, rule, coeffs)


@dataclass(frozen=True)
class FactorizationReport:
    """Division-multiplication roundtrip of a signal through a weight."""

    residual: float
    quotient_norm: float
    norm_bound: float
    bound_holds: bool
    signal_norm: float


def convolution_factorization_check(domain: Domain, psi: SpectralWeight,
                                    signal: BandlimitedSignal) -> FactorizationReport:
    """Divide the signal by the weight, multiply back, measure the defect.

    The quotient norm must respect signal norm / inf_mod. A zero signal
    reports residual zero by convention.
    """
    if psi.domain != domain or signal.domain != domain:
        raise ValueError("weight and signal must live on the given domain")
    if not np.array_equal(psi.rule.nodes, signal.rule.nodes):
        raise ValueError("weight and signal must share one quadrature rule")
    if not bool(psi.support_mask.all()):
        raise ValueError("factorization needs a nowhere-zero weight on the domain")
    w = signal.rule.weights
    signal_norm = float(np.sqrt(np.sum(w * np.abs(signal.coeffs) ** 2)))
    if signal_norm == 0.0:
        return FactorizationReport(0.0, 0.0, 0.0, True, 0.0)
    quotient = signal.coeffs / psi.values
    back = quotient * psi.values
    residual = float(np.sqrt(np.sum(w * np.abs(back - signal.coeffs) ** 2))) / signal_norm
    quotient_norm = float(np.sqrt(np.sum(w * np.abs(quotient) ** 2)))
    norm_bound = signal_norm / psi.inf_mod
    return FactorizationReport(
        residual=residual,
        quotient_norm=quotient_norm,
        norm_bound=norm_bound,
        bound_holds=quotient_norm <= norm_bound * (1.0 + 1e-10),
        signal_norm=signal_norm,
    )


@dataclass(frozen=True)
class WskReport:
    """Cardinal-series reconstruction from integer samples."""

    n_terms: int
    samples: np.ndarray
    eval_points: np.ndarray
    values: np.ndarray
    coeff_energy: float
    signal_energy: float
    parseval_ok: bool


def shannon_reconstruct(signal: BandlimitedSignal, n_terms: int,
                        eval_points) -> WskReport:
    """Reconstruct from integer samples with a truncated cardinal series.

    The band must be [-1/2, 1/2]. Samples come from quadrature of the
    inverse transform on the signal's own rule, which must oversample the
    truncation (more nodes than series terms).
    """
    domain = signal.domain
    if domain.dimension != 1 or len(domain.boxes) != 1:
        raise ValueError("cardinal reconstruction needs a single interval band")
    box = domain.boxes[0]
    if abs(box.lower[0] + 0.5) > 1e-12 or abs(box.upper[0] - 0.5) > 1e-12:
        raise ValueError(
            f"band must be [-1/2, 1/2] within 1e-12, got [{box.lower[0]}, {box.upper[0]}]")
    n_terms = int(n_terms)
    if not 0 <= n_terms <= 512:
        raise ValueError(f"truncation must lie in [0, 512], got {n_terms}")
    if signal.rule.n_nodes <= 2 * n_terms:
        raise ValueError(
            f"{signal.rule.n_nodes} nodes cannot resolve {2 * n_terms + 1} series terms")
    orders = np.arange(-n_terms, n_terms + 1)
    xi = signal.rule.nodes[:, 0]
    inverse_phases = np.exp(2j * np.pi * orders[:, np.newaxis] * xi[np.newaxis, :])
    samples = inverse_phases @ (signal.rule.weights * signal.coeffs)
    pts = np.atleast_1d(np.asarray(eval_points, dtype=float))
    cardinal = np.sinc(pts[np.newaxis, :] - orders[:, np.newaxis])
    values = samples @ cardinal
    coeff_energy = float(np.sum(np.abs(samples) ** 2))
    signal_energy = signal.norm_sq
    parseval_ok = coeff_energy <= signal_energy * (1.0 + SANDWICH_RTOL) + 1e-15
    return WskReport(n_terms, samples, pts, values, coeff_energy, signal_energy, parseval_ok)


@dataclass(frozen=True)
class PeriodizationProfile:
    """Compactly supported frequency profile with a pointwise evaluator."""

    name: str
    support: Box
    fn: Callable[[np.ndarray], np.ndarray]


def periodization_profile(kind: str, **params) -> PeriodizationProfile:
    """Named profiles for the integer-translate orthonormality criterion."""
    if kind == "indicator":
        lo = np.atleast_1d(np.asarray(params["lower"], dtype=float))
        hi = np.atleast_1d(np.asarray(params["upper"], dtype=float))
        scale = float(params.get("scale", 1.0))
        box = Box(lo, hi)

        def fn(x: np.ndarray) -> np.ndarray:
            inside = np.all((x >= lo) & (x < hi), axis=-1)
            return scale * inside.astype(float)

        return PeriodizationProfile(kind, box, fn)
    if kind == "triangle":
        lo = float(params["lower"])
        hi = float(params["upper"])
        height = float(params.get("height", 1.0))
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        box = Box([lo], [hi])

        def fn(x: np.ndarray) -> np.ndarray:
            t = 1.0 - np.abs(x[..., 0] - mid) / half
            return height * np.maximum(t, 0.0)

        return PeriodizationProfile(kind, box, fn)
    if kind == "cosine":
        center = float(params.get("center", 0.5))
        box = Box([center - 1.0], [center + 1.0])

        def fn(x: np.ndarray) -> np.ndarray:
            t = x[..., 0] - center
            return np.where(np.abs(t) <= 1.0, np.cos(0.5 * np.pi * t), 0.0)

        return PeriodizationProfile(kind, box, fn)
    if kind == "bump":
        steepness = float(params.get("steepness", 1.0))
        scale = float(params.get("scale", 1.0))
        box = Box([0.0], [1.0])

        def fn(x: np.ndarray) -> np.ndarray:
            return scale * bump_values(x[..., 0], steepness)

        return PeriodizationProfile(kind, box, fn)
    raise ValueError(f"unknown periodization profile {kind!r}")


@dataclass(frozen=True)
class PeriodizationReport:
    """Grid check of the squared-modulus periodization against one."""

    sup_deviation: float
    is_onb: bool
    gram_deviation: float
    gram_is_onb: bool
    agree: bool
    resolution: int
    tol: float
    gram_tol: float


def _integer_cover(support: Box) -> list[np.ndarray]:
    ranges = []
    for lo, hi in zip(support.lower, support.upper):
        ranges.append(np.arange(int(np.floor(lo)) - 1, int(np.ceil(hi)) + 1))
    return ranges


def zd_periodization(profile: PeriodizationProfile, resolution: int = 64,
                     tol: float = 1e-8, gram_nodes: Optional[int] = None,
                     gram_tol: Optional[float] = None) -> PeriodizationReport:
    """Sum |profile|^2 over integer shifts on a grid of the unit cube.

    The verdict (sup deviation from one within tol) is cross-checked
    against the orthonormality of the integer-translate Gram built by
    quadrature on the profile support, judged at a resolution-scaled
    tolerance.
    """
    resolution = int(resolution)
    if resolution < 2:
        raise ValueError(f"resolution must be at least 2, got {resolution}")
    d = profile.support.dimension
    axes = [(np.arange(resolution) + 0.5) / resolution] * d
    mesh = np.meshgrid(*axes, indexing="ij")
    grid = np.stack([m.reshape(-1) for m in mesh], axis=-1)
    total = np.zeros(grid.shape[0])
    ranges = _integer_cover(profile.support)
    for shift in product(*[r.tolist() for r in ranges]):
        total += np.abs(profile.fn(grid + np.asarray(shift, dtype=float))) ** 2
    sup_dev = float(np.max(np.abs(total - 1.0)))
    verdict = sup_dev <= tol

    gram_nodes = resolution if gram_nodes is None else int(gram_nodes)
    support_domain = Domain(boxes=[profile.support])
    rule = quadrature(support_domain, gram_nodes)
    weight = table_weight(support_domain, rule, profile.fn(rule.nodes))
    lattice_axes = [np.asarray(r, dtype=float) for r in ranges]
    lattice_mesh = np.meshgrid(*lattice_axes, indexing="ij")
    lattice = FrequencySet(np.stack([m.reshape(-1) for m in lattice_mesh], axis=-1))
    gram = translation_gram(support_domain, lattice, weight)
    if gram_tol is None:
        span = max(hi - lo for lo, hi in zip(profile.support.lower, profile.support.upper))
        h = span / gram_nodes
        gram_tol = max(1e-8, h * h)
    gram_verdict: OnbVerdict = is_orthonormal_system(gram, gram_tol)
    return PeriodizationReport(
        sup_deviation=sup_dev,
        is_onb=verdict,
        gram_deviation=gram_verdict.deviation,
        gram_is_onb=gram_verdict.is_onb,
        agree=verdict == gram_verdict.is_onb,
        resolution=resolution,
        tol=tol,
        gram_tol=float(gram_tol),
    )
