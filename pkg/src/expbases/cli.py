"""Command line front end: scenario files in, deterministic reports out.

Every command reads one scenario JSON file, runs the matching library
operation, and writes a report whose bytes depend only on the scenario
and the seed (wall_time_s is the single exception). Exit status: 0 all
checks passed, 1 a verdict failed, 2 the scenario or invocation was
rejected before any verdict.
"""

from __future__ import annotations

import argparse
import csv
import glob
import io
import json
import os
import sys
import tempfile
import time
from typing import Any, Optional

import numpy as np

from .domain import Box, Domain, MaskGrid, QuadratureRule, quadrature
from .gabor import UNIT_MEASURE_RTOL, vv_onb_check
from .numerics import Pcg32
from .paley_wiener import (SUPPORT_TOL, affine_weight, bump_window,
                           constant_weight, convolution_factorization_check,
                           indicator_signal, indicator_weight,
                           periodization_profile, random_signal,
                           shannon_reconstruct, smooth_random_signal,
                           table_weight, translation_gram,
                           verify_frame_transfer, verify_riesz_transfer,
                           zd_periodization)
from .spectra import (SYSTEM_SIZE_CAP, FrequencySet, exp_gram,
                      is_orthonormal_system, lattice_truncation, riesz_bounds)
from .tiling import (GroupInstance, cube_equivalence_check, is_spectrum,
                     search_complements, search_spectra, tiles)

TOOL_VERSION = "0.1.0"

# Judgement scales echoed into every report: absolute for magnitudes at
# or below one, relative otherwise.
ABSOLUTE_TOL = 1e-10
RELATIVE_TOL = 1e-9

_TOLERANCE_POLICY = {
    "absolute": ABSOLUTE_TOL,
    "relative": RELATIVE_TOL,
    "rule": "absolute below unit magnitude, relative otherwise",
}


class SchemaError(Exception):
    """Scenario rejected before running; carries the offending paths."""

    def __init__(self, paths):
        self.paths = tuple(paths)
        super().__init__("invalid scenario fields: " + "; ".join(self.paths))


class _Reader:
    # Accumulates offending paths so one rejection names all of them.

    def __init__(self):
        self.errors: list[str] = []

    def fail(self, path: str, why: str) -> None:
        self.errors.append(f"{path} ({why})")

    def done(self) -> None:
        if self.errors:
            raise SchemaError(self.errors)

    def get(self, obj, key, path, kind, required=True, default=None):
        checks = {
            "number": lambda v: isinstance(v, (int, float)) and not isinstance(v, bool),
            "int": lambda v: isinstance(v, int) and not isinstance(v, bool),
            "str": lambda v: isinstance(v, str),
            "bool": lambda v: isinstance(v, bool),
            "list": lambda v: isinstance(v, list),
            "dict": lambda v: isinstance(v, dict),
        }
        if not isinstance(obj, dict):
            self.fail(path, "expected an object")
            return default
        if key not in obj:
            if required:
                self.fail(f"{path}.{key}", "missing")
            return default
        value = obj[key]
        if not checks[kind](value):
            self.fail(f"{path}.{key}", f"expected {kind}")
            return default
        return value

    def int_list(self, obj, key, path, required=True):
        raw = self.get(obj, key, path, "list", required=required)
        if raw is None:
            return None
        out = []
        for i, v in enumerate(raw):
            if isinstance(v, bool) or not isinstance(v, int):
                self.fail(f"{path}.{key}[{i}]", "expected int")
                return None
            out.append(v)
        return out


def _build_domain(r: _Reader, spec, path: str) -> Optional[Domain]:
    if spec is None:
        return None
    if not isinstance(spec, dict):
        r.fail(path, "expected an object")
        return None
    boxes = spec.get("boxes")
    mask = spec.get("mask")
    if boxes is None and mask is None:
        r.fail(path, "needs boxes or mask")
        return None
    try:
        box_objs = []
        if boxes is not None:
            if not isinstance(boxes, list) or not boxes:
                r.fail(f"{path}.boxes", "expected a nonempty list")
                return None
            for i, pair in enumerate(boxes):
                if not (isinstance(pair, list) and len(pair) == 2):
                    r.fail(f"{path}.boxes[{i}]", "expected [lower, upper]")
                    return None
                box_objs.append(Box(pair[0], pair[1]))
        grid = None
        if mask is not None:
            if not isinstance(mask, dict):
                r.fail(f"{path}.mask", "expected an object")
                return None
            for key in ("origin", "counts", "widths", "included"):
                if key not in mask:
                    r.fail(f"{path}.mask.{key}", "missing")
            if r.errors:
                return None
            grid = MaskGrid(mask["origin"], mask["counts"], mask["widths"],
                            mask["included"])
        return Domain(boxes=tuple(box_objs), mask=grid)
    except (TypeError, ValueError) as exc:
        r.fail(path, str(exc))
        return None


def _build_freqs(r: _Reader, spec, path: str, dimension: int) -> Optional[FrequencySet]:
    if spec is None:
        return None
    if not isinstance(spec, dict):
        r.fail(path, "expected an object")
        return None
    try:
        if "points" in spec:
            return FrequencySet(spec["points"])
        if "range" in spec:
            rng = spec["range"]
            if not (isinstance(rng, list) and len(rng) == 2
                    and all(isinstance(v, int) and not isinstance(v, bool) for v in rng)):
                r.fail(f"{path}.range", "expected [lo, hi] ints")
                return None
            return lattice_truncation(rng[0], rng[1], dimension)
        r.fail(path, "needs points or range")
        return None
    except (TypeError, ValueError) as exc:
        r.fail(path, str(exc))
        return None


def _complex_value(r: _Reader, raw, path: str):
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return complex(raw)
    if (isinstance(raw, list) and len(raw) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw)):
        return complex(raw[0], raw[1])
    r.fail(path, "expected a number or [re, im]")
    return None


def _build_weight(r: _Reader, spec, path: str, domain: Domain,
                  rule: Optional[QuadratureRule] = None):
    if spec is None:
        return None
    profile = r.get(spec, "profile", path, "str")
    if profile is None:
        return None
    nodes = spec.get("nodes_per_axis", 64 if profile == "bump" else 32)
    if isinstance(nodes, bool) or not isinstance(nodes, int):
        r.fail(f"{path}.nodes_per_axis", "expected int")
        return None
    try:
        if profile == "indicator":
            return indicator_weight(domain, nodes_per_axis=nodes, rule=rule)
        if profile == "constant":
            value = _complex_value(r, spec.get("value", 1.0), f"{path}.value")
            if value is None:
                return None
            return constant_weight(domain, value, nodes_per_axis=nodes, rule=rule)
        if profile == "affine":
            offset = r.get(spec, "offset", path, "number")
            gradient = spec.get("gradient")
            if offset is None or gradient is None:
                r.fail(f"{path}.gradient", "missing") if gradient is None else None
                return None
            return affine_weight(domain, offset, gradient, nodes_per_axis=nodes, rule=rule)
        if profile == "bump":
            steepness = spec.get("steepness", 1.0)
            if isinstance(steepness, bool) or not isinstance(steepness, (int, float)):
                r.fail(f"{path}.steepness", "expected number")
                return None
            return bump_window(domain, steepness=steepness, nodes_per_axis=nodes, rule=rule)
        if profile == "table":
            raw = r.get(spec, "values", path, "list")
            if raw is None:
                return None
            values = []
            for i, item in enumerate(raw):
                value = _complex_value(r, item, f"{path}.values[{i}]")
                if value is None:
                    return None
                values.append(value)
            use_rule = rule if rule is not None else quadrature(domain, nodes)
            return table_weight(domain, use_rule, values)
        r.fail(f"{path}.profile", f"unknown profile {profile!r}")
        return None
    except (TypeError, ValueError) as exc:
        r.fail(path, str(exc))
        return None


def _build_signal(r: _Reader, spec, path: str, domain: Domain,
                  rule: QuadratureRule, rng: Pcg32):
    if spec is None:
        return None
    kind = r.get(spec, "kind", path, "str")
    if kind is None:
        return None
    try:
        if kind == "indicator":
            return indicator_signal(domain, rule)
        if kind == "random":
            return random_signal(domain, rule, rng)
        if kind == "smooth_random":
            max_order = spec.get("max_order", 3)
            if isinstance(max_order, bool) or not isinstance(max_order, int):
                r.fail(f"{path}.max_order", "expected int")
                return None
            return smooth_random_signal(domain, rule, rng, max_order=max_order)
        if kind == "table":
            raw = r.get(spec, "values", path, "list")
            if raw is None:
                return None
            values = []
            for i, item in enumerate(raw):
                value = _complex_value(r, item, f"{path}.values[{i}]")
                if value is None:
                    return None
                values.append(value)
            from .paley_wiener import BandlimitedSignal
            return BandlimitedSignal(domain, rule, values)
        r.fail(f"{path}.kind", f"unknown signal kind {kind!r}")
        return None
    except (TypeError, ValueError) as exc:
        r.fail(path, str(exc))
        return None


def _hyp(name: str, passed: bool, measured, tolerance) -> dict:
    return {"name": name, "passed": bool(passed), "measured": measured,
            "tolerance": tolerance}


def _nodes_param(r: _Reader, params, default: int) -> int:
    nodes = params.get("nodes_per_axis", default)
    if isinstance(nodes, bool) or not isinstance(nodes, int):
        r.fail("parameters.nodes_per_axis", "expected int")
        return default
    return nodes


def _run_bounds(params, rng, tol, r: _Reader):
    domain = _build_domain(r, r.get(params, "domain", "parameters", "dict"),
                           "parameters.domain")
    freq_spec = r.get(params, "freqs", "parameters", "dict")
    nodes = _nodes_param(r, params, 32)
    freqs = _build_freqs(r, freq_spec, "parameters.freqs", domain.dimension) if domain else None
    weight = None
    if domain is not None and "weight" in params:
        weight = _build_weight(r, params["weight"], "parameters.weight", domain)
    r.done()
    if weight is not None:
        gram = translation_gram(domain, freqs, weight)
    else:
        gram = exp_gram(domain, freqs, nodes_per_axis=nodes)
    bounds = riesz_bounds(gram)
    onb = is_orthonormal_system(gram, tol if tol is not None else ABSOLUTE_TOL)
    hyps = [_hyp("system_size_within_cap", freqs.size <= SYSTEM_SIZE_CAP,
                 freqs.size, SYSTEM_SIZE_CAP)]
    results = {
        "lower": bounds.lower,
        "upper": bounds.upper,
        "condition": bounds.condition,
        "verdict": bounds.verdict,
        "onb_deviation": onb.deviation,
        "provenance": gram.provenance,
        "system_size": freqs.size,
        "domain_measure": domain.measure,
    }
    verdicts = {
        "is_onb": bool(onb.is_onb),
        "is_riesz_basis": bounds.verdict == "riesz_basis",
        "degenerate": bounds.verdict == "degenerate",
    }
    return hyps, results, verdicts


def _run_transfer(params, rng, tol, r: _Reader):
    domain = _build_domain(r, r.get(params, "domain", "parameters", "dict"),
                           "parameters.domain")
    freq_spec = r.get(params, "freqs", "parameters", "dict")
    weight_spec = r.get(params, "weight", "parameters", "dict")
    freqs = _build_freqs(r, freq_spec, "parameters.freqs", domain.dimension) if domain else None
    weight = _build_weight(r, weight_spec, "parameters.weight", domain) if domain else None
    r.done()
    report = verify_riesz_transfer(domain, freqs, weight)
    hyps = [_hyp("weight_nowhere_zero", True, report.inf_mod, SUPPORT_TOL)]
    results = {
        "exp_lower": report.exp_bounds.lower,
        "exp_upper": report.exp_bounds.upper,
        "translation_lower": report.translation_bounds.lower,
        "translation_upper": report.translation_bounds.upper,
        "predicted_lower": report.predicted_lower,
        "predicted_upper": report.predicted_upper,
        "lower_margin": report.lower_margin,
        "upper_margin": report.upper_margin,
        "inf_modulus": report.inf_mod,
        "sup_modulus": report.sup_mod,
        "resolution_flagged": report.weight_resolution_flagged,
    }
    verdicts = {
        "sandwich_holds": bool(report.sandwich_holds),
        "translation_degenerate": report.translation_bounds.verdict == "degenerate",
    }
    return hyps, results, verdicts


def _run_frame_transfer(params, rng, tol, r: _Reader):
    domain = _build_domain(r, r.get(params, "domain", "parameters", "dict"),
                           "parameters.domain")
    freq_spec = r.get(params, "freqs", "parameters", "dict")
    weight_spec = r.get(params, "weight", "parameters", "dict")
    freqs = _build_freqs(r, freq_spec, "parameters.freqs", domain.dimension) if domain else None
    weight = _build_weight(r, weight_spec, "parameters.weight", domain) if domain else None
    r.done()
    report = verify_frame_transfer(domain, freqs, weight)
    hyps = [
        _hyp("support_nonempty", report.space_dim >= 1, report.space_dim, 1),
        _hyp("support_within_cap", report.space_dim <= 512, report.space_dim, 512),
    ]
    results = {
        "weighted_lower": report.weighted_bounds.lower,
        "weighted_upper": report.weighted_bounds.upper,
        "unweighted_lower": report.unweighted_bounds.lower,
        "unweighted_upper": report.unweighted_bounds.upper,
        "predicted_lower": report.predicted_lower,
        "predicted_upper": report.predicted_upper,
        "lower_margin": report.lower_margin,
        "upper_margin": report.upper_margin,
        "weight_floor_sq": report.weight_floor_sq,
        "weight_ceil_sq": report.weight_ceil_sq,
        "space_dim": report.space_dim,
        "n_vectors": report.n_vectors,
        "support_is_proper": report.support_is_proper,
        "note": report.note,
    }
    verdicts = {"sandwich_holds": bool(report.sandwich_holds)}
    return hyps, results, verdicts


_TILING_MODES = ("check_tiling", "check_spectrum", "search_complements", "search_spectra")


def _run_tiling(params, rng, tol, r: _Reader):
    moduli = r.int_list(params, "moduli", "parameters")
    mode = r.get(params, "mode", "parameters", "str")
    pattern = r.int_list(params, "pattern", "parameters")
    if mode is not None and mode not in _TILING_MODES:
        r.fail("parameters.mode", f"expected one of {', '.join(_TILING_MODES)}")
        mode = None
    candidate = None
    if mode in ("check_tiling", "check_spectrum"):
        candidate = r.int_list(params, "candidate", "parameters")
    samples = params.get("samples")
    if samples is not None and (isinstance(samples, bool) or not isinstance(samples, int)):
        r.fail("parameters.samples", "expected int")
        samples = None
    force = params.get("force_exhaustive", False)
    if not isinstance(force, bool):
        r.fail("parameters.force_exhaustive", "expected bool")
        force = False
    r.done()
    group = GroupInstance(moduli)
    hyps = [_hyp("pattern_within_group", max(pattern) < group.order,
                 max(pattern), group.order)]
    if mode == "check_tiling":
        verdict = tiles(group, pattern, candidate)
        results = {"uncovered": verdict.uncovered, "collisions": verdict.collisions}
        verdicts = {"is_tiling": bool(verdict.is_tiling)}
    elif mode == "check_spectrum":
        verdict = is_spectrum(group, pattern, candidate)
        results = {"defect": verdict.defect, "tolerance": verdict.tolerance,
                   "sizes_match": verdict.sizes_match}
        verdicts = {"is_spectrum": bool(verdict.is_spectrum)}
    else:
        search = search_complements if mode == "search_complements" else search_spectra
        found = search(group, pattern, force_exhaustive=force, samples=samples, rng=rng)
        results = {
            "found": [list(s) for s in found.found],
            "n_found": len(found.found),
            "examined": found.examined,
            "note": found.note,
        }
        verdicts = {"exhaustive": bool(found.exhaustive),
                    "found_any": len(found.found) > 0}
    return hyps, results, verdicts


def _run_cube_check(params, rng, tol, r: _Reader):
    moduli = r.int_list(params, "moduli", "parameters")
    side = r.get(params, "side", "parameters", "int")
    r.done()
    group = GroupInstance(moduli)
    report = cube_equivalence_check(group, side)
    hyps = [_hyp("side_divides_moduli", True, side, min(group.moduli))]
    results = {
        "side": list(report.side),
        "dual_side": list(report.dual_side),
        "n_complements": report.n_complements,
        "n_spectra": report.n_spectra,
        "complements": [list(s) for s in report.complements.found],
        "spectra": [list(s) for s in report.spectra.found],
    }
    verdicts = {"families_equal": bool(report.equal)}
    return hyps, results, verdicts


def _run_sample(params, rng, tol, r: _Reader):
    domain = _build_domain(r, r.get(params, "domain", "parameters", "dict"),
                           "parameters.domain")
    signal_spec = r.get(params, "signal", "parameters", "dict")
    nodes = _nodes_param(r, params, 129)
    raw_terms = params.get("n_terms")
    if isinstance(raw_terms, int) and not isinstance(raw_terms, bool):
        terms = [raw_terms]
    elif isinstance(raw_terms, list) and raw_terms and all(
            isinstance(v, int) and not isinstance(v, bool) for v in raw_terms):
        terms = list(raw_terms)
    else:
        r.fail("parameters.n_terms", "expected int or nonempty int list")
        terms = []
    points_spec = r.get(params, "eval_points", "parameters", "dict")
    pts = None
    if isinstance(points_spec, dict):
        if "grid" in points_spec:
            g = points_spec["grid"]
            if (isinstance(g, list) and len(g) == 3
                    and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in g[:2])
                    and isinstance(g[2], int) and not isinstance(g[2], bool) and g[2] >= 2):
                pts = np.linspace(float(g[0]), float(g[1]), g[2])
            else:
                r.fail("parameters.eval_points.grid", "expected [lo, hi, count]")
        elif "points" in points_spec and isinstance(points_spec["points"], list):
            pts = np.asarray(points_spec["points"], dtype=float)
        else:
            r.fail("parameters.eval_points", "needs grid or points")
    rule = None
    signal = None
    if domain is not None and not r.errors:
        rule = quadrature(domain, nodes)
        signal = _build_signal(r, signal_spec, "parameters.signal", domain, rule, rng)
    r.done()
    truncations = []
    energies = []
    for n in terms:
        rep = shannon_reconstruct(signal, n, pts)
        energies.append((n, rep.coeff_energy))
        truncations.append({
            "n_terms": n,
            "coeff_energy": rep.coeff_energy,
            "parseval_ok": bool(rep.parseval_ok),
            "max_abs_value": float(np.max(np.abs(rep.values))),
        })
    ordered = sorted(energies)
    monotone = all(b[1] >= a[1] - 1e-12 * max(1.0, abs(a[1]))
                   for a, b in zip(ordered, ordered[1:]))
    hyps = [_hyp("nodes_resolve_truncation", rule.n_nodes > 2 * max(terms),
                 rule.n_nodes, 2 * max(terms) + 1)]
    results = {
        "signal_energy": signal.norm_sq,
        "truncations": truncations,
    }
    verdicts = {
        "parseval_ok": all(t["parseval_ok"] for t in truncations),
        "energy_monotone": bool(monotone),
    }
    return hyps, results, verdicts


def _run_gabor(params, rng, tol, r: _Reader):
    base = _build_domain(r, r.get(params, "base_domain", "parameters", "dict"),
                         "parameters.base_domain")
    window_spec = r.get(params, "window", "parameters", "dict")
    window_domain = None
    window = None
    if isinstance(window_spec, dict):
        window_domain = _build_domain(
            r, r.get(window_spec, "domain", "parameters.window", "dict"),
            "parameters.window.domain")
        weight_spec = r.get(window_spec, "weight", "parameters.window", "dict")
        if window_domain is not None and weight_spec is not None:
            window = _build_weight(r, weight_spec, "parameters.window.weight",
                                   window_domain)
    mod_spec = r.get(params, "modulations", "parameters", "dict")
    trans_spec = r.get(params, "translations", "parameters", "dict")
    modulations = (_build_freqs(r, mod_spec, "parameters.modulations", base.dimension)
                   if base else None)
    translations = (_build_freqs(r, trans_spec, "parameters.translations",
                                 window_domain.dimension) if window_domain else None)
    r.done()
    report = vv_onb_check(base, modulations, translations, window,
                          tol if tol is not None else ABSOLUTE_TOL)
    order = modulations.size * translations.size
    hyps = [
        _hyp("unit_base_measure", abs(base.measure - 1.0) <= UNIT_MEASURE_RTOL,
             base.measure, UNIT_MEASURE_RTOL),
        _hyp("system_size_within_cap", order <= SYSTEM_SIZE_CAP, order, SYSTEM_SIZE_CAP),
    ]
    results = {
        "gabor_deviation": report.gabor.deviation,
        "modulation_deviation": report.modulation.deviation,
        "translation_deviation": report.translation.deviation,
        "kron_defect": report.kron_defect,
        "window_normalized": report.window_normalized,
        "system_order": order,
        "note": report.note,
    }
    verdicts = {
        "gabor_is_onb": bool(report.gabor.is_onb),
        "modulation_is_onb": bool(report.modulation.is_onb),
        "translation_is_onb": bool(report.translation.is_onb),
        "equivalent": bool(report.equivalent),
    }
    return hyps, results, verdicts


def _run_periodization(params, rng, tol, r: _Reader):
    profile_spec = r.get(params, "profile", "parameters", "dict")
    resolution = params.get("resolution", 64)
    if isinstance(resolution, bool) or not isinstance(resolution, int):
        r.fail("parameters.resolution", "expected int")
        resolution = 64
    gram_nodes = params.get("gram_nodes")
    if gram_nodes is not None and (isinstance(gram_nodes, bool)
                                   or not isinstance(gram_nodes, int)):
        r.fail("parameters.gram_nodes", "expected int")
        gram_nodes = None
    profile = None
    if isinstance(profile_spec, dict):
        kind = r.get(profile_spec, "kind", "parameters.profile", "str")
        if kind is not None:
            args = {k: v for k, v in profile_spec.items() if k != "kind"}
            try:
                profile = periodization_profile(kind, **args)
            except (TypeError, ValueError, KeyError) as exc:
                r.fail("parameters.profile", str(exc))
    r.done()
    report = zd_periodization(profile, resolution=resolution,
                              tol=tol if tol is not None else 1e-8,
                              gram_nodes=gram_nodes)
    hyps = [_hyp("resolution_sufficient", resolution >= 2, resolution, 2)]
    results = {
        "sup_deviation": report.sup_deviation,
        "gram_deviation": report.gram_deviation,
        "tol": report.tol,
        "gram_tol": report.gram_tol,
        "resolution": report.resolution,
    }
    verdicts = {
        "is_onb": bool(report.is_onb),
        "gram_is_onb": bool(report.gram_is_onb),
        "routes_agree": bool(report.agree),
    }
    return hyps, results, verdicts


def _run_factorization(params, rng, tol, r: _Reader):
    domain = _build_domain(r, r.get(params, "domain", "parameters", "dict"),
                           "parameters.domain")
    weight_spec = r.get(params, "weight", "parameters", "dict")
    signal_spec = r.get(params, "signal", "parameters", "dict")
    nodes = _nodes_param(r, params, 64)
    weight = None
    signal = None
    if domain is not None and not r.errors:
        rule = quadrature(domain, nodes)
        weight = _build_weight(r, weight_spec, "parameters.weight", domain, rule=rule)
        signal = _build_signal(r, signal_spec, "parameters.signal", domain, rule, rng)
    r.done()
    report = convolution_factorization_check(domain, weight, signal)
    hyps = [_hyp("weight_nowhere_zero", True, weight.inf_mod, SUPPORT_TOL)]
    results = {
        "residual": report.residual,
        "quotient_norm": report.quotient_norm,
        "norm_bound": report.norm_bound,
        "signal_norm": report.signal_norm,
    }
    verdicts = {
        "roundtrip_exact": report.residual <= (tol if tol is not None else 1e-12),
        "bound_holds": bool(report.bound_holds),
    }
    return hyps, results, verdicts


COMMANDS = {
    "bounds": _run_bounds,
    "transfer": _run_transfer,
    "frame-transfer": _run_frame_transfer,
    "tiling": _run_tiling,
    "cube-check": _run_cube_check,
    "sample": _run_sample,
    "gabor": _run_gabor,
    "periodization": _run_periodization,
    "factorization": _run_factorization,
}


def run_scenario(scenario, command: str, seed_override: Optional[int] = None,
                 tol_override: Optional[float] = None) -> dict:
    """Validate and execute one scenario dict, returning the report dict."""
    r = _Reader()
    if not isinstance(scenario, dict):
        raise SchemaError(["scenario (expected an object)"])
    name = r.get(scenario, "name", "scenario", "str")
    declared = r.get(scenario, "command", "scenario", "str")
    params = r.get(scenario, "parameters", "scenario", "dict")
    seed = r.get(scenario, "seed", "scenario", "int", required=False, default=0)
    expect = r.get(scenario, "expect", "scenario", "dict", required=False, default={})
    for key, value in (expect or {}).items():
        if not isinstance(value, bool):
            r.fail(f"scenario.expect.{key}", "expected bool")
    r.done()
    if declared not in COMMANDS:
        raise SchemaError([f"scenario.command (unknown command {declared!r})"])
    if declared != command:
        raise SchemaError(
            [f"scenario.command (declares {declared!r}, invoked as {command!r})"])
    effective_seed = seed_override if seed_override is not None else seed
    rng = Pcg32(effective_seed)
    started = time.perf_counter()
    hyps, results, verdicts = COMMANDS[command](params, rng, tol_override, r)
    wall = time.perf_counter() - started
    unknown = [k for k in expect if k not in verdicts]
    if unknown:
        raise SchemaError([f"scenario.expect.{k} (unknown verdict)" for k in unknown])
    passed = (all(h["passed"] for h in hyps)
              and all(verdicts[k] == v for k, v in expect.items()))
    return {
        "name": name,
        "command": command,
        "tool_version": TOOL_VERSION,
        "seed": effective_seed,
        "tolerance_policy": _TOLERANCE_POLICY,
        "scenario": scenario,
        "hypothesis_checks": hyps,
        "results": results,
        "verdicts": verdicts,
        "expect": expect,
        "passed": bool(passed),
        "wall_time_s": wall,
    }


def _float_token(x: float) -> str:
    if not np.isfinite(x):
        return "null"
    return f"{x:.17g}"


def _emit(value, out, indent: int) -> None:
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(value, dict):
        if not value:
            out.write("{}")
            return
        out.write("{\n")
        keys = sorted(str(k) for k in value)
        for i, key in enumerate(keys):
            out.write(f'{inner}"{key}": ')
            _emit(value[key], out, indent + 2)
            out.write(",\n" if i + 1 < len(keys) else "\n")
        out.write(pad + "}")
        return
    if isinstance(value, (list, tuple)):
        seq = list(value)
        if not seq:
            out.write("[]")
            return
        out.write("[\n")
        for i, item in enumerate(seq):
            out.write(inner)
            _emit(item, out, indent + 2)
            out.write(",\n" if i + 1 < len(seq) else "\n")
        out.write(pad + "]")
        return
    if isinstance(value, str):
        out.write(json.dumps(value, ensure_ascii=True))
        return
    if isinstance(value, (bool, np.bool_)):
        out.write("true" if value else "false")
        return
    if value is None:
        out.write("null")
        return
    if isinstance(value, (int, np.integer)):
        out.write(str(int(value)))
        return
    if isinstance(value, (float, np.floating)):
        out.write(_float_token(float(value)))
        return
    if isinstance(value, (complex, np.complexfloating)):
        _emit({"im": float(value.imag), "re": float(value.real)}, out, indent)
        return
    if isinstance(value, np.ndarray):
        _emit(value.tolist(), out, indent)
        return
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_report(report: dict) -> str:
    """Serialize with sorted keys and 17-significant-digit floats."""
    out = io.StringIO()
    _emit(report, out, 0)
    out.write("\n")
    return out.getvalue()


def _compact_token(value) -> str:
    out = io.StringIO()
    _emit(value, out, 0)
    return " ".join(out.getvalue().split())


def report_csv(report: dict) -> str:
    """Flat three-column rendering of one report."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["section", "key", "value"])
    for key in ("name", "command", "tool_version", "seed", "passed"):
        writer.writerow(["meta", key, _compact_token(report[key])])
    for h in report["hypothesis_checks"]:
        writer.writerow(["hypothesis", h["name"], _compact_token(h["passed"])])
    for section in ("results", "verdicts"):
        for key in sorted(report[section]):
            writer.writerow([section, key, _compact_token(report[section][key])])
    return buf.getvalue()


def write_text_atomic(path: str, text: str) -> None:
    """Write via a sibling temp file and an atomic rename."""
    target = os.path.abspath(path)
    directory = os.path.dirname(target)
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_json(path: str) -> Any:
    with open(path, "r") as handle:
        return json.load(handle)


def _main_single(args) -> int:
    scenario = _load_json(args.scenario)
    report = run_scenario(scenario, args.command, args.seed, args.tol)
    text = dumps_report(report) if args.format == "json" else report_csv(report)
    if args.out:
        write_text_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0 if report["passed"] else 1


def _main_batch(args) -> int:
    files = sorted(glob.glob(os.path.join(args.dir, "*.json")))
    if not files:
        print(f"error: no scenario files in {args.dir}", file=sys.stderr)
        return 2
    os.makedirs(args.out_dir, exist_ok=True)
    rows = []
    status = 0
    for path in files:
        stem = os.path.splitext(os.path.basename(path))[0]
        try:
            scenario = _load_json(path)
            declared = scenario.get("command") if isinstance(scenario, dict) else None
            report = run_scenario(scenario, declared, args.seed, args.tol)
        except (SchemaError, ValueError, OSError, json.JSONDecodeError) as exc:
            rows.append([stem, "", "error", str(exc)])
            status = 2
            continue
        write_text_atomic(os.path.join(args.out_dir, stem + ".json"),
                          dumps_report(report))
        rows.append([stem, report["command"],
                     "true" if report["passed"] else "false", ""])
        if not report["passed"] and status == 0:
            status = 1
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scenario", "command", "passed", "note"])
    writer.writerows(rows)
    write_text_atomic(os.path.join(args.out_dir, "summary.csv"), buf.getvalue())
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expbases",
        description="Scenario-driven checks for exponential and translation systems.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        sp = sub.add_parser(command, help=f"run a {command} scenario")
        sp.add_argument("--scenario", required=True, help="scenario JSON file")
        sp.add_argument("--out", help="report path (stdout when omitted)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--seed", type=int, help="override the scenario seed")
        sp.add_argument("--tol", type=float, help="override the judgement tolerance")
    batch = sub.add_parser("batch", help="run every scenario in a directory")
    batch.add_argument("--dir", required=True, help="directory of scenario files")
    batch.add_argument("--out-dir", required=True, help="directory for reports")
    batch.add_argument("--seed", type=int, help="override every scenario seed")
    batch.add_argument("--tol", type=float, help="override the judgement tolerance")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "batch":
            return _main_batch(args)
        return _main_single(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
