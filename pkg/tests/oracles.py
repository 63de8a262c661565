"""Slow reference routes, deliberately independent of the library solvers.

The eigenvalue oracle uses plain power iteration with a fixed seeded start
vector, so disagreements with the dense solver point at the library, not at
randomness in the test.
"""

from itertools import combinations

import numpy as np

POWER_MAX_ITERS = 50000
POWER_INCREMENT_TOL = 1e-14


def dominant_eigenvalue(matrix, seed: int = 123) -> float:
    """Largest eigenvalue of a Hermitian PSD matrix by power iteration."""
    m = np.asarray(matrix, dtype=complex)
    n = m.shape[0]
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    last = np.inf
    lam = 0.0
    for _ in range(POWER_MAX_ITERS):
        w = m @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        lam = float(np.real(np.vdot(v, m @ v)))
        if abs(lam - last) <= POWER_INCREMENT_TOL * max(1.0, abs(lam)):
            break
        last = lam
    return lam


def extreme_eigenvalues(matrix, seed: int = 123) -> tuple[float, float]:
    """(smallest, largest) eigenvalues via power iteration plus a spectral flip.

    The smallest eigenvalue comes from running the same iteration on
    (shift I - M) with shift just above the largest eigenvalue.
    """
    m = np.asarray(matrix, dtype=complex)
    lam_max = dominant_eigenvalue(m, seed=seed)
    shift = lam_max + 1.0
    flipped = shift * np.eye(m.shape[0]) - m
    lam_min = shift - dominant_eigenvalue(flipped, seed=seed + 1)
    return lam_min, lam_max


def brute_force_complements(group, pattern) -> set[tuple[int, ...]]:
    """Every canonical complement by direct enumeration of all subsets.

    Only viable for tiny groups; used to pin down the search results.
    """
    order = group.order
    if order % len(pattern) != 0:
        return set()
    size = order // len(pattern)
    pat = [group.coords(p) for p in pattern]
    found = set()
    for combo in combinations(range(order), size):
        covered = set()
        ok = True
        for c in combo:
            base = group.coords(c)
            for p in pat:
                idx = group.index([(a + b) % m for a, b, m in zip(base, p, group.moduli)])
                if idx in covered:
                    ok = False
                    break
                covered.add(idx)
            if not ok:
                break
        if ok and len(covered) == order:
            found.add(canonical_translate(group, combo))
    return found


def brute_force_spectra(group, pattern, tol: float = 1e-9) -> set[tuple[int, ...]]:
    """Every canonical spectrum by testing all candidate subsets directly."""
    order = group.order
    size = len(pattern)
    pat = np.array([group.coords(p) for p in pattern], dtype=float)
    mods = np.asarray(group.moduli, dtype=float)
    found = set()
    for combo in combinations(range(order), size):
        ok = True
        for a, b in combinations(combo, 2):
            delta = np.array(group.coords(a)) - np.array(group.coords(b))
            phases = np.exp(2j * np.pi * (pat @ (delta / mods)))
            if abs(phases.sum()) > tol * size:
                ok = False
                break
        if ok:
            found.add(canonical_translate(group, combo))
    return found


def canonical_translate(group, indices) -> tuple[int, ...]:
    """Lexicographically least translate of the set, matching the library rule."""
    pts = [group.coords(i) for i in indices]
    best = None
    for base in pts:
        shifted = sorted(
            group.index([(a - b) % m for a, b, m in zip(p, base, group.moduli)])
            for p in pts)
        key = tuple(shifted)
        if best is None or key < best:
            best = key
    return best
