"""Independent oracles and instance generators used across the tests.

Everything here deliberately avoids the library's production code
paths: ranks come from subset-span enumeration, censuses from plain
nested loops, and state checks from dense numpy linear algebra.
"""
from __future__ import annotations

import random

import numpy as np

from pcgraph import PCG, SignedEdge, BTerm, validate


def span_rank(rows: list[int]) -> int:
    """GF(2) rank as log2 of the row-span size, by full enumeration."""
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    size = len(span)
    assert size & (size - 1) == 0
    return size.bit_length() - 1


def exhaustive_solve_exists(rows: list[int], rhs_bits: list[int], cols: int) -> bool:
    """Is there any x with row.x = rhs (mod 2)?  Checks all 2^cols vectors."""
    for x in range(1 << cols):
        if all((row & x).bit_count() & 1 == b for row, b in zip(rows, rhs_bits)):
            return True
    return False


def naive_census(pcg: PCG) -> tuple[int, int]:
    """Satisfying-coloring count by the plainest possible double loop."""
    sat = 0
    for bits in range(1 << pcg.n):
        ok = True
        for e in pcg.edges:
            parity = 0
            for v in e.vertices:
                parity ^= (bits >> (v - 1)) & 1
            if parity != e.theta_bit:
                ok = False
                break
        sat += ok
    return 1 << pcg.n, sat


def random_valid_pcg(rng: random.Random, max_n: int = 10, max_edges: int = 8) -> PCG:
    """Rejection-sample a structurally valid instance."""
    while True:
        n = rng.randint(3, max_n)
        p = rng.randint(1, max_edges)
        edges = []
        masks = []
        ok = True
        for _ in range(p):
            size = rng.randint(1, max(1, min(n - 1, 4)))
            verts = tuple(sorted(rng.sample(range(1, n + 1), size)))
            mask = 0
            for v in verts:
                mask |= 1 << (v - 1)
            if any(mask & m in (mask, m) for m in masks):
                ok = False
                break
            masks.append(mask)
            edges.append(SignedEdge(verts, rng.choice((+1, -1))))
        if not ok:
            continue
        pcg = PCG(n, tuple(edges))
        if validate(pcg).ok:
            return pcg


def random_b_terms(rng: random.Random, pcg: PCG, max_terms: int = 2) -> tuple[BTerm, ...]:
    """Random admissible orthogonal-component terms (possibly none)."""
    count = rng.randint(0, max_terms)
    if count == 0:
        return ()
    patterns: list[tuple[int, ...]] = []
    edge_sets = [set(e.vertices) for e in pcg.edges]
    attempts = 0
    while len(patterns) < count and attempts < 200:
        attempts += 1
        size = rng.randint(1, pcg.n)
        verts = tuple(sorted(rng.sample(range(1, pcg.n + 1), size)))
        if verts in patterns:
            continue
        if any(set(verts) <= s for s in edge_sets):
            continue
        patterns.append(verts)
    if not patterns:
        patterns = [tuple(range(1, pcg.n + 1))]  # the all-ones pattern always works
    weights = [rng.random() + 0.1 for _ in patterns]
    phases = [np.exp(2j * np.pi * rng.random()) for _ in patterns]
    total = sum(weights)
    return tuple(
        BTerm(verts, phase * np.sqrt(w / total))
        for verts, w, phase in zip(patterns, weights, phases)
    )


def dense_vector(state) -> np.ndarray:
    """Dense statevector with site 1 as the most significant digit."""
    dim = state.d ** state.n
    vec = np.zeros(dim, dtype=complex)
    for key, amp in state.amplitudes.items():
        idx = 0
        for ch in key:
            idx = idx * state.d + int(ch)
        vec[idx] = amp
    return vec


def dense_shift_product(n: int, d: int, sites: set[int]) -> np.ndarray:
    """Dense matrix of the product over ``sites`` of X with X|m> = |m-1 mod d>."""
    x = np.zeros((d, d), dtype=complex)
    for m in range(d):
        x[(m - 1) % d, m] = 1
    out = np.array([[1.0 + 0j]])
    for site in range(1, n + 1):
        out = np.kron(out, x if site in sites else np.eye(d, dtype=complex))
    return out


def dense_y_product(n: int, sites: set[int]) -> np.ndarray:
    y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    out = np.array([[1.0 + 0j]])
    for site in range(1, n + 1):
        out = np.kron(out, y if site in sites else np.eye(2, dtype=complex))
    return out


def dense_product_distribution(state, sites: set[int], basis: str = "X") -> dict[int, float]:
    """Spectral distribution of the product observable via dense projectors."""
    vec = dense_vector(state)
    d = state.d
    if basis == "Y":
        w_mat = dense_y_product(state.n, sites)
    else:
        w_mat = dense_shift_product(state.n, d, sites)
    omega = np.exp(2j * np.pi / d)
    dist = {}
    for j in range(d):
        proj = sum(
            np.linalg.matrix_power(w_mat, m) * omega ** (-j * m) for m in range(d)
        ) / d
        dist[j] = float(np.real(vec.conj() @ (proj @ vec)))
    return dist
