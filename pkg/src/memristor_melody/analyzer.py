"""Matrix metrics for seeded and evolved graphs."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .graph import TransitionGraph


def symmetry_pct(weights) -> float:
    """100 * (1 - sum|A - A^T| / (2 sum A)).

    100 for a symmetric matrix, 0 when every connection is one-way.
    """
    a = np.asarray(weights, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if np.any(a < 0):
        raise ValueError("weights must be non-negative")
    total = a.sum()
    if total == 0:
        raise ValueError("symmetry is undefined for an all-zero matrix")
    pct = 100.0 * (1.0 - np.abs(a - a.T).sum() / (2.0 * total))
    return float(min(100.0, max(0.0, pct)))  # rounding can stray just outside


def used_mask(weights, threshold: float) -> np.ndarray:
    return np.asarray(weights, dtype=float) > threshold


def reducibility(weights, threshold: float) -> int:
    """Number of symbols touched by at least one transition above ``threshold``."""
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    used = used_mask(weights, threshold)
    return int(np.count_nonzero(used.any(axis=0) | used.any(axis=1)))


def _states(m):
    return m.states if isinstance(m, TransitionGraph) else np.asarray(m, dtype=float)


def drift_l1(current, reference) -> float:
    """L1 distance between two state matrices (graphs or arrays)."""
    a, b = _states(current), _states(reference)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.abs(a - b).sum())


@dataclass
class StyleReport:
    alphabet: str
    symbols: list
    symmetry_pct: float | None
    reducibility: int
    nonzero_transitions: int
    per_symbol_usage: list
    drift_l1: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def table(self) -> str:
        def fmt(x, spec):
            return "n/a" if x is None else format(x, spec)

        lines = [
            f"alphabet             {self.alphabet} ({len(self.symbols)} symbols)",
            f"symmetry             {fmt(self.symmetry_pct, '.2f')} %",
            f"reducibility         {self.reducibility}",
            f"used transitions     {self.nonzero_transitions}",
        ]
        if self.drift_l1 is not None:
            lines.append(f"drift (L1)           {self.drift_l1:.9g}")
        lines.append("usage (in+out degree)")
        width = max(len(s) for s in self.symbols)
        for sym, deg in zip(self.symbols, self.per_symbol_usage):
            if deg:
                lines.append(f"  {sym:<{width}}  {deg:3d}  {'#' * deg}")
        return "\n".join(lines)


def style_report(graph: TransitionGraph, reference=None, threshold: float | None = None) -> StyleReport:
    """Metrics for a graph, measured on conductance with relaxation ignored.

    Symmetry is taken over conductance above the floor ``g_min`` so that
    unused connections do not count as symmetric mass. A connection is
    "used" when its conductance exceeds ``threshold`` (default ``g_min``).
    """
    g = graph.conductances()
    if threshold is None:
        threshold = graph.curve.g_min
    excess = g - graph.curve.g_min
    try:
        sym = symmetry_pct(excess)
    except ValueError:
        sym = None
    used = used_mask(g, threshold)
    usage = used.sum(axis=0) + used.sum(axis=1)
    return StyleReport(
        alphabet=graph.alphabet.name,
        symbols=list(graph.alphabet.symbols),
        symmetry_pct=sym,
        reducibility=reducibility(g, threshold),
        nonzero_transitions=int(used.sum()),
        per_symbol_usage=[int(x) for x in usage],
        drift_l1=None if reference is None else drift_l1(graph, reference),
    )
