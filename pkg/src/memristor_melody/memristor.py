"""Single memristive connection: a bounded, saturating conductance curve.

The state variable is a dimensionless charge proxy measured in
"transition counts". Conductance rises along the curve as the connection
is used and falls when it is driven the other way.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np


class RelaxPhase(enum.IntEnum):
    NONE = 0
    QUARTER = 1
    HALF = 2


# indexed by RelaxPhase value
RELAX_FACTORS = (1.0, 0.25, 0.5)


def relax_factor(phase) -> float:
    """Multiplier applied to conductance while a connection recovers from a spike."""
    return RELAX_FACTORS[RelaxPhase(phase)]


@dataclass(frozen=True)
class ConductanceCurve:
    """G(s) = g_min + (g_max - g_min) * (1 - exp(-s / kappa)), in reduced units."""

    g_min: float = 0.1
    g_max: float = 1.0
    kappa: float = 4.0

    def __post_init__(self):
        if not (0 < self.g_min < self.g_max):
            raise ValueError(f"need 0 < g_min < g_max, got {self.g_min}, {self.g_max}")
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")

    @classmethod
    def parse(cls, text: str) -> "ConductanceCurve":
        """Build from a ``"gmin,gmax,kappa"`` string."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected gmin,gmax,kappa, got {text!r}")
        return cls(*(float(p) for p in parts))

    def __call__(self, state):
        return conductance(self, state)

    def resistance(self, state):
        """Memristance M = 1/G."""
        return 1.0 / conductance(self, state)


DEFAULT_CURVE = ConductanceCurve()


def conductance(curve: ConductanceCurve, state):
    """Conductance for a scalar or array of states.

    Always evaluated through numpy so that a row slice and the full matrix
    give bit-identical values.
    """
    s = np.asarray(state, dtype=float)
    if np.any(s < 0) or np.any(np.isnan(s)):
        raise ValueError("memristor state must be non-negative")
    g = curve_values(curve, s)
    if g.ndim == 0:
        return float(g)
    return g


def curve_values(curve: ConductanceCurve, s: np.ndarray) -> np.ndarray:
    """Unchecked curve evaluation for state arrays already known to be valid."""
    return curve.g_min + (curve.g_max - curve.g_min) * (1.0 - np.exp(-s / curve.kappa))


def increment_state(state: float, step: float) -> float:
    if not step > 0:
        raise ValueError(f"increment step must be positive, got {step}")
    return state + step


def decrement_state(state: float, step: float) -> float:
    if not step > 0:
        raise ValueError(f"decrement step must be positive, got {step}")
    return max(0.0, state - step)


@dataclass(frozen=True)
class MemristorElement:
    state: float = 0.0
    relax_phase: RelaxPhase = RelaxPhase.NONE

    def __post_init__(self):
        if self.state < 0:
            raise ValueError("memristor state must be non-negative")

    def conductance(self, curve: ConductanceCurve = DEFAULT_CURVE) -> float:
        return conductance(curve, self.state)

    def effective_weight(self, curve: ConductanceCurve = DEFAULT_CURVE) -> float:
        return conductance(curve, self.state) * relax_factor(self.relax_phase)


def increment(elem: MemristorElement, step: float) -> MemristorElement:
    """Move the element up its curve by ``step``."""
    return replace(elem, state=increment_state(elem.state, step))


def decrement(elem: MemristorElement, step: float) -> MemristorElement:
    """Move the element down its curve, clamping at zero state."""
    return replace(elem, state=decrement_state(elem.state, step))
