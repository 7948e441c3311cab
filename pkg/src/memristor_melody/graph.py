"""Reflexive directed k-graphs of memristive connections.

A :class:`TransitionGraph` holds one memristor per ordered symbol pair
(self-loops included). Row index is the from-symbol, column the to-symbol.
State is stored as a dense float matrix; relaxation phases live in a small
pending table because at most a handful of elements are recovering at once.
"""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass

import numpy as np

from .memristor import (
    DEFAULT_CURVE,
    ConductanceCurve,
    RELAX_FACTORS,
    MemristorElement,
    RelaxPhase,
    curve_values,
    decrement_state,
    increment_state,
)


@dataclass(frozen=True)
class Alphabet:
    name: str
    symbols: tuple
    values: tuple

    def __len__(self):
        return len(self.symbols)

    def index(self, symbol) -> int:
        """Index of a symbol given by name or by integer position."""
        if isinstance(symbol, (int, np.integer)) and not isinstance(symbol, bool):
            if 0 <= symbol < len(self.symbols):
                return int(symbol)
            raise ValueError(f"{self.name} index out of range: {symbol}")
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ValueError(f"unknown {self.name} symbol: {symbol!r}") from None

    def index_of_value(self, value) -> int:
        try:
            return self.values.index(value)
        except ValueError:
            raise ValueError(f"no {self.name} symbol has value {value!r}") from None


PITCH_CLASSES = ("C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B")
LOWEST_MIDI = 60  # C4

PITCHES = Alphabet(
    "pitch",
    tuple(f"{pc}{octave}" for octave in (4, 5) for pc in PITCH_CLASSES),
    tuple(range(LOWEST_MIDI, LOWEST_MIDI + 24)),
)

# crotchet = 1
DURATIONS = Alphabet(
    "duration",
    (
        "semiquaver",
        "quaver",
        "crotchet",
        "minim",
        "dotted_semiquaver",
        "dotted_quaver",
        "dotted_crotchet",
        "dotted_minim",
        "breve",
    ),
    (0.25, 0.5, 1.0, 2.0, 0.375, 0.75, 1.5, 3.0, 8.0),
)


def alphabet_for_size(n: int) -> Alphabet:
    for alphabet in (PITCHES, DURATIONS):
        if len(alphabet) == n:
            return alphabet
    raise ValueError(f"no alphabet has {n} symbols (expected 24 or 9)")


class TransitionGraph:
    """Square matrix of memristor elements over an alphabet.

    ``states`` is the source of truth. Effective weights (conductance times
    relaxation factor) are cached and refreshed only where a spike or the
    relaxation schedule touches them; the cache always equals
    ``curve_values(curve, states) * factors`` bit for bit.
    """

    def __init__(self, alphabet: Alphabet, curve: ConductanceCurve = DEFAULT_CURVE):
        n = len(alphabet)
        self.alphabet = alphabet
        self.curve = curve
        self._states = np.zeros((n, n))
        self._factors = np.ones((n, n))
        self._eff = np.full((n, n), curve.g_min)
        self._pending: dict[tuple[int, int], int] = {}
        self._g_memo: dict[float, float] = {}

    @property
    def states(self) -> np.ndarray:
        view = self._states.view()
        view.flags.writeable = False
        return view

    @property
    def size(self) -> int:
        return len(self.alphabet)

    @property
    def n_elements(self) -> int:
        return self._states.size

    @property
    def pending_relax(self) -> list[tuple[int, int, RelaxPhase]]:
        return [(i, j, RelaxPhase(phase)) for (i, j), phase in self._pending.items()]

    def copy(self) -> "TransitionGraph":
        other = TransitionGraph.__new__(TransitionGraph)
        other.alphabet, other.curve = self.alphabet, self.curve
        other._states = self._states.copy()
        other._factors = self._factors.copy()
        other._eff = self._eff.copy()
        other._pending = dict(self._pending)
        other._g_memo = self._g_memo
        return other

    def element(self, src, dst) -> MemristorElement:
        i, j = self.alphabet.index(src), self.alphabet.index(dst)
        return MemristorElement(float(self._states[i, j]), RelaxPhase(self._pending.get((i, j), 0)))

    def conductances(self) -> np.ndarray:
        """Conductance of every element, ignoring relaxation."""
        return curve_values(self.curve, self._states)

    def effective_weights(self) -> np.ndarray:
        return curve_values(self.curve, self._states) * self._factors

    def row_weights(self, i: int) -> np.ndarray:
        """Cached effective weights out of symbol index ``i`` (a view; do not modify)."""
        return self._eff[i]

    def factor(self, i: int, j: int) -> float:
        return float(self._factors[i, j])

    def _conductance(self, state: float) -> float:
        g = self._g_memo.get(state)
        if g is None:
            g = self._g_memo[state] = float(curve_values(self.curve, np.array([state]))[0])
        return g

    def _refresh(self, i, j):
        self._eff[i, j] = self._conductance(float(self._states[i, j])) * self._factors[i, j]

    def _set_phase(self, i, j, phase):
        if phase:
            self._pending[(i, j)] = phase
        else:
            self._pending.pop((i, j), None)
        self._factors[i, j] = RELAX_FACTORS[phase]

    def apply_spike(self, src, dst, inc_step: float = 1.0, dec_step: float = 1.0) -> "TransitionGraph":
        """Fire ``src -> dst``: strengthen it, weaken the reverse, start both relaxing.

        A self-transition is its own reverse, so it is only strengthened.
        """
        i, j = self.alphabet.index(src), self.alphabet.index(dst)
        self._states[i, j] = increment_state(self._states[i, j], inc_step)
        self._set_phase(i, j, RelaxPhase.QUARTER)
        self._refresh(i, j)
        if i != j:
            self._states[j, i] = decrement_state(self._states[j, i], dec_step)
            self._set_phase(j, i, RelaxPhase.QUARTER)
            self._refresh(j, i)
        return self

    def advance_relaxation(self) -> "TransitionGraph":
        """Quarter-phase elements move to half, half-phase elements recover fully."""
        pending, factors, eff, states = self._pending, self._factors, self._eff, self._states
        for key, phase in list(pending.items()):
            if phase == RelaxPhase.QUARTER:
                pending[key] = RelaxPhase.HALF
                factors[key] = 0.5
            else:
                del pending[key]
                factors[key] = 1.0
            eff[key] = self._conductance(float(states[key])) * factors[key]
        return self

    def clear_relaxation(self):
        self._pending.clear()
        self._factors.fill(1.0)
        self._eff = curve_values(self.curve, self._states) * self._factors

    def seed_from_counts(self, counts, state_per_count: float = 1.0) -> "TransitionGraph":
        counts = np.asarray(counts)
        if counts.shape != self._states.shape:
            raise ValueError(f"counts shape {counts.shape} does not match graph {self._states.shape}")
        if np.any(counts < 0):
            raise ValueError("transition counts must be non-negative")
        self._states = counts.astype(float) * state_per_count
        self.clear_relaxation()
        return self

    def set_states(self, states) -> "TransitionGraph":
        states = np.array(states, dtype=float)
        if states.shape != self._states.shape:
            raise ValueError(f"state shape {states.shape} does not match graph {self._states.shape}")
        if np.any(states < 0) or not np.all(np.isfinite(states)):
            raise ValueError("states must be finite and non-negative")
        self._states = states
        self.clear_relaxation()
        return self

    def __repr__(self):
        return f"TransitionGraph({self.alphabet.name}, {self.size}x{self.size}, pending={len(self._pending)})"


def new_graph(alphabet: Alphabet, curve: ConductanceCurve = DEFAULT_CURVE) -> TransitionGraph:
    return TransitionGraph(alphabet, curve)


def effective_weights(graph: TransitionGraph) -> np.ndarray:
    return graph.effective_weights()


def apply_spike(graph, src, dst, inc_step=1.0, dec_step=1.0):
    return graph.apply_spike(src, dst, inc_step, dec_step)


def advance_relaxation(graph):
    return graph.advance_relaxation()


def seed_from_counts(graph, counts, state_per_count=1.0):
    return graph.seed_from_counts(counts, state_per_count)


# -- CSV snapshots -----------------------------------------------------------


def format_weight(x: float) -> str:
    return f"{x:.9g}"


def format_state(x: float) -> str:
    # shortest repr round-trips exactly
    return repr(float(x))


def matrix_to_csv(matrix, alphabet: Alphabet | None = None, fmt=format_weight) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if alphabet is not None:
        writer.writerow(alphabet.symbols)
    for row in np.asarray(matrix):
        writer.writerow([fmt(x) for x in row])
    return buf.getvalue()


def write_matrix_csv(path, matrix, alphabet: Alphabet | None = None, fmt=format_weight):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(matrix_to_csv(matrix, alphabet, fmt))


class MatrixFormatError(ValueError):
    pass


def read_matrix_csv(path) -> tuple[np.ndarray, Alphabet]:
    """Read a square matrix CSV; a non-numeric first row is taken as a header."""
    with open(path, encoding="utf-8", newline="") as f:
        rows = [r for r in csv.reader(f) if r]
    if not rows:
        raise MatrixFormatError(f"{os.fspath(path)}: empty matrix file")
    header = None
    try:
        float(rows[0][0])
    except ValueError:
        header, rows = rows[0], rows[1:]
    n = len(rows)
    try:
        alphabet = alphabet_for_size(n)
    except ValueError as exc:
        raise MatrixFormatError(f"{os.fspath(path)}: {exc}") from None
    if header is not None and tuple(header) != alphabet.symbols:
        raise MatrixFormatError(f"{os.fspath(path)}: header does not match the {alphabet.name} alphabet")
    try:
        matrix = np.array([[float(x) for x in r] for r in rows])
    except ValueError as exc:
        raise MatrixFormatError(f"{os.fspath(path)}: {exc}") from None
    if matrix.shape != (n, n):
        raise MatrixFormatError(f"{os.fspath(path)}: matrix is not square ({n} rows)")
    return matrix, alphabet


def save_states(graph: TransitionGraph, path):
    write_matrix_csv(path, graph.states, graph.alphabet, fmt=format_state)


def save_weights(graph: TransitionGraph, path):
    write_matrix_csv(path, graph.effective_weights(), graph.alphabet)


def load_states(path, curve: ConductanceCurve = DEFAULT_CURVE) -> TransitionGraph:
    matrix, alphabet = read_matrix_csv(path)
    try:
        return TransitionGraph(alphabet, curve).set_states(matrix)
    except ValueError as exc:
        raise MatrixFormatError(f"{os.fspath(path)}: {exc}") from None
