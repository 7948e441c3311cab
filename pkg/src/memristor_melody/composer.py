"""Melody generation by spike selection with feedback into the graphs.

Each step scores every transition as ``effective weight * |mu + sigma * z|``
with one standard-normal draw per transition, pitch matrix first and then
tempo matrix, both in row-major order. Only the row of the current symbol
competes; the rest of the draws are consumed so that the random stream stays
aligned whatever path the melody takes.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace

import numpy as np

from .graph import DURATIONS, PITCHES, TransitionGraph, format_weight
from .seeder import Melody, NoteEvent

DEFAULT_SEED = 42
_BLOCK_STEPS = 1024


@dataclass(frozen=True)
class GeneratorConfig:
    rng_seed: int = DEFAULT_SEED
    gaussian_mu: float = 0.0
    gaussian_sigma: float = 1.0
    inc_step: float = 1.0
    dec_step: float = 1.0
    note_count: int = 100
    feedback: bool = True
    start_pitch: str = "C4"
    start_duration: str = "crotchet"

    def __post_init__(self):
        if not self.gaussian_sigma > 0:
            raise ValueError("gaussian_sigma must be positive")
        if self.note_count < 1:
            raise ValueError("note_count must be at least 1")
        if not (self.inc_step > 0 and self.dec_step > 0):
            raise ValueError("inc_step and dec_step must be positive")
        PITCHES.index(self.start_pitch)
        DURATIONS.index(self.start_duration)


@dataclass(slots=True)
class TraceStep:
    step: int
    from_pitch: int
    to_pitch: int
    score: float
    weight: float  # effective weight of the chosen pitch transition
    factor: float  # its relaxation factor at selection time
    from_dur: int
    to_dur: int
    dur_score: float
    dur_weight: float
    dur_factor: float


TRACE_COLUMNS = ("step", "from_pitch", "to_pitch", "score", "from_dur", "to_dur", "dur_score")


def trace_to_csv(trace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for t in trace:
        w.writerow([
            t.step,
            PITCHES.symbols[t.from_pitch],
            PITCHES.symbols[t.to_pitch],
            format_weight(t.score),
            DURATIONS.symbols[t.from_dur],
            DURATIONS.symbols[t.to_dur],
            format_weight(t.dur_score),
        ])
    return buf.getvalue()


@dataclass
class GeneratedPiece:
    events: list[NoteEvent]
    pitch_graph: TransitionGraph
    tempo_graph: TransitionGraph
    trace: list[TraceStep] = field(default_factory=list)

    def melody(self, name: str = "generated") -> Melody:
        return Melody(list(self.events), name)

    def to_text(self, name: str = "generated") -> str:
        return self.melody(name).to_text()

    def trace_csv(self) -> str:
        return trace_to_csv(self.trace)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def folded_draws(rng: np.random.Generator, shape, mu: float = 0.0, sigma: float = 1.0) -> np.ndarray:
    return np.abs(mu + sigma * rng.standard_normal(shape))


def draw_scores(graph: TransitionGraph, rng, mu: float = 0.0, sigma: float = 1.0) -> np.ndarray:
    """Score matrix for one step: one folded Gaussian draw per transition."""
    n = graph.size
    return graph.effective_weights() * folded_draws(rng, (n, n), mu, sigma)


def next_symbol(graph: TransitionGraph, current, rng, mu: float = 0.0, sigma: float = 1.0) -> int:
    """Index of the highest-scoring successor of ``current`` (lowest index on ties)."""
    i = graph.alphabet.index(current)
    return int(np.argmax(draw_scores(graph, rng, mu, sigma)[i]))


class Composer:
    """Stepwise generator that owns (and mutates) a pitch and a tempo graph."""

    def __init__(self, pitch_graph: TransitionGraph, tempo_graph: TransitionGraph,
                 config: GeneratorConfig = GeneratorConfig(), rng=None):
        if pitch_graph.alphabet != PITCHES or tempo_graph.alphabet != DURATIONS:
            raise ValueError("expected a pitch graph and a tempo graph")
        self.pitch_graph = pitch_graph
        self.tempo_graph = tempo_graph
        self.config = config
        self.rng = make_rng(config.rng_seed) if rng is None else rng
        self.current_pitch = PITCHES.index(config.start_pitch)
        self.current_dur = DURATIONS.index(config.start_duration)
        self.steps_done = 0
        self.events: list[NoteEvent] = []
        self.trace: list[TraceStep] = []

    def run(self, n_notes: int) -> list[NoteEvent]:
        """Generate ``n_notes`` more notes and return them."""
        cfg = self.config
        pg, tg = self.pitch_graph, self.tempo_graph
        np_, nt = pg.size, tg.size
        start = len(self.events)
        remaining = n_notes
        while remaining > 0:
            # never draw past the requested notes: the stream stays exactly aligned
            rows = min(_BLOCK_STEPS, remaining)
            block = folded_draws(self.rng, (rows, np_ * np_ + nt * nt), cfg.gaussian_mu, cfg.gaussian_sigma)
            for draws in block:
                i, a = self.current_pitch, self.current_dur
                w = pg.row_weights(i)
                s = w * draws[i * np_:(i + 1) * np_]
                j = int(s.argmax())
                wd = tg.row_weights(a)
                off = np_ * np_ + a * nt
                sd = wd * draws[off:off + nt]
                b = int(sd.argmax())

                self.steps_done += 1
                self.trace.append(TraceStep(
                    self.steps_done, i, j, float(s[j]), float(w[j]), pg.factor(i, j),
                    a, b, float(sd[b]), float(wd[b]), tg.factor(a, b),
                ))
                # age older spikes before this step's spike starts its quarter phase
                pg.advance_relaxation()
                tg.advance_relaxation()
                if cfg.feedback:
                    pg.apply_spike(i, j, cfg.inc_step, cfg.dec_step)
                    tg.apply_spike(a, b, cfg.inc_step, cfg.dec_step)
                self.events.append(NoteEvent(PITCHES.values[j], DURATIONS.values[b]))
                self.current_pitch, self.current_dur = j, b
            remaining -= rows
        return self.events[start:]

    def piece(self) -> GeneratedPiece:
        return GeneratedPiece(list(self.events), self.pitch_graph, self.tempo_graph, list(self.trace))


def generate(pitch_graph: TransitionGraph, tempo_graph: TransitionGraph,
             config: GeneratorConfig = GeneratorConfig(), rng=None) -> GeneratedPiece:
    """Generate ``config.note_count`` notes from copies of the given graphs.

    The first emitted note is the successor of the start pitch, not the
    start pitch itself. The input graphs are left untouched; the piece
    carries the post-run graphs.
    """
    composer = Composer(pitch_graph.copy(), tempo_graph.copy(), config, rng)
    composer.run(config.note_count)
    return composer.piece()


@dataclass
class Snapshot:
    notes: int
    pitch_states: np.ndarray
    tempo_states: np.ndarray
    excerpt: GeneratedPiece


@dataclass
class EvolutionResult:
    snapshots: list[Snapshot]
    piece: GeneratedPiece


def excerpt_rng(seed: int) -> np.random.Generator:
    """Stream for snapshot excerpts, independent of the main run's stream."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1,)))


def evolve(pitch_graph: TransitionGraph, tempo_graph: TransitionGraph,
           config: GeneratorConfig = GeneratorConfig(), total_notes: int = 100_000,
           snapshot_at=(1_000, 10_000, 100_000), excerpt_notes: int = 100) -> EvolutionResult:
    """Run feedback generation continuously, recording the matrices at snapshot points.

    Every snapshot gets an ``excerpt_notes`` excerpt generated without feedback
    from the snapshot states, all excerpts using the same random stream so
    they differ only through the matrices.
    """
    points = list(snapshot_at)
    if points != sorted(points) or len(set(points)) != len(points):
        raise ValueError("snapshot points must be strictly ascending")
    if points and (points[0] < 0 or points[-1] > total_notes):
        raise ValueError(f"snapshot points must lie in [0, {total_notes}]")
    composer = Composer(pitch_graph.copy(), tempo_graph.copy(), replace(config, feedback=True))
    excerpt_cfg = replace(config, note_count=excerpt_notes, feedback=False)
    snapshots = []
    for k in points:
        composer.run(k - composer.steps_done)
        p = TransitionGraph(PITCHES, pitch_graph.curve).set_states(composer.pitch_graph.states)
        t = TransitionGraph(DURATIONS, tempo_graph.curve).set_states(composer.tempo_graph.states)
        excerpt = generate(p, t, excerpt_cfg, rng=excerpt_rng(config.rng_seed))
        snapshots.append(Snapshot(k, p.states.copy(), t.states.copy(), excerpt))
    composer.run(total_notes - composer.steps_done)
    return EvolutionResult(snapshots, composer.piece())
