"""Memristor-network melody generation.

Seed melodies populate two reflexive directed graphs of memristive
connections (24 pitches, 9 durations). Melodies are generated by picking
the strongest weighted random spike out of the current symbol, and every
spike feeds back into the graphs, so the generator drifts away from the
Markov chain it started as.
"""
from .analyzer import StyleReport, drift_l1, reducibility, style_report, symmetry_pct
from .composer import (
    Composer,
    GeneratedPiece,
    GeneratorConfig,
    draw_scores,
    evolve,
    generate,
    next_symbol,
)
from .graph import DURATIONS, PITCHES, Alphabet, TransitionGraph, new_graph
from .memristor import (
    DEFAULT_CURVE,
    ConductanceCurve,
    MemristorElement,
    RelaxPhase,
    conductance,
    decrement,
    increment,
    relax_factor,
)
from .seeder import (
    Melody,
    MelodyParseError,
    NoteEvent,
    SeedCorpus,
    bundled_corpus,
    count_transitions,
    load_manifest,
    load_melody,
    normalize,
    parse_melody,
    seed_graphs,
)

__version__ = "0.1.0"
