"""Seed melodies: parsing, normalisation to two octaves of C, transition counts.

Melody files are whitespace-separated ``PITCH:DURATION`` tokens, e.g.
``C4:1 Eb5:0.75 R:0.5 G4:3/8``. ``R`` marks a rest; lines starting with
``#`` are comments. Durations are in crotchets.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .graph import DURATIONS, LOWEST_MIDI, PITCH_CLASSES, PITCHES, TransitionGraph
from .memristor import DEFAULT_CURVE, ConductanceCurve

_PITCH_RE = re.compile(r"^([A-Ga-g])(bb|b|##|#|♭|♯)?(-?\d+)$")
_STEPS = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
_ACCIDENTALS = {None: 0, "b": -1, "bb": -2, "♭": -1, "#": 1, "##": 2, "♯": 1}

HIGHEST_MIDI = LOWEST_MIDI + 23

# sorted once for quantisation; ties go to the earlier (shorter) value
_SORTED_DURATIONS = sorted(DURATIONS.values)


class MelodyParseError(ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line, self.column, self.source = line, column, source
        where = ":".join(str(x) for x in (source, line, column) if x is not None)
        super().__init__(f"{where}: {message}" if where else message)


@dataclass(frozen=True)
class NoteEvent:
    pitch: int  # MIDI number
    duration: float  # crotchets

    @property
    def pitch_name(self) -> str:
        return pitch_name(self.pitch)

    def token(self) -> str:
        return f"{self.pitch_name}:{self.duration:g}"


@dataclass
class Melody:
    events: list[NoteEvent]
    name: str = ""

    def __len__(self):
        return len(self.events)

    def to_text(self, per_line: int = 16) -> str:
        tokens = [e.token() for e in self.events]
        lines = [f"# {self.name}"] if self.name else []
        lines += [" ".join(tokens[k:k + per_line]) for k in range(0, len(tokens), per_line)]
        return "\n".join(lines) + "\n"


@dataclass
class SeedCorpus:
    melodies: list[Melody]
    transpose_semitones: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.transpose_semitones:
            self.transpose_semitones = [0] * len(self.melodies)
        if len(self.transpose_semitones) != len(self.melodies):
            raise ValueError("need one transposition per melody")

    def normalized(self) -> list[Melody]:
        return [normalize(m, t) for m, t in zip(self.melodies, self.transpose_semitones)]


def parse_pitch(token: str) -> int:
    m = _PITCH_RE.match(token)
    if not m:
        raise ValueError(f"invalid pitch {token!r}")
    letter, accidental, octave = m.groups()
    return 12 * (int(octave) + 1) + _STEPS[letter.upper()] + _ACCIDENTALS[accidental]


def pitch_name(midi: int) -> str:
    return f"{PITCH_CLASSES[midi % 12]}{midi // 12 - 1}"


def parse_duration(token: str) -> float:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"invalid duration {token!r}") from None
    if value <= 0:
        raise ValueError(f"duration must be positive, got {token!r}")
    return float(value)


def parse_melody(text: str, name: str = "", source=None) -> Melody:
    events = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        for m in re.finditer(r"\S+", line):
            token, col = m.group(), m.start() + 1
            p, sep, d = token.partition(":")
            if not sep:
                raise MelodyParseError(f"expected PITCH:DURATION, got {token!r}", lineno, col, source)
            try:
                duration = parse_duration(d)
                if p.upper() == "R":
                    continue
                events.append(NoteEvent(parse_pitch(p), duration))
            except ValueError as exc:
                raise MelodyParseError(str(exc), lineno, col, source) from None
    return Melody(events, name)


def load_melody(path) -> Melody:
    path = Path(path)
    return parse_melody(path.read_text(encoding="utf-8"), name=path.stem, source=str(path))


def fold_pitch(midi: int) -> int:
    while midi > HIGHEST_MIDI:
        midi -= 12
    while midi < LOWEST_MIDI:
        midi += 12
    return midi


def quantize_duration(duration: float) -> float:
    """Nearest duration in the alphabet, ties toward the shorter value."""
    return min(_SORTED_DURATIONS, key=lambda v: abs(duration - v))


def normalize(melody: Melody, transpose_semitones: int = 0) -> Melody:
    """Transpose, fold into C4..B5 and quantise durations."""
    events = [
        NoteEvent(fold_pitch(e.pitch + transpose_semitones), quantize_duration(e.duration))
        for e in melody.events
    ]
    return Melody(events, melody.name)


def _as_melodies(corpus) -> list[Melody]:
    if isinstance(corpus, SeedCorpus):
        return corpus.normalized()
    if isinstance(corpus, Melody):
        return [corpus]
    return list(corpus)


def count_transitions(corpus) -> tuple[np.ndarray, np.ndarray]:
    """Pitch (24x24) and duration (9x9) transition counts.

    Accepts a :class:`SeedCorpus` (normalised here) or already-normalised
    melodies. Transitions never cross melody boundaries.
    """
    melodies = _as_melodies(corpus)
    if not melodies:
        raise ValueError("empty corpus")
    pitch_counts = np.zeros((len(PITCHES), len(PITCHES)), dtype=np.int64)
    dur_counts = np.zeros((len(DURATIONS), len(DURATIONS)), dtype=np.int64)
    for melody in melodies:
        try:
            p = np.array([PITCHES.index_of_value(e.pitch) for e in melody.events], dtype=np.intp)
            d = np.array([DURATIONS.index_of_value(e.duration) for e in melody.events], dtype=np.intp)
        except ValueError as exc:
            raise ValueError(f"melody {melody.name!r} is not normalised: {exc}") from None
        np.add.at(pitch_counts, (p[:-1], p[1:]), 1)
        np.add.at(dur_counts, (d[:-1], d[1:]), 1)
    return pitch_counts, dur_counts


def seed_graphs(corpus, curve: ConductanceCurve = DEFAULT_CURVE, state_per_count: float = 1.0):
    """Seeded (pitch graph, tempo graph); the two are built independently."""
    pitch_counts, dur_counts = count_transitions(corpus)
    pitch = TransitionGraph(PITCHES, curve).seed_from_counts(pitch_counts, state_per_count)
    tempo = TransitionGraph(DURATIONS, curve).seed_from_counts(dur_counts, state_per_count)
    return pitch, tempo


# -- corpus manifests ---------------------------------------------------------


def load_manifest(path, default_transpose: int = 0) -> SeedCorpus:
    """Load a corpus from a manifest, a directory of ``*.mel`` files or one melody file.

    JSON manifests are a list of ``{"file": ..., "transpose": n}`` objects
    (or an object with a ``"melodies"`` list of them). Flat manifests hold
    one ``file, transpose`` pair per line. Paths are relative to the manifest.
    """
    path = Path(path)
    if path.is_dir():
        entries = [(p, default_transpose) for p in sorted(path.glob("*.mel"))]
    elif path.suffix == ".mel":
        entries = [(path, default_transpose)]
    elif path.suffix == ".json":
        data = json.loads(path.read_text(encoding="utf-8"))
        if isinstance(data, dict):
            data = data.get("melodies", [])
        entries = []
        for item in data:
            if isinstance(item, str):
                item = {"file": item}
            entries.append((path.parent / item["file"], int(item.get("transpose", default_transpose))))
    else:
        entries = []
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            name, _, transpose = line.partition(",")
            t = int(transpose) if transpose.strip() else default_transpose
            entries.append((path.parent / name.strip(), t))
    if not entries:
        raise ValueError(f"{path}: corpus is empty")
    return SeedCorpus([load_melody(p) for p, _ in entries], [t for _, t in entries])


def bundled_corpus() -> SeedCorpus:
    """The small synthetic fixture corpus shipped with the package."""
    return load_manifest(Path(__file__).parent / "data" / "corpus.json")
