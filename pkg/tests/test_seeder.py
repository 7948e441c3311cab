import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_melody_text
from memristor_melody.graph import DURATIONS, PITCHES
from memristor_melody.seeder import (
    Melody,
    MelodyParseError,
    NoteEvent,
    SeedCorpus,
    count_transitions,
    fold_pitch,
    load_manifest,
    normalize,
    parse_melody,
    parse_pitch,
    pitch_name,
    quantize_duration,
    seed_graphs,
)

G_MIN = 0.1


def recount(melodies):
    """Brute-force oracle: walk every melody with plain dicts."""
    pitch, dur = {}, {}
    for m in melodies:
        for a, b in zip(m.events, m.events[1:]):
            pitch[(a.pitch, b.pitch)] = pitch.get((a.pitch, b.pitch), 0) + 1
            dur[(a.duration, b.duration)] = dur.get((a.duration, b.duration), 0) + 1
    p = np.zeros((24, 24), dtype=int)
    d = np.zeros((9, 9), dtype=int)
    for (x, y), c in pitch.items():
        p[x - 60, y - 60] = c
    for (x, y), c in dur.items():
        d[DURATIONS.values.index(x), DURATIONS.values.index(y)] = c
    return p, d


def test_parse_basic():
    m = parse_melody("C4:1 D4:0.5 C4:1")
    assert [e.pitch for e in m.events] == [60, 62, 60]
    assert [e.duration for e in m.events] == [1.0, 0.5, 1.0]


def test_rests_are_skipped():
    m = parse_melody("C4:1 R:1 D4:1")
    assert [e.pitch_name for e in m.events] == ["C4", "D4"]


def test_comments_and_fractions():
    m = parse_melody("# a tune\nEb5:3/8  Bb3:0.75\n  # indented comment\nF#4:2")
    assert [(e.pitch_name, e.duration) for e in m.events] == [("Eb5", 0.375), ("Bb3", 0.75), ("Gb4", 2.0)]


@pytest.mark.parametrize("text,line,col", [
    ("H4:1", 1, 1),
    ("C4:1 D4:0", 1, 6),
    ("C4:1\nC4:-1", 2, 1),
    ("C4:1 C4:x", 1, 6),
    ("C4:1 D4", 1, 6),
    ("C4:1\n  Cb:1", 2, 3),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(MelodyParseError) as err:
        parse_melody(text)
    assert (err.value.line, err.value.column) == (line, col)


def test_pitch_names_round_trip():
    for midi in range(0, 128):
        assert parse_pitch(pitch_name(midi)) == midi
    assert parse_pitch("C4") == 60 and parse_pitch("B5") == 83 and parse_pitch("Bb5") == 82


def test_normalize_folds():
    assert normalize(parse_melody("C6:1")).events[0].pitch_name == "C5"
    assert normalize(parse_melody("B3:1")).events[0].pitch_name == "B4"
    assert normalize(parse_melody("G4:1"), -7).events[0].pitch_name == "C4"


def test_quantization_boundaries():
    """Exhaustive scan around every midpoint against an exact Fraction oracle."""
    values = sorted(DURATIONS.values)

    def oracle(d):
        d = Fraction(d)
        return min(values, key=lambda v: (abs(d - Fraction(v)), v))

    probes = [0.001, 0.26, 100.0]
    for lo, hi in zip(values, values[1:]):
        mid = (lo + hi) / 2
        probes += [mid, np.nextafter(mid, 0), np.nextafter(mid, 100), lo, hi]
    for d in probes:
        assert quantize_duration(float(d)) == oracle(float(d)), d
    assert quantize_duration(0.26) == 0.25
    assert quantize_duration(0.3125) == 0.25  # exact tie goes to the shorter value


@given(st.integers(-60, 60), st.lists(st.tuples(st.integers(0, 127), st.floats(0.01, 20)), min_size=1, max_size=30))
def test_normalize_properties(transpose, notes):
    m = Melody([NoteEvent(p, d) for p, d in notes])
    n = normalize(m, transpose)
    assert normalize(n) == n
    for before, after in zip(m.events, n.events):
        assert 60 <= after.pitch <= 83
        assert after.pitch % 12 == (before.pitch + transpose) % 12
        assert after.duration in DURATIONS.values


def test_count_transitions_examples():
    p, _ = count_transitions([parse_melody("C4:1 C4:1 C4:1")])
    assert p[0, 0] == 2 and p.sum() == 2
    p, _ = count_transitions([parse_melody("C4:1 D4:1 C4:1")])
    assert p[0, 2] == 1 and p[2, 0] == 1 and p.sum() == 2


def test_count_transitions_matches_recount(np_rng):
    melodies = [normalize(parse_melody(random_melody_text(np_rng, n))) for n in (5, 40, 120)]
    p, d = count_transitions(melodies)
    rp, rd = recount(melodies)
    assert np.array_equal(p, rp) and np.array_equal(d, rd)
    # per-melody counts sum to the corpus counts: no cross-boundary pairs
    parts = [count_transitions([m]) for m in melodies]
    assert np.array_equal(sum(x[0] for x in parts), p)
    assert p.sum() == d.sum() == sum(len(m) - 1 for m in melodies)


def test_count_requires_normalized_and_nonempty():
    with pytest.raises(ValueError):
        count_transitions([])
    with pytest.raises(ValueError):
        count_transitions([parse_melody("C3:1 C4:1")])


def test_seed_graphs_examples():
    p, t = seed_graphs(SeedCorpus([parse_melody("C4:1")]))
    assert np.all(p.effective_weights() == G_MIN) and np.all(t.effective_weights() == G_MIN)
    p, t = seed_graphs(SeedCorpus([parse_melody("C4:1 D4:1")]))
    assert np.count_nonzero(p.states) == 1 and p.states[0, 2] == 1.0
    assert t.states[2, 2] == 1.0


def test_seed_tempo_independent_of_pitch():
    a, ta = seed_graphs(SeedCorpus([parse_melody("C4:1 D4:0.5 E4:1")]))
    b, tb = seed_graphs(SeedCorpus([parse_melody("G5:1 C4:0.5 A4:1")]))
    assert np.array_equal(ta.states, tb.states)
    assert not np.array_equal(a.states, b.states)


def test_bundled_corpus_mass_near_diagonal(corpus):
    p, _ = count_transitions(corpus)
    i, j = np.indices(p.shape)
    near = p[np.abs(i - j) <= 4].sum()
    assert near / p.sum() > 0.8
    assert np.count_nonzero(p) < 0.2 * p.size


def test_seeding_is_deterministic(corpus):
    a, _ = seed_graphs(corpus)
    b, _ = seed_graphs(load_manifest(corpus_path()))
    assert np.array_equal(a.states, b.states)


def corpus_path():
    from pathlib import Path

    import memristor_melody

    return Path(memristor_melody.__file__).parent / "data" / "corpus.json"


def test_manifest_formats(tmp_path):
    (tmp_path / "a.mel").write_text("G4:1 A4:1")
    (tmp_path / "b.mel").write_text("C4:1 C4:1")
    (tmp_path / "m.json").write_text(json.dumps([{"file": "a.mel", "transpose": -7}, "b.mel"]))
    (tmp_path / "m.txt").write_text("# corpus\na.mel, -7\nb.mel\n")
    for manifest in ("m.json", "m.txt"):
        c = load_manifest(tmp_path / manifest)
        assert c.transpose_semitones == [-7, 0]
        p, _ = count_transitions(c)
        assert p[0, 2] == 1 and p[0, 0] == 1
    assert len(load_manifest(tmp_path).melodies) == 2
    assert load_manifest(tmp_path / "a.mel", default_transpose=5).transpose_semitones == [5]


def test_empty_manifest(tmp_path):
    (tmp_path / "m.txt").write_text("# nothing\n")
    with pytest.raises(ValueError):
        load_manifest(tmp_path / "m.txt")


def test_melody_text_round_trip(np_rng):
    m = normalize(parse_melody(random_melody_text(np_rng, 50)))
    assert parse_melody(m.to_text()).events == m.events
