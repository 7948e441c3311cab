import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from memristor_melody.analyzer import drift_l1, reducibility, style_report, symmetry_pct
from memristor_melody.graph import DURATIONS, PITCHES, new_graph
from memristor_melody.seeder import SeedCorpus, normalize, parse_melody, seed_graphs

matrices = arrays(float, (6, 6), elements=st.floats(0, 1e3, allow_nan=False))


def test_symmetric_is_100():
    a = np.random.default_rng(0).random((24, 24))
    assert symmetry_pct(a + a.T) == 100.0


def test_one_way_edge_is_0():
    a = np.zeros((9, 9))
    a[0, 1] = 3.0
    assert symmetry_pct(a) == 0.0


def test_symmetry_hand_value():
    # |A - A^T| sums to 2, total mass 4: 100 * (1 - 2/8)
    assert symmetry_pct([[1, 2], [1, 0]]) == 75.0


def test_symmetry_errors():
    with pytest.raises(ValueError):
        symmetry_pct(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        symmetry_pct(np.ones((2, 3)))
    with pytest.raises(ValueError):
        symmetry_pct(-np.ones((2, 2)))


@given(matrices)
def test_symmetry_transpose_and_scale_invariant(a):
    if a.sum() == 0:
        return
    s = symmetry_pct(a)
    assert 0 <= s <= 100
    assert symmetry_pct(a.T) == pytest.approx(s, abs=1e-9)
    assert symmetry_pct(3.5 * a) == pytest.approx(s, abs=1e-9)


def test_reducibility_examples():
    assert reducibility(new_graph(PITCHES).conductances(), 0.1) == 0
    p, _ = seed_graphs(SeedCorpus([parse_melody("C4:1 D4:1 C4:1")]))
    assert reducibility(p.conductances(), 0.1) == 2


def test_reducibility_counts_distinct_pitches(np_rng):
    from conftest import random_melody_text

    for length in (2, 10, 60):
        m = normalize(parse_melody(random_melody_text(np_rng, length)))
        p, _ = seed_graphs([m])
        distinct = len({e.pitch for e in m.events})  # oracle
        if len(m) < 2:
            distinct = 0
        assert style_report(p).reducibility == distinct


@given(matrices, st.floats(0, 500), st.floats(0, 500))
def test_reducibility_monotone(a, t1, t2):
    lo, hi = sorted((t1, t2))
    assert reducibility(a, hi) <= reducibility(a, lo) <= 6


def test_drift():
    g = new_graph(DURATIONS)
    assert drift_l1(g, g) == 0.0
    h = g.copy().apply_spike(3, 3)
    assert drift_l1(h, g) == 1.0
    with pytest.raises(ValueError):
        drift_l1(new_graph(PITCHES), g)


@given(matrices, matrices, matrices)
def test_drift_triangle(a, b, c):
    assert drift_l1(a, c) <= drift_l1(a, b) + drift_l1(b, c) + 1e-6


def test_style_report(seeded):
    p, _ = seeded
    r = style_report(p, reference=new_graph(PITCHES))
    assert 0 < r.symmetry_pct < 100
    assert r.drift_l1 == p.states.sum()
    assert r.nonzero_transitions == np.count_nonzero(p.states)
    assert len(r.per_symbol_usage) == 24
    assert sum(r.per_symbol_usage) == 2 * r.nonzero_transitions
    assert r.reducibility <= 24
    d = json.loads(r.to_json())
    assert set(d) >= {"symmetry_pct", "reducibility", "nonzero_transitions", "per_symbol_usage", "drift_l1"}
    assert "reducibility" in r.table()


def test_style_report_fresh_graph():
    r = style_report(new_graph(DURATIONS))
    assert r.symmetry_pct is None and r.reducibility == 0
    assert "n/a" in r.table()
