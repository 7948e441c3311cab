"""
Evolution over long runs
========================

Feedback keeps reshaping the matrices. Snapshots after 1,000, 10,000 and
100,000 notes each get a 100-note excerpt generated from the frozen
snapshot with a shared random stream, so the excerpts differ only through
the matrices.
"""

import time

from memristor_melody import PITCHES, GeneratorConfig, TransitionGraph, bundled_corpus, evolve, seed_graphs, style_report

pitch, tempo = seed_graphs(bundled_corpus())

t0 = time.perf_counter()
result = evolve(pitch, tempo, GeneratorConfig(rng_seed=3), total_notes=100_000,
                snapshot_at=[0, 1_000, 10_000, 100_000])
print(f"100,000 notes in {time.perf_counter() - t0:.1f} s")

for snap in result.snapshots:
    g = TransitionGraph(PITCHES).set_states(snap.pitch_states)
    report = style_report(g, reference=pitch)
    print(f"\nafter {snap.notes:>6d} notes: drift {report.drift_l1:9.0f}, "
          f"symmetry {report.symmetry_pct:5.1f} %, used transitions {report.nonzero_transitions}")
    print("  ", " ".join(e.token() for e in snap.excerpt.events[:16]))
