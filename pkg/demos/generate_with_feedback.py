"""
Generating with and without feedback
====================================

At every step each transition out of the current note draws a folded
Gaussian number, multiplied by its weight; the largest product fires. With
feedback the fired connection is strengthened, its reverse weakened, and
both relax for two steps. Both runs below share the same random stream.
"""

import numpy as np

from memristor_melody import GeneratorConfig, bundled_corpus, drift_l1, generate, seed_graphs

pitch, tempo = seed_graphs(bundled_corpus())

static = generate(pitch, tempo, GeneratorConfig(rng_seed=42, feedback=False))
adaptive = generate(pitch, tempo, GeneratorConfig(rng_seed=42, feedback=True))

print("static:  ", " ".join(e.token() for e in static.events[:24]))
print("feedback:", " ".join(e.token() for e in adaptive.events[:24]))

same = sum(a == b for a, b in zip(static.events, adaptive.events))
print(f"{same} of 100 notes agree; first notes equal: {static.events[0] == adaptive.events[0]}")
print("matrix drift after 100 notes:", drift_l1(adaptive.pitch_graph, pitch))


def bounce_rate(events):
    x = [e.pitch for e in events]
    return np.mean([x[k] == x[k + 2] != x[k + 1] for k in range(len(x) - 2)])


long_static = generate(pitch, tempo, GeneratorConfig(rng_seed=1, feedback=False, note_count=20_000))
long_adaptive = generate(pitch, tempo, GeneratorConfig(rng_seed=1, note_count=20_000))
print(f"X->Y->X bounce rate: static {bounce_rate(long_static.events):.4f}, "
      f"feedback {bounce_rate(long_adaptive.events):.4f}")

with open("piece.mel", "w") as f:
    f.write(adaptive.to_text("feedback, seed 42"))
