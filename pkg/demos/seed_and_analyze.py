"""
Seeding graphs from melodies
============================

Melodies are transposed to C, folded into the two octaves C4..B5 and their
note-to-note and duration-to-duration transitions are counted. The counts
become memristor states, so frequently heard transitions start with high
conductance.
"""

import numpy as np

from memristor_melody import bundled_corpus, count_transitions, seed_graphs, style_report

corpus = bundled_corpus()
for melody, shift in zip(corpus.melodies, corpus.transpose_semitones):
    print(f"{melody.name:15s} {len(melody):3d} notes, transpose {shift:+d}")

pitch_counts, tempo_counts = count_transitions(corpus)
print("pitch transitions:", pitch_counts.sum(), " distinct:", np.count_nonzero(pitch_counts))

# most of the mass sits on or near the diagonal: repeated notes and small steps
i, j = np.indices(pitch_counts.shape)
for k in range(5):
    print(f"interval {k} semitones: {pitch_counts[np.abs(i - j) == k].sum()}")

pitch, tempo = seed_graphs(corpus)
for g in (pitch, tempo):
    print()
    print(style_report(g).table())
