"""
The memristive connection
=========================

Each transition between two notes is a memristor. Using a connection moves
it up a saturating conductance curve; driving it the other way moves it
back down. After firing, a connection relaxes: its weight reads at a
quarter, then half, then full value on the following steps.
"""

import numpy as np

from memristor_melody import DEFAULT_CURVE, MemristorElement, RelaxPhase, conductance, decrement, increment

# The curve rises from g_min and never quite reaches g_max.
states = np.linspace(0, 30, 7)
for s, g in zip(states, conductance(DEFAULT_CURVE, states)):
    print(f"state {s:5.1f}  conductance {g:.4f}")

# Increments and decrements act on the state; conductance follows.
e = MemristorElement(2.0)
print("up:", increment(e, 1.0).conductance(), "down:", decrement(e, 1.0).conductance())

# Transient relaxation multiplies the weight, it does not touch the state.
for phase in (RelaxPhase.QUARTER, RelaxPhase.HALF, RelaxPhase.NONE):
    print(phase.name, MemristorElement(5.0, phase).effective_weight())

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    s = np.linspace(0, 30, 300)
    plt.plot(s, conductance(DEFAULT_CURVE, s), label="memristor")
    plt.plot(s, np.clip(DEFAULT_CURVE.g_min + s * 0.9 / 30, 0, 1), "--", label="linear")
    plt.xlabel("state (transition counts)")
    plt.ylabel("conductance (reduced units)")
    plt.legend()
    plt.savefig("conductance_curve.png", dpi=120)
    print("wrote conductance_curve.png")
except ImportError:
    pass
