"""
Concurrence of a qubit pair
===========================

A short tour of the entanglement measure used everywhere else: Bell states,
product states, a Werner family and the entanglement of formation.
"""
import numpy as np

from xxzdefects import concurrence, entanglement_of_formation

# %%
# Basis order is |11>, |10>, |01>, |00>. The singlet-like state lives in the
# middle two slots, which is where a single shared excitation ends up.
s = 1 / np.sqrt(2)
bell = np.array([0, s, s, 0])
product = np.kron([0.6, 0.8], [1.0, 0.0])
for name, psi in [("bell", bell), ("product", product)]:
    print(f"{name:8s} C = {concurrence(np.outer(psi, psi.conj())):.6f}")

# %%
# Mixing the Bell state with white noise. The concurrence drops linearly and
# vanishes at p = 1/3.
for p in np.linspace(0, 1, 7):
    rho = p * np.outer(bell, bell) + (1 - p) * np.eye(4) / 4
    c = concurrence(rho)
    print(f"p={p:.3f}  C={c:.4f}  EoF={entanglement_of_formation(c):.4f}")
