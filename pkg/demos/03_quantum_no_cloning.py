"""The quantum side: no isometry clones two non-orthogonal states.

The CNOT gate copies |0> and |1> perfectly.  Feed it the superposition
(|0>+|1>)/sqrt(2) instead and it entangles the registers rather than copying.
The refuter turns this into arithmetic: if one isometry cloned both states,
the machine states would need an overlap of 1/<psi, psi~> > 1, which
Cauchy-Schwarz forbids.
"""

import math

import numpy as np

from symclone import basis_cloner, refute_cloning, standard_refutation

cnot = basis_cloner(2)
e0 = np.eye(2)[:, 0]
plus = np.array([1.0, 1.0]) / math.sqrt(2)

out = cnot @ np.kron(plus, e0)
want = np.kron(plus, plus)
print("CNOT on (|+>, |0>):", np.round(out, 4))
print("a true clone would be:", np.round(want, 4))
print("distance:", round(float(np.linalg.norm(out - want)), 6),
      "= sqrt(2 - sqrt(2)) =", round(math.sqrt(2 - math.sqrt(2)), 6))

r = standard_refutation(2)
print("\noverlap |<psi, psi~>|        :", round(abs(r.overlap), 6))
print("overlap after the process    :", round(abs(r.preserved_overlap), 6), "(isometries preserve it)")
print("machine overlap cloning needs:", round(abs(r.implied_machine_overlap), 6))
print("Cauchy-Schwarz excess        :", round(r.cauchy_schwarz_excess, 6), "> 0, contradiction")

# The argument is not about CNOT -- any isometry fails the same way.
rng = np.random.default_rng(3)
q, _ = np.linalg.qr(rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8)))
psi = np.array([1.0, 0.0])
psi2 = np.array([math.cos(0.4), math.sin(0.4)])
r2 = refute_cloning(q, e0, [1.0, 0.0], psi, psi2)
print("\nrandom 8x8 isometry, overlap", round(abs(r2.overlap), 4),
      "-> excess", round(r2.cauchy_schwarz_excess, 4))
