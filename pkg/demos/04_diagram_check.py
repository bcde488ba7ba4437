"""One cloning diagram, two worlds.

The cloning equation c o (psi x beta x rho) = psi x psi x f(psi) makes sense
in any symmetric monoidal category with chosen states.  The checker below is
generic; we instantiate it for symplectic affine maps (exact) and for Hilbert
spaces (numeric) and watch it pass and fail in the right places.
"""

import math

import numpy as np

from symclone import (
    basic_cloner,
    basis_cloner,
    check_cloning_diagram,
    diagram_from_process,
    hilbert_cloning_diagram,
)

# Symplectic instance: the verified process commutes on every basis state.
inst, diagram = diagram_from_process(basic_cloner())
report = check_cloning_diagram(inst, diagram)
print("symplectic:", "commutes" if report.passed else "fails",
      f"({len(report.results)} states, exhaustive={report.exhaustive})")

# Hilbert instance: CNOT as a cloning candidate, blank state |0>.
inst, diagram = hilbert_cloning_diagram(basis_cloner(2), beta=[1.0, 0.0])
plus = np.array([1.0, 1.0]) / math.sqrt(2)
states = [np.eye(2)[:, 0], np.eye(2)[:, 1], plus]
report = check_cloning_diagram(inst, diagram, states)
for state, ok in report.results:
    print("hilbert state", np.round(state, 3), "->", "ok" if ok else "FAILS")
print("overall:", "commutes" if report.passed else "fails", "--", report.note)
