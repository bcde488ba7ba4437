"""Build cloning processes and check them in exact arithmetic.

A cloning process takes an object state x, a blank copy slot, and a machine,
and outputs (x, x, f(x)) via a single symplectic map.  Everything below is
computed over the rationals, so "passes" means an exact identity, not a
tolerance.
"""

import random

from symclone import (
    SkewForm,
    RatMatrix,
    basic_cloner,
    general_cloner,
    product_cloner,
    standard_form,
    verify_cloning,
)

# The smallest interesting case: a 2-dimensional object space.
c = basic_cloner()
print("phi =")
for row in c.phi.tolist():
    print("   ", [str(x) for x in row])
print("readout F =", [[str(x) for x in row] for row in c.readout.tolist()])

report = verify_cloning(c)
print("verdict:", report.verdict)
print("symplectic defect:", report.symplectic_defect_norm)
print("cloning residual:", report.cloning_residual)

# The construction scales by taking products of the basic block.
big = product_cloner(c, c)
print("\nproduct of two copies acts on", big.phi.rows, "dimensions;",
      "verdict:", verify_cloning(big).verdict)

# It also transports to any rational symplectic form, not just the standard
# one: the normalizing basis is folded into phi, so verification stays exact.
rng = random.Random(0)
while True:
    a = RatMatrix([[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)])
    m = a - a.T
    if m.rank() == 4:
        break
form = SkewForm(m)
g = general_cloner(form)
print("\nrandom form, dim 4: machine dim =", g.machine_dim,
      "| verdict:", verify_cloning(g).verdict)

# Sanity: the machine is exactly as large as the object.  That is not an
# artifact of this construction -- see 02_machine_size_bound.py.
assert g.machine_dim == form.dim
assert general_cloner(standard_form(5)).machine_dim == 10
