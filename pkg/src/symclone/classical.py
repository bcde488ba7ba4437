"""Classical cloning processes on symplectic vector spaces.

Constructors build exact cloning processes (the explicit 2-dimensional one,
binary products with the canonical block reshuffle, and the general
even-dimensional construction through Darboux normalization).  The verifier
checks candidates with zero tolerance.  The readout-equation solver and the
kernel witness give the two sides of the machine-size bound, and a
floating-point probe searches the infeasible regime numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize

from .exact import (
    _ONE,
    _ZERO,
    RatMatrix,
    RatVector,
    ShapeError,
    SkewForm,
    direct_sum,
    form_kernel,
    darboux_basis,
    standard_form,
    symplectic_defect,
    vec,
    zero_vec,
)


class CloningVerificationError(ValueError):
    """A candidate process fed to a constructor failed verification."""


class InfeasibleError(ValueError):
    """The readout equation has no solution for these dimensions."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"infeasible ({reason})" + (f": {detail}" if detail else ""))


class NotApplicableError(ValueError):
    """The requested diagnostic only makes sense in the other dimension regime."""


@dataclass(frozen=True)
class CloningProcess:
    """A copying process: object space, blank state, machine space, ready state,
    the full linear map on object x copy x machine, and the machine readout."""

    object_form: SkewForm
    blank: RatVector
    machine_form: SkewForm
    ready: RatVector
    phi: RatMatrix
    readout: RatMatrix

    def __post_init__(self):
        dm, dn = self.object_form.dim, self.machine_form.dim
        if len(self.blank) != dm or len(self.ready) != dn:
            raise ShapeError("blank/ready lengths do not match the form dimensions")
        total = 2 * dm + dn
        if self.phi.shape != (total, total):
            raise ShapeError(f"phi must be {total}x{total}, got {self.phi.shape}")
        if self.readout.shape != (dn, dm):
            raise ShapeError(f"readout must be {dn}x{dm}, got {self.readout.shape}")

    @property
    def object_dim(self) -> int:
        return self.object_form.dim

    @property
    def machine_dim(self) -> int:
        return self.machine_form.dim

    def total_form(self) -> SkewForm:
        """The form on object x copy x machine."""
        return direct_sum(direct_sum(self.object_form, self.object_form), self.machine_form)

    def to_json(self) -> dict:
        return {
            "object_form": self.object_form.to_json(),
            "blank": [str(x) for x in self.blank],
            "machine_form": self.machine_form.to_json(),
            "ready": [str(x) for x in self.ready],
            "phi": self.phi.to_json(),
            "readout": self.readout.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CloningProcess":
        return cls(
            object_form=SkewForm.from_json(data["object_form"]),
            blank=vec(data["blank"]),
            machine_form=SkewForm.from_json(data["machine_form"]),
            ready=vec(data["ready"]),
            phi=RatMatrix.from_json(data["phi"]),
            readout=RatMatrix.from_json(data["readout"]),
        )


@dataclass(frozen=True)
class VerificationReport:
    symplectic_defect_norm: Fraction
    cloning_residual: Fraction
    inferred_readout: RatMatrix
    verdict: str  # "pass" | "fail"
    reason: str

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "symplectic_defect_norm": str(self.symplectic_defect_norm),
            "cloning_residual": str(self.cloning_residual),
            "inferred_readout": self.inferred_readout.to_json(),
            "verdict": self.verdict,
            "reason": self.reason,
        }


# The explicit 6x6 copying map on R^2 x R^2 x R^2 and its machine readout.
_BASIC_PHI = RatMatrix(
    [
        [1, 0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, -1],
        [1, 0, -1, 0, 1, 0],
        [0, 1, 0, -1, 0, -1],
        [1, 0, 0, 0, 1, 0],
        [0, -1, 0, 1, 0, 2],
    ]
)
_BASIC_READOUT = RatMatrix([[1, 0], [0, -1]])


def basic_cloner() -> CloningProcess:
    """The explicit cloning process on the standard 2-dimensional phase space.

    Object and machine are both (R^2, J), blank and ready are zero, and the
    copying map is an integer 6x6 symplectomorphism with readout
    diag(1, -1).
    """
    j = standard_form(1)
    return CloningProcess(
        object_form=j,
        blank=zero_vec(2),
        machine_form=j,
        ready=zero_vec(2),
        phi=_BASIC_PHI,
        readout=_BASIC_READOUT,
    )


def shuffle_permutation(dims: tuple[int, int, int, int, int, int]) -> RatMatrix:
    """Permutation taking (A1,B1,C1,A2,B2,C2) block layout to (A1,A2,B1,B2,C1,C2).

    dims are the six block sizes in source order.  The result is orthogonal,
    and symplectic for the correspondingly permuted block-diagonal forms.
    """
    if len(dims) != 6 or any(d < 0 for d in dims):
        raise ValueError("need six nonnegative block sizes")
    offsets = []
    pos = 0
    for d in dims:
        offsets.append(pos)
        pos += d
    # target order: A1 A2 | B1 B2 | C1 C2  (blocks 0,3,1,4,2,5 of the source)
    perm: list[int] = []
    for b in (0, 3, 1, 4, 2, 5):
        perm.extend(range(offsets[b], offsets[b] + dims[b]))
    return RatMatrix.permutation(perm)


def product_cloner(c1: CloningProcess, c2: CloningProcess) -> CloningProcess:
    """Cloning process for the product phase space, machine = product of machines.

    The combined map runs the two processes side by side and reindexes the
    coordinate blocks into object/copy/machine order with the canonical
    shuffle permutation.
    """
    for i, c in enumerate((c1, c2)):
        rep = verify_cloning(c)
        if not rep.passed:
            raise CloningVerificationError(f"input process {i + 1} is invalid: {rep.reason}")
    m1, k1 = c1.object_dim, c1.machine_dim
    m2, k2 = c2.object_dim, c2.machine_dim
    perm = shuffle_permutation((m1, m1, k1, m2, m2, k2))
    phi = perm @ RatMatrix.block_diag(c1.phi, c2.phi) @ perm.T
    return CloningProcess(
        object_form=direct_sum(c1.object_form, c2.object_form),
        blank=c1.blank + c2.blank,
        machine_form=direct_sum(c1.machine_form, c2.machine_form),
        ready=c1.ready + c2.ready,
        phi=phi,
        readout=RatMatrix.block_diag(c1.readout, c2.readout),
    )


def standard_cloner(n: int) -> CloningProcess:
    """n-fold product of the basic cloner on the standard form of dimension 2n.

    Equal to folding ``product_cloner`` over n copies of ``basic_cloner`` (the
    shuffled layout keeps each symplectic pair contiguous), but assembled
    directly so large n stays cheap.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = 2 * n
    zero = _ZERO
    phi = [[zero] * (3 * d) for _ in range(3 * d)]
    readout = [[zero] * d for _ in range(d)]
    for p in range(n):
        for i in range(6):
            gi = (i // 2) * d + 2 * p + i % 2
            for j in range(6):
                gj = (j // 2) * d + 2 * p + j % 2
                phi[gi][gj] = _BASIC_PHI[i, j]
        for i in range(2):
            for j in range(2):
                readout[2 * p + i][2 * p + j] = _BASIC_READOUT[i, j]
    form = standard_form(n)
    return CloningProcess(
        object_form=form,
        blank=zero_vec(d),
        machine_form=form,
        ready=zero_vec(d),
        phi=RatMatrix._raw(tuple(map(tuple, phi)), 3 * d),
        readout=RatMatrix._raw(tuple(map(tuple, readout)), d),
    )


def general_cloner(form: SkewForm) -> CloningProcess:
    """Cloning process for an arbitrary even-dimensional rational symplectic space.

    Normalizes the form to the standard one (Darboux), takes the n-fold
    standard cloner, and conjugates the object and copy blocks back into the
    given coordinates.  The machine has the same dimension as the object and
    carries the standard form.
    """
    n = form.dim // 2
    std = standard_cloner(n)
    if form.dim == 0 or form == std.object_form:
        # already in standard coordinates: the normalizing basis is the
        # identity and the conjugation is trivial
        return std
    p = darboux_basis(form)
    p_inv = p.inverse()
    d = form.dim
    t = RatMatrix.block_diag(p, p, RatMatrix.identity(d))
    t_inv = RatMatrix.block_diag(p_inv, p_inv, RatMatrix.identity(d))
    return CloningProcess(
        object_form=form,
        blank=zero_vec(d),
        machine_form=std.machine_form,
        ready=zero_vec(d),
        phi=t @ std.phi @ t_inv,
        readout=std.readout @ p_inv,
    )


def verify_cloning(c: CloningProcess) -> VerificationReport:
    """Exact verification of a candidate process.

    Checks symplecticity of the full map against the product form, the copying
    identity on the zero state and every object basis state (linearity makes
    this exhaustive), and consistency of the stored readout with the machine
    output.  Both reported residuals are exact rationals; verdict is pass iff
    both are zero.
    """
    dm, dn = c.object_dim, c.machine_dim
    total = c.total_form()
    defect = symplectic_defect(c.phi, total, total)
    defect_norm = defect.max_abs()

    residual = Fraction(0)
    reason = ""

    def track(value: Fraction, why: str):
        nonlocal residual, reason
        if value > residual:
            residual = value
        if value and not reason:
            reason = why

    # image of the blank/ready offset: must be (0, 0, f(0))
    base = c.phi.apply(zero_vec(dm) + c.blank + c.ready)
    for idx in range(2 * dm):
        track(abs(base[idx]), "offset image leaks into the object/copy blocks")
    machine_offset = base[2 * dm :]
    base_zero = not any(base)

    # phi(e_i, b, r) = phi column i + image of the offset, by linearity
    phi_cols = c.phi.T
    stored_cols = c.readout.T
    inferred_cols = []
    for i in range(dm):
        e = tuple(_ONE if j == i else _ZERO for j in range(dm))
        col = phi_cols.row(i)
        out = (
            col
            if base_zero
            else tuple((a + b) if b else a for a, b in zip(col, base))
        )
        inferred = (
            out[2 * dm :]
            if base_zero
            else tuple((a - b) if b else a for a, b in zip(out[2 * dm :], machine_offset))
        )
        inferred_cols.append(inferred)
        stored = stored_cols.row(i) if dn else ()
        if out[:dm] == e and out[dm : 2 * dm] == e and inferred == stored:
            continue
        for idx in range(dm):
            track(abs(out[idx] - e[idx]), f"first copy wrong on basis state {i}")
        for idx in range(dm):
            track(abs(out[dm + idx] - e[idx]), f"second copy wrong on basis state {i}")
        for a, b in zip(inferred, stored):
            track(abs(a - b), f"stored readout disagrees with the machine output on basis state {i}")
    inferred = (
        RatMatrix.from_columns(inferred_cols) if dm else RatMatrix.zeros(dn, 0)
    )

    # -omega = F^T sigma F; implied by the two checks above when they are
    # exactly zero, but reported independently for imported candidates
    pullback_defect = (
        c.readout.T @ c.machine_form.matrix @ c.readout + c.object_form.matrix
    )
    track(pullback_defect.max_abs(), "readout does not pull the machine form back to -omega")

    if defect_norm and not reason:
        reason = "map is not symplectic for the product form"
    verdict = "pass" if (not defect_norm and not residual) else "fail"
    return VerificationReport(
        symplectic_defect_norm=defect_norm,
        cloning_residual=residual,
        inferred_readout=inferred,
        verdict=verdict,
        reason=reason if verdict == "fail" else "",
    )


def readout_solver(m: int, k: int) -> RatMatrix:
    """Solve F^T . J_2k . F = -J_2m for a 2k x 2m rational F.

    Feasible exactly when k >= m: embed blockwise with a per-pair sign flip
    diag(1, -1) and pad with zero rows.  For k < m any solution would have to
    be injective (the right side is nondegenerate), which is impossible into a
    smaller space; raises InfeasibleError with reason "rank".
    """
    if m < 0 or k < 0:
        raise ValueError("dimensions must be nonnegative")
    if k < m:
        raise InfeasibleError(
            "rank",
            f"F maps a 2m={2 * m} dimensional space into 2k={2 * k} dimensions; "
            "a nondegenerate pullback needs an injective F",
        )
    entries = [[Fraction(0)] * (2 * m) for _ in range(2 * k)]
    for p in range(m):
        entries[2 * p][2 * p] = Fraction(1)
        entries[2 * p + 1][2 * p + 1] = Fraction(-1)
    return RatMatrix(entries)


@dataclass(frozen=True)
class SizeWitness:
    """Kernel vector of the readout plus the nondegeneracy contradiction.

    ``pullback_row`` is (F^T sigma F) w, identically zero; ``pairing`` is
    omega(w, partner), nonzero, so -omega cannot equal the pullback.
    """

    vector: RatVector
    pullback_row: RatVector
    partner: RatVector
    pairing: Fraction

    def to_json(self) -> dict:
        return {
            "vector": [str(x) for x in self.vector],
            "pullback_row": [str(x) for x in self.pullback_row],
            "partner": [str(x) for x in self.partner],
            "pairing": str(self.pairing),
        }


def size_witness(candidate: CloningProcess) -> SizeWitness:
    """Demonstrate that an undersized machine cannot support a cloning process.

    Requires machine dimension < object dimension.  Returns a nonzero kernel
    vector w of the readout: the machine form pulled back through the readout
    vanishes on w, but the object form pairs w nontrivially with some partner,
    so the readout equation -omega = F^T sigma F is unsatisfiable.
    """
    dm, dn = candidate.object_dim, candidate.machine_dim
    if dn >= dm:
        raise NotApplicableError(
            f"machine dim {dn} >= object dim {dm}; the size bound does not bite"
        )
    kern = form_kernel(candidate.readout)
    # rank(F) <= 2k < 2m guarantees a kernel vector
    w = kern[0]
    pullback = candidate.readout.T @ candidate.machine_form.matrix @ candidate.readout
    pullback_row = pullback.apply(w)
    omega_w = candidate.object_form.matrix.apply(w)
    j = next(i for i, x in enumerate(omega_w) if x)
    partner = tuple(Fraction(i == j) for i in range(dm))
    pairing = candidate.object_form.pair(partner, w)
    return SizeWitness(vector=w, pullback_row=pullback_row, partner=partner, pairing=pairing)


def _numpy_standard_form(n: int) -> np.ndarray:
    j = np.zeros((2 * n, 2 * n))
    for p in range(n):
        j[2 * p, 2 * p + 1] = 1.0
        j[2 * p + 1, 2 * p] = -1.0
    return j


def clone_residual_probe(m: int, k: int, iterations: int, seed: int) -> float:
    """Numerical search for a near-symplectic copying map with an undersized machine.

    The search space keeps the copying constraint exact by construction: the
    first 2m columns of the candidate map are pinned to (x, x, Fx) with the
    readout F free, and the remaining columns (action on the blank copy and
    the machine) are unconstrained.  Gradient descent with random restarts
    minimizes the Frobenius norm of the symplectic defect; returns the best
    defect found.  Only the infeasible regime k < m is accepted.

    For k = 0 the defect's object-object block is forced to equal the object
    form itself, so the result is bounded below by sqrt(2m).
    """
    if k >= m:
        raise NotApplicableError(
            f"k={k} >= m={m}: a true cloning process exists; use readout_solver instead"
        )
    if iterations < 1:
        raise ValueError("iterations must be >= 1")

    dm, dn = 2 * m, 2 * k
    d = 2 * dm + dn
    xi = np.zeros((d, d))
    xi[:dm, :dm] = _numpy_standard_form(m)
    xi[dm : 2 * dm, dm : 2 * dm] = _numpy_standard_form(m)
    xi[2 * dm :, 2 * dm :] = _numpy_standard_form(k)

    n_free = dn * dm + d * (dm + dn)  # readout block + unconstrained columns

    def build(params: np.ndarray) -> np.ndarray:
        phi = np.zeros((d, d))
        phi[:dm, :dm] = np.eye(dm)
        phi[dm : 2 * dm, :dm] = np.eye(dm)
        if dn:
            phi[2 * dm :, :dm] = params[: dn * dm].reshape(dn, dm)
        phi[:, dm:] = params[dn * dm :].reshape(d, dm + dn)
        return phi

    def objective(params: np.ndarray) -> tuple[float, np.ndarray]:
        phi = build(params)
        delta = phi.T @ xi @ phi - xi
        val = float(np.sum(delta * delta))
        grad_phi = -4.0 * xi @ phi @ delta  # d/dphi ||phi^T Xi phi - Xi||^2
        g = np.empty_like(params)
        if dn:
            g[: dn * dm] = grad_phi[2 * dm :, :dm].ravel()
        g[dn * dm :] = grad_phi[:, dm:].ravel()
        return val, g

    rng = np.random.default_rng(seed)
    restarts = min(8, iterations)
    per_restart = max(1, iterations // restarts)
    best = math.inf
    for _ in range(restarts):
        x0 = rng.standard_normal(n_free)
        res = minimize(
            objective,
            x0,
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": per_restart},
        )
        best = min(best, float(res.fun))
    return math.sqrt(best)
