"""Finite-dimensional Hilbert space side: why unitary copying machines fail.

Complex double-precision throughout.  The refuter never constructs the
would-be machine readout; it exhibits the overlap contradiction that the
existence of a copying isometry would force, plus a concrete distance from
the machine's actual output to the nearest legal clone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ISOMETRY_TOL = 1e-9


class HypothesisViolationError(ValueError):
    """The chosen state pair cannot drive the overlap contradiction."""


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two matrices (or column vectors)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def isometry_defect(U: np.ndarray) -> float:
    """Max-entry deviation of U†U from the identity."""
    U = np.asarray(U, dtype=complex)
    gram = U.conj().T @ U
    return float(np.max(np.abs(gram - np.eye(U.shape[1]))))


def is_isometry(U: np.ndarray, tol: float = ISOMETRY_TOL) -> bool:
    """True iff U preserves inner products up to tol; a map into a smaller
    space can never qualify."""
    U = np.asarray(U, dtype=complex)
    if U.shape[0] < U.shape[1]:
        return False
    return isometry_defect(U) <= tol


def basis_cloner(d: int) -> np.ndarray:
    """Controlled-shift unitary on C^d x C^d: |i, j> -> |i, (j + i) mod d>.

    Copies every computational basis state (|i, 0> -> |i, i>) but no
    superposition; d = 2 gives the CNOT matrix.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    U = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            U[i * d + (j + i) % d, i * d + j] = 1.0
    return U


def _as_state(v, name: str, tol: float = 1e-9) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tol:
        raise ValueError(f"{name} must be a unit vector (norm {norm:.3g})")
    return v


@dataclass(frozen=True)
class Refutation:
    """Outcome of running the overlap argument against a candidate machine."""

    overlap: complex                 # <psi, psi2>
    preserved_overlap: complex       # <U(psi x beta x rho), U(psi2 x beta x rho)>
    implied_machine_overlap: float   # |<f(psi), f(psi2)>| forced by cloning
    cauchy_schwarz_excess: float     # implied overlap minus the unit bound
    cloning_residual: float          # worst distance to the nearest legal clone
    residual_per_state: tuple[float, float]

    def to_json(self) -> dict:
        return {
            "overlap": [self.overlap.real, self.overlap.imag],
            "preserved_overlap": [self.preserved_overlap.real, self.preserved_overlap.imag],
            "implied_machine_overlap": self.implied_machine_overlap,
            "cauchy_schwarz_excess": self.cauchy_schwarz_excess,
            "cloning_residual": self.cloning_residual,
            "residual_per_state": list(self.residual_per_state),
        }


def _clone_distance(U: np.ndarray, x: np.ndarray, beta: np.ndarray, rho: np.ndarray) -> float:
    """Distance from U(x x beta x rho) to the closest unit vector of the form
    x x x x (machine state)."""
    d = len(x)
    dk = len(rho)
    out = U @ kron(kron(x.reshape(-1, 1), beta.reshape(-1, 1)), rho.reshape(-1, 1)).reshape(-1)
    xx = np.kron(x, x)
    # amplitude on the x x x x e_j slice for each machine basis vector e_j
    amps = np.array([np.vdot(np.kron(xx, np.eye(dk)[:, j]), out) for j in range(dk)])
    proj = float(np.linalg.norm(amps))
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * proj)))


def refute_cloning(
    U: np.ndarray,
    beta,
    rho,
    psi,
    psi2,
    tol: float = ISOMETRY_TOL,
) -> Refutation:
    """Run the no-cloning contradiction against a candidate copying isometry.

    Requires U isometric and a state pair with overlap strictly between 0 and
    1 in modulus.  If U cloned both states, preservation of inner products
    would force the machine outputs to overlap with modulus 1/|<psi, psi2>|,
    exceeding the unit bound; the excess is reported together with the actual
    distance from U's output to the nearest exact clone.
    """
    U = np.asarray(U, dtype=complex)
    beta = _as_state(beta, "beta")
    rho = _as_state(rho, "rho")
    psi = _as_state(psi, "psi")
    psi2 = _as_state(psi2, "psi2")
    if len(psi) == 1:
        raise HypothesisViolationError(
            "object space has dimension 1: no valid state pair exists "
            "(every pair of unit vectors is parallel)"
        )
    if not is_isometry(U, tol):
        raise ValueError("U is not an isometry at the requested tolerance")
    t = complex(np.vdot(psi, psi2))
    if abs(t) <= tol or abs(abs(t) - 1.0) <= tol:
        raise HypothesisViolationError(
            f"|<psi, psi2>| = {abs(t):.3g}; the argument needs 0 < |overlap| < 1"
        )

    inp1 = kron(kron(psi.reshape(-1, 1), beta.reshape(-1, 1)), rho.reshape(-1, 1)).reshape(-1)
    inp2 = kron(kron(psi2.reshape(-1, 1), beta.reshape(-1, 1)), rho.reshape(-1, 1)).reshape(-1)
    preserved = complex(np.vdot(U @ inp1, U @ inp2))

    implied = 1.0 / abs(t)
    r1 = _clone_distance(U, psi, beta, rho)
    r2 = _clone_distance(U, psi2, beta, rho)
    return Refutation(
        overlap=t,
        preserved_overlap=preserved,
        implied_machine_overlap=implied,
        cauchy_schwarz_excess=implied - 1.0,
        cloning_residual=max(r1, r2),
        residual_per_state=(r1, r2),
    )


def standard_refutation(d: int, overlap: float = 2 ** -0.5) -> Refutation:
    """Refute the basis-copying machine on C^d with a trivial machine space.

    Uses beta = psi = |0> and psi2 = overlap*|0> + sqrt(1-overlap^2)*|1>.
    """
    if not 0.0 < overlap < 1.0:
        raise HypothesisViolationError("overlap must lie strictly between 0 and 1")
    U = basis_cloner(d)
    if d < 2:
        # let refute_cloning raise the dimension-specific message
        return refute_cloning(U, [1.0], [1.0], [1.0], [1.0])
    e0 = np.eye(d)[:, 0]
    psi2 = overlap * np.eye(d)[:, 0] + np.sqrt(1.0 - overlap**2) * np.eye(d)[:, 1]
    return refute_cloning(U, e0, [1.0], e0, psi2)


def random_state(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    if rows < cols:
        raise ValueError("an isometry needs rows >= cols")
    a = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    q, r = np.linalg.qr(a)
    # fix phases so the result is deterministic in the rng draws alone
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))[np.newaxis, :].conj()


def complex_matrix_to_json(a: np.ndarray) -> dict:
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    return {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "entries": [[[float(x.real), float(x.imag)] for x in row] for row in a],
    }


def complex_matrix_from_json(data: dict) -> np.ndarray:
    a = np.array([[complex(re, im) for re, im in row] for row in data["entries"]], dtype=complex)
    if a.size == 0:
        a = a.reshape(data["rows"], data["cols"])
    if a.shape != (data["rows"], data["cols"]):
        raise ValueError("entry grid does not match declared rows/cols")
    return a


def complex_vector_from_json(entries) -> np.ndarray:
    return np.array([complex(re, im) for re, im in entries], dtype=complex)
