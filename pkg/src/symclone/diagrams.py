"""Cloning diagrams in symmetric monoidal categories, checked on states.

Two concrete instances are provided: finite-dimensional Hilbert spaces with
linear maps as arrows (tensor = Kronecker product, unit = C), and symplectic
vector spaces with affine symplectic maps as arrows (tensor = direct sum,
unit = the zero-dimensional space, whose arrows into M are exactly the points
of M).  Both are treated strictly: associators and unitors are identities
after fixing the index order.

A cloning diagram asserts that the candidate arrow c sends psi x beta x rho
to psi x psi x f(psi) for every state psi; the checker tests this equation on
a supplied sample of states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .exact import RatMatrix, RatVector, ShapeError, SkewForm, vec, zero_vec
from .quantum import kron


# ---------------------------------------------------------------------------
# arrows


@dataclass(frozen=True)
class AffineMap:
    """Affine map v -> matrix . v + offset between symplectic vector spaces.

    A map from the zero-dimensional space (the monoidal unit) is a 2m x 0
    matrix plus an offset: exactly a point of the target, which is how states
    enter the symplectic instance.
    """

    matrix: RatMatrix
    offset: RatVector

    def __post_init__(self):
        if len(self.offset) != self.matrix.rows:
            raise ShapeError("offset length must match the matrix row count")

    @property
    def source_dim(self) -> int:
        return self.matrix.cols

    @property
    def target_dim(self) -> int:
        return self.matrix.rows


# ---------------------------------------------------------------------------
# instances


@dataclass(frozen=True)
class DiagramInstance:
    """One symmetric monoidal category, packaged as callables.

    States of an object are arrows from the unit object; ``state_arrow``
    embeds a raw state (a vector) as such an arrow, and ``sample_states``
    produces the vectors the checker will quantify over.  ``exhaustive``
    records whether that sample decides the universally quantified diagram
    condition (true for the symplectic instance, where linearity reduces the
    condition to basis states plus zero).
    """

    name: str
    unit: Any
    compose: Callable[[Any, Any], Any]
    tensor: Callable[[Any, Any], Any]
    equal: Callable[[Any, Any], bool]
    state_arrow: Callable[[Any, Any], Any]
    sample_states: Callable[..., list]
    exhaustive: bool


def symplectic_instance() -> DiagramInstance:
    """Symplectic vector spaces; arrows are affine maps, equality is exact."""

    unit = SkewForm(RatMatrix.zeros(0, 0))

    def compose(g: AffineMap, h: AffineMap) -> AffineMap:
        if h.target_dim != g.source_dim:
            raise ShapeError("arrows do not compose")
        return AffineMap(g.matrix @ h.matrix, tuple(
            a + b for a, b in zip(g.matrix.apply(h.offset), g.offset)
        ))

    def tensor(g: AffineMap, h: AffineMap) -> AffineMap:
        return AffineMap(RatMatrix.block_diag(g.matrix, h.matrix), g.offset + h.offset)

    def equal(g: AffineMap, h: AffineMap) -> bool:
        return g.matrix == h.matrix and g.offset == h.offset

    def state_arrow(obj: SkewForm, x) -> AffineMap:
        x = vec(x)
        if len(x) != obj.dim:
            raise ShapeError("state length does not match the object dimension")
        return AffineMap(RatMatrix.zeros(obj.dim, 0), x)

    def sample_states(obj: SkewForm, count: int = 0, rng=None) -> list[RatVector]:
        # zero plus the basis: exhaustive for affine candidate arrows
        basis = [tuple(int(i == j) for i in range(obj.dim)) for j in range(obj.dim)]
        return [zero_vec(obj.dim)] + [vec(b) for b in basis]

    return DiagramInstance(
        name="symplectic",
        unit=unit,
        compose=compose,
        tensor=tensor,
        equal=equal,
        state_arrow=state_arrow,
        sample_states=sample_states,
        exhaustive=True,
    )


def hilbert_instance(tol: float = 1e-9) -> DiagramInstance:
    """Finite-dimensional Hilbert spaces; arrows are complex matrices,
    equality is entrywise within tol.  Objects are dimensions."""

    def compose(g: np.ndarray, h: np.ndarray) -> np.ndarray:
        return np.asarray(g, dtype=complex) @ np.asarray(h, dtype=complex)

    def tensor(g: np.ndarray, h: np.ndarray) -> np.ndarray:
        return kron(np.atleast_2d(g), np.atleast_2d(h))

    def equal(g: np.ndarray, h: np.ndarray) -> bool:
        g, h = np.atleast_2d(g), np.atleast_2d(h)
        if g.shape != h.shape:
            return False
        return g.size == 0 or float(np.max(np.abs(g - h))) <= tol

    def state_arrow(obj: int, psi) -> np.ndarray:
        psi = np.asarray(psi, dtype=complex).reshape(-1, 1)
        if psi.shape[0] != obj:
            raise ShapeError("state length does not match the object dimension")
        return psi

    def sample_states(obj: int, count: int = 8, rng=None) -> list[np.ndarray]:
        rng = rng or np.random.default_rng(0)
        states = [np.eye(obj)[:, j] for j in range(obj)]
        for _ in range(count):
            v = rng.standard_normal(obj) + 1j * rng.standard_normal(obj)
            states.append(v / np.linalg.norm(v))
        return states

    return DiagramInstance(
        name="hilbert",
        unit=1,
        compose=compose,
        tensor=tensor,
        equal=equal,
        state_arrow=state_arrow,
        sample_states=sample_states,
        exhaustive=False,
    )


# ---------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class CloningDiagram:
    """Candidate cloning data: c : A x A x B -> A x A x B together with the
    blank state beta of A, the machine object B with ready state rho, and the
    claimed readout f from states of A to states of B.  Taking B to be the
    unit object (with empty states) recovers the machine-free diagram."""

    object_a: Any
    beta: Any
    machine_b: Any
    rho: Any
    arrow_c: Any
    readout: Callable[[Any], Any]


@dataclass(frozen=True)
class DiagramReport:
    results: tuple[tuple[Any, bool], ...]
    passed: bool
    first_failure: Any
    exhaustive: bool
    note: str

    def to_json(self) -> dict:
        return {
            "checked": len(self.results),
            "failures": sum(1 for _, ok in self.results if not ok),
            "passed": self.passed,
            "exhaustive": self.exhaustive,
            "note": self.note,
        }


def check_cloning_diagram(
    instance: DiagramInstance,
    diagram: CloningDiagram,
    states: Sequence | None = None,
) -> DiagramReport:
    """Test commutativity of the cloning diagram on each sampled state.

    For each psi, compares c o (psi x beta x rho) with psi x psi x f(psi)
    using the instance's arrow equality.  The report says whether the sample
    decides the universally quantified condition or is merely evidence.
    """
    if states is None:
        states = instance.sample_states(diagram.object_a)
    beta_arrow = instance.state_arrow(diagram.object_a, diagram.beta)
    rho_arrow = instance.state_arrow(diagram.machine_b, diagram.rho)

    results = []
    first_failure = None
    for psi in states:
        psi_arrow = instance.state_arrow(diagram.object_a, psi)
        prepared = instance.tensor(instance.tensor(psi_arrow, beta_arrow), rho_arrow)
        lhs = instance.compose(diagram.arrow_c, prepared)
        f_arrow = instance.state_arrow(diagram.machine_b, diagram.readout(psi))
        rhs = instance.tensor(instance.tensor(psi_arrow, psi_arrow), f_arrow)
        ok = instance.equal(lhs, rhs)
        results.append((psi, ok))
        if not ok and first_failure is None:
            first_failure = psi
    passed = all(ok for _, ok in results)
    note = (
        "sample decides the condition (affine arrows, basis plus zero)"
        if instance.exhaustive
        else "sample is evidence only; the condition quantifies over all unit vectors"
    )
    return DiagramReport(
        results=tuple(results),
        passed=passed,
        first_failure=first_failure,
        exhaustive=instance.exhaustive,
        note=note,
    )


def check_traditional_diagram(
    instance: DiagramInstance,
    object_a: Any,
    beta: Any,
    arrow_c: Any,
    states: Sequence | None = None,
) -> DiagramReport:
    """Machine-free diagram check, coded directly: c o (psi x beta) = psi x psi.

    Equivalent to ``check_cloning_diagram`` with the machine object set to the
    unit; kept separate so the reduction law can be tested against an
    independent implementation.
    """
    if states is None:
        states = instance.sample_states(object_a)
    beta_arrow = instance.state_arrow(object_a, beta)
    results = []
    first_failure = None
    for psi in states:
        psi_arrow = instance.state_arrow(object_a, psi)
        lhs = instance.compose(arrow_c, instance.tensor(psi_arrow, beta_arrow))
        rhs = instance.tensor(psi_arrow, psi_arrow)
        ok = instance.equal(lhs, rhs)
        results.append((psi, ok))
        if not ok and first_failure is None:
            first_failure = psi
    passed = all(ok for _, ok in results)
    return DiagramReport(
        results=tuple(results),
        passed=passed,
        first_failure=first_failure,
        exhaustive=instance.exhaustive,
        note="machine-free diagram",
    )


def unit_states(instance: DiagramInstance) -> list:
    """The states of the unit object (a single trivial one in both instances)."""
    if instance.name == "symplectic":
        return [()]
    return [np.array([1.0 + 0.0j])]


def diagram_from_process(process) -> tuple[DiagramInstance, CloningDiagram]:
    """Wrap a classical CloningProcess as a symplectic cloning diagram.

    The readout state map is x -> F x + f(0), with f(0) read off from the
    machine block of the image of the blank/ready preparation.
    """
    inst = symplectic_instance()
    dm = process.object_dim
    base = process.phi.apply(zero_vec(dm) + process.blank + process.ready)
    machine_offset = base[2 * dm :]

    def readout(x) -> RatVector:
        fx = process.readout.apply(vec(x))
        return tuple(a + b for a, b in zip(fx, machine_offset))

    diagram = CloningDiagram(
        object_a=process.object_form,
        beta=process.blank,
        machine_b=process.machine_form,
        rho=process.ready,
        arrow_c=AffineMap(process.phi, zero_vec(process.phi.rows)),
        readout=readout,
    )
    return inst, diagram


def hilbert_cloning_diagram(U: np.ndarray, beta, rho=None) -> tuple[DiagramInstance, CloningDiagram]:
    """Wrap a candidate copying isometry as a Hilbert cloning diagram.

    The readout f is induced: f(psi) is the normalized projection of
    U(psi x beta x rho) onto the psi x psi x K slice, so the diagram commutes
    at psi exactly when U clones psi.  If the projection vanishes, f falls
    back to the first machine basis state.
    """
    U = np.asarray(U, dtype=complex)
    beta = np.asarray(beta, dtype=complex).reshape(-1)
    d = len(beta)
    if rho is None:
        rho = np.array([1.0 + 0.0j])
    rho = np.asarray(rho, dtype=complex).reshape(-1)
    dk = len(rho)
    if U.shape != (d * d * dk, d * d * dk):
        raise ShapeError("candidate arrow does not act on object x copy x machine")
    inst = hilbert_instance()

    def readout(psi) -> np.ndarray:
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        out = U @ np.kron(np.kron(psi, beta), rho)
        xx = np.kron(psi, psi)
        amps = np.array([np.vdot(np.kron(xx, np.eye(dk)[:, j]), out) for j in range(dk)])
        norm = float(np.linalg.norm(amps))
        if norm < 1e-12:
            return np.eye(dk)[:, 0].astype(complex)
        return amps / norm

    diagram = CloningDiagram(
        object_a=d,
        beta=beta,
        machine_b=dk,
        rho=rho,
        arrow_c=U,
        readout=readout,
    )
    return inst, diagram
