import random
from fractions import Fraction

import pytest

from symclone import (
    CloningProcess,
    CloningVerificationError,
    InfeasibleError,
    NotApplicableError,
    RatMatrix,
    SkewForm,
    basic_cloner,
    clone_residual_probe,
    general_cloner,
    is_symplectic_map,
    product_cloner,
    readout_solver,
    shuffle_permutation,
    size_witness,
    standard_cloner,
    standard_form,
    verify_cloning,
    vec,
    zero_vec,
)
from conftest import random_skew_form

EXPECTED_PHI = RatMatrix(
    [
        [1, 0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, -1],
        [1, 0, -1, 0, 1, 0],
        [0, 1, 0, -1, 0, -1],
        [1, 0, 0, 0, 1, 0],
        [0, -1, 0, 1, 0, 2],
    ]
)


class TestBasicCloner:
    def test_matrix_is_the_explicit_one(self):
        assert basic_cloner().phi == EXPECTED_PHI

    def test_readout_is_sign_flip(self):
        assert basic_cloner().readout == RatMatrix([[1, 0], [0, -1]])

    def test_copies_basis_states(self):
        c = basic_cloner()
        assert c.phi.apply((1, 0, 0, 0, 0, 0)) == vec([1, 0, 1, 0, 1, 0])
        assert c.phi.apply((0, 1, 0, 0, 0, 0)) == vec([0, 1, 0, 1, 0, -1])

    def test_phi_is_symplectic_for_the_product_form(self):
        c = basic_cloner()
        xi = c.total_form()
        assert is_symplectic_map(c.phi, xi, xi)

    def test_passes_verification_with_zero_residuals(self):
        rep = verify_cloning(basic_cloner())
        assert rep.passed
        assert rep.symplectic_defect_norm == 0
        assert rep.cloning_residual == 0


class TestShufflePermutation:
    def test_all_empty(self):
        assert shuffle_permutation((0, 0, 0, 0, 0, 0)).shape == (0, 0)

    def test_second_factor_empty_is_identity(self):
        assert shuffle_permutation((2, 2, 2, 0, 0, 0)) == RatMatrix.identity(6)

    def test_full_case_is_orthogonal_and_symplectic(self):
        dims = (2, 2, 2, 2, 2, 2)
        p = shuffle_permutation(dims)
        assert p.shape == (12, 12)
        assert p @ p.T == RatMatrix.identity(12)
        j = standard_form(1)
        source = SkewForm(
            RatMatrix.block_diag(*[j.matrix] * 6)
        )  # per-factor block order
        target = source  # all blocks equal here, so the permuted form coincides
        assert is_symplectic_map(p, source, target)

    def test_mixed_sizes_move_blocks_correctly(self):
        p = shuffle_permutation((2, 2, 0, 4, 4, 2))
        v = vec([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14])
        # source blocks: A1=(1,2) B1=(3,4) C1=() A2=(5..8) B2=(9..12) C2=(13,14)
        assert p.apply(v) == vec([1, 2, 5, 6, 7, 8, 3, 4, 9, 10, 11, 12, 13, 14])


class TestProductCloner:
    def test_product_of_basics_verifies(self):
        c = product_cloner(basic_cloner(), basic_cloner())
        assert c.phi.shape == (12, 12)
        rep = verify_cloning(c)
        assert rep.passed

    def test_product_with_empty_process(self):
        c = basic_cloner()
        empty = standard_cloner(0)
        left = product_cloner(c, empty)
        right = product_cloner(empty, c)
        assert left.phi == c.phi and right.phi == c.phi
        assert verify_cloning(left).passed and verify_cloning(right).passed

    def test_pre_shuffle_action_is_componentwise(self):
        c = basic_cloner()
        combined = RatMatrix.block_diag(c.phi, c.phi)
        x1, x2 = (1, 2), (3, 5)
        out = combined.apply(x1 + (0, 0) + (0, 0) + x2 + (0, 0) + (0, 0))
        f1 = c.readout.apply(x1)
        f2 = c.readout.apply(x2)
        assert out == vec(x1 + x1) + f1 + vec(x2 + x2) + f2

    def test_invalid_input_rejected(self):
        c = basic_cloner()
        broken = CloningProcess(
            c.object_form, c.blank, c.machine_form, c.ready,
            RatMatrix.identity(6), c.readout,
        )
        with pytest.raises(CloningVerificationError):
            product_cloner(c, broken)

    def test_associative_up_to_nothing_for_equal_factors(self):
        c = basic_cloner()
        left = product_cloner(product_cloner(c, c), c)
        right = product_cloner(c, product_cloner(c, c))
        assert left.phi == right.phi
        assert left.readout == right.readout
        assert verify_cloning(left).passed and verify_cloning(right).passed

    def test_standard_cloner_equals_the_fold(self):
        folded = basic_cloner()
        for n in (2, 3):
            folded = product_cloner(folded, basic_cloner())
            direct = standard_cloner(n)
            assert direct.phi == folded.phi
            assert direct.readout == folded.readout


class TestGeneralCloner:
    def test_standard_two_dim_matches_basic(self):
        g = general_cloner(standard_form(1))
        assert g.phi == basic_cloner().phi

    def test_standard_six_dim(self):
        g = general_cloner(standard_form(3))
        assert g.phi.shape == (18, 18)
        assert verify_cloning(g).passed

    def test_zero_dimensional_is_trivial(self):
        g = general_cloner(standard_form(0))
        assert g.phi.shape == (0, 0)
        assert verify_cloning(g).passed

    def test_fuzzed_forms_clone_exactly(self):
        rng = random.Random(99)
        for _ in range(20):
            dim = 2 * rng.randint(1, 6)
            form = random_skew_form(dim, rng)
            g = general_cloner(form)
            assert g.object_form == form
            assert g.machine_dim == dim
            rep = verify_cloning(g)
            assert rep.passed, rep.reason

    def test_readout_pulls_machine_form_back_to_minus_omega(self):
        rng = random.Random(5)
        for form in (standard_form(2), random_skew_form(4, rng)):
            g = general_cloner(form)
            pullback = g.readout.T @ g.machine_form.matrix @ g.readout
            assert pullback == -g.object_form.matrix


class TestVerifyFailures:
    def test_identity_map_does_not_clone(self):
        c = basic_cloner()
        rep = verify_cloning(
            CloningProcess(c.object_form, c.blank, c.machine_form, c.ready,
                           RatMatrix.identity(6), c.readout)
        )
        assert not rep.passed
        assert rep.cloning_residual > 0

    def test_single_perturbed_entry_breaks_symplecticity(self):
        c = basic_cloner()
        rows = c.phi.tolist()
        rows[4][4] += 1
        rep = verify_cloning(
            CloningProcess(c.object_form, c.blank, c.machine_form, c.ready,
                           RatMatrix(rows), c.readout)
        )
        assert not rep.passed
        assert rep.symplectic_defect_norm > 0

    def test_nonzero_blank_offset_is_handled_affinely(self):
        # shift the blank state; the basic phi no longer copies
        c = basic_cloner()
        shifted = CloningProcess(
            c.object_form, vec([1, 0]), c.machine_form, c.ready, c.phi, c.readout
        )
        rep = verify_cloning(shifted)
        assert not rep.passed
        assert rep.symplectic_defect_norm == 0  # symplecticity is offset-free


class TestReadoutSolver:
    def test_square_case_is_the_sign_flip(self):
        assert readout_solver(1, 1) == RatMatrix([[1, 0], [0, -1]])

    def test_machineless_case_is_infeasible(self):
        with pytest.raises(InfeasibleError) as exc:
            readout_solver(1, 0)
        assert exc.value.reason == "rank"

    def test_wide_case_pads_with_zero_rows(self):
        f = readout_solver(2, 3)
        assert f.shape == (6, 4)
        assert f.T @ standard_form(3).matrix @ f == -standard_form(2).matrix

    def test_exhaustive_grid(self):
        for m in range(9):
            for k in range(9):
                if k >= m:
                    f = readout_solver(m, k)
                    assert f.T @ standard_form(k).matrix @ f == -standard_form(m).matrix
                else:
                    with pytest.raises(InfeasibleError) as exc:
                        readout_solver(m, k)
                    assert exc.value.reason == "rank"


def _undersized_candidate(m: int, k: int, readout: RatMatrix) -> CloningProcess:
    dm, dn = 2 * m, 2 * k
    total = 2 * dm + dn
    return CloningProcess(
        object_form=standard_form(m),
        blank=zero_vec(dm),
        machine_form=standard_form(k),
        ready=zero_vec(dn),
        phi=RatMatrix.identity(total),
        readout=readout,
    )


class TestSizeWitness:
    def test_machineless_candidate(self):
        cand = _undersized_candidate(1, 0, RatMatrix.zeros(0, 2))
        w = size_witness(cand)
        assert any(x != 0 for x in w.vector)
        assert all(x == 0 for x in w.pullback_row)
        assert w.pairing != 0

    def test_undersized_readout_always_has_kernel(self):
        cand = _undersized_candidate(2, 1, RatMatrix([[1, 2, 3, 4], [0, 1, 0, 1]]))
        w = size_witness(cand)
        assert all(x == 0 for x in cand.readout.apply(w.vector))
        assert w.pairing != 0

    def test_equal_dims_not_applicable(self):
        cand = _undersized_candidate(1, 1, RatMatrix.identity(2))
        with pytest.raises(NotApplicableError):
            size_witness(cand)


class TestResidualProbe:
    def test_machineless_defect_matches_forced_bound(self):
        for m in (1, 2):
            best = clone_residual_probe(m, 0, 300, seed=4)
            assert best >= (2 * m) ** 0.5 - 1e-6

    def test_deterministic_for_fixed_seed(self):
        a = clone_residual_probe(2, 1, 200, seed=8)
        b = clone_residual_probe(2, 1, 200, seed=8)
        assert a == b
        assert a > 0

    def test_feasible_regime_rejected(self):
        with pytest.raises(NotApplicableError):
            clone_residual_probe(1, 1, 10, seed=0)
        with pytest.raises(NotApplicableError):
            clone_residual_probe(1, 2, 10, seed=0)

    def test_bad_iterations_rejected(self):
        with pytest.raises(ValueError):
            clone_residual_probe(2, 0, 0, seed=0)


class TestProcessSerialization:
    def test_round_trip(self):
        c = product_cloner(basic_cloner(), basic_cloner())
        data = c.to_json()
        again = CloningProcess.from_json(data)
        assert again.phi == c.phi
        assert again.blank == c.blank
        assert verify_cloning(again).passed

    def test_report_serializes_rationals_as_strings(self):
        rep = verify_cloning(basic_cloner())
        data = rep.to_json()
        assert data["symplectic_defect_norm"] == "0"
        assert data["verdict"] == "pass"
