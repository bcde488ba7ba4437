import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symclone import (
    DegenerateFormError,
    RatMatrix,
    ShapeError,
    SkewForm,
    darboux_basis,
    direct_sum,
    form_kernel,
    is_symplectic_map,
    standard_form,
    symplectic_defect,
)
from conftest import random_skew_form

J2 = RatMatrix([[0, 1], [-1, 0]])


class TestStandardForm:
    def test_n1_is_the_single_block(self):
        assert standard_form(1).matrix == J2

    def test_n0_is_empty(self):
        f = standard_form(0)
        assert f.dim == 0
        assert f.matrix.shape == (0, 0)

    def test_n2_is_block_diagonal(self):
        assert standard_form(2).matrix == RatMatrix.block_diag(J2, J2)

    @pytest.mark.parametrize("n", range(7))
    def test_square_is_minus_identity_and_transpose_is_negation(self, n):
        j = standard_form(n).matrix
        assert j @ j == -RatMatrix.identity(2 * n)
        assert j.T == -j


class TestDirectSum:
    def test_triple_sum_gives_the_six_dim_product_form(self):
        j = standard_form(1)
        xi = direct_sum(direct_sum(j, j), j)
        expected = RatMatrix(
            [
                [0, 1, 0, 0, 0, 0],
                [-1, 0, 0, 0, 0, 0],
                [0, 0, 0, 1, 0, 0],
                [0, 0, -1, 0, 0, 0],
                [0, 0, 0, 0, 0, 1],
                [0, 0, 0, 0, -1, 0],
            ]
        )
        assert xi.matrix == expected

    def test_empty_is_the_unit(self):
        j = standard_form(2)
        assert direct_sum(j, standard_form(0)) == j
        assert direct_sum(standard_form(0), j) == j

    def test_scaled_block_with_standard_block(self):
        scaled = SkewForm(RatMatrix([[0, 2], [-2, 0]]))
        s = direct_sum(scaled, standard_form(1))
        assert s.dim == 4
        assert s.matrix[0, 1] == 2
        assert s.matrix[2, 3] == 1
        assert s.matrix[0, 3] == 0


class TestSkewFormValidation:
    def test_odd_dimension_rejected(self):
        with pytest.raises(DegenerateFormError):
            SkewForm(RatMatrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateFormError):
            SkewForm(RatMatrix.zeros(2, 2))

    def test_non_skew_rejected(self):
        with pytest.raises(ValueError):
            SkewForm(RatMatrix.identity(2))


class TestSymplecticMap:
    def test_identity_preserves_any_form(self):
        rng = random.Random(3)
        for dim in (2, 4, 6):
            f = random_skew_form(dim, rng)
            assert is_symplectic_map(RatMatrix.identity(dim), f, f)

    def test_doubling_map_fails_with_exact_defect(self):
        s = RatMatrix([[2, 0], [0, 2]])
        j = standard_form(1)
        assert not is_symplectic_map(s, j, j)
        assert symplectic_defect(s, j, j) == J2.scale(3)

    def test_shape_mismatch_raises(self):
        with pytest.raises(ShapeError):
            is_symplectic_map(RatMatrix.identity(3), standard_form(1), standard_form(2))

    def test_composition_closure(self):
        j = standard_form(1)
        s1 = RatMatrix([[1, 1], [0, 1]])  # shear, symplectic in dim 2
        s2 = RatMatrix([[1, 0], [-2, 1]])
        assert is_symplectic_map(s1, j, j) and is_symplectic_map(s2, j, j)
        assert is_symplectic_map(s2 @ s1, j, j)

    def test_symplectic_maps_have_determinant_one(self):
        from symclone import basic_cloner, general_cloner, product_cloner

        rng = random.Random(11)
        candidates = [basic_cloner().phi, product_cloner(basic_cloner(), basic_cloner()).phi]
        for dim in (2, 4):
            candidates.append(general_cloner(random_skew_form(dim, rng)).phi)
        for phi in candidates:
            assert phi.rows <= 12
            assert phi.det() == Fraction(1)


class TestDarboux:
    def test_standard_form_normalizes_trivially(self):
        p = darboux_basis(standard_form(1))
        assert is_symplectic_map(p, standard_form(1), standard_form(1))

    def test_scaled_block(self):
        omega = SkewForm(RatMatrix([[0, 2], [-2, 0]]))
        # the stated normalizer diag(1, 1/2) works...
        stated = RatMatrix([["1", "0"], ["0", "1/2"]])
        assert is_symplectic_map(stated, standard_form(1), omega)
        # ...and so must ours
        p = darboux_basis(omega)
        assert is_symplectic_map(p, standard_form(1), omega)

    @pytest.mark.parametrize("seed", [0, 1])
    def test_fuzzed_forms_normalize_exactly(self, seed):
        rng = random.Random(seed)
        for _ in range(100):
            dim = 2 * rng.randint(1, 6)
            f = random_skew_form(dim, rng)
            p = darboux_basis(f)
            assert p.rank() == dim
            assert is_symplectic_map(p, standard_form(dim // 2), f)


class TestFormKernel:
    def test_nondegenerate_has_empty_kernel(self):
        assert form_kernel(J2) == []

    def test_zero_matrix_has_full_kernel(self):
        basis = form_kernel(RatMatrix.zeros(2, 2))
        assert len(basis) == 2

    def test_rank_one_matrix(self):
        basis = form_kernel(RatMatrix([[1, 1], [2, 2]]))
        assert len(basis) == 1
        (v,) = basis
        assert v[0] == -v[1] and v[0] != 0

    @given(
        st.lists(
            st.lists(st.integers(-5, 5), min_size=3, max_size=3),
            min_size=2,
            max_size=4,
        )
    )
    @settings(max_examples=60)
    def test_kernel_vectors_annihilate_and_count_matches_rank(self, rows):
        m = RatMatrix(rows)
        basis = form_kernel(m)
        assert len(basis) == m.cols - m.rank()
        for v in basis:
            assert all(x == 0 for x in m.apply(v))


class TestSerialization:
    def test_rat_matrix_round_trip(self):
        m = RatMatrix([["1/2", "-3"], ["0", "7/5"]])
        again = RatMatrix.from_json(m.to_json())
        assert again == m
        assert m.to_json()["entries"][0] == ["1/2", "-3"]

    def test_skew_form_round_trip(self):
        f = standard_form(2)
        data = f.to_json()
        assert data["dim"] == 4
        assert SkewForm.from_json(data) == f

    def test_mismatched_declared_shape_rejected(self):
        data = RatMatrix([[1, 2]]).to_json()
        data["rows"] = 2
        with pytest.raises(ShapeError):
            RatMatrix.from_json(data)
