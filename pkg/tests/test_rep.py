import pytest

from gtrotor.gt_basis import HighestWeight, enumerate_patterns, shift, weights_up_to_height
from gtrotor.linalg import NonCancellingNorms, PatternMatrix
from gtrotor.numerics import exact_angle, rational
from gtrotor.rep import (
    casimir2_value,
    casimir3_value,
    element_matrix,
    generator_matrix,
    h_eigenvalue,
    j_eigenvalue,
    to_normalized,
    verify_structure,
    y_eigenvalue,
)


@pytest.fixture(scope="module")
def adjoint():
    return enumerate_patterns(HighestWeight.of(1, 0, -1))


def test_e21_columns_are_single_shifts(adjoint):
    m = generator_matrix("e21", adjoint)
    for col, p in enumerate(adjoint):
        q = shift(p, (-1, 0, 0))
        expected = {} if q is None else {(adjoint.index_of(q), col): rational(1)}
        col_entries = {k: v for k, v in m.entries.items() if k[1] == col}
        assert col_entries == expected


def test_e11_is_diagonal_with_l11(adjoint):
    m = generator_matrix("e11", adjoint)
    for (i, j), v in m.entries.items():
        assert i == j and v == adjoint[i].l11


def test_gl2_commutator(adjoint):
    lhs = generator_matrix("e12", adjoint).commutator(generator_matrix("e21", adjoint))
    rhs = generator_matrix("e11", adjoint) - generator_matrix("e22", adjoint)
    assert lhs == rhs


def test_casimirs_are_scalars(adjoint):
    # scalar values evaluated from the eigenvalue formulas
    assert casimir2_value(adjoint.weight) == 6
    assert casimir3_value(adjoint.weight) == 9
    # the matrices are built from the generator products, independently
    assert element_matrix("C2", adjoint) == PatternMatrix.identity(adjoint).scaled(
        rational(6)
    )
    assert element_matrix("C3", adjoint) == PatternMatrix.identity(adjoint).scaled(
        rational(9)
    )


def test_j_eigenvalue_example(adjoint):
    m = element_matrix("J", adjoint)
    for i, p in enumerate(adjoint):
        if (p.l11, p.l21, p.l22) == (1, 1, 0):
            assert m.get(i, i) == rational(3, 4)
            break
    else:
        pytest.fail("pattern (1,1,0) not found")


def test_diagonal_eigenvalues(adjoint):
    for name, eig in (("J", j_eigenvalue), ("Y", y_eigenvalue), ("H", h_eigenvalue)):
        m = element_matrix(name, adjoint)
        assert m == PatternMatrix.diagonal(adjoint, [eig(p) for p in adjoint])


def test_normalized_transposition_exact(adjoint):
    for a, b in (("e12", "e21"), ("e13", "e31"), ("e23", "e32")):
        na = to_normalized(generator_matrix(a, adjoint))
        nb = to_normalized(generator_matrix(b, adjoint))
        assert na.equals_transpose_of(nb)


def test_normalized_diagonal_unchanged(adjoint):
    j = element_matrix("J", adjoint)
    view = to_normalized(j)
    for i in range(adjoint.dim):
        assert view.entry(i, i) == j.get(i, i)


def test_normalized_entry_square_root_surfaces(adjoint):
    view = to_normalized(generator_matrix("e21", adjoint))
    seen_error = False
    for (i, j) in view.base.entries:
        try:
            view.entry(i, j)
        except NonCancellingNorms:
            seen_error = True
            assert view.entry_float(i, j) == pytest.approx(
                view.base.get(i, j) * (float(adjoint.norms_sq()[i]) / float(adjoint.norms_sq()[j])) ** 0.5
            )
    assert seen_error


def test_normalized_rho_is_orthogonal(adjoint):
    from gtrotor.rotations import rho_z

    rho = rho_z(exact_angle(rational(3, 5), rational(4, 5)), adjoint)
    assert to_normalized(rho).is_orthogonal(tol=1e-12)


@pytest.mark.parametrize("triple", [(1, 0, -1), (2, 0, -2), (0, 0, 0)])
def test_verify_structure_exact(triple):
    basis = enumerate_patterns(HighestWeight.of(*triple))
    report = verify_structure(basis)
    assert report.passed, [c.line() for c in report.failures]


def test_joint_spectrum_separates_patterns():
    for w in weights_up_to_height(5):
        basis = enumerate_patterns(w)
        spectra = {(j_eigenvalue(p), y_eigenvalue(p), h_eigenvalue(p)) for p in basis}
        assert len(spectra) == basis.dim


def test_cartan_traceless(adjoint):
    total = (
        generator_matrix("e11", adjoint)
        + generator_matrix("e22", adjoint)
        + generator_matrix("e33", adjoint)
    )
    assert total.is_zero()
