"""Tests for operator-valued matrices: products, kron, grid checks."""

import numpy as np
import pytest

from fockbundle.opmatrix import (
    OpMatrix,
    SlotDomainError,
    StackedState,
    check_idempotent_hermitian,
    check_unitary,
    matrix_equal,
    matrix_grid_deviation,
)
from fockbundle.operators import FockOperator
from fockbundle.symbols import guarded_div, number

N_MAX = 24
TOL = 1e-12


def _pauli_x():
    one = FockOperator.identity()
    zero = FockOperator.zero()
    return OpMatrix.build([[zero, one], [one, zero]])


def test_shapes_and_identity():
    m = OpMatrix.identity(3)
    assert m.rows == m.cols == 3
    assert matrix_equal(m @ m, m, N_MAX, TOL).passed
    with pytest.raises(ValueError):
        OpMatrix.build([[FockOperator.identity()], []])


def test_matmul_keeps_operator_ordering():
    a = FockOperator.annihilation()
    adag = FockOperator.creation()
    left = OpMatrix.diag(a, adag)
    right = OpMatrix.diag(adag, a)
    prod = left @ right
    # entry (0,0) is a a-dagger = N+1, not a-dagger a = N
    expected = FockOperator.number_op() + FockOperator.identity()
    assert matrix_equal(
        OpMatrix.diag(expected, FockOperator.number_op()), prod, N_MAX, TOL
    ).passed


def test_dagger_reverses_and_conjugates():
    a = FockOperator.annihilation()
    m = OpMatrix.build([[a.scale(1j), FockOperator.zero()], [FockOperator.identity(), a.dagger()]])
    md = m.dagger()
    assert matrix_equal(md.dagger(), m, N_MAX, TOL).passed
    assert matrix_equal((m @ m).dagger(), md @ md, N_MAX, TOL).passed


def test_kron_block_structure():
    x = _pauli_x()
    k = x.kron(OpMatrix.identity(2))
    assert k.rows == 4
    assert matrix_equal(k @ k, OpMatrix.identity(4), N_MAX, TOL).passed


def test_from_scalars_embeds_numeric_matrix():
    arr = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert matrix_equal(OpMatrix.from_scalars(arr), _pauli_x(), N_MAX, TOL).passed


def test_apply_collects_singular_slots():
    inv = FockOperator.diagonal(guarded_div(1.0, number()))
    m = OpMatrix.diag(inv, FockOperator.identity())
    with pytest.raises(SlotDomainError) as err:
        m.apply(StackedState.basis(2, 1, 0))
    assert err.value.slot_states == {1: {0}}
    out = m.apply(StackedState.basis(2, 2, 0))
    assert out.norm() == pytest.approx(1.0)


def test_grid_deviation_reports_location_and_exclusions():
    inv = FockOperator.diagonal(guarded_div(1.0, number()))
    diff = OpMatrix.diag(inv - inv, FockOperator.identity())
    dev, where, excl = matrix_grid_deviation(diff, 8)
    assert dev == 1.0
    assert "slot2" in where
    assert excl == {1: {0}}


def test_check_unitary_and_projector_helpers():
    x = _pauli_x()
    assert check_unitary(x, N_MAX, TOL).passed
    p = OpMatrix.diag(FockOperator.identity(), FockOperator.zero())
    assert check_idempotent_hermitian(p, N_MAX, TOL).passed
    not_p = OpMatrix.diag(FockOperator.identity().scale(0.5), FockOperator.zero())
    assert not check_idempotent_hermitian(not_p, N_MAX, TOL).passed


def test_column_singular_map():
    inv = FockOperator.diagonal(guarded_div(1.0, number() - 2.0))
    m = OpMatrix.build([[FockOperator.identity(), inv], [FockOperator.zero(), FockOperator.identity()]])
    assert m.column_singular_map(8) == {2: {2}}
