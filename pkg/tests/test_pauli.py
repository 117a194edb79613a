"""Pauli string and operator algebra, checked against dense matrices."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermap.pauli import (
    DenseCapError,
    DimensionError,
    PauliString,
    QubitOperator,
    anticommutator,
)


def ps(n, ops, phase_exp=0):
    return PauliString.from_ops(n, ops, phase_exp)


def random_string(draw, n):
    x = draw(st.integers(0, (1 << n) - 1))
    z = draw(st.integers(0, (1 << n) - 1))
    p = draw(st.integers(0, 3))
    return PauliString(n, x, z, p)


@st.composite
def pauli_strings(draw, n=5):
    return random_string(draw, n)


def kron_dense(string):
    """Literal Kronecker-product rendering, independent of PauliString.to_dense."""
    mats = {
        "I": np.eye(2),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]]),
        "Z": np.diag([1.0, -1.0]).astype(complex),
    }
    out = np.eye(1, dtype=complex)
    for q in reversed(range(string.n_qubits)):
        out = np.kron(out, mats[string.letter_at(q)])
    return string.phase * out


class TestSingleStrings:
    def test_x_times_z_is_minus_i_y(self):
        prod = ps(1, [(0, "X")]) * ps(1, [(0, "Z")])
        assert prod == ps(1, [(0, "Y")], phase_exp=3)
        assert prod.phase == -1j

    def test_string_squares_to_identity(self):
        s = ps(7, [(1, "Z"), (2, "Z"), (3, "X"), (6, "X")])
        assert s * s == PauliString.identity(7)

    def test_majorana_pair_product(self):
        # c_3 * d_3 on the 7-site tree collapses to a phase times Z2 Z3.
        c3 = ps(7, [(1, "Z"), (2, "Z"), (3, "X"), (6, "X")])
        d3 = ps(7, [(1, "Z"), (3, "Y"), (6, "X")])
        prod = c3 * d3
        assert prod.ops() == ((2, "Z"), (3, "Z"))
        assert prod.phase in (1j, -1j)
        dense = kron_dense(c3) @ kron_dense(d3)
        assert np.allclose(dense, kron_dense(prod), atol=1e-12)
        assert prod.phase == 1j

    def test_weight(self):
        assert PauliString.identity(16).weight == 0
        assert ps(7, [(1, "Z"), (2, "Z"), (3, "X"), (6, "X")]).weight == 4
        d9 = ps(16, [(7, "Z"), (9, "Y"), (11, "X"), (15, "X")])
        assert d9.weight == 4

    def test_commutes(self):
        z0 = ps(1, [(0, "Z")])
        x0 = ps(1, [(0, "X")])
        assert z0.commutes(z0)
        assert not x0.commutes(z0)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            ps(2, [(0, "X")]) * ps(3, [(0, "X")])
        with pytest.raises(DimensionError):
            ps(2, [(0, "X")]).commutes(ps(3, [(0, "X")]))

    def test_from_ops_rejects_bad_input(self):
        with pytest.raises(IndexError):
            ps(2, [(2, "X")])
        with pytest.raises(ValueError):
            ps(2, [(0, "Q")])
        with pytest.raises(ValueError):
            ps(2, [(0, "X"), (0, "Z")])

    def test_str(self):
        assert str(ps(3, [(0, "X"), (2, "Z")], phase_exp=3)) == "-i*X0 Z2"
        assert str(PauliString.identity(2)) == "I"


class TestStringProperties:
    @settings(max_examples=200, deadline=None)
    @given(pauli_strings(), pauli_strings())
    def test_commutation_vs_product_order(self, a, b):
        ab, ba = a * b, b * a
        assert (ab.x_mask, ab.z_mask) == (ba.x_mask, ba.z_mask)
        if a.commutes(b):
            assert ab.phase_exp == ba.phase_exp
        else:
            assert (ab.phase_exp - ba.phase_exp) % 4 == 2

    @settings(max_examples=200, deadline=None)
    @given(pauli_strings(), pauli_strings(), pauli_strings())
    def test_associativity(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @settings(max_examples=100, deadline=None)
    @given(pauli_strings(), pauli_strings())
    def test_weight_subadditive(self, a, b):
        assert (a * b).weight <= a.weight + b.weight

    @settings(max_examples=60, deadline=None)
    @given(pauli_strings(n=4), pauli_strings(n=4))
    def test_dense_homomorphism(self, a, b):
        lhs = (a * b).to_dense()
        rhs = a.to_dense() @ b.to_dense()
        assert np.max(np.abs(lhs - rhs)) < 1e-12

    @settings(max_examples=60, deadline=None)
    @given(pauli_strings(n=4))
    def test_dense_matches_kron(self, a):
        assert np.max(np.abs(a.to_dense() - kron_dense(a))) < 1e-12

    @settings(max_examples=100, deadline=None)
    @given(pauli_strings())
    def test_adjoint_involution(self, a):
        assert a.adjoint().adjoint() == a
        assert (a * a.adjoint()) == PauliString.identity(a.n_qubits)


class TestQubitOperator:
    def test_add_zero_scale(self):
        h = QubitOperator.from_paulistring(ps(2, [(0, "X")]), 0.5)
        assert h + 0.0 * h == h
        assert (h + h) == 2.0 * h
        assert (h - h).is_zero()

    def test_phase_folding(self):
        op = QubitOperator.from_paulistring(ps(2, [(0, "Y")], phase_exp=1), 2.0)
        ((key, coeff),) = op.sorted_terms()
        assert key.phase_exp == 0
        assert coeff == 2j

    def test_nilpotent_square(self):
        # (X + iY)/2 is a corner projector's ladder; it squares to zero.
        a_dag = QubitOperator.from_paulistring(ps(1, [(0, "X")]), 0.5) + (
            QubitOperator.from_paulistring(ps(1, [(0, "Y")]), -0.5j)
        )
        assert (a_dag * a_dag).is_zero()

    def test_canonicalization_idempotent(self):
        op = QubitOperator.from_paulistring(ps(3, [(1, "Y")]), 1.5) + (
            QubitOperator.from_paulistring(ps(3, [(0, "Z"), (2, "X")]), -2j)
        )
        rebuilt = QubitOperator(3, op.terms)
        assert rebuilt == op
        assert QubitOperator(3, rebuilt.terms) == rebuilt

    def test_operator_product_dense(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            ops = []
            for _ in range(2):
                op = QubitOperator.zero(3)
                for _ in range(3):
                    x, z = int(rng.integers(8)), int(rng.integers(8))
                    coeff = complex(rng.normal(), rng.normal())
                    op = op + QubitOperator.from_paulistring(PauliString(3, x, z), coeff)
                ops.append(op)
            a, b = ops
            assert np.max(np.abs((a * b).to_dense() - a.to_dense() @ b.to_dense())) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            QubitOperator.identity(2) + QubitOperator.identity(3)

    def test_hermiticity(self):
        herm = QubitOperator.from_paulistring(ps(2, [(0, "X"), (1, "Y")]), 0.5)
        assert herm.is_hermitian()
        assert not (1j * herm).is_hermitian()
        assert (1j * herm).adjoint() == -1j * herm


class TestDense:
    def test_z_is_diag(self):
        mat = QubitOperator.from_paulistring(ps(1, [(0, "Z")])).to_dense()
        assert np.array_equal(mat, np.diag([1.0 + 0j, -1.0 + 0j]))

    def test_xx_antidiagonal(self):
        mat = QubitOperator.from_paulistring(ps(2, [(0, "X"), (1, "X")])).to_dense()
        assert np.array_equal(mat, np.fliplr(np.eye(4, dtype=complex)))

    def test_hermitian_input_hermitian_output(self):
        op = QubitOperator.from_paulistring(ps(3, [(0, "X"), (2, "Y")]), 0.25) + (
            QubitOperator.from_paulistring(ps(3, [(1, "Z")]), -1.5)
        )
        mat = op.to_dense()
        assert np.max(np.abs(mat - mat.conj().T)) < 1e-12

    def test_cap_enforced(self):
        with pytest.raises(DenseCapError):
            QubitOperator.identity(13).to_dense()
        QubitOperator.identity(13).to_dense(cap=13)


class TestSerialization:
    def test_round_trip_bit_exact(self):
        op = QubitOperator.from_paulistring(ps(4, [(0, "X"), (3, "Z")]), 0.1 + 0.2j) + (
            QubitOperator.from_paulistring(ps(4, [(1, "Y")]), -1 / 3)
        )
        text = op.to_json()
        assert QubitOperator.from_json(text) == op
        assert QubitOperator.from_json(text).to_json() == text

    def test_schema(self):
        op = QubitOperator.from_paulistring(ps(2, [(0, "X"), (1, "Y")]), 1.0)
        data = json.loads(op.to_json())
        assert data == {
            "n_qubits": 2,
            "terms": [{"coeff": [1.0, 0.0], "paulis": [[0, "X"], [1, "Y"]]}],
        }

    def test_term_order_is_z_then_x(self):
        op = QubitOperator.from_paulistring(ps(2, [(1, "Z")]), 1.0) + (
            QubitOperator.from_paulistring(ps(2, [(0, "X")]), 1.0)
        )
        data = op.to_json_dict()
        # X0 has z_mask 0 and sorts before Z1.
        assert data["terms"][0]["paulis"] == [[0, "X"]]
        assert data["terms"][1]["paulis"] == [[1, "Z"]]

    def test_anticommutator_helper(self):
        x = QubitOperator.from_paulistring(ps(1, [(0, "X")]))
        z = QubitOperator.from_paulistring(ps(1, [(0, "Z")]))
        assert anticommutator(x, z).is_zero()
