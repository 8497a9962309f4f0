"""Basis layout, multiplication, star, traces, and block structure."""

import numpy as np
import pytest

import spinplanar as sp
from spinplanar.core import SCALAR_INDEX


def test_color_layout_and_dims(ctx2, ctx3):
    # (0,+) is scalars, (0,-) is N-dimensional, (k,+-) has dimension N^k
    for ctx in (ctx2, ctx3):
        assert sp.color_dim(ctx, sp.SpinColor(0, sp.PLUS)) == 1
        assert sp.color_dim(ctx, sp.SpinColor(0, sp.MINUS)) == ctx.N
        for k in range(1, 6):
            for sh in (sp.PLUS, sp.MINUS):
                assert sp.color_dim(ctx, sp.SpinColor(k, sh)) == ctx.N ** k
                assert len(sp.basis_order(ctx, sp.SpinColor(k, sh))) == ctx.N ** k


def test_index_color_derivation(ctx2):
    assert sp.core.index_color(sp.SpinIndex(None, (1,), (2,), None)) == sp.SpinColor(2, sp.PLUS)
    assert sp.core.index_color(sp.SpinIndex(2, (), (), 1)) == sp.SpinColor(2, sp.MINUS)
    assert sp.core.index_color(sp.SpinIndex(None, (1,), (2,), 1)) == sp.SpinColor(3, sp.PLUS)
    assert sp.core.index_color(sp.SpinIndex(1, (2,), (1,), None)) == sp.SpinColor(3, sp.MINUS)
    assert sp.core.index_color(sp.spin_state(1)) == sp.SpinColor(0, sp.MINUS)
    assert sp.core.index_color(SCALAR_INDEX) == sp.SpinColor(0, sp.PLUS)
    with pytest.raises(ValueError):
        sp.core.index_color(sp.SpinIndex(None, (1,), (), None))  # ragged pair


def test_mult_matrix_units(ctx2):
    e12 = sp.make_basis(ctx2, sp.SpinIndex(None, (1,), (2,), None))
    e21 = sp.make_basis(ctx2, sp.SpinIndex(None, (2,), (1,), None))
    e11 = sp.make_basis(ctx2, sp.SpinIndex(None, (1,), (1,), None))
    assert sp.coeff_distance(sp.mult(e12, e21), e11) == 0.0
    assert sp.mult(e12, e12).nnz == 0


def test_mult_right_slot_diagonal(ctx2):
    a = sp.make_basis(ctx2, sp.SpinIndex(None, (1,), (2,), 1))
    b = sp.make_basis(ctx2, sp.SpinIndex(None, (2,), (1,), 2))
    c = sp.make_basis(ctx2, sp.SpinIndex(None, (2,), (1,), 1))
    want = sp.make_basis(ctx2, sp.SpinIndex(None, (1,), (1,), 1))
    assert sp.mult(a, b).nnz == 0
    assert sp.coeff_distance(sp.mult(a, c), want) == 0.0


def test_zero_minus_projections(ctx3):
    s1 = sp.make_basis(ctx3, sp.spin_state(1))
    s2 = sp.make_basis(ctx3, sp.spin_state(2))
    assert sp.coeff_distance(sp.mult(s1, s1), s1) == 0.0
    assert sp.mult(s1, s2).nnz == 0
    assert sp.normalized_trace(s1) == pytest.approx(1 / 3)


def test_unit_is_identity_everywhere(ctx2, ctx3, rng):
    for ctx in (ctx2, ctx3):
        for k in range(0, 5):
            for sh in (sp.PLUS, sp.MINUS):
                c = sp.SpinColor(k, sh)
                x = sp.random_element(ctx, c, rng)
                one = sp.unit(ctx, c)
                assert sp.coeff_distance(sp.mult(one, x), x) < 1e-14
                assert sp.coeff_distance(sp.mult(x, one), x) < 1e-14


def test_mult_color_mismatch(ctx2, ctx3):
    x = sp.unit(ctx2, sp.SpinColor(2, sp.PLUS))
    y = sp.unit(ctx2, sp.SpinColor(3, sp.PLUS))
    with pytest.raises(ValueError):
        sp.mult(x, y)
    z = sp.unit(ctx3, sp.SpinColor(2, sp.PLUS))
    with pytest.raises(ValueError):
        sp.mult(x, z)


def test_star_is_antilinear_involution(ctx2, rng):
    c = sp.SpinColor(3, sp.MINUS)
    x = sp.random_element(ctx2, c, rng)
    y = sp.random_element(ctx2, c, rng)
    assert sp.coeff_distance(sp.star(sp.star(x)), x) == 0.0
    lhs = sp.star((2 + 1j) * x + y)
    rhs = (2 - 1j) * sp.star(x) + sp.star(y)
    assert sp.coeff_distance(lhs, rhs) < 1e-15


def test_trace_weights(ctx2):
    # tau(e^I_J) = delta_IJ N^-(pairs + slots); here one pair, no slots
    e11 = sp.make_basis(ctx2, sp.SpinIndex(None, (1,), (1,), None))
    e12 = sp.make_basis(ctx2, sp.SpinIndex(None, (1,), (2,), None))
    assert sp.normalized_trace(e11) == pytest.approx(0.5)
    assert sp.normalized_trace(e12) == 0.0
    # with a right slot the weight picks up another 1/N
    e1 = sp.make_basis(ctx2, sp.SpinIndex(None, (1,), (1,), 1))
    assert sp.normalized_trace(e1) == pytest.approx(0.25)
    # normalized: tau(1) = 1 at every color
    for k in range(0, 5):
        for sh in (sp.PLUS, sp.MINUS):
            assert sp.normalized_trace(sp.unit(ctx2, sp.SpinColor(k, sh))) == pytest.approx(1.0)


def test_trace_faithful_positive(ctx3, rng):
    for k in range(0, 4):
        for sh in (sp.PLUS, sp.MINUS):
            x = sp.random_element(ctx3, sp.SpinColor(k, sh), rng)
            v = sp.normalized_trace(sp.mult(sp.star(x), x))
            assert v.real > 0 and abs(v.imag) < 1e-12
            assert abs(sp.inner_product(x, x) - v) < 1e-12


def test_vectorize_round_trip(ctx3, rng):
    c = sp.SpinColor(3, sp.PLUS)
    x = sp.random_element(ctx3, c, rng)
    v = sp.vectorize(x)
    assert v.shape == (27,)
    y = sp.devectorize(ctx3, c, v)
    assert sp.coeff_distance(x, y) == 0.0


def test_gram_is_uniform_diagonal(ctx2):
    # the basis is orthogonal with one common weight per color
    for k in range(0, 4):
        for sh in (sp.PLUS, sp.MINUS):
            c = sp.SpinColor(k, sh)
            order = sp.basis_order(ctx2, c)
            weights = set()
            for i, idx in enumerate(order):
                ei = sp.make_basis(ctx2, idx)
                weights.add(round(abs(sp.inner_product(ei, ei)), 14))
                other = sp.make_basis(ctx2, order[(i + 1) % len(order)])
                if len(order) > 1:
                    assert abs(sp.inner_product(ei, other)) == 0.0
            assert len(weights) == 1


def test_blocks_and_operator_norm(ctx2):
    # (2,+) is the 2x2 matrix algebra: op norm of the unit is 1
    one = sp.unit(ctx2, sp.SpinColor(2, sp.PLUS))
    assert sp.op_norm(one) == pytest.approx(1.0)
    res = sp.unitarity_residuals(one)
    assert max(res.values()) < 1e-14
    # (3,+) decomposes into right-slot blocks; a partial isometry that only
    # fills one slot is unitary in no sense and the residual sees it
    e = sp.make_basis(ctx2, sp.SpinIndex(None, (1,), (1,), 1))
    res = sp.unitarity_residuals(e)
    assert max(res.values()) == pytest.approx(1.0)


def test_from_coeffs_validates(ctx2):
    good = {sp.SpinIndex(None, (1,), (2,), None): 1.0}
    sp.from_coeffs(ctx2, sp.SpinColor(2, sp.PLUS), good)
    with pytest.raises(ValueError):
        sp.from_coeffs(ctx2, sp.SpinColor(3, sp.PLUS), good)
    with pytest.raises(ValueError):
        bad = {sp.SpinIndex(None, (3,), (1,), None): 1.0}  # spin out of range
        sp.from_coeffs(ctx2, sp.SpinColor(2, sp.PLUS), bad)


def test_add_requires_same_color(ctx2):
    x = sp.unit(ctx2, sp.SpinColor(1, sp.PLUS))
    y = sp.unit(ctx2, sp.SpinColor(1, sp.MINUS))
    with pytest.raises(ValueError):
        _ = x + y
