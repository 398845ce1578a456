import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import lie_elements, tensor_elements
from liebullet import (
    AlgebraError,
    DGLPresentation,
    Derivation,
    apply_derivation,
    bracket,
    check_mc,
    component,
    concat_product,
    contractible_algebra,
    exactness_report,
    make_context,
    make_derivation,
    perturbed_differential,
    theta_tilde,
)

A2 = contractible_algebra(2, 6)
CTX = A2.context
MIXED = make_context([("a", -1), ("b", 0), ("c", 1)], 5)


def _mixed_derivation(k):
    images = {
        -1: {"b": MIXED.gen("a") + bracket(MIXED.gen("a"), MIXED.gen("b")), "c": MIXED.gen("b")},
        0: {"a": bracket(MIXED.gen("b"), MIXED.gen("a")), "b": MIXED.gen("b"), "c": MIXED.gen("c")},
        1: {"a": MIXED.gen("b"), "b": MIXED.gen("c")},
    }[k]
    return Derivation(MIXED, k, images)


class TestDerivation:
    def test_theta_and_d_images(self):
        assert A2.theta.image("v1") == A2.u(1) and not A2.theta.image("u1")
        assert A2.d.image("u2") == A2.v(2) and not A2.d.image("v2")

    def test_wrong_degree(self):
        with pytest.raises(AlgebraError):
            make_derivation(CTX, -1, {"u1": A2.u(2)})

    def test_scalar_image(self):
        with pytest.raises(AlgebraError):
            make_derivation(CTX, -1, {"u1": A2.v(1) + CTX.one()})

    def test_theta_on_bracket(self):
        v1, v2 = A2.v(1), A2.v(2)
        assert apply_derivation(A2.theta, bracket(v1, v2)) == bracket(A2.u(1), v2) + bracket(v1, A2.u(2))

    def test_d_on_odd_bracket(self):
        u1, u2 = A2.u(1), A2.u(2)
        assert A2.d(bracket(u1, u2)) == bracket(A2.v(1), u2) - bracket(u1, A2.v(2))

    def test_euler_on_word(self):
        w = concat_product(A2.v(1), A2.v(2))
        assert A2.d(A2.theta(w)) + A2.theta(A2.d(w)) == 2 * w

    @pytest.mark.parametrize("k", [-1, 0, 1])
    @given(data=st.data())
    def test_leibniz(self, k, data):
        D = _mixed_derivation(k)
        x = data.draw(lie_elements(MIXED, degree=data.draw(st.integers(-1, 1)), max_length=2))
        y = data.draw(lie_elements(MIXED, max_length=2))
        if not x:
            return
        s = -1 if (k * x.degree()) % 2 else 1
        assert D(bracket(x, y)) == bracket(D(x), y) + bracket(x, D(y)).scale(s)
        assert D(concat_product(x, y)) == concat_product(D(x), y) + concat_product(x, D(y)).scale(s)

    def test_theta_squared(self):
        x = bracket(A2.v(1), bracket(A2.v(2), A2.u(1)))
        assert not A2.theta(A2.theta(x))


class TestThetaTilde:
    def test_generator(self):
        assert theta_tilde(A2.v(1), A2.theta) == A2.u(1)

    def test_bracket(self):
        got = theta_tilde(bracket(A2.v(1), A2.v(2)), A2.theta)
        assert got == (bracket(A2.u(1), A2.v(2)) + bracket(A2.v(1), A2.u(2))) / 2

    @given(tensor_elements(make_context([("v1", 0), ("v2", 0)], 6), scalar=False))
    def test_section(self, x):
        # transport into the algebra with u's, where theta lives
        y = CTX.element(((CTX.names[2 + i] for i in w), c) for w, c in x.terms())
        assert A2.d(theta_tilde(y, A2.theta)) == y

    def test_errors(self):
        with pytest.raises(AlgebraError):
            theta_tilde(A2.u(1), A2.theta)
        with pytest.raises(AlgebraError):
            theta_tilde(A2.v(1) + CTX.one(), A2.theta)


class TestMaurerCartan:
    def test_vertex(self):
        ctx = make_context([("a0", -1)], 6)
        a = ctx.gen("a0")
        d = Derivation(ctx, -1, {"a0": -bracket(a, a) / 2})
        assert check_mc(d, a)

    def test_negative_control(self):
        ctx = make_context([("a0", -1)], 6)
        d = Derivation(ctx, -1, {})
        assert not check_mc(d, ctx.gen("a0"))
        with pytest.raises(AlgebraError):
            perturbed_differential(d, ctx.gen("a0"))

    def test_wrong_degree(self):
        with pytest.raises(AlgebraError):
            check_mc(A2.d, A2.v(1))

    def test_perturb_by_zero(self):
        ctx = make_context([("a", -1), ("b", 0)], 4)
        d = Derivation(ctx, -1, {"b": ctx.gen("a")})
        # zero has every degree, so check_mc accepts it
        assert perturbed_differential(d, ctx.zero()) == d

    def test_perturbed_squares_to_zero(self):
        ctx = make_context([("a0", -1), ("a1", -1), ("a01", 0)], 5)
        a0 = ctx.gen("a0")
        d = Derivation(ctx, -1, {"a0": -bracket(a0, a0) / 2, "a1": -bracket(ctx.gen("a1"), ctx.gen("a1")) / 2})
        d0 = perturbed_differential(d, a0)
        for g in ctx.names:
            assert not d0(d0(ctx.gen(g)))


class TestPresentation:
    def test_rejects_non_differential(self):
        ctx = make_context([("x", 1), ("y", 0), ("z", -1)], 3)
        d = Derivation(ctx, -1, {"x": ctx.gen("y"), "y": ctx.gen("z")})
        with pytest.raises(AlgebraError):
            DGLPresentation(ctx, d)
        DGLPresentation(ctx, d, validate=False)

    def test_degree_must_be_minus_one(self):
        with pytest.raises(AlgebraError):
            DGLPresentation(CTX, A2.theta)


class TestExactness:
    def test_contractible_two(self):
        r = exactness_report(contractible_algebra(2, 5).presentation, 5)
        assert r.exact and r.blocks

    def test_contractible_one(self):
        r = exactness_report(contractible_algebra(1, 6).presentation, 6, space="tensor")
        assert r.exact

    def test_negative_control(self):
        ctx = make_context([("x", 0)], 3)
        pres = DGLPresentation(ctx, Derivation(ctx, -1, {}))
        r = exactness_report(pres, 2)
        assert not r.exact
        assert [(b.length, b.degree, b.homology) for b in r.nonzero] == [(1, 0, 1)]

    def test_requires_length_preserving(self):
        ctx = make_context([("x", 1), ("y", 0), ("z", 0)], 3)
        d = Derivation(ctx, -1, {"x": bracket(ctx.gen("y"), ctx.gen("z")) + ctx.gen("y")})
        with pytest.raises(AlgebraError):
            exactness_report(DGLPresentation(ctx, d, validate=False), 2)

    def test_length_bound(self):
        with pytest.raises(AlgebraError):
            exactness_report(A2.presentation, 7)

    def test_block_ranks_add_up(self):
        r = exactness_report(contractible_algebra(1, 4).presentation, 4)
        by_key = {(b.length, b.degree): b for b in r.blocks}
        for (n, q), b in by_key.items():
            below = by_key.get((n, q - 1))
            assert b.rank_out == (below.rank_in if below else 0)


def test_component_sum_under_theta():
    x = A2.v(1) + bracket(A2.v(1), A2.v(2)) + concat_product(A2.v(2), A2.v(2))
    want = A2.theta(component(x, 1)) + A2.theta(component(x, 2)) / 2
    assert theta_tilde(x, A2.theta) == want
