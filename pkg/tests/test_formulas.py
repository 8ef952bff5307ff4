import pytest

from ddx.polynomials import (
    IntPolynomial,
    InvalidRank,
    build_family,
    inversion_sum,
)
from ddx.formulas import (
    PushforwardContext,
    blowup_forward,
    blowup_inverse_status,
    blowup_pushforward,
    blowup_restrict,
    expansion_trace,
    forward_sum,
    inverse_component,
    pushforward,
    verify_blowup_inverse,
    verify_projbundle_inverse,
)


def test_pushforward_rules():
    ctx = PushforwardContext(3)
    assert ctx.push_power(0).is_zero()
    assert ctx.push_power(1).is_zero()
    assert str(ctx.push_power(2)) == "1"  # (-1)^{r-1} with r = 3
    assert str(ctx.push_power(3)) == "T1"
    assert str(ctx.push_power(4)) == "T2"
    ctx2 = PushforwardContext(2)
    assert str(ctx2.push_power(1)) == "-1"


def test_rank2_hand_expansion():
    # forward sum at rank 2 pushes to -a_1, and cupped with h to -a_0 + T1 a_1
    r = 2
    ctx = PushforwardContext(r)
    mu = forward_sum(r)
    p0 = pushforward(mu, ctx)
    assert p0 == {1: IntPolynomial.constant(1, -1)}
    p1 = pushforward(mu.cup_h(1), ctx)
    assert p1 == {
        0: IntPolynomial.constant(1, -1),
        1: IntPolynomial.variable(1, 1),
    }
    fam = build_family(r)
    assert str(fam[0]) == "-T1"
    assert str(fam[1]) == "-1"
    one = IntPolynomial.constant(1, 1)
    assert inverse_component(0, mu, ctx, fam) == {0: one}
    assert inverse_component(1, mu, ctx, fam) == {1: one}


def test_projbundle_inverse_ranks():
    for r in range(1, 9):
        assert verify_projbundle_inverse(r), r


def test_projbundle_invalid_rank():
    with pytest.raises(InvalidRank):
        verify_projbundle_inverse(0)


def test_blowup_rank2_hand_expansion():
    r = 2
    ctx = PushforwardContext(r)
    psi = blowup_forward(r)
    base, center = blowup_pushforward(psi, ctx)
    one = IntPolynomial.constant(1, 1)
    assert base == {"alpha": one}
    assert center == {}
    restricted = blowup_restrict(psi)
    fam = build_family(r)
    assert inverse_component(1, restricted, ctx, fam) == {("beta", 1): one}


def test_blowup_inverse_ranks():
    for r in range(2, 9):
        assert verify_blowup_inverse(r), r


def test_blowup_needs_rank_at_least_two():
    with pytest.raises(InvalidRank):
        verify_blowup_inverse(1)


def test_blowup_mutated_adjunction_fails():
    assert blowup_inverse_status(2, "zero") == "fails"
    assert not verify_blowup_inverse(2, "zero")


def test_blowup_without_adjunction_is_blocked():
    assert blowup_inverse_status(2, "disabled") == "blocked"
    assert blowup_inverse_status(6, "disabled") == "blocked"


def test_final_collapse_factors_through_inversion_sum():
    # the slot-l coefficient of G_i(mu) must literally equal the telescoping
    # sum for k = l - i, so the two modules cannot drift apart
    for r in range(1, 7):
        ctx = PushforwardContext(r)
        fam = build_family(r)
        mu = forward_sum(r)
        for i in range(r):
            coeffs = {}
            for j in range(0, r - i):
                pushed = pushforward(mu.cup_h(j), ctx)
                for sym, poly in pushed.items():
                    cur = coeffs.get(sym, IntPolynomial(r - 1))
                    coeffs[sym] = cur + fam[i + j] * poly
            for l in range(r):
                got = coeffs.get(l, IntPolynomial(r - 1))
                if l < i:
                    assert got.is_zero()
                else:
                    assert got == inversion_sum(fam, l - i), (r, i, l)


def test_intermediate_weights_are_homogeneous():
    # h contributes its power, T_j weighs j, slots weigh their depth
    for r in range(1, 7):
        mu = forward_sum(r)
        assert mu.check_weights(lambda sym: sym) == 0
        for j in range(r):
            assert mu.cup_h(j).check_weights(lambda sym: sym) == j
    psi = blowup_forward(4)
    restricted = blowup_restrict(psi)

    def depth(sym):
        if isinstance(sym, tuple) and sym and sym[0] == "beta":
            return sym[1]
        return 0

    assert restricted.check_weights(depth) == 0


def test_trace_projbundle():
    steps = expansion_trace(2, "projbundle")
    assert len(steps) == 4
    assert "H_0 * a_i = a_i" in steps[-1].detail
    steps1 = expansion_trace(1, "projbundle")
    assert len(steps1) == 1


def test_trace_blowup_contains_exchange():
    steps = expansion_trace(3, "blowup")
    assert any(s.title == "exchange sums" for s in steps)
    with pytest.raises(InvalidRank):
        expansion_trace(1, "blowup")
    with pytest.raises(ValueError):
        expansion_trace(2, "nonsense")
