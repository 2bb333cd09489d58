"""Star operator, inner product, adjointness, and the decomposition."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from naryalg import linalg
from naryalg.derived import Potential, canonical_tuples
from naryalg.errors import NotHodgeContext, NotLInfinity
from naryalg.hodge import (
    HodgeContext,
    codifferential,
    differential,
    hodge_decomposition,
    inner_product,
    laplacian,
    op_apply,
    op_compose,
    op_is_zero,
    star,
    star_matrix,
)
from naryalg.poisson import Element, nested_bracket_indices, poisson_bracket
from naryalg.superspace import Orientation, even_symplectic_space, odd_space

V5 = odd_space(5)
CTX5 = HodgeContext(V5)


def mono(space, *word, coeff=1):
    return Element.monomial(space, [i - 1 for i in word], coeff)


def monomials(space, p):
    return [Element(space, {c: Fraction(1)})
            for c in combinations(range(space.dim), p)]


def all_monomials(space):
    return [el for p in range(space.dim + 1) for el in monomials(space, p)]


def test_context_requires_pure_odd_orthonormal():
    with pytest.raises(NotHodgeContext):
        HodgeContext(even_symplectic_space(2))
    with pytest.raises(NotHodgeContext):
        HodgeContext(odd_space(3, gram=[[2, 0, 0], [0, 1, 0], [0, 0, 1]]))


def test_star_of_one_is_top_form():
    assert star(CTX5, Element.scalar(V5, 1)) == mono(V5, 1, 2, 3, 4, 5)


def test_star_basics_frozen():
    assert star(CTX5, mono(V5, 1, 2)) == mono(V5, 3, 4, 5, coeff=-1)
    assert star(CTX5, mono(V5, 1)) == mono(V5, 2, 3, 4, 5)


def test_star_matches_nested_brackets():
    for m in (2, 3, 4, 5, 6):
        ctx = HodgeContext(odd_space(m))
        for v in all_monomials(ctx.space):
            assert star(ctx, v) == nested_bracket_indices(
                ctx.space, sorted(next(iter(v.terms))), ctx.top)


@pytest.mark.parametrize("m", range(2, 9))
def test_double_star_sign_law(m):
    ctx = HodgeContext(odd_space(m))
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    for v in all_monomials(ctx.space):
        assert star(ctx, star(ctx, v)) == v.scale(sign)


def test_star_matrices_invertible():
    for m in (2, 3, 4, 5, 6):
        ctx = HodgeContext(odd_space(m))
        for p in range(m + 1):
            assert linalg.det(star_matrix(ctx, p)) != 0


def test_star_respects_orientation():
    ctx_rev = HodgeContext(V5, Orientation([1, 0, 2, 3, 4]))
    assert star(ctx_rev, Element.scalar(V5, 1)) == mono(V5, 1, 2, 3, 4, 5,
                                                        coeff=-1)


def test_star_is_so_equivariant():
    rng = random.Random(3)
    pairs = canonical_tuples(V5, 2)
    for _ in range(60):
        w = Element.monomial(V5, pairs[rng.randrange(len(pairs))],
                             rng.randint(-3, 3))
        x = rng.choice(all_monomials(V5))
        assert star(CTX5, poisson_bracket(w, x)) == \
            poisson_bracket(w, star(CTX5, x))


def test_inner_product_orthonormal_m5():
    basis = all_monomials(V5)
    for a in basis:
        for b in basis:
            want = 1 if a == b else 0
            assert inner_product(CTX5, a, b) == want


def test_inner_product_mixed_degree_zero():
    assert inner_product(CTX5, mono(V5, 1, 2), mono(V5, 3)) == 0


def test_differential_of_zero_and_of_scalars():
    mu = Potential.single(V5, Element.zero(V5), arity=2)
    d = differential(CTX5, mu)
    assert op_is_zero(d)
    mu = Potential.single(V5, star(CTX5, mono(V5, 1, 2)))
    d = differential(CTX5, mu)
    assert d[()].is_zero()  # bracket with scalars vanishes


def test_differential_squares_to_zero_checked():
    mu = Potential.single(V5, star(CTX5, mono(V5, 1, 2)))
    d = differential(CTX5, mu)
    assert op_is_zero(op_compose(CTX5, d, d))
    # [mu,mu] has a degree-4 part here, so d fails to square to zero
    bad = Potential.single(V5, mono(V5, 3, 4, 5) + mono(V5, 1, 2, 5))
    with pytest.raises(NotLInfinity):
        differential(CTX5, bad)


def test_codifferential_single_layer_is_conjugated_differential():
    mu = Potential.single(V5, star(CTX5, mono(V5, 1, 2)))
    k = mu.element.degree() - 2
    sign = -1 if (k * (1 - k) // 2) % 2 else 1
    d = differential(CTX5, mu)
    delta = codifferential(CTX5, mu)
    for v in all_monomials(V5):
        assert op_apply(delta, v) == \
            star(CTX5, op_apply(d, star(CTX5, v))).scale(sign)


@pytest.mark.parametrize("name", ["star12", "top"])
def test_adjointness_all_pairs_m5(name):
    el = star(CTX5, mono(V5, 1, 2)) if name == "star12" else mono(V5, 1, 2, 3, 4, 5)
    mu = Potential.single(V5, el)
    d = differential(CTX5, mu)
    delta = codifferential(CTX5, mu)
    sign = -1 if (5 * 4 // 2) % 2 else 1
    basis = all_monomials(V5)
    for v in basis:
        for w in basis:
            assert inner_product(CTX5, op_apply(d, v), w) == \
                -sign * inner_product(CTX5, v, op_apply(delta, w))


def test_disjointness_on_kernel_bases():
    # d(delta(x)) = 0 forces delta(x) = 0, and symmetrically
    mu = Potential.single(V5, star(CTX5, mono(V5, 1, 2)))
    d = differential(CTX5, mu)
    delta = codifferential(CTX5, mu)
    from naryalg.hodge import op_full_matrix
    dd = op_full_matrix(CTX5, op_compose(CTX5, d, delta))
    dm = op_full_matrix(CTX5, op_compose(CTX5, delta, d))
    delta_m = op_full_matrix(CTX5, delta)
    d_m = op_full_matrix(CTX5, d)
    for vec in linalg.nullspace(dd):
        assert all(x == 0 for x in linalg.mat_vec(delta_m, vec))
    for vec in linalg.nullspace(dm):
        assert all(x == 0 for x in linalg.mat_vec(d_m, vec))


@pytest.mark.parametrize("name", ["zero", "star12", "top"])
def test_decomposition_certificate_m5(name):
    if name == "zero":
        mu = Potential.single(V5, Element.zero(V5), arity=2)
    elif name == "star12":
        mu = Potential.single(V5, star(CTX5, mono(V5, 1, 2)))
    else:
        mu = Potential.single(V5, mono(V5, 1, 2, 3, 4, 5))
    rep = hodge_decomposition(CTX5, mu)
    assert rep.direct_sum_ok
    assert rep.kernel_intersection_ok
    assert rep.rank_d + rep.rank_delta + rep.ker_laplacian == 32
    assert rep.ker_laplacian == rep.cohomology_total
    for row in rep.degrees:
        assert row.im_d + row.im_delta + row.ker_laplacian == row.dim
        assert row.cohomology == row.ker_laplacian
    if name == "zero":
        assert rep.ker_laplacian == 32


def test_decomposition_zero_harmonics_span_everything():
    mu = Potential.single(V5, Element.zero(V5), arity=2)
    rep = hodge_decomposition(CTX5, mu)
    assert sum(len(h) for h in rep.harmonic.values()) == 32


def test_decomposition_mixed_family():
    # layers of arity 0 and 2 with disjoint supports: [mu,mu] = (e1,e1)
    V4 = odd_space(4)
    ctx = HodgeContext(V4)
    el = Element.generator(V4, 0) + Element.monomial(V4, (1, 2, 3))
    mu = Potential.homotopy_family(V4, el)
    rep = hodge_decomposition(ctx, mu)
    assert not rep.homogeneous
    assert rep.direct_sum_ok
    assert rep.kernel_intersection_ok
    assert rep.rank_d + rep.rank_delta + rep.ker_laplacian == 16


def test_laplacian_of_harmonics_vanishes():
    mu = Potential.single(V5, star(CTX5, mono(V5, 1, 2)))
    d = differential(CTX5, mu)
    delta = codifferential(CTX5, mu)
    lap = laplacian(CTX5, d, delta)
    rep = hodge_decomposition(CTX5, mu)
    for p, elems in rep.harmonic.items():
        for h in elems:
            assert op_apply(lap, h).is_zero()
            assert op_apply(d, h).is_zero()
            assert op_apply(delta, h).is_zero()


def test_codifferential_of_zero_potential_is_zero():
    from naryalg.hodge import op_is_zero
    mu = Potential.single(V5, Element.zero(V5), arity=2)
    assert op_is_zero(codifferential(CTX5, mu))


def test_operator_blocks_shapes():
    from naryalg.hodge import operator_blocks
    mu = Potential.single(V5, star(CTX5, mono(V5, 1, 2)))
    d = differential(CTX5, mu)
    blocks = operator_blocks(CTX5, d)
    # the cubic layer raises degree by exactly one
    assert all(q == p + 1 for (p, q) in blocks)
    for (p, q), mat in blocks.items():
        assert len(mat) == len(CTX5.degree_monomials[q])
        assert len(mat[0]) == len(CTX5.degree_monomials[p])
