"""Combinatorial Hodge theory on a pure odd orthonormal space.

With an orthonormal basis of a pure odd V and the top form L = e_1...e_m,
the degree-reversing star operator is *(x_1...x_p) = [x_1,[...[x_p, L]]];
on monomials it acts by a signed complement.  The pairing
<v,w> L = (-1)^{p(p-1)/2} v * (star w) is symmetric positive definite with
<e_I, e_J> = delta_IJ.  A potential mu with square-zero differential
d = [mu, -] then yields a codifferential delta (conjugate of d by star,
with a per-layer sign), a Laplacian, and an exact three-way decomposition

    S*V = Im(d) (+) Im(delta) (+) Ker(Laplacian),

with Ker(Laplacian) = Ker(d) n Ker(delta) isomorphic to the cohomology of d.

Everything here is exact rational arithmetic; ranks are computed twice
(Gauss-Jordan and fraction-free elimination) and must agree.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import NaryError, NotHodgeContext, NotLInfinity
from .poisson import Element, multiply, poisson_bracket
from .superspace import Orientation

ZERO = Fraction(0)
ONE = Fraction(1)

MAX_DIM = 14
MAX_DIM_MIXED = 10


class HodgeContext:
    """Pure odd space, identity Gram matrix, a choice of orientation."""

    __slots__ = ("space", "orientation", "top", "degree_monomials", "index")

    def __init__(self, space, orientation=None):
        if not space.pure_odd:
            raise NotHodgeContext("star operator needs a pure odd space")
        if space.gram != tuple(tuple(row) for row in linalg.identity(space.dim)):
            raise NotHodgeContext("star operator needs an orthonormal basis "
                                  "(identity Gram matrix)")
        if space.dim > MAX_DIM:
            raise NotHodgeContext(f"dimension {space.dim} above guard {MAX_DIM}")
        self.space = space
        self.orientation = orientation or Orientation.standard(space.dim)
        full = tuple(range(space.dim))
        self.top = Element(space, {full: Fraction(self.orientation.sign)})
        self.degree_monomials = [
            [tuple(c) for c in combinations(range(space.dim), p)]
            for p in range(space.dim + 1)
        ]
        self.index = {}
        for p, monos in enumerate(self.degree_monomials):
            for i, mono in enumerate(monos):
                self.index[mono] = (p, i)

    @property
    def m(self):
        return self.space.dim


def _require_ctx_element(ctx, v):
    if v.space != ctx.space:
        raise NotHodgeContext("element does not live over the context space")


def star_monomial(ctx, mono):
    """(sign, complement) of a single monomial under the star operator.

    The sign is the signature of (i_p,...,i_1, j_1,...,j_{m-p}) as a
    permutation of (1,...,m), times the orientation sign.
    """
    m = ctx.m
    inside = set(mono)
    comp = tuple(i for i in range(m) if i not in inside)
    seq = tuple(reversed(mono)) + comp
    sign = ctx.orientation.sign
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
    return sign, comp


def star(ctx, v):
    """Linear extension of the star operator."""
    _require_ctx_element(ctx, v)
    acc = {}
    for mono, c in v.terms.items():
        sign, comp = star_monomial(ctx, mono)
        acc[comp] = acc.get(comp, ZERO) + sign * c
    return Element(ctx.space, acc)


def star_matrix(ctx, p):
    """Matrix of star from degree p to degree m - p."""
    src = ctx.degree_monomials[p]
    dst = ctx.degree_monomials[ctx.m - p]
    pos = {mono: i for i, mono in enumerate(dst)}
    mat = linalg.zeros(len(dst), len(src))
    for j, mono in enumerate(src):
        sign, comp = star_monomial(ctx, mono)
        mat[pos[comp]][j] = Fraction(sign)
    return mat


def inner_product(ctx, v, w):
    """<v, w>: zero across degrees, computed through v * (star w)."""
    _require_ctx_element(ctx, v)
    _require_ctx_element(ctx, w)
    total = ZERO
    full = tuple(range(ctx.m))
    top_coeff = ctx.top.terms.get(full, ONE)
    for p in set(v.degrees()) & set(w.degrees()):
        prod = multiply(v.homogeneous_part(p), star(ctx, w.homogeneous_part(p)))
        c = prod.terms.get(full, ZERO)
        sign = -1 if (p * (p - 1) // 2) % 2 else 1
        total += sign * c / top_coeff
    return total


# ---------------------------------------------------------------------------
# linear operators on S*V, stored as images of basis monomials


def op_zero(ctx):
    return {mono: Element.zero(ctx.space)
            for monos in ctx.degree_monomials for mono in monos}


def op_from_function(ctx, fn):
    return {mono: fn(Element(ctx.space, {mono: ONE}))
            for monos in ctx.degree_monomials for mono in monos}


def op_apply(op, v):
    out = Element.zero(v.space)
    for mono, c in v.terms.items():
        out = out + op[mono].scale(c)
    return out


def op_add(ctx, f, g):
    return {mono: f[mono] + g[mono]
            for monos in ctx.degree_monomials for mono in monos}


def op_scale(ctx, f, c):
    return {mono: f[mono].scale(c)
            for monos in ctx.degree_monomials for mono in monos}


def op_compose(ctx, f, g):
    """x -> f(g(x))."""
    return {mono: op_apply(f, g[mono])
            for monos in ctx.degree_monomials for mono in monos}


def op_is_zero(op):
    return all(img.is_zero() for img in op.values())


def op_block(ctx, op, p, q):
    """Matrix of the (degree p -> degree q) component."""
    src = ctx.degree_monomials[p]
    dst = ctx.degree_monomials[q]
    pos = {mono: i for i, mono in enumerate(dst)}
    mat = linalg.zeros(len(dst), len(src))
    for j, mono in enumerate(src):
        for out_mono, c in op[mono].terms.items():
            if len(out_mono) == q:
                mat[pos[out_mono]][j] = c
    return mat


def operator_blocks(ctx, op):
    """Nonzero degree blocks {(p, q): matrix} of an operator."""
    out = {}
    for p in range(ctx.m + 1):
        targets = {len(out_mono) for mono in ctx.degree_monomials[p]
                   for out_mono in op[mono].terms}
        for q in sorted(targets):
            out[(p, q)] = op_block(ctx, op, p, q)
    return out


def op_restricted(ctx, op, p):
    """Matrix from degree p into all of S*V (rows ordered by degree, lex)."""
    src = ctx.degree_monomials[p]
    rows = sum(len(monos) for monos in ctx.degree_monomials)
    offsets = {}
    off = 0
    for q, monos in enumerate(ctx.degree_monomials):
        for i, mono in enumerate(monos):
            offsets[mono] = off + i
        off += len(monos)
    mat = linalg.zeros(rows, len(src))
    for j, mono in enumerate(src):
        for out_mono, c in op[mono].terms.items():
            mat[offsets[out_mono]][j] = c
    return mat


def op_full_matrix(ctx, op):
    """Dense matrix over the full monomial basis (degree then lex order)."""
    blocks = [op_restricted(ctx, op, p) for p in range(ctx.m + 1)]
    rows = len(blocks[0])
    mat = []
    for r in range(rows):
        row = []
        for b in blocks:
            row.extend(b[r])
        mat.append(row)
    return mat


def _checked_rank(mat):
    r1 = linalg.rank(mat)
    r2 = linalg.bareiss_rank(mat)
    if r1 != r2:
        raise NaryError(f"rank routines disagree: {r1} vs {r2}")
    return r1


# ---------------------------------------------------------------------------
# differential, codifferential, Laplacian


def _layer_shift(deg):
    # a layer of degree s raises polynomial degree by s - 2 under [mu_s, -]
    return deg - 2


def differential(ctx, mu):
    """The operator d = [mu, -], verified to square to zero."""
    _require_ctx_element(ctx, mu.element)
    d = op_from_function(ctx, lambda v: poisson_bracket(mu.element, v))
    if not op_is_zero(op_compose(ctx, d, d)):
        raise NotLInfinity("d = [mu,-] does not square to zero")
    return d


def codifferential(ctx, mu):
    """delta = sum over layers of (-1)^{k(1-k)/2} star d_k star, k = deg - 2."""
    _require_ctx_element(ctx, mu.element)
    total = op_zero(ctx)
    star_op = op_from_function(ctx, lambda v: star(ctx, v))
    for deg in mu.element.degrees():
        layer = mu.element.homogeneous_part(deg)
        k = _layer_shift(deg)
        d_k = op_from_function(ctx, lambda v, el=layer: poisson_bracket(el, v))
        delta_k = op_compose(ctx, star_op, op_compose(ctx, d_k, star_op))
        sign = -1 if (k * (1 - k) // 2) % 2 else 1
        total = op_add(ctx, total, op_scale(ctx, delta_k, sign))
    if not op_is_zero(op_compose(ctx, total, total)):
        raise NotLInfinity("delta does not square to zero")
    return total


def laplacian(ctx, d, delta):
    return op_add(ctx, op_compose(ctx, delta, d), op_compose(ctx, d, delta))


def _validate_homotopy(ctx, mu):
    if not mu.is_odd():
        raise NotLInfinity("decomposition needs an odd potential")
    sq = poisson_bracket(mu.element, mu.element)
    if not (sq - sq.homogeneous_part(0)).is_zero():
        raise NotLInfinity("[mu, mu] is not a scalar")


@dataclass
class HodgeDegreeRow:
    p: int
    dim: int
    rank_d: int          # rank of d restricted to degree p
    rank_delta: int      # rank of delta restricted to degree p
    im_d: int            # dimension of Im(d) landing in degree p
    im_delta: int        # dimension of Im(delta) landing in degree p
    ker_laplacian: int
    cohomology: int = None


@dataclass
class HodgeReport:
    m: int
    degrees: list
    total_dim: int
    rank_d: int
    rank_delta: int
    ker_laplacian: int
    direct_sum_ok: bool
    kernel_intersection_ok: bool   # Ker L == Ker d n Ker delta
    cohomology_total: int
    harmonic: dict = field(default_factory=dict)
    homogeneous: bool = True


def hodge_decomposition(ctx, mu):
    """Exact decomposition certificate for a homotopy potential."""
    _validate_homotopy(ctx, mu)
    degrees = mu.element.degrees()
    if len(degrees) > 1 and ctx.m > MAX_DIM_MIXED:
        raise NotHodgeContext(
            f"mixed-layer potentials are guarded at dimension {MAX_DIM_MIXED}")
    d = differential(ctx, mu)
    delta = codifferential(ctx, mu)
    lap = laplacian(ctx, d, delta)
    if len(degrees) <= 1:
        k = _layer_shift(degrees[0]) if degrees else 0
        return _decompose_homogeneous(ctx, d, delta, lap, k)
    return _decompose_mixed(ctx, d, delta, lap)


def _column_space(mat):
    # canonical basis of the column space, as row vectors
    return linalg.row_space(linalg.transpose(mat))


def _decompose_homogeneous(ctx, d, delta, lap, k):
    m = ctx.m
    dims = [len(ctx.degree_monomials[p]) for p in range(m + 1)]
    d_blocks, delta_blocks = {}, {}
    for p in range(m + 1):
        if 0 <= p + k <= m:
            d_blocks[p] = op_block(ctx, d, p, p + k)
        if 0 <= p - k <= m:
            delta_blocks[p] = op_block(ctx, delta, p, p - k)
    rows = []
    harmonic = {}
    direct_ok = True
    kernels_match = True
    for p in range(m + 1):
        dim = dims[p]
        rank_d_p = _checked_rank(d_blocks[p]) if p in d_blocks else 0
        rank_delta_p = _checked_rank(delta_blocks[p]) if p in delta_blocks else 0
        im_d = _checked_rank(d_blocks[p - k]) if (p - k) in d_blocks and 0 <= p - k <= m else 0
        im_delta = _checked_rank(delta_blocks[p + k]) if (p + k) in delta_blocks and 0 <= p + k <= m else 0
        lap_p = op_block(ctx, lap, p, p)
        ker_lap = linalg.nullspace(lap_p)
        # Ker L == Ker d n Ker delta on this degree
        stacked = []
        if p in d_blocks:
            stacked.extend(d_blocks[p])
        if p in delta_blocks:
            stacked.extend(delta_blocks[p])
        ker_both = linalg.nullspace(stacked) if stacked else linalg.nullspace(
            linalg.zeros(1, dim))
        if not linalg.same_subspace(ker_lap if ker_lap else [[ZERO] * dim],
                                    ker_both if ker_both else [[ZERO] * dim]):
            kernels_match = False
        # three-way independence: all image/kernel vectors stacked must be
        # linearly independent and fill the degree
        pieces = []
        if (p - k) in d_blocks and 0 <= p - k <= m:
            pieces.extend(_column_space(d_blocks[p - k]))
        if (p + k) in delta_blocks and 0 <= p + k <= m:
            pieces.extend(_column_space(delta_blocks[p + k]))
        pieces.extend(ker_lap)
        total_pieces = im_d + im_delta + len(ker_lap)
        if total_pieces != dim or (pieces and _checked_rank(pieces) != dim):
            direct_ok = False
        cohom = (dim - rank_d_p) - im_d
        if cohom != len(ker_lap):
            direct_ok = False
        rows.append(HodgeDegreeRow(p, dim, rank_d_p, rank_delta_p, im_d,
                                   im_delta, len(ker_lap), cohom))
        harmonic[p] = [
            Element(ctx.space,
                    {ctx.degree_monomials[p][i]: c
                     for i, c in enumerate(vec) if c != 0})
            for vec in linalg.row_space(ker_lap)
        ] if ker_lap else []
    return HodgeReport(
        m=m,
        degrees=rows,
        total_dim=sum(dims),
        rank_d=sum(r.rank_d for r in rows),
        rank_delta=sum(r.rank_delta for r in rows),
        ker_laplacian=sum(r.ker_laplacian for r in rows),
        direct_sum_ok=direct_ok,
        kernel_intersection_ok=kernels_match,
        cohomology_total=sum(r.cohomology for r in rows),
        harmonic=harmonic,
        homogeneous=True,
    )


def _decompose_mixed(ctx, d, delta, lap):
    m = ctx.m
    dims = [len(ctx.degree_monomials[p]) for p in range(m + 1)]
    total = sum(dims)
    d_full = op_full_matrix(ctx, d)
    delta_full = op_full_matrix(ctx, delta)
    lap_full = op_full_matrix(ctx, lap)
    rank_d = _checked_rank(d_full)
    rank_delta = _checked_rank(delta_full)
    ker_lap = linalg.nullspace(lap_full)
    ker_both = linalg.nullspace(d_full + delta_full)
    kernels_match = linalg.same_subspace(
        ker_lap if ker_lap else [[ZERO] * total],
        ker_both if ker_both else [[ZERO] * total])
    pieces = _column_space(d_full) + _column_space(delta_full) + ker_lap
    direct_ok = (rank_d + rank_delta + len(ker_lap) == total
                 and (not pieces or _checked_rank(pieces) == total))
    cohom = (total - rank_d) - rank_d
    rows = []
    for p in range(m + 1):
        rank_d_p = _checked_rank(op_restricted(ctx, d, p))
        rank_delta_p = _checked_rank(op_restricted(ctx, delta, p))
        ker_p = len(linalg.nullspace(op_restricted(ctx, lap, p)))
        rows.append(HodgeDegreeRow(p, dims[p], rank_d_p, rank_delta_p,
                                   None, None, ker_p, None))
    return HodgeReport(
        m=m,
        degrees=rows,
        total_dim=total,
        rank_d=rank_d,
        rank_delta=rank_delta,
        ker_laplacian=len(ker_lap),
        direct_sum_ok=direct_ok,
        kernel_intersection_ok=kernels_match,
        cohomology_total=cohom,
        harmonic={},
        homogeneous=False,
    )
