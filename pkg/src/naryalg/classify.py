"""Classification of invariant (m-3)-ary algebras on an odd orthonormal space.

Degree-2 elements correspond to skew-symmetric matrices through the adjoint
action; the orthogonal group acts by conjugation, so orbits are labelled by
the block parameters of the real skew canonical form.  The (m-3)-ary
algebra attached to a degree-2 element v is the derived algebra of star(v).
Simplicity is decided by an exact ideal search (common kernels, spin
closures, and a randomized invariant-subspace stage) and, independently,
by the rank of v.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.linalg import schur

from . import linalg
from .derived import (
    Potential,
    canonical_tuples,
    check_filippov,
    check_nary_jacobi,
    derive_structure,
)
from .errors import (
    ConvergenceFailure,
    DimensionTooSmall,
    NaryError,
    NotOrthogonal,
    NotPureOdd,
    NotSkew,
    WrongDegree,
)
from .hodge import HodgeContext, star
from .poisson import Element, multiply, poisson_bracket

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# degree-2 elements <-> skew matrices


def _require_orthonormal_odd(space):
    if not space.pure_odd:
        raise NotPureOdd("correspondence needs a pure odd space")
    ident = tuple(tuple(row) for row in linalg.identity(space.dim))
    if space.gram != ident:
        raise NaryError("correspondence is normalized for the identity Gram matrix")


def ad_matrix(space, w):
    """Matrix of ad w: v -> [w, v] on generators."""
    m = space.dim
    mat = linalg.zeros(m, m)
    for k in range(m):
        img = poisson_bracket(w, Element.generator(space, k))
        for mono, c in img.terms.items():
            if len(mono) != 1:
                raise WrongDegree("ad w does not preserve degree 1")
            mat[mono[0]][k] = c
    return mat


def skew_to_element(space, a):
    """Degree-2 element whose adjoint matrix is exactly a.

    Sign convention: e_i e_j (i < j) has adjoint matrix E_ij - E_ji, so the
    coefficient of e_i e_j is a[i][j].  Verified after construction.
    """
    _require_orthonormal_odd(space)
    m = space.dim
    a = [[Fraction(x) for x in row] for row in a]
    for i in range(m):
        for j in range(m):
            if a[i][j] != -a[j][i]:
                raise NotSkew(f"entry ({i},{j}) breaks skew symmetry")
    acc = {}
    for i in range(m):
        for j in range(i + 1, m):
            if a[i][j] != 0:
                acc[(i, j)] = a[i][j]
    w = Element(space, acc)
    if ad_matrix(space, w) != a:
        raise NaryError("adjoint matrix does not reproduce the input")
    return w


def element_to_skew(space, w):
    """Inverse of skew_to_element (exact round-trip)."""
    _require_orthonormal_odd(space)
    if not w.is_zero() and w.degree() != 2:
        raise WrongDegree("expected a degree-2 element")
    return ad_matrix(space, w)


# ---------------------------------------------------------------------------
# real canonical form (the one numerical component of the engine)


@dataclass
class CanonicalForm:
    params: list            # a_1 >= a_2 >= ...; last may be negative if m even
    q: object               # orthogonal matrix with det +1 (numpy array)
    residual: float
    m: int

    def reconstruct(self):
        a = np.zeros((self.m, self.m))
        for t, val in enumerate(self.params):
            a[2 * t, 2 * t + 1] = val
            a[2 * t + 1, 2 * t] = -val
        return a


def canonical_form(a, skew_tol=1e-12, residual_tol=1e-9):
    """Block parameters and transforming rotation of a real skew matrix."""
    A = np.asarray(a, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSkew("input is not a square matrix")
    m = A.shape[0]
    scale = max(1.0, float(np.abs(A).max()))
    if float(np.abs(A + A.T).max()) > skew_tol * scale:
        raise NotSkew("matrix is not skew-symmetric within tolerance")
    T, Z = schur(A, output="real")
    q = Z.copy()
    blocks = []      # (value, first column index)
    zero_cols = []
    i = 0
    while i < m:
        if i + 1 < m and abs(T[i + 1, i]) > 1e-12 * scale:
            val = float((T[i, i + 1] - T[i + 1, i]) / 2.0)
            if val < 0:
                # swap the two basis vectors: flips the block sign
                q[:, [i, i + 1]] = q[:, [i + 1, i]]
                val = -val
            blocks.append((val, i))
            i += 2
        else:
            zero_cols.append(i)
            i += 1
    blocks.sort(key=lambda bv: -bv[0])
    order = []
    for _, col in blocks:
        order.extend([col, col + 1])
    order.extend(zero_cols)
    q = q[:, order]
    params = [val for val, _ in blocks]
    det = float(np.linalg.det(q))
    if det < 0:
        if zero_cols:
            q[:, m - 1] = -q[:, m - 1]
        elif blocks:
            # flip one vector of the smallest block: its parameter changes sign
            q[:, m - 1] = -q[:, m - 1]
            params[-1] = -params[-1]
        else:
            raise ConvergenceFailure("cannot normalize determinant")
    form = CanonicalForm(params=params, q=q, residual=0.0, m=m)
    recon = q @ form.reconstruct() @ q.T
    form.residual = float(np.abs(recon - A).max())
    if form.residual > residual_tol * scale:
        raise ConvergenceFailure(f"residual {form.residual} above tolerance")
    return form


# ---------------------------------------------------------------------------
# the (m-3)-ary algebra of a degree-2 element


def build_m3_algebra(ctx, v):
    """Derived potential star(v) of the (m-3)-ary algebra attached to v."""
    if not v.is_zero() and v.degree() != 2:
        raise WrongDegree("expected a degree-2 element")
    m = ctx.m
    if m < 4:
        raise DimensionTooSmall("need dimension >= 4 for an (m-3)-ary algebra")
    return Potential.single(ctx.space, star(ctx, v), arity=m - 3)


def ider(space, mu):
    """Basis of the invariant derivations of (V, mu), inside degree 2.

    Exact kernel of w -> [w, mu] on the degree-2 component.
    """
    basis2 = canonical_tuples(space, 2)
    target_index = {}
    rows = []
    columns = []
    for b in basis2:
        img = poisson_bracket(Element.monomial(space, b), mu.element)
        columns.append(img)
        for mono in img.terms:
            if mono not in target_index:
                target_index[mono] = len(target_index)
    mat = linalg.zeros(max(len(target_index), 1), len(basis2))
    for j, img in enumerate(columns):
        for mono, c in img.terms.items():
            mat[target_index[mono]][j] = c
    kernel = linalg.nullspace(mat)
    out = []
    for vec in linalg.row_space(kernel) if kernel else []:
        acc = {b: c for b, c in zip(basis2, vec) if c != 0}
        out.append(Element(space, acc))
    return out


def degree2_rowspace(space, elements):
    """Canonical row space of degree-2 elements (for subspace comparison)."""
    basis2 = canonical_tuples(space, 2)
    pos = {b: i for i, b in enumerate(basis2)}
    rows = []
    for el in elements:
        row = [ZERO] * len(basis2)
        for mono, c in el.terms.items():
            row[pos[mono]] = c
        rows.append(row)
    return linalg.row_space(rows)


# ---------------------------------------------------------------------------
# ideal search


@dataclass
class IdealReport:
    found: bool
    basis: list = field(default_factory=list)   # degree-1 elements
    method: str = ""
    status: str = ""
    rounds: int = 0


def _spin(mats, seed_rows, m):
    """Smallest subspace containing the seeds and invariant under the mats."""
    rows = linalg.row_space([list(r) for r in seed_rows])
    changed = True
    while changed and len(rows) < m:
        changed = False
        new_rows = list(rows)
        for mat in mats:
            for vec in rows:
                img = linalg.mat_vec(mat, vec)
                if any(x != 0 for x in img):
                    new_rows.append(img)
        reduced = linalg.row_space(new_rows)
        if len(reduced) > len(rows):
            rows = reduced
            changed = True
    return rows


def _verify_ideal(mats, rows):
    if not rows:
        return False
    space_rows = linalg.row_space(rows)
    for mat in mats:
        for vec in space_rows:
            img = linalg.mat_vec(mat, vec)
            stacked = space_rows + [img]
            if len(linalg.row_space(stacked)) != len(space_rows):
                return False
    return True


def _rows_to_elements(space, rows):
    out = []
    for vec in rows:
        acc = {(i,): c for i, c in enumerate(vec) if c != 0}
        out.append(Element(space, acc))
    return out


def _orth_complement(rows, m):
    if not rows:
        return linalg.identity(m)
    return linalg.nullspace(rows)


def find_ideal(s, rank_hint=None, rounds=64, seed=0):
    """Search for a proper ideal of an n-ary structure on a pure odd space.

    Stages: common kernel of the adjoint operators; spin closures of
    kernels, images, basis lines and their orthogonal complements; then a
    randomized invariant-subspace search over the generated operator
    algebra.  A failure to find an ideal is reported as simple
    (certified through the rank criterion when a rank hint applies,
    probabilistic otherwise).
    """
    space = s.space
    if not space.pure_odd:
        raise NotPureOdd("ideal search is implemented for pure odd spaces")
    m = space.dim
    prefixes = canonical_tuples(space, s.arity - 1)
    mats = [s.operator(t) for t in prefixes]
    mats = [mat for mat in mats if not linalg.is_zero_matrix(mat)]

    if not mats:
        # zero structure: every line is an ideal
        return IdealReport(True, [Element.generator(space, 0)],
                           method="kernel", status="ideal found")

    # stage 1: common kernel
    stacked = [row for mat in mats for row in mat]
    kernel = linalg.nullspace(stacked)
    if kernel:
        rows = linalg.row_space(kernel)
        if 0 < len(rows) < m and _verify_ideal(mats, rows):
            return IdealReport(True, _rows_to_elements(space, rows),
                               method="kernel", status="ideal found")

    # stage 2: spin closures of deterministic candidates
    candidates = []
    for mat in mats:
        ns = linalg.nullspace(mat)
        if ns:
            candidates.append(ns)
            candidates.append(_orth_complement(ns, m))
        cs = linalg.row_space(linalg.transpose(mat))
        if 0 < len(cs) < m:
            candidates.append(cs)
            candidates.append(_orth_complement(cs, m))
    for i in range(m):
        row = [ZERO] * m
        row[i] = ONE
        candidates.append([row])
    for cand in candidates:
        if not cand:
            continue
        spun = _spin(mats, cand, m)
        if 0 < len(spun) < m and _verify_ideal(mats, spun):
            return IdealReport(True, _rows_to_elements(space, spun),
                               method="spin", status="ideal found")

    # rank shortcut: above rank 2 these algebras have no proper ideals (m > 4)
    if rank_hint is not None and rank_hint > 2 and m > 4:
        return IdealReport(False, method="rank-criterion",
                           status="simple (certified)")

    # stage 3: randomized invariant-subspace search
    rng = random.Random(seed)
    mats_t = [linalg.transpose(mat) for mat in mats]
    for rnd in range(1, rounds + 1):
        z = linalg.zeros(m, m)
        for _ in range(rng.randint(1, 3)):
            word = mats[rng.randrange(len(mats))]
            for _ in range(rng.randint(0, 2)):
                word = linalg.mat_mul(word, mats[rng.randrange(len(mats))])
            c = Fraction(rng.randint(-3, 3))
            if c == 0:
                continue
            z = [[z[i][j] + c * word[i][j] for j in range(m)] for i in range(m)]
        ns = linalg.nullspace(z)
        if not ns or len(ns) == m:
            continue
        for vec in ns:
            spun = _spin(mats, [vec], m)
            if 0 < len(spun) < m and _verify_ideal(mats, spun):
                return IdealReport(True, _rows_to_elements(space, spun),
                                   method="meataxe", status="ideal found",
                                   rounds=rnd)
        if len(ns) == 1:
            zt = linalg.transpose(z)
            nst = linalg.nullspace(zt)
            dual_full = True
            for vec in nst:
                spun = _spin(mats_t, [vec], m)
                if 0 < len(spun) < m:
                    comp = _orth_complement(spun, m)
                    comp = linalg.row_space(comp)
                    if 0 < len(comp) < m and _verify_ideal(mats, comp):
                        return IdealReport(True,
                                           _rows_to_elements(space, comp),
                                           method="meataxe",
                                           status="ideal found", rounds=rnd)
                    dual_full = False
            if dual_full:
                return IdealReport(False, method="meataxe",
                                   status="simple (probabilistic)", rounds=rnd)
    return IdealReport(False, method="meataxe",
                       status="simple (probabilistic)", rounds=rounds)


# ---------------------------------------------------------------------------
# classification records


@dataclass
class ClassificationRecord:
    m: int
    v: object                # degree-2 element
    skew_rank: int
    canonical_params: list   # approximate block parameters
    simple: bool
    simple_method: str
    filippov: bool
    sh_jacobi: bool
    ideal: IdealReport


def classify_m3(space, v, rounds=64, seed=0, cross_validate=True,
                tolerance=1e-9):
    """Full record for the (m-3)-ary algebra of a degree-2 element."""
    if space.dim <= 4:
        raise DimensionTooSmall("classification needs dimension > 4")
    ctx = HodgeContext(space)
    a = element_to_skew(space, v)
    rank = linalg.rank(a)
    mu = build_m3_algebra(ctx, v)
    s = derive_structure(mu)
    filippov = check_filippov(mu).passed
    sh = check_nary_jacobi(s).passed
    simple = rank > 2
    method = "rank-criterion"
    ideal = find_ideal(s, rank_hint=rank, rounds=rounds, seed=seed)
    if cross_validate and ideal.found == simple:
        raise NaryError("rank criterion disagrees with the ideal search")
    params = canonical_form(
        np.array([[float(x) for x in row] for row in a]),
        residual_tol=tolerance).params
    return ClassificationRecord(
        m=space.dim, v=v, skew_rank=rank, canonical_params=params,
        simple=simple, simple_method=method, filippov=filippov,
        sh_jacobi=sh, ideal=ideal)


# ---------------------------------------------------------------------------
# isomorphisms


def _is_special_orthogonal(space, phi):
    m = space.dim
    g = [list(row) for row in space.gram]
    pgp = linalg.mat_mul(linalg.mat_mul(linalg.transpose(phi), g), phi)
    if pgp != g:
        return False
    return linalg.det(phi) == 1


def map_element(space, phi, el):
    """Induced action of a linear map on S*V: substitute generator images."""
    out = Element.zero(space)
    images = [Element(space, {(j,): phi[j][i] for j in range(space.dim)
                              if phi[j][i] != 0})
              for i in range(space.dim)]
    for mono, c in el.terms.items():
        term = Element.scalar(space, c)
        for i in mono:
            term = multiply(term, images[i])
        out = out + term
    return out


def isomorphic_via(space, mu1, mu2, phi, self_check=True):
    """Does phi in SO(V) carry the first potential to the second?"""
    phi = [[Fraction(x) for x in row] for row in phi]
    if not _is_special_orthogonal(space, phi):
        raise NotOrthogonal("phi does not preserve the form with det +1")
    if self_check:
        # bracket morphism property on a few fixed pairs
        rng = random.Random(2)
        for _ in range(4):
            deg = rng.randint(1, min(3, space.dim))
            t1 = canonical_tuples(space, deg)
            t2 = canonical_tuples(space, deg)
            if not t1 or not t2:
                continue
            a = Element.monomial(space, t1[rng.randrange(len(t1))])
            b = Element.monomial(space, t2[rng.randrange(len(t2))])
            lhs = map_element(space, phi, poisson_bracket(a, b))
            rhs = poisson_bracket(map_element(space, phi, a),
                                  map_element(space, phi, b))
            if lhs != rhs:
                raise NaryError("form-preserving map failed the bracket "
                                "morphism self-check")
    return map_element(space, phi, mu1.element) == mu2.element
