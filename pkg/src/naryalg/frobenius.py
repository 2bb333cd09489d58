"""Cotangent extension and quasi-Frobenius structures.

An anticommutative n-ary structure mu on a pure odd V extends to the
doubled space V + V* with the hyperbolic pairing (a, alpha) = alpha(a):
the extended product restricts to mu on V, kills two or more dual
arguments, and acts on one dual argument by

    muT(a_1,...,a_{n-1}, b*)(c) = -b*( mu(a_1,...,a_{n-1}, c) ).

The extension is commutative and invariant for the doubled pairing, so it
has a derived potential muT, recovered exactly by inverting the derived
bracket construction.

A graded-symmetric bilinear form phi (an ordinary skew matrix on a pure
odd space) is quasi-Frobenius for mu when every cyclic sum
sum phi(a_1, mu(a_2,...,a_{n+1})) vanishes; for even n this happens exactly
when the graph {a + phi(a,-)} is a subalgebra of the extension.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .derived import NaryStructure, canonical_tuples, derive_structure, \
    potential_from_structure
from .errors import NaryError, NotPureOdd, OddArity
from .poisson import Element, pair_vectors
from .superspace import ODD, Superspace

ZERO = Fraction(0)
ONE = Fraction(1)

_TUPLE_GUARD = 200000


def doubled_space(m):
    """Pure odd space on V + V* with the hyperbolic Gram matrix."""
    g = linalg.zeros(2 * m, 2 * m)
    for i in range(m):
        g[i][m + i] = ONE
        g[m + i][i] = ONE
    return Superspace(2 * m, [ODD] * (2 * m), g)


def validate_phi(space, phi):
    """A graded-symmetric form on a pure odd space: an ordinary skew matrix."""
    m = space.dim
    phi = [[Fraction(x) for x in row] for row in phi]
    if len(phi) != m or any(len(row) != m for row in phi):
        raise NaryError("phi must be a dim x dim matrix")
    for i in range(m):
        for j in range(m):
            if phi[i][j] != -phi[j][i]:
                raise NaryError(
                    f"phi[{i}][{j}] breaks graded symmetry (skew on odd)")
    return phi


@dataclass
class TStarExtension:
    base_space: object
    space: object            # the doubled space
    arity: int
    base: NaryStructure
    potential: object        # derived potential of the extension
    structure: NaryStructure # extended product, derived back from potential


def _as_structure(space, mu):
    if isinstance(mu, NaryStructure):
        return mu
    return derive_structure(mu)


def t_star_extension(space, mu):
    """Build the cotangent extension and verify its defining identities."""
    if not space.pure_odd:
        raise NotPureOdd("the extension is defined for pure odd spaces")
    s = _as_structure(space, mu)
    m = space.dim
    n = s.arity
    ws = doubled_space(m)

    table = {}
    for t, value in s.table.items():
        lifted = Element(ws, {mono: c for mono, c in value.terms.items()})
        table[t] = lifted
    for t in canonical_tuples(space, n - 1):
        for b in range(m):
            # one dual argument, canonically in the last slot
            img = {}
            for c in range(m):
                vec = s.eval_basis(t + (c,))
                coeff = vec.coefficient((b,))
                if coeff != 0:
                    img[(m + c,)] = -coeff
            if img:
                table[t + (m + b,)] = Element(ws, img)
    ext_structure = NaryStructure(ws, n, table)
    muT = potential_from_structure(ext_structure, ws)
    derived_back = derive_structure(muT)

    # defining identities, on every basis tuple
    for t in canonical_tuples(space, n):
        lhs = derived_back.eval_basis(t)
        want = Element(ws, dict(s.eval_basis(t).terms))
        if lhs != want:
            raise NaryError(f"extension does not restrict to the base at {t}")
    for t in canonical_tuples(space, n - 1):
        for b in range(m):
            val = derived_back.eval_basis(t + (m + b,))
            for c in range(m):
                got = val.coefficient((m + c,))
                want = -s.eval_basis(t + (c,)).coefficient((b,))
                if got != want:
                    raise NaryError(
                        f"dual action is wrong at {t + (m + b,)} on {c}")
            if any(i < m for mono in val.terms for i in mono):
                raise NaryError(f"dual argument leaks into V at {t + (m + b,)}")
    for t in canonical_tuples(ws, n):
        stars = sum(1 for i in t if i >= m)
        if stars > 1 and not derived_back.eval_basis(t).is_zero():
            raise NaryError(f"extension is nonzero on {stars} dual arguments")

    return TStarExtension(base_space=space, space=ws, arity=n, base=s,
                          potential=muT, structure=derived_back)


@dataclass
class QFCertificate:
    passed: bool
    witness: tuple = None
    residual: Fraction = None
    phi_rank: int = 0
    odd_arity: bool = False


def check_quasi_frobenius(space, mu, phi, allow_odd_arity=False,
                          exhaustive=False):
    """Cyclic-sum criterion, evaluated on every basis tuple (with repeats)."""
    if not space.pure_odd:
        raise NotPureOdd("quasi-Frobenius structures live on pure odd spaces")
    s = _as_structure(space, mu)
    n = s.arity
    odd = n % 2 == 1
    if odd and not allow_odd_arity:
        raise OddArity("the correspondence is stated for even arity; "
                       "pass allow_odd_arity=True for the raw cyclic check")
    phi = validate_phi(space, phi)
    m = space.dim
    if m ** (n + 1) > _TUPLE_GUARD:
        raise NaryError("tuple loop above the work guard")

    def phi_pair(i, vec):
        total = ZERO
        for mono, c in vec.terms.items():
            total += phi[i][mono[0]] * c
        return total

    def cyclic_sum(args):
        total = ZERO
        k = len(args)
        for t in range(k):
            rotated = args[t:] + args[:t]
            total += phi_pair(rotated[0], s.eval_basis(rotated[1:]))
        return total

    violations = []
    from itertools import product
    for args in product(range(m), repeat=n + 1):
        r = cyclic_sum(tuple(args))
        if r != 0:
            violations.append((args, r))
            if not exhaustive:
                break
    rank_phi = linalg.rank(phi)
    if violations:
        w, r = violations[0]
        return QFCertificate(False, witness=w, residual=r,
                             phi_rank=rank_phi, odd_arity=odd)
    return QFCertificate(True, phi_rank=rank_phi, odd_arity=odd)


def graph_vectors(ext, phi):
    """Basis of the graph subspace {a + phi(a,-)} inside V + V*."""
    m = ext.base_space.dim
    ws = ext.space
    out = []
    for i in range(m):
        acc = {(i,): ONE}
        for j in range(m):
            if phi[i][j] != 0:
                acc[(m + j,)] = phi[i][j]
        out.append(Element(ws, acc))
    return out


def graph_subalgebra_test(ext, phi):
    """Is the graph of phi closed under the extended product?

    The graph is maximal isotropic, so the image lies inside it exactly
    when it pairs to zero with the graph itself.
    """
    n = ext.arity
    if n % 2 == 1:
        raise OddArity("the correspondence is stated for even arity")
    phi = validate_phi(ext.base_space, phi)
    b = graph_vectors(ext, phi)
    ws = ext.space
    for i in range(len(b)):
        for j in range(i, len(b)):
            if pair_vectors(ws, b[i], b[j]) != 0:
                raise NaryError("graph subspace is not isotropic")
    m = ext.base_space.dim
    from itertools import combinations
    for args in combinations(range(m), n):
        img = ext.structure.eval_elements([b[i] for i in args])
        if img.is_zero():
            continue
        for j in range(m):
            if pair_vectors(ws, img, b[j]) != 0:
                return False
    return True
