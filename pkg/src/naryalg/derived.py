"""Derived n-ary multiplications and their identity verifiers.

An element mu in S^{n+1}V defines an n-ary product on V through iterated
brackets, {a_1,...,a_n} = [a_1,[...,[a_n, mu]...]].  Such products are
always graded-commutative and invariant with respect to the form; when the
form is nondegenerate every commutative invariant structure arises this
way, and ``potential_from_structure`` inverts the construction exactly.

The verifiers reduce each universally quantified identity to finitely many
basis instances.  Multilinearity makes basis tuples sufficient, and the
built-in symmetry of the structures lets every loop run over canonical
tuples only (indices non-decreasing, odd indices strict).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegreeMismatch,
    NaryError,
    NotCommutative,
    NotInvariant,
    NotOdd,
    NotPureEven,
    NotPureOdd,
    SpaceMismatch,
    WrongDegree,
)
from .poisson import (
    Element,
    nested_bracket,
    nested_bracket_indices,
    normalize_word,
    pair_vectors,
    poisson_bracket,
)
from .superspace import require_nondegenerate

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# shared helpers


def canonical_tuples(space, n):
    """Non-decreasing index tuples of length n; odd indices never repeat."""
    dim = space.dim
    parity = space.parity
    out = []

    def rec(start, k, prefix):
        if k == 0:
            out.append(tuple(prefix))
            return
        for i in range(start, dim):
            rec(i if parity[i] == 0 else i + 1, k - 1, prefix + [i])

    rec(0, n, [])
    return out


def koszul_selection_sign(parities, chosen):
    """Sign of reordering (a_0,...,a_{N-1}) to (a_chosen, a_rest).

    chosen is an ascending position list; the sign is -1 for every pair of
    odd arguments that crosses.
    """
    chosen_set = set(chosen)
    sign = 1
    for p in chosen:
        if not parities[p]:
            continue
        for q in range(p):
            if q not in chosen_set and parities[q]:
                sign = -sign
    return sign


def parallel_map(fn, items, threads=1):
    """Ordered map, optionally chunked over a thread pool."""
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


@dataclass
class CheckReport:
    name: str
    passed: bool
    witness: tuple = None
    residual: object = None
    detail: str = ""
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


# ---------------------------------------------------------------------------
# potentials


class Potential:
    """A derived potential: one homogeneous element, or a graded family.

    Single-arity mode stores an element of S^{n+1}V for an n-ary product,
    n >= 1.  Family mode (for strong homotopy structures) stores an odd
    element whose homogeneous layer of degree k+1 encodes the k-ary
    operation, k >= 0.
    """

    __slots__ = ("space", "element", "arity", "family")

    def __init__(self, space, element, arity=None, family=False):
        if element.space != space:
            raise SpaceMismatch("potential element over a different space")
        self.space = space
        self.element = element
        self.family = family
        if family:
            self.arity = None
            for mono in element.terms:
                if len(mono) < 1:
                    raise DegreeMismatch("family layers must have degree >= 1")
            if not element.is_zero() and element.parity() != 1:
                raise NotOdd("a homotopy family must be an odd element")
        else:
            if arity is None:
                if element.is_zero():
                    raise DegreeMismatch("zero potential needs an explicit arity")
                arity = element.degree() - 1
            if arity < 1:
                raise DegreeMismatch("single-arity potentials need arity >= 1")
            if not element.is_zero() and element.degree() != arity + 1:
                raise DegreeMismatch(
                    f"element degree {element.degree()} != arity {arity} + 1")
            self.arity = arity

    @classmethod
    def single(cls, space, element, arity=None):
        return cls(space, element, arity=arity)

    @classmethod
    def homotopy_family(cls, space, element):
        return cls(space, element, family=True)

    def layers(self):
        """Map arity -> homogeneous layer element."""
        out = {}
        for p in self.element.degrees():
            out[p - 1] = self.element.homogeneous_part(p)
        return out

    def is_odd(self):
        return self.element.is_zero() or self.element.parity() == 1

    def __repr__(self):
        kind = "family" if self.family else f"arity={self.arity}"
        return f"Potential({kind}, {self.element!r})"


# ---------------------------------------------------------------------------
# structures


class NaryStructure:
    """Structure constants of an n-ary product on V.

    The table maps canonical index tuples to degree-1 elements (the value
    of the product on those basis vectors).  Values on permuted tuples are
    recovered through the Koszul sign rule, so the graded symmetry law is
    built into the representation; the only violation a table can encode is
    a nonzero value on a repeated odd index, which the symmetry law forces
    to vanish.
    """

    __slots__ = ("space", "arity", "table")

    def __init__(self, space, arity, table):
        if arity < 1:
            raise NaryError("structure arity must be >= 1")
        self.space = space
        self.arity = arity
        clean = {}
        for key, value in table.items():
            key = tuple(key)
            if len(key) != arity:
                raise NaryError(f"key {key} has length != arity {arity}")
            if any(not 0 <= i < space.dim for i in key):
                raise NaryError(f"key {key} has an index out of range")
            if any(a > b for a, b in zip(key, key[1:])):
                raise NaryError(f"key {key} is not non-decreasing")
            if value.space != space:
                raise SpaceMismatch("structure value over a different space")
            if any(len(m) != 1 for m in value.terms):
                raise WrongDegree(f"value at {key} is not a degree-1 element")
            if not value.is_zero():
                clean[key] = value
        self.table = clean

    def eval_basis(self, args):
        """Product of basis vectors, arguments in any order."""
        if len(args) != self.arity:
            raise NaryError(f"expected {self.arity} arguments")
        r = normalize_word(self.space, tuple(args))
        if r is None:
            return Element.zero(self.space)
        sign, key = r
        value = self.table.get(key)
        if value is None:
            return Element.zero(self.space)
        return value if sign == 1 else -value

    def eval_elements(self, args):
        """Multilinear extension to degree-1 elements."""
        out = Element.zero(self.space)

        def rec(k, idx, coeff):
            nonlocal out
            if k == len(args):
                out = out + self.eval_basis(tuple(idx)).scale(coeff)
                return
            for mono, c in args[k].terms.items():
                if len(mono) != 1:
                    raise WrongDegree("arguments must be degree-1 elements")
                idx.append(mono[0])
                rec(k + 1, idx, coeff * c)
                idx.pop()

        rec(0, [], ONE)
        return out

    def is_zero(self):
        return not self.table

    def operator(self, prefix):
        """Matrix of v -> product(prefix..., v) in the generator basis."""
        m = self.space.dim
        mat = [[ZERO] * m for _ in range(m)]
        for k in range(m):
            img = self.eval_basis(tuple(prefix) + (k,))
            for mono, c in img.terms.items():
                mat[mono[0]][k] = c
        return mat

    def __eq__(self, other):
        return (isinstance(other, NaryStructure) and self.space == other.space
                and self.arity == other.arity and self.table == other.table)


def derive_structure(mu):
    """Structure constants of the product derived from a potential."""
    if mu.family:
        raise NaryError("derive_structure needs a single-arity potential")
    n = mu.arity
    space = mu.space
    table = {}
    for t in canonical_tuples(space, n):
        val = nested_bracket_indices(space, t, mu.element)
        if not val.is_zero():
            table[t] = val
    return NaryStructure(space, n, table)


def check_commutative(s, exhaustive=False):
    """Graded symmetry (the only representable violation: odd squares)."""
    violations = []
    for key in sorted(s.table):
        seen = set()
        for i in key:
            if i in seen and s.space.parity[i] == 1:
                violations.append((key, s.table[key]))
                break
            seen.add(i)
    if violations and not exhaustive:
        violations = violations[:1]
    if violations:
        key, value = violations[0]
        return CheckReport("commutative", False, witness=key, residual=value,
                           detail="nonzero product on a repeated odd argument",
                           violations=violations)
    return CheckReport("commutative", True)


def check_invariant(s, exhaustive=False, threads=1):
    """(a_0, {a_1,...,a_n}) = (-1)^{|a_0||a_1|} (a_1, {a_0, a_2,...,a_n})."""
    space = s.space
    gen = [Element.generator(space, i) for i in range(space.dim)]
    keys = canonical_tuples(space, s.arity)

    def probe(item):
        a0, key = item
        lhs = pair_vectors(space, gen[a0], s.eval_basis(key))
        swapped = s.eval_basis((a0,) + key[1:])
        rhs = pair_vectors(space, gen[key[0]], swapped)
        if space.parity[a0] & space.parity[key[0]]:
            rhs = -rhs
        if lhs != rhs:
            return ((a0,) + key, lhs - rhs)
        return None

    items = [(a0, key) for a0 in range(space.dim) for key in keys]
    results = parallel_map(probe, items, threads)
    violations = [r for r in results if r is not None]
    if violations:
        if not exhaustive:
            violations = violations[:1]
        w, r = violations[0]
        return CheckReport("invariant", False, witness=w, residual=r,
                           violations=violations)
    return CheckReport("invariant", True)


def potential_from_structure(s, space=None):
    """Invert the derived-bracket construction (exact, unique).

    Requires a nondegenerate form and a commutative invariant structure;
    both are verified first and reported with a witness on failure.
    """
    space = space or s.space
    if space != s.space:
        raise SpaceMismatch("structure over a different space")
    require_nondegenerate(space)
    rep = check_commutative(s)
    if not rep.passed:
        raise NotCommutative("structure is not graded-commutative",
                             witness=rep.witness)
    rep = check_invariant(s)
    if not rep.passed:
        raise NotInvariant("structure is not invariant", witness=rep.witness)

    n = s.arity
    basis = canonical_tuples(space, n + 1)
    keys = canonical_tuples(space, n)
    columns = []
    for b in basis:
        mono = Element.monomial(space, b)
        col = []
        for t in keys:
            img = nested_bracket_indices(space, t, mono)
            for r in range(space.dim):
                col.append(img.coefficient((r,)))
        columns.append(col)
    rhs = []
    for t in keys:
        img = s.eval_basis(t)
        for r in range(space.dim):
            rhs.append(img.coefficient((r,)))
    matrix = [[columns[b][row] for b in range(len(basis))]
              for row in range(len(rhs))]
    from . import linalg
    x = linalg.solve(matrix, rhs)
    if x is None:
        # cannot happen for a commutative invariant structure over a
        # nondegenerate form
        raise NotInvariant("structure is not derived from any potential")
    acc = {}
    for b, coeff in zip(basis, x):
        if coeff != 0:
            acc[b] = coeff
    return Potential.single(space, Element(space, acc), arity=n)


# ---------------------------------------------------------------------------
# identity checks


def check_l_infinity(mu):
    """Strong homotopy condition: [mu, mu] must be a scalar.

    Returns a report whose residual is the positive-degree part of
    [mu, mu] (the obstruction).
    """
    if not mu.is_odd():
        raise NotOdd("the homotopy condition is stated for odd elements")
    sq = poisson_bracket(mu.element, mu.element)
    obstruction = sq - sq.homogeneous_part(0)
    return CheckReport("l-infinity", obstruction.is_zero(),
                       residual=obstruction)


def check_nary_jacobi(s, exhaustive=False, threads=1):
    """Unshuffle Jacobi identity for an n-ary structure.

    For every tuple (a_1,...,a_{2n-1}) the signed sum of
    {{a_I}, a_J} over unshuffles |I| = n, |J| = n-1 must vanish.
    """
    space = s.space
    n = s.arity
    parities = space.parity
    from itertools import combinations
    width = 2 * n - 1
    splits = list(combinations(range(width), n))

    def jacobiator(args):
        pars = [parities[i] for i in args]
        total = Element.zero(space)
        for inner_pos in splits:
            outer_pos = [p for p in range(width) if p not in inner_pos]
            sign = koszul_selection_sign(pars, inner_pos)
            inner = s.eval_basis(tuple(args[p] for p in inner_pos))
            if inner.is_zero():
                continue
            outer_args = tuple(args[p] for p in outer_pos)
            term = Element.zero(space)
            for mono, c in inner.terms.items():
                term = term + s.eval_basis((mono[0],) + outer_args).scale(c)
            total = total + (term if sign == 1 else -term)
        return total

    def probe(args):
        res = jacobiator(args)
        return None if res.is_zero() else (args, res)

    results = parallel_map(probe, canonical_tuples(space, width), threads)
    violations = [r for r in results if r is not None]
    if violations:
        if not exhaustive:
            violations = violations[:1]
        w, r = violations[0]
        return CheckReport("nary-jacobi", False, witness=w, residual=r,
                           violations=violations)
    return CheckReport("nary-jacobi", True)


def check_filippov(mu, exhaustive=False, threads=1):
    """Derivation-style Jacobi: [mu_{a^{n-1}}, mu] = 0 for all a^{n-1}."""
    if not mu.space.pure_odd:
        raise NotPureOdd("the Filippov criterion is stated for pure odd spaces")
    if mu.family:
        raise NaryError("check_filippov needs a single-arity potential")
    space = mu.space
    n = mu.arity

    def probe(t):
        mu_a = nested_bracket_indices(space, t, mu.element)
        res = poisson_bracket(mu_a, mu.element)
        return None if res.is_zero() else (t, res)

    results = parallel_map(probe, canonical_tuples(space, n - 1), threads)
    violations = [r for r in results if r is not None]
    if violations:
        if not exhaustive:
            violations = violations[:1]
        w, r = violations[0]
        return CheckReport("filippov", False, witness=w, residual=r,
                           violations=violations)
    return CheckReport("filippov", True)


def _require_cubic_even(mu, what):
    if not mu.space.pure_even:
        raise NotPureEven(f"{what} is stated for pure even spaces")
    if mu.family:
        raise NaryError(f"{what} needs a single-arity potential")
    if mu.arity != 2:
        raise WrongDegree(f"{what} needs a cubic potential (arity 2)")


def check_jordan(A, exhaustive=False):
    """Jordan identity through the bracket criterion [A_x, A_{[A_x, x]}] = 0.

    The identity is cubic in x, so x is replaced by a formal combination
    sum t_i e_i and every coefficient of the expansion must vanish; over
    the rationals this is equivalent to the identity for all x.
    """
    _require_cubic_even(A, "the Jordan criterion")
    space = A.space
    m = space.dim
    gen = [Element.generator(space, i) for i in range(m)]
    A_ = [poisson_bracket(gen[i], A.element) for i in range(m)]
    coeffs = {}
    for k in range(m):
        for i in range(m):
            for j in range(m):
                inner = poisson_bracket(
                    poisson_bracket(A_[i], gen[j]), A.element)
                term = poisson_bracket(A_[k], inner)
                if term.is_zero():
                    continue
                key = tuple(sorted((k, i, j)))
                coeffs[key] = coeffs.get(key, Element.zero(space)) + term
    violations = [(key, val) for key, val in sorted(coeffs.items())
                  if not val.is_zero()]
    if violations:
        if not exhaustive:
            violations = violations[:1]
        w, r = violations[0]
        return CheckReport("jordan", False, witness=w, residual=r,
                           violations=violations)
    return CheckReport("jordan", True)


def check_associative(mu, exhaustive=False):
    """Associativity criterion: [mu_a, mu_b] = 0 on basis vectors."""
    _require_cubic_even(mu, "the associativity criterion")
    space = mu.space
    m = space.dim
    mu_ = [poisson_bracket(Element.generator(space, i), mu.element)
           for i in range(m)]
    violations = []
    for i in range(m):
        for j in range(i, m):
            res = poisson_bracket(mu_[i], mu_[j])
            if not res.is_zero():
                violations.append(((i, j), res))
                if not exhaustive:
                    w, r = violations[0]
                    return CheckReport("associative", False, witness=w,
                                       residual=r, violations=violations)
    if violations:
        w, r = violations[0]
        return CheckReport("associative", False, witness=w, residual=r,
                           violations=violations)
    return CheckReport("associative", True)


def check_derivation(w, mu):
    """Is ad w an invariant derivation of the derived product?  [w, mu] = 0."""
    if not w.is_zero() and w.degree() != 2:
        raise WrongDegree("derivations correspond to degree-2 elements")
    return poisson_bracket(w, mu.element).is_zero()


# ---------------------------------------------------------------------------
# generalized (homotopy) Jacobi identities


def generalized_jacobi(mu, exhaustive=False):
    """Evaluate the generalized Jacobi identities of a graded family.

    Identity number q constrains q arguments: summed over splittings of
    the arguments into an outer block J and an inner block I,

        sum  sign(J, I) * op_{|J|+1}(a_J, op_{|I|}(a_I)) = 0,

    where op_s is the s-ary product of the degree-(s+1) layer and the sign
    is the Koszul sign of the reordering.  One report per identity index.
    """
    from itertools import combinations
    space = mu.space
    layers = mu.layers()
    arities = sorted(layers)
    reports = {}
    if not arities:
        return reports
    for q in range(0, 2 * max(arities)):
        # splittings |J| = k', |I| = l with k'+l = q, needing layers k'+1, l
        pairs = [(kp, q - kp) for kp in range(q + 1)
                 if (kp + 1) in layers and (q - kp) in layers]
        if not pairs:
            continue
        violations = []
        for args in canonical_tuples(space, q):
            pars = [space.parity[i] for i in args]
            total = Element.zero(space)
            for kp, l in pairs:
                for outer_pos in combinations(range(q), kp):
                    inner_pos = [p for p in range(q) if p not in outer_pos]
                    sign = koszul_selection_sign(pars, list(outer_pos))
                    inner = nested_bracket_indices(
                        space, [args[p] for p in inner_pos], layers[l])
                    if inner.is_zero():
                        continue
                    outer = nested_bracket(
                        [Element.generator(space, args[p]) for p in outer_pos]
                        + [inner],
                        layers[kp + 1])
                    total = total + (outer if sign == 1 else -outer)
            if not total.is_zero():
                violations.append((args, total))
                if not exhaustive:
                    break
        if violations:
            w, r = violations[0]
            reports[q] = CheckReport(f"generalized-jacobi-{q}", False,
                                     witness=w, residual=r,
                                     violations=violations)
        else:
            reports[q] = CheckReport(f"generalized-jacobi-{q}", True)
    return reports
