"""Exact linear algebra over Q(q) for graded components.

Vectors are coordinates of homogeneous polynomials over the ordered
monomial basis of one graded component.  Elimination is fraction-free:
rows stay in Z[q, q^-1] up to content, a combined row is rescaled by its
polynomial content, and division only happens when explicit solution
coefficients are requested.

Pivot discipline: a stored echelon row is displaced when an incoming row
offers a shorter pivot entry (fewer Laurent terms); ties keep the stored
row.  Leading position is the smallest column index.
"""

from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import BasisMismatch, DegreeTooLarge, ShapeMismatch
from .algebra import NCPoly, graded_basis, graded_dim
from .scalars import (RationalScalar, RAT_ONE, RAT_ZERO, ONE,
                      laurent_exact_div, laurent_gcd)

#: (mode, q_values) used when a call passes mode=None
_DEFAULT_MODE = ("exact", None)


@contextmanager
def mode_context(mode, q_values=None):
    """Temporarily change the default mode for rank and span_membership."""
    global _DEFAULT_MODE
    if mode not in ("exact", "specialize"):
        raise ValueError("unknown mode %r" % mode)
    saved = _DEFAULT_MODE
    _DEFAULT_MODE = (mode, tuple(q_values) if q_values else None)
    try:
        yield
    finally:
        _DEFAULT_MODE = saved


class GradedBasis:
    """Ordered monomial basis of one graded component, with an index map."""

    __slots__ = ("shape", "degree", "monomials", "index")

    def __init__(self, shape, degree, guard=None):
        if guard is not None and graded_dim(shape, degree) > guard:
            raise DegreeTooLarge(
                "degree-%d component of %s has dimension %d (guard %d)"
                % (degree, shape, graded_dim(shape, degree), guard))
        self.shape = shape
        self.degree = degree
        self.monomials = tuple(graded_basis(shape, degree))
        self.index = {m.exps: i for i, m in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)

    def __eq__(self, other):
        return (isinstance(other, GradedBasis) and self.shape == other.shape
                and self.degree == other.degree)

    def __hash__(self):
        return hash((self.shape, self.degree))


@lru_cache(maxsize=256)
def _basis_cached(m, n, degree, guard):
    from .algebra import MatrixShape
    return GradedBasis(MatrixShape(m, n), degree, guard)


def component_basis(shape, degree, guard=None):
    return _basis_cached(shape.m, shape.n, degree, guard)


class CoefficientVector:
    """A homogeneous polynomial written out over a GradedBasis."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis, coeffs):
        self.basis = basis
        self.coeffs = {i: c for i, c in coeffs.items() if not c.is_zero}

    @classmethod
    def from_poly(cls, p, basis):
        if p.shape != basis.shape:
            raise ShapeMismatch("polynomial over %s, basis over %s"
                                % (p.shape, basis.shape))
        coeffs = {}
        for e, c in p.terms.items():
            if sum(e) != basis.degree:
                raise BasisMismatch(
                    "degree-%d term in a degree-%d component" % (sum(e), basis.degree))
            coeffs[basis.index[e]] = RationalScalar.from_laurent(c)
        return cls(basis, coeffs)

    def to_poly(self):
        terms = {}
        for i, c in self.coeffs.items():
            terms[self.basis.monomials[i].exps] = c.to_laurent()
        return NCPoly(self.basis.shape, terms)

    @property
    def entries(self):
        return [self.coeffs.get(i, RAT_ZERO) for i in range(len(self.basis))]

    @property
    def is_zero(self):
        return not self.coeffs

    def _laurent_row(self):
        """Clear denominators: the row times the lcm of its denominators."""
        row = {}
        common = ONE
        for c in self.coeffs.values():
            if c.den != ONE:
                common = common * laurent_exact_div(
                    c.den, laurent_gcd([common, c.den]) or ONE)
        for i, c in self.coeffs.items():
            row[i] = c.num * laurent_exact_div(common, c.den)
        return row


def _check_same_basis(vectors):
    basis = None
    for v in vectors:
        if basis is None:
            basis = v.basis
        elif v.basis != basis:
            raise BasisMismatch("vectors over different graded bases")
    return basis


# ----------------------------------------------------------------------
# fraction-free echelon over Laurent rows (dict col -> LaurentScalar)


def _rational_content(values):
    num = 0
    den = 1
    for v in values:
        for c in v.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
    return Fraction(num, den) if num else Fraction(1)


def row_normalized(row):
    """Strip q-power, polynomial, and rational content; fix the sign.

    The pivot (lowest column) entry ends with a positive coefficient on its
    highest power of q.  Normalization keeps entries small and makes the
    stored echelon deterministic.
    """
    if not row:
        return row
    values = list(row.values())
    shift = min(v.min_exp for v in values)
    g = laurent_gcd(values)
    content = _rational_content(values)
    out = {}
    for k, v in row.items():
        v = laurent_exact_div(v, g) if g != ONE and not g.is_zero else v
        out[k] = v.shift(-shift) * (1 / content)
    pivot = out[min(out)]
    if pivot.leading_coeff < 0:
        out = {k: -v for k, v in out.items()}
    return out


def _combine(row, piv_row, col):
    """piv * row - row[col] * piv_row, content-stripped; kills `col`."""
    piv = piv_row[col]
    fac = row[col]
    out = {}
    for k, v in row.items():
        if k == col:
            continue
        out[k] = v * piv
    for k, v in piv_row.items():
        if k == col:
            continue
        acc = out.get(k)
        acc = -(v * fac) if acc is None else acc - v * fac
        if acc.is_zero:
            out.pop(k, None)
        else:
            out[k] = acc
    return row_normalized(out) if out else out


class Echelon:
    """Incremental fraction-free row echelon form."""

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def insert(self, row):
        """Reduce a Laurent row and store it if independent.

        Returns True when the rank grew.
        """
        row = row_normalized({k: v for k, v in row.items() if not v.is_zero})
        while row:
            col = min(row)
            stored = self.pivots.get(col)
            if stored is None:
                self.pivots[col] = row
                return True
            if len(row[col].terms) < len(stored[col].terms):
                self.pivots[col] = row
                row = stored
                continue
            row = _combine(row, stored, col)
        return False

    def residue(self, row):
        """Reduce without inserting.  Zero residue means membership.

        The reduction is fraction-free, so the residue is the true one up
        to a nonzero scalar; only its (non)vanishing is meaningful.
        """
        row = {k: v for k, v in row.items() if not v.is_zero}
        while row:
            col = min(row)
            stored = self.pivots.get(col)
            if stored is None:
                return row
            row = _combine(row, stored, col)
        return row

    def rows(self):
        """Stored rows, by pivot column."""
        return [self.pivots[c] for c in sorted(self.pivots)]


def _specialized_rank(rows, q0):
    """Rank of Laurent rows after evaluating q at q0, by Fraction elimination."""
    pivots = {}
    rank = 0
    for row in rows:
        r = {}
        for k, v in row.items():
            val = v.specialize(q0)
            if val:
                r[k] = val
        while r:
            col = min(r)
            stored = pivots.get(col)
            if stored is None:
                pivots[col] = r
                rank += 1
                break
            fac = r[col] / stored[col]
            nxt = {}
            for k, v in r.items():
                if k == col:
                    continue
                nxt[k] = v
            for k, v in stored.items():
                if k == col:
                    continue
                acc = nxt.get(k, Fraction(0)) - fac * v
                if acc:
                    nxt[k] = acc
                else:
                    nxt.pop(k, None)
            r = nxt
    return rank


def rank(vectors, mode=None, q_values=None):
    """Rank of a list of CoefficientVectors.

    exact mode runs fraction-free elimination over Q[q, q^-1].  specialize
    mode evaluates at each rational point and reports the maximum rank: a
    lower bound on the exact rank, usable as a fast pre-check (and it is
    conclusive whenever it reaches the number of vectors).  mode=None uses
    the ambient default set by mode_context.
    """
    if mode is None:
        mode, default_q = _DEFAULT_MODE
        q_values = q_values or default_q
    vectors = list(vectors)
    if not vectors:
        return 0
    _check_same_basis(vectors)
    rows = [v._laurent_row() for v in vectors]
    if mode == "specialize":
        from .scalars import DEFAULT_SPECIALIZE_POINTS
        pts = q_values or DEFAULT_SPECIALIZE_POINTS
        return max(_specialized_rank(rows, q0) for q0 in pts)
    if mode != "exact":
        raise ValueError("unknown rank mode %r" % mode)
    ech = Echelon()
    for row in rows:
        ech.insert(row)
    return ech.rank


# ----------------------------------------------------------------------
# solving for explicit coefficients (division allowed)


class LinearSolver:
    """Row echelon with exact division and provenance tracking.

    Stores rows over RationalScalar together with the combination of the
    original inserted vectors that produced them, so membership queries can
    return witness coefficients that recombine exactly.
    """

    __slots__ = ("pivots", "count")

    def __init__(self):
        self.pivots = {}
        self.count = 0

    def insert(self, row):
        combo = {self.count: RAT_ONE}
        self.count += 1
        row = dict(row)
        while row:
            col = min(row)
            stored = self.pivots.get(col)
            if stored is None:
                self.pivots[col] = (row, combo)
                return True
            row, combo = self._reduce_once(row, combo, stored, col)
        return False

    @staticmethod
    def _reduce_once(row, combo, stored, col):
        srow, scombo = stored
        fac = row[col] / srow[col]
        out = {k: v for k, v in row.items() if k != col}
        for k, v in srow.items():
            if k == col:
                continue
            acc = out.get(k)
            acc = -(fac * v) if acc is None else acc - fac * v
            if acc.is_zero:
                out.pop(k, None)
            else:
                out[k] = acc
        ncombo = dict(combo)
        for k, v in scombo.items():
            acc = ncombo.get(k)
            acc = -(fac * v) if acc is None else acc - fac * v
            if acc.is_zero:
                ncombo.pop(k, None)
            else:
                ncombo[k] = acc
        return out, ncombo

    def express(self, row):
        """Coefficients over the inserted vectors, or None if outside the span."""
        row = dict(row)
        combo = {}
        while row:
            col = min(row)
            stored = self.pivots.get(col)
            if stored is None:
                return None
            row, combo = self._reduce_once(row, combo, stored, col)
        return {k: -v for k, v in combo.items()}


def span_membership(v, spanning, mode=None, q_values=None):
    """Write v as an exact combination of the spanning vectors.

    Returns a list of RationalScalars aligned with `spanning`, or None when
    v lies outside the span.  A rank jump at an evaluation point only
    suggests nonmembership (a true member can have witness coefficients
    with a pole there), so specialize mode confirms a suggested nonmember
    with one fraction-free reduction before answering None; membership
    witnesses are always confirmed exactly.  mode=None uses the ambient
    default set by mode_context.
    """
    if mode is None:
        mode, default_q = _DEFAULT_MODE
        q_values = q_values or default_q
    spanning = list(spanning)
    basis = _check_same_basis(spanning + [v])
    if v.is_zero:
        return [RAT_ZERO] * len(spanning)
    if mode == "specialize":
        from .scalars import DEFAULT_SPECIALIZE_POINTS
        pts = q_values or DEFAULT_SPECIALIZE_POINTS
        rows = [s._laurent_row() for s in spanning]
        target = v._laurent_row()
        for q0 in pts:
            base = _specialized_rank(rows, q0)
            if _specialized_rank(rows + [target], q0) > base:
                ech = Echelon()
                for row in rows:
                    ech.insert(row)
                if ech.residue(target):
                    return None
                break
    elif mode != "exact":
        raise ValueError("unknown membership mode %r" % mode)
    solver = LinearSolver()
    for s in spanning:
        solver.insert(dict(s.coeffs))
    combo = solver.express(dict(v.coeffs))
    if combo is None:
        return None
    return [combo.get(i, RAT_ZERO) for i in range(len(spanning))]
