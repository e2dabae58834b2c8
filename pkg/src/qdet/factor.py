"""Factor rings cut out by the minors not above a fixed minor.

For a nonempty minor gamma, the two-sided ideal I_gamma is generated by
every minor alpha with std_le(gamma, alpha) false.  The quotient J_gamma
inherits the grading, and its graded components are computed here as
exact quotient spaces: the degree-d piece of the ideal is built once,
degree by degree, as

    I_d = x * I_{d-1} + I_{d-1} * x + (new generators of degree d)

and kept in a fraction-free echelon.  Everything downstream reduces to
residues against these spans: equality in the quotient, Hilbert
dimensions, the standard monomial basis, the normalizing scalar of a
minor above gamma, regularity of gamma, and the rewriting of an ambient
variable through gamma into base variables and family minors.
"""

import threading
from dataclasses import dataclass
from functools import lru_cache

from . import cache as _disk
from .errors import NoScalarFound, NotAboveGamma, ShapeMismatch
from .algebra import NCPoly, graded_dim
from .minors import (Minor, enumerate_minors, excluded_minors,
                     laplace_relation, laplace_row_relation, minor_value,
                     std_le)
from .linalg import (CoefficientVector, Echelon, LinearSolver,
                     component_basis, rank)
from .report import CheckReport
from .scalars import ONE, RationalScalar
from .tower import build_frame, stage_monomials, tower_stages


def _row_to_poly(row, basis):
    return NCPoly(basis.shape,
                  {basis.monomials[i].exps: c for i, c in row.items()})


def _poly_row(p, basis):
    return CoefficientVector.from_poly(p, basis)._laurent_row()


# ----------------------------------------------------------------------
# graded components of the ideal


class IdealComponent:
    """The degree-d piece of I_gamma as a fraction-free echelon."""

    __slots__ = ("gamma", "degree", "basis", "echelon")

    def __init__(self, gamma, degree, basis, echelon):
        self.gamma = gamma
        self.degree = degree
        self.basis = basis
        self.echelon = echelon

    @property
    def rank(self):
        return self.echelon.rank

    def contains(self, p):
        """Exact membership of a homogeneous polynomial of this degree."""
        if p.is_zero:
            return True
        return not self.echelon.residue(_poly_row(p, self.basis))

    def reduce(self, p):
        """A residue of p against the span; zero exactly on members.

        The reduction is fraction-free, so a nonzero residue is only
        determined up to a nonzero scalar.
        """
        row = self.echelon.residue(_poly_row(p, self.basis))
        return _row_to_poly(row, self.basis)

    def row_polys(self):
        return [_row_to_poly(row, self.basis) for row in self.echelon.rows()]

    def extended_rank(self, vectors):
        """Rank of this span together with extra CoefficientVectors."""
        ext = Echelon()
        ext.pivots = dict(self.echelon.pivots)
        for v in vectors:
            ext.insert(v._laurent_row())
        return ext.rank


_BUILD_LOCK = threading.Lock()
_ECHELONS = {}


def spans_clear():
    """Drop all cached ideal spans (mainly for tests)."""
    with _BUILD_LOCK:
        _ECHELONS.clear()


@lru_cache(maxsize=512)
def _excluded_by_degree(shape, rows, cols):
    by = {}
    for mn in excluded_minors(Minor(shape, rows, cols)):
        by.setdefault(mn.size, []).append(mn)
    return by


def ideal_component(gamma, degree, guard=None):
    """The degree-d component of I_gamma, cached per session and on disk."""
    key = (gamma.shape.m, gamma.shape.n, gamma.rows, gamma.cols, degree)
    with _BUILD_LOCK:
        ech = _ECHELONS.get(key)
    basis = component_basis(gamma.shape, degree, guard)
    if ech is None:
        ech = _build_echelon(gamma, degree, basis, guard, key)
        with _BUILD_LOCK:
            _ECHELONS[key] = ech
    return IdealComponent(gamma, degree, basis, ech)


def _build_echelon(gamma, degree, basis, guard, key):
    cached = _disk.load_rows(("ideal",) + key)
    if cached is not None:
        ech = Echelon()
        for row in cached:
            ech.insert(row)
        return ech
    shape = gamma.shape
    ech = Echelon()
    if degree > 0:
        prev = ideal_component(gamma, degree - 1, guard)
        gens = [NCPoly.generator(shape, a, b) for a in range(1, shape.m + 1)
                for b in range(1, shape.n + 1)]
        for p in prev.row_polys():
            for g in gens:
                ech.insert(_poly_row(g * p, basis))
                ech.insert(_poly_row(p * g, basis))
    for mn in _excluded_by_degree(shape, gamma.rows, gamma.cols).get(degree, ()):
        ech.insert(_poly_row(minor_value(mn), basis))
    _disk.store_rows(("ideal",) + key, ech.rows())
    return ech


# ----------------------------------------------------------------------
# the quotient J_gamma


def quotient_is_zero(gamma, p, guard=None):
    """Does p map to zero in J_gamma?  Works degree by degree."""
    if p.is_zero:
        return True
    if p.shape != gamma.shape:
        raise ShapeMismatch("polynomial over %s, minor over %s"
                            % (p.shape, gamma.shape))
    for d, comp in sorted(p.homogeneous_components().items()):
        if not ideal_component(gamma, d, guard).contains(comp):
            return False
    return True


def quotient_equal(gamma, a, b, guard=None):
    return quotient_is_zero(gamma, a - b, guard)


def hilbert_function(gamma, max_degree, guard=None):
    """Graded dimensions of J_gamma for degrees 0..max_degree."""
    return [graded_dim(gamma.shape, d) - ideal_component(gamma, d, guard).rank
            for d in range(max_degree + 1)]


# ----------------------------------------------------------------------
# standard monomials


@dataclass(frozen=True)
class StandardMonomial:
    """A product of minors forming a nondecreasing chain under std_le."""
    shape: object
    factors: tuple

    @property
    def degree(self):
        return sum(f.size for f in self.factors)

    def value(self):
        p = NCPoly.one(self.shape)
        for f in self.factors:
            p = p * minor_value(f)
        return p

    def __str__(self):
        if not self.factors:
            return "1"
        return "".join(str(f)[len("minor"):] for f in self.factors)


def standard_monomials(shape, degree, floor=None):
    """All chains alpha_1 <=st ... <=st alpha_k of total size `degree`.

    With a floor minor, only chains whose members sit above the floor are
    produced; these are exactly the monomials whose images form the
    candidate basis of J_floor.  Order is deterministic: factors are tried
    in enumerate_minors order at every position.
    """
    pool = [mn for mn in enumerate_minors(shape)
            if floor is None or std_le(floor, mn)]
    out = []
    chain = []

    def rec(prev, remaining):
        if remaining == 0:
            out.append(StandardMonomial(shape, tuple(chain)))
            return
        for mn in pool:
            if mn.size > remaining:
                continue
            if prev is not None and not std_le(prev, mn):
                continue
            chain.append(mn)
            rec(mn, remaining - mn.size)
            chain.pop()

    rec(None, degree)
    return out


def standard_monomial_count(shape, degree, floor=None):
    return len(standard_monomials(shape, degree, floor))


def basis_check(shape, degree, gamma=None, guard=None):
    """Standard monomials of one degree form a basis.

    Without gamma: their values are independent and count the full graded
    dimension.  With gamma: their residues are independent modulo the
    ideal component and fill the quotient dimension exactly.
    """
    if gamma is not None and gamma.shape != shape:
        raise ShapeMismatch("minor over %s in a %s check" % (gamma.shape, shape))
    params = {"shape": str(shape), "degree": degree}
    if gamma is not None:
        params["gamma"] = str(gamma)
    rep = CheckReport("standard_basis", params)
    floor = gamma
    stds = standard_monomials(shape, degree, floor)
    ambient = graded_dim(shape, degree)
    basis = component_basis(shape, degree, guard)
    vecs = [CoefficientVector.from_poly(s.value(), basis) for s in stds]
    if gamma is None:
        r = rank(vecs)
        rep.add("independent", r == len(stds),
                "rank %d of %d monomials" % (r, len(stds)))
        rep.add("spanning", len(stds) == ambient,
                "%d monomials, dimension %d" % (len(stds), ambient))
        return rep
    ic = ideal_component(gamma, degree, guard)
    total = ic.extended_rank(vecs)
    quotient_dim = ambient - ic.rank
    rep.add("independent mod ideal", total == ic.rank + len(stds),
            "rank grew %d of %d" % (total - ic.rank, len(stds)))
    rep.add("spanning mod ideal", total == ambient and len(stds) == quotient_dim,
            "count %d, quotient dimension %d" % (len(stds), quotient_dim))
    return rep


def hilbert_check(gamma, max_degree, guard=None):
    """Quotient dimensions equal standard monomial counts, degree by degree."""
    rep = CheckReport("hilbert", {"gamma": str(gamma), "max_degree": max_degree})
    dims = hilbert_function(gamma, max_degree, guard)
    for d in range(max_degree + 1):
        count = standard_monomial_count(gamma.shape, d, floor=gamma)
        rep.add("degree %d" % d, dims[d] == count,
                "dimension %d, standard monomials %d" % (dims[d], count))
    return rep


# ----------------------------------------------------------------------
# the normalizing scalar of a minor above gamma


def normality_scalar(gamma, tau, guard=None):
    """The unique nonzero c with gamma*tau - c*tau*gamma in I_gamma.

    Requires std_le(gamma, tau).  The scalar is solved for over the ideal
    span with exact division, then the claimed congruence is re-verified
    by an independent fraction-free reduction.
    """
    if gamma.shape != tau.shape:
        raise ShapeMismatch("minors over %s and %s" % (gamma.shape, tau.shape))
    if not std_le(gamma, tau):
        raise NotAboveGamma("%s is not above %s" % (tau, gamma))
    u = minor_value(gamma) * minor_value(tau)
    v = minor_value(tau) * minor_value(gamma)
    degree = gamma.size + tau.size
    ic = ideal_component(gamma, degree, guard)
    basis = ic.basis
    vvec = CoefficientVector.from_poly(v, basis)
    if ic.contains(v):
        raise NoScalarFound("tau*gamma vanishes in the quotient for %s" % tau)
    solver = LinearSolver()
    solver.insert(dict(vvec.coeffs))
    for row in ic.echelon.rows():
        solver.insert({k: RationalScalar.from_laurent(c)
                       for k, c in row.items()})
    combo = solver.express(dict(CoefficientVector.from_poly(u, basis).coeffs))
    if combo is None:
        raise NoScalarFound("gamma*tau is not congruent to a multiple of "
                            "tau*gamma for %s" % tau)
    c = combo.get(0)
    if c is None or c.is_zero:
        raise NoScalarFound("congruence holds only with a zero scalar for %s"
                            % tau)
    residual = u.scale(c.den) - v.scale(c.num)
    if not ic.contains(residual):
        raise NoScalarFound("solved scalar %s fails re-verification for %s"
                            % (c, tau))
    return c


def normality_check(gamma, guard=None):
    """normality_scalar exists for every minor above gamma."""
    rep = CheckReport("normality_scalars", {"gamma": str(gamma)})
    for tau in enumerate_minors(gamma.shape):
        if not std_le(gamma, tau):
            continue
        try:
            c = normality_scalar(gamma, tau, guard)
        except NoScalarFound as exc:
            rep.add("c for %s" % tau, False, str(exc))
            continue
        rep.add("c for %s" % tau, True, "c = %s" % c)
    return rep


# ----------------------------------------------------------------------
# rewriting an ambient variable through gamma


def generator_image_check(gamma, r, s, guard=None):
    """x[r,s] * gamma is, modulo the ideal, a combination of terms whose
    minor factors are gamma itself or members of its swap family.

    The exact expansion along the row r (when s is outside gamma's
    columns) or the column s (when r is outside gamma's rows) is split
    into the head term x[r,s]*gamma, surviving terms, and dead terms.
    Dead terms carry a minor that is not above gamma; each is verified to
    lie in the ideal span.  Surviving minors are verified to be gamma or
    family members, and the head plus surviving terms are verified to sum
    to zero in the quotient.
    """
    shape = gamma.shape
    shape.check(r, s)
    rep = CheckReport("generator_image",
                      {"gamma": str(gamma), "r": r, "s": s})
    in_rows = r in gamma.rows
    in_cols = s in gamma.cols
    if in_rows and in_cols:
        rep.add("base variable", True, "x[%d,%d] generates the base" % (r, s))
        return rep

    frame = build_frame(gamma)
    allowed = {mb.minor for mb in frame.family()}
    allowed.add(gamma)
    if not in_cols:
        cols = tuple(sorted(gamma.cols + (s,)))
        identity = laplace_relation(shape, gamma.rows, cols, r)
    else:
        rows = tuple(sorted(gamma.rows + (r,)))
        identity = laplace_row_relation(shape, rows, gamma.cols, s)
    rep.add("expansion holds", identity.holds, str(identity))

    degree = gamma.size + 1
    ic = ideal_component(gamma, degree, guard)
    surviving_sum = NCPoly.zero(shape)
    head_seen = False
    for coeff, factors in identity.terms:
        value = NCPoly.scalar(shape, coeff)
        for f in factors:
            value = value * minor_value(f)
        tail = factors[-1]
        if tail == gamma:
            head_seen = True
            rep.add("head term", len(factors) == 2
                    and factors[0] == Minor(shape, (r,), (s,)),
                    "x[%d,%d]*gamma" % (r, s))
            surviving_sum = surviving_sum + value
        elif std_le(gamma, tail):
            rep.add("surviving %s" % tail, tail in allowed,
                    "family member" if tail in allowed else "outside the family")
            surviving_sum = surviving_sum + value
        else:
            rep.add("dead %s" % tail, ic.contains(value),
                    "term lies in the ideal")
    rep.add("head present", head_seen, "")
    rep.add("congruence", ic.contains(surviving_sum),
            "head + surviving terms vanish in the quotient")
    return rep


def generator_image_suite(gamma, guard=None):
    """generator_image_check over every ambient variable."""
    rep = CheckReport("generator_images", {"gamma": str(gamma)})
    shape = gamma.shape
    for r in range(1, shape.m + 1):
        for s in range(1, shape.n + 1):
            sub = generator_image_check(gamma, r, s, guard)
            rep.add("x[%d,%d]" % (r, s), sub.passed,
                    "" if sub.passed else "; ".join(sub.failures()))
    return rep


# ----------------------------------------------------------------------
# regularity and zero divisors


def regularity_check(gamma, max_degree, guard=None):
    """Left multiplication by gamma is injective on J_gamma.

    For each degree dp with gamma.size + dp <= max_degree, the span of
    gamma times the ambient monomials of degree dp adds exactly
    dim J_gamma(dp) new rows on top of the ideal component.
    """
    rep = CheckReport("regularity", {"gamma": str(gamma),
                                     "max_degree": max_degree})
    shape = gamma.shape
    t = gamma.size
    gval = minor_value(gamma)
    for dp in range(0, max_degree - t + 1):
        total_deg = t + dp
        ic = ideal_component(gamma, total_deg, guard)
        j_dim = graded_dim(shape, dp) - ideal_component(gamma, dp, guard).rank
        src = component_basis(shape, dp, guard)
        vecs = [CoefficientVector.from_poly(gval * NCPoly(shape, {mono.exps: ONE}),
                                            ic.basis)
                for mono in src.monomials]
        grew = ic.extended_rank(vecs) - ic.rank
        rep.add("degree %d" % dp, grew == j_dim,
                "image rank %d, quotient dimension %d" % (grew, j_dim))
    return rep


def zero_divisor_check(gamma, max_degree, guard=None):
    """Products of standard monomials stay nonzero in the quotient.

    Runs over all pairs of positive-degree standard monomials above gamma
    whose degrees sum to at most max_degree.
    """
    rep = CheckReport("zero_divisors", {"gamma": str(gamma),
                                        "max_degree": max_degree})
    shape = gamma.shape
    by_degree = {d: standard_monomials(shape, d, floor=gamma)
                 for d in range(1, max_degree)}
    values = {d: [s.value() for s in stds] for d, stds in by_degree.items()}
    for da in range(1, max_degree):
        for db in range(1, max_degree - da + 1):
            ic = ideal_component(gamma, da + db, guard)
            for a, aval in zip(by_degree[da], values[da]):
                for b, bval in zip(by_degree[db], values[db]):
                    vanishes = ic.contains(aval * bval)
                    rep.add("%s * %s" % (a, b), not vanishes,
                            "product vanishes in the quotient"
                            if vanishes else "")
    return rep


def tower_image_check(gamma, max_degree, guard=None):
    """The tower subalgebra embeds into J_gamma with its full dimensions.

    For each degree, the ordered products of the final tower stage add as
    many new rows over the ideal component as their span has on its own.
    """
    rep = CheckReport("tower_image", {"gamma": str(gamma),
                                      "max_degree": max_degree})
    frame = build_frame(gamma)
    last = tower_stages(frame)[-1]
    for d in range(max_degree + 1):
        ic = ideal_component(gamma, d, guard)
        vecs = [CoefficientVector.from_poly(p, ic.basis)
                for _, p in stage_monomials(last, d)]
        own = rank(vecs)
        grew = ic.extended_rank(vecs) - ic.rank
        rep.add("degree %d" % d, grew == own,
                "tower dimension %d, image dimension %d" % (own, grew))
    return rep
