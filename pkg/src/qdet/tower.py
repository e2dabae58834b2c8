"""The generator tower attached to a quantum minor.

Fix a nonempty minor gamma = [A|B] of size t inside an m x n shape.  The
base subalgebra is generated by the t*t variables x[a,b] with a in A and
b in B.  On top of it sit two families of size-t minors, each differing
from gamma in a single index:

* column swaps ("col_swap", i, j): rows A, columns B with b_j replaced by
  the i-th largest column outside B; defined when that column exceeds b_j.
* row swaps ("row_swap", i, j): columns B, rows A with a_j replaced by the
  i-th largest row outside A; defined when that row exceeds a_j.

Members are ordered with all column swaps before all row swaps and
lexicographically by (i, j) inside each kind.  Adjoining them one at a
time yields a chain of subalgebras; each step is certified as a skew
polynomial extension in ore_step_check: the new generator normalizes the
previous stage through the inverse of an explicit torus element, and the
twisted derivation lands inside the previous stage.
"""

from dataclasses import dataclass
from typing import Optional

from .errors import (StageOutOfRange, UndefinedMember, WorkbenchError,
                     ZeroInput, DegreeTooLarge)
from .algebra import NCPoly, TorusElement, eigenvalue_of, q_commute_scalar
from .minors import Minor, minor_value
from .linalg import CoefficientVector, component_basis, rank, span_membership
from .report import CheckReport
from .scalars import LaurentScalar, ONE, Q, Q_INV, QHAT, laurent_exact_div

#: refuse frames above this many ambient generators unless forced
SHAPE_GUARD = 25


@dataclass(frozen=True)
class FamilyMember:
    kind: str          # "col_swap" or "row_swap"
    i: int
    j: int
    minor: Minor
    position: int      # rank in the combined family order

    @property
    def label(self):
        return "%s[%d,%d]" % (self.kind, self.i, self.j)

    def __str__(self):
        return "%s=%s" % (self.label, self.minor)


class Frame:
    """A minor together with the index bookkeeping its tower needs."""

    __slots__ = ("shape", "minor", "rows", "cols", "row_complement",
                 "col_complement", "_members")

    def __init__(self, minor):
        self.shape = minor.shape
        self.minor = minor
        self.rows = minor.rows
        self.cols = minor.cols
        self.row_complement = tuple(r for r in range(1, self.shape.m + 1)
                                    if r not in minor.rows)
        self.col_complement = tuple(c for c in range(1, self.shape.n + 1)
                                    if c not in minor.cols)
        self._members = None

    @property
    def size(self):
        return self.minor.size

    def added_col(self, i):
        """The column a col_swap with first index i brings in."""
        count = len(self.col_complement)
        return self.col_complement[count - i]

    def added_row(self, i):
        count = len(self.row_complement)
        return self.row_complement[count - i]

    def family(self):
        """All defined members, column swaps first, lex inside each kind."""
        if self._members is not None:
            return self._members
        members = []
        t = self.size
        for i in range(1, len(self.col_complement) + 1):
            added = self.added_col(i)
            for j in range(1, t + 1):
                if self.cols[j - 1] < added:
                    cols = tuple(sorted(set(self.cols) - {self.cols[j - 1]} | {added}))
                    members.append(("col_swap", i, j,
                                    Minor(self.shape, self.rows, cols)))
        for i in range(1, len(self.row_complement) + 1):
            added = self.added_row(i)
            for j in range(1, t + 1):
                if self.rows[j - 1] < added:
                    rows = tuple(sorted(set(self.rows) - {self.rows[j - 1]} | {added}))
                    members.append(("row_swap", i, j,
                                    Minor(self.shape, rows, self.cols)))
        self._members = tuple(FamilyMember(kind, i, j, mn, pos)
                              for pos, (kind, i, j, mn) in enumerate(members))
        return self._members

    def member(self, kind, i, j):
        for mb in self.family():
            if (mb.kind, mb.i, mb.j) == (kind, i, j):
                return mb
        raise UndefinedMember("%s[%d,%d] is not defined for %s"
                              % (kind, i, j, self.minor))

    def base_generators(self):
        """The t*t grid variables spanning the base subalgebra."""
        out = []
        for a in self.rows:
            for b in self.cols:
                out.append(GenRef("x[%d,%d]" % (a, b), 1,
                                  NCPoly.generator(self.shape, a, b),
                                  Minor(self.shape, (a,), (b,))))
        return out

    def __str__(self):
        return "frame(%s in %s)" % (self.minor, self.shape)


@dataclass
class GenRef:
    """A tower generator: display label, degree, expanded value."""
    label: str
    degree: int
    value: NCPoly
    minor: Minor


def build_frame(gamma, force=False):
    """Frame for a nonempty minor; large ambient shapes need force=True."""
    if gamma.is_empty:
        raise ZeroInput("a frame needs a nonempty minor")
    if gamma.shape.ngens > SHAPE_GUARD and not force:
        raise DegreeTooLarge(
            "shape %s exceeds the %d-generator guard; pass force=True"
            % (gamma.shape, SHAPE_GUARD))
    return Frame(gamma)


def enumerate_family(frame):
    return list(frame.family())


def member_ref(frame, member):
    return GenRef(member.label, frame.size, minor_value(member.minor),
                  member.minor)


def generator_count(frame):
    """Number of tower generators, by the closed formula.

    Equals (m + n + 1) * t - sum(rows) - sum(cols), and is cross-checked
    against t^2 + (number of family members) before being returned.
    """
    m, n = frame.shape.m, frame.shape.n
    t = frame.size
    value = (m + n + 1) * t - sum(frame.rows) - sum(frame.cols)
    direct = t * t + len(frame.family())
    if value != direct:  # pragma: no cover - formula identity
        raise WorkbenchError("generator count formula mismatch for %s"
                             % frame.minor)
    return value


# ----------------------------------------------------------------------
# torus elements


def member_torus(frame, member):
    """The torus element whose inverse twists the member's Ore step."""
    shape = frame.shape
    A = set(frame.rows)
    B = set(frame.cols)
    one = ONE
    qq = Q
    qi = Q_INV
    qi2 = LaurentScalar({-2: 1})
    if member.kind == "col_swap":
        added = frame.added_col(member.i)
        removed = frame.cols[member.j - 1]
        alphas = tuple(one if s in A else qi for s in range(1, shape.m + 1))
        betas = []
        for s in range(1, shape.n + 1):
            if s == added:
                betas.append(qi2)
            elif s == removed:
                betas.append(qq)
            elif s in B:
                betas.append(one)
            else:
                betas.append(qi)
        return TorusElement(shape, alphas, tuple(betas))
    if member.kind == "row_swap":
        added = frame.added_row(member.i)
        removed = frame.rows[member.j - 1]
        alphas = []
        for s in range(1, shape.m + 1):
            if s == added:
                alphas.append(qi2)
            elif s == removed:
                alphas.append(qq)
            elif s in A:
                alphas.append(one)
            else:
                alphas.append(qi)
        betas = tuple(one if s in B else qi for s in range(1, shape.n + 1))
        return TorusElement(shape, tuple(alphas), betas)
    raise UndefinedMember("unknown member kind %r" % member.kind)


def check_h_actions(frame):
    """Verify the torus elements act as advertised.

    Five clauses: (1) a col_swap's element scales base variables in its
    removed column by q and fixes the rest; (2) dually for row_swaps and
    rows; (3) a col_swap's element scales an earlier col_swap by q^-1 when
    they share a row or column index, and fixes it otherwise; (4) dually
    for row_swaps; (5) row_swap elements fix every col_swap minor.
    """
    rep = CheckReport("h_actions", {"gamma": str(frame.minor)})
    members = frame.family()
    cswaps = [mb for mb in members if mb.kind == "col_swap"]
    rswaps = [mb for mb in members if mb.kind == "row_swap"]
    values = {mb: minor_value(mb.minor) for mb in members}

    def expect(h, p, scalar, label):
        got = h.act(p)
        want = p.scale(scalar)
        rep.add(label, got == want,
                "" if got == want else "expected scalar %s" % scalar)

    for mb in members:
        h = member_torus(frame, mb)
        removed_col = frame.cols[mb.j - 1] if mb.kind == "col_swap" else None
        removed_row = frame.rows[mb.j - 1] if mb.kind == "row_swap" else None
        for a in frame.rows:
            for b in frame.cols:
                x = NCPoly.generator(frame.shape, a, b)
                if mb.kind == "col_swap":
                    scalar = Q if b == removed_col else ONE
                    clause = "1"
                else:
                    scalar = Q if a == removed_row else ONE
                    clause = "2"
                expect(h, x, scalar,
                       "clause%s:%s on x[%d,%d]" % (clause, mb.label, a, b))
        if mb.kind == "col_swap":
            for other in cswaps:
                if other.position >= mb.position:
                    continue
                same = other.i == mb.i or other.j == mb.j
                scalar = Q_INV if same else ONE
                expect(h, values[other], scalar,
                       "clause3:%s on %s" % (mb.label, other.label))
        else:
            for other in rswaps:
                if other.position >= mb.position:
                    continue
                same = other.i == mb.i or other.j == mb.j
                scalar = Q_INV if same else ONE
                expect(h, values[other], scalar,
                       "clause4:%s on %s" % (mb.label, other.label))
            for other in cswaps:
                expect(h, values[other], ONE,
                       "clause5:%s on %s" % (mb.label, other.label))
    return rep


# ----------------------------------------------------------------------
# relations inside and between the two families


def _qmatrix_relation_check(rep, entries, label):
    """entries: dict (i, j) -> NCPoly forming quantum matrix variables at q^-1."""
    keys = sorted(entries)
    for (i, j) in keys:
        for (k, l) in keys:
            if (i, j) >= (k, l):
                continue
            a, b = entries[(i, j)], entries[(k, l)]
            if i == k or j == l:
                ok = a * b == (b * a).scale(Q_INV)
                rep.add("%s:same-line %s,%s" % (label, (i, j), (k, l)), ok)
            elif j > l:
                rep.add("%s:antidiagonal %s,%s" % (label, (i, j), (k, l)),
                        a * b == b * a)
            else:
                lhs = a * b - b * a
                if (i, l) in entries and (k, j) in entries:
                    rhs = (entries[(i, l)] * entries[(k, j)]).scale(-QHAT)
                    rep.add("%s:diagonal %s,%s" % (label, (i, j), (k, l)),
                            lhs == rhs)
                else:
                    rep.add("%s:closure %s,%s" % (label, (i, j), (k, l)), False,
                            "diagonal pair defined but inner pair missing")


def family_relations_check(frame):
    """Each family is a quantum matrix at parameter q^-1; kinds commute."""
    rep = CheckReport("family_relations", {"gamma": str(frame.minor)})
    members = frame.family()
    cmap = {(mb.i, mb.j): minor_value(mb.minor)
            for mb in members if mb.kind == "col_swap"}
    rmap = {(mb.i, mb.j): minor_value(mb.minor)
            for mb in members if mb.kind == "row_swap"}
    _qmatrix_relation_check(rep, cmap, "col_swap")
    _qmatrix_relation_check(rep, rmap, "row_swap")
    for (ci, cj) in sorted(cmap):
        for (ri, rj) in sorted(rmap):
            rep.add("cross col_swap[%d,%d] row_swap[%d,%d]" % (ci, cj, ri, rj),
                    cmap[(ci, cj)] * rmap[(ri, rj)]
                    == rmap[(ri, rj)] * cmap[(ci, cj)])
    return rep


def _coeff_is_qhat_times_minus_q_power(lam):
    """Check lam == (q - q^-1) * (-q)^e for some integer e >= 1; return e."""
    if lam.is_zero:
        return None
    if lam.den != ONE:
        return None
    try:
        ratio = laurent_exact_div(lam.num, QHAT)
    except ValueError:
        return None
    if not ratio.is_single_term:
        return None
    e, c = ratio.single_term()
    if e >= 1 and c == (1 if e % 2 == 0 else -1):
        return e
    return None


def subalgebra_commutation_check(frame):
    """Base variables against family members.

    A base variable x[a,b] commutes with a member unless b (for column
    swaps) or a (for row swaps) is the member's removed index.  In the
    removed case,

        x * mem - q * mem * x

    is an exact combination of earlier same-row members times base
    variables, every coefficient of the shape (q - q^-1) * (-q)^e with an
    integer e >= 1.  The coefficients are solved for, not assumed.
    """
    rep = CheckReport("subalgebra_commutation", {"gamma": str(frame.minor)})
    shape = frame.shape
    t = frame.size
    members = frame.family()
    values = {(mb.kind, mb.i, mb.j): minor_value(mb.minor) for mb in members}

    for mb in members:
        val = values[(mb.kind, mb.i, mb.j)]
        for k in range(1, t + 1):
            for l in range(1, t + 1):
                a, b = frame.rows[k - 1], frame.cols[l - 1]
                x = NCPoly.generator(shape, a, b)
                swapped_index = l if mb.kind == "col_swap" else k
                if swapped_index != mb.j:
                    rep.add("commute x[%d,%d] %s" % (a, b, mb.label),
                            x * val == val * x)
                    continue
                lhs = x * val - (val * x).scale(Q)
                lower = []
                for s in range(1, mb.j):
                    key = (mb.kind, mb.i, s)
                    if key not in values:
                        continue
                    if mb.kind == "col_swap":
                        gen = NCPoly.generator(shape, a, frame.cols[s - 1])
                    else:
                        gen = NCPoly.generator(shape, frame.rows[s - 1], b)
                    lower.append((key, values[key] * gen))
                name = "straighten x[%d,%d] %s" % (a, b, mb.label)
                if lhs.is_zero:
                    rep.add(name, True, "lhs vanishes")
                    continue
                deg = lhs.degree()
                basis = component_basis(shape, deg)
                target = CoefficientVector.from_poly(lhs, basis)
                span = [CoefficientVector.from_poly(p, basis) for _, p in lower]
                combo = span_membership(target, span)
                if combo is None:
                    rep.add(name, False, "not in the span of lower members")
                    continue
                ok = True
                parts = []
                for (key, _), lam in zip(lower, combo):
                    if lam.is_zero:
                        continue
                    e = _coeff_is_qhat_times_minus_q_power(lam)
                    parts.append("%s[%d,%d]: %s" % (key[0], key[1], key[2], lam))
                    if e is None:
                        ok = False
                rep.add(name, ok, "; ".join(parts))
    return rep


# ----------------------------------------------------------------------
# tower stages and Ore-type certificates


@dataclass
class TowerStage:
    """Generators of the tower after adjoining the first `index + 1` members."""
    frame: Frame
    index: int            # -1 for the base stage
    generators: list      # GenRef, base variables first, members in order
    newest: Optional[GenRef]


def tower_stages(frame):
    """The base stage followed by one stage per family member."""
    gens = frame.base_generators()
    stages = [TowerStage(frame, -1, list(gens), None)]
    for mb in frame.family():
        ref = member_ref(frame, mb)
        gens = gens + [ref]
        stages.append(TowerStage(frame, mb.position, list(gens), ref))
    return stages


def stage_series_dims(weights, dmax):
    """Coefficients of prod 1/(1 - z^w) up to degree dmax."""
    dims = [0] * (dmax + 1)
    dims[0] = 1
    for w in weights:
        for d in range(w, dmax + 1):
            dims[d] += dims[d - w]
    return dims


def _weighted_exponents(weights, total):
    """All exponent tuples with sum(e_i * w_i) == total, lex order."""
    out = []

    def rec(idx, remaining, prefix):
        if idx == len(weights) - 1:
            if remaining % weights[idx] == 0:
                out.append(prefix + (remaining // weights[idx],))
            return
        w = weights[idx]
        for e in range(remaining // w, -1, -1):
            rec(idx + 1, remaining - e * w, prefix + (e,))

    if weights:
        rec(0, total, ())
    elif total == 0:
        out.append(())
    return out


def stage_monomials(stage, d):
    """Ordered products of stage generators of total degree d."""
    weights = [g.degree for g in stage.generators]
    out = []
    for exps in _weighted_exponents(weights, d):
        prod = NCPoly.one(stage.frame.shape)
        for g, e in zip(stage.generators, exps):
            if e:
                prod = prod * g.value ** e
        out.append((exps, prod))
    return out


@dataclass
class OreStepReport:
    stage: TowerStage
    report: CheckReport
    eigenvalues: list      # (label, h-eigenvalue as LaurentScalar)
    dims: list             # (degree, predicted, actual)

    @property
    def passed(self):
        return self.report.passed


def ore_step_check(frame, stage_index, max_degree=None):
    """Certify one tower extension as a skew polynomial step.

    For the member at stage_index: (a) every earlier generator is an exact
    eigenvector of the member's torus element h, so conjugation data is
    the diagonal automorphism sigma = h^-1; (b) for each earlier generator
    a, the twisted derivation delta(a) = x*a - sigma(a)*x lies in the
    previous stage, witnessed by explicit coefficients over its ordered
    products (and vanishes exactly when a is a col_swap and x a row_swap);
    (c) graded dimensions of the new stage match the generating series
    prod 1/(1 - z^deg) up to max_degree, certifying the ordered products
    stay independent.
    """
    members = frame.family()
    if not (0 <= stage_index < len(members)):
        raise StageOutOfRange("stage %d outside 0..%d"
                              % (stage_index, len(members) - 1))
    member = members[stage_index]
    stages = tower_stages(frame)
    prior = stages[stage_index]       # stage with index - 1 == stage_index - 1
    stage = stages[stage_index + 1]
    x_ref = stage.newest
    if max_degree is None:
        max_degree = x_ref.degree + 2
    if max_degree < x_ref.degree:
        raise StageOutOfRange("max_degree below the new generator's degree")

    rep = CheckReport("ore_step",
                      {"gamma": str(frame.minor), "member": member.label,
                       "max_degree": max_degree})
    h = member_torus(frame, member)
    eigen = []
    for g in prior.generators:
        lam = eigenvalue_of(h, g.value)
        rep.add("eigenvector %s" % g.label, lam is not None,
                "" if lam is not None else "not an h-eigenvector")
        eigen.append((g.label, lam))

    # delta(a) = x*a - sigma(a)*x with sigma = h^-1
    prior_products = {}
    for g, (_, lam) in zip(prior.generators, eigen):
        if lam is None:
            continue
        sigma_a = g.value.scale(lam.unit_inverse())
        delta = x_ref.value * g.value - sigma_a * x_ref.value
        name = "delta(%s)" % g.label
        if member.kind == "row_swap" and g.label.startswith("col_swap"):
            rep.add(name + " vanishes", delta.is_zero,
                    "" if delta.is_zero else "row_swap does not fix col_swap")
            continue
        if delta.is_zero:
            rep.add(name, True, "zero")
            continue
        d = g.degree + x_ref.degree
        if d not in prior_products:
            prior_products[d] = stage_monomials(prior, d)
        basis = component_basis(frame.shape, d)
        target = CoefficientVector.from_poly(delta, basis)
        span = [CoefficientVector.from_poly(p, basis)
                for _, p in prior_products[d]]
        combo = span_membership(target, span)
        if combo is None:
            rep.add(name, False, "outside the previous stage")
            continue
        # recombine to double-check the witness
        back = NCPoly.zero(frame.shape)
        for (exps, p), lam2 in zip(prior_products[d], combo):
            if not lam2.is_zero:
                back = back + p.scale(lam2.to_laurent())
        rep.add(name, back == delta,
                "witness over %d ordered products" % len(span))

    weights = [g.degree for g in stage.generators]
    predicted = stage_series_dims(weights, max_degree)
    dims = []
    for d in range(max_degree + 1):
        monos = stage_monomials(stage, d)
        basis = component_basis(frame.shape, d)
        vecs = [CoefficientVector.from_poly(p, basis) for _, p in monos]
        actual = rank(vecs)
        dims.append((d, predicted[d], actual))
        rep.add("dim degree %d" % d,
                actual == predicted[d] == len(monos),
                "predicted %d, rank %d, products %d"
                % (predicted[d], actual, len(monos)))
    return OreStepReport(stage, rep, eigen, dims)


def gamma_normality_check(frame):
    """gamma q-commutes with every tower generator.

    Base variables commute on the nose; each family member mem satisfies
    gamma * mem = q * mem * gamma.
    """
    rep = CheckReport("gamma_normality", {"gamma": str(frame.minor)})
    gval = minor_value(frame.minor)
    for g in frame.base_generators():
        c = q_commute_scalar(gval, g.value)
        ok = c is not None and c.num == ONE and c.den == ONE
        rep.add("gamma vs %s" % g.label, ok, "scalar %s" % c)
    for mb in frame.family():
        c = q_commute_scalar(gval, minor_value(mb.minor))
        ok = c is not None and c.den == ONE and c.num == Q
        rep.add("gamma vs %s" % mb.label, ok, "scalar %s" % c)
    return rep
