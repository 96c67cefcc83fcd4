"""Commutative quadratic graded algebras A = k[x_1..x_n]/(quadrics), degree by degree.

A degree-d component is handled through the free commutative monomials of that
degree: the defining quadrics span a subspace of each degree, a monomial
k-basis for the quotient is chosen greedily (user-preferred monomials first,
then lexicographic order), and every monomial gets an exact normal-form
coordinate vector over the chosen basis.  No Groebner machinery: everything is
linear algebra over the exact field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DegreeOverflow
from .linalg import Subspace

__all__ = [
    "RingPresentation",
    "GradedAlgebra",
    "AlgebraElement",
    "monomials_of_degree",
]


@lru_cache(maxsize=None)
def monomials_of_degree(n, d):
    """All exponent tuples of total degree d in n variables, descending lex.

    Descending lex means x1^d comes first; for squarefree monomials this
    matches the ascending lexicographic order on index subsets.
    """
    if d < 0:
        return ()
    if n == 1:
        return ((d,),)
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - e):
            out.append((e,) + rest)
    return tuple(out)


@dataclass(frozen=True)
class RingPresentation:
    """The input data of A: variables, field, quadratic relations.

    relations: each a tuple of (coefficient, (i, j)) terms with i <= j, read as
    sum of coeff * x_i x_j.  preferred: monomials (exponent tuples) the basis
    selection must attempt to include first, in the given order.
    """

    var_names: tuple
    field: object
    relations: tuple = ()
    preferred: tuple = ()

    def __post_init__(self):
        n = len(self.var_names)
        if n < 1:
            raise ValueError("need at least one variable")
        if len(set(self.var_names)) != n:
            raise ValueError("variable names must be distinct")
        for rel in self.relations:
            for coeff, (i, j) in rel:
                if not (0 <= i <= j < n):
                    raise ValueError(f"bad relation term index pair {(i, j)}")

    @property
    def nvars(self):
        return len(self.var_names)


def _reduce_by_pivots(fld, v, pivot_rows):
    for c in sorted(pivot_rows):
        f = v[c]
        if f:
            row = pivot_rows[c]
            v = [fld.sub(a, fld.mul(f, b)) for a, b in zip(v, row)]
    return v


@dataclass(frozen=True)
class AlgebraElement:
    """A homogeneous element: degree plus coordinates over the chosen basis."""

    degree: int
    coords: tuple

    @property
    def is_zero(self):
        return not any(self.coords)


class _DegreeData:
    __slots__ = ("monomials", "index", "relation_space", "basis", "basis_index", "nf")

    def __init__(self, monomials, index, relation_space, basis, basis_index, nf):
        self.monomials = monomials
        self.index = index
        self.relation_space = relation_space
        self.basis = basis
        self.basis_index = basis_index
        self.nf = nf  # monomial position -> coords tuple over basis


class GradedAlgebra:
    """A with per-degree bases and normal forms, built up to a fixed cutoff.

    Construction is lazy per degree but single-threaded; once a degree is
    built it is never mutated, so concurrent reads are safe.
    """

    def __init__(self, presentation, cutoff):
        if cutoff < 2:
            raise ValueError("cutoff must be at least 2")
        self.presentation = presentation
        self.field = presentation.field
        self.n = presentation.nvars
        self.cutoff = cutoff
        self.warnings = []
        self._degrees = {}

    # -- degree construction ----------------------------------------------

    def _degree(self, d):
        if d < 0 or d > self.cutoff:
            raise DegreeOverflow(f"degree {d} outside built range 0..{self.cutoff}")
        data = self._degrees.get(d)
        if data is None:
            data = self._build_degree(d)
            self._degrees[d] = data
        return data

    def _build_degree(self, d):
        fld = self.field
        mons = monomials_of_degree(self.n, d)
        index = {m: i for i, m in enumerate(mons)}
        nmons = len(mons)
        rows = []
        if d >= 2 and self.presentation.relations:
            for mu in monomials_of_degree(self.n, d - 2):
                for rel in self.presentation.relations:
                    row = [fld.zero] * nmons
                    for coeff, (i, j) in rel:
                        target = list(mu)
                        target[i] += 1
                        target[j] += 1
                        row[index[tuple(target)]] = fld.add(row[index[tuple(target)]], fld.of(coeff))
                    rows.append(row)
        relation_space = Subspace.from_rows(fld, rows, nmons)

        basis = self._select_basis(d, mons, index, relation_space)
        basis_index = {m: i for i, m in enumerate(basis)}
        nf = self._normal_forms(mons, index, relation_space, basis, basis_index)
        return _DegreeData(mons, index, relation_space, basis, basis_index, nf)

    def _select_basis(self, d, mons, index, relation_space):
        fld = self.field
        preferred = [m for m in self.presentation.preferred if sum(m) == d]
        candidates = preferred + [m for m in mons if m not in set(preferred)]
        # incremental echelon seeded with the relation rows: a candidate joins
        # the basis iff its class is independent of the classes chosen so far
        pivot_rows = {c: row for row, c in zip(relation_space.rows, relation_space.pivots)}
        chosen = []
        for mon in candidates:
            v = [fld.zero] * len(mons)
            v[index[mon]] = fld.one
            v = _reduce_by_pivots(fld, v, pivot_rows)
            if any(v):
                lead = next(c for c, x in enumerate(v) if x)
                inv = fld.inv(v[lead])
                pivot_rows[lead] = [fld.mul(inv, x) for x in v]
                chosen.append(mon)
            elif mon in set(preferred):
                self.warnings.append(
                    f"InconsistentPreferred: monomial {self.format_monomial(mon)} "
                    f"is dependent in degree {d}; skipped"
                )
        assert len(chosen) == len(mons) - relation_space.dim
        return chosen

    def _normal_forms(self, mons, index, relation_space, basis, basis_index):
        fld = self.field
        nmons = len(mons)
        basis_cols = set(index[m] for m in basis)
        # eliminate preferring non-basis columns so pivots avoid the basis;
        # possible exactly because basis classes are independent mod relations
        order = [c for c in range(nmons) if c not in basis_cols] + \
                [c for c in range(nmons) if c in basis_cols]
        pos = {c: k for k, c in enumerate(order)}
        permuted = [[row[c] for c in order] for row in relation_space.rows]
        rref, pivots = fld.rref(permuted, nmons)
        pivot_of = {}
        for r, pc in enumerate(pivots):
            orig = order[pc]
            assert orig not in basis_cols, "relation pivot landed on a basis monomial"
            pivot_of[orig] = r
        basis_positions = [pos[index[b]] for b in basis]
        nf = []
        for m in mons:
            c = index[m]
            if c in basis_cols:
                coords = [fld.zero] * len(basis)
                coords[basis_index[m]] = fld.one
                nf.append(tuple(coords))
            else:
                # every non-basis column is a pivot: counts match and no
                # combination of basis monomials lies in the relation span
                row = rref[pivot_of[c]]
                nf.append(tuple(fld.neg(row[bp]) for bp in basis_positions))
        return nf

    # -- queries -----------------------------------------------------------

    def dim(self, d):
        if d < 0:
            return 0
        return len(self._degree(d).basis)

    def basis(self, d):
        return self._degree(d).basis

    def monomial_index(self, d):
        return self._degree(d).index

    def relation_space(self, d):
        return self._degree(d).relation_space

    def hilbert(self, dmax):
        return [self.dim(d) for d in range(dmax + 1)]

    def zero(self, d):
        return AlgebraElement(d, tuple([self.field.zero] * self.dim(d)))

    def one(self):
        return AlgebraElement(0, (self.field.one,))

    def element(self, d, coords):
        coords = tuple(coords)
        assert len(coords) == self.dim(d)
        return AlgebraElement(d, coords)

    def monomial_element(self, exp):
        """Class of a free monomial, as coordinates over the chosen basis."""
        d = sum(exp)
        data = self._degree(d)
        return AlgebraElement(d, data.nf[data.index[tuple(exp)]])

    def var(self, i):
        exp = [0] * self.n
        exp[i] = 1
        return self.monomial_element(tuple(exp))

    def normal_form(self, terms, degree):
        """Class of a homogeneous free polynomial given as (coeff, exp) terms."""
        fld = self.field
        data = self._degree(degree)
        coords = [fld.zero] * len(data.basis)
        for coeff, exp in terms:
            if sum(exp) != degree:
                raise ValueError("normal_form needs a homogeneous input")
            nf = data.nf[data.index[tuple(exp)]]
            for k, x in enumerate(nf):
                if x:
                    coords[k] = fld.add(coords[k], fld.mul(fld.of(coeff), x))
        return AlgebraElement(degree, tuple(coords))

    def add(self, a, b):
        assert a.degree == b.degree
        fld = self.field
        return AlgebraElement(a.degree, tuple(fld.add(x, y) for x, y in zip(a.coords, b.coords)))

    def sub(self, a, b):
        assert a.degree == b.degree
        fld = self.field
        return AlgebraElement(a.degree, tuple(fld.sub(x, y) for x, y in zip(a.coords, b.coords)))

    def scale(self, c, a):
        fld = self.field
        return AlgebraElement(a.degree, tuple(fld.mul(c, x) for x in a.coords))

    def multiply(self, a, b):
        """Product in A, by expanding basis monomial representatives."""
        d = a.degree + b.degree
        if d > self.cutoff:
            raise DegreeOverflow(f"product degree {d} exceeds cutoff {self.cutoff}")
        fld = self.field
        da, db, dd = self._degree(a.degree), self._degree(b.degree), self._degree(d)
        coords = [fld.zero] * len(dd.basis)
        for ia, ca in enumerate(a.coords):
            if not ca:
                continue
            ma = da.basis[ia]
            for ib, cb in enumerate(b.coords):
                if not cb:
                    continue
                prod = tuple(x + y for x, y in zip(ma, db.basis[ib]))
                nf = dd.nf[dd.index[prod]]
                c = fld.mul(ca, cb)
                for k, x in enumerate(nf):
                    if x:
                        coords[k] = fld.add(coords[k], fld.mul(c, x))
        return AlgebraElement(d, tuple(coords))

    def multiplication_columns(self, a, e):
        """Columns of the multiplication operator A_e -> A_{e+deg a} by a.

        Cached per (element, source degree); column j is the coordinate tuple
        of a times the j-th basis monomial of A_e.
        """
        cache = getattr(self, "_mult_columns", None)
        if cache is None:
            cache = self._mult_columns = {}
        key = (a.degree, a.coords, e)
        got = cache.get(key)
        if got is None:
            got = [self.multiply(a, self.monomial_element(mu)).coords
                   for mu in self.basis(e)]
            cache[key] = got
        return got

    # -- degree-2 pair bookkeeping ------------------------------------------

    def basis_pairs(self):
        """Unordered index pairs (s, t), s <= t, whose product is a basis monomial."""
        pairs = []
        for mon in self._degree(2).basis:
            support = [i for i, e in enumerate(mon) for _ in range(e)]
            pairs.append((support[0], support[1]))
        return pairs

    def non_basis_pairs(self):
        """Unordered pairs (u, v), u <= v, whose product is not a basis monomial."""
        chosen = set(self.basis_pairs())
        return [(u, v) for u in range(self.n) for v in range(u, self.n)
                if (u, v) not in chosen]

    def pair_monomial(self, u, v):
        exp = [0] * self.n
        exp[u] += 1
        exp[v] += 1
        return tuple(exp)

    def structure_coefficients(self):
        """Expansion of each excluded product x_u x_v over basis products.

        Returns {(u,v) not chosen: {(s,t) chosen: coefficient}} with zero
        coefficients omitted, so a product that dies in A gets an empty dict.
        """
        spairs = self.basis_pairs()
        out = {}
        for (u, v) in self.non_basis_pairs():
            nf = self.monomial_element(self.pair_monomial(u, v)).coords
            out[(u, v)] = {spairs[k]: c for k, c in enumerate(nf) if c}
        return out

    def pair_expansion(self, a, b):
        """Normal-form coordinates of x_a x_b indexed by chosen pairs (any order)."""
        spairs = self.basis_pairs()
        nf = self.monomial_element(self.pair_monomial(a, b)).coords
        return {spairs[k]: c for k, c in enumerate(nf) if c}

    # -- formatting ----------------------------------------------------------

    def format_monomial(self, exp):
        parts = []
        for i, e in enumerate(exp):
            if e == 1:
                parts.append(self.presentation.var_names[i])
            elif e > 1:
                parts.append(f"{self.presentation.var_names[i]}^{e}")
        return "*".join(parts) if parts else "1"

    def format_element(self, a):
        fld = self.field
        data = self._degree(a.degree)
        parts = []
        for k, c in enumerate(a.coords):
            if c:
                mono = self.format_monomial(data.basis[k])
                cs = fld.format(c)
                parts.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(parts) if parts else "0"
