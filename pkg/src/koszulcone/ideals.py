"""Ordered monomial ideals: membership, colons, decompositions, ordering checks.

A monomial ideal here is an ordered list of chosen-basis monomials of the
ambient graded algebra.  All ideal-theoretic questions (membership, colon
ideals, minimality of generators) are answered degreewise by exact linear
algebra on the per-degree membership spaces span{monomial * generator}.

The decomposition table realizes the coefficient functions v = sum_i c_i(v) m_i
with the support guarantee c_i(v) m_i outside the earlier prefix ideal: the
algorithm peels off the minimal prefix containing v and solves the canonical
(echelon) witness at each step, so the table is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .dual import QuadraticDual, left_ideal_contains
from .errors import NotInIdeal, NotMultigraded
from .linalg import Subspace, kernel, solve_membership

__all__ = [
    "MonomialIdeal",
    "DecompositionTable",
    "ColonData",
    "CheckReport",
    "annihilator_vars",
    "check_strongly_koszul",
]


@dataclass
class ColonData:
    """Colon variables of one prefix step plus its bounded verification."""

    index: int
    variables: frozenset
    checked_to: int
    linear: bool
    fail_degree: int | None = None

    def as_dict(self):
        return {
            "generator": self.index,
            "colon_variables": sorted(self.variables),
            "checked_to": self.checked_to,
            "linear": self.linear,
            "fail_degree": self.fail_degree,
        }


@dataclass
class CheckReport:
    name: str
    passed: bool
    details: list = dc_field(default_factory=list)
    warnings: list = dc_field(default_factory=list)
    first_witness: tuple | None = None

    def as_dict(self):
        return {
            "check": self.name,
            "passed": self.passed,
            "details": self.details,
            "warnings": self.warnings,
            "first_witness": self.first_witness,
        }


def _variable_ideal_space(algebra, row_vectors, d):
    """Degree-d span of the ideal generated by degree-1 rows (as elements)."""
    rows = []
    for w in row_vectors:
        wel = algebra.element(1, w)
        for mu in algebra.basis(d - 1):
            rows.append(list(algebra.multiply(wel, algebra.monomial_element(mu)).coords))
    return Subspace.from_rows(algebra.field, rows, algebra.dim(d))


def _colon_against_space(algebra, m_element, d, target_space):
    """{v in A_d : v * m lies in target_space}, target in degree d + deg m."""
    cols = []
    for mu in algebra.basis(d):
        prod = algebra.multiply(algebra.monomial_element(mu), m_element)
        residual, _ = target_space.reduce(list(prod.coords))
        cols.append(residual)
    nrows = algebra.dim(d + m_element.degree)
    stacked = [[cols[c][r] for c in range(algebra.dim(d))] for r in range(nrows)]
    return kernel(algebra.field, [row for row in stacked if any(row)], algebra.dim(d))


class MonomialIdeal:
    """An ordered monomial ideal (m_1, ..., m_r) in a graded algebra.

    Generators must be chosen-basis monomials of nondecreasing degree, and
    each must lie outside the ideal of the previous ones (minimality).
    """

    def __init__(self, algebra, generators):
        self.algebra = algebra
        self.field = algebra.field
        self.gens = [tuple(g) for g in generators]
        self.degs = [sum(g) for g in self.gens]
        for g, d in zip(self.gens, self.degs):
            if d < 1:
                raise ValueError("ideal generators must have positive degree")
            if g not in set(algebra.basis(d)):
                raise ValueError(
                    f"generator {algebra.format_monomial(g)} is not a chosen-basis monomial"
                )
        if any(a > b for a, b in zip(self.degs, self.degs[1:])):
            raise ValueError("generator degrees must be nondecreasing")
        self.gen_elements = [algebra.monomial_element(g) for g in self.gens]
        self._membership = {}
        self._colon_vars = {}
        self._dual = None
        self.decomposition = DecompositionTable(self)
        for i in range(len(self.gens)):
            if self.contains(self.gen_elements[i], prefix=i):
                raise ValueError(
                    f"generator {algebra.format_monomial(self.gens[i])} is redundant"
                )

    @property
    def r(self):
        return len(self.gens)

    @property
    def max_degree(self):
        return max(self.degs) if self.gens else 0

    @property
    def dual(self):
        if self._dual is None:
            self._dual = QuadraticDual(self.algebra)
        return self._dual

    def supp(self, exp=None):
        """Support of a monomial (variable indices dividing it) or of the ideal."""
        if exp is not None:
            return frozenset(i for i, e in enumerate(exp) if e > 0)
        out = set()
        for g in self.gens:
            out |= self.supp(g)
        return frozenset(out)

    # -- membership ---------------------------------------------------------

    def membership_space(self, prefix, d):
        """Degree-d part of the ideal of the first `prefix` generators."""
        key = (prefix, d)
        got = self._membership.get(key)
        if got is not None:
            return got
        A = self.algebra
        if prefix == 0 or d < self.degs[0]:
            space = Subspace.zero(self.field, A.dim(d))
        else:
            space = self.membership_space(prefix - 1, d)
            gdeg = self.degs[prefix - 1]
            if gdeg <= d:
                rows = list(space.rows)
                gel = self.gen_elements[prefix - 1]
                for mu in A.basis(d - gdeg):
                    prod = A.multiply(A.monomial_element(mu), gel)
                    rows.append(list(prod.coords))
                space = Subspace.from_rows(self.field, rows, A.dim(d))
        self._membership[key] = space
        return space

    def contains(self, element, prefix=None):
        if prefix is None:
            prefix = self.r
        if element.is_zero:
            return True
        if prefix == 0:
            return False
        return self.membership_space(prefix, element.degree).contains(list(element.coords))

    # -- colon ideals ----------------------------------------------------------

    def colon_space(self, prefix, m_element, d):
        """{v in A_d : v * m lies in the prefix ideal}, as a subspace of A_d."""
        target = self.membership_space(prefix, d + m_element.degree)
        return _colon_against_space(self.algebra, m_element, d, target)

    def colon_vars(self, i, check_to=0):
        """Variables of (J_{i-1} : m_i), with bounded linearity verification.

        The set {j : x_j m_i in J_{i-1}} is exact; the verification compares
        the colon with the ideal those variables generate in degrees up to
        check_to (tri-state: linear up to the bound, or first failing degree).
        """
        key = (i, check_to)
        got = self._colon_vars.get(key)
        if got is not None:
            return got
        A = self.algebra
        fld = self.field
        mel = self.gen_elements[i - 1]
        vars_ = frozenset(
            j for j in range(A.n)
            if self.contains(A.multiply(A.var(j), mel), prefix=i - 1)
        )
        var_rows = [list(A.var(j).coords) for j in sorted(vars_)]
        linear = True
        fail_degree = None
        for d in range(2, check_to + 1):
            colon = self.colon_space(i - 1, mel, d)
            span = _variable_ideal_space(A, var_rows, d)
            if span.dim != colon.dim:
                linear = False
                fail_degree = d
                break
        data = ColonData(i, vars_, check_to, linear, fail_degree)
        self._colon_vars[key] = data
        return data

    def colon_variable_sets(self):
        return [self.colon_vars(i).variables for i in range(1, self.r + 1)]

    # -- ordering checks -----------------------------------------------------------

    def check_linear_quotients(self, check_to=4):
        report = CheckReport("linear-quotients", True)
        for i in range(1, self.r + 1):
            data = self.colon_vars(i, check_to)
            report.details.append(data.as_dict())
            if not data.linear:
                report.passed = False
        return report

    def check_regular_ordering(self, check_to=4, mode="symmetric"):
        """The three compatibility conditions making cone comparison maps explicit.

        mode selects the reading of condition (1)'s last summand: "symmetric"
        (the form the chain-map computation needs) or "literal" (as printed);
        both are always evaluated and any disagreement is reported.
        Condition (2)(b) concludes s outside E_j (the well-definedness lemma's
        form); the naive `s outside E_k` evaluation is reported alongside.
        """
        assert mode in ("symmetric", "literal")
        report = CheckReport("regular-ordering", True)
        lq = self.check_linear_quotients(check_to)
        if not lq.passed:
            report.passed = False
            report.warnings.append("linear-quotients precondition failed")
            report.details.append(lq.as_dict())
            return report
        colon_sets = self.colon_variable_sets()
        self._check_condition_one(report, mode)
        self._check_condition_two(report, colon_sets, check_to)
        self._check_condition_three(report, colon_sets)
        return report

    def _check_condition_one(self, report, mode):
        A = self.algebra
        dec = self.decomposition
        coeffs = A.structure_coefficients()
        disagreements = []
        for (u, v) in A.non_basis_pairs():
            expansion = coeffs[(u, v)]
            for k in range(1, self.r + 1):
                for j in range(1, k + 1):
                    lhs = A.add(
                        A.multiply(A.var(u), dec.coeff_times_var(j, v, k)),
                        A.multiply(A.var(v), dec.coeff_times_var(j, u, k)),
                    )
                    rhs_sym = A.zero(lhs.degree)
                    rhs_lit = A.zero(lhs.degree)
                    lit_ok = True
                    for (s, t), f in expansion.items():
                        first = A.multiply(A.var(s), dec.coeff_times_var(j, t, k))
                        sym = A.multiply(A.var(t), dec.coeff_times_var(j, s, k))
                        rhs_sym = A.add(rhs_sym, A.scale(f, A.add(first, sym)))
                        # the printed reading m_j^*(x_s m_j) is inhomogeneous
                        # unless deg m_j = deg m_k; treat that as ill-typed
                        lit_term = A.multiply(A.var(t), dec.coeff_times_var(j, s, j))
                        if lit_term.degree == first.degree:
                            rhs_lit = A.add(rhs_lit, A.scale(f, A.add(first, lit_term)))
                        elif lit_term.is_zero:
                            rhs_lit = A.add(rhs_lit, A.scale(f, first))
                        else:
                            lit_ok = False
                    if not lit_ok or rhs_sym != rhs_lit:
                        disagreements.append({"pair": (u, v), "j": j, "k": k,
                                              "literal_well_typed": lit_ok})
                    chosen = rhs_sym if mode == "symmetric" else rhs_lit
                    if (mode == "literal" and not lit_ok) or lhs != chosen:
                        report.passed = False
                        report.details.append({
                            "condition": 1,
                            "pair": (u, v),
                            "j": j,
                            "k": k,
                            "lhs": A.format_element(lhs),
                            "rhs": A.format_element(chosen) if lit_ok or mode == "symmetric"
                                   else "ill-typed (inhomogeneous literal reading)",
                        })
        if disagreements:
            report.warnings.append(
                f"condition (1) readings disagree on {len(disagreements)} instances; "
                f"first: {disagreements[0]}"
            )

    def _check_condition_two(self, report, colon_sets, check_to):
        dec = self.decomposition
        dual = self.dual
        for k in range(2, self.r + 1):
            Ek = colon_sets[k - 1]
            for t in sorted(Ek):
                for j in range(1, k):
                    if dec.coeff_times_var(j, t, k).is_zero:
                        continue
                    Ej = colon_sets[j - 1]
                    if not Ej <= Ek:
                        report.passed = False
                        report.details.append({
                            "condition": "2a", "j": j, "k": k, "t": t,
                            "E_j": sorted(Ej), "E_k": sorted(Ek),
                        })
                        continue
                    c1 = left_ideal_contains(dual, Ej, (t,), Ek, check_to)
                    if c1.holds:
                        continue
                    for s in range(self.algebra.n):
                        if dual.pair_word_is_zero(t, s):
                            continue
                        c2 = left_ideal_contains(dual, Ej, (t, s), Ek, check_to)
                        if not c2.holds:
                            continue
                        if s in Ej:
                            report.passed = False
                            report.details.append({
                                "condition": "2b", "j": j, "k": k, "t": t, "s": s,
                                "conclusion": "s not in E_j violated",
                            })
                        if s in Ek:
                            report.warnings.append(
                                f"literal 2b reading (s not in E_k) fails at "
                                f"j={j}, k={k}, t={t}, s={s}"
                            )

    def _check_condition_three(self, report, colon_sets):
        A = self.algebra
        dec = self.decomposition
        for k in range(2, self.r + 1):
            Ek = sorted(colon_sets[k - 1])
            for s in Ek:
                for t in Ek:
                    for i in range(1, k):
                        lhs = dec.coeff_times_var_var(i, s, t, k)
                        rhs = A.zero(lhs.degree)
                        for j in range(i, k):
                            a = dec.coeff_times_var(i, s, j)
                            b = dec.coeff_times_var(j, t, k)
                            if a.is_zero or b.is_zero:
                                continue
                            rhs = A.add(rhs, A.multiply(a, b))
                        if lhs != rhs:
                            report.passed = False
                            report.details.append({
                                "condition": 3, "i": i, "k": k, "s": s, "t": t,
                                "lhs": A.format_element(lhs),
                                "rhs": A.format_element(rhs),
                            })

    def check_star_condition(self):
        """The multigraded sufficient condition for a regular ordering.

        Requires every defining relation to be a single monomial.  Checks that
        each support variable of the relations either kills a generator or
        keeps its multiple outside the earlier prefix, and that the induced
        decomposition function is regular on colon-variable sets.
        """
        A = self.algebra
        rel_support = set()
        for rel in A.presentation.relations:
            if len(rel) != 1:
                raise NotMultigraded("a defining relation is not a monomial")
            _, (i, j) = rel[0]
            rel_support |= {i, j}
        report = CheckReport("star-condition", True)
        for i in range(1, self.r + 1):
            for y in sorted(rel_support):
                w = A.multiply(A.var(y), self.gen_elements[i - 1])
                if w.is_zero:
                    continue
                if self.contains(w, prefix=i - 1):
                    report.passed = False
                    report.details.append({
                        "clause": "star", "generator": i, "variable": y,
                    })
        colon_sets = self.colon_variable_sets()
        for i in range(1, self.r + 1):
            for s in sorted(colon_sets[i - 1]):
                v = A.multiply(A.var(s), self.gen_elements[i - 1])
                if v.is_zero:
                    continue
                j = self._minimal_prefix(v)
                if j is not None and not colon_sets[j - 1] <= colon_sets[i - 1]:
                    report.passed = False
                    report.details.append({
                        "clause": "regular-decomposition", "generator": i,
                        "variable": s, "g_index": j,
                    })
        report.details.append({"regular_ordering_guaranteed": report.passed})
        return report

    def _minimal_prefix(self, element, bound=None):
        if bound is None:
            bound = self.r
        for j in range(1, bound + 1):
            if self.contains(element, prefix=j):
                return j
        return None


class DecompositionTable:
    """Cached decomposition coefficients over the ordered generators.

    times_var(s, k) decomposes x_s m_k (honoring the convention that the
    coefficient is x_s on m_k itself when x_s m_k stays outside the earlier
    prefix); times_var_var(s, t, k) decomposes x_s x_t m_k; of_element
    decomposes an arbitrary ideal element.  Entries are lists of
    (generator index, coefficient) with nonzero AlgebraElement coefficients.
    """

    def __init__(self, ideal, strategy="canonical"):
        # hook for alternative decomposition choices; only the canonical
        # greedy top-down strategy is implemented
        if strategy != "canonical":
            raise NotImplementedError(f"decomposition strategy {strategy!r}")
        self.ideal = ideal
        self.strategy = strategy
        self._var_gen = {}
        self._var_var_gen = {}

    def times_var(self, s, k):
        key = (s, k)
        got = self._var_gen.get(key)
        if got is not None:
            return got
        J = self.ideal
        A = J.algebra
        v = A.multiply(A.var(s), J.gen_elements[k - 1])
        if v.is_zero:
            entries = []
        elif not J.contains(v, prefix=k - 1):
            entries = [(k, A.var(s))]
        else:
            entries = self.of_element(v, bound=k - 1)
        self._var_gen[key] = entries
        return entries

    def times_var_var(self, s, t, k):
        key = (min(s, t), max(s, t), k)
        got = self._var_var_gen.get(key)
        if got is not None:
            return got
        J = self.ideal
        A = J.algebra
        v = A.multiply(A.var(s), A.multiply(A.var(t), J.gen_elements[k - 1]))
        entries = [] if v.is_zero else self.of_element(v, bound=J.r)
        self._var_var_gen[key] = entries
        return entries

    def coeff_times_var(self, i, s, k):
        """Coefficient on m_i in the decomposition of x_s m_k (degree-typed zero if absent)."""
        deg = self.ideal.degs[k - 1] + 1 - self.ideal.degs[i - 1]
        for j, c in self.times_var(s, k):
            if j == i:
                return c
        return self.ideal.algebra.zero(deg)

    def coeff_times_var_var(self, i, s, t, k):
        """Coefficient on m_i in the decomposition of x_s x_t m_k."""
        deg = self.ideal.degs[k - 1] + 2 - self.ideal.degs[i - 1]
        for j, c in self.times_var_var(s, t, k):
            if j == i:
                return c
        return self.ideal.algebra.zero(deg)

    def of_element(self, element, bound=None):
        """Greedy top-down decomposition with canonical echelon witnesses.

        Peels the minimal prefix j with v in J_j, solves v = u + c m_j with u
        in J_{j-1} canonically, and recurses on u.  Asserts the support
        guarantee: each extracted c m_j lies outside J_{j-1}.
        """
        J = self.ideal
        A = J.algebra
        fld = J.field
        if bound is None:
            bound = J.r
        entries = []
        v = element
        while not v.is_zero:
            j = J._minimal_prefix(v, bound)
            if j is None:
                raise NotInIdeal(
                    f"element of degree {element.degree} is not in the prefix ideal"
                )
            d = v.degree
            cdeg = d - J.degs[j - 1]
            gel = J.gen_elements[j - 1]
            multiples = [
                list(A.multiply(A.monomial_element(mu), gel).coords)
                for mu in A.basis(cdeg)
            ]
            prev = J.membership_space(j - 1, d)
            rows = multiples + list(prev.rows)
            sol = solve_membership(fld, list(v.coords), rows)
            assert sol is not None, "minimal prefix membership must be solvable"
            coeff = A.element(cdeg, sol[: len(multiples)])
            assert not coeff.is_zero, "support guarantee: coefficient vanished"
            piece = A.multiply(coeff, gel)
            assert not J.contains(piece, prefix=j - 1), \
                "support guarantee: coefficient times generator fell into the prefix"
            entries.append((j, coeff))
            v = A.sub(v, piece)
            bound = j - 1
        entries.reverse()
        return entries


def annihilator_vars(algebra, exp, check_to=0):
    """Degree-1 annihilator data of a monomial class.

    Returns (variables, degree1_space, report): the variable indices killed by
    the monomial, the full degree-1 part of (0:m) as a subspace of A_1, and
    for each 2 <= d <= check_to whether (0:m)_d is generated by the degree-1
    part (False flags a higher minimal generator of the annihilator).
    """
    mel = algebra.monomial_element(tuple(exp))
    vars_ = frozenset(j for j in range(algebra.n)
                      if algebra.multiply(algebra.var(j), mel).is_zero)
    zero_target = Subspace.zero(algebra.field, algebra.dim(1 + mel.degree))
    deg1 = _colon_against_space(algebra, mel, 1, zero_target)
    report = {}
    for d in range(2, check_to + 1):
        target = Subspace.zero(algebra.field, algebra.dim(d + mel.degree))
        colon = _colon_against_space(algebra, mel, d, target)
        span = _variable_ideal_space(algebra, deg1.rows, d)
        report[d] = span.dim == colon.dim
    return vars_, deg1, report


def check_strongly_koszul(algebra, check_to=4, subset_bound=None, extra_subsets=()):
    """Bounded certificate that variable-ideal colons are linear.

    For each subset Y of the variables (exhaustive when n <= 10, else subsets
    up to subset_bound plus extra_subsets) and each variable x outside Y, the
    degree-1 part Z of ((Y):x) is computed exactly and the bounded check
    verifies ((Y):x)_d = (Z . A_{d-1}) for 2 <= d <= check_to.  The first
    failing witness (Y, x, d) is reported; whether Z is spanned by variables
    is a per-pair diagnostic (the strict subset-of-variables reading).
    """
    n = algebra.n
    fld = algebra.field
    report = CheckReport("strongly-koszul", True)
    if subset_bound is None:
        subset_bound = n if n <= 10 else 2
    subsets = []
    for size in range(0, min(subset_bound, n) + 1):
        subsets.extend(frozenset(c) for c in combinations(range(n), size))
    for extra in extra_subsets:
        fs = frozenset(extra)
        if fs not in subsets:
            subsets.append(fs)

    first_witness = None
    var_rows = {j: list(algebra.var(j).coords) for j in range(n)}
    for Y in subsets:
        y_rows = [var_rows[j] for j in sorted(Y)]
        for x in range(n):
            if x in Y:
                continue
            xel = algebra.var(x)
            target1 = _variable_ideal_space(algebra, y_rows, 2) if Y else \
                Subspace.zero(fld, algebra.dim(2))
            z1 = _colon_against_space(algebra, xel, 1, target1)
            zvars = sorted(j for j in range(n) if z1.contains(var_rows[j]))
            vars_span = Subspace.from_rows(fld, [var_rows[j] for j in zvars], n).dim == z1.dim
            entry = {
                "Y": sorted(Y), "x": x, "colon_degree1_dim": z1.dim,
                "colon_vars": zvars, "variable_spanned": vars_span,
            }
            if not vars_span:
                report.warnings.append(
                    f"(({sorted(Y)}):x_{x}) has non-variable degree-1 part"
                )
            fail_d = None
            for d in range(2, check_to + 1):
                target = _variable_ideal_space(algebra, y_rows, d + 1) if Y else \
                    Subspace.zero(fld, algebra.dim(d + 1))
                colon_d = _colon_against_space(algebra, xel, d, target)
                span_d = _variable_ideal_space(algebra, z1.rows, d)
                if span_d.dim != colon_d.dim:
                    fail_d = d
                    break
            if fail_d is not None:
                report.passed = False
                entry["fail_degree"] = fail_d
                if first_witness is None:
                    first_witness = (tuple(sorted(Y)), x, fail_d)
            report.details.append(entry)
    report.first_witness = first_witness
    if first_witness is not None:
        report.warnings.insert(
            0,
            f"first witness: Y={list(first_witness[0])}, x=x_{first_witness[1]}, "
            f"degree {first_witness[2]}",
        )
    return report
