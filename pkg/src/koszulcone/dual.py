"""Quadratic dual components realized inside tensor powers of the degree-one part.

The graded dual of the quadratic dual algebra lives in V^(tensor l): degree l
is the intersection of all embeddings V^j (x) R (x) V^(l-2-j) of the tensor
relation space R (commutators plus asymmetric lifts of the defining quadrics).
Components are computed by the equivalent recursion

    comp(l) = (V (x) comp(l-1))  intersect  (R (x) V^(l-2)),

which keeps eliminations at the size of the component instead of the full
tensor power.  Quotient duals cut these down by annihilation conditions coming
from left ideals generated by excluded dual variables.

Slot conventions (fixed by the d.d = 0 calibration on polynomial rings and
documented in the README): the module action f |-> f.x_j^* used by all
differentials is the FIRST-slot contraction (pairing against words with x_j^*
prepended); membership in a quotient dual is LAST-slot annihilation (the left
ideal is spanned by words with an excluded variable in the final slot).  Both
contractions are exposed; closure of every quotient-dual action is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import AmbientTooLarge, ClosureFailure
from .linalg import PrimeField, Subspace, intersect_subspaces, kernel, matmul

CALIBRATED_SLOT = "first"
OPPOSITE_SLOT = "last"


def tensor_index(indices, n):
    """Row-major index of a pure tensor word (first slot most significant)."""
    idx = 0
    for i in indices:
        idx = idx * n + i
    return idx


class QuadraticDual:
    """Graded dual components of the quadratic dual of a commutative quadratic algebra."""

    def __init__(self, algebra, ambient_limit=20000):
        self.algebra = algebra
        self.field = algebra.field
        self.n = algebra.n
        self.ambient_limit = ambient_limit
        self._components = {}
        self._act = {}
        self._quotients = {}
        self._relation_space = None
        self._nf2 = None

    # -- tensor relation space ---------------------------------------------

    @property
    def relation_space(self):
        """Kernel of V (x) V -> A_2: commutators plus lifted quadrics."""
        if self._relation_space is None:
            fld, n = self.field, self.n
            rows = []
            for u in range(n):
                for v in range(u + 1, n):
                    row = [fld.zero] * (n * n)
                    row[u * n + v] = fld.one
                    row[v * n + u] = fld.neg(fld.one)
                    rows.append(row)
            for rel in self.algebra.presentation.relations:
                row = [fld.zero] * (n * n)
                for coeff, (i, j) in rel:
                    row[i * n + j] = fld.add(row[i * n + j], fld.of(coeff))
                rows.append(row)
            space = Subspace.from_rows(fld, rows, n * n)
            assert space.dim == n * n - self.algebra.dim(2)
            self._relation_space = space
        return self._relation_space

    # -- components ----------------------------------------------------------

    def component(self, l):
        """Canonical echelon basis of the degree-l dual component in V^(x l)."""
        if l < 0:
            return Subspace.zero(self.field, 1)
        got = self._components.get(l)
        if got is not None:
            return got
        n = self.n
        if n ** max(l, 1) > self.ambient_limit:
            raise AmbientTooLarge(f"tensor ambient {n}^{l} exceeds {self.ambient_limit}")
        if l == 0:
            comp = Subspace.full(self.field, 1)
        elif l == 1:
            comp = Subspace.full(self.field, n)
        elif l == 2:
            comp = self.relation_space
        else:
            comp = self._component_step(l)
        self._components[l] = comp
        return comp

    def _nf2_matrix(self):
        # columns indexed by ordered pairs (a, b); rows by the degree-2 basis
        if self._nf2 is None:
            n, A = self.n, self.algebra
            cols = []
            for a in range(n):
                for b in range(n):
                    cols.append(A.monomial_element(A.pair_monomial(a, b)).coords)
            self._nf2 = [[col[r] for col in cols] for r in range(A.dim(2))]
        return self._nf2

    def _component_step(self, l):
        fld, n = self.field, self.n
        prev = self.component(l - 1)
        if prev.dim == 0:
            return Subspace.zero(fld, n ** l)
        # candidates e_i (x) b span V (x) comp(l-1); cut by the degree-2
        # normal form applied to the two leading slots
        cand = []
        tail = n ** (l - 1)
        for i in range(n):
            for b in prev.rows:
                row = [fld.zero] * (n ** l)
                row[i * tail : (i + 1) * tail] = b
                cand.append(row)
        nf2 = self._nf2_matrix()
        dim2 = self.algebra.dim(2)
        rest = n ** (l - 2)
        constraints = {}
        for c, w in enumerate(cand):
            img = _apply_leading_pairs(fld, nf2, w, n, rest, dim2)
            for key, val in img.items():
                constraints.setdefault(key, [fld.zero] * len(cand))[c] = val
        rows = [constraints[k] for k in sorted(constraints)]
        coeffs = kernel(fld, rows, len(cand))
        if coeffs.dim == 0:
            return Subspace.zero(fld, n ** l)
        new_rows = matmul(fld, coeffs.rows, cand, n ** l)
        return Subspace.from_rows(fld, new_rows, n ** l)

    def naive_component(self, l):
        """Literal intersection over all embeddings of the relation space.

        Quadratic in the ambient dimension; used to cross-check component().
        """
        fld, n = self.field, self.n
        if l <= 2:
            return self.component(l)
        spaces = []
        for j in range(l - 1):
            rows = []
            for q in self.relation_space.rows:
                qmat = [[q[a * n + b] for b in range(n)] for a in range(n)]
                left = n ** j
                right = n ** (l - 2 - j)
                for a_pre in range(left):
                    for b_post in range(right):
                        row = [fld.zero] * (n ** l)
                        for a in range(n):
                            for b in range(n):
                                if qmat[a][b]:
                                    idx = ((a_pre * n + a) * n + b) * right + b_post
                                    row[idx] = qmat[a][b]
                        rows.append(row)
            spaces.append(Subspace.from_rows(fld, rows, n ** l))
        return intersect_subspaces(spaces)

    # -- contractions and actions ---------------------------------------------

    def contract(self, vec, l, j, slot=CALIBRATED_SLOT):
        """Slot contraction of a degree-l tensor against the j-th dual variable.

        first: pairing f(x_j^* w), i.e. drop the leading slot at index j.
        last:  pairing f(w x_j^*), i.e. drop the trailing slot at index j.
        """
        n = self.n
        tail = n ** (l - 1)
        if slot == "first":
            return list(vec[j * tail : (j + 1) * tail])
        if slot == "last":
            return [vec[r * n + j] for r in range(tail)]
        raise ValueError(f"unknown slot {slot!r}")

    def act_matrix(self, l, j, slot=CALIBRATED_SLOT):
        """Matrix of f -> f.x_j^* from component(l) coords to component(l-1) coords."""
        key = (l, j, slot)
        got = self._act.get(key)
        if got is not None:
            return got
        src = self.component(l)
        dst = self.component(l - 1)
        cols = []
        for b in src.rows:
            img = self.contract(b, l, j, slot)
            coords = dst.coords_of(img)
            assert coords is not None, "contraction left the dual component"
            cols.append(coords)
        mat = [[cols[c][r] for c in range(src.dim)] for r in range(dst.dim)]
        self._act[key] = mat
        return mat

    # -- quotient duals ---------------------------------------------------------

    def quotient(self, allowed):
        allowed = frozenset(allowed)
        got = self._quotients.get(allowed)
        if got is None:
            got = QuotientDual(self, allowed)
            self._quotients[allowed] = got
        return got

    # -- degree-2 presentation ---------------------------------------------------

    def ordered_excluded_pairs(self):
        """Ordered pairs (a, b) whose word class spans the degree-2 dual basis."""
        chosen = set(self.algebra.basis_pairs())
        return [(a, b) for a in range(self.n) for b in range(self.n)
                if not (a <= b and (a, b) in chosen)]

    def deg2_relations(self):
        """Rewriting of each basis-pair word over the excluded-pair dual basis.

        For a chosen pair (s,t) the degree-2 dual algebra satisfies
        x_s^* x_t^* = sum over excluded ordered (u,v) of -(expansion of x_u x_v
        at x_s x_t) x_u^* x_v^*.  Zero coefficients are omitted.
        """
        A = self.algebra
        out = {}
        for (s, t) in A.basis_pairs():
            rewr = {}
            for (u, v) in self.ordered_excluded_pairs():
                f = A.pair_expansion(u, v).get((s, t))
                if f:
                    rewr[(u, v)] = self.field.neg(f)
            out[(s, t)] = rewr
        return out

    def deg2_labeled_duals(self):
        """Basis of component(2) dual to the excluded-pair word classes.

        Returns (labels, rows): labels[i] is the ordered pair (u, v) and
        rows[i] the unique tensor in the relation space pairing to the
        indicator of that pair on excluded-pair coordinates.
        """
        fld, n = self.field, self.n
        comp = self.component(2)
        labels = self.ordered_excluded_pairs()
        positions = [u * n + v for (u, v) in labels]
        restricted = [[row[p] for p in positions] for row in comp.rows]
        inv = _invert(fld, restricted)
        rows = matmul(fld, inv, comp.rows, n * n)
        return labels, rows

    def pair_word_is_zero(self, a, b):
        """Whether the length-2 dual word x_a^* x_b^* vanishes in the dual algebra.

        True iff every degree-2 dual-component tensor pairs to zero against
        the word, i.e. the (a,b) coordinate of the component is identically 0.
        """
        pos = a * self.n + b
        return all(row[pos] == self.field.zero for row in self.component(2).rows)

    def deg2_consistency(self):
        """Check the degree-2 presentation against the subspace realization."""
        n = self.n
        comp = self.component(2)
        if comp.dim != len(self.ordered_excluded_pairs()):
            return False
        rels = self.deg2_relations()
        for q in comp.rows:
            for (s, t), rewr in rels.items():
                acc = q[s * n + t]
                for (u, v), c in rewr.items():
                    acc = self.field.sub(acc, self.field.mul(c, q[u * n + v]))
                if acc != self.field.zero:
                    return False
        return True


def _apply_leading_pairs(fld, nf2, w, n, rest, dim2):
    """Sparse image of w under the degree-2 normal form on the two leading slots."""
    out = {}
    if dim2 == 0:
        return out
    if isinstance(fld, PrimeField):
        arr = np.array(w, dtype=np.int64).reshape(n * n, rest)
        img = (np.array(nf2, dtype=np.int64) @ arr) % fld.char
        for t, r in zip(*np.nonzero(img)):
            out[(int(t), int(r))] = int(img[t, r])
        return out
    for t in range(dim2):
        rownf = nf2[t]
        for r in range(rest):
            acc = fld.zero
            for q in range(n * n):
                if rownf[q] and w[q * rest + r]:
                    acc = fld.add(acc, fld.mul(rownf[q], w[q * rest + r]))
            if acc != fld.zero:
                out[(t, r)] = acc
    return out


def _invert(fld, rows):
    m = len(rows)
    aug = [list(r) + [fld.one if j == i else fld.zero for j in range(m)]
           for i, r in enumerate(rows)]
    rref, pivots = fld.rref(aug, 2 * m)
    assert pivots[:m] == list(range(m)), "matrix is singular"
    return [row[m:] for row in rref]


class QuotientDual:
    """Graded dual of the quotient of the dual algebra by excluded variables.

    allowed is the set of retained variable indices; the quotient kills the
    left ideal spanned by words ending in an excluded dual variable.
    """

    def __init__(self, parent, allowed):
        self.parent = parent
        self.allowed = frozenset(allowed)
        self.field = parent.field
        self._components = {}
        self._act = {}

    def component(self, l):
        got = self._components.get(l)
        if got is not None:
            return got
        parent = self.parent
        fld, n = self.field, parent.n
        full = parent.component(l)
        excluded = sorted(set(range(n)) - self.allowed)
        if l == 0 or not excluded:
            comp = full
        elif full.dim == 0:
            comp = full
        else:
            constraints = {}
            for c, b in enumerate(full.rows):
                for j in excluded:
                    img = parent.contract(b, l, j, slot="last")
                    for r, val in enumerate(img):
                        if val:
                            constraints.setdefault((j, r), [fld.zero] * full.dim)[c] = val
            rows = [constraints[k] for k in sorted(constraints)]
            coeffs = kernel(fld, rows, full.dim)
            if coeffs.dim == 0:
                comp = Subspace.zero(fld, n ** l)
            else:
                new_rows = matmul(fld, coeffs.rows, full.rows, n ** l)
                comp = Subspace.from_rows(fld, new_rows, n ** l)
        self._components[l] = comp
        return comp

    def rank(self, l):
        return self.component(l).dim

    def act_matrix(self, l, j, slot=CALIBRATED_SLOT):
        """Action f -> f.x_j^* in quotient coordinates; closure is asserted."""
        key = (l, j, slot)
        got = self._act.get(key)
        if got is not None:
            return got
        src = self.component(l)
        dst = self.component(l - 1)
        cols = []
        for b in src.rows:
            img = self.parent.contract(b, l, j, slot)
            coords = dst.coords_of(img)
            if coords is None:
                raise ClosureFailure(
                    f"action x_{j} left the quotient dual (allowed={sorted(self.allowed)}, "
                    f"degree {l}, slot {slot})"
                )
            cols.append(coords)
        mat = [[cols[c][r] for c in range(src.dim)] for r in range(dst.dim)]
        self._act[key] = mat
        return mat


@dataclass
class ContainmentReport:
    """Degree-bounded answer to: does prefix . L_src lie inside L_dst?"""

    src_allowed: frozenset
    prefix: tuple
    dst_allowed: frozenset
    checked_to: int
    definitive: bool
    holds: bool
    fail_degree: int | None = None
    per_degree: dict = dc_field(default_factory=dict)

    @property
    def holds_bounded(self):
        return self.holds

    def as_dict(self):
        return {
            "src_allowed": sorted(self.src_allowed),
            "prefix": list(self.prefix),
            "dst_allowed": sorted(self.dst_allowed),
            "checked_to": self.checked_to,
            "definitive": self.definitive,
            "holds": self.holds,
            "fail_degree": self.fail_degree,
        }


def left_ideal_contains(dual, src_allowed, prefix, dst_allowed, lmax):
    """Decide degree by degree whether prefix . L_src is contained in L_dst.

    L_E is the left ideal of the dual algebra generated by the dual variables
    with indices outside E.  The empty-prefix case is decided exactly on
    generators; with a nonempty prefix the answer is a bounded certificate
    (holds up to lmax) or a definitive failure with its witness degree.
    """
    src_allowed = frozenset(src_allowed)
    dst_allowed = frozenset(dst_allowed)
    prefix = tuple(prefix)
    assert len(prefix) <= 2, "only one- and two-letter prefixes occur"
    if not prefix:
        holds = dst_allowed <= src_allowed
        return ContainmentReport(src_allowed, prefix, dst_allowed, lmax, True, holds,
                                 None if holds else 1)
    src_q = dual.quotient(src_allowed)
    dst_q = dual.quotient(dst_allowed)
    per_degree = {}
    for d in range(1, lmax + 1):
        top = dst_q.component(d + len(prefix))
        ok = True
        for f in top.rows:
            g = f
            deg = d + len(prefix)
            for t in prefix:
                g = dual.contract(g, deg, t, slot="first")
                deg -= 1
            if not src_q.component(d).contains(g):
                ok = False
                break
        per_degree[d] = ok
        if not ok:
            return ContainmentReport(src_allowed, prefix, dst_allowed, lmax, True, False,
                                     d, per_degree)
    return ContainmentReport(src_allowed, prefix, dst_allowed, lmax, False, True,
                             None, per_degree)
