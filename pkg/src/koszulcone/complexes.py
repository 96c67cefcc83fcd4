"""Graded free complexes: Priddy, sub-Priddy, mapping cones, closed forms.

A ChainComplex holds labeled free modules per homological degree and
differential matrices with homogeneous algebra-element entries.  Everything
is verified exactly: d.d = 0 as symbolic matrix identities, minimality as a
constant-term scan, and homology by rank computations on the degreewise
k-matrices.

Two resolution paths exist for an ideal with linear quotients: the generic
iterated mapping cone, whose comparison maps are lifted degreewise through
canonical echelon solves, and the closed-form differential available under a
regular ordering.  The generic path is the in-house oracle for the closed
form: ranks must agree and both must verify.

Cone sign conventions: cone(psi: K -> F)_l = F_l (+) K_{l-1} with
differential (f, k) |-> (dF f + psi k, -dK k); the shifted copy carries the
negated differential, which matches the closed form's leading minus sign.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .errors import (
    CalibrationFailure,
    ClosureFailure,
    LiftingFailure,
    NonMinimalCone,
    NotMinimal,
    NotRegular,
    RegularOrderingViolation,
)
from .linalg import rank as mat_rank

__all__ = [
    "Generator",
    "ChainComplex",
    "BettiTable",
    "VerifyReport",
    "priddy_complex",
    "koszulness_certificate",
    "sub_priddy_complex",
    "iterated_mapping_cone",
    "closed_form_resolution",
    "comparison_maps",
    "verify_chain_map",
    "verify_complex",
    "homology_window",
    "linear_strand",
    "betti_table",
    "complex_to_json",
    "complex_from_json",
]


@dataclass(frozen=True)
class Generator:
    """A labeled free-module basis element.

    gen is the 1-based ideal-generator index (None for complexes not indexed
    by generators), dual_index the position in the attached dual-space basis,
    and dual_vector the ambient tensor realization of that basis vector.
    """

    gen: int | None
    dual_index: int
    internal_degree: int
    dual_vector: tuple


class ChainComplex:
    """modules[l] lists Generators; diffs[l] maps (row, col) -> AlgebraElement."""

    def __init__(self, algebra, modules, diffs, kind="complex"):
        self.algebra = algebra
        self.modules = modules
        self.diffs = diffs
        self.kind = kind

    @property
    def length(self):
        return len(self.modules) - 1

    def rank(self, l):
        if l < 0 or l >= len(self.modules):
            return 0
        return len(self.modules[l])

    def ranks(self):
        return [len(m) for m in self.modules]

    def graded_ranks(self):
        out = {}
        for l, mod in enumerate(self.modules):
            for g in mod:
                out[(l, g.internal_degree)] = out.get((l, g.internal_degree), 0) + 1
        return out

    def entry(self, l, row, col):
        return self.diffs[l].get((row, col))

    # -- exact verification -------------------------------------------------

    def d_squared_witness(self):
        """None when d.d = 0 holds exactly, else (l, row, col) of a violation."""
        A = self.algebra
        for l in range(2, len(self.modules)):
            d1 = self.diffs[l]
            d0 = self.diffs[l - 1]
            by_col = {}
            for (g, c), a in d1.items():
                by_col.setdefault(c, []).append((g, a))
            for c, col_entries in by_col.items():
                acc = {}
                for g, a in col_entries:
                    for (r, gg), b in d0.items():
                        if gg != g:
                            continue
                        prod = A.multiply(b, a)
                        if prod.is_zero:
                            continue
                        # keyed by degree too, so inhomogeneous (corrupted)
                        # inputs are diagnosed instead of crashing
                        key = (r, prod.degree)
                        acc[key] = A.add(acc[key], prod) if key in acc else prod
                for (r, _), val in acc.items():
                    if not val.is_zero:
                        return (l, r, c)
        return None

    def minimality_witness(self):
        """None when no differential entry has a constant term."""
        for l in range(1, len(self.modules)):
            for (r, c), a in self.diffs[l].items():
                if a.degree == 0 and not a.is_zero:
                    return (l, r, c)
        return None

    # -- degreewise k-linear data ---------------------------------------------

    def block_dims(self, l, d):
        A = self.algebra
        return [A.dim(d - g.internal_degree) for g in self.modules[l]]

    def degreewise_matrix(self, l, d):
        """The k-matrix of diff l in internal degree d (rows list, may be [])."""
        A = self.algebra
        fld = A.field
        src_dims = self.block_dims(l, d)
        tgt_dims = self.block_dims(l - 1, d)
        src_off = _offsets(src_dims)
        tgt_off = _offsets(tgt_dims)
        nrows, ncols = sum(tgt_dims), sum(src_dims)
        mat = [[fld.zero] * ncols for _ in range(nrows)]
        for (r, c), a in self.diffs[l].items():
            e = d - self.modules[l][c].internal_degree
            if e < 0 or src_dims[c] == 0 or tgt_dims[r] == 0:
                continue
            cols = A.multiplication_columns(a, e)
            ro, co = tgt_off[r], src_off[c]
            for j, colvec in enumerate(cols):
                for i, x in enumerate(colvec):
                    if x:
                        mat[ro + i][co + j] = x
        return mat, nrows, ncols

    def homology_rank(self, i, d):
        """dim over k of the degree-d part of H_i (needs diffs i and i+1)."""
        dims = self.block_dims(i, d)
        total = sum(dims)
        if total == 0:
            return 0
        fld = self.algebra.field
        rank_out = 0
        if i >= 1:
            m, _, nc = self.degreewise_matrix(i, d)
            rank_out = mat_rank(fld, m, nc) if m else 0
        rank_in = 0
        if i + 1 < len(self.modules):
            m, _, nc = self.degreewise_matrix(i + 1, d)
            rank_in = mat_rank(fld, m, nc) if m else 0
        return total - rank_out - rank_in


def _offsets(dims):
    out = []
    acc = 0
    for x in dims:
        out.append(acc)
        acc += x
    return out


# -- Priddy and sub-Priddy complexes -----------------------------------------


def _trace_differential(algebra, source, target, act_matrices):
    """Entries of the trace-element differential from act matrices per variable."""
    fld = algebra.field
    entries = {}
    for j, act in enumerate(act_matrices):
        xj = algebra.var(j)
        for r in range(len(target)):
            for c in range(len(source)):
                coeff = act[r][c]
                if not coeff:
                    continue
                term = algebra.scale(coeff, xj)
                if (r, c) in entries:
                    entries[(r, c)] = algebra.add(entries[(r, c)], term)
                else:
                    entries[(r, c)] = term
    return {k: v for k, v in entries.items() if not v.is_zero}


def priddy_complex(dual, hmax):
    """A (x) dual-component complex with the trace differential; d.d=0 asserted."""
    A = dual.algebra
    modules = []
    for l in range(hmax + 1):
        comp = dual.component(l)
        modules.append([Generator(None, i, l, tuple(row))
                        for i, row in enumerate(comp.rows)])
    diffs = [None]
    for l in range(1, hmax + 1):
        acts = [dual.act_matrix(l, j, slot="first") for j in range(A.n)]
        diffs.append(_trace_differential(A, modules[l], modules[l - 1], acts))
    c = ChainComplex(A, modules, diffs, kind="priddy")
    if c.d_squared_witness() is not None:
        raise CalibrationFailure("trace differential failed d.d = 0 on the full dual")
    return c


def sub_priddy_complex(dual, allowed, hmax, shift=0, gen=None, check_d2=True):
    """The quotient-dual subcomplex; closure of the action is asserted.

    shift raises every internal degree (used when the complex enters a cone
    against multiplication by a degree-shift generator); gen labels the
    basis elements with an ideal-generator index.
    """
    A = dual.algebra
    quot = dual.quotient(allowed)
    modules = []
    for l in range(hmax + 1):
        comp = quot.component(l)
        modules.append([Generator(gen, i, l + shift, tuple(row))
                        for i, row in enumerate(comp.rows)])
    diffs = [None]
    for l in range(1, hmax + 1):
        acts = [quot.act_matrix(l, j, slot="first") for j in range(A.n)]
        diffs.append(_trace_differential(A, modules[l], modules[l - 1], acts))
    c = ChainComplex(A, modules, diffs, kind="sub_priddy")
    if check_d2 and c.d_squared_witness() is not None:
        raise ClosureFailure("sub-Priddy differential failed d.d = 0")
    return c


def koszulness_certificate(dual, hmax, dmax):
    """Bounded acyclicity certificate for the Priddy complex.

    Zero homology in homological degrees 1..hmax-1 and internal degrees up to
    dmax certifies Koszulness in that window; any nonzero homology is a
    definitive witness against Koszulness.
    """
    c = priddy_complex(dual, hmax)
    ranks = {}
    passed = True
    witness = None
    for i in range(1, hmax):
        for d in range(0, dmax + 1):
            h = c.homology_rank(i, d)
            ranks[(i, d)] = h
            if h != 0 and passed:
                passed = False
                witness = (i, d, h)
    # augmentation sanity: H_0 is the ground field in degree 0
    h0 = {d: c.homology_rank(0, d) for d in range(0, dmax + 1)}
    h0_ok = h0.get(0, 0) == 1 and all(v == 0 for d, v in h0.items() if d > 0)
    return {
        "complex": c,
        "passed": passed and h0_ok,
        "witness": witness,
        "homology": ranks,
        "h0_ok": h0_ok,
        "ranks": c.ranks(),
    }


# -- iterated mapping cone ------------------------------------------------------


def _base_complex(algebra, hmax):
    modules = [[Generator(None, 0, 0, (algebra.field.one,))]]
    modules += [[] for _ in range(hmax)]
    diffs = [None] + [{} for _ in range(hmax)]
    return ChainComplex(algebra, modules, diffs, kind="resolution")


def _solve_many(field, mat_rows, nrows, ncols, targets):
    """Canonical solutions of mat . w = t for each target column.

    Returns a list of solution vectors (free coordinates zero) or raises
    LiftingFailure naming the first unsolvable target.
    """
    ntargets = len(targets)
    aug = []
    for r in range(nrows):
        aug.append([mat_rows[r][c] for c in range(ncols)] + [t[r] for t in targets])
    rref, pivots = field.rref(aug, ncols + ntargets)
    sols = [[field.zero] * ncols for _ in range(ntargets)]
    for r, c in enumerate(pivots):
        if c >= ncols:
            # a pivot inside the target block: that column is inconsistent
            bad = c - ncols
            raise LiftingFailure(f"no lift exists for target column {bad}")
        row = rref[r]
        for k in range(ntargets):
            sols[k][c] = row[ncols + k]
    return sols


def _lift_comparison(F, K, m_element):
    """Chain-map lift of multiplication by a generator, degree by degree.

    psi[0] is the homothety entry; psi[l] maps K_l into F_l solving
    dF . psi_l = psi_{l-1} . dK with canonical echelon solutions, batched
    over the basis of K_l.
    """
    A = F.algebra
    fld = A.field
    hmax = len(K.modules) - 1
    psi = [{(0, 0): m_element}]
    for l in range(1, hmax):
        src = K.modules[l]
        if not src:
            psi.append({})
            continue
        # K already carries the generator's degree shift in its labels
        D = src[0].internal_degree
        # right-hand sides: psi_{l-1} o dK, flattened in internal degree D
        tgt_dims = F.block_dims(l - 1, D)
        tgt_off = _offsets(tgt_dims)
        targets = []
        for c in range(len(src)):
            acc = {}
            for (g, cc), a in K.diffs[l].items():
                if cc != c:
                    continue
                for (r, gg), b in psi[l - 1].items():
                    if gg != g:
                        continue
                    prod = A.multiply(b, a)
                    if prod.is_zero:
                        continue
                    acc[r] = A.add(acc[r], prod) if r in acc else prod
            vec = [fld.zero] * sum(tgt_dims)
            for r, elem in acc.items():
                for i, x in enumerate(elem.coords):
                    vec[tgt_off[r] + i] = x
            targets.append(vec)
        mat, nrows, ncols = F.degreewise_matrix(l, D)
        if ncols == 0:
            if any(any(t) for t in targets):
                raise LiftingFailure(f"nonzero lift target into a zero module at degree {l}")
            psi.append({})
            continue
        if not mat:
            mat = [[fld.zero] * ncols for _ in range(nrows)]
        sols = _solve_many(fld, mat, nrows, ncols, targets)
        src_dims = F.block_dims(l, D)
        src_off = _offsets(src_dims)
        entries = {}
        for c, w in enumerate(sols):
            for r, gen in enumerate(F.modules[l]):
                e = D - gen.internal_degree
                if e < 0 or src_dims[r] == 0:
                    continue
                coords = w[src_off[r] : src_off[r] + src_dims[r]]
                if any(coords):
                    entries[(r, c)] = A.element(e, coords)
        psi.append(entries)
    return psi


def _cone(F, K, psi, hmax):
    """cone(psi: K -> F): modules F_l (+) K_{l-1}, K-part differential negated."""
    A = F.algebra
    modules = []
    diffs = [None]
    for l in range(hmax + 1):
        modules.append(list(F.modules[l]) + (list(K.modules[l - 1]) if l >= 1 else []))
    for l in range(1, hmax + 1):
        entries = dict(F.diffs[l])
        col_off = len(F.modules[l])
        row_off_f = 0
        row_off_k = len(F.modules[l - 1])
        if l - 1 >= 0:
            for (r, c), a in psi[l - 1].items():
                entries[(row_off_f + r, col_off + c)] = a
        if l >= 2:
            for (r, c), a in K.diffs[l - 1].items():
                entries[(row_off_k + r, col_off + c)] = A.scale(A.field.neg(A.field.one), a)
        diffs.append(entries)
    return ChainComplex(A, modules, diffs, kind="resolution")


def iterated_mapping_cone(ideal, hmax, check=True):
    """Resolution of A/J by successive cones over canonical chain-map lifts.

    Requires linear quotients (the caller is expected to have checked; the
    colon variable sets are recomputed here).  The resulting labeled basis is
    gen-major: homological degree l holds m_i (x) (quotient-dual basis of
    degree l-1) for each generator i in order.
    """
    A = ideal.algebra
    dual = ideal.dual
    F = _base_complex(A, hmax)
    for i in range(1, ideal.r + 1):
        allowed = ideal.colon_vars(i).variables
        K = sub_priddy_complex(dual, allowed, hmax, shift=ideal.degs[i - 1], gen=i)
        psi = _lift_comparison(F, K, ideal.gen_elements[i - 1])
        F = _cone(F, K, psi, hmax)
    if check:
        w = F.d_squared_witness()
        assert w is None, f"cone differential broke d.d = 0 at {w}"
        m = F.minimality_witness()
        if m is not None:
            raise NonMinimalCone(f"constant entry at {m}")
    return F


# -- closed-form resolution -------------------------------------------------------


def closed_form_resolution(ideal, hmax, check_regular=True, check_to=4,
                           self_term_mode="strict"):
    """The explicit differential for ideals admitting a regular ordering.

    d(m_k (x) f) = -sum_s x_s (m_k (x) f.x_s^*)
                   + sum_{s; j < k} c_j(x_s m_k) (m_j (x) f.x_s^*)
    for positive dual degree, and d(m_k (x) 1) = m_k: the mapping cone with
    its comparison map written out.  Terms landing outside a quotient-dual
    basis are accumulated in ambient tensor coordinates per target generator;
    a nonzero residual is a regular-ordering violation.

    A cross term m_j (x) f.x_s^* is a valid symbol only when the contraction
    lies in the target quotient dual; invalid symbols are zero by definition
    (as in the classical closed form, where a symbol with out-of-range support
    is zero).  The well-definedness lemma is what makes dropping them
    consistent, and it is enforced here as the exact d.d = 0 check, which
    raises RegularOrderingViolation on failure.

    self_term_mode="printed" adds the j = k convention terms +x_s (m_k (x)
    f.x_s^*) for x_s m_k outside the earlier prefix, cancelling those
    self-terms.  Over a polynomial ring the two modes agree identically
    (those contractions vanish on the quotient dual); in general only the
    strict mode yields an exact complex, so "printed" exists as a diagnostic.
    """
    assert self_term_mode in ("strict", "printed")
    if check_regular:
        rep = ideal.check_regular_ordering(check_to=check_to)
        if not rep.passed:
            raise NotRegular(f"regular-ordering check failed: {rep.details[:1]}")
    A = ideal.algebra
    fld = A.field
    dual = ideal.dual
    n = A.n
    quots = [dual.quotient(ideal.colon_vars(i).variables) for i in range(1, ideal.r + 1)]
    modules = [[Generator(None, 0, 0, (fld.one,))]]
    for l in range(1, hmax + 1):
        mod = []
        for i in range(1, ideal.r + 1):
            comp = quots[i - 1].component(l - 1)
            mod.extend(Generator(i, t, ideal.degs[i - 1] + l - 1, tuple(row))
                       for t, row in enumerate(comp.rows))
        modules.append(mod)
    row_index = [None] * (hmax + 1)
    for l in range(hmax + 1):
        row_index[l] = {(g.gen, g.dual_index): r for r, g in enumerate(modules[l])}

    diffs = [None]
    for l in range(1, hmax + 1):
        entries = {}
        for c, gen in enumerate(modules[l]):
            k = gen.gen
            if l == 1:
                entries[(0, c)] = ideal.gen_elements[k - 1]
                continue
            f = list(gen.dual_vector)
            for s in range(n):
                contracted = dual.contract(f, l - 1, s, slot="first")
                if not any(contracted):
                    continue
                terms = [(k, A.scale(fld.neg(fld.one), A.var(s)))]
                lower = ideal.decomposition.times_var(s, k)
                if self_term_mode == "strict":
                    lower = [(j, cf) for (j, cf) in lower if j < k]
                terms += lower
                for j, coeff in terms:
                    comp = quots[j - 1].component(l - 2)
                    coords = comp.coords_of(contracted)
                    if coords is None:
                        if j == k:
                            raise ClosureFailure(
                                f"self-term contraction left the quotient dual at "
                                f"generator {k}, variable {s}"
                            )
                        # invalid symbol: zero by definition; the
                        # well-definedness lemma keeps d.d = 0 without it
                        continue
                    for t, x in enumerate(coords):
                        if not x:
                            continue
                        key = (row_index[l - 1][(j, t)], c)
                        term = A.scale(x, coeff)
                        if key in entries:
                            entries[key] = A.add(entries[key], term)
                        else:
                            entries[key] = term
        diffs.append({k2: v for k2, v in entries.items() if not v.is_zero})
    c = ChainComplex(A, modules, diffs, kind="resolution")
    w = c.d_squared_witness()
    if w is not None:
        raise RegularOrderingViolation(
            f"closed-form differential broke d.d = 0 at {w}", witness=w
        )
    return c


def comparison_maps(ideal, r, hmax):
    """The explicit chain map from the r-th sub-Priddy complex into the
    closed-form resolution of the previous prefix.

    psi_l(m_r (x) f) = sum over s and j < r of c_j(x_s m_r) (m_j (x) f.x_s^*).
    Returns (K, F, psi) with psi[l] an entry dict K_l -> F_l.
    """
    A = ideal.algebra
    fld = A.field
    dual = ideal.dual
    prefix = type(ideal)(A, ideal.gens[: r - 1]) if r > 1 else None
    F = closed_form_resolution(prefix, hmax, check_regular=False) if prefix else \
        _base_complex(A, hmax)
    allowed = ideal.colon_vars(r).variables
    K = sub_priddy_complex(dual, allowed, hmax, shift=ideal.degs[r - 1], gen=r)
    quots = [dual.quotient(ideal.colon_vars(i).variables) for i in range(1, r)]
    row_index = [
        {(g.gen, g.dual_index): idx for idx, g in enumerate(F.modules[l])}
        for l in range(hmax + 1)
    ]
    psi = []
    for l in range(0, hmax + 1):
        entries = {}
        if l == 0:
            entries[(0, 0)] = ideal.gen_elements[r - 1]
            psi.append(entries)
            continue
        for c, gen in enumerate(K.modules[l]):
            f = list(gen.dual_vector)
            for s in range(A.n):
                contracted = dual.contract(f, l, s, slot="first")
                if not any(contracted):
                    continue
                for j, coeff in ideal.decomposition.times_var(s, r):
                    if j >= r:
                        continue
                    comp = quots[j - 1].component(l - 1)
                    coords = comp.coords_of(contracted)
                    if coords is None:
                        # invalid symbol, zero by definition
                        continue
                    for t, x in enumerate(coords):
                        if not x:
                            continue
                        key = (row_index[l][(j, t)], c)
                        term = A.scale(x, coeff)
                        if key in entries:
                            entries[key] = A.add(entries[key], term)
                        else:
                            entries[key] = term
        psi.append({k2: v for k2, v in entries.items() if not v.is_zero})
    return K, F, psi


def verify_chain_map(F, K, psi, hmax):
    """Exact check of dF . psi_l = psi_{l-1} . dK for 1 <= l <= hmax."""
    A = F.algebra
    for l in range(1, hmax + 1):
        left = _compose(A, F.diffs[l], psi[l], len(F.modules[l - 1]))
        right = _compose(A, psi[l - 1], K.diffs[l], len(F.modules[l - 1]))
        if left != right:
            return False, l
    return True, None


def _compose(algebra, first_entries, second_entries, nrows):
    """Entry dict of (first o second) with exact algebra products."""
    out = {}
    by_col = {}
    for (r, c), a in first_entries.items():
        by_col.setdefault(c, []).append((r, a))
    for (g, c), b in second_entries.items():
        for r, a in by_col.get(g, ()):
            prod = algebra.multiply(a, b)
            if prod.is_zero:
                continue
            key = (r, c)
            out[key] = algebra.add(out[key], prod) if key in out else prod
    return {k: v for k, v in out.items() if not v.is_zero}


# -- verification, strands, Betti tables -----------------------------------------


@dataclass
class VerifyReport:
    d2_zero: bool
    minimal: bool
    homology: dict = dc_field(default_factory=dict)
    exact_positive: bool = True
    d2_witness: tuple | None = None
    minimality_witness: tuple | None = None

    @property
    def passed(self):
        return self.d2_zero and self.minimal and self.exact_positive

    def as_dict(self):
        return {
            "d2_zero": self.d2_zero,
            "minimal": self.minimal,
            "exact_in_positive_degrees": self.exact_positive,
            "homology_ranks": {f"{i},{d}": h for (i, d), h in sorted(self.homology.items())},
            "d2_witness": self.d2_witness,
            "minimality_witness": self.minimality_witness,
        }


def verify_complex(c, dmax):
    """d.d = 0, minimality, and homology ranks for 0 < i < length, d <= dmax."""
    d2w = c.d_squared_witness()
    mw = c.minimality_witness()
    homology = {}
    exact = True
    for i in range(1, c.length):
        for d in range(0, dmax + 1):
            h = c.homology_rank(i, d)
            homology[(i, d)] = h
            if h:
                exact = False
    return VerifyReport(d2w is None, mw is None, homology, exact, d2w, mw)


def homology_window(c, i_range, offsets=(0, 1)):
    """Homology ranks on the diagonals internal = initial + i + offset.

    The two-diagonal window characterizes linear strands of modules; it is
    also the bounded exactness statement for sub-Priddy complexes.
    """
    initial = min((g.internal_degree for g in c.modules[0]), default=0)
    out = {}
    for i in i_range:
        for j in offsets:
            out[(i, j)] = c.homology_rank(i, initial + i + j)
    return out


def ideal_resolution(c):
    """Truncate a resolution of A/J to the resolution of the ideal J.

    Drops homological degree zero and shifts: the generators of J become the
    new degree-zero module.
    """
    modules = [list(m) for m in c.modules[1:]]
    diffs = [None] + [dict(c.diffs[l]) for l in range(2, len(c.modules))]
    return ChainComplex(c.algebra, modules, diffs, kind=c.kind + "_ideal")


def linear_strand(c):
    """Restriction to basis elements of internal degree initial + homological degree."""
    mw = c.minimality_witness()
    if mw is not None:
        raise NotMinimal(f"constant differential entry at {mw}")
    initial = min((g.internal_degree for g in c.modules[0]), default=0)
    keep = []
    old_to_new = []
    for l, mod in enumerate(c.modules):
        sel = [i for i, g in enumerate(mod) if g.internal_degree == initial + l]
        keep.append(sel)
        old_to_new.append({i: k for k, i in enumerate(sel)})
    modules = [[c.modules[l][i] for i in keep[l]] for l in range(len(c.modules))]
    diffs = [None]
    for l in range(1, len(c.modules)):
        entries = {}
        for (r, cc), a in c.diffs[l].items():
            if cc in old_to_new[l] and r in old_to_new[l - 1]:
                entries[(old_to_new[l - 1][r], old_to_new[l][cc])] = a
        diffs.append(entries)
    return ChainComplex(c.algebra, modules, diffs, kind=c.kind + "_linear_strand")


@dataclass
class BettiTable:
    """Graded Betti numbers of the ideal and of the quotient module.

    ideal[(l, d)] counts degree-d generators of the l-th step of the minimal
    resolution of J (so d = l + deg for a generator of degree deg); module is
    the table of A/J (one homological shift up).  regularity is the maximal
    generator degree; linear_resolution flags equigenerated ideals.
    """

    ideal: dict
    module: dict
    regularity: int
    linear_resolution: bool

    def as_dict(self):
        return {
            "ideal": [[l, d, v] for (l, d), v in sorted(self.ideal.items())],
            "module": [[l, d, v] for (l, d), v in sorted(self.module.items())],
            "regularity": self.regularity,
            "linear_resolution": self.linear_resolution,
        }

    def text(self, level="ideal"):
        table = self.ideal if level == "ideal" else self.module
        if not table:
            return "(empty Betti table)"
        lmax = max(l for l, _ in table)
        qs = sorted({d - l for (l, d) in table})
        lines = []
        header = ["      "] + [f"{l:>6}" for l in range(lmax + 1)]
        lines.append("".join(header))
        totals = [sum(v for (l, d), v in table.items() if l == i) for i in range(lmax + 1)]
        lines.append("".join(["total:"] + [f"{t:>6}" for t in totals]))
        for q in qs:
            row = [f"{q:>5}:"]
            for l in range(lmax + 1):
                v = table.get((l, l + q), 0)
                row.append(f"{v:>6}" if v else "     .")
            lines.append("".join(row))
        return "\n".join(lines)


def betti_table(ideal, hmax):
    """Betti numbers from quotient-dual ranks, per the rank-sum formula.

    The l-th ideal-level Betti number in internal degree l + deg(m_i) sums the
    degree-l quotient-dual ranks over generators of that degree; the module
    table of A/J is the same data shifted one homological step.
    """
    dual = ideal.dual
    ideal_table = {}
    for i in range(1, ideal.r + 1):
        quot = dual.quotient(ideal.colon_vars(i).variables)
        q = ideal.degs[i - 1]
        for l in range(hmax + 1):
            rk = quot.rank(l)
            if rk:
                key = (l, l + q)
                ideal_table[key] = ideal_table.get(key, 0) + rk
    module_table = {(0, 0): 1}
    for (l, d), v in ideal_table.items():
        module_table[(l + 1, d)] = module_table.get((l + 1, d), 0) + v
    degs = set(ideal.degs)
    return BettiTable(
        ideal=ideal_table,
        module=module_table,
        regularity=ideal.max_degree,
        linear_resolution=len(degs) <= 1,
    )


def betti_from_complex(c):
    """Ideal-level Betti counts read off a resolution of A/J (shift by one)."""
    out = {}
    for l in range(1, len(c.modules)):
        for g in c.modules[l]:
            key = (l - 1, g.internal_degree)
            out[key] = out.get(key, 0) + 1
    return out


# -- serialization -----------------------------------------------------------------


def complex_to_json(c):
    fld = c.algebra.field
    doc = {
        "kind": c.kind,
        "field": getattr(fld, "char", 0),
        "length": c.length,
        "modules": [],
        "differentials": [],
    }
    for l, mod in enumerate(c.modules):
        doc["modules"].append({
            "hom_degree": l,
            "basis": [
                {
                    "generator_index": g.gen,
                    "dual_word": [[i, fld.format(x)] for i, x in enumerate(g.dual_vector) if x],
                    "dual_ambient": len(g.dual_vector),
                    "internal_degree": g.internal_degree,
                }
                for g in mod
            ],
        })
    for l in range(1, len(c.modules)):
        entries = [
            {
                "row": r,
                "col": cc,
                "coefficient": {
                    "degree": a.degree,
                    "coords": [fld.format(x) for x in a.coords],
                },
            }
            for (r, cc), a in sorted(c.diffs[l].items())
        ]
        doc["differentials"].append({"hom_degree": l, "entries": entries})
    return doc


def complex_from_json(algebra, doc):
    fld = algebra.field
    modules = []
    for mod in doc["modules"]:
        gens = []
        for b in mod["basis"]:
            vec = [fld.zero] * b["dual_ambient"]
            for i, s in b["dual_word"]:
                vec[int(i)] = fld.parse(s)
            gens.append(Generator(b["generator_index"], len(gens),
                                  b["internal_degree"], tuple(vec)))
        modules.append(gens)
    diffs = [None]
    for dd in doc["differentials"]:
        entries = {}
        for e in dd["entries"]:
            coords = tuple(fld.parse(s) for s in e["coefficient"]["coords"])
            entries[(e["row"], e["col"])] = algebra.element(e["coefficient"]["degree"], coords)
        diffs.append(entries)
    return ChainComplex(algebra, modules, diffs, kind=doc.get("kind", "complex"))


def complex_json_text(c):
    return json.dumps(complex_to_json(c), sort_keys=True, indent=1)
