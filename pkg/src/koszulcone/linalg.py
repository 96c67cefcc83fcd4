"""Exact linear algebra over prime fields F_p and the rationals.

Everything downstream (graded bases, dual components, differentials, homology
ranks) reduces to the operations here, so exactness is non-negotiable: prime
field elements are Python ints kept in [0, p), rational entries are
fractions.Fraction.  Matrices are plain lists of rows at the API boundary.

Elimination over F_p is vectorized through numpy int64 (pivoting products stay
below 2**63 because p is capped), the rational path runs fraction-free
(Bareiss) forward elimination on denominator-cleared rows before normalizing
to the reduced echelon form.  Both paths produce the same canonical RREF, so
every Subspace has a unique representation.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import MismatchedAmbient

# int64 products p^2 * n_cols must stay below 2**63 during elimination
MAX_PRIME = 1 << 20


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """Arithmetic in F_p with int representatives in [0, p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p > MAX_PRIME:
            raise ValueError(f"prime {p} exceeds supported bound {MAX_PRIME}")
        self.char = p

    def __repr__(self):
        return f"GF({self.char})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("GF", self.char))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def of(self, n):
        if isinstance(n, Fraction):
            return self.mul(self.of(n.numerator), self.inv(self.of(n.denominator)))
        return n % self.char

    def add(self, a, b):
        return (a + b) % self.char

    def sub(self, a, b):
        return (a - b) % self.char

    def mul(self, a, b):
        return (a * b) % self.char

    def neg(self, a):
        return (-a) % self.char

    def inv(self, a):
        if a % self.char == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.char - 2, self.char)

    def format(self, a):
        return str(a % self.char)

    def parse(self, s):
        return int(s) % self.char

    # -- elimination (numpy fast path) ------------------------------------

    def rref(self, rows, ncols):
        if not rows:
            return [], []
        p = self.char
        m = np.array(rows, dtype=np.int64) % p
        nrows = m.shape[0]
        pivots = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            nz = np.nonzero(m[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                m[[r, i]] = m[[i, r]]
            m[r] = (m[r] * pow(int(m[r, c]), p - 2, p)) % p
            others = np.nonzero(m[:, c])[0]
            others = others[others != r]
            if others.size:
                m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
            pivots.append(c)
            r += 1
        return [[int(x) for x in row] for row in m[:r]], pivots


class RationalField:
    """Exact rational arithmetic; elimination is fraction-free (Bareiss)."""

    char = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def format(self, a):
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}" if a.denominator != 1 else str(a.numerator)

    def parse(self, s):
        return Fraction(s)

    def rref(self, rows, ncols):
        if not rows:
            return [], []
        # clear denominators row by row; row spans are unchanged
        work = []
        for row in rows:
            fr = [Fraction(x) for x in row]
            lcm = 1
            for x in fr:
                if x:
                    lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
            work.append([int(x * lcm) for x in fr])
        echelon, pivots = _bareiss_forward(work, ncols)
        # normalize + back-eliminate with exact fractions
        rowsf = [[Fraction(x) for x in row] for row in echelon]
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            lead = rowsf[r][c]
            rowsf[r] = [x / lead for x in rowsf[r]]
            for rr in range(r):
                f = rowsf[rr][c]
                if f:
                    rowsf[rr] = [a - f * b for a, b in zip(rowsf[rr], rowsf[r])]
        return rowsf, pivots


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _bareiss_forward(m, ncols):
    """Fraction-free forward elimination on integer rows.

    Returns (echelon_rows, pivot_columns); every division is exact, which
    keeps intermediate entries bounded by minor determinants.
    """
    m = [row[:] for row in m]
    nrows = len(m)
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            if any(m[i]):
                mic = m[i][c]
                mrc = m[r][c]
                m[i] = [(mrc * m[i][j] - mic * m[r][j]) // prev for j in range(ncols)]
        prev = m[r][c]
        pivots.append(c)
        r += 1
    return [m[i] for i in range(r)], pivots


QQ = RationalField()


def GF(p):
    return PrimeField(p)


class Subspace:
    """A subspace of k^ambient held as a canonical reduced-row-echelon basis.

    The representation is unique for a given subspace, so equality of
    subspaces is equality of basis rows.
    """

    __slots__ = ("field", "ambient", "rows", "pivots", "_np")

    def __init__(self, field, ambient, rows, pivots):
        self.field = field
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots
        self._np = None

    @classmethod
    def from_rows(cls, field, rows, ambient):
        rref, pivots = field.rref(list(rows), ambient)
        return cls(field, ambient, rref, pivots)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, [], [])

    @classmethod
    def full(cls, field, ambient):
        one, z = field.one, field.zero
        rows = [[one if j == i else z for j in range(ambient)] for i in range(ambient)]
        return cls(field, ambient, rows, list(range(ambient)))

    @property
    def dim(self):
        return len(self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.field == other.field
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def _np_rows(self):
        if self._np is None:
            self._np = np.array(self.rows, dtype=np.int64)
        return self._np

    def reduce(self, vec):
        """Reduce vec modulo the basis rows.

        Returns (residual, coeffs) with vec = coeffs . rows + residual and
        residual zero on every pivot column.
        """
        fld = self.field
        if not self.rows:
            return list(vec), []
        if isinstance(fld, PrimeField):
            p = fld.char
            v = np.array(vec, dtype=np.int64) % p
            coeffs = v[self.pivots].copy()
            if coeffs.any():
                v = (v - coeffs @ self._np_rows()) % p
            return [int(x) for x in v], [int(x) for x in coeffs]
        v = list(vec)
        coeffs = []
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            coeffs.append(f)
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v, coeffs

    def contains(self, vec):
        residual, _ = self.reduce(vec)
        return not any(residual)

    def coords_of(self, vec):
        """Coordinates of vec over the echelon basis, or None if outside."""
        residual, coeffs = self.reduce(vec)
        if any(residual):
            return None
        return coeffs

    def contains_space(self, other):
        return all(self.contains(r) for r in other.rows)


def echelonize(field, rows, ncols):
    """Reduced row echelon form with rank, pivot columns and kernel.

    Args:
        field: PrimeField or RationalField.
        rows: matrix as a list of rows (may be empty).
        ncols: number of columns (needed when rows is empty).

    Returns:
        (rref_rows, rank, pivot_columns, kernel) where kernel is the Subspace
        {v : rows . v = 0} of k^ncols in canonical echelon form.
    """
    rref, pivots = field.rref(list(rows), ncols)
    kernel = _kernel_from_rref(field, rref, pivots, ncols)
    return rref, len(pivots), pivots, kernel


def _kernel_from_rref(field, rref, pivots, ncols):
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    rows = []
    one, z = field.one, field.zero
    for f in free:
        v = [z] * ncols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = field.neg(rref[r][f])
        rows.append(v)
    return Subspace.from_rows(field, rows, ncols)


def kernel(field, rows, ncols):
    return echelonize(field, rows, ncols)[3]


def rank(field, rows, ncols):
    if not rows:
        return 0
    return len(field.rref(list(rows), ncols)[1])


def transpose(rows, ncols):
    return [[row[c] for row in rows] for c in range(ncols)]


def matmul(field, a, b, bcols):
    """Exact matrix product of row-lists a (m x k) and b (k x bcols)."""
    if isinstance(field, PrimeField):
        p = field.char
        if not a or not b:
            return [[0] * bcols for _ in a]
        aa = np.array(a, dtype=np.int64) % p
        bb = np.array(b, dtype=np.int64) % p
        out = (aa @ bb) % p
        return [[int(x) for x in row] for row in out]
    out = []
    for row in a:
        acc = [field.zero] * bcols
        for x, brow in zip(row, b):
            if x:
                for j in range(bcols):
                    if brow[j]:
                        acc[j] = field.add(acc[j], field.mul(x, brow[j]))
        out.append(acc)
    return out


def intersect_subspaces(spaces, ambient_dim=None, field=None):
    """Canonical echelon basis of the intersection of the given subspaces.

    The intersection of an empty list is the full ambient space, so
    ambient_dim (and a field) is required in that case.

    Raises:
        MismatchedAmbient: if the ambient dimensions differ.
    """
    spaces = list(spaces)
    if not spaces:
        if ambient_dim is None:
            raise MismatchedAmbient("empty intersection needs an explicit ambient dimension")
        return Subspace.full(field if field is not None else _DEFAULT_FIELD, ambient_dim)
    ambient = spaces[0].ambient
    field = spaces[0].field
    for s in spaces[1:]:
        if s.ambient != ambient or s.field != field:
            raise MismatchedAmbient(f"ambient {s.ambient} != {ambient}")
    if ambient_dim is not None and ambient_dim != ambient:
        raise MismatchedAmbient(f"ambient {ambient} != requested {ambient_dim}")
    acc = spaces[0]
    for s in spaces[1:]:
        acc = _intersect_pair(acc, s)
    return acc


def _intersect_pair(u, w):
    field, ambient = u.field, u.ambient
    if u.dim == ambient:
        return w
    if w.dim == ambient:
        return u
    if u.dim == 0 or w.dim == 0:
        return Subspace.zero(field, ambient)
    # v in both spans iff v = cu . U = cw . W; solve for (cu, cw) in the
    # kernel of the stacked transpose [U^T | -W^T]
    stacked = []
    for c in range(ambient):
        row = [r[c] for r in u.rows] + [field.neg(r[c]) for r in w.rows]
        stacked.append(row)
    ker = kernel(field, stacked, u.dim + w.dim)
    combos = [krow[: u.dim] for krow in ker.rows]
    rows = matmul(field, combos, u.rows, ambient)
    return Subspace.from_rows(field, rows, ambient)


def solve_membership(field, target, generator_rows):
    """Canonical expression of target over the span of generator_rows.

    Returns the unique coefficient vector whose free coordinates (non-pivot
    unknowns, in generator order) are zero, or None when target is outside
    the row span.  Same input, same witness: the choice is deterministic.
    """
    gens = list(generator_rows)
    ngens = len(gens)
    if not any(target):
        return [field.zero] * ngens
    if ngens == 0:
        return None
    ambient = len(target)
    aug = []
    for c in range(ambient):
        aug.append([row[c] for row in gens] + [target[c]])
    rref, pivots = field.rref(aug, ngens + 1)
    if ngens in pivots:
        return None
    coeffs = [field.zero] * ngens
    for r, c in enumerate(pivots):
        coeffs[c] = rref[r][ngens]
    return coeffs


_DEFAULT_FIELD = GF(101)
