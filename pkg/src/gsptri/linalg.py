"""Dense exact matrices and fraction-free linear algebra.

Matrix entries are duck typed: plain :class:`~fractions.Fraction`,
:class:`~gsptri.laurent.LaurentElement`, or
:class:`~gsptri.laurent.FractionElement` all work, as long as a single matrix
is homogeneous.  Rank over the fraction field of the Laurent ring is computed
by fraction-free Bareiss elimination after clearing row denominators.

Pivoting rule (fixed so reports are byte stable): columns are scanned left to
right, and within a column the first not-yet-used row from the top is taken.
Linear solves for membership witnesses instead prefer, per elimination row,
the unused column whose entry has the fewest Laurent terms (ties broken by
column index); this keeps pivots at unit-monomial entries whenever possible
so that solution denominators stay monomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .laurent import FractionElement, LaurentElement, exact_divide


class ExactMatrix:
    """A dense rows x cols matrix with exact ring entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = [list(row) for row in entries]
        if not entries or not entries[0]:
            raise ValueError("matrix must have at least one row and column")
        cols = len(entries[0])
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged rows")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> "ExactMatrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __mul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = None
                for k in range(self.cols):
                    term = self.entries[i][k] * other.entries[k][j]
                    acc = term if acc is None else acc + term
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def __neg__(self):
        return ExactMatrix([[-x for x in row] for row in self.entries])

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[x * c for x in row] for row in self.entries])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2)
        )

    def map(self, fn) -> "ExactMatrix":
        return ExactMatrix([[fn(x) for x in row] for row in self.entries])

    def flatten(self):
        return [x for row in self.entries for x in row]

    def __repr__(self):
        body = "\n".join("  [" + ", ".join(repr(x) for x in row) + "]" for row in self.entries)
        return f"ExactMatrix {self.rows}x{self.cols}\n{body}"


# -- coercion helpers --------------------------------------------------------


def as_laurent(x, nvars: int) -> LaurentElement:
    if isinstance(x, LaurentElement):
        return x
    if isinstance(x, FractionElement):
        return x.as_laurent()
    return LaurentElement.constant(x, nvars)


def laurent_row(row, nvars: int):
    """Coerce a row to LaurentElements, clearing FractionElement denominators.

    Row scaling by a nonzero element does not change rank or span, so a row of
    fractions is multiplied through by the product of its distinct denominators.
    """
    fracs = []
    for x in row:
        if isinstance(x, FractionElement):
            fracs.append(x)
        else:
            fracs.append(FractionElement(as_laurent(x, nvars)))
    dens = []
    for e in fracs:
        if not e.is_laurent() and all(d != e.den for d in dens):
            dens.append(e.den)
    out = []
    for e in fracs:
        cleared = e.num
        for d in dens:
            if e.is_laurent() or d != e.den:
                cleared = cleared * d
        out.append(cleared)
    return out


def infer_nvars(rows) -> int:
    for row in rows:
        for x in row:
            if isinstance(x, (LaurentElement, FractionElement)):
                return x.nvars
    return 0


def normalize_laurent_row(row):
    """Scale a Laurent row to integer content 1 and monomial content 0.

    Multiplies by a unit (nonzero rational times a monomial), so the row
    spans the same line; used to control entry growth during elimination.
    """
    num_gcd = 0
    den_lcm = 1
    mins = None
    for x in row:
        for exps, coeff in x.terms.items():
            num_gcd = gcd(num_gcd, coeff.numerator)
            den_lcm = den_lcm * coeff.denominator // gcd(den_lcm, coeff.denominator)
            if mins is None:
                mins = list(exps)
            else:
                for i, e in enumerate(exps):
                    if e < mins[i]:
                        mins[i] = e
    if mins is None:
        return row
    factor = Fraction(den_lcm, num_gcd)
    shift = tuple(-e for e in mins)
    return [(x * factor).shift(shift) for x in row]


# -- rank ---------------------------------------------------------------------


def bareiss_rank(rows) -> int:
    """Rank of a matrix of LaurentElements by fraction-free Bareiss elimination.

    Every intermediate entry is a minor of the input, and the division by the
    previous pivot is exact in the Laurent ring.
    """
    a = [list(row) for row in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    prev = None
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if a[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                val = a[r][c] * a[i][j] - a[i][c] * a[r][j]
                if prev is not None:
                    q = exact_divide(val, prev)
                    if q is None:
                        raise ArithmeticError("Bareiss division was not exact")
                    val = q
                a[i][j] = val
            a[i][c] = LaurentElement.zero(a[i][c].nvars)
        prev = a[r][c]
        r += 1
        if r == nrows:
            break
    return r


def rank_over_fraction_field(matrix) -> int:
    """Rank over the fraction field of the Laurent ring (empty input -> 0)."""
    if isinstance(matrix, ExactMatrix):
        rows = matrix.entries
    else:
        rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    nvars = infer_nvars(rows)
    cleared = [laurent_row(row, nvars) for row in rows]
    return bareiss_rank(cleared)


class EchelonTracker:
    """Incremental rank of a growing family of Laurent vectors.

    Stored rows are fraction free and kept mutually reduced: each stored row
    vanishes at every other stored row's pivot column, so feeding vectors in
    any order yields the exact rank.  Rows are normalized after each update
    (integer content 1, monomial content 0) to control growth.
    """

    def __init__(self, width: int):
        self.width = width
        self.pivots = []  # sorted list of (pivot_col, row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, vec) -> bool:
        """Reduce vec against the current rows; returns True if rank grew."""
        vec = list(vec)
        if len(vec) != self.width:
            raise ValueError("vector width mismatch")
        for col, row in self.pivots:
            c = vec[col]
            if c:
                lead = row[col]
                vec = [lead * a - c * b for a, b in zip(vec, row)]
        pivot_col = next((i for i, x in enumerate(vec) if x), None)
        if pivot_col is None:
            return False
        vec = normalize_laurent_row(vec)
        lead = vec[pivot_col]
        updated = []
        for col, row in self.pivots:
            c = row[pivot_col]
            if c:
                row = normalize_laurent_row([lead * a - c * b for a, b in zip(row, vec)])
            updated.append((col, row))
        updated.append((pivot_col, vec))
        updated.sort(key=lambda item: item[0])
        self.pivots = updated
        return True


# -- fraction-field solving and membership ------------------------------------


def _entry_weight(e: FractionElement):
    if e.is_laurent():
        return (0, len(e.num.terms))
    return (1, len(e.num.terms) + len(e.den.terms))


def solve_in_span(vectors, target, nvars=None):
    """Solve sum_k c_k * vectors[k] == target over the fraction field.

    Returns a list of FractionElement coefficients (free variables are set to
    zero) or None when no solution exists.  Deterministic: rows are processed
    top to bottom and each picks the fewest-term unused column as pivot.
    """
    if nvars is None:
        nvars = infer_nvars(vectors + [target])
    dim = len(target)
    for v in vectors:
        if len(v) != dim:
            raise ValueError("span vector dimension mismatch")
    n = len(vectors)
    rows = []
    for r in range(dim):
        row = [FractionElement(as_laurent(vectors[k][r], nvars)) for k in range(n)]
        row.append(FractionElement(as_laurent(target[r], nvars)))
        rows.append(row)
    used = set()
    pivot_of_col = {}
    for r in range(dim):
        best = None
        for c in range(n):
            if c in used:
                continue
            e = rows[r][c]
            if e:
                key = (_entry_weight(e), c)
                if best is None or key < best:
                    best = key
        if best is None:
            continue
        c = best[1]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for r2 in range(dim):
            if r2 != r and rows[r2][c]:
                f = rows[r2][c]
                rows[r2] = [a - f * b for a, b in zip(rows[r2], rows[r])]
        used.add(c)
        pivot_of_col[c] = r
    for r in range(dim):
        if rows[r][n] and not any(rows[r][c] for c in range(n)):
            return None
    zero = FractionElement(LaurentElement.zero(nvars))
    solution = [zero] * n
    for c, r in pivot_of_col.items():
        solution[c] = rows[r][n]
    return solution


def membership_with_monomial_clearance(v, span, nvars=None):
    """Find the minimal monomial mu with mu*v in the polynomial-coefficient span.

    Solves over the fraction field; a witness exists only when every
    coefficient's reduced denominator is a unit times a monomial (equivalently
    its normalized FractionElement has denominator 1).  mu is then the
    monomial that lifts the most negative exponent of the coefficients to
    zero, per variable; the returned coefficients are mu times the solution
    and have no negative exponents.  Returns (mu, coefficients) or None.
    """
    if nvars is None:
        nvars = infer_nvars([v] + list(span))
    v = [as_laurent(x, nvars) for x in v]
    span = [[as_laurent(x, nvars) for x in vec] for vec in span]
    for vec in span:
        if len(vec) != len(v):
            raise ValueError("span vector dimension mismatch")
    one = LaurentElement.one(nvars)
    if not any(v):
        return one, [LaurentElement.zero(nvars) for _ in span]
    if not span:
        return None
    solution = solve_in_span(span, v, nvars=nvars)
    if solution is None:
        return None
    coeffs = []
    for c in solution:
        if not c.is_laurent():
            return None
        coeffs.append(c.num)
    mins = None
    for c in coeffs:
        if not c:
            continue
        m = c.min_exponents()
        if mins is None:
            mins = list(m)
        else:
            mins = [min(a, b) for a, b in zip(mins, m)]
    if mins is None:
        return one, coeffs
    mu_exps = tuple(-e for e in mins)
    mu = LaurentElement.monomial(mu_exps, 1, nvars)
    return mu, [c.shift(mu_exps) for c in coeffs]


def verify_membership_witness(v, span, mu, coeffs, nvars=None) -> bool:
    """Re-multiply and compare structurally; coefficients must be polynomial."""
    if nvars is None:
        nvars = infer_nvars([v] + list(span))
    v = [as_laurent(x, nvars) for x in v]
    span = [[as_laurent(x, nvars) for x in vec] for vec in span]
    if len(coeffs) != len(span):
        return False
    for c in coeffs:
        c = as_laurent(c, nvars)
        if c and any(e < 0 for e in c.min_exponents()):
            return False
    lhs = [mu * x for x in v]
    acc = [LaurentElement.zero(nvars) for _ in v]
    for c, vec in zip(coeffs, span):
        c = as_laurent(c, nvars)
        if c:
            acc = [a + c * x for a, x in zip(acc, vec)]
    return all(a == b for a, b in zip(lhs, acc))
