"""GSp_2n structure constants: form matrix, similitude, torus, Weyl group.

Conventions fixed here once and for all:

* The symplectic form J is antidiagonal with +1 in rows 1..n and -1 in rows
  n+1..2n (so J is antisymmetric and ``tr(g) J g = sim(g) J`` makes sense).
* Permutations are 1-based one-line tuples ``(sigma(1), ..., sigma(2n))``.
* A Weyl element's signed matrix representative has exactly one entry
  ``s_i = +-1`` per column i, at row sigma(i).  Plain permutation matrices of
  symplectic permutations usually fail the similitude identity, so signs are
  chosen: columns 1..n get +1, the similitude is ``c = eps(sigma(n))``, and
  column 2n+1-i gets ``c * eps(sigma(i))``.  This is the lexicographically
  minimal sign vector (with +1 before -1), hence deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ResourceLimitError
from .laurent import FractionElement, LaurentElement
from .linalg import ExactMatrix

DEFAULT_MAX_N = 5


def _eps(i: int, n: int) -> int:
    return 1 if i <= n else -1


def form_matrix(n: int) -> ExactMatrix:
    """The 2n x 2n antidiagonal symplectic form."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m = 2 * n
    return ExactMatrix(
        [
            [Fraction(_eps(i + 1, n)) if i + j == m - 1 else Fraction(0) for j in range(m)]
            for i in range(m)
        ]
    )


def _zero_like(x):
    if isinstance(x, LaurentElement):
        return LaurentElement.zero(x.nvars)
    if isinstance(x, FractionElement):
        return FractionElement(LaurentElement.zero(x.nvars))
    return Fraction(0)


def _invert(x):
    if isinstance(x, LaurentElement):
        if not x.is_monomial():
            raise ValueError("entry is not invertible in the Laurent ring")
        return x.monomial_inverse()
    if isinstance(x, FractionElement):
        if not x:
            raise ValueError("entry is not invertible")
        return x.inverse()
    x = Fraction(x)
    if not x:
        raise ValueError("entry is not invertible")
    return Fraction(1) / x


def similitude(g: ExactMatrix):
    """The scalar c with tr(g) J g = c J, or None if there is none (or c = 0)."""
    if not g.is_square() or g.rows % 2:
        raise ValueError("similitude needs a square matrix of even size")
    n = g.rows // 2
    jg = g.transpose() * form_matrix(n) * g
    c = jg.entries[0][g.rows - 1]  # J has +1 there
    if not c:
        return None
    m = g.rows
    for i in range(m):
        for j in range(m):
            expected = c * _eps(i + 1, n) if i + j == m - 1 else _zero_like(c)
            if not (jg.entries[i][j] == expected):
                return None
    return c


def torus_embed(values) -> ExactMatrix:
    """Diagonal element (t1, ..., tn, tn^-1 t_{n+1}, ..., t1^-1 t_{n+1})."""
    values = list(values)
    n = len(values) - 1
    if n < 1:
        raise ValueError("need n+1 >= 2 coordinates")
    diag = list(values[:n])
    for i in range(1, n + 1):
        diag.append(_invert(values[n - i]) * values[n])
    zero = _zero_like(diag[0])
    m = 2 * n
    return ExactMatrix([[diag[i] if i == j else zero for j in range(m)] for i in range(m)])


# -- symplectic permutations and signed representatives -----------------------


def is_symplectic_permutation(sigma) -> bool:
    m = len(sigma)
    if m % 2 or sorted(sigma) != list(range(1, m + 1)):
        return False
    return all(sigma[i] + sigma[m - 1 - i] == m + 1 for i in range(m))


@dataclass(frozen=True)
class WeylElement:
    """A symplectic permutation plus its canonical signed representative."""

    n: int
    sigma: tuple
    signs: tuple

    @property
    def similitude_sign(self) -> int:
        return _eps(self.sigma[self.n - 1], self.n)

    def matrix(self) -> ExactMatrix:
        m = 2 * self.n
        rows = [[Fraction(0)] * m for _ in range(m)]
        for i in range(m):
            rows[self.sigma[i] - 1][i] = Fraction(self.signs[i])
        return ExactMatrix(rows)

    def inverse_sigma(self) -> tuple:
        m = 2 * self.n
        inv = [0] * m
        for i in range(m):
            inv[self.sigma[i] - 1] = i + 1
        return tuple(inv)

    def to_json(self):
        return {"perm": list(self.sigma), "signs": list(self.signs)}


def weyl_representative(sigma) -> WeylElement:
    """Canonical signed representative of a symplectic permutation."""
    if not is_symplectic_permutation(sigma):
        raise ValueError("permutation does not satisfy the symplectic condition")
    sigma = tuple(sigma)
    m = len(sigma)
    n = m // 2
    c = _eps(sigma[n - 1], n)
    signs = [0] * m
    for i in range(1, n + 1):
        signs[i - 1] = 1
        signs[m - i] = c * _eps(sigma[i - 1], n)
    return WeylElement(n=n, sigma=sigma, signs=tuple(signs))


def compose(sigma_a, sigma_b) -> tuple:
    """(a o b)(i) = a(b(i)) on 1-based one-line tuples."""
    return tuple(sigma_a[sigma_b[i] - 1] for i in range(len(sigma_b)))


def invert_perm(sigma) -> tuple:
    inv = [0] * len(sigma)
    for i, v in enumerate(sigma):
        inv[v - 1] = i + 1
    return tuple(inv)


def transposition(m: int, a: int, b: int) -> tuple:
    one_line = list(range(1, m + 1))
    one_line[a - 1], one_line[b - 1] = b, a
    return tuple(one_line)


def symplectic_generators(n: int):
    """One-line tuples of (i,i+1)(2n-i,2n+1-i) for i < n, plus (n,n+1)."""
    m = 2 * n
    gens = []
    for i in range(1, n):
        g = list(range(1, m + 1))
        g[i - 1], g[i] = g[i], g[i - 1]
        g[m - i - 1], g[m - i] = g[m - i], g[m - i - 1]
        gens.append(tuple(g))
    gens.append(transposition(m, n, n + 1))
    return gens


def weyl_group_closure(n: int, max_n: int = DEFAULT_MAX_N):
    """Closure of the generators under composition.

    Returns (elements, rounds): elements sorted lexicographically by one-line
    notation, rounds = number of breadth-first expansion rounds needed.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > max_n:
        raise ResourceLimitError(f"n={n} exceeds the configured bound {max_n}")
    gens = symplectic_generators(n)
    identity = tuple(range(1, 2 * n + 1))
    seen = {identity}
    frontier = [identity]
    rounds = 0
    while frontier:
        rounds += 1
        new = []
        for g in gens:
            for s in frontier:
                prod = compose(g, s)
                if prod not in seen:
                    seen.add(prod)
                    new.append(prod)
        frontier = new
    elements = [weyl_representative(sigma) for sigma in sorted(seen)]
    return elements, rounds


def weyl_group(n: int, max_n: int = DEFAULT_MAX_N):
    """The Weyl group of GSp_2n as a sorted list of WeylElements (size 2^n n!)."""
    return weyl_group_closure(n, max_n=max_n)[0]


# -- Lie algebra ---------------------------------------------------------------


def symplectic_lie_scalar(x: ExactMatrix):
    """The scalar c with tr(X) J + J X = c J, or None if X is not in the algebra."""
    if not x.is_square() or x.rows % 2:
        raise ValueError("need a square matrix of even size")
    n = x.rows // 2
    j = form_matrix(n)
    lhs = x.transpose() * j + j * x
    c = lhs.entries[0][x.rows - 1]
    m = x.rows
    for i in range(m):
        for jj in range(m):
            expected = c * _eps(i + 1, n) if i + jj == m - 1 else _zero_like(c)
            if not (lhs.entries[i][jj] == expected):
                return None
    return c


def _unit_matrix(m: int, a: int, b: int, value=1) -> ExactMatrix:
    rows = [[Fraction(0)] * m for _ in range(m)]
    rows[a - 1][b - 1] = Fraction(value)
    return ExactMatrix(rows)


def gsp_lie_basis(n: int):
    """Canonical basis of the similitude Lie algebra, 2n^2 + n + 1 matrices.

    Order: torus elements H_1..H_n (e_ii - e_{i',i'} with i' = 2n+1-i), the
    similitude direction Z (identity on rows n+1..2n), then one root vector
    per position class (a, b), a != b, sorted by its lexicographically least
    position: e_{a, 2n+1-a} alone on the antidiagonal, otherwise
    e_{a,b} - eps_a eps_b e_{2n+1-b, 2n+1-a}.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    m = 2 * n
    basis = []
    for i in range(1, n + 1):
        h = _unit_matrix(m, i, i) + _unit_matrix(m, m + 1 - i, m + 1 - i, -1)
        basis.append(h)
    z = ExactMatrix(
        [[Fraction(1) if (i == j and i >= n) else Fraction(0) for j in range(m)] for i in range(m)]
    )
    basis.append(z)
    seen = set()
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            if a == b or (a, b) in seen:
                continue
            partner = (m + 1 - b, m + 1 - a)
            if b == m + 1 - a:
                basis.append(_unit_matrix(m, a, b))
                seen.add((a, b))
            else:
                seen.add((a, b))
                seen.add(partner)
                x = _unit_matrix(m, a, b) + _unit_matrix(
                    m, partner[0], partner[1], -_eps(a, n) * _eps(b, n)
                )
                basis.append(x)
    return basis


def gsp_root_vector(n: int, a: int, b: int) -> ExactMatrix:
    """The basis root vector whose support contains position (a, b)."""
    m = 2 * n
    if a == b:
        raise ValueError("not a root position")
    if b == m + 1 - a:
        return _unit_matrix(m, a, b)
    return _unit_matrix(m, a, b) + _unit_matrix(m, m + 1 - b, m + 1 - a, -_eps(a, n) * _eps(b, n))
