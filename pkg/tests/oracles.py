"""Independent oracles: plain rational elimination, brute-force enumeration.

Nothing here calls the package's elimination, witness, or walk machinery;
these are the second route for every dual-route check.
"""

from fractions import Fraction
from itertools import permutations

PRIMES = (2, 3, 5, 7, 11, 13)


def rational_rank(rows) -> int:
    """Plain Gaussian elimination over Q, no pivot tricks."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = Fraction(1) / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(nrows):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        row += 1
        rank += 1
    return rank


def substituted_rank(laurent_rows, values=None) -> int:
    """Rank after substituting distinct primes for the Laurent variables."""
    if not laurent_rows:
        return 0
    nvars = laurent_rows[0][0].nvars
    values = values or PRIMES[:nvars]
    return rational_rank([[x.evaluate(values) for x in row] for row in laurent_rows])


def all_symplectic_perms(n):
    """{sigma : sigma(i) + sigma(2n+1-i) = 2n+1}, by brute-force filter."""
    m = 2 * n
    out = []
    for p in permutations(range(1, m + 1)):
        if all(p[i] + p[m - 1 - i] == m + 1 for i in range(m)):
            out.append(p)
    return out


def orbit_of_degrees(seq, perms):
    return sorted({tuple(seq[s - 1] for s in p) for p in perms})


def greedy_dominant_over_orbit(seq, perms):
    """Greedy lexicographic optimum over the permuted sequences = their lex min."""
    return min(orbit_of_degrees(seq, perms))


def brute_force_refinement_orderings(eigenvalues, gamma):
    """All orderings of all indices whose values pair to gamma across the middle."""
    m = len(eigenvalues)
    out = []
    for p in permutations(range(1, m + 1)):
        if all(eigenvalues[p[i] - 1] * eigenvalues[p[m - 1 - i] - 1] == gamma for i in range(m)):
            out.append(p)
    return out


def remultiply_witness(target, span_vectors, mu, coeffs) -> bool:
    """Independent witness check: mu*target == sum(c_k v_k), coefficients polynomial."""
    for c in coeffs:
        if c and any(e < 0 for e in c.min_exponents()):
            return False
    lhs = [mu * x for x in target]
    rhs = None
    for c, vec in zip(coeffs, span_vectors):
        term = [c * x for x in vec]
        rhs = term if rhs is None else [a + b for a, b in zip(rhs, term)]
    if rhs is None:
        rhs = [0 * x for x in lhs]
    return all(a == b for a, b in zip(lhs, rhs))
