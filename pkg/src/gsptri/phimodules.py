"""Frobenius data, refinements, and the strictly dominant weight algorithm.

A rank-m crystalline datum is (eigenvalues of the relative Frobenius power,
a weakly decreasing weight type per embedding).  A refinement is an ordering
of the eigenvalues plus a per-embedding assignment of weights.  Symplectic
data adds the similitude eigenvalue and the index pairing it induces.

Orientation note, applied at exactly one point (:func:`is_noncritical` /
:func:`dominant_weight_arrangement`): the dominance algorithm operates on
*degrees*, the filtration jump indices, which are the negatives of the
weights; ascending dominant degrees correspond to descending dominant
weights.  The strict-dominance predicate for the symplectic torus is stated
in weight coordinates.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import LocallyAlgebraicCharacter, PadicFieldShape
from .errors import DataIntegrityError, InternalInvariantError, PreconditionError
from .scalars import scalar_from_string, scalar_to_string

GROUP_GL = "gl"
GROUP_GSP = "gsp"


@dataclass(frozen=True)
class PhiModuleData:
    """Eigenvalues of the Frobenius power plus a per-embedding weight type."""

    shape: PadicFieldShape
    eigenvalues: tuple
    ht_type: dict = field(hash=False)

    def __post_init__(self):
        object.__setattr__(
            self, "eigenvalues", tuple(Fraction(v) for v in self.eigenvalues)
        )
        if any(v == 0 for v in self.eigenvalues):
            raise ValueError("eigenvalues must be nonzero")
        m = len(self.eigenvalues)
        ht = {}
        for tau in self.shape.labels:
            if tau not in self.ht_type:
                raise ValueError(f"missing weight sequence for {tau}")
            seq = tuple(int(k) for k in self.ht_type[tau])
            if len(seq) != m:
                raise ValueError(f"weight sequence for {tau} must have length {m}")
            if any(seq[i] < seq[i + 1] for i in range(m - 1)):
                raise ValueError(f"weight sequence for {tau} must be weakly decreasing")
            ht[tau] = seq
        if set(self.ht_type) != set(self.shape.labels):
            raise ValueError("weight type labels do not match the field shape")
        object.__setattr__(self, "ht_type", ht)

    @property
    def rank(self) -> int:
        return len(self.eigenvalues)

    def to_json(self):
        out = self.shape.to_json()
        out["eigenvalues"] = [scalar_to_string(v) for v in self.eigenvalues]
        out["ht_type"] = {tau: list(seq) for tau, seq in self.ht_type.items()}
        return out


@dataclass(frozen=True)
class Refinement:
    """Eigenvalue ordering plus per-embedding weight assignment (both 1-based)."""

    eigenvalue_order: tuple
    weight_order: dict = field(hash=False)

    def __post_init__(self):
        order = tuple(int(i) for i in self.eigenvalue_order)
        m = len(order)
        if sorted(order) != list(range(1, m + 1)):
            raise ValueError("eigenvalue order must be a permutation of 1..m")
        object.__setattr__(self, "eigenvalue_order", order)
        wo = {}
        for tau, perm in dict(self.weight_order).items():
            perm = tuple(int(i) for i in perm)
            if sorted(perm) != list(range(1, m + 1)):
                raise ValueError(f"weight order for {tau} must be a permutation of 1..m")
            wo[tau] = perm
        object.__setattr__(self, "weight_order", wo)

    def to_json(self):
        return {
            "eigenvalue_order": list(self.eigenvalue_order),
            "weight_order": {tau: list(p) for tau, p in self.weight_order.items()},
        }


def identity_refinement(m: int, labels) -> Refinement:
    ident = tuple(range(1, m + 1))
    return Refinement(ident, {tau: ident for tau in labels})


def refinement_parameter(data: PhiModuleData, ref: Refinement):
    """The triangulation parameter of a refinement: delta_i = z^{k_i} unr(phi_i)."""
    m = data.rank
    if len(ref.eigenvalue_order) != m or set(ref.weight_order) != set(data.shape.labels):
        raise ValueError("refinement does not match the data")
    deltas = []
    for i in range(m):
        weights = tuple(
            data.ht_type[tau][ref.weight_order[tau][i] - 1] for tau in data.shape.labels
        )
        value = data.eigenvalues[ref.eigenvalue_order[i] - 1]
        deltas.append(LocallyAlgebraicCharacter(weights, value))
    return deltas


def is_phi_generic(data: PhiModuleData) -> bool:
    """Distinct eigenvalues, no ratio equal to p^f."""
    vals = data.eigenvalues
    if len(set(vals)) != len(vals):
        return False
    qf = Fraction(data.shape.p ** data.shape.f)
    for i, a in enumerate(vals):
        for j, b in enumerate(vals):
            if i != j and a / b == qf:
                return False
    return True


def is_regular_ht(data: PhiModuleData) -> bool:
    """Every per-embedding weight sequence is strictly decreasing."""
    return all(
        all(seq[i] > seq[i + 1] for i in range(len(seq) - 1))
        for seq in data.ht_type.values()
    )


@dataclass(frozen=True)
class SymplecticPhiData:
    """Rank-2n data with a similitude eigenvalue and the pairing it induces."""

    base: PhiModuleData
    gamma: Fraction
    pairing: tuple

    def __post_init__(self):
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        pairing = tuple(int(i) for i in self.pairing)
        m = self.base.rank
        if m % 2:
            raise DataIntegrityError("symplectic data needs even rank")
        if sorted(pairing) != list(range(1, m + 1)):
            raise DataIntegrityError("pairing must be a permutation of 1..m")
        for i in range(1, m + 1):
            if pairing[i - 1] == i or pairing[pairing[i - 1] - 1] != i:
                raise DataIntegrityError("pairing must be a fixed-point-free involution")
            if self.base.eigenvalues[i - 1] * self.base.eigenvalues[pairing[i - 1] - 1] != self.gamma:
                raise DataIntegrityError(
                    "eigenvalue pairing does not multiply to the similitude eigenvalue"
                )
        object.__setattr__(self, "pairing", pairing)

    @property
    def n(self) -> int:
        return self.base.rank // 2

    @property
    def shape(self) -> PadicFieldShape:
        return self.base.shape

    def to_json(self):
        out = self.base.to_json()
        out["gamma"] = scalar_to_string(self.gamma)
        out["pairing"] = list(self.pairing)
        return out


def pairing_from_gamma(eigenvalues, gamma) -> tuple:
    """Recover the index pairing phi_i * phi_{pair(i)} = gamma, if unambiguous."""
    eigenvalues = [Fraction(v) for v in eigenvalues]
    gamma = Fraction(gamma)
    pairing = [0] * len(eigenvalues)
    for i, v in enumerate(eigenvalues):
        partners = [j + 1 for j, w in enumerate(eigenvalues) if j != i and v * w == gamma]
        if len(partners) != 1:
            raise DataIntegrityError("pairing is not determined by the similitude eigenvalue")
        pairing[i] = partners[0]
    return tuple(pairing)


def enumerate_symplectic_refinements(data: SymplecticPhiData):
    """All eigenvalue orderings compatible with the pairing, in lex order.

    An ordering sigma satisfies sigma(2n+1-i) = pairing(sigma(i)) for all i;
    for generic gamma there are exactly 2^n n! of them, the order of the
    symplectic Weyl group.  Each refinement carries the identity (dominant)
    weight assignment.
    """
    if len(set(data.base.eigenvalues)) != data.base.rank:
        raise PreconditionError("eigenvalues must be distinct")
    m = data.base.rank
    pairing = data.pairing
    orderings = []
    assignment = [0] * m
    used = [False] * (m + 1)

    def rec(pos):
        if pos == m:
            orderings.append(tuple(assignment))
            return
        if assignment[pos]:
            rec(pos + 1)
            return
        partner_pos = m - 1 - pos
        for idx in range(1, m + 1):
            pidx = pairing[idx - 1]
            if used[idx] or used[pidx]:
                continue
            assignment[pos] = idx
            assignment[partner_pos] = pidx
            used[idx] = used[pidx] = True
            rec(pos + 1)
            assignment[pos] = 0
            assignment[partner_pos] = 0
            used[idx] = used[pidx] = False

    rec(0)
    ident = {tau: tuple(range(1, m + 1)) for tau in data.shape.labels}
    return [Refinement(sigma, ident) for sigma in orderings]


# -- the strictly dominant weight algorithm ------------------------------------


def _gl_prefix_feasible(seq, prefix) -> bool:
    counts = Counter(seq)
    counts.subtract(Counter(prefix))
    return all(v >= 0 for v in counts.values())


def _gsp_prefix_feasible(seq, prefix) -> bool:
    """Is there a symplectic permutation placing prefix[i] at position i+1?"""
    m = len(seq)
    forced = {}
    used = set()

    def rec(i):
        if i == len(prefix):
            return True
        pos = i + 1
        if pos in forced:
            return seq[forced[pos] - 1] == prefix[i] and rec(i + 1)
        ppos = m + 1 - pos
        for idx in range(1, m + 1):
            if idx in used or seq[idx - 1] != prefix[i]:
                continue
            pidx = m + 1 - idx
            if pidx in used:
                continue
            used.add(idx)
            used.add(pidx)
            forced[ppos] = pidx
            if rec(i + 1):
                used.discard(idx)
                used.discard(pidx)
                forced.pop(ppos, None)
                return True
            used.discard(idx)
            used.discard(pidx)
            forced.pop(ppos, None)
        return False

    return rec(0)


def _dominant_sequence(seq, feasible) -> tuple:
    """One embedding's dominant arrangement, by the stratum walk.

    Step 1 extends the chosen prefix with as many of the smallest remaining
    values (in ascending order) as stay reachable by a Weyl witness; when the
    next sorted value is blocked, Step 2 picks the least reachable remaining
    value for that position (the generic stratum); Step 3 removes the
    consumed values and the walk repeats.  For the full symmetric group every
    prefix is reachable and the result is just the ascending sort.
    """
    m = len(seq)
    chosen = []
    remaining = sorted(seq)
    while len(chosen) < m:
        k = 0
        while k < len(remaining) and feasible(seq, chosen + remaining[: k + 1]):
            k += 1
        if k == len(remaining):
            chosen += remaining
            break
        prefix = chosen + remaining[:k]
        pick = None
        for idx in range(k, len(remaining)):
            if idx > k and remaining[idx] == remaining[idx - 1]:
                continue
            if feasible(seq, prefix + [remaining[idx]]):
                pick = idx
                break
        if pick is None:
            raise InternalInvariantError("no Weyl witness extends the dominant prefix")
        chosen = prefix + [remaining[pick]]
        del remaining[pick]
        del remaining[:k]
    return tuple(chosen)


def strictly_dominant_weight(degrees, group: str = GROUP_GL):
    """Dominant rearrangement of per-embedding degree sequences.

    ``degrees`` is a mapping from embedding label to an integer sequence (a
    bare sequence is treated as a single embedding and returned as a tuple).
    Degrees are in filtration-jump orientation; the dominant order is
    ascending.  ``group`` selects which Weyl orbit the stratum walk may use:
    the full symmetric group, or the symplectic subgroup (even length only).
    """
    if group not in (GROUP_GL, GROUP_GSP):
        raise ValueError(f"unknown group {group!r}")

    def one(seq):
        seq = tuple(int(d) for d in seq)
        if group == GROUP_GSP:
            if len(seq) % 2:
                raise ValueError("symplectic degrees must have even length")
            return _dominant_sequence(seq, _gsp_prefix_feasible)
        return _dominant_sequence(seq, _gl_prefix_feasible)

    if isinstance(degrees, dict):
        return {tau: one(seq) for tau, seq in degrees.items()}
    return one(degrees)


def dominant_weight_arrangement(weights, group: str = GROUP_GL):
    """Weight-orientation wrapper: negate, run the degree algorithm, negate."""

    def one(seq):
        return tuple(-d for d in strictly_dominant_weight([-k for k in seq], group))

    if isinstance(weights, dict):
        return {tau: one(seq) for tau, seq in weights.items()}
    return one(weights)


def gsp_torus_weights(seq) -> tuple:
    """Collapse a length-2n weight sequence to the n+1 torus coordinates.

    Requires the pairing sums k_i + k_{2n+1-i} to be constant; the torus
    coordinates are then (k_1, ..., k_n, k_n + k_{n+1}).
    """
    seq = tuple(int(k) for k in seq)
    m = len(seq)
    if m % 2 or m < 2:
        raise ValueError("need an even-length sequence")
    n = m // 2
    s = seq[0] + seq[-1]
    if any(seq[i] + seq[m - 1 - i] != s for i in range(n)):
        raise ValueError("pairing sums are not constant; not a symplectic weight")
    return seq[:n] + (s,)


def is_strictly_dominant_gsp(torus_weights) -> bool:
    """k_1 > ... > k_n and 2 k_n > k_{n+1}, for every embedding."""

    def one(seq):
        seq = tuple(int(k) for k in seq)
        n = len(seq) - 1
        if n < 1:
            raise ValueError("need at least two torus coordinates")
        return all(seq[i] > seq[i + 1] for i in range(n - 1)) and 2 * seq[n - 1] > seq[n]

    if isinstance(torus_weights, dict):
        return all(one(seq) for seq in torus_weights.values())
    return one(torus_weights)


def refinement_weights(data: PhiModuleData, ref: Refinement):
    """Per-embedding weight sequences selected by the refinement."""
    return {
        tau: tuple(data.ht_type[tau][ref.weight_order[tau][i] - 1] for i in range(data.rank))
        for tau in data.shape.labels
    }


def is_noncritical(data, ref: Refinement, group: str = GROUP_GL) -> bool:
    """The refinement's own weights already form the dominant arrangement."""
    base = data.base if isinstance(data, SymplecticPhiData) else data
    if not is_regular_ht(base):
        raise PreconditionError("noncriticality is defined for regular weight types only")
    weights = refinement_weights(base, ref)
    return dominant_weight_arrangement(weights, group) == weights


def is_benign(data, group: str | None = None) -> bool:
    """Regular weight type, phi-generic, and every refinement noncritical.

    Enumerated refinements carry the filtration-dominant weight assignment,
    so the noncriticality sweep is over the canonical refinement family.
    """
    if isinstance(data, SymplecticPhiData):
        base = data.base
        group = group or GROUP_GSP
    else:
        base = data
        group = group or GROUP_GL
    if not is_regular_ht(base) or not is_phi_generic(base):
        return False
    if isinstance(data, SymplecticPhiData):
        refinements = enumerate_symplectic_refinements(data)
    else:
        m = base.rank
        ident = {tau: tuple(range(1, m + 1)) for tau in base.shape.labels}
        refinements = [Refinement(sigma, ident) for sigma in _all_orderings(m)]
    return all(is_noncritical(data, ref, group) for ref in refinements)


def _all_orderings(m: int):
    from itertools import permutations

    return [tuple(p) for p in permutations(range(1, m + 1))]


# -- JSON loading ---------------------------------------------------------------


def phi_module_from_json(data):
    """Parse PhiModuleData, or SymplecticPhiData when gamma/pairing are present."""
    shape = PadicFieldShape.from_json(data)
    eigenvalues = tuple(scalar_from_string(str(v)) for v in data["eigenvalues"])
    base = PhiModuleData(shape, eigenvalues, dict(data["ht_type"]))
    if "gamma" in data or "pairing" in data:
        gamma = scalar_from_string(str(data["gamma"]))
        pairing = (
            tuple(int(i) for i in data["pairing"])
            if "pairing" in data
            else pairing_from_gamma(eigenvalues, gamma)
        )
        return SymplecticPhiData(base, gamma, pairing)
    return base
