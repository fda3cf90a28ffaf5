"""Locally algebraic characters and their rank-1 combinatorics.

A character of K* is modeled as z^k * unr(a): an integer weight per embedding
label tau plus a nonzero rational unramified value a (the image of the fixed
uniformizer).  Characters with a nontrivial finite-order smooth part are out
of scope; every predicate below only needs this family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import is_prime, padic_valuation, scalar_from_string, scalar_to_string


@dataclass(frozen=True)
class PadicFieldShape:
    """Numerical shape of a p-adic field K: residue degree f, ramification e.

    The embedding labels are tau0..tau{ef-1}; q = p^f.
    """

    p: int
    f: int = 1
    e: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.f < 1 or self.e < 1:
            raise ValueError("f and e must be positive")

    @property
    def degree(self) -> int:
        return self.e * self.f

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def labels(self):
        return tuple(f"tau{i}" for i in range(self.degree))

    def to_json(self):
        return {"p": self.p, "f": self.f, "e": self.e}

    @classmethod
    def from_json(cls, data) -> "PadicFieldShape":
        return cls(p=int(data["p"]), f=int(data.get("f", 1)), e=int(data.get("e", 1)))


@dataclass(frozen=True)
class LocallyAlgebraicCharacter:
    """z^weights * unr(value); multiplication adds weights, multiplies values."""

    weights: tuple
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(k) for k in self.weights))
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value == 0:
            raise ValueError("unramified value must be nonzero")

    def __mul__(self, other: "LocallyAlgebraicCharacter"):
        if len(self.weights) != len(other.weights):
            raise ValueError("weight length mismatch")
        return LocallyAlgebraicCharacter(
            tuple(a + b for a, b in zip(self.weights, other.weights)), self.value * other.value
        )

    def __truediv__(self, other: "LocallyAlgebraicCharacter"):
        return self * other.inverse()

    def inverse(self) -> "LocallyAlgebraicCharacter":
        return LocallyAlgebraicCharacter(
            tuple(-k for k in self.weights), Fraction(1) / self.value
        )

    def is_trivial(self) -> bool:
        return self.value == 1 and not any(self.weights)

    def uniformizer_valuation(self, shape: PadicFieldShape) -> Fraction:
        """val of the character's value at the uniformizer, with val(p) = 1.

        Each embedding contributes val(tau(uniformizer)) = 1/e, so the total
        is val(a) + (sum of weights)/e.
        """
        return Fraction(padic_valuation(self.value, shape.p)) + Fraction(
            sum(self.weights), shape.e
        )

    def to_json(self):
        return {"weights": list(self.weights), "unramified": scalar_to_string(self.value)}

    @classmethod
    def from_json(cls, data) -> "LocallyAlgebraicCharacter":
        return cls(tuple(data["weights"]), scalar_from_string(data["unramified"]))


def trivial_character(shape: PadicFieldShape) -> LocallyAlgebraicCharacter:
    return LocallyAlgebraicCharacter((0,) * shape.degree, Fraction(1))


def cyclotomic_character(shape: PadicFieldShape) -> LocallyAlgebraicCharacter:
    """All weights 1, unramified value 1/q (the norm has absolute value q^-1)."""
    return LocallyAlgebraicCharacter((1,) * shape.degree, Fraction(1, shape.q))


def cohomology_dims(delta: LocallyAlgebraicCharacter, shape: PadicFieldShape):
    """(h0, h1, h2) of the rank-1 module attached to delta.

    h0 = 1 iff delta is algebraic with all weights <= 0 (value 1); h2 = 1 iff
    delta is the cyclotomic twist of such a character inverted, i.e. value
    1/q and all weights >= 1.  h1 follows from the Euler characteristic:
    h1 = [K:Q_p] + h0 + h2 (this also covers the non-regular cases, where
    only the regular h1 is pinned directly).
    """
    if len(delta.weights) != shape.degree:
        raise ValueError("character has wrong number of weights")
    h0 = 1 if (delta.value == 1 and all(k <= 0 for k in delta.weights)) else 0
    h2 = 1 if (delta.value * shape.q == 1 and all(k >= 1 for k in delta.weights)) else 0
    return h0, shape.degree + h0 + h2, h2


def is_regular(delta: LocallyAlgebraicCharacter, shape: PadicFieldShape) -> bool:
    h0, _, h2 = cohomology_dims(delta, shape)
    return h0 == 0 and h2 == 0


def is_regular_parameter(deltas, shape: PadicFieldShape) -> bool:
    """All ratios delta_i / delta_j for i < j are regular."""
    deltas = list(deltas)
    for i in range(len(deltas)):
        for j in range(i + 1, len(deltas)):
            if not is_regular(deltas[i] / deltas[j], shape):
                return False
    return True


def ext_saturated_check(shape: PadicFieldShape, weights, deltas) -> bool:
    """Consecutive weight gaps dominate the accumulated parameter valuations.

    ``weights`` maps each embedding label to a length-(n+1) integer sequence;
    ``deltas`` is the parameter (delta_1, ..., delta_{n+1}).  True iff for
    every i in [1, n] and every tau,

        k_{tau,i} - k_{tau,i+1} > [K:K_0] * val(delta_1(pi) ... delta_i(pi)).
    """
    deltas = list(deltas)
    n = len(deltas) - 1
    if n < 1:
        raise ValueError("need at least two parameter characters")
    seqs = {}
    for tau, seq in dict(weights).items():
        seq = tuple(int(k) for k in seq)
        if len(seq) != n + 1:
            raise ValueError(f"weight sequence for {tau} must have length {n + 1}")
        seqs[tau] = seq
    acc_val = Fraction(0)
    bounds = []
    for i in range(1, n + 1):
        acc_val += deltas[i - 1].uniformizer_valuation(shape)
        bounds.append(Fraction(shape.e) * acc_val)
    for seq in seqs.values():
        for i in range(1, n + 1):
            if not (Fraction(seq[i - 1] - seq[i]) > bounds[i - 1]):
                return False
    return True


def h_surjectivity_check(deltas, deltas_sub, shape: PadicFieldShape) -> bool:
    """Hypothesis checklist for surjectivity on H^1 along a sub-object.

    Both lists describe triangulation lines with matching unramified values;
    on the set S of lines where the characters differ, the shared value must
    avoid {1, p^f} and max(k_{i,tau}, 1 - k'_{i,tau}) must be positive for
    every tau (k from deltas, k' from deltas_sub).
    """
    deltas = list(deltas)
    deltas_sub = list(deltas_sub)
    if len(deltas) != len(deltas_sub):
        raise ValueError("parameter lists must have equal length")
    excluded = {Fraction(1), Fraction(shape.q)}
    for d, d_sub in zip(deltas, deltas_sub):
        if d.value != d_sub.value:
            raise ValueError("lines must share their unramified values")
        if d == d_sub:
            continue
        if d.value in excluded:
            return False
        for k, k_sub in zip(d.weights, d_sub.weights):
            if max(k, 1 - k_sub) <= 0:
                return False
    return True
