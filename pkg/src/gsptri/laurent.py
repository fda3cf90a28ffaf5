"""Multivariate Laurent polynomials over the rationals, and their fractions.

Elements are finite maps from integer exponent vectors (one slot per
embedding label tau0, tau1, ...) to nonzero rational coefficients.  No zero
coefficient is ever stored and term maps are plain dicts keyed by exponent
tuples, so equality is structural.

:class:`FractionElement` is a num/den pair.  Reduction by common monomial
factors is eager: the denominator is stripped of its monomial content (which
is a unit in the Laurent ring) and, when the remaining polynomial part
divides the numerator exactly, the fraction collapses to denominator 1.
A fraction whose normalized denominator is the constant 1 is exactly an
element of the Laurent ring.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import scalar_from_string, scalar_to_string


class LaurentElement:
    """A Laurent polynomial in ``nvars`` variables with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    exps = tuple(exps)
                    if len(exps) != nvars:
                        raise ValueError("exponent vector has wrong length")
                    clean[exps] = clean.get(exps, Fraction(0)) + coeff
                    if not clean[exps]:
                        del clean[exps]
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already clean, ownership transferred
        self = object.__new__(cls)
        self.nvars = nvars
        self.terms = terms
        return self

    @classmethod
    def zero(cls, nvars: int) -> "LaurentElement":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, value, nvars: int) -> "LaurentElement":
        value = Fraction(value)
        if not value:
            return cls.zero(nvars)
        return cls._raw(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "LaurentElement":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "LaurentElement":
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exps, coeff=1, nvars=None) -> "LaurentElement":
        exps = tuple(exps)
        if nvars is None:
            nvars = len(exps)
        coeff = Fraction(coeff)
        if not coeff:
            return cls.zero(nvars)
        return cls._raw(nvars, {exps: coeff})

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        """Single term, i.e. a unit of the Laurent ring."""
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms[(0,) * self.nvars]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentElement):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentElement.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps)
            if acc is None:
                out[exps] = coeff
            else:
                acc = acc + coeff
                if acc:
                    out[exps] = acc
                else:
                    del out[exps]
        return LaurentElement._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentElement._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return LaurentElement.zero(self.nvars)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = out.get(exps)
                if acc is None:
                    out[exps] = c
                else:
                    acc = acc + c
                    if acc:
                        out[exps] = acc
                    else:
                        del out[exps]
        return LaurentElement._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            ((exps, coeff),) = self.terms.items()
            return LaurentElement.monomial(tuple(e * k for e in exps), coeff ** k)
        result = LaurentElement.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentElement.constant(other, self.nvars)
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- monomial structure --------------------------------------------------

    def min_exponents(self):
        """Per-variable minimum exponent (the monomial content); zero poly -> zeros."""
        if not self.terms:
            return (0,) * self.nvars
        its = iter(self.terms)
        mins = list(next(its))
        for exps in its:
            for i, e in enumerate(exps):
                if e < mins[i]:
                    mins[i] = e
        return tuple(mins)

    def shift(self, exps) -> "LaurentElement":
        """Multiply by the monomial t**exps (a unit of the ring)."""
        if not any(exps):
            return self
        return LaurentElement._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    def monomial_inverse(self) -> "LaurentElement":
        if not self.is_monomial():
            raise ValueError("only monomials are invertible in the Laurent ring")
        ((exps, coeff),) = self.terms.items()
        return LaurentElement.monomial(tuple(-e for e in exps), Fraction(1) / coeff)

    def leading(self):
        """(exponents, coefficient) of the lex-greatest term."""
        exps = max(self.terms)
        return exps, self.terms[exps]

    def evaluate(self, values) -> Fraction:
        """Substitute nonzero rationals for the variables."""
        values = [Fraction(v) for v in values]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exps):
                term *= v ** e
            total += term
        return total

    # -- serialization -------------------------------------------------------

    def to_json(self):
        out = []
        for exps in sorted(self.terms):
            exp_obj = {f"tau{i}": e for i, e in enumerate(exps) if e}
            out.append({"exp": exp_obj, "coeff": scalar_to_string(self.terms[exps])})
        return out

    @classmethod
    def from_json(cls, data, nvars: int) -> "LaurentElement":
        terms = {}
        for item in data:
            exps = [0] * nvars
            for key, e in item.get("exp", {}).items():
                exps[int(key.removeprefix("tau"))] = int(e)
            terms[tuple(exps)] = scalar_from_string(item["coeff"])
        return cls(nvars, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            coeff = self.terms[exps]
            factors = [f"t{i}^{e}" if e != 1 else f"t{i}" for i, e in enumerate(exps) if e]
            if factors:
                head = "" if coeff == 1 else ("-" if coeff == -1 else f"{coeff}*")
                parts.append(head + "*".join(factors))
            else:
                parts.append(str(coeff))
        return " + ".join(parts).replace("+ -", "- ")


def exact_divide(num: LaurentElement, den: LaurentElement):
    """Return num/den if den divides num exactly in the Laurent ring, else None.

    Both arguments are shifted by their monomial content (a unit), after which
    exact divisibility happens inside the ordinary polynomial ring and the
    classical leading-term division either terminates with remainder zero or
    fails fast at the first non-divisible leading term.
    """
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num:
        return LaurentElement.zero(num.nvars)
    num_shift = num.min_exponents()
    den_shift = den.min_exponents()
    r = dict(num.shift(tuple(-e for e in num_shift)).terms)
    d = den.shift(tuple(-e for e in den_shift))
    d_lead, d_coeff = d.leading()
    d_rest = [(e, c) for e, c in d.terms.items() if e != d_lead]
    q_terms = {}
    while r:
        r_lead = max(r)
        q_exps = tuple(a - b for a, b in zip(r_lead, d_lead))
        if any(e < 0 for e in q_exps):
            return None
        q_coeff = r[r_lead] / d_coeff
        q_terms[q_exps] = q_coeff
        del r[r_lead]
        for e, c in d_rest:
            key = tuple(a + b for a, b in zip(e, q_exps))
            acc = r.get(key)
            if acc is None:
                r[key] = -c * q_coeff
            else:
                acc = acc - c * q_coeff
                if acc:
                    r[key] = acc
                else:
                    del r[key]
    quotient = LaurentElement._raw(num.nvars, q_terms)
    total_shift = tuple(a - b for a, b in zip(num_shift, den_shift))
    return quotient.shift(total_shift)


class FractionElement:
    """num/den over the Laurent ring, eagerly reduced by monomial factors."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentElement, den=None):
        if isinstance(num, (int, Fraction)):
            raise TypeError("wrap scalars with LaurentElement.constant first")
        if den is None:
            den = LaurentElement.one(num.nvars)
        if not den:
            raise ZeroDivisionError("zero denominator")
        num, den = self._normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _normalize(num, den):
        nvars = num.nvars
        if not num:
            return LaurentElement.zero(nvars), LaurentElement.one(nvars)
        # strip the denominator's monomial content (a unit) into the numerator
        shift = den.min_exponents()
        if any(shift):
            den = den.shift(tuple(-e for e in shift))
            num = num.shift(tuple(-e for e in shift))
        if den.is_constant():
            c = den.constant_value()
            if c != 1:
                num = num * (Fraction(1) / c)
            return num, LaurentElement.one(nvars)
        q = exact_divide(num, den)
        if q is not None:
            return q, LaurentElement.one(nvars)
        # normalize the leading coefficient of the denominator to 1
        _, lc = den.leading()
        if lc != 1:
            inv = Fraction(1) / lc
            num = num * inv
            den = den * inv
        return num, den

    @classmethod
    def from_scalar(cls, value, nvars: int) -> "FractionElement":
        return cls(LaurentElement.constant(value, nvars))

    @property
    def nvars(self):
        return self.num.nvars

    def is_laurent(self) -> bool:
        return self.den.is_constant()

    def as_laurent(self) -> LaurentElement:
        if not self.is_laurent():
            raise ValueError("denominator is not a unit")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, FractionElement):
            return other
        if isinstance(other, LaurentElement):
            return FractionElement(other)
        if isinstance(other, (int, Fraction)):
            return FractionElement.from_scalar(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return FractionElement(self.num + other.num, self.den)
        return FractionElement(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(FractionElement)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FractionElement(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero fraction")
        return FractionElement(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other / self

    def inverse(self) -> "FractionElement":
        return FractionElement.from_scalar(1, self.nvars) / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("FractionElement is not hashable (no canonical form)")

    def to_json(self):
        if self.is_laurent():
            return {"num": self.num.to_json()}
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        if self.is_laurent():
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"
