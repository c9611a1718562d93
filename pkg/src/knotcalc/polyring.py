"""Exact Laurent polynomial arithmetic.

Two rings live here:

* ``LaurentPoly`` -- one variable ``t`` with Gaussian-integer coefficients.
  Exponents are stored as integer counts of *quarter* units of ``t``, so a
  single representation covers the bracket variable ``A`` (via ``t = A^-4``,
  i.e. ``A = t^-1/4``), the half-integer exponents of Jones polynomials of
  even-component links, and ordinary integer exponents.

* ``TwoVarPoly`` -- two variables ``a, z`` with integer coefficients and
  integer exponents, the home of the two-variable Kauffman polynomial.

Everything is immutable and exact; no floating point is used anywhere.

Canonical string grammar (used by golden files and the CLI):
terms are sorted by ascending exponent and joined with `` + `` / `` - ``;
a coefficient of magnitude 1 is dropped in front of a variable; ``t`` powers
print as ``t``, ``t^3``, ``t^-1`` or with a reduced fraction ``t^1/2``,
``t^-25/2``, ``t^-3/4``.  Two-variable terms group by ascending ``z`` power,
each ``a``-coefficient polynomial in the same scalar grammar, parenthesised
when it has more than one term, e.g. ``(-a^-2 + a^2 + a^4) + (2a + 2a^3)z``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import FractionalExponent, NonInvertibleImage, ResidualImaginaryPart

__all__ = [
    "GaussInt",
    "GaussRational",
    "LaurentPoly",
    "TwoVarPoly",
    "two_var_substitute",
]


class GaussInt:
    """A Gaussian integer ``re + im*i`` with exact arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, *args):
        raise AttributeError("GaussInt is immutable")

    @staticmethod
    def coerce(value: "GaussInt | int") -> "GaussInt":
        if isinstance(value, GaussInt):
            return value
        return GaussInt(value, 0)

    def __add__(self, other):
        other = GaussInt.coerce(other)
        return GaussInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussInt.coerce(other)
        return GaussInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussInt.coerce(other) - self

    def __mul__(self, other):
        other = GaussInt.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0 and d == 0:
            return GaussInt(a * c, 0)
        return GaussInt(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def conjugate(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def unit_inverse(self) -> "GaussInt":
        """Inverse of a unit (one of 1, -1, i, -i)."""
        if not self.is_unit():
            raise NonInvertibleImage(f"{self} is not a unit in Z[i]")
        return self.conjugate()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if re == 0:
            if im == 1:
                return "i"
            if im == -1:
                return "-i"
            return f"{im}i"
        sign = "+" if im > 0 else "-"
        mag = abs(im)
        istr = "i" if mag == 1 else f"{mag}i"
        return f"({re}{sign}{istr})"


GaussInt.ZERO = GaussInt(0, 0)
GaussInt.ONE = GaussInt(1, 0)
GaussInt.I = GaussInt(0, 1)


class GaussRational:
    """Element of Q(i), used only for exact point evaluation."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *args):
        raise AttributeError("GaussRational is immutable")

    @staticmethod
    def coerce(value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, GaussInt):
            return GaussRational(value.re, value.im)
        return GaussRational(value)

    def __add__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __mul__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussRational(self.re / n, -self.im / n)

    def __pow__(self, k: int) -> "GaussRational":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = GaussRational(1)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = GaussRational.coerce(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re}+{self.im}i)"


Coefficient = Union[GaussInt, int]
ExponentLike = Union[int, Fraction]


def _quarters(exponent: ExponentLike) -> int:
    q = Fraction(exponent) * 4
    if q.denominator != 1:
        raise ValueError(f"exponent {exponent} is not a multiple of 1/4")
    return q.numerator


def _exp_str(var: str, quarters: int) -> str:
    if quarters == 0:
        return ""
    frac = Fraction(quarters, 4)
    if frac == 1:
        return var
    if frac.denominator == 1:
        return f"{var}^{frac.numerator}"
    return f"{var}^{frac.numerator}/{frac.denominator}"


def _scalar_term_strings(items) -> list[tuple[str, str]]:
    """Render (power-string, coefficient) term pairs as (sign, body) pairs."""
    out = []
    for power, coeff in items:
        if coeff.im == 0:
            sign = "-" if coeff.re < 0 else "+"
            mag = abs(coeff.re)
            if power and mag == 1:
                body = power
            elif power:
                body = f"{mag}{power}"
            else:
                body = str(mag)
        else:
            # mixed / imaginary coefficients always join with '+'
            sign = "+"
            cstr = str(coeff)
            body = f"{cstr}{power}" if power else cstr
        out.append((sign, body))
    return out


def _join_terms(parts: list[tuple[str, str]]) -> str:
    if not parts:
        return "0"
    sign, body = parts[0]
    text = body if sign == "+" else f"-{body}"
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class LaurentPoly:
    """Laurent polynomial in ``t^(1/4)`` over the Gaussian integers.

    The term map sends the exponent, counted in quarter units of ``t``,
    to its nonzero coefficient.  Instances are immutable and canonical:
    equal polynomials have equal term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Coefficient] | None = None):
        clean: dict[int, GaussInt] = {}
        if terms:
            for q, c in terms.items():
                c = GaussInt.coerce(c)
                if c:
                    clean[int(q)] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("LaurentPoly is immutable")

    # ------------------------------------------------------------ constructors

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "LaurentPoly":
        return _ONE

    @classmethod
    def const(cls, c: Coefficient) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def t_pow(cls, exponent: ExponentLike, coeff: Coefficient = 1) -> "LaurentPoly":
        """``coeff * t**exponent`` with ``exponent`` any multiple of 1/4."""
        return cls({_quarters(exponent): coeff})

    @classmethod
    def a_pow(cls, exponent: int, coeff: Coefficient = 1) -> "LaurentPoly":
        """``coeff * A**exponent`` in the bracket variable, ``A = t^(-1/4)``."""
        return cls({-int(exponent): coeff})

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[ExponentLike, Coefficient]]) -> "LaurentPoly":
        acc: dict[int, GaussInt] = {}
        for exponent, coeff in pairs:
            q = _quarters(exponent)
            acc[q] = GaussInt.coerce(acc.get(q, 0)) + GaussInt.coerce(coeff)
        return cls(acc)

    # ------------------------------------------------------------- inspection

    @property
    def terms(self) -> dict[int, GaussInt]:
        """Copy of the term map keyed by quarter-unit exponents."""
        return dict(self._terms)

    def coefficient(self, exponent: ExponentLike) -> GaussInt:
        return self._terms.get(_quarters(exponent), GaussInt.ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self._terms.values())

    def min_exponent(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return Fraction(min(self._terms), 4)

    def max_exponent(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return Fraction(max(self._terms), 4)

    # ------------------------------------------------------------- arithmetic

    def __add__(self, other):
        if isinstance(other, (int, GaussInt)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        acc = dict(self._terms)
        for q, c in other._terms.items():
            prev = acc.get(q)
            if prev is None:
                acc[q] = c
            else:
                s = prev + c
                if s:
                    acc[q] = s
                else:
                    del acc[q]
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "_terms", acc)
        object.__setattr__(out, "_hash", None)
        return out

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({q: -c for q, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, GaussInt)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, GaussInt)):
            c = GaussInt.coerce(other)
            if not c:
                return _ZERO
            return LaurentPoly({q: v * c for q, v in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return _ZERO
        if len(a) > len(b):
            a, b = b, a
        acc: dict[int, GaussInt] = {}
        for qa, ca in a.items():
            for qb, cb in b.items():
                q = qa + qb
                prev = acc.get(q)
                if prev is None:
                    acc[q] = ca * cb
                else:
                    s = prev + ca * cb
                    if s:
                        acc[q] = s
                    else:
                        del acc[q]
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "_terms", acc)
        object.__setattr__(out, "_hash", None)
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            return self.unit_inverse() ** (-k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, exponent: ExponentLike) -> "LaurentPoly":
        """Multiply by ``t**exponent``."""
        d = _quarters(exponent)
        return LaurentPoly({q + d: c for q, c in self._terms.items()})

    def invert_t(self) -> "LaurentPoly":
        """Substitute ``t -> t^-1`` (negate every exponent)."""
        return LaurentPoly({-q: c for q, c in self._terms.items()})

    def is_monomial_unit(self) -> bool:
        if len(self._terms) != 1:
            return False
        (_, c), = self._terms.items()
        return c.is_unit()

    def unit_inverse(self) -> "LaurentPoly":
        """Inverse of a monomial whose coefficient is a unit of Z[i]."""
        if not self.is_monomial_unit():
            raise NonInvertibleImage(
                f"{self} is not invertible in the Laurent ring")
        (q, c), = self._terms.items()
        return LaurentPoly({-q: c.unit_inverse()})

    def real_part_strict(self) -> "LaurentPoly":
        """Assert every coefficient is real and return the polynomial."""
        if not self.is_real():
            raise ResidualImaginaryPart(
                f"nonzero imaginary coefficients in {self}")
        return self

    def eval_at(self, t0) -> GaussRational:
        """Exact evaluation at ``t0`` (integer exponents required)."""
        t0 = GaussRational.coerce(t0)
        if t0 == GaussRational(0):
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at 0")
        total = GaussRational(0)
        for q, c in self._terms.items():
            if q % 4:
                raise FractionalExponent(
                    f"exponent {Fraction(q, 4)} is not an integer")
            total = total + GaussRational.coerce(c) * t0 ** (q // 4)
        return total

    # -------------------------------------------------------------- protocol

    def __eq__(self, other):
        if isinstance(other, (int, GaussInt)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def to_str(self, var: str = "t") -> str:
        items = [(_exp_str(var, q), c) for q, c in sorted(self._terms.items())]
        return _join_terms(_scalar_term_strings(items))

    def __str__(self):
        return self.to_str("t")


_ZERO = LaurentPoly()
_ONE = LaurentPoly({0: 1})


class TwoVarPoly:
    """Laurent polynomial in ``a`` and ``z`` with integer coefficients.

    Term map: ``(a_exponent, z_exponent) -> nonzero int``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        if terms:
            for key, c in terms.items():
                if c:
                    clean[(int(key[0]), int(key[1]))] = int(c)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("TwoVarPoly is immutable")

    # ------------------------------------------------------------ constructors

    @classmethod
    def zero(cls) -> "TwoVarPoly":
        return _TV_ZERO

    @classmethod
    def one(cls) -> "TwoVarPoly":
        return _TV_ONE

    @classmethod
    def term(cls, a_exp: int, z_exp: int, coeff: int = 1) -> "TwoVarPoly":
        return cls({(a_exp, z_exp): coeff})

    @classmethod
    def a_pow(cls, k: int, coeff: int = 1) -> "TwoVarPoly":
        return cls({(k, 0): coeff})

    @classmethod
    def z_pow(cls, k: int, coeff: int = 1) -> "TwoVarPoly":
        return cls({(0, k): coeff})

    # ------------------------------------------------------------- inspection

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_z_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(z for _, z in self._terms)

    # ------------------------------------------------------------- arithmetic

    def __add__(self, other):
        if isinstance(other, int):
            other = TwoVarPoly({(0, 0): other})
        if not isinstance(other, TwoVarPoly):
            return NotImplemented
        acc = dict(self._terms)
        for key, c in other._terms.items():
            s = acc.get(key, 0) + c
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
        out = TwoVarPoly.__new__(TwoVarPoly)
        object.__setattr__(out, "_terms", acc)
        object.__setattr__(out, "_hash", None)
        return out

    __radd__ = __add__

    def __neg__(self):
        return TwoVarPoly({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = TwoVarPoly({(0, 0): other})
        if not isinstance(other, TwoVarPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return _TV_ZERO
            return TwoVarPoly({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, TwoVarPoly):
            return NotImplemented
        acc: dict[tuple[int, int], int] = {}
        for (pa, pz), c1 in self._terms.items():
            for (qa, qz), c2 in other._terms.items():
                key = (pa + qa, pz + qz)
                s = acc.get(key, 0) + c1 * c2
                if s:
                    acc[key] = s
                else:
                    del acc[key]
        out = TwoVarPoly.__new__(TwoVarPoly)
        object.__setattr__(out, "_terms", acc)
        object.__setattr__(out, "_hash", None)
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TwoVarPoly":
        if k < 0:
            raise ValueError("negative powers of a TwoVarPoly are not defined")
        out = _TV_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mirror_a(self) -> "TwoVarPoly":
        """Substitute ``a -> a^-1`` (the mirror-image rule for F)."""
        return TwoVarPoly({(-a, z): c for (a, z), c in self._terms.items()})

    # -------------------------------------------------------------- protocol

    def __eq__(self, other):
        if isinstance(other, int):
            other = TwoVarPoly({(0, 0): other})
        if not isinstance(other, TwoVarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"TwoVarPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        by_z: dict[int, dict[int, GaussInt]] = {}
        for (a, z), c in self._terms.items():
            by_z.setdefault(z, {})[a] = GaussInt(c)
        parts = []
        for z in sorted(by_z):
            a_terms = [(_exp_str("a", 4 * a), c)
                       for a, c in sorted(by_z[z].items())]
            rendered = _scalar_term_strings(a_terms)
            zs = _exp_str("z", 4 * z)
            if not zs:
                parts.extend(rendered)
                continue
            if len(rendered) == 1:
                sign, body = rendered[0]
                if body == "1":
                    body = zs
                else:
                    body = f"{body}{zs}"
                parts.append((sign, body))
            else:
                parts.append(("+", f"({_join_terms(rendered)}){zs}"))
        return _join_terms(parts)


_TV_ZERO = TwoVarPoly()
_TV_ONE = TwoVarPoly({(0, 0): 1})


def two_var_substitute(
    poly: TwoVarPoly,
    a_image: LaurentPoly,
    z_image: LaurentPoly,
    require_real: bool = False,
) -> LaurentPoly:
    """Apply the ring morphism ``a -> a_image, z -> z_image`` to ``poly``.

    Negative ``a`` or ``z`` exponents require the corresponding image to be
    a monomial unit of the Laurent ring.  With ``require_real`` the result
    must have purely real coefficients (they are asserted and the polynomial
    returned unchanged), which is how the Jones-from-F substitution
    ``a -> i t^-2, z -> i(t - t^-1)`` is used on knots.
    """
    a_inv = z_inv = None
    if any(a < 0 for a, _ in poly._terms):
        if not a_image.is_monomial_unit():
            raise NonInvertibleImage(
                "negative a-exponents need an invertible a-image")
        a_inv = a_image.unit_inverse()
    if any(z < 0 for _, z in poly._terms):
        if not z_image.is_monomial_unit():
            raise NonInvertibleImage(
                "negative z-exponents need an invertible z-image")
        z_inv = z_image.unit_inverse()

    # cache powers; exponent ranges are tiny in practice
    a_powers: dict[int, LaurentPoly] = {0: LaurentPoly.one()}
    z_powers: dict[int, LaurentPoly] = {0: LaurentPoly.one()}

    def power(cache, base, inverse, k):
        if k in cache:
            return cache[k]
        if k > 0:
            cache[k] = power(cache, base, inverse, k - 1) * base
        else:
            cache[k] = power(cache, base, inverse, k + 1) * inverse
        return cache[k]

    total = LaurentPoly.zero()
    for (ae, ze), c in sorted(poly._terms.items()):
        term = power(a_powers, a_image, a_inv, ae) * power(z_powers, z_image, z_inv, ze)
        total = total + term * c
    if require_real:
        total = total.real_part_strict()
    return total
