"""
Exact scalars: rationals and elements of a simple extension Q(a).

An element of Q(a) is stored as its coordinates (c0, ..., c_{d-1}) in the
basis 1, a, ..., a^{d-1}; every operation reduces modulo the minimal
polynomial so equal elements always have equal coordinates.
"""

import logging
import re
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

import sympy
from sympy import Poly, Symbol

from .errors import DivisionByZero, FieldMismatch, InvalidField, NotInvertible, NotRational, ParseError

logger = logging.getLogger(__name__)

RationalLike = Union[int, Fraction, str]

_X = Symbol("x")
_ZERO = Fraction(0)
_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def parse_rational(value: Any) -> Fraction:
    """Read a rational from an int, a Fraction or a "p/q" / "p" string"""
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{value!r} is not an exact rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL.fullmatch(value.strip()):
            raise ParseError(f"invalid rational '{value}'")
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in rational '{value}'")
    raise ParseError(f"cannot read {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    return str(q)


def _to_poly(coeffs: Sequence[Fraction]) -> Poly:
    dense = [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)]
    return Poly(dense, _X, domain=sympy.QQ)


class NumberField:
    """
    Descriptor of Q(a) where a is a root of a monic irreducible polynomial.

    minpoly lists coefficients lowest degree first, so ["-2", "0", "1"] is x^2 - 2.
    Degree 1 describes Q itself; all degree-1 descriptors compare equal.
    """

    __slots__ = ("minpoly", "degree", "irreducible")

    def __init__(self, minpoly: Sequence[RationalLike]):
        coeffs = tuple(parse_rational(c) for c in minpoly)
        if len(coeffs) < 2:
            raise InvalidField("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise InvalidField(f"minimal polynomial must be monic, leading coefficient is {coeffs[-1]}")
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        if self.degree > 1 and not _to_poly(coeffs).is_irreducible:
            raise InvalidField(f"minimal polynomial {self._poly_text()} is reducible over Q")
        self.irreducible = True

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "NumberField":
        return cls(data["minpoly"])

    def to_json(self) -> Dict[str, List[str]]:
        return {"minpoly": [format_rational(c) for c in self.minpoly]}

    @property
    def is_rational_field(self) -> bool:
        return self.degree == 1

    def _key(self):
        return (1,) if self.degree == 1 else self.minpoly

    def __eq__(self, other):
        if not isinstance(other, NumberField):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _poly_text(self) -> str:
        return str(_to_poly(self.minpoly).as_expr())

    def __repr__(self):
        return f"NumberField({self._poly_text()})"

    # Element construction

    def element(self, value: Any) -> "FieldElement":
        """Coerce an int, rational, rational string, coefficient list or element of Q into this field"""
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if value.field.degree == 1:
                return FieldElement(self, (value.coeffs[0],))
            raise FieldMismatch(f"cannot move an element of {value.field} into {self}")
        if isinstance(value, (list, tuple)):
            coeffs = [parse_rational(c) for c in value]
            if len(coeffs) > self.degree:
                raise ParseError(f"field element has {len(coeffs)} coordinates, field degree is {self.degree}")
            return FieldElement(self, coeffs)
        return FieldElement(self, (parse_rational(value),))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement._raw(self, (_ZERO,) * self.degree)

    @property
    def one(self) -> "FieldElement":
        return FieldElement._raw(self, (Fraction(1),) + (_ZERO,) * (self.degree - 1))

    @property
    def generator(self) -> "FieldElement":
        if self.degree == 1:
            return FieldElement._raw(self, (-self.minpoly[0],))
        return FieldElement._raw(self, (_ZERO, Fraction(1)) + (_ZERO,) * (self.degree - 2))

    def _reduce(self, prod: List[Fraction]) -> Tuple[Fraction, ...]:
        d = self.degree
        m = self.minpoly
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c:
                # a^k = a^{k-d} * (-(m_0 + ... + m_{d-1} a^{d-1}))
                for i in range(d):
                    prod[k - d + i] -= c * m[i]
        return tuple(prod[:d])


class FieldElement:
    """c0 + c1 a + ... + c_{d-1} a^{d-1}; treat as immutable"""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Sequence[RationalLike]):
        values = tuple(parse_rational(c) for c in coeffs)
        if len(values) > field.degree:
            raise ParseError(f"field element has {len(values)} coordinates, field degree is {field.degree}")
        self.field = field
        self.coeffs = values + (_ZERO,) * (field.degree - len(values))

    @classmethod
    def _raw(cls, field: NumberField, coeffs: Tuple[Fraction, ...]) -> "FieldElement":
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"{self} is not rational")
        return self.coeffs[0]

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            return other
        return self.field.element(other)

    def __add__(self, other):
        return fe_add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return fe_sub(self, self._coerce(other))

    def __rsub__(self, other):
        return fe_sub(self._coerce(other), self)

    def __neg__(self):
        return FieldElement._raw(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return fe_scale(self, Fraction(other))
        return fe_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return fe_mul(self, fe_inv(self._coerce(other)))

    def __rtruediv__(self, other):
        return fe_mul(self._coerce(other), fe_inv(self))

    def inverse(self) -> "FieldElement":
        return fe_inv(self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        if self.field == other.field:
            return self.coeffs == other.coeffs
        if self.is_rational() and other.is_rational():
            return self.coeffs[0] == other.coeffs[0]
        return False

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def to_json(self) -> List[str]:
        return [format_rational(c) for c in self.coeffs]

    def __repr__(self):
        terms = []
        for power, c in enumerate(self.coeffs):
            if not c:
                continue
            if power == 0:
                terms.append(str(c))
            elif power == 1:
                terms.append(f"{c}*a")
            else:
                terms.append(f"{c}*a^{power}")
        return " + ".join(terms) if terms else "0"


def _check_same_field(a: FieldElement, b: FieldElement) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} and {b.field} differ")


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same_field(a, b)
    return FieldElement._raw(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def fe_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same_field(a, b)
    return FieldElement._raw(a.field, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def fe_scale(a: FieldElement, q: Fraction) -> FieldElement:
    return FieldElement._raw(a.field, tuple(c * q for c in a.coeffs))


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same_field(a, b)
    field = a.field
    d = field.degree
    if d == 1:
        return FieldElement._raw(field, (a.coeffs[0] * b.coeffs[0],))
    prod = [_ZERO] * (2 * d - 1)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if y:
                prod[i + j] += x * y
    return FieldElement._raw(field, field._reduce(prod))


def fe_inv(a: FieldElement) -> FieldElement:
    """Inverse by the extended Euclidean algorithm against the minimal polynomial"""
    if a.is_zero():
        raise DivisionByZero("cannot invert zero")
    field = a.field
    if field.degree == 1:
        return FieldElement._raw(field, (1 / a.coeffs[0],))
    s, _, h = _to_poly(a.coeffs).gcdex(_to_poly(field.minpoly))
    if not h.is_one:
        raise NotInvertible(f"{a} shares a factor with the minimal polynomial of {field}")
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(s.all_coeffs())]
    coeffs += [_ZERO] * (field.degree - len(coeffs))
    return FieldElement._raw(field, tuple(coeffs))


def fe_rational_components(a: FieldElement) -> List[Fraction]:
    """Coordinates of a in the Q-basis 1, a, ..., a^{d-1}"""
    return list(a.coeffs)


QQ = NumberField(["0", "1"])
GAUSSIAN = NumberField(["1", "0", "1"])
