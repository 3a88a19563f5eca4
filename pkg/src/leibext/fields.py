"""Ground fields: the rationals (default) and word-size prime fields.

Every tensor in the package is a numpy ``object`` array whose entries are
elements of one of these fields.  Rationals are plain :class:`fractions.Fraction`
values; prime-field elements are :class:`GFElement`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _gcd

import numpy as np

__all__ = [
    "QQ",
    "GF",
    "GFElement",
    "RationalField",
    "parse_field",
    "parse_scalar",
    "format_scalar",
    "to_field",
    "zeros",
    "identity",
    "is_zero",
    "half",
    "einsum",
    "einsum_sum",
]

_SCALAR_RE = re.compile(r"^(-?[0-9]+)(?:/([0-9]+))?$")


def parse_scalar(text: str) -> Fraction:
    """Parse the canonical scalar string ``"n"`` or ``"p/q"``.

    The string must be in lowest terms with ``q > 1`` and contain no
    whitespace; anything else raises ``ValueError``.
    """
    if not isinstance(text, str):
        raise ValueError(f"scalar must be a string, got {text!r}")
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ValueError(f"malformed scalar {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        if m.group(1) == "-0":
            raise ValueError(f"non-canonical scalar {text!r}")
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    value = Fraction(num, den)
    if value.denominator != den or den == 1:
        raise ValueError(f"scalar {text!r} is not in lowest terms")
    return value


def format_scalar(x) -> str:
    if isinstance(x, GFElement):
        return str(x.value)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RationalField:
    name: str = "QQ"
    characteristic: int = 0

    def __call__(self, x) -> Fraction:
        if type(x) is Fraction:
            return x
        if isinstance(x, GFElement):
            raise TypeError("cannot coerce a prime-field element to QQ")
        if isinstance(x, str):
            return parse_scalar(x)
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def elements(self):
        raise ValueError("QQ is infinite")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class GFElement:
    """Element of the prime field with modulus ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError("mixing elements of different prime fields")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.value == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.value - o) % self.p == 0

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __bool__(self):
        return self.value != 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"GF{self.p}({self.value})"


@dataclass(frozen=True)
class GF:
    """Prime field of order ``p`` (primality is checked on construction)."""

    p: int

    def __post_init__(self):
        p = self.p
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x) -> GFElement:
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise ValueError("element of a different prime field")
            return x
        if isinstance(x, str):
            x = parse_scalar(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return GFElement(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return GFElement(int(x), self.p)

    @property
    def zero(self) -> GFElement:
        return GFElement(0, self.p)

    @property
    def one(self) -> GFElement:
        return GFElement(1, self.p)

    def elements(self):
        return [GFElement(v, self.p) for v in range(self.p)]


def parse_field(spec: str):
    """``"q"`` gives :data:`QQ`, ``"p:PRIME"`` a prime field."""
    if spec == "q":
        return QQ
    if spec.startswith("p:"):
        return GF(int(spec[2:]))
    raise ValueError(f"unknown field {spec!r} (expected 'q' or 'p:PRIME')")


def to_field(data, field=QQ) -> np.ndarray:
    """Object array with every entry coerced into ``field``."""
    arr = np.asarray(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = field(x)
    return out


def zeros(shape, field=QQ) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    z = field.zero
    for idx in np.ndindex(*out.shape):
        out[idx] = z
    return out


def identity(n: int, field=QQ) -> np.ndarray:
    out = zeros((n, n), field)
    for i in range(n):
        out[i, i] = field.one
    return out


def is_zero(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).flat)


def half(field=QQ):
    if field.characteristic == 2:
        raise ZeroDivisionError("1/2 does not exist in characteristic 2")
    return field.one / (field.one + field.one)


_INT64_SAFE = 2**62


def _gf_modulus(ops):
    for op in ops:
        for x in op.flat:
            if isinstance(x, GFElement):
                return x.p
    return None


def _contracted_size(expr, ops):
    inputs, output = expr.split("->")
    dims = {}
    for sub, op in zip(inputs.split(","), ops):
        for letter, d in zip(sub, op.shape):
            dims[letter] = d
    size = 1
    for letter, d in dims.items():
        if letter not in output:
            size *= d
    return size


def _integer_operand(op, p):
    """``(integer array, denominator)`` with ``op = ints / den`` (residues when ``p`` is set)."""
    if p is not None:
        arr = np.frompyfunc(lambda x: x.value if isinstance(x, GFElement) else int(x) % p, 1, 1)(op)
        return np.asarray(arr, dtype=object).reshape(op.shape), 1
    den = 1
    for x in op.flat:
        d = x.denominator if type(x) is Fraction else 1
        if d != 1:
            den = den * d // _gcd(den, d)
    if den == 1:
        arr = np.frompyfunc(lambda x: x.numerator if type(x) is Fraction else int(x), 1, 1)(op)
    else:
        arr = np.frompyfunc(lambda x: Fraction(x).numerator * (den // Fraction(x).denominator), 1, 1)(op)
    return np.asarray(arr, dtype=object).reshape(op.shape), den


def einsum_sum(terms) -> np.ndarray:
    """Exact ``sum(sign * np.einsum(expr, *ops))`` over ``(sign, expr, ops)`` terms.

    All terms must share the output shape.  Denominators are cleared (or
    residues taken) so every contraction and the running sum stay on
    integers: ``int64`` contractions when a magnitude bound rules out
    overflow, Python integers otherwise.  Only the final result is turned
    back into field elements.  The explicit ``->`` output form is required.
    """
    terms = [(sign, expr, [np.asarray(o, dtype=object) for o in ops]) for sign, expr, ops in terms]
    p = None
    for _, _, ops in terms:
        p = p or _gf_modulus(ops)
    converted = {}   # id(operand) -> integer form; operands recur across terms
    raws = []
    common = 1
    for sign, expr, ops in terms:
        ints = []
        scale = 1
        bound = _contracted_size(expr, ops)
        for op in ops:
            if id(op) not in converted:
                converted[id(op)] = _integer_operand(op, p)
            arr, den = converted[id(op)]
            scale *= den
            bound *= max((abs(int(v)) for v in arr.flat), default=0) or 1
            ints.append(arr)
        if bound < _INT64_SAFE:
            raw = np.einsum(expr, *[a.astype(np.int64) for a in ints]).astype(object)
        else:
            raw = np.asarray(np.einsum(expr, *ints), dtype=object)
        raws.append((sign, raw, scale))
        common = common * scale // _gcd(common, scale)
    total = None
    for sign, raw, scale in raws:
        part = raw * (common // scale) if scale != common else raw
        if total is None:
            total = part if sign > 0 else -part
        else:
            total = total + part if sign > 0 else total - part
    total = np.asarray(total, dtype=object)
    if p is not None:
        conv = lambda v: GFElement(int(v) % p, p)  # noqa: E731
    elif common == 1:
        conv = _small_fraction
    else:
        conv = lambda v: Fraction(int(v), common)  # noqa: E731
    return np.asarray(np.frompyfunc(conv, 1, 1)(total), dtype=object).reshape(total.shape)


def einsum(expr: str, *operands) -> np.ndarray:
    """Exact ``np.einsum`` for field-valued object arrays (see :func:`einsum_sum`)."""
    return einsum_sum([(1, expr, operands)])


_FRACTIONS = {k: Fraction(k) for k in range(-256, 257)}


def _small_fraction(v):
    v = int(v)
    hit = _FRACTIONS.get(v)
    return hit if hit is not None else Fraction(v)
