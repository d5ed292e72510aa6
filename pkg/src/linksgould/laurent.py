"""Exact bivariate Laurent polynomials in ``q`` and ``p``.

Polynomials are stored sparsely as a dict mapping doubled exponent pairs
``(2*e_p, 2*e_q)`` to nonzero Python integers, so half-integral exponents
(powers of ``q^(1/2)`` and ``p^(1/2)``) are representable exactly.  Final
invariant values always have integral exponents.

:class:`ExtendedPoly` adjoins one square root ``Y`` with ``Y^2 = D(q, p)``;
it is the coefficient ring of the braid operators.

Text format: terms ``coeff*q^a*p^b`` separated by ``;`` in ascending
``(e_p, e_q)`` order, omitting zero exponents; the zero polynomial is ``0``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator

__all__ = [
    "LaurentPoly2",
    "ExtendedPoly",
    "StructuralError",
    "PolyParseError",
    "poly_arith",
    "substitute_inverse",
    "dot_eq",
    "canonical_fingerprint",
    "serialize_poly",
    "parse_poly",
    "poly_to_json",
    "poly_from_json",
]


class StructuralError(ValueError):
    """Raised when values from incompatible rings are combined."""


class PolyParseError(ValueError):
    """Malformed polynomial text; ``position`` is the offending character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _double(e) -> int:
    """Doubled integer form of an integral or half-integral exponent."""
    e2 = Fraction(e) * 2
    if e2.denominator != 1:
        raise ValueError(f"exponent {e} is not a multiple of 1/2")
    return int(e2)


def _undouble(e2: int):
    return e2 // 2 if e2 % 2 == 0 else Fraction(e2, 2)


class LaurentPoly2:
    """Immutable sparse Laurent polynomial in ``q`` and ``p``.

    >>> f = LaurentPoly2.q(2) + 3
    >>> serialize_poly(f)
    '3;1*q^2'
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: dict[tuple[int, int], int] | None = None):
        # Internal: keys are doubled exponents (2 e_p, 2 e_q); no zero values.
        self._t = {k: v for k, v in terms.items() if v} if terms else {}
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "LaurentPoly2":
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def from_terms(cls, items: Iterable[tuple]) -> "LaurentPoly2":
        """Build from ``(e_p, e_q, coeff)`` triples; repeated monomials add up."""
        t: dict[tuple[int, int], int] = {}
        for ep, eq, c in items:
            k = (_double(ep), _double(eq))
            t[k] = t.get(k, 0) + int(c)
        return cls(t)

    @classmethod
    def monomial(cls, e_q=0, e_p=0, coeff: int = 1) -> "LaurentPoly2":
        return cls({(_double(e_p), _double(e_q)): int(coeff)})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly2":
        return cls({(0, 0): int(c)})

    @classmethod
    def q(cls, e=1) -> "LaurentPoly2":
        return cls.monomial(e_q=e)

    @classmethod
    def p(cls, e=1) -> "LaurentPoly2":
        return cls.monomial(e_p=e)

    # inspection
    def terms(self) -> list[tuple]:
        """``(e_p, e_q, coeff)`` triples in canonical ascending ``(e_p, e_q)`` order."""
        return [(_undouble(a), _undouble(b), c) for (a, b), c in sorted(self._t.items())]

    def raw_terms(self) -> dict[tuple[int, int], int]:
        """Copy of the doubled-exponent dictionary."""
        return dict(self._t)

    def coefficient(self, e_q=0, e_p=0) -> int:
        return self._t.get((_double(e_p), _double(e_q)), 0)

    def is_zero(self) -> bool:
        return not self._t

    def is_integral(self) -> bool:
        """True when every exponent is an integer."""
        return all(a % 2 == 0 and b % 2 == 0 for a, b in self._t)

    def is_constant(self) -> bool:
        return not self._t or set(self._t) == {(0, 0)}

    def __len__(self) -> int:
        return len(self._t)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.terms())

    def __bool__(self) -> bool:
        return bool(self._t)

    # arithmetic
    @staticmethod
    def _coerce(other) -> "LaurentPoly2":
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, int):
            return LaurentPoly2.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for k, v in other._t.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return LaurentPoly2._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2._raw({k: -v for k, v in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._t.items():
            for (a2, b2), c2 in other._t.items():
                k = (a1 + a2, b1 + b2)
                t[k] = t.get(k, 0) + c1 * c2
        return LaurentPoly2({k: v for k, v in t.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._t) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            ((a, b), c), = self._t.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient is not invertible")
            return LaurentPoly2._raw({(a * n, b * n): c ** (-n)})
        result = LaurentPoly2.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale_exponents(self, sp: int = 1, sq: int = 1) -> "LaurentPoly2":
        """Multiply every p-exponent by ``sp`` and q-exponent by ``sq`` (``±1`` inverts)."""
        return LaurentPoly2._raw({(a * sp, b * sq): c for (a, b), c in self._t.items()})

    def shift(self, e_q=0, e_p=0) -> "LaurentPoly2":
        """Multiply by the monomial ``q^e_q p^e_p``."""
        da, db = _double(e_p), _double(e_q)
        return LaurentPoly2._raw({(a + da, b + db): c for (a, b), c in self._t.items()})

    # comparison
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.constant(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly2({serialize_poly(self)!r})"

    def __str__(self):
        return serialize_poly(self)


class ExtendedPoly:
    """Element ``base + Y*radical`` of the ring with ``Y^2 = discriminant``.

    ``discriminant`` is the ring identifier: values with different
    discriminants are never combined.  ``None`` denotes the plain ring
    (radical forced to zero).
    """

    __slots__ = ("base", "radical", "discriminant")

    def __init__(self, base: LaurentPoly2, radical: LaurentPoly2 | None = None,
                 discriminant: LaurentPoly2 | None = None):
        radical = radical if radical is not None else LaurentPoly2()
        if discriminant is None and not radical.is_zero():
            raise StructuralError("radical part requires a discriminant")
        self.base = base
        self.radical = radical
        self.discriminant = discriminant

    def _check(self, other: "ExtendedPoly"):
        d1, d2 = self.discriminant, other.discriminant
        if d1 is not d2 and d1 != d2:
            raise StructuralError("discriminant mismatch")

    def __add__(self, other: "ExtendedPoly") -> "ExtendedPoly":
        self._check(other)
        return ExtendedPoly(self.base + other.base, self.radical + other.radical, self.discriminant)

    def __neg__(self) -> "ExtendedPoly":
        return ExtendedPoly(-self.base, -self.radical, self.discriminant)

    def __sub__(self, other: "ExtendedPoly") -> "ExtendedPoly":
        return self + (-other)

    def __mul__(self, other: "ExtendedPoly") -> "ExtendedPoly":
        self._check(other)
        a, b, c, d = self.base, self.radical, other.base, other.radical
        base = a * c
        if b and d:
            base = base + b * d * self.discriminant
        rad = a * d + b * c if (b or d) else LaurentPoly2()
        return ExtendedPoly(base, rad, self.discriminant)

    def is_zero(self) -> bool:
        return self.base.is_zero() and self.radical.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ExtendedPoly):
            return NotImplemented
        return (self.base == other.base and self.radical == other.radical
                and self.discriminant == other.discriminant)

    def __hash__(self):
        return hash((self.base, self.radical))

    def __repr__(self):
        return f"ExtendedPoly({serialize_poly(self.base)!r}, Y*{serialize_poly(self.radical)!r})"


def poly_arith(op: str, a, b=None):
    """Ring operation ``op`` in ``{'add', 'mul', 'negate'}`` on polynomials of one kind."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "negate":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def substitute_inverse(f: LaurentPoly2, var: str) -> LaurentPoly2:
    """Replace ``var`` (``'q'`` or ``'p'``) by its inverse."""
    if var == "q":
        return f.scale_exponents(1, -1)
    if var == "p":
        return f.scale_exponents(-1, 1)
    raise ValueError(f"unknown variable {var!r}")


def dot_eq(a: LaurentPoly2, b: LaurentPoly2) -> bool:
    """Equality up to an overall sign."""
    return a == b or a == -b


def symmetry_images(f: LaurentPoly2) -> list[LaurentPoly2]:
    """The orbit of ``f`` under sign change, q-inversion and p-inversion (8 images)."""
    out = []
    for sp in (1, -1):
        for sq in (1, -1):
            g = f.scale_exponents(sp, sq)
            out.extend((g, -g))
    return out


def canonical_fingerprint(f: LaurentPoly2) -> LaurentPoly2:
    """Representative of the orbit of ``f`` under the 8-element symmetry group.

    The sign is fixed by a positive leading coefficient (first term in
    canonical order); among the remaining images the least serialization wins.
    """
    images = [g for g in symmetry_images(f) if g.is_zero() or g.terms()[0][2] > 0]
    return min(images, key=serialize_poly)


# text form

def _fmt_exp(e2: int) -> str:
    return str(e2 // 2) if e2 % 2 == 0 else f"{e2}/2"


def serialize_poly(f: LaurentPoly2) -> str:
    """Canonical text form; half-integral exponents are written ``a/2``."""
    if f.is_zero():
        return "0"
    parts = []
    for (a, b), c in sorted(f._t.items()):
        s = str(c)
        if b:
            s += "*q^" + _fmt_exp(b)
        if a:
            s += "*p^" + _fmt_exp(a)
        parts.append(s)
    return ";".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<num>[+-]?\d+)|(?P<var>[qp])\s*(?:\^\s*(?P<exp>[+-]?\d+(?:/2)?))?)\s*")


def parse_poly(text: str) -> LaurentPoly2:
    """Inverse of :func:`serialize_poly`.

    Each term is a ``*``-separated product of one integer coefficient and
    powers ``q^a``/``p^b`` (a bare ``q`` means exponent 1).  Terms with equal
    monomials are summed.  Raises :class:`PolyParseError` on malformed input.
    """
    if text.strip() == "0":
        return LaurentPoly2()
    if not text.strip():
        raise PolyParseError("empty polynomial text", 0)
    t: dict[tuple[int, int], int] = {}
    pos = 0
    for raw in text.split(";"):
        coeff = None
        ep2 = eq2 = 0
        seen = set()
        fpos = 0
        factors = raw.split("*")
        for factor in factors:
            start = pos + fpos
            m = _TOKEN.fullmatch(factor)
            if not m:
                raise PolyParseError(f"malformed factor {factor.strip()!r}", start)
            if m.group("num") is not None:
                if coeff is not None:
                    raise PolyParseError("repeated coefficient", start)
                coeff = int(m.group("num"))
            else:
                v = m.group("var")
                if v in seen:
                    raise PolyParseError(f"repeated variable {v!r}", start)
                seen.add(v)
                e = m.group("exp") or "1"
                e2 = int(e[:-2]) if e.endswith("/2") else 2 * int(e)
                if v == "q":
                    eq2 = e2
                else:
                    ep2 = e2
            fpos += len(factor) + 1
        if coeff is None:
            if raw.strip().startswith("-"):
                raise PolyParseError("malformed term", pos)
            coeff = 1
        k = (ep2, eq2)
        t[k] = t.get(k, 0) + coeff
        pos += len(raw) + 1
    return LaurentPoly2(t)


def _json_exp(e2: int):
    return e2 // 2 if e2 % 2 == 0 else e2 / 2


def poly_to_json(f: LaurentPoly2) -> list:
    """``[[e_p, e_q, "coeff"], ...]`` in canonical order (halves as ``x.5`` numbers)."""
    return [[_json_exp(a), _json_exp(b), str(c)] for (a, b), c in sorted(f._t.items())]


def poly_from_json(data: list) -> LaurentPoly2:
    t: dict[tuple[int, int], int] = {}
    for item in data:
        if len(item) != 3:
            raise ValueError(f"bad polynomial term {item!r}")
        ep, eq, c = item
        k = (_double(Fraction(str(ep))), _double(Fraction(str(eq))))
        t[k] = t.get(k, 0) + int(c)
    return LaurentPoly2(t)
