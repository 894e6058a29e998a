"""Exact arithmetic in the prime field F_p."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    pass


class ZeroInverse(FieldError, ZeroDivisionError):
    pass


class DenominatorDivisibleByP(FieldError, ZeroDivisionError):
    """A rational coefficient cannot be reduced because p divides its denominator."""

    def __init__(self, num, den, p, context=None):
        self.num, self.den, self.p, self.context = num, den, p, context
        msg = f"{num}/{den} is not defined mod {p}"
        if context is not None:
            msg += f" ({context})"
        super().__init__(msg)


class EvenPrime(FieldError):
    pass


class NotPrime(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Prime:
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or not is_prime(self.value):
            raise NotPrime(f"{self.value!r} is not prime")

    @property
    def odd(self) -> bool:
        return self.value != 2

    def require_odd(self) -> "Prime":
        if not self.odd:
            raise EvenPrime("cohomology operations need an odd prime")
        return self

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __str__(self):
        return str(self.value)


def as_prime(p) -> Prime:
    return p if isinstance(p, Prime) else Prime(int(p))


def inv_mod(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    x0, x1, r0, r1 = 1, 0, a, p
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        x0, x1 = x1, x0 - q * x1
    return x0 % p


@dataclass(frozen=True)
class FpElement:
    residue: int
    modulus: Prime

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.modulus.value)

    @classmethod
    def of(cls, value, p) -> "FpElement":
        p = as_prime(p)
        if isinstance(value, Fraction):
            return rational_to_fp(value.numerator, value.denominator, p)
        return cls(int(value), p)

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.modulus != self.modulus:
                raise FieldError("mixed moduli")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.residue + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.residue - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(o - self.residue, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.residue * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.residue, self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * fp_inv(FpElement(o, self.modulus))

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int):
            return (other - self.residue) % self.modulus.value == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus.value))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.modulus.value})"


def fp_inv(a: FpElement) -> FpElement:
    return FpElement(inv_mod(a.residue, a.modulus.value), a.modulus)


def rational_to_fp(num: int, den: int, p, context=None) -> FpElement:
    p = as_prime(p)
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den % p.value == 0:
        g = Fraction(num, den)
        if g.denominator % p.value == 0:
            raise DenominatorDivisibleByP(num, den, p.value, context)
        num, den = g.numerator, g.denominator
    return FpElement(num * inv_mod(den, p.value), p)


def reduce_rational(q, p: int, context=None) -> int:
    """Residue of an int or Fraction modulo ``p`` as a plain int."""
    if isinstance(q, int):
        return q % p
    q = Fraction(q)
    if q.denominator % p == 0:
        raise DenominatorDivisibleByP(q.numerator, q.denominator, p, context)
    return q.numerator * inv_mod(q.denominator, p) % p
