"""Exact scalars ``a + b*sqrt(q)`` with rational ``a``, ``b``."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or an int")
    return Fraction(x)


class SqrtQScalar:
    """Element ``a + b*sqrt(q)`` of Q(sqrt(q)).

    When ``q`` is a perfect square the ``b`` part is folded into ``a`` so the
    representation stays unique.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a=0, b=0, q: int = 2):
        a, b, q = _as_fraction(a), _as_fraction(b), int(q)
        if q < 1:
            raise ValueError("q must be positive")
        r = isqrt(q)
        if r * r == q and b:
            a, b = a + b * r, Fraction(0)
        self.a, self.b, self.q = a, b, q

    @classmethod
    def sqrt_q(cls, q: int) -> "SqrtQScalar":
        return cls(0, 1, q)

    @classmethod
    def v_power(cls, q: int, n: int) -> "SqrtQScalar":
        """``sqrt(q)**n`` for any integer ``n``."""
        if n >= 0:
            half, odd = divmod(n, 2)
            base = Fraction(q) ** half
        else:
            half, odd = divmod(-n, 2)
            base = Fraction(1, q) ** half
            if odd:
                # sqrt(q)^-1 = sqrt(q)/q
                base /= q
        return cls(0, base, q) if odd else cls(base, 0, q)

    def _coerce(self, other) -> "SqrtQScalar":
        if isinstance(other, SqrtQScalar):
            if other.q != self.q:
                raise ValueError(f"mixing scalars over sqrt({self.q}) and sqrt({other.q})")
            return other
        if isinstance(other, (int, Fraction)):
            return SqrtQScalar(other, 0, self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return SqrtQScalar(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return SqrtQScalar(-self.a, -self.b, self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return SqrtQScalar(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return SqrtQScalar(self.a * o.a + self.b * o.b * self.q, self.a * o.b + self.b * o.a, self.q)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.q

    def inverse(self) -> "SqrtQScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return SqrtQScalar(self.a / n, -self.b / n, self.q)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out, n = SqrtQScalar(1, 0, self.q), abs(n)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __float__(self):
        return float(self.a) + float(self.b) * self.q ** 0.5

    def __repr__(self):
        return f"SqrtQScalar({self.a}, {self.b}, q={self.q})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        root = f"sqrt({self.q})" if self.b == 1 else f"{self.b}*sqrt({self.q})"
        if not self.a:
            return root
        return f"{self.a} + {root}"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}
