"""Exact rational polynomials and truncated power series."""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

# BigRational is the standard library Fraction: always in lowest terms, denominator > 0.
BigRational = Fraction
Scalar = Union[int, Fraction]


class VarTag(str, Enum):
    """Name of the polynomial variable."""
    CHI = "chi"
    XI = "xi"
    Z = "z"
    A = "a"
    U = "u"


def _trim(coeffs: Iterable[Scalar]) -> Tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class RatPoly:
    """
    Dense univariate polynomial with exact rational coefficients.

    coeffs[i] is the coefficient of var**i. Trailing zeros are trimmed on
    construction, so the zero polynomial has no coefficients and degree -1.
    """
    coeffs: Tuple[Fraction, ...]
    var_tag: VarTag = VarTag.CHI

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))
        object.__setattr__(self, "var_tag", VarTag(self.var_tag))

    @classmethod
    def zero(cls, var_tag: VarTag = VarTag.CHI) -> "RatPoly":
        return cls((), var_tag)

    @classmethod
    def constant(cls, c: Scalar, var_tag: VarTag = VarTag.CHI) -> "RatPoly":
        return cls((Fraction(c),), var_tag)

    @classmethod
    def monomial(cls, power: int, c: Scalar = 1, var_tag: VarTag = VarTag.CHI) -> "RatPoly":
        return cls((Fraction(0),) * power + (Fraction(c),), var_tag)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, power: int) -> Fraction:
        """Coefficient of var**power (zero outside the stored range)."""
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def _check(self, other: "RatPoly") -> None:
        if other.var_tag != self.var_tag and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"variable mismatch: {self.var_tag.value} vs {other.var_tag.value}")

    def __add__(self, other: "RatPoly") -> "RatPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        tag = other.var_tag if self.is_zero() else self.var_tag
        return RatPoly([self.coeff(i) + other.coeff(i) for i in range(n)], tag)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs], self.var_tag)

    def __mul__(self, other: Union["RatPoly", Scalar]) -> "RatPoly":
        if not isinstance(other, RatPoly):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return RatPoly.zero(self.var_tag)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out, self.var_tag)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "RatPoly":
        c = Fraction(c)
        return RatPoly([c * x for x in self.coeffs], self.var_tag)

    def shift(self, n: int = 1) -> "RatPoly":
        """Multiply by var**n."""
        if self.is_zero():
            return self
        return RatPoly((Fraction(0),) * n + self.coeffs, self.var_tag)

    def __call__(self, x: Scalar) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reflect(self) -> "RatPoly":
        """The polynomial p(-var)."""
        return RatPoly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.var_tag)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        v = self.var_tag.value
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else (v if i == 1 else f"{v}^{i}")
            parts.append(f"{c}" if not mono else (f"{c}*{mono}" if c != 1 else mono))
        return " + ".join(parts)

    def to_dict(self) -> List[Dict[str, str]]:
        return [rational_to_json(c) for c in self.coeffs]

    @classmethod
    def from_dict(cls, data: Sequence[Dict[str, str]], var_tag: VarTag) -> "RatPoly":
        return cls([rational_from_json(c) for c in data], var_tag)


def rational_to_json(q: Fraction) -> Dict[str, str]:
    """Exact JSON form {"n": numerator, "d": denominator} as decimal strings."""
    q = Fraction(q)
    return {"n": str(q.numerator), "d": str(q.denominator)}


def rational_from_json(data: Dict[str, str]) -> Fraction:
    return Fraction(int(data["n"]), int(data["d"]))


def series_exp(g: Sequence[Scalar], order: int, var_tag: VarTag) -> List[RatPoly]:
    """
    Exact coefficients of exp(u * g(t)) up to t**order.

    g is a truncated series in t with g[0] == 0. The result F[n] is the
    coefficient of t**n, a polynomial in the parameter u (tagged var_tag).
    Uses F' = u g' F, i.e. n F[n] = u * sum_{i=1..n} i g[i] F[n-i].

    Args:
        g: Series coefficients of g, index = power of t
        order: Highest power of t to produce
        var_tag: Tag for the parameter u in the returned polynomials

    Returns:
        List of order + 1 polynomials in u
    """
    g = [Fraction(c) for c in g]
    if g and g[0] != 0:
        raise ValueError("series_exp needs g(0) == 0")
    out = [RatPoly.constant(1, var_tag)]
    for n in range(1, order + 1):
        acc = RatPoly.zero(var_tag)
        for i in range(1, min(n, len(g) - 1) + 1):
            if g[i] == 0:
                continue
            acc = acc + out[n - i].scale(i * g[i])
        out.append(acc.shift(1).scale(Fraction(1, n)))
    return out


def series_divide(num: Sequence[Scalar], den: Sequence[Scalar], order: int) -> List[Fraction]:
    """Exact truncated quotient num(x) / den(x) up to x**order; den[0] must be nonzero."""
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    if not den or den[0] == 0:
        raise ZeroDivisionError("series_divide needs a nonzero constant term in the divisor")
    out: List[Fraction] = []
    for n in range(order + 1):
        acc = num[n] if n < len(num) else Fraction(0)
        for i in range(1, min(n, len(den) - 1) + 1):
            acc -= den[i] * out[n - i]
        out.append(acc / den[0])
    return out
