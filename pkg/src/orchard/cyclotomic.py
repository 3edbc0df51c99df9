"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1) reduced
modulo the m-th cyclotomic polynomial, so every element has a unique normal
form and equality, hashing and zero-testing are exact coefficient tests.
Internally a common positive denominator and integer numerators are kept;
the public ``coeffs`` view is a tuple of ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

__all__ = [
    "FieldElement",
    "SignWitness",
    "cos_sin",
    "cyclotomic_polynomial",
    "euler_phi",
    "real_interval",
    "sign_of",
]


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    result = m
    n, p = m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    # den is monic; quotient of an exact division stays integral
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            out[k - dd] = c
            for i, dcoef in enumerate(den):
                num[k - dd + i] -= c * dcoef
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, ascending, monic, length phi(m)+1."""
    if m == 1:
        return (-1, 1)
    poly = [0] * (m + 1)
    poly[0], poly[m] = -1, 1  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    # x^k mod Phi_m for k = phi(m) .. max(m-1, 2*phi(m)-2); products need the
    # upper bound, exponent folding mod zeta^m = 1 needs degree m-1
    phi = euler_phi(m)
    top_exp = max(m - 1, 2 * phi - 2)
    head = cyclotomic_polynomial(m)[:phi]
    rows = []
    cur = [-c for c in head]  # x^phi
    for _ in range(phi, top_exp + 1):
        rows.append(tuple(cur))
        cur = [0] + cur
        top = cur.pop()
        if top:
            cur = [c - top * h for c, h in zip(cur, head)]
    return tuple(rows)


def _reduce_exponent_vector(m: int, sparse: dict[int, int]) -> list[int]:
    # exponents first folded with zeta^m = 1, then reduced mod Phi_m
    phi = euler_phi(m)
    dense = [0] * m if m > 1 else [0]
    for e, c in sparse.items():
        dense[e % m] += c
    return _reduce_dense(m, dense, phi)


def _reduce_dense(m: int, dense: list[int], phi: int) -> list[int]:
    if len(dense) <= phi:
        return dense + [0] * (phi - len(dense))
    rows = _reduction_rows(m)
    out = dense[:phi]
    for k in range(phi, len(dense)):
        c = dense[k]
        if c:
            row = rows[k - phi]
            out = [o + c * r for o, r in zip(out, row)]
    return out


def _content(nums: tuple[int, ...], den: int) -> int:
    g = den
    for c in nums:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


class FieldElement:
    """One element of Q(zeta_m) in normal form."""

    __slots__ = ("m", "_num", "_den")

    def __init__(self, m: int, num: tuple[int, ...], den: int, _normalized: bool = False):
        if not _normalized:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                num = tuple(-c for c in num)
                den = -den
            g = _content(num, den)
            if g > 1:
                num = tuple(c // g for c in num)
                den //= g
        self.m = m
        self._num = num
        self._den = den

    # -- construction -------------------------------------------------

    @classmethod
    def from_rational(cls, m: int, value: Fraction | int) -> "FieldElement":
        value = Fraction(value)
        num = [0] * euler_phi(m)
        num[0] = value.numerator
        return cls(m, tuple(num), value.denominator)

    @classmethod
    def zero(cls, m: int) -> "FieldElement":
        return cls(m, (0,) * euler_phi(m), 1, _normalized=True)

    @classmethod
    def one(cls, m: int) -> "FieldElement":
        return cls.from_rational(m, 1)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "FieldElement":
        num = _reduce_exponent_vector(m, {k % m if m > 1 else 0: 1})
        return cls(m, tuple(num), 1)

    @classmethod
    def from_coeffs(cls, m: int, coeffs) -> "FieldElement":
        phi = euler_phi(m)
        fracs = [Fraction(c) for c in coeffs]
        if len(fracs) != phi:
            raise ValueError(f"need {phi} coefficients for order {m}, got {len(fracs)}")
        den = 1
        for f in fracs:
            den = den * f.denominator // gcd(den, f.denominator)
        num = tuple(f.numerator * (den // f.denominator) for f in fracs)
        return cls(m, num, den)

    # -- views ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self.m

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def integer_pair(self) -> tuple[tuple[int, ...], int]:
        """(numerators, denominator) of the normal form; denominator > 0."""
        return self._num, self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self._num[0], self._den)

    def is_real(self) -> bool:
        if self.m <= 2:
            return True
        return self == self.conjugate(-1)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.m != self.m:
                raise ValueError(
                    f"mismatched orders {self.m} and {other.m}; embed into a common field first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.from_rational(self.m, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        da, db = self._den, other._den
        num = tuple(a * db + b * da for a, b in zip(self._num, other._num))
        return FieldElement(self.m, num, da * db)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        da, db = self._den, other._den
        num = tuple(a * db - b * da for a, b in zip(self._num, other._num))
        return FieldElement(self.m, num, da * db)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.m, tuple(-c for c in self._num), self._den, _normalized=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._num, other._num
        phi = len(a)
        prod = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        num = _reduce_dense(self.m, prod, phi)
        return FieldElement(self.m, tuple(num), self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero field element")
        if self.is_rational():
            q = self.as_rational()
            return FieldElement.from_rational(self.m, 1 / q)
        # 1/a = (product of the other Galois conjugates) / Norm(a)
        numer = None
        scaled = FieldElement(self.m, self._num, 1, _normalized=True)
        for k in range(2, self.m):
            if gcd(k, self.m) == 1:
                conj = scaled.conjugate(k)
                numer = conj if numer is None else numer * conj
        norm = scaled * numer
        if not norm.is_rational():
            raise AssertionError("field norm must be rational")
        scale = Fraction(self._den) / norm.as_rational()
        return numer * scale

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FieldElement.one(self.m)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- structure maps -------------------------------------------------

    def embed(self, m2: int) -> "FieldElement":
        """The same number represented in Q(zeta_m2); requires m | m2."""
        if m2 % self.m != 0:
            raise ValueError(f"cannot embed order {self.m} into order {m2}")
        if m2 == self.m:
            return self
        step = m2 // self.m
        sparse = {i * step: c for i, c in enumerate(self._num) if c}
        num = _reduce_exponent_vector(m2, sparse)
        return FieldElement(m2, tuple(num), self._den)

    def conjugate(self, k: int) -> "FieldElement":
        """Galois map zeta -> zeta^k; k must be coprime to the order."""
        k %= self.m
        if gcd(k, self.m) != 1:
            raise ValueError(f"{k} is not coprime to order {self.m}")
        if k == 1 or self.m == 1:
            return self
        sparse = {(i * k) % self.m: c for i, c in enumerate(self._num) if c}
        num = _reduce_exponent_vector(self.m, sparse)
        return FieldElement(self.m, tuple(num), self._den)

    # -- protocol -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FieldElement.from_rational(self.m, other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.m == other.m and self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self.m, self._num, self._den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"FieldElement(m={self.m}, {body})"

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "FieldElement":
        return cls.from_coeffs(int(data["m"]), [Fraction(c) for c in data["coeffs"]])


def batch_inverse(elems: list[FieldElement]) -> list[FieldElement]:
    """Inverses of many nonzero elements with a single field inversion."""
    n = len(elems)
    if n == 0:
        return []
    prefix = [elems[0]]
    for e in elems[1:]:
        prefix.append(prefix[-1] * e)
    inv = prefix[-1].inverse()
    out: list[FieldElement | None] = [None] * n
    for i in range(n - 1, 0, -1):
        out[i] = prefix[i - 1] * inv
        inv = inv * elems[i]
    out[0] = inv
    return out


def cos_sin(p: int, q: int) -> tuple[FieldElement, FieldElement]:
    """Exact cos(p*pi/q) and sin(p*pi/q) as real elements of Q(zeta_lcm(4,2q))."""
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    m = (4 * (2 * q)) // gcd(4, 2 * q)  # lcm(4, 2q)
    t = p * (m // (2 * q))
    e = FieldElement.zeta(m, t)
    ebar = FieldElement.zeta(m, -t)
    half = Fraction(1, 2)
    cos = (e + ebar) * half
    # 1/(2i) = -i/2 and -i = zeta^(3m/4)
    sin = (e - ebar) * FieldElement.zeta(m, 3 * m // 4) * half
    return cos, sin


@dataclass(frozen=True)
class SignWitness:
    """Certified sign of a real element with the bracketing interval used."""

    value: FieldElement
    sign: int  # -1, 0, +1
    interval: tuple[Fraction, Fraction]


def _mpf_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    f = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -f if sign else f


def real_interval(a: FieldElement, prec_bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational interval enclosing the distinguished real embedding zeta -> e^(2*pi*i/m).

    Only meaningful for real elements; for those, value = sum c_j cos(2*pi*j/m).
    """
    if a.is_rational():
        q = a.as_rational()
        return q, q
    nums, den = a.integer_pair()
    old_prec = mpmath.iv.prec
    try:
        mpmath.iv.prec = prec_bits
        total = mpmath.iv.mpf(0)
        two_pi = 2 * mpmath.iv.pi
        inv_den = mpmath.iv.mpf(1) / mpmath.iv.mpf(den)
        for j, c in enumerate(nums):
            if c:
                total += mpmath.iv.mpf(c) * mpmath.iv.cos(two_pi * mpmath.iv.mpf(j) / mpmath.iv.mpf(a.m))
        total *= inv_den
        lo_raw, hi_raw = total._mpi_
        return _mpf_to_fraction(lo_raw), _mpf_to_fraction(hi_raw)
    finally:
        mpmath.iv.prec = old_prec


def sign_of(a: FieldElement) -> SignWitness:
    """Exact sign of a real element: zero-test first, then interval refinement."""
    if not a.is_real():
        raise ValueError("sign is only defined for real elements")
    if a.is_zero():
        return SignWitness(a, 0, (Fraction(0), Fraction(0)))
    prec = 64
    while True:
        lo, hi = real_interval(a, prec)
        if lo > 0:
            return SignWitness(a, 1, (lo, hi))
        if hi < 0:
            return SignWitness(a, -1, (lo, hi))
        prec *= 2


def decimal_string(a: FieldElement, digits: int = 12) -> str:
    """Certified fixed-point decimal of a real element, to `digits` places."""
    if not a.is_real():
        raise ValueError("decimal rendering needs a real element")
    scale = Fraction(10) ** digits
    if a.is_rational():
        mid = a.as_rational()
    else:
        prec = 64
        while True:
            lo, hi = real_interval(a, prec)
            if hi - lo < Fraction(1, 2 * 10**digits):
                mid = (lo + hi) / 2
                break
            prec *= 2
    scaled = mid * scale
    n = scaled.numerator // scaled.denominator
    if 2 * (scaled - n) >= 1:
        n += 1
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"
