"""Exact arithmetic in the cyclotomic fields Q(zeta_e).

Rational scalars are `fractions.Fraction`.  A cyclotomic value is a vector of
phi(e) rational coefficients in the power basis 1, zeta, ..., zeta^(phi(e)-1),
always fully reduced modulo the e-th cyclotomic polynomial Phi_e.  Reduction
makes the representation canonical within a conductor, so equality inside
Q(zeta_e) is plain coefficient comparison and nothing anywhere needs floating
point.  Division inverts the coefficient polynomial modulo Phi_e with the
extended Euclidean algorithm (Phi_e is irreducible over Q, so every nonzero
value is invertible).

Conventions:
  * zeta_e denotes a primitive e-th root of unity; conjugation is the field
    automorphism zeta_e -> zeta_e^(e-1).
  * Values of different conductors compare and combine by coercion into
    Q(zeta_lcm); `minimal()` descends a value into the smallest Q(zeta_d),
    d | e, containing it, which is what `__hash__` is based on.
  * Integer-valued coefficients are stored as int, everything else as
    Fraction; the two interoperate transparently.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


class ExactArithmeticError(ArithmeticError):
    pass


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # Exact division of integer polynomials, constant term first.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        if c % den[dd] != 0:
            raise ExactArithmeticError("inexact polynomial division")
        q = c // den[dd]
        out[k] = q
        if q:
            for i, dc in enumerate(den):
                num[k + i] -= q * dc
    if any(num):
        raise ExactArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_e, constant term first, degree phi(e).

    Computed by exact division of x^e - 1 by Phi_d over the proper divisors
    d of e.
    """
    if e < 1:
        raise ValueError(f"conductor must be positive, got {e}")
    if e == 1:
        return (-1, 1)
    poly = [-1] + [0] * (e - 1) + [1]
    for d in divisors(e)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def reduced_powers(e: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of x^t mod Phi_e for 0 <= t < max(e, 2*phi(e) - 1).

    Integer vectors of length phi(e); this range covers every exponent a
    product of two reduced values or a root-of-unity power can produce
    (exponents are first reduced mod e since x^e = 1 mod Phi_e).
    """
    phi = cyclotomic_polynomial(e)
    deg = len(phi) - 1
    count = max(e, 2 * deg - 1, 1)
    rows: list[tuple[int, ...]] = []
    for t in range(count):
        if t < deg:
            row = [0] * deg
            row[t] = 1
        else:
            prev = rows[t - 1]
            lead = prev[deg - 1]
            row = [0] + list(prev[: deg - 1])
            if lead:
                for i in range(deg):
                    row[i] -= lead * phi[i]
        rows.append(tuple(row))
    return tuple(rows)


def _norm_num(x):
    # Keep integers as int so coefficient tuples hash consistently.
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return x
    if isinstance(x, int):
        return x
    raise TypeError(f"coefficients must be int or Fraction, got {type(x).__name__}")


def _reduce_coeffs(e: int, coeffs) -> tuple:
    """Reduce an arbitrary-length coefficient sequence modulo Phi_e."""
    deg = len(cyclotomic_polynomial(e)) - 1
    red = reduced_powers(e)
    out = [0] * deg
    for t, c in enumerate(coeffs):
        if c == 0:
            continue
        row = red[t % e] if t >= len(red) else red[t]
        for i, r in enumerate(row):
            if r:
                out[i] += c * r
    return tuple(_norm_num(c if isinstance(c, (int, Fraction)) else Fraction(c)) for c in out)


class Cyclotomic:
    """An element of Q(zeta_e) in reduced canonical form.  Immutable."""

    __slots__ = ("conductor", "coeffs", "_min")

    def __init__(self, conductor: int, coeffs: tuple, _reduced: bool = False):
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        deg = euler_phi(conductor)
        if _reduced:
            if len(coeffs) != deg:
                raise ValueError("reduced coefficient vector has wrong length")
            coeffs = tuple(_norm_num(c) for c in coeffs)
        else:
            coeffs = _reduce_coeffs(conductor, coeffs)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_min", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, value) -> "Cyclotomic":
        q = value if isinstance(value, (int, Fraction)) else Fraction(value)
        return cls(1, (q,), _reduced=True)

    @classmethod
    def zero(cls, conductor: int = 1) -> "Cyclotomic":
        return cls(conductor, (0,) * euler_phi(conductor), _reduced=True)

    @classmethod
    def one(cls, conductor: int = 1) -> "Cyclotomic":
        coeffs = [0] * euler_phi(conductor)
        coeffs[0] = 1
        return cls(conductor, tuple(coeffs), _reduced=True)

    @classmethod
    def root_of_unity(cls, e: int, k: int = 1) -> "Cyclotomic":
        """zeta_e^k."""
        if e < 1:
            raise ValueError(f"order must be positive, got {e}")
        return cls(e, tuple(reduced_powers(e)[k % e]), _reduced=True)

    # -- structure --------------------------------------------------------

    def coerce(self, conductor: int) -> "Cyclotomic":
        """The same value viewed in Q(zeta_conductor); conductor must be a multiple."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor != 0:
            raise ValueError(
                f"cannot coerce conductor {self.conductor} into {conductor}"
            )
        step = conductor // self.conductor
        red = reduced_powers(conductor)
        deg = euler_phi(conductor)
        out = [0] * deg
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            row = red[i * step]
            for d, r in enumerate(row):
                if r:
                    out[d] += c * r
        return Cyclotomic(conductor, tuple(_norm_num(c) for c in out), _reduced=True)

    def galois_image(self, a: int) -> "Cyclotomic":
        """Image under zeta_e -> zeta_e^a; a must be coprime to the conductor."""
        e = self.conductor
        if gcd(a % e, e) != 1:
            raise ValueError(f"{a} is not coprime to the conductor {e}")
        red = reduced_powers(e)
        out = [0] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            row = red[(i * a) % e]
            for d, r in enumerate(row):
                if r:
                    out[d] += c * r
        return Cyclotomic(e, tuple(_norm_num(c) for c in out), _reduced=True)

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation: zeta_e -> zeta_e^(e-1)."""
        if self.conductor <= 2:
            return self
        return self.galois_image(self.conductor - 1)

    def minimal(self) -> "Cyclotomic":
        """The equal value in the smallest Q(zeta_d) with d | conductor.

        Descent test: the value lies in Q(zeta_d) iff it is fixed by every
        automorphism zeta -> zeta^a with a = 1 (mod d) and gcd(a, e) = 1.
        """
        cached = self._min
        if cached is not None:
            return cached
        e = self.conductor
        result = self
        for d in divisors(e):
            if d == e:
                break
            if all(
                self.galois_image(a).coeffs == self.coeffs
                for a in range(1, e)
                if a % d == 1 % d and gcd(a, e) == 1
            ):
                result = Cyclotomic(d, _descend(self, d), _reduced=True)
                break
        object.__setattr__(self, "_min", result)
        if result is not self:
            object.__setattr__(result, "_min", result)
        return result

    # -- predicates and views ----------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.minimal().conductor == 1

    def as_fraction(self) -> Fraction:
        m = self.minimal()
        if m.conductor != 1:
            raise ExactArithmeticError(f"{self!r} is not rational")
        return Fraction(m.coeffs[0])

    def as_int(self) -> int:
        q = self.as_fraction()
        if q.denominator != 1:
            raise ExactArithmeticError(f"{self!r} is not an integer")
        return int(q)

    def int_coords(self) -> tuple[int, ...]:
        """Coefficient vector as plain ints; raises when any is fractional."""
        out = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                raise ExactArithmeticError("value has non-integer coordinates")
            out.append(c)
        return tuple(out)

    def to_complex(self) -> complex:
        """Double-precision view for display only; never used in decisions."""
        e = self.conductor
        return sum(
            float(c) * cmath.exp(2j * cmath.pi * i / e)
            for i, c in enumerate(self.coeffs)
        ) + 0j

    # -- arithmetic ---------------------------------------------------------

    def _pair(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        if self.conductor == other.conductor:
            return self, other
        common = lcm(self.conductor, other.conductor)
        return self.coerce(common), other.coerce(common)

    def __add__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(
            a.conductor,
            tuple(_norm_num(x + y) for x, y in zip(a.coeffs, b.coeffs)),
            _reduced=True,
        )

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(
            self.conductor, tuple(_norm_num(-c) for c in self.coeffs), _reduced=True
        )

    def __sub__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(
            a.conductor,
            tuple(_norm_num(x - y) for x, y in zip(a.coeffs, b.coeffs)),
            _reduced=True,
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Cyclotomic.zero(self.conductor)
            return Cyclotomic(
                self.conductor,
                tuple(_norm_num(c * other) for c in self.coeffs),
                _reduced=True,
            )
        a, b = self._pair(other)
        deg = len(a.coeffs)
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    conv[i + j] += x * y
        return Cyclotomic(a.conductor, _reduce_coeffs(a.conductor, conv), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("division by cyclotomic zero")
        e = self.conductor
        if e == 1:
            return Cyclotomic.rational(1 / Fraction(self.coeffs[0]))
        inv = _poly_modinv(self.coeffs, cyclotomic_polynomial(e))
        return Cyclotomic(e, _reduce_coeffs(e, inv), _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.rational(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        m = self.minimal()
        return hash((m.conductor, m.coeffs))

    def sort_key(self):
        """A total order key on values sharing a conductor (used for canonical sorts)."""
        return tuple(
            (c.numerator, c.denominator) if isinstance(c, Fraction) else (c, 1)
            for c in self.coeffs
        )

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [
                [c.numerator, c.denominator] if isinstance(c, Fraction) else [c, 1]
                for c in self.coeffs
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        e = int(data["conductor"])
        coeffs = tuple(Fraction(int(n), int(d)) for n, d in data["coeffs"])
        if len(coeffs) != euler_phi(e):
            raise ValueError("serialized coefficient vector has wrong length")
        return cls(e, coeffs, _reduced=True)

    def __repr__(self):
        if self.conductor == 1:
            return f"Cyclotomic({self.coeffs[0]!r})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z{self.conductor}")
            else:
                terms.append(f"{c}*z{self.conductor}^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyclotomic<{body}>"


def field_arithmetic(a: Cyclotomic, b: Cyclotomic, op: str) -> Cyclotomic:
    """The four field operations by name; conductors coerce to their lcm."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"op must be add, sub, mul, or div, got {op!r}")


def _poly_modinv(coeffs, modulus: tuple[int, ...]) -> list:
    """Inverse of the polynomial `coeffs` modulo `modulus` over Q (extended Euclid)."""

    def deg(p):
        for i in range(len(p) - 1, -1, -1):
            if p[i] != 0:
                return i
        return -1

    def divmod_poly(a, b):
        a = [Fraction(x) for x in a]
        db = deg(b)
        lead = Fraction(b[db])
        q = [Fraction(0)] * (max(deg(a) - db, -1) + 1)
        while deg(a) >= db and deg(a) >= 0:
            da = deg(a)
            f = a[da] / lead
            q[da - db] = f
            for i in range(db + 1):
                a[da - db + i] -= f * b[i]
        return q, a

    r0 = [Fraction(c) for c in modulus]
    r1 = [Fraction(c) for c in coeffs]
    t0, t1 = [Fraction(0)], [Fraction(1)]
    while deg(r1) > 0:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        width = max(len(t0), len(t1) + len(q))
        t2 = [Fraction(0)] * width
        for i, c in enumerate(t0):
            t2[i] += c
        for i, qc in enumerate(q):
            if qc:
                for j, tc in enumerate(t1):
                    t2[i + j] -= qc * tc
        t0, t1 = t1, t2
    d = deg(r1)
    if d < 0:
        raise ZeroDivisionError("polynomial is not invertible modulo Phi_e")
    scale = r1[d]
    return [c / scale for c in t1]


def _descend(value: Cyclotomic, d: int) -> tuple:
    """Coordinates of `value` in Q(zeta_d), assuming Galois fixedness holds."""
    e = value.conductor
    deg_e = euler_phi(e)
    deg_d = euler_phi(d)
    red = reduced_powers(e)
    step = e // d
    # Columns: coordinates of zeta_d^k inside Q(zeta_e); solve the linear system.
    cols = [red[(k * step) % e] for k in range(deg_d)]
    mat = [[Fraction(cols[k][row]) for k in range(deg_d)] for row in range(deg_e)]
    rhs = [Fraction(c) for c in value.coeffs]
    sol = _solve_exact(mat, rhs)
    if sol is None:
        raise ExactArithmeticError("descent to subfield failed; value not fixed")
    return tuple(_norm_num(c) for c in sol)


def _solve_exact(mat: list[list[Fraction]], rhs: list[Fraction]):
    """Solve an overdetermined consistent rational system; None if inconsistent."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [mat[i] + [rhs[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][cols]
    return sol
