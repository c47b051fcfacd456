"""Exact arithmetic in the cyclotomic integers Z[zeta_N].

Values are stored in the power basis 1, z, ..., z^(phi(N)-1) reduced modulo
the N-th cyclotomic polynomial.  Mixed conductors are lifted to their lcm.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

IntPoly = tuple  # integer coefficients, lowest degree first, no trailing zeros


def poly_normalize(p: Sequence[int]) -> IntPoly:
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return tuple(p[:n])


def poly_mul(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    if not a or not b:
        return ()
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return poly_normalize(res)


def poly_divmod(a: Sequence[int], b: Sequence[int]) -> tuple[IntPoly, IntPoly]:
    """Division by a monic integer polynomial, exact over Z."""
    b = poly_normalize(b)
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(poly_normalize(a))
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), tuple(rem)
    quo = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] -= c * b[j]
    return poly_normalize(quo), poly_normalize(rem[:db])


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> IntPoly:
    """Phi_n, obtained by dividing x^n - 1 by Phi_d for every proper divisor d."""
    if n < 1:
        raise ValueError("n must be positive")
    num = poly_normalize([-1] + [0] * (n - 1) + [1])
    for d in divisors(n)[:-1]:
        num, rem = poly_divmod(num, cyclotomic_polynomial(d))
        assert rem == (), "x^n - 1 not divisible by Phi_d"
    return num


@lru_cache(maxsize=None)
def _power_reductions(n: int) -> tuple[tuple[int, ...], ...]:
    # row k: coefficients of x^k mod Phi_n, for 0 <= k < n
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _ramanujan(n: int) -> tuple[int, ...]:
    # trace of zeta_n^k from Q(zeta_n) down to Q
    out = []
    phi_n = euler_phi(n)
    for k in range(n):
        m = n // gcd(k, n)
        out.append(_mobius(m) * phi_n // euler_phi(m))
    return tuple(out)


def _reduce(n: int, exps: Sequence[int]) -> tuple[int, ...]:
    """Map a coefficient vector over zeta^0..zeta^(n-1) into the power basis."""
    red = _power_reductions(n)
    deg = len(red[0])
    out = [0] * deg
    for k, c in enumerate(exps):
        if c:
            row = red[k]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return tuple(out)


class Cyclo:
    """An element of Z[zeta_N]."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs: Sequence[int]):
        deg = len(cyclotomic_polynomial(conductor)) - 1
        if len(coeffs) != deg:
            raise ValueError(f"expected {deg} coefficients for conductor {conductor}")
        self.conductor = conductor
        self.coeffs = tuple(int(c) for c in coeffs)
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_int(cls, a: int) -> "Cyclo":
        return cls(1, (a,))

    @classmethod
    def from_exponents(cls, n: int, exps: dict[int, int] | Sequence[int]) -> "Cyclo":
        """sum of c * zeta_n^k over the given {k: c} (or a length-n list)."""
        if isinstance(exps, dict):
            vec = [0] * n
            for k, c in exps.items():
                vec[k % n] += c
        else:
            vec = list(exps)
        return cls(n, _reduce(n, vec))

    # -- conversions ------------------------------------------------------
    def exponent_vector(self) -> list[int]:
        vec = [0] * self.conductor
        for k, c in enumerate(self.coeffs):
            vec[k] = c
        return vec

    def lift(self, m: int) -> "Cyclo":
        """Same value viewed in Z[zeta_m]; requires conductor | m."""
        if m == self.conductor:
            return self
        if m % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {m}")
        step = m // self.conductor
        vec = [0] * m
        for k, c in enumerate(self.coeffs):
            vec[k * step] += c
        return Cyclo(m, _reduce(m, vec))

    def as_integer(self) -> int | None:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def trace(self) -> int:
        """Absolute trace from Q(zeta_N) to Q."""
        ram = _ramanujan(self.conductor)
        return sum(c * ram[k] for k, c in enumerate(self.coeffs))

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Cyclo":
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, int):
            return Cyclo.from_int(other)
        return NotImplemented

    def _common(self, other: "Cyclo") -> tuple["Cyclo", "Cyclo"]:
        if self.conductor == other.conductor:
            return self, other
        m = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        return Cyclo(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.conductor, [-x for x in self.coeffs])

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
        a, b = self._common(other)
        n = a.conductor
        vec = [0] * n
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        vec[(i + j) % n] += x * y
        return Cyclo(n, _reduce(n, vec))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = Cyclo.from_int(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # normalized trace does not depend on the field the value is viewed in
        if self._hash is None:
            deg = len(self.coeffs)
            self._hash = hash(Fraction(self.trace(), deg))
        return self._hash

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        n = self.conductor
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = f"z{n}^{k}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def zeta_pow(n: int, k: int) -> Cyclo:
    return Cyclo.from_exponents(n, {k % n: 1})


def galois_apply(v: Cyclo, j: int) -> Cyclo:
    """Apply the automorphism zeta_N -> zeta_N^j."""
    n = v.conductor
    if gcd(j, n) != 1:
        raise ValueError(f"{j} is not coprime to conductor {n}")
    vec = [0] * n
    for k, c in enumerate(v.coeffs):
        vec[(k * j) % n] += c
    return Cyclo(n, _reduce(n, vec))


def conjugate(v: Cyclo) -> Cyclo:
    return galois_apply(v, -1)


def as_integer(v: Cyclo) -> int | None:
    return v.as_integer()


def cyclo_sum(values: Iterable[Cyclo]) -> Cyclo:
    total = Cyclo.from_int(0)
    for v in values:
        total = total + v
    return total
