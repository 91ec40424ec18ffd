"""Prime-field scalars and exact polynomial evaluation mod p."""

from __future__ import annotations

from dataclasses import dataclass

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the 2^31 range we accept."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def first_primes(k: int) -> tuple[int, ...]:
    out = []
    n = 2
    while len(out) < k:
        if is_prime(n):
            out.append(n)
        n += 1
    return tuple(out)


class ModulusMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FpElem:
    """An element of the prime field F_p, stored as its least residue."""

    value: int
    p: int

    def __post_init__(self):
        if self.p < 2 or self.p > 2**31 or not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not a prime <= 2^31")
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "FpElem":
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise ModulusMismatch(f"moduli differ: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return FpElem(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElem(self.value + other.value, self.p)

    __radd__ = __add__

    def __neg__(self):
        return FpElem(-self.value, self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElem(self.value - other.value, self.p)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElem(self.value * other.value, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "FpElem":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return FpElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FpElem(pow(self.value, e, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return f"{self.value} (mod {self.p})"


def poly_eval(f, point) -> FpElem:
    """Evaluate an MPoly at a tuple of FpElem sharing one modulus."""
    if len(point) != len(f.variables):
        raise ValueError(
            f"point has {len(point)} coordinates, polynomial has "
            f"{len(f.variables)} variables"
        )
    if not point:
        # constant polynomial in zero variables has no modulus to borrow
        raise ValueError("cannot evaluate without at least one coordinate")
    p = point[0].p
    for v in point:
        if v.p != p:
            raise ModulusMismatch("point coordinates use different moduli")
    total = 0
    vals = [v.value for v in point]
    for exps, c in f.terms.items():
        t = c % p
        for v, e in zip(vals, exps):
            if e:
                t = t * pow(v, e, p) % p
        total += t
    return FpElem(total % p, p)
