"""Exact 2x2 complex matrix algebra for spin-1/2 operators.

Entries are Python ``complex`` values; everything here is hand-rolled so the
core carries no linear-algebra dependency. Matrices are immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

Vector3 = tuple[float, float, float]

# below this norm sin(r)/r is replaced by its limit 1
ZERO_NORM = 1e-12
HERMITIAN_TOL = 1e-10


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class Matrix2:
    """A general complex 2x2 matrix ``[[a, b], [c, d]]``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in "abcd":
            z = complex(getattr(self, name))
            if not _finite(z):
                raise ValueError(f"non-finite matrix entry {name}={z!r}")
            object.__setattr__(self, name, z)

    @classmethod
    def identity(cls) -> Matrix2:
        return cls(1, 0, 0, 1)

    @classmethod
    def zero(cls) -> Matrix2:
        return cls(0, 0, 0, 0)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[complex]]) -> Matrix2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def to_rows(self) -> list[list[complex]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __add__(self, other: Matrix2) -> Matrix2:
        return Matrix2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: Matrix2) -> Matrix2:
        return Matrix2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> Matrix2:
        return Matrix2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, s: complex) -> Matrix2:
        return Matrix2(s * self.a, s * self.b, s * self.c, s * self.d)

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix2) -> Matrix2:
        return mat_mul(self, other)

    def dagger(self) -> Matrix2:
        return Matrix2(
            self.a.conjugate(), self.c.conjugate(), self.b.conjugate(), self.d.conjugate()
        )

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def max_abs(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def max_diff(self, other: Matrix2) -> float:
        return (self - other).max_abs()

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return self.max_diff(self.dagger()) <= tol


_PAULI = {
    1: Matrix2(0, 1, 1, 0),
    2: Matrix2(0, -1j, 1j, 0),
    3: Matrix2(1, 0, 0, -1),
}


def pauli(k: int) -> Matrix2:
    """Return sigma_k for k in {1, 2, 3}."""
    try:
        return _PAULI[k]
    except (KeyError, TypeError):
        raise IndexError(f"Pauli index must be 1, 2 or 3, got {k!r}") from None


def mat_mul(a: Matrix2, b: Matrix2) -> Matrix2:
    return Matrix2(
        a.a * b.a + a.b * b.c,
        a.a * b.b + a.b * b.d,
        a.c * b.a + a.d * b.c,
        a.c * b.b + a.d * b.d,
    )


def trace(a: Matrix2) -> complex:
    return a.a + a.d


def pauli_exp(k: int, t: float) -> Matrix2:
    """exp(i sigma_k t) = I cos t + i sigma_k sin t."""
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t!r}")
    return Matrix2.identity() * math.cos(t) + pauli(k) * (1j * math.sin(t))


def pauli_dot(v: Sequence[float]) -> Matrix2:
    """v1 sigma_1 + v2 sigma_2 + v3 sigma_3."""
    v1, v2, v3 = (float(x) for x in v)
    return Matrix2(v3, v1 - 1j * v2, v1 + 1j * v2, -v3)


def dot(u: Sequence[float], v: Sequence[float]) -> float:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Sequence[float], v: Sequence[float]) -> Vector3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def norm(v: Sequence[float]) -> float:
    return math.sqrt(dot(v, v))


def sinc(r: float) -> float:
    """sin(r)/r with the removable singularity at 0 filled in."""
    return 1.0 if abs(r) < ZERO_NORM else math.sin(r) / r


def pauli_components(h: Matrix2) -> tuple[complex, Vector3]:
    """Decompose h = h0 I + sum_k h_k sigma_k, returning (h0, (h1, h2, h3)).

    For Hermitian h all four coefficients are real; the vector part is
    returned as reals taken from the Hermitian projection.
    """
    h0 = (h.a + h.d) / 2
    h1 = ((h.b + h.c) / 2).real
    h2 = ((h.c - h.b) / 2j).real
    h3 = ((h.a - h.d) / 2).real
    return h0, (h1, h2, h3)


def _exp_i_closed(t: Vector3) -> Matrix2:
    r = norm(t)
    s = sinc(r)
    return Matrix2.identity() * math.cos(r) + pauli_dot(t) * (1j * s)


def mat_exp_i_series(h: Matrix2, terms: int = 30) -> Matrix2:
    """exp(i h) by scaling and squaring with a truncated Taylor series.

    Independent of the closed form; used as the general path and as an oracle.
    """
    x = h * 1j
    scale = x.max_abs() * 2
    squarings = 0
    while scale > 0.5:
        scale /= 2
        squarings += 1
    x = x * (0.5**squarings)
    result = Matrix2.identity()
    term = Matrix2.identity()
    for n in range(1, terms + 1):
        term = mat_mul(term, x) * (1.0 / n)
        result = result + term
    for _ in range(squarings):
        result = mat_mul(result, result)
    return result


def mat_exp_i(h: Matrix2) -> Matrix2:
    """exp(i h) for Hermitian h.

    Traceless input goes through ``I cos|t| + i (t.sigma) sin|t| / |t|``;
    anything else falls back to scaling and squaring.
    """
    if not h.is_hermitian(HERMITIAN_TOL):
        raise ValueError("mat_exp_i requires a Hermitian matrix (tolerance 1e-10)")
    h0, t = pauli_components(h)
    if abs(h0) <= HERMITIAN_TOL:
        return _exp_i_closed(t)
    return mat_exp_i_series(h)
