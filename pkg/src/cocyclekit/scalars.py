"""Complex scalars in two modes: exact Gaussian rationals or binary64.

Every scalar carries a real and an imaginary component.  In exact mode both
are :class:`fractions.Fraction`; in approximate mode both are ``float``.
The two modes never mix inside one arithmetic expression: binary operations
raise :class:`ModeMismatchError` on a mode conflict rather than coercing,
so a computation is exact end-to-end or approximate end-to-end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DegenerateInputError, ModeMismatchError

Component = Union[Fraction, float]

EXACT = "exact"
APPROX = "approx"


@dataclass(frozen=True)
class Scalar:
    re: Component
    im: Component

    def __post_init__(self):
        re_exact = isinstance(self.re, Fraction)
        im_exact = isinstance(self.im, Fraction)
        if re_exact != im_exact:
            raise ModeMismatchError(
                f"scalar components disagree on mode: {self.re!r} vs {self.im!r}"
            )
        if not re_exact:
            if not isinstance(self.re, float) or not isinstance(self.im, float):
                raise ModeMismatchError(
                    f"scalar components must be Fraction or float, got "
                    f"{type(self.re).__name__}/{type(self.im).__name__}"
                )

    # -- construction ------------------------------------------------------

    @staticmethod
    def exact(re, im=0) -> "Scalar":
        return Scalar(Fraction(re), Fraction(im))

    @staticmethod
    def approx(value) -> "Scalar":
        z = complex(value)
        return Scalar(float(z.real), float(z.imag))

    @staticmethod
    def zero(mode: str) -> "Scalar":
        return Scalar.exact(0) if mode == EXACT else Scalar.approx(0.0)

    @staticmethod
    def one(mode: str) -> "Scalar":
        return Scalar.exact(1) if mode == EXACT else Scalar.approx(1.0)

    # -- inspection --------------------------------------------------------

    @property
    def mode(self) -> str:
        return EXACT if isinstance(self.re, Fraction) else APPROX

    def is_exact(self) -> bool:
        return isinstance(self.re, Fraction)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def abs2(self) -> Component:
        """|z|^2 in the scalar's own arithmetic (exact stays exact)."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return abs(self.to_complex())

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Scalar") -> None:
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if self.mode != other.mode:
            raise ModeMismatchError(
                f"cannot combine {self.mode} scalar with {other.mode} scalar"
            )

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        if other.re == 0 and other.im == 0:
            raise DegenerateInputError("division by zero scalar")
        if self.mode == APPROX:
            # native complex division scales by the larger component,
            # so |divisor|^2 never underflows out from under us
            q = complex(self.re, self.im) / complex(other.re, other.im)
            return Scalar(q.real, q.imag)
        d = other.abs2()
        return Scalar(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def scaled(self, k: int) -> "Scalar":
        """Multiply by a plain integer without leaving the current mode."""
        return Scalar(self.re * k, self.im * k)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if (self.im > 0) else "-"
        return f"{self.re}{sign}{abs(self.im)}i"
