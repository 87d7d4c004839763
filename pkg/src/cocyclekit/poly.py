"""Univariate polynomial arithmetic over two-mode complex scalars.

Coefficients are stored in descending order of degree, leading coefficient
nonzero except for the zero polynomial, which keeps a single zero
coefficient so it still knows its arithmetic mode.  All coefficients of one
polynomial share a mode, and operations between polynomials of different
modes raise through the scalar layer.

Division-free structure queries (gcd, square-free splitting, vanishing
order) are only meaningful when equality against zero is decidable, so
they demand exact mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DegenerateInputError,
    DegreeError,
    ExactModeRequiredError,
)
from .scalars import APPROX, EXACT, Scalar


@dataclass(frozen=True)
class Poly:
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DegenerateInputError("polynomial needs at least one coefficient")
        mode = self.coeffs[0].mode
        for c in self.coeffs[1:]:
            if c.mode != mode:
                # trigger the scalar-level error with a meaningful message
                self.coeffs[0]._check(c)
        if len(self.coeffs) > 1 and self.coeffs[0].is_zero():
            raise DegenerateInputError("leading coefficient is zero; normalize first")

    # -- construction ------------------------------------------------------

    @staticmethod
    def make(coeffs: Iterable[Scalar]) -> "Poly":
        """Normalize a descending coefficient sequence (strip leading zeros)."""
        cs = list(coeffs)
        if not cs:
            raise DegenerateInputError("polynomial needs at least one coefficient")
        while len(cs) > 1 and cs[0].is_zero():
            cs.pop(0)
        return Poly(tuple(cs))

    @staticmethod
    def exact(values: Sequence) -> "Poly":
        return Poly.make([Scalar.exact(v) for v in values])

    @staticmethod
    def approx(values: Sequence) -> "Poly":
        return Poly.make([Scalar.approx(v) for v in values])

    @staticmethod
    def zero(mode: str) -> "Poly":
        return Poly((Scalar.zero(mode),))

    @staticmethod
    def one(mode: str) -> "Poly":
        return Poly((Scalar.one(mode),))

    @staticmethod
    def x(mode: str) -> "Poly":
        return Poly((Scalar.one(mode), Scalar.zero(mode)))

    @staticmethod
    def const(s: Scalar) -> "Poly":
        return Poly((s,))

    # -- inspection --------------------------------------------------------

    @property
    def mode(self) -> str:
        return self.coeffs[0].mode

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_zero()

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return -1 if self.is_zero() else len(self.coeffs) - 1

    @property
    def leading(self) -> Scalar:
        return self.coeffs[0]

    def coefficient(self, k: int) -> Scalar:
        """Coefficient of z^k, zero beyond the stored range."""
        if k < 0:
            raise DegreeError(f"negative power {k}")
        n = len(self.coeffs) - 1
        if k > n:
            return Scalar.zero(self.mode)
        return self.coeffs[n - k]

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coeffs)


def pad_descending(p: Poly, degree: int) -> tuple[Scalar, ...]:
    """Descending coefficient vector of length degree+1, zero-padded on top."""
    if degree < 0:
        raise DegreeError(f"declared degree {degree} is negative")
    actual = p.degree
    if actual > degree:
        raise DegreeError(f"declared degree {degree} below actual degree {actual}")
    zero = Scalar.zero(p.mode)
    body = p.coeffs if actual >= 0 else ()
    return (zero,) * (degree + 1 - len(body)) + body


# -- ring operations -------------------------------------------------------


def p_add(a: Poly, b: Poly) -> Poly:
    la, lb = len(a.coeffs), len(b.coeffs)
    n = max(la, lb)
    zero = Scalar.zero(a.mode)
    out = []
    for i in range(n):
        ca = a.coeffs[la - n + i] if la - n + i >= 0 else zero
        cb = b.coeffs[lb - n + i] if lb - n + i >= 0 else zero
        out.append(ca + cb)
    return Poly.make(out)


def p_neg(a: Poly) -> Poly:
    return Poly(tuple(-c for c in a.coeffs))


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_scale(a: Poly, s: Scalar) -> Poly:
    return Poly.make([c * s for c in a.coeffs])


def p_mul(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        # still force a mode compatibility check
        _ = a.coeffs[0] * b.coeffs[0]
        return Poly.zero(a.mode)
    la, lb = len(a.coeffs), len(b.coeffs)
    out = [Scalar.zero(a.mode)] * (la + lb - 1)
    for i, ca in enumerate(a.coeffs):
        for j, cb in enumerate(b.coeffs):
            out[i + j] = out[i + j] + ca * cb
    return Poly.make(out)


def derivative(a: Poly) -> Poly:
    n = a.degree
    if n <= 0:
        return Poly.zero(a.mode)
    out = [a.coeffs[i].scaled(n - i) for i in range(n)]
    return Poly.make(out)


def evaluate(a: Poly, z: Scalar) -> Scalar:
    acc = Scalar.zero(a.mode) * z  # mode check even for the zero polynomial
    for c in a.coeffs:
        acc = acc * z + c
    return acc


def compose(outer: Poly, inner: Poly) -> Poly:
    acc = Poly.const(outer.coeffs[0])
    for c in outer.coeffs[1:]:
        acc = p_add(p_mul(acc, inner), Poly.const(c))
    return acc


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if b.is_zero():
        raise DegenerateInputError("division by the zero polynomial")
    mode = a.mode
    _ = a.coeffs[0] * b.coeffs[0]
    if a.degree < b.degree:
        return Poly.zero(mode), a
    rem = list(a.coeffs)
    db, lead = b.degree, b.leading
    quot = [Scalar.zero(mode)] * (a.degree - db + 1)
    for i in range(len(quot)):
        f = rem[i] / lead
        quot[i] = f
        if f.is_zero():
            continue
        for j, cb in enumerate(b.coeffs):
            rem[i + j] = rem[i + j] - f * cb
    return Poly.make(quot), Poly.make(rem[a.degree - db + 1:] or [Scalar.zero(mode)])


def poly_arith(op: str, a: Poly, b: Poly | None = None) -> Poly:
    """Dispatch table used by the command-line layer."""
    if op == "derivative":
        return derivative(a)
    if op in ("add", "multiply", "compose"):
        if b is None:
            raise DegenerateInputError(f"{op} needs a second operand")
        if op == "add":
            return p_add(a, b)
        if op == "multiply":
            return p_mul(a, b)
        return compose(a, b)
    raise DegenerateInputError(f"unknown polynomial operation {op!r}")


# -- exact-mode structure --------------------------------------------------


def _require_exact(p: Poly, what: str) -> None:
    if p.mode != EXACT:
        raise ExactModeRequiredError(f"{what} needs exact coefficients")


def monic(p: Poly) -> Poly:
    if p.is_zero():
        raise DegenerateInputError("the zero polynomial has no monic form")
    return p_scale(p, Scalar.one(p.mode) / p.leading)


def gcd_monic(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor via the Euclidean remainder chain."""
    _require_exact(a, "gcd")
    _require_exact(b, "gcd")
    if a.is_zero() and b.is_zero():
        raise DegenerateInputError("gcd of two zero polynomials is undefined")
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return monic(a)


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Split a nonconstant polynomial into (monic square-free factor, multiplicity).

    Uses the repeated-gcd chain g_{i+1} = gcd(g_i, g_i'); the quotient of
    consecutive chain entries collects exactly the roots of multiplicity
    above i, and consecutive quotients isolate each multiplicity class.
    """
    _require_exact(p, "square-free decomposition")
    if p.degree < 1:
        raise DegenerateInputError("square-free decomposition needs degree >= 1")
    chain = [monic(p)]
    while chain[-1].degree > 0:
        chain.append(gcd_monic(chain[-1], derivative(chain[-1])))
    radicals = [
        poly_divmod(chain[i], chain[i + 1])[0] for i in range(len(chain) - 1)
    ]
    one = Poly.one(EXACT)
    out: list[tuple[Poly, int]] = []
    for m in range(1, len(radicals) + 1):
        nxt = radicals[m] if m < len(radicals) else one
        s, r = poly_divmod(radicals[m - 1], nxt)
        assert r.is_zero()
        if s.degree > 0:
            out.append((s, m))
    return out


def vanishing_order(p: Poly, a: Scalar) -> int:
    """Largest k with (z - a)^k dividing p.  Exact mode only."""
    _require_exact(p, "vanishing order")
    if a.mode != EXACT:
        raise ExactModeRequiredError("vanishing order needs an exact point")
    if p.is_zero():
        raise DegenerateInputError("vanishing order of the zero polynomial")
    order = 0
    cur = p
    while True:
        if not evaluate(cur, a).is_zero():
            return order
        # synthetic division by (z - a); exact, so the remainder is truly zero
        out = []
        acc = Scalar.zero(EXACT)
        for c in cur.coeffs:
            acc = acc * a + c
            out.append(acc)
        rem = out.pop()
        assert rem.is_zero()
        cur = Poly.make(out or [Scalar.zero(EXACT)])
        order += 1
        if cur.is_zero():
            raise DegenerateInputError("vanishing order of the zero polynomial")


def reversed_at(p: Poly, degree: int) -> Poly:
    """z^degree * p(1/z), i.e. the coefficient vector reversed after padding.

    This is the coordinate swap [z:w] -> [w:z] applied to a homogeneous
    component, so it is the basic tool for moving a computation to the
    chart around infinity.
    """
    return Poly.make(tuple(reversed(pad_descending(p, degree))))


# -- resultants ------------------------------------------------------------


def _determinant(rows: list[list[Scalar]], mode: str) -> Scalar:
    n = len(rows)
    if n == 0:
        return Scalar.one(mode)
    det = Scalar.one(mode)
    sign = 1
    for col in range(n):
        pivot_row = None
        if mode == APPROX:
            best = -1.0
            for r in range(col, n):
                mag = abs(rows[r][col])
                if mag > best:
                    best, pivot_row = mag, r
            if best == 0.0:
                return Scalar.zero(mode)
        else:
            for r in range(col, n):
                if not rows[r][col].is_zero():
                    pivot_row = r
                    break
            if pivot_row is None:
                return Scalar.zero(mode)
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            sign = -sign
        pivot = rows[col][col]
        det = det * pivot
        for r in range(col + 1, n):
            if rows[r][col].is_zero():
                continue
            f = rows[r][col] / pivot
            for c in range(col, n):
                rows[r][c] = rows[r][c] - f * rows[col][c]
    return det if sign == 1 else -det


def resultant(p: Poly, q: Poly, deg_p: int | None = None, deg_q: int | None = None) -> Scalar:
    """Sylvester resultant of p and q at declared degrees.

    Declared degrees default to the actual ones; padding with explicit zero
    rows keeps the resultant of a degree-deficient pair well defined, which
    matters when a chart change can drop a leading coefficient.
    """
    if p.is_zero() and q.is_zero():
        raise DegenerateInputError("resultant of two zero polynomials")
    if deg_p is None:
        deg_p = p.degree
    if deg_q is None:
        deg_q = q.degree
    if deg_p < 0 or deg_q < 0:
        raise DegreeError("declared degrees must be nonnegative")
    _ = p.coeffs[0] * q.coeffs[0]
    vp = pad_descending(p, deg_p)
    vq = pad_descending(q, deg_q)
    mode = p.mode
    n = deg_p + deg_q
    zero = Scalar.zero(mode)
    rows: list[list[Scalar]] = []
    for shift in range(deg_q):
        rows.append([zero] * shift + list(vp) + [zero] * (n - shift - deg_p - 1))
    for shift in range(deg_p):
        rows.append([zero] * shift + list(vq) + [zero] * (n - shift - deg_q - 1))
    return _determinant(rows, mode)
