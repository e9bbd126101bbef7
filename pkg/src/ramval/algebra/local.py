"""Elements of the local ring at the origin as numerator / unit-denominator pairs.

Localization at (x, y) is never materialized: the only denominators that
occur are units (nonzero constant term).  Pairs multiply and divide exactly;
a series normal form is produced on demand via invert_unit.
"""

from __future__ import annotations

from .field import Fq
from .poly import Poly2
from .series import XSeries, invert_unit


class NotAUnitDenominator(ArithmeticError):
    pass


class LocalElem:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly2, den: Poly2 | None = None):
        fld = num.field
        if den is None:
            den = Poly2.one(fld)
        if not den.is_unit():
            raise NotAUnitDenominator("denominator must have a nonzero constant term")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly2) -> "LocalElem":
        return cls(p)

    @property
    def field(self) -> Fq:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return set(self.den.terms) == {(0, 0)}

    def as_poly(self) -> Poly2:
        """The numerator rescaled when the denominator is a constant."""
        if not self.is_polynomial():
            raise ArithmeticError("element has a non-constant denominator")
        c = self.den.constant_term()
        if c == self.field.one:
            return self.num
        return self.num.scale(self.field.inv(c))

    def __add__(self, other: "LocalElem") -> "LocalElem":
        return LocalElem(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "LocalElem") -> "LocalElem":
        return LocalElem(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "LocalElem":
        return LocalElem(-self.num, self.den)

    def __mul__(self, other: "LocalElem") -> "LocalElem":
        return LocalElem(self.num * other.num, self.den * other.den)

    def __pow__(self, e: int) -> "LocalElem":
        if e >= 0:
            return LocalElem(self.num**e, self.den**e)
        inv = self.invert()
        return LocalElem(inv.num ** (-e), inv.den ** (-e))

    def invert(self) -> "LocalElem":
        """Inverse, defined only for units."""
        if not self.num.is_unit():
            raise NotAUnitDenominator("inverting a non-unit local element")
        return LocalElem(self.den, self.num)

    def div_unit(self, other: "LocalElem") -> "LocalElem":
        return self * other.invert()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalElem):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def x_order(self) -> int:
        return self.num.x_order() - self.den.x_order()

    def divexact_xpow(self, m: int) -> "LocalElem":
        return LocalElem(self.num.divexact_xpow(m), self.den)

    def restrict_x0(self) -> tuple[dict, dict]:
        """(numerator, denominator) restrictions f(0, y) as y-coefficient dicts."""
        return self.num.y_restrict_x0(), self.den.y_restrict_x0()

    def y_order_mod_x(self) -> int:
        """y-order of the restriction to x = 0 (denominator has order 0)."""
        num_r, den_r = self.restrict_x0()
        if not num_r:
            from .poly import DivisibleByX

            raise DivisibleByX("restriction to x = 0 vanishes")
        return min(num_r) - min(den_r)

    def residue_at_origin(self):
        """Value of the element at the origin (denominator is a unit there)."""
        fld = self.field
        return fld.div(self.num.constant_term(), self.den.constant_term())

    def compose(self, sub_x: "LocalElem", sub_y: "LocalElem") -> "LocalElem":
        """Substitute x -> sub_x, y -> sub_y; the result is again a pair.

        The substituted denominator must remain a unit, which holds for
        substitutions fixing the origin.
        """
        num_img = _compose_poly_pair(self.num, sub_x, sub_y)
        den_img = _compose_poly_pair(self.den, sub_x, sub_y)
        return num_img.div_unit(den_img)

    def series(self, prec: int) -> XSeries:
        """Series normal form mod x^prec (expands the unit denominator)."""
        num_s = XSeries(self.num, prec)
        den_inv = invert_unit(self.den, prec)
        return num_s * den_inv

    def to_str(self, xname="x", yname="y") -> str:
        n = self.num.to_str(xname, yname)
        if self.is_polynomial() and self.den.constant_term() == self.field.one:
            return n
        return f"({n}) / ({self.den.to_str(xname, yname)})"

    def __repr__(self):
        return f"LocalElem({self.to_str()})"


def _compose_poly_pair(poly: Poly2, sub_x: LocalElem, sub_y: LocalElem) -> LocalElem:
    """poly(sub_x, sub_y) for pair-valued substitutions, homogenized over the
    denominators so every intermediate stays polynomial."""
    fld = poly.field
    if poly.is_zero():
        return LocalElem(Poly2.zero(fld))
    dy = max(j for _, j in poly.terms)
    dx = max(i for i, _ in poly.terms)
    num = Poly2.zero(fld)
    xn_pows = {0: Poly2.one(fld)}
    xd_pows = {0: Poly2.one(fld)}
    yn_pows = {0: Poly2.one(fld)}
    yd_pows = {0: Poly2.one(fld)}

    def pw(cache, base, e):
        if e not in cache:
            cache[e] = base**e
        return cache[e]

    for (i, j), c in poly.terms.items():
        term = pw(xn_pows, sub_x.num, i) * pw(xd_pows, sub_x.den, dx - i)
        term = term * pw(yn_pows, sub_y.num, j) * pw(yd_pows, sub_y.den, dy - j)
        num = num + term.scale(c)
    den = pw(xd_pows, sub_x.den, dx) * pw(yd_pows, sub_y.den, dy)
    return LocalElem(num, den)
