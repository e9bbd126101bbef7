"""Sparse bivariate polynomials over a finite field.

A Poly2 is a dict mapping exponent pairs (i, j) -> nonzero coefficient,
(i, j) meaning x^i * y^j.  The variable names are fixed abstractly as x, y;
charts rename them for display (u/v in the base chart, x/v in the middle
chart).

Powers decompose into base-p digits so that p-power exponents reduce to
Frobenius (coefficient-wise p-th power plus exponent scaling), which keeps
the tower polynomials sparse in characteristic p.
"""

from __future__ import annotations

from .field import Fq


class NotMonic(ArithmeticError):
    """Divisor is not monic (unit constant leading y-coefficient required)."""


class DivisibleByX(ArithmeticError):
    """y-order mod x requested for a polynomial divisible by x."""


class IndeterminateOrder(ArithmeticError):
    """Order of the zero polynomial (or a series that is 0 to its precision)."""


class Poly2:
    __slots__ = ("field", "terms")

    def __init__(self, field: Fq, terms: dict | None = None):
        self.field = field
        self.terms = {} if terms is None else terms

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: Fq) -> "Poly2":
        return cls(field)

    @classmethod
    def const(cls, field: Fq, c) -> "Poly2":
        if isinstance(c, int):
            c = field.of_int(c)
        if c == field.zero:
            return cls(field)
        return cls(field, {(0, 0): c})

    @classmethod
    def one(cls, field: Fq) -> "Poly2":
        return cls.const(field, 1)

    @classmethod
    def monomial(cls, field: Fq, i: int, j: int, c=1) -> "Poly2":
        if isinstance(c, int):
            c = field.of_int(c)
        if c == field.zero:
            return cls(field)
        return cls(field, {(i, j): c})

    @classmethod
    def x(cls, field: Fq) -> "Poly2":
        return cls.monomial(field, 1, 0)

    @classmethod
    def y(cls, field: Fq) -> "Poly2":
        return cls.monomial(field, 0, 1)

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly2) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def copy(self) -> "Poly2":
        return Poly2(self.field, dict(self.terms))

    def deg_y(self) -> int:
        if not self.terms:
            return -1
        return max(j for _, j in self.terms)

    def deg_x(self) -> int:
        if not self.terms:
            return -1
        return max(i for i, _ in self.terms)

    def constant_term(self):
        return self.terms.get((0, 0), self.field.zero)

    def is_unit(self) -> bool:
        """Unit of the local ring at (x, y): nonzero constant term."""
        return (0, 0) in self.terms

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Poly2") -> "Poly2":
        fld = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = fld.add(out.get(e, fld.zero), c)
            if s == fld.zero:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly2(fld, out)

    def __neg__(self) -> "Poly2":
        fld = self.field
        return Poly2(fld, {e: fld.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __mul__(self, other: "Poly2") -> "Poly2":
        fld = self.field
        if not self.terms or not other.terms:
            return Poly2(fld)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                e = (i1 + i2, j1 + j2)
                s = fld.add(out.get(e, fld.zero), fld.mul(c1, c2))
                if s == fld.zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly2(fld, out)

    def scale(self, c) -> "Poly2":
        fld = self.field
        if isinstance(c, int):
            c = fld.of_int(c)
        if c == fld.zero:
            return Poly2(fld)
        return Poly2(fld, {e: fld.mul(v, c) for e, v in self.terms.items()})

    def shift(self, dx: int, dy: int = 0) -> "Poly2":
        """Multiply by x^dx * y^dy (dx, dy may be negative if divisible)."""
        out = {}
        for (i, j), c in self.terms.items():
            ni, nj = i + dx, j + dy
            if ni < 0 or nj < 0:
                raise ArithmeticError("shift produced negative exponents")
            out[(ni, nj)] = c
        return Poly2(self.field, out)

    def frobenius(self) -> "Poly2":
        """p-th power: exponents scale by p, coefficients take Frobenius."""
        fld = self.field
        p = fld.p
        return Poly2(fld, {(i * p, j * p): fld.frob(c) for (i, j), c in self.terms.items()})

    def __pow__(self, e: int) -> "Poly2":
        if e < 0:
            raise ArithmeticError("negative polynomial power")
        fld = self.field
        if e == 0:
            return Poly2.one(fld)
        # base-p digits: p-power parts are Frobenius twists.
        p = fld.p
        digits = []
        n = e
        while n:
            digits.append(n % p)
            n //= p
        result = Poly2.one(fld)
        frob_pow = self
        for k, d in enumerate(digits):
            if d:
                piece = frob_pow
                for _ in range(d - 1):
                    piece = piece * frob_pow
                result = result * piece
            if k < len(digits) - 1:
                frob_pow = frob_pow.frobenius()
        return result

    # -- orders and restrictions --------------------------------------------

    def x_order(self) -> int:
        """Largest m with x^m dividing the polynomial."""
        if not self.terms:
            raise IndeterminateOrder("x-order of the zero polynomial")
        return min(i for i, _ in self.terms)

    def y_restrict_x0(self) -> dict:
        """The univariate restriction f(0, y) as dict {y-exponent: coeff}."""
        return {j: c for (i, j), c in self.terms.items() if i == 0}

    def y_order_mod_x(self) -> int:
        """y-adic order of f(0, y); requires f(0, y) != 0."""
        rest = self.y_restrict_x0()
        if not rest:
            raise DivisibleByX("f(0, y) = 0; strip the x power first")
        return min(rest)

    def x_coefficient(self, i: int) -> dict:
        """Coefficient of x^i as dict {y-exponent: coeff}."""
        return {j: c for (xi, j), c in self.terms.items() if xi == i}

    def y_coefficients(self) -> dict:
        """Regroup as a polynomial in y: {y-exponent: Poly2 in x only}."""
        out: dict[int, Poly2] = {}
        for (i, j), c in self.terms.items():
            out.setdefault(j, Poly2(self.field))
            out[j].terms[(i, 0)] = c
        return out

    def leading_y_coefficient(self) -> "Poly2":
        d = self.deg_y()
        if d < 0:
            return Poly2(self.field)
        return Poly2(self.field, {(i, 0): c for (i, j), c in self.terms.items() if j == d})

    def is_monic_y(self) -> bool:
        lead = self.leading_y_coefficient()
        return lead.terms == {(0, 0): self.field.one}

    # -- division -----------------------------------------------------------

    def divrem_y(self, g: "Poly2") -> tuple["Poly2", "Poly2"]:
        """Division in k[x][y] by g monic in y: self = q*g + r, deg_y r < deg_y g."""
        fld = self.field
        dg = g.deg_y()
        if dg < 1:
            raise NotMonic("divisor must have y-degree >= 1")
        lead = g.leading_y_coefficient()
        if set(lead.terms) != {(0, 0)}:
            raise NotMonic("divisor's leading y-coefficient must be a constant unit")
        lead_inv = fld.inv(lead.terms[(0, 0)])

        q = Poly2(fld)
        r = self.copy()
        while True:
            dr = r.deg_y()
            if dr < dg:
                break
            # peel the whole top y-slice at once
            top = Poly2(fld, {(i, dr - dg): fld.mul(c, lead_inv)
                              for (i, j), c in r.terms.items() if j == dr})
            q = q + top
            r = r - top * g
            if r.deg_y() >= dr and not r.is_zero():
                raise ArithmeticError("division failed to reduce the y-degree")
        return q, r

    def divexact_xpow(self, m: int) -> "Poly2":
        """Exact division by x^m."""
        if m == 0:
            return self
        if not self.terms:
            return self
        if self.x_order() < m:
            raise ArithmeticError(f"not divisible by x^{m}")
        return self.shift(-m, 0)

    # -- substitution --------------------------------------------------------

    def compose(self, sub_x: "Poly2", sub_y: "Poly2") -> "Poly2":
        """Evaluate at x = sub_x, y = sub_y (both polynomials)."""
        fld = self.field
        by_y = self.y_coefficients()
        if not by_y:
            return Poly2(fld)
        # Horner in y; coefficients composed in x by direct powering (exponents
        # carry heavy p-power structure, so __pow__ keeps them sparse).
        xpow_cache: dict[int, Poly2] = {0: Poly2.one(fld)}

        def xsub(poly_x: Poly2) -> Poly2:
            out = Poly2(fld)
            for (i, _), c in poly_x.terms.items():
                if i not in xpow_cache:
                    xpow_cache[i] = sub_x**i
                out = out + xpow_cache[i].scale(c)
            return out

        result = Poly2(fld)
        for j in range(max(by_y), -1, -1):
            result = result * sub_y
            if j in by_y:
                result = result + xsub(by_y[j])
        return result

    def swap_vars(self) -> "Poly2":
        return Poly2(self.field, {(j, i): c for (i, j), c in self.terms.items()})

    # -- display ------------------------------------------------------------

    def to_str(self, xname: str = "x", yname: str = "y") -> str:
        if not self.terms:
            return "0"
        fld = self.field
        parts = []
        for (i, j) in sorted(self.terms, key=lambda e: (e[1], e[0])):
            c = self.terms[(i, j)]
            factors = []
            if c != fld.one or (i == 0 and j == 0):
                factors.append(fld.to_str(c))
            if i:
                factors.append(xname if i == 1 else f"{xname}^{i}")
            if j:
                factors.append(yname if j == 1 else f"{yname}^{j}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly2({self.to_str()})"
