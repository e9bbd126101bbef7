"""Generating sequences (key polynomials) defining rank-1 valuations.

A sequence of keys Q_0 = x, Q_1, ..., Q_N (monic in y, with deg_y Q_{i+1} =
n_i * deg_y Q_i) together with strictly compatible values determines a
valuation on the local ring of the chart: the value of f is the minimum of
sum(m_i * value_i) over the standard expansion of f, and the minimum is
attained by a unique term.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import Fq, LocalElem, NotInField, Poly2
from .values import (
    ValueGroup,
    fmt_value,
    group_index,
    group_join,
    order_in_quotient,
    tower_key_value,
)

Value = Fraction


class BadParams(ValueError):
    pass


class SequenceTooShort(ArithmeticError):
    """The element's y-degree exceeds the span of the provided keys."""


class ValueMismatch(ArithmeticError):
    """Residue of f/g requested with value(f) != value(g)."""


class InvalidSequence(ArithmeticError):
    """Operation on a sequence that fails its own validity conditions."""


# recursion step: key_{j+1} = key_j**exponent - x**x_exp * key_{j-1}
@dataclass(frozen=True)
class RecursionStep:
    exponent: int
    x_exp: int


FAMILY_CHARTS = {"Q": ("x", "y"), "P": ("u", "v"), "U": ("x", "v")}


@dataclass
class GenSeq:
    """Keys with assigned values; keys[0] is the chart coordinate x."""

    field: Fq
    keys: list[Poly2]
    values: list[Fraction]
    chart: tuple[str, str] = ("x", "y")
    label: str = ""
    recursion: list[RecursionStep] | None = None
    _checked: bool = dc_field(default=False, repr=False)

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def top(self) -> int:
        return len(self.keys) - 1

    def groups(self) -> list[ValueGroup]:
        """Stage groups generated by values[0..i]."""
        out = []
        g = ValueGroup(Fraction(0))
        for v in self.values:
            g = group_join(g, v)
            out.append(g)
        return out

    def indices(self) -> list[int]:
        """n_i = order of value_i in the quotient by the previous stage (i >= 1)."""
        grps = self.groups()
        return [0] + [
            order_in_quotient(self.values[i], grps[i - 1]) for i in range(1, len(self.values))
        ]

    def degrees(self) -> list[int]:
        return [k.deg_y() if i else 0 for i, k in enumerate(self.keys)]

    def ensure_valid(self):
        if self._checked:
            return
        report = validate(self)
        if not report.ok:
            raise InvalidSequence(report.summary())
        self._checked = True

    def key_str(self, i: int) -> str:
        return self.keys[i].to_str(*self.chart)

    def describe(self) -> list[dict]:
        """Rows (i, key, value, n_i) for reports."""
        idx = self.indices()
        return [
            {
                "i": i,
                "key": self.key_str(i),
                "value": fmt_value(self.values[i]),
                "index": idx[i] if i else "",
            }
            for i in range(len(self.keys))
        ]


@dataclass
class ValidityReport:
    label: str
    rows: list[dict]
    ok: bool

    def summary(self) -> str:
        status = "pass" if self.ok else "FAIL"
        lines = [f"sequence {self.label or '<anonymous>'}: {status}"]
        for row in self.rows:
            lines.append(
                "  i={i}: index computed={index_computed} declared-order={order} "
                "growth={growth} monic={monic} degree={degree}".format(**row)
            )
        return "\n".join(lines)


def validate(gs: GenSeq) -> ValidityReport:
    """Check the group-index, growth, monicity and degree conditions."""
    rows = []
    ok = True
    grps = gs.groups()
    n = len(gs.keys)

    if gs.keys[0] != Poly2.x(gs.field):
        ok = False
        rows.append(
            dict(i=0, index_computed="-", order="-", growth="-", monic=False, degree="-")
        )

    degs = gs.degrees()
    for i in range(1, n):
        row: dict = {"i": i}
        try:
            idx = group_index(grps[i], grps[i - 1])
        except Exception:
            idx = None
        order = order_in_quotient(gs.values[i], grps[i - 1])
        row["index_computed"] = idx
        row["order"] = order
        row_ok = idx == order and idx is not None and idx >= 1

        if i + 1 < n:
            growth = gs.values[i + 1] > order * gs.values[i]
        else:
            growth = True  # nothing to check for the last key
        row["growth"] = growth
        row_ok = row_ok and growth

        monic = gs.keys[i].is_monic_y()
        row["monic"] = monic
        row_ok = row_ok and monic

        if i + 1 < n:
            degree_ok = degs[i + 1] == order * degs[i]
        else:
            degree_ok = degs[i] >= 1
        row["degree"] = degree_ok
        row_ok = row_ok and degree_ok and gs.values[i] > 0

        rows.append(row)
        ok = ok and row_ok

    if gs.values[0] <= 0:
        ok = False
    return ValidityReport(gs.label, rows, ok)


def _tower_recursion(family: str, p: int, j: int) -> RecursionStep:
    """Step producing key_{j+1} = key_j**e - x**E * key_{j-1} for each family."""
    if family in ("Q", "P"):
        return RecursionStep(p**2, 0 if j == 1 else p ** (2 * j - 2))
    # middle-chart family: exponents alternate with the parity of j
    if j == 1:
        return RecursionStep(p, 0)
    if j % 2 == 1:
        return RecursionStep(p, p ** (2 * j - 2))
    return RecursionStep(p**3, p ** (2 * j - 1))


def build_tower_seq(
    family: str, p: int, c: int | None = None, length: int = 5, field: Fq | None = None
) -> GenSeq:
    """Generating sequence of one of the three tower families.

    Q lives in the top chart (x, y), P in the base chart (u, v), U in the
    middle chart (x, v).  The U values follow the alternating recursion; the
    Q/P values are pinned by the equality condition e*value_j = E_j +
    value_{j-1} of each recursion step, starting from value_0 = 1.
    """
    if family not in FAMILY_CHARTS:
        raise BadParams(f"unknown family {family!r}")
    if length < 2:
        raise BadParams("need at least keys 0..2, length >= 2")
    if family == "U":
        if c is None or c < 1 or c % (p - 1) != 0:
            raise BadParams(f"family U requires c >= 1 divisible by p-1, got {c}")
    fld = field if field is not None else Fq(p)
    if fld.p != p:
        raise BadParams("field characteristic does not match p")

    x = Poly2.x(fld)
    y = Poly2.y(fld)
    keys = [x, y]
    values = [Fraction(1)]
    steps = []
    for j in range(1, length):
        step = _tower_recursion(family, p, j)
        steps.append(step)
        lower = keys[j - 1].shift(step.x_exp)
        keys.append(keys[j] ** step.exponent - lower)
        # equality condition pins value_j from value_{j-1}
        values.append((Fraction(step.x_exp) + values[j - 1]) / step.exponent)
    # the final key's value comes from the next (virtual) recursion step
    step = _tower_recursion(family, p, length)
    values.append((Fraction(step.x_exp) + values[length - 1]) / step.exponent)

    if family == "U":
        expected = [tower_key_value(j, p) for j in range(length + 1)]
        if values != expected:
            raise AssertionError("alternating recursion disagrees with its value recursion")

    return GenSeq(
        field=fld,
        keys=keys,
        values=values,
        chart=FAMILY_CHARTS[family],
        label=f"{family}(p={p}" + (f",c={c}" if family == "U" else "") + f",N={length})",
        recursion=steps,
    )


# -- standard expansions ----------------------------------------------------


@dataclass
class ExpTerm:
    coeff: object
    exps: tuple[int, ...]  # (m_0, m_1, ..., m_N)

    def value(self, values: list[Fraction]) -> Fraction:
        return sum((m * v for m, v in zip(self.exps, values)), Fraction(0))


@dataclass
class StandardExpansion:
    gs: GenSeq
    terms: list[ExpTerm]

    def as_poly(self) -> Poly2:
        """Reassemble the element (round-trip identity check)."""
        out = Poly2.zero(self.gs.field)
        for t in self.terms:
            piece = Poly2.const(self.gs.field, t.coeff).shift(t.exps[0])
            for i in range(1, len(t.exps)):
                if t.exps[i]:
                    piece = piece * self.gs.keys[i] ** t.exps[i]
            out = out + piece
        return out

    def minimal_term(self) -> tuple[Fraction, ExpTerm]:
        vals = [(t.value(self.gs.values), k) for k, t in enumerate(self.terms)]
        vals.sort(key=lambda pair: pair[0])
        best, k = vals[0]
        if len(vals) > 1 and vals[1][0] == best:
            raise InvalidSequence("minimal value attained by more than one standard term")
        return best, self.terms[k]

    def term_str(self, t: ExpTerm) -> str:
        gs = self.gs
        parts = []
        if t.coeff != gs.field.one or all(m == 0 for m in t.exps):
            parts.append(gs.field.to_str(t.coeff))
        if t.exps[0]:
            xn = gs.chart[0]
            parts.append(xn if t.exps[0] == 1 else f"{xn}^{t.exps[0]}")
        for i in range(1, len(t.exps)):
            if t.exps[i]:
                parts.append(f"K{i}" if t.exps[i] == 1 else f"K{i}^{t.exps[i]}")
        return "*".join(parts)


def _expand_in_key(g: Poly2, key: Poly2) -> list[Poly2]:
    """Coefficients of g in powers of key: g = sum coeffs[k] * key**k."""
    out = []
    cur = g
    while True:
        q, r = cur.divrem_y(key)
        out.append(r)
        if q.is_zero():
            break
        cur = q
    return out


def expand(f: Poly2 | LocalElem, gs: GenSeq) -> StandardExpansion:
    """Standard expansion by recursive y-division, highest applicable key first.

    Exponents of key i stay below n_i for i < N automatically; the top
    exponent is bounded by the SequenceTooShort precondition.
    """
    gs.ensure_valid()
    if isinstance(f, LocalElem):
        f = f.num  # unit denominators never affect the expansion support
    if f.is_zero():
        raise ArithmeticError("cannot expand the zero element")
    top = gs.top
    degs = gs.degrees()
    idx = gs.indices()
    if top >= 1 and f.deg_y() >= degs[top] * idx[top]:
        raise SequenceTooShort(
            f"deg_y {f.deg_y()} >= {degs[top] * idx[top]}; extend the sequence"
        )

    terms: dict[tuple[int, ...], object] = {}
    fld = gs.field

    def emit(xpoly: Poly2, tail: tuple[int, ...]):
        for (a, b), cf in xpoly.terms.items():
            if b != 0:
                raise SequenceTooShort("leftover y-degree below the first key")
            key_ = (a,) + tail
            if key_ in terms:
                s = fld.add(terms[key_], cf)
                if s == fld.zero:
                    del terms[key_]
                else:
                    terms[key_] = s
            else:
                terms[key_] = cf

    def rec(g: Poly2, i: int, tail: tuple[int, ...]):
        if g.is_zero():
            return
        if i == 0:
            emit(g, tail)
            return
        for k, coeff in enumerate(_expand_in_key(g, gs.keys[i])):
            rec(coeff, i - 1, (k,) + tail)

    rec(f, top, ())
    return StandardExpansion(gs, [ExpTerm(c, e) for e, c in sorted(terms.items())])


def value_of(f: Poly2 | LocalElem, gs: GenSeq) -> Fraction:
    """The valuation of f: minimum value over the standard expansion terms."""
    v, _ = expand(f, gs).minimal_term()
    return v


def _relation_data(gs: GenSeq, i: int) -> tuple:
    """Initial-form relation of key_i: key_i**n_i has a unique minimal standard
    term; returns (lattice vector n_i*e_i - exps, coefficient)."""
    idx = gs.indices()
    power = gs.keys[i] ** idx[i]
    _, term = expand(power, gs).minimal_term()
    vec = [0] * len(gs.keys)
    vec[i] = idx[i]
    vec = tuple(a - b for a, b in zip(vec, term.exps))
    return vec, term.coeff


def _solve_integer_combination(columns: list[tuple], target: tuple) -> list[int] | None:
    """Solve sum t_i * columns[i] = target over the integers (None if impossible)."""
    rows = len(target)
    ncols = len(columns)
    aug = [[Fraction(columns[c][r]) for c in range(ncols)] + [Fraction(target[r])] for r in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pivot = aug[r][c]
        aug[r] = [v / pivot for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [v - factor * w for v, w in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    # consistency
    for i in range(r, rows):
        if aug[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for row_i, c in enumerate(pivots):
        sol[c] = aug[row_i][ncols]
    if any(s.denominator != 1 for s in sol):
        return None
    return [int(s) for s in sol]


def monomial_residue(gs: GenSeq, delta):
    """Residue of the value-0 key monomial with exponent vector ``delta``
    (entries may be negative), resolved through the initial-form relations
    key_i**n_i -> c_i * (lower monomial).  NotInField when the vector is not
    generated by the relations."""
    gs.ensure_valid()
    fld = gs.field
    delta = tuple(delta)
    if sum((m * v for m, v in zip(delta, gs.values)), Fraction(0)) != 0:
        raise ValueMismatch("monomial does not have value 0")
    columns, consts = [], []
    for i in range(1, gs.top):
        vec, coeff = _relation_data(gs, i)
        columns.append(vec)
        consts.append(coeff)
    sol = _solve_integer_combination(columns, delta)
    if sol is None:
        raise NotInField(
            "residue is not determined by the generating sequence's graded relations"
        )
    res = fld.one
    for t, coeff in zip(sol, consts):
        if t:
            res = fld.mul(res, fld.pow_(coeff, t))
    return res


def residue_of_quotient(f, g, gs: GenSeq):
    """Residue in k of f/g at the valuation (requires value(f) == value(g)).

    Equal values force equal minimal exponent vectors within one sequence, so
    the residue is the ratio of the minimal coefficients (times unit
    denominators); the monomial-residue fallback covers externally supplied
    initial forms.
    """
    fld = gs.field
    unit_adjust = fld.one
    if isinstance(f, LocalElem):
        unit_adjust = fld.mul(unit_adjust, fld.inv(f.den.constant_term()))
        f = f.num
    if isinstance(g, LocalElem):
        unit_adjust = fld.mul(unit_adjust, g.den.constant_term())
        g = g.num

    vf, tf = expand(f, gs).minimal_term()
    vg, tg = expand(g, gs).minimal_term()
    if vf != vg:
        raise ValueMismatch(f"value {fmt_value(vf)} != {fmt_value(vg)}")
    res = fld.mul(fld.div(tf.coeff, tg.coeff), unit_adjust)
    if tf.exps == tg.exps:
        return res
    delta = tuple(a - b for a, b in zip(tf.exps, tg.exps))
    return fld.mul(res, monomial_residue(gs, delta))


@dataclass
class ValSemigroup:
    bound: Fraction
    elements: tuple[Fraction, ...]

    def contains(self, v: Fraction) -> bool:
        return v in self.elements

    def closed_under_addition(self) -> bool:
        s = set(self.elements)
        for a in self.elements:
            for b in self.elements:
                if a + b <= self.bound and (a + b) not in s:
                    return False
        return True


def semigroup(gs: GenSeq, bound: Fraction) -> ValSemigroup:
    """All values sum(m_i * value_i) <= bound with m_0 >= 0 and 0 <= m_i < n_i."""
    gs.ensure_valid()
    bound = Fraction(bound)
    if bound < 0:
        raise BadParams("bound must be >= 0")
    idx = gs.indices()
    vals = gs.values
    found: set[Fraction] = set()

    def rec(i: int, acc: Fraction):
        if i == 0:
            # x-exponent free: acc + m*vals[0] <= bound
            m = 0
            while acc + m * vals[0] <= bound:
                found.add(acc + m * vals[0])
                m += 1
            return
        for m in range(idx[i]):
            nxt = acc + m * vals[i]
            if nxt > bound:
                break
            rec(i - 1, nxt)

    rec(gs.top, Fraction(0))
    return ValSemigroup(bound, tuple(sorted(found)))
