from fractions import Fraction as F

import pytest

from ramval.algebra import Fq, LocalElem, Poly2, parse_poly
from ramval.genseq import GenSeq, build_tower_seq, monomial_residue
from ramval.towers import build_tower
from ramval.transforms import (
    ChartChain,
    Inconsistent,
    NotApplicable,
    NotMonomial,
    NotPPower,
    StableForm,
    composite_transform,
    defect_from_stable,
    run_tower_ladder,
    stable_form,
)

F2 = Fq(2)
F3 = Fq(3)


# -- stable forms ---------------------------------------------------------------


def test_stable_form_base_extension_example():
    # u = x^p / (1 - x^(p-1)), v = y^p - x^c y at p = 2, c = 1
    u = LocalElem(parse_poly("x^2", F2), parse_poly("1 - x", F2))
    v = parse_poly("y^2 - x*y", F2)
    sf = stable_form(u, v, 2)
    assert (sf.a, sf.a_bar, sf.alpha, sf.b, sf.d, sf.beta) == (2, 1, 1, 0, 2, 1)
    assert sf.unit_residue == F2.one


def test_stable_form_identity_extension():
    sf = stable_form(Poly2.x(F2), Poly2.y(F2), 2)
    assert (sf.a, sf.a_bar, sf.alpha, sf.b, sf.d, sf.beta) == (1, 1, 0, 0, 1, 0)


def test_stable_form_middle_to_top():
    # x as the middle-chart parameter against the top chart, p = 2, c = 1
    v = parse_poly("y^2 - x*y", F2)
    sf = stable_form(Poly2.x(F2), v, 2)
    assert (sf.a, sf.alpha, sf.b, sf.d, sf.beta) == (1, 0, 0, 2, 1)


def test_stable_form_not_monomial():
    with pytest.raises(NotMonomial):
        stable_form(parse_poly("x + y", F2), Poly2.y(F2), 2)


def test_stable_form_d_not_p_power():
    v = parse_poly("y^2 + x", F3)  # d = 2 is not a power of 3
    with pytest.raises(NotPPower):
        stable_form(Poly2.x(F3), v, 3)


def test_defect_from_stable_examples():
    sf = StableForm(a=2, a_bar=1, alpha=1, b=0, d=2, beta=1)
    assert defect_from_stable(sf, 1, 1, 2) == 2
    sf1 = StableForm(a=1, a_bar=1, alpha=0, b=0, d=2, beta=1)
    assert defect_from_stable(sf1, 1, 1, 2) == 1
    # defectless shape a = e, d = 1, residue degree f matched by f_res
    sf0 = StableForm(a=3, a_bar=3, alpha=0, b=0, d=1, beta=0)
    assert defect_from_stable(sf0, 3, 2, 2, f_res=2) == 0


def test_defect_inconsistent():
    sf = StableForm(a=3, a_bar=3, alpha=0, b=0, d=1, beta=0)
    with pytest.raises(Inconsistent):
        defect_from_stable(sf, 2, 1, 2)


# -- composite transforms ---------------------------------------------------------


def test_composite_transform_middle_level2_values():
    gs = build_tower_seq("U", 2, 1, 5)
    cmap, lvl2 = composite_transform(gs)
    assert lvl2.values == [F(1, 2), F(1, 16), F(17, 32), F(273, 256), F(4369, 512)]
    assert cmap.n == 2
    assert cmap.residue == F2.one
    # declared quotient formulas: new key j has the value of
    # old key (j+1) / x^(p^(2j-2)) for j odd, / x^(p^(2j-1)) for j even
    for j in range(1, len(lvl2.values)):
        exp = 2 ** (2 * j - 2) if j % 2 == 1 else 2 ** (2 * j - 1)
        assert lvl2.values[j] == gs.values[j + 1] - exp


def test_composite_transform_top_level2_values():
    for p in (2, 3):
        gs = build_tower_seq("Q", p, None, 4)
        _, lvl2 = composite_transform(gs)
        # declared: new key j = old key (j+1) / x^(p^(2(j-1)))
        for j in range(1, len(lvl2.values)):
            assert lvl2.values[j] == gs.values[j + 1] - p ** (2 * (j - 1))


def test_composite_transform_trivial_two_keys():
    gs = GenSeq(F2, [Poly2.x(F2), Poly2.y(F2)], [F(1), F(1)], label="blowup")
    cmap, lvl2 = composite_transform(gs)
    assert cmap.n == 1
    assert len(lvl2.keys) == 1
    d = cmap.describe()
    assert d["old_x"].startswith("1 * x2^1")
    assert d["old_y"] == "x2"


def test_composite_transform_ratio_failure():
    keys = [Poly2.x(F2), Poly2.y(F2), parse_poly("y^5 - x^2", F2)]
    gs = GenSeq(F2, keys, [F(1), F(2, 5), F(21, 10)], label="offratio")
    with pytest.raises(NotApplicable):
        composite_transform(gs)


def test_composite_transform_chart_map_pushes_keys():
    # pushing an old key through the map and dividing by the declared power of
    # the new coordinate reproduces the new key
    gs = build_tower_seq("U", 3, 2, 4)
    cmap, lvl2 = composite_transform(gs)
    img = cmap.push(gs.keys[2])
    assert img.x_order() == gs.keys[2].deg_y()
    assert img.divexact_xpow(gs.keys[2].deg_y()) == lvl2.keys[1]


def test_transformed_recursion_residues_are_one():
    for fam, p, c in (("U", 2, 1), ("Q", 2, None), ("P", 2, None), ("U", 3, 2)):
        seq = build_tower_seq(fam, p, c, 5)
        _, lvl2 = composite_transform(seq)
        assert all(r == seq.field.one for r in lvl2.rel_residues)
        _, lvl3 = composite_transform(lvl2)
        assert all(r == seq.field.one for r in lvl3.rel_residues)


def test_chart_validation_detects_tampering():
    # corrupting a transformed key must not pass the validity checks
    from ramval.transforms import validate_chart_seq

    seq = build_tower_seq("U", 2, 1, 5)
    _, lvl2 = composite_transform(seq)
    good = validate_chart_seq(lvl2)
    assert good.ok
    lvl2.keys[2] = lvl2.keys[2] * LocalElem(Poly2.x(F2))  # wrong exceptional order
    assert not validate_chart_seq(lvl2).ok
    _, fresh = composite_transform(seq)
    fresh.values[2] += F(1, 64)  # breaks the relation exponent integrality
    assert not validate_chart_seq(fresh).ok


# -- chains ------------------------------------------------------------------------


def middle_declared_vector(p: int, k: int, j: int, nkeys: int):
    """Declared original-key exponent vector of key j at level k (middle
    family), from the published per-level quotient formulas."""
    vec = [0] * nkeys
    if k == 2:
        if j == 0:
            vec[1] = 1
            return tuple(vec)
        vec[j + 1] = 1
        vec[0] = -(p ** (2 * j - 2) if j % 2 == 1 else p ** (2 * j - 1))
        return tuple(vec)
    if j == 0:
        return middle_declared_vector(p, k - 1, 1, nkeys)
    if k % 2 == 1:
        xexp = p ** (2 * (j + k) - 5) if j % 2 == 1 else p ** (2 * (j + k) - 6)
        kexp = p ** (2 * j - 2) if j % 2 == 1 else p ** (2 * j - 3)
    else:
        xexp = p ** (2 * (j + k) - 6) if j % 2 == 1 else p ** (2 * (j + k) - 5)
        kexp = p ** (2 * j - 2) if j % 2 == 1 else p ** (2 * j - 1)
    vec[j + k - 1] = 1
    vec[0] = -xexp
    vec[k - 2] = -kexp
    return tuple(vec)


def top_declared_vector(p: int, k: int, j: int, nkeys: int):
    """Declared vector of key j at level k for the top/base families."""
    vec = [0] * nkeys
    if k == 2:
        if j == 0:
            vec[1] = 1
            return tuple(vec)
        vec[j + 1] = 1
        vec[0] = -(p ** (2 * (j - 1)))
        return tuple(vec)
    if j == 0:
        return top_declared_vector(p, k - 1, 1, nkeys)
    vec[j + k - 1] = 1
    vec[0] = -(p ** (2 * (j + k - 3)))
    vec[k - 2] = -(p ** (2 * (j - 1)))
    return tuple(vec)


@pytest.mark.parametrize("p,c", [(2, 1), (3, 2)])
def test_chain_values_match_declared_quotients_middle(p, c):
    base = build_tower_seq("U", p, c, 6)
    chain = ChartChain(base)
    nkeys = len(base.keys)
    for k in (2, 3, 4):
        lvl = chain.level(k)
        for j in range(len(lvl.values)):
            if k == 3 and j == 0:
                declared = middle_declared_vector(p, 2, 1, nkeys)
            else:
                declared = middle_declared_vector(p, k, j, nkeys)
            val = sum(m * v for m, v in zip(declared, base.values))
            assert val == lvl.values[j], (k, j)


@pytest.mark.parametrize("fam,p", [("Q", 2), ("Q", 3), ("P", 2), ("P", 3)])
def test_chain_values_match_declared_quotients_top_base(fam, p):
    base = build_tower_seq(fam, p, None, 6)
    chain = ChartChain(base)
    nkeys = len(base.keys)
    for k in (2, 3, 4):
        lvl = chain.level(k)
        for j in range(len(lvl.values)):
            if k == 3 and j == 0:
                declared = top_declared_vector(p, 2, 1, nkeys)
            else:
                declared = top_declared_vector(p, k, j, nkeys)
            val = sum(m * v for m, v in zip(declared, base.values))
            assert val == lvl.values[j], (k, j)


def test_chain_vectors_differ_from_declared_by_unit_monomials():
    # the chain's own key monomials and the declared quotients differ by
    # value-0 monomials whose graded residue is 1
    base = build_tower_seq("Q", 2, None, 6)
    chain = ChartChain(base)
    nkeys = len(base.keys)
    for k in (2, 3):
        lvl = chain.level(k)
        for j in range(len(lvl.values)):
            if k == 3 and j == 0:
                declared = top_declared_vector(2, 2, 1, nkeys)
            else:
                declared = top_declared_vector(2, k, j, nkeys)
            delta = tuple(a - b for a, b in zip(lvl.vecs[j], declared))
            if any(delta):
                assert monomial_residue(base, delta) == F2.one


def test_chain_pushforward_matches_order_calculus():
    # dual route: exact pushforwards through the chart maps agree with the
    # composite-order tables
    for p, c, kmax in ((2, 1, 4), (3, 2, 3)):
        tower = build_tower(p, c, 6)
        ch_s = tower.chain("S")
        ch_a = tower.chain("A")
        rep = run_tower_ladder(tower, kmax)
        for k in range(2, kmax + 1):
            lvl_a = ch_a.level(k)
            row = next(r for r in rep.rows if r.level == k and r.extension == "S/A")
            got = _mu_exact_of_vector(tower.mid_keys_xy, lvl_a.vecs[1], ch_s, k)
            assert got == (row.form.b, row.form.d)
            got_a = _mu_exact_of_vector(tower.mid_keys_xy, lvl_a.vecs[0], ch_s, k)
            assert got_a == (row.form.a, 0)


def test_chain_pushforward_matches_order_calculus_base_side():
    # same dual route for the base chart's parameters, in the middle chart
    # (A/R rows) and in the top chart (S/R rows)
    for p, c, kmax in ((2, 1, 3), (3, 2, 3)):
        tower = build_tower(p, c, 6)
        ch_a = tower.chain("A")
        ch_s = tower.chain("S")
        rep = run_tower_ladder(tower, kmax)
        base_in_top = [
            k.compose(LocalElem(Poly2.x(tower.field)), LocalElem(tower.v_sub))
            for k in tower.base_keys_xv
        ]
        for k in range(1, kmax + 1):
            lvl_r = tower.chain("R").level(k)
            row = next(r for r in rep.rows if r.level == k and r.extension == "A/R")
            assert _mu_exact_of_vector(tower.base_keys_xv, lvl_r.vecs[0], ch_a, k) == (
                row.form.a, 0)
            assert _mu_exact_of_vector(tower.base_keys_xv, lvl_r.vecs[1], ch_a, k) == (
                row.form.b, row.form.d)
            row_t = next(r for r in rep.rows if r.level == k and r.extension == "S/R")
            assert _mu_exact_of_vector(base_in_top, lvl_r.vecs[0], ch_s, k) == (
                row_t.form.a, 0)
            assert _mu_exact_of_vector(base_in_top, lvl_r.vecs[1], ch_s, k) == (
                row_t.form.b, row_t.form.d)


def _mu_exact_of_vector(base_keys, vec, chain, k):
    fld = base_keys[0].field
    num = LocalElem(Poly2.one(fld))
    den = LocalElem(Poly2.one(fld))
    for i, m in enumerate(vec):
        if m > 0:
            num = num * (base_keys[i] if isinstance(base_keys[i], LocalElem) else LocalElem(base_keys[i])) ** m
        elif m < 0:
            den = den * (base_keys[i] if isinstance(base_keys[i], LocalElem) else LocalElem(base_keys[i])) ** (-m)
    num_p = chain.push_exact(num, k)
    den_p = chain.push_exact(den, k)

    def mu(e):
        o = e.x_order()
        shifted = LocalElem(e.num.divexact_xpow(e.num.x_order()), e.den)
        return o, shifted.y_order_mod_x()

    a, b = mu(num_p)
    c, d = mu(den_p)
    return a - c, b - d


# -- ladder ------------------------------------------------------------------------


@pytest.mark.parametrize("p,c", [(2, 1), (2, 2), (3, 2)])
def test_ladder_oscillation(p, c):
    tower = build_tower(p, c, 6)
    rep = run_tower_ladder(tower, 4)
    for row in rep.rows:
        odd = row.level % 2 == 1
        alpha, beta = row.form.alpha, row.form.beta
        if row.extension == "S/A":
            assert (alpha, beta) == ((0, 1) if odd else (1, 0))
        elif row.extension == "A/R":
            assert (alpha, beta) == ((1, 0) if odd else (0, 1))
        else:
            assert (alpha, beta) == (1, 1)
        assert row.form.b == 0 and row.form.a_bar == 1


@pytest.mark.parametrize("p,c", [(2, 1), (3, 2)])
def test_ladder_sums_and_defects(p, c):
    tower = build_tower(p, c, 6)
    rep = run_tower_ladder(tower, 4)
    by_level = {}
    for row in rep.rows:
        by_level.setdefault(row.level, {})[row.extension] = row
    for k, rows in by_level.items():
        assert rows["S/A"].form.alpha + rows["S/A"].form.beta == 1
        assert rows["A/R"].form.alpha + rows["A/R"].form.beta == 1
        assert rows["S/R"].form.alpha == rows["S/R"].form.beta == 1
        # complementary oscillation of the two sub-extensions
        assert rows["S/A"].form.alpha == 1 - rows["A/R"].form.alpha
        # multiplicativity of the defect
        assert rows["S/R"].defect == rows["S/A"].defect + rows["A/R"].defect == 2
        assert rows["S/A"].defect == rows["A/R"].defect == 1
