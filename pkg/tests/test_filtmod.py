import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttfilt.gf2 import BitMatrix
from ttfilt.filtmod import (
    FiltModule,
    FiltMorphism,
    FormalSum,
    beta_map,
    decompose,
    direct_sum,
    dual,
    e_label,
    fgt,
    gr,
    gr_dims,
    hom_basis,
    is_admissible,
    is_projective,
    realize,
    realize_sum,
    tensor,
    unit_label,
    weight_ge,
    weight_part,
)
from ttfilt.samples import random_formal_sum, scrambled_module

from helpers import brute_hom_count

ETA = BitMatrix.from_rows([[1], [1]])
EPS = BitMatrix.from_rows([[1, 1]])


# -- realize -----------------------------------------------------------------

def test_realize_unit():
    u = realize(unit_label(0))
    assert u.dim == 1 and (u.w_min, u.w_max) == (0, 0)


def test_realize_pure_regular():
    e = realize(e_label(0, 3))
    assert e.dim == 2 and (e.w_min, e.w_max) == (3, 3)
    assert e.layer(3).is_full() and e.layer(4).is_zero()


def test_realize_filtered_regular():
    e = realize(e_label(2, 0))
    assert e.layer(0).is_full()
    assert e.layer(1).dim == 1 and e.layer(2).dim == 1
    assert e.layer(3).is_zero()
    # the middle layers are the fixed line
    assert e.layer(1).contains(0b11)


# -- hom spaces ---------------------------------------------------------------

def test_hom_dims_from_construction():
    assert len(hom_basis(realize(e_label(1, 0)), realize(e_label(1, 0)))) == 2
    assert len(hom_basis(realize(unit_label(0)), realize(unit_label(1)))) == 1
    assert len(hom_basis(realize(unit_label(1)), realize(unit_label(0)))) == 0


@pytest.mark.parametrize("a,b", [
    (unit_label(0), e_label(1, 0)),
    (e_label(1, 0), unit_label(0)),
    (e_label(2, -1), e_label(1, 0)),
    (e_label(0, 0), e_label(2, 0)),
    (unit_label(2), e_label(2, 0)),
])
def test_hom_dims_against_brute_force(a, b):
    src, tgt = realize(a), realize(b)
    assert len(hom_basis(src, tgt)) == brute_hom_count(src, tgt)


def test_hom_basis_members_are_valid():
    for f in hom_basis(realize(e_label(2, 0)), realize(e_label(1, 1))):
        assert f.is_valid()


# -- tensor, dual, twist ------------------------------------------------------

def test_tensor_units():
    t = tensor(realize(unit_label(2)), realize(unit_label(-1)))
    assert decompose(t).sum == FormalSum.of(unit_label(1))


def test_tensor_regulars():
    t = tensor(realize(e_label(1, 0)), realize(e_label(2, 0)))
    assert decompose(t).sum == FormalSum.of(e_label(1, 0), e_label(1, 2))


def test_tensor_galois():
    t = tensor(realize(e_label(0, 0)), realize(e_label(0, 0)))
    assert decompose(t).sum == FormalSum.of(e_label(0, 0), e_label(0, 0))


@given(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2), st.integers(-2, 2))
@settings(max_examples=30, deadline=None)
def test_tensor_rule(l, lp, i, j):
    if l > lp:
        l, lp = lp, l
    t = tensor(realize(e_label(l, i)), realize(e_label(lp, j)))
    assert decompose(t).sum == FormalSum.of(e_label(l, i + j), e_label(l, i + j + lp))


def test_dual_formulas():
    assert decompose(dual(realize(unit_label(3)))).sum == FormalSum.of(unit_label(-3))
    assert decompose(dual(realize(e_label(3, 1)))).sum == FormalSum.of(e_label(3, -4))
    a = realize(e_label(2, -1))
    assert gr_dims(dual(a)) == {-w: d for w, d in gr_dims(a).items()}


def test_double_dual():
    rng = random.Random(5)
    for _ in range(10):
        fs = random_formal_sum(rng, max_summands=3)
        a = scrambled_module(rng, fs)
        assert decompose(dual(dual(a))).sum == fs


def test_hom_duality():
    rng = random.Random(11)
    for _ in range(8):
        a = scrambled_module(rng, random_formal_sum(rng, max_summands=2))
        b = scrambled_module(rng, random_formal_sum(rng, max_summands=2))
        assert len(hom_basis(a, b)) == len(hom_basis(dual(b), dual(a)))


def test_twist_inverse_bit_identical():
    a = scrambled_module(random.Random(3), random_formal_sum(random.Random(3)))
    assert a.twist(4).twist(-4) == a


def test_beta_map_is_the_hom_generator():
    u = realize(unit_label(0))
    f = beta_map(u)
    assert f.is_valid()
    basis = hom_basis(u, u.twist(1))
    assert len(basis) == 1 and basis[0].matrix == f.matrix


# -- weight functors ----------------------------------------------------------

def test_gr_of_filtered_regular():
    assert gr_dims(realize(e_label(1, 0))) == {0: 1, 1: 1}
    pieces = dict(gr(realize(e_label(0, 2))))
    assert pieces[2].module_split() == (0, 1)


def test_gr_multiplicative():
    rng = random.Random(19)
    for _ in range(10):
        a = scrambled_module(rng, random_formal_sum(rng, max_summands=2))
        b = scrambled_module(rng, random_formal_sum(rng, max_summands=2))
        da, db = gr_dims(a), gr_dims(b)
        dt = gr_dims(tensor(a, b))
        conv = {}
        for p, x in da.items():
            for q, y in db.items():
                conv[p + q] = conv.get(p + q, 0) + x * y
        assert dt == {k: v for k, v in conv.items() if v}


def test_fgt_is_tensor():
    a = realize(e_label(2, 0))
    b = realize(e_label(1, -1))
    assert fgt(tensor(a, b)).dim == fgt(a).dim * fgt(b).dim


def test_weight_part_values():
    for m, expected in [(1, (0, 1)), (0, (0, 1)), (-1, (1, 0)), (-2, (0, 0))]:
        mod = weight_part(realize(e_label(1, m)), 0)
        assert mod.module_split() == expected


def test_weight_ge():
    a = realize(e_label(2, 0))
    top = weight_ge(a, 1)
    # the fixed line survives and sits (tightly) in top weight 2
    assert decompose(top).sum == FormalSum.of(unit_label(2))
    assert weight_ge(a, -5) == a
    assert weight_ge(a, 3).is_zero()


def test_effective():
    assert realize(e_label(2, 0)).is_effective()
    assert realize(unit_label(1)).is_effective()
    assert not realize(unit_label(-1)).is_effective()


# -- decomposition ------------------------------------------------------------

def test_decompose_realize_roundtrip():
    rng = random.Random(23)
    for _ in range(10):
        fs = random_formal_sum(rng)
        assert decompose(realize_sum(fs)).sum == fs


def test_decompose_scrambled():
    rng = random.Random(29)
    fs = FormalSum.of(e_label(2, 0), unit_label(1))
    for _ in range(5):
        a = scrambled_module(rng, fs)
        dec = decompose(a)
        assert dec.sum == fs
        assert dec.validate()


def test_decompose_additive():
    rng = random.Random(31)
    for _ in range(6):
        f1, f2 = random_formal_sum(rng, 3), random_formal_sum(rng, 3)
        a = direct_sum(scrambled_module(rng, f1), scrambled_module(rng, f2))
        assert decompose(a).sum == f1 + f2


def test_decompose_zero():
    dec = decompose(FiltModule.zero())
    assert dec.sum.is_zero()


# -- exact structure ----------------------------------------------------------

def _seq(l):
    return (FiltMorphism(realize(unit_label(l)), realize(e_label(l, 0)), ETA),
            FiltMorphism(realize(e_label(l, 0)), realize(unit_label(0)), EPS))


def test_fundamental_sequence_admissible():
    f, g = _seq(1)
    assert is_admissible(f, g)
    f3, g3 = _seq(3)
    assert is_admissible(f3, g3)


def test_pure_sequence_not_admissible():
    u, e0 = realize(unit_label(0)), realize(e_label(0, 0))
    f = FiltMorphism(u, e0, ETA)
    g = FiltMorphism(e0, u, EPS)
    assert not is_admissible(f, g)


def test_split_sequence_admissible():
    a, c = realize(e_label(2, 0)), realize(unit_label(1))
    ac = direct_sum(a, c)
    inc = FiltMorphism(a, ac, BitMatrix.identity(2).vstack(BitMatrix.zero(1, 2)))
    prj = FiltMorphism(ac, c, BitMatrix.zero(1, 2).hstack(BitMatrix.identity(1)))
    assert is_admissible(inc, prj)


def test_admissibility_flat_under_tensor():
    # tensoring an admissible sequence with any module keeps it admissible
    f, g = _seq(2)
    for extra in (realize(e_label(1, -1)), realize(unit_label(2)),
                  realize_sum(FormalSum.of(e_label(0, 0), unit_label(0)))):
        fm = _tensor_morphism(f, extra)
        gm = _tensor_morphism(g, extra)
        assert is_admissible(fm, gm)


def _tensor_morphism(f: FiltMorphism, m: FiltModule) -> FiltMorphism:
    return FiltMorphism(tensor(f.source, m), tensor(f.target, m),
                        f.matrix.kron(BitMatrix.identity(m.dim)))


def test_projectivity():
    assert is_projective(realize(e_label(1, 5)))
    assert is_projective(realize(e_label(0, -2)))
    assert not is_projective(realize(unit_label(0)))
    assert not is_projective(realize(e_label(2, 0)))
    assert is_projective(tensor(realize(e_label(1, 0)), realize(e_label(3, 1))))
