"""Seeded random generators for modules, complexes and chain maps.

Used by the randomized test suites; every generator takes an explicit
random.Random so runs are reproducible.
"""

from __future__ import annotations

import random

from .gf2 import BitMatrix, C2Module
from .chains import (
    C2,
    FILT,
    ChainMap,
    Complex,
    build_complex,
    cell_constraint_rows,
    cell_dim,
)
from .filtmod import FiltModule, FormalSum, IndecLabel, e_label, realize_sum, unit_label


def random_label(rng: random.Random, max_l: int = 3, weight_span: tuple[int, int] = (-2, 2)) -> IndecLabel:
    lo, hi = weight_span
    if rng.random() < 0.4:
        return unit_label(rng.randint(lo, hi))
    return e_label(rng.randint(0, max_l), rng.randint(lo, hi))


def random_formal_sum(rng: random.Random, max_summands: int = 6, **kw) -> FormalSum:
    n = rng.randint(1, max_summands)
    return FormalSum.from_iter(random_label(rng, **kw) for _ in range(n))


def random_invertible(rng: random.Random, n: int) -> BitMatrix:
    while True:
        mat = BitMatrix(n, n, tuple(rng.getrandbits(n) for _ in range(n)))
        if mat.inverse() is not None:
            return mat


def scrambled_module(rng: random.Random, fs: FormalSum) -> FiltModule:
    """Realize a formal sum and transport it along a random basis change."""
    a = realize_sum(fs)
    if a.dim == 0:
        return a
    u = random_invertible(rng, a.dim)
    uinv = u.inverse()
    sigma = u.mul(a.module.sigma).mul(uinv)
    layers = [lay.map_through(u) for lay in a.layers]
    return FiltModule(C2Module(a.dim, sigma), a.w_min, a.w_max, tuple(layers))


def random_c2_module(rng: random.Random, max_dim: int = 4) -> C2Module:
    a = rng.randint(0, max_dim // 2)
    b = rng.randint(0, (max_dim - a) // 2)
    if a + b == 0:
        a = 1
    return C2Module.standard(a, b)


def _random_in_hom(rng: random.Random, kind, src, tgt, extra_rows=None) -> BitMatrix:
    """Random element of the hom space, optionally inside extra constraints."""
    rows = list(cell_constraint_rows(kind, src, tgt))
    if extra_rows:
        rows.extend(extra_rows)
    da, db = cell_dim(kind, src), cell_dim(kind, tgt)
    if da == 0 or db == 0:
        return BitMatrix.zero(db, da)
    if rows:
        basis = BitMatrix(len(rows), db * da, tuple(rows)).kernel().data
    else:
        basis = BitMatrix.identity(db * da).data
    flat = 0
    for v in basis:
        if rng.getrandbits(1):
            flat ^= v
    mask = (1 << da) - 1
    return BitMatrix(db, da, tuple((flat >> (i * da)) & mask for i in range(db)))


def random_complex(rng: random.Random, kind: str, n_degrees: int = 3,
                   term_gen=None, d_min: int = 0) -> Complex:
    """Random bounded complex: terms from term_gen, differentials sampled
    uniformly from the subspace of maps composing to zero with the previous one."""
    if term_gen is None:
        if kind == C2:
            term_gen = lambda: random_c2_module(rng)
        elif kind == FILT:
            term_gen = lambda: realize_sum(random_formal_sum(rng, max_summands=2, max_l=2))
        else:
            term_gen = lambda: rng.randint(0, 3)
    terms = {d_min + i: term_gen() for i in range(n_degrees)}
    diffs: dict[int, BitMatrix] = {}
    prev = None  # differential out of degree n-1
    for n in range(d_min + 1, d_min + n_degrees):
        src, tgt = terms[n], terms[n - 1]
        da, db = cell_dim(kind, src), cell_dim(kind, tgt)
        extra = []
        if prev is not None and not prev.is_zero():
            # entries of prev @ d must vanish: row per (i, j) entry
            for i in range(prev.rows):
                for j in range(da):
                    row = 0
                    for k in _bits(prev.data[i]):
                        row ^= 1 << (k * da + j)
                    if row:
                        extra.append(row)
        d = _random_in_hom(rng, kind, src, tgt, extra)
        diffs[n] = d
        prev = d
    return build_complex(kind, terms, diffs)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def random_chain_map(rng: random.Random, x: Complex, y: Complex) -> ChainMap:
    """Random chain map x -> y, sampled uniformly from the hom space."""
    from .chains import chain_map_basis

    basis = chain_map_basis(x, y)
    f = ChainMap.of(x, y, {}, check=False)
    for b in basis:
        if rng.getrandbits(1):
            f = f.add(b)
    f.validate()
    return f
