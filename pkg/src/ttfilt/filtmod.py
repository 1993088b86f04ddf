"""Filtered modules over the order-2 group algebra in characteristic 2.

A filtered module is an ambient C2Module together with a finite decreasing
chain of invariant subspaces indexed by integer weights.  This module
implements the tensor category structure (tensor, dual, twist), the weight
functors (gr, fgt, weight parts), Krull-Schmidt decomposition with explicit
isomorphism certificates, and the exactness/projectivity tests that the
derived-category layer builds on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .gf2 import (
    BitMatrix,
    C2Module,
    Subspace,
    equivariance_rows,
    quotient_module,
)


class MathEngineError(Exception):
    """An internal mathematical invariant failed; signals an engine bug."""


# ---------------------------------------------------------------------------
# Labels and formal sums
# ---------------------------------------------------------------------------

UNIT = "1"
REG = "E"


@dataclass(frozen=True, order=True)
class IndecLabel:
    """Indecomposable label: the trivial line 1(n) or the regular module E(l, m)."""

    kind: str
    l: int
    m: int

    def __post_init__(self):
        if self.kind not in (UNIT, REG):
            raise ValueError("unknown label kind")
        if self.kind == UNIT and self.l != 0:
            raise ValueError("unit labels carry no length")
        if self.l < 0:
            raise ValueError("length must be nonnegative")

    @property
    def dim(self) -> int:
        return 1 if self.kind == UNIT else 2

    def twist(self, r: int) -> "IndecLabel":
        return IndecLabel(self.kind, self.l, self.m + r)

    def text(self) -> str:
        if self.kind == UNIT:
            return f"1({self.m})"
        return f"E({self.l},{self.m})"


def unit_label(n: int) -> IndecLabel:
    return IndecLabel(UNIT, 0, n)


def e_label(l: int, m: int) -> IndecLabel:
    return IndecLabel(REG, l, m)


@dataclass(frozen=True)
class FormalSum:
    """Multiset of indecomposable labels, stored sorted (canonical)."""

    labels: tuple[IndecLabel, ...]

    @staticmethod
    def of(*labels: IndecLabel) -> "FormalSum":
        return FormalSum(tuple(sorted(labels)))

    @staticmethod
    def from_iter(labels) -> "FormalSum":
        return FormalSum(tuple(sorted(labels)))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum(tuple(sorted(self.labels + other.labels)))

    def __len__(self) -> int:
        return len(self.labels)

    def is_zero(self) -> bool:
        return not self.labels

    @property
    def dim(self) -> int:
        return sum(lab.dim for lab in self.labels)

    def twist(self, r: int) -> "FormalSum":
        return FormalSum(tuple(sorted(lab.twist(r) for lab in self.labels)))

    def text(self) -> str:
        if not self.labels:
            return "0"
        return " + ".join(lab.text() for lab in self.labels)


# ---------------------------------------------------------------------------
# Filtered modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiltModule:
    """C2-module with a decreasing chain of invariant subspaces.

    layers[i] is the subspace of weight >= w_min + i, for i up to
    w_max - w_min + 1; the first layer is the full space and the last is
    zero.  Weight ranges are stored tight at both ends, so equal objects
    have bit-identical representations.  The zero module has the empty
    weight range (w_min=0, w_max=-1) by convention.
    """

    module: C2Module
    w_min: int
    w_max: int
    layers: tuple[Subspace, ...]

    def __post_init__(self):
        n = self.module.dim
        if len(self.layers) != self.w_max - self.w_min + 2:
            raise ValueError("layer count mismatch")
        if not self.layers[0].is_full():
            raise ValueError("bottom layer must be the whole space")
        if not self.layers[-1].is_zero():
            raise ValueError("top layer must vanish")
        prev = None
        for lay in self.layers:
            if lay.ambient != n:
                raise ValueError("layer ambient mismatch")
            if prev is not None and not prev.contains_space(lay):
                raise ValueError("layers must decrease")
            for v in lay.basis.data:
                if not lay.contains(self.module.sigma.apply(v)):
                    raise ValueError("layer is not sigma-stable")
            prev = lay
        if n > 0 and self.layers[-2].is_zero() and len(self.layers) > 1 and self.w_max >= self.w_min:
            if len(self.layers) > 2:
                raise ValueError("weight range not tight at top")
        if n > 0 and len(self.layers) > 2 and self.layers[1].is_full():
            raise ValueError("weight range not tight at bottom")

    @staticmethod
    def build(module: C2Module, w_min: int, layers: list[Subspace]) -> "FiltModule":
        """Normalize to tight weight range; layers cover w_min..w_min+len-1
        and are implicitly full below and zero above."""
        if module.dim == 0:
            return FiltModule.zero()
        layers = list(layers)
        if not layers or not layers[0].is_full():
            layers.insert(0, Subspace.full(module.dim))
            w_min -= 1
        if not layers[-1].is_zero():
            layers.append(Subspace.zero(module.dim))
        while len(layers) > 2 and layers[1].is_full():
            layers.pop(0)
            w_min += 1
        while len(layers) > 2 and layers[-2].is_zero():
            layers.pop()
        w_max = w_min + len(layers) - 2
        return FiltModule(module, w_min, w_max, tuple(layers))

    @staticmethod
    def zero() -> "FiltModule":
        return FiltModule(C2Module.trivial(0), 0, -1, (Subspace.zero(0),))

    @property
    def dim(self) -> int:
        return self.module.dim

    def is_zero(self) -> bool:
        return self.dim == 0

    def layer(self, w: int) -> Subspace:
        if w < self.w_min:
            return Subspace.full(self.dim)
        if w > self.w_max:
            return Subspace.zero(self.dim)
        return self.layers[w - self.w_min]

    def is_effective(self) -> bool:
        return self.is_zero() or self.layer(0).is_full()

    def twist(self, r: int) -> "FiltModule":
        if self.is_zero() or r == 0:
            return self
        return FiltModule(self.module, self.w_min + r, self.w_max + r, self.layers)


def fgt(a: FiltModule) -> C2Module:
    return a.module


def pwz_module(m: C2Module) -> FiltModule:
    """The module placed in pure weight zero."""
    if m.dim == 0:
        return FiltModule.zero()
    return FiltModule(m, 0, 0, (Subspace.full(m.dim), Subspace.zero(m.dim)))


@lru_cache(maxsize=None)
def realize(label: IndecLabel) -> FiltModule:
    """Canonical concrete model of an indecomposable label."""
    if label.kind == UNIT:
        return pwz_module(C2Module.trivial(1)).twist(label.m)
    mod = C2Module.free(1)
    if label.l == 0:
        return pwz_module(mod).twist(label.m)
    fixed = Subspace.span(2, (0b11,))
    layers = [Subspace.full(2)] + [fixed] * label.l + [Subspace.zero(2)]
    return FiltModule(mod, label.m, label.m + label.l, tuple(layers))


def direct_sum(a: FiltModule, b: FiltModule) -> FiltModule:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    mod = a.module.direct_sum(b.module)
    w_min = min(a.w_min, b.w_min)
    w_max = max(a.w_max, b.w_max)
    layers = []
    for w in range(w_min, w_max + 2):
        la, lb = a.layer(w), b.layer(w)
        vecs = list(la.basis.data) + [v << a.dim for v in lb.basis.data]
        layers.append(Subspace.span(mod.dim, vecs))
    return FiltModule(mod, w_min, w_max, tuple(layers))


@lru_cache(maxsize=None)
def realize_sum(fs: FormalSum) -> FiltModule:
    out = FiltModule.zero()
    for lab in fs.labels:
        out = direct_sum(out, realize(lab))
    return out


def tensor(a: FiltModule, b: FiltModule) -> FiltModule:
    """Kronecker tensor with the convolved filtration."""
    if a.is_zero() or b.is_zero():
        return FiltModule.zero()
    mod = a.module.tensor(b.module)
    w_min = a.w_min + b.w_min
    w_max = a.w_max + b.w_max
    layers = []
    for w in range(w_min, w_max + 2):
        vecs: list[int] = []
        for p in range(a.w_min, a.w_max + 1):
            la = a.layer(p)
            lb = b.layer(w - p)
            for u in la.basis.data:
                for v in lb.basis.data:
                    vec = 0
                    x = u
                    while x:
                        low = x & -x
                        vec |= v << ((low.bit_length() - 1) * b.dim)
                        x ^= low
                    vecs.append(vec)
        layers.append(Subspace.span(mod.dim, vecs))
    return FiltModule.build(mod, w_min, layers)


def dual(a: FiltModule) -> FiltModule:
    """Dual module; weight-n layer is the annihilator of the weight-(-n+1) layer."""
    if a.is_zero():
        return a
    mod = a.module.dual()
    w_min, w_max = -a.w_max, -a.w_min
    layers = [a.layer(-w + 1).perp() for w in range(w_min, w_max + 2)]
    return FiltModule.build(mod, w_min, layers)


def _weight_part_with_basis(a: FiltModule, m: int) -> tuple[C2Module, BitMatrix]:
    lay = a.layer(m)
    return quotient_module(a.module, lay, Subspace.zero(a.dim))


def weight_part(a: FiltModule, m: int) -> C2Module:
    """The weight->=m subspace of a as a module in its own right."""
    return _weight_part_with_basis(a, m)[0]


def weight_ge(a: FiltModule, m: int) -> FiltModule:
    """Filtered submodule of weight at least m (weights below m filled up)."""
    mod, reps = _weight_part_with_basis(a, m)
    if mod.dim == 0:
        return FiltModule.zero()
    inject = reps.transpose()
    layers = []
    top = max(a.w_max, m)
    for w in range(m, top + 2):
        cut = a.layer(w).perp().basis.mul(inject)
        layers.append(Subspace.span(mod.dim, cut.kernel().data))
    return FiltModule.build(mod, m, layers)


def gr(a: FiltModule) -> list[tuple[int, C2Module]]:
    """Graded pieces: list of (weight, layer mod next layer), nonzero ones only."""
    out = []
    for w in range(a.w_min, a.w_max + 1):
        piece, _ = quotient_module(a.module, a.layer(w), a.layer(w + 1))
        if piece.dim > 0:
            out.append((w, piece))
    return out


def gr_dims(a: FiltModule) -> dict[int, int]:
    return {w: p.dim for w, p in gr(a)}


# ---------------------------------------------------------------------------
# Morphisms and hom spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiltMorphism:
    source: FiltModule
    target: FiltModule
    matrix: BitMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise ValueError("morphism shape mismatch")

    def is_valid(self) -> bool:
        m = self.matrix
        lhs = m.mul(self.source.module.sigma)
        rhs = self.target.module.sigma.mul(m)
        if lhs != rhs:
            return False
        for w in range(self.source.w_min, self.source.w_max + 1):
            tgt = self.target.layer(w)
            for v in self.source.layer(w).basis.data:
                if not tgt.contains(m.apply(v)):
                    return False
        return True

    def compose(self, first: "FiltMorphism") -> "FiltMorphism":
        """self after first."""
        if first.target is not self.source and first.target != self.source:
            raise ValueError("composition mismatch")
        return FiltMorphism(first.source, self.target, self.matrix.mul(first.matrix))

    @staticmethod
    def identity(a: FiltModule) -> "FiltMorphism":
        return FiltMorphism(a, a, BitMatrix.identity(a.dim))


def morphism_rows(source: FiltModule, target: FiltModule) -> list[int]:
    """GF(2) constraints (over target.dim x source.dim unknowns, row-major)
    cutting out the filtered equivariant maps source -> target."""
    da, db = source.dim, target.dim
    rows = list(equivariance_rows(target.module, source.module))
    for w in range(target.w_min + 1, source.w_max + 1):
        src_lay = source.layer(w)
        if src_lay.is_zero():
            continue
        tgt_perp = target.layer(w).perp()
        if tgt_perp.is_zero():
            continue
        for v in src_lay.basis.data:
            for c in tgt_perp.basis.data:
                r = 0
                ci = c
                while ci:
                    low = ci & -ci
                    r |= v << ((low.bit_length() - 1) * da)
                    ci ^= low
                rows.append(r)
    return rows


def hom_basis(source: FiltModule, target: FiltModule) -> list[FiltMorphism]:
    """Basis of the space of filtration-preserving equivariant maps."""
    da, db = source.dim, target.dim
    if da == 0 or db == 0:
        return []
    rows = morphism_rows(source, target)
    if rows:
        sol = BitMatrix(len(rows), db * da, tuple(rows)).kernel()
        vecs = sol.data
    else:
        vecs = BitMatrix.identity(db * da).data
    mask = (1 << da) - 1
    out = []
    for v in vecs:
        mat = BitMatrix(db, da, tuple((v >> (i * da)) & mask for i in range(db)))
        out.append(FiltMorphism(source, target, mat))
    return out


def beta_map(a: FiltModule) -> FiltMorphism:
    """The canonical weight-shift map a -> a(1), identity on the underlying module."""
    return FiltMorphism(a, a.twist(1), BitMatrix.identity(a.dim))


# ---------------------------------------------------------------------------
# Krull-Schmidt decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    sum: FormalSum
    iso: FiltMorphism  # realize_sum(sum) -> original module
    inv: FiltMorphism  # original module -> realize_sum(sum)

    def validate(self) -> bool:
        if not self.iso.is_valid() or not self.inv.is_valid():
            return False
        return (self.inv.matrix.mul(self.iso.matrix).is_identity()
                and self.iso.matrix.mul(self.inv.matrix).is_identity())


def _candidate_labels(a: FiltModule) -> list[IndecLabel]:
    """Candidate summand labels, pruned by the graded dimensions of a.

    Any summand has weights among the weights of a: a unit in weight n
    needs a nonzero graded piece there; E(l, m) needs graded mass at both
    m and m + l (two units' worth when l = 0)."""
    grd = gr_dims(a)
    a_mult, b_mult = a.module.module_split()
    cands: list[IndecLabel] = []
    if a_mult:
        cands.extend(unit_label(n) for n in grd)
    if b_mult:
        for m, d in grd.items():
            if d >= 2:
                cands.append(e_label(0, m))
            for l in range(1, a.w_max - m + 1):
                if grd.get(m + l, 0) >= 1:
                    cands.append(e_label(l, m))
    return sorted(cands)


def _find_summand(a: FiltModule, hint: Optional[IndecLabel] = None
                  ) -> Optional[tuple[IndecLabel, FiltMorphism, FiltMorphism]]:
    """Locate an indecomposable summand of a: a label I with maps f: I -> a and
    r: a -> I whose composite is a unit in End(I).

    The pairing (f, r) -> [r.f mod radical] is bilinear over GF(2), so if a
    summand exists some basis pair composes to an invertible matrix."""
    cands = _candidate_labels(a)
    if hint is not None and hint in cands:
        cands.remove(hint)
        cands.insert(0, hint)
    for label in cands:
        model = realize(label)
        ins = hom_basis(model, a)
        if not ins:
            continue
        outs = hom_basis(a, model)
        for f in ins:
            for r in outs:
                if r.matrix.mul(f.matrix).inverse() is not None:
                    return label, f, r
    return None


def decompose(a: FiltModule) -> Decomposition:
    """Split a into indecomposables, with a certified isomorphism.

    Greedy unit-composite peeling: find (f, r) with u = r.f invertible,
    split off the summand along the idempotent f.u^{-1}.r, and recurse on
    its kernel with the induced filtration.
    """
    labels: list[IndecLabel] = []
    columns: list[BitMatrix] = []  # inclusion realize(label) -> a, in a-coordinates
    current = a
    # embed: current-coordinates -> a-coordinates (rows of the matrix)
    embed = BitMatrix.identity(a.dim)
    hint: Optional[IndecLabel] = None
    while not current.is_zero():
        found = _find_summand(current, hint)
        if found is None:
            raise MathEngineError("no summand found on a nonzero module")
        label, f, r = found
        hint = label
        u_inv = r.matrix.mul(f.matrix).inverse()
        proj = f.matrix.mul(u_inv).mul(r.matrix)  # idempotent onto the summand
        labels.append(label)
        columns.append(embed.mul(f.matrix))
        # kernel of the idempotent = image of 1 + proj
        ker = proj.add(BitMatrix.identity(current.dim)).transpose()
        ker_space = Subspace.span(current.dim, ker.data)
        kmod, reps = quotient_module(current.module, ker_space, Subspace.zero(current.dim))
        if kmod.dim != current.dim - label.dim:
            raise MathEngineError("idempotent splitting has wrong rank")
        inject = reps.transpose()  # kernel coordinates -> current coordinates
        layers = []
        for w in range(current.w_min, current.w_max + 2):
            # preimage of the layer: kernel of (annihilator of V_w) . inject
            cut = current.layer(w).perp().basis.mul(inject)
            layers.append(Subspace.span(kmod.dim, cut.kernel().data))
        nxt = FiltModule.build(kmod, current.w_min, layers)
        embed = embed.mul(inject)
        current = nxt
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    fs = FormalSum.from_iter(labels)
    model = realize_sum(fs)
    if model.dim != a.dim:
        raise MathEngineError("decomposition dimension mismatch")
    if model.dim == 0:
        ident = FiltMorphism(model, a, BitMatrix.zero(0, 0))
        return Decomposition(fs, ident, FiltMorphism(a, model, BitMatrix.zero(0, 0)))
    mat = columns[order[0]]
    for i in order[1:]:
        mat = mat.hstack(columns[i])
    iso = FiltMorphism(model, a, mat)
    inv_mat = mat.inverse()
    if inv_mat is None:
        raise MathEngineError("decomposition certificate is singular")
    inv = FiltMorphism(a, model, inv_mat)
    dec = Decomposition(fs, iso, inv)
    if not dec.validate():
        raise MathEngineError("decomposition certificate failed validation")
    return dec


# ---------------------------------------------------------------------------
# Exact structure and projectivity
# ---------------------------------------------------------------------------


def _gr_data(a: FiltModule):
    """Per-weight graded pieces with representative bases, for all weights in range."""
    out = {}
    for w in range(a.w_min, a.w_max + 1):
        piece, reps = quotient_module(a.module, a.layer(w), a.layer(w + 1))
        out[w] = (piece, reps)
    return out


def gr_map(f: FiltMorphism, w: int) -> BitMatrix:
    """Weight-w component of the graded map induced by f."""
    from .gf2 import induced_map

    src, s_reps = quotient_module(f.source.module, f.source.layer(w), f.source.layer(w + 1))
    tgt, t_reps = quotient_module(f.target.module, f.target.layer(w), f.target.layer(w + 1))
    return induced_map(s_reps, t_reps, f.target.layer(w + 1), f.matrix)


def is_admissible(f: FiltMorphism, g: FiltMorphism) -> bool:
    """True iff g.f = 0 and the graded sequence splits equivariantly in
    every weight; this is the admissibility test for the exact structure."""
    if f.target != g.source:
        raise ValueError("sequence does not compose")
    if not g.matrix.mul(f.matrix).is_zero():
        return False
    a, b, c = f.source, f.target, g.target
    weights = range(min(a.w_min, b.w_min, c.w_min), max(a.w_max, b.w_max, c.w_max) + 1)
    for w in weights:
        amod, _ = quotient_module(a.module, a.layer(w), a.layer(w + 1))
        bmod, _ = quotient_module(b.module, b.layer(w), b.layer(w + 1))
        cmod, _ = quotient_module(c.module, c.layer(w), c.layer(w + 1))
        gf = gr_map(f, w)
        gg = gr_map(g, w)
        if not _split_exact_equivariant(amod, bmod, cmod, gf, gg):
            return False
    return True


def _split_exact_equivariant(amod, bmod, cmod, gf: BitMatrix, gg: BitMatrix) -> bool:
    """Solve jointly for equivariant r: B->A, s: C->B with r.gf = 1,
    gg.s = 1 and gf.r + s.gg = 1."""
    da, db, dc = amod.dim, bmod.dim, cmod.dim
    if db != da + dc:
        return False
    n_r, n_s = da * db, db * dc
    rows: list[int] = []
    rhs: list[int] = []

    def r_idx(i, j):
        return i * db + j

    def s_idx(i, j):
        return n_r + i * dc + j

    for row in equivariance_rows(amod, bmod):
        rows.append(row)
        rhs.append(0)
    for row in equivariance_rows(bmod, cmod):
        shifted = 0
        x = row
        while x:
            low = x & -x
            shifted |= 1 << (n_r + low.bit_length() - 1)
            x ^= low
        rows.append(shifted)
        rhs.append(0)
    # r . gf = id_A
    gf_t = gf.transpose()
    for i in range(da):
        for j in range(da):
            row = 0
            for k in _bit_positions(gf_t.data[j]):
                row ^= 1 << r_idx(i, k)
            rows.append(row)
            rhs.append(1 if i == j else 0)
    # gg . s = id_C
    for i in range(dc):
        for j in range(dc):
            row = 0
            for k in _bit_positions(gg.data[i]):
                row ^= 1 << s_idx(k, j)
            rows.append(row)
            rhs.append(1 if i == j else 0)
    # gf . r + s . gg = id_B
    gg_t = gg.transpose()
    for i in range(db):
        for j in range(db):
            row = 0
            for k in _bit_positions(gf.data[i]):
                row ^= 1 << r_idx(k, j)
            for k in _bit_positions(gg_t.data[j]):
                row ^= 1 << s_idx(i, k)
            rows.append(row)
            rhs.append(1 if i == j else 0)
    mat = BitMatrix(len(rows), n_r + n_s, tuple(rows))
    b = sum((v & 1) << i for i, v in enumerate(rhs))
    return mat.solve(b) is not None


def _bit_positions(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def is_projective(a: FiltModule) -> bool:
    """Projective-injectives are exactly the sums of E(0, i) and E(1, j)."""
    dec = decompose(a)
    return all(lab.kind == REG and lab.l <= 1 for lab in dec.sum.labels)
