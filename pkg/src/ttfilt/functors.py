"""Functors between the filtered world and complexes of plain modules.

The six residue tests of the spectrum layer are assembled from these:
total-graded and forgetful functors, restriction to the trivial group,
the stable (fixed-modulo-norm) quotient, folded Tate cohomology, and the
derived weight-zero functors rwz / tfgt.
"""

from __future__ import annotations

from .gf2 import BitMatrix, C2Module, Subspace, image, kernel_space, quotient_module, induced_map
from .filtmod import FiltModule, MathEngineError, pwz_module
from .chains import (
    C2,
    F2,
    FILT,
    ChainMap,
    Complex,
    build_complex,
    injres_trunc,
    invertpur_pow,
    minimize,
    tensor_complex,
    twist_complex,
)


# ---------------------------------------------------------------------------
# Graded and forgetful functors
# ---------------------------------------------------------------------------


def _gr_total(a: FiltModule):
    """Total graded module with representative rows, weights ascending."""
    pieces = []
    reps_rows: list[int] = []
    sigma_blocks = []
    for w in range(a.w_min, a.w_max + 1):
        piece, reps = quotient_module(a.module, a.layer(w), a.layer(w + 1))
        if piece.dim == 0:
            continue
        pieces.append((w, piece, reps))
        sigma_blocks.append(piece.sigma)
    total = C2Module(sum(p.dim for _, p, _ in pieces), BitMatrix.block_diag(sigma_blocks))
    return total, pieces


def _gr_matrix(f_mat: BitMatrix, src: FiltModule, tgt: FiltModule,
               src_pieces, tgt_pieces) -> BitMatrix:
    cols = sum(p.dim for _, p, _ in src_pieces)
    rows = sum(p.dim for _, p, _ in tgt_pieces)
    data = [0] * rows
    roff = 0
    for w_t, piece_t, reps_t in tgt_pieces:
        coff = 0
        for w_s, piece_s, reps_s in src_pieces:
            if w_s == w_t:
                block = induced_map(reps_s, reps_t, tgt.layer(w_t + 1), f_mat)
                for i, r in enumerate(block.data):
                    data[roff + i] ^= r << coff
            coff += piece_s.dim
        roff += piece_t.dim
    return BitMatrix(rows, cols, tuple(data))


def gr_complex(x: Complex) -> Complex:
    """Degreewise total-graded complex over plain modules."""
    if x.kind != FILT:
        raise ValueError("gr applies to filtered complexes")
    datas = {n: _gr_total(x.term(n)) for n in x.degrees()}
    terms = {n: total for n, (total, _) in datas.items()}
    diffs = {}
    for n in x.degrees():
        if n > x.d_min:
            diffs[n] = _gr_matrix(x.diff(n), x.term(n), x.term(n - 1),
                                  datas[n][1], datas[n - 1][1])
    return build_complex(C2, terms, diffs)


def gr_component_complex(x: Complex, w: int) -> Complex:
    """The weight-w graded piece of a filtered complex."""
    terms = {}
    reps = {}
    for n in x.degrees():
        t = x.term(n)
        piece, rep = quotient_module(t.module, t.layer(w), t.layer(w + 1))
        terms[n] = piece
        reps[n] = rep
    diffs = {}
    for n in x.degrees():
        if n > x.d_min and terms[n].dim and terms[n - 1].dim:
            tgt = x.term(n - 1)
            diffs[n] = induced_map(reps[n], reps[n - 1], tgt.layer(w + 1), x.diff(n))
    return build_complex(C2, terms, diffs)


def gr_component_map(f: ChainMap, w: int) -> ChainMap:
    """Weight-w graded piece of a chain map between filtered complexes."""
    src = gr_component_complex(f.source, w)
    tgt = gr_component_complex(f.target, w)
    comps = {}
    for n, mat in f.comps:
        s_t, t_t = f.source.term(n), f.target.term(n)
        _, s_rep = quotient_module(s_t.module, s_t.layer(w), s_t.layer(w + 1))
        _, t_rep = quotient_module(t_t.module, t_t.layer(w), t_t.layer(w + 1))
        if s_rep.rows and t_rep.rows:
            comps[n] = induced_map(s_rep, t_rep, t_t.layer(w + 1), mat)
    return ChainMap.of(src, tgt, comps, check=False)


def fgt_complex(x: Complex) -> Complex:
    """Forget the filtrations degreewise."""
    if x.kind != FILT:
        raise ValueError("fgt applies to filtered complexes")
    terms = {n: x.term(n).module for n in x.degrees()}
    diffs = {n: x.diff(n) for n in x.degrees() if n > x.d_min}
    return build_complex(C2, terms, diffs, check=False)


def homology(y: Complex) -> dict[int, tuple[int, int]]:
    """Per-degree homology of a plain complex, as (trivial, free) splits."""
    if y.kind != C2:
        raise ValueError("homology applies to plain complexes")
    out = {}
    for n in range(y.d_min, y.d_max + 1):
        cycles = kernel_space(y.diff(n))
        boundaries = image(y.diff(n + 1))
        h, _ = quotient_module(y.term(n), cycles, boundaries)
        if h.dim:
            out[n] = h.module_split()
    return out


# ---------------------------------------------------------------------------
# Residue building blocks
# ---------------------------------------------------------------------------


def res_complex(y: Complex) -> Complex:
    """Restrict to the trivial group: keep dimensions and matrices only."""
    if y.kind != C2:
        raise ValueError("res applies to plain complexes")
    terms = {n: y.term(n).dim for n in y.degrees()}
    diffs = {n: y.diff(n) for n in y.degrees() if n > y.d_min}
    return build_complex(F2, terms, diffs, check=False)


def is_exact_F2(z: Complex) -> bool:
    """Exactness of a vector-space complex by rank counting."""
    if z.kind != F2:
        raise ValueError("exactness test applies to vector-space complexes")
    for n in range(z.d_min, z.d_max + 1):
        if z.diff(n).rank() + z.diff(n + 1).rank() != z.dim(n):
            return False
    return True


def sta_complex(y: Complex) -> Complex:
    """Degreewise fixed-points modulo norm image, with induced maps."""
    if y.kind != C2:
        raise ValueError("sta applies to plain complexes")
    reps = {}
    terms = {}
    belows = {}
    for n in y.degrees():
        t = y.term(n)
        norm = t.norm()
        fixed = kernel_space(norm)
        below = image(norm)
        q, rep = quotient_module(t, fixed, below)
        terms[n] = q.dim
        reps[n] = rep
        belows[n] = below
    diffs = {}
    for n in y.degrees():
        if n > y.d_min and terms[n] and terms[n - 1]:
            diffs[n] = induced_map(reps[n], reps[n - 1], belows[n - 1], y.diff(n))
    return build_complex(F2, terms, diffs, check=False)


def tate_dim(y: Complex) -> int:
    """Folded Tate cohomology dimension of a plain complex.

    Folds all degrees into one space and combines the differential with
    the norm; the square vanishes because differentials are equivariant
    and the characteristic is 2.  The result is the dimension of the image
    in the stable category.
    """
    if y.kind != C2:
        raise ValueError("tate applies to plain complexes")
    total = y.total_dim()
    if total == 0:
        return 0
    offs = {}
    off = 0
    for n in y.degrees():
        offs[n] = off
        off += y.dim(n)
    data = [0] * total
    for n in y.degrees():
        t = y.term(n)
        norm = t.norm()
        for i, r in enumerate(norm.data):
            data[offs[n] + i] ^= r << offs[n]
        if n > y.d_min:
            d = y.diff(n)
            for i, r in enumerate(d.data):
                data[offs[n - 1] + i] ^= r << offs[n]
    op = BitMatrix(total, total, tuple(data))
    if not op.mul(op).is_zero():
        raise MathEngineError("folded Tate operator does not square to zero")
    return total - 2 * op.rank()


# ---------------------------------------------------------------------------
# Weight-zero functors
# ---------------------------------------------------------------------------


def pwz_complex(y: Complex) -> Complex:
    """Place a plain complex in pure weight zero."""
    if y.kind != C2:
        raise ValueError("pwz applies to plain complexes")
    terms = {n: pwz_module(y.term(n)) for n in y.degrees()}
    diffs = {n: y.diff(n) for n in y.degrees() if n > y.d_min}
    return build_complex(FILT, terms, diffs, check=False)


def max_weight(x: Complex) -> int:
    return max((t.w_max for t in x.terms if not t.is_zero()), default=0)


def min_weight(x: Complex) -> int:
    return min((t.w_min for t in x.terms if not t.is_zero()), default=0)


def _weight_zero_part(x: Complex) -> Complex:
    """Degreewise weight-zero subobject with restricted differentials."""
    terms = {}
    reps = {}
    for n in x.degrees():
        t = x.term(n)
        mod, rep = quotient_module(t.module, t.layer(0), Subspace.zero(t.dim))
        terms[n] = mod
        reps[n] = rep
    diffs = {}
    for n in x.degrees():
        if n > x.d_min and terms[n].dim and terms[n - 1].dim:
            diffs[n] = induced_map(reps[n], reps[n - 1], Subspace.zero(x.term(n - 1).dim), x.diff(n))
    return build_complex(C2, terms, diffs)


def rwz(x: Complex) -> Complex:
    """Right-derived weight-zero part.

    Tensors with the truncated injective resolution of the unit and takes
    degreewise weight-zero parts.  The truncation length max-weight + 1 is
    exact: all omitted resolution terms have vanishing weight-zero part
    against x.
    """
    if x.kind != FILT:
        raise ValueError("rwz applies to filtered complexes")
    if x.is_zero():
        return Complex(C2, 0, (), ())
    j = max_weight(x) + 1
    if j <= 0:
        return Complex(C2, 0, (), ())
    return _weight_zero_part(tensor_complex(injres_trunc(j), x))


def tfgt(x: Complex) -> Complex:
    """Twisted forgetful functor: twist to effectivity, apply rwz, untwist
    by the canonical invertible complex, and minimize."""
    if x.kind != FILT:
        raise ValueError("tfgt applies to filtered complexes")
    if x.is_zero():
        return Complex(C2, 0, (), ())
    n = max(0, -min_weight(x))
    core = rwz(twist_complex(x, n))
    return minimize(tensor_complex(core, invertpur_pow(n))).complex


def is_zero_DE(x: Complex) -> bool:
    """Zero test in the derived category: the graded complex is contractible."""
    return minimize(gr_complex(x)).complex.is_zero()


# ---------------------------------------------------------------------------
# Derived hom dimensions
# ---------------------------------------------------------------------------


def _express(basis: list[BitMatrix], target: BitMatrix):
    """Coefficients of target in a basis of matrices, or None."""
    if not basis:
        return 0 if target.is_zero() else None
    rc = basis[0].rows * basis[0].cols
    da = basis[0].cols
    rows = []
    for m in basis:
        flat = 0
        for i, r in enumerate(m.data):
            flat |= r << (i * da)
        rows.append(flat)
    tflat = 0
    for i, r in enumerate(target.data):
        tflat |= r << (i * da)
    return BitMatrix(len(rows), rc, tuple(rows)).transpose().solve(tflat)


def hom_DE(x: Complex, y: Complex) -> dict[int, int]:
    """Graded dimensions of the derived hom from x to y.

    The dimension in shift n is the homology in degree -n of the total hom
    complex from x into the truncated injective resolution tensored with y.
    """
    from .filtmod import hom_basis

    if x.kind != FILT or y.kind != FILT:
        raise ValueError("hom_DE applies to filtered complexes")
    if x.is_zero() or y.is_zero():
        return {}
    j = max_weight(y) - min_weight(x) + 1
    if j <= 0:
        return {}
    z = tensor_complex(injres_trunc(j), y)
    hom_bases = {}
    for i in x.degrees():
        for k in z.degrees():
            hom_bases[(i, k)] = hom_basis(x.term(i), z.term(k))
    lo = z.d_min - x.d_max
    hi = z.d_max - x.d_min
    dims = {}
    mats = {}
    for n in range(lo, hi + 1):
        pairs = [(i, i + n) for i in x.degrees() if z.d_min <= i + n <= z.d_max]
        dims[n] = sum(len(hom_bases[p]) for p in pairs)
    for n in range(lo + 1, hi + 1):
        src_pairs = [(i, i + n) for i in x.degrees() if z.d_min <= i + n <= z.d_max]
        tgt_pairs = [(i, i + n - 1) for i in x.degrees() if z.d_min <= i + n - 1 <= z.d_max]
        tgt_index = {}
        off = 0
        for p in tgt_pairs:
            tgt_index[p] = off
            off += len(hom_bases[p])
        rows_out = []
        for (i, k) in src_pairs:
            for g in hom_bases[(i, k)]:
                col = 0
                # component d_z . g lands in hom(x_i, z_{k-1})
                if (i, k - 1) in tgt_index:
                    coeff = _express([b.matrix for b in hom_bases[(i, k - 1)]],
                                     z.diff(k).mul(g.matrix))
                    if coeff is None:
                        raise MathEngineError("hom differential left the hom space")
                    col |= coeff << tgt_index[(i, k - 1)]
                # component g . d_x lands in hom(x_{i+1}, z_k)
                if (i + 1, k) in tgt_index:
                    coeff = _express([b.matrix for b in hom_bases[(i + 1, k)]],
                                     g.matrix.mul(x.diff(i + 1)))
                    if coeff is None:
                        raise MathEngineError("hom differential left the hom space")
                    col |= coeff << tgt_index[(i + 1, k)]
                rows_out.append(col)
        mats[n] = BitMatrix(len(rows_out), dims.get(n - 1, 0), tuple(rows_out)).transpose()
    out = {}
    for n in range(lo, hi + 1):
        d_out = mats.get(n, BitMatrix.zero(0, dims.get(n, 0)))
        d_in = mats.get(n + 1, BitMatrix.zero(dims.get(n, 0), 0))
        h = dims[n] - d_out.rank() - d_in.rank()
        if h:
            out[-n] = h
    return out
