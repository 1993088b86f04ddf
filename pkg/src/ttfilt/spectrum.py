"""Support computation and the queryable spectrum atlases.

The six-point spectrum carries primes named L, Ls, M, Ms, N, Ns.  A prime
belongs to the support of a complex iff the corresponding residue functor
does not kill it; membership and classification always go through
supports, which the classification theorem makes a complete invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .chains import (
    C2,
    FILT,
    Complex,
    cone_beta,
    cone_beta_rho,
    cone_rho,
    eta_tilde,
    eta_upsilon,
    fund0,
    koszul_T,
    single,
    upsilon,
)
from .filtmod import MathEngineError, e_label, realize
from .functors import (
    fgt_complex,
    gr_complex,
    is_exact_F2,
    pwz_complex,
    res_complex,
    sta_complex,
    tate_dim,
    tfgt,
)
from .chains import cone

PRIMES = ("L", "Ls", "M", "Ms", "N", "Ns")

# x < y means y lies in the closure of x (covering relations)
_COVERS = (("M", "L"), ("M", "Ms"), ("M", "N"), ("L", "Ls"), ("Ms", "Ls"), ("Ms", "Ns"), ("N", "Ns"))


def _transitive_closure(points, covers):
    clo = {p: {p} for p in points}
    changed = True
    while changed:
        changed = False
        for a, b in covers:
            for extra in clo[b]:
                if extra not in clo[a]:
                    clo[a].add(extra)
                    changed = True
    return {p: frozenset(s) for p, s in clo.items()}


_CLOSURE = _transitive_closure(PRIMES, _COVERS)


# ---------------------------------------------------------------------------
# Supports
# ---------------------------------------------------------------------------


def supp_KbA(y: Complex) -> frozenset:
    """Support of a plain complex in the three-point spectrum {cL, cM, cN}."""
    if y.kind != C2:
        raise ValueError("supp_KbA applies to plain complexes")
    out = set()
    if not is_exact_F2(res_complex(y)):
        out.add("cN")
    if tate_dim(y) != 0:
        out.add("cM")
    if not is_exact_F2(sta_complex(y)):
        out.add("cL")
    return frozenset(out)


def supp_detail(x: Complex) -> dict[str, bool]:
    """All six residue tests on a filtered complex, keyed by prime."""
    if x.kind != FILT:
        raise ValueError("supp applies to filtered complexes")
    g = gr_complex(x)
    f = fgt_complex(x)
    t = tfgt(x)
    return {
        "Ns": not is_exact_F2(res_complex(g)),
        "Ms": tate_dim(g) != 0,
        "Ls": not is_exact_F2(sta_complex(g)),
        "N": not is_exact_F2(res_complex(f)),
        "M": tate_dim(f) != 0,
        "L": not is_exact_F2(sta_complex(t)),
    }


def supp(x: Complex) -> frozenset:
    result = frozenset(p for p, hit in supp_detail(x).items() if hit)
    if not is_specialization_closed(result):
        raise MathEngineError("computed support is not specialization-closed")
    return result


def is_specialization_closed(points: Iterable[str], closure=None) -> bool:
    clo = closure or _CLOSURE
    pts = set(points)
    return all(clo[p] <= pts for p in pts)


def support_text(points: Iterable[str], order=PRIMES) -> str:
    inside = [p for p in order if p in set(points)]
    return "{" + ", ".join(inside) + "}"


# ---------------------------------------------------------------------------
# Classification into the fourteen closed subsets
# ---------------------------------------------------------------------------

# Canonical generator expressions for the fourteen tensor ideals, in the
# grammar of the shell module.
CLASS_GENERATORS = {
    frozenset(): "0",
    frozenset({"Ls"}): "fund0 * E(1,0)",
    frozenset({"Ns"}): "conebeta * E(0,0)",
    frozenset({"Ls", "Ns"}): "fund0 * E(1,0) + conebeta * E(0,0)",
    frozenset({"L", "Ls"}): "fund0",
    frozenset({"N", "Ns"}): "E(0,0)",
    frozenset({"Ls", "Ms", "Ns"}): "T",
    frozenset({"L", "Ls", "Ns"}): "fund0 + conebeta * E(0,0)",
    frozenset({"Ls", "N", "Ns"}): "fund0 * E(1,0) + E(0,0)",
    frozenset({"L", "Ls", "Ms", "Ns"}): "conebeta",
    frozenset({"L", "Ls", "N", "Ns"}): "fund0 + E(0,0)",
    frozenset({"Ls", "Ms", "N", "Ns"}): "T + E(0,0)",
    frozenset({"L", "Ls", "Ms", "N", "Ns"}): "conebeta + E(0,0)",
    frozenset(PRIMES): "1(0)",
}


@dataclass(frozen=True)
class Classification:
    support: frozenset
    name: str
    generator: str


def classify(x: Complex) -> Classification:
    """Match the support against the fourteen closed subsets."""
    s = supp(x)
    if s not in CLASS_GENERATORS:
        raise MathEngineError("support is not one of the fourteen closed subsets")
    return Classification(s, support_text(s), CLASS_GENERATORS[s])


def ideal_contains(generators: list[Complex], x: Complex) -> bool:
    """Membership of x in the thick tensor ideal generated by the given objects."""
    union = frozenset().union(*(supp(g) for g in generators)) if generators else frozenset()
    return supp(x) <= union


# ---------------------------------------------------------------------------
# Atlases
# ---------------------------------------------------------------------------


@dataclass
class SpectrumPoset:
    """Finite spectrum: points with specialization closures."""

    name: str
    points: tuple[str, ...]
    closure: dict[str, frozenset]

    def closure_of(self, p: str) -> frozenset:
        return self.closure[p]

    def is_closed(self, points: Iterable[str]) -> bool:
        return is_specialization_closed(points, self.closure)

    def closed_subsets(self) -> list[frozenset]:
        out = []
        pts = list(self.points)
        for mask in range(1 << len(pts)):
            sub = frozenset(p for i, p in enumerate(pts) if (mask >> i) & 1)
            if self.is_closed(sub):
                out.append(sub)
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def ideal_support(self, p: str) -> frozenset:
        """Support of the prime p as an ideal: the primes not containing it."""
        return frozenset(q for q in self.points if p not in self.closure[q])


def _poset(name, points, covers) -> SpectrumPoset:
    return SpectrumPoset(name, tuple(points), _transitive_closure(points, covers))


ATLAS_DATM2 = _poset("DATM2", PRIMES, _COVERS)
ATLAS_KBA = _poset("KbA", ("cL", "cM", "cN"), (("cM", "cL"), ("cM", "cN")))
ATLAS_DAM2 = _poset("DAM2", ("cL", "cM", "cN"), (("cM", "cL"), ("cM", "cN")))
ATLAS_DTM2 = _poset(
    "DTM2",
    ("zero", "conerho", "conebeta", "conebetarho"),
    (("conebetarho", "conerho"), ("conebetarho", "conebeta"),
     ("conerho", "zero"), ("conebeta", "zero")),
)


# the integral atlas: six mod-2 points, one pair of points for every prime
# number, and a generic rational point below all etale points


def _is_prime_number(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class SymbolicSet:
    """Subset of the integral spectrum: finitely many named points plus
    optional full families e(l) / m(l) over all prime numbers."""

    points: frozenset = frozenset()
    all_e: bool = False
    all_m: bool = False

    def contains(self, p: str) -> bool:
        if p in self.points:
            return True
        if self.all_e and p.startswith("e("):
            return True
        if self.all_m and p.startswith("m("):
            return True
        return False

    def is_finite(self) -> bool:
        return not (self.all_e or self.all_m)

    def text(self) -> str:
        parts = sorted(self.points)
        if self.all_e:
            parts.append("e(l) for all l")
        if self.all_m:
            parts.append("m(l) for all l")
        return "{" + ", ".join(parts) + "}"


class IntegralAtlas:
    """The integral spectrum with its symbolic infinite point families.

    Finite mod-2 points are L, Ls, M, Ms plus e(2) = N and m(2) = Ns; each
    prime number l contributes e(l) < m(l), and the flagged generic point
    P0 sits below every e(l).
    """

    name = "DATMZ"
    mod2_points = ("L", "Ls", "M", "Ms", "e(2)", "m(2)")
    aliases = {"N": "e(2)", "Ns": "m(2)"}
    # the generic point is unconditional over the real algebraic numbers and
    # conjectural over larger real closed fields
    generic_point_flags = {"conjectural_for_general_base": True, "unconditional_default": True}

    def normalize(self, p: str) -> str:
        p = self.aliases.get(p, p)
        if p in ("L", "Ls", "M", "Ms", "P0"):
            return p
        if p.startswith(("e(", "m(")) and p.endswith(")"):
            try:
                l = int(p[2:-1])
            except ValueError:
                raise ValueError(f"bad point name: {p}")
            if not _is_prime_number(l):
                raise ValueError(f"index must be a prime number: {p}")
            return p
        raise ValueError(f"unknown point: {p}")

    def closure_of(self, p: str) -> SymbolicSet:
        p = self.normalize(p)
        if p == "P0":
            return SymbolicSet(frozenset({"P0"}), all_e=True, all_m=True)
        finite = {
            "M": frozenset({"M", "L", "Ls", "Ms", "e(2)", "m(2)"}),
            "L": frozenset({"L", "Ls"}),
            "Ms": frozenset({"Ms", "Ls", "m(2)"}),
            "Ls": frozenset({"Ls"}),
        }
        if p in finite:
            return SymbolicSet(finite[p])
        l = p[2:-1]
        if p.startswith("e("):
            return SymbolicSet(frozenset({f"e({l})", f"m({l})"}))
        return SymbolicSet(frozenset({p}))

    def is_closed(self, s: SymbolicSet) -> bool:
        """Closed sets are the finite specialization-closed subsets and the
        sets obtained from those by adding the closure of the generic point."""
        s = SymbolicSet(frozenset(self.normalize(p) for p in s.points), s.all_e, s.all_m)
        # specialization-closedness of the finite part and the families
        for p in s.points:
            clo = self.closure_of(p)
            if clo.all_e and not s.all_e:
                return False
            if clo.all_m and not s.all_m:
                return False
            for q in clo.points:
                if not s.contains(q):
                    return False
        if s.all_e and not s.all_m:
            return False
        # infinite closed sets must contain the whole closure of the generic point
        return s.is_finite() or "P0" in s.points


ATLAS_DATMZ = IntegralAtlas()

_ATLASES = {
    "KbA": ATLAS_KBA,
    "DATM2": ATLAS_DATM2,
    "DTM2": ATLAS_DTM2,
    "DAM2": ATLAS_DAM2,
    "DATMZ": ATLAS_DATMZ,
}


def atlas(name: str):
    if name not in _ATLASES:
        raise ValueError(f"unknown atlas: {name}")
    return _ATLASES[name]


# point-by-point comparison maps induced by the subcategory inclusions
COMPARE_MAPS = {
    "DATM2->DTM2": {
        "Ls": "zero", "Ms": "zero", "Ns": "zero",
        "L": "conerho", "N": "conebeta", "M": "conebetarho",
    },
    "DATM2->DAM2": {
        "L": "cL", "Ls": "cL", "M": "cM", "Ms": "cM", "N": "cN", "Ns": "cN",
    },
}


def compare(map_name: str, point: str) -> str:
    if map_name not in COMPARE_MAPS:
        raise ValueError(f"unknown comparison map: {map_name}")
    table = COMPARE_MAPS[map_name]
    if point not in table:
        raise ValueError(f"unknown point for {map_name}: {point}")
    return table[point]


# ---------------------------------------------------------------------------
# Prime generator verification
# ---------------------------------------------------------------------------


def pwz_map(f):
    """Lift a plain chain map to pure weight zero."""
    from .chains import ChainMap

    return ChainMap.of(pwz_complex(f.source), pwz_complex(f.target), dict(f.comps), check=False)


def koszul_cones() -> dict[str, Complex]:
    """The six one-equation cuts: each prime is generated by the cone of a
    single map from the unit into an invertible object."""
    return {
        "Ls": cone(pwz_map(upsilon())),
        "Ns": cone(pwz_map(eta_tilde())),
        "L": cone_rho(),
        "Ms": cone(pwz_map(eta_upsilon())),
        "N": cone_beta(),
        "M": cone_beta_rho(),
    }


@dataclass(frozen=True)
class GeneratorCheck:
    prime: str
    description: str
    expected: frozenset
    computed: frozenset

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def verify_prime_generators() -> list[GeneratorCheck]:
    """Check that every listed generating set has union of supports equal to
    the support of its prime read off the poset."""
    E0 = single(FILT, realize(e_label(0, 0)))
    E1 = single(FILT, realize(e_label(1, 0)))
    E2 = single(FILT, realize(e_label(2, 0)))
    T = koszul_T()
    F0 = fund0()
    CB = cone_beta()
    listed: list[tuple[str, str, list[Complex]]] = [
        ("M", "T, E(0,0), fund0", [T, E0, F0]),
        ("L", "T, E(0,0)", [T, E0]),
        ("N", "T, fund0", [T, F0]),
        ("Ms", "E(0,0), fund0", [E0, F0]),
        ("Ls", "E(0,0)", [E0]),
        ("Ns", "fund0", [F0]),
        ("L", "E(1,0)", [E1]),
        ("N", "conebeta", [CB]),
        ("M", "E(2,0)", [E2]),
    ]
    out = []
    for prime, desc, gens in listed:
        expected = ATLAS_DATM2.ideal_support(prime)
        computed = frozenset().union(*(supp(g) for g in gens))
        out.append(GeneratorCheck(prime, desc, expected, computed))
    for prime, kos in koszul_cones().items():
        expected = ATLAS_DATM2.ideal_support(prime)
        out.append(GeneratorCheck(prime, f"koszul cut for {prime}", expected, supp(kos)))
    return out
