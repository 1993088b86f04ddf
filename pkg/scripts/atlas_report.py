#!/usr/bin/env python3
"""Dump every finite spectrum atlas with its closed-subset lattice."""

from ttfilt.spectrum import atlas, compare, support_text, PRIMES


def main():
    for name in ("KbA", "DAM2", "DTM2", "DATM2"):
        atl = atlas(name)
        print(f"atlas {name}: points {', '.join(atl.points)}")
        for p in atl.points:
            print(f"  closure({p}) = {support_text(atl.closure_of(p), atl.points)}")
        subsets = atl.closed_subsets()
        print(f"  {len(subsets)} closed subsets:")
        for s in subsets:
            print(f"    {support_text(s, atl.points)}")
        print()
    z = atlas("DATMZ")
    print("atlas DATMZ: mod-2 points", ", ".join(z.mod2_points))
    print("  plus e(l) < m(l) for every prime number l, and the generic point P0")
    print(f"  closure(P0) = {z.closure_of('P0').text()}")
    print(f"  generic point flags: {z.generic_point_flags}")
    print()
    print("projection maps")
    for p in PRIMES:
        print(f"  {p:3} -> {compare('DATM2->DTM2', p):12} (Tate side)   "
              f"{compare('DATM2->DAM2', p)} (pure side)")


if __name__ == "__main__":
    main()
