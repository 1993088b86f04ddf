#!/usr/bin/env python3
"""Fuzz the engine invariants on random inputs; exits nonzero on any failure.

Usage: python scripts/random_stress.py [rounds] [seed]
"""

import random
import sys

from ttfilt.chains import (
    C2,
    FILT,
    ChainMap,
    cone,
    direct_sum_complex,
    is_nullhomotopic,
    minimize,
    shift,
    tensor_complex,
)
from ttfilt.filtmod import decompose, dual, realize_sum
from ttfilt.functors import fgt_complex, homology, is_zero_DE, pwz_complex, tfgt, gr_complex
from ttfilt.samples import random_complex, random_formal_sum, scrambled_module
from ttfilt.spectrum import is_specialization_closed, supp


def main(rounds: int = 25, seed: int = 0) -> int:
    rng = random.Random(seed)
    failures = 0
    for i in range(rounds):
        fs = random_formal_sum(rng, max_summands=4)
        a = scrambled_module(rng, fs)
        if decompose(a).sum != fs:
            print(f"[{i}] decomposition mismatch on {fs.text()}")
            failures += 1
        if decompose(dual(dual(a))).sum != fs:
            print(f"[{i}] double dual mismatch on {fs.text()}")
            failures += 1
        x = random_complex(rng, FILT, rng.randint(2, 3))
        y = random_complex(rng, FILT, 2)
        sx, sy = supp(x), supp(y)
        if not (is_specialization_closed(sx) and is_specialization_closed(sy)):
            print(f"[{i}] support not specialization-closed")
            failures += 1
        if supp(direct_sum_complex(x, y)) != sx | sy:
            print(f"[{i}] union law failed")
            failures += 1
        if supp(tensor_complex(x, y)) != sx & sy:
            print(f"[{i}] intersection law failed")
            failures += 1
        if is_zero_DE(x) != (sx == frozenset()):
            print(f"[{i}] conservativity echo failed")
            failures += 1
        if homology(tfgt(x)) != homology(fgt_complex(x)):
            print(f"[{i}] twisted forgetful homology mismatch")
            failures += 1
        mf = minimize(x)
        if is_nullhomotopic(mf.incl.compose(mf.proj).add(ChainMap.identity(x))) is None:
            print(f"[{i}] minimization certificate failed")
            failures += 1
        z = random_complex(rng, C2, 3)
        if gr_complex(pwz_complex(z)) != z:
            print(f"[{i}] graded section law failed")
            failures += 1
    print(f"{rounds} rounds, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    rounds = int(sys.argv[1]) if len(sys.argv) > 1 else 25
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    sys.exit(main(rounds, seed))
