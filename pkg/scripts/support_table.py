#!/usr/bin/env python3
"""Print the support of every named object and the fourteen-class table."""

from ttfilt.shell import evaluate, parse
from ttfilt.spectrum import CLASS_GENERATORS, supp, support_text

NAMED_OBJECTS = [
    "1(0)", "E(0,0)", "E(1,0)", "E(2,0)", "E(3,0)",
    "cone(beta)", "conerho", "fund0", "T", "coneomega",
    "cone(beta) * E(0,0)", "fund0 * E(1,0)",
]


def main():
    print("supports of the named objects")
    print("-" * 46)
    for text in NAMED_OBJECTS:
        s = supp(evaluate(parse(text)))
        print(f"{text:24} {support_text(s)}")
    print()
    print("the fourteen tensor-ideal classes and generators")
    print("-" * 46)
    for support, gen in sorted(CLASS_GENERATORS.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        print(f"{support_text(support):28} <- {gen}")


if __name__ == "__main__":
    main()
