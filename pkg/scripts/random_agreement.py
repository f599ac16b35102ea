"""Random cross-checks: for each generated minimal square-free ideal,
the dual-hypergraph lattice must equal the lcm-lattice, and the
reduction engine's pd must match the homology oracle."""

from __future__ import annotations

import argparse
import random

from hyperpd.betti import betti_table
from hyperpd.hypergraphs import dual_hypergraph
from hyperpd.ideals import parse_ideal
from hyperpd.lattices import lattice_from_hypergraph, lcm_lattice
from hyperpd.pd import pd

ALPHABET = "abcdefghij"


def random_ideal_text(rng, max_vars, max_gens):
    nvars = rng.randint(2, max_vars)
    supports = {
        frozenset(rng.sample(range(nvars), rng.randint(1, nvars)))
        for _ in range(rng.randint(1, max_gens))
    }
    minimal = [s for s in supports if not any(o < s for o in supports)]
    return ",".join("".join(ALPHABET[i] for i in sorted(s)) for s in minimal)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--max-vars", type=int, default=6)
    parser.add_argument("--max-gens", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    lattice_fails = []
    pd_fails = []
    for _ in range(args.count):
        text = random_ideal_text(rng, args.max_vars, args.max_gens)
        I = parse_ideal(text)
        H = dual_hypergraph(I)
        if lattice_from_hypergraph(H) != lcm_lattice(I):
            lattice_fails.append(text)
        engine = pd(H).pd
        oracle = betti_table(I).pd
        if engine != oracle:
            pd_fails.append((text, engine, oracle))

    print(f"{args.count} ideals (seed {args.seed}, "
          f"<= {args.max_gens} generators, <= {args.max_vars} variables)")
    print(f"lattice mismatches: {len(lattice_fails)}")
    for text in lattice_fails[:10]:
        print(f"  {text}")
    print(f"pd mismatches: {len(pd_fails)}")
    for text, engine, oracle in pd_fails[:10]:
        print(f"  {text}: engine {engine}, oracle {oracle}")
    return 1 if lattice_fails or pd_fails else 0


if __name__ == "__main__":
    raise SystemExit(main())
