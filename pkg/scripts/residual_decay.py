"""Print the Cesaro residual ||v_k P - v_k|| next to its ceiling 2/k.

    python scripts/residual_decay.py --kind random_sparse_irreducible --n 6 --seed 3
"""

import argparse
from dataclasses import dataclass

import numpy as np

from stationary.cesaro import iterates, residual_bound
from stationary.core import residual_norm
from stationary.testkit import KINDS, FixtureSpec, generate


@dataclass
class Config:
    kind: str = "random_sparse_irreducible"
    n: int = 6
    seed: int = 0
    kmax: int = 10_000


def main(cfg: Config) -> None:
    P = generate(FixtureSpec(cfg.kind, cfg.n, cfg.seed))
    checkpoints = set(np.unique(np.geomspace(1, cfg.kmax, 25).astype(int)).tolist())
    print(f"{'k':>8} {'residual':>12} {'2/k':>12} {'k*residual':>12}")
    for state in iterates(P):
        if state.k > cfg.kmax:
            break
        if state.k in checkpoints:
            r = residual_norm(state.average, P)
            print(f"{state.k:>8} {r:>12.4e} {residual_bound(state.k):>12.4e} {state.k * r:>12.6f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--kind", choices=KINDS, default=Config.kind)
    parser.add_argument("--n", type=int, default=Config.n)
    parser.add_argument("--seed", type=int, default=Config.seed)
    parser.add_argument("--kmax", type=int, default=Config.kmax)
    main(Config(**vars(parser.parse_args())))
