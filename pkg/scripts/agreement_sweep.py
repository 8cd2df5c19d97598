"""Compare the elimination and Cesaro solvers over fixture kinds, then show
how the Cesaro error grows as a near-reducible chain decouples.

    python scripts/agreement_sweep.py --per-kind 50 --eps 1e-10
"""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from stationary.cesaro import cesaro_solve
from stationary.direct import solve_stationary_direct
from stationary.testkit import IRREDUCIBLE_KINDS, FixtureSpec, generate


@dataclass
class Config:
    per_kind: int = 50
    n_max: int = 12
    eps: float = 1e-10
    couplings: tuple = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)


def distance(P, eps):
    direct, _ = solve_stationary_direct(P)
    cesaro, rep = cesaro_solve(P, eps=eps)
    return float(np.max(np.abs(direct.entries - cesaro.entries))), rep.iterations


def main(cfg: Config) -> None:
    print(f"{'kind':<28} {'max dist':>10} {'median k':>12} {'seconds':>8}")
    for kind in IRREDUCIBLE_KINDS:
        t0 = time.perf_counter()
        rows = [distance(generate(FixtureSpec(kind, 2 + s % (cfg.n_max - 1), s)), cfg.eps)
                for s in range(cfg.per_kind)]
        dists, ks = zip(*rows)
        print(f"{kind:<28} {max(dists):>10.2e} {int(np.median(ks)):>12d} {time.perf_counter() - t0:>8.2f}")

    print(f"\n{'coupling':>10} {'max dist':>10} {'eps/(2c)':>10}")
    for c in cfg.couplings:
        worst = max(distance(generate(FixtureSpec("near_reducible", 2 + s % (cfg.n_max - 1), s, c)), cfg.eps)[0]
                    for s in range(cfg.per_kind))
        print(f"{c:>10.0e} {worst:>10.2e} {cfg.eps / (2 * c):>10.2e}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--per-kind", type=int, default=Config.per_kind)
    parser.add_argument("--n-max", type=int, default=Config.n_max)
    parser.add_argument("--eps", type=float, default=Config.eps)
    args = parser.parse_args()
    main(Config(per_kind=args.per_kind, n_max=args.n_max, eps=args.eps))
