"""Sweep random games and compare refinement against the brute-force fixpoint.

    python3 scripts/crosscheck.py --games 300 --max-states 5 --seed 1
"""
import argparse
import random
import time
from dataclasses import dataclass

from pasim.generate import random_game
from pasim.oracle import brute_force, check_stability
from pasim.refine import gcpp


@dataclass
class SweepConfig:
    games: int = 200
    max_states: int = 5
    max_actions: int = 2
    max_denominator: int = 4
    max_branch: int = 3
    seed: int = 0


def sweep(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    rows = []
    for k in range(cfg.games):
        g = random_game(rng.randint(1, cfg.max_states), rng.randint(1, cfg.max_actions),
                        rng.randint(1, cfg.max_actions), labels=rng.randint(1, 2),
                        denominator=rng.randint(1, cfg.max_denominator),
                        branch=rng.randint(1, cfg.max_branch), seed=cfg.seed * 100003 + k)
        for player in (1, 2):
            t0 = time.perf_counter()
            r = gcpp(g, player)
            t1 = time.perf_counter()
            ref = brute_force(g, player)
            t2 = time.perf_counter()
            rows.append(dict(game=k, player=player, states=g.n_states, blocks=len(r.pair.blocks),
                             pairs=len(r.relation), iterations=r.stats.outer_iterations,
                             lp_calls=r.stats.lp_calls, equal=r.relation == ref,
                             stable=check_stability(g, r.pair, player),
                             gcpp_s=t1 - t0, brute_s=t2 - t1))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, value in vars(SweepConfig()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=value)
    cfg = SweepConfig(**vars(ap.parse_args()))
    rows = sweep(cfg)
    bad = [r for r in rows if not (r["equal"] and r["stable"])]
    print(f"runs={len(rows)} mismatches={len(bad)}")
    print(f"max_iterations_minus_states={max(r['iterations'] - r['states'] for r in rows)}")
    print(f"lp_calls_total={sum(r['lp_calls'] for r in rows)}")
    print(f"gcpp_seconds={sum(r['gcpp_s'] for r in rows):.2f} "
          f"brute_seconds={sum(r['brute_s'] for r in rows):.2f}")
    for r in bad:
        print("mismatch", r)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
