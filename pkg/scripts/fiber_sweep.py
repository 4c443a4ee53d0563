"""Sweep seeds of the random fiber-criterion experiment.

For each seed, random submodules of Z[C2]^r and Z[C3]^r are drawn. Global
projectivity (a Z-splitting of the free cover) is compared with splitting over
Q and every candidate F_p. Prints one row per seed and a total.
"""

import argparse
from dataclasses import dataclass, replace

from hopflat.flatcert import RandomInstanceConfig, fiber_criterion_crosscheck


@dataclass(frozen=True)
class SweepConfig:
    first_seed: int = 20240601
    seeds: int = 5
    instance: RandomInstanceConfig = RandomInstanceConfig()


def sweep(cfg: SweepConfig) -> bool:
    agree = total = 0
    print(f"{'seed':>10} {'agree':>9} {'proj':>5} {'not':>5}")
    for seed in range(cfg.first_seed, cfg.first_seed + cfg.seeds):
        cert = fiber_criterion_crosscheck(replace(cfg.instance, seed=seed))
        w = cert.witness
        n = int(cert.verdict.split("/")[0])
        agree, total = agree + n, total + w["count"]
        print(f"{seed:>10} {cert.verdict.split()[0]:>9} {w['projective']:>5} {w['not_projective']:>5}")
        if cert.counterexample:
            print("  disagreements:", cert.counterexample["disagreements"])
    print(f"total {agree}/{total}")
    return agree == total


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description="random fiber-criterion sweep")
    ap.add_argument("--seed", type=int, default=SweepConfig.first_seed)
    ap.add_argument("--seeds", type=int, default=SweepConfig.seeds)
    ap.add_argument("--count", type=int, default=RandomInstanceConfig.count)
    ap.add_argument("--max-copies", type=int, default=RandomInstanceConfig.max_copies)
    args = ap.parse_args()
    inst = RandomInstanceConfig(count=args.count, max_copies=args.max_copies)
    raise SystemExit(0 if sweep(SweepConfig(args.seed, args.seeds, inst)) else 1)
