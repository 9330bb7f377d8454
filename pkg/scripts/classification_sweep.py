"""Tabulate generic cover classes over x^n = y^m and flag the smooth ones.

    python3 scripts/classification_sweep.py --max 12
"""

import argparse
import math
from dataclasses import dataclass

from chisini_lab.covers import smoothness
from chisini_lab.graphs import cover_class_to_parameters, enumerate_generic_covers


@dataclass
class SweepConfig:
    max_exponent: int = 12
    coprime_only: bool = True


def sweep(cfg: SweepConfig):
    for n in range(1, cfg.max_exponent + 1):
        for m in range(1, cfg.max_exponent + 1):
            if cfg.coprime_only and math.gcd(n, m) != 1:
                continue
            for c in enumerate_generic_covers(n, m):
                s = smoothness(*cover_class_to_parameters(c))
                yield n, m, c, s["surface_smooth"], s["ramification_smooth"]


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--max", type=int, default=12)
    cfg = SweepConfig(max_exponent=parser.parse_args().max)
    print(f"{'n':>3} {'m':>3} {'d':>3} {'side':>7} {'a':>3} {'j':>3} surface ramification")
    for n, m, c, surf, ram in sweep(cfg):
        p = c.polygon
        print(f"{n:>3} {m:>3} {p.d:>3} {c.orientation:>7} {p.valence:>3} {p.increment:>3} {surf!s:>7} {ram!s:>12}")


if __name__ == "__main__":
    main()
