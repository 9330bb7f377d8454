"""Degrees, singularities and bounds for the first members of the counterexample family."""

import argparse

from chisini_lab.covers import counterexample_pair, pair_certificate
from chisini_lab.invariants import chisini_bound, hodge_bound


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--t-max", type=int, default=4)
    args = parser.parse_args()
    print(f"{'t':>2} {'curve':>6} {'points':>7} {'N1':>4} {'N2':>4} {'hodge':>8} {'bound':>8} certified")
    for t in range(1, args.t_max + 1):
        big, small = counterexample_pair(t)
        data = big.curve.branch_data()
        cert = pair_certificate(t)
        print(
            f"{t:>2} {data.degree:>6} {big.curve.point_count:>7} {big.degree:>4} {small.degree:>4} "
            f"{str(hodge_bound(data)):>8} {str(chisini_bound(data)):>8} {cert['passed']}"
        )


if __name__ == "__main__":
    main()
