"""Track fibre roots for a range of (h, k) and compare with the polygon graphs."""

import argparse
import math
import time

from chisini_lab.numeric import NumericFailure, TrackingConfig, numeric_vs_polygon


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-degree", type=int, default=8)
    parser.add_argument("--eps", type=float, default=0.1)
    args = parser.parse_args()
    config = TrackingConfig(eps=args.eps)
    for d in range(3, args.max_degree + 1):
        for h in range(1, d):
            k = d - h
            if h > k or math.gcd(h, k) != 1:
                continue
            start = time.perf_counter()
            try:
                cert = numeric_vs_polygon(h, k, config=config)
            except NumericFailure as exc:
                print(f"({h},{k}) numeric failure: {exc}")
                continue
            print(
                f"({h},{k}) increment {cert['polygon']['j']:>2} residual {cert['max_residual']:.1e} "
                f"steps {cert['steps']:>6} {'ok' if cert['passed'] else 'MISMATCH'} {time.perf_counter() - start:.2f}s"
            )


if __name__ == "__main__":
    main()
