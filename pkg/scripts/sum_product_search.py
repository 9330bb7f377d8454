"""Search couples (h, k), (h', k') with h + k = h'k' and hk = h' + k'."""

import argparse

from chisini_lab.covers import unique_sum_product_pair


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--bound", type=int, default=1000)
    result = unique_sum_product_pair(parser.parse_args().bound)
    for a, b in result["solutions"]:
        print(tuple(a), "<->", tuple(b))


if __name__ == "__main__":
    main()
