"""Table of |A(n, k)| for n <= max_n."""

import argparse
from dataclasses import dataclass

from bruhat01.enumeration import ClassSpec, count


@dataclass
class SizesConfig:
    max_n: int = 8


def main(cfg: SizesConfig):
    for n in range(1, cfg.max_n + 1):
        sizes = [count(ClassSpec.square(n, k)) for k in range(n + 1)]
        print(f"n={n:>2}: " + " ".join(str(s) for s in sizes))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=8)
    main(SizesConfig(p.parse_args().max_n))
