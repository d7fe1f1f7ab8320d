"""How complement-rotation acts on each order, class by class.

For every A(n, k) within the size limit, the map A -> complement of A turned
a half-turn is compared against both relations on A(n, n-k).
"""

import argparse
from dataclasses import dataclass

from bruhat01.enumeration import ClassSpec, count
from bruhat01.matrix import complement_rotate
from bruhat01.orders import ClassPoset


@dataclass
class DualityConfig:
    max_n: int = 5
    max_size: int = 2500


def classify(src: ClassPoset, dst: ClassPoset, kind: str) -> str:
    image = [dst.index[complement_rotate(x)] for x in src.members]
    forward = {(image[a], image[c]) for a, c in src.relation(kind)}
    target = dst.relation(kind)
    if forward == target:
        return "isomorphism"
    if {(c, a) for a, c in forward} == target:
        return "anti-isomorphism"
    return "neither"


def main(cfg: DualityConfig):
    for n in range(1, cfg.max_n + 1):
        for k in range(n + 1):
            spec = ClassSpec.square(n, k)
            if count(spec) > cfg.max_size:
                continue
            src = ClassPoset.from_spec(spec)
            dst = ClassPoset.from_spec(ClassSpec.square(n, n - k))
            verdicts = {kind: classify(src, dst, kind) for kind in ("bruhat", "secondary")}
            print(f"A({n},{k}) -> A({n},{n - k}) [{len(src)} members]: {verdicts}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-size", type=int, default=2500)
    a = p.parse_args()
    main(DualityConfig(a.max_n, a.max_size))
