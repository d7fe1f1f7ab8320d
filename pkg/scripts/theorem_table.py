"""Print the coincidence table for A(n, k), n <= max_n, and a summary by method."""

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass

from bruhat01.coincidence import verify_theorem
from bruhat01.orders import PAIRWISE_CAP


@dataclass
class TableConfig:
    max_n: int = 10
    cap: int = PAIRWISE_CAP
    threads: int = 1
    json_out: str | None = None


def main(cfg: TableConfig):
    t = time.perf_counter()
    rows = verify_theorem(cfg.max_n, cap=cfg.cap, threads=cfg.threads)
    elapsed = time.perf_counter() - t
    for r in rows:
        flag = "" if r.agrees else "   <-- MISMATCH"
        print(f"A({r.n},{r.k}): expected {r.expected:<8} observed {r.observed:<11} [{r.method}]{flag}")
    print()
    print("by method:", dict(Counter(r.method for r in rows)))
    print(f"all checked cells agree: {all(r.agrees for r in rows)}  ({elapsed:.1f}s)")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": [r.to_json() for r in rows]}, fh, indent=2)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--cap", type=int, default=PAIRWISE_CAP)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json-out")
    a = p.parse_args()
    main(TableConfig(a.max_n, a.cap, a.threads, a.json_out))
