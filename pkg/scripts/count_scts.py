"""Tabulate |SCT(Z_n)| and |SCT(D_2n)| with the dihedral classification breakdown."""
import argparse
import time
from collections import Counter
from dataclasses import dataclass

from sct.characters import character_table
from sct.dihedral import classify
from sct.groups import make_cyclic, make_dihedral
from sct.lattice import enumerate_scts


@dataclass
class CountConfig:
    max_n: int = 12
    workers: int = 1


def main(cfg: CountConfig):
    print(f"{'n':>3} {'|SCT(Z_n)|':>11} {'|SCT(D_2n)|':>12}  dihedral tags  seconds")
    for n in range(1, cfg.max_n + 1):
        start = time.perf_counter()
        cyc = len(enumerate_scts(character_table(make_cyclic(n)), workers=cfg.workers))
        dih = len(enumerate_scts(character_table(make_dihedral(n)), workers=cfg.workers))
        tags = ""
        if n >= 3:
            counts = Counter(str(t).split("(")[0] if "psi" in str(t) else "P_d" for _, t in
                             classify(n, extended=True))
            tags = " ".join(f"{k}={v}" for k, v in sorted(counts.items()))
        print(f"{n:>3} {cyc:>11} {dih:>12}  {tags:<13}  {time.perf_counter() - start:.2f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--workers", type=int, default=1)
    a = p.parse_args()
    main(CountConfig(a.max_n, a.workers))
