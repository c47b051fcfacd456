"""Search small cyclic and dihedral groups for pairs S, T whose meet agrees with the
mutual refinement of S and T on exactly one side (classes or characters)."""
import argparse
from dataclasses import dataclass

from sct.characters import character_table
from sct.groups import group_from_descriptor
from sct.lattice import enumerate_scts, max_classes, meet, meet_is_partial_refinement


@dataclass
class SearchConfig:
    max_order: int = 12
    show: int = 1


def groups(max_order):
    yield from (f"cyclic:{n}" for n in range(1, max_order + 1))
    yield from (f"dihedral:{n}" for n in range(1, max_order // 2 + 1))


def main(cfg: SearchConfig):
    for spec in groups(cfg.max_order):
        table = character_table(group_from_descriptor(spec))
        if len(table.classes) > max_classes():
            print(f"{table.group.name}: skipped")
            continue
        L = enumerate_scts(table)
        hits = [(S, T) for i, S in enumerate(L) for T in L.theories[i + 1:]
                if meet_is_partial_refinement(S, T, L)]
        print(f"{table.group.name}: {len(hits)} witness pairs among {len(L)} theories")
        for S, T in hits[:cfg.show]:
            W = meet(S, T, L)
            side = "characters" if W.char_partition == S.char_partition.meet(T.char_partition) else "classes"
            print(f"    S = {S.compact()}\n    T = {T.compact()}\n    meet = {W.compact()} (matches on {side})")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--show", type=int, default=1)
    a = p.parse_args()
    main(SearchConfig(a.max_order, a.show))
