"""Canonical set partitions of {0, ..., n-1} and restricted-growth enumeration."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence


@dataclass(frozen=True)
class SetPartition:
    """Blocks are sorted tuples, ordered by their minimal element."""

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        bs = [tuple(sorted(set(b))) for b in blocks]
        bs = [b for b in bs if b]
        seen: set[int] = set()
        for b in bs:
            if seen.intersection(b):
                raise ValueError("blocks are not disjoint")
            seen.update(b)
        if seen != set(range(len(seen))):
            raise ValueError("blocks do not cover 0..n-1")
        return cls(tuple(sorted(bs)))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "SetPartition":
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(tuple(sorted(tuple(g) for g in groups.values())))

    @classmethod
    def singletons(cls, n: int) -> "SetPartition":
        return cls(tuple((i,) for i in range(n)))

    @classmethod
    def whole(cls, n: int) -> "SetPartition":
        return cls((tuple(range(n)),) if n else ())

    @property
    def size(self) -> int:
        """Number of points partitioned."""
        return sum(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.blocks)

    def labels(self) -> list[int]:
        """Restricted-growth string: point -> index of its block."""
        out = [0] * self.size
        for bi, b in enumerate(self.blocks):
            for x in b:
                out[x] = bi
        return out

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def refines(self, other: "SetPartition") -> bool:
        """True when every block of self lies inside a block of other."""
        lab = other.labels()
        return all(len({lab[x] for x in b}) == 1 for b in self.blocks)

    def join(self, other: "SetPartition") -> "SetPartition":
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b in (*self.blocks, *other.blocks):
            r = find(b[0])
            for x in b[1:]:
                parent[find(x)] = r
        return SetPartition.from_labels([find(x) for x in range(self.size)])

    def meet(self, other: "SetPartition") -> "SetPartition":
        a, b = self.labels(), other.labels()
        return SetPartition.from_labels(list(zip(a, b)))

    def map(self, f: Callable[[int], int] | Sequence[int]) -> "SetPartition":
        g = f.__getitem__ if not callable(f) else f
        return SetPartition.from_blocks([g(x) for x in b] for b in self.blocks)

    def __str__(self):
        return " | ".join(" ".join(map(str, b)) for b in self.blocks)


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All RGS a_0..a_{n-1} with a_0 = 0 and a_i <= 1 + max(a_0..a_{i-1}).

    Each set partition of n points appears exactly once, in lexicographic
    order of its labels.
    """
    if n == 0:
        yield ()
        return
    a = [0] * n
    b = [1] * n  # b[i] = 1 + max(a[:i])
    while True:
        yield tuple(a)
        # find rightmost position that can be incremented
        j = n - 1
        while j > 0 and a[j] == b[j]:
            j -= 1
        if j == 0:
            return
        a[j] += 1
        nb = b[j] + (a[j] == b[j])
        for i in range(j + 1, n):
            a[i] = 0
            b[i] = nb


def bell_number(n: int) -> int:
    row = [1]
    for _ in range(n):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
    return row[0]
