"""Supercharacter theories: validity of superclass partitions and the Sct type."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .characters import CharacterTable, character_table
from .cyclotomic import Cyclo, cyclo_sum
from .groups import FiniteGroup, group_from_descriptor
from .partitions import SetPartition


class InvalidTheoryError(ValueError):
    pass


# -- validity: the span of superclass sums is a subalgebra ---------------------------

def element_convolution(G: FiniteGroup, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Coefficients of (sum a_g g)(sum b_h h) in the group algebra."""
    out = [0] * G.order
    for g, x in enumerate(a):
        if x:
            row = G.mul[g]
            for h, y in enumerate(b):
                if y:
                    out[row[h]] += x * y
    return out


@lru_cache(maxsize=None)
def class_algebra_constants(table: CharacterTable) -> np.ndarray:
    """C[i, j, k] = coefficient of any g in class k within K_i * K_j (class sums).

    Each product is computed by convolving the class sums over the group; the
    result is checked to be constant on conjugacy classes.
    """
    G = table.group
    mul = np.asarray(G.mul, dtype=np.int64)
    labels = np.asarray(table.class_of)
    c = len(table.classes)
    C = np.zeros((c, c, c), dtype=np.int64)
    for i, Ki in enumerate(table.classes):
        for j, Kj in enumerate(table.classes):
            prods = mul[np.ix_(Ki, Kj)].ravel()
            coeff = np.bincount(prods, minlength=G.order)
            reps = coeff[list(table.representatives)]
            if not np.array_equal(coeff, reps[labels]):
                raise AssertionError("class sum product is not central")
            C[i, j] = reps
    C.setflags(write=False)
    return C


class SubalgebraChecker:
    """Decides the subalgebra criterion for many class partitions of one group."""

    def __init__(self, table: CharacterTable):
        self.table = table
        self.C = class_algebra_constants(table)
        self.nclasses = len(table.classes)
        self.inverse_class = table.inverse_class

    def check_labels(self, labels: Sequence[int]) -> bool:
        """labels[k] = block index of class k (restricted-growth form)."""
        nb = max(labels) + 1
        E = np.zeros((self.nclasses, nb), dtype=np.int64)
        E[np.arange(self.nclasses), labels] = 1
        # T[a, k, b] = coefficient at class k of (block a sum) * (block b sum)
        T = np.tensordot(np.tensordot(E, self.C, axes=([0], [0])), E, axes=([1], [0]))
        first = np.zeros(nb, dtype=np.int64)
        seen = [False] * nb
        for k, lab in enumerate(labels):
            if not seen[lab]:
                seen[lab] = True
                first[lab] = k
        return np.array_equal(T, T[:, first[np.asarray(labels)], :])

    def inverse_closed(self, labels: Sequence[int]) -> bool:
        """Necessary condition: inversion permutes the blocks."""
        image: dict[int, int] = {}
        inv = self.inverse_class
        for k, lab in enumerate(labels):
            target = labels[inv[k]]
            if image.setdefault(lab, target) != target:
                return False
        return len(set(image.values())) == len(image)


@lru_cache(maxsize=None)
def _checker(table: CharacterTable) -> SubalgebraChecker:
    return SubalgebraChecker(table)


def _check_identity_block(P: SetPartition):
    if (0,) not in P.blocks:
        raise InvalidTheoryError("the identity class must be a singleton block")


def is_valid_superclass_partition(table: CharacterTable, P: SetPartition) -> bool:
    """True iff the superclass sums of P span a subalgebra of Z(CG).

    P is a partition of the conjugacy-class indices of `table`.
    """
    _check_identity_block(P)
    if P.size != len(table.classes):
        raise ValueError("partition size does not match the number of classes")
    return _checker(table).check_labels(P.labels())


def derive_char_partition(table: CharacterTable, P: SetPartition) -> SetPartition:
    """Group characters whose central characters agree on every block of P."""
    sizes = table.class_sizes
    degs = table.degrees
    sums = [[cyclo_sum(sizes[k] * row[k] for k in block) for block in P] for row in table.rows]
    reps: list[int] = []
    blocks: list[list[int]] = []
    for i in range(len(table.rows)):
        for bi, r in enumerate(reps):
            if all(degs[r] * x == degs[i] * y for x, y in zip(sums[i], sums[r])):
                blocks[bi].append(i)
                break
        else:
            reps.append(i)
            blocks.append([i])
    if len(blocks) != len(P):
        raise InvalidTheoryError(
            f"derived {len(blocks)} character blocks for {len(P)} superclasses")
    return SetPartition.from_blocks(blocks)


def supercharacter_values(table: CharacterTable, X: Sequence[int]) -> tuple[Cyclo, ...]:
    """sigma_X = sum of chi(1) chi over chi in X, per conjugacy class."""
    degs = table.degrees
    return tuple(cyclo_sum(degs[i] * table.rows[i][k] for i in X) for k in range(len(table.classes)))


def sigma_block_constant(table: CharacterTable, classes: SetPartition, chars: SetPartition) -> bool:
    for X in chars:
        vals = supercharacter_values(table, X)
        if any(vals[k] != vals[block[0]] for block in classes for k in block):
            return False
    return True


# -- the Sct type --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Sct:
    table: CharacterTable
    class_partition: SetPartition
    char_partition: SetPartition

    @property
    def group(self) -> FiniteGroup:
        return self.table.group

    def __len__(self):
        return len(self.class_partition)

    def __eq__(self, other):
        return (isinstance(other, Sct) and self.class_partition == other.class_partition
                and self.char_partition == other.char_partition and self.table == other.table)

    def __hash__(self):
        return hash(self.class_partition)

    def __le__(self, other: "Sct") -> bool:
        return refines(self, other)

    def __lt__(self, other: "Sct") -> bool:
        return self != other and refines(self, other)

    def superclasses(self) -> list[tuple[int, ...]]:
        """Superclasses as sorted tuples of group elements."""
        cls = self.table.classes.blocks
        return [tuple(sorted(g for k in b for g in cls[k])) for b in self.class_partition]

    def element_partition(self) -> SetPartition:
        return SetPartition.from_blocks(self.superclasses())

    def superclass_of(self, g: int) -> tuple[int, ...]:
        k = self.table.class_of[g]
        return next(s for s, b in zip(self.superclasses(), self.class_partition) if k in b)

    def char_blocks(self) -> list[tuple[str, ...]]:
        return [tuple(self.table.names[i] for i in b) for b in self.char_partition]

    def to_json(self) -> dict:
        labels = self.group.labels
        return {
            "group": self.group.descriptor(),
            "classes": [[labels[g] for g in b] for b in self.superclasses()],
            "chars": [list(b) for b in self.char_blocks()],
        }

    def compact(self) -> str:
        """Superclasses in short element-label form, e.g. 'e | r r^5 | s<r>'."""
        G = self.group
        refl = set(range(G.n, 2 * G.n)) if G.family == "dihedral" else set()
        parts = []
        for b in self.superclasses():
            names = [G.labels[g] for g in b if g not in refl]
            if refl and refl <= set(b):
                names.append("s<r>")
            else:
                names.extend(G.labels[g] for g in b if g in refl)
            parts.append(" ".join(names))
        return " | ".join(parts)

    def __repr__(self):
        return f"Sct({self.group.name}: {self.compact()})"


def build_sct(table: CharacterTable, P: SetPartition) -> Sct:
    """Validate a class partition by the subalgebra test and attach its character partition."""
    if not is_valid_superclass_partition(table, P):
        raise InvalidTheoryError("superclass sums do not span a subalgebra (not a subalgebra)")
    X = derive_char_partition(table, P)
    if not sigma_block_constant(table, P, X):
        raise AssertionError("supercharacters are not constant on superclasses")
    return Sct(table, P, X)


def assemble(table: CharacterTable, classes: SetPartition, chars: SetPartition) -> Sct:
    """Build from both partitions, asserting they form a theory."""
    S = build_sct(table, classes)
    if S.char_partition != chars:
        raise AssertionError(
            f"character partition {chars} disagrees with the derived one {S.char_partition}")
    return S


def class_partition_from_elements(table: CharacterTable, blocks) -> SetPartition:
    """Convert element blocks to a class-index partition; blocks must be class unions."""
    out = []
    for b in blocks:
        b = set(b)
        ks = {table.class_of[g] for g in b}
        if sum(table.class_sizes[k] for k in ks) != len(b):
            raise InvalidTheoryError("block is not a union of conjugacy classes")
        out.append(ks)
    return SetPartition.from_blocks(out)


def sct_m(table: CharacterTable) -> Sct:
    n = len(table.classes)
    return Sct(table, SetPartition.singletons(n), SetPartition.singletons(n))


def sct_M(table: CharacterTable) -> Sct:
    n = len(table.classes)
    if n == 1:
        return sct_m(table)
    P = SetPartition.from_blocks([[0], range(1, n)])
    return Sct(table, P, P)


def refines(S: Sct, T: Sct) -> bool:
    if S.table != T.table:
        raise ValueError("theories live on different groups")
    cls = S.class_partition.refines(T.class_partition)
    if cls != S.char_partition.refines(T.char_partition):
        raise AssertionError("class and character refinement disagree")
    return cls


def supercharacter_matrix(S: Sct) -> list[list[Cyclo]]:
    """Row X, column K: the value of sigma_X on superclass K."""
    out = []
    for X in S.char_partition:
        vals = supercharacter_values(S.table, X)
        row = []
        for block in S.class_partition:
            v = vals[block[0]]
            if any(vals[k] != v for k in block):
                raise AssertionError("supercharacter not constant on a superclass")
            row.append(v)
        out.append(row)
    return out


def sct_from_json(data: dict | str) -> Sct:
    """Parse Sct JSON, checking the character blocks against the derived ones."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        G = group_from_descriptor(data["group"])
        table = character_table(G)
        blocks = [[G.element_label(lab) for lab in b] for b in data["classes"]]
        P = class_partition_from_elements(table, blocks)
        chars = SetPartition.from_blocks([[table.index(nm) for nm in b] for b in data["chars"]])
    except (KeyError, TypeError) as exc:
        raise InvalidTheoryError(f"malformed Sct JSON: {exc}") from exc
    return assemble(table, P, chars)
