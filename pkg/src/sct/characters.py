"""Exact character tables for Z_n, D_2n and their direct products.

Row 0 is always the trivial character and class 0 is always {e}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import lcm
from typing import Sequence

from .cyclotomic import Cyclo, cyclo_sum, zeta_pow
from .groups import (
    FiniteGroup,
    GroupHom,
    UnrecognizedGroupError,
    conjugacy_classes,
    direct_product,
    make_cyclic,
    make_dihedral,
)
from .partitions import SetPartition

ValueVector = tuple  # of Cyclo, one entry per conjugacy class


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    classes: SetPartition
    rows: tuple[tuple[Cyclo, ...], ...]
    names: tuple[str, ...]
    conductor: int

    def __eq__(self, other):
        return isinstance(other, CharacterTable) and (self is other or self.group == other.group)

    def __hash__(self):
        return hash(self.group)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row[0].as_integer() for row in self.rows)

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        return tuple(self.classes.labels())

    @cached_property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.classes)

    @cached_property
    def representatives(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.classes)

    @cached_property
    def inverse_class(self) -> tuple[int, ...]:
        G = self.group
        return tuple(self.class_of[G.inv[r]] for r in self.representatives)

    @cached_property
    def _row_index(self) -> dict:
        return {row: i for i, row in enumerate(self.rows)}

    def __len__(self):
        return len(self.rows)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no character named {name!r}") from None

    def find_row(self, values: Sequence[Cyclo]) -> int | None:
        return self._row_index.get(tuple(values))

    def value(self, row: int, g: int) -> Cyclo:
        return self.rows[row][self.class_of[g]]

    def kernel(self, row: int) -> frozenset[int]:
        deg = self.rows[row][0]
        return frozenset(g for g in self.group.elements() if self.value(row, g) == deg)

    # -- the chi_a convention for dihedral tables --------------------------
    def resolve_chi(self, a: int) -> frozenset[int]:
        """Rows making up chi_a in D_2n, with chi_0 = 1 + lambda and chi_{n/2} = mu0 + mu1."""
        if self.group.family != "dihedral":
            raise ValueError("chi_a is only defined for dihedral tables")
        n = self.group.n
        a = a % n
        a = min(a, n - a)
        if a == 0:
            return frozenset({self.index("1"), self.index("lambda")})
        if 2 * a == n:
            return frozenset({self.index("mu0"), self.index("mu1")})
        return frozenset({self.index(f"chi_{a}")})

    def chi_vector(self, a: int) -> ValueVector:
        """Values of chi_a(r^k) = z^ka + z^-ka, chi_a(s r^k) = 0, for any integer a."""
        G = self.group
        n = G.n
        out = []
        for r in self.representatives:
            if r < n:
                out.append(zeta_pow(n, r * a) + zeta_pow(n, -r * a))
            else:
                out.append(Cyclo.from_int(0))
        return tuple(out)

    def row_sum(self, rows) -> ValueVector:
        return tuple(cyclo_sum(self.rows[i][k] for i in rows) for k in range(len(self.classes)))

    # -- output -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "group": self.group.descriptor(),
            "conductor": self.conductor,
            "classes": [[self.group.labels[g] for g in b] for b in self.classes],
            "characters": [
                {"name": name, "values": [{"conductor": v.conductor, "coeffs": list(v.coeffs)} for v in row]}
                for name, row in zip(self.names, self.rows)
            ],
        }

    def to_text(self) -> str:
        G = self.group
        header = ["", *(G.labels[r] for r in self.representatives)]
        sizes = ["size", *(str(s) for s in self.class_sizes)]
        body = [[name, *(repr(v) for v in row)] for name, row in zip(self.names, self.rows)]
        grid = [header, sizes, *body]
        widths = [max(len(r[c]) for r in grid) for c in range(len(header))]
        return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in grid)


def table_cyclic(n: int) -> CharacterTable:
    G = make_cyclic(n)
    rows = tuple(tuple(zeta_pow(n, k * m) for k in range(n)) for m in range(n))
    names = tuple("1" if m == 0 else f"xi_{m}" for m in range(n))
    return CharacterTable(G, conjugacy_classes(G), rows, names, n)


def table_dihedral(n: int) -> CharacterTable:
    G = make_dihedral(n)
    classes = conjugacy_classes(G)
    reps = [b[0] for b in classes]
    one, zero = Cyclo.from_int(1), Cyclo.from_int(0)

    def refl_sign(rep):
        return -1 if rep >= n else 1

    rows = [tuple(one for _ in reps), tuple(Cyclo.from_int(refl_sign(r)) for r in reps)]
    names = ["1", "lambda"]
    if n % 2 == 0:
        # mu_i(r^k) = (-1)^k; mu_0(s r^k) = (-1)^k, mu_1(s r^k) = -(-1)^k
        for i in (0, 1):
            vals = []
            for r in reps:
                k = r % n
                sign = (-1) ** k
                if r >= n and i == 1:
                    sign = -sign
                vals.append(Cyclo.from_int(sign))
            rows.append(tuple(vals))
            names.append(f"mu{i}")
    for m in range(1, (n - 1) // 2 + 1):
        rows.append(tuple(zeta_pow(n, r * m) + zeta_pow(n, -r * m) if r < n else zero for r in reps))
        names.append(f"chi_{m}")
    return CharacterTable(G, classes, tuple(rows), tuple(names), max(n, 1))


def table_product(TG: CharacterTable, TH: CharacterTable) -> CharacterTable:
    """Kronecker product; class (i, j) and row (x, y) are stored at i*|Cl(H)| + j."""
    P, _ = direct_product(TG.group, TH.group)
    m = TH.group.order
    classes = SetPartition.from_blocks(
        [g * m + h for g in bg for h in bh] for bg in TG.classes for bh in TH.classes)
    rows, names = [], []
    for rg, ng in zip(TG.rows, TG.names):
        for rh, nh in zip(TH.rows, TH.names):
            rows.append(tuple(a * b for a in rg for b in rh))
            names.append("1" if ng == nh == "1" else f"{ng}.{nh}")
    return CharacterTable(P, classes, tuple(rows), tuple(names), lcm(TG.conductor, TH.conductor))


@lru_cache(maxsize=None)
def character_table(G: FiniteGroup) -> CharacterTable:
    if G.family == "cyclic":
        return table_cyclic(G.n)
    if G.family == "dihedral":
        return table_dihedral(G.n)
    if G.family == "product":
        A, B = G.params
        return table_product(character_table(A), character_table(B))
    raise UnrecognizedGroupError(f"no character table available for {G.name}")


# -- inner products and character maps --------------------------------------

def inner_product_scaled(table: CharacterTable, a: Sequence[Cyclo], b: Sequence[Cyclo]) -> Cyclo:
    """|G| <a, b> = sum over classes K of |K| a(K) b(K^-1)."""
    return cyclo_sum(size * a[k] * b[table.inverse_class[k]]
                     for k, size in enumerate(table.class_sizes))


def restrict(table: CharacterTable, sub_table: CharacterTable, embedding: GroupHom,
             values: Sequence[Cyclo]) -> ValueVector:
    """Restriction of a class function of G to the subgroup embedded by `embedding`."""
    return tuple(values[table.class_of[embedding(r)]] for r in sub_table.representatives)


def inflate(quo_table: CharacterTable, table: CharacterTable, projection: GroupHom,
            values: Sequence[Cyclo]) -> ValueVector:
    """Pull a class function of G/N back along the projection G -> G/N."""
    return tuple(values[quo_table.class_of[projection(r)]] for r in table.representatives)


def induced_constituents(table: CharacterTable, sub_table: CharacterTable, embedding: GroupHom,
                         values: Sequence[Cyclo]) -> frozenset[int]:
    """Rows psi of G with <Res psi, chi> != 0, by Frobenius reciprocity."""
    out = set()
    for i, row in enumerate(table.rows):
        res = restrict(table, sub_table, embedding, row)
        if inner_product_scaled(sub_table, res, values):
            out.add(i)
    return frozenset(out)


def constituents(table: CharacterTable, values: Sequence[Cyclo]) -> frozenset[int]:
    """Irreducible rows appearing in a class function."""
    return frozenset(i for i, row in enumerate(table.rows) if inner_product_scaled(table, values, row))


def product_vector(a: Sequence[Cyclo], b: Sequence[Cyclo]) -> ValueVector:
    return tuple(x * y for x, y in zip(a, b))
