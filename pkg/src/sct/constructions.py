"""Automorphism actions and product constructions on supercharacter theories."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .characters import (
    CharacterTable,
    character_table,
    constituents,
    induced_constituents,
    inflate,
    restrict,
)
from .core import (
    InvalidTheoryError,
    Sct,
    assemble,
    class_partition_from_elements,
    sct_M,
    sct_m,
    supercharacter_values,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    automorphism_group,
    direct_product,
    quotient,
    subgroup,
)
from .partitions import SetPartition


# -- actions -------------------------------------------------------------------

@dataclass(frozen=True)
class SctAction:
    """An isomorphism together with the permutations it induces on classes and rows."""

    hom: GroupHom
    class_map: tuple[int, ...]
    row_map: tuple[int, ...]


def induced_action(hom: GroupHom, source: CharacterTable | None = None,
                   target: CharacterTable | None = None) -> SctAction:
    """Class map K -> hom(K) and row map chi -> chi o hom^-1."""
    source = source or character_table(hom.source)
    target = target or character_table(hom.target)
    if not hom.is_bijective():
        raise ValueError("not an isomorphism")
    class_map = tuple(target.class_of[hom(r)] for r in source.representatives)
    if len(set(class_map)) != len(class_map):
        raise ValueError("map does not send classes to classes")
    back = [0] * len(class_map)
    for k, kk in enumerate(class_map):
        back[kk] = k
    row_map = []
    for row in source.rows:
        moved = tuple(row[back[kk]] for kk in range(len(target.classes)))
        idx = target.find_row(moved)
        if idx is None:
            raise AssertionError("transported character is not irreducible")
        row_map.append(idx)
    return SctAction(hom, class_map, tuple(row_map))


def transport(hom: GroupHom, S: Sct, target: CharacterTable | None = None) -> Sct:
    """Image of S under an isomorphism hom: S.group -> target group."""
    act_ = induced_action(hom, S.table, target)
    table = target or character_table(hom.target)
    return Sct(table, S.class_partition.map(act_.class_map), S.char_partition.map(act_.row_map))


@lru_cache(maxsize=4096)
def _cached_action(hom: GroupHom, table: CharacterTable) -> SctAction:
    return induced_action(hom, table, table)


def act(alpha: GroupHom, S: Sct) -> Sct:
    if alpha.source != S.group or alpha.target != S.group:
        raise ValueError("not an automorphism of the theory's group")
    a = _cached_action(alpha, S.table)
    return Sct(S.table, S.class_partition.map(a.class_map), S.char_partition.map(a.row_map))


def is_A_characteristic(S: Sct, A: Iterable[GroupHom]) -> bool:
    """alpha . S = S for every alpha in A (the superclass partition decides)."""
    return all(act(a, S).class_partition == S.class_partition for a in A)


def is_characteristic(S: Sct) -> bool:
    return is_A_characteristic(S, automorphism_group(S.group))


def is_A_invariant(S: Sct, A: Iterable[GroupHom]) -> bool:
    """Every superclass is setwise fixed by every alpha in A."""
    blocks = [frozenset(b) for b in S.superclasses()]
    for a in A:
        for b in blocks:
            if frozenset(a(g) for g in b) != b:
                return False
    return True


def orbit_partition(n: int, maps: Iterable[Sequence[int]]) -> SetPartition:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in maps:
        for x in range(n):
            a, b = find(x), find(f[x])
            if a != b:
                parent[a] = b
    return SetPartition.from_labels([find(x) for x in range(n)])


def m_A(table: CharacterTable, A: Sequence[GroupHom]) -> Sct:
    """The finest A-invariant theory: orbits of A (and conjugation) on G and on Irr(G)."""
    G = table.group
    elem = orbit_partition(G.order, [a.map for a in A]).join(table.classes)
    classes = class_partition_from_elements(table, elem.blocks)
    actions = [_cached_action(a, table) for a in A]
    chars = orbit_partition(len(table.rows), [x.row_map for x in actions])
    return assemble(table, classes, chars)


def conjugation_action(G: FiniteGroup, embedding: GroupHom) -> list[GroupHom]:
    """The automorphisms of N induced by conjugation with elements of G."""
    N = embedding.source
    back = {y: x for x, y in enumerate(embedding.map)}
    out = {}
    for g in G.elements():
        table = tuple(back[G.conj(g, embedding(x))] for x in N.elements())
        out.setdefault(table, GroupHom(N, N, table))
    return [out[k] for k in sorted(out)]


# -- direct product --------------------------------------------------------------

def direct_product_sct(S: Sct, T: Sct) -> Sct:
    P, _ = direct_product(S.group, T.group)
    table = character_table(P)
    cT, rT = len(T.table.classes), len(T.table.rows)
    classes = SetPartition.from_blocks(
        [i * cT + j for i in K for j in L] for K in S.class_partition for L in T.class_partition)
    chars = SetPartition.from_blocks(
        [x * rT + y for x in X for y in Y] for X in S.char_partition for Y in T.char_partition)
    return assemble(table, classes, chars)


# -- normal subgroups, restriction, deflation -----------------------------------------

@dataclass(frozen=True, eq=False)
class Subgroup:
    """A recognized subgroup N of G with its own table and the embedding N -> G."""

    table: CharacterTable  # of G
    sub_table: CharacterTable
    embedding: GroupHom

    @property
    def elements(self) -> frozenset[int]:
        return self.embedding.image()

    @cached_property
    def back(self) -> dict[int, int]:
        return {y: x for x, y in enumerate(self.embedding.map)}


@dataclass(frozen=True, eq=False)
class Extension(Subgroup):
    """A normal subgroup N of G together with the recognized quotient G/N."""

    quo_table: CharacterTable
    projection: GroupHom

    @cached_property
    def inflation_rows(self) -> tuple[int, ...]:
        """Row of G obtained by inflating each row of G/N."""
        out = []
        for row in self.quo_table.rows:
            idx = self.table.find_row(inflate(self.quo_table, self.table, self.projection, row))
            if idx is None:
                raise AssertionError("inflated character is not irreducible")
            out.append(idx)
        return tuple(out)

    def preimage(self, q_elems: Iterable[int]) -> set[int]:
        qs = set(q_elems)
        return {g for g in self.table.group.elements() if self.projection(g) in qs}


def make_subgroup(table: CharacterTable, elements: Iterable[int]) -> Subgroup:
    H, emb = subgroup(table.group, elements)
    return Subgroup(table, character_table(H), emb)


def make_extension(table: CharacterTable, elements: Iterable[int]) -> Extension:
    elements = frozenset(elements)
    H, emb = subgroup(table.group, elements)
    Q, proj = quotient(table.group, elements)
    return Extension(table, character_table(H), emb, character_table(Q), proj)


def quotient_rows(table: CharacterTable, N: Iterable[int]) -> frozenset[int]:
    """Irr(G/N) viewed inside Irr(G): rows whose kernel contains N."""
    N = frozenset(N)
    return frozenset(i for i in range(len(table.rows)) if N <= table.kernel(i))


def is_S_normal(S: Sct, N: Iterable[int]) -> bool:
    N = frozenset(N)
    return all(set(b) <= N or not (set(b) & N) for b in S.superclasses())


def restricted_sct(S: Sct, sub: Subgroup) -> Sct:
    """S_N: superclasses inside N; character blocks are constituents of Res sigma_X."""
    N = sub.elements
    if not is_S_normal(S, N):
        raise InvalidTheoryError("subgroup is not S-normal")
    blocks = [[sub.back[g] for g in b] for b in S.superclasses() if set(b) <= N]
    classes = class_partition_from_elements(sub.sub_table, blocks)
    above = quotient_rows(S.table, N)
    chars = {frozenset([0])}
    for X in S.char_partition:
        if set(X) <= above:
            continue
        res = restrict(S.table, sub.sub_table, sub.embedding, supercharacter_values(S.table, X))
        chars.add(constituents(sub.sub_table, res))
    return assemble(sub.sub_table, classes, SetPartition.from_blocks(sorted(sorted(b) for b in chars)))


def deflated_sct(S: Sct, ext: Extension) -> Sct:
    """S^{G/N}: images of superclasses outside N, character blocks inside Irr(G/N)."""
    N = ext.elements
    if not is_S_normal(S, N):
        raise InvalidTheoryError("subgroup is not S-normal")
    # images of superclasses are equal or disjoint when N is S-normal
    images = {frozenset(ext.projection(g) for g in b) for b in S.superclasses()}
    blocks = sorted(sorted(b) for b in images)
    classes = class_partition_from_elements(ext.quo_table, blocks)
    to_quo = {g_row: q_row for q_row, g_row in enumerate(ext.inflation_rows)}
    above = set(to_quo)
    chars = [[to_quo[i] for i in X] for X in S.char_partition if set(X) <= above]
    return assemble(ext.quo_table, classes, SetPartition.from_blocks(chars))


# -- star and delta products ---------------------------------------------------------

def _check_invariant(S: Sct, sub: Subgroup):
    conj = conjugation_action(sub.table.group, sub.embedding)
    if not is_A_invariant(S, conj):
        raise InvalidTheoryError("inner theory is not invariant under conjugation by G")


def _induced_block(sub: Subgroup, S: Sct, X: Sequence[int]) -> set[int]:
    out: set[int] = set()
    for i in X:
        out |= induced_constituents(sub.table, sub.sub_table, sub.embedding, S.table.rows[i])
    return out


def star_product(S: Sct, T: Sct, ext: Extension) -> Sct:
    """S *_N T for a G-invariant theory S of N and a theory T of G/N."""
    if S.table != ext.sub_table or T.table != ext.quo_table:
        raise ValueError("theories do not match the extension")
    if not ext.table.group.is_normal(ext.elements):
        raise InvalidTheoryError("N is not normal")
    _check_invariant(S, ext)
    Qe = ext.quo_table.group.identity
    blocks = [[ext.embedding(x) for x in b] for b in S.superclasses()]
    for L in T.superclasses():
        if L == (Qe,):
            continue
        blocks.append(ext.preimage(L))
    classes = class_partition_from_elements(ext.table, blocks)
    chars = [[ext.inflation_rows[y] for y in Y] for Y in T.char_partition]
    induced = {frozenset(_induced_block(ext, S, X)) for X in S.char_partition if X != (0,)}
    chars.extend(sorted(sorted(b) for b in induced))
    return assemble(ext.table, classes, SetPartition.from_blocks(chars))


def mm(table: CharacterTable, N: Iterable[int]) -> Sct:
    ext = make_extension(table, N)
    inner = m_A(ext.sub_table, conjugation_action(table.group, ext.embedding))
    return star_product(inner, sct_m(ext.quo_table), ext)


def MM(table: CharacterTable, N: Iterable[int]) -> Sct:
    ext = make_extension(table, N)
    return star_product(sct_M(ext.sub_table), sct_M(ext.quo_table), ext)


def factors_over(S: Sct, N: Iterable[int]) -> tuple[Sct, Sct] | None:
    """(S_N, S^{G/N}) when mm_N(G) <= S <= MM_N(G), else None."""
    N = frozenset(N)
    lo, hi = mm(S.table, N), MM(S.table, N)
    if not (lo.class_partition.refines(S.class_partition)
            and S.class_partition.refines(hi.class_partition)):
        return None
    ext = make_extension(S.table, N)
    pair = restricted_sct(S, ext), deflated_sct(S, ext)
    if star_product(pair[0], pair[1], ext) != S:
        raise AssertionError("star product does not reproduce the factored theory")
    return pair


def _quotient_identification(sub_M: Subgroup, ext_MN: Extension, ext_GN: Extension,
                             sub_Q: Subgroup) -> GroupHom:
    """Isomorphism from M/N (quotient of M) onto M/N (subgroup of G/N), through G."""
    src, dst = ext_MN.quo_table.group, sub_Q.sub_table.group
    table: dict[int, int] = {}
    for x in sub_M.sub_table.group.elements():
        q1 = ext_MN.projection(x)
        q2 = sub_Q.back[ext_GN.projection(sub_M.embedding(x))]
        if table.setdefault(q1, q2) != q2:
            raise AssertionError("quotient identification is not well defined")
    hom = GroupHom(src, dst, tuple(table[q] for q in src.elements()))
    if not (hom.is_bijective() and hom.is_homomorphism()):
        raise AssertionError("quotient identification is not an isomorphism")
    return hom


def delta_product(S: Sct, T: Sct, table: CharacterTable, N: Iterable[int], M: Iterable[int]) -> Sct:
    """S Delta T for N <| M <| G, S a G-invariant theory of M and T a theory of G/N.

    Raises InvalidTheoryError naming the failing condition (a), (b) or (c).
    """
    G = table.group
    N, M = frozenset(N), frozenset(M)
    if not N <= M:
        raise ValueError("N must be contained in M")
    if not (G.is_normal(N) and G.is_normal(M)):
        raise InvalidTheoryError("N and M must be normal in G")
    sub_M = make_subgroup(table, M)
    ext_GN = make_extension(table, N)
    if S.table != sub_M.sub_table or T.table != ext_GN.quo_table:
        raise ValueError("theories do not match the chain")
    _check_invariant(S, sub_M)
    N_in_M = frozenset(sub_M.back[g] for g in N)
    if not is_S_normal(S, N_in_M):
        raise InvalidTheoryError("condition (a) fails: N is not S-normal")
    M_in_Q = frozenset(ext_GN.projection(g) for g in M)
    if not is_S_normal(T, M_in_Q):
        raise InvalidTheoryError("condition (b) fails: M/N is not T-normal")
    ext_MN = make_extension(sub_M.sub_table, N_in_M)
    sub_Q = make_subgroup(ext_GN.quo_table, M_in_Q)
    phi = _quotient_identification(sub_M, ext_MN, ext_GN, sub_Q)
    left = transport(phi, deflated_sct(S, ext_MN), sub_Q.sub_table)
    right = restricted_sct(T, sub_Q)
    if left != right:
        raise InvalidTheoryError("condition (c) fails: deflation of S differs from restriction of T")

    blocks = [[sub_M.embedding(x) for x in b] for b in S.superclasses()]
    for L in T.superclasses():
        if set(L) <= M_in_Q:
            continue
        blocks.append(ext_GN.preimage(L))
    classes = class_partition_from_elements(table, blocks)
    chars = [[ext_GN.inflation_rows[y] for y in Y] for Y in T.char_partition]
    above = quotient_rows(S.table, N_in_M)  # Irr(M/N) inside Irr(M)
    induced = {frozenset(_induced_block(sub_M, S, X)) for X in S.char_partition if not set(X) <= above}
    chars.extend(sorted(sorted(b) for b in induced))
    return assemble(table, classes, SetPartition.from_blocks(chars))


# -- automorphism images for the star-char criterion ----------------------------------

def restrict_automorphism(alpha: GroupHom, sub: Subgroup) -> GroupHom:
    N = sub.sub_table.group
    if any(alpha(g) not in sub.back for g in sub.elements):
        raise ValueError("subgroup is not characteristic: automorphism moves it")
    table = tuple(sub.back[alpha(sub.embedding(x))] for x in N.elements())
    return GroupHom(N, N, table)


def project_automorphism(alpha: GroupHom, ext: Extension) -> GroupHom:
    Q = ext.quo_table.group
    table: dict[int, int] = {}
    for g in ext.table.group.elements():
        q, q2 = ext.projection(g), ext.projection(alpha(g))
        if table.setdefault(q, q2) != q2:
            raise ValueError("automorphism does not preserve N")
    return GroupHom(Q, Q, tuple(table[q] for q in Q.elements()))


def induced_automorphisms(ext: Extension) -> tuple[list[GroupHom], list[GroupHom]]:
    """Images of Aut(G) in Aut(N) and Aut(G/N), duplicates removed."""
    A, B = {}, {}
    for alpha in automorphism_group(ext.table.group):
        a = restrict_automorphism(alpha, ext)
        b = project_automorphism(alpha, ext)
        A.setdefault(a.map, a)
        B.setdefault(b.map, b)
    return [A[k] for k in sorted(A)], [B[k] for k in sorted(B)]
