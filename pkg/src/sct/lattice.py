"""Enumeration of SCT(G), lattice operations, Hasse diagrams and the Z_n classification check."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import islice
from math import gcd

import numpy as np

from .characters import CharacterTable, character_table
from .constructions import (
    delta_product,
    direct_product_sct,
    is_S_normal,
    m_A,
    make_subgroup,
    transport,
)
from .core import (
    Sct,
    SubalgebraChecker,
    assemble,
    derive_char_partition,
    sct_M,
)
from .cyclotomic import divisors
from .groups import (
    all_subgroups,
    automorphism_group,
    automorphisms_as_group,
    crt_isomorphism,
    make_cyclic,
    rotation_subgroup,
)
from .partitions import SetPartition, restricted_growth_strings

DEFAULT_MAX_CLASSES = 13


class EnumerationGuardError(ValueError):
    pass


def max_classes() -> int:
    return int(os.environ.get("SCT_MAX_CLASSES", DEFAULT_MAX_CLASSES))


@dataclass(frozen=True, eq=False)
class SctLattice:
    table: CharacterTable
    theories: tuple[Sct, ...]

    @property
    def group(self):
        return self.table.group

    def __len__(self):
        return len(self.theories)

    def __iter__(self):
        return iter(self.theories)

    def __contains__(self, S: Sct) -> bool:
        return S.class_partition in self._index and S.table == self.table

    @cached_property
    def _index(self) -> dict[SetPartition, int]:
        return {S.class_partition: i for i, S in enumerate(self.theories)}

    def index(self, S: Sct) -> int:
        try:
            return self._index[S.class_partition]
        except KeyError:
            raise KeyError(f"{S!r} is not in the lattice") from None

    @cached_property
    def leq(self) -> np.ndarray:
        n = len(self.theories)
        out = np.zeros((n, n), dtype=bool)
        for i, S in enumerate(self.theories):
            for j, T in enumerate(self.theories):
                out[i, j] = S.class_partition.refines(T.class_partition)
        out.setflags(write=False)
        return out

    @cached_property
    def cover_edges(self) -> list[tuple[int, int]]:
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        two_step = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        cover = strict & ~two_step
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cover))]

    @property
    def bottom(self) -> Sct:
        return self.theories[0]

    @property
    def top(self) -> Sct:
        return self.theories[-1]

    def to_json(self) -> dict:
        return {
            "group": self.group.descriptor(),
            "theories": [S.to_json() for S in self.theories],
            "leq": self.leq.astype(int).tolist(),
            "covers": [list(e) for e in self.cover_edges],
        }

    def to_dot(self) -> str:
        lines = ["digraph sct {", "  rankdir=BT;", "  node [shape=box];"]
        for i, S in enumerate(self.theories):
            label = S.compact().replace('"', '\\"')
            lines.append(f'  n{i} [label="{label}"];')
        for i, j in self.cover_edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)


def _canonical_key(S: Sct):
    return (-len(S), S.class_partition.blocks)


def _filter_chunk(args):
    checker, chunk = args
    return [labels for labels in chunk if checker.inverse_closed(labels) and checker.check_labels(labels)]


def valid_class_labelings(table: CharacterTable, workers: int = 1, chunk_size: int = 20000):
    """Label vectors of every class partition passing the subalgebra test, identity class first."""
    c = len(table.classes)
    checker = SubalgebraChecker(table)
    candidates = ((0, *(x + 1 for x in rgs)) for rgs in restricted_growth_strings(c - 1))
    if workers <= 1:
        return _filter_chunk((checker, candidates))
    out = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        def chunks():
            while True:
                block = list(islice(candidates, chunk_size))
                if not block:
                    return
                yield checker, block
        for part in pool.map(_filter_chunk, chunks()):
            out.extend(part)
    return out


@lru_cache(maxsize=None)
def _enumerate_cached(table: CharacterTable) -> SctLattice:
    return _enumerate(table, 1)


def _enumerate(table: CharacterTable, workers: int) -> SctLattice:
    theories = []
    for labels in valid_class_labelings(table, workers):
        P = SetPartition.from_labels(labels)
        theories.append(Sct(table, P, derive_char_partition(table, P)))
    theories.sort(key=_canonical_key)
    return SctLattice(table, tuple(theories))


def enumerate_scts(table: CharacterTable, workers: int = 1, limit: int | None = None) -> SctLattice:
    """All supercharacter theories of the table's group.

    Every set partition of the non-identity classes is generated once as a
    restricted-growth string and filtered by the subalgebra criterion.
    """
    c = len(table.classes)
    limit = max_classes() if limit is None else limit
    if c > limit:
        raise EnumerationGuardError(f"{c} conjugacy classes exceed the enumeration guard {limit} "
                                    "(raise it with SCT_MAX_CLASSES)")
    if workers <= 1:
        return _enumerate_cached(table)
    return _enumerate(table, workers)


def join(S: Sct, T: Sct) -> Sct:
    """(K v L, X v Y), asserted to be a theory."""
    if S.table != T.table:
        raise ValueError("theories live on different groups")
    return assemble(S.table, S.class_partition.join(T.class_partition),
                    S.char_partition.join(T.char_partition))


def lower_bounds(lattice: SctLattice, S: Sct) -> list[Sct]:
    i = lattice.index(S)
    return [U for j, U in enumerate(lattice.theories) if lattice.leq[j, i]]


def meet(S: Sct, T: Sct, lattice: SctLattice) -> Sct:
    """Join of all common lower bounds in the enumerated lattice."""
    i, j = lattice.index(S), lattice.index(T)
    result = lattice.bottom
    for k, U in enumerate(lattice.theories):
        if lattice.leq[k, i] and lattice.leq[k, j]:
            result = join(result, U)
    return result


def interval(lattice: SctLattice, bottom: Sct, top: Sct) -> list[Sct]:
    i, j = lattice.index(bottom), lattice.index(top)
    if not lattice.leq[i, j]:
        raise ValueError("interval endpoints are not comparable")
    return [U for k, U in enumerate(lattice.theories) if lattice.leq[i, k] and lattice.leq[k, j]]


def meet_is_partial_refinement(S: Sct, T: Sct, lattice: SctLattice) -> bool:
    """True when exactly one component of S ^ T equals the mutual refinement."""
    W = meet(S, T, lattice)
    a = W.class_partition == S.class_partition.meet(T.class_partition)
    b = W.char_partition == S.char_partition.meet(T.char_partition)
    return a != b


# -- classification of SCT(Z_n) ---------------------------------------------------

def _cyclic_table(n: int) -> CharacterTable:
    return character_table(make_cyclic(n))


def theories_m_A(table: CharacterTable) -> dict[Sct, list[str]]:
    """m_A(G) for every subgroup A of Aut(G)."""
    auts = automorphism_group(table.group)
    A_group = automorphisms_as_group(auts)
    out: dict[Sct, list[str]] = {}
    for sub in all_subgroups(A_group):
        A = [auts[i] for i in sorted(sub.elements)]
        S = m_A(table, A)
        units = sorted(a(1) for a in A) if table.group.family == "cyclic" and table.group.order > 1 else None
        out.setdefault(S, []).append(f"m_A, A = units {units}")
    return out


def theories_direct_product(n: int) -> dict[Sct, list[str]]:
    """S x T transported to Z_n for every coprime factorization n = a b, 1 < a < b."""
    table = _cyclic_table(n)
    out: dict[Sct, list[str]] = {}
    for a in divisors(n):
        b = n // a
        if not (1 < a < b and gcd(a, b) == 1):
            continue
        iso = crt_isomorphism(a, b)
        for S in enumerate_scts(_cyclic_table(a)):
            for T in enumerate_scts(_cyclic_table(b)):
                U = transport(iso, direct_product_sct(S, T), table)
                out.setdefault(U, []).append(f"direct product Z_{a} x Z_{b}")
    return out


def theories_delta_product(n: int) -> dict[Sct, list[str]]:
    """Nontrivial Delta-products over chains 1 < N <= M < Z_n."""
    table = _cyclic_table(n)
    G = table.group
    out: dict[Sct, list[str]] = {}
    for dN in divisors(n):
        N = rotation_subgroup(G, dN)
        if len(N) == 1:
            continue
        for dM in divisors(dN):
            M = rotation_subgroup(G, dM)
            if len(M) == n:
                continue
            sub_M = make_subgroup(table, M)
            N_in_M = frozenset(sub_M.back[g] for g in N)
            quo = _cyclic_table(dN)
            for S in enumerate_scts(sub_M.sub_table):
                if not is_S_normal(S, N_in_M):
                    continue
                for T in enumerate_scts(quo):
                    try:
                        U = delta_product(S, T, table, N, M)
                    except ValueError:
                        continue
                    out.setdefault(U, []).append(f"delta product N=<{dN}>, M=<{dM}>")
    return out


@dataclass
class CyclicClassificationReport:
    n: int
    matches: dict[int, list[str]] = field(default_factory=dict)
    unmatched: list[int] = field(default_factory=list)
    theories: tuple[Sct, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.unmatched

    def form_counts(self) -> dict[str, int]:
        counts = {"m_A": 0, "direct product": 0, "delta product": 0}
        for forms in self.matches.values():
            for key in counts:
                if any(f.startswith(key) for f in forms):
                    counts[key] += 1
        return counts


def check_cyclic_classification(lattice: SctLattice) -> CyclicClassificationReport:
    """Match every S != M(Z_n) against the three forms of the cyclic classification."""
    G = lattice.group
    if G.family != "cyclic":
        raise ValueError("the checker needs a cyclic group")
    n = G.n
    forms: dict[Sct, list[str]] = {}
    for source in (theories_m_A(lattice.table), theories_direct_product(n), theories_delta_product(n)):
        for S, why in source.items():
            forms.setdefault(S, []).extend(why)
    report = CyclicClassificationReport(n, theories=lattice.theories)
    top = sct_M(lattice.table)
    for i, S in enumerate(lattice.theories):
        if S == top:
            continue
        if S in forms:
            report.matches[i] = forms[S]
        else:
            report.unmatched.append(i)
    return report
