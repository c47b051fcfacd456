"""Finite groups as multiplication tables: Z_n, D_2n, products, subgroups, quotients.

Dihedral encoding: index k is r^k for k < n and index n + k is s*r^k.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .partitions import SetPartition

MAX_ORDER = 64


class UnrecognizedGroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int
    labels: tuple[str, ...]
    family: str  # cyclic | dihedral | product | generic
    params: tuple = ()

    @property
    def key(self) -> tuple:
        if self.family in ("cyclic", "dihedral", "product"):
            return (self.family, self.params)
        return (self.family, self.mul)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and (self is other or self.key == other.key)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FiniteGroup({self.name})"

    @property
    def name(self) -> str:
        if self.family == "cyclic":
            return f"Z_{self.params[0]}"
        if self.family == "dihedral":
            return f"D_{2 * self.params[0]}"
        if self.family == "product":
            return " x ".join(f.name for f in self.params)
        return f"G_{self.order}"

    @property
    def n(self) -> int:
        """Parameter n of cyclic(n) / dihedral(n)."""
        if self.family not in ("cyclic", "dihedral"):
            raise AttributeError(f"{self.name} has no parameter n")
        return self.params[0]

    def descriptor(self) -> dict:
        if self.family in ("cyclic", "dihedral"):
            return {"family": self.family, "n": self.params[0]}
        if self.family == "product":
            return {"family": "product", "factors": [f.descriptor() for f in self.params]}
        raise UnrecognizedGroupError("generic groups have no descriptor")

    def elements(self) -> range:
        return range(self.order)

    def power(self, g: int, k: int) -> int:
        x = self.identity
        for _ in range(k):
            x = self.mul[x][g]
        return x

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def is_normal(self, sub: Iterable[int]) -> bool:
        sub = frozenset(sub)
        return all(self.conj(g, x) in sub for g in self.elements() for x in sub)

    def element_label(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r} in {self.name}") from None


def _from_table(mul, labels, family, params) -> FiniteGroup:
    order = len(mul)
    identity = next(e for e in range(order) if all(mul[e][g] == g for g in range(order)))
    inv = tuple(next(h for h in range(order) if mul[g][h] == identity) for g in range(order))
    return FiniteGroup(order, tuple(tuple(r) for r in mul), inv, identity, tuple(labels), family, params)


def check_group_axioms(G: FiniteGroup) -> bool:
    """Exhaustive associativity, identity and inverse check."""
    if G.order > MAX_ORDER:
        raise ValueError(f"order {G.order} exceeds {MAX_ORDER}")
    m, e = G.mul, G.identity
    for g in G.elements():
        if m[e][g] != g or m[g][e] != g:
            return False
        if m[g][G.inv[g]] != e or m[G.inv[g]][g] != e:
            return False
    return all(m[m[a][b]][c] == m[a][m[b][c]]
               for a in G.elements() for b in G.elements() for c in G.elements())


@lru_cache(maxsize=None)
def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    mul = [[(a + b) % n for b in range(n)] for a in range(n)]
    return _from_table(mul, [str(k) for k in range(n)], "cyclic", (n,))


def _dihedral_label(n: int, idx: int) -> str:
    refl, k = divmod(idx, n)
    rot = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
    if refl:
        return "s" if not rot else f"s*{rot}"
    return rot or "e"


@lru_cache(maxsize=None)
def make_dihedral(n: int) -> FiniteGroup:
    """D_2n = <r, s | r^n = s^2 = e, srs = r^-1>."""
    if n < 1:
        raise ValueError("n must be positive")
    mul = []
    for x in range(2 * n):
        a, i = divmod(x, n)
        row = []
        for y in range(2 * n):
            b, j = divmod(y, n)
            # s^a r^i s^b r^j = s^(a+b) r^((-1)^b i + j)
            k = ((-i if b else i) + j) % n
            row.append(((a + b) % 2) * n + k)
        mul.append(row)
    return _from_table(mul, [_dihedral_label(n, x) for x in range(2 * n)], "dihedral", (n,))


def rotation(G: FiniteGroup, k: int) -> int:
    return k % G.n


def reflection(G: FiniteGroup, k: int) -> int:
    return G.n + k % G.n


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.map[g]

    def __eq__(self, other):
        return (isinstance(other, GroupHom) and self.map == other.map
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(self.map)

    def is_homomorphism(self) -> bool:
        S, T, f = self.source, self.target, self.map
        return all(f[S.mul[a][b]] == T.mul[f[a]][f[b]] for a in S.elements() for b in S.elements())

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.map)) == self.source.order

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.target != self.source:
            raise ValueError("cannot compose: target/source mismatch")
        return GroupHom(other.source, self.target, tuple(self.map[x] for x in other.map))

    def inverse(self) -> "GroupHom":
        if not self.is_bijective():
            raise ValueError("not invertible")
        inv = [0] * self.target.order
        for x, y in enumerate(self.map):
            inv[y] = x
        return GroupHom(self.target, self.source, tuple(inv))

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def kernel(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.map) if y == self.target.identity)


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(G.elements()))


def conjugacy_classes(G: FiniteGroup) -> SetPartition:
    seen: set[int] = set()
    blocks = []
    for x in G.elements():
        if x in seen:
            continue
        cls = {G.conj(g, x) for g in G.elements()}
        seen |= cls
        blocks.append(cls)
    return SetPartition.from_blocks(blocks)


@dataclass(frozen=True)
class SubgroupInfo:
    elements: frozenset[int]
    normal: bool

    @property
    def order(self) -> int:
        return len(self.elements)


def _guard(G: FiniteGroup):
    if G.order > MAX_ORDER:
        raise ValueError(f"order {G.order} exceeds the brute-force limit {MAX_ORDER}")


def all_subgroups(G: FiniteGroup) -> list[SubgroupInfo]:
    """Every subgroup exactly once, by closing cyclic subgroups under joins."""
    _guard(G)
    subs = {G.closure([g]) for g in G.elements()}
    frontier = set(subs)
    while frontier:
        new = set()
        for H in frontier:
            for K in subs:
                if H <= K or K <= H:
                    continue
                J = G.closure(H | K)
                if J not in subs:
                    new.add(J)
        subs |= new
        frontier = new
    ordered = sorted(subs, key=lambda H: (len(H), sorted(H)))
    return [SubgroupInfo(H, G.is_normal(H)) for H in ordered]


def generators(G: FiniteGroup) -> list[int]:
    """A small generating set, greedily chosen (highest order first)."""
    gens: list[int] = []
    cur = frozenset([G.identity])
    for g in sorted(G.elements(), key=lambda x: (-G.element_order(x), x)):
        if g not in cur:
            gens.append(g)
            cur = G.closure(gens)
            if len(cur) == G.order:
                break
    return gens


def _extend(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> tuple | None:
    """The hom G -> H sending gens to images, or None if it does not exist."""
    f = {G.identity: H.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y, fy = G.mul[x][g], H.mul[f[x]][h]
                if y in f:
                    if f[y] != fy:
                        return None
                else:
                    f[y] = fy
                    nxt.append(y)
        frontier = nxt
    if len(f) != G.order:
        return None
    table = tuple(f[x] for x in G.elements())
    # the map is well defined on words; the hom law still has to be confirmed
    if not all(table[G.mul[a][b]] == H.mul[table[a]][table[b]] for a in G.elements() for b in gens):
        return None
    return table


def _hom_search(G: FiniteGroup, H: FiniteGroup, bijective: bool) -> Iterable[GroupHom]:
    _guard(G)
    _guard(H)
    gens = generators(G)
    orders = [G.element_order(g) for g in gens]
    pools = [[h for h in H.elements() if (H.element_order(h) == o if bijective else o % H.element_order(h) == 0)]
             for o in orders]
    for images in itertools.product(*pools):
        table = _extend(G, H, gens, images)
        if table is None:
            continue
        hom = GroupHom(G, H, table)
        if bijective and not hom.is_bijective():
            continue
        yield hom


@lru_cache(maxsize=None)
def automorphism_group(G: FiniteGroup) -> tuple[GroupHom, ...]:
    """All automorphisms, identity first, sorted by map table."""
    auts = sorted(_hom_search(G, G, bijective=True), key=lambda a: a.map)
    return tuple(auts)


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> GroupHom | None:
    if G.order != H.order:
        return None
    return next(iter(_hom_search(G, H, bijective=True)), None)


def automorphisms_as_group(auts: Sequence[GroupHom]) -> FiniteGroup:
    """The composition table of a list of automorphisms closed under composition."""
    index = {a.map: i for i, a in enumerate(auts)}
    mul = [[index[a.compose(b).map] for b in auts] for a in auts]
    return _from_table(mul, [f"a{i}" for i in range(len(auts))], "generic", ())


def dihedral_tau(G: FiniteGroup) -> GroupHom:
    """The automorphism r -> r, s -> s*r."""
    if G.family != "dihedral":
        raise ValueError("tau is only defined on dihedral groups")
    n = G.n
    table = tuple(x if x < n else n + (x - n + 1) % n for x in G.elements())
    return GroupHom(G, G, table)


def unit_automorphism(G: FiniteGroup, j: int) -> GroupHom:
    """x -> x^j on Z_n; on D_2n, r -> r^j and s -> s."""
    n = G.n
    if G.family == "cyclic":
        table = tuple((j * x) % n for x in G.elements())
    elif G.family == "dihedral":
        table = tuple((j * x) % n if x < n else n + (j * (x - n)) % n for x in G.elements())
    else:
        raise ValueError("unit automorphisms need a cyclic or dihedral group")
    hom = GroupHom(G, G, table)
    if not hom.is_bijective():
        raise ValueError(f"{j} is not a unit mod {n}")
    return hom


@lru_cache(maxsize=None)
def direct_product(G: FiniteGroup, H: FiniteGroup) -> tuple[FiniteGroup, tuple[GroupHom, GroupHom]]:
    """G x H with (g, h) stored at index g*|H| + h, plus the two embeddings."""
    m = H.order
    mul = []
    for x in range(G.order * m):
        g1, h1 = divmod(x, m)
        mul.append([G.mul[g1][g2] * m + H.mul[h1][h2] for g2 in G.elements() for h2 in H.elements()])
    labels = [f"({a},{b})" for a in G.labels for b in H.labels]
    P = _from_table(mul, labels, "product", (G, H))
    emb_g = GroupHom(G, P, tuple(g * m + H.identity for g in G.elements()))
    emb_h = GroupHom(H, P, tuple(G.identity * m + h for h in H.elements()))
    return P, (emb_g, emb_h)


def crt_isomorphism(a: int, b: int) -> GroupHom:
    """Z_a x Z_b -> Z_ab, (x, y) -> the residue z with z = x mod a, z = y mod b."""
    if gcd(a, b) != 1:
        raise ValueError("factors must be coprime")
    P, _ = direct_product(make_cyclic(a), make_cyclic(b))
    n = a * b
    lookup = {(z % a, z % b): z for z in range(n)}
    table = tuple(lookup[divmod(idx, b)] for idx in range(n))
    return GroupHom(P, make_cyclic(n), table)


# -- recognized subgroups and quotients ------------------------------------

def _rotation_step(G: FiniteGroup, sub: frozenset[int]) -> int:
    """d with sub = <r^d> (or <d> in Z_n); raises if sub is not of that form."""
    n = G.n
    if any(x >= n for x in sub):
        raise UnrecognizedGroupError("subgroup is not inside the rotations")
    d = n // len(sub)
    if n % len(sub) or frozenset(range(0, n, d)) != sub:
        raise UnrecognizedGroupError("not a subgroup of the cyclic part")
    return d


def subgroup(G: FiniteGroup, elements: Iterable[int]) -> tuple[FiniteGroup, GroupHom]:
    """A recognized copy of a subgroup together with its embedding into G.

    Handles the whole group, the trivial group, and cyclic subgroups of Z_n or
    of the rotations of D_2n (<d> ~ Z_{n/d} via k -> k*d).
    """
    sub = frozenset(elements)
    if G.closure(sub) != sub:
        raise ValueError("not a subgroup")
    if len(sub) == G.order:
        return G, identity_hom(G)
    if len(sub) == 1:
        H = make_cyclic(1)
        return H, GroupHom(H, G, (G.identity,))
    if G.family not in ("cyclic", "dihedral"):
        raise UnrecognizedGroupError(f"cannot recognize subgroups of {G.name}")
    d = _rotation_step(G, sub)
    H = make_cyclic(len(sub))
    return H, GroupHom(H, G, tuple(k * d for k in H.elements()))


def quotient(G: FiniteGroup, N: Iterable[int]) -> tuple[FiniteGroup, GroupHom]:
    """G/N for recognized shapes, with the canonical projection.

    Z_n/<d> is returned as Z_d; D_2n/<r^d> as D_2d (D_2n/<r> as Z_2).
    """
    N = frozenset(N)
    if G.closure(N) != N:
        raise ValueError("not a subgroup")
    if not G.is_normal(N):
        raise ValueError("subgroup is not normal")
    if len(N) == 1:
        return G, identity_hom(G)
    if len(N) == G.order:
        Q = make_cyclic(1)
        return Q, GroupHom(G, Q, (0,) * G.order)
    if G.family not in ("cyclic", "dihedral"):
        raise UnrecognizedGroupError(f"cannot recognize quotients of {G.name}")
    d = _rotation_step(G, N)
    n = G.n
    if G.family == "cyclic":
        Q = make_cyclic(d)
        return Q, GroupHom(G, Q, tuple(x % d for x in G.elements()))
    if d == 1:
        Q = make_cyclic(2)
        return Q, GroupHom(G, Q, tuple(x // n for x in G.elements()))
    Q = make_dihedral(d)
    return Q, GroupHom(G, Q, tuple((x // n) * d + (x % n) % d for x in G.elements()))


def rotation_subgroup(G: FiniteGroup, d: int) -> frozenset[int]:
    """<r^d> in D_2n, or <d> in Z_n."""
    n = G.n
    if d < 1 or n % d:
        raise ValueError(f"{d} does not divide {n}")
    return frozenset(range(0, n, d))


def group_from_descriptor(desc: dict | str) -> FiniteGroup:
    """{"family": "dihedral", "n": 6} or the CLI shorthand "dihedral:6"."""
    if isinstance(desc, str):
        family, _, arg = desc.partition(":")
        family = {"Z": "cyclic", "D": "dihedral", "c": "cyclic", "d": "dihedral"}.get(family, family)
        if family == "product":
            parts = arg.split("*")
            G = group_from_descriptor(parts[0])
            for p in parts[1:]:
                G = direct_product(G, group_from_descriptor(p))[0]
            return G
        desc = {"family": family, "n": int(arg)}
    family = desc.get("family")
    if family == "cyclic":
        return make_cyclic(int(desc["n"]))
    if family == "dihedral":
        return make_dihedral(int(desc["n"]))
    if family == "product":
        factors = [group_from_descriptor(f) for f in desc["factors"]]
        G = factors[0]
        for F in factors[1:]:
            G = direct_product(G, F)[0]
        return G
    raise UnrecognizedGroupError(f"unknown group family {family!r}")
