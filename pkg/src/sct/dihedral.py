"""Classification of SCT(D_2n) from the theories of its rotation subgroups.

Every characteristic theory either lies in an interval P_d = [F_d, C_d]
(d | n) or is psi(T) for T in Q; every non-characteristic theory is
psi_0(S) or psi_1(S) for a parity-respecting gluing theory S in R.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .characters import CharacterTable, character_table
from .constructions import (
    act,
    conjugation_action,
    is_A_invariant,
    is_characteristic,
    m_A,
    make_extension,
    star_product,
)
from .core import Sct, assemble, class_partition_from_elements, sct_M
from .cyclotomic import divisors
from .groups import dihedral_tau, make_dihedral, rotation_subgroup
from .lattice import SctLattice, enumerate_scts, interval, join
from .partitions import SetPartition

DEFAULT_MAX_N = 10
EXTENDED_MAX_N = 12


def dihedral_table(n: int) -> CharacterTable:
    return character_table(make_dihedral(n))


def _reflections(n: int) -> frozenset[int]:
    return frozenset(range(n, 2 * n))


def _require_dihedral(S: Sct) -> int:
    if S.group.family != "dihedral":
        raise ValueError("expected a theory of a dihedral group")
    return S.group.n


# -- F_d and C_d ---------------------------------------------------------------

def _check_divisor(n: int, d: int):
    if d < 1 or n % d:
        raise ValueError(f"{d} does not divide {n}")


def _gluing_block(n: int, d: int) -> set[int]:
    """s<r> together with the rotations r^k, d not dividing k."""
    return set(_reflections(n)) | {k for k in range(n) if k % d}


def _chi_rows(table: CharacterTable, ks) -> set[int]:
    out: set[int] = set()
    for k in ks:
        out |= table.resolve_chi(k)
    return out


def explicit_F(n: int, d: int) -> Sct:
    """F_d written out directly rather than as a star product."""
    _check_divisor(n, d)
    table = dihedral_table(n)
    e = n // d
    blocks = [{0}, _gluing_block(n, d)]
    blocks += [{k, (n - k) % n} for k in range(d, n, d)]
    lam = table.index("lambda")
    ks = range(1, n // 2 + 1)
    chars = [{0}, {lam} | _chi_rows(table, [k for k in ks if k % e == 0])]
    for ell in range(1, n // (2 * d) + 1):
        chars.append(_chi_rows(table, [k for k in ks if k % e in (ell % e, (-ell) % e)]))
    classes = class_partition_from_elements(table, _dedupe(blocks))
    return assemble(table, classes, SetPartition.from_blocks(_dedupe(chars)))


def explicit_C(n: int, d: int) -> Sct:
    """C_d written out directly; the block <r^d> - {e} is dropped when empty."""
    _check_divisor(n, d)
    table = dihedral_table(n)
    e = n // d
    blocks = [{0}, _gluing_block(n, d), set(range(d, n, d))]
    lam = table.index("lambda")
    ks = range(1, n // 2 + 1)
    chars = [{0},
             {lam} | _chi_rows(table, [k for k in ks if k % e == 0]),
             _chi_rows(table, [k for k in ks if k % e])]
    classes = class_partition_from_elements(table, _dedupe(blocks))
    return assemble(table, classes, SetPartition.from_blocks(_dedupe(chars)))


def _dedupe(blocks):
    out = []
    for b in blocks:
        b = frozenset(b)
        if b and b not in out:
            out.append(b)
    return out


@lru_cache(maxsize=None)
def _rotation_extension(n: int, d: int):
    table = dihedral_table(n)
    return make_extension(table, rotation_subgroup(table.group, d))


def invariant_inner_theories(n: int, d: int) -> list[Sct]:
    """D_2n-invariant theories of <r^d>, read off SCT(Z_{n/d})."""
    ext = _rotation_extension(n, d)
    conj = conjugation_action(ext.table.group, ext.embedding)
    return [T for T in enumerate_scts(ext.sub_table) if is_A_invariant(T, conj)]


def star_F(n: int, d: int) -> Sct:
    ext = _rotation_extension(n, d)
    inner = m_A(ext.sub_table, conjugation_action(ext.table.group, ext.embedding))
    return star_product(inner, sct_M(ext.quo_table), ext)


def star_C(n: int, d: int) -> Sct:
    ext = _rotation_extension(n, d)
    return star_product(sct_M(ext.sub_table), sct_M(ext.quo_table), ext)


def build_F(n: int, d: int) -> Sct:
    _check_divisor(n, d)
    a, b = star_F(n, d), explicit_F(n, d)
    if a != b:
        raise AssertionError(f"F_{d} for n={n}: star product {a} != explicit {b}")
    return a


def build_C(n: int, d: int) -> Sct:
    _check_divisor(n, d)
    a, b = star_C(n, d), explicit_C(n, d)
    if a != b:
        raise AssertionError(f"C_{d} for n={n}: star product {a} != explicit {b}")
    return a


# -- predicates -------------------------------------------------------------------

def reflection_block(S: Sct) -> tuple[int, ...] | None:
    """The superclass containing all reflections, if S glues reflections."""
    n = _require_dihedral(S)
    refl = _reflections(n)
    for b in S.superclasses():
        if refl <= set(b):
            return b
    return None


def glues_reflections(S: Sct) -> bool:
    return reflection_block(S) is not None


def reflections_are_union(S: Sct) -> bool:
    """s<r> is a union of superclasses."""
    n = _require_dihedral(S)
    refl = _reflections(n)
    return all(set(b) <= refl or not (set(b) & refl) for b in S.superclasses())


def respects_parity(S: Sct) -> bool:
    """Every rotation-only superclass has exponents of a single parity."""
    n = _require_dihedral(S)
    return all(len({k % 2 for k in b}) == 1 for b in S.superclasses() if all(k < n for k in b))


def rotation_complement(S: Sct) -> int | None:
    """d with D_2n minus the reflection superclass equal to <r^d>."""
    n = _require_dihedral(S)
    block = reflection_block(S)
    if block is None:
        return None
    rest = frozenset(range(2 * n)) - set(block)
    for d in divisors(n):
        if rest == rotation_subgroup(S.group, d):
            return d
    return None


# -- subposets --------------------------------------------------------------------------

def subposet_P(lattice: SctLattice, n: int, d: int) -> list[Sct]:
    return interval(lattice, build_F(n, d), build_C(n, d))


def _has_mu_block(S: Sct) -> bool:
    t = S.table
    return (t.index("mu0"), t.index("mu1")) in S.char_partition.blocks


def subposet_Q(lattice: SctLattice, n: int) -> list[Sct]:
    if n % 2:
        return []
    return [S for S in subposet_P(lattice, n, 1) if _has_mu_block(S)]


def in_R(S: Sct) -> bool:
    n = _require_dihedral(S)
    return n % 2 == 0 and glues_reflections(S) and respects_parity(S)


def subposet_R(lattice: SctLattice, n: int) -> list[Sct]:
    """Characteristic gluing theories respecting parity."""
    if n % 2:
        return []
    return [S for S in lattice if in_R(S) and is_characteristic(S)]


# -- psi maps -------------------------------------------------------------------------------

def _reflection_classes(table: CharacterTable) -> tuple[int, int]:
    n = table.group.n
    return table.class_of[n], table.class_of[n + 1]


def psi(S: Sct) -> Sct:
    """Split s<r> into s<r^2>, sr<r^2> and {mu0, mu1} into singletons (S in Q)."""
    n = _require_dihedral(S)
    t = S.table
    if n % 2 or not _has_mu_block(S) or tuple(sorted(_reflections(n))) not in S.superclasses():
        raise ValueError("psi is only defined on Q")
    c0, c1 = _reflection_classes(t)
    classes = [b for b in S.class_partition if c0 not in b] + [(c0,), (c1,)]
    m0, m1 = t.index("mu0"), t.index("mu1")
    chars = [b for b in S.char_partition if m0 not in b] + [(m0,), (m1,)]
    return assemble(t, SetPartition.from_blocks(classes), SetPartition.from_blocks(chars))


def psi_i(S: Sct, i: int) -> Sct:
    """Refine the reflection superclass s<r> + A + B by parity and detach mu_i (S in R)."""
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    if not in_R(S):
        raise ValueError("psi_i is only defined on R")
    t = S.table
    c0, c1 = _reflection_classes(t)
    block = next(b for b in S.class_partition if c0 in b)
    reps = t.representatives
    A = [k for k in block if reps[k] < t.group.n and reps[k] % 2 == 0]
    B = [k for k in block if reps[k] < t.group.n and reps[k] % 2 == 1]
    first, second = (A, B) if i == 0 else (B, A)
    classes = [b for b in S.class_partition if b != block] + [[c0, *first], [c1, *second]]
    mu = t.index(f"mu{i}")
    X = next(b for b in S.char_partition if mu in b)
    chars = [b for b in S.char_partition if b != X] + [[mu], [x for x in X if x != mu]]
    return assemble(t, SetPartition.from_blocks(classes), SetPartition.from_blocks(chars))


def _psi_parts_empty(S: Sct) -> bool:
    block = reflection_block(S)
    return block is not None and all(g >= S.group.n for g in block)


# -- classification ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DihedralSctTag:
    kind: str  # "InPd" | "PsiImage" | "PsiIImage"
    d: int | None = None
    source: Sct | None = None
    i: int | None = None

    def __str__(self):
        if self.kind == "InPd":
            return f"P_{self.d}"
        if self.kind == "PsiImage":
            return "psi(Q)"
        return f"psi_{self.i}(R)"


def _guard(n: int, extended: bool):
    limit = EXTENDED_MAX_N if extended else DEFAULT_MAX_N
    if n < 1 or n > limit:
        raise ValueError(f"n={n} outside the supported range 1..{limit}"
                         + ("" if extended else " (use the extended flag for n <= 12)"))


def P_via_star(n: int, d: int) -> list[Sct]:
    """P_d as the star-product image of the invariant theories of <r^d>."""
    ext = _rotation_extension(n, d)
    top = sct_M(ext.quo_table)
    return [star_product(T, top, ext) for T in invariant_inner_theories(n, d)]


def R_via_star(n: int) -> list[Sct]:
    """R as the star products T * M over <r^d> with Res(mu0) a T-superclass function."""
    if n % 2:
        return []
    out = []
    for d in divisors(n):
        ext = _rotation_extension(n, d)
        top = sct_M(ext.quo_table)
        for T in invariant_inner_theories(n, d):
            # mu0(r^(d k)) = (-1)^(d k)
            if all(len({(d * x) % 2 for x in b}) == 1 for b in T.superclasses()):
                out.append(star_product(T, top, ext))
    return out


def classify(n: int, extended: bool = False) -> list[tuple[Sct, DihedralSctTag]]:
    """Build SCT(D_2n) from the P_d intervals and the psi maps, each theory tagged."""
    _guard(n, extended)
    out: list[tuple[Sct, DihedralSctTag]] = []
    seen: dict[Sct, DihedralSctTag] = {}

    def add(S, tag):
        if S in seen:
            raise AssertionError(f"{S} produced twice ({seen[S]} and {tag})")
        seen[S] = tag
        out.append((S, tag))

    P = {d: P_via_star(n, d) for d in divisors(n)}
    for d, members in P.items():
        if build_F(n, d) not in members or build_C(n, d) not in members:
            raise AssertionError(f"P_{d} does not contain its endpoints")
        for S in members:
            add(S, DihedralSctTag("InPd", d=d))
    if n % 2 == 0:
        Q = [S for S in P[1] if _has_mu_block(S)]
        for S in Q:
            add(psi(S), DihedralSctTag("PsiImage", source=S))
        R = [S for members in P.values() for S in members if respects_parity(S)]
        for S in R:
            if _psi_parts_empty(S):
                continue  # psi_0 = psi_1 = psi, already emitted from Q
            for i in (0, 1):
                add(psi_i(S, i), DihedralSctTag("PsiIImage", source=S, i=i))
    return out


@dataclass
class ClassificationReport:
    n: int
    count_enumerated: int = 0
    count_classified: int = 0
    failures: dict[str, list[Sct]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def fail(self, check: str, S: Sct):
        self.failures.setdefault(check, []).append(S)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        bad = {k: len(v) for k, v in self.failures.items() if v}
        return (f"n={self.n}: {status} enumerated={self.count_enumerated} "
                f"classified={self.count_classified}" + (f" failures={bad}" if bad else ""))


def verify_classification(n: int, extended: bool = False, lattice: SctLattice | None = None) -> ClassificationReport:
    """Check the construction and its structural claims against brute-force enumeration."""
    _guard(n, extended)
    lattice = lattice or enumerate_scts(dihedral_table(n))
    report = ClassificationReport(n, count_enumerated=len(lattice))
    classified = classify(n, extended)
    report.count_classified = len(classified)
    built = {S for S, _ in classified}
    # (i) classification equals enumeration
    for S in lattice:
        if S not in built:
            report.fail("classification misses", S)
    for S in built:
        if S not in lattice:
            report.fail("classification extra", S)
    tau = dihedral_tau(lattice.group)
    for S in lattice:
        char = is_characteristic(S)
        # (ii) characteristic criterion
        if char != (glues_reflections(S) or reflections_are_union(S)):
            report.fail("characteristic criterion", S)
        # (iii) gluing theories sit in P_d for d = rotation complement
        if glues_reflections(S):
            d = rotation_complement(S)
            if d is None or not (build_F(n, d) <= S <= build_C(n, d)):
                report.fail("gluing interval", S)
        # (iv) non-characteristic round trip
        if not char:
            J = join(S, act(tau, S))
            if not in_R(J) or S not in (psi_i(J, 0), psi_i(J, 1)):
                report.fail("non-characteristic round trip", S)
    # (v) the P_d and psi(Q) are pairwise disjoint
    groups = [set(subposet_P(lattice, n, d)) for d in divisors(n)]
    groups.append({psi(S) for S in subposet_Q(lattice, n)})
    for a in range(len(groups)):
        for b in range(a + 1, len(groups)):
            for S in groups[a] & groups[b]:
                report.fail("disjointness", S)
    return report
