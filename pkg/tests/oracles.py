"""Slow, independent reference computations used by the tests."""
import cmath
from functools import lru_cache

import numpy as np

from sct.characters import character_table
from sct.groups import group_from_descriptor

# every group of order <= 12 in the recognized families
SMALL_GROUPS = (
    [f"cyclic:{n}" for n in range(1, 13)]
    + [f"dihedral:{n}" for n in range(1, 7)]
    + [
        "product:cyclic:2*cyclic:2",
        "product:cyclic:2*cyclic:3",
        "product:cyclic:2*cyclic:4",
        "product:cyclic:2*cyclic:2*cyclic:2",
        "product:cyclic:3*cyclic:3",
        "product:cyclic:2*cyclic:5",
        "product:cyclic:2*cyclic:6",
        "product:cyclic:3*cyclic:4",
        "product:cyclic:2*cyclic:2*cyclic:3",
        "product:cyclic:2*dihedral:3",
        "product:cyclic:2*dihedral:2",
        "product:dihedral:2*cyclic:3",
    ]
)


def small_tables(max_order):
    out = []
    for spec in SMALL_GROUPS:
        G = group_from_descriptor(spec)
        if G.order <= max_order:
            out.append(character_table(G))
    return out


def numeric(v) -> complex:
    z = cmath.exp(2j * cmath.pi / v.conductor)
    return sum(c * z ** k for k, c in enumerate(v.coeffs))


def superclass_vectors(table, P):
    G = table.group
    out = []
    for block in P:
        vec = [0] * G.order
        for k in block:
            for g in table.classes.blocks[k]:
                vec[g] = 1
        out.append(vec)
    return out


def naive_is_subalgebra(table, P) -> bool:
    """Multiply superclass sums in the group algebra and test block-constancy directly."""
    G = table.group
    sums = superclass_vectors(table, P)
    for a in sums:
        for b in sums:
            prod = [0] * G.order
            for g, x in enumerate(a):
                if x:
                    for h, y in enumerate(b):
                        if y:
                            prod[G.mul[g][h]] += 1
            for s in sums:
                if len({prod[g] for g, x in enumerate(s) if x}) > 1:
                    return False
    return True


@lru_cache(maxsize=None)
def _subset_sums(table):
    """Row k: sum of deg(chi) chi over the characters in bitmask k."""
    W = np.array([[row[0].as_integer() * numeric(v) for v in row] for row in table.rows])
    r = len(table.rows)
    masks = np.arange(1 << r)
    bits = (masks[:, None] >> np.arange(r)) & 1
    return bits @ W


def has_completion(table, P) -> bool:
    """Is there a partition X of Irr(G) with |X| = |P| and every sigma_X constant on P?

    Exhaustive: admissible row subsets are found numerically, then an exact
    cover by exactly |P| of them is searched for.
    """
    sums = _subset_sums(table)
    r = len(table.rows)
    blocks = [list(b) for b in P]
    ok = np.ones(len(sums), dtype=bool)
    for b in blocks:
        ok &= np.all(np.abs(sums[:, b] - sums[:, [b[0]]]) < 1e-9, axis=1)
    good = set(np.nonzero(ok)[0].tolist()) - {0}
    target = len(blocks)
    full = (1 << r) - 1

    def search(covered, used):
        if covered == full:
            return used == target
        if used == target:
            return False
        low = (~covered & full) & -(~covered & full)
        rest = full & ~covered
        sub = rest
        while sub:
            if sub & low and sub in good and search(covered | sub, used + 1):
                return True
            sub = (sub - 1) & rest
        return False

    return search(0, 0)
