import cmath

import numpy as np
import pytest

from sct.characters import (
    character_table,
    constituents,
    induced_constituents,
    inflate,
    inner_product_scaled,
    product_vector,
    restrict,
    table_product,
)
from sct.constructions import make_extension, make_subgroup
from sct.cyclotomic import Cyclo
from sct.groups import crt_isomorphism, direct_product, make_cyclic, make_dihedral, rotation_subgroup


def numeric(v: Cyclo) -> complex:
    z = cmath.exp(2j * cmath.pi / v.conductor)
    return sum(c * z ** k for k, c in enumerate(v.coeffs))


def dihedral_rep(n, m):
    """Matrices of the 2-dimensional representation r -> rotation by 2 pi m / n, s -> flip."""
    t = 2 * np.pi * m / n
    r = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
    s = np.diag([1.0, -1.0])
    mats = [np.linalg.matrix_power(r, k) for k in range(n)]
    return mats + [s @ mats[k] for k in range(n)]


def tables():
    for n in range(1, 31):
        yield character_table(make_cyclic(n))
        yield character_table(make_dihedral(n))


def assert_orthogonal(T):
    order = T.group.order
    assert len(T.rows) == len(T.classes)
    for i, a in enumerate(T.rows):
        for j, b in enumerate(T.rows):
            assert inner_product_scaled(T, a, b) == (order if i == j else 0)
    assert sum(d * d for d in T.degrees) == order


@pytest.mark.parametrize("T", list(tables()), ids=lambda T: T.group.name)
def test_row_orthogonality(T):
    assert_orthogonal(T)


def test_product_tables_orthogonal():
    for A, B in [(make_cyclic(2), make_dihedral(3)), (make_cyclic(3), make_cyclic(4)),
                 (make_cyclic(2), make_cyclic(2))]:
        T = table_product(character_table(A), character_table(B))
        assert_orthogonal(T)
        assert T.names[0] == "1"
    klein = table_product(character_table(make_cyclic(2)), character_table(make_cyclic(2)))
    assert all(v.as_integer() in (1, -1) for row in klein.rows for v in row)


def test_product_with_trivial_table():
    T = character_table(make_dihedral(4))
    P = table_product(T, character_table(make_cyclic(1)))
    assert [list(r) for r in P.rows] == [list(r) for r in T.rows]


def test_z2_times_z3_matches_z6():
    P, _ = direct_product(make_cyclic(2), make_cyclic(3))
    TP = character_table(P)
    T6 = character_table(make_cyclic(6))
    iso = crt_isomorphism(2, 3)
    # pull every Z_6 row back along the isomorphism and find it among the product rows
    pulled = {tuple(T6.rows[i][T6.class_of[iso(g)]] for g in P.elements()) for i in range(6)}
    mine = {tuple(TP.value(i, g) for g in P.elements()) for i in range(6)}
    assert pulled == mine


@pytest.mark.parametrize("n", range(3, 16))
def test_dihedral_values_match_matrix_traces(n):
    T = character_table(make_dihedral(n))
    G = T.group
    for m in range(1, (n - 1) // 2 + 1):
        row = T.index(f"chi_{m}")
        reps = dihedral_rep(n, m)
        for g in G.elements():
            assert abs(numeric(T.value(row, g)) - np.trace(reps[g])) < 1e-9
    for i, d in enumerate(T.degrees):
        if d == 1:
            for g in G.elements():
                for h in G.elements():
                    assert T.value(i, G.mul[g][h]) == T.value(i, g) * T.value(i, h)


def test_documented_values():
    T4 = character_table(make_cyclic(4))
    assert T4.value(2, 2) == 1
    assert character_table(make_cyclic(1)).rows == ((Cyclo.from_int(1),),)
    T5 = character_table(make_cyclic(5))
    assert sum(d * d for d in T5.degrees) == 5
    D10 = character_table(make_dihedral(5))
    assert D10.value(D10.index("chi_1"), 5) == 0
    assert D10.value(D10.index("lambda"), 5) == -1
    D12 = character_table(make_dihedral(6))
    mu0 = D12.index("mu0")
    assert [D12.value(mu0, k) for k in range(6)] == [1, -1, 1, -1, 1, -1]
    rs = D12.group.mul[1][6]
    assert D12.value(mu0, rs) == -1
    D4 = character_table(make_dihedral(2))
    assert D4.names == ("1", "lambda", "mu0", "mu1") and D4.degrees == (1, 1, 1, 1)


def chi(T, a):
    return T.row_sum(T.resolve_chi(a))


@pytest.mark.parametrize("n", range(2, 21, 2))
def test_mu_and_chi_identities(n):
    T = character_table(make_dihedral(n))
    one, lam = T.rows[0], T.rows[T.index("lambda")]
    mu = [T.rows[T.index("mu0")], T.rows[T.index("mu1")]]
    h = n // 2
    for i in (0, 1):
        assert product_vector(mu[i], mu[i]) == one
        assert product_vector(mu[i], lam) == mu[1 - i]
        for m in range(h + 1):
            assert product_vector(mu[i], chi(T, m)) == chi(T, h - m)
    assert product_vector(mu[0], mu[1]) == lam
    for l in range(h + 1):
        for m in range(h + 1):
            assert product_vector(chi(T, l), chi(T, m)) == tuple(
                a + b for a, b in zip(chi(T, l + m), chi(T, abs(l - m))))


@pytest.mark.parametrize("n", range(1, 13))
def test_chi_convention(n):
    T = character_table(make_dihedral(n))
    for a in range(-n, 2 * n + 1):
        assert chi(T, a) == T.chi_vector(a)
        assert T.resolve_chi(a) == T.resolve_chi(-a) == T.resolve_chi(a + n)


def test_restriction_inner_product():
    D10 = character_table(make_dihedral(5))
    sub = make_subgroup(D10, rotation_subgroup(D10.group, 1))
    res = restrict(D10, sub.sub_table, sub.embedding, D10.rows[D10.index("chi_1")])
    assert inner_product_scaled(sub.sub_table, res, sub.sub_table.rows[1]) == 5


@pytest.mark.parametrize("n", range(3, 13))
def test_induction_from_rotations(n):
    T = character_table(make_dihedral(n))
    sub = make_subgroup(T, rotation_subgroup(T.group, 1))
    Z = sub.sub_table
    assert induced_constituents(T, Z, sub.embedding, Z.rows[0]) == {0, T.index("lambda")}
    for m in range(1, (n + 1) // 2):
        assert induced_constituents(T, Z, sub.embedding, Z.rows[m]) == {T.index(f"chi_{m}")}


@pytest.mark.parametrize("n", range(2, 11))
def test_frobenius_consistency(n):
    T = character_table(make_dihedral(n))
    for d in range(1, n + 1):
        if n % d:
            continue
        sub = make_subgroup(T, rotation_subgroup(T.group, d))
        for j, row in enumerate(sub.sub_table.rows):
            ind = induced_constituents(T, sub.sub_table, sub.embedding, row)
            for i, psi in enumerate(T.rows):
                res = restrict(T, sub.sub_table, sub.embedding, psi)
                assert (i in ind) == (j in constituents(sub.sub_table, res))


@pytest.mark.parametrize("n", range(2, 13))
def test_inflation_of_lambda(n):
    T = character_table(make_dihedral(n))
    for d in range(2, n + 1):
        if n % d:
            continue
        ext = make_extension(T, rotation_subgroup(T.group, d))
        Q = ext.quo_table
        lam = inflate(Q, T, ext.projection, Q.rows[Q.index("lambda")])
        assert lam == T.rows[T.index("lambda")]
