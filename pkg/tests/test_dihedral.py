import pytest

from sct.characters import character_table
from sct.constructions import MM, act, is_characteristic, mm
from sct.core import sct_M, sct_m
from sct.cyclotomic import divisors
from sct.dihedral import (
    build_C,
    build_F,
    classify,
    explicit_C,
    explicit_F,
    glues_reflections,
    in_R,
    psi,
    psi_i,
    R_via_star,
    reflections_are_union,
    respects_parity,
    star_C,
    star_F,
    subposet_P,
    subposet_Q,
    subposet_R,
    verify_classification,
)
from sct.groups import dihedral_tau, make_dihedral, rotation_subgroup
from sct.lattice import enumerate_scts, join


def D(n):
    return character_table(make_dihedral(n))


def classes(S):
    return sorted(S.superclasses())


@pytest.mark.parametrize("n", range(1, 13))
def test_endpoints(n):
    T = D(n)
    N = rotation_subgroup(T.group, 1)
    assert build_F(n, n) == build_C(n, n) == sct_M(T)
    assert build_F(n, 1) == mm(T, N) and build_C(n, 1) == MM(T, N)


@pytest.mark.parametrize("n", range(1, 13))
def test_explicit_and_star_forms_agree(n):
    for d in divisors(n):
        assert explicit_F(n, d) == star_F(n, d)
        assert explicit_C(n, d) == star_C(n, d)
        assert build_F(n, d) <= build_C(n, d)


def test_F2_for_n6():
    F = build_F(6, 2)
    assert classes(F) == [(0,), (1, 3, 5, *range(6, 12)), (2, 4)]
    assert glues_reflections(F) and respects_parity(F)
    assert not reflections_are_union(F)


def test_reflection_predicates():
    T = D(4)
    assert reflections_are_union(sct_m(T)) and not glues_reflections(sct_m(T))
    assert glues_reflections(sct_M(T)) and not reflections_are_union(sct_M(T))
    assert not respects_parity(build_C(4, 1))  # r, r^2, r^3 share a block
    with pytest.raises(ValueError):
        explicit_F(6, 4)


@pytest.mark.parametrize("n", range(3, 11))
def test_subposets(n):
    L = enumerate_scts(D(n))
    assert subposet_P(L, n, n) == [sct_M(L.table)]
    Q = subposet_Q(L, n)
    if n % 2:
        assert Q == [] and subposet_R(L, n) == []
    for S in Q:
        P = psi(S)
        assert P <= S and P != S and len(P) == len(S) + 1
        assert join(P, mm(L.table, rotation_subgroup(L.group, 1))) == S
    assert sorted(map(str, subposet_R(L, n))) == sorted(map(str, R_via_star(n)))


def test_small_cases():
    assert subposet_P(enumerate_scts(D(3)), 3, 1) == [sct_m(D(3))]
    assert {S for S, _ in classify(3)} == {sct_m(D(3)), sct_M(D(3))}
    assert len(classify(4)) == len(enumerate_scts(D(4))) == 9


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_psi_maps(n):
    L = enumerate_scts(D(n))
    tau = dihedral_tau(L.group)
    for S in subposet_R(L, n):
        a, b = psi_i(S, 0), psi_i(S, 1)
        block = next(x for x in S.superclasses() if n in x)
        if all(g >= n for g in block):
            assert a == b
            continue
        assert a != b and act(tau, a) == b and act(tau, b) == a
        assert not is_characteristic(a) and not is_characteristic(b)
        assert join(a, b) == S
    with pytest.raises(ValueError):
        psi_i(sct_m(L.table), 0)


def test_psi_rejects_theories_outside_domain():
    with pytest.raises(ValueError):
        psi(sct_M(D(6)))
    with pytest.raises(ValueError):
        psi(build_F(5, 1))
    assert not in_R(build_F(5, 1))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 8])
def test_verify_small(n):
    report = verify_classification(n)
    assert report.ok, report.summary()
    assert report.count_enumerated == report.count_classified


def test_classification_tags():
    tags = {str(t) for _, t in classify(6)}
    assert {"P_1", "P_2", "P_3", "P_6", "psi(Q)", "psi_0(R)", "psi_1(R)"} <= tags


def test_range_guard():
    with pytest.raises(ValueError, match="extended"):
        classify(11)
    assert len(classify(11, extended=True)) == 3
    with pytest.raises(ValueError):
        classify(13, extended=True)


def test_klein_four_breaks_characteristic_criterion():
    # D_4 is Z_2 x Z_2: an automorphism swaps r with s, so the theory
    # {e} | {r} | s<r> is non-characteristic despite gluing the reflections
    report = verify_classification(2)
    assert not report.ok
    bad = report.failures["characteristic criterion"]
    assert [classes(S) for S in bad] == [[(0,), (1,), (2, 3)]]
    assert set(report.failures) == {"characteristic criterion", "non-characteristic round trip"}
    assert report.count_enumerated == report.count_classified == 5
