import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import has_completion, naive_is_subalgebra, small_tables
from sct.characters import character_table
from sct.constructions import mm
from sct.core import (
    InvalidTheoryError,
    Sct,
    assemble,
    build_sct,
    derive_char_partition,
    is_valid_superclass_partition,
    refines,
    sct_from_json,
    sct_M,
    sct_m,
    sigma_block_constant,
    supercharacter_matrix,
)
from sct.groups import make_cyclic, make_dihedral, rotation_subgroup
from sct.lattice import enumerate_scts
from sct.partitions import SetPartition, restricted_growth_strings


def Z(n):
    return character_table(make_cyclic(n))


def D(n):
    return character_table(make_dihedral(n))


def class_partition(labels):
    return SetPartition.from_labels((0, *(x + 1 for x in labels)))


@pytest.mark.parametrize("table", small_tables(12), ids=lambda T: T.group.name)
def test_extremes_are_valid(table):
    c = len(table.classes)
    assert is_valid_superclass_partition(table, SetPartition.singletons(c))
    if c > 1:
        M = SetPartition.from_blocks([[0], range(1, c)])
        assert is_valid_superclass_partition(table, M)
        assert derive_char_partition(table, M) == M


def test_z4_invalid_partition():
    P = SetPartition.from_blocks([[0], [1, 2], [3]])
    assert not is_valid_superclass_partition(Z(4), P)
    assert not naive_is_subalgebra(Z(4), P)
    with pytest.raises(InvalidTheoryError, match="not a subalgebra"):
        build_sct(Z(4), P)


def test_identity_block_required():
    with pytest.raises(InvalidTheoryError):
        is_valid_superclass_partition(Z(4), SetPartition.from_blocks([[0, 2], [1, 3]]))


def test_derived_partitions():
    T = Z(4)
    P = SetPartition.from_blocks([[0], [2], [1, 3]])
    assert derive_char_partition(T, P) == SetPartition.from_blocks([[0], [2], [1, 3]])
    assert derive_char_partition(T, SetPartition.singletons(4)) == SetPartition.singletons(4)


def test_small_builds():
    S = build_sct(D(3), SetPartition.singletons(3))
    assert len(S.class_partition) == len(S.char_partition) == 3
    M5 = sct_M(Z(5))
    assert len(M5.class_partition) == len(M5.char_partition) == 2
    assert len(sct_m(D(5))) == 4
    for table in small_tables(12):
        assert (sct_m(table) == sct_M(table)) == (table.group.order <= 2)
        if table.group.order > 1:
            assert len(sct_M(table)) == 2


@pytest.mark.parametrize("table", small_tables(12), ids=lambda T: T.group.name)
def test_checker_agrees_with_group_algebra(table):
    c = len(table.classes)
    limit = 2000
    for count, rgs in enumerate(restricted_growth_strings(c - 1)):
        if count >= limit:
            break
        P = class_partition(rgs)
        assert is_valid_superclass_partition(table, P) == naive_is_subalgebra(table, P)


@pytest.mark.parametrize("table", small_tables(8), ids=lambda T: T.group.name)
def test_duality_exhaustive(table):
    c = len(table.classes)
    for rgs in restricted_growth_strings(c - 1):
        P = class_partition(rgs)
        if is_valid_superclass_partition(table, P):
            X = derive_char_partition(table, P)
            assert len(X) == len(P) and sigma_block_constant(table, P, X)
            assert has_completion(table, P)
        else:
            assert not has_completion(table, P)


@pytest.mark.parametrize("table", [Z(6), D(4), D(6)], ids=lambda T: T.group.name)
def test_refinement_sides_agree(table):
    L = enumerate_scts(table)
    for S in L:
        assert sum(len(b) for b in S.superclasses()) == table.group.order
        assert refines(sct_m(table), S) and refines(S, sct_M(table))
        for T in L:
            assert S.class_partition.refines(T.class_partition) == S.char_partition.refines(T.char_partition)


def test_supercharacter_matrices():
    for table in (Z(5), D(4), D(5)):
        M = supercharacter_matrix(sct_M(table))
        assert M[1][1] == -1 and M[0] == [1, 1]
        m = supercharacter_matrix(sct_m(table))
        degs = table.degrees
        assert m == [[degs[i] * v for v in row] for i, row in enumerate(table.rows)]
    T = D(6)
    S = mm(T, rotation_subgroup(T.group, 1))
    assert len(supercharacter_matrix(S)) == len(S)


def test_assemble_rejects_wrong_characters():
    T = Z(4)
    P = SetPartition.from_blocks([[0], [2], [1, 3]])
    with pytest.raises(AssertionError):
        assemble(T, P, SetPartition.from_blocks([[0], [1], [2, 3]]))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([("cyclic", 8), ("cyclic", 10), ("dihedral", 4), ("dihedral", 6)]), st.data())
def test_json_round_trip(spec, data):
    table = Z(spec[1]) if spec[0] == "cyclic" else D(spec[1])
    S = data.draw(st.sampled_from(enumerate_scts(table).theories))
    again = sct_from_json(json.dumps(S.to_json()))
    assert isinstance(again, Sct) and again == S


def test_malformed_json():
    with pytest.raises(InvalidTheoryError):
        sct_from_json({"group": {"family": "cyclic", "n": 4}})
    bad = {"group": {"family": "cyclic", "n": 4}, "classes": [["0"], ["1", "2"], ["3"]],
           "chars": [["1"], ["xi_1", "xi_2"], ["xi_3"]]}
    with pytest.raises(InvalidTheoryError):
        sct_from_json(bad)
