import pytest

from ncgkit.algebra import wedderburn_blocks
from ncgkit.errors import ValidationError
from ncgkit.groupoid import (FiniteGroupoid, action_groupoid, build_groupoid, group_groupoid, groupoid_algebra,
                             pairs_groupoid, relation_groupoid)
from ncgkit.groups import cyclic_group


def translation(n):
    G = cyclic_group(n)
    return action_groupoid(G, n, [[G.mul(g, x) for x in range(n)] for g in range(n)])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pair_groupoid_is_matrix_algebra(n):
    A = groupoid_algebra(pairs_groupoid(n))
    assert A.dim == n * n
    assert wedderburn_blocks(A) == [n]


@pytest.mark.parametrize("n", [2, 3])
def test_translation_action_groupoid(n):
    assert wedderburn_blocks(groupoid_algebra(translation(n))) == [n]


def test_group_groupoid_is_group_algebra():
    A = groupoid_algebra(group_groupoid(cyclic_group(3)))
    assert wedderburn_blocks(A) == [1, 1, 1]


def test_relation_groupoid():
    G = relation_groupoid([[0, 1], [2]])
    assert sorted(wedderburn_blocks(groupoid_algebra(G))) == [1, 2]


def test_json_round_trip():
    G = pairs_groupoid(3)
    H = FiniteGroupoid.from_json(G.to_json())
    assert H.to_json() == G.to_json()
    assert build_groupoid({"kind": "pairs", "n": 2}).to_json() == pairs_groupoid(2).to_json()


def test_bad_action_rejected():
    G = cyclic_group(2)
    with pytest.raises(ValidationError):
        action_groupoid(G, 2, [[1, 0], [1, 0]])


def test_involution_is_inversion():
    G = pairs_groupoid(2)
    A = groupoid_algebra(G)
    for g in range(len(G)):
        x = A.basis(g)
        assert x.star() == A.basis(G.inverses[g])
