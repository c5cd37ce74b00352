import json
from pathlib import Path

import pytest

from artinhom.braidrep import (TAU, TAU_INV, BraidedSpace, GenericInduced, GenRep, IndSlotVector,
                               LeftBraidedSpace, SeparableInduced, check_braid_equation, check_lax_sum,
                               check_lbvs, check_separable, dualize, epsilon_twist,
                               induced_action_generic, induced_action_separable, one_dim_params,
                               one_dim_space, space_from_json, space_to_json, tensor_action,
                               tensor_basis)
from artinhom.exactfield import QQ, field
from artinhom.fixtures import (diagonal_braiding, hecke_braiding, hecke_space, swap,
                               squared_space)
from artinhom.linalg import LinearMap
from artinhom.shuffles import perm_of_word

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def one_dim_fixtures():
    z = field(3).gen()
    return [one_dim_space(2, 3, 5), one_dim_space(1, -1, 1), one_dim_space(-z, z * z, 2, z.ctx)]


def left_fixtures():
    return one_dim_fixtures() + [hecke_space(2), squared_space(diagonal_braiding([[2, 3], [5, 7]]), 2)]


def test_braid_equation():
    assert check_braid_equation(LinearMap.scalar(QQ(7), QQ), 1)
    assert check_braid_equation(swap(2, 2), 2)
    assert check_braid_equation(hecke_braiding(3), 2)
    bad = LinearMap.from_dense([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 1]], QQ)
    assert not check_braid_equation(bad, 2)
    with pytest.raises(ValueError):
        check_braid_equation(swap(2, 2), 3)


def test_lbvs():
    assert check_lbvs(LinearMap.scalar(QQ(2), QQ), LinearMap.scalar(QQ(3), QQ), (1, 1))
    s = hecke_braiding(2)
    assert check_lbvs(s, s @ s, (2, 2))
    sigma = diagonal_braiding([[2, 3], [5, 7]])
    tau = LinearMap(2, 2, {(0, 0): 11, (1, 1): 13}, QQ)
    assert check_lbvs(sigma, tau, (2, 1))


def test_separability_examples():
    s = hecke_braiding(2)
    assert check_separable(s, s @ s, s, (2, 2))
    assert not check_separable(s, s @ s, swap(2, 2), (2, 2))
    space = one_dim_space(2, 3, 5)
    assert space.separable and check_lax_sum(space.sigma, space.tau, space.phi, (1, 1))


@pytest.mark.parametrize("space", left_fixtures())
def test_separable_iff_lax_sum(space):
    dims = (space.dim_v, space.dim_w)
    assert check_separable(space.sigma, space.tau, space.phi, dims) == \
        check_lax_sum(space.sigma, space.tau, space.phi, dims)


def test_lax_sum_detects_bad_phi():
    s = hecke_braiding(2)
    assert not check_lax_sum(s, s @ s, swap(2, 2), (2, 2))
    with pytest.raises(ValueError):
        check_lax_sum(s, s @ s, None, (2, 2))


def test_invalid_spaces_are_rejected():
    s = hecke_braiding(2)
    with pytest.raises(ValueError):
        LeftBraidedSpace(2, 2, s, s @ s, swap(2, 2))
    with pytest.raises(ValueError):
        BraidedSpace(2, LinearMap.from_dense([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 1]], QQ))


def test_tensor_action_one_dim():
    space = one_dim_space(2, 3, 5)
    v = {(0, 0): QQ(1)}
    assert tensor_action(space, [], v, "VV") == v
    assert tensor_action(space, [1, 1], v, "VV") == {(0, 0): QQ(4)}
    assert tensor_action(space, [TAU], {(0, 0, 0): QQ(1)}, "VVW") == {(0, 0, 0): QQ(3)}
    assert tensor_action(space, [TAU_INV, -1], {(0, 0, 0): QQ(1)}, "VVW") == {(0, 0, 0): QQ(1) / 6}
    with pytest.raises(ValueError):
        tensor_action(space, [2], {(0, 0, 0): QQ(1)}, "VVW")


@pytest.mark.parametrize("n", range(0, 4))
def test_genrep_relations(n):
    assert GenRep.from_space(hecke_space(2), n).check_relations()
    assert GenRep.from_space(hecke_space(2).braided_part(), max(n, 1)).check_relations()
    assert GenRep.one_dim(n, QQ(2), QQ(3)).check_relations()


def test_genrep_detects_broken_relation():
    rep = GenRep("B", 2, 2, {1: LinearMap.from_dense([[1, 1], [0, 1]], QQ),
                             TAU: LinearMap.from_dense([[1, 0], [1, 1]], QQ)}, QQ)
    assert not rep.check_relations()
    with pytest.raises(ValueError):
        GenRep("B", 2, 1, {1: LinearMap.scalar(QQ(2), QQ)}, QQ)


def test_separable_action_one_dim():
    q, p, u = QQ(2), QQ(3), QQ(5)
    space = one_dim_space(q, p, u)
    n = 3
    key = (0,) * (n + 1)
    v = IndSlotVector(n, {n + 1: {key: QQ(1)}})
    assert induced_action_separable(space, n, n, v) == IndSlotVector(n, {n: {key: u}})
    v = IndSlotVector(n, {2: {key: QQ(1)}})
    assert induced_action_separable(space, n, 2, v) == IndSlotVector(n, {3: {key: p / u}})
    v = IndSlotVector(n, {4: {key: QQ(1)}})
    assert induced_action_separable(space, n, 1, v) == IndSlotVector(n, {4: {key: q}})
    with pytest.raises(ValueError):
        induced_action_separable(LeftBraidedSpace(1, 1, space.sigma, space.tau), n, 1, v)


def test_generic_action_cases():
    rep = GenRep.from_space(hecke_space(2), 2)
    ell = {3: QQ(1)}
    slot, vec = induced_action_generic(rep, 2, 1, 3, ell)
    assert slot == 3 and vec == rep.matrix(1).apply(ell)
    slot, vec = induced_action_generic(rep, 2, 2, 3, ell)
    assert slot == 2 and vec == ell
    slot, vec = induced_action_generic(rep, 2, 1, 1, ell)
    assert slot == 2


def _relations_hold(model):
    N = model.strands
    for key in model.basis():
        for i in range(1, N):
            for j in range(i + 1, N):
                lhs, rhs = ((i, j, i), (j, i, j)) if j == i + 1 else ((i, j), (j, i))
                if model.apply_word(lhs, {key: model.ctx.one()}) != model.apply_word(rhs, {key: model.ctx.one()}):
                    return False
            if model.apply_word((i, -i), {key: model.ctx.one()}) != {key: model.ctx.one()}:
                return False
    return True


@pytest.mark.parametrize("n", range(1, 5))
def test_induced_relations_one_dim(n):
    for space in one_dim_fixtures():
        assert _relations_hold(SeparableInduced(space, n))
        assert _relations_hold(GenericInduced(GenRep.from_space(space, n)))


@pytest.mark.parametrize("n", range(1, 3))
def test_induced_relations_two_dim(n):
    assert _relations_hold(SeparableInduced(hecke_space(2), n))
    assert _relations_hold(GenericInduced(GenRep.from_space(hecke_space(2), n)))


@pytest.mark.parametrize("n", range(1, 5))
def test_generic_and_separable_models_agree(n):
    spaces = one_dim_fixtures() + ([hecke_space(2)] if n <= 2 else [])
    for space in spaces:
        sep = SeparableInduced(space, n)
        gen = GenericInduced(GenRep.from_space(space, n))
        inner = tensor_basis((space.dim_v,) * n + (space.dim_w,))

        def ident(vec):
            out = {}
            for (i, idx), c in vec.items():
                for k, v in sep.identification(i, inner[idx]).items():
                    out[k] = out.get(k, space.ctx.zero()) + c * v
            return {k: v for k, v in out.items() if v}

        for key in gen.basis():
            for g in list(range(1, n + 1)) + [-g for g in range(1, n + 1)]:
                assert sep.apply_gen(g, ident({key: space.ctx.one()})) == \
                    ident(gen.apply_gen(g, {key: space.ctx.one()}))


def test_coset_indexing():
    space = one_dim_space(2, 3, 5)
    n = 3
    sep = SeparableInduced(space, n)
    key = (0,) * (n + 1)
    for word in [(1, 2, 3), (3, -2, 1, 1), (2, 3, 2, -1)]:
        perm = perm_of_word(word, n + 1)
        for i in range(1, n + 2):
            image = sep.apply_word(word, {(i, key): QQ(1)})
            assert {slot for slot, _ in image} == {perm[i - 1]}


def test_dualize():
    space = one_dim_space(2, 3, 5)
    assert one_dim_params(dualize(space)) == (QQ(1) / 2, QQ(1) / 3, QQ(1) / 5)
    for s in left_fixtures():
        twice = dualize(dualize(s))
        assert twice.sigma == s.sigma and twice.tau == s.tau and twice.phi == s.phi
    d = dualize(hecke_space(2))
    assert check_braid_equation(d.sigma, 2) and d.separable


def test_epsilon_twist():
    space = one_dim_space(2, 3, 5)
    assert one_dim_params(epsilon_twist(space)) == (QQ(-2), QQ(3), QQ(-5))
    for s in left_fixtures():
        t = epsilon_twist(s)
        assert t.separable
        back = epsilon_twist(t)
        assert back.sigma == s.sigma and back.phi == s.phi


def test_json_round_trip():
    for s in left_fixtures():
        again = space_from_json(json.dumps(space_to_json(s)))
        assert again.sigma == s.sigma and again.tau == s.tau and again.phi == s.phi
    stored = space_from_json((FIXTURES / "hecke_q2.json").read_text())
    assert stored.separable and stored.sigma == hecke_space(2).sigma
