import random

import pytest

from artinhom.braidrep import LeftBraidedSpace, one_dim_space
from artinhom.exactfield import QQ, field, primitive_root
from artinhom.fixtures import hecke_space, one_dim_braided
from artinhom.shufflealg import (AlgebraElement, BimoduleElement, OneDimParams, bimodule_left_mult,
                                 bimodule_right_mult, change_of_basis_matrix, change_of_basis_yx,
                                 closed_form_xy, closed_form_yx, express_in_left_basis, gamma_product,
                                 root_of_unity_leading_coeff, shuffle_product, x, y)
from artinhom.shuffles import quantum_binomial


def params_list():
    z3, z5 = field(3).gen(), field(5).gen()
    return [
        (QQ(2), QQ(3), QQ(5)),
        (QQ(-3) / 2, QQ(7), QQ(-1)),
        (z3, 2 * z3 + 1, z3 * z3),
        (-z3, z3, z3.ctx.coerce(2)),
        (z5, 1 - z5, 3 * z5),
    ]


def test_bar_notation():
    ctx = QQ
    assert str(x(2, ctx)) == "(1)[1|1]"
    assert str(y(2, 3, ctx)) == "(1)[1|w|1]"
    assert str(AlgebraElement({}, ctx)) == "0"


def test_v_times_v():
    q = QQ(7)
    space = one_dim_braided(q)
    assert shuffle_product(x(1, QQ), x(1, QQ), space) == x(2, QQ).scale(1 + q)


def test_unit_laws():
    space = hecke_space(2)
    a = AlgebraElement({(0, 1): QQ(2), (1, 1): QQ(-1)}, QQ)
    unit = AlgebraElement.unit(QQ)
    assert shuffle_product(unit, a, space.braided_part()) == a
    assert shuffle_product(a, unit, space.braided_part()) == a
    mu = BimoduleElement({(2, (1, 0, 1)): QQ(3)}, QQ)
    assert bimodule_left_mult(unit, mu, space) == mu
    assert bimodule_right_mult(mu, unit, space) == mu


def _random_algebra(rng, dim, degree):
    keys = [tuple(rng.randrange(dim) for _ in range(degree)) for _ in range(2)]
    return AlgebraElement({k: QQ(rng.randint(-3, 3)) for k in keys}, QQ)


def _random_bimodule(rng, dim_v, dim_w, degree):
    terms = {}
    for _ in range(2):
        i = rng.randint(1, degree)
        key = tuple(rng.randrange(dim_w if pos == i else dim_v) for pos in range(1, degree + 1))
        terms[(i, key)] = QQ(rng.randint(-3, 3))
    return BimoduleElement(terms, QQ)


def test_associativity():
    rng = random.Random(11)
    braided = hecke_space(2).braided_part()
    for _ in range(6):
        a, b, c = (_random_algebra(rng, 2, rng.randint(1, 2)) for _ in range(3))
        lhs = shuffle_product(shuffle_product(a, b, braided), c, braided)
        rhs = shuffle_product(a, shuffle_product(b, c, braided), braided)
        assert lhs == rhs


def test_bimodule_axiom():
    rng = random.Random(5)
    space = hecke_space(2)
    for _ in range(6):
        a = _random_algebra(rng, 2, rng.randint(1, 2))
        b = _random_algebra(rng, 2, rng.randint(1, 2))
        mu = _random_bimodule(rng, 2, 2, rng.randint(1, 2))
        assert bimodule_right_mult(bimodule_left_mult(a, mu, space), b, space) == \
            bimodule_left_mult(a, bimodule_right_mult(mu, b, space), space)


def test_smallest_products():
    q, p, u = QQ(2), QQ(3), QQ(5)
    space = one_dim_space(q, p, u)
    assert bimodule_left_mult(x(1, QQ), y(1, 1, QQ), space) == y(2, 2, QQ) + y(1, 2, QQ).scale(u)
    assert bimodule_right_mult(y(1, 1, QQ), x(1, QQ), space) == y(1, 2, QQ) + y(2, 2, QQ).scale(p / u)
    with pytest.raises(ValueError):
        bimodule_left_mult(x(1, QQ), y(1, 1, QQ), LeftBraidedSpace(1, 1, space.sigma, space.tau))


@pytest.mark.parametrize("q, p, u", params_list())
def test_closed_forms_match_brute_force(q, p, u):
    ctx = q.ctx
    space = one_dim_space(q, p, u, ctx)
    params = OneDimParams(q, p, u)
    for n in range(1, 6):
        for m in range(1, 7 - n):
            assert bimodule_left_mult(x(m, ctx), y(n, n, ctx), space) == closed_form_xy(n, m, params)
            assert bimodule_right_mult(y(n, n, ctx), x(m, ctx), space) == closed_form_yx(n, m, params)


def test_closed_form_coefficients():
    q, p, u = QQ(2), QQ(3), QQ(5)
    params = OneDimParams(q, p, u)
    xy = closed_form_xy(2, 3, params)
    assert xy.coefficient((5, (0,) * 5)) == quantum_binomial(4, 3, q)
    yx = closed_form_yx(2, 3, params)
    assert yx.coefficient((2, (0,) * 5)) == 1


def test_gamma_product():
    q = QQ(3)
    assert gamma_product(1, 1, q) == 1 + q
    assert gamma_product(4, 0, q) == 1
    space = one_dim_braided(q)
    for n in range(5):
        for m in range(5 - n):
            assert shuffle_product(x(n, QQ), x(m, QQ), space) == x(n + m, QQ).scale(gamma_product(n, m, q))


def test_change_of_basis_base_case():
    q, p, u = QQ(2), QQ(3), QQ(5)
    coeffs = change_of_basis_yx(1, 1, OneDimParams(q, p, u))
    assert coeffs == {0: 1 / u, 1: (p - 1) / u}
    assert change_of_basis_yx(2, 3, OneDimParams(q, p, u))[0] == u ** -3 * q ** (-3)


@pytest.mark.parametrize("q", [QQ(2), QQ(-3) / 2])
def test_change_of_basis_substitution(q):
    p, u = QQ(7), QQ(-2)
    params = OneDimParams(q, p, u)
    for n in range(1, 6):
        for m in range(1, 8 - n):
            rebuilt = BimoduleElement({}, QQ)
            for h, c in change_of_basis_yx(n, m, params).items():
                term = y(n + h, n + m, QQ) if h == m else closed_form_xy(n + h, m - h, params)
                rebuilt = rebuilt + term.scale(c)
            assert rebuilt == closed_form_yx(n, m, params)


def test_change_of_basis_rejects_roots_of_unity():
    with pytest.raises(ValueError):
        change_of_basis_yx(1, 1, OneDimParams(QQ(1), QQ(2), QQ(1)))
    z = field(3).gen()
    with pytest.raises(ValueError):
        change_of_basis_yx(2, 2, OneDimParams(z, 2 * z, z.ctx.one()))


def test_root_of_unity_leading_coefficient():
    one = QQ(1)
    assert root_of_unity_leading_coeff(1, 1, OneDimParams(one, QQ(3), QQ(5))) == (QQ(3) - 1) / 5
    z = primitive_root(5)
    params = OneDimParams(z, 1 - z, 3 * z)
    n, m = 3, 5
    assert root_of_unity_leading_coeff(n, m, OneDimParams(z, z ** (-(n - 1)), 3 * z)) == 0
    # the y_{n+m} coefficient of the left-basis expansion
    space = one_dim_space(z, 1 - z, 3 * z, z.ctx)
    expansion = express_in_left_basis(bimodule_right_mult(y(n, n, z.ctx), x(m, z.ctx), space), n + m, space)
    assert expansion[n + m] == root_of_unity_leading_coeff(n, m, params)
    with pytest.raises(ValueError):
        root_of_unity_leading_coeff(1, 3, params)


@pytest.mark.parametrize("m", range(1, 7))
def test_ceiling_identity(m):
    q = primitive_root(m)
    for n in range(1, 13):
        assert quantum_binomial(n - 1 + m, m, q) == -(-n // m)


@pytest.mark.parametrize("q, u", [(QQ(2), QQ(5)), (field(4).gen(), field(4).coerce(-1))])
def test_freeness_matrices(q, u):
    space = one_dim_space(q, 3, u, q.ctx)
    for n in range(1, 7):
        left = change_of_basis_matrix("left", n, space)
        right = change_of_basis_matrix("right", n, space)
        for i in range(1, n + 1):
            for k in range(i + 1, n + 1):
                assert not left[i - 1][k - 1] and not right[i - 1][k - 1]
            assert left[i - 1][i - 1] == u ** (n - i) * q ** ((i - 1) * (n - i))
            assert right[i - 1][i - 1] == 1
