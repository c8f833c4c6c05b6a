import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from autfn.aut import DELTA, R, beta, eps, evaluate, inv, lam, named, perm, rho
from autfn.linear import (
    CapExceeded,
    IntMatrix,
    ModPMatrix,
    NotElementaryAbelian,
    NotPrime,
    abelianize,
    block_group,
    conjugacy_classes,
    default_cap,
    det,
    det_p,
    elementary,
    elementary_abelian_rank,
    enumerate_group,
    first_column_group,
    format_matrix,
    is_simple,
    mod_p,
    normal_closure,
    parse_matrix,
    sl_order,
    special_linear,
)

from strategies import RANK, gen_words


def leibniz(rows):
    """Oracle determinant: signed sum over permutations."""
    n = len(rows)
    total = 0
    for sigma in itertools.permutations(range(n)):
        inversions = sum(sigma[a] > sigma[b] for a, b in itertools.combinations(range(n), 2))
        total += (-1) ** inversions * math.prod(rows[k][sigma[k]] for k in range(n))
    return total


def sl_order_oracle(n, p):
    return p ** (n * (n - 1) // 2) * math.prod(p**k - 1 for k in range(2, n + 1))


def brute_sl_count(n, p):
    count = 0
    for entries in itertools.product(range(p), repeat=n * n):
        rows = tuple(tuple(entries[r * n:(r + 1) * n]) for r in range(n))
        count += det_p(ModPMatrix(p, rows)) == 1
    return count


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@given(matrices)
def test_det_matches_leibniz(rows):
    assert det(IntMatrix.of(rows)) == leibniz(rows)


@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_det_mod_p_matches_leibniz(rows, p):
    assert det_p(ModPMatrix(p, tuple(map(tuple, rows)))) == leibniz(rows) % p


@given(gen_words())
def test_integer_inverse(w):
    m = abelianize(evaluate(w, RANK))
    assert (m @ m.inverse()).is_identity()
    assert abs(det(m)) == 1


def test_abelianization_is_multiplicative_on_many_pairs():
    rng = random.Random(20240611)
    names = [lam(i, j) for i, j in itertools.permutations(range(1, 5), 2)]
    names += [rho(i, j) for i, j in itertools.permutations(range(1, 5), 2)]
    names += [inv(i) for i in range(1, 5)] + [perm((1, 2)), perm((1, 2, 3, 4)), DELTA, eps(1, 3)]
    for _ in range(1200):
        words = [[(rng.choice(names), rng.choice((1, -1))) for _ in range(rng.randint(0, 6))] for _ in range(2)]
        f, g = (evaluate(w, 4) for w in words)
        assert abelianize(f @ g) == abelianize(f) @ abelianize(g)


@given(gen_words(), gen_words())
def test_abelianization_homomorphism_property(x, y):
    f, g = evaluate(x, RANK), evaluate(y, RANK)
    assert abelianize(f @ g) == abelianize(f) @ abelianize(g)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_determinants_of_named_generators(n):
    plus = [lam(i, j) for i, j in itertools.permutations(range(1, n + 1), 2)]
    plus += [rho(i, j) for i, j in itertools.permutations(range(1, n + 1), 2)]
    plus += [eps(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]
    if n % 2 == 0:
        plus += [R(i) for i in range(1, n // 2 + 1)] + [beta(i) for i in range(1, n // 2 + 1)]
    for g in plus:
        assert det(abelianize(named(g, n))) == 1, g
    for i in range(1, n + 1):
        assert det(abelianize(named(inv(i), n))) == -1
    for i, j in itertools.combinations(range(1, n + 1), 2):
        assert det(abelianize(named(perm((i, j)), n))) == -1
    assert det(abelianize(named(DELTA, n))) == (-1) ** n


def test_elementary_is_abelianized_nielsen_map():
    for i, j in itertools.permutations(range(1, 5), 2):
        assert elementary(i, j, 4, 2) == mod_p(abelianize(named(lam(i, j), 4)), 2)


def test_elementary_relation():
    E = lambda i, j: elementary(i, j, 3, 2)  # noqa: E731
    assert E(3, 2) @ E(2, 1) @ E(3, 2) == E(3, 1) @ E(2, 1)


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
def test_sl_order_brute_force(n, p):
    assert sl_order(n, p) == brute_sl_count(n, p) == sl_order_oracle(n, p)


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)])
def test_enumeration_matches_order_formula(n, p):
    assert special_linear(n, p).order == sl_order_oracle(n, p)


def test_simplicity():
    G = special_linear(3, 2)
    assert is_simple(G)
    assert is_simple(G, exhaustive=True)
    assert len(conjugacy_classes(G)) == 6
    assert not is_simple(special_linear(2, 2))
    assert not is_simple(special_linear(2, 3))


def test_normal_closure():
    G = special_linear(3, 2)
    assert normal_closure([elementary(1, 2, 3, 2)], G).order == 168
    minus = ModPMatrix(3, ((2, 0), (0, 2)))
    assert normal_closure([minus], special_linear(2, 3)).order == 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_elementary_abelian_ranks(n):
    assert elementary_abelian_rank(first_column_group(n), 2) == n - 1
    r = elementary_abelian_rank(block_group(n), 2)
    assert r == math.ceil(n / 2) * (n // 2)
    if n >= 4:
        assert r >= n


def test_not_elementary_abelian():
    r = elementary_abelian_rank(special_linear(3, 2), 2)
    assert isinstance(r, NotElementaryAbelian) and not r


def test_caps(monkeypatch):
    with pytest.raises(CapExceeded):
        special_linear(3, 2, cap=100)
    monkeypatch.setenv("AUTFN_CAP", "50")
    assert default_cap() == 50
    with pytest.raises(CapExceeded):
        special_linear(3, 2)


def test_matrix_text_round_trip():
    m = parse_matrix("1 2; 3 4")
    assert m == IntMatrix(((1, 2), (3, 4)))
    assert parse_matrix(format_matrix(m)) == m
    assert parse_matrix("1 1; 0 1", 2) == elementary(1, 2, 2, 2)
    with pytest.raises(ValueError):
        parse_matrix("1 2 3; 4 5 6")


def test_errors():
    with pytest.raises(NotPrime):
        mod_p(IntMatrix.identity(2), 4)
    with pytest.raises(ValueError):
        elementary(1, 1, 3, 2)
    with pytest.raises(ValueError):
        IntMatrix(((2, 0), (0, 1))).inverse()
    with pytest.raises(ValueError):
        enumerate_group([ModPMatrix(2, ((0, 0), (0, 1)))])
