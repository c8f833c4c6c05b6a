"""One test per acceptance criterion; the terminal summary prints a pass/fail line for each."""

import itertools
import json
import math
import time

from autfn.algebraverify import build_sn, build_swn, build_t, generate, is_elementary_abelian, run_relation_suite
from autfn.aut import DELTA, R, beta, eps, inv, inverse, lam, named, perm, rho, evaluate
from autfn.catalog import catalog_spaces, hyperoctahedral, octahedron_actions
from autfn.cli import main, strip_timing
from autfn.graph import graph_induced, t_graph, t_rotation
from autfn.homology import betti, chain_complex, euler_characteristic, is_acyclic_mod_p, matmul_mod_p
from autfn.linear import (
    abelianize,
    block_group,
    det,
    elementary,
    elementary_abelian_rank,
    first_column_group,
    is_simple,
    special_linear,
)
from autfn.simplicial import barycentric_subdivide, cone, octahedron, simplex_boundary
from autfn.smith import SpaceKind, borel_check, involution_pair_scan, no_free_rank2_check, rigidity_oracle, smith_fixed_check


def test_criterion_01_relation_suite():
    t0 = time.perf_counter()
    rep = run_relation_suite(5, 3)
    elapsed = time.perf_counter() - t0
    assert rep.failed == 0 and rep.passed == len(rep.results)
    ids = [r.id for r in rep.results]
    assert sum(i.startswith("a.conj_table.n4.") for i in ids) >= 48
    for family in ("a.conj_table", "b.relabel", "c.nielsen_commutator", "d.delta_conj", "e.eps_product",
                   "f.r_lemma.1", "g.r_lemma.2", "h.r_lemma.3", "i.r_lemma.4", "j.saut_relation",
                   "k.t_relation", "l.t_relation", "q.sl4"):
        assert any(i.startswith(family) for i in ids), family
    assert elapsed < 10, elapsed


def test_criterion_02_enumeration():
    for m in (1, 2, 3):
        T = build_t(m)
        assert T.order == 3**m and is_elementary_abelian(T, 3) == m
    assert build_swn(3).order == 24
    for n in (3, 4, 5):
        SN = build_sn(n)
        assert SN.order == 2 ** (n - 1)
        assert (named(DELTA, n) in SN) == (n % 2 == 0)


def test_criterion_03_graph_realization():
    for m in (1, 2, 3):
        g = t_graph(m)
        psi = [graph_induced(g, t_rotation(m, i)) for i in range(1, m + 1)]
        for i, f in enumerate(psi, 1):
            r = named(R(i), 2 * m)
            assert f in (r, inverse(r))
        assert set(generate(psi).elements) == set(build_t(m).elements)


def test_criterion_04_matrix_groups():
    t0 = time.perf_counter()
    G3 = special_linear(3, 2)
    simple3 = is_simple(G3)
    t3 = time.perf_counter() - t0
    assert G3.order == 168 and simple3 and is_simple(G3, exhaustive=True)
    t0 = time.perf_counter()
    G4 = special_linear(4, 2)
    simple4 = is_simple(G4)
    t4 = time.perf_counter() - t0
    assert G4.order == 20160 and simple4
    E = lambda i, j: elementary(i, j, 3, 2)  # noqa: E731
    assert E(3, 2) @ E(2, 1) @ E(3, 2) == E(3, 1) @ E(2, 1)
    assert t3 < 1, t3
    assert t4 < 120, t4


def test_criterion_05_rank_facts():
    for n in (3, 4, 5):
        assert elementary_abelian_rank(first_column_group(n), 2) == n - 1
    for n in (4, 5):
        r = elementary_abelian_rank(block_group(n), 2)
        assert r == math.ceil(n / 2) * (n // 2) and r >= n


def test_criterion_06_abelianization_and_determinants():
    import random

    rng = random.Random(6)
    names = [lam(i, j) for i, j in itertools.permutations(range(1, 5), 2)]
    names += [rho(i, j) for i, j in itertools.permutations(range(1, 5), 2)]
    names += [inv(i) for i in range(1, 5)] + [perm((1, 3)), perm((1, 2, 3)), DELTA, eps(2, 4)]
    for _ in range(1000):
        x, y = ([(rng.choice(names), rng.choice((1, -1))) for _ in range(rng.randint(0, 6))] for _ in range(2))
        f, g = evaluate(x, 4), evaluate(y, 4)
        assert abelianize(f @ g) == abelianize(f) @ abelianize(g)
    for n in (2, 3, 4, 5, 6):
        saut = [lam(i, j) for i, j in itertools.permutations(range(1, n + 1), 2)]
        saut += [rho(i, j) for i, j in itertools.permutations(range(1, n + 1), 2)]
        saut += [eps(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]
        if n % 2 == 0:
            saut += [R(i) for i in range(1, n // 2 + 1)] + [beta(i) for i in range(1, n // 2 + 1)] + [DELTA]
        assert all(det(abelianize(named(g, n))) == 1 for g in saut)
        assert all(det(abelianize(named(inv(i), n))) == -1 for i in range(1, n + 1))
        assert all(det(abelianize(named(perm(c), n))) == -1 for c in itertools.combinations(range(1, n + 1), 2))


def test_criterion_07_homology():
    assert betti(simplex_boundary(3), 2).betti == (1, 0, 1)
    assert betti(simplex_boundary(4), 2).betti == (1, 0, 0, 1)
    assert betti(octahedron(), 2).betti == betti(octahedron(), 3).betti == (1, 0, 1)
    assert is_acyclic_mod_p(cone(octahedron()), 2) and is_acyclic_mod_p(cone(octahedron()), 3)
    for p in (2, 3):
        for name, K in catalog_spaces().items():
            b = betti(K, p)
            assert betti(barycentric_subdivide(K).complex, p) == b, name
            cc = chain_complex(K, p)
            for k in range(2, K.dim + 1):
                assert not any(any(r) for r in matmul_mod_p(cc.boundary(k - 1), cc.boundary(k), p))
            assert sum((-1) ** k * x for k, x in enumerate(b)) == euler_characteristic(K)


def test_criterion_08_smith_catalog():
    o = octahedron()
    acts = octahedron_actions(o)
    v = smith_fixed_check(o, acts["refl_x"], 2)
    assert v.passed and v.observed["r"] == 1
    v = smith_fixed_check(o, acts["rot_pi_z"], 2)
    assert v.passed and v.observed["r"] == 0
    v = smith_fixed_check(o, acts["antipodal"], 2)
    assert v.passed and v.observed["r"] == -1
    v = smith_fixed_check(o, acts["rot3"], 3)
    assert v.passed and v.observed["r"] == 0 and v.observed["subdivisions"] <= 2
    assert (v.observed["m"] - v.observed["r"]) == 2


def test_criterion_09_borel_formula():
    o = octahedron()
    acts = octahedron_actions(o)
    v = borel_check(o, acts["refl_x"], acts["refl_y"], 2)
    assert v.passed and v.observed["lhs"] == v.observed["rhs"] == 2


def test_criterion_10_involution_rigidity():
    o = octahedron()
    G = hyperoctahedral(o, 3)
    assert G.order == 48
    v = involution_pair_scan(o, G)
    assert v.passed and not v.observed["counterexamples"]
    assert no_free_rank2_check(o, G, 2).passed


def test_criterion_11_oracle_boundaries():
    def verdict(n, kind, d, p=2):
        return rigidity_oracle("saut", n, SpaceKind(kind, d, p)).verdict

    for n in range(2, 13):
        for d in range(0, 13):
            assert (verdict(n, "sphere", d) == "trivial_forced") == (n >= 3 and d < n - 1)
            assert (verdict(n, "acyclic", d) == "trivial_forced") == (n >= 3 and d < n)
            z3 = verdict(n, "sphere", d, 3)
            if n % 2 == 0 and n > 3:
                assert (z3 == "trivial_forced") == (d < n - 1)
            else:
                assert z3 == "not_covered"
        assert verdict(n, "sphere", n - 1) == "not_ruled_out"
        assert verdict(n, "acyclic", n) == "not_ruled_out"
    for p, step in ((2, 1), (3, 2)):
        for kind in ("sphere", "acyclic"):
            for n in range(2, 13):
                for d in range(1, 13):
                    if verdict(n, kind, d, p) == "trivial_forced":
                        assert verdict(n + step, kind, d, p) == "trivial_forced"
                        assert verdict(n, kind, d - 1, p) == "trivial_forced"


def test_criterion_12_determinism(capsys):
    docs = []
    for jobs in ("1", "1", "8"):
        code = main(["relations", "--n", "5", "--m", "3", "--jobs", jobs])
        doc = strip_timing(json.loads(capsys.readouterr().out))
        assert code == 0
        doc.pop("command")
        docs.append(json.dumps(doc, sort_keys=True).encode())
    assert docs[0] == docs[1] == docs[2]
