"""Acceptance criteria AC1-AC11 at their stated scales.

Each check records a one-line verdict; the lines are printed in the pytest
terminal summary and also when this file is run directly as a script.
"""

import itertools
import math
import random
import sys
from pathlib import Path

import networkx as nx
import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from combman import (EnuSeries, are_equivalent, automorphism_orbits, build_graph, derive_next,
                     edge_drop_set, embed, euler_characteristic, fundamental_group_rank,
                     is_connected, make_model, model_enufunction, mul, one, realize_model,
                     surface_enufunction)
from combman.diffgeo import (check_d_identity, christoffel_from_metric,
                             euclidean_norm, exterior_derivative, metric_compatibility_residual,
                             MinkowskiNorm, minkowski_check, tangent_dimension, torsion, wedge)
from combman.generators import random_labelled_graph, seeded_random_model

from builders import atom, complete, graph, rec, sphere_cycle, star
from oracles import brute_pi0, euler_by_regions, euler_two_atoms, flat_class_count
from test_chart import all_charts
from test_connection import SUITE, polar_metric
from test_forms import rand_field, rand_form

RESULTS: dict[str, str] = {}


def record(name, ok, detail=""):
    RESULTS[name] = f"{name}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
    print(RESULTS[name])
    assert ok, RESULTS[name]


def test_ac1_sphere_cycle_identity():
    got = {n: euler_characteristic(sphere_cycle(n)) for n in range(3, 7)}
    record("AC1", all(got[n] == 2 * n - n for n in got), f"euler {got}")


def test_ac2_inclusion_exclusion():
    bad = 0
    table = [2, 0, -2, 1]
    for c1, c2, c12 in itertools.product(table, table, [0, 1, 2, -2]):
        m = make_model([atom("a", 2, c1), atom("b", 2, c2)], [rec("ab", 1, c12)])
        bad += euler_characteristic(m) != euler_two_atoms(c1, c2, c12)
    n_random = 0
    for seed in range(500):
        m = seeded_random_model(seed, 1 + seed % 10, tangent_prob=0.3)
        bad += euler_characteristic(m) != euler_by_regions(m)
        n_random += 1
    record("AC2", bad == 0, f"{n_random} random models + {len(table) ** 2 * 4} two-atom cases, {bad} mismatches")


def _corpus(tangent_prob):
    return [seeded_random_model(seed, 1 + seed % 10, (1, 5), tangent_prob=tangent_prob)
            for seed in range(500)]


def test_ac3_recursion():
    bad = checked = 0
    for tp in (0.0, 0.3):
        for m in _corpus(tp):
            for d in range(1, max(m.dims) + 1):
                checked += 1
                bad += derive_next(build_graph(m, d), edge_drop_set(m, d)) != build_graph(m, d + 1)
    record("AC3", bad == 0, f"{checked} levels over 1000 models, {bad} mismatches")


def test_ac4_connectivity_bound():
    # tangent-free corpus: a single tangent point keeps G^d connected at every d
    violations = checked = 0
    for m in _corpus(0.0):
        n1 = min(m.dims)
        for d in range(1, max(m.dims) + 1):
            if is_connected(build_graph(m, d)):
                checked += 1
                violations += d > n1
    record("AC4", violations == 0, f"{checked} connected levels, {violations} violations")


def test_ac5_round_trip():
    bad = checked = 0
    for seed in range(200):
        g = random_labelled_graph(seed, max_vertices=12)
        dmin = min(v.label for v in g.vertices if v.label > 0)
        for d in sorted({1, dmin}):
            checked += 1
            bad += not are_equivalent(build_graph(realize_model(g, d), d), g)
    record("AC5", bad == 0, f"{checked} round trips, {bad} failures")


def _topologies(max_n=6):
    for n in range(1, max_n + 1):
        for t in nx.nonisomorphic_trees(n) if n > 1 else [nx.empty_graph(1)]:
            yield True, list(t.edges)
        if n >= 3:
            yield False, [(i, (i + 1) % n) for i in range(n)]


def test_ac6_rank_zero_iff_tree_of_simply_connected():
    bad = checked = 0
    for is_tree, edges in _topologies():
        n = 1 + max((max(e) for e in edges), default=0)
        for flags in itertools.product((True, False), repeat=n):
            atoms = [atom(f"a{i}", 2, 2, rank=0, sc=True) if sc else atom(f"a{i}", 2, 0, rank=2)
                     for i, sc in enumerate(flags)]
            m = make_model(atoms, [rec((f"a{u}", f"a{v}"), 1, 0) for u, v in edges])
            checked += 1
            bad += (fundamental_group_rank(m, 1).total == 0) != (all(flags) and is_tree)
    record("AC6", bad == 0, f"{checked} models, {bad} mismatches")


def test_ac7_tangent_dimension():
    charts = list(all_charts(4, 6))
    bad = sum(tangent_dimension(c) != flat_class_count(c.s, c.shat, c.dims) for c in charts)
    record("AC7", bad == 0, f"{len(charts)} charts, {bad} mismatches")


def test_ac8_exterior_calculus():
    rng = random.Random(2024)
    dd = leib = 0
    for _ in range(200):
        n = rng.randint(1, 6)
        alpha = rand_form(rng, n, rng.randint(0, min(3, n)))
        dd += not exterior_derivative(exterior_derivative(alpha)).is_zero()
    for _ in range(200):
        n = rng.randint(2, 6)
        k, l = rng.randint(0, n // 2), rng.randint(0, n // 2)
        a, b = rand_form(rng, n, k), rand_form(rng, n, l)
        lhs = exterior_derivative(wedge(a, b))
        leib += lhs != wedge(exterior_derivative(a), b) + (-1) ** k * wedge(a, exterior_derivative(b))
    exact = numeric = 0.0
    for _ in range(50):
        n = rng.randint(1, 5)
        omega, X, Y = rand_form(rng, n, 1), rand_field(rng, n, 2), rand_field(rng, n, 2)
        exact = max(exact, check_d_identity(omega, X, Y))
        numeric = max(numeric, check_d_identity(omega, X, Y, exact=False))
    ok = dd == 0 and leib == 0 and exact == 0 and numeric <= 1e-9
    record("AC8", ok, f"d^2 failures {dd}, Leibniz failures {leib}, identity exact {exact:g} numeric {numeric:.2g}")


def test_ac9_levi_civita():
    worst_a = worst_fd = worst_t = 0.0
    for _, make, point in SUITE:
        m = make()
        G = christoffel_from_metric(m, point)
        worst_a = max(worst_a, metric_compatibility_residual(m, G, point))
        worst_t = max(worst_t, float(np.max(np.abs(torsion(G)))))
        G_fd = christoffel_from_metric(m.without_partials(), point)
        worst_fd = max(worst_fd, metric_compatibility_residual(m, G_fd, point))
        worst_t = max(worst_t, float(np.max(np.abs(torsion(G_fd)))))
    G = christoffel_from_metric(polar_metric(), [2.0, 0.0])
    hand = abs(G[1, 0, 1] - 0.5) <= 1e-8 and abs(G[0, 1, 1] + 2.0) <= 1e-8
    ok = worst_a <= 1e-8 and worst_fd <= 1e-6 and worst_t == 0 and hand
    record("AC9", ok, f"residual analytic {worst_a:.2g} fd {worst_fd:.2g}, torsion {worst_t:g}, "
                      f"Gamma^1_01={G[1, 0, 1]:.12g} Gamma^0_11={G[0, 1, 1]:.12g}")


def test_ac10_minkowski():
    rng = np.random.default_rng(10)
    margin, eig, all_ok = 0.0, math.inf, True
    for dim in range(2, 7):
        rep = minkowski_check(euclidean_norm(dim), rng.standard_normal((100, dim)))
        all_ok &= rep.ok
        margin, eig = max(margin, rep.homogeneity_margin), min(eig, rep.min_eigenvalue)
    counter = minkowski_check(MinkowskiNorm(2, lambda v: abs(v[0]) - abs(v[1])), rng.standard_normal((100, 2)))
    ok = all_ok and margin <= 1e-9 and eig > 0.5 and not counter.nonnegative
    record("AC10", ok, f"margin {margin:.2g}, min eigenvalue {eig:.6g}, counterexample nonnegative={counter.nonnegative}")


def test_ac11_enumeration():
    s = surface_enufunction(5)
    single = model_enufunction(graph({"a": 2}), {2: s}).series == s
    coeffs_ok = [s.coefficient(p) for p in range(6)] == [1, 2, 2, 2, 2, 2]
    product_ok = pi0_ok = True
    for m in range(1, 6):
        labels = list(range(1, m + 1))
        per = {d: EnuSeries((f"x_{d}_1",), {(p,): s.coefficient(p) + d for p in range(4)}, 3) for d in labels}
        expected = one(tuple(f"x_{d}_1" for d in labels), 3)
        for d in labels:
            expected = mul(expected, embed(per[d], expected.variables))
        g = complete(labels)
        product_ok &= model_enufunction(g, per).series == expected
        pi0_ok &= automorphism_orbits(g).pi0 == brute_pi0(g)
    g = star(2, 1, 4)
    pi0_ok &= automorphism_orbits(g).pi0 == brute_pi0(g) == 2
    ok = single and coeffs_ok and product_ok and pi0_ok
    record("AC11", ok, f"single {single}, surface {coeffs_ok}, product {product_ok}, pi0 {pi0_ok}")


if __name__ == "__main__":
    # fresh interpreter, so pytest sees no modules imported ahead of it
    import subprocess
    sys.exit(subprocess.call([sys.executable, "-m", "pytest", __file__, "-q"]))
