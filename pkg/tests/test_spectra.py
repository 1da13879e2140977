import cmath
import itertools
import math
from math import comb

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gqbci.bicayley import ConnectionSet, build, connection_set, normalized_sets
from gqbci.exact import bareiss_det, interpolate, poly_mul, power_sums, root_multiplicity, to_int_poly
from gqbci.group import GQ, InvalidParameter, TooLarge
from gqbci.spectra import (Irrep, UnsupportedRoute, bipartite_charpoly, charpoly_exact, charpoly_int, cluster, factor_charpoly,
                           irrep_value, irreps, rep_sum, spectrum_via_reps)


def w(n):
    return cmath.exp(1j * math.pi / n)


# -- representation tables ------------------------------------------------------

def test_table_examples():
    g3, g4 = GQ(3), GQ(4)
    for x in g3.elements:
        assert irrep_value(Irrep(3, "psi", 1), x)[0, 0] == 1
    for k in range(6):
        assert irrep_value(Irrep(3, "psi", 3), g3.ba(k))[0, 0] == (-1) ** k * 1j
        assert irrep_value(Irrep(3, "psi", 4), g3.ba(k))[0, 0] == (-1) ** (k + 1) * 1j
    for k in range(8):
        assert irrep_value(Irrep(4, "psi", 3), g4.ba(k))[0, 0] == (-1) ** k
    phi = irrep_value(Irrep(5, "phi", 3), GQ(5).ba(2))
    assert np.allclose(phi, [[0, w(5) ** -6], [-w(5) ** 6, 0]])
    eta = irrep_value(Irrep(5, "eta", 2), GQ(5).a(3))
    assert np.allclose(eta, [[w(5) ** 12, 0], [0, w(5) ** -12]])


def test_descriptor_validation():
    with pytest.raises(InvalidParameter):
        irrep_value(Irrep(4, "phi", 2), GQ(4).a(1))
    with pytest.raises(InvalidParameter):
        irrep_value(Irrep(4, "eta", 2), GQ(4).a(1))  # (n-2)/2 = 1 for n = 4
    with pytest.raises(InvalidParameter):
        irrep_value(Irrep(3, "psi", 5), GQ(3).a(1))


@pytest.mark.parametrize("n", range(2, 51))
def test_degree_squares_sum_to_group_order(n):
    reps = irreps(n)
    assert sum(d.degree ** 2 for d in reps) == 4 * n
    n_phi = sum(1 for d in reps if d.kind == "phi")
    n_eta = sum(1 for d in reps if d.kind == "eta")
    assert n_phi == len([j for j in range(1, n) if j % 2])
    assert n_eta == ((n - 1) // 2 if n % 2 else (n - 2) // 2)


@pytest.mark.parametrize("n", range(2, 7))
def test_every_table_entry_is_a_homomorphism(n):
    g = GQ(n)
    for d in irreps(n):
        mats = {x: irrep_value(d, x) for x in g.elements}
        for x, y in itertools.product(g.elements, repeat=2):
            assert np.allclose(mats[g.mul(x, y)], mats[x] @ mats[y], atol=1e-12)


@pytest.mark.parametrize("n", range(2, 9))
def test_character_orthogonality(n):
    # <chi_i, chi_j> = delta_ij: irreducible and pairwise inequivalent
    g = GQ(n)
    chars = [np.array([np.trace(irrep_value(d, x)) for x in g.elements]) for d in irreps(n)]
    gram = np.array([[np.vdot(c2, c1) / g.order for c2 in chars] for c1 in chars])
    assert np.allclose(gram, np.eye(len(chars)), atol=1e-12)


def test_rep_sum_examples():
    g = GQ(3)
    S = connection_set(g, "1,a,b")
    assert rep_sum(Irrep(3, "psi", 1), S)[0, 0] == 3
    phi1 = rep_sum(Irrep(3, "phi", 1), S)
    assert np.allclose(phi1, [[1 + w(3), 1], [-1, 1 + 1 / w(3)]])
    one = connection_set(g, "1")
    for d in irreps(3):
        assert np.allclose(rep_sum(d, one), np.eye(d.degree))


# -- per-irrep factors: closed forms -------------------------------------------------

@pytest.mark.parametrize("n", range(2, 10))
def test_factor_closed_forms_for_1_a_b(n):
    S = connection_set(GQ(n), "1,a,b")
    psi = {d.index: factor_charpoly(d, S) for d in irreps(n) if d.kind == "psi"}
    assert np.allclose(psi[1], [-9, 0, 1], atol=1e-9)
    for i in (2, 3, 4):
        assert np.allclose(psi[i], [-1, 0, 1], atol=1e-9)
    for d in irreps(n):
        if d.kind == "phi":
            c = 3 + 2 * math.cos(d.index * math.pi / n)
            got = factor_charpoly(d, S)
            assert np.allclose(got, [c * c, 0, -2 * c, 0, 1], atol=1e-9)
            roots = np.roots(got[::-1])
            assert np.allclose(np.sort(np.abs(roots.real)), [math.sqrt(c)] * 4, atol=1e-6)
        elif d.kind == "eta":
            c = 3 + 2 * math.cos(2 * d.index * math.pi / n)
            e = (4 * math.cos(d.index * math.pi / n)) ** 2
            assert np.allclose(factor_charpoly(d, S), [c * c - e, 0, -2 * c, 0, 1], atol=1e-9)


@pytest.mark.parametrize("n", range(2, 10))
def test_factor_closed_forms_for_1_a2_b(n):
    T = connection_set(GQ(n), "1,a^2,b")
    psi = {d.index: factor_charpoly(d, T) for d in irreps(n) if d.kind == "psi"}
    assert np.allclose(psi[1], [-9, 0, 1], atol=1e-9)
    assert np.allclose(psi[2], [-1, 0, 1], atol=1e-9)
    if n % 2:
        assert np.allclose(psi[3], [-5, 0, 1], atol=1e-9)
        assert np.allclose(psi[4], [-5, 0, 1], atol=1e-9)
    else:
        assert np.allclose(psi[3], [-9, 0, 1], atol=1e-9)
        assert np.allclose(psi[4], [-1, 0, 1], atol=1e-9)
    for d in irreps(n):
        if d.kind == "phi":
            c = 3 + 2 * math.cos(2 * d.index * math.pi / n)
            assert np.allclose(factor_charpoly(d, T), [c * c, 0, -2 * c, 0, 1], atol=1e-9)
        elif d.kind == "eta":
            c = 3 + 2 * math.cos(4 * d.index * math.pi / n)
            e = (4 * math.cos(2 * d.index * math.pi / n)) ** 2
            assert np.allclose(factor_charpoly(d, T), [c * c - e, 0, -2 * c, 0, 1], atol=1e-9)


# -- whole spectra -----------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 5, 7])
def test_eigenvalue_one_multiplicities_odd(n):
    g = GQ(n)
    assert spectrum_via_reps(connection_set(g, "1,a,b")).multiplicity(1) == 3
    assert spectrum_via_reps(connection_set(g, "1,a^2,b")).multiplicity(1) == 1


@pytest.mark.parametrize("n", [2, 4, 6])
def test_eigenvalue_three_multiplicities_even(n):
    g = GQ(n)
    assert spectrum_via_reps(connection_set(g, "1,a,b")).multiplicity(3) == 1
    assert spectrum_via_reps(connection_set(g, "1,a^2,b")).multiplicity(3) >= 2


def test_perfect_matching_charpoly():
    got = charpoly_exact(build(connection_set(GQ(2), "1"))).charpoly
    # (x^2 - 1)^8
    expect = [0] * 17
    for i in range(9):
        expect[2 * i] = comb(8, i) * (-1) ** (8 - i)
    assert list(got) == expect


@pytest.mark.parametrize("text", ["1", "1,a", "1,a,b", "a^3,b*a", "1,a^2,b*a^3,b*a^5"])
def test_exact_charpoly_against_sympy(text):
    A = build(connection_set(GQ(3), text)).adjacency
    oracle = [int(c) for c in reversed(sympy.Matrix(A).charpoly().all_coeffs())]
    assert charpoly_int(A) == oracle
    assert list(charpoly_exact(build(connection_set(GQ(3), text))).charpoly) == oracle


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.data())
def test_bipartite_shortcut_matches_full_charpoly(size, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=size, max_size=size),
                              min_size=size, max_size=size))
    b = np.array(rows, dtype=np.int64)
    z = np.zeros_like(b)
    assert bipartite_charpoly(b) == charpoly_int(np.block([[z, b], [b.T, z]]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_routes_agree_small(n):
    g = GQ(n)
    for k in (1, 2, 3):
        for S in normalized_sets(g, k):
            r = spectrum_via_reps(S)
            e = charpoly_exact(build(S))
            assert r.charpoly == e.charpoly
            assert r.max_residue < 1e-6


@pytest.mark.parametrize("text", ["1,a,b", "1,a^2,b", "1,b*a^3", "a,a^4,b*a^2,b*a^5", "1"])
@pytest.mark.parametrize("n", [3, 4, 5])
def test_spectrum_invariants(n, text):
    S = connection_set(GQ(n), text)
    s = charpoly_exact(build(S))
    G = S.ambient.order
    assert s.degree == 2 * G and s.charpoly[-1] == 1
    assert all(c == 0 for c in s.charpoly[1::2])
    assert sum(m for _, m in s.eigenvalues) == 2 * G
    assert power_sums(s.charpoly, 2)[1] == 2 * G * len(S)
    assert math.isclose(sum(v * v * m for v, m in s.eigenvalues), 2 * G * len(S))
    vals = [v for v, m in s.eigenvalues for _ in range(m)]
    assert np.allclose(sorted(vals), sorted(-v for v in vals), atol=1e-8)
    r = spectrum_via_reps(S)
    assert len(r.eigenvalues) == len(s.eigenvalues)
    for (v1, m1), (v2, m2) in zip(r.eigenvalues, s.eigenvalues):
        assert m1 == m2 and abs(v1 - v2) < 1e-6


def test_reps_route_rejects_subgroups():
    g = GQ(4)
    h = g.generated_subgroup([g.a(1)])
    S = ConnectionSet(h, (g.a(0), g.a(1)))
    with pytest.raises(UnsupportedRoute):
        spectrum_via_reps(S)
    assert charpoly_exact(build(S)).degree == 16


def test_exact_guard():
    S = connection_set(GQ(26), "1,a")
    with pytest.raises(TooLarge):
        charpoly_exact(build(S))


def test_exports():
    s = charpoly_exact(build(connection_set(GQ(2), "1")))
    assert s.to_csv() == "eigenvalue,multiplicity\n-1.000000000000,8\n1.000000000000,8\n"
    assert s.charpoly_json().startswith('["1", "0", "-8"')


def test_cluster():
    assert cluster([1.0, 1.0 + 1e-12, 2.0], 1e-9) == ((1.0 + 5e-13, 2), (2.0, 1))


# -- exact helpers -----------------------------------------------------------------

small_polys = st.lists(st.integers(-20, 20), min_size=1, max_size=8)


@settings(max_examples=80)
@given(small_polys)
def test_interpolation_recovers_polynomial(p):
    xs = list(range(-(len(p) // 2), len(p) - len(p) // 2))
    ys = [sum(c * x ** i for i, c in enumerate(p)) for x in xs]
    got = to_int_poly(interpolate(xs, ys))
    trimmed = list(p)
    while len(trimmed) > 1 and trimmed[-1] == 0:
        trimmed.pop()
    assert got == trimmed


@settings(max_examples=80)
@given(st.integers(-4, 4), st.integers(0, 4), small_polys.filter(lambda q: any(q)))
def test_root_multiplicity(r, k, q):
    p = list(q)
    for _ in range(k):
        p = poly_mul(p, [-r, 1])
    qq = list(q)
    while len(qq) > 1 and qq[-1] == 0:
        qq.pop()
    extra = root_multiplicity(qq, r)
    assert root_multiplicity(p, r) == k + extra


@settings(max_examples=50)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_det_against_sympy(rows):
    assert bareiss_det(rows) == int(sympy.Matrix(rows).det())


@settings(max_examples=40)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=5))
def test_power_sums(roots):
    p = [1]
    for r in roots:
        p = poly_mul(p, [-r, 1])
    assert power_sums(p, 3) == [sum(r ** k for r in roots) for k in (1, 2, 3)]
