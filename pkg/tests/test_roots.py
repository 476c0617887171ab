import pytest

from lienormal.errors import DegenerateInput, InvalidRank, MaximalRoot
from lienormal.roots import (
    add, build_root_system, gamma_chain, gammas, height, neg, next_simple,
    simple, stratum_root, subsystem_roots, type_a_stratum,
)

CASES = [("A", l) for l in range(1, 6)] + [(t, l) for t in "BCD" for l in (2, 3, 4)] + [("G2", 2)]


def textbook_cartan(t, l):
    """Cartan matrix a_ij = <alpha_i, alpha_j^vee> written out from the Dynkin diagrams."""
    a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
    if t == "G2":
        return [[2, -1], [-3, 2]]
    for i in range(l - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if t == "B":
        a[l - 2][l - 1] = -2
    elif t == "C":
        a[l - 1][l - 2] = -2
    elif t == "D" and l == 2:
        a[0][1] = a[1][0] = 0
    elif t == "D":
        a[l - 2][l - 1] = a[l - 1][l - 2] = 0
        a[l - 3][l - 1] = a[l - 1][l - 3] = -1
    return a


def reflection_closure(t, l):
    """Positive roots from closing the simple roots under simple reflections."""
    a = textbook_cartan(t, l)
    roots = {simple(i, l) for i in range(1, l + 1)}
    frontier = list(roots)
    while frontier:
        v = frontier.pop()
        for j in range(l):
            pairing = sum(v[i] * a[i][j] for i in range(l))
            w = tuple(c - pairing * (k == j) for k, c in enumerate(v))
            if w not in roots and neg(w) not in roots:
                roots.add(w)
                frontier.append(w)
    full = roots | {neg(r) for r in roots}
    return {r for r in full if all(c >= 0 for c in r)}


def expected_count(t, l):
    return {"A": l * (l + 1) // 2, "B": l * l, "C": l * l, "D": l * (l - 1), "G2": 6}[t]


@pytest.mark.parametrize("t, l", CASES)
def test_positive_roots_match_reflection_closure(t, l):
    rs = build_root_system(t, l)
    assert set(rs.positive_roots) == reflection_closure(t, l)
    assert len(rs.positive_roots) == expected_count(t, l)


@pytest.mark.parametrize("t, l", CASES)
def test_cartan_matrix_matches_textbook(t, l):
    rs = build_root_system(t, l)
    # stored as <alpha_i, alpha_j> = 2 (a_i, a_j) / (a_j, a_j)
    assert [list(r) for r in rs.cartan_matrix] == textbook_cartan(t, l)


@pytest.mark.parametrize("t, l", CASES)
def test_nonsimple_roots_decompose(t, l):
    rs = build_root_system(t, l)
    for a in rs.positive_roots:
        if height(a) > 1:
            assert any(rs.is_positive(add(a, neg(s))) for s in rs.simple_roots)


def test_type_a2_explicit():
    rs = build_root_system("A", 2)
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1)}


def test_rep_dims():
    dims = {(t, l): build_root_system(t, l).rep_dim for t, l in
            [("A", 3), ("B", 3), ("C", 3), ("D", 3), ("G2", 2)]}
    assert dims == {("A", 3): 4, ("B", 3): 7, ("C", 3): 6, ("D", 3): 6, ("G2", 2): 7}


@pytest.mark.parametrize("t, l", [("A", 0), ("B", 1), ("C", 1), ("D", 1), ("G2", 3), ("E", 6)])
def test_invalid_rank(t, l):
    with pytest.raises(InvalidRank):
        build_root_system(t, l)


def test_root_string_examples():
    a2 = build_root_system("A", 2)
    assert a2.root_string((1, 0), (0, 1)) == (0, 1)
    assert a2.root_string((1, 1), (0, 1)) == (1, 0)
    g2 = build_root_system("G2", 2)
    r, q = g2.root_string((1, 0), (0, 1))
    assert r == 0 and q == 1
    assert g2.root_string((0, 1), (1, 0)) == (0, 3)


def test_root_string_rejects_proportional():
    rs = build_root_system("A", 2)
    with pytest.raises(DegenerateInput):
        rs.root_string((1, 0), (-1, 0))


def test_cartan_integer_examples():
    rs = build_root_system("A", 2)
    assert rs.cartan_integer((1, 0), (1, 0)) == 2
    assert rs.cartan_integer((1, 0), (0, 1)) == -1
    assert rs.cartan_integer((1, 1), (-1, -1)) == -2


@pytest.mark.parametrize("t, l", [c for c in CASES if c[1] <= 4])
def test_cartan_integer_is_string_difference(t, l):
    rs = build_root_system(t, l)
    for a in rs.roots:
        for b in rs.roots:
            if a in (b, neg(b)):
                continue
            r, q = rs.root_string(a, b)
            assert rs.cartan_integer(a, b) == r - q


def test_gamma_chain_a3():
    rs = build_root_system("A", 3)
    chain = gamma_chain(rs)
    assert set(chain[0].roots) == {(0, 0, 1), (0, 1, 1), (1, 1, 1)}
    assert chain[-1].roots == ()


@pytest.mark.parametrize("t, l", CASES)
def test_gamma_last_is_empty_and_first_full(t, l):
    chain = gamma_chain(build_root_system(t, l))
    assert len(chain[0].roots) == l and chain[l].roots == ()


@pytest.mark.parametrize("l", range(1, 6))
def test_type_a_gamma_heights(l):
    g = gammas(build_root_system("A", l))
    assert [height(x) for x in g] == list(range(1, l + 1))


@pytest.mark.parametrize("t, l", [c for c in CASES if c[0] in "ABC"])
def test_gamma_maximality(t, l):
    rs = build_root_system(t, l)
    for k, g in enumerate(gammas(rs), start=1):
        sub = subsystem_roots(rs, range(l - k + 1, l + 1))
        assert g in sub
        assert all(add(g, a) not in sub for a in sub)


@pytest.mark.parametrize("t, l, heights", [
    ("B", 3, [1, 3, 5]), ("C", 3, [1, 3, 5]), ("D", 4, [3, 1, 3, 5]), ("D", 5, [4, 1, 3, 5, 7]),
    ("G2", 2, [1, 5]),
])
def test_gamma_heights_are_exponents(t, l, heights):
    assert [height(g) for g in gammas(build_root_system(t, l))] == heights


def test_stratum_root_examples():
    rs = build_root_system("A", 3)
    assert stratum_root(rs, 2, 1) == (0, 1, 0)
    assert stratum_root(rs, 3, 3) == (1, 1, 1)
    assert next_simple(rs, 2, 1) == (0, 0, 1)
    with pytest.raises(MaximalRoot):
        next_simple(rs, 2, 2)


@pytest.mark.parametrize("l", range(1, 6))
def test_strata_partition(l):
    rs = build_root_system("A", l)
    seen = []
    for k in range(1, l + 1):
        stratum = [a for a in rs.positive_roots if type_a_stratum(a, l) == k]
        assert sorted(height(a) for a in stratum) == list(range(1, k + 1))
        assert all(stratum_root(rs, k, m) in stratum for m in range(1, k + 1))
        seen += stratum
    assert sorted(seen) == sorted(rs.positive_roots)


@pytest.mark.parametrize("l", range(2, 6))
def test_successor_is_unique(l):
    rs = build_root_system("A", l)
    for k in range(1, l + 1):
        for m in range(1, k):
            a = stratum_root(rs, k, m)
            within = [s for s in rs.simple_roots
                      if rs.is_positive(add(a, s)) and type_a_stratum(add(a, s), l) == k]
            assert within == [next_simple(rs, k, m)]
            b = add(a, within[0])
            for s in rs.simple_roots:
                c = add(b, neg(s))
                if rs.is_positive(c) and c != a:
                    assert type_a_stratum(c, l) < k


def test_roots_json():
    d = build_root_system("A", 2).to_json()
    assert d["type"] == "A" and len(d["positive_roots"]) == 3
    assert [g["k"] for g in d["gamma"]] == [0, 1, 2]
