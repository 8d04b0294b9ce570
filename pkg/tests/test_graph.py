import itertools

import numpy as np
import pytest

from turan.errors import HeaderMismatch, MalformedFile, NotPrimePower, OrderDoesNotDivide, ZeroPair
from turan.field import field_of_order, make_field, subgroup
from turan.graph import (
    build_graph,
    canonical_rep,
    count_edges,
    degree_histogram,
    edge_lower_bound,
    expected_edge_count_g2,
    expected_loop_count_g2,
    expected_vertex_count_general,
    export_graph,
    format_dimacs,
    format_graph,
    furedi_graph,
    import_graph,
    parse_graph,
)


def _edge_formula(q):
    # closed forms evaluated independently of the library helper
    poly = q ** 5 - q ** 4 + q ** 3 - 2 * q ** 2
    return (poly + 1) // 2 if q % 2 else poly // 2


@pytest.mark.parametrize("q, expected", [(2, 8), (3, 86), (7, 7326)])
def test_expected_edge_count_g2(q, expected):
    assert expected_edge_count_g2(q) == expected == _edge_formula(q)


def test_expected_edge_count_rejects_non_prime_power():
    with pytest.raises(NotPrimePower):
        expected_edge_count_g2(6)


@pytest.mark.parametrize("q, r, expected", [(2, 3, 5), (3, 4, 56), (2, 4, 9)])
def test_expected_vertex_count_general(q, r, expected):
    assert expected_vertex_count_general(q, r) == expected
    s = sum(q ** i for i in range(r - 1))
    assert expected == (q ** (2 * r - 2) - 1) // s


def test_canonical_rep_trivial_subgroup():
    F = make_field(5)
    H = subgroup(F, 1)
    for a, b in itertools.product(F, repeat=2):
        if a or b:
            assert canonical_rep(a, b, H) == (a, b)
    with pytest.raises(ZeroPair):
        canonical_rep(F.zero, F.zero, H)


def test_canonical_rep_gf9_axis_orbit():
    F = make_field(3, 2)
    H = subgroup(F, 4)
    for y in list(F)[1:]:
        orbit = [(F.zero, h * y) for h in H]
        assert len({o[1].enc for o in orbit}) == 4
        assert canonical_rep(F.zero, y, H) == (F.zero, min(o[1] for o in orbit))


@pytest.mark.parametrize("q, t", [(9, 4), (9, 2), (7, 3), (8, 7)])
def test_canonical_rep_idempotent_and_orbit_constant(q, t):
    F = field_of_order(q)
    H = subgroup(F, t)
    for a, b in itertools.product(F, repeat=2):
        if not (a or b):
            continue
        rep = canonical_rep(a, b, H)
        assert canonical_rep(*rep, H) == rep
        for h in H:
            assert canonical_rep(h * a, h * b, H) == rep


@pytest.mark.parametrize("q, t", [(9, 4), (7, 3), (8, 7), (16, 5)])
def test_vertices_are_canonical_reps(q, t):
    F = field_of_order(q)
    H = subgroup(F, t)
    G = build_graph(F, t)
    reps = {tuple(x.enc for x in canonical_rep(a, b, H))
            for a, b in itertools.product(F, repeat=2) if a or b}
    assert [(v.a.enc, v.b.enc) for v in G.vertices] == sorted(reps)
    assert [v.index for v in G.vertices] == list(range(G.n))


@pytest.mark.parametrize("q, t", [(9, 4), (7, 3), (4, 3), (5, 1)])
def test_adjacency_matches_definition(q, t):
    G = furedi_graph(q, t)
    loops = 0
    for u in G.vertices:
        for v in G.vertices:
            joined = u.a * v.a + u.b * v.b in G.H
            if u.index == v.index:
                loops += joined
                assert not G.has_edge(u.index, u.index)
            else:
                assert G.has_edge(u.index, v.index) == joined
    assert loops == G.loop_count


def test_small_examples():
    G = furedi_graph(4, 3)
    assert G.n == 5 and count_edges(G) == 8
    assert degree_histogram(G) == {3: 4, 4: 1}
    G = furedi_graph(9, 4)
    assert G.n == 20 and count_edges(G) == 86
    assert degree_histogram(G) == {8: 8, 9: 12}
    G = furedi_graph(5, 1)
    assert G.n == 24
    assert set(G.degrees()) <= {4, 5}
    assert count_edges(furedi_graph(25, 6)) == 1288


def test_build_rejects_bad_order():
    with pytest.raises(OrderDoesNotDivide):
        furedi_graph(9, 3)


@pytest.mark.parametrize("q, t", [(2, 1), (3, 2), (8, 7), (11, 5), (13, 3), (16, 15), (25, 8), (27, 26), (32, 31)])
def test_graph_invariants(q, t):
    G = furedi_graph(q, t)
    assert G.n == (q * q - 1) // t
    M = G.adjacency_matrix()
    assert np.array_equal(M, M.T)
    assert not M.diagonal().any()
    assert set(G.degrees()) <= {q - 1, q}
    assert count_edges(G) >= edge_lower_bound(q, t)
    # a vertex has degree q - 1 exactly when its own loop was dropped
    assert G.degrees().count(q - 1) == G.loop_count


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_g2_loop_count(q):
    G = furedi_graph(q * q, q + 1)
    assert G.loop_count == expected_loop_count_g2(q)
    assert degree_histogram(G)[q * q - 1] == expected_loop_count_g2(q)


def test_export_g43(tmp_path):
    G = furedi_graph(4, 3)
    path = tmp_path / "g.txt"
    export_graph(G, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "# furedi p=2 k=2 q=4 t=3 n=5 m=8 loops=4"
    assert lines[1].startswith("# vertices: 5")
    edges = [tuple(map(int, line.split())) for line in lines[7:]]
    assert len(edges) == 8 and edges == sorted(edges)
    assert all(u < v for u, v in edges)


@pytest.mark.parametrize("q, t", [(4, 3), (9, 4), (25, 12)])
def test_round_trip(tmp_path, q, t):
    G = furedi_graph(q, t)
    path = tmp_path / "g.txt"
    export_graph(G, path)
    H = import_graph(path)
    assert H.adj == G.adj
    assert H.loop_count == G.loop_count
    assert [(v.a, v.b) for v in H.vertices] == [(v.a, v.b) for v in G.vertices]
    assert format_graph(H) == path.read_text()


def test_dimacs():
    text = format_dimacs(furedi_graph(4, 3))
    lines = text.splitlines()
    assert lines[1] == "p edge 5 8"
    assert lines[2] == "e 1 3"
    assert sum(line.startswith("e ") for line in lines) == 8


def _g43_text():
    return format_graph(furedi_graph(4, 3))


def test_duplicate_edge_is_malformed():
    lines = _g43_text().splitlines()
    lines.insert(8, lines[7])
    lines[0] = lines[0].replace("m=8", "m=9")
    with pytest.raises(MalformedFile, match="duplicate") as info:
        parse_graph("\n".join(lines) + "\n")
    assert info.value.line == 9


def test_header_mismatch():
    text = _g43_text().replace("m=8", "m=7")
    with pytest.raises(HeaderMismatch):
        parse_graph(text)


@pytest.mark.parametrize("mutate", [
    lambda ls: ls[:1] + ls[2:],                    # no vertices line
    lambda ls: ["# something else"] + ls[1:],      # no header
    lambda ls: ls[:7] + ["3 1"] + ls[8:],          # u > v
    lambda ls: ls[:7] + ["0 x"] + ls[8:],          # non-integer
    lambda ls: ls[:7] + [ls[8], ls[7]] + ls[9:],   # unsorted
    lambda ls: ls[:2] + ["1 0 1"] + ls[3:],        # bad vertex index
    lambda ls: [ls[0].replace("t=3", "t=2")] + ls[1:],  # t does not divide q-1
])
def test_malformed_files(mutate):
    lines = mutate(_g43_text().splitlines())
    with pytest.raises(MalformedFile):
        parse_graph("\n".join(lines) + "\n")


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        import_graph(tmp_path / "absent.txt")
