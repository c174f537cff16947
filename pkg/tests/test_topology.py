import pytest

from lochness.group import Variant
from lochness.topology import (
    Edge,
    FlatTruncation,
    HyperbolicTruncation,
    IdentifiedPolygon,
    MalformedWord,
    complex_from_polygon,
    count_ends,
    flat_polygon,
    hyperbolic_polygon,
    parse_word,
    topology_summary,
    truncation_topology,
)


def poly(text):
    return IdentifiedPolygon.from_string(text)


def test_parse_word():
    assert parse_word("a b' c^-1") == (Edge("a"), Edge("b", True), Edge("c", True))


@pytest.mark.parametrize(
    "word,v,e",
    [("a b a^-1 b^-1", 1, 2), ("a a^-1", 2, 1), ("a b c d", 4, 4)],
)
def test_complex_examples(word, v, e):
    cx = complex_from_polygon(poly(word))
    assert (cx.vertices, cx.edges, cx.faces) == (v, e, 1)
    assert cx.euler_characteristic == v - e + 1
    assert sorted(i for cyc in cx.vertex_cycles for i in cyc) == list(range(len(poly(word).edges)))


@pytest.mark.parametrize(
    "word,chi,g,b",
    [
        ("a b a^-1 b^-1", 0, 1, 0),
        ("a b c d", 1, 0, 1),
        ("a b a^-1 c", 0, 0, 2),  # annulus
        ("a a^-1", 2, 0, 0),
        ("a b a^-1 b^-1 c d c^-1 d^-1", -2, 2, 0),
    ],
)
def test_summary_examples(word, chi, g, b):
    s = topology_summary(poly(word))
    assert (s.euler_characteristic, s.genus, s.boundary_components, s.orientable) == (chi, g, b, True)
    assert s.euler_characteristic == 2 - 2 * s.genus - s.boundary_components


def test_malformed_words():
    with pytest.raises(MalformedWord):
        complex_from_polygon(poly("a a"))  # Moebius band gluing
    with pytest.raises(MalformedWord):
        complex_from_polygon(poly("a a^-1 a"))
    with pytest.raises(MalformedWord):
        complex_from_polygon(IdentifiedPolygon(()))


def test_pm_word_shape():
    p = hyperbolic_polygon(0)
    labels = [e.label for e in p.edges]
    assert labels == ["s0", "A", "s1", "B", "s2", "A", "s3", "B", "s4", "right", "cap", "left"]
    # f_0 sends the left end -1 of C_0 to the right end 9 of C_8: the copy is walked backwards
    assert [e.inverted for e in p.edges if e.label in "AB"] == [False, False, True, True]


def flat_chi_oracle(k):
    # disk with 2k slit holes has chi = 1 - 2k; gluing hole boundaries in pairs
    # drops 2k vertices and 2k edges, leaving chi unchanged
    return 1 - 2 * k


@pytest.mark.parametrize("k", range(0, 9))
def test_flat_truncations(k):
    s = truncation_topology(FlatTruncation(k))
    assert s.euler_characteristic == flat_chi_oracle(k)
    assert (s.genus, s.boundary_components) == (k, 1)


def test_flat_examples():
    assert truncation_topology(FlatTruncation(1)).as_dict() == {"chi": -1, "genus": 1, "boundary": 1, "orientable": True}
    assert truncation_topology(FlatTruncation(3)).euler_characteristic == -5


def test_flat_genus_monotone():
    genera = [truncation_topology(FlatTruncation(k)).genus for k in range(10)]
    assert all(b == a + 1 for a, b in zip(genera, genera[1:]))


def test_flat_vertex_count():
    # k = 1: two rim/bridge vertices and two cone points {3, 7}, {4, 8}
    assert complex_from_polygon(flat_polygon(1)).vertices == 4


def test_truncation_radius_must_enclose():
    with pytest.raises(ValueError):
        FlatTruncation(2, radius=16)
    FlatTruncation(2, radius=16.5)


@pytest.mark.parametrize("m", range(-5, 6))
def test_hyperbolic_truncation(m):
    s = truncation_topology(HyperbolicTruncation(m))
    assert (s.euler_characteristic, s.genus, s.boundary_components) == (-1, 1, 1)


def test_printed_pairing_does_not_give_pm():
    with pytest.raises(MalformedWord):
        truncation_topology(HyperbolicTruncation(0, variant=Variant.PRINTED))


def test_ends_examples():
    assert count_ends(4, 3) == 1
    assert count_ends(0, 3) == 1
    assert count_ends(4, 3, circumference=40.0) == 2


@pytest.mark.parametrize("k", range(0, 9))
@pytest.mark.parametrize("levels", [2, 5])
def test_plane_has_one_end(k, levels):
    assert count_ends(k, levels) == 1


def test_ends_levels_validation():
    with pytest.raises(ValueError):
        count_ends(1, 1)
