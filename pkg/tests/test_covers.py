import pytest

from conftest import random_complexes
from extpack import complexes as cx
from extpack import covers
from extpack.complexes import PolygonComplex
from extpack.errors import CoverError, InfeasibleSpecError


def test_double_cover_classical():
    sphere = covers.orientation_double_cover(PolygonComplex(((1, -1),)))
    inv = cx.surface_invariants(sphere)
    assert inv.euler_characteristic == 2 and inv.orientable
    torus = covers.orientation_double_cover(PolygonComplex(((1, 2, -1, 2),)))
    inv = cx.surface_invariants(torus)
    assert inv.euler_characteristic == 0 and inv.orientable


def test_double_cover_rejects_orientable():
    with pytest.raises(CoverError):
        covers.orientation_double_cover(PolygonComplex(((1, 2, 1, 2),)))


def test_double_cover_of_x7(seeds):
    dc = covers.orientation_double_cover(seeds[7])
    inv = cx.surface_invariants(dc)
    assert inv.orientable and inv.genus == 2
    assert dc.num_polygons == 12 and set(dc.sizes) == {7}
    sizes = cx.vertex_class_sizes(dc)
    assert sizes[0] == 3 and sizes[-1] == 3


def test_double_cover_deck_swap(seeds):
    dc = covers.orientation_double_cover(seeds[9])
    swapped = covers.deck_swapped_double_cover(seeds[9])
    assert swapped.polygons != dc.polygons  # the swap fixes no polygon
    assert cx.canonicalize(swapped).polygons == cx.canonicalize(dc).polygons


def test_double_cover_doubles_chi_on_random_complexes():
    # the sheet-propagation orientability test must agree with cover
    # connectivity: the double cover construction only succeeds (connected)
    # on non-orientable input and raises on orientable input
    for c in random_complexes(1000, seed=31):
        inv = cx.surface_invariants(c)
        if inv.orientable:
            with pytest.raises(CoverError):
                covers.orientation_double_cover(c)
            continue
        dc = covers.orientation_double_cover(c)
        dinv = cx.surface_invariants(dc)
        assert dinv.orientable
        assert dinv.euler_characteristic == 2 * inv.euler_characteristic
        assert dc.num_polygons == 2 * c.num_polygons
        assert dc.num_edges == 2 * c.num_edges


def test_cyclic_cover_degree_one_is_identity(seeds):
    for c in seeds.values():
        assert covers.find_nonorientable_cyclic_cover(c, 1).polygons == c.polygons


@pytest.mark.parametrize(
    "n_base,deg,expect",
    [(12, 2, (2, 4, 12)), (7, 3, (18, 5, 7)), (9, 3, (6, 5, 9))],
)
def test_found_cyclic_covers(seeds, n_base, deg, expect):
    out = covers.find_nonorientable_cyclic_cover(seeds[n_base], deg)
    rep = cx.verify_extremal(out)
    assert (rep.k, rep.g, rep.n) == expect
    base_inv = cx.surface_invariants(seeds[n_base])
    assert cx.surface_invariants(out).euler_characteristic == deg * base_inv.euler_characteristic


def test_cyclic_cover_of_x10():
    from extpack.grafting import build_primitive

    x10 = build_primitive(10)
    out = covers.find_nonorientable_cyclic_cover(x10, 2)
    rep = cx.verify_extremal(out)
    assert (rep.k, rep.g, rep.n) == (6, 6, 10)


def test_cyclic_cover_precondition_errors(seeds):
    x12 = seeds[12]
    labels = sorted(cx.occurrences(x12))
    zero = covers.VoltageAssignment.from_dict(2, {lab: 0 for lab in labels})
    with pytest.raises(CoverError, match="disconnected"):
        covers.cyclic_cover(x12, zero)
    bad = covers.VoltageAssignment.from_dict(2, {lab: 1 for lab in labels})
    with pytest.raises(CoverError, match="net voltage"):
        covers.cyclic_cover(x12, bad)
    with pytest.raises(CoverError, match="not extremal"):
        covers.cyclic_cover(PolygonComplex(((1, 2, -1, 2),)), zero)


def test_explicit_voltage_route_matches_search(seeds):
    va = covers.find_voltage(seeds[12], 2)
    out = covers.cyclic_cover(seeds[12], va)
    rep = cx.verify_extremal(out)
    assert (rep.k, rep.g, rep.n) == (2, 4, 12)


def test_realize_spec_examples(seeds):
    r = covers.realize_spec(4, 4)
    rep = cx.verify_extremal(r)
    assert (rep.k, rep.g, rep.n) == (4, 4, 9)
    same = covers.realize_spec(6, 3)
    rep = cx.verify_extremal(same)
    assert (rep.k, rep.g, rep.n) == (6, 3, 7)
    with pytest.raises(InfeasibleSpecError):
        covers.realize_spec(4, 3)


def test_realize_spec_genus_arithmetic():
    # cover degree j scales genus as g = 2 + j (g_N - 2)
    from extpack.feasibility import cover_index, primitive_pair

    for k, g in [(2, 4), (12, 4), (18, 5), (9, 5), (6, 6)]:
        out = covers.realize_spec(k, g)
        rep = cx.verify_extremal(out)
        assert (rep.k, rep.g) == (k, g)
        j = cover_index(k, g)
        gN = primitive_pair(rep.n)[1]
        assert g == 2 + j * (gN - 2)
