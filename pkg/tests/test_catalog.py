from extpack import catalog
from extpack import complexes as cx


def test_load_all_certifies():
    entries = catalog.load_all()
    assert set(entries) == set(catalog.EXPECTED)
    for e in entries.values():
        rep = cx.verify_extremal(e.complex)
        assert rep.ok and (rep.k, rep.g, rep.n) == (e.k, e.g, e.n)
        assert e.provenance


def test_derivation_matches_shipped_files():
    # the shipped files must be exactly what the constructions regenerate
    for name in ("X12", "X9", "X10"):
        derived = catalog.derive(name)
        shipped = catalog.load_entry(name).complex
        assert derived.polygons == shipped.polygons, name


def test_dual_fixtures():
    d18 = catalog.load_entry("D18")
    assert (d18.k, d18.g, d18.n) == (1, 4, 18)
    d14 = catalog.load_entry("D14")
    assert (d14.k, d14.g, d14.n) == (3, 6, 14)
