import re
import shutil
from importlib.resources import files
from pathlib import Path

import pytest

from bordered_calc.catalog import (CatalogEntry, InvalidFixture, UnknownEntry, format_payload,
                                   list_entries, load, load_all, parse_filtered_complex,
                                   parse_gluing, solid_torus)
from bordered_calc.curves import curve_to_type_d, line
from bordered_calc.typed import ParseError, is_isomorphic, validate
from bordered_calc.verification import run_criterion

REQUIRED = [
    "cfd.trefoil.mu-lambda", "cfa.trefoil.mu-lambda", "cfd.N.s0", "cfd.N.s1",
    "cfd.N.s0.twisted-2", "cfd.N.s1.twisted-2", "cfd.N.s1.sheared-unreduced",
    "curve.N.s0", "curve.N.s1", "curve.trefoil.mu-lambda", "cfk.unknot",
    "cfk.staircase.T2-3", "cfk.staircase.T2-5", "cfk.staircase-plus-box.T2-5",
    "gluing.prototype.slope2", "cfd.solid-torus.framing-0", "cfd.solid-torus.framing-8",
]


@pytest.fixture
def root(tmp_path):
    dest = tmp_path / "fixtures"
    shutil.copytree(Path(str(files("bordered_calc") / "fixtures")), dest)
    return dest


def test_required_entries_present():
    names = set(list_entries())
    assert set(REQUIRED) <= names


def test_every_entry_loads_and_reprints():
    for name, entry in load_all().items():
        assert isinstance(entry, CatalogEntry)
        text = format_payload(entry.payload)
        assert text.strip(), name


def test_figure_derived_entries_name_their_guard():
    tests = Path(__file__).with_name("test_acceptance.py").read_text()
    flagged = [e for e in load_all().values() if e.figure_derived]
    assert flagged
    for entry in flagged:
        test_name = entry.acceptance_test.split("::")[1]
        assert re.search(rf"def {test_name}\(", tests), entry.name


def test_provenance_comes_from_header():
    assert "trefoil" in load("cfd.trefoil.mu-lambda").provenance
    assert load("cfd.solid-torus.framing-3").provenance


def test_solid_tori():
    for n in (-2, 0, 5):
        d = load(f"cfd.solid-torus.framing-{n}").payload
        assert is_isomorphic(d, curve_to_type_d(line(1, n)))
        assert validate(d) == []
    assert len(solid_torus(0)) == 1


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        load("cfd.nothing")
    with pytest.raises(KeyError):
        load("zzz.nothing")


def test_invalid_fixture_is_rejected(root):
    path = root / "type_d" / "cfd.N.s0.twisted-2.txt"
    path.write_text(path.read_text().replace("edge a3 b1 r1", "edge a3 b1 r2"))
    with pytest.raises(InvalidFixture):
        load("cfd.N.s0.twisted-2", root)


def test_deleting_an_edge_breaks_the_pairing_criterion(root):
    assert run_criterion(3, root).passed
    path = root / "type_d" / "cfd.N.s0.twisted-2.txt"
    path.write_text(path.read_text().replace("edge a1 b2 r3\n", ""))
    assert not run_criterion(3, root).passed


def test_secondary_formats():
    c = parse_filtered_complex("generator x 0 0\n")
    assert c.generators == (("x", 0, 0),)
    with pytest.raises(ParseError):
        parse_filtered_complex("arrow a b\n")
    assert parse_gluing("# comment\nmatrix 1 0 2 -1\n").s == -1
    with pytest.raises(ParseError):
        parse_gluing("matrix 1 0 2\n")
