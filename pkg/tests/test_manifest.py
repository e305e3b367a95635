"""Manifest parsing: grammar, diagnostics, reference resolution, round trip."""

import pytest

from branegauge.errors import ManifestError
from branegauge.manifest import (
    TASK_KINDS,
    parse_manifest,
    print_manifest,
)
from branegauge.modules import hilbert_window


GOOD = """\
[ring]
n = 2

[module M]
twists = [0, 1]
relations = [["x0^2", "0"], ["x1^2", "x2"]]

[complex K]
degrees = 0..1
term 0 = O(-1)
term 1 = O(0)
map 0 = [["x0"]]

[task resolve]
module = M

[task cech]
module = O(-2)
i = 1
"""


def test_parse_good_manifest():
    m = parse_manifest(GOOD)
    assert m.n == 2
    assert "M" in m.modules
    assert "K" in m.complexes
    assert len(m.tasks) == 2
    assert m.tasks[0].kind == "resolve"


def test_module_with_two_generators():
    m = parse_manifest(GOOD)
    mod = m.modules["M"]
    assert mod.rank == 2
    # relations are column-major: each inner list is one relation column
    assert mod.relations.cols == 2
    assert str(mod.relations.entries[1][1]) == "x2"


def test_builtin_references_resolve():
    m = parse_manifest(GOOD)
    o2 = m.resolve_module("O(-2)")
    assert o2.rank == 1
    assert o2.cover_twists == (2,)
    om = m.resolve_module("Omega1")
    assert om.rank == 3  # pairs on the plane
    s = m.resolve_module("S(2)")
    assert hilbert_window(s, 0, 2) == [0, 1, 2]
    named = m.resolve_module("M")
    assert named is m.modules["M"]


def test_unknown_reference_has_line_info():
    bad = GOOD.replace("module = M", "module = Missing")
    with pytest.raises(ManifestError) as e:
        parse_manifest(bad)
    assert "Missing" in str(e.value)
    assert e.value.line is not None


def test_ring_block_must_come_first():
    text = "[module M]\ntwists = [0]\n\n[ring]\nn = 2\n"
    with pytest.raises(ManifestError) as e:
        parse_manifest(text)
    assert "ring" in str(e.value)


def test_duplicate_module_rejected():
    text = GOOD + "\n[module M]\ntwists = [0]\n"
    with pytest.raises(ManifestError) as e:
        parse_manifest(text)
    assert "M" in str(e.value)


def test_builtin_shadowing_rejected():
    text = GOOD + "\n[module Omega1]\ntwists = [0]\n"
    with pytest.raises(ManifestError):
        parse_manifest(text)


def test_bad_polynomial_diagnostic_carries_position():
    text = GOOD.replace('"x1^2"', '"x1^"')
    with pytest.raises(ManifestError) as e:
        parse_manifest(text)
    assert e.value.line is not None


def test_unknown_task_kind_lists_vocabulary():
    text = GOOD + "\n[task frobnicate]\nmodule = M\n"
    with pytest.raises(ManifestError) as e:
        parse_manifest(text)
    msg = str(e.value)
    assert "frobnicate" in msg
    assert "resolve" in msg  # the expected vocabulary is listed


def test_missing_required_param_rejected():
    text = GOOD + "\n[task cech]\nmodule = M\n"  # i missing
    with pytest.raises(ManifestError) as e:
        parse_manifest(text)
    assert "i" in str(e.value)


def test_complex_with_bad_square_rejected():
    text = """\
[ring]
n = 1

[complex B]
degrees = 0..2
term 0 = O(2)
term 1 = O(1)
term 2 = O(0)
map 0 = [["x0"]]
map 1 = [["x1"]]
"""
    with pytest.raises(ManifestError):
        parse_manifest(text)


def test_task_kind_vocabulary_is_complete():
    assert "resolve" in TASK_KINDS
    assert "gauge-bound" in TASK_KINDS
    assert "lem1-check" in TASK_KINDS
    assert len(TASK_KINDS) == 14


def test_print_parse_round_trip():
    m = parse_manifest(GOOD)
    text = print_manifest(m)
    m2 = parse_manifest(text)
    assert print_manifest(m2) == text
    assert m2.n == m.n
    assert set(m2.modules) == set(m.modules)
    assert set(m2.complexes) == set(m.complexes)
    assert [t.kind for t in m2.tasks] == [t.kind for t in m.tasks]
    # the rebuilt module presents the same graded object
    assert (hilbert_window(m2.modules["M"], 0, 3)
            == hilbert_window(m.modules["M"], 0, 3))


def test_comments_and_blank_lines_ignored():
    text = "# leading comment\n" + GOOD.replace(
        "n = 2", "n = 2   # dimension")
    m = parse_manifest(text)
    assert m.n == 2


def test_bytes_input_accepted():
    m = parse_manifest(GOOD.encode())
    assert m.n == 2


def test_complex_missing_term_defaults_to_zero():
    text = """\
[ring]
n = 1

[complex G]
degrees = 0..2
term 0 = O(0)
term 2 = O(3)
"""
    m = parse_manifest(text)
    g = m.complexes["G"]
    assert g.term(1).rank == 0
    assert g.term(0).rank == 1
