"""Published component sets against the pipeline, frame by frame.

Every reference entry records the frame adjustments (parameter sign
flips, overall sign, timelike axis) under which the pipeline output
matches the published text exactly.  These tests pin those frames and
also keep the known frame inconsistency visible: the one-parameter
family's components only match after a sign adjustment that the
two-parameter family does not need.
"""
from fractions import Fraction

import pytest

from swlie import (
    InputError,
    build_family,
    build_frame_variant,
    sw_norm2,
    sw_tensor,
)
from swlie.audit import (
    compare_component_tensor,
    published_frame,
    reference_components,
    reference_entry,
)


def test_two_parameter_sw_components_match_in_catalog_frame():
    rep = compare_component_tensor("A2", "sw")
    assert rep["exact_match"] is True
    assert rep["mismatches"] == []
    assert rep["frame"] == {}
    assert rep["components_checked"] == 27


def test_one_parameter_sw_components_need_sign_adjustments():
    rep = compare_component_tensor("A3", "sw")
    assert rep["exact_match"] is True
    assert rep["frame"] == {"parameter_signs": {"l": -1}, "overall_sign": -1}


def test_one_parameter_catalog_frame_disagrees_with_published_text():
    """Without the recorded sign adjustments the raw pipeline output does
    not reproduce the published components; the difference is real and
    must stay visible."""
    variables, entries, meta = reference_components("sw_components/A3")
    SW = sw_tensor(build_family("A3"))
    diffs = 0
    for idx, published in entries.items():
        got = SW.item(*idx)
        want = published.extend(("l",)) if hasattr(published, "extend") else published
        if str(got) != str(want):
            diffs += 1
    assert diffs > 0


def test_contraction_components_use_first_axis_timelike():
    for fam in ("A2", "A3"):
        rep = compare_component_tensor(fam, "contraction")
        assert rep["exact_match"] is True, rep["mismatches"]
        assert rep["frame"].get("timelike_axis") == 1


def test_reference_norm2_entries_are_exact():
    e2 = reference_entry("sw_norm2/A2")
    assert e2["frame"] == {}
    a2 = sw_norm2(build_family("A2"))
    assert str(a2) == "-3*l1^6 + 6*l1^5*l2 - 3*l1^4*l2^2"
    a3 = sw_norm2(build_family("A3"))
    assert a3.is_zero


def test_published_frames_on_record():
    assert published_frame("A2", "isotropy") == {}
    assert published_frame("A3", "harmonic-contraction").get("timelike_axis") == 1


def test_frame_variant_reproduces_reference_frame():
    """Applying the recorded adjustments by hand gives the same metric
    the comparison used."""
    moved = build_frame_variant(build_family("A2"), timelike_axis=1)
    diag = [str(moved.metric.g.item(i, i)) for i in range(3)]
    assert diag == ["-1", "1", "1"]


def test_unknown_reference_key_rejected():
    with pytest.raises(InputError):
        reference_entry("sw_components/A7")
    with pytest.raises(InputError):
        compare_component_tensor("A2", "nope")
