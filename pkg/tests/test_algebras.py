"""Catalog families, unimodularity, classification, JSON round trips."""
from fractions import Fraction

import pytest

from swlie import (
    FAMILY_IDS,
    InputError,
    build_family,
    build_frame_variant,
    classify_type,
    dump_algebra,
    family_variables,
    load_algebra,
)


def test_catalog_ids():
    assert FAMILY_IDS == ("A1", "A2", "A3", "A4", "A4-variant")
    assert family_variables("A1") == ("l1", "l2", "l3")
    assert family_variables("A3") == ("l",)


def test_three_diagonal_families_unimodular_symbolically():
    for fam in ("A1", "A2", "A3"):
        mla = build_family(fam)
        assert mla.sc.is_unimodular()
        assert mla.sc.jacobi_violations() == []


def test_fourth_family_as_printed_breaks_both_checks():
    """The printed fourth family has trace(ad_{e1}) = l3 and fails the
    Jacobi identity on the basis triple whenever l3 != 0."""
    a4 = build_family("A4")
    traces = [str(t) for t in a4.sc.ad_traces()]
    assert traces == ["l3", "0", "0"]
    assert not a4.sc.is_unimodular()
    violations = a4.sc.jacobi_violations()
    assert [v.triple for v in violations] == [(1, 2, 3)]
    comps = [str(c) for c in violations[0].components]
    assert comps == ["-a*l3", "b*l3", "0"]
    # the defect is proportional to l3: it disappears on the l3 = 0 slice
    numeric = build_family("A4", {"a": 2, "b": 3, "l3": 0})
    assert numeric.sc.jacobi_violations() == []


def test_fourth_family_variant_is_clean():
    variant = build_family("A4-variant")
    assert variant.sc.is_unimodular()
    assert variant.sc.jacobi_violations() == []
    assert [str(t) for t in variant.sc.ad_traces()] == ["0", "0", "0"]


def test_variant_requires_nonzero_skew_parameter():
    with pytest.raises(InputError):
        build_family("A4", {"a": 1, "b": 0, "l3": 1})


def test_unknown_family_rejected():
    with pytest.raises(InputError):
        build_family("A9")


def test_substitute_requires_full_assignment():
    mla = build_family("A2")
    with pytest.raises(InputError):
        mla.substitute({"l1": 1})
    numeric = mla.substitute({"l1": 1, "l2": Fraction(1, 2)})
    assert not numeric.is_symbolic()
    assert numeric.variables == ()


def test_partial_params_rejected_by_build():
    with pytest.raises(InputError):
        build_family("A2", {"l1": 1})


def test_classification_samples():
    assert classify_type("A1", {"l1": 1, "l2": 1, "l3": 1}) == "su(2)"
    assert classify_type("A1", {"l1": 1, "l2": 1, "l3": -1}) == "sl(2,R)"
    assert classify_type("A1", {"l1": 1, "l2": 1, "l3": 0}) == "e(2)"
    assert classify_type("A1", {"l1": 1, "l2": 0, "l3": 0}) == "h"
    assert classify_type("A1", {"l1": 0, "l2": 0, "l3": 0}) == "R^3"
    assert classify_type("A2", {"l1": 1, "l2": 2}) == "sl(2,R)"
    assert classify_type("A2", {"l1": 0, "l2": 0}) == "h"
    assert classify_type("A3", {"l": 2}) == "sl(2,R)"
    assert classify_type("A3", {"l": 0}) == "e(1,1)"


def test_dump_load_round_trip():
    for fam, params in (("A2", {"l1": 1, "l2": 2}), ("A3", None), ("A1", None)):
        mla = build_family(fam, params)
        doc = dump_algebra(mla)
        again = load_algebra(doc)
        assert again.sc.c.equals(mla.sc.c)
        assert again.metric.g.equals(mla.metric.g)
        assert again.variables == mla.variables


def good_doc():
    return {
        "name": "demo",
        "dim": 3,
        "variables": [],
        "metric": [[-1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "brackets": [{"i": 1, "j": 2, "coeffs": {"3": 1}}],
    }


def test_load_validation():
    with pytest.raises(InputError):  # only dimension 3 is supported
        load_algebra({**good_doc(), "dim": 4})
    with pytest.raises(InputError):  # floats are not exact, reject them
        load_algebra({**good_doc(), "metric": [[-1.0, 0, 0], [0, 1, 0], [0, 0, 1]]})
    with pytest.raises(InputError):  # booleans are not numbers here
        load_algebra({**good_doc(), "metric": [[True, 0, 0], [0, 1, 0], [0, 0, 1]]})
    with pytest.raises(InputError):
        load_algebra({**good_doc(), "name": ""})
    doc = good_doc()
    doc["brackets"] = [
        {"i": 1, "j": 2, "coeffs": {"3": 1}},
        {"i": 2, "j": 1, "coeffs": {"3": -1}},  # duplicate pair
    ]
    with pytest.raises(InputError):
        load_algebra(doc)
    with pytest.raises(InputError):  # singular metric
        load_algebra({**good_doc(), "metric": [[0, 0, 0], [0, 1, 0], [0, 0, 1]]})


def test_load_accepts_rational_strings_and_polynomials():
    doc = good_doc()
    doc["variables"] = ["t"]
    doc["metric"] = [["-1", 0, 0], [0, "1/1", 0], [0, 0, 1]]
    doc["brackets"] = [{"i": 1, "j": 2, "coeffs": {"3": "t"}}]
    mla = load_algebra(doc)
    assert mla.is_symbolic()
    assert str(mla.sc.c.item(2, 0, 1)) == "t"


def test_frame_variant_sign_flip():
    base = build_family("A3")
    flipped = build_frame_variant(base, parameter_signs={"l": -1})
    # the bracket coefficients pick up the substituted sign
    orig = build_family("A3").substitute({"l": Fraction(5)})
    derived = flipped.substitute({"l": Fraction(-5)})
    assert orig.sc.c.equals(derived.sc.c)


def test_frame_variant_timelike_axis_move():
    base = build_family("A2")  # catalog metric has the timelike slot last
    moved = build_frame_variant(base, timelike_axis=1)
    diag = [moved.metric.g.item(i, i) for i in range(3)]
    assert [str(d) for d in diag] == ["-1", "1", "1"]
    assert moved.metric.signature() == base.metric.signature()


def test_frame_variant_validation():
    base = build_family("A2")
    with pytest.raises(InputError):
        build_frame_variant(base, timelike_axis=4)
    with pytest.raises(InputError):
        build_frame_variant(base, parameter_signs={"l1": 2})
    with pytest.raises(InputError):
        build_frame_variant(base, parameter_signs={"zz": -1})
