"""Smoke tests for the _lams extension module."""

import _lams
import pytest


def test_check_type():
    assert _lams.check_type("(\\x:B. x * x) ((1/2)*sqrt2 . (|0> + |1>))") == "S(B x B)"
    assert _lams.check_type("zero[B]") == "S(B)"


def test_normalize_cnot_trace():
    out = _lams.normalize("(\\x:B. x * x) ((1/2)*sqrt2 . (|0> + |1>))")
    assert out["normal_form"] == "(1/2)*sqrt2 . (|0> * |0> + |1> * |1>)"
    assert [s["rule"] for s in out["steps"]] == [
        "lin_r_scal",
        "lin_r_plus",
        "beta_b",
        "beta_b",
    ]


def test_denote():
    assert (
        _lams.denote("(\\x:B. x * x) ((1/2)*sqrt2 . (|0> + |1>))")
        == "1/2*sqrt2 |00> + 1/2*sqrt2 |11>"
    )
    assert _lams.denote("zero[B]") == "0 : S(B)"


def test_verify():
    assert _lams.verify("upR (((1/2)*sqrt2 . (|0> + |1>)) * |0>)")


def test_rings():
    assert _lams.check_type("1/2 . |0>", ring="q") == "S(B)"
    with pytest.raises(_lams.LamsParseError):
        _lams.check_type("1/2 . |0>", ring="z")
    with pytest.raises(_lams.LamsTypeError):
        _lams.check_type("\\x:S(B). x * x")


def test_properties_smoke():
    reports = _lams.run_properties(seed=3, count=10)
    assert set(reports) == {
        "subject_reduction",
        "soundness_per_step",
        "strong_normalization",
        "local_confluence",
        "completeness_ground",
        "substitution_lemma",
        "derivation_independence",
    }
    for name, rep in reports.items():
        assert rep["failures"] == [], name
