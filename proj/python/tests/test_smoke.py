import pytest

import scalelimit


def test_multitype_of_builtin_domain():
    r = scalelimit.multitype("e124", budget=500)
    assert r["multitype"] == [4, 8, 1]
    assert r["valid"]


def test_inline_domain_text():
    r = scalelimit.multitype("n = 1\nP = abs2(z1)^2\n", budget=100)
    assert r["multitype"] == [4, 1]


def test_classify_tangency_order():
    r = scalelimit.classify("kn_modified", "kn_modified")
    assert r["nu"] == 2
    assert r["witness"]["value"] == "144"


def test_scale_matches_cli_limit():
    r = scalelimit.scale("e124", "e124", multipliers=["1/2", "1"])
    assert r["kind"] == "scale"
    assert r["epsilon"] == "j^(-2)"
    assert "abs2(z1)" in r["limit"]["canonical"]


def test_examples_and_golden_suite():
    assert "e124" in scalelimit.example_names()
    assert scalelimit.example("kn_modified")["golden"]["pass"]
    assert scalelimit.verify("golden")["pass"]
    assert scalelimit.verify("lemma42", "kn", "kn_original")["pass"]


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError, match="position"):
        scalelimit.multitype("n = 1\nP = abs2(z1) * * z1\n")
    with pytest.raises(ArithmeticError, match="not inside"):
        scalelimit.classify("kn", "kn_modified")
    with pytest.raises(scalelimit.InputError):
        scalelimit.example("no_such_case")
