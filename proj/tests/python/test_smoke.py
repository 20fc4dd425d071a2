"""Smoke tests for the python bindings."""

import pytest

import uhatlab


def test_builtin_palindrome_recognizes():
    rec = uhatlab.builtin("palindrome-guhat")
    assert rec.recognize("abba")
    assert not rec.recognize("ab")
    assert rec.recognize("")  # empty word convention


def test_parse_program_and_run():
    text = """
init charposlen alphabet=a,b
L1(i) = attend rightmost j [mask=none, score=-pow(n-1-i-j,2)] value=if(L0[i].0==L0[j].0,1,0) default=0
L2(i) = attend rightmost j [mask=none, score=-L1[j]] value=L1[j] default=0
accept at last when L2[i]==1
empty accept
"""
    rec = uhatlab.parse_program(text)
    layers = rec.run("ab")
    assert len(layers) == 3  # initialization plus one row per line
    assert all(len(row) == 2 for row in layers)
    assert layers[1] == ["0", "0"]
    assert rec.classify()["finite_type"] is False
    round_tripped = uhatlab.parse_program(rec.to_dsl())
    assert round_tripped.to_dsl() == rec.to_dsl()
    from_json = uhatlab.program_from_json(rec.to_json())
    assert from_json.recognize("abba")


def test_transform_pass_preserves_language():
    rec = uhatlab.builtin("palindrome-separable")
    bilinear = uhatlab.apply_pass(rec, "separable-to-bilinear")
    result = uhatlab.verify_pass(rec, bilinear, max_len=6)
    assert result["equivalent"]
    assert result["layer_delta"] == 2


def test_check_equivalence_with_python_callable():
    rec = uhatlab.builtin("dyck1-1")

    def oracle(word):
        depth = 0
        for c in word:
            depth += 1 if c == "(" else -1
            if depth < 0 or depth > 1:
                return False
        return depth == 0

    assert uhatlab.check_equivalence(rec, oracle, "()", max_len=8) is None
    cx = uhatlab.check_equivalence(rec, "all-strings", "()", max_len=4)
    assert cx == "("


def test_fixability():
    witness = uhatlab.search_unfixable("majority", "1/5", 8, 9, "01")
    assert witness is not None and witness["verdict"] == "unfixable"
    fixed = uhatlab.check_fixability("all-strings", "????", "01", "1/2")
    assert fixed["verdict"] == "fixed_in"


def test_logic():
    f = uhatlab.parse_ltl("!([b] & X [a]) & !(true U ([b] & X [a]))")
    assert f.recognize("aabb")
    assert not f.recognize("aba")
    g = uhatlab.parse_fo("(forall x. (forall y. !(x < y) | !([b](x) & [a](y))))")
    assert g.evaluate("aabb")
    assert not g.evaluate("aba")
    with pytest.raises(uhatlab.UhatError):
        f.recognize("")


def test_circuit():
    c = uhatlab.parse_circuit("1 x1\n2 x2\n3 AND 1 2\noutputs 3\n")
    assert c.evaluate("11") == "1"
    assert c.evaluate("10") == "0"
    assert c.metrics() == (1, 2)
    assert uhatlab.encode_binary("ab", {"a": "0", "b": "1"}) == "01"


def test_sbar():
    assert uhatlab.sbar(2, 1, 4, 1) == "65537/16384"
    report = uhatlab.audit_sbar(8)
    assert report["ok"]
