"""The rewrite-rule compiler against the scanning semantics.

Expected outputs were derived by hand (and cross-checked with
oracle_replace) before being frozen here.  The rule applies its target
leftmost-longest, reads the left context on the output written so far and
the right context on the input still ahead."""

import pytest

from fsrw import (
    FsmError,
    SymbolTable,
    concat,
    cross_product,
    empty_string,
    enumerate_pairs,
    equivalent,
    literal,
    oracle_replace,
    replace,
    replace_factors,
    star,
    transduce,
    union,
    word,
)

from gen import all_strings, random_replace_rule

import random


def tb():
    return SymbolTable("abx")


def rule(table, src, dst, left="", right="", **kw):
    t = cross_product(src, word(table, dst))
    l = word(table, left) if left else empty_string(table)
    r = word(table, right) if right else empty_string(table)
    return replace(t, l, r, **kw)


def out(m, s):
    res = transduce(m, list(s))
    assert not res.truncated
    return set(res.strings())


def test_unconditional_single_symbol():
    t = tb()
    m = rule(t, literal(t, "a"), "b")
    assert out(m, "axa") == {"bxb"}
    assert out(m, "") == {""}
    assert out(m, "aaa") == {"bbb"}


def test_longest_match_is_preferred():
    t = tb()
    m = rule(t, concat(literal(t, "a"), star(literal(t, "b"))), "x")
    assert out(m, "abb") == {"x"}
    assert out(m, "abab") == {"xx"}
    assert out(m, "ba") == {"bx"}


def test_left_context_sees_the_output():
    t = tb()
    m = rule(t, literal(t, "a"), "x", left="x")
    assert out(m, "xaa") == {"xxx"}
    assert out(m, "aa") == {"aa"}


def test_right_context_sees_the_input():
    t = tb()
    m = rule(t, literal(t, "a"), "b", right="b")
    assert out(m, "aabab") == {"abbbb"}
    assert out(m, "aa") == {"aa"}


def test_both_contexts():
    t = tb()
    m = rule(t, literal(t, "a"), "x", left="b", right="b")
    assert out(m, "bab") == {"bxb"}
    assert out(m, "ba") == {"ba"}
    assert out(m, "ab") == {"ab"}


def test_empty_string_in_domain():
    t = tb()
    m = rule(t, star(literal(t, "a")), "x")
    assert out(m, "") == {"x"}
    assert out(m, "a") == {"x"}
    assert out(m, "b") == {"xbx"}
    assert out(m, "ab") == {"xbx"}
    assert out(m, "aa") == {"x"}
    assert out(m, "bb") == {"xbxbx"}


def test_empty_string_in_domain_with_right_context():
    t = tb()
    src = union(empty_string(t), literal(t, "a"))
    m = replace(cross_product(src, word(t, "ab")),
                empty_string(t), literal(t, "b"), )
    assert out(m, "ab") == {"abb"}


def test_adjacent_deletions():
    # a fully deleted match leaves only its start marker behind, so the
    # next match's left-context check must see through a trailing marker
    t = tb()
    target = cross_product(literal(t, "a"), empty_string(t))
    eps = empty_string(t)
    m = replace(target, eps, eps)
    assert out(m, "aa") == {""}
    assert out(m, "aab") == {"b"}
    m2 = replace(target, eps, literal(t, "a"))
    assert out(m2, "aaa") == {"a"}


def test_multivalued_target():
    t = tb()
    target = cross_product(literal(t, "a"),
                           union(literal(t, "b"), literal(t, "x")))
    m = replace(target, empty_string(t), empty_string(t))
    assert out(m, "aa") == {"bb", "bx", "xb", "xx"}


def test_target_must_not_be_constrained_to_recognizers():
    # contexts must be recognizers, the target need not be
    t = tb()
    bad = cross_product(literal(t, "a"), literal(t, "b"))
    with pytest.raises(FsmError, match="left context must be a recognizer"):
        replace(bad, bad, empty_string(t))
    with pytest.raises(FsmError, match="right context must be a recognizer"):
        replace(bad, empty_string(t), bad)


def test_factor_count():
    t = tb()
    parts = replace_factors(cross_product(literal(t, "a"), word(t, "b")),
                            empty_string(t), empty_string(t))
    assert len(parts) == 9


def test_marker_glyphs_in_the_user_alphabet():
    # the bracket glyphs double as ordinary user symbols
    t = SymbolTable(["<1", "1>", "<2", "2>", "0", "1", "a"])
    m = rule(t, literal(t, "<1"), "a")
    res = transduce(m, ["<1", "0", "<1"])
    assert set(res.strings()) == {"a0a"}


def test_agrees_with_oracle_on_pinned_rules():
    t = tb()
    cases = [
        (literal(t, "a"), "b", "", ""),
        (concat(literal(t, "a"), star(literal(t, "b"))), "x", "", ""),
        (literal(t, "a"), "x", "x", ""),
        (literal(t, "a"), "b", "", "b"),
        (star(literal(t, "a")), "x", "", ""),
        (union(empty_string(t), literal(t, "b")), "a", "", "x"),
    ]
    for src, dst, lc, rc in cases:
        target = cross_product(src, word(t, dst))
        l = word(t, lc) if lc else empty_string(t)
        r = word(t, rc) if rc else empty_string(t)
        m = replace(target, l, r)
        for s in all_strings("abx", 4):
            want = oracle_replace(target, l, r, s)
            assert out(m, s) == want, (dst, lc, rc, s)


def machine_relation(m, max_len):
    rel = {}
    for inp, outp in enumerate_pairs(m, max_len):
        rel.setdefault(inp, set()).add(outp)
    return rel


def test_agrees_with_oracle_on_random_rules():
    rng = random.Random(99)
    for trial in range(12):
        table, t, left, right = random_replace_rule(rng)
        m = replace(t, left, right)
        rel = machine_relation(m, 5)
        glyphs = "".join(table.user_glyphs())
        for s in all_strings(glyphs, 5):
            want = {"".join(o) for o in
                    (oracle_replace(t, left, right, "".join(s)),)}
            got = {"".join(o) for o in rel.get(tuple(s), set())}
            want = oracle_replace(t, left, right, "".join(s))
            assert got == want, (trial, s)


def test_verbatim_formulas_match_on_epsilon_free_domains():
    t = tb()
    target = cross_product(concat(literal(t, "a"), star(literal(t, "b"))),
                           word(t, "x"))
    eps = empty_string(t)
    safe = replace(target, eps, eps, stack_safe=True)
    verbatim = replace(target, eps, eps, stack_safe=False)
    for s in all_strings("abx", 4):
        assert out(safe, s) == out(verbatim, s)


def test_verbatim_formulas_break_on_epsilon_domains():
    # with the empty string in the domain every unused candidate start
    # carries a stacked opener pair; the strict no-insert-at-end prefix
    # language in the verbatim left filter gives those tapes no image,
    # so a nonempty left context empties the whole machine
    t = tb()
    target = cross_product(star(literal(t, "a")), word(t, "x"))
    eps = empty_string(t)
    safe = replace(target, literal(t, "b"), eps, stack_safe=True)
    verbatim = replace(target, literal(t, "b"), eps, stack_safe=False)
    assert out(safe, "b") == {"bx"}
    res = transduce(verbatim, ["b"])
    assert set(res.strings()) == set()


def test_optimized_filter_gives_the_same_machine():
    t = tb()
    for src in (literal(t, "a"),
                concat(literal(t, "a"), star(literal(t, "b"))),
                star(literal(t, "a"))):
        target = cross_product(src, word(t, "x"))
        eps = empty_string(t)
        plain = replace(target, eps, eps, optimized=False)
        fast = replace(target, eps, eps, optimized=True)
        assert equivalent(plain, fast)
