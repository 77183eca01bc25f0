"""Marker-cell building blocks.

A cell is a glyph followed by a flag symbol: "0" for ordinary text, "1" for
a marker.  Markerhood is carried by the flag, so a bracket glyph with flag
"0" is ordinary text.  Expected values below are spelled as flat glyph
sequences with the flags written out."""

import itertools

import pytest

from fsrw import (
    FsmError,
    MarkerKit,
    SymbolTable,
    accepts,
    compose,
    concat,
    cross_product,
    empty_string,
    lang_enum,
    literal,
    project,
    star,
    word,
)


@pytest.fixture
def kit():
    return MarkerKit(SymbolTable("ab"))


def cells(kit, text):
    """'a b <2' -> ['a', '0', 'b', '0', '<2', '1'] etc."""
    out = []
    for g in text.split():
        out.append(g)
        out.append("1" if g in ("<1", "<2", "1>", "2>") else "0")
    return out


def test_sig_is_one_ordinary_cell(kit):
    assert accepts(kit.sig, ["a", "0"])
    # a bracket glyph with flag 0 is ordinary text, not a marker
    assert accepts(kit.sig, ["<1", "0"])
    assert not accepts(kit.sig, ["<1", "1"])
    assert not accepts(kit.sig, ["a", "0", "b", "0"])


def test_xsig_allows_markers_too(kit):
    assert accepts(kit.xsig, ["b", "0"])
    assert accepts(kit.xsig, ["2>", "1"])
    assert not accepts(kit.xsig, ["0", "a"])


def test_non_markers_of_encodes_a_recognizer(kit):
    lang = kit.non_markers_of(word(kit.table, "ab"))
    assert lang_enum(lang, 4) == {"a0b0"}


def test_non_markers_of_encodes_the_range_of_a_transduction(kit):
    t = cross_product(literal(kit.table, "a"), literal(kit.table, "b"))
    assert lang_enum(kit.non_markers_of(t), 4) == {"b0"}


def placements(kit, maker, text, bound=8):
    src = kit.non_markers_of(word(kit.table, list(text)))
    return lang_enum(project(compose(src, maker), "range"), bound)


def test_intro_family_placement(kit):
    everywhere = placements(kit, kit.intro(kit.lb2), "a")
    assert "a0" in everywhere
    assert "<21a0" in everywhere
    assert "a0<21" in everywhere

    not_at_start = placements(kit, kit.xintro(kit.lb2), "a")
    assert "<21a0" not in not_at_start
    assert "a0<21" in not_at_start

    not_at_end = placements(kit, kit.introx(kit.lb2), "a")
    assert "<21a0" in not_at_end
    assert "a0<21" not in not_at_end

    neither = placements(kit, kit.xintrox(kit.lb2), "ab")
    assert "a0<21b0" in neither
    assert "<21a0b0" not in neither
    assert "a0b0<21" not in neither


def test_intro_family_on_the_empty_string(kit):
    # with no cell to anchor the insertion, only the identity survives
    assert placements(kit, kit.xintro(kit.lb2), "") == {""}
    assert placements(kit, kit.introx(kit.lb2), "") == {""}
    assert placements(kit, kit.xintrox(kit.lb2), "") == {""}


def test_ign_family_are_projections(kit):
    base = kit.non_markers_of(word(kit.table, "ab"))
    seen = lang_enum(kit.ign(base, kit.lb1), 8)
    assert "a0b0" in seen
    assert "<11a0b0" in seen
    assert "a0<11b0" in seen
    assert "a0b0<11" in seen

    xign = lang_enum(kit.xign(base, kit.lb1), 8)
    assert "<11a0b0" not in xign
    assert "a0b0<11" in xign

    ignx = lang_enum(kit.ignx(base, kit.lb1), 8)
    assert "<11a0b0" in ignx
    assert "a0b0<11" not in ignx

    xignx = lang_enum(kit.xignx(base, kit.lb1), 8)
    assert "a0<11b0" in xignx
    assert "<11a0b0" not in xignx
    assert "a0b0<11" not in xignx


def test_ignx_1_requires_an_insertion(kit):
    base = kit.non_markers_of(word(kit.table, "ab"))
    seen = lang_enum(kit.ignx_1(base, kit.lb1), 8)
    assert "a0b0" not in seen
    assert "<11a0b0" in seen
    assert "a0<11b0" in seen
    assert "a0b0<11" not in seen


def test_not_and_contains_cover_cells_of_both_kinds(kit):
    a = kit.non_markers_of(literal(kit.table, "a"))
    outside = kit.not_(a)
    assert accepts(outside, [])
    assert accepts(outside, ["<2", "1"])
    assert accepts(outside, ["a", "0", "a", "0"])
    assert not accepts(outside, ["a", "0"])

    inside = kit.contains(a)
    assert accepts(inside, ["<2", "1", "a", "0"])
    assert not accepts(inside, ["b", "0"])


def _quantify(kit, machine, pred, max_cells=3):
    """Check the machine's language against a predicate over all short
    cell strings, markers included."""
    glyphs = ["a", "b", "<1", "2>"]
    lang = lang_enum(machine, 2 * max_cells)
    for n in range(max_cells + 1):
        for combo in itertools.product(glyphs, repeat=n):
            s = cells(kit, " ".join(combo))
            assert ("".join(s) in lang) == pred(list(combo)), combo


def test_if_p_then_s(kit):
    # every prefix ending in an 'a' cell must continue with a 'b' cell
    a = kit.non_markers_of(literal(kit.table, "a"))
    b = kit.non_markers_of(literal(kit.table, "b"))
    m = kit.if_p_then_s(concat(kit.xsig_star, a), concat(b, kit.xsig_star))

    def ok(combo):
        return all(i + 1 < len(combo) and combo[i + 1] == "b"
                   for i in range(len(combo)) if combo[i] == "a")
    _quantify(kit, m, ok)


def test_if_s_then_p(kit):
    # every suffix starting with a 'b' cell must come right after 'a'
    a = kit.non_markers_of(literal(kit.table, "a"))
    b = kit.non_markers_of(literal(kit.table, "b"))
    m = kit.if_s_then_p(concat(kit.xsig_star, a), concat(b, kit.xsig_star))

    def ok(combo):
        return all(i > 0 and combo[i - 1] == "a"
                   for i in range(len(combo)) if combo[i] == "b")
    _quantify(kit, m, ok)


def test_l_iff_r(kit):
    # an 'a' cell exactly where a 'b' cell follows
    a = kit.non_markers_of(literal(kit.table, "a"))
    b = kit.non_markers_of(literal(kit.table, "b"))
    m = kit.l_iff_r(a, b)

    def ok(combo):
        for i in range(len(combo) + 1):
            left = i > 0 and combo[i - 1] == "a"
            right = i < len(combo) and combo[i] == "b"
            if left != right:
                return False
        return True
    _quantify(kit, m, ok)


def test_match_n(kit):
    a = literal(kit.table, "a")
    assert lang_enum(kit.match_n(3, a), 3) == {"aaa"}
    assert lang_enum(kit.match_n(0, a), 3) == {""}
    with pytest.raises(FsmError):
        kit.match_n(-1, a)


def test_coerce_to_boolean(kit):
    tb = kit.table
    from fsrw import equivalent
    # anything nonempty collapses to true, emptiness to false
    assert equivalent(kit.coerce_to_boolean(literal(tb, "a")), kit.true)
    some = compose(
        cross_product(literal(tb, "a"), empty_string(tb)),
        cross_product(empty_string(tb), literal(tb, "b")))
    assert equivalent(kit.coerce_to_boolean(some), kit.true)
    assert lang_enum(kit.coerce_to_boolean(kit.false), 2) == set()


def test_true_false(kit):
    assert accepts(kit.true, ["a", "0", "<1", "b"])
    assert accepts(kit.true, [])
    assert lang_enum(kit.false, 3) == set()


def test_if_then_else(kit):
    tb = kit.table
    yes = literal(tb, "a")
    t = kit.non_markers_of(literal(tb, "a"))
    e = kit.non_markers_of(literal(tb, "b"))
    assert lang_enum(kit.if_then_else(yes, t, e), 4) == {"a0"}
    assert lang_enum(kit.if_then_else(kit.false, t, e), 4) == {"b0"}
