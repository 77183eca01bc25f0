"""Marker cells and the operators that manipulate them.

Auxiliary markers cannot be spare symbols when the input alphabet is open,
so marked strings are encoded cell by cell: each cell is a glyph symbol
followed by a flag symbol, flag "1" making the four bracket glyphs "<1",
"<2", "1>", "2>" act as markers and flag "0" making any glyph (brackets
included) ordinary text.  Markerhood is positional, so user strings may
contain the bracket glyphs, "0" and "1" as plain symbols.

All operators here stay inside the encoded universe (sequences of cells);
`not_` and `contains` are relative to it.  `true`, `false` and the
conditional work over the whole symbol table since they only carry
emptiness.
"""

from __future__ import annotations

from .fsm import (
    Fst,
    FsmError,
    SymbolTable,
    any_of,
    complement,
    compose,
    concat,
    cross_product,
    difference,
    empty_lang,
    empty_string,
    intersection,
    literal,
    plus,
    project,
    sigma_star,
    star,
    symbol_pair,
    union,
)


class MarkerKit:
    """Toolkit of encoded-string operators over one symbol table.

    Constant pieces (cells, sig, the intro family on cached cell sets) are
    built once per kit; the table's user alphabet must be complete before
    the first use.
    """

    def __init__(self, table: SymbolTable):
        self.table = table
        self._cache: dict = {}

    # cells ------------------------------------------------------------

    def _cell(self, glyph_id: int, flag_id: int) -> Fst:
        t = self.table
        g, f = t.glyph(glyph_id), t.glyph(flag_id)
        return concat(literal(t, g), literal(t, f))

    def _const(self, name, build):
        got = self._cache.get(name)
        if got is None:
            got = build()
            self._cache[name] = got
        return got

    @property
    def lb1(self) -> Fst:
        return self._const("lb1", lambda: self._cell(self.table.bracket_ids()[0], 1))

    @property
    def lb2(self) -> Fst:
        return self._const("lb2", lambda: self._cell(self.table.bracket_ids()[1], 1))

    @property
    def rb1(self) -> Fst:
        return self._const("rb1", lambda: self._cell(self.table.bracket_ids()[2], 1))

    @property
    def rb2(self) -> Fst:
        return self._const("rb2", lambda: self._cell(self.table.bracket_ids()[3], 1))

    @property
    def lb(self) -> Fst:
        return self._const("lb", lambda: union(self.lb1, self.lb2))

    @property
    def rb(self) -> Fst:
        return self._const("rb", lambda: union(self.rb1, self.rb2))

    @property
    def b1(self) -> Fst:
        return self._const("b1", lambda: union(self.lb1, self.rb1))

    @property
    def b2(self) -> Fst:
        return self._const("b2", lambda: union(self.lb2, self.rb2))

    @property
    def brack(self) -> Fst:
        return self._const("brack", lambda: union(self.lb1, self.lb2, self.rb1, self.rb2))

    @property
    def sig(self) -> Fst:
        """One ordinary cell: any encodable glyph with flag 0."""
        def build():
            t = self.table
            flag = literal(t, t.glyph(0))
            return concat(any_of(t, t.encoded_ids()), flag)
        return self._const("sig", build)

    @property
    def xsig(self) -> Fst:
        """One cell of either kind."""
        return self._const("xsig", lambda: union(self.sig, self.brack))

    @property
    def xsig_star(self) -> Fst:
        return self._const("xsig_star", lambda: star(self.xsig))

    # relative boolean pieces -------------------------------------------

    def not_(self, e: Fst) -> Fst:
        """Cell strings outside L(e)."""
        return difference(self.xsig_star, e)

    def contains(self, e: Fst) -> Fst:
        """Cell strings with a factor in L(e)."""
        return concat(self.xsig_star, e, self.xsig_star)

    # encoding ----------------------------------------------------------

    @property
    def non_markers(self) -> Fst:
        """The encoder: each plain user symbol becomes its ordinary cell.
        Its domain is exactly the user-alphabet strings."""
        def build():
            t = self.table
            flag = t.glyph(0)
            cells = [concat(literal(t, t.glyph(c)), symbol_pair(t, None, flag))
                     for c in t.user_ids()]
            if not cells:
                return empty_string(t)
            return star(union(*cells))
        return self._const("non_markers", build)

    def non_markers_of(self, e: Fst) -> Fst:
        """Image of a plain-alphabet language under the encoding."""
        return project(compose(e, self.non_markers), "range")

    # marker introduction and ignoring -----------------------------------

    def _s_key(self, s: Fst):
        for name in ("lb1", "lb2", "rb1", "rb2", "lb", "rb", "b1", "b2", "brack"):
            if self._cache.get(name) is s:
                return name
        return None

    def _intro_cached(self, kind: str, s: Fst, build):
        key = self._s_key(s)
        if key is None:
            return build()
        return self._const((kind, key), build)

    def intro(self, s: Fst) -> Fst:
        """Insert cells from `s` anywhere, pass other cells through."""
        def build():
            keep = difference(self.xsig, s)
            ins = cross_product(empty_string(self.table), s)
            return star(union(keep, ins))
        return self._intro_cached("intro", s, build)

    def xintro(self, s: Fst) -> Fst:
        """Like intro, but never inserting at the start."""
        def build():
            keep = difference(self.xsig, s)
            return union(empty_string(self.table), concat(keep, self.intro(s)))
        return self._intro_cached("xintro", s, build)

    def introx(self, s: Fst) -> Fst:
        """Like intro, but never inserting at the end."""
        def build():
            keep = difference(self.xsig, s)
            return union(empty_string(self.table), concat(self.intro(s), keep))
        return self._intro_cached("introx", s, build)

    def xintrox(self, s: Fst) -> Fst:
        """Like intro, but inserting neither at the start nor at the end."""
        def build():
            keep = difference(self.xsig, s)
            return union(empty_string(self.table), keep,
                         concat(keep, self.intro(s), keep))
        return self._intro_cached("xintrox", s, build)

    def ign(self, e: Fst, s: Fst) -> Fst:
        return project(compose(e, self.intro(s)), "range")

    def xign(self, e: Fst, s: Fst) -> Fst:
        return project(compose(e, self.xintro(s)), "range")

    def ignx(self, e: Fst, s: Fst) -> Fst:
        return project(compose(e, self.introx(s)), "range")

    def xignx(self, e: Fst, s: Fst) -> Fst:
        return project(compose(e, self.xintrox(s)), "range")

    def ignx_1(self, e1: Fst, e2: Fst) -> Fst:
        """Strings of e1 with at least one e2 string wedged in, none of
        them at the very end.  Unlike the intro family this works at the
        raw symbol level, so e2 need not be whole cells."""
        t = self.table
        anysym = any_of(t, t.all_ids())
        wedge = concat(plus(concat(star(anysym),
                                   cross_product(empty_string(t), e2))),
                       plus(anysym))
        return project(compose(e1, wedge), "range")

    # implication tests on factorizations ---------------------------------

    def if_p_then_s(self, l1: Fst, l2: Fst) -> Fst:
        """Every prefix in l1 is followed by a suffix in l2."""
        return self.not_(concat(l1, self.not_(l2)))

    def if_s_then_p(self, l1: Fst, l2: Fst) -> Fst:
        """Every suffix in l2 is preceded by a prefix in l1."""
        return self.not_(concat(self.not_(l1), l2))

    def p_iff_s(self, l1: Fst, l2: Fst) -> Fst:
        return intersection(self.if_p_then_s(l1, l2), self.if_s_then_p(l1, l2))

    def l_iff_r(self, l: Fst, r: Fst) -> Fst:
        """Positions after an l are exactly the positions before an r."""
        return self.p_iff_s(concat(self.xsig_star, l), concat(r, self.xsig_star))

    # conditionals --------------------------------------------------------

    @property
    def true(self) -> Fst:
        return self._const("true", lambda: sigma_star(self.table, self.table.all_ids()))

    @property
    def false(self) -> Fst:
        return self._const("false", lambda: empty_lang(self.table))

    def coerce_to_boolean(self, e: Fst) -> Fst:
        """`true` when e denotes anything at all, else `false`."""
        everything = cross_product(self.true, self.true)
        return project(compose(e, everything), "range")

    def if_then_else(self, c: Fst, t: Fst, e: Fst) -> Fst:
        cond = self.coerce_to_boolean(c)
        return union(compose(cond, t), compose(complement(cond), e))

    # counted repetition ---------------------------------------------------

    def match_n(self, n: int, e: Fst) -> Fst:
        if n < 0:
            raise FsmError("cannot repeat a pattern a negative number of times")
        if n == 0:
            return empty_string(self.table)
        return concat(*([e] * n))
