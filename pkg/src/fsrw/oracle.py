"""Brute-force reference semantics for testing.

Everything here recomputes behavior directly from definitions: string
enumeration plus NFA walks over machine graphs.  Compiled machines are used
only for membership (reading their arcs) and for listing the outputs of a
user-level transduction via `transduce`; none of the composition algebra is
reused.  Slow on purpose.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .fsm import EPS, Fst, FsmError, transduce


def _ids_of(table, s) -> tuple[int, ...]:
    glyphs = list(s)
    return tuple(table.id_of(g) for g in glyphs)


class _Walker:
    """NFA walk over one side of a machine's arcs, with epsilon closure on
    that side.  side=1 walks the input labels, side=2 the output labels."""

    def __init__(self, m: Fst, side: int = 1):
        self.m = m
        self.adj: list[list[tuple[int, int]]] = [[] for _ in range(m.n)]
        self.eps: list[list[int]] = [[] for _ in range(m.n)]
        for s, i, o, d in m.arcs:
            lab = i if side == 1 else o
            if lab == EPS:
                self.eps[s].append(d)
            else:
                self.adj[s].append((lab, d))

    def close(self, states) -> frozenset:
        seen = set(states)
        stack = list(states)
        while stack:
            v = stack.pop()
            for w in self.eps[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def start(self) -> frozenset:
        return self.close([self.m.initial])

    def step(self, states: frozenset, sym: int) -> frozenset:
        nxt = set()
        for q in states:
            for lab, d in self.adj[q]:
                if lab == sym:
                    nxt.add(d)
        return self.close(nxt)

    def is_final(self, states: frozenset) -> bool:
        return bool(set(states) & self.m.finals)

    def accepts(self, ids: Sequence[int]) -> bool:
        cur = self.start()
        for sym in ids:
            cur = self.step(cur, sym)
            if not cur:
                return False
        return self.is_final(cur)

    def match_ends(self, ids: Sequence[int], start: int) -> list[int]:
        """All q >= start with ids[start:q] accepted."""
        out = []
        cur = self.start()
        if self.is_final(cur):
            out.append(start)
        for pos in range(start, len(ids)):
            cur = self.step(cur, ids[pos])
            if not cur:
                break
            if self.is_final(cur):
                out.append(pos + 1)
        return out


def oracle_language(m: Fst, max_len: int, alphabet: Optional[Sequence[str]] = None) -> set[str]:
    """Accepted strings up to max_len symbols, by trying every string over
    `alphabet` (default: the whole symbol table)."""
    table = m.table
    if alphabet is None:
        glyphs = [table.glyph(i) for i in table.all_ids()]
    else:
        glyphs = list(alphabet)
    walker = _Walker(m, side=1)
    out: set[str] = set()
    for length in range(max_len + 1):
        for combo in itertools.product(glyphs, repeat=length):
            if walker.accepts(_ids_of(table, combo)):
                out.add("".join(combo))
    return out


def oracle_replace(t: Fst, left: Fst, right: Fst, s, transduce_limit: int = 64) -> set[str]:
    """Reference semantics of obligatory leftmost-longest context rewriting.

    Scans left to right.  At each position, if some nonempty prefix of the
    rest lies in dom(t) with the right context holding after it, the longest
    such prefix must be rewritten provided the left context holds on the
    rewritten prefix produced so far; otherwise one symbol is copied.  An
    empty-string match fires only where no nonempty match starts, never
    immediately after a replaced region, and both contexts must hold.  The
    left context reads the output tape (it may match across earlier
    rewrites); the right context reads the untouched input tape.
    """
    table = t.table
    if left.table is not table or right.table is not table:
        raise FsmError("oracle operands built against different symbol tables")
    ids = _ids_of(table, s)
    n = len(ids)
    glyph = table.glyph

    dom = _Walker(t, side=1)
    eps_in_dom = dom.accepts(())

    rwalk = _Walker(right, side=1)
    right_ok = [False] * (n + 1)
    for q in range(n + 1):
        right_ok[q] = bool(rwalk.match_ends(ids, q))

    # left context as a suffix matcher over the growing output tape, kept as
    # a bitmask frontier of states reachable from the initial state by some
    # nonempty suffix of the output written so far
    lw = _Walker(left, side=1)
    lstart = lw.start()
    lfinal_mask = 0
    for q in left.finals:
        lfinal_mask |= 1 << q
    start_mask = 0
    for q in lstart:
        start_mask |= 1 << q
    nstates = left.n
    step_mask: dict[int, list[int]] = {}

    def sym_steps(c: int) -> list[int]:
        got = step_mask.get(c)
        if got is None:
            got = [0] * nstates
            for q in range(nstates):
                tgt = lw.step(frozenset([q]), c)
                mm = 0
                for v in tgt:
                    mm |= 1 << v
                got[q] = mm
            step_mask[c] = got
        return got

    def advance(mask: int, c: int) -> int:
        src = mask | start_mask
        tab = sym_steps(c)
        out = 0
        q = 0
        while src:
            if src & 1:
                out |= tab[q]
            src >>= 1
            q += 1
        return out

    def advance_seq(mask: int, seq: Sequence[int]) -> int:
        for c in seq:
            mask = advance(mask, c)
        return mask

    def left_ok(mask: int) -> bool:
        return bool((mask | start_mask) & lfinal_mask)

    match_ends_at: dict[int, list[int]] = {}

    def candidates(i: int) -> list[int]:
        got = match_ends_at.get(i)
        if got is None:
            got = [q for q in dom.match_ends(ids, i) if q > i and right_ok[q]]
            match_ends_at[i] = got
        return got

    t_out_cache: dict[tuple[int, int], list[tuple[int, ...]]] = {}

    def t_outputs(i: int, q: int) -> list[tuple[int, ...]]:
        got = t_out_cache.get((i, q))
        if got is None:
            res = transduce(t, tuple(glyph(c) for c in ids[i:q]), limit=transduce_limit)
            if res.truncated:
                raise FsmError("oracle needs a transduction with finite output sets")
            got = [tuple(table.id_of(g) for g in o) for o in res.outputs]
            t_out_cache[(i, q)] = got
        return got

    memo: dict[tuple[int, int, bool], frozenset] = {}

    def rec(i: int, mask: int, just_replaced: bool) -> frozenset:
        key = (i, mask, just_replaced)
        got = memo.get(key)
        if got is not None:
            return got
        if i == n:
            if not just_replaced and eps_in_dom and right_ok[n] and left_ok(mask):
                res = frozenset(tuple(y) for y in t_outputs(n, n))
            else:
                res = frozenset([()])
            memo[key] = res
            return res
        q_ends = candidates(i)
        acc = set()
        if q_ends:
            qmax = max(q_ends)
            if left_ok(mask):
                for y in t_outputs(i, qmax):
                    m2 = advance_seq(mask, y)
                    for tail in rec(qmax, m2, True):
                        acc.add(y + tail)
            else:
                m2 = advance(mask, ids[i])
                for tail in rec(i + 1, m2, False):
                    acc.add((ids[i],) + tail)
        else:
            if not just_replaced and eps_in_dom and right_ok[i] and left_ok(mask):
                for y in t_outputs(i, i):
                    m2 = advance_seq(mask, y + (ids[i],))
                    for tail in rec(i + 1, m2, False):
                        acc.add(y + (ids[i],) + tail)
            else:
                m2 = advance(mask, ids[i])
                for tail in rec(i + 1, m2, False):
                    acc.add((ids[i],) + tail)
        res = frozenset(acc)
        memo[key] = res
        return res

    return {"".join(glyph(c) for c in out) for out in rec(0, 0, False)}


def oracle_lm_split(s, parts: Sequence[Fst]) -> Optional[list[int]]:
    """Greedy split of `s` into len(parts) pieces, piece k drawn from the
    input language of parts[k].  Earlier pieces take the longest length that
    still lets the rest parse.  Returns the cut positions (one per piece,
    the last equal to len(s)), or None when no split exists.
    """
    if not parts:
        raise FsmError("need at least one piece")
    table = parts[0].table
    for p in parts[1:]:
        if p.table is not table:
            raise FsmError("pieces built against different symbol tables")
    ids = _ids_of(table, s)
    n = len(ids)
    walkers = [_Walker(p, side=1) for p in parts]
    ends = [{i: w.match_ends(ids, i) for i in range(n + 1)} for w in walkers]
    dead: set[tuple[int, int]] = set()

    def go(i: int, k: int) -> Optional[list[int]]:
        if k == len(parts):
            return [] if i == n else None
        if (i, k) in dead:
            return None
        for q in sorted(ends[k][i], reverse=True):
            rest = go(q, k + 1)
            if rest is not None:
                return [q] + rest
        dead.add((i, k))
        return None

    return go(0, 0)


def oracle_lm_concat(ts: Sequence[Fst], s, transduce_limit: int = 64) -> set[str]:
    """Outputs of greedy multi-piece transduction: split `s` per
    oracle_lm_split over the pieces' input languages, then run each piece's
    transduction on its slice and concatenate all combinations."""
    cuts = oracle_lm_split(s, ts)
    if cuts is None:
        return set()
    table = ts[0].table
    ids = _ids_of(table, s)
    glyph = table.glyph
    slices = []
    prev = 0
    for c in cuts:
        slices.append(tuple(glyph(x) for x in ids[prev:c]))
        prev = c
    per_piece = []
    for t, sl in zip(ts, slices):
        res = transduce(t, sl, limit=transduce_limit)
        if res.truncated:
            raise FsmError("oracle needs a transduction with finite output sets")
        per_piece.append(["".join(o) for o in res.outputs])
    return {"".join(combo) for combo in itertools.product(*per_piece)}
