"""Unweighted finite-state machines over interned symbols.

A machine is either a recognizer (every label is an identity pair, so it
denotes a language) or a transduction (it denotes a relation on strings).
Both live in the same representation; `is_recognizer` records which reading
applies.  All machines produced by the public constructors are epsilon-pair
free, trimmed and canonically numbered, so structurally equal results are
bit-for-bit equal.
"""

from __future__ import annotations

import heapq
import sys
from typing import Iterable, Optional, Sequence

EPS = -1  # epsilon on one side of a label; never a symbol table id


class FsmError(Exception):
    """Structural or coercion error in the machine algebra."""


# ---------------------------------------------------------------------------
# symbols


class SymbolTable:
    """Interned glyphs with stable integer ids.

    The six glyphs used by the marker encoding ("0", "1", "<1", "<2", "1>",
    "2>") are always present at ids 0..5.  They are ordinary symbols: the
    encoding never needs them excluded from user text.  `user` marks the
    subset that `?` denotes at the expression level.

    Interning is single-writer: build the table (and the alphabet) before
    compiling anything against it.
    """

    RESERVED = ("0", "1", "<1", "<2", "1>", "2>")

    def __init__(self, user_alphabet: Iterable[str] = ()):
        self._texts: list[str] = []
        self._ids: dict[str, int] = {}
        self._user: set[int] = set()
        for g in self.RESERVED:
            self.intern(g)
        for g in user_alphabet:
            self.add_user(g)

    def intern(self, text: str) -> int:
        if not isinstance(text, str) or text == "":
            raise FsmError("symbol glyph must be a nonempty string")
        sid = self._ids.get(text)
        if sid is None:
            sid = len(self._texts)
            self._texts.append(text)
            self._ids[text] = sid
        return sid

    def add_user(self, text: str) -> int:
        sid = self.intern(text)
        self._user.add(sid)
        return sid

    def id_of(self, text: str) -> int:
        sid = self._ids.get(text)
        if sid is None:
            raise FsmError("unknown symbol %r" % text)
        return sid

    def glyph(self, sid: int) -> str:
        return self._texts[sid]

    def __contains__(self, text: str) -> bool:
        return text in self._ids

    def __len__(self) -> int:
        return len(self._texts)

    def all_ids(self) -> tuple[int, ...]:
        return tuple(range(len(self._texts)))

    def user_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._user))

    def user_glyphs(self) -> tuple[str, ...]:
        return tuple(self._texts[i] for i in self.user_ids())

    def bracket_ids(self) -> tuple[int, int, int, int]:
        """Ids of the four marker glyphs "<1", "<2", "1>", "2>"."""
        return (2, 3, 4, 5)

    def encoded_ids(self) -> tuple[int, ...]:
        """What `?` ranges over inside the marker encoding: user glyphs
        plus the four bracket glyphs (they may coincide)."""
        return tuple(sorted(self._user | {2, 3, 4, 5}))

    def flag0(self) -> int:
        return 0

    def flag1(self) -> int:
        return 1


# ---------------------------------------------------------------------------
# machines


class Fst:
    """Immutable machine: states 0..n-1, one initial, arcs (src, in, out, dst).

    `in`/`out` are symbol ids or EPS.  Arcs are sorted; finals is a frozenset.
    Use the module-level constructors and operations to build instances.
    """

    __slots__ = ("table", "n", "initial", "finals", "arcs", "is_recognizer", "_adj")

    def __init__(self, table, n, initial, finals, arcs, is_recognizer):
        self.table = table
        self.n = n
        self.initial = initial
        self.finals = finals
        self.arcs = arcs
        self.is_recognizer = is_recognizer
        self._adj = None

    def adjacency(self) -> list[list[tuple[int, int, int]]]:
        """Per-state arc lists [(in, out, dst), ...], computed once."""
        if self._adj is None:
            adj = [[] for _ in range(self.n)]
            for s, i, o, d in self.arcs:
                adj[s].append((i, o, d))
            self._adj = adj
        return self._adj

    def is_empty(self) -> bool:
        """True when the machine accepts nothing (trimmed form has no finals)."""
        return not self.finals

    def accepts_epsilon(self) -> bool:
        return self.initial in self.finals

    def same_structure(self, other: "Fst") -> bool:
        return (
            self.n == other.n
            and self.initial == other.initial
            and self.finals == other.finals
            and self.arcs == other.arcs
        )

    def __repr__(self):
        kind = "recognizer" if self.is_recognizer else "transduction"
        return "<Fst %s: %d states, %d arcs, %d finals>" % (
            kind, self.n, len(self.arcs), len(self.finals))


def _is_recognizer(arcs) -> bool:
    return all(i == o and i != EPS for _, i, o, _ in arcs)


def _finish(table, n, initial, finals, arcs) -> Fst:
    """Normalize raw construction output: drop epsilon-pair arcs by closure,
    trim to useful states, renumber by BFS, sort arcs."""
    arcs = set(arcs)
    finals = set(finals)

    # epsilon-pair closure: eps:eps arcs are construction glue only
    eps_adj: dict[int, list[int]] = {}
    has_pair_eps = False
    for s, i, o, d in arcs:
        if i == EPS and o == EPS:
            eps_adj.setdefault(s, []).append(d)
            has_pair_eps = True
    if has_pair_eps:
        closure: dict[int, set[int]] = {}

        def close(q):
            got = closure.get(q)
            if got is not None:
                return got
            seen = {q}
            stack = [q]
            while stack:
                v = stack.pop()
                for w in eps_adj.get(v, ()):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            closure[q] = seen
            return seen

        real = [(s, i, o, d) for (s, i, o, d) in arcs if not (i == EPS and o == EPS)]
        out_by_src: dict[int, list] = {}
        for s, i, o, d in real:
            out_by_src.setdefault(s, []).append((i, o, d))
        new_arcs = set()
        new_finals = set()
        for q in range(n):
            cl = close(q)
            if cl & finals:
                new_finals.add(q)
            for c in cl:
                for i, o, d in out_by_src.get(c, ()):
                    new_arcs.add((q, i, o, d))
        arcs = new_arcs
        finals = new_finals

    # trim: forward-reachable and co-reachable
    fwd_adj: dict[int, list[int]] = {}
    bwd_adj: dict[int, list[int]] = {}
    for s, _, _, d in arcs:
        fwd_adj.setdefault(s, []).append(d)
        bwd_adj.setdefault(d, []).append(s)

    def reach(starts, adj):
        seen = set(starts)
        stack = list(starts)
        while stack:
            v = stack.pop()
            for w in adj.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    fwd = reach([initial], fwd_adj)
    bwd = reach(sorted(finals), bwd_adj)
    useful = fwd & bwd
    if initial not in useful:
        return Fst(table, 1, 0, frozenset(), (), True)
    arcs = [(s, i, o, d) for (s, i, o, d) in arcs if s in useful and d in useful]
    finals = finals & useful

    # canonical renumbering: BFS from the initial state, arcs explored in
    # label order; ties on identical labels break on old dst id
    order: dict[int, int] = {initial: 0}
    queue = [initial]
    out_by_src = {}
    for s, i, o, d in arcs:
        out_by_src.setdefault(s, []).append((i, o, d))
    for lst in out_by_src.values():
        lst.sort()
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for _, _, d in out_by_src.get(v, ()):
            if d not in order:
                order[d] = len(order)
                queue.append(d)
    new_arcs = tuple(sorted((order[s], i, o, order[d]) for (s, i, o, d) in arcs))
    new_finals = frozenset(order[f] for f in finals)
    return Fst(table, len(order), 0, new_finals, new_arcs, _is_recognizer(new_arcs))


def _check_tables(*ms: Fst):
    t = ms[0].table
    for m in ms[1:]:
        if m.table is not t:
            raise FsmError("machines built against different symbol tables")
    return t


def _require_recognizer(m: Fst, op: str):
    if not m.is_recognizer:
        raise FsmError("%s of a transduction is undefined; project it first" % op)


# -- constructors -----------------------------------------------------------


def empty_lang(table) -> Fst:
    return Fst(table, 1, 0, frozenset(), (), True)


def empty_string(table) -> Fst:
    return Fst(table, 1, 0, frozenset([0]), (), True)


def literal(table, glyph: str) -> Fst:
    sid = table.intern(glyph)
    return Fst(table, 2, 0, frozenset([1]), ((0, sid, sid, 1),), True)


def symbol_pair(table, in_glyph: Optional[str], out_glyph: Optional[str]) -> Fst:
    """One aligned label; None on a side means epsilon.  eps:eps is the
    empty-string machine."""
    i = EPS if in_glyph is None else table.intern(in_glyph)
    o = EPS if out_glyph is None else table.intern(out_glyph)
    if i == EPS and o == EPS:
        return empty_string(table)
    return Fst(table, 2, 0, frozenset([1]), ((0, i, o, 1),), i == o)


def any_of(table, ids: Sequence[int]) -> Fst:
    """Identity over a set of single symbols."""
    arcs = tuple((0, sid, sid, 1) for sid in sorted(set(ids)))
    if not arcs:
        return empty_lang(table)
    return Fst(table, 2, 0, frozenset([1]), arcs, True)


def word(table, glyphs: Sequence[str]) -> Fst:
    """Straight-line recognizer for one string."""
    ids = [table.intern(g) for g in glyphs]
    arcs = tuple((k, sid, sid, k + 1) for k, sid in enumerate(ids))
    return Fst(table, len(ids) + 1, 0, frozenset([len(ids)]), arcs, True)


def sigma_star(table, ids: Sequence[int]) -> Fst:
    arcs = tuple((0, sid, sid, 0) for sid in sorted(set(ids)))
    return Fst(table, 1, 0, frozenset([0]), arcs, True)


# -- rational operations ----------------------------------------------------


def union(*ms: Fst) -> Fst:
    if not ms:
        raise FsmError("union needs at least one operand table; use empty_lang")
    table = _check_tables(*ms)
    arcs = []
    finals = []
    base = 1
    for m in ms:
        arcs.append((0, EPS, EPS, base + m.initial))
        for s, i, o, d in m.arcs:
            arcs.append((base + s, i, o, base + d))
        finals.extend(base + f for f in m.finals)
        base += m.n
    return _finish(table, base, 0, finals, arcs)


def concat(*ms: Fst) -> Fst:
    if not ms:
        raise FsmError("concat needs at least one operand table; use empty_string")
    table = _check_tables(*ms)
    arcs = []
    base = 0
    initial = None
    prev_finals: list[int] = []
    for m in ms:
        if initial is None:
            initial = m.initial
        else:
            arcs.extend((f, EPS, EPS, base + m.initial) for f in prev_finals)
        for s, i, o, d in m.arcs:
            arcs.append((base + s, i, o, base + d))
        prev_finals = [base + f for f in m.finals]
        base += m.n
    return _finish(table, base, initial, prev_finals, arcs)


def star(m: Fst) -> Fst:
    arcs = [(0, EPS, EPS, 1 + m.initial)]
    for s, i, o, d in m.arcs:
        arcs.append((1 + s, i, o, 1 + d))
    for f in m.finals:
        arcs.append((1 + f, EPS, EPS, 0))
    return _finish(m.table, m.n + 1, 0, [0], arcs)


def plus(m: Fst) -> Fst:
    return concat(m, star(m))


def option(m: Fst) -> Fst:
    return union(m, empty_string(m.table))


def rational_combine(op: str, operands: Sequence[Fst]) -> Fst:
    ops = {"union": union, "concat": concat, "star": star, "plus": plus,
           "option": option}
    if op not in ops:
        raise FsmError("unknown rational op %r" % op)
    return ops[op](*operands)


# -- determinization / minimization -----------------------------------------


def _subset_construct(m: Fst, state_cap: Optional[int] = None):
    """Subset construction over atomic labels (in, out).  For recognizers
    the atoms are identity pairs, so this is ordinary determinization.
    Returns (dfa-ish parts) or None when state_cap is exceeded."""
    adj = m.adjacency()
    start = frozenset([m.initial])
    index = {start: 0}
    order = [start]
    dfa_arcs = []
    finals = set()
    qi = 0
    while qi < len(order):
        subset = order[qi]
        src = qi
        qi += 1
        if subset & m.finals:
            finals.add(src)
        by_label: dict[tuple[int, int], set[int]] = {}
        for q in subset:
            for i, o, d in adj[q]:
                by_label.setdefault((i, o), set()).add(d)
        for (i, o), dsts in sorted(by_label.items(), key=lambda kv: kv[0]):
            key = frozenset(dsts)
            to = index.get(key)
            if to is None:
                to = len(order)
                index[key] = to
                order.append(key)
                if state_cap is not None and to > state_cap:
                    return None
            dfa_arcs.append((src, i, o, to))
        # treat one-sided epsilon labels as atoms too: no closure here
    return len(order), 0, finals, dfa_arcs


def determinize(m: Fst, pair_atomic: bool = False, state_cap: Optional[int] = None) -> Optional[Fst]:
    """Subset construction.  Transductions require pair_atomic=True, which
    treats each label as an atomic pair (sufficient for size reduction and
    equality of pair languages, not for relation-level equality)."""
    if not m.is_recognizer and not pair_atomic:
        raise FsmError("determinize of a transduction needs pair_atomic mode")
    built = _subset_construct(m, state_cap)
    if built is None:
        return None
    n, initial, finals, arcs = built
    return _finish(m.table, n, initial, finals, arcs)


def _moore_minimize_dfa(n, initial, finals, arcs, table) -> Fst:
    """Partition refinement on a (possibly partial) deterministic machine
    whose labels are treated atomically."""
    trans: list[dict[tuple[int, int], int]] = [dict() for _ in range(n)]
    for s, i, o, d in arcs:
        trans[s][(i, o)] = d
    labels = sorted({(i, o) for _, i, o, _ in arcs})
    cls = [1 if q in finals else 0 for q in range(n)]
    while True:
        sig_index: dict[tuple, int] = {}
        new_cls = [0] * n
        for q in range(n):
            sig = (cls[q],) + tuple(
                cls[trans[q][lab]] if lab in trans[q] else -1 for lab in labels)
            k = sig_index.get(sig)
            if k is None:
                k = len(sig_index)
                sig_index[sig] = k
            new_cls[q] = k
        if new_cls == cls:
            break
        cls = new_cls
    new_arcs = {(cls[s], i, o, cls[d]) for s, i, o, d in arcs}
    new_finals = {cls[f] for f in finals}
    k = max(cls) + 1 if n else 1
    return _finish(table, k, cls[initial], new_finals, new_arcs)


def minimize(m: Fst, pair_atomic: bool = False) -> Fst:
    """Determinize then merge equivalent states.  Canonical minimal result."""
    if not m.is_recognizer and not pair_atomic:
        raise FsmError("minimize of a transduction needs pair_atomic mode")
    if m.is_empty():
        return empty_lang(m.table)
    n, initial, finals, arcs = _subset_construct(m)
    return _moore_minimize_dfa(n, initial, finals, arcs, m.table)


def reduce_pairs(m: Fst, state_cap: int = 40000) -> Fst:
    """Best-effort size reduction preserving the pair-sequence language
    (hence the relation).  Falls back to the input if determinization
    blows past state_cap."""
    if m.is_empty():
        return empty_lang(m.table)
    built = _subset_construct(m, state_cap)
    if built is None:
        return m
    reduced = _moore_minimize_dfa(*built, m.table)
    return reduced if reduced.n <= m.n else m


def canonicalize(m: Fst) -> Fst:
    """Renumber states by breadth-first order with sorted arc exploration."""
    return _finish(m.table, m.n, m.initial, m.finals, m.arcs)


# -- boolean operations (recognizers only) -----------------------------------


def complement(m: Fst) -> Fst:
    """Full-alphabet complement: SIGMA* minus L(m), SIGMA the whole table."""
    _require_recognizer(m, "complement")
    table = m.table
    alphabet = table.all_ids()
    if m.is_empty():
        return sigma_star(table, alphabet)
    n, initial, finals, arcs = _subset_construct(m)
    # complete over the full alphabet with a sink, then swap finals
    sink = n
    have: dict[int, set[int]] = {q: set() for q in range(n + 1)}
    for s, i, _, _ in arcs:
        have[s].add(i)
    full = list(arcs)
    for q in range(n + 1):
        for a in alphabet:
            if a not in have[q]:
                full.append((q, a, a, sink))
    new_finals = [q for q in range(n + 1) if q not in finals]
    return _moore_minimize_dfa(n + 1, initial, new_finals, full, table)


def intersection(a: Fst, b: Fst) -> Fst:
    _require_recognizer(a, "intersection")
    _require_recognizer(b, "intersection")
    _check_tables(a, b)
    adj_a = a.adjacency()
    adj_b = b.adjacency()
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    arcs = []
    finals = []
    qi = 0
    while qi < len(order):
        pa, pb = order[qi]
        src = qi
        qi += 1
        if pa in a.finals and pb in b.finals:
            finals.append(src)
        by_sym_b: dict[int, list[int]] = {}
        for i, _, d in adj_b[pb]:
            by_sym_b.setdefault(i, []).append(d)
        for i, _, da in sorted(adj_a[pa]):
            for db in by_sym_b.get(i, ()):
                key = (da, db)
                to = index.get(key)
                if to is None:
                    to = len(order)
                    index[key] = to
                    order.append(key)
                arcs.append((src, i, i, to))
    got = _finish(a.table, len(order), 0, finals, arcs)
    return minimize(got) if not got.is_empty() else got


def difference(a: Fst, b: Fst) -> Fst:
    _require_recognizer(a, "difference")
    _require_recognizer(b, "difference")
    return intersection(a, complement(b))


def containment(m: Fst) -> Fst:
    """Strings with a substring in L(m), over the full table alphabet."""
    _require_recognizer(m, "containment")
    sig = sigma_star(m.table, m.table.all_ids())
    got = concat(sig, m, sig)
    return minimize(got) if not got.is_empty() else got


def boolean_combine(op: str, operands: Sequence[Fst]) -> Fst:
    ops = {"complement": complement, "difference": difference,
           "intersection": intersection, "containment": containment}
    if op not in ops:
        raise FsmError("unknown boolean op %r" % op)
    return ops[op](*operands)


# -- relation operations -----------------------------------------------------


def cross_product(a: Fst, b: Fst) -> Fst:
    """The relation L(a) x L(b).  Pairs of unequal length are aligned with
    all epsilons trailing."""
    if not a.is_recognizer or not b.is_recognizer:
        raise FsmError("cross product needs recognizers on both sides")
    _check_tables(a, b)
    adj_a = a.adjacency()
    adj_b = b.adjacency()
    SYNC, APAD, BPAD = 0, 1, 2
    start = (a.initial, b.initial, SYNC)
    index = {start: 0}
    order = [start]
    arcs = []
    finals = []
    qi = 0
    while qi < len(order):
        pa, pb, mode = order[qi]
        src = qi
        qi += 1
        if pa in a.finals and pb in b.finals:
            finals.append(src)

        def goto(key):
            to = index.get(key)
            if to is None:
                to = len(order)
                index[key] = to
                order.append(key)
            return to

        if mode == SYNC:
            for i, _, da in sorted(adj_a[pa]):
                for j, _, db in sorted(adj_b[pb]):
                    arcs.append((src, i, j, goto((da, db, SYNC))))
        if mode in (SYNC, APAD) and pb in b.finals:
            for i, _, da in sorted(adj_a[pa]):
                arcs.append((src, i, EPS, goto((da, pb, APAD))))
        if mode in (SYNC, BPAD) and pa in a.finals:
            for j, _, db in sorted(adj_b[pb]):
                arcs.append((src, EPS, j, goto((pa, db, BPAD))))
    return _finish(a.table, len(order), 0, finals, arcs)


def compose(a: Fst, b: Fst) -> Fst:
    """Relation composition.  The three-way filter serializes epsilon moves
    (output-side epsilons of `a` before input-side epsilons of `b`) so no
    pair of paths is duplicated."""
    _check_tables(a, b)
    adj_a = a.adjacency()
    adj_b = b.adjacency()
    start = (a.initial, b.initial, 0)
    index = {start: 0}
    order = [start]
    arcs = []
    finals = []
    qi = 0
    while qi < len(order):
        pa, pb, flt = order[qi]
        src = qi
        qi += 1
        if pa in a.finals and pb in b.finals:
            finals.append(src)

        def goto(key):
            to = index.get(key)
            if to is None:
                to = len(order)
                index[key] = to
                order.append(key)
            return to

        by_mid: dict[int, list[tuple[int, int]]] = {}
        for j, o2, db in adj_b[pb]:
            by_mid.setdefault(j, []).append((o2, db))
        for i, o1, da in sorted(adj_a[pa]):
            if o1 == EPS:
                if flt != 2:  # a-alone moves precede b-alone moves
                    arcs.append((src, i, EPS, goto((da, pb, 1))))
            else:
                for o2, db in by_mid.get(o1, ()):
                    arcs.append((src, i, o2, goto((da, db, 0))))
        for o2, db in by_mid.get(EPS, ()):
            arcs.append((src, EPS, o2, goto((pa, db, 2))))
    return _finish(a.table, len(order), 0, finals, arcs)


def project(m: Fst, side: str) -> Fst:
    """Input or output language of a relation, as a minimal recognizer."""
    if side not in ("domain", "range"):
        raise FsmError("project side must be 'domain' or 'range'")
    keep = 1 if side == "domain" else 2
    arcs = []
    for s, i, o, d in m.arcs:
        sym = i if keep == 1 else o
        arcs.append((s, sym, sym, d))
    got = _finish(m.table, m.n, m.initial, m.finals, arcs)
    return minimize(got) if not got.is_empty() else got


def identity_lift(m: Fst) -> Fst:
    """Read a recognizer as the identity relation on its language.  The
    representation is already identity-labeled, so this only checks."""
    if not m.is_recognizer:
        raise FsmError("identity_lift needs a recognizer")
    return m


def invert(m: Fst) -> Fst:
    arcs = [(s, o, i, d) for s, i, o, d in m.arcs]
    return _finish(m.table, m.n, m.initial, m.finals, arcs)


# -- queries ------------------------------------------------------------------


def _to_ids(table, s) -> list[int]:
    if isinstance(s, str):
        glyphs = list(s)
    else:
        glyphs = list(s)
    ids = []
    for g in glyphs:
        if g not in table:
            raise FsmError("unknown symbol %r" % g)
        ids.append(table.id_of(g))
    return ids


def accepts(m: Fst, s) -> bool:
    """Membership for recognizers.  `s` is a str (one symbol per character)
    or a sequence of glyphs."""
    _require_recognizer(m, "accepts")
    ids = _to_ids(m.table, s)
    adj = m.adjacency()
    current = {m.initial}
    for sym in ids:
        nxt = set()
        for q in current:
            for i, _, d in adj[q]:
                if i == sym:
                    nxt.add(d)
        if not nxt:
            return False
        current = nxt
    return bool(current & m.finals)


class TransduceResult:
    """Outputs of applying a machine to one input string.

    `outputs` holds glyph tuples sorted lexicographically by symbol id;
    `strings()` joins them for display.  `truncated` is set when the output
    set is infinite and only the first `limit` (shortest first) are kept.
    """

    def __init__(self, outputs, truncated):
        self.outputs = outputs
        self.truncated = truncated

    def strings(self) -> list[str]:
        return ["".join(o) for o in self.outputs]

    def __iter__(self):
        return iter(self.strings())

    def __len__(self):
        return len(self.outputs)


def transduce(m: Fst, s, limit: int = 64) -> TransduceResult:
    """All outputs for input `s`.  Infinite output sets (possible when the
    machine can loop emitting symbols while consuming nothing) are cut off
    after `limit` outputs in shortest-first order."""
    ids = _to_ids(m.table, s)
    adj = m.adjacency()
    npos = len(ids)

    # applied machine: states (q, position); arcs consume one input symbol
    # or none; labels are the output side
    start = (m.initial, 0)
    index = {start: 0}
    order = [start]
    out_arcs: list[list[tuple[int, int]]] = [[]]
    finals = set()
    qi = 0
    while qi < len(order):
        q, pos = order[qi]
        src = qi
        qi += 1
        if pos == npos and q in m.finals:
            finals.add(src)
        for i, o, d in adj[q]:
            if i == EPS:
                key = (d, pos)
            elif pos < npos and i == ids[pos]:
                key = (d, pos + 1)
            else:
                continue
            to = index.get(key)
            if to is None:
                to = len(order)
                index[key] = to
                order.append(key)
                out_arcs.append([])
            out_arcs[src].append((o, to))

    # determinize the output automaton so each path is a distinct string
    def eclose(states):
        seen = set(states)
        stack = list(states)
        while stack:
            v = stack.pop()
            for o, d in out_arcs[v]:
                if o == EPS and d not in seen:
                    seen.add(d)
                    stack.append(d)
        return frozenset(seen)

    dstart = eclose([0])
    dindex = {dstart: 0}
    dorder = [dstart]
    dadj: list[list[tuple[int, int]]] = [[]]
    dfinals = set()
    qi = 0
    while qi < len(dorder):
        subset = dorder[qi]
        src = qi
        qi += 1
        if subset & finals:
            dfinals.add(src)
        by_sym: dict[int, set[int]] = {}
        for v in subset:
            for o, d in out_arcs[v]:
                if o != EPS:
                    by_sym.setdefault(o, set()).add(d)
        for o in sorted(by_sym):
            key = eclose(by_sym[o])
            to = dindex.get(key)
            if to is None:
                to = len(dorder)
                dindex[key] = to
                dorder.append(key)
                dadj.append([])
            dadj[src].append((o, to))
    if not dfinals:
        return TransduceResult([], False)

    # trim to states that can still reach a final
    rev: dict[int, list[int]] = {}
    for srcq, lst in enumerate(dadj):
        for _, d in lst:
            rev.setdefault(d, []).append(srcq)
    live = set(dfinals)
    stack = sorted(dfinals)
    while stack:
        v = stack.pop()
        for w in rev.get(v, ()):
            if w not in live:
                live.add(w)
                stack.append(w)
    if 0 not in live:
        return TransduceResult([], False)

    # cycle check on the live part: any cycle means infinitely many outputs
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {}
    cyclic = False
    stack2 = [(0, iter([d for _, d in dadj[0] if d in live]))]
    color[0] = GRAY
    while stack2 and not cyclic:
        v, it = stack2[-1]
        advanced = False
        for d in it:
            c = color.get(d, WHITE)
            if c == GRAY:
                cyclic = True
                break
            if c == WHITE:
                color[d] = GRAY
                stack2.append((d, iter([x for _, x in dadj[d] if x in live])))
                advanced = True
                break
        else:
            color[v] = BLACK
            stack2.pop()
            continue
        if not advanced and not cyclic:
            color[v] = BLACK
            stack2.pop()

    glyph = m.table.glyph
    results: list[tuple[int, ...]] = []
    if not cyclic:
        memo: dict[int, list[tuple[int, ...]]] = {}

        def collect(v):
            got = memo.get(v)
            if got is not None:
                return got
            acc = [()] if v in dfinals else []
            for o, d in dadj[v]:
                if d in live:
                    acc.extend((o,) + tail for tail in collect(d))
            memo[v] = acc
            return acc

        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, len(dorder) * 2 + 100))
        try:
            results = collect(0)
        finally:
            sys.setrecursionlimit(old)
        truncated = False
    else:
        # shortest-first enumeration, cut at `limit` distinct outputs
        heap = [(0, (), 0)]
        found: set[tuple[int, ...]] = set()
        results = []
        while heap and len(results) < limit:
            length, prefix, v = heapq.heappop(heap)
            if v in dfinals and prefix not in found:
                found.add(prefix)
                results.append(prefix)
            for o, d in dadj[v]:
                if d in live:
                    heapq.heappush(heap, (length + 1, prefix + (o,), d))
        truncated = True
    outputs = sorted(set(results))
    return TransduceResult([tuple(glyph(o) for o in out) for out in outputs], truncated)


def lang_enum(m: Fst, max_len: int) -> set[str]:
    """Accepted strings of a recognizer up to max_len symbols, by walking
    the machine (joined glyph form)."""
    _require_recognizer(m, "lang_enum")
    glyph = m.table.glyph
    adj = m.adjacency()
    out: set[str] = set()
    seen = set()
    stack = [(m.initial, ())]
    while stack:
        q, prefix = stack.pop()
        if q in m.finals:
            out.add("".join(glyph(x) for x in prefix))
        if len(prefix) == max_len:
            continue
        key = (q, prefix)
        if key in seen:
            continue
        seen.add(key)
        for i, _, d in adj[q]:
            stack.append((d, prefix + (i,)))
    return out


def enumerate_pairs(m: Fst, max_input_len: int, path_cap: int = 2_000_000):
    """All (input, output) glyph-tuple pairs with input length bounded.
    Requires the relation to be finite per input on that bound (no
    input-epsilon cycles); raises FsmError otherwise."""
    glyph = m.table.glyph
    adj = m.adjacency()
    pairs: set[tuple[tuple[str, ...], tuple[str, ...]]] = set()
    steps = 0
    on_stack: set[tuple[int, int]] = set()

    stack = [(m.initial, 0, (), (), iter(adj[m.initial]))]
    on_stack.add((m.initial, 0))
    if m.initial in m.finals:
        pairs.add(((), ()))
    while stack:
        q, ilen, ins, outs, it = stack[-1]
        moved = False
        for i, o, d in it:
            nilen = ilen + (0 if i == EPS else 1)
            if nilen > max_input_len:
                continue
            key = (d, nilen)
            if i == EPS and key in on_stack:
                raise FsmError("input-epsilon cycle: relation not finite per input")
            steps += 1
            if steps > path_cap:
                raise FsmError("path cap exceeded while enumerating pairs")
            nins = ins if i == EPS else ins + (glyph(i),)
            nouts = outs if o == EPS else outs + (glyph(o),)
            if d in m.finals:
                pairs.add((nins, nouts))
            stack.append((d, nilen, nins, nouts, iter(adj[d])))
            on_stack.add(key)
            moved = True
            break
        if not moved:
            stack.pop()
            on_stack.discard((q, ilen))
    return pairs


def equivalent(a: Fst, b: Fst) -> bool:
    """Language equality for recognizers.  For transductions this compares
    pair-sequence languages (pair-atomic), which is sufficient but not
    necessary for relation equality."""
    _check_tables(a, b)
    pair_mode = not (a.is_recognizer and b.is_recognizer)
    ca = minimize(a, pair_atomic=pair_mode)
    cb = minimize(b, pair_atomic=pair_mode)
    return ca.same_structure(cb)
