"""Random machines, rules, and model languages shared by the randomized
suites.  Everything takes an explicit random.Random so runs are repeatable."""

import random

from fsrw import (
    EPS,
    Fst,
    SymbolTable,
    concat,
    cross_product,
    empty_lang,
    empty_string,
    literal,
    option,
    plus,
    star,
    symbol_pair,
    union,
    word,
)


# ---------------------------------------------------------------------------
# random regexes with a set-of-strings model


def random_regex(rng: random.Random, glyphs, depth: int = 3):
    """A regex as a nested-tuple tree over the given glyphs."""
    if depth <= 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.1:
            return ("eps",)
        if roll < 0.15:
            return ("none",)
        return ("sym", rng.choice(glyphs))
    op = rng.choice(["union", "concat", "star", "option", "plus",
                     "union", "concat"])
    if op in ("star", "option", "plus"):
        return (op, random_regex(rng, glyphs, depth - 1))
    return (op, random_regex(rng, glyphs, depth - 1),
            random_regex(rng, glyphs, depth - 1))


def build_regex(node, table) -> Fst:
    op = node[0]
    if op == "eps":
        return empty_string(table)
    if op == "none":
        return empty_lang(table)
    if op == "sym":
        return literal(table, node[1])
    if op == "union":
        return union(build_regex(node[1], table), build_regex(node[2], table))
    if op == "concat":
        return concat(build_regex(node[1], table), build_regex(node[2], table))
    if op == "star":
        return star(build_regex(node[1], table))
    if op == "option":
        return option(build_regex(node[1], table))
    if op == "plus":
        return plus(build_regex(node[1], table))
    raise ValueError(op)


def model_lang(node, max_len: int) -> set:
    """The language of a regex tree, cut off at max_len, computed with
    plain set operations so it shares nothing with the library."""
    op = node[0]
    if op == "eps":
        return {""}
    if op == "none":
        return set()
    if op == "sym":
        return {node[1]} if len(node[1]) <= max_len else set()
    if op == "union":
        return model_lang(node[1], max_len) | model_lang(node[2], max_len)
    if op == "concat":
        a = model_lang(node[1], max_len)
        b = model_lang(node[2], max_len)
        return {x + y for x in a for y in b if len(x) + len(y) <= max_len}
    if op == "option":
        return {""} | model_lang(node[1], max_len)
    if op in ("star", "plus"):
        base = model_lang(node[1], max_len)
        out = {""}
        frontier = {""}
        while frontier:
            frontier = {x + y for x in frontier for y in base
                        if len(x) + len(y) <= max_len and x + y not in out}
            out |= frontier
        if op == "plus":
            return (out - {""}) | ({""} if "" in base else set())
        return out
    raise ValueError(op)


# ---------------------------------------------------------------------------
# random transductions


def random_arc_machine(rng: random.Random, table, max_states: int = 3,
                       recognizer: bool = False) -> Fst:
    """A random machine given directly by its arcs.  Input labels are never
    epsilon, so each input has finitely many outputs."""
    n = rng.randint(1, max_states)
    syms = list(table.user_ids())
    arcs = set()
    for _ in range(rng.randint(0, 2 * n + 2)):
        src = rng.randrange(n)
        dst = rng.randrange(n)
        inp = rng.choice(syms)
        if recognizer:
            out = inp
        else:
            out = rng.choice(syms + [EPS])
        arcs.add((src, inp, out, dst))
    finals = frozenset(q for q in range(n) if rng.random() < 0.5)
    if not finals:
        finals = frozenset([rng.randrange(n)])
    is_rec = all(a[1] == a[2] for a in arcs)
    return Fst(table, n, 0, finals, tuple(sorted(arcs)), is_rec)


def random_word(rng: random.Random, glyphs, max_len: int):
    return [rng.choice(glyphs) for _ in range(rng.randint(0, max_len))]


def random_target(rng: random.Random, table) -> Fst:
    """A transduction to feed the rewrite compiler: either a small random
    arc machine or a cross product, the latter so the empty string can have
    a nonempty image."""
    glyphs = table.user_glyphs()
    if rng.random() < 0.6:
        return random_arc_machine(rng, table, max_states=3)
    src = random_regex(rng, glyphs, depth=2)
    return cross_product(build_regex(src, table),
                         word(table, random_word(rng, glyphs, 2)))


def random_context(rng: random.Random, table) -> Fst:
    """A recognizer of up to two words, each of length at most two."""
    glyphs = table.user_glyphs()
    words = [word(table, random_word(rng, glyphs, 2))
             for _ in range(rng.randint(1, 2))]
    return union(*words)


def random_replace_rule(rng: random.Random):
    k = rng.randint(1, 3)
    table = SymbolTable("abc"[:k])
    return table, random_target(rng, table), random_context(rng, table), \
        random_context(rng, table)


def all_strings(glyphs, max_len: int):
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [s + (g,) for s in frontier for g in glyphs]
        out.extend(frontier)
    return out
