"""fsrw: finite-state rewriting.

A small calculus of regular languages and transductions with
context-sensitive replacement and greedy multi-piece matching, compiled to
plain finite-state transducers, plus a rule-file language and a CLI.
"""

from .fsm import (
    EPS,
    Fst,
    FsmError,
    SymbolTable,
    TransduceResult,
    accepts,
    any_of,
    canonicalize,
    complement,
    compose,
    concat,
    containment,
    cross_product,
    determinize,
    difference,
    empty_lang,
    empty_string,
    enumerate_pairs,
    equivalent,
    identity_lift,
    intersection,
    invert,
    lang_enum,
    literal,
    minimize,
    option,
    plus,
    project,
    reduce_pairs,
    sigma_star,
    star,
    symbol_pair,
    transduce,
    union,
    word,
)

from .markers import MarkerKit
from .replace import replace, replace_factors
from .capture import lm_concat
from .oracle import (
    oracle_language,
    oracle_lm_concat,
    oracle_lm_split,
    oracle_replace,
)
from .dump import DumpFormatError, dump_text, load_text, remap
from .dsl import (
    CompiledProgram,
    RuleError,
    compile_program,
    compile_rules,
    expand_macros,
    macro_env,
    parse_expr,
    parse_program,
    pretty_print,
)

__all__ = [
    "accepts",
    "any_of",
    "canonicalize",
    "compile_program",
    "compile_rules",
    "CompiledProgram",
    "complement",
    "compose",
    "concat",
    "containment",
    "cross_product",
    "determinize",
    "difference",
    "dump_text",
    "DumpFormatError",
    "empty_lang",
    "empty_string",
    "enumerate_pairs",
    "EPS",
    "equivalent",
    "expand_macros",
    "FsmError",
    "Fst",
    "identity_lift",
    "intersection",
    "invert",
    "lang_enum",
    "literal",
    "lm_concat",
    "load_text",
    "macro_env",
    "MarkerKit",
    "minimize",
    "option",
    "oracle_language",
    "oracle_lm_concat",
    "oracle_lm_split",
    "oracle_replace",
    "parse_expr",
    "parse_program",
    "plus",
    "pretty_print",
    "project",
    "reduce_pairs",
    "remap",
    "replace",
    "replace_factors",
    "RuleError",
    "sigma_star",
    "star",
    "symbol_pair",
    "SymbolTable",
    "transduce",
    "TransduceResult",
    "union",
    "word",
]
