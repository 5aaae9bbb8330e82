"""Exact analysis of polynomial control systems through shuffle automata."""

from fractions import Fraction

from . import _fliess
from ._fliess import (
    Automaton,
    Error,
    ParseError,
    System,
    ValidationError,
    automaton_to_system,
    check,
    equal,
    left_derivative,
    parse_automaton,
    parse_system,
    restrict,
    right_derivative,
    shuffle,
    sum,
    support_subset,
    system_to_automaton,
    word_automaton,
    zeroness,
)

__all__ = [
    "Automaton", "Error", "ParseError", "System", "ValidationError", "automaton_to_system", "check",
    "coeff", "equal", "fliess_eval", "left_derivative", "load", "oracle", "parse_automaton",
    "parse_system", "restrict", "right_derivative", "scale", "shuffle", "simulate", "sum",
    "support_subset", "system_to_automaton", "word_automaton", "zeroness",
]


def load(text):
    """Parses a system or automaton and returns an automaton."""
    if text.lstrip().startswith("automaton"):
        return parse_automaton(text)
    return system_to_automaton(parse_system(text))


def coeff(automaton, word):
    return Fraction(_fliess.coeff(automaton, word))


def scale(c, automaton):
    return _fliess.scale(str(Fraction(c)), automaton)


def oracle(automaton, depth):
    return {w: Fraction(c) for w, c in _fliess.oracle(automaton, depth)}


def _series_args(inputs):
    return [[str(Fraction(c)) for c in u] for u in inputs]


def simulate(system, inputs, order):
    return [Fraction(c) for c in _fliess.simulate(system, _series_args(inputs), order)]


def fliess_eval(automaton, inputs, order):
    return [Fraction(c) for c in _fliess.fliess_eval(automaton, _series_args(inputs), order)]
