import random

import pytest

from genlib import formula
from islt.formula import (
    And,
    Bot,
    Box,
    Imp,
    Or,
    ParseError,
    Var,
    compare,
    parse_formula,
    print_formula,
    sort_key,
    variables,
    weight,
)

p, q, r = Var("p"), Var("q"), Var("r")


def test_parse_precedence_and_associativity():
    assert parse_formula("p -> q -> r") == Imp(p, Imp(q, r))
    assert parse_formula("p \\/ q /\\ r") == Or(p, And(q, r))
    assert parse_formula("p /\\ q -> r") == Imp(And(p, q), r)
    assert parse_formula("p \\/ q \\/ r") == Or(Or(p, q), r)
    assert parse_formula("p /\\ q /\\ r") == And(And(p, q), r)
    assert parse_formula("[]p -> p") == Imp(Box(p), p)
    assert parse_formula("[](p -> q)") == Box(Imp(p, q))
    assert parse_formula("[][]p") == Box(Box(p))


def test_negation_is_parser_sugar():
    assert parse_formula("~p") == Imp(p, Bot())
    assert parse_formula("~~p") == Imp(Imp(p, Bot()), Bot())
    assert parse_formula("~p \\/ p") == Or(Imp(p, Bot()), p)
    # printing never reintroduces the sugar
    assert print_formula(Imp(p, Bot())) == "p -> #"


def test_print_minimal_parentheses():
    assert print_formula(Imp(p, Imp(q, r))) == "p -> q -> r"
    assert print_formula(Imp(Imp(p, q), r)) == "(p -> q) -> r"
    assert print_formula(And(p, Or(q, r))) == "p /\\ (q \\/ r)"
    assert print_formula(Or(And(p, q), r)) == "p /\\ q \\/ r"
    assert print_formula(Box(Imp(p, q))) == "[](p -> q)"
    assert print_formula(Box(p)) == "[]p"
    assert print_formula(And(p, And(q, r))) == "p /\\ (q /\\ r)"


def test_parse_errors_carry_position():
    for text in ["", "p ->", "(p", "p q", "p export", "->", "p -> #)", "P"]:
        with pytest.raises(ParseError):
            parse_formula(text)
    try:
        parse_formula("p -> (q")
    except ParseError as e:
        assert e.pos == 7


def test_weight_base_cases():
    assert weight(p) == 1
    assert weight(Bot()) == 1
    assert weight(Or(p, q)) == 3
    assert weight(Imp(p, q)) == 3
    assert weight(And(p, q)) == 4
    assert weight(Box(p)) == 2


def test_weight_curry_inequality_hand():
    lhs = weight(Imp(p, Imp(q, r)))
    rhs = weight(Imp(And(p, q), r))
    assert lhs == 5 and rhs == 6
    assert lhs < rhs


def test_weight_curry_inequality_random():
    rng = random.Random(101)
    for _ in range(500):
        f, g, h = (formula(rng, rng.randrange(0, 5)) for _ in range(3))
        assert weight(Imp(f, Imp(g, h))) < weight(Imp(And(f, g), h))


def test_roundtrip_random():
    rng = random.Random(7)
    for _ in range(2000):
        f = formula(rng, rng.randrange(0, 7))
        assert parse_formula(print_formula(f)) == f


def test_compare_total_order():
    rng = random.Random(13)
    pool = [formula(rng, rng.randrange(0, 4)) for _ in range(120)]
    for a in pool[:40]:
        for b in pool[:40]:
            ca, cb = compare(a, b), compare(b, a)
            assert ca == -cb
            assert (ca == 0) == (a == b)
    # sorting twice is stable
    once = sorted(pool, key=sort_key)
    assert sorted(once, key=sort_key) == once


def test_compare_rank_order():
    ordered = [Bot(), p, And(p, p), Or(p, p), Imp(p, p), Box(p)]
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            assert compare(a, b) == -1


def test_variables():
    assert variables(parse_formula("p -> ([]q /\\ #)")) == {"p", "q"}
    assert variables(Bot()) == set()
