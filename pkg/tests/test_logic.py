import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import finitetop as ft
from finitetop.errors import FormatError, ValidationError
from finitetop.logic import (
    And,
    BOT,
    Not,
    TOP,
    Var,
    biconditional,
    disjunction,
    evaluate,
    implication,
)


def random_formula(rng, names, depth):
    if depth == 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.1:
            return TOP if rng.random() < 0.5 else BOT
        return Var(rng.choice(names))
    op = rng.choice(("not", "and", "or", "imp", "iff"))
    a = random_formula(rng, names, depth - 1)
    if op == "not":
        return Not(a)
    b = random_formula(rng, names, depth - 1)
    return {
        "and": And,
        "or": disjunction,
        "imp": implication,
        "iff": biconditional,
    }[op](a, b)


# -- parsing -------------------------------------------------------------------


def test_precedence_and_over_or():
    f = ft.parse_formula("p & q | r")
    assert f == disjunction(And(Var("p"), Var("q")), Var("r"))


def test_implication_right_associative():
    f = ft.parse_formula("~p -> q -> r")
    assert f == implication(Not(Var("p")), implication(Var("q"), Var("r")))


def test_syntax_error_carries_position():
    with pytest.raises(FormatError) as err:
        ft.parse_formula("p & | q")
    assert "position 4" in str(err.value)


def test_parentheses_and_constants():
    f = ft.parse_formula("(p | q) & top")
    assert f == And(disjunction(Var("p"), Var("q")), TOP)
    assert ft.parse_formula("bot") == BOT


def test_biconditional_parses():
    f = ft.parse_formula("p <-> q")
    assert f == biconditional(Var("p"), Var("q"))


def test_parser_round_trips_semantics():
    rng = random.Random(5)
    names = ["p", "q", "r"]
    for _ in range(100):
        f = random_formula(rng, names, 3)
        g = ft.parse_formula(str(f))
        for bits in range(8):
            val = frozenset(n for i, n in enumerate(names) if bits >> i & 1)
            assert evaluate(f, val) == evaluate(g, val)


# -- consistency and equivalence ------------------------------------------------


def test_consistency_examples():
    assert ft.is_consistent(ft.Theory.of([ft.parse_formula("p")]))
    assert not ft.is_consistent(
        ft.Theory.of([ft.parse_formula("p"), ft.parse_formula("~p")])
    )
    t = ft.Theory.of(
        [ft.parse_formula("p -> q"), ft.parse_formula("p"), ft.parse_formula("~q")]
    )
    assert not ft.is_consistent(t)


def test_equivalence_examples():
    empty = ft.Theory.of([], vars=("p",))
    assert ft.equivalence_mod_theory(empty, ft.parse_formula("p | ~p"), TOP)
    with_p = ft.Theory.of([ft.parse_formula("p")], vars=("p", "q"))
    assert ft.equivalence_mod_theory(
        with_p, ft.parse_formula("p & q"), ft.parse_formula("q")
    )
    f = ft.parse_formula("p -> q & r")
    assert ft.equivalence_mod_theory(ft.Theory.of([], vars=("p", "q", "r")), f, f)


def test_variable_universe_enforced():
    with pytest.raises(FormatError):
        ft.Theory.of([ft.parse_formula("p")], vars=("q",))
    with pytest.raises(ValidationError):
        ft.Theory.of([], vars=tuple(f"v{i}" for i in range(17)))


# -- the algebra -------------------------------------------------------------------


def test_algebra_sizes():
    assert ft.lindenbaum_algebra(ft.Theory.of([], vars=("p",))).size == 4
    assert ft.lindenbaum_algebra(ft.Theory.of([], vars=("p", "q"))).size == 16
    assert ft.lindenbaum_algebra(ft.Theory.of([ft.parse_formula("p")])).size == 2


def test_inconsistent_theory_has_no_algebra():
    t = ft.Theory.of([ft.parse_formula("p"), ft.parse_formula("~p")])
    with pytest.raises(ValidationError):
        ft.lindenbaum_algebra(t)


def test_class_operations_are_homomorphic():
    rng = random.Random(11)
    names = ["p", "q", "r"]
    alg = ft.lindenbaum_algebra(ft.Theory.of([ft.parse_formula("p | q")], vars=tuple(names)))
    for _ in range(200):
        a = random_formula(rng, names, 3)
        b = random_formula(rng, names, 3)
        ca, cb = alg.class_of(a), alg.class_of(b)
        assert alg.class_of(And(a, b)) == alg.meet(ca, cb)
        assert alg.class_of(disjunction(a, b)) == alg.join(ca, cb)
        assert alg.class_of(Not(a)) == alg.complement(ca)
    assert alg.class_of(TOP) == alg.top
    assert alg.class_of(BOT) == alg.bot


def test_boolean_axioms_elementwise():
    alg = ft.lindenbaum_algebra(ft.Theory.of([], vars=("p", "q")))
    els = list(alg.elements())
    for a in els:
        assert alg.join(a, alg.complement(a)) == alg.top
        assert alg.meet(a, alg.complement(a)) == alg.bot
        for b in els:
            # de Morgan
            assert alg.complement(alg.meet(a, b)) == alg.join(
                alg.complement(a), alg.complement(b)
            )
            for c in els:
                assert alg.meet(a, alg.join(b, c)) == alg.join(
                    alg.meet(a, b), alg.meet(a, c)
                )


def test_equivalence_matches_class_equality():
    rng = random.Random(13)
    names = ["p", "q"]
    theory = ft.Theory.of([ft.parse_formula("p -> q")], vars=tuple(names))
    alg = ft.lindenbaum_algebra(theory)
    for _ in range(100):
        a = random_formula(rng, names, 3)
        b = random_formula(rng, names, 3)
        assert ft.equivalence_mod_theory(theory, a, b) == (
            alg.class_of(a) == alg.class_of(b)
        )


# -- models from ultrafilters --------------------------------------------------------


def test_model_examples():
    m = ft.model_from_ultrafilter(
        ft.Theory.of([ft.parse_formula("p | q"), ft.parse_formula("~p")])
    )
    assert m.valuation == frozenset({"q"})
    m = ft.model_from_ultrafilter(ft.Theory.of([], vars=("p",)))
    assert m.valuation == frozenset()  # lexicographically first, bot < top
    m = ft.model_from_ultrafilter(
        ft.Theory.of([ft.parse_formula("p <-> q"), ft.parse_formula("p")])
    )
    assert m.valuation == frozenset({"p", "q"})


def test_model_requires_consistency():
    with pytest.raises(ValidationError):
        ft.model_from_ultrafilter(
            ft.Theory.of([ft.parse_formula("p"), ft.parse_formula("~p")])
        )


def test_truth_in_model_equals_membership_in_ultrafilter():
    rng = random.Random(17)
    names = ["p", "q", "r"]
    theory = ft.Theory.of([ft.parse_formula("p | q | r")], vars=tuple(names))
    model = ft.model_from_ultrafilter(theory)
    for _ in range(300):
        f = random_formula(rng, names, 3)
        assert model.satisfies(f) == model.in_ultrafilter(model.algebra.class_of(f))


def test_random_consistent_theories_are_satisfied():
    rng = random.Random(19)
    names = ["p", "q", "r"]
    done = 0
    while done < 60:
        formulas = [
            random_formula(rng, names, rng.randint(1, 3))
            for _ in range(rng.randint(1, 5))
        ]
        theory = ft.Theory.of(formulas, vars=tuple(names))
        if not ft.is_consistent(theory):
            continue
        model = ft.model_from_ultrafilter(theory)
        assert all(model.satisfies(f) for f in theory.formulas)
        done += 1


# -- Stone representation --------------------------------------------------------------


def test_stone_extremes():
    alg = ft.lindenbaum_algebra(ft.Theory.of([], vars=("p",)))
    st_rep = ft.stone_representation(alg)
    assert len(st_rep.ultrafilters) == 2
    assert st_rep.image_of(alg.top) == frozenset(range(2))
    assert st_rep.image_of(alg.bot) == frozenset()


def test_stone_is_injective_homomorphism():
    for vars in (("p",), ("p", "q")):
        alg = ft.lindenbaum_algebra(ft.Theory.of([], vars=vars))
        rep = ft.stone_representation(alg)
        images = {}
        for a in alg.elements():
            images[a] = rep.image_of(a)
        assert len(set(images.values())) == alg.size  # injective
        for a in alg.elements():
            for b in alg.elements():
                assert rep.image_of(alg.meet(a, b)) == images[a] & images[b]
                assert rep.image_of(alg.join(a, b)) == images[a] | images[b]
            assert rep.image_of(alg.complement(a)) == frozenset(
                range(len(alg.models))
            ) - images[a]
