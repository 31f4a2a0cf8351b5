"""Propositional formulas, theories, and the algebra of classes mod a theory.

Formulas are kept over negation and conjunction only; the other
connectives are desugared at construction time. With at most 16 variables
every semantic question is settled by sweeping the full truth table, and
the algebra of a theory T canonicalizes a formula class as the vector of
its truth values over the models of T, so class identity is bitmask
equality and the algebra's ultrafilters are the single-model atoms.
"""

import re
from dataclasses import dataclass

from .bitsets import bits
from .errors import FormatError, ValidationError

MAX_VARS = 16


class PropFormula:
    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __invert__(self):
        return Not(self)

    def __or__(self, other):
        return disjunction(self, other)


@dataclass(frozen=True)
class Var(PropFormula):
    __slots__ = ("name",)
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const(PropFormula):
    __slots__ = ("value",)
    value: bool

    def __str__(self):
        return "top" if self.value else "bot"


@dataclass(frozen=True)
class Not(PropFormula):
    __slots__ = ("arg",)
    arg: PropFormula

    def __str__(self):
        return f"~{self.arg}" if isinstance(self.arg, (Var, Const, Not)) else f"~({self.arg})"


@dataclass(frozen=True)
class And(PropFormula):
    __slots__ = ("left", "right")
    left: PropFormula
    right: PropFormula

    def __str__(self):
        def wrap(f):
            return str(f) if isinstance(f, (Var, Const, Not)) else f"({f})"

        return f"{wrap(self.left)} & {wrap(self.right)}"


TOP = Const(True)
BOT = Const(False)


def disjunction(a, b):
    return Not(And(Not(a), Not(b)))


def implication(a, b):
    return disjunction(Not(a), b)


def biconditional(a, b):
    return And(implication(a, b), implication(b, a))


def variables_of(formula):
    out = set()
    stack = [formula]
    while stack:
        f = stack.pop()
        if isinstance(f, Var):
            out.add(f.name)
        elif isinstance(f, Not):
            stack.append(f.arg)
        elif isinstance(f, And):
            stack.extend((f.left, f.right))
    return out


def evaluate(formula, true_vars: frozenset) -> bool:
    if isinstance(formula, Var):
        return formula.name in true_vars
    if isinstance(formula, Const):
        return formula.value
    if isinstance(formula, Not):
        return not evaluate(formula.arg, true_vars)
    if isinstance(formula, And):
        return evaluate(formula.left, true_vars) and evaluate(formula.right, true_vars)
    raise FormatError(f"not a formula: {formula!r}")


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(<->|->|[()&|~]|[a-z][a-z0-9_]*)")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise FormatError(f"syntax error at position {pos}: {text[pos:].strip()[:10]!r}")
            break
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent; precedence ~ > & > | > -> (right) > <->."""

    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected):
        if self.pos < len(self.tokens):
            tok, at = self.tokens[self.pos]
            raise FormatError(f"syntax error at position {at}: unexpected {tok!r}, wanted {expected}")
        raise FormatError(f"syntax error at end of input: wanted {expected}")

    def parse(self):
        f = self.iff()
        if self.peek() is not None:
            self.fail("end of input")
        return f

    def iff(self):
        f = self.imp()
        while self.peek() == "<->":
            self.take()
            f = biconditional(f, self.imp())
        return f

    def imp(self):
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return implication(f, self.imp())
        return f

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = disjunction(f, self.conj())
        return f

    def conj(self):
        f = self.atom()
        while self.peek() == "&":
            self.take()
            f = And(f, self.atom())
        return f

    def atom(self):
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.atom())
        if tok == "(":
            self.take()
            f = self.iff()
            if self.peek() != ")":
                self.fail("')'")
            self.take()
            return f
        if tok == "top":
            self.take()
            return TOP
        if tok == "bot":
            self.take()
            return BOT
        if tok is not None and re.fullmatch(r"[a-z][a-z0-9_]*", tok):
            self.take()
            return Var(tok)
        self.fail("a variable, constant, '~' or '('")


def parse_formula(text: str) -> PropFormula:
    return _Parser(text).parse()


# -- theories and their algebras ---------------------------------------------


@dataclass(frozen=True)
class Theory:
    formulas: tuple
    vars: tuple

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(self.formulas))
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(self.vars) > MAX_VARS:
            raise ValidationError(f"at most {MAX_VARS} variables are supported")
        if len(set(self.vars)) != len(self.vars):
            raise FormatError("duplicate variable in universe")
        universe = set(self.vars)
        for f in self.formulas:
            extra = variables_of(f) - universe
            if extra:
                raise FormatError(f"formula uses undeclared variable {sorted(extra)[0]!r}")

    @classmethod
    def of(cls, formulas, vars=None):
        formulas = tuple(formulas)
        if vars is None:
            names = set()
            for f in formulas:
                names |= variables_of(f)
            vars = tuple(sorted(names))
        return cls(formulas, tuple(vars))

    def valuations(self):
        """Valuations in lexicographic order with bot < top on each variable."""
        k = len(self.vars)
        for m in range(1 << k):
            yield frozenset(self.vars[i] for i in range(k) if m >> (k - 1 - i) & 1)

    def models(self):
        return [
            v for v in self.valuations() if all(evaluate(f, v) for f in self.formulas)
        ]


def is_consistent(theory: Theory) -> bool:
    return bool(theory.models())


def equivalence_mod_theory(theory: Theory, a, b) -> bool:
    """Same truth value at every model of the theory."""
    return all(evaluate(a, v) == evaluate(b, v) for v in theory.models())


@dataclass(frozen=True)
class LindenbaumAlgebra:
    """Boolean algebra of formula classes, as bit vectors over the models."""

    theory: Theory
    models: tuple

    @property
    def size(self):
        return 1 << len(self.models)

    @property
    def top(self):
        return (1 << len(self.models)) - 1

    bot = 0

    def class_of(self, formula) -> int:
        extra = variables_of(formula) - set(self.theory.vars)
        if extra:
            raise FormatError(f"formula uses undeclared variable {sorted(extra)[0]!r}")
        return sum(1 << i for i, v in enumerate(self.models) if evaluate(formula, v))

    def meet(self, a, b):
        return a & b

    def join(self, a, b):
        return a | b

    def complement(self, a):
        return self.top & ~a

    def atoms(self):
        return [1 << i for i in range(len(self.models))]

    def elements(self):
        if len(self.models) > MAX_VARS:
            raise ValidationError("algebra too large to enumerate")
        return range(self.size)


def lindenbaum_algebra(theory: Theory) -> LindenbaumAlgebra:
    models = tuple(theory.models())
    if not models:
        raise ValidationError("inconsistent theory: the algebra degenerates to top = bot")
    return LindenbaumAlgebra(theory, models)


@dataclass(frozen=True)
class UltrafilterModel:
    valuation: frozenset  # set of true variables
    atom: int  # kernel of the chosen ultrafilter, as an algebra element
    algebra: LindenbaumAlgebra

    def satisfies(self, formula) -> bool:
        return evaluate(formula, self.valuation)

    def in_ultrafilter(self, element: int) -> bool:
        return bool(element & self.atom)


def model_from_ultrafilter(theory: Theory) -> UltrafilterModel:
    """Model read off a principal ultrafilter of the theory's algebra.

    The atoms of the finite algebra are the single-model vectors, so an
    ultrafilter amounts to choosing one model; the tie-break is the
    lexicographically first satisfying valuation (bot before top). Truth in
    the model agrees with membership of the class in the ultrafilter.
    """
    algebra = lindenbaum_algebra(theory)
    valuation = algebra.models[0]
    atom = 1
    model = UltrafilterModel(valuation, atom, algebra)
    assert all(model.satisfies(f) for f in theory.formulas)
    return model


@dataclass(frozen=True)
class StoneReport:
    algebra: LindenbaumAlgebra
    ultrafilters: tuple  # the atoms

    def image_of(self, element: int) -> frozenset:
        """Indices of the ultrafilters containing the element."""
        return frozenset(bits(element))


def stone_representation(algebra: LindenbaumAlgebra) -> StoneReport:
    """Represent elements as the sets of ultrafilters containing them.

    On a finite Boolean algebra the ultrafilters are the up-sets of atoms,
    and a |-> {ultrafilters containing a} is an isomorphism onto the power
    set of the atom set.
    """
    return StoneReport(algebra, tuple(algebra.atoms()))
