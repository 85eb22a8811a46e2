import pytest
from hypothesis import given, settings, strategies as st

from mtlfi.formula import (And, Bullet, Circ, Const, Delta,
                           FormulaSyntaxError, Fuse, Iff, Imp, Not, ONE, Or,
                           Var, ZERO, match_schema, normalize, parse, power,
                           render, schema, substitute, subformulas,
                           to_bullet_language, to_circ_language, variables)

p, q, r = Var("p"), Var("q"), Var("r")


class TestParse:
    def test_negated_contradiction_with_marker(self):
        f = parse("~(p /\\ ~p /\\ O p)")
        assert f == Not(And(And(p, Not(p)), Circ(p)))

    def test_one_is_a_constant(self):
        assert parse("1") == ONE
        assert normalize(parse("1")) == Imp(ZERO, ZERO)

    def test_arrows_are_right_associative(self):
        assert parse("p -> q -> r") == Imp(p, Imp(q, r))
        assert parse("p <-> q <-> r") == Iff(p, Iff(q, r))

    def test_mixing_arrows_needs_parens(self):
        with pytest.raises(FormulaSyntaxError):
            parse("p -> q <-> r")
        assert parse("p -> (q <-> r)") == Imp(p, Iff(q, r))

    def test_precedence_ladder(self):
        # unary > & > /\ > \/ > arrows
        assert parse("O p & q") == Fuse(Circ(p), q)
        assert parse("p & q /\\ r") == And(Fuse(p, q), r)
        assert parse("p /\\ q \\/ r") == Or(And(p, q), r)
        assert parse("p \\/ q -> r") == Imp(Or(p, q), r)
        assert parse("~p & q") == Fuse(Not(p), q)

    def test_unary_stack(self):
        assert parse("~~p") == Not(Not(p))
        assert parse("O ~p") == Circ(Not(p))
        assert parse("D # p") == Delta(Bullet(p))

    def test_variable_names(self):
        assert parse("x_1") == Var("x_1")
        assert parse("ab2c") == Var("ab2c")

    def test_error_carries_offset_and_expectations(self):
        with pytest.raises(FormulaSyntaxError) as exc:
            parse("p -> ")
        assert exc.value.offset == 5
        with pytest.raises(FormulaSyntaxError) as exc:
            parse("p ? q")
        assert exc.value.offset == 2
        assert exc.value.expected

    def test_trailing_garbage(self):
        with pytest.raises(FormulaSyntaxError):
            parse("p q")


# --- random ASTs ------------------------------------------------------------

_names = st.sampled_from(["p", "q", "r", "s1"])
_leaves = st.one_of(_names.map(Var), st.just(ZERO), st.just(ONE))


def _branch(kids):
    binary = st.tuples(kids, kids)
    return st.one_of(
        kids.map(Not), kids.map(Circ), kids.map(Bullet), kids.map(Delta),
        binary.map(lambda t: And(*t)), binary.map(lambda t: Or(*t)),
        binary.map(lambda t: Fuse(*t)), binary.map(lambda t: Imp(*t)),
        binary.map(lambda t: Iff(*t)))


formulas = st.recursive(_leaves, _branch, max_leaves=20)


@given(formulas)
@settings(max_examples=300, deadline=None)
def test_parse_render_roundtrip(f):
    assert parse(render(f)) == f


@given(formulas)
@settings(max_examples=200, deadline=None)
def test_render_is_canonical(f):
    text = render(f)
    assert render(parse(text)) == text


@given(formulas)
@settings(max_examples=200, deadline=None)
def test_normalize_idempotent(f):
    n = normalize(f)
    assert normalize(n) == n


_CORE = (Var, Const, And, Fuse, Imp, Circ, Bullet, Delta)


@given(formulas)
@settings(max_examples=200, deadline=None)
def test_normalize_uses_core_connectives_only(f):
    n = normalize(f)
    for node in subformulas(n):
        assert isinstance(node, _CORE)
        if isinstance(node, Const):
            assert node.value == 0


@given(formulas)
@settings(max_examples=200, deadline=None)
def test_normalize_introduces_no_new_markers(f):
    before = {type(n) for n in subformulas(f)}
    after = {type(n) for n in subformulas(normalize(f))}
    for marker in (Circ, Bullet, Delta, Var):
        if marker in after:
            assert marker in before


def test_normalize_examples():
    assert normalize(Or(p, q)) == And(Imp(Imp(p, q), q), Imp(Imp(q, p), p))
    assert normalize(Not(p)) == Imp(p, ZERO)
    assert normalize(p) == p
    assert normalize(Iff(p, q)) == And(Imp(p, q), Imp(q, p))


# --- schemas ----------------------------------------------------------------

class TestSchema:
    def test_marker_schema_match(self):
        s = schema("O x -> (x \\/ ~x)", {"x"})
        target = parse("O (p & q) -> ((p & q) \\/ ~(p & q))")
        binding = match_schema(s, target)
        assert binding == {"x": parse("p & q")}
        assert substitute(s, binding) == target

    def test_inconsistent_binding_is_rejected(self):
        s = schema("x -> x", {"x"})
        assert match_schema(s, parse("p -> q")) is None

    def test_repeated_metavariable(self):
        s = schema("x & y -> x", {"x", "y"})
        binding = match_schema(s, parse("p & p -> p"))
        assert binding == {"x": p, "y": p}

    def test_non_metavariable_must_match_literally(self):
        s = schema("x -> p", {"x"})
        assert match_schema(s, parse("q -> p")) == {"x": q}
        assert match_schema(s, parse("q -> r")) is None

    def test_default_metavars_are_all_variables(self):
        s = schema("f -> g")
        assert s.metavars == frozenset({"f", "g"})


@given(formulas, formulas)
@settings(max_examples=200, deadline=None)
def test_match_substitute_roundtrip(body, filler):
    s = schema(render(Imp(Var("hole"), body)), {"hole"})
    instance = substitute(s, {"hole": filler})
    binding = match_schema(s, instance)
    assert binding is not None
    assert substitute(s, binding) == instance


# --- powers and translations -------------------------------------------------

def test_power():
    assert power(p, 0) == ONE
    assert power(p, 1) == p
    assert power(p, 3) == Fuse(Fuse(p, p), p)
    em = Or(p, Not(p))
    assert power(em, 2) == Fuse(em, em)
    with pytest.raises(ValueError):
        power(p, -1)


def test_language_translations():
    f = parse("O p -> (q /\\ O O r)")
    t = to_bullet_language(f)
    assert t == parse("~# p -> (q /\\ ~# ~# r)")
    g = parse("# p \\/ ~# q")
    assert to_circ_language(g) == parse("~O p \\/ ~~O q")


def test_variables_and_subformulas():
    f = parse("p & q -> O p")
    assert variables(f) == {"p", "q"}
    assert parse("p & q") in list(subformulas(f))
