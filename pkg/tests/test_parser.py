import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from helpers import all_models, naive_eval
from porphyry import (
    rename_apart,
    And,
    Const,
    ConstantDef,
    Eq,
    Exists,
    Falsum,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    ParseError,
    Pred,
    Signature,
    Var,
    Verum,
    parse,
    parse_formula,
    parse_formulas_infer,
    parse_path,
    render,
    validate,
)

SIG = Signature((("M1", 1), ("M2", 1)), ("c",), False)


def P(name, v):
    return Pred(name, (Var(v),))


FULL = """
# a complete file
sig {
  pred M1/1;
  pred R/2;
  const c;
  equality;
}
defsys {
  def A(x) := M1(x) & R(x, c);
  defconst e := c;
}
model tiny {
  universe 2;
  M1 = {0};
  R = {(0, 1), (1, 1)};
  c = 1;
}
assert exists x. M1(x);
"""


def test_parse_full_file():
    pf = parse(FULL)
    assert pf.signature == Signature(
        (("M1", 1), ("R", 2)), ("c",), True
    )
    assert [e.name for e in pf.system.entries] == ["A", "e"]
    cd = pf.system.entries[1]
    assert isinstance(cd, ConstantDef)
    assert cd.body == Eq(Var(cd.var), Const("c"))
    m = pf.models["tiny"]
    assert m.size == 2
    assert sorted(m.predicates["R"]) == [(0, 1), (1, 1)]
    assert m.constants == {"c": 1}
    assert pf.asserts == (Exists("x", P("M1", "x")),)


def test_precedence_and_associativity():
    f = parse_formula("!M1(x) & M2(x) | M1(x) -> M2(x) <-> M1(x)", SIG)
    expected = Iff(
        Implies(Or(And(Not(P("M1", "x")), P("M2", "x")), P("M1", "x")), P("M2", "x")),
        P("M1", "x"),
    )
    assert f == expected
    assert parse_formula("M1(x) -> M2(x) -> M1(x)", SIG) == Implies(
        P("M1", "x"), Implies(P("M2", "x"), P("M1", "x"))
    )
    assert parse_formula("M1(x) <-> M2(x) <-> M1(x)", SIG) == Iff(
        P("M1", "x"), Iff(P("M2", "x"), P("M1", "x"))
    )


def test_quantifier_scope_maximal():
    f = parse_formula("forall x. M1(x) & M2(x)", SIG)
    assert f == Forall("x", And(P("M1", "x"), P("M2", "x")))
    g = parse_formula("!forall x. M1(x)", SIG)
    assert g == Not(Forall("x", P("M1", "x")))
    h = parse_formula("(forall x. M1(x)) & M2(y)", SIG)
    assert h == And(Forall("x", P("M1", "x")), P("M2", "y"))
    k = parse_formula("exists x. M1(x) -> M2(x)", SIG)
    assert k == Exists("x", Implies(P("M1", "x"), P("M2", "x")))


def test_constants_and_literals():
    assert parse_formula("true", SIG) == Verum()
    assert parse_formula("false", SIG) == Falsum()
    assert parse_formula("M1(c)", SIG) == Pred("M1", (Const("c"),))


def test_model_extent_forms():
    pf = parse(
        "sig { pred p/0; pred M1/1; pred R/2; const c; }\n"
        "model m { universe 3; p = {()}; M1 = {(1), 2}; R = {(0, 1)}; c = {2}; }"
    )
    m = pf.models["m"]
    assert sorted(m.predicates["p"]) == [()]
    assert sorted(m.predicates["M1"]) == [(1,), (2,)]
    assert sorted(m.predicates["R"]) == [(0, 1)]
    assert m.constants == {"c": 2}


def test_model_defaults_and_errors():
    pf = parse("sig { pred M1/1; } model m { universe 1; }")
    assert pf.models["m"].predicates["M1"] == frozenset()
    with pytest.raises(ParseError):
        parse("sig { const c; } model m { universe 1; }")
    with pytest.raises(ParseError):
        parse("sig { pred M1/1; } model m { universe 2; M1 = {0, 2}; }")
    with pytest.raises(ParseError):
        parse("sig { pred M1/1; } model m { universe 2; M1 = {0}; M1 = {1}; }")
    with pytest.raises(ParseError):
        parse("sig { pred M1/1; } model m { universe 0; }")
    with pytest.raises(ParseError):
        parse("sig { pred R/2; } model m { universe 2; R = {0}; }")
    with pytest.raises(ParseError):
        parse("sig { } model m { universe 1; } model m { universe 1; }")


def test_defconst_requires_declared_constant():
    with pytest.raises(ParseError):
        parse("sig { pred M1/1; } defsys { defconst e := d; }")


def test_def_bodies_parse_tolerantly():
    pf = parse("sig { pred M1/1; } defsys { def A(x) := M1(x) & B(x); }")
    rep = validate(pf.system)
    assert not rep.valid
    assert [(v.entry, v.kind, v.symbol) for v in rep.violations] == [
        (0, "forward-reference", "B")
    ]


def test_asserts_are_strict():
    with pytest.raises(ParseError, match="unknown predicate"):
        parse("sig { pred M1/1; } assert B(x);")
    with pytest.raises(ParseError, match="declared /1"):
        parse("sig { pred M1/1; } assert M1(x, x);")


def test_equality_gate():
    with pytest.raises(ParseError, match="equality"):
        parse_formula("x = c", Signature((), ("c",), False))
    f = parse_formula("x = c", Signature((), ("c",), True))
    assert f == Eq(Var("x"), Const("c"))


def test_binder_shadowing_rejected():
    with pytest.raises(ParseError, match="already bound"):
        parse_formula("forall x. exists x. M1(x)", SIG)
    with pytest.raises(ParseError):
        parse_formula("forall c. M1(c)", SIG)
    with pytest.raises(ParseError):
        parse("sig { pred M1/1; } defsys { def A(x, x) := M1(x); }")


def test_duplicate_definition_names_still_parse():
    pf = parse(
        "sig { pred M1/1; } defsys { def A(x) := M1(x); def A(x) := !M1(x); }"
    )
    rep = validate(pf.system)
    assert not rep.valid
    assert [(v.entry, v.kind) for v in rep.violations] == [(1, "name-clash")]


def test_parse_error_position():
    try:
        parse("sig { pred M1/1; }\nassert M1(x,, x);")
    except ParseError as e:
        assert e.line == 2
        assert str(e).startswith("2:")
    else:
        pytest.fail("expected ParseError")


def test_parse_formulas_infer():
    sig, fs = parse_formulas_infer(["R(x, c) & M1(c)", "exists y. R(y, y)"])
    assert sig == Signature((("R", 2), ("M1", 1)), ("x", "c"), False)
    assert fs[0] == And(
        Pred("R", (Const("x"), Const("c"))), Pred("M1", (Const("c"),))
    )
    assert fs[1] == Exists("y", Pred("R", (Var("y"), Var("y"))))
    sig2, fs2 = parse_formulas_infer(["x = y"])
    assert sig2.equality and sig2.constants == ("x", "y")
    with pytest.raises(ParseError, match="arities"):
        parse_formulas_infer(["M1(x) & M1"])
    with pytest.raises(ParseError, match="predicate and term"):
        parse_formulas_infer(["M1(x)", "R(M1, x)"])


def test_parse_path(tmp_path):
    p = tmp_path / "f.pdl"
    p.write_text("sig { pred M1/1; }\nassert forall x. M1(x);\n")
    pf = parse_path(str(p))
    assert pf.asserts == (Forall("x", P("M1", "x")),)


def test_signature_to_dsl_round_trip():
    sig = Signature((("M1", 1), ("R", 2)), ("c",), True)
    assert parse(sig.to_dsl()).signature == sig


def test_model_to_dsl_round_trip():
    pf = parse(FULL)
    m = pf.models["tiny"]
    back = parse(pf.signature.to_dsl() + "\n" + m.to_dsl("tiny", pf.signature))
    assert back.models["tiny"] == m


VARS = ("x", "y", "z")


def _formulas():
    atoms = st.one_of(
        st.just(Verum()),
        st.just(Falsum()),
        st.builds(
            Pred,
            st.sampled_from(("M1", "M2")),
            st.tuples(st.sampled_from([Var(v) for v in VARS] + [Const("c")])),
        ),
    )
    return st.recursive(
        atoms,
        lambda kids: st.one_of(
            st.builds(Not, kids),
            st.builds(And, kids, kids),
            st.builds(Or, kids, kids),
            st.builds(Implies, kids, kids),
            st.builds(Iff, kids, kids),
            st.builds(Forall, st.sampled_from(VARS), kids),
            st.builds(Exists, st.sampled_from(VARS), kids),
        ),
        max_leaves=10,
    )


@settings(max_examples=300)
@given(_formulas())
def test_render_parse_round_trip(f):
    f = rename_apart(f, frozenset(SIG.names()))
    g = parse_formula(render(f), SIG)
    assert parse_formula(render(g), SIG) == g
    m = all_models(SIG.predicates, SIG.constants, 2)[13]
    env = {v: 0 for v in VARS}
    assert naive_eval(f, m, dict(env)) == naive_eval(g, m, dict(env))
