import itertools

import pytest

from catcom import model
from catcom.term import (
    App, Equation, FinMap, ParseError, Presentation, Proved, Refuted,
    Signature, Unknown, Var, commutation_equation, decide_equal, equation,
    max_var, parse_presentation, parse_term, render_presentation, render_term,
    substitute, term_size,
)
from catcom.theories import monoid_presentation, semilattice_presentation


MONOID_SRC = """
theory m {
  op mul:2; op e:0;
  eq mul(x1,mul(x2,x3)) = mul(mul(x1,x2),x3);
  eq mul(e(),x1) = x1;
  eq mul(x1,e()) = x1;
}
"""

SEMILATTICE_SRC = """
theory sl {
  op join:2;
  eq join(x1,x1)=x1;
  eq join(x1,x2)=join(x2,x1);
  eq join(join(x1,x2),x3)=join(x1,join(x2,x3));
}
"""


def test_parse_monoid_theory():
    p = parse_presentation(MONOID_SRC)
    assert p.signature.operations == {"mul": 2, "e": 0}
    assert len(p.equations) == 3


def test_parse_semilattice():
    p = parse_presentation(SEMILATTICE_SRC)
    assert p.signature.operations == {"join": 2}
    assert len(p.equations) == 3


def test_parse_undeclared_symbol():
    with pytest.raises(ParseError) as exc:
        parse_presentation("theory bad { eq f(x1)=x1; }")
    assert "undeclared" in str(exc.value)


def test_parse_arity_mismatch():
    with pytest.raises(ParseError):
        parse_presentation("theory bad { op f:2; eq f(x1)=x1; }")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse_presentation("theory t {\n  op f:;\n}")
    assert exc.value.line == 2


def test_render_parse_roundtrip():
    p = parse_presentation(MONOID_SRC)
    text = render_presentation(p)
    again = parse_presentation(text)
    assert render_presentation(again) == text
    assert set(again.signature.operations) == set(p.signature.operations)
    assert len(again.equations) == len(p.equations)


def test_renderer_canonical_order():
    text = render_presentation(parse_presentation(MONOID_SRC))
    lines = [l.strip() for l in text.splitlines()]
    assert lines[1].startswith("op e") and lines[2].startswith("op mul")


def test_substitute_examples():
    mul = parse_term("mul(x1,x2)")
    assert substitute(mul, [App("e"), Var(1)]) == parse_term("mul(e(),x1)")
    t = parse_term("join(x1,join(x2,x3))")
    assert substitute(Var(1), [t]) == t
    join = parse_term("join(x1,x2)")
    assert substitute(join, [join, Var(3)]) == parse_term("join(join(x1,x2),x3)")


def test_substitute_length_mismatch():
    with pytest.raises(ValueError):
        substitute(parse_term("mul(x1,x2)"), [Var(1)])


def _all_terms(size, var_count, budget=None):
    """All join-terms of exactly the given size over var_count variables."""
    if size == 0:
        return [Var(i) for i in range(1, var_count + 1)]
    out = []
    for left in range(size):
        for a in _all_terms(left, var_count):
            for b in _all_terms(size - 1 - left, var_count):
                out.append(App("join", (a, b)))
    return out


def test_substitute_associativity_exhaustive():
    # substitute(substitute(f,gs),hs) = substitute(f,[substitute(g,hs)]):
    # total over all join-terms of size <= 1 on 2 variables, then a
    # deterministic sweep with f up to size 5 over 3 variables.
    pool1 = [t for s in range(2) for t in _all_terms(s, 2)]
    for f in pool1:
        for gs in itertools.product(pool1, repeat=2):
            for hs in itertools.product(pool1, repeat=2):
                lhs = substitute(substitute(f, gs), hs)
                rhs = substitute(f, [substitute(g, hs) for g in gs])
                assert lhs == rhs
    pool5 = [t for s in range(6) for t in _all_terms(s, 3)]
    args = [t for s in range(2) for t in _all_terms(s, 3)]
    triples = list(itertools.product(args, repeat=3))
    for i, f in enumerate(pool5):
        gs = triples[i % len(triples)]
        hs = triples[(i * 7 + 3) % len(triples)]
        assert substitute(substitute(f, gs), hs) == \
            substitute(f, [substitute(g, hs) for g in gs])


def test_term_size_counts_app_nodes():
    assert term_size(Var(3)) == 0
    assert term_size(parse_term("mul(e(),mul(x1,x2))")) == 3


def test_commutation_equation_join_join():
    join = parse_term("join(x1,x2)")
    eq = commutation_equation(join, join)
    assert eq.var_count == 4
    assert eq.lhs == parse_term("join(join(x1,x2),join(x3,x4))")
    assert eq.rhs == parse_term("join(join(x1,x3),join(x2,x4))")


def test_commutation_equation_projection_sides_identical():
    join = parse_term("join(x1,x2)")
    eq = commutation_equation(Var(1), join, f_arity=1, g_arity=2)
    assert eq.lhs == eq.rhs  # projections commute syntactically


def test_commutation_equation_constants():
    eq = commutation_equation(App("c"), App("d"), f_arity=0, g_arity=0)
    assert eq.var_count == 0
    assert eq.lhs == App("c") and eq.rhs == App("d")


def test_commutation_equation_mixed_nullary():
    # n = 2, m = 0: binary against a constant
    mul = parse_term("mul(x1,x2)")
    eq = commutation_equation(mul, App("e"), f_arity=2, g_arity=0)
    assert eq.var_count == 0
    assert eq.lhs == parse_term("mul(e(),e())")
    assert eq.rhs == App("e")


def test_finmap_basics():
    u = FinMap(2, 3, (1, 2))
    v = FinMap(3, 2, (0, 0, 1))
    assert v.compose(u).values == (0, 1)
    assert FinMap.identity(3).is_bijective
    assert not v.is_bijective
    with pytest.raises(ValueError):
        FinMap(2, 2, (0, 2))


def test_decide_equal_axiom_instance():
    mon = monoid_presentation()
    eq = equation(parse_term("mul(x1,mul(x2,x3))"), parse_term("mul(mul(x1,x2),x3)"))
    verdict = decide_equal(mon, eq, depth_bound=2, model_bound=2)
    assert isinstance(verdict, Proved)
    assert verdict.certificate.universe_size > 0


def test_decide_equal_commutativity_refuted():
    mon = monoid_presentation()
    eq = equation(parse_term("mul(x1,x2)"), parse_term("mul(x2,x1)"))
    verdict = decide_equal(mon, eq, depth_bound=2, model_bound=6)
    assert isinstance(verdict, Refuted)
    # the minimum noncommutative monoid has three elements
    assert verdict.model.k == 3
    a = model.evaluate_term(verdict.model, eq.lhs, verdict.assignment)
    b = model.evaluate_term(verdict.model, eq.rhs, verdict.assignment)
    assert a != b


def _free_semilattice_eval(t):
    if isinstance(t, Var):
        return frozenset([t.index])
    return frozenset().union(*(_free_semilattice_eval(a) for a in t.args))


def test_semilattice_commutation_proved():
    sl = semilattice_presentation()
    join = parse_term("join(x1,x2)")
    eq = commutation_equation(join, join)
    # oracle: both sides take the same value in the free semilattice
    assert _free_semilattice_eval(eq.lhs) == _free_semilattice_eval(eq.rhs) \
        == frozenset([1, 2, 3, 4])
    # proved at depth 3; by universe monotonicity any depth >= 3 (so >= 5) proves too
    verdict = decide_equal(sl, eq, depth_bound=3, model_bound=1)
    assert isinstance(verdict, Proved)


def test_decide_equal_unknown_with_diagnostics():
    mon = monoid_presentation()
    # x1 = x2 never holds, but k=1 models cannot refute it
    eq = Equation(Var(1), Var(2), 2)
    verdict = decide_equal(mon, eq, depth_bound=1, model_bound=1)
    assert isinstance(verdict, Unknown)
    assert "depth" in verdict.diagnostics


def test_decide_equal_refuted_reverifies():
    mon = monoid_presentation()
    eq = Equation(Var(1), Var(2), 2)
    verdict = decide_equal(mon, eq, depth_bound=1, model_bound=2)
    assert isinstance(verdict, Refuted)
    assert (model.evaluate_term(verdict.model, eq.lhs, verdict.assignment)
            != model.evaluate_term(verdict.model, eq.rhs, verdict.assignment))


def test_proved_and_refuted_never_both():
    # monotone sanity on a handful of handmade equations
    mon = monoid_presentation()
    cases = [
        equation(parse_term("mul(x1,e())"), Var(1)),
        equation(parse_term("mul(x1,x2)"), parse_term("mul(x2,x1)")),
        equation(parse_term("mul(e(),e())"), App("e")),
        equation(parse_term("mul(mul(x1,x1),x1)"), parse_term("mul(x1,mul(x1,x1))")),
    ]
    for eq in cases:
        outcomes = set()
        for depth, mb in [(1, 1), (2, 2), (3, 3)]:
            v = decide_equal(mon, eq, depth_bound=depth, model_bound=mb)
            outcomes.add(type(v).__name__)
        assert not ({"Proved", "Refuted"} <= outcomes), (eq, outcomes)
