"""The built-in corpus: standard presentations and small algebras used
throughout the test suite, the demos, and `catcom gen`."""

from __future__ import annotations

from .term import App, Presentation, Signature, Var, equation


def _v(i):
    return Var(i)


def empty_theory():
    return Presentation(Signature("empty", {}), ())


def pointed_presentation():
    return Presentation(Signature("pointed", {"pt": 0}), ())


def monoid_presentation(name="monoid", mul="mul", e="e"):
    x1, x2, x3 = _v(1), _v(2), _v(3)
    m = lambda a, b: App(mul, (a, b))
    return Presentation(
        Signature(name, {mul: 2, e: 0}),
        (equation(m(x1, m(x2, x3)), m(m(x1, x2), x3)),
         equation(m(App(e), x1), x1),
         equation(m(x1, App(e)), x1)))


def semilattice_presentation(name="semilattice", join="join"):
    x1, x2, x3 = _v(1), _v(2), _v(3)
    j = lambda a, b: App(join, (a, b))
    return Presentation(
        Signature(name, {join: 2}),
        (equation(j(x1, x1), x1),
         equation(j(x1, x2), j(x2, x1)),
         equation(j(j(x1, x2), x3), j(x1, j(x2, x3)))))


def z2_module_presentation(name="z2vec"):
    """Boolean group: x+y with zero, x+x = 0."""
    x1, x2, x3 = _v(1), _v(2), _v(3)
    a = lambda u, v: App("add", (u, v))
    zero = App("zero")
    return Presentation(
        Signature(name, {"add": 2, "zero": 0}),
        (equation(a(x1, a(x2, x3)), a(a(x1, x2), x3)),
         equation(a(x1, x2), a(x2, x1)),
         equation(a(zero, x1), x1),
         equation(a(x1, x1), zero)))


# -- small algebras, given as (carrier size, {symbol: (arity, table)}) -------


def or_algebra():
    return 2, {"or_": (2, (0, 1, 1, 1))}


def and_or_algebra():
    return 2, {"and_": (2, (0, 0, 0, 1)), "or_": (2, (0, 1, 1, 1))}


def xor_algebra():
    """The two-element Z/2 vector space: xor plus the zero constant."""
    return 2, {"add": (2, (0, 1, 1, 0)), "zero": (0, (0,))}


def not_algebra():
    return 2, {"not_": (1, (1, 0))}
