"""Syntax layer: signatures, terms, equations, presentations.

Also houses the two workhorses everything downstream leans on:

* ``commutation_equation`` -- the interchange identity for a pair of
  operations, with the row-major variable flattening
  x_ij |-> x_{(i-1)*m + j} fixed once and for all; and
* ``decide_equal`` -- a sound three-valued equality check for the free
  theory of a presentation (bounded congruence closure for proofs,
  finite-model search for refutations).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._lex import ParseError, TokenStream, tokenize

__all__ = [
    "Term", "Var", "App", "Signature", "Equation", "Presentation", "FinMap",
    "ParseError", "ResourceCeiling", "parse_presentation", "parse_term",
    "render_term", "render_presentation", "substitute", "commutation_equation",
    "decide_equal", "Proved", "Refuted", "Unknown", "ProofCertificate",
    "max_var", "term_size", "check_term", "equation",
]


class ResourceCeiling(Exception):
    """An enumeration grew past its configured ceiling."""


# ---------------------------------------------------------------------------
# terms


class Term:
    """A first-order term: either Var(i) or App(sym, args)."""


@dataclass(frozen=True)
class Var(Term):
    index: int  # 1-based

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"variable index must be positive, got {self.index}")

    def __repr__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App(Term):
    sym: str
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __repr__(self):
        return render_term(self)


def max_var(t):
    """Largest variable index occurring in t (0 if none)."""
    if isinstance(t, Var):
        return t.index
    return max((max_var(a) for a in t.args), default=0)


def term_size(t):
    """Number of App nodes (the size metric bounded by decide_equal)."""
    if isinstance(t, Var):
        return 0
    return 1 + sum(term_size(a) for a in t.args)


def subterms(t):
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def term_vars(t):
    if isinstance(t, Var):
        yield t.index
    else:
        for a in t.args:
            yield from term_vars(a)


# ---------------------------------------------------------------------------
# signatures, equations, presentations


def _is_var_syntax(name):
    return len(name) > 1 and name[0] == "x" and name[1:].isdigit()


@dataclass(frozen=True, eq=False)
class Signature:
    name: str
    operations: dict  # symbol -> arity, in declaration order

    def __post_init__(self):
        for sym, arity in self.operations.items():
            if not sym or sym[0].isdigit() or not all(c.isalnum() or c == "_" for c in sym):
                raise ValueError(f"bad operation symbol {sym!r}")
            if _is_var_syntax(sym):
                raise ValueError(f"operation symbol {sym!r} clashes with variable syntax")
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"arity of {sym} must be a non-negative integer")

    def arity(self, sym):
        try:
            return self.operations[sym]
        except KeyError:
            raise ValueError(f"undeclared symbol {sym!r}") from None

    def __eq__(self, other):
        return (isinstance(other, Signature) and self.name == other.name
                and self.operations == other.operations)


def check_term(sig, t):
    """Raise if t uses a symbol not declared in sig or with the wrong arity."""
    if isinstance(t, Var):
        return
    declared = sig.arity(t.sym)
    if declared != len(t.args):
        raise ValueError(
            f"symbol {t.sym!r} declared with arity {declared}, applied to {len(t.args)} arguments")
    for a in t.args:
        check_term(sig, a)


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term
    var_count: int

    def __post_init__(self):
        if self.var_count < 0:
            raise ValueError("var_count must be non-negative")
        worst = max(max_var(self.lhs), max_var(self.rhs))
        if worst > self.var_count:
            raise ValueError(f"equation uses x{worst} but var_count is {self.var_count}")

    def __repr__(self):
        return f"{render_term(self.lhs)} = {render_term(self.rhs)}"


def equation(lhs, rhs, var_count=None):
    if var_count is None:
        var_count = max(max_var(lhs), max_var(rhs))
    return Equation(lhs, rhs, var_count)


@dataclass(frozen=True, eq=False)
class Presentation:
    signature: Signature
    equations: tuple

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        for eq in self.equations:
            check_term(self.signature, eq.lhs)
            check_term(self.signature, eq.rhs)

    @property
    def name(self):
        return self.signature.name

    def __eq__(self, other):
        return (isinstance(other, Presentation)
                and self.signature == other.signature
                and self.equations == other.equations)


# ---------------------------------------------------------------------------
# substitution and the commutation identity


def substitute(outer, args):
    """Simultaneously replace Var(i) in outer by args[i-1]."""
    args = tuple(args)
    worst = max_var(outer)
    if worst > len(args):
        raise ValueError(f"term uses x{worst} but only {len(args)} arguments supplied")

    def go(t):
        if isinstance(t, Var):
            return args[t.index - 1]
        return App(t.sym, tuple(go(a) for a in t.args))

    return go(outer)


def commutation_equation(f, g, f_arity=None, g_arity=None):
    """The interchange identity for f (n-ary) against g (m-ary).

    Variables x_ij (1 <= i <= n, 1 <= j <= m) are flattened row-major to
    x_{(i-1)*m + j}.  Left side: f applied to the rows of g; right side:
    g applied to the columns of f.  Arities default to the largest
    variable index used; pass them explicitly for operations with unused
    arguments.  n = 0 or m = 0 degenerates to constant-vs-constants.
    """
    n = max_var(f) if f_arity is None else f_arity
    m = max_var(g) if g_arity is None else g_arity
    if n < max_var(f) or m < max_var(g):
        raise ValueError("declared arity smaller than a used variable index")
    lhs = substitute(f, [
        substitute(g, [Var((i - 1) * m + j) for j in range(1, m + 1)])
        for i in range(1, n + 1)])
    rhs = substitute(g, [
        substitute(f, [Var((i - 1) * m + j) for i in range(1, n + 1)])
        for j in range(1, m + 1)])
    return Equation(lhs, rhs, n * m)


# ---------------------------------------------------------------------------
# finite maps (arrows of the skeleton of finite sets)


@dataclass(frozen=True)
class FinMap:
    """A function {0..domain-1} -> {0..codomain-1}, tabulated."""

    domain: int
    codomain: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.domain:
            raise ValueError("FinMap value list length differs from domain")
        for v in self.values:
            if not 0 <= v < self.codomain:
                raise ValueError(f"FinMap value {v} outside 0..{self.codomain - 1}")

    def __call__(self, i):
        return self.values[i]

    def compose(self, other):
        """self o other (apply other first)."""
        if other.codomain != self.domain:
            raise ValueError("FinMap composition domain mismatch")
        return FinMap(other.domain, self.codomain,
                      tuple(self.values[v] for v in other.values))

    @property
    def is_bijective(self):
        return self.domain == self.codomain and len(set(self.values)) == self.domain

    @staticmethod
    def identity(n):
        return FinMap(n, n, tuple(range(n)))


# ---------------------------------------------------------------------------
# parsing and rendering


def _parse_term(ts):
    tok = ts.peek()
    if tok.kind != "ident":
        ts.error(f"expected a term, found {tok.text or 'end of input'!r}")
    name = ts.next().text
    if _is_var_syntax(name):
        index = int(name[1:])
        if index < 1 or name[1] == "0":
            raise ParseError(f"bad variable {name!r}: indices are 1-based without leading zeros",
                             tok.line, tok.col)
        return Var(index)
    ts.expect("(")
    args = []
    if not ts.at(")"):
        args.append(_parse_term(ts))
        while ts.accept(","):
            args.append(_parse_term(ts))
    ts.expect(")")
    return App(name, tuple(args))


def parse_term(text):
    ts = TokenStream(tokenize(text))
    t = _parse_term(ts)
    ts.expect_eof()
    return t


def parse_presentation(text):
    """Parse the theory file grammar into a Presentation."""
    ts = TokenStream(tokenize(text))
    kw = ts.expect_kind("ident")
    if kw.text != "theory":
        raise ParseError(f"expected 'theory', found {kw.text!r}", kw.line, kw.col)
    name = ts.expect_ident()
    ts.expect("{")
    ops = {}
    raw_eqs = []
    while not ts.at("}"):
        item = ts.expect_kind("ident")
        if item.text == "op":
            sym_tok = ts.expect_kind("ident")
            sym = sym_tok.text
            if sym in ops:
                raise ParseError(f"duplicate operation {sym!r}", sym_tok.line, sym_tok.col)
            if _is_var_syntax(sym):
                raise ParseError(f"operation symbol {sym!r} clashes with variable syntax",
                                 sym_tok.line, sym_tok.col)
            ts.expect(":")
            ops[sym] = ts.expect_nat()
            ts.expect(";")
        elif item.text == "eq":
            pos = ts.peek()
            lhs = _parse_term(ts)
            ts.expect("=")
            rhs = _parse_term(ts)
            ts.expect(";")
            raw_eqs.append((lhs, rhs, pos))
        else:
            raise ParseError(f"expected 'op' or 'eq', found {item.text!r}",
                             item.line, item.col)
    ts.expect("}")
    ts.expect_eof()
    sig = Signature(name, ops)
    eqs = []
    for lhs, rhs, pos in raw_eqs:
        try:
            check_term(sig, lhs)
            check_term(sig, rhs)
        except ValueError as exc:
            raise ParseError(str(exc), pos.line, pos.col) from None
        eqs.append(equation(lhs, rhs))
    return Presentation(sig, tuple(eqs))


def render_term(t):
    if isinstance(t, Var):
        return f"x{t.index}"
    return f"{t.sym}({','.join(render_term(a) for a in t.args)})"


def render_presentation(pres):
    """Canonical form: one item per line, ops before eqs, each sorted."""
    lines = [f"theory {pres.name} {{"]
    for sym in sorted(pres.signature.operations):
        lines.append(f"  op {sym}:{pres.signature.operations[sym]};")
    for eq in sorted(pres.equations, key=lambda e: (render_term(e.lhs), render_term(e.rhs))):
        lines.append(f"  eq {render_term(eq.lhs)} = {render_term(eq.rhs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# sound equality check


@dataclass(frozen=True)
class ProofCertificate:
    depth_bound: int
    universe_size: int
    merges: tuple  # (reason, left term, right term) in derivation order


@dataclass(frozen=True)
class Proved:
    certificate: ProofCertificate


@dataclass(frozen=True)
class Refuted:
    model: object  # catcom.model.FiniteModel
    assignment: tuple


@dataclass(frozen=True)
class Unknown:
    diagnostics: str = ""


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def _compositions(total, parts):
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _term_universe(sig, var_count, depth_bound, ceiling):
    by_size = {0: [Var(i) for i in range(1, var_count + 1)]}
    total = var_count
    for size in range(1, depth_bound + 1):
        bucket = []
        for sym, r in sig.operations.items():
            if r == 0:
                if size == 1:
                    bucket.append(App(sym))
                continue
            for parts in _compositions(size - 1, r):
                pools = [by_size[p] for p in parts]
                if any(not pool for pool in pools):
                    continue
                for combo in itertools.product(*pools):
                    bucket.append(App(sym, combo))
                if total + len(bucket) > ceiling:
                    raise ResourceCeiling(
                        f"term universe ceiling {ceiling} exceeded at size {size}")
        total += len(bucket)
        by_size[size] = bucket
    out = []
    for size in range(depth_bound + 1):
        out.extend(by_size[size])
    return out


def _match(pattern, t, binding):
    """Extend binding (var index -> term) so that pattern[binding] == t."""
    if isinstance(pattern, Var):
        seen = binding.get(pattern.index)
        if seen is None:
            binding[pattern.index] = t
            return True
        return seen == t
    if isinstance(t, Var) or t.sym != pattern.sym or len(t.args) != len(pattern.args):
        return False
    return all(_match(p, a, binding) for p, a in zip(pattern.args, t.args))


def _apply_binding(t, binding):
    if isinstance(t, Var):
        return binding[t.index]
    return App(t.sym, tuple(_apply_binding(a, binding) for a in t.args))


_UNBOUND_CAP = 50_000


def _bounded_congruence(pres, eq, depth_bound, ceiling):
    universe = _term_universe(pres.signature, eq.var_count, depth_bound, ceiling)
    ids = {}
    for t in universe:
        ids.setdefault(t, len(ids))
    for side in (eq.lhs, eq.rhs):
        for s in subterms(side):
            ids.setdefault(s, len(ids))
    terms = [None] * len(ids)
    for t, i in ids.items():
        terms[i] = t
    uf = _UnionFind(len(ids))
    merges = []

    apps = [t for t in terms if isinstance(t, App)]
    by_sym = {}
    for t in apps:
        by_sym.setdefault(t.sym, []).append(t)

    def axiom_pass():
        hits = 0
        for axiom in pres.equations:
            for pattern, other in ((axiom.lhs, axiom.rhs), (axiom.rhs, axiom.lhs)):
                candidates = terms if isinstance(pattern, Var) else by_sym.get(pattern.sym, ())
                other_vars = sorted(set(term_vars(other)))
                for t in candidates:
                    binding = {}
                    if not _match(pattern, t, binding):
                        continue
                    unbound = [v for v in other_vars if v not in binding]
                    if unbound:
                        if len(terms) ** len(unbound) > _UNBOUND_CAP:
                            continue
                        fillings = itertools.product(terms, repeat=len(unbound))
                    else:
                        fillings = (() ,)
                    for filling in fillings:
                        full = binding if not unbound else {**binding, **dict(zip(unbound, filling))}
                        inst = _apply_binding(other, full)
                        j = ids.get(inst)
                        if j is not None and uf.union(ids[t], j):
                            merges.append(("axiom", t, inst))
                            hits += 1
        return hits

    def congruence_pass():
        hits = 0
        sigtable = {}
        for t in apps:
            key = (t.sym, tuple(uf.find(ids[a]) for a in t.args))
            rep = sigtable.get(key)
            if rep is None:
                sigtable[key] = t
            elif uf.union(ids[t], ids[rep]):
                merges.append(("congruence", t, rep))
                hits += 1
        return hits

    while True:
        if axiom_pass() + congruence_pass() == 0:
            break

    proved = uf.find(ids[eq.lhs]) == uf.find(ids[eq.rhs])
    cert = ProofCertificate(depth_bound, len(ids), tuple(merges))
    return proved, cert


def decide_equal(pres, eq, depth_bound=5, model_bound=4, term_ceiling=200_000):
    """Sound three-valued equality in the free theory of pres.

    Proved only via a congruence-closure derivation over all terms of
    size <= depth_bound (size = number of App nodes) on eq's variables;
    Refuted only with a concrete countermodel of size <= model_bound
    plus a distinguishing assignment (lowest size first, lexicographically
    first model, lexicographically first assignment); Unknown otherwise.
    """
    if depth_bound < 1 or model_bound < 1:
        raise ValueError("bounds must be >= 1")
    check_term(pres.signature, eq.lhs)
    check_term(pres.signature, eq.rhs)
    diagnostics = []
    try:
        proved, cert = _bounded_congruence(pres, eq, depth_bound, term_ceiling)
        if proved:
            return Proved(cert)
        diagnostics.append(f"no proof in universe of {cert.universe_size} terms"
                           f" at depth {depth_bound}")
    except ResourceCeiling as exc:
        diagnostics.append(f"resource ceiling: {exc}")

    from . import model as _model  # model depends on term; import here to avoid a cycle
    for k in range(1, model_bound + 1):
        for m in _model.iter_models(pres, k):
            for assignment in itertools.product(range(k), repeat=eq.var_count):
                if (_model.evaluate_term(m, eq.lhs, assignment)
                        != _model.evaluate_term(m, eq.rhs, assignment)):
                    return Refuted(m, assignment)
    diagnostics.append(f"no countermodel up to size {model_bound}")
    return Unknown("; ".join(diagnostics))
