"""Symmetric set-operads, truncated by arity.

Conventions, fixed once:

* permutations are 0-based tuples p with p[i] the image of i, and the
  group law is diagrammatic: (p then q) = q o p;
* the right action satisfies act(act(x, p), q) = act(x, p then q); for
  the associative operad, whose n-ary part is the set of words
  (position -> input), act(w, p) = p o w;
* gamma(f; g_1..g_k) consumes inputs blockwise in input order, so its
  result arity is the sum of the argument arities, row-major.

The theory functor realises each truncated operad as a clone whose
elements are orbits of (operation, variable-assignment) pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._lex import ParseError, TokenStream, tokenize
from .clone import ArityBoundError, CloneTruncation, Op, transpose_perm
from .term import App, Presentation, ResourceCeiling, Signature, Var, equation

__all__ = [
    "OpdElem", "SymOperadTruncation", "validate_operad", "OperadReport",
    "operad_compose", "operad_act", "operad_pair_commutes",
    "theory_of_operad", "OperadClone",
    "OperadTerm", "Leaf", "Node", "OperadPresentation", "OperadAlgebra",
    "bv_tensor_presentation", "enumerate_operad_algebras",
    "interchanging_algebra_pairs", "presentation_of_operad",
    "ass_truncation", "com_truncation",
    "ass_presentation", "ass_unital_presentation", "com_presentation",
    "trivial_presentation", "parse_operad_truncation", "parse_operad_presentation",
    "perm_then", "perm_inverse",
]


def perm_then(p, q):
    """Diagrammatic composite: first p, then q."""
    return tuple(q[v] for v in p)


def perm_inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


@dataclass(frozen=True)
class OpdElem:
    """Handle to an operad element: arity and position in O(arity)."""
    arity: int
    index: int


class SymOperadTruncation:
    """Species with S_n-actions, a unit, and partial composition tables."""

    def __init__(self, sizes, unit_index, act_table, gamma_table,
                 name="operad", labels=None):
        self.name = name
        self.bound = len(sizes) - 1
        self.sizes = list(sizes)
        if self.bound < 1 or not 0 <= unit_index < sizes[1]:
            raise ValueError("an operad truncation needs a unit in O(1)")
        self.unit = OpdElem(1, unit_index)
        self._act = dict(act_table)      # (n, idx, perm) -> idx
        self._gamma = dict(gamma_table)  # (k, idx, ((m1, i1), ...)) -> idx
        self.labels = labels or {}

    def size(self, n):
        if n > self.bound:
            raise ArityBoundError(f"arity {n} exceeds the operad bound {self.bound}")
        return self.sizes[n]

    def elements(self, n):
        return [OpdElem(n, i) for i in range(self.size(n))]

    def act(self, x, perm):
        if len(perm) != x.arity:
            raise ValueError("permutation length differs from the element arity")
        key = (x.arity, x.index, tuple(perm))
        if key not in self._act:
            raise ValueError(f"action table has no entry for {key}")
        return OpdElem(x.arity, self._act[key])

    def gamma(self, f, gs):
        if len(gs) != f.arity:
            raise ValueError(f"gamma into a {f.arity}-ary element needs {f.arity} arguments")
        total = sum(g.arity for g in gs)
        if total > self.bound:
            raise ArityBoundError(
                f"composite arity {total} exceeds the operad bound {self.bound}")
        key = (f.arity, f.index, tuple((g.arity, g.index) for g in gs))
        if key not in self._gamma:
            raise ValueError(f"gamma table has no entry for {key}")
        return OpdElem(total, self._gamma[key])

    def label(self, x):
        return self.labels.get((x.arity, x.index), f"{x.arity}#{x.index}")


def operad_compose(O, f, gs):
    """gamma(f; gs)."""
    return O.gamma(f, list(gs))


def operad_act(O, x, perm):
    return O.act(x, perm)


# ---------------------------------------------------------------------------
# block bookkeeping shared by the laws


def _offsets(sizes):
    out = [0]
    for s in sizes:
        out.append(out[-1] + s)
    return out


def _relabel_perm(pi, sizes):
    """The bijection aligning gamma(f.pi; g) with gamma(f; g permuted).

    sizes are the argument arities in original input order; the result B
    satisfies B(off'_j + t) = off_{pi(j)} + t where off' comes from the
    permuted sizes (sizes[pi(0)], sizes[pi(1)], ...).
    """
    k = len(pi)
    off = _offsets(sizes)
    permuted = [sizes[pi[j]] for j in range(k)]
    offp = _offsets(permuted)
    vals = [0] * sum(sizes)
    for j in range(k):
        for t in range(permuted[j]):
            vals[offp[j] + t] = off[pi[j]] + t
    return tuple(vals)


def _direct_sum(perms):
    vals = []
    off = 0
    for p in perms:
        vals.extend(off + v for v in p)
        off += len(p)
    return tuple(vals)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class OperadReport:
    failures: tuple
    instances: int

    @property
    def passed(self):
        return not self.failures


def _arity_profiles(k, total_bound):
    """All tuples of k arities with bounded sum."""
    if k == 0:
        yield ()
        return
    for first in range(total_bound + 1):
        for rest in _arity_profiles(k - 1, total_bound - first):
            yield (first,) + rest


def validate_operad(O, instance_cap=500_000):
    """Exhaustively check action laws, unit laws, associativity and the
    two equivariance axioms within the truncation bound."""
    failures = []
    count = 0

    def fail(law, witness):
        if len(failures) < 32:
            failures.append((law, witness))

    K = O.bound

    # group action laws
    for n in range(K + 1):
        for x in O.elements(n):
            ident = tuple(range(n))
            count += 1
            if O.act(x, ident) != x:
                fail("action-identity", f"O({n})#{x.index}")
            for p in itertools.permutations(range(n)):
                for q in itertools.permutations(range(n)):
                    count += 1
                    if O.act(O.act(x, p), q) != O.act(x, perm_then(p, q)):
                        fail("action-composition", f"O({n})#{x.index} p={p} q={q}")

    # unit laws
    for n in range(K + 1):
        for x in O.elements(n):
            count += 1
            if O.gamma(O.unit, [x]) != x:
                fail("left-unit", f"O({n})#{x.index}")
            if n and O.gamma(x, [O.unit] * n) != x:
                fail("right-unit", f"O({n})#{x.index}")

    # equivariance
    for k in range(K + 1):
        for ms in _arity_profiles(k, K):
            for f in O.elements(k):
                for gs in itertools.product(*[O.elements(m) for m in ms]):
                    base = O.gamma(f, list(gs))
                    for pi in itertools.permutations(range(k)):
                        count += 1
                        left = O.gamma(O.act(f, pi), list(gs))
                        permuted = [gs[pi[j]] for j in range(k)]
                        right = O.act(O.gamma(f, permuted), _relabel_perm(pi, ms))
                        if left != right:
                            fail("equivariance-outer", f"k={k} ms={ms} pi={pi}")
                    for rhos in itertools.product(
                            *[list(itertools.permutations(range(m))) for m in ms]):
                        count += 1
                        left = O.gamma(f, [O.act(g, r) for g, r in zip(gs, rhos)])
                        right = O.act(base, _direct_sum(rhos))
                        if left != right:
                            fail("equivariance-inner", f"k={k} ms={ms} rhos={rhos}")

    # associativity: gamma(gamma(f; g); h) = gamma(f; gamma(g_i; h_i));
    # the deepest enumeration, so the instance cap lands here last
    for k in range(K + 1):
        for ms in _arity_profiles(k, K):
            for ls_all in _arity_profiles(sum(ms), K):
                off = _offsets(ms)
                for f in O.elements(k):
                    for gs in itertools.product(*[O.elements(m) for m in ms]):
                        for hs in itertools.product(*[O.elements(l) for l in ls_all]):
                            count += 1
                            if count > instance_cap:
                                return OperadReport(tuple(failures), count)
                            left = O.gamma(O.gamma(f, list(gs)), list(hs))
                            inner = [O.gamma(g, list(hs[off[i]:off[i + 1]]))
                                     for i, g in enumerate(gs)]
                            right = O.gamma(f, inner)
                            if left != right:
                                fail("gamma-associativity",
                                     f"k={k} ms={ms} ls={ls_all}")
    return OperadReport(tuple(failures), count)


# ---------------------------------------------------------------------------
# pairwise commutation and the theory functor


def operad_pair_commutes(O, psi, phi):
    """gamma(psi; phi..phi) against gamma(phi; psi..psi) transported along
    the row-major transpose of an n-by-m grid."""
    n, m = psi.arity, phi.arity
    if n * m > O.bound:
        raise ArityBoundError(f"pair needs arity {n * m} > operad bound {O.bound}")
    lhs = O.gamma(psi, [phi] * n)
    rhs = O.gamma(phi, [psi] * m)
    return lhs == O.act(rhs, transpose_perm(n, m).values) if n * m else lhs == rhs


class OperadClone(CloneTruncation):
    """The clone of an operad truncation: elements are orbits of pairs
    (operation x in O(k), variable assignment [k] -> [n])."""

    def __init__(self, O, N):
        self.operad = O
        self.bound = N
        self.name = f"theory({O.name})"
        self._elems = []   # per arity: list of canonical (k, x_idx, a tuple)
        self._pos = []
        for p in range(N + 1):
            seen = {}
            for k in range(O.bound + 1):
                for x in O.elements(k):
                    for a in itertools.product(range(p), repeat=k):
                        rep = self._canon(x, a)
                        if rep not in seen:
                            seen[rep] = len(seen)
            elems = sorted(seen, key=seen.get)
            self._elems.append(elems)
            self._pos.append({rep: i for i, rep in enumerate(elems)})

    def _canon(self, x, a):
        k = x.arity
        best = None
        for pi in itertools.permutations(range(k)):
            y = self.operad.act(x, pi)
            inv = perm_inverse(pi)
            b = tuple(a[inv[c]] for c in range(k))
            cand = (k, y.index, b)
            if best is None or cand < best:
                best = cand
        return best

    def _wrap(self, p, rep):
        return Op(p, self._pos[p][rep])

    def size(self, n):
        self._check_arity(n)
        return len(self._elems[n])

    def rep(self, f):
        return self._elems[f.arity][f.index]

    def payload(self, f):
        k, xi, a = self.rep(f)
        return (self.operad.label(OpdElem(k, xi)), a)

    def unit(self, n, i):
        self._check_arity(n)
        return self._wrap(n, self._canon(self.operad.unit, (i,)))

    def from_operad(self, x):
        """Th(x): the orbit of x with the identity variable assignment."""
        if x.arity > self.bound:
            raise ArityBoundError(f"arity {x.arity} exceeds the clone bound {self.bound}")
        return self._wrap(x.arity, self._canon(x, tuple(range(x.arity))))

    def act(self, u, f):
        if u.domain != f.arity:
            raise ValueError("renaming domain differs from the element arity")
        self._check_arity(u.codomain)
        k, xi, a = self.rep(f)
        return self._wrap(u.codomain,
                          self._canon(OpdElem(k, xi), tuple(u(v) for v in a)))

    def subst(self, f, gs):
        n = f.arity
        if len(gs) != n:
            raise ValueError(f"substitution into a {n}-ary element needs {n} arguments")
        if n == 0:
            return f
        m = gs[0].arity
        if any(g.arity != m for g in gs):
            raise ValueError("substitution arguments must share an arity")
        self._check_arity(m)
        k, xi, a = self.rep(f)
        parts = [self.rep(g) for g in gs]
        args = [OpdElem(parts[a[c]][0], parts[a[c]][1]) for c in range(k)]
        total = sum(x.arity for x in args)
        if total > self.operad.bound:
            raise ArityBoundError(
                f"substitution needs operad arity {total} > bound {self.operad.bound}"
                " (insufficient truncation)")
        composite = self.operad.gamma(OpdElem(k, xi), args)
        assignment = []
        for c in range(k):
            assignment.extend(parts[a[c]][2])
        return self._wrap(m, self._canon(composite, tuple(assignment)))


def theory_of_operad(O, N):
    """Tabulated clone of the operad truncation: T(n) is the set of
    orbits of (operation, assignment) pairs, substitution via gamma."""
    if N < 1:
        raise ValueError("clone bound must be >= 1")
    return OperadClone(O, N)


# ---------------------------------------------------------------------------
# built-in truncations


def com_truncation(K=4):
    """The terminal operad: one operation per arity."""
    sizes = [1] * (K + 1)
    act = {}
    gamma = {}
    for n in range(K + 1):
        for p in itertools.permutations(range(n)):
            act[(n, 0, p)] = 0
    for k in range(K + 1):
        for ms in _arity_profiles(k, K):
            gamma[(k, 0, tuple((m, 0) for m in ms))] = 0
    return SymOperadTruncation(sizes, 0, act, gamma, name="Com",
                               labels={(n, 0): f"c{n}" for n in range(K + 1)})


def ass_truncation(K=4):
    """The associative operad: O(n) = S_n as words (position -> input)."""
    words = [sorted(itertools.permutations(range(n))) for n in range(K + 1)]
    pos = [{w: i for i, w in enumerate(ws)} for ws in words]
    sizes = [len(ws) for ws in words]
    act = {}
    for n in range(K + 1):
        for w in words[n]:
            for p in itertools.permutations(range(n)):
                act[(n, pos[n][w], p)] = pos[n][tuple(p[v] for v in w)]
    gamma = {}
    for k in range(K + 1):
        for ms in _arity_profiles(k, K):
            off = _offsets(ms)
            for f in words[k]:
                for gs in itertools.product(*[words[m] for m in ms]):
                    out = []
                    for s in range(k):
                        i = f[s]
                        out.extend(off[i] + v for v in gs[i])
                    key = (k, pos[k][f], tuple((ms[i], pos[ms[i]][gs[i]])
                                               for i in range(k)))
                    gamma[key] = pos[sum(ms)][tuple(out)]
    labels = {(n, i): "".join(str(v + 1) for v in w) or "()"
              for n in range(K + 1) for i, w in enumerate(words[n])
              for w in [words[n][i]]}
    return SymOperadTruncation(sizes, 0, act, gamma, name="Ass", labels=labels)


# ---------------------------------------------------------------------------
# operad presentations (generators and relations)


class OperadTerm:
    """A tree over generators with numbered leaves."""


@dataclass(frozen=True)
class Leaf(OperadTerm):
    label: int  # 1-based input slot

    def __repr__(self):
        return str(self.label)


@dataclass(frozen=True)
class Node(OperadTerm):
    gen: str
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def __repr__(self):
        return f"{self.gen}({','.join(map(repr, self.children))})"


def _leaves(t):
    if isinstance(t, Leaf):
        yield t.label
    else:
        for c in t.children:
            yield from _leaves(c)


def _relabel(t, mapping):
    if isinstance(t, Leaf):
        return Leaf(mapping[t.label])
    return Node(t.gen, tuple(_relabel(c, mapping) for c in t.children))


def _check_operad_term(gens, t):
    if isinstance(t, Leaf):
        return
    if t.gen not in gens:
        raise ValueError(f"undeclared generator {t.gen!r}")
    if gens[t.gen] != len(t.children):
        raise ValueError(f"generator {t.gen!r} has arity {gens[t.gen]},"
                         f" applied to {len(t.children)} arguments")
    for c in t.children:
        _check_operad_term(gens, c)


@dataclass(frozen=True, eq=False)
class OperadPresentation:
    name: str
    generators: dict  # name -> arity
    relations: tuple  # (lhs, rhs) pairs of OperadTerms

    def __post_init__(self):
        for lhs, rhs in self.relations:
            _check_operad_term(self.generators, lhs)
            _check_operad_term(self.generators, rhs)
            ll, rl = sorted(_leaves(lhs)), sorted(_leaves(rhs))
            n = len(ll)
            if ll != list(range(1, n + 1)) or rl != list(range(1, n + 1)):
                raise ValueError(
                    f"relation leaves must be permutations of 1..n: {lhs!r} = {rhs!r}")

    def __eq__(self, other):
        return (isinstance(other, OperadPresentation) and self.name == other.name
                and self.generators == other.generators
                and self.relations == other.relations)


def trivial_presentation():
    return OperadPresentation("trivial", {}, ())


def ass_presentation():
    m = lambda a, b: Node("m", (a, b))
    l = Leaf
    return OperadPresentation(
        "ass", {"m": 2},
        ((m(m(l(1), l(2)), l(3)), m(l(1), m(l(2), l(3)))),))


def ass_unital_presentation():
    m = lambda a, b: Node("m", (a, b))
    e = Node("e")
    l = Leaf
    return OperadPresentation(
        "ass_unital", {"m": 2, "e": 0},
        ((m(m(l(1), l(2)), l(3)), m(l(1), m(l(2), l(3)))),
         (m(e, l(1)), l(1)),
         (m(l(1), e), l(1))))


def com_presentation():
    m = lambda a, b: Node("m", (a, b))
    e = Node("e")
    l = Leaf
    return OperadPresentation(
        "com", {"m": 2, "e": 0},
        ((m(m(l(1), l(2)), l(3)), m(l(1), m(l(2), l(3)))),
         (m(l(1), l(2)), m(l(2), l(1))),
         (m(e, l(1)), l(1))))


def bv_tensor_presentation(P1, P2, name=None):
    """Disjoint union plus psi(phi,..,phi) = phi(psi,..,psi) transposed,
    one relation per generator pair, with row-major leaf numbering."""
    clashes = set(P1.generators) & set(P2.generators)
    r1 = {g: (g + "_1" if g in clashes else g) for g in P1.generators}
    r2 = {g: (g + "_2" if g in clashes else g) for g in P2.generators}
    gens = {}
    for old, new in r1.items():
        gens[new] = P1.generators[old]
    for old, new in r2.items():
        gens[new] = P2.generators[old]

    def rename(t, ren):
        if isinstance(t, Leaf):
            return t
        return Node(ren[t.gen], tuple(rename(c, ren) for c in t.children))

    rels = [(rename(l, r1), rename(r, r1)) for l, r in P1.relations]
    rels += [(rename(l, r2), rename(r, r2)) for l, r in P2.relations]
    for g1, n in [(r1[g], P1.generators[g]) for g in P1.generators]:
        for g2, m in [(r2[g], P2.generators[g]) for g in P2.generators]:
            lhs = Node(g1, tuple(
                Node(g2, tuple(Leaf(i * m + j) for j in range(1, m + 1)))
                for i in range(n)))
            rhs = Node(g2, tuple(
                Node(g1, tuple(Leaf((i - 1) * m + j) for i in range(1, n + 1)))
                for j in range(1, m + 1)))
            rels.append((lhs, rhs))
    return OperadPresentation(name or f"{P1.name}_bv_{P2.name}", gens, tuple(rels))


def presentation_of_operad(P):
    """The algebraic-theory presentation with the same models."""
    def to_term(t):
        if isinstance(t, Leaf):
            return Var(t.label)
        return App(t.gen, tuple(to_term(c) for c in t.children))

    sig = Signature(P.name, dict(P.generators))
    eqs = tuple(equation(to_term(l), to_term(r)) for l, r in P.relations)
    return Presentation(sig, eqs)


@dataclass(frozen=True, eq=False)
class OperadAlgebra:
    presentation: OperadPresentation
    k: int
    tables: dict  # generator -> row-major tuple

    def __eq__(self, other):
        return (isinstance(other, OperadAlgebra) and self.k == other.k
                and self.presentation == other.presentation
                and self.tables == other.tables)

    def __hash__(self):
        return hash((self.k, tuple(sorted(self.tables.items()))))


def enumerate_operad_algebras(P, k, ceiling=10 ** 12):
    """All interpretations of the generators satisfying the relations."""
    from . import model as _model
    pres = presentation_of_operad(P)
    out = []
    for m in _model.iter_models(pres, k, ceiling):
        out.append(OperadAlgebra(P, k, dict(m.interpretation)))
    return out


def interchanging_algebra_pairs(P1, P2, k, ceiling=10 ** 12):
    """Pairs of algebras on a shared carrier whose generators satisfy the
    interchange relation pointwise."""
    from .clone import tables_commute
    algs1 = enumerate_operad_algebras(P1, k, ceiling)
    algs2 = enumerate_operad_algebras(P2, k, ceiling)
    out = []
    for a1 in algs1:
        for a2 in algs2:
            good = all(
                tables_commute(a1.tables[g1], P1.generators[g1],
                               a2.tables[g2], P2.generators[g2], k)
                for g1 in P1.generators for g2 in P2.generators)
            if good:
                out.append((a1, a2))
    return out


# ---------------------------------------------------------------------------
# file formats


def parse_operad_presentation(text):
    """`operad_pres IDENT { gen IDENT:NAT; rel term = term [. perm(..)]; }`"""
    ts = TokenStream(tokenize(text))
    kw = ts.expect_kind("ident")
    if kw.text != "operad_pres":
        raise ParseError(f"expected 'operad_pres', found {kw.text!r}", kw.line, kw.col)
    name = ts.expect_ident()
    ts.expect("{")
    gens = {}
    rels = []

    def parse_tree():
        tok = ts.peek()
        if tok.kind == "nat":
            ts.next()
            return Leaf(int(tok.text))
        gen = ts.expect_ident()
        ts.expect("(")
        children = []
        if not ts.at(")"):
            children.append(parse_tree())
            while ts.accept(","):
                children.append(parse_tree())
        ts.expect(")")
        return Node(gen, tuple(children))

    while not ts.at("}"):
        item = ts.expect_kind("ident")
        if item.text == "gen":
            g = ts.expect_ident()
            ts.expect(":")
            gens[g] = ts.expect_nat()
        elif item.text == "rel":
            lhs = parse_tree()
            ts.expect("=")
            rhs = parse_tree()
            if ts.accept("."):
                perm_kw = ts.expect_ident()
                if perm_kw != "perm":
                    ts.error("expected 'perm' after '.'")
                ts.expect("(")
                vals = [ts.expect_nat()]
                while ts.accept(","):
                    vals.append(ts.expect_nat())
                ts.expect(")")
                mapping = {j + 1: vals[j] for j in range(len(vals))}
                rhs = _relabel(rhs, mapping)
            rels.append((lhs, rhs))
        else:
            ts.error(f"expected 'gen' or 'rel', found {item.text!r}")
        ts.expect(";")
    ts.expect("}")
    ts.expect_eof()
    try:
        return OperadPresentation(name, gens, tuple(rels))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_operad_truncation(text):
    """Explicit element lists, action tables and gamma tables:

    operad IDENT { bound NAT; elems NAT : a, b; unit id;
                   act a . perm(2,1) = b; gamma a (b, c) = d; }
    Missing action entries default where the permutation is the identity.
    """
    ts = TokenStream(tokenize(text))
    kw = ts.expect_kind("ident")
    if kw.text != "operad":
        raise ParseError(f"expected 'operad', found {kw.text!r}", kw.line, kw.col)
    name = ts.expect_ident()
    ts.expect("{")
    bound = None
    names = {}   # name -> (arity, index)
    per_arity = {}
    unit_name = None
    raw_act = []
    raw_gamma = []
    while not ts.at("}"):
        item = ts.expect_kind("ident")
        if item.text == "bound":
            bound = ts.expect_nat()
        elif item.text == "elems":
            n = ts.expect_nat()
            ts.expect(":")
            row = per_arity.setdefault(n, [])
            while True:
                nm = ts.expect_ident()
                if nm in names:
                    ts.error(f"duplicate element name {nm!r}")
                names[nm] = (n, len(row))
                row.append(nm)
                if not ts.accept(","):
                    break
        elif item.text == "unit":
            unit_name = ts.expect_ident()
        elif item.text == "act":
            a = ts.expect_ident()
            ts.expect(".")
            pk = ts.expect_ident()
            if pk != "perm":
                ts.error("expected 'perm'")
            ts.expect("(")
            vals = []
            if not ts.at(")"):
                vals.append(ts.expect_nat())
                while ts.accept(","):
                    vals.append(ts.expect_nat())
            ts.expect(")")
            ts.expect("=")
            b = ts.expect_ident()
            raw_act.append((a, tuple(v - 1 for v in vals), b))
        elif item.text == "gamma":
            f = ts.expect_ident()
            ts.expect("(")
            args = []
            if not ts.at(")"):
                args.append(ts.expect_ident())
                while ts.accept(","):
                    args.append(ts.expect_ident())
            ts.expect(")")
            ts.expect("=")
            out = ts.expect_ident()
            raw_gamma.append((f, tuple(args), out))
        else:
            ts.error(f"unknown operad field {item.text!r}")
        ts.expect(";")
    ts.expect("}")
    ts.expect_eof()
    if bound is None or unit_name is None:
        raise ParseError("operad file needs bound and unit")
    sizes = [len(per_arity.get(n, [])) for n in range(bound + 1)]
    if unit_name not in names or names[unit_name][0] != 1:
        raise ParseError("unit must be a declared 1-ary element")
    act = {}
    for nm, (n, i) in names.items():
        act[(n, i, tuple(range(n)))] = i
    for a, perm, b in raw_act:
        if a not in names or b not in names:
            raise ParseError(f"unknown element in act {a!r}/{b!r}")
        n, i = names[a]
        if sorted(perm) != list(range(n)):
            raise ParseError(f"act on {a!r} needs a permutation of 1..{n}")
        act[(n, i, perm)] = names[b][1]
    gamma = {}
    for f, args, out in raw_gamma:
        if f not in names or out not in names or any(a not in names for a in args):
            raise ParseError(f"unknown element in gamma {f!r}")
        k, fi = names[f]
        if len(args) != k:
            raise ParseError(f"gamma into {f!r} needs {k} arguments")
        key = (k, fi, tuple(names[a] for a in args))
        key = (k, fi, tuple((names[a][0], names[a][1]) for a in args))
        gamma[key] = names[out][1]
    labels = {(n, i): nm for nm, (n, i) in names.items()}
    try:
        return SymOperadTruncation(sizes, names[unit_name][1], act, gamma,
                                   name=name, labels=labels)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
