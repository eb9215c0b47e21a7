"""Constructions: coproducts and commuting tensors of presentations,
plus the one-object Set case (finite monoids, commuting cospans,
centralizers, the universal property of the commuting tensor) and the
graded q-commutativity example.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._lex import ParseError, TokenStream, tokenize
from .term import App, Equation, Presentation, Signature, Var, commutation_equation

__all__ = [
    "coproduct_presentation", "coproduct_with_renaming",
    "commuting_tensor_presentation", "commuting_tensor_with_renaming",
    "FiniteMonoid", "MonoidMap", "parse_monoid", "render_monoid",
    "monoid_cospan_commutes", "monoid_centralizer", "monoid_centre",
    "monoid_homs", "enumerate_monoids", "monoids_up_to_iso", "product_monoid",
    "monoid_tensor_universal_check", "UniversalityReport",
    "cyclic_monoid", "symmetric_group_monoid",
    "GradedAlgebra", "parse_graded", "graded_q_cospan_commutes", "quantum_plane",
]


# ---------------------------------------------------------------------------
# presentation-level constructions


def _rename_term(t, mapping):
    if isinstance(t, Var):
        return t
    return App(mapping[t.sym], tuple(_rename_term(a, mapping) for a in t.args))


def _rename_presentation(pres, mapping, name):
    ops = {mapping[s]: a for s, a in pres.signature.operations.items()}
    eqs = tuple(Equation(_rename_term(e.lhs, mapping), _rename_term(e.rhs, mapping), e.var_count)
                for e in pres.equations)
    return Presentation(Signature(name, ops), eqs)


def coproduct_with_renaming(S, T, name=None):
    """Disjoint union of signatures and equations.

    Clashing symbols are suffixed _1 (left) and _2 (right); the two
    returned dicts map original symbols to their names in the coproduct.
    """
    clashes = set(S.signature.operations) & set(T.signature.operations)
    ren_s = {s: (s + "_1" if s in clashes else s) for s in S.signature.operations}
    ren_t = {s: (s + "_2" if s in clashes else s) for s in T.signature.operations}
    if len(set(ren_s.values()) | set(ren_t.values())) != len(ren_s) + len(ren_t):
        raise ValueError("symbol renaming collided; rename the inputs")
    name = name or f"{S.name}_plus_{T.name}"
    ops = {}
    for old, new in ren_s.items():
        ops[new] = S.signature.operations[old]
    for old, new in ren_t.items():
        ops[new] = T.signature.operations[old]
    eqs = []
    for e in S.equations:
        eqs.append(Equation(_rename_term(e.lhs, ren_s), _rename_term(e.rhs, ren_s), e.var_count))
    for e in T.equations:
        eqs.append(Equation(_rename_term(e.lhs, ren_t), _rename_term(e.rhs, ren_t), e.var_count))
    return Presentation(Signature(name, ops), tuple(eqs)), ren_s, ren_t


def coproduct_presentation(S, T, name=None):
    return coproduct_with_renaming(S, T, name)[0]


def _generic_app(sym, arity):
    return App(sym, tuple(Var(i) for i in range(1, arity + 1)))


def commuting_tensor_with_renaming(S, T, name=None):
    """Coproduct plus one interchange equation per pair of generators."""
    name = name or f"{S.name}_tensor_{T.name}"
    U, ren_s, ren_t = coproduct_with_renaming(S, T, name)
    eqs = list(U.equations)
    for s_old, n in S.signature.operations.items():
        for t_old, m in T.signature.operations.items():
            f = _generic_app(ren_s[s_old], n)
            g = _generic_app(ren_t[t_old], m)
            eqs.append(commutation_equation(f, g, f_arity=n, g_arity=m))
    return Presentation(U.signature, tuple(eqs)), ren_s, ren_t


def commuting_tensor_presentation(S, T, name=None):
    return commuting_tensor_with_renaming(S, T, name)[0]


# ---------------------------------------------------------------------------
# finite monoids


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    """Multiplication table on {0..k-1} with a two-sided unit.

    `labels` optionally names the carrier in some ambient monoid (used
    by submonoids such as centralizers).
    """

    k: int
    table: tuple  # row-major, table[a*k + b] = a*b
    unit: int
    labels: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if self.k < 1:
            raise ValueError("a monoid has at least its unit")
        if len(self.table) != self.k * self.k:
            raise ValueError("multiplication table has the wrong size")
        if any(not 0 <= v < self.k for v in self.table):
            raise ValueError("multiplication table leaves the carrier")
        if not 0 <= self.unit < self.k:
            raise ValueError("unit outside the carrier")
        e, k = self.unit, self.k
        for a in range(k):
            if self.table[e * k + a] != a or self.table[a * k + e] != a:
                raise ValueError(f"unit law fails at {a}")
        for a in range(k):
            for b in range(k):
                ab = self.table[a * k + b]
                for c in range(k):
                    if self.table[ab * k + c] != self.table[a * k + self.table[b * k + c]]:
                        raise ValueError(f"associativity fails at ({a},{b},{c})")

    def mul(self, a, b):
        return self.table[a * self.k + b]

    def is_commutative(self):
        return all(self.mul(a, b) == self.mul(b, a)
                   for a in range(self.k) for b in range(self.k))

    def canonical_form(self):
        """Lexicographically least (unit, table) over all relabelings."""
        best = None
        for perm in itertools.permutations(range(self.k)):
            table = tuple(perm[self.mul(a, b)]
                          for a in _inverse(perm) for b in _inverse(perm))
            key = (perm[self.unit], table)
            if best is None or key < best:
                best = key
        return best

    def __eq__(self, other):
        return (isinstance(other, FiniteMonoid) and self.k == other.k
                and self.table == other.table and self.unit == other.unit)

    def __hash__(self):
        return hash((self.k, self.table, self.unit))

    def __repr__(self):
        return f"FiniteMonoid(k={self.k}, unit={self.unit})"


def _inverse(perm):
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return inv


@dataclass(frozen=True, eq=False)
class MonoidMap:
    source: FiniteMonoid
    target: FiniteMonoid
    mapping: tuple

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        f = self.mapping
        if len(f) != self.source.k:
            raise ValueError("mapping length differs from the source carrier")
        if f[self.source.unit] != self.target.unit:
            raise ValueError("map does not preserve the unit")
        for a in range(self.source.k):
            for b in range(self.source.k):
                if f[self.source.mul(a, b)] != self.target.mul(f[a], f[b]):
                    raise ValueError(f"map does not preserve multiplication at ({a},{b})")

    def __call__(self, a):
        return self.mapping[a]

    def __eq__(self, other):
        return (isinstance(other, MonoidMap) and self.source == other.source
                and self.target == other.target and self.mapping == other.mapping)


def identity_map(M):
    return MonoidMap(M, M, tuple(range(M.k)))


def monoid_homs(A, C):
    """All monoid maps A -> C, lexicographically by mapping."""
    out = []
    for mapping in itertools.product(range(C.k), repeat=A.k):
        if mapping[A.unit] != C.unit:
            continue
        if all(mapping[A.mul(a, b)] == C.mul(mapping[a], mapping[b])
               for a in range(A.k) for b in range(A.k)):
            out.append(MonoidMap(A, C, mapping))
    return out


def monoid_cospan_commutes(f, g):
    """Do the images of f and g commute elementwise in the common target?"""
    if f.target != g.target:
        raise ValueError("cospan legs must share a codomain")
    C = f.target
    for a in range(f.source.k):
        for b in range(g.source.k):
            if C.mul(f(a), g(b)) != C.mul(g(b), f(a)):
                return False
    return True


def cospan_witness(f, g):
    C = f.target
    for a in range(f.source.k):
        for b in range(g.source.k):
            if C.mul(f(a), g(b)) != C.mul(g(b), f(a)):
                return (a, b)
    return None


def monoid_centralizer(f):
    """The submonoid {m in target : m f(n) = f(n) m for all n}.

    Carrier labels record the chosen elements of the ambient monoid.
    """
    M = f.target
    image = sorted(set(f.mapping))
    elems = [m for m in range(M.k)
             if all(M.mul(m, x) == M.mul(x, m) for x in image)]
    pos = {m: i for i, m in enumerate(elems)}
    table = tuple(pos[M.mul(a, b)] for a in elems for b in elems)
    return FiniteMonoid(len(elems), table, pos[M.unit], labels=tuple(elems))


def monoid_centre(M):
    """Centralizer of the identity map."""
    return monoid_centralizer(identity_map(M))


def product_monoid(A, B):
    """A x B with the coordinatewise table, plus the two injections."""
    k = A.k * B.k
    idx = lambda a, b: a * B.k + b
    table = tuple(idx(A.mul(a1, a2), B.mul(b1, b2))
                  for a1 in range(A.k) for b1 in range(B.k)
                  for a2 in range(A.k) for b2 in range(B.k))
    P = FiniteMonoid(k, table, idx(A.unit, B.unit))
    inj_a = MonoidMap(A, P, tuple(idx(a, B.unit) for a in range(A.k)))
    inj_b = MonoidMap(B, P, tuple(idx(A.unit, b) for b in range(B.k)))
    return P, inj_a, inj_b


def enumerate_monoids(k):
    """All labeled monoid structures on {0..k-1}."""
    from . import model as _model
    from .theories import monoid_presentation
    out = []
    for m in _model.iter_models(monoid_presentation(), k):
        out.append(FiniteMonoid(k, m.interpretation["mul"], m.interpretation["e"][0]))
    return out


def monoids_up_to_iso(k):
    """One representative per isomorphism class of monoids of order k."""
    seen = {}
    for M in enumerate_monoids(k):
        seen.setdefault(M.canonical_form(), M)
    return [seen[c] for c in sorted(seen)]


@dataclass(frozen=True)
class UniversalityReport:
    probes: int
    cospans_tested: int
    failures: tuple  # human-readable descriptions
    generated_by_injections: bool

    @property
    def ok(self):
        return not self.failures and self.generated_by_injections


def monoid_tensor_universal_check(A, B, probe_bound=4, probes=None):
    """Check that A x B has the universal property of the commuting tensor.

    Every commuting cospan (f, g) into a probe monoid C must factor
    through A x B via (a, b) |-> f(a) g(b); uniqueness of the
    factorisation is forced because every (a, b) equals
    inj_A(a) * inj_B(b), which this check verifies explicitly.
    """
    if probe_bound < 1:
        raise ValueError("probe_bound must be >= 1")
    P, inj_a, inj_b = product_monoid(A, B)
    generated = all(
        P.mul(inj_a(a), inj_b(b)) == a * B.k + b
        for a in range(A.k) for b in range(B.k))
    if probes is None:
        probes = [C for size in range(1, probe_bound + 1)
                  for C in enumerate_monoids(size)]
    failures = []
    tested = 0
    for C in probes:
        homs_a = monoid_homs(A, C)
        homs_b = monoid_homs(B, C)
        for f in homs_a:
            for g in homs_b:
                if not monoid_cospan_commutes(f, g):
                    continue
                tested += 1
                mapping = tuple(C.mul(f(a), g(b))
                                for a in range(A.k) for b in range(B.k))
                try:
                    h = MonoidMap(P, C, mapping)
                except ValueError as exc:
                    failures.append(f"cospan {f.mapping}/{g.mapping} into C={C.table}: {exc}")
                    continue
                if any(h(inj_a(a)) != f(a) for a in range(A.k)) or \
                   any(h(inj_b(b)) != g(b) for b in range(B.k)):
                    failures.append(
                        f"factorisation of {f.mapping}/{g.mapping} misses the injections")
    return UniversalityReport(len(probes), tested, tuple(failures), generated)


def cyclic_monoid(n):
    """(Z/n, +, 0)."""
    return FiniteMonoid(n, tuple((a + b) % n for a in range(n) for b in range(n)), 0)


def symmetric_group_monoid(n):
    """S_n as a monoid; elements are permutations of 0..n-1 in lex order."""
    perms = sorted(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    table = tuple(pos[tuple(p[q[i]] for i in range(n))]
                  for p in perms for q in perms)
    return FiniteMonoid(len(perms), table, pos[tuple(range(n))])


# ---------------------------------------------------------------------------
# monoid files


def parse_monoid(text):
    """`monoid IDENT { carrier NAT; unit NAT; table = [v,...]; }`"""
    ts = TokenStream(tokenize(text))
    kw = ts.expect_kind("ident")
    if kw.text != "monoid":
        raise ParseError(f"expected 'monoid', found {kw.text!r}", kw.line, kw.col)
    ts.expect_ident()
    ts.expect("{")
    carrier = unit = table = None
    while not ts.at("}"):
        field = ts.expect_ident()
        if field == "carrier":
            carrier = ts.expect_nat()
        elif field == "unit":
            unit = ts.expect_nat()
        elif field == "table":
            ts.expect("=")
            ts.expect("[")
            table = []
            if not ts.at("]"):
                table.append(ts.expect_nat())
                while ts.accept(","):
                    table.append(ts.expect_nat())
            ts.expect("]")
        else:
            ts.error(f"unknown monoid field {field!r}")
        ts.expect(";")
    ts.expect("}")
    ts.expect_eof()
    if carrier is None or unit is None or table is None:
        raise ParseError("monoid file needs carrier, unit and table")
    try:
        return FiniteMonoid(carrier, tuple(table), unit)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def render_monoid(M, name="m"):
    vals = ",".join(str(v) for v in M.table)
    return (f"monoid {name} {{\n  carrier {M.k};\n  unit {M.unit};\n"
            f"  table = [{vals}];\n}}\n")


# ---------------------------------------------------------------------------
# graded q-commutativity


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """A graded algebra over F_p truncated above grade D.

    Vectors are coefficient tuples over the basis; products that land
    above grade D are zero.  The braiding scalar q controls the
    commutation rule under test.
    """

    p: int
    q: int
    bound: int  # top grade D
    basis: tuple  # (name, grade) pairs
    mul_table: dict  # (i, j) -> coefficient vector
    unit: tuple

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, self.p)):
            raise ValueError("modulus must be prime")
        if not 0 < self.q % self.p:
            raise ValueError("q must be nonzero in the field")
        object.__setattr__(self, "q", self.q % self.p)
        n = len(self.basis)
        for (i, j), vec in self.mul_table.items():
            if len(vec) != n:
                raise ValueError("structure-constant vector has the wrong length")
            g = self.basis[i][1] + self.basis[j][1]
            for b, coeff in enumerate(vec):
                if coeff % self.p and (g > self.bound or self.basis[b][1] != g):
                    raise ValueError(
                        f"product {self.basis[i][0]}*{self.basis[j][0]} violates the grading")
        for i in range(n):
            for j in range(n):
                if (i, j) not in self.mul_table:
                    raise ValueError("multiplication table is not total on the basis")
        if self.grade_of(self.unit) != 0:
            raise ValueError("unit must be homogeneous of grade 0")
        for i in range(n):
            e = self.basis_vector(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise ValueError(f"unit law fails on basis element {self.basis[i][0]}")
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    lhs = self.mul(self.mul(self.basis_vector(i), self.basis_vector(j)),
                                   self.basis_vector(l))
                    rhs = self.mul(self.basis_vector(i),
                                   self.mul(self.basis_vector(j), self.basis_vector(l)))
                    if lhs != rhs:
                        raise ValueError(f"associativity fails on basis triple ({i},{j},{l})")

    def zero(self):
        return (0,) * len(self.basis)

    def basis_vector(self, i):
        return tuple(1 if j == i else 0 for j in range(len(self.basis)))

    def element(self, coeffs):
        """Vector from a {basis name: coefficient} dict."""
        names = [b[0] for b in self.basis]
        return tuple(coeffs.get(nm, 0) % self.p for nm in names)

    def scale(self, c, v):
        return tuple((c * x) % self.p for x in v)

    def add(self, u, v):
        return tuple((x + y) % self.p for x, y in zip(u, v))

    def mul(self, u, v):
        out = self.zero()
        for i, x in enumerate(u):
            if not x % self.p:
                continue
            for j, y in enumerate(v):
                if not y % self.p:
                    continue
                out = self.add(out, self.scale(x * y, self.mul_table[(i, j)]))
        return out

    def grade_of(self, v):
        """The grade of a homogeneous vector, None for 0 or mixed."""
        grades = {self.basis[i][1] for i, x in enumerate(v) if x % self.p}
        if len(grades) != 1:
            return None
        return grades.pop()


def graded_q_cospan_commutes(C, f_image, g_image):
    """The two one-sided q-commutation verdicts for homogeneous elements.

    left:  f g = q^{rs} (g f);  right:  g f = q^{rs} (f g).
    The two genuinely differ when q is not +-1.
    """
    r = C.grade_of(f_image)
    s = C.grade_of(g_image)
    if r is None or s is None:
        raise ValueError("q-commutation test needs homogeneous nonzero inputs")
    if r + s > C.bound:
        raise ValueError(f"product grade {r + s} exceeds the truncation bound {C.bound}")
    scalar = pow(C.q, r * s, C.p)
    fg = C.mul(f_image, g_image)
    gf = C.mul(g_image, f_image)
    left = fg == C.scale(scalar, gf)
    right = gf == C.scale(scalar, fg)
    return left, right


def quantum_plane(p=5, q=2):
    """Truncated quantum plane: basis 1, x, y, xy with y x = q (x y)."""
    basis = (("one", 0), ("x", 1), ("y", 1), ("xy", 2))
    z = (0, 0, 0, 0)
    unit = (1, 0, 0, 0)
    mul = {}
    vecs = {"one": unit, "x": (0, 1, 0, 0), "y": (0, 0, 1, 0), "xy": (0, 0, 0, 1)}
    for i, (ni, gi) in enumerate(basis):
        for j, (nj, gj) in enumerate(basis):
            if ni == "one":
                mul[(i, j)] = vecs[nj]
            elif nj == "one":
                mul[(i, j)] = vecs[ni]
            elif (ni, nj) == ("x", "y"):
                mul[(i, j)] = vecs["xy"]
            elif (ni, nj) == ("y", "x"):
                mul[(i, j)] = tuple((q * c) % p for c in vecs["xy"])
            else:
                mul[(i, j)] = z  # x^2, y^2, and anything above grade 2
    return GradedAlgebra(p, q, 2, basis, mul, unit)


def parse_graded(text):
    """`graded IDENT { p NAT; q NAT; D NAT; basis id:grade,...;
    mul id*id = c1*id1 + c2*id2; ... }`  Missing products default to 0."""
    ts = TokenStream(tokenize(text))
    kw = ts.expect_kind("ident")
    if kw.text != "graded":
        raise ParseError(f"expected 'graded', found {kw.text!r}", kw.line, kw.col)
    ts.expect_ident()
    ts.expect("{")
    p = q = bound = None
    basis = []
    raw_mul = {}
    while not ts.at("}"):
        field = ts.expect_ident()
        if field == "p":
            p = ts.expect_nat()
        elif field == "q":
            q = ts.expect_nat()
        elif field == "D":
            bound = ts.expect_nat()
        elif field == "basis":
            while True:
                name = ts.expect_ident()
                ts.expect(":")
                basis.append((name, ts.expect_nat()))
                if not ts.accept(","):
                    break
        elif field == "mul":
            a = ts.expect_ident()
            ts.expect("*")
            b = ts.expect_ident()
            ts.expect("=")
            terms = []
            if ts.at("0"):
                ts.next()
            else:
                coeff = ts.expect_nat()
                ts.expect("*")
                terms.append((coeff, ts.expect_ident()))
                while ts.accept("+"):
                    coeff = ts.expect_nat()
                    ts.expect("*")
                    terms.append((coeff, ts.expect_ident()))
            raw_mul[(a, b)] = terms
        else:
            ts.error(f"unknown graded field {field!r}")
        ts.expect(";")
    ts.expect("}")
    ts.expect_eof()
    if p is None or q is None or bound is None or not basis:
        raise ParseError("graded file needs p, q, D and a basis")
    names = [b[0] for b in basis]
    index = {nm: i for i, nm in enumerate(names)}
    unit_candidates = [i for i, (_, g) in enumerate(basis) if g == 0]
    if not unit_candidates:
        raise ParseError("graded file needs a grade-0 basis element for the unit")
    unit = tuple(1 if i == unit_candidates[0] else 0 for i in range(len(basis)))
    u0 = unit_candidates[0]
    mul = {}
    for i, ni in enumerate(names):
        for j, nj in enumerate(names):
            vec = [0] * len(basis)
            if (ni, nj) in raw_mul:
                for coeff, nm in raw_mul[(ni, nj)]:
                    if nm not in index:
                        raise ParseError(f"unknown basis element {nm!r}")
                    vec[index[nm]] = (vec[index[nm]] + coeff) % p
            elif i == u0:
                vec[j] = 1
            elif j == u0:
                vec[i] = 1
            mul[(i, j)] = tuple(vec)
    try:
        return GradedAlgebra(p, q, bound, tuple(basis), mul, unit)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
