"""Semantic layer: tabulated algebraic theories (clone truncations).

A clone truncation stores, for each arity n <= N, a finite set of
operations together with projection units, renaming actions along
finite maps, and substitution.  Two commutativity checkers live here:

* ``op_commutes``        -- the elementary interchange formula, written
  directly: f applied to the rows of g against g applied to the
  columns of f;
* ``op_commutes_duoidal``-- the same question answered through the
  sigma/tau comparison families, tabulated once per clone.

The two must agree everywhere; the test suite also checks both against
pointwise evaluation of concrete function tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._lex import ParseError, TokenStream, tokenize
from .term import FinMap, ResourceCeiling, Signature

__all__ = [
    "Op", "CloneTruncation", "FunctionClone", "TableClone", "FiniteAlgebra",
    "ArityBoundError", "clone_of_algebra", "validate_clone", "CloneReport",
    "clone_substitute", "op_commutes", "op_commutes_duoidal",
    "sigma_tau_families", "ClassifiedFamily", "family_naturality_failures",
    "is_commutative_clone", "CommutativityVerdict", "duoid_structure",
    "DuoidData", "DuoidStructureResult", "centralizer_clone",
    "row_embedding", "col_embedding", "transpose_perm", "commuting_witness",
    "tables_commute", "parse_algebra", "render_algebra", "render_clone",
    "projection_table", "tabulate",
]


class ArityBoundError(ValueError):
    """A request needs an arity beyond the truncation bound."""


@dataclass(frozen=True)
class Op:
    """Handle to a clone element: its arity and its position in T(arity)."""
    arity: int
    index: int


def _index(args, k):
    idx = 0
    for a in args:
        idx = idx * k + a
    return idx


def projection_table(k, n, i):
    """Table of the i-th n-ary projection on a k-element carrier (0-based)."""
    return tuple(args[i] for args in itertools.product(range(k), repeat=n))


def row_embedding(i, n, m):
    """The finite map m -> n*m picking row i of an n-by-m grid (row-major)."""
    return FinMap(m, n * m, tuple(i * m + j for j in range(m)))


def col_embedding(j, n, m):
    """The finite map n -> n*m picking column j of an n-by-m grid."""
    return FinMap(n, n * m, tuple(i * m + j for i in range(n)))


def transpose_perm(n, m):
    """The bijection n*m -> n*m carrying row-major (n,m) reading to
    row-major (m,n) reading: position (i,j) moves to (j,i)."""
    values = [0] * (n * m)
    for i in range(n):
        for j in range(m):
            values[i * m + j] = j * n + i
    return FinMap(n * m, n * m, tuple(values))


# ---------------------------------------------------------------------------
# clone truncations


class CloneTruncation:
    """Interface: sizes, units, substitution and renaming, up to a bound."""

    bound: int
    name: str

    def size(self, n):
        raise NotImplementedError

    def elements(self, n):
        return [Op(n, i) for i in range(self.size(n))]

    def unit(self, n, i):
        """The projection pi_{i+1} in T(n) (0-based i)."""
        raise NotImplementedError

    def subst(self, f, gs):
        raise NotImplementedError

    def act(self, u, f):
        raise NotImplementedError

    def payload(self, f):
        """A printable identity for the element (table or label)."""
        raise NotImplementedError

    def _check_arity(self, n):
        if n > self.bound:
            raise ArityBoundError(f"arity {n} exceeds the truncation bound {self.bound}")


class FunctionClone(CloneTruncation):
    """A clone whose elements are function tables carrier^n -> carrier."""

    def __init__(self, k, tables_by_arity, name="clone"):
        self.k = k
        self.name = name
        self.bound = len(tables_by_arity) - 1
        self._tables = [list(ts) for ts in tables_by_arity]
        self._pos = [{t: i for i, t in enumerate(ts)} for ts in self._tables]
        self._units = []
        for n in range(self.bound + 1):
            row = []
            for i in range(n):
                pi = projection_table(k, n, i)
                if pi not in self._pos[n]:
                    raise ValueError(f"projection {i} missing from T({n})")
                row.append(self._pos[n][pi])
            self._units.append(row)

    def size(self, n):
        self._check_arity(n)
        return len(self._tables[n])

    def unit(self, n, i):
        self._check_arity(n)
        return Op(n, self._units[n][i])

    def payload(self, f):
        return self._tables[f.arity][f.index]

    def _lookup(self, n, table):
        pos = self._pos[n].get(table)
        if pos is None:
            raise ValueError(f"clone is not closed: missing {n}-ary table {table}")
        return Op(n, pos)

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
        ft = self._tables[n][f.index]
        gts = [self._tables[m][g.index] for g in gs]
        k = self.k
        size = k ** m
        out = tuple(ft[_index(tuple(gt[idx] for gt in gts), k)] for idx in range(size))
        return self._lookup(m, out)

    def act(self, u, f):
        if u.domain != f.arity:
            raise ValueError("renaming domain differs from the element arity")
        self._check_arity(u.codomain)
        ft = self._tables[f.arity][f.index]
        k = self.k
        out = tuple(ft[_index(tuple(args[v] for v in u.values), k)]
                    for args in itertools.product(range(k), repeat=u.codomain))
        return self._lookup(u.codomain, out)


class TableClone(CloneTruncation):
    """An abstract clone given by explicit substitution and action tables."""

    def __init__(self, sizes, units, subst_table, act_table, name="table-clone",
                 labels=None):
        self.name = name
        self.bound = len(sizes) - 1
        self._sizes = list(sizes)
        self._units = [list(row) for row in units]
        self._subst = dict(subst_table)  # (n, f, m, gs tuple) -> index
        self._act = dict(act_table)      # (dom, cod, values, f) -> index
        self._labels = labels or {}

    def size(self, n):
        self._check_arity(n)
        return self._sizes[n]

    def unit(self, n, i):
        self._check_arity(n)
        return Op(n, self._units[n][i])

    def payload(self, f):
        return self._labels.get((f.arity, f.index), (f.arity, f.index))

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
        key = (n, f.index, m, tuple(g.index for g in gs))
        if key not in self._subst:
            raise ValueError(f"substitution table has no entry for {key}")
        return Op(m, self._subst[key])

    def act(self, u, f):
        if u.domain != f.arity:
            raise ValueError("renaming domain differs from the element arity")
        self._check_arity(u.codomain)
        key = (u.domain, u.codomain, u.values, f.index)
        if key not in self._act:
            raise ValueError(f"action table has no entry for {key}")
        return Op(u.codomain, self._act[key])


def tabulate(c, name=None):
    """Freeze any clone truncation into an explicit TableClone."""
    sizes = [c.size(n) for n in range(c.bound + 1)]
    units = [[c.unit(n, i).index for i in range(n)] for n in range(c.bound + 1)]
    subst_table = {}
    for n in range(c.bound + 1):
        for m in range(c.bound + 1):
            for f in c.elements(n):
                for gs in itertools.product(c.elements(m), repeat=n):
                    if n == 0:
                        continue
                    key = (n, f.index, m, tuple(g.index for g in gs))
                    subst_table[key] = c.subst(f, list(gs)).index
    act_table = {}
    for n in range(c.bound + 1):
        for m in range(c.bound + 1):
            for values in itertools.product(range(m), repeat=n):
                u = FinMap(n, m, values)
                for f in c.elements(n):
                    act_table[(n, m, values, f.index)] = c.act(u, f).index
    labels = {}
    for n in range(c.bound + 1):
        for f in c.elements(n):
            labels[(n, f.index)] = c.payload(f)
    return TableClone(sizes, units, subst_table, act_table,
                      name=name or f"{c.name}-tabulated", labels=labels)


# ---------------------------------------------------------------------------
# finite algebras and their clones


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    k: int
    signature: Signature
    tables: dict  # symbol -> row-major tuple of length k**arity

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("carrier must be nonempty")
        if set(self.tables) != set(self.signature.operations):
            raise ValueError("tables do not match the signature")
        for sym, arity in self.signature.operations.items():
            table = tuple(self.tables[sym])
            self.tables[sym] = table
            if len(table) != self.k ** arity:
                raise ValueError(f"table for {sym} has length {len(table)}, want {self.k ** arity}")
            if any(not 0 <= v < self.k for v in table):
                raise ValueError(f"table for {sym} leaves the carrier")

    def __eq__(self, other):
        return (isinstance(other, FiniteAlgebra) and self.k == other.k
                and self.signature == other.signature and self.tables == other.tables)


def clone_of_algebra(alg, N, element_ceiling=20_000):
    """All term operations of alg up to arity N, closed under composition.

    Elements are inserted projections-first, then by composition depth,
    applying the signature's operations in declaration order to
    argument tuples in index order; ids refer to this order.
    """
    if N < 1:
        raise ValueError("truncation bound must be >= 1")
    k = alg.k
    per_arity = []
    for n in range(N + 1):
        elems = []
        pos = {}

        def add(t):
            if t in pos:
                return False
            pos[t] = len(elems)
            elems.append(t)
            if sum(len(e) for e in per_arity) + len(elems) > element_ceiling:
                sizes = [len(e) for e in per_arity] + [len(elems)]
                raise ResourceCeiling(
                    f"clone closure ceiling {element_ceiling} exceeded; partial sizes {sizes}")
            return True

        for i in range(n):
            add(projection_table(k, n, i))
        prev_start = 0
        while True:
            snapshot = len(elems)
            new_found = False
            for sym, r in alg.signature.operations.items():
                base = alg.tables[sym]
                if r == 0:
                    if add((base[0],) * (k ** n)):
                        new_found = True
                    continue
                for combo in itertools.product(range(snapshot), repeat=r):
                    if prev_start and max(combo) < prev_start:
                        continue  # both args old: already tried
                    gts = [elems[c] for c in combo]
                    t = tuple(base[_index(tuple(gt[idx] for gt in gts), k)]
                              for idx in range(k ** n))
                    if add(t):
                        new_found = True
            if not new_found:
                break
            prev_start = snapshot
        per_arity.append(tuple(elems))
    return FunctionClone(k, per_arity, name=f"clone({alg.signature.name})")


def centralizer_clone(base, N, function_ceiling=300_000):
    """All operations carrier^n -> carrier commuting with every basic
    operation of base, for n <= N; a clone, in table order."""
    k = base.k
    ops = [(sym, base.signature.operations[sym], base.tables[sym])
           for sym in base.signature.operations]
    per_arity = []
    for n in range(N + 1):
        if k ** (k ** n) > function_ceiling:
            raise ResourceCeiling(
                f"centralizer at arity {n} needs {k ** (k ** n)} candidate tables")
        elems = []
        for table in itertools.product(range(k), repeat=k ** n):
            if all(commuting_witness(table, n, t, r, k) is None for _, r, t in ops):
                elems.append(table)
        per_arity.append(tuple(elems))
    return FunctionClone(k, per_arity, name=f"centralizer({base.signature.name})")


def commuting_witness(f_table, n, g_table, m, k):
    """First assignment (row-major n-by-m matrix) where the interchange
    identity fails for the two concrete functions, or None."""
    for x in itertools.product(range(k), repeat=n * m):
        f_args = tuple(g_table[_index(x[i * m:(i + 1) * m], k)] for i in range(n))
        lhs = f_table[_index(f_args, k)]
        g_args = tuple(f_table[_index(x[j::m] if m else (), k)] for j in range(m))
        rhs = g_table[_index(g_args, k)]
        if lhs != rhs:
            return x
    return None


def tables_commute(f_table, n, g_table, m, k):
    return commuting_witness(f_table, n, g_table, m, k) is None


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class CloneReport:
    failures: tuple  # (law name, witness description)
    instances: int
    exhaustive: bool
    skipped: int = 0  # instances undefined at this truncation (partial mu)

    @property
    def passed(self):
        return not self.failures


def validate_clone(c, arity_cap=None, instance_cap=200_000):
    """Exhaustively check the truncated circle-monoid laws.

    Checks arities up to min(bound, arity_cap); if the instance budget
    runs out the report says so (exhaustive=False) rather than silently
    passing.  Law instances that fall outside a partial substitution
    table (clones of truncated operads) are counted as skipped.
    """
    N = c.bound if arity_cap is None else min(c.bound, arity_cap)
    failures = []
    count = 0
    skipped = 0
    exhausted = False

    def spend():
        nonlocal count, exhausted
        count += 1
        if count > instance_cap:
            exhausted = True
        return exhausted

    def fail(law, witness):
        if len(failures) < 32:
            failures.append((law, witness))

    def law(law_name, witness, check):
        nonlocal skipped
        try:
            if not check():
                fail(law_name, witness())
        except ArityBoundError:
            skipped += 1

    # unit shape
    for n in range(N + 1):
        for i in range(n):
            u = c.unit(n, i)
            if u.arity != n:
                fail("unit-shape", f"pi_{i + 1} in T({n}) has arity {u.arity}")

    # right unit: mu(f; pi_1..pi_n) = f
    for n in range(1, N + 1):
        units = [c.unit(n, i) for i in range(n)]
        for f in c.elements(n):
            if spend():
                break
            law("right-unit", lambda f=f, n=n: f"mu(f; pi) != f at f = T({n})#{f.index}",
                lambda f=f: c.subst(f, units) == f)

    # left unit: mu(pi_i; g_1..g_n) = g_i
    for n in range(1, N + 1):
        for m in range(N + 1):
            for gs in itertools.product(c.elements(m), repeat=n):
                if spend():
                    break
                for i in range(n):
                    law("left-unit",
                        lambda n=n, m=m, i=i, gs=gs:
                            f"mu(pi_{i + 1}; gs) != g_{i + 1} at arity ({n},{m})"
                            f" gs={tuple(g.index for g in gs)}",
                        lambda n=n, i=i, gs=gs: c.subst(c.unit(n, i), list(gs)) == gs[i])

    # associativity of substitution
    for n in range(1, N + 1):
        for m in range(1, N + 1):
            for p in range(N + 1):
                for f in c.elements(n):
                    for gs in itertools.product(c.elements(m), repeat=n):
                        for hs in itertools.product(c.elements(p), repeat=m):
                            if spend():
                                break
                            law("associativity",
                                lambda n=n, m=m, p=p, f=f, gs=gs, hs=hs:
                                    f"arity ({n},{m},{p}) f#{f.index}"
                                    f" gs={tuple(g.index for g in gs)}"
                                    f" hs={tuple(h.index for h in hs)}",
                                lambda f=f, gs=gs, hs=hs:
                                    c.subst(c.subst(f, list(gs)), list(hs))
                                    == c.subst(f, [c.subst(g, list(hs)) for g in gs]))

    # functoriality of the action
    for n in range(N + 1):
        ident = FinMap.identity(n)
        for f in c.elements(n):
            if spend():
                break
            law("action-identity", lambda n=n, f=f: f"T(id) moves T({n})#{f.index}",
                lambda f=f, ident=ident: c.act(ident, f) == f)
    for n in range(N + 1):
        for m in range(N + 1):
            for p in range(N + 1):
                for uv in itertools.product(range(m), repeat=n):
                    u = FinMap(n, m, uv)
                    for vv in itertools.product(range(p), repeat=m):
                        v = FinMap(m, p, vv)
                        for f in c.elements(n):
                            if spend():
                                break
                            law("action-composition",
                                lambda uv=uv, vv=vv, n=n, f=f:
                                    f"u={uv} v={vv} on T({n})#{f.index}",
                                lambda u=u, v=v, f=f:
                                    c.act(v, c.act(u, f)) == c.act(v.compose(u), f))

    # naturality of substitution in the inner arity
    for n in range(1, N + 1):
        for m in range(N + 1):
            for p in range(N + 1):
                for uv in itertools.product(range(p), repeat=m):
                    u = FinMap(m, p, uv)
                    for f in c.elements(n):
                        for gs in itertools.product(c.elements(m), repeat=n):
                            if spend():
                                break
                            law("substitution-naturality",
                                lambda uv=uv, n=n, f=f, gs=gs:
                                    f"u={uv} f=T({n})#{f.index}"
                                    f" gs={tuple(g.index for g in gs)}",
                                lambda u=u, f=f, gs=gs:
                                    c.act(u, c.subst(f, list(gs)))
                                    == c.subst(f, [c.act(u, g) for g in gs]))

    return CloneReport(tuple(failures), count, not exhausted, skipped)


# ---------------------------------------------------------------------------
# commutativity


def clone_substitute(c, f, gs):
    """mu(f; gs)."""
    return c.subst(f, list(gs))


def _sigma_value(c, f, g):
    n, m = f.arity, g.arity
    if n * m > c.bound:
        raise ArityBoundError(f"pair needs arity {n * m} > bound {c.bound}")
    if n == 0:
        return f
    rows = [c.act(row_embedding(i, n, m), g) for i in range(n)]
    return c.subst(f, rows)


def _tau_value(c, f, g):
    n, m = f.arity, g.arity
    if n * m > c.bound:
        raise ArityBoundError(f"pair needs arity {n * m} > bound {c.bound}")
    if m == 0:
        return g
    cols = [c.act(col_embedding(j, n, m), f) for j in range(m)]
    return c.subst(g, cols)


def op_commutes(c, f, g):
    """Does the interchange identity hold for the pair, per the direct
    display: f over the rows of g equals g over the columns of f?"""
    return _sigma_value(c, f, g) == _tau_value(c, f, g)


@dataclass(frozen=True)
class ClassifiedFamily:
    """A tabulated family c_{n,m}: T(n) x T(m) -> T(n*m) for n*m <= bound."""

    label: str
    bound: int
    table: dict

    def __call__(self, f, g):
        key = (f.arity, g.arity, f.index, g.index)
        if key not in self.table:
            raise ArityBoundError(
                f"{self.label} undefined at arities ({f.arity},{g.arity}) within bound {self.bound}")
        return self.table[key]

    def pairs(self):
        return sorted(self.table)


def sigma_tau_families(c):
    """Tabulate both comparison families over all admissible pairs."""
    sig, tau = {}, {}
    for n in range(c.bound + 1):
        for m in range(c.bound + 1):
            if n * m > c.bound:
                continue
            for f in c.elements(n):
                for g in c.elements(m):
                    key = (n, m, f.index, g.index)
                    sig[key] = _sigma_value(c, f, g)
                    tau[key] = _tau_value(c, f, g)
    return (ClassifiedFamily("sigma", c.bound, sig),
            ClassifiedFamily("tau", c.bound, tau))


def family_naturality_failures(fam, c, arity_cap=3):
    """Violations of C(u x v) . fam_{n,m} = fam_{n',m'} . (T(u) x T(v))."""
    N = min(c.bound, arity_cap)
    out = []
    for n in range(N + 1):
        for m in range(N + 1):
            if n * m > c.bound:
                continue
            for n2 in range(N + 1):
                for m2 in range(N + 1):
                    if n2 * m2 > c.bound:
                        continue
                    for uv in itertools.product(range(n2), repeat=n):
                        u = FinMap(n, n2, uv)
                        for vv in itertools.product(range(m2), repeat=m):
                            v = FinMap(m, m2, vv)
                            grid = FinMap(n * m, n2 * m2 if n2 * m2 else 0,
                                          tuple(u(i) * m2 + v(j)
                                                for i in range(n) for j in range(m)))
                            for f in c.elements(n):
                                for g in c.elements(m):
                                    left = c.act(grid, fam(f, g))
                                    right = fam(c.act(u, f), c.act(v, g))
                                    if left != right:
                                        out.append((n, m, n2, m2, uv, vv,
                                                    f.index, g.index))
    return out


def _cached_families(c):
    cached = getattr(c, "_family_cache", None)
    if cached is None:
        cached = sigma_tau_families(c)
        c._family_cache = cached
    return cached


def op_commutes_duoidal(c, f, g):
    """The hexagon for the identity cospan, evaluated through the
    tabulated sigma/tau families; must agree with op_commutes."""
    sigma, tau = _cached_families(c)
    return sigma(f, g) == tau(f, g)


@dataclass(frozen=True)
class CommutativityVerdict:
    commutative: bool
    bound: int
    witness: tuple = None  # (f, g) as Op handles

    def __repr__(self):
        if self.commutative:
            return f"CommutativeUpTo({self.bound})"
        f, g = self.witness
        return f"NotCommutative(T({f.arity})#{f.index}, T({g.arity})#{g.index})"


def is_commutative_clone(c):
    """Check all admissible pairs; the witness is the first failing pair
    in (n, m, f, g) lexicographic order."""
    for n in range(c.bound + 1):
        for m in range(c.bound + 1):
            if n * m > c.bound:
                continue
            for f in c.elements(n):
                for g in c.elements(m):
                    if not op_commutes(c, f, g):
                        return CommutativityVerdict(False, c.bound, (f, g))
    return CommutativityVerdict(True, c.bound)


@dataclass(frozen=True)
class DuoidData:
    nu: ClassifiedFamily
    interchange_instances: int
    tau_agreement_pairs: int


@dataclass(frozen=True)
class DuoidStructureResult:
    duoid: DuoidData = None
    witness: tuple = None
    failures: tuple = ()

    @property
    def present(self):
        return self.duoid is not None and not self.failures


def duoid_structure(c, shape_instance_cap=2_000):
    """If the clone is commutative, package nu = mu . sigma and verify
    nu = mu . tau plus the duoid interchange law instance-wise.

    Interchange instances are enumerated lexicographically per arity
    shape (k, l, n, m) and capped per shape to stay desk-scale.
    """
    verdict = is_commutative_clone(c)
    if not verdict.commutative:
        return DuoidStructureResult(witness=verdict.witness)
    sigma, tau = _cached_families(c)
    agreement = 0
    failures = []
    for key in sigma.pairs():
        agreement += 1
        if sigma.table[key] != tau.table[key]:
            failures.append(("nu-agreement", key))
    nu = ClassifiedFamily("nu", c.bound, dict(sigma.table))

    instances = 0
    for ka in range(c.bound + 1):
        for la in range(c.bound + 1):
            if ka * la > c.bound:
                continue
            for n in range(c.bound + 1):
                for m in range(c.bound + 1):
                    if n * m > c.bound:
                        continue
                    shape_count = 0
                    for a in c.elements(ka):
                        for b in c.elements(la):
                            for cs in itertools.product(c.elements(n), repeat=ka):
                                for ds in itertools.product(c.elements(m), repeat=la):
                                    shape_count += 1
                                    if shape_count > shape_instance_cap:
                                        break
                                    left = nu(c.subst(a, list(cs)) if ka else a,
                                              c.subst(b, list(ds)) if la else b)
                                    inner = [nu(ci, dj) for ci in cs for dj in ds]
                                    ab = nu(a, b)
                                    right = c.subst(ab, inner) if ka * la else ab
                                    instances += 1
                                    if left != right:
                                        failures.append(
                                            ("duoid-interchange",
                                             (ka, la, n, m, a.index, b.index,
                                              tuple(x.index for x in cs),
                                              tuple(x.index for x in ds))))
                                if shape_count > shape_instance_cap:
                                    break
                            if shape_count > shape_instance_cap:
                                break
                        if shape_count > shape_instance_cap:
                            break
    if failures:
        return DuoidStructureResult(witness=None, failures=tuple(failures))
    return DuoidStructureResult(DuoidData(nu, instances, agreement))


# ---------------------------------------------------------------------------
# algebra files and clone dumps


def parse_algebra(text):
    """`algebra IDENT { carrier NAT; op IDENT/NAT = [v,...]; ... }`"""
    ts = TokenStream(tokenize(text))
    kw = ts.expect_kind("ident")
    if kw.text != "algebra":
        raise ParseError(f"expected 'algebra', found {kw.text!r}", kw.line, kw.col)
    name = ts.expect_ident()
    ts.expect("{")
    carrier = None
    ops = {}
    tables = {}
    while not ts.at("}"):
        field = ts.expect_ident()
        if field == "carrier":
            carrier = ts.expect_nat()
        elif field == "op":
            sym_tok = ts.expect_kind("ident")
            sym = sym_tok.text
            if sym in ops:
                raise ParseError(f"duplicate operation {sym!r}", sym_tok.line, sym_tok.col)
            ts.expect("/")
            arity = ts.expect_nat()
            ts.expect("=")
            ts.expect("[")
            vals = []
            if not ts.at("]"):
                vals.append(ts.expect_nat())
                while ts.accept(","):
                    vals.append(ts.expect_nat())
            ts.expect("]")
            ops[sym] = arity
            tables[sym] = tuple(vals)
        else:
            ts.error(f"unknown algebra field {field!r}")
        ts.expect(";")
    ts.expect("}")
    ts.expect_eof()
    if carrier is None:
        raise ParseError("algebra file needs a carrier")
    try:
        return FiniteAlgebra(carrier, Signature(name, ops), tables)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def render_algebra(alg):
    lines = [f"algebra {alg.signature.name} {{", f"  carrier {alg.k};"]
    for sym in sorted(alg.signature.operations):
        vals = ",".join(str(v) for v in alg.tables[sym])
        lines.append(f"  op {sym}/{alg.signature.operations[sym]} = [{vals}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_clone(c):
    """Text dump: one line per element; tables for function clones,
    mu rows for abstract ones."""
    lines = [f"clone {c.name} bound {c.bound}"]
    for n in range(c.bound + 1):
        lines.append(f"arity {n}: {c.size(n)} elements,"
                     f" units {[c.unit(n, i).index for i in range(n)]}")
        for f in c.elements(n):
            payload = c.payload(f)
            if isinstance(payload, tuple) and all(isinstance(v, int) for v in payload):
                body = "[" + ",".join(str(v) for v in payload) + "]"
            else:
                body = str(payload)
            lines.append(f"  {n}#{f.index} = {body}")
    if isinstance(c, TableClone):
        for (n, fi, m, gs), out in sorted(c._subst.items()):
            lines.append(f"  mu {n}#{fi} ({m}:{','.join(map(str, gs))}) = {m}#{out}")
    return "\n".join(lines) + "\n"
