"""Finite semantics: models of a presentation on small carriers.

Model enumeration is a pruned backtracking search over operation-table
cells with equation instances parked on the first cell they cannot yet
read; an instance is re-examined exactly when that cell is assigned.
This keeps carriers of size 3-4 within reach without a naive
k^(k^arity) scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import term as _term
from .term import App, ResourceCeiling, Var

__all__ = [
    "FiniteModel", "ModelHom", "evaluate_term", "enumerate_models",
    "iter_models", "enumerate_homs", "is_commuting_pair",
    "verify_tensor_correspondence", "TensorCorrespondenceReport",
    "power_model", "restrict_model",
]


def _index(args, k):
    """Row-major index of an argument tuple in a function table."""
    idx = 0
    for a in args:
        idx = idx * k + a
    return idx


@dataclass(frozen=True, eq=False)
class FiniteModel:
    """A carrier {0..k-1} with tables satisfying every presentation equation."""

    k: int
    presentation: _term.Presentation
    interpretation: dict  # symbol -> tuple of length k**arity

    def __post_init__(self):
        sig = self.presentation.signature
        if set(self.interpretation) != set(sig.operations):
            raise ValueError("interpretation does not match the signature")
        for sym, arity in sig.operations.items():
            table = tuple(self.interpretation[sym])
            self.interpretation[sym] = table
            if len(table) != self.k ** arity:
                raise ValueError(f"table for {sym} has length {len(table)}, want {self.k ** arity}")
            if any(not 0 <= v < self.k for v in table):
                raise ValueError(f"table for {sym} has values outside the carrier")
        for eq in self.presentation.equations:
            for assignment in itertools.product(range(self.k), repeat=eq.var_count):
                if (evaluate_term(self, eq.lhs, assignment)
                        != evaluate_term(self, eq.rhs, assignment)):
                    raise ValueError(f"equation {eq!r} fails at assignment {assignment}")

    def tables_key(self):
        """Concatenated tables in declaration order; the canonical sort key."""
        return tuple(self.interpretation[sym]
                     for sym in self.presentation.signature.operations)

    def __eq__(self, other):
        return (isinstance(other, FiniteModel) and self.k == other.k
                and self.presentation == other.presentation
                and self.tables_key() == other.tables_key())

    def __hash__(self):
        return hash((self.k, self.tables_key()))

    def __repr__(self):
        return f"FiniteModel(k={self.k}, {self.presentation.name}, {self.tables_key()})"


def render_model(m, name="m"):
    """Dump in the algebra file grammar, so models feed the clone module."""
    lines = [f"algebra {name} {{", f"  carrier {m.k};"]
    for sym in sorted(m.presentation.signature.operations):
        vals = ",".join(str(v) for v in m.interpretation[sym])
        lines.append(f"  op {sym}/{m.presentation.signature.operations[sym]} = [{vals}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def evaluate_term(m, t, assignment):
    """Structural evaluation of t in m under assignment (tuple, 1-based vars)."""
    if isinstance(t, Var):
        if t.index > len(assignment):
            raise ValueError(f"unbound variable x{t.index}")
        return assignment[t.index - 1]
    vals = tuple(evaluate_term(m, a, assignment) for a in t.args)
    return m.interpretation[t.sym][_index(vals, m.k)]


# ---------------------------------------------------------------------------
# enumeration


class _Blocked(Exception):
    def __init__(self, cell):
        self.cell = cell


def _eval_partial(t, tables, assignment, k, cell_base):
    if isinstance(t, Var):
        return assignment[t.index - 1]
    vals = tuple(_eval_partial(a, tables, assignment, k, cell_base) for a in t.args)
    idx = _index(vals, k)
    v = tables[t.sym][idx]
    if v is None:
        raise _Blocked(cell_base[t.sym] + idx)
    return v


def iter_models(pres, k, ceiling=10 ** 12):
    """Yield every model of pres on carrier {0..k-1}, lexicographically
    by the concatenated tables in declaration order."""
    if k < 0:
        raise ValueError("carrier size must be >= 0")
    sig = pres.signature
    space = 1
    for arity in sig.operations.values():
        space *= max(k, 1) ** (k ** arity)
    if space > ceiling:
        raise ResourceCeiling(f"model space {space} exceeds ceiling {ceiling}")

    cells = []
    cell_base = {}
    tables = {}
    for sym, arity in sig.operations.items():
        cell_base[sym] = len(cells)
        size = k ** arity
        tables[sym] = [None] * size
        cells.extend((sym, idx) for idx in range(size))

    instances = []
    for eq in pres.equations:
        for assignment in itertools.product(range(k), repeat=eq.var_count):
            instances.append((eq.lhs, eq.rhs, assignment))

    n_cells = len(cells)
    buckets = [[] for _ in range(n_cells)]

    def place(inst):
        """Evaluate an instance; park it, drop it, or report violation."""
        lhs, rhs, assignment = inst
        try:
            lv = _eval_partial(lhs, tables, assignment, k, cell_base)
            rv = _eval_partial(rhs, tables, assignment, k, cell_base)
        except _Blocked as b:
            buckets[b.cell].append(inst)
            return b.cell
        return "ok" if lv == rv else "violated"

    for inst in instances:
        if place(inst) == "violated":
            return

    def dfs(depth):
        if depth == n_cells:
            yield FiniteModel(k, pres, {sym: tuple(tab) for sym, tab in tables.items()})
            return
        sym, idx = cells[depth]
        pending = buckets[depth]
        for v in range(k):
            tables[sym][idx] = v
            parked = []
            ok = True
            for inst in pending:
                r = place(inst)
                if r == "violated":
                    ok = False
                    break
                if r != "ok":
                    parked.append(r)
            if ok:
                yield from dfs(depth + 1)
            for cell in reversed(parked):
                buckets[cell].pop()
        tables[sym][idx] = None

    yield from dfs(0)


def enumerate_models(pres, k, ceiling=10 ** 12):
    """All models on carrier {0..k-1} in lexicographic table order."""
    return list(iter_models(pres, k, ceiling))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class ModelHom:
    source: FiniteModel
    target: FiniteModel
    mapping: tuple  # mapping[x] in the target carrier

    def __post_init__(self):
        if self.source.presentation != self.target.presentation:
            raise ValueError("homomorphism endpoints live over different presentations")
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if len(self.mapping) != self.source.k:
            raise ValueError("mapping length differs from the source carrier")
        f = self.mapping
        for sym, arity in self.source.presentation.signature.operations.items():
            src, tgt = self.source.interpretation[sym], self.target.interpretation[sym]
            for args in itertools.product(range(self.source.k), repeat=arity):
                lhs = f[src[_index(args, self.source.k)]]
                rhs = tgt[_index(tuple(f[a] for a in args), self.target.k)]
                if lhs != rhs:
                    raise ValueError(f"not a homomorphism: fails on {sym} at {args}")

    def __eq__(self, other):
        return (isinstance(other, ModelHom) and self.source == other.source
                and self.target == other.target and self.mapping == other.mapping)


def enumerate_homs(a, b):
    """All model homomorphisms a -> b, in lexicographic mapping order."""
    if a.presentation != b.presentation:
        raise ValueError("homomorphisms require a common presentation")
    out = []
    ops = a.presentation.signature.operations
    for mapping in itertools.product(range(b.k), repeat=a.k):
        good = True
        for sym, arity in ops.items():
            src, tgt = a.interpretation[sym], b.interpretation[sym]
            for args in itertools.product(range(a.k), repeat=arity):
                if mapping[src[_index(args, a.k)]] != tgt[_index(tuple(mapping[x] for x in args), b.k)]:
                    good = False
                    break
            if not good:
                break
        if good:
            out.append(ModelHom(a, b, mapping))
    return out


def power_model(m, p):
    """The product model X^p on carrier tuples, flattened row-major."""
    k = m.k
    size = k ** p
    tuples = list(itertools.product(range(k), repeat=p))
    interp = {}
    for sym, arity in m.presentation.signature.operations.items():
        table = m.interpretation[sym]
        new = []
        for args in itertools.product(range(size), repeat=arity):
            vecs = [tuples[a] for a in args]
            out = tuple(table[_index(tuple(v[j] for v in vecs), k)] for j in range(p))
            new.append(_index(out, k))
        interp[sym] = tuple(new)
    return FiniteModel(size, m.presentation, interp)


def is_commuting_pair(s_model, t_model):
    """Do the two structures on a shared carrier commute (every operation
    of one is a homomorphism for the other)?"""
    if s_model.k != t_model.k:
        raise ValueError("commuting pairs must share a carrier")
    k = s_model.k
    for gsym, m in t_model.presentation.signature.operations.items():
        g = t_model.interpretation[gsym]
        for fsym, n in s_model.presentation.signature.operations.items():
            f = s_model.interpretation[fsym]
            # g: X^m -> X must send the f of the power structure to f.
            for vecs in itertools.product(itertools.product(range(k), repeat=m), repeat=n):
                pointwise = tuple(f[_index(tuple(v[j] for v in vecs), k)] for j in range(m))
                lhs = g[_index(pointwise, k)]
                rhs = f[_index(tuple(g[_index(v, k)] for v in vecs), k)]
                if lhs != rhs:
                    return False
    return True


# ---------------------------------------------------------------------------
# the tensor correspondence at desk scale


@dataclass(frozen=True)
class TensorCorrespondenceReport:
    k: int
    tensor_count: int
    pair_count: int
    bijection: tuple  # (tensor model index, s index, t index)
    ok: bool
    failure: str = ""


def restrict_model(u_model, pres, renaming):
    """Restrict a model of a tensor presentation along a symbol renaming."""
    interp = {old: u_model.interpretation[new] for old, new in renaming.items()}
    return FiniteModel(u_model.k, pres, interp)


def verify_tensor_correspondence(S, T, k, ceiling=10 ** 12):
    """Check Mod(S (.) T) = commuting (S, T)-pairs on carrier k, explicitly."""
    from . import tensor as _tensor
    U, ren_s, ren_t = _tensor.commuting_tensor_with_renaming(S, T)
    u_models = enumerate_models(U, k, ceiling)
    s_models = enumerate_models(S, k, ceiling)
    t_models = enumerate_models(T, k, ceiling)
    pairs = [(i, j) for i, s in enumerate(s_models) for j, t in enumerate(t_models)
             if is_commuting_pair(s, t)]
    pair_pos = {p: n for n, p in enumerate(pairs)}

    bijection = []
    seen = set()
    failure = ""
    for ui, u in enumerate(u_models):
        s = restrict_model(u, S, ren_s)
        t = restrict_model(u, T, ren_t)
        try:
            si = s_models.index(s)
            ti = t_models.index(t)
        except ValueError:
            failure = f"restriction of tensor model {ui} is not a model of a factor"
            break
        key = (si, ti)
        if key not in pair_pos:
            failure = f"restriction of tensor model {ui} is not a commuting pair"
            break
        if key in seen:
            failure = f"two tensor models restrict to the same pair {key}"
            break
        seen.add(key)
        bijection.append((ui, si, ti))
    ok = (not failure) and len(u_models) == len(pairs) and len(seen) == len(pairs)
    if not ok and not failure:
        failure = (f"counts differ: {len(u_models)} tensor models"
                   f" vs {len(pairs)} commuting pairs")
    return TensorCorrespondenceReport(k, len(u_models), len(pairs),
                                      tuple(bijection), ok, failure)
