"""Two-dimensional finite structures.

Finite categories with explicit composition tables; bifunctor squares;
the funny tensor of categories as a confluent word calculus (its
hom-sets can be infinite, so arrows are normal-form alternating words
enumerated up to a length bound); functor categories with natural or
unnatural transformations; sesquicategory tables with the interchange
test; premonoidal categories, centres and Freyd validation.

Arrow and object names are arbitrary hashables; parsers produce
string-named structures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._lex import ParseError, TokenStream, tokenize

__all__ = [
    "FiniteCategory", "Functor", "parse_category", "walking_arrow",
    "terminal_category", "product_category", "enumerate_functors",
    "Sesquifunctor", "bifunctor_check", "bifunctor_factorization",
    "FunnyTensor", "funny_tensor", "local_confluence_report",
    "functor_hom", "SesquiData", "sesqui_validate", "sesqui_interchange",
    "two_category_check", "parse_sesqui", "discrete_sesqui",
    "codiscrete_sesqui", "free_interchange_counterexample",
    "PremonoidalData", "premonoidal_validate", "is_central",
    "premonoidal_centre", "freyd_validate", "freyd_cospan_commutes",
    "parse_premonoidal", "StructReport",
    "one_object_premonoidal", "monoidal_subdata",
]


@dataclass(frozen=True)
class StructReport:
    failures: tuple  # (law, witness)
    instances: int = 0

    @property
    def passed(self):
        return not self.failures


class _Failures:
    def __init__(self):
        self.items = []
        self.instances = 0

    def check(self, ok, law, witness):
        self.instances += 1
        if not ok and len(self.items) < 64:
            self.items.append((law, witness))

    def law(self, name, witness, fn):
        """Evaluate fn(); a missing table entry counts as a failure."""
        try:
            ok = fn()
        except KeyError as exc:
            ok = False
            witness = (witness, f"missing entry {exc.args[0]!r}")
        self.check(ok, name, witness)

    def report(self):
        return StructReport(tuple(self.items), self.instances)


# ---------------------------------------------------------------------------
# finite categories


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    name: str
    objects: tuple
    arrows: tuple          # arrow names
    src: dict
    dst: dict
    identity: dict         # object -> arrow
    comp: dict             # (g, f) -> g o f, for dst[f] == src[g]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        arrows = set(self.arrows)
        for f in self.arrows:
            if self.src[f] not in self.objects or self.dst[f] not in self.objects:
                raise ValueError(f"arrow {f!r} has endpoints outside the object list")
        for a in self.objects:
            i = self.identity.get(a)
            if i not in arrows or self.src[i] != a or self.dst[i] != a:
                raise ValueError(f"object {a!r} lacks an identity arrow")
        for f in self.arrows:
            for g in self.arrows:
                defined = (g, f) in self.comp
                composable = self.dst[f] == self.src[g]
                if composable and not defined:
                    raise ValueError(f"composition table misses {g!r} o {f!r}")
                if defined and not composable:
                    raise ValueError(f"composition table defines non-composable {g!r} o {f!r}")
                if defined:
                    h = self.comp[(g, f)]
                    if h not in arrows or self.src[h] != self.src[f] or self.dst[h] != self.dst[g]:
                        raise ValueError(f"composite {g!r} o {f!r} badly typed")
        for f in self.arrows:
            if self.comp[(f, self.identity[self.src[f]])] != f or \
               self.comp[(self.identity[self.dst[f]], f)] != f:
                raise ValueError(f"identity law fails at {f!r}")
        for f in self.arrows:
            for g in self.arrows:
                if self.dst[f] != self.src[g]:
                    continue
                for h in self.arrows:
                    if self.dst[g] != self.src[h]:
                        continue
                    if self.comp[(h, self.comp[(g, f)])] != self.comp[(self.comp[(h, g)], f)]:
                        raise ValueError(f"associativity fails at {h!r} o {g!r} o {f!r}")

    def compose(self, g, f):
        """g o f."""
        return self.comp[(g, f)]

    def hom(self, a, b):
        return [f for f in self.arrows if self.src[f] == a and self.dst[f] == b]

    def parallel_pairs(self):
        for f in self.arrows:
            for g in self.arrows:
                if self.src[f] == self.src[g] and self.dst[f] == self.dst[g]:
                    yield f, g

    def __eq__(self, other):
        return (isinstance(other, FiniteCategory)
                and self.objects == other.objects and self.arrows == other.arrows
                and self.src == other.src and self.dst == other.dst
                and self.identity == other.identity and self.comp == other.comp)


def walking_arrow(name="walking_arrow"):
    return FiniteCategory(
        name, ("a0", "a1"), ("id0", "id1", "f"),
        {"id0": "a0", "id1": "a1", "f": "a0"},
        {"id0": "a0", "id1": "a1", "f": "a1"},
        {"a0": "id0", "a1": "id1"},
        {("id0", "id0"): "id0", ("id1", "id1"): "id1",
         ("f", "id0"): "f", ("id1", "f"): "f"})


def terminal_category(name="terminal"):
    return FiniteCategory(name, ("pt",), ("id",), {"id": "pt"}, {"id": "pt"},
                          {"pt": "id"}, {("id", "id"): "id"})


def product_category(A, B):
    objects = tuple((a, b) for a in A.objects for b in B.objects)
    arrows = tuple((f, g) for f in A.arrows for g in B.arrows)
    src = {(f, g): (A.src[f], B.src[g]) for f, g in arrows}
    dst = {(f, g): (A.dst[f], B.dst[g]) for f, g in arrows}
    identity = {(a, b): (A.identity[a], B.identity[b]) for a, b in objects}
    comp = {}
    for f1, g1 in arrows:
        for f2, g2 in arrows:
            if A.dst[f2] == A.src[f1] and B.dst[g2] == B.src[g1]:
                comp[((f1, g1), (f2, g2))] = (A.comp[(f1, f2)], B.comp[(g1, g2)])
    return FiniteCategory(f"{A.name}_x_{B.name}", objects, arrows, src, dst,
                          identity, comp)


@dataclass(frozen=True, eq=False)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    obj_map: dict
    arr_map: dict

    def __post_init__(self):
        for a in self.source.objects:
            if self.obj_map.get(a) not in self.target.objects:
                raise ValueError(f"functor misses object {a!r}")
        for f in self.source.arrows:
            ff = self.arr_map.get(f)
            if ff not in set(self.target.arrows):
                raise ValueError(f"functor misses arrow {f!r}")
            if (self.target.src[ff] != self.obj_map[self.source.src[f]]
                    or self.target.dst[ff] != self.obj_map[self.source.dst[f]]):
                raise ValueError(f"functor mistypes arrow {f!r}")
        for a in self.source.objects:
            if self.arr_map[self.source.identity[a]] != self.target.identity[self.obj_map[a]]:
                raise ValueError(f"functor breaks the identity at {a!r}")
        for (g, f), h in self.source.comp.items():
            if self.target.comp[(self.arr_map[g], self.arr_map[f])] != self.arr_map[h]:
                raise ValueError(f"functor breaks composition at {g!r} o {f!r}")

    def __call__(self, arrow):
        return self.arr_map[arrow]

    def on_obj(self, a):
        return self.obj_map[a]

    def key(self):
        return (tuple(self.obj_map[a] for a in self.source.objects),
                tuple(self.arr_map[f] for f in self.source.arrows))

    def __eq__(self, other):
        return isinstance(other, Functor) and self.key() == other.key() \
            and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.key())


def enumerate_functors(B, C):
    """All functors B -> C, ordered by their object/arrow assignment."""
    out = []
    for objs in itertools.product(C.objects, repeat=len(B.objects)):
        obj_map = dict(zip(B.objects, objs))
        pools = []
        for f in B.arrows:
            pools.append([g for g in C.arrows
                          if C.src[g] == obj_map[B.src[f]]
                          and C.dst[g] == obj_map[B.dst[f]]])
        for choice in itertools.product(*pools):
            arr_map = dict(zip(B.arrows, choice))
            if any(arr_map[B.identity[a]] != C.identity[obj_map[a]] for a in B.objects):
                continue
            if any(C.comp[(arr_map[g], arr_map[f])] != arr_map[h]
                   for (g, f), h in B.comp.items()):
                continue
            out.append(Functor(B, C, obj_map, arr_map))
    return out


# ---------------------------------------------------------------------------
# sesquifunctors and bifunctors


@dataclass(frozen=True, eq=False)
class Sesquifunctor:
    """Families T(a,-): B -> C and T(-,b): A -> C agreeing on objects."""

    A: FiniteCategory
    B: FiniteCategory
    C: FiniteCategory
    obj: dict   # (a, b) -> object of C
    rows: dict  # a -> Functor B -> C
    cols: dict  # b -> Functor A -> C

    def __post_init__(self):
        for a in self.A.objects:
            row = self.rows[a]
            for b in self.B.objects:
                if row.on_obj(b) != self.obj[(a, b)]:
                    raise ValueError(f"row at {a!r} disagrees on object {b!r}")
        for b in self.B.objects:
            col = self.cols[b]
            for a in self.A.objects:
                if col.on_obj(a) != self.obj[(a, b)]:
                    raise ValueError(f"column at {b!r} disagrees on object {a!r}")


def bifunctor_check(T):
    """Does every mixed square commute (the sesquifunctor is a bifunctor)?"""
    return bifunctor_witness(T) is None


def bifunctor_witness(T):
    for f in T.A.arrows:
        a, a2 = T.A.src[f], T.A.dst[f]
        for g in T.B.arrows:
            b, b2 = T.B.src[g], T.B.dst[g]
            upper = T.C.compose(T.rows[a2](g), T.cols[b](f))
            lower = T.C.compose(T.cols[b2](f), T.rows[a](g))
            if upper != lower:
                return (f, g)
    return None


def bifunctor_factorization(T):
    """The functor A x B -> C induced by the mixed composites, when the
    squares commute; None otherwise."""
    if not bifunctor_check(T):
        return None
    P = product_category(T.A, T.B)
    obj_map = {(a, b): T.obj[(a, b)] for a, b in P.objects}
    arr_map = {}
    for f, g in P.arrows:
        a2 = T.A.dst[f]
        b = T.B.src[g]
        arr_map[(f, g)] = T.C.compose(T.rows[a2](g), T.cols[b](f))
    return Functor(P, T.C, obj_map, arr_map)


def sesquifunctor_from_functor(F, A, B):
    """Restrict a functor A x B -> C to its sesquifunctor data."""
    obj = {(a, b): F.on_obj((a, b)) for a in A.objects for b in B.objects}
    rows = {}
    for a in A.objects:
        rows[a] = Functor(B, F.target,
                          {b: obj[(a, b)] for b in B.objects},
                          {g: F((A.identity[a], g)) for g in B.arrows})
    cols = {}
    for b in B.objects:
        cols[b] = Functor(A, F.target,
                          {a: obj[(a, b)] for a in A.objects},
                          {f: F((f, B.identity[b])) for f in A.arrows})
    return Sesquifunctor(A, B, F.target, obj, rows, cols)


# ---------------------------------------------------------------------------
# the funny tensor as a word calculus


def _letter_src(A, B, letter):
    side, x, y = letter
    return (A.src[x], y) if side == "L" else (x, B.src[y])


def _letter_dst(A, B, letter):
    side, x, y = letter
    return (A.dst[x], y) if side == "L" else (x, B.dst[y])


class FunnyTensor:
    """The funny tensor product of two finite categories.

    Objects are pairs; arrows are reduced alternating words in the
    generator letters ('L', f, b) and ('R', a, g).  Reduction composes
    adjacent same-side letters and deletes identity letters; it is
    terminating and confluent, so normal forms decide equality.
    """

    def __init__(self, A, B):
        self.A = A
        self.B = B
        self.objects = tuple((a, b) for a in A.objects for b in B.objects)

    def identity(self, obj):
        return ()

    def letters_from(self, obj, exclude_side=None):
        a, b = obj
        out = []
        if exclude_side != "L":
            for f in self.A.arrows:
                if self.A.src[f] == a and f != self.A.identity[a]:
                    out.append(("L", f, b))
        if exclude_side != "R":
            for g in self.B.arrows:
                if self.B.src[g] == b and g != self.B.identity[b]:
                    out.append(("R", a, g))
        return sorted(out, key=repr)

    def word_src(self, word, default=None):
        return _letter_src(self.A, self.B, word[0]) if word else default

    def word_dst(self, word, default=None):
        return _letter_dst(self.A, self.B, word[-1]) if word else default

    def is_identity_letter(self, letter):
        side, x, y = letter
        if side == "L":
            return x == self.A.identity[self.A.src[x]]
        return y == self.B.identity[self.B.src[y]]

    def check_word(self, word, src=None):
        at = src
        for letter in word:
            here = _letter_src(self.A, self.B, letter)
            if at is not None and here != at:
                raise ValueError(f"word breaks at {letter!r}: at {at!r}")
            at = _letter_dst(self.A, self.B, letter)
        return at

    def normalize(self, word):
        """Stack-based normal form; words read left to right."""
        self.check_word(word)
        stack = []
        for letter in word:
            if self.is_identity_letter(letter):
                continue
            while stack and stack[-1][0] == letter[0]:
                prev = stack.pop()
                if letter[0] == "L":
                    comp = self.A.comp[(letter[1], prev[1])]
                    letter = ("L", comp, letter[2])
                else:
                    comp = self.B.comp[(letter[2], prev[2])]
                    letter = ("R", letter[1], comp)
                if self.is_identity_letter(letter):
                    letter = None
                    break
            if letter is not None:
                stack.append(letter)
        return tuple(stack)

    def compose(self, w2, w1):
        """w2 o w1 (w1 first)."""
        d1 = self.word_dst(w1)
        s2 = self.word_src(w2)
        if w1 and w2 and d1 != s2:
            raise ValueError("words do not compose")
        return self.normalize(tuple(w1) + tuple(w2))

    def hom_words(self, src, dst, max_len=8):
        """Normal-form words src -> dst of length <= max_len, plus a flag
        telling whether the bound cut off live extensions."""
        results = []
        truncated = False
        frontier = [(src, (), None)]
        while frontier:
            nxt = []
            for obj, word, last in frontier:
                if obj == dst:
                    results.append(word)
                exts = self.letters_from(obj, exclude_side=last)
                if len(word) == max_len:
                    if exts:
                        truncated = True
                    continue
                for letter in exts:
                    nxt.append((_letter_dst(self.A, self.B, letter),
                                word + (letter,), letter[0]))
            frontier = nxt
        return results, truncated

    def to_product(self, word, src):
        """The image of a word under the canonical quotient to A x B."""
        a, b = src
        fa = self.A.identity[a]
        gb = self.B.identity[b]
        for letter in word:
            side, x, y = letter
            if side == "L":
                fa = self.A.comp[(x, fa)]
            else:
                gb = self.B.comp[(y, gb)]
        return (fa, gb)


def funny_tensor(A, B):
    return FunnyTensor(A, B)


def local_confluence_report(A, B, max_len=4):
    """Exhaustively check one-step reducts of every typed word of length
    <= max_len (identity letters included) for convergence."""
    T = FunnyTensor(A, B)
    letters = []
    for a in A.objects:
        for b in B.objects:
            for f in A.arrows:
                if A.src[f] == a:
                    letters.append(("L", f, b))
            for g in B.arrows:
                if B.src[g] == b:
                    letters.append(("R", a, g))
    rep = _Failures()

    def words_from(obj, length):
        if length == 0:
            yield ()
            return
        for letter in letters:
            if _letter_src(A, B, letter) == obj:
                for rest in words_from(_letter_dst(A, B, letter), length - 1):
                    yield (letter,) + rest

    def one_step(word):
        for i, letter in enumerate(word):
            if T.is_identity_letter(letter):
                yield word[:i] + word[i + 1:]
        for i in range(len(word) - 1):
            x, y = word[i], word[i + 1]
            if x[0] == y[0] == "L":
                yield word[:i] + (("L", A.comp[(y[1], x[1])], x[2]),) + word[i + 2:]
            if x[0] == y[0] == "R":
                yield word[:i] + (("R", x[1], B.comp[(y[2], x[2])]),) + word[i + 2:]

    for obj in T.objects:
        for length in range(max_len + 1):
            for word in words_from(obj, length):
                target = T.normalize(word)
                for reduct in one_step(word):
                    rep.check(T.normalize(reduct) == target,
                              "local-confluence", (word, reduct))
    return rep.report()


# ---------------------------------------------------------------------------
# functor categories


def functor_hom(B, C, natural):
    """The category of functors B -> C with natural (or arbitrary
    object-indexed) transformations, composed componentwise."""
    functors = enumerate_functors(B, C)
    objects = tuple(range(len(functors)))
    arrows = []
    src = {}
    dst = {}
    pos = {}
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            for components in itertools.product(
                    *[C.hom(F.on_obj(b), G.on_obj(b)) for b in B.objects]):
                comp_map = dict(zip(B.objects, components))
                if natural:
                    ok = all(
                        C.compose(comp_map[B.dst[f]], F(f))
                        == C.compose(G(f), comp_map[B.src[f]])
                        for f in B.arrows)
                    if not ok:
                        continue
                name = (i, j, components)
                arrows.append(name)
                src[name] = i
                dst[name] = j
                pos[name] = name
    identity = {}
    for i, F in enumerate(functors):
        name = (i, i, tuple(C.identity[F.on_obj(b)] for b in B.objects))
        identity[i] = name
    comp = {}
    for n2 in arrows:
        for n1 in arrows:
            if n1[1] != n2[0]:
                continue
            components = tuple(C.compose(c2, c1) for c1, c2 in zip(n1[2], n2[2]))
            comp[(n2, n1)] = (n1[0], n2[1], components)
    label = "nat" if natural else "unnat"
    return FiniteCategory(f"[{B.name},{C.name}]_{label}", objects, tuple(arrows),
                          src, dst, identity, comp), functors


# ---------------------------------------------------------------------------
# sesquicategory tables


@dataclass(frozen=True, eq=False)
class SesquiData:
    """2-cells over a base category with whiskering and vertical
    composition, all tabulated."""

    base: FiniteCategory
    cells: dict     # (f, g) parallel pair -> tuple of cell names
    cell_src: dict  # cell -> f
    cell_dst: dict  # cell -> g
    id2: dict       # arrow -> cell
    whisk_l: dict   # (h, cell) -> cell
    whisk_r: dict   # (cell, k) -> cell
    vcomp: dict     # (beta, alpha) -> cell  (alpha: f=>g, beta: g=>h)

    def all_cells(self):
        for pair in self.cells:
            yield from self.cells[pair]

    def frame(self, cell):
        f = self.cell_src[cell]
        return (f, self.cell_dst[cell], self.base.src[f], self.base.dst[f])


def sesqui_validate(S):
    """Check the sesquicategory laws exhaustively; failures carry a
    minimal witness."""
    rep = _Failures()
    base = S.base
    for (f, g), cs in S.cells.items():
        rep.check(base.src[f] == base.src[g] and base.dst[f] == base.dst[g],
                  "cell-frame", (f, g))
        for c in cs:
            rep.check(S.cell_src[c] == f and S.cell_dst[c] == g, "cell-index", c)
    for f in base.arrows:
        c = S.id2.get(f)
        rep.check(c is not None and S.cell_src[c] == f and S.cell_dst[c] == f,
                  "identity-cell", f)

    def vc(b, a):
        return S.vcomp[(b, a)]

    # vertical category laws
    for a in S.all_cells():
        f, g, x, y = S.frame(a)
        rep.law("vcomp-left-unit", a, lambda a=a, g=g: vc(S.id2[g], a) == a)
        rep.law("vcomp-right-unit", a, lambda a=a, f=f: vc(a, S.id2[f]) == a)
    for a in S.all_cells():
        for b in S.all_cells():
            if S.cell_src[b] != S.cell_dst[a]:
                continue
            ba = S.vcomp.get((b, a))
            rep.check(ba is not None and S.cell_src[ba] == S.cell_src[a]
                      and S.cell_dst[ba] == S.cell_dst[b], "vcomp-typing", (b, a))
            if ba is None:
                continue
            for c in S.all_cells():
                if S.cell_src[c] != S.cell_dst[b]:
                    continue
                rep.law("vcomp-associativity", (c, b, a),
                        lambda c=c, b=b, a=a, ba=ba: vc(c, ba) == vc(vc(c, b), a))

    # whiskering
    for a in S.all_cells():
        f, g, x, y = S.frame(a)
        for h in base.arrows:
            if base.src[h] != y:
                continue
            ha = S.whisk_l.get((h, a))
            rep.check(ha is not None
                      and S.cell_src[ha] == base.comp[(h, f)]
                      and S.cell_dst[ha] == base.comp[(h, g)], "whiskL-typing", (h, a))
        for k in base.arrows:
            if base.dst[k] != x:
                continue
            ak = S.whisk_r.get((a, k))
            rep.check(ak is not None
                      and S.cell_src[ak] == base.comp[(f, k)]
                      and S.cell_dst[ak] == base.comp[(g, k)], "whiskR-typing", (a, k))
        rep.check(S.whisk_l.get((base.identity[y], a)) == a, "whiskL-unit", a)
        rep.check(S.whisk_r.get((a, base.identity[x])) == a, "whiskR-unit", a)
        for h in base.arrows:
            if base.src[h] != y:
                continue
            for h2 in base.arrows:
                if base.src[h2] != base.dst[h]:
                    continue
                rep.law("whiskL-composition", (h2, h, a),
                        lambda h2=h2, h=h, a=a:
                            S.whisk_l[(base.comp[(h2, h)], a)]
                            == S.whisk_l[(h2, S.whisk_l[(h, a)])])
        for k in base.arrows:
            if base.dst[k] != x:
                continue
            for k2 in base.arrows:
                if base.dst[k2] != base.src[k]:
                    continue
                rep.law("whiskR-composition", (a, k, k2),
                        lambda a=a, k=k, k2=k2:
                            S.whisk_r[(S.whisk_r[(a, k)], k2)]
                            == S.whisk_r[(a, base.comp[(k, k2)])])
        for h in base.arrows:
            if base.src[h] != y:
                continue
            for k in base.arrows:
                if base.dst[k] != x:
                    continue
                rep.law("whisker-middle", (h, a, k),
                        lambda h=h, a=a, k=k:
                            S.whisk_r[(S.whisk_l[(h, a)], k)]
                            == S.whisk_l[(h, S.whisk_r[(a, k)])])

    # whiskering respects vertical composition and identities
    for f in base.arrows:
        x, y = base.src[f], base.dst[f]
        for h in base.arrows:
            if base.src[h] == y:
                rep.law("whiskL-id2", (h, f),
                        lambda h=h, f=f:
                            S.whisk_l[(h, S.id2[f])] == S.id2[base.comp[(h, f)]])
        for k in base.arrows:
            if base.dst[k] == x:
                rep.law("whiskR-id2", (f, k),
                        lambda f=f, k=k:
                            S.whisk_r[(S.id2[f], k)] == S.id2[base.comp[(f, k)]])
    for a in S.all_cells():
        for b in S.all_cells():
            if S.cell_src[b] != S.cell_dst[a]:
                continue
            f, g, x, y = S.frame(a)
            ba = S.vcomp.get((b, a))
            if ba is None:
                continue
            for h in base.arrows:
                if base.src[h] != y:
                    continue
                rep.law("whiskL-vcomp", (h, b, a),
                        lambda h=h, b=b, a=a, ba=ba:
                            S.whisk_l[(h, ba)]
                            == vc(S.whisk_l[(h, b)], S.whisk_l[(h, a)]))
            for k in base.arrows:
                if base.dst[k] != x:
                    continue
                rep.law("whiskR-vcomp", (b, a, k),
                        lambda b=b, a=a, k=k, ba=ba:
                            S.whisk_r[(ba, k)]
                            == vc(S.whisk_r[(b, k)], S.whisk_r[(a, k)]))
    return rep.report()


def _interchange_sides(S, alpha, beta):
    base = S.base
    f, g = S.cell_src[alpha], S.cell_dst[alpha]
    h, k = S.cell_src[beta], S.cell_dst[beta]
    if base.src[h] != base.dst[f]:
        raise ValueError("cells are not horizontally composable")
    left = S.vcomp[(S.whisk_r[(beta, g)], S.whisk_l[(h, alpha)])]
    right = S.vcomp[(S.whisk_l[(k, alpha)], S.whisk_r[(beta, f)])]
    return left, right


def sesqui_interchange(S, pair=None):
    """pair (alpha, beta): the interchange verdict for that pair.
    pair=None: list of all horizontally composable pairs violating it."""
    if pair is not None:
        left, right = _interchange_sides(S, *pair)
        return left == right
    witnesses = []
    for alpha in S.all_cells():
        for beta in S.all_cells():
            f = S.cell_src[alpha]
            h = S.cell_src[beta]
            if S.base.src[h] != S.base.dst[f]:
                continue
            left, right = _interchange_sides(S, alpha, beta)
            if left != right:
                witnesses.append((alpha, beta))
    return witnesses


def two_category_check(S):
    """When interchange holds everywhere, horizontal composition is
    well-defined; verify it makes the data a 2-category."""
    if sesqui_interchange(S):
        return StructReport((("interchange", "failing pairs exist"),), 0)
    rep = _Failures()

    def hcomp(beta, alpha):
        left, _ = _interchange_sides(S, alpha, beta)
        return left

    base = S.base
    for alpha in S.all_cells():
        for beta in S.all_cells():
            if base.src[S.cell_src[beta]] != base.dst[S.cell_src[alpha]]:
                continue
            for gamma in S.all_cells():
                if base.src[S.cell_src[gamma]] != base.dst[S.cell_src[beta]]:
                    continue
                rep.check(hcomp(gamma, hcomp(beta, alpha))
                          == hcomp(hcomp(gamma, beta), alpha),
                          "hcomp-associativity", (gamma, beta, alpha))
    for f in base.arrows:
        for g in base.arrows:
            if base.src[g] != base.dst[f]:
                continue
            rep.check(hcomp(S.id2[g], S.id2[f]) == S.id2[base.comp[(g, f)]],
                      "hcomp-id2", (g, f))
    for alpha in S.all_cells():
        for alpha2 in S.all_cells():
            if S.cell_src[alpha2] != S.cell_dst[alpha]:
                continue
            for beta in S.all_cells():
                if base.src[S.cell_src[beta]] != base.dst[S.cell_src[alpha]]:
                    continue
                for beta2 in S.all_cells():
                    if S.cell_src[beta2] != S.cell_dst[beta]:
                        continue
                    lhs = hcomp(S.vcomp[(beta2, beta)], S.vcomp[(alpha2, alpha)])
                    rhs = S.vcomp[(hcomp(beta2, alpha2), hcomp(beta, alpha))]
                    rep.check(lhs == rhs, "middle-four", (beta2, beta, alpha2, alpha))
    return rep.report()


# --- canned sesqui structures ----------------------------------------------


def discrete_sesqui(base):
    """Only identity 2-cells; a (strict) 2-category."""
    cells = {}
    cell_src = {}
    cell_dst = {}
    id2 = {}
    for f in base.arrows:
        c = ("id2", f)
        cells.setdefault((f, f), ())
        cells[(f, f)] = cells[(f, f)] + (c,)
        cell_src[c] = f
        cell_dst[c] = f
        id2[f] = c
    whisk_l = {}
    whisk_r = {}
    for (f, g), cs in cells.items():
        for c in cs:
            for h in base.arrows:
                if base.src[h] == base.dst[f]:
                    whisk_l[(h, c)] = id2[base.comp[(h, f)]]
            for k in base.arrows:
                if base.dst[k] == base.src[f]:
                    whisk_r[(c, k)] = id2[base.comp[(f, k)]]
    vcomp = {}
    for c in cell_src:
        vcomp[(c, c)] = c
    return SesquiData(base, cells, cell_src, cell_dst, id2, whisk_l, whisk_r, vcomp)


def codiscrete_sesqui(base):
    """Exactly one 2-cell for every parallel pair; a 2-category."""
    cells = {}
    cell_src = {}
    cell_dst = {}
    for f, g in base.parallel_pairs():
        c = ("c", f, g)
        cells[(f, g)] = (c,)
        cell_src[c] = f
        cell_dst[c] = g
    id2 = {f: ("c", f, f) for f in base.arrows}
    whisk_l = {}
    whisk_r = {}
    vcomp = {}
    for (f, g), (c,) in cells.items():
        for h in base.arrows:
            if base.src[h] == base.dst[f]:
                whisk_l[(h, c)] = ("c", base.comp[(h, f)], base.comp[(h, g)])
        for k in base.arrows:
            if base.dst[k] == base.src[f]:
                whisk_r[(c, k)] = ("c", base.comp[(f, k)], base.comp[(g, k)])
        for (g2, h2), (c2,) in cells.items():
            if g2 == g:
                vcomp[(c2, c)] = ("c", f, h2)
    return SesquiData(base, cells, cell_src, cell_dst, id2, whisk_l, whisk_r, vcomp)


def _composable_pair_base():
    objects = ("A", "B", "C")
    arrows = ("idA", "idB", "idC", "f", "g", "h", "k", "hf", "hg", "kf", "kg")
    src = {"idA": "A", "idB": "B", "idC": "C", "f": "A", "g": "A",
           "h": "B", "k": "B", "hf": "A", "hg": "A", "kf": "A", "kg": "A"}
    dst = {"idA": "A", "idB": "B", "idC": "C", "f": "B", "g": "B",
           "h": "C", "k": "C", "hf": "C", "hg": "C", "kf": "C", "kg": "C"}
    identity = {"A": "idA", "B": "idB", "C": "idC"}
    comp = {}
    for a in arrows:
        comp[(a, identity[src[a]])] = a
        comp[(identity[dst[a]], a)] = a
    for up in ("h", "k"):
        for lo in ("f", "g"):
            comp[(up, lo)] = up + lo
    return FiniteCategory("composable_pair", objects, arrows, src, dst, identity, comp)


def free_interchange_counterexample():
    """The free sesquicategory on two composable 2-cells, truncated: the
    two interchange composites are distinct cells."""
    base = _composable_pair_base()
    named = {
        ("f", "g"): ("al",),
        ("h", "k"): ("be",),
        ("hf", "hg"): ("h_al",),
        ("kf", "kg"): ("k_al",),
        ("hf", "kf"): ("be_f",),
        ("hg", "kg"): ("be_g",),
        ("hf", "kg"): ("u1", "u2"),
    }
    cells = {}
    cell_src = {}
    cell_dst = {}
    id2 = {}
    for f in base.arrows:
        c = "i_" + f
        cells[(f, f)] = (c,)
        cell_src[c] = f
        cell_dst[c] = f
        id2[f] = c
    for (f, g), cs in named.items():
        cells[(f, g)] = cs
        for c in cs:
            cell_src[c] = f
            cell_dst[c] = g

    whisk_l = {}
    whisk_r = {}
    vcomp = {}
    for (f, g), cs in cells.items():
        x, y = base.src[f], base.dst[f]
        for c in cs:
            whisk_l[(base.identity[y], c)] = c
            whisk_r[(c, base.identity[x])] = c
    for f in base.arrows:
        x, y = base.src[f], base.dst[f]
        for h in base.arrows:
            if base.src[h] == y:
                whisk_l[(h, id2[f])] = id2[base.comp[(h, f)]]
        for k in base.arrows:
            if base.dst[k] == x:
                whisk_r[(id2[f], k)] = id2[base.comp[(f, k)]]
    whisk_l[("h", "al")] = "h_al"
    whisk_l[("k", "al")] = "k_al"
    whisk_r[("be", "f")] = "be_f"
    whisk_r[("be", "g")] = "be_g"
    # vertical composition: identities act as units; the two interchange
    # composites are the distinct cells u1 and u2
    for (f, g), cs in cells.items():
        for c in cs:
            vcomp[(id2[g], c)] = c
            vcomp[(c, id2[f])] = c
    vcomp[("be_g", "h_al")] = "u1"
    vcomp[("k_al", "be_f")] = "u2"
    return SesquiData(base, cells, cell_src, cell_dst, id2, whisk_l, whisk_r, vcomp)


# ---------------------------------------------------------------------------
# premonoidal data


@dataclass(frozen=True, eq=False)
class PremonoidalData:
    base: FiniteCategory
    unit_obj: object
    ob_tensor: dict  # (u, v) -> object
    ltensor: dict    # (u, f) -> arrow  (u tensor f)
    rtensor: dict    # (f, v) -> arrow  (f tensor v)
    lam: dict        # a -> arrow i*a -> a
    rho: dict        # a -> arrow a*i -> a
    alpha: dict      # (a, b, c) -> arrow (a*b)*c -> a*(b*c)

    def lt(self, u, f):
        return self.ltensor[(u, f)]

    def rt(self, f, v):
        return self.rtensor[(f, v)]

    def ot(self, u, v):
        return self.ob_tensor[(u, v)]


def is_central(P, f):
    """Def-4 centrality: both whiskered squares against every arrow."""
    base = P.base
    u, v = base.src[f], base.dst[f]
    for g in base.arrows:
        c, d = base.src[g], base.dst[g]
        if base.compose(P.rt(f, d), P.lt(u, g)) != base.compose(P.lt(v, g), P.rt(f, c)):
            return False
        if base.compose(P.lt(d, f), P.rt(g, u)) != base.compose(P.rt(g, v), P.lt(c, f)):
            return False
    return True


def premonoidal_validate(P):
    """Functoriality of the partial tensors, naturality and centrality of
    the constraints, triangle and pentagon."""
    rep = _Failures()
    base = P.base
    i = P.unit_obj

    for u in base.objects:
        for a in base.objects:
            rep.law("ltensor-identity", (u, a),
                    lambda u=u, a=a:
                        P.lt(u, base.identity[a]) == base.identity[P.ot(u, a)])
            rep.law("rtensor-identity", (a, u),
                    lambda u=u, a=a:
                        P.rt(base.identity[a], u) == base.identity[P.ot(a, u)])
        for f in base.arrows:
            rep.law("ltensor-typing", (u, f),
                    lambda u=u, f=f:
                        base.src[P.lt(u, f)] == P.ot(u, base.src[f])
                        and base.dst[P.lt(u, f)] == P.ot(u, base.dst[f]))
            rep.law("rtensor-typing", (f, u),
                    lambda u=u, f=f:
                        base.src[P.rt(f, u)] == P.ot(base.src[f], u)
                        and base.dst[P.rt(f, u)] == P.ot(base.dst[f], u))
        for f in base.arrows:
            for g in base.arrows:
                if base.dst[f] != base.src[g]:
                    continue
                rep.law("ltensor-composition", (u, g, f),
                        lambda u=u, g=g, f=f:
                            P.lt(u, base.compose(g, f))
                            == base.compose(P.lt(u, g), P.lt(u, f)))
                rep.law("rtensor-composition", (g, f, u),
                        lambda u=u, g=g, f=f:
                            P.rt(base.compose(g, f), u)
                            == base.compose(P.rt(g, u), P.rt(f, u)))

    for a in base.objects:
        rep.law("lambda-typing", a,
                lambda a=a: base.src[P.lam[a]] == P.ot(i, a) and base.dst[P.lam[a]] == a)
        rep.law("rho-typing", a,
                lambda a=a: base.src[P.rho[a]] == P.ot(a, i) and base.dst[P.rho[a]] == a)
    for f in base.arrows:
        rep.law("lambda-naturality", f,
                lambda f=f, a=base.src[f], b=base.dst[f]:
                    base.compose(f, P.lam[a]) == base.compose(P.lam[b], P.lt(i, f)))
        rep.law("rho-naturality", f,
                lambda f=f, a=base.src[f], b=base.dst[f]:
                    base.compose(f, P.rho[a]) == base.compose(P.rho[b], P.rt(f, i)))

    for a in base.objects:
        for b in base.objects:
            for c in base.objects:
                rep.law("alpha-typing", (a, b, c),
                        lambda a=a, b=b, c=c:
                            base.src[P.alpha[(a, b, c)]] == P.ot(P.ot(a, b), c)
                            and base.dst[P.alpha[(a, b, c)]] == P.ot(a, P.ot(b, c)))
    for f in base.arrows:
        a, a2 = base.src[f], base.dst[f]
        for b in base.objects:
            for c in base.objects:
                rep.law("alpha-naturality-left", (f, b, c),
                        lambda f=f, a=a, a2=a2, b=b, c=c:
                            base.compose(P.alpha[(a2, b, c)], P.rt(P.rt(f, b), c))
                            == base.compose(P.rt(f, P.ot(b, c)), P.alpha[(a, b, c)]))
                rep.law("alpha-naturality-middle", (b, f, c),
                        lambda f=f, a=a, a2=a2, b=b, c=c:
                            base.compose(P.alpha[(b, a2, c)], P.rt(P.lt(b, f), c))
                            == base.compose(P.lt(b, P.rt(f, c)), P.alpha[(b, a, c)]))
                rep.law("alpha-naturality-right", (b, c, f),
                        lambda f=f, a=a, a2=a2, b=b, c=c:
                            base.compose(P.alpha[(b, c, a2)], P.lt(P.ot(b, c), f))
                            == base.compose(P.lt(b, P.lt(c, f)), P.alpha[(b, c, a)]))

    for a in base.objects:
        for b in base.objects:
            rep.law("triangle", (a, b),
                    lambda a=a, b=b:
                        base.compose(P.lt(a, P.lam[b]), P.alpha[(a, i, b)])
                        == P.rt(P.rho[a], b))
    for a in base.objects:
        for b in base.objects:
            for c in base.objects:
                for d in base.objects:
                    rep.law("pentagon", (a, b, c, d),
                            lambda a=a, b=b, c=c, d=d:
                                base.compose(P.alpha[(a, b, P.ot(c, d))],
                                             P.alpha[(P.ot(a, b), c, d)])
                                == base.compose(
                                    P.lt(a, P.alpha[(b, c, d)]),
                                    base.compose(P.alpha[(a, P.ot(b, c), d)],
                                                 P.rt(P.alpha[(a, b, c)], d))))

    for a in base.objects:
        rep.law("lambda-central", a, lambda a=a: is_central(P, P.lam[a]))
        rep.law("rho-central", a, lambda a=a: is_central(P, P.rho[a]))
        for b in base.objects:
            for c in base.objects:
                rep.law("alpha-central", (a, b, c),
                        lambda a=a, b=b, c=c: is_central(P, P.alpha[(a, b, c)]))
    return rep.report()


def premonoidal_centre(P):
    """The wide subcategory of central arrows, with the restricted
    premonoidal structure; monoidal because every arrow is central."""
    base = P.base
    central = [f for f in base.arrows if is_central(P, f)]
    cset = set(central)
    for a in base.objects:
        if base.identity[a] not in cset:
            raise ValueError("an identity arrow failed centrality")
    for f in central:
        for g in central:
            if base.dst[f] == base.src[g] and base.compose(g, f) not in cset:
                raise ValueError(f"centre not closed under composition at {g!r} o {f!r}")
    for u in base.objects:
        for f in central:
            if P.lt(u, f) not in cset or P.rt(f, u) not in cset:
                raise ValueError(f"centre not closed under tensor at {u!r}, {f!r}")
    comp = {(g, f): h for (g, f), h in base.comp.items() if g in cset and f in cset}
    sub = FiniteCategory(f"Z({base.name})", base.objects, tuple(central),
                         {f: base.src[f] for f in central},
                         {f: base.dst[f] for f in central},
                         dict(base.identity), comp)
    return PremonoidalData(
        sub, P.unit_obj, dict(P.ob_tensor),
        {(u, f): P.lt(u, f) for u in base.objects for f in central},
        {(f, u): P.rt(f, u) for u in base.objects for f in central},
        dict(P.lam), dict(P.rho), dict(P.alpha))


def freyd_validate(A, M, obj_map, arr_map):
    """A: monoidal PremonoidalData; M: premonoidal; the functor given by
    (obj_map, arr_map) must be bijective on objects, strict premonoidal,
    and land in central arrows."""
    rep = _Failures()
    values = [obj_map[a] for a in A.base.objects]
    rep.check(sorted(map(repr, values)) == sorted(map(repr, M.base.objects)),
              "object-bijection", values)
    if rep.items:
        return rep.report()
    try:
        F = Functor(A.base, M.base, dict(obj_map), dict(arr_map))
    except ValueError as exc:
        return StructReport((("functoriality", str(exc)),), 1)
    rep.check(obj_map[A.unit_obj] == M.unit_obj, "unit-preserved", A.unit_obj)
    for u in A.base.objects:
        for v in A.base.objects:
            rep.check(obj_map[A.ot(u, v)] == M.ot(obj_map[u], obj_map[v]),
                      "tensor-on-objects", (u, v))
    for u in A.base.objects:
        for f in A.base.arrows:
            rep.check(F(A.lt(u, f)) == M.lt(obj_map[u], F(f)),
                      "tensor-on-arrows-left", (u, f))
            rep.check(F(A.rt(f, u)) == M.rt(F(f), obj_map[u]),
                      "tensor-on-arrows-right", (f, u))
    for a in A.base.objects:
        rep.check(F(A.lam[a]) == M.lam[obj_map[a]], "lambda-preserved", a)
        rep.check(F(A.rho[a]) == M.rho[obj_map[a]], "rho-preserved", a)
        for b in A.base.objects:
            for c in A.base.objects:
                rep.check(F(A.alpha[(a, b, c)])
                          == M.alpha[(obj_map[a], obj_map[b], obj_map[c])],
                          "alpha-preserved", (a, b, c))
    for f in A.base.arrows:
        rep.check(is_central(M, F(f)), "image-central", f)
    return rep.report()


def freyd_cospan_commutes(M, X, Y):
    """Do all squares (b tensor y) o (x tensor c) = (x tensor d) o (a tensor y)
    commute?  Returns (verdict, witness)."""
    base = M.base
    for x in X:
        a, b = base.src[x], base.dst[x]
        for y in Y:
            c, d = base.src[y], base.dst[y]
            one = base.compose(M.lt(b, y), M.rt(x, c))
            two = base.compose(M.rt(x, d), M.lt(a, y))
            if one != two:
                return False, (x, y)
    return True, None


# --- canned premonoidal structures -----------------------------------------


def one_object_premonoidal(monoid, name="pm"):
    """A finite monoid as a one-object premonoidal category, whiskering
    by identities: an arrow is central iff it is central in the monoid."""
    k = monoid.k
    objects = ("star",)
    arrows = tuple(range(k))
    src = {f: "star" for f in arrows}
    dst = dict(src)
    comp = {(g, f): monoid.mul(g, f) for g in arrows for f in arrows}
    base = FiniteCategory(name, objects, arrows, src, dst,
                          {"star": monoid.unit}, comp)
    ident = monoid.unit
    return PremonoidalData(
        base, "star", {("star", "star"): "star"},
        {("star", f): f for f in arrows},
        {(f, "star"): f for f in arrows},
        {"star": ident}, {"star": ident},
        {("star", "star", "star"): ident})


def two_object_premonoidal(monoid, name="pm2"):
    """Unit object 0 plus an object 1 with endomorphism monoid `monoid`;
    tensor absorbs: u*v = max(u, v).  Central endoarrows of 1 are exactly
    the monoid's central elements."""
    objects = ("o0", "o1")
    endos = tuple(("m", v) for v in range(monoid.k))
    arrows = ("id0",) + endos
    src = {f: ("o0" if f == "id0" else "o1") for f in arrows}
    dst = dict(src)
    identity = {"o0": "id0", "o1": ("m", monoid.unit)}
    comp = {("id0", "id0"): "id0"}
    for a in range(monoid.k):
        for b in range(monoid.k):
            comp[(("m", a), ("m", b))] = ("m", monoid.mul(a, b))
    base = FiniteCategory(name, objects, arrows, src, dst, identity, comp)
    ot = {("o0", "o0"): "o0", ("o0", "o1"): "o1",
          ("o1", "o0"): "o1", ("o1", "o1"): "o1"}

    def lift(f):
        return identity["o1"] if f == "id0" else f

    ltensor = {}
    rtensor = {}
    for f in arrows:
        ltensor[("o0", f)] = f
        rtensor[(f, "o0")] = f
        ltensor[("o1", f)] = lift(f)
        rtensor[(f, "o1")] = lift(f)
    lam = {a: identity[a] for a in objects}
    rho = {a: identity[a] for a in objects}
    alpha = {(a, b, c): identity[ot[(ot[(a, b)], c)]]
             for a in objects for b in objects for c in objects}
    return PremonoidalData(base, "o0", ot, ltensor, rtensor, lam, rho, alpha)


def monoidal_subdata(P, functor_pair=None):
    """Identity packaging: a premonoidal datum in which every arrow is
    central, i.e. monoidal data (checked)."""
    bad = [f for f in P.base.arrows if not is_central(P, f)]
    if bad:
        raise ValueError(f"non-central arrows present: {bad[:3]}")
    return P


# ---------------------------------------------------------------------------
# file formats


def _parse_category_items(ts):
    objects = []
    arrows = []
    src = {}
    dst = {}
    identity = {}
    comp = {}
    extra = []
    while not ts.at("}"):
        item = ts.expect_kind("ident")
        if item.text == "obj":
            while True:
                objects.append(ts.expect_ident())
                if not ts.accept(","):
                    break
        elif item.text == "arrow":
            f = ts.expect_ident()
            ts.expect(":")
            a = ts.expect_ident()
            ts.expect("->")
            b = ts.expect_ident()
            arrows.append(f)
            src[f] = a
            dst[f] = b
        elif item.text == "id":
            a = ts.expect_ident()
            ts.expect("=")
            identity[a] = ts.expect_ident()
        elif item.text == "comp":
            g = ts.expect_ident()
            ts.expect(".")
            f = ts.expect_ident()
            ts.expect("=")
            comp[(g, f)] = ts.expect_ident()
        else:
            extra.append(item)
            ts.expect(";")
            continue
        ts.expect(";")
    if extra:
        raise ParseError(f"unknown category item {extra[0].text!r}",
                         extra[0].line, extra[0].col)
    return objects, arrows, src, dst, identity, comp


def parse_category(text):
    ts = TokenStream(tokenize(text))
    kw = ts.expect_kind("ident")
    if kw.text != "category":
        raise ParseError(f"expected 'category', found {kw.text!r}", kw.line, kw.col)
    name = ts.expect_ident()
    ts.expect("{")
    objects, arrows, src, dst, identity, comp = _parse_category_items(ts)
    ts.expect("}")
    ts.expect_eof()
    try:
        return FiniteCategory(name, tuple(objects), tuple(arrows), src, dst,
                              identity, comp)
    except (ValueError, KeyError) as exc:
        raise ParseError(f"bad category: {exc}") from None


def parse_sesqui(text):
    """Category items plus `cell a : f => g;`, `idcell f = a;`,
    `whiskL h.a = b;`, `whiskR a.k = b;`, `vcomp b.a = c;`."""
    ts = TokenStream(tokenize(text))
    kw = ts.expect_kind("ident")
    if kw.text != "sesqui":
        raise ParseError(f"expected 'sesqui', found {kw.text!r}", kw.line, kw.col)
    name = ts.expect_ident()
    ts.expect("{")
    objects = []
    arrows = []
    src = {}
    dst = {}
    identity = {}
    comp = {}
    cells = {}
    cell_src = {}
    cell_dst = {}
    id2 = {}
    whisk_l = {}
    whisk_r = {}
    vcomp = {}
    while not ts.at("}"):
        item = ts.expect_kind("ident")
        if item.text == "obj":
            while True:
                objects.append(ts.expect_ident())
                if not ts.accept(","):
                    break
        elif item.text == "arrow":
            f = ts.expect_ident()
            ts.expect(":")
            a = ts.expect_ident()
            ts.expect("->")
            b = ts.expect_ident()
            arrows.append(f)
            src[f] = a
            dst[f] = b
        elif item.text == "id":
            a = ts.expect_ident()
            ts.expect("=")
            identity[a] = ts.expect_ident()
        elif item.text == "comp":
            g = ts.expect_ident()
            ts.expect(".")
            f = ts.expect_ident()
            ts.expect("=")
            comp[(g, f)] = ts.expect_ident()
        elif item.text == "cell":
            c = ts.expect_ident()
            ts.expect(":")
            f = ts.expect_ident()
            ts.expect("=>")
            g = ts.expect_ident()
            cells.setdefault((f, g), ())
            cells[(f, g)] = cells[(f, g)] + (c,)
            cell_src[c] = f
            cell_dst[c] = g
        elif item.text == "idcell":
            f = ts.expect_ident()
            ts.expect("=")
            id2[f] = ts.expect_ident()
        elif item.text == "whiskL":
            h = ts.expect_ident()
            ts.expect(".")
            a = ts.expect_ident()
            ts.expect("=")
            whisk_l[(h, a)] = ts.expect_ident()
        elif item.text == "whiskR":
            a = ts.expect_ident()
            ts.expect(".")
            k = ts.expect_ident()
            ts.expect("=")
            whisk_r[(a, k)] = ts.expect_ident()
        elif item.text == "vcomp":
            b = ts.expect_ident()
            ts.expect(".")
            a = ts.expect_ident()
            ts.expect("=")
            vcomp[(b, a)] = ts.expect_ident()
        else:
            ts.error(f"unknown sesqui item {item.text!r}")
        ts.expect(";")
    ts.expect("}")
    ts.expect_eof()
    try:
        base = FiniteCategory(name, tuple(objects), tuple(arrows), src, dst,
                              identity, comp)
        return SesquiData(base, cells, cell_src, cell_dst, id2,
                          whisk_l, whisk_r, vcomp)
    except (ValueError, KeyError) as exc:
        raise ParseError(f"bad sesqui data: {exc}") from None


def parse_premonoidal(text):
    """Category items plus `unit a;`, `tensor a*b = c;`,
    `ltensor a*f = g;`, `rtensor f*a = g;`, `lambda a = f;`,
    `rho a = f;`, `assoc a,b,c = f;`."""
    ts = TokenStream(tokenize(text))
    kw = ts.expect_kind("ident")
    if kw.text != "premonoidal":
        raise ParseError(f"expected 'premonoidal', found {kw.text!r}", kw.line, kw.col)
    name = ts.expect_ident()
    ts.expect("{")
    objects = []
    arrows = []
    src = {}
    dst = {}
    identity = {}
    comp = {}
    unit_obj = None
    ob_tensor = {}
    ltensor = {}
    rtensor = {}
    lam = {}
    rho = {}
    alpha = {}
    while not ts.at("}"):
        item = ts.expect_kind("ident")
        if item.text == "obj":
            while True:
                objects.append(ts.expect_ident())
                if not ts.accept(","):
                    break
        elif item.text == "arrow":
            f = ts.expect_ident()
            ts.expect(":")
            a = ts.expect_ident()
            ts.expect("->")
            b = ts.expect_ident()
            arrows.append(f)
            src[f] = a
            dst[f] = b
        elif item.text == "id":
            a = ts.expect_ident()
            ts.expect("=")
            identity[a] = ts.expect_ident()
        elif item.text == "comp":
            g = ts.expect_ident()
            ts.expect(".")
            f = ts.expect_ident()
            ts.expect("=")
            comp[(g, f)] = ts.expect_ident()
        elif item.text == "unit":
            unit_obj = ts.expect_ident()
        elif item.text == "tensor":
            a = ts.expect_ident()
            ts.expect("*")
            b = ts.expect_ident()
            ts.expect("=")
            ob_tensor[(a, b)] = ts.expect_ident()
        elif item.text == "ltensor":
            a = ts.expect_ident()
            ts.expect("*")
            f = ts.expect_ident()
            ts.expect("=")
            ltensor[(a, f)] = ts.expect_ident()
        elif item.text == "rtensor":
            f = ts.expect_ident()
            ts.expect("*")
            a = ts.expect_ident()
            ts.expect("=")
            rtensor[(f, a)] = ts.expect_ident()
        elif item.text == "lambda":
            a = ts.expect_ident()
            ts.expect("=")
            lam[a] = ts.expect_ident()
        elif item.text == "rho":
            a = ts.expect_ident()
            ts.expect("=")
            rho[a] = ts.expect_ident()
        elif item.text == "assoc":
            a = ts.expect_ident()
            ts.expect(",")
            b = ts.expect_ident()
            ts.expect(",")
            c = ts.expect_ident()
            ts.expect("=")
            alpha[(a, b, c)] = ts.expect_ident()
        else:
            ts.error(f"unknown premonoidal item {item.text!r}")
        ts.expect(";")
    ts.expect("}")
    ts.expect_eof()
    if unit_obj is None:
        raise ParseError("premonoidal file needs a unit object")
    try:
        base = FiniteCategory(name, tuple(objects), tuple(arrows), src, dst,
                              identity, comp)
        return PremonoidalData(base, unit_obj, ob_tensor, ltensor, rtensor,
                               lam, rho, alpha)
    except (ValueError, KeyError) as exc:
        raise ParseError(f"bad premonoidal data: {exc}") from None
