"""The `catcom` command line: load input files, dispatch checks, emit
reports.

Exit codes: 0 = pass/true, 1 = fail/false (with witness), 2 = unknown
(bound exhausted), 3 = input error.  Structured output is line-oriented
`key: value` with a final `verdict:` line and no timing, so identical
invocations are bit-identical.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from dataclasses import dataclass, field

from . import clone as _clone
from . import model as _model
from . import operad as _operad
from . import structcat as _structcat
from . import tensor as _tensor
from . import term as _term
from ._lex import ParseError

DEFAULT_BOUNDS = {"arity": 4, "size": 3, "depth": 5, "model_bound": 4, "word_len": 8}


@dataclass
class Report:
    verdict: str                 # pass | fail | unknown
    witnesses: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    timing: float = None

    def exit_code(self):
        return {"pass": 0, "fail": 1, "unknown": 2}[self.verdict]


def report_render(r, fmt="text"):
    lines = []
    for k in sorted(r.bounds):
        lines.append(f"bound.{k}: {r.bounds[k]}")
    for k in sorted(r.counts):
        lines.append(f"{k}: {r.counts[k]}")
    for i, w in enumerate(r.witnesses):
        lines.append(f"witness.{i}: {w}")
    if fmt == "text" and r.timing is not None:
        lines.append(f"time: {r.timing:.3f}s")
    lines.append(f"verdict: {r.verdict}")
    return "\n".join(lines) + "\n"


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _flat(text):
    return " ".join(text.split())


def _ops_pair(opt):
    if opt is None:
        raise ParseError("this check needs --ops f,g")
    parts = [p.strip() for p in opt.split(",")]
    if len(parts) != 2:
        raise ParseError("--ops takes exactly two comma-separated names")
    return parts


# ---------------------------------------------------------------------------
# verb implementations


def _cmd_check_theory(args, bounds):
    pres = _term.parse_presentation(_read(args.input[0]))
    return Report("pass",
                  counts={"theory": pres.name,
                          "operations": len(pres.signature.operations),
                          "equations": len(pres.equations)},
                  bounds=bounds)


def _find_basic_op(c, alg, sym):
    arity = alg.signature.arity(sym)
    table = alg.tables[sym]
    for f in c.elements(arity):
        if c.payload(f) == table:
            return f
    raise ParseError(f"operation {sym!r} not found in the clone truncation")


def _cmd_commute(args, bounds):
    path = args.input[0]
    if path.endswith(".alg"):
        alg = _clone.parse_algebra(_read(path))
        c = _clone.clone_of_algebra(alg, bounds["arity"])
        if args.ops in (None, "all"):
            verdict = _clone.is_commutative_clone(c)
            if verdict.commutative:
                return Report("pass", counts={"commutative_up_to": c.bound}, bounds=bounds)
            f, g = verdict.witness
            wit = _clone.commuting_witness(c.payload(f), f.arity,
                                           c.payload(g), g.arity, alg.k)
            return Report("fail",
                          witnesses=[f"pair T({f.arity})#{f.index} T({g.arity})#{g.index}",
                                     f"assignment {list(wit)}"],
                          bounds=bounds)
        f_sym, g_sym = _ops_pair(args.ops)
        f = _find_basic_op(c, alg, f_sym)
        g = _find_basic_op(c, alg, g_sym)
        if _clone.op_commutes(c, f, g):
            return Report("pass", counts={"ops": f"{f_sym},{g_sym}"}, bounds=bounds)
        wit = _clone.commuting_witness(c.payload(f), f.arity, c.payload(g),
                                       g.arity, alg.k)
        return Report("fail", witnesses=[f"assignment {list(wit)}"], bounds=bounds)
    if path.endswith(".mon"):
        M = _tensor.parse_monoid(_read(path))
        ident = _tensor.identity_map(M)
        if _tensor.monoid_cospan_commutes(ident, ident):
            return Report("pass", counts={"carrier": M.k}, bounds=bounds)
        a, b = _tensor.cospan_witness(ident, ident)
        return Report("fail", witnesses=[f"elements {a},{b}"], bounds=bounds)
    pres = _term.parse_presentation(_read(path))
    f_sym, g_sym = _ops_pair(args.ops)
    n = pres.signature.arity(f_sym)
    m = pres.signature.arity(g_sym)
    f = _term.App(f_sym, tuple(_term.Var(i) for i in range(1, n + 1)))
    g = _term.App(g_sym, tuple(_term.Var(i) for i in range(1, m + 1)))
    eq = _term.commutation_equation(f, g, f_arity=n, g_arity=m)
    verdict = _term.decide_equal(pres, eq, depth_bound=bounds["depth"],
                                 model_bound=bounds["model_bound"])
    if isinstance(verdict, _term.Proved):
        return Report("pass",
                      counts={"universe": verdict.certificate.universe_size},
                      bounds=bounds)
    if isinstance(verdict, _term.Refuted):
        return Report("fail",
                      witnesses=[_flat(_model.render_model(verdict.model, "witness")),
                                 f"assignment {list(verdict.assignment)}"],
                      bounds=bounds)
    return Report("unknown", counts={"diagnostics": verdict.diagnostics}, bounds=bounds)


def _cmd_tensor(args, bounds):
    S = _term.parse_presentation(_read(args.input[0]))
    T = _term.parse_presentation(_read(args.input[1]))
    U = _tensor.commuting_tensor_presentation(S, T)
    text = _term.render_presentation(U)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return Report("pass",
                  counts={"operations": len(U.signature.operations),
                          "equations": len(U.equations),
                          "rendered": _flat(text)},
                  bounds=bounds)


def _cmd_models(args, bounds):
    pres = _term.parse_presentation(_read(args.input[0]))
    models = _model.enumerate_models(pres, bounds["size"])
    return Report("pass", counts={"models": len(models), "carrier": bounds["size"]},
                  bounds=bounds)


def _cmd_verify_tensor(args, bounds):
    S = _term.parse_presentation(_read(args.input[0]))
    T = _term.parse_presentation(_read(args.input[1]))
    rep = _model.verify_tensor_correspondence(S, T, bounds["size"])
    counts = {"tensor_models": rep.tensor_count, "commuting_pairs": rep.pair_count}
    if rep.ok:
        return Report("pass", counts=counts, bounds=bounds)
    return Report("fail", witnesses=[rep.failure], counts=counts, bounds=bounds)


def _cmd_clone(args, bounds):
    alg = _clone.parse_algebra(_read(args.input[0]))
    c = _clone.clone_of_algebra(alg, bounds["arity"])
    rep = _clone.validate_clone(c, arity_cap=min(2, c.bound))
    verdict = _clone.is_commutative_clone(c)
    counts = {"sizes": [c.size(n) for n in range(c.bound + 1)],
              "commutative": verdict.commutative}
    if rep.passed:
        return Report("pass", counts=counts, bounds=bounds)
    return Report("fail", witnesses=[f"{law}: {wit}" for law, wit in rep.failures],
                  counts=counts, bounds=bounds)


def _cmd_centralizer(args, bounds):
    path = args.input[0]
    if path.endswith(".mon"):
        M = _tensor.parse_monoid(_read(path))
        Z = _tensor.monoid_centre(M)
        return Report("pass",
                      counts={"carrier": M.k, "centre_size": Z.k,
                              "centre_elements": list(Z.labels)},
                      bounds=bounds)
    alg = _clone.parse_algebra(_read(path))
    c = _clone.centralizer_clone(alg, bounds["arity"])
    rep = _clone.validate_clone(c, arity_cap=min(2, c.bound))
    counts = {"sizes": [c.size(n) for n in range(c.bound + 1)]}
    if rep.passed:
        return Report("pass", counts=counts, bounds=bounds)
    return Report("fail", witnesses=[f"{law}: {wit}" for law, wit in rep.failures],
                  counts=counts, bounds=bounds)


def _load_operad(spec, bound):
    low = spec.lower()
    if low == "ass":
        return _operad.ass_truncation(bound)
    if low == "com":
        return _operad.com_truncation(bound)
    return _operad.parse_operad_truncation(_read(spec))


def _load_operad_presentation(spec):
    low = spec.lower()
    builders = {"ass": _operad.ass_presentation,
                "ass_unital": _operad.ass_unital_presentation,
                "com": _operad.com_presentation,
                "trivial": _operad.trivial_presentation}
    if low in builders:
        return builders[low]()
    return _operad.parse_operad_presentation(_read(spec))


def _cmd_operad(args, bounds):
    O = _load_operad(args.input[0], bounds["arity"])
    if args.ops:
        fa, ga = _ops_pair(args.ops)
        by_label = {O.label(x): x for n in range(O.bound + 1) for x in O.elements(n)}
        if fa not in by_label or ga not in by_label:
            raise ParseError(f"unknown operad elements {fa!r}, {ga!r};"
                             f" known: {sorted(by_label)}")
        ok = _operad.operad_pair_commutes(O, by_label[fa], by_label[ga])
        if ok:
            return Report("pass", counts={"ops": args.ops}, bounds=bounds)
        return Report("fail", witnesses=[f"pair {fa},{ga}"], bounds=bounds)
    rep = _operad.validate_operad(O)
    counts = {"sizes": list(O.sizes), "instances": rep.instances}
    if rep.passed:
        return Report("pass", counts=counts, bounds=bounds)
    return Report("fail", witnesses=[f"{law}: {wit}" for law, wit in rep.failures],
                  counts=counts, bounds=bounds)


def _cmd_bv(args, bounds):
    P1 = _load_operad_presentation(args.input[0])
    P2 = _load_operad_presentation(args.input[1])
    U = _operad.bv_tensor_presentation(P1, P2)
    gens = " ".join(f"{g}:{a}" for g, a in U.generators.items())
    rels = "; ".join(f"{l!r} = {r!r}" for l, r in U.relations)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(f"operad_pres {U.name} {{\n")
            for g, a in U.generators.items():
                fh.write(f"  gen {g}:{a};\n")
            for l, r in U.relations:
                fh.write(f"  rel {l!r} = {r!r};\n")
            fh.write("}\n")
    return Report("pass",
                  counts={"generators": gens, "relations": len(U.relations),
                          "rendered_relations": rels},
                  bounds=bounds)


def _cmd_cat(args, bounds):
    first = _structcat.parse_category(_read(args.input[0]))
    if len(args.input) == 1:
        return Report("pass",
                      counts={"objects": len(first.objects),
                              "arrows": len(first.arrows)},
                      bounds=bounds)
    second = _structcat.parse_category(_read(args.input[1]))
    conf = _structcat.local_confluence_report(first, second, max_len=4)
    ft = _structcat.funny_tensor(first, second)
    counts = {"confluence_instances": conf.instances}
    truncated_any = False
    for a in first.objects:
        for b in second.objects:
            for c in first.objects:
                for d in second.objects:
                    words, truncated = ft.hom_words((a, b), (c, d),
                                                    max_len=bounds["word_len"])
                    truncated_any = truncated_any or truncated
                    counts[f"hom[{a},{b}->{c},{d}]"] = len(words)
    counts["truncated"] = truncated_any
    if conf.passed:
        return Report("pass", counts=counts, bounds=bounds)
    return Report("fail", witnesses=[str(w) for _, w in conf.failures[:4]],
                  counts=counts, bounds=bounds)


def _cmd_sesqui(args, bounds):
    S = _structcat.parse_sesqui(_read(args.input[0]))
    rep = _structcat.sesqui_validate(S)
    if not rep.passed:
        return Report("fail", witnesses=[f"{law}: {wit}" for law, wit in rep.failures],
                      bounds=bounds)
    witnesses = _structcat.sesqui_interchange(S)
    counts = {"cells": sum(len(cs) for cs in S.cells.values()),
              "is_2_category": not witnesses}
    if not witnesses:
        return Report("pass", counts=counts, bounds=bounds)
    return Report("fail", witnesses=[f"pair {a},{b}" for a, b in witnesses],
                  counts=counts, bounds=bounds)


def _cmd_premonoidal(args, bounds):
    P = _structcat.parse_premonoidal(_read(args.input[0]))
    rep = _structcat.premonoidal_validate(P)
    central = [f for f in P.base.arrows if _structcat.is_central(P, f)]
    counts = {"arrows": len(P.base.arrows), "central": len(central)}
    if rep.passed:
        return Report("pass", counts=counts, bounds=bounds)
    return Report("fail", witnesses=[f"{law}: {wit}" for law, wit in rep.failures],
                  counts=counts, bounds=bounds)


def _parse_functor_map(text):
    obj_map = {}
    arr_map = {}
    from ._lex import TokenStream, tokenize
    ts = TokenStream(tokenize(text))
    while ts.peek().kind != "eof":
        item = ts.expect_kind("ident")
        if item.text == "obj":
            a = ts.expect_ident()
            ts.expect("=")
            obj_map[a] = ts.expect_ident()
        elif item.text == "arrow":
            f = ts.expect_ident()
            ts.expect("=")
            arr_map[f] = ts.expect_ident()
        else:
            ts.error("functor map lines are `obj a = b;` or `arrow f = g;`")
        ts.expect(";")
    return obj_map, arr_map


def _cmd_freyd(args, bounds):
    M = _structcat.parse_premonoidal(_read(args.input[0]))
    rep = _structcat.premonoidal_validate(M)
    if not rep.passed:
        return Report("fail",
                      witnesses=[f"{law}: {wit}" for law, wit in rep.failures],
                      bounds=bounds)
    if args.source:
        A = _structcat.parse_premonoidal(_read(args.source))
        if args.map:
            obj_map, arr_map = _parse_functor_map(_read(args.map))
        else:
            obj_map = {o: o for o in A.base.objects}
            arr_map = {f: f for f in A.base.arrows}
    else:
        A = _structcat.premonoidal_centre(M)
        obj_map = {o: o for o in A.base.objects}
        arr_map = {f: f for f in A.base.arrows}
    frep = _structcat.freyd_validate(A, M, obj_map, arr_map)
    counts = {"source_arrows": len(A.base.arrows),
              "target_arrows": len(M.base.arrows)}
    if frep.passed:
        return Report("pass", counts=counts, bounds=bounds)
    return Report("fail", witnesses=[f"{law}: {wit}" for law, wit in frep.failures],
                  counts=counts, bounds=bounds)


def _cmd_graded(args, bounds):
    C = _tensor.parse_graded(_read(args.input[0]))
    f_name, g_name = _ops_pair(args.ops)
    names = [b[0] for b in C.basis]
    for nm in (f_name, g_name):
        if nm not in names:
            raise ParseError(f"unknown basis element {nm!r}; known: {names}")
    f = C.basis_vector(names.index(f_name))
    g = C.basis_vector(names.index(g_name))
    left, right = _tensor.graded_q_cospan_commutes(C, f, g)
    counts = {"left": left, "right": right}
    if args.left and not args.right:
        verdict = "pass" if left else "fail"
    elif args.right and not args.left:
        verdict = "pass" if right else "fail"
    else:
        verdict = "pass" if (left and right) else "fail"
    wit = [] if verdict == "pass" else [f"pair {f_name},{g_name}"]
    return Report(verdict, witnesses=wit, counts=counts, bounds=bounds)


# ---------------------------------------------------------------------------
# random corpus generation


def _random_term(rng, ops, size, var_count):
    if size <= 0 or rng.random() < 0.4:
        return _term.Var(rng.randint(1, var_count))
    sym = rng.choice(sorted(ops))
    if ops[sym] == 0:
        return _term.App(sym)
    return _term.App(sym, tuple(_random_term(rng, ops, size - 1, var_count)
                                for _ in range(ops[sym])))


def random_presentation(rng, max_ops=3, max_eqs=3, max_arity=2, max_vars=3,
                        max_size=3):
    ops = {}
    for i in range(rng.randint(1, max_ops)):
        ops[f"op{i}"] = rng.randint(0, max_arity)
    if not any(a > 0 for a in ops.values()):
        ops["op_bin"] = rng.randint(1, max_arity)
    sig = _term.Signature(f"rand{rng.randint(0, 10 ** 6)}", ops)
    eqs = []
    for _ in range(rng.randint(0, max_eqs)):
        var_count = rng.randint(1, max_vars)
        lhs = _random_term(rng, ops, rng.randint(0, max_size), var_count)
        rhs = _random_term(rng, ops, rng.randint(0, max_size), var_count)
        eqs.append(_term.Equation(lhs, rhs, var_count))
    return _term.Presentation(sig, tuple(eqs))


def random_case(rng):
    """A random presentation plus a random query equation over it."""
    pres = random_presentation(rng)
    ops = pres.signature.operations
    var_count = rng.randint(1, 3)
    eq = _term.Equation(_random_term(rng, ops, rng.randint(0, 3), var_count),
                        _random_term(rng, ops, rng.randint(0, 3), var_count),
                        var_count)
    return pres, eq


def _cmd_gen(args, bounds):
    seed = args.seed if args.seed is not None else 0
    rng = random.Random(seed)
    count = args.count
    chunks = []
    for i in range(count):
        pres, eq = random_case(rng)
        chunks.append(f"# case {i}\n{_term.render_presentation(pres)}"
                      f"# query: {_term.render_term(eq.lhs)} = {_term.render_term(eq.rhs)}\n")
    text = "\n".join(chunks)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    bounds = dict(bounds)
    bounds["seed"] = seed
    return Report("pass", counts={"cases": count}, bounds=bounds)


# ---------------------------------------------------------------------------
# dispatch


_VERBS = {
    "check-theory": (_cmd_check_theory, 1),
    "commute": (_cmd_commute, 1),
    "tensor": (_cmd_tensor, 2),
    "models": (_cmd_models, 1),
    "verify-tensor": (_cmd_verify_tensor, 2),
    "clone": (_cmd_clone, 1),
    "centralizer": (_cmd_centralizer, 1),
    "operad": (_cmd_operad, 1),
    "bv": (_cmd_bv, 2),
    "cat": (_cmd_cat, (1, 2)),
    "sesqui": (_cmd_sesqui, 1),
    "premonoidal": (_cmd_premonoidal, 1),
    "freyd": (_cmd_freyd, 1),
    "graded": (_cmd_graded, 1),
    "gen": (_cmd_gen, 0),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="catcom",
        description="commutativity checks for theories, clones, models,"
                    " monoids, operads and 2-dimensional structures")
    parser.add_argument("verb", choices=sorted(_VERBS))
    parser.add_argument("input", nargs="*")
    parser.add_argument("--arity", type=int, default=DEFAULT_BOUNDS["arity"],
                        help="clone/operad truncation bound N")
    parser.add_argument("--size", type=int, default=DEFAULT_BOUNDS["size"],
                        help="carrier size K for model enumeration")
    parser.add_argument("--depth", type=int, default=DEFAULT_BOUNDS["depth"],
                        help="term-size bound D for proof search")
    parser.add_argument("--model-bound", type=int,
                        default=DEFAULT_BOUNDS["model_bound"],
                        help="countermodel size bound B")
    parser.add_argument("--word-len", type=int, default=DEFAULT_BOUNDS["word_len"],
                        help="funny-tensor word length bound L")
    parser.add_argument("--ops", help="pair of operation names f,g (or 'all')")
    parser.add_argument("--out", help="write the constructed artifact here")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for `gen` (recorded; checks are deterministic)")
    parser.add_argument("--count", type=int, default=10, help="cases for `gen`")
    parser.add_argument("--left", action="store_true",
                        help="graded: report the left commutation verdict")
    parser.add_argument("--right", action="store_true",
                        help="graded: report the right commutation verdict")
    parser.add_argument("--source", help="freyd: premonoidal file for the source")
    parser.add_argument("--map", help="freyd: functor map file")
    return parser


def dispatch(args):
    handler, want = _VERBS[args.verb]
    wanted = want if isinstance(want, tuple) else (want,)
    if len(args.input) not in wanted:
        raise ParseError(f"verb {args.verb!r} takes {want} input file(s),"
                         f" got {len(args.input)}")
    bounds = {"arity": args.arity, "size": args.size, "depth": args.depth,
              "model_bound": args.model_bound, "word_len": args.word_len}
    if args.seed is not None:
        bounds["seed"] = args.seed
    started = time.monotonic()
    report = handler(args, bounds)
    report.timing = time.monotonic() - started
    return report


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if os.environ.get("CATCOM_THREADS"):
        pass  # accepted; all algorithms are single-threaded and deterministic
    try:
        report = dispatch(args)
    except (ParseError, OSError, _term.ResourceCeiling, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(report_render(report, args.format))
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
