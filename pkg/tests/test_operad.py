import itertools

import pytest

from catcom import clone as cl
from catcom import operad as op
from catcom.clone import transpose_perm


_CACHE = {}


def ass(K=4):
    if ("ass", K) not in _CACHE:
        _CACHE[("ass", K)] = op.ass_truncation(K)
    return _CACHE[("ass", K)]


def com(K=4):
    if ("com", K) not in _CACHE:
        _CACHE[("com", K)] = op.com_truncation(K)
    return _CACHE[("com", K)]


def by_label(O, label):
    for n in range(O.bound + 1):
        for x in O.elements(n):
            if O.label(x) == label:
                return x
    raise AssertionError(f"no element labelled {label!r}")


# ---------------------------------------------------------------------------
# validation


def test_com_validates():
    rep = op.validate_operad(com(4))
    assert rep.passed


def test_ass_validates_exhaustively_at_3():
    rep = op.validate_operad(ass(3), instance_cap=10 ** 9)
    assert rep.passed and rep.instances < 10 ** 6


def test_ass_validates_at_4_within_budget():
    rep = op.validate_operad(ass(4))
    assert rep.passed


def test_seeded_equivariance_defect_is_named():
    # trivialise the S_2 action on O(2) of Ass(3); the action laws still
    # hold, so the failure must be reported as equivariance
    base = op.ass_truncation(3)
    act = dict(base._act)
    for i in range(base.sizes[2]):
        act[(2, i, (1, 0))] = i
    bad = op.SymOperadTruncation(base.sizes, base.unit.index, act, base._gamma,
                                 name="Ass-broken", labels=base.labels)
    rep = op.validate_operad(bad)
    assert not rep.passed
    laws = {law for law, _ in rep.failures}
    assert any("equivariance" in law for law in laws)
    assert not any(law.startswith("action") for law in laws)


# ---------------------------------------------------------------------------
# composition


def test_gamma_unit_laws():
    A = ass(4)
    for n in range(5):
        for x in A.elements(n):
            assert A.gamma(A.unit, [x]) == x
            if n:
                assert A.gamma(x, [A.unit] * n) == x


def test_gamma_block_examples():
    A = ass(4)
    e2 = by_label(A, "12")
    e1 = A.unit
    assert A.label(A.gamma(e2, [e2, e1])) == "123"
    swap = by_label(A, "21")
    # swap with units on both inputs is still the swap
    assert A.gamma(swap, [e1, e1]) == swap


def test_gamma_bound_errors():
    A = ass(4)
    e2 = by_label(A, "12")
    e4 = by_label(A, "1234")
    with pytest.raises(cl.ArityBoundError):
        A.gamma(e2, [e4, e4])


# ---------------------------------------------------------------------------
# pairwise commutation


def test_com_fully_commuting():
    C = com(4)
    for n in range(5):
        for m in range(5):
            if n * m > 4:
                continue
            for f in C.elements(n):
                for g in C.elements(m):
                    assert op.operad_pair_commutes(C, f, g)


def test_ass_e2_pair_fails():
    A = ass(4)
    e2 = by_label(A, "12")
    assert not op.operad_pair_commutes(A, e2, e2)
    # gamma(e2; e2, e2) is the 4-ary identity word, and acting by the
    # transpose moves it
    e4 = A.gamma(e2, [e2, e2])
    assert A.label(e4) == "1234"
    sigma = transpose_perm(2, 2).values
    assert A.act(e4, sigma) != e4


def test_unit_commutes_with_everything():
    A = ass(4)
    for n in range(5):
        for x in A.elements(n):
            if n <= 4:
                assert op.operad_pair_commutes(A, A.unit, x)
                assert op.operad_pair_commutes(A, x, A.unit)


def test_commutation_predicate_transpose_convention_invariant():
    # using the other reading of the flattening conjugates the candidate
    # permutation; the commutation verdict is unchanged
    A = ass(4)
    for n, m in ((2, 2), (1, 3), (4, 1)):
        for psi in A.elements(n):
            for phi in A.elements(m):
                lhs = A.gamma(psi, [phi] * n)
                rhs = A.gamma(phi, [psi] * m)
                one = lhs == A.act(rhs, transpose_perm(n, m).values)
                other = rhs == A.act(lhs, transpose_perm(m, n).values)
                assert one == other


# ---------------------------------------------------------------------------
# the theory functor


def test_theory_of_com_counts():
    th = op.theory_of_operad(op.com_truncation(2), 2)
    assert th.size(2) == 6  # multisets of size <= 2 over two variables
    th1 = op.theory_of_operad(op.com_truncation(4), 1)
    assert th1.size(1) == 5  # one orbit per operation arity 0..4


def test_theory_of_ass_unary_orbits():
    th = op.theory_of_operad(ass(4), 4)
    assert th.size(1) == 5  # S_k acts transitively on itself
    assert th.size(4) == 1 + 4 + 16 + 64 + 256


def test_theory_of_trivial_operad_is_projections():
    sizes = [0, 1]
    act = {(1, 0, (0,)): 0}
    gamma = {(1, 0, ((1, 0),)): 0}
    trivial = op.SymOperadTruncation(sizes, 0, act, gamma, name="unit-operad")
    th = op.theory_of_operad(trivial, 3)
    for n in range(1, 4):
        assert th.size(n) == n
        for i in range(n):
            assert th.unit(n, i) in th.elements(n)


def test_theory_clone_validates():
    th = op.theory_of_operad(op.com_truncation(3), 2)
    rep = cl.validate_clone(th)
    assert rep.passed
    assert rep.skipped > 0  # truncation makes substitution partial
    th2 = op.theory_of_operad(ass(2), 2)
    assert cl.validate_clone(th2).passed


def test_oracle_equivalence_operads_vs_clones():
    for O in (ass(4), com(4)):
        th = op.theory_of_operad(O, 4)
        for n in range(5):
            for m in range(5):
                if n * m > 4:
                    continue
                for psi in O.elements(n):
                    for phi in O.elements(m):
                        assert op.operad_pair_commutes(O, psi, phi) == \
                            cl.op_commutes(th, th.from_operad(psi), th.from_operad(phi))


# ---------------------------------------------------------------------------
# presentations, algebras, the BV tensor


def test_presentation_validation():
    with pytest.raises(ValueError):
        op.OperadPresentation("bad", {"m": 2},
                              ((op.Node("m", (op.Leaf(1), op.Leaf(1))), op.Leaf(1)),))


def test_ass_algebra_counts():
    assert len(op.enumerate_operad_algebras(op.ass_presentation(), 2)) == 8
    assert len(op.enumerate_operad_algebras(op.ass_unital_presentation(), 2)) == 4
    assert len(op.enumerate_operad_algebras(op.trivial_presentation(), 2)) == 1
    assert len(op.enumerate_operad_algebras(op.trivial_presentation(), 5)) == 1


def test_bv_ass_ass_k2():
    bv = op.bv_tensor_presentation(op.ass_unital_presentation(),
                                   op.ass_unital_presentation())
    algs = op.enumerate_operad_algebras(bv, 2)
    assert len(algs) == 4
    for a in algs:
        t = a.tables["m_1"]
        assert t == a.tables["m_2"]
        assert all(t[2 * x + y] == t[2 * y + x] for x in range(2) for y in range(2))


def test_bv_with_trivial_is_identity():
    P = op.ass_unital_presentation()
    U = op.bv_tensor_presentation(P, op.trivial_presentation())
    assert U.generators == P.generators
    assert U.relations == P.relations


def test_bv_com_com_counts_match_com():
    P = op.com_presentation()
    U = op.bv_tensor_presentation(P, P)
    for k in (1, 2, 3):
        assert len(op.enumerate_operad_algebras(U, k)) == \
            len(op.enumerate_operad_algebras(P, k))


def test_algebra_count_identity():
    P1 = op.ass_unital_presentation()
    P2 = op.com_presentation()
    for k in (1, 2, 3):
        U = op.bv_tensor_presentation(P1, P2)
        assert len(op.enumerate_operad_algebras(U, k)) == \
            len(op.interchanging_algebra_pairs(P1, P2, k))


def test_bv_relation_shape():
    U = op.bv_tensor_presentation(op.ass_presentation(), op.ass_presentation())
    inter = [r for r in U.relations
             if isinstance(r[0], op.Node) and r[0].gen == "m_1"
             and all(isinstance(c, op.Node) and c.gen == "m_2" for c in r[0].children)]
    assert len(inter) == 1
    lhs, rhs = inter[0]
    assert repr(lhs) == "m_1(m_2(1,2),m_2(3,4))"
    assert repr(rhs) == "m_2(m_1(1,3),m_1(2,4))"


# ---------------------------------------------------------------------------
# file formats


def test_parse_operad_presentation_with_perm():
    text = """
    operad_pres bv {
      gen psi:2; gen phi:2;
      rel psi(phi(1,2),phi(3,4)) = phi(psi(1,2),psi(3,4)) . perm(1,3,2,4);
    }
    """
    P = op.parse_operad_presentation(text)
    lhs, rhs = P.relations[0]
    assert repr(rhs) == "phi(psi(1,3),psi(2,4))"


def test_parse_operad_truncation_roundtrip():
    text = """
    operad tiny {
      bound 2;
      elems 1 : id;
      elems 2 : m, w;
      unit id;
      act m . perm(2,1) = w;
      act w . perm(2,1) = m;
      gamma id (id) = id;
      gamma id (m) = m;
      gamma id (w) = w;
      gamma m (id, id) = m;
      gamma w (id, id) = w;
    }
    """
    O = op.parse_operad_truncation(text)
    assert O.sizes == [0, 1, 2]
    rep = op.validate_operad(O)
    assert rep.passed
    m = by_label(O, "m")
    w = by_label(O, "w")
    assert O.act(m, (1, 0)) == w
    assert op.operad_pair_commutes(O, m, O.unit)
