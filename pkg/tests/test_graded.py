import random
from fractions import Fraction

import pytest

from knotcob.errors import NotANormal, NotNormal, NotSkew, SizeCap, WrongRing
from knotcob.fuzz import random_skew_matrix
from knotcob.graded import (
    TRIVIAL,
    GradedMatrix,
    add_type1,
    bar,
    canonical_form,
    classify_elements,
    filling_matrix,
    find_isomorphism,
    forget_bipartition,
    from_json,
    gamma_A,
    genus,
    hyperbolic_certificate,
    is_cobordant,
    is_hyperbolic,
    is_isomorphic,
    mod_p,
    neg,
    p_genus,
    random_inflate,
    reduce_primitive,
    reduce_primitive_random,
    reduce_with_witness,
    search_zero_filling,
    simple_fillings,
    to_json,
    tuple_fillings,
    tuple_genus_upper,
    u_pm_of_matrix,
    validate_filling,
)
from knotcob.polynomials import Poly

from conftest import MATRIX2

T = Poly.monomial(1)


def test_neg_bar_fixtures(matrix2):
    assert neg(TRIVIAL) == TRIVIAL
    assert bar(TRIVIAL) == TRIVIAL
    b = bar(matrix2)
    # negated s row/column, interior shifted by -b(g,s)-b(s,h)
    assert b.b[0][1] == 1 and b.b[0][2] == -1
    assert b.b[1][2] == -1
    assert b.b[1][0] == -1 and b.b[2][0] == 1


def test_neg_bar_commuting_involutions():
    rng = random.Random(0)
    for _ in range(100):
        t = random_skew_matrix(rng, 6)
        assert neg(neg(t)) == t
        assert bar(bar(t)) == t
        assert neg(bar(t)) == bar(neg(t))


def test_classify_matrix2_primitive(matrix2):
    tags, pairs = classify_elements(matrix2)
    assert tags == {} and pairs == []
    assert reduce_primitive(matrix2) == matrix2
    extended = add_type1(matrix2, "g", 1)
    tags, _ = classify_elements(extended)
    assert tags == {"g": "type1"}
    assert reduce_primitive(extended) == matrix2


def test_classify_requires_skew():
    t = GradedMatrix(("s", "a"), (1,), ((0, 1), (1, 0)))
    with pytest.raises(NotSkew):
        classify_elements(t)


def test_reduction_confluence():
    rng = random.Random(1)
    for _ in range(60):
        t = random_skew_matrix(rng, 6)
        t = random_inflate(t, rng, rng.randint(0, 4))
        r1 = reduce_primitive(t)
        r2 = reduce_primitive_random(t, rng)
        assert is_isomorphic(r1, r2)


def test_reduction_commutes_with_involutions():
    rng = random.Random(2)
    for _ in range(40):
        t = random_skew_matrix(rng, 6)
        assert is_isomorphic(reduce_primitive(neg(t)), neg(reduce_primitive(t)))
        assert is_isomorphic(reduce_primitive(bar(t)), bar(reduce_primitive(t)))


def test_isomorphism_basics(matrix2):
    relabeled = GradedMatrix(("s", "a", "b"), matrix2.signs, matrix2.b)
    iso = find_isomorphism(matrix2, relabeled)
    assert iso == {"s": "s", "x": "a", "y": "b"}
    assert not is_isomorphic(matrix2, neg(matrix2))
    assert not is_isomorphic(matrix2, TRIVIAL)


def test_isomorphism_respects_structure():
    rng = random.Random(3)
    for _ in range(40):
        t = random_skew_matrix(rng, 7)
        perm = list(range(1, t.size))
        rng.shuffle(perm)
        order = [0] + perm
        names = tuple(f"n{i}" for i in range(t.size))
        shuffled = GradedMatrix(
            names,
            tuple(t.sign_of(i) for i in order[1:]),
            tuple(tuple(t.b[i][j] for j in order) for i in order),
        )
        assert is_isomorphic(t, shuffled)


def test_u_pm_of_matrix(matrix2):
    assert u_pm_of_matrix(matrix2) == (T, T)
    assert u_pm_of_matrix(TRIVIAL) == (Poly(), Poly())
    rng = random.Random(4)
    for _ in range(100):
        t = random_skew_matrix(rng, 7)
        up, um = u_pm_of_matrix(t)
        assert u_pm_of_matrix(neg(t)) == (-up, -um)
        assert u_pm_of_matrix(bar(t)) == (um, up)


def test_u_pm_errors():
    notnormal = GradedMatrix(("s",), (), ((1,),))
    with pytest.raises(NotNormal):
        u_pm_of_matrix(notnormal)
    with pytest.raises(WrongRing):
        u_pm_of_matrix(mod_p(MATRIX2, 3))


def test_simple_filling_counts(matrix2):
    assert len(list(simple_fillings(matrix2))) == 1
    two = GradedMatrix(("s", "a", "b"), (1, -1), ((0, 0, 0),) * 3)
    assert len(list(simple_fillings(two))) == 2
    four = GradedMatrix(
        ("s", "a", "b", "c", "d"), (1, 1, -1, -1), ((0,) * 5,) * 5
    )
    assert len(list(simple_fillings(four))) == 7
    for f in simple_fillings(four):
        validate_filling((four,), f)


def test_simple_fillings_size_cap():
    big = GradedMatrix(
        ("s",) + tuple(f"g{i}" for i in range(20)),
        (1,) * 20,
        ((0,) * 21,) * 21,
    )
    with pytest.raises(SizeCap):
        list(simple_fillings(big))


def test_genus_fixtures(matrix2):
    assert genus(TRIVIAL) == 0
    assert genus(matrix2) == 1
    assert p_genus(matrix2, 2) == 1
    assert is_hyperbolic(TRIVIAL)
    assert not is_hyperbolic(matrix2)
    zero = GradedMatrix(("s", "a", "b"), (1, -1), ((0, 0, 0),) * 3)
    assert is_hyperbolic(zero)
    cert = hyperbolic_certificate(zero)
    assert cert is not None
    assert all(x == 0 for row in filling_matrix((zero,), cert) for x in row)


def test_genus_invariances():
    rng = random.Random(5)
    for _ in range(60):
        t = random_skew_matrix(rng, 7)
        s = genus(t)
        assert genus(neg(t)) == s
        assert all(p_genus(t, p) <= s for p in (2, 3, 5))
        inflated = random_inflate(t, rng, rng.randint(1, 4))
        assert genus(inflated) == s


def test_gamma_A(matrix2):
    assert gamma_A(matrix2, {1}) == matrix2
    assert gamma_A(matrix2, {1, 2, 7}) == matrix2
    stripped = gamma_A(matrix2, set())
    assert stripped.names == ("s",)
    t = GradedMatrix(
        ("s", "a", "b"), (1, 1), ((0, -1, -3), (1, 0, 0), (3, 0, 0))
    )
    assert gamma_A(t, {1}).names == ("s", "a")
    notnormal = GradedMatrix(("s",), (), ((2,),))
    with pytest.raises(NotANormal):
        gamma_A(notnormal, {1})


def test_tuple_fillings_match_simple(matrix2):
    simple = {f.vectors for f in simple_fillings(matrix2)}
    tup = {f.vectors for f in tuple_fillings((matrix2,), coeff_bound=0)}
    assert simple == tup


def test_tuple_fillings_diagonal_and_empty(matrix2):
    pair = (matrix2, neg(matrix2))
    diagonal = None
    for f in tuple_fillings(pair, coeff_bound=0):
        m = filling_matrix(pair, f)
        if all(x == 0 for row in m for x in row):
            diagonal = f
            break
    assert diagonal is not None
    validate_filling(pair, diagonal)
    both_empty = (TRIVIAL, TRIVIAL)
    fillings = list(tuple_fillings(both_empty, coeff_bound=2))
    assert len(fillings) == 1
    assert fillings[0].vectors == ((((0, 0), 1), ((1, 0), 1)),)


def test_tuple_genus_upper(matrix2):
    assert tuple_genus_upper((TRIVIAL,)) == 0
    assert tuple_genus_upper((matrix2, neg(matrix2))) == 0
    assert tuple_genus_upper((matrix2,)) == genus(matrix2)
    # appending a trivial matrix changes nothing
    assert tuple_genus_upper((matrix2, TRIVIAL)) == genus(matrix2)


def test_triangle_inequality_spot():
    rng = random.Random(6)
    for _ in range(10):
        t0 = random_skew_matrix(rng, 4)
        t1 = random_skew_matrix(rng, 4)
        a = tuple_genus_upper((t1, neg(t0)), coeff_bound=1)
        b = tuple_genus_upper((t0, neg(t1)), coeff_bound=1)
        if a == 0 and b == 0:
            assert tuple_genus_upper((t1, neg(t1)), coeff_bound=1) == 0


def test_is_cobordant_self_and_iso(matrix2):
    v = is_cobordant(matrix2, matrix2, coeff_bound=0)
    assert v.status == "Cobordant"
    assert v.certificate is not None
    assert all(
        x == 0 for row in filling_matrix(v.family, v.certificate) for x in row
    )
    relabeled = GradedMatrix(("s", "a", "b"), matrix2.signs, matrix2.b)
    assert is_cobordant(matrix2, relabeled).status == "Cobordant"


def test_is_cobordant_trivial_partner(matrix2):
    v = is_cobordant(matrix2, TRIVIAL)
    assert v.status == "NotCobordant"
    zero = GradedMatrix(("s", "a", "b"), (1, -1), ((0, 0, 0),) * 3)
    v2 = is_cobordant(zero, TRIVIAL)
    assert v2.status == "Cobordant"
    assert v2.certificate is not None


def test_is_cobordant_exact_reductions():
    n1 = GradedMatrix(("s",), (), ((1,),))
    n2 = GradedMatrix(("s",), (), ((2,),))
    assert is_cobordant(n1, n2).status == "NotCobordant"
    with pytest.raises(WrongRing):
        is_cobordant(MATRIX2, mod_p(MATRIX2, 3))


def test_hyperbolic_family_u_sums():
    rng = random.Random(7)
    for _ in range(40):
        t = random_skew_matrix(rng, 5)
        family = (t, neg(t))
        cert = search_zero_filling(family, coeff_bound=0)
        if cert is None:
            continue
        ups = [u_pm_of_matrix(x) for x in family]
        total_p = Poly()
        total_m = Poly()
        for up, um in ups:
            total_p = total_p + up
            total_m = total_m + um
        assert not total_p and not total_m


def test_forget_bipartition(matrix2):
    based = forget_bipartition(matrix2)
    assert based.names == matrix2.names
    assert based.b == matrix2.b
    resigned = GradedMatrix(matrix2.names, (-1, 1), matrix2.b)
    assert forget_bipartition(resigned).b == based.b
    assert forget_bipartition(neg(matrix2)).b == neg(matrix2).b


def test_json_roundtrip(matrix2):
    rng = random.Random(8)
    for t in [matrix2, TRIVIAL] + [random_skew_matrix(rng, 6) for _ in range(10)]:
        back = from_json(to_json(t))
        assert is_isomorphic(back, t)
        assert to_json(back) == to_json(t)
        assert canonical_form(back) == canonical_form(t)


def test_mod_p_entries():
    t = mod_p(MATRIX2, 3)
    assert t.ring == "Z/3"
    assert all(0 <= x < 3 for row in t.b for x in row)
    assert t.is_skew()
    assert genus(t) == 1


def test_reduce_witness_sequence(matrix2):
    inflated = add_type1(matrix2, "g", -1)
    reduced, witness = reduce_with_witness(inflated)
    assert reduced == matrix2
    assert witness == [("M1", ("g",))]
