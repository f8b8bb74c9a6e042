import itertools

import numpy as np
import pytest

from ver4forms import linalg as la
from ver4forms.bform import BilinearForm, Subobject
from ver4forms.classify import CanonicalClass, canonical_rep
from ver4forms.divided import (
    QuadraticForm,
    a2_iso_check,
    beta_q,
    classify_quadratic,
    frobenius_twist_rank,
    gamma2,
    gamma2_dim_formula,
    hyperbolic_quadratic,
    one_minus_braiding,
    quad_from_parts,
    quad_product,
    quad_restrict,
    quad_sum,
    quad_transform,
    quadratic_from_bilinear,
)
from ver4forms.field import make_field
from ver4forms.verobj import VerObject, random_equivariant_automorphism

F2 = make_field(1)
F4 = make_field(2)


def test_gamma2_on_p():
    basis = gamma2(VerObject(F4, 0, 1))
    assert basis.dim == 2
    fams = [line.family for line in basis.lines]
    assert fams == [4, 5]
    # generators x (x) x and w (x) x + x (x) w
    assert basis.lines[0].top.tolist() == [0, 0, 0, 1]
    assert basis.lines[1].top.tolist() == [0, 1, 1, 0]


def test_gamma2_on_two_units():
    basis = gamma2(VerObject(F4, 2, 0))
    assert basis.dim == 3
    assert [line.family for line in basis.lines] == [1, 1, 2]


def test_gamma2_mixed():
    basis = gamma2(VerObject(F4, 1, 1))
    assert basis.dim == 5
    assert basis.num_lines == 4  # families 1, 3, 4, 5


def test_gamma2_dim_matches_kernel_nullity():
    for m in range(0, 5):
        for n in range(0, 3):
            if m + 2 * n > 6:
                continue
            obj = VerObject(F4, m, n)
            omc = one_minus_braiding(obj)
            nullity = obj.dim**2 - la.rank(F4, omc)
            assert gamma2(obj).dim == gamma2_dim_formula(m, n) == nullity


def test_frobenius_twist_ranks():
    for n in range(0, 4):
        assert frobenius_twist_rank(VerObject(F4, 0, n)) == 0
    for m in range(0, 5):
        assert frobenius_twist_rank(VerObject(F4, m, 0)) == m
    assert frobenius_twist_rank(VerObject(F4, 2, 1)) == 2


def test_a2_iso_check():
    # on P both kernel and cokernel sides have dimension 2
    P = VerObject(F4, 0, 1)
    assert a2_iso_check(P)
    assert la.rank(F4, one_minus_braiding(P)) == 2
    assert gamma2(P).dim - frobenius_twist_rank(P) == 2
    # on 2*1 the rank of 1 - c is 1 (classical alternating square)
    two = VerObject(F4, 2, 0)
    assert a2_iso_check(two)
    assert la.rank(F4, one_minus_braiding(two)) == 1
    assert a2_iso_check(VerObject(F4, 0, 0))
    for m, n in [(1, 1), (2, 1), (0, 2)]:
        assert a2_iso_check(VerObject(F4, m, n))


def test_beta_q_classical_coordinates():
    # on 2*1 with values (l11, l22, l12): beta_q(e1, e2) = l12, zero diagonal
    obj = VerObject(F4, 2, 0)
    for l11, l22, l12 in itertools.product(range(4), repeat=3):
        bq = beta_q(QuadraticForm(obj, [l11, l22, l12]))
        assert bq.gram.tolist() == [[0, l12], [l12, 0]]


def test_beta_q_symmetric_exhaustive_gf2():
    for m, n in [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1)]:
        obj = VerObject(F2, m, n)
        L = gamma2(obj).num_lines
        for vals in itertools.product(range(2), repeat=L):
            bq = beta_q(QuadraticForm(obj, list(vals)))
            assert bq.is_symmetric()
            assert bq.is_alternating()


def test_beta_q_zero():
    obj = VerObject(F4, 1, 1)
    L = gamma2(obj).num_lines
    assert not beta_q(QuadraticForm(obj, [0] * L)).gram.any()


def test_beta_q_matches_direct_evaluation():
    # beta_q(u, u') = q((1 - c)(u (x) u')) on every basis pair
    rng = np.random.default_rng(31)
    for m, n in [(1, 1), (0, 2), (2, 1)]:
        obj = VerObject(F4, m, n)
        L = gamma2(obj).num_lines
        q = QuadraticForm(obj, rng.integers(0, 4, size=L))
        bq = beta_q(q)
        omc = one_minus_braiding(obj)
        for i in range(obj.dim):
            for j in range(obj.dim):
                vec = omc[:, i * obj.dim + j]
                assert bq.gram[i, j] == q.evaluate(vec)


def test_quad_values_determine_q_and_kill_images():
    obj = VerObject(F4, 1, 2)
    basis = gamma2(obj)
    rng = np.random.default_rng(17)
    q = QuadraticForm(obj, rng.integers(0, 4, size=basis.num_lines))
    for line, val in zip(basis.lines, q.values):
        assert q.evaluate(line.top) == val
        if line.image is not None:
            assert q.evaluate(line.image) == 0


def test_quad_restrict_commutes_with_beta_q():
    # beta_{q|W} = (beta_q)|_W on random subobjects
    rng = np.random.default_rng(23)
    obj = VerObject(F4, 2, 2)
    basis = gamma2(obj)
    for _ in range(100):
        q = QuadraticForm(obj, rng.integers(0, 4, size=basis.num_lines))
        phi = random_equivariant_automorphism(obj, rng)
        take = sorted(rng.choice(obj.dim, size=4, replace=False))
        # a random t-stable subspace: image of standard slots under phi
        pairs = [k for k in range(obj.n) if rng.integers(2)]
        units = [i for i in range(obj.m) if rng.integers(2)]
        cols = [phi.matrix[:, obj.v_slot(i)] for i in units]
        for k in pairs:
            cols += [phi.matrix[:, obj.w_slot(k)], phi.matrix[:, obj.x_slot(k)]]
        if not cols:
            continue
        sub = Subobject(obj, np.column_stack(cols))
        restricted = quad_restrict(q, sub)
        lhs = beta_q(restricted)
        rhs = beta_q(q).restrict(sub)
        assert np.array_equal(lhs.gram, rhs.gram)


def test_quad_sum_with_empty_is_identity():
    obj = VerObject(F4, 1, 1)
    rng = np.random.default_rng(5)
    q = QuadraticForm(obj, rng.integers(0, 4, size=gamma2(obj).num_lines))
    zero = QuadraticForm(VerObject(F4, 0, 0), [])
    s = quad_sum(q, zero)
    assert np.array_equal(s.values, q.values)
    s2 = quad_sum(zero, q)
    assert np.array_equal(s2.values, q.values)


def test_quad_sum_beta_q_is_block_sum():
    from ver4forms.witt import direct_sum

    rng = np.random.default_rng(41)
    a = VerObject(F4, 1, 1)
    b = VerObject(F4, 2, 1)
    qa = QuadraticForm(a, rng.integers(0, 4, size=gamma2(a).num_lines))
    qb = QuadraticForm(b, rng.integers(0, 4, size=gamma2(b).num_lines))
    s = quad_sum(qa, qb)
    assert np.array_equal(beta_q(s).gram, direct_sum(beta_q(qa), beta_q(qb)).gram)


def test_quadratic_from_bilinear_roundtrip():
    rng = np.random.default_rng(3)
    for n in (1, 2, 3):
        obj = VerObject(F4, 0, n)
        from ver4forms.oracle import enumerate_forms

        count = 0
        for beta in enumerate_forms(0, n, F4):
            q = quadratic_from_bilinear(beta)
            assert np.array_equal(beta_q(q).gram, beta.gram)
            count += 1
            if count > 50:
                break


def test_quadratic_from_bilinear_requires_np_object():
    with pytest.raises(ValueError):
        quadratic_from_bilinear(BilinearForm(VerObject(F4, 1, 0), la.eye(1)))


def test_quad_product_with_unit_form():
    # gamma = the unit form on 1: gamma.q is equivalent to q
    rng = np.random.default_rng(8)
    one = BilinearForm(VerObject(F4, 1, 0), la.eye(1))
    for m, n in [(2, 0), (0, 1), (2, 1)]:
        obj = VerObject(F4, m, n)
        q = QuadraticForm(obj, rng.integers(0, 4, size=gamma2(obj).num_lines))
        prod = quad_product(one, q)
        assert (prod.obj.m, prod.obj.n) == (m, n)
        if beta_q(q).is_nondegenerate() and obj.m % 2 == 0:
            assert classify_quadratic(prod) == classify_quadratic(q)


def test_quad_product_beta_compatibility():
    # the associated form of gamma.q is gamma x beta_q
    from ver4forms.witt import tensor_product

    rng = np.random.default_rng(12)
    gamma = canonical_rep(CanonicalClass("E", 0, 1, 2), F4)
    obj = VerObject(F4, 0, 2)
    q = QuadraticForm(obj, rng.integers(0, 4, size=gamma2(obj).num_lines))
    prod = quad_product(gamma, q)
    assert np.array_equal(beta_q(prod).gram, tensor_product(gamma, beta_q(q)).gram)


def test_quad_product_defining_property_on_kernel_tensors():
    # gamma.q((v (x) w) (x) (v (x) w)) = gamma(v, v) q(w (x) w) for all
    # v in ker t_V, w in ker t_W, not just the standard anchors
    rng = np.random.default_rng(19)
    V = VerObject(F4, 2, 1)
    W = VerObject(F4, 2, 1)
    gamma = BilinearForm(
        V, la.congruence(F4, random_equivariant_automorphism(V, rng).matrix,
                         canonical_rep(CanonicalClass("B", 2, 1), F4).gram)
    )
    q = QuadraticForm(W, rng.integers(0, 4, size=gamma2(W).num_lines))
    prod = quad_product(gamma, q)
    from ver4forms.verobj import tensor

    tobj, phi = tensor(V, W)
    for _ in range(40):
        cv = rng.integers(0, 4, size=V.dim).astype(np.int64)
        cv[[V.w_slot(k) for k in range(V.n)]] = 0  # v in ker t_V
        cw = rng.integers(0, 4, size=W.dim).astype(np.int64)
        cw[[W.w_slot(k) for k in range(W.n)]] = 0
        z_kron = F4.mul_arr(cv[:, None], cw[None, :]).reshape(-1)
        s = la.mat_vec(F4, phi.matrix, z_kron)
        lhs = prod.evaluate(la.kron(F4, s[:, None], s[:, None]).reshape(-1))
        w_sq = la.kron(F4, cw[:, None], cw[:, None]).reshape(-1)
        rhs = F4.mul(gamma.evaluate(cv, cv), q.evaluate(w_sq))
        assert lhs == rhs


def test_hyperbolic_quadratic_classifies():
    q = hyperbolic_quadratic(F4, 1)
    assert q.values.tolist() == [0, 0, 1]
    h, cls = classify_quadratic(q)
    assert h == 1 and (cls.m, cls.n) == (0, 0)


def test_classify_quadratic_p_classes():
    for y in F4.elements():
        q = QuadraticForm(VerObject(F4, 0, 1), [y, 1])
        h, cls = classify_quadratic(q)
        assert h == 0
        assert cls == CanonicalClass("E", 0, 1, y)


def test_classify_quadratic_composites():
    for fam, n, param in [("C", 2, None), ("D", 2, None), ("E", 2, 3), ("F", 3, 2)]:
        gamma = canonical_rep(CanonicalClass(fam, 0, n, param), F4)
        q = quad_from_parts(F4, 2, gamma)
        h, cls = classify_quadratic(q)
        assert h == 2
        assert cls == CanonicalClass(fam, 0, n, param)


def test_classify_quadratic_degenerate_rejected():
    obj = VerObject(F4, 0, 1)
    with pytest.raises(ValueError):
        classify_quadratic(QuadraticForm(obj, [1, 0]))  # beta_q singular


def test_odd_unit_multiplicity_never_nondegenerate():
    for m, n in [(1, 0), (1, 1)]:
        obj = VerObject(F2, m, n)
        L = gamma2(obj).num_lines
        for vals in itertools.product(range(2), repeat=L):
            q = QuadraticForm(obj, list(vals))
            assert not beta_q(q).is_nondegenerate()


def test_quad_transform_preserves_class():
    rng = np.random.default_rng(77)
    gamma = canonical_rep(CanonicalClass("F", 0, 3, 5), make_field(3))
    q = quad_from_parts(make_field(3), 1, gamma)
    base = classify_quadratic(q)
    for _ in range(10):
        phi = random_equivariant_automorphism(q.obj, rng)
        assert classify_quadratic(quad_transform(q, phi)) == base


def test_quadratic_json_roundtrip():
    q = hyperbolic_quadratic(F4, 2)
    back = QuadraticForm.from_json(q.to_json())
    assert np.array_equal(back.values, q.values)
    assert back.obj == q.obj
