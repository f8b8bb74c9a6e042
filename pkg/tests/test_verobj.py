import itertools

import numpy as np
import pytest

from ver4forms import linalg as la
from ver4forms.field import make_field
from ver4forms.verobj import (
    Morphism,
    RawTModule,
    VerObject,
    braiding,
    check_r_matrix_axioms,
    decompose,
    dual,
    hexagons_hold,
    random_equivariant_automorphism,
    tensor,
    tensor_raw,
    unit_object,
)

F = make_field(2)


def _objects_with_dim_up_to(F, d):
    out = []
    for n in range(d // 2 + 1):
        for m in range(d - 2 * n + 1):
            if m + 2 * n >= 1:
                out.append(VerObject(F, m, n))
    return out


def test_standard_t_action():
    obj = VerObject(F, 2, 2)
    T = obj.t_action()
    assert not la.mat_mul(F, T, T).any()
    assert la.rank(F, T) == 2
    # t.w_k = x_k and everything else dies
    for k in range(2):
        e = np.zeros(6, dtype=np.int64)
        e[obj.w_slot(k)] = 1
        img = la.mat_vec(F, T, e)
        assert img[obj.x_slot(k)] == 1 and np.count_nonzero(img) == 1


def test_raw_module_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        RawTModule(F, np.array([[1, 0], [0, 0]]))


def test_decompose_zero_action():
    obj, phi = decompose(RawTModule(F, la.zeros(3, 3)))
    assert (obj.m, obj.n) == (3, 0)
    assert phi.is_invertible()


def test_decompose_jordan_block():
    T = np.array([[0, 1], [0, 0]], dtype=np.int64)
    obj, phi = decompose(RawTModule(F, T))
    assert (obj.m, obj.n) == (0, 1)


def test_decompose_rank_one_dim_four():
    T = la.zeros(4, 4)
    T[0, 2] = 1
    obj, phi = decompose(RawTModule(F, T))
    assert (obj.m, obj.n) == (2, 1)
    # morphism really is equivariant and invertible
    assert phi.is_invertible()


def test_decompose_stable_under_equivariant_scramble():
    rng = np.random.default_rng(3)
    for m, n in [(1, 1), (2, 2), (0, 3)]:
        obj = VerObject(F, m, n)
        T = obj.t_action()
        for _ in range(10):
            phi = random_equivariant_automorphism(obj, rng)
            Minv = la.inverse(F, phi.matrix)
            scrambled = la.mat_mul(F, la.mat_mul(F, phi.matrix, T), Minv)
            got, _ = decompose(RawTModule(F, scrambled))
            assert (got.m, got.n) == (m, n)


def test_tensor_sizes_and_rank():
    for m, n, p, q in itertools.product(range(3), repeat=4):
        U, R = VerObject(F, m, n), VerObject(F, p, q)
        obj, phi = tensor(U, R)
        assert obj.m == m * p
        assert obj.n == 2 * n * q + m * q + n * p
        assert la.rank(F, tensor_raw(U, R).t_action()) == obj.n


def test_tensor_p_p_summand_bases():
    P = VerObject(F, 0, 1)
    obj, phi = tensor(P, P)
    assert (obj.m, obj.n) == (0, 2)
    # standard basis in Kronecker coordinates (w(x)w, w(x)x, x(x)w, x(x)x)
    B = la.inverse(F, phi.matrix)
    w1, x1 = B[:, obj.w_slot(0)], B[:, obj.x_slot(0)]
    w2, x2 = B[:, obj.w_slot(1)], B[:, obj.x_slot(1)]
    assert w1.tolist() == [0, 1, 0, 0]  # w (x) x
    assert x1.tolist() == [0, 0, 0, 1]  # x (x) x
    assert w2.tolist() == [1, 0, 0, 0]  # w (x) w
    assert x2.tolist() == [0, 1, 1, 0]  # x (x) w + w (x) x


def test_tensor_with_unit_is_identity_shaped():
    one = unit_object(F)
    U = VerObject(F, 1, 1)
    obj, phi = tensor(one, U)
    assert (obj.m, obj.n) == (U.m, U.n)
    assert phi.is_invertible()


def test_braiding_formula_on_p():
    P = VerObject(F, 0, 1)
    c = braiding(P, P).matrix
    # c(w (x) w) = w (x) w + x (x) x
    assert c[:, 0].tolist() == [1, 0, 0, 1]
    # c(x (x) x) = x (x) x
    assert c[:, 3].tolist() == [0, 0, 0, 1]
    # c(w (x) x) = x (x) w
    assert c[:, 1].tolist() == [0, 0, 1, 0]


def test_braiding_on_unit_is_identity():
    one = unit_object(F)
    assert np.array_equal(braiding(one, one).matrix, la.eye(1))


def test_braiding_squares_to_identity():
    rng = np.random.default_rng(1)
    objs = _objects_with_dim_up_to(F, 8)
    idx = rng.choice(len(objs), size=(12, 2))
    pairs = [(objs[i], objs[j]) for i, j in idx] + [(o, o) for o in _objects_with_dim_up_to(F, 4)]
    for a, b in pairs:
        cab = braiding(a, b).matrix
        cba = braiding(b, a).matrix
        assert np.array_equal(la.mat_mul(F, cba, cab), la.eye(a.dim * b.dim))


def test_hexagons_small():
    objs = [VerObject(F, 1, 0), VerObject(F, 0, 1)]
    for x in objs:
        for y in objs:
            for z in objs:
                assert hexagons_hold(x, y, z) == (True, True)


def test_dual_shape_and_pairing():
    U = VerObject(F, 1, 2)
    dobj, ev = dual(U)
    assert (dobj.m, dobj.n) == (1, 2)
    P = ev.matrix.reshape(U.dim, U.dim)
    # identity on the unit slot, antidiagonal blocks on the pairs
    assert P[0, 0] == 1
    for k in range(2):
        assert P[dobj.w_slot(k), U.x_slot(k)] == 1
        assert P[dobj.x_slot(k), U.w_slot(k)] == 1
    assert np.count_nonzero(P) == 5


def test_dual_of_p_pairing_is_antidiagonal():
    P = VerObject(F, 0, 1)
    dobj, ev = dual(P)
    assert (dobj.m, dobj.n) == (0, 1)
    assert ev.matrix.reshape(2, 2).tolist() == [[0, 1], [1, 0]]


def test_dual_of_unit():
    one = unit_object(F)
    dobj, ev = dual(one)
    assert dobj == one
    assert ev.matrix.tolist() == [[1]]


def test_r_matrix_axioms_all_pass():
    for k in (1, 2, 3):
        report = check_r_matrix_axioms(make_field(k))
        assert all(report.values()), report


def test_morphism_validation():
    U = VerObject(F, 0, 1)
    with pytest.raises(ValueError):
        Morphism(U, U, np.array([[0, 1], [1, 0]]))  # swaps w and x: not equivariant
    Morphism(U, U, np.array([[1, 0], [1, 1]]))  # w -> w + x is fine


def test_json_object_roundtrips():
    obj = VerObject(F, 2, 1)
    assert VerObject.from_json(F, obj.to_json()) == obj
    raw = RawTModule(F, np.array([[0, 1], [0, 0]]))
    back = RawTModule.from_json(F, raw.to_json())
    assert np.array_equal(back.t, raw.t)
    with pytest.raises(ValueError):
        RawTModule.from_json(F, {"dim": 3, "t": [[0, 1], [0, 0]]})
    with pytest.raises(ValueError):
        VerObject.from_json(F, {"m": 1})


def test_morphism_compose_and_inverse():
    rng = np.random.default_rng(4)
    U = VerObject(F, 2, 1)
    a = random_equivariant_automorphism(U, rng)
    b = random_equivariant_automorphism(U, rng)
    ab = a.compose(b)
    assert np.array_equal(ab.matrix, la.mat_mul(F, a.matrix, b.matrix))
    ainv = a.inverse()
    assert np.array_equal(a.compose(ainv).matrix, la.eye(U.dim))
