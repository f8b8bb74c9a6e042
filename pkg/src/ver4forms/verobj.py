"""Objects and morphisms of the braided category of K[t]/(t^2)-modules.

An object is a finite module over A = K[t]/(t^2): a vector space with a
nilpotent operator T (the action of t) satisfying T^2 = 0.  Up to
isomorphism every module is m1 + nP, where 1 is the trivial 1-dimensional
module and P the 2-dimensional indecomposable with t.w = x.  `VerObject`
fixes the standard basis ordering

    v_1, ..., v_m, w_1, x_1, ..., w_n, x_n

with t.v_j = 0, t.w_k = x_k, t.x_k = 0.  `RawTModule` carries an arbitrary
nilpotent action; `decompose` produces the standard form together with an
invertible equivariant change of basis.

The braided (symmetric) structure is induced by the triangular R-matrix
R = 1 (x) 1 + t (x) t on A, which twists the plain swap into

    c(u (x) r) = r (x) u + (t.r) (x) (t.u).

Tensor products carry the t-action t.(u (x) r) = t.u (x) r + u (x) t.r.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .field import Field
from .linalg import SpanTracker, eye, inverse, kron, mat_mul, null_space, zeros


@dataclass(frozen=True)
class VerObject:
    """The standard module m1 + nP over a fixed field."""

    field: Field
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("multiplicities must be non-negative")

    @property
    def dim(self) -> int:
        return self.m + 2 * self.n

    def v_slot(self, i: int) -> int:
        return i

    def w_slot(self, k: int) -> int:
        return self.m + 2 * k

    def x_slot(self, k: int) -> int:
        return self.m + 2 * k + 1

    def t_action(self) -> np.ndarray:
        T = zeros(self.dim, self.dim)
        for k in range(self.n):
            T[self.x_slot(k), self.w_slot(k)] = 1
        return T

    def basis_labels(self) -> list[str]:
        labels = [f"v{i + 1}" for i in range(self.m)]
        for k in range(self.n):
            labels += [f"w{k + 1}", f"x{k + 1}"]
        return labels

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n}

    @classmethod
    def from_json(cls, field: Field, doc: dict) -> "VerObject":
        try:
            m, n = doc["m"], doc["n"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed object document: missing {exc}") from exc
        if not isinstance(m, int) or not isinstance(n, int):
            raise ValueError("object sizes must be integers")
        return cls(field, m, n)

    def __repr__(self):
        return f"VerObject(GF(2^{self.field.k}), {self.m}*1 + {self.n}*P)"


class RawTModule:
    """A module given by an arbitrary square t-action matrix with T^2 = 0."""

    def __init__(self, field: Field, t: np.ndarray):
        t = linalg.as_matrix(field, t)
        if t.shape[0] != t.shape[1]:
            raise ValueError("t-action matrix must be square")
        if mat_mul(field, t, t).any():
            raise ValueError("t-action must square to zero")
        self.field = field
        self.t = t

    @property
    def dim(self) -> int:
        return self.t.shape[0]

    def t_action(self) -> np.ndarray:
        return self.t

    def to_json(self) -> dict:
        return {"dim": self.dim, "t": self.t.tolist()}

    @classmethod
    def from_json(cls, field: Field, doc: dict) -> "RawTModule":
        try:
            dim, t = doc["dim"], doc["t"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed raw module document: missing {exc}") from exc
        t = np.array(t, dtype=np.int64)
        if t.shape != (dim, dim):
            raise ValueError("t-action shape does not match the declared dimension")
        return cls(field, t)

    def __repr__(self):
        return f"RawTModule(GF(2^{self.field.k}), dim={self.dim})"


def unit_object(field: Field) -> VerObject:
    return VerObject(field, 1, 0)


class Morphism:
    """A linear map between modules that commutes with the t-actions.

    The matrix acts on column vectors; composition is matrix product.
    """

    def __init__(self, source, target, matrix: np.ndarray):
        if source.field != target.field:
            raise ValueError("source and target live over different fields")
        matrix = linalg.as_matrix(source.field, matrix)
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(
                f"matrix shape {matrix.shape} does not map dim {source.dim} to dim {target.dim}"
            )
        F = source.field
        lhs = mat_mul(F, target.t_action(), matrix)
        rhs = mat_mul(F, matrix, source.t_action())
        if not np.array_equal(lhs, rhs):
            raise ValueError("matrix does not commute with the t-actions")
        self.source = source
        self.target = target
        self.matrix = matrix

    @property
    def field(self) -> Field:
        return self.source.field

    def compose(self, other: "Morphism") -> "Morphism":
        """self after other."""
        if other.target.dim != self.source.dim:
            raise ValueError("composition dimension mismatch")
        return Morphism(other.source, self.target, mat_mul(self.field, self.matrix, other.matrix))

    def is_invertible(self) -> bool:
        return linalg.is_invertible(self.field, self.matrix)

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source, inverse(self.field, self.matrix))

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return linalg.mat_vec(self.field, self.matrix, vec)

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"


def decompose(raw) -> tuple[VerObject, Morphism]:
    """Standard form of a module with nilpotent t-action.

    Returns (obj, phi) with obj = m1 + nP, n = rank(T), m = dim - 2n, and phi
    an invertible morphism from `raw` to the standard object.  The new w's
    are chosen greedily among standard basis vectors, preferring those whose
    t-image has the smallest support (ties by index); the 1-part is filled
    greedily from the reduced kernel basis.  This makes the output matrix
    deterministic.
    """
    F = raw.field
    T = raw.t_action()
    d = raw.dim
    candidates = sorted(
        (j for j in range(d) if T[:, j].any()),
        key=lambda j: (int(np.count_nonzero(T[:, j])), j),
    )
    image_span = SpanTracker(F, d)
    w_cols: list[np.ndarray] = []
    x_cols: list[np.ndarray] = []
    for j in candidates:
        img = T[:, j]
        if image_span.add(img):
            e = np.zeros(d, dtype=np.int64)
            e[j] = 1
            w_cols.append(e)
            x_cols.append(img.copy())
    n = len(w_cols)
    m = d - 2 * n
    ker = null_space(F, T)
    full_span = SpanTracker(F, d)
    for x in x_cols:
        full_span.add(x)
    v_cols: list[np.ndarray] = []
    for j in range(ker.shape[1]):
        if full_span.add(ker[:, j]):
            v_cols.append(ker[:, j].copy())
    if len(v_cols) != m:
        raise AssertionError("kernel completion failed")  # pragma: no cover
    cols = v_cols[:]
    for w, x in zip(w_cols, x_cols):
        cols += [w, x]
    B = np.column_stack(cols) if cols else zeros(d, 0)
    obj = VerObject(F, m, n)
    phi = Morphism(raw, obj, inverse(F, B) if d else zeros(0, 0))
    return obj, phi


def tensor_raw(a, b) -> RawTModule:
    """Tensor product module on the Kronecker basis (left factor outer)."""
    if a.field != b.field:
        raise ValueError("tensor factors live over different fields")
    Ta, Tb = a.t_action(), b.t_action()
    T = np.kron(Ta, eye(b.dim)) ^ np.kron(eye(a.dim), Tb)
    return RawTModule(a.field, T)


def tensor(a, b) -> tuple[VerObject, Morphism]:
    """Standard form of a (x) b plus the morphism from the Kronecker basis.

    Sizes follow m' = m*p and n' = 2nq + mq + np.  Results for standard
    objects are cached; treat the returned morphism as read-only.
    """
    if isinstance(a, VerObject) and isinstance(b, VerObject):
        return _tensor_cached(a, b)
    return decompose(tensor_raw(a, b))


@lru_cache(maxsize=None)
def _tensor_cached(a: VerObject, b: VerObject) -> tuple[VerObject, Morphism]:
    return decompose(tensor_raw(a, b))


def braiding(a, b) -> Morphism:
    """The braiding c: a (x) b -> b (x) a on Kronecker bases.

    c(u (x) r) = r (x) u + (t.r) (x) (t.u); it squares to the identity.
    """
    if a.field != b.field:
        raise ValueError("braiding factors live over different fields")
    da, db = a.dim, b.dim
    base = eye(da * db) ^ np.kron(a.t_action(), b.t_action())
    idx = np.arange(da * db)
    swapped = (idx % db) * da + idx // db
    C = np.zeros((da * db, da * db), dtype=np.int64)
    C[swapped] = base
    return Morphism(tensor_raw(a, b), tensor_raw(b, a), C)


def dual(obj: VerObject) -> tuple[VerObject, Morphism]:
    """The dual object and the evaluation pairing.

    The dual of m1 + nP is again m1 + nP: in the dual basis ordered
    v*_1..v*_m, x*_1, w*_1, ..., x*_n, w*_n the action is t.x*_k = w*_k, so
    the dual standard pairs are (x*_k, w*_k).  The returned morphism is the
    evaluation dual (x) obj -> 1; reshaping its single row to (dim, dim)
    gives the pairing matrix (identity on the 1-part, antidiagonal 2x2
    blocks on the P-part).
    """
    F = obj.field
    d = obj.dim
    dobj = VerObject(F, obj.m, obj.n)
    P = zeros(d, d)
    for i in range(obj.m):
        P[i, i] = 1
    for k in range(obj.n):
        P[dobj.w_slot(k), obj.x_slot(k)] = 1  # x*_k pairs with x_k
        P[dobj.x_slot(k), obj.w_slot(k)] = 1  # w*_k pairs with w_k
    ev = Morphism(tensor_raw(dobj, obj), unit_object(F), P.reshape(1, d * d))
    return dobj, ev


def hexagons_hold(x, y, z) -> tuple[bool, bool]:
    """Check both hexagon identities on the triple (x, y, z) exactly."""
    F = x.field
    c = lambda a, b: braiding(a, b).matrix
    lhs1 = c(x, tensor_raw(y, z))
    rhs1 = mat_mul(F, kron(F, eye(y.dim), c(x, z)), kron(F, c(x, y), eye(z.dim)))
    lhs2 = c(tensor_raw(x, y), z)
    rhs2 = mat_mul(F, kron(F, c(x, z), eye(y.dim)), kron(F, eye(x.dim), c(y, z)))
    return bool(np.array_equal(lhs1, rhs1)), bool(np.array_equal(lhs2, rhs2))


def random_equivariant_matrix(obj: VerObject, rng: np.random.Generator) -> np.ndarray:
    """Matrix of a random invertible morphism obj -> obj.

    Block shape: v's map into V + X, w's map anywhere compatible; the v->v
    and w->w blocks are drawn from GL, the rest uniformly, which makes the
    result invertible (and equivariant) by construction.
    """
    F, m, n = obj.field, obj.m, obj.n
    q = F.order
    A = _random_gl(F, m, rng)
    E = _random_gl(F, n, rng)
    C = rng.integers(0, q, size=(n, m), dtype=np.int64)
    D = rng.integers(0, q, size=(m, n), dtype=np.int64)
    Fm = rng.integers(0, q, size=(n, n), dtype=np.int64)
    M = zeros(obj.dim, obj.dim)
    vs = np.arange(m)
    ws = m + 2 * np.arange(n)
    xs = ws + 1
    if m:
        M[np.ix_(vs, vs)] = A
    if m and n:
        M[np.ix_(xs, vs)] = C
        M[np.ix_(vs, ws)] = D
    if n:
        M[np.ix_(ws, ws)] = E
        M[np.ix_(xs, ws)] = Fm
        M[np.ix_(xs, xs)] = E
    return M


def random_equivariant_automorphism(obj: VerObject, rng: np.random.Generator) -> Morphism:
    """A random invertible morphism obj -> obj (validated wrapper)."""
    return Morphism(obj, obj, random_equivariant_matrix(obj, rng))


def _random_gl(F: Field, s: int, rng: np.random.Generator) -> np.ndarray:
    if s == 0:
        return zeros(0, 0)
    while True:
        M = rng.integers(0, F.order, size=(s, s), dtype=np.int64)
        if linalg.is_invertible(F, M):
            return M


# -- triangular structure on the Hopf algebra A = K[t]/(t^2) ----------------
#
# Elements of A^(x)n are numpy arrays of shape (2,)*n over the field, indexed
# by tuples over the basis (1, t).  Multiplication is componentwise with
# t*t = 0; the coproduct is Delta(t) = 1 (x) t + t (x) 1.


def _a_mul(F: Field, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = x.ndim
    z = np.zeros_like(x)
    for i in np.ndindex(x.shape):
        if not x[i]:
            continue
        for j in np.ndindex(y.shape):
            if not y[j]:
                continue
            if any(a + b > 1 for a, b in zip(i, j)):
                continue  # t^2 = 0 in some slot
            k = tuple(a + b for a, b in zip(i, j))
            z[k] ^= F.mul(int(x[i]), int(y[j]))
    return z


def _delta_at(F: Field, x: np.ndarray, slot: int) -> np.ndarray:
    """Apply the coproduct to one tensor slot, adding a slot after it."""
    n = x.ndim
    out = np.zeros((2,) * (n + 1), dtype=np.int64)
    for i in np.ndindex(x.shape):
        if not x[i]:
            continue
        pre, a, post = i[:slot], i[slot], i[slot + 1:]
        if a == 0:
            out[pre + (0, 0) + post] ^= x[i]
        else:
            out[pre + (0, 1) + post] ^= x[i]
            out[pre + (1, 0) + post] ^= x[i]
    return out


def _embed(x: np.ndarray, n: int, slots: tuple[int, ...]) -> np.ndarray:
    """Place a tensor into chosen slots of A^(x)n (identity elsewhere)."""
    out = np.zeros((2,) * n, dtype=np.int64)
    for i in np.ndindex(x.shape):
        if not x[i]:
            continue
        idx = [0] * n
        for s, a in zip(slots, i):
            idx[s] = a
        out[tuple(idx)] ^= x[i]
    return out


def check_r_matrix_axioms(F: Field) -> dict[str, bool]:
    """Verify the triangular-structure identities of R = 1 (x) 1 + t (x) t.

    Checked exactly as identities in A^(x)2 and A^(x)3, plus the induced
    braiding's hexagon identities on the triple (P, P, P).
    """
    R = np.zeros((2, 2), dtype=np.int64)
    R[0, 0] = 1
    R[1, 1] = 1
    one2 = np.zeros((2, 2), dtype=np.int64)
    one2[0, 0] = 1
    R13 = _embed(R, 3, (0, 2))
    R23 = _embed(R, 3, (1, 2))
    R12 = _embed(R, 3, (0, 1))
    report: dict[str, bool] = {}
    report["r_squared_identity"] = bool(np.array_equal(_a_mul(F, R, R), one2))
    report["r21_is_inverse"] = bool(np.array_equal(R.T, R))
    report["coproduct_first_leg"] = bool(
        np.array_equal(_delta_at(F, R, 0), _a_mul(F, R13, R23))
    )
    report["coproduct_second_leg"] = bool(
        np.array_equal(_delta_at(F, R, 1), _a_mul(F, R13, R12))
    )
    ok = True
    for a in (np.array([1, 0], dtype=np.int64), np.array([0, 1], dtype=np.int64)):
        da = _delta_at(F, a, 0)
        ok = ok and np.array_equal(da.T, _a_mul(F, _a_mul(F, R, da), R))
    report["r_conjugates_coproduct"] = bool(ok)
    p = VerObject(F, 0, 1)
    hx1, hx2 = hexagons_hold(p, p, p)
    report["hexagon_first_ppp"] = hx1
    report["hexagon_second_ppp"] = hx2
    return report
