"""Bilinear forms as Gram data on standard objects.

A bilinear form on U is a functional beta: U (x) U -> 1 that is a module
map, which forces the compatibility law beta(t.u, u') = beta(u, t.u'), i.e.
T^T G = G T on Gram matrices.  On the standard basis this pins down three
entry families: beta(v_i, x_j) = 0, beta(w_j, x_k) = beta(x_j, w_k) and
beta(x_j, x_k) = 0.

The predicates below exploit that u -> beta(u, u) and u -> beta(u, t.u) are
additive and Frobenius-semilinear in characteristic 2 (for symmetric
compatible forms), so universally quantified conditions are decided on the
standard basis:

  alternating       beta(u, u) = 0 for u in ker t        (v and x diagonal)
  oscillating       beta(u, t.u) = 0 for all u           (diagonal of G T)
  super-alternating beta(u, u) = 0 for all u             (full diagonal)

Degenerate forms are representable here; the classifier rejects them.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .field import Field, make_field
from .linalg import mat_mul, null_space, rank, solve, zeros
from .verobj import RawTModule, VerObject, decompose


class Subobject:
    """A t-stable subspace of a standard object, given by a spanning matrix."""

    def __init__(self, ambient: VerObject, span: np.ndarray):
        span = linalg.as_matrix(ambient.field, span)
        if span.shape[0] != ambient.dim:
            raise ValueError("spanning matrix has wrong ambient dimension")
        F = ambient.field
        r = rank(F, span)
        T = ambient.t_action()
        stacked = np.concatenate([span, mat_mul(F, T, span)], axis=1)
        if rank(F, stacked) != r:
            raise ValueError("column space is not t-stable")
        self.ambient = ambient
        self.span = span
        self._rank = r

    @property
    def dim(self) -> int:
        return self._rank

    def basis(self) -> np.ndarray:
        """Column basis: the first independent columns of the spanning matrix."""
        F = self.ambient.field
        cols = []
        tracker = linalg.SpanTracker(F, self.ambient.dim)
        for j in range(self.span.shape[1]):
            if tracker.add(self.span[:, j]):
                cols.append(j)
        return self.span[:, cols]

    def __repr__(self):
        return f"Subobject(dim={self.dim} of {self.ambient!r})"


def _slot_arrays(obj: VerObject):
    vs = np.arange(obj.m, dtype=np.int64)
    ws = obj.m + 2 * np.arange(obj.n, dtype=np.int64)
    xs = ws + 1
    return vs, ws, xs


def _t_compatible(obj: VerObject, G: np.ndarray) -> bool:
    """Entrywise form of T^T G = G T: x-rows/columns vanish off the w-block
    and the (x, w) block matches the (w, x) block."""
    vs, ws, xs = _slot_arrays(obj)
    if obj.n == 0:
        return True
    non_w = np.concatenate([vs, xs])
    if non_w.size and (G[np.ix_(xs, non_w)].any() or G[np.ix_(non_w, xs)].any()):
        return False
    return bool(np.array_equal(G[np.ix_(xs, ws)], G[np.ix_(ws, xs)]))


class BilinearForm:
    """A Gram matrix on the standard basis of a VerObject.

    gram[i][j] = beta(b_i, b_j).  Construction validates the compatibility
    law T^T G = G T; symmetry and non-degeneracy are separate predicates.
    Instances are value objects: mutating `gram` in place is unsupported.
    """

    def __init__(self, obj: VerObject, gram: np.ndarray):
        gram = linalg.as_matrix(obj.field, gram)
        if gram.shape != (obj.dim, obj.dim):
            raise ValueError(f"gram shape {gram.shape} does not match dim {obj.dim}")
        if not _t_compatible(obj, gram):
            raise ValueError("gram violates the t-compatibility law")
        self.obj = obj
        self.gram = gram
        self._rank: int | None = None

    @property
    def field(self) -> Field:
        return self.obj.field

    @property
    def dim(self) -> int:
        return self.obj.dim

    def evaluate(self, u: np.ndarray, v: np.ndarray) -> int:
        return linalg.dot(self.field, u, linalg.mat_vec(self.field, self.gram, v))

    def apply_to_tensor(self, vec: np.ndarray) -> int:
        """Evaluate the functional on a vector of U (x) U (Kronecker index)."""
        return linalg.dot(self.field, self.gram.reshape(-1), vec)

    # -- predicates ---------------------------------------------------------

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.gram, self.gram.T))

    def _require_symmetric(self):
        if not self.is_symmetric():
            raise ValueError("operation requires a symmetric form")

    def is_alternating(self) -> bool:
        self._require_symmetric()
        obj = self.obj
        d = np.diagonal(self.gram)
        if any(d[obj.v_slot(i)] for i in range(obj.m)):
            return False
        return not any(d[obj.x_slot(k)] for k in range(obj.n))

    def is_oscillating(self) -> bool:
        self._require_symmetric()
        gt = mat_mul(self.field, self.gram, self.obj.t_action())
        return not np.diagonal(gt).any()

    def is_super_alternating(self) -> bool:
        self._require_symmetric()
        return not np.diagonal(self.gram).any()

    # -- degeneracy ---------------------------------------------------------

    def radical(self) -> Subobject:
        return Subobject(self.obj, null_space(self.field, self.gram))

    def is_nondegenerate(self) -> bool:
        if self._rank is None:
            self._rank = rank(self.field, self.gram)
        return self._rank == self.dim

    # -- subobjects ---------------------------------------------------------

    def orthogonal_complement(self, sub: Subobject) -> Subobject:
        """S-perp = { u : beta(s, u) = 0 for all s in S }."""
        rows = mat_mul(self.field, sub.basis().T, self.gram)
        return Subobject(self.obj, null_space(self.field, rows))

    def restrict(self, sub: Subobject) -> "BilinearForm":
        return self.restrict_with_basis(sub)[0]

    def restrict_with_basis(self, sub: Subobject) -> tuple["BilinearForm", np.ndarray]:
        """Re-express the form on a standard basis of the subobject.

        Returns (form, B) where the columns of B are the chosen standard
        basis of the subobject in ambient coordinates.
        """
        sobj, B = subobject_standard_basis(sub)
        return BilinearForm(sobj, linalg.congruence(self.field, B, self.gram)), B

    def split(self, sub: Subobject) -> tuple["BilinearForm", "BilinearForm"]:
        """Restrictions to S and S-perp; requires beta|_S non-degenerate."""
        restr = self.restrict(sub)
        if not restr.is_nondegenerate():
            raise ValueError("restriction to the subobject is degenerate; no splitting")
        comp = self.orthogonal_complement(sub)
        if sub.dim + comp.dim != self.dim:
            raise ValueError("subobject and complement do not fill the ambient object")
        return restr, self.restrict(comp)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": {"k": self.field.k},
            "object": self.obj.to_json(),
            "gram": self.gram.tolist(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "BilinearForm":
        try:
            k = doc["field"]["k"]
            m = doc["object"]["m"]
            n = doc["object"]["n"]
            gram = doc["gram"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed form document: missing {exc}") from exc
        if not all(isinstance(v, int) for v in (k, m, n)):
            raise ValueError("field degree and object sizes must be integers")
        F = make_field(k)
        return cls(VerObject(F, m, n), np.array(gram, dtype=np.int64))

    def __repr__(self):
        return f"BilinearForm({self.obj!r})"


def subobject_standard_basis(sub: Subobject) -> tuple[VerObject, np.ndarray]:
    """Standard form of a subobject and its basis in ambient coordinates.

    The returned columns are ordered like the standard basis of the m1 + nP
    shape of the subobject, so Gram matrices restrict by congruence with B.
    """
    F = sub.ambient.field
    Sb = sub.basis()
    if Sb.shape[1] == 0:
        return VerObject(F, 0, 0), Sb
    T = sub.ambient.t_action()
    t_sub = solve(F, Sb, mat_mul(F, T, Sb))
    sobj, phi = decompose(RawTModule(F, t_sub))
    B = mat_mul(F, Sb, linalg.inverse(F, phi.matrix))
    return sobj, B


def standard_subobject(obj: VerObject, v_indices, pair_indices) -> Subobject:
    """Subobject spanned by chosen standard v's and (w, x) pairs."""
    cols = []
    d = obj.dim
    for i in v_indices:
        e = np.zeros(d, dtype=np.int64)
        e[obj.v_slot(i)] = 1
        cols.append(e)
    for k in pair_indices:
        for slot in (obj.w_slot(k), obj.x_slot(k)):
            e = np.zeros(d, dtype=np.int64)
            e[slot] = 1
            cols.append(e)
    span = np.column_stack(cols) if cols else zeros(d, 0)
    return Subobject(obj, span)
