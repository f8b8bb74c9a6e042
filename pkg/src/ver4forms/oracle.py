"""Brute-force ground truth for the classification on tiny objects.

`enumerate_forms` walks every non-degenerate symmetric compatible Gram on
m1 + nP exactly once by iterating over the free entries left by the
compatibility law: the symmetric m x m unit block, the m x n block pairing
v's with w's, the symmetric n x n w-w block and the symmetric n x n w-x
block (everything else is zero or determined).

`orbit_classes` computes the congruence orbits under the full group of
invertible equivariant maps by applying the whole group to each canonical
representative, then checks that the orbits are disjoint, cover the
enumerated set, and are constant under `classify`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .bform import BilinearForm
from .classify import CanonicalClass, canonical_rep, classify
from .field import Field
from .linalg import batch_congruence, zeros
from .verobj import VerObject

DEFAULT_BUDGET_BITS = 24


def free_entry_count(m: int, n: int) -> int:
    return m * (m + 1) // 2 + m * n + n * (n + 1) // 2 + n * (n + 1) // 2


def _check_budget(m: int, n: int, F: Field, budget_bits: int):
    bits = F.k * free_entry_count(m, n)
    if bits > budget_bits:
        raise ValueError(
            f"enumeration needs 2^{bits} candidates, over the 2^{budget_bits} budget"
        )


def enumerate_forms(m: int, n: int, F: Field, budget_bits: int = DEFAULT_BUDGET_BITS):
    """Yield every non-degenerate symmetric compatible form exactly once."""
    _check_budget(m, n, F, budget_bits)
    obj = VerObject(F, m, n)
    d = obj.dim
    q = F.order
    sym_m = [(i, j) for i in range(m) for j in range(i, m)]
    vw = [(i, k) for i in range(m) for k in range(n)]
    sym_n = [(j, k) for j in range(n) for k in range(j, n)]
    cnt = len(sym_m) + len(vw) + 2 * len(sym_n)
    for entries in itertools.product(range(q), repeat=cnt):
        G = zeros(d, d)
        at = 0
        for i, j in sym_m:
            G[obj.v_slot(i), obj.v_slot(j)] = entries[at]
            G[obj.v_slot(j), obj.v_slot(i)] = entries[at]
            at += 1
        for i, k in vw:
            G[obj.v_slot(i), obj.w_slot(k)] = entries[at]
            G[obj.w_slot(k), obj.v_slot(i)] = entries[at]
            at += 1
        for j, k in sym_n:
            G[obj.w_slot(j), obj.w_slot(k)] = entries[at]
            G[obj.w_slot(k), obj.w_slot(j)] = entries[at]
            at += 1
        for j, k in sym_n:
            v = entries[at]
            G[obj.w_slot(j), obj.x_slot(k)] = v
            G[obj.x_slot(k), obj.w_slot(j)] = v
            G[obj.w_slot(k), obj.x_slot(j)] = v
            G[obj.x_slot(j), obj.w_slot(k)] = v
            at += 1
        if linalg.is_invertible(F, G):
            yield BilinearForm(obj, G)


def equivariant_group(m: int, n: int, F: Field):
    """All invertible matrices commuting with the standard t-action.

    Shape: v's map through a GL(m) block plus arbitrary x-components, w's
    through a GL(n) block plus arbitrary v- and x-components (x-columns
    follow the w-columns).
    """
    obj = VerObject(F, m, n)
    q = F.order

    def gl(size):
        for entries in itertools.product(range(q), repeat=size * size):
            M = np.array(entries, dtype=np.int64).reshape(size, size)
            if linalg.is_invertible(F, M):
                yield M

    def full(rows, cols):
        for entries in itertools.product(range(q), repeat=rows * cols):
            yield np.array(entries, dtype=np.int64).reshape(rows, cols)

    for A in gl(m):
        for E in gl(n):
            for C in full(n, m):
                for D in full(m, n):
                    for Fm in full(n, n):
                        M = zeros(obj.dim, obj.dim)
                        for j in range(m):
                            for i in range(m):
                                M[obj.v_slot(i), obj.v_slot(j)] = A[i, j]
                            for k in range(n):
                                M[obj.x_slot(k), obj.v_slot(j)] = C[k, j]
                        for j in range(n):
                            for i in range(m):
                                M[obj.v_slot(i), obj.w_slot(j)] = D[i, j]
                            for k in range(n):
                                M[obj.w_slot(k), obj.w_slot(j)] = E[k, j]
                                M[obj.x_slot(k), obj.w_slot(j)] = Fm[k, j]
                                M[obj.x_slot(k), obj.x_slot(j)] = E[k, j]
                        yield M


def class_inventory(m: int, n: int, F: Field) -> list[CanonicalClass]:
    """Every canonical class living on m1 + nP over the given field."""
    out = []
    if m > 0 and n % 2 == 0:
        out.append(CanonicalClass("A", m, n))
    if m > 0 and n > 0:
        out.append(CanonicalClass("B", m, n))
    if m % 2 == 0 and n % 2 == 0:
        out.append(CanonicalClass("C", m, n))
    if m % 2 == 0 and n % 2 == 0 and n >= 2:
        out.append(CanonicalClass("D", m, n))
    if m % 2 == 0 and n > 0:
        out += [CanonicalClass("E", m, n, a) for a in F.elements()]
    if m % 2 == 0 and n >= 2:
        out += [
            CanonicalClass("F", m, n, phi)
            for phi in F.elements()
            if not (n == 2 and phi == 0)
        ]
    return out


@dataclass
class OrbitReport:
    """Orbit census of the congruence action on one (m, n, field)."""

    m: int
    n: int
    field_k: int
    total_forms: int
    group_order: int
    orbits: list = dc_field(default_factory=list)  # (label, size, representative gram)

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "field": {"k": self.field_k},
            "total_forms": self.total_forms,
            "group_order": self.group_order,
            "orbit_count": self.orbit_count,
            "orbits": [
                {"label": label, "size": size, "representative": rep.tolist()}
                for label, size, rep in self.orbits
            ],
        }

    def summary(self) -> str:
        lines = [
            f"(m, n) = ({self.m}, {self.n}) over GF(2^{self.field_k}): "
            f"{self.total_forms} non-degenerate symmetric forms, "
            f"{self.orbit_count} orbits, group order {self.group_order}"
        ]
        for label, size, _rep in self.orbits:
            lines.append(f"  {label}: orbit size {size}")
        return "\n".join(lines)


def orbit_classes(m: int, n: int, F: Field, budget_bits: int = DEFAULT_BUDGET_BITS) -> OrbitReport:
    """Compute orbits by sweeping the group over canonical representatives.

    Verifies that orbits are pairwise disjoint, cover the enumerated form
    set, and that `classify` is constant on each orbit with the predicted
    label.
    """
    all_grams: dict[bytes, np.ndarray] = {}
    for form in enumerate_forms(m, n, F, budget_bits):
        all_grams[form.gram.tobytes()] = form.gram
    group = np.stack(list(equivariant_group(m, n, F)))
    inventory = class_inventory(m, n, F)
    obj = VerObject(F, m, n)
    report = OrbitReport(m, n, F.k, len(all_grams), group.shape[0])
    covered: set[bytes] = set()
    for cls in inventory:
        rep = canonical_rep(cls, F)
        images = batch_congruence(F, group, rep.gram)
        flat = np.unique(images.reshape(images.shape[0], -1), axis=0)
        orbit = {flat[idx].reshape(obj.dim, obj.dim).tobytes() for idx in range(flat.shape[0])}
        if not orbit <= set(all_grams):
            raise AssertionError(f"orbit of {cls} leaves the enumerated set")
        if orbit & covered:
            raise AssertionError(f"orbit of {cls} meets a previous orbit")
        for key in orbit:
            got = classify(BilinearForm(obj, all_grams[key]))
            if got != cls:
                raise AssertionError(
                    f"orbit member of {cls} classified as {got}"
                )
        covered |= orbit
        report.orbits.append((cls.label(), len(orbit), rep.gram))
    if covered != set(all_grams):
        raise AssertionError("orbits do not cover the enumerated form set")
    return report
