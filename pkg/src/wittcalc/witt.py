"""Diagonal quadratic forms and Witt-ring arithmetic.

Witt classes are stored as integer combinations of square classes.  The
presentation is normalized (signs folded into coefficients where the backend
has a preferred representative) but is not a canonical form over Q; equality
there is a decision procedure built on Hasse-Minkowski invariants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import fields
from .errors import (
    BackendMismatch,
    DegenerateMatrix,
    DegreeOutOfRange,
    UnsupportedBackend,
)
from .fields import (
    FieldDescriptor,
    SquareClass,
    canonicalize,
    hilbert_symbol,
    minus_one,
    orderings,
    signature_at,
    sq_mul,
    trivial_class,
)


@dataclass(frozen=True)
class DiagonalForm:
    field: FieldDescriptor
    entries: tuple[SquareClass, ...]

    def __post_init__(self) -> None:
        for e in self.entries:
            if e.field != self.field:
                raise BackendMismatch("diagonal entry over a different backend")

    @property
    def dim(self) -> int:
        return len(self.entries)


def diagonal(field: FieldDescriptor, raws) -> DiagonalForm:
    return DiagonalForm(field, tuple(canonicalize(r, field) for r in raws))


def _fold(field: FieldDescriptor, cls: SquareClass, coeff: int) -> tuple[SquareClass, int]:
    """Fold <-a> = -<a> onto the backend's preferred representative."""
    if field.kind == fields.RATIONALS and cls.data < 0:
        return SquareClass(field, -cls.data), -coeff
    if field.kind == fields.REALS and cls.data < 0:
        return SquareClass(field, 1), -coeff
    if field.kind == fields.FORMAL:
        neg, gens = cls.data
        if neg:
            return SquareClass(field, (False, gens)), -coeff
    if field.kind == fields.FINITE and cls.data == 1 and cls == minus_one(field):
        # p = 3 mod 4: the nonresidue class is <-1>
        return trivial_class(field), -coeff
    return cls, coeff


@dataclass(frozen=True)
class WittClass:
    field: FieldDescriptor
    terms: tuple[tuple[SquareClass, int], ...]  # sorted, folded, nonzero coeffs

    def coeff(self, cls: SquareClass) -> int:
        for c, k in self.terms:
            if c == cls:
                return k
        return 0

    def is_presented_zero(self) -> bool:
        return not self.terms


def make_witt(field: FieldDescriptor, term_map) -> WittClass:
    acc: dict[SquareClass, int] = {}
    for cls, coeff in term_map.items() if isinstance(term_map, dict) else term_map:
        cls, coeff = _fold(field, cls, coeff)
        acc[cls] = acc.get(cls, 0) + coeff
    items = [(c, k) for c, k in acc.items() if k != 0]
    items.sort(key=lambda t: t[0].sort_key())
    return WittClass(field, tuple(items))


def witt_zero(field: FieldDescriptor) -> WittClass:
    return WittClass(field, ())


def witt_one(field: FieldDescriptor) -> WittClass:
    return make_witt(field, {trivial_class(field): 1})


def from_diagonal(q: DiagonalForm) -> WittClass:
    acc: dict[SquareClass, int] = {}
    for e in q.entries:
        acc[e] = acc.get(e, 0) + 1
    return make_witt(q.field, acc)


def witt_add(a: WittClass, b: WittClass) -> WittClass:
    if a.field != b.field:
        raise BackendMismatch("witt classes over different backends")
    acc = dict(a.terms)
    for cls, k in b.terms:
        acc[cls] = acc.get(cls, 0) + k
    return make_witt(a.field, acc)


def witt_neg(a: WittClass) -> WittClass:
    return WittClass(a.field, tuple((c, -k) for c, k in a.terms))


def witt_sub(a: WittClass, b: WittClass) -> WittClass:
    return witt_add(a, witt_neg(b))


def witt_mul(a: WittClass, b: WittClass) -> WittClass:
    if a.field != b.field:
        raise BackendMismatch("witt classes over different backends")
    acc: dict[SquareClass, int] = {}
    for ca, ka in a.terms:
        for cb, kb in b.terms:
            c = sq_mul(ca, cb)
            acc[c] = acc.get(c, 0) + ka * kb
    return make_witt(a.field, acc)


def witt_int_scale(k: int, a: WittClass) -> WittClass:
    return make_witt(a.field, {c: k * v for c, v in a.terms})


def witt_scale(q: WittClass, a: WittClass) -> WittClass:
    """Module scaling; the scalar may live over the rationals and is mapped in."""
    if q.field == a.field:
        return witt_mul(q, a)
    if q.field.kind == fields.RATIONALS:
        mapped = make_witt(
            a.field, {canonicalize(Fraction(c.data), a.field): k for c, k in q.terms}
        )
        return witt_mul(mapped, a)
    raise BackendMismatch("scalar backend cannot be mapped into the value backend")


def pfister(field: FieldDescriptor, alphas) -> WittClass:
    """n-fold Pfister form <<a_1, ..., a_n>> = (x) <1, -a_i>; empty product is <1>."""
    out = witt_one(field)
    for a in alphas:
        cls = canonicalize(a, field)
        factor = make_witt(field, [(trivial_class(field), 1), (cls, -1)])
        out = witt_mul(out, factor)
    return out


@dataclass(frozen=True)
class PfisterPresentation:
    """Integer combination of d-fold Pfister forms."""

    field: FieldDescriptor
    degree: int
    terms: tuple[tuple[int, tuple[SquareClass, ...]], ...]

    def __post_init__(self) -> None:
        for _, gens in self.terms:
            if len(gens) != self.degree:
                raise DegreeOutOfRange("pfister term of wrong degree")

    def to_witt(self) -> WittClass:
        out = witt_zero(self.field)
        for coeff, gens in self.terms:
            out = witt_add(out, witt_int_scale(coeff, pfister(self.field, gens)))
        return out


def lambda_power(q: DiagonalForm, d: int) -> WittClass:
    """Sum of <prod_{i in I} a_i> over size-d subsets I, via iterative DP."""
    if not 0 <= d <= q.dim:
        raise DegreeOutOfRange(f"lambda degree {d} out of range for dim {q.dim}")
    rows: list[dict[SquareClass, int]] = [dict() for _ in range(d + 1)]
    rows[0][trivial_class(q.field)] = 1
    for idx, a in enumerate(q.entries):
        for j in range(min(d, idx + 1), 0, -1):
            tgt = rows[j]
            for cls, k in rows[j - 1].items():
                c = sq_mul(cls, a)
                tgt[c] = tgt.get(c, 0) + k
    return make_witt(q.field, rows[d])


def _det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return det


@dataclass(frozen=True)
class GramMatrix:
    field: FieldDescriptor
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise DegenerateMatrix("gram matrix is not square")
        for i in range(n):
            for j in range(n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise DegenerateMatrix("gram matrix is not symmetric")

    @property
    def dim(self) -> int:
        return len(self.entries)


def gram(field: FieldDescriptor, rows) -> GramMatrix:
    return GramMatrix(field, tuple(tuple(Fraction(x) for x in row) for row in rows))


def gram_of_diagonal(q: DiagonalForm) -> GramMatrix:
    n = q.dim
    rows = [
        [Fraction(q.entries[i].data) if i == j else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    return GramMatrix(q.field, tuple(tuple(r) for r in rows))


def lambda_power_gram_oracle(g: GramMatrix, d: int) -> GramMatrix:
    """Gram matrix of the d-th exterior power: entries are d x d minors."""
    n = g.dim
    if not 0 <= d <= n:
        raise DegreeOutOfRange(f"lambda degree {d} out of range for dim {n}")
    basis = list(itertools.combinations(range(n), d))
    rows = []
    for I in basis:
        row = []
        for J in basis:
            row.append(_det([[g.entries[i][j] for j in J] for i in I]))
        rows.append(tuple(row))
    return GramMatrix(g.field, tuple(rows))


def diagonalize(g: GramMatrix) -> DiagonalForm:
    """Diagonal form congruent to g, by symmetric pivoting over exact rationals."""
    n = g.dim
    m = [list(row) for row in g.entries]
    entries = []
    for k in range(n):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                m[k], m[j] = m[j], m[k]
                for row in m:
                    row[k], row[j] = row[j], row[k]
            else:
                # all remaining diagonal entries vanish; repair with an
                # off-diagonal entry (adds 2*m[k][j] to the pivot, char 0)
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    raise DegenerateMatrix("gram matrix is degenerate")
                for col in range(n):
                    m[k][col] += m[j][col]
                for row in m:
                    row[k] += row[j]
        piv = m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / piv
            if f == 0:
                continue
            for col in range(n):
                m[i][col] -= f * m[k][col]
            for row in m:
                row[i] -= f * row[k]
        entries.append(canonicalize(piv, g.field))
    return DiagonalForm(g.field, tuple(entries))


def _realized_entries(a: WittClass) -> list[SquareClass]:
    """Actual diagonal entries representing the class (<-x> for -<x>)."""
    out = []
    m1 = minus_one(a.field)
    for cls, k in a.terms:
        rep = cls if k > 0 else sq_mul(cls, m1)
        out.extend([rep] * abs(k))
    return out


def total_signature(a: WittClass, ordering: tuple[int, ...]) -> int:
    return sum(k * signature_at(cls, ordering) for cls, k in a.terms)


def signatures(a: WittClass) -> dict[tuple[int, ...], int]:
    """Signature of the class at each ordering of the reals/formal backend."""
    if a.field.kind not in (fields.REALS, fields.FORMAL):
        raise UnsupportedBackend("signatures need the reals or formal backend")
    return {eps: total_signature(a, eps) for eps in orderings(a.field)}


def filtration_degree(a: WittClass, cap: int) -> int:
    """Largest d <= cap with a in I^d, via 2-divisibility of all signatures."""
    if a.field.kind not in (fields.REALS, fields.FORMAL):
        raise UnsupportedBackend("filtration degree needs the reals or formal backend")
    if cap < 0:
        raise DegreeOutOfRange("cap must be >= 0")
    sigs = list(signatures(a).values())
    d = 0
    while d < cap and all(s % (2 ** (d + 1)) == 0 for s in sigs):
        d += 1
    return d


def virtual_rank(a: WittClass) -> int:
    return sum(k for _, k in a.terms)


def _disc_class(field: FieldDescriptor, entries: list[SquareClass]) -> SquareClass:
    r = len(entries)
    disc = trivial_class(field)
    for e in entries:
        disc = sq_mul(disc, e)
    if (r * (r - 1) // 2) % 2:
        disc = sq_mul(disc, minus_one(field))
    return disc


def _hasse_places(entries: list[SquareClass]) -> set:
    places = {2}
    for e in entries:
        n = abs(e.data)
        d = 2
        while d * d <= n:
            if n % d == 0:
                places.add(d)
                while n % d == 0:
                    n //= d
            else:
                d += 1 if d == 2 else 2
        if n > 1:
            places.add(n)
    return places


def witt_eq(a: WittClass, b: WittClass) -> bool:
    """Equality in W(k), decided per backend."""
    if a.field != b.field:
        raise BackendMismatch("witt classes over different backends")
    field = a.field
    w = witt_sub(a, b)
    if field.kind == fields.FORMAL:
        # W of the iterated Laurent field is Z[(Z/2)^g]; the folded
        # presentation is canonical.
        return w.is_presented_zero()
    if field.kind == fields.REALS:
        return total_signature(w, ()) == 0
    entries = _realized_entries(w)
    if len(entries) % 2:
        return False
    if field.kind == fields.FINITE:
        return _disc_class(field, entries).is_trivial()
    # rationals: w is hyperbolic iff dim 2m, signature 0, trivial
    # discriminant, and Hasse invariant of m hyperbolic planes everywhere
    m = len(entries) // 2
    if sum(1 if e.data > 0 else -1 for e in entries) != 0:
        return False
    if not _disc_class(field, entries).is_trivial():
        return False
    target_exp = (m * (m - 1) // 2) % 2
    for p in _hasse_places(entries):
        s = 1
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                s *= hilbert_symbol(entries[i].data, entries[j].data, p)
        if s != hilbert_symbol(-1, -1, p) ** target_exp:
            return False
    return True


def witt_to_json(a: WittClass):
    return [{"class": fields.sq_to_json(c), "coeff": k} for c, k in a.terms]


def witt_from_json(obj, field: FieldDescriptor) -> WittClass:
    return make_witt(
        field, [(fields.sq_from_json(t["class"], field), int(t["coeff"])) for t in obj]
    )


def form_to_json(q: DiagonalForm):
    return [fields.sq_to_json(e) for e in q.entries]


def form_from_json(obj, field: FieldDescriptor) -> DiagonalForm:
    return DiagonalForm(field, tuple(fields.sq_from_json(e, field) for e in obj))


def gram_to_json(g: GramMatrix):
    return [[f"{x.numerator}/{x.denominator}" for x in row] for row in g.entries]


def gram_from_json(obj, field: FieldDescriptor) -> GramMatrix:
    return gram(field, [[Fraction(x) for x in row] for row in obj])
