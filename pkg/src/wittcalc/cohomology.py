"""Mod-2 Galois cohomology as a symbol algebra.

Classes are F2-sets of symbols whose factors are basis square classes
(-1 and the primes over Q; -1 and the t_i over the formal backend).  The
normal form is canonical over the formal backend; over Q vanishing is
decided semantically (Hilbert symbols in degree 2, the real place above).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from . import fields
from .errors import BackendMismatch, DegreeOutOfRange, ZeroElement, ZeroFactor
from .fields import (
    FieldDescriptor,
    SquareClass,
    basis_factors,
    canonicalize,
    hilbert_symbol,
    minus_one,
)
from .witt import DiagonalForm, PfisterPresentation


@dataclass(frozen=True)
class Symbol:
    field: FieldDescriptor
    factors: tuple[SquareClass, ...]  # sorted basis classes, square-reduced

    @property
    def degree(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class CohClass:
    field: FieldDescriptor
    degree: int
    symbols: frozenset

    def is_presented_zero(self) -> bool:
        return not self.symbols


def coh_zero(field: FieldDescriptor, degree: int) -> CohClass:
    return CohClass(field, degree, frozenset())


def coh_unit(field: FieldDescriptor) -> CohClass:
    return CohClass(field, 0, frozenset({Symbol(field, ())}))


def _reduce_symbol(field: FieldDescriptor, factors) -> Symbol:
    """Apply (a)(a) = (a)(-1) to exhaustion and sort the factors."""
    m1 = minus_one(field)
    minus_count = 0
    counts: dict[SquareClass, int] = {}
    for f in factors:
        if f == m1:
            minus_count += 1
        else:
            counts[f] = counts.get(f, 0) + 1
    out = []
    for cls, c in counts.items():
        out.append(cls)
        minus_count += c - 1
    out.extend([m1] * minus_count)
    out.sort(key=lambda c: c.sort_key())
    return Symbol(field, tuple(out))


def _xor(acc: set, sym: Symbol) -> None:
    if sym in acc:
        acc.remove(sym)
    else:
        acc.add(sym)


def symbol_normalize(raw_factors, field: FieldDescriptor) -> CohClass:
    """Normal form of the symbol (a_1)...(a_n): multilinear expansion over the
    backend's basis, square relation, sorting."""
    try:
        factors = [canonicalize(f, field) for f in raw_factors]
    except ZeroElement as exc:
        raise ZeroFactor("symbol factor is zero") from exc
    degree = len(factors)
    if field.kind == fields.FINITE and degree >= 2:
        return coh_zero(field, degree)  # H^n(F_p) = 0 for n >= 2
    lists = [basis_factors(f) for f in factors]
    acc: set = set()
    for combo in itertools.product(*lists):
        _xor(acc, _reduce_symbol(field, combo))
    return CohClass(field, degree, frozenset(acc))


def coh_add(a: CohClass, b: CohClass) -> CohClass:
    if a.field != b.field:
        raise BackendMismatch("cohomology classes over different backends")
    if a.degree != b.degree:
        raise DegreeOutOfRange("cannot add classes of different degrees")
    return CohClass(a.field, a.degree, a.symbols ^ b.symbols)


def cup(a: CohClass, b: CohClass) -> CohClass:
    if a.field != b.field:
        raise BackendMismatch("cohomology classes over different backends")
    degree = a.degree + b.degree
    if a.field.kind == fields.FINITE and degree >= 2:
        return coh_zero(a.field, degree)
    acc: set = set()
    for sa in a.symbols:
        for sb in b.symbols:
            _xor(acc, _reduce_symbol(a.field, sa.factors + sb.factors))
    return CohClass(a.field, degree, frozenset(acc))


def is_zero(c: CohClass) -> bool:
    """Backend-specific vanishing decision."""
    field = c.field
    if field.kind in (fields.FORMAL, fields.REALS):
        return c.is_presented_zero()
    if field.kind == fields.FINITE:
        return c.degree >= 2 or c.is_presented_zero()
    if c.degree <= 1:
        return c.is_presented_zero()
    if c.degree == 2:
        places: set = {2, fields.INF}
        for sym in c.symbols:
            for f in sym.factors:
                if f.data not in (1, -1):
                    places.add(abs(f.data))
        for v in places:
            s = 1
            for sym in c.symbols:
                a, b = sym.factors
                s *= hilbert_symbol(a.data, b.data, v)
            if s != 1:
                return False
        return True
    # degree >= 3 over Q injects into H^n(R); a normalized symbol restricts
    # to the generator iff all its factors are negative
    m1 = minus_one(field)
    negatives = sum(1 for sym in c.symbols if all(f == m1 for f in sym.factors))
    return negatives % 2 == 0


def coh_eq(a: CohClass, b: CohClass) -> bool:
    return is_zero(coh_add(a, b))


def e_map(p: PfisterPresentation) -> CohClass:
    """Image of a Pfister combination under e_n: <<a_1,...,a_n>> -> (a_1)...(a_n)."""
    out = coh_zero(p.field, p.degree)
    for coeff, gens in p.terms:
        if coeff % 2:
            out = coh_add(out, symbol_normalize(gens, p.field))
    return out


def _sw_formal(q: DiagonalForm, d: int) -> CohClass:
    """Fast path: degree-graded classes over formal(g) are sets of generator
    subsets (bitmasks); cup with a degree-1 class is mask union."""
    field = q.field
    rows: list[set] = [set() for _ in range(d + 1)]
    rows[0].add(0)
    for idx, a in enumerate(q.entries):
        neg, gens = a.data
        items = ([0] if neg else []) + [1 << i for i in gens]
        if not items:
            continue  # trivial entry kills every symbol containing it
        for j in range(min(d, idx + 1), 0, -1):
            tgt = rows[j]
            for it in items:
                for m in rows[j - 1]:
                    mm = m | it
                    if mm in tgt:
                        tgt.remove(mm)
                    else:
                        tgt.add(mm)
    m1 = minus_one(field)
    syms = set()
    for mask in rows[d]:
        gens = tuple(i for i in range(field.g) if mask >> i & 1)
        factors = tuple(
            sorted(
                [m1] * (d - len(gens))
                + [SquareClass(field, (False, (i,))) for i in gens],
                key=lambda c: c.sort_key(),
            )
        )
        syms.add(Symbol(field, factors))
    return CohClass(field, d, frozenset(syms))


def sw(q: DiagonalForm, d: int) -> CohClass:
    """d-th Stiefel-Whitney class: sum of (a_{i_1})...(a_{i_d}) over subsets."""
    if not 0 <= d <= q.dim:
        raise DegreeOutOfRange(f"sw degree {d} out of range for dim {q.dim}")
    if q.field.kind == fields.FORMAL:
        return _sw_formal(q, d)
    rows = [coh_unit(q.field)] + [coh_zero(q.field, j) for j in range(1, d + 1)]
    for idx, a in enumerate(q.entries):
        deg1 = symbol_normalize([a], q.field)
        for j in range(min(d, idx + 1), 0, -1):
            rows[j] = coh_add(rows[j], cup(rows[j - 1], deg1))
    return rows[d]


def sw_mod(q: DiagonalForm, d: int) -> CohClass:
    """Modified Stiefel-Whitney class: sw_d, plus (2).sw_{d-1} for even d."""
    out = sw(q, d)
    if d >= 2 and d % 2 == 0:
        two = symbol_normalize([canonicalize(2, q.field)], q.field)
        out = coh_add(out, cup(two, sw(q, d - 1)))
    return out


def sw_lift(n: int, d: int) -> list[int]:
    """Coefficients c_l with sw_d = e_d o (sum c_l lambda^l) on rank-n forms."""
    if not 0 <= d <= n:
        raise DegreeOutOfRange(f"degree {d} out of range for rank {n}")
    return [(-1) ** l * comb(n - l, d - l) for l in range(d + 1)]


@dataclass(frozen=True)
class ModSwLiftRecipe:
    """Lift of the modified Stiefel-Whitney class to lambda-power combinations.

    ``plain`` are integer coefficients on lambda^0..lambda^d; ``two_scaled``
    (even d only) are coefficients on <<2>>.lambda^0..<<2>>.lambda^{d-1}.
    """

    n: int
    d: int
    plain: tuple[int, ...]
    two_scaled: tuple[int, ...] | None

    def apply(self, q: DiagonalForm):
        from .witt import lambda_power, pfister, witt_add, witt_int_scale, witt_mul, witt_zero

        out = witt_zero(q.field)
        for l, c in enumerate(self.plain):
            out = witt_add(out, witt_int_scale(c, lambda_power(q, l)))
        if self.two_scaled is not None:
            two = pfister(q.field, [canonicalize(2, q.field)])
            part = witt_zero(q.field)
            for l, c in enumerate(self.two_scaled):
                part = witt_add(part, witt_int_scale(c, lambda_power(q, l)))
            out = witt_add(out, witt_mul(two, part))
        return out


def sw_mod_lift(n: int, d: int) -> ModSwLiftRecipe:
    if not 0 <= d <= n:
        raise DegreeOutOfRange(f"degree {d} out of range for rank {n}")
    plain = tuple(sw_lift(n, d))
    if d == 0 or d % 2:
        return ModSwLiftRecipe(n, d, plain, None)
    two_scaled = tuple((-1) ** l * comb(n - l, d - 1 - l) for l in range(d))
    return ModSwLiftRecipe(n, d, plain, two_scaled)


def coh_to_json(c: CohClass):
    return {
        "degree": c.degree,
        "symbols": sorted(
            [[fields.sq_to_json(f) for f in sym.factors] for sym in c.symbols],
            key=str,
        ),
    }


def coh_from_json(obj, field: FieldDescriptor) -> CohClass:
    out = coh_zero(field, int(obj["degree"]))
    for factors in obj["symbols"]:
        out = coh_add(
            out, symbol_normalize([fields.sq_from_json(f, field) for f in factors], field)
        )
    return out
