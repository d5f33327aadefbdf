"""Signed-permutation (wreath product) groups and invariant evaluation.

The group (Z/2) wr S_n is the Weyl group of type B_n; elements are written
sigma * prod_{i in I} s_i with the sign flips acting first.  Multiquadratic
torsors are homomorphisms (Z/2)^m -> G cut out by independent square
classes; twisting finite G-sets along them produces etale algebras whose
trace forms realize the invariants a_K, a_L, u_d, v_d', v_d, r and the
rank-2 basis of the G2 Weyl group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import fields
from .cohomology import (
    CohClass,
    coh_add,
    coh_unit,
    cup,
    sw_mod,
    sw_mod_lift,
)
from .errors import (
    BadBackend,
    DegreeOutOfRange,
    InconsistentAction,
    InvalidInput,
    NotInDn,
    SizeMismatch,
    WrongTarget,
)
from .etale import EtaleAlgebra, Multiquadratic, _f2_independent, trace_form
from .fields import FieldDescriptor, SquareClass, canonicalize, rationals
from .witt import (
    DiagonalForm,
    WittClass,
    from_diagonal,
    make_witt,
    witt_mul,
    witt_one,
)

SN = "sn"
BN = "bn"
DN = "dn"

# ---------------------------------------------------------------------------
# permutations: tuples p with p[i-1] = image of i, values 1-based


def perm_identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def perm_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Composite applying q first, then p."""
    return tuple(p[q[i] - 1] for i in range(len(p)))


def perm_inv(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v - 1] = i + 1
    return tuple(out)


@dataclass(frozen=True)
class WreathElement:
    n: int
    perm: tuple[int, ...]
    flips: frozenset

    def __post_init__(self) -> None:
        if len(self.perm) != self.n or sorted(self.perm) != list(range(1, self.n + 1)):
            raise InvalidInput("perm is not a permutation of 1..n")
        if any(not (1 <= i <= self.n) for i in self.flips):
            raise InvalidInput("flip index out of range")

    def is_identity(self) -> bool:
        return self.perm == perm_identity(self.n) and not self.flips


def wreath(n: int, perm=None, flips=()) -> WreathElement:
    return WreathElement(n, tuple(perm) if perm else perm_identity(n), frozenset(flips))


def wreath_mul(a: WreathElement, b: WreathElement) -> WreathElement:
    """(sigma, I)(tau, J) = (sigma tau, tau^{-1}(I) xor J)."""
    if a.n != b.n:
        raise SizeMismatch("wreath elements of different degrees")
    binv = perm_inv(b.perm)
    moved = frozenset(binv[i - 1] for i in a.flips)
    return WreathElement(a.n, perm_mul(a.perm, b.perm), moved ^ b.flips)


def rho(a: WreathElement) -> tuple[int, ...]:
    """Underlying permutation of the n points."""
    return a.perm


def rho2(a: WreathElement) -> tuple[int, ...]:
    """Action on 2n points: j and j+n swap levels exactly when j is flipped."""
    n = a.n
    out = [0] * (2 * n)
    for j in range(1, n + 1):
        s = a.perm[j - 1]
        if j in a.flips:
            out[j - 1] = s + n
            out[n + j - 1] = s
        else:
            out[j - 1] = s
            out[n + j - 1] = s + n
    return tuple(out)


def even_vectors(n: int) -> list[tuple[int, ...]]:
    return [v for v in itertools.product((0, 1), repeat=n) if sum(v) % 2 == 0]


def dn_coset_action(n: int, a: WreathElement) -> tuple[int, ...]:
    """Action on the 2^{n-1} index-2-subgroup cosets, indexed by even-weight
    sign vectors: v -> sigma(v + w) with w the flip indicator."""
    if a.n != n:
        raise SizeMismatch("element degree does not match n")
    if len(a.flips) % 2:
        raise NotInDn("odd flip set is not in the index-2 subgroup")
    vecs = even_vectors(n)
    index = {v: i + 1 for i, v in enumerate(vecs)}
    w = tuple(1 if i + 1 in a.flips else 0 for i in range(n))
    pinv = perm_inv(a.perm)
    out = []
    for v in vecs:
        shifted = tuple((x + y) % 2 for x, y in zip(v, w))
        permuted = tuple(shifted[pinv[j] - 1] for j in range(n))
        out.append(index[permuted])
    return tuple(out)


# ---------------------------------------------------------------------------
# torsors and G-sets


@dataclass(frozen=True)
class MultiquadraticTorsor:
    field: FieldDescriptor
    d: tuple[SquareClass, ...]
    target: tuple  # (SN|BN|DN, n)
    images: tuple[WreathElement, ...]

    def __post_init__(self) -> None:
        kind, n = self.target
        if kind not in (SN, BN, DN):
            raise InvalidInput(f"unknown target {kind!r}")
        if self.field.kind not in (fields.RATIONALS, fields.FORMAL):
            raise BadBackend("torsors live over the rationals or formal backends")
        if len(self.images) != len(self.d):
            raise InvalidInput("one image per square class required")
        if not _f2_independent(self.d):
            raise InvalidInput("square classes are not F2-independent")
        if self.field.kind == fields.FORMAL:
            gens = set()
            for c in self.d:
                neg, gs = c.data
                if neg or len(gs) != 1:
                    raise InvalidInput("formal torsor classes must be distinct generators")
                gens.update(gs)
            if len(gens) != len(self.d):
                raise InvalidInput("formal torsor classes must be distinct generators")
        for g in self.images:
            if g.n != n:
                raise SizeMismatch("image degree does not match target")
            if kind == SN and g.flips:
                raise InvalidInput("symmetric-group image cannot flip signs")
            if kind == DN and len(g.flips) % 2:
                raise NotInDn("image has odd flip set")
            if not wreath_mul(g, g).is_identity():
                raise InvalidInput("image is not an involution")
        for g, h in itertools.combinations(self.images, 2):
            if wreath_mul(g, h) != wreath_mul(h, g):
                raise InvalidInput("images do not commute")

    @property
    def n(self) -> int:
        return self.target[1]

    @property
    def rank(self) -> int:
        return len(self.d)


def torsor(field, d, target, images) -> MultiquadraticTorsor:
    return MultiquadraticTorsor(
        field,
        tuple(canonicalize(x, field) for x in d),
        (target[0], int(target[1])),
        tuple(images),
    )


@dataclass(frozen=True)
class GSet:
    """Commuting involutions of {1..size}, one per torsor generator."""

    size: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        ident = perm_identity(self.size)
        for p in self.perms:
            if sorted(p) != list(ident):
                raise InconsistentAction("action image is not a permutation")
            if perm_mul(p, p) != ident:
                raise InconsistentAction("action image is not an involution")
        for p, q in itertools.combinations(self.perms, 2):
            if perm_mul(p, q) != perm_mul(q, p):
                raise InconsistentAction("action images do not commute")


def gset_rho(t: MultiquadraticTorsor) -> GSet:
    return GSet(t.n, tuple(rho(g) for g in t.images))


def gset_rho2(t: MultiquadraticTorsor) -> GSet:
    return GSet(2 * t.n, tuple(rho2(g) for g in t.images))


def gset_dn(t: MultiquadraticTorsor) -> GSet:
    return GSet(2 ** (t.n - 1), tuple(dn_coset_action(t.n, g) for g in t.images))


def _orbit(x: GSet, start: int) -> frozenset:
    seen = {start}
    frontier = [start]
    while frontier:
        pt = frontier.pop()
        for p in x.perms:
            nxt = p[pt - 1]
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def _f2_basis(vectors, m: int):
    """Row-reduce 0/1 tuples of length m; returns an independent basis."""
    basis = []
    for v in vectors:
        cur = list(v)
        for lead, row in basis:
            if cur[lead]:
                cur = [(a + b) % 2 for a, b in zip(cur, row)]
        if any(cur):
            basis.append((next(i for i in range(m) if cur[i]), cur))
    return [row for _, row in basis]


def twist(t: MultiquadraticTorsor, x: GSet) -> EtaleAlgebra:
    """Twisted form of the split algebra on the G-set: one multiquadratic
    component per orbit, cut out by the characters orthogonal to the
    orbit stabilizer."""
    m = t.rank
    if len(x.perms) != m:
        raise InconsistentAction("one action image per torsor generator required")
    remaining = set(range(1, x.size + 1))
    components = []
    while remaining:
        start = min(remaining)
        orbit = _orbit(x, start)
        remaining -= orbit
        stab = []
        for eps in itertools.product((0, 1), repeat=m):
            pt = start
            for i, e in enumerate(eps):
                if e:
                    pt = x.perms[i][pt - 1]
            if pt == start:
                stab.append(eps)
        perp = [
            delta
            for delta in itertools.product((0, 1), repeat=m)
            if all(sum(a * b for a, b in zip(delta, eps)) % 2 == 0 for eps in stab)
        ]
        classes = []
        for delta in _f2_basis(perp, m):
            cls = fields.trivial_class(t.field)
            for i, e in enumerate(delta):
                if e:
                    cls = cls * t.d[i]
            classes.append(cls)
        components.append(Multiquadratic(t.field, tuple(classes)))
    return EtaleAlgebra(t.field, tuple(components))


# ---------------------------------------------------------------------------
# invariant evaluators


def _require_target(t: MultiquadraticTorsor, kind: str) -> None:
    if t.target[0] != kind:
        raise WrongTarget(f"expected a {kind} torsor, got {t.target[0]}")


def eval_aK(t: MultiquadraticTorsor) -> DiagonalForm:
    """Trace form of the degree-n algebra twisted along the n-point action."""
    _require_target(t, BN)
    return trace_form(twist(t, gset_rho(t)))


def eval_aL(t: MultiquadraticTorsor) -> DiagonalForm:
    """Trace form of the quadratic layer, via the 2n-point action."""
    _require_target(t, BN)
    return trace_form(twist(t, gset_rho2(t)))


def eval_u(t: MultiquadraticTorsor, d: int) -> CohClass:
    if not 0 <= d <= t.n:
        raise DegreeOutOfRange(f"u degree {d} out of range for n = {t.n}")
    return sw_mod(eval_aK(t), d)


def eval_v_prime(t: MultiquadraticTorsor, d: int) -> CohClass:
    if not 0 <= d <= 2 * t.n:
        raise DegreeOutOfRange(f"v' degree {d} out of range for n = {t.n}")
    return sw_mod(eval_aL(t), d)


def eval_v(t: MultiquadraticTorsor, d: int) -> CohClass:
    """v_d = v'_d + sum_{i<d} u_{d-i} . v_i, with v_0 the unit."""
    if not 0 <= d <= 2 * t.n:
        raise DegreeOutOfRange(f"v degree {d} out of range for n = {t.n}")
    vs = [coh_unit(t.field)]
    for k in range(1, d + 1):
        acc = eval_v_prime(t, k)
        for i in range(k):
            if k - i <= t.n:
                acc = coh_add(acc, cup(eval_u(t, k - i), vs[i]))
        vs.append(acc)
    return vs[d]


def lift_u(t: MultiquadraticTorsor, d: int) -> WittClass:
    """Witt class whose degree-d e-image matches eval_u."""
    if not 0 <= d <= t.n:
        raise DegreeOutOfRange(f"u degree {d} out of range for n = {t.n}")
    return sw_mod_lift(t.n, d).apply(eval_aK(t))


def lift_v_prime(t: MultiquadraticTorsor, d: int) -> WittClass:
    if not 0 <= d <= 2 * t.n:
        raise DegreeOutOfRange(f"v' degree {d} out of range for n = {t.n}")
    return sw_mod_lift(2 * t.n, d).apply(eval_aL(t))


def eval_r(t: MultiquadraticTorsor) -> DiagonalForm:
    """Trace form of the 2^{n-1}-point coset algebra for the even subgroup."""
    _require_target(t, DN)
    return trace_form(twist(t, gset_dn(t)))


def eval_dn_traces(t: MultiquadraticTorsor):
    """(a_K, a_L) of the torsor pushed into the full signed group."""
    _require_target(t, DN)
    b = MultiquadraticTorsor(t.field, t.d, (BN, t.n), t.images)
    return eval_aK(b), eval_aL(b)


def eval_g2_basis(t2: MultiquadraticTorsor, t3: MultiquadraticTorsor):
    """Basis evaluations (<1>, quadratic trace, cubic trace, product) for the
    product group S2 x S3."""
    _require_target(t2, SN)
    _require_target(t3, SN)
    if t2.n != 2 or t3.n != 3:
        raise WrongTarget("need torsors into S2 and S3")
    if t2.field != t3.field:
        raise BadBackend("component torsors over different backends")
    a2 = from_diagonal(trace_form(twist(t2, gset_rho(t2))))
    a3 = from_diagonal(trace_form(twist(t3, gset_rho(t3))))
    return witt_one(t2.field), a2, a3, witt_mul(a2, a3)


def default_n0(target) -> int:
    """Conservative elementary-abelian rank bound per target type."""
    kind, n = target
    if kind == BN:
        return n
    if kind == DN:
        return n - 1 + n // 2
    if kind == SN:
        return n // 2
    raise InvalidInput(f"unknown target {kind!r}")


# ---------------------------------------------------------------------------
# specialization t_i -> rational square classes


def specialize_class(c: SquareClass, subs) -> SquareClass:
    """Image of a formal square class under t_i -> subs[i] over Q."""
    if c.field.kind != fields.FORMAL:
        raise BadBackend("specialization starts from the formal backend")
    if len(subs) != c.field.g:
        raise InvalidInput("one substitution per generator required")
    neg, gens = c.data
    val = Fraction(-1 if neg else 1)
    for i in gens:
        val *= Fraction(subs[i])
    return canonicalize(val, rationals())


def specialize_witt(w: WittClass, subs) -> WittClass:
    return make_witt(
        rationals(), [(specialize_class(c, subs), k) for c, k in w.terms]
    )


def specialize_form(q: DiagonalForm, subs) -> DiagonalForm:
    return DiagonalForm(
        rationals(), tuple(specialize_class(e, subs) for e in q.entries)
    )


def specialize_coh(c: CohClass, subs) -> CohClass:
    from .cohomology import coh_zero, symbol_normalize

    out = coh_zero(rationals(), c.degree)
    for sym in c.symbols:
        out = coh_add(
            out,
            symbol_normalize([specialize_class(f, subs) for f in sym.factors], rationals()),
        )
    return out


def specialize_torsor(t: MultiquadraticTorsor, subs) -> MultiquadraticTorsor:
    """The same cocycle data with d_i = t_i replaced by its substituted value."""
    return MultiquadraticTorsor(
        rationals(),
        tuple(specialize_class(c, subs) for c in t.d),
        t.target,
        t.images,
    )


# ---------------------------------------------------------------------------
# JSON


def wreath_to_json(g: WreathElement):
    return {"perm": list(g.perm), "flips": sorted(g.flips)}


def wreath_from_json(obj, n: int) -> WreathElement:
    return WreathElement(n, tuple(obj["perm"]), frozenset(obj.get("flips", ())))


def torsor_to_json(t: MultiquadraticTorsor):
    return {
        "field": str(t.field),
        "d": [fields.sq_to_json(c) for c in t.d],
        "target": {"type": t.target[0], "n": t.target[1]},
        "images": [wreath_to_json(g) for g in t.images],
    }


def torsor_from_json(obj) -> MultiquadraticTorsor:
    field = fields.parse_field(obj["field"])
    n = int(obj["target"]["n"])
    return MultiquadraticTorsor(
        field,
        tuple(fields.sq_from_json(c, field) for c in obj["d"]),
        (obj["target"]["type"], n),
        tuple(wreath_from_json(g, n) for g in obj["images"]),
    )
