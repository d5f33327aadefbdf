"""Base-field backends and canonical square classes.

Four backends are supported: the rationals, odd-characteristic prime fields,
the reals, and the "formal" fields R((t_1))...((t_g)).  A square class is a
canonical representative of an element of k*/k*^2; all quadratic forms,
Witt classes and cohomology symbols are built from these atoms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .errors import (
    BadBackend,
    BadPlace,
    FactorLimitExceeded,
    OrderingLengthMismatch,
    ZeroElement,
)

RATIONALS = "rationals"
FINITE = "finite"
REALS = "reals"
FORMAL = "formal"

#: marker for the archimedean place in hilbert_symbol
INF = "inf"

DEFAULT_FACTOR_BOUND = 10**6


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str
    p: int = 0
    g: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (RATIONALS, FINITE, REALS, FORMAL):
            raise BadBackend(f"unknown field kind {self.kind!r}")
        if self.kind == FINITE:
            if self.p == 2 or not _is_prime(self.p):
                raise BadBackend(f"finite backend needs an odd prime, got {self.p}")
        if self.kind == FORMAL and self.g < 0:
            raise BadBackend("formal backend needs g >= 0")

    def __str__(self) -> str:
        if self.kind == FINITE:
            return f"fp:{self.p}"
        if self.kind == FORMAL:
            return f"formal:{self.g}"
        return {"rationals": "q", "reals": "r"}[self.kind]


def rationals() -> FieldDescriptor:
    return FieldDescriptor(RATIONALS)


def finite_field(p: int) -> FieldDescriptor:
    return FieldDescriptor(FINITE, p=p)


def reals() -> FieldDescriptor:
    return FieldDescriptor(REALS)


def formal(g: int) -> FieldDescriptor:
    return FieldDescriptor(FORMAL, g=g)


@dataclass(frozen=True)
class SquareClass:
    """Canonical representative of an element of k*/k*^2.

    Payloads by backend:
      rationals -- ``data`` is a nonzero squarefree int (sign included)
      finite    -- ``data`` is 0 (square) or 1 (the fixed nonresidue)
      reals     -- ``data`` is +1 or -1
      formal    -- ``data`` is ``(neg, gens)`` with ``gens`` a sorted tuple
                   of generator indices in ``range(g)``
    """

    field: FieldDescriptor
    data: Union[int, tuple]

    def is_trivial(self) -> bool:
        if self.field.kind == FORMAL:
            neg, gens = self.data
            return not neg and not gens
        return self.data == 0 if self.field.kind == FINITE else self.data == 1

    def sort_key(self):
        return self.data if isinstance(self.data, tuple) else (self.data,)

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return sq_mul(self, other)


def _squarefree_part(x: Fraction, bound: int) -> int:
    m = x.numerator * x.denominator
    if m == 0:
        raise ZeroElement("square class of zero")
    sign = -1 if m < 0 else 1
    m = abs(m)
    out = 1
    d = 2
    while d * d <= m:
        if d > bound:
            raise FactorLimitExceeded(f"factor search exceeded bound {bound}")
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        if e % 2:
            out *= d
        d += 1 if d == 2 else 2
    return sign * out * m  # leftover m is prime (or 1)


def least_nonresidue(p: int) -> int:
    for k in range(2, p):
        if pow(k, (p - 1) // 2, p) == p - 1:
            return k
    raise BadBackend(f"no nonresidue found mod {p}")


def canonicalize(raw, field: FieldDescriptor, bound: int = DEFAULT_FACTOR_BOUND) -> SquareClass:
    """Canonical square class of a nonzero field element."""
    if isinstance(raw, SquareClass):
        if raw.field != field:
            raise BadBackend("square class belongs to a different backend")
        return raw
    if field.kind == RATIONALS:
        if not isinstance(raw, (int, Fraction)):
            raise BadBackend(f"cannot interpret {raw!r} over the rationals")
        return SquareClass(field, _squarefree_part(Fraction(raw), bound))
    if field.kind == FINITE:
        if not isinstance(raw, (int, Fraction)):
            raise BadBackend(f"cannot interpret {raw!r} over F_{field.p}")
        fr = Fraction(raw)
        if fr.denominator % field.p == 0:
            raise BadBackend(f"{raw!r} has no reduction mod {field.p}")
        v = (fr.numerator * pow(fr.denominator, -1, field.p)) % field.p
        if v == 0:
            raise ZeroElement("square class of zero")
        return SquareClass(field, 0 if pow(v, (field.p - 1) // 2, field.p) == 1 else 1)
    if field.kind == REALS:
        if not isinstance(raw, (int, Fraction)):
            raise BadBackend(f"cannot interpret {raw!r} over the reals")
        if raw == 0:
            raise ZeroElement("square class of zero")
        return SquareClass(field, 1 if raw > 0 else -1)
    # formal: rational constants reduce to their sign (positive reals are squares)
    if isinstance(raw, (int, Fraction)):
        if raw == 0:
            raise ZeroElement("square class of zero")
        return SquareClass(field, (raw < 0, ()))
    if isinstance(raw, tuple) and len(raw) == 2:
        neg, gens = raw
        gens = tuple(sorted(set(gens)))
        if any(not (0 <= i < field.g) for i in gens):
            raise BadBackend(f"generator index out of range for formal:{field.g}")
        return SquareClass(field, (bool(neg), gens))
    raise BadBackend(f"cannot interpret {raw!r} over {field}")


def trivial_class(field: FieldDescriptor) -> SquareClass:
    if field.kind == FORMAL:
        return SquareClass(field, (False, ()))
    return SquareClass(field, 0 if field.kind == FINITE else 1)


def minus_one(field: FieldDescriptor) -> SquareClass:
    return canonicalize(-1, field)


def formal_generator(field: FieldDescriptor, i: int) -> SquareClass:
    return canonicalize((False, (i,)), field)


def sq_mul(a: SquareClass, b: SquareClass) -> SquareClass:
    from .errors import BackendMismatch

    if a.field != b.field:
        raise BackendMismatch("square classes over different backends")
    field = a.field
    if field.kind == RATIONALS:
        return canonicalize(Fraction(a.data) * Fraction(b.data), field)
    if field.kind == FINITE:
        return SquareClass(field, a.data ^ b.data)
    if field.kind == REALS:
        return SquareClass(field, a.data * b.data)
    (na, ga), (nb, gb) = a.data, b.data
    return SquareClass(field, (na ^ nb, tuple(sorted(set(ga) ^ set(gb)))))


def sq_product(field: FieldDescriptor, classes: Iterable[SquareClass]) -> SquareClass:
    out = trivial_class(field)
    for c in classes:
        out = sq_mul(out, c)
    return out


def basis_factors(a: SquareClass) -> tuple[SquareClass, ...]:
    """Decomposition of a class over the F2-basis of the square-class group.

    Rationals: {-1} and the primes; formal: {-1, t_1, ..., t_g};
    reals: {-1}; finite fields: the fixed nonresidue.  The trivial class
    decomposes as the empty product.
    """
    field = a.field
    if field.kind == RATIONALS:
        n = a.data
        out = []
        if n < 0:
            out.append(SquareClass(field, -1))
            n = -n
        d = 2
        while d * d <= n:
            if n % d == 0:
                out.append(SquareClass(field, d))
                n //= d
            else:
                d += 1 if d == 2 else 2
        if n > 1:
            out.append(SquareClass(field, n))
        return tuple(out)
    if field.kind == FINITE:
        return (a,) if a.data == 1 else ()
    if field.kind == REALS:
        return (a,) if a.data == -1 else ()
    neg, gens = a.data
    out = []
    if neg:
        out.append(SquareClass(field, (True, ())))
    out.extend(SquareClass(field, (False, (i,))) for i in gens)
    return tuple(out)


def _two_val(n: int) -> tuple[int, int]:
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v, n


def _eps(u: int) -> int:
    return (u - 1) // 2 % 2


def _omega(u: int) -> int:
    return (u * u - 1) // 8 % 2


def hilbert_symbol(a, b, place) -> int:
    """Local Hilbert symbol (a, b)_v over Q.

    Returns +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over the
    completion at ``place`` (an odd prime, 2, or fields.INF).
    """
    field = rationals()
    a = canonicalize(a, field).data
    b = canonicalize(b, field).data
    if place == INF or place == float("inf"):
        return -1 if (a < 0 and b < 0) else 1
    if not isinstance(place, int) or not _is_prime(place):
        raise BadPlace(f"{place!r} is not a prime or infinity")
    p = place
    if p == 2:
        alpha, u = _two_val(abs(a))
        beta, v = _two_val(abs(b))
        u, v = u * (1 if a > 0 else -1), v * (1 if b > 0 else -1)
        exp = _eps(u) * _eps(v) + alpha * _omega(v) + beta * _omega(u)
        return -1 if exp % 2 else 1
    alpha, u = 0, a
    while u % p == 0:
        u //= p
        alpha += 1
    beta, v = 0, b
    while v % p == 0:
        v //= p
        beta += 1
    leg_u = 1 if pow(u % p, (p - 1) // 2, p) == 1 else -1
    leg_v = 1 if pow(v % p, (p - 1) // 2, p) == 1 else -1
    sign = -1 if (alpha * beta * _eps(p)) % 2 else 1
    return sign * (leg_u**beta) * (leg_v**alpha)


def signature_at(a: SquareClass, ordering: tuple[int, ...]) -> int:
    """Sign of a square class under an ordering of the reals/formal backend."""
    field = a.field
    if field.kind == REALS:
        if len(ordering) != 0:
            raise OrderingLengthMismatch("reals carry a single empty ordering")
        return a.data
    if field.kind != FORMAL:
        from .errors import BackendMismatch

        raise BackendMismatch("signatures exist only over reals/formal backends")
    if len(ordering) != field.g:
        raise OrderingLengthMismatch(
            f"ordering has length {len(ordering)}, expected {field.g}"
        )
    neg, gens = a.data
    s = -1 if neg else 1
    for i in gens:
        s *= ordering[i]
    return s


def orderings(field: FieldDescriptor) -> Iterator[tuple[int, ...]]:
    """All orderings of the backend (2^g sign patterns; one for the reals)."""
    if field.kind == REALS:
        yield ()
        return
    if field.kind != FORMAL:
        from .errors import BackendMismatch

        raise BackendMismatch("orderings exist only over reals/formal backends")
    yield from itertools.product((1, -1), repeat=field.g)


def sq_to_json(a: SquareClass):
    if a.field.kind == RATIONALS:
        return a.data
    if a.field.kind == FINITE:
        return a.data
    if a.field.kind == REALS:
        return "+" if a.data > 0 else "-"
    neg, gens = a.data
    return {"neg": neg, "gens": list(gens)}


def sq_from_json(obj, field: FieldDescriptor) -> SquareClass:
    if field.kind in (RATIONALS, FINITE):
        if not isinstance(obj, int):
            raise BadBackend(f"expected integer square class, got {obj!r}")
        if field.kind == FINITE and obj not in (0, 1):
            raise BadBackend(f"finite square class must be 0/1, got {obj!r}")
        return canonicalize(obj, field) if field.kind == RATIONALS else SquareClass(field, obj)
    if field.kind == REALS:
        if obj not in ("+", "-"):
            raise BadBackend(f"real square class must be '+'/'-', got {obj!r}")
        return SquareClass(field, 1 if obj == "+" else -1)
    if not isinstance(obj, dict):
        raise BadBackend(f"expected formal square class object, got {obj!r}")
    return canonicalize((obj.get("neg", False), tuple(obj.get("gens", ()))), field)


def parse_field(text: str) -> FieldDescriptor:
    if text == "q":
        return rationals()
    if text == "r":
        return reals()
    if text.startswith("fp:"):
        return finite_field(int(text[3:]))
    if text.startswith("formal:"):
        return formal(int(text[7:]))
    raise BadBackend(f"cannot parse field {text!r}")
