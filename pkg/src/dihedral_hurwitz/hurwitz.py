"""Genus-0 Hurwitz vectors over D_n and the actions on them.

A Hurwitz vector is a tuple ``(c_1, ..., c_d)`` of non-identity elements of
D_n with product 1 that generates D_n.  Braid generators act on the right:

    (..., c_i, c_{i+1}, ...) sigma_i      = (..., c_i c_{i+1} c_i^-1, c_i, ...)
    (..., c_i, c_{i+1}, ...) sigma_i^-1   = (..., c_{i+1}, c_{i+1}^-1 c_i c_{i+1}, ...)

and Aut(D_n) acts entrywise.  The two actions commute.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import dihedral as dh
from .dihedral import Automorphism, DihedralElement, GroupContext
from .errors import (
    ContextMismatch,
    EmptyVector,
    IdentityEntry,
    InvalidHurwitzVector,
    NotGenerating,
    PreconditionError,
    ProductNotIdentity,
)

BraidWord = list  # of (index, sign) pairs, 1 <= index <= d - 1, sign in {+1, -1}


@dataclass(frozen=True, order=True)
class HurwitzVector:
    n: int
    entries: tuple[DihedralElement, ...]

    @property
    def ctx(self) -> GroupContext:
        return GroupContext(self.n)

    @property
    def d(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return format_vector(self.entries, self.n)

    def braid(self, i: int, sign: int = 1) -> HurwitzVector:
        return HurwitzVector(self.n, braid_move(self.entries, i, sign))

    def automorphism(self, phi: Automorphism) -> HurwitzVector:
        return HurwitzVector(self.n, apply_automorphism_diag(self.entries, phi))


Entries = Union[HurwitzVector, Sequence[DihedralElement]]


def _entries(v: Entries) -> tuple[DihedralElement, ...]:
    return v.entries if isinstance(v, HurwitzVector) else tuple(v)


def format_vector(entries: Entries, n: int | None = None) -> str:
    entries = _entries(entries)
    if n is None:
        n = entries[0].n
    return "[" + ",".join(str(g) for g in entries) + f"]@n={n}"


def violation(ctx: GroupContext, entries: Entries) -> InvalidHurwitzVector | None:
    """The first violated Hurwitz condition, or None if ``entries`` is valid."""
    entries = _entries(entries)
    if not entries:
        return EmptyVector()
    for g in entries:
        if g.n != ctx.n:
            raise ContextMismatch(f"{g!r} is not an element of D_{ctx.n}")
    for idx, g in enumerate(entries, start=1):
        if g.is_identity:
            return IdentityEntry(idx)
    prod = dh.product(entries)
    if not prod.is_identity:
        return ProductNotIdentity(prod)
    size = len(dh.subgroup_closure(entries, ctx))
    if size != ctx.order:
        return NotGenerating(size, ctx.order)
    return None


def validate(ctx: GroupContext, entries: Entries) -> HurwitzVector:
    problem = violation(ctx, entries)
    if problem is not None:
        raise problem
    return HurwitzVector(ctx.n, _entries(entries))


def is_valid(ctx: GroupContext, entries: Entries) -> bool:
    return violation(ctx, entries) is None


def braid_move(v: Entries, i: int, sign: int = 1) -> tuple[DihedralElement, ...]:
    c = list(_entries(v))
    if not 1 <= i <= len(c) - 1:
        raise IndexError(f"sigma_{i} does not act on vectors of length {len(c)}")
    a, b = c[i - 1], c[i]
    if sign > 0:
        c[i - 1], c[i] = dh.conjugate(b, a), a
    elif sign < 0:
        c[i - 1], c[i] = b, dh.conjugate(a, dh.inverse(b))
    else:
        raise ValueError("braid sign must be +1 or -1")
    return tuple(c)


def apply_braid_word(v: Entries, word) -> tuple[DihedralElement, ...]:
    c = _entries(v)
    for i, sign in word:
        c = braid_move(c, i, sign)
    return c


def invert_word(word) -> list[tuple[int, int]]:
    return [(i, -s) for i, s in reversed(list(word))]


def apply_automorphism_diag(v: Entries, phi: Automorphism) -> tuple[DihedralElement, ...]:
    return tuple(dh.apply_automorphism(phi, g) for g in _entries(v))


@dataclass(frozen=True, order=True)
class NuVector:
    """Class counts of a vector.

    ``refl`` is ``(k,)`` for n odd and ``(k_even, k_odd)`` for n even (the
    classes of ``y`` and ``xy``).  ``rot[u-1]`` counts entries in the class
    ``{x^u, x^-u}`` for ``1 <= u <= n // 2``.
    """

    n: int
    refl: tuple[int, ...]
    rot: tuple[int, ...]

    @property
    def d(self) -> int:
        return sum(self.refl) + sum(self.rot)

    @property
    def k(self) -> int:
        return sum(self.refl) if self.n % 2 else self.refl[1]

    @property
    def k_y(self) -> int:
        return self.refl[0]

    @property
    def k_xy(self) -> int:
        return self.refl[1]

    def act(self, phi: Automorphism) -> NuVector:
        """Image under the permutation of classes induced by ``phi``."""
        rot = [0] * len(self.rot)
        for u, count in enumerate(self.rot, start=1):
            rot[dh.fold(phi.b * u, self.n) - 1] += count
        refl = self.refl
        if phi.swaps_reflection_classes:
            refl = (refl[1], refl[0])
        return NuVector(self.n, refl, tuple(rot))

    def to_json(self) -> dict:
        if self.n % 2:
            return {"n": self.n, "k": self.refl[0], "rot": list(self.rot)}
        return {
            "n": self.n,
            "k_even": self.refl[0],
            "k_odd": self.refl[1],
            "rot": list(self.rot),
        }

    @classmethod
    def from_json(cls, data: dict) -> NuVector:
        n = data["n"]
        refl = (data["k"],) if n % 2 else (data["k_even"], data["k_odd"])
        return cls(n, tuple(refl), tuple(data["rot"]))


def nu(v: Entries, n: int | None = None) -> NuVector:
    entries = _entries(v)
    if n is None:
        n = entries[0].n
    ctx = GroupContext(n)
    refl = [0, 0] if ctx.is_even else [0]
    rot = [0] * ctx.n_prime
    for g in entries:
        if g.is_reflection:
            refl[g.shift % 2 if ctx.is_even else 0] += 1
        elif g.shift:
            rot[dh.fold(g.shift, n) - 1] += 1
    return NuVector(n, tuple(refl), tuple(rot))


@dataclass(frozen=True, order=True)
class NumericalType:
    """Canonical representative of an Aut(D_n)-orbit of class-count vectors.

    For n even ``refl == (h, k)`` with ``h <= k`` and the labels of the two
    reflection classes forgotten.  ``rot`` is lexicographically minimal
    among its images under ``u -> b*u``.
    """

    n: int
    refl: tuple[int, ...]
    rot: tuple[int, ...]

    @property
    def d(self) -> int:
        return sum(self.refl) + sum(self.rot)

    @property
    def h(self) -> int:
        return 0 if self.n % 2 else self.refl[0]

    @property
    def k(self) -> int:
        return self.refl[-1]

    @property
    def R(self) -> int:
        return sum(self.rot)

    @property
    def rotations(self) -> list[int]:
        """Sorted exponents ``r_1 <= ... <= r_R`` in ``[1, n // 2]``."""
        return [u for u, c in enumerate(self.rot, start=1) for _ in range(c)]

    @property
    def rotation_sum(self) -> int:
        return sum(self.rotations) % self.n

    def as_nu(self) -> NuVector:
        return NuVector(self.n, self.refl, self.rot)

    def to_json(self) -> dict:
        return self.as_nu().to_json()

    def __str__(self):
        if self.n % 2:
            return f"k={self.k}, rot={list(self.rot)}"
        return f"h={self.h}, k={self.k}, rot={list(self.rot)}"


def canonical_type(nv: NuVector) -> NumericalType:
    n = nv.n
    best = min(nv.act(Automorphism(n, 0, b)).rot for b in GroupContext(n).units())
    refl = nv.refl if n % 2 else tuple(sorted(nv.refl))
    return NumericalType(n, refl, best)


def numerical_type(v: Entries, n: int | None = None) -> NumericalType:
    if isinstance(v, NumericalType):
        return canonical_type(v.as_nu())
    if isinstance(v, NuVector):
        return canonical_type(v)
    return canonical_type(nu(v, n))


def covering_genus(v: Entries) -> int:
    """Genus of the Galois cover of P^1 with monodromy ``v``."""
    entries = _entries(v)
    n = entries[0].n
    total = Fraction(-2)
    for g in entries:
        total += 1 - Fraction(1, g.order())
    g_minus_1 = n * total
    if g_minus_1.denominator != 1 or g_minus_1 < -1:
        raise NonIntegralGenus(2 * g_minus_1)
    g = 1 + g_minus_1.numerator
    return g


class NonIntegralGenus(InvalidHurwitzVector):
    condition = "NonIntegralGenus"

    def __init__(self, value):
        self.value = value
        super().__init__(f"2(g-1) = {value} does not give a genus")


def candidate_types(ctx: GroupContext, d: int) -> list[NumericalType]:
    """Every canonical type with total count d, realizable or not."""
    n = ctx.n
    seen = set()
    n_refl = 2 if ctx.is_even else 1
    slots = n_refl + ctx.n_prime
    for counts in _compositions(d, slots):
        nv = NuVector(n, tuple(counts[:n_refl]), tuple(counts[n_refl:]))
        seen.add(canonical_type(nv))
    return sorted(seen)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_types(ctx: GroupContext, d: int) -> list[NumericalType]:
    """Canonical types carried by at least one Hurwitz vector of length d."""
    from .normal_form import canonical_form
    from .errors import NotRealizable

    if d < 2:
        raise PreconditionError("enumerate_types needs d >= 2")
    realizable = []
    for t in candidate_types(ctx, d):
        try:
            canonical_form(t)
        except NotRealizable:
            continue
        realizable.append(t)
    return realizable


def random_vector(ctx: GroupContext, d: int, rng, max_tries: int = 10_000) -> HurwitzVector:
    """Uniform-ish random Hurwitz vector: random prefix, forced last entry."""
    elems = [g for g in ctx.elements() if not g.is_identity]
    for _ in range(max_tries):
        prefix = [rng.choice(elems) for _ in range(d - 1)]
        last = dh.inverse(dh.product(prefix)) if prefix else ctx.identity()
        entries = tuple(prefix) + (last,)
        if violation(ctx, entries) is None:
            return HurwitzVector(ctx.n, entries)
    raise ValueError(f"no valid vector found for n={ctx.n}, d={d}")


def all_tuples(ctx: GroupContext, d: int):
    """Every tuple of non-identity elements, in lexicographic order."""
    elems = [g for g in ctx.elements() if not g.is_identity]
    return itertools.product(elems, repeat=d)


_LITERAL = re.compile(r"\[(?P<body>[^\]]*)\]@n=(?P<n>\d+)")
_ELEMENT = re.compile(r"e|[rs]\d+")


def parse_vector(text: str) -> HurwitzVector:
    """Parse ``[s0,s0,s1,s1]@n=5``.  The result is not validated."""
    from .errors import ParseError

    raw = text
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    m = _LITERAL.fullmatch(stripped)
    if m is None:
        pos = 0
        if not stripped.startswith("["):
            reason = "expected '['"
        elif "]" not in stripped:
            pos, reason = len(stripped), "missing ']'"
        else:
            pos = stripped.index("]") + 1
            reason = "expected '@n=<int>' after ']'"
        raise ParseError(reason, raw, offset + pos)
    n = int(m.group("n"))
    if n < 3:
        raise ParseError(f"n must be at least 3, got {n}", raw, offset + m.start("n"))
    body = m.group("body")
    if not body:
        raise ParseError("empty vector", raw, offset + 1)
    entries = []
    pos = m.start("body")
    for item in body.split(","):
        token = item.strip()
        lead = len(item) - len(item.lstrip())
        if not _ELEMENT.fullmatch(token):
            raise ParseError(f"bad element {token!r}", raw, offset + pos + lead)
        try:
            entries.append(dh.parse_element(token, n))
        except ValueError as exc:
            raise ParseError(str(exc), raw, offset + pos + lead) from None
        pos += len(item) + 1
    return HurwitzVector(n, tuple(entries))
