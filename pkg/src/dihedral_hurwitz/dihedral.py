"""Exact arithmetic in the dihedral group D_n of order 2n.

Elements are stored as pairs ``(is_reflection, shift)``: ``x^j`` is
``(False, j)`` and the reflection ``s_j = x^j y`` is ``(True, j)``.  As an
affine map of Z/n, ``x^j`` is ``m -> m + j`` and ``s_j`` is ``m -> -m + j``.

Automorphisms are pairs ``(a, b)`` with ``b`` a unit mod n, acting by
``x -> x^b`` and ``y -> x^a y``.  Composition is written with the
first-applied map on the right: ``compose(p2, p1)(g) == p2(p1(g))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import ContextMismatch


@dataclass(frozen=True, order=True)
class GroupContext:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 3:
            raise ValueError(f"D_n needs n >= 3, got {self.n!r}")

    @property
    def n_prime(self) -> int:
        return self.n // 2

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def is_even(self) -> bool:
        return self.n % 2 == 0

    def identity(self) -> DihedralElement:
        return DihedralElement(self.n, False, 0)

    def rotation(self, j: int) -> DihedralElement:
        return DihedralElement(self.n, False, j % self.n)

    def reflection(self, j: int) -> DihedralElement:
        return DihedralElement(self.n, True, j % self.n)

    def elements(self) -> list[DihedralElement]:
        """All 2n elements in the package's total order (rotations first)."""
        return [self.rotation(j) for j in range(self.n)] + [
            self.reflection(j) for j in range(self.n)
        ]

    def units(self) -> list[int]:
        return [b for b in range(1, self.n) if math.gcd(b, self.n) == 1]


@dataclass(frozen=True, order=True)
class DihedralElement:
    n: int
    is_reflection: bool
    shift: int

    def __post_init__(self):
        if not 0 <= self.shift < self.n:
            raise ValueError(f"shift {self.shift} not reduced mod {self.n}")

    @property
    def ctx(self) -> GroupContext:
        return GroupContext(self.n)

    @property
    def is_identity(self) -> bool:
        return not self.is_reflection and self.shift == 0

    def __mul__(self, other: DihedralElement) -> DihedralElement:
        return multiply(self, other)

    def inverse(self) -> DihedralElement:
        return inverse(self)

    def order(self) -> int:
        if self.is_reflection:
            return 2
        return self.n // math.gcd(self.n, self.shift)

    def __call__(self, m: int) -> int:
        """Evaluate as an affine map of Z/n."""
        return (-m + self.shift if self.is_reflection else m + self.shift) % self.n

    def __str__(self):
        if self.is_reflection:
            return f"s{self.shift}"
        return f"r{self.shift}" if self.shift else "e"

    def __repr__(self):
        return f"<{self} in D_{self.n}>"


def _same_n(g, h):
    if g.n != h.n:
        raise ContextMismatch(f"elements of D_{g.n} and D_{h.n} cannot be combined")


def multiply(g: DihedralElement, h: DihedralElement) -> DihedralElement:
    _same_n(g, h)
    shift = g.shift - h.shift if g.is_reflection else g.shift + h.shift
    return DihedralElement(g.n, g.is_reflection != h.is_reflection, shift % g.n)


def inverse(g: DihedralElement) -> DihedralElement:
    if g.is_reflection:
        return g
    return DihedralElement(g.n, False, -g.shift % g.n)


def conjugate(g: DihedralElement, h: DihedralElement) -> DihedralElement:
    """Return ``h g h^-1``."""
    return multiply(multiply(h, g), inverse(h))


def product(entries) -> DihedralElement:
    entries = list(entries)
    if not entries:
        raise ValueError("empty product has no group context")
    acc = entries[0].ctx.identity()
    for g in entries:
        acc = multiply(acc, g)
    return acc


def fold(u: int, n: int) -> int:
    """Representative of the rotation class {x^u, x^-u}, in [0, n//2]."""
    u %= n
    return min(u, n - u)


@dataclass(frozen=True, order=True)
class ConjugacyClassId:
    """Class label.

    ``kind`` is one of ``identity``, ``rotation``, ``reflection`` (n odd),
    ``reflection_even`` or ``reflection_odd`` (n even).  ``u`` is the folded
    rotation exponent for rotation classes and 0 otherwise.
    """

    kind: str
    u: int = 0

    def __str__(self):
        return f"Rotation({self.u})" if self.kind == "rotation" else self.kind


IDENTITY_CLASS = ConjugacyClassId("identity")
REFLECTION_CLASS = ConjugacyClassId("reflection")
REFLECTION_EVEN = ConjugacyClassId("reflection_even")
REFLECTION_ODD = ConjugacyClassId("reflection_odd")


def conjugacy_class(g: DihedralElement) -> ConjugacyClassId:
    if g.is_reflection:
        if g.n % 2:
            return REFLECTION_CLASS
        return REFLECTION_ODD if g.shift % 2 else REFLECTION_EVEN
    if g.shift == 0:
        return IDENTITY_CLASS
    return ConjugacyClassId("rotation", fold(g.shift, g.n))


def conjugacy_classes(ctx: GroupContext) -> list[ConjugacyClassId]:
    classes = [IDENTITY_CLASS]
    classes += [ConjugacyClassId("rotation", u) for u in range(1, ctx.n_prime + 1)]
    classes += [REFLECTION_EVEN, REFLECTION_ODD] if ctx.is_even else [REFLECTION_CLASS]
    return classes


@dataclass(frozen=True, order=True)
class Automorphism:
    n: int
    a: int
    b: int

    def __post_init__(self):
        if not (0 <= self.a < self.n and 0 <= self.b < self.n):
            raise ValueError(f"automorphism parameters must be reduced mod {self.n}")
        if math.gcd(self.b, self.n) != 1:
            raise ValueError(f"b={self.b} is not a unit mod {self.n}")

    @classmethod
    def make(cls, n: int, a: int = 0, b: int = 1) -> Automorphism:
        return cls(n, a % n, b % n)

    @classmethod
    def identity(cls, n: int) -> Automorphism:
        return cls(n, 0, 1)

    @property
    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 1

    def __call__(self, g: DihedralElement) -> DihedralElement:
        return apply_automorphism(self, g)

    def inverse(self) -> Automorphism:
        b_inv = pow(self.b, -1, self.n)
        return Automorphism.make(self.n, -b_inv * self.a, b_inv)

    @cached_property
    def swaps_reflection_classes(self) -> bool:
        return self.n % 2 == 0 and self.a % 2 == 1

    def __str__(self):
        return f"(a={self.a}, b={self.b})"


def apply_automorphism(phi: Automorphism, g: DihedralElement) -> DihedralElement:
    _same_n(phi, g)
    shift = phi.b * g.shift + (phi.a if g.is_reflection else 0)
    return DihedralElement(g.n, g.is_reflection, shift % g.n)


def compose(phi2: Automorphism, phi1: Automorphism) -> Automorphism:
    """The automorphism ``g -> phi2(phi1(g))``."""
    _same_n(phi2, phi1)
    return Automorphism.make(phi2.n, phi2.a + phi2.b * phi1.a, phi2.b * phi1.b)


def enumerate_automorphisms(ctx: GroupContext) -> list[Automorphism]:
    return [Automorphism(ctx.n, a, b) for b in ctx.units() for a in range(ctx.n)]


def inner_automorphism(h: DihedralElement) -> Automorphism:
    """The automorphism ``g -> h g h^-1`` in (a, b) coordinates."""
    if h.is_reflection:
        return Automorphism.make(h.n, 2 * h.shift, -1)
    return Automorphism.make(h.n, 2 * h.shift, 1)


def subgroup_closure(gens, ctx: GroupContext | None = None) -> frozenset[DihedralElement]:
    gens = list(gens)
    if ctx is None:
        if not gens:
            raise ValueError("need a context to close an empty generating set")
        ctx = gens[0].ctx
    for g in gens:
        if g.n != ctx.n:
            raise ContextMismatch(f"generator {g!r} is not in D_{ctx.n}")
    seen = {ctx.identity()}
    frontier = [ctx.identity()]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = multiply(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(seen)


def is_full(gens, ctx: GroupContext | None = None) -> bool:
    gens = list(gens)
    if ctx is None:
        ctx = gens[0].ctx
    return len(subgroup_closure(gens, ctx)) == ctx.order


def parse_element(text: str, n: int) -> DihedralElement:
    """Parse ``e``, ``r<j>`` or ``s<j>`` with ``0 <= j < n``."""
    text = text.strip()
    if text == "e":
        return DihedralElement(n, False, 0)
    if len(text) >= 2 and text[0] in "rs" and text[1:].isdigit():
        j = int(text[1:])
        if j >= n:
            raise ValueError(f"index {j} out of range for D_{n}")
        return DihedralElement(n, text[0] == "s", j)
    raise ValueError(f"not an element literal: {text!r}")
