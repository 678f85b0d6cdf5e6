"""Normal forms for genus-0 dihedral Hurwitz vectors and the reducer.

Every numerical type that is carried by some Hurwitz vector has one
distinguished representative (``canonical_form``), and ``reduce`` moves any
vector onto the representative of its type, recording each braid and
automorphism it uses.

Shapes, with ``S = r_1 + ... + r_R`` and reflections written by index:

* n odd:           ``0^(k-2), 1, 1+S, x^r_1, ..., x^r_R``
* n even, h > 0:   ``0^h, 1^(k-1), S+eps`` where ``eps + k`` is odd
* n even, h = 0:   ``1^(k-2), 3, S+3``
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce as _fold

from . import dihedral as dh
from . import lemmas as lm
from .dihedral import Automorphism, GroupContext
from .errors import InternalReductionFailure, NotRealizable, PreconditionError
from .hurwitz import (
    Entries,
    HurwitzVector,
    NumericalType,
    _entries,
    numerical_type,
    nu,
    validate,
    violation,
)
from .trace import MoveTrace, Workspace

ODD_N = "OddN"
EVEN_H_POSITIVE = "EvenN_hPositive"
EVEN_H_ZERO = "EvenN_hZero"


@dataclass(frozen=True)
class NormalFormShape:
    case: str
    n: int
    h: int
    k: int
    rotations: tuple[int, ...]
    lam: int
    eps: int = 0

    @property
    def R(self) -> int:
        return len(self.rotations)

    @property
    def reflections(self) -> list[int]:
        if self.case == ODD_N:
            return [0] * (self.k - 2) + [1, self.lam]
        if self.case == EVEN_H_POSITIVE:
            return [0] * self.h + [1] * (self.k - 1) + [self.lam]
        return [1] * (self.k - 2) + [3, self.lam]

    def entries(self) -> tuple[dh.DihedralElement, ...]:
        ctx = GroupContext(self.n)
        refl = [ctx.reflection(i) for i in self.reflections]
        return tuple(refl + [ctx.rotation(r) for r in self.rotations])


def shape_of(t: NumericalType) -> NormalFormShape:
    n = t.n
    rots = tuple(t.rotations)
    S = sum(rots)
    if n % 2:
        if t.k < 2:
            raise NotRealizable(t, "fewer than two reflections")
        return NormalFormShape(ODD_N, n, 0, t.k, rots, (1 + S) % n)
    h, k = t.refl
    if h > 0:
        eps = (1 - k) % 2
        return NormalFormShape(EVEN_H_POSITIVE, n, h, k, rots, (S + eps) % n, eps)
    if k < 2:
        raise NotRealizable(t, "fewer than two reflections")
    return NormalFormShape(EVEN_H_ZERO, n, 0, k, rots, (S + 3) % n)


def canonical_form(t: NumericalType) -> HurwitzVector:
    """The distinguished vector of type ``t``; NotRealizable if none exists."""
    t = numerical_type(t)
    shape = shape_of(t)
    entries = shape.entries()
    problem = violation(GroupContext(t.n), entries)
    if problem is not None:
        raise NotRealizable(t, problem.label())
    if numerical_type(entries) != t:
        # parity of S does not fit the class counts; then the product fails too
        raise NotRealizable(t, "class counts do not match")
    return HurwitzVector(t.n, entries)


def is_realizable(t: NumericalType) -> bool:
    try:
        canonical_form(t)
    except NotRealizable:
        return False
    return True


# -- the reducer -----------------------------------------------------------------


@dataclass
class Reduction:
    vector: HurwitzVector
    trace: MoveTrace
    case: str  # "I", "II", "III" for the subgroup generated by the paired prefix
    shape: NormalFormShape
    notes: dict = field(default_factory=dict)


def _check(cond, what):
    if not cond:
        raise InternalReductionFailure(what)


def _int_gcd_coefficients(values):
    """Integers c with sum(c_i * values_i) == gcd(values)."""
    g, coeffs = 0, []
    for v in values:
        # extended gcd of (g, v)
        old_r, r = g, v
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        coeffs = [c * old_s for c in coeffs] + [old_t]
        g = old_r
    return g, coeffs


class _Reducer:
    def __init__(self, v: HurwitzVector):
        self.v = v
        self.n = v.n
        self.ws = Workspace(v.entries)
        self.t = numerical_type(v)
        self.shape = shape_of(self.t)
        self.N = sum(g.is_reflection for g in v.entries) // 2
        self.R = len(v) - 2 * self.N
        self.notes = {}

    # positions
    @property
    def a_pos(self):
        return 2 * self.N - 1

    def pair_values(self):
        return [self.ws.value(2 * f + 1) for f in range(self.N - 1)]

    def rotation_values(self):
        return [self.ws.value(2 * self.N + i) for i in range(1, self.R + 1)]

    # step 0: automorphism matching the canonical rotation data and classes
    def normalize_classes(self):
        n, ws = self.n, self.ws
        current = nu(ws.entries())
        for b in GroupContext(n).units():
            if current.act(Automorphism(n, 0, b)).rot == self.t.rot:
                ws.auto(Automorphism(n, 0, b))
                break
        else:
            raise InternalReductionFailure("no unit matches the canonical rotation data")
        if n % 2 == 0:
            k_even, k_odd = nu(ws.entries()).refl
            if k_even > k_odd:
                ws.shift(1)

    # step 1: rotations to the right, keeping their order
    def rotations_right(self):
        ws = self.ws
        while True:
            spots = [q for q in range(1, len(ws)) if not ws[q].is_reflection and ws[q + 1].is_reflection]
            if not spots:
                break
            ws.braid(spots[-1], 1)

    # step 2: fold every exponent into [1, n'] and sort
    def fold_rotations(self):
        ws, n = self.ws, self.n
        first = 2 * self.N + 1
        if self.N == 0:
            raise InternalReductionFailure("no reflections to twist with")
        for q in range(first, len(ws) + 1):
            if ws.value(q) > n // 2:
                for s in range(q, first, -1):
                    ws.braid(s - 1, 1)
                lm.full_twist(ws, first - 1)
                for s in range(first, q):
                    ws.braid(s, 1)
        for sweep in range(self.R):
            for q in range(first, len(ws) - sweep):
                if ws.value(q) > ws.value(q + 1):
                    ws.braid(q, 1)
        _check(self.rotation_values() == list(self.t.rotations), "rotation data after folding")

    # step 3: last reflection in the odd (larger) class
    def last_reflection_class(self):
        ws = self.ws
        last = 2 * self.N
        if self.n % 2 or ws.value(last) % 2:
            return
        odd = [q for q in range(1, last) if ws.value(q) % 2]
        _check(odd, "odd class is empty")
        for i in range(odd[-1], last):
            ws.braid(i, 1)
        _check(ws.value(last) % 2 == 1, "last reflection class")

    # step 4: pair up
    def pair_up(self):
        ws = self.ws
        for f in range(1, self.N):
            lm.triple_normalize(ws, 2 * f - 1, "first")
        for f in range(self.N - 1):
            _check(ws[2 * f + 1] == ws[2 * f + 2], "pairing")
        S = sum(self.rotation_values())
        _check((ws.value(2 * self.N) - ws.value(self.a_pos) - S) % self.n == 0, "last two reflections")

    def subgroup_case(self) -> str:
        a = self.ws.value(self.a_pos)
        D = _fold(math.gcd, [p - a for p in self.pair_values()], self.n)
        m = self.n // D
        return "I" if m == 1 else "II" if m == 2 else "III"

    # step 5a: Euclid on the pair offsets u = p - a, moves u -> u - 2k v and u -> -u
    def pair_gcd(self):
        ws, n = self.ws, self.n
        a = ws.value(self.a_pos)

        def offsets():
            return [lm.srep(p - a, n) for p in self.pair_values()]

        while True:
            u = offsets()
            nonzero = [abs(x) for x in u if x]
            if not nonzero:
                return 0
            x = min(nonzero)
            changed = False
            for f, y in enumerate(u):
                w = abs(y - 2 * x * round(y / (2 * x)))
                if w != y:
                    lm.retag_pair(ws, 2 * f + 1, a + w)
                    changed = True
                if 0 < w < x:
                    break
            if not changed and all(abs(y) in (0, x) and y >= 0 for y in u):
                return x

    def target(self):
        shape = self.shape
        if shape.case == ODD_N:
            return 1, 0
        if shape.case == EVEN_H_POSITIVE:
            return (1, 0) if shape.h % 2 == 0 else (0, 1)
        return 3, 1

    # step 5b: the last pair and a as a generating core
    def core(self, x):
        ws, n = self.ws, self.n
        a_star, c_star = self.target()
        u_star = c_star - a_star
        want_parity = None if n % 2 else (u_star % 2)
        u = self.pair_values()
        a = ws.value(self.a_pos)
        candidates = [
            f
            for f, p in enumerate(u)
            if lm.srep(p - a, n) == x and x != 0 and (want_parity is None or x % 2 == want_parity)
        ]
        f = candidates[-1] if candidates else self.N - 2
        for g in range(f, self.N - 2):
            lm.pair_swap(ws, 2 * g + 1)
        anchor = self.a_pos - 2
        u0 = (ws.value(anchor) - ws.value(self.a_pos)) % n
        self.notes["anchor_offset"] = u0

        rots = self.rotation_values()
        S = sum(rots) % n
        M = math.gcd(n, *rots) if rots else n
        G_star = math.gcd(n, u_star)
        plan = self.shift_plan(u0, S, M, G_star)
        _check(plan is not None, f"no admissible shift for offset {u0}")
        l0, tM = plan
        self.notes.update(ell0=l0, ellM=tM, M=M)
        self.shift_a(l0, tM, rots, M)
        u1 = (ws.value(anchor) - ws.value(self.a_pos)) % n
        _check(math.gcd(n, u1) == G_star, "gcd after the shift")
        # scale: the offset u1 becomes -t u1 = u_star
        period = n // G_star
        if period > 1:
            w, target = (u1 // G_star) % period, (-u_star // G_star) % period
            t = target * pow(w, -1, period) % period
            lm.scale_anchor(ws, anchor, t)
        _check((ws.value(anchor) - ws.value(self.a_pos) - u_star) % n == 0, "anchor offset")
        ws.shift(a_star - ws.value(self.a_pos))

    def shift_plan(self, u0, S, M, G_star):
        n = self.n
        if n % 2:
            # l = n / gamma, gamma the part of n sharing primes with j = -u0
            j = -u0 % n
            gamma = 1
            rest = n
            g = math.gcd(rest, j)
            while g > 1:
                gamma *= g
                rest //= g
                g = math.gcd(rest, j)
            ell = n // gamma
            if math.gcd(n, j + 2 * ell * M) == 1:
                return 0, ell
        for l0 in range(n if S else 1):
            if n % 2 == 0 and (l0 * S) % 2:
                continue
            for t in range(n // math.gcd(n, 2 * M) if M % n else 1):
                delta = l0 * S + 2 * M * t
                if math.gcd(n, u0 - delta) == G_star:
                    return l0, t
        return None

    def shift_a(self, l0, tM, rots, M):
        """Move (a, b) by l0*S + 2*M*tM, leaving everything else alone."""
        ws, n = self.ws, self.n
        a_pos = self.a_pos
        if l0:
            lm.pair_orbit_shift(ws, a_pos, l0)
        if tM % n == 0 or not rots:
            return
        g0, coeffs = _int_gcd_coefficients(rots)
        period = n // M
        alpha = pow((g0 // M) % period, -1, period) if period > 1 else 0
        first = a_pos + 2
        for i, ci in enumerate(coeffs):
            ell = tM * alpha * ci
            r = rots[i]
            ell = lm.srep(ell, n // math.gcd(n, 2 * r)) if n // math.gcd(n, 2 * r) > 1 else 0
            if not ell:
                continue
            q = first + i
            for s in range(q, first, -1):
                ws.braid(s - 1, 1)
            lm.abm_shift(ws, a_pos, ell)
            for s in range(first, q):
                ws.braid(s, 1)

    # step 5c: retag the remaining pairs, sort them, place a
    def finish(self):
        ws, n = self.ws, self.n
        shape = self.shape
        if shape.case == ODD_N:
            goal = lambda v: 0
        elif shape.case == EVEN_H_POSITIVE:
            goal = lambda v: v % 2
        else:
            goal = lambda v: 1
        for f in range(self.N - 2):
            p = 2 * f + 1
            lm.retag_pair(ws, p, goal(ws.value(p)))
        lm.sort_pairs(ws, 1, self.N - 1, key=lambda v: v)
        if shape.case == EVEN_H_POSITIVE and shape.h % 2:
            ones = (shape.k - 1) // 2
            for i in range(ones):
                src = self.a_pos - 2 - 2 * i
                lm.move_pair(ws, src, src + 1)

    def run(self) -> Reduction:
        self.normalize_classes()
        self.rotations_right()
        self.fold_rotations()
        self.last_reflection_class()
        self.pair_up()
        case = self.subgroup_case()
        if self.N == 1:
            a_star, _ = self.target()
            self.ws.shift(a_star - self.ws.value(self.a_pos))
        else:
            x = self.pair_gcd()
            self.core(x)
            self.finish()
        out = HurwitzVector(self.n, self.ws.entries())
        expected = canonical_form(self.t)
        if out != expected:
            raise InternalReductionFailure(f"reduced to {out}, expected {expected}")
        return Reduction(out, self.ws.trace, case, self.shape, self.notes)


def reduce_detailed(v: Entries, n: int | None = None) -> Reduction:
    entries = _entries(v)
    if n is None:
        n = v.n if isinstance(v, HurwitzVector) else entries[0].n
    hv = validate(GroupContext(n), entries)
    return _Reducer(hv).run()


def reduce(v: Entries) -> tuple[HurwitzVector, MoveTrace]:
    """Normal form of ``v`` and a trace taking ``v`` to it."""
    r = reduce_detailed(v)
    return r.vector, r.trace
