"""Braid-move recipes on blocks of reflections.

Reflections ``s_i`` are identified with their index ``i`` in Z/n.  Every
recipe works in place on a :class:`~dihedral_hurwitz.trace.Workspace` and
records its moves; the ``lemma_*`` wrappers take a plain vector and return
``(new_entries, trace)``.

Conventions used throughout (``p`` is a 1-based position):

* a *pair* is two equal consecutive reflections ``(g, g)``; its product is
  trivial, so it can be carried past any entry without changing it, and it
  can be conjugated by any neighbour.
* ``srep(x, n)`` is the representative of ``x`` in ``(-n/2, n/2]``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from . import dihedral as dh
from .errors import PreconditionError
from .hurwitz import Entries
from .trace import MoveTrace, Workspace


def srep(x: int, n: int) -> int:
    x %= n
    return x - n if x > n // 2 else x


def _need_reflections(ws: Workspace, positions):
    for p in positions:
        if not 1 <= p <= len(ws):
            raise PreconditionError(f"position {p} outside a vector of length {len(ws)}")
        if not ws[p].is_reflection:
            raise PreconditionError(f"entry {p} ({ws[p]}) is not a reflection")


def _need_pairs(ws: Workspace, starts):
    _need_reflections(ws, [q for p in starts for q in (p, p + 1)])
    for p in starts:
        if ws[p] != ws[p + 1]:
            raise PreconditionError(f"entries {p}, {p + 1} ({ws[p]}, {ws[p + 1]}) are not a pair")


# -- reflection triples --------------------------------------------------------


def triple_normalize(ws: Workspace, p: int, shape: str = "first"):
    """Euclidean descent on the triple at ``p``.

    Ends in ``(i, i, j)`` for ``shape="first"`` or ``(i, j, j)`` for
    ``shape="last"``.
    """
    if shape not in ("first", "last"):
        raise ValueError(f"unknown triple shape {shape!r}")
    _need_reflections(ws, (p, p + 1, p + 2))
    n = ws.n
    while True:
        i, j, k = ws.value(p), ws.value(p + 1), ws.value(p + 2)
        d1, d2 = srep(j - i, n), srep(k - j, n)
        if d1 == 0 or d2 == 0:
            break
        old = (max(abs(d1), abs(d2)), abs(d1) + abs(d2))
        if abs(d1) >= abs(d2):
            # sigma_2 takes d1 to d1 - d2, its inverse to d1 + d2
            sign = 1 if abs(srep(d1 - d2, n)) <= abs(srep(d1 + d2, n)) else -1
            ws.braid(p + 1, sign)
        else:
            # sigma_1 takes d2 to d2 + d1, its inverse to d2 - d1
            sign = 1 if abs(srep(d2 + d1, n)) <= abs(srep(d2 - d1, n)) else -1
            ws.braid(p, sign)
        i, j, k = ws.value(p), ws.value(p + 1), ws.value(p + 2)
        e1, e2 = srep(j - i, n), srep(k - j, n)
        new = (max(abs(e1), abs(e2)), abs(e1) + abs(e2))
        assert new[1] < old[1] and (new[0] < old[0] or 0 in (e1, e2)), (old, new)
    if shape == "first" and d1 != 0:
        # (i, j, j) -> (j, j, i)
        ws.braid(p, -1)
        ws.braid(p + 1, -1)
    elif shape == "last" and d2 != 0:
        # (i, i, k) -> (k, i, i)
        ws.braid(p + 1, 1)
        ws.braid(p, 1)


def double_exchange(ws: Workspace, p: int):
    """``(j, i, i) -> (i, i, j)`` with sigma_1^-1 sigma_2^-1."""
    _need_reflections(ws, (p, p + 1, p + 2))
    if ws[p + 1] != ws[p + 2]:
        raise PreconditionError("double exchange needs the shape (j, i, i)")
    ws.braid(p, -1)
    ws.braid(p + 1, -1)


# -- a reflection pair followed by a rotation ----------------------------------


def abm_shift(ws: Workspace, p: int, ell: int):
    """``(s_i, s_j, x^m) -> (s_{i+2 ell m}, s_{j+2 ell m}, x^m)``."""
    _need_reflections(ws, (p, p + 1))
    if p + 2 > len(ws) or ws[p + 2].is_reflection:
        raise PreconditionError(f"entry {p + 2} must be a rotation")
    sign = 1 if ell >= 0 else -1
    for _ in range(abs(ell)):
        ws.braid(p + 1, sign)
        ws.braid(p, sign)
        ws.braid(p, sign)
        ws.braid(p + 1, sign)


def full_twist(ws: Workspace, p: int):
    """``(s_j, x^r) -> (s_{j-2r}, x^-r)`` with sigma^2."""
    ws.braid(p, 1)
    ws.braid(p, 1)


# -- sequences of pairs --------------------------------------------------------


def pair_swap(ws: Workspace, p: int):
    """``(i, i, j, j) -> (j, j, i, i)``: two double exchanges."""
    _need_pairs(ws, (p, p + 2))
    ws.braid(p + 1, -1)
    ws.braid(p + 2, -1)
    ws.braid(p, -1)
    ws.braid(p + 1, -1)


def pair_negate(ws: Workspace, p: int):
    """``(c, c, i, i) -> (c, c, 2c - i, 2c - i)``; for c = 0 this is i -> -i."""
    _need_pairs(ws, (p, p + 2))
    ws.braid(p + 1, 1)
    ws.braid(p + 2, 1)
    ws.braid(p + 2, 1)
    ws.braid(p + 1, 1)


def pair_shear(ws: Workspace, p: int, ell: int):
    """``(i, i, j, j) -> (i + ell(j-i), ..., j + ell(j-i), ...)``."""
    _need_pairs(ws, (p, p + 2))
    word = [(p + 1, -1), (p, -1), (p + 2, 1), (p + 1, 1)]
    if ell < 0:
        word = [(i, -s) for i, s in reversed(word)]
    for _ in range(abs(ell)):
        ws.word(word)


def _pair_reduce_step(ws: Workspace, p: int):
    # (c,c,i,i,j,j) -> (c,c,i,i,2i-j,2i-j)
    ws.braid(p + 3, 1)
    ws.braid(p + 4, 1)
    ws.braid(p + 4, 1)
    ws.braid(p + 3, 1)
    pair_swap(ws, p + 2)
    pair_negate(ws, p)
    pair_swap(ws, p + 2)


def pair_reduce(ws: Workspace, p: int, ell: int = 1):
    """``(c, c, i, i, j, j) -> (c, c, i, i, j + 2 ell (c - i), ...)``.

    With ``c = 0`` this is ``j -> j - 2 ell i``.  Negative ``ell`` runs the
    inverse word.
    """
    _need_pairs(ws, (p, p + 2, p + 4))
    if ell >= 0:
        for _ in range(ell):
            _pair_reduce_step(ws, p)
        return
    scratch = Workspace(ws.entries())
    _pair_reduce_step(scratch, p)
    inverse = [(s.index, -s.sign) for s in reversed(scratch.trace.steps)]
    for _ in range(-ell):
        ws.word(inverse)


# -- moving and conjugating a single pair --------------------------------------


def move_pair(ws: Workspace, src: int, dst: int):
    """Carry the pair starting at ``src`` so that it starts at ``dst``."""
    _need_pairs(ws, (src,))
    if not 1 <= dst <= len(ws) - 1:
        raise PreconditionError(f"pair cannot start at {dst}")
    gap = src - 1
    while gap < dst - 1:
        ws.braid(gap + 2, 1)
        ws.braid(gap + 1, 1)
        gap += 1
    while gap > dst - 1:
        ws.braid(gap, -1)
        ws.braid(gap + 1, -1)
        gap -= 1


def conjugation_path(ws: Workspace, p: int, target: int, usable=None):
    """Shortest word in the other entries conjugating the pair at ``p`` to ``s_target``.

    Returns a list of ``(q, sign)`` where ``q`` indexes the entries with the
    pair removed (1-based) and ``sign`` says whether to conjugate by the entry
    or its inverse, in the order they are applied.  None if unreachable.
    """
    n = ws.n
    others = ws.c[: p - 1] + ws.c[p + 1 :]
    if usable is None:
        usable = range(1, len(others) + 1)
    gens = []
    for q in usable:
        o = others[q - 1]
        gens.append((q, 1, o))
        if not o.is_reflection and (2 * o.shift) % n:
            gens.append((q, -1, dh.inverse(o)))
    start = ws.value(p)
    target %= n
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == target:
            break
        g = dh.DihedralElement(n, True, cur)
        for q, sign, o in gens:
            nxt = dh.conjugate(g, o).shift
            if nxt not in prev:
                prev[nxt] = (cur, q, sign)
                queue.append(nxt)
    if target not in prev:
        return None
    path = []
    cur = target
    while prev[cur] is not None:
        cur, q, sign = prev[cur]
        path.append((q, sign))
    path.reverse()
    return path


def conjugate_pair(ws: Workspace, p: int, path):
    """Conjugate the pair at ``p`` by the entries named in ``path``; the pair
    ends where it started and every other entry is unchanged."""
    _need_pairs(ws, (p,))
    gap = p - 1

    def walk(to):
        nonlocal gap
        while gap < to:
            ws.braid(gap + 2, 1)
            ws.braid(gap + 1, 1)
            gap += 1
        while gap > to:
            ws.braid(gap, -1)
            ws.braid(gap + 1, -1)
            gap -= 1

    for q, sign in path:
        if sign > 0:
            walk(q)
            ws.braid(q, 1)
            ws.braid(q + 1, 1)
            gap = q - 1
        else:
            walk(q - 1)
            ws.braid(q + 1, -1)
            ws.braid(q, -1)
            gap = q
    walk(p - 1)


def retag_pair(ws: Workspace, p: int, target: int, usable=None):
    """Replace the pair ``(g, g)`` at ``p`` by ``(s_target, s_target)``."""
    path = conjugation_path(ws, p, target, usable)
    if path is None:
        raise PreconditionError(
            f"s{target % ws.n} is not conjugate to {ws[p]} under the other entries"
        )
    conjugate_pair(ws, p, path)


# -- two reflections with fixed difference -------------------------------------


@dataclass(frozen=True)
class PairOrbit:
    """Braid orbit ``{(i, i + difference) : i = residue mod modulus}``."""

    n: int
    modulus: int
    residue: int
    difference: int

    @property
    def m(self) -> int:
        return self.n // self.modulus

    def __contains__(self, pair) -> bool:
        i, j = pair
        return (j - i - self.difference) % self.n == 0 and (i - self.residue) % self.modulus == 0

    def members(self) -> list[tuple[int, int]]:
        return [
            (i, (i + self.difference) % self.n)
            for i in range(self.n)
            if (i - self.residue) % self.modulus == 0
        ]

    def __len__(self):
        return self.n // self.modulus


def lemma_pair_orbit(i0: int, j0: int, n: int) -> PairOrbit:
    diff = (j0 - i0) % n
    m = n // math.gcd(n, diff)
    return PairOrbit(n, n // m, i0 % (n // m), diff)


def pair_orbit_shift(ws: Workspace, p: int, t: int):
    """``(i, j) -> (i + t(j-i), j + t(j-i))`` inside the pair orbit."""
    _need_reflections(ws, (p, p + 1))
    n = ws.n
    period = n // math.gcd(n, ws.value(p + 1) - ws.value(p))
    t = srep(t, period) if period > 1 else 0
    # sigma^-1 moves along by +(j - i), sigma by -(j - i)
    sign = -1 if t > 0 else 1
    for _ in range(abs(t)):
        ws.braid(p, sign)


def scale_anchor(ws: Workspace, p: int, t: int):
    """``(c, c, a) -> (a + t(a-c), a + t(a-c), a)``.

    Needs ``t`` to be a unit modulo the order of ``a - c``; the relative
    value ``c - a`` is multiplied by ``-t``.
    """
    _need_pairs(ws, (p,))
    _need_reflections(ws, (p + 2,))
    n = ws.n
    delta = (ws.value(p + 2) - ws.value(p)) % n
    period = n // math.gcd(n, delta)
    if period == 1:
        return
    if math.gcd(t, period) != 1:
        raise PreconditionError(f"{t} is not a unit mod {period}")
    s = pow(t, -1, period)
    pair_orbit_shift(ws, p + 1, t)
    pair_orbit_shift(ws, p, s)
    # now (a, e, e); bring the pair (e, e) in front of a
    ws.braid(p, -1)
    ws.braid(p + 1, -1)


# -- all-reflection vectors ----------------------------------------------------


def pair_up(ws: Workspace, first: int, last: int):
    """Turn the reflection block ``first..last`` (even length) into pairs,
    except that the final two entries may differ."""
    for p in range(first, last - 2, 2):
        triple_normalize(ws, p, "first")


def sort_pairs(ws: Workspace, first: int, count: int, key):
    """Bubble-sort ``count`` pairs starting at ``first`` by ``key(value)``."""
    for sweep in range(count):
        moved = False
        for f in range(count - 1 - sweep):
            p = first + 2 * f
            if key(ws.value(p)) > key(ws.value(p + 2)):
                pair_swap(ws, p)
                moved = True
        if not moved:
            break


def no_rotations(ws: Workspace):
    """Bring an all-reflection vector to ``(0,...,0,j,j)`` (n odd) or
    ``(0,...,0,j,...,j)`` (n even) using braids and shifts y -> x^l y."""
    d = len(ws)
    n = ws.n
    if d % 2 or any(not g.is_reflection for g in ws.c):
        raise PreconditionError("needs an even number of entries, all reflections")
    if not dh.product(ws.c).is_identity:
        raise PreconditionError("product of the entries is not the identity")
    N = d // 2
    pair_up(ws, 1, d)
    assert ws[d - 1] == ws[d]
    ws.shift(-ws.value(1))
    if N == 1:
        return

    def values():
        return [ws.value(2 * f + 1) for f in range(N)]

    def arrange(order):
        # order: desired sequence of pair values (a permutation of values())
        rank = {}
        for pos, val in enumerate(order):
            rank.setdefault(val, []).append(pos)
        # stable assignment of ranks to current pairs
        used = {val: 0 for val in rank}
        keys = []
        for val in values():
            keys.append(rank[val][used[val]])
            used[val] += 1
        # bubble sort on explicit keys
        for sweep in range(N):
            moved = False
            for f in range(N - 1 - sweep):
                if keys[f] > keys[f + 1]:
                    pair_swap(ws, 2 * f + 1)
                    keys[f], keys[f + 1] = keys[f + 1], keys[f]
                    moved = True
            if not moved:
                break

    while True:
        vals = sorted(values())
        arrange(vals)
        distinct = sorted(set(vals) - {0})
        if len(distinct) < 2:
            break
        i, j = distinct[0], distinct[1]
        rest = list(vals)
        rest.remove(0)
        rest.remove(i)
        rest.remove(j)
        zeros = [v for v in rest if v == 0]
        others = [v for v in rest if v != 0]
        arrange(zeros + [0, i, j] + others)
        p = 2 * len(zeros) + 1
        pair_reduce(ws, p, 1)
        if j - 2 * i < 0:
            pair_swap(ws, p + 2)
            pair_negate(ws, p)
            pair_swap(ws, p + 2)
        assert ws.value(p + 4) < j

    if n % 2:
        # (0,0,j,j,j,j) -> (0,0,j,j,0,0)
        while True:
            nonzero = [v for v in values() if v]
            if len(nonzero) < 2:
                break
            arrange([0] * (N - len(nonzero)) + nonzero)
            p = 2 * (N - len(nonzero)) - 1
            pair_reduce(ws, p, -((n - 1) // 2))
            assert ws.value(p + 4) == 0
        arrange(sorted(values()))


# -- public wrappers -------------------------------------------------------------


def _run(v: Entries, fn, *args):
    ws = Workspace(v)
    fn(ws, *args)
    return ws.entries(), ws.trace


def lemma_triple_normalize(v: Entries, p: int = 1, shape: str = "first"):
    return _run(v, triple_normalize, p, shape)


def lemma_double_exchange(v: Entries, p: int = 1):
    return _run(v, double_exchange, p)


def lemma_abm_shift(v: Entries, p: int, ell: int):
    return _run(v, abm_shift, p, ell)


def lemma_full_twist(v: Entries, p: int):
    return _run(v, full_twist, p)


def lemma_pairs(v: Entries, p: int, variant: str, ell: int = 1):
    """Pair-sequence recipes.

    ``i``:   (c,c,i,i) -> (c,c,2c-i,2c-i)
    ``ii``:  (i,i,j,j) -> (j,j,i,i)
    ``iii``: (i,i,j,j) -> shear by ``ell (j-i)``
    ``iv``:  (c,c,i,i,j,j) -> (c,c,i,i,j+2 ell (c-i),...)
    """
    if variant == "i":
        return _run(v, pair_negate, p)
    if variant == "ii":
        return _run(v, pair_swap, p)
    if variant == "iii":
        return _run(v, pair_shear, p, ell)
    if variant == "iv":
        return _run(v, pair_reduce, p, ell)
    raise ValueError(f"unknown pair-sequence variant {variant!r}")


def lemma_no_rotations(v: Entries):
    return _run(v, no_rotations)
