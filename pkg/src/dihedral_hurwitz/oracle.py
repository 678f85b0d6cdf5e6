"""Exhaustive orbit computations for small (n, d).

Elements are packed as integer codes ``n * is_reflection + shift`` (so code
order is the element order), tuples as base-``2n`` integers with the first
entry most significant (so key order is lexicographic order).  All valid
tuples are enumerated into a sorted key array; every generator becomes an
index array via ``searchsorted``, and orbits are the connected components of
the resulting graph.
"""

from __future__ import annotations

import math
import os
import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import dihedral as dh
from .dihedral import Automorphism, DihedralElement, GroupContext
from .errors import BudgetExceeded, ContextMismatch, NotRealizable, OracleInvariantViolation
from .hurwitz import (
    Entries,
    HurwitzVector,
    NumericalType,
    NuVector,
    _entries,
    canonical_type,
    enumerate_types,
    format_vector,
    numerical_type,
    nu,
)

DEFAULT_MAX_STATES = 50_000_000
FLAVORS = ("b", "ba")


def resolve_max_states(explicit: int | None = None) -> int:
    if explicit is not None:
        value = int(explicit)
    else:
        value = int(os.environ.get("HURWITZ_MAX_STATES", DEFAULT_MAX_STATES))
    if value < 1:
        raise ValueError("max_states must be at least 1")
    return value


def _flavor(flavor: str) -> str:
    f = flavor.lower()
    if f not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
    return f


# -- code tables -------------------------------------------------------------


class _Tables:
    def __init__(self, n: int):
        self.n = n
        elems = GroupContext(n).elements()
        self.elems = elems
        size = 2 * n
        self.mul = np.empty((size, size), dtype=np.int64)
        self.conj = np.empty((size, size), dtype=np.int64)  # conj[g, h] = h g h^-1
        for a, g in enumerate(elems):
            for b, h in enumerate(elems):
                self.mul[a, b] = self.code(dh.multiply(g, h))
                self.conj[a, b] = self.code(dh.conjugate(g, h))
        self.inv = np.array([self.code(dh.inverse(g)) for g in elems], dtype=np.int64)
        ctx = GroupContext(n)
        classes = dh.conjugacy_classes(ctx)
        index = {c: i for i, c in enumerate(classes)}
        self.n_classes = len(classes)
        self.cls = np.array([index[dh.conjugacy_class(g)] for g in elems], dtype=np.int64)
        self.class_ids = classes

    def code(self, g: DihedralElement) -> int:
        return self.n * int(g.is_reflection) + g.shift

    def decode(self, row) -> tuple[DihedralElement, ...]:
        return tuple(self.elems[int(c)] for c in row)

    def aut(self, phi: Automorphism) -> np.ndarray:
        return np.array([self.code(dh.apply_automorphism(phi, g)) for g in self.elems], dtype=np.int64)


def automorphism_generators(ctx: GroupContext) -> list[Automorphism]:
    """A generating set of Aut(D_n): the shift y -> xy and the unit maps."""
    gens = [Automorphism(ctx.n, 1, 1)]
    gens += [Automorphism(ctx.n, 0, b) for b in ctx.units() if b != 1]
    return gens


def required_states(ctx: GroupContext, d: int) -> int:
    return (2 * ctx.n) ** d


def _check_budget(ctx, d, max_states):
    budget = resolve_max_states(max_states)
    need = required_states(ctx, d)
    if need > budget:
        raise BudgetExceeded(need, budget)
    return budget


# -- enumeration ---------------------------------------------------------------


def _valid_codes(ctx: GroupContext, d: int, tables: _Tables) -> np.ndarray:
    n = ctx.n
    if d < 1:
        return np.zeros((0, max(d, 0)), dtype=np.int64)
    vals = np.arange(1, 2 * n, dtype=np.int64)
    if d == 1:
        prefix = np.zeros((1, 0), dtype=np.int64)
    else:
        grids = np.meshgrid(*([vals] * (d - 1)), indexing="ij")
        prefix = np.stack([g.ravel() for g in grids], axis=1)
    prod = np.zeros(len(prefix), dtype=np.int64)
    for col in range(prefix.shape[1]):
        prod = tables.mul[prod, prefix[:, col]]
    last = tables.inv[prod]
    keep = last != 0
    arr = np.concatenate([prefix[keep], last[keep, None]], axis=1)
    # generation: a reflection s_i0 plus gcd(n, rotation exponents, i - i0) == 1
    is_refl = arr >= n
    shifts = arr % n
    has_refl = is_refl.any(axis=1)
    first = shifts[np.arange(len(arr)), np.argmax(is_refl, axis=1)]
    parts = np.where(is_refl, (shifts - first[:, None]) % n, shifts)
    g = np.gcd.reduce(np.concatenate([parts, np.full((len(arr), 1), n)], axis=1), axis=1)
    return arr[has_refl & (g == 1)]


def _pack(arr: np.ndarray, n: int) -> np.ndarray:
    base = 2 * n
    d = arr.shape[1]
    weights = base ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return arr @ weights


def enumerate_valid(ctx: GroupContext, d: int, max_states: int | None = None):
    """Every valid Hurwitz vector of length d, once each, lexicographically."""
    _check_budget(ctx, d, max_states)
    tables = _Tables(ctx.n)
    for row in _valid_codes(ctx, d, tables):
        yield HurwitzVector(ctx.n, tables.decode(row))


def count_valid(ctx: GroupContext, d: int, max_states: int | None = None) -> int:
    _check_budget(ctx, d, max_states)
    return len(_valid_codes(ctx, d, _Tables(ctx.n)))


# -- partitions -----------------------------------------------------------------


@dataclass
class Orbit:
    rep: HurwitzVector
    size: int
    type: NumericalType | None
    nu: NuVector

    def to_json(self) -> dict:
        out = {"rep": str(self.rep), "size": self.size}
        out["type"] = self.type.to_json() if self.type is not None else None
        return out


@dataclass
class OrbitPartition:
    n: int
    d: int
    flavor: str
    orbits: list[Orbit]
    _keys: np.ndarray = field(repr=False, default=None)
    _labels: np.ndarray = field(repr=False, default=None)
    _codes: np.ndarray = field(repr=False, default=None)

    @property
    def valid_count(self) -> int:
        return int(sum(o.size for o in self.orbits))

    def __len__(self):
        return len(self.orbits)

    def orbit_index(self, v: Entries) -> int:
        tables = _Tables(self.n)
        row = np.array([[tables.code(g) for g in _entries(v)]], dtype=np.int64)
        key = _pack(row, self.n)[0]
        i = int(np.searchsorted(self._keys, key))
        if i >= len(self._keys) or self._keys[i] != key:
            raise KeyError(f"{format_vector(v)} is not a valid vector of length {self.d}")
        return int(self._labels[i])

    def members(self, index: int) -> list[HurwitzVector]:
        tables = _Tables(self.n)
        rows = self._codes[self._labels == index]
        return [HurwitzVector(self.n, tables.decode(r)) for r in rows]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "flavor": self.flavor,
            "valid_count": self.valid_count,
            "orbits": [o.to_json() for o in self.orbits],
        }


def _run_parallel(fns, threads):
    if threads is None or threads == 1 or len(fns) <= 1:
        return [f() for f in fns]
    workers = threads if threads > 0 else (os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda f: f(), fns))


def compute_orbits(
    ctx: GroupContext,
    d: int,
    flavor: str = "ba",
    max_states: int | None = None,
    threads: int | None = None,
) -> OrbitPartition:
    """Partition the valid vectors into B- or BA-orbits.

    Invariants are checked edge by edge: nu along braid edges, the numerical
    type along automorphism edges.  A failure raises OracleInvariantViolation.
    """
    flavor = _flavor(flavor)
    _check_budget(ctx, d, max_states)
    n = ctx.n
    tables = _Tables(n)
    codes = _valid_codes(ctx, d, tables)
    keys = _pack(codes, n)
    count = len(codes)
    if count == 0:
        return OrbitPartition(n, d, flavor, [], keys, np.zeros(0, dtype=np.int64), codes)
    base = 2 * n
    weights = base ** np.arange(d - 1, -1, -1, dtype=np.int64)

    # nu as a key: sorted class ids packed in base n_classes
    sorted_cls = np.sort(tables.cls[codes], axis=1)
    nu_key = _pack_base(sorted_cls, tables.n_classes)
    _, first_of, nu_inv = np.unique(nu_key, return_index=True, return_inverse=True)
    types = [numerical_type(tables.decode(codes[i]), n) for i in first_of]
    type_list = sorted(set(types))
    type_index = {t: i for i, t in enumerate(type_list)}
    type_id = np.array([type_index[t] for t in types], dtype=np.int64)[nu_inv]

    def lookup(new_keys):
        idx = np.searchsorted(keys, new_keys)
        idx = np.minimum(idx, count - 1)
        if not np.array_equal(keys[idx], new_keys):
            raise OracleInvariantViolation("a move left the set of valid vectors")
        return idx

    def braid_edge(i):
        def job():
            a, b = codes[:, i], codes[:, i + 1]
            new_i = tables.conj[b, a]
            new_j = a
            nk = keys + (new_i - a) * weights[i] + (new_j - b) * weights[i + 1]
            idx = lookup(nk)
            if not np.array_equal(nu_key[idx], nu_key):
                raise OracleInvariantViolation(f"nu changed along sigma_{i + 1}")
            return idx
        return job

    def aut_edge(phi):
        def job():
            image = tables.aut(phi)[codes]
            idx = lookup(image @ weights)
            if not np.array_equal(type_id[idx], type_id):
                raise OracleInvariantViolation(f"numerical type changed under {phi}")
            return idx
        return job

    jobs = [braid_edge(i) for i in range(d - 1)]
    if flavor == "ba":
        jobs += [aut_edge(phi) for phi in automorphism_generators(ctx)]
    targets = _run_parallel(jobs, threads)

    src = np.concatenate([np.arange(count)] * len(targets)) if targets else np.zeros(0, dtype=np.int64)
    dst = np.concatenate(targets) if targets else np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(count, count)).tocsr()
    _, raw = connected_components(graph, directed=True, connection="weak")

    # relabel by smallest member so labels do not depend on traversal order
    _, first_index = np.unique(raw, return_index=True)
    order = np.argsort(first_index)
    relabel = np.empty(len(order), dtype=np.int64)
    relabel[order] = np.arange(len(order))
    labels = relabel[raw]
    sizes = np.bincount(labels, minlength=len(order))
    reps = np.sort(first_index)

    def spread(values):
        lo = np.full(len(reps), np.iinfo(np.int64).max, dtype=np.int64)
        hi = np.full(len(reps), np.iinfo(np.int64).min, dtype=np.int64)
        np.minimum.at(lo, labels, values)
        np.maximum.at(hi, labels, values)
        return lo, hi

    nu_lo, nu_hi = spread(nu_key)
    t_lo, t_hi = spread(type_id)
    orbits = []
    for label, rep_i in enumerate(reps):
        rep = HurwitzVector(n, tables.decode(codes[rep_i]))
        if flavor == "b" and nu_lo[label] != nu_hi[label]:
            raise OracleInvariantViolation(f"orbit of {rep} carries several nu values")
        if t_lo[label] != t_hi[label]:
            raise OracleInvariantViolation(f"orbit of {rep} carries several numerical types")
        orbits.append(Orbit(rep, int(sizes[label]), type_list[int(t_lo[label])], nu(rep)))
    return OrbitPartition(n, d, flavor, orbits, keys, labels, codes)


def _pack_base(arr: np.ndarray, base: int) -> np.ndarray:
    d = arr.shape[1]
    weights = np.array([base ** (d - 1 - i) for i in range(d)], dtype=np.int64)
    return arr @ weights


# -- pairwise membership -----------------------------------------------------------


def _neighbours(c, n_gens_braid, auts):
    for i in range(n_gens_braid):
        a, b = c[i], c[i + 1]
        yield c[:i] + (dh.conjugate(b, a), a) + c[i + 2 :]
        yield c[:i] + (b, dh.conjugate(a, dh.inverse(b))) + c[i + 2 :]
    for phi in auts:
        yield tuple(dh.apply_automorphism(phi, g) for g in c)


def same_orbit(v: Entries, w: Entries, flavor: str = "ba", budget: int | None = None) -> bool:
    """Whether ``v`` and ``w`` are connected by braids (and automorphisms).

    Bidirectional BFS.  Raises BudgetExceeded once more than ``budget`` states
    have been visited without a verdict.
    """
    flavor = _flavor(flavor)
    a, b = _entries(v), _entries(w)
    if not a or not b:
        raise ContextMismatch("vectors must be nonempty")
    n = a[0].n
    if b[0].n != n or len(a) != len(b):
        raise ContextMismatch("vectors must share n and length")
    if a == b:
        return True
    if flavor == "b" and nu(a) != nu(b):
        return False
    if flavor == "ba" and numerical_type(a) != numerical_type(b):
        return False
    budget = resolve_max_states(budget)
    auts = []
    if flavor == "ba":
        for phi in automorphism_generators(GroupContext(n)):
            auts += [phi, phi.inverse()]
    d = len(a)
    seen = [{a}, {b}]
    frontier = [deque([a]), deque([b])]
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        nxt = deque()
        for c in frontier[side]:
            for e in _neighbours(c, d - 1, auts):
                if e in seen[1 - side]:
                    return True
                if e not in seen[side]:
                    seen[side].add(e)
                    nxt.append(e)
            if len(seen[0]) + len(seen[1]) > budget:
                raise BudgetExceeded(len(seen[0]) + len(seen[1]), budget)
        frontier[side] = nxt
    return False


# -- orbits versus types ---------------------------------------------------------


@dataclass
class TheoremReport:
    partition: OrbitPartition
    counterexamples: list[dict]
    realizable: list[NumericalType]
    reduced: int

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        part = self.partition
        return {
            "n": part.n,
            "d": part.d,
            "valid_count": part.valid_count,
            "orbits": [o.to_json() for o in part.orbits],
            "theorem": "PASS" if self.passed else {"counterexample": self.counterexamples},
        }


def verify_theorem(
    ctx: GroupContext,
    d: int,
    max_states: int | None = None,
    threads: int | None = None,
    reduce_samples: int | None = 25,
    seed: int = 0,
) -> TheoremReport:
    """Check, on the full BA-partition, that orbits and realizable types
    correspond one to one and that the reducer lands in the right place.

    ``reduce_samples`` caps how many members per orbit are reduced (None
    reduces every member).
    """
    from .normal_form import canonical_form, reduce

    part = compute_orbits(ctx, d, "ba", max_states, threads)
    bad = []
    seen_types = {}
    for idx, orb in enumerate(part.orbits):
        t = orb.type
        if t in seen_types:
            bad.append({"kind": "type shared by two orbits", "type": t.to_json(),
                        "reps": [str(part.orbits[seen_types[t]].rep), str(orb.rep)]})
        seen_types[t] = idx
        try:
            form = canonical_form(t)
        except NotRealizable as exc:
            bad.append({"kind": "no normal form for a realized type", "type": t.to_json(),
                        "rep": str(orb.rep), "reason": exc.reason})
            continue
        if part.orbit_index(form) != idx:
            bad.append({"kind": "normal form outside its orbit", "type": t.to_json(),
                        "rep": str(orb.rep), "form": str(form)})
    realizable = enumerate_types(ctx, d) if d >= 2 else []
    if set(realizable) != set(seen_types):
        bad.append({"kind": "orbits and realizable types differ",
                    "only_orbits": [t.to_json() for t in sorted(set(seen_types) - set(realizable))],
                    "only_types": [t.to_json() for t in sorted(set(realizable) - set(seen_types))]})
    rng = random.Random(seed)
    reduced = 0
    for idx, orb in enumerate(part.orbits):
        rows = np.flatnonzero(part._labels == idx)
        if reduce_samples is not None and len(rows) > reduce_samples:
            rows = sorted(rng.sample(list(rows), reduce_samples))
        form = canonical_form(orb.type)
        tables = _Tables(ctx.n)
        for r in rows:
            v = HurwitzVector(ctx.n, tables.decode(part._codes[r]))
            out, trace = reduce(v)
            reduced += 1
            if out != form or trace.replay(v) != form.entries:
                bad.append({"kind": "reducer missed the normal form", "vector": str(v),
                            "got": str(out), "expected": str(form)})
    return TheoremReport(part, bad, realizable, reduced)
