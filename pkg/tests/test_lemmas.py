import itertools
import random

import pytest

from dihedral_hurwitz import dihedral as dh
from dihedral_hurwitz import lemmas as lm
from dihedral_hurwitz.dihedral import GroupContext
from dihedral_hurwitz.errors import PreconditionError
from dihedral_hurwitz.hurwitz import nu
from dihedral_hurwitz.trace import Auto, Braid, MoveTrace, Workspace

from conftest import V, pair_bfs, shifts


def test_srep():
    assert [lm.srep(x, 6) for x in range(6)] == [0, 1, 2, 3, -2, -1]
    assert [lm.srep(x, 5) for x in range(5)] == [0, 1, 2, -2, -1]


def test_triple_normalize_examples():
    out, tr = lm.lemma_triple_normalize(V(7, "s0 s3 s5"), 1, "first")
    assert out[0] == out[1] and tr.replay(V(7, "s0 s3 s5")) == out
    out, tr = lm.lemma_triple_normalize(V(7, "s2 s4 s4"), 1, "first")
    assert shifts(out) == [4, 4, 2] and len(tr) <= 2
    v = V(9, "s1 s1 s5")
    out, tr = lm.lemma_triple_normalize(v, 1, "last")
    assert out[1] == out[2] and tr.replay(v) == out
    assert dh.product(out) == dh.product(v)


@pytest.mark.parametrize("n", range(3, 12))
@pytest.mark.parametrize("shape", ["first", "last"])
def test_triple_normalize_exhaustive(n, shape):
    ctx = GroupContext(n)
    for i, j, k in itertools.product(range(n), repeat=3):
        v = (ctx.reflection(i), ctx.reflection(j), ctx.reflection(k))
        out, tr = lm.lemma_triple_normalize(v, 1, shape)
        assert tr.replay(v) == out
        assert (out[0] == out[1]) if shape == "first" else (out[1] == out[2])
        assert dh.product(out) == dh.product(v)


def test_triple_normalize_inside_longer_vector():
    v = V(8, "r3 s1 s6 s3 r5")
    out, tr = lm.lemma_triple_normalize(v, 2, "first")
    assert out[0] == v[0] and out[4] == v[4] and out[1] == out[2]
    with pytest.raises(PreconditionError):
        lm.lemma_triple_normalize(v, 1)


def test_abm_examples():
    assert lm.lemma_abm_shift(V(7, "s0 s1 r2"), 1, 0)[0] == V(7, "s0 s1 r2")
    out, tr = lm.lemma_abm_shift(V(7, "s0 s1 r2"), 1, 1)
    assert out == V(7, "s4 s5 r2")
    assert [(s.index, s.sign) for s in tr] == [(2, 1), (1, 1), (1, 1), (2, 1)]
    assert lm.lemma_abm_shift(V(6, "s0 s3 r3"), 1, 1)[0] == V(6, "s0 s3 r3")
    out, tr = lm.lemma_abm_shift(V(7, "s0 s1 r2"), 1, -1)
    assert out == V(7, "s3 s4 r2") and all(s.sign == -1 for s in tr)
    with pytest.raises(PreconditionError):
        lm.lemma_abm_shift(V(7, "s0 s1 s2"), 1, 1)


def test_pairs_examples():
    assert lm.lemma_pairs(V(5, "s0 s0 s2 s2"), 1, "i")[0] == V(5, "s0 s0 s3 s3")
    assert lm.lemma_pairs(V(5, "s1 s1 s1 s1"), 1, "ii")[0] == V(5, "s1 s1 s1 s1")
    assert lm.lemma_pairs(V(5, "s1 s1 s4 s4"), 1, "ii")[0] == V(5, "s4 s4 s1 s1")
    out = lm.lemma_pairs(V(7, "s0 s0 s1 s1 s5 s5"), 1, "iv", 1)[0]
    assert out == V(7, "s0 s0 s1 s1 s3 s3")
    out = lm.lemma_pairs(V(7, "s0 s0 s2 s2"), 1, "iii", 2)[0]
    assert out == V(7, "s4 s4 s6 s6")
    with pytest.raises(PreconditionError):
        lm.lemma_pairs(V(5, "s0 s1 s2 s2"), 1, "i")
    with pytest.raises(ValueError):
        lm.lemma_pairs(V(5, "s0 s0 s2 s2"), 1, "v")


def test_double_exchange():
    out, tr = lm.lemma_double_exchange(V(6, "s5 s2 s2"), 1)
    assert out == V(6, "s2 s2 s5") and len(tr) == 2
    with pytest.raises(PreconditionError):
        lm.lemma_double_exchange(V(6, "s5 s2 s3"), 1)


def test_full_twist():
    assert lm.lemma_full_twist(V(7, "s3 r5"), 1)[0] == V(7, "s0 r2")


def test_no_rotations_examples():
    v = V(5, "s0 s0 s1 s1")
    out, tr = lm.lemma_no_rotations(v)
    assert out == v
    out, tr = lm.lemma_no_rotations(V(5, "s2 s2 s3 s3"))
    assert shifts(out)[:2] == [0, 0] and out[2] == out[3]
    out, tr = lm.lemma_no_rotations(V(6, "s0 s0 s2 s2 s4 s4"))
    vals = shifts(out)
    assert vals[0] == 0 and len(set(vals)) <= 2 and vals == sorted(vals)
    assert all(isinstance(s, Braid) or s.phi.b == 1 for s in tr)


@pytest.mark.parametrize("n", range(3, 12))
def test_no_rotations_shape(n):
    rng = random.Random(n)
    ctx = GroupContext(n)
    for _ in range(60):
        N = rng.randrange(1, 6)
        v = [ctx.reflection(rng.randrange(n)) for _ in range(2 * N - 1)]
        v.append(ctx.reflection(dh.product(v).shift))
        out, tr = lm.lemma_no_rotations(v)
        assert tr.replay(v) == out
        vals = shifts(out)
        nonzero = [x for x in vals if x]
        assert vals[0] == 0 and vals == sorted(vals) and len(set(nonzero)) <= 1
        if n % 2:
            assert len(nonzero) in (0, 2)
        assert all(isinstance(s, Braid) or s.phi.b == 1 for s in tr)


def test_no_rotations_preconditions():
    with pytest.raises(PreconditionError):
        lm.lemma_no_rotations(V(5, "s0 s0 r1 r4"))
    with pytest.raises(PreconditionError):
        lm.lemma_no_rotations(V(5, "s0 s1"))


def test_pair_orbit_examples():
    o = lm.lemma_pair_orbit(3, 3, 7)
    assert o.members() == [(3, 3)]
    o = lm.lemma_pair_orbit(0, 2, 6)
    assert set(o.members()) == pair_bfs(0, 2, 6) == {(0, 2), (2, 4), (4, 0)}
    assert (2, 4) in o and (1, 3) not in o
    o = lm.lemma_pair_orbit(0, 1, 5)
    assert set(o.members()) == {(i, (i + 1) % 5) for i in range(5)}


@pytest.mark.parametrize("n", range(3, 13))
def test_pair_orbit_matches_bfs(n):
    for i0, j0 in itertools.product(range(n), repeat=2):
        orbit = lm.lemma_pair_orbit(i0, j0, n)
        assert set(orbit.members()) == pair_bfs(i0, j0, n)
        assert len(orbit) == len(orbit.members())


def test_move_and_retag_pair():
    ws = Workspace(V(6, "s1 s1 s0 s3 r3"))
    lm.move_pair(ws, 1, 3)
    assert shifts(ws.entries()) == [0, 3, 1, 1, 3]
    lm.move_pair(ws, 3, 1)
    assert shifts(ws.entries()) == [1, 1, 0, 3, 3]
    v = V(7, "s2 s2 s0 s1")
    ws = Workspace(v)
    lm.retag_pair(ws, 1, 5)
    assert shifts(ws.entries()) == [5, 5, 0, 1]
    assert ws.trace.replay(v) == ws.entries()
    ws = Workspace(V(4, "s1 s1 s0 s2"))
    with pytest.raises(PreconditionError):
        lm.retag_pair(ws, 1, 0)


def test_scale_anchor():
    # (c, c, a) -> (a + t(a - c), ..., a)
    v = V(9, "s1 s1 s3 s5")
    for t in (1, 2, 4, 5, 7, 8):
        ws = Workspace(v)
        lm.scale_anchor(ws, 1, t)
        assert shifts(ws.entries()) == [(3 + 2 * t) % 9] * 2 + [3, 5]
        assert ws.trace.replay(v) == ws.entries()
    with pytest.raises(PreconditionError):
        lm.scale_anchor(Workspace(v), 1, 3)


def test_move_trace_json():
    phi = dh.Automorphism(5, 3, 1)
    tr = MoveTrace([Braid(2, 1), Braid(1, -1), Auto(phi)])
    assert tr.dumps() == '{"steps":[{"b":[2,1]},{"b":[1,-1]},{"a":{"shift":3,"unit":1}}]}'
    assert MoveTrace.from_json(tr.to_json(), 5) == tr
    assert tr.braid_steps == 2
    v = V(5, "s0 s1 s1 s0")
    assert tr.replay(v) == (tr.replay(v))
    with pytest.raises(ValueError):
        MoveTrace.from_json({"steps": [{"b": [1, 0]}]}, 5)
    with pytest.raises(ValueError):
        MoveTrace.from_json({"steps": [{"q": 1}]}, 5)


def test_workspace_tracks_nu():
    v = V(8, "s1 r3 s2 s6 r5 s5")
    ws = Workspace(v)
    ws.braid(1, 1)
    ws.braid(3, -1)
    ws.shift(2)
    assert ws.trace.replay(v) == ws.entries()
    assert sum(nu(ws.entries()).refl) == sum(nu(v).refl)
