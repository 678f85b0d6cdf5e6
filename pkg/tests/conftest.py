import math

import pytest

from dihedral_hurwitz.dihedral import GroupContext


def V(n, text):
    """``V(5, "s0 s0 s1 s1")`` -> tuple of elements of D_5."""
    ctx = GroupContext(n)
    out = []
    for tok in text.split():
        if tok == "e":
            out.append(ctx.identity())
        elif tok[0] == "s":
            out.append(ctx.reflection(int(tok[1:])))
        else:
            out.append(ctx.rotation(int(tok[1:])))
    return tuple(out)


def shifts(v):
    return [g.shift for g in v]


# -- independent model: D_n as permutations of the polygon's vertices -----------


def as_permutation(g):
    """The affine map m -> +-m + j as a tuple, built without the package's multiply."""
    n = g.n
    sign = -1 if g.is_reflection else 1
    return tuple((sign * m + g.shift) % n for m in range(n))


def perm_compose(p, q):
    """(p q)(m) = p(q(m))."""
    return tuple(p[q[m]] for m in range(len(p)))


def perm_inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_closure(gens, n):
    ident = tuple(range(n))
    seen = {ident}
    todo = [ident]
    while todo:
        cur = todo.pop()
        for g in gens:
            nxt = perm_compose(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def brute_valid(entries):
    """Hurwitz conditions checked in the permutation model."""
    n = entries[0].n
    perms = [as_permutation(g) for g in entries]
    ident = tuple(range(n))
    if any(p == ident for p in perms):
        return False
    acc = ident
    for p in perms:
        acc = perm_compose(acc, p)
    if acc != ident:
        return False
    return len(perm_closure(perms, n)) == 2 * n


def pair_bfs(i0, j0, n):
    """Hurwitz orbit of a reflection pair by breadth-first search on (i, j)."""
    seen = {(i0 % n, j0 % n)}
    todo = [(i0 % n, j0 % n)]
    while todo:
        i, j = todo.pop()
        # sigma: (i, j) -> (2i - j, i); inverse: (j, 2j - i)
        for nxt in (((2 * i - j) % n, i), (j, (2 * j - i) % n)):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


# -- acceptance summary ------------------------------------------------------------


@pytest.fixture
def criterion(request):
    results = request.config.__dict__.setdefault("_acceptance_results", {})

    class Recorder:
        def __init__(self):
            self.number = None
            self.detail = ""

        def __call__(self, number, detail=""):
            self.number = number
            self.detail = detail
            results[number] = ("FAIL", detail)

        def passed(self, detail=None):
            results[self.number] = ("PASS", detail if detail is not None else self.detail)

    return Recorder()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.__dict__.get("_acceptance_results")
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        status, detail = results[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {detail}")


def units(n):
    return [b for b in range(1, n) if math.gcd(b, n) == 1]
