"""Move traces: words in braid generators and automorphisms, plus the
mutable workspace the reducer uses to build them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from . import dihedral as dh
from .dihedral import Automorphism, DihedralElement
from .hurwitz import Entries, _entries, apply_automorphism_diag, braid_move


@dataclass(frozen=True)
class Braid:
    index: int
    sign: int = 1


@dataclass(frozen=True)
class Auto:
    phi: Automorphism


Step = Union[Braid, Auto]


@dataclass
class MoveTrace:
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __add__(self, other: MoveTrace) -> MoveTrace:
        return MoveTrace(self.steps + other.steps)

    @property
    def braid_steps(self) -> int:
        return sum(isinstance(s, Braid) for s in self.steps)

    def replay(self, v: Entries) -> tuple[DihedralElement, ...]:
        c = _entries(v)
        for step in self.steps:
            if isinstance(step, Braid):
                c = braid_move(c, step.index, step.sign)
            else:
                c = apply_automorphism_diag(c, step.phi)
        return c

    def to_json(self) -> dict:
        out = []
        for step in self.steps:
            if isinstance(step, Braid):
                out.append({"b": [step.index, step.sign]})
            else:
                out.append({"a": {"shift": step.phi.a, "unit": step.phi.b}})
        return {"steps": out}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict, n: int) -> MoveTrace:
        steps = []
        for item in data["steps"]:
            if "b" in item:
                i, s = item["b"]
                if s not in (1, -1):
                    raise ValueError(f"bad braid sign {s}")
                steps.append(Braid(int(i), int(s)))
            elif "a" in item:
                a = item["a"]
                steps.append(Auto(Automorphism.make(n, a["shift"], a["unit"])))
            else:
                raise ValueError(f"unknown trace step {item!r}")
        return cls(steps)


class Workspace:
    """A vector under construction together with the moves applied to it.

    Positions are 1-based, matching the braid generator indices.
    """

    def __init__(self, entries: Entries):
        self.c = list(_entries(entries))
        self.n = self.c[0].n
        self.trace = MoveTrace()

    def __len__(self):
        return len(self.c)

    def __getitem__(self, pos: int) -> DihedralElement:
        return self.c[pos - 1]

    def value(self, pos: int) -> int:
        return self.c[pos - 1].shift

    def entries(self) -> tuple[DihedralElement, ...]:
        return tuple(self.c)

    def braid(self, i: int, sign: int = 1):
        if not 1 <= i < len(self.c):
            raise IndexError(f"sigma_{i} does not act on vectors of length {len(self.c)}")
        a, b = self.c[i - 1], self.c[i]
        if sign > 0:
            self.c[i - 1], self.c[i] = dh.conjugate(b, a), a
        else:
            self.c[i - 1], self.c[i] = b, dh.conjugate(a, dh.inverse(b))
        self.trace.steps.append(Braid(i, 1 if sign > 0 else -1))

    def word(self, word):
        for i, sign in word:
            self.braid(i, sign)

    def auto(self, phi: Automorphism):
        if phi.is_identity:
            return
        self.c = [dh.apply_automorphism(phi, g) for g in self.c]
        self.trace.steps.append(Auto(phi))

    def shift(self, t: int):
        """Apply the automorphism y -> x^t y, x -> x."""
        self.auto(Automorphism.make(self.n, t, 1))
