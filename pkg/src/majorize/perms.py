"""Permutations of {1..n}, permutation groups, and their action on vectors.

Permutations are stored in one-line image form with 1-based values:
``images[j-1] == sigma(j)``.  Cycle notation is only an I/O format.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .core import RVector
from .errors import InputError

DEFAULT_GROUP_CAP = 50_000
MAX_SYMMETRIC_DEGREE = 8


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1 or sorted(self.images) != list(range(1, n + 1)):
            raise InputError(f"not a permutation of 1..{n}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, j: int, k: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[j - 1], images[k - 1] = k, j
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "Permutation":
        return parse_cycles(text, n)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def is_identity(self) -> bool:
        return all(v == j for j, v in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest element."""
        seen, out = set(), []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc, j = [], start
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "e"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)

    def matrix(self) -> list[list[int]]:
        """P_sigma with entry (i, j) = 1 iff i = sigma(j)."""
        n = self.n
        m = [[0] * n for _ in range(n)]
        for j in range(1, n + 1):
            m[self(j) - 1][j - 1] = 1
        return m

    def to_json(self) -> dict:
        return {"n": self.n, "cycles": self.cycle_string()}

    def __str__(self):
        return self.cycle_string()


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """Return sigma∘tau, i.e. j ↦ sigma(tau(j))."""
    if sigma.n != tau.n:
        raise InputError(f"degree mismatch: {sigma.n} vs {tau.n}")
    return Permutation(tuple(sigma(t) for t in tau.images))


def inverse(sigma: Permutation) -> Permutation:
    inv = [0] * sigma.n
    for j, s in enumerate(sigma.images, start=1):
        inv[s - 1] = j
    return Permutation(tuple(inv))


def act_on_vector(sigma: Permutation, x: Sequence) -> RVector:
    """(sigma x)_j = x_{sigma^{-1}(j)}, i.e. coordinate i moves to slot sigma(i)."""
    if sigma.n != len(x):
        raise InputError(f"degree mismatch: permutation on {sigma.n} points, vector of length {len(x)}")
    out = [None] * sigma.n
    for i, s in enumerate(sigma.images):
        out[s - 1] = x[i]
    return RVector(out)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse ``"(1,2,3)(4,5)"`` (disjoint cycles) or ``"e"`` into a Permutation of degree n."""
    s = text.strip()
    if n < 1:
        raise InputError("degree must be positive")
    if s in ("e", "", "()"):
        return Permutation.identity(n)
    if _CYCLE_RE.sub("", s).strip():
        raise InputError(f"malformed cycle notation {text!r}")
    images = list(range(1, n + 1))
    used: set[int] = set()
    for body in _CYCLE_RE.findall(s):
        parts = [p for p in re.split(r"[,\s]+", body.strip()) if p]
        try:
            cyc = [int(p) for p in parts]
        except ValueError as exc:
            raise InputError(f"malformed cycle {body!r}") from exc
        for j in cyc:
            if not 1 <= j <= n:
                raise InputError(f"cycle entry {j} out of range 1..{n}")
            if j in used:
                raise InputError(f"cycles in {text!r} are not disjoint")
            used.add(j)
        for pos, j in enumerate(cyc):
            images[j - 1] = cyc[(pos + 1) % len(cyc)]
    return Permutation(tuple(images))


@dataclass(frozen=True)
class PermGroup:
    n: int
    elements: tuple[Permutation, ...]  # sorted by image tuple; identity first

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, sigma) -> bool:
        return sigma in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def is_full_symmetric(self) -> bool:
        return self.order == math.factorial(self.n)

    def to_json(self) -> dict:
        return {"n": self.n, "order": self.order,
                "elements": [g.cycle_string() for g in self.elements]}


def generate_group(n: int, generators: Iterable[Permutation],
                   cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    """Breadth-first closure of ``generators`` under composition."""
    if cap < 1:
        raise InputError("group cap must be >= 1")
    gens = list(generators)
    for g in gens:
        if not isinstance(g, Permutation) or g.n != n:
            raise InputError(f"generator {g} is not a permutation of degree {n}")
    e = Permutation.identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for h in gens:
            gh = compose(g, h)
            if gh not in seen:
                seen.add(gh)
                if len(seen) > cap:
                    raise InputError(f"group order exceeds cap {cap}")
                queue.append(gh)
    # finite group: closure under products of generators already contains inverses
    return PermGroup(n, tuple(sorted(seen)))


def full_symmetric_group(n: int, max_degree: int = MAX_SYMMETRIC_DEGREE) -> PermGroup:
    if not 1 <= n <= max_degree:
        raise InputError(f"S_n only supported for 1 <= n <= {max_degree}, got {n}")
    elements = tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))
    return PermGroup(n, elements)


def trivial_group(n: int) -> PermGroup:
    return PermGroup(n, (Permutation.identity(n),))

