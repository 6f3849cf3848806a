"""Multidigraphs with a cyclic rotor order on the out-edges of every vertex.

Vertices are ``0..n-1``. ``out[v]`` lists the heads of the out-edges of ``v``
in rotor order; parallel edges appear as repeated heads and are told apart by
their position in that list, so an edge is identified by ``(tail, index)``.
"""

from __future__ import annotations

import random
import re
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Matrix = list[list[int]]


class GraphError(ValueError):
    """Raised for malformed graph files and digraphs that fail validation."""


@dataclass(frozen=True)
class Digraph:
    n: int
    out: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "out", tuple(tuple(int(h) for h in hs) for hs in self.out))
        validate(self)

    @classmethod
    def from_lists(cls, out: Sequence[Iterable[int]]) -> "Digraph":
        return cls(len(out), tuple(tuple(hs) for hs in out))

    def outdeg(self, v: int) -> int:
        return len(self.out[v])

    def indeg(self, v: int) -> int:
        return self._indeg[v]

    def mult(self, u: int, v: int) -> int:
        """Number of parallel edges from ``u`` to ``v``."""
        return self._mult.get((u, v), 0)

    def out_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(self.out[v])

    def in_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(u for u in range(self.n) if v in self.out[u])

    def edges(self) -> list[tuple[int, int, int]]:
        """All edges as ``(tail, index, head)`` in tail-then-rotor order."""
        return [(u, k, h) for u in range(self.n) for k, h in enumerate(self.out[u])]

    @property
    def m(self) -> int:
        return sum(len(hs) for hs in self.out)

    @property
    def outdegrees(self) -> tuple[int, ...]:
        return tuple(len(hs) for hs in self.out)

    def is_eulerian(self) -> bool:
        return all(self.outdeg(v) == self.indeg(v) for v in range(self.n))

    @cached_property
    def _mult(self) -> dict[tuple[int, int], int]:
        return dict(Counter((u, h) for u in range(self.n) for h in self.out[u]))

    @cached_property
    def _indeg(self) -> tuple[int, ...]:
        c = Counter(h for hs in self.out for h in hs)
        return tuple(c[v] for v in range(self.n))


def _reachable(n: int, adj: Sequence[Iterable[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for h in adj[u]:
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return seen


def is_strongly_connected(n: int, out: Sequence[Sequence[int]]) -> bool:
    # forward and backward sweeps from vertex 0 suffice
    rev: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        for h in out[u]:
            rev[h].append(u)
    return len(_reachable(n, out, 0)) == n and len(_reachable(n, rev, 0)) == n


def validate(D: Digraph) -> None:
    if D.n < 2:
        raise GraphError(f"need at least 2 vertices, got n={D.n}")
    if len(D.out) != D.n:
        raise GraphError(f"expected {D.n} out-edge lists, got {len(D.out)}")
    for v, hs in enumerate(D.out):
        if not hs:
            raise GraphError(f"vertex {v} has no out-edge")
        for h in hs:
            if not 0 <= h < D.n:
                raise GraphError(f"vertex {v}: head {h} out of range 0..{D.n - 1}")
            if h == v:
                raise GraphError(f"self-loop at vertex {v}")
    if not is_strongly_connected(D.n, D.out):
        raise GraphError("digraph is not strongly connected")


def rotate(D: Digraph, v: int, k: int) -> int:
    """Index of the rotor edge following edge ``k`` at ``v``."""
    d = D.outdeg(v)
    if not 0 <= k < d:
        raise IndexError(f"edge index {k} out of range at vertex {v} (out-degree {d})")
    return (k + 1) % d


def laplacian(D: Digraph) -> Matrix:
    """``L[i][i] = -d+(i)``, ``L[i][j] = d(j, i)``; every column sums to zero."""
    n = D.n
    L = [[0] * n for _ in range(n)]
    for j in range(n):
        L[j][j] = -D.outdeg(j)
        for h in D.out[j]:
            L[h][j] += 1
    return L


# --- text format -----------------------------------------------------------

_HEADER = re.compile(r"n\s+(\S+)\s*$")
_LINE = re.compile(r"(\S+?)\s*:(.*)$")


def parse_digraph(text: str) -> Digraph:
    """Parse the line-oriented graph format.

    Blank lines and lines starting with ``#`` are ignored. The first remaining
    line is ``n <count>``; each vertex then gets exactly one ``v: h1 h2 ...``
    line. Errors name the offending line and column.
    """
    n: int | None = None
    out: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        col0 = len(raw) - len(raw.lstrip()) + 1
        if n is None:
            mt = _HEADER.match(line)
            if not mt:
                raise GraphError(f"line {lineno}, column {col0}: expected 'n <count>'")
            try:
                n = int(mt.group(1))
            except ValueError:
                raise GraphError(
                    f"line {lineno}, column {col0 + line.index(mt.group(1))}: "
                    f"bad vertex count {mt.group(1)!r}"
                ) from None
            if n < 2:
                raise GraphError(f"line {lineno}: need at least 2 vertices, got n={n}")
            continue
        mt = _LINE.match(line)
        if not mt:
            raise GraphError(f"line {lineno}, column {col0}: expected 'v: h1 h2 ...'")
        try:
            v = int(mt.group(1))
        except ValueError:
            raise GraphError(f"line {lineno}, column {col0}: bad vertex {mt.group(1)!r}") from None
        if not 0 <= v < n:
            raise GraphError(f"line {lineno}, column {col0}: vertex {v} out of range 0..{n - 1}")
        if v in out:
            raise GraphError(f"line {lineno}: duplicate line for vertex {v}")
        heads = []
        rest_start = raw.index(":") + 1
        for tok in re.finditer(r"\S+", mt.group(2)):
            col = rest_start + tok.start() + 1
            try:
                h = int(tok.group())
            except ValueError:
                raise GraphError(f"line {lineno}, column {col}: bad head {tok.group()!r}") from None
            if not 0 <= h < n:
                raise GraphError(f"line {lineno}, column {col}: vertex {h} out of range 0..{n - 1}")
            heads.append(h)
        out[v] = tuple(heads)
    if n is None:
        raise GraphError("empty graph file: missing 'n <count>' line")
    missing = [v for v in range(n) if v not in out]
    if missing:
        raise GraphError(f"missing out-edge line for vertex {missing[0]}")
    return Digraph(n, tuple(out[v] for v in range(n)))


def serialize_digraph(D: Digraph, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"n {D.n}")
    lines += [f"{v}: " + " ".join(map(str, D.out[v])) for v in range(D.n)]
    return "\n".join(lines) + "\n"


def read_digraph(path: str) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_digraph(fh.read())


# --- generators ------------------------------------------------------------

def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise GraphError(f"need at least 2 vertices, got n={n}")
    return Digraph(n, tuple((((i + 1) % n),) for i in range(n)))


def bidirected(edges: Iterable[tuple[int, int]], n: int | None = None) -> Digraph:
    """Replace each undirected edge by two antiparallel edges.

    Rotor order at each vertex follows the order edges are listed.
    """
    edges = list(edges)
    if n is None:
        n = 1 + max((max(e) for e in edges), default=0)
    if n < 2:
        raise GraphError(f"need at least 2 vertices, got n={n}")
    out: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop {u}-{v} in undirected edge list")
        out[u].append(v)
        out[v].append(u)
    return Digraph.from_lists(out)


def random_digraph(n: int, extra_edges: int, seed: int) -> Digraph:
    """Random Hamiltonian cycle plus ``extra_edges`` uniform non-loop edges.

    Strongly connected by construction and deterministic in ``seed``.
    """
    if n < 2:
        raise GraphError(f"need at least 2 vertices, got n={n}")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    out: list[list[int]] = [[] for _ in range(n)]
    for i, u in enumerate(order):
        out[u].append(order[(i + 1) % n])
    for _ in range(extra_edges):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        out[u].append(v if v < u else v + 1)
    return Digraph.from_lists(out)


def generate(kind: str, *args, **kwargs) -> Digraph:
    """Dispatch to ``directed_cycle``, ``bidirected`` or ``random_digraph``."""
    makers = {"directed_cycle": directed_cycle, "bidirected": bidirected, "random": random_digraph}
    try:
        return makers[kind](*args, **kwargs)
    except KeyError:
        raise GraphError(f"unknown generator {kind!r}") from None


# --- named fixtures --------------------------------------------------------

G1 = Digraph(2, ((1,), (0,)))
G2 = directed_cycle(3)
G3 = Digraph(3, ((1,), (0, 2), (0,)))
G4 = bidirected([(0, 1), (1, 2), (2, 0)])

FIXTURES: dict[str, Digraph] = {"G1": G1, "G2": G2, "G3": G3, "G4": G4}
