"""Rotor-router dynamics on a single chip.

A state is a chip position plus one rotor index per vertex. ``step`` advances
the rotor under the chip and moves the chip along the new rotor edge.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .graph import Digraph, rotate

DEFAULT_CAP = 10**7

Arborescence = dict[int, int]  # non-root vertex -> index of its chosen out-edge


class StateSpaceTooLarge(RuntimeError):
    pass


class NotAUnicycle(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ChipRotorState:
    chip: int
    rotors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rotors", tuple(self.rotors))

    def __str__(self):
        return f"chip@{self.chip} rotors={format_rotors(self.rotors)}"


@dataclass(frozen=True)
class OrbitSummary:
    length: int
    visits: tuple[int, ...]
    turns: tuple[int, ...]
    edge_flow: dict[tuple[int, int], int]

    def flow_by_endpoints(self, D: Digraph) -> dict[tuple[int, int], int]:
        """Traversal counts merged over parallel edges, keyed by ``(tail, head)``."""
        agg: dict[tuple[int, int], int] = {}
        for (u, k), c in self.edge_flow.items():
            key = (u, D.out[u][k])
            agg[key] = agg.get(key, 0) + c
        return agg


def format_rotors(rotors: Sequence[int]) -> str:
    return ",".join(map(str, rotors))


def parse_rotors(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"bad rotor list {text!r}; expected i0,i1,...") from None


def parse_state(text: str) -> ChipRotorState:
    """Inverse of ``str(state)``: ``chip@v rotors=i0,i1,...``."""
    try:
        chip_part, rot_part = text.split()
        if not chip_part.startswith("chip@") or not rot_part.startswith("rotors="):
            raise ValueError
        return ChipRotorState(int(chip_part[5:]), parse_rotors(rot_part[7:]))
    except ValueError:
        raise ValueError(f"bad state {text!r}; expected 'chip@v rotors=i0,...'") from None


def check_state(D: Digraph, s: ChipRotorState) -> None:
    if not 0 <= s.chip < D.n:
        raise ValueError(f"chip {s.chip} is not a vertex")
    if len(s.rotors) != D.n:
        raise ValueError(f"expected {D.n} rotor indices, got {len(s.rotors)}")
    for v, k in enumerate(s.rotors):
        if not 0 <= k < D.outdeg(v):
            raise ValueError(f"rotor index {k} out of range at vertex {v}")


def step(D: Digraph, s: ChipRotorState) -> ChipRotorState:
    w = s.chip
    k = rotate(D, w, s.rotors[w])
    rotors = s.rotors[:w] + (k,) + s.rotors[w + 1:]
    return ChipRotorState(D.out[w][k], rotors)


def rotor_heads(D: Digraph, rotors: Sequence[int]) -> list[int]:
    return [D.out[v][k] for v, k in enumerate(rotors)]


def is_unicycle(D: Digraph, s: ChipRotorState) -> bool:
    """True iff the rotor edges form one cycle and the chip sits on it.

    Every vertex has exactly one rotor edge, so the rotor graph is functional:
    each weak component holds exactly one cycle. Hence the condition is that
    every vertex drains into the cycle through the chip.
    """
    succ = rotor_heads(D, s.rotors)
    n = D.n
    # chip on a cycle: following rotors from the chip returns to it
    on_cycle = {s.chip}
    v = succ[s.chip]
    while v != s.chip:
        if v in on_cycle:
            return False
        on_cycle.add(v)
        v = succ[v]
    for start in range(n):
        v = start
        for _ in range(n):
            if v in on_cycle:
                break
            v = succ[v]
        if v not in on_cycle:
            return False
    return True


def classify_by_simulation(D: Digraph, s: ChipRotorState) -> tuple[str, int]:
    """Run until some state repeats; recurrent iff the repeated state is ``s``.

    Returns ``("recurrent" | "transient", steps)`` where ``steps`` is the number
    of rotor-router steps taken when the first repetition appeared.
    """
    seen = {s}
    cur = s
    steps = 0
    while True:
        cur = step(D, cur)
        steps += 1
        if cur in seen:
            return ("recurrent" if cur == s else "transient"), steps
        seen.add(cur)


def run_period(D: Digraph, s: ChipRotorState) -> OrbitSummary:
    """Simulate one full period from a unicycle and tally what happened."""
    if not is_unicycle(D, s):
        raise NotAUnicycle(f"{s} is not a unicycle, so it is transient")
    n = D.n
    visits = [0] * n
    flow: dict[tuple[int, int], int] = {(u, k): 0 for u, k, _ in D.edges()}
    cur = s
    length = 0
    while True:
        nxt = step(D, cur)
        visits[cur.chip] += 1
        flow[cur.chip, nxt.rotors[cur.chip]] += 1
        length += 1
        cur = nxt
        if cur == s:
            break
    # back at the start, every rotor has made whole turns
    turns = []
    for v in range(n):
        q, r = divmod(visits[v], D.outdeg(v))
        if r:
            raise AssertionError(f"rotor at {v} stopped mid-turn after a full period")
        turns.append(q)
    for (u, k), c in flow.items():
        if c != turns[u]:
            raise AssertionError(f"edge ({u},{k}) traversed {c} times, rotor turned {turns[u]}")
    return OrbitSummary(length, tuple(visits), tuple(turns), flow)


def state_space_size(D: Digraph) -> int:
    return D.n * math.prod(D.outdegrees)


def all_states(D: Digraph, cap: int = DEFAULT_CAP) -> Iterator[ChipRotorState]:
    """Every chip-and-rotor state, lexicographic in ``(chip, rotors)``."""
    size = state_space_size(D)
    if size > cap:
        raise StateSpaceTooLarge(f"{size} states exceeds cap {cap}")
    ranges = [range(d) for d in D.outdegrees]
    for chip in range(D.n):
        for rotors in itertools.product(*ranges):
            yield ChipRotorState(chip, rotors)


def enumerate_unicycles(D: Digraph, cap: int = DEFAULT_CAP) -> Iterator[ChipRotorState]:
    for s in all_states(D, cap):
        if is_unicycle(D, s):
            yield s


def orbit_partition(D: Digraph, cap: int = DEFAULT_CAP) -> list[list[ChipRotorState]]:
    """Split the unicycles into rotor-router orbits.

    Each orbit starts at its lexicographically smallest state and follows
    ``step`` from there; orbits are sorted by that representative.
    """
    orbits = []
    seen: set[ChipRotorState] = set()
    for s in enumerate_unicycles(D, cap):
        if s in seen:
            continue
        orbit = [s]
        cur = step(D, s)
        while cur != s:
            orbit.append(cur)
            cur = step(D, cur)
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


# --- arborescences ---------------------------------------------------------

def enumerate_arborescences(D: Digraph, w: int) -> Iterator[Arborescence]:
    """Backtrack over one out-edge per non-root vertex, pruning cycles.

    Parallel edges count separately. With one out-edge everywhere but ``w``
    and no cycle, every path ends at ``w``.
    """
    others = [v for v in range(D.n) if v != w]
    choice: Arborescence = {}

    def closes_cycle(v: int, head: int) -> bool:
        x = head
        while x != w and x in choice:
            x = D.out[x][choice[x]]
        return x == v

    def extend(i: int) -> Iterator[Arborescence]:
        if i == len(others):
            yield dict(choice)
            return
        v = others[i]
        for k, h in enumerate(D.out[v]):
            if closes_cycle(v, h):
                continue
            choice[v] = k
            yield from extend(i + 1)
            del choice[v]

    yield from extend(0)


def is_arborescence(D: Digraph, T: Mapping[int, int], w: int) -> bool:
    if set(T) != set(range(D.n)) - {w}:
        return False
    for v, k in T.items():
        if not 0 <= k < D.outdeg(v):
            return False
    for v in T:
        x, hops = v, 0
        while x != w:
            x = D.out[x][T[x]]
            hops += 1
            if hops > D.n:
                return False
    return True


def arborescence_to_unicycle(D: Digraph, T: Mapping[int, int], w: int, k: int) -> ChipRotorState:
    """Close the arborescence with out-edge ``k`` of its root and put the chip there."""
    if not is_arborescence(D, T, w):
        raise ValueError(f"not a spanning in-arborescence rooted at {w}: {dict(T)}")
    if not 0 <= k < D.outdeg(w):
        raise IndexError(f"edge index {k} out of range at vertex {w}")
    rotors = tuple(k if v == w else T[v] for v in range(D.n))
    return ChipRotorState(w, rotors)


def unicycle_to_arborescence(D: Digraph, s: ChipRotorState, w: int | None = None) -> Arborescence:
    """Drop the rotor under the chip; what remains is an arborescence rooted at the chip."""
    if w is not None and s.chip != w:
        raise ValueError(f"chip is at {s.chip}, not at {w}")
    if not is_unicycle(D, s):
        raise NotAUnicycle(f"{s} is not a unicycle")
    return {v: k for v, k in enumerate(s.rotors) if v != s.chip}


# --- DOT export ------------------------------------------------------------

def to_dot(D: Digraph, s: ChipRotorState, name: str = "rotor") -> str:
    """Gray edges, solid black rotor edges, double circle on the chip."""
    lines = [f"digraph {name} {{"]
    for v in range(D.n):
        shape = "doublecircle" if v == s.chip else "circle"
        lines.append(f"  {v} [shape={shape}];")
    for u, k, h in D.edges():
        if s.rotors[u] == k:
            lines.append(f'  {u} -> {h} [color=black, style=solid, label="{k}"];')
        else:
            lines.append(f'  {u} -> {h} [color=gray, style=dashed, label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
