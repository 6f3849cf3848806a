"""Executable cross-checks between rotor-router simulation and exact algebra.

Each check computes its combinatorial side (simulation, enumeration) and its
algebraic side (determinants, Smith form) separately and compares them.
"""

from __future__ import annotations

import logging
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import algebra, divisors, rotor
from .graph import Digraph, random_digraph, serialize_digraph

log = logging.getLogger(__name__)


@dataclass
class Report:
    check: str
    graph_id: str
    passed: bool
    details: str = ""
    counterexamples: list[str] = field(default_factory=list)
    instance: str | None = None  # serialized graph, attached on failure

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.check} {self.graph_id} {self.details}".rstrip()

    def as_dict(self) -> dict:
        d = {
            "check": self.check,
            "graph": self.graph_id,
            "passed": self.passed,
            "details": self.details,
        }
        if self.counterexamples:
            d["counterexamples"] = self.counterexamples
        if self.instance is not None:
            d["instance"] = self.instance
        return d


def _report(name: str, D: Digraph, graph_id: str, bad: list[str], details: str) -> Report:
    rep = Report(name, graph_id, not bad, details, bad[:20])
    if bad:
        rep.instance = serialize_digraph(D)
    return rep


def check_recurrence_theorem(D: Digraph, graph_id: str = "-", cap: int = rotor.DEFAULT_CAP) -> Report:
    bad = []
    total = 0
    for s in rotor.all_states(D, cap):
        total += 1
        verdict, _ = rotor.classify_by_simulation(D, s)
        if (verdict == "recurrent") != rotor.is_unicycle(D, s):
            bad.append(f"{s}: simulated {verdict}, unicycle={rotor.is_unicycle(D, s)}")
    return _report("recurrence", D, graph_id, bad, f"states={total}")


def check_period_theorem(D: Digraph, graph_id: str = "-", cap: int = rotor.DEFAULT_CAP) -> Report:
    per = algebra.period_vector(D)
    expected_len = sum(p * D.outdeg(v) for v, p in enumerate(per))
    bad = []
    for s in rotor.enumerate_unicycles(D, cap):
        summ = rotor.run_period(D, s)
        if summ.length != expected_len:
            bad.append(f"{s}: length {summ.length} != {expected_len}")
        for v in range(D.n):
            if summ.visits[v] != per[v] * D.outdeg(v):
                bad.append(f"{s}: vertex {v} visited {summ.visits[v]} times")
            if summ.turns[v] != per[v]:
                bad.append(f"{s}: rotor {v} made {summ.turns[v]} turns")
        for (u, k), c in summ.edge_flow.items():
            if c != per[u]:
                bad.append(f"{s}: edge ({u},{k}) carried {c}")
    return _report("period", D, graph_id, bad, f"length={expected_len}")


def check_orbit_count(D: Digraph, graph_id: str = "-", cap: int = rotor.DEFAULT_CAP) -> Report:
    orbits = rotor.orbit_partition(D, cap)
    counts = algebra.arborescence_counts(D)
    per = algebra.period_vector(D)
    bad = []
    sizes = {len(o) for o in orbits}
    if len(sizes) > 1:
        bad.append(f"orbit sizes differ: {sorted(sizes)}")
    for w in range(D.n):
        q, r = divmod(counts[w], per[w])
        if r or q != len(orbits):
            bad.append(f"w={w}: T/per = {counts[w]}/{per[w]} vs {len(orbits)} orbits")
    g = math.gcd(*counts)
    if g != len(orbits):
        bad.append(f"gcd of arborescence counts {g} vs {len(orbits)} orbits")
    return _report("orbit-count", D, graph_id, bad, f"orbits={len(orbits)}")


def check_unicycle_census(D: Digraph, graph_id: str = "-", cap: int = rotor.DEFAULT_CAP) -> Report:
    unicycles = list(rotor.enumerate_unicycles(D, cap))
    by_chip = Counter(s.chip for s in unicycles)
    counts = algebra.arborescence_counts(D)
    per = algebra.period_vector(D)
    bad = []
    for w in range(D.n):
        want = counts[w] * D.outdeg(w)
        if by_chip[w] != want:
            bad.append(f"w={w}: {by_chip[w]} unicycles with chip there, expected {want}")
        # arborescence + root edge construction hits each such unicycle once
        built = [
            rotor.arborescence_to_unicycle(D, T, w, k)
            for T in rotor.enumerate_arborescences(D, w)
            for k in range(D.outdeg(w))
        ]
        if sorted(built) != sorted(s for s in unicycles if s.chip == w):
            bad.append(f"w={w}: arborescence construction does not match the unicycles")
    for orbit in rotor.orbit_partition(D, cap):
        at = Counter(s.chip for s in orbit)
        for w in range(D.n):
            if at[w] != per[w] * D.outdeg(w):
                bad.append(f"orbit {orbit[0]}: {at[w]} states with chip at {w}")
    return _report("unicycle-census", D, graph_id, bad, f"unicycles={len(unicycles)}")


def check_picard_match(D: Digraph, graph_id: str = "-", cap: int = rotor.DEFAULT_CAP) -> Report:
    summary = algebra.picard_summary(D)
    n_orbits = len(rotor.orbit_partition(D, cap))
    bad = [] if summary.order == n_orbits else [f"|Pic0| = {summary.order}, orbits = {n_orbits}"]
    factors = ",".join(map(str, summary.invariant_factors)) or "-"
    return _report("picard", D, graph_id, bad, f"order={summary.order} factors={factors}")


def check_reduced_census(
    D: Digraph, w: int, graph_id: str = "-", cap: int = divisors.DEFAULT_BOX_CAP
) -> Report:
    reduced = divisors.enumerate_w_reduced(D, w, cap=cap)
    classes = divisors.group_by_class(D, reduced)
    per = algebra.period_vector(D)
    T = algebra.arborescence_count(D, w)
    order = algebra.picard_summary(D).order
    bad = []
    if len(reduced) != T:
        bad.append(f"{len(reduced)} reduced divisors, T(D,{w}) = {T}")
    if len(classes) != order:
        bad.append(f"{len(classes)} classes, |Pic0| = {order}")
    for c in classes:
        if len(c) != per[w]:
            bad.append(f"class of {c[0]} has {len(c)} reduced elements, per({w}) = {per[w]}")
        for x in c[1:]:
            if not divisors.equivalent(D, x, c[0])[0]:
                bad.append(f"{x} grouped with {c[0]} but not equivalent")
    return _report(
        f"reduced-census[w={w}]", D, graph_id, bad, f"reduced={len(reduced)} classes={len(classes)}"
    )


def check_chip_firing_correspondence(
    D: Digraph, graph_id: str = "-", cap: int = rotor.DEFAULT_CAP
) -> Report:
    per = algebra.period_vector(D)
    want = {(u, h): per[u] * D.mult(u, h) for u in range(D.n) for h in set(D.out[u])}
    bad = []
    for orbit in rotor.orbit_partition(D, cap):
        got = rotor.run_period(D, orbit[0]).flow_by_endpoints(D)
        if got != want:
            bad.append(f"orbit {orbit[0]}: flow {sorted(got.items())}")
    for x in ([0] * D.n, list(range(D.n)), [(-1) ** v * (v + 2) for v in range(D.n)]):
        if divisors.apply_firing(D, x, per) != tuple(x):
            bad.append(f"firing per from {x} is not the identity")
    flows = " ".join(f"{u}>{h}:{c}" for (u, h), c in sorted(want.items()))
    return _report("chip-firing", D, graph_id, bad, flows)


def check_matrix_tree(D: Digraph, graph_id: str = "-") -> Report:
    bad = []
    for w in range(D.n):
        det = algebra.arborescence_count(D, w)
        brute = sum(1 for _ in rotor.enumerate_arborescences(D, w))
        if det != brute:
            bad.append(f"w={w}: determinant {det}, enumeration {brute}")
    return _report("matrix-tree", D, graph_id, bad, "")


CHECKS: dict[str, Callable[..., Report]] = {
    "recurrence": check_recurrence_theorem,
    "period": check_period_theorem,
    "orbit-count": check_orbit_count,
    "unicycle-census": check_unicycle_census,
    "picard": check_picard_match,
    "chip-firing": check_chip_firing_correspondence,
}


def run_all(
    D: Digraph,
    graph_id: str = "-",
    cap: int = rotor.DEFAULT_CAP,
    box_cap: int = divisors.DEFAULT_BOX_CAP,
) -> list[Report]:
    """Every check on one graph. Exceptions other than cap overruns become failures."""
    reports = []

    def guarded(name, fn, *args, **kw):
        try:
            reports.append(fn(*args, **kw))
        except rotor.StateSpaceTooLarge:
            raise
        except Exception as exc:  # a crash inside a check is a failed check
            reports.append(
                Report(name, graph_id, False, f"{type(exc).__name__}: {exc}",
                       instance=serialize_digraph(D))
            )

    for name, fn in CHECKS.items():
        guarded(name, fn, D, graph_id, cap=cap)
    guarded("matrix-tree", check_matrix_tree, D, graph_id)
    for w in range(D.n):
        box = math.prod(D.outdeg(v) for v in range(D.n) if v != w)
        if box > box_cap:
            log.info("%s: skipping reduced census at w=%d, box %d > %d", graph_id, w, box, box_cap)
            continue
        guarded(f"reduced-census[w={w}]", check_reduced_census, D, w, graph_id, cap=box_cap)
    return reports


def random_corpus(
    count: int, seed: int, max_n: int = 5, max_extra: int = 4
) -> Iterator[tuple[str, Digraph]]:
    """Seeded random strongly connected digraphs, ``2 <= n <= max_n``.

    Graph ids spell out the generator arguments so any instance can be rebuilt.
    """
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, max_n)
        extra = rng.randint(0, max_extra)
        s = rng.getrandbits(64)
        yield f"random({n},{extra},{s})", random_digraph(n, extra, s)
