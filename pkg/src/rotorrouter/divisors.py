"""Divisors, chip-firing and the Picard group of degree-zero divisors.

Equivalence and class labels both run through the Smith decomposition of the
class lattice (see ``algebra.class_lattice``).
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from . import algebra
from .graph import Digraph, laplacian

DEFAULT_BOX_CAP = 10**5

# Which nonzero firing vectors 0 <= f <= per are tried in the reduced test.
#   "root-fixed": f(w) == 0                    (default)
#   "literal":    every f, including f == per  (unsatisfiable when x >= 0 off w)
#   "proper":     every f except f == per
FIRING_CONVENTIONS = ("root-fixed", "literal", "proper")


def degree(x: Sequence[int]) -> int:
    return sum(x)


def parse_divisor(text: str, n: int | None = None) -> tuple[int, ...]:
    try:
        x = tuple(int(t) for t in text.split())
    except ValueError:
        raise ValueError(f"bad divisor {text!r}; expected space-separated integers") from None
    if n is not None and len(x) != n:
        raise ValueError(f"divisor has {len(x)} entries, graph has {n} vertices")
    return x


def format_divisor(x: Sequence[int]) -> str:
    return " ".join(map(str, x))


def _check_len(D: Digraph, *vs: Sequence[int]) -> None:
    for v in vs:
        if len(v) != D.n:
            raise ValueError(f"expected length {D.n}, got {len(v)}")


def apply_firing(D: Digraph, x: Sequence[int], f: Sequence[int]) -> tuple[int, ...]:
    """``x + L f``: each vertex ``v`` fires ``f[v]`` times."""
    _check_len(D, x, f)
    Lf = algebra.matvec(laplacian(D), f)
    return tuple(a + b for a, b in zip(x, Lf))


def equivalent(
    D: Digraph, x: Sequence[int], y: Sequence[int]
) -> tuple[bool, tuple[int, ...] | None]:
    """Decide whether ``x - y`` lies in the image of the Laplacian.

    Returns ``(True, z)`` with ``x == y + L z`` when it does, else
    ``(False, None)``.
    """
    _check_len(D, x, y)
    if degree(x) != degree(y):
        raise ValueError(f"degree mismatch: {degree(x)} vs {degree(y)}")
    dec = algebra.picard_summary(D).smith
    b = [a - c for a, c in zip(x, y)][:-1]
    c = algebra.matvec(dec.U, b)
    coords = []
    for ci, si in zip(c, dec.diagonal):
        if ci % si:
            return False, None
        coords.append(ci // si)
    coords.append(0)  # kernel direction is free
    z = tuple(algebra.matvec(dec.V, coords))
    if apply_firing(D, y, z) != tuple(x):
        raise algebra.ConsistencyError(f"witness {z} does not map {y} to {x}")
    return True, z


def canonical_form(D: Digraph, x: Sequence[int]) -> tuple[int, ...]:
    """Class label of a degree-zero divisor: two divisors share it iff equivalent."""
    _check_len(D, x)
    if degree(x) != 0:
        raise ValueError(f"divisor has degree {degree(x)}, expected 0")
    dec = algebra.picard_summary(D).smith
    c = algebra.matvec(dec.U, list(x[:-1]))
    return tuple(ci % si for ci, si in zip(c, dec.diagonal))


def firing_vectors(per: Sequence[int], w: int, convention: str = "root-fixed"):
    """Nonzero ``f`` with ``0 <= f <= per`` admitted by ``convention``."""
    if convention not in FIRING_CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; pick one of {FIRING_CONVENTIONS}")
    ranges = [range(p + 1) for p in per]
    if convention == "root-fixed":
        ranges[w] = range(1)
    top = tuple(per)
    for f in itertools.product(*ranges):
        if not any(f):
            continue
        if convention == "proper" and f == top:
            continue
        yield f


def is_w_reduced(
    D: Digraph,
    x: Sequence[int],
    w: int,
    convention: str = "root-fixed",
    per: Sequence[int] | None = None,
) -> bool:
    """Nonnegative off ``w``, and every admissible firing sends some ``v != w`` negative."""
    _check_len(D, x)
    if any(x[v] < 0 for v in range(D.n) if v != w):
        return False
    if per is None:
        per = algebra.period_vector(D)
    L = laplacian(D)
    others = [v for v in range(D.n) if v != w]
    for f in firing_vectors(per, w, convention):
        if all(x[v] + sum(L[v][j] * f[j] for j in range(D.n)) >= 0 for v in others):
            return False
    return True


def enumerate_w_reduced(
    D: Digraph,
    w: int,
    convention: str = "root-fixed",
    cap: int = DEFAULT_BOX_CAP,
) -> list[tuple[int, ...]]:
    """All ``w``-reduced degree-zero divisors, sorted.

    Firing ``v`` alone costs it ``d+(v)`` chips, so a reduced divisor has
    ``x(v) < d+(v)`` off ``w``; the search box is therefore finite.
    """
    others = [v for v in range(D.n) if v != w]
    size = math.prod(D.outdeg(v) for v in others)
    if size > cap:
        raise ValueError(f"candidate box of {size} divisors exceeds cap {cap}")
    per = algebra.period_vector(D)
    found = []
    for vals in itertools.product(*(range(D.outdeg(v)) for v in others)):
        x = [0] * D.n
        for v, a in zip(others, vals):
            x[v] = a
        x[w] = -sum(vals)
        if is_w_reduced(D, x, w, convention, per):
            found.append(tuple(x))
    return sorted(found)


def group_by_class(D: Digraph, divisors: Sequence[Sequence[int]]) -> list[list[tuple[int, ...]]]:
    """Partition degree-zero divisors into linear-equivalence classes."""
    classes: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for x in divisors:
        classes.setdefault(canonical_form(D, x), []).append(tuple(x))
    return [sorted(c) for _, c in sorted(classes.items())]
