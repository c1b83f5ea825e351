"""The action graph Γ(X, r), orbits, DOT export and isomorphism search."""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from itertools import permutations, product

from . import perm as P
from .errors import SearchBudgetExceeded
from .qset import QuadraticSet

DEFAULT_SEARCH_BUDGET = 2_000_000


@dataclass
class LabeledDigraph:
    """Γ(X, r): an arrow x -> y labelled z whenever ^z x = y.

    ``edges`` holds the arrows with x != y, keyed by (x, y) with the acting
    labels in declaration order. ``loops`` keeps the arrows with x = y.
    """

    vertices: tuple[str, ...]
    edges: dict[tuple[str, str], list[str]] = field(default_factory=dict)
    loops: dict[str, list[str]] = field(default_factory=dict)
    lri: bool = False

    def edge_triples(self) -> set[tuple[str, str, str]]:
        return {(s, t, z) for (s, t), zs in self.edges.items() for z in zs}

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"source": s, "target": t, "labels": zs} for (s, t), zs in self.edges.items()],
            "lri": self.lri,
        }


def gamma_graph(qs: QuadraticSet) -> LabeledDigraph:
    from .conditions import check_condition

    L, lt, n = qs.labels, qs.lt, qs.n
    g = LabeledDigraph(L, lri=check_condition(qs, "lri", cap=1).holds)
    for x, y in product(range(n), repeat=2):
        acting = [L[z] for z in range(n) if lt[z][x] == y]
        if not acting:
            continue
        if x == y:
            g.loops[L[x]] = acting
        else:
            g.edges[(L[x], L[y])] = acting
    return g


def orbit_partition(qs: QuadraticSet) -> list[list[str]]:
    """Orbits of the group generated by the left actions, as blocks of labels.

    Blocks are listed by their first element in declaration order. When some
    L_z is not a bijection this gives the weakly connected components of Γ.
    """
    n = qs.n
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for z, x in product(range(n), repeat=2):
        a, b = find(x), find(qs.lt[z][x])
        if a != b:
            parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[str]] = {}
    for x in range(n):
        blocks.setdefault(find(x), []).append(qs.labels[x])
    return [blocks[k] for k in sorted(blocks)]


_PLAIN_ID = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _dot_id(label: str) -> str:
    if _PLAIN_ID.match(label):
        return label
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: LabeledDigraph, self_loops: bool = False, labels: bool = True) -> str:
    """Deterministic DOT text: vertices in declaration order, one arrow per
    (source, target) carrying the comma-joined acting elements.
    """
    lines = ["digraph G {"]
    lines += [f"  {_dot_id(v)};" for v in g.vertices]
    order = {v: i for i, v in enumerate(g.vertices)}
    arrows = dict(g.edges)
    if self_loops:
        arrows.update({(v, v): zs for v, zs in g.loops.items()})
    for (s, t) in sorted(arrows, key=lambda e: (order[e[0]], order[e[1]])):
        attr = f' [label="{",".join(arrows[(s, t)])}"]' if labels else ""
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- isomorphism


def _invariants(qs: QuadraticSet) -> list[tuple]:
    n, lt, rt = qs.n, qs.lt, qs.rt
    block_size = {}
    for block in orbit_partition(qs):
        for lab in block:
            block_size[qs.index[lab]] = len(block)
    out = []
    for v in range(n):
        out.append(
            (
                qs.r(v, v) == (v, v),
                lt[v][v] == v,
                rt[v][v] == v,
                sum(1 for y in range(n) if qs.r(v, y) == (v, y)),
                sum(1 for y in range(n) if qs.r(y, v) == (y, v)),
                P.cycle_type(tuple(lt[v])) if len(set(lt[v])) == n else tuple(sorted(lt[v].count(u) for u in range(n))),
                tuple(sorted(sum(1 for y in range(n) if rt[y][v] == u) for u in range(n))),
                len({lt[z][v] for z in range(n)} - {v}),  # out-degree in Γ
                len({y for y in range(n) for z in range(n) if lt[z][y] == v} - {v}),  # in-degree in Γ
                block_size[v],
            )
        )
    return out


class _Search:
    def __init__(self, q1: QuadraticSet, q2: QuadraticSet, budget: int):
        self.q1, self.q2 = q1, q2
        self.n = q1.n
        self.inv1, self.inv2 = _invariants(q1), _invariants(q2)
        self.phi = [-1] * self.n
        self.psi = [-1] * self.n
        self.trail: list[int] = []
        self.assigned: list[int] = []
        self.nodes = 0
        self.budget = budget

    def compatible(self) -> bool:
        return sorted(self.inv1) == sorted(self.inv2)

    def _assign(self, a: int, b: int, queue: list[int]) -> bool:
        if self.phi[a] == b:
            return True
        if self.phi[a] != -1 or self.psi[b] != -1 or self.inv1[a] != self.inv2[b]:
            return False
        self.phi[a], self.psi[b] = b, a
        self.trail.append(a)
        self.assigned.append(a)
        queue.append(a)
        return True

    def try_assign(self, a: int, b: int) -> bool:
        queue: list[int] = []
        if not self._assign(a, b, queue):
            return False
        q1, q2, phi = self.q1, self.q2, self.phi
        while queue:
            u = queue.pop()
            for c in list(self.assigned):
                for s, t in ((u, c), (c, u)):
                    p, q = q1.r(s, t)
                    p2, q2_ = q2.r(phi[s], phi[t])
                    if not self._assign(p, p2, queue) or not self._assign(q, q2_, queue):
                        return False
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            a = self.trail.pop()
            self.psi[self.phi[a]] = -1
            self.phi[a] = -1
            self.assigned.pop()

    def solutions(self):
        """Yield every isomorphism extending the current partial map."""
        free = [a for a in range(self.n) if self.phi[a] == -1]
        if not free:
            yield tuple(self.phi)
            return
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"isomorphism search exceeded {self.budget} nodes")
        a = min(free, key=lambda v: (sum(1 for w in range(self.n) if self.psi[w] == -1 and self.inv2[w] == self.inv1[v]), v))
        for b in range(self.n):
            if self.psi[b] != -1 or self.inv2[b] != self.inv1[a]:
                continue
            mark = len(self.trail)
            if self.try_assign(a, b):
                yield from self.solutions()
            self.undo(mark)


def _to_labels(q1: QuadraticSet, q2: QuadraticSet, phi) -> dict[str, str]:
    return {q1.labels[i]: q2.labels[j] for i, j in enumerate(phi)}


def _start(q1: QuadraticSet, q2: QuadraticSet, fixed: Mapping[int, int], budget: int) -> _Search | None:
    if q1.n != q2.n:
        return None
    s = _Search(q1, q2, budget)
    if not s.compatible():
        return None
    for a, b in fixed.items():
        if not s.try_assign(a, b):
            return None
    return s


def find_isomorphism(
    q1: QuadraticSet, q2: QuadraticSet, budget: int = DEFAULT_SEARCH_BUDGET
) -> dict[str, str] | None:
    """A bijection φ with (φ×φ)∘r1 = r2∘(φ×φ), or None when there is none."""
    s = _start(q1, q2, {}, budget)
    if s is None:
        return None
    for phi in s.solutions():
        return _to_labels(q1, q2, phi)
    return None


def is_isomorphism(q1: QuadraticSet, q2: QuadraticSet, phi: Mapping[str, str]) -> bool:
    if sorted(phi) != sorted(q1.labels) or sorted(phi.values()) != sorted(q2.labels):
        return False
    m = [q2.index[phi[lab]] for lab in q1.labels]
    return all(q2.r(m[x], m[y]) == (m[a], m[b]) for x, y in product(range(q1.n), repeat=2) for a, b in [q1.r(x, y)])


def automorphisms(
    qs: QuadraticSet, full_threshold: int = 8, budget: int = DEFAULT_SEARCH_BUDGET
) -> list[dict[str, str]]:
    """Aut(X, r): every automorphism when |X| <= ``full_threshold``, otherwise a
    generating set built along a point-stabiliser chain.
    """
    if qs.n <= full_threshold:
        s = _start(qs, qs, {}, budget)
        assert s is not None
        return [_to_labels(qs, qs, phi) for phi in s.solutions()]
    gens: list[tuple[int, ...]] = []
    prefix: dict[int, int] = {}
    for b in range(qs.n):
        level: list[tuple[int, ...]] = []
        orbit = {b}
        for c in range(qs.n):
            if c in orbit:
                continue
            s = _start(qs, qs, {**prefix, b: c}, budget)
            found = next(s.solutions(), None) if s is not None else None
            if found is None:
                continue
            level.append(found)
            frontier = list(orbit)
            while frontier:
                u = frontier.pop()
                for g in level:
                    if g[u] not in orbit:
                        orbit.add(g[u])
                        frontier.append(g[u])
        gens += level
        prefix[b] = b
    return [_to_labels(qs, qs, g) for g in gens]


def brute_force_isomorphism(q1: QuadraticSet, q2: QuadraticSet) -> dict[str, str] | None:
    """Try every bijection; only for tiny carriers."""
    if q1.n != q2.n:
        return None
    for image in permutations(range(q2.n)):
        phi = {q1.labels[i]: q2.labels[j] for i, j in enumerate(image)}
        if is_isomorphism(q1, q2, phi):
            return phi
    return None
