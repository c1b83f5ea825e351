"""Finite quadratic sets: a carrier with a map r: X x X -> X x X.

Elements are held as indices ``0..n-1`` in declaration order, and labels are
kept for display. Writing ``r(x, y) = (L_x(y), R_y(x))``, the tables ``lt`` and
``rt`` store the left action ``lt[x][y] = L_x(y)`` and the right action
``rt[x][y] = R_y(x)``.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Any

from . import perm as P
from .errors import (
    DuplicateEntry,
    IncompleteTable,
    MalformedDocument,
    NotAPermutation,
    PrerequisiteFailed,
    UnknownLabel,
)
from .report import DEFAULT_WITNESS_CAP, Collector, ConditionReport

Element = int | str
Pair = tuple[int, int]

PREDICATES = (
    "bijective",
    "involutive",
    "square_free",
    "left_nondegenerate",
    "right_nondegenerate",
    "nondegenerate",
    "left_2cancellative",
    "right_2cancellative",
    "2cancellative",
)


@dataclass(frozen=True, eq=False)
class QuadraticSet:
    name: str
    labels: tuple[str, ...]
    table: tuple[Pair, ...]  # r(x, y) stored at x * n + y

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise DuplicateEntry(f"duplicate element label in {self.name!r}")
        if len(self.table) != n * n:
            raise IncompleteTable(f"table of {self.name!r} has {len(self.table)} entries, expected {n * n}")

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QuadraticSet) and self.labels == other.labels and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.labels, self.table))

    def __repr__(self) -> str:
        return f"QuadraticSet({self.name!r}, n={self.n})"

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def idx(self, e: Element) -> int:
        if isinstance(e, str):
            try:
                return self.index[e]
            except KeyError:
                raise UnknownLabel(f"{e!r} is not an element of {self.name!r}") from None
        if not 0 <= e < self.n:
            raise UnknownLabel(f"index {e} out of range for {self.name!r}")
        return e

    @cached_property
    def lt(self) -> list[list[int]]:
        n = self.n
        return [[self.table[x * n + y][0] for y in range(n)] for x in range(n)]

    @cached_property
    def rt(self) -> list[list[int]]:
        n = self.n
        return [[self.table[x * n + y][1] for y in range(n)] for x in range(n)]

    def r(self, x: int, y: int) -> Pair:
        return self.table[x * self.n + y]

    @cached_property
    def is_bijective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    @cached_property
    def inverse_table(self) -> tuple[Pair, ...]:
        if not self.is_bijective:
            raise PrerequisiteFailed("bijective", f"r on {self.name!r} is not a bijection")
        inv: list[Pair] = [(0, 0)] * len(self.table)
        n = self.n
        for k, (a, b) in enumerate(self.table):
            inv[a * n + b] = divmod(k, n)
        return tuple(inv)

    def r_inv(self, x: int, y: int) -> Pair:
        return self.inverse_table[x * self.n + y]

    def inverse(self, name: str | None = None) -> "QuadraticSet":
        """The quadratic set (X, r^-1)."""
        return QuadraticSet(name or f"{self.name}^-1", self.labels, self.inverse_table)

    def apply_r(self, x: Element, y: Element) -> tuple[str, str]:
        a, b = self.r(self.idx(x), self.idx(y))
        return self.labels[a], self.labels[b]

    def left_action(self, x: Element, y: Element) -> str:
        return self.labels[self.lt[self.idx(x)][self.idx(y)]]

    def right_action(self, x: Element, y: Element) -> str:
        """``x^y``: the element x acted on from the right by y."""
        return self.labels[self.rt[self.idx(x)][self.idx(y)]]

    def left_perm(self, x: int) -> tuple[int, ...]:
        return tuple(self.lt[x])

    def right_perm(self, y: int) -> tuple[int, ...]:
        """``R_y`` as a tuple: position x holds x^y."""
        return tuple(self.rt[x][y] for x in range(self.n))

    def pair_labels(self, p: Pair) -> tuple[str, str]:
        return self.labels[p[0]], self.labels[p[1]]

    def to_document(self) -> dict:
        rows = []
        for x, y in product(range(self.n), repeat=2):
            a, b = self.r(x, y)
            rows.append({"in": [self.labels[x], self.labels[y]], "out": [self.labels[a], self.labels[b]]})
        return {"name": self.name, "elements": list(self.labels), "r": rows}


# ---------------------------------------------------------------- constructors


def from_function(name: str, labels: Sequence[str], fn: Callable[[int, int], Pair]) -> QuadraticSet:
    n = len(labels)
    return QuadraticSet(name, tuple(labels), tuple(fn(x, y) for x in range(n) for y in range(n)))


def from_actions(name: str, labels: Sequence[str], left: Sequence[Sequence[int]], right: Sequence[Sequence[int]]) -> QuadraticSet:
    """Build r(x, y) = (left[x][y], right[x][y])."""
    return from_function(name, labels, lambda x, y: (left[x][y], right[x][y]))


def make_permutational(labels: Sequence[str], f: Sequence[int] | str, g: Sequence[int] | str, name: str | None = None) -> QuadraticSet:
    """The map r(x, y) = (g(y), f(x)). ``f`` and ``g`` are index tuples or cycle strings."""
    index = {lab: i for i, lab in enumerate(labels)}
    fp = P.parse_cycles(f, index) if isinstance(f, str) else tuple(f)
    gp = P.parse_cycles(g, index) if isinstance(g, str) else tuple(g)
    for p in (fp, gp):
        if len(p) != len(labels) or not P.is_permutation(p):
            raise NotAPermutation("permutational maps need two permutations of the carrier")
    if name is None:
        name = f"perm[f={P.format_cycles(fp, labels)},g={P.format_cycles(gp, labels)}]"
    return from_function(name, labels, lambda x, y: (gp[y], fp[x]))


def make_trivial(labels: Sequence[str], name: str = "trivial") -> QuadraticSet:
    """The flip r(x, y) = (y, x)."""
    return from_function(name, labels, lambda x, y: (y, x))


def make_identity(labels: Sequence[str], name: str = "identity") -> QuadraticSet:
    return from_function(name, labels, lambda x, y: (x, y))


def from_left_actions(name: str, labels: Sequence[str], left: Sequence[Sequence[int]]) -> QuadraticSet:
    """The unique involutive map whose left actions are the given permutations.

    Involutivity forces ``L_{L_x(y)}(R_y(x)) = x``, so
    ``R_y(x) = L_{L_x(y)}^{-1}(x)``.
    """
    n = len(labels)
    for row in left:
        if len(row) != n or not P.is_permutation(row):
            raise NotAPermutation("every left action must be a permutation of the carrier")
    inv = [P.inverse(tuple(row)) for row in left]

    def r(x: int, y: int) -> Pair:
        u = left[x][y]
        return u, inv[u][x]

    return from_function(name, labels, r)


# --------------------------------------------------------------------- loading


def _read(document: Any) -> Any:
    if isinstance(document, Path):
        document = document.read_text()
    if isinstance(document, (str, bytes)):
        try:
            return json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"not valid JSON: {exc}") from None
    return document


def _labels(doc: Mapping) -> tuple[str, ...]:
    elements = doc.get("elements")
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise MalformedDocument("'elements' must be a list of strings")
    if len(set(elements)) != len(elements):
        raise DuplicateEntry("duplicate element label")
    return tuple(elements)


def load_solution(document: Any) -> QuadraticSet:
    """Parse a solution document (a mapping, JSON text or a path).

    Accepted forms: an explicit ``r`` table of ``{"in": [a, b], "out": [c, d]}``
    rows covering every ordered pair exactly once, or one of the shorthands
    ``{"permutational": {"f": ..., "g": ...}}``, ``{"trivial": true}``,
    ``{"identity": true}`` and ``{"left_actions": {label: cycles}}``
    (involutive completion from the left actions).
    """
    doc = _read(document)
    if not isinstance(doc, Mapping):
        raise MalformedDocument("a solution document must be a JSON object")
    labels = _labels(doc)
    name = doc.get("name", "unnamed")
    if not isinstance(name, str):
        raise MalformedDocument("'name' must be a string")
    index = {lab: i for i, lab in enumerate(labels)}
    if "permutational" in doc:
        given = doc["permutational"]
        if not isinstance(given, Mapping) or "f" not in given or "g" not in given:
            raise MalformedDocument("'permutational' needs 'f' and 'g'")
        return make_permutational(labels, given["f"], given["g"], name=name)
    if doc.get("trivial") is True:
        return make_trivial(labels, name)
    if doc.get("identity") is True:
        return make_identity(labels, name)
    if "left_actions" in doc:
        given = doc["left_actions"]
        if not isinstance(given, Mapping):
            raise MalformedDocument("'left_actions' must map labels to cycle strings")
        left = []
        for lab in labels:
            if lab not in given:
                raise IncompleteTable(f"no left action given for {lab!r}")
            left.append(P.parse_cycles(given[lab], index))
        for lab in given:
            if lab not in index:
                raise UnknownLabel(f"unknown label {lab!r}")
        return from_left_actions(name, labels, left)
    rows = doc.get("r")
    if not isinstance(rows, list):
        raise MalformedDocument("document needs an 'r' table or a shorthand")
    n = len(labels)
    table: list[Pair | None] = [None] * (n * n)

    def look(lab: Any) -> int:
        if not isinstance(lab, str):
            raise MalformedDocument(f"labels must be strings, got {lab!r}")
        if lab not in index:
            raise UnknownLabel(f"unknown label {lab!r}")
        return index[lab]

    for row in rows:
        if not isinstance(row, Mapping) or "in" not in row or "out" not in row:
            raise MalformedDocument(f"bad table row {row!r}")
        pin, pout = row["in"], row["out"]
        if not (isinstance(pin, list) and isinstance(pout, list) and len(pin) == 2 and len(pout) == 2):
            raise MalformedDocument(f"bad table row {row!r}")
        x, y = look(pin[0]), look(pin[1])
        if table[x * n + y] is not None:
            raise DuplicateEntry(f"pair ({pin[0]},{pin[1]}) listed twice")
        table[x * n + y] = (look(pout[0]), look(pout[1]))
    missing = [(labels[k // n], labels[k % n]) for k, v in enumerate(table) if v is None]
    if missing:
        raise IncompleteTable(f"{len(missing)} pairs missing, first {missing[0]}")
    return QuadraticSet(name, labels, tuple(table))  # type: ignore[arg-type]


def load_solution_file(path: str | Path) -> QuadraticSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc}") from None
    return load_solution(text)


# ------------------------------------------------------------------ predicates


def pair_orbit(qs: QuadraticSet, x: Element, y: Element) -> list[tuple[str, str]]:
    """The forward cycle of (x, y) under r, starting with (x, y).

    Requires r bijective so the sequence returns to its start.
    """
    if not qs.is_bijective:
        raise PrerequisiteFailed("bijective")
    start = (qs.idx(x), qs.idx(y))
    return [qs.pair_labels(p) for p in _orbit(qs, start)]


def _orbit(qs: QuadraticSet, start: Pair) -> list[Pair]:
    out = [start]
    p = qs.r(*start)
    while p != start:
        out.append(p)
        p = qs.r(*p)
    return out


def pair_orbits(qs: QuadraticSet) -> list[list[tuple[str, str]]]:
    """All r-orbits on X x X, each starting at its smallest pair, in order of that pair."""
    seen: set[Pair] = set()
    out = []
    for p in product(range(qs.n), repeat=2):
        if p in seen:
            continue
        orb = _orbit(qs, p)
        seen.update(orb)
        out.append([qs.pair_labels(q) for q in orb])
    return out


def fixed_pairs(qs: QuadraticSet) -> list[tuple[str, str]]:
    return [qs.pair_labels((x, y)) for x, y in product(range(qs.n), repeat=2) if qs.r(x, y) == (x, y)]


def _r_text(k: int, x: str, y: str, a: str, b: str) -> str:
    power = "" if k == 1 else f"^{k}"
    return f"r{power}({x},{y})=({a},{b})"


def predicate(qs: QuadraticSet, which: str, cap: int = DEFAULT_WITNESS_CAP) -> ConditionReport:
    """Evaluate a structural property of r, with the first ``cap`` witnesses."""
    if which not in PREDICATES:
        raise ValueError(f"unknown predicate {which!r}; choose from {', '.join(PREDICATES)}")
    n, L, lt, rt = qs.n, qs.labels, qs.lt, qs.rt
    col = Collector(which, cap)
    if which == "bijective":
        first: dict[Pair, Pair] = {}
        for x, y in product(range(n), repeat=2):
            img = qs.r(x, y)
            if img in first:
                a, b = first[img]
                col.add((L[x], L[y]), (L[a], L[b]), qs.pair_labels(img), "two pairs share an image")
            else:
                first[img] = (x, y)
    elif which == "involutive":
        for x, y in product(range(n), repeat=2):
            back = qs.r(*qs.r(x, y))
            if back != (x, y):
                col.add((L[x], L[y]), qs.pair_labels(back), (L[x], L[y]))
    elif which == "square_free":
        for x in range(n):
            if qs.r(x, x) != (x, x):
                col.add((L[x],), qs.pair_labels(qs.r(x, x)), (L[x], L[x]))
    elif which in ("left_nondegenerate", "right_nondegenerate", "nondegenerate"):
        sides = {"left_nondegenerate": "L", "right_nondegenerate": "R", "nondegenerate": "LR"}[which]
        for x in range(n):
            for side in sides:
                seen: dict[int, int] = {}
                for y in range(n):
                    img = lt[x][y] if side == "L" else rt[y][x]
                    if img in seen:
                        col.add((L[x],), (L[seen[img]], L[y]), L[img], f"{side}_{L[x]} is not injective")
                        break
                    seen[img] = y
    else:
        if not qs.is_bijective:
            raise PrerequisiteFailed("bijective", "2-cancellativity is defined for bijective r")
        check_left = which in ("left_2cancellative", "2cancellative")
        check_right = which in ("right_2cancellative", "2cancellative")
        for x, y in product(range(n), repeat=2):
            orb = _orbit(qs, (x, y))
            for k, (a, b) in enumerate(orb[1:], start=1):
                text = _r_text(k, L[x], L[y], L[a], L[b])
                if check_left and a == x and b != y:
                    col.add((L[x], L[y]), (L[a], L[b]), (L[x], L[y]), text)
                if check_right and b == y and a != x:
                    col.add((L[x], L[y]), (L[a], L[b]), (L[x], L[y]), text)
    return col.report()


def all_predicates(qs: QuadraticSet, cap: int = DEFAULT_WITNESS_CAP) -> dict[str, ConditionReport | None]:
    """Every structural predicate. 2-cancellativity maps to None when r is not bijective."""
    out: dict[str, ConditionReport | None] = {}
    for name in PREDICATES:
        try:
            out[name] = predicate(qs, name, cap)
        except PrerequisiteFailed:
            out[name] = None
    return out


def t_map(qs: QuadraticSet) -> tuple[dict[str, str], ConditionReport]:
    """The map T(y) = R_y^{-1}(y) and a check of R_x^{-1} T = T L_x for every x.

    Needs r involutive, right non-degenerate and satisfying the r1 identity.
    """
    from .conditions import check_condition

    for name in ("involutive", "right_nondegenerate"):
        rep = predicate(qs, name, cap=1)
        if not rep.holds:
            raise PrerequisiteFailed(name, str(rep.witnesses[0]))
    rep = check_condition(qs, "r1", cap=1)
    if not rep.holds:
        raise PrerequisiteFailed("r1", str(rep.witnesses[0]))
    n, rt, lt = qs.n, qs.rt, qs.lt
    t = [0] * n
    for y in range(n):
        t[y] = next(x for x in range(n) if rt[x][y] == y)
    col = Collector("t_map_intertwines")
    for x, y in product(range(n), repeat=2):
        lhs = next(u for u in range(n) if rt[u][x] == t[y])  # R_x^{-1}(T(y))
        rhs = t[lt[x][y]]
        if lhs != rhs:
            col.add((qs.labels[x], qs.labels[y]), qs.labels[lhs], qs.labels[rhs])
    return {qs.labels[y]: qs.labels[t[y]] for y in range(n)}, col.report()


def relabel(qs: QuadraticSet, labels: Iterable[str], name: str | None = None) -> QuadraticSet:
    return QuadraticSet(name or qs.name, tuple(labels), qs.table)
