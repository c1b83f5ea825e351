"""Regular extensions Z = X ⊔ Y of two quadratic sets.

A ground action is a pair of maps Y x X -> X, (α, x) -> ^α x and
Y x X -> Y, (α, x) -> α^x whose product (α, x) -> (^α x, α^x) is a
bijection onto X x Y. The extension takes r_Z = r_X on X x X, r_Y on
Y x Y, the ground map on Y x X and its inverse on X x Y. Inside Z, the
elements of X come first, followed by those of Y.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from pathlib import Path
from typing import Any

from . import conditions as C
from . import perm as P
from .errors import (
    BudgetExceeded,
    CarrierOverlap,
    DuplicateEntry,
    IncompleteTable,
    MalformedDocument,
    NotRegular,
    TheoremViolation,
    UnknownLabel,
)
from .monoid import (
    DoubleProduct,
    LetterActions,
    TruncatedMonoid,
    WordSide,
    _graded,
    _lara,
    cancellation_test,
    m3_extension_check,
    verify_pair_axioms,
)
from .qset import QuadraticSet, load_solution, predicate
from .report import DEFAULT_WITNESS_CAP, Clause, Collector, ConditionReport, SuiteReport

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Ground:
    """``left[α][x]`` is ^α x (an index into X), ``right[α][x]`` is α^x (an index into Y)."""

    left: Table
    right: Table


def is_regular(x_part: QuadraticSet, y_part: QuadraticSet, ground: Ground) -> bool:
    images = {(ground.left[a][x], ground.right[a][x]) for a in range(y_part.n) for x in range(x_part.n)}
    return len(images) == x_part.n * y_part.n


@dataclass(frozen=True, eq=False)
class ExtensionSet:
    x_part: QuadraticSet
    y_part: QuadraticSet
    ground: Ground
    z: QuadraticSet

    @property
    def m(self) -> int:
        return self.x_part.n

    @property
    def xs(self) -> range:
        return range(self.m)

    @property
    def ys(self) -> range:
        return range(self.m, self.m + self.y_part.n)

    @property
    def name(self) -> str:
        return self.z.name

    @cached_property
    def accompanying(self) -> LetterActions:
        """X acting on Y and Y acting back, read from r_Z on X x Y.

        ``left[x][α]`` is x ▷ α (index into Y), ``right[x][α]`` is x ◁ α (index into X).
        """
        m, k = self.m, self.y_part.n
        left = tuple(tuple(self.z.r(x, m + a)[0] - m for a in range(k)) for x in range(m))
        right = tuple(tuple(self.z.r(x, m + a)[1] for a in range(k)) for x in range(m))
        return LetterActions(left, right)

    @cached_property
    def ground_actions(self) -> LetterActions:
        return LetterActions(self.ground.left, self.ground.right)

    def left_on_x(self, a: int) -> tuple[int, ...]:
        """L_α restricted to X, for α a local index of Y."""
        return self.ground.left[a]

    def left_on_y(self, x: int) -> tuple[int, ...]:
        """L_x restricted to Y (the accompanying action x ▷ -)."""
        return self.accompanying.left[x]

    def __repr__(self) -> str:
        return f"ExtensionSet({self.name!r}, |X|={self.m}, |Y|={self.y_part.n})"


def build_extension(x_part: QuadraticSet, y_part: QuadraticSet, ground: Ground, name: str | None = None) -> ExtensionSet:
    overlap = set(x_part.labels) & set(y_part.labels)
    if overlap:
        raise CarrierOverlap(f"labels shared by both parts: {sorted(overlap)}")
    m, k = x_part.n, y_part.n
    if len(ground.left) != k or len(ground.right) != k or any(len(r) != m for r in ground.left + ground.right):
        raise IncompleteTable("ground tables must be indexed by Y x X")
    if not is_regular(x_part, y_part, ground):
        raise NotRegular("the ground map Y x X -> X x Y is not a bijection")
    inv: dict[tuple[int, int], tuple[int, int]] = {}
    for a in range(k):
        for x in range(m):
            inv[(ground.left[a][x], ground.right[a][x])] = (a, x)
    n = m + k
    table = []
    for i in range(n):
        for j in range(n):
            if i < m and j < m:
                table.append(x_part.r(i, j))
            elif i >= m and j >= m:
                a, b = y_part.r(i - m, j - m)
                table.append((a + m, b + m))
            elif i >= m:
                table.append((ground.left[i - m][j], ground.right[i - m][j] + m))
            else:
                a, x = inv[(i, j - m)]
                table.append((a + m, x))
    zname = name or f"{x_part.name}+{y_part.name}"
    z = QuadraticSet(zname, x_part.labels + y_part.labels, tuple(table))
    return ExtensionSet(x_part, y_part, ground, z)


# ---------------------------------------------------------------- documents


def _resolve_solution(given: Any, base: Path | None) -> QuadraticSet:
    if isinstance(given, Mapping):
        return load_solution(given)
    if isinstance(given, str):
        from . import catalog

        if given in catalog.SOLUTION_FILES:
            return catalog.load_entry_solution(given)
        path = Path(given) if base is None or Path(given).is_absolute() else base / given
        if path.exists():
            return load_solution(path.read_text())
        raise MalformedDocument(f"cannot resolve solution reference {given!r}")
    raise MalformedDocument("part solutions must be inline documents, paths or catalog keys")


def ground_from_permutations(
    x_part: QuadraticSet,
    y_part: QuadraticSet,
    left_alpha: Mapping[str, Any],
    right_x: Mapping[str, Any] | None = None,
    left_x: Mapping[str, Any] | None = None,
) -> Ground:
    """Ground actions from per-element permutations.

    ``left_alpha[α]`` is L_α on X. The right action comes either from
    ``right_x[x]`` (α -> α^x on Y) or, with left-right invertibility, from
    ``left_x[x]`` (L_x on Y) as α^x = L_x^{-1}(α). Values are cycle strings or
    index tuples.
    """

    def perm_of(value: Any, part: QuadraticSet) -> tuple[int, ...]:
        if isinstance(value, str):
            return P.parse_cycles(value, part.index)
        value = tuple(value)
        if not P.is_permutation(value) or len(value) != part.n:
            from .errors import NotAPermutation

            raise NotAPermutation(f"{value!r} is not a permutation of {part.name}")
        return value

    def collect(given: Mapping[str, Any], keys: QuadraticSet, on: QuadraticSet, what: str):
        for lab in given:
            if lab not in keys.index:
                raise UnknownLabel(f"{what}: unknown label {lab!r}")
        missing = [lab for lab in keys.labels if lab not in given]
        if missing:
            raise IncompleteTable(f"{what}: no permutation for {missing[0]!r}")
        return [perm_of(given[lab], on) for lab in keys.labels]

    left = collect(left_alpha, y_part, x_part, "L_alpha")
    if right_x is not None:
        rx = collect(right_x, x_part, y_part, "R_x")
    elif left_x is not None:
        rx = [P.inverse(p) for p in collect(left_x, x_part, y_part, "L_x")]
    else:
        raise MalformedDocument("give either R_x or L_x with lri completion")
    right = tuple(tuple(rx[x][a] for x in range(x_part.n)) for a in range(y_part.n))
    return Ground(tuple(left), right)


def load_ground(document: Any, base: Path | None = None) -> ExtensionSet:
    """Parse a ground-action document into an extension.

    The document names the parts (``x_solution``, ``y_solution``) and gives the
    ground either as rows ``{"alpha", "x", "left", "right"}`` or as
    permutations ``L_alpha`` with ``R_x``, or with ``L_x`` and ``"lri": true``.
    """
    if isinstance(document, Path):
        base = document.parent if base is None else base
        document = document.read_text()
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"not valid JSON: {exc}") from None
    if not isinstance(document, Mapping):
        raise MalformedDocument("a ground document must be a JSON object")
    for key in ("x_solution", "y_solution"):
        if key not in document:
            raise MalformedDocument(f"missing {key!r}")
    xq = _resolve_solution(document["x_solution"], base)
    yq = _resolve_solution(document["y_solution"], base)
    name = document.get("name")
    if "ground" in document:
        rows = document["ground"]
        if not isinstance(rows, list):
            raise MalformedDocument("'ground' must be a list of rows")
        left: list[list[int | None]] = [[None] * xq.n for _ in range(yq.n)]
        right: list[list[int | None]] = [[None] * xq.n for _ in range(yq.n)]

        def look(part: QuadraticSet, lab: Any) -> int:
            if not isinstance(lab, str):
                raise MalformedDocument(f"labels must be strings, got {lab!r}")
            if lab not in part.index:
                raise UnknownLabel(f"{lab!r} is not in {part.name}")
            return part.index[lab]

        for row in rows:
            if not isinstance(row, Mapping) or not {"alpha", "x", "left", "right"} <= set(row):
                raise MalformedDocument(f"bad ground row {row!r}")
            a, x = look(yq, row["alpha"]), look(xq, row["x"])
            if left[a][x] is not None:
                raise DuplicateEntry(f"ground pair ({row['alpha']},{row['x']}) listed twice")
            left[a][x] = look(xq, row["left"])
            right[a][x] = look(yq, row["right"])
        if any(v is None for row in left for v in row):
            raise IncompleteTable("ground table does not cover Y x X")
        ground = Ground(tuple(map(tuple, left)), tuple(map(tuple, right)))  # type: ignore[arg-type]
    elif "L_alpha" in document:
        lri = bool(document.get("lri"))
        if lri and "L_x" not in document:
            raise MalformedDocument("lri completion needs 'L_x'")
        ground = ground_from_permutations(
            xq,
            yq,
            document["L_alpha"],
            right_x=None if lri else document.get("R_x"),
            left_x=document.get("L_x") if lri else None,
        )
    else:
        raise MalformedDocument("document needs 'ground' rows or 'L_alpha' permutations")
    return build_extension(xq, yq, ground, name)


def to_ground_document(ext: ExtensionSet) -> dict:
    X, Y = ext.x_part, ext.y_part
    rows = []
    for a in range(Y.n):
        for x in range(X.n):
            rows.append(
                {
                    "alpha": Y.labels[a],
                    "x": X.labels[x],
                    "left": X.labels[ext.ground.left[a][x]],
                    "right": Y.labels[ext.ground.right[a][x]],
                }
            )
    return {"name": ext.name, "x_solution": X.to_document(), "y_solution": Y.to_document(), "ground": rows}


# ---------------------------------------------------------- mixed conditions

MIXED_CONDITIONS = (
    "ml1", "mr1", "ml2", "mr2", "ml1a", "mr1a", "ml2w", "mr2w",
    "stu", "csla", "csra", "mixed_weak_cyclic", "fixed_pair_l", "fixed_pair_r",
)

# conditions that are a braid-type identity restricted to a product of parts
_RESTRICTED = {
    "ml1": ("l1", "YYX"),
    "mr1": ("r1", "YXX"),
    "ml2": ("l2", "YXX"),
    "mr2": ("r2", "YYX"),
    "ml1a": ("l1", "YXX"),
    "mr1a": ("r1", "YYX"),
    "csla": ("csl", "XXY"),
    "csra": ("csr", "YYX"),
}


def _domain(ext: ExtensionSet, pattern: str) -> Iterator[tuple[int, ...]]:
    sets = [ext.xs if c == "X" else ext.ys for c in pattern]
    return product(*sets)


def restricted(ext: ExtensionSet, cond: str, pattern: str, cap: int = DEFAULT_WITNESS_CAP) -> ConditionReport:
    """A braid-type identity of r_Z checked only on tuples from ``pattern`` (e.g. ``"YXX"``)."""
    k, fn = C.ATOMS[cond]
    q = ext.z
    col = Collector(f"{cond}({','.join(pattern)})", cap)
    for t in _domain(ext, pattern):
        lhs, rhs = fn(q, *t)
        if lhs != rhs:
            col.add(tuple(q.labels[i] for i in t), C._lab(q, lhs), C._lab(q, rhs))
    return col.report()


def _orbit_contains(q: QuadraticSet, start: tuple[int, int], target: tuple[int, int]) -> bool:
    p = start
    while True:
        if p == target:
            return True
        p = q.r(*p)
        if p == start:
            return False


def check_mixed(ext: ExtensionSet, cond: str, cap: int = DEFAULT_WITNESS_CAP) -> ConditionReport:
    if cond not in MIXED_CONDITIONS:
        raise ValueError(f"unknown mixed condition {cond!r}; choose from {', '.join(MIXED_CONDITIONS)}")
    if cond in _RESTRICTED:
        base, pattern = _RESTRICTED[cond]
        rep = restricted(ext, base, pattern, cap)
        rep.condition = cond
        return rep
    q = ext.z
    lt, rt, L = q.lt, q.rt, q.labels
    col = Collector(cond, cap)
    if cond == "ml2w":
        for a, x, y in _domain(ext, "YXX"):
            u, v = q.r(x, y)
            target = (lt[a][u], lt[rt[a][u]][v])  # ^α(r(xy))
            start = (lt[a][x], lt[rt[a][x]][y])  # ^α(xy)
            if not _orbit_contains(q, start, target):
                col.add((L[a], L[x], L[y]), C._lab(q, target), C._lab(q, start), "not in the r_X-orbit")
    elif cond == "mr2w":
        for a, b, x in _domain(ext, "YYX"):
            u, v = q.r(a, b)
            target = (rt[u][lt[v][x]], rt[v][x])  # (r(αβ))^x
            start = (rt[a][lt[b][x]], rt[b][x])  # (αβ)^x
            if not _orbit_contains(q, start, target):
                col.add((L[a], L[b], L[x]), C._lab(q, target), C._lab(q, start), "not in the r_Y-orbit")
    elif cond == "stu":
        for a, y, x in _domain(ext, "YXX"):
            lhs, rhs = lt[rt[a][y]][x], lt[a][x]
            if lhs != rhs:
                col.add((L[a], L[y], L[x]), L[lhs], L[rhs], "^{α^y} x = ^α x")
        for a, b, x in _domain(ext, "YYX"):
            lhs, rhs = rt[a][lt[b][x]], rt[a][x]
            if lhs != rhs:
                col.add((L[a], L[b], L[x]), L[lhs], L[rhs], "α^{^β x} = α^x")
    elif cond == "mixed_weak_cyclic":
        for a, x in _domain(ext, "YX"):
            lhs, rhs = lt[rt[a][x]][x], lt[a][x]
            if lhs != rhs:
                col.add((L[a], L[x]), L[lhs], L[rhs], "^{α^x} x = ^α x")
            lhs, rhs = rt[a][lt[a][x]], rt[a][x]
            if lhs != rhs:
                col.add((L[a], L[x]), L[lhs], L[rhs], "α^{^α x} = α^x")
    elif cond == "fixed_pair_l":
        for a, x, y in _domain(ext, "YXX"):
            if q.r(x, y) != (x, y):
                continue
            img = (lt[a][x], lt[rt[a][x]][y])
            if q.r(*img) != img:
                col.add((L[a], L[x], L[y]), C._lab(q, q.r(*img)), C._lab(q, img))
    elif cond == "fixed_pair_r":
        for a, b, x in _domain(ext, "YYX"):
            if q.r(a, b) != (a, b):
                continue
            img = (rt[a][lt[b][x]], rt[b][x])
            if q.r(*img) != img:
                col.add((L[a], L[b], L[x]), C._lab(q, q.r(*img)), C._lab(q, img))
    return col.report()


def mixed_profile(ext: ExtensionSet) -> dict[str, bool]:
    return {c: check_mixed(ext, c, cap=1).holds for c in MIXED_CONDITIONS}


# -------------------------------------------------------------------- suites


class _ExtSuite:
    def __init__(self, name: str, ext: ExtensionSet):
        self.ext = ext
        self.rep = SuiteReport(name, ext.name, True)
        self._cache: dict[str, bool] = {}

    def __call__(self, cond: str) -> bool:
        if cond not in self._cache:
            if cond in MIXED_CONDITIONS:
                value = check_mixed(self.ext, cond, cap=1).holds
            elif cond in C.CONDITIONS:
                value = C.check_condition(self.ext.z, cond, cap=1).holds
            else:
                value = predicate(self.ext.z, cond, cap=1).holds
            self._cache[cond] = value
            self.rep.verdicts[cond] = value
        return self._cache[cond]

    def part(self, which: str, cond: str) -> bool:
        q = self.ext.x_part if which == "x" else self.ext.y_part
        key = f"{which}.{cond}"
        if key not in self._cache:
            value = (C.check_condition(q, cond, cap=1) if cond in C.CONDITIONS else predicate(q, cond, cap=1)).holds
            self._cache[key] = value
            self.rep.verdicts[key] = value
        return self._cache[key]

    def hyp(self, name: str, value: bool) -> None:
        self.rep.hypotheses[name] = value
        self.rep.hypotheses_met = self.rep.hypotheses_met and value

    def note(self, name: str, value: bool) -> None:
        self.rep.verdicts[name] = value

    def clause(self, name: str, verdict: bool, detail: str = "") -> None:
        self.rep.clauses.append(Clause(name, bool(verdict), detail))

    def iff(self, name: str, a: bool, b: bool) -> None:
        self.clause(name, a == b, f"{a} <=> {b}")

    def implies(self, name: str, a: bool, b: bool) -> None:
        self.clause(name, (not a) or b, f"{a} => {b}")


def _ybe_on(ext: ExtensionSet, pattern: str) -> bool:
    return restricted(ext, "ybe", pattern, cap=1).holds


def _suite_bz(s: _ExtSuite, N: int) -> None:
    s.hyp("x braided", s.part("x", "ybe"))
    s.hyp("y braided", s.part("y", "ybe"))
    s.iff("ybe <=> ml1 & mr1 & ml2 & mr2", s("ybe"), s("ml1") and s("mr1") and s("ml2") and s("mr2"))
    a = {p: _ybe_on(s.ext, p) for p in ("YXX", "XYX", "XXY")}
    b = {p: _ybe_on(s.ext, p) for p in ("YYX", "YXY", "XYY")}
    s.clause("braid relation agrees on YXX, XYX, XXY", len(set(a.values())) == 1, str(a))
    s.iff("braid relation on YXX <=> mr1 & ml2", a["YXX"], s("mr1") and s("ml2"))
    s.clause("braid relation agrees on YYX, YXY, XYY", len(set(b.values())) == 1, str(b))
    s.iff("braid relation on YYX <=> ml1 & mr2", b["YYX"], s("ml1") and s("mr2"))
    s.implies("ml2 => ml1a", s("ml2"), s("ml1a"))
    s.implies("mr2 => mr1a", s("mr2"), s("mr1a"))


def _suite_parts_lemma(s: _ExtSuite, N: int) -> None:
    for cond in ("2cancellative", "involutive", "square_free"):
        both = s.part("x", cond) and s.part("y", cond)
        s.iff(f"Z {cond} <=> both parts {cond}", s(cond), both)


def _cancellation3(ext: ExtensionSet, N: int) -> bool:
    return cancellation_test(TruncatedMonoid(ext.z, max(3, N)), 3, cap=1).holds


def _suite_cancellative(s: _ExtSuite, N: int) -> None:
    s.hyp("x 2cancellative", s.part("x", "2cancellative"))
    s.hyp("y 2cancellative", s.part("y", "2cancellative"))
    s.hyp("U length3_cancellation", _cancellation3(s.ext, N))
    s.iff("ybe <=> ml1 & mr1 & ml1a & mr1a", s("ybe"), s("ml1") and s("mr1") and s("ml1a") and s("mr1a"))
    s.iff("mr1 & ml1a <=> ml2", s("mr1") and s("ml1a"), s("ml2"))
    s.iff("ml1 & mr1a <=> mr2", s("ml1") and s("mr1a"), s("mr2"))


def part_monoids(ext: ExtensionSet, N: int) -> tuple[TruncatedMonoid, TruncatedMonoid]:
    return TruncatedMonoid(ext.x_part, N), TruncatedMonoid(ext.y_part, N)


def verify_ground_matched_pair(ext: ExtensionSet, N: int = 3, cap: int = DEFAULT_WITNESS_CAP) -> dict[str, ConditionReport]:
    """Matched-pair axioms for T = S(Y) acting on S = S(X) through the ground
    actions, plus the identities with the accompanying actions, up to degree N.
    """
    Sm, Tm = part_monoids(ext, N)
    S, T = WordSide(Sm), WordSide(Tm)
    g, acc = ext.ground_actions, ext.accompanying
    out = verify_pair_axioms(T, S, g.act_left, g.act_right, N, cap)
    acc_wd = verify_pair_axioms(S, T, acc.act_left, acc.act_right, N, cap, checks=("well_defined",))
    out["accompanying_well_defined"] = acc_wd["well_defined"]
    out["accompanying_well_defined"].condition = "accompanying_well_defined"
    out["strong"] = _lara(S, T, g.act_left, g.act_right, acc.act_left, acc.act_right, N, cap)
    return out


def _suite_matched_pair_st(s: _ExtSuite, N: int) -> None:
    s.hyp("x braided", s.part("x", "ybe"))
    s.hyp("y braided", s.part("y", "ybe"))
    reps = verify_ground_matched_pair(s.ext, max(3, N), cap=1)
    monoid_ok = all(r.holds for r in reps.values())
    for k, r in reps.items():
        s.note(f"monoid.{k}", r.holds)
    conds = s("ml1") and s("mr1") and s("ml2w") and s("mr2w")
    s.iff("strong graded matched pair <=> ml1 & mr1 & ml2w & mr2w", monoid_ok, conds)


def _suite_factorization(s: _ExtSuite, N: int) -> None:
    s.hyp("ybe", s("ybe"))
    rep = factorization_check(s.ext, N)
    for k, r in rep.items():
        s.clause(k, r.holds, "" if r.holds else str(r.witnesses[0]) if r.witnesses else r.note)


def factorization_check(ext: ExtensionSet, N: int = 3, cap: int = DEFAULT_WITNESS_CAP) -> dict[str, ConditionReport]:
    """S(Z) as S(X) ⋈ S(Y): every class of Z-words up to degree N has a member
    with all X letters before all Y letters, those members have S-equal
    X parts and T-equal Y parts, and the class counts multiply out. Also runs
    the matched-pair axioms for U acting on S and T acting on U.
    """
    Um = TruncatedMonoid(ext.z, N)
    Sm, Tm = part_monoids(ext, N)
    m = ext.m
    col = Collector("normal_form", cap)
    for d in range(N + 1):
        for cl in Um.classes(d):
            shaped = []
            for w in cl:
                k = sum(1 for c in w if c < m)
                if all(c < m for c in w[:k]) and all(c >= m for c in w[k:]):
                    shaped.append((w[:k], tuple(c - m for c in w[k:])))
            if not shaped:
                col.add((Um.show(cl[0]),), "no member of shape X*Y*", "", "missing normal form")
                continue
            s0, t0 = shaped[0]
            for s1, t1 in shaped[1:]:
                if not (Sm.equal(s0, s1) and Tm.equal(t0, t1)):
                    col.add((Um.show(cl[0]),), (Sm.show(s0), Tm.show(t0)), (Sm.show(s1), Tm.show(t1)), "two normal forms")
    out = {"normal_form": col.report()}

    col = Collector("class_counts", cap)
    for d in range(N + 1):
        expect = sum(len(Sm.classes(i)) * len(Tm.classes(d - i)) for i in range(d + 1))
        got = len(Um.classes(d))
        if got != expect:
            col.add((d,), got, expect)
    out["class_counts"] = col.report()

    # U acting on S (left) and S acting on U (right); T acting on U (left) and U acting on T (right)
    selfU = LetterActions.of(ext.z)
    U = WordSide(Um)

    class Sub(WordSide):
        def __init__(self, tm, letters):
            super().__init__(tm)
            self.letters = set(letters)

        def classes(self, d):
            return [cl for cl in self.tm.classes(d) if all(c in self.letters for c in cl[0])]

    S_in_U = Sub(Um, ext.xs)
    T_in_U = Sub(Um, ext.ys)
    for name, A, B in (("U|S", U, S_in_U), ("T|U", T_in_U, U)):
        reps = verify_pair_axioms(A, B, selfU.act_left, selfU.act_right, N, cap)
        for k, r in reps.items():
            out[f"{name}:{k}"] = r
    col = Collector("restricted_actions_stay_in_parts", cap)
    for w, u in _graded((U, S_in_U), N):
        img = selfU.act_left(w, u)
        if any(c >= m for c in img):
            col.add((Um.show(w), Um.show(u)), Um.show(img), "X word")
    for a, w in _graded((T_in_U, U), N):
        img = selfU.act_right(a, w)
        if any(c < m for c in img):
            col.add((Um.show(a), Um.show(w)), Um.show(img), "Y word")
    out["restricted_actions_stay_in_parts"] = col.report()
    return out


def _is_trivial(q: QuadraticSet) -> bool:
    return all(q.r(x, y) == (y, x) for x in range(q.n) for y in range(q.n))


def _suite_trivial_parts(s: _ExtSuite, N: int) -> None:
    ext = s.ext
    s.hyp("x trivial", _is_trivial(ext.x_part))
    s.hyp("y trivial", _is_trivial(ext.y_part))
    s.hyp("U length3_cancellation", _cancellation3(ext, N))
    stu_full = s("ml1") and s("mr1") and s("stu")
    s.iff("ybe <=> strong twisted union", s("ybe"), stu_full)
    q, m = ext.z, ext.m
    lt, rt = q.lt, q.rt
    xs, ys = ext.xs, ext.ys
    ml1a_form = all(lt[rt[a][x]][y] == lt[a][y] for a in ys for x in xs for y in xs)
    mr1_form = all(rt[rt[a][x]][y] == rt[rt[a][y]][x] for a in ys for x in xs for y in xs)
    mr1a_form = all(rt[a][lt[b][x]] == rt[a][x] for a in ys for b in ys for x in xs)
    ml1_form = all(lt[a][lt[b][x]] == lt[b][lt[a][x]] for a in ys for b in ys for x in xs)
    if _is_trivial(ext.x_part):
        s.iff("trivial X: ml1a <=> ^{α^x} y = ^α y", s("ml1a"), ml1a_form)
        s.iff("trivial X: mr1 <=> (α^x)^y = (α^y)^x", s("mr1"), mr1_form)
    if _is_trivial(ext.y_part):
        s.iff("trivial Y: mr1a <=> α^{^β x} = α^x", s("mr1a"), mr1a_form)
        s.iff("trivial Y: ml1 <=> ^α(^β x) = ^β(^α x)", s("ml1"), ml1_form)


def _suite_involutive_parts(s: _ExtSuite, N: int) -> None:
    ext = s.ext
    for part in ("x", "y"):
        s.hyp(f"{part} nondegenerate", s.part(part, "nondegenerate"))
        s.hyp(f"{part} involutive", s.part(part, "involutive"))
    reps = verify_ground_matched_pair(ext, max(3, N), cap=1)
    s.hyp("strong matched pair", all(r.holds for r in reps.values()))
    s.iff("ybe <=> fixed_pair_l & fixed_pair_r", s("ybe"), s("fixed_pair_l") and s("fixed_pair_r"))
    s.iff("ml2 <=> fixed_pair_l", s("ml2"), s("fixed_pair_l"))
    s.iff("mr2 <=> fixed_pair_r", s("mr2"), s("fixed_pair_r"))
    squarefree = s.part("x", "square_free") and s.part("y", "square_free")
    s.note("parts square_free", squarefree)
    if squarefree:
        s.iff("square-free parts: ybe <=> mixed_weak_cyclic", s("ybe"), s("mixed_weak_cyclic"))
        s.implies("square-free parts: ybe => Z square_free & lri", s("ybe"), s("square_free") and s("lri"))


def _suite_stu_lri(s: _ExtSuite, N: int) -> None:
    s.hyp("x 2cancellative", s.part("x", "2cancellative"))
    s.hyp("y 2cancellative", s.part("y", "2cancellative"))
    s.hyp("Z lri", s("lri"))
    s.hyp("U length3_cancellation", _cancellation3(s.ext, N))
    s.hyp("strong twisted union", s("ml1") and s("mr1") and s("stu"))
    s.iff("ybe <=> csla & csra", s("ybe"), s("csla") and s("csra"))


EXTENSION_SUITES = {
    "BZ": _suite_bz,
    "parts_lemma": _suite_parts_lemma,
    "B_cancellative": _suite_cancellative,
    "matched_pair_ST": _suite_matched_pair_st,
    "factorization": _suite_factorization,
    "trivial_parts": _suite_trivial_parts,
    "involutive_parts": _suite_involutive_parts,
    "stu_lri": _suite_stu_lri,
}


def verify_extension_theorem(ext: ExtensionSet, suite: str, N: int = 3, strict: bool = True) -> SuiteReport:
    """Run an implication suite on a regular extension. A failed clause on an
    input meeting the hypotheses raises :class:`TheoremViolation` when ``strict``.
    """
    if suite not in EXTENSION_SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(EXTENSION_SUITES)}")
    s = _ExtSuite(suite, ext)
    EXTENSION_SUITES[suite](s, N)
    if strict and s.rep.hypotheses_met and not s.rep.passed:
        raise TheoremViolation(s.rep)
    return s.rep


# ------------------------------------------------------- twisted unions


@dataclass
class StrongTwistedUnionReport:
    condition1: bool  # ml1 and mr1: the actions respect the quadratic relations
    condition2: bool  # stu
    is_strong_twisted_union: bool
    csla: bool | None
    csra: bool | None
    ybe: bool
    cross_check: bool | None
    witnesses: list

    def to_dict(self) -> dict:
        return {
            "condition1": self.condition1,
            "condition2": self.condition2,
            "is_strong_twisted_union": self.is_strong_twisted_union,
            "csla": self.csla,
            "csra": self.csra,
            "ybe": self.ybe,
            "cross_check": self.cross_check,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def strong_twisted_union_report(ext: ExtensionSet, N: int = 3) -> StrongTwistedUnionReport:
    ml1, mr1 = check_mixed(ext, "ml1"), check_mixed(ext, "mr1")
    stu = check_mixed(ext, "stu")
    c1 = ml1.holds and mr1.holds
    ybe = C.check_condition(ext.z, "ybe", cap=1).holds
    csla = csra = cross = None
    applicable = (
        predicate(ext.x_part, "2cancellative", cap=1).holds
        and predicate(ext.y_part, "2cancellative", cap=1).holds
        and C.check_condition(ext.z, "lri", cap=1).holds
        and _cancellation3(ext, N)
    )
    if applicable:
        csla = check_mixed(ext, "csla", cap=1).holds
        csra = check_mixed(ext, "csra", cap=1).holds
        if c1 and stu.holds:
            cross = ybe == (csla and csra)
    return StrongTwistedUnionReport(
        c1, stu.holds, c1 and stu.holds, csla, csra, ybe, cross, ml1.witnesses + mr1.witnesses + stu.witnesses
    )


# ---------------------------------------------------------------- enumeration


def enumerate_extensions(
    x_part: QuadraticSet,
    y_part: QuadraticSet,
    filters: Iterable[str] = (),
    mode: str = "full_table",
    family: Mapping[str, Any] | None = None,
    budget: int = 9,
) -> Iterator[ExtensionSet]:
    """Regular extensions passing every filter, in a fixed order.

    ``full_table`` walks every ground table whose product map is a bijection,
    in lexicographic order of the flattened table; ``|X|·|Y|`` must not exceed
    ``budget``. ``permutation_family`` walks the Cartesian product of candidate
    lists in input order: ``family["L_alpha"]`` is a list of mappings
    (Y label -> permutation of X) and ``family["L_x"]`` a list of mappings
    (X label -> permutation of Y), right actions being their inverses.
    Filters are condition names on Z (``ybe``, ``square_free``, ``involutive``,
    ``lri``, ...) or mixed conditions such as ``stu``.
    """
    filters = tuple(filters)
    m, k = x_part.n, y_part.n

    def passes(ext: ExtensionSet) -> bool:
        for f in filters:
            if f in MIXED_CONDITIONS:
                ok = check_mixed(ext, f, cap=1).holds
            elif f in C.CONDITIONS:
                ok = C.check_condition(ext.z, f, cap=1).holds
            else:
                ok = predicate(ext.z, f, cap=1).holds
            if not ok:
                return False
        return True

    if mode == "full_table":
        if m * k > budget:
            raise BudgetExceeded(f"|X|·|Y| = {m * k} exceeds the enumeration budget {budget}")
        targets = sorted(product(range(m), range(k)))
        for images in permutations(targets):
            left = tuple(tuple(images[a * m + x][0] for x in range(m)) for a in range(k))
            right = tuple(tuple(images[a * m + x][1] for x in range(m)) for a in range(k))
            ext = build_extension(x_part, y_part, Ground(left, right))
            if passes(ext):
                yield ext
    elif mode == "permutation_family":
        if not family or "L_alpha" not in family or "L_x" not in family:
            raise MalformedDocument("permutation_family needs 'L_alpha' and 'L_x' candidate lists")
        for la, lx in product(family["L_alpha"], family["L_x"]):
            ground = ground_from_permutations(x_part, y_part, la, left_x=lx)
            if not is_regular(x_part, y_part, ground):
                continue
            ext = build_extension(x_part, y_part, ground)
            if passes(ext):
                yield ext
    else:
        raise ValueError(f"unknown enumeration mode {mode!r}")


# -------------------------------------------------------- derived structures


def double_braided_set(qs: QuadraticSet, suffix: str = "'") -> ExtensionSet:
    """X ⊔ X̄ with r on each copy, ground action r(ᾱ, x) = r(α, x) and
    r(x, ȳ) = r^{-1}(ȳ, x).
    """
    from .monoid import _require

    _require(qs, "ybe")
    bar = tuple(lab + suffix for lab in qs.labels)
    while set(bar) & set(qs.labels):
        bar = tuple(lab + suffix for lab in bar)
    ybar = QuadraticSet(qs.name + suffix, bar, qs.table)
    ground = Ground(tuple(map(tuple, qs.lt)), tuple(map(tuple, qs.rt)))
    return build_extension(qs, ybar, ground, f"double({qs.name})")


def is_automorphism(q: QuadraticSet, p: Sequence[int]) -> bool:
    return all(q.r(p[x], p[y]) == (p[a], p[b]) for x in range(q.n) for y in range(q.n) for a, b in [q.r(x, y)])


@dataclass
class AutomorphismActionReport:
    y_acts_by_automorphisms: bool  # every L_α|X lies in Aut(X, r_X)
    x_acts_by_automorphisms: bool  # every L_x|Y lies in Aut(Y, r_Y)
    failing_alpha: list[str]
    failing_x: list[str]

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def automorphism_action_check(ext: ExtensionSet) -> AutomorphismActionReport:
    X, Y = ext.x_part, ext.y_part
    bad_a = [Y.labels[a] for a in range(Y.n) if not is_automorphism(X, ext.left_on_x(a))]
    bad_x = [X.labels[x] for x in range(X.n) if not is_automorphism(Y, ext.left_on_y(x))]
    return AutomorphismActionReport(not bad_a, not bad_x, bad_a, bad_x)


def m3_check(ext: ExtensionSet, N: int = 3, cap: int = DEFAULT_WITNESS_CAP) -> dict[str, ConditionReport]:
    """The M3-extension conditions for S(X) ⋈ S(Y) built from the ground actions."""
    Sm, Tm = part_monoids(ext, N)
    return m3_extension_check(Sm, Tm, ext.ground_actions, ext.accompanying, N, cap=cap)


def orbits_of(ext: ExtensionSet) -> list[list[str]]:
    from .graph import orbit_partition

    return orbit_partition(ext.z)


__all__ = [
    "Ground",
    "ExtensionSet",
    "build_extension",
    "load_ground",
    "check_mixed",
    "verify_extension_theorem",
    "strong_twisted_union_report",
    "enumerate_extensions",
    "double_braided_set",
    "automorphism_action_check",
    "factorization_check",
    "is_regular",
    "m3_check",
    "DoubleProduct",
]
