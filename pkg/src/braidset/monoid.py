"""The monoid S(X, r) truncated at a maximal degree, with actions extended to words.

S(X, r) is the free monoid on X modulo ``xy = r(xy)``. The relations preserve
length, so the class of a word of length d is its connected component in the
graph on X^d whose edges replace one adjacent pair by its image under r. Each
class is represented by its lexicographically least member.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from itertools import product
from typing import Any

from .errors import AxiomViolation, BudgetExceeded, DegreeExceeded, PrerequisiteFailed
from .qset import QuadraticSet, predicate
from .report import DEFAULT_WITNESS_CAP, Collector, ConditionReport

Word = tuple[int, ...]
DEFAULT_BUDGET = 2_000_000

MATCHED_PAIR_CHECKS = ("ML0", "MR0", "ML1", "MR1", "ML2", "MR2", "well_defined")
MONOID_CHECKS = ("matched_pair", "m3", "lr3", "ybe", "strong")


def _show_word(labels: Sequence[str], w: Word) -> str:
    return "·".join(labels[i] for i in w) if w else "1"


# -------------------------------------------------------------- union-find


def _components(size: int, edges: Callable[[int], Iterable[int]]) -> list[int]:
    parent = list(range(size))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for v in range(size):
        for w in edges(v):
            a, b = find(v), find(w)
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    # roots are the least codes because unions always keep the smaller root
    return [find(v) for v in range(size)]


class TruncatedMonoid:
    """Classes of S(X, r) in every degree up to ``max_degree``."""

    def __init__(self, qs: QuadraticSet, max_degree: int, budget: int = DEFAULT_BUDGET):
        if max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        n = qs.n
        total = sum(n**d for d in range(max_degree + 1))
        if total > budget:
            raise BudgetExceeded(f"{total} words up to degree {max_degree} exceed the budget of {budget}")
        self.qs = qs
        self.N = max_degree
        self.labels = qs.labels
        self._root: list[list[int]] = []
        self._classes: list[list[tuple[Word, ...]]] = []
        for d in range(max_degree + 1):
            self._build(d)

    def _build(self, d: int) -> None:
        n, qs = self.qs.n, self.qs
        size = n**d
        weights = [n ** (d - 1 - i) for i in range(d)]

        def edges(code: int):
            w = self._decode(code, d)
            for i in range(d - 1):
                a, b = qs.r(w[i], w[i + 1])
                if (a, b) != (w[i], w[i + 1]):
                    yield code + (a - w[i]) * weights[i] + (b - w[i + 1]) * weights[i + 1]

        root = _components(size, edges) if d >= 2 else list(range(size))
        groups: dict[int, list[Word]] = {}
        for code in range(size):
            groups.setdefault(root[code], []).append(self._decode(code, d))
        self._root.append(root)
        self._classes.append([tuple(groups[k]) for k in sorted(groups)])

    def _decode(self, code: int, d: int) -> Word:
        n = self.qs.n
        out = [0] * d
        for i in range(d - 1, -1, -1):
            code, out[i] = divmod(code, n)
        return tuple(out)

    def _encode(self, w: Word) -> int:
        n = self.qs.n
        code = 0
        for x in w:
            code = code * n + x
        return code

    def word(self, w: Any) -> Word:
        """Coerce a word given as indices, labels, or a space-separated string."""
        if isinstance(w, str):
            w = w.split()
        return tuple(self.qs.idx(x) for x in w)

    def canon(self, w: Word) -> Word:
        d = len(w)
        if d > self.N:
            raise DegreeExceeded(f"word of degree {d} exceeds the truncation degree {self.N}")
        if d < 2:
            return tuple(w)
        return self._decode(self._root[d][self._encode(w)], d)

    def equal(self, u: Word, v: Word) -> bool:
        return len(u) == len(v) and self.canon(u) == self.canon(v)

    def classes(self, d: int) -> list[tuple[Word, ...]]:
        """Classes of degree d, each sorted, listed in order of their least member."""
        if d > self.N:
            raise DegreeExceeded(f"degree {d} exceeds the truncation degree {self.N}")
        return self._classes[d]

    def class_of(self, w: Word) -> tuple[Word, ...]:
        c = self.canon(w)
        if len(c) < 2:
            return (c,)
        for cl in self._classes[len(c)]:
            if cl[0] == c:
                return cl
        raise AssertionError("class not found")

    def class_counts(self) -> list[int]:
        return [len(self._classes[d]) for d in range(self.N + 1)]

    def show(self, w: Word) -> str:
        return _show_word(self.labels, w)


def build_truncated_monoid(qs: QuadraticSet, max_degree: int, budget: int = DEFAULT_BUDGET) -> TruncatedMonoid:
    return TruncatedMonoid(qs, max_degree, budget)


def word_equal(tm: TruncatedMonoid, u: Any, v: Any) -> bool:
    return tm.equal(tm.word(u), tm.word(v))


def normal_form(tm: TruncatedMonoid, w: Any) -> tuple[str, ...]:
    return tuple(tm.labels[i] for i in tm.canon(tm.word(w)))


def cancellation_test(tm: TruncatedMonoid, length: int, cap: int = DEFAULT_WITNESS_CAP) -> ConditionReport:
    """Cancellation of common prefixes and suffixes between equal words of one length.

    For every pair of equal words ``a·u = a·v`` (resp. ``u·a = v·a``) with a
    non-empty common block ``a``, checks ``u = v`` in S.
    """
    if length > tm.N:
        raise DegreeExceeded(f"length {length} exceeds the truncation degree {tm.N}")
    col = Collector(f"cancellation_{length}", cap)
    for cl in tm.classes(length):
        for w1, w2 in product(cl, repeat=2):
            if w1 >= w2:
                continue
            for k in range(1, length):
                if w1[:k] == w2[:k] and not tm.equal(w1[k:], w2[k:]):
                    col.add((tm.show(w1), tm.show(w2)), tm.show(w1[k:]), tm.show(w2[k:]), f"common prefix of length {k}")
                if w1[length - k:] == w2[length - k:] and not tm.equal(w1[: length - k], w2[: length - k]):
                    col.add((tm.show(w1), tm.show(w2)), tm.show(w1[: length - k]), tm.show(w2[: length - k]), f"common suffix of length {k}")
    return col.report()


# ------------------------------------------------------------ actions on words


@dataclass(frozen=True)
class LetterActions:
    """Actions of letters of an alphabet A on words over an alphabet B and back.

    ``left[a][u]`` is ^a u (a letter of B) and ``right[a][u]`` is a^u (a letter
    of A). They extend to words by the recursions
    ``^a(u·w) = ^a u · ^{a^u} w`` and ``(b·a)^u = b^{^a u} · a^u``, and acting
    by a word composes the letter actions.
    """

    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, qs: QuadraticSet) -> "LetterActions":
        """The actions r(x, y) = (^x y, x^y) of a quadratic set on itself."""
        return cls(tuple(map(tuple, qs.lt)), tuple(map(tuple, qs.rt)))

    def _letter_on_word(self, a: int, u: Word) -> tuple[Word, int]:
        out = []
        left, right = self.left, self.right
        for x in u:
            out.append(left[a][x])
            a = right[a][x]
        return tuple(out), a

    def _word_on_letter(self, a: Word, x: int) -> tuple[Word, int]:
        out = []
        left, right = self.left, self.right
        for b in reversed(a):
            out.append(right[b][x])
            x = left[b][x]
        out.reverse()
        return tuple(out), x

    def act_left(self, a: Word, u: Word) -> Word:
        """^a u."""
        for letter in reversed(a):
            u = self._letter_on_word(letter, u)[0]
        return u

    def act_right(self, a: Word, u: Word) -> Word:
        """a^u."""
        for letter in u:
            a = self._word_on_letter(a, letter)[0]
        return a

    def pair(self, a: Word, u: Word) -> tuple[Word, Word]:
        """(^a u, a^u)."""
        return self.act_left(a, u), self.act_right(a, u)


def _require(qs: QuadraticSet, what: str) -> None:
    from .conditions import check_condition

    if what == "ybe":
        rep = check_condition(qs, "ybe", cap=1)
    else:
        rep = predicate(qs, what, cap=1)
    if not rep.holds:
        raise PrerequisiteFailed(what, f"{qs.name}: {rep.witnesses[0]}")


def extended_actions(tm: TruncatedMonoid, require_braided: bool = True) -> LetterActions:
    """The actions of S(X, r) on itself extending the left and right actions of r."""
    if require_braided:
        _require(tm.qs, "ybe")
    return LetterActions.of(tm.qs)


def ext_left_action(tm: TruncatedMonoid, a: Any, u: Any) -> tuple[str, ...]:
    acts = extended_actions(tm)
    return tuple(tm.labels[i] for i in tm.canon(acts.act_left(tm.word(a), tm.word(u))))


def ext_right_action(tm: TruncatedMonoid, a: Any, u: Any) -> tuple[str, ...]:
    acts = extended_actions(tm)
    return tuple(tm.labels[i] for i in tm.canon(acts.act_right(tm.word(a), tm.word(u))))


def r_S_apply(tm: TruncatedMonoid, u: Any, v: Any) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """r_S(u, v) = (^u v, u^v), as normal forms."""
    acts = extended_actions(tm)
    a, b = acts.pair(tm.word(u), tm.word(v))
    return tuple(tm.labels[i] for i in tm.canon(a)), tuple(tm.labels[i] for i in tm.canon(b))


# ------------------------------------------------------- generic monoid sides


class Side:
    """A graded monoid truncated at degree N: classes, products and normal forms."""

    N: int
    unit: Any

    def classes(self, d: int) -> list[tuple[Any, ...]]:
        raise NotImplementedError

    def canon(self, e: Any) -> Any:
        raise NotImplementedError

    def mul(self, p: Any, q: Any) -> Any:
        raise NotImplementedError

    def degree(self, e: Any) -> int:
        raise NotImplementedError

    def show(self, e: Any) -> str:
        raise NotImplementedError

    def reps(self, d: int) -> list[Any]:
        return [cl[0] for cl in self.classes(d)]

    def reps_upto(self, top: int) -> list[Any]:
        return [e for d in range(top + 1) for e in self.reps(d)]


class WordSide(Side):
    def __init__(self, tm: TruncatedMonoid):
        self.tm = tm
        self.N = tm.N
        self.unit: Word = ()

    def classes(self, d: int):
        return self.tm.classes(d)

    def canon(self, e: Word) -> Word:
        return self.tm.canon(e)

    def mul(self, p: Word, q: Word) -> Word:
        return p + q

    def degree(self, e: Word) -> int:
        return len(e)

    def show(self, e: Word) -> str:
        return self.tm.show(e)


class DoubleProduct(Side):
    """The double cross product S ⋈ T on normal-form pairs (u, a).

    ``actions.left[a][u]`` gives ^a u in S and ``actions.right[a][u]`` gives
    a^u in T, and (u, a)(v, b) = (u·^a v, a^v·b).
    """

    def __init__(self, S: Side, T: Side, act_left: Callable, act_right: Callable, N: int):
        self.S, self.T = S, T
        self.act_left, self.act_right = act_left, act_right
        self.N = N
        self.unit = (S.unit, T.unit)

    def classes(self, d: int):
        out = []
        for du in range(d + 1):
            for cu in self.S.classes(du):
                for ca in self.T.classes(d - du):
                    out.append(tuple(product(cu, ca)))
        return out

    def canon(self, e):
        return self.S.canon(e[0]), self.T.canon(e[1])

    def mul(self, p, q):
        (u, a), (v, b) = p, q
        return self.S.mul(u, self.act_left(a, v)), self.T.mul(self.act_right(a, v), b)

    def degree(self, e) -> int:
        return self.S.degree(e[0]) + self.T.degree(e[1])

    def show(self, e) -> str:
        return f"{self.S.show(e[0])}.{self.T.show(e[1])}"


def _graded(sides: Sequence[Side], N: int):
    """Tuples of class representatives whose degrees add up to at most N."""

    def rec(i: int, budget: int):
        if i == len(sides):
            yield ()
            return
        for d in range(budget + 1):
            for e in sides[i].reps(d):
                for rest in rec(i + 1, budget - d):
                    yield (e,) + rest

    return rec(0, N)


def _members_graded(sides: Sequence[Side], N: int):
    """Tuples of class members (every representative) with total degree at most N."""

    def rec(i: int, budget: int):
        if i == len(sides):
            yield ()
            return
        for d in range(budget + 1):
            for cl in sides[i].classes(d):
                for e in cl:
                    for rest in rec(i + 1, budget - d):
                        yield (e,) + rest

    return rec(0, N)


def verify_pair_axioms(
    A: Side,
    B: Side,
    left: Callable[[Any, Any], Any],
    right: Callable[[Any, Any], Any],
    N: int,
    cap: int = DEFAULT_WITNESS_CAP,
    checks: Iterable[str] = MATCHED_PAIR_CHECKS,
) -> dict[str, ConditionReport]:
    """Matched-pair axioms for A acting on B from the left (``left(a, u)``, in B)
    and B acting on A from the right (``right(a, u)``, in A), up to total degree N.

    ``well_defined`` evaluates both actions on every member of every pair of
    classes and requires the resulting class not to depend on the member.
    """
    checks = set(checks)
    out: dict[str, ConditionReport] = {}
    eqA = lambda p, q: A.canon(p) == A.canon(q)  # noqa: E731
    eqB = lambda p, q: B.canon(p) == B.canon(q)  # noqa: E731

    if "well_defined" in checks:
        col = Collector("well_defined", cap)
        for d in range(N + 1):
            for da in range(d + 1):
                for ca in A.classes(da):
                    for cu in B.classes(d - da):
                        refL = B.canon(left(ca[0], cu[0]))
                        refR = A.canon(right(ca[0], cu[0]))
                        for a, u in product(ca, cu):
                            gotL, gotR = B.canon(left(a, u)), A.canon(right(a, u))
                            if gotL != refL:
                                col.add((A.show(a), B.show(u)), B.show(gotL), B.show(refL), "left action")
                            if gotR != refR:
                                col.add((A.show(a), B.show(u)), A.show(gotR), A.show(refR), "right action")
        out["well_defined"] = col.report()

    if "ML0" in checks:
        col = Collector("ML0", cap)
        for a in A.reps_upto(N):
            got = left(a, B.unit)
            if not eqB(got, B.unit):
                col.add((A.show(a), "1"), B.show(got), "1")
        for u in B.reps_upto(N):
            got = left(A.unit, u)
            if not eqB(got, u):
                col.add(("1", B.show(u)), B.show(got), B.show(u))
        out["ML0"] = col.report()
    if "MR0" in checks:
        col = Collector("MR0", cap)
        for u in B.reps_upto(N):
            got = right(A.unit, u)
            if not eqA(got, A.unit):
                col.add(("1", B.show(u)), A.show(got), "1")
        for a in A.reps_upto(N):
            got = right(a, B.unit)
            if not eqA(got, a):
                col.add((A.show(a), "1"), A.show(got), A.show(a))
        out["MR0"] = col.report()
    if "ML1" in checks:
        col = Collector("ML1", cap)
        for a, b, u in _graded((A, A, B), N):
            lhs, rhs = left(A.mul(a, b), u), left(a, left(b, u))
            if not eqB(lhs, rhs):
                col.add((A.show(a), A.show(b), B.show(u)), B.show(lhs), B.show(rhs))
        out["ML1"] = col.report()
    if "MR1" in checks:
        col = Collector("MR1", cap)
        for a, u, v in _graded((A, B, B), N):
            lhs, rhs = right(a, B.mul(u, v)), right(right(a, u), v)
            if not eqA(lhs, rhs):
                col.add((A.show(a), B.show(u), B.show(v)), A.show(lhs), A.show(rhs))
        out["MR1"] = col.report()
    if "ML2" in checks:
        col = Collector("ML2", cap)
        for a, u, v in _graded((A, B, B), N):
            lhs = left(a, B.mul(u, v))
            rhs = B.mul(left(a, u), left(right(a, u), v))
            if not eqB(lhs, rhs):
                col.add((A.show(a), B.show(u), B.show(v)), B.show(lhs), B.show(rhs))
        out["ML2"] = col.report()
    if "MR2" in checks:
        col = Collector("MR2", cap)
        for a, b, u in _graded((A, A, B), N):
            lhs = right(A.mul(a, b), u)
            rhs = A.mul(right(a, left(b, u)), right(b, u))
            if not eqA(lhs, rhs):
                col.add((A.show(a), A.show(b), B.show(u)), A.show(lhs), A.show(rhs))
        out["MR2"] = col.report()
    return out


def _self_sides(tm: TruncatedMonoid, acts: LetterActions) -> tuple[WordSide, Callable, Callable]:
    return WordSide(tm), acts.act_left, acts.act_right


def verify_matched_pair(
    tm: TruncatedMonoid,
    N: int | None = None,
    require_braided: bool = True,
    cap: int = DEFAULT_WITNESS_CAP,
) -> dict[str, ConditionReport]:
    """Matched-pair axioms, M3 and LR3 for S(X, r) acting on itself, up to degree N."""
    N = tm.N if N is None else N
    acts = extended_actions(tm, require_braided)
    S, L, R = _self_sides(tm, acts)
    out = verify_pair_axioms(S, S, L, R, N, cap)

    col = Collector("M3", cap)
    for u, v in _graded((S, S), N):
        lhs, rhs = L(u, v) + R(u, v), u + v
        if not tm.equal(lhs, rhs):
            col.add((tm.show(u), tm.show(v)), tm.show(lhs), tm.show(rhs))
    out["M3"] = col.report()

    col = Collector("LR3", cap)
    for a, w, b in _graded((S, S, S), N):
        lhs = R(L(a, w), L(R(a, w), b))
        rhs = L(R(a, L(w, b)), R(w, b))
        if not tm.equal(lhs, rhs):
            col.add((tm.show(a), tm.show(w), tm.show(b)), tm.show(lhs), tm.show(rhs))
    out["LR3"] = col.report()
    return out


def _r_S_ybe(tm: TruncatedMonoid, acts: LetterActions, N: int, cap: int) -> ConditionReport:
    S = WordSide(tm)
    r = acts.pair

    def r12(t):
        a, b = r(t[0], t[1])
        return a, b, t[2]

    def r23(t):
        b, c = r(t[1], t[2])
        return t[0], b, c

    col = Collector("ybe", cap)
    for t in _graded((S, S, S), N):
        lhs, rhs = r12(r23(r12(t))), r23(r12(r23(t)))
        if tuple(map(tm.canon, lhs)) != tuple(map(tm.canon, rhs)):
            col.add(tuple(map(tm.show, t)), tuple(map(tm.show, lhs)), tuple(map(tm.show, rhs)))
    return col.report()


def accompanying_actions(qs: QuadraticSet) -> LetterActions:
    """Actions from r^{-1}(x, y) = (x ▷ y, x ◁ y)."""
    return LetterActions.of(qs.inverse())


def _lara(
    S: Side, T: Side, acts_left, acts_right, acc_left, acc_right, N: int, cap: int, name: str = "strong"
) -> ConditionReport:
    """The four identities tying the actions of T on S to the accompanying ones.

    ``acts_left(a, u)`` is ^a u, ``acts_right(a, u)`` is a^u, ``acc_left(u, a)``
    is u ▷ a and ``acc_right(u, a)`` is u ◁ a, for u in S and a in T.
    """
    col = Collector(name, cap)
    for a, u in _graded((T, S), N):
        au, ua = acts_left(a, u), acts_right(a, u)
        sides = [
            ("(^a u) ▷ (a^u) = a", T, acc_left(au, ua), a),
            ("(^a u) ◁ (a^u) = u", S, acc_right(au, ua), u),
        ]
        b, v = acc_left(u, a), acc_right(u, a)
        sides += [
            ("^{u▷a}(u◁a) = u", S, acts_left(b, v), u),
            ("(u▷a)^{u◁a} = a", T, acts_right(b, v), a),
        ]
        for label, side, lhs, rhs in sides:
            if side.canon(lhs) != side.canon(rhs):
                col.add((T.show(a), S.show(u)), side.show(lhs), side.show(rhs), label)
    return col.report()


def verify_braided_monoid(
    tm: TruncatedMonoid,
    N: int | None = None,
    checks: Iterable[str] = ("ybe", "strong", "nondegenerate", "involutive"),
    require_braided: bool = True,
    cap: int = DEFAULT_WITNESS_CAP,
) -> dict[str, ConditionReport]:
    """Braided-monoid properties of r_S(u, v) = (^u v, u^v) up to degree N.

    ``involutive`` tests r_S on S itself. When the base is not involutive the
    report carries a note saying so, because the involutivity transfer only
    applies to an involutive base.
    """
    N = tm.N if N is None else N
    checks = set(checks)
    acts = extended_actions(tm, require_braided)
    S = WordSide(tm)
    out: dict[str, ConditionReport] = {}
    if "ybe" in checks:
        out["ybe"] = _r_S_ybe(tm, acts, N, cap)
    if "strong" in checks:
        if not tm.qs.is_bijective:
            out["strong"] = ConditionReport("strong", False, [], 0, "base r is not bijective")
        else:
            acc = accompanying_actions(tm.qs)
            out["strong"] = _lara(S, S, acts.act_left, acts.act_right, acc.act_left, acc.act_right, N, cap)
    if "nondegenerate" in checks:
        col = Collector("nondegenerate", cap)
        for da in range(N + 1):
            for a in S.reps(da):
                for d in range(N - da + 1):
                    for side, act in (("left", lambda u: acts.act_left(a, u)), ("right", lambda u: acts.act_right(u, a))):
                        seen: dict[Word, Word] = {}
                        for u in S.reps(d):
                            img = tm.canon(act(u))
                            if img in seen:
                                col.add((tm.show(a),), (tm.show(seen[img]), tm.show(u)), tm.show(img), f"{side} action of {tm.show(a)} not injective")
                            else:
                                seen[img] = u
        out["nondegenerate"] = col.report()
    if "involutive" in checks:
        col = Collector("involutive", cap)
        for u, v in _graded((S, S), N):
            a, b = acts.pair(u, v)
            c, d = acts.pair(a, b)
            if not (tm.equal(c, u) and tm.equal(d, v)):
                col.add((tm.show(u), tm.show(v)), (tm.show(c), tm.show(d)), (tm.show(u), tm.show(v)))
        base_inv = predicate(tm.qs, "involutive", cap=1).holds
        out["involutive"] = col.report("" if base_inv else "base not involutive")
    return out


def verify_monoid(
    tm: TruncatedMonoid,
    N: int | None = None,
    verify: Iterable[str] = MONOID_CHECKS,
    require_braided: bool = False,
    cap: int = DEFAULT_WITNESS_CAP,
) -> dict[str, ConditionReport]:
    """The selection of monoid-level checks offered on the command line."""
    verify = set(verify)
    unknown = verify - set(MONOID_CHECKS) - {"nondegenerate", "involutive"}
    if unknown:
        raise ValueError(f"unknown monoid checks: {', '.join(sorted(unknown))}")
    out: dict[str, ConditionReport] = {}
    if verify & {"matched_pair", "m3", "lr3"}:
        mp = verify_matched_pair(tm, N, require_braided, cap)
        if "matched_pair" in verify:
            for k in MATCHED_PAIR_CHECKS:
                out[k] = mp[k]
        if "m3" in verify:
            out["M3"] = mp["M3"]
        if "lr3" in verify:
            out["LR3"] = mp["LR3"]
    rest = verify & {"ybe", "strong", "nondegenerate", "involutive"}
    if rest:
        out.update(verify_braided_monoid(tm, N, rest, require_braided, cap))
    return out


# -------------------------------------------------------------------- products


def double_cross_product(
    S_tm: TruncatedMonoid, T_tm: TruncatedMonoid, actions: LetterActions, N: int | None = None
) -> DoubleProduct:
    """S ⋈ T with T acting on S by ``actions.left`` and S on T by ``actions.right``.

    Associativity and the unit laws are checked on all normal-form triples of
    total degree at most N; a failure raises :class:`AxiomViolation`.
    """
    N = min(S_tm.N, T_tm.N) if N is None else N
    dp = DoubleProduct(WordSide(S_tm), WordSide(T_tm), actions.act_left, actions.act_right, N)
    for p in dp.reps_upto(N):
        if dp.canon(dp.mul(dp.unit, p)) != dp.canon(p) or dp.canon(dp.mul(p, dp.unit)) != dp.canon(p):
            raise AxiomViolation("unit", dp.show(p))
    for p, q, s in _graded((dp, dp, dp), N):
        lhs = dp.mul(dp.canon(dp.mul(p, q)), s)
        rhs = dp.mul(p, dp.canon(dp.mul(q, s)))
        if dp.canon(lhs) != dp.canon(rhs):
            raise AxiomViolation("associativity", f"({dp.show(p)}, {dp.show(q)}, {dp.show(s)})")
    return dp


def verify_triple_product(tm: TruncatedMonoid, N: int = 2, cap: int = DEFAULT_WITNESS_CAP) -> dict[str, ConditionReport]:
    """The matched pairs (S, S⋈S) and (S⋈S, S) and the agreement of the two
    triple products S⋈(S⋈S) and (S⋈S)⋈S, up to total degree N.
    """
    acts = extended_actions(tm)
    S = WordSide(tm)
    L, R = acts.act_left, acts.act_right
    D = DoubleProduct(S, S, L, R, N)
    out: dict[str, ConditionReport] = {}

    # S⋈S acting on S: ^{u.a} v = ^{ua} v and (u.a)^v = u^{^a v} . a^v
    def dl(P, v):
        return L(P[0] + P[1], v)

    def dr(P, v):
        u, a = P
        return R(u, L(a, v)), R(a, v)

    for k, rep in verify_pair_axioms(D, S, dl, dr, N, cap).items():
        out[f"S|SS:{k}"] = rep

    # S acting on S⋈S: ^v(u.a) = ^v u . ^{v^u} a and v^{u.a} = v^{ua}
    def sl(v, P):
        u, a = P
        return L(v, u), L(R(v, u), a)

    def sr(v, P):
        return R(v, P[0] + P[1])

    for k, rep in verify_pair_axioms(S, D, sl, sr, N, cap).items():
        out[f"SS|S:{k}"] = rep

    left_nest = DoubleProduct(S, D, dl, dr, N)  # S ⋈ (S⋈S)
    right_nest = DoubleProduct(D, S, sl, sr, N)  # (S⋈S) ⋈ S

    def flat_left(e):
        return (e[0], e[1][0], e[1][1])

    def flat_right(e):
        return (e[0][0], e[0][1], e[1])

    col = Collector("triple_products_agree", cap)
    for p, q in _graded((left_nest, left_nest), N):
        u, a, b = flat_left(p)
        v, c, d = flat_left(q)
        one = flat_left(left_nest.mul(p, q))
        two = flat_right(right_nest.mul(((u, a), b), ((v, c), d)))
        if tuple(map(tm.canon, one)) != tuple(map(tm.canon, two)):
            col.add((left_nest.show(p), left_nest.show(q)), tuple(map(tm.show, one)), tuple(map(tm.show, two)))
    out["triple_products_agree"] = col.report()
    return out


def m3_extension_check(
    S_tm: TruncatedMonoid,
    T_tm: TruncatedMonoid,
    pair: LetterActions,
    accompanying: LetterActions,
    N: int | None = None,
    quantum_double: bool = False,
    cap: int = DEFAULT_WITNESS_CAP,
) -> dict[str, ConditionReport]:
    """Conditions for r_U on U = S⋈T to be braided, given the actions of T on S
    (``pair``) and the accompanying actions of S on T (``accompanying``).

    Checks ml1a, lr3a, mr1a and lr3b, compares r_U computed as the composite
    (r_{T,S}^{23})^{-1} r_T^{34} r_S^{12} r_{T,S}^{23} with the formula through
    extended actions, and tests M3 in U. With ``quantum_double`` the braid
    relation for r_U is checked as well.
    """
    N = min(S_tm.N, T_tm.N) if N is None else N
    S, T = WordSide(S_tm), WordSide(T_tm)
    sS, sT = LetterActions.of(S_tm.qs), LetterActions.of(T_tm.qs)
    TL, TR = pair.act_left, pair.act_right  # ^a u in S, a^u in T
    AL, AR = accompanying.act_left, accompanying.act_right  # u ▷ a in T, u ◁ a in S
    out: dict[str, ConditionReport] = {}

    def run(name, sides, fn, eq_side):
        col = Collector(name, cap)
        for t in _graded(sides, N):
            lhs, rhs = fn(*t)
            if eq_side.canon(lhs) != eq_side.canon(rhs):
                col.add(tuple(s.show(e) for s, e in zip(sides, t)), eq_side.show(lhs), eq_side.show(rhs))
        out[name] = col.report()

    run("ml1a", (T, S, S), lambda a, u, v: (sS.act_left(TL(a, u), TL(TR(a, u), v)), TL(a, sS.act_left(u, v))), S)
    run(
        "lr3a",
        (T, S, S),
        lambda a, u, v: (sS.act_right(TL(a, u), TL(TR(a, u), v)), TL(TR(a, sS.act_left(u, v)), sS.act_right(u, v))),
        S,
    )
    run("mr1a", (T, T, S), lambda a, b, u: (TR(sT.act_right(a, b), u), sT.act_right(TR(a, TL(b, u)), TR(b, u))), T)
    run(
        "lr3b",
        (T, T, S),
        lambda a, b, u: (TR(sT.act_left(a, b), TL(sT.act_right(a, b), u)), sT.act_left(TR(a, TL(b, u)), TR(b, u))),
        T,
    )

    U = DoubleProduct(S, T, TL, TR, N)

    def r_formula(p, q):
        (v, b), (u, a) = p, q
        bu, b_u = TL(b, u), TR(b, u)
        w, c = sS.act_right(v, bu), sT.act_left(b_u, a)
        return (sS.act_left(v, bu), AL(w, c)), (AR(w, c), sT.act_right(b_u, a))

    def r_composite(p, q):
        v, b = p
        u, a = q
        s1, t1, s2, t2 = v, b, u, a
        s2, t1 = TL(t1, s2), TR(t1, s2)  # r^{23}_{T,S}
        s1, s2 = sS.act_left(s1, s2), sS.act_right(s1, s2)  # r^{12}_S
        t1, t2 = sT.act_left(t1, t2), sT.act_right(t1, t2)  # r^{34}_T
        t1, s2 = AL(s2, t1), AR(s2, t1)  # (r^{23}_{T,S})^{-1}
        return (s1, t1), (s2, t2)

    col = Collector("r_U_composite", cap)
    col_m3 = Collector("M3_U", cap)
    for p, q in _graded((U, U), N):
        f, c = r_formula(p, q), r_composite(p, q)
        if tuple(map(U.canon, f)) != tuple(map(U.canon, c)):
            col.add((U.show(p), U.show(q)), tuple(map(U.show, f)), tuple(map(U.show, c)))
        lhs, rhs = U.mul(*f), U.mul(p, q)
        if U.canon(lhs) != U.canon(rhs):
            col_m3.add((U.show(p), U.show(q)), U.show(lhs), U.show(rhs))
    out["r_U_composite"] = col.report()
    out["M3_U"] = col_m3.report()

    if quantum_double:
        col = Collector("ybe_U", cap)

        def r12(t):
            a, b = r_formula(t[0], t[1])
            return a, b, t[2]

        def r23(t):
            b, c = r_formula(t[1], t[2])
            return t[0], b, c

        for t in _graded((U, U, U), N):
            lhs, rhs = r12(r23(r12(t))), r23(r12(r23(t)))
            if tuple(map(U.canon, lhs)) != tuple(map(U.canon, rhs)):
                col.add(tuple(map(U.show, t)), tuple(map(U.show, lhs)), tuple(map(U.show, rhs)))
        out["ybe_U"] = col.report()
    return out


def quantum_double_check(tm: TruncatedMonoid, N: int | None = None, cap: int = DEFAULT_WITNESS_CAP) -> dict[str, ConditionReport]:
    """The M3 extension S⋈S with S acting on itself."""
    acts = extended_actions(tm)
    return m3_extension_check(tm, tm, acts, accompanying_actions(tm.qs), N, quantum_double=True, cap=cap)
