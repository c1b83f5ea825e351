"""Braid-type identities on quadratic sets and the implication suites between them.

Notation: ``^x y = lt[x][y]`` and ``x^y = rt[x][y]``.
"""

from __future__ import annotations

from collections.abc import Callable
from itertools import product

from .errors import TheoremViolation
from .qset import Element, QuadraticSet, predicate
from .report import DEFAULT_WITNESS_CAP, Clause, Collector, ConditionReport, SuiteReport

Sides = tuple[object, object]

# --------------------------------------------------------------- local checks


def _l1(q: QuadraticSet, x: int, y: int, z: int) -> Sides:
    lt, rt = q.lt, q.rt
    return lt[x][lt[y][z]], lt[lt[x][y]][lt[rt[x][y]][z]]


def _r1(q: QuadraticSet, x: int, y: int, z: int) -> Sides:
    lt, rt = q.lt, q.rt
    return rt[rt[x][y]][z], rt[rt[x][lt[y][z]]][rt[y][z]]


def _lr3(q: QuadraticSet, x: int, y: int, z: int) -> Sides:
    lt, rt = q.lt, q.rt
    return rt[lt[x][y]][lt[rt[x][y]][z]], lt[rt[x][lt[y][z]]][rt[y][z]]


def _l2(q: QuadraticSet, x: int, y: int, z: int) -> Sides:
    # r(^x(y, z)) against ^x(r(y, z)), with ^x(y, z) = (^x y, ^{x^y} z)
    lt, rt = q.lt, q.rt
    lhs = q.r(lt[x][y], lt[rt[x][y]][z])
    u, v = q.r(y, z)
    return lhs, (lt[x][u], lt[rt[x][u]][v])


def _r2(q: QuadraticSet, x: int, y: int, z: int) -> Sides:
    # r((x, y)^z) against (r(x, y))^z, with (x, y)^z = (x^{^y z}, y^z)
    lt, rt = q.lt, q.rt
    lhs = q.r(rt[x][lt[y][z]], rt[y][z])
    u, v = q.r(x, y)
    return lhs, (rt[u][lt[v][z]], rt[v][z])


def _ybe(q: QuadraticSet, x: int, y: int, z: int) -> Sides:
    r = q.r

    def r12(t):
        a, b = r(t[0], t[1])
        return a, b, t[2]

    def r23(t):
        b, c = r(t[1], t[2])
        return t[0], b, c

    t = (x, y, z)
    return r12(r23(r12(t))), r23(r12(r23(t)))


def _csl(q: QuadraticSet, x: int, y: int, t: int) -> Sides:
    lt = q.lt
    return lt[lt[y][t]][lt[y][x]], lt[lt[t][y]][lt[t][x]]


def _csr(q: QuadraticSet, x: int, y: int, t: int) -> Sides:
    rt = q.rt
    return rt[rt[x][y]][rt[t][y]], rt[rt[x][t]][rt[y][t]]


def _cl1(q: QuadraticSet, x: int, y: int) -> Sides:
    return q.lt[q.rt[y][x]][x], q.lt[y][x]


def _cl2(q: QuadraticSet, x: int, y: int) -> Sides:
    return q.lt[q.lt[x][y]][x], q.lt[y][x]


def _cr1(q: QuadraticSet, x: int, y: int) -> Sides:
    return q.rt[x][q.lt[x][y]], q.rt[x][y]


def _cr2(q: QuadraticSet, x: int, y: int) -> Sides:
    return q.rt[x][q.rt[y][x]], q.rt[x][y]


def _lri_left(q: QuadraticSet, x: int, y: int) -> Sides:
    return q.rt[q.lt[x][y]][x], y


def _lri_right(q: QuadraticSet, x: int, y: int) -> Sides:
    return q.lt[x][q.rt[y][x]], y


LocalFn = Callable[..., Sides]

ATOMS: dict[str, tuple[int, LocalFn]] = {
    "l1": (3, _l1),
    "r1": (3, _r1),
    "lr3": (3, _lr3),
    "l2": (3, _l2),
    "r2": (3, _r2),
    "ybe": (3, _ybe),
    "csl": (3, _csl),
    "csr": (3, _csr),
    "cl1": (2, _cl1),
    "cl2": (2, _cl2),
    "cr1": (2, _cr1),
    "cr2": (2, _cr2),
    "lri_left": (2, _lri_left),
    "lri_right": (2, _lri_right),
}

COMPOUND: dict[str, tuple[str, ...]] = {
    "weak_cyclic": ("cl1", "cr1"),
    "cyclic": ("cl1", "cl2", "cr1", "cr2"),
    "lri": ("lri_left", "lri_right"),
}

CONDITIONS = (
    "ybe", "l1", "r1", "lr3", "l2", "r2",
    "cl1", "cl2", "cr1", "cr2", "weak_cyclic", "cyclic",
    "lri", "lri_left", "lri_right", "csl", "csr",
)


def _components(cond: str) -> tuple[str, ...]:
    if cond in COMPOUND:
        return COMPOUND[cond]
    if cond in ATOMS:
        return (cond,)
    raise ValueError(f"unknown condition {cond!r}; choose from {', '.join(CONDITIONS)}")


def _lab(q: QuadraticSet, v: object) -> object:
    if isinstance(v, tuple):
        return tuple(q.labels[i] for i in v)
    return q.labels[v]  # type: ignore[index]


def check_condition(qs: QuadraticSet, cond: str, cap: int = DEFAULT_WITNESS_CAP) -> ConditionReport:
    """Evaluate ``cond`` on every tuple of the carrier in lexicographic order."""
    parts = _components(cond)
    arity = max(ATOMS[p][0] for p in parts)
    col = Collector(cond, cap)
    for t in product(range(qs.n), repeat=arity):
        for p in parts:
            k, fn = ATOMS[p]
            if k < arity and any(t[k:]):
                continue  # lower-arity component: only visit each tuple once
            lhs, rhs = fn(qs, *t[:k])
            if lhs != rhs:
                note = p if len(parts) > 1 else ""
                col.add(tuple(qs.labels[i] for i in t[:k]), _lab(qs, lhs), _lab(qs, rhs), note)
    return col.report()


def check_local(qs: QuadraticSet, cond: str, t: tuple[Element, ...]) -> bool:
    """Whether ``cond`` holds at the single tuple ``t``."""
    idx = tuple(qs.idx(e) for e in t)
    for p in _components(cond):
        k, fn = ATOMS[p]
        if len(idx) != k:
            raise ValueError(f"{p} takes {k} arguments, got {len(idx)}")
        lhs, rhs = fn(qs, *idx)
        if lhs != rhs:
            return False
    return True


def local_table(qs: QuadraticSet, cond: str) -> dict[tuple[int, ...], bool]:
    k, fn = ATOMS[cond]
    return {t: (lambda s: s[0] == s[1])(fn(qs, *t)) for t in product(range(qs.n), repeat=k)}


def classify(qs: QuadraticSet, cap: int = DEFAULT_WITNESS_CAP) -> dict[str, ConditionReport | None]:
    """All structural predicates followed by all identities.

    2-cancellativity entries are None when r is not bijective.
    """
    from .qset import all_predicates

    out = all_predicates(qs, cap)
    for cond in CONDITIONS:
        out[cond] = check_condition(qs, cond, cap)
    return out


def profile(qs: QuadraticSet) -> dict[str, bool | None]:
    return {k: (None if v is None else v.holds) for k, v in classify(qs, cap=1).items()}


# ---------------------------------------------------------------------- suites


class _Suite:
    def __init__(self, name: str, qs: QuadraticSet):
        self.rep = SuiteReport(name, qs.name, True)
        self.qs = qs
        self._cache: dict[str, bool] = {}

    def __call__(self, cond: str) -> bool:
        if cond not in self._cache:
            if cond in CONDITIONS:
                value = check_condition(self.qs, cond, cap=1).holds
            else:
                value = predicate(self.qs, cond, cap=1).holds
            self._cache[cond] = value
            self.rep.verdicts[cond] = value
        return self._cache[cond]

    def hyp(self, name: str, value: bool) -> None:
        self.rep.hypotheses[name] = value
        self.rep.hypotheses_met = self.rep.hypotheses_met and value

    def clause(self, name: str, verdict: bool, detail: str = "") -> None:
        self.rep.clauses.append(Clause(name, bool(verdict), detail))

    def iff(self, name: str, a: bool, b: bool) -> None:
        self.clause(name, a == b, f"{a} <=> {b}")

    def implies(self, name: str, a: bool, b: bool) -> None:
        self.clause(name, (not a) or b, f"{a} => {b}")

    def all_equal(self, name: str, conds: list[str]) -> None:
        vals = {c: self(c) for c in conds}
        self.clause(name, len(set(vals.values())) == 1, ", ".join(f"{c}={v}" for c, v in vals.items()))


def _pointwise(qs: QuadraticSet, lhs: str, rhs: tuple[str, ...]) -> tuple[bool, str]:
    """``lhs(t) <=> and(rhs(t))`` at every triple t."""
    left = local_table(qs, lhs)
    right = [local_table(qs, c) for c in rhs]
    bad = [t for t in left if left[t] != all(tab[t] for tab in right)]
    if bad:
        t = bad[0]
        return False, f"{len(bad)} mismatches, first at {tuple(qs.labels[i] for i in t)}"
    return True, f"checked {len(left)} triples"


def _lemma_ybe(s: _Suite) -> None:
    s.iff("ybe <=> l1 & r1 & lr3", s("ybe"), s("l1") and s("r1") and s("lr3"))
    ok, detail = _pointwise(s.qs, "ybe", ("l1", "lr3", "r1"))
    s.clause("pointwise ybe <=> l1 & lr3 & r1", ok, detail)
    s.iff("ybe <=> r1 & l2", s("ybe"), s("r1") and s("l2"))
    s.iff("ybe <=> l1 & r2", s("ybe"), s("l1") and s("r2"))


def _l2_decomposition(s: _Suite) -> None:
    s.iff("l2 <=> l1 & lr3", s("l2"), s("l1") and s("lr3"))
    s.iff("r2 <=> r1 & lr3", s("r2"), s("r1") and s("lr3"))
    for lhs, rhs in (("l2", ("l1", "lr3")), ("r2", ("lr3", "r1"))):
        ok, detail = _pointwise(s.qs, lhs, rhs)
        s.clause(f"pointwise {lhs} <=> {' & '.join(rhs)}", ok, detail)


def _quantum_binomial(s: _Suite) -> None:
    for h in ("nondegenerate", "involutive", "square_free"):
        s.hyp(h, s(h))
    s.all_equal("ybe, l1, l2, r1, r2, lr3, csl all equivalent", ["ybe", "l1", "l2", "r1", "r2", "lr3", "csl"])
    s.implies("ybe => cyclic & lri", s("ybe"), s("cyclic") and s("lri"))


def _lri_two_of_three(s: _Suite) -> None:
    a = s("involutive")
    b = s("nondegenerate") and s("cyclic")
    c = s("lri")
    s.implies("involutive & (nondegenerate & cyclic) => lri", a and b, c)
    s.implies("(nondegenerate & cyclic) & lri => involutive", b and c, a)
    s.implies("involutive & lri => nondegenerate & cyclic", a and c, b)
    b2 = s("nondegenerate") and s("cl1")
    s.implies("involutive & (nondegenerate & cl1) => lri", a and b2, c)
    s.implies("(nondegenerate & cl1) & lri => involutive", b2 and c, a)
    s.all_equal("lri_left <=> lri_right <=> lri", ["lri_left", "lri_right", "lri"])
    s.implies("lri => nondegenerate", c, s("nondegenerate"))


def _cyclic_under_lri(s: _Suite) -> None:
    s.hyp("lri", s("lri"))
    s.all_equal("cl1, cl2, cr1, cr2, cyclic all equivalent", ["cl1", "cl2", "cr1", "cr2", "cyclic"])
    s.iff("l1 <=> r1", s("l1"), s("r1"))
    s.iff("l2 <=> r2", s("l2"), s("r2"))


def _squarefree_implications(s: _Suite) -> None:
    s.hyp("nondegenerate", s("nondegenerate"))
    s.hyp("square_free", s("square_free"))
    s.implies("l1 => cl1", s("l1"), s("cl1"))
    s.implies("r1 => cr1", s("r1"), s("cr1"))
    s.implies("lr3 => cl1 & cr1", s("lr3"), s("cl1") and s("cr1"))
    s.implies("csl => cl2", s("csl"), s("cl2"))
    s.implies("csr => cr2", s("csr"), s("cr2"))
    any_of = any(s(c) for c in ("l1", "r1", "lr3", "csl", "csr"))
    s.implies("one of l1, r1, lr3, csl, csr => (involutive <=> lri)", any_of, s("involutive") == s("lri"))
    s.implies(
        "one of l1, r1, lr3, csl, csr and involutive => cyclic",
        any_of and s("involutive"),
        s("cyclic"),
    )
    s.implies("involutive & lr3 => ybe & lri", s("involutive") and s("lr3"), s("ybe") and s("lri"))


def _csl_symmetric(s: _Suite) -> None:
    for h in ("nondegenerate", "square_free", "involutive"):
        s.hyp(h, s(h))
    s.iff("ybe <=> csl", s("ybe"), s("csl"))
    s.implies("ybe => cyclic & lri", s("ybe"), s("cyclic") and s("lri"))


def _mixed_identities(qs: QuadraticSet) -> tuple[bool, str]:
    """(^x z)^y = ^{x^y}(z^{y^x}) and ^x(z^y) = (^{^y x} z)^{^x y} for all x, y, z."""
    lt, rt = qs.lt, qs.rt
    for x, y, z in product(range(qs.n), repeat=3):
        if rt[lt[x][z]][y] != lt[rt[x][y]][rt[z][rt[y][x]]]:
            return False, f"first identity fails at {qs.labels[x]},{qs.labels[y]},{qs.labels[z]}"
        if lt[x][rt[z][y]] != rt[lt[lt[y][x]][z]][lt[x][y]]:
            return False, f"second identity fails at {qs.labels[x]},{qs.labels[y]},{qs.labels[z]}"
    return True, ""


def _csl_l1_identities(s: _Suite, degree: int) -> None:
    from .monoid import TruncatedMonoid, cancellation_test

    s.hyp("involutive", s("involutive"))
    s.hyp("lri", s("lri"))
    s.clause("nondegenerate & cyclic", s("nondegenerate") and s("cyclic"))
    s.iff("csl <=> l1", s("csl"), s("l1"))
    ok, detail = _mixed_identities(s.qs)
    s.implies("csl => mixed action identities", s("csl"), ok)
    if ok is False and detail:
        s.rep.clauses[-1].detail += f"; {detail}"
    canc = s("2cancellative") and cancellation_test(TruncatedMonoid(s.qs, max(3, degree)), 3).holds
    s.rep.verdicts["length3_cancellation_setting"] = canc
    if canc:
        s.all_equal("cancellative setting: csl, l1, ybe equivalent", ["csl", "l1", "ybe"])


def _cancellative_lemma(s: _Suite, degree: int) -> None:
    from .monoid import TruncatedMonoid, cancellation_test

    s.hyp("2cancellative", s("2cancellative"))
    canc = cancellation_test(TruncatedMonoid(s.qs, max(3, degree)), 3)
    s.hyp("length3_cancellation", canc.holds)
    lr = s("l1") and s("r1")
    s.all_equal("l2, r2, ybe equivalent", ["l2", "r2", "ybe"])
    s.iff("l1 & r1 <=> ybe", lr, s("ybe"))
    if s("nondegenerate") and s("involutive"):
        s.all_equal("nondegenerate involutive: l1, r1, ybe equivalent", ["l1", "r1", "ybe"])


SUITES = (
    "lemma_ybe",
    "l2_decomposition",
    "quantum_binomial",
    "lri_two_of_three",
    "cyclic_equivalence_under_lri",
    "squarefree_implications",
    "csl_symmetric",
    "csl_l1_identities",
    "cancellative_lemma",
)


def equivalence_suite(qs: QuadraticSet, suite: str, strict: bool = True, degree: int = 3) -> SuiteReport:
    """Run a named implication suite.

    Clauses are evaluated whether or not hypotheses hold. If the hypotheses hold
    and a clause fails, :class:`TheoremViolation` is raised unless ``strict`` is
    false.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if suite in ("csl_l1_identities", "cancellative_lemma") and not qs.is_bijective:
        s = _Suite(suite, qs)
        s.hyp("bijective", False)
        return s.rep
    s = _Suite(suite, qs)
    runner = {
        "lemma_ybe": _lemma_ybe,
        "l2_decomposition": _l2_decomposition,
        "quantum_binomial": _quantum_binomial,
        "lri_two_of_three": _lri_two_of_three,
        "cyclic_equivalence_under_lri": _cyclic_under_lri,
        "squarefree_implications": _squarefree_implications,
        "csl_symmetric": _csl_symmetric,
    }.get(suite)
    if runner is not None:
        runner(s)
    elif suite == "csl_l1_identities":
        _csl_l1_identities(s, degree)
    else:
        _cancellative_lemma(s, degree)
    if strict and s.rep.hypotheses_met and not s.rep.passed:
        raise TheoremViolation(s.rep)
    return s.rep
