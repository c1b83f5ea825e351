"""Command-line driver.

Exit codes: 0 when everything requested holds, 1 for a semantic failure
(a condition is false, sets are not isomorphic, a profile drifted), 2 for
unreadable or malformed input and 3 when a search budget is exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from .conditions import CONDITIONS, check_condition, classify
from .errors import BraidSetError, BudgetExceeded, PrerequisiteFailed
from .extension import (
    MIXED_CONDITIONS,
    ExtensionSet,
    check_mixed,
    enumerate_extensions,
    factorization_check,
    load_ground,
    to_ground_document,
)
from .graph import export_dot, find_isomorphism, gamma_graph, orbit_partition
from .monoid import MONOID_CHECKS, TruncatedMonoid, cancellation_test, verify_monoid
from .qset import PREDICATES, QuadraticSet, load_solution, predicate

OK, FAIL, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_json(ref: str) -> tuple[Any, Path | None]:
    path = Path(ref)
    if path.exists():
        try:
            return json.loads(path.read_text(encoding="utf-8")), path.parent
        except json.JSONDecodeError as exc:
            raise InputError(f"{ref}: not valid JSON ({exc})") from None
    if ref in catalog.CATALOG:
        return catalog.CATALOG[ref].document(), None
    raise InputError(f"{ref}: no such file or catalog entry")


def _load_any(ref: str) -> QuadraticSet | ExtensionSet:
    doc, base = _read_json(ref)
    if isinstance(doc, dict) and "x_solution" in doc:
        return load_ground(doc, base)
    return load_solution(doc)


def _load_solution(ref: str) -> QuadraticSet:
    payload = _load_any(ref)
    return payload.z if isinstance(payload, ExtensionSet) else payload


def _split(text: str | None) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()] if text else []


def _dump(obj: Any) -> None:
    sys.stdout.write(catalog.canonical(obj))


# ---------------------------------------------------------------- commands


def cmd_check(args) -> int:
    qs = _load_solution(args.file)
    wanted = _split(args.conditions)
    if wanted:
        reports = {}
        for c in wanted:
            if c in PREDICATES:
                reports[c] = predicate(qs, c)
            elif c in CONDITIONS:
                reports[c] = check_condition(qs, c)
            else:
                raise InputError(f"unknown condition {c!r}")
    else:
        reports = classify(qs)
    if args.json:
        _dump({k: (None if v is None else v.to_dict()) for k, v in reports.items()})
    else:
        print(f"{qs.name}: {qs.n} elements")
        for k, v in reports.items():
            print(f"  {k}: n/a (r is not bijective)" if v is None else "  " + v.summary())
    if not wanted:
        return OK
    return OK if all(v is not None and v.holds for v in reports.values()) else FAIL


def cmd_monoid(args) -> int:
    qs = _load_solution(args.file)
    wanted = _split(args.verify) or list(MONOID_CHECKS)
    known = set(MONOID_CHECKS) | {"nondegenerate", "involutive", "cancellation"}
    unknown = [w for w in wanted if w not in known]
    if unknown:
        raise InputError(f"unknown monoid checks: {', '.join(unknown)}")
    tm = TruncatedMonoid(qs, args.degree, budget=args.budget)
    base_involutive = predicate(qs, "involutive", cap=1).holds
    notes = []
    checks = [w for w in wanted if w != "cancellation"]
    if base_involutive:
        if "involutive" not in checks:
            checks.append("involutive")
    else:
        checks = [w for w in checks if w != "involutive"]
        notes.append("base not involutive: involutivity check skipped")
    braided = check_condition(qs, "ybe", cap=1).holds
    if not braided:
        notes.append("base does not satisfy the braid relation: actions extended without the prerequisite")
    reports = dict(verify_monoid(tm, args.degree, checks, require_braided=False))
    if "cancellation" in wanted:
        # bounded-degree search only; a pass says nothing beyond the truncation
        for length in range(2, args.degree + 1):
            reports[f"cancellation_{length}"] = cancellation_test(tm, length)
    ok = all(r.holds for r in reports.values())
    if args.json:
        _dump(
            {
                "name": qs.name,
                "degree": args.degree,
                "class_counts": tm.class_counts(),
                "checks": {k: v.to_dict() for k, v in reports.items()},
                "notes": notes,
            }
        )
    else:
        print(f"{qs.name}: classes per degree {tm.class_counts()}")
        for rep in reports.values():
            print("  " + rep.summary())
        for n in notes:
            print(f"note: {n}")
        print("all pass" if ok else "some checks fail")
    return OK if ok else FAIL


def _part_ref(ref: str) -> str:
    path = Path(ref)
    return str(path.resolve()) if path.exists() else ref


def cmd_extend(args) -> int:
    doc, base = _read_json(args.groundfile)
    if not isinstance(doc, dict):
        raise InputError("a ground document must be a JSON object")
    doc = dict(doc)
    doc["x_solution"] = _part_ref(args.xfile)
    doc["y_solution"] = _part_ref(args.yfile)
    ext = load_ground(doc, base)
    ybe = check_condition(ext.z, "ybe")
    mixed = {c: check_mixed(ext, c) for c in MIXED_CONDITIONS}
    orbits = orbit_partition(ext.z)
    fact = factorization_check(ext, args.degree) if args.degree > 0 else {}
    if args.json:
        _dump(
            {
                "name": ext.z.name,
                "ybe": ybe.to_dict(),
                "mixed": {k: v.to_dict() for k, v in mixed.items()},
                "orbits": orbits,
                "factorization": {k: v.to_dict() for k, v in fact.items()},
            }
        )
    else:
        print(f"YBE: {str(ybe.holds).lower()}; stu: {str(mixed['stu'].holds).lower()}; orbits: {len(orbits)}")
        for rep in mixed.values():
            print("  " + rep.summary())
        for block in orbits:
            print("  orbit: " + " ".join(block))
        for key, rep in fact.items():
            print(f"  factorization[{key}] at degree {args.degree}: " + rep.summary().split(": ", 1)[1])
    return OK if ybe.holds and all(r.holds for r in fact.values()) else FAIL


def _family(ref: str | None, xq: QuadraticSet, yq: QuadraticSet) -> dict:
    if ref in (None, "admissible"):
        if (xq.name, yq.name) != ("twelve", "six"):
            raise InputError("the built-in family only fits twelve and six; pass --family FILE")
        return catalog.admissible_family()
    doc, _ = _read_json(ref)
    if not isinstance(doc, dict):
        raise InputError("a family document must be a JSON object")
    return doc


def cmd_enumerate(args) -> int:
    xq, yq = _load_solution(args.xfile), _load_solution(args.yfile)
    filters = _split(args.filter)
    for f in filters:
        if f not in MIXED_CONDITIONS and f not in CONDITIONS and f not in PREDICATES:
            raise InputError(f"unknown filter {f!r}")
    family = _family(args.family, xq, yq) if args.mode == "permutation_family" else None
    found = []
    for ext in enumerate_extensions(xq, yq, filters, args.mode, family, budget=args.budget):
        found.append(ext)
        if args.limit is not None and len(found) >= args.limit:
            break
    if args.json:
        _dump([to_ground_document(e) for e in found])
    else:
        for i, ext in enumerate(found):
            rows = [
                f"{a}.{x}->({ext.x_part.labels[ext.ground.left[ai][xi]]},{ext.y_part.labels[ext.ground.right[ai][xi]]})"
                for ai, a in enumerate(ext.y_part.labels)
                for xi, x in enumerate(ext.x_part.labels)
            ]
            print(f"#{i}: " + " ".join(rows) if len(rows) <= 24 else f"#{i}: {ext.z.name}")
        print(f"{len(found)} extension(s)")
    return OK


def cmd_graph(args) -> int:
    qs = _load_solution(args.file)
    text = export_dot(gamma_graph(qs), self_loops=args.self_loops)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return OK


def cmd_iso(args) -> int:
    q1, q2 = _load_solution(args.file1), _load_solution(args.file2)
    phi = find_isomorphism(q1, q2, budget=args.budget)
    if phi is None:
        print("not isomorphic")
        return FAIL
    print("isomorphic")
    print("  " + " ".join(f"{a}->{b}" for a, b in phi.items()))
    return OK


def cmd_catalog(args) -> int:
    if not args.key:
        for entry in catalog.CATALOG.values():
            print(f"{entry.key:<20} {entry.kind:<10} {entry.description}")
        return OK
    if args.key not in catalog.CATALOG:
        raise InputError(f"no catalog entry {args.key!r}")
    ok, message = catalog.check_entry(args.key)
    print(message)
    return OK if ok else FAIL


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braidset", description="Check and build set-theoretic braided sets.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="evaluate conditions on a quadratic set")
    c.add_argument("file")
    c.add_argument("--conditions", help="comma-separated condition names (default: full profile)")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("monoid", help="verify monoid-level axioms up to a degree")
    m.add_argument("file")
    m.add_argument("--degree", type=int, default=3)
    m.add_argument("--verify", help="comma-separated from " + ",".join(MONOID_CHECKS) + ",nondegenerate,involutive,cancellation")
    m.add_argument("--budget", type=int, default=2_000_000, help="maximum number of words to explore")
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_monoid)

    e = sub.add_parser("extend", help="build Z = X ⊔ Y from ground actions")
    e.add_argument("xfile")
    e.add_argument("yfile")
    e.add_argument("groundfile")
    e.add_argument("--degree", type=int, default=3, help="degree for the factorization check (0 skips it)")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_extend)

    n = sub.add_parser("enumerate", help="list regular extensions passing filters")
    n.add_argument("xfile")
    n.add_argument("yfile")
    n.add_argument("--filter", help="comma-separated conditions on Z or mixed conditions")
    n.add_argument("--mode", choices=("full_table", "permutation_family"), default="full_table")
    n.add_argument("--limit", type=int)
    n.add_argument("--family", help="JSON with L_alpha and L_x candidate lists, or 'admissible'")
    n.add_argument("--budget", type=int, default=9, help="largest |X|·|Y| for full_table mode")
    n.add_argument("--json", action="store_true")
    n.set_defaults(func=cmd_enumerate)

    g = sub.add_parser("graph", help="export the labelled graph of the left actions as DOT")
    g.add_argument("file")
    g.add_argument("-o", "--output")
    g.add_argument("--self-loops", action="store_true")
    g.set_defaults(func=cmd_graph)

    i = sub.add_parser("iso", help="decide isomorphism of two quadratic sets")
    i.add_argument("file1")
    i.add_argument("file2")
    i.add_argument("--budget", type=int, default=2_000_000)
    i.set_defaults(func=cmd_iso)

    k = sub.add_parser("catalog", help="list bundled examples or check one against its pinned profile")
    k.add_argument("key", nargs="?")
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except PrerequisiteFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    except (BraidSetError, InputError, ValueError) as exc:
        code = getattr(exc, "exit_code", INPUT_ERROR)
        print(f"error: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
