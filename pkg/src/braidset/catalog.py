"""Bundled examples with pinned expected profiles.

Each entry is a JSON document in ``data/``. Its profile (every predicate and
identity, orbits and, for extensions, the mixed conditions) is pinned in
``data/profiles/<key>.json``. Run ``python -m braidset.catalog --regenerate``
after a deliberate change of the pipeline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Any

from . import perm as P
from .conditions import classify
from .extension import ExtensionSet, automorphism_action_check, check_mixed, MIXED_CONDITIONS, load_ground
from .graph import orbit_partition
from .qset import QuadraticSet, load_solution, pair_orbits

PROFILE_WITNESS_CAP = 3


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    description: str
    kind: str  # "solution" or "extension"

    def document(self) -> dict:
        return json.loads(_data_file(f"{self.key}.json").read_text())

    def load(self) -> QuadraticSet | ExtensionSet:
        if self.kind == "solution":
            return load_solution(self.document())
        return load_ground(self.document())

    def expected_profile_text(self) -> str:
        return _data_file(f"profiles/{self.key}.json").read_text()


_ENTRIES = [
    CatalogEntry("trivial_ab", "flip map r(x,y) = (y,x) on {a,b}", "solution"),
    CatalogEntry("trivial_c", "flip map on the one-point set {c}", "solution"),
    CatalogEntry("identity_ab", "identity map on {a,b}: braided but degenerate (negative control)", "solution"),
    CatalogEntry("rho_cycle", "r(a,b) = (ρ(b), a) with ρ = (x y z): braided, nondegenerate, not 2-cancellative", "solution"),
    CatalogEntry("l1r1_nonbraided", "permutational map with L = (x z y), R = (x z): l1 and r1 hold, braid relation fails", "solution"),
    CatalogEntry("perm_symmetric", "permutational map with f = g^-1: symmetric", "solution"),
    CatalogEntry("perm_commuting", "permutational map with f = g = (x y z): braided, not involutive", "solution"),
    CatalogEntry("sqfree_three", "square-free symmetric set on three points with L_z = (x y)", "solution"),
    CatalogEntry("twelve", "square-free symmetric set on 12 points, three orbits of four, rebuilt from its left actions", "solution"),
    CatalogEntry("six", "square-free symmetric set on {a1,a2,a3,b1,b2,b3} with L_a = (b1 b2 b3), L_b = (a1 a2 a3)", "solution"),
    CatalogEntry("ext_r1", "regular extension of twelve by six, x⊔y acted on by an 8-cycle", "extension"),
    CatalogEntry("ext_r2", "regular extension of twelve by six, x⊔y acted on by two 4-cycles", "extension"),
    CatalogEntry("ext_r3", "regular extension of twelve by six where every action is an automorphism", "extension"),
    CatalogEntry("trivial_extension", "trivial_ab and trivial_c glued by the flip", "extension"),
    CatalogEntry("identity_extension", "trivial parts glued by the identity on mixed pairs: not regular (negative control)", "solution"),
]

CATALOG: dict[str, CatalogEntry] = {e.key: e for e in _ENTRIES}
SOLUTION_FILES = {e.key for e in _ENTRIES if e.kind == "solution"}


def _data_file(name: str):
    return resources.files("braidset") / "data" / name


def load_entry(key: str) -> QuadraticSet | ExtensionSet:
    try:
        return CATALOG[key].load()
    except KeyError:
        raise KeyError(f"no catalog entry {key!r}") from None


def load_entry_solution(key: str) -> QuadraticSet:
    payload = load_entry(key)
    return payload.z if isinstance(payload, ExtensionSet) else payload


def solutions() -> dict[str, QuadraticSet]:
    """Every catalog payload as a quadratic set (extensions contribute Z)."""
    return {k: load_entry_solution(k) for k in CATALOG}


def solution_profile(qs: QuadraticSet) -> dict[str, Any]:
    reports = classify(qs, cap=PROFILE_WITNESS_CAP)
    out: dict[str, Any] = {
        "name": qs.name,
        "size": qs.n,
        "conditions": {k: (None if v is None else v.to_dict()) for k, v in reports.items()},
        "orbits": orbit_partition(qs),
    }
    if qs.is_bijective:
        out["pair_orbit_lengths"] = sorted(len(o) for o in pair_orbits(qs))
    return out


def profile_of(payload: QuadraticSet | ExtensionSet) -> dict[str, Any]:
    if isinstance(payload, QuadraticSet):
        return {"kind": "solution", **solution_profile(payload)}
    return {
        "kind": "extension",
        **solution_profile(payload.z),
        "mixed": {c: check_mixed(payload, c, cap=PROFILE_WITNESS_CAP).to_dict() for c in MIXED_CONDITIONS},
        "automorphisms": automorphism_action_check(payload).to_dict(),
    }


def canonical(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def check_entry(key: str) -> tuple[bool, str]:
    """Compare the freshly computed profile with the pinned one."""
    entry = CATALOG[key]
    got = canonical(profile_of(entry.load()))
    want = entry.expected_profile_text()
    if got == want:
        return True, "profile matches"
    import difflib

    diff = "".join(difflib.unified_diff(want.splitlines(True), got.splitlines(True), "expected", "computed", n=1))
    return False, "profile drift:\n" + diff


def regenerate(directory: Path | None = None) -> None:
    target = directory or Path(str(_data_file("profiles")))
    target.mkdir(parents=True, exist_ok=True)
    for key, entry in CATALOG.items():
        (target / f"{key}.json").write_text(canonical(profile_of(entry.load())), encoding="utf-8")


# ------------------------------------------------ family of ground actions


def admissible_family(include_identity_shift: bool = True) -> dict[str, list[dict[str, tuple[int, ...]]]]:
    """Candidate left actions for extending ``twelve`` by ``six``.

    ``L_alpha`` candidates combine an action on x⊔y (an 8-cycle power, a pair
    of 4-cycles, or four transpositions pairing x_j with a shifted y) with one
    of eight action pairs on z (α and β may differ there). ``L_x`` candidates
    pair an action of x, y letters on Y with a power of f∘g for the z letters.
    With ``include_identity_shift`` the unshifted transpositions (x_j y_j) are
    among the candidates.
    """
    X = load_entry_solution("twelve")
    Y = load_entry_solution("six")
    xi, yi = X.index, Y.index
    theta = P.parse_cycles("(x1 y1 x2 y2 x3 y3 x4 y4)", xi)
    on_xy = [P.power(theta, k) for k in (1, 3, 5, 7)]
    four = P.parse_cycles("(x1 y1 x3 y3)(x2 y2 x4 y4)", xi)
    on_xy += [four, P.inverse(four)]
    shifts = range(0, 4) if include_identity_shift else range(1, 4)
    for i in shifts:
        on_xy.append(P.parse_cycles("".join(f"(x{j} y{(j - 1 + i) % 4 + 1})" for j in range(1, 5)), xi))
    tau = P.parse_cycles("(z1 z2 z3 z4)", xi)
    ident = P.identity(X.n)

    def c(text: str) -> tuple[int, ...]:
        return P.parse_cycles(text, xi)

    on_z = [
        (tau, P.inverse(tau)),
        (P.inverse(tau), tau),
        (c("(z1 z2)(z3 z4)"),) * 2,
        (c("(z1 z4)(z2 z3)"),) * 2,
        (c("(z1 z3)"),) * 2,
        (c("(z2 z4)"),) * 2,
        (c("(z1 z3)(z2 z4)"), ident),
        (ident, c("(z1 z3)(z2 z4)")),
    ]
    left_alpha = []
    for a, (za, zb) in product(on_xy, on_z):
        la = P.compose(a, za)
        lb = P.compose(a, zb)
        left_alpha.append({**{f"a{i}": la for i in (1, 2, 3)}, **{f"b{i}": lb for i in (1, 2, 3)}})
    pi = P.parse_cycles("(a1 b1 a2 b2 a3 b3)", yi)
    g = P.parse_cycles("(b1 b2 b3)", yi)
    on_y = [P.power(pi, q) for q in (1, 3, 5)]
    for k in range(3):
        gk = P.power(g, k)
        on_y.append(P.parse_cycles("".join(f"(a{j} {Y.labels[gk[yi[f'b{j}']]]})" for j in (1, 2, 3)), yi))
    fg = P.parse_cycles("(a1 a2 a3)(b1 b2 b3)", yi)
    left_x = []
    for w, k in product(on_y, range(3)):
        z_act = P.power(fg, k)
        left_x.append({**{f"{s}{i}": w for s in "xy" for i in range(1, 5)}, **{f"z{i}": z_act for i in range(1, 5)}})
    return {"L_alpha": left_alpha, "L_x": left_x}


if __name__ == "__main__":
    import sys

    if "--regenerate" in sys.argv:
        regenerate()
        print("profiles regenerated")
