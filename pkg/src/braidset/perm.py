"""Permutations of a finite labelled carrier, stored as index tuples."""

from __future__ import annotations

import re
from collections.abc import Mapping, Sequence

from .errors import MalformedDocument, NotAPermutation, UnknownLabel

Perm = tuple[int, ...]

_CYCLE = re.compile(r"\(([^()]*)\)")


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(*perms: Perm) -> Perm:
    """Right-to-left composition: ``compose(f, g)(x) == f[g[x]]``."""
    out = perms[-1]
    for p in reversed(perms[:-1]):
        out = tuple(p[i] for i in out)
    return out


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = inverse(p), -k
    out = identity(len(p))
    for _ in range(k):
        out = compose(p, out)
    return out


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Non-trivial cycles, each starting at its smallest point."""
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    lengths = [len(c) for c in cycles(p)]
    lengths += [1] * (len(p) - sum(lengths))
    return tuple(sorted(lengths, reverse=True))


def parse_cycles(text: str, index: Mapping[str, int], n: int | None = None) -> Perm:
    """Parse space-separated cycle notation such as ``"(a b c)(d e)"``.

    Omitted points are fixed. ``index`` maps labels to positions and ``n``
    is the carrier size (defaults to ``len(index)``).
    """
    if not isinstance(text, str):
        raise MalformedDocument(f"cycle notation must be a string, got {text!r}")
    n = len(index) if n is None else n
    stripped = _CYCLE.sub("", text).strip()
    if stripped not in ("", "id"):
        raise MalformedDocument(f"cannot parse cycle notation {text!r}")
    image = list(range(n))
    used: set[int] = set()
    for body in _CYCLE.findall(text):
        pts = body.split()
        for lab in pts:
            if lab not in index:
                raise UnknownLabel(f"unknown label {lab!r} in cycle {text!r}")
        idx = [index[lab] for lab in pts]
        if len(set(idx)) != len(idx) or used & set(idx):
            raise NotAPermutation(f"label repeated in cycle notation {text!r}")
        used.update(idx)
        for a, b in zip(idx, idx[1:] + idx[:1]):
            image[a] = b
    return tuple(image)


def format_cycles(p: Perm, labels: Sequence[str]) -> str:
    cyc = cycles(p)
    if not cyc:
        return "()"
    return "".join("(" + " ".join(labels[i] for i in c) + ")" for c in cyc)


def all_permutations(n: int):
    from itertools import permutations

    return permutations(range(n))
