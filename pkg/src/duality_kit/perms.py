"""Permutations of {1..n} in cycle notation, and their action on segments.

Cycles are written without commas, ``(123)`` meaning 1 -> 2 -> 3 -> 1, and
products compose like functions: ``(123)(23) == (12)`` because ``(23)``
acts first.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence, TypeVar

from .modular import Segment

K = TypeVar("K", bound=Hashable)


@dataclass(frozen=True)
class Permutation:
    """``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> Permutation:
        images = list(range(1, n + 1))
        used: set[int] = set()
        for cycle in cycles:
            for sym in cycle:
                if not 1 <= sym <= n:
                    raise ValueError(f"symbol {sym} out of range 1..{n}")
                if sym in used:
                    raise ValueError(f"symbol {sym} repeated across cycles")
                used.add(sym)
            for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return perm_compose(self, other)

    def inverse(self) -> Permutation:
        return perm_inverse(self)

    @property
    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        return [c for c in cycle_decomposition(self) if len(c) > 1]

    def order(self) -> int:
        out = 1
        for c in cycle_decomposition(self):
            out = out * len(c) // _gcd(out, len(c))
        return out

    def __str__(self) -> str:
        return print_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({print_cycles(self)}, n={self.n})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse ``id``, ``(123)``, ``(1 3)(2 4)`` or ``(1,10)``.

    Inside a cycle, symbols are split on spaces or commas when present;
    otherwise each digit is one symbol, which only makes sense for n <= 9.
    """
    stripped = text.strip()
    if stripped in ("id", "e", "()", ""):
        return Permutation.identity(n)
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[\s,]", body):
            tokens = [t for t in re.split(r"[\s,]+", body) if t]
        else:
            if n > 9 and len(body) > 1:
                raise ValueError(f"ambiguous cycle {body!r} for degree {n}; separate symbols with spaces")
            tokens = list(body)
        if not all(t.isdigit() for t in tokens):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycle = [int(t) for t in tokens]
        if len(set(cycle)) != len(cycle):
            raise ValueError(f"symbol repeated within cycle ({body})")
        cycles.append(cycle)
    return Permutation.from_cycles(cycles, n)


def print_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "id"
    sep = "" if p.n <= 9 else " "
    return "".join("(" + sep.join(str(v) for v in c) + ")" for c in cycles)


def perm_compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` after ``q``."""
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} vs {q.n}")
    return Permutation(tuple(p(q(i)) for i in range(1, p.n + 1)))


def perm_inverse(p: Permutation) -> Permutation:
    images = [0] * p.n
    for i, v in enumerate(p.images, 1):
        images[v - 1] = i
    return Permutation(tuple(images))


def permute_segment(sigma: Permutation, y: Segment) -> Segment:
    """Left action: position i of the result holds ``y[sigma^-1(i)]``.

    Equivalently the entry at position j moves to position sigma(j).
    """
    if sigma.n != len(y):
        raise ValueError(f"degree mismatch: permutation of {sigma.n}, segment of length {len(y)}")
    out = [0] * len(y)
    for j, v in enumerate(y.entries, 1):
        out[sigma(j) - 1] = v
    return Segment(tuple(out), y.modulus)


def symmetric_group(n: int) -> list[Permutation]:
    """All of Sigma_n, identity first, in lexicographic order of image lists."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def cycles_of_mapping(mapping: Mapping[K, K], key: Callable[[K], object] | None = None) -> list[tuple[K, ...]]:
    """Disjoint cycles of a bijection given as a dict.

    Each cycle starts at its least element; cycles are sorted by length,
    then by least element. Fixed points come out as 1-cycles.
    """
    key = key or (lambda x: x)
    if set(mapping.values()) != set(mapping) or len(set(mapping.values())) != len(mapping):
        raise ValueError("mapping is not a bijection of its domain")
    seen: set = set()
    cycles = []
    for start in sorted(mapping, key=key):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        x = mapping[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = mapping[x]
        cycles.append(tuple(cycle))
    cycles.sort(key=lambda c: (len(c), key(c[0])))
    return cycles


def cycle_decomposition(f) -> list[tuple]:
    """Cycles of a :class:`Permutation`, a mapping table, or a plain dict."""
    if isinstance(f, Permutation):
        return cycles_of_mapping({i: f(i) for i in range(1, f.n + 1)})
    if isinstance(f, Mapping):
        return cycles_of_mapping(f)
    if hasattr(f, "as_dict"):
        return cycles_of_mapping(f.as_dict())
    raise TypeError(f"cannot decompose {type(f).__name__}")
