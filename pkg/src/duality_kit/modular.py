"""Residues mod m, pitch-class segments, and invertible affine maps on them.

Everything here is an immutable value. Composition is ordinary function
composition: ``compose(f, g)`` applies ``g`` first.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_MODULUS = 12


@dataclass(frozen=True, order=True)
class PitchClass:
    value: int
    modulus: int = DEFAULT_MODULUS

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: PitchClass) -> None:
        if other.modulus != self.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other: PitchClass) -> PitchClass:
        self._check(other)
        return PitchClass(self.value + other.value, self.modulus)

    def __sub__(self, other: PitchClass) -> PitchClass:
        self._check(other)
        return PitchClass(self.value - other.value, self.modulus)

    def __neg__(self) -> PitchClass:
        return PitchClass(-self.value, self.modulus)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class Segment:
    """An ordered n-tuple of residues mod ``modulus``.

    Duplicated entries are allowed; operations that need distinct entries
    check :attr:`distinct` themselves.
    """

    entries: tuple[int, ...]
    modulus: int = DEFAULT_MODULUS

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if not self.entries:
            raise ValueError("a segment needs at least one entry")
        object.__setattr__(self, "entries", tuple(int(v) % self.modulus for v in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __lt__(self, other: Segment) -> bool:
        return (len(self), self.entries) < (len(other), other.entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.entries) + ")"

    def __repr__(self) -> str:
        return f"Segment{self}" if self.modulus == DEFAULT_MODULUS else f"Segment{self} mod {self.modulus}"

    @property
    def distinct(self) -> bool:
        return len(set(self.entries)) == len(self.entries)

    @property
    def pitch_classes(self) -> tuple[PitchClass, ...]:
        return tuple(PitchClass(v, self.modulus) for v in self.entries)

    @property
    def underlying_set(self) -> frozenset[int]:
        return frozenset(self.entries)


def make_segment(values: Sequence[int], m: int = DEFAULT_MODULUS) -> Segment:
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if len(values) == 0:
        raise ValueError("a segment needs at least one entry")
    return Segment(tuple(values), m)


_SEGMENT_RE = re.compile(r"^\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*$")


def parse_segment(text: str, m: int = DEFAULT_MODULUS) -> Segment:
    """Parse ``(0,4,7)``; spaces are tolerated anywhere."""
    match = _SEGMENT_RE.match(text)
    if not match:
        raise ValueError(f"malformed segment: {text!r}")
    return make_segment([int(v) for v in match.group(1).split(",")], m)


@dataclass(frozen=True)
class AffineMap:
    """The map k -> a*k + b on Z_m, with a a unit mod m."""

    a: int
    b: int
    modulus: int = DEFAULT_MODULUS

    def __post_init__(self):
        m = self.modulus
        if m < 1:
            raise ValueError(f"modulus must be >= 1, got {m}")
        object.__setattr__(self, "a", self.a % m)
        object.__setattr__(self, "b", self.b % m)
        if math.gcd(self.a, m) != 1:
            raise ValueError(f"{self.a} is not invertible mod {m}")

    def __call__(self, x):
        if isinstance(x, Segment):
            return affine_apply(self, x)
        return (self.a * int(x) + self.b) % self.modulus

    def __mul__(self, other: AffineMap) -> AffineMap:
        return affine_compose(self, other)

    @property
    def is_identity(self) -> bool:
        return self.a == 1 % self.modulus and self.b == 0

    @property
    def label(self) -> str:
        m = self.modulus
        if self.a == 1 % m:
            return f"T{self.b}"
        if self.a == (-1) % m:
            return f"I{self.b}"
        return f"A[{self.a},{self.b}]"

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"AffineMap({self.label}, m={self.modulus})"


def T(j: int, m: int = DEFAULT_MODULUS) -> AffineMap:
    return AffineMap(1, j, m)


def I(j: int, m: int = DEFAULT_MODULUS) -> AffineMap:  # noqa: E743
    return AffineMap(-1, j, m)


def affine_apply(f: AffineMap, s: Segment) -> Segment:
    if f.modulus != s.modulus:
        raise ValueError(f"modulus mismatch: map mod {f.modulus}, segment mod {s.modulus}")
    return Segment(tuple(f.a * v + f.b for v in s.entries), s.modulus)


def affine_compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """``f`` after ``g``: k -> f(g(k))."""
    if f.modulus != g.modulus:
        raise ValueError(f"modulus mismatch: {f.modulus} vs {g.modulus}")
    return AffineMap(f.a * g.a, f.a * g.b + f.b, f.modulus)


def affine_inverse(f: AffineMap) -> AffineMap:
    m = f.modulus
    a_inv = pow(f.a, -1, m) if m > 1 else 0
    return AffineMap(a_inv, -a_inv * f.b, m)


def ti_group(m: int = DEFAULT_MODULUS) -> list[AffineMap]:
    """Transpositions T0..T(m-1) followed by inversions I0..I(m-1), duplicates dropped."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    out: list[AffineMap] = []
    for f in [T(j, m) for j in range(m)] + [I(j, m) for j in range(m)]:
        if f not in out:
            out.append(f)
    return out


def transposition_group(m: int = DEFAULT_MODULUS) -> list[AffineMap]:
    return [T(j, m) for j in range(m)]


def affine_group(m: int = DEFAULT_MODULUS) -> list[AffineMap]:
    """All of Aff*(Z_m)."""
    return [AffineMap(a, b, m) for a in range(m) for b in range(m) if math.gcd(a, m) == 1]


_AFFINE_RE = re.compile(r"^\s*(?:([TI])\s*(-?\d+)|A\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\])\s*$")


def parse_affine(text: str, m: int = DEFAULT_MODULUS) -> AffineMap:
    """Parse ``T7``, ``I11`` or ``A[a,b]``."""
    match = _AFFINE_RE.match(text)
    if not match:
        raise ValueError(f"malformed affine map: {text!r}")
    kind, j, a, b = match.groups()
    if kind == "T":
        return T(int(j), m)
    if kind == "I":
        return I(int(j), m)
    return AffineMap(int(a), int(b), m)


def closure_of_affine(generators: Iterable[AffineMap]) -> list[AffineMap]:
    """Subgroup of Aff*(Z_m) generated by ``generators``, in discovery order."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    m = gens[0].modulus
    out = [T(0, m)]
    seen = set(out)
    i = 0
    while i < len(out):
        for g in gens:
            h = affine_compose(g, out[i])
            if h not in seen:
                seen.add(h)
                out.append(h)
        i += 1
    return out
