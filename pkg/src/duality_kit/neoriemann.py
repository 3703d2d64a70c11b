"""P, L, R and their relatives on the 144 orderings of major and minor triads.

Every ordered consonant triad factors uniquely as sigma(g(0,4,7)) with sigma
in Sigma_3 and g in T/I. The root forms g(0,4,7) make up the 24-element set
on which P, L, R have their closed forms; everything else is reached by
conjugating with the voice permutation sigma.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .actions import (
    Domain,
    FiniteGroup,
    MappingTable,
    is_simply_transitive,
    rho_map,
)
from .modular import AffineMap, Segment, T, I, affine_apply, affine_compose, affine_inverse, ti_group
from .perms import Permutation, parse_cycles, permute_segment, symmetric_group

logger = logging.getLogger(__name__)

MODULUS = 12
ROOT = Segment((0, 4, 7), MODULUS)

CYCLE_TYPES = {24: "RL", 8: "PR", 6: "PL"}


def perm(text: str) -> Permutation:
    return parse_cycles(text, 3)


S3 = symmetric_group(3)
TI = ti_group(MODULUS)


@dataclass(frozen=True)
class ConsonantTriadForm:
    """A triad ordering together with its factorization sigma(g(0,4,7))."""

    segment: Segment
    sigma: Permutation
    affine: AffineMap

    @property
    def root_form(self) -> Segment:
        return affine_apply(self.affine, ROOT)

    def __str__(self):
        return f"{self.segment} = {self.sigma}·{self.affine.label}(0,4,7)"


@lru_cache(maxsize=None)
def _factor_table() -> dict[Segment, ConsonantTriadForm]:
    out = {}
    for sigma in S3:
        for g in TI:
            y = permute_segment(sigma, affine_apply(g, ROOT))
            if y in out:
                raise AssertionError(f"factorization of {y} is not unique")
            out[y] = ConsonantTriadForm(y, sigma, g)
    return out


def factorize(y: Segment) -> ConsonantTriadForm:
    try:
        return _factor_table()[y]
    except KeyError:
        raise ValueError(f"{y} is not an ordering of a major or minor triad") from None


def is_consonant_triad(y: Segment) -> bool:
    return y in _factor_table()


@lru_cache(maxsize=None)
def consonant_domain() -> Domain:
    """The 144 orderings, sorted."""
    return Domain(sorted(_factor_table()))


@lru_cache(maxsize=None)
def root_domain() -> Domain:
    """The 24 root forms g(0,4,7), in T0..T11, I0..I11 order."""
    return Domain(affine_apply(g, ROOT) for g in TI)


# contextual inversions and enchaining


def contextual_inversion(q: int, r: int, y: Segment) -> Segment:
    """J^{q,r}: invert about y_q + y_r (1-based indices).

    The name follows the literature, though outside the T/I class of
    (0,4,7) these maps no longer agree with P, L, R.
    """
    n = len(y)
    if not (1 <= q <= n and 1 <= r <= n):
        raise ValueError(f"indices ({q},{r}) out of range for length {n}")
    if q == r:
        raise ValueError("contextual inversion needs two distinct indices")
    return affine_apply(I(y[q - 1] + y[r - 1], y.modulus), y)


def enchaining(q: int, r: int, s: int, y: Segment) -> Segment:
    """(r s) after J^{q,r}."""
    n = len(y)
    if len({q, r, s}) != 3:
        raise ValueError("q, r, s must be pairwise distinct")
    if not all(1 <= k <= n for k in (q, r, s)):
        raise ValueError(f"indices out of range for length {n}")
    swap = Permutation.from_cycles([(r, s)], n)
    return permute_segment(swap, contextual_inversion(q, r, y))


def rich(y: Segment) -> Segment:
    """Retrograde-inversion enchaining (1 3) J^{2,3}; the result starts y2, y3."""
    if len(y) != 3:
        raise ValueError("RICH is defined on 3-tuples")
    return enchaining(2, 3, 1, y)


# P, L, R

_PLR_INDEX = {"P": (1, 3), "L": (2, 3), "R": (1, 2)}


def plr_root_form(op: str, y: Segment) -> Segment:
    """P, L or R by the closed formulas, only on root forms g(0,4,7).

    On other orderings those formulas give musically wrong answers (e.g.
    the "parallel" of (4,7,0) would come out as a minor chord on A), so
    they are refused here; :func:`extended_plr` is the total version.
    """
    if op not in _PLR_INDEX:
        raise ValueError(f"unknown operation {op!r}")
    form = factorize(y)
    if not form.sigma.is_identity:
        raise ValueError(f"{y} is not in root form; use extended_plr")
    return contextual_inversion(*_PLR_INDEX[op], y)


def extended_plr(word: str, y: Segment) -> Segment:
    """Apply a word in P, L, R (rightmost letter first) to any ordering.

    Each letter h acts as sigma h sigma^-1, so it commutes with voice
    permutations.
    """
    for op in reversed(word):
        form = factorize(y)
        root = permute_segment(form.sigma.inverse(), y)
        y = permute_segment(form.sigma, plr_root_form(op, root))
    return y


def rho_perm(nu: Permutation, y: Segment) -> Segment:
    """The dual permutation rho(nu): sigma g X -> sigma g nu^-1 X."""
    form = factorize(y)
    return permute_segment(form.sigma * nu.inverse(), form.root_form)


def rho_affine(h: AffineMap, y: Segment) -> Segment:
    """rho(h): sigma g X -> sigma g h^-1 X. Restricted to root forms this is the PLR group."""
    form = factorize(y)
    g = affine_compose(form.affine, affine_inverse(h))
    return permute_segment(form.sigma, affine_apply(g, ROOT))


_COHN = {"P'": ("(13)", "P"), "L'": ("(23)", "L"), "R'": ("(12)", "R")}


def cohn_op(op: str, y: Segment) -> Segment:
    """P' = rho(13)P, L' = rho(23)L, R' = rho(12)R: common tones keep their voices."""
    if op not in _COHN:
        raise ValueError(f"unknown Cohn operation {op!r}")
    cyc, base = _COHN[op]
    return rho_perm(perm(cyc), extended_plr(base, y))


# tabulated groups on the 144 orderings


def table(fn) -> MappingTable:
    return MappingTable.from_function(consonant_domain(), fn)


@dataclass
class TriadGroups:
    """lambda and rho of Sigma_3 x T/I on the 144 orderings, with basepoint (0,4,7)."""

    lam: dict[tuple[Permutation, AffineMap], MappingTable]
    rho: dict[tuple[Permutation, AffineMap], MappingTable]

    def _group(self, side: dict, keys) -> FiniteGroup:
        elems = [side[k] for k in keys]
        return FiniteGroup.from_elements(consonant_domain(), elems)

    @property
    def identity_perm(self) -> Permutation:
        return Permutation.identity(3)

    def lam_s3(self) -> FiniteGroup:
        return self._group(self.lam, [(s, T(0)) for s in S3])

    def lam_ti(self) -> FiniteGroup:
        return self._group(self.lam, [(self.identity_perm, g) for g in TI])

    def rho_s3(self) -> FiniteGroup:
        return self._group(self.rho, [(s, T(0)) for s in S3])

    def rho_ti(self) -> FiniteGroup:
        return self._group(self.rho, [(self.identity_perm, g) for g in TI])

    def lam_all(self) -> FiniteGroup:
        return self._group(self.lam, list(self.lam))

    def rho_all(self) -> FiniteGroup:
        return self._group(self.rho, list(self.lam))


@lru_cache(maxsize=None)
def triad_groups() -> TriadGroups:
    domain = consonant_domain()
    lam = {}
    for sigma in S3:
        for g in TI:
            lam[(sigma, g)] = MappingTable.from_function(
                domain, lambda y, s=sigma, g=g: permute_segment(s, affine_apply(g, y)))
    lam_group = FiniteGroup.from_elements(domain, lam.values())
    if not is_simply_transitive(lam_group):
        raise AssertionError("Sigma_3 x T/I is not simply transitive on the triad orderings")
    rmap = rho_map(lam_group, ROOT)
    rho = {k: rmap[t] for k, t in lam.items()}
    return TriadGroups(lam, rho)


@lru_cache(maxsize=None)
def plr_group() -> FiniteGroup:
    """<P, L, R> on the 24 root forms, with shortest words (ties P < L < R)."""
    domain = root_domain()
    gens = [MappingTable.from_function(domain, lambda y, op=op: plr_root_form(op, y)) for op in "PLR"]
    return FiniteGroup.generate(domain, gens, list("PLR"))


def plr_word(h: AffineMap) -> str:
    """Shortest P/L/R word equal to rho(h) on the root forms ('' for the identity)."""
    t = MappingTable.from_function(root_domain(), lambda y: rho_affine(h, y))
    return plr_group().words[t]


@lru_cache(maxsize=None)
def extended_plr_group() -> FiniteGroup:
    gens = [table(lambda y, op=op: extended_plr(op, y)) for op in "PLR"]
    return FiniteGroup.generate(consonant_domain(), gens, list("PLR"))


@dataclass
class DihedralCertificate:
    order: int
    rotation: MappingTable | None
    reflection: MappingTable | None

    @property
    def ok(self) -> bool:
        return self.rotation is not None

    def __bool__(self):
        return self.ok


@lru_cache(maxsize=None)
def cohn_group() -> FiniteGroup:
    gens = [table(lambda y, op=op: cohn_op(op, y)) for op in ("P'", "L'", "R'")]
    return FiniteGroup.generate(consonant_domain(), gens, ["P'", "L'", "R'"])


def dihedral_certificate(G: FiniteGroup) -> DihedralCertificate:
    """Find t of order |G|/2 and an involution s with s t s = t^-1 generating G."""
    half = len(G) // 2
    if len(G) % 2 or half < 3:
        return DihedralCertificate(len(G), None, None)
    for t in G.elements:
        if t.order() != half:
            continue
        t_inv = t.inverse()
        for s in G.elements:
            if s.is_identity or not (s * s).is_identity:
                continue
            if s * t * s != t_inv:
                continue
            sub = FiniteGroup.generate(G.domain, [s, t])
            if len(sub) == len(G):
                return DihedralCertificate(len(G), t, s)
    return DihedralCertificate(len(G), None, None)


def dihedral_order_census(n: int) -> dict[int, int]:
    """Element orders of the abstract dihedral group of order 2n, from (k, flip) pairs."""

    def mul(a, b):
        return ((a[0] + (-1) ** a[1] * b[0]) % n, a[1] ^ b[1])

    census: dict[int, int] = {}
    e = (0, 0)
    for x in [(k, f) for f in (0, 1) for k in range(n)]:
        k, y = 1, x
        while y != e:
            y = mul(x, y)
            k += 1
        census[k] = census.get(k, 0) + 1
    return dict(sorted(census.items()))


# RICH


@lru_cache(maxsize=None)
def rich_table() -> MappingTable:
    return table(rich)


@dataclass(frozen=True)
class TypedCycle:
    kind: str
    cycle: tuple[Segment, ...]

    def __len__(self):
        return len(self.cycle)

    def format(self) -> str:
        body = " ".join(str(s) for s in self.cycle)
        return f"type={self.kind} len={len(self.cycle)} : {body}"

    def to_json(self) -> dict:
        return {"type": self.kind, "length": len(self.cycle), "cycle": [str(s) for s in self.cycle]}


def rotate_to_least(cycle: Sequence[Segment]) -> tuple[Segment, ...]:
    k = min(range(len(cycle)), key=lambda i: cycle[i].entries)
    return tuple(cycle[k:]) + tuple(cycle[:k])


def typed_cycles(t: MappingTable) -> list[TypedCycle]:
    """Cycles labelled RL/PR/PL by length, longest first, each from its least segment."""
    cycles = [TypedCycle(CYCLE_TYPES.get(len(c), f"C{len(c)}"), rotate_to_least(c)) for c in t.cycles()]
    cycles.sort(key=lambda c: (-len(c), c.cycle[0].entries))
    return cycles


def rich_cycle_census() -> list[TypedCycle]:
    return typed_cycles(rich_table())


@dataclass
class RichWitness:
    in_dual_group: bool
    order: int
    fixed_point_of_6th_power: Segment | None
    sixth_power_is_identity: bool

    @property
    def proven(self) -> bool:
        # a non-identity element with a fixed point cannot live in a simply transitive group
        return (not self.in_dual_group and self.fixed_point_of_6th_power is not None
                and not self.sixth_power_is_identity)


def rich_not_in_dual_group() -> RichWitness:
    r = rich_table()
    r6 = r ** 6
    fixed = r6.fixed_points()
    dual = triad_groups().rho_all()
    return RichWitness(r in dual, r.order(), fixed[0] if fixed else None, r6.is_identity)


@dataclass
class Restriction:
    scale: frozenset[int]
    segments: list[Segment]
    closed: bool
    escaping: list[Segment]
    cycles: list[TypedCycle]

    @property
    def support(self) -> list[Segment]:
        """Points of the RICH cycles lying wholly inside the scale (a RICH-closed set)."""
        return [s for c in self.cycles for s in c.cycle]


def octatonic_restriction(scale: Iterable[int]) -> Restriction:
    """Restrict RICH to triad orderings whose notes all lie in ``scale``.

    The filtered set need not be RICH-closed; the non-closure is reported
    through ``closed``/``escaping`` and ``cycles`` keeps only the RICH
    cycles that stay inside the filtered set.
    """
    pcs = frozenset(int(v) % MODULUS for v in scale)
    segments = [s for s in consonant_domain() if s.underlying_set <= pcs]
    inside = set(segments)
    escaping = [s for s in segments if rich(s) not in inside]
    cycles = [c for c in rich_cycle_census() if all(s in inside for s in c.cycle)]
    if escaping:
        logger.info("filtered set of %d orderings is not RICH-closed (%d escape)", len(segments), len(escaping))
    return Restriction(pcs, segments, not escaping, escaping, cycles)
