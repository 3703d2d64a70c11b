"""Finite group actions on segment sets, tabulated.

Elements of Sym(S) are stored as explicit index tables over a fixed ordered
domain. That makes equality of groups a plain set comparison, which is what
the duality checks need. Domains here are small (|S| <= a few hundred).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, NamedTuple, Sequence

from .modular import AffineMap, Segment, affine_apply, parse_segment
from .perms import Permutation, cycles_of_mapping, permute_segment, symmetric_group

logger = logging.getLogger(__name__)

Action = Callable[[Segment], Segment]

DEFAULT_ELEMENT_CAP = 10**6


class Domain:
    """An ordered finite set of segments with index lookup."""

    __slots__ = ("points", "index", "_hash")

    def __init__(self, points: Iterable[Segment]):
        self.points = tuple(points)
        self.index = {p: i for i, p in enumerate(self.points)}
        if len(self.index) != len(self.points):
            raise ValueError("domain points must be distinct")
        self._hash = hash(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, s):
        return s in self.index

    def __eq__(self, other):
        return isinstance(other, Domain) and (self is other or self.points == other.points)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Domain({len(self)} points)"


class MappingTable:
    """A bijection of a :class:`Domain`, as a tuple of target indices."""

    __slots__ = ("domain", "images", "_hash")

    def __init__(self, domain: Domain, images: Sequence[int]):
        self.domain = domain
        self.images = tuple(images)
        if len(self.images) != len(domain):
            raise ValueError("table length does not match domain size")
        if len(set(self.images)) != len(self.images):
            raise ValueError("mapping is not a bijection")
        self._hash = hash(self.images)

    @classmethod
    def from_function(cls, domain: Domain, fn: Action) -> MappingTable:
        images = []
        for s in domain.points:
            t = fn(s)
            if t not in domain.index:
                raise ValueError(f"action leaves the domain: {s} -> {t}")
            images.append(domain.index[t])
        return cls(domain, images)

    @classmethod
    def identity(cls, domain: Domain) -> MappingTable:
        return cls(domain, range(len(domain)))

    def __call__(self, s: Segment) -> Segment:
        return self.domain.points[self.images[self.domain.index[s]]]

    def _check(self, other: MappingTable) -> None:
        if other.domain != self.domain:
            raise ValueError("tables live on different domains")

    def __mul__(self, other: MappingTable) -> MappingTable:
        """``self`` after ``other``."""
        self._check(other)
        mine = self.images
        return MappingTable(self.domain, [mine[j] for j in other.images])

    def inverse(self) -> MappingTable:
        out = [0] * len(self.images)
        for i, j in enumerate(self.images):
            out[j] = i
        return MappingTable(self.domain, out)

    def __pow__(self, k: int) -> MappingTable:
        base = self if k >= 0 else self.inverse()
        out = MappingTable.identity(self.domain)
        for _ in range(abs(k)):
            out = base * out
        return out

    def __eq__(self, other):
        return isinstance(other, MappingTable) and self.images == other.images and self.domain == other.domain

    def __hash__(self):
        return self._hash

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def commutes_with(self, other: MappingTable) -> bool:
        return self * other == other * self

    def order(self) -> int:
        out, x = 1, self
        while not x.is_identity:
            x = self * x
            out += 1
        return out

    def fixed_points(self) -> list[Segment]:
        return [self.domain.points[i] for i, j in enumerate(self.images) if i == j]

    def as_dict(self) -> dict[Segment, Segment]:
        pts = self.domain.points
        return {pts[i]: pts[j] for i, j in enumerate(self.images)}

    def cycles(self) -> list[tuple[Segment, ...]]:
        return cycles_of_mapping(self.as_dict())

    def cycle_string(self) -> str:
        parts = ["(" + " ".join(str(s) for s in c) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "id"

    def to_json(self) -> list[list[str]]:
        return [[str(a), str(b)] for a, b in self.as_dict().items()]

    @classmethod
    def from_json(cls, pairs: Sequence[Sequence[str]], domain: Domain | None = None, m: int = 12) -> MappingTable:
        mapping = {parse_segment(a, m): parse_segment(b, m) for a, b in pairs}
        domain = domain or Domain(mapping)
        return cls.from_function(domain, mapping.__getitem__)

    def __repr__(self):
        return f"MappingTable({self.cycle_string()})"


@dataclass(frozen=True)
class GroupElementLabel:
    """An element sigma*g of Sigma_n x G, tagged with the embedding it went through."""

    perm: Permutation
    affine: AffineMap
    side: str = "lambda"

    def __str__(self):
        parts = []
        if not self.perm.is_identity:
            parts.append(str(self.perm))
        if not self.affine.is_identity:
            parts.append(self.affine.label)
        body = "".join(parts) or "id"
        return body if self.side == "lambda" else f"ρ[{body}]"


@dataclass
class FiniteGroup:
    """A subgroup of Sym(domain), enumerated.

    ``labels`` maps some (or all) elements to display names; ``words`` holds
    the shortest generator word found for every element during closure.
    """

    domain: Domain
    elements: tuple[MappingTable, ...]
    labels: dict[MappingTable, str] = field(default_factory=dict)
    generators: tuple[MappingTable, ...] = ()
    words: dict[MappingTable, str] = field(default_factory=dict)

    @classmethod
    def generate(cls, domain: Domain, generators: Sequence[MappingTable],
                 names: Sequence[str] | None = None, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
        """Breadth-first closure under right multiplication by generators.

        Words are read as function composition (rightmost letter acts first),
        and the first word found for an element is the shortest one, ties
        going to the lexicographically least in generator order.
        """
        identity = MappingTable.identity(domain)
        names = list(names) if names is not None else [f"g{i}" for i in range(len(generators))]
        words = {identity: ""}
        elements = [identity]
        i = 0
        while i < len(elements):
            x = elements[i]
            for g, name in zip(generators, names):
                y = x * g
                if y not in words:
                    words[y] = words[x] + name
                    elements.append(y)
                    if len(elements) > cap:
                        raise RuntimeError(f"group closure exceeded {cap} elements")
            i += 1
        labels = {g: name for g, name in zip(generators, names)}
        return cls(domain, tuple(elements), labels, tuple(generators), words)

    @classmethod
    def from_elements(cls, domain: Domain, elements: Iterable[MappingTable],
                      labels: dict[MappingTable, str] | None = None) -> FiniteGroup:
        elements = tuple(dict.fromkeys(elements))
        return cls(domain, elements, dict(labels or {}), elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, t):
        return t in self.element_set

    @cached_property
    def element_set(self) -> frozenset[MappingTable]:
        return frozenset(self.elements)

    @property
    def identity(self) -> MappingTable:
        return MappingTable.identity(self.domain)

    def same_elements(self, other: FiniteGroup) -> bool:
        return self.domain == other.domain and self.element_set == other.element_set

    def is_closed(self) -> bool:
        s = self.element_set
        return self.identity in s and all(a * b in s for a in self.elements for b in self.elements)

    def label_of(self, t: MappingTable) -> str:
        return self.labels.get(t) or self.words.get(t) or t.cycle_string()

    def order_census(self) -> dict[int, int]:
        census: dict[int, int] = {}
        for t in self.elements:
            k = t.order()
            census[k] = census.get(k, 0) + 1
        return dict(sorted(census.items()))

    def to_json(self) -> dict:
        return {
            "domain": [str(s) for s in self.domain],
            "elements": [{"label": self.label_of(t), "table": t.to_json()} for t in self.elements],
        }

    def __repr__(self):
        return f"FiniteGroup(order={len(self)}, |S|={len(self.domain)})"


def orbit(generators: Sequence[Action], seed: Segment) -> list[Segment]:
    """Breadth-first closure of ``seed`` under the generator actions."""
    out = [seed]
    seen = {seed}
    i = 0
    while i < len(out):
        for g in generators:
            t = g(out[i])
            if t not in seen:
                seen.add(t)
                out.append(t)
        i += 1
    for k, g in enumerate(generators):
        images = {g(s) for s in out}
        if len(images) != len(out):
            raise ValueError(f"generator {k} is not injective on the orbit (image collision)")
    return out


class Transitivity(NamedTuple):
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def is_simply_transitive(G: FiniteGroup, S: Iterable[Segment] | None = None) -> Transitivity:
    """Check every ordered pair (s, t) is hit by exactly one group element.

    On failure the witness is ``(s, t, elements)`` where ``elements`` has
    length 0 (not transitive) or >= 2 (not free).
    """
    points = list(S) if S is not None else list(G.domain)
    for s in points:
        hits: dict[Segment, list[MappingTable]] = {t: [] for t in points}
        for g in G.elements:
            t = g(s)
            if t not in hits:
                return Transitivity(False, (s, t, [g]))
            hits[t].append(g)
        for t, gs in hits.items():
            if len(gs) != 1:
                return Transitivity(False, (s, t, gs))
    return Transitivity(True)


def lambda_embed(actions: Sequence[Action], S: Domain | Sequence[Segment],
                 names: Sequence[str] | None = None) -> FiniteGroup:
    """Tabulate the generator actions on S and close them into a group."""
    domain = S if isinstance(S, Domain) else Domain(S)
    tables = [MappingTable.from_function(domain, a) for a in actions]
    return FiniteGroup.generate(domain, tables, names)


def _element_reaching(G: FiniteGroup, s0: Segment) -> dict[Segment, MappingTable]:
    """For a simply transitive G: the unique h with h(s0) = t, for each t."""
    out = {}
    for h in G.elements:
        t = h(s0)
        if t in out:
            raise ValueError("action is not simply transitive (not free at the basepoint)")
        out[t] = h
    if len(out) != len(G.domain):
        raise ValueError("action is not simply transitive (not transitive)")
    return out


def rho_map(G: FiniteGroup, s0: Segment) -> dict[MappingTable, MappingTable]:
    """g -> rho(g), where rho(g) sends h(s0) to h(g^-1(s0))."""
    if s0 not in G.domain:
        raise ValueError(f"basepoint {s0} is not in the domain")
    reach = _element_reaching(G, s0)
    domain = G.domain
    out = {}
    for g in G.elements:
        target = g.inverse()(s0)
        out[g] = MappingTable.from_function(domain, lambda t: reach[t](target))
    return out


def rho_construct(G: FiniteGroup, s0: Segment) -> FiniteGroup:
    """The dual group rho(G), elements in the order of G, labels carried over."""
    mapping = rho_map(G, s0)
    labels = {mapping[g]: f"ρ({G.label_of(g)})" for g in G.elements}
    return FiniteGroup(G.domain, tuple(mapping[g] for g in G.elements), labels,
                       tuple(mapping[g] for g in G.generators))


def centralizer_of_simply_transitive(G: FiniteGroup, S: Domain | None = None) -> FiniteGroup:
    """Centralizer of G in Sym(S), for G simply transitive on S.

    A centralizing c is determined by c(s0): writing every point as h(s0),
    commuting forces c(h s0) = h c(s0). Each candidate image of s0 is tried,
    and kept only if the resulting map is well defined, bijective, and
    actually commutes with every generator.
    """
    domain = S or G.domain
    if not is_simply_transitive(G):
        raise ValueError("centralizer computation needs a simply transitive group")
    s0 = domain.points[0]
    gens = G.generators or G.elements
    found = []
    for t in domain.points:
        mapping: dict[Segment, Segment] = {}
        ok = True
        for h in G.elements:
            src, dst = h(s0), h(t)
            if mapping.setdefault(src, dst) != dst:
                ok = False
                break
        if not ok or len(set(mapping.values())) != len(domain):
            continue
        c = MappingTable.from_function(domain, mapping.__getitem__)
        if all(c.commutes_with(g) for g in gens):
            found.append(c)
    return FiniteGroup.from_elements(domain, found)


@dataclass
class DualReport:
    ok: bool
    clauses: dict[str, bool | None]
    witness: dict[str, object] = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def verify_dual(G: FiniteGroup, H: FiniteGroup, S: Domain | None = None) -> DualReport:
    """Both simply transitive, and each the centralizer of the other."""
    clauses: dict[str, bool | None] = {}
    witness: dict[str, object] = {}
    for name, grp in (("G simply transitive", G), ("H simply transitive", H)):
        tr = is_simply_transitive(grp, S)
        clauses[name] = tr.ok
        if not tr.ok:
            witness[name] = tr.witness
    if all(clauses.values()):
        cg = centralizer_of_simply_transitive(G, S)
        ch = centralizer_of_simply_transitive(H, S)
        clauses["C(G) == H"] = cg.same_elements(H)
        clauses["C(H) == G"] = ch.same_elements(G)
        if not clauses["C(G) == H"]:
            witness["C(G) == H"] = next(iter(cg.element_set ^ H.element_set))
        if not clauses["C(H) == G"]:
            witness["C(H) == G"] = next(iter(ch.element_set ^ G.element_set))
    else:
        clauses["C(G) == H"] = None
        clauses["C(H) == G"] = None
    return DualReport(all(v is True for v in clauses.values()), clauses, witness)


class BasepointComparison(NamedTuple):
    same_image: bool
    differing_elements: int

    def __bool__(self):
        return self.same_image


def rho_basepoint_independence(G: FiniteGroup, s0: Segment, s1: Segment) -> BasepointComparison:
    """Compare rho built from two basepoints: as sets, and element by element."""
    r0, r1 = rho_map(G, s0), rho_map(G, s1)
    same = set(r0.values()) == set(r1.values())
    differing = sum(1 for g in G.elements if r0[g] != r1[g])
    return BasepointComparison(same, differing)


@dataclass
class ProductReport:
    ok: bool
    clauses: dict[str, bool]
    product_order: int | None = None

    def __bool__(self):
        return self.ok


def internal_direct_product_check(K: FiniteGroup, L: FiniteGroup, whole: FiniteGroup | None = None) -> ProductReport:
    """K and L commute, meet trivially, and (if given) their products fill ``whole``."""
    if K.domain != L.domain:
        raise ValueError("groups live on different domains")
    commute = all(k.commutes_with(l) for k in K.elements for l in L.elements)
    meet = K.element_set & L.element_set
    trivial = meet == {K.identity}
    products = {k * l for k in K.elements for l in L.elements}
    clauses = {"commute": commute, "trivial intersection": trivial,
               "|KL| = |K||L|": len(products) == len(K) * len(L)}
    if whole is not None:
        clauses["KL = whole"] = products == set(whole.element_set)
    ok = all(clauses.values())
    return ProductReport(ok, clauses, len(products) if ok else None)


class Asymmetry(NamedTuple):
    ok: bool
    offending: AffineMap | None = None

    def __bool__(self):
        return self.ok


def asymmetry_check(X: Segment, G: Iterable[AffineMap]) -> Asymmetry:
    """True iff no non-identity f in G maps the underlying set of X onto itself.

    The identity always fixes the set, so it is excluded from the test.
    """
    base = X.underlying_set
    for f in G:
        if f.is_identity:
            continue
        if affine_apply(f, X).underlying_set == base:
            return Asymmetry(False, f)
    return Asymmetry(True)


def product_actions(n: int, G: Sequence[AffineMap]) -> list[tuple[Permutation, AffineMap]]:
    return [(sigma, g) for sigma in symmetric_group(n) for g in G]


def apply_pair(sigma: Permutation, g: AffineMap, y: Segment) -> Segment:
    return permute_segment(sigma, affine_apply(g, y))


@dataclass
class OrbitBlock:
    affine: AffineMap
    points: list[Segment]


def orbit_partition(X: Segment, G: Sequence[AffineMap]) -> list[OrbitBlock]:
    """Split the Sigma_n x G orbit of X into the blocks Sigma_n(gX), one per g in G.

    Each point's block is found from its underlying pitch-class set, which
    pins down g uniquely under the asymmetry hypothesis.
    """
    if not X.distinct:
        raise ValueError(f"{X} has repeated entries")
    check = asymmetry_check(X, G)
    if not check:
        raise ValueError(f"{check.offending} maps the pitch-class set of {X} onto itself")
    n = len(X)
    perms = symmetric_group(n)
    by_set: dict[frozenset[int], OrbitBlock] = {}
    blocks = []
    for g in G:
        gx = affine_apply(g, X)
        block = OrbitBlock(g, [permute_segment(s, gx) for s in perms])
        by_set[gx.underlying_set] = block
        blocks.append(block)
    full = orbit([lambda y, s=s: permute_segment(s, y) for s in perms]
                 + [lambda y, g=g: affine_apply(g, y) for g in G], X)
    for y in full:
        block = by_set.get(y.underlying_set)
        if block is None or y not in block.points:
            raise ValueError(f"{y} does not fall in any block")
    if sum(len(b.points) for b in blocks) != len(full):
        raise ValueError("blocks do not partition the orbit")
    return blocks


def block_of(y: Segment, blocks: Sequence[OrbitBlock]) -> OrbitBlock:
    key = y.underlying_set
    for b in blocks:
        if b.points[0].underlying_set == key:
            return b
    raise KeyError(f"{y} is in no block")


def dump_group(G: FiniteGroup) -> str:
    return json.dumps(G.to_json(), indent=1)
