"""Transformational networks of triad orderings: parsing, labelling, checking.

Network files are line oriented::

    # comment
    node a (2,5,10)
    node b (10,2,5)
    edge a b (123)
    square a b c d

``square a b c d`` lists corners in cyclic order; the two paths a->b->c and
a->d->c must both be declared edges and must agree.

Edge labels are products of factors composed like functions (rightmost
acts first):

* ``(123)``, ``(1 3)`` -- voice permutation, acting on positions
* ``r(13)`` / ``ρ(13)`` -- dual permutation rho(nu)
* ``T3``, ``I5``, ``A[5,2]`` -- affine map, applied to every voice
* ``P``, ``L``, ``R`` -- extended P/L/R (conjugated to the ordering)
* ``P'``, ``L'``, ``R'`` -- Cohn variants; ``RICH``; ``J[1,3]``
* ``id``
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Callable

from .actions import MappingTable
from .modular import AffineMap, Segment, affine_apply, affine_compose, affine_inverse, parse_affine, parse_segment
from .neoriemann import (
    cohn_op,
    consonant_domain,
    contextual_inversion,
    extended_plr,
    factorize,
    is_consonant_triad,
    plr_word,
    rho_perm,
    rich,
)
from .perms import Permutation, parse_cycles, permute_segment

Action = Callable[[Segment], Segment]


class NetworkError(ValueError):
    pass


@dataclass
class Edge:
    src: str
    dst: str
    label: str | None = None


@dataclass
class Network:
    nodes: dict[str, Segment] = field(default_factory=dict)
    edges: list[Edge] = field(default_factory=list)
    squares: list[tuple[str, str, str, str]] = field(default_factory=list)

    def add_node(self, name: str, seg: Segment) -> None:
        if name in self.nodes:
            raise NetworkError(f"duplicate node name {name!r}")
        self.nodes[name] = seg

    def add_edge(self, src: str, dst: str, label: str | None = None) -> None:
        for end in (src, dst):
            if end not in self.nodes:
                raise NetworkError(f"edge endpoint {end!r} is not a node")
        self.edges.append(Edge(src, dst, label))

    def edge(self, src: str, dst: str) -> Edge | None:
        for e in self.edges:
            if e.src == src and e.dst == dst:
                return e
        return None


def parse_network(text: str) -> Network:
    """Read the line format, or the JSON written by :func:`export`."""
    if text.lstrip().startswith("{"):
        return _network_from_json(json.loads(text))
    net = Network()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if keyword == "node":
                name, _, seg = rest.partition(" ")
                net.add_node(name, parse_segment(seg))
            elif keyword == "edge":
                parts = rest.split(None, 2)
                if len(parts) < 2:
                    raise NetworkError("edge needs two endpoints")
                net.add_edge(parts[0], parts[1], parts[2].strip() if len(parts) > 2 else None)
            elif keyword == "square":
                corners = rest.split()
                if len(corners) != 4:
                    raise NetworkError("square needs four corners")
                for c in corners:
                    if c not in net.nodes:
                        raise NetworkError(f"square corner {c!r} is not a node")
                net.squares.append(tuple(corners))
            else:
                raise NetworkError(f"unknown keyword {keyword!r}")
        except ValueError as exc:
            raise NetworkError(f"line {lineno}: {exc}") from None
    return net


def _network_from_json(data: dict) -> Network:
    net = Network()
    for node in data.get("nodes", []):
        net.add_node(node["name"], parse_segment(node["segment"]))
    for e in data.get("edges", []):
        net.add_edge(e["from"], e["to"], e.get("label"))
    for sq in data.get("squares", []):
        net.squares.append(tuple(sq))
    return net


# label expressions

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<rho>(?:r|ρ)\((?P<rhobody>[^()]*)\))"
    r"|(?P<cyc>\([^()]*\))"
    r"|(?P<rich>RICH)"
    r"|(?P<j>J\[\s*(?P<jq>\d+)\s*,\s*(?P<jr>\d+)\s*\])"
    r"|(?P<aff>[TI]-?\d+|A\[\s*-?\d+\s*,\s*-?\d+\s*\])"
    r"|(?P<cohn>[PLR]')"
    r"|(?P<plr>[PLR])"
    r"|(?P<id>id)"
    r")"
)


def parse_label(label: str) -> list[tuple[str, Action]]:
    """Split a label into (token, action) factors, leftmost first."""
    factors: list[tuple[str, Action]] = []
    pos = 0
    text = label.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise NetworkError(f"cannot parse label {label!r} at {text[pos:]!r}")
        pos = m.end()
        tok = m.group(0).strip()
        if m.group("rho"):
            nu = parse_cycles(f"({m.group('rhobody')})", 3)
            factors.append((tok, lambda y, nu=nu: rho_perm(nu, y)))
        elif m.group("cyc"):
            sigma = parse_cycles(tok, 3)
            factors.append((tok, lambda y, s=sigma: permute_segment(s, y)))
        elif m.group("rich"):
            factors.append((tok, rich))
        elif m.group("j"):
            q, r = int(m.group("jq")), int(m.group("jr"))
            factors.append((tok, lambda y, q=q, r=r: contextual_inversion(q, r, y)))
        elif m.group("aff"):
            f = parse_affine(tok)
            factors.append((tok, lambda y, f=f: affine_apply(f, y)))
        elif m.group("cohn"):
            factors.append((tok, lambda y, op=tok: cohn_op(op, y)))
        elif m.group("plr"):
            factors.append((tok, lambda y, op=tok: extended_plr(op, y)))
        else:
            factors.append((tok, lambda y: y))
    return factors


def label_action(label: str) -> Action:
    factors = [fn for _, fn in parse_label(label)]

    def act(y: Segment) -> Segment:
        for fn in reversed(factors):
            y = fn(y)
        return y

    return act


def apply_label(label: str, y: Segment) -> Segment:
    return label_action(label)(y)


# inferred labels


@dataclass(frozen=True)
class EdgeLabel:
    """One way of naming the unique group element taking one ordering to another.

    ``side`` is ``lambda`` (voice permutation and affine map, both acting
    directly), ``rho`` (dual permutation and P/L/R word, both in the dual
    group), or ``contextual`` (voice permutation with a P/L/R word, the mix
    used for horizontal arrows in analytical networks).
    """

    side: str
    perm: Permutation
    affine: AffineMap | None = None
    word: str | None = None

    def __str__(self) -> str:
        parts = []
        if not self.perm.is_identity:
            parts.append(f"r{self.perm}" if self.side == "rho" else str(self.perm))
        if self.affine is not None and not self.affine.is_identity:
            parts.append(self.affine.label)
        if self.word:
            parts.append(self.word)
        return "".join(parts) or "id"

    def apply(self, y: Segment) -> Segment:
        return apply_label(str(self), y)


@dataclass(frozen=True)
class EdgeLabels:
    lam: EdgeLabel
    rho: EdgeLabel
    contextual: EdgeLabel

    def as_dict(self) -> dict[str, str]:
        return {"lambda": str(self.lam), "rho": str(self.rho), "contextual": str(self.contextual)}


def label_edge(y1: Segment, y2: Segment) -> EdgeLabels:
    """Name the unique lambda-, rho- and contextual elements sending y1 to y2.

    With y1 = s1 g1 X and y2 = s2 g2 X:
    lambda: s2 s1^-1 with g2 g1^-1;
    rho: rho(s2^-1 s1) with rho(h), h = g2^-1 g1, written as a P/L/R word;
    contextual: the lambda permutation with the same P/L/R word.
    """
    for y in (y1, y2):
        if not is_consonant_triad(y):
            raise NetworkError(f"{y} is not an ordering of a major or minor triad")
    f1, f2 = factorize(y1), factorize(y2)
    sigma = f2.sigma * f1.sigma.inverse()
    g = affine_compose(f2.affine, affine_inverse(f1.affine))
    nu = f2.sigma.inverse() * f1.sigma
    h = affine_compose(affine_inverse(f2.affine), f1.affine)
    word = plr_word(h)
    return EdgeLabels(
        EdgeLabel("lambda", sigma, affine=g),
        EdgeLabel("rho", nu, word=word),
        EdgeLabel("contextual", sigma, word=word),
    )


def label_table(label: str) -> MappingTable:
    return MappingTable.from_function(consonant_domain(), label_action(label))


# verification


@dataclass
class EdgeCheck:
    edge: Edge
    label: str
    inferred: bool
    ok: bool
    got: Segment | None = None
    error: str | None = None


@dataclass
class SquareCheck:
    corners: tuple[str, str, str, str]
    ok: bool
    reason: str = ""


@dataclass
class NetworkReport:
    edges: list[EdgeCheck]
    squares: list[SquareCheck]
    node_errors: list[str]

    @property
    def ok(self) -> bool:
        return not self.node_errors and all(e.ok for e in self.edges) and all(s.ok for s in self.squares)

    def __bool__(self):
        return self.ok

    def failures(self) -> list[str]:
        out = list(self.node_errors)
        for e in self.edges:
            if not e.ok:
                detail = e.error or f"gives {e.got}"
                out.append(f"edge {e.edge.src}->{e.edge.dst} [{e.label}]: {detail}")
        out += [f"square {' '.join(s.corners)}: {s.reason}" for s in self.squares if not s.ok]
        return out

    def format(self) -> str:
        lines = []
        for e in self.edges:
            mark = "ok  " if e.ok else "FAIL"
            how = "inferred" if e.inferred else "given"
            lines.append(f"{mark} edge {e.edge.src} -> {e.edge.dst} [{e.label}] ({how})")
        for s in self.squares:
            lines.append(f"{'ok  ' if s.ok else 'FAIL'} square {' '.join(s.corners)}" + (f": {s.reason}" if s.reason else ""))
        lines += [f"FAIL {msg}" for msg in self.node_errors]
        lines.append("network verified" if self.ok else f"{len(self.failures())} failure(s)")
        return "\n".join(lines)


def verify_network(net: Network) -> NetworkReport:
    node_errors = [f"node {name} {seg} is not an ordered consonant triad"
                   for name, seg in net.nodes.items() if not is_consonant_triad(seg)]
    checks: dict[tuple[str, str], EdgeCheck] = {}
    edge_checks = []
    for e in net.edges:
        src, dst = net.nodes[e.src], net.nodes[e.dst]
        if e.label is None:
            try:
                lab = str(label_edge(src, dst).contextual)
            except ValueError as exc:
                chk = EdgeCheck(e, "?", True, False, error=str(exc))
            else:
                chk = EdgeCheck(e, lab, True, True, dst)
        else:
            try:
                got = apply_label(e.label, src)
            except ValueError as exc:
                chk = EdgeCheck(e, e.label, False, False, error=str(exc))
            else:
                chk = EdgeCheck(e, e.label, False, got == dst, got)
        edge_checks.append(chk)
        checks[(e.src, e.dst)] = chk
    square_checks = [_check_square(net, sq, checks) for sq in net.squares]
    return NetworkReport(edge_checks, square_checks, node_errors)


def _check_square(net: Network, sq: tuple[str, str, str, str], checks: dict) -> SquareCheck:
    a, b, c, d = sq
    sides = [(a, b), (b, c), (a, d), (d, c)]
    missing = [f"{x}->{y}" for x, y in sides if (x, y) not in checks]
    if missing:
        return SquareCheck(sq, False, "missing edge " + ", ".join(missing))
    bad = [f"{x}->{y}" for x, y in sides if not checks[(x, y)].ok]
    if bad:
        return SquareCheck(sq, False, "side fails: " + ", ".join(bad))
    try:
        t_ab, t_bc, t_ad, t_dc = (label_table(checks[s].label) for s in sides)
    except ValueError as exc:
        return SquareCheck(sq, False, f"label not defined on all orderings: {exc}")
    if t_bc * t_ab != t_dc * t_ad:
        return SquareCheck(sq, False, "composites differ as transformations")
    return SquareCheck(sq, True)


# export


def export(net: Network, fmt: str = "dot") -> str:
    if fmt == "json":
        data = {
            "nodes": [{"name": n, "segment": str(s)} for n, s in net.nodes.items()],
            "edges": [{"from": e.src, "to": e.dst, "label": e.label} for e in net.edges],
            "squares": [list(sq) for sq in net.squares],
        }
        return json.dumps(data, indent=2) + "\n"
    if fmt == "dot":
        lines = ["digraph network {", "  node [shape=box];"]
        for name, seg in net.nodes.items():
            lines.append(f'  "{name}" [label="{name}\\n{seg}"];')
        for e in net.edges:
            attr = f' [label="{e.label}"]' if e.label else ""
            lines.append(f'  "{e.src}" -> "{e.dst}"{attr};')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")
