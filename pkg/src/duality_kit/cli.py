"""``duality-kit`` command line."""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys

from . import acceptance
from .actions import (
    FiniteGroup,
    MappingTable,
    centralizer_of_simply_transitive,
    is_simply_transitive,
    lambda_embed,
    orbit,
    rho_construct,
)
from .modular import DEFAULT_MODULUS, Segment, affine_apply, parse_affine, parse_segment, ti_group, transposition_group
from .network import export, label_edge, parse_network, verify_network
from .neoriemann import consonant_domain, contextual_inversion, rich_cycle_census, root_domain
from .perms import Permutation, parse_cycles, permute_segment, symmetric_group

logger = logging.getLogger(__name__)

GROUP_HELP = "S<n>/Sn (voice permutations), T, TI, or a product such as S3xTI"


def default_modulus() -> int:
    value = os.environ.get("DUALITY_KIT_MODULUS")
    return int(value) if value else DEFAULT_MODULUS


def group_generators(spec: str, n: int, m: int) -> tuple[list, list[str]]:
    """Generator actions and names for a group spec like ``S3xTI``."""
    actions, names = [], []
    for part in spec.replace("×", "x").split("x"):
        part = part.strip()
        if part in ("Sn", f"S{n}"):
            if n > 1:
                for cyc in (Permutation.from_cycles([tuple(range(1, n + 1))], n),
                            Permutation.from_cycles([(1, 2)], n)):
                    actions.append(lambda y, p=cyc: permute_segment(p, y))
                    names.append(str(cyc))
        elif part == "T":
            actions.append(lambda y: affine_apply(parse_affine("T1", m), y))
            names.append("T1")
        elif part == "TI":
            for lab in ("T1", "I0"):
                actions.append(lambda y, f=parse_affine(lab, m): affine_apply(f, y))
                names.append(lab)
        else:
            raise ValueError(f"unknown group {part!r} (expected {GROUP_HELP})")
    return actions, names


def explicit_generators(text: str, n: int, m: int) -> tuple[list, list[str]]:
    """Comma-separated ``T1``, ``I0``, ``A[5,0]``, ``(123)`` or ``J[1,3]`` generators."""
    actions, names = [], []
    for tok in [t.strip() for t in text.split(";" if ";" in text else ",") if t.strip()]:
        if tok.startswith("("):
            p = parse_cycles(tok, n)
            actions.append(lambda y, p=p: permute_segment(p, y))
        elif tok.startswith("J["):
            q, r = (int(v) for v in tok[2:-1].split(","))
            actions.append(lambda y, q=q, r=r: contextual_inversion(q, r, y))
        else:
            f = parse_affine(tok, m)
            actions.append(lambda y, f=f: affine_apply(f, y))
        names.append(tok)
    return actions, names


def named_elements(spec: str, n: int, m: int) -> list[tuple[str, object]]:
    """Every element of a group spec, as (name, action) pairs."""
    perms: list[Permutation] = [Permutation.identity(n)]
    affines = [parse_affine("T0", m)]
    for part in spec.replace("×", "x").split("x"):
        part = part.strip()
        if part in ("Sn", f"S{n}"):
            perms = symmetric_group(n)
        elif part == "T":
            affines = transposition_group(m)
        elif part == "TI":
            affines = ti_group(m)
    out = []
    for p in perms:
        for f in affines:
            name = "".join(x for x in (str(p) if not p.is_identity else "",
                                        f.label if not f.is_identity else "") if x) or "id"
            out.append((name, lambda y, p=p, f=f: permute_segment(p, affine_apply(f, y))))
    return out


def build_action(args) -> tuple[Segment, list, list[str]]:
    seed = parse_segment(args.seed, args.modulus)
    if args.generators:
        actions, names = explicit_generators(args.generators, len(seed), args.modulus)
    else:
        actions, names = group_generators(args.group, len(seed), args.modulus)
    if not actions:
        raise ValueError("no generators")
    return seed, actions, names


def _plr_aliases(G: FiniteGroup) -> dict[MappingTable, str]:
    """Name P, L, R when the domain is the T/I class of (0,4,7) mod 12."""
    if set(G.domain) != set(root_domain()):
        return {}
    out = {}
    for name, (q, r) in {"P": (1, 3), "L": (2, 3), "R": (1, 2)}.items():
        t = MappingTable.from_function(G.domain, lambda y, q=q, r=r: contextual_inversion(q, r, y))
        out[t] = name
    return out


def emit_group(G: FiniteGroup, fmt: str, out) -> None:
    aliases = _plr_aliases(G)
    if fmt == "json":
        data = G.to_json()
        for entry, t in zip(data["elements"], G.elements):
            if t in aliases:
                entry["alias"] = aliases[t]
        json.dump(data, out, indent=1)
        out.write("\n")
        return
    out.write(f"order {len(G)} on {len(G.domain)} points\n")
    for t in G.elements:
        alias = f" = {aliases[t]}" if t in aliases else ""
        out.write(f"{G.label_of(t)}{alias}: {t.cycle_string()}\n")


def cmd_orbit(args, out) -> int:
    seed, actions, _ = build_action(args)
    points = orbit(actions, seed)
    if args.format == "json":
        json.dump([str(p) for p in points], out)
        out.write("\n")
    else:
        out.writelines(f"{p}\n" for p in points)
    return 0


def _lambda_group(args) -> tuple[Segment, FiniteGroup]:
    seed, actions, names = build_action(args)
    points = orbit(actions, seed)
    lam = lambda_embed(actions, points, names)
    if not args.generators:
        for name, act in named_elements(args.group, len(seed), args.modulus):
            try:
                t = MappingTable.from_function(lam.domain, act)
            except ValueError:
                continue
            if t in lam and t not in lam.labels:
                lam.labels[t] = name
    return seed, lam


def cmd_dual(args, out) -> int:
    seed, lam = _lambda_group(args)
    check = is_simply_transitive(lam)
    if not check:
        raise ValueError(f"the action is not simply transitive on the orbit of {seed}: witness {check.witness[:2]}")
    emit_group(rho_construct(lam, seed), args.format, out)
    return 0


def cmd_centralizer(args, out) -> int:
    seed, lam = _lambda_group(args)
    cent = centralizer_of_simply_transitive(lam)
    rho = rho_construct(lam, seed)
    labels = {t: rho.label_of(t) for t in rho.elements}
    cent.labels.update(labels)
    emit_group(cent, args.format, out)
    if args.format == "text":
        out.write(f"equals rho construction: {cent.same_elements(rho)}\n")
    return 0


def cmd_census(args, out) -> int:
    if args.op != "rich":
        raise ValueError(f"unknown census operation {args.op!r}")
    cycles = rich_cycle_census()
    if args.format == "json":
        json.dump([c.to_json() for c in cycles], out, indent=1)
        out.write("\n")
    else:
        out.writelines(c.format() + "\n" for c in cycles)
    return 0


def cmd_label(args, out) -> int:
    labels = label_edge(parse_segment(args.source), parse_segment(args.target))
    if args.format == "json":
        json.dump(labels.as_dict(), out)
        out.write("\n")
    else:
        for side, text in labels.as_dict().items():
            out.write(f"{side}: {text}\n")
    return 0


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def cmd_verify(args, out) -> int:
    report = verify_network(parse_network(_read(args.file)))
    out.write(report.format() + "\n")
    return 0 if report.ok else 1


def cmd_export(args, out) -> int:
    out.write(export(parse_network(_read(args.file)), args.format))
    return 0


def cmd_selfcheck(args, out) -> int:
    results = acceptance.run_all()
    for r in results:
        out.write(r.line() + "\n")
    # sampled path functoriality on top of the exhaustive checks
    rng = random.Random(args.seed_rng)
    pts = consonant_domain().points
    bad = 0
    for _ in range(args.samples):
        a, b, c = rng.choice(pts), rng.choice(pts), rng.choice(pts)
        ab, bc, ac = (label_edge(a, b).lam, label_edge(b, c).lam, label_edge(a, c).lam)
        bad += bc.apply(ab.apply(a)) != ac.apply(a)
    out.write(f"info: {args.samples} sampled label paths (seed {args.seed_rng}), {bad} non-functorial\n")
    for r in acceptance.informational():
        out.write("info: " + r.line() + "\n")
    return 0 if all(r.ok for r in results) and not bad else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="duality-kit", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--modulus", type=int, default=default_modulus())

    for name, fn, help_ in (("orbit", cmd_orbit, "list the orbit of a seed"),
                            ("dual", cmd_dual, "dual group rho(G) of a simply transitive action"),
                            ("centralizer", cmd_centralizer, "centralizer of a simply transitive action")):
        p = sub.add_parser(name, help=help_)
        common(p)
        p.add_argument("--group", default="TI", help=GROUP_HELP)
        p.add_argument("--generators", help="explicit generators, e.g. 'T1,I0' or '(123);(12)'")
        p.add_argument("--seed", default="(0,4,7)", help="seed segment")
        p.set_defaults(func=fn)

    p = sub.add_parser("census", help="cycle census of RICH on the 144 triad orderings")
    common(p)
    p.add_argument("--op", default="rich")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("label", help="name the transformation between two triad orderings")
    common(p)
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("verify", help="verify a network file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="export a network file")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("file")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("selfcheck", help="run every reference-claim check")
    p.add_argument("--seed-rng", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except (ValueError, OSError) as exc:
        print(f"duality-kit: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
