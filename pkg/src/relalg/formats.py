"""Line-oriented text formats for structures, concrete algebras, actions.

All three formats share the same conventions: '#' starts a comment, blank
lines are ignored, and every directive is a whitespace-separated line.
Parsers raise ParseError with the offending source name, line number, and
token.  Emitters produce text the parsers round-trip exactly.
"""

from __future__ import annotations

import re

from .actions import GroupAction, build_group
from .atoms import AtomStructure, close_cycles, peirce_orbit
from .concrete import ConcreteAlgebra, ConcreteRelation
from .errors import ParseError

_PAIR_RE = re.compile(r"^\((\d+),(\d+)\)$")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_atom_structure(text: str, source: str = "<string>") -> AtomStructure:
    """Parse the `atoms / identity / converse / cycle` format.

    Converse is given as `a:b` pairs (fixed atoms may be listed as `a:a`
    or omitted); cycle lines list one representative per Peircean orbit
    and the parser closes the set under the six transforms.
    """
    atoms: list[str] | None = None
    identity: list[int] | None = None
    converse: list[int] | None = None
    conv_line = 0
    cycle_reps: list[tuple[tuple[int, int, int], int]] = []

    def atom_id(name: str, lineno: int) -> int:
        if atoms is None:
            raise ParseError(source, lineno, "atoms must be declared first")
        try:
            return atoms.index(name)
        except ValueError:
            raise ParseError(source, lineno, "unknown atom", token=name) from None

    for lineno, line in _content_lines(text):
        parts = line.split()
        kw = parts[0]
        if kw == "atoms":
            if atoms is not None:
                raise ParseError(source, lineno, "duplicate atoms line")
            if len(parts) == 1:
                raise ParseError(source, lineno, "atoms line lists no atoms")
            atoms = parts[1:]
        elif kw == "identity":
            if identity is not None:
                raise ParseError(source, lineno, "duplicate identity line")
            identity = [atom_id(p, lineno) for p in parts[1:]]
            if not identity:
                raise ParseError(source, lineno, "identity line lists no atoms")
        elif kw == "converse":
            if converse is not None:
                raise ParseError(source, lineno, "duplicate converse line")
            if atoms is None:
                raise ParseError(source, lineno, "atoms must be declared first")
            converse = list(range(len(atoms)))
            conv_line = lineno
            seen: set[int] = set()
            for p in parts[1:]:
                if ":" not in p:
                    raise ParseError(source, lineno,
                                     "converse entries look like a:b", token=p)
                a, _, b = p.partition(":")
                ia, ib = atom_id(a, lineno), atom_id(b, lineno)
                if ia in seen or ib in seen:
                    raise ParseError(source, lineno,
                                     "atom appears in two converse pairs",
                                     token=p)
                seen.update((ia, ib))
                converse[ia], converse[ib] = ib, ia
        elif kw == "cycle":
            if len(parts) != 4:
                raise ParseError(source, lineno,
                                 "cycle lines take exactly three atoms")
            x, y, z = (atom_id(p, lineno) for p in parts[1:])
            cycle_reps.append(((x, y, z), lineno))
        else:
            raise ParseError(source, lineno, "unknown directive", token=kw)

    if atoms is None:
        raise ParseError(source, 0, "missing atoms line")
    if identity is None:
        raise ParseError(source, 0, "missing identity line")
    if converse is None:
        converse = list(range(len(atoms)))
        conv_line = 0
    cycles = close_cycles([t for t, _ in cycle_reps], converse)
    return AtomStructure(tuple(atoms), tuple(converse),
                         frozenset(identity), cycles)


def format_atom_structure(s: AtomStructure) -> str:
    lines = ["atoms " + " ".join(s.atom_names)]
    lines.append("identity " + " ".join(s.atom_names[e]
                                        for e in sorted(s.identity_atoms)))
    pairs = [f"{s.atom_names[a]}:{s.atom_names[s.converse_map[a]]}"
             for a in range(s.n_atoms) if a <= s.converse_map[a]]
    lines.append("converse " + " ".join(pairs))
    reps = sorted({min(peirce_orbit(t, s.converse_map)) for t in s.cycles})
    for x, y, z in reps:
        lines.append(f"cycle {s.atom_names[x]} {s.atom_names[y]} "
                     f"{s.atom_names[z]}")
    return "\n".join(lines) + "\n"


def _parse_size(parts, source, lineno) -> int:
    if len(parts) != 2:
        raise ParseError(source, lineno, "set line takes one number")
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(source, lineno, "set size must be an integer",
                         token=parts[1]) from None
    if n <= 0:
        raise ParseError(source, lineno, "set size must be positive",
                         token=parts[1])
    return n


def parse_concrete_algebra(text: str, source: str = "<string>") -> ConcreteAlgebra:
    """Parse `set n` plus one `atom <name> = (i,j) (k,l) ...` line per atom."""
    n: int | None = None
    names: list[str] = []
    rels: list[ConcreteRelation] = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if parts[0] == "set":
            if n is not None:
                raise ParseError(source, lineno, "duplicate set line")
            n = _parse_size(parts, source, lineno)
        elif parts[0] == "atom":
            if n is None:
                raise ParseError(source, lineno, "set size must come first")
            if len(parts) < 4 or parts[2] != "=":
                raise ParseError(source, lineno,
                                 "atom lines look like: atom name = (i,j) ...")
            pairs = []
            for tok in parts[3:]:
                mm = _PAIR_RE.match(tok)
                if not mm:
                    raise ParseError(source, lineno, "malformed pair",
                                     token=tok)
                i, j = int(mm.group(1)), int(mm.group(2))
                if i >= n or j >= n:
                    raise ParseError(source, lineno,
                                     "pair outside the base set", token=tok)
                pairs.append((i, j))
            names.append(parts[1])
            rels.append(ConcreteRelation.from_pairs(n, pairs))
        else:
            raise ParseError(source, lineno, "unknown directive",
                             token=parts[0])
    if n is None:
        raise ParseError(source, 0, "missing set line")
    if not names:
        raise ParseError(source, 0, "no atom lines")
    try:
        return ConcreteAlgebra(n, tuple(names), tuple(rels))
    except ValueError as exc:
        raise ParseError(source, 0, str(exc)) from None


def format_concrete_algebra(c: ConcreteAlgebra) -> str:
    lines = [f"set {c.base_size}"]
    for name, rel in zip(c.atom_names, c.atom_relations):
        body = " ".join(f"({i},{j})" for i, j in rel.pairs())
        lines.append(f"atom {name} = {body}")
    return "\n".join(lines) + "\n"


def parse_group_action(text: str, source: str = "<string>") -> GroupAction:
    """Parse `set n` plus `gen i0 i1 ... i(n-1)` permutation lines."""
    n: int | None = None
    gens: list[tuple[int, ...]] = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if parts[0] == "set":
            if n is not None:
                raise ParseError(source, lineno, "duplicate set line")
            n = _parse_size(parts, source, lineno)
        elif parts[0] == "gen":
            if n is None:
                raise ParseError(source, lineno, "set size must come first")
            if len(parts) != n + 1:
                raise ParseError(source, lineno,
                                 f"gen lines take exactly {n} images")
            imgs = []
            for tok in parts[1:]:
                try:
                    imgs.append(int(tok))
                except ValueError:
                    raise ParseError(source, lineno,
                                     "images must be integers",
                                     token=tok) from None
            gens.append(tuple(imgs))
        else:
            raise ParseError(source, lineno, "unknown directive",
                             token=parts[0])
    if n is None:
        raise ParseError(source, 0, "missing set line")
    return build_group(n, gens)


def format_group_action(a: GroupAction) -> str:
    lines = [f"set {a.base_size}"]
    for g in a.generators:
        lines.append("gen " + " ".join(str(i) for i in g))
    return "\n".join(lines) + "\n"
