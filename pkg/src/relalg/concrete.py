"""Binary relations on a finite base set, and proper relation algebras.

A relation is stored as one successor bitmask per row, so composition,
converse and the Boolean operations are integer bit work.  A concrete
algebra is a named list of relations that partition the square of the
base set and are closed under converse and composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .atoms import AtomStructure, iter_bits
from .errors import ConcreteAlgebraError, InternalError


@dataclass(frozen=True)
class ConcreteRelation:
    base_size: int
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        n = self.base_size
        if n < 1:
            raise ValueError("base set must be nonempty")
        if len(self.rows) != n:
            raise ValueError(f"expected {n} rows, got {len(self.rows)}")
        full = (1 << n) - 1
        for i, row in enumerate(self.rows):
            if not 0 <= row <= full:
                raise ValueError(f"row {i} has successors outside the base set")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_pairs(cls, base_size: int, pairs: Iterable[tuple[int, int]]) -> "ConcreteRelation":
        rows = [0] * base_size
        for i, j in pairs:
            if not (0 <= i < base_size and 0 <= j < base_size):
                raise ValueError(f"pair ({i},{j}) outside base set of size {base_size}")
            rows[i] |= 1 << j
        return cls(base_size, tuple(rows))

    @classmethod
    def empty(cls, base_size: int) -> "ConcreteRelation":
        return cls(base_size, (0,) * base_size)

    @classmethod
    def identity(cls, base_size: int) -> "ConcreteRelation":
        return cls(base_size, tuple(1 << i for i in range(base_size)))

    @classmethod
    def universal(cls, base_size: int) -> "ConcreteRelation":
        full = (1 << base_size) - 1
        return cls(base_size, (full,) * base_size)

    # -- views ---------------------------------------------------------------

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in range(self.base_size) for j in iter_bits(self.rows[i]))

    @property
    def n_pairs(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    @property
    def is_empty(self) -> bool:
        return all(row == 0 for row in self.rows)

    def contains(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def _check_mate(self, other: "ConcreteRelation") -> None:
        if self.base_size != other.base_size:
            raise ValueError("relations over different base sets")

    # -- operations ------------------------------------------------------------

    def compose(self, other: "ConcreteRelation") -> "ConcreteRelation":
        self._check_mate(other)
        rows = []
        for row in self.rows:
            acc = 0
            for j in iter_bits(row):
                acc |= other.rows[j]
            rows.append(acc)
        return ConcreteRelation(self.base_size, tuple(rows))

    def converse(self) -> "ConcreteRelation":
        n = self.base_size
        rows = [0] * n
        for i in range(n):
            for j in iter_bits(self.rows[i]):
                rows[j] |= 1 << i
        return ConcreteRelation(n, tuple(rows))

    def complement(self) -> "ConcreteRelation":
        full = (1 << self.base_size) - 1
        return ConcreteRelation(self.base_size, tuple(full & ~row for row in self.rows))

    def __or__(self, other: "ConcreteRelation") -> "ConcreteRelation":
        self._check_mate(other)
        return ConcreteRelation(self.base_size, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: "ConcreteRelation") -> "ConcreteRelation":
        self._check_mate(other)
        return ConcreteRelation(self.base_size, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: "ConcreteRelation") -> bool:
        self._check_mate(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def intersects(self, other: "ConcreteRelation") -> bool:
        self._check_mate(other)
        return any(a & b for a, b in zip(self.rows, other.rows))

    def permuted(self, perm: Sequence[int]) -> "ConcreteRelation":
        """The image relation {(g(x), g(y)) : (x, y) in self}."""
        n = self.base_size
        if len(perm) != n:
            raise ValueError("permutation length does not match base size")
        rows = [0] * n
        for i in range(n):
            moved = 0
            for j in iter_bits(self.rows[i]):
                moved |= 1 << perm[j]
            rows[perm[i]] = moved
        return ConcreteRelation(n, tuple(rows))


def relation_compose(r: ConcreteRelation, s: ConcreteRelation) -> ConcreteRelation:
    return r.compose(s)


def relation_converse(r: ConcreteRelation) -> ConcreteRelation:
    return r.converse()


def relation_complement(r: ConcreteRelation) -> ConcreteRelation:
    return r.complement()


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConcreteAlgebra:
    """Atoms of a proper relation algebra on a finite base set."""

    base_size: int
    atom_names: tuple[str, ...]
    atom_relations: tuple[ConcreteRelation, ...]

    def __post_init__(self):
        object.__setattr__(self, "atom_names", tuple(self.atom_names))
        object.__setattr__(self, "atom_relations", tuple(self.atom_relations))
        if len(self.atom_names) != len(self.atom_relations):
            raise ValueError("need exactly one name per atom relation")
        if not self.atom_relations:
            raise ValueError("an algebra needs at least one atom")
        seen = set()
        for nm in self.atom_names:
            if not nm or any(ch.isspace() for ch in nm):
                raise ValueError(f"unusable atom name {nm!r}")
            if nm in seen:
                raise ValueError(f"duplicate atom name {nm!r}")
            seen.add(nm)
        for rel in self.atom_relations:
            if rel.base_size != self.base_size:
                raise ValueError("atom relation over a different base set")
            if rel.is_empty:
                raise ValueError("atom relations must be nonempty")

    @property
    def n_atoms(self) -> int:
        return len(self.atom_relations)

    @cached_property
    def _rows_index(self) -> dict[tuple[int, ...], int]:
        return {rel.rows: k for k, rel in enumerate(self.atom_relations)}

    @cached_property
    def _pair_owner(self) -> tuple[int, ...]:
        # owner[i*n + j] = id of the atom containing (i, j); partition only
        n = self.base_size
        owner = [-1] * (n * n)
        for k, rel in enumerate(self.atom_relations):
            for i in range(n):
                for j in iter_bits(rel.rows[i]):
                    owner[i * n + j] = k
        return tuple(owner)

    def invariant_violations(self) -> tuple[str, ...]:
        """Partition / converse / composition / identity-closure check.

        Returns one message with a witness per broken invariant; the
        closure checks are skipped when the partition itself is broken.
        """
        n = self.base_size
        full = (1 << n) - 1
        out: list[str] = []

        acc = [0] * n
        partition_ok = True
        for k, rel in enumerate(self.atom_relations):
            for i in range(n):
                overlap = acc[i] & rel.rows[i]
                if overlap and partition_ok:
                    j = next(iter_bits(overlap))
                    other = next(
                        m for m, prev in enumerate(self.atom_relations[:k])
                        if prev.contains(i, j))
                    out.append(
                        f"not a partition: atoms {self.atom_names[other]} and "
                        f"{self.atom_names[k]} overlap at pair ({i},{j})")
                    partition_ok = False
                acc[i] |= rel.rows[i]
        if partition_ok:
            for i in range(n):
                if acc[i] != full:
                    j = next(iter_bits(full & ~acc[i]))
                    out.append(f"not a partition: pair ({i},{j}) is in no atom")
                    partition_ok = False
                    break
        if not partition_ok:
            return tuple(out)

        index = self._rows_index
        for k, rel in enumerate(self.atom_relations):
            if rel.converse().rows not in index:
                out.append(
                    f"not closed under converse: the converse of atom "
                    f"{self.atom_names[k]} is not an atom")

        for k, rel in enumerate(self.atom_relations):
            on_diag = any(rel.rows[i] >> i & 1 for i in range(n))
            off_diag = any(rel.rows[i] & ~(1 << i) for i in range(n))
            if on_diag and off_diag:
                out.append(
                    f"identity is not a union of atoms: atom {self.atom_names[k]} "
                    f"meets the identity without lying inside it")

        owner = self._pair_owner
        for x, rx in enumerate(self.atom_relations):
            for y, ry in enumerate(self.atom_relations):
                comp = rx.compose(ry)
                hit = set()
                for i in range(n):
                    for j in iter_bits(comp.rows[i]):
                        hit.add(owner[i * n + j])
                for z in sorted(hit):
                    if not self.atom_relations[z] <= comp:
                        out.append(
                            f"not closed under composition: "
                            f"{self.atom_names[x]};{self.atom_names[y]} meets atom "
                            f"{self.atom_names[z]} without covering it")
        return tuple(out)

    def require_invariants(self) -> None:
        bad = self.invariant_violations()
        if bad:
            raise ConcreteAlgebraError(bad)


def extract_atom_structure(c: ConcreteAlgebra) -> AtomStructure:
    """Read the abstract atom structure off a concrete algebra.

    Cycles are the triples (x, y, z) whose atom z meets the composition
    x;y.  The result always passes validation; anything else is a bug.
    """
    c.require_invariants()
    n = c.base_size
    index = c._rows_index
    conv = tuple(index[rel.converse().rows] for rel in c.atom_relations)
    ident = frozenset(
        k for k, rel in enumerate(c.atom_relations)
        if all(rel.rows[i] & ~(1 << i) == 0 for i in range(n)))
    owner = c._pair_owner
    cycles: set[tuple[int, int, int]] = set()
    for x, rx in enumerate(c.atom_relations):
        for y, ry in enumerate(c.atom_relations):
            comp = rx.compose(ry)
            for i in range(n):
                for j in iter_bits(comp.rows[i]):
                    cycles.add((x, y, owner[i * n + j]))
    s = AtomStructure(c.atom_names, conv, ident, frozenset(cycles))
    if not s.validation.ok:
        raise InternalError(
            "extracted atom structure fails validation: "
            + "; ".join(s.validation.lines()))
    return s
