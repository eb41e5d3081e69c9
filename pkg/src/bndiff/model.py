"""Immutable data model for discrete Bayesian networks.

Variables, event spaces, CPTs, evidence sets and distributions. Construction
is permissive about probability *values* (a malformed CPT row is data, not a
crash) so that ``validate_network`` can report violations; construction does
fail hard on unresolvable references such as unknown spaces or parents.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

PROB_TOLERANCE = 1e-9

UNOBSERVED = "?"


class ModelError(Exception):
    """Base class for model construction and lookup failures."""


class InvalidNameError(ModelError):
    """Variable name unusable for abbreviation (empty or not letter-initial)."""


class DomainError(ModelError):
    """A value or variable does not belong to the space it was used with."""


class SpaceKind(str, Enum):
    CATEGORICAL = "categorical"
    ORDERED = "ordered"


@dataclass(frozen=True)
class EventSpace:
    """A finite set of named values with a fixed, everywhere-identical order."""

    id: str
    kind: SpaceKind
    values: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "kind", SpaceKind(self.kind))
        if not self.values:
            raise ModelError(f"event space {self.id!r} has no values")
        if len(set(self.values)) != len(self.values):
            raise ModelError(f"event space {self.id!r} has duplicate values")

    @property
    def size(self) -> int:
        return len(self.values)

    def index_of(self, value: str) -> int:
        try:
            return self.values.index(value)
        except ValueError:
            raise DomainError(
                f"value {value!r} is not in event space {self.id!r} "
                f"(values: {', '.join(self.values)})"
            ) from None


@dataclass(frozen=True)
class Variable:
    """A random variable: position in the network, name, display abbreviation."""

    index: int
    name: str
    abbreviation: str
    space: EventSpace


@dataclass(frozen=True)
class CPT:
    """Conditional probability table: one row per parent-value permutation.

    Rows are stored in canonical mixed-radix order with the *last* parent
    varying fastest (see ``row_index``).
    """

    variable: Variable
    parents: tuple[Variable, ...]
    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(
            self, "rows", tuple(tuple(float(p) for p in row) for row in self.rows)
        )

    @property
    def expected_row_count(self) -> int:
        return row_count(self.parents)


@dataclass(frozen=True)
class BayesianNetwork:
    """A DAG of finite discrete variables with one CPT per variable.

    The structure (parent lists) lives in the CPTs, which keeps "every CPT
    parent list matches the structure" true by construction. Acyclicity and
    probability-row invariants are checked by ``validate_network``.
    """

    variables: tuple[Variable, ...]
    cpts: tuple[CPT, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "cpts", tuple(self.cpts))
        if len(self.variables) != len(self.cpts):
            raise ModelError("need exactly one CPT per variable")
        for var, cpt in zip(self.variables, self.cpts):
            if cpt.variable != var:
                raise ModelError(
                    f"CPT at position {var.index} is for {cpt.variable.name!r},"
                    f" expected {var.name!r}"
                )

    @cached_property
    def _by_name(self) -> dict[str, Variable]:
        return {v.name: v for v in self.variables}

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def variable(self, name: str) -> Variable:
        try:
            return self._by_name[name]
        except KeyError:
            raise DomainError(f"unknown variable {name!r}") from None

    def cpt(self, name: str) -> CPT:
        return self.cpts[self.variable(name).index]

    def parents_of(self, name: str) -> tuple[Variable, ...]:
        return self.cpt(name).parents

    def edges(self) -> list[tuple[str, str]]:
        """Directed edges as (parent, child) pairs, by child then parent order."""
        out = []
        for cpt in self.cpts:
            for parent in cpt.parents:
                out.append((parent.name, cpt.variable.name))
        return out

    def topological_order(self) -> list[Variable]:
        """Parents-before-children order. Raises ModelError on a cycle."""
        order = _toposort(self.names, self.edges())
        if order is None:
            raise ModelError("network structure contains a cycle")
        return [self.variable(name) for name in order]


@dataclass(frozen=True)
class Distribution:
    """Probability masses aligned to an event space's value order."""

    space: EventSpace
    masses: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "masses", tuple(float(m) for m in self.masses))
        if len(self.masses) != self.space.size:
            raise ModelError(
                f"distribution over {self.space.id!r} needs {self.space.size} "
                f"masses, got {len(self.masses)}"
            )
        if min(self.masses) < 0:
            raise ModelError("distribution has a negative mass")
        if abs(math.fsum(self.masses) - 1.0) > PROB_TOLERANCE:
            raise ModelError(
                f"distribution masses sum to {math.fsum(self.masses)!r}, not 1"
            )

    def mass(self, value: str) -> float:
        return self.masses[self.space.index_of(value)]


def point_mass(space: EventSpace, value: str) -> Distribution:
    masses = [0.0] * space.size
    masses[space.index_of(value)] = 1.0
    return Distribution(space, tuple(masses))


@dataclass(frozen=True)
class EvidenceSet:
    """A partial observation: one slot per variable, None meaning '?'."""

    slots: tuple[str | None, ...]

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))

    @staticmethod
    def empty(net: BayesianNetwork) -> "EvidenceSet":
        return EvidenceSet((None,) * len(net.variables))

    @staticmethod
    def from_mapping(net: BayesianNetwork, mapping: Mapping[str, str]) -> "EvidenceSet":
        """Build from {variable name: value}; omitted or '?' means unobserved."""
        slots: list[str | None] = [None] * len(net.variables)
        for name, value in mapping.items():
            var = net.variable(name)
            if value == UNOBSERVED:
                continue
            var.space.index_of(value)  # raises DomainError if out of domain
            slots[var.index] = value
        return EvidenceSet(tuple(slots))

    def to_mapping(self, net: BayesianNetwork) -> dict[str, str]:
        return {
            net.variables[i].name: v for i, v in enumerate(self.slots) if v is not None
        }

    @property
    def is_empty(self) -> bool:
        return all(v is None for v in self.slots)

    def observed_indices(self) -> list[int]:
        return [i for i, v in enumerate(self.slots) if v is not None]

    def value_of(self, var: Variable) -> str | None:
        return self.slots[var.index]


def abbreviate(names: Sequence[str]) -> list[str]:
    """Single capital letter per name, suffixed 1,2,... in input order on collision.

    The letter is the uppercased first character, which must be an ASCII
    letter; anything else is rejected rather than guessed at.
    """
    if not names:
        raise InvalidNameError("cannot abbreviate an empty name list")
    letters = []
    for name in names:
        if not name or not (name[0].isascii() and name[0].isalpha()):
            raise InvalidNameError(
                f"cannot abbreviate {name!r}: names must start with an ASCII letter"
            )
        letters.append(name[0].upper())
    totals = Counter(letters)
    seen: Counter[str] = Counter()
    out = []
    for letter in letters:
        if totals[letter] == 1:
            out.append(letter)
        else:
            seen[letter] += 1
            out.append(f"{letter}{seen[letter]}")
    return out


def row_count(parents: Sequence[Variable]) -> int:
    count = 1
    for parent in parents:
        count *= parent.space.size
    return count


def row_index(parent_values: Sequence[str], parents: Sequence[Variable]) -> int:
    """Canonical CPT row index: mixed radix, last parent varying fastest."""
    if len(parent_values) != len(parents):
        raise DomainError(
            f"expected {len(parents)} parent values, got {len(parent_values)}"
        )
    index = 0
    for value, parent in zip(parent_values, parents):
        index = index * parent.space.size + parent.space.index_of(value)
    return index


def row_values(index: int, parents: Sequence[Variable]) -> tuple[str, ...]:
    """Inverse of ``row_index``: the parent values encoded by a row index."""
    if not 0 <= index < row_count(parents):
        raise DomainError(f"row index {index} out of range")
    ordinals = []
    for parent in reversed(parents):
        ordinals.append(index % parent.space.size)
        index //= parent.space.size
    return tuple(
        parent.space.values[o] for parent, o in zip(parents, reversed(ordinals))
    )


def build_network(
    spaces: Iterable[EventSpace],
    variables: Sequence[tuple[str, str]],
    parents: Mapping[str, Sequence[str]],
    rows: Mapping[str, Sequence[Sequence[float]]],
) -> BayesianNetwork:
    """Assemble a network from named parts.

    ``variables`` is an ordered list of (name, space id); ``parents`` and
    ``rows`` are keyed by variable name. Unknown references and duplicate
    names are hard errors; probability-level violations are left for
    ``validate_network``.
    """
    space_by_id: dict[str, EventSpace] = {}
    for space in spaces:
        existing = space_by_id.get(space.id)
        if existing is not None and existing != space:
            raise ModelError(f"conflicting definitions for event space {space.id!r}")
        space_by_id[space.id] = space

    names = [name for name, _ in variables]
    if len(set(names)) != len(names):
        dupe = next(n for n, c in Counter(names).items() if c > 1)
        raise ModelError(f"duplicate variable name {dupe!r}")
    abbrevs = abbreviate(names)

    var_list: list[Variable] = []
    for i, (name, space_id) in enumerate(variables):
        if space_id not in space_by_id:
            raise ModelError(f"variable {name!r} references unknown space {space_id!r}")
        var_list.append(Variable(i, name, abbrevs[i], space_by_id[space_id]))
    by_name = {v.name: v for v in var_list}

    cpts = []
    for var in var_list:
        parent_vars = []
        for pname in parents.get(var.name, ()):
            if pname not in by_name:
                raise ModelError(
                    f"variable {var.name!r} references unknown parent {pname!r}"
                )
            parent_vars.append(by_name[pname])
        cpts.append(CPT(var, tuple(parent_vars), rows.get(var.name, ())))
    return BayesianNetwork(tuple(var_list), tuple(cpts))


@dataclass(frozen=True)
class Violation:
    """One broken invariant, naming the variable or row at fault."""

    kind: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind} [{self.subject}]: {self.message}"


def validate_network(net: BayesianNetwork) -> list[Violation]:
    """Check every structural and probability invariant; empty list means valid."""
    violations: list[Violation] = []

    expected_abbrevs = abbreviate(list(net.names))
    for var, expected in zip(net.variables, expected_abbrevs):
        if var.abbreviation != expected:
            violations.append(
                Violation(
                    "abbreviation",
                    var.name,
                    f"abbreviation {var.abbreviation!r} should be {expected!r}",
                )
            )

    for cpt in net.cpts:
        name = cpt.variable.name
        expected_rows = cpt.expected_row_count
        if len(cpt.rows) != expected_rows:
            violations.append(
                Violation(
                    "cpt-shape",
                    name,
                    f"{len(cpt.rows)} rows, need {expected_rows} "
                    f"(one per parent-value permutation)",
                )
            )
        width = cpt.variable.space.size
        for r, row in enumerate(cpt.rows):
            subject = f"{name}[{r}]"
            if len(row) != width:
                violations.append(
                    Violation(
                        "cpt-shape",
                        subject,
                        f"row has {len(row)} entries, space has {width} values",
                    )
                )
                continue
            if min(row) < 0:
                violations.append(
                    Violation("cpt-entry", subject, f"negative entry {min(row)!r}")
                )
            total = math.fsum(row)
            if abs(total - 1.0) > PROB_TOLERANCE:
                violations.append(
                    Violation(
                        "cpt-normalization",
                        subject,
                        f"row sums to {total!r}, not 1 within {PROB_TOLERANCE}",
                    )
                )

    if _toposort(net.names, net.edges()) is None:
        cyclic = _cycle_members(net)
        violations.append(
            Violation("cycle", ", ".join(cyclic), "structure is not acyclic")
        )
    return violations


def _toposort(names: Sequence[str], edges: Sequence[tuple[str, str]]):
    """Kahn topological sort; returns None if a cycle prevents completion."""
    indegree = {name: 0 for name in names}
    children: dict[str, list[str]] = {name: [] for name in names}
    for parent, child in edges:
        indegree[child] += 1
        children[parent].append(child)
    ready = [name for name in names if indegree[name] == 0]
    order = []
    while ready:
        name = ready.pop(0)
        order.append(name)
        for child in children[name]:
            indegree[child] -= 1
            if indegree[child] == 0:
                ready.append(child)
    return order if len(order) == len(names) else None


def _cycle_members(net: BayesianNetwork) -> list[str]:
    """Names of variables left over after peeling all acyclic prefix nodes."""
    indegree = {name: 0 for name in net.names}
    children: dict[str, list[str]] = {name: [] for name in net.names}
    for parent, child in net.edges():
        indegree[child] += 1
        children[parent].append(child)
    ready = [name for name, d in indegree.items() if d == 0]
    removed = set()
    while ready:
        name = ready.pop(0)
        removed.add(name)
        for child in children[name]:
            indegree[child] -= 1
            if indegree[child] == 0:
                ready.append(child)
    return [name for name in net.names if name not in removed]
