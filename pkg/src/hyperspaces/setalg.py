"""Exact kernel: carriers, finite sets of elements, set-valued operations.

Elements are plain hashable Python values.  Atoms of a finite carrier are
whatever the carrier was declared with (ints or strings); scalars of the
rational carrier are :class:`fractions.Fraction`; vectors of a rational
vector carrier are tuples of fractions.  Every carrier provides a total
canonical order through :meth:`sort_key`, and :class:`FiniteSet` always
iterates in that order.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Hashable, Iterable, Iterator, Mapping

Element = Hashable


class StructureError(Exception):
    """Base class for errors raised while evaluating a structure."""


class DomainError(StructureError, ValueError):
    """An element was used outside the carrier it belongs to."""


class MalformedStructureError(StructureError):
    """A table or rule does not define a valid (hyper)operation."""


class PreconditionError(StructureError, ValueError):
    """An operation was called on inputs that violate its precondition."""


class BudgetExceededError(StructureError):
    """A bounded search would exceed its configured budget."""


def as_rational(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (Rational, str)):
        raise DomainError(f"{x!r} is not an exact rational")
    return Fraction(x)


class FiniteCarrier:
    """A finite carrier of atoms, ordered by declaration."""

    finite = True

    def __init__(self, elements: Iterable[Element]):
        self.elements = tuple(elements)
        if not self.elements:
            raise MalformedStructureError("a carrier must be non-empty")
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise MalformedStructureError("duplicate carrier element")

    def __contains__(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteCarrier) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"FiniteCarrier({list(self.elements)!r})"

    def index(self, x) -> int:
        return self._index[x]

    def sort_key(self, x):
        return self._index[x]

    def normalize(self, x) -> Element:
        if x not in self:
            raise DomainError(f"{x!r} is not in carrier {self.elements!r}")
        return x


class RationalCarrier:
    """The exact rationals.

    Ordered by absolute value, positives before negatives, so that
    coefficient searches try simple scalars first: 0, 1, -1, 1/2, ...
    """

    finite = False

    def __contains__(self, x) -> bool:
        return isinstance(x, Rational) and not isinstance(x, bool)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalCarrier)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "RationalCarrier()"

    def sort_key(self, x):
        return (abs(x), x < 0)

    def normalize(self, x) -> Fraction:
        return as_rational(x)


class VectorCarrier:
    """Exact rational vectors of a fixed dimension, ordered lexicographically."""

    finite = False

    def __init__(self, dim: int):
        if dim < 1:
            raise MalformedStructureError("vector dimension must be positive")
        self.dim = dim

    def __contains__(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == self.dim
            and all(isinstance(c, Rational) and not isinstance(c, bool) for c in x)
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorCarrier) and other.dim == self.dim

    def __hash__(self) -> int:
        return hash(("Q^", self.dim))

    def __repr__(self) -> str:
        return f"VectorCarrier({self.dim})"

    @property
    def zero(self) -> tuple:
        return (Fraction(0),) * self.dim

    def sort_key(self, x):
        return x

    def normalize(self, x) -> tuple:
        if not isinstance(x, (tuple, list)) or len(x) != self.dim:
            raise DomainError(f"{x!r} is not a vector of dimension {self.dim}")
        return tuple(as_rational(c) for c in x)


class FiniteSet:
    """An immutable, deduplicated set of elements of one carrier.

    Equality and hashing ignore the carrier and compare members only;
    iteration follows the carrier's canonical order.
    """

    __slots__ = ("_members", "_frozen", "carrier")

    def __init__(self, members: Iterable[Element], carrier):
        frozen = frozenset(members)
        self._frozen = frozen
        self._members = tuple(sorted(frozen, key=carrier.sort_key))
        self.carrier = carrier

    def __iter__(self) -> Iterator[Element]:
        return iter(self._members)

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, x) -> bool:
        return x in self._frozen

    def __eq__(self, other) -> bool:
        if isinstance(other, FiniteSet):
            return self._frozen == other._frozen
        if isinstance(other, (set, frozenset)):
            return self._frozen == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._frozen)

    def __le__(self, other: "FiniteSet") -> bool:
        return self._frozen <= frozenset(other)

    def __ge__(self, other: "FiniteSet") -> bool:
        return self._frozen >= frozenset(other)

    def __or__(self, other: "FiniteSet") -> "FiniteSet":
        return FiniteSet(self._frozen | frozenset(other), self.carrier)

    def __repr__(self) -> str:
        return "{" + ", ".join(format_element(m) for m in self._members) + "}"

    @property
    def members(self) -> tuple:
        return self._members

    def first(self) -> Element:
        return self._members[0]


def format_element(x) -> str:
    """Render an element in the structure-file syntax."""
    if isinstance(x, tuple):
        return "(" + ", ".join(format_element(c) for c in x) + ")"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


class HyperOp:
    """A binary hyperoperation ``carrier x carrier -> P*(carrier)``.

    Backed either by an explicit table (finite carriers) or by a rule.  A
    rule must return a finite iterable; results are checked for
    non-emptiness and carrier membership on every application.
    """

    def __init__(self, carrier, *, table: Mapping | None = None,
                 rule: Callable | None = None, name: str | None = None):
        if (table is None) == (rule is None):
            raise ValueError("give exactly one of table or rule")
        self.carrier = carrier
        self.rule = rule
        self.name = name
        self.table = None
        if table is not None:
            if not carrier.finite:
                raise MalformedStructureError("table backing needs a finite carrier")
            self.table = {}
            for x in carrier:
                for y in carrier:
                    if (x, y) not in table:
                        raise MalformedStructureError(f"missing table cell {x!r}, {y!r}")
                    self.table[x, y] = self._result(x, y, table[x, y])

    def _result(self, x, y, members) -> FiniteSet:
        normalized = []
        for m in members:
            if m not in self.carrier:
                raise MalformedStructureError(
                    f"{format_element(x)} # {format_element(y)} contains "
                    f"{format_element(m)}, which lies outside the carrier")
            normalized.append(self.carrier.normalize(m))
        if not normalized:
            raise MalformedStructureError(
                f"{format_element(x)} # {format_element(y)} is empty; "
                "a hyperoperation must return non-empty sets")
        return FiniteSet(normalized, self.carrier)

    def __call__(self, x, y) -> FiniteSet:
        if x not in self.carrier or y not in self.carrier:
            bad = x if x not in self.carrier else y
            raise DomainError(f"{bad!r} is not in the carrier of this operation")
        if self.table is not None:
            return self.table[x, y]
        return self._result(x, y, self.rule(x, y))

    def materialize(self, elements: Iterable | None = None) -> "HyperOp":
        """Tabulate the operation on a finite carrier (or an explicit element list)."""
        if elements is None:
            carrier = self.carrier
        else:
            carrier = FiniteCarrier(elements)
        table = {(x, y): tuple(self(x, y)) for x in carrier for y in carrier}
        return HyperOp(carrier, table=table, name=self.name)

    def is_commutative(self, elements: Iterable | None = None) -> bool:
        elements = list(self.carrier if elements is None else elements)
        return all(self(x, y) == self(y, x) for x in elements for y in elements)


class ScalarOp:
    """A single-valued binary operation on a carrier (table or rule backed)."""

    def __init__(self, carrier, *, table: Mapping | None = None,
                 rule: Callable | None = None, name: str | None = None):
        if (table is None) == (rule is None):
            raise ValueError("give exactly one of table or rule")
        self.carrier = carrier
        self.rule = rule
        self.name = name
        self.table = None
        if table is not None:
            self.table = {}
            for x in carrier:
                for y in carrier:
                    if (x, y) not in table:
                        raise MalformedStructureError(f"missing table cell {x!r}, {y!r}")
                    value = table[x, y]
                    if value not in carrier:
                        raise MalformedStructureError(
                            f"{format_element(x)} * {format_element(y)} = "
                            f"{format_element(value)} lies outside the carrier")
                    self.table[x, y] = value

    def __call__(self, x, y):
        if x not in self.carrier or y not in self.carrier:
            bad = x if x not in self.carrier else y
            raise DomainError(f"{bad!r} is not in the carrier of this operation")
        if self.table is not None:
            return self.table[x, y]
        value = self.rule(x, y)
        if value not in self.carrier:
            raise MalformedStructureError(f"{value!r} lies outside the carrier")
        return self.carrier.normalize(value)


def hyper_apply(op: HyperOp, x, y) -> FiniteSet:
    return op(x, y)


def extend_point_set(op: HyperOp, x, A: Iterable) -> FiniteSet:
    """``x # A``: the union of ``x # a`` over ``a`` in ``A``."""
    members = set()
    for a in A:
        members.update(op(x, a))
    if not members:
        raise PreconditionError("cannot extend over an empty set")
    return FiniteSet(members, op.carrier)


def extend_set_point(op: HyperOp, A: Iterable, y) -> FiniteSet:
    members = set()
    for a in A:
        members.update(op(a, y))
    if not members:
        raise PreconditionError("cannot extend over an empty set")
    return FiniteSet(members, op.carrier)


def extend_set_set(op: HyperOp, A: Iterable, B: Iterable) -> FiniteSet:
    """``A # B``: the union of ``a # b`` over all pairs."""
    B = tuple(B)
    members = set()
    for a in A:
        for b in B:
            members.update(op(a, b))
    if not members:
        raise PreconditionError("cannot extend over an empty set")
    return FiniteSet(members, op.carrier)
