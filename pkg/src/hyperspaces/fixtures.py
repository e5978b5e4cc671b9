"""Built-in fixture documents and a curated set of broken tables."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .fileformat import StructureDocument, serialize
from .hyperspace import cone_space, echo_space, rational_space, trivial_space
from .hyperstructures import (
    Hyperfield,
    krasner_hyperfield,
    prime_field,
    sign_hyperfield,
    z2_hypergroup,
)
from .inner import dot_product, max_norm
from .setalg import HyperOp, ScalarOp

Q = Fraction

# The witness at which the echo star (a * v = {av, v}) breaks associativity
# of scalars: 2 * (3 * (1, 0)) differs from (2 * 3) * (1, 0).
ECHO_WITNESS = (Q(2), Q(3), (Q(1), Q(0)))

# The witness at which the cone star (a * v = {av, theta}) breaks homogeneity
# of the dot product: sup <x, (-1, 0)> over x in 1 * (1, 0) is 0, not -1.
CONE_WITNESS = (Q(1), (Q(1), Q(0)), (Q(-1), Q(0)))


def _q(*xs):
    return tuple(Q(x) for x in xs)


def _vs(*vs):
    return tuple(_q(*v) for v in vs)


def _field_doc(F: Hyperfield, name: str) -> StructureDocument:
    return StructureDocument(field=F, name=name)


def trivial_q2() -> StructureDocument:
    W = trivial_space(2)
    return StructureDocument(
        name="trivial-q2", field=W.scalars, space=W, inner=dot_product(), norm=max_norm(),
        pool=_q(0, 1, -1, 2, -2, Q(1, 2), Q(-1, 2)),
        universe=_vs((0, 0), (1, 0), (0, 1), (1, 1)),
        probes=_vs((1, 0), (0, 1), (1, 1), (2, -1), (Q(1, 2), -2)),
        basis=_vs((1, 0), (0, 1)),
        orthogonal=_vs((1, 1), (1, -1)),
        gram_schmidt=_vs((1, 1), (1, 0)),
        scalar_samples=_q(0, 1, -1, 2, Q(1, 2)),
        vector_samples=_vs((0, 0), (1, 0), (0, 1), (1, -2), (Q(1, 2), 3)),
    )


def trivial_q3() -> StructureDocument:
    W = rational_space(3, "scale")
    return StructureDocument(
        name="trivial-q3", field=W.scalars, space=W, inner=dot_product(),
        pool=_q(0, 1, -1, 2, -2),
        universe=_vs((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
        probes=_vs((1, 0, 0), (1, 1, 1), (2, 0, -1)),
        basis=_vs((1, 0, 0), (0, 1, 0), (0, 0, 1)),
        orthogonal=_vs((1, 1, 0), (1, -1, 0), (0, 0, 1)),
        gram_schmidt=_vs((1, 1, 0), (1, 0, 1), (0, 1, 1)),
        scalar_samples=_q(0, 1, -1, 2),
        vector_samples=_vs((0, 0, 0), (1, 0, 0), (0, 1, -1), (1, 2, 3)),
    )


def cone() -> StructureDocument:
    W = cone_space(2)
    return StructureDocument(
        name="cone", field=W.scalars, space=W, inner=dot_product(),
        pool=_q(0, 1, -1, 2),
        universe=_vs((0, 0), (1, 0), (0, 1)),
        basis=_vs((1, 0), (0, 1)),
        scalar_samples=_q(0, 1, -1, 2),
        vector_samples=_vs((0, 0), (1, 0), (-1, 0), (0, 1), (1, 1)),
    )


def echo() -> StructureDocument:
    W = echo_space(2)
    return StructureDocument(
        name="echo", field=W.scalars, space=W,
        scalar_samples=_q(0, 1, -1, 2, 3),
        vector_samples=_vs((0, 0), (1, 0), (0, 1)),
    )


def z2() -> StructureDocument:
    H = z2_hypergroup()
    return StructureDocument(group=dataclasses.replace(H, zero=0), name="z2")


FIXTURES = {
    "krasner": lambda: _field_doc(krasner_hyperfield(), "krasner"),
    "sign": lambda: _field_doc(sign_hyperfield(), "sign"),
    "gf2": lambda: _field_doc(prime_field(2), "gf2"),
    "gf3": lambda: _field_doc(prime_field(3), "gf3"),
    "z2": z2,
    "trivial_q2": trivial_q2,
    "trivial_q3": trivial_q3,
    "cone": cone,
    "echo": echo,
}

# Fixtures whose ``orthogonal`` bound is an orthogonal set of an inner-product space.
ORTHOGONAL_FIXTURES = ("trivial_q2", "trivial_q3")


def fixture(name: str) -> StructureDocument:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


def write_fixtures(directory, names=None) -> list:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in names or FIXTURES:
        path = directory / f"{name}.hyp"
        path.write_text(serialize(fixture(name)))
        paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# Single-cell mutations


@dataclass(frozen=True)
class Mutation:
    base: str
    table: str      # "add" or "mul"
    cell: tuple
    value: object   # a tuple of members for "add", an element for "mul"

    @property
    def label(self) -> str:
        a, b = self.cell
        sym = "+" if self.table == "add" else "*"
        return f"{self.base}: {a} {sym} {b} -> {self.value}"


MUTATIONS = (
    Mutation("krasner", "add", (1, 1), (1,)),
    Mutation("krasner", "add", (0, 1), (0, 1)),
    Mutation("krasner", "mul", (1, 1), 0),
    Mutation("krasner", "mul", (0, 1), 1),
    Mutation("sign", "add", (1, 1), (0, 1)),
    Mutation("sign", "add", (1, -1), (0, 1)),
    Mutation("sign", "mul", (-1, -1), -1),
    Mutation("sign", "add", (0, -1), (-1, 0)),
    Mutation("gf2", "add", (1, 1), (1,)),
    Mutation("gf2", "add", (0, 0), (0, 1)),
    Mutation("gf2", "mul", (1, 1), 0),
    Mutation("gf3", "add", (1, 2), (1,)),
    Mutation("gf3", "mul", (2, 2), 2),
    Mutation("gf3", "add", (1, 1), (0, 2)),
    Mutation("gf3", "mul", (1, 2), 1),
)


def mutate(m: Mutation) -> Hyperfield:
    """The base fixture's hyperfield with one table cell replaced.

    Derived maps (negation, inverses) are dropped so the checker has to
    rediscover them from the broken tables.
    """
    F = fixture(m.base).field
    C = F.carrier
    add = {(a, b): tuple(F.add(a, b)) for a in C for b in C}
    mul = {(a, b): F.mul(a, b) for a in C for b in C}
    if m.table == "add":
        add[m.cell] = m.value
    else:
        mul[m.cell] = m.value
    return Hyperfield(C, HyperOp(C, table=add), ScalarOp(C, table=mul), F.zero, F.one,
                      abs=F.abs, name=m.label)
