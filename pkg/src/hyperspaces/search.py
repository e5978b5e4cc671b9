"""Exhaustive search for small hypergroups, hyperfields and star operations.

Tables are enumerated on the carrier ``0..n-1`` with each hyperoperation
cell stored as a bitmask.  A fast bitmask filter discards most tables; the
survivors are reduced to a canonical form under relabelings that fix the
designated constants, and each distinct class is re-verified with the
authoritative checkers from :mod:`hyperspaces.hyperstructures`.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .hyperspace import HyperVectorSpace, StarOp
from .hyperstructures import (
    Hyperfield,
    Hypergroup,
    Violation,
    check_hyperfield,
    check_hypergroup,
    collect,
    evaluate,
)
from .setalg import (
    BudgetExceededError,
    FiniteCarrier,
    FiniteSet,
    HyperOp,
    PreconditionError,
    ScalarOp,
)

MAX_ORDER = {"hypergroup": 4, "hyperfield": 3}
DEFAULT_BUDGET = 10 ** 8


class CapExceededError(BudgetExceededError):
    """The requested carrier size is beyond the desk-scale cap."""


@dataclass(frozen=True)
class SearchSpec:
    n: int
    kind: str = "hypergroup"
    commutative: bool = True
    zero: int | None = None
    one: int | None = None
    budget: int = DEFAULT_BUDGET
    prune: bool = True
    fixed_add: tuple = ()
    fixed_mul: tuple = ()

    def __post_init__(self):
        if self.kind not in MAX_ORDER:
            raise PreconditionError(f"unknown search kind {self.kind!r}")
        if self.n < 1:
            raise PreconditionError("carrier size must be at least 1")
        if self.budget <= 0:
            raise PreconditionError("budget must be positive")
        if self.n > MAX_ORDER[self.kind]:
            raise CapExceededError(
                f"order {self.n} exceeds the cap of {MAX_ORDER[self.kind]} for {self.kind}s")


@dataclass(frozen=True)
class CatalogEntry:
    kind: str
    size: int
    add: tuple
    mul: tuple | None
    key: str
    zero: int | None
    one: int | None
    digest: str

    def structure(self):
        carrier = FiniteCarrier(range(self.size))
        add = HyperOp(carrier, table={(a, b): self.add[a][b]
                                      for a in carrier for b in carrier})
        if self.kind == "hypergroup":
            return Hypergroup(carrier, add, self.zero, commutative=_symmetric(self.add))
        mul = ScalarOp(carrier, table={(a, b): self.mul[a][b]
                                       for a in carrier for b in carrier})
        return Hyperfield(carrier, add, mul, self.zero, self.one)

    def verify(self) -> bool:
        s = self.structure()
        if self.kind == "hypergroup":
            return check_hypergroup(s).is_hypergroup
        return check_hyperfield(s).is_hyperfield


@dataclass
class Census:
    spec: SearchSpec
    entries: list
    examined: int
    partial: bool

    @property
    def keys(self) -> set:
        return {e.key for e in self.entries}


def _symmetric(table) -> bool:
    n = len(table)
    return all(table[a][b] == table[b][a] for a in range(n) for b in range(n))


def _bits(n: int) -> list:
    return [[i for i in range(n) if m >> i & 1] for m in range(1 << n)]


# ---------------------------------------------------------------------------
# Fast bitmask filters


def _valid_zeros(t, n, bits, zero=None) -> list:
    valid = []
    for z in (range(n) if zero is None else (zero,)):
        zb = 1 << z
        neg = []
        for a in range(n):
            inv = [b for b in range(n) if t[a][b] & zb and t[b][a] & zb]
            if len(inv) != 1:
                break
            neg.append(inv[0])
        else:
            if all(t[a][neg[c]] >> b & 1
                   for b in range(n) for c in range(n) for a in bits[t[b][c]]):
                valid.append(z)
    return valid


def _associative(t, n, bits) -> bool:
    for a in range(n):
        ta = t[a]
        for b in range(n):
            tab = bits[ta[b]]
            tb = t[b]
            for c in range(n):
                left = 0
                for x in bits[tb[c]]:
                    left |= ta[x]
                right = 0
                for x in tab:
                    right |= t[x][c]
                if left != right:
                    return False
    return True


def _hyperfield_ok(t, m, n, bits, zero, one) -> bool:
    if zero == one:
        return False
    r = range(n)
    for a in r:
        if m[a][zero] != zero or m[zero][a] != zero or m[a][one] != a:
            return False
        if a != zero and all(m[a][b] != one for b in r):
            return False
        for b in r:
            if m[a][b] != m[b][a]:
                return False
            for c in r:
                if m[a][m[b][c]] != m[m[a][b]][c]:
                    return False
                left = 0
                for x in bits[t[b][c]]:
                    left |= 1 << m[a][x]
                if left != t[m[a][b]][m[a][c]]:
                    return False
                left = 0
                for x in bits[t[b][c]]:
                    left |= 1 << m[x][a]
                if left != t[m[b][a]][m[c][a]]:
                    return False
    return True


# ---------------------------------------------------------------------------
# Canonical forms


def _perm_mask(mask, p) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << p[i]
        mask >>= 1
        i += 1
    return out


def _relabel(t, m, p, n):
    nt = [[0] * n for _ in range(n)]
    nm = None if m is None else [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            nt[p[a]][p[b]] = _perm_mask(t[a][b], p)
            if m is not None:
                nm[p[a]][p[b]] = p[m[a][b]]
    return nt, nm


def _encode(t, m) -> tuple:
    flat = tuple(x for row in t for x in row)
    if m is not None:
        flat += tuple(x for row in m for x in row)
    return flat


def canonical_form(t, m, n, fixed=()) -> tuple:
    """Least encoding over relabelings of ``0..n-1`` that fix ``fixed``."""
    best = None
    for p in itertools.permutations(range(n)):
        if any(p[x] != x for x in fixed):
            continue
        nt, nm = _relabel(t, m, p, n)
        enc = _encode(nt, nm)
        if best is None or enc < best[0]:
            best = (enc, nt, nm)
    return best


def _key(kind, n, t, m) -> str:
    key = f"{kind}/{n}:" + ".".join(str(x) for row in t for x in row)
    if m is not None:
        key += "|" + ".".join(str(x) for row in m for x in row)
    return key


def table_key(kind: str, structure) -> str:
    """Canonical key of a finite hypergroup or hyperfield given as a structure."""
    els = list(structure.carrier)
    n = len(els)
    idx = {e: i for i, e in enumerate(els)}
    t = [[sum(1 << idx[x] for x in structure.add(a, b)) for b in els] for a in els]
    m = None
    fixed = ()
    if kind == "hyperfield":
        m = [[idx[structure.mul(a, b)] for b in els] for a in els]
        first = [idx[structure.zero], idx[structure.one]]
        order = first + [i for i in range(n) if i not in first]
        t, m = _relabel(t, m, [order.index(i) for i in range(n)], n)
        fixed = (0, 1)
    _, nt, nm = canonical_form(t, m, n, fixed)
    return _key(kind, n, nt, nm)


def _entry(kind, n, t, m, zero, one, bits) -> CatalogEntry:
    add = tuple(tuple(tuple(bits[t[a][b]]) for b in range(n)) for a in range(n))
    mul = None if m is None else tuple(tuple(row) for row in m)
    digest = f"zero={zero}" + ("" if one is None else f" one={one}")
    return CatalogEntry(kind, n, add, mul, _key(kind, n, t, m), zero, one, digest)


# ---------------------------------------------------------------------------
# Enumeration


def _cells(spec: SearchSpec):
    n = spec.n
    fixed = {}
    for (a, b), members in spec.fixed_add:
        fixed[a, b] = sum(1 << x for x in members)
    zero = spec.zero if spec.kind == "hypergroup" else (0 if spec.zero is None else spec.zero)
    if spec.prune and spec.commutative and zero is not None:
        # a commutative hypergroup always has zero # a = {a}
        for a in range(n):
            fixed.setdefault((zero, a), 1 << a)
            fixed.setdefault((a, zero), 1 << a)
    if spec.prune and spec.commutative:
        cells = [(a, b) for a in range(n) for b in range(a, n) if (a, b) not in fixed]
    else:
        cells = [(a, b) for a in range(n) for b in range(n) if (a, b) not in fixed]
    return cells, fixed, zero


def _mul_cells(spec: SearchSpec):
    n = spec.n
    zero = 0 if spec.zero is None else spec.zero
    one = 1 if spec.one is None else spec.one
    fixed = {}
    for (a, b), v in spec.fixed_mul:
        fixed[a, b] = v
    if spec.prune:
        for a in range(n):
            for key, v in (((a, zero), zero), ((zero, a), zero), ((a, one), a), ((one, a), a)):
                fixed.setdefault(key, v)
        cells = [(a, b) for a in range(n) for b in range(a, n) if (a, b) not in fixed]
    else:
        cells = [(a, b) for a in range(n) for b in range(n) if (a, b) not in fixed]
    return cells, fixed, zero, one


def _fill(n, cells, values, fixed, symmetric):
    t = [[0] * n for _ in range(n)]
    for (a, b), v in fixed.items():
        t[a][b] = v
    for (a, b), v in zip(cells, values):
        t[a][b] = v
        if symmetric:
            t[b][a] = v
    return t


def space_size(spec: SearchSpec) -> int:
    cells, _, _ = _cells(spec)
    total = ((1 << spec.n) - 1) ** len(cells)
    if spec.kind == "hyperfield":
        mcells = _mul_cells(spec)[0]
        total *= spec.n ** len(mcells)
    return total


def _scan(spec: SearchSpec, first_values, limit):
    """Scan the part of the table space whose first free cell takes one of
    ``first_values``.  Returns ``(found, examined, hit_limit)``."""
    n = spec.n
    bits = _bits(n)
    cells, fixed, zero = _cells(spec)
    symmetric = spec.prune and spec.commutative
    choices = range(1, 1 << n)
    if spec.kind == "hyperfield":
        mcells, mfixed, fzero, fone = _mul_cells(spec)
    found = {}
    examined = 0
    rest = [choices] * max(len(cells) - 1, 0)
    heads = first_values if cells else [None]
    for head in heads:
        for tail in itertools.product(*rest):
            values = tail if head is None else (head,) + tail
            t = _fill(n, cells, values, fixed, symmetric)
            if spec.kind == "hypergroup":
                examined += 1
                if examined > limit:
                    return found, examined - 1, True
                if spec.commutative and not symmetric and not _symmetric(t):
                    continue
                zeros = _valid_zeros(t, n, bits, zero)
                if not zeros or not _associative(t, n, bits):
                    continue
                enc, nt, _ = canonical_form(t, None, n)
                if enc not in found:
                    found[enc] = (nt, None)
            else:
                if not _symmetric(t):
                    examined += 1
                    if examined > limit:
                        return found, examined - 1, True
                    continue
                if not _valid_zeros(t, n, bits, fzero) or not _associative(t, n, bits):
                    examined += 1
                    if examined > limit:
                        return found, examined - 1, True
                    continue
                for mvals in itertools.product(range(n), repeat=len(mcells)):
                    examined += 1
                    if examined > limit:
                        return found, examined - 1, True
                    m = _fill(n, mcells, mvals, mfixed, spec.prune)
                    if not _hyperfield_ok(t, m, n, bits, fzero, fone):
                        continue
                    enc, nt, nm = canonical_form(t, m, n, (fzero, fone))
                    if enc not in found:
                        found[enc] = (nt, nm)
    return found, examined, False


def _scan_job(args):
    spec, heads = args
    found, examined, _ = _scan(spec, heads, float("inf"))
    return found, examined


def _census(spec: SearchSpec, jobs: int) -> Census:
    n = spec.n
    if spec.kind == "hyperfield" and n == 1:
        raise PreconditionError("hyperfields need distinct zero and one")
    heads = list(range(1, 1 << n))
    total = space_size(spec)
    if jobs > 1 and total <= spec.budget and _cells(spec)[0]:
        chunks = [heads[i::jobs] for i in range(jobs)]
        found, examined = {}, 0
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part, count in pool.map(_scan_job, [(spec, c) for c in chunks if c]):
                examined += count
                for enc, tables in part.items():
                    found.setdefault(enc, tables)
        partial = False
    else:
        found, examined, partial = _scan(spec, heads, spec.budget)

    bits = _bits(n)
    entries = []
    for enc in sorted(found):
        t, m = found[enc]
        if spec.kind == "hypergroup":
            zero = _valid_zeros(t, n, bits)[0]
            entries.append(_entry("hypergroup", n, t, None, zero, None, bits))
        else:
            fzero = 0 if spec.zero is None else spec.zero
            fone = 1 if spec.one is None else spec.one
            entries.append(_entry("hyperfield", n, t, m, fzero, fone, bits))
    entries.sort(key=lambda e: e.key)
    return Census(spec, entries, examined, partial)


def enumerate_hypergroups(spec: SearchSpec, jobs: int = 1) -> Census:
    """All hypergroups on ``0..n-1`` allowed by ``spec``, one per relabeling class.

    With ``prune`` on, commutative searches only enumerate the upper
    triangle, and a designated zero fixes its row to ``0 # a = {a}``.
    """
    if spec.kind != "hypergroup":
        raise PreconditionError("spec is not a hypergroup search")
    return _census(spec, jobs)


def enumerate_hyperfields(spec: SearchSpec, jobs: int = 1) -> Census:
    """Hyperfields with zero ``0`` and one ``1`` (unless designated otherwise)."""
    if spec.kind != "hyperfield":
        raise PreconditionError("spec is not a hyperfield search")
    return _census(spec, jobs)


def default_jobs() -> int:
    return max(1, min(4, os.cpu_count() or 1))


# ---------------------------------------------------------------------------
# Catalog files


def write_catalog(entries: Iterable[CatalogEntry], directory) -> Path:
    """Write one structure file per entry plus ``index.tsv``; returns the index path."""
    from .fileformat import StructureDocument, serialize

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    lines = []
    for i, e in enumerate(entries):
        path = directory / f"{e.kind}-{e.size}-{i:03d}.hyp"
        s = e.structure()
        if e.kind == "hypergroup":
            doc = StructureDocument(group=s, name=e.key)
        else:
            doc = StructureDocument(field=s, name=e.key)
        path.write_text(serialize(doc))
        lines.append(f"{e.kind}\t{e.size}\t{e.key}\t{path.name}")
    index = directory / "index.tsv"
    index.write_text("".join(line + "\n" for line in lines))
    return index


def load_catalog(directory) -> list:
    """Read ``index.tsv`` back as ``(kind, size, key, document)`` rows."""
    from .fileformat import parse_structure

    directory = Path(directory)
    rows = []
    for line in (directory / "index.tsv").read_text().splitlines():
        kind, size, key, name = line.split("\t")
        rows.append((kind, int(size), key, parse_structure((directory / name).read_text())))
    return rows


# ---------------------------------------------------------------------------
# Star operations


class _OutsideWindow(Exception):
    pass


class _WindowStar:
    def __init__(self, table, vectors):
        self.table = table
        self.vectors = vectors
        self.name = None

    def __call__(self, a, v):
        try:
            return self.table[a, v]
        except (KeyError, TypeError):
            raise _OutsideWindow from None


@dataclass
class StarModel:
    table: dict
    non_singleton: bool


@dataclass
class StarSearch:
    models: list
    examined: int
    partial: bool
    survivors: dict
    rejections: dict
    additive_violations: list = field(default_factory=list)

    @property
    def non_singleton_models(self) -> int:
        return sum(m.non_singleton for m in self.models)


def _windowed(W, axiom_id, witnesses, cap=1):
    found = []
    for w in witnesses:
        try:
            holds, left, right = evaluate(W, axiom_id, *w)
        except _OutsideWindow:
            continue
        if not holds:
            found.append(Violation(axiom_id, tuple(w), left, right))
            if len(found) >= cap:
                break
    return found


def _cell_violations(W: HyperVectorSpace, ip, a, v, S: FiniteSet, window) -> list:
    F = W.scalars
    out = []
    if a == F.one and v not in S:
        out.append(Violation("HVS.unit", (v,), S, v))
    if a == F.zero and W.theta not in S:
        out.append(Violation("HVS.zero_scalar", (v,), S, W.theta))
    if a == F.zero and v == W.theta and S != FiniteSet([W.theta], S.carrier):
        out.append(Violation("HVS.zero_vector", (), S, {W.theta}))
    for beta in window:
        left = max(ip(x, beta) for x in S)
        right = a * ip(v, beta)
        if left != right:
            out.append(Violation("IP.homogeneous", (a, v, beta), left, right))
            break
    return out


def search_star_models(W: HyperVectorSpace, ip, scalars, window,
                       candidates: Callable | None = None,
                       budget: int = DEFAULT_BUDGET, max_rejections: int = 4) -> StarSearch:
    """Enumerate star tables on ``scalars x window`` compatible with ``W`` and ``ip``.

    A rational vector space has no finite subset closed under addition
    besides ``{theta}``, so the search works on a finite window: each cell
    ``a * v`` is drawn from subsets of the window, and every axiom instance
    whose evaluation would leave the window (or the scalar pool) is skipped.
    Cells are filtered one by one with the unit, zero and homogeneity laws,
    then every combination of surviving cells is checked against the
    remaining hyperspace axioms.
    """
    C = W.vectors.carrier
    scalars = tuple(W.scalars.carrier.normalize(a) for a in scalars)
    window = tuple(C.normalize(v) for v in window)
    if candidates is None:
        subsets = [FiniteSet(s, C) for k in range(1, len(window) + 1)
                   for s in itertools.combinations(window, k)]
        candidates = lambda a, v: subsets  # noqa: E731
    ctx = (W, ip)
    additive = []
    for u, v, w in itertools.product(window, repeat=3):
        if all(x in window for x in W.add(u, v)):
            additive += collect(ctx, "IP.additive", [(u, v, w)], 1)
    cells = list(itertools.product(scalars, window))
    survivors, rejections = {}, {}
    for a, v in cells:
        keep = []
        for S in candidates(a, v):
            S = FiniteSet(S, C)
            if S in keep or any(S == r for r, _ in rejections.get((a, v), ())):
                continue
            bad = _cell_violations(W, ip, a, v, S, window)
            if bad:
                rejections.setdefault((a, v), []).append((S, bad[0]))
            else:
                keep.append(S)
        rejections[(a, v)] = rejections.get((a, v), [])[:max_rejections]
        survivors[(a, v)] = keep

    models, examined, partial = [], 0, False
    if additive or any(not survivors[c] for c in cells):
        return StarSearch(models, 0, False, survivors, rejections, additive)
    for choice in itertools.product(*(survivors[c] for c in cells)):
        examined += 1
        if examined > budget:
            examined -= 1
            partial = True
            break
        table = dict(zip(cells, choice))
        Wc = HyperVectorSpace(W.scalars, W.vectors, _WindowStar(table, C))
        if (_windowed(Wc, "HVS.star_dist_vectors", itertools.product(scalars, window, window))
                or _windowed(Wc, "HVS.star_dist_scalars",
                             itertools.product(scalars, scalars, window))
                or _windowed(Wc, "HVS.star_assoc", itertools.product(scalars, scalars, window))
                or _windowed(Wc, "HVS.star_neg", itertools.product(scalars, window))):
            continue
        models.append(StarModel(table, any(len(S) > 1 for S in choice)))
    return StarSearch(models, examined, partial, survivors, rejections, additive)


def table_star(W: HyperVectorSpace, model: StarModel) -> StarOp:
    """A table-backed star on the model's finite scalar pool and window."""
    scalars = FiniteCarrier(sorted({a for a, _ in model.table}, key=W.scalars.carrier.sort_key))
    vectors = FiniteCarrier(sorted({v for _, v in model.table}, key=W.vectors.carrier.sort_key))
    return StarOp(scalars, vectors, table={k: tuple(s) for k, s in model.table.items()})
