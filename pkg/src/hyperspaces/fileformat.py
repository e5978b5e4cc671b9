"""Line-oriented structure files.

Grammar (``#`` starts a comment; blank lines are ignored)::

    name = <text>
    [field]                       scalar hyperfield
      carrier = Q | a, b, ...     Q selects the exact rationals (no tables)
      zero = a
      one = a
      hyperadd:                   indented rows  a + b = {x, y}
      mul:                        indented rows  a * b = c
      abs:                        indented rows  a = r
    [group]                       a lone hypergroup
      carrier = a, b, ...
      zero = a                    optional
      commutative = true | false
      hyperadd:                   rows as above
    [space]                       vectors over the [field] (default Q)
      carrier = Q^n | a, b, ...
      theta = v
      hyperadd = sum | hyperadd:  rows
      star = scale | cone | echo | star:  rows  a * v = {u, w}
      inner = dot | inner:        rows  <u, v> = r
      norm = max | norm:          rows  |v| = r
    [bounds]
      pool, universe, probes, basis, orthogonal, gram_schmidt,
      scalar_samples, vector_samples = comma separated elements

Rationals are written ``p/q``; vectors ``(p/q, p/q, ...)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .hyperspace import STAR_RULES, HyperVectorSpace, StarOp, rational_space
from .hyperstructures import Hyperfield, Hypergroup, check_hypergroup, rational_hyperfield
from .inner import InnerProduct, Norm, dot_product, max_norm
from .setalg import (
    FiniteCarrier,
    HyperOp,
    RationalCarrier,
    ScalarOp,
    StructureError,
    VectorCarrier,
    format_element,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


@dataclass
class StructureDocument:
    field: Hyperfield | None = None
    group: Hypergroup | None = None
    space: HyperVectorSpace | None = None
    inner: InnerProduct | None = None
    norm: Norm | None = None
    pool: tuple | None = None
    universe: tuple | None = None
    probes: tuple | None = None
    basis: tuple | None = None
    orthogonal: tuple | None = None
    gram_schmidt: tuple | None = None
    scalar_samples: tuple | None = None
    vector_samples: tuple | None = None
    name: str | None = None


BOUND_KEYS = ("pool", "universe", "probes", "basis", "orthogonal", "gram_schmidt",
              "scalar_samples", "vector_samples")
SCALAR_BOUNDS = ("pool", "scalar_samples")

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_INT = re.compile(r"^-?\d+$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


def split_top(text: str, sep: str = ",") -> list:
    """Split on ``sep`` outside of (), {} and <>."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "({<":
            depth += 1
        elif ch in ")}>":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    last = "".join(cur).strip()
    if last or parts:
        parts.append(last)
    return parts


@dataclass
class _Line:
    number: int
    text: str
    indent: int = 0

    def error(self, message, token=None):
        col = self.text.find(token) + 1 if token and token in self.text else 1
        col += self.indent
        return ParseError(message, self.number, max(col, 1))


def _parse_rational(tok: str, line: _Line) -> Fraction:
    if not _RATIONAL.match(tok):
        raise line.error(f"expected a rational literal, got {tok!r}", tok)
    n, _, d = tok.partition("/")
    if d and int(d) == 0:
        raise line.error("zero denominator", tok)
    return Fraction(int(n), int(d) if d else 1)


def _parse_atom(tok: str, line: _Line):
    if _INT.match(tok):
        return int(tok)
    if _IDENT.match(tok):
        return tok
    raise line.error(f"invalid element {tok!r}", tok)


def _parse_element(tok: str, carrier, line: _Line):
    tok = tok.strip()
    if isinstance(carrier, RationalCarrier):
        return _parse_rational(tok, line)
    if isinstance(carrier, VectorCarrier):
        if not (tok.startswith("(") and tok.endswith(")")):
            raise line.error(f"expected a vector, got {tok!r}", tok)
        comps = split_top(tok[1:-1])
        if len(comps) != carrier.dim:
            raise line.error(
                f"dimension mismatch: {tok} has {len(comps)} components, expected {carrier.dim}",
                tok)
        return tuple(_parse_rational(c, line) for c in comps)
    x = _parse_atom(tok, line)
    if x not in carrier:
        raise line.error(f"unknown element {tok!r}", tok)
    return x


def _parse_list(text: str, carrier, line: _Line) -> tuple:
    return tuple(_parse_element(t, carrier, line) for t in split_top(text) if t)


def parse_elements(text: str, carrier) -> tuple:
    """Comma separated elements of ``carrier``, e.g. ``"(1, 0), (1/2, 3)"``."""
    return _parse_list(text, carrier, _Line(0, text))


def _parse_set(text: str, carrier, line: _Line) -> tuple:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise line.error(f"expected a set in braces, got {text!r}", text)
    members = _parse_list(text[1:-1], carrier, line)
    if not members:
        raise line.error("empty hyperoperation cell: a hyperoperation must map every "
                         "pair to a non-empty set", "{")
    return members


_ROW_ADD = re.compile(r"^(.+?)\s*\+\s*(.+?)\s*=\s*(\{.*\})$")
_ROW_MUL = re.compile(r"^(.+?)\s*\*\s*(.+?)\s*=\s*(.+)$")
_ROW_INNER = re.compile(r"^<(.*)>\s*=\s*(.+)$")
_ROW_NORM = re.compile(r"^\|(.*)\|\s*=\s*(.+)$")
_ROW_VALUE = re.compile(r"^(.+?)\s*=\s*(.+)$")


def _sections(text: str):
    """Group lines into ``{section: {key: (line, value | [row lines])}}``."""
    sections = {"": {}}
    current = sections[""]
    block = None
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        line = _Line(number, raw)
        indented = body[0] in " \t"
        stripped = body.strip()
        if indented and block is not None:
            block[1].append(_Line(number, stripped, len(body) - len(body.lstrip())))
            continue
        block = None
        if stripped.startswith("[") and stripped.endswith("]"):
            name = stripped[1:-1].strip()
            if name not in ("field", "group", "space", "bounds"):
                raise line.error(f"unknown section [{name}]", name)
            if name in sections:
                raise line.error(f"duplicate section [{name}]", name)
            current = sections[name] = {}
            continue
        if stripped.endswith(":") and "=" not in stripped:
            key = stripped[:-1].strip()
            if key in current:
                raise line.error(f"duplicate key {key!r}", key)
            block = current[key] = (line, [])
            continue
        m = _ROW_VALUE.match(stripped)
        if not m:
            raise line.error(f"cannot parse line {stripped!r}", stripped)
        key = m.group(1).strip()
        if key in current:
            raise line.error(f"duplicate key {key!r}", key)
        current[key] = (line, m.group(2).strip())
    return sections


def _need(sec: dict, key: str, where: str):
    if key not in sec:
        raise ParseError(f"[{where}] is missing {key!r}")
    return sec[key]


def _carrier(sec, where):
    line, value = _need(sec, "carrier", where)
    if isinstance(value, list):
        raise line.error("carrier must be a value, not a block")
    if value == "Q":
        return RationalCarrier(), line
    m = re.match(r"^Q\^(\d+)$", value)
    if m:
        return VectorCarrier(int(m.group(1))), line
    atoms = [_parse_atom(t, line) for t in split_top(value) if t]
    try:
        return FiniteCarrier(atoms), line
    except StructureError as exc:
        raise line.error(str(exc)) from None


def _hyper_table(block, carrier, where):
    line, rows = block
    if not isinstance(rows, list):
        raise line.error(f"{where} must be a block of rows")
    table = {}
    for row in rows:
        m = _ROW_ADD.match(row.text)
        if not m:
            if re.match(r"^.+\+.+=\s*$", row.text):
                raise row.error("empty hyperoperation cell: a hyperoperation must map every "
                                "pair to a non-empty set")
            raise row.error(f"expected 'a + b = {{...}}', got {row.text!r}", row.text)
        a = _parse_element(m.group(1), carrier, row)
        b = _parse_element(m.group(2), carrier, row)
        if (a, b) in table:
            raise row.error("duplicate cell", m.group(1))
        table[a, b] = _parse_set(m.group(3), carrier, row)
    for a in carrier:
        for b in carrier:
            if (a, b) not in table:
                raise line.error(
                    f"{where} has no row for {format_element(a)} + {format_element(b)}")
    return table


def _build(line, fn):
    try:
        return fn()
    except StructureError as exc:
        raise line.error(str(exc)) from None


def _reject_unknown(sec, where, known):
    for key, (line, _) in sec.items():
        if key not in known:
            raise line.error(f"unknown key {key!r} in [{where}]", key)


def _parse_field(sec) -> Hyperfield:
    _reject_unknown(sec, "field", {"carrier", "zero", "one", "hyperadd", "mul", "abs"})
    carrier, cline = _carrier(sec, "field")
    if isinstance(carrier, RationalCarrier):
        extra = set(sec) - {"carrier"}
        if extra:
            raise cline.error(f"carrier Q takes no further keys (got {sorted(extra)})")
        return rational_hyperfield()
    if isinstance(carrier, VectorCarrier):
        raise cline.error("a field carrier cannot be a vector space")
    add = _hyper_table(_need(sec, "hyperadd", "field"), carrier, "hyperadd")
    mline, rows = _need(sec, "mul", "field")
    mul = {}
    for row in rows:
        m = _ROW_MUL.match(row.text)
        if not m:
            raise row.error(f"expected 'a * b = c', got {row.text!r}", row.text)
        a, b = _parse_element(m.group(1), carrier, row), _parse_element(m.group(2), carrier, row)
        mul[a, b] = _parse_element(m.group(3), carrier, row)
    for a in carrier:
        for b in carrier:
            if (a, b) not in mul:
                raise mline.error(
                    f"mul has no row for {format_element(a)} * {format_element(b)}")
    zl, z = _need(sec, "zero", "field")
    zero = _parse_element(z, carrier, zl)
    one = None
    if "one" in sec:
        ol, o = sec["one"]
        one = _parse_element(o, carrier, ol)
    absmap = None
    if "abs" in sec:
        aline, rows = sec["abs"]
        absmap = {}
        for row in rows:
            m = _ROW_VALUE.match(row.text)
            if not m:
                raise row.error(f"expected 'a = r', got {row.text!r}", row.text)
            absmap[_parse_element(m.group(1), carrier, row)] = _parse_rational(m.group(2), row)
    return _build(cline, lambda: Hyperfield(
        carrier, HyperOp(carrier, table=add), ScalarOp(carrier, table=mul),
        zero, one, abs=absmap))


def _parse_group(sec) -> Hypergroup:
    _reject_unknown(sec, "group", {"carrier", "zero", "commutative", "hyperadd"})
    carrier, cline = _carrier(sec, "group")
    if not isinstance(carrier, FiniteCarrier):
        raise cline.error("[group] needs a finite carrier")
    add = _hyper_table(_need(sec, "hyperadd", "group"), carrier, "hyperadd")
    zero = None
    if "zero" in sec:
        zl, z = sec["zero"]
        zero = _parse_element(z, carrier, zl)
    commutative = False
    if "commutative" in sec:
        l, v = sec["commutative"]
        if v not in ("true", "false"):
            raise l.error("commutative must be true or false", v)
        commutative = v == "true"
    return _build(cline, lambda: Hypergroup(carrier, HyperOp(carrier, table=add), zero,
                                            commutative=commutative))


def _parse_space(sec, F: Hyperfield):
    carrier, cline = _carrier(sec, "space")
    if isinstance(carrier, RationalCarrier):
        raise cline.error("use Q^n for a rational vector carrier")
    if isinstance(carrier, VectorCarrier):
        if not isinstance(F.carrier, RationalCarrier):
            raise cline.error("rational vector carriers need the scalar field Q")
        sline, star = _need(sec, "star", "space")
        if isinstance(star, list) or star not in STAR_RULES:
            raise sline.error(f"star must be one of {sorted(STAR_RULES)} on Q^n")
        if "hyperadd" in sec and sec["hyperadd"][1] != "sum":
            raise sec["hyperadd"][0].error("hyperadd on Q^n must be 'sum'")
        W = rational_space(carrier.dim, star)
        if "theta" in sec:
            tl, t = sec["theta"]
            if _parse_element(t, carrier, tl) != carrier.zero:
                raise tl.error("theta on Q^n must be the origin", t)
        return W
    if not F.carrier.finite:
        raise cline.error("a finite vector carrier needs a finite scalar field")
    add = _hyper_table(_need(sec, "hyperadd", "space"), carrier, "hyperadd")
    tl, t = _need(sec, "theta", "space")
    theta = _parse_element(t, carrier, tl)
    sline, rows = _need(sec, "star", "space")
    if not isinstance(rows, list):
        raise sline.error("star on a finite carrier must be a block of rows")
    table = {}
    for row in rows:
        m = re.match(r"^(.+?)\s*\*\s*(.+?)\s*=\s*(.*)$", row.text)
        if not m:
            raise row.error(f"expected 'a * v = {{...}}', got {row.text!r}", row.text)
        a = _parse_element(m.group(1), F.carrier, row)
        v = _parse_element(m.group(2), carrier, row)
        table[a, v] = _parse_set(m.group(3), carrier, row)
    V = _build(cline, lambda: Hypergroup(carrier, HyperOp(carrier, table=add), theta,
                                         commutative=True))
    report = check_hypergroup(V)
    if report.is_hypergroup and report.zero == theta:
        V = report.structure
    star_op = _build(sline, lambda: StarOp(F.carrier, carrier, table=table))
    return HyperVectorSpace(F, V, star_op)


def _parse_inner(sec, W):
    line, value = sec["inner"]
    C = W.vectors.carrier
    if not isinstance(value, list):
        if value != "dot" or not isinstance(C, VectorCarrier):
            raise line.error("inner must be 'dot' on Q^n or a block of rows", value)
        return dot_product()
    table = {}
    for row in value:
        m = _ROW_INNER.match(row.text)
        if not m:
            raise row.error(f"expected '<u, v> = r', got {row.text!r}", row.text)
        parts = split_top(m.group(1))
        if len(parts) != 2:
            raise row.error("an inner product row needs two vectors", m.group(1))
        u, v = (_parse_element(p, C, row) for p in parts)
        table[u, v] = _parse_rational(m.group(2).strip(), row)
    if C.finite:
        for u in C:
            for v in C:
                if (u, v) not in table:
                    raise line.error(
                        f"inner has no row for <{format_element(u)}, {format_element(v)}>")
    return InnerProduct(table=table)


def _parse_norm(sec, W):
    line, value = sec["norm"]
    C = W.vectors.carrier
    if not isinstance(value, list):
        if value != "max" or not isinstance(C, VectorCarrier):
            raise line.error("norm must be 'max' on Q^n or a block of rows", value)
        return max_norm()
    table = {}
    for row in value:
        m = _ROW_NORM.match(row.text)
        if not m:
            raise row.error(f"expected '|v| = r', got {row.text!r}", row.text)
        table[_parse_element(m.group(1), C, row)] = _parse_rational(m.group(2).strip(), row)
    return Norm(table=table)


def parse_structure(text: str) -> StructureDocument:
    """Parse a structure file; raises :class:`ParseError` with a location."""
    sections = _sections(text)
    doc = StructureDocument()
    top = sections[""]
    for key in top:
        if key != "name":
            raise top[key][0].error(f"unknown top-level key {key!r}", key)
    if "name" in top:
        doc.name = top["name"][1]
    if "field" in sections:
        doc.field = _parse_field(sections["field"])
    if "group" in sections:
        doc.group = _parse_group(sections["group"])
    if "space" in sections:
        F = doc.field or rational_hyperfield()
        sec = sections["space"]
        _reject_unknown(sec, "space", {"carrier", "theta", "hyperadd", "star", "inner", "norm"})
        doc.space = _parse_space(sec, F)
        if doc.field is None:
            doc.field = F
        if "inner" in sec:
            doc.inner = _parse_inner(sec, doc.space)
        if "norm" in sec:
            doc.norm = _parse_norm(sec, doc.space)
    if "bounds" in sections:
        sec = sections["bounds"]
        for key, (line, value) in sec.items():
            if key not in BOUND_KEYS:
                raise line.error(f"unknown key {key!r} in [bounds]", key)
            if key in SCALAR_BOUNDS:
                if doc.field is None:
                    raise line.error(f"{key} needs a [field] or [space] section", key)
                carrier = doc.field.carrier
            else:
                if doc.space is None:
                    raise line.error(f"{key} needs a [space] section", key)
                carrier = doc.space.vectors.carrier
            setattr(doc, key, _parse_list(value, carrier, line))
    if doc.field is None and doc.group is None and doc.space is None:
        raise ParseError("the file declares no structure")
    return doc


# ---------------------------------------------------------------------------
# Serialization


def _fmt_list(xs) -> str:
    return ", ".join(format_element(x) for x in xs)


def _fmt_set(s) -> str:
    return "{" + _fmt_list(s) + "}"


def _carrier_text(C) -> str:
    if isinstance(C, RationalCarrier):
        return "Q"
    if isinstance(C, VectorCarrier):
        return f"Q^{C.dim}"
    return _fmt_list(C)


def _hyperadd_rows(op, C) -> list:
    return [f"  {format_element(a)} + {format_element(b)} = {_fmt_set(op(a, b))}"
            for a in C for b in C]


def _abs_rows(F) -> list:
    if F.abs is None:
        return []
    return ["abs:"] + [f"  {format_element(a)} = {format_element(Fraction(F.absolute(a)))}"
                       for a in F.carrier]


def serialize(doc: StructureDocument) -> str:
    """Canonical text for a document; ``parse_structure`` inverts it."""
    out = []
    if doc.name:
        out.append(f"name = {doc.name}")
    F = doc.field
    if F is not None:
        out += ["", "[field]"] if out else ["[field]"]
        out.append(f"carrier = {_carrier_text(F.carrier)}")
        if F.carrier.finite:
            out.append(f"zero = {format_element(F.zero)}")
            if F.one is not None:
                out.append(f"one = {format_element(F.one)}")
            out.append("hyperadd:")
            out += _hyperadd_rows(F.add, F.carrier)
            out.append("mul:")
            out += [f"  {format_element(a)} * {format_element(b)} = "
                    f"{format_element(F.mul(a, b))}" for a in F.carrier for b in F.carrier]
            out += _abs_rows(F)
    H = doc.group
    if H is not None:
        out += ["", "[group]"] if out else ["[group]"]
        out.append(f"carrier = {_carrier_text(H.carrier)}")
        if H.zero is not None:
            out.append(f"zero = {format_element(H.zero)}")
        out.append(f"commutative = {'true' if H.commutative else 'false'}")
        out.append("hyperadd:")
        out += _hyperadd_rows(H.add, H.carrier)
    W = doc.space
    if W is not None:
        C = W.vectors.carrier
        out += ["", "[space]"] if out else ["[space]"]
        out.append(f"carrier = {_carrier_text(C)}")
        out.append(f"theta = {format_element(W.theta)}")
        if isinstance(C, VectorCarrier):
            out.append("hyperadd = sum")
            out.append(f"star = {W.star.name}")
        else:
            out.append("hyperadd:")
            out += _hyperadd_rows(W.add, C)
            out.append("star:")
            out += [f"  {format_element(a)} * {format_element(v)} = {_fmt_set(W.star(a, v))}"
                    for a in W.scalars.carrier for v in C]
        ip = doc.inner
        if ip is not None:
            if ip.name == "dot":
                out.append("inner = dot")
            elif ip.table is not None:
                out.append("inner:")
                keys = sorted(ip.table, key=lambda k: (C.sort_key(k[0]), C.sort_key(k[1])))
                out += [f"  <{format_element(u)}, {format_element(v)}> = "
                        f"{format_element(ip.table[u, v])}" for u, v in keys]
            else:
                raise ValueError("cannot serialize an inner product given as a function")
        nm = doc.norm
        if nm is not None:
            if nm.name == "max":
                out.append("norm = max")
            elif nm.table is not None:
                out.append("norm:")
                out += [f"  |{format_element(v)}| = {format_element(nm.table[v])}"
                        for v in sorted(nm.table, key=C.sort_key)]
            else:
                raise ValueError("cannot serialize a norm given as a function")
    bounds = [(k, getattr(doc, k)) for k in BOUND_KEYS if getattr(doc, k) is not None]
    if bounds:
        out += ["", "[bounds]"] if out else ["[bounds]"]
        out += [f"{k} = {_fmt_list(v)}" for k, v in bounds]
    return "\n".join(out) + "\n"
