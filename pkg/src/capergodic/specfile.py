"""Reader and writer for the plain-text instance format.

A document is a sequence of blocks, each opened by a header line and closed
by ``end``; ``#`` starts a comment.  See ``docs/specfile.md`` for the full
grammar.  Example::

    space
      w1, w2
    end

    capacity mu table
      {} = 0
      {w1} = 3/5
      {w2} = 7/10
      {w1,w2} = 1
    end

    map theta
      w1 -> w2
      w2 -> w1
    end

    rv xi
      2, 1
    end
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .capacity import (
    Capacity,
    Distortion,
    PriorSet,
    SampleSpace,
    from_distortion,
    from_priors,
)
from .choquet import RandomVariable
from .dynamics import MapTable
from .errors import CapacityError
from .processes import ProcessSpec

_RATIONAL = re.compile(r"^[+-]?(\d+(/\d+)?|\d*\.\d+)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.-]*$")


class ParseError(CapacityError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}" + (f", column {column}" if column else "") + ": " if line else ""
        super().__init__(where + message)


class ValidationError(CapacityError):
    """A block parsed but its content is rejected by the constructors."""

    def __init__(self, message, line=None, cause=None):
        self.line = line
        self.cause = cause
        super().__init__((f"line {line}: " if line else "") + message)


@dataclass
class SpecDocument:
    space: SampleSpace
    capacities: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    rvs: dict = field(default_factory=dict)
    priors: dict = field(default_factory=dict)
    process: ProcessSpec | None = None

    def digest(self) -> str:
        return hashlib.sha256(dump(self).encode()).hexdigest()[:16]

    def variable(self, name: str) -> RandomVariable:
        """A named ``rv`` block, or ``Y_k`` / ``Yk`` from the process block."""
        if name in self.rvs:
            return self.rvs[name]
        m = re.fullmatch(r"Y_?(\d+)", name)
        if m and self.process is not None:
            k = int(m.group(1))
            if 1 <= k <= self.process.horizon:
                return self.process.variables[k - 1]
        raise KeyError(f"no random variable named {name!r}")


def _rational(token: str, lineno: int, line: str) -> Fraction:
    token = token.strip()
    if not _RATIONAL.match(token):
        raise ParseError(f"expected a rational number, got {token!r}", lineno, line.find(token) + 1 or None)
    return Fraction(token)


def _vector(text: str, lineno: int, line: str) -> list[Fraction]:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    parts = [p for p in re.split(r"[,\s]+", text) if p]
    if not parts:
        raise ParseError("expected a vector of rationals", lineno, 1)
    return [_rational(p, lineno, line) for p in parts]


def _event(text: str, space: SampleSpace, lineno: int, line: str) -> int:
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    labels = [p.strip() for p in text.split(",") if p.strip()]
    try:
        return space.event(labels)
    except KeyError as exc:
        raise ParseError(str(exc.args[0]), lineno, line.find(text) + 1 or None) from None


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse(text: str) -> SpecDocument:
    """Parse and validate a document; every capacity goes through the validity checks."""
    lines = text.splitlines()
    blocks = []
    i = 0
    while i < len(lines):
        header = _strip(lines[i])
        if not header:
            i += 1
            continue
        start = i + 1
        body = []
        i += 1
        while True:
            if i >= len(lines):
                raise ParseError(f"block {header.split()[0]!r} is not closed with 'end'", start, 1)
            content = _strip(lines[i])
            if content == "end":
                break
            if content:
                body.append((i + 1, content, lines[i]))
            i += 1
        i += 1
        blocks.append((start, header, lines[start - 1], body))

    spaces = [b for b in blocks if b[1].split()[0] == "space"]
    if not spaces:
        raise ParseError("missing space block", 1 if lines else None, None)
    if len(spaces) > 1:
        raise ParseError("more than one space block", spaces[1][0], 1)
    _, _, _, body = spaces[0]
    labels = [p for _, content, _ in body for p in re.split(r"[,\s]+", content) if p]
    try:
        space = SampleSpace(tuple(labels))
    except (ValueError, CapacityError) as exc:
        raise ValidationError(str(exc), spaces[0][0], exc) from None
    doc = SpecDocument(space)

    for lineno, header, raw, body in blocks:
        words = header.split()
        kind = words[0]
        if kind == "space":
            continue
        try:
            if kind == "capacity":
                _capacity_block(doc, words, lineno, raw, body)
            elif kind == "map":
                name = _name(words, lineno, raw)
                _unique(doc.maps, name, lineno)
                doc.maps[name] = _map_block(space, body, lineno)
            elif kind == "rv":
                name = _name(words, lineno, raw)
                _unique(doc.rvs, name, lineno)
                if len(body) != 1:
                    raise ParseError("rv block takes exactly one vector line", lineno, 1)
                ln, content, full = body[0]
                doc.rvs[name] = RandomVariable(space, tuple(_vector(content, ln, full)))
            elif kind == "priors":
                name = _name(words, lineno, raw)
                _unique(doc.priors, name, lineno)
                doc.priors[name] = PriorSet(space, tuple(tuple(_vector(c, ln, f)) for ln, c, f in body))
            elif kind == "process":
                if doc.process is not None:
                    raise ParseError("more than one process block", lineno, 1)
                doc.process = _process_block(space, body)
            else:
                raise ParseError(f"unknown block {kind!r}", lineno, 1)
        except ParseError:
            raise
        except (CapacityError, ValueError, KeyError) as exc:
            raise ValidationError(f"{kind} block: {exc}", lineno, exc) from None
    return doc


def _name(words, lineno, raw):
    if len(words) < 2 or not _NAME.match(words[1]):
        raise ParseError(f"{words[0]} block needs a name", lineno, len(words[0]) + 2)
    return words[1]


def _unique(registry, name, lineno):
    if name in registry:
        raise ParseError(f"duplicate name {name!r}", lineno, 1)


def _capacity_block(doc: SpecDocument, words, lineno, raw, body):
    space = doc.space
    name = _name(words, lineno, raw)
    _unique(doc.capacities, name, lineno)
    if len(words) < 3:
        raise ParseError("capacity block needs a form: table, priors or distortion", lineno, len(raw.rstrip()) + 1)
    form = words[2]
    if form == "table":
        table = {}
        for ln, content, full in body:
            if "=" not in content:
                raise ParseError("expected 'EVENT = VALUE'", ln, 1)
            left, right = content.rsplit("=", 1)
            mask = _event(left, space, ln, full)
            if mask in table:
                raise ParseError(f"event {space.format(mask)} listed twice", ln, 1)
            table[mask] = _rational(right, ln, full)
        doc.capacities[name] = Capacity.from_mapping(space, table)
    elif form == "priors":
        side = words[3] if len(words) > 3 else "upper"
        if side not in ("upper", "lower"):
            raise ParseError(f"prior side must be upper or lower, got {side!r}", lineno, raw.find(side) + 1)
        ps = PriorSet(space, tuple(tuple(_vector(c, ln, f)) for ln, c, f in body))
        _unique(doc.priors, name, lineno)
        doc.priors[name] = ps
        doc.capacities[name] = from_priors(ps, side)
    elif form == "distortion":
        base = points = None
        for ln, content, full in body:
            key, _, rest = content.partition("=")
            key = key.strip()
            if key == "base":
                base = _vector(rest, ln, full)
            elif key == "breakpoints":
                pairs = re.findall(r"\(([^)]*)\)", rest)
                if not pairs:
                    raise ParseError("breakpoints are written '(x, y) (x, y) ...'", ln, 1)
                points = [tuple(_vector(p, ln, full)) for p in pairs]
                if any(len(p) != 2 for p in points):
                    raise ParseError("each breakpoint is a pair (x, y)", ln, 1)
            else:
                raise ParseError(f"unknown distortion field {key!r}", ln, 1)
        if base is None or points is None:
            raise ParseError("distortion block needs 'base = ...' and 'breakpoints = ...'", lineno, 1)
        doc.capacities[name] = from_distortion(base, Distortion(tuple(points)), space)
    else:
        raise ParseError(f"unknown capacity form {form!r}", lineno, raw.find(form) + 1)


def _map_block(space: SampleSpace, body, lineno) -> MapTable:
    arrows = {}
    for ln, content, full in body:
        if "->" not in content:
            raise ParseError("expected 'POINT -> POINT'", ln, 1)
        src, dst = (p.strip() for p in content.split("->", 1))
        for label in (src, dst):
            if label not in space.labels:
                raise ParseError(f"unknown point {label!r}", ln, full.find(label) + 1)
        if src in arrows:
            raise ParseError(f"point {src!r} mapped twice", ln, 1)
        arrows[src] = dst
    return MapTable.from_labels(space, arrows)


def _process_block(space: SampleSpace, body) -> ProcessSpec:
    found = {}
    for ln, content, full in body:
        m = re.fullmatch(r"Y_?(\d+)\s*=\s*(.+)", content)
        if not m:
            raise ParseError("expected 'Y_k = (v_1, ..., v_n)'", ln, 1)
        k = int(m.group(1))
        if k in found:
            raise ParseError(f"Y_{k} defined twice", ln, 1)
        found[k] = RandomVariable(space, tuple(_vector(m.group(2), ln, full)))
    if sorted(found) != list(range(1, len(found) + 1)):
        raise ValueError("process variables must be numbered Y_1, Y_2, ... without gaps")
    return ProcessSpec(space, tuple(found[k] for k in sorted(found)))


def _fmt_vector(values) -> str:
    return ", ".join(str(x) for x in values)


def dump(doc: SpecDocument) -> str:
    """Canonical text form; ``parse(dump(doc)) == doc``.  Capacities are written as tables."""
    space = doc.space
    out = ["space", "  " + ", ".join(space.labels), "end"]
    for name, mu in doc.capacities.items():
        out += ["", f"capacity {name} table"]
        out += [f"  {space.format(mask)} = {value}" for mask, value in enumerate(mu.values)]
        out.append("end")
    for name, ps in doc.priors.items():
        out += ["", f"priors {name}"] + ["  " + _fmt_vector(p) for p in ps.priors] + ["end"]
    for name, theta in doc.maps.items():
        out += ["", f"map {name}"]
        out += [f"  {space.labels[i]} -> {space.labels[j]}" for i, j in enumerate(theta.image)]
        out.append("end")
    for name, xi in doc.rvs.items():
        out += ["", f"rv {name}", "  " + _fmt_vector(xi.values), "end"]
    if doc.process is not None:
        out += ["", "process"]
        out += [f"  Y_{k} = ({_fmt_vector(y.values)})" for k, y in enumerate(doc.process.variables, 1)]
        out.append("end")
    return "\n".join(out) + "\n"


def load(path) -> SpecDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
