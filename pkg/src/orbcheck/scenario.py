"""Line-oriented scenario files: named blocks of key = value entries.

The parser reports malformed input with line numbers and rejects
unknown keys, so golden scenario texts stay unambiguous.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import MissingSection, ParseError, UnknownPipeline

KNOWN_PIPELINES = ("atlas", "seifert", "taut", "quotient")


@dataclass
class ChartSection:
    id: str
    n: int
    radius: Optional[Fraction]
    cyclotomic_order: int
    generators: list  # list of matrices; entries are z-polynomial coefficient lists


@dataclass
class ChangeSection:
    source: str
    target: str
    linear: list
    offset: list
    center: list
    radius: Fraction


@dataclass
class GeometrySection:
    action_type: str
    weights: list[int]
    metric_kind: str
    samples: int = 1000
    orbits: int = 50
    tol: float = 1e-9
    tol_exact: float = 1e-12
    nodes: int = 256


@dataclass
class ComplexSection:
    id: str
    vertices: int = 0
    facets: list = field(default_factory=list)
    vertex_order: Optional[list[int]] = None
    product: Optional[tuple[str, str]] = None


@dataclass
class ActionSection:
    id: str
    group: str  # "trivial", "cyclic:<k>", "product"
    maps: Optional[list[int]] = None
    factors: Optional[tuple[str, str]] = None


@dataclass
class QuotientSection:
    complex: str
    action: str
    n: int
    kahler: Optional[str] = None  # "product-sum" or explicit cocycle text


@dataclass
class Scenario:
    name: str
    pipelines: list[str]
    charts: list[ChartSection] = field(default_factory=list)
    changes: list[ChangeSection] = field(default_factory=list)
    geometry: Optional[GeometrySection] = None
    complexes: dict[str, ComplexSection] = field(default_factory=dict)
    actions: dict[str, ActionSection] = field(default_factory=dict)
    quotient: Optional[QuotientSection] = None

    def validate(self):
        for p in self.pipelines:
            if p not in KNOWN_PIPELINES:
                raise UnknownPipeline(f"unknown pipeline {p!r}")
        if ("atlas" in self.pipelines or "seifert" in self.pipelines) and not self.charts:
            raise MissingSection("atlas/seifert pipelines require [chart] sections")
        if "taut" in self.pipelines and self.geometry is None:
            raise MissingSection("taut pipeline requires [action] and [metric] sections")
        if "quotient" in self.pipelines:
            if self.quotient is None:
                raise MissingSection("quotient presentation required")
            if self.quotient.complex not in self.complexes:
                raise MissingSection(f"missing [complex {self.quotient.complex}] block")
            if self.quotient.action not in self.actions:
                raise MissingSection(f"missing [action {self.quotient.action}] block")


_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str, line: int) -> Fraction:
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ParseError(line, f"malformed rational {text!r}")
    return Fraction(text)


def parse_z_polynomial(text: str, line: int) -> list[Fraction]:
    """Coefficients of a polynomial in z, e.g. "z^2 + 1/2" or "-z"."""
    text = text.strip()
    if not text:
        raise ParseError(line, "empty polynomial")
    norm = text.replace("-", "+-").replace("++-", "+-")
    coeffs: dict[int, Fraction] = {}
    for term in norm.split("+"):
        term = term.strip()
        if not term:
            continue
        sign = Fraction(1)
        if term.startswith("-"):
            sign = Fraction(-1)
            term = term[1:].strip()
        if "z" in term:
            head, _, tail = term.partition("z")
            head = head.strip().rstrip("*").strip()
            coeff = parse_rational(head, line) if head else Fraction(1)
            tail = tail.strip()
            if tail.startswith("^"):
                try:
                    power = int(tail[1:])
                except ValueError:
                    raise ParseError(line, f"malformed power in {text!r}")
            elif tail:
                raise ParseError(line, f"malformed term in {text!r}")
            else:
                power = 1
        else:
            coeff = parse_rational(term, line)
            power = 0
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coeff
    top = max(coeffs) if coeffs else 0
    return [coeffs.get(k, Fraction(0)) for k in range(top + 1)]


def _split_top_level(text: str, sep: str, open_: str = "[(", close: str = "])") -> list[str]:
    parts, depth, buf = [], 0, []
    for ch in text:
        if ch in open_:
            depth += 1
        elif ch in close:
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    parts.append("".join(buf))
    return [p.strip() for p in parts if p.strip()]


def parse_matrix(text: str, line: int) -> list[list[list[Fraction]]]:
    """A matrix [[entry, ...], ...] of z-polynomials."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(line, f"malformed matrix {text!r}")
    body = text[1:-1].strip()
    rows = []
    for row_text in _split_top_level(body, ","):
        if not (row_text.startswith("[") and row_text.endswith("]")):
            raise ParseError(line, f"malformed matrix row {row_text!r}")
        entries = _split_top_level(row_text[1:-1], ",")
        rows.append([parse_z_polynomial(e, line) for e in entries])
    if not rows:
        raise ParseError(line, "empty matrix")
    return rows


def parse_vector(text: str, line: int) -> list[list[Fraction]]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(line, f"malformed vector {text!r}")
    return [parse_z_polynomial(e, line) for e in _split_top_level(text[1:-1], ",")]


def _parse_int(text: str, line: int) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(line, f"malformed integer {text!r}")


def _parse_float(text: str, line: int) -> float:
    try:
        return float(text.strip())
    except ValueError:
        raise ParseError(line, f"malformed number {text!r}")


_HEADER = re.compile(r"^\[([^\]]+)\]$")


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario; raises ParseError with line numbers."""
    blocks: list[tuple[int, str, list[tuple[int, str, str]]]] = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            current = (lineno, m.group(1).strip(), [])
            blocks.append(current)
            continue
        if current is None:
            raise ParseError(lineno, "content before first block header")
        if "=" not in line:
            raise ParseError(lineno, f"expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        current[2].append((lineno, key.strip(), value.strip()))

    scenario = Scenario(name="", pipelines=[])
    geometry_kv: dict[str, tuple[int, str]] = {}
    saw_geometry = False

    for head_line, header, items in blocks:
        words = header.split()
        kind = words[0]
        kv = {}
        for lineno, key, value in items:
            if key in kv:
                raise ParseError(lineno, f"duplicate key {key!r}")
            kv[key] = (lineno, value)

        def take(key, required=True, default=None):
            if key not in kv:
                if required:
                    raise ParseError(head_line, f"[{header}] missing key {key!r}")
                return None, default
            return kv.pop(key)

        def reject_unknown():
            if kv:
                lineno, _ = next(iter(kv.values()))
                raise ParseError(lineno, f"unknown key {next(iter(kv))!r} in [{header}]")

        if kind == "scenario":
            ln, name = take("name")
            ln, pipes = take("pipelines")
            scenario.name = name
            scenario.pipelines = [p.strip() for p in pipes.split(",") if p.strip()]
            reject_unknown()
        elif kind == "chart":
            if len(words) != 2:
                raise ParseError(head_line, "chart header must be [chart <id>]")
            ln, n = take("n")
            n = _parse_int(n, ln)
            ln, radius = take("radius")
            rad = None if radius.strip() == "inf" else parse_rational(radius, ln)
            ln, order = take("cyclotomic_order")
            order = _parse_int(order, ln)
            ln, gens = take("generators")
            gen_list = []
            gens = gens.strip()
            if gens:
                for g in _split_top_level(gens, ";"):
                    gen_list.append(parse_matrix(g, ln))
            reject_unknown()
            scenario.charts.append(ChartSection(words[1], n, rad, order, gen_list))
        elif kind == "change":
            m = re.match(r"^change\s+(\S+)\s*->\s*(\S+)$", header)
            if not m:
                raise ParseError(head_line, "change header must be [change <i> -> <j>]")
            ln, linear = take("linear")
            linear = parse_matrix(linear, ln)
            ln, offset = take("offset")
            offset = parse_vector(offset, ln)
            ln, center = take("center")
            center = parse_vector(center, ln)
            ln, radius = take("radius")
            radius = parse_rational(radius, ln)
            reject_unknown()
            scenario.changes.append(
                ChangeSection(m.group(1), m.group(2), linear, offset, center, radius)
            )
        elif kind == "action" and len(words) == 1:
            saw_geometry = True
            for key in list(kv):
                geometry_kv[key] = kv.pop(key)
        elif kind == "metric":
            for key in list(kv):
                geometry_kv["metric_" + key] = kv.pop(key)
        elif kind == "check" and len(words) == 2 and words[1] == "taut":
            for key in list(kv):
                geometry_kv["taut_" + key] = kv.pop(key)
        elif kind == "complex":
            if len(words) != 2:
                raise ParseError(head_line, "complex header must be [complex <id>]")
            section = ComplexSection(words[1])
            if "product" in kv:
                ln, prod = take("product")
                parts = [p.strip() for p in prod.split("*")]
                if len(parts) != 2:
                    raise ParseError(ln, "product must name two complexes: A * B")
                section.product = (parts[0], parts[1])
            else:
                ln, v = take("vertices")
                section.vertices = _parse_int(v, ln)
                ln, facets = take("facets")
                section.facets = _parse_facets(facets, ln)
                if "vertex_order" in kv:
                    ln, vo = take("vertex_order")
                    section.vertex_order = [_parse_int(x, ln) for x in vo.split(",")]
            reject_unknown()
            scenario.complexes[section.id] = section
        elif kind == "action" and len(words) == 2:
            section = ActionSection(words[1], "")
            ln, grp = take("group")
            section.group = grp.strip()
            if section.group == "product":
                ln, factors = take("factors")
                parts = [p.strip() for p in factors.split(",")]
                if len(parts) != 2:
                    raise ParseError(ln, "factors must name two actions")
                section.factors = (parts[0], parts[1])
            elif section.group != "trivial":
                ln, maps = take("maps")
                section.maps = [_parse_int(x, ln) for x in maps.split(",")]
            reject_unknown()
            scenario.actions[section.id] = section
        elif kind == "quotient":
            ln, cx = take("complex")
            ln, act = take("action")
            ln, n = take("complex_dim_n")
            n = _parse_int(n, ln)
            kahler = None
            if "kahler" in kv:
                ln, kahler = take("kahler")
            reject_unknown()
            scenario.quotient = QuotientSection(cx.strip(), act.strip(), n, kahler)
        else:
            raise ParseError(head_line, f"unknown block [{header}]")

    if saw_geometry or geometry_kv:
        scenario.geometry = _build_geometry(geometry_kv)
    if not scenario.name:
        raise ParseError(1, "missing [scenario] block with a name")
    scenario.validate()
    return scenario


def _parse_facets(text: str, line: int) -> list[tuple[int, ...]]:
    facets = []
    for part in re.findall(r"\(([^)]*)\)", text):
        try:
            facets.append(tuple(int(x) for x in part.split(",")))
        except ValueError:
            raise ParseError(line, f"malformed facet ({part})")
    if not facets:
        raise ParseError(line, "no facets given")
    return facets


def _build_geometry(kv: dict) -> GeometrySection:
    kv = dict(kv)
    ln, atype = kv.pop("type", (0, "circle"))
    atype = atype.strip()
    if atype not in ("circle", "torus"):
        raise ParseError(ln, f"unsupported action type {atype!r}")
    if "weights" not in kv:
        raise MissingSection("[action] requires weights")
    ln, weights = kv.pop("weights")
    try:
        weights = [int(x) for x in weights.split(",")]
    except ValueError:
        raise ParseError(ln, f"malformed weights {weights!r}")
    _, metric_kind = kv.pop("metric_kind", (0, "round"))
    metric_kind = metric_kind.strip()
    if metric_kind not in ("round", "flat"):
        raise MissingSection(f"unsupported metric kind {metric_kind!r}")
    geo = GeometrySection(action_type=atype, weights=weights, metric_kind=metric_kind)
    for attr, conv in (
        ("samples", _parse_int),
        ("orbits", _parse_int),
        ("tol", _parse_float),
        ("nodes", _parse_int),
    ):
        if f"taut_{attr}" in kv:
            ln, v = kv.pop(f"taut_{attr}")
            setattr(geo, attr, conv(v, ln))
    if kv:
        ln, _ = next(iter(kv.values()))
        raise ParseError(ln, f"unknown geometry key {next(iter(kv))!r}")
    return geo
