"""Text format for presentations (``.cdga`` files), presets and JSON output.

Grammar, one statement per line, ``#`` starts a comment::

    algebra <name>
    generator <ident> 1
    d <ident> = <expr>
    action <ident> order <int>
    <action> <ident> = <expr>

``<expr>`` is ``0`` or a sum of terms ``[<rat>[*]]<mono>`` where ``<rat>``
is ``p`` or ``p/q`` and ``<mono>`` is identifiers joined by ``^``.
Generators without a ``d`` line are closed; generators without an image
under an action are fixed by it.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .exterior import CdgaError, CdgaPresentation, GeneratorTable, GradedElement, change_basis, check_d_squared
from .scalars import QSqrt3, format_scalar

__all__ = [
    "ParseError",
    "ActionSpec",
    "PresentationSource",
    "parse_presentation",
    "parse_element",
    "serialize",
    "preset",
    "PRESETS",
    "to_jsonable",
    "dumps",
]


class ParseError(ValueError):
    """Syntax or resolution error with a 1-based source location."""

    def __init__(self, message: str, line: int = 1, column: int = 1, token: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}"
        super().__init__(f"{where}: {message}" + (f" (at {token!r})" if token else ""))


@dataclass
class ActionSpec:
    """A named generator-image table with a declared order."""

    name: str
    order: int
    images: Dict[str, GradedElement] = field(default_factory=dict)


@dataclass
class PresentationSource:
    presentation: CdgaPresentation
    text: str = ""
    actions: Dict[str, ActionSpec] = field(default_factory=dict)
    bindings: Dict[str, GradedElement] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.presentation.name

    def element(self, text: str) -> GradedElement:
        """Parse ``text``, resolving a bare binding name first."""
        if text.strip() in self.bindings:
            return self.bindings[text.strip()]
        return parse_element(text, self)

    def automorphism(self, name: str = "rho"):
        from .action import AlgebraAutomorphism

        try:
            spec = self.actions[name]
        except KeyError:
            raise CdgaError(f"no action named {name!r}; have {sorted(self.actions)}") from None
        table = self.presentation.table
        images = [spec.images.get(g, table.gen(g)) for g in table.names]
        return AlgebraAutomorphism(self.presentation, images, spec.order, name=name)


# -- expression parsing -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))")


def _tokenize(text: str, line: int, col0: int) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = text[pos:].lstrip()
            col = col0 + len(text) - len(text[pos:].lstrip())
            raise ParseError("unexpected character", line, col, bad[:1])
        kind = m.lastgroup
        col = col0 + m.start(kind)
        toks.append((kind, m.group(kind), col))
        pos = m.end()
    return toks


def _parse_expr(text: str, table: GeneratorTable, line: int = 1, col0: int = 1) -> GradedElement:
    toks = _tokenize(text, line, col0)
    if not toks:
        raise ParseError("empty expression", line, col0)
    i = 0
    out = table.zero()
    first = True
    while i < len(toks):
        sign = 1
        if toks[i][0] == "op" and toks[i][1] in "+-":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-'", line, toks[i][2], toks[i][1])
        first = False
        if i >= len(toks):
            raise ParseError("dangling sign at end of expression", line, toks[-1][2], toks[-1][1])
        coeff = Fraction(1)
        has_coeff = False
        if toks[i][0] == "num":
            num_tok = toks[i]
            try:
                coeff = Fraction(num_tok[1])
            except ZeroDivisionError:
                raise ParseError("zero denominator", line, num_tok[2], num_tok[1]) from None
            has_coeff = True
            i += 1
            if i < len(toks) and toks[i] == ("op", "*", toks[i][2]):
                i += 1
                if i >= len(toks) or toks[i][0] != "id":
                    tok = toks[i] if i < len(toks) else num_tok
                    raise ParseError("expected a monomial after '*'", line, tok[2], tok[1])
        term = table.unit()
        if i < len(toks) and toks[i][0] == "id":
            while True:
                kind, val, col = toks[i]
                if kind != "id":
                    raise ParseError("expected a generator name", line, col, val)
                if val not in table.names:
                    raise ParseError(f"unknown generator {val!r}", line, col, val)
                term = term * table.gen(val)
                i += 1
                if i < len(toks) and toks[i][0] == "op" and toks[i][1] == "^":
                    i += 1
                    if i >= len(toks):
                        raise ParseError("dangling '^'", line, toks[-1][2], "^")
                    continue
                break
        elif not has_coeff:
            tok = toks[i] if i < len(toks) else toks[-1]
            raise ParseError("expected a term", line, tok[2], tok[1])
        out = out + (sign * coeff) * term
    return out


def parse_element(text: str, source) -> GradedElement:
    """Parse a wedge expression against the generators of ``source``.

    ``source`` may be a :class:`PresentationSource`, a presentation or a
    generator table.
    """
    table = getattr(source, "presentation", source)
    table = getattr(table, "table", table)
    return _parse_expr(text, table)


# -- presentation parsing -----------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def parse_presentation(text: str) -> PresentationSource:
    name = ""
    gens: List[str] = []
    gen_lines: Dict[str, int] = {}
    d_lines: Dict[str, Tuple[str, int, int]] = {}
    actions: Dict[str, Tuple[int, int]] = {}
    images: Dict[str, Dict[str, Tuple[str, int, int]]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        words = body.split()
        col = body.index(words[0]) + 1
        head = words[0]

        def word_col(k):
            pos = 0
            for w in words[:k]:
                pos = body.index(w, pos) + len(w)
            return body.index(words[k], pos) + 1

        if head == "algebra":
            if len(words) != 2 or not _IDENT.match(words[1]):
                raise ParseError("expected 'algebra <name>'", lineno, col, body.strip())
            if name:
                raise ParseError("duplicate algebra statement", lineno, col, head)
            name = words[1]
        elif head == "generator":
            if len(words) != 3 or not _IDENT.match(words[1]):
                raise ParseError("expected 'generator <ident> 1'", lineno, col, body.strip())
            if words[2] != "1":
                raise ParseError("only degree-1 generators are supported", lineno, word_col(2), words[2])
            g = words[1]
            if g in gen_lines:
                raise ParseError(f"duplicate generator {g!r}", lineno, word_col(1), g)
            if g in actions or g in ("d", "algebra", "generator", "action"):
                raise ParseError(f"name {g!r} is already in use", lineno, word_col(1), g)
            gens.append(g)
            gen_lines[g] = lineno
        elif head == "action":
            if len(words) != 4 or words[2] != "order" or not _IDENT.match(words[1]):
                raise ParseError("expected 'action <ident> order <int>'", lineno, col, body.strip())
            a = words[1]
            if a in actions or a in gen_lines or a == "d":
                raise ParseError(f"duplicate name {a!r}", lineno, word_col(1), a)
            if not words[3].isdigit() or int(words[3]) < 1:
                raise ParseError("action order must be a positive integer", lineno, word_col(3), words[3])
            actions[a] = (int(words[3]), lineno)
            images[a] = {}
        elif head == "d" or head in actions:
            if "=" not in body:
                raise ParseError("expected '='", lineno, col, head)
            lhs, rhs = body.split("=", 1)
            lw = lhs.split()
            if len(lw) != 2:
                raise ParseError(f"expected '{head} <ident> = <expr>'", lineno, col, lhs.strip())
            g = lw[1]
            gcol = lhs.index(g, len(head)) + 1
            if g not in gen_lines:
                raise ParseError(f"unknown generator {g!r}", lineno, gcol, g)
            rcol = len(lhs) + 2
            target = d_lines if head == "d" else images[head]
            if g in target:
                what = "differential" if head == "d" else f"image under {head}"
                raise ParseError(f"duplicate {what} for {g!r}", lineno, gcol, g)
            target[g] = (rhs, lineno, rcol)
        else:
            raise ParseError("unknown statement", lineno, col, head)

    if not gens:
        raise ParseError("no generators declared", 1, 1)
    table = GeneratorTable(tuple(gens))
    diffs = []
    for g in gens:
        if g not in d_lines:
            diffs.append(table.zero())
            continue
        rhs, ln, rc = d_lines[g]
        val = _parse_expr(rhs, table, ln, rc)
        if val and val.degrees() != {2}:
            raise ParseError(f"d({g}) must be of degree 2", ln, rc, rhs.strip())
        diffs.append(val)
    pres = CdgaPresentation(table, diffs, name=name, check=False)
    report = check_d_squared(pres)
    if not report.passed:
        g = report.failures[0]
        ln = d_lines[g][1] if g in d_lines else gen_lines[g]
        raise ParseError(f"d^2 != 0 on {g!r}: d(d({g})) = {report.values[g].to_text()}", ln, 1, g)
    pres = CdgaPresentation(table, diffs, name=name, check=False)

    specs = {}
    for a, (order, _) in actions.items():
        spec = ActionSpec(a, order)
        for g, (rhs, ln, rc) in images[a].items():
            val = _parse_expr(rhs, table, ln, rc)
            if val and val.degrees() != {1}:
                raise ParseError(f"image of {g!r} under {a} must have degree 1", ln, rc, rhs.strip())
            spec.images[g] = val
        specs[a] = spec
    return PresentationSource(pres, text=text, actions=specs)


def serialize(source) -> str:
    """Canonical ``.cdga`` text; parsing it yields an identical presentation."""
    if isinstance(source, CdgaPresentation):
        source = PresentationSource(source)
    pres = source.presentation
    for dg in pres.differentials:
        if any(isinstance(c, QSqrt3) for c in dg.terms.values()):
            raise CdgaError("surd coefficients cannot be written in the text format")
    lines = [f"algebra {pres.name or 'A'}"]
    lines += [f"generator {g} 1" for g in pres.table.names]
    lines += [f"d {g} = {dg.to_text()}" for g, dg in zip(pres.table.names, pres.differentials)]
    for a in sorted(source.actions):
        spec = source.actions[a]
        lines.append(f"action {a} order {spec.order}")
        for g in pres.table.names:
            if g in spec.images:
                lines.append(f"{a} {g} = {spec.images[g].to_text()}")
    return "\n".join(lines) + "\n"


# -- presets -----------------------------------------------------------------

_M_TEXT = """\
algebra M
generator a1 1
generator a2 1
generator b1 1
generator b2 1
generator c1 1
generator c2 1
generator e1 1
generator e2 1
d a1 = 0
d a2 = 0
d b1 = 0
d b2 = 0
d c1 = 0
d c2 = 0
d e1 = -1*b1^c1 + b2^c1 + b1^c2 + 2*b2^c2
d e2 = 2*b1^c1 + b2^c1 + b1^c2 - 1*b2^c2
action rho order 3
rho a1 = -a1 - a2
rho a2 = a1
rho b1 = -b1 - b2
rho b2 = b1
rho c1 = -c1 - c2
rho c2 = c1
rho e1 = -e1 - e2
rho e2 = e1
"""

_T2_TEXT = """\
algebra T2
generator a1 1
generator a2 1
action rho order 3
rho a1 = -a1 - a2
rho a2 = a1
"""

_T6_TEXT = """\
algebra T6
generator x1 1
generator x2 1
generator x3 1
generator x4 1
generator x5 1
generator x6 1
"""

# Named forms on M used by the obstruction computations on the Z3 quotient.
_M_BINDINGS = {
    "theta": "b1^b2",
    "tau1": "2 a1^c2 - a2^c1 + a1^c1 + a2^c2",
    "tau2": "c1^c2",
    "tau3": "a1^c1 + a2^c1 + a2^c2",
    "sigma": "2 a1^c2 - a2^c1 + a1^c1 + a2^c2",
    "omega": "a1^a2 + e2^b1 - e1^b2 + c1^c2",
    "xi": "-1/6 c1^b1^e2 - 1/6 c1^b2^e2 - 1/6 c1^b2^e1"
          " - 1/6 c2^b1^e2 - 1/6 c2^b1^e1 - 1/6 c2^b2^e1",
    "varsigma": "-1/3 a1^e2^b1 - 1/3 a1^e1^b1 - 1/3 a1^e1^b2 + 1/3 a2^e2^b2 - 1/3 a2^e1^b1",
    "kappa": "1/3 a1^b1^e1 - 1/3 a1^b1^e2 - 1/3 a1^b2^e1 - 2/3 a1^b2^e2"
             " - 1/3 a2^b1^e1 - 2/3 a2^b1^e2 - 2/3 a2^b2^e1 - 1/3 a2^b2^e2",
    "vol": "a1^a2^b1^b2^c1^c2^e1^e2",
}


def _n_text() -> str:
    return resources.files("cdgakit").joinpath("data/N.cdga").read_text()


def _heisenberg_real() -> PresentationSource:
    n = preset("N").presentation
    h = Fraction(1, 2)
    r = QSqrt3(h, h)      # (1 + sqrt3)/2
    s = QSqrt3(h, -h)     # (1 - sqrt3)/2
    t = QSqrt3(0, Fraction(1, 3))  # 1/sqrt3
    z = 0
    # old generator order: b1 b2 c1 c2 e1 e2
    matrix = [
        [1, r, z, z, z, z],
        [1, s, z, z, z, z],
        [z, z, 1, r, z, z],
        [z, z, 1, s, z, z],
        [z, z, z, z, 2 * t, t],
        [z, z, z, z, z, 1],
    ]
    pres = change_basis(n, ("mu1", "mu2", "nu1", "nu2", "th1", "th2"), matrix, name="heisenberg-real")
    return PresentationSource(pres)


def preset(name: str) -> PresentationSource:
    """Built-in presentations: ``N``, ``M``, ``T2``, ``T6``, ``heisenberg-real``."""
    if name == "N":
        return parse_presentation(_n_text())
    if name == "M":
        src = parse_presentation(_M_TEXT)
        src.bindings = {k: parse_element(v, src) for k, v in _M_BINDINGS.items()}
        return src
    if name == "T2":
        return parse_presentation(_T2_TEXT)
    if name == "T6":
        src = parse_presentation(_T6_TEXT)
        src.bindings = {"omega": parse_element("x1^x2 + x3^x4 + x5^x6", src)}
        return src
    if name == "heisenberg-real":
        return _heisenberg_real()
    raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


PRESETS = ("N", "M", "T2", "T6", "heisenberg-real")


# -- JSON ------------------------------------------------------------------


def to_jsonable(obj):
    """Recursively convert reports to JSON-ready data; scalars become strings."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, (Fraction, QSqrt3)):
        return format_scalar(obj)
    if isinstance(obj, GradedElement):
        return obj.to_text()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def dumps(obj, indent: Optional[int] = 2) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=indent)
