"""Line-oriented input format.

::

    # comments run to the end of the line
    kind sullivan              # optional; inferred when absent
    gen x : 2
    gen y : 3
    d y = x^2                  # also x*x
    bracket [a,b] = 2*c        # lie documents
    mult e*e = 0               # cdga documents (basis element "1" is implicit)
    map y = 2*y                # endomorphism values, used by the pi command
    base / fiber               # section headers in extension documents
    builtin sphere(2)
    option cutoff = 12         # cutoff, word_cutoff, seed

Expressions are rational linear combinations of ``*``-products with optional
``^k`` powers and ``p/q`` coefficients.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

KINDS = ("cdga", "sullivan", "lie", "extension", "builtin")
OPTION_KEYS = ("cutoff", "word_cutoff", "seed")
NAME = r"[A-Za-z_][A-Za-z0-9_]*"

Term = tuple  # (Fraction, tuple[str, ...])


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.col = col


@dataclass
class Statement:
    line: int
    section: str | None


@dataclass
class InputDocument:
    kind: str
    gens: list = field(default_factory=list)        # (name, degree, section)
    diffs: list = field(default_factory=list)       # (name, terms, section)
    brackets: list = field(default_factory=list)    # ((a, b), terms)
    mults: list = field(default_factory=list)       # ((a, b), terms)
    maps: list = field(default_factory=list)        # (name, terms)
    builtin: tuple | None = None                     # (family, params)
    options: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict, compare=False, repr=False)

    def degrees(self, section: str | None = None) -> dict[str, int]:
        return {n: d for n, d, s in self.gens if section is None or s == section}


# expressions ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>" + NAME + r")|(?P<op>[-+*^]))")


def parse_expr(text: str, line: int | None = None, offset: int = 0) -> list[Term]:
    """Parse ``2*x*y - 1/2*z^3 + 1`` into ``[(coeff, (factors...)), ...]``."""
    toks = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {stripped[pos:pos + 1].strip() or stripped[pos:]!r}", line,
                             offset + pos + 1)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), offset + m.start(kind) + 1))
        pos = m.end()
    if not toks:
        raise ParseError("empty expression", line, offset + 1)
    terms: list[Term] = []
    i = 0

    def expect_factor(i):
        if i >= len(toks):
            raise ParseError("expression ends unexpectedly", line, offset + len(stripped) + 1)
        return toks[i]

    while i < len(toks):
        sign = 1
        if terms or toks[i][0] == "op":
            kind, val, col = toks[i]
            if kind != "op" or val not in "+-":
                raise ParseError(f"expected '+' or '-' before {val!r}", line, col)
            sign = -1 if val == "-" else 1
            i += 1
        coeff = Fraction(sign)
        factors: list[str] = []
        while True:
            kind, val, col = expect_factor(i)
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "name":
                i += 1
                power = 1
                if i < len(toks) and toks[i][1] == "^":
                    kind2, val2, col2 = expect_factor(i + 1)
                    if kind2 != "num" or "/" in val2:
                        raise ParseError("exponent must be a non-negative integer", line, col2)
                    power = int(val2)
                    i += 2
                factors.extend([val] * power)
            else:
                raise ParseError(f"unexpected {val!r}", line, col)
            if i < len(toks) and toks[i][1] == "*":
                i += 1
                continue
            break
        terms.append((coeff, tuple(factors)))
    if terms == [(Fraction(0), ())]:
        return []
    return terms


def format_expr(terms: list[Term]) -> str:
    if not terms:
        return "0"
    out = []
    for k, (c, factors) in enumerate(terms):
        mag = abs(c)
        body = "*".join(factors)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if k == 0:
            out.append(text if c >= 0 else "-" + text)
        else:
            out.append((" + " if c >= 0 else " - ") + text)
    return "".join(out)


# documents ----------------------------------------------------------------------

_GEN = re.compile(r"gen\s+(" + NAME + r")\s*:\s*(-?\d+)\s*$")
_D = re.compile(r"d\s+(" + NAME + r")\s*=\s*")
_BRACKET = re.compile(r"bracket\s*\[\s*(" + NAME + r")\s*,\s*(" + NAME + r")\s*\]\s*=\s*")
_MULT = re.compile(r"mult\s+(" + NAME + r")\s*\*\s*(" + NAME + r")\s*=\s*")
_MAP = re.compile(r"map\s+(" + NAME + r")\s*=\s*")
_BUILTIN = re.compile(r"builtin\s+(" + NAME + r")\s*(?:\(\s*([-\d\s,]*)\))?\s*$")
_OPTION = re.compile(r"option\s+(" + NAME + r")\s*=\s*(-?\d+)\s*$")
_KIND = re.compile(r"kind\s+(" + NAME + r")\s*$")


def parse(text: str) -> InputDocument:
    """Parse and check a document; raises :class:`ParseError` with positions."""
    kind = None
    section = None
    doc = InputDocument(kind="")
    seen_gen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        body = line.strip()
        if not body:
            continue
        indent = len(line) - len(line.lstrip()) + 1
        if body in ("base", "fiber"):
            section = body
            doc.lines[("section", body)] = lineno
            continue
        if m := _KIND.match(body):
            if m.group(1) not in KINDS:
                raise ParseError(f"unknown kind {m.group(1)!r}", lineno, indent + m.start(1))
            if kind is not None:
                raise ParseError("kind declared twice", lineno, indent)
            kind = m.group(1)
            continue
        if m := _GEN.match(body):
            name, deg = m.group(1), int(m.group(2))
            if name in seen_gen:
                raise ParseError(f"generator {name!r} declared twice (first on line {seen_gen[name]})", lineno,
                                 indent + m.start(1))
            if deg < 0:
                raise ParseError("degrees must be >= 0", lineno, indent + m.start(2))
            if name == "1":
                raise ParseError("'1' is reserved", lineno, indent)
            seen_gen[name] = lineno
            doc.gens.append((name, deg, section))
            doc.lines[("gen", name)] = lineno
            continue
        if m := _D.match(body):
            name = m.group(1)
            terms = parse_expr(body[m.end():], lineno, indent + m.end() - 1)
            if any(n == name for n, _, _ in doc.diffs):
                raise ParseError(f"d {name} given twice", lineno, indent)
            doc.diffs.append((name, terms, section))
            doc.lines[("d", name)] = lineno
            continue
        if m := _BRACKET.match(body):
            pair = (m.group(1), m.group(2))
            doc.brackets.append((pair, parse_expr(body[m.end():], lineno, indent + m.end() - 1)))
            doc.lines[("bracket", pair)] = lineno
            continue
        if m := _MULT.match(body):
            pair = (m.group(1), m.group(2))
            doc.mults.append((pair, parse_expr(body[m.end():], lineno, indent + m.end() - 1)))
            doc.lines[("mult", pair)] = lineno
            continue
        if m := _MAP.match(body):
            doc.maps.append((m.group(1), parse_expr(body[m.end():], lineno, indent + m.end() - 1)))
            doc.lines[("map", m.group(1))] = lineno
            continue
        if m := _BUILTIN.match(body):
            if doc.builtin is not None:
                raise ParseError("only one builtin per document", lineno, indent)
            params = tuple(int(p) for p in (m.group(2) or "").replace(" ", "").split(",") if p)
            doc.builtin = (m.group(1), params)
            doc.lines[("builtin",)] = lineno
            continue
        if m := _OPTION.match(body):
            key = m.group(1)
            if key not in OPTION_KEYS:
                raise ParseError(f"unknown option {key!r} (known: {', '.join(OPTION_KEYS)})", lineno,
                                 indent + m.start(1))
            doc.options[key] = int(m.group(2))
            continue
        word = body.split()[0]
        raise ParseError(f"unknown statement {word!r}", lineno, indent)
    doc.kind = kind or _infer_kind(doc)
    _check(doc)
    return doc


def _infer_kind(doc: InputDocument) -> str:
    if doc.builtin is not None:
        return "builtin"
    if doc.brackets:
        return "lie"
    if doc.mults:
        return "cdga"
    if any(s is not None for _, _, s in doc.gens):
        return "extension"
    return "sullivan"


def _check(doc: InputDocument) -> None:
    L = doc.lines
    if doc.kind == "builtin":
        if doc.builtin is None:
            raise ParseError("builtin document without a builtin statement")
        if doc.gens or doc.diffs or doc.brackets or doc.mults:
            raise ParseError("builtin documents take no other declarations", L.get(("builtin",)))
        return
    if doc.builtin is not None:
        raise ParseError(f"builtin statement in a {doc.kind} document", L.get(("builtin",)))
    if not doc.gens:
        raise ParseError("no generators declared")
    degs = doc.degrees()
    allowed = {
        "sullivan": ("diffs", "maps"), "lie": ("brackets",), "cdga": ("diffs", "mults"),
        "extension": ("diffs",),
    }[doc.kind]
    for what, key in (("diffs", "d"), ("brackets", "bracket"), ("mults", "mult"), ("maps", "map")):
        items = getattr(doc, what)
        if items and what not in allowed:
            first = items[0]
            raise ParseError(f"'{key}' statements are not allowed in a {doc.kind} document",
                             L.get((key, first[0])))
    if doc.kind == "extension":
        if any(s is None for _, _, s in doc.gens):
            raise ParseError("extension generators must follow a 'base' or 'fiber' header")
    known = set(degs)
    if doc.kind == "cdga":
        known.add("1")

    def check_terms(terms, target_deg, where, lineno, names=known, linear=False):
        for c, factors in terms:
            for f in factors:
                if f not in names:
                    raise ParseError(f"undeclared name {f!r} in {where}", lineno)
            if linear and len(factors) != 1:
                raise ParseError(f"{where} must be a linear combination of basis elements", lineno)
            deg = sum(0 if f == "1" else degs[f] for f in factors)
            if deg != target_deg:
                raise ParseError(f"degree mismatch in {where}: term {format_expr([(c, factors)])} has degree {deg}, "
                                 f"expected {target_deg}", lineno)

    for name, terms, section in doc.diffs:
        lineno = L.get(("d", name))
        if name not in degs:
            raise ParseError(f"d of undeclared generator {name!r}", lineno)
        names = known
        if doc.kind == "extension":
            if section != dict((n, s) for n, _, s in doc.gens)[name]:
                raise ParseError(f"d {name} appears outside its section", lineno)
            if section == "base":
                names = set(doc.degrees("base"))
        check_terms(terms, degs[name] + 1, f"d {name} (d raises degree by 1)", lineno, names,
                    linear=doc.kind == "cdga")
    for (a, b), terms in doc.brackets:
        lineno = L.get(("bracket", (a, b)))
        for n in (a, b):
            if n not in degs:
                raise ParseError(f"undeclared name {n!r} in bracket", lineno)
        check_terms(terms, degs[a] + degs[b], f"[{a},{b}]", lineno, linear=True)
    for (a, b), terms in doc.mults:
        lineno = L.get(("mult", (a, b)))
        for n in (a, b):
            if n not in degs:
                raise ParseError(f"undeclared name {n!r} in product", lineno)
        check_terms(terms, degs[a] + degs[b], f"{a}*{b}", lineno, linear=True)
    for name, terms in doc.maps:
        lineno = L.get(("map", name))
        if name not in degs:
            raise ParseError(f"map of undeclared generator {name!r}", lineno)
        check_terms(terms, degs[name], f"map {name}", lineno)


def to_text(doc: InputDocument) -> str:
    """Canonical printing; ``parse(to_text(doc)) == doc``."""
    out = [f"kind {doc.kind}"]
    for k in OPTION_KEYS:
        if k in doc.options:
            out.append(f"option {k} = {doc.options[k]}")
    if doc.builtin is not None:
        fam, params = doc.builtin
        out.append(f"builtin {fam}({', '.join(str(p) for p in params)})")
        return "\n".join(out) + "\n"
    sections = [None] if doc.kind != "extension" else ["base", "fiber"]
    for sec in sections:
        if sec is not None:
            out.append(sec)
        for n, d, s in doc.gens:
            if s == sec:
                out.append(f"gen {n} : {d}")
        for n, terms, s in doc.diffs:
            if s == sec:
                out.append(f"d {n} = {format_expr(terms)}")
    for (a, b), terms in doc.brackets:
        out.append(f"bracket [{a},{b}] = {format_expr(terms)}")
    for (a, b), terms in doc.mults:
        out.append(f"mult {a}*{b} = {format_expr(terms)}")
    for n, terms in doc.maps:
        out.append(f"map {n} = {format_expr(terms)}")
    return "\n".join(out) + "\n"
