"""Lexer, parser and pretty-printer for the scene-sequencing language.

Grammar:

    program   := scene+
    scene     := "scene" STRING "duration" NUMBER "s" "{" stmt* "}"
    stmt      := KEY "=" expr ";"          KEY in {group, color, animate, brightness}
    expr      := call | NUMBER | STRING | HEXCOLOR | IDENT
    call      := IDENT "(" (expr ("," expr)*)? ")"
    comments  := "#" to end of line

Hex colors are "#" plus exactly six hex digits; any other "#" starts a
comment.  Parsing is total: it never raises for bad input, it returns
positioned diagnostics, and every name (group selectors, palettes, rule
names) is resolved here so evaluation cannot hit an unknown identifier.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .palettes import PALETTES

GROUP_KINDS_PLAIN = ("full24", "dualpair", "directed24", "rings", "trivial")
GROUP_KINDS_INDEXED = ("tess", "sixteen")
FIBER_AXES = ("i", "j", "k")
SWEEP_KINDS = ("cells", "cubes")


# ---------------------------------------------------------------------------
# diagnostics and tokens


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT NUMBER STRING HEXCOLOR PUNCT EOF
    value: str
    line: int
    col: int


_HEX_RE = re.compile(r"#[0-9a-fA-F]{6}(?![0-9a-zA-Z])")
_NUM_RE = re.compile(r"\d+(\.\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            m = _HEX_RE.match(text, i)
            if m:
                tokens.append(Token("HEXCOLOR", m.group(), line, col))
                col += len(m.group())
                i = m.end()
                continue
            # comment to end of line
            end = text.find("\n", i)
            if end == -1:
                break
            col += end - i
            i = end
            continue
        if ch == '"':
            end = text.find('"', i + 1)
            nl = text.find("\n", i + 1)
            if end == -1 or (nl != -1 and nl < end):
                diags.append(Diagnostic(line, col, "unterminated string"))
                i = nl if nl != -1 else n
                continue
            tokens.append(Token("STRING", text[i + 1:end], line, col))
            col += end - i + 1
            i = end + 1
            continue
        if ch.isdigit():
            m = _NUM_RE.match(text, i)
            tokens.append(Token("NUMBER", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(Token("IDENT", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        if ch in "{}()=,;":
            tokens.append(Token("PUNCT", ch, line, col))
            i += 1
            col += 1
            continue
        diags.append(Diagnostic(line, col, f"unexpected character {ch!r}"))
        i += 1
        col += 1
    tokens.append(Token("EOF", "", line, col))
    return tokens, diags


# ---------------------------------------------------------------------------
# resolved AST


@dataclass(frozen=True)
class GroupSel:
    kind: str
    arg: int | None = None


@dataclass(frozen=True)
class OrbitColor:
    palette: str


@dataclass(frozen=True)
class SolidColor:
    rgb: tuple[int, int, int]


@dataclass(frozen=True)
class Sweep:
    what: str
    step: float


@dataclass(frozen=True)
class Slide:
    axis: str
    side: str
    speed: float


@dataclass(frozen=True)
class HueShift:
    pass


@dataclass(frozen=True)
class BrightNum:
    value: float


@dataclass(frozen=True)
class BrightSignal:
    pass


@dataclass(frozen=True)
class BrightMul:
    a: "Brightness"
    b: "Brightness"


Brightness = BrightNum | BrightSignal | BrightMul
ColorRule = OrbitColor | SolidColor
AnimRule = Sweep | Slide | HueShift


@dataclass(frozen=True)
class Scene:
    name: str
    duration: float
    group: GroupSel = GroupSel("trivial")
    color: ColorRule = SolidColor((255, 255, 255))
    animate: AnimRule | None = None
    brightness: Brightness = BrightNum(1.0)


@dataclass(frozen=True)
class Program:
    scenes: tuple[Scene, ...]

    @property
    def total_duration(self) -> float:
        return sum(s.duration for s in self.scenes)


@dataclass
class ParseResult:
    program: Program | None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.program is not None and not self.diagnostics


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, tokens: list[Token], diags: list[Diagnostic]):
        self.toks = tokens
        self.pos = 0
        self.diags = diags

    @property
    def cur(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.cur
        if t.kind != "EOF":
            self.pos += 1
        return t

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.cur
        self.diags.append(Diagnostic(tok.line, tok.col, message))

    def accept_punct(self, ch: str) -> bool:
        if self.cur.kind == "PUNCT" and self.cur.value == ch:
            self.advance()
            return True
        return False

    def expect_punct(self, ch: str) -> bool:
        if self.accept_punct(ch):
            return True
        self.error(f"expected {ch!r}")
        return False

    def skip_to(self, *stops: str):
        """Recovery: skip tokens until one of the stop punct/idents (kept)."""
        while self.cur.kind != "EOF":
            if self.cur.kind == "PUNCT" and self.cur.value in stops:
                return
            if self.cur.kind == "IDENT" and self.cur.value in stops:
                return
            self.advance()

    # -- expressions ------------------------------------------------------

    def parse_expr(self):
        t = self.cur
        if t.kind == "NUMBER":
            self.advance()
            return t
        if t.kind == "STRING":
            self.advance()
            return t
        if t.kind == "HEXCOLOR":
            self.advance()
            return t
        if t.kind == "IDENT":
            self.advance()
            if self.cur.kind == "PUNCT" and self.cur.value == "(":
                self.advance()
                args = []
                if not (self.cur.kind == "PUNCT" and self.cur.value == ")"):
                    args.append(self.parse_expr())
                    while self.accept_punct(","):
                        args.append(self.parse_expr())
                if not self.expect_punct(")"):
                    return None
                if any(a is None for a in args):
                    return None
                return (t, tuple(args))  # call: (name token, args)
            return t
        self.error("expected an expression")
        return None

    # -- resolution of each statement key -----------------------------------

    def resolve_group(self, expr) -> GroupSel | None:
        if isinstance(expr, Token) and expr.kind == "IDENT":
            if expr.value in GROUP_KINDS_PLAIN:
                return GroupSel(expr.value)
            if expr.value in GROUP_KINDS_INDEXED:
                self.error(f"group {expr.value!r} needs an index argument", expr)
                return None
            self.error(f"unknown group {expr.value!r}", expr)
            return None
        if isinstance(expr, tuple):
            name, args = expr
            if name.value in GROUP_KINDS_INDEXED:
                if (len(args) == 1 and isinstance(args[0], Token)
                        and args[0].kind == "NUMBER" and "." not in args[0].value
                        and 0 <= int(args[0].value) <= 2):
                    return GroupSel(name.value, int(args[0].value))
                self.error(f"{name.value}(k) needs an integer index 0..2", name)
                return None
            if name.value in GROUP_KINDS_PLAIN and not args:
                return GroupSel(name.value)
            self.error(f"unknown group {name.value!r}", name)
            return None
        if expr is not None:
            self.error("group must be a selector name")
        return None

    def resolve_color(self, expr) -> ColorRule | None:
        if isinstance(expr, tuple):
            name, args = expr
            if name.value == "orbit":
                if (len(args) == 1 and isinstance(args[0], tuple)
                        and args[0][0].value == "palette"):
                    pal_args = args[0][1]
                    if (len(pal_args) == 1 and isinstance(pal_args[0], Token)
                            and pal_args[0].kind == "STRING"):
                        pname = pal_args[0].value
                        if pname in PALETTES:
                            return OrbitColor(pname)
                        self.error(f"unknown palette {pname!r}", pal_args[0])
                        return None
                self.error("orbit(...) takes palette(\"name\")", name)
                return None
            if name.value == "solid":
                if (len(args) == 1 and isinstance(args[0], Token)
                        and args[0].kind == "HEXCOLOR"):
                    h = args[0].value[1:]
                    return SolidColor(tuple(int(h[i:i + 2], 16) for i in (0, 2, 4)))
                self.error("solid(...) takes a #RRGGBB color", name)
                return None
            self.error(f"unknown color rule {name.value!r}", name)
            return None
        if expr is not None:
            tok = expr if isinstance(expr, Token) else self.cur
            self.error("color must be orbit(palette(\"...\")) or solid(#RRGGBB)", tok)
        return None

    def resolve_animate(self, expr) -> AnimRule | None:
        if isinstance(expr, tuple):
            name, args = expr
            if name.value == "sweep":
                if (len(args) == 2 and isinstance(args[0], Token)
                        and args[0].kind == "IDENT" and args[0].value in SWEEP_KINDS
                        and isinstance(args[1], Token) and args[1].kind == "NUMBER"):
                    step = float(args[1].value)
                    if step > 0:
                        return Sweep(args[0].value, step)
                self.error("sweep(cells|cubes, seconds>0)", name)
                return None
            if name.value == "slide":
                if (len(args) == 2 and isinstance(args[0], tuple)
                        and args[0][0].value == "fiber"
                        and isinstance(args[1], Token) and args[1].kind == "NUMBER"):
                    fargs = args[0][1]
                    if (len(fargs) == 2
                            and all(isinstance(a, Token) and a.kind == "STRING"
                                    for a in fargs)
                            and fargs[0].value in FIBER_AXES
                            and fargs[1].value in ("left", "right")):
                        return Slide(fargs[0].value, fargs[1].value,
                                     float(args[1].value))
                self.error('slide(fiber("i|j|k","left|right"), speed)', name)
                return None
            if name.value == "hueshift":
                if (len(args) == 1 and isinstance(args[0], Token)
                        and args[0].kind == "IDENT" and args[0].value == "signal"):
                    return HueShift()
                self.error("hueshift(signal)", name)
                return None
            self.error(f"unknown animation {name.value!r}", name)
            return None
        if expr is not None:
            tok = expr if isinstance(expr, Token) else self.cur
            self.error("animate must be sweep(...), slide(...) or hueshift(signal)", tok)
        return None

    def resolve_brightness(self, expr) -> Brightness | None:
        if isinstance(expr, Token):
            if expr.kind == "NUMBER":
                return BrightNum(float(expr.value))
            if expr.kind == "IDENT" and expr.value == "signal":
                return BrightSignal()
            self.error("brightness must be a number, signal, or mul(...)", expr)
            return None
        if isinstance(expr, tuple):
            name, args = expr
            if name.value == "mul" and len(args) == 2:
                a = self.resolve_brightness(args[0])
                b = self.resolve_brightness(args[1])
                if a is not None and b is not None:
                    return BrightMul(a, b)
                return None
            self.error(f"unknown brightness function {name.value!r}", name)
            return None
        if expr is not None:
            self.error("brightness must be a number, signal, or mul(...)")
        return None

    # -- scenes ----------------------------------------------------------

    def parse_scene(self) -> Scene | None:
        start = self.cur
        if not (start.kind == "IDENT" and start.value == "scene"):
            self.error('expected "scene"')
            return None
        self.advance()
        name_tok = self.cur
        if name_tok.kind != "STRING":
            self.error("expected a scene name string", name_tok)
            self.skip_to("{", "scene")
            name_tok = None
        else:
            self.advance()

        dur = None
        if self.cur.kind == "IDENT" and self.cur.value == "duration":
            self.advance()
            num = self.cur
            if num.kind == "NUMBER":
                self.advance()
                unit = self.cur
                if unit.kind == "IDENT" and unit.value == "s":
                    self.advance()
                    dur = float(num.value)
                    if dur <= 0:
                        self.error("duration must be positive", num)
                        dur = None
                else:
                    self.error('expected "s" after the duration', unit)
            else:
                self.error("expected a number after duration", num)
        elif name_tok is not None:
            self.error('expected "duration"')

        fields: dict[str, object] = {}
        if not self.expect_punct("{"):
            self.skip_to("scene")
            return None
        while not (self.cur.kind == "PUNCT" and self.cur.value == "}"):
            if self.cur.kind == "EOF":
                self.error("unterminated scene block", start)
                return None
            key = self.cur
            if key.kind != "IDENT" or key.value not in (
                    "group", "color", "animate", "brightness"):
                self.error(
                    f"unknown statement key {key.value!r}" if key.kind == "IDENT"
                    else "expected a statement key", key)
                self.advance()
                self.skip_to(";", "}")
                self.accept_punct(";")
                continue
            self.advance()
            if not self.expect_punct("="):
                self.skip_to(";", "}")
                self.accept_punct(";")
                continue
            expr = self.parse_expr()
            if not self.expect_punct(";"):
                self.skip_to(";", "}")
                self.accept_punct(";")
            if key.value in fields:
                self.error(f"duplicate key {key.value!r}", key)
                continue
            resolver = getattr(self, f"resolve_{key.value}")
            value = resolver(expr)
            if value is not None:
                fields[key.value] = value
        self.expect_punct("}")

        if name_tok is None or dur is None:
            return None
        kwargs = {}
        for k in ("group", "color", "animate", "brightness"):
            if k in fields:
                kwargs[k] = fields[k]
        return Scene(name_tok.value, dur, **kwargs)

    def parse_program(self) -> Program | None:
        scenes = []
        if self.cur.kind == "EOF":
            self.error("expected at least one scene")
            return None
        while self.cur.kind != "EOF":
            if self.cur.kind == "IDENT" and self.cur.value == "scene":
                sc = self.parse_scene()
                if sc is not None:
                    scenes.append(sc)
            else:
                self.error('expected "scene"')
                self.advance()
                self.skip_to("scene")
        if not scenes:
            return None
        return Program(tuple(scenes))


def parse(text: str) -> ParseResult:
    """Parse a script; returns a Program or positioned diagnostics, never raises."""
    tokens, diags = tokenize(text)
    parser = _Parser(tokens, diags)
    program = parser.parse_program()
    if parser.diags:
        return ParseResult(None, parser.diags)
    return ParseResult(program, [])


# ---------------------------------------------------------------------------
# pretty printer


def _fmt_num(x: float) -> str:
    return repr(int(x)) if float(x).is_integer() else repr(x)


def _fmt_group(g: GroupSel) -> str:
    return g.kind if g.arg is None else f"{g.kind}({g.arg})"


def _fmt_color(c: ColorRule) -> str:
    if isinstance(c, OrbitColor):
        return f'orbit(palette("{c.palette}"))'
    return "solid(#{:02X}{:02X}{:02X})".format(*c.rgb)


def _fmt_anim(a: AnimRule) -> str:
    if isinstance(a, Sweep):
        return f"sweep({a.what}, {_fmt_num(a.step)})"
    if isinstance(a, Slide):
        return f'slide(fiber("{a.axis}","{a.side}"), {_fmt_num(a.speed)})'
    return "hueshift(signal)"


def _fmt_brightness(b: Brightness) -> str:
    if isinstance(b, BrightNum):
        return _fmt_num(b.value)
    if isinstance(b, BrightSignal):
        return "signal"
    return f"mul({_fmt_brightness(b.a)}, {_fmt_brightness(b.b)})"


def format_program(p: Program) -> str:
    """Canonical text form; parsing it back gives a structurally equal Program."""
    out = []
    for s in p.scenes:
        out.append(f'scene "{s.name}" duration {_fmt_num(s.duration)}s {{')
        out.append(f"  group = {_fmt_group(s.group)};")
        out.append(f"  color = {_fmt_color(s.color)};")
        if s.animate is not None:
            out.append(f"  animate = {_fmt_anim(s.animate)};")
        out.append(f"  brightness = {_fmt_brightness(s.brightness)};")
        out.append("}")
    return "\n".join(out) + "\n"
