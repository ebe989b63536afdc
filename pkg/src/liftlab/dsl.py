"""Script language for defining charts, tensors and structures and running
checks on them.

Grammar (EBNF sketch; # starts a comment, statements end at newline or ';'):

    stmt := "chart" NAME "(" NAME {"," NAME} ")"
          | "bivector"  NAME "on" CHART "=" mvexpr
          | "vector"    NAME "on" CHART "=" mvexpr
          | "tensor"    NAME "on" CHART "=" texpr
          | "jacobi"    NAME "on" CHART "=" "(" mvexpr "," mvexpr ")"
          | "algebroid" NAME "on" CHART "rank" INT "{" entry {";" entry} [";"] "}"
          | "cocycle"   NAME "on" ALGEBROID "=" "(" polyexpr {"," polyexpr} ")"
          | "bisection" NAME "on" ALGEBROID_OR_COCYCLE "=" framemv
          | "check" SUITE NAME {NAME}
          | "lift" KIND NAME {NAME}
          | "bracket" KIND NAME NAME
    entry := "c" "(" INT "," INT "," INT ")" "=" polyexpr
           | "d" "(" INT "," NAME ")" "=" polyexpr
    mvexpr := ["-"] mvterm {("+"|"-") mvterm}
    mvterm := factor {"*" factor}        -- at most one wedge chain per term
    factor := DIRECTION {"^" DIRECTION} | polyatom
    texpr  := like mvexpr with "@" chains
    framemv:= like mvexpr with frame directions e1..eN
    polyatom := INT ["/" INT] | NAME ["^" INT] | "exp" "(" [INT "*"] NAME | "-" [INT "*"] NAME ")"
              | "(" polyexpr ")" ["^" INT]

Parsing reports the first error with line, column and the expected tokens.
Rendering is canonical (sorted term order), and parse(render(x)) == x for
every bindable object.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .chart import Chart, chart as make_chart
from .coeff import ExpPoly
from .geometry import (FirstOrderBiDiffOp, MultiVector, TensorField,
                       render_tensor)
from .algebroid import AlgebroidSpec, JacobiAlgebroidSpec
from .report import Report

SUITES = ("poisson", "jacobi", "validate", "thm6", "thm7", "thm8", "thm10",
          "lemma1", "lemma2", "axioms")
LIFT_KINDS = ("tangent", "vertical", "jacobi", "poisson", "poissonization", "complete")
BRACKET_KINDS = ("sn", "lie")


class ParseError(ValueError):
    def __init__(self, message, line, col, expected=None):
        self.line = line
        self.col = col
        self.expected = tuple(expected or ())
        super().__init__(f"{line}:{col}: {message}")


class SessionError(ValueError):
    pass


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)"
    r"|(?P<direction>d/d[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[(){},;=+\-*^@/])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            out.append(Token("nl", "\n", line, col))
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(tok)
        else:
            out.append(Token(kind, tok, line, col))
            col += len(tok)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


@dataclass
class Statement:
    kind: str
    args: tuple
    line: int
    col: int


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, expected):
        tok = self.peek()
        found = tok.text or "end of input"
        exp = expected if isinstance(expected, (list, tuple)) else [expected]
        raise ParseError(f"expected {' or '.join(exp)}, found {found!r}",
                         tok.line, tok.col, exp)

    def expect(self, kind, text=None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            self.error(text if text is not None else kind.upper())
        return self.next()

    def accept(self, kind, text=None):
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            return self.next()
        return None

    def skip_nl(self):
        while self.peek().kind == "nl" or (self.peek().kind == "op" and self.peek().text == ";"):
            self.next()

    def end_statement(self):
        tok = self.peek()
        if tok.kind == "eof":
            return
        if tok.kind == "nl" or (tok.kind == "op" and tok.text == ";"):
            self.next()
            return
        self.error(["end of statement"])

    # -- statements ---------------------------------------------------------

    def parse_script(self) -> list[Statement]:
        out = []
        self.skip_nl()
        while self.peek().kind != "eof":
            out.append(self.parse_statement())
            self.end_statement()
            self.skip_nl()
        return out

    def parse_statement(self) -> Statement:
        tok = self.peek()
        if tok.kind != "name":
            self.error(["chart", "bivector", "vector", "tensor", "jacobi",
                        "algebroid", "cocycle", "bisection", "check", "lift", "bracket"])
        handler = getattr(self, f"_stmt_{tok.text}", None)
        if handler is None:
            self.error(["chart", "bivector", "vector", "tensor", "jacobi",
                        "algebroid", "cocycle", "bisection", "check", "lift", "bracket"])
        return handler()

    def _stmt_chart(self):
        kw = self.expect("name", "chart")
        name = self.expect("name").text
        self.expect("op", "(")
        names = [self.expect("name").text]
        while self.accept("op", ","):
            names.append(self.expect("name").text)
        self.expect("op", ")")
        return Statement("chart", (name, tuple(names)), kw.line, kw.col)

    def _header(self, kw_text):
        kw = self.expect("name", kw_text)
        name = self.expect("name").text
        self.expect("name", "on")
        carrier = self.expect("name").text
        self.expect("op", "=")
        return kw, name, carrier

    def _stmt_bivector(self):
        kw, name, carrier = self._header("bivector")
        expr = self.parse_mvexpr()
        return Statement("bivector", (name, carrier, expr), kw.line, kw.col)

    def _stmt_vector(self):
        kw, name, carrier = self._header("vector")
        expr = self.parse_mvexpr()
        return Statement("vector", (name, carrier, expr), kw.line, kw.col)

    def _stmt_tensor(self):
        kw, name, carrier = self._header("tensor")
        expr = self.parse_mvexpr(sep="@")
        return Statement("tensor", (name, carrier, expr), kw.line, kw.col)

    def _stmt_jacobi(self):
        kw, name, carrier = self._header("jacobi")
        self.expect("op", "(")
        lam = self.parse_mvexpr()
        self.expect("op", ",")
        gam = self.parse_mvexpr()
        self.expect("op", ")")
        return Statement("jacobi", (name, carrier, lam, gam), kw.line, kw.col)

    def _stmt_algebroid(self):
        kw = self.expect("name", "algebroid")
        name = self.expect("name").text
        self.expect("name", "on")
        carrier = self.expect("name").text
        self.expect("name", "rank")
        rank = int(self.expect("int").text)
        self.expect("op", "{")
        entries = []
        self.skip_nl()
        while not self.accept("op", "}"):
            which = self.expect("name")
            if which.text not in ("c", "d"):
                self.error(["c", "d"])
            self.expect("op", "(")
            i = int(self.expect("int").text)
            self.expect("op", ",")
            if which.text == "c":
                j = int(self.expect("int").text)
                self.expect("op", ",")
                k = int(self.expect("int").text)
                self.expect("op", ")")
                self.expect("op", "=")
                entries.append(("c", (i, j, k), self.parse_polyexpr()))
            else:
                a = self.expect("name").text
                self.expect("op", ")")
                self.expect("op", "=")
                entries.append(("d", (i, a), self.parse_polyexpr()))
            tok = self.peek()
            if tok.kind == "nl" or (tok.kind == "op" and tok.text == ";"):
                self.skip_nl()
            elif not (tok.kind == "op" and tok.text == "}"):
                self.error([";", "}"])
        return Statement("algebroid", (name, carrier, rank, tuple(entries)), kw.line, kw.col)

    def _stmt_cocycle(self):
        kw, name, carrier = self._header("cocycle")
        self.expect("op", "(")
        comps = [self.parse_polyexpr()]
        while self.accept("op", ","):
            comps.append(self.parse_polyexpr())
        self.expect("op", ")")
        return Statement("cocycle", (name, carrier, tuple(comps)), kw.line, kw.col)

    def _stmt_bisection(self):
        kw, name, carrier = self._header("bisection")
        expr = self.parse_mvexpr(frame=True)
        return Statement("bisection", (name, carrier, expr), kw.line, kw.col)

    def _stmt_check(self):
        kw = self.expect("name", "check")
        suite = self.expect("name").text
        if suite not in SUITES:
            self.pos -= 1
            self.error(list(SUITES))
        names = []
        while self.peek().kind == "name":
            names.append(self.next().text)
        return Statement("check", (suite, tuple(names)), kw.line, kw.col)

    def _stmt_lift(self):
        kw = self.expect("name", "lift")
        kind = self.expect("name").text
        if kind not in LIFT_KINDS:
            self.pos -= 1
            self.error(list(LIFT_KINDS))
        names = [self.expect("name").text]
        while self.peek().kind == "name":
            names.append(self.next().text)
        return Statement("lift", (kind, tuple(names)), kw.line, kw.col)

    def _stmt_bracket(self):
        kw = self.expect("name", "bracket")
        kind = self.expect("name").text
        if kind not in BRACKET_KINDS:
            self.pos -= 1
            self.error(list(BRACKET_KINDS))
        a = self.expect("name").text
        b = self.expect("name").text
        return Statement("bracket", (kind, a, b), kw.line, kw.col)

    # -- expressions ---------------------------------------------------------

    def parse_mvexpr(self, sep="^", frame=False):
        """A sum of terms; each term is a product of coefficient atoms and at
        most one direction chain.  Returns a raw expression tree evaluated
        against a chart later."""
        terms = []
        negate = bool(self.accept("op", "-"))
        terms.append((self.parse_mvterm(sep, frame), negate))
        while True:
            if self.accept("op", "+"):
                terms.append((self.parse_mvterm(sep, frame), False))
            elif self.accept("op", "-"):
                terms.append((self.parse_mvterm(sep, frame), True))
            else:
                return ("mv", tuple(terms), sep)

    def parse_mvterm(self, sep, frame):
        factors = []
        dirs = None
        while True:
            tok = self.peek()
            if tok.kind == "direction" and not frame:
                if dirs is not None:
                    self.error(["+", "-", "end of term"])
                dirs = [self.next().text[3:]]
                while self.accept("op", sep):
                    dirs.append(self.expect("direction").text[3:])
            elif frame and tok.kind == "name" and re.fullmatch(r"e\d+", tok.text):
                if dirs is not None:
                    self.error(["+", "-", "end of term"])
                dirs = [self.next().text]
                while self.accept("op", "^"):
                    nxt = self.expect("name")
                    if not re.fullmatch(r"e\d+", nxt.text):
                        self.pos -= 1
                        self.error(["frame direction e<k>"])
                    dirs.append(nxt.text)
            else:
                factors.append(self.parse_polyatom())
            if not self.accept("op", "*"):
                break
        return (tuple(factors), tuple(dirs) if dirs is not None else None)

    def parse_polyexpr(self):
        terms = []
        negate = bool(self.accept("op", "-"))
        terms.append((self.parse_polyterm(), negate))
        while True:
            if self.accept("op", "+"):
                terms.append((self.parse_polyterm(), False))
            elif self.accept("op", "-"):
                terms.append((self.parse_polyterm(), True))
            else:
                return ("sum", tuple(terms))

    def parse_polyterm(self):
        factors = [self.parse_polyatom()]
        while self.accept("op", "*"):
            factors.append(self.parse_polyatom())
        return ("prod", tuple(factors))

    def parse_polyatom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            num = int(tok.text)
            if self.accept("op", "/"):
                den = int(self.expect("int").text)
                return ("const", Fraction(num, den))
            return ("const", Fraction(num))
        if tok.kind == "name" and tok.text == "exp":
            self.next()
            self.expect("op", "(")
            sign = -1 if self.accept("op", "-") else 1
            weight = 1
            t2 = self.peek()
            if t2.kind == "int":
                self.next()
                weight = int(t2.text)
                self.expect("op", "*")
            var = self.expect("name").text
            self.expect("op", ")")
            return ("exp", var, sign * weight)
        if tok.kind == "name":
            self.next()
            power = 1
            if self.accept("op", "^"):
                power = int(self.expect("int").text)
            return ("var", tok.text, power)
        if tok.kind == "op" and tok.text == "(":
            self.next()
            inner = self.parse_polyexpr()
            self.expect("op", ")")
            power = 1
            if self.accept("op", "^"):
                power = int(self.expect("int").text)
            return ("paren", inner, power)
        self.error(["a number", "a variable", "exp(...)", "("])


# -- expression evaluation ------------------------------------------------------

def eval_poly(node, ch: Chart) -> ExpPoly:
    kind = node[0]
    if kind == "sum":
        out = ExpPoly.zero(ch)
        for term, neg in node[1]:
            v = eval_poly(term, ch)
            out = out - v if neg else out + v
        return out
    if kind == "prod":
        out = ExpPoly.const(ch, 1)
        for f in node[1]:
            out = out * eval_poly(f, ch)
        return out
    if kind == "const":
        return ExpPoly.const(ch, node[1])
    if kind == "var":
        return ExpPoly.var(ch, node[1]) ** node[2]
    if kind == "exp":
        return ExpPoly.exp_gen(ch, node[1], node[2])
    if kind == "paren":
        return eval_poly(node[1], ch) ** node[2]
    raise SessionError(f"bad poly node {kind!r}")


def eval_mv(node, ch: Chart, degree: int, frame_names=None):
    """Evaluate an mv expression tree to a MultiVector (or TensorField when
    the tree was parsed with the '@' separator)."""
    _, terms, sep = node
    tensor = sep == "@"
    acc_mv = MultiVector.zero(ch, degree)
    acc_t = TensorField.zero(ch, degree)
    for (factors, dirs), neg in terms:
        coeff = ExpPoly.const(ch, 1)
        for f in factors:
            coeff = coeff * eval_poly(f, ch)
        dirs = dirs or ()
        if not dirs and coeff.is_zero():
            continue  # the canonical rendering of the zero tensor is "0"
        if len(dirs) != degree:
            raise SessionError(
                f"term has degree {len(dirs)}, expected {degree}")
        if frame_names is not None:
            try:
                idx = tuple(frame_names[d] for d in dirs)
            except KeyError as exc:
                raise SessionError(f"unknown frame direction {exc.args[0]!r}") from None
            names = idx
        else:
            names = dirs
        if neg:
            coeff = -coeff
        if tensor:
            key = tuple(ch.index(n) for n in names)
            acc_t = acc_t + TensorField(ch, degree, {key: coeff})
        else:
            acc_mv = acc_mv + MultiVector.direction(ch, *names).scale(coeff)
    return acc_t if tensor else acc_mv


# -- canonical rendering ----------------------------------------------------------

def render_statement(kind: str, name: str, obj, session) -> str:
    if kind == "chart":
        return f"chart {name}({', '.join(obj.names)})"
    if kind == "bivector":
        return f"bivector {name} on {session.carrier_of[name]} = {render_tensor(obj, sep=' ^ ')}"
    if kind == "vector":
        return f"vector {name} on {session.carrier_of[name]} = {render_tensor(obj, sep=' ^ ')}"
    if kind == "tensor":
        return f"tensor {name} on {session.carrier_of[name]} = {render_tensor(obj, sep=' @ ')}"
    if kind == "jacobi":
        lam, gam = obj.skew_pair()
        return (f"jacobi {name} on {session.carrier_of[name]} = "
                f"({render_tensor(lam, sep=' ^ ')}, {render_tensor(gam, sep=' ^ ')})")
    if kind == "algebroid":
        entries = []
        for (i, j, k) in sorted(obj.c):
            v = obj.c[(i, j, k)]
            if not v.is_zero():
                entries.append(f"c({i + 1},{j + 1},{k + 1}) = {v}")
        for (i, a) in sorted(obj.d):
            v = obj.d[(i, a)]
            if not v.is_zero():
                entries.append(f"d({i + 1},{a}) = {v}")
        body = "; ".join(entries)
        return (f"algebroid {name} on {session.carrier_of[name]} "
                f"rank {obj.rank} {{ {body} }}")
    if kind == "cocycle":
        spec = obj.algebroid
        comps = obj.phi_frame()
        rendered = ", ".join(str(comps.get(i, ExpPoly.zero(spec.base))) for i in range(spec.rank))
        return f"cocycle {name} on {session.carrier_of[name]} = ({rendered})"
    if kind == "bisection":
        from .geometry import _poly_body
        spec = session.algebroid_of(session.carrier_of[name])
        comps = spec.frame_components(obj)
        pieces = []
        for key in sorted(comps):
            dirs = " ^ ".join(f"e{i + 1}" for i in key)
            body, negated = _poly_body(comps[key])
            pieces.append((negated, dirs if body == "1" else f"{body} * {dirs}"))
        if not pieces:
            text = "0"
        else:
            first_neg, first = pieces[0]
            text = ("-" if first_neg else "") + first
            for neg, body in pieces[1:]:
                text += (" - " if neg else " + ") + body
        return f"bisection {name} on {session.carrier_of[name]} = {text}"
    raise SessionError(f"cannot render a {kind}")


# -- sessions -------------------------------------------------------------------

@dataclass
class Session:
    bindings: dict = field(default_factory=dict)
    kinds: dict = field(default_factory=dict)
    carrier_of: dict = field(default_factory=dict)
    log: list = field(default_factory=list)
    seed: int = 0
    count: int = 100

    def define(self, name, kind, obj, carrier=None):
        if name in self.bindings:
            raise SessionError(f"name {name!r} is already bound")
        self.bindings[name] = obj
        self.kinds[name] = kind
        if carrier is not None:
            self.carrier_of[name] = carrier

    def get(self, name, kinds=None):
        if name not in self.bindings:
            raise SessionError(f"unknown name {name!r}")
        if kinds and self.kinds[name] not in kinds:
            raise SessionError(
                f"{name!r} is a {self.kinds[name]}, expected {' or '.join(kinds)}")
        return self.bindings[name]

    def chart_named(self, name) -> Chart:
        return self.get(name, kinds=("chart",))

    def algebroid_of(self, name) -> AlgebroidSpec:
        obj = self.get(name, kinds=("algebroid", "cocycle"))
        return obj.algebroid if isinstance(obj, JacobiAlgebroidSpec) else obj


def execute(session: Session, stmt: Statement) -> list:
    """Run one statement; returns a list of ('text', str) / ('report', Report)."""
    from .calculus import lie_bracket, schouten_nijenhuis

    kind, args = stmt.kind, stmt.args
    session.log.append(stmt)
    if kind == "chart":
        name, names = args
        session.define(name, "chart", make_chart(list(names)))
        return []
    if kind in ("bivector", "vector", "tensor"):
        name, carrier, expr = args
        ch = session.chart_named(carrier)
        degree = {"bivector": 2, "vector": 1, "tensor": 2}[kind]
        obj = eval_mv(expr, ch, degree)
        session.define(name, kind, obj, carrier)
        return []
    if kind == "jacobi":
        name, carrier, lam_e, gam_e = args
        ch = session.chart_named(carrier)
        lam = eval_mv(lam_e, ch, 2)
        gam = eval_mv(gam_e, ch, 1)
        session.define(name, "jacobi", FirstOrderBiDiffOp.from_pair(lam, gam), carrier)
        return []
    if kind == "algebroid":
        name, carrier, rank, entries = args
        ch = session.chart_named(carrier)
        c, d = {}, {}
        for which, key, expr in entries:
            value = eval_poly(expr, ch)
            if which == "c":
                i, j, k = key
                _check_frame_index(rank, i, j, k)
                c[(i - 1, j - 1, k - 1)] = value
            else:
                i, a = key
                _check_frame_index(rank, i)
                ch.index(a)
                d[(i - 1, a)] = value
        session.define(name, "algebroid", AlgebroidSpec(ch, rank, c=c, d=d), carrier)
        return []
    if kind == "cocycle":
        name, carrier, comps = args
        spec = session.get(carrier, kinds=("algebroid",))
        if len(comps) != spec.rank:
            raise SessionError(f"cocycle needs {spec.rank} components")
        phi = {i: eval_poly(e, spec.base) for i, e in enumerate(comps)}
        session.define(name, "cocycle", JacobiAlgebroidSpec(spec, phi), carrier)
        return []
    if kind == "bisection":
        name, carrier, expr = args
        spec = session.algebroid_of(carrier)
        frame_names = {f"e{i + 1}": spec.fiber_names[i] for i in range(spec.rank)}
        obj = eval_mv(expr, spec.total, 2, frame_names=frame_names)
        session.define(name, "bisection", obj, carrier)
        return []
    if kind == "check":
        return _run_check(session, *args)
    if kind == "lift":
        which, names = args
        return _run_lift(session, which, names)
    if kind == "bracket":
        which, a, b = args
        wanted = ("vector",) if which == "lie" else ("bivector", "vector")
        x = session.get(a, kinds=wanted)
        y = session.get(b, kinds=wanted)
        out = lie_bracket(x, y) if which == "lie" else schouten_nijenhuis(x, y)
        return [("text", f"bracket {which} {a} {b} = {render_tensor(out, sep=' ^ ')}")]
    raise SessionError(f"unknown statement {kind!r}")


def _check_frame_index(rank, *idxs):
    for i in idxs:
        if not 1 <= i <= rank:
            raise SessionError(f"frame index {i} out of range 1..{rank}")


def _run_check(session: Session, suite: str, names: tuple) -> list:
    import random

    from . import verify
    from .calculus import schouten_nijenhuis

    def need(n):
        if len(names) < n:
            raise SessionError(f"check {suite} needs {n} name(s)")

    if suite == "axioms":
        ch = session.chart_named(names[0]) if names else make_chart("x y z")
        rep = verify.sn_axiom_battery(ch, random.Random(session.seed), count=session.count)
        rep.target = names[0] if names else "(x, y, z)"
        return [("report", rep)]
    need(1)
    first = names[0]
    if suite == "poisson":
        lam = session.get(first, kinds=("bivector",))
        rep = Report("poisson", first)
        rep.add_residual("[[L,L]]", schouten_nijenhuis(lam, lam))
        return [("report", rep)]
    if suite == "jacobi":
        j = session.get(first, kinds=("jacobi",))
        rep = Report("jacobi", first)
        rep.add("bracket-identities", verify.is_jacobi(j))
        return [("report", rep)]
    if suite == "validate":
        obj = session.get(first, kinds=("algebroid", "cocycle"))
        rep = obj.validate()
        rep.target = first
        return [("report", rep)]
    if suite == "thm6":
        lam = session.get(first, kinds=("bivector", "tensor"))
        return [("report", verify.theorem6_suite(lam, target=first))]
    if suite == "thm7":
        need(2)
        spec = session.get(first, kinds=("algebroid",))
        p = session.get(names[1], kinds=("bisection",))
        return [("report", verify.theorem7_suite(spec, p, target=" ".join(names[:2])))]
    if suite == "thm8":
        j = session.get(first, kinds=("jacobi",))
        j1 = session.get(names[1], kinds=("jacobi",)) if len(names) > 1 else None
        return [("report", verify.theorem8_suite(j, j1, target=first))]
    if suite == "thm10":
        need(2)
        jspec = session.get(first, kinds=("cocycle",))
        p = session.get(names[1], kinds=("bisection",))
        return [("report", verify.theorem10_suite(jspec, p, target=" ".join(names[:2])))]
    if suite == "lemma1":
        j = session.get(first, kinds=("jacobi",))
        return [("report", verify.lemma1_suite(j, target=first))]
    if suite == "lemma2":
        need(2)
        jspec = session.get(first, kinds=("cocycle",))
        p = session.get(names[1], kinds=("bisection",))
        return [("report", verify.lemma2_suite(jspec, p, target=" ".join(names[:2])))]
    raise SessionError(f"unknown suite {suite!r}")


def _run_lift(session: Session, which: str, names: tuple) -> list:
    from .lifts import (algebroid_complete_lift, complete_lift_tangent,
                        jacobi_lift_pair, poisson_lift, poissonization_skew)
    from .geometry import vertical_lift
    from .chart import prolong

    first = names[0]
    if which == "tangent":
        x = session.get(first, kinds=("bivector", "vector", "tensor"))
        out = complete_lift_tangent(x)
        sep = " @ " if isinstance(out, TensorField) else " ^ "
        return [("text", f"lift tangent {first} = {render_tensor(out, sep=sep)}")]
    if which == "vertical":
        x = session.get(first, kinds=("bivector", "vector", "tensor"))
        out = vertical_lift(x, prolong(x.chart, "tangent"))
        sep = " @ " if isinstance(out, TensorField) else " ^ "
        return [("text", f"lift vertical {first} = {render_tensor(out, sep=sep)}")]
    if which == "jacobi":
        j = session.get(first, kinds=("jacobi",))
        b, v = jacobi_lift_pair(j)
        return [("text", f"lift jacobi {first} = ({render_tensor(b, sep=' ^ ')}, "
                         f"{render_tensor(v, sep=' ^ ')})")]
    if which == "poisson":
        j = session.get(first, kinds=("jacobi",))
        out = antisymmetrize(poisson_lift(j))
        return [("text", f"lift poisson {first} = {render_tensor(out, sep=' ^ ')}")]
    if which == "poissonization":
        j = session.get(first, kinds=("jacobi",))
        out = poissonization_skew(j)
        return [("text", f"lift poissonization {first} = {render_tensor(out, sep=' ^ ')}")]
    if which == "complete":
        if len(names) < 2:
            raise SessionError("lift complete needs an algebroid and a bisection")
        spec = session.algebroid_of(first)
        p = session.get(names[1], kinds=("bisection",))
        out = algebroid_complete_lift(spec, p)
        return [("text", f"lift complete {first} {names[1]} = {render_tensor(out, sep=' ^ ')}")]
    raise SessionError(f"unknown lift {which!r}")


def run_script(text: str, session: Session | None = None) -> tuple[Session, list]:
    """Parse and execute a script; returns the session and the output items."""
    session = session or Session()
    statements = Parser(text).parse_script()
    outputs = []
    for stmt in statements:
        outputs.extend(execute(session, stmt))
    return session, outputs
