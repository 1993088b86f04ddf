"""Expression language, canonical serialization, and the query engine.

Grammar (whitespace-insensitive, integers signed):

    expr    := term ('+' term)*
    term    := factor ('*' factor)*
    factor  := '0' | '1' ['(' int ')'] | 'E' '(' int ',' int ')'
             | 'M' '(' ('R'|'C') ')'
             | 'fund0' | 'T' | 'conebeta' | 'conerho' | 'coneomega'
             | 'fundl' '(' int ')' | 'Lpure' '(' int ')'
             | 'twist' '(' expr ',' int ')' | 'shift' '(' expr ',' int ')'
             | 'dual' '(' expr ')' | 'cone' '(' mapname ')'
             | '(' expr ')'
    mapname := 'beta' | 'rho' | 'eta' | 'eps'

'*' binds tighter than '+'.  Sums are direct sums, '*' is the tensor.

Serialized values carry the versioned schema field "ttfilt-io 1" and use
one line per field; subspace and matrix rows are 0/1 strings, '|'-joined,
with '-' for an empty list of rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf2 import BitMatrix, C2Module, Subspace
from .filtmod import (
    FiltModule,
    FormalSum,
    IndecLabel,
    decompose,
    e_label,
    unit_label,
)
from .chains import (
    C2,
    F2,
    FILT,
    Complex,
    build_complex,
    cone_beta,
    cone_omega,
    cone_rho,
    direct_sum_complex,
    dual_complex,
    fund0,
    fund_seq,
    koszul_T,
    lpure,
    minimize,
    realize,
    shift,
    signature,
    single,
    tensor_complex,
    twist_complex,
)
from .motives import MotiveExpr, to_filtered


class ParseError(Exception):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class SchemaError(Exception):
    """Serialized value violates the documented schema."""


class UsageError(Exception):
    """Bad command or arguments."""


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Expr:
    op: str                 # atom | sum | tensor | twist | shift | dual | cone
    name: str = ""          # atom/cone identifier
    params: tuple = ()      # integer parameters
    args: tuple = ()        # child expressions

    def text(self) -> str:
        return print_expr(self)


_CONSTANTS = ("fund0", "T", "conebeta", "conerho", "coneomega")
_MAPNAMES = ("beta", "rho", "eta", "eps")


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected '{ch}'")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.src[start:self.pos].lstrip("+-"):
            self.error("expected an integer")
        return int(self.src[start:self.pos])

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and (self.src[self.pos].isalnum() or self.src[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            self.error("expected an identifier")
        return self.src[start:self.pos]

    def parse(self) -> Expr:
        e = self.expr()
        self.skip_ws()
        if self.pos != len(self.src):
            self.error("trailing input")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek() == "+":
            self.pos += 1
            e = Expr("sum", args=(e, self.term()))
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek() == "*":
            self.pos += 1
            e = Expr("tensor", args=(e, self.factor()))
        return e

    def factor(self) -> Expr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if ch.isdigit() or ch.isalpha():
            name = self.ident()
            if name == "0":
                return Expr("atom", "0")
            if name == "1":
                if self.peek() == "(":
                    self.pos += 1
                    n = self.integer()
                    self.expect(")")
                    return Expr("atom", "1", (n,))
                return Expr("atom", "1", (0,))
            if name == "E":
                self.expect("(")
                l = self.integer()
                self.expect(",")
                m = self.integer()
                self.expect(")")
                return Expr("atom", "E", (l, m))
            if name == "M":
                self.expect("(")
                gen = self.ident()
                self.expect(")")
                if gen not in ("R", "C"):
                    self.error("expected R or C")
                return Expr("atom", "M", (), (Expr("atom", gen),))
            if name in _CONSTANTS:
                return Expr("atom", name)
            if name in ("fundl", "Lpure"):
                self.expect("(")
                n = self.integer()
                self.expect(")")
                return Expr("atom", name, (n,))
            if name in ("twist", "shift"):
                self.expect("(")
                e = self.expr()
                self.expect(",")
                n = self.integer()
                self.expect(")")
                return Expr(name, params=(n,), args=(e,))
            if name == "dual":
                self.expect("(")
                e = self.expr()
                self.expect(")")
                return Expr("dual", args=(e,))
            if name == "cone":
                self.expect("(")
                m = self.ident()
                self.expect(")")
                if m not in _MAPNAMES:
                    self.error(f"unknown map name '{m}'")
                return Expr("cone", m)
            self.error(f"unknown identifier '{name}'")
        self.error("expected an expression")


def parse(text: str) -> Expr:
    return _Parser(text).parse()


def print_expr(e: Expr) -> str:
    if e.op == "atom":
        if e.name == "0":
            return "0"
        if e.name == "1":
            return f"1({e.params[0]})"
        if e.name == "E":
            return f"E({e.params[0]},{e.params[1]})"
        if e.name == "M":
            return f"M({e.args[0].name})"
        if e.params:
            return f"{e.name}({e.params[0]})"
        return e.name
    if e.op == "sum":
        return f"{print_expr(e.args[0])} + {print_expr(e.args[1])}"
    if e.op == "tensor":
        parts = []
        for a in e.args:
            t = print_expr(a)
            parts.append(f"({t})" if a.op == "sum" else t)
        return " * ".join(parts)
    if e.op in ("twist", "shift"):
        return f"{e.op}({print_expr(e.args[0])}, {e.params[0]})"
    if e.op == "dual":
        return f"dual({print_expr(e.args[0])})"
    if e.op == "cone":
        return f"cone({e.name})"
    raise ValueError(f"bad expression node {e.op}")


def evaluate(e: Expr) -> Complex:
    """Evaluate an expression to a filtered complex."""
    if e.op == "atom":
        if e.name == "0":
            return Complex(FILT, 0, (), ())
        if e.name == "1":
            return single(FILT, realize(unit_label(e.params[0])))
        if e.name == "E":
            return single(FILT, realize(e_label(e.params[0], e.params[1])))
        if e.name == "M":
            gen = MotiveExpr.base() if e.args[0].name == "R" else MotiveExpr.extension()
            return to_filtered(gen)
        if e.name == "fund0":
            return fund0()
        if e.name == "T":
            return koszul_T()
        if e.name == "conebeta":
            return cone_beta()
        if e.name == "conerho":
            return cone_rho()
        if e.name == "coneomega":
            return cone_omega()
        if e.name == "fundl":
            return fund_seq(e.params[0])
        if e.name == "Lpure":
            return lpure(e.params[0])
        raise UsageError(f"unknown atom {e.name}")
    if e.op == "sum":
        return direct_sum_complex(evaluate(e.args[0]), evaluate(e.args[1]))
    if e.op == "tensor":
        return tensor_complex(evaluate(e.args[0]), evaluate(e.args[1]))
    if e.op == "twist":
        return twist_complex(evaluate(e.args[0]), e.params[0])
    if e.op == "shift":
        return shift(evaluate(e.args[0]), e.params[0])
    if e.op == "dual":
        return dual_complex(evaluate(e.args[0]))
    if e.op == "cone":
        return to_filtered(MotiveExpr.cone_of(e.name))
    raise UsageError(f"bad expression node {e.op}")


# ---------------------------------------------------------------------------
# Canonical text rendering of engine values
# ---------------------------------------------------------------------------


def complex_text(x: Complex) -> str:
    """Render like: complex{ d2: 1(0), d1: E(0,0), d0: 1(0); maps: d2=[1|1], d1=[11] }."""
    if x.is_zero():
        return "complex{ 0 }"
    parts = []
    for n in range(x.d_max, x.d_min - 1, -1):
        parts.append(f"d{n}: {term_text(x.kind, x.term(n))}")
    maps = []
    for n in range(x.d_max, x.d_min, -1):
        maps.append(f"d{n}=[{_mat_text(x.diff(n))}]")
    body = ", ".join(parts)
    if maps:
        body += "; maps: " + ", ".join(maps)
    return "complex{ " + body + " }"


def term_text(kind: str, t) -> str:
    if kind == F2:
        return f"k^{t}"
    if kind == C2:
        a, b = t.module_split()
        parts = []
        if a:
            parts.append(f"k^{a}" if a > 1 else "k")
        if b:
            parts.append(f"kC2^{b}" if b > 1 else "kC2")
        return " + ".join(parts) if parts else "0"
    return decompose(t).sum.text()


def _mat_text(m: BitMatrix) -> str:
    if m.rows == 0:
        return "-"
    return "|".join("".join(str(m.entry(i, j)) for j in range(m.cols)) for i in range(m.rows))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

SCHEMA = "ttfilt-io 1"


def _rows_text(rows: tuple[int, ...], width: int) -> str:
    if not rows:
        return "-"
    return "|".join("".join(str((r >> j) & 1) for j in range(width)) for r in rows)


def _rows_parse(text: str, width: int) -> list[int]:
    if text == "-":
        return []
    out = []
    for chunk in text.split("|"):
        if len(chunk) != width or any(c not in "01" for c in chunk):
            raise SchemaError(f"bad row '{chunk}' for width {width}")
        out.append(sum((c == "1") << j for j, c in enumerate(chunk)))
    return out


def _filtmodule_lines(a: FiltModule) -> list[str]:
    lines = [f"dim {a.dim}", f"sigma {_rows_text(a.module.sigma.data, a.dim)}",
             f"wmin {a.w_min}", f"wmax {a.w_max}"]
    for lay in a.layers:
        lines.append(f"layer {_rows_text(lay.basis.data, a.dim)}")
    return lines


class _LineReader:
    def __init__(self, lines: list[str]):
        self.lines = lines
        self.idx = 0

    def next(self) -> str:
        while self.idx < len(self.lines) and not self.lines[self.idx].strip():
            self.idx += 1
        if self.idx >= len(self.lines):
            raise SchemaError("unexpected end of input")
        line = self.lines[self.idx].strip()
        self.idx += 1
        return line

    def peek(self) -> str:
        save = self.idx
        try:
            line = self.next()
        except SchemaError:
            return ""
        self.idx = save
        return line

    def field(self, key: str) -> str:
        line = self.next()
        if not line.startswith(key + " "):
            raise SchemaError(f"expected field '{key}', got '{line}'")
        return line[len(key) + 1:]


def _filtmodule_read(r: _LineReader) -> FiltModule:
    dim = int(r.field("dim"))
    sigma_rows = _rows_parse(r.field("sigma"), dim)
    if len(sigma_rows) != dim:
        raise SchemaError("sigma must be square")
    try:
        mod = C2Module(dim, BitMatrix(dim, dim, tuple(sigma_rows)))
    except ValueError as exc:
        raise SchemaError(str(exc))
    w_min = int(r.field("wmin"))
    w_max = int(r.field("wmax"))
    layers = []
    for _ in range(w_max - w_min + 2):
        layers.append(Subspace.span(dim, _rows_parse(r.field("layer"), dim)))
    if dim == 0:
        return FiltModule.zero()
    try:
        return FiltModule(mod, w_min, w_max, tuple(layers))
    except ValueError as exc:
        raise SchemaError(str(exc))


def serialize(value) -> str:
    """Canonical structured-text encoding of engine values."""
    lines = [SCHEMA]
    if isinstance(value, FiltModule):
        lines.append("type filtmodule")
        lines.extend(_filtmodule_lines(value))
    elif isinstance(value, FormalSum):
        lines.append("type formalsum")
        lines.append("labels " + ("|".join(l.text() for l in value.labels) if value.labels else "-"))
    elif isinstance(value, frozenset) or isinstance(value, set):
        lines.append("type support")
        pts = sorted(value)
        lines.append("points " + ("|".join(pts) if pts else "-"))
    elif isinstance(value, Complex):
        lines.append("type complex")
        lines.append(f"kind {value.kind}")
        lines.append(f"dmin {value.d_min}")
        lines.append(f"nterms {len(value.terms)}")
        for i, t in enumerate(value.terms):
            lines.append(f"begin term {value.d_min + i}")
            if value.kind == F2:
                lines.append(f"dim {t}")
            elif value.kind == C2:
                lines.append(f"dim {t.dim}")
                lines.append(f"sigma {_rows_text(t.sigma.data, t.dim)}")
            else:
                lines.extend(_filtmodule_lines(t))
            lines.append("end term")
        for i, d in enumerate(value.diffs):
            lines.append(f"begin diff {value.d_min + i + 1}")
            lines.append(f"rows {d.rows}")
            lines.append(f"cols {d.cols}")
            lines.append(f"mat {_rows_text(d.data, d.cols)}")
            lines.append("end diff")
    else:
        raise SchemaError(f"cannot serialize {type(value).__name__}")
    return "\n".join(lines) + "\n"


def _label_parse(text: str) -> IndecLabel:
    try:
        if text.startswith("1(") and text.endswith(")"):
            return unit_label(int(text[2:-1]))
        if text.startswith("E(") and text.endswith(")"):
            l, m = text[2:-1].split(",")
            return e_label(int(l), int(m))
    except ValueError:
        pass
    raise SchemaError(f"bad label '{text}'")


def deserialize(text: str):
    r = _LineReader(text.splitlines())
    if r.next() != SCHEMA:
        raise SchemaError("missing or unsupported schema header")
    kind = r.field("type")
    if kind == "filtmodule":
        return _filtmodule_read(r)
    if kind == "formalsum":
        labs = r.field("labels")
        if labs == "-":
            return FormalSum(())
        return FormalSum.from_iter(_label_parse(t) for t in labs.split("|"))
    if kind == "support":
        pts = r.field("points")
        if pts == "-":
            return frozenset()
        valid = {"L", "Ls", "M", "Ms", "N", "Ns"}
        out = frozenset(pts.split("|"))
        if not out <= valid:
            raise SchemaError("unknown prime in support set")
        return out
    if kind == "complex":
        cell = r.field("kind")
        if cell not in (FILT, C2, F2):
            raise SchemaError(f"unknown cell kind '{cell}'")
        d_min = int(r.field("dmin"))
        nterms = int(r.field("nterms"))
        terms = {}
        diffs = {}
        for _ in range(nterms):
            head = r.next()
            if not head.startswith("begin term "):
                raise SchemaError("expected a term block")
            deg = int(head.split()[2])
            if cell == F2:
                terms[deg] = int(r.field("dim"))
            elif cell == C2:
                dim = int(r.field("dim"))
                rows = _rows_parse(r.field("sigma"), dim)
                try:
                    terms[deg] = C2Module(dim, BitMatrix(dim, dim, tuple(rows)))
                except ValueError as exc:
                    raise SchemaError(str(exc))
            else:
                terms[deg] = _filtmodule_read(r)
            if r.next() != "end term":
                raise SchemaError("unterminated term block")
        while r.peek().startswith("begin diff "):
            head = r.next()
            deg = int(head.split()[2])
            rows = int(r.field("rows"))
            cols = int(r.field("cols"))
            data = _rows_parse(r.field("mat"), cols)
            if len(data) != rows:
                raise SchemaError("matrix row count mismatch")
            diffs[deg] = BitMatrix(rows, cols, tuple(data))
            if r.next() != "end diff":
                raise SchemaError("unterminated diff block")
        try:
            return build_complex(cell, terms, diffs)
        except ValueError as exc:
            raise SchemaError(str(exc))
    raise SchemaError(f"unknown type '{kind}'")


# ---------------------------------------------------------------------------
# Reports and the command engine
# ---------------------------------------------------------------------------


@dataclass
class Report:
    command: str
    query: str
    result: list[str] = field(default_factory=list)
    trace: list[str] = field(default_factory=list)
    ok: bool = True

    def render(self, fmt: str = "text", with_trace: bool = False) -> str:
        if fmt == "json-like":
            lines = ["schema ttfilt-report/1", f"command {self.command}", f"query {self.query}"]
            lines += [f"result {r}" for r in self.result]
            if with_trace:
                lines += [f"trace {t}" for t in self.trace]
            lines.append(f"ok {str(self.ok).lower()}")
            return "\n".join(lines)
        lines = list(self.result)
        if with_trace and self.trace:
            lines.append("trace: " + "; ".join(self.trace))
        return "\n".join(lines)


def _eval_arg(text: str) -> Complex:
    return evaluate(parse(text))


def _as_module(x: Complex) -> FiltModule:
    if x.is_zero():
        return FiltModule.zero()
    if x.d_min != x.d_max:
        raise UsageError("expected an expression concentrated in one degree")
    return x.term(x.d_min)


def _supp_report(command: str, query: str, x: Complex) -> Report:
    from .spectrum import supp_detail, support_text

    detail = supp_detail(x)
    points = frozenset(p for p, hit in detail.items() if hit)
    rep = Report(command, query, [support_text(points)])
    rep.trace = [f"{p}:{'nonzero' if hit else 'zero'}" for p, hit in sorted(detail.items())]
    return rep


def run(command: str, args: list[str]) -> Report:
    """Execute one engine query; deterministic output for fixed input."""
    from . import spectrum
    from .functors import fgt_complex, gr_complex, hom_DE, tate_dim, tfgt

    if command == "decompose":
        (text,) = _args(args, 1)
        dec = decompose(_as_module(_eval_arg(text)))
        return Report(command, text, [dec.sum.text()],
                      trace=[f"certificate validated: {dec.validate()}"])
    if command == "tensor":
        a_text, b_text = _args(args, 2)
        x = tensor_complex(_eval_arg(a_text), _eval_arg(b_text))
        query = f"{a_text} * {b_text}"
        if x.is_zero() or x.d_min == x.d_max:
            return Report(command, query, [decompose(_as_module(x)).sum.text()])
        return Report(command, query, [complex_text(minimize(x).complex)])
    if command == "dual":
        (text,) = _args(args, 1)
        x = dual_complex(_eval_arg(text))
        if x.is_zero() or x.d_min == x.d_max:
            return Report(command, text, [decompose(_as_module(x)).sum.text()])
        return Report(command, text, [complex_text(x)])
    if command == "minimize":
        (text,) = _args(args, 1)
        return Report(command, text, [complex_text(minimize(_eval_arg(text)).complex)])
    if command == "support":
        (text,) = _args(args, 1)
        return _supp_report(command, text, _eval_arg(text))
    if command == "classify":
        (text,) = _args(args, 1)
        cls = spectrum.classify(_eval_arg(text))
        return Report(command, text,
                      [f"support {cls.name}", f"ideal generated by: {cls.generator}"])
    if command == "member":
        if len(args) < 2:
            raise UsageError("member needs a candidate and at least one generator")
        x = _eval_arg(args[0])
        gens = [_eval_arg(t) for t in args[1:]]
        verdict = spectrum.ideal_contains(gens, x)
        return Report(command, " ".join(args), [str(verdict).lower()])
    if command == "hom":
        a_text, b_text = _args(args, 2)
        dims = hom_DE(_eval_arg(a_text), _eval_arg(b_text))
        lines = [f"n={n} dim={d}" for n, d in sorted(dims.items())] or ["zero in all shifts"]
        return Report(command, f"{a_text} -> {b_text}", lines)
    if command == "gr":
        (text,) = _args(args, 1)
        return Report(command, text, [complex_text(gr_complex(_eval_arg(text)))])
    if command == "fgt":
        (text,) = _args(args, 1)
        return Report(command, text, [complex_text(fgt_complex(_eval_arg(text)))])
    if command == "tfgt":
        (text,) = _args(args, 1)
        return Report(command, text, [complex_text(tfgt(_eval_arg(text)))])
    if command == "tate":
        (text,) = _args(args, 1)
        return Report(command, text, [str(tate_dim(fgt_complex(_eval_arg(text))))])
    if command == "atlas":
        return _atlas_report(args)
    if command == "verify":
        return run_verify()
    raise UsageError(f"unknown command '{command}'")


def _args(args: list[str], n: int) -> list[str]:
    if len(args) != n:
        raise UsageError(f"expected {n} argument(s), got {len(args)}")
    return args


def _atlas_report(args: list[str]) -> Report:
    from . import spectrum

    if not args:
        raise UsageError("atlas needs a name")
    name, rest = args[0], args[1:]
    atl = spectrum.atlas(name)
    if not rest or rest[0] == "--points":
        if name == "DATMZ":
            pts = list(atl.mod2_points) + ["e(l), m(l) for every prime l", "P0"]
        else:
            pts = list(atl.points)
        return Report("atlas", name, [", ".join(pts)])
    if rest[0] == "--closed-count":
        if name == "DATMZ":
            raise UsageError("the integral atlas has infinitely many closed subsets")
        return Report("atlas", name, [str(len(atl.closed_subsets()))])
    if rest[0] == "--closed-subsets":
        if name == "DATMZ":
            raise UsageError("the integral atlas has infinitely many closed subsets")
        from .spectrum import support_text

        lines = [support_text(s, atl.points) for s in atl.closed_subsets()]
        return Report("atlas", name, lines)
    if rest[0] == "--closure":
        if len(rest) != 2:
            raise UsageError("--closure needs a point")
        if name == "DATMZ":
            return Report("atlas", f"{name} closure {rest[1]}", [atl.closure_of(rest[1]).text()])
        from .spectrum import support_text

        return Report("atlas", f"{name} closure {rest[1]}",
                      [support_text(atl.closure_of(rest[1]), atl.points)])
    if rest[0] == "--compare":
        if len(rest) != 3:
            raise UsageError("--compare needs a map name and a point")
        return Report("atlas", f"{rest[1]} {rest[2]}", [spectrum.compare(rest[1], rest[2])])
    raise UsageError(f"unknown atlas option {rest[0]}")


# ---------------------------------------------------------------------------
# The verify suite: canonical engine facts, keyed by stable slugs
# ---------------------------------------------------------------------------


def _verify_checks() -> list[tuple[str, bool, str]]:
    from . import spectrum
    from .chains import ChainMap, invertpur_pow, is_nullhomotopic, tensor_map
    from .functors import homology, tfgt
    from .motives import motivic_cohomology

    checks: list[tuple[str, bool, str]] = []

    def add(slug: str, got, expected):
        checks.append((slug, got == expected, f"got {got}, expected {expected}"))

    sup = lambda t: spectrum.support_text(spectrum.supp(_eval_arg(t)))
    add("support/E0", sup("E(0,0)"), "{N, Ns}")
    add("support/E1", sup("E(1,0)"), "{Ls, Ms, N, Ns}")
    add("support/E2", sup("E(2,0)"), "{L, Ls, Ms, N, Ns}")
    add("support/E3", sup("E(3,0)"), "{L, Ls, Ms, N, Ns}")
    add("support/E4", sup("E(4,0)"), "{L, Ls, Ms, N, Ns}")
    add("support/conebeta", sup("cone(beta)"), "{L, Ls, Ms, Ns}")
    add("support/fund0", sup("fund0"), "{L, Ls}")
    add("support/T", sup("T"), "{Ls, Ms, Ns}")
    add("support/conebeta-x-E0", sup("cone(beta) * E(0,0)"), "{Ns}")
    add("support/fund0-x-E1", sup("fund0 * E(1,0)"), "{Ls}")
    add("support/unit", sup("1(0)"), "{L, Ls, M, Ms, N, Ns}")

    add("classes/count",
        len({frozenset(spectrum.supp(_eval_arg(g))) for g in spectrum.CLASS_GENERATORS.values()}),
        14)

    add("tensor/E1-x-E2", run("tensor", ["E(1,0)", "E(2,0)"]).result[0], "E(1,0) + E(1,2)")
    add("tensor/galois", run("tensor", ["E(0,0)", "E(0,0)"]).result[0], "E(0,0) + E(0,0)")
    add("dual/E3", run("dual", ["E(3,1)"]).result[0], "E(3,-4)")

    for n in (1, 2):
        m = minimize(tensor_complex(invertpur_pow(n), invertpur_pow(-n))).complex
        add(f"invertible/n{n}", (m.d_min, m.d_max, m.term(0).module_split()), (0, 0, (1, 0)))

    table_ok = all(motivic_cohomology(n, m) == (1 if 0 <= n <= m else 0)
                   for n in range(-1, 5) for m in range(-1, 5))
    checks.append(("cohomology/table", table_ok, "bigraded dimension window"))

    add("atlas/DATM2-closed", len(spectrum.atlas("DATM2").closed_subsets()), 14)
    add("atlas/DTM2-closed", len(spectrum.atlas("DTM2").closed_subsets()), 6)
    add("atlas/DAM2-closed", len(spectrum.atlas("DAM2").closed_subsets()), 5)

    gen_checks = spectrum.verify_prime_generators()
    checks.append(("primes/generators", all(c.ok for c in gen_checks),
                   f"{sum(c.ok for c in gen_checks)}/{len(gen_checks)} generator sets"))

    for n in (-2, 2):
        add(f"tfgt/unit-twist{n}", tfgt(_eval_arg(f"1({n})")) == invertpur_pow(-n), True)
    add("tfgt/conebeta", signature(tfgt(cone_beta())) == signature(shift(_fundpur(), -1)), True)
    add("tfgt/fgt-homology", homology(tfgt(fund0())) == homology(_fgt(fund0())), True)

    # nilpotence of the counit collapse on the basic acyclic complex
    eps1 = _eps_power(3)
    f = tensor_map(eps1, ChainMap.identity(_fundpur()))
    checks.append(("nilpotence/fundpur", is_nullhomotopic(f) is not None, "power 3 kills"))

    rt = "E(2,0) * dual(twist(fund0, 1)) + shift(T, 2)"
    add("parser/roundtrip", print_expr(parse(print_expr(parse(rt)))), print_expr(parse(rt)))

    sample = serialize(evaluate(parse("fund0")))
    add("io/roundtrip", serialize(deserialize(sample)), sample)

    return checks


def _fundpur():
    from .chains import fundpur

    return fundpur()


def _fgt(x):
    from .functors import fgt_complex

    return fgt_complex(x)


def _eps_power(l: int):
    """The l-fold tensor power of the counit collapse, source pre-minimized."""
    from .chains import ChainMap, eps_tilde, minimize as mini, tensor_map

    f = eps_tilde()
    for _ in range(l - 1):
        f = tensor_map(f, eps_tilde())
    mf = mini(f.source)
    # absorb the unit-complex target into a single degree-zero line
    tgt = mini(f.target)
    return ChainMap.of(mf.complex, tgt.complex,
                       {n: tgt.proj.comp(n).mul(f.comp(n)).mul(mf.incl.comp(n))
                        for n in mf.complex.degrees()}, check=False)


def run_verify() -> Report:
    checks = _verify_checks()
    lines = []
    ok_all = True
    for slug, ok, detail in checks:
        lines.append(f"{'PASS' if ok else 'FAIL'}  {slug}" + ("" if ok else f"  [{detail}]"))
        ok_all = ok_all and ok
    lines.append(f"{sum(1 for _, ok, _ in checks if ok)}/{len(checks)} checks passed")
    rep = Report("verify", "engine fact table", lines)
    rep.ok = ok_all
    return rep
