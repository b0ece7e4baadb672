"""A small line-oriented language for hybrid circuits (``.hqc`` files).

Example::

    # SUM on a qutrit control and a qubit target
    register c:3 t:2
    state basis 1 0
    gate SUM c t
    measure entropy c | t

Statements are newline terminated and tokens are whitespace separated (``:`` and
``|`` also split tokens). ``#`` starts a comment. Site names map to indices in
declaration order.

Named initial states (all other sites start in |0>):

* ``state gamma`` -- uniform superposition on the first site.
* ``state alpha A`` -- (1/sqrt d) sum_m |m>|m> on the first site and ``A``.
* ``state beta A B`` -- the ``alpha`` pair on the first two sites together with
  the same kind of pair on ``A`` and ``B``.
"""

import re
from dataclasses import dataclass, field

import numpy as np

from . import gates
from .entanglement import max_entangled, operator_entanglement_cut, state_entropy, uniform_state
from .errors import HybridQuditError
from .pauli import conjugate, pauli_membership
from .physical import controlled_phase
from .register import HybridRegister, StateVector, apply, embed

GATE_ARITY = {
    "X": 1,
    "Z": 1,
    "F": 1,
    "SUM": 2,
    "SUMP": 2,
    "PSWAP": 2,
    "SWAP3": 2,
    "TOFFOLI": 3,
    "FREDKIN": 3,
    "CPHASE": 2,
}
# gates taking an optional trailing cutoff d_P after their site dims
GATE_OPTIONAL_EXTRA = {"PSWAP", "FREDKIN"}
KEYWORDS = ("register", "state", "gate", "measure")


class ProgramError(HybridQuditError):
    """An error tied to a position in the source (1-based line and column)."""

    kind = "error"

    def __init__(self, message, line, column, token=""):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.token = token

    def render(self, filename="<source>"):
        tok = f" (at {self.token!r})" if self.token else ""
        return f"{filename}:{self.line}:{self.column}: {self.kind}: {self.message}{tok}"

    def __str__(self):
        return self.render()


class ParseError(ProgramError):
    kind = "parse error"


class ProgramValidationError(ProgramError):
    kind = "validation error"


def build_gate(gate_id, dims, extra=()):
    """Gate-library constructor for ``gate_id`` on the given site dims."""
    dims = tuple(int(d) for d in dims)
    if gate_id not in GATE_ARITY:
        raise KeyError(f"unknown gate id {gate_id!r}")
    if len(dims) != GATE_ARITY[gate_id]:
        raise ValueError(f"{gate_id} acts on {GATE_ARITY[gate_id]} sites, got dims {dims}")
    if extra and gate_id not in GATE_OPTIONAL_EXTRA:
        raise ValueError(f"{gate_id} takes no extra parameters")
    if gate_id == "X":
        return gates.pauli_x(*dims)
    if gate_id == "Z":
        return gates.pauli_z(*dims)
    if gate_id == "F":
        return gates.fourier(*dims)
    if gate_id == "SUM":
        return gates.sum_gate(*dims)
    if gate_id == "SUMP":
        return gates.sum_prime(*dims)
    if gate_id == "PSWAP":
        return gates.partial_swap(*dims, *extra)
    if gate_id == "SWAP3":
        return gates.swap_via_sums(*dims)
    if gate_id == "TOFFOLI":
        return gates.toffoli(*dims)
    if gate_id == "FREDKIN":
        return gates.fredkin(*dims, *extra)
    return controlled_phase(*dims)


# ---- program model ------------------------------------------------------------------


@dataclass(frozen=True)
class StateDirective:
    kind: str  # basis | gamma | alpha | beta
    digits: tuple = ()
    sites: tuple = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class GateStep:
    gate_id: str
    sites: tuple
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Analysis:
    kind: str  # entropy | opent | pauli
    cut: tuple = ()
    gate_id: str = ""
    sites: tuple = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CircuitProgram:
    register: HybridRegister
    site_names: tuple
    initial: StateDirective
    steps: tuple
    analyses: tuple


# ---- lexer --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<INT>[0-9]+)|(?P<NAME>[A-Za-z_][A-Za-z0-9_]*)|(?P<COLON>:)|(?P<PIPE>\|)"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize_line(text, lineno):
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "#":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                "unexpected character; expected NAME, INT, ':', '|' or '#'", lineno, pos + 1, ch
            )
        tokens.append(Token(m.lastgroup, m.group(), lineno, pos + 1))
        pos = m.end()
    return tokens


# ---- parser -------------------------------------------------------------------------


class _LineParser:
    def __init__(self, tokens, lineno, line_length):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        # end-of-line errors point just past the last token, clamped inside the line
        last = tokens[-1]
        self.eol_column = min(last.column + len(last.text), line_length)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, message, tok=None):
        tok = tok if tok is not None else self.peek()
        if tok is None:
            return ParseError(message + ", found end of line", self.lineno, self.eol_column)
        return ParseError(message, tok.line, tok.column, tok.text)

    def expect(self, kind, what):
        tok = self.peek()
        if tok is None or tok.kind != kind:
            raise self.error(f"expected {what}")
        self.i += 1
        return tok

    def expect_end(self):
        if self.peek() is not None:
            raise self.error("expected end of line")

    def at_end(self):
        return self.i >= len(self.tokens)


class Parser:
    """Recursive-descent parser producing a :class:`CircuitProgram`."""

    def __init__(self, source):
        self.source = source
        self.names = {}
        self.dims = []
        self.register_seen = False
        self.initial = None
        self.steps = []
        self.analyses = []

    def parse(self):
        lines = self.source.splitlines()
        first = None
        for lineno, text in enumerate(lines, start=1):
            tokens = tokenize_line(text, lineno)
            if not tokens:
                continue
            first = first or tokens[0]
            self.statement(_LineParser(tokens, lineno, len(text)))
        if not self.register_seen:
            line, col, text = (first.line, first.column, first.text) if first else (1, 1, "")
            raise ParseError("expected a 'register' declaration", line, col, text)
        try:
            reg = HybridRegister(tuple(self.dims))
        except HybridQuditError as exc:
            raise ProgramValidationError(str(exc), *self.register_pos) from exc
        initial = self.initial or StateDirective("basis", (0,) * reg.size)
        return CircuitProgram(
            register=reg,
            site_names=tuple(self.names),
            initial=initial,
            steps=tuple(self.steps),
            analyses=tuple(self.analyses),
        )

    def statement(self, p):
        head = p.peek()
        if head.kind != "NAME" or head.text not in KEYWORDS:
            raise p.error("expected statement keyword (register, state, gate, measure)")
        p.i += 1
        getattr(self, "stmt_" + head.text)(p, head)

    def site(self, p):
        tok = p.expect("NAME", "NAME (a declared site)")
        if tok.text not in self.names:
            raise ParseError(
                "undeclared name; expected a NAME declared by 'register'",
                tok.line,
                tok.column,
                tok.text,
            )
        return self.names[tok.text]

    def stmt_register(self, p, head):
        if self.register_seen:
            raise ParseError(
                "duplicate register declaration; expected one 'register' line",
                head.line,
                head.column,
                head.text,
            )
        while True:
            name = p.expect("NAME", "NAME (site name)")
            if name.text in self.names:
                raise ParseError(
                    "duplicate site name; expected a new NAME", name.line, name.column, name.text
                )
            p.expect("COLON", "':'")
            dim = p.expect("INT", "INT (site dimension)")
            if int(dim.text) < 2:
                raise ParseError(
                    "site dimension must be >= 2; expected INT >= 2", dim.line, dim.column, dim.text
                )
            self.names[name.text] = len(self.dims)
            self.dims.append(int(dim.text))
            if p.at_end():
                break
        self.register_seen = True
        self.register_pos = (head.line, head.column)

    def stmt_state(self, p, head):
        if self.initial is not None:
            raise ParseError(
                "duplicate state directive; expected one 'state' line",
                head.line,
                head.column,
                head.text,
            )
        kind = p.expect("NAME", "state kind (basis, gamma, alpha, beta)")
        if kind.text == "basis":
            digits = [int(p.expect("INT", "INT (basis digit)").text)]
            while not p.at_end():
                digits.append(int(p.expect("INT", "INT (basis digit)").text))
            directive = StateDirective("basis", tuple(digits), (), head.line, head.column)
        elif kind.text == "gamma":
            directive = StateDirective("gamma", (), (), head.line, head.column)
        elif kind.text == "alpha":
            directive = StateDirective("alpha", (), (self.site(p),), head.line, head.column)
        elif kind.text == "beta":
            a = self.site(p)
            b = self.site(p)
            directive = StateDirective("beta", (), (a, b), head.line, head.column)
        else:
            raise ParseError(
                "expected state kind (basis, gamma, alpha, beta)", kind.line, kind.column, kind.text
            )
        p.expect_end()
        self.initial = directive

    def gate_id(self, p):
        tok = p.expect("NAME", "gate id")
        if tok.text not in GATE_ARITY:
            raise ParseError(
                "unknown gate id; expected one of " + ", ".join(GATE_ARITY),
                tok.line,
                tok.column,
                tok.text,
            )
        return tok

    def gate_sites(self, p, gid):
        arity = GATE_ARITY[gid.text]
        sites = []
        for _ in range(arity):
            if p.at_end():
                raise p.error(f"arity mismatch: {gid.text} needs {arity} site(s); expected NAME")
            tok = p.peek()
            idx = self.site(p)
            if idx in sites:
                raise ParseError(
                    "site repeated in gate placement; expected a distinct NAME",
                    tok.line,
                    tok.column,
                    tok.text,
                )
            sites.append(idx)
        if not p.at_end():
            raise p.error(f"arity mismatch: {gid.text} takes {arity} site(s); expected end of line")
        return tuple(sites)

    def stmt_gate(self, p, head):
        gid = self.gate_id(p)
        self.steps.append(GateStep(gid.text, self.gate_sites(p, gid), head.line, head.column))

    def stmt_measure(self, p, head):
        kind = p.expect("NAME", "analysis kind (entropy, opent, pauli)")
        if kind.text == "entropy":
            left = [self.site(p)]
            while p.peek() is not None and p.peek().kind == "NAME":
                left.append(self.site(p))
            p.expect("PIPE", "'|' or NAME")
            right = [self.site(p)]
            while not p.at_end():
                right.append(self.site(p))
            if set(left) & set(right) or sorted(left + right) != list(range(len(self.dims))):
                raise ParseError(
                    "cut must split every declared site into two disjoint groups; "
                    "expected NAME+ '|' NAME+",
                    kind.line,
                    kind.column,
                    kind.text,
                )
            self.analyses.append(
                Analysis("entropy", (tuple(left), tuple(right)), "", (), head.line, head.column)
            )
        elif kind.text == "opent":
            p.expect_end()
            if len(self.dims) < 2:
                raise ParseError(
                    "operator entanglement needs at least two sites; "
                    "expected a register of 2+ NAMEs",
                    kind.line,
                    kind.column,
                    kind.text,
                )
            self.analyses.append(Analysis("opent", (), "", (), head.line, head.column))
        elif kind.text == "pauli":
            gid = self.gate_id(p)
            sites = self.gate_sites(p, gid)
            self.analyses.append(Analysis("pauli", (), gid.text, sites, head.line, head.column))
        else:
            raise ParseError(
                "expected analysis kind (entropy, opent, pauli)", kind.line, kind.column, kind.text
            )


def parse(source):
    """Parse ``source`` into a :class:`CircuitProgram` or raise :class:`ParseError`."""
    return Parser(source).parse()


def validate(program):
    """Check dimensional legality; raises :class:`ProgramValidationError`."""
    dims = program.register.dims
    st = program.initial
    if st.kind == "basis":
        if len(st.digits) != len(dims):
            raise ProgramValidationError(
                f"basis state needs {len(dims)} digits, got {len(st.digits)}", st.line, st.column
            )
        for i, (m, d) in enumerate(zip(st.digits, dims)):
            if m >= d:
                raise ProgramValidationError(
                    f"dimension mismatch: digit {m} at site {program.site_names[i]} exceeds Z_{d}",
                    st.line,
                    st.column,
                )
    pairs = []
    if st.kind == "alpha":
        pairs = [(0, st.sites[0])]
    elif st.kind == "beta":
        if len(dims) < 4:
            raise ProgramValidationError("beta needs at least four sites", st.line, st.column)
        pairs = [(0, 1), st.sites]
    used = [s for pair in pairs for s in pair]
    if len(set(used)) != len(used):
        raise ProgramValidationError("entangled pairs must use distinct sites", st.line, st.column)
    for a, b in pairs:
        if dims[a] != dims[b]:
            raise ProgramValidationError(
                f"dimension mismatch: pair ({program.site_names[a]}, {program.site_names[b]}) "
                f"has dims ({dims[a]}, {dims[b]})",
                st.line,
                st.column,
            )
    for step in list(program.steps) + [a for a in program.analyses if a.kind == "pauli"]:
        try:
            build_gate(step.gate_id, [dims[s] for s in step.sites])
        except (HybridQuditError, ValueError) as exc:
            raise ProgramValidationError(
                f"dimension mismatch: {exc}", step.line, step.column
            ) from exc
    return program


def load(source):
    return validate(parse(source))


def format_program(program):
    """Canonical source text; ``parse(format_program(p)) == p``."""
    names = program.site_names
    out = ["register " + " ".join(f"{n}:{d}" for n, d in zip(names, program.register.dims))]
    st = program.initial
    if st.kind == "basis":
        out.append("state basis " + " ".join(str(m) for m in st.digits))
    else:
        out.append(" ".join(["state", st.kind, *(names[s] for s in st.sites)]))
    for step in program.steps:
        out.append(" ".join(["gate", step.gate_id, *(names[s] for s in step.sites)]))
    for a in program.analyses:
        if a.kind == "entropy":
            left, right = a.cut
            out.append(
                "measure entropy "
                + " ".join(names[s] for s in left)
                + " | "
                + " ".join(names[s] for s in right)
            )
        elif a.kind == "opent":
            out.append("measure opent")
        else:
            out.append(" ".join(["measure", "pauli", a.gate_id, *(names[s] for s in a.sites)]))
    return "\n".join(out) + "\n"


# ---- execution ----------------------------------------------------------------------


def initial_state(program):
    reg = program.register
    dims = reg.dims
    st = program.initial
    if st.kind == "basis":
        amps = np.zeros(reg.dimension, dtype=np.complex128)
        amps[reg.index(st.digits)] = 1.0
        return StateVector(reg, amps)
    tensor = np.zeros(dims, dtype=np.complex128)
    if st.kind == "gamma":
        index = [0] * len(dims)
        for m, amp in enumerate(uniform_state(dims[0])):
            index[0] = m
            tensor[tuple(index)] = amp
        return StateVector(reg, tensor.ravel())
    pairs = [(0, st.sites[0])] if st.kind == "alpha" else [(0, 1), tuple(st.sites)]
    # product of maximally entangled pairs, remaining sites in |0>
    amps = np.ones(1, dtype=np.complex128)
    order = []
    for a, b in pairs:
        amps = np.kron(amps, max_entangled(dims[a]))
        order += [a, b]
    rest = [i for i in range(len(dims)) if i not in order]
    for i in rest:
        v = np.zeros(dims[i], dtype=np.complex128)
        v[0] = 1.0
        amps = np.kron(amps, v)
    order += rest
    permuted = amps.reshape([dims[i] for i in order])
    tensor = np.transpose(permuted, np.argsort(order))
    return StateVector(reg, tensor.ravel())


@dataclass
class AnalysisResult:
    analysis: Analysis
    description: str
    value: object
    details: list = field(default_factory=list)


@dataclass
class SimulationResult:
    program: CircuitProgram
    state: StateVector
    analyses: list


def circuit_unitary(program):
    reg = program.register
    u = np.eye(reg.dimension, dtype=np.complex128)
    for step in program.steps:
        gate = build_gate(step.gate_id, [reg.dims[s] for s in step.sites])
        u = embed(gate, reg, step.sites) @ u
    return u


def _pauli_analysis(program, analysis):
    dims = [program.register.dims[s] for s in analysis.sites]
    gate = build_gate(analysis.gate_id, dims)
    sub = HybridRegister(tuple(dims))
    details = []
    ok = True
    for pos, d in enumerate(dims):
        for gen_name, gen in (("X", gates.pauli_x(d)), ("Z", gates.pauli_z(d))):
            image = conjugate(gate, embed(gen, sub, [pos]))
            verdict = pauli_membership(image, sub)
            ok &= verdict.is_member
            details.append((f"{gen_name}@{program.site_names[analysis.sites[pos]]}", verdict))
    return ok, details


def run(program):
    """Execute ``program``; returns the final state and every analysis result."""
    names = program.site_names
    reg = program.register
    state = initial_state(program)
    for step in program.steps:
        gate = build_gate(step.gate_id, [reg.dims[s] for s in step.sites])
        state = apply(state, gate, step.sites)
    results = []
    unitary = None
    for a in program.analyses:
        if a.kind == "entropy":
            left, right = a.cut
            desc = (
                "entropy "
                + " ".join(names[s] for s in left)
                + " | "
                + " ".join(names[s] for s in right)
            )
            results.append(AnalysisResult(a, desc, state_entropy(state, a.cut)))
        elif a.kind == "opent":
            if unitary is None:
                unitary = circuit_unitary(program)
            cut = ((0,), tuple(range(1, reg.size)))
            desc = f"opent {names[0]} | " + " ".join(names[1:])
            results.append(AnalysisResult(a, desc, operator_entanglement_cut(unitary, reg, cut)))
        else:
            ok, details = _pauli_analysis(program, a)
            desc = "pauli " + a.gate_id + " " + " ".join(names[s] for s in a.sites)
            results.append(AnalysisResult(a, desc, ok, details))
    return SimulationResult(program, state, results)
