"""Exact multivariate polynomial arithmetic over Q, with doubled variables.

A polynomial is stored sparsely as a map from exponent vectors to nonzero
`Fraction` coefficients.  The exponent vector is aligned to the polynomial's
own variable registry: a sorted tuple of `Variable`s, where a variable is a
base name plus a prime level (``x`` vs ``x'``).  Canonical form is strict --
the registry contains only variables that actually occur, exponent vectors
carry no trailing zeros, and no zero coefficient is ever stored -- so two
equal polynomials are structurally identical, which the byte-exact printing
contract relies on.

Arithmetic between polynomials over different registries silently merges the
registries (a sorted union with exponent realignment); disjointness checks,
where they matter, live at the matrix-factorization level, not here.

Besides ring operations this module provides:

* ``parse_poly`` / canonical printing for the expression grammar used by the
  CLI and the JSON file format,
* ``substitute`` (simultaneous), and the prime-shift maps ``t_shift`` that
  replace x_1..x_k by their primed twins,
* ``divide_exact``, multivariate division by a single divisor that raises
  ``InexactDivision`` (with the remainder) when there is no polynomial
  quotient,
* ``diff_quotient``, the difference quotient
  d_i(f) = [(t_1..t_{i-1} f) - (t_1..t_i f)] / (x_i - x_i'),
  which collapses to the partial derivative on the diagonal x' = x.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class Variable:
    """A polynomial variable: base name plus prime level (x, x', x'', ...).

    Ordering is by (name, prime_level); the monomial order and therefore
    every printed artifact depends on it.
    """

    name: str
    prime_level: int = 0

    def __post_init__(self) -> None:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.name):
            raise ValueError(f"bad variable name {self.name!r}")
        if self.prime_level < 0:
            raise ValueError("prime_level must be >= 0")

    def primed(self) -> "Variable":
        return Variable(self.name, self.prime_level + 1)

    def base(self) -> "Variable":
        return Variable(self.name, 0)

    def __str__(self) -> str:
        return self.name + "'" * self.prime_level

    def __repr__(self) -> str:
        return f"Variable({str(self)!r})"


class InexactDivision(ArithmeticError):
    """Raised by divide_exact when no polynomial quotient exists."""

    def __init__(self, remainder: "Polynomial", quotient: "Polynomial"):
        self.remainder = remainder
        self.quotient = quotient
        super().__init__(f"division leaves remainder {remainder}")


def _check_coeff(c) -> Fraction:
    if isinstance(c, float):
        raise TypeError("float coefficients are not supported; use Fraction")
    return Fraction(c)


def _canonical(vars_t, terms):
    """Normalize (vars, terms) to the unique canonical representation."""
    vars_t = tuple(vars_t)
    if len(set(vars_t)) != len(vars_t):
        raise ValueError("duplicate variables in registry")
    nv = len(vars_t)
    # Accumulate with padded keys first; inputs may mix trimmed/untrimmed.
    acc: dict = {}
    for mono, c in terms.items():
        c = _check_coeff(c)
        if not c:
            continue
        mono = tuple(mono)
        if len(mono) > nv:
            raise ValueError("exponent vector longer than registry")
        if any(e < 0 for e in mono):
            raise ValueError("negative exponent")
        padded = mono + (0,) * (nv - len(mono))
        acc[padded] = acc.get(padded, Fraction(0)) + c
    acc = {m: c for m, c in acc.items() if c}
    # Shrink the registry to the variables actually used, sorted.
    used = sorted(
        {vars_t[pos] for m in acc for pos, e in enumerate(m) if e}
    )
    idx = {v: i for i, v in enumerate(vars_t)}
    new_positions = [idx[v] for v in used]
    out: dict = {}
    for m, c in acc.items():
        new = tuple(m[p] for p in new_positions)
        while new and new[-1] == 0:
            new = new[:-1]
        out[new] = c
    return tuple(used), out


class Polynomial:
    """Immutable sparse polynomial in canonical form."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[Variable] = (), terms: Mapping = None):
        cvars, cterms = _canonical(vars, terms or {})
        object.__setattr__(self, "vars", cvars)
        object.__setattr__(self, "terms", cterms)

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def const(c: Scalar) -> "Polynomial":
        return Polynomial((), {(): _check_coeff(c)})

    @staticmethod
    def var(v: Variable) -> "Polynomial":
        return Polynomial((v,), {(1,): Fraction(1)})

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def constant_value(self) -> Fraction:
        """The coefficient of the empty monomial."""
        return self.terms.get((), Fraction(0))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = as_poly(other)
        vars_m = tuple(sorted(set(self.vars) | set(other.vars)))
        acc = _aligned(self, vars_m)
        for m, c in _aligned(other, vars_m).items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return Polynomial(vars_m, acc)

    def __radd__(self, other) -> "Polynomial":
        return self.__add__(other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self.__add__(-as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return as_poly(other).__sub__(self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = _check_coeff(other)
            return Polynomial(self.vars, {m: cc * c for m, cc in self.terms.items()})
        other = as_poly(other)
        vars_m = tuple(sorted(set(self.vars) | set(other.vars)))
        ta = _aligned(self, vars_m)
        tb = _aligned(other, vars_m)
        acc: dict = {}
        for m1, c1 in ta.items():
            for m2, c2 in tb.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return Polynomial(vars_m, acc)

    def __rmul__(self, other) -> "Polynomial":
        return self.__mul__(other)

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = Polynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    # -- convenience -------------------------------------------------------

    def substitute(self, mapping) -> "Polynomial":
        return substitute(self, mapping)

    def __str__(self) -> str:
        return poly_to_str(self)

    def __repr__(self) -> str:
        return f"Polynomial({poly_to_str(self)!r})"


def as_poly(x) -> Polynomial:
    """Coerce an int/Fraction/Polynomial to a Polynomial."""
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")


def _aligned(p: Polynomial, vars_m) -> dict:
    """Re-key p.terms to full-length exponent vectors over vars_m ⊇ p.vars."""
    idx = {v: i for i, v in enumerate(vars_m)}
    n = len(vars_m)
    out = {}
    for mono, c in p.terms.items():
        new = [0] * n
        for pos, e in enumerate(mono):
            if e:
                new[idx[p.vars[pos]]] = e
        out[tuple(new)] = c
    return out


def _grlex(m) -> tuple:
    return (sum(m), m)


def arith(op: str, a: Polynomial, b=None) -> Polynomial:
    """Dispatcher form of the ring operations: add | neg | mul | scalar_mul."""
    if op == "add":
        return a + b
    if op == "neg":
        return -a
    if op == "mul":
        return a * b
    if op == "scalar_mul":
        return a * _check_coeff(b)
    raise ValueError(f"unknown arith op {op!r}")


def substitute(f: Polynomial, mapping: Mapping[Variable, object]) -> Polynomial:
    """Simultaneous substitution; variables not in the map stay unchanged."""
    subs = {v: as_poly(p) for v, p in mapping.items()}
    out = Polynomial.zero()
    for mono, c in f.terms.items():
        acc = Polynomial.const(c)
        for pos, e in enumerate(mono):
            if not e:
                continue
            v = f.vars[pos]
            base = subs.get(v)
            if base is None:
                acc = acc * Polynomial((v,), {(e,): Fraction(1)})
            else:
                acc = acc * base ** e
        out = out + acc
    return out


def divide_exact(num: Polynomial, den: Polynomial) -> Polynomial:
    """Return q with q*den == num, or raise InexactDivision with the remainder."""
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    vars_m = tuple(sorted(set(num.vars) | set(den.vars)))
    nt = {m: c for m, c in _aligned(num, vars_m).items()}
    dt = _aligned(den, vars_m)
    dlead = max(dt, key=_grlex)
    dc = dt[dlead]
    q: dict = {}
    r: dict = {}
    while nt:
        lead = max(nt, key=_grlex)
        c = nt[lead]
        if all(le >= de for le, de in zip(lead, dlead)):
            qm = tuple(le - de for le, de in zip(lead, dlead))
            qc = c / dc
            q[qm] = qc
            for dm, dcc in dt.items():
                m = tuple(a + b for a, b in zip(qm, dm))
                newc = nt.get(m, Fraction(0)) - qc * dcc
                if newc:
                    nt[m] = newc
                else:
                    nt.pop(m, None)
        else:
            r[lead] = c
            del nt[lead]
    if r:
        raise InexactDivision(Polynomial(vars_m, r), Polynomial(vars_m, q))
    return Polynomial(vars_m, q)


def unprimed_vars(f: Polynomial) -> tuple:
    """The sorted prime-level-0 variables of f's registry."""
    return tuple(v for v in f.vars if v.prime_level == 0)


def t_shift(f: Polynomial, k: int, xvars=None) -> Polynomial:
    """Apply the composite t_1...t_k: substitute x_j -> x_j' for j <= k.

    ``xvars`` fixes the indexing; it defaults to f's own unprimed variables
    but callers relating several polynomials (Leibniz!) must pass a shared
    list.
    """
    xs = tuple(xvars) if xvars is not None else unprimed_vars(f)
    if not 0 <= k <= len(xs):
        raise IndexError(f"t-shift index {k} out of range for {len(xs)} variables")
    return substitute(f, {x: Polynomial.var(x.primed()) for x in xs[:k]})


def diff_quotient(f: Polynomial, i: int, xvars=None) -> Polynomial:
    """The i-th difference quotient of f (1-based variable index).

    d_i(f) = [(t_1..t_{i-1} f) - (t_1..t_i f)] / (x_i - x_i').  The division
    is exact by construction; an InexactDivision escaping here would be an
    internal invariant failure.
    """
    xs = tuple(xvars) if xvars is not None else unprimed_vars(f)
    if not 1 <= i <= len(xs):
        raise IndexError(f"variable index {i} out of range for {len(xs)} variables")
    hi = t_shift(f, i - 1, xs)
    lo = t_shift(f, i, xs)
    xi = xs[i - 1]
    den = Polynomial.var(xi) - Polynomial.var(xi.primed())
    return divide_exact(hi - lo, den)


def derivative(f: Polynomial, v: Variable) -> Polynomial:
    """Formal partial derivative df/dv.

    Coincides with the difference quotient collapsed to the diagonal
    x' = x (a property test pins the two against each other).
    """
    if v not in f.vars:
        return Polynomial.zero()
    pos = f.vars.index(v)
    acc = {}
    for mono, c in f.terms.items():
        if pos >= len(mono) or mono[pos] == 0:
            continue
        new = list(mono)
        new[pos] -= 1
        key = tuple(new)
        acc[key] = acc.get(key, Fraction(0)) + c * mono[pos]
    return Polynomial(f.vars, acc)


@dataclass(frozen=True)
class DiffQuotientResult:
    """A difference quotient together with the index it was taken at.

    Invariant: (x_i - x_i') * quotient == (t_1..t_{i-1} f) - (t_1..t_i f).
    """

    quotient: Polynomial
    index: int

    @staticmethod
    def compute(f: Polynomial, i: int, xvars=None) -> "DiffQuotientResult":
        return DiffQuotientResult(diff_quotient(f, i, xvars), i)


# -- parsing ---------------------------------------------------------------

class PolyParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class UndeclaredVariable(PolyParseError):
    pass


_TOKEN_RE = re.compile(
    r"(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*^()/])"
)


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "num":
            toks.append(("num", m.group(), pos))
        elif m.lastgroup == "name":
            raw = m.group()
            base = raw.rstrip("'")
            toks.append(("name", (base, len(raw) - len(base)), pos))
        else:
            toks.append((m.group(), m.group(), pos))
        pos = m.end()
    return toks


def _declared_checker(registry):
    exact = set()
    bases = set()
    for item in registry:
        if isinstance(item, Variable):
            exact.add(item)
        elif isinstance(item, str):
            bases.add(item)
        else:
            raise TypeError("registry entries must be Variable or str")
    def ok(v: Variable) -> bool:
        return v in exact or (v.name in bases and v.prime_level <= 1)
    return ok


class _Parser:
    def __init__(self, toks, text_len, declared):
        self.toks = toks
        self.i = 0
        self.end = text_len
        self.declared = declared

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end)

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def expect_end(self):
        kind, _, pos = self._peek()
        if kind is not None:
            raise PolyParseError("unexpected trailing input", pos)

    def parse_expr(self) -> Polynomial:
        node = self.parse_term()
        while self._peek()[0] in ("+", "-"):
            op, _, _ = self._next()
            rhs = self.parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term(self) -> Polynomial:
        node = self.parse_factor()
        while self._peek()[0] == "*":
            self._next()
            node = node * self.parse_factor()
        return node

    def parse_factor(self) -> Polynomial:
        node = self.parse_base()
        if self._peek()[0] == "^":
            self._next()
            kind, val, pos = self._next()
            if kind != "num":
                raise PolyParseError("expected natural number after '^'", pos)
            node = node ** int(val)
        return node

    def parse_base(self) -> Polynomial:
        kind, val, pos = self._peek()
        if kind == "-":
            self._next()
            kind2, val2, pos2 = self._peek()
            if kind2 != "num":
                raise PolyParseError("expected number after sign", pos2)
            self._next()
            return Polynomial.const(-self._rational(int(val2), pos2))
        if kind == "num":
            self._next()
            return Polynomial.const(self._rational(int(val), pos))
        if kind == "name":
            self._next()
            v = Variable(val[0], val[1])
            if not self.declared(v):
                raise UndeclaredVariable(f"undeclared variable {v}", pos)
            return Polynomial.var(v)
        if kind == "(":
            self._next()
            node = self.parse_expr()
            kind2, _, pos2 = self._next()
            if kind2 != ")":
                raise PolyParseError("expected ')'", pos2)
            return node
        raise PolyParseError("expected a polynomial term", pos)

    def _rational(self, numerator: int, pos: int) -> Fraction:
        if self._peek()[0] == "/":
            self._next()
            kind, val, pos2 = self._next()
            if kind != "num":
                raise PolyParseError("malformed rational", pos2)
            den = int(val)
            if den == 0:
                raise PolyParseError("malformed rational (zero denominator)", pos2)
            return Fraction(numerator, den)
        return Fraction(numerator)


def parse_poly(text: str, registry) -> Polynomial:
    """Parse the expression grammar; every variable must be declared.

    ``registry`` is an iterable of Variables and/or base-name strings; a
    string declares the unprimed variable and implicitly admits its primed
    twin (prime level 1).
    """
    toks = _tokenize(text)
    parser = _Parser(toks, len(text), _declared_checker(registry))
    result = parser.parse_expr()
    parser.expect_end()
    return result


# -- printing --------------------------------------------------------------

def _fmt_fraction(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def poly_to_str(f: Polynomial) -> str:
    """Canonical rendering: graded-lex descending, explicit '*', '^' for >= 2.

    The grammar has no unary minus, so a leading negative term keeps its
    numeric factor: "-1*x + y" rather than "-x + y".
    """
    if not f.terms:
        return "0"
    n = len(f.vars)

    def key(m):
        return (sum(m), m + (0,) * (n - len(m)))

    parts = []
    for idx, mono in enumerate(sorted(f.terms, key=key, reverse=True)):
        c = f.terms[mono]
        factors = []
        for pos, e in enumerate(mono):
            if e == 0:
                continue
            v = str(f.vars[pos])
            factors.append(v if e == 1 else f"{v}^{e}")
        varpart = "*".join(factors)
        mag = abs(c)
        if varpart and mag == 1:
            body = varpart
        elif varpart:
            body = f"{_fmt_fraction(mag)}*{varpart}"
        else:
            body = _fmt_fraction(mag)
        if idx == 0:
            if c < 0:
                head = f"-{_fmt_fraction(mag)}"
                parts.append(f"{head}*{varpart}" if varpart else head)
            else:
                parts.append(body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)
