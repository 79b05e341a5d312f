"""Exact scalar arithmetic: rationals and sparse multivariate polynomials.

Scalars flowing through the engine are `Fraction`, `Polynomial`, or `float`.
Exact and float values never mix implicitly; conversion is explicit via
`scalar_to_float`.  Polynomials are sparse maps from exponent tuples to
nonzero rational coefficients over a fixed, ordered variable tuple, with
graded-lexicographic term order for canonical forms.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence, Union

Exponents = tuple[int, ...]


class ScalarError(TypeError):
    """Illegal scalar operation (float/exact mixing, variable mismatch)."""


class ExactDivisionError(ArithmeticError):
    """Requested exact polynomial division has a nonzero remainder."""


class PolynomialSyntaxError(ValueError):
    """Parse failure with a byte offset into the source text."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (offset {position})")
        self.position = position


def _coerce_coeff(value: Union[int, Fraction]) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise ScalarError(f"coefficient must be rational, got {type(value).__name__}")
    return Fraction(value)


def grlex_key(exponents: Exponents) -> tuple[int, Exponents]:
    return (sum(exponents), exponents)


class Polynomial:
    """Sparse polynomial with Fraction coefficients over ordered variables."""

    __slots__ = ("variables", "terms")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[Exponents, Union[int, Fraction]] = (),
    ) -> None:
        vars_tuple = tuple(variables)
        if len(set(vars_tuple)) != len(vars_tuple):
            raise ScalarError(f"duplicate variable in {vars_tuple}")
        clean: dict[Exponents, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != len(vars_tuple):
                raise ScalarError(
                    f"exponent tuple {exps} does not match {len(vars_tuple)} variables"
                )
            if any(e < 0 for e in exps):
                raise ScalarError(f"negative exponent in {exps}")
            c = _coerce_coeff(coeff)
            if c != 0:
                acc = clean.get(exps, Fraction(0)) + c
                if acc != 0:
                    clean[exps] = acc
                elif exps in clean:
                    del clean[exps]
        object.__setattr__(self, "variables", vars_tuple)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Polynomial is immutable")

    # --- constructors ---

    @staticmethod
    def zero(variables: Sequence[str]) -> "Polynomial":
        return Polynomial(variables, {})

    @staticmethod
    def const(variables: Sequence[str], value: Union[int, Fraction]) -> "Polynomial":
        zeros = (0,) * len(tuple(variables))
        return Polynomial(variables, {zeros: _coerce_coeff(value)})

    @staticmethod
    def var(variables: Sequence[str], name: str) -> "Polynomial":
        vars_tuple = tuple(variables)
        if name not in vars_tuple:
            raise ScalarError(f"unknown variable {name!r} for {vars_tuple}")
        exps = tuple(1 if v == name else 0 for v in vars_tuple)
        return Polynomial(vars_tuple, {exps: Fraction(1)})

    # --- basic state ---

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant():
            raise ScalarError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self.is_zero:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self) -> tuple[Exponents, Fraction]:
        """Leading (exponents, coefficient) in graded-lexicographic order."""
        if self.is_zero:
            raise ScalarError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def _require_same_vars(self, other: "Polynomial") -> None:
        if self.variables != other.variables:
            raise ScalarError(
                f"variable mismatch: {self.variables} vs {other.variables}"
            )

    # --- ring operations ---

    def __add__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.variables, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_vars(other)
        merged = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = merged.get(exps, Fraction(0)) + coeff
            if acc == 0:
                merged.pop(exps, None)
            else:
                merged[exps] = acc
        return Polynomial(self.variables, merged)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.variables, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial.zero(self.variables)
            return Polynomial(
                self.variables, {e: c * other for e, c in self.terms.items()}
            )
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_vars(other)
        product: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                acc = product.get(exps, Fraction(0)) + c1 * c2
                if acc == 0:
                    product.pop(exps, None)
                else:
                    product[exps] = acc
        return Polynomial(self.variables, product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ScalarError(f"polynomial power must be a non-negative int, got {exponent!r}")
        result = Polynomial.const(self.variables, 1)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.variables, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    # --- normalization ---

    def content(self) -> Fraction:
        """gcd of coefficients: gcd of numerators over lcm of denominators."""
        if self.is_zero:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> tuple[Fraction, "Polynomial"]:
        """Split as (unit, primitive): self == unit * primitive.

        The primitive part has coprime integer coefficients and a positive
        leading coefficient; the zero polynomial returns (0, 0).
        """
        if self.is_zero:
            return Fraction(0), self
        unit = self.content()
        if self.leading()[1] < 0:
            unit = -unit
        return unit, self * (1 / unit)

    def primitive(self) -> "Polynomial":
        return self.normalized()[1]

    # --- evaluation and substitution ---

    def evaluate(
        self, assignment: Mapping[str, Union[int, Fraction, float]]
    ) -> Union[Fraction, float]:
        """Evaluate with every variable assigned; float inputs give a float."""
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise ScalarError(f"unassigned variables {missing}")
        values = [assignment[v] for v in self.variables]
        use_float = any(isinstance(v, float) for v in values)
        if use_float:
            total_f = 0.0
            vals_f = [float(v) for v in values]
            for exps, coeff in self.terms.items():
                term = float(coeff)
                for v, e in zip(vals_f, exps):
                    if e:
                        term *= v**e
                total_f += term
            return total_f
        total = Fraction(0)
        vals = [Fraction(v) for v in values]
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(vals, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def subs(
        self, assignment: Mapping[str, Union[int, Fraction, "Polynomial"]]
    ) -> "Polynomial":
        """Substitute some variables; the variable tuple stays fixed.

        Values may be rationals or polynomials over the same variables (or a
        subset, which is extended by name).  Unassigned variables map to
        themselves.
        """
        images: list[Polynomial] = []
        for v in self.variables:
            value = assignment.get(v)
            if value is None:
                images.append(Polynomial.var(self.variables, v))
            elif isinstance(value, Polynomial):
                images.append(value.extend(self.variables))
            else:
                images.append(Polynomial.const(self.variables, value))
        result = Polynomial.zero(self.variables)
        for exps, coeff in self.terms.items():
            term = Polynomial.const(self.variables, coeff)
            for img, e in zip(images, exps):
                if e:
                    term = term * img**e
            result = result + term
        return result

    def extend(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express over a superset variable tuple, matching by name."""
        target = tuple(variables)
        if target == self.variables:
            return self
        positions = []
        for v in self.variables:
            if v not in target:
                raise ScalarError(f"variable {v!r} missing from target {target}")
            positions.append(target.index(v))
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(target)
            for pos, e in zip(positions, exps):
                new[pos] = e
            terms[tuple(new)] = coeff
        return Polynomial(target, terms)

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def to_univariate(self, name: str) -> list[Fraction]:
        """Dense coefficient list [c0, c1, ...] in the named variable.

        Every other variable must be absent from the support.
        """
        if name not in self.variables:
            raise ScalarError(f"unknown variable {name!r}")
        idx = self.variables.index(name)
        extra = [v for v in self.used_variables() if v != name]
        if extra:
            raise ScalarError(f"polynomial is not univariate in {name!r}: uses {extra}")
        if self.is_zero:
            return [Fraction(0)]
        top = max(e[idx] for e in self.terms)
        dense = [Fraction(0)] * (top + 1)
        for exps, coeff in self.terms.items():
            dense[exps[idx]] = coeff
        return dense

    # --- exact division ---

    def divexact(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient self / divisor; raises if the division is inexact."""
        if isinstance(divisor, (int, Fraction)):
            divisor = Polynomial.const(self.variables, divisor)
        self._require_same_vars(divisor)
        if divisor.is_zero:
            raise ExactDivisionError("division by zero polynomial")
        quotient = Polynomial.zero(self.variables)
        remainder = self
        lead_exps, lead_coeff = divisor.leading()
        while not remainder.is_zero:
            r_exps, r_coeff = remainder.leading()
            diff = tuple(a - b for a, b in zip(r_exps, lead_exps))
            if any(d < 0 for d in diff):
                raise ExactDivisionError("leading term not divisible")
            mono = Polynomial(self.variables, {diff: r_coeff / lead_coeff})
            quotient = quotient + mono
            remainder = remainder - mono * divisor
        return quotient

    # --- canonical form ---

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def to_str(self) -> str:
        if self.is_zero:
            return "0"
        pieces: list[str] = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for v, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({self.variables!r}, {self.to_str()!r})"


# --- parser ---

_OPS = set("+-*^()/")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens are (kind, value, position) with kind in NUM, NAME, OP, END."""
    tokens: list[tuple[str, str, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("NUM", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch == "*" and i + 1 < n and text[i + 1] == "*":
            raise PolynomialSyntaxError("'**' is not an operator; use '^'", i)
        if ch in _OPS:
            tokens.append(("OP", ch, i))
            i += 1
            continue
        raise PolynomialSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    """Recursive descent over: expr := term (('+'|'-') term)*,
    term := factor ('*' factor)*, factor := '-' factor | atom ('^' NUM)?,
    atom := NUM ('/' NUM)? | NAME | '(' expr ')'.
    """

    def __init__(self, text: str, variables: Sequence[str]) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = tuple(variables)

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, value, position = self.peek()
        if kind != "OP" or value != op:
            raise PolynomialSyntaxError(f"expected {op!r}", position)
        self.advance()

    def parse(self) -> Polynomial:
        result = self.expr()
        kind, value, position = self.peek()
        if kind != "END":
            raise PolynomialSyntaxError(f"unexpected {value!r}", position)
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "OP" and value in "+-":
                self.advance()
                rhs = self.term()
                result = result + rhs if value == "+" else result - rhs
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "OP" and value == "*":
                self.advance()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        kind, value, position = self.peek()
        if kind == "OP" and value == "-":
            self.advance()
            return -self.factor()
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == "OP" and value == "^":
            self.advance()
            kind, value, position = self.peek()
            if kind != "NUM":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", position)
            self.advance()
            return base ** int(value)
        return base

    def atom(self) -> Polynomial:
        kind, value, position = self.advance()
        if kind == "NUM":
            numerator = int(value)
            k, v, p = self.peek()
            if k == "OP" and v == "/":
                self.advance()
                k, v, p = self.peek()
                if k != "NUM":
                    raise PolynomialSyntaxError("expected denominator digits", p)
                self.advance()
                if int(v) == 0:
                    raise PolynomialSyntaxError("zero denominator", p)
                return Polynomial.const(self.variables, Fraction(numerator, int(v)))
            return Polynomial.const(self.variables, numerator)
        if kind == "NAME":
            if value not in self.variables:
                raise PolynomialSyntaxError(f"unknown symbol {value!r}", position)
            return Polynomial.var(self.variables, value)
        if kind == "OP" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise PolynomialSyntaxError(
            f"expected a value, got {value!r}" if value else "unexpected end of input",
            position,
        )


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    return _Parser(text, variables).parse()


def parse_rational(text: str) -> Fraction:
    """Strict p/q or integer literal (optional leading minus)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PolynomialSyntaxError(f"invalid rational {text!r}: {exc}", 0) from exc


# --- scalar layer ---

Scalar = Union[Fraction, Polynomial, float]


def is_exact(value: Scalar) -> bool:
    return isinstance(value, (int, Fraction, Polynomial))


def _promote(a: Scalar, b: Scalar) -> tuple[Scalar, Scalar]:
    a_f = isinstance(a, float)
    b_f = isinstance(b, float)
    if a_f != b_f:
        raise ScalarError("implicit float/exact mixing; convert explicitly")
    if a_f:
        return a, b
    if isinstance(a, bool) or isinstance(b, bool):
        raise ScalarError("bool is not a scalar")
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(b, int):
        b = Fraction(b)
    if isinstance(a, Polynomial) and isinstance(b, Fraction):
        b = Polynomial.const(a.variables, b)
    elif isinstance(b, Polynomial) and isinstance(a, Fraction):
        a = Polynomial.const(b.variables, a)
    return a, b


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    a, b = _promote(a, b)
    return a + b


def scalar_sub(a: Scalar, b: Scalar) -> Scalar:
    a, b = _promote(a, b)
    return a - b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    a, b = _promote(a, b)
    return a * b


def scalar_neg(a: Scalar) -> Scalar:
    return -a


def scalar_is_zero(a: Scalar) -> bool:
    if isinstance(a, Polynomial):
        return a.is_zero
    return a == 0


def scalar_eq(a: Scalar, b: Scalar) -> bool:
    return scalar_is_zero(scalar_sub(a, b))


def scalar_to_float(a: Scalar) -> float:
    if isinstance(a, Polynomial):
        return float(a.constant_value())
    return float(a)


def scalar_evaluate(
    a: Scalar, assignment: Mapping[str, Union[int, Fraction, float]]
) -> Union[Fraction, float]:
    if isinstance(a, Polynomial):
        return a.evaluate(assignment)
    if isinstance(a, float):
        return a
    return Fraction(a)


def encode_scalar(value: Scalar) -> Union[int, float, str]:
    """JSON encoding: integers bare, rationals as 'p/q', polynomials canonical."""
    if isinstance(value, Polynomial):
        return value.to_str()
    if isinstance(value, bool):
        raise ScalarError("bool is not a scalar")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return value
    raise ScalarError(f"cannot encode {type(value).__name__}")


def decode_scalar(raw: object, variables: Sequence[str] = ()) -> Scalar:
    """Inverse of encode_scalar; strings parse as polynomials over `variables`."""
    if isinstance(raw, bool):
        raise ScalarError("bool is not a scalar")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        return raw
    if isinstance(raw, str):
        poly = parse_polynomial(raw, variables)
        if poly.is_constant():
            return poly.constant_value()
        return poly
    raise ScalarError(f"cannot decode {type(raw).__name__}")


def compile_float(poly: Polynomial, order: Sequence[str]) -> Callable[..., float]:
    """Compile to a float evaluator taking positional args in `order`."""
    index = {v: i for i, v in enumerate(order)}
    for v in poly.used_variables():
        if v not in index:
            raise ScalarError(f"variable {v!r} not in argument order {tuple(order)}")
    slots = [index[v] for v in poly.variables]
    compiled = [
        (float(coeff), tuple((slots[i], e) for i, e in enumerate(exps) if e))
        for exps, coeff in poly.sorted_terms()
    ]

    def evaluator(*args: float) -> float:
        total = 0.0
        for coeff, powers in compiled:
            term = coeff
            for slot, e in powers:
                term *= args[slot] ** e
            total += term
        return total

    return evaluator


def poly_equal_up_to_unit(p: Polynomial, q: Polynomial) -> Union[Fraction, None]:
    """Return nonzero rational u with p == u*q, or None if there is none.

    Both zero returns 1; exactly one zero returns None.
    """
    if p.is_zero and q.is_zero:
        return Fraction(1)
    if p.is_zero or q.is_zero:
        return None
    up, pp = p.normalized()
    uq, qq = q.normalized()
    if pp == qq:
        return up / uq
    return None
