"""Univariate polynomials and rational functions over GF(p).

Coefficients are stored as ints in [0, p), ascending degree, with the zero
polynomial represented by an empty tuple.  Trivariate curve forms are kept
as sparse ``{(i, j, k): coeff}`` maps and only ever evaluated or composed
with univariate polynomials.
"""

from __future__ import annotations

import ast
import operator
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from . import kernels
from .errors import BothZero, DivisionByZero, ModulusMismatch, NotASquare, SpecError
from .field import FieldElement, PrimeModulus

Form = Dict[Tuple[int, int, int], int]


class Polynomial:
    """Immutable dense polynomial in one variable over a prime field."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable = (), field: PrimeModulus = None):
        if field is None:
            raise TypeError("Polynomial needs a field")
        p = field.p
        c = [int(x) % p for x in coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "field", field)

    @classmethod
    def _raw(cls, coeffs, field):
        # coeffs already reduced and trimmed
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        object.__setattr__(obj, "field", field)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (Polynomial, (self.coeffs, self.field))

    @classmethod
    def constant(cls, c, field):
        return cls((int(c),), field)

    @classmethod
    def x(cls, field):
        return cls._raw((0, 1), field)

    @classmethod
    def from_roots(cls, roots, field):
        out = cls._raw((1,), field)
        for r in roots:
            out = out * cls((-int(r), 1), field)
        return out

    # -- basic accessors -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def coefficients(self):
        """Coefficients as FieldElements, ascending degree."""
        return [FieldElement(c, self.field) for c in self.coeffs]

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field.p == other.field.p and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElement)):
            return self.coeffs == Polynomial.constant(int(other), self.field).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.field.p))

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)}, GF({self.field.p}))"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field.p != self.field.p:
                raise ModulusMismatch(f"GF({self.field.p}) vs GF({other.field.p})")
            return other
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise ModulusMismatch(f"GF({self.field.p}) vs GF({other.field.p})")
            return Polynomial.constant(other.value, self.field)
        if isinstance(other, int):
            return Polynomial.constant(other, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial._raw(kernels.add(self.coeffs, o.coeffs, self.field.p), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial._raw(kernels.sub(self.coeffs, o.coeffs, self.field.p), self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Polynomial._raw(kernels.scale(self.coeffs, -1, self.field.p), self.field)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)) and not isinstance(other, bool):
            o = self._coerce(other)
            return Polynomial._raw(kernels.scale(self.coeffs, o.lc, self.field.p), self.field)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial._raw(kernels.mul(self.coeffs, o.coeffs, self.field.p), self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial._raw((1,), self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q, r = kernels.divmod_(self.coeffs, o.coeffs, self.field.p)
        return Polynomial._raw(q, self.field), Polynomial._raw(r, self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ValueError("inexact polynomial division")
        return q

    def __call__(self, x):
        """Horner evaluation at a field element or int."""
        if isinstance(x, FieldElement):
            if x.field.p != self.field.p:
                raise ModulusMismatch(f"GF({self.field.p}) vs GF({x.field.p})")
            x = x.value
        return FieldElement(kernels.evaluate(self.coeffs, x % self.field.p, self.field.p), self.field)

    def eval_int(self, x: int) -> int:
        return kernels.evaluate(self.coeffs, x % self.field.p, self.field.p)

    def derivative(self) -> "Polynomial":
        p = self.field.p
        return Polynomial([k * c % p for k, c in enumerate(self.coeffs)][1:], self.field)

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        inv = self.field.inv(self.lc)
        return Polynomial._raw(kernels.scale(self.coeffs, inv, self.field.p), self.field)

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """self(inner(t))."""
        result = Polynomial._raw((), self.field)
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def powmod(self, e: int, modulus: "Polynomial") -> "Polynomial":
        result = Polynomial._raw((1,), self.field) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result


# -- free functions ---------------------------------------------------------

def poly_arith(a: Polynomial, b: Polynomial, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return divmod(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a.monic()


def evaluate(a: Polynomial, t0) -> FieldElement:
    return a(t0)


def compose(form: Mapping[Tuple[int, int, int], object], args: Sequence[Polynomial]) -> Polynomial:
    """Substitute three univariate polynomials into a trivariate form."""
    U, V, W = args
    field = U.field
    cache = {}

    def power(idx, base, e):
        key = (idx, e)
        if key not in cache:
            cache[key] = base ** e
        return cache[key]

    total = Polynomial._raw((), field)
    for (i, j, k), c in form.items():
        c = int(c) % field.p
        if not c:
            continue
        term = power(0, U, i) * power(1, V, j) * power(2, W, k)
        total = total + term * c
    return total


def form_eval(form: Mapping[Tuple[int, int, int], object], x: int, y: int, z: int, p: int) -> int:
    """Evaluate a trivariate form at integer coordinates mod p."""
    s = 0
    for (i, j, k), c in form.items():
        s += int(c) * pow(x, i, p) * pow(y, j, p) * pow(z, k, p)
    return s % p


def form_partial(form: Mapping[Tuple[int, int, int], object], var: int, p: int) -> Form:
    out: Form = {}
    for exps, c in form.items():
        e = exps[var]
        if e == 0:
            continue
        new = list(exps)
        new[var] -= 1
        key = tuple(new)
        out[key] = (out.get(key, 0) + e * int(c)) % p
    return {k: v for k, v in out.items() if v}


def exact_sqrt(P: Polynomial) -> Polynomial:
    """Square root by matching coefficients from the top.

    The sign is fixed by taking the smaller representative of the two
    square roots of the leading coefficient.
    """
    field = P.field
    if P.is_zero():
        return P
    if P.degree % 2:
        raise NotASquare("odd degree", witness=odd_part(P))
    p = field.p
    lead = P.lc
    if not field.is_square(lead):
        raise NotASquare("leading coefficient is not a square", witness=odd_part(P))
    r = field.sqrt(lead)
    r = min(r, p - r)
    n = P.degree // 2
    root = [0] * (n + 1)
    root[n] = r
    inv2r = field.inv(2 * r)
    c = P.coeffs
    for k in range(n - 1, -1, -1):
        # coefficient of t^(n+k) in root^2 involves root[k..n]
        s = 0
        for i in range(k + 1, n):
            s += root[i] * root[n + k - i]
        root[k] = (c[n + k] - s) * inv2r % p
    candidate = Polynomial._raw(kernels.trim(root), field)
    if candidate * candidate != P:
        raise NotASquare("coefficient matching failed", witness=odd_part(P))
    return candidate


def sqf_list(P: Polynomial):
    """Square-free decomposition as ``[(factor, multiplicity), ...]``.

    Handles characteristic p: when the derivative vanishes the polynomial
    is a p-th power and its p-th root is taken coefficientwise.
    """
    field = P.field
    p = field.p
    if P.is_zero():
        raise ValueError("square-free decomposition of zero")
    f = P.monic()
    result = []
    n = 1
    while True:
        if f.degree < 1:
            break
        df = f.derivative()
        if df.is_zero():
            # f(t) = g(t^p); over a prime field g's p-th root has the same coefficients
            f = Polynomial(f.coeffs[::p], field)
            n *= p
            continue
        g = gcd(f, df)
        h = f.exact_div(g)
        i = 1
        while not h.is_one():
            hh = gcd(g, h)
            factor = h.exact_div(hh)
            if factor.degree > 0:
                result.append((factor, i * n))
            g = g.exact_div(hh)
            h = hh
            i += 1
        if g.is_one():
            break
        # remaining g is a p-th power
        f = Polynomial(g.coeffs[::p], field)
        n *= p
    return result


def odd_part(P: Polynomial) -> Polynomial:
    """Monic product of the irreducible factors of odd multiplicity."""
    if P.is_zero():
        raise ValueError("odd part of the zero polynomial")
    out = Polynomial._raw((1,), P.field)
    for factor, mult in sqf_list(P):
        if mult % 2:
            out = out * factor
    return out


def roots(P: Polynomial):
    """Sorted distinct roots of P in GF(p)."""
    field = P.field
    p = field.p
    if P.is_zero():
        raise ValueError("every element is a root of the zero polynomial")
    if P.degree < 1:
        return []
    f = P.monic()
    found = []
    if f[0] == 0:
        found.append(0)
        while f[0] == 0:
            f = Polynomial._raw(f.coeffs[1:], field)
    if f.degree >= 1:
        t = Polynomial.x(field)
        # gcd with t^p - t keeps exactly the distinct linear factors
        _split_linear(gcd(f, t.powmod(p, f) - t), found)
    return sorted(set(found))


def _split_linear(g: Polynomial, out: list, shift: int = 0):
    field = g.field
    p = field.p
    if g.degree < 1:
        return
    if g.degree == 1:
        out.append(-g[0] * field.inv(g[1]) % p)
        return
    half = (p - 1) // 2
    c = shift
    while True:
        h = Polynomial((c, 1), field).powmod(half, g) - 1
        d = gcd(g, h) if h else g
        if 0 < d.degree < g.degree:
            _split_linear(d, out, c + 1)
            _split_linear(g.exact_div(d), out, c + 1)
            return
        c += 1


class RationalFunction:
    """Reduced fraction num/den with den monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = None, *, reduced: bool = False):
        if den is None:
            den = Polynomial._raw((1,), num.field)
        if num.field.p != den.field.p:
            raise ModulusMismatch("numerator and denominator in different fields")
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if not reduced:
            if num.is_zero():
                den = Polynomial._raw((1,), num.field)
            else:
                g = gcd(num, den)
                if not g.is_one():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            if den.lc != 1:
                inv = num.field.inv(den.lc)
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __reduce__(self):
        return (RationalFunction, (self.num, self.den))

    @property
    def field(self) -> PrimeModulus:
        return self.num.field

    @classmethod
    def constant(cls, c, field):
        return cls(Polynomial.constant(int(c), field), reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field.p != self.field.p:
                raise ModulusMismatch(f"GF({self.field.p}) vs GF({other.field.p})")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other, reduced=True) if other.field.p == self.field.p else _mismatch(self, other)
        if isinstance(other, (int, FieldElement)):
            return RationalFunction(Polynomial.constant(int(other), self.field), reduced=True)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)) and not isinstance(other, bool):
            k = int(other) % self.field.p
            if not k:
                return RationalFunction.constant(0, self.field)
            return RationalFunction(self.num * k, self.den, reduced=True)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # cross-cancel before multiplying to keep degrees small
        g1 = gcd(self.num, o.den) if self.num else None
        g2 = gcd(o.num, self.den) if o.num else None
        n1, d2 = (self.num.exact_div(g1), o.den.exact_div(g1)) if g1 is not None else (self.num, o.den)
        n2, d1 = (o.num.exact_div(g2), self.den.exact_div(g2)) if g2 is not None else (o.num, self.den)
        return RationalFunction(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return self * RationalFunction(o.den, o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(self.num ** e, self.den ** e, reduced=True)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({list(self.num.coeffs)}, {list(self.den.coeffs)}, GF({self.field.p}))"

    def __str__(self):
        if self.den.is_one():
            return f"({self.num})"
        return f"({self.num}) / ({self.den})"

    def __call__(self, t0) -> FieldElement:
        d = self.den(t0)
        if not d:
            raise DivisionByZero(f"pole at t = {int(t0)}")
        return self.num(t0) / d

    def eval_int(self, t0: int) -> int:
        p = self.field.p
        d = self.den.eval_int(t0)
        if not d:
            raise DivisionByZero(f"pole at t = {t0}")
        return self.num.eval_int(t0) * pow(d, -1, p) % p

    def substitute(self, inner: "RationalFunction") -> "RationalFunction":
        """self(inner(t)) for a rational inner function."""
        num = _homogenized(self.num, inner)
        den = _homogenized(self.den, inner)
        shift = self.den.degree - self.num.degree
        if shift > 0:
            num = num * inner.den ** shift
        elif shift < 0:
            den = den * inner.den ** (-shift)
        return RationalFunction(num, den)


def _homogenized(P: Polynomial, inner: RationalFunction) -> Polynomial:
    # P(n/d) * d^deg P
    n, d = inner.num, inner.den
    deg = P.degree
    out = Polynomial._raw((), P.field)
    for k, c in enumerate(P.coeffs):
        if c:
            out = out + (n ** k) * (d ** (deg - k)) * c
    return out


def _mismatch(a, b):
    raise ModulusMismatch(f"GF({a.field.p}) vs GF({b.field.p})")


def ratfun_sqrt(R: RationalFunction) -> RationalFunction:
    """Square root of a reduced rational function, canonical sign.

    Computed as exact_sqrt(num * den) / den.  On failure the NotASquare
    witness is odd_part(num * den).
    """
    if R.is_zero():
        return R
    s = exact_sqrt(R.num * R.den)
    return RationalFunction(s, R.den)


# -- coefficient expressions ----------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


def parse_coefficient(text, field: PrimeModulus, symbols: Mapping[str, int] = None) -> int:
    """Resolve a coefficient string to an element of GF(p).

    Accepts integers (decimal or 0x-hex), rational literals such as "4/27",
    the curve symbols "a" and "b", and + - * / with ^ or ** powers, e.g.
    "2*a/27" or "a^2".  Division is field division.
    """
    if isinstance(text, int) and not isinstance(text, bool):
        return text % field.p
    if not isinstance(text, str):
        raise SpecError(f"coefficient must be a string, got {text!r}")
    symbols = dict(symbols or {})
    src = text.strip().replace("^", "**")
    if not src:
        raise SpecError("empty coefficient")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError:
        raise SpecError(f"cannot parse coefficient {text!r}") from None
    p = field.p

    def ev(node) -> int:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return node.value % p
        if isinstance(node, ast.Name):
            if node.id not in symbols:
                raise SpecError(f"unknown symbol {node.id!r} in coefficient {text!r}")
            return int(symbols[node.id]) % p
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v % p if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int) and e.value >= 0):
                    raise SpecError(f"exponent must be a non-negative integer in {text!r}")
                return pow(ev(node.left), e.value, p)
            op = type(node.op)
            if op not in _BINOPS:
                raise SpecError(f"unsupported operator in {text!r}")
            left, right = ev(node.left), ev(node.right)
            if op is ast.Div:
                if right % p == 0:
                    raise SpecError(f"division by zero mod {p} in {text!r}")
                return left * pow(right, -1, p) % p
            return _BINOPS[op](left, right) % p
        raise SpecError(f"unsupported syntax in coefficient {text!r}")

    # 0x literals are handled by Python's parser already
    return ev(tree)


def poly_from_strings(coeffs: Sequence, field: PrimeModulus, symbols: Mapping[str, int] = None) -> Polynomial:
    return Polynomial([parse_coefficient(c, field, symbols) for c in coeffs], field)


def poly_to_json(P: Polynomial):
    return [str(c) for c in P.coeffs]


def poly_from_json(data, field: PrimeModulus) -> Polynomial:
    if not isinstance(data, list):
        raise SpecError("polynomial must be a JSON array of coefficient strings")
    return poly_from_strings(data, field)


def ratfun_to_json(R: RationalFunction):
    return {"num": poly_to_json(R.num), "den": poly_to_json(R.den)}


def ratfun_from_json(data, field: PrimeModulus) -> RationalFunction:
    if not isinstance(data, dict) or "num" not in data or "den" not in data:
        raise SpecError('rational function must be {"num": [...], "den": [...]}')
    den = poly_from_json(data["den"], field)
    if den.is_zero():
        raise SpecError("zero denominator")
    return RationalFunction(poly_from_json(data["num"], field), den)
