"""Exact coefficient arithmetic.

Three coefficient domains cover every algebra in the catalog:

* plain rationals,
* cyclotomic fields Q(zeta_p) for the root-of-unity examples, stored in
  canonical form modulo the p-th cyclotomic polynomial Phi_p,
* the ring Q(q)[t]/(t^(T+1)) for the countably-infinite Borel examples,
  where t absorbs the paper-level analytic constant and q is a free
  transcendental.

Field objects operate on raw payloads (hashable tuples / mpq) so the sparse
algebra layers can avoid wrapper overhead; the `Scalar` wrapper is the
public-facing value type.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import (
    FieldMismatch,
    InvalidArgument,
    InvalidFieldParameter,
    NonInvertibleScalar,
    SchemaError,
)

# ---------------------------------------------------------------------------
# integer polynomials in q, dense low-to-high tuples; () is the zero poly
# ---------------------------------------------------------------------------


def _ptrim(cs) -> tuple:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _pneg(a: tuple) -> tuple:
    return tuple(-c for c in a)


def _psub(a: tuple, b: tuple) -> tuple:
    return _padd(a, _pneg(b))


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _ptrim(out)


def _pcontent(a: tuple) -> int:
    g = 0
    for c in a:
        g = _igcd(g, c)
        if g == 1:
            break
    return g


def _igcd(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


def _pprimitive(a: tuple) -> tuple:
    c = _pcontent(a)
    if c in (0, 1):
        return a
    return tuple(x // c for x in a)


def _pgcd(a: tuple, b: tuple) -> tuple:
    """Primitive gcd in Z[q] via monic Euclid over Q."""
    if not a:
        return _pprimitive(b)
    if not b:
        return _pprimitive(a)
    fa = [mpq(c) for c in a]
    fb = [mpq(c) for c in b]
    while fb:
        if len(fa) < len(fb):
            fa, fb = fb, fa
            continue
        # fa -= lead(fa)/lead(fb) * q^(da-db) * fb
        while fa and len(fa) >= len(fb):
            k = len(fa) - len(fb)
            r = fa[-1] / fb[-1]
            for i, c in enumerate(fb):
                fa[i + k] -= r * c
            while fa and fa[-1] == 0:
                fa.pop()
        fa, fb = fb, fa
    # fa is the gcd over Q; clear denominators and take the primitive part
    den = 1
    for c in fa:
        den = den * c.denominator // _igcd(den, c.denominator)
    ints = _ptrim([int(c * den) for c in fa])
    ints = _pprimitive(ints)
    if ints and ints[-1] < 0:
        ints = _pneg(ints)
    return ints


def _pdiv_exact(a: tuple, b: tuple) -> tuple:
    """Exact division a/b in Q[q]; raises if not exact (internal use)."""
    if not a:
        return ()
    fa = [mpq(c) for c in a]
    out = [mpq(0)] * (len(a) - len(b) + 1)
    while fa and len(fa) >= len(b):
        k = len(fa) - len(b)
        r = fa[-1] / b[-1]
        out[k] = r
        for i, c in enumerate(b):
            fa[i + k] -= r * c
        while fa and fa[-1] == 0:
            fa.pop()
    if fa:
        raise ArithmeticError("inexact polynomial division")
    assert all(c.denominator == 1 for c in out)
    return _ptrim([int(c) for c in out])


# ---------------------------------------------------------------------------
# rational functions num/den with integer polys, canonical reduced form
# ---------------------------------------------------------------------------

RF_ZERO = ((), (1,))
RF_ONE = ((1,), (1,))


def rf_make(num: tuple, den: tuple):
    """Canonical fraction: reduced, den primitive-coprime with positive lead."""
    num, den = _ptrim(num), _ptrim(den)
    if not den:
        raise ZeroDivisionError("zero denominator polynomial")
    if not num:
        return RF_ZERO
    g = _pgcd(num, den)
    if len(g) > 1 or (g and g[0] != 1):
        num = _pdiv_exact(num, g)
        den = _pdiv_exact(den, g)
    cn, cd = _pcontent(num), _pcontent(den)
    c = _igcd(cn, cd)
    if c > 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    if den[-1] < 0:
        num, den = _pneg(num), _pneg(den)
    return (num, den)


def rf_add(x, y):
    return rf_make(_padd(_pmul(x[0], y[1]), _pmul(y[0], x[1])), _pmul(x[1], y[1]))


def rf_neg(x):
    return (_pneg(x[0]), x[1])


def rf_sub(x, y):
    return rf_add(x, rf_neg(y))


def rf_mul(x, y):
    if not x[0] or not y[0]:
        return RF_ZERO
    return rf_make(_pmul(x[0], y[0]), _pmul(x[1], y[1]))


def rf_inv(x):
    if not x[0]:
        raise NonInvertibleScalar("division by zero rational function")
    return rf_make(x[1], x[0])


def rf_from_int(n: int):
    return ((n,), (1,)) if n else RF_ZERO


def rf_from_mpq(r) -> tuple:
    r = mpq(r)
    n, d = int(r.numerator), int(r.denominator)
    return ((n,), (d,)) if n else RF_ZERO


# ---------------------------------------------------------------------------
# scalar fields
# ---------------------------------------------------------------------------


class ScalarField:
    """Common interface: operations on raw payloads."""

    kind = "abstract"

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        raise NotImplementedError

    def from_mpq(self, r):
        raise NotImplementedError

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one()
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def scalar(self, a) -> "Scalar":
        return Scalar(self, a)

    def __ne__(self, other):
        return not self.__eq__(other)


class RationalField(ScalarField):
    kind = "rational"

    def zero(self):
        return mpq(0)

    def one(self):
        return mpq(1)

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise NonInvertibleScalar("1/0")
        return 1 / a

    def from_int(self, n):
        return mpq(n)

    def from_mpq(self, r):
        return mpq(r)

    def format(self, a):
        return str(a)

    def parse(self, s):
        return _parse_rational(s)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "Q"


class CyclotomicField(ScalarField):
    """Q(zeta_p), elements as coefficient vectors of 1, z, ..., z^(p-2)."""

    kind = "cyclotomic"

    def __init__(self, p: int):
        if p < 3 or p % 2 == 0:
            raise InvalidFieldParameter(f"p must be odd and >= 3, got {p}")
        self.p = p
        self._zero = (mpq(0),) * (p - 1)
        one = [mpq(0)] * (p - 1)
        one[0] = mpq(1)
        self._one = tuple(one)
        self._qpow = {}

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mul(self, a, b):
        if self.p == 3:
            a0, a1 = a
            b0, b1 = b
            a1b1 = a1 * b1
            return (a0 * b0 - a1b1, a0 * b1 + a1 * b0 - a1b1)
        p = self.p
        out = [mpq(0)] * (2 * p - 3)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return self._reduce_list(out)

    def _reduce_list(self, cs: list):
        """Reduce coefficients of 1..z^k (any k) modulo Phi_p."""
        p = self.p
        # fold z^k for k >= p via z^p = 1
        if len(cs) > p:
            folded = [mpq(0)] * p
            for k, c in enumerate(cs):
                folded[k % p] += c
            cs = folded
        else:
            cs = list(cs) + [mpq(0)] * (p - len(cs))
        # substitute z^(p-1) = -(1 + z + ... + z^(p-2))
        top = cs[p - 1]
        if top:
            for i in range(p - 1):
                cs[i] -= top
        return tuple(cs[: p - 1])

    def reduce(self, raw: Sequence) -> tuple:
        return self._reduce_list([mpq(c) for c in raw])

    def q(self):
        """The distinguished primitive root zeta_p."""
        return self.q_power(1)

    def q_power(self, e: int):
        e %= self.p
        got = self._qpow.get(e)
        if got is None:
            cs = [mpq(0)] * (e + 1)
            cs[e] = mpq(1)
            got = self._reduce_list(cs)
            self._qpow[e] = got
        return got

    def inv(self, a):
        """Invert via the linear system a*x = 1 over Q."""
        if self.is_zero(a):
            raise NonInvertibleScalar("1/0 in cyclotomic field")
        p = self.p
        n = p - 1
        # columns: a * z^j reduced; solve sum_j x_j (a z^j) = 1
        cols = []
        col = a
        for _ in range(n):
            cols.append(col)
            col = self.mul(col, self.q_power(1))
        # Gaussian elimination on the n x n system
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        rhs = [mpq(1)] + [mpq(0)] * (n - 1)
        for c in range(n):
            piv = next((r for r in range(c, n) if mat[r][c] != 0), None)
            if piv is None:
                raise NonInvertibleScalar("singular cyclotomic element")
            mat[c], mat[piv] = mat[piv], mat[c]
            rhs[c], rhs[piv] = rhs[piv], rhs[c]
            inv = 1 / mat[c][c]
            mat[c] = [x * inv for x in mat[c]]
            rhs[c] *= inv
            for r in range(n):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
                    rhs[r] -= f * rhs[c]
        return tuple(rhs)

    def from_int(self, n):
        out = [mpq(0)] * (self.p - 1)
        out[0] = mpq(n)
        return tuple(out)

    def from_mpq(self, r):
        out = [mpq(0)] * (self.p - 1)
        out[0] = mpq(r)
        return tuple(out)

    def format(self, a):
        return "cyc(%d)[%s]" % (self.p, ",".join(str(c) for c in a))

    def parse(self, s):
        m = re.fullmatch(r"cyc\((\d+)\)\[([^\]]*)\]", s.strip())
        if not m:
            raise SchemaError(f"bad cyclotomic scalar: {s!r}")
        p = int(m.group(1))
        if p != self.p:
            raise FieldMismatch(f"cyclotomic order {p} != {self.p}")
        coeffs = [_parse_rational(c) for c in m.group(2).split(",")]
        if len(coeffs) != self.p - 1:
            raise SchemaError(f"expected {self.p - 1} coefficients in {s!r}")
        return tuple(coeffs)

    def embed_complex(self, a) -> complex:
        """Float embedding zeta = exp(2 pi i / p); test-oracle use only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.p)
        return sum(complex(c) * z**k for k, c in enumerate(a))

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.p == self.p

    def __hash__(self):
        return hash(("cyclotomic", self.p))

    def __repr__(self):
        return f"Q(zeta_{self.p})"


class TruncatedSeriesField(ScalarField):
    """Q(q)[t]/(t^(T+1)): tuples of T+1 rational functions in q."""

    kind = "truncratfun"

    def __init__(self, T: int):
        if T < 0:
            raise InvalidFieldParameter(f"truncation order must be >= 0, got {T}")
        self.T = T
        self._zero = (RF_ZERO,) * (T + 1)
        self._one = (RF_ONE,) + (RF_ZERO,) * T

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def is_zero(self, a):
        return all(c == RF_ZERO for c in a)

    def add(self, a, b):
        return tuple(rf_add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(rf_neg(x) for x in a)

    def sub(self, a, b):
        return tuple(rf_sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        T = self.T
        out = [RF_ZERO] * (T + 1)
        for i, ca in enumerate(a):
            if ca != RF_ZERO:
                for j in range(T + 1 - i):
                    cb = b[j]
                    if cb != RF_ZERO:
                        out[i + j] = rf_add(out[i + j], rf_mul(ca, cb))
        return tuple(out)

    def inv(self, a):
        if a[0] == RF_ZERO:
            raise NonInvertibleScalar("t-order > 0, not a unit of the quotient ring")
        T = self.T
        i0 = rf_inv(a[0])
        out = [i0] + [RF_ZERO] * T
        for k in range(1, T + 1):
            acc = RF_ZERO
            for j in range(1, k + 1):
                if a[j] != RF_ZERO and out[k - j] != RF_ZERO:
                    acc = rf_add(acc, rf_mul(a[j], out[k - j]))
            out[k] = rf_neg(rf_mul(i0, acc))
        return tuple(out)

    def from_int(self, n):
        return (rf_from_int(n),) + (RF_ZERO,) * self.T

    def from_mpq(self, r):
        return (rf_from_mpq(r),) + (RF_ZERO,) * self.T

    def from_ratfun(self, rf, t_power: int = 0):
        if t_power > self.T:
            return self._zero
        out = [RF_ZERO] * (self.T + 1)
        out[t_power] = rf
        return tuple(out)

    def q(self):
        return self.from_ratfun(((0, 1), (1,)))

    def t(self):
        return self.from_ratfun(RF_ONE, 1)

    def min_t_order(self, a) -> int:
        """Smallest k with a nonzero t^k term; T+1 for zero."""
        for k, c in enumerate(a):
            if c != RF_ZERO:
                return k
        return self.T + 1

    def eval_q(self, a, qval):
        """Evaluate all terms at a rational q; test-oracle use only."""
        out = []
        for num, den in a:
            nv = sum(mpq(c) * qval**k for k, c in enumerate(num))
            dv = sum(mpq(c) * qval**k for k, c in enumerate(den))
            out.append(nv / dv)
        return tuple(out)

    def format(self, a):
        parts = []
        for k, rf in enumerate(a):
            if rf != RF_ZERO:
                parts.append("%d:%s;" % (k, _format_ratfun(rf)))
        return "trf(%d){%s}" % (self.T, "".join(parts))

    def parse(self, s):
        m = re.fullmatch(r"trf\((\d+)\)\{(.*)\}", s.strip())
        if not m:
            raise SchemaError(f"bad truncated series scalar: {s!r}")
        T = int(m.group(1))
        if T != self.T:
            raise FieldMismatch(f"truncation order {T} != {self.T}")
        out = [RF_ZERO] * (self.T + 1)
        body = m.group(2)
        if body:
            for item in body.rstrip(";").split(";"):
                k_str, rf_str = item.split(":", 1)
                k = int(k_str)
                if k > self.T or k < 0:
                    raise SchemaError(f"t-power {k} out of range in {s!r}")
                out[k] = _parse_ratfun(rf_str)
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, TruncatedSeriesField) and other.T == self.T

    def __hash__(self):
        return hash(("truncratfun", self.T))

    def __repr__(self):
        return f"Q(q)[t]/(t^{self.T + 1})"


# ---------------------------------------------------------------------------
# scalar text grammar
# ---------------------------------------------------------------------------


def _parse_rational(s: str):
    s = s.strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", s):
        raise SchemaError(f"bad rational: {s!r}")
    r = mpq(s)
    return r


def _format_ratfun(rf) -> str:
    num, den = rf
    fmt = lambda p: ",".join(str(c) for c in p) if p else "0"
    return "(%s)/(%s)" % (fmt(num), fmt(den))


def _parse_ratfun(s: str):
    m = re.fullmatch(r"\(([^()]*)\)/\(([^()]*)\)", s.strip())
    if not m:
        raise SchemaError(f"bad rational function: {s!r}")

    def poly(txt):
        txt = txt.strip()
        if txt == "0" or txt == "":
            return ()
        return _ptrim([int(c) for c in txt.split(",")])

    return rf_make(poly(m.group(1)), poly(m.group(2)))


def parse_scalar(field: ScalarField, s: str):
    """Parse a payload in the given field from its canonical text form."""
    return field.parse(s) if field.kind != "rational" else _parse_rational(s)


def format_scalar(field: ScalarField, a) -> str:
    return field.format(a)


# ---------------------------------------------------------------------------
# public value wrapper and spec-level operations
# ---------------------------------------------------------------------------


class Scalar:
    """A field element tied to its field; exact arithmetic with mismatch checks."""

    __slots__ = ("field", "value")

    def __init__(self, field: ScalarField, value):
        self.field = field
        self.value = value

    def _check(self, other: "Scalar"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return Scalar(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        return (
            isinstance(other, Scalar)
            and self.field == other.field
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.field, self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __repr__(self):
        return self.field.format(self.value)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InvalidArgument(f"unknown op {op!r}")


def cyclo_reduce(raw_coeffs: Sequence, p: int) -> Scalar:
    """Canonical representative of a zeta-polynomial modulo Phi_p."""
    field = CyclotomicField(p)
    return Scalar(field, field.reduce(raw_coeffs))


def qpochhammer_payload(field: ScalarField, n: int, base):
    if n < 0:
        raise InvalidArgument("q-Pochhammer needs n >= 0")
    out = field.one()
    power = field.one()
    for _ in range(n):
        power = field.mul(power, base)
        out = field.mul(out, field.sub(field.one(), power))
    return out


def qpochhammer(n: int, base: Scalar) -> Scalar:
    """(x)_n = (1 - x)(1 - x^2) ... (1 - x^n)."""
    return Scalar(base.field, qpochhammer_payload(base.field, n, base.value))


def q_binomial_payload(field: ScalarField, n: int, k: int, base):
    if not 0 <= k <= n:
        raise InvalidArgument(f"need 0 <= k <= n, got n={n} k={k}")
    num = qpochhammer_payload(field, n, base)
    den = field.mul(
        qpochhammer_payload(field, k, base), qpochhammer_payload(field, n - k, base)
    )
    return field.div(num, den)


def q_binomial(n: int, k: int, base: Scalar) -> Scalar:
    """Gaussian binomial (n over k) with the given base."""
    return Scalar(base.field, q_binomial_payload(base.field, n, k, base.value))


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def field_from_descriptor(desc: dict) -> ScalarField:
    """Build a field from the file-format descriptor {"kind": ..., "p"/"T": ...}."""
    kind = desc.get("kind")
    if kind == "rational":
        return RationalField()
    if kind == "cyclotomic":
        return CyclotomicField(int(desc["p"]))
    if kind == "truncratfun":
        return TruncatedSeriesField(int(desc["T"]))
    raise SchemaError(f"unknown field kind {kind!r}")


def field_descriptor(field: ScalarField) -> dict:
    if field.kind == "rational":
        return {"kind": "rational"}
    if field.kind == "cyclotomic":
        return {"kind": "cyclotomic", "p": field.p}
    if field.kind == "truncratfun":
        return {"kind": "truncratfun", "T": field.T}
    raise SchemaError(f"unknown field {field!r}")
