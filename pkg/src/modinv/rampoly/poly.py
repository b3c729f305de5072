"""Exact univariate and bivariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Union

Scalar = Union[int, Fraction]


def _frac(v: Scalar) -> Fraction:
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return Fraction(v)
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


class UPoly:
    """Univariate polynomial, coefficients stored low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        c = [_frac(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def const(cls, v: Scalar) -> "UPoly":
        return cls((v,))

    @classmethod
    def x(cls) -> "UPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.c) - 1

    @property
    def lc(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UPoly.const(other)
        return isinstance(other, UPoly) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"UPoly({self.to_str()})"

    def __call__(self, v: Scalar) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * v + a
        return acc

    @staticmethod
    def _coerce(o: "UPoly | Scalar") -> "UPoly":
        return o if isinstance(o, UPoly) else UPoly.const(o)

    def __add__(self, o: "UPoly | Scalar") -> "UPoly":
        o = self._coerce(o)
        n = max(len(self.c), len(o.c))
        return UPoly((self.c[k] if k < len(self.c) else 0) + (o.c[k] if k < len(o.c) else 0)
                     for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly(-a for a in self.c)

    def __sub__(self, o: "UPoly | Scalar") -> "UPoly":
        return self + (-self._coerce(o))

    def __rsub__(self, o: Scalar) -> "UPoly":
        return self._coerce(o) - self

    def __mul__(self, o: "UPoly | Scalar") -> "UPoly":
        o = self._coerce(o)
        if not self.c or not o.c:
            return UPoly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise ValueError("negative power")
        out, base = UPoly.const(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, o: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(rem) - len(o.c)
        if dq < 0:
            return UPoly(), self
        quo = [Fraction(0)] * (dq + 1)
        inv = 1 / o.lc
        for k in range(dq, -1, -1):
            q = rem[k + len(o.c) - 1] * inv
            quo[k] = q
            if q:
                for j, b in enumerate(o.c):
                    rem[k + j] -= q * b
        return UPoly(quo), UPoly(rem[: len(o.c) - 1])

    def __floordiv__(self, o: "UPoly") -> "UPoly":
        return divmod(self, o)[0]

    def __mod__(self, o: "UPoly") -> "UPoly":
        return divmod(self, o)[1]

    def exact_div(self, o: "UPoly") -> "UPoly":
        q, r = divmod(self, o)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "UPoly":
        if not self.c:
            return self
        return self * (1 / self.lc)

    def derivative(self) -> "UPoly":
        return UPoly(k * a for k, a in enumerate(self.c) if k)

    def shift(self, a: Scalar) -> "UPoly":
        """``p(z + a)``."""
        out = UPoly()
        lin = UPoly((a, 1))
        for coef in reversed(self.c):
            out = out * lin + coef
        return out

    def order(self) -> int:
        """Multiplicity of the root ``0``; the zero polynomial has no order."""
        if not self.c:
            raise ValueError("order of the zero polynomial")
        return next(k for k, a in enumerate(self.c) if a)

    def primitive(self) -> tuple[int, ...]:
        """Integer coefficients with content 1 and positive leading coefficient."""
        if not self.c:
            raise ValueError("zero polynomial has no primitive part")
        den = reduce(lcm, (a.denominator for a in self.c), 1)
        ints = [int(a * den) for a in self.c]
        g = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return tuple(v // g for v in ints)

    def to_str(self, var: str = "z") -> str:
        terms = [(Fraction(a), {var: k} if k else {}) for k, a in enumerate(self.c) if a]
        return _render(reversed(terms), (var,))

    def __str__(self) -> str:
        return self.to_str()


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(f: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime ``(factor, k)``
    with ``f = lc * prod factor**k``.  Constant factors are omitted."""
    if not f:
        raise ValueError("squarefree decomposition of the zero polynomial")
    out: list[tuple[UPoly, int]] = []
    df = f.derivative()
    a0 = poly_gcd(f, df)
    b = f.exact_div(a0)
    c = df.exact_div(a0)
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, k))
        k += 1
    return out


def squarefree_part(f: UPoly) -> UPoly:
    return reduce(lambda acc, fk: acc * fk[0], squarefree_decomposition(f), UPoly.const(1))


def _sturm_chain(f: UPoly) -> list[UPoly]:
    chain = [f, f.derivative()]
    while chain[-1].degree > 0:
        r = -(chain[-2] % chain[-1])
        if not r:
            break
        chain.append(r)
    return chain


def _variations(chain: list[UPoly], v: Fraction) -> int:
    signs = [s for s in (p(v) for p in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _squarefree_rational_roots(f: UPoly) -> list[Fraction]:
    if f.degree <= 0:
        return []
    if f.degree == 1:
        return [-f.c[0] / f.c[1]]
    ints = f.primitive()
    lead = abs(ints[-1])
    if ints[0] == 0:
        # peel off the root 0 so every remaining root is bounded away from it
        rest = UPoly(ints[1:])
        return sorted([Fraction(0)] + _squarefree_rational_roots(rest))
    g = UPoly(ints)
    bound = 1 + max(abs(Fraction(v, ints[-1])) for v in ints[:-1])
    eps = Fraction(1, 2 * lead * lead)
    chain = _sturm_chain(g)
    found: list[Fraction] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = _variations(chain, lo) - _variations(chain, hi)
        if n == 0:
            continue
        if n == 1 and hi - lo < eps:
            cand = ((lo + hi) / 2).limit_denominator(lead)
            if lo < cand < hi and g(cand) == 0:
                found.append(cand)
            continue
        mid = (lo + hi) / 2
        step = (hi - lo) / 7
        while g(mid) == 0:
            # keep split points off the roots; the root stays inside one half
            mid += step
            step /= 7
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(found)


def rational_roots(f: UPoly) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicity, in increasing order."""
    out = []
    for fac, k in squarefree_decomposition(f):
        out.extend((r, k) for r in _squarefree_rational_roots(fac))
    return sorted(out)


def split_rational(f: UPoly) -> tuple[list[tuple[Fraction, int]], list[tuple[UPoly, int]]]:
    """Separate rational roots from the leftover irrational factors.

    Returns ``(roots, leftovers)`` where ``leftovers`` lists monic
    squarefree factors without rational roots, with their multiplicity.
    """
    roots: list[tuple[Fraction, int]] = []
    rest: list[tuple[UPoly, int]] = []
    for fac, k in squarefree_decomposition(f):
        rs = _squarefree_rational_roots(fac)
        roots.extend((r, k) for r in rs)
        for r in rs:
            fac = fac.exact_div(UPoly((-r, 1)))
        if fac.degree > 0:
            rest.append((fac, k))
    return sorted(roots), rest


def interpolate(xs: list[Fraction], ys: list[Fraction]) -> UPoly:
    """Newton interpolation through distinct nodes."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = UPoly()
    for i in range(n - 1, -1, -1):
        out = out * UPoly((-xs[i], 1)) + coef[i]
    return out


def determinant(rows: list[list[Fraction]]) -> Fraction:
    """Fraction-exact Gaussian elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                for k in range(col, n):
                    m[r][k] -= f * m[col][k]
    return det


def sylvester_resultant(f: list[Fraction], g: list[Fraction]) -> Fraction:
    """Resultant of coefficient lists (high degree first) at their formal degrees."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    for k in range(n):
        rows.append([Fraction(0)] * k + list(f) + [Fraction(0)] * (size - m - 1 - k))
    for k in range(m):
        rows.append([Fraction(0)] * k + list(g) + [Fraction(0)] * (size - n - 1 - k))
    return determinant(rows)


Monomial = tuple[int, int]


class BiPoly:
    """Polynomial in ``x`` and ``t``: a map ``(i, j) -> coefficient of x^i t^j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        clean: dict[Monomial, Fraction] = {}
        for (i, j), v in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {(i, j)}")
            v = _frac(v)
            if v:
                clean[(int(i), int(j))] = v
        self.terms: dict[Monomial, Fraction] = clean

    @classmethod
    def const(cls, v: Scalar) -> "BiPoly":
        return cls({(0, 0): v})

    @classmethod
    def monomial(cls, i: int, j: int, c: Scalar = 1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def from_x_coeffs(cls, coeffs: Iterable[UPoly]) -> "BiPoly":
        return cls({(i, j): a for i, p in enumerate(coeffs) for j, a in enumerate(p.c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    @staticmethod
    def _coerce(o: "BiPoly | Scalar") -> "BiPoly":
        return o if isinstance(o, BiPoly) else BiPoly.const(o)

    def __add__(self, o: "BiPoly | Scalar") -> "BiPoly":
        o = self._coerce(o)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, o: "BiPoly | Scalar") -> "BiPoly":
        return self + (-self._coerce(o))

    def __rsub__(self, o: Scalar) -> "BiPoly":
        return self._coerce(o) - self

    def __mul__(self, o: "BiPoly | Scalar") -> "BiPoly":
        o = self._coerce(o)
        out: dict[Monomial, Fraction] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power")
        out, base = BiPoly.const(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: Scalar) -> "BiPoly":
        return BiPoly({k: v * c for k, v in self.terms.items()})

    @property
    def bidegree(self) -> tuple[int, int]:
        if not self.terms:
            raise ValueError("the zero polynomial has no bidegree")
        return max(i for i, _ in self.terms), max(j for _, j in self.terms)

    @property
    def order(self) -> int:
        """Lowest total degree of a term."""
        if not self.terms:
            raise ValueError("the zero polynomial has no order")
        return min(i + j for i, j in self.terms)

    def min_exponents(self) -> tuple[int, int]:
        if not self.terms:
            raise ValueError("the zero polynomial")
        return min(i for i, _ in self.terms), min(j for _, j in self.terms)

    def homogeneous_part(self, d: int) -> "BiPoly":
        return BiPoly({k: v for k, v in self.terms.items() if sum(k) == d})

    def div_monomial(self, i: int, j: int) -> "BiPoly":
        if any(a < i or b < j for a, b in self.terms):
            raise ArithmeticError(f"not divisible by x^{i} t^{j}")
        return BiPoly({(a - i, b - j): v for (a, b), v in self.terms.items()})

    def evaluate(self, x: Scalar, t: Scalar) -> Fraction:
        return sum((v * Fraction(x) ** i * Fraction(t) ** j for (i, j), v in self.terms.items()),
                   Fraction(0))

    def compose(self, xsub: "BiPoly", tsub: "BiPoly") -> "BiPoly":
        """``p(xsub, tsub)`` for polynomial substitutions."""
        if not self.terms:
            return BiPoly()
        a, b = self.bidegree
        xp = [BiPoly.const(1)]
        for _ in range(a):
            xp.append(xp[-1] * xsub)
        tp = [BiPoly.const(1)]
        for _ in range(b):
            tp.append(tp[-1] * tsub)
        out = BiPoly()
        for (i, j), v in self.terms.items():
            out = out + (xp[i] * tp[j]).scale(v)
        return out

    def translate(self, dx: Scalar, dt: Scalar) -> "BiPoly":
        """``p(x + dx, t + dt)``."""
        return self.compose(X + dx, T + dt)

    def diff_x(self) -> "BiPoly":
        return BiPoly({(i - 1, j): i * v for (i, j), v in self.terms.items() if i})

    def diff_t(self) -> "BiPoly":
        return BiPoly({(i, j - 1): j * v for (i, j), v in self.terms.items() if j})

    def x_coeffs(self) -> list[UPoly]:
        """Coefficients as polynomials in ``t``, indexed by the power of ``x``."""
        if not self.terms:
            return []
        a, b = self.bidegree
        rows = [[Fraction(0)] * (b + 1) for _ in range(a + 1)]
        for (i, j), v in self.terms.items():
            rows[i][j] = v
        return [UPoly(r) for r in rows]

    def at_t(self, t0: Scalar) -> UPoly:
        """``p(x, t0)`` as a polynomial in ``x``."""
        return UPoly(c(t0) for c in self.x_coeffs())

    def at_x(self, x0: Scalar) -> UPoly:
        """``p(x0, t)`` as a polynomial in ``t``."""
        if not self.terms:
            return UPoly()
        b = self.bidegree[1]
        out = [Fraction(0)] * (b + 1)
        for (i, j), v in self.terms.items():
            out[j] += v * Fraction(x0) ** i
        return UPoly(out)

    def to_str(self, xvar: str = "x", tvar: str = "t") -> str:
        items = sorted(self.terms.items(), key=lambda kv: (kv[0][1], -kv[0][0]))
        return _render(((v, {xvar: i, tvar: j}) for (i, j), v in items), (xvar, tvar))

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"BiPoly({self.to_str()!r})"


def _render(terms: Iterable[tuple[Fraction, dict[str, int]]], order: tuple[str, ...]) -> str:
    parts: list[str] = []
    for coef, powers in terms:
        mono = "*".join(
            v if powers.get(v, 0) == 1 else f"{v}^{powers[v]}"
            for v in order if powers.get(v, 0)
        )
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts) if parts else "0"


X = BiPoly.monomial(1, 0)
T = BiPoly.monomial(0, 1)
