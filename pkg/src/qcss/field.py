"""Arithmetic in GF(p^n), the trace map, characters and Gauss sums.

Field elements are integers in ``[0, q)``: the polynomial
``c_0 + c_1 x + ... + c_{n-1} x^{n-1}`` is packed as ``sum(c_i * p**i)``.
Polynomials over GF(p) are coefficient tuples, lowest degree first.

The modulus is chosen deterministically: the monic degree-n polynomial
with the smallest packed value (coefficients read from the top degree
down) that is irreducible and has the class of ``x`` as a primitive
element. For GF(16) this gives x^4 + x + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

DEFAULT_MAX_ORDER = 2**20


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of m, ascending."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p**n; raises if q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = factors[0]
    n = round(math.log(q, p))
    if p**n != q:
        raise ValueError(f"{q} is not a prime power")
    return p, n


# -- polynomials over GF(p), coefficient tuples lowest degree first -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, m, p: int) -> list[int]:
    a = _trim([c % p for c in a])
    m = _trim(list(m))
    if not m:
        raise ZeroDivisionError("polynomial modulus is zero")
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        c = a[-1] * inv % p
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def poly_mulmod(a, b, m, p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_mod(out, m, p)


def poly_powmod(a, e: int, m, p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, m, p)
        base = poly_mulmod(base, base, m, p)
        e >>= 1
    return poly_mod(result, m, p)


def poly_sub(a, b, p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def poly_gcd(a, b, p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _monic_polys(degree: int, p: int):
    for low in product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible(f, p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    Degrees up to 4 are checked by trial division by every monic
    polynomial of degree at most n/2; larger degrees use Rabin's test.
    """
    f = _trim([c % p for c in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if n <= 4:
        for d in range(1, n // 2 + 1):
            for g in _monic_polys(d, p):
                if not poly_mod(f, g, p):
                    return False
        return True
    x = [0, 1]
    if poly_sub(poly_powmod(x, p**n, f, p), x, p):
        return False
    for r in prime_factors(n):
        h = poly_sub(poly_powmod(x, p ** (n // r), f, p), x, p)
        if len(poly_gcd(f, h, p)) != 1:
            return False
    return True


def _x_is_primitive(f, p: int, n: int) -> bool:
    order = p**n - 1
    for r in prime_factors(order):
        if poly_powmod([0, 1], order // r, f, p) == [1]:
            return False
    # x == 1 when order is 1 (GF(2)); the loop above has nothing to check then
    return poly_powmod([0, 1], order, f, p) == [1]


def find_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree n with x primitive."""
    for f in _monic_polys(n, p):
        if f[0] == 0:
            continue
        if is_irreducible(f, p) and _x_is_primitive(f, p, n):
            return tuple(f)
    raise RuntimeError(f"no primitive polynomial of degree {n} over GF({p})")


# -- the field itself ---------------------------------------------------------

def _digits(v: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        v, c = divmod(v, p)
        out.append(c)
    return out


def _pack(digits, p: int) -> int:
    v = 0
    for c in reversed(digits):
        v = v * p + c
    return v


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FieldContext:
    """GF(p^n) with a fixed modulus, primitive element and lookup tables.

    ``exp[j]`` is alpha**j for j in [0, q-2]; ``dlog`` inverts it (with
    ``dlog[0] == -1``); ``trace[x]`` is Tr(x) as an integer in [0, p).
    """

    p: int
    n: int
    modulus: tuple[int, ...]
    alpha: int
    exp: np.ndarray
    dlog: np.ndarray
    trace: np.ndarray

    @property
    def q(self) -> int:
        return self.p**self.n

    def digits(self, x: int) -> list[int]:
        return _digits(x, self.p, self.n)

    def pack(self, digits) -> int:
        return _pack([c % self.p for c in digits], self.p)

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        p = self.p
        return _pack([(a + b) % p for a, b in zip(self.digits(x), self.digits(y))], p)

    def neg(self, x: int) -> int:
        return self.pack([-c for c in self.digits(x)])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(self.dlog[x] + self.dlog[y]) % (self.q - 1)])

    def power(self, x: int, e: int) -> int:
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0
        return int(self.exp[(int(self.dlog[x]) * e) % (self.q - 1)])

    def alpha_power(self, j: int) -> int:
        return int(self.exp[j % (self.q - 1)])

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("zero has no discrete logarithm")
        return int(self.dlog[x])

    def elements(self) -> range:
        return range(self.q)

    def check_element(self, x: int) -> None:
        if not 0 <= x < self.q:
            raise ValueError(f"{x} is not an element of GF({self.q})")

    def primitive_elements(self) -> list[int]:
        """All generators of the multiplicative group, ordered by exponent of alpha."""
        m = self.q - 1
        return [self.alpha_power(k) for k in range(max(m, 1)) if math.gcd(k, m) == 1]

    def with_primitive(self, beta: int) -> "FieldContext":
        """Same field and modulus, relabelled with ``beta`` as the primitive element."""
        self.check_element(beta)
        if beta == 0 or math.gcd(self.log(beta), self.q - 1) != 1:
            raise ValueError(f"{beta} is not a primitive element of GF({self.q})")
        k = self.log(beta)
        m = self.q - 1
        exp = self.exp[(np.arange(m) * k) % m].copy()
        dlog = np.full(self.q, -1, dtype=np.int64)
        dlog[exp] = np.arange(m)
        return FieldContext(self.p, self.n, self.modulus, beta, _readonly(exp),
                            _readonly(dlog), self.trace)


def _times_x_table(p: int, n: int, modulus) -> callable:
    top = p ** (n - 1)
    # reduction vectors: c * (x^n mod f) for each leading digit c
    red = [[(-c * mc) % p for mc in modulus[:n]] for c in range(p)]
    red_packed = [_pack(r, p) for r in red]

    if p == 2:
        def step(v: int) -> int:
            hi, lo = divmod(v, top)
            return (lo << 1) ^ (red_packed[1] if hi else 0)
        return step

    def step(v: int) -> int:
        hi, lo = divmod(v, top)
        shifted = _digits(lo * p, p, n)
        if hi:
            shifted = [(a + b) % p for a, b in zip(shifted, red[hi])]
        return _pack(shifted, p)
    return step


def build_field(p: int, n: int, max_order: int = DEFAULT_MAX_ORDER) -> FieldContext:
    """Build GF(p^n) with the deterministic modulus and alpha = class of x."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if n < 1:
        raise ValueError(f"degree n={n} must be at least 1")
    q = p**n
    if q > max_order:
        raise ValueError(f"q={q} exceeds the cap {max_order}")

    modulus = find_modulus(p, n)
    m = q - 1
    if n == 1:
        alpha = (-modulus[0]) % p
        exp = np.empty(m, dtype=np.int64)
        v = 1
        for j in range(m):
            exp[j] = v
            v = v * alpha % p
    else:
        alpha = p  # packed form of x
        step = _times_x_table(p, n, modulus)
        exp = np.empty(m, dtype=np.int64)
        v = 1
        for j in range(m):
            exp[j] = v
            v = step(v)
    if len(set(exp.tolist())) != m:
        raise RuntimeError("alpha does not generate the multiplicative group")
    dlog = np.full(q, -1, dtype=np.int64)
    dlog[exp] = np.arange(m)

    # Tr is GF(p)-linear: evaluate it on the basis 1, x, ..., x^{n-1} from the
    # defining power sum and extend to every element through its digits.
    basis_trace = []
    for i in range(n):
        xi = int(exp[i % m]) if n > 1 else 1
        basis_trace.append(_trace_power_sum(xi, p, n, exp, dlog))
    digit_mat = np.array([_digits(x, p, n) for x in range(q)], dtype=np.int64)
    trace = (digit_mat @ np.array(basis_trace, dtype=np.int64)) % p

    return FieldContext(p, n, modulus, int(alpha), _readonly(exp), _readonly(dlog),
                        _readonly(trace))


def _trace_power_sum(x: int, p: int, n: int, exp, dlog) -> int:
    """x + x^p + ... + x^(p^(n-1)), which lands in the prime subfield."""
    if x == 0:
        return 0
    m = p**n - 1
    total = [0] * n
    j = int(dlog[x])
    for k in range(n):
        y = int(exp[(j * p**k) % m])
        total = [(a + b) % p for a, b in zip(total, _digits(y, p, n))]
    if any(total[1:]):
        raise RuntimeError("trace left the prime field")
    return total[0]


def trace_by_definition(ctx: FieldContext, x: int) -> int:
    """Trace via the Frobenius power sum, without the precomputed table."""
    ctx.check_element(x)
    return _trace_power_sum(x, ctx.p, ctx.n, ctx.exp, ctx.dlog)


def additive_char(ctx: FieldContext, a: int, x: int) -> int:
    """Exponent Tr(a*x) in [0, p); the character value is xi_p ** result."""
    ctx.check_element(a)
    ctx.check_element(x)
    return int(ctx.trace[ctx.mul(a, x)])


def multiplicative_char(ctx: FieldContext, i: int, elem: int) -> int:
    """Exponent i*log(elem) mod (q-1); the character value is xi_{q-1} ** result."""
    ctx.check_element(elem)
    if elem == 0:
        raise ValueError("multiplicative characters are undefined at 0")
    return (i * ctx.log(elem)) % (ctx.q - 1)


def gauss_sum(ctx: FieldContext, i: int, a: int) -> complex:
    """Sum over nonzero x of phi_i(x) * chi_a(x)."""
    ctx.check_element(a)
    q, p = ctx.q, ctx.p
    j = np.arange(q - 1)
    if a == 0:
        add = np.zeros(q - 1, dtype=np.int64)
    else:
        add = ctx.trace[ctx.exp[(ctx.dlog[a] + j) % (q - 1)]]
    mult = (i * j) % (q - 1)
    phases = mult / (q - 1) + add / p
    return complex(np.exp(2j * np.pi * phases).sum())
