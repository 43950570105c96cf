"""Finite fields GF(q) for small prime powers q.

Elements are plain integers in ``range(q)``.  For a prime field the integer is
the residue; for an extension field GF(p^m) it is the base-p packing
``c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` of the coefficient vector in the power
basis ``1, x, ..., x^{m-1}``.  All operations go through lookup tables that are
built once per field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

MAX_Q = 32

# order -> coefficients c_0..c_m (low to high) of a monic primitive polynomial
# over the prime field.  Orders above MAX_Q are only used for Singer cycles.
PRIMITIVE_POLYS: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 1, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 1, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    64: (1, 1, 0, 0, 0, 0, 1),
    128: (1, 1, 0, 0, 0, 0, 0, 1),
    256: (1, 0, 1, 1, 1, 0, 0, 0, 1),
    512: (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
}


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for the sizes used here."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, m),) = fac.items()
    return p, m


@dataclass(frozen=True)
class FieldSpec:
    q: int
    p: int
    m: int
    modulus: tuple[int, ...]
    add_table: bytes = field(repr=False, compare=False)
    mul_table: bytes = field(repr=False, compare=False)
    neg_table: bytes = field(repr=False, compare=False)
    inv_table: bytes = field(repr=False, compare=False)

    @property
    def tables(self) -> tuple:
        """Argument bundle passed to the compiled/pure kernels."""
        return (self.q, self.add_table, self.mul_table, self.neg_table, self.inv_table)

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a * self.q + b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a * self.q + self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a * self.q + b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def element_str(self, a: int) -> str:
        """Human-readable polynomial form, e.g. ``x+1`` in GF(4)."""
        if self.m == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(_digits(a, self.p, self.m)))):
            if not c:
                continue
            mono = {0: "", 1: "x"}.get(i, f"x^{i}")
            coef = "" if c == 1 and mono else str(c)
            terms.append(coef + ("*" if coef and mono else "") + mono)
        return "+".join(terms) or "0"


def _digits(a: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _pack(digits, p: int) -> int:
    v = 0
    for c in reversed(digits):
        v = v * p + c
    return v


def _prime_tables(p: int):
    add = bytes((a + b) % p for a in range(p) for b in range(p))
    mul = bytes((a * b) % p for a in range(p) for b in range(p))
    neg = bytes((-a) % p for a in range(p))
    inv = bytes([0] + [pow(a, p - 2, p) for a in range(1, p)])
    return add, mul, neg, inv


def _extension_tables(p: int, m: int, modulus: tuple[int, ...]):
    q = p**m
    # log/antilog tables from the powers of x
    antilog = []
    cur = [1] + [0] * (m - 1)
    for _ in range(q - 1):
        antilog.append(_pack(cur, p))
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [(c - top * modulus[i]) % p for i, c in enumerate(cur)]
    log = [0] * q
    for i, a in enumerate(antilog):
        log[a] = i
    add = bytearray(q * q)
    mul = bytearray(q * q)
    for a in range(q):
        da = _digits(a, p, m)
        for b in range(q):
            db = _digits(b, p, m)
            add[a * q + b] = _pack([(x + y) % p for x, y in zip(da, db)], p)
            if a and b:
                mul[a * q + b] = antilog[(log[a] + log[b]) % (q - 1)]
    neg = bytes(_pack([(-x) % p for x in _digits(a, p, m)], p) for a in range(q))
    inv = bytes([0] + [antilog[(-log[a]) % (q - 1)] for a in range(1, q)])
    return bytes(add), bytes(mul), neg, inv


def _check_modulus(p: int, m: int, modulus) -> tuple[int, ...]:
    modulus = tuple(int(c) for c in modulus)
    if len(modulus) != m + 1 or modulus[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {m}")
    if any(not 0 <= c < p for c in modulus):
        raise ValueError(f"modulus coefficients must lie in [0, {p})")
    if not is_primitive(make_field(p), modulus):
        raise ValueError(f"modulus {list(modulus)} is not primitive over GF({p})")
    return modulus


def make_field(q: int, modulus=None, overrides: dict | None = None) -> FieldSpec:
    """Build GF(q).

    ``modulus`` (coefficients low to high) selects the representation of an
    extension field; without it the entry in ``overrides`` or the built-in
    table is used.
    """
    p, m = prime_power(q)
    if q > MAX_Q:
        raise ValueError(f"GF({q}) exceeds the supported bound q <= {MAX_Q}")
    if m == 1:
        if modulus:
            raise ValueError("a prime field takes no modulus")
        return _prime_field(p)
    if modulus is None:
        modulus = (overrides or {}).get(q) or PRIMITIVE_POLYS[q]
    return _extension_field(p, m, _check_modulus(p, m, modulus))


@lru_cache(maxsize=None)
def _prime_field(p: int) -> FieldSpec:
    return FieldSpec(p, p, 1, (), *_prime_tables(p))


@lru_cache(maxsize=None)
def _extension_field(p: int, m: int, modulus: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p**m, p, m, modulus, *_extension_tables(p, m, modulus))


# --- polynomials over a FieldSpec, coefficient lists low to high -------------


def _poly_mulmod(F: FieldSpec, a, b, f):
    d = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = F.add(prod[i + j], F.mul(x, y))
    # f is monic
    for i in range(len(prod) - 1, d - 1, -1):
        c = prod[i]
        if c:
            for j in range(d + 1):
                prod[i - d + j] = F.sub(prod[i - d + j], F.mul(c, f[j]))
    out = prod[:d]
    return out + [0] * (d - len(out))


def _x_pow_mod(F: FieldSpec, e: int, f):
    d = len(f) - 1
    result = [1] + [0] * (d - 1)
    base = ([0, 1] + [0] * (d - 2)) if d > 1 else [F.neg(f[0])]
    while e:
        if e & 1:
            result = _poly_mulmod(F, result, base, f)
        base = _poly_mulmod(F, base, base, f)
        e >>= 1
    return result


def is_primitive(F: FieldSpec, poly) -> bool:
    """True iff the monic ``poly`` over F has a root of order ``|F|^deg - 1``.

    A reducible polynomial cannot pass: its quotient ring has fewer than
    ``|F|^deg - 1`` units.
    """
    poly = list(poly)
    d = len(poly) - 1
    if d < 1 or poly[-1] != 1 or poly[0] == 0:
        return False
    N = F.q**d - 1
    one = [1] + [0] * (d - 1)
    if _x_pow_mod(F, N, poly) != one:
        return False
    return all(_x_pow_mod(F, N // r, poly) != one for r in factorize(N))


def multiplicative_order_of_root(F: FieldSpec, poly) -> int:
    """Order of x in F[x]/(poly) by direct iteration (brute-force oracle)."""
    d = len(poly) - 1
    one = [1] + [0] * (d - 1)
    x = ([0, 1] + [0] * (d - 2)) if d > 1 else [F.neg(poly[0])]
    cur = list(x)
    for e in range(1, F.q**d):
        if cur == one:
            return e
        cur = _poly_mulmod(F, cur, x, poly)
    raise ValueError("x is not a unit modulo poly")


def primitive_poly(F: FieldSpec, degree: int, overrides: dict | None = None) -> tuple[int, ...]:
    """A monic primitive polynomial of ``degree`` over F.

    Over a prime field the table for order ``p**degree`` is consulted first
    (overrides, then built-in); otherwise the lexicographically first
    primitive polynomial is searched.
    """
    if F.m == 1:
        order = F.q**degree
        for table in (overrides or {}, PRIMITIVE_POLYS):
            if order in table and len(table[order]) == degree + 1:
                return tuple(table[order])
    return _search_primitive(F, degree)


@lru_cache(maxsize=None)
def _search_primitive(F: FieldSpec, degree: int) -> tuple[int, ...]:
    if F.q**degree > 10**7:
        raise ValueError(f"no primitive polynomial known for q={F.q}, n={degree}")
    for code in range(1, F.q**degree):
        poly = _digits(code, F.q, degree) + [1]
        if is_primitive(F, poly):
            return tuple(poly)
    raise ValueError(f"no primitive polynomial of degree {degree} over GF({F.q})")


def read_poly_file(path) -> dict[int, tuple[int, ...]]:
    """Parse override records ``q m c_0 ... c_m``, one per line (# comments)."""
    table: dict[int, tuple[int, ...]] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        nums = [int(tok) for tok in line.split()]
        q, m, coeffs = nums[0], nums[1], tuple(nums[2:])
        p, mm = prime_power(q)
        if mm != m or len(coeffs) != m + 1:
            raise ValueError(f"{path}:{lineno}: expected q=p^m and m+1 coefficients")
        table[q] = _check_modulus(p, m, coeffs)
    return table
