"""The splitting field of x^c - 1 over F_p, with lookup-table arithmetic.

Elements of F_(p^r) are encoded as integers 0..p^r-1 through the base-p
digits of their coordinates in the power basis of a fixed irreducible
modulus.  Constants of F_p are therefore encoded as themselves.  Addition,
multiplication, negation and inversion are precomputed tables, which is what
the linear-algebra kernels consume.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from ..errors import InputValidationError


def splitting_degree(p: int, c: int) -> int:
    """Smallest r with c | p^r - 1, i.e. the order of p modulo c."""
    if gcd(p, c) != 1:
        raise InputValidationError(f"c={c} must be prime to p={p}")
    if c == 1:
        return 1
    r, power = 1, p % c
    while power != 1:
        power = power * p % c
        r += 1
    return r


# -- polynomial arithmetic over F_p (coefficient lists, ascending) -----------


def _poly_deg(a: list[int]) -> int:
    for i in range(len(a) - 1, -1, -1):
        if a[i]:
            return i
    return -1


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = [v % p for v in a]
    db = _poly_deg(b)
    lead_inv = pow(b[db], -1, p)
    while True:
        da = _poly_deg(a)
        if da < db:
            return a
        factor = a[da] * lead_inv % p
        for j in range(db + 1):
            a[da - db + j] = (a[da - db + j] - factor * b[j]) % p


def _poly_gcd_deg(a: list[int], b: list[int], p: int) -> int:
    while _poly_deg(b) >= 0:
        a, b = b, _poly_mod(a, b, p)
    return _poly_deg(a)


def _poly_mul_mod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    """Product in F_p[x] modulo the monic polynomial x^r + modulus (ascending
    coefficients below the leading 1)."""
    r = len(modulus)
    prod = [0] * max(len(a) + len(b) - 1, r)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for deg in range(len(prod) - 1, r - 1, -1):
        head = prod[deg]
        if head:
            prod[deg] = 0
            for j, mj in enumerate(modulus):
                prod[deg - r + j] = (prod[deg - r + j] - head * mj) % p
    return prod[:r]


def _poly_pow_mod(base: list[int], e: int, modulus: list[int], p: int) -> list[int]:
    r = len(modulus)
    out = [1] + [0] * (r - 1)
    cur = (list(base) + [0] * r)[:r] if len(base) <= r else _poly_mul_mod(base, [1], modulus, p)
    while e:
        if e & 1:
            out = _poly_mul_mod(out, cur, modulus, p)
        cur = _poly_mul_mod(cur, cur, modulus, p)
        e >>= 1
    return out


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(modulus: list[int], p: int) -> bool:
    """Rabin's test for the monic polynomial x^r + modulus over F_p."""
    r = len(modulus)
    if r == 1:
        return True
    x = [0, 1] + [0] * (r - 2)
    if _poly_pow_mod([0, 1], p**r, modulus, p) != x:
        return False
    full = modulus + [1]
    for s in _prime_factors(r):
        xq = _poly_pow_mod([0, 1], p ** (r // s), modulus, p)
        diff = list(xq)
        diff[1] = (diff[1] - 1) % p
        if _poly_gcd_deg(full, diff, p) > 0:
            return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Monic irreducible of degree r over F_p minimizing the base-p encoding
    of its lower coefficients; returned without the leading 1, ascending."""
    for code in range(p**r):
        coeffs = [(code // p**j) % p for j in range(r)]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible of degree {r} over F_{p}")  # unreachable


@dataclass(frozen=True)
class SplittingField:
    """F_(p^r) containing the c-th roots of unity; all arithmetic tabulated."""

    p: int
    c: int
    r: int = field(init=False)
    q: int = field(init=False)
    modulus: tuple[int, ...] = field(init=False)
    generator: int = field(init=False)
    zeta: int = field(init=False)
    add: np.ndarray = field(init=False, repr=False, compare=False)
    mul: np.ndarray = field(init=False, repr=False, compare=False)
    neg: np.ndarray = field(init=False, repr=False, compare=False)
    inv: np.ndarray = field(init=False, repr=False, compare=False)

    MAX_ORDER = 1024

    def __post_init__(self) -> None:
        r = splitting_degree(self.p, self.c)
        q = self.p**r
        if q > self.MAX_ORDER:
            raise InputValidationError(
                f"splitting field of x^{self.c}-1 over F_{self.p} has order "
                f"{q} > {self.MAX_ORDER}"
            )
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "modulus", smallest_irreducible(self.p, r))
        self._build_tables()

    def _build_tables(self) -> None:
        p, r, q = self.p, self.r, self.q
        modulus = list(self.modulus)
        powers = p ** np.arange(r, dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // powers) % p

        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ powers
        neg = ((-digits) % p) @ powers

        def encode(poly: list[int]) -> int:
            return int(sum(v * p**j for j, v in enumerate(poly)))

        def decode(a: int) -> list[int]:
            return [(a // p**j) % p for j in range(r)]

        def mul_el(a: int, b: int) -> int:
            return encode(_poly_mul_mod(decode(a), decode(b), modulus, p))

        def is_generator(g: int) -> bool:
            for ell in _prime_factors(q - 1):
                if encode(_poly_pow_mod(decode(g), (q - 1) // ell, modulus, p)) == 1:
                    return False
            return True

        gen = 1 if q == 2 else next(g for g in range(2, q) if is_generator(g))
        exp = np.empty(max(q - 1, 1), dtype=np.int64)
        cur = 1
        for k in range(q - 1):
            exp[k] = cur
            cur = mul_el(cur, gen)
        log = np.zeros(q, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1, dtype=np.int64)

        mul = np.zeros((q, q), dtype=np.int64)
        nz = exp[: q - 1]
        mul[np.ix_(nz, nz)] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=np.int64)
        inv[nz] = exp[(-np.arange(q - 1, dtype=np.int64)) % (q - 1)]

        zeta = 1 if self.c == 1 else int(exp[(q - 1) // self.c])

        object.__setattr__(self, "generator", int(gen))
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "neg", neg)
        object.__setattr__(self, "inv", inv)

    # -- scalar helpers ------------------------------------------------------

    def add_el(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def mul_el(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def neg_el(self, a: int) -> int:
        return int(self.neg[a])

    def inv_el(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverting 0")
        return int(self.inv[a])

    def pow_el(self, a: int, e: int) -> int:
        out, cur = 1, a
        if e < 0:
            cur, e = self.inv_el(a), -e
        while e:
            if e & 1:
                out = self.mul_el(out, cur)
            cur = self.mul_el(cur, cur)
            e >>= 1
        return out

    def zeta_pow(self, l: int) -> int:
        return self.pow_el(self.zeta, l % self.c)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        k, cur = 1, a
        while cur != 1:
            cur = self.mul_el(cur, a)
            k += 1
        return k
