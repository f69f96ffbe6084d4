"""Ramification data of wild cyclic covers and of mixed wild/tame covers.

A Z/p^n-cover X -> Y is recorded through its base genus and one record per
branch point Q of Y.  The canonical per-point datum is the integer vector
i_seq = (i0, ..., i_(m-1)) from which both jump filtrations are derived:

    upper jumps  u_t = i0 + i1 + ... + i_(t-1),
    lower jumps  l_t = i0 + i1*p + ... + i_(t-1)*p^(t-1),

with the convention u_0 = 1.  Here p^m is the ramification index at Q, so m
is the length of i_seq.  Keeping i_seq primary makes integrality of the
jumps (Hasse-Arf) automatic and turns the base-change substitutions below
into one-liners.

For the mixed case G = Z/p semidirect Z/c acting on X with Y = X/H and
Z = Y/C, the tame part of the data lives on Z (branch points of Y -> Z with
their inertia characters) and the wild part is one record per C-orbit of
branch points of X -> Y, keyed to the tame point under it (or free, when the
orbit sits over an unramified point of Z).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InputValidationError, InvalidCover, InvalidJump
from .gmodules import GroupShape, is_prime


@dataclass(frozen=True)
class WildBranchPoint:
    """Branch point of a Z/p^n-cover with ramification index p^len(i_seq)."""

    i_seq: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "i_seq", tuple(int(v) for v in self.i_seq))
        if not self.i_seq:
            raise InvalidJump("a wild branch point needs at least one jump")
        if self.i_seq[0] < 1:
            raise InvalidJump(f"i_seq[0] must be >= 1, got {self.i_seq[0]}")
        for t, v in enumerate(self.i_seq[1:], start=1):
            if v < 0:
                raise InvalidJump(f"i_seq[{t}] must be >= 0, got {v}")

    @property
    def m(self) -> int:
        """p-adic valuation of the ramification index."""
        return len(self.i_seq)

    def validate_for(self, p: int) -> None:
        if self.i_seq[0] % p == 0:
            raise InvalidJump(f"first jump {self.i_seq[0]} must be prime to p={p}")

    def upper_jumps(self) -> tuple[int, ...]:
        """(u_1, ..., u_m); partial sums of i_seq."""
        out, acc = [], 0
        for v in self.i_seq:
            acc += v
            out.append(acc)
        return tuple(out)

    def lower_jumps(self, p: int) -> tuple[int, ...]:
        """(l_1, ..., l_m); partial sums of i_t * p^t."""
        out, acc, q = [], 0, 1
        for v in self.i_seq:
            acc += v * q
            q *= p
            out.append(acc)
        return tuple(out)

    def last_jump(self) -> int:
        """u_m, the largest upper jump."""
        return sum(self.i_seq)

    @classmethod
    def from_upper_jumps(cls, upper: tuple[int, ...] | list[int]) -> WildBranchPoint:
        prev = 0
        i_seq = []
        for u in upper:
            i_seq.append(u - prev)
            prev = u
        return cls(tuple(i_seq))

    @classmethod
    def from_lower_jumps(cls, lower: tuple[int, ...] | list[int], p: int) -> WildBranchPoint:
        prev, q = 0, 1
        i_seq = []
        for t, low in enumerate(lower):
            step = low - prev
            if t > 0 and step % q != 0:
                raise InvalidJump(f"lower jump gap {step} not divisible by p^{t}={q}")
            i_seq.append(step // q)
            prev = low
            q *= p
        return cls(tuple(i_seq))

    def different_exponent(self, p: int) -> int:
        """Exponent of the different at one point above this branch point.

        The filtration by lower-numbered inertia subgroups has order p^(m-t)
        on the interval l_t < i <= l_(t+1), so the sum of (order - 1) over
        all i >= 0 telescopes into the closed form below (l_0 = -1).
        """
        lower = (-1,) + self.lower_jumps(p)
        return sum(
            (p ** (self.m - t + 1) - 1) * (lower[t] - lower[t - 1])
            for t in range(1, self.m + 1)
        )


def _genus_from_rh(two_g_minus_two: int, context: str) -> int:
    if two_g_minus_two % 2 != 0:
        raise InvalidCover(f"{context}: Riemann-Hurwitz gives odd 2g-2 = {two_g_minus_two}")
    g = two_g_minus_two // 2 + 1
    if g < 0:
        raise InvalidCover(f"{context}: Riemann-Hurwitz gives negative genus {g}")
    return g


@dataclass(frozen=True)
class CyclicCoverData:
    """Ramification data of a Z/p^n-cover X -> Y of a genus-g_base curve."""

    p: int
    n: int
    g_base: int
    points: tuple[WildBranchPoint, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InputValidationError(f"p={self.p} is not prime")
        if self.n < 0:
            raise InputValidationError(f"n={self.n} must be nonnegative")
        if self.g_base < 0:
            raise InputValidationError(f"base genus {self.g_base} must be nonnegative")
        object.__setattr__(self, "points", tuple(self.points))
        for pt in self.points:
            if not isinstance(pt, WildBranchPoint):
                raise InputValidationError("points must be WildBranchPoint instances")
            pt.validate_for(self.p)
            if pt.m > self.n:
                raise InvalidJump(f"point has m={pt.m} > n={self.n}")

    @property
    def m_max(self) -> int:
        """Largest m over the branch locus; 0 when the cover is unramified."""
        return max((pt.m for pt in self.points), default=0)


def genus_top(data: CyclicCoverData) -> int:
    """Genus of the total space X, by Riemann-Hurwitz.

    Each branch point Q has p^(n - m_Q) points of X above it, all with the
    same different exponent.
    """
    p, n = data.p, data.n
    total = p**n * (2 * data.g_base - 2)
    for pt in data.points:
        total += p ** (n - pt.m) * pt.different_exponent(p)
    return _genus_from_rh(total, "genus of the covering curve")


def derive_quotient_cover(data: CyclicCoverData) -> CyclicCoverData:
    """Data of the quotient cover X/(Z/p) -> Y at level n-1.

    Upper jumps pass to quotients unchanged, so each point keeps the first
    m-1 entries of its i_seq; points that become unramified are dropped.
    """
    if data.n < 1:
        raise InputValidationError("quotient cover requires n >= 1")
    points = [
        WildBranchPoint(pt.i_seq[: pt.m - 1]) for pt in data.points if pt.m >= 2
    ]
    return CyclicCoverData(data.p, data.n - 1, data.g_base, tuple(points))


@dataclass(frozen=True)
class SubcoverResult:
    """X viewed over the intermediate curve, plus the Z/p-cover data below it."""

    cover: CyclicCoverData
    base_jumps: tuple[int, ...]


def derive_subcover(data: CyclicCoverData) -> SubcoverResult:
    """Replace the base Y by the intermediate curve Y' = X/<sigma^p>.

    Points with m < n split into p copies with the same jumps.  A point
    with m = n has a single point of Y' above it, where the jump vector
    becomes (i0 + p*i1, p*i2, ..., p*i_(n-1)); the Z/p-cover Y' -> Y is
    branched exactly at these points, with lower jump i0.
    """
    if data.n < 1:
        raise InputValidationError("subcover requires n >= 1")
    p, n = data.p, data.n
    base_jumps = []
    points: list[WildBranchPoint] = []
    for pt in data.points:
        if pt.m < n:
            points.extend([pt] * p)
        else:
            base_jumps.append(pt.i_seq[0])
            if n >= 2:
                i = pt.i_seq
                points.append(
                    WildBranchPoint((i[0] + p * i[1],) + tuple(p * v for v in i[2:]))
                )
    total = p * (2 * data.g_base - 2) + sum((p - 1) * (l + 1) for l in base_jumps)
    g_mid = _genus_from_rh(total, "genus of the intermediate curve")
    return SubcoverResult(
        CyclicCoverData(p, n - 1, g_mid, tuple(points)), tuple(base_jumps)
    )


# -- mixed wild/tame data for G = Z/p semidirect Z/c -------------------------


@dataclass(frozen=True)
class TameBranchPoint:
    """Branch point of the tame cover Y -> Z: inertia order e and the
    exponent b of its fundamental character (gcd(b, e) = 1)."""

    e: int
    theta_exp: int

    def __post_init__(self) -> None:
        if self.e < 1:
            raise InputValidationError(f"inertia order e={self.e} must be positive")
        object.__setattr__(self, "theta_exp", self.theta_exp % self.e)
        if gcd(self.theta_exp, self.e) != 1:
            raise InputValidationError(
                f"theta exponent {self.theta_exp} not invertible mod e={self.e}"
            )


FREE_ORBIT = None


@dataclass(frozen=True)
class WildOrbit:
    """One C-orbit of wild branch points on Y, with its common last jump u.

    `anchor` indexes the tame branch point of Y -> Z below the orbit, or is
    None for an orbit over an unramified point of Z.
    """

    u: int
    anchor: int | None = FREE_ORBIT


@dataclass(frozen=True)
class SemidirectCoverData:
    """Full input for the wild formula at n = 1: the tame data of Y -> Z
    plus the wild C-orbits of X -> Y."""

    shape: GroupShape
    g_base: int
    tame: tuple[TameBranchPoint, ...]
    wild: tuple[WildOrbit, ...]

    def __post_init__(self) -> None:
        if self.shape.n != 1:
            raise InputValidationError(f"shape must have n=1, got n={self.shape.n}")
        if self.g_base < 0:
            raise InputValidationError(f"base genus {self.g_base} must be nonnegative")
        object.__setattr__(self, "tame", tuple(self.tame))
        object.__setattr__(self, "wild", tuple(self.wild))
        c = self.shape.c
        for pt in self.tame:
            if c % pt.e != 0:
                raise InputValidationError(f"inertia order {pt.e} does not divide c={c}")
        anchors = []
        for orb in self.wild:
            if orb.u < 1:
                raise InvalidJump(f"wild jump u={orb.u} must be positive")
            if orb.u % self.shape.p == 0:
                raise InvalidJump(f"wild jump u={orb.u} must be prime to p={self.shape.p}")
            if orb.anchor is not None:
                if not (0 <= orb.anchor < len(self.tame)):
                    raise InputValidationError(f"anchor {orb.anchor} out of range")
                anchors.append(orb.anchor)
        if len(anchors) != len(set(anchors)):
            raise InputValidationError(
                "two wild orbits anchored at one tame point would be the same orbit"
            )

    def orbit_size(self, orbit: WildOrbit) -> int:
        """Number of points of Y in the orbit: c over the inertia order below."""
        if orbit.anchor is None:
            return self.shape.c
        return self.shape.c // self.tame[orbit.anchor].e


def generator_pole_divisor(data: SemidirectCoverData) -> tuple[int, ...]:
    """Per-orbit coefficient ceil(u/p): the polar divisor on Y of the first
    Artin-Schreier filtration layer of the cover X -> Y."""
    p = data.shape.p
    return tuple(-(-orb.u // p) for orb in data.wild)


def invariant_differential_divisor(data: SemidirectCoverData) -> tuple[int, ...]:
    """Per-orbit coefficient floor((u+1)(p-1)/p): the divisor R on Y with
    invariant differentials of X equal to Omega_Y(R)."""
    p = data.shape.p
    return tuple((orb.u + 1) * (p - 1) // p for orb in data.wild)


def genus_intermediate(data: SemidirectCoverData) -> int:
    """Genus of Y = X/H, by tame Riemann-Hurwitz for Y -> Z."""
    c = data.shape.c
    total = c * (2 * data.g_base - 2)
    for pt in data.tame:
        total += (c // pt.e) * (pt.e - 1)
    return _genus_from_rh(total, "genus of the intermediate curve")


def underlying_cyclic_data(data: SemidirectCoverData) -> CyclicCoverData:
    """Forget the C-action: the Z/p-cover X -> Y with every orbit expanded
    into its individual branch points."""
    points: list[WildBranchPoint] = []
    for orb in data.wild:
        points.extend([WildBranchPoint((orb.u,))] * data.orbit_size(orb))
    return CyclicCoverData(data.shape.p, 1, genus_intermediate(data), tuple(points))
