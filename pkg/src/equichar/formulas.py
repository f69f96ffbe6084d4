"""The multiplicity formulas: tame equivariant Riemann-Roch, the de Rham
decomposition of Z/p^n-covers, the mixed Z/p semidirect Z/c decomposition,
and the superelliptic closed forms.

All arithmetic is exact; fractional parts are Fractions and every published
multiplicity is an integer.  Formulas are assembled as virtual modules and
materialized once at the end, so internal cancellations need no special
cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cmodules import VirtualCModule
from .errors import (
    EtaleUnsupported,
    InputValidationError,
    InternalCheckError,
    InvalidCover,
    NegativeMultiplicity,
)
from .gmodules import GModuleDecomp, GroupShape, is_prime
from .ramification import (
    CyclicCoverData,
    SemidirectCoverData,
    TameBranchPoint,
    WildOrbit,
    derive_quotient_cover,
    derive_subcover,
    generator_pole_divisor,
    genus_top,
    invariant_differential_divisor,
    underlying_cyclic_data,
)
from .report import Check, CheckReport


def _frac(x: Fraction) -> Fraction:
    """Fractional part, always in [0, 1)."""
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class TameCoverInput:
    """A tame cyclic cover Y -> Z together with an equivariant divisor on Y.

    The divisor is constant on fibers: `coeffs[k]` is its coefficient at
    every point of Y over tame branch point k, and each entry of
    `free_coeffs` is its coefficient along one full unramified fiber
    (c points).  deg D = sum coeffs[k] * c/e_k + sum free_coeffs * c.
    """

    c: int
    g_base: int
    points: tuple[TameBranchPoint, ...]
    coeffs: tuple[int, ...]
    free_coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.c < 1:
            raise InputValidationError(f"c={self.c} must be positive")
        if self.g_base < 0:
            raise InputValidationError(f"base genus {self.g_base} must be nonnegative")
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "coeffs", tuple(int(v) for v in self.coeffs))
        object.__setattr__(self, "free_coeffs", tuple(int(v) for v in self.free_coeffs))
        if len(self.coeffs) != len(self.points):
            raise InputValidationError("need one divisor coefficient per tame point")
        for pt in self.points:
            if self.c % pt.e != 0:
                raise InputValidationError(f"inertia order {pt.e} does not divide c={self.c}")
        if any(v < 0 for v in self.coeffs) or any(v < 0 for v in self.free_coeffs):
            raise InputValidationError("divisor coefficients must be nonnegative")

    def divisor_is_zero(self) -> bool:
        return not any(self.coeffs) and not any(self.free_coeffs)

    def degree_ratio(self) -> Fraction:
        """deg D divided by the group order c."""
        total = sum((Fraction(v, pt.e) for pt, v in zip(self.points, self.coeffs)), Fraction(0))
        return total + sum(self.free_coeffs)


def chevalley_weil(inp: TameCoverInput) -> VirtualCModule:
    """Multiplicities of each character psi^l in H^0(Y, Omega_Y(D)) for a
    tame cyclic cover Y -> Z with equivariant divisor D.

    The multiplicity is

        (g_Z - 1 + deg D / c)
          + sum over branch points Q of <(-m_Q - i_Q(l)) / e_Q>
          + [D = 0][l = 0],

    where m_Q is the divisor coefficient at Q, <.> is the fractional part,
    and i_Q(l) in {0, ..., e_Q - 1} is the exponent with theta_Q^i = psi^l
    on the inertia group at Q.  The i_Q(l) = 0 term must be kept: dropping
    it breaks exactness whenever m_Q is not a multiple of e_Q.
    """
    c = inp.c
    base = Fraction(inp.g_base - 1) + inp.degree_ratio()
    zero_divisor = inp.divisor_is_zero()
    mults = []
    for l in range(c):
        a = base
        for pt, mq in zip(inp.points, inp.coeffs):
            e = pt.e
            if e == 1:
                continue
            i = (pow(pt.theta_exp, -1, e) * l) % e
            a += _frac(Fraction(-mq - i, e))
        if zero_divisor and l == 0:
            a += 1
        if a.denominator != 1:
            raise InvalidCover(f"multiplicity of psi^{l} is non-integral: {a}")
        if a < 0:
            raise InvalidCover(f"multiplicity of psi^{l} is negative: {a}")
        mults.append(int(a))
    return VirtualCModule(c, tuple(mults))


def cyclic_de_rham(data: CyclicCoverData) -> GModuleDecomp:
    """Jordan-block decomposition of the first de Rham cohomology of a
    Z/p^n-cover X -> Y, from the ramification data alone.

    With q = p^n, m the largest jump length, and u_Q the upper jumps
    (u_Q(0) = 1), the module is assembled from

        J_q ^ (2 g_Y - 2),
        J_(q - p^(n-m) + 1) ^ 2          once, at a distinguished point Q0,
        J_(q - p^(n-m_Q)) ^ 2            at every other branch point,
        J_(q - p^(n+t-m_Q)) ^ (u_Q(t+1) - u_Q(t))   for 0 <= t < m_Q,

    then materialized.  For g_Y = 0 the first two entries cancel exactly
    when the cover is totally ramified somewhere, and an unramified cover
    yields J_q^(2 g_Y - 2) + J_1^2.  The distinguished point is the first
    one attaining m, and the outcome is independent of that choice.
    """
    p, n, q = data.p, data.n, data.p**data.n
    coeff: dict[int, int] = {}

    def add(i: int, v: int) -> None:
        coeff[i] = coeff.get(i, 0) + v

    add(q, 2 * (data.g_base - 1))
    m = data.m_max
    add(q - p ** (n - m) + 1, 2)
    q0 = next((k for k, pt in enumerate(data.points) if pt.m == m), None)
    for k, pt in enumerate(data.points):
        if k != q0:
            add(q - p ** (n - pt.m), 2)
        upper = (1,) + pt.upper_jumps()
        for t in range(pt.m):
            add(q - p ** (n + t - pt.m), upper[t + 1] - upper[t])
    for i, v in coeff.items():
        if v < 0:
            raise InvalidCover(
                f"J_{i} would occur {v} < 0 times; the data admits no such cover"
            )
    shape = GroupShape(p, n, 1, 0)
    return GModuleDecomp(shape, {(0, i): v for i, v in coeff.items() if v})


def _tame_input(data: SemidirectCoverData, orbit_coeffs: tuple[int, ...]) -> TameCoverInput:
    coeffs = [0] * len(data.tame)
    free = []
    for orb, v in zip(data.wild, orbit_coeffs):
        if orb.anchor is None:
            free.append(v)
        else:
            coeffs[orb.anchor] = v
    return TameCoverInput(
        data.shape.c, data.g_base, data.tame, tuple(coeffs), tuple(free)
    )


def semidirect_de_rham(data: SemidirectCoverData) -> GModuleDecomp:
    """Decomposition of the first de Rham cohomology of X for
    G = Z/p semidirect Z/c acting with X -> X/H not unramified.

    The result is J_p(V1) + J_(p-1)(V2) where, writing A for the character
    multiplicities of H^0(Omega_Y), B for those of H^0(Omega_Y(D)) and
    G for those of H^0(Omega_Y(R)) (D and R the wild-orbit divisors with
    coefficients ceil(u/p) and floor((u+1)(p-1)/p)):

        V1 = A + dual(A),
        V2 = G + twist(dual(B), -a_chi) - twist(dual(A), -a_chi) - A.

    The duals are the H^1 terms by Serre duality and the twist is by the
    inverse of the conjugation character.
    """
    if not data.wild:
        raise EtaleUnsupported(
            "the unramified case needs the tame holomorphic-differential formula"
        )
    shape = data.shape
    a = shape.a_chi
    alpha = chevalley_weil(_tame_input(data, (0,) * len(data.wild)))
    beta = chevalley_weil(_tame_input(data, generator_pole_divisor(data)))
    gamma = chevalley_weil(_tame_input(data, invariant_differential_divisor(data)))
    v1 = alpha + alpha.dual()
    v2 = gamma + beta.dual().twist(-a) - alpha.dual().twist(-a) - alpha
    try:
        v1.materialize()
        v2.materialize()
    except NegativeMultiplicity as exc:
        raise InvalidCover(f"wild formula fails to materialize: {exc}") from exc
    counts: dict[tuple[int, int], int] = {}
    for l in range(shape.c):
        if v1.mult[l]:
            counts[(l, shape.p)] = v1.mult[l]
        if v2.mult[l]:
            counts[(l, shape.p - 1)] = counts.get((l, shape.p - 1), 0) + v2.mult[l]
    return GModuleDecomp(shape, counts)


# -- the superelliptic family y^m = prod(x - v), v in a p^n-element space ----


def _superelliptic_validate(p: int, m: int, n: int) -> None:
    if not is_prime(p) or p <= 2:
        raise InputValidationError(f"p={p} must be an odd prime")
    if m < 1 or m % p == 0:
        raise InputValidationError(f"m={m} must be positive and prime to p={p}")
    if n < 1:
        raise InputValidationError(f"n={n} must be >= 1")


def _superelliptic_bezout(
    p: int, m: int, n: int, c1: int | None, c2: int | None
) -> tuple[int, int]:
    """Integers with c2 * p^(n-1) - c1 * m = 1; canonical choice if not given."""
    pn1 = p ** (n - 1)
    if (c1 is None) != (c2 is None):
        raise InputValidationError("give both of c1, c2 or neither")
    if c1 is None:
        c2 = pow(pn1, -1, m) if m > 1 else 1
        c1 = (c2 * pn1 - 1) // m
    assert c2 is not None
    if c2 * pn1 - c1 * m != 1:
        raise InputValidationError(f"c2*p^(n-1) - c1*m = {c2 * pn1 - c1 * m}, expected 1")
    return c1, c2


def superelliptic_data(
    p: int, m: int, n: int, *, c1: int | None = None, c2: int | None = None
) -> SemidirectCoverData:
    """Ramification data of the curve y^m = f(x), f the vanishing polynomial
    of a p^n-element additive group, under Z/p semidirect Z/(m(p-1)).

    The quotient of Y = X/H by C is a projective line; Y -> Z is branched
    at two points with full inertia (the images of 0 and infinity) and at
    (p^(n-1) - 1)/(p - 1) points with inertia of order m.  The single wild
    orbit sits over the point at infinity with last jump m.
    """
    _superelliptic_validate(p, m, n)
    c = m * (p - 1)
    c1, c2 = _superelliptic_bezout(p, m, n, c1, c2)
    b_inf = (c2 - m * c1) % c
    if gcd(b_inf, c) != 1:
        raise InternalCheckError(f"theta exponent {b_inf} not invertible mod {c}")
    shape = GroupShape(p, 1, c, m)
    interior = (p ** (n - 1) - 1) // (p - 1)
    tame = [TameBranchPoint(c, -1), TameBranchPoint(c, b_inf)]
    if m > 1:
        tame += [TameBranchPoint(m, -1)] * interior
    wild = (WildOrbit(u=m, anchor=1),)
    return SemidirectCoverData(shape, 0, tuple(tame), wild)


@dataclass(frozen=True)
class SuperellipticClosedForm:
    """Exact character multiplicities for the superelliptic family.

    alpha, beta, gamma are the multiplicity vectors of H^0(Omega_Y),
    H^0(Omega_Y(D)), H^0(Omega_Y(R)); delta is the shared fractional-part
    kernel (not itself integral).
    """

    p: int
    m: int
    n: int
    c3: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]
    delta: tuple[Fraction, ...]
    v1: VirtualCModule
    v2: VirtualCModule
    result: GModuleDecomp


def superelliptic_closed_form(
    p: int, m: int, n: int, *, c1: int | None = None, c2: int | None = None
) -> SuperellipticClosedForm:
    """Evaluate the closed-form decomposition for the superelliptic family.

    Independent of `semidirect_de_rham`: the character multiplicities come
    from explicit fractional-part expressions in (p, m, n) and the Bezout
    pair (c1, c2), with c3 inverting c2 - m*c1 modulo m(p-1).
    """
    _superelliptic_validate(p, m, n)
    c = m * (p - 1)
    c1, c2 = _superelliptic_bezout(p, m, n, c1, c2)
    try:
        c3 = pow(c2 - m * c1, -1, c)
    except ValueError as exc:
        raise InternalCheckError(f"c2 - m*c1 = {c2 - m * c1} not invertible mod {c}") from exc
    interior = (p ** (n - 1) - 1) // (p - 1)
    d_pole = -(-m // p)
    d_form = (m + 1) * (p - 1) // p
    delta, alpha, beta, gamma = [], [], [], []
    for l in range(c):
        d = -1 + _frac(Fraction(l, m)) * interior + _frac(Fraction(l, c))
        a = d + _frac(Fraction(-c3 * l, c)) + (1 if l == 0 else 0)
        b = d + Fraction(d_pole, c) + _frac(Fraction(-d_pole - c3 * l, c))
        g = d + Fraction(d_form, c) + _frac(Fraction(-d_form - c3 * l, c))
        for name, val in (("alpha", a), ("beta", b), ("gamma", g)):
            if val.denominator != 1 or val < 0:
                raise InternalCheckError(f"{name}_{l} = {val} is not a nonnegative integer")
        delta.append(d)
        alpha.append(int(a))
        beta.append(int(b))
        gamma.append(int(g))
    # Both dualized terms carry the same chi^(-1) twist, hence the same -l-m.
    v1 = VirtualCModule(c, tuple(alpha[l] + alpha[(-l) % c] for l in range(c)))
    v2 = VirtualCModule(
        c,
        tuple(
            gamma[l] + beta[(-l - m) % c] - alpha[(-l - m) % c] - alpha[l]
            for l in range(c)
        ),
    )
    try:
        v1.materialize()
        v2.materialize()
    except NegativeMultiplicity as exc:
        raise InternalCheckError(f"closed form fails to materialize: {exc}") from exc
    shape = GroupShape(p, 1, c, m)
    counts: dict[tuple[int, int], int] = {}
    for l in range(c):
        if v1.mult[l]:
            counts[(l, p)] = v1.mult[l]
        if v2.mult[l]:
            counts[(l, p - 1)] = counts.get((l, p - 1), 0) + v2.mult[l]
    return SuperellipticClosedForm(
        p, m, n, c3,
        tuple(alpha), tuple(beta), tuple(gamma), tuple(delta),
        v1, v2, GModuleDecomp(shape, counts),
    )


# -- consistency reports -----------------------------------------------------


def _wild_summand_count(g_mid: int, point_jumps: list[int]) -> int:
    return 2 * g_mid + sum(u + 1 for u in point_jumps) - 2


def dimension_report(
    data: CyclicCoverData | SemidirectCoverData, result: GModuleDecomp
) -> CheckReport:
    """Cross-check a computed decomposition against Riemann-Hurwitz.

    Verifies dim = 2 * genus of the covering curve, and for wild p-covers
    (n = 1) also that the number of indecomposable summands equals
    2 g_Y + sum(u_Q + 1) - 2, the dimension of the sigma-invariants.
    """
    checks: list[Check] = []
    if isinstance(data, SemidirectCoverData):
        cyclic = underlying_cyclic_data(data)
        g_mid = cyclic.g_base
    else:
        cyclic = data
        g_mid = data.g_base
    g_top = genus_top(cyclic)
    checks.append(
        Check(
            "dimension equals twice the genus",
            result.dim() == 2 * g_top,
            f"dim={result.dim()}, genus={g_top}",
        )
    )
    if cyclic.n == 1 and cyclic.points:
        expected = _wild_summand_count(g_mid, [pt.last_jump() for pt in cyclic.points])
        checks.append(
            Check(
                "summand count equals the invariant dimension",
                result.summand_count() == expected,
                f"summands={result.summand_count()}, expected={expected}",
            )
        )
    return CheckReport(tuple(checks))


def validation_report(data: CyclicCoverData | SemidirectCoverData) -> CheckReport:
    """Run every identity the decomposition of `data` is known to satisfy."""
    checks: list[Check] = []
    if isinstance(data, SemidirectCoverData):
        result = semidirect_de_rham(data)
        checks.extend(dimension_report(data, result).checks)
        shadow = underlying_cyclic_data(data)
        checks.append(
            Check(
                "forgetting characters matches the Jordan-block formula",
                result.forget_characters() == cyclic_de_rham(shadow),
            )
        )
        layers = result.socle_layers()
        rebuilt = GModuleDecomp.from_socle_layers(result.shape, layers)
        checks.append(Check("socle layers reconstruct the module", rebuilt == result))
        return CheckReport(tuple(checks))

    result = cyclic_de_rham(data)
    checks.extend(dimension_report(data, result).checks)
    p, n = data.p, data.n
    perm = _alternate_distinguished_point(data)
    if perm is not None:
        checks.append(
            Check(
                "independence of the distinguished branch point",
                cyclic_de_rham(perm) == result,
            )
        )
    if n >= 1:
        sub = derive_subcover(data)
        checks.append(
            Check(
                "intermediate-base data describes the same curve",
                genus_top(sub.cover) == genus_top(data),
            )
        )
        checks.append(Check("jump bookkeeping across the subcover", subcover_jump_identity(data)))
        expected_count = p * len(data.points) - (p - 1) * len(sub.base_jumps)
        if n == 1:
            # at n = 1 the intermediate curve is the cover itself, so the
            # formerly totally ramified points leave the branch list entirely
            expected_count -= len(sub.base_jumps)
        checks.append(
            Check(
                "branch point count across the subcover",
                len(sub.cover.points) == expected_count,
            )
        )
        checks.append(
            Check(
                "restriction to the index-p subgroup matches the subcover formula",
                result.restrict_index_p() == cyclic_de_rham(sub.cover),
            )
        )
        if data.points:
            # the trace comparison needs a ramified cover; unramified covers
            # are handled by the closed form directly
            quot = derive_quotient_cover(data)
            quot_result = cyclic_de_rham(quot)
            q, q_sub = p**n, p ** (n - 1)
            trace_ok = all(
                result.socle_layer(q - q_sub + j).dim() == quot_result.socle_layer(j).dim()
                for j in range(1, q_sub + 1)
            )
            checks.append(Check("trace identity against the quotient cover", trace_ok))
    return CheckReport(tuple(checks))


def subcover_jump_identity(data: CyclicCoverData) -> bool:
    """p * sum(u - 1) over the branch locus equals the same sum over the
    intermediate-base data plus (p-1) * sum(l - 1) over the new base jumps.

    For n = 1 the intermediate curve is the covering curve itself, so the
    points that leave the branch list add their jump term back once.
    """
    p = data.p
    sub = derive_subcover(data)
    lhs = p * sum(pt.last_jump() - 1 for pt in data.points)
    rhs = sum(pt.last_jump() - 1 for pt in sub.cover.points) + (p - 1) * sum(
        l - 1 for l in sub.base_jumps
    )
    if data.n == 1:
        rhs += sum(l - 1 for l in sub.base_jumps)
    return lhs == rhs


def _alternate_distinguished_point(data: CyclicCoverData) -> CyclicCoverData | None:
    """Reorder the branch points so a different maximal point comes first."""
    m = data.m_max
    idx = [k for k, pt in enumerate(data.points) if pt.m == m]
    if len(idx) < 2:
        return None
    order = list(range(len(data.points)))
    order[idx[0]], order[idx[1]] = order[idx[1]], order[idx[0]]
    return CyclicCoverData(
        data.p, data.n, data.g_base, tuple(data.points[k] for k in order)
    )
