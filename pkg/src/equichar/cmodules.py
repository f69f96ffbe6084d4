"""Multiplicity-vector arithmetic for modules over k[C] with C cyclic.

Over an algebraically closed field k whose characteristic does not divide
c = #C, the simple k[C]-modules are the characters psi^0, ..., psi^{c-1}
(psi a fixed primitive character), so a finite-dimensional module is just an
integer vector of multiplicities.  Vectors with negative entries are *virtual*
modules; they occur as intermediate values of formulas and are only checked
for nonnegativity at `materialize` boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ModulusMismatch, NegativeMultiplicity, NotAnOrbitSum


@dataclass(frozen=True)
class CharExponent:
    """Exponent l of the character psi^l of C = Z/c, reduced mod c."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __int__(self) -> int:
        return self.value


def _as_exponent(j: int | CharExponent, c: int) -> int:
    if isinstance(j, CharExponent):
        if j.modulus != c:
            raise ModulusMismatch(f"exponent mod {j.modulus} used with c={c}")
        return j.value
    return j % c


@dataclass(frozen=True)
class VirtualCModule:
    """Integer multiplicity vector over the characters of C = Z/c.

    `mult[l]` is the coefficient of psi^l.  Coefficients may be negative
    (virtual module); an actual module has all coefficients >= 0.
    """

    c: int
    mult: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError(f"c must be positive, got {self.c}")
        if len(self.mult) != self.c:
            raise ValueError(f"expected {self.c} multiplicities, got {len(self.mult)}")
        object.__setattr__(self, "mult", tuple(int(v) for v in self.mult))

    @staticmethod
    def zero(c: int) -> VirtualCModule:
        return VirtualCModule(c, (0,) * c)

    @staticmethod
    def character(c: int, l: int | CharExponent, count: int = 1) -> VirtualCModule:
        """The module (psi^l)^count."""
        v = [0] * c
        v[_as_exponent(l, c)] = count
        return VirtualCModule(c, tuple(v))

    def dim(self) -> int:
        """Total (virtual) dimension; characters are one-dimensional."""
        return sum(self.mult)

    def is_actual(self) -> bool:
        return all(v >= 0 for v in self.mult)

    def twist(self, j: int | CharExponent) -> VirtualCModule:
        """Tensor with psi^j: the coefficient of psi^l moves to psi^(l+j)."""
        j = _as_exponent(j, self.c)
        return VirtualCModule(self.c, tuple(self.mult[(l - j) % self.c] for l in range(self.c)))

    def dual(self) -> VirtualCModule:
        """Contragredient: psi^l becomes psi^(-l)."""
        return VirtualCModule(self.c, tuple(self.mult[(-l) % self.c] for l in range(self.c)))

    def _check_same_c(self, other: VirtualCModule) -> None:
        if self.c != other.c:
            raise ModulusMismatch(f"cannot combine modules with c={self.c} and c={other.c}")

    def __add__(self, other: VirtualCModule) -> VirtualCModule:
        self._check_same_c(other)
        return VirtualCModule(self.c, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __sub__(self, other: VirtualCModule) -> VirtualCModule:
        """Formal difference; the result may be virtual."""
        self._check_same_c(other)
        return VirtualCModule(self.c, tuple(a - b for a, b in zip(self.mult, other.mult)))

    def scale(self, k: int) -> VirtualCModule:
        return VirtualCModule(self.c, tuple(k * v for v in self.mult))

    def materialize(self) -> VirtualCModule:
        """Return self unchanged if actual, else raise NegativeMultiplicity."""
        for l, v in enumerate(self.mult):
            if v < 0:
                raise NegativeMultiplicity(l, v)
        return self

    def pretty(self) -> str:
        terms = []
        for l, v in enumerate(self.mult):
            if v == 0:
                continue
            base = f"(psi^{l})" if self.c > 1 else "k"
            terms.append(base if v == 1 else f"{base}^{v}")
        return " + ".join(terms) if terms else "0"


def orbit_sum(module: VirtualCModule, a_chi: int | CharExponent, p: int) -> VirtualCModule:
    """Direct sum of the p twists M, M^chi, ..., M^(chi^(p-1)) with chi = psi^a_chi."""
    a = _as_exponent(a_chi, module.c)
    total = VirtualCModule.zero(module.c)
    for i in range(p):
        total = total + module.twist(i * a)
    return total


def recover_orbit_factor(
    module: VirtualCModule, a_chi: int | CharExponent, p: int
) -> VirtualCModule:
    """Invert `orbit_sum`: find M with given module N = M + M^chi + ... + M^(chi^(p-1)).

    Since chi^(p-1) is trivial, p*M = (p-1)*N - N^chi - ... - N^(chi^(p-2))
    as virtual modules, and one checks that applying orbit_sum to the right
    hand side over p gives back N identically.  Hence M exists exactly when
    every coefficient of the right hand side is nonnegative and divisible by
    p; otherwise NotAnOrbitSum is raised.
    """
    c = module.c
    a = _as_exponent(a_chi, c)
    order = c // gcd(c, a)
    if (p - 1) % order != 0:
        raise ValueError(f"order of psi^{a} is {order}, which does not divide p-1={p - 1}")
    rhs = module.scale(p - 1)
    for i in range(1, p - 1):
        rhs = rhs - module.twist(i * a)
    out = []
    for l, v in enumerate(rhs.mult):
        if v < 0 or v % p != 0:
            raise NotAnOrbitSum(
                f"coefficient {v} of psi^{l} in the recovery expression "
                f"is not a nonnegative multiple of {p}"
            )
        out.append(v // p)
    return VirtualCModule(c, tuple(out))
