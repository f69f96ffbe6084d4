"""Indecomposable-module calculus for G = Z/p^n semidirect Z/c.

Write H = <sigma> for the cyclic p-part and C = <rho> for the complement,
with rho acting on sigma through a character chi = psi^a_chi of order
dividing p-1.  The indecomposable k[G]-modules are the uniserial modules
J_i(psi^l) of length i (1 <= i <= p^n) with socle psi^l, so a module is a
multiset of pairs (l, i).

The complete invariant used throughout is the sequence of socle layers
    layer j of M  =  ker((sigma-1)^j) / ker((sigma-1)^(j-1)),
a k[C]-module for each j = 1..p^n.  Layer j of J_i(psi^l) is psi^(l-(j-1)a)
when j <= i and zero otherwise, and a module is determined by its layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping

from .cmodules import VirtualCModule
from .errors import InconsistentLayerData, InputValidationError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroupShape:
    """Invariants (p, n, c, a_chi) pinning down G = Z/p^n semidirect_chi Z/c."""

    p: int
    n: int
    c: int
    a_chi: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InputValidationError(f"p={self.p} is not prime")
        if self.n < 0:
            raise InputValidationError(f"n={self.n} must be nonnegative")
        if self.c < 1:
            raise InputValidationError(f"c={self.c} must be positive")
        if gcd(self.p, self.c) != 1:
            raise InputValidationError(f"p={self.p} must not divide c={self.c}")
        object.__setattr__(self, "a_chi", self.a_chi % self.c)
        # chi must factor through Aut(Z/p) = F_p^*, i.e. have order dividing p-1
        if ((self.p - 1) * self.a_chi) % self.c != 0:
            raise InputValidationError(
                f"psi^{self.a_chi} has order {self.c // gcd(self.c, self.a_chi)} "
                f"not dividing p-1={self.p - 1}"
            )

    @property
    def order_h(self) -> int:
        return self.p**self.n

    @property
    def order(self) -> int:
        return self.p**self.n * self.c

    def chi_order(self) -> int:
        return self.c // gcd(self.c, self.a_chi)

    def index_p_subgroup(self) -> GroupShape:
        """Shape of <sigma^p> semidirect C; the conjugation character is unchanged."""
        if self.n < 1:
            raise InputValidationError("n must be >= 1 to pass to the index-p subgroup")
        return GroupShape(self.p, self.n - 1, self.c, self.a_chi)


class GModuleDecomp:
    """A finite-dimensional k[G]-module as a multiset of indecomposables.

    Stored as a mapping (l, i) -> multiplicity for the summand J_i(psi^l);
    zero multiplicities are dropped, so equality is multiset equality.
    """

    __slots__ = ("shape", "_counts")

    def __init__(
        self,
        shape: GroupShape,
        counts: Mapping[tuple[int, int], int] | Iterable[tuple[tuple[int, int], int]],
    ):
        items = counts.items() if isinstance(counts, Mapping) else counts
        clean: dict[tuple[int, int], int] = {}
        top = shape.order_h
        for (l, i), v in items:
            v = int(v)
            if v < 0:
                raise InputValidationError(f"negative multiplicity {v} for (l={l}, i={i})")
            if v == 0:
                continue
            if not (1 <= i <= top):
                raise InputValidationError(f"length {i} outside 1..{top}")
            if not (0 <= l < shape.c):
                raise InputValidationError(f"socle exponent {l} outside 0..{shape.c - 1}")
            clean[(l, i)] = clean.get((l, i), 0) + v
        self.shape = shape
        self._counts = dict(sorted(clean.items()))

    @property
    def counts(self) -> dict[tuple[int, int], int]:
        return dict(self._counts)

    def multiplicity(self, l: int, i: int) -> int:
        return self._counts.get((l % self.shape.c, i), 0)

    def dim(self) -> int:
        return sum(i * v for (_, i), v in self._counts.items())

    def summand_count(self) -> int:
        """Number of indecomposable summands; equals dim of the sigma-invariants."""
        return sum(self._counts.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GModuleDecomp):
            return NotImplemented
        return self.shape == other.shape and self._counts == other._counts

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self._counts.items())))

    def __repr__(self) -> str:
        return f"GModuleDecomp({self.shape!r}, {self._counts!r})"

    def __add__(self, other: GModuleDecomp) -> GModuleDecomp:
        if self.shape != other.shape:
            raise InputValidationError("direct sum requires equal group shapes")
        merged = dict(self._counts)
        for k, v in other._counts.items():
            merged[k] = merged.get(k, 0) + v
        return GModuleDecomp(self.shape, merged)

    def pretty(self) -> str:
        """Human-readable direct sum, longest summands first."""
        parts = []
        for (l, i), v in sorted(self._counts.items(), key=lambda kv: (-kv[0][1], kv[0][0])):
            head = f"J_{i}" if self.shape.c == 1 else f"J_{i}(ψ^{l})"
            parts.append(head if v == 1 else f"{head}^⊕{v}")
        return " ⊕ ".join(parts) if parts else "0"

    # -- socle layers ------------------------------------------------------

    def socle_layer(self, j: int) -> VirtualCModule:
        """The k[C]-module ker((sigma-1)^j)/ker((sigma-1)^(j-1)), 1 <= j <= p^n.

        J_i(psi^l) contributes psi^(l-(j-1)a_chi) exactly when j <= i.
        """
        shape = self.shape
        if not (1 <= j <= shape.order_h):
            raise InputValidationError(f"layer index {j} outside 1..{shape.order_h}")
        shift = ((j - 1) * shape.a_chi) % shape.c
        out = [0] * shape.c
        for (l, i), v in self._counts.items():
            if i >= j:
                out[(l - shift) % shape.c] += v
        return VirtualCModule(shape.c, tuple(out))

    def socle_layers(self) -> list[VirtualCModule]:
        return [self.socle_layer(j) for j in range(1, self.shape.order_h + 1)]

    @classmethod
    def from_socle_layers(
        cls, shape: GroupShape, layers: Iterable[VirtualCModule]
    ) -> GModuleDecomp:
        """Reconstruct the unique module with the given socle layers.

        With S_j(l) the multiplicity of psi^(l-(j-1)a_chi) in layer j, the
        multiplicity of J_j(psi^l) is S_j(l) - S_(j+1)(l); a negative
        difference means the data comes from no module at all.
        """
        layers = list(layers)
        top = shape.order_h
        if len(layers) != top:
            raise InputValidationError(f"expected {top} layers, got {len(layers)}")
        s = []
        for j, layer in enumerate(layers, start=1):
            if layer.c != shape.c:
                raise InputValidationError(f"layer {j} has c={layer.c}, expected {shape.c}")
            layer.materialize()
            shift = ((j - 1) * shape.a_chi) % shape.c
            s.append([layer.mult[(l - shift) % shape.c] for l in range(shape.c)])
        s.append([0] * shape.c)
        counts: dict[tuple[int, int], int] = {}
        for j in range(1, top + 1):
            for l in range(shape.c):
                v = s[j - 1][l] - s[j][l]
                if v < 0:
                    raise InconsistentLayerData(
                        f"layer {j} carries fewer copies through psi^{l} than layer {j + 1}"
                    )
                if v:
                    counts[(l, j)] = v
        return cls(shape, counts)

    # -- restrictions ------------------------------------------------------

    def restrict_to_c(self) -> VirtualCModule:
        """Restriction to the complement C; the sum of all socle layers."""
        out = [0] * self.shape.c
        for (l, i), v in self._counts.items():
            for t in range(i):
                out[(l - t * self.shape.a_chi) % self.shape.c] += v
        return VirtualCModule(self.shape.c, tuple(out))

    def restrict_index_p(self) -> GModuleDecomp:
        """Restriction to <sigma^p> semidirect C, at level n-1.

        Layer i of the restriction is the direct sum of layers
        p(i-1)+1, ..., pi of the original module, because
        (sigma^p - 1) = (sigma - 1)^p in characteristic p.
        """
        sub = self.shape.index_p_subgroup()
        p = self.shape.p
        layers = self.socle_layers()
        grouped = []
        for i in range(1, sub.order_h + 1):
            acc = VirtualCModule.zero(self.shape.c)
            for j in range(p * (i - 1), p * i):
                acc = acc + layers[j]
            grouped.append(acc)
        return GModuleDecomp.from_socle_layers(sub, grouped)

    def forget_characters(self) -> GModuleDecomp:
        """Collapse C: the underlying k[H]-module as Jordan blocks (c = 1)."""
        shape = GroupShape(self.shape.p, self.shape.n, 1, 0)
        counts: dict[tuple[int, int], int] = {}
        for (_, i), v in self._counts.items():
            counts[(0, i)] = counts.get((0, i), 0) + v
        return GModuleDecomp(shape, counts)


def indecomposable(shape: GroupShape, l: int, i: int, count: int = 1) -> GModuleDecomp:
    """The module J_i(psi^l)^count."""
    return GModuleDecomp(shape, {(l % shape.c, i): count})
