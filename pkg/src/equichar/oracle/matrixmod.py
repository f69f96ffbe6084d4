"""Explicit matrix modules over the splitting field, and brute-force
decomposition into indecomposables via the socle filtration.

A module is a pair of matrices: the action of the generator sigma of the
cyclic p-part and of the generator rho of the complement.  Decomposition
needs no structure theory beyond linear algebra: the kernels of powers of
(sigma - 1) are computed by elimination, rho is diagonalized on each layer,
and the layer data determines the module.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from random import Random

import numpy as np

from ..cmodules import VirtualCModule
from ..errors import (
    InconsistentLayerData,
    InputValidationError,
    RelationCheckFailed,
)
from ..gmodules import GModuleDecomp, GroupShape
from .field import SplittingField
from .kernels import identity, inverse, matmul, nullspace, rank, solve

_MAX_DIM_ENV = "EQUICHAR_MAX_DIM"
_DEFAULT_MAX_DIM = 512


def max_module_dim() -> int:
    raw = os.environ.get(_MAX_DIM_ENV)
    if raw is None:
        return _DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputValidationError(f"{_MAX_DIM_ENV}={raw!r} is not an integer") from exc
    if value < 1:
        raise InputValidationError(f"{_MAX_DIM_ENV} must be positive")
    return value


def build_field(shape: GroupShape) -> SplittingField:
    return SplittingField(shape.p, shape.c)


@dataclass(frozen=True)
class MatrixModule:
    """Matrices of sigma and rho acting on F_q^d."""

    shape: GroupShape
    field: SplittingField
    sigma: np.ndarray
    rho: np.ndarray

    def __post_init__(self) -> None:
        sigma = np.ascontiguousarray(self.sigma, dtype=np.int64)
        rho = np.ascontiguousarray(self.rho, dtype=np.int64)
        if sigma.shape != rho.shape or sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
            raise InputValidationError("sigma and rho must be square matrices of equal size")
        d = sigma.shape[0]
        cap = max_module_dim()
        if d > cap:
            raise InputValidationError(f"module dimension {d} exceeds the cap {cap}")
        q = self.field.q
        if (self.field.p, self.field.c) != (self.shape.p, self.shape.c):
            raise InputValidationError("field does not match the group shape")
        for mat in (sigma, rho):
            if mat.size and (mat.min() < 0 or mat.max() >= q):
                raise InputValidationError(f"matrix entries must encode elements of F_{q}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return self.sigma.shape[0]


def teichmueller_exponent(shape: GroupShape, fld: SplittingField) -> int:
    """The exponent t mod p^n of the conjugation rho sigma rho^-1 = sigma^t.

    The conjugation character takes values in F_p^*, and its action on
    Z/p^n is by the unique lift of that value with order prime to p."""
    if shape.n == 0:
        return 1
    a_val = fld.zeta_pow(shape.a_chi)
    if a_val >= shape.p:
        raise RelationCheckFailed(f"chi value {a_val} is not in the prime subfield")
    return pow(a_val, shape.p ** (shape.n - 1), shape.p**shape.n)


def _mat_pow(a: np.ndarray, e: int, fld: SplittingField) -> np.ndarray:
    out = identity(a.shape[0])
    cur = a
    while e:
        if e & 1:
            out = matmul(out, cur, fld)
        cur = matmul(cur, cur, fld)
        e >>= 1
    return out


def validate_relations(mod: MatrixModule) -> None:
    """Check sigma^(p^n) = 1, rho^c = 1 and the conjugation relation."""
    fld, shape = mod.field, mod.shape
    d = mod.dim
    eye = identity(d)
    if not np.array_equal(_mat_pow(mod.sigma, shape.order_h, fld), eye):
        raise RelationCheckFailed(f"sigma does not have order dividing {shape.order_h}")
    if not np.array_equal(_mat_pow(mod.rho, shape.c, fld), eye):
        raise RelationCheckFailed(f"rho does not have order dividing {shape.c}")
    t = teichmueller_exponent(shape, fld)
    lhs = matmul(mod.rho, mod.sigma, fld)
    rhs = matmul(_mat_pow(mod.sigma, t, fld), mod.rho, fld)
    if not np.array_equal(lhs, rhs):
        raise RelationCheckFailed("rho sigma rho^-1 != sigma^t for the lifted exponent t")


def _truncated_poly_mul(a: list[int], b: list[int], p: int, length: int) -> list[int]:
    out = [0] * length
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if i + j >= length:
                    break
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def realize(
    shape: GroupShape, l: int, i: int, fld: SplittingField | None = None
) -> MatrixModule:
    """An explicit copy of the uniserial module of length i with socle psi^l.

    On the basis 1, x, ..., x^(i-1) of F_q[x]/(x^i), sigma acts as
    multiplication by 1 + x (a single Jordan block) and rho substitutes
    x -> (1+x)^t - 1 for the lifted conjugation exponent t, scaled so the
    socle carries psi^l.  The group relations hold exactly and are checked.
    """
    fld = fld or build_field(shape)
    if not (1 <= i <= shape.order_h):
        raise InputValidationError(f"length {i} outside 1..{shape.order_h}")
    if not (0 <= l < shape.c):
        raise InputValidationError(f"socle exponent {l} outside 0..{shape.c - 1}")
    p = shape.p
    t = teichmueller_exponent(shape, fld)
    sigma = np.zeros((i, i), dtype=np.int64)
    for s in range(i):
        sigma[s, s] = 1
        if s + 1 < i:
            sigma[s + 1, s] = 1
    # (1+x)^t - 1 truncated mod x^i, coefficients in the prime subfield
    subst = [1] + [0] * (i - 1)
    base = ([1, 1] + [0] * i)[:i]
    e = t
    while e:
        if e & 1:
            subst = _truncated_poly_mul(subst, base, p, i)
        base = _truncated_poly_mul(base, base, p, i)
        e >>= 1
    subst[0] = (subst[0] - 1) % p
    scale = fld.zeta_pow((l - shape.a_chi * (i - 1)) % shape.c)
    rho = np.zeros((i, i), dtype=np.int64)
    col = [1] + [0] * (i - 1)
    for tcol in range(i):
        for s in range(i):
            rho[s, tcol] = fld.mul_el(scale, col[s])
        if tcol + 1 < i:
            col = _truncated_poly_mul(col, subst, p, i)
    mod = MatrixModule(shape, fld, sigma, rho)
    validate_relations(mod)
    return mod


def regular_module(shape: GroupShape, fld: SplittingField | None = None) -> MatrixModule:
    """The group algebra acting on itself by left translation."""
    fld = fld or build_field(shape)
    h, c = shape.order_h, shape.c
    t = teichmueller_exponent(shape, fld)
    d = h * c
    sigma = np.zeros((d, d), dtype=np.int64)
    rho = np.zeros((d, d), dtype=np.int64)
    for a in range(h):
        for k in range(c):
            src = a * c + k
            sigma[((a + 1) % h) * c + k, src] = 1
            rho[(a * t % h) * c + (k + 1) % c, src] = 1
    mod = MatrixModule(shape, fld, sigma, rho)
    validate_relations(mod)
    return mod


def direct_sum(first: MatrixModule, second: MatrixModule) -> MatrixModule:
    if first.shape != second.shape or first.field != second.field:
        raise InputValidationError("direct sum requires equal shapes and fields")
    d1, d2 = first.dim, second.dim
    sigma = np.zeros((d1 + d2, d1 + d2), dtype=np.int64)
    rho = np.zeros((d1 + d2, d1 + d2), dtype=np.int64)
    sigma[:d1, :d1] = first.sigma
    sigma[d1:, d1:] = second.sigma
    rho[:d1, :d1] = first.rho
    rho[d1:, d1:] = second.rho
    return MatrixModule(first.shape, first.field, sigma, rho)


def conjugated(mod: MatrixModule, g: np.ndarray) -> MatrixModule:
    """The same module in the basis g: actions become g A g^-1."""
    fld = mod.field
    ginv = inverse(g, fld)
    return MatrixModule(
        mod.shape,
        fld,
        matmul(matmul(g, mod.sigma, fld), ginv, fld),
        matmul(matmul(g, mod.rho, fld), ginv, fld),
    )


def random_invertible(fld: SplittingField, d: int, rng: Random) -> np.ndarray:
    while True:
        g = np.array(
            [[rng.randrange(fld.q) for _ in range(d)] for _ in range(d)], dtype=np.int64
        )
        if rank(g, fld) == d:
            return g


def random_module(
    shape: GroupShape,
    rng: Random,
    dim_budget: int,
    fld: SplittingField | None = None,
    shuffle_basis: bool = True,
) -> tuple[MatrixModule, GModuleDecomp]:
    """A random direct sum of indecomposables (optionally in a random basis)
    together with its known decomposition."""
    fld = fld or build_field(shape)
    counts: dict[tuple[int, int], int] = {}
    mod: MatrixModule | None = None
    total = 0
    while True:
        room = dim_budget - total
        if room < 1 or (mod is not None and rng.random() < 0.1):
            break
        i = rng.randint(1, min(shape.order_h, room))
        l = rng.randrange(shape.c)
        summand = realize(shape, l, i, fld)
        mod = summand if mod is None else direct_sum(mod, summand)
        counts[(l, i)] = counts.get((l, i), 0) + 1
        total += i
    assert mod is not None
    if shuffle_basis:
        mod = conjugated(mod, random_invertible(fld, mod.dim, rng))
    return mod, GModuleDecomp(shape, counts)


# -- decomposition -------------------------------------------------------------


def socle_layer_decomp(mod: MatrixModule) -> list[VirtualCModule]:
    """The k[C]-module of each layer ker((sigma-1)^j)/ker((sigma-1)^(j-1)).

    Layer j is computed as an eigenvalue count: rho is semisimple, so the
    multiplicity of psi^l in ker((sigma-1)^j) is its dimension minus the
    rank of (rho - zeta^l) restricted there, and layer multiplicities are
    consecutive differences.
    """
    fld, shape = mod.field, mod.shape
    c, top, d = shape.c, shape.order_h, mod.dim
    nil = fld.add[mod.sigma, fld.neg[identity(d)]]
    shifted = []
    for l in range(c):
        r_l = mod.rho.copy()
        z = fld.neg_el(fld.zeta_pow(l))
        for s in range(d):
            r_l[s, s] = fld.add_el(int(r_l[s, s]), z)
        shifted.append(r_l)
    layers: list[VirtualCModule] = []
    prev = np.zeros(c, dtype=np.int64)
    prev_total = 0
    power = nil
    saturated = False
    for j in range(1, top + 1):
        if saturated:
            layers.append(VirtualCModule.zero(c))
            continue
        kernel = nullspace(power, fld)
        k_j = kernel.shape[1]
        if c == 1:
            counts = np.array([k_j], dtype=np.int64)
        else:
            counts = np.array(
                [k_j - rank(matmul(shifted[l], kernel, fld), fld) for l in range(c)],
                dtype=np.int64,
            )
        if int(counts.sum()) != k_j:
            raise InconsistentLayerData(
                "rho is not semisimple with c-th roots of unity on the kernel "
                "filtration; the matrices are not a module over this shape"
            )
        diff = counts - prev
        if diff.min() < 0:
            raise InconsistentLayerData("kernel filtration loses an eigenvalue")
        layers.append(VirtualCModule(c, tuple(int(v) for v in diff)))
        prev, prev_total = counts, k_j
        if k_j == d:
            saturated = True
        elif j < top:
            power = matmul(power, nil, fld)
    if prev_total != d:
        raise InconsistentLayerData(
            f"(sigma-1)^{top} is not zero; sigma has order larger than {top}"
        )
    return layers


def decompose(mod: MatrixModule) -> GModuleDecomp:
    """Write the module as a sum of J_i(psi^l), purely by linear algebra."""
    return GModuleDecomp.from_socle_layers(mod.shape, socle_layer_decomp(mod))


def restrict_index_p_matrix(mod: MatrixModule) -> MatrixModule:
    """The same space as a module over <sigma^p> semidirect C."""
    return MatrixModule(
        mod.shape.index_p_subgroup(),
        mod.field,
        _mat_pow(mod.sigma, mod.shape.p, mod.field),
        mod.rho,
    )


def fixed_submodule(mod: MatrixModule, height: int) -> MatrixModule:
    """ker((sigma-1)^height) as a module at level n-1.

    sigma^(p^(n-1)) acts trivially on ker((sigma-1)^(p^(n-1))), so the
    action there factors through the quotient of H of order p^(n-1)."""
    fld = mod.field
    nil = fld.add[mod.sigma, fld.neg[identity(mod.dim)]]
    basis = nullspace(_mat_pow_nilpotent(nil, height, fld), fld)
    sigma_k = solve(basis, matmul(mod.sigma, basis, fld), fld)
    rho_k = solve(basis, matmul(mod.rho, basis, fld), fld)
    sub_shape = GroupShape(mod.shape.p, mod.shape.n - 1, mod.shape.c, mod.shape.a_chi)
    return MatrixModule(sub_shape, fld, sigma_k, rho_k)


def _mat_pow_nilpotent(a: np.ndarray, e: int, fld: SplittingField) -> np.ndarray:
    out = identity(a.shape[0])
    for _ in range(e):
        out = matmul(out, a, fld)
    return out
