"""Brute-force ground truth: explicit matrix modules over finite fields,
socle-filtration decomposition by linear algebra, and randomized property
suites cross-checking the closed-form module calculus.
"""

from __future__ import annotations

from random import Random

from ..gmodules import GModuleDecomp, GroupShape, indecomposable
from ..report import Check, CheckReport
from .field import SplittingField, splitting_degree
from .kernels import active_backend, identity, inverse, matmul, nullspace, rank, rref, solve
from .matrixmod import (
    MatrixModule,
    build_field,
    conjugated,
    decompose,
    direct_sum,
    fixed_submodule,
    max_module_dim,
    random_invertible,
    random_module,
    realize,
    regular_module,
    restrict_index_p_matrix,
    socle_layer_decomp,
    teichmueller_exponent,
    validate_relations,
)

__all__ = [
    "SplittingField",
    "splitting_degree",
    "MatrixModule",
    "build_field",
    "conjugated",
    "decompose",
    "direct_sum",
    "fixed_submodule",
    "max_module_dim",
    "random_invertible",
    "random_module",
    "realize",
    "regular_module",
    "restrict_index_p_matrix",
    "socle_layer_decomp",
    "teichmueller_exponent",
    "validate_relations",
    "active_backend",
    "identity",
    "inverse",
    "matmul",
    "nullspace",
    "rank",
    "rref",
    "solve",
    "DEFAULT_SHAPES",
    "self_check",
]

# Shapes with p in {2, 3, 5} and c in {1, 2, 4, 6}, all constraints satisfied.
DEFAULT_SHAPES: tuple[GroupShape, ...] = (
    GroupShape(2, 1, 1, 0),
    GroupShape(2, 2, 1, 0),
    GroupShape(2, 3, 1, 0),
    GroupShape(3, 1, 1, 0),
    GroupShape(3, 2, 1, 0),
    GroupShape(3, 1, 2, 1),
    GroupShape(3, 2, 2, 1),
    GroupShape(3, 1, 4, 2),
    GroupShape(3, 2, 4, 2),
    GroupShape(5, 1, 1, 0),
    GroupShape(5, 1, 2, 1),
    GroupShape(5, 1, 4, 1),
    GroupShape(5, 1, 6, 3),
    GroupShape(5, 2, 4, 1),
)


def _layer_containment_ok(mod: MatrixModule, layers) -> bool:
    """Layer j+1 embeds into the twist of layer j by the inverse character."""
    a = mod.shape.a_chi
    for lower, upper in zip(layers, layers[1:]):
        twisted = lower.twist(-a)
        if upper.dim() > lower.dim():
            return False
        if any(u > t for u, t in zip(upper.mult, twisted.mult)):
            return False
    return True


def self_check(
    seed: int = 0,
    modules_per_shape: int = 4,
    dim_budget: int = 40,
    shapes: tuple[GroupShape, ...] | None = None,
) -> CheckReport:
    """Seeded randomized cross-checks of the oracle against the closed forms.

    Every suite is exact: any failure indicates a genuine bug, not noise.
    """
    rng = Random(seed)
    shapes = shapes or DEFAULT_SHAPES
    checks: list[Check] = []

    roundtrip = regular = decomp_ok = layers_ok = contain_ok = 0
    restrict_ok = fixed_ok = basis_ok = 0
    roundtrip_bad = regular_bad = decomp_bad = layers_bad = contain_bad = 0
    restrict_bad = fixed_bad = basis_bad = 0

    for shape in shapes:
        fld = build_field(shape)
        for l in range(shape.c):
            for i in range(1, min(shape.order_h, 9) + 1):
                mod = realize(shape, l, i, fld)
                if decompose(mod) == indecomposable(shape, l, i):
                    roundtrip += 1
                else:
                    roundtrip_bad += 1
        if shape.order_h * shape.c <= 60:
            expected = GModuleDecomp(
                shape, {(l, shape.order_h): 1 for l in range(shape.c)}
            )
            if decompose(regular_module(shape, fld)) == expected:
                regular += 1
            else:
                regular_bad += 1
        for _ in range(modules_per_shape):
            mod, expected = random_module(shape, rng, dim_budget, fld, shuffle_basis=False)
            layers = socle_layer_decomp(mod)
            if layers == expected.socle_layers():
                layers_ok += 1
            else:
                layers_bad += 1
            if GModuleDecomp.from_socle_layers(shape, layers) == expected:
                decomp_ok += 1
            else:
                decomp_bad += 1
            if _layer_containment_ok(mod, layers):
                contain_ok += 1
            else:
                contain_bad += 1
            shuffled = conjugated(mod, random_invertible(fld, mod.dim, rng))
            if decompose(shuffled) == expected:
                basis_ok += 1
            else:
                basis_bad += 1
            if shape.n >= 1:
                if decompose(restrict_index_p_matrix(mod)) == expected.restrict_index_p():
                    restrict_ok += 1
                else:
                    restrict_bad += 1
            if shape.n >= 1:
                height = shape.p ** (shape.n - 1)
                top = shape.order_h
                sub_layers = socle_layer_decomp(fixed_submodule(mod, height))
                dominated = all(
                    layers[top - height + j].dim() <= sub_layers[j].dim()
                    for j in range(height)
                )
                if dominated:
                    fixed_ok += 1
                else:
                    fixed_bad += 1

    def tally(name: str, good: int, bad: int) -> Check:
        return Check(name, bad == 0, f"{good} passed, {bad} failed")

    checks.append(tally("realize/decompose round trip", roundtrip, roundtrip_bad))
    checks.append(tally("regular module is one projective per character", regular, regular_bad))
    checks.append(tally("socle layers match the closed form", layers_ok, layers_bad))
    checks.append(tally("random sums decompose to what was built", decomp_ok, decomp_bad))
    checks.append(tally("layer j+1 embeds in twisted layer j", contain_ok, contain_bad))
    checks.append(tally("decomposition survives a basis change", basis_ok, basis_bad))
    checks.append(tally("index-p restriction matches layer regrouping", restrict_ok, restrict_bad))
    checks.append(tally("trace bound into the fixed submodule", fixed_ok, fixed_bad))
    return CheckReport(tuple(checks))
