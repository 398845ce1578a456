"""Lie models 𝔏_0 .. 𝔏_4 of the simplices.

𝔏_n is free on generators ``a_I`` for nonempty ``I ⊆ {0..n}``, of degree
``#I - 2``.  The differential is stored unperturbed (``δ``); ``δ_i`` denotes
the perturbation ``δ + [a_i, -]``.

* vertices are Maurer-Cartan: ``δ a_i = -[a_i, a_i]/2``;
* ``δ a_01 = [a_01, a_1] + Σ_k B_k/k! ad_{a_01}^k (a_1 - a_0)``;
* every proper face ``a_I`` gets the top differential of 𝔏_{#I-1} pushed
  forward along the coface ``j ↦ i_j``;
* the top generator of 𝔏_n (n ≥ 2) satisfies ``δ_0 a_{0..n} = Φ`` with Φ
  free of ``a_{0..n}``; in terms of δ this reads
  ``δ a_{0..n} = Φ - [a_0, a_{0..n}]``.

The formulas for Φ (``ij`` stands for ``a_ij``, ``ji`` for ``-a_ij``, ``*`` is
BCH, ``e^x = e^{ad_x}``, ``ε^x = ε(ad_x)``, every • taken with respect to δ_0):

* n = 2: ``01 * 12 * 20``
* n = 3: ``e^{01}(a_123) • a_013 • a_023⁻¹ • a_012⁻¹``
* n = 4: ``τ(a_012, a_024 • a_034⁻¹ • a_023⁻¹) + e^{01*12*20}(-a_0234)
  + e^{01}(a_1234) + a_0123 + ε^{01*12*23*31*10}(a_0134)
  + ε^{01*12*23*34*42*21*10}(-a_0124)``
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import (
    AlgebraContext,
    AlgebraError,
    Element,
    Morphism,
    bracket,
    component,
    make_context,
    validate_chain_morphism,
)
from .bch import bch_many, bullet_many
from .correctors import tau
from .differential import (
    DGLPresentation,
    Derivation,
    check_mc,
    perturbed_differential,
    square_defects,
)
from .rational import mpq, factorial
from .series import ad_series, bernoulli, epsilon_coefficients, exp_ad

__all__ = [
    "SimplexModel",
    "ModelReport",
    "CheckResult",
    "DEFAULT_TRUNCATION",
    "MAX_DIMENSION",
    "face_name",
    "simplex_context",
    "build_model",
    "coface_morphism",
    "top_boundary_phi",
    "verify_model",
]

MAX_DIMENSION = 4
DEFAULT_TRUNCATION = {0: 8, 1: 8, 2: 6, 3: 6, 4: 4}


def face_name(I) -> str:
    return "a" + "".join(str(i) for i in I)


def _faces(n: int) -> list:
    """Nonempty subsets of {0..n}, by size then lexicographically."""
    out = []
    for size in range(1, n + 2):
        out.extend(itertools.combinations(range(n + 1), size))
    return out


def simplex_context(n: int, truncation: int) -> AlgebraContext:
    return make_context([(face_name(I), len(I) - 2) for I in _faces(n)], truncation)


@dataclass(frozen=True)
class SimplexModel:
    n: int
    presentation: DGLPresentation
    phi: Element | None = field(default=None, compare=False)

    @property
    def context(self) -> AlgebraContext:
        return self.presentation.context

    @property
    def differential(self) -> Derivation:
        return self.presentation.differential

    @property
    def truncation(self) -> int:
        return self.context.truncation

    def gen(self, I) -> Element:
        if isinstance(I, str):
            return self.context.gen(I)
        return self.context.gen(face_name(I))

    def vertex_differential(self, i: int) -> Derivation:
        """``δ_i = δ + [a_i, -]``."""
        return perturbed_differential(self.differential, self.gen((i,)))


def _check_dimension(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or not 0 <= n <= MAX_DIMENSION:
        raise AlgebraError(f"simplex dimension must be in 0..{MAX_DIMENSION}, got {n!r}")


def _interval_image(ctx: AlgebraContext) -> Element:
    a0, a1, a01 = ctx.gen("a0"), ctx.gen("a1"), ctx.gen("a01")
    N = ctx.truncation
    B = bernoulli(N)
    coeffs = [B[k] / factorial(k) for k in range(N + 1)]
    return bracket(a01, a1) + ad_series(coeffs, a01, a1 - a0)


def _phi(n: int, ctx: AlgebraContext, d0: Derivation) -> Element:
    """The template Φ of 𝔏_n in ``ctx`` with • taken with respect to ``d0``."""
    g = {I: ctx.gen(face_name(I)) for I in _faces(n)}

    def a(*I):
        return g[tuple(I)]

    def edge(i, j):
        return a(i, j) if i < j else -a(j, i)

    def path(*vs):
        return bch_many(*(edge(i, j) for i, j in zip(vs, vs[1:])))

    if n == 2:
        return path(0, 1, 2, 0)
    if n == 3:
        return bullet_many(
            d0, [exp_ad(a(0, 1), a(1, 2, 3)), a(0, 1, 3), -a(0, 2, 3), -a(0, 1, 2)]
        )
    if n == 4:
        N = ctx.truncation
        eps = epsilon_coefficients(N)
        inner = bullet_many(d0, [a(0, 2, 4), -a(0, 3, 4), -a(0, 2, 3)])
        return (
            tau(d0, a(0, 1, 2), inner)
            + exp_ad(path(0, 1, 2, 0), -a(0, 2, 3, 4))
            + exp_ad(a(0, 1), a(1, 2, 3, 4))
            + a(0, 1, 2, 3)
            + ad_series(eps, path(0, 1, 2, 3, 1, 0), a(0, 1, 3, 4))
            + ad_series(eps, path(0, 1, 2, 3, 4, 2, 1, 0), -a(0, 1, 2, 4))
        )
    raise AlgebraError(f"no top formula for dimension {n}")


def _face_morphism(I, source_ctx: AlgebraContext, target_ctx: AlgebraContext) -> Morphism:
    k = len(I) - 1
    images = {}
    for J in _faces(k):
        images[face_name(J)] = target_ctx.gen(face_name(tuple(I[j] for j in J)))
    return Morphism(source_ctx, target_ctx, images)


def build_model(n: int, N: int | None = None) -> SimplexModel:
    """Construct 𝔏_n truncated at word length ``N``."""
    # validate before the cache: 2.0 and True hash like 2 and 1
    _check_dimension(n)
    if N is None:
        N = DEFAULT_TRUNCATION[n]
    if isinstance(N, bool) or not isinstance(N, int) or N < 2:
        raise AlgebraError("simplex models need an integer truncation N >= 2")
    return _build_model(n, N)


@lru_cache(maxsize=None)
def _build_model(n: int, N: int) -> SimplexModel:
    ctx = simplex_context(n, N)
    images: dict = {}
    for i in range(n + 1):
        ai = ctx.gen(f"a{i}")
        images[f"a{i}"] = bracket(ai, ai).scale(mpq(-1, 2))
    top = tuple(range(n + 1))
    for I in _faces(n):
        if len(I) < 2 or I == top:
            continue
        lower = _build_model(len(I) - 1, N)
        f = _face_morphism(I, lower.context, ctx)
        k_top = face_name(range(len(I)))
        images[face_name(I)] = f(lower.differential.image(k_top))
    phi = None
    if n == 1:
        images["a01"] = _interval_image(ctx)
    elif n >= 2:
        partial = Derivation(ctx, -1, images)
        d0 = perturbed_differential(partial, ctx.gen("a0"))
        phi = _phi(n, ctx, d0)
        a_top = ctx.gen(face_name(top))
        images[face_name(top)] = phi - bracket(ctx.gen("a0"), a_top)
    d = Derivation(ctx, -1, images)
    return SimplexModel(n, DGLPresentation(ctx, d, validate=False), phi)


def coface_morphism(f, source: SimplexModel, target: SimplexModel) -> Morphism:
    """The morphism ``a_J ↦ a_{f(J)}`` induced by an increasing map ``f``.

    Raises if ``f`` is not strictly increasing or the result is not a chain map.
    """
    f = tuple(f)
    k, n = source.n, target.n
    if len(f) != k + 1:
        raise AlgebraError(f"coface map must have {k + 1} values")
    if any(not 0 <= x <= n for x in f) or any(x >= y for x, y in zip(f, f[1:])):
        raise AlgebraError(f"coface map {f} is not strictly increasing into 0..{n}")
    if source.truncation != target.truncation:
        raise AlgebraError("models have different truncations")
    m = _face_morphism(f, source.context, target.context)
    defects = validate_chain_morphism(m, source.differential, target.differential)
    if defects:
        raise AlgebraError(
            f"coface {f} is not a chain map on {[x.generator for x in defects]}"
        )
    return m


def top_boundary_phi(n: int, model: SimplexModel) -> Element:
    """Φ of 𝔏_n (n = 2..4): the δ_0-image of the top generator."""
    if n not in (2, 3, 4):
        raise AlgebraError("Φ is defined for n = 2, 3, 4")
    if model.n != n:
        raise AlgebraError(f"model has dimension {model.n}, not {n}")
    return _phi(n, model.context, model.vertex_differential(0))


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    failures: tuple = ()  # (subject, lowest word length of the discrepancy)


@dataclass(frozen=True)
class ModelReport:
    n: int
    truncation: int
    checks: tuple

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _result(name: str, bad: list, detail: str) -> CheckResult:
    return CheckResult(name, not bad, detail, tuple(bad))


def _check_vertices(model):
    d = model.differential
    bad = [(f"a{i}", 1) for i in range(model.n + 1) if not check_mc(d, model.gen(f"a{i}"))]
    return _result("maurer_cartan_vertices", bad, "δa_i = -[a_i,a_i]/2")


def _check_linear_parts(model):
    ctx = model.context
    bad = []
    for I in _faces(model.n):
        expected = ctx.zero()
        if len(I) > 1:
            for j in range(len(I)):
                face = I[:j] + I[j + 1 :]
                expected = expected + ctx.gen(face_name(face)).scale((-1) ** j)
        diff = component(model.differential.image(face_name(I)), 1) - expected
        if diff:
            bad.append((face_name(I), 1))
    return _result("linear_part", bad, "δ¹a_I is the cellular boundary")


def _check_square(model):
    bad = [(g, dd.min_length()) for g, dd in square_defects(model.differential).items()]
    return _result("d_squared", bad, "δ∘δ = 0 on generators")


def _check_inductive(model):
    if model.n < 2:
        return CheckResult("inductive_form", True, "not applicable for n < 2")
    top = face_name(range(model.n + 1))
    a_top = model.gen(top)
    phi = model.differential.image(top) + bracket(model.gen("a0"), a_top)
    idx = model.context.index(top)
    bad = []
    if idx in phi.letters():
        bad.append((top, phi.min_length()))
    diff = phi - top_boundary_phi(model.n, model)
    if diff:
        bad.append(("Φ", diff.min_length()))
    return _result("inductive_form", bad, "δa_top + [a_0, a_top] = Φ, free of a_top")


def _check_phi_cycle(model):
    if model.n < 2:
        return CheckResult("phi_cycle", True, "not applicable for n < 2")
    phi = top_boundary_phi(model.n, model)
    r = model.vertex_differential(0).apply(phi)
    bad = [("Φ", r.min_length())] if r else []
    return _result("phi_cycle", bad, "δ_0 Φ = 0")


def _check_cofaces(model):
    bad = []
    n, N = model.n, model.truncation
    count = 0
    for I in _faces(n):
        if len(I) < 2:
            continue
        count += 1
        source = model if len(I) == n + 1 else build_model(len(I) - 1, N)
        m = _face_morphism(I, source.context, model.context)
        for defect in validate_chain_morphism(m, source.differential, model.differential):
            bad.append((f"{face_name(I)}:{defect.generator}", defect.lowest_length))
    return _result("coface_chain_maps", bad, f"{count} cofaces checked")


def _check_gauge(model):
    if model.n != 1:
        return CheckResult("gauge_intertwining", True, "only checked for n = 1")
    d0 = model.vertex_differential(0)
    d1 = model.vertex_differential(1)
    a01 = model.gen("a01")
    bad = []
    for g in model.context.names:
        x = model.gen(g)
        diff = d0.apply(exp_ad(a01, x)) - exp_ad(a01, d1.apply(x))
        if diff:
            bad.append((g, diff.min_length()))
    return _result("gauge_intertwining", bad, "δ_0 e^{ad a01}(x) = e^{ad a01}(δ_1 x)")


_CHECKS = (
    _check_vertices,
    _check_linear_parts,
    _check_square,
    _check_inductive,
    _check_phi_cycle,
    _check_cofaces,
    _check_gauge,
)


def verify_model(model: SimplexModel, threads: int = 1) -> ModelReport:
    """Run every model check modulo the model's truncation."""
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda check: check(model), _CHECKS))
    else:
        results = [check(model) for check in _CHECKS]
    return ModelReport(model.n, model.truncation, tuple(results))
