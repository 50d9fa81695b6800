"""Brackets on sections of the generalized tangent bundle TM (+) Wedge^n T*M.

A section pairs a vector field with an n-form.  This module provides the
symmetric pairing, the skew higher-order Courant bracket, the non-skew
higher-order Dorfman bracket, deformations by an (n+2)-form, gauge
shears by an (n+1)-form, and seeded exact verification suites for the
identities those operations satisfy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .exterior import (
    Context,
    Form,
    MultiVec,
    contract_vec_into_form,
    d_scalar,
    ext_d,
    i_vec,
    lie_form,
    random_form,
    random_multivec,
    random_poly,
    vec_apply,
    vec_bracket,
    wedge,
)
from .scalar import ChartMismatchError

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Section:
    """An element X + alpha of the generalized tangent bundle."""

    ctx: Context
    vec: MultiVec
    form: Form

    def __post_init__(self):
        if self.vec.degree != 1:
            raise ValueError("vector part must have degree 1")
        if self.form.degree != self.ctx.n:
            raise ValueError(f"form part must have degree n={self.ctx.n}, got {self.form.degree}")
        if self.vec.m != self.ctx.m or self.form.m != self.ctx.m:
            raise ChartMismatchError("section parts live on a different chart than the context")

    @classmethod
    def zero(cls, ctx: Context) -> "Section":
        return cls(ctx, MultiVec.zero(ctx.m, 1), Form.zero(ctx.m, ctx.n))

    @classmethod
    def of_vec(cls, ctx: Context, X: MultiVec) -> "Section":
        return cls(ctx, X, Form.zero(ctx.m, ctx.n))

    @classmethod
    def of_form(cls, ctx: Context, a: Form) -> "Section":
        return cls(ctx, MultiVec.zero(ctx.m, 1), a)

    @property
    def is_zero(self) -> bool:
        return self.vec.is_zero and self.form.is_zero

    def _check_ctx(self, other: "Section") -> None:
        if self.ctx != other.ctx:
            raise ChartMismatchError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other: "Section") -> "Section":
        self._check_ctx(other)
        return Section(self.ctx, self.vec + other.vec, self.form + other.form)

    def __sub__(self, other: "Section") -> "Section":
        self._check_ctx(other)
        return Section(self.ctx, self.vec - other.vec, self.form - other.form)

    def __neg__(self) -> "Section":
        return Section(self.ctx, -self.vec, -self.form)

    def __mul__(self, scalar):
        return Section(self.ctx, scalar * self.vec, scalar * self.form)

    __rmul__ = __mul__

    def add_form(self, a: Form) -> "Section":
        return Section(self.ctx, self.vec, self.form + a)

    def __str__(self):
        return f"({self.vec} ; {self.form})"


def pairing(e1: Section, e2: Section) -> Form:
    """Symmetric pairing <X + a, Y + b> = (i_X b + i_Y a) / 2, an (n-1)-form."""
    e1._check_ctx(e2)
    return HALF * (i_vec(e1.vec, e2.form) + i_vec(e2.vec, e1.form))


def courant_bracket(e1: Section, e2: Section) -> Section:
    """Skew bracket [X,Y] + L_X b - L_Y a + (d i_Y a - d i_X b) / 2."""
    e1._check_ctx(e2)
    x, a = e1.vec, e1.form
    y, b = e2.vec, e2.form
    form = lie_form(x, b) - lie_form(y, a)
    form = form + HALF * (ext_d(i_vec(y, a)) - ext_d(i_vec(x, b)))
    return Section(e1.ctx, vec_bracket(x, y), form)


def dorfman_bracket(e1: Section, e2: Section) -> Section:
    """Non-skew bracket [X,Y] + L_X b - L_Y a + d i_Y a.

    Equals the Courant bracket plus d of the pairing; the two
    construction routes are cross-checked in the test suite.
    """
    e1._check_ctx(e2)
    x, a = e1.vec, e1.form
    y, b = e2.vec, e2.form
    form = lie_form(x, b) - lie_form(y, a) + ext_d(i_vec(y, a))
    return Section(e1.ctx, vec_bracket(x, y), form)


def anchor(e: Section) -> MultiVec:
    """Projection onto the vector field part."""
    return e.vec


def t_map(e1: Section, e2: Section, e3: Section) -> Form:
    """Cyclic pairing defect T = -(<[e1,e2], e3> + c.p.) / 3, an (n-1)-form."""
    total = pairing(courant_bracket(e1, e2), e3)
    total = total + pairing(courant_bracket(e2, e3), e1)
    total = total + pairing(courant_bracket(e3, e1), e2)
    return Fraction(-1, 3) * total


def deformed_dorfman(e1: Section, e2: Section, theta: Form) -> Section:
    """Dorfman bracket twisted by an (n+2)-form: add i_{X ^ Y} theta."""
    n = e1.ctx.n
    if theta.degree != n + 2:
        raise ValueError(f"deformation form must have degree n+2={n + 2}, got {theta.degree}")
    base = dorfman_bracket(e1, e2)
    twist = contract_vec_into_form(wedge(e1.vec, e2.vec), theta)
    return base.add_form(twist)


def gauge(phi: Form, e: Section) -> Section:
    """Shear X + a -> X + a + i_X phi for an (n+1)-form phi."""
    n = e.ctx.n
    if phi.degree != n + 1:
        raise ValueError(f"gauge form must have degree n+1={n + 1}, got {phi.degree}")
    return e.add_form(i_vec(e.vec, phi))


def random_section(rng: random.Random, ctx: Context, max_degree: int = 2) -> Section:
    return Section(
        ctx,
        random_multivec(rng, ctx.m, 1, max_degree),
        random_form(rng, ctx.m, ctx.n, max_degree),
    )


# -- check reporting ----------------------------------------------------------


@dataclass(frozen=True)
class Failure:
    """One counterexample: the inputs that produced it and the nonzero residual."""

    inputs: tuple[str, ...]
    residual: str


@dataclass
class CheckResult:
    """Outcome of one seeded identity check with counterexample witnesses."""

    name: str
    identity: str
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, inputs, residual) -> None:
        self.cases += 1
        if not residual.is_zero:
            self.failures.append(Failure(tuple(str(v) for v in inputs), str(residual)))

    def record_verdict(self, inputs, agree: bool, note: str) -> None:
        self.cases += 1
        if not agree:
            self.failures.append(Failure(tuple(str(v) for v in inputs), note))


def _require_samples(samples: int) -> None:
    if samples < 1:
        raise ValueError("samples must be at least 1")


def check_courant_axioms(ctx: Context, seed: int = 0, samples: int = 25) -> list[CheckResult]:
    """Exact residual checks for the Courant-bracket identities on seeded sections."""
    _require_samples(samples)
    rng = random.Random(seed)
    jacobiator = CheckResult(
        "jacobiator_exact_term", "[e1,[e2,e3]] + cyclic = d T(e1,e2,e3)"
    )
    scalar_rule = CheckResult(
        "scalar_rule", "[e1, f*e2] = f*[e1,e2] + rho(e1)(f)*e2 - df ^ <e1,e2>"
    )
    anchor_morphism = CheckResult(
        "anchor_morphism", "rho([e1,e2]) = [rho(e1), rho(e2)]"
    )
    pairing_compat = CheckResult(
        "pairing_compat",
        "L_rho(e1)<e2,e3> = <[e1,e2] + d<e1,e2>, e3> + <e2, [e1,e3] + d<e1,e3>>",
    )
    for _ in range(samples):
        e1 = random_section(rng, ctx)
        e2 = random_section(rng, ctx)
        e3 = random_section(rng, ctx)
        f = random_poly(rng, ctx.m)

        lhs = (
            courant_bracket(e1, courant_bracket(e2, e3))
            + courant_bracket(e2, courant_bracket(e3, e1))
            + courant_bracket(e3, courant_bracket(e1, e2))
        )
        rhs = Section.of_form(ctx, ext_d(t_map(e1, e2, e3)))
        jacobiator.record((e1, e2, e3), lhs - rhs)

        lhs = courant_bracket(e1, f * e2)
        rhs = f * courant_bracket(e1, e2) + vec_apply(e1.vec, f) * e2
        rhs = rhs - Section.of_form(ctx, wedge(d_scalar(f), pairing(e1, e2)))
        scalar_rule.record((e1, e2, f), lhs - rhs)

        anchor_morphism.record(
            (e1, e2),
            anchor(courant_bracket(e1, e2)) - vec_bracket(anchor(e1), anchor(e2)),
        )

        lhs = lie_form(anchor(e1), pairing(e2, e3))
        rhs = pairing(courant_bracket(e1, e2).add_form(ext_d(pairing(e1, e2))), e3)
        rhs = rhs + pairing(e2, courant_bracket(e1, e3).add_form(ext_d(pairing(e1, e3))))
        pairing_compat.record((e1, e2, e3), lhs - rhs)
    return [jacobiator, scalar_rule, anchor_morphism, pairing_compat]


def check_dorfman_axioms(ctx: Context, seed: int = 0, samples: int = 25) -> list[CheckResult]:
    """Exact residual checks for the Dorfman-bracket identities on seeded sections."""
    _require_samples(samples)
    rng = random.Random(seed)
    leibniz = CheckResult(
        "leibniz_identity", "[e1,[e2,e3]] = [[e1,e2],e3] + [e2,[e1,e3]]"
    )
    scalar_left = CheckResult(
        "scalar_rule_left", "[e1, f*e2] = f*[e1,e2] + rho(e1)(f)*e2"
    )
    scalar_right = CheckResult(
        "scalar_rule_right", "[f*e1, e2] = f*[e1,e2] - rho(e2)(f)*e1 + df ^ 2<e1,e2>"
    )
    pairing_compat = CheckResult(
        "pairing_compat", "L_rho(e1)<e2,e3> = <[e1,e2], e3> + <e2, [e1,e3]>"
    )
    anchor_morphism = CheckResult(
        "anchor_morphism", "rho([e1,e2]) = [rho(e1), rho(e2)]"
    )
    for _ in range(samples):
        e1 = random_section(rng, ctx)
        e2 = random_section(rng, ctx)
        e3 = random_section(rng, ctx)
        f = random_poly(rng, ctx.m)

        lhs = dorfman_bracket(e1, dorfman_bracket(e2, e3))
        rhs = dorfman_bracket(dorfman_bracket(e1, e2), e3) + dorfman_bracket(
            e2, dorfman_bracket(e1, e3)
        )
        leibniz.record((e1, e2, e3), lhs - rhs)

        lhs = dorfman_bracket(e1, f * e2)
        rhs = f * dorfman_bracket(e1, e2) + vec_apply(e1.vec, f) * e2
        scalar_left.record((e1, e2, f), lhs - rhs)

        lhs = dorfman_bracket(f * e1, e2)
        rhs = f * dorfman_bracket(e1, e2) - vec_apply(e2.vec, f) * e1
        rhs = rhs + Section.of_form(ctx, wedge(d_scalar(f), 2 * pairing(e1, e2)))
        scalar_right.record((e1, e2, f), lhs - rhs)

        lhs = lie_form(anchor(e1), pairing(e2, e3))
        rhs = pairing(dorfman_bracket(e1, e2), e3) + pairing(e2, dorfman_bracket(e1, e3))
        pairing_compat.record((e1, e2, e3), lhs - rhs)

        anchor_morphism.record(
            (e1, e2),
            anchor(dorfman_bracket(e1, e2)) - vec_bracket(anchor(e1), anchor(e2)),
        )
    return [leibniz, scalar_left, scalar_right, pairing_compat, anchor_morphism]


def _leibniz_residual_deformed(e1: Section, e2: Section, e3: Section, theta: Form) -> Section:
    lhs = deformed_dorfman(e1, deformed_dorfman(e2, e3, theta), theta)
    rhs = deformed_dorfman(deformed_dorfman(e1, e2, theta), e3, theta)
    rhs = rhs + deformed_dorfman(e2, deformed_dorfman(e1, e3, theta), theta)
    return lhs - rhs


def check_deformation(
    ctx: Context, theta: Form, seed: int = 0, samples: int = 25
) -> list[CheckResult]:
    """Verify that the theta-twisted bracket obeys Leibniz exactly when d theta = 0.

    The Leibniz sweep always includes every triple of constant coordinate
    vector sections, which is what makes a non-closed theta fail
    deterministically rather than by luck of the sampler.
    """
    if theta.degree != ctx.n + 2:
        raise ValueError(f"deformation form must have degree n+2={ctx.n + 2}")
    rng = random.Random(seed)
    closed = CheckResult("theta_closed", "d theta = 0")
    closed.record((theta,), ext_d(theta))

    leibniz = CheckResult(
        "deformed_leibniz", "[e1,[e2,e3]]_theta = [[e1,e2],e3]_theta + [e2,[e1,e3]]_theta"
    )
    for i, j, k in product(range(1, ctx.m + 1), repeat=3):
        e1 = Section.of_vec(ctx, MultiVec.basis(ctx.m, (i,)))
        e2 = Section.of_vec(ctx, MultiVec.basis(ctx.m, (j,)))
        e3 = Section.of_vec(ctx, MultiVec.basis(ctx.m, (k,)))
        leibniz.record((e1, e2, e3), _leibniz_residual_deformed(e1, e2, e3, theta))
    for _ in range(samples):
        e1 = random_section(rng, ctx)
        e2 = random_section(rng, ctx)
        e3 = random_section(rng, ctx)
        leibniz.record((e1, e2, e3), _leibniz_residual_deformed(e1, e2, e3, theta))

    agreement = CheckResult(
        "closed_iff_leibniz", "the twisted bracket obeys Leibniz iff d theta = 0"
    )
    agreement.record_verdict(
        (theta,),
        closed.passed == leibniz.passed,
        f"d-closed={closed.passed} leibniz={leibniz.passed}",
    )
    return [closed, leibniz, agreement]


def check_gauge_isomorphism(
    ctx: Context, phi: Form, seed: int = 0, samples: int = 25
) -> list[CheckResult]:
    """Verify the gauge shear intertwines the d(phi)-twisted and plain brackets."""
    if phi.degree != ctx.n + 1:
        raise ValueError(f"gauge form must have degree n+1={ctx.n + 1}")
    rng = random.Random(seed)
    dphi = ext_d(phi)
    intertwiner = CheckResult(
        "gauge_intertwiner", "gauge(phi)[e1,e2]_{d phi} = [gauge(phi)e1, gauge(phi)e2]"
    )
    automorphism = CheckResult(
        "gauge_automorphism", "d phi = 0: gauge(phi)[e1,e2] = [gauge(phi)e1, gauge(phi)e2]"
    )
    for _ in range(samples):
        e1 = random_section(rng, ctx)
        e2 = random_section(rng, ctx)
        lhs = gauge(phi, deformed_dorfman(e1, e2, dphi))
        rhs = dorfman_bracket(gauge(phi, e1), gauge(phi, e2))
        intertwiner.record((e1, e2), lhs - rhs)
        if dphi.is_zero:
            lhs = gauge(phi, dorfman_bracket(e1, e2))
            automorphism.record((e1, e2), lhs - rhs)
    results = [intertwiner]
    if dphi.is_zero:
        results.append(automorphism)
    return results
