"""Multisymplectic ((pre-)n-plectic) structures and their form brackets.

An (n+1)-form omega is n-plectic when it is closed and the map
X -> i_X omega has trivial kernel.  This module checks closedness,
nondegeneracy, graph closure under the plain and twisted brackets,
solves for admissible n-forms and Hamiltonian (n-1)-forms over
constant-coefficient omega, and implements the bracket of admissible
forms together with the hemi- and semi-brackets of Hamiltonian forms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .courant import CheckResult, Section, deformed_dorfman, dorfman_bracket, pairing
from .exterior import (
    Context,
    Form,
    MultiVec,
    ext_d,
    i_vec,
    lie_form,
    random_form,
    random_multivec,
    random_poly,
    vec_apply,
    vec_bracket,
)
from .scalar import ChartMismatchError, Poly


class NotClosedError(ValueError):
    """Raised when an operation requires d omega = 0 but omega is not closed."""


class UnsupportedSolveError(ValueError):
    """Raised when the exact linear solve needs constant coefficients."""


class InconsistentCandidateError(ValueError):
    """Raised when a bracket of admissible forms leaves the admissible bundle."""


@dataclass(frozen=True)
class PlecticCandidate:
    """An (n+1)-form to be tested and used as a multisymplectic structure."""

    ctx: Context
    omega: Form

    def __post_init__(self):
        if self.omega.degree != self.ctx.n + 1:
            raise ValueError(
                f"structure form must have degree n+1={self.ctx.n + 1}, got {self.omega.degree}"
            )
        if self.omega.m != self.ctx.m:
            raise ChartMismatchError("form lives on a different chart than the context")

    @property
    def is_constant(self) -> bool:
        return all(p.is_constant for p in self.omega.coeffs.values())


def omega_flat(c: PlecticCandidate, X: MultiVec) -> Form:
    """The induced map on vector fields: X -> i_X omega."""
    return i_vec(X, c.omega)


@dataclass(frozen=True)
class AdmissiblePair:
    """An n-form together with a vector field realizing it as i_X omega."""

    candidate: PlecticCandidate
    alpha: Form
    x_alpha: MultiVec

    def __post_init__(self):
        if self.alpha != i_vec(self.x_alpha, self.candidate.omega):
            raise ValueError("alpha is not i_{x_alpha} omega: pair is not admissible")


@dataclass(frozen=True)
class HamiltonianPair:
    """An (n-1)-form together with a vector field realizing d xi = i_X omega."""

    candidate: PlecticCandidate
    xi: Form
    x_xi: MultiVec

    def __post_init__(self):
        if ext_d(self.xi) != i_vec(self.x_xi, self.candidate.omega):
            raise ValueError("d xi is not i_{x_xi} omega: pair is not Hamiltonian")


# -- exact linear algebra over the rationals ----------------------------------


def _flat_matrix(c: PlecticCandidate) -> tuple[list[tuple[int, ...]], list[list[Fraction]]]:
    """Rows of the constant matrix of X -> i_X omega against the basis n-forms."""
    ctx = c.ctx
    rows_index = list(combinations(range(1, ctx.m + 1), ctx.n))
    matrix = []
    columns = [i_vec(MultiVec.basis(ctx.m, (j,)), c.omega) for j in range(1, ctx.m + 1)]
    for idx in rows_index:
        matrix.append([col.coeff(idx).constant_term() for col in columns])
    return rows_index, matrix


def _evaluated_matrix(c: PlecticCandidate, point) -> list[list[Fraction]]:
    ctx = c.ctx
    columns = [i_vec(MultiVec.basis(ctx.m, (j,)), c.omega) for j in range(1, ctx.m + 1)]
    return [
        [col.coeff(idx).eval_at(point) for col in columns]
        for idx in combinations(range(1, ctx.m + 1), ctx.n)
    ]


def _rank_and_kernel(matrix: list[list[Fraction]], ncols: int):
    """Exact rank and one kernel vector (None if the kernel is trivial)."""
    rows = [row[:] for row in matrix]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if r == ncols:
        return r, None
    free = next(col for col in range(ncols) if col not in pivots)
    kernel = [Fraction(0)] * ncols
    kernel[free] = Fraction(1)
    for row_idx, col in enumerate(pivots):
        kernel[col] = -rows[row_idx][free]
    return r, kernel


def _solve_constant(matrix: list[list[Fraction]], rhs: list[Poly], m: int):
    """Solve matrix * x = rhs over polynomials; None when inconsistent.

    Gauss-Jordan with rational pivots; free variables are set to zero,
    so for a nondegenerate matrix the solution is the unique one.
    """
    ncols = len(matrix[0]) if matrix else 0
    rows = [row[:] for row in matrix]
    b = list(rhs)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        b[r], b[pivot_row] = b[pivot_row], b[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        b[r] = inv * b[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * p for a, p in zip(rows[i], rows[r])]
                b[i] = b[i] - factor * b[r]
        pivots.append(col)
        r += 1
    for i in range(r, len(rows)):
        if not b[i].is_zero:
            return None
    solution = [Poly.zero(m) for _ in range(ncols)]
    for row_idx, col in enumerate(pivots):
        solution[col] = b[row_idx]
    return solution


def nondegeneracy_check(c: PlecticCandidate, points) -> CheckResult:
    """Rank test for X -> i_X omega.

    Constant omega gets one exact global verdict; otherwise the rank is
    evaluated at each supplied rational point, which certifies
    degeneracy exactly but nondegeneracy only at the sampled points.
    """
    points = list(points)
    if not points:
        raise ValueError("at least one evaluation point is required")
    ctx = c.ctx
    if c.is_constant:
        check = CheckResult("nondegeneracy_exact_rank", "i_X omega = 0 implies X = 0 (exact rank)")
        _, matrix = _flat_matrix(c)
        rank, kernel = _rank_and_kernel(matrix, ctx.m)
        witness = Form.zero(ctx.m, 0)
        if rank < ctx.m:
            coeffs = {(j,): Poly.const(ctx.m, kernel[j - 1]) for j in range(1, ctx.m + 1)}
            witness = MultiVec(ctx.m, 1, coeffs)
        check.record((c.omega,), witness)
        return check
    check = CheckResult(
        "nondegeneracy_at_points", "i_X omega = 0 implies X = 0 (rank at sampled points)"
    )
    for point in points:
        matrix = _evaluated_matrix(c, point)
        rank, kernel = _rank_and_kernel(matrix, ctx.m)
        point_text = "(" + ", ".join(str(v) for v in point) + ")"
        if rank < ctx.m:
            coeffs = {(j,): Poly.const(ctx.m, kernel[j - 1]) for j in range(1, ctx.m + 1)}
            check.record_verdict(
                (c.omega, point_text), False, f"kernel field {MultiVec(ctx.m, 1, coeffs)}"
            )
        else:
            check.record_verdict((c.omega, point_text), True, "")
    return check


def graph_closure_omega(c: PlecticCandidate, seed: int = 0, samples: int = 25) -> list[CheckResult]:
    """Closedness, graph closure, isotropy, and their forced agreement."""
    ctx = c.ctx
    rng = random.Random(seed)
    closed = CheckResult("omega_closed", "d omega = 0")
    closed.record((c.omega,), ext_d(c.omega))

    closure = CheckResult(
        "graph_closure", "[X + i_X omega, Y + i_Y omega] has form part i_{[X,Y]} omega"
    )
    isotropy = CheckResult("graph_isotropy", "<X + i_X omega, Y + i_Y omega> = 0")
    fields = [MultiVec.basis(ctx.m, (j,)) for j in range(1, ctx.m + 1)]
    pairs = [(xv, yv) for xv in fields for yv in fields]
    for _ in range(samples):
        pairs.append((random_multivec(rng, ctx.m, 1), random_multivec(rng, ctx.m, 1)))
    for xv, yv in pairs:
        e1 = Section(ctx, xv, omega_flat(c, xv))
        e2 = Section(ctx, yv, omega_flat(c, yv))
        result = dorfman_bracket(e1, e2)
        closure.record((e1, e2), result.form - omega_flat(c, vec_bracket(xv, yv)))
        isotropy.record((e1, e2), pairing(e1, e2))

    agreement = CheckResult("closure_iff_closed", "the graph is closed iff d omega = 0")
    agreement.record_verdict(
        (c.omega,),
        closed.passed == closure.passed,
        f"d-closed={closed.passed} graph-closed={closure.passed}",
    )
    return [closed, closure, isotropy, agreement]


def deformed_graph_check(
    c: PlecticCandidate, theta: Form, seed: int = 0, samples: int = 25
) -> list[CheckResult]:
    """Graph closure under the theta-twisted bracket iff d omega + theta = 0."""
    ctx = c.ctx
    if theta.degree != ctx.n + 2:
        raise ValueError(f"deformation form must have degree n+2={ctx.n + 2}")
    rng = random.Random(seed)
    matched = CheckResult("omega_theta_matched", "d omega + theta = 0")
    matched.record((c.omega, theta), ext_d(c.omega) + theta)

    closure = CheckResult(
        "deformed_graph_closure",
        "[X + i_X omega, Y + i_Y omega]_theta has form part i_{[X,Y]} omega",
    )
    fields = [MultiVec.basis(ctx.m, (j,)) for j in range(1, ctx.m + 1)]
    pairs = [(xv, yv) for xv in fields for yv in fields]
    for _ in range(samples):
        pairs.append((random_multivec(rng, ctx.m, 1), random_multivec(rng, ctx.m, 1)))
    for xv, yv in pairs:
        e1 = Section(ctx, xv, omega_flat(c, xv))
        e2 = Section(ctx, yv, omega_flat(c, yv))
        result = deformed_dorfman(e1, e2, theta)
        closure.record((e1, e2), result.form - omega_flat(c, vec_bracket(xv, yv)))

    agreement = CheckResult(
        "deformed_closure_iff_matched", "the graph is closed under [.,.]_theta iff d omega + theta = 0"
    )
    agreement.record_verdict(
        (c.omega, theta),
        matched.passed == closure.passed,
        f"matched={matched.passed} graph-closed={closure.passed}",
    )
    return [matched, closure, agreement]


def solve_admissible(c: PlecticCandidate, alpha: Form) -> AdmissiblePair | None:
    """Exact solve of i_X omega = alpha for constant-coefficient omega.

    Returns None when the linear system is inconsistent (alpha is not
    admissible).  Polynomial-coefficient omega is out of reach for this
    solver; construct an AdmissiblePair directly to verify a candidate.
    """
    ctx = c.ctx
    if alpha.degree != ctx.n:
        raise ValueError(f"form must have degree n={ctx.n}, got {alpha.degree}")
    if not c.is_constant:
        raise UnsupportedSolveError(
            "exact solving needs constant-coefficient omega; "
            "supply a candidate vector field and verify it instead"
        )
    rows_index, matrix = _flat_matrix(c)
    rhs = [alpha.coeff(idx) for idx in rows_index]
    solution = _solve_constant(matrix, rhs, ctx.m)
    if solution is None:
        return None
    coeffs = {(j,): solution[j - 1] for j in range(1, ctx.m + 1) if not solution[j - 1].is_zero}
    return AdmissiblePair(c, alpha, MultiVec(ctx.m, 1, coeffs))


def solve_hamiltonian(c: PlecticCandidate, xi: Form) -> HamiltonianPair | None:
    """Solve d xi = i_X omega for constant-coefficient omega; None if not Hamiltonian."""
    if xi.degree != c.ctx.n - 1:
        raise ValueError(f"form must have degree n-1={c.ctx.n - 1}, got {xi.degree}")
    admissible = solve_admissible(c, ext_d(xi))
    if admissible is None:
        return None
    return HamiltonianPair(c, xi, admissible.x_alpha)


def admissible_bracket(c: PlecticCandidate, a: AdmissiblePair, b: AdmissiblePair) -> AdmissiblePair:
    """Bracket L_{X_a} b - L_{X_b} a - d i_{X_a} i_{X_b} omega with field [X_a, X_b]."""
    if a.candidate != c or b.candidate != c:
        raise ValueError("both pairs must belong to this structure")
    form = lie_form(a.x_alpha, b.alpha) - lie_form(b.x_alpha, a.alpha)
    form = form - ext_d(i_vec(a.x_alpha, i_vec(b.x_alpha, c.omega)))
    field = vec_bracket(a.x_alpha, b.x_alpha)
    try:
        return AdmissiblePair(c, form, field)
    except ValueError as exc:
        raise InconsistentCandidateError(
            "bracket left the admissible bundle; omega cannot be closed"
        ) from exc


def hemi_bracket(c: PlecticCandidate, p: HamiltonianPair, q: HamiltonianPair) -> Form:
    """Hemi-bracket of Hamiltonian forms: {xi, eta}_h = L_{X_xi} eta."""
    return lie_form(p.x_xi, q.xi)


def semi_bracket(c: PlecticCandidate, p: HamiltonianPair, q: HamiltonianPair) -> Form:
    """Semi-bracket of Hamiltonian forms: {xi, eta}_s = i_{X_xi} i_{X_eta} omega."""
    return i_vec(p.x_xi, i_vec(q.x_xi, c.omega))


def check_admissible_lie_algebroid(
    c: PlecticCandidate, seed: int = 0, samples: int = 25
) -> list[CheckResult]:
    """Lie-algebroid identities for the bracket of admissible forms.

    Pairs are generated backwards (pick X, set alpha = i_X omega), which
    sidesteps the fact that the flat map need not be surjective.
    Requires d omega = 0 exactly; the identities fail otherwise.
    """
    if not ext_d(c.omega).is_zero:
        raise NotClosedError("omega is not closed; the admissible bracket needs d omega = 0")
    ctx = c.ctx
    rng = random.Random(seed)
    skew = CheckResult("skew_symmetry", "[a,b]_w + [b,a]_w = 0")
    jacobi = CheckResult("jacobi_identity", "[[a,b]_w,c]_w + [[b,c]_w,a]_w + [[c,a]_w,b]_w = 0")
    anchor_rule = CheckResult("anchor_property", "form part of [a,b]_w equals i_{[X_a,X_b]} omega")
    scalar_rule = CheckResult("scalar_rule", "[a, f*b]_w = f*[a,b]_w + X_a(f)*b")

    def as_section(pair: AdmissiblePair) -> Section:
        return Section(ctx, pair.x_alpha, pair.alpha)

    def fresh_pair() -> AdmissiblePair:
        field = random_multivec(rng, ctx.m, 1)
        return AdmissiblePair(c, omega_flat(c, field), field)

    for _ in range(samples):
        pa = fresh_pair()
        pb = fresh_pair()
        pc = fresh_pair()
        f = random_poly(rng, ctx.m)

        ab = admissible_bracket(c, pa, pb)
        ba = admissible_bracket(c, pb, pa)
        skew.record((pa.alpha, pb.alpha), as_section(ab) + as_section(ba))

        bc = admissible_bracket(c, pb, pc)
        ca = admissible_bracket(c, pc, pa)
        total = as_section(admissible_bracket(c, ab, pc))
        total = total + as_section(admissible_bracket(c, bc, pa))
        total = total + as_section(admissible_bracket(c, ca, pb))
        jacobi.record((pa.alpha, pb.alpha, pc.alpha), total)

        form17 = lie_form(pa.x_alpha, pb.alpha) - lie_form(pb.x_alpha, pa.alpha)
        form17 = form17 - ext_d(i_vec(pa.x_alpha, i_vec(pb.x_alpha, c.omega)))
        anchor_rule.record(
            (pa.alpha, pb.alpha),
            form17 - omega_flat(c, vec_bracket(pa.x_alpha, pb.x_alpha)),
        )

        fb = AdmissiblePair(c, f * pb.alpha, f * pb.x_alpha)
        lhs = admissible_bracket(c, pa, fb)
        rhs_form = f * ab.alpha + vec_apply(pa.x_alpha, f) * pb.alpha
        rhs_field = f * ab.x_alpha + vec_apply(pa.x_alpha, f) * pb.x_alpha
        scalar_rule.record(
            (pa.alpha, pb.alpha, f),
            Section(ctx, lhs.x_alpha - rhs_field, lhs.alpha - rhs_form),
        )
    return [skew, jacobi, anchor_rule, scalar_rule]


def random_hamiltonian_pair(
    rng: random.Random, c: PlecticCandidate, max_degree: int = 2
) -> HamiltonianPair:
    """Backward-generated Hamiltonian pair: random potential, solved field.

    Only valid for constant-coefficient omega whose flat map is
    surjective (true for the fixtures used in the test suites).
    """
    while True:
        xi = random_form(rng, c.ctx.m, c.ctx.n - 1, max_degree)
        pair = solve_hamiltonian(c, xi)
        if pair is not None:
            return pair
