"""Level-by-level construction of the planar subalgebra cut out by a biunitary.

Given a {0,l}-biunitary element u of width k, each level m of the l-cabled
algebra carries a membership condition: x belongs to the subalgebra iff the
conjugate sigma(x) = u_(m) . incl_right^{k-l}(x) . u_(m)* lies in the image
of the (k-l)-fold left inclusion.  Writing F for the orthogonal projection
onto that image, the condition is L(x) = sigma(x) - F(sigma(x)) = 0, a
linear equation solved here by assembling L column-by-column over the
ambient basis and extracting its kernel with a rank-revealing factorization.

The u_(m) are the staircase elements: alternating products of u and its
back-rotated adjoint, built by a recursion that reproduces the closed forms
of the group-table case exactly.  Minus-shaded levels are obtained by
rotating the plus-shaded kernels; the shaded level-0 space is computed
directly with the staircase unit of the opposite shading.

The group-table oracle predicts every dimension (1, 1, n, n^2, ...) and
exhibits explicit kernel vectors (orbit sums, the multiplicative family
X_g), giving an independent cross-check of the whole pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import numerics
from .core import (MINUS, PLUS, SpinColor, SpinContext, SpinElement,
                   basis_order, color_dim, mult, star, unit, vectorize,
                   devectorize, norm)
from .ops import (cond_left_pow, cond_right_pow, incl_left_pow,
                  incl_right_pow, rotate_pow)
from .groups import (orbit_representatives, orbit_sum, predicted_group_dims,
                     validate_group, group_element, x_element)
from . import qit


@dataclass(frozen=True)
class CablingData:
    """Width and rotation step of the generating biunitary, plus its shading.

    The cabled color map sends (n, eta) to (n*l, eps*eta^l): the level-m
    plus-shaded ambient space has color (m*l, eps), the minus-shaded one
    (m*l, eps*(-1)^l), and conjugation by u_(m) lands in (m*l + k - l, eps).
    """

    k: int
    ell: int
    shading: int = PLUS

    def __post_init__(self):
        if not 0 < self.ell < self.k:
            raise ValueError(f"need 0 < ell < k, got ell={self.ell}, k={self.k}")

    @property
    def depth(self) -> int:
        """Number of strands k - l absorbed by the conjugation."""
        return self.k - self.ell

    def ambient_color(self, m: int, minus: bool = False) -> SpinColor:
        eta = MINUS if minus else PLUS
        return SpinColor(m * self.ell, self.shading * (eta ** self.ell))

    def target_color(self, m: int) -> SpinColor:
        return SpinColor(m * self.ell + self.depth, self.shading)


@dataclass
class Staircase:
    """The transport elements u_(m,+) for m = 0..level, plus the shaded unit.

    u_(m,+) has color (m*l + k - l, eps) and is unitary; conjugation by it
    carries the level-m ambient space into the image of the right inclusion.
    """

    ctx: SpinContext
    cab: CablingData
    elements: list[SpinElement]
    zero_minus: SpinElement

    @property
    def level(self) -> int:
        return len(self.elements) - 1

    def element(self, m: int, minus: bool = False) -> SpinElement:
        if minus:
            if m != 0:
                raise ValueError("only the level-0 minus-shaded staircase element is built; "
                                 "higher minus levels come from rotating the plus kernels")
            return self.zero_minus
        if not 0 <= m <= self.level:
            raise ValueError(f"staircase built through level {self.level}, requested {m}")
        return self.elements[m]


def build_staircase(u: SpinElement, ell: int, max_level: int,
                    tol: float = qit.DEFAULT_TOL, check: bool = True) -> Staircase:
    """Build u_(0,+) .. u_(max_level,+) by the alternating-product recursion.

    u_(0,+) is the unit of color (k-l, eps), u_(1,+) = u, and
    u_(m+1,+) = mult(incl_right^l(u_(m,+)), incl_left^{m*l}(v)) where v
    alternates between u (odd levels) and rotate_pow(star(u), -l) (even
    levels).  With check=True the biunitarity certificate is required to
    pass first, since every staircase element inherits unitarity from it.
    """
    cab = CablingData(u.color.width, ell, u.color.shading)
    if check:
        cert = qit.is_biunitary(u, ell, tol)
        if not cert.verdict:
            listing = ", ".join(f"{k}={v:.3g}" for k, v in cert.residuals.items())
            raise ValueError(f"input fails the {cert.kind} biunitarity certificate: {listing}")
    if max_level < 0:
        raise ValueError("max_level must be nonnegative")
    ctx = u.ctx
    elements = [unit(ctx, SpinColor(cab.depth, cab.shading))]
    back = rotate_pow(star(u), -ell)
    for m in range(max_level):
        v = u if (m + 1) % 2 == 1 else back
        if m == 0:
            elements.append(v)
        else:
            elements.append(mult(incl_right_pow(elements[m], ell),
                                 incl_left_pow(v, m * ell)))
    zero_minus = unit(ctx, SpinColor(cab.depth, cab.shading * ((-1) ** ell)))
    return Staircase(ctx, cab, elements, zero_minus)


def sigma(stair: Staircase, m: int, x: SpinElement, minus: bool = False) -> SpinElement:
    """Conjugate x by the staircase element: u_(m) . incl_right^{k-l}(x) . u_(m)*.

    An isometry for the normalized-trace inner product (the right inclusion
    preserves the normalized trace and u_(m) is unitary).
    """
    cab = stair.cab
    expected = cab.ambient_color(m, minus)
    if x.color != expected:
        raise ValueError(f"level-{m} ambient color is {expected}, got {x.color}")
    um = stair.element(m, minus)
    return mult(um, mult(incl_right_pow(x, cab.depth), star(um)))


def left_projection(y: SpinElement, depth: int) -> SpinElement:
    """Orthogonal projection onto the image of the depth-fold left inclusion."""
    delta_pow = y.ctx.delta ** (-depth)
    return delta_pow * incl_left_pow(cond_left_pow(y, depth), depth)


@dataclass
class MembershipOperator:
    """The map L(x) = sigma(x) - F(sigma(x)) as a dense matrix.

    Columns run over the ambient basis at the given level, rows over the
    target basis of color (m*l + k - l, eps); x is in the subalgebra iff
    its coefficient vector lies in the kernel.
    """

    level: int
    minus: bool
    ambient_color: SpinColor
    target_color: SpinColor
    matrix: np.ndarray


def membership_operator(stair: Staircase, m: int, minus: bool = False) -> MembershipOperator:
    """Assemble L column-by-column over the ambient basis."""
    ctx = stair.ctx
    cab = stair.cab
    ambient = cab.ambient_color(m, minus)
    target = cab.target_color(m)
    cols = []
    for idx in basis_order(ctx, ambient):
        x = SpinElement(ctx, ambient, {idx: 1.0 + 0j})
        sx = sigma(stair, m, x, minus)
        lx = sx - left_projection(sx, cab.depth)
        cols.append(vectorize(lx))
    matrix = np.column_stack(cols) if cols else np.zeros((color_dim(ctx, target), 0))
    return MembershipOperator(m, minus, ambient, target, matrix)


@dataclass
class QLevelResult:
    """Kernel data at one level: dimension, bases, and numerical evidence.

    basis holds plus-shaded elements normalized to unit planar norm;
    minus_basis holds their l-click rotations (minus-shaded for odd l),
    empty at level 0 where the shaded space is computed separately.
    kernel_matrix keeps the raw orthonormal kernel columns for projections.
    """

    level: int
    dim: int
    basis: list[SpinElement]
    minus_basis: list[SpinElement]
    residual: float
    gap: float
    ambient_color: SpinColor
    ell: int
    minus: bool = False
    kernel_matrix: np.ndarray = field(default=None, repr=False)


def _kernel_result(op: MembershipOperator, ctx: SpinContext, ell: int,
                   rel_tol: float) -> tuple:
    # abs_tol=rel_tol: columns come from unit basis vectors through an
    # isometry minus a contraction, so the natural scale of L is one; a
    # singular value at roundoff means the direction is in the kernel even
    # when the whole matrix is numerically zero (level 0, where L = 0).
    try:
        ker = numerics.kernel_basis(op.matrix, rel_tol, abs_tol=rel_tol)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"kernel factorization failed at level {op.level}: {exc}") from None
    if ker.dim:
        defects = op.matrix @ ker.basis
        residual = float(np.max(np.linalg.norm(defects, axis=0)))
    else:
        residual = 0.0
    elements = []
    for j in range(ker.dim):
        b = devectorize(ctx, op.ambient_color, ker.basis[:, j])
        elements.append((1.0 / norm(b)) * b)
    return ker, residual, elements


def q_level(stair: Staircase, m: int, rel_tol: float = numerics.DEFAULT_REL_TOL) -> QLevelResult:
    """Compute Q at plus-shaded level m: kernel of the membership operator.

    The minus-shaded space at the same level is the image of the kernel
    under l clicks of rotation (for m >= 1; rotation is invertible and the
    subalgebra is closed under it, so the image has the same dimension).
    """
    op = membership_operator(stair, m)
    ker, residual, elements = _kernel_result(op, stair.ctx, stair.cab.ell, rel_tol)
    minus_basis = []
    if m >= 1:
        minus_basis = [rotate_pow(b, stair.cab.ell) for b in elements]
    return QLevelResult(m, ker.dim, elements, minus_basis, residual, ker.gap,
                        op.ambient_color, stair.cab.ell, False, ker.basis)


def q_zero_minus(stair: Staircase, rel_tol: float = numerics.DEFAULT_REL_TOL) -> QLevelResult:
    """Compute Q at the minus-shaded level 0 directly with the shaded unit."""
    op = membership_operator(stair, 0, minus=True)
    ker, residual, elements = _kernel_result(op, stair.ctx, stair.cab.ell, rel_tol)
    return QLevelResult(0, ker.dim, elements, [], residual, ker.gap,
                        op.ambient_color, stair.cab.ell, True, ker.basis)


def q_tower(stair: Staircase, max_level: int,
            rel_tol: float = numerics.DEFAULT_REL_TOL) -> list[QLevelResult]:
    """Plus-shaded kernels at levels 0..max_level."""
    return [q_level(stair, m, rel_tol) for m in range(max_level + 1)]


# ---------------------------------------------------------------------------
# the partner element y and the reconstruction identity


def extract_partner_y(stair: Staircase, m: int, x: SpinElement,
                      tol: float = 1e-9) -> SpinElement:
    """The partner y with sigma(x) = incl_left^{k-l}(y), up to normalization.

    Defined for x in the kernel; raises with the membership residual
    otherwise.  Normalized so that reconstruct_from_partner(y) returns x.
    """
    cab = stair.cab
    sx = sigma(stair, m, x)
    defect = sx - left_projection(sx, cab.depth)
    scale = max(norm(x), 1e-300)
    residual = norm(defect) / scale
    if residual > tol:
        raise ValueError(f"x is not in the level-{m} kernel: relative residual {residual:.3g}")
    return (stair.ctx.delta ** (-cab.depth)) * cond_left_pow(sx, cab.depth)


def reconstruct_from_partner(stair: Staircase, m: int, y: SpinElement) -> SpinElement:
    """Inverse of extract_partner_y on kernel elements.

    x = delta^{-(k-l)} . cond_right^{k-l}( u_(m)* . incl_left^{k-l}(y) . u_(m) ).
    """
    cab = stair.cab
    um = stair.element(m)
    inner = mult(star(um), mult(incl_left_pow(y, cab.depth), um))
    return (stair.ctx.delta ** (-cab.depth)) * cond_right_pow(inner, cab.depth)


def partner_operator(stair: Staircase, m: int) -> np.ndarray:
    """Dense matrix of reconstruct_from_partner over the partner basis.

    Columns run over the basis of the partner color (m*l, eps*(-1)^{k-l});
    x satisfies the membership condition iff it lies in the column span.
    """
    ctx = stair.ctx
    cab = stair.cab
    y_color = SpinColor(m * cab.ell, cab.shading * ((-1) ** cab.depth))
    cols = []
    for idx in basis_order(ctx, y_color):
        y = SpinElement(ctx, y_color, {idx: 1.0 + 0j})
        cols.append(vectorize(reconstruct_from_partner(stair, m, y)))
    ambient_dim = color_dim(ctx, cab.ambient_color(m))
    return np.column_stack(cols) if cols else np.zeros((ambient_dim, 0))


def membership_by_partner(stair: Staircase, m: int, x: SpinElement,
                          tol: float = 1e-9,
                          recon_matrix: np.ndarray | None = None) -> tuple[bool, float]:
    """Membership via solvability of the reconstruction equation.

    Decides whether some partner y reconstructs to x, by least squares over
    the partner basis; agrees with the kernel condition of q_level.  Pass a
    precomputed partner_operator matrix to amortize over many probes.
    """
    if recon_matrix is None:
        recon_matrix = partner_operator(stair, m)
    residual = numerics.lstsq_residual(recon_matrix, vectorize(x))
    return residual <= tol, residual


# ---------------------------------------------------------------------------
# closure verification and the group oracle


@dataclass
class ClosureReport:
    """Max projection residual per closure type, over the levels supplied."""

    levels: list[int]
    residuals: dict[str, float]
    tol: float

    @property
    def ok(self) -> bool:
        return all(v <= self.tol for v in self.residuals.values())


def _projection_residual(candidate: SpinElement, target: QLevelResult) -> float:
    v = vectorize(candidate)
    nv = float(np.linalg.norm(v))
    if nv < 1e-13:
        return 0.0
    v = v / nv
    b = target.kernel_matrix
    return float(np.linalg.norm(v - b @ (b.conj().T @ v)))


def verify_planar_closure(results: list[QLevelResult], tol: float = 1e-9) -> ClosureReport:
    """Check the computed kernels close under the generating operations.

    Products and rotations stay within a level, l-fold right inclusions map
    level m into level m+1, and l-fold right expectations map level m+1
    into level m; the unit belongs to every level.  Report-only: residuals
    are returned per closure type, not raised.
    """
    plus = {r.level: r for r in results if not r.minus}
    if len(plus) < 2:
        raise ValueError("need at least two consecutive computed levels")
    ell = next(iter(plus.values())).ell
    worst = {"unit": 0.0, "product": 0.0, "inclusion": 0.0, "expectation": 0.0,
             "rotation": 0.0, "star": 0.0}
    for m, res in plus.items():
        ctx = res.basis[0].ctx if res.basis else None
        if ctx is not None:
            worst["unit"] = max(worst["unit"],
                                _projection_residual(unit(ctx, res.ambient_color), res))
        for a in res.basis:
            for b in res.basis:
                worst["product"] = max(worst["product"],
                                       _projection_residual(mult(a, b), res))
            worst["star"] = max(worst["star"], _projection_residual(star(a), res))
            if m >= 1:
                worst["rotation"] = max(worst["rotation"],
                                        _projection_residual(rotate_pow(a, 2 * ell), res))
            if m + 1 in plus:
                worst["inclusion"] = max(worst["inclusion"],
                                         _projection_residual(incl_right_pow(a, ell),
                                                              plus[m + 1]))
            if m - 1 in plus:
                worst["expectation"] = max(worst["expectation"],
                                           _projection_residual(cond_right_pow(a, ell),
                                                                plus[m - 1]))
    return ClosureReport(sorted(plus), worst, tol)


@dataclass
class GroupOracle:
    """Closed-form predictions for the subalgebra of a group-table biunitary."""

    table: list[list[int]]
    n: int
    ctx: SpinContext
    element: SpinElement
    dims: list[int]

    def x(self, g: int) -> SpinElement:
        return x_element(self.ctx, self.table, g)

    def orbit_sums(self, level: int) -> list[SpinElement]:
        """Kernel basis at an even level 2m: orbit sums of the diagonal action."""
        if level <= 0 or level % 2:
            raise ValueError(f"orbit sums are defined at even levels >= 2, got {level}")
        half = level // 2
        return [orbit_sum(self.ctx, self.table, top, bottom)
                for top, bottom in orbit_representatives(self.table, half)]


def group_oracle(table, max_level: int) -> GroupOracle:
    """Validate the table and package the closed-form group predictions."""
    validate_group(table)
    n = len(table)
    ctx = SpinContext(n)
    return GroupOracle([list(r) for r in table], n, ctx,
                       group_element(ctx, table),
                       predicted_group_dims(n, max_level))
