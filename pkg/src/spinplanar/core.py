"""Core value types of the spin planar algebra on N spins.

The algebra assigns to every color (width k, shading +/-) a complex vector
space with a distinguished basis of matrix-unit-like elements:

    width 0, shading +:   the scalars (a single basis element, written 1)
    width 0, shading -:   S(1), ..., S(N)
    width k >= 1:         e[p)^{i_1..i_m}_{j_1..j_m}(q]

The slot layout is a pure function of the color: the left slot [p) is present
exactly when the shading is minus, the right slot (q] is present exactly when
width + (1 if minus else 0) is odd, and the remaining spins pair up into a
top tuple and a bottom tuple of equal length m = (width - #left - #right)/2.
Each space has dimension N^width (N for (0,-), 1 for (0,+)).

The basis is normalized so that multiplication is exactly the matrix-unit
rule

    e[p)^I_J(q] . e[p')^K_L(q'] = delta_pp' delta_JK delta_qq' e[p)^I_L(q]

which makes every space a finite dimensional C*-algebra.  Under this rule the
spaces decompose into matrix blocks indexed by the slot values (top tuple =
row, bottom tuple = column), which is what `algebra_blocks` exposes; operator
norms and unitarity defects are exact largest-singular-value computations on
those blocks.  The loop parameter (modulus) of the algebra is delta = sqrt(N).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from . import numerics

PLUS = 1
MINUS = -1

_SHADING_NAMES = {PLUS: "plus", MINUS: "minus"}


def shading_name(shading: int) -> str:
    return _SHADING_NAMES[shading]


def shading_from_name(name: str) -> int:
    for value, label in _SHADING_NAMES.items():
        if name == label:
            return value
    raise ValueError(f"unknown shading {name!r}; expected 'plus' or 'minus'")


class SpinContext:
    """Ambient data: the number of spins N, the modulus sqrt(N), tolerances.

    delta is always derived from N, never set independently.
    """

    def __init__(self, N: int, tol: float = 1e-10, prune: float = 0.0):
        if int(N) != N or N < 1:
            raise ValueError(f"N must be a positive integer, got {N!r}")
        self.N = int(N)
        self.delta = math.sqrt(self.N)
        self.tol = float(tol)
        self.prune = float(prune)

    def spins(self) -> range:
        """All spin values, 1-based."""
        return range(1, self.N + 1)

    def __repr__(self) -> str:
        return f"SpinContext(N={self.N})"

    def __eq__(self, other) -> bool:
        return isinstance(other, SpinContext) and other.N == self.N

    def __hash__(self) -> int:
        return hash(("SpinContext", self.N))


class SpinColor(NamedTuple):
    """A color (width, shading) with shading +1 (plus) or -1 (minus)."""

    width: int
    shading: int

    @property
    def has_left(self) -> bool:
        return self.shading == MINUS and self.width >= 1

    @property
    def has_right(self) -> bool:
        extra = 1 if self.shading == MINUS else 0
        return self.width >= 1 and (self.width + extra) % 2 == 1

    @property
    def pairs(self) -> int:
        return (self.width - int(self.has_left) - int(self.has_right)) // 2

    def __repr__(self) -> str:
        sign = "+" if self.shading == PLUS else "-"
        return f"({self.width},{sign})"


def check_color(color: SpinColor) -> SpinColor:
    if color.width < 0:
        raise ValueError(f"negative width in color {color}")
    if color.shading not in (PLUS, MINUS):
        raise ValueError(f"shading must be +1 or -1 in color {color}")
    return color


def color_dim(ctx: SpinContext, color: SpinColor) -> int:
    """dim P_(k,+-) = N^k for k >= 1; N for (0,-); 1 for (0,+)."""
    check_color(color)
    if color.width == 0:
        return ctx.N if color.shading == MINUS else 1
    return ctx.N ** color.width


class SpinIndex(NamedTuple):
    """Structured index of one basis element.

    left/right are the bracket slots [p) and (q] (None when absent), top and
    bottom are the paired spin tuples, and s is the lone spin of the (0,-)
    basis S(s).  The color of an index is recoverable from its shape alone,
    see `index_color`.
    """

    left: int | None = None
    top: tuple[int, ...] = ()
    bottom: tuple[int, ...] = ()
    right: int | None = None
    s: int | None = None


SCALAR_INDEX = SpinIndex()


def spin_state(i: int) -> SpinIndex:
    """The index of the (0,-) basis element S(i)."""
    return SpinIndex(s=i)


def pair_index(top: Iterable[int], bottom: Iterable[int],
               left: int | None = None, right: int | None = None) -> SpinIndex:
    return SpinIndex(left=left, top=tuple(top), bottom=tuple(bottom), right=right)


def index_color(idx: SpinIndex) -> SpinColor:
    """Recover the color an index belongs to (raises if malformed)."""
    if idx.s is not None:
        if idx.left is not None or idx.right is not None or idx.top or idx.bottom:
            raise ValueError(f"index {idx} mixes the S slot with other slots")
        return SpinColor(0, MINUS)
    if len(idx.top) != len(idx.bottom):
        raise ValueError(f"index {idx} has top/bottom tuples of unequal length")
    m = len(idx.top)
    width = 2 * m + (idx.left is not None) + (idx.right is not None)
    if width == 0:
        return SpinColor(0, PLUS)
    shading = MINUS if idx.left is not None else PLUS
    color = SpinColor(width, shading)
    # Every (left?, pairs, right?) shape matches exactly one color; double-check
    # the layout rule rather than trust the arithmetic.
    if color.has_left != (idx.left is not None) or color.has_right != (idx.right is not None):
        raise ValueError(f"index {idx} does not fit the slot layout of {color}")
    return color


def check_index(ctx: SpinContext, idx: SpinIndex) -> SpinColor:
    """Validate spin ranges and return the index's color."""
    color = index_color(idx)
    spins = [v for v in (idx.left, idx.right, idx.s) if v is not None]
    spins.extend(idx.top)
    spins.extend(idx.bottom)
    for v in spins:
        if int(v) != v or not (1 <= v <= ctx.N):
            raise ValueError(f"spin value {v!r} out of range 1..{ctx.N} in {idx}")
    return color


@dataclass
class SpinElement:
    """A sparse complex linear combination of basis indices of one color.

    Treated as immutable: operations return fresh elements.  Exact zeros are
    pruned; coefficient comparisons are tolerance-based (see approx_eq), so
    the dataclass equality is deliberately not overridden.
    """

    ctx: SpinContext
    color: SpinColor
    coeffs: dict[SpinIndex, complex] = field(default_factory=dict)

    def terms(self) -> Iterator[tuple[SpinIndex, complex]]:
        return iter(self.coeffs.items())

    @property
    def nnz(self) -> int:
        return len(self.coeffs)

    def coefficient(self, idx: SpinIndex) -> complex:
        return self.coeffs.get(idx, 0j)

    def __add__(self, other: "SpinElement") -> "SpinElement":
        return add(self, other)

    def __sub__(self, other: "SpinElement") -> "SpinElement":
        return add(self, scale(-1.0, other))

    def __neg__(self) -> "SpinElement":
        return scale(-1.0, self)

    def __rmul__(self, c) -> "SpinElement":
        if isinstance(c, (int, float, complex)):
            return scale(c, self)
        return NotImplemented

    def __mul__(self, other) -> "SpinElement":
        if isinstance(other, (int, float, complex)):
            return scale(other, self)
        if isinstance(other, SpinElement):
            return mult(self, other)
        return NotImplemented

    def __repr__(self) -> str:
        shown = ", ".join(
            f"{idx}: {c:.4g}" for idx, c in itertools.islice(self.coeffs.items(), 4)
        )
        more = "" if self.nnz <= 4 else f", ... ({self.nnz} terms)"
        return f"SpinElement(N={self.ctx.N}, color={self.color}, {{{shown}{more}}})"


def _cleaned(ctx: SpinContext, coeffs: dict[SpinIndex, complex]) -> dict[SpinIndex, complex]:
    thr = ctx.prune
    return {idx: c for idx, c in coeffs.items() if abs(c) > thr}


def zero(ctx: SpinContext, color: SpinColor) -> SpinElement:
    return SpinElement(ctx, check_color(color), {})


def make_basis(ctx: SpinContext, idx: SpinIndex) -> SpinElement:
    """The unit-coefficient element at a (validated) basis index."""
    color = check_index(ctx, idx)
    return SpinElement(ctx, color, {idx: 1.0 + 0j})


def from_coeffs(ctx: SpinContext, color: SpinColor,
                coeffs: dict[SpinIndex, complex], validate: bool = True) -> SpinElement:
    if validate:
        for idx in coeffs:
            if check_index(ctx, idx) != color:
                raise ValueError(f"index {idx} does not belong to color {color}")
    return SpinElement(ctx, check_color(color), _cleaned(ctx, dict(coeffs)))


def _check_compatible(op: str, x: SpinElement, y: SpinElement) -> None:
    if x.ctx.N != y.ctx.N:
        raise ValueError(f"context mismatch in {op}: N={x.ctx.N} vs N={y.ctx.N}")
    if x.color != y.color:
        raise ValueError(f"color mismatch in {op}: {x.color} vs {y.color}")


def add(x: SpinElement, y: SpinElement) -> SpinElement:
    _check_compatible("add", x, y)
    out = dict(x.coeffs)
    for idx, c in y.coeffs.items():
        out[idx] = out.get(idx, 0j) + c
    return SpinElement(x.ctx, x.color, _cleaned(x.ctx, out))


def scale(c, x: SpinElement) -> SpinElement:
    c = complex(c)
    if c == 0:
        return zero(x.ctx, x.color)
    return SpinElement(x.ctx, x.color, {idx: c * v for idx, v in x.coeffs.items()})


def star(x: SpinElement) -> SpinElement:
    """Adjoint: conjugate coefficients, swap top and bottom, keep the slots."""
    out = {
        SpinIndex(idx.left, idx.bottom, idx.top, idx.right, idx.s): v.conjugate()
        for idx, v in x.coeffs.items()
    }
    return SpinElement(x.ctx, x.color, out)


def mult(x: SpinElement, y: SpinElement) -> SpinElement:
    """Matrix-unit multiplication (same rule for every color).

    A product of basis indices is nonzero exactly when the left, right and S
    slots agree and x's bottom tuple equals y's top tuple; the surviving index
    keeps x's top and y's bottom.  On (0,+) this is scalar multiplication and
    on (0,-) it makes the S(i) a family of orthogonal idempotents.
    """
    _check_compatible("mult", x, y)
    buckets: dict[tuple, list[tuple[tuple[int, ...], complex]]] = {}
    for idx, c in y.coeffs.items():
        buckets.setdefault((idx.left, idx.top, idx.right, idx.s), []).append((idx.bottom, c))
    out: dict[SpinIndex, complex] = {}
    for idx, c in x.coeffs.items():
        for bottom, d in buckets.get((idx.left, idx.bottom, idx.right, idx.s), ()):
            key = SpinIndex(idx.left, idx.top, bottom, idx.right, idx.s)
            out[key] = out.get(key, 0j) + c * d
    return SpinElement(x.ctx, x.color, _cleaned(x.ctx, out))


def unit(ctx: SpinContext, color: SpinColor) -> SpinElement:
    """The multiplicative identity of a color.

    (0,+): the scalar 1.  (0,-): sum of all S(s).  Otherwise: the sum of all
    diagonal (top = bottom) indices over all slot values.
    """
    check_color(color)
    if color.width == 0:
        if color.shading == PLUS:
            return SpinElement(ctx, color, {SCALAR_INDEX: 1.0 + 0j})
        return SpinElement(ctx, color, {spin_state(s): 1.0 + 0j for s in ctx.spins()})
    lefts = list(ctx.spins()) if color.has_left else [None]
    rights = list(ctx.spins()) if color.has_right else [None]
    coeffs = {}
    for p in lefts:
        for q in rights:
            for top in itertools.product(ctx.spins(), repeat=color.pairs):
                coeffs[SpinIndex(p, top, top, q)] = 1.0 + 0j
    return SpinElement(ctx, color, coeffs)


def basis_indices(ctx: SpinContext, color: SpinColor) -> Iterator[SpinIndex]:
    """Deterministic enumeration of the basis of a color."""
    check_color(color)
    if color.width == 0:
        if color.shading == PLUS:
            yield SCALAR_INDEX
        else:
            for s in ctx.spins():
                yield spin_state(s)
        return
    lefts = list(ctx.spins()) if color.has_left else [None]
    rights = list(ctx.spins()) if color.has_right else [None]
    for p in lefts:
        for top in itertools.product(ctx.spins(), repeat=color.pairs):
            for bottom in itertools.product(ctx.spins(), repeat=color.pairs):
                for q in rights:
                    yield SpinIndex(p, top, bottom, q)


@lru_cache(maxsize=None)
def _basis_order(N: int, color: SpinColor) -> tuple[tuple[SpinIndex, ...], dict]:
    ctx = SpinContext(N)
    order = tuple(basis_indices(ctx, color))
    return order, {idx: i for i, idx in enumerate(order)}


def basis_order(ctx: SpinContext, color: SpinColor) -> tuple[SpinIndex, ...]:
    return _basis_order(ctx.N, color)[0]


def basis_position(ctx: SpinContext, color: SpinColor) -> dict:
    return _basis_order(ctx.N, color)[1]


def vectorize(x: SpinElement) -> np.ndarray:
    pos = basis_position(x.ctx, x.color)
    v = np.zeros(len(pos), dtype=complex)
    for idx, c in x.coeffs.items():
        v[pos[idx]] = c
    return v


def devectorize(ctx: SpinContext, color: SpinColor, v: np.ndarray) -> SpinElement:
    order = basis_order(ctx, color)
    if len(v) != len(order):
        raise ValueError(f"vector length {len(v)} does not match dim {len(order)} of {color}")
    coeffs = {order[i]: complex(v[i]) for i in np.nonzero(v)[0]}
    return SpinElement(ctx, color, coeffs)


def normalized_trace(x: SpinElement) -> complex:
    """The positive normalized trace tau with tau(unit) = 1.

    On a width >= 1 basis index: delta_{top,bottom} * N^-(pairs + #slots).
    On (0,-): tau(S(i)) = 1/N.  On (0,+): the scalar itself.
    """
    color = x.color
    if color.width == 0 and color.shading == MINUS:
        return sum(x.coeffs.values(), 0j) / x.ctx.N
    if color.width == 0:
        return x.coefficient(SCALAR_INDEX)
    weight = x.ctx.N ** -(color.pairs + int(color.has_left) + int(color.has_right))
    return sum((c for idx, c in x.coeffs.items() if idx.top == idx.bottom), 0j) * weight


def inner_product(x: SpinElement, y: SpinElement) -> complex:
    """<x, y> = tau(star(y) * x); positive definite, diagonal on the basis."""
    if x.color != y.color:
        raise ValueError(f"color mismatch in inner_product: {x.color} vs {y.color}")
    return normalized_trace(mult(star(y), x))


def norm(x: SpinElement) -> float:
    return math.sqrt(max(inner_product(x, x).real, 0.0))


def approx_eq(x: SpinElement, y: SpinElement, tol: float | None = None) -> bool:
    """Coefficientwise comparison within an absolute tolerance."""
    if x.color != y.color:
        return False
    tol = x.ctx.tol if tol is None else tol
    keys = set(x.coeffs) | set(y.coeffs)
    return all(abs(x.coefficient(k) - y.coefficient(k)) <= tol for k in keys)


def coeff_distance(x: SpinElement, y: SpinElement) -> float:
    """Max absolute coefficient difference (residual measure for tests)."""
    if x.color != y.color:
        raise ValueError(f"color mismatch: {x.color} vs {y.color}")
    keys = set(x.coeffs) | set(y.coeffs)
    return max((abs(x.coefficient(k) - y.coefficient(k)) for k in keys), default=0.0)


def _block_keys(ctx: SpinContext, color: SpinColor) -> list[tuple]:
    if color.width == 0:
        if color.shading == MINUS:
            return [(None, None, s) for s in ctx.spins()]
        return [(None, None, None)]
    lefts = list(ctx.spins()) if color.has_left else [None]
    rights = list(ctx.spins()) if color.has_right else [None]
    return [(p, q, None) for p in lefts for q in rights]


def algebra_blocks(x: SpinElement) -> list[np.ndarray]:
    """The element as a list of dense matrix blocks (multi-matrix algebra view).

    One block per value of the (left, right) slots (per s for (0,-)), with the
    top tuple as row index and the bottom tuple as column index.  Products and
    adjoints of elements correspond to blockwise matrix products and conjugate
    transposes, and unit() corresponds to the identity in every block.
    """
    ctx, color = x.ctx, x.color
    m = 0 if color.width == 0 else color.pairs
    size = ctx.N ** m
    tuples = {t: i for i, t in enumerate(itertools.product(ctx.spins(), repeat=m))}
    blocks = {key: np.zeros((size, size), dtype=complex) for key in _block_keys(ctx, color)}
    for idx, c in x.coeffs.items():
        if idx.s is not None:
            blocks[(None, None, idx.s)][0, 0] = c
        else:
            blocks[(idx.left, idx.right, None)][tuples[idx.top], tuples[idx.bottom]] = c
    return [blocks[key] for key in sorted(blocks, key=lambda k: tuple(-1 if v is None else v for v in k))]


def op_norm(x: SpinElement) -> float:
    """Exact C*-operator norm (largest singular value over blocks)."""
    return max((numerics.operator_norm(b) for b in algebra_blocks(x)), default=0.0)


def unitarity_residuals(x: SpinElement) -> dict[str, float]:
    """Operator-norm defects of xx* - 1 and x*x - 1, computed blockwise."""
    left = 0.0
    right = 0.0
    for b in algebra_blocks(x):
        bh = b.conj().T
        left = max(left, numerics.operator_norm_defect(b @ bh))
        right = max(right, numerics.operator_norm_defect(bh @ b))
    return {"xx*-1": left, "x*x-1": right}
