"""Dimension-generic exterior algebra on R^n with dense coefficient storage.

A k-form is a vector of coefficients over the strictly increasing
multi-indices of length k, ordered lexicographically.  Indices are 1-based
in user-facing I/O and 0-based internally.  Scalars are 64-bit floats, or
complex128 when a form is complexified.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np


class DimError(ValueError):
    """Operands live on spaces of different dimension."""


class DegreeError(ValueError):
    """Operation not defined for the form's degree."""


class MetricError(ValueError):
    """Metric is singular or has the wrong signature."""


class OrbitError(ValueError):
    """Form lies outside the open orbit required by the operation."""


class StructureError(ValueError):
    """A derived structure (complex structure, projector) is invalid."""


@lru_cache(maxsize=None)
def multi_indices(n, k):
    """All strictly increasing k-tuples from 0..n-1, lexicographic order."""
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def index_position(n, k):
    """Map multi-index tuple -> position in the coefficient vector."""
    return {mi: p for p, mi in enumerate(multi_indices(n, k))}


def merge_sign(I, J):
    """Sign of sorting the concatenation of disjoint increasing tuples I, J.

    Returns (sign, merged) or (0, None) when I and J share an index.
    """
    if set(I) & set(J):
        return 0, None
    # count transpositions needed to interleave J into I
    inversions = 0
    for j in J:
        inversions += sum(1 for i in I if i > j)
    merged = tuple(sorted(I + J))
    return (-1) ** inversions, merged


@lru_cache(maxsize=None)
def _wedge_table(n, ka, kb):
    """COO table (ia, ib, iout, sign) for the wedge of a ka- and a kb-form."""
    A = multi_indices(n, ka)
    B = multi_indices(n, kb)
    pos = index_position(n, ka + kb)
    table = []
    for ia, I in enumerate(A):
        for ib, J in enumerate(B):
            s, M = merge_sign(I, J)
            if s:
                table.append((ia, ib, pos[M], s))
    return tuple(table)


class Form:
    """Alternating k-form on R^n, dense coefficients over multi-indices."""

    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim, degree, coeffs, complexify=False):
        if not 0 <= degree <= dim:
            raise DegreeError(f"degree {degree} out of range for dim {dim}")
        dtype = np.complex128 if complexify else None
        c = np.array(coeffs, dtype=dtype)
        if dtype is None and not np.iscomplexobj(c):
            c = c.astype(np.float64)
        if c.shape != (comb(dim, degree),):
            raise DimError(
                f"expected {comb(dim, degree)} coefficients for a "
                f"{degree}-form in dim {dim}, got {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Form is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(dim, degree, complexify=False):
        return Form(dim, degree, np.zeros(comb(dim, degree)), complexify=complexify)

    @staticmethod
    def basis(dim, indices, coeff=1.0):
        """Monomial c * theta_{i1} ^ ... ^ theta_{ik}, 1-based indices."""
        zero_based = tuple(i - 1 for i in indices)
        if any(not 0 <= i < dim for i in zero_based):
            raise DimError(f"indices {indices} out of range 1..{dim}")
        if len(set(zero_based)) != len(zero_based):
            return Form.zero(dim, len(indices), complexify=np.iscomplexobj(np.array(coeff)))
        order = tuple(sorted(zero_based))
        sign = _permutation_sign(zero_based)
        c = np.zeros(comb(dim, len(indices)), dtype=complex)
        c[index_position(dim, len(indices))[order]] = sign * coeff
        if not np.iscomplexobj(np.asarray(coeff)):
            c = c.real
        return Form(dim, len(indices), c)

    @staticmethod
    def from_vector(dim, vec):
        """1-form with the given covector coefficients."""
        return Form(dim, 1, vec)

    # -- basic properties ---------------------------------------------

    @property
    def is_real(self):
        return not np.iscomplexobj(self.coeffs)

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def real(self):
        return Form(self.dim, self.degree, np.real(self.coeffs))

    def imag(self):
        return Form(self.dim, self.degree, np.imag(self.coeffs))

    def conj(self):
        return Form(self.dim, self.degree, np.conj(self.coeffs))

    def complexified(self):
        return Form(self.dim, self.degree, self.coeffs, complexify=True)

    # -- arithmetic ---------------------------------------------------

    def _check_compatible(self, other):
        if self.dim != other.dim:
            raise DimError(f"dim mismatch: {self.dim} vs {other.dim}")
        if self.degree != other.degree:
            raise DegreeError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._check_compatible(other)
        return Form(self.dim, self.degree, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check_compatible(other)
        return Form(self.dim, self.degree, self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return Form(self.dim, self.degree, self.coeffs * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Form(self.dim, self.degree, self.coeffs / scalar)

    def __neg__(self):
        return Form(self.dim, self.degree, -self.coeffs)

    def __repr__(self):
        terms = []
        for p, mi in enumerate(multi_indices(self.dim, self.degree)):
            c = self.coeffs[p]
            if c != 0:
                label = "".join(str(i + 1) for i in mi) if mi else "1"
                terms.append(f"{c:+.6g}*t{label}")
        body = " ".join(terms) if terms else "0"
        return f"Form({self.dim},{self.degree}: {body})"

    def isclose(self, other, tol=1e-10):
        self._check_compatible(other)
        scale = max(1.0, self.norm(), other.norm())
        return bool(np.linalg.norm(self.coeffs - other.coeffs) <= tol * scale)


def _permutation_sign(seq):
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class VolumeElement:
    """Scalar multiple of theta_1 ^ ... ^ theta_n."""

    coeff: float = 1.0

    def __post_init__(self):
        if self.coeff == 0.0:
            raise MetricError("volume trivialization must be nonzero")


@dataclass(frozen=True)
class MetricG:
    """Symmetric inner product on R^n (acting on vectors) with its signature."""

    matrix: np.ndarray
    signature: tuple = field(default=None)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise MetricError("metric must be a square matrix")
        if np.max(np.abs(m - m.T)) > 1e-12 * max(1.0, np.max(np.abs(m))):
            raise MetricError("metric must be symmetric")
        eig = np.linalg.eigvalsh(0.5 * (m + m.T))
        p = int(np.sum(eig > 0))
        q = int(np.sum(eig < 0))
        sig = self.signature if self.signature is not None else (p, q)
        if tuple(sig) != (p, q):
            raise MetricError(f"declared signature {sig} but eigenvalues give ({p},{q})")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "signature", (p, q))

    @property
    def dim(self):
        return self.matrix.shape[0]


# -- operations --------------------------------------------------------


def wedge(a, b):
    """Exterior product of two forms on the same space."""
    if a.dim != b.dim:
        raise DimError(f"dim mismatch: {a.dim} vs {b.dim}")
    k = a.degree + b.degree
    if k > a.dim:
        raise DegreeError(f"wedge degree {k} exceeds dimension {a.dim}")
    out = np.zeros(comb(a.dim, k), dtype=complex)
    for ia, ib, iout, s in _wedge_table(a.dim, a.degree, b.degree):
        out[iout] += s * a.coeffs[ia] * b.coeffs[ib]
    if a.is_real and b.is_real:
        out = out.real
    return Form(a.dim, k, out)


def interior(v, a):
    """Interior product iota(v) a of a vector v with a form a."""
    if a.degree == 0:
        raise DegreeError("interior product of a 0-form is undefined")
    v = np.asarray(v)
    if v.shape != (a.dim,):
        raise DimError(f"vector must have {a.dim} components")
    out = np.zeros(comb(a.dim, a.degree - 1), dtype=complex)
    pos_out = index_position(a.dim, a.degree - 1)
    for p, mi in enumerate(multi_indices(a.dim, a.degree)):
        c = a.coeffs[p]
        if c == 0:
            continue
        for slot, i in enumerate(mi):
            if v[i] == 0:
                continue
            rest = mi[:slot] + mi[slot + 1:]
            out[pos_out[rest]] += (-1) ** slot * v[i] * c
    if a.is_real and not np.iscomplexobj(v):
        out = out.real
    return Form(a.dim, a.degree - 1, out)


def pullback(A, a):
    """Pullback of a form by the linear map with matrix A.

    (A* a)(v_1, ..., v_k) = a(A v_1, ..., A v_k), so on coefficients
    (A* a)_J = sum_I a_I det(A[I, J]) over row sets I and column sets J.
    """
    A = np.asarray(A)
    if A.shape != (a.dim, a.dim):
        raise DimError(f"matrix must be {a.dim}x{a.dim}")
    k = a.degree
    if k == 0:
        return a
    mis = multi_indices(a.dim, k)
    out = np.zeros(len(mis), dtype=complex)
    for jpos, J in enumerate(mis):
        acc = 0.0
        sub_cols = A[:, J]
        for ipos, I in enumerate(mis):
            c = a.coeffs[ipos]
            if c == 0:
                continue
            acc += c * np.linalg.det(sub_cols[I, :])
        out[jpos] = acc
    if a.is_real and not np.iscomplexobj(A):
        out = out.real
    return Form(a.dim, k, out)


@lru_cache(maxsize=None)
def complement_table(n, k):
    """For each k-multi-index J: (position of complement, sign of theta_J ^ theta_comp)."""
    pos = index_position(n, n - k)
    table = []
    for J in multi_indices(n, k):
        Jc = tuple(i for i in range(n) if i not in J)
        s, _ = merge_sign(J, Jc)
        table.append((pos[Jc], s))
    return tuple(table)


def gram_extension(h, n, k):
    """Gram-determinant extension to Lambda^k of a bilinear form h on 1-forms."""
    mis = multi_indices(n, k)
    G = np.empty((len(mis), len(mis)))
    for a_, I in enumerate(mis):
        for b_, J in enumerate(mis):
            G[a_, b_] = np.linalg.det(h[np.ix_(I, J)])
    return G


def hodge_star(g, vol, a):
    """Hodge star of a form, defined by b ^ *a = <b, a> vol for all b.

    The inner product on 1-forms is the inverse of g.matrix (g acts on
    vectors); vol fixes the orientation and scale of the volume form.
    """
    n = a.dim
    if g.dim != n:
        raise DimError(f"metric dim {g.dim} does not match form dim {n}")
    det_g = np.linalg.det(g.matrix)
    if abs(det_g) < 1e-300:
        raise MetricError("metric is singular")
    h = np.linalg.inv(g.matrix)
    k = a.degree
    G = gram_extension(h, n, k)
    inner = G @ a.coeffs
    out = np.zeros(comb(n, n - k), dtype=complex)
    for jpos, (cpos, s) in enumerate(complement_table(n, k)):
        out[cpos] = s * inner[jpos] * vol.coeff
    if a.is_real:
        out = out.real
    return Form(n, n - k, out)


def wedge_top_coeff(a, b, eps=None):
    """Coefficient of the trivialization in a ^ b when deg a + deg b = n."""
    if a.degree + b.degree != a.dim:
        raise DegreeError("degrees must be complementary")
    top = wedge(a, b)
    c = top.coeffs[0]
    if eps is not None:
        c = c / eps.coeff
    return c if np.iscomplexobj(top.coeffs) else float(c)
