"""Seven-dimensional theory: 3-forms inducing G2 metrics.

A 3-form Omega on R^7 determines a symmetric bilinear form
B(v,w) = -(1/6) iota(v)Omega ^ iota(w)Omega ^ Omega with values in the
line of 7-forms.  When the induced metric g = B / (det B)^{1/9} is
positive definite, Omega lies in the open orbit of the standard G2
form; the ninth root det(b)^{1/9} is the volume density phi.  The
module also provides the 1 + 7 + 27 split of 3-forms, the derivative
of Omega -> *Omega, the 35x35 pointwise quadratic form with spectrum
{4/3, 1 x7, -1 x27}, and the dual degree-7/4 functional on 4-forms
built from the determinant of the contraction map on 2-vectors.
"""

from dataclasses import dataclass

import numpy as np

from stable_forms.exterior import (
    DegreeError,
    DimError,
    Form,
    MetricG,
    MetricError,
    OrbitError,
    VolumeElement,
    gram_extension,
    hodge_star,
    interior,
    multi_indices,
    wedge,
    wedge_top_coeff,
)

N7 = 7
DIM3_7 = 35
DIM2_7 = 21
DET_DEAD_BAND = 1e-9

EPS7 = VolumeElement(1.0)


def _seven_form(terms):
    out = Form.zero(N7, 3)
    for sign, idx in terms:
        out = out + Form.basis(N7, idx, float(sign))
    return out


# the G2 standard form as printed in the usual reference display ends
# in theta4^theta6^theta7; that variant fails the identity-metric
# anchor (its b has determinant -1/64), so the build adopts the
# theta5^theta6^theta7 variant, which gives b = identity exactly.
PHI_STD_PRINTED = _seven_form(
    [(+1, (1, 2, 5)), (-1, (3, 4, 5)), (+1, (1, 3, 6)), (+1, (2, 4, 6)),
     (+1, (1, 4, 7)), (-1, (2, 3, 7)), (+1, (4, 6, 7))])
PHI_STD_CORRECTED = _seven_form(
    [(+1, (1, 2, 5)), (-1, (3, 4, 5)), (+1, (1, 3, 6)), (+1, (2, 4, 6)),
     (+1, (1, 4, 7)), (-1, (2, 3, 7)), (+1, (5, 6, 7))])


@dataclass(frozen=True)
class BForm7:
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float))


@dataclass(frozen=True)
class G2Structure:
    g: np.ndarray
    vol: float
    phi: float
    orientation: float  # +-1, sign of det(b) relative to the fixed eps


@dataclass(frozen=True)
class Proj3Split:
    p1: Form
    p7: Form
    p27: Form


def _check_omega7(Omega):
    if Omega.dim != N7:
        raise DimError("expected a form on R^7, got dim %d" % Omega.dim)
    if Omega.degree != 3:
        raise DegreeError("expected degree 3, got %d" % Omega.degree)


def b_form(Omega, eps=EPS7):
    """Symmetric matrix of B(v,w) = -(1/6) iota(v)Omega ^ iota(w)Omega ^ Omega."""
    _check_omega7(Omega)
    ins = []
    for i in range(N7):
        v = np.zeros(N7)
        v[i] = 1.0
        ins.append(interior(v, Omega))
    b = np.zeros((N7, N7))
    for i in range(N7):
        for j in range(i, N7):
            top = wedge(wedge(ins[i], ins[j]), Omega)
            b[i, j] = b[j, i] = -top.coeffs[0] / (6.0 * eps.coeff)
    return BForm7(b)


def resolve_standard_form():
    """Pick the standard-form variant whose induced b is the identity.

    Two candidate monomial lists circulate, differing in the last term
    (theta4^theta6^theta7 versus theta5^theta6^theta7).  Returns a dict
    recording both verdicts and the adopted form.
    """
    rec = {}
    chosen = None
    for name, cand in (("t467", PHI_STD_PRINTED), ("t567", PHI_STD_CORRECTED)):
        b = b_form(cand).b
        ok = bool(np.allclose(b, np.eye(N7), atol=1e-12))
        rec[name] = {"identity_metric": ok, "det_b": float(np.linalg.det(b))}
        if ok and chosen is None:
            chosen = cand
            rec["adopted"] = name
    if chosen is None:
        raise OrbitError("neither standard-form variant gives the identity")
    rec["form"] = chosen
    return rec


PHI_STD = PHI_STD_CORRECTED


def is_positive(Omega, eps=EPS7):
    """True when Omega lies in the open orbit inducing a Riemannian metric."""
    _check_omega7(Omega)
    b = b_form(Omega, eps).b
    d = np.linalg.det(b)
    nrm = max(Omega.norm(), 1e-300)
    if abs(d) <= (DET_DEAD_BAND * nrm ** 3) ** 7:
        return False
    s = 1.0 if d > 0 else -1.0
    g = s * b / abs(d) ** (1.0 / 9.0)
    return bool(np.linalg.eigvalsh(g)[0] > 0)


def g2_metric(Omega, eps=EPS7):
    """Metric, volume density and phi induced by a positive 3-form."""
    _check_omega7(Omega)
    b = b_form(Omega, eps).b
    d = np.linalg.det(b)
    nrm = max(Omega.norm(), 1e-300)
    if abs(d) <= (DET_DEAD_BAND * nrm ** 3) ** 7:
        raise OrbitError("degenerate b, not a positive form")
    s = 1.0 if d > 0 else -1.0
    vol = abs(d) ** (1.0 / 9.0)
    g = s * b / vol
    if not np.linalg.eigvalsh(g)[0] > 0:
        raise OrbitError("induced metric not positive definite")
    return G2Structure(g, vol, vol, s)


def star_omega(Omega, eps=EPS7):
    """Hodge star of Omega in its own induced metric and orientation.

    The orientation sign of det(b) is carried by the volume element, so
    a negatively oriented positive form (such as -phi_std) stars
    consistently: Omega ^ *Omega = 7 phi in its own orientation.
    """
    st = g2_metric(Omega, eps)
    g = MetricG(st.g)
    vol = VolumeElement(st.orientation * st.vol * eps.coeff)
    return hodge_star(g, vol, Omega)


def inner3(Omega, a1, a2, structure=None):
    """Induced inner product of two 3-forms at a positive Omega."""
    st = structure if structure is not None else g2_metric(Omega)
    G = gram_extension(np.linalg.inv(st.g), N7, 3)
    return float(np.real(np.conj(a1.coeffs) @ G @ a2.coeffs))


def project_137(Omega, alpha, eps=EPS7):
    """g-orthogonal split of alpha into the 1, 7 and 27 dimensional pieces.

    The 1-dimensional piece is the span of Omega, the 7-dimensional one
    is spanned by interior products of *Omega with vectors, and the
    27-dimensional piece is the orthogonal remainder.
    """
    st = g2_metric(Omega, eps)
    G = gram_extension(np.linalg.inv(st.g), N7, 3)
    om = Omega.coeffs
    a = alpha.coeffs
    c1 = (om @ G @ a) / (om @ G @ om)
    p1 = Form(N7, 3, c1 * om)
    so = star_omega(Omega, eps)
    B = np.zeros((DIM3_7, N7))
    for i in range(N7):
        v = np.zeros(N7)
        v[i] = 1.0
        B[:, i] = interior(v, so).coeffs
    x = np.linalg.solve(B.T @ G @ B, B.T @ G @ (a - p1.coeffs))
    p7 = Form(N7, 3, B @ x)
    p27 = Form(N7, 3, a - p1.coeffs - p7.coeffs)
    return Proj3Split(p1, p7, p27)


def d_theta(Omega, alphadot, eps=EPS7):
    """Derivative of Omega -> *Omega in the direction alphadot.

    Equal to (4/3) * on the span of Omega, + * on the 7-dimensional
    piece and - * on the 27-dimensional piece.
    """
    st = g2_metric(Omega, eps)
    g = MetricG(st.g)
    vol = VolumeElement(st.orientation * st.vol * eps.coeff)
    p = project_137(Omega, alphadot, eps)
    out = hodge_star(g, vol, p.p1) * (4.0 / 3.0)
    out = out + hodge_star(g, vol, p.p7)
    out = out - hodge_star(g, vol, p.p27)
    return out


def q_matrix(Omega, eps=EPS7):
    """35x35 matrix Q with Q[i,j] eps = d_theta(Omega, e_i) ^ e_j."""
    cols = []
    for c in range(DIM3_7):
        e = np.zeros(DIM3_7)
        e[c] = 1.0
        cols.append(d_theta(Omega, Form(N7, 3, e), eps))
    Q = np.zeros((DIM3_7, DIM3_7))
    for j in range(DIM3_7):
        e = np.zeros(DIM3_7)
        e[j] = 1.0
        ej = Form(N7, 3, e)
        for i in range(DIM3_7):
            Q[i, j] = wedge_top_coeff(cols[i], ej) / eps.coeff
    return 0.5 * (Q + Q.T)


def hessian7_signature(Omega, eps=EPS7, tol=1e-8):
    """Eigenvalue sign counts of the pointwise quadratic form Q."""
    ev = np.linalg.eigvalsh(q_matrix(Omega, eps))
    scale = max(np.max(np.abs(ev)), 1e-300)
    n_pos = int(np.sum(ev > tol * scale))
    n_neg = int(np.sum(ev < -tol * scale))
    return (n_pos, n_neg)


def c_theta_matrix(Theta):
    """21x21 matrix of v ^ w -> iota(v) iota(w) Theta on 2-vectors.

    Rows and columns are indexed by the lexicographic 2-element
    multi-indices; the row side lives in 2-forms.
    """
    if Theta.dim != N7 or Theta.degree != 4:
        raise DegreeError("expected a 4-form on R^7")
    idx2 = multi_indices(N7, 2)
    C = np.zeros((DIM2_7, DIM2_7))
    for col, (i, j) in enumerate(idx2):
        vi = np.zeros(N7)
        vi[i] = 1.0
        vj = np.zeros(N7)
        vj[j] = 1.0
        C[:, col] = interior(vj, interior(vi, Theta)).coeffs
    return C


# calibration of the dual functional: the value at *phi_std is pinned
# to 24/7 so that the Legendre pairing 6 phi(Omega) = (7/4) psi(*Omega)
# holds identically on the positive orbit.  The determinant of C at
# *phi_std is computed once at import and frozen through this constant.
_DET_C_AT_STAR_STD = abs(np.linalg.det(c_theta_matrix(
    star_omega(PHI_STD))))
C0 = (24.0 / 7.0) / _DET_C_AT_STAR_STD ** (1.0 / 12.0)


def dual_functional(Theta):
    """Degree-7/4 invariant psi(Theta) = C0 |det C_Theta|^{1/12}."""
    C = c_theta_matrix(Theta)
    d = np.linalg.det(C)
    nrm = max(Theta.norm(), 1e-300)
    if abs(d) <= (1e-9 * nrm) ** 21:
        raise OrbitError("singular contraction map, psi undefined")
    return C0 * abs(d) ** (1.0 / 12.0)


def g2_two_form_subspace(Omega, eps=EPS7):
    """Basis of the 14-dimensional space of 2-forms chi with chi ^ *Omega = 0."""
    so = star_omega(Omega, eps)
    M = np.zeros((N7, DIM2_7))
    for c in range(DIM2_7):
        e = np.zeros(DIM2_7)
        e[c] = 1.0
        M[:, c] = wedge(Form(N7, 2, e), so).coeffs
    _, s, vt = np.linalg.svd(M)
    null = vt[np.sum(s > 1e-10 * max(s[0], 1e-300)):]
    return null.T
