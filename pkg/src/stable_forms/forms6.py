"""Six-dimensional theory of stable 3-forms.

A 3-form Omega on R^6 determines an endomorphism-valued invariant
K_Omega, a quartic invariant lambda, and (on the open orbits) a
splitting into two decomposable pieces.  On the negative orbit the
splitting is a complex conjugate pair and induces a complex structure;
the square root phi = sqrt(-lambda) is then the Hamiltonian generating
a flat special pseudo-Kahler structure on the 20-dimensional space of
3-forms with its wedge symplectic form.
"""

from dataclasses import dataclass

import numpy as np

from stable_forms.exterior import (
    DegreeError,
    DimError,
    Form,
    OrbitError,
    StructureError,
    VolumeElement,
    index_position,
    interior,
    merge_sign,
    multi_indices,
    pullback,
    wedge,
    wedge_top_coeff,
)

N6 = 6
DIM3 = 20
DEAD_BAND = 1e-9

EPS6 = VolumeElement(1.0)

# standard representatives of the two open orbits
PHI_R = Form.basis(6, (1, 2, 3)) + Form.basis(6, (4, 5, 6))

_A1 = Form.basis(6, (1,), 1.0) + Form.basis(6, (2,), 1j)
_A2 = Form.basis(6, (3,), 1.0) + Form.basis(6, (4,), 1j)
_A3 = Form.basis(6, (5,), 1.0) + Form.basis(6, (6,), 1j)
ALPHA_C = wedge(wedge(_A1, _A2), _A3)
PHI_C = (ALPHA_C + ALPHA_C.conj()).real()


@dataclass(frozen=True)
class KMap6:
    """kappa matrix of K_Omega relative to the trivialization eps."""

    kappa: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "kappa", np.asarray(self.kappa, dtype=float))


@dataclass(frozen=True)
class Decomposition6:
    """Splitting Omega = alpha + beta into decomposable 3-forms.

    kind is "RealPair" on the positive orbit (alpha, beta real with
    alpha ^ beta positively oriented) and "ComplexConjugatePair" on the
    negative orbit (beta = conj(alpha), i alpha ^ conj(alpha) positively
    oriented).
    """

    kind: str
    alpha: Form
    beta: Form
    lam: float


@dataclass(frozen=True)
class ComplexStructureI:
    I: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "I", np.asarray(self.I, dtype=float))


@dataclass(frozen=True)
class SpecialKahlerData:
    """Flat special pseudo-Kahler data at a point of the negative orbit.

    J is the 20x20 complex structure (derivative of the hat vector
    field), gHess the Hessian metric of phi = sqrt(-lambda), omega20 the
    constant wedge symplectic pairing matrix.
    """

    J: np.ndarray
    gHess: np.ndarray
    omega20: np.ndarray


def _check_omega(Omega, need_real=True):
    if Omega.dim != N6:
        raise DimError("expected a form on R^6, got dim %d" % Omega.dim)
    if Omega.degree != 3:
        raise DegreeError("expected degree 3, got %d" % Omega.degree)
    if need_real and not Omega.is_real:
        raise StructureError("expected a real form")


def _k_map_slow(coeffs):
    """Reference evaluation of kappa by explicit wedge products."""
    Omega = Form(N6, 3, coeffs)
    kappa = np.zeros((N6, N6))
    pos5 = index_position(N6, 5)
    for i in range(N6):
        v = np.zeros(N6)
        v[i] = 1.0
        five = wedge(interior(v, Omega), Omega)
        for j in range(N6):
            comp = tuple(k for k in range(N6) if k != j)
            s, _ = merge_sign((j,), comp)
            kappa[j, i] = s * five.coeffs[pos5[comp]]
    return kappa


_K_TENSOR = None


def k_tensor():
    """Symmetric tensor T with kappa(Omega)[j,i] = T[j,i,a,b] c_a c_b.

    Built once by polarizing the reference evaluation over basis forms.
    """
    global _K_TENSOR
    if _K_TENSOR is None:
        T = np.zeros((N6, N6, DIM3, DIM3))
        singles = []
        for a in range(DIM3):
            e = np.zeros(DIM3)
            e[a] = 1.0
            singles.append(_k_map_slow(e))
        for a in range(DIM3):
            T[:, :, a, a] = singles[a]
            for b in range(a + 1, DIM3):
                e = np.zeros(DIM3)
                e[a] = 1.0
                e[b] = 1.0
                mixed = (_k_map_slow(e) - singles[a] - singles[b]) / 2.0
                T[:, :, a, b] = mixed
                T[:, :, b, a] = mixed
        _K_TENSOR = T
    return _K_TENSOR


def k_map(Omega, eps=EPS6):
    """Matrix kappa with theta ^ iota(w_i)Omega ^ Omega = theta(kappa w_i) eps.

    Column i is read off from the 5-form iota(w_i)Omega ^ Omega through
    the canonical pairing of 5-forms with vectors fixed by eps.
    """
    _check_omega(Omega)
    c = Omega.coeffs
    kappa = np.einsum("jiab,a,b->ji", k_tensor(), c, c) / eps.coeff
    return KMap6(kappa)


def lambda_inv(Omega, eps=EPS6):
    """Quartic invariant lambda(Omega) = tr(K_Omega^2)/6."""
    k = k_map(Omega, eps).kappa
    return float(np.trace(k @ k)) / 6.0


def classify6(Omega, eps=EPS6, tol=DEAD_BAND):
    """Orbit of Omega: PositiveOrbit, NegativeOrbit or Degenerate.

    The dead band is relative, |lambda| <= tol * ||Omega||^4, since
    lambda is homogeneous of degree 4.
    """
    lam = lambda_inv(Omega, eps)
    if abs(lam) <= tol * max(Omega.norm(), 1e-300) ** 4:
        return "Degenerate"
    return "PositiveOrbit" if lam > 0 else "NegativeOrbit"


_LIE_TENSOR = None


def lie_tensor():
    """Tensor L with (rho(a)Omega)_c = L[c,d,i,j] a[i,j] Omega_d."""
    global _LIE_TENSOR
    if _LIE_TENSOR is None:
        L = np.zeros((DIM3, DIM3, N6, N6))
        for i in range(N6):
            w = np.zeros(N6)
            w[i] = 1.0
            for d in range(DIM3):
                e = np.zeros(DIM3)
                e[d] = 1.0
                ins = interior(w, Form(N6, 3, e))
                for j in range(N6):
                    L[:, d, i, j] = wedge(Form.basis(N6, (j + 1,)), ins).coeffs
        _LIE_TENSOR = L
    return _LIE_TENSOR


def _k_star(Omega, kappa):
    """Action of the third exterior power of kappa on Omega.

    Uses the odd-polynomial identity in the derivation D = rho(kappa):
    because kappa^2 = lambda * identity, the cube of kappa's exterior
    action on 3-forms equals (1/6) D^3 - (7/6) lambda D.
    """
    lam = np.trace(kappa @ kappa) / 6.0
    M = np.einsum("cdij,ij->cd", lie_tensor(), kappa)
    D1 = M @ Omega.coeffs
    D3 = M @ (M @ D1)
    return Form(N6, 3, D3 / 6.0 - (7.0 / 6.0) * lam * D1)


def hat(Omega, eps=EPS6):
    """The nonlinear complement Omega-hat.

    On the negative orbit, Omega + i hat(Omega) is decomposable and
    Omega ^ hat(Omega) = 2 sqrt(-lambda) eps.  On the positive orbit,
    hat(Omega) = alpha - beta for the ordered decomposable splitting.
    Degree 1 homogeneous; hat(hat(Omega)) = -Omega.
    """
    km = k_map(Omega, eps)
    lam = float(np.trace(km.kappa @ km.kappa)) / 6.0
    if abs(lam) <= DEAD_BAND * max(Omega.norm(), 1e-300) ** 4:
        raise OrbitError("hat undefined at a degenerate form")
    ks = _k_star(Omega, km.kappa)
    h = ks * (1.0 / abs(lam) ** 1.5)
    if lam < 0:
        # fix the branch of the square root so the pair is positively
        # oriented, equivalently Omega ^ hat = +2 sqrt(-lam) eps
        if wedge_top_coeff(Omega, h) / eps.coeff > 0:
            return h
        return -h
    # positive orbit: order the real pair so alpha ^ beta > 0, which
    # pins Omega ^ hat = -2 sqrt(lam) eps
    if wedge_top_coeff(Omega, h) / eps.coeff > 0:
        return -h
    return h


def decompose6(Omega, eps=EPS6):
    """Split a stable Omega into its two decomposable constituents."""
    lam = lambda_inv(Omega, eps)
    if abs(lam) <= DEAD_BAND * max(Omega.norm(), 1e-300) ** 4:
        raise OrbitError("decomposition undefined at a degenerate form")
    h = hat(Omega, eps)
    if lam > 0:
        alpha = (Omega + h) * 0.5
        beta = (Omega - h) * 0.5
        return Decomposition6("RealPair", alpha, beta, lam)
    alpha = (Omega.complexified() + h.complexified() * 1j) * 0.5
    return Decomposition6("ComplexConjugatePair", alpha, alpha.conj(), lam)


def complex_structure(Omega, eps=EPS6):
    """Almost complex structure I = kappa / sqrt(-lambda) on R^6."""
    km = k_map(Omega, eps)
    lam = float(np.trace(km.kappa @ km.kappa)) / 6.0
    if lam >= -DEAD_BAND * max(Omega.norm(), 1e-300) ** 4:
        raise OrbitError("complex structure needs lambda < 0")
    return ComplexStructureI(km.kappa / np.sqrt(-lam))


def symplectic_pairing(O1, O2, eps=EPS6):
    """omega(O1, O2) with omega(O1, O2) eps = O1 ^ O2."""
    _check_omega(O1)
    _check_omega(O2)
    return wedge_top_coeff(O1, O2) / eps.coeff


def omega20_matrix():
    """Constant matrix of the wedge pairing in the multi-index basis."""
    idx = multi_indices(N6, 3)
    W = np.zeros((DIM3, DIM3))
    for a, I in enumerate(idx):
        for b, J in enumerate(idx):
            s, merged = merge_sign(I, J)
            if s:
                W[a, b] = s
    return W


def lie_action(a, Omega):
    """Infinitesimal gl(6) action rho(a)Omega = sum a[i,j] theta_j ^ iota(w_i)Omega.

    Warns (without failing) if a has nonzero trace; the moment map
    identity rho(a)Omega ^ Omega = tr(a kappa) eps only needs the
    traceless part but the formula makes sense for any a.
    """
    _check_omega(Omega, need_real=False)
    a = np.asarray(a, dtype=float)
    if abs(np.trace(a)) > 1e-12:
        import warnings

        warnings.warn("lie_action called with tr(a) = %g" % np.trace(a))
    out = Form.zero(N6, 3, complexify=not Omega.is_real)
    for i in range(N6):
        w = np.zeros(N6)
        w[i] = 1.0
        ins = interior(w, Omega)
        for j in range(N6):
            if a[i, j] == 0.0:
                continue
            out = out + a[i, j] * wedge(Form.basis(N6, (j + 1,)), ins)
    return out


def phi6(Omega, eps=EPS6):
    """Volume density phi = sqrt(-lambda) on the negative orbit."""
    lam = lambda_inv(Omega, eps)
    if lam >= 0:
        raise OrbitError("phi defined only on the negative orbit")
    return np.sqrt(-lam)


def special_kahler(Omega, eps=EPS6, step=1e-5):
    """Special pseudo-Kahler data at Omega (lambda < 0).

    J is the central finite-difference Jacobian of the Hamiltonian
    vector field X(Omega) = -hat(Omega); gHess the finite-difference
    Hessian of phi.  Both use the relative step ``step * ||Omega||``.
    """
    lam = lambda_inv(Omega, eps)
    if lam >= -DEAD_BAND * max(Omega.norm(), 1e-300) ** 4:
        raise OrbitError("special Kahler data needs lambda < 0")
    h = step * Omega.norm()
    J = np.zeros((DIM3, DIM3))
    gH = np.zeros((DIM3, DIM3))
    base = Omega.coeffs.astype(float)
    for c in range(DIM3):
        dv = np.zeros(DIM3)
        dv[c] = h
        Op = Form(N6, 3, base + dv)
        Om = Form(N6, 3, base - dv)
        J[:, c] = (-hat(Op, eps).coeffs + hat(Om, eps).coeffs) / (2 * h)
        gH[:, c] = (_grad_phi(Op, eps) - _grad_phi(Om, eps)) / (2 * h)
    gH = 0.5 * (gH + gH.T)
    return SpecialKahlerData(J, gH, omega20_matrix())


def _grad_phi(Omega, eps):
    """Euclidean-coordinate gradient of phi via dphi = -omega(hat, .)."""
    h = hat(Omega, eps)
    W = omega20_matrix()
    # dphi(e_c) = -omega(hat, e_c) = -(hat)^T W e_c
    return -(h.coeffs @ W)


def type_decompose(I, a):
    """Split a complex 3-form into its (3,0), (2,1), (1,2), (0,3) parts.

    Convention: a covector xi is labeled (1,0) when xi(Iv) = -i xi(v).
    This labeling is the one under which Omega + i hat(Omega) comes out
    pure (3,0) for I = complex_structure(Omega), and under which the
    20x20 complex structure J of special_kahler acts as +i on the
    (3,0) + (2,1) block.  Returns the four components in the order
    (3,0), (2,1), (1,2), (0,3).
    """
    if isinstance(I, ComplexStructureI):
        I = I.I
    I = np.asarray(I, dtype=float)
    if np.max(np.abs(I @ I + np.eye(N6))) > 1e-10:
        raise StructureError("I^2 = -identity violated")
    ac = a.complexified()
    P_plus = 0.5 * (np.eye(N6) + 1j * I.T)
    P_minus = 0.5 * (np.eye(N6) - 1j * I.T)
    # pullback acts on covector coefficients by the transpose, so the
    # slotwise projector P corresponds to pullback by P transpose
    samples = []
    ts = (0.0, 1.0, 2.0, 3.0)
    for t in ts:
        M = (P_plus + t * P_minus).T
        samples.append(pullback(M, ac).coeffs)
    V = np.vander(ts, 4, increasing=True)
    coeffs = np.linalg.solve(V, np.array(samples))
    # row q of coeffs is the (3-q, q) component
    return tuple(Form(N6, 3, coeffs[q], complexify=True) for q in range(4))
