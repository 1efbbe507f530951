"""Self-duality of 3-forms in signature (5,1).

With the Lorentzian metric diag(-1,1,1,1,1,1) the Hodge star squares
to +1 on 3-forms, splitting the 20-dimensional space into self-dual
and anti-self-dual halves of dimension 10.  Both halves are Lagrangian
for the wedge symplectic pairing, lambda is nonnegative on self-dual
forms, and the hat map exchanges the two halves.  Graphs of the form
Omega + f(phi) hat(Omega) over the self-dual half are Lagrangian for
any smooth f, which is the geometric form of the self-interacting
self-dual tensor equation.

Axis labels are 0..5 in this module (e0 timelike), matching the usual
Lorentzian conventions; internally e_j is basis covector j+1.
"""

from dataclasses import dataclass

import numpy as np

from stable_forms.exterior import (
    Form,
    MetricG,
    MetricError,
    VolumeElement,
    hodge_star,
    interior,
)
from stable_forms.forms6 import (
    DEAD_BAND,
    decompose6,
    hat,
    lambda_inv,
    phi6,
    symplectic_pairing,
)

G_LORENTZ = MetricG(np.diag([-1.0, 1, 1, 1, 1, 1]))
VOL_LORENTZ = VolumeElement(1.0)


def e3(i, j, k, coeff=1.0):
    """Basis 3-form e_i ^ e_j ^ e_k with 0-based Lorentzian labels."""
    return Form.basis(6, (i + 1, j + 1, k + 1), coeff)


@dataclass(frozen=True)
class SDSplit:
    plus: Form
    minus: Form


def sd_split(Omega, g=G_LORENTZ, vol=VOL_LORENTZ):
    """Split a 3-form into self-dual and anti-self-dual parts."""
    if g.signature != (5, 1):
        raise MetricError("self-duality split needs signature (5,1), got %s"
                          % (g.signature,))
    st = hodge_star(g, vol, Omega)
    return SDSplit((Omega + st) * 0.5, (Omega - st) * 0.5)


def _star(Omega):
    return hodge_star(G_LORENTZ, VOL_LORENTZ, Omega)


def sd_projector():
    """20x20 matrix of the projection onto the self-dual subspace."""
    P = np.zeros((20, 20))
    for c in range(20):
        e = np.zeros(20)
        e[c] = 1.0
        P[:, c] = sd_split(Form(6, 3, e)).plus.coeffs
    return P


def random_sd(rng, scale=1.0):
    """Self-dual form with projected standard normal coefficients."""
    return sd_split(Form(6, 3, scale * rng.standard_normal(20))).plus


def check_sd_lambda(samples=500, seed=0):
    """lambda >= 0 on self-dual forms; stable ones split as alpha + *alpha."""
    rng = np.random.default_rng(seed)
    violations = 0
    max_neg = 0.0
    max_pair = 0.0
    skipped = 0
    for _ in range(samples):
        Om = random_sd(rng)
        lam = lambda_inv(Om)
        scale = max(Om.norm(), 1e-300) ** 4
        if lam < -1e-9 * scale:
            violations += 1
            max_neg = max(max_neg, -lam / scale)
            continue
        if lam <= DEAD_BAND * scale:
            skipped += 1
            continue
        d = decompose6(Om)
        if d.kind != "RealPair":
            violations += 1
            continue
        r = min((_star(d.alpha) - d.beta).norm(),
                (_star(d.beta) - d.alpha).norm()) / Om.norm()
        max_pair = max(max_pair, r)
        if r > 1e-8:
            violations += 1
    return {
        "check": "lambda",
        "samples": samples,
        "skipped": skipped,
        "max_residual": max(max_neg, max_pair),
        "violations": violations,
    }


def check_hat_antiselfdual(samples=500, seed=0):
    """hat of a stable self-dual form is anti-self-dual."""
    rng = np.random.default_rng(seed)
    violations = 0
    max_res = 0.0
    skipped = 0
    for _ in range(samples):
        Om = random_sd(rng)
        lam = lambda_inv(Om)
        if lam <= DEAD_BAND * max(Om.norm(), 1e-300) ** 4:
            skipped += 1
            continue
        h = hat(Om)
        r = (_star(h) + h).norm() / Om.norm()
        max_res = max(max_res, r)
        if r > 1e-8:
            violations += 1
    return {
        "check": "hat",
        "samples": samples,
        "skipped": skipped,
        "max_residual": max_res,
        "violations": violations,
    }


def check_lagrangian(subspace="Plus", samples=200, seed=0):
    """Wedge pairing vanishes on pairs from one self-duality half."""
    rng = np.random.default_rng(seed)
    max_res = 0.0
    violations = 0
    for _ in range(samples):
        s1 = sd_split(Form(6, 3, rng.standard_normal(20)))
        s2 = sd_split(Form(6, 3, rng.standard_normal(20)))
        a = s1.plus if subspace == "Plus" else s1.minus
        b = s2.plus if subspace == "Plus" else s2.minus
        r = abs(symplectic_pairing(a, b)) / (a.norm() * b.norm())
        max_res = max(max_res, r)
        if r > 1e-10:
            violations += 1
    return {
        "check": "lagrangian",
        "subspace": subspace,
        "samples": samples,
        "max_residual": max_res,
        "violations": violations,
    }


def check_lagrangian_graph(f, samples=50, fd_step=1e-5, seed=0, tol=1e-6):
    """Graphs Omega -> Omega + f(phi) hat(Omega) over the SD half are Lagrangian.

    Tangents to the graph are pushed forward by central finite
    differences with the given step; the report records the largest
    normalized pairing |omega(U, V)| over random base points and
    tangent pairs.
    """
    rng = np.random.default_rng(seed)
    max_res = 0.0
    violations = 0
    done = 0
    while done < samples:
        Om = random_sd(rng)
        if lambda_inv(Om) <= 1e-3 * max(Om.norm(), 1e-300) ** 4:
            continue  # resample well inside the positive cone
        done += 1

        def graph(x):
            return x + hat(x) * f(phi6_pos(x))

        u = random_sd(rng)
        v = random_sd(rng)
        h = fd_step * Om.norm()
        U = (graph(Om + u * h) - graph(Om - u * h)) * (1.0 / (2 * h))
        V = (graph(Om + v * h) - graph(Om - v * h)) * (1.0 / (2 * h))
        r = abs(symplectic_pairing(U, V)) / (U.norm() * V.norm())
        max_res = max(max_res, r)
        if r > tol:
            violations += 1
    return {
        "check": "graph",
        "samples": samples,
        "max_residual": max_res,
        "violations": violations,
    }


def phi6_pos(Omega):
    """sqrt(lambda) on the positive orbit (self-dual stable forms)."""
    lam = lambda_inv(Omega)
    if lam <= 0:
        raise ValueError("expected lambda > 0")
    return np.sqrt(lam)


def decomposable_residual(a):
    """Max norm of iota(v)a ^ a over basis vectors, zero iff decomposable."""
    from stable_forms.exterior import wedge

    worst = 0.0
    for i in range(a.dim):
        v = np.zeros(a.dim)
        v[i] = 1.0
        worst = max(worst, wedge(interior(v, a), a).norm())
    return worst
