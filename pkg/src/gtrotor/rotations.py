"""Change-of-basis matrices for SO(3) rotations on sl3 irreps.

rho_z is the closed form for z-rotations (block-diagonal, Krawtchouk
entries); tau is the transition between the two sl2 embeddings (Racah
entries, global sign calibrated against the float oracle); sigma is the
general rotation, computed either as the five-factor product or as the
closed double sum.  For angles given as exact points on the unit circle all
of these are exact rational matrices.

Ground truth hierarchy when paths disagree: exponential oracle, then the
five-factor product, then the closed double sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gt_basis import GTPattern, IrrepBasis, shift
from .linalg import PatternMatrix, orthogonality_defect
from .numerics import (
    Angle,
    as_int,
    factorial,
    is_exact,
    neg_one_pow,
    rational,
    sin_cos,
)
from .rep import element_matrix, generator_matrix, h_eigenvalue
from .specfun import krawtchouk_trig, racah_tilde_raw

__all__ = [
    "EulerAngles",
    "TanPole",
    "NotSymmetricRep",
    "rho_z",
    "tau",
    "tau_sign",
    "tau_inverse",
    "sigma_product",
    "sigma_formula",
    "sigma_symmetric",
    "hybrid_sigma",
    "hybrid_polynomial",
    "hybrid_variables",
    "bispectral_residual",
    "h_recurrence_explicit_residual",
    "rotation_matrix",
    "psi_element",
    "orthogonality_defect",
]


class TanPole(ArithmeticError):
    """Closed form requested at an exact angle with cos = 0."""


class NotSymmetricRep(ValueError):
    """Operation needs a weight with l32 = l33."""


@dataclass(frozen=True)
class EulerAngles:
    """Angles of S = Rz(chi) . Ry(theta) . Rz(phi)."""

    chi: Angle
    theta: Angle
    phi: Angle

    def all_exact(self) -> bool:
        return self.chi.exact and self.theta.exact and self.phi.exact


# --------------------------------------------------------------------------
# rho: z-rotations


def _rho_entry(n: int, x: int, N: int, s, c, exact: bool):
    pref = neg_one_pow(x) * factorial(N) / (factorial(n) * factorial(N - x))
    joint = krawtchouk_trig(n, x, N, s, c, exact)
    return pref * joint if exact else float(pref) * joint


def rho_z(angle: Angle, basis: IrrepBasis) -> PatternMatrix:
    """Change of basis for a z-rotation; exact for ExactOnCircle angles."""
    s, c, exact = sin_cos(angle)
    if c == 0:
        raise TanPole("closed-form z-rotation evaluated at cos = 0")

    def build():
        entries = {}
        blocks = {}
        for i, p in enumerate(basis):
            blocks.setdefault((p.l21, p.l22), []).append(i)
        for (l21, l22), idxs in blocks.items():
            N = as_int(l21 - l22)
            for row in idxs:
                x = as_int(basis[row].l11 - l22)
                for col in idxs:
                    n = as_int(basis[col].l11 - l22)
                    v = _rho_entry(n, x, N, s, c, exact)
                    if v != 0:
                        entries[(row, col)] = v
        return PatternMatrix(basis, entries, exact)

    if exact:
        return basis.memo(("rho_z", s, c), build)
    return build()


# --------------------------------------------------------------------------
# tau: the transition T between the two sl2 embeddings


def _t_factor(w, x, y, z):
    """Normalization factor of the tau entries, a ratio of factorials in the
    row pattern (x, y, z) = (l21', l11', l22')."""
    num = (
        (x - z + 1)
        * factorial(w.l31 - w.l32)
        * factorial(w.l31 - w.l33 + 1)
        * factorial(w.l31 - y)
        * factorial(w.l32 - z)
        * factorial(y - z)
    )
    den = (
        factorial(x - w.l32)
        * factorial(x - w.l33 + 1)
        * factorial(x - y)
        * factorial(w.l31 - z + 1)
        * factorial(w.l31 - x)
        * factorial(z - w.l33)
    )
    return num / den


def _tau_racah_value(w, col: GTPattern, x_var):
    """Shifted Racah factor of a tau entry: degree l31-l21 at variable x_var,
    with all parameters read off the column pattern."""
    n = as_int(w.l31 - col.l21)
    alpha = w.l32 - w.l31 - 1
    beta = col.l21 + col.l22 + w.l33 - 1
    gamma = col.l11 - w.l31 - 1
    delta = -col.l21 - col.l22 - w.l31 - 1
    return racah_tilde_raw(n, x_var, alpha, beta, gamma, delta)


def tau_raw(basis: IrrepBasis) -> PatternMatrix:
    """Closed-form tau with the sign convention as derived (uncalibrated)."""

    def build():
        w = basis.weight
        entries = {}
        for j, col in enumerate(basis):
            for i, row in enumerate(basis):
                if row.l11 != col.l11:
                    continue
                if col.l21 + col.l22 != row.l11 - row.l21 - row.l22:
                    continue
                v = (
                    _t_factor(w, row.l21, row.l11, row.l22)
                    * neg_one_pow(row.l22 - col.l21)
                    * _tau_racah_value(w, col, w.l31 - row.l21)
                )
                if v != 0:
                    entries[(i, j)] = v
        return PatternMatrix(basis, entries)

    return basis.memo(("tau_raw",), build)


def tau_sign(basis: IrrepBasis) -> int:
    """Global sign fixed once per basis against the exponential oracle."""

    def build():
        from .oracle import calibrate_tau_sign

        return calibrate_tau_sign(basis)

    return basis.memo(("tau_sign",), build)


def tau(basis: IrrepBasis, calibrated: bool = True) -> PatternMatrix:
    if not calibrated:
        return tau_raw(basis)
    return basis.memo(
        ("tau",), lambda: tau_raw(basis).scaled(rational(tau_sign(basis)))
    )


def tau_inverse(basis: IrrepBasis, calibrated: bool = True) -> PatternMatrix:
    """Inverse of tau through the squared-norm ratios (exact, no roots)."""

    def build():
        t = tau(basis, calibrated)
        nsq = basis.norms_sq()
        entries = {
            (j, i): nsq[i] / nsq[j] * v for (i, j), v in t.entries.items()
        }
        return PatternMatrix(basis, entries)

    return basis.memo(("tau_inverse", calibrated), build)


# --------------------------------------------------------------------------
# sigma: general rotations


def _rho_factor(angle: Angle, basis: IrrepBasis) -> PatternMatrix:
    """rho for one Euler angle; cos = 0 falls back to the float oracle."""
    _, c, _ = sin_cos(angle)
    if c == 0:
        from .oracle import rho_z_oracle

        return rho_z_oracle(angle.radians(), basis)
    return rho_z(angle, basis)


def sigma_product(angles: EulerAngles, basis: IrrepBasis) -> PatternMatrix:
    """Five-factor product rho_phi tau^-1 rho_theta tau rho_chi.

    Exact angles multiply exactly; any float factor routes the whole product
    through the orthonormal basis, where every factor is an orthogonal matrix
    and the factorial-sized entries of the raw basis cannot amplify roundoff.
    """
    rho_phi = _rho_factor(angles.phi, basis)
    rho_theta = _rho_factor(angles.theta, basis)
    rho_chi = _rho_factor(angles.chi, basis)
    if rho_phi.exact and rho_theta.exact and rho_chi.exact:
        left = rho_phi @ tau_inverse(basis)
        return left @ rho_theta @ tau(basis) @ rho_chi
    t = tau(basis).zeta_numpy()
    out = rho_phi.zeta_numpy() @ t.T @ rho_theta.zeta_numpy() @ t
    return PatternMatrix.from_zeta_numpy(basis, out @ rho_chi.zeta_numpy())


def _int_range(lo, hi):
    """Unit-step values from lo to hi inclusive (rational lattice points)."""
    count = as_int(hi - lo)
    return [lo + k for k in range(count + 1)] if count >= 0 else []


def _kraw(n, x, N, p, exact):
    """Krawtchouk value with the out-of-range convention, uncached floats."""
    from .specfun import _kraw_sum, _kraw_sum_exact

    n, x, N = as_int(n), as_int(x), as_int(N)
    if n < 0 or n > N or x < 0 or x > N:
        return rational(0) if exact else 0.0
    if exact:
        return _kraw_sum_exact(n, rational(x), N, p)
    return _kraw_sum(n, x, N, p)


@lru_cache(maxsize=None)
def _racah_windowed(n, x, a, b, c, d):
    window = min(-a - 1, -b - d - 1, -c - 1)
    if n < 0 or x < 0 or n > window or x > window:
        return rational(0)
    return racah_tilde_raw(n, x, a, b, c, d)


def sigma_formula(angles: EulerAngles, basis: IrrepBasis) -> PatternMatrix:
    """Closed double sum for sigma: three Krawtchouk and two Racah factors
    per term, summed over the admissible lattice rectangle.

    Each Krawtchouk factor is evaluated jointly with its tangent/cosine
    monomial (the tangent exponent is always degree + variable), which keeps
    entries finite and exact at zero angles."""
    s_chi, c_chi, e1 = sin_cos(angles.chi)
    s_the, c_the, e2 = sin_cos(angles.theta)
    s_phi, c_phi, e3 = sin_cos(angles.phi)
    exact = e1 and e2 and e3
    if c_chi == 0 or c_the == 0 or c_phi == 0:
        raise TanPole("closed-form sigma evaluated at cos = 0")

    w = basis.weight
    l31, l32, l33 = w.l31, w.l32, w.l33
    alpha = l32 - l31 - 1
    zero = rational(0) if exact else 0.0

    entries = {}
    for i, row in enumerate(basis):
        rp21, rp22, rp11 = row.l21, row.l22, row.l11
        beta_r = rp21 + rp22 + l33 - 1
        delta_r = -rp21 - rp22 - l31 - 1
        deg_r = as_int(l31 - rp21)
        for j, col in enumerate(basis):
            l21, l22, l11 = col.l21, col.l22, col.l11
            beta_c = l21 + l22 + l33 - 1
            delta_c = -l21 - l22 - l31 - 1
            deg_c = as_int(l31 - l21)
            acc = zero
            for n in _int_range(max(-l21, -rp21), min(-l22, -rp22)):
                k1 = krawtchouk_trig(
                    n + rp21, rp11 - rp22, rp21 - rp22, s_phi, c_phi, exact
                )
                if k1 == 0:
                    continue
                k3 = krawtchouk_trig(
                    l11 - l22, n + l21, l21 - l22, s_chi, c_chi, exact
                )
                if k3 == 0:
                    continue
                gamma_r = n + rp21 + rp22 - l31 - 1
                gamma_c = n + l21 + l22 - l31 - 1
                l_min = max(
                    l32, n - l32, -l21 - l22, n + l21 + l22,
                    -rp21 - rp22, n + rp21 + rp22,
                )
                for ell in _int_range(l_min, min(l31, n - l33)):
                    r1 = _racah_windowed(
                        deg_r, as_int(l31 - ell), alpha, beta_r, gamma_r, delta_r
                    )
                    if r1 == 0:
                        continue
                    r2 = _racah_windowed(
                        deg_c, as_int(l31 - ell), alpha, beta_c, gamma_c, delta_c
                    )
                    if r2 == 0:
                        continue
                    k2 = krawtchouk_trig(
                        ell + l21 + l22, ell + rp21 + rp22, 2 * ell - n,
                        s_the, c_the, exact,
                    )
                    if k2 == 0:
                        continue
                    mu = (
                        neg_one_pow(rp11 + ell - n)
                        * _t_factor(w, rp21, n + rp21 + rp22, rp22)
                        * _t_factor(w, ell, n + l21 + l22, n - ell)
                        * factorial(rp21 - rp22)
                        * factorial(2 * ell - n)
                        * factorial(l21 - l22)
                        / (
                            factorial(n + rp21)
                            * factorial(rp21 - rp11)
                            * factorial(ell + l21 + l22)
                            * factorial(ell - n - rp21 - rp22)
                            * factorial(l11 - l22)
                            * factorial(-n - l22)
                        )
                    )
                    term = mu * r1 * r2
                    if exact:
                        acc += term * k1 * k2 * k3
                    else:
                        acc += float(term) * k1 * k2 * k3
            if acc != 0:
                entries[(i, j)] = acc
    return PatternMatrix(basis, entries, exact)


def sigma_symmetric(angles: EulerAngles, basis: IrrepBasis) -> PatternMatrix:
    """Single sum of three Krawtchouk factors, valid when l32 = l33.

    The prefactor is the one obtained by collapsing the five-factor product
    in the symmetric representation; the product path is the arbiter (see
    the verify suite)."""
    w = basis.weight
    if w.l32 != w.l33:
        raise NotSymmetricRep(f"{w} has l32 != l33")
    m = w.l33
    s_chi, c_chi, e1 = sin_cos(angles.chi)
    s_the, c_the, e2 = sin_cos(angles.theta)
    s_phi, c_phi, e3 = sin_cos(angles.phi)
    exact = e1 and e2 and e3
    if c_chi == 0 or c_the == 0 or c_phi == 0:
        raise TanPole("closed-form sigma evaluated at cos = 0")
    zero = rational(0) if exact else 0.0

    entries = {}
    for i, row in enumerate(basis):
        l21, l11 = row.l21, row.l11
        for j, col in enumerate(basis):
            lp21, lp11 = col.l21, col.l11
            sign = neg_one_pow((l11 - l21) + (m - l21))
            acc = zero
            for ell in _int_range(max(rational(0), l21 - lp21), l21 - m):
                k1 = krawtchouk_trig(ell, l11 - m, l21 - m, s_phi, c_phi, exact)
                if k1 == 0:
                    continue
                k2 = krawtchouk_trig(
                    ell + lp21 - l21, ell, ell - l21 - 2 * m, s_the, c_the, exact
                )
                if k2 == 0:
                    continue
                k3 = krawtchouk_trig(
                    lp11 - m, ell + lp21 - l21, lp21 - m, s_chi, c_chi, exact
                )
                if k3 == 0:
                    continue
                pref = (
                    factorial(ell - l21 - 2 * m)
                    * factorial(lp21 - m) ** 2
                    / (
                        factorial(ell)
                        * factorial(l21 - l11)
                        * factorial(ell + lp21 - l21)
                        * factorial(-2 * m - l21)
                        * factorial(lp11 - m)
                        * factorial(l21 - ell - m)
                    )
                )
                if exact:
                    acc += sign * pref * k1 * k2 * k3
                else:
                    acc += sign * float(pref) * k1 * k2 * k3
            if acc != 0:
                entries[(i, j)] = acc
    return PatternMatrix(basis, entries, exact)


def hybrid_variables(row: GTPattern, col: GTPattern) -> dict:
    """Variable dictionary of the bivariate hybrid family for one entry."""
    w = row.weight
    return {
        "x1": col.l22 + col.l21 + w.l31,
        "x2": w.l31 - col.l21,
        "n1": row.l11 - row.l22,
        "n2": w.l31 - row.l21,
        "N": 2 * w.l31 - row.l21 - row.l22,
    }


def hybrid_polynomial(n1, n2, x1, x2, N, alpha, beta, delta, angle: Angle):
    """Bivariate hybrid function: Krawtchouk in (x1 - n2), shifted Racah in
    x2 with gamma tied to x1."""
    s, _, exact = sin_cos(angle)
    p = s * s
    k = _kraw(n1, x1 - n2, N - 2 * n2, p, exact)
    r = _racah_windowed(
        as_int(n2), as_int(x2),
        rational(alpha), rational(beta), rational(x1 - N - 1), rational(delta),
    )
    return k * r if exact else k * float(r)


def hybrid_sigma(eta: Angle, basis: IrrepBasis) -> PatternMatrix:
    """Closed form for the rotation Rz(eta) . T: one Krawtchouk and one
    shifted Racah factor per entry, carrying tau's calibrated sign."""
    s, c, exact = sin_cos(eta)
    if c == 0:
        raise TanPole("closed-form hybrid sigma evaluated at cos = 0")
    w = basis.weight
    alpha = w.l32 - w.l31 - 1
    cal = rational(tau_sign(basis))

    entries = {}
    for i, row in enumerate(basis):
        rp21, rp22, rp11 = row.l21, row.l22, row.l11
        tfac = _t_factor(w, rp21, rp11, rp22)
        for j, col in enumerate(basis):
            l21, l22, l11 = col.l21, col.l22, col.l11
            if l21 + l22 != rp11 - rp21 - rp22:
                continue
            k = krawtchouk_trig(l11 - l22, rp11 - l22, l21 - l22, s, c, exact)
            if k == 0:
                continue
            r = _racah_windowed(
                as_int(w.l31 - l21),
                as_int(w.l31 - rp21),
                alpha,
                rp11 - rp21 - rp22 + w.l33 - 1,
                rp11 - w.l31 - 1,
                rp21 + rp22 - rp11 - w.l31 - 1,
            )
            if r == 0:
                continue
            pref = (
                cal
                * tfac
                * neg_one_pow(2 * l21 + rp21)
                * factorial(l21 - l22)
                / (factorial(l11 - l22) * factorial(l21 - rp11))
            )
            if exact:
                v = pref * r * k
            else:
                v = float(pref * r) * k
            if v != 0:
                entries[(i, j)] = v
    return PatternMatrix(basis, entries, exact)


# --------------------------------------------------------------------------
# the rotation matrices themselves and the bispectral residuals


def _mat3_mul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)]
        for i in range(3)
    ]


def rotation_matrix(angles: EulerAngles):
    """S = Rz(chi) Ry(theta) Rz(phi) as a 3x3 nested list, exact when every
    angle is exact and plain float otherwise (no mixing)."""
    exact = angles.all_exact()

    def trig(angle):
        s, c, _ = sin_cos(angle)
        return (s, c) if exact else (float(s), float(c))

    zero, one = (rational(0), rational(1)) if exact else (0.0, 1.0)

    def rz(angle):
        s, c = trig(angle)
        return [[c, s, zero], [-s, c, zero], [zero, zero, one]]

    def ry(angle):
        s, c = trig(angle)
        return [[c, zero, -s], [zero, one, zero], [s, zero, c]]

    return _mat3_mul(_mat3_mul(rz(angles.chi), ry(angles.theta)), rz(angles.phi))


def transpose3(m):
    return [[m[j][i] for j in range(3)] for i in range(3)]


def _psi_generator(s3, i: int, j: int, basis: IrrepBasis) -> PatternMatrix:
    out = PatternMatrix.zeros(basis, exact=is_exact(s3[0][0]))
    for k in range(1, 4):
        for l in range(1, 4):
            coeff = s3[k - 1][i - 1] * s3[l - 1][j - 1]
            if coeff != 0:
                out = out + generator_matrix(f"e{k}{l}", basis).scaled(coeff)
    return out


def psi_element(s3, name: str, basis: IrrepBasis) -> PatternMatrix:
    """Represented image of H, Y or J under the inner automorphism of the
    rotation with defining matrix s3."""
    p = lambda i, j: _psi_generator(s3, i, j, basis)
    if name == "H":
        return p(1, 1) - p(2, 2)
    if name == "Y":
        return (p(1, 1) + p(2, 2) - p(3, 3).scaled(rational(2))).scaled(
            rational(1, 3)
        )
    if name == "J":
        d = p(1, 1) - p(2, 2)
        return (d @ d + d.scaled(rational(2))).scaled(rational(1, 4)) + p(2, 1) @ p(
            1, 2
        )
    raise ValueError(f"bispectral residuals are defined for H, Y, J; got {name!r}")


def bispectral_residual(
    g: str,
    kind: str,
    angles: EulerAngles,
    basis: IrrepBasis,
    sigma: PatternMatrix = None,
) -> PatternMatrix:
    """Recurrence: sigma Psi_S(g) - g sigma.  Difference: sigma g -
    Psi_{S^t}(g) sigma.  Both contracts are the zero matrix."""
    if sigma is None:
        sigma = sigma_product(angles, basis)
    s3 = rotation_matrix(angles)
    gm = element_matrix(g, basis)
    if kind == "Recurrence":
        return sigma @ psi_element(s3, g, basis) - gm @ sigma
    if kind == "Difference":
        return sigma @ gm - psi_element(transpose3(s3), g, basis) @ sigma
    raise ValueError(f"kind must be Recurrence or Difference, got {kind!r}")


def h_recurrence_explicit_residual(
    angles: EulerAngles, basis: IrrepBasis, sigma: PatternMatrix = None
) -> PatternMatrix:
    """The explicit nine-group recurrence for g = H, assembled term by term
    from the entries of S and the shifted columns of sigma; must equal the
    mechanical residual, i.e. vanish."""
    if sigma is None:
        sigma = sigma_product(angles, basis)
    s3 = rotation_matrix(angles)
    s = lambda i, j: s3[i - 1][j - 1]
    w = basis.weight
    zero = rational(0) if sigma.exact else 0.0

    def sig(i, pattern):
        if pattern is None:
            return zero
        j = basis.index.get(pattern)
        return zero if j is None else sigma.get(i, j)

    entries = {}
    for jcol, p in enumerate(basis):
        l21, l22, l11 = p.l21, p.l22, p.l11
        den = l21 - l22 + 1
        moves = {
            name: shift(p, mv)
            for name, mv in {
                "+11": (1, 0, 0), "-11": (-1, 0, 0),
                "+21": (0, 1, 0), "-21": (0, -1, 0),
                "+22": (0, 0, 1), "-22": (0, 0, -1),
                "+11+21": (1, 1, 0), "+11+22": (1, 0, 1),
                "-11-21": (-1, -1, 0), "-11-22": (-1, 0, -1),
            }.items()
        }
        for irow, rp in enumerate(basis):
            total = (
                (s(1, 1) ** 2 - s(1, 2) ** 2) * l11
                + (s(2, 1) ** 2 - s(2, 2) ** 2) * (l21 + l22 - l11)
                - (s(3, 1) ** 2 - s(3, 2) ** 2) * (l21 + l22)
            ) * sigma.get(irow, jcol)
            total += (
                (s(1, 1) * s(2, 1) - s(1, 2) * s(2, 2))
                * (l21 - l11)
                * (l11 - l22 + 1)
                * sig(irow, moves["+11"])
            )
            total += (s(2, 1) * s(1, 1) - s(2, 2) * s(1, 2)) * sig(irow, moves["-11"])
            total += (s(2, 1) * s(3, 1) - s(2, 2) * s(3, 2)) * (
                (w.l31 - l21) / den * sig(irow, moves["+21"])
                + (w.l31 - l22 + 1) / den * sig(irow, moves["+22"])
            )
            total += (s(3, 1) * s(2, 1) - s(3, 2) * s(2, 2)) * (
                (l21 - w.l32) * (l21 - w.l33 + 1) * (l21 - l11) / den
                * sig(irow, moves["-21"])
                + (l11 - l22 + 1) * (w.l32 - l22 + 1) * (l22 - w.l33) / den
                * sig(irow, moves["-22"])
            )
            total += (s(1, 1) * s(3, 1) - s(1, 2) * s(3, 2)) * (
                (l11 - l22 + 1) * (w.l31 - l21) / den * sig(irow, moves["+11+21"])
                - (l21 - l11) * (w.l31 - l22 + 1) / den * sig(irow, moves["+11+22"])
            )
            total += (s(3, 1) * s(1, 1) - s(3, 2) * s(1, 2)) * (
                (l21 - w.l32) * (l21 - w.l33 + 1) / den * sig(irow, moves["-11-21"])
                - (w.l32 - l22 + 1) * (l22 - w.l33) / den * sig(irow, moves["-11-22"])
            )
            total -= h_eigenvalue(rp) * sigma.get(irow, jcol)
            if total != 0:
                entries[(irow, jcol)] = total
    return PatternMatrix(basis, entries, sigma.exact)
