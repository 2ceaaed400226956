"""Closed-form characteristic coefficients at the three steady states.

Coefficients are listed highest power first after the monic term, i.e.
(a1, a2, a3) is z^3 + a1 z^2 + a2 z + a3. Where the published formulas
contain misprints both the published and the rederived values are kept,
and the numeric characteristic polynomial decides between them.
"""

from typing import NamedTuple

import numpy as np

from dynamics.types import ModelParams
from equilibria.points import endemic_e1, endemic_e2

from .polynomials import PolyCoeffs


def infection_ratio(params: ModelParams) -> float:
    """N beta lambda / (d mu), above 1 iff the infection can invade."""
    return params.big_n * params.beta * params.lam / (params.d * params.mu)


def disease_free_factor(params: ModelParams, zeta, tau: float):
    """z^2 + (mu + a) z + a mu (1 - ratio exp(-z tau)).

    The other factors of the characteristic function at the disease-free
    point are (z + d) and (z + h).
    """
    a, mu = params.a, params.mu
    ratio = infection_ratio(params)
    delayed = ratio * np.exp(-zeta * tau)
    return zeta**2 + (mu + a) * zeta + a * mu * (1.0 - delayed)


def disease_free_crossing(params: ModelParams) -> PolyCoeffs:
    """Polynomial in X = w^2 whose positive roots give imaginary roots
    i w of the disease-free factor."""
    a, mu = params.a, params.mu
    ratio = infection_ratio(params)
    return PolyCoeffs.from_highest_first(
        [1.0, a**2 + mu**2, a**2 * mu**2 * (1.0 - ratio**2)]
    )


class CtlFreeCoefficients(NamedTuple):
    """Characteristic function at the CTL-free endemic point.

    It factors as (z - ctl_root) (z^3 + a z^2 + b z + c - exp(-z tau)
    (g1 z + g2)).
    """

    ctl_root: float
    a: float
    b: float
    c: float
    g1: float
    g2: float

    @property
    def cubic_tau0(self) -> tuple[float, float, float]:
        return (self.a, self.b - self.g1, self.c - self.g2)

    def crossing(self) -> PolyCoeffs:
        a, b, c, g1, g2 = self.a, self.b, self.c, self.g1, self.g2
        return PolyCoeffs.from_highest_first(
            [1.0, a**2 - 2 * b, b**2 - 2 * a * c - g1**2, c**2 - g2**2]
        )


def ctl_free_coefficients(params: ModelParams) -> CtlFreeCoefficients:
    lam, d, beta, a, c, h, big_n, mu = (
        params.lam,
        params.d,
        params.beta,
        params.a,
        params.c,
        params.h_ctl,
        params.big_n,
        params.mu,
    )
    x, y, v, _ = endemic_e1(params).point
    removal = d + beta * v
    return CtlFreeCoefficients(
        ctl_root=(
            beta * big_n * (mu * c * lam - beta * h * a * big_n)
            - mu**2 * c * d
        )
        / (a * big_n**2 * beta**2),
        a=a + removal + mu,
        b=a * mu + (a + mu) * removal,
        c=a * mu * removal,
        g1=beta * a * big_n * x,
        g2=beta * a * big_n * d * x,
    )


def ctl_free_printed_cubic(params: ModelParams) -> tuple[float, float, float]:
    """The published cubic at tau = 0, misprints included.

    Its z coefficient misses a beta v a term and its constant term
    subtracts beta a N d x twice.
    """
    d, beta, a, big_n, mu = (
        params.d,
        params.beta,
        params.a,
        params.big_n,
        params.mu,
    )
    x, _, v, _ = endemic_e1(params).point
    return (
        d + mu + a + beta * v,
        mu * d + a * d + a * mu + mu * beta * v - a * big_n * beta * x,
        a * mu * (d + beta * v) - 2 * beta * a * big_n * d * x,
    )


class EndemicQuasiPolynomial(NamedTuple):
    """Published form of the characteristic function at the full endemic
    point:

        z^4 + k3 z^3 + k2 z^2 + k1 z + k0
        + exp(-z tau) (-g2 z^2 + g1 z + g0).

    `k2` carries the published sign of the p h z term; expanding the
    determinant gives `k2_corrected`. All other coefficients are exact.
    """

    k3: float
    k2: float
    k1: float
    k0: float
    g2: float
    g1: float
    g0: float
    ctl_correction: float
    published_constant_term: float

    @property
    def k2_corrected(self) -> float:
        return self.k2 + self.ctl_correction

    def __call__(self, zeta, tau: float, corrected: bool = False):
        k2 = self.k2_corrected if corrected else self.k2
        quartic = (
            zeta**4 + self.k3 * zeta**3 + k2 * zeta**2 + self.k1 * zeta
        ) + self.k0
        delayed = -self.g2 * zeta**2 + self.g1 * zeta + self.g0
        return quartic + np.exp(-zeta * tau) * delayed

    def crossing_published(self) -> tuple[float, float, float, float]:
        """(s, t, u, v) of w^8 + s w^6 + t w^4 + u w^2 + v as published.

        `u` adds 2 k2 k0 where the squared modulus subtracts it, and `v`
        keeps a different part of g0^2.
        """
        k3, k2, k1, k0 = self.k3, self.k2, self.k1, self.k0
        s = k3**2 - 2 * k2
        t = 2 * k0 + k2**2 - 2 * k1 * k3 - self.g2**2
        u = 2 * k2 * k0 + k1**2 - self.g1**2 - 2 * self.g2 * self.g0
        v = k0**2 + self.published_constant_term
        return s, t, u, v

    def crossing_derived(self) -> tuple[float, float, float, float]:
        """(s, t, u, v) from |quartic(i w)|^2 = |delayed(i w)|^2 with the
        corrected k2."""
        k3, k2, k1, k0 = self.k3, self.k2_corrected, self.k1, self.k0
        s = k3**2 - 2 * k2
        t = 2 * k0 + k2**2 - 2 * k1 * k3 - self.g2**2
        u = k1**2 - 2 * k2 * k0 - self.g1**2 - 2 * self.g2 * self.g0
        v = k0**2 - self.g0**2
        return s, t, u, v


def endemic_quasi_polynomial(params: ModelParams) -> EndemicQuasiPolynomial:
    """Published coefficients with the full endemic point substituted."""
    d, beta, a, p, c, h, big_n, mu = (
        params.d,
        params.beta,
        params.a,
        params.p,
        params.c,
        params.h_ctl,
        params.big_n,
        params.mu,
    )
    x, y, v, z = endemic_e2(params).point
    infection = beta * a * big_n
    k3 = mu + a + d + p * z + beta * v
    k2 = (
        a * mu
        + mu * d
        + a * d
        + p * mu * z
        + p * d * z
        - p * h * z
        + beta * mu * v
        + a * beta * v
        + p * beta * z * v
    )
    k1 = (
        a * d * mu
        + p * mu * h * z
        + p * h * d * z
        + p * mu * d * z
        + a * mu * beta * v
        + p * h * beta * z * v
        + p * mu * beta * z * v
    )
    k0 = (
        p * mu * h * d * z
        + p * mu * h * beta * z * v
        - a * big_n * p * c * beta * x * z * y**2
    )
    g1 = c * infection * y * x**2 - h * infection * x - infection * d * x
    g0 = c * infection * d * y * x**2 - h * d * infection * x
    return EndemicQuasiPolynomial(
        k3=k3,
        k2=k2,
        k1=k1,
        k0=k0,
        g2=infection * x,
        g1=g1,
        g0=g0,
        ctl_correction=2 * p * h * z,
        published_constant_term=(
            2 * c * infection**2 * d**2 * h * y * x**3
            - infection**2 * h**2 * d**2 * x**2
        ),
    )


def endemic_printed_quartic(
    params: ModelParams,
) -> tuple[float, float, float, float]:
    """The published tau = 0 quartic, whose constant term is written with
    h where the quasi-polynomial has c x y (equal at the steady state)."""
    d, beta, a, p, h, big_n, mu = (
        params.d,
        params.beta,
        params.a,
        params.p,
        params.h_ctl,
        params.big_n,
        params.mu,
    )
    x, y, v, z = endemic_e2(params).point
    quasi = endemic_quasi_polynomial(params)
    return (
        quasi.k3,
        quasi.k2 - beta * a * big_n * x,
        quasi.k1 - beta * a * big_n * d * x,
        p * mu * h * d * z
        + p * mu * h * beta * z * v
        - a * big_n * beta * p * h * y * z,
    )
