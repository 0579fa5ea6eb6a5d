"""Mirror side: superpotential, bounded domain, and numeric critical points.

The superpotential is the d-term Laurent object sum_i e^{lambda_i} z^{v_i}.
Critical points of its logarithmic derivatives are found by multistart
Newton iteration in logarithmic coordinates u (z = exp(u)), which keeps
iterates off the coordinate hyperplanes and makes deduplication well defined
modulo 2*pi in each imaginary part.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSpectrum,
    IncompleteRootSet,
    ZeroCoordinate,
)
from .disc_algebra import QLaurent
from .syz_transform import ZLaurent


@dataclass(frozen=True)
class Superpotential:
    """The mirror Laurent function together with its source data."""

    data: object
    terms: ZLaurent

    def coefficients(self, q_numeric):
        """Numeric coefficient of each monomial term at positive q."""
        qv = [float(x) for x in q_numeric]
        return [
            math.prod(q ** e for q, e in zip(qv, self.data.lambda_exponents[i]))
            for i in range(self.data.d)
        ]

    def numeric(self, q_numeric):
        """Callable z -> W(z) at fixed numeric q."""
        coeffs = self.coefficients(q_numeric)
        rays = self.data.rays

        def w(z):
            total = 0 + 0j
            for c, v in zip(coeffs, rays):
                mono = 1 + 0j
                for zj, vj in zip(z, v):
                    mono *= zj ** vj
                total += c * mono
            return total

        return w


def superpotential(data) -> Superpotential:
    zl = ZLaurent(
        {
            data.rays[i]: QLaurent.monomial(data.lambda_exponents[i])
            for i in range(data.d)
        }
    )
    return Superpotential(data=data, terms=zl)


def jacobian_generators(w: Superpotential):
    """The n logarithmic derivatives z_j dW/dz_j = sum_i v_i^j e^{lambda_i} z^{v_i}."""
    data = w.data
    gens = []
    for j in range(data.n):
        gens.append(
            ZLaurent(
                [
                    (data.rays[i], QLaurent.monomial(data.lambda_exponents[i], data.rays[i][j]))
                    for i in range(data.d)
                    if data.rays[i][j]
                ]
            )
        )
    return gens


def domain_membership(data, z, q_numeric):
    """Whether |e^{lambda_i} z^{v_i}| < 1 for every i at numeric q."""
    zv = [complex(c) for c in z]
    if any(c == 0 for c in zv):
        raise ZeroCoordinate("mirror coordinates must be nonzero")
    coeffs = superpotential(data).coefficients(q_numeric)
    for i in range(data.d):
        mono = coeffs[i]
        for zj, vj in zip(zv, data.rays[i]):
            mono *= abs(zj) ** vj
        if not mono < 1.0:
            return False
    return True


@dataclass
class SolverConfig:
    expected_count: int
    starts: int | None = None
    max_iter: int = 80
    tol: float = 1e-12
    dedup_tol: float = 1e-6
    seed: int = 0

    def start_count(self):
        return self.starts if self.starts is not None else 50 * self.expected_count


@dataclass
class CriticalPointSet:
    points: tuple              # tuples of complex mirror coordinates
    values: tuple              # W at each point
    monomial_values: tuple     # per point, the d complex term values
    residuals: tuple           # max |z_j dW/dz_j| at each point
    failed_starts: int = 0
    log_points: tuple = field(default=(), repr=False)

    def __len__(self):
        return len(self.points)


def _wrapped_distance(u1, u2):
    dre = np.max(np.abs(u1.real - u2.real))
    dim_raw = np.abs(u1.imag - u2.imag) % (2 * np.pi)
    dim = np.max(np.minimum(dim_raw, 2 * np.pi - dim_raw))
    return max(dre, dim)


def critical_points(w: Superpotential, q_numeric, config: SolverConfig):
    """Multistart Newton search for all roots of z_j dW/dz_j = 0.

    Deterministic for a fixed seed: starts are drawn in order and roots are
    deduplicated and sorted canonically.  Raises IncompleteRootSet unless
    exactly ``expected_count`` distinct roots are found.
    """
    data = w.data
    n, d = data.n, data.d
    rays = np.array(data.rays, dtype=float)          # (d, n)
    coeffs = np.array(w.coefficients(q_numeric))     # (d,)
    rng = np.random.default_rng(config.seed)

    roots = []
    failed = 0
    for _ in range(config.start_count()):
        u = rng.uniform(-3.0, 3.0, n) + 1j * rng.uniform(0.0, 2 * np.pi, n)
        ok = False
        for _ in range(config.max_iter):
            expo = rays @ u
            if np.max(expo.real) > 50.0:
                break
            t = coeffs * np.exp(expo)                # (d,)
            f = rays.T @ t                           # (n,)
            if not np.all(np.isfinite(f)):
                break
            if np.max(np.abs(f)) < config.tol:
                ok = True
                break
            jac = rays.T @ (t[:, None] * rays)       # (n, n)
            try:
                step = np.linalg.solve(jac, -f)
            except np.linalg.LinAlgError:
                break
            u = u + step
        if not ok:
            failed += 1
            continue
        u = u.real + 1j * (u.imag % (2 * np.pi))
        if all(_wrapped_distance(u, r) >= config.dedup_tol for r in roots):
            roots.append(u)

    if len(roots) != config.expected_count:
        raise IncompleteRootSet(
            f"found {len(roots)} distinct critical points, expected "
            f"{config.expected_count} ({failed} of {config.start_count()} "
            f"starts failed to converge)"
        )

    records = []
    for u in roots:
        t = coeffs * np.exp(rays @ u)
        z = tuple(complex(x) for x in np.exp(u))
        value = complex(np.sum(t))
        resid = float(np.max(np.abs(rays.T @ t)))
        records.append((value, z, tuple(complex(x) for x in t), resid, u))
    records.sort(
        key=lambda rec: (rec[0].real, rec[0].imag)
        + tuple(x for zj in rec[1] for x in (zj.real, zj.imag))
    )

    for a in range(len(roots)):
        for b in range(a + 1, len(roots)):
            if _wrapped_distance(records[a][4], records[b][4]) < 10 * config.dedup_tol:
                warnings.warn(
                    "two critical points nearly coincide; spectra may be degenerate",
                    DegenerateSpectrum,
                )

    return CriticalPointSet(
        points=tuple(rec[1] for rec in records),
        values=tuple(rec[0] for rec in records),
        monomial_values=tuple(rec[2] for rec in records),
        residuals=tuple(rec[3] for rec in records),
        failed_starts=failed,
        log_points=tuple(rec[4] for rec in records),
    )


def evaluate_at_critical(phi: ZLaurent, cps: CriticalPointSet, q_numeric):
    """Values of a Laurent object at every critical point."""
    qv = [float(x) for x in q_numeric]
    out = []
    for z in cps.points:
        if any(zj == 0 for zj in z):
            raise ZeroCoordinate("critical point has a vanishing coordinate")
        out.append(phi.evaluate(z, qv))
    return out
