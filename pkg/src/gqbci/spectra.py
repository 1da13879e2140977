"""Spectra of bi-Cayley graphs of Q_4n, by two independent routes.

``spectrum_via_reps`` multiplies the per-irrep factors
``det(x^2 I - rho(S) rho(S^-1))^deg(rho)`` over the irreducible
representations of Q_4n. ``charpoly_exact`` computes the characteristic
polynomial of the adjacency matrix over the integers. The integer
polynomial is what spectra are compared by; float eigenvalues are for
display only.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from .bicayley import BiCayleyGraph, ConnectionSet, build
from .exact import bareiss_det_batch, interpolate, power_sums, root_multiplicity, to_int_poly
from .group import GQ, Elem, InvalidParameter, TooLarge

COEFF_TOL = 1e-6


class UnsupportedRoute(ValueError):
    pass


class ConsistencyError(ArithmeticError):
    pass


@dataclass(frozen=True, order=True)
class Irrep:
    """One row of the irreducible representation table of Q_4n.

    ``kind`` is ``"psi"`` (index 1..4), ``"phi"`` (odd j, 1 <= j <= n-1) or
    ``"eta"`` (1 <= h <= (n-1)/2 for odd n, (n-2)/2 for even n).
    """
    n: int
    kind: str
    index: int

    @property
    def degree(self) -> int:
        return 1 if self.kind == "psi" else 2

    @property
    def name(self) -> str:
        sym = {"psi": "psi", "phi": "phi", "eta": "eta"}[self.kind]
        return f"{sym}{self.index}"

    def validate(self) -> None:
        n = self.n
        ok = {
            "psi": 1 <= self.index <= 4,
            "phi": 1 <= self.index <= n - 1 and self.index % 2 == 1,
            "eta": 1 <= self.index <= _eta_max(n),
        }.get(self.kind, False)
        if not ok:
            raise InvalidParameter(f"{self.name} is not an irrep of Q_{4 * n}")


def _eta_max(n: int) -> int:
    if n % 2 == 1:
        return (n - 1) // 2
    return (n - 2) // 2


def irreps(n: int) -> list[Irrep]:
    out = [Irrep(n, "psi", i) for i in range(1, 5)]
    out += [Irrep(n, "phi", j) for j in range(1, n, 2)]
    out += [Irrep(n, "eta", h) for h in range(1, _eta_max(n) + 1)]
    return out


def _entries(d: Irrep, x: Elem) -> list[list[tuple[complex, int]]]:
    """Table entry as ``coef * omega^exp`` pairs (coef in {0, +-1, +-i})."""
    n, k = d.n, x.k
    sign = -1 if k % 2 else 1
    if d.kind == "psi":
        if x.eps == 0:
            c = 1 if d.index <= 2 else sign
        elif d.index == 1:
            c = 1
        elif d.index == 2:
            c = -1
        else:
            # odd n: (-1)^k i, (-1)^(k+1) i; even n: (-1)^k, (-1)^(k+1)
            unit = 1j if n % 2 else 1
            c = sign * unit if d.index == 3 else -sign * unit
        return [[(c, 0)]]
    e = k * d.index if d.kind == "phi" else 2 * k * d.index
    if x.eps == 0:
        return [[(1, e), (0, 0)], [(0, 0), (1, -e)]]
    lower = -1 if d.kind == "phi" else 1
    return [[(0, 0), (1, -e)], [(lower, e), (0, 0)]]


def irrep_value(d: Irrep, x: Elem) -> np.ndarray:
    """The matrix of ``x`` under ``d``, in double precision."""
    d.validate()
    w = complex(math.cos(math.pi / d.n), math.sin(math.pi / d.n))
    ent = _entries(d, x)
    return np.array([[c * w ** e if c else 0 for c, e in row] for row in ent], dtype=complex)


def _irrep_mp(d: Irrep, x: Elem) -> mpmath.matrix:
    ent = _entries(d, x)
    return mpmath.matrix([[mpmath.mpc(c) * mpmath.expjpi(mpmath.mpf(e) / d.n) if c else mpmath.mpc(0)
                           for c, e in row] for row in ent])


def _rep_sum_mp(d: Irrep, elems: Sequence[Elem]) -> mpmath.matrix:
    acc = mpmath.matrix(d.degree, d.degree)
    for s in elems:
        acc += _irrep_mp(d, s)
    return acc


def _require_full(S: ConnectionSet) -> GQ:
    if not S.ambient.is_whole:
        raise UnsupportedRoute("the representation tables are for Q_4n itself; "
                               "use charpoly_exact for a proper subgroup")
    return S.group


def rep_sum(d: Irrep, S: ConnectionSet) -> np.ndarray:
    """rho(S), the sum of ``irrep_value`` over S."""
    g = _require_full(S)
    if d.n != g.n:
        raise InvalidParameter("irrep and connection set come from different groups")
    return sum((irrep_value(d, s) for s in S.elements), np.zeros((d.degree, d.degree), complex))


def _factor_mp(d: Irrep, S: ConnectionSet) -> tuple[list, mpmath.matrix]:
    g = S.group
    m = _rep_sum_mp(d, S.elements) * _rep_sum_mp(d, [g.inv(s) for s in S.elements])
    if d.degree == 1:
        return [-m[0, 0], 0, 1], m
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return [det, 0, -tr, 0, 1], m


def factor_charpoly(d: Irrep, S: ConnectionSet, dps: int = 30) -> list[complex]:
    """Coefficients (constant first) of det(x^2 I - rho(S) rho(S^-1))."""
    _require_full(S)
    d.validate()
    with mpmath.workdps(dps):
        coeffs, _ = _factor_mp(d, S)
        return [complex(c) for c in coeffs]


@dataclass(frozen=True)
class SpectrumSummary:
    charpoly: tuple[int, ...]  # constant term first
    eigenvalues: tuple[tuple[float, int], ...]
    source: str  # "reps" | "exact"
    max_residue: float = 0.0

    @property
    def degree(self) -> int:
        return len(self.charpoly) - 1

    def multiplicity(self, value: int) -> int:
        """Exact multiplicity of an integer eigenvalue, from the integer polynomial."""
        return root_multiplicity(self.charpoly, value)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eigenvalue", "multiplicity"])
        for v, m in self.eigenvalues:
            w.writerow([f"{v:.12f}", m])
        return buf.getvalue()

    def charpoly_json(self) -> str:
        return json.dumps([str(c) for c in self.charpoly])


def cluster(values: Sequence[float], tol: float) -> tuple[tuple[float, int], ...]:
    vals = sorted(float(v) for v in values)
    groups: list[list[float]] = []
    for v in vals:
        if groups and v - groups[-1][-1] <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    out = []
    for grp in groups:
        c = sum(grp) / len(grp)
        if abs(c) < tol:
            c = 0.0
        out.append((c, len(grp)))
    return tuple(out)


def _cluster_tol(S: ConnectionSet) -> float:
    return 1e-9 * (1 + len(S))


def _coeff_bound_digits(factors: list[tuple[list, int]]) -> int:
    logb = 0.0
    for coeffs, mult in factors:
        logb += mult * math.log10(1 + sum(abs(complex(c)) for c in coeffs))
    return int(logb) + 1


def spectrum_via_reps(S: ConnectionSet, tol: float = COEFF_TOL) -> SpectrumSummary:
    """Characteristic polynomial as the product of the per-irrep factors."""
    g = _require_full(S)
    reps = irreps(g.n)
    with mpmath.workdps(20):
        rough = [(_factor_mp(d, S)[0], d.degree) for d in reps]
    dps = 25 + _coeff_bound_digits(rough)
    eig: list[float] = []
    with mpmath.workdps(dps):
        poly = [mpmath.mpc(1)]
        for d in reps:
            coeffs, m = _factor_mp(d, S)
            for _ in range(d.degree):
                poly = _mp_poly_mul(poly, coeffs)
            # at working precision; sqrt would magnify double rounding near 0
            mu = mpmath.eighe(m, eigvals_only=True)
            for val in mu:
                r = float(mpmath.sqrt(max(mpmath.re(val), 0)))
                eig += [r, -r] * d.degree
        ints = []
        worst = 0.0
        for c in poly:
            re_, im_ = mpmath.re(c), mpmath.im(c)
            nearest = int(mpmath.nint(re_))
            res = float(max(abs(im_), abs(re_ - nearest)))
            worst = max(worst, res)
            if res > tol:
                raise ConsistencyError(f"coefficient {c} is not within {tol} of an integer")
            ints.append(nearest)
    if len(ints) != 2 * g.order + 1:
        raise ConsistencyError("factor product has the wrong degree")
    return SpectrumSummary(tuple(ints), cluster(eig, _cluster_tol(S)), "reps", worst)


def _mp_poly_mul(p: list, q: list) -> list:
    out = [mpmath.mpc(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return out


def charpoly_int(adj: np.ndarray) -> list[int]:
    """Integer characteristic polynomial det(tI - A) of an integer matrix.

    Evaluates the determinant at N+1 integers of absolute value above the
    largest absolute row sum (so every leading minor is nonzero and the
    elimination needs no pivoting) and interpolates exactly.
    """
    a = np.asarray(adj, dtype=np.int64)
    n = a.shape[0]
    if n == 0:
        return [1]
    bound = int(np.abs(a).sum(axis=1).max())
    pts: list[int] = []
    t = bound + 1
    while len(pts) < n + 1:
        pts.append(t)
        if len(pts) < n + 1:
            pts.append(-t)
        t += 1
    eye = np.eye(n, dtype=np.int64)
    mats = np.stack([p * eye - a for p in pts])
    vals = bareiss_det_batch(mats)
    coeffs = to_int_poly(interpolate(pts, vals))
    if len(coeffs) != n + 1 or coeffs[-1] != 1:
        raise ConsistencyError("interpolated polynomial is not monic of full degree")
    return coeffs


def bipartite_charpoly(b: np.ndarray) -> list[int]:
    """det(tI - [[0, B], [B^T, 0]]) for square B, via det(t^2 I - B^T B).

    Half the matrix size and half the evaluation points of ``charpoly_int``.
    """
    b = np.asarray(b, dtype=np.int64)
    half = charpoly_int(b.T @ b)
    out = [0] * (2 * len(half) - 1)
    out[::2] = half
    return out


def charpoly_exact(graph: BiCayleyGraph, guard: int = 200) -> SpectrumSummary:
    """Exact characteristic polynomial of the full adjacency matrix."""
    nv = graph.num_vertices
    if nv > guard:
        raise TooLarge(f"exact characteristic polynomial limited to {guard} vertices, got {nv}")
    coeffs = bipartite_charpoly(graph.biadjacency)
    ev = np.linalg.eigvalsh(graph.adjacency.astype(float))
    clusters = cluster(ev, _cluster_tol(graph.S))
    _crosscheck(coeffs, clusters)
    return SpectrumSummary(tuple(coeffs), clusters, "exact", 0.0)


def _crosscheck(coeffs: Sequence[int], clusters: Sequence[tuple[float, int]]) -> None:
    deg = len(coeffs) - 1
    if sum(m for _, m in clusters) != deg:
        raise ConsistencyError("eigenvalue multiplicities do not sum to the degree")
    p1, p2 = power_sums(coeffs, 2)
    s1 = sum(v * m for v, m in clusters)
    s2 = sum(v * v * m for v, m in clusters)
    if abs(s1 - p1) > 1e-6 * (1 + abs(p1)) or abs(s2 - p2) > 1e-6 * (1 + abs(p2)):
        raise ConsistencyError("eigenvalues disagree with the characteristic polynomial")
    for v, m in clusters:
        r = round(v)
        if abs(v - r) < 1e-6 and root_multiplicity(coeffs, r) != m:
            raise ConsistencyError(f"multiplicity of eigenvalue {r} disagrees with the polynomial")


def spectrum(S: ConnectionSet, route: str = "exact") -> SpectrumSummary:
    if route == "reps":
        return spectrum_via_reps(S)
    if route == "exact":
        return charpoly_exact(build(S))
    raise ValueError(f"unknown route {route!r}")
