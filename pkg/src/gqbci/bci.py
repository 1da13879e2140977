"""BCI-subset, m-BCI and FIF checks for Q_4n at desk scale.

A sweep over all connection sets of one size works on two partitions:

* orbits of the action ``S -> g S^alpha`` (sets in one orbit are BCI-equivalent),
* isomorphism classes of the graphs BCay(G, S).

A set S is a BCI-subset exactly when its isomorphism class is a single
orbit. Orbits are compared by their integer characteristic polynomials
first and by the backtracking search only when those agree.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .bicayley import ConnectionSet, build, normalized_sets
from .group import GQ, IDENTITY, Elem, InvalidParameter, Subgroup, TooLarge, subgroup_of
from .iso import bcay_equivalent, cached_charpoly, graphs_isomorphic, reduced_iso_check

DEFAULT_MAX_N = 7
MAX_M = 3


class OutOfScope(InvalidParameter):
    pass


@dataclass
class Witness:
    S: ConnectionSet
    T: ConnectionSet
    mapping: tuple[int, ...]
    equivalence_search_exhausted: bool

    def to_json(self) -> dict:
        r = self.S.group.render
        return {
            "S": [r(x) for x in self.S.elements],
            "T": [r(x) for x in self.T.elements],
            "iso": {"verdict": "isomorphic", "mapping": list(self.mapping)},
            "equivalence_search_exhausted": self.equivalence_search_exhausted,
        }


@dataclass
class BciReport:
    n: int
    m: int
    holds: bool
    witnesses: list[Witness] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    ambient_order: Optional[int] = None

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    def to_json(self, timing: bool = True) -> dict:
        stats = dict(self.stats)
        if not timing:
            stats.pop("seconds", None)
        out = {"n": self.n, "m": self.m, "verdict": self.verdict,
               "witnesses": [w.to_json() for w in self.witnesses], "stats": stats}
        if self.ambient_order is not None and self.ambient_order != 4 * self.n:
            out["ambient_order"] = self.ambient_order
        return out


@dataclass
class FifReport:
    n: int
    holds: bool
    witness: Optional[tuple[Elem, Elem]] = None

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    def to_json(self) -> dict:
        g = GQ(self.n)
        out = {"n": self.n, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = [g.render(x) for x in self.witness]
        return out


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # smaller index stays root so roots are lexicographic minima
            if rj < ri:
                ri, rj = rj, ri
            self.parent[rj] = ri


def _charpoly_job(S: ConnectionSet) -> tuple[int, ...]:
    return cached_charpoly(S)


class Sweep:
    """All connection sets of one size, split into orbits and isomorphism classes."""

    def __init__(self, group: GQ | Subgroup, size: int, *, normalized: bool = True, jobs: int = 1,
                 max_nodes: int | None = None):
        amb = subgroup_of(group)
        self.ambient = amb
        self.size = size
        if normalized:
            self.sets = normalized_sets(amb, size)
        else:
            self.sets = [ConnectionSet(amb, c) for c in itertools.combinations(amb.carrier, size)]
        self.normalized = normalized
        self.stats = {"sets": len(self.sets), "orbits": 0, "pairs": 0, "spectral_rejects": 0, "iso_calls": 0}
        self._iso_kw = {} if max_nodes is None else {"max_nodes": max_nodes}
        self._orbits()
        self._classes(jobs)

    def _orbits(self) -> None:
        amb = self.ambient
        pos = {S.elements: i for i, S in enumerate(self.sets)}
        uf = _UnionFind(len(self.sets))
        auts = amb.automorphisms()
        for i, S in enumerate(self.sets):
            for alpha in auts:
                img = [amb.apply(alpha, s) for s in S.elements]
                shifts = [amb.inv(x) for x in img] if self.normalized else amb.carrier
                for g in shifts:
                    key = tuple(sorted(amb.mul(g, x) for x in img))
                    uf.union(i, pos[key])
        self.orbit_of = [uf.find(i) for i in range(len(self.sets))]
        self.orbit_reps = sorted(set(self.orbit_of))
        self.stats["orbits"] = len(self.orbit_reps)

    def _classes(self, jobs: int) -> None:
        reps = self.orbit_reps
        rep_sets = [self.sets[r] for r in reps]
        if jobs > 1 and len(rep_sets) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                polys = list(ex.map(_charpoly_job, rep_sets))
        else:
            polys = [cached_charpoly(S) for S in rep_sets]
        self.charpoly = dict(zip(reps, polys))
        uf = _UnionFind(len(self.sets))
        for a, b in itertools.combinations(reps, 2):
            self.stats["pairs"] += 1
            if uf.find(a) == uf.find(b):
                continue
            if self.charpoly[a] != self.charpoly[b]:
                self.stats["spectral_rejects"] += 1
                continue
            self.stats["iso_calls"] += 1
            res = graphs_isomorphic(build(self.sets[a]), build(self.sets[b]), spectral=False, **self._iso_kw)
            if res.isomorphic:
                uf.union(a, b)
        self.class_of = [uf.find(o) for o in self.orbit_of]

    def failures(self):
        """Lexicographic (S, T) pairs with isomorphic graphs but different orbits."""
        for i, S in enumerate(self.sets):
            for j, T in enumerate(self.sets):
                if self.class_of[i] == self.class_of[j] and self.orbit_of[i] != self.orbit_of[j]:
                    yield S, T

    def first_failure(self) -> Optional[tuple[ConnectionSet, ConnectionSet]]:
        return next(self.failures(), None)

    def failure_for(self, S: ConnectionSet) -> Optional[ConnectionSet]:
        i = self.sets.index(S)
        for j, T in enumerate(self.sets):
            if self.class_of[i] == self.class_of[j] and self.orbit_of[i] != self.orbit_of[j]:
                return T
        return None


def _check_guard(amb: Subgroup, size: int, max_n: int) -> None:
    if size > MAX_M:
        raise OutOfScope(f"connection sets larger than {MAX_M} are out of scope")
    if amb.order > 4 * max_n:
        raise TooLarge(f"BCI sweeps limited to groups of order <= {4 * max_n} (n <= {max_n})")


def make_witness(S: ConnectionSet, T: ConnectionSet) -> Witness:
    """Re-verify a failure pair: find an explicit isomorphism and exhaust (g, alpha)."""
    res = graphs_isomorphic(build(S), build(T))
    if not res.isomorphic:
        raise AssertionError(f"witness graphs are not isomorphic: {S!r} vs {T!r}")
    exhausted = bcay_equivalent(S, T) is None
    if not exhausted:
        raise AssertionError("witness pair is BCI-equivalent")
    return Witness(S, T, res.mapping, exhausted)


def is_bci_subset(S: ConnectionSet, *, max_n: int = DEFAULT_MAX_N) -> tuple[bool, Optional[ConnectionSet]]:
    """``(True, None)`` or ``(False, T)`` with T the lexicographically first
    normalized set whose graph is isomorphic but T != g S^alpha."""
    if not S.is_normalized():
        S = S.normalized()
    _check_guard(S.ambient, len(S), max_n)
    sweep = Sweep(S.ambient, len(S))
    T = sweep.failure_for(S)
    return T is None, T


def is_m_bci(group: GQ | Subgroup | int, m: int, *, max_n: int = DEFAULT_MAX_N, jobs: int = 1,
             max_nodes: int | None = None) -> BciReport:
    if isinstance(group, int):
        group = GQ(group)
    amb = subgroup_of(group)
    if not 1 <= m <= MAX_M:
        raise OutOfScope(f"m must be between 1 and {MAX_M}, got {m}")
    _check_guard(amb, m, max_n)
    t0 = time.perf_counter()
    report = BciReport(amb.group.n, m, True, ambient_order=amb.order)
    totals = {"sets": 0, "orbits": 0, "pairs": 0, "spectral_rejects": 0, "iso_calls": 0}
    for k in range(1, m + 1):
        sweep = Sweep(amb, k, jobs=jobs, max_nodes=max_nodes)
        for key in totals:
            totals[key] += sweep.stats[key]
        fail = sweep.first_failure()
        if fail is not None:
            report.holds = False
            report.witnesses.append(make_witness(*fail))
    totals["spectral_filter_hit_rate"] = (
        round(totals["spectral_rejects"] / totals["pairs"], 6) if totals["pairs"] else 0.0)
    totals["seconds"] = round(time.perf_counter() - t0, 3)
    report.stats = totals
    return report


def is_fif(group: GQ | int) -> FifReport:
    g = GQ(group) if isinstance(group, int) else group
    for x, y in itertools.combinations(g.elements, 2):
        if g.element_order(x) != g.element_order(y):
            continue
        verdict, _ = g.are_fused(x, y)
        if verdict == "neither":
            return FifReport(g.n, False, (x, y))
    return FifReport(g.n, True)


def crosscheck_fif_2bci(n: int, **kw) -> bool:
    fif = is_fif(n)
    bci = is_m_bci(n, 2, **kw)
    return fif.holds == bci.holds


def predicted_3bci(n: int) -> bool:
    return n == 2 or n % 2 == 1


@dataclass
class PairCheck:
    i: int
    j: int
    reduced_isomorphic: bool
    ambient_isomorphic: bool
    reduced_certificate: Optional[str]
    ambient_certificate: Optional[str]

    @property
    def ok(self) -> bool:
        return not self.reduced_isomorphic and not self.ambient_isomorphic

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "ok": self.ok,
                "reduced": self.reduced_certificate or "isomorphic",
                "ambient": self.ambient_certificate or "isomorphic"}


def verify_lemma_3_3(n: int) -> list[PairCheck]:
    """Check every pair S = {1, a^i, b}, T = {1, a^j, b} with 2|a^i| = |a^j|.

    ``i = 0`` is skipped because S would have only two elements.
    """
    if n % 2 == 0 or n < 3:
        raise InvalidParameter(f"needs odd n >= 3, got n={n}")
    g = GQ(n)
    out = []
    for i in range(1, g.m):
        for j in range(1, g.m):
            if 2 * g.element_order(g.a(i)) != g.element_order(g.a(j)):
                continue
            S = ConnectionSet(g.whole(), (IDENTITY, g.a(i), g.ba(0)))
            T = ConnectionSet(g.whole(), (IDENTITY, g.a(j), g.ba(0)))
            red = graphs_isomorphic(build(S.restricted()), build(T.restricted()))
            amb = graphs_isomorphic(build(S), build(T))
            out.append(PairCheck(i, j, red.isomorphic, amb.isomorphic, red.certificate, amb.certificate))
    return out


@dataclass
class ParityRow:
    n: int
    predicted: bool
    bci2: Optional[BciReport] = None
    bci3: Optional[BciReport] = None
    error: Optional[str] = None

    @property
    def agrees(self) -> bool:
        return (self.error is None
                and self.bci2.holds == self.bci3.holds == self.predicted)

    def to_json(self, timing: bool = True) -> dict:
        out = {"n": self.n, "predicted": "holds" if self.predicted else "fails", "agrees": self.agrees}
        if self.error is not None:
            out["error"] = self.error
        else:
            out["bci2"] = self.bci2.to_json(timing)
            out["bci3"] = self.bci3.to_json(timing)
        return out


def verify_theorem_1(n_values, *, max_n: int = DEFAULT_MAX_N, jobs: int = 1) -> list[ParityRow]:
    """2-BCI and 3-BCI verdicts per n against 'n = 2 or n odd'; guard errors
    are recorded per row and the sweep continues."""
    rows = []
    for n in n_values:
        row = ParityRow(n, predicted_3bci(n))
        try:
            row.bci2 = is_m_bci(n, 2, max_n=max_n, jobs=jobs)
            row.bci3 = is_m_bci(n, 3, max_n=max_n, jobs=jobs)
        except TooLarge as exc:
            row.error = str(exc)
        rows.append(row)
    return rows


def reduced_verdict_agrees(S: ConnectionSet, T: ConnectionSet) -> bool:
    """Reduced-graph verdict equals the ambient-graph verdict."""
    return reduced_iso_check(S, T) == graphs_isomorphic(build(S), build(T)).isomorphic
