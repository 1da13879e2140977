"""Generalized quaternion groups Q_4n = <a, b | a^2n = 1, b^2 = a^n, a^b = a^-1>.

Elements are stored as ``Elem(eps, k)`` meaning ``b^eps * a^k`` with ``k``
reduced mod 2n. Canonical element order is ``(eps, k)`` lexicographic, so
``1, a, ..., a^(2n-1), b, b*a, ..., b*a^(2n-1)``.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence


class InvalidParameter(ValueError):
    pass


class TooLarge(RuntimeError):
    """A guard bound on an exhaustive search was exceeded."""


class Elem(NamedTuple):
    eps: int
    k: int


IDENTITY = Elem(0, 0)


def _phi(m: int) -> int:
    return sum(1 for u in range(1, m + 1) if math.gcd(u, m) == 1)


@dataclass(frozen=True)
class Automorphism:
    """Either ``sigma_{r,s}`` (``table is None``) or an explicit image table.

    The table lists images of the group elements in canonical order.
    """
    r: int | None = None
    s: int | None = None
    table: tuple[Elem, ...] | None = None

    @property
    def is_sigma(self) -> bool:
        return self.table is None

    def __repr__(self) -> str:
        if self.is_sigma:
            return f"sigma({self.r},{self.s})"
        return f"Automorphism(table={list(self.table)!r})"


class GQ:
    """The group Q_4n for a fixed ``n >= 2``."""

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise InvalidParameter(f"n must be an integer >= 2, got {n!r}")
        self.n = n
        self.m = 2 * n  # order of <a>

    def __repr__(self) -> str:
        return f"GQ({self.n})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GQ) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("GQ", self.n))

    @property
    def order(self) -> int:
        return 4 * self.n

    @cached_property
    def elements(self) -> tuple[Elem, ...]:
        return tuple(Elem(e, k) for e in (0, 1) for k in range(self.m))

    def index(self, x: Elem) -> int:
        return x.eps * self.m + x.k

    # -- arithmetic ---------------------------------------------------------

    def elem(self, eps: int, k: int) -> Elem:
        if eps not in (0, 1):
            raise InvalidParameter(f"eps must be 0 or 1, got {eps!r}")
        return Elem(eps, k % self.m)

    def a(self, k: int = 1) -> Elem:
        return Elem(0, k % self.m)

    def ba(self, k: int = 0) -> Elem:
        return Elem(1, k % self.m)

    def mul(self, x: Elem, y: Elem) -> Elem:
        # (b^e1 a^k1)(b^e2 a^k2) = b^(e1+e2) a^((-1)^e2 k1 + k2), b^2 = a^n
        k1 = -x.k if y.eps else x.k
        extra = self.n if (x.eps and y.eps) else 0
        return Elem(x.eps ^ y.eps, (k1 + y.k + extra) % self.m)

    def inv(self, x: Elem) -> Elem:
        if x.eps == 0:
            return Elem(0, -x.k % self.m)
        # (b a^k)^-1 = a^-k b^-1 = a^-k b a^n = b a^(k+n)
        return Elem(1, (x.k + self.n) % self.m)

    def power(self, x: Elem, t: int) -> Elem:
        if t < 0:
            x, t = self.inv(x), -t
        out = IDENTITY
        for _ in range(t):
            out = self.mul(out, x)
        return out

    def element_order(self, x: Elem) -> int:
        if x.eps == 1:
            return 4
        return self.m // math.gcd(x.k, self.m)

    def prod(self, xs: Iterable[Elem]) -> Elem:
        out = IDENTITY
        for x in xs:
            out = self.mul(out, x)
        return out

    def mul_table(self) -> list[list[int]]:
        """Cayley table on canonical indices; a debugging oracle only."""
        els = self.elements
        return [[self.index(self.mul(x, y)) for y in els] for x in els]

    # -- rendering / parsing ------------------------------------------------

    def render(self, x: Elem) -> str:
        if x.eps == 0:
            if x.k == 0:
                return "1"
            return "a" if x.k == 1 else f"a^{x.k}"
        if x.k == 0:
            return "b"
        return "b*a" if x.k == 1 else f"b*a^{x.k}"

    def parse(self, text: str) -> Elem:
        """Parse ``1``, ``a``, ``a^k``, ``b``, ``b*a``, ``b*a^k`` (also ``ba^k``)."""
        tok = "".join(text.split())
        if tok == "1":
            return IDENTITY
        mt = re.fullmatch(r"(b)?(\*)?(a(?:\^(-?\d+))?)?", tok)
        if not tok or mt is None or (mt.group(1) is None and mt.group(3) is None):
            raise ValueError(f"cannot parse group element {text!r}")
        if mt.group(2) and not (mt.group(1) and mt.group(3)):
            raise ValueError(f"cannot parse group element {text!r}")
        eps = 1 if mt.group(1) else 0
        if mt.group(3) is None:
            k = 0
        else:
            k = int(mt.group(4)) if mt.group(4) is not None else 1
        return Elem(eps, k % self.m)

    def parse_set(self, text: str) -> tuple[Elem, ...]:
        """Comma-separated element tokens; braces optional, whitespace ignored."""
        body = "".join(text.split()).strip("{}")
        if not body:
            raise ValueError("empty set expression")
        out = [self.parse(tok) for tok in body.split(",")]
        if len(set(out)) != len(out):
            raise ValueError(f"duplicate elements in {text!r}")
        return tuple(sorted(out))

    # -- subgroups ----------------------------------------------------------

    def generated_subgroup(self, gens: Iterable[Elem]) -> "Subgroup":
        gens = list(gens)
        if not gens:
            raise InvalidParameter("need at least one generator")
        seen = {IDENTITY}
        frontier = [IDENTITY]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return Subgroup(self, tuple(sorted(seen)))

    def whole(self) -> "Subgroup":
        return Subgroup(self, self.elements)

    def subgroups(self) -> list["Subgroup"]:
        """All subgroups; every subgroup of Q_4n is generated by at most two elements."""
        found: dict[tuple[Elem, ...], Subgroup] = {}
        els = self.elements
        cyclic = {}
        for x in els:
            h = self.generated_subgroup([x])
            cyclic[h.carrier] = h
        found.update(cyclic)
        hs = list(cyclic.values())
        for h1, h2 in itertools.combinations(hs, 2):
            h = self.generated_subgroup(h1.generators + h2.generators)
            found.setdefault(h.carrier, h)
        return sorted(found.values(), key=lambda h: (h.order, h.carrier))

    # -- automorphisms ------------------------------------------------------

    def sigma(self, r: int, s: int) -> Automorphism:
        if math.gcd(r, self.m) != 1:
            raise InvalidParameter(f"sigma_(r,s) needs gcd(r, 2n) = 1, got r={r}, 2n={self.m}")
        return Automorphism(r=r % self.m, s=s % self.m)

    def apply(self, alpha: Automorphism, x: Elem) -> Elem:
        if alpha.is_sigma:
            if math.gcd(alpha.r, self.m) != 1:
                raise InvalidParameter(f"invalid sigma: gcd({alpha.r}, {self.m}) != 1")
            if x.eps == 0:
                return Elem(0, alpha.r * x.k % self.m)
            return Elem(1, (alpha.r * x.k + alpha.s) % self.m)
        return alpha.table[self.index(x)]

    def as_table(self, alpha: Automorphism) -> tuple[Elem, ...]:
        return tuple(self.apply(alpha, x) for x in self.elements)

    def compose(self, alpha: Automorphism, beta: Automorphism) -> Automorphism:
        """The map ``x -> beta(alpha(x))`` (apply ``alpha`` first)."""
        if alpha.is_sigma and beta.is_sigma:
            # a^i -> a^(r1 i) -> a^(r2 r1 i); b a^i -> b a^(r1 i + s1) -> b a^(r2 (r1 i + s1) + s2)
            return Automorphism(r=alpha.r * beta.r % self.m, s=(beta.r * alpha.s + beta.s) % self.m)
        return Automorphism(table=tuple(self.apply(beta, self.apply(alpha, x)) for x in self.elements))

    def invert(self, alpha: Automorphism) -> Automorphism:
        if alpha.is_sigma:
            rinv = pow(alpha.r, -1, self.m)
            return Automorphism(r=rinv, s=(-rinv * alpha.s) % self.m)
        tab = [IDENTITY] * self.order
        for x in self.elements:
            tab[self.index(self.apply(alpha, x))] = x
        return Automorphism(table=tuple(tab))

    def is_automorphism(self, alpha: Automorphism) -> bool:
        """Exhaustive bijectivity and homomorphism check over all pairs."""
        img = self.as_table(alpha)
        if len(set(img)) != self.order:
            return False
        idx = self.index
        return all(
            img[idx(self.mul(x, y))] == self.mul(img[idx(x)], img[idx(y)])
            for x in self.elements for y in self.elements
        )

    def automorphisms(self) -> list[Automorphism]:
        """All automorphisms, in a deterministic order.

        For n >= 3 these are the maps sigma_(r,s), ordered by (r, s). For n = 2
        the sigma family is too small, so Aut(Q_8) is found by trying every
        pair of images for (a, b); the result is a list of tables.
        """
        return list(self._automorphisms)

    @cached_property
    def _automorphisms(self) -> tuple[Automorphism, ...]:
        if self.n >= 3:
            return tuple(
                Automorphism(r=r, s=s)
                for r in range(1, self.m) if math.gcd(r, self.m) == 1
                for s in range(self.m)
            )
        whole = self.whole()
        return tuple(Automorphism(table=tab) for tab in isomorphism_tables(whole, whole))

    def aut_count_formula(self) -> int:
        """2n * phi(2n), the size of the sigma family."""
        return self.m * _phi(self.m)

    # -- fusion / homogeneity ----------------------------------------------

    def are_fused(self, x: Elem, y: Elem) -> tuple[str, Automorphism | None]:
        """``("fused", alpha)`` with alpha(x) = y, ``("inverse-fused", alpha)``
        with alpha(x^-1) = y, or ``("neither", None)``."""
        xinv = self.inv(x)
        auts = self._automorphisms
        for alpha in auts:
            if self.apply(alpha, x) == y:
                return "fused", alpha
        for alpha in auts:
            if self.apply(alpha, xinv) == y:
                return "inverse-fused", alpha
        return "neither", None

    def is_homogeneous(self, max_n: int = 7) -> tuple[bool, tuple | None]:
        """Does every isomorphism between subgroups extend to an automorphism?

        Returns ``(True, None)`` or ``(False, (H, K, table))`` where ``table``
        is a non-extendable isomorphism H -> K given on ``H.carrier``.
        """
        if self.n > max_n:
            raise TooLarge(f"homogeneity search limited to n <= {max_n}, got n={self.n}")
        subs = self.subgroups()
        aut_tables = [self.as_table(al) for al in self._automorphisms]
        # restrict each automorphism to each subgroup once
        for h in subs:
            idx_h = [self.index(x) for x in h.carrier]
            extendable = {tuple(t[i] for i in idx_h) for t in aut_tables}
            for kk in subs:
                if kk.order != h.order or kk.signature != h.signature:
                    continue
                for tab in isomorphism_tables(h, kk):
                    if tab not in extendable:
                        return False, (h, kk, tab)
        return True, None


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted carrier."""
    group: GQ
    carrier: tuple[Elem, ...]
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.carrier))

    def __contains__(self, x: object) -> bool:
        return x in self._members

    def __len__(self) -> int:
        return len(self.carrier)

    def __iter__(self) -> Iterator[Elem]:
        return iter(self.carrier)

    @property
    def order(self) -> int:
        return len(self.carrier)

    @property
    def elements(self) -> tuple[Elem, ...]:
        return self.carrier

    @cached_property
    def is_abelian(self) -> bool:
        g = self.group
        return all(g.mul(x, y) == g.mul(y, x) for x in self.carrier for y in self.carrier)

    @property
    def kind(self) -> str:
        # every subgroup of Q_4n is cyclic or generalized quaternion
        return "cyclic" if self.is_abelian else "generalized-quaternion"

    @cached_property
    def generators(self) -> tuple[Elem, ...]:
        """A small generating set: one element if cyclic, else two."""
        g = self.group
        best = min(self.carrier, key=lambda x: (-g.element_order(x), x))
        if g.element_order(best) == self.order:
            return (best,)
        for x, y in itertools.combinations(self.carrier, 2):
            if g.generated_subgroup([x, y]).carrier == self.carrier:
                return (x, y)
        raise AssertionError("subgroup of Q_4n needs more than two generators")

    @cached_property
    def signature(self) -> tuple:
        """Isomorphism-invariant fingerprint: the sorted element-order multiset."""
        g = self.group
        return tuple(sorted(g.element_order(x) for x in self.carrier))

    def is_closed(self) -> bool:
        g = self.group
        return (IDENTITY in self
                and all(g.mul(x, y) in self for x in self.carrier for y in self.carrier)
                and all(g.inv(x) in self for x in self.carrier))

    @property
    def is_whole(self) -> bool:
        return self.order == self.group.order

    @cached_property
    def _pos(self) -> dict[Elem, int]:
        return {x: i for i, x in enumerate(self.carrier)}

    def index(self, x: Elem) -> int:
        return self._pos[x]

    def mul(self, x: Elem, y: Elem) -> Elem:
        return self.group.mul(x, y)

    def inv(self, x: Elem) -> Elem:
        return self.group.inv(x)

    def render(self, x: Elem) -> str:
        return self.group.render(x)

    @cached_property
    def _automorphisms(self) -> tuple[Automorphism, ...]:
        if self.is_whole:
            return self.group._automorphisms
        return tuple(Automorphism(table=t) for t in isomorphism_tables(self, self))

    def automorphisms(self) -> list[Automorphism]:
        """All automorphisms; tables are indexed by position in ``carrier``."""
        return list(self._automorphisms)

    def apply(self, alpha: Automorphism, x: Elem) -> Elem:
        if alpha.is_sigma or self.is_whole:
            return self.group.apply(alpha, x)
        return alpha.table[self._pos[x]]


def isomorphism_tables(h: Subgroup, k: Subgroup) -> list[tuple[Elem, ...]]:
    """Every isomorphism ``h -> k`` as a tuple of images over ``h.carrier``.

    Brute force over generator images: choose images for ``h.generators`` of
    matching orders, extend along right multiplication, and keep the
    consistent bijective ones.
    """
    g = h.group
    if h.order != k.order:
        return []
    gens = h.generators
    cands = [[y for y in k.carrier if g.element_order(y) == g.element_order(x)] for x in gens]
    pos = {x: i for i, x in enumerate(h.carrier)}
    out = []
    for imgs in itertools.product(*cands):
        f: dict[Elem, Elem] = {IDENTITY: IDENTITY}
        stack = [IDENTITY]
        ok = True
        while stack and ok:
            x = stack.pop()
            fx = f[x]
            for gen, im in zip(gens, imgs):
                y = g.mul(x, gen)
                fy = g.mul(fx, im)
                prev = f.get(y)
                if prev is None:
                    f[y] = fy
                    stack.append(y)
                elif prev != fy:
                    ok = False
                    break
        if not ok or len(set(f.values())) != h.order:
            continue
        tab = [IDENTITY] * h.order
        for x, fx in f.items():
            tab[pos[x]] = fx
        out.append(tuple(tab))
    return sorted(set(out))


def subgroup_of(group: GQ | Subgroup) -> Subgroup:
    return group.whole() if isinstance(group, GQ) else group


def check_relations(g: GQ) -> bool:
    """a^2n = 1, b^2 = a^n, b^-1 a b = a^-1."""
    a, b = g.a(1), g.ba(0)
    return (g.power(a, g.m) == IDENTITY
            and g.mul(b, b) == g.a(g.n)
            and g.prod([g.inv(b), a, b]) == g.inv(a))


def sort_elems(xs: Sequence[Elem]) -> tuple[Elem, ...]:
    return tuple(sorted(xs))
