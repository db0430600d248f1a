"""Dirichlet characters, Galois orbits, and the subfield lattice of Q(zeta_u).

Characters mod u are stored as exponent tuples against a fixed generating set
of (Z/u)^*; values are exact root-of-unity exponents (Fraction k/d), so all
downstream arithmetic stays in Q(zeta_d) with no floating point anywhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce

from .arith import euler_phi, factorize, is_prime


def normalize_conductor(u: int) -> int:
    """Collapse u = 2 mod 4 to u/2: both index the same cyclotomic field."""
    if u >= 2 and u % 4 == 2:
        return u // 2
    return u


def _primitive_root_mod_pk(p: int, e: int) -> int:
    """Smallest primitive root mod p, lifted so it stays primitive mod p^e."""
    qs = factorize(p - 1).primes()
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    if e >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _crt_lift(r: int, q: int, u: int) -> int:
    """The residue mod u that is r mod q and 1 mod u/q (q, u/q coprime)."""
    m = u // q
    if m == 1:
        return r % u
    return (r * m * pow(m, -1, q) + q * pow(q, -1, m)) % u


@dataclass(frozen=True)
class UnitGroupStructure:
    """(Z/u)^* as a product of cyclic groups <g_i> of order o_i."""

    modulus: int
    generators: tuple[tuple[int, int], ...]  # (residue, order) pairs


class _UnitData:
    """Internal tables for one modulus: generators, components, discrete logs."""

    def __init__(self, u: int):
        if u < 3:
            raise ValueError(f"modulus must be >= 3, got {u}")
        if u % 4 == 2:
            raise ValueError(
                f"modulus {u} = 2 mod 4; normalize to {u // 2} first (same field)"
            )
        self.modulus = u
        gens: list[tuple[int, int]] = []
        comps: list[tuple[int, int, list[int]]] = []  # (p, e, generator indices)
        for p, e in factorize(u).factors:
            q = p**e
            if p == 2:
                if e == 2:
                    gens.append((_crt_lift(3, 4, u), 2))
                    comps.append((2, 2, [len(gens) - 1]))
                else:  # e >= 3: (Z/2^e)^* = <-1> x <5>
                    gens.append((_crt_lift(q - 1, q, u), 2))
                    gens.append((_crt_lift(5, q, u), 2 ** (e - 2)))
                    comps.append((2, e, [len(gens) - 2, len(gens) - 1]))
            else:
                g = _primitive_root_mod_pk(p, e)
                gens.append((_crt_lift(g, q, u), euler_phi(q)))
                comps.append((p, e, [len(gens) - 1]))
        self.generators = tuple(gens)
        self.components = tuple(comps)
        self.orders = tuple(o for _, o in gens)
        table: dict[tuple[int, ...], int] = {(): 1}
        for g, o in gens:
            powers, pw = [], 1
            for _ in range(o):
                powers.append(pw)
                pw = pw * g % u
            table = {
                tup + (k,): r * powers[k] % u
                for tup, r in table.items()
                for k in range(o)
            }
        self.dlog = {r: tup for tup, r in table.items()}
        if len(self.dlog) != euler_phi(u):
            raise AssertionError(f"generator set for mod {u} does not span the units")
        self.minus_one = self.dlog[u - 1] if u > 2 else (0,) * len(gens)


@lru_cache(maxsize=None)
def _unit_data(u: int) -> _UnitData:
    return _UnitData(u)


def unit_group_structure(u: int) -> UnitGroupStructure:
    """Generators and orders for (Z/u)^*; rejects u < 3 and u = 2 mod 4."""
    data = _unit_data(u)
    return UnitGroupStructure(u, data.generators)


def _local_conductor(p: int, e: int, exps: tuple[int, ...], orders: tuple[int, ...]) -> int:
    """Conductor of the p-part of a character given its local exponents."""
    if p == 2:
        if e == 2:
            return 1 if exps[0] % 2 == 0 else 4
        s, t = exps[0] % 2, exps[1] % orders[1]
        if t == 0:
            return 1 if s == 0 else 4
        return 4 * (orders[1] // math.gcd(t, orders[1]))
    t, m = exps[0] % orders[0], orders[0]
    if t == 0:
        return 1
    d = m // math.gcd(t, m)
    for j in range(1, e + 1):
        if (p ** (j - 1) * (p - 1)) % d == 0:
            return p**j
    raise AssertionError("unreachable: local order always divides phi(p^e)")


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod u given by exponents against the fixed unit-group generators.

    chi(g_i) = e(exponents[i] / o_i) with e(x) = exp(2*pi*i*x).
    """

    modulus: int
    exponents: tuple[int, ...]
    order: int = field(init=False, compare=False, default=0)
    conductor: int = field(init=False, compare=False, default=0)
    is_odd: bool = field(init=False, compare=False, default=False)

    def __post_init__(self):
        data = _unit_data(self.modulus)
        if len(self.exponents) != len(data.orders):
            raise ValueError(
                f"expected {len(data.orders)} exponents for modulus {self.modulus}"
            )
        exps = tuple(e % o for e, o in zip(self.exponents, data.orders))
        object.__setattr__(self, "exponents", exps)
        order = reduce(
            math.lcm, (o // math.gcd(e, o) for e, o in zip(exps, data.orders)), 1
        )
        cond = 1
        for p, pe, idx in data.components:
            cond *= _local_conductor(
                p, pe, tuple(exps[i] for i in idx), tuple(data.orders[i] for i in idx)
            )
        parity = (
            sum(
                Fraction(e * k, o)
                for e, k, o in zip(exps, data.minus_one, data.orders)
            )
            % 1
            == Fraction(1, 2)
        )
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "conductor", cond)
        object.__setattr__(self, "is_odd", parity)

    @property
    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def value(self, a: int) -> Fraction | None:
        """Exponent k/d with chi(a) = e(k/d), or None when gcd(a, u) > 1."""
        u = self.modulus
        a %= u
        if math.gcd(a, u) != 1:
            return None
        data = _unit_data(u)
        ks = data.dlog[a]
        return (
            sum(Fraction(e * k, o) for e, k, o in zip(self.exponents, ks, data.orders))
            % 1
        )

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if self.modulus != other.modulus:
            raise ValueError("cannot multiply characters of different moduli")
        return DirichletCharacter(
            self.modulus,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def __pow__(self, k: int) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple(k * e for e in self.exponents))


def char_value(chi: DirichletCharacter, a: int) -> Fraction | None:
    """chi(a) as a root-of-unity exponent (Fraction mod 1), None on non-units."""
    return chi.value(a)


def characters(u: int) -> list[DirichletCharacter]:
    """All phi(u) Dirichlet characters mod u, in lexicographic exponent order."""
    data = _unit_data(u)
    return [
        DirichletCharacter(u, exps)
        for exps in itertools.product(*(range(o) for o in data.orders))
    ]


@dataclass(frozen=True)
class CharacterOrbit:
    """A Galois orbit {chi^k : gcd(k, d) = 1}; members share order/conductor/parity."""

    members: tuple[DirichletCharacter, ...]
    order: int
    conductor: int
    is_odd: bool

    @property
    def size(self) -> int:
        return len(self.members)


def galois_orbits(chars: list[DirichletCharacter]) -> list[CharacterOrbit]:
    """Partition into Galois orbits; input must be closed under chi -> chi^k."""
    pool = {ch.exponents: ch for ch in chars}
    if len(pool) != len(chars):
        raise ValueError("duplicate characters in input")
    remaining = set(pool)
    orbits = []
    for exps in sorted(pool):
        if exps not in remaining:
            continue
        chi = pool[exps]
        d = chi.order
        members = {}
        for k in range(1, d + 1):
            if math.gcd(k, d) != 1:
                continue
            m = chi**k
            if m.exponents not in remaining:
                raise ValueError(
                    f"input not Galois-closed: power {k} of {exps} is missing"
                )
            members[m.exponents] = m
        remaining -= set(members)
        mlist = tuple(members[e] for e in sorted(members))
        if not all(
            m.order == d and m.conductor == chi.conductor and m.is_odd == chi.is_odd
            for m in mlist
        ):
            raise AssertionError("orbit members disagree on order/conductor/parity")
        orbits.append(CharacterOrbit(mlist, d, chi.conductor, chi.is_odd))
    orbits.sort(key=lambda ob: (ob.order, ob.conductor, ob.members[0].exponents))
    return orbits


@dataclass(frozen=True)
class AbelianFieldSpec:
    """An abelian field presented by its group X of Dirichlet characters mod u.

    Degree = |X|, conductor = lcm of character conductors, and by
    conductor-discriminant |disc| = product of character conductors.
    """

    modulus: int
    chars: frozenset[DirichletCharacter]
    degree: int = field(init=False, compare=False, default=0)
    conductor: int = field(init=False, compare=False, default=0)
    abs_discriminant: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        if not self.chars:
            raise ValueError("character group must contain the trivial character")
        conds = [ch.conductor for ch in self.chars]
        object.__setattr__(self, "degree", len(self.chars))
        object.__setattr__(self, "conductor", reduce(math.lcm, conds, 1))
        object.__setattr__(self, "abs_discriminant", math.prod(conds))

    @property
    def sorted_exponents(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(ch.exponents for ch in self.chars))

    def validate_subgroup(self) -> None:
        """Check X is a subgroup (contains 1, closed under product). O(|X|^2)."""
        exps = {ch.exponents for ch in self.chars}
        data = _unit_data(self.modulus)
        if (0,) * len(data.orders) not in exps:
            raise ValueError("character set lacks the trivial character")
        for a in exps:
            for b in exps:
                prod = tuple((x + y) % o for x, y, o in zip(a, b, data.orders))
                if prod not in exps:
                    raise ValueError("character set is not closed under products")

    def _sort_key(self):
        return (self.degree, self.abs_discriminant, self.conductor, self.sorted_exponents)


def _spec_from_tuples(u: int, tuples) -> AbelianFieldSpec:
    return AbelianFieldSpec(u, frozenset(DirichletCharacter(u, t) for t in tuples))


def cyclotomic_field_spec(u: int) -> AbelianFieldSpec:
    """Q(zeta_u) as a field spec (the full character group mod u)."""
    u = normalize_conductor(u)
    return AbelianFieldSpec(u, frozenset(characters(u)))


def real_cyclotomic_field_spec(u: int) -> AbelianFieldSpec:
    """The maximal real subfield Q(zeta_u)^+: the even characters mod u."""
    u = normalize_conductor(u)
    return AbelianFieldSpec(u, frozenset(ch for ch in characters(u) if not ch.is_odd))


def cyclic_subfield_spec(u: int, n: int) -> AbelianFieldSpec:
    """The unique degree-n subfield of Q(zeta_u) when (Z/u)^* is cyclic."""
    u = normalize_conductor(u)
    data = _unit_data(u)
    if len(data.orders) != 1:
        raise ValueError(f"(Z/{u})^* is not cyclic")
    m = data.orders[0]
    if m % n != 0:
        raise ValueError(f"no degree-{n} subfield: {n} does not divide {m}")
    step = m // n
    return _spec_from_tuples(u, [((step * k) % m,) for k in range(n)])


class SubfieldLimitExceeded(Exception):
    pass


@dataclass(frozen=True)
class SubfieldListing:
    """Result of a subfield enumeration; complete=False means only the
    prime-index subgroups and the full group were listed."""

    fields: tuple[AbelianFieldSpec, ...]
    complete: bool
    note: str | None = None

    def __iter__(self):
        return iter(self.fields)

    def __len__(self):
        return len(self.fields)


def _tuple_order(t: tuple[int, ...], orders: tuple[int, ...]) -> int:
    return reduce(math.lcm, (o // math.gcd(e, o) for e, o in zip(t, orders)), 1)


def _all_subgroups(orders: tuple[int, ...], limit: int) -> set[frozenset]:
    """Every subgroup of prod Z/o_i as a frozenset of tuples; caps at `limit`."""
    elements = list(itertools.product(*(range(o) for o in orders)))
    triv = (0,) * len(orders)

    def add(a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, orders))

    cyclics: set[frozenset] = set()
    by_order: dict[int, list[frozenset]] = {}
    for g in elements:
        og = _tuple_order(g, orders)
        # g inside a known cyclic subgroup of size ord(g) already generates it.
        if any(g in S for S in by_order.get(og, ())):
            continue
        cur, S = g, {triv}
        while cur != triv:
            S.add(cur)
            cur = add(cur, g)
        fs = frozenset(S)
        if fs not in cyclics:
            cyclics.add(fs)
            by_order.setdefault(og, []).append(fs)
    subs: set[frozenset] = {frozenset({triv})} | cyclics
    frontier = list(subs)
    while frontier:
        S = frontier.pop()
        for C in cyclics:
            if C <= S:
                continue
            T = frozenset(add(a, b) for a in S for b in C)
            if T not in subs:
                subs.add(T)
                frontier.append(T)
                if len(subs) > limit:
                    raise SubfieldLimitExceeded(
                        f"more than {limit} subgroups; refusing to enumerate"
                    )
    return subs


def _prime_index_subgroups(orders: tuple[int, ...]) -> set[frozenset]:
    """Subgroups of prime index q, for each prime q dividing the group order."""
    elements = list(itertools.product(*(range(o) for o in orders)))
    size = len(elements)
    out: set[frozenset] = set()
    for q in factorize(size).primes():
        out |= _index_n_subgroups(elements, orders, q)
    return out


def _index_n_subgroups(elements, orders, n: int) -> set[frozenset]:
    """All index-n subgroups (n prime) of X, via hyperplanes of X/X^n over F_n."""

    def add(a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, orders))

    def scale(a, k):
        return tuple((x * k) % o for x, o in zip(a, orders))

    Xn = frozenset(scale(x, n) for x in elements)
    basis: list[tuple[int, ...]] = []
    span = set(Xn)
    for x in sorted(elements):
        if len(span) == len(elements):
            break
        if x in span:
            continue
        basis.append(x)
        span = {add(s, scale(x, k)) for s in span for k in range(n)}
    r = len(basis)
    if r == 0:
        return set()
    out = set()
    for a in itertools.product(range(n), repeat=r):
        # One functional per hyperplane: first nonzero coefficient scaled to 1.
        nz = next((i for i, c in enumerate(a) if c), None)
        if nz is None or a[nz] != 1 or any(a[i] for i in range(nz)):
            continue
        kernel_coords = [
            ks
            for ks in itertools.product(range(n), repeat=r)
            if sum(c * k for c, k in zip(a, ks)) % n == 0
        ]
        sub = set()
        for ks in kernel_coords:
            shift = triv = (0,) * len(orders)
            for b, k in zip(basis, ks):
                shift = add(shift, scale(b, k))
            for s in Xn:
                sub.add(add(s, shift))
        out.add(frozenset(sub))
    return out


def subfields(u: int, limit: int = 100_000) -> SubfieldListing:
    """All subfields of Q(zeta_u) (as field specs), sorted by degree then |disc|.

    If the subgroup lattice exceeds `limit`, only the prime-index subgroups and
    the full group are returned, with complete=False.
    """
    u = normalize_conductor(u)
    data = _unit_data(u)
    try:
        groups = _all_subgroups(data.orders, limit)
        complete, note = True, None
    except SubfieldLimitExceeded:
        groups = _prime_index_subgroups(data.orders)
        groups.add(frozenset(itertools.product(*(range(o) for o in data.orders))))
        complete = False
        note = (
            f"subgroup count exceeds {limit}; listing only prime-index "
            "subgroups and the full group"
        )
    specs = [_spec_from_tuples(u, g) for g in groups]
    specs.sort(key=AbelianFieldSpec._sort_key)
    return SubfieldListing(tuple(specs), complete, note)


@lru_cache(maxsize=None)
def descent_subfield(K: AbelianFieldSpec, n: int) -> AbelianFieldSpec:
    """The degree-N/n subfield F of K (index-n character subgroup) minimizing
    |disc(F)|; ties broken by conductor, then by exponent tuples."""
    if not is_prime(n) or n == 2:
        raise ValueError(f"descent degree must be an odd prime, got {n}")
    if K.degree % n != 0:
        raise ValueError(f"{n} does not divide the degree {K.degree}")
    data = _unit_data(K.modulus)
    elements = [ch.exponents for ch in K.chars]
    subs = _index_n_subgroups(elements, data.orders, n)
    if not subs:
        raise AssertionError("index-n subgroup must exist when n divides |X|")
    specs = [_spec_from_tuples(K.modulus, g) for g in subs]
    return min(specs, key=AbelianFieldSpec._sort_key)


def two_power_subfield(K: AbelianFieldSpec) -> AbelianFieldSpec:
    """The unique subfield of K of degree 2^a where 2^a || [K:Q]: the fixed
    field of the odd part of Gal(K/Q), i.e. the 2-primary characters of K."""
    chars = frozenset(ch for ch in K.chars if ch.order & (ch.order - 1) == 0)
    return AbelianFieldSpec(K.modulus, chars)


def quadratic_signed_discriminant(F: AbelianFieldSpec) -> int:
    """Signed discriminant of a degree-2 field spec: -conductor when the
    nontrivial character is odd (imaginary field), +conductor when even."""
    if F.degree != 2:
        raise ValueError(f"need a quadratic field, got degree {F.degree}")
    chi = next(ch for ch in F.chars if not ch.is_trivial)
    return -F.conductor if chi.is_odd else F.conductor
