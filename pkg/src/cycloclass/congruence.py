"""Congruence constraints on primes dividing class numbers of abelian fields.

The underlying theorems, for an abelian field K of degree N and a prime p
dividing h(K) with p-rank r:

* Rank theorem: if p does not divide N, then n | p(p^r - 1) for some odd
  prime n | N forces structure; concretely we test, for an odd prime n,
  whether p = 0 (mod n) or p^r = 1 (mod n).
* Descent (even degree): write N = 2^a * N1 with N1 odd.  If N1 > 1 and
  no odd prime n | N1 satisfies the rank congruence for any admissible rank,
  then p must divide the class number of the degree-2^a subfield L
  ("two-part" of the divisibility).
* GCD corollary (odd degree): if N is odd, every p | h(K) satisfies
  gcd(p(p^r - 1), N) > 1 for some admissible rank r.
* Bounded descent: for an odd prime n | N and the descent subfield F with
  [K:F] = n, if p > H_F (the geometric class-number bound of F) then the
  same congruence p = 0 or p^r = 1 (mod n) must hold.  When p <= H_F the
  theorem is silent.

Each audit returns a Verdict whose witness dict contains enough to replay
the decisive congruence or gate comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import factorize, is_prime, multiplicative_order
from .abelian import AbelianFieldSpec, descent_subfield
from .bounds import class_number_bound, field_bound

CONSISTENT = "CONSISTENT"
VIOLATION = "VIOLATION"
INCONCLUSIVE = "INCONCLUSIVE"

_TWO_PART_STATES = ("asserted", "known-false", "unknown")

# ints above this size are encoded as hex strings in witnesses so that
# reports stay JSON-serializable without tripping CPython's decimal
# conversion limit on enormous discriminants
_INLINE_INT_BITS = 256


def encode_int(v: int) -> int | str:
    return v if v.bit_length() <= _INLINE_INT_BITS else hex(v)


def decode_int(v: int | str) -> int:
    return v if isinstance(v, int) else int(v, 16)


@dataclass(frozen=True)
class Verdict:
    """Outcome of one theorem application: status plus a replayable witness."""

    status: str
    witness: dict = field(compare=False)

    def __post_init__(self) -> None:
        if self.status not in (CONSISTENT, VIOLATION, INCONCLUSIVE):
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def is_violation(self) -> bool:
        return self.status == VIOLATION


@dataclass(frozen=True)
class RankHypothesis:
    """A prime p dividing a class number with multiplicity v_p; r_p is the
    p-rank of the class group when known, else every rank 1..v_p is
    admissible."""

    p: int
    v_p: int
    r_p: int | None = None

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError(f"p = {self.p} is not a prime")
        if self.v_p < 1:
            raise ValueError(f"v_p must be >= 1, got {self.v_p}")
        if self.r_p is not None and not 1 <= self.r_p <= self.v_p:
            raise ValueError(
                f"known rank r_p = {self.r_p} outside 1..v_p = {self.v_p}"
            )

    @property
    def admissible_ranks(self) -> tuple[int, ...]:
        if self.r_p is not None:
            return (self.r_p,)
        return tuple(range(1, self.v_p + 1))


def rank_congruence(p: int, r: int, n: int) -> bool:
    """True iff p = 0 (mod n) or p^r = 1 (mod n)."""
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    return p % n == 0 or pow(p, r, n) == 1


def feasible_ranks(p: int, v_p: int, n: int) -> frozenset[int]:
    """Ranks r in 1..v_p satisfying the congruence for the odd prime n.

    Rejects p = 0 (mod n): the congruence then holds for every rank and the
    set carries no information.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if v_p < 1:
        raise ValueError(f"v_p must be >= 1, got {v_p}")
    if n < 3 or n % 2 == 0 or not is_prime(n):
        raise ValueError(f"n = {n} is not an odd prime")
    if p % n == 0:
        raise ValueError(
            f"p = {p} is divisible by n = {n}: every rank in 1..{v_p} is feasible"
        )
    f = multiplicative_order(p, n)
    return frozenset(r for r in range(1, v_p + 1) if r % f == 0)


def _odd_prime_witness(hyp: RankHypothesis, odd_primes: tuple[int, ...]) -> dict | None:
    """First (r, n) with the congruence satisfied, smallest rank first."""
    for r in hyp.admissible_ranks:
        for n in odd_primes:
            if hyp.p % n == 0:
                return {"n": n, "r": r, "congruence": "p = 0 (mod n)"}
            if pow(hyp.p, r, n) == 1:
                return {"n": n, "r": r, "congruence": "p^r = 1 (mod n)"}
    return None


def corollary1_verdict(N: int, hyp: RankHypothesis) -> Verdict:
    """GCD corollary for odd degree N > 1: some admissible rank r and odd
    prime n | N must satisfy the congruence; otherwise the record is
    inconsistent with the theorem."""
    if N <= 1 or N % 2 == 0:
        raise ValueError(f"degree N = {N} is not an odd integer > 1")
    odd_primes = factorize(N).primes()
    base = {"theorem": "corollary1", "p": hyp.p, "N": N}
    hit = _odd_prime_witness(hyp, odd_primes)
    if hit is not None:
        return Verdict(CONSISTENT, base | hit)
    return Verdict(
        VIOLATION,
        base
        | {
            "admissible_ranks": list(hyp.admissible_ranks),
            "reason": "gcd(p(p^r - 1), N) = 1 for every admissible rank r",
        },
    )


def theorem1_audit(N: int, hyp: RankHypothesis, two_part: str = "unknown") -> Verdict:
    """Descent audit for degree N whose odd part N1 exceeds 1.

    two_part states what is known about p | h(L) for the degree-2^a subfield
    L: "asserted" (recorded as true), "known-false", or "unknown".  It is
    consulted only when no odd prime of N1 yields a congruence witness.
    """
    if two_part not in _TWO_PART_STATES:
        raise ValueError(f"two_part must be one of {_TWO_PART_STATES}")
    if N < 2:
        raise ValueError(f"degree N = {N} must be >= 2")
    alpha0 = (N & -N).bit_length() - 1
    N1 = N >> alpha0
    if N1 <= 1:
        raise ValueError(f"odd part of N = {N} is 1; the descent theorem is empty")
    odd_primes = factorize(N1).primes()
    base = {"theorem": "theorem1", "p": hyp.p, "N": N, "N1": N1}
    hit = _odd_prime_witness(hyp, odd_primes)
    if hit is not None:
        return Verdict(CONSISTENT, base | hit | {"branch": "odd-prime"})
    two_part_base = base | {
        "branch": "two-part",
        "subfield_degree": 1 << alpha0,
        "admissible_ranks": list(hyp.admissible_ranks),
    }
    if alpha0 == 0:
        # odd degree: L = Q, whose class number 1 admits no prime divisor
        return Verdict(
            VIOLATION,
            two_part_base
            | {"reason": "no odd prime of N1 admits the congruence and L = Q has h = 1"},
        )
    if two_part == "asserted":
        return Verdict(
            CONSISTENT,
            two_part_base | {"note": "p | h(L) asserted for the 2-power-degree subfield L"},
        )
    if two_part == "known-false":
        return Verdict(
            VIOLATION,
            two_part_base
            | {
                "reason": "no odd prime of N1 admits the congruence and "
                "p | h(L) is recorded as false"
            },
        )
    return Verdict(
        INCONCLUSIVE,
        two_part_base
        | {"reason": "p | h(L) for the 2-power-degree subfield is not recorded"},
    )


def theorem2_audit(
    hyp: RankHypothesis,
    n: int,
    *,
    K: AbelianFieldSpec | None = None,
    F_abs_disc: int | None = None,
    F_degree: int | None = None,
) -> Verdict:
    """Bounded-descent audit at the odd prime n.

    The descent subfield F (index n in K) is either derived from an explicit
    field spec K or supplied directly via (F_abs_disc, F_degree).  The
    theorem applies only when p > H_F; below the bound the verdict is
    INCONCLUSIVE.
    """
    if n < 3 or n % 2 == 0 or not is_prime(n):
        raise ValueError(f"n = {n} is not an odd prime")
    if K is not None:
        if F_abs_disc is not None or F_degree is not None:
            raise ValueError("give either K or (F_abs_disc, F_degree), not both")
        F = descent_subfield(K, n)
        bound = field_bound(F)
        disc, degree = F.abs_discriminant, F.degree
    else:
        if F_abs_disc is None or F_degree is None:
            raise ValueError("need both F_abs_disc and F_degree without K")
        disc, degree = F_abs_disc, F_degree
        bound = class_number_bound(disc, degree)
    base = {
        "theorem": "theorem2",
        "p": hyp.p,
        "n": n,
        "F_abs_disc": encode_int(disc),
        "F_degree": degree,
        "H_F": bound.display(),
    }
    if not bound.exceeds(hyp.p):
        return Verdict(
            INCONCLUSIVE,
            base | {"reason": "p <= H_F; the bounded descent theorem is silent"},
        )
    for r in hyp.admissible_ranks:
        if hyp.p % n == 0:
            return Verdict(
                CONSISTENT, base | {"r": r, "congruence": "p = 0 (mod n)"}
            )
        if pow(hyp.p, r, n) == 1:
            return Verdict(
                CONSISTENT, base | {"r": r, "congruence": "p^r = 1 (mod n)"}
            )
    return Verdict(
        VIOLATION,
        base
        | {
            "admissible_ranks": list(hyp.admissible_ranks),
            "reason": "p > H_F yet no admissible rank satisfies the congruence",
        },
    )
