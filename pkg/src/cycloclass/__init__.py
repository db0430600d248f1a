"""Exact class-number arithmetic for abelian fields: relative class numbers of
cyclotomic fields, certified class-number bounds, and congruence audits of
published class-number tables."""

from __future__ import annotations

from .arith import (
    PrimeFactorization,
    euler_phi,
    factorize,
    is_prime,
    multiplicative_order,
    probable_prime_only,
)
from .abelian import (
    AbelianFieldSpec,
    DirichletCharacter,
    SubfieldLimitExceeded,
    SubfieldListing,
    characters,
    cyclic_subfield_spec,
    cyclotomic_field_spec,
    descent_subfield,
    galois_orbits,
    normalize_conductor,
    real_cyclotomic_field_spec,
    subfields,
    unit_group_structure,
)
from .classnum import (
    CyclotomicNumber,
    IntegralityError,
    OrbitNorm,
    RelativeClassNumber,
    TimeLimitExceeded,
    b1_chi,
    cyclotomic_polynomial,
    maillet_hminus,
    orbit_norm,
    relative_class_number,
)
from .bounds import BoundResult, class_number_bound, field_bound
from .congruence import (
    CONSISTENT,
    INCONCLUSIVE,
    VIOLATION,
    RankHypothesis,
    Verdict,
    corollary1_verdict,
    feasible_ranks,
    rank_congruence,
    theorem1_audit,
    theorem2_audit,
)
from .tables import (
    AuditEntry,
    AuditReport,
    ClassNumberRecord,
    TableFormatError,
    audit_records,
    builtin_paper_dataset,
    factor_value,
    parse_records,
    serialize_records,
)

__all__ = [
    "AbelianFieldSpec",
    "AuditEntry",
    "AuditReport",
    "BoundResult",
    "CONSISTENT",
    "ClassNumberRecord",
    "CyclotomicNumber",
    "DirichletCharacter",
    "INCONCLUSIVE",
    "IntegralityError",
    "OrbitNorm",
    "PrimeFactorization",
    "RankHypothesis",
    "RelativeClassNumber",
    "SubfieldLimitExceeded",
    "SubfieldListing",
    "TableFormatError",
    "TimeLimitExceeded",
    "VIOLATION",
    "Verdict",
    "audit_records",
    "b1_chi",
    "builtin_paper_dataset",
    "characters",
    "class_number_bound",
    "corollary1_verdict",
    "cyclic_subfield_spec",
    "cyclotomic_field_spec",
    "cyclotomic_polynomial",
    "descent_subfield",
    "euler_phi",
    "factor_value",
    "factorize",
    "feasible_ranks",
    "field_bound",
    "galois_orbits",
    "is_prime",
    "maillet_hminus",
    "multiplicative_order",
    "normalize_conductor",
    "orbit_norm",
    "parse_records",
    "probable_prime_only",
    "rank_congruence",
    "real_cyclotomic_field_spec",
    "relative_class_number",
    "serialize_records",
    "subfields",
    "theorem1_audit",
    "theorem2_audit",
    "unit_group_structure",
]
