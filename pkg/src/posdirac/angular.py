"""Quantum-number bookkeeping, recoupling coefficients and parity tables.

Half-integer angular momenta are handled as doubled integers internally so
that selection rules are exact integer arithmetic.  The public functions
accept ordinary floats such as 0.5 or 1.5.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "CaseId",
    "QuantumNumbers",
    "ParityLabel",
    "RecouplingPair",
    "recoupling",
    "clebsch_gordan",
    "parity_of",
    "families",
    "case_for",
]


class CaseId(enum.Enum):
    """Partial-wave case of the two-body system.

    CASE1 is S=0, L=J; CASE2 is S=1, L=J; CASE3 is S=1, L=J+-1.  Cases 1, 2, 3
    correspond to sets 1, 3, 2 of the older finite-element literature.
    """

    CASE1 = 1
    CASE2 = 2
    CASE3 = 3

    @classmethod
    def parse(cls, value) -> "CaseId":
        if isinstance(value, CaseId):
            return value
        text = str(value).strip().lower().replace("case", "")
        try:
            return cls(int(text))
        except ValueError:
            raise ValueError(f"unknown case {value!r}; expected 1, 2 or 3") from None

    @property
    def legacy_set(self) -> int:
        return {1: 1, 2: 3, 3: 2}[self.value]


@dataclass(frozen=True)
class QuantumNumbers:
    """Atomic (n, L, S, J) label."""

    n: int
    L: int
    S: int
    J: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.L <= self.n - 1:
            raise ValueError(f"L={self.L} outside 0..n-1 for n={self.n}")
        if self.S not in (0, 1):
            raise ValueError(f"S must be 0 or 1, got {self.S}")
        if not abs(self.L - self.S) <= self.J <= self.L + self.S:
            raise ValueError(f"J={self.J} not allowed for L={self.L}, S={self.S}")

    @property
    def case(self) -> CaseId:
        return case_for(self.L, self.S, self.J)

    def __str__(self) -> str:
        return f"{self.n} {self.L} {self.S} {self.J}"


def case_for(L: int, S: int, J: int) -> CaseId:
    if S == 0:
        return CaseId.CASE1
    return CaseId.CASE2 if L == J else CaseId.CASE3


@dataclass(frozen=True)
class ParityLabel:
    C: int
    P: int


@dataclass(frozen=True)
class RecouplingPair:
    a: float
    b: float


def recoupling(J: int) -> RecouplingPair:
    """Spin-1/2 recoupling coefficients a = sqrt((J+1)/(2J+1)), b = sqrt(J/(2J+1))."""
    if J < 0:
        raise ValueError(f"J must be >= 0, got {J}")
    d = 2 * J + 1
    return RecouplingPair(math.sqrt((J + 1) / d), math.sqrt(J / d))


def _twice(x) -> int:
    t = round(2 * x)
    if abs(2 * x - t) > 1e-9:
        raise ValueError(f"{x!r} is not an integer or half-integer")
    return int(t)


@lru_cache(maxsize=None)
def _lfact(n: int) -> float:
    return math.lgamma(n + 1)


@lru_cache(maxsize=65536)
def _cg2(j1: int, m1: int, j2: int, m2: int, J: int, M: int) -> float:
    # all arguments doubled
    if m1 + m2 != M:
        return 0.0
    if not (abs(j1 - j2) <= J <= j1 + j2) or (j1 + j2 + J) % 2:
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(M) > J:
        return 0.0
    if (j1 + m1) % 2 or (j2 + m2) % 2 or (J + M) % 2:
        return 0.0
    # undoubled integer combinations
    a = (j1 + j2 - J) // 2
    b = (j1 - j2 + J) // 2
    c = (-j1 + j2 + J) // 2
    d = (j1 + j2 + J) // 2 + 1
    log_tri = 0.5 * (_lfact(a) + _lfact(b) + _lfact(c) - _lfact(d))
    log_m = 0.5 * (_lfact((j1 + m1) // 2) + _lfact((j1 - m1) // 2)
                   + _lfact((j2 + m2) // 2) + _lfact((j2 - m2) // 2)
                   + _lfact((J + M) // 2) + _lfact((J - M) // 2))
    kmin = max(0, (j2 - J - m1) // 2, (j1 - J + m2) // 2)
    kmax = min(a, (j1 - m1) // 2, (j2 + m2) // 2)
    total = 0.0
    for k in range(kmin, kmax + 1):
        den = (_lfact(k) + _lfact(a - k) + _lfact((j1 - m1) // 2 - k)
               + _lfact((j2 + m2) // 2 - k) + _lfact((J - j2 + m1) // 2 + k)
               + _lfact((J - j1 - m2) // 2 + k))
        term = math.exp(log_tri + log_m - den)
        total += -term if k % 2 else term
    return math.sqrt(J + 1) * total


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """Condon-Shortley coefficient <j1 m1 j2 m2 | J M>.

    Evaluated with the Racah sum in log-factorial form, which stays finite
    well past j = 50.  Violated selection rules give 0.
    """
    return _cg2(_twice(j1), _twice(m1), _twice(j2), _twice(m2), _twice(J), _twice(M))


# Family tables: exponent offsets (C, P) such that parity = (-1)**(J + offset).
_PARITY = {
    CaseId.CASE1: {
        "++0": (0, 1), "--0": (0, 1), "S0": (0, 1), "Aalpha": (1, 1),
    },
    CaseId.CASE2: {
        "++1": (1, 1), "--1": (1, 1), "S1": (1, 1), "Abeta": (0, 1),
    },
    CaseId.CASE3: {
        "++alpha": (0, 0), "--alpha": (0, 0), "Salpha": (0, 0),
        "++beta": (0, 0), "--beta": (0, 0), "A'beta": (0, 0),
        "A0": (1, 0), "S'1": (1, 0),
    },
}


def families(case) -> tuple[str, ...]:
    """Labels of the free-particle solution families of ``case``."""
    return tuple(_PARITY[CaseId.parse(case)])


def parity_of(case, family: str, J: int) -> ParityLabel:
    """Charge-conjugation and inversion parity of a free-particle family."""
    table = _PARITY[CaseId.parse(case)]
    if family not in table:
        raise KeyError(f"family {family!r} not in {CaseId.parse(case).name}; "
                       f"known: {', '.join(table)}")
    oc, op = table[family]
    return ParityLabel(C=(-1) ** ((J + oc) % 2), P=(-1) ** ((J + op) % 2))
