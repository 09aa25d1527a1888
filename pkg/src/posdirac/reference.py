"""Published reference tables for positronium levels, kept as printed strings.

Values stay as strings so the number of printed decimals, and therefore
the half-ULP comparison tolerance, is recoverable.  Table 1 lists Dirac
energies from a quadruple-precision finite-element calculation that this
package does not attempt to regenerate; they are input data for the
Dirac-Pauli difference fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from .angular import QuantumNumbers

__all__ = ["Table1Row", "Table2Row", "TABLE1", "TABLE2", "half_ulp"]


@dataclass(frozen=True)
class Table1Row:
    state: QuantumNumbers
    case: int
    ED: str
    EP: str
    diff_mhz: str


@dataclass(frozen=True)
class Table2Row:
    state: QuantumNumbers
    EC_nano: str
    EB_nano: str
    EPprime: str


def half_ulp(text: str) -> float:
    """Half a unit in the last printed decimal place of ``text``."""
    exp = Decimal(text.strip()).as_tuple().exponent
    return 0.5 * 10.0**exp


_T1 = """\
1 0 0 0|1|-0.24999750414752|-0.24999750253077|-10.6377
1 0 1 1|3|-0.24999750363633|-0.24999750253077|-7.2742
2 0 0 0|1|-0.06249984411014|-0.06249984390817|-1.3289
2 0 1 1|3|-0.06249984404437|-0.06249984390817|-0.8962
2 1 0 1|1|-0.06250012140376|-0.06250012140475|0.0066
2 1 1 0|3|-0.06250039890481|-0.06250039890133|-0.0229
2 1 1 1|2|-0.06250026015303|-0.06250026015304|0.0001
2 1 1 2|3|-0.06249998265670|-0.06249998265646|-0.0016
3 0 0 0|1|-0.02777774700471|-0.02777774694482|-0.3941
3 0 1 1|3|-0.02777774698512|-0.02777774694482|-0.2651
3 1 0 1|1|-0.02777782916571|-0.02777782916603|0.0021
3 1 1 0|3|-0.02777791138816|-0.02777791138724|-0.0060
3 1 1 1|2|-0.02777787027658|-0.02777787027664|0.0004
3 1 1 2|3|-0.02777778805552|-0.02777778805543|-0.0006
3 2 0 2|1|-0.02777779627754|-0.02777779627755|0.0001
3 2 1 1|3|-0.02777782094403|-0.02777782094391|-0.0007
3 2 1 2|2|-0.02777780449968|-0.02777780449967|-0.0001
3 2 1 3|3|-0.02777777983331|-0.02777777983331|-0.0000"""

_T2 = """\
1 0 0 0|2497.46923|-19979.75385|-0.25001748228462
1 0 1 1|2497.46923|-2219.97265|-0.24998640266752
2 0 0 0|156.09183|-2913.71410|-0.06250275762228
2 0 1 1|156.09183|-693.74145|-0.06249887267014
2 1 0 1|-121.75404|-416.24487|-0.06250053764962
2 1 1 0|-398.90134|-1248.73462|-0.06250164763595
2 1 1 1|-260.15345|-554.99316|-0.06250081514621
2 1 1 2|17.34354|-166.49795|-0.06250014915441
3 0 0 0|30.83295|-904.43330|-0.02777865137813
3 0 1 1|30.83295|-246.66363|-0.02777750028120
3 1 0 1|-51.38826|-164.44242|-0.02777799360845
3 1 1 0|-133.60947|-411.10605|-0.02777832249329
3 1 1 1|-92.49886|-205.55302|-0.02777807582966
3 1 1 2|-10.27765|-90.44333|-0.02777787849876
3 2 0 2|-18.49977|-65.77697|-0.02777786205452
3 2 1 1|-43.16613|-123.33181|-0.02777794427573
3 2 1 2|-26.72189|-73.99909|-0.02777787849876
3 2 1 3|-2.05553|-35.23766|-0.02777781507097"""


def _state(text: str) -> QuantumNumbers:
    return QuantumNumbers(*map(int, text.split()))


TABLE1 = tuple(Table1Row(_state(q), int(c), ed, ep, d)
               for q, c, ed, ep, d in (ln.split("|") for ln in _T1.splitlines()))
TABLE2 = tuple(Table2Row(_state(q), ec, eb, ep)
               for q, ec, eb, ep in (ln.split("|") for ln in _T2.splitlines()))
