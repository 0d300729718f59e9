"""
Published reference values the verification suite reproduces.

The tables are plain data; ReferenceTables bundles them so a run can be
pointed at a modified copy (used to check that corruption is caught).
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction as F
from typing import Dict, List, Tuple

# Associated Stirling numbers S_3(k, j), rows k = 3..20, columns j = 1..6
S3_ROWS: Dict[int, Tuple[int, ...]] = {
    3: (1,),
    4: (1,),
    5: (1,),
    6: (1, 10),
    7: (1, 35),
    8: (1, 91),
    9: (1, 210, 280),
    10: (1, 456, 2100),
    11: (1, 957, 10395),
    12: (1, 1969, 42735, 15400),
    13: (1, 4004, 158301, 200200),
    14: (1, 8086, 549549, 1611610),
    15: (1, 16263, 1827826, 10335325, 1401400),
    16: (1, 32631, 5903898, 57962905, 28028000),
    17: (1, 65382, 18682014, 297797500, 333533200),
    18: (1, 130900, 58257810, 1439774336, 3073270200, 190590400),
    19: (1, 261953, 179765973, 6662393738, 24234675465, 5431826400),
    20: (1, 524077, 550478241, 29844199346, 172096749825, 89625135600),
}

# A_k(x), B_k(x) for k = 0..5 as {power: coefficient}
A_TABLE: Dict[int, Dict[int, F]] = {
    0: {0: F(1)},
    1: {1: F(1, 2), 3: F(1, 6)},
    2: {0: F(1, 12), 2: F(3, 8), 4: F(1, 6), 6: F(1, 72)},
    3: {1: F(1, 8), 3: F(47, 144), 5: F(37, 240), 7: F(1, 48), 9: F(1, 1296)},
    4: {
        0: F(1, 288), 2: F(5, 32), 4: F(347, 1152), 6: F(617, 4320),
        8: F(23, 960), 10: F(1, 648), 12: F(1, 31104),
    },
    5: {
        1: F(5, 576), 3: F(79, 432), 5: F(367, 1280), 7: F(32353, 241920),
        9: F(785, 31104), 11: F(37, 17280), 13: F(5, 62208), 15: F(1, 933120),
    },
}

B_TABLE: Dict[int, Dict[int, F]] = {
    0: {},
    1: {0: F(1, 3), 2: F(1, 6)},
    2: {1: F(1, 4), 3: F(11, 72), 5: F(1, 72)},
    3: {0: F(4, 135), 2: F(241, 1080), 4: F(293, 2160), 6: F(13, 648), 8: F(1, 1296)},
    4: {
        1: F(241, 4320), 3: F(341, 1620), 5: F(6377, 51840), 7: F(389, 17280),
        9: F(47, 31104), 11: F(1, 31104),
    },
    5: {
        0: F(-8, 2835), 2: F(14297, 181440), 4: F(7403, 36288), 6: F(9179, 80640),
        8: F(403, 17280), 10: F(107, 51840), 12: F(37, 466560), 14: F(1, 933120),
    },
}

E_LIST: Tuple[F, ...] = (
    F(1, 3),
    F(1, 540),
    F(-25, 6048),
    F(-101, 155520),
    F(3184811, 3695155200),
    F(2745493, 8151736320),
    F(-119937661, 225740390400),
    F(-8325705316049, 24176795811840000),
)

STIRLING_GAMMA: Tuple[F, ...] = (F(1), F(-1, 12), F(1, 288), F(139, 51840), F(-571, 2488320))

# p_4(10) d0(10) - q_4(10), printed to seven figures
D4_AT_10 = 8.682907e-6
# size of A_4(10) d0(10) and B_4(10) in the same example
A4_D0_AT_10 = 4.9637e6

# Dingle coefficients at k = 1 as {power: coefficient}
DINGLE_A1: Dict[int, F] = {1: F(-1), 3: F(-1, 3)}
DINGLE_B1: Dict[int, F] = {0: F(2, 3), 2: F(1, 3)}


def dense(coeffs: Dict[int, F]) -> List[F]:
    """Ascending coefficient list from a {power: coefficient} map."""
    if not coeffs:
        return []
    out = [F(0)] * (max(coeffs) + 1)
    for power, c in coeffs.items():
        out[power] = F(c)
    return out


@dataclass(frozen=True)
class ReferenceTables:
    s3_rows: Dict[int, Tuple[int, ...]] = field(default_factory=lambda: dict(S3_ROWS))
    a_table: Dict[int, Dict[int, F]] = field(default_factory=lambda: {k: dict(v) for k, v in A_TABLE.items()})
    b_table: Dict[int, Dict[int, F]] = field(default_factory=lambda: {k: dict(v) for k, v in B_TABLE.items()})
    e_list: Tuple[F, ...] = E_LIST
    stirling_gamma: Tuple[F, ...] = STIRLING_GAMMA
    d4_at_10: float = D4_AT_10
    a4_d0_at_10: float = A4_D0_AT_10
    dingle_a1: Dict[int, F] = field(default_factory=lambda: dict(DINGLE_A1))
    dingle_b1: Dict[int, F] = field(default_factory=lambda: dict(DINGLE_B1))

    def with_changes(self, **changes) -> "ReferenceTables":
        return replace(self, **changes)


def published_tables() -> ReferenceTables:
    return ReferenceTables()
