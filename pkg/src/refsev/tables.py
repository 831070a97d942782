"""Embedded reference tables for the universal series.

Text format, one line per q-order:

    <n>: <e>:<coeff>, <e>:<coeff>, ...

meaning the coefficient of q^n is sum_e coeff * (y^e + y^-e) for e > 0
plus the e = 0 entry once (entries carry the e >= 0 half; the negative
half follows by the y -> 1/y symmetry). Scalar tables list one
integer per order. Transcriptions are guarded by the palindromicity
assertion and by the y = -1 cross-checks against the scalar tables, which
the test suite runs to the full common order.
"""
from __future__ import annotations

from .rationals import QQ
from .ylaurent import YLaurent

# trusted q-orders (exclusive): arithmetic beyond these must be refused
B_TRUSTED = 18
BBAR_TRUSTED = 31
FHAT_TRUSTED = {3: 6, 4: 5}

B1_TEXT = """
0: 0:1
1: 0:-1
2: 1:-1, 0:-3
3: 2:1, 1:10, 0:17
4: 2:-18, 1:-87, 0:-135
5: 3:12, 2:210, 1:728, 0:1061
6: 4:-2, 3:-259, 2:-2102, 1:-5952, 0:-8236
7: 4:162, 3:3606, 2:19668, 1:48317, 0:64253
8: 5:-47, 4:-3789, 3:-41999, 2:-177800, 1:-392361, 0:-505678
9: 6:5, 5:2416, 4:60202, 3:445989, 2:1576410, 1:3197831, 0:4018919
10: 6:-896, 5:-58504, 4:-793194, 3:-4483755, 2:-13818256, 1:-26192369, 0:-32243357
11: 7:176, 6:38236, 5:1017512, 4:9382867, 3:43520558, 2:120325637, 1:215688799, 0:260959201
12: 8:-14, 7:-16393, 6:-944954, 5:-14738959, 4:-103623419, 3:-412518547, 2:-1043940859, 1:-1785764779, 0:-2129062780
13: 8:4384, 7:631224, 6:17534642, 5:190488676, 4:1092093647, 3:3845977628, 2:9041155627, 1:14862430058, 0:17497499443
14: 9:-658, 8:-298228, 7:-15816382, 6:-273455570, 5:-2279829046, 4:-11131917064, 3:-35435770399, 2:-78257451025, 1:-124310761787, 0:-144758147754
15: 10:42, 9:96604, 8:10758628, 7:308060184, 6:3800583626, 5:25834889754, 4:110712006552, 3:323710356925, 2:677516096371, 1:1044598390812, 0:1204824660925
16: 10:-20284, 9:-5452043, 8:-272316274, 7:-5094738491, 6:-48707795806, 5:-281165238614, 4:-1080786159810, 3:-2938608835049, 2:-5869829083826, 1:-8816117002571, 0:-10082791437552
17: 11:2472, 10:2015609, 9:188032406, 8:5506997958, 7:75206548205, 6:588088410636, 5:2967196356618, 4:10400483736235, 3:26552849592007, 2:50907878544033, 1:74707191955540, 0:84801344804750
"""

# the bracket of B_2; the full series is this divided by (1-yq)(1-q/y)
B2_BRACKET_TEXT = """
0: 0:1
1: 0:3
2: 1:-3, 0:-1
3: 2:1, 1:8, 0:18
4: 2:-13, 1:-53, 0:-76
5: 3:7, 2:100, 1:316, 0:455
6: 4:-1, 3:-112, 2:-779, 1:-2076, 0:-2819
7: 4:67, 3:1243, 2:6129, 1:14386, 0:18870
8: 5:-19, 4:-1281, 3:-12417, 2:-48879, 1:-104034, 0:-132579
9: 6:2, 5:822, 4:17542, 3:117829, 2:393703, 1:775411, 0:965540
10: 6:-310, 5:-17206, 4:-207074, 3:-1085712, 2:-3197506, 1:-5913778, 0:-7223539
11: 7:62, 6:11505, 5:267658, 4:2249872, 3:9825927, 2:26163595, 1:45935572, 0:55208836
12: 8:-5, 7:-5076, 6:-253785, 5:-3555348, 4:-23210920, 3:-87929247, 2:-215557414, 1:-362229349, 0:-429395117
13: 8:1397, 7:174456, 6:4304488, 5:42877083, 4:231296838, 3:781220881, 2:1787129788, 1:2892830316, 0:3388742192
14: 9:-215, 8:-85117, 7:-3983060, 6:-62465678, 5:-484877903, 4:-2249516882, 3:-6909207376, 2:-14901830113, 1:-23353834274, 0:-27076007072
15: 10:14, 9:28472, 8:2793096, 7:71942817, 6:818536892, 5:5240193024, 4:21495922606, 3:60931593665, 2:124910088474, 1:190304808803, 0:218642432495
16: 10:-6158, 9:-1462435, 8:-65354234, 7:-1118442331, 6:-9987960061, 5:-54777796045, 4:-202738958803, 3:-536439701989, 2:-1052049129591, 1:-1563445962327, 0:-1781883877192
17: 11:770, 10:558612, 9:46524657, 8:1238412474, 7:15681201140, 6:115681622517, 5:558367283967, 4:1893273288345, 3:4718572145488, 2:8899835406922, 1:12937087920811, 0:14639451592197
"""

B1BAR = [
    1, -1, -1, -1, 3, 1, -22, 67, -42, -319, 1207, -1409, -3916, 20871,
    -34984, -37195, 343984, -760804, -81881, 5390386, -15355174, 8697631,
    79048885, -293748773, 329255395, 1041894580, -5367429980, 8780479642,
    10991380947, -93690763368, 203324385877,
]

B2BAR = [
    1, 1, 2, -1, 4, 2, -11, 24, 4, -122, 313, -162, -1314, 4532, -4746,
    -13943, 68000, -105786, -124968, 1025182, -2139668, -443505, 15157596,
    -41007212, 19514894, 214218876, -755331892, 780656576, 2776494907,
    -13420432234, 20749875130,
]

FHAT_C3_TEXT = """
0: 0:1
1: 0:-3
2: 1:1, 0:4
3: 1:-10, 0:-18
4: 2:6, 1:70, 0:115
5: 3:-1, 2:-94, 1:-473, 0:-721
"""

FHAT_C4_TEXT = """
0: 0:1
1: 0:-4
2: 1:2, 0:9
3: 1:-22, 0:-42
4: 2:14, 1:164, 0:273
"""


def parse_symmetric_table(text: str) -> dict:
    """Parse the documented text format into {q-order: YLaurent}."""
    out = {}
    for line in text.strip().splitlines():
        head, _, body = line.partition(":")
        n = int(head)
        terms = {}
        for item in body.split(","):
            e_s, _, c_s = item.strip().partition(":")
            e, cval = int(e_s), QQ(c_s)
            terms[2 * e] = cval
            if e > 0:
                terms[-2 * e] = cval
        out[n] = YLaurent(terms)
    return out


def render_symmetric_table(coeffs: dict) -> str:
    """Inverse of parse_symmetric_table (for the export command)."""
    lines = []
    for n in sorted(coeffs):
        c = coeffs[n]
        items = []
        for e2 in sorted((k for k in c.terms if k >= 0), reverse=True):
            items.append(f"{e2 // 2}:{c.terms[e2]}")
        lines.append(f"{n}: " + (", ".join(items) if items else "0:0"))
    return "\n".join(lines)


B1_TABLE = parse_symmetric_table(B1_TEXT)
B2_BRACKET_TABLE = parse_symmetric_table(B2_BRACKET_TEXT)
FHAT_TABLES = {
    3: parse_symmetric_table(FHAT_C3_TEXT),
    4: parse_symmetric_table(FHAT_C4_TEXT),
}
