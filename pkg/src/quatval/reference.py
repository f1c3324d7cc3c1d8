"""Published tables used as verification targets.

Nothing here feeds the computations; every entry is compared against a
value computed from scratch.  Scalars use the text syntax of
:meth:`ExactScalar.parse` ("-3/14·π^2", "64/35·π^(-1)").
"""

from __future__ import annotations

from typing import Dict, Tuple

from .scalars import ExactScalar

__all__ = [
    "DERIVATION_LAMBDA",
    "DERIVATION_V",
    "KLAIN",
    "GLOBALIZATION",
    "FOURIER",
    "PRODUCTS",
    "PD_VALUES",
    "KINFORM_TKN",
    "TK_TO_PHI",
    "KINEMATIC_PHI",
    "TS_EXPANSIONS",
    "PHI_EXPANSIONS",
    "PRINTED_S_PHI",
    "OMEGA_TABLE",
    "CURV_TABLE",
    "VAL_TABLE",
    "CURV_DIMS",
    "VAL_DIMS",
    "scalar",
]


def scalar(text: str) -> ExactScalar:
    return ExactScalar.parse(text)


# L Lambda_{k,i} = sum_j c_j Lambda_{k-1,j}
DERIVATION_LAMBDA: Dict[Tuple[int, int], Dict[int, str]] = {
    (1, 1): {1: "3"},
    (1, 2): {1: "2"},
    (2, 1): {1: "2"},
    (2, 2): {1: "-4", 2: "12"},
    (2, 3): {1: "2", 2: "-2"},
    (2, 4): {1: "-4/3", 2: "2"},
    (3, 1): {1: "1"},
    (3, 2): {1: "-10", 2: "8", 4: "-36"},
    (3, 3): {1: "16", 2: "-12", 3: "60", 4: "144"},
    (3, 4): {1: "-32/3", 2: "34/3", 3: "-30", 4: "-96"},
    (3, 5): {2: "6", 3: "-30", 4: "-72"},
    (3, 6): {1: "-4/3", 2: "2/3", 4: "-3"},
    (3, 7): {1: "-8/3", 2: "4/3", 4: "-6"},
    (4, 1): {1: "-16", 2: "4", 6: "-36"},
    (4, 2): {1: "6", 2: "-4", 3: "2", 4: "3", 6: "36"},
    (4, 3): {1: "44", 2: "-16", 3: "4", 4: "6", 6: "144"},
    (4, 4): {2: "12", 3: "-3", 4: "-18", 5: "12", 6: "-72", 7: "36"},
    (4, 5): {4: "18", 5: "-16", 7: "-72"},
    (4, 6): {1: "-8", 2: "4/3", 6: "-44", 7: "16"},
    (4, 7): {2: "-4/3", 3: "1/2", 4: "3", 5: "-2", 6: "38", 7: "-22"},
    (5, 1): {1: "-5", 2: "7", 3: "-3"},
    (5, 2): {1: "18", 2: "-30", 3: "18", 4: "8", 6: "36", 7: "36"},
    (5, 3): {2: "36", 3: "-18", 4: "-10", 5: "3", 6: "-72", 7: "-72"},
    (5, 4): {1: "-4", 2: "6", 3: "-3", 4: "-2/3", 6: "-3", 7: "-3"},
    (6, 1): {1: "-12", 2: "4", 4: "36"},
    (6, 2): {1: "36", 2: "-4", 3: "2", 4: "-72"},
    (7, 1): {1: "2", 2: "1"},
}

# L v_i^k = sum_j c_j v_j^{k-1}; degree 0 maps to zero
DERIVATION_V: Dict[Tuple[int, int], Dict[int, str]] = {
    (1, 1): {1: "7"}, (1, 2): {},
    (2, 1): {1: "-6"}, (2, 2): {2: "4/3"}, (2, 3): {2: "16/63"}, (2, 4): {},
    (3, 1): {1: "-5/2"}, (3, 2): {3: "-42"}, (3, 3): {3: "-3"}, (3, 4): {4: "270"},
    (3, 5): {4: "-3"}, (3, 6): {}, (3, 7): {},
    (4, 1): {1: "-4"}, (4, 2): {}, (4, 3): {3: "-18"}, (4, 4): {}, (4, 5): {5: "46"},
    (4, 6): {6: "-24"}, (4, 7): {7: "-80"},
    (5, 1): {1: "-6"}, (5, 2): {}, (5, 3): {2: "-68/9", 3: "-17/9"}, (5, 4): {4: "180/23", 5: "-15/23"},
    (6, 1): {1: "2"}, (6, 2): {2: "-2016/17", 3: "-126/17"},
    (7, 1): {1: "1"},
}

# Kl(glob v_i^k) = factor * sum_j c_j f_{min(k,8-k), j}
KLAIN: Dict[Tuple[int, int], Tuple[str, Dict[int, int]]] = {
    (0, 1): ("-2·π^4", {0: 1}),
    (1, 1): ("-32/5·π^3", {0: 1}),
    (1, 2): ("0", {}),
    (2, 1): ("6·π^3", {0: 1}),
    (2, 2): ("-1/12·π^3", {1: 7, 0: -3}),
    (2, 3): ("-1/63·π^3", {1: 7, 0: -3}),
    (2, 4): ("0", {}),
    (3, 1): ("-8·π^2", {0: 1}),
    (3, 2): ("8/15·π^2", {1: 7, 0: -9}),
    (3, 3): ("4/105·π^2", {1: 7, 0: -9}),
    (3, 4): ("-8/21·π^2", {2: 16, 1: -17, 0: 15}),
    (3, 5): ("4/945·π^2", {2: 16, 1: -17, 0: 15}),
    (3, 6): ("0", {}),
    (3, 7): ("0", {}),
    (4, 1): ("6·π^2", {0: 1}),
    (4, 2): ("0", {}),
    (4, 3): ("-3/14·π^2", {1: 7, 0: -18}),
    (4, 4): ("0", {}),
    (4, 5): ("23/270·π^2", {3: 20, 2: 8, 1: -43, 0: 66}),
    (4, 6): ("2/5·π^2", {2: 6, 1: -1}),
    (4, 7): ("-1/54·π^2", {4: 63, 3: -161, 2: -194, 1: 226, 0: -210}),
    (5, 1): ("-24·π", {0: 1}),
    (5, 2): ("0", {}),
    (5, 3): ("34/63·π", {1: 7, 0: -9}),
    (5, 4): ("-2/9·π", {2: 16, 1: -17, 0: 15}),
    (6, 1): ("-12·π", {0: 1}),
    (6, 2): ("-3·π", {1: 7, 0: -3}),
    (7, 1): ("-12", {0: 1}),
}

# glob v_i^k = c * (element of the t-kappa-nu basis), with the printed module
GLOBALIZATION: Dict[Tuple[int, int], Tuple[str, str, str]] = {
    (0, 1): ("-2·π^4", "χ", "Γ0000"),
    (1, 1): ("-16/5·π^4", "t", "Γ0000"),
    (1, 2): ("0", "", "Γ2200"),
    (2, 1): ("3·π^4", "t²", "Γ0000"),
    (2, 2): ("-1/12·π^3", "κ₂", "Γ2200"),
    (2, 3): ("-1/63·π^3", "κ₂", "Γ2200"),
    (2, 4): ("0", "", "Γ4220"),
    (3, 1): ("-π^4", "t³", "Γ0000"),
    (3, 2): ("2/5·π^3", "tκ₂", "Γ2200"),
    (3, 3): ("1/35·π^3", "tκ₂", "Γ2200"),
    (3, 4): ("-8/21·π^2", "ν₃", "Γ4220"),
    (3, 5): ("4/945·π^2", "ν₃", "Γ4220"),
    (3, 6): ("0", "", "Γ2222"),
    (3, 7): ("0", "", "Γ622-2"),
    (4, 1): ("1/2·π^4", "t⁴", "Γ0000"),
    (4, 2): ("0", "", "Γ2200"),
    (4, 3): ("-3/14·π^3", "t²κ₂", "Γ2200"),
    (4, 4): ("0", "", "Γ4220"),
    (4, 5): ("46/135·π^2", "tν₃", "Γ4220"),
    (4, 6): ("2/5·π^2", "κ₄", "Γ2222"),
    (4, 7): ("-1/54·π^2", "ν₄", "Γ622-2"),
    (5, 1): ("-3/8·π^4", "t⁵", "Γ0000"),
    (5, 2): ("0", "", "Γ2200"),
    (5, 3): ("85/504·π^3", "t³κ₂", "Γ2200"),
    (5, 4): ("-7/18·π^2", "t²ν₃", "Γ4220"),
    (6, 1): ("-1/10·π^4", "t⁶", "Γ0000"),
    (6, 2): ("-3/4·π^3", "t⁴κ₂", "Γ2200"),
    (7, 1): ("-1/64·π^4", "t⁷", "Γ0000"),
}

FOURIER: Dict[str, Tuple[str, str]] = {
    "t": ("1/384·π^3", "t⁷"),
    "t²": ("1/60·π^2", "t⁶"),
    "κ₂": ("1/4·π^2", "t⁴κ₂"),
    "t³": ("1/8·π", "t⁵"),
    "tκ₂": ("5/12·π", "t³κ₂"),
    "ν₃": ("7/4·π", "t²ν₃"),
}

# products in the t-kappa-nu basis; absent pairs of the 4x4 table are zero
PRODUCTS: Dict[Tuple[str, str], Dict[str, str]] = {
    ("κ₂", "κ₂"): {"t⁴": "8/5·π^2", "t²κ₂": "-59/8·π", "tν₃": "-49/30", "κ₄": "98/5"},
    ("κ₂", "κ₄"): {"t⁴κ₂": "49/4·π^2"},
    ("κ₂", "ν₃"): {"t³κ₂": "63/32·π^2", "t²ν₃": "-743/24·π"},
    ("κ₂", "ν₄"): {},
    ("κ₄", "κ₄"): {"t⁸": "π^4"},
    ("κ₄", "ν₃"): {},
    ("κ₄", "ν₄"): {},
    ("ν₃", "ν₃"): {"t⁶": "-27/14·π^4", "t⁴κ₂": "33435/896·π^3"},
    ("ν₃", "ν₄"): {},
    ("ν₄", "ν₄"): {"t⁸": "864·π^4"},
}

# nonzero pd pairings of the t-kappa-nu basis
PD_VALUES: Dict[Tuple[str, str], str] = {}
_T = ("χ", "t", "t²", "t³", "t⁴", "t⁵", "t⁶", "t⁷", "t⁸")
for _i in range(9):
    PD_VALUES[_T[_i], _T[8 - _i]] = "1680·π^(-4)"
_TK = ("κ₂", "tκ₂", "t²κ₂", "t³κ₂", "t⁴κ₂")
for _i in range(5):
    PD_VALUES[_TK[_i], _TK[4 - _i]] = "2688·π^(-2)"
_TN = ("ν₃", "tν₃", "t²ν₃")
for _i in range(3):
    PD_VALUES[_TN[_i], _TN[2 - _i]] = "-3240"
PD_VALUES["κ₄", "κ₄"] = "1680"
PD_VALUES["ν₄", "ν₄"] = "1451520"

# k(chi) in the t-kappa-nu basis: coefficient of a (.) b
KINFORM_TKN: Dict[Tuple[str, str], str] = {}
for _i in range(4):
    KINFORM_TKN[_T[_i], _T[8 - _i]] = "1/840·π^4"
KINFORM_TKN["t⁴", "t⁴"] = "1/1680·π^4"
KINFORM_TKN["κ₂", "t⁴κ₂"] = "1/1344·π^2"
KINFORM_TKN["tκ₂", "t³κ₂"] = "1/1344·π^2"
KINFORM_TKN["t²κ₂", "t²κ₂"] = "1/2688·π^2"
KINFORM_TKN["ν₃", "t²ν₃"] = "-1/1620"
KINFORM_TKN["tν₃", "tν₃"] = "-1/3240"
KINFORM_TKN["κ₄", "κ₄"] = "1/1680"
KINFORM_TKN["ν₄", "ν₄"] = "1/1451520"

# t-kappa-nu elements in the phi basis (t^i is handled by the closed formula)
TK_TO_PHI: Dict[str, Dict[str, str]] = {
    "κ₂": {"φ2,1": "7", "φ2,0": "-3"},
    "tκ₂": {"φ3,1": "28/3·π^(-1)", "φ3,0": "-12·π^(-1)"},
    "t²κ₂": {"φ4,1": "7·π^(-1)", "φ4,0": "-18·π^(-1)"},
    "t³κ₂": {"φ5,1": "112/5·π^(-2)", "φ5,0": "-144/5·π^(-2)"},
    "t⁴κ₂": {"φ6,1": "28·π^(-2)", "φ6,0": "-12·π^(-2)"},
    "ν₃": {"φ3,2": "16", "φ3,1": "-17", "φ3,0": "15"},
    "tν₃": {"φ4,3": "5", "φ4,2": "2", "φ4,1": "-43/4", "φ4,0": "33/2"},
    "t²ν₃": {"φ5,2": "64/7·π^(-1)", "φ5,1": "-68/7·π^(-1)", "φ5,0": "60/7·π^(-1)"},
    "κ₄": {"φ4,2": "6", "φ4,1": "-1"},
    "ν₄": {"φ4,4": "63", "φ4,3": "-161", "φ4,2": "-194", "φ4,1": "226", "φ4,0": "-210"},
}

# k(chi) in the phi basis: coefficient of a (.) b, as printed
KINEMATIC_PHI: Dict[Tuple[str, str], str] = {
    ("φ0,0", "φ8,0"): "2",
    ("φ1,0", "φ7,0"): "64/35·π^(-1)",
    ("φ2,0", "φ6,0"): "5/16",
    ("φ2,0", "φ6,1"): "-1/16",
    ("φ2,1", "φ6,0"): "-1/16",
    ("φ2,1", "φ6,1"): "7/48",
    ("φ3,0", "φ5,0"): "248/315·π^(-1)",
    ("φ3,0", "φ5,1"): "-104/945·π^(-1)",
    ("φ3,0", "φ5,2"): "-16/189·π^(-1)",
    ("φ3,1", "φ5,0"): "-104/945·π^(-1)",
    ("φ3,1", "φ5,1"): "152/2835·π^(-1)",
    ("φ3,1", "φ5,2"): "272/2835·π^(-1)",
    ("φ3,2", "φ5,0"): "-16/189·π^(-1)",
    ("φ3,2", "φ5,1"): "272/2835·π^(-1)",
    ("φ3,2", "φ5,2"): "-256/2835·π^(-1)",
    ("φ4,0", "φ4,0"): "293/1920",
    ("φ4,0", "φ4,1"): "-143/2880",
    ("φ4,0", "φ4,2"): "103/2880",
    ("φ4,0", "φ4,3"): "-5/1152",
    ("φ4,0", "φ4,4"): "-7/384",
    ("φ4,1", "φ4,1"): "317/17280",
    ("φ4,1", "φ4,2"): "-469/8640",
    ("φ4,1", "φ4,3"): "-293/17280",
    ("φ4,1", "φ4,4"): "113/5760",
    ("φ4,2", "φ4,2"): "797/17280",
    ("φ4,2", "φ4,3"): "637/17280",
    ("φ4,2", "φ4,4"): "-97/5760",
    ("φ4,3", "φ4,3"): "701/69120",
    ("φ4,3", "φ4,4"): "-161/11520",
    ("φ4,4", "φ4,4"): "7/2560",
}

# s, v, u in the t-kappa-nu basis
TS_EXPANSIONS: Dict[str, Dict[str, str]] = {
    "s": {"t²": "3/14·π", "κ₂": "1/56"},
    "v": {"t³": "1/35·π^2", "tκ₂": "3/280·π", "ν₃": "-1/630"},
    "u": {"t⁴": "1/140·π^2", "t²κ₂": "1/112·π", "tν₃": "-1/180", "κ₄": "1/140", "ν₄": "1/10080"},
}

# t, s, v, u in the phi basis; s uses the corrected index (see PRINTED_S_PHI)
PHI_EXPANSIONS: Dict[str, Dict[str, str]] = {
    "t": {"φ1,0": "2·π^(-1)"},
    "s": {"φ2,0": "3/8", "φ2,1": "1/8"},
    "v": {"φ3,0": "8/105", "φ3,1": "8/63", "φ3,2": "-8/315"},
    "u": {"φ4,0": "-3/16", "φ4,1": "11/80", "φ4,2": "1/80", "φ4,3": "-7/160", "φ4,4": "1/160"},
}

# as printed: the second index does not exist in degree 2
PRINTED_S_PHI: Dict[str, str] = {"φ2,0": "3/8", "φ2,2": "1/8"}

# Sp(1)-modules of Sp(2)-invariant horizontal forms of bidegree (k, 7-k) and (k-1, 6-k);
# rows k and 7-k agree
OMEGA_TABLE: Dict[int, Tuple[str, str]] = {
    0: ("V0", "0"),
    1: ("2V0+2V2+V4", "2V2"),
    2: ("7V0+8V2+7V4+V6", "3V0+7V2+3V4+V6"),
    3: ("12V0+18V2+14V4+4V6+V8", "5V0+15V2+8V4+3V6"),
}

CURV_TABLE: Dict[int, str] = {
    0: "V0", 1: "2V0+V4", 2: "4V0+V2+4V4", 3: "7V0+3V2+6V4+V6+V8",
    4: "7V0+3V2+6V4+V6+V8", 5: "4V0+V2+4V4", 6: "2V0+V4", 7: "V0", 8: "V0",
}

VAL_TABLE: Dict[int, str] = {
    0: "V0", 1: "V0", 2: "2V0+V4", 3: "3V0+2V4", 4: "5V0+3V4+V8",
    5: "3V0+2V4", 6: "2V0+V4", 7: "V0", 8: "V0",
}

CURV_DIMS = (1, 2, 4, 7, 7, 4, 2, 1, 1)
VAL_DIMS = (1, 1, 2, 3, 5, 3, 2, 1, 1)
