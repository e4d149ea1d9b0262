"""Tree constants and basis binomials as printed, transcribed verbatim.

Node numbers follow the translated-network enumeration: linkage classes in
order of their smallest node, nodes ascending inside a class. Each basis
entry ``(i, j, text)`` is the binomial for the pair ``K_i``, ``K_j``.

Printed entries that disagree with the spanning-tree oracle are listed in
CORRECTED_* together with the corrected form and the reason; everything
else must reproduce exactly.
"""

TREE_CONSTANTS = {
    1: {
        1: '(k2 + k3)*k4*k6',
        2: 'k1*k4*k6',
        3: 'k1*k3*(k5 + k6)',
        4: 'k1*k3*k4',
        5: '(k8 + k9)*k16*k18',
        6: 'k7*k16*k18',
        7: 'k7*k9*(k17 + k18)',
        8: 'k7*k9*k16',
        9: '(k11 + k12)*k13*k15',
        10: 'k10*k13*k15',
        11: 'k10*k12*(k14 + k15)',
        12: 'k10*k12*k13',
        13: '(k20 + k21)*k28*k30',
        14: 'k19*k28*k30',
        15: 'k19*k21*(k29 + k30)',
        16: 'k19*k21*k28',
        17: '(k23 + k24)*k25*k27',
        18: 'k22*k25*k27',
        19: 'k22*k24*(k26 + k27)',
        20: 'k23*k24*k25',
    },
    2: {
        1: '(k2 + k3)*k4*k6',
        2: 'k1*k4*k6',
        3: 'k1*k3*(k5 + k6)',
        4: 'k1*k3*k4',
        5: '(k8 + k9)*k16*k18',
        6: 'k7*k18*k16',
        7: 'k7*k9*(k17 + k18)',
        8: 'k7*k9*k16',
        9: '(k11 + k12)*k13*k15',
        10: 'k10*k13*k15',
        11: 'k10*k12*(k14 + k15)',
        12: 'k10*k12*k13',
        13: '(k20 + k21)*k28*k30',
        14: 'k19*k28*k30',
        15: 'k19*k21*(k29 + k30)',
        16: 'k19*k21*k28',
        17: '(k23 + k24)*k25*k28',
        18: 'k22*k25*k27',
        19: 'k22*k24*(k26 + k27)',
        20: 'k23*k24*k25',
    },
    3: {
        1: '(k2 + k3)*k4*k6',
        2: 'k1*k4*k6',
        3: 'k1*k3*(k5 + k6)',
        4: 'k1*k3*k4',
        5: '(k8 + k9)*k16*k18',
        6: 'k7*k18*k16',
        7: 'k7*k9*(k17 + k18)',
        8: 'k7*k9*k16',
        9: '(k11 + k12)*k13*k15',
        10: 'k10*k13*k15',
        11: 'k10*k12*(k14 + k15)',
        12: 'k10*k12*k13',
        13: '(k20 + k21)*k28*k30',
        14: 'k19*k28*k30',
        15: 'k19*k21*(k29 + k30)',
        16: 'k19*k21*k28',
        17: '(k23 + k24)*k25*k27',
        18: 'k22*k25*k27',
        19: 'k22*k24*(k26 + k27)',
        20: 'k23*k24*k25',
        21: '(k32 + k33)*k34*k36',
        22: 'k31*k34*k36',
        23: 'k31*k33*(k35 + k36)',
        24: 'k31*k33*k34',
    },
}

BASIS = {
    1: [
        (1, 2, '(k2 + k3)*x13 - k1*x1*x9'),
        (3, 4, '(k5 + k6)*x18 - k4*x2*x10'),
        (4, 2, 'k3*x13 - k6*x18'),
        (5, 6, '(k8 + k9)*x14 - k7*x2*x3'),
        (7, 8, '(k17 + k18)*x20 - k16*x4*x11'),
        (8, 6, 'k9*x14 - k18*x20'),
        (9, 10, '(k11 + k12)*x15 - k10*x2*x4'),
        (11, 12, '(k14 + k15)*x19 - k13*x5*x11'),
        (12, 10, 'k12*x15 - k15*x19'),
        (13, 14, '(k20 + k21)*x16 - k19*x5*x6'),
        (15, 16, '(k29 + k30)*x22 - k28*x2*x12'),
        (16, 14, 'k21*x16 - k30*x22'),
        (17, 18, '(k23 + k24)*x17 - k22*x5*x7'),
        (19, 20, '(k26 + k27)*x21 - k25*x8*x12'),
        (20, 18, 'k24*x17 - k27*x21'),
    ],
    2: [
        (1, 2, '(k2 + k3)*x12 - k1*x1*x9'),
        (3, 4, '(k5 + k6)*x17 - k4*x2*x10'),
        (4, 2, 'k3*x12 - k6*x17'),
        (5, 6, '(k8 + k9)*x13 - k7*x2*x3'),
        (7, 8, '(k17 + k18)*x19 - k16*x4*x11'),
        (8, 6, 'k9*x13 - k18*x19'),
        (9, 10, '(k11 + k12)*x14 - k10*x2*x4'),
        (11, 12, '(k14 + k15)*x18 - k13*x5*x11'),
        (12, 10, 'k12*x14 - k14*x18'),
        (13, 14, '(k20 + k21)*x15 - k19*x5*x6'),
        (15, 16, '(k29 + k30)*x21 - k28*x7*x11'),
        (16, 14, 'k21*x15 - k30*x21'),
        (17, 18, '(k23 + k24)*x16 - k22*x5*x7'),
        (19, 20, '(k26 + k27)*x20 - k25*x8*x11'),
        (20, 18, 'k24*x16 - k27*x20'),
    ],
    3: [
        (1, 2, '(k2 + k3)*x13 - k1*x1*x9'),
        (3, 4, '(k5 + k6)*x18 - k4*x2*x10'),
        (4, 2, 'k3*x13 - k6*x18'),
        (21, 22, '(k32 + k33)*x23 - k31*x2*x8'),
        (23, 24, '(k35 + k36)*x24 - k34*x12*x25'),
        (24, 22, 'k33*x23 - k36*x24'),
        (5, 6, '(k8 + k9)*x14 - k7*x2*x3'),
        (7, 8, '(k17 + k18)*x20 - k16*x4*x11'),
        (8, 6, 'k9*x14 - k18*x20'),
        (9, 10, '(k11 + k12)*x15 - k10*x2*x4'),
        (11, 12, '(k14 + k15)*x19 - k13*x5*x11'),
        (12, 10, 'k12*x15 - k15*x19'),
        (13, 14, '(k20 + k21)*x16 - k19*x5*x6'),
        (15, 16, '(k29 + k30)*x22 - k28*x7*x11'),
        (16, 14, 'k21*x16 - k30*x22'),
        (17, 18, '(k23 + k24)*x17 - k22*x5*x7'),
        (19, 20, '(k26 + k27)*x21 - k25*x8*x11'),
        (20, 18, 'k24*x17 - k27*x21'),
    ],
}


# (network, node) -> (corrected tree constant, reason)
CORRECTED_TREE_CONSTANTS = {
    (1, 20): ("k22*k24*k25", "printed k23; brute force gives k22, and the printed k24*x17 - k27*x21 line needs K20/K18 = k24/k27"),
    (2, 17): ("(k23 + k24)*k25*k27", "printed ending k28; the rate out of the merged node is k27 as in the other two networks"),
    (2, 20): ("k22*k24*k25", "printed k23; same slip as network 1"),
    (3, 20): ("k22*k24*k25", "printed k23; same slip as network 1"),
}

# (network, position in BASIS list) -> (corrected text, reason)
CORRECTED_BASIS = {
    (1, 10): ("(k29 + k30)*x22 - k28*x7*x12", "kinetic complex of node 15 is X7 + X12, not X2 + X12"),
    (2, 8): ("k12*x14 - k15*x18", "printed k14; K12/K10 from the same table reduce to k12/k15"),
}
