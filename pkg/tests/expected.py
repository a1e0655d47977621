"""Frozen expected values, computed by hand from the building data."""

# catalog id -> (K^2, p_g, q) at default parameters
INVARIANTS = {
    "z2sq-delpezzo6-anticanonical": (6, 3, 0),
    "z2sq-delpezzo7-anticanonical": (7, 3, 0),
    "z2sq-delpezzo8-anticanonical": (8, 3, 0),
    "z2sq-quadric-anticanonical": (8, 3, 0),
    "z2sq-plane-anticanonical": (9, 3, 0),
    "z2-4-plane-eight-lines": (16, 3, 0),
    "z2-double-plane": (2, 3, 0),
    "z2-genus3-times-line": (16, 4, 3),
    "z3sq-quadric-fibres": (40, 4, 0),
    "z3sq-delpezzo6-pencils": (54, 8, 0),
    "z5sq-plane-five-lines": (25, 4, 0),
    "z5-plane-quintic": (5, 4, 0),
    "z3cubed-plane-six-lines": (27, 5, 0),
    "z3sq-plane-two-triangles": (9, 5, 0),
    # the building data give p_g = 2mn + 3
    "z2cubed-quadric": (64, 11, 0),
}

# the value quoted in the literature for the Z2^3 cover at m = n = 2
Z2CUBED_QUOTED = (64, 7, 0)

# catalog id -> (generators of gamma, quotient groups, p_g of quotient, degree, case)
CANONICAL = {
    "z3sq-quadric-fibres": ([(1, 1)], [("D01", "D12", "D20"), ("D02", "D10", "D21")], 4, 6, "A"),
    "z3sq-delpezzo6-pencils": ([(1, 2)], [("D01", "D10", "D22")], 8, 3, "B"),
    "z5sq-plane-five-lines": ([(0, 1)], [("D10", "D11", "D12", "D13", "D14")], 4, 5, "B"),
    "z3cubed-plane-six-lines": ([(0, 0, 1)], [("D010", "D011", "D012"), ("D100", "D101", "D102")], 5, 3, "B"),
    "z2cubed-quadric": ([(0, 0, 1)], [("D100", "D101"), ("D110", "D111")], 11, 2, "B"),
}

# generating pair id -> list of (lhs coefficient of K2_Sigma, rhs (a, b) meaning a*pg + b), same for K2_X
PAIR_IDENTITIES = {
    "gp-kummer-beauville": ((1, 3, -7), (1, 6, -14)),
    "gp-theta-double": ((5, 16, -32), (5, 32, -64)),
    "gp-symmetric-square": ((7, 24, -72), (7, 48, -144)),
    "gp-dual-cubic-abelian": ((1, 2, -4), (1, 6, -12)),
}

SLOPES = {
    "gp-kummer-beauville": (6, 1),
    "gp-theta-double": (32, 5),
    "gp-symmetric-square": (48, 7),
    "gp-dual-cubic-abelian": (6, 1),
}

# case-B largest p_g per degree, computed from the case-B inequality with q = 0
CASE_B_MAX_PG = {4: 12, 5: 7, 6: 5, 7: 4, 8: 4, 9: 4}
CASE_B_STATED = {4: 9, 5: 7, 6: 5, 7: 4, 8: 4, 9: 4}
