"""Seeded generator of solvable building data over the plane and the quadric."""

from candeg.abgroup import GroupSpec, generate
from candeg.cover import BranchComponent, BuildingData
from candeg.picard import projective_plane, quadric

P2 = projective_plane()
Q = quadric()
GROUPS = [(2,), (3,), (4,), (5,), (7,), (2, 2), (2, 4), (3, 3), (2, 2, 2), (4, 4),
          (3, 9), (9, 9), (2, 2, 2, 2), (3, 3, 3), (2, 6), (6, 6)]


def random_building_data(rng):
    G = GroupSpec(rng.choice(GROUPS))
    S = rng.choice([P2, Q])
    e = G.exponent
    elements = [v for v in G.elements() if any(v)]
    branch = []
    # multiples of the exponent keep every reduced relation divisible
    for i in range(rng.randint(1, 6)):
        v = rng.choice(elements)
        coeffs = [e * rng.randint(0, 2) for _ in range(S.rank)]
        if not any(coeffs):
            coeffs[0] = e
        branch.append(BranchComponent(f"D{i}", v, S.cls(*coeffs)))
    # keep the cover connected: the inertia elements must generate G
    extra = 0
    while generate(G, [c.v for c in branch]).size < G.size:
        v = rng.choice(elements)
        branch.append(BranchComponent(f"E{extra}", v, S.cls(*([e] * S.rank))))
        extra += 1
    return BuildingData.from_reduced(S, G, branch)
