"""Equality cases and flat fill-ins.

A triangle that attains equality in the comparison bounds an isometric
copy of its model triangle; the quadrangle criterion upgrades this to
flat parallelograms.  Flat fixtures reconstruct exactly; a quadrangle
wrapped around the branch point of a tree product misses the angle
balance by a wide margin and admits no fill-in.
"""

import math

from lorentzgeo import (
    equality_conditions,
    fill_in_reconstruct,
    geodesic_between,
    quadrangle_rigidity,
    triangle_between,
)
from lorentzgeo.fixtures import product_fixture, space_from_plane_points


def sampled_planar_figure(vertices, segments, subdiv=8):
    coords = list(vertices)
    for a, b in segments:
        for j in range(1, subdiv):
            f = j / subdiv
            coords.append(
                (
                    vertices[a][0] + f * (vertices[b][0] - vertices[a][0]),
                    vertices[a][1] + f * (vertices[b][1] - vertices[a][1]),
                )
            )
    return space_from_plane_points(coords)


print("=" * 72)
print("Planar triangle: every equality condition holds, fill-in is exact")
print("=" * 72)
tri_pts = [(0.0, 0.0), (2.0, 1.0), (4.0, 0.0)]
space = sampled_planar_figure(tri_pts, [(0, 1), (1, 2), (0, 2)])
# interior geodesics from the past vertex to the far side
far = [(2 + 2 * f, 1 - f) for f in [j / 8 for j in range(1, 8)]]
coords = [tuple(c) for c in space.meta["coords"]]
extra = []
for q in far:
    for j in range(1, 8):
        f = j / 8
        extra.append((f * q[0], f * q[1]))
space = space_from_plane_points(list(coords) + extra)
tri = triangle_between(space, 0, 1, 2)
rep = equality_conditions(space, tri)
print(f"  angle gaps per vertex: { {k: f'{v:+.2e}' for k, v in rep.angle_gaps.items()} }")
print(f"  side-separation gap:   {rep.tau_gap_max:.2e} over {rep.checked_points} points")
chains = [geodesic_between(space, 0, int(p)) for p in tri.side_yz.points[1:-1]]
fill = fill_in_reconstruct(space, tri, chains)
print(f"  fill-in: {len(fill.grid_map)} mapped points, max tau error {fill.max_tau_error:.2e}, "
      f"{fill.causal_mismatches} causal mismatches")

print()
print("=" * 72)
print("Tree product: the branch point breaks equality")
print("=" * 72)
space, _, base = product_fixture("tripod", step=0.5, window=8.0, subdiv=2)
T = 33
labels = base.labels
def idx(label, t):
    return labels.index(label) * T + int(round((t + 8) / 0.5))
tri = triangle_between(space, idx("l1", 0.0), idx("l2", 4.0), idx("l3", 8.0))
rep = equality_conditions(space, tri)
print(f"  three-leg triangle angle gaps: { {k: f'{v:+.4f}' for k, v in rep.angle_gaps.items()} }")
print(f"  separations along the long side drift from the model by up to {rep.tau_gap_max:.4f}")
print(f"  equality conditions: i={rep.cond_i} ii={rep.cond_ii} iii={rep.cond_iii} iv={rep.cond_iv}")

print()
print("=" * 72)
print("Quadrangles: angle balance decides flatness")
print("=" * 72)
quad_pts = [(0.0, 0.0), (2.0, 1.0), (6.0, 1.0), (4.0, 0.0)]
flat_space = sampled_planar_figure(quad_pts, [(0, 1), (0, 3), (1, 3), (1, 2), (3, 2), (0, 2)])
flat = quadrangle_rigidity(flat_space, 0, 1, 2, 3)
print(f"  planar parallelogram: angle sum gap {flat.lhs_minus_rhs:+.2e} -> flat={flat.flat}")
print(f"    all four hinge angles = {flat.angles['p1']:.7f} "
      f"(= arccosh(2/sqrt 3) = {math.acosh(2/math.sqrt(3)):.7f})")
print(f"    reconstructed fill-in error {flat.fill_in.max_tau_error:.2e}")

space10, _, _ = product_fixture("tripod", step=0.5, window=10.0)
T = 41
def pidx(x, t):
    return x * T + int(round((t + 10) / 0.5))
branch = quadrangle_rigidity(space10, pidx(1, 0.0), pidx(2, 3.0), pidx(1, 9.0), pidx(3, 6.0))
print(f"  quadrangle around the branch point: angle sum gap {branch.lhs_minus_rhs:+.4f} "
      f"-> flat={branch.flat}")
print("    (three legs involved; the two strip angles 0.458 lose to the two")
print("     wide angles 1.151, so no flat region exists)")
