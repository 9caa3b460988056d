"""Tour of the two-dimensional Lorentzian model spaces.

Walks through the closed-form toolkit: time separation in the Minkowski
plane, the law-of-cosines solvers across the three curvature regimes, the
planar angle-sum identity, the first-variation difference quotient, and
the de Sitter quadric oracle.
"""

import math

from lorentzgeo import (
    Kappa,
    ModelTriangle,
    SidePosition,
    angle_from_sides,
    angle_sum_defect,
    comparison_point_tau,
    ds_realize_triangle,
    ds_tau,
    fvf_model,
    polar_chronology,
    second_inequality_margin,
    side_from_hinge,
    tau_plane,
)

print("=" * 72)
print("Minkowski plane separations")
print("=" * 72)
for p, q in [((0, 0), (2, 1)), ((0, 0), (1, 1)), ((0, 0), (1, 2))]:
    tau, rel = tau_plane(p, q)
    print(f"  tau{p} -> {q}: {tau:.7f}  [{rel.value}]")

print()
print("=" * 72)
print("Law of cosines: hinge -> side, all curvature regimes")
print("=" * 72)
for k in (-1.0, 0.0, 1.0):
    z = side_from_hinge(k, 0.8, 0.8, 2.0, +1)
    print(f"  K={k:+.0f}: y=t=0.8, cosh(theta)=2, sigma=+1  ->  z = {z:.7f}")
print("  collinear additivity at any K: z(y=1, t=1, cosh=1) =",
      side_from_hinge(1.0, 1.0, 1.0, 1.0, +1))

# round trip: the angle solver inverts the side solver
z = side_from_hinge(0.0, 1.0, 1.0, 2.0, +1)
u = angle_from_sides(0.0, 1.0, 1.0, z, +1)
print(f"  round trip at K=0: cosh(theta) recovered as {u:.12f}")

print()
print("=" * 72)
print("Angle sums vanish in the plane (hyperbolic angles)")
print("=" * 72)
for triple in [((0, 0), (2, 1), (4, 0)), ((0, 0), (3, 1), (6, -1))]:
    print(f"  defect{triple} = {angle_sum_defect(*triple):+.2e}")

print()
print("=" * 72)
print("Polar chronology around a vertex")
print("=" * 72)
for r1, r2, psi in [(1, 3, math.log(2)), (1, 2, math.log(2)), (1, 1.5, math.log(2))]:
    print(f"  radii ({r1}, {r2}) at hyperbolic angle ln 2: {polar_chronology(r1, r2, psi).value}")

print()
print("=" * 72)
print("First variation: difference quotient vs sigma*cosh(theta)")
print("=" * 72)
u = 2 / math.sqrt(3)
for t in (0.1, 0.05, 0.025, 0.0125):
    q, lim = fvf_model(0.0, 2.0, +1, u, t)
    print(f"  t={t:7.4f}: quotient {q:.7f}  limit {lim:.7f}  error {abs(q-lim):.2e}")

print()
print("second-inequality margin (nonnegative on realizable hinges):",
      f"{second_inequality_margin(0.0, 1.0, 1.0, math.sqrt(6), +1):.7f}")

print()
print("=" * 72)
print("Comparison points inside a model triangle")
print("=" * 72)
tri = ModelTriangle(Kappa(0.0), math.sqrt(3), math.sqrt(3), 4.0)
for s, label in [(0.5, "below the vertex"), (2.0, "level with it")]:
    tau, rel = comparison_point_tau(tri, SidePosition("ac", s), SidePosition("ab", math.sqrt(3)))
    print(f"  point at arclength {s} on the long side vs the apex ({label}): "
          f"tau={tau:.7f} [{rel.value}]")

print()
print("=" * 72)
print("De Sitter quadric oracle (curvature +1)")
print("=" * 72)
a, b, c = ds_realize_triangle(1.0, 1.0, 2.5)
print("  triangle realized on the quadric with sides 1, 1, 2.5:")
print(f"    tau(a,b) = {ds_tau(a, b)[0]:.9f}")
print(f"    tau(b,c) = {ds_tau(b, c)[0]:.9f}")
print(f"    tau(a,c) = {ds_tau(a, c)[0]:.9f}")
tri1 = ModelTriangle(Kappa(1.0), 1.0, 1.0, 2.5)
tau_cmp, _ = comparison_point_tau(tri1, SidePosition("ac", 1.25), SidePosition("ab", 1.0))
print(f"  nested law-of-cosines agrees with the embedding: midpoint-to-apex "
      f"tau = {tau_cmp:.9f}")
