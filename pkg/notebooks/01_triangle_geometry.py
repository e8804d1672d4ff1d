# %% [markdown]
# # Circle packing triangles: lengths, admissibility, and extension
#
# A weighted triangle carries three circle radii and three inversive
# distances (one per edge, indexed opposite a vertex).  This walkthrough
# shows how edge lengths arise from the weights, when the triangle closes
# up, and what happens to the angles when it cannot.

# %%
import numpy as np

from packingforge import (
    euclidean_admissible,
    euclidean_angles,
    euclidean_extended_angles,
    euclidean_lengths,
    hyperbolic_admissible,
    hyperbolic_angles,
    hyperbolic_lengths,
    uniform_radius_bound,
)

np.set_printoptions(precision=6, suppress=True)

# %% [markdown]
# Three mutually tangent unit circles (weight 1 on every edge) form an
# equilateral triangle with side 2 in the Euclidean background, and side 2r
# in the hyperbolic background.

# %%
r = np.array([1.0, 1.0, 1.0])
w = np.array([1.0, 1.0, 1.0])
print("euclidean lengths :", euclidean_lengths(r, w))
print("hyperbolic lengths:", hyperbolic_lengths(r, w))
print("euclidean angles  :", euclidean_angles(euclidean_lengths(r, w)))
print("angle sum / pi    :", euclidean_angles(euclidean_lengths(r, w)).sum() / np.pi)

# %% [markdown]
# Weights above 1 mean separated circles.  Push one weight far enough and
# the triangle inequality fails: the certificate (a polynomial in the radii
# and weights, positive exactly on valid triangles) goes negative.

# %%
squeezed_r = np.array([1.0, 1.0, 0.1])
spiky_w = np.array([0.0, 0.0, 10.0])
ok, cert = euclidean_admissible(r, w)
bad, bad_cert = euclidean_admissible(squeezed_r, spiky_w)
print(f"tangent case   admissible={ok}, certificate={cert:.3f}")
print(f"squeezed case  admissible={bad}, certificate={bad_cert:.3f}")

# %% [markdown]
# Outside the admissible set the angles extend continuously by constants:
# pi at the vertex staring at the too-long edge, zero at the other two.
# The extension is what makes the global variational problem convex.

# %%
print("extended angles:", euclidean_extended_angles(squeezed_r, spiky_w))

# %% [markdown]
# Walking the third radius upward crosses back into admissibility; watch
# the extended angles leave (0, 0, pi) continuously.

# %%
for t in (0.5, 1.5, 2.0, 2.12, 2.1214, 2.2, 3.0):
    ang = euclidean_extended_angles(np.array([1.0, 1.0, t]), spiky_w)
    print(f"  r_k = {t:7.4f}  angles = {ang}")

# %% [markdown]
# In the hyperbolic background, large equal radii always work once they
# beat an explicit bound computed from the weights alone.

# %%
w_sep = np.array([2.0, 2.0, 2.0])
s_star = uniform_radius_bound(w_sep)
print("uniform radius bound:", s_star)
for s in (0.5 * s_star, s_star + 1e-3, 3.0):
    adm, _ = hyperbolic_admissible(np.array([s, s, s]), w_sep)
    print(f"  s = {s:.5f}  admissible = {adm}")

# %% [markdown]
# Tiny hyperbolic triangles are indistinguishable from Euclidean ones: the
# angles agree to second order in the radii.

# %%
tiny = np.array([1e-4, 2e-4, 1.5e-4])
mixed = np.array([-0.3, 0.8, 0.9])
print("hyperbolic:", hyperbolic_angles(hyperbolic_lengths(tiny, mixed)))
print("euclidean :", euclidean_angles(euclidean_lengths(tiny, mixed)))
