# %% [markdown]
# # Hand versus pocket
#
# Holding the phone 30 cm in front of the chest hides a 67 degree wedge of
# far APs; a phone in a pocket hides half the sky. Near APs are safe when
# the phone is held out, because the head cannot reach the ray.

# %%
import math

import numpy as np

from mmwave_indoor import BodyModel, is_blocked, self_block_probability

hand = BodyModel(body_width_m=0.4, dist_to_body_m=0.3, dist_top_head_m=0.4)
pocket = BodyModel(body_width_m=0.4, dist_to_body_m=0.0, dist_top_head_m=0.4)

for name, body in (("hand", hand), ("pocket", pocket)):
    print(f"{name:6s} sector {math.degrees(body.blockage_angle_rad):6.2f} deg, "
          f"free radius {body.block_free_radius(10.0):4.1f} m, P(block) {self_block_probability(body):.4f}")

# %% The closed form against random body orientations
rng = np.random.default_rng(5)
n = 200_000
azimuth = rng.uniform(0, 2 * np.pi, n)
orientation = rng.uniform(0, 2 * np.pi, n)
for name, body in (("hand", hand), ("pocket", pocket)):
    near = is_blocked(np.full(n, 5.0), azimuth, orientation, body, 10.0).mean()
    far = is_blocked(np.full(n, 20.0), azimuth, orientation, body, 10.0).mean()
    print(f"{name:6s} blocked at 5 m: {near:.4f}   at 20 m: {far:.4f}")
