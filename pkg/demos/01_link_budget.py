# %% [markdown]
# # Link budget of one ceiling AP
#
# A 41 degree cone-bulb beam hung 10 m above the user plane: how much gain
# does narrowing the beam buy, how wide is the lit spot on the floor, and
# what SNR does a user right underneath see?

# %%
import math

import numpy as np

from mmwave_indoor import AntennaPattern, RadioConfig, directivity_gain, linear_to_db, main_lobe_gain, path_loss

radio = RadioConfig.from_db(tx_power_dbm=20, carrier_freq_hz=60e9, bandwidth_hz=100e6, noise_figure_db=9)
print(f"1 m reference loss {linear_to_db(radio.ref_loss_1m):.2f} dB, "
      f"noise {10 * math.log10(radio.noise_power_w / 1e-3):.2f} dBm")

# %% Main-lobe gain falls quickly as the beam opens up
for deg in (5, 10, 20, 41, 90, 150):
    g = main_lobe_gain(math.radians(deg), 0.1)
    print(f"{deg:4d} deg  M = {linear_to_db(g):5.2f} dBi")

# %% Footprint and gain along the floor
pattern = AntennaPattern.from_degrees(41, side_lobe_gain_db=-10, ap_height_m=10)
print(f"footprint radius {pattern.illumination_radius_m:.2f} m")
for d in np.arange(0, 8, 1.0):
    gain = directivity_gain(d, pattern)
    rx = radio.tx_power_w * gain * path_loss(d, 10.0, radio)
    print(f"d = {d:3.0f} m  gain {linear_to_db(gain):6.2f} dB  SNR {linear_to_db(rx / radio.noise_power_w):6.2f} dB")
