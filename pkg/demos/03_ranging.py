"""RSSI-to-distance chain and its inverse, in one table.

Run: python demos/03_ranging.py
"""

import numpy as np

from bdp import estimate_distance, rssi_at_distance

TX = -59.0  # calibrated power: measured RSSI at 1 meter

print(f"calibrated power {TX} dBm, free-space fall-off\n")
print(f"{'distance m':>10} {'rssi dBm':>10} {'estimated m':>12} {'ratio dB':>9}")
for r in np.logspace(-1, 2, 13):  # 0.1 m .. 100 m
    rssi = rssi_at_distance(TX, float(r))
    est = estimate_distance(TX, rssi)
    print(f"{r:10.3f} {rssi:10.2f} {est.meters:12.3f} {est.dbm_ratio:9.2f}")

print("\nevery 20 dB of loss is one decade of distance:")
for rssi in (-59.0, -79.0, -99.0):
    print(f"  rssi {rssi:6.1f} -> {estimate_distance(TX, rssi).meters:8.2f} m")
