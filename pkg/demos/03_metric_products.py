"""Vietoris-Rips barcodes of product metric spaces.

Under the sup metric the Rips complex of X x Y is the product of the two Rips
complexes, so the Kunneth barcode is exact.  For the other l^p metrics it is
only an approximation; the bottleneck distance measures how far off it is.
"""

import numpy as np

from kunneth_ph import kunneth_product_barcode
from kunneth_ph.bottleneck import bottleneck_distance
from kunneth_ph.metric import product_metric, sample_circle, vr_barcode

X = sample_circle(7, seed=11)
Y = sample_circle(6, seed=12)
print("factor diameters:", round(X.diameter, 3), round(Y.diameter, 3))

bx, by = vr_barcode(X, 2), vr_barcode(Y, 2)
for p in (1, 2, 5, np.inf):
    predicted = kunneth_product_barcode(bx, by, p, max_degree=2)
    actual = vr_barcode(product_metric(X, Y, p), 2)
    gaps = [bottleneck_distance(predicted.degree(k), actual.degree(k)) for k in range(3)]
    print(f"p = {p}: bottleneck by degree", [f"{g:.4f}" for g in gaps])
