"""Cohomology with coefficients in a free module, and the Borel-Moore reading.

For a free coefficient module k[alpha, inf) the cohomology barcode splits into
Hom terms from H_n and Ext terms from H_{n-1}.  Both sides are computed here:
once from the homology barcode alone, once by reducing the cochain complex.
"""

from kunneth_ph import FilteredComplex, persistent_homology
from kunneth_ph.kunneth import borel_moore_barcode, cochain_barcode, uct_cohomology_barcode

X = FilteredComplex.from_text("""
0 0 0
1 0 1
2 0 2
3 1 3  -0 +1
4 1 4  -1 +2
5 1 5  -0 +2
6 2 6  +3 +4 -5
""")
alpha = 10.0

for p in (1, 2):
    algebraic = uct_cohomology_barcode(persistent_homology(X), (alpha, float("inf")), p)
    cochains = cochain_barcode(X, (alpha, float("inf")), p)
    print(f"p = {p}: coefficient module k[{alpha}, inf)")
    for k in algebraic.degrees:
        print(f"  H^{k}:", ", ".join(map(str, algebraic.degree(k))))
    print("  agrees with cochain reduction:", algebraic.isclose(cochains))
    print("  borel_moore_barcode gives the same:",
          borel_moore_barcode(X, alpha, p).isclose(algebraic))

