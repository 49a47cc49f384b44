"""Balanced XOR coding matrices from Latin rectangles.

Take the top k1 rows of a random Latin square on symbols 1..k.  Column j
of the rectangle names the k1 symbols whose source packets feed coded
packet j, giving a k x k incidence matrix with exactly k1 ones in every
row and column.  Odd k1 is necessary for the matrix to be invertible:
with even k1 every row has even parity, so the rows XOR to zero.
"""

import numpy as np

import xorcodes as xc

rng = np.random.default_rng(42)

L = xc.random_latin_square(5, rng)
print("random 5x5 Latin square:")
print(L.cells)

R = xc.top_rectangle(L, 3)
print("\ntop 3 rows (a 3x5 Latin rectangle):")
print(R.cells)

M = xc.incidence_matrix(R)
print("\nincidence matrix (row j marks the symbols of column j+1):")
print(M.array)
print("row sums:", M.array.sum(axis=1), " column sums:", M.array.sum(axis=0))
print("invertible over GF(2):", xc.is_nonsingular(M))

print("\neven k1 never works:")
for k1 in (2, 4):
    Me = xc.incidence_matrix(xc.top_rectangle(L, k1))
    print(f"  k1={k1}: rank {xc.rank(Me)} of 5 -> singular")

print("\nsampling until invertible (odd k1 only):")
M3 = xc.random_balanced_nonsingular(5, 3, rng)
print(M3.array)

# the structured start for the code search: balanced block, then a column
# that XORs all five sources, then random extra packets
cfg = xc.SearchConfig(n=13, k=5, k1=3, attempts=1, master_seed=7)
cand = xc.init_balanced(cfg, rng)
print("\n[13,5] structured generator (first 5 columns balanced, column 6 all ones):")
print(cand.G.array)
print("decoding vector:", cand.vd.rounded())
