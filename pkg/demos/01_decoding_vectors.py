"""Exact decoding vectors: what fraction of packet subsets can decode.

A k x n generator matrix sends n coded packets for k source packets.  The
receiver can decode once the columns it holds span all k dimensions.  The
decoding vector collects, for each excess count i, the probability that a
random set of k+i received packets suffices.
"""

from pathlib import Path

import xorcodes as xc

HERE = Path(__file__).resolve().parent
G = xc.parse_matrix((HERE.parent / "testdata" / "g_13_5.txt").read_text())

print("A [13,5] code: 5 source packets, 13 coded packets\n")
print(xc.format_matrix(G))

vd = xc.exact_vd(G)
print("entry  received  decodable/total   probability")
for i, (c, t) in enumerate(zip(vd.counts, vd.totals)):
    print(f"  {i}      {5 + i:3d}     {c:6d}/{t:<6d}      {vd.rho[i]:.6f}")

print("\nrounded for a table:", vd.rounded())
print("MDS would need all ones; here:", xc.is_mds(vd))

# the first six columns alone form a perfect little code: any five of the
# six received packets decode
sub = xc.select_columns(G, range(6))
sub_vd = xc.exact_vd(sub)
print("\n[6,5] sub-code decoding vector:", sub_vd.rho.tolist(),
      "-> MDS:", xc.is_mds(sub_vd))

# a plain identity code has no redundancy at all
ident = xc.exact_vd(xc.BinaryMatrix.identity(5))
print("[5,5] identity decoding vector:", ident.rho.tolist())
