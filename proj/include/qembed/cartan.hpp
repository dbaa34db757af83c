#pragma once

// Affine type A Cartan matrix on the residues I_m = Z/mZ.

namespace qembed {

inline int residue(long k, int m) {
  const long r = k % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

// c_ij = 2 delta_{i,j} - delta_{i,j+1} - delta_{i,j-1}; for m = 2 both
// off-diagonal deltas fire and c_01 = -2.
inline int cartan_entry(int m, int i, int j) {
  i = residue(i, m);
  j = residue(j, m);
  int c = (i == j) ? 2 : 0;
  if (i == residue(j + 1, m)) c -= 1;
  if (i == residue(j - 1, m)) c -= 1;
  return c;
}

}  // namespace qembed
