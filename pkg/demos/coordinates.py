"""
Coordinates on the nilpotent group
==================================

Left-invariant forms written in global coordinates, checked with sympy.
"""

from cdgakit import coordinate

eta1, eta2 = coordinate.eta_forms()
print("eta1 =", eta1)
print("d eta1 =", coordinate.d(eta1))

lt = coordinate.left_translation()
print("pullback of eta1 under a symbolic left translation:")
print("   ", coordinate.pullback(lt, eta1))

print("rho equivariant:", coordinate.verify_equivariance()["pass"])
bad = coordinate.verify_equivariance(coordinate.swap_y_map())
print("swapping y only:", bad["first_mismatch"]["component"], "differs")
