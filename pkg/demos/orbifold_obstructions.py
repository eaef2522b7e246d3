"""
Non-formality of the Z_3 quotient of T^2 x N
============================================

M = T^2 x N carries an order-3 symmetry.  Its invariant forms compute the
cohomology of the quotient orbifold.  Two obstructions are evaluated on
that quotient: a quadruple Massey product, detected after multiplying by
a class sigma, and a G-Massey product in top degree.
"""

import time

from cdgakit import betti_vector, preset
from cdgakit.action import invariant_dimensions, invariant_subcomplex
from cdgakit.massey import certify_quadruple_nontrivial, formality_verdict, gmassey

src = preset("M")
rho = src.automorphism("rho")
b = src.bindings

print("invariant forms by degree:", invariant_dimensions(rho))

t0 = time.time()
c = invariant_subcomplex(rho)
print("quotient betti numbers:", betti_vector(c), f"({time.time() - t0:.1f}s)")

###############################################################################
# Quadruple product <[tau2], [theta], [theta], [tau3]>

cert = certify_quadruple_nontrivial(c, [b["tau2"], b["theta"], b["theta"], b["tau3"]], b["sigma"])
for ch in cert.checks:
    print(" ", "ok " if ch["pass"] else "BAD", ch["name"], ch["witness"])
print("[sigma ^ Psi] on the volume class:", cert.sigma_psi, "->", cert.verdict)

###############################################################################
# G-Massey product <[theta]; [tau1], [tau2], [tau3]>

g = gmassey(c, b["theta"], b["tau1"], b["tau2"], b["tau3"])
print("G-Massey value:", g.value_top, "W dimension:", len(g.w_basis), "->", g.verdict)

print(formality_verdict([cert, g]))
