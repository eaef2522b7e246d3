"""
Two torus bundles over T^4
==========================

Build the curvature class of a principal T^2 bundle from a lattice in C^2,
once over the Eisenstein integers and once over the Gaussian integers, and
separate them with the determinant of the intersection form on the image.
"""

import random

from cdgakit import bundles

for ring in (bundles.EISENSTEIN, bundles.GAUSSIAN):
    f = bundles.curvature_class_matrix(bundles.bundle_for_ring(ring))
    gram = bundles.gram_matrix(bundles.image_lattice_basis(f))
    print(ring, f, "gram", gram, "invariant", bundles.image_lattice_q_determinant(f))

# the invariant ignores the choice of lattice bases
rng = random.Random(0)
f = bundles.curvature_class_matrix(bundles.eisenstein_bundle())
seen = set()
for _ in range(20):
    g = bundles.random_unimodular(4, rng)
    h = bundles.random_unimodular(2, rng)
    seen.add(bundles.image_lattice_q_determinant(bundles.change_bases(f, g, h)))
print("after 20 random base changes:", seen)
