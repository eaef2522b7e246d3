"""
Triple Massey products on the Heisenberg nilmanifold
====================================================

The three-dimensional Heisenberg group has one relation dz = x^y.
Its cohomology is small enough to read off by hand, and the product
<[x], [x], [y]> is the classical example of a non-zero Massey product.
"""

from cdgakit import CochainComplex, betti_vector, parse_presentation, triple_massey

src = parse_presentation("""
algebra H
generator x 1
generator y 1
generator z 1
d z = x^y
""")
c = CochainComplex(src.presentation)
print("betti numbers:", betti_vector(c))

# x^x vanishes and x^y = dz, so the product is defined
x, y = src.element("x"), src.element("y")
t = triple_massey(c, x, x, y)
print("primitives:", t.xi.to_text() or "0", "and", t.eta.to_text())
print("representative:", t.value.representative.to_text())
print("indeterminacy dimension:", len(t.indeterminacy))
print("verdict:", t.verdict)
