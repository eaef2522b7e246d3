"""Exact computations on exterior-algebra presentations of nilmanifolds and their quotients."""
from .scalars import QSqrt3, SQRT3
from .exterior import CdgaError, CdgaPresentation, GeneratorTable, GradedElement, check_d_squared, differential
from .dsl import ParseError, parse_element, parse_presentation, preset, serialize
from .cohomology import CochainComplex, betti_vector, class_of, cohomology_basis, cup
from .action import AlgebraAutomorphism, invariant_subcomplex, reynolds
from .massey import certify_quadruple_nontrivial, formality_verdict, gmassey, lemma25_witness, triple_massey

__version__ = "0.1.0"
