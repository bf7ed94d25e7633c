"""Oshima-compactification kernel lab for concrete SL(n,R) instantiations.

Submodules
----------
lie_structure    restricted-root skeleton and Weyl group of a matrix algebra
decompositions   Iwasawa factorizations and adjoint frame coefficients
oshima_atlas     signed compactification charts, group action, chi factors
vector_fields    invariant/fundamental vector fields and the action Jacobian
hyperbolic       hyperbolic-plane heat kernel and distances (SL(2,R) model)
kernel_lab       local symbols, semigroup/resolvent kernels, asymptotic fits
cli              command-line interface and verification suites
"""

__version__ = "0.1.0"
