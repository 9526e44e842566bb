"""Simplicial mapping spaces and their homotopy groups.

The mapping space of two (possibly filtered) complexes is the
denormalization of the good truncation of their enrichment complex;
homotopy groups of simplicial vector spaces are defined as homology of
the normalization, so they can be read off the truncated hom complex
directly.
"""

from __future__ import annotations

from typing import Union

from .complexes import Complex, cohomology, hom_complex, shift, truncate_nonneg
from .dold_kan import SimplicialVS, denormalize, normalize
from .errors import ShapeMismatch
from .filtered import FilteredComplex, filtered_hom_complex


def _hom_of(m, n) -> Complex:
    if isinstance(m, FilteredComplex) and isinstance(n, FilteredComplex):
        return filtered_hom_complex(m, n)
    if isinstance(m, Complex) and isinstance(n, Complex):
        return hom_complex(m, n)
    raise ShapeMismatch("mapping spaces need two plain or two filtered complexes")


def mapping_space(m: Union[Complex, FilteredComplex], n: Union[Complex, FilteredComplex],
                  top_level: int) -> SimplicialVS:
    """Denormalized truncation of the enrichment complex, up to a level."""
    if top_level < 0:
        raise ShapeMismatch("negative level bound")
    return denormalize(truncate_nonneg(_hom_of(m, n)), top_level)


def pi_dim(m: Union[Complex, FilteredComplex], n: Union[Complex, FilteredComplex],
           i: int) -> int:
    """Dimension of the i-th homotopy group of the mapping space."""
    if i < 0:
        raise ShapeMismatch("homotopy groups live in non-negative degrees")
    t = truncate_nonneg(_hom_of(m, n))
    return cohomology(t).dim(-i)


def pi_dim_simplicial(m, n, i: int) -> int:
    """Same homotopy group computed through the simplicial object itself."""
    if i < 0:
        raise ShapeMismatch("homotopy groups live in non-negative degrees")
    space = mapping_space(m, n, i + 2)
    return cohomology(normalize(space)).dim(-i)


def ext_via_mapping_space(m: Complex, n: Complex, i: int, via_shift: int = 0) -> int:
    """Ext^i read as a homotopy group: pi_{via_shift - i} of maps into the shift."""
    k = via_shift - i
    if k < 0:
        raise ShapeMismatch("choose a shift with via_shift >= i")
    return pi_dim(m, shift(n, via_shift), k)
