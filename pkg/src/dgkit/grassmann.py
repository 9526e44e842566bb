"""Points of the derived Grassmannian and flag variety at the base field.

A Grassmannian point is a subcomplex inclusion U -> W together with a
quasi-isomorphism W -> V; its shadow is the induced family of subspaces
of H*(V).  Flag points carry a filtered W instead.  Only field-valued
points are modeled, so flatness conditions hold automatically and the
validity predicates reduce to injectivity of induced cohomology maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from . import linalg
from .complexes import (
    ChainMap,
    Complex,
    cohomology,
    cohomology_map,
    is_quasi_iso,
)
from .errors import InvalidPoint
from .filtered import FilteredComplex
from .linalg import Matrix


@dataclass
class GrassPoint:
    """Sequence U -> W -> V with injective incl and quasi-iso phi."""

    ambient: Complex
    sub: Complex
    incl: ChainMap
    total: Complex
    phi: ChainMap


@dataclass
class FlagPoint:
    """Filtered (W, F) with a quasi-isomorphism W -> V."""

    ambient: Complex
    total: FilteredComplex
    phi: ChainMap


@dataclass
class Shadow:
    """Per-degree subspaces of H^*(ambient), in cohomology coordinates.

    basis[i] has dim H^i(ambient) rows; its columns span the subspace.
    """

    ambient_h_dims: Dict[int, int]
    basis: Dict[int, Matrix]

    def dim(self, i: int) -> int:
        b = self.basis.get(i)
        return b.cols if b is not None else 0

    def dims(self) -> Dict[int, int]:
        return {i: b.cols for i, b in self.basis.items() if b.cols}

    def same_subspaces(self, other: "Shadow") -> bool:
        if self.ambient_h_dims != other.ambient_h_dims:
            return False
        degrees = set(self.basis) | set(other.basis)
        for i in degrees:
            a = self.basis.get(i, Matrix.zero(self.ambient_h_dims.get(i, 0), 0))
            b = other.basis.get(i, Matrix.zero(self.ambient_h_dims.get(i, 0), 0))
            if a.cols != b.cols:
                return False
            if a.cols and not linalg.same_span(a, b):
                return False
        return True

    def contains(self, other: "Shadow") -> bool:
        """Containment of the other shadow's subspaces in this one's."""
        degrees = set(self.basis) | set(other.basis)
        for i in degrees:
            small = other.basis.get(i)
            if small is None or not small.cols:
                continue
            big = self.basis.get(i)
            if big is None or not big.cols:
                return False
            if not linalg.in_span(big, small):
                return False
        return True


def _structural_diagnostics_grass(p: GrassPoint) -> List[str]:
    problems = []
    if p.incl.source.dims != p.sub.dims or p.incl.target.dims != p.total.dims:
        problems.append("inclusion does not run from the subobject to the total complex")
        return problems
    if p.phi.source.dims != p.total.dims or p.phi.target.dims != p.ambient.dims:
        problems.append("comparison map does not run from the total complex to the ambient")
        return problems
    if not p.incl.is_injective():
        problems.append("inclusion is not degreewise injective")
    if not is_quasi_iso(p.phi):
        problems.append("comparison map is not a quasi-isomorphism")
    return problems


def _h_image_in_ambient(through: ChainMap) -> Tuple[Dict[int, int], Dict[int, Matrix], bool]:
    """Cohomology images of a composite map into the ambient complex.

    Returns ambient H dims, per-degree image bases in the representative
    coordinates, and whether every induced map is injective.
    """
    h = cohomology_map(through)
    ht = cohomology(through.target)
    injective = all(linalg.rank(mat) == mat.cols for mat in h.values())
    bases = {}
    for i, mat in h.items():
        if mat.cols:
            bases[i] = linalg.column_space(mat)
    return dict(ht.dims), bases, injective


def validate_grass_point(p: GrassPoint) -> Tuple[bool, List[str]]:
    """Structural invariants plus injectivity of H(U) -> H(V)."""
    problems = _structural_diagnostics_grass(p)
    if problems:
        return False, problems
    through = p.phi.compose(p.incl)
    _, _, injective = _h_image_in_ambient(through)
    if not injective:
        problems.append("induced map on cohomology is not injective")
    return not problems, problems


def shadow_grass(p: GrassPoint) -> Shadow:
    """Image of H(U) inside H(V) for a valid point."""
    ok, problems = validate_grass_point(p)
    if not ok:
        raise InvalidPoint("; ".join(problems))
    through = p.phi.compose(p.incl)
    dims, bases, _ = _h_image_in_ambient(through)
    return Shadow(dims, bases)


def validate_flag_point(p: FlagPoint) -> Tuple[bool, List[str]]:
    """Injectivity level-to-level and into the ambient cohomology."""
    problems = []
    if p.phi.source.dims != p.total.ambient.dims or p.phi.target.dims != p.ambient.dims:
        problems.append("comparison map does not run from the filtered total to the ambient")
        return False, problems
    if not is_quasi_iso(p.phi):
        problems.append("comparison map is not a quasi-isomorphism")
    for k in range(1, p.total.length + 1):
        step = p.total.inclusion(k - 1)
        hstep = cohomology_map(step)
        for i, mat in hstep.items():
            if linalg.rank(mat) != mat.cols:
                problems.append(f"H^{i} of level {k} does not embed into level {k - 1}")
    if not problems:
        through = p.phi
        _, _, injective = _h_image_in_ambient(through)
        if not injective:
            problems.append("total complex cohomology does not embed into the ambient")
    return not problems, problems


def shadow_flag(p: FlagPoint) -> List[Shadow]:
    """Nested chain of cohomology images, one shadow per filtration level."""
    ok, problems = validate_flag_point(p)
    if not ok:
        raise InvalidPoint("; ".join(problems))
    shadows = []
    for k in range(p.total.length + 1):
        through = p.phi.compose(p.total.embedding(k))
        dims, bases, _ = _h_image_in_ambient(through)
        shadows.append(Shadow(dims, bases))
    return shadows
