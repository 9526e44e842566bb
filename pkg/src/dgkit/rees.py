"""Weight-graded modules in complexes and the Rees construction.

A graded module stores complexes for weights 0..W with weight-lowering
structure maps; below weight 0 the components are declared constant (the
weight-0 complex with identity maps) and above W they vanish.  Under this
convention the Rees functor is weightwise transparent: weight w carries
filtration level w and the structure map is the inclusion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List

from . import linalg
from .complexes import ChainMap, Complex, cohomology, zero_complex
from .errors import ShapeMismatch
from .filtered import FilteredComplex, FilteredMap
from .linalg import BlockSystem, Matrix

Q = Fraction


class GradedModuleComplex:
    """Complexes indexed by weight with degree-(-1)-in-weight action maps."""

    __slots__ = ("components", "t_maps")

    def __init__(self, components: List[Complex], t_maps: List[ChainMap]):
        if not components:
            raise ShapeMismatch("at least the weight-0 component is required")
        if len(t_maps) != len(components) - 1:
            raise ShapeMismatch(
                f"{len(components)} components need {len(components) - 1} action maps")
        for w, t in enumerate(t_maps):
            if t.source.dims != components[w + 1].dims or t.target.dims != components[w].dims:
                raise ShapeMismatch(f"action map {w + 1} does not lower weight {w + 1} to {w}")
        self.components = list(components)
        self.t_maps = list(t_maps)

    @property
    def top_weight(self) -> int:
        return len(self.components) - 1

    def component(self, w: int) -> Complex:
        if w < 0:
            return self.components[0]
        if w > self.top_weight:
            return zero_complex()
        return self.components[w]

    def t_map(self, w: int) -> ChainMap:
        """The structure map component(w) -> component(w-1)."""
        if 1 <= w <= self.top_weight:
            return self.t_maps[w - 1]
        if w <= 0:
            return ChainMap.identity(self.components[0])
        return ChainMap.zero(self.component(w), self.component(w - 1))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __repr__(self):
        return f"GradedModuleComplex(top_weight={self.top_weight})"


class GradedMap:
    """Weightwise chain maps commuting with both modules' action maps."""

    __slots__ = ("source", "target", "weight_maps")

    def __init__(self, source: GradedModuleComplex, target: GradedModuleComplex,
                 weight_maps: List[ChainMap], check: bool = True):
        if source.top_weight != target.top_weight:
            raise ShapeMismatch("source and target store different weight bands")
        if len(weight_maps) != source.top_weight + 1:
            raise ShapeMismatch(
                f"expected {source.top_weight + 1} weight maps, got {len(weight_maps)}")
        self.source = source
        self.target = target
        self.weight_maps = list(weight_maps)
        if check:
            for w in range(1, source.top_weight + 1):
                lhs = target.t_map(w).compose(weight_maps[w])
                rhs = weight_maps[w - 1].compose(source.t_map(w))
                if lhs != rhs:
                    raise ShapeMismatch(f"weight maps do not commute with the action at {w}")

    def weight(self, w: int) -> ChainMap:
        if w < 0:
            return self.weight_maps[0]
        if w > self.source.top_weight:
            return ChainMap.zero(self.source.component(w), self.target.component(w))
        return self.weight_maps[w]


def rees(m: FilteredComplex) -> GradedModuleComplex:
    """Filtration levels become weights; inclusions become the action."""
    top = m.length - 1
    components = [m.level(w) for w in range(top + 1)]
    t_maps = [m.inclusion(w - 1) for w in range(1, top + 1)]
    return GradedModuleComplex(components, t_maps)


def rees_map(f: FilteredMap) -> GradedMap:
    top = f.source.length - 1
    return GradedMap(rees(f.source), rees(f.target),
                     [f.level(w) for w in range(top + 1)], check=False)


def is_torsion_free(g: GradedModuleComplex) -> bool:
    """Every stored action map is degreewise injective."""
    return all(g.t_map(w).is_injective() for w in range(1, g.top_weight + 1))


def _image_tower(g: GradedModuleComplex):
    """Per weight, a basis of the image of component(w) in component(0)."""
    amb = g.component(0)
    images = []
    for w in range(g.top_weight + 1):
        comp = ChainMap.identity(amb)
        for j in range(1, w + 1):
            comp = comp.compose(g.t_map(j))
        images.append({a: linalg.column_space(comp.f(a)) for a in amb.support()})
    return images


def phi(g: GradedModuleComplex) -> FilteredComplex:
    """Left adjoint: collapse the action, filter by the weight images.

    The underlying complex is the weight-0 component (the colimit under the
    constant tail); level w is the image of the composite action map from
    weight w, presented by a basis with its inclusion.
    """
    amb = g.component(0)
    images = _image_tower(g)
    levels = [amb]
    inclusions = []
    prev_basis = {a: Matrix.identity(amb.dim(a)) for a in amb.support()}
    prev_cx = amb
    for w in range(1, g.top_weight + 1):
        basis = images[w]
        dims = {a: b.cols for a, b in basis.items()}
        diffs = {}
        for a in amb.support():
            ba = basis.get(a)
            ba1 = basis.get(a + 1)
            if not ba or not ba1 or not ba.cols or not ba1.cols:
                continue
            core = linalg.solve_matrix(ba1, amb.d(a) * ba)
            if core is None:
                raise ShapeMismatch("weight image is not a subcomplex")
            diffs[a] = core
        cx = Complex(dims, diffs)
        inc_maps = {}
        for a in amb.support():
            ba = basis.get(a)
            if ba is None or not ba.cols:
                continue
            coords = linalg.solve_matrix(prev_basis[a], ba)
            if coords is None:
                raise ShapeMismatch("weight images are not nested")
            inc_maps[a] = coords
        inclusions.append(ChainMap(cx, prev_cx, inc_maps, check=False))
        levels.append(cx)
        prev_basis = {a: basis.get(a, Matrix.zero(amb.dim(a), 0)) for a in amb.support()}
        prev_cx = cx
    zero = zero_complex()
    levels.append(zero)
    inclusions.append(ChainMap.zero(zero, prev_cx))
    return FilteredComplex(levels, inclusions)


def filtered_agree(x: FilteredComplex, y: FilteredComplex) -> bool:
    """Same ambient complex and the same level subspaces, level by level."""
    if x.length != y.length:
        return False
    if x.ambient != y.ambient:
        return False
    for k in range(1, x.length + 1):
        ex, ey = x.embedding(k), y.embedding(k)
        for a in x.ambient.support():
            bx, by = ex.f(a), ey.f(a)
            if bx.cols != by.cols:
                return False
            if bx.cols and not linalg.same_span(bx, by):
                return False
    return True


def rees_phi_is_identity(x: FilteredComplex) -> bool:
    """The unit audit: phi(rees(x)) presents exactly the filtration of x."""
    return filtered_agree(phi(rees(x)), x)


def graded_iso_to_rees_phi(g: GradedModuleComplex) -> bool:
    """Whether the canonical comparison g -> rees(phi(g)) is an isomorphism.

    The weight-w comparison corestricts the composite action map onto its
    image; it is bijective on the stored band iff g is torsion-free.
    """
    r = rees(phi(g))
    if r.top_weight != g.top_weight:
        return False
    amb = g.component(0)
    images = _image_tower(g)
    for w in range(g.top_weight + 1):
        comp = g.component(w)
        target_dims = {a: b.cols for a, b in images[w].items() if b.cols}
        if {a: d for a, d in comp.dims.items()} != target_dims:
            return False
        # dimensions agree; the corestriction is onto, hence bijective iff
        # the composite action map is injective
        composite = ChainMap.identity(amb)
        for j in range(1, w + 1):
            composite = composite.compose(g.t_map(j))
        if not composite.is_injective():
            return False
    return True


def graded_is_fibration(f: GradedMap) -> bool:
    """Degreewise surjectivity in every weight (the tail repeats weight 0)."""
    return all(f.weight(w).is_surjective() for w in range(f.source.top_weight + 1))


def rees_fibration_audit(p: FilteredMap) -> bool:
    """Filtered fibrations must become weightwise surjections after rees."""
    from .filtered import is_filtered_fibration

    if not is_filtered_fibration(p):
        return True
    return graded_is_fibration(rees_map(p))


# -- weight-zero equivariant hom ----------------------------------------------

def _graded_hom_blocks(g: GradedModuleComplex, h: GradedModuleComplex, s: int) -> BlockSystem:
    sys = BlockSystem()
    top = max(g.top_weight, h.top_weight)
    for w in range(top + 1):
        src, tgt = g.component(w), h.component(w)
        for a in src.support():
            if src.dim(a) and tgt.dim(a + s):
                sys.block((w, a), tgt.dim(a + s), src.dim(a))
    return sys


def graded_hom_basis(g: GradedModuleComplex, h: GradedModuleComplex, s: int) -> list:
    """Basis of weight-preserving degree-s families commuting with the action.

    Constraints run over weights 1..top+1 with the tail conventions, so a
    torsion component above one band but not the other still constrains the
    family.
    """
    sys = _graded_hom_blocks(g, h, s)
    top = max(g.top_weight, h.top_weight)
    for w in range(1, top + 2):
        src_hi, tgt_hi = g.component(w), h.component(w)
        src_lo, tgt_lo = g.component(w - 1), h.component(w - 1)
        tg, th = g.t_map(w), h.t_map(w)
        for a in src_hi.support():
            rows = tgt_lo.dim(a + s)
            cols = src_hi.dim(a)
            if not rows or not cols:
                continue
            terms = []
            if (w, a) in sys._shape:
                terms.append((th.f(a + s), (w, a), None))
            if (w - 1, a) in sys._shape:
                terms.append((-Matrix.identity(rows), (w - 1, a), tg.f(a)))
            sys.add_equation(terms, Matrix.zero(rows, cols))
    return sys.null_basis()


def graded_hom_weight0(g: GradedModuleComplex, h: GradedModuleComplex) -> list:
    """Basis of weightwise chain maps commuting with the action."""
    sys = _graded_hom_blocks(g, h, 0)
    top = max(g.top_weight, h.top_weight)
    # chain-map condition per weight
    for w in range(top + 1):
        src, tgt = g.component(w), h.component(w)
        for a in sorted(set(src.dims) | set(tgt.dims)):
            rows = tgt.dim(a + 1)
            cols = src.dim(a)
            if not rows or not cols:
                continue
            terms = []
            if (w, a) in sys._shape:
                terms.append((tgt.d(a), (w, a), None))
            if (w, a + 1) in sys._shape:
                terms.append((-Matrix.identity(rows), (w, a + 1), src.d(a)))
            sys.add_equation(terms, Matrix.zero(rows, cols))
    # action compatibility, including one weight above the band
    for w in range(1, top + 2):
        src_hi = g.component(w)
        tgt_lo = h.component(w - 1)
        tg, th = g.t_map(w), h.t_map(w)
        for a in src_hi.support():
            rows = tgt_lo.dim(a)
            cols = src_hi.dim(a)
            if not rows or not cols:
                continue
            terms = []
            if (w, a) in sys._shape:
                terms.append((th.f(a), (w, a), None))
            if (w - 1, a) in sys._shape:
                terms.append((-Matrix.identity(rows), (w - 1, a), tg.f(a)))
            sys.add_equation(terms, Matrix.zero(rows, cols))
    return sys.null_basis()


def _flatten_graded_family(g, h, s, fam) -> list:
    vec = []
    top = max(g.top_weight, h.top_weight)
    for w in range(top + 1):
        src, tgt = g.component(w), h.component(w)
        for a in src.support():
            rows = tgt.dim(a + s)
            cols = src.dim(a)
            if not rows or not cols:
                continue
            mat = fam.get((w, a), Matrix.zero(rows, cols))
            for i in range(rows):
                vec.extend(mat.row(i))
    return vec


def graded_hom_weight0_complex(g: GradedModuleComplex, h: GradedModuleComplex) -> Complex:
    """Hom complex of weight-preserving action-commuting families."""
    if g.is_zero() or h.is_zero():
        return zero_complex()
    lo = min(c.lo for c in h.components if not c.is_zero()) \
        - max(c.hi for c in g.components if not c.is_zero())
    hi = max(c.hi for c in h.components if not c.is_zero()) \
        - min(c.lo for c in g.components if not c.is_zero())
    bases = {}
    dims = {}
    for s in range(lo, hi + 1):
        bases[s] = graded_hom_basis(g, h, s)
        dims[s] = len(bases[s])
    diffs = {}
    top = max(g.top_weight, h.top_weight)
    for s in range(lo, hi):
        if not dims.get(s) or not dims.get(s + 1):
            continue
        sign = Q(-1) if s % 2 else Q(1)
        image_cols = []
        for b in bases[s]:
            img = {}
            for w in range(top + 1):
                src, tgt = g.component(w), h.component(w)
                for a in src.support():
                    rows = tgt.dim(a + s + 1)
                    ncols = src.dim(a)
                    if not rows or not ncols:
                        continue
                    acc = Matrix.zero(rows, ncols)
                    fa = b.get((w, a))
                    if fa is not None:
                        acc = acc + tgt.d(a + s) * fa
                    fa1 = b.get((w, a + 1))
                    if fa1 is not None:
                        acc = acc - (fa1 * src.d(a)).scale(sign)
                    if not acc.is_zero():
                        img[(w, a)] = acc
            image_cols.append(_flatten_graded_family(g, h, s + 1, img))
        ambient_len = len(_flatten_graded_family(g, h, s + 1, {}))
        target_cols = [_flatten_graded_family(g, h, s + 1, b) for b in bases[s + 1]]
        target = Matrix(ambient_len, dims[s + 1],
                        [[col[i] for col in target_cols] for i in range(ambient_len)])
        rhs = Matrix(ambient_len, dims[s],
                     [[col[i] for col in image_cols] for i in range(ambient_len)])
        coords = linalg.solve_matrix(target, rhs)
        if coords is None:
            raise ShapeMismatch("hom differential leaves the equivariant family space")
        diffs[s] = coords
    return Complex(dims, diffs)


def graded_ext_weight0_dim(g: GradedModuleComplex, h: GradedModuleComplex, i: int) -> int:
    """Weight-zero equivariant Ext dimension."""
    return cohomology(graded_hom_weight0_complex(g, h)).dim(i)
