"""Simplex-category combinatorics and the Dold-Kan (de)normalization pair.

Chain complexes are carried by the cochain Complex type through the
crosswalk "chain degree p <-> stored degree -p"; denormalization is
level-truncated at a caller-supplied bound, which loses nothing because
the simplicial object is degeneracy-determined above the top chain degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Tuple

from . import linalg
from .complexes import Complex
from .errors import NegativeSupport, NotAComplex, ShapeMismatch
from .linalg import Matrix

Q = Fraction


@dataclass(frozen=True)
class MonotoneMap:
    """Non-decreasing map [m] -> [n]; values has length m + 1."""

    codomain: int
    values: Tuple[int, ...]

    def __post_init__(self):
        if self.codomain < 0 or not self.values:
            raise ShapeMismatch("monotone maps need non-empty ordinals")
        prev = 0
        for v in self.values:
            if v < prev or v > self.codomain:
                raise ShapeMismatch(f"values {self.values} not monotone into [{self.codomain}]")
            prev = v

    @property
    def domain(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    def compose(self, other: "MonotoneMap") -> "MonotoneMap":
        """self after other."""
        if other.codomain != self.domain:
            raise ShapeMismatch("non-composable monotone maps")
        return MonotoneMap(self.codomain, tuple(self.values[v] for v in other.values))

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.codomain + 1))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @staticmethod
    def identity(n: int) -> "MonotoneMap":
        return MonotoneMap(n, tuple(range(n + 1)))

    @staticmethod
    def coface(n: int, i: int) -> "MonotoneMap":
        """The injection [n-1] -> [n] missing i."""
        return MonotoneMap(n, tuple(v if v < i else v + 1 for v in range(n)))

    @staticmethod
    def codegeneracy(n: int, j: int) -> "MonotoneMap":
        """The surjection [n+1] -> [n] hitting j twice."""
        return MonotoneMap(n, tuple(v if v <= j else v - 1 for v in range(n + 2)))


def surjections(n: int, p: int) -> List[MonotoneMap]:
    """All monotone surjections [n] ->> [p]; there are C(n, p) of them."""
    if n < 0 or p < 0:
        raise ShapeMismatch("ordinals must be non-negative")
    if p > n:
        return []
    out = []
    for jumps in combinations(range(1, n + 1), p):
        values = []
        v = 0
        jump_set = set(jumps)
        for i in range(n + 1):
            if i in jump_set:
                v += 1
            values.append(v)
        out.append(MonotoneMap(p, tuple(values)))
    return out


def epi_monic_factorization(alpha: MonotoneMap) -> Tuple[MonotoneMap, MonotoneMap]:
    """The unique factorization alpha = mono . epi in the simplex category."""
    image = sorted(set(alpha.values))
    index = {v: k for k, v in enumerate(image)}
    epi = MonotoneMap(len(image) - 1, tuple(index[v] for v in alpha.values))
    mono = MonotoneMap(alpha.codomain, tuple(image))
    return epi, mono


class SimplicialVS:
    """Level-truncated simplicial vector space with explicit structure maps."""

    __slots__ = ("top_level", "dims", "faces", "degeneracies")

    def __init__(self, top_level: int, dims: List[int], faces: Dict[Tuple[int, int], Matrix],
                 degeneracies: Dict[Tuple[int, int], Matrix], check: bool = True):
        if top_level < 0 or len(dims) != top_level + 1:
            raise ShapeMismatch("need one dimension per level 0..top")
        self.top_level = top_level
        self.dims = list(dims)
        self.faces = dict(faces)
        self.degeneracies = dict(degeneracies)
        if check:
            self._validate_shapes()
            self._validate_identities()

    def dim(self, n: int) -> int:
        if 0 <= n <= self.top_level:
            return self.dims[n]
        return 0

    def face(self, n: int, i: int) -> Matrix:
        """The i-th face map from level n to level n-1."""
        if not (0 <= i <= n <= self.top_level):
            raise ShapeMismatch(f"face ({n}, {i}) out of range")
        return self.faces.get((n, i), Matrix.zero(self.dim(n - 1), self.dim(n)))

    def degeneracy(self, n: int, j: int) -> Matrix:
        """The j-th degeneracy from level n to level n+1."""
        if not (0 <= j <= n) or n + 1 > self.top_level:
            raise ShapeMismatch(f"degeneracy ({n}, {j}) out of range")
        return self.degeneracies.get((n, j), Matrix.zero(self.dim(n + 1), self.dim(n)))

    def _validate_shapes(self):
        for (n, i), m in self.faces.items():
            if not (1 <= n <= self.top_level and 0 <= i <= n):
                raise ShapeMismatch(f"face index ({n}, {i}) out of range")
            if (m.rows, m.cols) != (self.dim(n - 1), self.dim(n)):
                raise ShapeMismatch(f"face ({n}, {i}) has the wrong shape")
        for (n, j), m in self.degeneracies.items():
            if not (0 <= j <= n and n + 1 <= self.top_level):
                raise ShapeMismatch(f"degeneracy index ({n}, {j}) out of range")
            if (m.rows, m.cols) != (self.dim(n + 1), self.dim(n)):
                raise ShapeMismatch(f"degeneracy ({n}, {j}) has the wrong shape")

    def _validate_identities(self):
        if not self.simplicial_identities_hold():
            raise NotAComplex("simplicial identities fail")

    def simplicial_identities_hold(self) -> bool:
        """Check every composable simplicial identity up to the truncation."""
        L = self.top_level
        for n in range(2, L + 1):
            for j in range(n + 1):
                for i in range(j):
                    if self.face(n - 1, i) * self.face(n, j) != \
                            self.face(n - 1, j - 1) * self.face(n, i):
                        return False
        for n in range(0, L - 1):
            for i in range(n + 1):
                for j in range(i, n + 1):
                    if self.degeneracy(n + 1, j + 1) * self.degeneracy(n, i) != \
                            self.degeneracy(n + 1, i) * self.degeneracy(n, j):
                        return False
        for n in range(1, L):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = self.face(n + 1, i) * self.degeneracy(n, j)
                    if i < j:
                        rhs = self.degeneracy(n - 1, j - 1) * self.face(n, i)
                    elif i in (j, j + 1):
                        rhs = Matrix.identity(self.dim(n))
                    else:
                        rhs = self.degeneracy(n - 1, j) * self.face(n, i - 1)
                    if lhs != rhs:
                        return False
        return True


def _chain_dim(v: Complex, p: int) -> int:
    return v.dim(-p)


def _chain_boundary(v: Complex, p: int) -> Matrix:
    """The boundary V_p -> V_{p-1} under the crosswalk."""
    return v.d(-p)


def _summands(v: Complex, n: int) -> List[Tuple[int, MonotoneMap, int]]:
    """Summand index of level n: (p, eta, offset) over surjections [n] ->> [p]."""
    out = []
    off = 0
    for p in range(n + 1):
        dim_p = _chain_dim(v, p)
        if dim_p == 0:
            continue
        for eta in surjections(n, p):
            out.append((p, eta, off))
            off += dim_p
    return out


def _level_dim(v: Complex, n: int) -> int:
    return sum(comb(n, p) * _chain_dim(v, p) for p in range(n + 1))


def _structure_matrix(v: Complex, alpha: MonotoneMap) -> Matrix:
    """The linear map K(alpha) : level codomain(alpha) -> level domain(alpha).

    Per summand (p, eta) factor eta . alpha = mono . epi; the identity case
    transports the summand, the one-step case applies the boundary, all
    other cases contribute zero.
    """
    n = alpha.codomain
    m = alpha.domain
    src = _summands(v, n)
    tgt = _summands(v, m)
    tgt_index = {(p, eta): off for p, eta, off in tgt}
    rows = _level_dim(v, m)
    cols = _level_dim(v, n)
    ent = [[Q(0)] * cols for _ in range(rows)]
    for p, eta, off in src:
        epi, mono = epi_monic_factorization(eta.compose(alpha))
        q = epi.codomain
        if q == p:
            key = (p, epi)
            to = tgt_index.get(key)
            if to is None:
                continue
            for k in range(_chain_dim(v, p)):
                ent[to + k][off + k] = Q(1)
        elif q == p - 1 and mono.values == tuple(range(p)):
            # the mono misses exactly p: apply the boundary
            key = (p - 1, epi)
            to = tgt_index.get(key)
            if to is None:
                continue
            d = _chain_boundary(v, p)
            for i in range(d.rows):
                for k in range(d.cols):
                    if d[i, k]:
                        ent[to + i][off + k] = d[i, k]
    return Matrix(rows, cols, ent)


def denormalize(v: Complex, top_level: int) -> SimplicialVS:
    """Simplicial vector space of a non-negative chain complex, up to a level."""
    if any(n > 0 for n in v.dims):
        raise NegativeSupport("denormalization needs chain degrees >= 0")
    if top_level < 0:
        raise ShapeMismatch("negative level bound")
    dims = [_level_dim(v, n) for n in range(top_level + 1)]
    faces = {}
    degeneracies = {}
    for n in range(1, top_level + 1):
        for i in range(n + 1):
            faces[(n, i)] = _structure_matrix(v, MonotoneMap.coface(n, i))
    for n in range(top_level):
        for j in range(n + 1):
            degeneracies[(n, j)] = _structure_matrix(v, MonotoneMap.codegeneracy(n, j))
    return SimplicialVS(top_level, dims, faces, degeneracies, check=False)


def normalize(s: SimplicialVS) -> Complex:
    """Chain complex of the intersections of the first n face kernels.

    Degree n is the joint kernel of the faces 0..n-1 and the differential
    is (-1)^n times the last face, corestricted; intersecting over all
    faces instead would force the differential to vanish.
    """
    bases = {}
    dims = {}
    for n in range(s.top_level + 1):
        if n == 0:
            bases[0] = Matrix.identity(s.dim(0))
        else:
            stacked = linalg.vstack([s.face(n, i) for i in range(n)])
            bases[n] = linalg.kernel_basis(stacked)
        if bases[n].cols:
            dims[-n] = bases[n].cols
    diffs = {}
    for n in range(1, s.top_level + 1):
        if not bases[n].cols or not bases[n - 1].cols:
            continue
        sign = Q(-1) if n % 2 else Q(1)
        mapped = (s.face(n, n) * bases[n]).scale(sign)
        core = linalg.solve_matrix(bases[n - 1], mapped)
        if core is None:
            raise NotAComplex("last face does not preserve the normalized part")
        diffs[-n] = core
    return Complex(dims, diffs)


def normalized_basis(s: SimplicialVS, n: int) -> Matrix:
    """Basis of the degree-n normalized subspace inside level n."""
    if n == 0:
        return Matrix.identity(s.dim(0))
    stacked = linalg.vstack([s.face(n, i) for i in range(n)])
    return linalg.kernel_basis(stacked)


def roundtrip_iso(v: Complex, top_level: int) -> Dict[int, Matrix]:
    """Explicit chain isomorphism normalize(denormalize(v)) -> v.

    Projects the normalized subspace onto the identity-indexed summand with
    the alternating-sum sign fix; raises if it is not an exact chain iso.
    """
    s = denormalize(v, top_level)
    nv = normalize(s)
    iso = {}
    sign = Q(1)
    for p in range(top_level + 1):
        if p > 0:
            sign = sign * (Q(-1) if p % 2 else Q(1))
        dim_p = _chain_dim(v, p)
        if nv.dim(-p) != dim_p:
            raise NotAComplex(
                f"normalized dimension {nv.dim(-p)} differs from {dim_p} in chain degree {p}")
        if dim_p == 0:
            continue
        basis = normalized_basis(s, p)
        proj_rows = []
        for q, eta, off in _summands(v, p):
            if q == p and eta == MonotoneMap.identity(p):
                for k in range(dim_p):
                    row = [Q(0)] * s.dim(p)
                    row[off + k] = Q(1)
                    proj_rows.append(row)
        proj = Matrix(dim_p, s.dim(p), proj_rows)
        iso[p] = (proj * basis).scale(sign)
        if linalg.rank(iso[p]) != dim_p:
            raise NotAComplex(f"projection is not invertible in chain degree {p}")
    for p in range(1, top_level + 1):
        if not _chain_dim(v, p) or not v.dim(-p + 1):
            continue
        lhs = _chain_boundary(v, p) * iso[p]
        rhs = iso.get(p - 1, Matrix.zero(_chain_dim(v, p - 1), nv.dim(-p + 1))) * nv.d(-p)
        if lhs != rhs:
            raise NotAComplex(f"roundtrip comparison does not commute in chain degree {p}")
    return iso


def binomial_level_dims(v: Complex, top_level: int) -> List[int]:
    """The predicted level dimensions sum_p C(n, p) dim V_p."""
    return [_level_dim(v, n) for n in range(top_level + 1)]
