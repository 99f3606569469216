"""Finite-dimensional representations of surface and unit-tangent groups.

A representation assigns an invertible complex matrix to every presentation
generator and is validated against all relators at construction.
Classification covers: factoring through the surface group (image of c is
the identity), scalarity of the image of c, irreducibility by Burnside span
closure, the invariant subspace dimension, and membership in the explicit
generic set (some handle has two regular images with trivial joint
centralizer).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionFailed, IllConditioned, NotHyperbolic
from .fuchsian import GeodesicClass, SurfaceGroup
from .words import Presentation, Word, unit_tangent_presentation

__all__ = [
    "Representation",
    "RepClassification",
    "evaluate",
    "classify",
    "is_regular",
    "centralizer_dimension",
    "clock_shift_pair",
    "unitary_generic_rep",
    "adjoint_rep",
    "sl2_lift_rep",
    "geodesic_lift_holonomy",
    "dual_rep",
    "trivial_rep",
]

from .numerics import svd_nullity

_RANK_TOL = 1e-8


class Representation:
    """Map from presentation generators to invertible r x r complex matrices."""

    def __init__(self, target: Presentation, images: dict, tolerance: float = 1e-10,
                 name: str = "", exactly_validated: bool = False):
        self.target = target
        self.images = {g: np.asarray(m, dtype=complex) for g, m in images.items()}
        self.tolerance = tolerance
        self.name = name
        self.exactly_validated = exactly_validated
        dims = {m.shape for m in self.images.values()}
        if len(dims) != 1 or any(s[0] != s[1] for s in dims):
            raise ValueError("images must be square matrices of one size")
        self.r = next(iter(dims))[0]
        missing = set(target.generators) - set(self.images)
        if missing:
            raise ValueError(f"missing images for generators {sorted(missing)}")
        self.max_condition = max(np.linalg.cond(m) for m in self.images.values())
        for g, m in self.images.items():
            if abs(np.linalg.det(m)) == 0:
                raise ValueError(f"image of {g} is singular")
        self.validate_relations()

    def validate_relations(self):
        worst = 0.0
        for rel in self.target.relators:
            res = np.abs(evaluate(self, rel) - np.eye(self.r)).max()
            worst = max(worst, res)
        if worst > self.tolerance:
            raise ValueError(
                f"relator residual {worst:.3e} exceeds tolerance {self.tolerance:.1e}")
        self.relator_residual = worst
        return worst

    def __repr__(self):
        return f"Representation(r={self.r}, target={self.target.name!r}, name={self.name!r})"


def evaluate(rep: Representation, w: Word) -> np.ndarray:
    """Product of generator images along the word; identity on the empty word."""
    M = np.eye(rep.r, dtype=complex)
    for s, step in w.letters():
        img = rep.images[s]
        M = M @ (img if step > 0 else np.linalg.inv(img))
    return M


@dataclass(frozen=True)
class RepClassification:
    r: int
    factoring: bool
    c_scalar: complex | None
    irreducible: bool
    invariant_dim: int
    generic_member: bool
    witness: int | None = None
    notes: tuple = field(default_factory=tuple)


def _svd_nullity(M: np.ndarray, tol: float = _RANK_TOL, audit: bool = True) -> int:
    nullity, _ = svd_nullity(M, tol, audit)
    return nullity


def is_regular(m: np.ndarray) -> bool:
    """True iff the matrix has r distinct eigenvalues, with a safe margin."""
    m = np.asarray(m, dtype=complex)
    eig = np.linalg.eigvals(m)
    scale = max(np.abs(eig).max(), 1e-300)
    thr = scale * 1e-8
    r = len(eig)
    if r == 1:
        return True
    gaps = [abs(eig[i] - eig[j]) for i in range(r) for j in range(i + 1, r)]
    gap = min(gaps)
    if gap > 10 * thr:
        return True
    if gap < 0.1 * thr:
        return False
    raise IllConditioned(
        f"eigenvalue gap {gap:.3e} is within a factor 10 of threshold {thr:.3e}")


def centralizer_dimension(ms) -> int:
    """Dimension of {X : m X = X m for all m}, by SVD of the stacked
    commutator maps X -> mX - Xm (row-major vectorization)."""
    ms = [np.asarray(m, dtype=complex) for m in ms]
    r = ms[0].shape[0]
    eye = np.eye(r)
    blocks = [np.kron(m, eye) - np.kron(eye, m.T) for m in ms]
    return _svd_nullity(np.vstack(blocks))


def _burnside_span_dim(images, r, tol=1e-10):
    """Dimension of the algebra generated by the images (span closure)."""
    vecs = [np.eye(r, dtype=complex).reshape(-1)]
    vecs += [m.reshape(-1) for m in images]
    basis = _orthonormalize(np.array(vecs), tol)
    while True:
        candidates = []
        for b in basis:
            B = b.reshape(r, r)
            for m in images:
                candidates.append((B @ m).reshape(-1))
        grown = _orthonormalize(np.vstack([basis, np.array(candidates)]), tol)
        if len(grown) == len(basis):
            return len(basis)
        basis = grown
        if len(basis) >= r * r:
            return r * r


def _orthonormalize(rows, tol):
    u, s, vh = np.linalg.svd(rows, full_matrices=False)
    scale = s[0] if len(s) and s[0] > 0 else 1.0
    return vh[s > tol * scale]


def classify(rep: Representation) -> RepClassification:
    """Factoring / scalar-fiber / irreducibility / invariants / generic-set flags."""
    r = rep.r
    notes = []
    if "c" in rep.images:
        C = rep.images["c"]
        factoring = bool(np.abs(C - np.eye(r)).max() <= rep.tolerance)
        zeta = complex(np.trace(C)) / r
        c_scalar = zeta if np.abs(C - zeta * np.eye(r)).max() <= max(
            rep.tolerance, 1e-10) else None
    else:
        factoring = True
        c_scalar = 1.0 + 0.0j
    span = _burnside_span_dim(list(rep.images.values()), r)
    irreducible = span == r * r
    try:
        commutant = centralizer_dimension(list(rep.images.values()))
        if irreducible != (commutant == 1):
            notes.append(f"burnside/commutant mismatch: span {span}, commutant {commutant}")
    except IllConditioned:
        notes.append("commutant cross-check ill-conditioned")
    stacked = np.vstack([rep.images[g] - np.eye(r) for g in rep.target.generators])
    floor = max(1.0, max(float(np.abs(m).max()) for m in rep.images.values()))
    invariant_dim, _ = svd_nullity(stacked, audit=False, scale_floor=floor)

    generic = False
    witness = None
    genus = sum(1 for g in rep.target.generators if g.startswith("a"))
    if irreducible:
        for ell in range(1, genus + 1):
            try:
                A, B = rep.images.get(f"a{ell}"), rep.images.get(f"b{ell}")
                if A is None or B is None:
                    continue
                if is_regular(A) and is_regular(B) and centralizer_dimension([A, B]) == 1:
                    generic, witness = True, ell
                    break
            except IllConditioned:
                notes.append(f"generic test ill-conditioned at handle {ell}")
    return RepClassification(
        r=r,
        factoring=factoring,
        c_scalar=c_scalar,
        irreducible=irreducible,
        invariant_dim=invariant_dim,
        generic_member=generic,
        witness=witness,
        notes=tuple(notes),
    )


def clock_shift_pair(r: int):
    """Unitary pair with [A, B] = exp(2*pi*i/r) * Id: the cyclic shift and
    the diagonal of r-th roots of unity."""
    if r < 1:
        raise ValueError("r must be >= 1")
    A = np.zeros((r, r), dtype=complex)
    for i in range(r):
        A[i, (i + 1) % r] = 1.0
    omega = cmath.exp(2j * cmath.pi / r)
    B = np.diag([omega ** k for k in range(r)])
    return A, B


def _shift_diag_pair(r: int, eta: complex):
    """Unitary pair with commutator eta * Id, for eta an r-th root of unity."""
    A = np.zeros((r, r), dtype=complex)
    for i in range(r):
        A[i, (i + 1) % r] = 1.0
    B = np.diag([eta ** k for k in range(r)])
    return A, B


def trivial_rep(genus: int, r: int = 1) -> Representation:
    p = unit_tangent_presentation(genus)
    eye = np.eye(r, dtype=complex)
    return Representation(p, {g: eye for g in p.generators}, name=f"trivial:{r}")


def unitary_generic_rep(genus: int, r: int, j: int) -> Representation:
    """Unitary representation in the explicit generic set, indexed by the
    scalar exp(2*pi*i*j/((2G-2) r)) assigned to the fiber generator."""
    if genus < 2 or r < 1:
        raise ValueError("need genus >= 2 and r >= 1")
    if not 1 <= j <= r * (2 * genus - 2):
        raise ValueError(f"j must lie in 1..{r * (2 * genus - 2)}")
    p = unit_tangent_presentation(genus)
    omega = cmath.exp(2j * cmath.pi / r)
    zeta = cmath.exp(2j * cmath.pi * j / r)
    eta = zeta / omega
    A, B = clock_shift_pair(r)
    A2, B2 = _shift_diag_pair(r, eta)
    eye = np.eye(r, dtype=complex)
    images = {g: eye for g in p.generators}
    images["a1"], images["b1"] = A, B
    images["a2"], images["b2"] = A2, B2
    images["c"] = cmath.exp(2j * cmath.pi * j / ((2 * genus - 2) * r)) * eye
    try:
        rep = Representation(p, images, tolerance=1e-12,
                             name=f"unitary-generic:{genus},{r},{j}")
    except ValueError as ex:
        raise ConstructionFailed(str(ex)) from ex
    return rep


_SL2_BASIS = (
    np.array([[1.0, 0.0], [0.0, -1.0]]),
    np.array([[0.0, 1.0], [0.0, 0.0]]),
    np.array([[0.0, 0.0], [1.0, 0.0]]),
)


def _ad_matrix(g: np.ndarray) -> np.ndarray:
    """Conjugation action on trace-free 2x2 matrices in the (H, E, F) basis."""
    ginv = np.linalg.inv(g)
    cols = []
    for X in _SL2_BASIS:
        Y = g @ X @ ginv
        cols.append((Y[0, 0], Y[0, 1], Y[1, 0]))
    return np.array(cols, dtype=complex).T


def _ad_matrix_exact(entries):
    """Exact 3x3 adjoint matrix over the quartic field (nested tuples)."""
    (a, b), (c, d) = entries
    cols = []
    for X in ((1, 0, 0, -1), (0, 1, 0, 0), (0, 0, 1, 0)):
        x11, x12, x21, x22 = X
        # g X adj(g), adj valid since det = 1
        y11 = (a * x11 + b * x21) * d - (a * x12 + b * x22) * c
        y12 = -(a * x11 + b * x21) * b + (a * x12 + b * x22) * a
        y21 = (c * x11 + d * x21) * d - (c * x12 + d * x22) * c
        cols.append((y11, y12, y21))
    return tuple(zip(*cols))


def _exact_mat3_mul(A, B):
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(3)), start=A[i][0] * 0)
              for j in range(3))
        for i in range(3)
    )


def _exact_adjoint_relator_check(group: SurfaceGroup) -> bool:
    """Exact proof that the adjoint images satisfy the surface relator."""
    from .exactfield import ONE, ZERO

    ident = ((ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE))
    acc = ident
    for i in range(0, 2 * group.genus, 2):
        a, b = group.generators[i], group.generators[i + 1]
        mats = [
            _ad_matrix_exact(a.entries),
            _ad_matrix_exact(b.entries),
            _ad_matrix_exact(_exact_inv2(a.entries)),
            _ad_matrix_exact(_exact_inv2(b.entries)),
        ]
        for m in mats:
            acc = _exact_mat3_mul(acc, m)
    return acc == ident


def _exact_inv2(entries):
    (a, b), (c, d) = entries
    return ((d, -b), (-c, a))


def adjoint_rep(group: SurfaceGroup) -> Representation:
    """Adjoint holonomy twisted by nothing along the fiber: c maps to Id.

    For exact groups the relator is verified in exact arithmetic; the float
    tolerance only covers the conditioning of the evaluated product.
    """
    p = unit_tangent_presentation(group.genus)
    images = {}
    exact_ok = False
    for sym, gen in zip(group.generator_symbols, group.generators):
        if gen.exact:
            ad = _ad_matrix_exact(gen.entries)
            images[sym] = np.array([[float(x) for x in row] for row in ad],
                                   dtype=complex)
        else:
            images[sym] = _ad_matrix(gen.as_float())
    images["c"] = np.eye(3, dtype=complex)
    if group.mode == "exact":
        exact_ok = _exact_adjoint_relator_check(group)
        if not exact_ok:
            raise ConstructionFailed("adjoint images fail the relator exactly")
    return Representation(p, images, tolerance=1e-8, name=f"adjoint:{group.name}",
                          exactly_validated=exact_ok)


def sl2_lift_rep(group: SurfaceGroup, signs=None) -> Representation:
    """Rank-2 lift of the Fuchsian group with the fiber generator acting as
    -Id.  Any sign choice for the generator lifts is accepted; commutators do
    not see it."""
    n = 2 * group.genus
    if signs is None:
        signs = (1,) * n
    if len(signs) != n or any(s not in (-1, 1) for s in signs):
        raise ValueError("signs must be a tuple of +-1 per generator")
    p = unit_tangent_presentation(group.genus)
    images = {}
    for sym, gen, s in zip(group.generator_symbols, group.generators, signs):
        images[sym] = s * gen.as_float().astype(complex)
    images["c"] = -np.eye(2, dtype=complex)
    prod = np.eye(2, dtype=complex)
    for i in range(0, n, 2):
        A = images[group.generator_symbols[i]]
        B = images[group.generator_symbols[i + 1]]
        prod = prod @ A @ B @ np.linalg.inv(A) @ np.linalg.inv(B)
    if np.abs(prod - np.eye(2)).max() > 1e-10:
        raise ConstructionFailed(
            "commutator product of the lifts is not +Id; input matrices do "
            "not come from a surface group")
    exact_ok = False
    if group.mode == "exact":
        from .exactfield import ONE, ZERO

        ident = ((ONE, ZERO), (ZERO, ONE))
        acc = ident
        for i in range(0, n, 2):
            a = group.generators[i].entries
            b = group.generators[i + 1].entries
            for m in (a, b, _exact_inv2(a), _exact_inv2(b)):
                acc = tuple(
                    tuple(acc[r][0] * m[0][cix] + acc[r][1] * m[1][cix]
                          for cix in range(2))
                    for r in range(2)
                )
        exact_ok = acc == ident
        if not exact_ok:
            raise ConstructionFailed("lift commutator product is not +Id exactly")
    return Representation(p, images, tolerance=1e-10, name=f"sl2-lift:{group.name}",
                          exactly_validated=exact_ok)


def geodesic_lift_holonomy(rep_tau: Representation, cls: GeodesicClass) -> np.ndarray:
    """The rank-2 lift of a geodesic class with trace +2cosh(l/2)."""
    if not cls.matrix.is_hyperbolic():
        raise NotHyperbolic("geodesic class matrix is not hyperbolic")
    M = cls.matrix.as_float().astype(complex)
    if M[0, 0].real + M[1, 1].real < 0:
        M = -M
    return M


def dual_rep(rep: Representation) -> Representation:
    """Inverse-transpose on every generator image."""
    images = {g: np.linalg.inv(m).T for g, m in rep.images.items()}
    return Representation(rep.target, images, tolerance=max(rep.tolerance, 1e-9),
                          name=f"dual({rep.name})")
