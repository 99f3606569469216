"""Cocompact Fuchsian surface groups and primitive geodesic length spectra.

Matrices act on the upper half-plane as elements of PSL(2, R), stored as
2x2 real matrices of determinant one with a canonical projective sign
(trace >= 0; first nonzero entry positive when the trace vanishes).
Groups come with canonical generators a1, b1, ..., aG, bG satisfying
[a1,b1]...[aG,bG] = Id, built from side pairings of a regular 4G-gon.

The genus-2 group of the regular octagon with opposite sides identified
(the Bolza surface) is also available with exact matrix entries in the
quartic field Q(sqrt(1+sqrt(2))), which makes conjugacy-class
deduplication exact.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, NotHyperbolic
from .exactfield import BETA, ExactComplex, ExactReal, ONE, ONE_PLUS_SQRT2, SQRT2, ZERO
from .words import Word

__all__ = [
    "Isometry",
    "SurfaceGroup",
    "GeodesicClass",
    "LengthSpectrum",
    "EnumerationOptions",
    "surface_group_regular_polygon",
    "bolza_group",
    "translation_length",
    "enumerate_spectrum",
]

_FLOAT_DET_TOL = 1e-12
_HYPERBOLIC_EPS = 1e-9


# ---------------------------------------------------------------------------
# exact 2x2 helpers (nested tuples of ExactReal)

def _emul(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def _einv(A):
    # valid for det = 1
    return ((A[1][1], -A[0][1]), (-A[1][0], A[0][0]))


def _eneg(A):
    return ((-A[0][0], -A[0][1]), (-A[1][0], -A[1][1]))


def _etrace(A):
    return A[0][0] + A[1][1]


def _edet(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def _esign_normalize(A):
    t = _etrace(A)
    s = t.sign()
    if s < 0:
        return _eneg(A)
    if s == 0:
        for x in (A[0][0], A[0][1], A[1][0], A[1][1]):
            xs = x.sign()
            if xs:
                return _eneg(A) if xs < 0 else A
    return A


def _efloat(A):
    return np.array([[float(A[0][0]), float(A[0][1])], [float(A[1][0]), float(A[1][1])]])


def _fsign_normalize(M):
    t = M[0, 0] + M[1, 1]
    if t < 0:
        return -M
    if t == 0:
        for x in M.flat:
            if x != 0:
                return -M if x < 0 else M
    return M


class Isometry:
    """Element of PSL(2, R) with float or exact entries."""

    __slots__ = ("entries", "exact", "_float")

    def __init__(self, entries, exact=False):
        if exact:
            A = tuple(tuple(x if isinstance(x, ExactReal) else ExactReal(x) for x in row)
                      for row in entries)
            if _edet(A) != ONE:
                raise ValueError("exact isometry must have determinant 1")
            A = _esign_normalize(A)
            self.entries = A
            self._float = _efloat(A)
        else:
            M = np.asarray(entries, dtype=float)
            det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
            if abs(det - 1.0) > _FLOAT_DET_TOL:
                if det <= 0:
                    raise ValueError(f"isometry determinant {det} is not positive")
                M = M / math.sqrt(det)
            M = _fsign_normalize(M)
            M.flags.writeable = False
            self.entries = M
            self._float = M
        self.exact = exact

    def as_float(self) -> np.ndarray:
        return self._float

    def trace(self):
        if self.exact:
            return _etrace(self.entries)
        return float(self._float[0, 0] + self._float[1, 1])

    def trace_float(self) -> float:
        return float(self._float[0, 0] + self._float[1, 1])

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if self.exact and other.exact:
            return Isometry(_emul(self.entries, other.entries), exact=True)
        return Isometry(self._float @ other._float)

    def inverse(self) -> "Isometry":
        if self.exact:
            return Isometry(_einv(self.entries), exact=True)
        M = self._float
        inv = np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])
        return Isometry(inv)

    def is_hyperbolic(self) -> bool:
        if self.exact:
            t = abs(_etrace(self.entries))
            return (t * t - ExactReal(4)).sign() > 0
        return abs(self.trace_float()) > 2.0 + _HYPERBOLIC_EPS

    def displacement_cosh(self) -> float:
        """cosh of the hyperbolic distance d(i, g*i)."""
        M = self._float
        return float((M * M).sum() / 2.0)

    def __eq__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        if self.exact and other.exact:
            return self.entries == other.entries
        return bool(np.allclose(self._float, other._float, rtol=0, atol=1e-10))

    def __hash__(self):
        if self.exact:
            return hash(self.entries)
        return hash(tuple(np.round(self._float, 9).flat))

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"Isometry({self._float.tolist()}, {kind})"


def translation_length(m: Isometry) -> float:
    """2*arccosh(|tr|/2); raises NotHyperbolic when |tr| <= 2."""
    if not m.is_hyperbolic():
        raise NotHyperbolic(f"|trace| = {abs(m.trace_float()):.6g} <= 2")
    return 2.0 * math.acosh(abs(m.trace_float()) / 2.0)


# ---------------------------------------------------------------------------
# constructions: regular 4G-gon side pairings

def _rot(phi):
    return np.array([[np.exp(1j * phi / 2), 0], [0, np.exp(-1j * phi / 2)]])


def _trans(t):
    return np.array([[np.cosh(t / 2), np.sinh(t / 2)], [np.sinh(t / 2), np.cosh(t / 2)]],
                    dtype=complex)


_K = np.array([[1, -1j], [1, 1j]])
_KINV = np.linalg.inv(_K)


def _to_half_plane(M):
    R = _KINV @ M @ _K
    if np.abs(R.imag).max() > 1e-10:
        raise ValueError("disk-model matrix did not convert to a real matrix")
    return R.real


def _pairing(n, r, target, source):
    """Isometry carrying side `source` of the regular n-gon onto side `target`.

    Sides are indexed by their midpoint direction 2*pi*k/n; r is the apothem.
    The map is a flip through the standard side conjugated into place.
    """
    Mt = _rot(2 * np.pi * target / n) @ _trans(r)
    Ms = _rot(2 * np.pi * source / n) @ _trans(r)
    return Mt @ _rot(np.pi) @ np.linalg.inv(Ms)


@dataclass(frozen=True)
class SurfaceGroup:
    """Genus-G Fuchsian group with canonical generators a1,b1,...,aG,bG."""

    genus: int
    generators: tuple
    mode: str  # "exact" | "float"
    name: str
    circumradius: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError("genus must be >= 2")
        if len(self.generators) != 2 * self.genus:
            raise ValueError("expected 2G generators")
        rel = _relator_product(self.generators)
        if self.mode == "exact":
            I = ((ONE, ZERO), (ZERO, ONE))
            if rel.entries != I:
                raise ValueError("surface relator does not hold exactly")
        else:
            if np.abs(rel.as_float() - np.eye(2)).max() > 1e-10:
                raise ValueError("surface relator does not hold within 1e-10")
        for g in self.generators:
            if not g.is_hyperbolic():
                raise ValueError("all canonical generators must be hyperbolic")

    @property
    def generator_symbols(self):
        syms = []
        for i in range(1, self.genus + 1):
            syms += [f"a{i}", f"b{i}"]
        return tuple(syms)

    def letter_matrices(self):
        """Float matrices for letters: generators then inverses."""
        mats = [g.as_float() for g in self.generators]
        mats += [g.inverse().as_float() for g in self.generators]
        return np.array(mats)

    def exact_letter_matrices(self):
        if self.mode != "exact":
            raise ValueError("group is not in exact mode")
        mats = [g.entries for g in self.generators]
        mats += [_einv(g.entries) for g in self.generators]
        return mats

    def word_isometry(self, w: Word) -> Isometry:
        index = {s: i for i, s in enumerate(self.generator_symbols)}
        if self.mode == "exact":
            M = ((ONE, ZERO), (ZERO, ONE))
            for s, step in w.letters():
                G = self.generators[index[s]].entries
                M = _emul(M, G if step > 0 else _einv(G))
            return Isometry(M, exact=True)
        M = np.eye(2)
        for s, step in w.letters():
            G = self.generators[index[s]].as_float()
            M = M @ (G if step > 0 else np.linalg.inv(G))
        return Isometry(M)

    def to_float(self) -> "SurfaceGroup":
        if self.mode == "float":
            return self
        gens = tuple(Isometry(g.as_float()) for g in self.generators)
        return SurfaceGroup(self.genus, gens, "float", self.name,
                            circumradius=self.circumradius)


def _relator_product(gens):
    out = None
    for i in range(0, len(gens), 2):
        a, b = gens[i], gens[i + 1]
        c = a @ b @ a.inverse() @ b.inverse()
        out = c if out is None else out @ c
    return out


def surface_group_regular_polygon(genus: int) -> SurfaceGroup:
    """Side pairings of the regular 4G-gon with the canonical identification
    pattern a b a^-1 b^-1 ..., angle sum 2*pi."""
    if genus < 2:
        raise ValueError("genus must be >= 2")
    n = 4 * genus
    r = np.arccosh(1.0 / np.tan(np.pi / n))
    gens = []
    for m in range(genus):
        a = _to_half_plane(_pairing(n, r, 4 * m, 4 * m + 2))
        b = _to_half_plane(_pairing(n, r, 4 * m + 3, 4 * m + 1))
        gens += [Isometry(a), Isometry(b)]
    circum = math.acosh(1.0 / math.tan(math.pi / n) ** 2)
    return SurfaceGroup(genus, tuple(gens), "float", f"polygon:{genus}",
                        circumradius=circum)


def _bolza_exact_generators():
    """Exact octagon side pairings, rewritten to canonical generators.

    The opposite-side pairings g_k of the regular octagon satisfy
    g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3 = Id; the words below are a free
    basis turning that relation into [a1,b1][a2,b2] = Id.
    """
    half = ExactReal(1, den=2)
    cosh_r = ExactComplex(ONE_PLUS_SQRT2)          # w^2
    sinh_r = ExactComplex(BETA * SQRT2)            # w^3 - w
    inv_sqrt2 = SQRT2 * half
    phases = [
        ExactComplex(ONE),
        ExactComplex(inv_sqrt2, inv_sqrt2),
        ExactComplex(ZERO, ONE),
        ExactComplex(-inv_sqrt2, inv_sqrt2),
    ]

    def cmul(A, B):
        return (
            (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
        )

    def cinv(M):
        # SU(1,1) inverse of [[p, q], [qbar, pbar]] with det 1
        return ((M[1][1], -M[0][1]), (-M[1][0], M[0][0]))

    g = []
    for ph in phases:
        g.append(((cosh_r, ph * sinh_r), (ph.conj() * sinh_r, cosh_r)))
    gi = [cinv(x) for x in g]
    words = [
        g[0],
        gi[1],
        cmul(cmul(gi[1], g[0]), g[2]),
        cmul(cmul(gi[3], gi[0]), g[1]),
    ]

    # Cayley transform to the upper half-plane: K^-1 M K with K = [[1,-i],[1,i]]
    i_unit = ExactComplex(ZERO, ONE)
    one_c = ExactComplex(ONE)
    half_c = ExactComplex(half)
    ihalf_c = ExactComplex(ZERO, half)
    K = ((one_c, -i_unit), (one_c, i_unit))
    Kinv = ((half_c, half_c), (ihalf_c, -ihalf_c))
    out = []
    for M in words:
        R = cmul(cmul(Kinv, M), K)
        for row in R:
            for z in row:
                if not z.im.is_zero():
                    raise ValueError("Bolza generator failed to convert to a real matrix")
        out.append(tuple(tuple(z.re for z in row) for row in R))
    return out


def bolza_group(exact: bool = True) -> SurfaceGroup:
    """Genus-2 group of the regular octagon with opposite sides identified."""
    mats = _bolza_exact_generators()
    circum = math.acosh((1.0 + math.sqrt(2.0)) ** 2)
    if exact:
        gens = tuple(Isometry(m, exact=True) for m in mats)
        return SurfaceGroup(2, gens, "exact", "bolza", circumradius=circum)
    gens = tuple(Isometry(_efloat(m)) for m in mats)
    return SurfaceGroup(2, gens, "float", "bolza", circumradius=circum)


# ---------------------------------------------------------------------------
# length spectrum enumeration

@dataclass(frozen=True)
class GeodesicClass:
    """Oriented conjugacy class of a hyperbolic element."""

    word: Word
    matrix: Isometry
    trace: object
    length: float
    primitive: bool = True
    power_index: int = 1
    multiplicity: int = 1


@dataclass(frozen=True)
class LengthSpectrum:
    group: SurfaceGroup
    cutoff: float
    classes: tuple
    params: dict
    attestation: str

    def primitives(self):
        return tuple(c for c in self.classes if c.primitive)

    def __len__(self):
        return len(self.classes)


@dataclass(frozen=True)
class EnumerationOptions:
    max_word_length: int | None = None
    conj_radius: int = 4
    node_budget: int = 5_000_000
    prune_slack: float | None = None
    threads: int = 1


def _default_word_length(L: float) -> int:
    return max(6, math.ceil(1.6 * L))


def _default_slack(group: SurfaceGroup) -> float:
    # Covers the detour a conjugacy class representative can take away from
    # the base point; calibrated against exhaustive enumeration on the
    # octagon group, where class sets stabilize well below this value.
    max_disp = max(math.acosh(g.displacement_cosh()) for g in group.generators)
    diam = 2.0 * group.circumradius if group.circumradius > 0 else 2.0 * max_disp
    return diam + max_disp


def _letter_tables(group: SurfaceGroup):
    n_gen = 2 * group.genus
    mats = group.letter_matrices()
    inv_of = np.concatenate([np.arange(n_gen) + n_gen, np.arange(n_gen)])
    symbols = group.generator_symbols
    letter_sym = [(symbols[i], 1) for i in range(n_gen)] + [
        (symbols[i], -1) for i in range(n_gen)]
    return mats, inv_of, letter_sym


def _subtree_candidates(root_letter, mats, inv_of, depth_max, cosh_radius, tr_max,
                        budget_counter):
    """Level-by-level expansion of one first-letter subtree.

    Returns candidate (word, trace) pairs for cyclically reduced hyperbolic
    words with translation length below the cutoff.
    """
    n_letters = len(mats)
    words = np.array([[root_letter]], dtype=np.int8)
    pmats = mats[root_letter][None, :, :]
    cands = []
    tr0 = pmats[0, 0, 0] + pmats[0, 1, 1]
    if 2.0 + _HYPERBOLIC_EPS < abs(tr0) <= tr_max:
        cands.append(((root_letter,), float(tr0)))
    for depth in range(2, depth_max + 1):
        new_w, new_m = [], []
        for t in range(n_letters):
            mask = words[:, -1] != inv_of[t]
            if not mask.any():
                continue
            m = pmats[mask] @ mats[t]
            disp = (m * m).sum(axis=(1, 2)) / 2.0
            keep = disp <= cosh_radius
            if not keep.any():
                continue
            w = words[mask][keep]
            m = m[keep]
            new_w.append(np.concatenate(
                [w, np.full((len(w), 1), t, dtype=np.int8)], axis=1))
            new_m.append(m)
        if not new_w:
            break
        words = np.concatenate(new_w)
        pmats = np.concatenate(new_m)
        budget_counter[0] += len(words)
        if budget_counter[0] > budget_counter[1]:
            raise BudgetExceeded(
                f"enumeration frontier exceeded {budget_counter[1]} nodes; "
                "lower the length cutoff or raise the node budget")
        tr = pmats[:, 0, 0] + pmats[:, 1, 1]
        cyc = words[:, 0] != inv_of[words[:, -1]]
        sel = (np.abs(tr) > 2.0 + _HYPERBOLIC_EPS) & (np.abs(tr) <= tr_max) & cyc
        for w, t in zip(words[sel], tr[sel]):
            cands.append((tuple(int(x) for x in w), float(t)))
    frontier_disp = (pmats * pmats).sum(axis=(1, 2)) / 2.0 if len(pmats) else np.array([])
    return cands, frontier_disp


def _canonical_rotation(word):
    return min(word[i:] + word[:i] for i in range(len(word)))


def _conjugator_words(n_letters, inv_of, radius):
    out = [()]
    frontier = [()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for t in range(n_letters):
                if not w or w[-1] != inv_of[t]:
                    nxt.append(w + (t,))
        out += nxt
        frontier = nxt
    return out


def _float_word_matrix(word, mats):
    M = np.eye(2)
    for t in word:
        M = M @ mats[t]
    return M


def _exact_word_matrix(word, emats):
    M = ((ONE, ZERO), (ZERO, ONE))
    for t in word:
        M = _emul(M, emats[t])
    return M


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _quantize(M, digits=6):
    return tuple(np.round(M, digits).flat)


class _ConjugationSearch:
    """Bounded conjugation search over reduced words of length <= radius.

    Float orbits are vectorized; in exact mode a float hit only proposes a
    specific conjugator, which is then confirmed by exact matrix equality.
    """

    def __init__(self, group, mats, inv_of, radius):
        self.exact = group.mode == "exact"
        self.words = _conjugator_words(len(mats), inv_of, radius)
        self.fconj = np.array([_float_word_matrix(w, mats) for w in self.words])
        self.fconj_inv = np.linalg.inv(self.fconj)
        self.elets = group.exact_letter_matrices() if self.exact else None
        self._inv_of = inv_of

    def orbit(self, M):
        """Sign-normalized conjugates c M c^-1 for every conjugator c."""
        X = self.fconj @ M[None, :, :] @ self.fconj_inv
        tr = X[:, 0, 0] + X[:, 1, 1]
        X[tr < 0] *= -1.0
        return X

    def _pair_word(self, ki, kj):
        # word of conj_j^-1 * conj_i, freely reduced
        wi, wj = self.words[ki], self.words[kj]
        w = tuple(self._inv_of[t] for t in reversed(wj)) + wi
        out = []
        for t in w:
            if out and out[-1] == self._inv_of[t]:
                out.pop()
            else:
                out.append(t)
        return tuple(out)

    def confirm(self, A, B, ki, kj):
        """Exact check of s A s^-1 == B for the s implied by colliding keys."""
        s_word = self._pair_word(ki, kj)
        S = _exact_word_matrix(s_word, self.elets)
        return _esign_normalize(_emul(_emul(S, A), _einv(S))) == B

    def confirm_float(self, A, B, ki, kj, mats, tol=1e-9):
        s_word = self._pair_word(ki, kj)
        S = _float_word_matrix(s_word, mats)
        X = _fsign_normalize(S @ A @ np.linalg.inv(S))
        return np.abs(X - B).max() <= tol * max(1.0, float(np.abs(B).max()))

    def are_conjugate(self, A_float, B_float, A_exact=None, B_exact=None, tol=1e-9):
        """Full orbit scan; used by power detection and invariants testing."""
        orbit = self.orbit(A_float)
        diff = np.abs(orbit - B_float[None, :, :]).max(axis=(1, 2))
        scale = max(1.0, float(np.abs(B_float).max()))
        hits = np.nonzero(diff <= max(tol * scale, 1e-7))[0]
        if not len(hits):
            return False
        if not self.exact or A_exact is None:
            return bool((diff[hits] <= tol * scale).any())
        for k in hits:
            S = _exact_word_matrix(self.words[k], self.elets)
            if _esign_normalize(_emul(_emul(S, A_exact), _einv(S))) == B_exact:
                return True
        return False


def _dedup_classes(cand_words, group, mats, inv_of, radius, search=None):
    """Group candidate words into conjugacy classes.

    Candidates are keyed by canonical cyclic rotation, bucketed by trace and
    merged through a bounded conjugation search of the given radius.  In
    exact mode every proposed merge is confirmed by exact matrix equality.
    """
    uniq = sorted(set(_canonical_rotation(w) for w in cand_words))
    if not uniq:
        return []
    exact = group.mode == "exact"
    fmats = [_fsign_normalize(_float_word_matrix(w, mats)) for w in uniq]
    traces = [float(M[0, 0] + M[1, 1]) for M in fmats]
    emats = None
    etraces = None
    if exact:
        elets = group.exact_letter_matrices()
        emats = [_esign_normalize(_exact_word_matrix(w, elets)) for w in uniq]
        etraces = [_etrace(M) for M in emats]

    # trace buckets
    order = sorted(range(len(uniq)), key=lambda i: traces[i])
    buckets = []
    for i in order:
        if exact:
            if buckets and etraces[buckets[-1][-1]] == etraces[i]:
                buckets[-1].append(i)
            else:
                buckets.append([i])
        else:
            tol = 1e-9 * max(1.0, abs(traces[i]))
            if buckets and abs(traces[buckets[-1][-1]] - traces[i]) <= tol:
                buckets[-1].append(i)
            else:
                buckets.append([i])

    search = search or _ConjugationSearch(group, mats, inv_of, radius)
    uf = _UnionFind(len(uniq))
    for bucket in buckets:
        if len(bucket) == 1:
            continue
        keymap = {}
        for i in bucket:
            orbit = np.round(search.orbit(fmats[i]), 6).reshape(-1, 4)
            seen_local = set()
            for k, row in enumerate(orbit):
                key = row.tobytes()
                if key in seen_local:
                    continue
                seen_local.add(key)
                prev = keymap.get(key)
                if prev is None:
                    keymap[key] = (i, k)
                    continue
                j, kj = prev
                if uf.find(i) == uf.find(j):
                    continue
                if exact:
                    if search.confirm(emats[i], emats[j], k, kj):
                        uf.union(i, j)
                else:
                    if search.confirm_float(fmats[i], fmats[j], k, kj, mats):
                        uf.union(i, j)

    groups = {}
    for i in range(len(uniq)):
        groups.setdefault(uf.find(i), []).append(i)
    classes = []
    for members in groups.values():
        rep = min(members, key=lambda i: (len(uniq[i]), uniq[i]))
        classes.append((uniq[rep], emats[rep] if exact else fmats[rep],
                        etraces[rep] if exact else traces[rep]))
    return classes


def _word_from_letters(word, letter_sym):
    return Word.from_letters(letter_sym[t] for t in word)


def enumerate_spectrum(group: SurfaceGroup, cutoff: float,
                       opts: EnumerationOptions = EnumerationOptions()) -> LengthSpectrum:
    """All oriented conjugacy classes of hyperbolic elements with translation
    length <= cutoff representable by words of bounded length.

    Enumeration runs over reduced words with a displacement-based prune;
    deduplication and primitivity detection follow the group's arithmetic
    mode.  The completeness attestation is "exhaustive" only when the prune
    certifies that no longer word can stay under the cutoff.
    """
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")
    N = opts.max_word_length or _default_word_length(cutoff)
    slack = opts.prune_slack if opts.prune_slack is not None else _default_slack(group)
    mats, inv_of, letter_sym = _letter_tables(group)
    n_letters = len(mats)
    cosh_radius = math.cosh(cutoff + slack)
    tr_max = 2.0 * math.cosh(cutoff / 2.0) + 1e-9
    budget_counter = [0, opts.node_budget]

    def run_subtree(letter):
        return _subtree_candidates(letter, mats, inv_of, N, cosh_radius, tr_max,
                                   budget_counter)

    if opts.threads > 1:
        with ThreadPoolExecutor(max_workers=opts.threads) as pool:
            results = list(pool.map(run_subtree, range(n_letters)))
    else:
        results = [run_subtree(t) for t in range(n_letters)]

    cand_words = []
    frontier_disps = []
    for cands, frontier in results:
        cand_words += [w for w, _ in cands]
        if len(frontier):
            frontier_disps.append(frontier.min())
    exhaustive = (not frontier_disps) or (
        math.acosh(max(1.0, min(frontier_disps))) - slack > cutoff)

    search = _ConjugationSearch(group, mats, inv_of, opts.conj_radius)
    raw = _dedup_classes(cand_words, group, mats, inv_of, opts.conj_radius, search)

    entries = []
    for word, matrix, trace in raw:
        tr_abs = abs(float(trace) if isinstance(trace, ExactReal) else trace)
        if isinstance(trace, ExactReal):
            if (abs(trace) * abs(trace) - ExactReal(4)).sign() <= 0:
                continue
        elif tr_abs <= 2.0 + _HYPERBOLIC_EPS:
            continue
        length = 2.0 * math.acosh(tr_abs / 2.0)
        if length > cutoff + 1e-9:
            continue
        iso = Isometry(matrix, exact=group.mode == "exact") if not isinstance(
            matrix, Isometry) else matrix
        entries.append({
            "word": _word_from_letters(word, letter_sym),
            "letters": word,
            "iso": iso,
            "trace": trace,
            "length": length,
        })
    entries.sort(key=lambda e: (e["length"], e["letters"]))

    _assign_power_indices(entries, group, search)

    # multiplicities: oriented classes sharing a length
    lengths = [e["length"] for e in entries]
    for i, e in enumerate(entries):
        tol = 1e-9 * max(1.0, e["length"])
        e["multiplicity"] = sum(1 for x in lengths if abs(x - e["length"]) <= tol)

    classes = tuple(
        GeodesicClass(
            word=e["word"],
            matrix=e["iso"],
            trace=e["trace"],
            length=e["length"],
            primitive=e["power_index"] == 1,
            power_index=e["power_index"],
            multiplicity=e["multiplicity"],
        )
        for e in entries
    )
    params = {
        "max_word_length": N,
        "conj_radius": opts.conj_radius,
        "prune_slack": slack,
        "node_budget": opts.node_budget,
        "mode": group.mode,
        "threads": opts.threads,
    }
    return LengthSpectrum(group=group, cutoff=cutoff, classes=classes, params=params,
                          attestation="exhaustive" if exhaustive else "heuristic")


def _assign_power_indices(entries, group, search):
    """A class is a k-th power iff a class of length l/k has a matching k-th
    power among the enumerated classes."""
    if not entries:
        return
    exact = group.mode == "exact"
    min_len = entries[0]["length"]
    for e in entries:
        e["power_index"] = 1
        k_max = int(e["length"] / min_len + 1e-9)
        for k in range(k_max, 1, -1):
            target = e["length"] / k
            for root in entries:
                if abs(root["length"] - target) > 1e-6:
                    continue
                acc_f = _fsign_normalize(np.linalg.matrix_power(
                    root["iso"].as_float(), k))
                if exact:
                    P = root["iso"].entries
                    acc = P
                    for _ in range(k - 1):
                        acc = _emul(acc, P)
                    acc = _esign_normalize(acc)
                    if search.are_conjugate(acc_f, e["iso"].as_float(),
                                            acc, e["iso"].entries):
                        e["power_index"] = k
                        break
                else:
                    if search.are_conjugate(acc_f, e["iso"].as_float()):
                        e["power_index"] = k
                        break
            if e["power_index"] > 1:
                break
