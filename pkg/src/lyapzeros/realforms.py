"""Real forms: parameter validation, restriction maps to the maximal split
torus, matrix realizations with their invariant forms, and random
group-element samplers.

Matrix conventions
------------------
su(p,q)      complex (p+q) x (p+q), preserving the hermitian form
             H = diag(I_p, -I_q).
so(m,2)      real (m+2) x (m+2), preserving the symmetric form
             diag(I_{m-2}, J_4) with J_4 the 4x4 antidiagonal; the split
             torus is then literally diag(0, t1, t2, -t2, -t1).
so*(2n)      complex 2n x 2n, the intersection of the unitary algebra of
             the split hermitian form [[0, I], [I, 0]] with the orthogonal
             algebra of the symmetric form diag(I_n, -I_n); block shape
             [[A, B], [B^T, conj(A)]] with A antisymmetric and B
             anti-hermitian.
sp(2g,R)     real 2g x 2g with the symplectic form [[0, I], [-I, 0]].
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from ._expm import expm_batch
from .errors import NumericalError, ParameterError
from .weights import (Basis, RepKind, RepSpec, RootSystemSpec, Weight,
                      WeightMultiset, weights_exterior, weights_of)

_RELATION_TOL = 1e-12


class Family(Enum):
    SU = "su"
    SO_ODD = "so-odd"        # so(2n-1, 2), type B_n
    SO_EVEN = "so-even"      # so(2n-2, 2), type D_n
    SO_STAR = "so-star"      # so*(2n), type D_n
    SP = "sp"                # sp(2g, R), type C_g


@dataclass(frozen=True)
class RealFormSpec:
    """A validated real form; build via the factory functions below."""

    family: Family
    p: int | None = None
    q: int | None = None
    n: int | None = None
    g: int | None = None
    swapped: bool = False    # su input arrived as (q, p) and was normalized

    def __post_init__(self):
        f = self.family
        if f is Family.SU:
            if self.p is None or self.q is None or self.p < self.q or self.q < 1:
                raise ParameterError("su(p,q) requires p >= q >= 1")
        elif f is Family.SO_ODD:
            if self.n is None or self.n < 2:
                raise ParameterError("so(2n-1,2) requires n >= 2")
        elif f is Family.SO_EVEN:
            if self.n is None or self.n < 3:
                raise ParameterError("so(2n-2,2) requires n >= 3")
        elif f is Family.SO_STAR:
            if self.n is None or self.n < 2:
                raise ParameterError("so*(2n) requires n >= 2")
        elif f is Family.SP:
            if self.g is None or self.g < 1:
                raise ParameterError("sp(2g,R) requires g >= 1")

    @property
    def series(self) -> str:
        return {Family.SU: "A", Family.SO_ODD: "B", Family.SO_EVEN: "D",
                Family.SO_STAR: "D", Family.SP: "C"}[self.family]

    @property
    def ambient_dim(self) -> int:
        """Number of absolute weight coordinates (e-basis)."""
        if self.family is Family.SU:
            return self.p + self.q
        if self.family is Family.SP:
            return self.g
        return self.n

    @property
    def root_system(self) -> RootSystemSpec:
        """Root system of the complexified algebra.

        Undefined for so*(4), whose D_2 diagram is not simple; so*(2n)
        weight data never requires it (the standard weights come straight
        from the split torus).
        """
        if self.family is Family.SU:
            return RootSystemSpec("A", self.p + self.q - 1)
        if self.family is Family.SO_ODD:
            return RootSystemSpec("B", self.n)
        if self.family in (Family.SO_EVEN, Family.SO_STAR):
            return RootSystemSpec("D", self.n)
        return RootSystemSpec("C", self.g)

    @property
    def restricted_rank(self) -> int:
        """Real rank of the form (dimension of the maximal split torus)."""
        if self.family is Family.SU:
            return self.q
        if self.family in (Family.SO_ODD, Family.SO_EVEN):
            return 2
        if self.family is Family.SO_STAR:
            return self.n // 2
        return self.g

    @property
    def matrix_dim(self) -> int:
        """Size d of the standard matrix realization (complex for SU, SO*)."""
        if self.family is Family.SU:
            return self.p + self.q
        if self.family is Family.SO_ODD:
            return 2 * self.n + 1
        if self.family in (Family.SO_EVEN, Family.SO_STAR):
            return 2 * self.n
        return 2 * self.g

    @property
    def is_complex_family(self) -> bool:
        """True when representations carry a commuting C-action (SU, SO*)."""
        return self.family in (Family.SU, Family.SO_STAR)

    @property
    def real_factor(self) -> int:
        """Real multiplicities = complex multiplicities times this factor."""
        return 2 if self.is_complex_family else 1

    @property
    def algebra_dim(self) -> int:
        if self.family is Family.SU:
            return (self.p + self.q) ** 2 - 1
        if self.family is Family.SO_ODD:
            d = 2 * self.n + 1
            return d * (d - 1) // 2
        if self.family is Family.SO_EVEN:
            d = 2 * self.n
            return d * (d - 1) // 2
        if self.family is Family.SO_STAR:
            return self.n * (2 * self.n - 1)
        return self.g * (2 * self.g + 1)

    @property
    def relative_root_type(self) -> str:
        """Relative root system of the form (metadata only)."""
        if self.family is Family.SU:
            return f"BC{self.q}" if self.p > self.q else f"C{self.q}"
        if self.family in (Family.SO_ODD, Family.SO_EVEN):
            return "B2"
        if self.family is Family.SO_STAR:
            m = self.n // 2
            return f"C{m}" if self.n % 2 == 0 else f"BC{m}"
        return f"C{self.g}"

    def label(self) -> str:
        if self.family is Family.SU:
            return f"su({self.p},{self.q})"
        if self.family is Family.SO_ODD:
            return f"so({2 * self.n - 1},2)"
        if self.family is Family.SO_EVEN:
            return f"so({2 * self.n - 2},2)"
        if self.family is Family.SO_STAR:
            return f"so*({2 * self.n})"
        return f"sp({2 * self.g},R)"


def su(p: int, q: int) -> RealFormSpec:
    """su(p,q); inputs with q > p are normalized by swapping (recorded)."""
    if p < 1 or q < 1:
        raise ParameterError("su(p,q) requires p, q >= 1")
    if q > p:
        return RealFormSpec(Family.SU, p=q, q=p, swapped=True)
    return RealFormSpec(Family.SU, p=p, q=q)


def so_split(m: int) -> RealFormSpec:
    """so(m,2) for m >= 3, dispatching on the parity of m."""
    if m % 2 == 1:
        n = (m + 1) // 2
        return RealFormSpec(Family.SO_ODD, n=n)
    n = (m + 2) // 2
    return RealFormSpec(Family.SO_EVEN, n=n)


def so_star(n: int) -> RealFormSpec:
    return RealFormSpec(Family.SO_STAR, n=n)


def sp(g: int) -> RealFormSpec:
    return RealFormSpec(Family.SP, g=g)


@dataclass(frozen=True)
class RestrictionMap:
    """Coordinate map from absolute weights (e-basis) to restricted weights
    (f-basis), stored as an integer matrix with entries in {-1, 0, 1}."""

    rows: tuple[tuple[int, ...], ...]    # restricted_rank x ambient_dim
    restricted_rank: int

    def __post_init__(self):
        if len(self.rows) != self.restricted_rank:
            raise ParameterError("restriction map row count must equal restricted rank")

    @property
    def ambient_dim(self) -> int:
        return len(self.rows[0])

    def image(self, i: int) -> Weight:
        """Image of the basis weight e_i (0-based) as a restricted weight."""
        return Weight(tuple(2 * row[i] for row in self.rows), Basis.RESTRICTED)

    def apply(self, w: Weight) -> Weight:
        if w.basis is not Basis.ABSOLUTE or w.rank != self.ambient_dim:
            raise ParameterError("restriction map expects absolute weights of matching rank")
        doubled = tuple(sum(r * c for r, c in zip(row, w.doubled)) for row in self.rows)
        return Weight(doubled, Basis.RESTRICTED)

    def apply_multiset(self, ms: WeightMultiset) -> WeightMultiset:
        return ms.map_weights(self.apply)


def restriction_map(form: RealFormSpec) -> RestrictionMap:
    """Restriction of absolute weights to the maximal split torus.

    su(p,q): e_i -> f_i and e_{p+q+1-i} -> -f_i for i <= q, the rest to 0.
    so(m,2): e_1 -> f_1, e_2 -> f_2, the rest to 0.
    so*(2n): e_{2i-1}, e_{2i} -> f_i; for odd n, e_n -> 0.
    sp(2g,R): the identity (split form).
    """
    n = form.ambient_dim
    rank = form.restricted_rank
    rows = [[0] * n for _ in range(rank)]
    if form.family is Family.SU:
        for j in range(rank):
            rows[j][j] = 1
            rows[j][n - 1 - j] = -1
    elif form.family in (Family.SO_ODD, Family.SO_EVEN):
        rows[0][0] = 1
        rows[1][1] = 1
    elif form.family is Family.SO_STAR:
        for j in range(rank):
            rows[j][2 * j] = 1
            rows[j][2 * j + 1] = 1
    else:
        for j in range(rank):
            rows[j][j] = 1
    return RestrictionMap(tuple(tuple(r) for r in rows), rank)


def _check_coherent(form: RealFormSpec, rep: RepSpec) -> None:
    if rep.kind is RepKind.SPIN and form.series != "B":
        raise ParameterError(f"spin representation undefined for {form.label()}")
    if rep.kind in (RepKind.HALF_SPIN_PLUS, RepKind.HALF_SPIN_MINUS) and form.series != "D":
        raise ParameterError(f"half-spin representations undefined for {form.label()}")
    if rep.kind is RepKind.EXTERIOR and not 1 <= rep.degree <= form.matrix_dim:
        raise ParameterError(
            f"exterior degree {rep.degree} out of range 1..{form.matrix_dim} for {form.label()}")


def _absolute_weights(form: RealFormSpec, rep: RepSpec) -> WeightMultiset:
    if form.family is Family.SO_STAR:
        # type D standard weights built directly; valid for every n >= 2
        n = form.n
        ws = [Weight.unit(n, i) for i in range(n)]
        ws += [Weight.unit(n, i, sign=-1) for i in range(n)]
        base = WeightMultiset(ws)
        if rep.kind is RepKind.STANDARD:
            return base
        if rep.kind is RepKind.EXTERIOR:
            return weights_exterior(base, rep.degree)
        return weights_of(form.root_system, rep)   # half-spins need n >= 3
    return weights_of(form.root_system, rep)


def weights_restricted(form: RealFormSpec, rep: RepSpec) -> WeightMultiset:
    """Restricted weight multiset of (form, rep), with complex multiplicities.

    For so*(2n) in the standard representation the multiset is produced
    directly from the split torus (whose 2x2 blocks have eigenvalues +-1):
    +-f_i with complex multiplicity 2 each, plus 0 with complex
    multiplicity 2 when n is odd. Reported real counts are twice these.
    All other pairs push the absolute weights through restriction_map.
    """
    _check_coherent(form, rep)
    if form.family is Family.SO_STAR and rep.kind is RepKind.STANDARD:
        m = form.restricted_rank
        acc: dict[Weight, int] = {}
        for j in range(m):
            acc[Weight.unit(m, j, Basis.RESTRICTED)] = 2
            acc[Weight.unit(m, j, Basis.RESTRICTED, sign=-1)] = 2
        if form.n % 2 == 1:
            acc[Weight.zero(m, Basis.RESTRICTED)] = 2
        return WeightMultiset(acc)
    ms = _absolute_weights(form, rep)
    return restriction_map(form).apply_multiset(ms)


# ---------------------------------------------------------------------------
# Matrix realizations and samplers
# ---------------------------------------------------------------------------

def _unit(d, j, k, val, dtype):
    m = np.zeros((d, d), dtype=dtype)
    m[j, k] = val
    return m


def _su_basis(p: int, q: int) -> np.ndarray:
    n = p + q
    out = []
    # traceless imaginary diagonals (adjacent differences)
    for j in range(n - 1):
        m = np.zeros((n, n), dtype=complex)
        m[j, j] = 1j
        m[j + 1, j + 1] = -1j
        out.append(m)
    # anti-hermitian within each definite block
    for block in (range(p), range(p, n)):
        for j, k in combinations(block, 2):
            out.append(_unit(n, j, k, 1, complex) - _unit(n, k, j, 1, complex))
            out.append(_unit(n, j, k, 1j, complex) + _unit(n, k, j, 1j, complex))
    # hermitian cross-block terms
    for j in range(p):
        for k in range(p, n):
            out.append(_unit(n, j, k, 1, complex) + _unit(n, k, j, 1, complex))
            out.append(_unit(n, j, k, 1j, complex) - _unit(n, k, j, 1j, complex))
    return np.stack(out)


def _so_form(d: int) -> np.ndarray:
    Q = np.eye(d)
    J4 = np.zeros((4, 4))
    J4[[0, 1, 2, 3], [3, 2, 1, 0]] = 1.0
    Q[d - 4:, d - 4:] = J4
    return Q


def _so_basis(d: int) -> np.ndarray:
    # X^T Q + Q X = 0  <=>  X = Q S with S skew (Q is its own inverse)
    Q = _so_form(d)
    out = []
    for j, k in combinations(range(d), 2):
        S = _unit(d, j, k, 1.0, float) - _unit(d, k, j, 1.0, float)
        out.append(Q @ S)
    return np.stack(out)


def _so_star_basis(n: int) -> np.ndarray:
    d = 2 * n
    out = []

    def embed(A, B):
        X = np.zeros((d, d), dtype=complex)
        X[:n, :n] = A
        X[:n, n:] = B
        X[n:, :n] = B.T
        X[n:, n:] = np.conj(A)
        return X

    zero = np.zeros((n, n), dtype=complex)
    for j, k in combinations(range(n), 2):
        A = _unit(n, j, k, 1, complex) - _unit(n, k, j, 1, complex)
        out.append(embed(A, zero))
        out.append(embed(1j * A, zero))
        B = _unit(n, j, k, 1, complex) - _unit(n, k, j, 1, complex)
        out.append(embed(zero, B))
        B = _unit(n, j, k, 1j, complex) + _unit(n, k, j, 1j, complex)
        out.append(embed(zero, B))
    for j in range(n):
        out.append(embed(zero, _unit(n, j, j, 1j, complex)))
    return np.stack(out)


def _sp_basis(g: int) -> np.ndarray:
    d = 2 * g
    omega = _sp_form(g)
    omega_inv = -omega
    out = []
    for j in range(d):
        out.append(omega_inv @ _unit(d, j, j, 1.0, float))
    for j, k in combinations(range(d), 2):
        S = _unit(d, j, k, 1.0, float) + _unit(d, k, j, 1.0, float)
        out.append(omega_inv @ S)
    return np.stack(out)


def _sp_form(g: int) -> np.ndarray:
    d = 2 * g
    omega = np.zeros((d, d))
    omega[:g, g:] = np.eye(g)
    omega[g:, :g] = -np.eye(g)
    return omega


@dataclass(frozen=True, eq=False)
class GroupSampler:
    """Matrix realization of a real form plus its random-walk step law.

    ``basis`` has shape (algebra_dim, d, d); a step is exp(sum c_i B_i)
    with i.i.d. gaussian coefficients c_i of standard deviation ``scale``.
    """

    form: RealFormSpec
    basis: np.ndarray
    scale: float
    hermitian_form: np.ndarray | None = None
    symmetric_form: np.ndarray | None = None
    symplectic_form: np.ndarray | None = None

    @property
    def matrix_dim(self) -> int:
        return self.basis.shape[-1]

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.basis)

    def invariant_forms(self) -> dict[str, np.ndarray]:
        out = {}
        if self.hermitian_form is not None:
            out["hermitian"] = self.hermitian_form
        if self.symmetric_form is not None:
            out["symmetric"] = self.symmetric_form
        if self.symplectic_form is not None:
            out["symplectic"] = self.symplectic_form
        return out


def _relation_residual(sampler: GroupSampler, X: np.ndarray) -> float:
    """Largest residual of the defining algebra relations on X."""
    worst = 0.0
    H = sampler.hermitian_form
    if H is not None:
        worst = max(worst, float(np.abs(np.conj(X.T) @ H + H @ X).max()))
        if sampler.form.family is Family.SU:
            worst = max(worst, abs(np.trace(X)))
    for S in (sampler.symmetric_form, sampler.symplectic_form):
        if S is not None:
            worst = max(worst, float(np.abs(X.T @ S + S @ X).max()))
    return worst


def lie_algebra_basis(form: RealFormSpec, scale: float = 0.3) -> GroupSampler:
    """Real basis of the Lie algebra in its standard matrix realization.

    The basis cardinality equals the real dimension of the algebra and
    every element is checked against the defining relations on
    construction.
    """
    if scale < 0:
        raise ParameterError("scale must be nonnegative")
    fam = form.family
    if fam is Family.SU:
        basis = _su_basis(form.p, form.q)
        H = np.diag([1.0] * form.p + [-1.0] * form.q).astype(complex)
        sampler = GroupSampler(form, basis, scale, hermitian_form=H)
    elif fam in (Family.SO_ODD, Family.SO_EVEN):
        d = form.matrix_dim
        sampler = GroupSampler(form, _so_basis(d), scale, symmetric_form=_so_form(d))
    elif fam is Family.SO_STAR:
        n = form.n
        H = np.zeros((2 * n, 2 * n), dtype=complex)
        H[:n, n:] = np.eye(n)
        H[n:, :n] = np.eye(n)
        S = np.diag([1.0] * n + [-1.0] * n).astype(complex)
        sampler = GroupSampler(form, _so_star_basis(n), scale,
                               hermitian_form=H, symmetric_form=S)
    else:
        sampler = GroupSampler(form, _sp_basis(form.g), scale,
                               symplectic_form=_sp_form(form.g))
    if sampler.basis.shape[0] != form.algebra_dim:
        raise NumericalError("basis cardinality disagrees with the algebra dimension",
                             {"form": form.label(), "built": sampler.basis.shape[0],
                              "expected": form.algebra_dim})
    worst = max(_relation_residual(sampler, X) for X in sampler.basis)
    if worst > _RELATION_TOL:
        raise NumericalError("basis violates the defining relations",
                             {"form": form.label(), "residual": worst})
    return sampler


def sample_group_elements(sampler: GroupSampler, rng: np.random.Generator,
                          count: int) -> np.ndarray:
    """Draw ``count`` random group elements exp(sum c_i B_i), c_i ~ N(0, scale^2)."""
    nb = sampler.basis.shape[0]
    coeffs = rng.standard_normal((count, nb)) * sampler.scale
    X = np.tensordot(coeffs, sampler.basis, axes=(1, 0))
    G = expm_batch(X)
    if not np.isfinite(G).all():
        raise NumericalError("matrix exponential overflowed",
                             {"form": sampler.form.label(), "scale": sampler.scale})
    return G


def sample_group_element(sampler: GroupSampler, rng: np.random.Generator) -> np.ndarray:
    """Draw a single random group element."""
    return sample_group_elements(sampler, rng, 1)[0]


def form_preservation_errors(sampler: GroupSampler, g: np.ndarray) -> dict[str, float]:
    """Relative errors of the declared invariant forms under g (batched ok).

    hermitian: ||g^dag H g - H|| / ||H||; bilinear forms use g^T.
    """
    out = {}
    gt = np.swapaxes(g, -1, -2)
    for name, F in sampler.invariant_forms().items():
        left = np.conj(gt) if name == "hermitian" else gt
        err = np.abs(left @ F @ g - F).max(axis=(-1, -2))
        out[name] = float(np.max(err) / np.abs(F).max())
    return out


def exterior_power_matrix(M: np.ndarray, k: int) -> np.ndarray:
    """k-th compound matrix: entries are k x k minors indexed by k_subsets.

    Functorial: the compound of a product is the product of compounds.
    Accepts a single matrix or a batch (..., d, d).
    """
    M = np.asarray(M)
    d = M.shape[-1]
    if not 1 <= k <= d:
        raise ParameterError(f"compound degree {k} out of range 1..{d}")
    if k == 1:
        return M.copy()
    subs = list(combinations(range(d), k))
    C = len(subs)
    out = np.empty(M.shape[:-2] + (C, C), dtype=M.dtype)
    for a, rows in enumerate(subs):
        Mr = M[..., rows, :]
        for b, cols in enumerate(subs):
            sub = Mr[..., :, cols]
            if k == 2:
                out[..., a, b] = (sub[..., 0, 0] * sub[..., 1, 1]
                                  - sub[..., 0, 1] * sub[..., 1, 0])
            else:
                out[..., a, b] = np.linalg.det(sub)
    return out
