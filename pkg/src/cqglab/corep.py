"""Corepresentations by matrix coefficients.

A corepresentation of dimension ``d`` is stored as a ``(d, d, n)`` complex
array ``coeffs`` whose slice ``coeffs[j, k]`` is the coefficient vector of the
matrix coefficient ``pi_jk`` in the algebra.  The coaction it encodes is
``pi(v_j) = sum_k v_k (x) pi_kj``, so the same array doubles as the coaction
tensor of the comodule it carries.

The defining identities::

    coproduct(pi_jk) = sum_l pi_jl (x) pi_lk        (comodule axiom)
    eps(pi_jk) = delta_jk

and, for unitary corepresentations in an orthonormal basis::

    S(pi_jk) = pi_kj^*
    sum_l pi_lj^* pi_lk = delta_jk 1
    sum_l pi_jl pi_kl^* = delta_jk 1
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .algebra import Element, HopfAlgebraSpec, LinearFunctional
from .errors import (DecompositionStall, DimensionMismatch, NoF, NotIrreducible,
                     PositivityFailure, TraceZero)
from .report import Report

__all__ = [
    "Corepresentation",
    "identity_corep",
    "verify_corep",
    "check_unitary",
    "morphism_space",
    "are_equivalent",
    "is_irreducible",
    "doubly_contragredient",
    "conjugate_corep",
    "compute_F",
    "verify_orthogonality",
    "invariant_gram",
    "unitarize",
    "decompose_comodule",
    "IrrepTable",
    "irrep_table",
]


@dataclass
class Corepresentation:
    """Matrix coefficients of a right coaction, with verification flags."""

    algebra: HopfAlgebraSpec
    coeffs: np.ndarray  # (d, d, n)
    label: str = ""
    verified: bool | None = None
    unitary: bool | None = None
    irreducible: bool | None = None
    F: np.ndarray | None = None
    f_normalization: str | None = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.coeffs, dtype=complex)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != self.algebra.dim:
            raise DimensionMismatch(
                f"corep coefficients must be (d, d, {self.algebra.dim}), got {arr.shape}")
        self.coeffs = arr

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def entry(self, j: int, k: int) -> Element:
        return Element(self.algebra, self.coeffs[j, k].copy())

    def character(self) -> Element:
        return Element(self.algebra, np.einsum("jjm->m", self.coeffs))

    def star_coeffs(self) -> np.ndarray:
        """Entrywise star: coefficients of ``pi_jk^*``."""
        return np.einsum("jkm,mt->jkt", np.conj(self.coeffs), self.algebra.star)

    def antipode_coeffs(self) -> np.ndarray:
        """Entrywise antipode: coefficients of ``S(pi_jk)``."""
        return np.einsum("jkm,mt->jkt", self.coeffs, self.algebra.antipode)

    def with_flags(self, **kw) -> "Corepresentation":
        return replace(self, **kw)


def identity_corep(alg: HopfAlgebraSpec, label: str = "identity") -> Corepresentation:
    """The one-dimensional corepresentation with sole coefficient ``1``."""
    return Corepresentation(alg, alg.unit.reshape(1, 1, -1).copy(), label=label,
                            verified=True, unitary=True, irreducible=True,
                            F=np.array([[1.0 + 0j]]), f_normalization="hermitian_pd_balanced")


def verify_corep(pi: Corepresentation, tol: float = 1e-9) -> Report:
    """Residuals of the comodule identities; sets the ``verified`` flag."""
    alg = pi.algebra
    report = Report(f"corep axioms [{pi.label}]", meta={"tol": tol})
    t = tol * alg.magnitude
    lhs = np.einsum("jkm,mab->jkab", pi.coeffs, alg.comult)
    rhs = np.einsum("jla,lkb->jkab", pi.coeffs, pi.coeffs)
    report.add("coproduct splits", float(np.abs(lhs - rhs).max()), t)
    eps_res = np.einsum("jkm,m->jk", pi.coeffs, alg.counit) - np.eye(pi.dim)
    report.add("counit is identity", float(np.abs(eps_res).max()), t)
    pi.verified = report.passed
    return report


def check_unitary(pi: Corepresentation, tol: float = 1e-9) -> Report:
    """Residuals of the three unitarity identities; sets the ``unitary`` flag."""
    alg = pi.algebra
    report = Report(f"unitarity [{pi.label}]", meta={"tol": tol})
    t = tol * alg.magnitude
    star = pi.star_coeffs()
    report.add("antipode flips to star",
               float(np.abs(pi.antipode_coeffs() - star.transpose(1, 0, 2)).max()), t)
    eye = np.einsum("jk,m->jkm", np.eye(pi.dim), alg.unit)
    rows = np.einsum("lja,lkb,abm->jkm", star, pi.coeffs, alg.mult)
    report.add("columns orthonormal", float(np.abs(rows - eye).max()), t)
    cols = np.einsum("jla,klb,abm->jkm", pi.coeffs, star, alg.mult)
    report.add("rows orthonormal", float(np.abs(cols - eye).max()), t)
    pi.unitary = report.passed
    return report


def morphism_space(pi_v: Corepresentation, pi_w: Corepresentation,
                   rcond: float = 1e-9) -> list[np.ndarray]:
    """Basis of the intertwiner space ``{Phi : Phi pi_V = pi_W Phi}``.

    The equation is entrywise in the algebra: ``sum_l Phi[j,l] piV[l,k] =
    sum_l piW[j,l] Phi[l,k]`` for all ``j, k``.  Returns a list of
    ``d_W x d_V`` matrices (orthonormal as vectors).
    """
    if pi_v.algebra is not pi_w.algebra:
        # allow equal specs of separate construction
        from .algebra import _same_spec
        _same_spec(pi_v, pi_w)
    dv, dw, n = pi_v.dim, pi_w.dim, pi_v.algebra.dim
    # rows: (j over d_W, k over d_V, m over n); columns: Phi[a, b] flattened
    mat = np.zeros((dw * dv * n, dw * dv), dtype=complex)
    for j in range(dw):
        for k in range(dv):
            row = (j * dv + k) * n
            for l in range(dv):
                mat[row:row + n, j * dv + l] += pi_v.coeffs[l, k]
            for l in range(dw):
                mat[row:row + n, l * dv + k] -= pi_w.coeffs[j, l]
    scale = max(float(np.abs(pi_v.coeffs).max()), float(np.abs(pi_w.coeffs).max()))
    basis = _nullspace(mat, rcond, scale=scale)
    return [vec.reshape(dw, dv) for vec in basis]


def _nullspace(mat: np.ndarray, rcond: float = 1e-9, scale: float = 0.0
               ) -> list[np.ndarray]:
    """Orthonormal nullspace basis with a deterministic phase convention.

    Singular values are cut at ``rcond * max(sigma_max, scale)``; the absolute
    ``scale`` floor keeps an all-zero system (everything in the nullspace) from
    being read as full-rank noise.
    """
    if mat.size == 0:
        return []
    u, sigma, vh = np.linalg.svd(mat)
    top = float(sigma[0]) if sigma.size else 0.0
    thresh = rcond * max(top, scale, 1e-300)
    rank = int(np.sum(sigma > thresh))
    vecs = []
    for row in np.conj(vh[rank:]):  # mat @ conj(vh[i]) = 0
        nz = np.flatnonzero(np.abs(row) > 1e-12)
        if nz.size:
            row = row * (np.abs(row[nz[0]]) / row[nz[0]])
        vecs.append(row)
    return vecs


def are_equivalent(pi_v: Corepresentation, pi_w: Corepresentation,
                   tol: float = 1e-9) -> np.ndarray | None:
    """An invertible intertwiner if the coreps are equivalent, else ``None``."""
    if pi_v.dim != pi_w.dim:
        return None
    basis = morphism_space(pi_v, pi_w)
    if not basis:
        return None
    for phi in basis:
        if np.linalg.matrix_rank(phi, tol=tol) == pi_v.dim:
            return phi
    rng = np.random.default_rng(7)
    for _ in range(8):
        coefs = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        phi = sum(c * b for c, b in zip(coefs, basis))
        if np.linalg.matrix_rank(phi, tol=tol) == pi_v.dim:
            return phi
    return None


def is_irreducible(pi: Corepresentation) -> bool:
    flag = len(morphism_space(pi, pi)) == 1
    pi.irreducible = flag
    return flag


def doubly_contragredient(pi: Corepresentation) -> Corepresentation:
    """Entrywise ``S^2``; equals ``pi`` itself whenever ``S^2 = id``."""
    s2 = pi.algebra.antipode @ pi.algebra.antipode
    coeffs = np.einsum("jkm,mt->jkt", pi.coeffs, s2)
    return Corepresentation(pi.algebra, coeffs, label=f"{pi.label}++")


def conjugate_corep(pi: Corepresentation) -> Corepresentation:
    """Entrywise star."""
    return Corepresentation(pi.algebra, pi.star_coeffs(), label=f"{pi.label}bar")


def compute_F(pi: Corepresentation, tol: float = 1e-9) -> np.ndarray:
    """The intertwiner ``F pi = pi'' F`` to the doubly contragredient partner.

    Requires ``pi`` irreducible so the solution space is one-dimensional.  The
    representative is normalized to be Hermitian positive definite with
    ``tr F = tr F^{-1}`` when such a representative exists (always, for a CQG
    spec), otherwise to unit Frobenius norm; ``pi.F`` and
    ``pi.f_normalization`` record the outcome.
    """
    dd = doubly_contragredient(pi)
    basis = morphism_space(pi, dd)
    if not basis:
        raise NoF(f"corep {pi.label!r} admits no intertwiner to its doubly "
                  "contragredient partner")
    if len(basis) > 1:
        raise NotIrreducible(
            f"corep {pi.label!r} has a {len(basis)}-dimensional F-solution space; "
            "it must be irreducible")
    f = basis[0]
    d = pi.dim

    normalization = "frobenius"
    fh = f.conj().T
    # Hermitian up to a phase? then f.conj().T = c f with |c| = 1.
    denom = float(np.abs(f).max())
    ratio = fh.flatten() @ f.flatten().conj() / max(np.linalg.norm(f) ** 2, 1e-300)
    if np.abs(np.abs(ratio) - 1.0) < 1e-8 and np.abs(fh - ratio * f).max() < 1e-8 * denom:
        phase = np.sqrt(ratio)
        cand = (phase * f)
        cand = (cand + cand.conj().T) / 2.0
        eigs = np.linalg.eigvalsh(cand)
        if np.all(eigs > 0) or np.all(eigs < 0):
            if eigs[0] < 0:
                cand = -cand
            # scale so tr F = tr F^{-1} (both real positive)
            tr = float(np.trace(cand).real)
            tr_inv = float(np.trace(np.linalg.inv(cand)).real)
            cand = cand * np.sqrt(tr_inv / tr)
            f = cand
            normalization = "hermitian_pd_balanced"
    if normalization == "frobenius":
        f = f / np.linalg.norm(f)
        nz = np.flatnonzero(np.abs(f.flatten()) > 1e-12)
        f = f * (np.abs(f.flatten()[nz[0]]) / f.flatten()[nz[0]])
    if abs(np.trace(f)) < tol or abs(np.trace(np.linalg.inv(f))) < tol:
        raise TraceZero(f"F of {pi.label!r} has vanishing trace or inverse trace")
    pi.F = f
    pi.f_normalization = normalization
    return f


def verify_orthogonality(pi_p: Corepresentation, pi_q: Corepresentation,
                         h: LinearFunctional, tol: float = 1e-10) -> Report:
    """Generalized Schur orthogonality of matrix coefficients.

    Distinct irreducibles integrate to zero in both orders; for ``p = q`` the
    diagonal values are ``delta_jn F_mk / tr F`` and
    ``delta_jn (F^{-1})_mk / tr(F^{-1})``.
    """
    alg = pi_p.algebra
    report = Report(f"schur orthogonality [{pi_p.label} vs {pi_q.label}]", meta={"tol": tol})
    t = tol * alg.magnitude
    H = np.einsum("abl,l->ab", alg.mult, h.covector)
    first = np.einsum("jka,mnb,ab->jkmn", pi_p.coeffs, pi_q.antipode_coeffs(), H)
    second = np.einsum("jka,mnb,ab->jkmn", pi_p.antipode_coeffs(), pi_q.coeffs, H)
    same = pi_p is pi_q or (
        pi_p.dim == pi_q.dim and np.array_equal(pi_p.coeffs, pi_q.coeffs))
    if not same:
        if are_equivalent(pi_p, pi_q) is not None:
            raise ValueError(
                "orthogonality formulas need identical representatives; "
                f"{pi_p.label!r} and {pi_q.label!r} are equivalent but not equal")
        report.add("h(pi S(pi')) = 0", float(np.abs(first).max()), t)
        report.add("h(S(pi) pi') = 0", float(np.abs(second).max()), t)
        return report
    f = pi_p.F if pi_p.F is not None else compute_F(pi_p)
    eye = np.eye(pi_p.dim)
    expected_first = np.einsum("jn,mk->jkmn", eye, f) / np.trace(f)
    finv = np.linalg.inv(f)
    expected_second = np.einsum("jn,mk->jkmn", eye, finv) / np.trace(finv)
    report.add("h(pi S(pi)) = d_jn F_mk/trF", float(np.abs(first - expected_first).max()), t)
    report.add("h(S(pi) pi) = d_jn Finv_mk/trFinv",
               float(np.abs(second - expected_second).max()), t)
    return report


# ---------------------------------------------------------------------------
# invariant inner products, unitarization, decomposition
# ---------------------------------------------------------------------------

def invariant_gram(pi: Corepresentation, h: LinearFunctional) -> np.ndarray:
    """Haar-averaged inner product making ``pi`` unitary: ``G = h(pi^* pi)``.

    ``G[j, k] = sum_l h(pi_lj^* pi_lk)``; reduces to the identity when ``pi``
    is already unitary.
    """
    H = np.einsum("abl,l->ab", pi.algebra.mult, h.covector)
    return np.einsum("lja,lkb,ab->jk", pi.star_coeffs(), pi.coeffs, H)


def unitarize(pi: Corepresentation, gram: np.ndarray | None = None,
              h: LinearFunctional | None = None) -> tuple[Corepresentation, np.ndarray]:
    """An equivalent unitary corepresentation plus the change of basis used.

    ``gram`` is the invariant inner product on the carrier; if omitted it is
    computed by Haar averaging (``h`` required).  The new basis is
    ``w = v @ T`` with ``T = L^{-H}`` from the Cholesky factor ``gram = L L^H``,
    and the returned coefficients are ``T^{-1} pi T``.
    """
    if gram is None:
        if h is None:
            raise ValueError("unitarize needs either gram or the Haar functional")
        gram = invariant_gram(pi, h)
    gram = (gram + gram.conj().T) / 2.0
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise PositivityFailure("carrier inner product is not positive definite") from exc
    t_mat = np.linalg.inv(chol.conj()).T      # T = L^{-H}
    t_inv = chol.conj().T
    coeffs = np.einsum("ka,abm,bj->kjm", t_inv, pi.coeffs, t_mat)
    out = Corepresentation(pi.algebra, coeffs, label=f"{pi.label}~u",
                           verified=pi.verified, irreducible=pi.irreducible)
    return out, t_mat


def _gram_orthonormalize(vectors: np.ndarray, gram: np.ndarray, rcond: float = 1e-10
                         ) -> np.ndarray:
    """Columns of ``vectors`` orthonormalized w.r.t. ``<x, y> = x^H gram y``."""
    chol = np.linalg.cholesky((gram + gram.conj().T) / 2.0)
    q, r = np.linalg.qr(chol.conj().T @ vectors, mode="reduced")
    keep = np.abs(np.diag(r)) > rcond * max(1.0, np.abs(np.diag(r)).max())
    return np.linalg.solve(chol.conj().T, q[:, keep])


def _restrict_corep(pi: Corepresentation, basis: np.ndarray, gram: np.ndarray,
                    label: str) -> Corepresentation:
    """Matrix coefficients of the coaction restricted to ``span(basis)``.

    ``basis`` columns must be gram-orthonormal and span an invariant subspace;
    the restricted coefficients are ``rho = basis^+ pi basis`` with
    ``basis^+ = basis^H gram``.
    """
    pinv = basis.conj().T @ gram
    rho = np.einsum("kb,bam,aj->kjm", pinv, pi.coeffs, basis)
    return Corepresentation(pi.algebra, rho, label=label)


def _invariance_residual(pi: Corepresentation, basis: np.ndarray, gram: np.ndarray) -> float:
    """How far ``pi`` maps ``span(basis)`` outside itself (0 when invariant)."""
    sub = _restrict_corep(pi, basis, gram, label="probe")
    lifted = np.einsum("bam,aj->bjm", pi.coeffs, basis)
    back = np.einsum("bk,kjm->bjm", basis, sub.coeffs)
    return float(np.abs(lifted - back).max())


def decompose_comodule(pi: Corepresentation, gram: np.ndarray, seed: int = 0,
                       cluster_tol: float = 1e-8, max_tries: int = 12,
                       ) -> list[tuple[np.ndarray, Corepresentation]]:
    """Split a comodule into irreducible blocks by commutant eigensplitting.

    ``pi`` is the coaction tensor of the comodule (matrix-coefficient form)
    and ``gram`` an invariant inner product making it unitary.  Returns pairs
    ``(subspace basis as (d, d_block) columns in the carrier, irreducible
    block corepresentation in a gram-orthonormal basis)``.  The random
    commutant draws are seeded for reproducibility.
    """
    rng = np.random.default_rng(seed)
    d = pi.dim
    gram = (gram + gram.conj().T) / 2.0
    gram_inv = np.linalg.inv(gram)

    def split(basis: np.ndarray) -> list[np.ndarray]:
        sub = _restrict_corep(pi, basis, gram, label="block")
        dim_sub = basis.shape[1]
        comm = morphism_space(sub, sub)
        if len(comm) == 1:
            return [basis]
        sub_gram = np.eye(dim_sub)  # basis columns are gram-orthonormal
        for attempt in range(max_tries):
            coefs = rng.standard_normal(len(comm)) + 1j * rng.standard_normal(len(comm))
            phi = sum(c * b for c, b in zip(coefs, comm))
            phi = (phi + phi.conj().T) / 2.0  # self-adjoint in the orthonormal basis
            eigvals, eigvecs = np.linalg.eigh(phi)
            spread = eigvals[-1] - eigvals[0]
            if spread < cluster_tol * max(1.0, np.abs(eigvals).max()):
                continue
            clusters: list[list[int]] = [[0]]
            for i in range(1, dim_sub):
                if eigvals[i] - eigvals[clusters[-1][-1]] <= cluster_tol * max(1.0, spread):
                    clusters[-1].append(i)
                else:
                    clusters.append([i])
            if len(clusters) < 2:
                continue
            scale = pi.algebra.magnitude
            sub_bases = [basis @ eigvecs[:, cl] for cl in clusters]
            if any(_invariance_residual(pi, b, gram) > 1e-7 * scale for b in sub_bases):
                continue
            pieces = []
            for sub_basis in sub_bases:
                pieces.extend(split(sub_basis))
            return pieces
        raise DecompositionStall(
            f"commutant of a {dim_sub}-dimensional block refused to split "
            f"after {max_tries} random draws")

    start = _gram_orthonormalize(np.eye(d, dtype=complex), gram)
    if start.shape[1] != d:
        raise PositivityFailure("invariant inner product is numerically singular")
    blocks = []
    for basis in split(start):
        block = _restrict_corep(pi, basis, gram, label=f"{pi.label}|{basis.shape[1]}d")
        blocks.append((basis, block))
    blocks.sort(key=lambda pair: pair[1].dim)
    return blocks


# ---------------------------------------------------------------------------
# canonical irreducible table
# ---------------------------------------------------------------------------

@dataclass
class IrrepTable:
    """Canonical unitary irreducibles of a spec with stable labels."""

    algebra: HopfAlgebraSpec
    irreps: list[Corepresentation]
    multiplicities: list[int]
    labels: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.labels:
            self.labels = [f"p{i}" for i in range(len(self.irreps))]

    def __iter__(self):
        return iter(self.irreps)

    def __len__(self) -> int:
        return len(self.irreps)

    def __getitem__(self, key: int | str) -> Corepresentation:
        if isinstance(key, str):
            return self.irreps[self.index_of(key)]
        return self.irreps[key]

    def index_of(self, label: str) -> int:
        if label in self.labels:
            return self.labels.index(label)
        if label == "trivial":
            return self.trivial_index()
        try:
            idx = int(label)
        except ValueError:
            raise KeyError(f"unknown irrep label {label!r}; have {self.labels}") from None
        if 0 <= idx < len(self.irreps):
            return idx
        raise KeyError(f"irrep index {idx} out of range")

    def trivial_index(self) -> int:
        unit = self.algebra.unit
        for i, pi in enumerate(self.irreps):
            if pi.dim == 1 and np.abs(pi.coeffs[0, 0] - unit).max() < 1e-9:
                return i
        raise KeyError("no trivial irrep in table")

    def dims(self) -> list[int]:
        return [pi.dim for pi in self.irreps]


def _character_fingerprint(pi: Corepresentation) -> tuple:
    chi = np.einsum("jjm->m", pi.coeffs)
    rounded = np.round(chi, 9) + 0.0  # normalize -0.0
    return tuple((float(z.real), float(z.imag)) for z in rounded)


def irrep_table(alg: HopfAlgebraSpec, h: LinearFunctional, gram_right: np.ndarray,
                seed: int = 0, tol: float = 1e-9) -> IrrepTable:
    """Decompose the right regular comodule and canonicalize the blocks.

    Returns one unitary representative per equivalence class, with its
    F-matrix computed, sorted trivial-first then by (dimension, character
    fingerprint).  Multiplicities are the block counts in the regular
    comodule (equal to the dimensions exactly when the matrix coefficients
    span the algebra).
    """
    from .regular import regular_corep

    reg = regular_corep(alg, "R")
    blocks = decompose_comodule(reg, gram_right, seed=seed)
    classes: list[tuple[Corepresentation, int]] = []
    for _, block in blocks:
        for idx, (rep, count) in enumerate(classes):
            if block.dim == rep.dim and are_equivalent(block, rep, tol=tol) is not None:
                classes[idx] = (rep, count + 1)
                break
        else:
            classes.append((block, 1))

    unit = alg.unit

    def sort_key(item: tuple[Corepresentation, int]):
        rep, _ = item
        is_trivial = rep.dim == 1 and np.abs(rep.coeffs[0, 0] - unit).max() < 1e-9
        return (0 if is_trivial else 1, rep.dim, _character_fingerprint(rep))

    classes.sort(key=sort_key)
    irreps: list[Corepresentation] = []
    mults: list[int] = []
    for i, (rep, count) in enumerate(classes):
        rep.label = f"p{i}"
        verify_corep(rep, tol)
        check_unitary(rep, tol)
        rep.irreducible = True
        compute_F(rep, tol)
        irreps.append(rep)
        mults.append(count)
    return IrrepTable(alg, irreps, mults)
