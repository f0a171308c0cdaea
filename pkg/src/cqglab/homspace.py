"""Quantum homogeneous spaces: coideal *-subalgebras and restricted machinery.

A homogeneous space is carried by a *-subalgebra ``B`` of the algebra that is
a right coideal (``coproduct(B)`` inside ``B (x) A``, used with the right
regular formalism) or a left coideal (``coproduct(B)`` inside ``A (x) B``,
used with the left formalism; additionally required to be ``S^2``-invariant).
The classical source of examples: functions on a finite group constant on
right (resp. left) cosets of a subgroup.

Everything downstream -- coactions, inner products, basis functions, tensor
operators, Wigner-Eckart factorizations, operator products -- is the full
machinery with the carrier restricted to ``B``.  Internally ``B`` carries an
orthonormal basis for its restricted invariant inner product, so restricted
operators are small ``b x b`` matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import HopfAlgebraSpec
from .corep import Corepresentation, _nullspace
from .errors import CoidealMismatch, NotASubgroup, PositivityFailure
from .groups import GroupTable
from .haar import GramPair, HaarFunctional
from .regular import regular_coaction_tensor
from .report import Report
from .tensor_ops import pipeline_components
from .wigner_eckart import WEReport, factorize_tensor

__all__ = [
    "CoidealSubalgebra",
    "build_coset_subalgebra",
    "subspace_coideal",
    "verify_coideal",
    "restricted_gram",
    "restricted_coaction_tensor",
    "restricted_coaction_report",
    "RestrictedBasisFunctions",
    "solve_restricted_basis_functions",
    "canonical_restricted_candidates",
    "RestrictedOperatorFamily",
    "check_restricted_family",
    "solve_restricted_family",
    "restricted_multiplication_family",
    "restricted_we_tensor",
    "restricted_wigner_eckart",
    "couple_restricted_families",
]


@dataclass
class CoidealSubalgebra:
    """A subspace of the algebra flagged as a coideal *-subalgebra.

    ``span_rows`` is the raw spanning basis (whatever the caller supplied,
    e.g. coset indicator functions); ``onb_rows`` is orthonormal with respect
    to the restricted inner product of the matching side.  ``side`` names the
    regular formalism: "R" for a right coideal, "L" for a left coideal.
    """

    algebra: HopfAlgebraSpec
    span_rows: np.ndarray   # (b, n)
    side: str
    onb_rows: np.ndarray | None = None
    label: str = ""
    flags: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        rows = np.asarray(self.span_rows, dtype=complex)
        if rows.ndim != 2 or rows.shape[1] != self.algebra.dim:
            raise ValueError("span_rows must be (b, n)")
        if self.side not in ("R", "L"):
            raise ValueError("side must be 'R' or 'L'")
        self.span_rows = rows

    @property
    def dim(self) -> int:
        return self.span_rows.shape[0]

    def orthonormalize(self, grams: GramPair) -> None:
        gram_b = restricted_gram(self, self.side, grams)
        try:
            chol = np.linalg.cholesky((gram_b + gram_b.conj().T) / 2.0)
        except np.linalg.LinAlgError as exc:
            raise PositivityFailure("restricted inner product is not positive definite"
                                    ) from exc
        self.onb_rows = np.conj(np.linalg.inv(chol)) @ self.span_rows

    def onb(self) -> np.ndarray:
        if self.onb_rows is None:
            raise ValueError("call orthonormalize(grams) before using the internal basis")
        return self.onb_rows

    def embed(self, coords: np.ndarray) -> np.ndarray:
        """B-coordinates (..., b) -> algebra coefficients (..., n)."""
        return np.asarray(coords, dtype=complex) @ self.onb()

    def restrict(self, vec: np.ndarray, grams: GramPair, tol: float = 1e-9
                 ) -> np.ndarray:
        """Algebra coefficients -> B-coordinates; errors if outside the span."""
        onb = self.onb()
        coords = np.conj(onb) @ grams.gram(self.side) @ np.asarray(vec, dtype=complex)
        if float(np.abs(coords @ onb - vec).max()) > tol * self.algebra.magnitude:
            raise CoidealMismatch("element does not lie in the subalgebra")
        return coords

    def std_projector(self) -> np.ndarray:
        """Orthogonal projector onto the span in the standard inner product."""
        q, _ = np.linalg.qr(self.span_rows.conj().T)
        return q @ q.conj().T

    def contains(self, vec: np.ndarray, tol: float = 1e-9) -> bool:
        proj = self.std_projector()
        return bool(np.abs(vec - proj @ vec).max() <= tol * max(1.0, float(np.abs(vec).max())))


def build_coset_subalgebra(group: GroupTable, alg: HopfAlgebraSpec,
                           subgroup: list[int], side: str) -> CoidealSubalgebra:
    """Indicator functions of cosets inside a function algebra.

    Side "L" (left coideal) takes functions constant on left cosets ``gH``;
    side "R" (right coideal) functions constant on right cosets ``Hg``.
    """
    if not group.is_subgroup(subgroup):
        raise NotASubgroup(f"{subgroup} is not a subgroup")
    cosets = group.left_cosets(subgroup) if side == "L" else group.right_cosets(subgroup)
    rows = np.zeros((len(cosets), group.order), dtype=complex)
    for i, coset in enumerate(cosets):
        rows[i, list(coset)] = 1.0
    return CoidealSubalgebra(alg, rows, side,
                             label=f"{alg.label}/H{len(subgroup)}:{side}")


def subspace_coideal(alg: HopfAlgebraSpec, rows: np.ndarray, side: str,
                     label: str = "") -> CoidealSubalgebra:
    """Wrap an arbitrary spanning set; validity comes from verify_coideal."""
    return CoidealSubalgebra(alg, rows, side, label=label or f"B<{alg.label}:{side}")


def verify_coideal(coideal: CoidealSubalgebra, tol: float = 1e-9) -> Report:
    """Closure and coideal residuals of a candidate subspace.

    Checks *-subalgebra closure (products, stars, unit), the side's coideal
    condition (the matching coproduct leg stays in the span), and records
    ``S^2``-invariance.  For side "L" the ``S^2`` entry is binding; for side
    "R" it is informational only (infinite tolerance).
    """
    alg = coideal.algebra
    rows = coideal.span_rows
    comp = np.eye(alg.dim) - coideal.std_projector()
    report = Report(f"coideal axioms [{coideal.label}]", meta={"tol": tol})
    t = tol * alg.magnitude * max(1.0, float(np.abs(rows).max()) ** 2)

    products = np.einsum("ia,jb,abm->ijm", rows, rows, alg.mult)
    report.add("product closure", float(np.abs(products @ comp.T).max()), t)
    stars = np.conj(rows) @ alg.star
    report.add("star closure", float(np.abs(stars @ comp.T).max()), t)
    report.add("unit membership", float(np.abs(comp @ alg.unit).max()), t)

    legs = np.einsum("it,tab->iab", rows, alg.comult)
    if coideal.side == "R":
        escape = np.einsum("iab,ac->icb", legs, comp)  # first leg outside the span
    else:
        escape = np.einsum("iab,bc->iac", legs, comp)  # second leg outside the span
    report.add("coideal condition", float(np.abs(escape).max()), t)

    s2 = rows @ alg.antipode @ alg.antipode
    s2_res = float(np.abs(s2 @ comp.T).max())
    if coideal.side == "L":
        report.add("S^2 invariance", s2_res, t)
    else:
        report.add("S^2 invariance (informational)", s2_res, float("inf"))
    coideal.flags = {c.name: c.passed for c in report.checks}
    return report


def restricted_gram(coideal: CoidealSubalgebra, side: str, grams: GramPair,
                    tol: float = 1e-9) -> np.ndarray:
    """The side's invariant inner product on the raw spanning basis."""
    gram_full = grams.gram(side)
    gram_b = np.conj(coideal.span_rows) @ gram_full @ coideal.span_rows.T
    herm = float(np.abs(gram_b - gram_b.conj().T).max())
    eigs = np.linalg.eigvalsh((gram_b + gram_b.conj().T) / 2.0)
    if herm > tol or eigs[0] <= 1e-10 * max(eigs[-1], 1e-30):
        raise PositivityFailure(
            f"restricted {side} Gram of {coideal.label!r} fails positivity "
            f"(hermiticity {herm:.2e}, min eig {eigs[0]:.2e})")
    return gram_b


def restricted_coaction_tensor(coideal: CoidealSubalgebra, grams: GramPair,
                               tol: float = 1e-9) -> np.ndarray:
    """Tensor ``T[i, k, c]``: restricted coaction of the i-th ONB element.

    ``coaction(e_i) = sum_{k,c} T[i, k, c] e_k (x) a_c``; a first leg escaping
    the span raises ``CoidealMismatch``.
    """
    alg = coideal.algebra
    if coideal.onb_rows is None:
        coideal.orthonormalize(grams)
    onb = coideal.onb()
    full = regular_coaction_tensor(alg, coideal.side)
    gram_full = grams.gram(coideal.side)
    lifted = np.einsum("it,tac->iac", onb, full)
    coords = np.einsum("ka,ab,ibc->ikc", np.conj(onb), gram_full, lifted)
    rebuilt = np.einsum("ikc,ka->iac", coords, onb)
    escape = float(np.abs(rebuilt - lifted).max())
    if escape > tol * alg.magnitude:
        raise CoidealMismatch(
            f"coaction leg of {coideal.label!r} escapes the span by {escape:.2e}")
    return coords


def restricted_coaction_report(coideal: CoidealSubalgebra, grams: GramPair,
                               h: HaarFunctional, tol: float = 1e-10) -> Report:
    """Comodule axioms and two-sided Haar invariance of the restricted coaction."""
    alg = coideal.algebra
    coact = restricted_coaction_tensor(coideal, grams)
    report = Report(f"restricted coaction [{coideal.label}]", meta={"tol": tol})
    t = tol * alg.magnitude
    b = coideal.dim
    again = np.einsum("ikc,kjd->ijdc", coact, coact)
    split = np.einsum("ijc,cde->ijde", coact, alg.comult)
    report.add("coassociativity", float(np.abs(again - split).max()), t)
    counit = np.einsum("ikc,c->ik", coact, alg.counit)
    report.add("counit", float(np.abs(counit - np.eye(b)).max()), t)

    onb = coideal.onb()
    h_b = onb @ h.covector
    expected = np.einsum("i,t->it", h_b, alg.unit)
    left = np.einsum("ikc,k->ic", coact, h_b)
    report.add("left invariance", float(np.abs(left - expected).max()), t)
    right = np.einsum("ikc,c,kt->it", coact, h.covector, onb)
    report.add("right invariance", float(np.abs(right - expected).max()), t)
    return report


# ---------------------------------------------------------------------------
# restricted basis functions
# ---------------------------------------------------------------------------

@dataclass
class RestrictedBasisFunctions:
    """``d`` elements of ``B`` transforming like the columns of an A-corep."""

    corep: Corepresentation
    coideal: CoidealSubalgebra
    coords: np.ndarray  # (d, b) in the ONB of the coideal
    label: str = ""

    @property
    def side(self) -> str:
        return self.coideal.side

    def embedded(self) -> np.ndarray:
        return self.coideal.embed(self.coords)


def restricted_basis_residual(bset: RestrictedBasisFunctions, coact: np.ndarray) -> float:
    lhs = np.einsum("ji,ikc->jkc", bset.coords, coact)
    rhs = np.einsum("kb,kjc->jbc", bset.coords, bset.corep.coeffs)
    return float(np.abs(lhs - rhs).max())


def solve_restricted_basis_functions(pi: Corepresentation, coideal: CoidealSubalgebra,
                                     grams: GramPair, rcond: float = 1e-9
                                     ) -> list[RestrictedBasisFunctions]:
    """Basis of the space of restricted basis-function tuples for ``pi``.

    The defining relation ``coaction(psi_j) = sum_k psi_k (x) pi_kj`` is a
    homogeneous linear system over ``d``-tuples in ``B``; the solution space
    may be empty (no existence guarantee, unlike the unrestricted case).  Its
    dimension equals the multiplicity of ``pi`` in the comodule ``B``.
    """
    alg = coideal.algebra
    coact = restricted_coaction_tensor(coideal, grams)
    d, b, n = pi.dim, coideal.dim, alg.dim
    # unknown Psi[j, i]; equations indexed (j, k, c)
    mat = np.zeros((d * b * n, d * b), dtype=complex)
    eye_b = np.eye(b)
    for j in range(d):
        rows = slice(j * b * n, (j + 1) * b * n)
        # coefficient of Psi[j, i] at equation row (k, c) is coact[i, k, c]
        mat[rows, j * b:(j + 1) * b] += coact.transpose(1, 2, 0).reshape(b * n, b)
        for k in range(d):
            sub = np.einsum("c,bi->bci", pi.coeffs[k, j], eye_b).reshape(b * n, b)
            mat[rows, k * b:(k + 1) * b] -= sub
    basis = _nullspace(mat, rcond, scale=float(alg.magnitude))
    out = []
    for idx, vec in enumerate(basis):
        bset = RestrictedBasisFunctions(pi, coideal, vec.reshape(d, b),
                                        label=f"res{idx}[{pi.label}|{coideal.label}]")
        out.append(bset)
    return out


def canonical_restricted_candidates(pi: Corepresentation, coideal: CoidealSubalgebra,
                                    grams: GramPair, tol: float = 1e-9
                                    ) -> list[RestrictedBasisFunctions]:
    """Canonical row/column sets whose entries happen to lie in ``B``.

    Side "R": rows ``pi_l.`` with every entry in ``B``; side "L":
    ``S^{-2}(pi^*_{. l})`` columns, requiring the corep entries in ``B``.
    """
    alg = coideal.algebra
    out = []
    for ell in range(pi.dim):
        if coideal.side == "R":
            funcs = pi.coeffs[ell, :, :]
        else:
            s_inv = alg.antipode_inv
            funcs = np.einsum("jm,mt->jt", np.conj(pi.coeffs[:, ell, :]) @ alg.star,
                              s_inv @ s_inv)
        if all(coideal.contains(funcs[j], tol) for j in range(pi.dim)):
            coords = np.array([coideal.restrict(funcs[j], grams) for j in range(pi.dim)])
            out.append(RestrictedBasisFunctions(
                pi, coideal, coords, label=f"canon{ell}[{pi.label}|{coideal.label}]"))
    return out


# ---------------------------------------------------------------------------
# restricted tensor operators
# ---------------------------------------------------------------------------

@dataclass
class RestrictedOperatorFamily:
    """``d`` operators on ``B`` transforming like the columns of an A-corep."""

    corep: Corepresentation
    coideal: CoidealSubalgebra
    kind: str
    operators: np.ndarray  # (d, b, b) in the ONB of the coideal
    residual: float | None = None
    label: str = ""

    @property
    def side(self) -> str:
        return self.coideal.side


def check_restricted_family(fam: RestrictedOperatorFamily, coact: np.ndarray,
                            tol: float = 1e-10) -> float:
    """Max defining-condition residual of a restricted family."""
    alg = fam.coideal.algebra
    lhs = np.array([pipeline_components(coact, alg, fam.kind, op)
                    for op in fam.operators])          # (d, m, k, i)
    rhs = np.einsum("kat,kjm->jmat", fam.operators, fam.corep.coeffs)
    res = float(np.abs(lhs - rhs).max())
    fam.residual = res
    return res


def solve_restricted_family(pi: Corepresentation, coideal: CoidealSubalgebra,
                            grams: GramPair, kind: str, rcond: float = 1e-9
                            ) -> list[RestrictedOperatorFamily]:
    """Basis of the restricted-family solution space for one variant."""
    alg = coideal.algebra
    coact = restricted_coaction_tensor(coideal, grams)
    b, d, n = coideal.dim, pi.dim, alg.dim
    eye_b = np.eye(b)
    unit_ops = [np.outer(eye_b[:, i], eye_b[a]) for i in range(b) for a in range(b)]
    base = np.array([pipeline_components(coact, alg, kind, op) for op in unit_ops])
    lhs_block = base.reshape(b * b, n * b * b).T
    mat = np.zeros((d * n * b * b, d * b * b), dtype=complex)
    for j in range(d):
        rows = slice(j * n * b * b, (j + 1) * n * b * b)
        mat[rows, j * b * b:(j + 1) * b * b] += lhs_block
        for k in range(d):
            sub = np.einsum("m,ai,tb->matib", pi.coeffs[k, j], eye_b, eye_b)
            mat[rows, k * b * b:(k + 1) * b * b] -= sub.reshape(n * b * b, b * b)
    basis = _nullspace(mat, rcond, scale=float(alg.magnitude ** 2))
    out = []
    for idx, vec in enumerate(basis):
        fam = RestrictedOperatorFamily(pi, coideal, kind, vec.reshape(d, b, b),
                                       label=f"res-sol{idx}[{pi.label}]")
        out.append(fam)
    return out


def restricted_product_tensor(coideal: CoidealSubalgebra, grams: GramPair,
                              tol: float = 1e-9) -> np.ndarray:
    """Structure constants of ``B`` in its ONB: ``e_i e_j = sum_k T[i,j,k] e_k``."""
    alg = coideal.algebra
    onb = coideal.onb()
    products = np.einsum("ia,jb,abm->ijm", onb, onb, alg.mult)
    gram_full = grams.gram(coideal.side)
    coords = np.einsum("ka,ab,ijb->ijk", np.conj(onb), gram_full, products)
    rebuilt = np.einsum("ijk,km->ijm", coords, onb)
    if float(np.abs(rebuilt - products).max()) > tol * alg.magnitude:
        raise CoidealMismatch("products escape the subalgebra; not closed")
    return coords


def restricted_multiplication_family(bset: RestrictedBasisFunctions, kind: str,
                                     grams: GramPair, label: str = ""
                                     ) -> RestrictedOperatorFamily:
    """Multiplication by restricted basis functions, from the variant's side."""
    coideal = bset.coideal
    mult_b = restricted_product_tensor(coideal, grams)
    from_left = (kind == "ordinary") == (coideal.side == "R")
    if from_left:
        ops = np.einsum("ju,utA->jAt", bset.coords, mult_b)
    else:
        ops = np.einsum("ju,tuA->jAt", bset.coords, mult_b)
    return RestrictedOperatorFamily(bset.corep, coideal, kind, ops,
                                    label=label or f"mult[{bset.label}]")


def restricted_we_tensor(psis: RestrictedBasisFunctions, fam: RestrictedOperatorFamily,
                         phis: RestrictedBasisFunctions) -> np.ndarray:
    """Inner products ``(psi_l, Q_k(phi_j))`` in the restricted inner product.

    All coordinates are in the coideal's ONB, so the Gram matrix is the
    identity there.
    """
    acted = np.einsum("kab,jb->kja", fam.operators, phis.coords)
    return np.einsum("la,kja->lkj", np.conj(psis.coords), acted)


def restricted_wigner_eckart(psis: RestrictedBasisFunctions,
                             fam: RestrictedOperatorFamily,
                             phis: RestrictedBasisFunctions,
                             system, f_r: np.ndarray, tol: float = 1e-9) -> WEReport:
    """Wigner-Eckart factorization with all data restricted to ``B``."""
    tensor = restricted_we_tensor(psis, fam, phis)
    return factorize_tensor(
        tensor, system, psis.corep.label, f_r, fam.kind, fam.side, tol,
        labels=(phis.corep.label, fam.corep.label, psis.corep.label),
        scale=fam.coideal.algebra.magnitude ** 2)


def couple_restricted_families(fam_p: RestrictedOperatorFamily,
                               fam_q: RestrictedOperatorFamily,
                               system, table) -> dict[tuple[str, int],
                                                      RestrictedOperatorFamily]:
    """CG-couple two restricted families of the same variant and side."""
    if (fam_p.kind, fam_p.side) != (fam_q.kind, fam_q.side):
        raise ValueError("families must share kind and side")
    if fam_p.coideal is not fam_q.coideal:
        raise ValueError("families must live on the same coideal subalgebra")
    kind = fam_p.kind
    d_p, d_q = fam_p.corep.dim, fam_q.corep.dim
    if kind == "ordinary":
        if (system.d_p, system.d_q) != (d_p, d_q):
            raise ValueError("ordinary coupling needs the (p, q) CG system")
    else:
        if (system.d_p, system.d_q) != (d_q, d_p):
            raise ValueError("twisted coupling needs the (q, p) CG system")
    composed = np.einsum("jab,kbc->jkac", fam_p.operators, fam_q.operators)
    out: dict[tuple[str, int], RestrictedOperatorFamily] = {}
    for r_lab, mult in system.multiplicities.items():
        target = table[r_lab]
        for alpha in range(mult):
            ops = np.zeros((target.dim,) + composed.shape[2:], dtype=complex)
            for ell in range(target.dim):
                for j in range(d_p):
                    for k in range(d_q):
                        if kind == "ordinary":
                            coef = system.coef(j, k, r_lab, alpha, ell)
                        else:
                            coef = system.coef(k, j, r_lab, alpha, ell)
                        ops[ell] += coef * composed[j, k]
            out[r_lab, alpha] = RestrictedOperatorFamily(
                target, fam_p.coideal, kind, ops,
                label=f"({fam_p.label})({fam_q.label})->{r_lab},{alpha}")
    return out
