"""Irreducible tensor operators: ordinary and twisted, right and left.

An operator on the algebra is an ``n x n`` matrix acting on coefficient
columns.  A family ``Q_1 .. Q_d`` belongs to a unitary irreducible
corepresentation ``pi`` of dimension ``d`` for one of four variants
(ordinary/twisted x right/left) when the variant's defining condition holds.
All four conditions share one pipeline applied to each basis element ``a``::

    coact(a) --(Q (x) S^pm)--> A (x) A --(coact (x) id)--> A (x) A (x) A
          [twisted: swap the last two legs] --(id (x) M)--> A (x) A

with ``coact`` the right or left regular coaction, ``S`` in the ordinary
variants and ``S^{-1}`` in the twisted ones; the result must equal
``sum_k Q_k(a) (x) pi_kj``.

Each variant equivalently defines a right coaction on operator space,
``Q -> sum_m Q^(m) (x) a_m``.  Components are computed both by the pipeline
("maps") and by closed structure-constant contractions ("constants"); the two
routes must agree, and that agreement is checked wherever families are
certified.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import HopfAlgebraSpec
from .corep import Corepresentation
from .regular import BasisFunctionSet, regular_coaction_tensor
from .report import Report

__all__ = [
    "VARIANTS",
    "TensorOperatorFamily",
    "pipeline_components",
    "operator_coaction_components",
    "OperatorCoactionResult",
    "coaction_on_operator",
    "check_family",
    "family_report",
    "multiplication_family",
    "solve_family_space",
    "apply_family_to_basis_functions",
    "operator_product_rule_residual",
    "couple_families",
    "excluded_substitution_residual",
]

VARIANTS = (("ordinary", "R"), ("twisted", "R"), ("ordinary", "L"), ("twisted", "L"))


def _variant_key(kind: str, side: str) -> tuple[str, str]:
    if kind not in ("ordinary", "twisted") or side not in ("R", "L"):
        raise ValueError(f"unknown variant {(kind, side)!r}")
    return kind, side


def pipeline_components(coact: np.ndarray, alg: HopfAlgebraSpec, kind: str,
                        q_op: np.ndarray) -> np.ndarray:
    """Defining-condition pipeline for an arbitrary carrier coaction tensor.

    ``coact[t, a, b]`` may be restricted (carrier dimension below ``n``); the
    second legs always live in the full algebra.  Returns components
    ``out[m, alpha, t]``.
    """
    spow = alg.antipode if kind == "ordinary" else alg.antipode_inv
    legs = np.einsum("tab,ia->itb", coact, q_op)       # (Q (x) id)
    legs = np.einsum("itb,bw->itw", legs, spow)        # (id (x) S^pm)
    legs = np.einsum("itw,iAB->ABwt", legs, coact)     # (coact (x) id)
    if kind == "ordinary":
        return np.einsum("ABwt,BwM->MAt", legs, alg.mult)   # (id (x) M)
    return np.einsum("ABwt,wBM->MAt", legs, alg.mult)       # (id (x) M . swap)


def operator_coaction_components(alg: HopfAlgebraSpec, q_op: np.ndarray, kind: str,
                                 side: str, route: str = "constants") -> np.ndarray:
    """Components ``C[m]`` of the operator-space coaction of one operator.

    ``sum_m C[m] (x) a_m`` is the coaction image; equivalently ``C[m][:, t]``
    is the ``a_m``-component of the defining pipeline applied to ``a_t``.
    """
    kind, side = _variant_key(kind, side)
    mu, m, s = alg.comult, alg.mult, alg.antipode
    q_op = np.asarray(q_op, dtype=complex)
    if route == "maps":
        return pipeline_components(regular_coaction_tensor(alg, side), alg, kind, q_op)
    if route != "constants":
        raise ValueError(f"unknown route {route!r}")
    if side == "R":
        if kind == "ordinary":
            return np.einsum("uvM,wv,iju,tlw,il->Mjt", m, s, mu, mu, q_op, optimize=True)
        return np.einsum("vuM,wv,iju,tlw,il->Mjt", m, alg.antipode_inv, mu, mu, q_op,
                         optimize=True)
    if kind == "ordinary":
        return np.einsum("wuv,vM,nw,iuj,tnl,il->Mjt", m, s, s, mu, mu, q_op, optimize=True)
    return np.einsum("nvM,uv,iuj,tnl,il->Mjt", m, s, mu, mu, q_op, optimize=True)


@dataclass
class OperatorCoactionResult:
    """Operator-space coaction of one operator, as components per basis element."""

    algebra: HopfAlgebraSpec
    kind: str
    side: str
    operator: np.ndarray
    components: np.ndarray  # (n, n, n): components[m] = Q^(m)

    def routes_agreement(self) -> float:
        other = operator_coaction_components(
            self.algebra, self.operator, self.kind, self.side, route="maps")
        return float(np.abs(self.components - other).max())

    def comodule_axiom_report(self, tol: float = 1e-9) -> Report:
        """Coaction axioms at operator level.

        Coacting again on every component must match tensoring the second leg
        with its coproduct; contracting the second leg with the counit must
        give back the operator.
        """
        alg = self.algebra
        report = Report(f"operator coaction axioms [{self.kind}-{self.side}]",
                        meta={"tol": tol})
        t = tol * alg.magnitude ** 2
        again = np.array([
            operator_coaction_components(alg, self.components[m_idx], self.kind, self.side)
            for m_idx in range(alg.dim)])          # again[m, m2, a, t]
        lhs = again.transpose(1, 0, 2, 3)          # [m2, m, a, t]
        rhs = np.einsum("mat,mbc->bcat", self.components, alg.comult)
        report.add("coassociativity", float(np.abs(lhs - rhs).max()), t)
        counit_side = np.einsum("mat,m->at", self.components, alg.counit)
        report.add("counit", float(np.abs(counit_side - self.operator).max()), t)
        return report


def coaction_on_operator(alg: HopfAlgebraSpec, q_op: np.ndarray, kind: str, side: str,
                         check_routes: bool = True, tol: float = 1e-10
                         ) -> OperatorCoactionResult:
    """Operator-space coaction with the dual-route agreement enforced."""
    comps = operator_coaction_components(alg, q_op, kind, side, route="constants")
    result = OperatorCoactionResult(alg, kind, side, np.asarray(q_op, dtype=complex), comps)
    if check_routes:
        gap = result.routes_agreement()
        if gap > tol * alg.magnitude ** 2:
            raise AssertionError(
                f"structure-map and structure-constant coaction routes disagree "
                f"by {gap:.2e} for variant {kind}-{side}")
    return result


@dataclass
class TensorOperatorFamily:
    """``d`` operators transforming like the columns of ``pi``."""

    corep: Corepresentation
    kind: str
    side: str
    operators: np.ndarray  # (d, n, n)
    residual: float | None = None
    label: str = ""

    def __post_init__(self) -> None:
        arr = np.asarray(self.operators, dtype=complex)
        n = self.corep.algebra.dim
        if arr.shape != (self.corep.dim, n, n):
            raise ValueError(f"operator stack must be ({self.corep.dim}, {n}, {n})")
        self.operators = arr
        _variant_key(self.kind, self.side)

    @property
    def algebra(self) -> HopfAlgebraSpec:
        return self.corep.algebra

    def apply(self, j: int, coeffs: np.ndarray) -> np.ndarray:
        return self.operators[j] @ coeffs

    def scaled(self, factor: complex) -> "TensorOperatorFamily":
        return TensorOperatorFamily(self.corep, self.kind, self.side,
                                    factor * self.operators, label=self.label)


def check_family(fam: TensorOperatorFamily, tol: float = 1e-10,
                 kind: str | None = None, side: str | None = None) -> float:
    """Max defining-condition residual of the family, over both routes.

    ``kind``/``side`` override the variant being tested, so a family built
    for one variant can be checked against another (the distinctness
    diagnostics rely on this).  Sets ``fam.residual`` when testing the
    family's own variant.
    """
    kind = kind or fam.kind
    side = side or fam.side
    alg = fam.algebra
    rhs = np.einsum("kat,kjm->jmat", fam.operators, fam.corep.coeffs)
    worst = 0.0
    for route in ("constants", "maps"):
        lhs = np.array([
            operator_coaction_components(alg, op, kind, side, route=route)
            for op in fam.operators])   # (d, m, a, t)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    if kind == fam.kind and side == fam.side:
        fam.residual = worst
    return worst


def family_report(fam: TensorOperatorFamily, tol: float = 1e-10) -> Report:
    report = Report(
        f"tensor-operator family [{fam.label or fam.corep.label} {fam.kind}-{fam.side}]",
        meta={"tol": tol})
    report.add("defining condition", check_family(fam, tol), tol * fam.algebra.magnitude ** 2)
    return report


def multiplication_family(bset: BasisFunctionSet, kind: str,
                          label: str = "") -> TensorOperatorFamily:
    """Multiplication by basis functions, from the side the variant dictates.

    ordinary-R and twisted-L multiply from the left; twisted-R and ordinary-L
    from the right.  The set's side fixes the family's side.
    """
    side = bset.side
    _variant_key(kind, side)
    alg = bset.algebra
    from_left = (kind == "ordinary") == (side == "R")
    if from_left:
        ops = np.einsum("ju,utA->jAt", bset.functions, alg.mult)
    else:
        ops = np.einsum("ju,tuA->jAt", bset.functions, alg.mult)
    return TensorOperatorFamily(bset.corep, kind, side, ops,
                                label=label or f"mult[{bset.label}]")


def solve_family_space(pi: Corepresentation, kind: str, side: str,
                       rcond: float = 1e-9) -> list[TensorOperatorFamily]:
    """Basis of the space of families belonging to ``pi`` for one variant.

    Solves the homogeneous linear system in the ``d`` operator matrices; the
    returned families are orthonormal as flattened vectors, phase-fixed, and
    each passes :func:`check_family`.
    """
    from .corep import _nullspace

    alg = pi.algebra
    n, d = alg.dim, pi.dim
    eye = np.eye(n)
    unit_ops = [np.outer(eye[:, i], eye[a]) for i in range(n) for a in range(n)]
    base = np.array([
        operator_coaction_components(alg, op, kind, side) for op in unit_ops])
    lhs_block = base.reshape(n * n, n ** 3).T  # rows (m, alpha, t), cols (i, a)
    mat = np.zeros((d * n ** 3, d * n * n), dtype=complex)
    for j in range(d):
        rows = slice(j * n ** 3, (j + 1) * n ** 3)
        mat[rows, j * n * n:(j + 1) * n * n] += lhs_block
        for k in range(d):
            sub = np.einsum("m,ai,tb->matib", pi.coeffs[k, j], eye, eye)
            mat[rows, k * n * n:(k + 1) * n * n] -= sub.reshape(n ** 3, n * n)
    basis = _nullspace(mat, rcond, scale=float(alg.magnitude ** 2))
    families = []
    for idx, vec in enumerate(basis):
        fam = TensorOperatorFamily(pi, kind, side, vec.reshape(d, n, n),
                                   label=f"sol{idx}[{pi.label}]")
        families.append(fam)
    return families


def apply_family_to_basis_functions(fam: TensorOperatorFamily, phis: BasisFunctionSet,
                                    tol: float = 1e-10) -> Report:
    """Coaction of ``Q_k(phi_j)``: the tensor-product transformation law.

    Ordinary families transform with coefficients ``M(pi^q_tk (x) pi^p_sj)``,
    twisted families with the reversed product.
    """
    if phis.side != fam.side:
        raise ValueError("family and basis functions live on different sides")
    alg = fam.algebra
    coact = regular_coaction_tensor(alg, fam.side)
    acted = np.einsum("kab,jb->kja", fam.operators, phis.functions)  # Q_k(phi_j)
    lhs = np.einsum("kjt,tab->kjab", acted, coact)
    if fam.kind == "ordinary":
        weights = np.einsum("tkx,sjy,xyb->tksjb", fam.corep.coeffs, phis.corep.coeffs,
                            alg.mult)
    else:
        weights = np.einsum("tkx,sjy,yxb->tksjb", fam.corep.coeffs, phis.corep.coeffs,
                            alg.mult)
    rhs = np.einsum("tsa,tksjb->kjab", acted, weights)
    report = Report(f"family on basis functions [{fam.label} on {phis.label}]",
                    meta={"tol": tol})
    report.add("transformation law", float(np.abs(lhs - rhs).max()),
               tol * alg.magnitude ** 2)
    return report


def operator_product_rule_residual(alg: HopfAlgebraSpec, kind: str, side: str,
                                   q1: np.ndarray, q2: np.ndarray) -> float:
    """Residual of the product rule for the operator-space coactions.

    Ordinary: the coaction of ``Q Q'`` is the legwise product of the two
    coactions.  Twisted: the second legs multiply in reversed order.
    """
    comp1 = operator_coaction_components(alg, q1, kind, side)
    comp2 = operator_coaction_components(alg, q2, kind, side)
    prod = operator_coaction_components(alg, np.asarray(q1) @ np.asarray(q2), kind, side)
    if kind == "ordinary":
        expected = np.einsum("uab,vbc,uvM->Mac", comp1, comp2, alg.mult)
    else:
        expected = np.einsum("uab,vbc,vuM->Mac", comp1, comp2, alg.mult)
    return float(np.abs(prod - expected).max())


def couple_families(fam_p: TensorOperatorFamily, fam_q: TensorOperatorFamily,
                    system, table) -> dict[tuple[str, int], TensorOperatorFamily]:
    """CG-couple two families of the same variant into families per fused irrep.

    Ordinary coupling contracts ``Q^p_j Q^q_k`` with the ``(p, q)`` CG
    coefficients; twisted coupling with the ``(q, p)`` coefficients at pair
    index ``(k, j)``.
    """
    if (fam_p.kind, fam_p.side) != (fam_q.kind, fam_q.side):
        raise ValueError("families must share kind and side")
    kind, side = fam_p.kind, fam_p.side
    d_p, d_q = fam_p.corep.dim, fam_q.corep.dim
    if kind == "ordinary":
        if (system.d_p, system.d_q) != (d_p, d_q):
            raise ValueError("ordinary coupling needs the (p, q) CG system")
    else:
        if (system.d_p, system.d_q) != (d_q, d_p):
            raise ValueError("twisted coupling needs the (q, p) CG system")
    composed = np.einsum("jab,kbc->jkac", fam_p.operators, fam_q.operators)
    out: dict[tuple[str, int], TensorOperatorFamily] = {}
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
            out[r_lab, alpha] = TensorOperatorFamily(
                target, kind, side, ops,
                label=f"({fam_p.label})({fam_q.label})->{r_lab},{alpha}")
    return out


def excluded_substitution_residual(alg: HopfAlgebraSpec, which: str) -> float:
    """How badly the identity operator fails the two rejected substitutions.

    ``which`` is ``"swap_mult_only"`` (product reversed, antipode kept) or
    ``"inverse_antipode_only"`` (antipode inverted, product kept).  An
    admissible defining condition must send the identity operator to
    ``id (x) 1``; on a noncommutative spec these two variants do not.
    """
    m = alg.mult
    if which == "swap_mult_only":
        spow, swapped = alg.antipode, True
    elif which == "inverse_antipode_only":
        spow, swapped = alg.antipode_inv, False
    else:
        raise ValueError(f"unknown substitution {which!r}")
    coact = regular_coaction_tensor(alg, "R")
    legs = np.einsum("tab,bw->taw", coact, spow)
    legs = np.einsum("taw,aAB->ABwt", legs, coact)
    if swapped:
        out = np.einsum("ABwt,wBM->MAt", legs, m)
    else:
        out = np.einsum("ABwt,BwM->MAt", legs, m)
    expected = np.einsum("At,M->MAt", np.eye(alg.dim), alg.unit)
    return float(np.abs(out - expected).max())
