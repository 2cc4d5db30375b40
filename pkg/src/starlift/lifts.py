"""Inductive construction of the associator phi and the twist rho.

Both lifts run the same loop: compute the star-group defect of the
current truncation, extract its lowest homogeneous class, check it is a
d-cocycle, solve d(beta) = class, and add beta. Degree bookkeeping makes
each step kill one more degree, and the group form of the defect
(LHS * -RHS) keeps "zero defect" meaningful at every truncation.
"""
from __future__ import annotations

from ._rat import QQ
from .cohochschild import Cochain, _d_raw, solve_coboundary
from .core import (
    FormalSeriesTensor,
    RMatrix,
    alt_project,
    coproduct_insert,
    cyb,
    is_invariant,
)
from .errors import (
    CompatibilityViolation,
    NotACocycle,
    NotInMSquared,
    NotInMTensor,
    NotInvariant,
    NotInWedge3,
    Obstruction,
    ObstructionAt4,
)
from .star import negate, star


def _ins(f, blocks, n):
    return coproduct_insert(f, blocks, n)


def pentagon_defect(phi: FormalSeriesTensor) -> FormalSeriesTensor:
    """(phi^{1,2,34} * phi^{12,3,4}) * -(phi^{2,3,4} * phi^{1,23,4} * phi^{1,2,3})."""
    if not phi.in_m_tensor():
        raise NotInMTensor("phi must lie in m^{(x)3}")
    lhs = star(_ins(phi, ((0,), (1,), (2, 3)), 4), _ins(phi, ((0, 1), (2,), (3,)), 4))
    rhs = star(
        star(_ins(phi, ((1,), (2,), (3,)), 4), _ins(phi, ((0,), (1, 2), (3,)), 4)),
        _ins(phi, ((0,), (1,), (2,)), 4),
    )
    return star(lhs, negate(rhs))


def cocycle_defect(rho: FormalSeriesTensor, phi: FormalSeriesTensor) -> FormalSeriesTensor:
    """(rho^{1,2} * rho^{12,3}) * -(rho^{2,3} * rho^{1,23} * phi)."""
    if not rho.in_m_tensor():
        raise NotInMTensor("rho must lie in m^{(x)2}")
    if not phi.in_m_tensor():
        raise NotInMTensor("phi must lie in m^{(x)3}")
    lhs = star(_ins(rho, ((0,), (1,)), 3), _ins(rho, ((0, 1), (2,)), 3))
    rhs = star(star(_ins(rho, ((1,), (2,)), 3), _ins(rho, ((0,), (1, 2)), 3)), phi)
    return star(lhs, negate(rhs))


def lift_associator(Z: FormalSeriesTensor, N: int) -> FormalSeriesTensor:
    """Invariant phi in m^{(x)3} with alt_project(phi) = Z and zero pentagon
    defect mod degree N+1, built degree by degree from the antisymmetric
    embedding of Z."""
    alg = Z.alg
    if alt_project(Z) != Z:
        raise NotInWedge3("Z must be a totally antisymmetric 3-tensor")
    if not is_invariant(Z):
        raise NotInvariant("Z must be g-invariant")

    phi = FormalSeriesTensor.make(alg, 3, N, Z.coeffs)
    if phi.is_zero():
        return phi

    for M in range(3, N):
        defect = pentagon_defect(phi.truncate(M + 1))
        assert defect.min_degree() >= M + 1, "defect below current degree"
        cls = defect.homogeneous_part(M + 1)
        if cls.is_zero():
            continue
        if not _d_raw(cls).is_zero():
            raise NotACocycle(f"pentagon defect class at degree {M + 1} is not a cocycle")
        if not is_invariant(cls):
            raise NotInvariant(f"pentagon defect class at degree {M + 1} is not invariant")
        cochain = Cochain.make(4, M + 1, cls.truncate(M + 1))
        try:
            beta = solve_coboundary(cochain, invariant_only=True)
        except Obstruction as exc:
            raise ObstructionAt4(
                "nonzero obstruction class in wedge^4(g)^g at degree 4",
                cls=exc.context.get("cls"),
            ) from exc
        correction = FormalSeriesTensor.make(alg, 3, N, beta.value.coeffs)
        phi = phi + correction
    return phi


# For rho = r the degree-3 defect class works out to
#     (1/2)cyb(r) + (1/2)[r^{12}, r^{23}] - phi_3,
# and alt_project([r^{12},r^{23}]) = (1/3)cyb(r) for antisymmetric r, so the
# class dies in cohomology iff alt_project(phi_3) = (2/3) alt_project(cyb(r)).
# That ratio is forced: no choice of beta corrections can repair it later.
TWIST_CLASS_RATIO = QQ(2, 3)


def lift_twist(r: RMatrix, phi: FormalSeriesTensor, N: int) -> FormalSeriesTensor:
    """rho in m^{(x)2} with degree-(1,1) part r and zero cocycle defect
    against phi mod degree N+1."""
    alg = r.alg
    target = alt_project(cyb(r)).scale(TWIST_CLASS_RATIO)
    if alt_project(phi) != target:
        raise CompatibilityViolation(
            "alt class of phi's cubic part must be 2/3 of alt_project(cyb(r)) "
            "for the degree-3 step to be solvable"
        )

    rho = r.to_series(N)
    for M in range(2, N):
        defect = cocycle_defect(rho.truncate(M + 1), phi.truncate(M + 1))
        assert defect.min_degree() >= M + 1, "defect below current degree"
        cls = defect.homogeneous_part(M + 1)
        if cls.is_zero():
            continue
        if not _d_raw(cls).is_zero():
            raise NotACocycle(f"twist defect class at degree {M + 1} is not a cocycle")
        cochain = Cochain.make(3, M + 1, cls.truncate(M + 1))
        beta = solve_coboundary(cochain, invariant_only=False)
        correction = FormalSeriesTensor.make(alg, 2, N, beta.value.coeffs)
        rho = rho + correction
    return rho


def lift(r: RMatrix, N: int) -> dict:
    """Full lift pipeline: phi from the invariant class (2/3)cyb(r) (the
    unique scaling that lets the twist start; see TWIST_CLASS_RATIO), then
    rho against that phi. Returns {"Z": cyb(r), "phi": ..., "rho": ...}."""
    Z = cyb(r)
    phi = lift_associator(Z.scale(TWIST_CLASS_RATIO), N)
    rho = lift_twist(r, phi, N)
    return {"Z": Z, "phi": phi, "rho": rho}


def gauge_phi(sigma: FormalSeriesTensor, phi: FormalSeriesTensor) -> FormalSeriesTensor:
    """sigma . phi = sigma^{2,3} * sigma^{1,23} * phi * (-sigma)^{12,3} * (-sigma)^{1,2}."""
    if not sigma.in_m_tensor():
        raise NotInMTensor("sigma must lie in m^{(x)2}")
    if not is_invariant(sigma):
        raise NotInvariant("gauge element sigma must be g-invariant")
    neg = negate(sigma)
    out = star(_ins(sigma, ((1,), (2,)), 3), _ins(sigma, ((0,), (1, 2)), 3))
    out = star(out, phi)
    out = star(out, _ins(neg, ((0, 1), (2,)), 3))
    return star(out, _ins(neg, ((0,), (1,)), 3))


def gauge_rho(lam: FormalSeriesTensor, rho: FormalSeriesTensor) -> FormalSeriesTensor:
    """lambda . rho = lambda^{1} * lambda^{2} * rho * (-lambda)^{12}."""
    if lam.k != 1 or not lam.in_m_squared():
        raise NotInMSquared("gauge element lambda must be a 1-slot element of m^2")
    out = star(_ins(lam, ((0,),), 2), _ins(lam, ((1,),), 2))
    out = star(out, rho)
    return star(out, _ins(negate(lam), ((0, 1),), 2))
