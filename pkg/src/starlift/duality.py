"""Restricted-dual linear forms on the function algebra, the rho-twisted
coproduct and convolution product, Poisson traces, and the filtered
morphism theta from Poisson traces into the dual enveloping algebra.

Pairing convention: the form with single key alpha evaluates on x^beta as
delta_{alpha beta} * alpha! (per-variable factorials). With it, untwisted
convolution of forms is exactly polynomial multiplication, which is what
makes the gr(theta) = inclusion check come out with no stray factors.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from . import linsolve
from ._rat import QQ, ZERO
from .core import (
    FormalSeriesTensor,
    LieAlgebraSpec,
    RMatrix,
    coproduct_insert,
    poisson_bracket,
)
from .envelope import TAG_GSTAR, PBWElement, dual_bracket, pbw_basis
from .errors import NotATrace, NotInMSquared, SingularPairing, TruncationTooLow


def _vec_factorial(vec) -> int:
    out = 1
    for e in vec:
        out *= factorial(e)
    return out


@dataclass(frozen=True, eq=False)
class LinearForm:
    """Form on the formal function algebra, supported in degrees <= order."""

    alg: LieAlgebraSpec
    coeffs: dict  # exponent vector -> rational

    @classmethod
    def make(cls, alg, items) -> "LinearForm":
        coeffs = {}
        for vec, c in dict(items).items():
            vec = tuple(vec)
            assert len(vec) == alg.dim
            c = QQ(c)
            if c:
                coeffs[vec] = c
        return cls(alg, coeffs)

    @classmethod
    def generator(cls, alg, i: int) -> "LinearForm":
        vec = tuple(1 if j == i else 0 for j in range(alg.dim))
        return cls.make(alg, {vec: QQ(1)})

    @classmethod
    def one(cls, alg) -> "LinearForm":
        return cls.make(alg, {(0,) * alg.dim: QQ(1)})

    @property
    def order(self) -> int:
        return max((sum(v) for v in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        assert self.alg == other.alg
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            n = out.get(v, ZERO) + c
            if n:
                out[v] = n
            else:
                out.pop(v, None)
        return LinearForm(self.alg, out)

    def __sub__(self, other):
        return self + other.scale(QQ(-1))

    def scale(self, scalar) -> "LinearForm":
        scalar = QQ(scalar)
        if not scalar:
            return LinearForm(self.alg, {})
        return LinearForm(self.alg, {v: c * scalar for v, c in self.coeffs.items()})

    def homogeneous_part(self, degree: int) -> "LinearForm":
        return LinearForm(self.alg,
                          {v: c for v, c in self.coeffs.items() if sum(v) == degree})

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.alg == other.alg and self.coeffs == other.coeffs

    def __repr__(self):
        terms = []
        for vec in sorted(self.coeffs, key=lambda v: (sum(v), v))[:8]:
            mono = "*".join(
                f"{self.alg.basis_names[i]}^{e}" if e > 1 else self.alg.basis_names[i]
                for i, e in enumerate(vec) if e
            ) or "1"
            terms.append(f"{self.coeffs[vec]}<{mono}>")
        more = " + ..." if len(self.coeffs) > 8 else ""
        return f"LinearForm({' + '.join(terms) or '0'}{more})"


def form_pair(l: LinearForm, f: FormalSeriesTensor):
    """<l, f> = sum_alpha l(alpha) * alpha! * [x^alpha](f)."""
    assert f.k == 1
    if l.order > f.N:
        raise TruncationTooLow(
            f"form of order {l.order} paired against truncation {f.N}"
        )
    total = ZERO
    for vec, c in l.coeffs.items():
        fc = f.coeffs.get((vec,))
        if fc:
            total += c * _vec_factorial(vec) * fc
    return total


def _pair_two(l1: LinearForm, l2: LinearForm, t: FormalSeriesTensor):
    """(l1 (x) l2) applied to a 2-slot series."""
    total = ZERO
    for (v1, v2), c in t.coeffs.items():
        a = l1.coeffs.get(v1)
        if not a:
            continue
        b = l2.coeffs.get(v2)
        if not b:
            continue
        total += c * a * b * _vec_factorial(v1) * _vec_factorial(v2)
    return total


def twisted_coproduct(f: FormalSeriesTensor, rho: FormalSeriesTensor) -> FormalSeriesTensor:
    """rho * Delta_0(f) * (-rho) in the star group of the doubled algebra."""
    from .star import star_conjugate

    assert f.k == 1
    if not (rho.k == 2 and rho.in_m_squared()):
        raise NotInMSquared("rho must be a 2-slot element of m^2")
    delta0 = coproduct_insert(f, ((0, 1),), 2)
    return star_conjugate(rho, delta0)


def _monomial_series(alg, vec, N) -> FormalSeriesTensor:
    return FormalSeriesTensor.make(alg, 1, N, {(tuple(vec),): QQ(1)})


def rho_product(l1: LinearForm, l2: LinearForm, rho: FormalSeriesTensor) -> LinearForm:
    """The convolution (l1 . l2)(f) = (l1 (x) l2)(rho * Delta_0(f) * (-rho)),
    returned as a form of order <= order(l1) + order(l2)."""
    from .cohochschild import monomials

    alg = l1.alg
    n = l1.order + l2.order
    if rho.N < n:
        raise TruncationTooLow(
            f"rho truncated at {rho.N}, need degree {n} for this product"
        )
    rho_n = rho.truncate(n)
    out = {}
    for d in range(n + 1):
        for vec in monomials(alg.dim, d):
            tc = twisted_coproduct(_monomial_series(alg, vec, n), rho_n)
            val = _pair_two(l1, l2, tc)
            if val:
                out[vec] = val / _vec_factorial(vec)
    return LinearForm.make(alg, out)


def poisson_traces(alg: LieAlgebraSpec, maxdeg: int) -> list:
    """Basis of forms of order <= maxdeg annihilating all Poisson brackets,
    degree by degree (degree d forms against brackets of degree d)."""
    from .cohochschild import monomials

    out = [LinearForm.one(alg)]
    for d in range(1, maxdeg + 1):
        cols = monomials(alg.dim, d)
        col_index = {v: j for j, v in enumerate(cols)}
        rows = []
        for da in range(1, d + 1):
            db = d + 1 - da
            if db < 1:
                continue
            for va in monomials(alg.dim, da):
                for vb in monomials(alg.dim, db):
                    u = _monomial_series(alg, va, d)
                    v = _monomial_series(alg, vb, d)
                    br = poisson_bracket(u, v)
                    row = {}
                    for (vec,), c in br.coeffs.items():
                        row[col_index[vec]] = c * _vec_factorial(vec)
                    if row:
                        rows.append(row)
        for ker in linsolve.kernel_basis(rows, len(cols)):
            out.append(LinearForm.make(alg, {cols[j]: c for j, c in ker.items()}))
    return out


def is_poisson_trace(l: LinearForm) -> bool:
    """Direct check that l kills {u, v} for all monomial pairs in range."""
    from .cohochschild import monomials

    alg = l.alg
    n = l.order
    for da in range(1, n + 1):
        for db in range(1, n + 2 - da):
            for va in monomials(alg.dim, da):
                for vb in monomials(alg.dim, db):
                    br = poisson_bracket(
                        _monomial_series(alg, va, n),
                        _monomial_series(alg, vb, n),
                    )
                    if form_pair(l, br):
                        return False
    return True


def _r_from_rho(rho: FormalSeriesTensor) -> RMatrix:
    d = rho.alg.dim
    mat = [[ZERO] * d for _ in range(d)]
    for (v1, v2), c in rho.homogeneous_part(2).coeffs.items():
        if sum(v1) == 1 and sum(v2) == 1:
            mat[v1.index(1)][v2.index(1)] = c
    return RMatrix(rho.alg, tuple(tuple(row) for row in mat)).validate()


def convolution_bracket(rho: FormalSeriesTensor) -> LieAlgebraSpec:
    """The Lie algebra the convolution product induces on dual generators:
    structure constants read off the degree-1 part of form commutators.

    This recovers the dual Lie bracket up to the single global scaling fixed
    by rho's own normalization, and it is the bracket that makes theta a
    morphism of filtered algebras on the nose."""
    alg = rho.alg
    d = alg.dim
    gens = [LinearForm.generator(alg, i) for i in range(d)]
    c = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            comm = rho_product(gens[i], gens[j], rho) - rho_product(gens[j], gens[i], rho)
            for vec, val in comm.homogeneous_part(1).coeffs.items():
                a = vec.index(1)
                c[i][j][a] = val
                c[j][i][a] = -val
    return LieAlgebraSpec(
        dim=d,
        basis_names=tuple(n + "*" for n in alg.basis_names),
        c=tuple(tuple(tuple(row) for row in plane) for plane in c),
    ).validate()


def theta(f: LinearForm, rho: FormalSeriesTensor) -> PBWElement:
    """Express a Poisson trace as an element of the dual enveloping algebra:
    pair iterated convolution products of dual generators against monomials
    and solve the unitriangular change of basis."""
    from .cohochschild import monomials

    alg = f.alg
    if not is_poisson_trace(f):
        raise NotATrace("theta is defined on Poisson traces only")
    n = f.order
    if rho.N < n:
        raise TruncationTooLow(f"rho truncated at {rho.N}, need degree {n}")

    keys = []
    for d in range(n + 1):
        keys.extend(monomials(alg.dim, d))
    key_index = {v: j for j, v in enumerate(keys)}

    basis = pbw_basis(alg.dim, n)
    forms = {(): LinearForm.one(alg)}
    for mono in basis:
        if not mono:
            continue
        prefix = forms[mono[:-1]]
        forms[mono] = rho_product(prefix, LinearForm.generator(alg, mono[-1]), rho)

    rows = [dict() for _ in keys]
    for col, mono in enumerate(basis):
        for vec, c in forms[mono].coeffs.items():
            rows[key_index[vec]][col] = c
    rhs = [ZERO] * len(keys)
    for vec, c in f.coeffs.items():
        rhs[key_index[vec]] = c
    sol = linsolve.solve(rows, rhs, len(basis))
    if sol is None:
        raise SingularPairing("convolution pairing matrix failed to solve")
    return PBWElement.make(theta_target(rho), TAG_GSTAR,
                           {basis[j]: c for j, c in sol.items()})


def theta_target(rho: FormalSeriesTensor) -> LieAlgebraSpec:
    """The dual Lie algebra underlying theta's codomain."""
    return convolution_bracket(rho)
