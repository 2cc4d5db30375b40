"""Quasitriangular structures: validation of (g, r'), the commutative
subalgebras C_s of the dual enveloping algebra, the transport map alpha,
the central-element morphism into C_1, and the inner-derivation identity
on U(g)."""
from __future__ import annotations

from dataclasses import dataclass

from . import linsolve
from ._rat import QQ, ZERO
from .core import FormalSeriesTensor, LieAlgebraSpec, RMatrix
from .envelope import (
    TAG_G,
    TAG_GSTAR,
    PBWElement,
    PBWTensorSquare,
    coproduct_square,
    copoisson_delta,
    derivation_D,
    dual_bracket,
    pbw_basis,
    pbw_commutator,
    pbw_product,
)
from .core import coproduct_insert, poisson_bracket
from .errors import CYBViolation, Degenerate, NotCentral, SingularPairing, TNotInvariant
from .lifts import cyb


def _cyb_general(r: RMatrix) -> FormalSeriesTensor:
    """The Yang-Baxter residual for an arbitrary (not necessarily
    antisymmetric) element of g(x)g."""
    rs = r.to_series(3)
    r12 = coproduct_insert(rs, ((0,), (1,)), 3)
    r13 = coproduct_insert(rs, ((0,), (2,)), 3)
    r23 = coproduct_insert(rs, ((1,), (2,)), 3)
    return (
        poisson_bracket(r12, r13)
        + poisson_bracket(r12, r23)
        + poisson_bracket(r13, r23)
    )


@dataclass(frozen=True)
class QTStructure:
    g: LieAlgebraSpec
    rprime: RMatrix
    r: RMatrix          # antisymmetric half
    t: tuple            # symmetric invariant part, dense matrix
    Z: FormalSeriesTensor
    nondegenerate: bool

    @property
    def dual(self) -> LieAlgebraSpec:
        return dual_bracket(self.r)


def _t_bracket_z(alg: LieAlgebraSpec, t) -> FormalSeriesTensor:
    """(1/4)[t^{12}, t^{23}] as a 3-slot series."""
    d = alg.dim
    items = {}

    def unit(i):
        return tuple(1 if q == i else 0 for q in range(d))

    for i in range(d):
        for j in range(d):
            if not t[i][j]:
                continue
            for k in range(d):
                for l in range(d):
                    if not t[k][l]:
                        continue
                    for m, c in alg.bracket_rows.get(j, {}).get(k, ()):
                        key = (unit(i), unit(m), unit(l))
                        v = items.get(key, ZERO) + QQ(1, 4) * t[i][j] * t[k][l] * c
                        if v:
                            items[key] = v
                        else:
                            items.pop(key, None)
    return FormalSeriesTensor.make(alg, 3, 3, items)


def _matrix_rank(mat, dim: int) -> int:
    rows = []
    for i in range(dim):
        row = {j: mat[i][j] for j in range(dim) if mat[i][j]}
        rows.append(row)
    ker = linsolve.kernel_basis(rows, dim)
    return dim - len(ker)


def qt_validate(g: LieAlgebraSpec, rprime) -> QTStructure:
    """Check CYB(r') = 0 and invariance of the symmetric part, then package
    the derived data (antisymmetric half, t, the 3-slot element Z)."""
    d = g.dim
    if isinstance(rprime, RMatrix):
        rp = rprime
    else:
        rp = RMatrix(g, tuple(tuple(QQ(v) for v in row) for row in rprime),
                     "quasitriangular-candidate")

    res = _cyb_general(rp)
    if not res.is_zero():
        raise CYBViolation("CYB(r') must vanish exactly",
                           residual_terms=len(res.coeffs))

    ent = rp.entries
    t = tuple(tuple(ent[i][j] + ent[j][i] for j in range(d)) for i in range(d))
    # ad-invariance: sum_m (c_{km}^i t_{mj} + c_{km}^j t_{im}) = 0 for all k,i,j
    for k in range(d):
        for i in range(d):
            for j in range(d):
                s = ZERO
                for m in range(d):
                    s += g.c[k][m][i] * t[m][j] + g.c[k][m][j] * t[i][m]
                if s:
                    raise TNotInvariant(
                        f"symmetric part not ad-invariant at ({k},{i},{j})"
                    )

    rmat = RMatrix(
        g,
        tuple(
            tuple((ent[i][j] - ent[j][i]) / 2 for j in range(d))
            for i in range(d)
        ),
    ).validate()

    Z = _t_bracket_z(g, t)
    assert cyb(rmat) == Z, "internal check: CYB of the antisymmetric half"

    return QTStructure(
        g=g,
        rprime=rp,
        r=rmat,
        t=t,
        Z=Z,
        nondegenerate=_matrix_rank(t, d) == d,
    )


def _tensor_square_keys(elt: PBWTensorSquare):
    return elt.coeffs.items()


def c_s_coderivation(x: PBWElement, g: LieAlgebraSpec) -> PBWElement:
    """The (co)derivation entering the C_s condition: bracket compose
    cobracket of the dual, with the cobracket taken co-opposite in wedge
    normalization, i.e. -1/2 times the raw tensor-sum composition.

    The -1/2 is the inverse of the factor by which the convolution product
    rescales the dual bracket on degree-1 commutators; with it the
    transported center lands exactly in C_1."""
    return derivation_D(x, g).scale(QQ(-1, 2))


def _d_tensor_id(x: PBWElement, g: LieAlgebraSpec) -> PBWTensorSquare:
    """(D (x) id) applied to Delta_0(x)."""
    dual = x.alg
    out = PBWTensorSquare.zero(dual, x.tag)
    for (m1, m2), c in coproduct_square(x).coeffs.items():
        dm1 = c_s_coderivation(PBWElement.make(dual, x.tag, {m1: QQ(1)}), g)
        for mono, v in dm1.coeffs.items():
            out.add_term((mono, m2), c * v)
    return out


def c_s_map(x: PBWElement, g: LieAlgebraSpec, s) -> PBWTensorSquare:
    """The defining map of C_s: delta(x) - s * (D (x) id)(Delta_0(x))."""
    return copoisson_delta(x, g) - _d_tensor_id(x, g).scale(QQ(s))


def c_s_basis(s, maxdeg: int, qt: QTStructure) -> list:
    """Basis of C_s = Ker(delta - s(D (x) id)Delta_0) inside the dual
    enveloping algebra, restricted to filtration <= maxdeg."""
    dual = qt.dual
    g = qt.g
    basis = pbw_basis(g.dim, maxdeg)
    images = []
    keyidx: dict = {}
    for mono in basis:
        img = c_s_map(PBWElement.make(dual, TAG_GSTAR, {mono: QQ(1)}), g, s)
        for key in img.coeffs:
            keyidx.setdefault(key, len(keyidx))
        images.append(img)

    rows = [dict() for _ in range(len(keyidx))]
    for col, img in enumerate(images):
        for key, c in img.coeffs.items():
            rows[keyidx[key]][col] = c
    out = []
    for vec in linsolve.kernel_basis(rows, len(basis)):
        out.append(PBWElement.make(dual, TAG_GSTAR,
                                   {basis[j]: c for j, c in vec.items()}))
    return out


def c_s_graded_dims(s, maxdeg: int, qt: QTStructure) -> tuple:
    """dim gr(C_s) per degree 0..maxdeg: successive differences of the
    kernel dimensions at growing filtration cutoffs."""
    dims = []
    prev = 0
    for d in range(maxdeg + 1):
        cur = len(c_s_basis(s, d, qt))
        dims.append(cur - prev)
        prev = cur
    return tuple(dims)


def _antipode(x: PBWElement) -> PBWElement:
    """S_0: generators to their negatives, extended as antihomomorphism."""
    out = PBWElement.zero(x.alg, x.tag)
    for mono, c in x.coeffs.items():
        term = PBWElement.make(x.alg, x.tag, {(): c * QQ((-1) ** len(mono))})
        for i in reversed(mono):
            term = pbw_product(term, PBWElement.generator(x.alg, x.tag, i))
        out = out + term
    return out


def _lr_image(qt: QTStructure, mono, right: bool) -> PBWElement:
    """Algebra-morphism extension of L (right=False) or R (right=True)
    applied to a sorted dual monomial, landing in U(g)."""
    g = qt.g
    d = g.dim
    ent = qt.rprime.entries
    acc = PBWElement.one(g, TAG_G)
    for a in mono:
        if right:
            img = {(i,): -ent[i][a] for i in range(d) if ent[i][a]}
        else:
            img = {(j,): ent[a][j] for j in range(d) if ent[a][j]}
        acc = pbw_product(acc, PBWElement.make(g, TAG_G, img))
    return acc


def sts_alpha(x: PBWElement, qt: QTStructure) -> PBWElement:
    """m_0 . (L (x) (S_0 . R)) . Delta_0 : U(g*) -> U(g)."""
    g = qt.g
    out = PBWElement.zero(g, TAG_G)
    for (m1, m2), c in coproduct_square(x).coeffs.items():
        left = _lr_image(qt, m1, right=False)
        rightimg = _antipode(_lr_image(qt, m2, right=True))
        out = out + pbw_product(left, rightimg).scale(c)
    return out


def alpha_matrix_rank(qt: QTStructure, maxdeg: int) -> tuple:
    """(rank, dimension) of alpha restricted to filtration <= maxdeg."""
    dual = qt.dual
    basis = pbw_basis(qt.g.dim, maxdeg)
    keyidx: dict = {}
    images = []
    for mono in basis:
        img = sts_alpha(PBWElement.make(dual, TAG_GSTAR, {mono: QQ(1)}), qt)
        for key in img.coeffs:
            keyidx.setdefault(key, len(keyidx))
        images.append(img)
    rows = [dict() for _ in range(len(keyidx))]
    for col, img in enumerate(images):
        for key, c in img.coeffs.items():
            rows[keyidx[key]][col] = c
    ker = linsolve.kernel_basis(rows, len(basis))
    return (len(basis) - len(ker), len(basis))


def sts_theta(z: PBWElement, qt: QTStructure) -> PBWElement:
    """Inverse-transport a central element of U(g) through alpha."""
    g = qt.g
    for i in range(g.dim):
        gen = PBWElement.generator(g, TAG_G, i)
        if not pbw_commutator(z, gen).is_zero():
            raise NotCentral(f"input does not commute with generator {i}")
    if not qt.nondegenerate:
        raise Degenerate("t is singular; alpha is not invertible")

    dual = qt.dual
    n = z.filtration
    basis = pbw_basis(g.dim, n)
    keyidx: dict = {}
    images = []
    for mono in basis:
        img = sts_alpha(PBWElement.make(dual, TAG_GSTAR, {mono: QQ(1)}), qt)
        for key in img.coeffs:
            keyidx.setdefault(key, len(keyidx))
        images.append(img)
    for key in z.coeffs:
        keyidx.setdefault(key, len(keyidx))
    rows = [dict() for _ in range(len(keyidx))]
    for col, img in enumerate(images):
        for key, c in img.coeffs.items():
            rows[keyidx[key]][col] = c
    rhs = [ZERO] * len(keyidx)
    for key, c in z.coeffs.items():
        rhs[keyidx[key]] = c
    sol = linsolve.solve(rows, rhs, len(basis))
    if sol is None:
        raise SingularPairing("alpha did not reach the requested element")
    return PBWElement.make(dual, TAG_GSTAR,
                           {basis[j]: c for j, c in sol.items()})


def mu_of_rprime(qt: QTStructure) -> tuple:
    """The bracket contraction sum_ij r'_ij [x_i, x_j] as a coefficient
    vector over the basis of g."""
    g = qt.g
    d = g.dim
    out = [ZERO] * d
    ent = qt.rprime.entries
    for i in range(d):
        for j in range(d):
            if not ent[i][j]:
                continue
            for k, c in g.bracket_rows.get(i, {}).get(j, ()):
                out[k] += ent[i][j] * c
    return tuple(out)


def _cobracket_g(qt: QTStructure, k: int):
    """delta(x_k) = [x_k (x) 1 + 1 (x) x_k, r] as a dict (i, j) -> coeff."""
    g = qt.g
    d = g.dim
    r = qt.r.entries
    out: dict = {}

    def put(i, j, v):
        if v:
            out[(i, j)] = out.get((i, j), ZERO) + v
            if not out[(i, j)]:
                del out[(i, j)]

    for a in range(d):
        for b in range(d):
            if not r[a][b]:
                continue
            for m, c in g.bracket_rows.get(k, {}).get(a, ()):
                put(m, b, r[a][b] * c)
            for m, c in g.bracket_rows.get(k, {}).get(b, ()):
                put(a, m, r[a][b] * c)
    return out


def check_inner_derivation(qt: QTStructure) -> dict:
    """On every generator x of g, compare mu(delta(x)) against -[mu(r'), x].
    Returns a report with per-generator witnesses."""
    g = qt.g
    d = g.dim
    mu_rp = mu_of_rprime(qt)
    witnesses = []
    ok = True
    for k in range(d):
        lhs = [ZERO] * d
        for (i, j), c in _cobracket_g(qt, k).items():
            for m, w in g.bracket_rows.get(i, {}).get(j, ()):
                lhs[m] += c * w
        rhs = [ZERO] * d
        for a in range(d):
            if not mu_rp[a]:
                continue
            for m, w in g.bracket_rows.get(a, {}).get(k, ()):
                rhs[m] -= mu_rp[a] * w
        match = lhs == rhs
        ok = ok and match
        witnesses.append({
            "generator": g.basis_names[k],
            "mu_delta": tuple(lhs),
            "minus_ad_mu": tuple(rhs),
            "match": match,
        })
    return {
        "passed": ok,
        "mu_rprime": mu_rp,
        "witnesses": witnesses,
    }


def compare_images(qt: QTStructure, maxdeg: int) -> dict:
    """Report whether C_0 and C_1 agree as subspaces at filtration <= maxdeg."""
    b0 = c_s_basis(QQ(0), maxdeg, qt)
    b1 = c_s_basis(QQ(1), maxdeg, qt)
    basis = pbw_basis(qt.g.dim, maxdeg)
    idx = {m: i for i, m in enumerate(basis)}

    def span_rows(elts):
        rows = []
        for e in elts:
            rows.append({idx[m]: c for m, c in e.coeffs.items()})
        return rows

    def rank(rows):
        ker = linsolve.kernel_basis(
            _transpose(rows, len(basis)), len(rows)
        )
        return len(rows) - len(ker)

    r0 = rank(span_rows(b0))
    r1 = rank(span_rows(b1))
    rj = rank(span_rows(b0) + span_rows(b1))
    return {
        "dim_C0": r0,
        "dim_C1": r1,
        "dim_join": rj,
        "equal": rj == r0 == r1,
    }


def _transpose(rows, ncols: int):
    out = [dict() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, v in row.items():
            out[j][i] = v
    return out
