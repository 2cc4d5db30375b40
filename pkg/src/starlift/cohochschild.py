"""The co-Hochschild complex (S^{>0}(g)^{(x)k}, d) and its invariant
subcomplex: differential, cocycle checks, coboundary solving, and
cohomology dimensions.

The differential on a k-cochain c is

    d(c) = c^{2,...,k+1} + sum_{i=1}^{k} (-1)^i c^{1,...,(i i+1),...,k+1}
           + (-1)^{k+1} c^{1,...,k}

(slot labels 1-based as usual for insertion notation). The unit-fill
contributions of the first and last terms cancel against the merge
terms, so d lands back in slot-positive cochains; the code asserts this.
Cohomology is wedge^k(g) (invariantly: wedge^k(g)^g) concentrated in
degree N = k, realized by alt_project.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linsolve
from ._rat import QQ
from .core import (
    FormalSeriesTensor,
    LieAlgebraSpec,
    alt_project,
    coproduct_insert,
    g_action,
    is_invariant,
    key_degree,
    slot_degrees,
)
from .errors import NotACocycle, NotInvariant, Obstruction, RankCertificate


@dataclass(frozen=True)
class Cochain:
    """Homogeneous element of S^{>0}(g)^{(x)k} in one total degree."""

    k: int
    degree: int
    value: FormalSeriesTensor

    @classmethod
    def make(cls, k: int, degree: int, value: FormalSeriesTensor) -> "Cochain":
        assert value.k == k
        for key in value.coeffs:
            assert key_degree(key) == degree, "cochain must be homogeneous"
            assert all(sum(v) >= 1 for v in key), "cochain slots must be positive"
        return cls(k, degree, value)

    def is_zero(self) -> bool:
        return self.value.is_zero()


def monomials(dim: int, degree: int):
    """All exponent vectors over dim variables with the given total degree,
    in lexicographic order."""
    if dim == 0:
        return [()] if degree == 0 else []
    out = []
    for head in range(degree, -1, -1):
        for tail in monomials(dim - 1, degree - head):
            out.append((head,) + tail)
    return sorted(out)


def slot_positive_keys(dim: int, k: int, N: int):
    """All k-slot monomial keys of total degree N with every slot degree >= 1,
    in a fixed deterministic order."""
    out = []
    for degs in _compositions_positive(N, k):
        slot_choices = [monomials(dim, d) for d in degs]
        for combo in itertools.product(*slot_choices):
            out.append(tuple(combo))
    return sorted(out)


def _compositions_positive(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions_positive(total - first, parts - 1):
            yield (first,) + rest


def _d_raw(f: FormalSeriesTensor) -> FormalSeriesTensor:
    """The differential on the underlying tensor (no validation)."""
    k = f.k
    n = k + 1
    out = coproduct_insert(f, [(s + 1,) for s in range(k)], n)
    sign = 1
    for i in range(1, k + 1):
        sign = -sign
        blocks = []
        for s in range(k):
            if s < i - 1:
                blocks.append((s,))
            elif s == i - 1:
                blocks.append((i - 1, i))
            else:
                blocks.append((s + 1,))
        out = out + coproduct_insert(f, blocks, n).scale(sign)
    last_sign = 1 if (k + 1) % 2 == 0 else -1
    out = out + coproduct_insert(f, [(s,) for s in range(k)], n).scale(last_sign)
    return out


def cohochschild_d(c: Cochain) -> Cochain:
    return Cochain.make(c.k + 1, c.degree, _d_raw(c.value))


def _diagonal_actions(alg: LieAlgebraSpec):
    """Split basis indices into (diagonal, other): index i is diagonal when
    ad(x_i) x_j is a multiple of x_j for every j. Diagonal actions scale
    monomials, so their kernels are coordinate subspaces - a cheap filter
    in front of the kernel elimination."""
    diag = {}
    others = []
    for i in range(alg.dim):
        row = alg.bracket_rows.get(i, {})
        lam = [QQ(0)] * alg.dim
        ok = True
        for j, ent in row.items():
            if len(ent) == 1 and ent[0][0] == j:
                lam[j] = ent[0][1]
            else:
                ok = False
                break
        if ok:
            diag[i] = lam
        else:
            others.append(i)
    return diag, others


def _monomial_fst(alg, key, N):
    return FormalSeriesTensor(alg, len(key), N, {key: QQ(1)})


def invariant_basis(alg: LieAlgebraSpec, k: int, N: int, keys=None):
    """Basis of ((S^{>0}(g))^{(x)k})^g_N as a list of FormalSeriesTensor,
    deterministic. `keys` may restrict/fix the monomial ordering."""
    if keys is None:
        keys = slot_positive_keys(alg.dim, k, N)
    diag, others = _diagonal_actions(alg)

    kept = []
    for key in keys:
        ok = True
        for lam in diag.values():
            w = QQ(0)
            for vec in key:
                for j, a in enumerate(vec):
                    if a:
                        w += a * lam[j]
            if w:
                ok = False
                break
        if ok:
            kept.append(key)

    if not others:
        vectors = [{j: QQ(1)} for j in range(len(kept))]
    else:
        rows = {}
        for j, key in enumerate(kept):
            mono = _monomial_fst(alg, key, N)
            for i in others:
                img = g_action(i, mono)
                for rkey, v in img.coeffs.items():
                    rows.setdefault((i, rkey), {})[j] = v
        vectors = linsolve.kernel_basis(
            [rows[rk] for rk in sorted(rows, key=repr)], len(kept)
        )

    out = []
    for vec in vectors:
        items = {kept[j]: v for j, v in vec.items()}
        out.append(FormalSeriesTensor.make(alg, k, N, items))
    return out


def _rank_of_columns(cols) -> int:
    rows = {}
    for j, col in enumerate(cols):
        for rkey, v in col.items():
            rows.setdefault(rkey, {})[j] = v
    return linsolve.rank(rows.values())


def _rank_d(alg, k: int, N: int) -> int:
    """Rank of d on (S^{>0})^{(x)k} in degree N, split by multidegree."""
    if k < 1 or N < k:
        return 0
    keys = slot_positive_keys(alg.dim, k, N)
    blocks = {}
    for key in keys:
        tot = tuple(sum(vec[i] for vec in key) for i in range(alg.dim))
        blocks.setdefault(tot, []).append(key)
    total = 0
    for tot in sorted(blocks):
        cols = []
        for key in blocks[tot]:
            img = _d_raw(_monomial_fst(alg, key, N))
            cols.append(img.coeffs)
        total += _rank_of_columns(cols)
    return total


def _rank_d_invariant(alg, k: int, N: int, inv_basis) -> int:
    cols = [_d_raw(v).coeffs for v in inv_basis]
    return _rank_of_columns(cols)


def cohomology_dimension(alg: LieAlgebraSpec, k: int, N: int,
                         invariant_only: bool = False) -> int:
    """dim of ker(d)/im(d) at slot count k, homogeneous degree N."""
    if k < 1 or N < 1:
        raise ValueError("need k >= 1 and N >= 1")
    if N < k:
        return 0
    if invariant_only:
        dom = invariant_basis(alg, k, N)
        below = invariant_basis(alg, k - 1, N) if k >= 2 else []
        r_out = _rank_d_invariant(alg, k, N, dom)
        r_in = _rank_d_invariant(alg, k - 1, N, below) if below else 0
        return len(dom) - r_out - r_in
    ncols = len(slot_positive_keys(alg.dim, k, N))
    return ncols - _rank_d(alg, k, N) - _rank_d(alg, k - 1, N)


def solve_coboundary(c: Cochain, invariant_only: bool = False,
                     alg: LieAlgebraSpec = None) -> Cochain:
    """Find beta with d(beta) = c (restricted to invariants when flagged).

    Raises NotACocycle if d(c) != 0; raises Obstruction carrying the
    alt_project class when N = k and the class is nonzero; a failed solve
    at N > k raises RankCertificate since the cohomology there vanishes.
    """
    alg = alg or c.value.alg
    k, N = c.k, c.degree
    if k < 2:
        raise ValueError("solving needs at least 2 slots")
    if not _d_raw(c.value).is_zero():
        raise NotACocycle(f"d(c) != 0 for the given {k}-cochain")
    if invariant_only and not is_invariant(c.value):
        raise NotInvariant("cochain is not g-invariant")

    keys_low = slot_positive_keys(alg.dim, k - 1, N)
    if invariant_only:
        basis = invariant_basis(alg, k - 1, N, keys_low)
        sol = _solve_block(alg, basis, c.value.coeffs, N)
        if sol is None:
            _raise_unsolvable(c)
        items = {}
        value = FormalSeriesTensor.zero(alg, k - 1, N)
        for j, x in sol.items():
            value = value + basis[j].scale(x)
        return Cochain.make(k - 1, N, value)

    # multidegree blocks solve independently
    blocks = {}
    for key in keys_low:
        tot = tuple(sum(vec[i] for vec in key) for i in range(alg.dim))
        blocks.setdefault(tot, []).append(key)
    rhs_blocks = {}
    for key, v in c.value.coeffs.items():
        tot = tuple(sum(vec[i] for vec in key) for i in range(alg.dim))
        rhs_blocks.setdefault(tot, {})[key] = v
    value = FormalSeriesTensor.zero(alg, k - 1, N)
    for tot, rhs in sorted(rhs_blocks.items()):
        cols = blocks.get(tot, [])
        basis = [_monomial_fst(alg, key, N) for key in cols]
        sol = _solve_block(alg, basis, rhs, N)
        if sol is None:
            _raise_unsolvable(c)
        for j, x in sol.items():
            value = value + basis[j].scale(x)
    return Cochain.make(k - 1, N, value)


def _solve_block(alg, basis, rhs, N):
    rows = {}
    for j, v in enumerate(basis):
        img = _d_raw(v)
        for rkey, coeff in img.coeffs.items():
            rows.setdefault(rkey, {})[j] = coeff
    for rkey in rhs:
        rows.setdefault(rkey, {})
    order = sorted(rows)
    return linsolve.solve(
        [rows[rk] for rk in order],
        [rhs.get(rk, QQ(0)) for rk in order],
        len(basis),
    )


def _raise_unsolvable(c: Cochain):
    if c.degree == c.k:
        cls = alt_project(c.value)
        raise Obstruction(
            f"nonzero class in degree {c.degree} = slot count", cls=cls
        )
    raise RankCertificate(
        f"solve failed at degree {c.degree} > slots {c.k}: "
        "cohomology should vanish there"
    )
