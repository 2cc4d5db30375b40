"""PBW enveloping algebras for g and its dual, plus the structures living
on them: the dual Lie bracket induced by r, centers, invariants of S(g*),
the co-Poisson cobracket, and the derivation it generates.

Monomials are non-decreasing tuples of generator indices; straightening
rewrites x_j x_i -> x_i x_j + [x_j, x_i] for j > i and is memoized per
algebra, so canonical forms are cheap after warmup.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linsolve
from ._rat import QQ, ZERO
from .core import LieAlgebraSpec, RMatrix
from .errors import AlgebraMismatch, JacobiViolation

TAG_G = "U(g)"
TAG_GSTAR = "U(g*)"


@dataclass(frozen=True, eq=False)
class PBWElement:
    """Element of an enveloping algebra in the sorted-monomial basis."""

    alg: LieAlgebraSpec
    tag: str
    coeffs: dict  # non-decreasing index tuple -> rational

    @classmethod
    def make(cls, alg, tag, items) -> "PBWElement":
        coeffs = {}
        for mono, c in dict(items).items():
            mono = tuple(mono)
            assert all(mono[i] <= mono[i + 1] for i in range(len(mono) - 1)), (
                "PBW monomials must be sorted"
            )
            assert all(0 <= i < alg.dim for i in mono)
            c = QQ(c)
            if c:
                coeffs[mono] = c
        return cls(alg, tag, coeffs)

    @classmethod
    def zero(cls, alg, tag) -> "PBWElement":
        return cls(alg, tag, {})

    @classmethod
    def one(cls, alg, tag) -> "PBWElement":
        return cls(alg, tag, {(): QQ(1)})

    @classmethod
    def generator(cls, alg, tag, i: int) -> "PBWElement":
        return cls(alg, tag, {(i,): QQ(1)})

    @property
    def filtration(self) -> int:
        return max((len(m) for m in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def top_symbol(self) -> dict:
        """Leading-filtration part as exponent vectors (the gr image)."""
        top = self.filtration
        out = {}
        for mono, c in self.coeffs.items():
            if len(mono) == top:
                vec = [0] * self.alg.dim
                for i in mono:
                    vec[i] += 1
                out[tuple(vec)] = out.get(tuple(vec), ZERO) + c
        return {k: v for k, v in out.items() if v}

    def _check(self, other):
        if self.tag != other.tag or self.alg != other.alg:
            raise AlgebraMismatch(
                f"cannot combine {self.tag} element with {other.tag} element"
            )

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return PBWElement(self.alg, self.tag, out)

    def __sub__(self, other):
        return self + other.scale(QQ(-1))

    def scale(self, scalar) -> "PBWElement":
        scalar = QQ(scalar)
        if not scalar:
            return PBWElement(self.alg, self.tag, {})
        return PBWElement(self.alg, self.tag,
                          {m: c * scalar for m, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return (self.tag == other.tag and self.alg == other.alg
                and self.coeffs == other.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return f"PBWElement<{self.tag}>(0)"
        parts = []
        for mono in sorted(self.coeffs, key=lambda m: (len(m), m))[:8]:
            word = "".join(self.alg.basis_names[i] for i in mono) or "1"
            parts.append(f"{self.coeffs[mono]}*{word}")
        more = " + ..." if len(self.coeffs) > 8 else ""
        return f"PBWElement<{self.tag}>({' + '.join(parts)}{more})"


_STRAIGHTEN_MEMO: dict = {}


def _straighten(alg: LieAlgebraSpec, word: tuple) -> dict:
    """Sorted-basis expansion of an arbitrary product word."""
    key = (alg, word)
    hit = _STRAIGHTEN_MEMO.get(key)
    if hit is not None:
        return hit
    out = None
    for p in range(len(word) - 1):
        j, i = word[p], word[p + 1]
        if j <= i:
            continue
        out = {}
        swapped = word[:p] + (i, j) + word[p + 2:]
        for m, c in _straighten(alg, swapped).items():
            out[m] = out.get(m, ZERO) + c
        for k, c in alg.bracket_rows.get(j, {}).get(i, ()):
            shorter = word[:p] + (k,) + word[p + 2:]
            for m, c2 in _straighten(alg, shorter).items():
                v = out.get(m, ZERO) + c * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        break
    if out is None:
        out = {word: QQ(1)}
    _STRAIGHTEN_MEMO[key] = out
    return out


def pbw_product(a: PBWElement, b: PBWElement) -> PBWElement:
    """Product in the enveloping algebra, straightened to the sorted basis."""
    a._check(b)
    out = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            c = ca * cb
            for m, cw in _straighten(a.alg, ma + mb).items():
                v = out.get(m, ZERO) + c * cw
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return PBWElement(a.alg, a.tag, out)


def pbw_commutator(a: PBWElement, b: PBWElement) -> PBWElement:
    return pbw_product(a, b) - pbw_product(b, a)


def sorted_monomials(dim: int, length: int):
    return list(itertools.combinations_with_replacement(range(dim), length))


def pbw_basis(dim: int, maxdeg: int):
    """All sorted monomials of length <= maxdeg, graded order."""
    out = []
    for ln in range(maxdeg + 1):
        out.extend(sorted_monomials(dim, ln))
    return out


def center(alg: LieAlgebraSpec, maxdeg: int, tag: str = TAG_G) -> list:
    """Basis of {z : filtration <= maxdeg, [z, x_i] = 0 for all i}."""
    basis = pbw_basis(alg.dim, maxdeg)
    index = {m: j for j, m in enumerate(basis)}
    target_index: dict = {}
    rows: list = []

    def row_of(out_mono):
        j = target_index.get(out_mono)
        if j is None:
            j = target_index[out_mono] = len(rows)
            rows.append({})
        return rows[j]

    for col, mono in enumerate(basis):
        z = PBWElement.make(alg, tag, {mono: QQ(1)})
        for i in range(alg.dim):
            xi = PBWElement.generator(alg, tag, i)
            comm = pbw_commutator(z, xi)
            for m, c in comm.coeffs.items():
                row_of((i, m))[col] = c
    kernel = linsolve.kernel_basis(rows, len(basis))
    out = []
    for vec in kernel:
        out.append(PBWElement.make(alg, tag,
                                   {basis[j]: c for j, c in vec.items()}))
    return out


def coadjoint_action(alg: LieAlgebraSpec, i: int, form: dict) -> dict:
    """ad*(x_i) on a polynomial in the dual variables, by Leibniz.

    form maps exponent vectors over the dual basis to rationals;
    ad*(x_i) xi_a = -sum_m c_{im}^a xi_m.
    """
    gen_img = [dict() for _ in range(alg.dim)]
    for m, targets in alg.bracket_rows.get(i, {}).items():
        for a, c in targets:
            gen_img[a][m] = gen_img[a].get(m, ZERO) - c
    out: dict = {}
    for vec, coef in form.items():
        for a in range(alg.dim):
            if not vec[a]:
                continue
            for m, c in gen_img[a].items():
                nv = list(vec)
                nv[a] -= 1
                nv[m] += 1
                k = tuple(nv)
                v = out.get(k, ZERO) + coef * vec[a] * c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    return out


def invariants_s_dual(alg: LieAlgebraSpec, maxdeg: int) -> list:
    """Graded basis of S(g*)^g up to degree maxdeg (coadjoint kernel per
    degree), returned as LinearForms."""
    from .duality import LinearForm
    from .cohochschild import monomials

    out = []
    for d in range(maxdeg + 1):
        monos = monomials(alg.dim, d)
        index = {m: j for j, m in enumerate(monos)}
        rows = [dict() for _ in range(alg.dim * len(monos))]
        for col, mono in enumerate(monos):
            for i in range(alg.dim):
                img = coadjoint_action(alg, i, {mono: QQ(1)})
                for m, c in img.items():
                    rows[i * len(monos) + index[m]][col] = c
        for vec in linsolve.kernel_basis(rows, len(monos)):
            out.append(LinearForm.make(alg, {monos[j]: c for j, c in vec.items()}))
    return out


def dual_bracket(r: RMatrix) -> LieAlgebraSpec:
    """The Lie algebra on the dual basis with
    [a, b] = ad*(R(b))(a) - ad*(R(a))(b), R(xi) = (id (x) xi)(r)."""
    alg = r.alg
    dim = alg.dim

    # R(xi_b) = sum_k r_{k b} x_k
    def rmap(b):
        return {k: r.entries[k][b] for k in range(dim) if r.entries[k][b]}

    # ad*(x_k) xi_a = -sum_m c_{km}^a xi_m
    def coad(k, a):
        out = {}
        for m, targets in alg.bracket_rows.get(k, {}).items():
            for tgt, c in targets:
                if tgt == a:
                    out[m] = out.get(m, ZERO) - c
        return out

    c: list = []
    for a in range(dim):
        row = []
        for b in range(dim):
            acc = [ZERO] * dim
            for k, w in rmap(b).items():
                for m, v in coad(k, a).items():
                    acc[m] += w * v
            for k, w in rmap(a).items():
                for m, v in coad(k, b).items():
                    acc[m] -= w * v
            row.append(tuple(acc))
        c.append(tuple(row))

    return LieAlgebraSpec(
        dim=dim,
        basis_names=tuple(n + "*" for n in alg.basis_names),
        c=tuple(c),
    ).validate()


@dataclass(frozen=True, eq=False)
class PBWTensorSquare:
    """Element of U(a)^{(x)2} with keys = pairs of sorted monomials."""

    alg: LieAlgebraSpec
    tag: str
    coeffs: dict

    @classmethod
    def zero(cls, alg, tag):
        return cls(alg, tag, {})

    def add_term(self, key, c):
        v = self.coeffs.get(key, ZERO) + c
        if v:
            self.coeffs[key] = v
        else:
            self.coeffs.pop(key, None)

    def __add__(self, other):
        out = PBWTensorSquare(self.alg, self.tag, dict(self.coeffs))
        for k, c in other.coeffs.items():
            out.add_term(k, c)
        return out

    def scale(self, scalar):
        scalar = QQ(scalar)
        if not scalar:
            return PBWTensorSquare(self.alg, self.tag, {})
        return PBWTensorSquare(self.alg, self.tag,
                               {k: c * scalar for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + other.scale(QQ(-1))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, PBWTensorSquare):
            return NotImplemented
        return (self.tag == other.tag and self.alg == other.alg
                and self.coeffs == other.coeffs)

    def swap(self) -> "PBWTensorSquare":
        return PBWTensorSquare(self.alg, self.tag,
                               {(b, a): c for (a, b), c in self.coeffs.items()})


def _mult_square(t: PBWTensorSquare, u: PBWTensorSquare) -> PBWTensorSquare:
    out = PBWTensorSquare.zero(t.alg, t.tag)
    for (a1, a2), c in t.coeffs.items():
        for (b1, b2), d in u.coeffs.items():
            left = _straighten(t.alg, a1 + b1)
            right = _straighten(t.alg, a2 + b2)
            cd = c * d
            for m1, w1 in left.items():
                for m2, w2 in right.items():
                    out.add_term((m1, m2), cd * w1 * w2)
    return out


def coproduct_square(x: PBWElement) -> PBWTensorSquare:
    """Delta_0(x): generators primitive, extended multiplicatively.
    Subsequences of a sorted monomial stay sorted, so no straightening."""
    out = PBWTensorSquare.zero(x.alg, x.tag)
    for mono, c in x.coeffs.items():
        n = len(mono)
        for mask in range(1 << n):
            left = tuple(mono[i] for i in range(n) if mask >> i & 1)
            right = tuple(mono[i] for i in range(n) if not mask >> i & 1)
            out.add_term((left, right), c)
    return out


def _delta_generator(g: LieAlgebraSpec, dual: LieAlgebraSpec, a: int) -> PBWTensorSquare:
    """Cobracket of the dual generator a: the transpose of g's bracket."""
    out = PBWTensorSquare.zero(dual, TAG_GSTAR)
    for i, targets in g.bracket_rows.items():
        for j, pairs in targets.items():
            if i >= j:
                continue
            for tgt, c in pairs:
                if tgt == a:
                    out.add_term(((i,), (j,)), c)
                    out.add_term(((j,), (i,)), -c)
    return out


_DELTA_MEMO: dict = {}


def copoisson_delta(x: PBWElement, g: LieAlgebraSpec) -> PBWTensorSquare:
    """The co-Poisson cobracket on U(g*): transpose structure constants on
    generators, co-Leibniz rule delta(xy) = delta(x)Delta0(y) + Delta0(x)delta(y)."""
    dual = x.alg
    out = PBWTensorSquare.zero(dual, x.tag)

    def of_monomial(mono):
        key = (g, dual, mono)
        hit = _DELTA_MEMO.get(key)
        if hit is not None:
            return hit
        if not mono:
            res = PBWTensorSquare.zero(dual, x.tag)
        elif len(mono) == 1:
            res = _delta_generator(g, dual, mono[0])
        else:
            head = PBWElement.generator(dual, x.tag, mono[0])
            rest = PBWElement.make(dual, x.tag, {mono[1:]: QQ(1)})
            res = _mult_square(of_monomial((mono[0],)), coproduct_square(rest))
            res = res + _mult_square(coproduct_square(head), of_monomial(mono[1:]))
        _DELTA_MEMO[key] = res
        return res

    for mono, c in x.coeffs.items():
        out = out + of_monomial(mono).scale(c)
    return out


def derivation_D(x: PBWElement, g: LieAlgebraSpec) -> PBWElement:
    """bracket-after-cobracket of the dual algebra, extended as a derivation."""
    dual = x.alg
    gen_img = []
    for a in range(dual.dim):
        acc = PBWElement.zero(dual, x.tag)
        delta = _delta_generator(g, dual, a)
        for ((m1, m2), c) in delta.coeffs.items():
            i, j = m1[0], m2[0]
            for tgt, w in dual.bracket_rows.get(i, {}).get(j, ()):
                acc = acc + PBWElement.make(dual, x.tag, {(tgt,): c * w})
        gen_img.append(acc)

    out = PBWElement.zero(dual, x.tag)
    for mono, c in x.coeffs.items():
        for t in range(len(mono)):
            pre = PBWElement.make(dual, x.tag, {mono[:t]: QQ(1)})
            post = PBWElement.make(dual, x.tag, {mono[t + 1:]: QQ(1)})
            term = pbw_product(pbw_product(pre, gen_img[mono[t]]), post)
            out = out + term.scale(c)
    return out
