"""Lie algebra data and sparse polynomial tensors.

The ground ring is Q throughout. Elements of S(g)^{(x)k} truncated at
total degree N are stored sparsely: a key is a k-tuple of exponent
vectors (one per tensor slot), the value a nonzero rational. All
operations are pure and drop terms of total degree > N, so results are
always read "mod degree N+1".
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from math import factorial

from ._rat import QQ, ZERO, rat, rat_str
from .errors import (
    AntisymmetryViolation,
    BlockOverlap,
    IndexOutOfRange,
    JacobiViolation,
    NotAntisymmetric,
    ParseError,
    SlotMismatch,
    TruncationMismatch,
)

Vec = tuple  # exponent vector over the basis of g
Key = tuple  # k-tuple of Vec


@dataclass(frozen=True)
class LieAlgebraSpec:
    """A finite-dimensional Lie algebra over Q given by structure constants.

    c[i][j][k] is the coefficient of x_k in [x_i, x_j].
    """

    dim: int
    basis_names: tuple
    c: tuple

    @cached_property
    def bracket_rows(self):
        """Sparse view: rows[i][j] = ((k, c_ijk), ...) over nonzero entries."""
        rows = {}
        for i in range(self.dim):
            row = {}
            for j in range(self.dim):
                ent = tuple((k, v) for k, v in enumerate(self.c[i][j]) if v)
                if ent:
                    row[j] = ent
            if row:
                rows[i] = row
        return rows

    @cached_property
    def is_abelian(self) -> bool:
        return not self.bracket_rows

    def name_index(self, name: str) -> int:
        return self.basis_names.index(name)

    def validate(self):
        d = self.dim
        c = self.c
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if c[i][j][k] != -c[j][i][k]:
                        raise AntisymmetryViolation(
                            f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]",
                            triple=(i, j, k),
                        )
        # [x_i,[x_j,x_l]] + [x_j,[x_l,x_i]] + [x_l,[x_i,x_j]] = 0
        for i in range(d):
            for j in range(d):
                for l in range(d):
                    for k in range(d):
                        s = ZERO
                        for m in range(d):
                            s += c[j][l][m] * c[i][m][k]
                            s += c[l][i][m] * c[j][m][k]
                            s += c[i][j][m] * c[l][m][k]
                        if s != 0:
                            raise JacobiViolation(
                                f"Jacobi fails on basis triple ({i},{j},{l})",
                                triple=(i, j, l),
                            )
        return self


def _parse_rat(text, where: str):
    try:
        return rat(text)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{where}: {exc}") from exc


def load_lie_algebra(source) -> "tuple[LieAlgebraSpec, RMatrix | None]":
    """Parse and validate a Lie algebra input.

    ``source`` may be a path, a JSON string, or an already-decoded dict
    with fields ``dim``, ``basis``, ``brackets`` (entries
    [i, j, [[k, "p/q"], ...]]), and optionally ``r`` ([i, j, "p/q"]
    entries) plus ``kind``. Returns the validated algebra and the r
    matrix (None when absent).
    """
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if not text.lstrip().startswith("{"):
            try:
                with open(text) as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError(f"cannot read input file: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc

    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    try:
        dim = data["dim"]
    except KeyError:
        raise ParseError("missing field: dim") from None
    if not isinstance(dim, int) or dim < 0:
        raise ParseError(f"dim must be a nonnegative integer, got {dim!r}")
    basis = data.get("basis", [f"x{i}" for i in range(dim)])
    if len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise ParseError("basis must list one name per dimension")

    c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for ent in data.get("brackets", []):
        try:
            i, j, terms = ent
        except (TypeError, ValueError):
            raise ParseError(f"malformed bracket entry: {ent!r}") from None
        if not (0 <= i < dim and 0 <= j < dim):
            raise ParseError(f"bracket indices out of range: {ent!r}")
        for term in terms:
            try:
                k, coeff = term
            except (TypeError, ValueError):
                raise ParseError(f"malformed bracket term: {term!r}") from None
            if not 0 <= k < dim:
                raise ParseError(f"bracket target index out of range: {term!r}")
            val = _parse_rat(coeff, f"bracket [{i},{j}]")
            c[i][j][k] += val
            c[j][i][k] -= val

    alg = LieAlgebraSpec(
        dim=dim,
        basis_names=tuple(basis),
        c=tuple(tuple(tuple(row) for row in plane) for plane in c),
    ).validate()

    rmat = None
    if "r" in data:
        entries = [[ZERO] * dim for _ in range(dim)]
        for ent in data["r"]:
            try:
                i, j, coeff = ent
            except (TypeError, ValueError):
                raise ParseError(f"malformed r entry: {ent!r}") from None
            if not (0 <= i < dim and 0 <= j < dim):
                raise ParseError(f"r indices out of range: {ent!r}")
            entries[i][j] += _parse_rat(coeff, f"r[{i},{j}]")
        kind = data.get("kind")
        if kind is None:
            skew = all(
                entries[i][j] == -entries[j][i]
                for i in range(dim)
                for j in range(dim)
            )
            kind = "antisymmetric-coboundary" if skew else "quasitriangular-candidate"
        if kind not in ("antisymmetric-coboundary", "quasitriangular-candidate"):
            raise ParseError(f"unknown kind: {kind!r}")
        rmat = RMatrix(alg, tuple(tuple(row) for row in entries), kind)
        rmat.validate()

    return alg, rmat


@dataclass(frozen=True)
class RMatrix:
    """An element of g(x)g: a candidate r (antisymmetric) or r' (no symmetry)."""

    alg: LieAlgebraSpec
    entries: tuple
    kind: str = "antisymmetric-coboundary"

    def validate(self):
        d = self.alg.dim
        if self.kind == "antisymmetric-coboundary":
            for i in range(d):
                for j in range(d):
                    if self.entries[i][j] != -self.entries[j][i]:
                        raise AntisymmetryViolation(
                            f"r[{i}][{j}] != -r[{j}][{i}]", pair=(i, j)
                        )
        return self

    def to_series(self, N: int = 2) -> "FormalSeriesTensor":
        d = self.alg.dim
        items = {}
        for i in range(d):
            for j in range(d):
                v = self.entries[i][j]
                if v:
                    items[(_unit(d, i), _unit(d, j))] = v
        return FormalSeriesTensor.make(self.alg, 2, N, items)

    def transpose(self) -> "RMatrix":
        d = self.alg.dim
        return RMatrix(
            self.alg,
            tuple(tuple(self.entries[j][i] for j in range(d)) for i in range(d)),
            self.kind,
        )


def _unit(dim: int, i: int) -> Vec:
    return tuple(1 if t == i else 0 for t in range(dim))


def key_degree(key: Key) -> int:
    return sum(sum(v) for v in key)


def slot_degrees(key: Key) -> tuple:
    return tuple(sum(v) for v in key)


@dataclass(frozen=True, eq=False)
class FormalSeriesTensor:
    """Sparse element of S(g)^{(x)k} truncated at total degree N."""

    alg: LieAlgebraSpec
    k: int
    N: int
    coeffs: dict

    @classmethod
    def make(cls, alg, k, N, items) -> "FormalSeriesTensor":
        clean = {}
        for key, val in items.items():
            if val and key_degree(key) <= N:
                clean[key] = val
        return cls(alg, k, N, clean)

    @classmethod
    def zero(cls, alg, k, N) -> "FormalSeriesTensor":
        return cls(alg, k, N, {})

    @classmethod
    def generator(cls, alg, i, N, k=1, slot=0) -> "FormalSeriesTensor":
        """The basis element x_i placed in one slot (units elsewhere)."""
        zero = tuple([0] * alg.dim)
        key = tuple(_unit(alg.dim, i) if s == slot else zero for s in range(k))
        return cls(alg, k, N, {key: QQ(1)})

    @cached_property
    def degree_buckets(self):
        buckets = {}
        for key, val in self.coeffs.items():
            buckets.setdefault(key_degree(key), []).append((key, val))
        return buckets

    # ---- predicates ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def in_m_tensor(self) -> bool:
        """Every slot of every key has degree >= 1 (element of m^{(x)k})."""
        return all(
            all(sum(v) >= 1 for v in key) for key in self.coeffs
        )

    def in_m_squared(self) -> bool:
        """Every key has total degree >= 2 (element of m^2)."""
        return all(key_degree(key) >= 2 for key in self.coeffs)

    def min_degree(self) -> int:
        """N+1 when zero, else the smallest total degree present."""
        return min(self.degree_buckets, default=self.N + 1)

    # ---- linear structure -------------------------------------------

    def __add__(self, other):
        self._check_pair(other)
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            s = out.get(key, ZERO) + val
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return FormalSeriesTensor(self.alg, self.k, self.N, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, scalar) -> "FormalSeriesTensor":
        scalar = QQ(scalar)
        if not scalar:
            return FormalSeriesTensor(self.alg, self.k, self.N, {})
        return FormalSeriesTensor(
            self.alg, self.k, self.N,
            {key: val * scalar for key, val in self.coeffs.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, FormalSeriesTensor):
            return NotImplemented
        return (
            self.alg == other.alg
            and self.k == other.k
            and self.coeffs == other.coeffs
        )

    def homogeneous_part(self, degree: int) -> "FormalSeriesTensor":
        items = dict(self.degree_buckets.get(degree, ()))
        return FormalSeriesTensor(self.alg, self.k, self.N, items)

    def truncate(self, N: int) -> "FormalSeriesTensor":
        out = {}
        for deg, items in self.degree_buckets.items():
            if deg <= N:
                out.update(items)
        return FormalSeriesTensor(self.alg, self.k, N, out)

    def multidegree_part(self, degs) -> "FormalSeriesTensor":
        degs = tuple(degs)
        items = {
            key: val
            for key, val in self.coeffs.items()
            if slot_degrees(key) == degs
        }
        return FormalSeriesTensor(self.alg, self.k, self.N, items)

    def _check_pair(self, other, op="combine"):
        if self.k != other.k:
            raise SlotMismatch(f"cannot {op} {self.k}-slot and {other.k}-slot tensors")
        if self.N != other.N:
            raise TruncationMismatch(
                f"cannot {op} truncations N={self.N} and N={other.N}"
            )
        if self.alg != other.alg:
            raise SlotMismatch("operands live over different Lie algebras")

    def sorted_items(self):
        return sorted(self.coeffs.items())

    def __repr__(self):
        n = len(self.coeffs)
        return f"FormalSeriesTensor(k={self.k}, N={self.N}, {n} terms)"

    def pretty(self, max_terms=12) -> str:
        names = self.alg.basis_names
        bits = []
        for key, val in self.sorted_items()[:max_terms]:
            slots = []
            for vec in key:
                mono = "*".join(
                    f"{names[i]}^{e}" if e > 1 else names[i]
                    for i, e in enumerate(vec)
                    if e
                )
                slots.append(mono or "1")
            bits.append(f"({rat_str(val)})·" + "⊗".join(slots))
        if len(self.coeffs) > max_terms:
            bits.append(f"... ({len(self.coeffs)} terms)")
        return " + ".join(bits) if bits else "0"


def multiply(f: FormalSeriesTensor, g: FormalSeriesTensor) -> FormalSeriesTensor:
    """Commutative product, slot-wise, truncated at N."""
    f._check_pair(g, "multiply")
    N = f.N
    k = f.k
    out = {}
    for df, items_f in f.degree_buckets.items():
        for dg, items_g in g.degree_buckets.items():
            if df + dg > N:
                continue
            for key_f, cf in items_f:
                for key_g, cg in items_g:
                    nk = tuple(
                        tuple(a + b for a, b in zip(key_f[s], key_g[s]))
                        for s in range(k)
                    )
                    val = out.get(nk)
                    prod = cf * cg
                    out[nk] = prod if val is None else val + prod
    return FormalSeriesTensor.make(f.alg, k, N, out)


def poisson_bracket(f: FormalSeriesTensor, g: FormalSeriesTensor) -> FormalSeriesTensor:
    """Slot-wise Lie-Poisson bracket on S(g)^{(x)k}, truncated at N.

    On generators {x_i, x_j} = [x_i, x_j]; extended by Leibniz in each
    slot; different slots bracket independently (product structure).
    """
    f._check_pair(g, "bracket")
    alg = f.alg
    rows = alg.bracket_rows
    if not rows:
        return FormalSeriesTensor.zero(alg, f.k, f.N)
    N = f.N
    k = f.k
    out = {}
    for df, items_f in f.degree_buckets.items():
        for dg, items_g in g.degree_buckets.items():
            if df + dg - 1 > N:
                continue
            for key_f, cf in items_f:
                for key_g, cg in items_g:
                    c0 = cf * cg
                    base = tuple(
                        tuple(a + b for a, b in zip(key_f[s], key_g[s]))
                        for s in range(k)
                    )
                    for s in range(k):
                        af = key_f[s]
                        ag = key_g[s]
                        for i, ai in enumerate(af):
                            if not ai:
                                continue
                            row = rows.get(i)
                            if row is None:
                                continue
                            for j, aj in enumerate(ag):
                                if not aj:
                                    continue
                                ent = row.get(j)
                                if ent is None:
                                    continue
                                cc = c0 * (ai * aj)
                                for tgt, ctgt in ent:
                                    vec = list(base[s])
                                    vec[i] -= 1
                                    vec[j] -= 1
                                    vec[tgt] += 1
                                    nk = base[:s] + (tuple(vec),) + base[s + 1:]
                                    val = out.get(nk)
                                    term = cc * ctgt
                                    out[nk] = term if val is None else val + term
    return FormalSeriesTensor.make(alg, k, N, out)


def g_action(i: int, f: FormalSeriesTensor) -> FormalSeriesTensor:
    """The basis element x_i acting by ad(x_i), extended as a derivation."""
    alg = f.alg
    if not 0 <= i < alg.dim:
        raise IndexOutOfRange(f"basis index {i} out of range for dim {alg.dim}")
    rows = alg.bracket_rows.get(i)
    if rows is None:
        return FormalSeriesTensor.zero(alg, f.k, f.N)
    out = {}
    for key, cf in f.coeffs.items():
        for s, vec in enumerate(key):
            for j, aj in enumerate(vec):
                if not aj:
                    continue
                ent = rows.get(j)
                if ent is None:
                    continue
                cc = cf * aj
                for tgt, ctgt in ent:
                    new = list(vec)
                    new[j] -= 1
                    new[tgt] += 1
                    nk = key[:s] + (tuple(new),) + key[s + 1:]
                    val = out.get(nk)
                    term = cc * ctgt
                    out[nk] = term if val is None else val + term
    return FormalSeriesTensor.make(alg, f.k, f.N, out)


def is_invariant(f: FormalSeriesTensor) -> bool:
    return all(g_action(i, f).is_zero() for i in range(f.alg.dim))


def _splits(vec: Vec, parts: int):
    """All ways to write vec as an ordered sum of `parts` exponent vectors,
    with the multinomial weight prod_i a_i!/(prod_t parts_t,i!)."""
    if parts == 1:
        yield (vec,), 1
        return
    # combine per-coordinate compositions
    for combo in itertools.product(*_coordinate_splits(vec, parts)):
        weight = 1
        cols = []
        for (comp, w) in combo:
            weight *= w
            cols.append(comp)
        vecs = tuple(tuple(col[t] for col in cols) for t in range(parts))
        yield vecs, weight


def _coordinate_splits(vec: Vec, parts: int):
    """Per coordinate: list of (composition, multinomial coefficient)."""
    out = []
    for a in vec:
        comps = []
        for comp in _compositions(a, parts):
            w = factorial(a)
            for part in comp:
                w //= factorial(part)
            comps.append((comp, w))
        out.append(comps)
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def coproduct_insert(f: FormalSeriesTensor, blocks, n: int = None) -> FormalSeriesTensor:
    """f^{I_1,...,I_m}: distribute each slot of f over its block of target
    slots with the cocommutative coproduct (x primitive), unit-filling
    uncovered slots. Blocks use 0-based target indices; n defaults to
    max index + 1."""
    blocks = [tuple(b) for b in blocks]
    if len(blocks) != f.k:
        raise SlotMismatch(
            f"{f.k}-slot tensor needs {f.k} blocks, got {len(blocks)}"
        )
    seen = set()
    for b in blocks:
        if not b:
            raise BlockOverlap("empty block")
        for t in b:
            if t in seen:
                raise BlockOverlap(f"target slot {t} appears in two blocks")
            seen.add(t)
    if n is None:
        n = max(seen) + 1 if seen else 0
    for t in seen:
        if not 0 <= t < n:
            raise IndexOutOfRange(f"target slot {t} outside 0..{n - 1}")

    dim = f.alg.dim
    zero_vec = tuple([0] * dim)
    out = {}
    for key, cf in f.coeffs.items():
        # per original slot: distributions of its exponent vector over the block
        per_slot = []
        for s, block in enumerate(blocks):
            per_slot.append(list(_splits(key[s], len(block))))
        for combo in itertools.product(*per_slot):
            weight = cf
            new_key = [zero_vec] * n
            for block, (vecs, w) in zip(blocks, combo):
                weight *= w
                for t, v in zip(block, vecs):
                    new_key[t] = v
            nk = tuple(new_key)
            val = out.get(nk)
            out[nk] = weight if val is None else val + weight
    return FormalSeriesTensor.make(f.alg, n, f.N, out)


_SIGN_CACHE = {}


def _permutation_signs(k: int):
    cached = _SIGN_CACHE.get(k)
    if cached is None:
        cached = []
        for perm in itertools.permutations(range(k)):
            inv = 0
            for a in range(k):
                for b in range(a + 1, k):
                    if perm[a] > perm[b]:
                        inv += 1
            cached.append((perm, -1 if inv % 2 else 1))
        _SIGN_CACHE[k] = cached
    return cached


def alt_project(f: FormalSeriesTensor) -> FormalSeriesTensor:
    """Extract the multidegree-(1,...,1) component and apply the idempotent
    antisymmetrization (1/k!) sum_sigma sign(sigma) sigma onto wedge^k(g)."""
    k = f.k
    dim = f.alg.dim
    inv_fact = QQ(1) / factorial(k)
    out = {}
    for key, val in f.coeffs.items():
        if slot_degrees(key) != (1,) * k:
            continue
        idx = tuple(vec.index(1) for vec in key)
        base = val * inv_fact
        for perm, sign in _permutation_signs(k):
            pidx = tuple(idx[p] for p in perm)
            nk = tuple(_unit(dim, i) for i in pidx)
            term = base if sign > 0 else -base
            cur = out.get(nk)
            out[nk] = term if cur is None else cur + term
    return FormalSeriesTensor.make(f.alg, k, k, out)


def cyb(r: RMatrix) -> FormalSeriesTensor:
    """[r^{12},r^{13}] + [r^{12},r^{23}] + [r^{13},r^{23}] in g^{(x)3}.

    For tensors of pure degree (1,1) the slot-wise Poisson bracket of the
    insertions coincides with the algebraic bracket on g^{(x)3}, so this
    reuses poisson_bracket at N=3 with no truncation loss.
    """
    if r.kind != "antisymmetric-coboundary":
        raise NotAntisymmetric("cyb needs an antisymmetric r")
    d = r.alg.dim
    for i in range(d):
        for j in range(d):
            if r.entries[i][j] != -r.entries[j][i]:
                raise NotAntisymmetric(f"r[{i}][{j}] != -r[{j}][{i}]")
    rs = r.to_series(3)
    r12 = coproduct_insert(rs, ((0,), (1,)), 3)
    r13 = coproduct_insert(rs, ((0,), (2,)), 3)
    r23 = coproduct_insert(rs, ((1,), (2,)), 3)
    return (
        poisson_bracket(r12, r13)
        + poisson_bracket(r12, r23)
        + poisson_bracket(r13, r23)
    )
