"""The BCH group structure on m^2 and star-conjugation.

f * g = f + g + (1/2){f,g} + ... evaluated with the slot-wise Poisson
bracket. Each letter lives in m^2, so an L-letter bracket word has total
degree >= L+1 and only words with <= N-1 letters survive truncation at N:
the series is finite and exact.

Two evaluation paths produce the terms:
  - a frozen table of nested-commutator coefficients for words of <= 7
    letters (fast path, covers N <= 8);
  - for longer words, the Dynkin projection of the exact associative
    log(exp x exp y) computed in the truncated free algebra Q<x,y>.
The paths are cross-checked exactly in the test suite.
"""
from __future__ import annotations

from math import factorial
from threading import Lock

from ._rat import QQ
from .core import FormalSeriesTensor, poisson_bracket
from .errors import NotInMSquared, SlotMismatch

# Nested-commutator table: (coefficient, word) with word over {0,1},
# 0 = first argument, 1 = second; word (a,b,c) means {a,{b,c}}.
# Orders 6 and 7 follow Hofstaetter's exact BCH tables (the widely
# reprinted order-6 expression fails the symmetry test and is not used).
_BCH_TABLE = [
    (QQ(1, 2), (0, 1)),
    (QQ(1, 12), (0, 0, 1)),
    (QQ(1, 12), (1, 1, 0)),
    (QQ(-1, 24), (1, 0, 0, 1)),
    (QQ(-1, 720), (1, 1, 1, 1, 0)),
    (QQ(-1, 720), (0, 0, 0, 0, 1)),
    (QQ(1, 360), (0, 1, 1, 1, 0)),
    (QQ(1, 360), (1, 0, 0, 0, 1)),
    (QQ(1, 120), (1, 0, 1, 0, 1)),
    (QQ(1, 120), (0, 1, 0, 1, 0)),
    (QQ(-1, 1440), (1, 0, 0, 0, 1, 0)),
    (QQ(1, 720), (1, 1, 0, 0, 1, 0)),
    (QQ(-1, 240), (1, 0, 1, 0, 1, 0)),
    (QQ(1, 1440), (1, 1, 1, 0, 1, 0)),
    (QQ(-1, 720), (1, 0, 1, 1, 1, 0)),
    (QQ(-1, 30240), (0, 0, 0, 0, 0, 1, 0)),
    (QQ(1, 10080), (1, 0, 0, 0, 0, 1, 0)),
    (QQ(-1, 10080), (0, 1, 0, 0, 0, 1, 0)),
    (QQ(-1, 3360), (1, 1, 0, 0, 0, 1, 0)),
    (QQ(-1, 5040), (0, 0, 1, 0, 0, 1, 0)),
    (QQ(1, 1260), (1, 0, 1, 0, 0, 1, 0)),
    (QQ(1, 7560), (0, 1, 1, 0, 0, 1, 0)),
    (QQ(-1, 7560), (1, 1, 1, 0, 0, 1, 0)),
    (QQ(1, 10080), (0, 0, 1, 1, 0, 1, 0)),
    (QQ(-1, 1008), (0, 1, 0, 1, 0, 1, 0)),
    (QQ(1, 3360), (1, 1, 0, 1, 0, 1, 0)),
    (QQ(1, 1680), (1, 0, 1, 1, 0, 1, 0)),
    (QQ(-1, 3360), (0, 1, 1, 1, 0, 1, 0)),
    (QQ(-1, 10080), (1, 1, 1, 1, 0, 1, 0)),
    (QQ(-1, 5040), (0, 1, 0, 1, 1, 1, 0)),
    (QQ(1, 2520), (1, 1, 0, 1, 1, 1, 0)),
    (QQ(-1, 10080), (0, 1, 1, 1, 1, 1, 0)),
    (QQ(1, 30240), (1, 1, 1, 1, 1, 1, 0)),
]
_TABLE_MAX = 7

_dynkin_cache = {}
_dynkin_lock = Lock()


def _free_mul(a: dict, b: dict, max_deg: int) -> dict:
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            if len(wa) + len(wb) > max_deg:
                continue
            w = wa + wb
            cur = out.get(w)
            prod = ca * cb
            out[w] = prod if cur is None else cur + prod
    return {w: c for w, c in out.items() if c}


def assoc_log_exp_exp(max_deg: int) -> dict:
    """log(exp x exp y) in Q<x,y> truncated beyond max_deg, as a map
    word-over-{0,1} -> coefficient. Exact by finite series arithmetic."""
    # exp(x)exp(y) - 1: words x^a y^b, (a,b) != (0,0)
    u = {}
    for a in range(max_deg + 1):
        for b in range(max_deg + 1 - a):
            if a + b == 0:
                continue
            u[(0,) * a + (1,) * b] = QQ(1, factorial(a) * factorial(b))
    out = {}
    power = {(): QQ(1)}
    for m in range(1, max_deg + 1):
        power = _free_mul(power, u, max_deg)
        sign = QQ(-1 if m % 2 == 0 else 1, m)
        for w, c in power.items():
            cur = out.get(w)
            term = sign * c
            out[w] = term if cur is None else cur + term
    return {w: c for w, c in out.items() if c}


def bch_terms(max_len: int):
    """(coefficient, nested-commutator word) pairs for all BCH terms of
    2..max_len letters. Table up to 7; Dynkin projection beyond."""
    terms = [(c, w) for c, w in _BCH_TABLE if 2 <= len(w) <= max_len]
    if max_len > _TABLE_MAX:
        with _dynkin_lock:
            extra = _dynkin_cache.get(max_len)
            if extra is None:
                log = assoc_log_exp_exp(max_len)
                extra = [
                    (c / len(w), w)
                    for w, c in log.items()
                    if len(w) > _TABLE_MAX
                ]
                _dynkin_cache[max_len] = extra
        terms += extra
    return terms


def _check_star_pair(f, g):
    if f.k != g.k:
        raise SlotMismatch(f"star needs equal slot counts, got {f.k} and {g.k}")
    if not f.in_m_squared() or not g.in_m_squared():
        raise NotInMSquared("star arguments must have every term of degree >= 2")


def _nested(word, f, g, cache):
    got = cache.get(word)
    if got is not None:
        return got
    if len(word) == 1:
        val = f if word[0] == 0 else g
    else:
        head = f if word[0] == 0 else g
        val = poisson_bracket(head, _nested(word[1:], f, g, cache))
    cache[word] = val
    return val


def star(f: FormalSeriesTensor, g: FormalSeriesTensor) -> FormalSeriesTensor:
    """The BCH product f * g on (m^2, { , }), truncated at N."""
    _check_star_pair(f, g)
    result = f + g
    cache = {}
    for coeff, word in bch_terms(max(f.N - 1, 1)):
        term = _nested(word, f, g, cache)
        if not term.is_zero():
            result = result + term.scale(coeff)
    return result


def negate(f: FormalSeriesTensor) -> FormalSeriesTensor:
    """The group inverse in (m^2, star)."""
    return -f


def star_conjugate(rho: FormalSeriesTensor, x: FormalSeriesTensor) -> FormalSeriesTensor:
    """exp({rho, .}) applied to x: sum_n (1/n!) {rho,{rho,...{rho,x}...}}.

    Agrees with rho * x * (-rho) when x is in m^2, and is an algebra and
    Poisson automorphism of the truncated O_{(g*)^k} in general.
    """
    if rho.k != x.k:
        raise SlotMismatch(f"conjugation needs equal slot counts, got {rho.k} and {x.k}")
    if not rho.in_m_squared():
        raise NotInMSquared("conjugator must have every term of degree >= 2")
    result = x
    acc = x
    n = 0
    while n <= x.N:
        n += 1
        acc = poisson_bracket(rho, acc)
        if acc.is_zero():
            break
        result = result + acc.scale(QQ(1, factorial(n)))
    return result
