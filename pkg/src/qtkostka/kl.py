"""Kazhdan-Lusztig basis of the polynomial parabolic module.

M^_lambda is the unique bar-invariant element congruent to M^lambda modulo
terms with coefficients in vZ[v].  It is found by the standard triangular
solve: close the support under the involution's rows, walk it from the top
of the Bruhat order down, and at each node split the accumulated bar-skew
right-hand side into its positive part.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bruhat import min_rep_length
from .coeffs import CoeffPoly, ConsistencyError, ONE
from .compositions import canonicalize
from .parabolic import ModuleElement, bar_d, d_basis

_KL_CACHE = {}


@dataclass(frozen=True)
class KLElement:
    lam: tuple
    rank: int
    element: ModuleElement


def clear_caches():
    _KL_CACHE.clear()


def skew_positive_part(g):
    """The unique p in vZ[v] with p - bar(p) = g.

    g must be q-free and bar-skew (which forces a zero constant term);
    anything else means the involution rows upstream are broken.
    """
    if not g.is_q_free():
        raise ConsistencyError("skew part of a polynomial involving q: %r" % g)
    p = CoeffPoly({e: c for e, c in g.terms.items() if e[0] > 0})
    if p - p.bar() != g:
        raise ConsistencyError("not bar-skew: %r" % g)
    return p


def kl_element(lam, n):
    """The self-dual basis element on top of M^lambda at rank n."""
    lam = canonicalize(lam)
    if n < 2 or n < len(lam):
        raise ValueError("rank %d too small for %r" % (n, lam))
    key = (n, lam)
    hit = _KL_CACHE.get(key)
    if hit is not None:
        return hit

    # support closure under the involution rows
    rows = {}
    frontier = [lam]
    while frontier:
        mu = frontier.pop()
        if mu in rows:
            continue
        row = d_basis(mu, n)
        if row.coefficient(mu) != ONE:
            raise ConsistencyError("involution row of %r has a bad diagonal" % (mu,))
        rows[mu] = row
        frontier.extend(nu for nu in row.terms if nu not in rows)

    # solve top-down; triangularity of the rows is verified on the way
    ml = {mu: min_rep_length(mu, n) for mu in rows}
    order = sorted(rows, key=ml.__getitem__, reverse=True)
    if order[0] != lam:
        raise ConsistencyError("support closure of %r is not topped by it" % (lam,))
    coeffs = {lam: ONE}
    acc = {}
    for mu in order:
        if mu == lam:
            p = ONE
        else:
            rhs = acc.get(mu)
            if rhs is None:
                continue
            p = skew_positive_part(rhs)
            if not p:
                continue
            coeffs[mu] = p
        pbar = p.bar()
        for nu, r in rows[mu].terms.items():
            if nu == mu:
                continue
            if ml[nu] >= ml[mu]:
                raise ConsistencyError(
                    "involution row of %r is not strictly triangular at %r" % (mu, nu)
                )
            prev = acc.get(nu)
            c = pbar * r
            acc[nu] = c if prev is None else prev + c

    el = ModuleElement(n, coeffs)
    for mu, c in el.terms.items():
        if mu == lam:
            continue
        if not c.is_q_free() or c.min_v_exp() < 1:
            raise ConsistencyError(
                "KL coefficient of %r in M^_%r leaves vZ[v]: %r" % (mu, lam, c)
            )
    if bar_d(el) != el:
        raise ConsistencyError("M^_%r at rank %d is not self-dual" % (lam, n))
    result = KLElement(lam, n, el)
    _KL_CACHE[key] = result
    return result
