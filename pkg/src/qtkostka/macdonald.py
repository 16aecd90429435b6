"""Nonsymmetric Macdonald polynomials in the parabolic module.

The renormalized polynomial E~_lambda is generated by the two-term recursion

    E~_lambda = (Phi_m - q^{lambda_m} t^a Phibar_m)(E~_{lambda*}),

one box at a time along the star chain.  Marked variants replace each factor
by a single word letter (Phi for an unmarked box, -Phibar for a marked one)
and decompose E~ as a q,t-weighted sum over all markings.  The engine also
provides the duality identity, the intertwiner relation and the symmetric
polynomial J_mu, all used as cross-checks downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffs import CoeffPoly, ConsistencyError, ONE, VINV, V
from .compositions import (
    MarkedDiagram,
    all_markings,
    arm,
    box_enumeration,
    boxes,
    canonicalize,
    lambda_star,
    leg,
    length,
    marking_stats,
    pad,
    sorting_data,
    weight,
)
from .parabolic import ModuleElement, bar_d
from .polyrep import ZPoly, from_module

_E_CACHE = {}
_MARKED_CACHE = {}

MINUS_ONE = CoeffPoly.integer(-1)


@dataclass(frozen=True)
class MacdonaldResult:
    lam: tuple
    rank: int
    element: ModuleElement
    normalization: CoeffPoly


def clear_caches():
    _E_CACHE.clear()
    _MARKED_CACHE.clear()


def _e_element(lam, n):
    key = (n, lam)
    hit = _E_CACHE.get(key)
    if hit is not None:
        return hit
    # materialize the star chain bottom-up so deep shapes do not recurse
    chain = []
    cur = lam
    while cur and (n, cur) not in _E_CACHE:
        chain.append(cur)
        cur = lambda_star(cur)[0]
    x = _E_CACHE.get((n, cur), None)
    if x is None:
        x = ModuleElement.basis((), n)
        _E_CACHE[(n, ())] = x
    for shape in reversed(chain):
        star, m, a = lambda_star(shape)
        factor = CoeffPoly.monomial(1, 2 * a, shape[m - 1])
        x = x.phi_op(m) - x.phibar_op(m).scale(factor)
        _E_CACHE[(n, shape)] = x
    return _E_CACHE[key]


def e_tilde(lam, n):
    """E~_lambda at rank n, with its leading coefficient."""
    lam = canonicalize(lam)
    if n < 2 or n < len(lam):
        raise ValueError("rank %d too small for %r" % (n, lam))
    el = _e_element(lam, n)
    return MacdonaldResult(lam, n, el, el.coefficient(lam))


def e_box_product(lam):
    """prod over boxes of (1 - q^{a+1} t^{l+1}), the leading coefficient."""
    out = ONE
    for s in boxes(lam):
        out = out * (ONE - CoeffPoly.monomial(1, 2 * (leg(lam, s) + 1), arm(lam, s) + 1))
    return out


def e_monomial(lam, n):
    """E~_lambda in z-coordinates; the z^lambda coefficient is certified."""
    res = e_tilde(lam, n)
    f = from_module(res.element)
    want = e_box_product(res.lam).shift(v_exp=sorting_data(res.lam, n).inversions)
    if f.coefficient(res.lam) != want:
        raise ConsistencyError(
            "leading z-coefficient of E~_%r at rank %d is off" % (res.lam, n)
        )
    return f


def marked_e(d, n):
    """Partial Macdonald polynomial of a marked diagram.

    Applies Phi_{c} per unmarked box and -Phibar_{c} per marked box, in box
    enumeration order (first box first).
    """
    shape = canonicalize(d.shape)
    if shape != d.shape:
        d = MarkedDiagram(shape, d.marked)
    if n < 2 or n < len(shape):
        raise ValueError("rank %d too small for %r" % (n, shape))
    key = (n, shape, d.marked)
    hit = _MARKED_CACHE.get(key)
    if hit is not None:
        return hit
    order, cols = box_enumeration(shape)
    x = ModuleElement.basis((), n)
    for s, c in zip(order, cols):
        if s in d.marked:
            x = x.phibar_op(c).scale(MINUS_ONE)
        else:
            x = x.phi_op(c)
    _MARKED_CACHE[key] = x
    return x


def marked_sum_check(lam, n, bound=8):
    """E~_lambda == sum over markings S of q^{A_S} t^{L_S} E~_{lambda,S}."""
    lam = canonicalize(lam)
    if weight(lam) > bound:
        raise ValueError("marking sum over 2^%d subsets refused" % weight(lam))
    total = ModuleElement.zero(n)
    for d in all_markings(lam):
        a, l = marking_stats(d)
        total = total + marked_e(d, n).scale(CoeffPoly.monomial(1, 2 * l, a))
    return total == e_tilde(lam, n).element


def duality_check(lam, n):
    """bar-d fixes E~_lambda up to the sign and monomial the theory predicts.

    The factor is (-1)^{|lambda|} q^{-A} t^{-B-l(w^lambda)} with
    A = sum binom(lambda_i+1, 2) and B = sum i*(sorted lambda)_i.
    """
    lam = canonicalize(lam)
    el = e_tilde(lam, n).element
    a_exp = sum(p * (p + 1) // 2 for p in lam)
    lam_plus = sorted((p for p in lam if p), reverse=True)
    b_exp = sum(i * p for i, p in enumerate(lam_plus, start=1))
    ell = sorting_data(lam, n).inversions
    sign = -1 if weight(lam) % 2 else 1
    factor = CoeffPoly.monomial(sign, -2 * (b_exp + ell), -a_exp)
    return bar_d(el) == el.scale(factor)


def intertwiner_check(mu, i, n):
    """Cross-multiplied Hecke intertwiner between E_mu and E_{s_i mu}:

        (1 - f) (H_i - v^{-1}) E_mu == (v - v^{-1} f) (E_{s_i mu} - E_mu)

    with f = q^{mu_i - mu_{i+1}} t^{w^mu(i+1) - w^mu(i)}.
    """
    mu = canonicalize(mu)
    p = pad(mu, max(len(mu), i + 1))
    if i < 1 or i >= n or len(p) > n:
        raise ValueError("index out of range")
    if p[i - 1] == p[i]:
        raise ValueError("s_i fixes mu; the intertwiner degenerates")
    smu = canonicalize(p[: i - 1] + (p[i], p[i - 1]) + p[i + 1 :])
    w = sorting_data(mu, n).images
    f = CoeffPoly.monomial(1, 2 * (w[i] - w[i - 1]), p[i - 1] - p[i])
    e_mu = e_tilde(mu, n).element.scale(CoeffPoly.v_power(-sorting_data(mu, n).inversions))
    e_smu = e_tilde(smu, n).element.scale(
        CoeffPoly.v_power(-sorting_data(smu, n).inversions)
    )
    lhs = (e_mu.hi(i) - e_mu.scale(VINV)).scale(ONE - f)
    rhs = (e_smu - e_mu).scale(V - VINV * f)
    return lhs == rhs


def symmetric_j(mu, n):
    """The symmetric Macdonald polynomial J_mu in z-coordinates.

    Symmetrizes E over the finite Weyl group along right weak order
    (F(w s_i) = H_i^{-1} F(w)), clears the stabilizer factors by exact
    division, and certifies both symmetry and the z^mu coefficient
    prod over boxes of (1 - q^a t^{l+1}).
    """
    mu = canonicalize(mu)
    if any(mu[k] < mu[k + 1] for k in range(len(mu) - 1)):
        raise ValueError("%r is not a partition" % (mu,))
    if n < 2 or n < len(mu):
        raise ValueError("rank too small")
    m = length(mu)
    mu_minus = canonicalize((0,) * (n - m) + tuple(sorted(mu)))
    e_base = e_tilde(mu_minus, n).element.scale(
        CoeffPoly.v_power(-sorting_data(mu_minus, n).inversions)
    )
    # BFS of S_n in right weak order, summing v^{l(w)} F(w)
    ident = tuple(range(1, n + 1))
    level = {ident: e_base}
    total = ModuleElement.zero(n)
    ell = 0
    while level:
        for x in level.values():
            total = total + x.scale(CoeffPoly.v_power(ell))
        nxt = {}
        for w, x in level.items():
            for i in range(1, n):
                if w[i - 1] < w[i]:
                    ws = w[: i - 1] + (w[i], w[i - 1]) + w[i + 1 :]
                    if ws not in nxt:
                        nxt[ws] = x.hi_inv(i)
        level = nxt
        ell += 1
    numer = total.scale((ONE - CoeffPoly.t_power(1)) ** n)
    denom = ONE
    for k, part in enumerate(mu, start=1):
        denom = denom * (ONE - CoeffPoly.monomial(1, 2 * (n - m + k), part))
    for a in range(1, n - m + 1):
        denom = denom * (ONE - CoeffPoly.t_power(a))
    j_mod = ModuleElement(n, {k: c.exact_div(denom) for k, c in numer.terms.items()})
    for i in range(1, n):
        if j_mod.hi(i) != j_mod.scale(VINV):
            raise ConsistencyError("J_%r is not symmetric at rank %d" % (mu, n))
    jz = from_module(j_mod)
    want = ONE
    for s in boxes(mu):
        want = want * (ONE - CoeffPoly.monomial(1, 2 * (leg(mu, s) + 1), arm(mu, s)))
    if jz.coefficient(mu) != want:
        raise ConsistencyError("J_%r has the wrong z^mu coefficient" % (mu,))
    return jz
