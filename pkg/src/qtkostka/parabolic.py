"""The polynomial part of the parabolic Hecke module at explicit rank n.

Elements are finite sums sum_lambda c_lambda M^lambda with composition keys
(trimmed tuples, l(key) <= n) and CoeffPoly coefficients.  The generator
action in lambda coordinates is

    lambda_i < lambda_{i+1}:  H_i M^lambda = M^{s_i lambda}
    lambda_i = lambda_{i+1}:  H_i M^lambda = v^{-1} M^lambda
    lambda_i > lambda_{i+1}:  H_i M^lambda = M^{s_i lambda} + (v^{-1}-v) M^lambda

together with omega(M^lambda) = M^{(lambda_2,...,lambda_n,lambda_1+1)}.  The
inverse generator is H_i + (v - v^{-1}) by the quadratic relation.

The operator words Phi_m = H_m...H_{n-1} omega, Phibar_m with inverse factors,
and Z_i = H_i^{-1}...H_{n-1}^{-1} omega H_1...H_{i-1} are always applied
right to left (rightmost factor first).

The bar involution d is semilinear over the bar of coefficients and acts on
basis elements through the word d(M^lambda) = Phibar_{c_k}...Phibar_{c_1}(M^0)
over the column word of lambda; rows are cached per (rank, lambda) and built
incrementally along the star chain, one Phibar application per new row.
Caches are plain dicts (atomic get/insert under the GIL): safe for concurrent
reads with exclusive inserts.
"""

from __future__ import annotations

from .coeffs import CoeffPoly, ONE, V, VINV, V_MINUS_VINV
from .compositions import (
    canonicalize,
    lambda_star,
    length,
    omega_star,
    pad,
    parse_composition,
    format_composition,
)

_VINV_MINUS_V = -V_MINUS_VINV

# (lambda, i) -> (case, s_i lambda) with case = sign(lambda_{i+1} - lambda_i);
# (lambda, n) -> omega*(lambda).  Pure key surgery, memoized for the hot loops.
_SWAP_MEMO = {}
_OMEGA_MEMO = {}


def _swap_entry(lam, i):
    a = lam[i - 1] if i - 1 < len(lam) else 0
    b = lam[i] if i < len(lam) else 0
    if a == b:
        return (0, lam)
    p = pad(lam, max(len(lam), i + 1))
    swapped = canonicalize(p[: i - 1] + (b, a) + p[i + 1 :])
    return ((1 if a < b else -1), swapped)


class ModuleElement:
    """A finite CoeffPoly-combination of standard basis elements at rank n."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        if rank < 2:
            raise ValueError("rank must be at least 2")
        self.rank = rank
        self.terms = {}
        if terms:
            for lam, c in terms.items():
                if c:
                    lam = canonicalize(lam)
                    if len(lam) > rank:
                        raise ValueError("key %r too long for rank %d" % (lam, rank))
                    self.terms[lam] = c

    @staticmethod
    def zero(rank):
        return ModuleElement(rank)

    @staticmethod
    def basis(lam, rank):
        lam = canonicalize(lam)
        if len(lam) > rank:
            raise ValueError("key %r too long for rank %d" % (lam, rank))
        out = ModuleElement.__new__(ModuleElement)
        out.rank = rank
        out.terms = {lam: ONE}
        return out

    def _raw(self, terms):
        out = ModuleElement.__new__(ModuleElement)
        out.rank = self.rank
        out.terms = terms
        return out

    # -- linear structure -----------------------------------------------------

    def __add__(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        terms = dict(self.terms)
        for lam, c in other.terms.items():
            s = terms.get(lam)
            s = c if s is None else s + c
            if s:
                terms[lam] = s
            elif lam in terms:
                del terms[lam]
        return self._raw(terms)

    def __sub__(self, other):
        return self + other.scale(CoeffPoly.integer(-1))

    def scale(self, c):
        if c.is_zero():
            return ModuleElement(self.rank)
        return self._raw({lam: x * c for lam, x in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, ModuleElement)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, lam):
        return self.terms.get(canonicalize(lam), CoeffPoly.zero())

    def support(self):
        return set(self.terms)

    def degree(self):
        """Common weight of the support; None for 0, error if inhomogeneous."""
        degs = {sum(lam) for lam in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop()

    def bar_coeffs(self):
        """Apply the coefficient bar involution, leaving basis keys alone."""
        return self._raw({lam: c.bar() for lam, c in self.terms.items()})

    # -- generator action -------------------------------------------------------

    def hi(self, i):
        """Apply the Hecke generator H_i, 1 <= i <= rank-1."""
        n = self.rank
        if not 1 <= i <= n - 1:
            raise ValueError("index %d out of range for rank %d" % (i, n))
        acc = {}

        def add(lam, c):
            s = acc.get(lam)
            s = c if s is None else s + c
            if s:
                acc[lam] = s
            elif lam in acc:
                del acc[lam]

        memo = _SWAP_MEMO
        for lam, c in self.terms.items():
            key = (lam, i)
            hit = memo.get(key)
            if hit is None:
                hit = memo[key] = _swap_entry(lam, i)
            case, swapped = hit
            if case == 0:
                add(lam, c * VINV)
            else:
                add(swapped, c)
                if case < 0:
                    add(lam, c * _VINV_MINUS_V)
        return self._raw(acc)

    def hi_inv(self, i):
        """Apply H_i^{-1} = H_i + (v - v^{-1}).

        Folded per case: an equal pair picks up v, an ascent keeps the
        (v - v^{-1}) echo, and a descent is a plain swap.
        """
        n = self.rank
        if not 1 <= i <= n - 1:
            raise ValueError("index %d out of range for rank %d" % (i, n))
        acc = {}

        def add(lam, c):
            s = acc.get(lam)
            s = c if s is None else s + c
            if s:
                acc[lam] = s
            elif lam in acc:
                del acc[lam]

        memo = _SWAP_MEMO
        for lam, c in self.terms.items():
            key = (lam, i)
            hit = memo.get(key)
            if hit is None:
                hit = memo[key] = _swap_entry(lam, i)
            case, swapped = hit
            if case == 0:
                add(lam, c * V)
            else:
                add(swapped, c)
                if case > 0:
                    add(lam, c * V_MINUS_VINV)
        return self._raw(acc)

    def omega(self):
        """The degree-raising rotation M^lambda -> M^{omega*(lambda)}."""
        n = self.rank
        memo = _OMEGA_MEMO
        acc = {}
        for lam, c in self.terms.items():
            key = (lam, n)
            img = memo.get(key)
            if img is None:
                img = memo[key] = omega_star(lam, n)
            acc[img] = c
        return self._raw(acc)

    def phi_op(self, m):
        """Phi_m = H_m ... H_{n-1} omega, omega applied first."""
        n = self.rank
        if not 1 <= m <= n:
            raise ValueError("m out of range")
        x = self.omega()
        for i in range(n - 1, m - 1, -1):
            x = x.hi(i)
        return x

    def phibar_op(self, m):
        """Phibar_m = H_m^{-1} ... H_{n-1}^{-1} omega, omega applied first."""
        n = self.rank
        if not 1 <= m <= n:
            raise ValueError("m out of range")
        x = self.omega()
        for i in range(n - 1, m - 1, -1):
            x = x.hi_inv(i)
        return x

    def z_op(self, i):
        """Z_i = H_i^{-1} ... H_{n-1}^{-1} omega H_1 ... H_{i-1}, rightmost first."""
        n = self.rank
        if not 1 <= i <= n:
            raise ValueError("index out of range")
        x = self
        for j in range(i - 1, 0, -1):
            x = x.hi(j)
        x = x.omega()
        for j in range(n - 1, i - 1, -1):
            x = x.hi_inv(j)
        return x

    def project(self):
        """Rank-lowering projection: kill lambda_n > 0, keep the rest at rank n-1.

        Rank 2 is the floor.
        """
        n = self.rank
        if n < 3:
            raise ValueError("cannot project below rank 2")
        out = ModuleElement.__new__(ModuleElement)
        out.rank = n - 1
        out.terms = {lam: c for lam, c in self.terms.items() if len(lam) < n}
        return out

    # -- serialization ------------------------------------------------------------

    def to_json(self):
        return {
            "rank": self.rank,
            "terms": [
                {"lambda": format_composition(lam), "coef": c.to_json()}
                for lam, c in sorted(self.terms.items())
            ],
        }

    @staticmethod
    def from_json(data):
        return ModuleElement(
            data["rank"],
            {
                parse_composition(t["lambda"]): CoeffPoly.from_json(t["coef"])
                for t in data["terms"]
            },
        )

    def pretty(self):
        if not self.terms:
            return "0"
        use_t = all(
            a % 2 == 0 for c in self.terms.values() for (a, _) in c.terms
        )
        chunks = []
        for lam, c in sorted(
            self.terms.items(), key=lambda kv: pad(kv[0], self.rank), reverse=True
        ):
            name = "M^{(%s)}" % format_composition(lam)
            if lam == ():
                body = c.pretty(use_t)
            elif c == ONE:
                body = name
            else:
                cs = c.pretty(use_t)
                if len(c.terms) > 1 or cs.startswith("-"):
                    cs = "(%s)" % cs
                body = "%s*%s" % (cs, name)
            chunks.append(body)
        return " + ".join(chunks)

    def __repr__(self):
        return "ModuleElement(rank=%d, %s)" % (self.rank, self.pretty())


# -- monomial images under the standard embedding --------------------------------

_PSI_CACHE = {}


def psi_monomial(lam, n):
    """Image of the z-monomial z^lambda: Z_1^{lambda_1}...Z_n^{lambda_n}(M^0)."""
    lam = canonicalize(lam)
    if len(lam) > n:
        raise ValueError("rank %d too small for %r" % (n, lam))
    key = (n, lam)
    hit = _PSI_CACHE.get(key)
    if hit is not None:
        return hit
    if not lam:
        result = ModuleElement.basis((), n)
    else:
        k = next(i for i, x in enumerate(lam) if x > 0)
        smaller = canonicalize(lam[:k] + (lam[k] - 1,) + lam[k + 1 :])
        result = psi_monomial(smaller, n).z_op(k + 1)
    _PSI_CACHE[key] = result
    return result


# -- the bar involution -----------------------------------------------------------

_D_CACHE = {}


def _d_basis_word(lam, n):
    """d(M^lambda) straight from the Phibar word over the column word."""
    if not lam:
        return ModuleElement.basis((), n)
    star, m, _ = lambda_star(lam)
    return d_basis(star, n).phibar_op(m)


def d_basis(lam, n):
    """d(M^lambda), cached per (rank, lambda).

    For an ascent kappa_i < kappa_{i+1} the standard basis transforms without
    echo, M^{s_i kappa} = H_i M^kappa, so by semilinearity the row of s_i kappa
    is H_i^{-1} applied to the row of kappa.  Rows therefore propagate by
    single inverse generators from the weakly increasing arrangement of the
    entries, which is the only key still built from its Phibar column word.
    The word route survives as _d_basis_word so tests can cross-check the two.
    """
    lam = canonicalize(lam)
    if len(lam) > n:
        raise ValueError("rank %d too small for %r" % (n, lam))
    key = (n, lam)
    hit = _D_CACHE.get(key)
    if hit is not None:
        return hit
    stack = [lam]
    while stack:
        cur = stack[-1]
        if (n, cur) in _D_CACHE:
            stack.pop()
            continue
        p = pad(cur, n)
        i = next((k + 1 for k in range(n - 1) if p[k] > p[k + 1]), None)
        if i is None:
            _D_CACHE[(n, cur)] = _d_basis_word(cur, n)
            stack.pop()
            continue
        prev = canonicalize(p[: i - 1] + (p[i], p[i - 1]) + p[i + 1 :])
        prow = _D_CACHE.get((n, prev))
        if prow is None:
            stack.append(prev)
            continue
        _D_CACHE[(n, cur)] = prow.hi_inv(i)
        stack.pop()
    return _D_CACHE[key]


def bar_d(x):
    """The semilinear bar involution of the module."""
    acc = {}
    for lam, c in x.terms.items():
        cb = c.bar()
        for nu, r in d_basis(lam, x.rank).terms.items():
            prod = r * cb
            s = acc.get(nu)
            s = prod if s is None else s + prod
            if s:
                acc[nu] = s
            elif nu in acc:
                del acc[nu]
    return ModuleElement.zero(x.rank)._raw(acc)


def clear_caches():
    _PSI_CACHE.clear()
    _D_CACHE.clear()
    _SWAP_MEMO.clear()
    _OMEGA_MEMO.clear()
