"""The rank-n polynomial representation in z-coordinates.

Monomials z^tau are keyed by trimmed exponent tuples.  The generator acts by
the Demazure-Lusztig formula

    H_i(f) = v^{-1} s_i(f) + (v - v^{-1}) z_{i+1} (f - s_i f) / (z_i - z_{i+1}),

the divided difference being an exact polynomial division.  The rotation
omega~ substitutes (q^{-1} z_n, z_1, ..., z_{n-1}) and the Cherednik operator
xi_i is the word v^{1-n} H_{i-1}...H_1 omega~^{-1} H_{n-1}^{-1}...H_i^{-1},
applied rightmost first.  Conversion to and from the parabolic module goes
through the monomial images psi(z^tau), which are unitriangular against the
standard basis along the Bruhat order.
"""

from __future__ import annotations

from .coeffs import CoeffPoly, ONE, VINV, V_MINUS_VINV
from .bruhat import min_rep_length
from .compositions import canonicalize, format_composition, pad, parse_composition, sorting_data
from .parabolic import ModuleElement, psi_monomial


class ZPoly:
    """Polynomial in z_1..z_n with CoeffPoly coefficients."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        if rank < 2:
            raise ValueError("rank must be at least 2")
        self.rank = rank
        self.terms = {}
        if terms:
            for tau, c in terms.items():
                if c:
                    tau = canonicalize(tau)
                    if len(tau) > rank:
                        raise ValueError("exponent %r too long for rank %d" % (tau, rank))
                    self.terms[tau] = c

    @staticmethod
    def zero(rank):
        return ZPoly(rank)

    @staticmethod
    def one(rank):
        return ZPoly(rank, {(): ONE})

    @staticmethod
    def monomial(tau, rank, coeff=ONE):
        return ZPoly(rank, {tuple(tau): coeff})

    def _raw(self, terms):
        out = ZPoly.__new__(ZPoly)
        out.rank = self.rank
        out.terms = terms
        return out

    def __add__(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        terms = dict(self.terms)
        for tau, c in other.terms.items():
            s = terms.get(tau)
            s = c if s is None else s + c
            if s:
                terms[tau] = s
            elif tau in terms:
                del terms[tau]
        return self._raw(terms)

    def __sub__(self, other):
        return self + other.scale(CoeffPoly.integer(-1))

    def scale(self, c):
        if c.is_zero():
            return ZPoly(self.rank)
        return self._raw({tau: x * c for tau, x in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, ZPoly)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, tau):
        return self.terms.get(canonicalize(tau), CoeffPoly.zero())

    def swap_vars(self, i):
        """Exchange z_i and z_{i+1}."""
        n = self.rank
        acc = {}
        for tau, c in self.terms.items():
            p = pad(tau, max(len(tau), i + 1))
            acc[canonicalize(p[: i - 1] + (p[i], p[i - 1]) + p[i + 1 :])] = c
        return self._raw(acc)

    def hi(self, i):
        """Demazure-Lusztig action of H_i."""
        n = self.rank
        if not 1 <= i <= n - 1:
            raise ValueError("index %d out of range for rank %d" % (i, n))
        swapped = self.swap_vars(i)
        diff = self - swapped
        # z_{i+1} * diff, then exact division by z_i - z_{i+1}
        shifted = {}
        for tau, c in diff.terms.items():
            p = pad(tau, max(len(tau), i + 1))
            shifted[p[:i] + (p[i] + 1,) + p[i + 1 :]] = c
        dd = self._raw(_div_by_zi_minus_zj(shifted, i, n))
        return swapped.scale(VINV) + dd.scale(V_MINUS_VINV)

    def hi_inv(self, i):
        return self.hi(i) + self.scale(V_MINUS_VINV)

    def omega_tilde(self):
        """Substitute (q^{-1} z_n, z_1, ..., z_{n-1})."""
        n = self.rank
        acc = {}
        for tau, c in self.terms.items():
            p = pad(tau, n)
            acc[canonicalize(p[1:] + (p[0],))] = c.shift(q_exp=-p[0])
        return self._raw(acc)

    def omega_tilde_inv(self):
        """Substitute (z_2, ..., z_n, q z_1)."""
        n = self.rank
        acc = {}
        for tau, c in self.terms.items():
            p = pad(tau, n)
            acc[canonicalize((p[n - 1],) + p[: n - 1])] = c.shift(q_exp=p[n - 1])
        return self._raw(acc)

    def project(self):
        """Kill monomials with a positive last exponent; lower the rank."""
        n = self.rank
        if n < 3:
            raise ValueError("cannot project below rank 2")
        out = ZPoly.__new__(ZPoly)
        out.rank = n - 1
        out.terms = {tau: c for tau, c in self.terms.items() if len(tau) < n}
        return out

    def to_json(self):
        return {
            "rank": self.rank,
            "terms": [
                {"z": format_composition(tau), "coef": c.to_json()}
                for tau, c in sorted(self.terms.items())
            ],
        }

    @staticmethod
    def from_json(data):
        return ZPoly(
            data["rank"],
            {
                parse_composition(t["z"]): CoeffPoly.from_json(t["coef"])
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
        for tau, c in sorted(
            self.terms.items(), key=lambda kv: pad(kv[0], self.rank), reverse=True
        ):
            zs = "*".join(
                "z_%d" % (k + 1) if e == 1 else "z_%d^%d" % (k + 1, e)
                for k, e in enumerate(tau)
                if e
            )
            if not zs:
                chunks.append(c.pretty(use_t))
                continue
            if c == ONE:
                chunks.append(zs)
            else:
                cs = c.pretty(use_t)
                if len(c.terms) > 1 or cs.startswith("-"):
                    cs = "(%s)" % cs
                chunks.append("%s*%s" % (cs, zs))
        return " + ".join(chunks)

    def __repr__(self):
        return "ZPoly(rank=%d, %s)" % (self.rank, self.pretty())


def _div_by_zi_minus_zj(terms, i, n):
    """Exact division of a z-polynomial (padded dict) by z_i - z_{i+1}.

    Long division along the lex order; for inputs antisymmetric in (i, i+1)
    the remainder always vanishes.
    """
    rem = {pad(tau, n): c for tau, c in terms.items() if c}
    quot = {}
    while rem:
        e = max(rem)
        c = rem.pop(e)
        if e[i - 1] == 0:
            raise ArithmeticError("division by z_%d - z_%d is not exact" % (i, i + 1))
        qe = e[: i - 1] + (e[i - 1] - 1,) + e[i:]
        prev = quot.get(qe)
        prev = c if prev is None else prev + c
        if prev:
            quot[qe] = prev
        elif qe in quot:
            del quot[qe]
        # subtract c * z^qe * (z_i - z_{i+1}); the z_i part cancels e
        f = qe[:i] + (qe[i] + 1,) + qe[i + 1 :]
        s = rem.get(f)
        s = c if s is None else s + c
        if s:
            rem[f] = s
        elif f in rem:
            del rem[f]
    return {canonicalize(e): c for e, c in quot.items()}


def cherednik_xi(f, i):
    """The commuting Cherednik operator xi_i on a rank-n polynomial."""
    n = f.rank
    if not 1 <= i <= n:
        raise ValueError("index out of range")
    x = f
    for j in range(i, n):
        x = x.hi_inv(j)
    x = x.omega_tilde_inv()
    for j in range(1, i):
        x = x.hi(j)
    return x.scale(CoeffPoly.v_power(1 - n))


def xi_eigenvalue(lam, n, i):
    """q^{lambda_i} t^{1 - w^lambda(i)}, the xi_i eigenvalue on E_lambda."""
    lam_p = pad(canonicalize(lam), n)
    w = sorting_data(canonicalize(lam), n).images
    return CoeffPoly.monomial(1, 2 * (1 - w[i - 1]), lam_p[i - 1])


def to_module(f):
    """Push a polynomial into the parabolic module along the monomial images."""
    out = ModuleElement.zero(f.rank)
    for tau, c in f.terms.items():
        out = out + psi_monomial(tau, f.rank).scale(c)
    return out


def from_module(x):
    """Invert to_module by peeling along a linear extension of the Bruhat order.

    The monomial image of z^mu has leading coefficient v^{-l(w^mu)} on M^mu,
    so peeling from the top (largest minimal-coset-rep length first) works.
    """
    n = x.rank
    rem = x
    acc = {}
    while rem.terms:
        mu = max(rem.terms, key=lambda lam: min_rep_length(lam, n))
        a = rem.terms[mu] * CoeffPoly.v_power(sorting_data(mu, n).inversions)
        acc[mu] = a
        rem = rem - psi_monomial(mu, n).scale(a)
    return ZPoly(n, acc)


def _w0_word(n):
    """A reduced word for the longest permutation: (1)(2 1)(3 2 1)..."""
    word = []
    for k in range(1, n):
        word.extend(range(k, 0, -1))
    return word


def bar_polynomial(f):
    """The bar involution computed on the polynomial side.

    d(p) = v^{l(w_0)} H_{w_0}(w_0 pbar): bar the coefficients, reverse the
    variables, then apply the H-word of the longest permutation (rightmost
    letter first).  Must agree with the module-side involution through psi.
    """
    n = f.rank
    acc = {}
    for tau, c in f.terms.items():
        p = pad(tau, n)
        acc[canonicalize(p[::-1])] = c.bar()
    x = ZPoly(n, acc)
    for i in reversed(_w0_word(n)):
        x = x.hi(i)
    return x.scale(CoeffPoly.v_power(n * (n - 1) // 2))
