"""Exact sparse Laurent polynomials in v and q over the integers.

Every scalar in this package lives in Z[v,v^-1,q,q^-1].  The Hecke parameter
t is the square of v and is never stored separately: a term "t^k" is the term
v^{2k}.  Coefficients are arbitrary-precision Python ints.

A polynomial is a map (v_exp, q_exp) -> nonzero int.  Instances are treated
as immutable; no method mutates self.
"""

from __future__ import annotations


class NonExactDivision(ArithmeticError):
    """Raised when exact_div is asked for a division with remainder.

    In the pairing pipeline an inexact division signals an internal
    inconsistency, never a legitimate outcome.
    """


class ConsistencyError(RuntimeError):
    """A certified identity failed; the computed object cannot be trusted."""


class CoeffPoly:
    """Sparse Laurent polynomial in v and q with int coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: dict {(v_exp, q_exp): coeff}; zero coefficients are dropped
        if terms:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return CoeffPoly()

    @staticmethod
    def one():
        return CoeffPoly({(0, 0): 1})

    @staticmethod
    def integer(c):
        return CoeffPoly({(0, 0): c})

    @staticmethod
    def monomial(c, v_exp=0, q_exp=0):
        return CoeffPoly({(v_exp, q_exp): c})

    @staticmethod
    def v_power(k):
        return CoeffPoly({(k, 0): 1})

    @staticmethod
    def q_power(k):
        return CoeffPoly({(0, k): 1})

    @staticmethod
    def t_power(k):
        """t^k = v^{2k}."""
        return CoeffPoly({(2 * k, 0): 1})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = terms
        return out

    def __sub__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) - c
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = terms
        return out

    def __neg__(self):
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __mul__(self, other):
        # monomial factors are by far the common case in the Hecke actions
        if len(other.terms) == 1:
            ((a2, b2), c2), = other.terms.items()
            out = CoeffPoly.__new__(CoeffPoly)
            if a2 == 0 and b2 == 0:
                if c2 == 1:
                    return self
                out.terms = {e: c * c2 for e, c in self.terms.items()}
            else:
                out.terms = {
                    (a1 + a2, b1 + b2): c1 * c2 for (a1, b1), c1 in self.terms.items()
                }
            return out
        if len(self.terms) == 1:
            return other * self
        terms = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                e = (a1 + a2, b1 + b2)
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                elif e in terms:
                    del terms[e]
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = terms
        return out

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = CoeffPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_int(self, c):
        if c == 0:
            return CoeffPoly.zero()
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = {e: c * x for e, x in self.terms.items()}
        return out

    def shift(self, v_exp=0, q_exp=0):
        """Multiply by the monomial v^{v_exp} q^{q_exp}."""
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = {(a + v_exp, b + q_exp): c for (a, b), c in self.terms.items()}
        return out

    def __eq__(self, other):
        return isinstance(other, CoeffPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- involution and predicates ------------------------------------------

    def bar(self):
        """The bar involution v -> v^-1, q -> q^-1."""
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = {(-a, -b): c for (a, b), c in self.terms.items()}
        return out

    def is_nonneg(self):
        return all(c >= 0 for c in self.terms.values())

    def is_q_polynomial(self):
        return all(b >= 0 for (_, b) in self.terms)

    def is_q_free(self):
        return all(b == 0 for (_, b) in self.terms)

    def is_v_polynomial(self):
        return all(a >= 0 for (a, _) in self.terms)

    def min_v_exp(self):
        """Smallest v exponent present, or None for the zero polynomial."""
        if not self.terms:
            return None
        return min(a for (a, _) in self.terms)

    def specialize_q0(self):
        """Set q = 0.  Requires all q exponents nonnegative."""
        if not self.is_q_polynomial():
            raise ValueError("q -> 0 on a polynomial with negative q exponents")
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = {e: c for e, c in self.terms.items() if e[1] == 0}
        return out

    def coefficient_of_q(self, k):
        """The coefficient of q^k, a polynomial in v alone."""
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = {(a, 0): c for (a, b), c in self.terms.items() if b == k}
        return out

    # -- exact division ------------------------------------------------------

    def exact_div(self, d):
        """Exact quotient self / d in Z[v,v^-1,q,q^-1].

        Raises NonExactDivision if d is zero or the division leaves a
        remainder.  Works by monomial long division after shifting both
        operands to nonnegative exponents; for an exact division the leading
        term of the dividend is always divisible by the leading term of the
        divisor, so no field of fractions is needed.
        """
        if not d.terms:
            raise NonExactDivision("division by zero")
        if not self.terms:
            return CoeffPoly.zero()
        sv = min(a for (a, _) in self.terms)
        sq = min(b for (_, b) in self.terms)
        dv = min(a for (a, _) in d.terms)
        dq = min(b for (_, b) in d.terms)
        rem = dict(self.shift(-sv, -sq).terms)
        div = d.shift(-dv, -dq).terms
        dlead = max(div)  # lex on (v_exp, q_exp)
        dc = div[dlead]
        quot = {}
        while rem:
            lead = max(rem)
            c = rem[lead]
            ev, eq = lead[0] - dlead[0], lead[1] - dlead[1]
            if ev < 0 or eq < 0 or c % dc:
                raise NonExactDivision
            f = c // dc
            quot[(ev, eq)] = f
            for (a, b), x in div.items():
                e = (a + ev, b + eq)
                s = rem.get(e, 0) - f * x
                if s:
                    rem[e] = s
                elif e in rem:
                    del rem[e]
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = quot
        return out.shift(sv - dv, sq - dq)

    # -- norm factors ---------------------------------------------------------

    @staticmethod
    def phi(m):
        """phi_m(t) = prod_{i=1..m} (1 - t^i), in t = v^2."""
        result = CoeffPoly.one()
        for i in range(1, m + 1):
            result = result * (CoeffPoly.one() - CoeffPoly.t_power(i))
        return result

    @staticmethod
    def b_partition(pi):
        """b_pi(t) = prod_{a>=1} phi_{m_a}(t) over part multiplicities of pi.

        pi must be weakly decreasing.
        """
        if any(pi[i] < pi[i + 1] for i in range(len(pi) - 1)):
            raise ValueError("b is defined for partitions only")
        mult = {}
        for a in pi:
            if a:
                mult[a] = mult.get(a, 0) + 1
        result = CoeffPoly.one()
        for m in mult.values():
            result = result * CoeffPoly.phi(m)
        return result

    # -- serialization ---------------------------------------------------------

    def to_json(self):
        """Term list sorted by (q, v) ascending, coefficients as strings."""
        return [
            {"v": a, "q": b, "c": str(c)}
            for (a, b), c in sorted(self.terms.items(), key=lambda e: (e[0][1], e[0][0]))
        ]

    @staticmethod
    def from_json(data):
        return CoeffPoly({(int(t["v"]), int(t["q"])): int(t["c"]) for t in data})

    # -- printing ---------------------------------------------------------------

    def pretty(self, use_t=None):
        """Human form; writes t for v^2 when every v exponent is even.

        Callers printing several coefficients side by side pass use_t to keep
        the choice uniform across the whole expression.
        """
        if not self.terms:
            return "0"
        if use_t is None or use_t:
            # t stands for v^2, so any odd exponent forces the v form
            use_t = all(a % 2 == 0 for (a, _) in self.terms)
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda e: (e[0][1], e[0][0])):
            factors = []
            if use_t:
                if a:
                    k = a // 2
                    factors.append("t" if k == 1 else "t^%d" % k)
            elif a:
                factors.append("v" if a == 1 else "v^%d" % a)
            if b:
                factors.append("q" if b == 1 else "q^%d" % b)
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "CoeffPoly(%s)" % self.pretty()


ZERO = CoeffPoly.zero()
ONE = CoeffPoly.one()
V = CoeffPoly.v_power(1)
VINV = CoeffPoly.v_power(-1)
V_MINUS_VINV = V - VINV
