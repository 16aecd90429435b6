"""Composition Kostka functions and the conjecture scanner.

K_{lambda,mu}(q,t) is the stable scalar product of the Kazhdan-Lusztig
element over lambda with the Macdonald element over mu.  Both sides are
expanded in the m-symmetric basis M^{tau|m}, the pairing divides the
Macdonald coefficients by the Hall-Littlewood factor b of the partition
tail (an exact division, so integrality is retested on every call), and
the value is certified stable under a rank bump.

The module also carries the independent cross-check routes: Schur
polynomials by tableau enumeration in place of the KL solver, the charge
statistic for the q=0 partition case, and the truncated finite-rank pairing
used as a convergence diagnostic.
"""

from __future__ import annotations

import csv
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial

from .cache import cache_get, cache_put
from .coeffs import CoeffPoly, ConsistencyError, ONE, V, VINV, ZERO
from .compositions import (
    MarkedDiagram,
    all_markings,
    canonicalize,
    compositions_of,
    format_composition,
    format_marked,
    length,
    marking_stats,
    pad,
    partition_length,
    sorting_data,
    weight,
)
from .kl import kl_element
from .macdonald import e_tilde, marked_e
from .parabolic import ModuleElement
from .polyrep import to_module

_EXP_CACHE = {}
_KOSTKA_CACHE = {}


class MSymmetryViolation(ConsistencyError):
    """An element fed to the m-symmetric expansion was not m-symmetric."""


@dataclass(frozen=True)
class MSymExpansion:
    m: int
    rank: int
    terms: dict  # representative (partition tail) -> CoeffPoly


@dataclass(frozen=True)
class KostkaResult:
    lam: tuple
    mu: tuple
    value: CoeffPoly
    m: int
    rank: int
    is_polynomial_in_v: bool
    is_nonneg: bool


def clear_caches():
    _EXP_CACHE.clear()
    _KOSTKA_CACHE.clear()


# -- m-symmetric expansions --------------------------------------------------


def _perm_count(vals):
    out = factorial(len(vals))
    for x in set(vals):
        out //= factorial(vals.count(x))
    return out


def msym_expand(x, m):
    """Expand an m-symmetric element over the basis M^{tau|m}.

    The coefficient is read off at the tail-sorted representative; the whole
    orbit is then checked against it, member by member, via the
    v^{l(w) - l(w_rep)} proportionality.
    """
    n = x.rank
    if not 0 <= m <= n:
        raise ValueError("m out of range")
    vinv_x = x.scale(VINV)
    for i in range(m + 1, n):
        if x.hi(i) != vinv_x:
            raise MSymmetryViolation("H_%d does not act by v^-1; not %d-symmetric" % (i, m))
    orbits = {}
    for key, c in x.terms.items():
        p = pad(key, max(len(key), m))
        tail = tuple(sorted(p[m:], reverse=True))
        while tail and tail[-1] == 0:
            tail = tail[:-1]
        orbits.setdefault((p[:m], tail), []).append((key, c))
    terms = {}
    for (head, tail), members in orbits.items():
        rep = canonicalize(head + tail)
        if len(members) != _perm_count(tail + (0,) * (n - m - len(tail))):
            raise MSymmetryViolation("orbit of %r is incomplete" % (rep,))
        a_rep = dict(members)[rep]
        base = sorting_data(rep, n).inversions
        for key, c in members:
            if c != a_rep.shift(v_exp=sorting_data(key, n).inversions - base):
                raise MSymmetryViolation(
                    "coefficient of %r breaks the orbit proportionality" % (key,)
                )
        terms[rep] = a_rep
    return MSymExpansion(m, n, terms)


def msym_basis(tau, m, n):
    """The orbit sum M^{tau|m} at rank n, normalized at the representative."""
    tau = canonicalize(tau)
    if len(tau) > n:
        raise ValueError("rank too small")
    p = pad(tau, n)
    head, tail = p[:m], p[m:]
    if any(tail[k] < tail[k + 1] for k in range(len(tail) - 1)):
        raise ValueError("%r is not a representative for m=%d" % (tau, m))
    base = sorting_data(tau, n).inversions
    terms = {}
    for perm in set(itertools.permutations(tail)):
        key = canonicalize(head + perm)
        terms[key] = CoeffPoly.v_power(sorting_data(key, n).inversions - base)
    return ModuleElement(n, terms)


def pair(x, y):
    """The stable scalar product of two m-symmetric expansions.

    Divides the second argument's coefficients by b(tail); the division
    must be exact, otherwise the inputs were not genuinely stable-paired
    objects and NonExactDivision propagates.
    """
    if x.m != y.m or x.rank != y.rank:
        raise ValueError("expansions live at different (m, rank)")
    out = ZERO
    for tau, xc in x.terms.items():
        yc = y.terms.get(tau)
        if yc is None:
            continue
        out = out + xc * yc.exact_div(CoeffPoly.b_partition(tau[x.m :]))
    return out


def pair_truncated(x, y):
    """Plain orthonormal pairing of standard-basis coefficients at finite rank."""
    if x.rank != y.rank:
        raise ValueError("rank mismatch")
    out = ZERO
    for tau, xc in x.terms.items():
        yc = y.terms.get(tau)
        if yc is not None:
            out = out + xc * yc
    return out


# -- Kostka functions ---------------------------------------------------------


def _kl_expansion(lam, m, n):
    key = ("kl", lam, m, n)
    hit = _EXP_CACHE.get(key)
    if hit is None:
        hit = msym_expand(kl_element(lam, n).element, m)
        _EXP_CACHE[key] = hit
    return hit


def _e_expansion(mu, m, n):
    key = ("e", mu, m, n)
    hit = _EXP_CACHE.get(key)
    if hit is None:
        hit = msym_expand(e_tilde(mu, n).element, m)
        _EXP_CACHE[key] = hit
    return hit


def _marked_expansion(d, m, n):
    key = ("marked", d.shape, d.marked, m, n)
    hit = _EXP_CACHE.get(key)
    if hit is None:
        hit = msym_expand(marked_e(d, n), m)
        _EXP_CACHE[key] = hit
    return hit


def kostka(lam, mu):
    """K_{lambda,mu}(q,t) with its positivity flags.

    Ranks: m = max(pl(lambda), l(mu)), n = m + weight + 1; the value is
    recomputed at n+1 and must agree (stability certificate).
    """
    lam = canonicalize(lam)
    mu = canonicalize(mu)
    ck = (lam, mu)
    hit = _KOSTKA_CACHE.get(ck)
    if hit is not None:
        return hit
    if weight(lam) != weight(mu):
        res = KostkaResult(lam, mu, ZERO, 0, 2, True, True)
        _KOSTKA_CACHE[ck] = res
        return res
    m = max(partition_length(lam), len(mu))
    n = max(m + weight(lam) + 1, 2)
    value = pair(_kl_expansion(lam, m, n), _e_expansion(mu, m, n))
    bumped = pair(_kl_expansion(lam, m, n + 1), _e_expansion(mu, m, n + 1))
    if value != bumped:
        raise ConsistencyError(
            "K_{%r,%r} differs between ranks %d and %d" % (lam, mu, n, n + 1)
        )
    if not value.is_q_polynomial():
        raise ConsistencyError("K_{%r,%r} has a negative q power: %r" % (lam, mu, value))
    poly_v = value.is_v_polynomial()
    res = KostkaResult(lam, mu, value, m, n, poly_v, poly_v and value.is_nonneg())
    _KOSTKA_CACHE[ck] = res
    return res


def kostka_q0_check(lam, max_len=None):
    """kostka(lam, .)(q=0) reproduces the KL expansion, coefficient by coefficient.

    mu runs over every composition of the right weight that fits inside the
    KL element's own rank (those coefficients are rank-stable), so vanishing
    off the support is probed along with the support itself.  max_len trims
    the mu window; entries past the window are simply not probed.
    """
    lam = canonicalize(lam)
    d = weight(lam)
    n = max(partition_length(lam) + d + 1, 2)
    el = kl_element(lam, n).element
    window = n if max_len is None else min(max_len, n)
    for mu in compositions_of(d, window):
        if kostka(lam, mu).value.specialize_q0() != el.coefficient(mu):
            return False
    return True


def marked_kostka(lam, d):
    """The q-free refinement K_{lambda,mu-bar}(t) = t^L <KL, psi(E~_marked)>."""
    lam = canonicalize(lam)
    shape = canonicalize(d.shape)
    if shape != d.shape:
        d = MarkedDiagram(shape, d.marked)
    if weight(lam) != weight(shape):
        raise ValueError("weights differ: %r vs %r" % (lam, shape))
    m = max(partition_length(lam), len(shape))
    n = max(m + weight(lam) + 1, 2)
    _, l_stat = marking_stats(d)
    value = pair(_kl_expansion(lam, m, n), _marked_expansion(d, m, n))
    value = value.shift(v_exp=2 * l_stat)
    if not value.is_q_free():
        raise ConsistencyError("marked Kostka of %r picked up q: %r" % (shape, value))
    return value


def marked_decomposition_check(lam, mu):
    """sum over markings of q^A K_{lambda,mu-bar} equals K_{lambda,mu}."""
    lam = canonicalize(lam)
    mu = canonicalize(mu)
    total = ZERO
    for d in all_markings(mu):
        a_stat, _ = marking_stats(d)
        total = total + marked_kostka(lam, d).shift(q_exp=a_stat)
    return total == kostka(lam, mu).value


# -- independent routes: Schur pipeline and the charge statistic --------------


def _ssyt(shape, maxentry, content):
    """Semistandard fillings of a partition shape, entries 1..maxentry.

    content, when given, is the required multiset of entries (list of counts,
    mutated during backtracking).
    """
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    grid = [[0] * r for r in shape]
    out = []

    def place(k):
        if k == len(cells):
            out.append(tuple(tuple(row) for row in grid))
            return
        i, j = cells[k]
        lo = grid[i][j - 1] if j else 1
        if i:
            lo = max(lo, grid[i - 1][j] + 1)
        for val in range(lo, maxentry + 1):
            if content is not None:
                if val > len(content) or content[val - 1] == 0:
                    continue
                content[val - 1] -= 1
            grid[i][j] = val
            place(k + 1)
            grid[i][j] = 0
            if content is not None:
                content[val - 1] += 1

    place(0)
    return out


def schur_z(lam, n):
    """Schur polynomial s_lambda(z_1..z_n) by tableau enumeration."""
    lam = canonicalize(lam)
    if any(lam[k] < lam[k + 1] for k in range(len(lam) - 1)):
        raise ValueError("%r is not a partition" % (lam,))
    from .polyrep import ZPoly

    acc = {}
    for t in _ssyt(lam, n, None):
        cnt = [0] * n
        for row in t:
            for x in row:
                cnt[x - 1] += 1
        key = canonicalize(tuple(cnt))
        acc[key] = acc.get(key, ZERO) + ONE
    return ZPoly(n, acc)


def kostka_via_schur(lam, mu):
    """kostka with the KL solver swapped for the combinatorial Schur element."""
    lam = canonicalize(lam)
    mu = canonicalize(mu)
    if any(lam[k] < lam[k + 1] for k in range(len(lam) - 1)):
        raise ValueError("%r is not a partition" % (lam,))
    if weight(lam) != weight(mu):
        return ZERO
    m = max(partition_length(lam), len(mu))
    n = max(m + weight(lam) + 1, 2)
    x = msym_expand(to_module(schur_z(lam, n)), m)
    return pair(x, _e_expansion(mu, m, n))


def _charge(word):
    """Lascoux-Schutzenberger charge of a word with partition content."""
    w = list(word)
    total = 0
    while w:
        top = max(w)
        cur = len(w) - 1 - w[::-1].index(1)
        chosen = [cur]
        for a in range(2, top + 1):
            for k in itertools.chain(range(cur - 1, -1, -1), range(len(w) - 1, cur, -1)):
                if w[k] == a:
                    cur = k
                    chosen.append(k)
                    break
            else:
                raise ValueError("content of %r is not a partition" % (word,))
        rank = {w[k]: r for r, k in enumerate(sorted(chosen))}
        idx = 0
        for a in range(2, top + 1):
            if rank[a] < rank[a - 1]:
                idx += 1
            total += idx
        for k in sorted(chosen, reverse=True):
            del w[k]
    return total


def charge_oracle(lam, mu):
    """Kostka-Foulkes polynomial sum of t^charge over SSYT(lam, mu).

    Tableau words are read row by row, each row right to left.
    """
    lam = canonicalize(lam)
    mu = canonicalize(mu)
    for pi in (lam, mu):
        if any(pi[k] < pi[k + 1] for k in range(len(pi) - 1)):
            raise ValueError("%r is not a partition" % (pi,))
    if weight(lam) != weight(mu):
        return ZERO
    total = ZERO
    for t in _ssyt(lam, max(length(mu), 1), list(mu)):
        word = []
        for row in t:
            word.extend(reversed(row))
        total = total + CoeffPoly.t_power(_charge(word))
    return total


# -- the scanner ---------------------------------------------------------------


def psi_e_polynomial(mu):
    """Whether every coefficient of psi(E~_mu) lies in Z[v,q] (no negatives)."""
    mu = canonicalize(mu)
    n = max(len(mu) + weight(mu) + 1, 2)
    el = e_tilde(mu, n).element
    return all(c.is_v_polynomial() and c.is_q_polynomial() for c in el.terms.values())


def _marks_string(d):
    return format_marked(d)


def _scan_worker(args):
    lams, domain, marked, max_len = args
    out = {"values": {}, "marked": {}, "kl": {}}
    for lam in lams:
        d = weight(lam)
        for mu in domain[d]:
            out["values"][(lam, mu)] = kostka(lam, mu).value.to_json()
            if marked:
                for dg in all_markings(mu):
                    out["marked"][(lam, mu, dg.marked)] = marked_kostka(lam, dg).to_json()
        n0 = max(partition_length(lam) + d + 1, max_len + 1, 2)
        el = kl_element(lam, n0).element
        out["kl"][lam] = {mu: el.coefficient(mu).to_json() for mu in domain[d]}
    return out


def scan(max_weight, max_len=None, marked=True, jobs=1, cache_dir=None,
         report_path=None, csv_path=None, progress=None):
    """Sweep all equal-weight pairs up to max_weight and hunt for violations.

    Checks per pair: K in N[v,q] (the positivity conjecture), psi(E~_mu)
    coefficient positivity, the marked refinements in N[v] with their
    decomposition identity, the Mpart exchange relation, and the q=0
    Kazhdan-Lusztig agreement.  Violations are returned as data, never
    raised.  A populated cache directory lets reruns skip finished pairs
    (with jobs > 1 the workers recompute their chunk regardless and the
    merge prefers cached values).
    """
    t_start = time.perf_counter()
    if max_len is None:
        max_len = max(max_weight, 1)
    domain = {d: compositions_of(d, max_len) for d in range(max_weight + 1)}
    all_lams = [lam for d in range(max_weight + 1) for lam in domain[d]]
    timings = {}
    violations = []

    def note(msg):
        if progress is not None:
            progress(msg)

    # main pass: every pair value, plus marked refinements and KL windows
    t0 = time.perf_counter()
    values = {}
    marked_values = {}
    kl_vectors = {}
    if cache_dir is not None:
        for lam in all_lams:
            for mu in domain[weight(lam)]:
                payload = cache_get(cache_dir, "kostka", _kostka_key(lam, mu))
                if payload is not None:
                    values[(lam, mu)] = CoeffPoly.from_json(payload["value"])
                if marked:
                    for dg in all_markings(mu):
                        got = cache_get(cache_dir, "marked", _marked_key(lam, dg))
                        if got is not None:
                            marked_values[(lam, mu, dg.marked)] = CoeffPoly.from_json(
                                got["value"]
                            )

    def want(lam):
        d = weight(lam)
        for mu in domain[d]:
            if (lam, mu) not in values:
                return True
            if marked and any(
                (lam, mu, dg.marked) not in marked_values for dg in all_markings(mu)
            ):
                return True
        return lam not in kl_vectors

    todo = [lam for lam in all_lams if want(lam)]
    if jobs > 1 and todo:
        chunks = [todo[k::jobs] for k in range(jobs)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(_scan_worker, [(c, domain, marked, max_len) for c in chunks]))
        for res in results:
            for k, v in res["values"].items():
                values.setdefault(k, CoeffPoly.from_json(v))
            for k, v in res["marked"].items():
                marked_values.setdefault(k, CoeffPoly.from_json(v))
            for lam, vec in res["kl"].items():
                kl_vectors[lam] = {mu: CoeffPoly.from_json(c) for mu, c in vec.items()}
    else:
        for k, lam in enumerate(todo):
            d = weight(lam)
            for mu in domain[d]:
                if (lam, mu) not in values:
                    values[(lam, mu)] = kostka(lam, mu).value
                if marked:
                    for dg in all_markings(mu):
                        mk = (lam, mu, dg.marked)
                        if mk not in marked_values:
                            marked_values[mk] = marked_kostka(lam, dg)
            n0 = max(partition_length(lam) + d + 1, max_len + 1, 2)
            el = kl_element(lam, n0).element
            kl_vectors[lam] = {mu: el.coefficient(mu) for mu in domain[d]}
            note("pairs: %d/%d lambdas done (last %s)" % (k + 1, len(todo), lam or "()"))
    # lambdas fully served by the cache still need their KL window
    for lam in all_lams:
        if lam not in kl_vectors:
            d = weight(lam)
            n0 = max(partition_length(lam) + d + 1, max_len + 1, 2)
            el = kl_element(lam, n0).element
            kl_vectors[lam] = {mu: el.coefficient(mu) for mu in domain[d]}
    if cache_dir is not None:
        for (lam, mu), val in values.items():
            cache_put(cache_dir, "kostka", _kostka_key(lam, mu), {"value": val.to_json()})
        for (lam, mu, marks), val in marked_values.items():
            cache_put(
                cache_dir,
                "marked",
                _marked_key(lam, MarkedDiagram(mu, marks)),
                {"value": val.to_json()},
            )
    timings["kostka"] = round(time.perf_counter() - t0, 3)

    # conjecture verdicts
    t0 = time.perf_counter()
    min_v = None
    for (lam, mu), val in sorted(values.items()):
        if val:
            low = val.min_v_exp()
            min_v = low if min_v is None else min(min_v, low)
        if not (val.is_v_polynomial() and val.is_q_polynomial() and val.is_nonneg()):
            violations.append(_violation("kostka_positivity", lam, mu, val))
    for d in range(max_weight + 1):
        for mu in domain[d]:
            if not psi_e_polynomial(mu):
                violations.append(
                    _violation("psi_e_polynomial", None, mu, None, "coefficient outside Z[v,q]")
                )
    if marked:
        for (lam, mu, marks), val in sorted(marked_values.items()):
            if not (val.is_q_free() and val.is_v_polynomial() and val.is_nonneg()):
                v = _violation("marked_positivity", lam, mu, val)
                v["marking"] = _marks_string(MarkedDiagram(mu, marks))
                violations.append(v)
        for (lam, mu), val in sorted(values.items()):
            total = ZERO
            for dg in all_markings(mu):
                a_stat, _ = marking_stats(dg)
                total = total + marked_values[(lam, mu, dg.marked)].shift(q_exp=a_stat)
            if total != val:
                violations.append(
                    _violation("marked_decomposition", lam, mu, total, "sum over markings differs")
                )
    note("conjecture verdicts done")
    timings["conjectures"] = round(time.perf_counter() - t0, 3)

    # Mpart exchange spot checks
    t0 = time.perf_counter()
    for (lam, mu), val in sorted(values.items()):
        p_lam = pad(lam, max_len + 1)
        p_mu = pad(mu, max_len + 1)
        for i in range(1, len(mu) + 1):
            if p_mu[i - 1] > p_mu[i] and p_lam[i - 1] >= p_lam[i]:
                smu = canonicalize(p_mu[: i - 1] + (p_mu[i], p_mu[i - 1]) + p_mu[i + 1 :])
                if len(smu) > max_len:
                    continue
                if values[(lam, smu)] != val * V:
                    violations.append(
                        _violation("mpart", lam, mu, values[(lam, smu)],
                                   "expected v*K at i=%d" % i)
                    )
    timings["mpart"] = round(time.perf_counter() - t0, 3)

    # q=0 agreement with the KL expansion on the scanned window
    t0 = time.perf_counter()
    for lam in all_lams:
        for mu in domain[weight(lam)]:
            val = values[(lam, mu)]
            try:
                q0 = val.specialize_q0()
            except ValueError:
                q0 = None
            if q0 != kl_vectors[lam][mu]:
                violations.append(
                    _violation("q0_kl", lam, mu, val, "q=0 disagrees with the KL coefficient")
                )
    timings["q0_kl"] = round(time.perf_counter() - t0, 3)

    violations.sort(key=lambda v: (v["check"], v["lambda"] or "", v["mu"] or "", v.get("marking", "")))
    timings["total"] = round(time.perf_counter() - t_start, 3)
    report = {
        "format": 1,
        "max_weight": max_weight,
        "max_len": max_len,
        "marked": marked,
        "pairs": len(values),
        "violations": violations,
        "timings": timings,
        "min_v_exponent_observed": min_v,
    }
    if report_path is not None:
        with open(report_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if csv_path is not None:
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["lambda", "mu", "kostka"])
            for (lam, mu), val in sorted(values.items()):
                writer.writerow(
                    [
                        format_composition(lam),
                        format_composition(mu),
                        json.dumps(val.to_json(), separators=(",", ":")),
                    ]
                )
    return report


def _kostka_key(lam, mu):
    return {"lambda": format_composition(lam), "mu": format_composition(mu)}


def _marked_key(lam, d):
    return {"lambda": format_composition(lam), "marked": format_marked(d)}


def _violation(check, lam, mu, val, detail=None):
    out = {
        "check": check,
        "lambda": None if lam is None else format_composition(lam),
        "mu": None if mu is None else format_composition(mu),
        "value": None if val is None else val.to_json(),
    }
    if detail:
        out["detail"] = detail
    return out
