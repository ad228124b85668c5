"""q-expansions of level-1 modular forms and modular polynomial data.

Eisenstein series, the discriminant cusp form, the j-invariant, ladder
bases of M_k(SL2(Z)) with unipotent-triangular leading terms, weakly
holomorphic forms with prescribed principal part, and ingestion of the
classical modular polynomials (level 1 built in, higher levels from
plain-text data files with "i j coefficient" lines).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, inf, isqrt
from pathlib import Path

from .series import BiSeries, PowerSeries

Q = Fraction


class InvalidWeightError(ValueError):
    """Weight outside the domain of the requested family."""


class UnsolvableError(ValueError):
    """No weakly holomorphic form with the requested principal part.

    Carries the rank data of the failing linear system.
    """

    def __init__(self, message, system_rank=None, equations=None):
        super().__init__(message)
        self.system_rank = system_rank
        self.equations = equations


class MalformedCoefficientsError(ValueError):
    """Modular polynomial data file could not be parsed."""


class SymmetryViolationError(ValueError):
    """Modular polynomial data fails the symmetry requirement."""


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2) by the defining recurrence."""
    if n < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    row = _bernoulli_row(n)
    return row[n]


def _bernoulli_row(n: int):
    with _cache_lock:
        row = _caches.get("bernoulli")
        if row is None or len(row) <= n:
            row = list(row) if row else [Q(1)]
            for m in range(len(row), n + 1):
                s = Q(0)
                for j in range(m):
                    s += comb(m + 1, j) * row[j]
                row.append(-s / (m + 1))
            _caches["bernoulli"] = row
        return _caches["bernoulli"]


def sigma(n: int, k: int) -> int:
    """Divisor power sum sigma_k(n) for n >= 1."""
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
    return total


@dataclass(frozen=True)
class ModularFormSeries:
    """A q-expansion together with its weight."""

    weight: int
    series: PowerSeries

    def __mul__(self, other):
        if isinstance(other, ModularFormSeries):
            return ModularFormSeries(self.weight + other.weight, self.series * other.series)
        return ModularFormSeries(self.weight, self.series * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, ModularFormSeries):
            if other.weight != self.weight:
                raise InvalidWeightError("cannot add forms of different weights")
            return ModularFormSeries(self.weight, self.series + other.series)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, ModularFormSeries):
            if other.weight != self.weight:
                raise InvalidWeightError("cannot subtract forms of different weights")
            return ModularFormSeries(self.weight, self.series - other.series)
        return NotImplemented

    def __pow__(self, k: int):
        return ModularFormSeries(self.weight * k, self.series ** k)

    def coefficient(self, n: int) -> Fraction:
        return self.series[n]


_cache_lock = threading.Lock()
_caches: dict = {}


def _cached_prefix(kind: str, n_terms: int, extend):
    """Read-mostly cache of coefficient prefixes, grown on demand."""
    with _cache_lock:
        have = _caches.get(kind)
        if have is None or len(have) < n_terms:
            _caches[kind] = extend(n_terms, have)
        return _caches[kind][:n_terms]


def eisenstein(k: int, n_trunc: int) -> ModularFormSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, normalized to 1 at the cusp."""
    if k < 4 or k % 2:
        raise InvalidWeightError(f"Eisenstein weight must be even and >= 4, got {k}")
    if n_trunc < 1:
        raise ValueError("truncation must be >= 1")
    const = -2 * k / bernoulli(k)
    data = {0: Q(1)}
    for n in range(1, n_trunc):
        data[n] = const * sigma(n, k - 1)
    return ModularFormSeries(k, PowerSeries(data, 0, n_trunc))


def _eta24_coeffs(n_terms: int, have):
    """Coefficients of prod (1-q^n)^24 via pentagonal numbers and squaring."""
    # prod(1 - q^n) by Euler's pentagonal number theorem
    euler = [Q(0)] * n_terms
    euler[0] = Q(1)
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 >= n_terms and g2 >= n_terms:
            break
        s = Q(-1) ** j
        if g1 < n_terms:
            euler[g1] += s
        if g2 < n_terms:
            euler[g2] += s
        j += 1
    p = PowerSeries({i: c for i, c in enumerate(euler) if c}, 0, n_terms)
    p24 = p ** 24
    return [p24.coeffs.get(i, Q(0)) for i in range(n_terms)]


def delta(n_trunc: int) -> ModularFormSeries:
    """The normalized weight 12 cusp form q prod (1-q^n)^24."""
    if n_trunc < 1:
        raise ValueError("truncation must be >= 1")
    coeffs = _cached_prefix("eta24", max(n_trunc - 1, 1), _eta24_coeffs)
    data = {i + 1: c for i, c in enumerate(coeffs) if c and i + 1 < n_trunc}
    return ModularFormSeries(12, PowerSeries(data, 1, n_trunc))


def j_invariant(n_trunc: int) -> ModularFormSeries:
    """j = E_4^3 / Delta, valuation -1, weight 0."""

    def extend(n_terms, have):
        # E_4^3 and Delta to relative precision n_terms (j exponents -1..n_terms-2)
        e4 = eisenstein(4, n_terms + 1)
        num = (e4 ** 3).series
        den = delta(n_terms + 2).series
        jq = num * den.invert_unit()
        return [jq[e] for e in range(-1, n_terms - 1)]

    coeffs = _cached_prefix("j", n_trunc + 1, extend)
    data = {e - 1: c for e, c in enumerate(coeffs) if c and e - 1 < n_trunc}
    return ModularFormSeries(0, PowerSeries(data, -1, n_trunc))


def dim_modular_forms(k: int) -> int:
    """Dimension of M_k(SL2(Z)) for even k >= 0."""
    if k < 0 or k % 2:
        return 0
    return k // 12 if k % 12 == 2 else k // 12 + 1


def basis(k: int, n_trunc: int) -> list[ModularFormSeries]:
    """Triangular ladder basis of M_k: element r has expansion q^r + O(q^{r+1}).

    Built as E_4^a E_6^b Delta^r with 4a + 6b = k - 12r; leading
    coefficients are automatically 1.
    """
    if k % 2 or k < 0:
        raise InvalidWeightError(f"no nonzero forms of weight {k}")
    d = dim_modular_forms(k)
    out = []
    if d == 0:
        return out
    e4 = eisenstein(4, n_trunc)
    e6 = eisenstein(6, n_trunc) if k % 4 == 2 else None
    dl = delta(n_trunc) if d > 1 else None
    for r in range(d):
        rem = k - 12 * r
        if rem % 4 == 0:
            a, b = rem // 4, 0
        else:
            a, b = (rem - 6) // 4, 1
        if a < 0:
            raise InvalidWeightError(f"cannot realize weight {k} at ladder step {r}")
        f = ModularFormSeries(0, PowerSeries.one(n_trunc))
        if a:
            f = f * (e4 ** a)
        if b:
            f = f * (e6 ** b)
        if r:
            f = f * (dl ** r)
        out.append(ModularFormSeries(k, f.series.truncate(n_trunc)))
    return out


def tensor_basis(k: int, n_trunc: int) -> list[ModularFormSeries]:
    """Basis used for tensor decompositions (same triangular ladder).

    For weight 40 this is exactly E_4^(10-3r) Delta^r, r = 0..3.
    """
    return basis(k, n_trunc)


def weakly_holomorphic(weight: int, principal: dict[int, Fraction],
                       n_trunc: int) -> ModularFormSeries:
    """The weakly holomorphic form of the given nonpositive even weight
    whose principal part is sum_d c_{-d} q^{-d}.

    Constructed as (combination of the triangular basis of M_{weight+12n})
    divided by Delta^n, n the maximal pole order.  The linear system is
    triangular and solved exactly; coefficients multiplying basis elements
    beyond the principal-part rows are set to zero, which fixes the
    completion deterministically.  Raises UnsolvableError when the space
    is too small for the requested principal part (obstruction from cusp
    forms in the dual weight).
    """
    if weight > 0 or weight % 2:
        raise InvalidWeightError("weight must be nonpositive and even")
    principal = {int(d): Q(c) for d, c in principal.items() if Q(c)}
    if not principal:
        raise UnsolvableError("empty principal part", system_rank=0)
    if min(principal) < 1:
        raise ValueError("principal part indices must be positive pole orders")
    n = max(principal)
    k_hol = weight + 12 * n
    d_hol = dim_modular_forms(k_hol)
    inner = n_trunc + n + 1
    ladder = basis(k_hol, inner)
    dln = delta(inner + n) ** n
    # target principal coefficients of f at q^{-n}..q^{-1}; f * Delta^n has
    # its first n coefficients (q^0..q^{n-1}) determined by them alone.
    target = PowerSeries({-d: c for d, c in principal.items()}, -n, 0)
    rhs = (target * dln.series.truncate(inner)).truncate(n)
    x = []
    resid = rhs
    for r in range(min(d_hol, n)):
        c = resid[r] if r < resid.truncation else Q(0)
        x.append(c)
        if c:
            resid = resid - ladder[r].series.truncate(n) * c
    # remaining equations must close exactly; otherwise the principal part
    # is obstructed
    for r in range(d_hol, n):
        if resid[r]:
            raise UnsolvableError(
                f"principal part is obstructed: residual {resid[r]} at q^{r} "
                f"with only {d_hol} basis elements for weight {k_hol}",
                system_rank=d_hol, equations=n)
    num = PowerSeries.zero(0, inner)
    for c, b in zip(x, ladder):
        if c:
            num = num + b.series * c
    f = num * dln.series.invert_unit()
    return ModularFormSeries(weight, f.truncate(n_trunc))


# -- modular polynomials -------------------------------------------------


@dataclass(frozen=True)
class ModularPolynomial:
    """Integer bivariate polynomial relating j-invariants of isogenous curves."""

    d: int
    coeffs: dict  # (i, j) -> int

    def degree_bound(self) -> int:
        """psi(d) = d * prod_{p | d} (1 + 1/p), the X-degree of level d."""
        d, psi = self.d, self.d
        p = 2
        dd = d
        seen = set()
        while p * p <= dd:
            if dd % p == 0:
                seen.add(p)
                while dd % p == 0:
                    dd //= p
            p += 1
        if dd > 1:
            seen.add(dd)
        for p in seen:
            psi = psi // p * (p + 1)
        return psi

    def evaluate_pair(self, s_tau: PowerSeries, s_sigma: PowerSeries) -> BiSeries:
        """Phi_d(f(q), g(p)) as a bivariate series."""
        deg_x = max((i for i, _ in self.coeffs), default=0)
        deg_y = max((j for _, j in self.coeffs), default=0)
        xs = [BiSeries.one()]
        for _ in range(deg_x):
            xs.append(xs[-1] * BiSeries.from_univariate(s_tau, "q"))
        ys = [BiSeries.one()]
        for _ in range(deg_y):
            ys.append(ys[-1] * BiSeries.from_univariate(s_sigma, "p"))
        out = None
        for (i, j), c in sorted(self.coeffs.items()):
            term = (xs[i] * ys[j]) * Q(c)
            out = term if out is None else out + term
        return out if out is not None else BiSeries.zero()


PHI_1 = ModularPolynomial(1, {(1, 0): 1, (0, 1): -1})


def default_data_dir() -> Path:
    return Path(__file__).parent / "data"


def load_modular_polynomial(d: int, source=None) -> ModularPolynomial:
    """Level d modular polynomial; d = 1 is built in (X - Y).

    ``source`` may be a path to a text file with one "i j coefficient"
    monomial per line; by default level d is looked up as phi<d>.txt in
    the packaged data directory.  Validates symmetry (d > 1) and the
    classical X-degree.
    """
    if d < 1:
        raise ValueError("level must be >= 1")
    if d == 1:
        return PHI_1
    path = Path(source) if source is not None else default_data_dir() / f"phi{d}.txt"
    if not path.exists():
        raise FileNotFoundError(f"no modular polynomial data at {path}")
    coeffs = {}
    for line_no, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise MalformedCoefficientsError(f"{path}:{line_no}: expected 'i j coefficient'")
        try:
            i, j, c = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise MalformedCoefficientsError(f"{path}:{line_no}: {exc}") from None
        if i < 0 or j < 0:
            raise MalformedCoefficientsError(f"{path}:{line_no}: negative exponent")
        if (i, j) in coeffs:
            raise MalformedCoefficientsError(f"{path}:{line_no}: duplicate monomial")
        if c:
            coeffs[(i, j)] = c
    poly = ModularPolynomial(d, coeffs)
    for (i, j), c in coeffs.items():
        if coeffs.get((j, i), 0) != c:
            raise SymmetryViolationError(
                f"level {d} data is not symmetric at monomial X^{i} Y^{j}")
    deg_x = max((i for i, _ in coeffs), default=0)
    if deg_x != poly.degree_bound():
        raise MalformedCoefficientsError(
            f"X-degree {deg_x} does not match the classical degree {poly.degree_bound()}")
    return poly
