"""Exact truncated Laurent series in one and two variables.

A series is a window of certain knowledge: exponents below the valuation
are genuinely zero, exponents at or above the truncation are unknown, and
inside the window absent coefficients mean zero.  All arithmetic keeps the
tightest window derivable from the operands, so precision is never
silently extended.  Coefficients are ``fractions.Fraction`` throughout;
no floating point enters this module.

``math.inf`` as truncation marks an exact (polynomial) value.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import inf

from ._accel import convolve_1d, convolve_2d

Q = Fraction


class InsufficientPrecisionError(ValueError):
    """A coefficient beyond the truncation window was requested."""


class ZeroLeadingCoefficientError(ZeroDivisionError):
    """invert_unit needs a nonzero coefficient at the valuation."""


class NotAntisymmetricError(ValueError):
    """divide_antisym_by_diff got a series that is not antisymmetric."""


def _as_q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _q_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


class PowerSeries:
    """Univariate Laurent series with an explicit knowledge window."""

    __slots__ = ("coeffs", "valuation", "truncation")

    def __init__(self, coeffs=None, valuation=0, truncation=inf):
        data = {}
        if coeffs:
            for e, c in coeffs.items():
                c = _as_q(c)
                if not c:
                    continue
                if e < valuation or e >= truncation:
                    raise ValueError(f"exponent {e} outside window [{valuation}, {truncation})")
                data[e] = c
        if valuation > truncation:
            raise ValueError("valuation above truncation")
        self.coeffs = data
        self.valuation = valuation
        self.truncation = truncation

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, valuation=0, truncation=inf):
        return cls({}, valuation, truncation)

    @classmethod
    def one(cls, truncation=inf):
        return cls({0: Q(1)}, 0, truncation)

    @classmethod
    def monomial(cls, exponent, coefficient=1, truncation=inf):
        return cls({exponent: _as_q(coefficient)}, exponent, truncation)

    @classmethod
    def from_coeff_list(cls, coeffs, valuation=0, truncation=None):
        data = {valuation + i: _as_q(c) for i, c in enumerate(coeffs)}
        if truncation is None:
            truncation = valuation + len(coeffs)
        return cls(data, valuation, truncation)

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.truncation:
            raise InsufficientPrecisionError(
                f"coefficient at exponent {n} beyond truncation {self.truncation}")
        return self.coeffs.get(n, Q(0))

    def support(self):
        return sorted(self.coeffs)

    def order(self):
        """Exponent of the lowest nonzero known coefficient (None if zero)."""
        return min(self.coeffs) if self.coeffs else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return (self.coeffs == other.coeffs and self.valuation == other.valuation
                and self.truncation == other.truncation)

    def agrees_with(self, other: "PowerSeries") -> bool:
        """Equality of coefficients on the overlap of the two windows."""
        lo = max(self.valuation, other.valuation)
        hi = min(self.truncation, other.truncation)
        for e, c in self.coeffs.items():
            if lo <= e < hi and other.coeffs.get(e, Q(0)) != c:
                return False
        for e, c in other.coeffs.items():
            if lo <= e < hi and self.coeffs.get(e, Q(0)) != c:
                return False
        return True

    # -- arithmetic ---------------------------------------------------

    def __neg__(self):
        out = PowerSeries.zero(self.valuation, self.truncation)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        return out

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PowerSeries({0: other}) if other else PowerSeries({}, 0, inf)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        v = min(self.valuation, other.valuation)
        n = min(self.truncation, other.truncation)
        data = {}
        for e, c in self.coeffs.items():
            if e < n:
                data[e] = c
        for e, c in other.coeffs.items():
            if e >= n:
                continue
            s = data.get(e, Q(0)) + c
            if s:
                data[e] = s
            elif e in data:
                del data[e]
        out = PowerSeries.zero(min(v, n), n)
        out.coeffs = data
        return out

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, PowerSeries) else -_as_q(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_q(other)
            out = PowerSeries.zero(self.valuation, self.truncation)
            if c:
                out.coeffs = {e: c * v for e, v in self.coeffs.items()}
            return out
        if not isinstance(other, PowerSeries):
            return NotImplemented
        v = self.valuation + other.valuation
        n = min(self.truncation + other.valuation, other.truncation + self.valuation)
        out = PowerSeries.zero(min(v, n), n)
        out.coeffs = convolve_1d(self.coeffs, other.coeffs, v, n)
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers go through invert_unit")
        result = PowerSeries.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def invert_unit(self, prec=None) -> "PowerSeries":
        """Multiplicative inverse of a series with invertible leading term.

        For a series known to precision N with valuation v the inverse is
        known to precision N - 2v.  Exact monomials invert exactly; other
        exact inputs need an explicit relative precision ``prec``.
        """
        if not self.coeffs:
            raise ZeroLeadingCoefficientError("cannot invert the zero series")
        v = self.valuation
        if v not in self.coeffs:
            raise ZeroLeadingCoefficientError(
                f"coefficient at the valuation {v} vanishes; normalize() first")
        lead = self.coeffs[v]
        if self.truncation is inf:
            if len(self.coeffs) == 1:
                return PowerSeries({-v: 1 / lead}, -v, inf)
            if prec is None:
                raise ValueError("exact non-monomial input needs prec= for inversion")
            terms = prec
        else:
            terms = self.truncation - v
            if prec is not None:
                terms = min(terms, prec)
        if terms <= 0:
            raise InsufficientPrecisionError("no known coefficients to invert")
        a = [self.coeffs.get(v + i, Q(0)) for i in range(terms)]
        b = [Q(0)] * terms
        b[0] = 1 / lead
        for nn in range(1, terms):
            s = Q(0)
            for j in range(1, nn + 1):
                if a[j] and b[nn - j]:
                    s += a[j] * b[nn - j]
            b[nn] = -s / lead
        data = {-v + i: b[i] for i in range(terms) if b[i]}
        return PowerSeries(data, -v, -v + terms)

    def dilate(self, k: int) -> "PowerSeries":
        """Substitute q -> q^k, staying univariate."""
        if k < 1:
            raise ValueError("dilation factor must be >= 1")
        data = {k * e: c for e, c in self.coeffs.items()}
        n = inf if self.truncation is inf else k * (self.truncation - 1) + 1
        return PowerSeries(data, k * self.valuation, n)

    def truncate(self, n) -> "PowerSeries":
        if n > self.truncation:
            raise InsufficientPrecisionError("cannot extend precision by truncation")
        data = {e: c for e, c in self.coeffs.items() if e < n}
        return PowerSeries(data, min(self.valuation, n), n)

    def normalize(self) -> "PowerSeries":
        """Tighten the declared valuation to the actual lowest support."""
        if not self.coeffs:
            return PowerSeries.zero(self.truncation if self.truncation is not inf else 0,
                                    self.truncation)
        return PowerSeries(dict(self.coeffs), min(self.coeffs), self.truncation)

    # -- io -------------------------------------------------------------

    def render(self, var: str = "q", max_terms: int | None = None) -> str:
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for e in self.support()[:max_terms]:
                c = self.coeffs[e]
                mono = "1" if e == 0 else (var if e == 1 else f"{var}^{e}")
                if e == 0:
                    term = _q_str(c)
                elif c == 1:
                    term = mono
                elif c == -1:
                    term = f"-{mono}"
                else:
                    term = f"{_q_str(c)}*{mono}"
                parts.append(term)
            body = " + ".join(parts).replace("+ -", "- ")
            if max_terms is not None and len(self.coeffs) > max_terms:
                body += " + ..."
        if self.truncation is not inf:
            body += f" + O({var}^{self.truncation})"
        return body

    def __repr__(self):
        return f"PowerSeries({self.render(max_terms=6)})"

    def to_json_obj(self):
        return {
            "variables": ["q"],
            "valuation": self.valuation,
            "truncation": None if self.truncation is inf else self.truncation,
            "coefficients": [[e, _q_str(self.coeffs[e])] for e in self.support()],
        }

    @classmethod
    def from_json_obj(cls, obj):
        n = obj["truncation"]
        return cls({e: Fraction(c) for e, c in obj["coefficients"]},
                   obj["valuation"], inf if n is None else n)

    def json_dumps(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


class BiSeries:
    """Bivariate Laurent series on a box window [v_q,N_q) x [v_p,N_p)."""

    __slots__ = ("coeffs", "valuations", "truncations")

    def __init__(self, coeffs=None, valuations=(0, 0), truncations=(inf, inf)):
        vq, vp = valuations
        nq, np_ = truncations
        data = {}
        if coeffs:
            for (a, b), c in coeffs.items():
                c = _as_q(c)
                if not c:
                    continue
                if a < vq or a >= nq or b < vp or b >= np_:
                    raise ValueError(f"exponent {(a, b)} outside box")
                data[(a, b)] = c
        if vq > nq or vp > np_:
            raise ValueError("valuation above truncation")
        self.coeffs = data
        self.valuations = (vq, vp)
        self.truncations = (nq, np_)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, valuations=(0, 0), truncations=(inf, inf)):
        return cls({}, valuations, truncations)

    @classmethod
    def one(cls, truncations=(inf, inf)):
        return cls({(0, 0): Q(1)}, (0, 0), truncations)

    @classmethod
    def monomial(cls, a, b, coefficient=1):
        return cls({(a, b): _as_q(coefficient)}, (a, b), (inf, inf))

    @classmethod
    def from_univariate(cls, s: PowerSeries, var: str = "q"):
        """Embed a univariate series as a bivariate one (the other
        variable's coefficients are exactly zero, hence untruncated)."""
        if var == "q":
            data = {(e, 0): c for e, c in s.coeffs.items()}
            return cls(data, (s.valuation, 0), (s.truncation, inf))
        if var == "p":
            data = {(0, e): c for e, c in s.coeffs.items()}
            return cls(data, (0, s.valuation), (inf, s.truncation))
        raise ValueError("var must be 'q' or 'p'")

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def get(self, a: int, b: int) -> Fraction:
        nq, np_ = self.truncations
        if a >= nq or b >= np_:
            raise InsufficientPrecisionError(f"coefficient {(a, b)} beyond box {self.truncations}")
        return self.coeffs.get((a, b), Q(0))

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.coeffs == other.coeffs and self.valuations == other.valuations
                and self.truncations == other.truncations)

    def agrees_with(self, other: "BiSeries") -> bool:
        lo_q = max(self.valuations[0], other.valuations[0])
        lo_p = max(self.valuations[1], other.valuations[1])
        hi_q = min(self.truncations[0], other.truncations[0])
        hi_p = min(self.truncations[1], other.truncations[1])

        def inside(k):
            return lo_q <= k[0] < hi_q and lo_p <= k[1] < hi_p

        for k, c in self.coeffs.items():
            if inside(k) and other.coeffs.get(k, Q(0)) != c:
                return False
        for k, c in other.coeffs.items():
            if inside(k) and self.coeffs.get(k, Q(0)) != c:
                return False
        return True

    def is_symmetric(self) -> bool:
        return self._check_swap(+1)

    def is_antisymmetric(self) -> bool:
        return self._check_swap(-1)

    def _check_swap(self, sign: int) -> bool:
        vq, vp = self.valuations
        nq, np_ = self.truncations
        for (a, b), c in self.coeffs.items():
            if vq <= b < nq and vp <= a < np_:
                if self.coeffs.get((b, a), Q(0)) != sign * c:
                    return False
        return True

    def swap_vars(self) -> "BiSeries":
        out = BiSeries.zero(
            (self.valuations[1], self.valuations[0]),
            (self.truncations[1], self.truncations[0]))
        out.coeffs = {(b, a): c for (a, b), c in self.coeffs.items()}
        return out

    # -- arithmetic -----------------------------------------------------

    def __neg__(self):
        out = BiSeries.zero(self.valuations, self.truncations)
        out.coeffs = {k: -c for k, c in self.coeffs.items()}
        return out

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        vq = min(self.valuations[0], other.valuations[0])
        vp = min(self.valuations[1], other.valuations[1])
        nq = min(self.truncations[0], other.truncations[0])
        np_ = min(self.truncations[1], other.truncations[1])
        data = {}
        for k, c in self.coeffs.items():
            if k[0] < nq and k[1] < np_:
                data[k] = c
        for k, c in other.coeffs.items():
            if k[0] >= nq or k[1] >= np_:
                continue
            s = data.get(k, Q(0)) + c
            if s:
                data[k] = s
            elif k in data:
                del data[k]
        out = BiSeries.zero((min(vq, nq), min(vp, np_)), (nq, np_))
        out.coeffs = data
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_q(other)
            out = BiSeries.zero(self.valuations, self.truncations)
            if c:
                out.coeffs = {k: c * v for k, v in self.coeffs.items()}
            return out
        if not isinstance(other, BiSeries):
            return NotImplemented
        vq = self.valuations[0] + other.valuations[0]
        vp = self.valuations[1] + other.valuations[1]
        nq = min(self.truncations[0] + other.valuations[0],
                 other.truncations[0] + self.valuations[0])
        np_ = min(self.truncations[1] + other.valuations[1],
                  other.truncations[1] + self.valuations[1])
        out = BiSeries.zero((min(vq, nq), min(vp, np_)), (nq, np_))
        out.coeffs = convolve_2d(self.coeffs, other.coeffs, vq, vp, nq, np_)
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined for BiSeries")
        result = BiSeries.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def truncate_box(self, truncations) -> "BiSeries":
        nq, np_ = truncations
        if nq > self.truncations[0] or np_ > self.truncations[1]:
            raise InsufficientPrecisionError("cannot extend precision by truncation")
        data = {k: c for k, c in self.coeffs.items() if k[0] < nq and k[1] < np_}
        vq, vp = self.valuations
        return BiSeries(data, (min(vq, nq), min(vp, np_)), (nq, np_))

    # -- io ---------------------------------------------------------------

    def render(self, vars=("q", "p"), max_terms: int | None = None) -> str:
        vq, vp = vars
        keys = sorted(self.coeffs, key=lambda k: (k[0] + k[1], k))
        if not keys:
            body = "0"
        else:
            parts = []
            for a, b in keys[:max_terms]:
                c = self.coeffs[(a, b)]
                factors = []
                if a:
                    factors.append(vq if a == 1 else f"{vq}^{a}")
                if b:
                    factors.append(vp if b == 1 else f"{vp}^{b}")
                mono = "*".join(factors) if factors else "1"
                if not factors:
                    term = _q_str(c)
                elif c == 1:
                    term = mono
                elif c == -1:
                    term = f"-{mono}"
                else:
                    term = f"{_q_str(c)}*{mono}"
                parts.append(term)
            body = " + ".join(parts).replace("+ -", "- ")
            if max_terms is not None and len(keys) > max_terms:
                body += " + ..."
        return body

    def __repr__(self):
        return f"BiSeries({self.render(max_terms=6)}, box={self.valuations}..{self.truncations})"

    def to_json_obj(self):
        nq, np_ = self.truncations
        return {
            "variables": ["q", "p"],
            "valuations": list(self.valuations),
            "truncations": [None if nq is inf else nq, None if np_ is inf else np_],
            "coefficients": [[a, b, _q_str(self.coeffs[(a, b)])]
                             for a, b in sorted(self.coeffs)],
        }

    @classmethod
    def from_json_obj(cls, obj):
        nq, np_ = obj["truncations"]
        return cls({(a, b): Fraction(c) for a, b, c in obj["coefficients"]},
                   tuple(obj["valuations"]),
                   (inf if nq is None else nq, inf if np_ is None else np_))

    def json_dumps(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


def substitute_power(s: PowerSeries, k: int, target_var: str = "q") -> BiSeries:
    """Place s(x^k) into the chosen variable of a bivariate series."""
    if k < 1:
        raise ValueError("power must be a positive integer")
    return BiSeries.from_univariate(s.dilate(k), target_var)


def divide_antisym_by_diff(s: BiSeries) -> BiSeries:
    """Exact division of an antisymmetric series by (q - p).

    Works pairwise on mirror terms via
    q^a p^b - q^b p^a = (q - p) * q^min(a,b) p^min(a,b) * sum_i q^i p^(n-1-i),
    n = |a-b|, so the quotient is exact.  The reliability window of the
    quotient follows from needing the whole antidiagonal a+b = const of
    the input: a coefficient of the quotient at (x, y) is certain only
    when x + y + 1 < min(N_q + v_p, N_p + v_q).
    """
    if not s.is_antisymmetric():
        raise NotAntisymmetricError("input is not antisymmetric under (q,p) swap")
    vq, vp = s.valuations
    nq, np_ = s.truncations
    seen = set()
    data = {}
    for (a0, b0), c in s.coeffs.items():
        if a0 == b0:
            raise NotAntisymmetricError(f"nonzero diagonal coefficient at {(a0, b0)}")
        key = (a0, b0) if a0 > b0 else (b0, a0)
        if key in seen:
            continue
        seen.add(key)
        a, b = key
        if a0 < b0:
            c = -c
        if not (vq <= b < nq and vp <= a < np_):
            raise NotAntisymmetricError(
                f"mirror of {(a, b)} falls outside the box; cannot pair terms")
        for i in range(a - b):
            key = (b + i, a - 1 - i)
            v = data.get(key, Q(0)) + c
            if v:
                data[key] = v
            elif key in data:
                del data[key]
    # certain-knowledge bound: full antidiagonals of the input are needed
    diag = min(nq + vp, np_ + vq) - 1
    new_nq = diag - vp
    new_np = diag - vq
    out_vq = min(vq, vp)
    out_vp = out_vq
    data = {k: c for k, c in data.items() if k[0] < new_nq and k[1] < new_np}
    for (a, b) in data:
        out_vq = min(out_vq, a)
        out_vp = min(out_vp, b)
    return BiSeries(data, (min(out_vq, new_nq), min(out_vp, new_np)), (new_nq, new_np))
