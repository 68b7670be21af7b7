"""Arithmetic of Parry numbers: Renyi expansions, beta-expansions, beta-integers.

All floating computations run under mpmath with a caller-selected decimal
precision (default 64 digits).  Quadratic bases additionally carry an exact
(u + v*sqrt(D))/w representation so that gap classification never depends on
rounding alone.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from mpmath import mp, mpf, sqrt as mpsqrt, workdps

from .errors import InvalidInputError, InvalidParamsError, PrecisionError

DEFAULT_PRECISION = 64


# ---------------------------------------------------------------------------
# Renyi expansions of unity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RenyiExpansion:
    """Eventually periodic digit sequence t_1 t_2 ... t_m (t_{m+1} ... t_{m+p})^w.

    The period of length one equal to (0,) encodes a finite (simple-Parry)
    expansion; those are accepted read-only but rejected by the substitution
    constructors.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre = tuple(int(t) for t in self.preperiod)
        per = tuple(int(t) for t in self.period)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)
        if len(per) < 1:
            raise InvalidInputError("period must have length >= 1")
        if len(pre) + len(per) == 0:
            raise InvalidInputError("empty digit sequence")
        if any(t < 0 for t in pre + per):
            raise InvalidInputError("digits must be nonnegative integers")
        if self.digit(1) < 1:
            raise InvalidInputError("t_1 = floor(beta) must be >= 1")

    @property
    def m(self) -> int:
        return len(self.preperiod)

    @property
    def p(self) -> int:
        return len(self.period)

    @property
    def is_simple(self) -> bool:
        """Finite expansion: the periodic tail is identically zero."""
        return all(t == 0 for t in self.period)

    @property
    def is_minimal(self) -> bool:
        """True iff no shorter preperiod/period encodes the same sequence."""
        m, p = self.m, self.p
        # shorter period dividing p
        for q in range(1, p):
            if p % q == 0 and all(
                self.period[i] == self.period[i % q] for i in range(p)
            ):
                return False
        # preperiod digit absorbable into the period
        if m >= 1 and self.preperiod[-1] == self.period[-1]:
            return False
        return True

    def digit(self, j: int) -> int:
        """t_j with 1-based index, unfolding the period."""
        if j < 1:
            raise InvalidInputError("digit index is 1-based")
        if j <= self.m:
            return self.preperiod[j - 1]
        return self.period[(j - self.m - 1) % self.p]

    def digits(self, count: int) -> tuple[int, ...]:
        return tuple(self.digit(j) for j in range(1, count + 1))

    def __str__(self) -> str:
        pre = " ".join(str(t) for t in self.preperiod)
        per = " ".join(str(t) for t in self.period)
        return (pre + " " if pre else "") + "(" + per + ")"

    def to_json(self) -> dict:
        return {"preperiod": list(self.preperiod), "period": list(self.period)}

    @classmethod
    def from_json(cls, obj: dict) -> "RenyiExpansion":
        return cls(tuple(obj["preperiod"]), tuple(obj["period"]))

    @classmethod
    def parse(cls, text: str) -> "RenyiExpansion":
        """Parse the textual form "t1 t2 ... (tm+1 ... tm+p)"."""
        match = re.fullmatch(r"\s*([\d\s]*?)\s*\(\s*([\d\s]+?)\s*\)\s*", text)
        if not match:
            raise InvalidInputError(f"cannot parse Renyi digits: {text!r}")
        pre = tuple(int(t) for t in match.group(1).split())
        per = tuple(int(t) for t in match.group(2).split())
        return cls(pre, per)


def parry_check(renyi: RenyiExpansion) -> tuple[bool, int | None]:
    """Parry admissibility: every proper shift is strictly below the sequence.

    Returns (ok, first_violating_shift).  Shifts are 1-based: shift j compares
    t_j t_{j+1} ... against t_1 t_2 ....  Comparing over a window of one
    preperiod plus two periods decides the order for eventually periodic
    sequences (both tails are p-periodic past index m, so agreement over a
    full extra period propagates forever).
    """
    m, p = renyi.m, renyi.p
    window = m + 2 * p + 1
    ref = renyi.digits(window + m + p)
    for j in range(2, m + p + 1):
        shifted = tuple(renyi.digit(j + i) for i in range(window))
        if shifted >= ref[:window]:
            return False, j
    return True, None


# ---------------------------------------------------------------------------
# Quadratic parameters and beta values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadraticParams:
    """The pair (a, b) with d_beta(1) = a b^w and a-1 >= b >= 1."""

    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise InvalidParamsError("a and b must be integers")
        if not (self.a - 1 >= self.b >= 1):
            raise InvalidParamsError(
                f"require a-1 >= b >= 1, got a={self.a}, b={self.b}"
            )

    @property
    def is_sturmian(self) -> bool:
        """Boundary case b = a-1: the fixed point is a Sturmian word."""
        return self.b == self.a - 1

    def exact_beta(self) -> tuple[int, int, int, int]:
        """beta = (u + v*sqrt(D)) / w as the integer quadruple (u, v, D, w)."""
        a, b = self.a, self.b
        return (a + 1, 1, (a + 1) ** 2 - 4 * (a - b), 2)


@dataclass(frozen=True)
class BetaValue:
    """Numeric beta at a given working precision, with exact quadratic data."""

    value: mpf
    precision: int
    exact: tuple[int, int, int, int] | None = field(default=None)

    def __float__(self) -> float:
        return float(self.value)


def beta_of(params: QuadraticParams, precision: int = DEFAULT_PRECISION) -> BetaValue:
    """Larger root of x^2 - (a+1)x + (a-b)."""
    u, v, d, w = params.exact_beta()
    with workdps(precision):
        value = (mpf(u) + v * mpsqrt(d)) / w
    return BetaValue(value=value, precision=precision, exact=(u, v, d, w))


def renyi_of_quadratic(params: QuadraticParams) -> RenyiExpansion:
    """d_beta(1) = a b^w."""
    return RenyiExpansion((params.a,), (params.b,))


def beta_of_renyi(renyi: RenyiExpansion, precision: int = DEFAULT_PRECISION) -> BetaValue:
    """Numeric beta solving sum t_i beta^(-i) = 1 for a valid expansion.

    For m = p = 1 the exact quadratic representation is attached; otherwise
    the root is located by bisection in (t_1, t_1 + 1].
    """
    ok, shift = parry_check(renyi)
    if not ok:
        raise InvalidInputError(f"digits fail the Parry criterion at shift {shift}")
    if renyi.m == 1 and renyi.p == 1:
        return beta_of(QuadraticParams(renyi.preperiod[0], renyi.period[0]), precision)
    t1 = renyi.digit(1)
    with workdps(precision + 10):
        def defect(x):
            return _unity_sum(renyi, x) - 1

        lo, hi = mpf(t1), mpf(t1 + 1)
        # defect is decreasing in beta; bisect to full precision
        for _ in range(int(3.5 * (precision + 10)) + 20):
            mid = (lo + hi) / 2
            if defect(mid) > 0:
                lo = mid
            else:
                hi = mid
        value = (lo + hi) / 2
    with workdps(precision):
        value = +value
    return BetaValue(value=value, precision=precision, exact=None)


def _unity_sum(renyi: RenyiExpansion, beta) -> mpf:
    """sum_{i>=1} t_i beta^(-i) via geometric summation of the periodic tail."""
    return _shifted_tail_sum(renyi, 0, beta)


def _shifted_tail_sum(renyi: RenyiExpansion, k: int, beta) -> mpf:
    """sum_{i>=1} t_{i+k} beta^(-i) in closed form."""
    m, p = renyi.m, renyi.p
    inv = 1 / mpf(beta)
    total = mpf(0)
    # preperiod leftover: indices j = k+1 .. m
    power = inv
    for j in range(k + 1, m + 1):
        total += renyi.digit(j) * power
        power *= inv
    # aligned periodic tail starting at index j0
    j0 = max(k + 1, m + 1)
    offset = (j0 - m - 1) % p
    one_period = mpf(0)
    ppow = mpf(1)
    for l in range(p):
        one_period += renyi.period[(offset + l) % p] * ppow
        ppow *= inv
    e0 = j0 - k
    total += (inv ** e0) * one_period / (1 - inv ** p)
    return total


def unity_defect(renyi: RenyiExpansion, beta: BetaValue) -> mpf:
    """|1 - sum t_i beta^(-i)| at the beta value's working precision."""
    with workdps(beta.precision):
        return abs(1 - _unity_sum(renyi, beta.value))


# ---------------------------------------------------------------------------
# Beta-expansions
# ---------------------------------------------------------------------------

def beta_expand(x, beta: BetaValue, digit_count: int) -> tuple[int, tuple[int, ...]]:
    """Greedy expansion of x >= 0: returns (k, digits) with digits x_k..x_{k-digit_count+1}.

    x = sum digits[i] * beta^(k-i) + remainder, each digit in {0..ceil(beta)-1}.
    Produced by iterating T_beta(y) = beta*y - floor(beta*y) on x / beta^(k+1).
    """
    if digit_count < 1:
        raise InvalidInputError("digit_count must be >= 1")
    with workdps(beta.precision):
        xv = mpf(x)
        if xv < 0:
            raise InvalidInputError("x must be nonnegative")
        if xv == 0:
            return 0, (0,) * digit_count
        bv = beta.value
        k = 0
        while bv ** (k + 1) <= xv:
            k += 1
        y = xv / bv ** (k + 1)
        # floor with a guard at half the working precision: beta-integers hit
        # exact integer iterates that rounding may land a hair below
        guard = mpf(10) ** (-beta.precision // 2)
        digits = []
        for _ in range(digit_count):
            y = bv * y
            d = int(mp.floor(y + guard))
            y = max(y - d, mpf(0))
            digits.append(d)
        return k, tuple(digits)


def beta_reconstruct(k: int, digits, beta: BetaValue) -> mpf:
    """sum digits[i] * beta^(k-i); inverse of beta_expand up to truncation."""
    with workdps(beta.precision):
        total = mpf(0)
        for i, d in enumerate(digits):
            total += d * beta.value ** (k - i)
        return total


# ---------------------------------------------------------------------------
# Gap distances and beta-integers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GapDistances:
    """Distances Delta_0 .. Delta_{m+p-1} between consecutive beta-integers."""

    values: tuple[mpf, ...]
    precision: int

    def __len__(self) -> int:
        return len(self.values)

    def classify(self, gap, tolerance=mpf("1e-9")) -> int:
        """Index k of the distance matching gap within tolerance."""
        best, best_err = None, None
        for k, delta in enumerate(self.values):
            err = abs(gap - delta)
            if best_err is None or err < best_err:
                best, best_err = k, err
        if best_err is None or best_err > tolerance:
            raise PrecisionError(
                f"gap {gap} matches no distance within {tolerance}; "
                "increase working precision"
            )
        return best


def gap_distances(renyi: RenyiExpansion, beta: BetaValue) -> GapDistances:
    """Delta_k = sum_{i>=1} t_{i+k} beta^(-i) for k = 0 .. m+p-1."""
    with workdps(beta.precision):
        values = [
            _shifted_tail_sum(renyi, k, beta.value) for k in range(renyi.m + renyi.p)
        ]
        # Delta_0 is 1 by the definition of the expansion of unity; the
        # computed sum only confirms beta and the digits are consistent
        if abs(values[0] - 1) > mpf(10) ** (-beta.precision // 2):
            raise PrecisionError(
                "digit sequence does not sum to unity at this beta/precision"
            )
        values[0] = mpf(1)
    return GapDistances(values=tuple(values), precision=beta.precision)


def _admissible_strings(renyi: RenyiExpansion, length: int):
    """All Parry-admissible digit strings of exactly `length` digits, leading
    digit nonzero.

    A string x_{k-1}..x_0 is admissible iff every suffix, read from its most
    significant digit and padded with zeros, is strictly below d_beta(1).
    The DFS carries the set of suffix start positions still digit-for-digit
    equal to the expansion prefix; a digit above any of their next reference
    digits kills the branch.
    """
    results = []
    t = renyi.digit

    def step(prefix, active):
        depth = len(prefix)
        if depth == length:
            # every undecided suffix continues with zeros, which fall below
            # the (infinite, not eventually zero) tail of d_beta(1)
            results.append(tuple(prefix))
            return
        top = min([t(depth - s + 1) for s in active] + [t(1)])
        lo = 1 if depth == 0 else 0
        for c in range(lo, top + 1):
            nxt = [s for s in active if c == t(depth - s + 1)]
            if c == t(1):
                nxt.append(depth)
            step(prefix + [c], nxt)

    step([], [])
    return results


def beta_integers(
    renyi: RenyiExpansion, beta: BetaValue, count: int,
    tolerance=mpf("1e-9"),
) -> tuple[list[mpf], str]:
    """First `count` nonnegative beta-integers and their gap letter sequence.

    Enumerates Parry-admissible integer digit strings in length order,
    evaluates them at working precision, sorts, and codes each gap by the
    index of the matching Delta_k.
    """
    if count < 2:
        raise InvalidInputError("count must be >= 2")
    ok, shift = parry_check(renyi)
    if not ok:
        raise InvalidInputError(f"digits fail the Parry criterion at shift {shift}")
    if renyi.is_simple:
        raise InvalidInputError("simple (finite) expansions are not supported here")
    deltas = gap_distances(renyi, beta)
    with workdps(beta.precision):
        bv = beta.value
        values = [mpf(0)]
        length = 1
        while len(values) < count:
            for digits in _admissible_strings(renyi, length):
                acc = mpf(0)
                for d in digits:
                    acc = acc * bv + d
                values.append(acc)
            length += 1
        values.sort()
        values = values[:count]
        letters = "".join(
            _letter(deltas.classify(values[i + 1] - values[i], tolerance))
            for i in range(count - 1)
        )
    return values, letters


def _letter(index: int) -> str:
    return chr(ord("0") + index)
