"""Palindromic structure of the binary fixed points.

Covers palindromic factors and their extensions, centers, the towers of
maximal and two-extension palindromes, infinite palindromic branches, and
the closed-form palindromic complexity, which splits into four cases by the
parities of (a, b).  The four cases live in a data table so they can be
audited side by side.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .beta_numeration import QuadraticParams, RenyiExpansion
from .complexity import (
    UVTower,
    _t_counts,
    closed_form_delta_c,
    t_map,
    tower_intervals,
    uv_tower,
)
from .errors import InvalidInputError, UnsupportedVariantError, VerificationError
from .language import FactorLanguage
from .substitution import Substitution, quadratic_substitution

EPSILON = "e"  # center marker for even-length palindromes


# ---------------------------------------------------------------------------
# Basic palindrome operations
# ---------------------------------------------------------------------------

def is_palindrome(word: str) -> bool:
    return word == word[::-1]


def center_of(word: str) -> str:
    """Middle letter of an odd palindrome, EPSILON for even length."""
    if not is_palindrome(word):
        raise InvalidInputError(f"{word!r} is not a palindrome")
    if len(word) % 2 == 0:
        return EPSILON
    return word[len(word) // 2]


@dataclass(frozen=True)
class PalindromeRecord:
    """A palindromic factor with its center and palindromic-extension set."""

    word: str
    center: str
    extensions: frozenset[str]

    @property
    def is_maximal(self) -> bool:
        return len(self.extensions) == 0


def palindromic_extensions(word: str, lang: FactorLanguage) -> frozenset[str]:
    """Letters z with z word z in the language."""
    if not is_palindrome(word):
        raise InvalidInputError(f"{word!r} is not a palindrome")
    if not lang.contains(word):
        raise InvalidInputError(f"{word!r} is not a factor")
    return frozenset(
        z for z in ("0", "1") if lang.contains(z + word + z)
    )


def palindromes_of_length(lang: FactorLanguage, n: int) -> set[PalindromeRecord]:
    """All palindromic factors of length n, extension sets included."""
    longer = lang.factors(n + 2)
    records = set()
    for w in lang.factors(n):
        if not is_palindrome(w):
            continue
        ext = frozenset(z for z in ("0", "1") if z + w + z in longer)
        records.add(PalindromeRecord(word=w, center=center_of(w), extensions=ext))
    return records


def t_map_palindrome_check(word: str, params: QuadraticParams,
                           lang: FactorLanguage) -> dict:
    """Report for the palindrome-preservation property of T.

    For any factor p: p is a palindrome iff T(p) is, and both have the same
    palindromic-extension set.
    """
    if not lang.contains(word):
        raise InvalidInputError(f"{word!r} is not a factor")
    image = t_map(word, params)
    report = {
        "word": word,
        "t_word": image,
        "is_pal_p": is_palindrome(word),
        "is_pal_Tp": is_palindrome(image),
    }
    if report["is_pal_p"]:
        report["ext_p"] = palindromic_extensions(word, lang)
        report["ext_Tp"] = palindromic_extensions(image, lang)
    return report


# ---------------------------------------------------------------------------
# Centers of the towers
# ---------------------------------------------------------------------------

def center_evolution(center: str, params: QuadraticParams) -> str:
    """Center of T(p) given the center of p."""
    if center == EPSILON:
        return "1"
    if center == "0":
        return "0" if params.a % 2 == 1 else EPSILON
    if center == "1":
        return "0" if params.b % 2 == 1 else EPSILON
    raise InvalidInputError(f"unknown center {center!r}")


def _parity_key(params: QuadraticParams) -> tuple[int, int]:
    return params.a % 2, params.b % 2


def expected_v_center(params: QuadraticParams, n: int) -> str:
    """Center of V^(n) per parity case."""
    a_par, b_par = _parity_key(params)
    if b_par == 0:
        return "1" if n % 2 == 0 else EPSILON
    if a_par == 0:  # b odd, a even
        return ("0", EPSILON, "1")[(n - 1) % 3]
    return "0"  # both odd


def expected_u_center(params: QuadraticParams, n: int) -> str:
    """Center of U^(n) per parity case."""
    a_par, b_par = _parity_key(params)
    if b_par == 0 and a_par == 1:
        return "1" if n % 2 == 0 else EPSILON
    if b_par == 0 and a_par == 0:
        if n == 1:
            return "0"
        return EPSILON if n % 2 == 0 else "1"
    if b_par == 1 and a_par == 0:
        return ("0", EPSILON, "1")[(n - 1) % 3]
    # both odd
    if n == 1:
        return EPSILON
    if n == 2:
        return "1"
    return "0"


def v_containment_step(params: QuadraticParams) -> int:
    """d such that V^(n) is a central factor of V^(n+d)."""
    a_par, b_par = _parity_key(params)
    if b_par == 0:
        return 2
    if a_par == 0:
        return 3
    return 1


def is_central_factor(inner: str, outer: str) -> bool:
    """inner sits at the exact center of outer (same-parity lengths)."""
    diff = len(outer) - len(inner)
    if diff < 0 or diff % 2 != 0:
        return False
    half = diff // 2
    return outer[half : half + len(inner)] == inner


def classify_tower_centers(params: QuadraticParams, depth: int,
                           materialize_cap: int | None = None) -> dict:
    """Observed vs expected centers of the materialized tower words."""
    if params.is_sturmian:
        raise UnsupportedVariantError("towers are undefined for b = a-1")
    kwargs = {} if materialize_cap is None else {"materialize_cap": materialize_cap}
    tower = uv_tower(params, depth, **kwargs)
    rows = []
    step = v_containment_step(params)
    for n in range(1, tower.materialized_depth + 1):
        u, v = tower.u_word(n), tower.v_word(n)
        row = {
            "n": n,
            "u_center": center_of(u),
            "v_center": center_of(v),
            "u_expected": expected_u_center(params, n),
            "v_expected": expected_v_center(params, n),
        }
        if n + step <= tower.materialized_depth:
            row["v_in_later_v"] = is_central_factor(v, tower.v_word(n + step))
        rows.append(row)
    return {"params": (params.a, params.b), "rows": rows}


# ---------------------------------------------------------------------------
# Infinite palindromic branches
# ---------------------------------------------------------------------------

@dataclass
class BranchSpec:
    """Budgeted surrogate for one infinite palindromic branch.

    `generator` names the tower whose bidirectional limit is the branch:
    ("V", c, o) for the subsequence V^(c*k+o), or ("W",) for the tower
    W^(1) = 0, W^(n) = T(W^(n-1)).
    """

    center: str
    generator: tuple
    central_factors: list[str] = field(default_factory=list)
    verified: bool = False


def _branch_plan(params: QuadraticParams) -> list[tuple[str, tuple]]:
    a_par, b_par = _parity_key(params)
    if b_par == 0 and a_par == 1:
        return [(EPSILON, ("V", 2, -1)), ("1", ("V", 2, 0)), ("0", ("W",))]
    if b_par == 0 and a_par == 0:
        return [(EPSILON, ("V", 2, -1)), ("1", ("V", 2, 0))]
    if b_par == 1 and a_par == 0:
        return [("0", ("V", 3, -2)), (EPSILON, ("V", 3, -1)), ("1", ("V", 3, 0))]
    return [("0", ("V", 1, 0))]


def infinite_branches(params: QuadraticParams,
                      length_budget: int = 10 ** 4) -> list[BranchSpec]:
    """Branch specs for the applicable parity case, membership-verified.

    Central factors are materialized until their length exceeds the budget
    and each is checked to be a palindromic factor with the declared center
    and a central factor of its successor.
    """
    if params.is_sturmian:
        raise UnsupportedVariantError("branch analysis requires a-1 > b")
    lang = FactorLanguage(quadratic_substitution(params))
    specs = []
    for center, generator in _branch_plan(params):
        factors = _generator_words(params, generator, length_budget)
        ok = True
        for i, w in enumerate(factors):
            if not (is_palindrome(w) and center_of(w) == center
                    and lang.contains(w)):
                ok = False
                break
            if i > 0 and not is_central_factor(factors[i - 1], w):
                ok = False
                break
        specs.append(BranchSpec(center=center, generator=generator,
                                central_factors=factors, verified=ok))
    return specs


def _generator_words(params: QuadraticParams, generator: tuple,
                     length_budget: int) -> list[str]:
    if generator[0] == "W":
        words = []
        w = "0"
        while len(w) <= length_budget:
            words.append(w)
            w = t_map(w, params)
        return words
    _, coef, off = generator
    # materialize the V tower up to the budget, then take the subsequence
    words = ["0" * params.b]
    while len(words[-1]) <= length_budget:
        words.append(t_map(words[-1], params))
    picked = []
    k = 1
    while True:
        idx = coef * k + off
        if idx < 1:
            k += 1
            continue
        if idx > len(words) or len(words[idx - 1]) > length_budget:
            break
        picked.append(words[idx - 1])
        k += 1
    return picked


# ---------------------------------------------------------------------------
# Reversal closure
# ---------------------------------------------------------------------------

def reversal_closure_probe(substitution: Substitution, n_max: int) -> dict:
    """Check reversal-invariance of the factor sets up to n_max.

    Returns {"closed_up_to": n, "witness": w or None}; the witness is a factor
    whose reversal is not a factor, at the first length where one exists.
    """
    lang = FactorLanguage(substitution)
    for n in range(1, n_max + 1):
        factors = lang.factors(n)
        for w in sorted(factors):
            if w[::-1] not in factors:
                return {"closed_up_to": n - 1, "witness": w}
    return {"closed_up_to": n_max, "witness": None}


# ---------------------------------------------------------------------------
# Closed-form palindromic complexity: the four parity cases as data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UptoClause:
    """value applies when n <= bound (bound is "a-1" or "b")."""

    bound: str
    value: int


@dataclass(frozen=True)
class IntervalClause:
    """value applies when |V^(vc*k+vo)| < n <= |U^(uc*k+uo)| for some k.

    k runs over k >= k_min; a (mod, residue) pair in `forbid` excludes the
    k with k % mod == residue.
    """

    vc: int
    vo: int
    uc: int
    uo: int
    value: int
    k_min: int = 1
    forbid: tuple[int, int] | None = None


@dataclass(frozen=True)
class ParityRules:
    even: tuple
    even_default: int
    odd: tuple
    odd_default: int


# Keyed by (a mod 2, b mod 2).
PARITY_CASES: dict[tuple[int, int], ParityRules] = {
    # b even, a odd
    (1, 0): ParityRules(
        even=(IntervalClause(2, -1, 2, -1, 2),),
        even_default=1,
        odd=(IntervalClause(2, 0, 2, 0, 3),),
        odd_default=2,
    ),
    # both even
    (0, 0): ParityRules(
        even=(IntervalClause(2, -1, 2, 0, 2),),
        even_default=1,
        odd=(UptoClause("a-1", 2), IntervalClause(2, 0, 2, 1, 2)),
        odd_default=1,
    ),
    # b odd, a even
    (0, 1): ParityRules(
        even=(IntervalClause(3, -1, 3, -1, 2),),
        even_default=1,
        odd=(IntervalClause(1, 0, 1, 0, 3, forbid=(3, 2)),),
        odd_default=2,
    ),
    # both odd
    (1, 1): ParityRules(
        even=(UptoClause("a-1", 1),),
        even_default=0,
        odd=(UptoClause("b", 2), IntervalClause(1, 0, 1, 0, 4, k_min=2)),
        odd_default=3,
    ),
}


class _TowerLengths:
    """Exact |U^(n)|, |V^(n)| grown on demand."""

    def __init__(self, params: QuadraticParams):
        self.params = params
        self.u = [(params.a - 1, 0)]
        self.v = [(params.b, 0)]

    def _grow(self, index: int):
        while len(self.u) < index:
            self.u.append(_t_counts(*self.u[-1], self.params))
            self.v.append(_t_counts(*self.v[-1], self.params))

    def u_len(self, index: int) -> int:
        self._grow(index)
        return sum(self.u[index - 1])

    def v_len(self, index: int) -> int:
        self._grow(index)
        return sum(self.v[index - 1])


def _clause_matches(clause, n: int, params: QuadraticParams,
                    lengths: _TowerLengths) -> bool:
    if isinstance(clause, UptoClause):
        bound = params.a - 1 if clause.bound == "a-1" else params.b
        return n <= bound
    k = clause.k_min
    while True:
        if clause.forbid and k % clause.forbid[0] == clause.forbid[1]:
            k += 1
            continue
        v_idx = clause.vc * k + clause.vo
        u_idx = clause.uc * k + clause.uo
        if v_idx < 1:
            k += 1
            continue
        v_len = lengths.v_len(v_idx)
        if v_len >= n:
            return False
        if n <= lengths.u_len(u_idx):
            return True
        k += 1


def closed_form_p(params: QuadraticParams, n_max: int) -> list[int]:
    """P(n) for 0 <= n <= n_max from the parity-case table."""
    if params.is_sturmian:
        raise UnsupportedVariantError("closed form applies only for a-1 > b")
    rules = PARITY_CASES[_parity_key(params)]
    lengths = _TowerLengths(params)
    values = []
    for n in range(n_max + 1):
        clauses, default = (
            (rules.even, rules.even_default) if n % 2 == 0
            else (rules.odd, rules.odd_default)
        )
        value = default
        for clause in clauses:
            if _clause_matches(clause, n, params, lengths):
                value = clause.value
                break
        values.append(value)
    return values


@dataclass
class PalindromeTable:
    """P(n) per length with classification counts and provenance."""

    rows: list[dict]

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(
            out, fieldnames=["n", "P", "maximal_count", "two_ext_count", "source"]
        )
        writer.writeheader()
        writer.writerows(self.rows)
        return out.getvalue()

    def to_json(self) -> dict:
        return {"schema": 1, "rows": self.rows}

    def p_values(self) -> list[int]:
        return [row["P"] for row in self.rows]


def palindromic_complexity(
    subject: Substitution | QuadraticParams,
    n_max: int,
    mode: str = "oracle",
) -> PalindromeTable:
    """P(n) for 0 <= n <= n_max by enumeration or by the closed form."""
    if mode == "oracle":
        sub = subject if isinstance(subject, Substitution) else \
            quadratic_substitution(subject)
        lang = FactorLanguage(sub)
        rows = []
        for n in range(n_max + 1):
            records = palindromes_of_length(lang, n)
            rows.append({
                "n": n,
                "P": len(records),
                "maximal_count": sum(1 for r in records if r.is_maximal),
                "two_ext_count": sum(1 for r in records if len(r.extensions) == 2),
                "source": "oracle",
            })
        return PalindromeTable(rows=rows)
    if mode != "closed_form":
        raise ValueError(f"unknown mode {mode!r}")
    if not isinstance(subject, QuadraticParams):
        raise UnsupportedVariantError(
            "closed-form palindromic complexity needs quadratic parameters"
        )
    values = closed_form_p(subject, n_max)
    u_lengths, v_lengths = set(), set()
    for v_len, u_len in tower_intervals(subject, n_max + 1):
        v_lengths.add(v_len)
        u_lengths.add(u_len)
    rows = []
    for n in range(n_max + 1):
        rows.append({
            "n": n,
            "P": values[n],
            "maximal_count": 1 if n in u_lengths else 0,
            "two_ext_count": 1 if n in v_lengths else 0,
            "source": "closed_form",
        })
    return PalindromeTable(rows=rows)


# ---------------------------------------------------------------------------
# Identity suite
# ---------------------------------------------------------------------------

def verify_identities(params: QuadraticParams, n_max: int) -> dict:
    """Check the palindromic/factor-complexity identities with oracle values.

    Verifies, for 1 <= n <= n_max:
      * P(n+1) + P(n) = Delta C(n) + 2
      * P(n+2) - P(n) = +1 at n = |V^(k)|, -1 at n = |U^(k)|, 0 otherwise
      * Delta^2 C(n) = P(n+2) - P(n)
    Raises VerificationError with a context dump on the first violation.
    """
    if params.is_sturmian:
        raise UnsupportedVariantError("identity suite requires a-1 > b")
    lang = FactorLanguage(quadratic_substitution(params))
    c = [lang.complexity(n) for n in range(0, n_max + 4)]
    p = [len(palindromes_of_length(lang, n)) for n in range(0, n_max + 3)]
    delta = [c[n + 1] - c[n] for n in range(0, n_max + 3)]
    v_lengths, u_lengths = set(), set()
    for v_len, u_len in tower_intervals(params, n_max + 1):
        v_lengths.add(v_len)
        u_lengths.add(u_len)

    def fail(name, n, expected, actual):
        raise VerificationError(
            f"{name} violated at n={n}: expected {expected}, got {actual}",
            context={
                "params": (params.a, params.b), "n": n, "identity": name,
                "expected": expected, "actual": actual,
                "C": c[: n_max + 3], "P": p[: n_max + 3],
            },
        )

    for n in range(1, n_max + 1):
        lhs = p[n + 1] + p[n]
        rhs = delta[n] + 2
        if lhs != rhs:
            fail("P(n+1)+P(n)=deltaC(n)+2", n, rhs, lhs)
        jump = p[n + 2] - p[n]
        expected = 1 if n in v_lengths else (-1 if n in u_lengths else 0)
        if jump != expected:
            fail("P(n+2)-P(n) tower rule", n, expected, jump)
        if delta[n + 1] - delta[n] != jump:
            fail("delta^2 C(n)=P(n+2)-P(n)", n, jump, delta[n + 1] - delta[n])
    return {
        "params": (params.a, params.b),
        "n_max": n_max,
        "checked": 3 * n_max,
        "ok": True,
    }
