"""Factor complexity of the binary fixed points: brute force and closed form.

The closed form integrates the first difference, which equals 2 exactly on
the intervals (|V^(k)|, |U^(k)|] spanned by the towers of total bispecial
factors V^(k) and maximal left special factors U^(k), and 1 elsewhere.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .beta_numeration import QuadraticParams
from .errors import UnsupportedVariantError
from .language import FactorLanguage
from .substitution import Substitution, quadratic_substitution

DEFAULT_MATERIALIZE_CAP = 10 ** 6


def t_map(word: str, params: QuadraticParams) -> str:
    """The language-preserving map w -> 0^b 1 phi(w) 0^b."""
    phi = quadratic_substitution(params)
    zeros = "0" * params.b
    return zeros + "1" + phi.apply(word) + zeros


def _t_counts(zeros: int, ones: int, params: QuadraticParams) -> tuple[int, int]:
    """Letter counts of T(w) from the counts of w (exact, any size)."""
    a, b = params.a, params.b
    return 2 * b + a * zeros + b * ones, 1 + zeros + ones


@dataclass
class UVTower:
    """Towers U^(n), V^(n) with exact lengths far past materialization.

    U^(1) = 0^(a-1), V^(1) = 0^b, and both towers grow by the map T.
    Words are materialized while their length stays below `materialize_cap`;
    lengths continue exactly as arbitrary-size integers via the letter-count
    recurrence of T.
    """

    params: QuadraticParams
    depth: int
    materialize_cap: int = DEFAULT_MATERIALIZE_CAP
    u_words: list[str] = field(default_factory=list)
    v_words: list[str] = field(default_factory=list)
    u_counts: list[tuple[int, int]] = field(default_factory=list)
    v_counts: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        params = self.params
        if params.is_sturmian:
            raise UnsupportedVariantError(
                "the U/V towers degenerate on the Sturmian boundary b = a-1"
            )
        self.u_counts = [(params.a - 1, 0)]
        self.v_counts = [(params.b, 0)]
        self.u_words = ["0" * (params.a - 1)]
        self.v_words = ["0" * params.b]
        for _ in range(1, self.depth):
            self.u_counts.append(_t_counts(*self.u_counts[-1], params))
            self.v_counts.append(_t_counts(*self.v_counts[-1], params))
            if len(self.u_words) == len(self.u_counts) - 1 \
                    and sum(self.u_counts[-1]) <= self.materialize_cap:
                self.u_words.append(t_map(self.u_words[-1], params))
            if len(self.v_words) == len(self.v_counts) - 1 \
                    and sum(self.v_counts[-1]) <= self.materialize_cap:
                self.v_words.append(t_map(self.v_words[-1], params))

    def u_length(self, n: int) -> int:
        """|U^(n)|, 1-based, exact."""
        z, o = self.u_counts[n - 1]
        return z + o

    def v_length(self, n: int) -> int:
        """|V^(n)|, 1-based, exact."""
        z, o = self.v_counts[n - 1]
        return z + o

    def u_word(self, n: int) -> str:
        return self.u_words[n - 1]

    def v_word(self, n: int) -> str:
        return self.v_words[n - 1]

    @property
    def materialized_depth(self) -> int:
        return min(len(self.u_words), len(self.v_words))

    def lengths_json(self) -> dict:
        """Lengths as decimal strings (they outgrow doubles quickly)."""
        return {
            "schema": 1,
            "a": self.params.a,
            "b": self.params.b,
            "u_lengths": [str(self.u_length(n)) for n in range(1, self.depth + 1)],
            "v_lengths": [str(self.v_length(n)) for n in range(1, self.depth + 1)],
        }


def uv_tower(params: QuadraticParams, depth: int,
             materialize_cap: int = DEFAULT_MATERIALIZE_CAP) -> UVTower:
    return UVTower(params=params, depth=depth, materialize_cap=materialize_cap)


def tower_intervals(params: QuadraticParams, n_max: int):
    """Pairs (|V^(k)|, |U^(k)|) for every k with |V^(k)| < n_max."""
    pairs = []
    u = (params.a - 1, 0)
    v = (params.b, 0)
    while sum(v) < n_max:
        pairs.append((sum(v), sum(u)))
        u = _t_counts(*u, params)
        v = _t_counts(*v, params)
    return pairs


def closed_form_delta_c(params: QuadraticParams, n_max: int) -> list[int]:
    """Delta C(n) for n = 1 .. n_max: 2 on each (|V^(k)|, |U^(k)|], else 1."""
    if params.is_sturmian:
        raise UnsupportedVariantError("closed form applies only for a-1 > b")
    delta = [1] * (n_max + 1)
    for v_len, u_len in tower_intervals(params, n_max + 1):
        for n in range(v_len + 1, min(u_len, n_max) + 1):
            delta[n] = 2
    return delta[1:]


@dataclass
class ComplexityTable:
    """Per-length C(n) and Delta C(n) with the provenance of each value."""

    rows: list[dict]

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=["n", "C", "deltaC", "source"])
        writer.writeheader()
        writer.writerows(self.rows)
        return out.getvalue()

    def to_json(self) -> dict:
        return {"schema": 1, "rows": self.rows}

    def c_values(self) -> list[int]:
        return [row["C"] for row in self.rows]


def factor_complexity(
    subject: Substitution | QuadraticParams,
    n_max: int,
    mode: str = "oracle",
) -> ComplexityTable:
    """C(n) for 1 <= n <= n_max by brute force or by the closed form.

    The closed form needs quadratic non-Sturmian parameters and integrates
    Delta C from C(1) = 2.
    """
    if mode == "oracle":
        sub = subject if isinstance(subject, Substitution) else \
            quadratic_substitution(subject)
        lang = FactorLanguage(sub)
        rows = []
        counts = [lang.complexity(n) for n in range(1, n_max + 2)]
        for n in range(1, n_max + 1):
            rows.append({
                "n": n,
                "C": counts[n - 1],
                "deltaC": counts[n] - counts[n - 1],
                "source": "oracle",
            })
        return ComplexityTable(rows=rows)
    if mode != "closed_form":
        raise ValueError(f"unknown mode {mode!r}")
    if not isinstance(subject, QuadraticParams):
        raise UnsupportedVariantError(
            "closed-form complexity is defined only for quadratic parameters"
        )
    delta = closed_form_delta_c(subject, n_max)
    rows = []
    c = 2
    for n in range(1, n_max + 1):
        rows.append({"n": n, "C": c, "deltaC": delta[n - 1], "source": "closed_form"})
        c += delta[n - 1]
    return ComplexityTable(rows=rows)
