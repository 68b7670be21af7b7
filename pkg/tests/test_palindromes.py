import random

import pytest

from betawords import (
    EPSILON,
    FactorLanguage,
    InvalidInputError,
    QuadraticParams,
    RenyiExpansion,
    UnsupportedVariantError,
    center_evolution,
    center_of,
    classify_tower_centers,
    closed_form_p,
    infinite_branches,
    palindromes_of_length,
    palindromic_complexity,
    palindromic_extensions,
    parry_substitution,
    quadratic_substitution,
    reversal_closure_probe,
    t_map,
    t_map_palindrome_check,
    uv_tower,
    verify_identities,
)

P31 = QuadraticParams(3, 1)


@pytest.fixture(scope="module")
def lang31():
    return FactorLanguage(quadratic_substitution(P31))


class TestCenters:
    def test_examples(self):
        assert center_of("0100010") == "0"
        assert center_of("00") == EPSILON
        assert center_of("1") == "1"

    def test_non_palindrome_rejected(self):
        with pytest.raises(InvalidInputError):
            center_of("01")

    def test_evolution_both_odd(self):
        assert [center_evolution(c, P31) for c in (EPSILON, "0", "1")] == \
            ["1", "0", "0"]

    def test_evolution_both_even(self):
        params = QuadraticParams(4, 2)
        assert [center_evolution(c, params) for c in (EPSILON, "0", "1")] == \
            ["1", EPSILON, EPSILON]

    def test_evolution_matches_t_map(self, lang31):
        # iterate on actual palindromes and compare with the symbolic map
        for seed in ("0", "1", "00", "010"):
            word, center = seed, center_of(seed)
            for _ in range(3):
                word = t_map(word, P31)
                center = center_evolution(center, P31)
                assert center_of(word) == center

    def test_evolution_cycle_lengths(self):
        # period 2 for b even, 3 for b odd & a even, fixed point 0 both odd
        def orbit(params):
            seen, c = [], "0" if params.a % 2 else EPSILON
            for _ in range(6):
                seen.append(c)
                c = center_evolution(c, params)
            return seen

        both_odd = orbit(QuadraticParams(3, 1))
        assert set(both_odd[1:]) == {"0"}
        b_even = [center_evolution(c, QuadraticParams(5, 2)) for c in (EPSILON, "1")]
        assert b_even == ["1", EPSILON]  # eps <-> 1 with period two
        a_even_b_odd = QuadraticParams(4, 1)
        c = "0"
        cycle = []
        for _ in range(4):
            c = center_evolution(c, a_even_b_odd)
            cycle.append(c)
        assert cycle == [EPSILON, "1", "0", EPSILON]


class TestExtensions:
    def test_v_word_has_two(self, lang31):
        assert palindromic_extensions("0", lang31) == frozenset({"0", "1"})

    def test_u_word_is_maximal(self, lang31):
        assert palindromic_extensions("00", lang31) == frozenset()

    def test_ordinary_palindrome_has_one(self, lang31):
        assert palindromic_extensions("010", lang31) == frozenset({"0"})

    def test_non_factor_rejected(self, lang31):
        with pytest.raises(InvalidInputError):
            palindromic_extensions("11", lang31)

    def test_non_palindrome_rejected(self, lang31):
        with pytest.raises(InvalidInputError):
            palindromic_extensions("01", lang31)

    @pytest.mark.parametrize("a,b", [(3, 1), (4, 2), (4, 1), (5, 2)])
    def test_trichotomy(self, a, b):
        params = QuadraticParams(a, b)
        lang = FactorLanguage(quadratic_substitution(params))
        tower = uv_tower(params, 8)
        u_words = {tower.u_word(n) for n in range(1, tower.materialized_depth + 1)}
        v_words = {tower.v_word(n) for n in range(1, tower.materialized_depth + 1)}
        for n in range(0, 61):
            for record in palindromes_of_length(lang, n):
                if record.word in u_words:
                    assert record.extensions == frozenset()
                elif record.word in v_words:
                    assert record.extensions == frozenset({"0", "1"})
                elif n > 0:
                    assert len(record.extensions) == 1


class TestTMapPreservation:
    def test_palindrome_preserved(self, lang31):
        report = t_map_palindrome_check("0", P31, lang31)
        assert report["is_pal_p"] and report["is_pal_Tp"]
        assert report["ext_p"] == report["ext_Tp"] == frozenset({"0", "1"})

    def test_non_palindrome_stays_non_palindrome(self, lang31):
        report = t_map_palindrome_check("01", P31, lang31)
        assert not report["is_pal_p"] and not report["is_pal_Tp"]

    def test_maximal_stays_maximal(self, lang31):
        report = t_map_palindrome_check("00", P31, lang31)
        assert report["ext_p"] == report["ext_Tp"] == frozenset()

    @pytest.mark.parametrize("a,b", [(3, 1), (4, 2), (4, 1)])
    def test_random_factors(self, a, b):
        params = QuadraticParams(a, b)
        lang = FactorLanguage(quadratic_substitution(params))
        rng = random.Random(100 * a + b)
        for _ in range(120):
            n = rng.randint(1, 16)
            w = rng.choice(sorted(lang.factors(n)))
            report = t_map_palindrome_check(w, params, lang)
            assert report["is_pal_p"] == report["is_pal_Tp"]
            if report["is_pal_p"]:
                assert report["ext_p"] == report["ext_Tp"]


class TestTowerCenters:
    @pytest.mark.parametrize("a,b", [(3, 1), (4, 2), (5, 2), (4, 1), (6, 3), (5, 1)])
    def test_observed_match_expected(self, a, b):
        report = classify_tower_centers(QuadraticParams(a, b), 7)
        for row in report["rows"]:
            assert row["u_center"] == row["u_expected"], row
            assert row["v_center"] == row["v_expected"], row
            if "v_in_later_v" in row:
                assert row["v_in_later_v"]

    def test_case_iv_exceptional_maximal_palindromes(self):
        # both odd: U^(1) is the only eps-centered and U^(2) the only
        # 1-centered maximal palindrome
        report = classify_tower_centers(P31, 7)
        centers = [row["u_center"] for row in report["rows"]]
        assert centers[0] == EPSILON and centers[1] == "1"
        assert set(centers[2:]) == {"0"}

    def test_sturmian_rejected(self):
        with pytest.raises(UnsupportedVariantError):
            classify_tower_centers(QuadraticParams(2, 1), 4)


class TestBranches:
    def test_case_iv_single_branch(self):
        specs = infinite_branches(P31, 2000)
        assert [s.center for s in specs] == ["0"]
        assert specs[0].generator == ("V", 1, 0)
        assert specs[0].verified

    def test_case_ii_two_branches(self):
        specs = infinite_branches(QuadraticParams(4, 2), 2000)
        assert [s.center for s in specs] == [EPSILON, "1"]
        assert all(s.verified for s in specs)

    def test_case_i_has_w_tower(self):
        specs = infinite_branches(QuadraticParams(5, 2), 3000)
        assert [s.center for s in specs] == [EPSILON, "1", "0"]
        w_spec = specs[2]
        assert w_spec.generator == ("W",)
        assert w_spec.central_factors[0] == "0"
        assert w_spec.central_factors[1] == t_map("0", QuadraticParams(5, 2))
        assert all(s.verified for s in specs)

    def test_case_iii_three_branches(self):
        specs = infinite_branches(QuadraticParams(4, 1), 3000)
        assert [s.center for s in specs] == ["0", EPSILON, "1"]
        assert all(s.verified for s in specs)


class TestReversalClosure:
    def test_quadratic_closed(self):
        probe = reversal_closure_probe(quadratic_substitution(P31), 50)
        assert probe == {"closed_up_to": 50, "witness": None}

    def test_three_letter_witness(self):
        sub = parry_substitution(RenyiExpansion((2, 1), (1,)))
        probe = reversal_closure_probe(sub, 30)
        assert probe["witness"] is not None
        lang = FactorLanguage(sub)
        w = probe["witness"]
        assert lang.contains(w) and not lang.contains(w[::-1])

    def test_palindromes_die_out_for_three_letters(self):
        sub = parry_substitution(RenyiExpansion((2, 1), (1,)))
        lang = FactorLanguage(sub)
        counts = [sum(1 for w in lang.factors(n) if w == w[::-1])
                  for n in range(61)]
        last = max(n for n, c in enumerate(counts) if c > 0)
        assert last < 60
        assert all(c == 0 for c in counts[last + 1 :])


class TestPalindromicComplexity:
    def test_oracle_spot_values_31(self):
        table = palindromic_complexity(quadratic_substitution(P31), 14, "oracle")
        p = table.p_values()
        assert p[0] == 1 and p[1] == 2 and p[2] == 1
        assert p[3] == p[5] == p[7] == 3
        assert p[9] == p[11] == 4
        assert p[13] == 3
        assert all(p[n] == 0 for n in range(4, 15, 2))

    def test_closed_form_spot_values_31(self):
        p = closed_form_p(P31, 14)
        assert p[9] == p[11] == 4
        assert all(p[n] == 0 for n in range(4, 15, 2))

    @pytest.mark.parametrize("a,b", [(3, 1), (4, 1), (4, 2), (5, 2)])
    def test_oracle_equals_closed_form(self, a, b):
        params = QuadraticParams(a, b)
        oracle = palindromic_complexity(quadratic_substitution(params), 60, "oracle")
        closed = palindromic_complexity(params, 60, "closed_form")
        assert oracle.p_values() == closed.p_values()

    def test_bounded_by_four(self):
        for a, b in [(3, 1), (6, 3)]:
            table = palindromic_complexity(QuadraticParams(a, b), 80, "closed_form")
            assert max(table.p_values()) <= 4

    def test_sturmian_oracle(self):
        table = palindromic_complexity(
            quadratic_substitution(QuadraticParams(2, 1)), 61, "oracle"
        )
        p = table.p_values()
        assert all(p[n] == 1 for n in range(0, 62, 2))
        assert all(p[n] == 2 for n in range(1, 62, 2))

    def test_sturmian_closed_form_rejected(self):
        with pytest.raises(UnsupportedVariantError):
            palindromic_complexity(QuadraticParams(2, 1), 10, "closed_form")

    def test_classification_counts(self):
        oracle = palindromic_complexity(quadratic_substitution(P31), 30, "oracle")
        closed = palindromic_complexity(P31, 30, "closed_form")
        for row_o, row_c in zip(oracle.rows, closed.rows):
            assert row_o["maximal_count"] == row_c["maximal_count"]
            assert row_o["two_ext_count"] == row_c["two_ext_count"]

    def test_csv_export(self):
        table = palindromic_complexity(P31, 3, "closed_form")
        lines = table.to_csv().strip().splitlines()
        assert lines[0] == "n,P,maximal_count,two_ext_count,source"


class TestIdentities:
    @pytest.mark.parametrize("a,b", [(3, 1), (4, 2), (4, 1)])
    def test_verify_passes(self, a, b):
        report = verify_identities(QuadraticParams(a, b), 50)
        assert report["ok"]

    def test_spot_checks_31(self, lang31):
        p = [len(palindromes_of_length(lang31, n)) for n in range(12)]
        delta = [lang31.complexity(n + 1) - lang31.complexity(n) for n in range(12)]
        assert p[3] + p[2] == delta[2] + 2 == 4
        assert p[9] + p[8] == delta[8] + 2 == 4
        assert p[9] - p[7] == 1  # n = 7 = |V^(2)|

    def test_sturmian_rejected(self):
        with pytest.raises(UnsupportedVariantError):
            verify_identities(QuadraticParams(2, 1), 10)
