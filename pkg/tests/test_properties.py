"""Property tests: algebraic identities on random words and points, and the
canonical-form invariants, with brute-force or independent oracles."""

import math

from hypothesis import given, settings, strategies as st

from serretlab.algebra import (GenWord, IDENTITY, _LETTER_MATRIX,
                               conjugacy_of_periodic, eval_word,
                               generic_factor, mobius_apply, monoid_factor)
from serretlab.exact import ExtRational, QuadIrr
from serretlab.expansion import UPWord, ln_expansion, pi_value

LETTERS = sorted(_LETTER_MATRIX)

words = st.lists(st.sampled_from(LETTERS), max_size=14).map(GenWord)
ln_words = st.text(alphabet="LN", min_size=0, max_size=16)
quadirrs = st.builds(
    QuadIrr,
    st.integers(-9, 9),
    st.integers(-5, 5).filter(bool),
    st.integers(1, 9),
    st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13, 15]),
)
rationals = st.builds(ExtRational, st.integers(0, 60), st.integers(1, 60))


@given(words)
def test_word_times_inverse_is_identity(w):
    assert eval_word(w + w.inverse()) == IDENTITY


@given(words)
def test_det_is_multiplicative_over_letters(w):
    det = 1
    for letter in w:
        det *= _LETTER_MATRIX[letter].det
    assert eval_word(w).det == det


@given(ln_words, st.integers(0, 1))
def test_monoid_factor_inverts_eval(word, e):
    m = eval_word(word) * (eval_word("F") if e else IDENTITY)
    got_word, got_e = monoid_factor(m)
    assert (got_word, got_e) == (word, e)


@given(words, words, st.one_of(rationals, quadirrs))
def test_mobius_action_is_a_left_action(w1, w2, x):
    m1, m2 = eval_word(w1), eval_word(w2)
    assert mobius_apply(m1 * m2, x) == mobius_apply(m1, mobius_apply(m2, x))


@given(words)
def test_generic_factor_round_trips(w):
    m = eval_word(w)
    again = generic_factor(m)
    assert eval_word(again) == m
    assert set(again) <= {"L", "N", "F", "L'", "N'"}


def brute_force_tail_equal(u, w, copies, max_shift):
    horizon = copies * (len(u) + len(w))
    uu = (u * (horizon // len(u) + 2))[:horizon]
    ww = (w * (horizon // len(w) + 2))[:horizon]
    probe = horizon // 2
    for h in range(max_shift):
        for k in range(max_shift):
            if uu[h:h + probe] == ww[k:k + probe]:
                return True
    return False


@given(st.text(alphabet="abc", min_size=1, max_size=6),
       st.text(alphabet="abc", min_size=1, max_size=6))
def test_periodic_conjugacy_matches_brute_force(u, w):
    expected = brute_force_tail_equal(u, w, copies=4, max_shift=2 * (len(u) + len(w)))
    assert conjugacy_of_periodic(u, w) == expected


@given(st.lists(st.integers(0, 3), max_size=6),
       st.lists(st.integers(0, 3), min_size=1, max_size=5))
def test_upword_canonical_form(prefix, period):
    w = UPWord(prefix, period)
    # primitive period
    m = len(w.period)
    assert all(w.period != w.period[:d] * (m // d)
               for d in range(1, m) if m % d == 0)
    # minimal prefix
    if w.prefix:
        assert w.prefix[-1] != w.period[-1]
    # same infinite word as the uncanonicalized data
    reference = UPWord(tuple(prefix), tuple(period))
    naive = lambda t: prefix[t] if t < len(prefix) \
        else period[(t - len(prefix)) % len(period)]
    assert all(w.symbol(t) == naive(t) for t in range(3 * (len(prefix) + m + 1)))
    assert reference == w


@given(quadirrs)
def test_coding_round_trip(x):
    if x.sign() <= 0:
        x = -x
    assert pi_value(ln_expansion(x)) == x


@given(quadirrs, st.integers(-3, 3))
def test_floor_shifts_by_integers(x, k):
    assert (x + k).floor() == x.floor() + k


@given(quadirrs)
def test_quadirr_float_agrees(x):
    assert abs(float(x) - (x.p + x.q * math.sqrt(x.D)) / x.r) < 1e-9
    assert (x.sign() > 0) == (float(x) > 0)
