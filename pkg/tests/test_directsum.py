import math
import random
from fractions import Fraction

import pytest

from rankcodes import (DirectSumCode, GabidulinCode, SubspaceBasis,
                       TrivialSubcodeError, decode_experiment,
                       default_generator, direct_sum_violations,
                       rank_event_rate, rank_leq_probability, rank_of_vector,
                       sample_channel_error, success_probability)


@pytest.fixture(scope="module")
def pair66(medium_code, gf4096):
    """[12,8,5] code split over two disjoint 6-dimensional subspaces."""
    return DirectSumCode(medium_code, [tuple(2**i for i in range(6)),
                                       tuple(2**i for i in range(6, 12))])


# -- direct sum validation -----------------------------------------------------

def test_violations_single_part(gf16):
    assert direct_sum_violations([SubspaceBasis(gf16, (1, 2))]) == []


def test_violations_shared_vector(gf16):
    a = SubspaceBasis(gf16, (1, 2))
    b = SubspaceBasis(gf16, (2, 4))
    report = direct_sum_violations([a, b])
    assert report and "overlap in dimension 1" in report[0]


def test_violations_disjoint_pair(gf16):
    a = SubspaceBasis(gf16, (1, 2))
    b = SubspaceBasis(gf16, (4, 8))
    assert direct_sum_violations([a, b]) == []


def test_violations_pairwise_ok_global_deficient(gf16):
    # three pairwise-disjoint lines that sum to only 2 dimensions
    a = SubspaceBasis(gf16, (1,))
    b = SubspaceBasis(gf16, (2,))
    c = SubspaceBasis(gf16, (3,))  # 3 = 1 + alpha
    report = direct_sum_violations([a, b, c])
    assert report and "rank deficient" in report[0]


def test_constructor_rejects_overlap(tiny_code, gf16):
    with pytest.raises(ValueError, match="overlap"):
        DirectSumCode(tiny_code, [(1, 2), (2, 4)])


# -- projection and the extended transfer ---------------------------------------

def test_project_zero_and_single_part(pair66, gf4096):
    zero = (0,) * 12
    assert pair66.project(zero) == [zero, zero]
    rng = random.Random(60)
    v1 = tuple(pair66.parts[0].element([rng.randrange(2) for _ in range(6)])
               for _ in range(12))
    assert pair66.project(v1) == [v1, zero]


def test_project_sums_back(pair66, gf4096):
    rng = random.Random(61)
    for _ in range(100):
        y = tuple(gf4096.random_element(rng) for _ in range(12))
        parts = pair66.project(y)
        for p, basis in zip(parts, pair66.parts):
            assert all(basis.contains(x) for x in p)
        summed = tuple(0 for _ in range(12))
        for p in parts:
            summed = tuple(gf4096.add(a, b) for a, b in zip(summed, p))
        assert summed == y


def test_project_rejects_outside_sum(tiny_code, gf16):
    dsc = DirectSumCode(tiny_code, [(1,), (2,)])
    with pytest.raises(ValueError, match="component 0"):
        dsc.project((4, 0, 0, 0))


def test_extended_transfer_rank_preserved(pair66, gf4096):
    rng = random.Random(62)
    for _ in range(1000):
        y = tuple(gf4096.random_element(rng) for _ in range(12))
        folded = pair66.to_parents(y)
        concat = folded[0] + folded[1]
        assert rank_of_vector(gf4096, concat) == rank_of_vector(gf4096, y)
    assert pair66.to_parents((0,) * 12) == ((0,) * 6, (0,) * 6)


# -- coding ----------------------------------------------------------------------

def test_encode_single_part_reduces_to_subspace_encode(medium_code, gf4096):
    lone = DirectSumCode(medium_code, [tuple(2**i for i in range(8))])
    rng = random.Random(63)
    msg = tuple(gf4096.random_element(rng) for _ in range(lone.message_length))
    assert lone.encode(msg) == lone.subcodes[0].encode(msg)


def test_encode_injective_on_small_instance(gf64):
    code = GabidulinCode(gf64, 4, g=default_generator(gf64))  # [6,4,3]
    dsc = DirectSumCode(code, [tuple(2**i for i in range(3)),
                               tuple(2**i for i in range(3, 6))])
    assert dsc.message_length == 2
    assert dsc.cardinality == 64**2
    assert dsc.encode((0, 0)) == (0,) * 6
    words = {dsc.encode((a, b)) for a in range(64) for b in range(64)}
    assert len(words) == dsc.cardinality
    for w in list(words)[:50]:
        assert code.is_codeword(w)


def test_encode_rejects_trivial_part(tiny_code):
    dsc = DirectSumCode(tiny_code, [(1, 2), (4, 8)])  # m = 2 < d = 3
    with pytest.raises(TrivialSubcodeError):
        dsc.encode(())


def test_decode_within_capability(pair66, gf4096):
    rng = random.Random(64)
    for trial in range(1000):
        msg = tuple(gf4096.random_element(rng) for _ in range(pair66.message_length))
        c = pair66.encode(msg)
        e = sample_channel_error(pair66, trial % 3, rng)
        y = tuple(gf4096.add(a, b) for a, b in zip(c, e))
        result = pair66.decode(y)
        assert result.ok and result.codeword == c and result.error == e
        assert all(o.ok for o in result.components)


def test_decode_beyond_capability_crafted(pair66, gf4096):
    rng = random.Random(65)
    msg = tuple(gf4096.random_element(rng) for _ in range(pair66.message_length))
    c = pair66.encode(msg)
    v1, v2 = pair66.parts
    e = [0] * 12
    e[0], e[1] = v1.elements[0], v1.elements[1]
    e[2], e[3] = v2.elements[0], v2.elements[1]
    e = tuple(e)
    assert rank_of_vector(gf4096, e) == 4 > pair66.capability
    assert [rank_of_vector(gf4096, p) for p in pair66.project(e)] == [2, 2]
    y = tuple(gf4096.add(a, b) for a, b in zip(c, e))
    result = pair66.decode(y)
    assert result.ok and result.codeword == c and result.error == e


def test_decode_component_failure_reported(pair66, gf4096):
    rng = random.Random(66)
    msg = tuple(gf4096.random_element(rng) for _ in range(pair66.message_length))
    c = pair66.encode(msg)
    v1 = pair66.parts[0]
    e = [0] * 12
    e[0], e[1], e[2] = v1.elements[0], v1.elements[1], v1.elements[2]
    y = tuple(gf4096.add(a, b) for a, b in zip(c, tuple(e)))
    result = pair66.decode(y)
    assert not result.ok and result.codeword is None
    assert not result.components[0].ok and result.components[0].reason
    assert result.components[1].ok


# -- probabilities ----------------------------------------------------------------

def test_rank_leq_probability_enumerated():
    assert rank_leq_probability(2, 2, 2, 1) == Fraction(10, 16)
    assert rank_leq_probability(2, 6, 3, 2) == Fraction(1 + 441 + 27342, 2**18)


def test_success_probability_exact_values():
    assert success_probability(2, [2, 2], 1, 2) == Fraction(100, 256)
    assert float(success_probability(2, [2, 2], 1, 2)) == 0.390625
    assert success_probability(2, [6, 6], 2, 3) == Fraction(27784, 2**18) ** 2


def test_success_probability_trivial_and_monotone():
    for t in range(0, 2):
        assert success_probability(2, [3, 3], 2, t) == 1
    values = [success_probability(2, [4, 4], 1, t) for t in range(6)]
    assert all(0 < v <= 1 for v in values)
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_success_probability_single_part_leading_order():
    # with one part the leading-order exponent equals the per-part exponent
    q, m, cap, t = 31, 6, 1, 2
    exact = success_probability(q, [m], cap, t)
    lead = success_probability(q, [m], cap, t, form="leading-order")
    assert lead == float(q) ** (-(m - cap) * (t - cap))
    assert abs(math.log(exact, q) + (m - cap) * (t - cap)) <= 2 / q


def test_success_probability_per_part_exponent_sum():
    # the exact product tracks the SUM of per-part leading exponents
    # (m_i - C)(t - C); each factor contributes less than 2/q of slack.
    # purely combinatorial, so prime powers are fine here
    for q in (8, 31):
        for dims in ([3, 3], [4, 2], [3, 3, 3]):
            cap, t = 1, 2
            exact = success_probability(q, dims, cap, t)
            exponent = sum((m - cap) * (t - cap) for m in dims)
            assert abs(math.log(exact, q) + exponent) <= 2 * len(dims) / q


def test_success_probability_rejects_unknown_form():
    with pytest.raises(ValueError, match="form"):
        success_probability(2, [2], 1, 2, form="bogus")


# -- Monte Carlo -------------------------------------------------------------------

def test_rank_event_rate_trivial_t():
    mc = rank_event_rate(2, [2, 2], 1, 0, 500, seed=1)
    assert mc.frequency == 1.0 and mc.successes == 500
    mc1 = rank_event_rate(2, [2, 2], 1, 1, 500, seed=1)
    assert mc1.frequency == 1.0


def test_rank_event_rate_matches_exact():
    exact = float(success_probability(2, [2, 2], 1, 2))
    mc = rank_event_rate(2, [2, 2], 1, 2, 30_000, seed=7)
    assert abs(mc.frequency - exact) <= mc.half_width
    assert mc.half_width == pytest.approx(
        3 * math.sqrt(mc.frequency * (1 - mc.frequency) / 30_000))


def test_rank_event_rate_generic_q_path():
    exact = float(success_probability(3, [2, 2], 1, 2))
    mc = rank_event_rate(3, [2, 2], 1, 2, 10_000, seed=17)
    assert abs(mc.frequency - exact) <= max(mc.half_width, 0.02)


def test_rank_event_rate_deterministic_and_chunked():
    a = rank_event_rate(2, [3, 3], 1, 2, 5000, seed=123)
    b = rank_event_rate(2, [3, 3], 1, 2, 5000, seed=123)
    assert a == b
    c = rank_event_rate(2, [3, 3], 1, 2, 5000, seed=123, chunks=4)
    d = rank_event_rate(2, [3, 3], 1, 2, 5000, seed=123, chunks=4)
    assert c == d


def test_rank_event_rate_exact_rank_channel():
    # conditioning on full rank can only hurt the success event
    uni = rank_event_rate(2, [2, 2], 1, 2, 20_000, seed=5)
    cond = rank_event_rate(2, [2, 2], 1, 2, 20_000, seed=5, channel="exact-rank")
    assert cond.frequency <= uni.frequency
    with pytest.raises(ValueError, match="channel"):
        rank_event_rate(2, [2, 2], 1, 2, 10, seed=5, channel="bogus")


def test_sample_channel_error_lands_in_sum_space(pair66, gf4096):
    rng = random.Random(67)
    for t in (0, 1, 3):
        e = sample_channel_error(pair66, t, rng)
        assert rank_of_vector(gf4096, e) <= t
        pair66.project(e)  # raises if outside the sum space


def test_decode_experiment_agrees_with_rank_event(gf64):
    code = GabidulinCode(gf64, 4, g=default_generator(gf64))  # [6,4,3] C=1
    dsc = DirectSumCode(code, [tuple(2**i for i in range(3)),
                               tuple(2**i for i in range(3, 6))])
    exp = decode_experiment(dsc, 2, 200, seed=29)
    assert exp.trials == 200
    assert exp.successes == exp.event_successes
    assert 0 < exp.successes < exp.trials
    assert exp.field_muls > 0
