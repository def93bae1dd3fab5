"""Direct sums of subspace subcodes, decoded component by component.

When the subspaces pairwise intersect only in zero, a received word splits
uniquely into per-subspace parts and each part is decoded in its own
parent code.  Decoding succeeds whenever every projected error has rank
at most the capability C, which can happen for total error ranks well
above C; the exact success probability of that event under the uniform
matrix channel is a product over the parts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .gabidulin import DecodingFailure, GabidulinCode
from .qlinalg import (CoordinateSolver, _bit_rank, count_rank_matrices,
                      rank_q, rank_of_vector)
from .subspace import SubspaceBasis, SubspaceSubcode, TrivialSubcodeError


def direct_sum_violations(parts) -> list:
    """Reasons the given SubspaceBasis list fails to be a direct sum.

    Empty list means the concatenated basis has full q-ary rank; otherwise
    each offending subspace pair is reported with its overlap dimension.
    """
    out = []
    if not parts:
        return ["no subspaces given"]
    tower = parts[0].tower
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            joint = parts[i].elements + parts[j].elements
            overlap = parts[i].m + parts[j].m - rank_of_vector(tower, joint)
            if overlap:
                out.append(f"subspaces {i} and {j} overlap in dimension {overlap}")
    concat = tuple(x for p in parts for x in p.elements)
    total = sum(p.m for p in parts)
    deficiency = total - rank_of_vector(tower, concat)
    if deficiency and not out:
        out.append(f"concatenated basis is rank deficient by {deficiency}")
    return out


@dataclass
class ComponentOutcome:
    index: int
    ok: bool
    codeword: tuple | None = None
    error: tuple | None = None
    reason: str = ""


@dataclass
class DirectSumDecodeResult:
    ok: bool
    codeword: tuple | None
    error: tuple | None
    components: list


@dataclass
class MonteCarloResult:
    successes: int
    trials: int
    frequency: float
    half_width: float


@dataclass
class DecodeExperiment:
    successes: int
    event_successes: int
    trials: int
    frequency: float
    field_muls: int


class DirectSumCode:
    """The sum of subspace subcodes over pairwise disjoint subspaces."""

    def __init__(self, code: GabidulinCode, parts):
        parts = [p if isinstance(p, SubspaceBasis) else SubspaceBasis(code.tower, p)
                 for p in parts]
        problems = direct_sum_violations(parts)
        if problems:
            raise ValueError("; ".join(problems))
        self.code = code
        self.tower = code.tower
        self.parts = parts
        self.subcodes = [SubspaceSubcode(code, p) for p in parts]
        self.dims = [p.m for p in parts]
        self.total_dim = sum(self.dims)
        self.concat = tuple(x for p in parts for x in p.elements)
        self._solver = CoordinateSolver(
            code.tower.q, [code.tower.digits(x) for x in self.concat])

    @property
    def capability(self) -> int:
        return self.code.capability

    @property
    def cardinality(self) -> int:
        d = self.code.d
        return self.tower.order ** sum(m - (d - 1) for m in self.dims)

    @property
    def message_length(self) -> int:
        return sum(m - self.code.d + 1 for m in self.dims)

    def project(self, word):
        """Split a word in (V_1 + ... + V_u)^n into its unique per-subspace
        parts, which sum back to the word componentwise."""
        t = self.tower
        per_part = [[] for _ in self.parts]
        for i, x in enumerate(word):
            coords = self._solver.solve(t.digits(x))
            if coords is None:
                raise ValueError(f"component {i} lies outside the subspace sum")
            off = 0
            for p, basis in enumerate(self.parts):
                chunk = coords[off:off + basis.m]
                per_part[p].append(basis.element(chunk))
                off += basis.m
        return [tuple(v) for v in per_part]

    def to_parents(self, word):
        """Project and transfer each part to its parent code; concatenated
        rank equals the rank of the input."""
        return tuple(sub.to_parent(part)
                     for sub, part in zip(self.subcodes, self.project(word)))

    def encode(self, message):
        """Encode u blocks of lengths m_i - d + 1, one per part, and sum."""
        for idx, sub in enumerate(self.subcodes):
            if sub.is_trivial:
                raise TrivialSubcodeError(
                    f"part {idx} has dimension {sub.basis.m} < d = {self.code.d}")
        message = tuple(message)
        if len(message) != self.message_length:
            raise ValueError(
                f"message length {len(message)} != {self.message_length}")
        t = self.tower
        acc = [0] * self.code.length
        off = 0
        for sub in self.subcodes:
            block = message[off:off + sub.parent.k]
            off += sub.parent.k
            part = sub.encode(block)
            acc = [t.add(a, b) for a, b in zip(acc, part)]
        return tuple(acc)

    def decode(self, received) -> DirectSumDecodeResult:
        """Per-component decoding via the parent route; succeeds exactly
        when every projected error rank is within capability."""
        t = self.tower
        outcomes = []
        total_c = [0] * self.code.length
        total_e = [0] * self.code.length
        ok = True
        for idx, (sub, part) in enumerate(zip(self.subcodes, self.project(received))):
            try:
                c_i, e_i = sub.decode(part, route="parent")
            except DecodingFailure as exc:
                outcomes.append(ComponentOutcome(idx, False, reason=str(exc)))
                ok = False
                continue
            outcomes.append(ComponentOutcome(idx, True, c_i, e_i))
            total_c = [t.add(a, b) for a, b in zip(total_c, c_i)]
            total_e = [t.add(a, b) for a, b in zip(total_e, e_i)]
        if not ok:
            return DirectSumDecodeResult(False, None, None, outcomes)
        return DirectSumDecodeResult(True, tuple(total_c), tuple(total_e), outcomes)

    def success_probability(self, t: int, form: str = "exact"):
        return success_probability(self.tower.q, self.dims, self.capability,
                                   t, form=form)

    def rank_event_rate(self, t, trials, seed, channel="uniform-matrix",
                        chunks=1) -> MonteCarloResult:
        return rank_event_rate(self.tower.q, self.dims, self.capability,
                               t, trials, seed, channel=channel, chunks=chunks)


# ---------------------------------------------------------------------------
# success probability of per-part decodability

def rank_leq_probability(q: int, m: int, t: int, cap: int) -> Fraction:
    """Probability that a uniform t x m q-ary matrix has rank <= cap."""
    hits = sum(count_rank_matrices(q, m, t, r) for r in range(0, cap + 1))
    return Fraction(hits, q ** (t * m))


def success_probability(q: int, dims, capability: int, t: int,
                        form: str = "exact"):
    """Probability that every block of a uniform t x (sum dims) q-ary
    matrix has rank <= capability.

    form="exact" returns the product of per-part probabilities as a
    Fraction.  form="leading-order" returns the asymptotic figure
    q^(-(N - C)(t - C)) with N = sum(dims); it is meaningful for t > C
    and is exact at leading order only for a single part (see the
    package tests for the per-part corrected exponent).
    """
    if form == "exact":
        p = Fraction(1)
        for m in dims:
            p *= rank_leq_probability(q, m, t, capability)
        return p
    if form == "leading-order":
        n_total = sum(dims)
        return float(q) ** (-(n_total - capability) * (t - capability))
    raise ValueError(f"unknown form {form!r}")


# ---------------------------------------------------------------------------
# Monte Carlo channels

def _sample_rows_bits(rng, t, width):
    return [rng.getrandbits(width) for _ in range(t)]


def _split_ranks_ok_bits(rows, dims, cap) -> bool:
    off = 0
    for m in dims:
        mask = (1 << m) - 1
        if _bit_rank([(r >> off) & mask for r in rows]) > cap:
            return False
        off += m
    return True


def _sample_rows_digits(rng, q, t, width):
    return [[rng.randrange(q) for _ in range(width)] for _ in range(t)]


def _split_ranks_ok_digits(rows, dims, cap, q) -> bool:
    off = 0
    for m in dims:
        block = [r[off:off + m] for r in rows]
        if rank_q(block, q) > cap:
            return False
        off += m
    return True


def _chunk_sizes(trials, chunks):
    base, extra = divmod(trials, chunks)
    return [base + (1 if i < extra else 0) for i in range(chunks)]


def rank_event_rate(q: int, dims, capability: int, t: int, trials: int,
                    seed, channel: str = "uniform-matrix",
                    chunks: int = 1) -> MonteCarloResult:
    """Seeded frequency of the event "every block of the t x N coefficient
    matrix has rank <= capability", with a 3-sigma half-width.

    channel="uniform-matrix" samples the matrix uniformly (the model the
    exact product formula describes); channel="exact-rank" conditions it
    on full rank t.  Trials are split into `chunks` independent substreams
    seeded by (seed, chunk index), so a parallel run with the same
    assignment reproduces the sequential result.
    """
    if channel not in ("uniform-matrix", "exact-rank"):
        raise ValueError(f"unknown channel {channel!r}")
    if trials < 1:
        raise ValueError("need at least one trial")
    n_total = sum(dims)
    successes = 0
    for ci, size in enumerate(_chunk_sizes(trials, chunks)):
        rng = random.Random(f"{seed}:{ci}")
        if t == 0:
            successes += size
            continue
        if q == 2:
            for _ in range(size):
                rows = _sample_rows_bits(rng, t, n_total)
                if channel == "exact-rank":
                    while _bit_rank(rows) != t:
                        rows = _sample_rows_bits(rng, t, n_total)
                if _split_ranks_ok_bits(rows, dims, capability):
                    successes += 1
        else:
            for _ in range(size):
                rows = _sample_rows_digits(rng, q, t, n_total)
                if channel == "exact-rank":
                    while rank_q(rows, q) != t:
                        rows = _sample_rows_digits(rng, q, t, n_total)
                if _split_ranks_ok_digits(rows, dims, capability, q):
                    successes += 1
    freq = successes / trials
    half = 3.0 * math.sqrt(freq * (1.0 - freq) / trials)
    return MonteCarloResult(successes, trials, freq, half)


def sample_channel_error(M: DirectSumCode, t: int, rng,
                         channel: str = "uniform-matrix"):
    """One error vector from the rank-t channel: independent values
    alpha_1..alpha_t combined by a t x N q-ary matrix, expressed over the
    concatenated subspace basis."""
    tower = M.tower
    n, q, n_total = tower.n, tower.q, M.total_dim
    if t == 0:
        return (0,) * M.code.length
    # alpha_j linearly independent over GF(q)
    while True:
        alphas = [tower.random_element(rng) for _ in range(t)]
        if rank_of_vector(tower, alphas) == t:
            break
    rows = [[rng.randrange(q) for _ in range(n_total)] for _ in range(t)]
    if channel == "exact-rank":
        while rank_q(rows, q) != t:
            rows = [[rng.randrange(q) for _ in range(n_total)] for _ in range(t)]
    # combined values, one per concatenated-basis coordinate
    combined = []
    for r in range(n_total):
        acc = 0
        for j in range(t):
            c = rows[j][r]
            if c:
                acc = tower.add(acc, tower.mul(c, alphas[j]))
        combined.append(acc)
    # error component at position pos collects digit pos of every value
    error = []
    for pos in range(M.code.length):
        acc = 0
        for r, value in enumerate(combined):
            dig = tower.digits(value)[pos]
            if dig:
                acc = tower.add(acc, tower.mul(dig, M.concat[r]))
        error.append(acc)
    return tuple(error)


def decode_experiment(M: DirectSumCode, t: int, trials: int, seed,
                      channel: str = "uniform-matrix") -> DecodeExperiment:
    """End-to-end seeded experiment: encode a random message, add a channel
    error, decode per component, and count exact recoveries.  Also counts
    the per-part rank event, which coincides with exact recovery."""
    tower = M.tower
    rng = random.Random(f"{seed}:decode")
    successes = 0
    event = 0
    muls0 = tower.mul_count
    for _ in range(trials):
        message = tuple(tower.random_element(rng) for _ in range(M.message_length))
        codeword = M.encode(message)
        error = sample_channel_error(M, t, rng, channel=channel)
        received = tuple(tower.add(a, b) for a, b in zip(codeword, error))
        if all(rank_of_vector(tower, part) <= M.capability
               for part in M.project(error)):
            event += 1
        result = M.decode(received)
        if result.ok and result.codeword == codeword and result.error == error:
            successes += 1
    return DecodeExperiment(successes, event, trials,
                            successes / trials if trials else 0.0,
                            tower.mul_count - muls0)
