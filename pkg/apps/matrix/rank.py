"""
Rank of 0-1 matrices over the rationals.

The rational rank is bracketed by
    max(rank mod q over the primes tried) <= rank <= min(rows - |Z^row|, cols - |Z^col|).
Mod 2 (XOR on packed rows) and mod 2^31 - 1 (int64 elimination) run first;
when either meets the zero-line bound the rank is exact. Otherwise two
random primes in (2^60, 2^62) are used. Matrices within the size gate are
always confirmed by fraction-free Bareiss elimination.
"""

import hashlib
import logging
from dataclasses import dataclass, field, asdict
from typing import Optional

import numpy as np
from sympy import isprime, nextprime

from apps.core.conf import lab_setting
from apps.core.constants import RankPrimes
from apps.core.exceptions import InternalInvariantError, InvalidParameterError
from .bitmatrix import ZeroOneMatrix

logger = logging.getLogger(__name__)

# Below this bound (p - 1)^2 fits in int64 and elimination stays vectorised.
_INT64_PRIME_LIMIT = 1 << 31


@dataclass(frozen=True)
class RankReport:
    """Rank over the rationals plus how it was obtained."""

    rank: int
    certified: bool
    primes_used: tuple[int, ...] = field(default_factory=tuple)
    oracle_checked: bool = False
    upper_bound: Optional[int] = None

    def to_dict(self) -> dict:
        data = asdict(self)
        data['primes_used'] = list(self.primes_used)
        return data


def rank_gf2(M: ZeroOneMatrix) -> int:
    """Rank over GF(2) by XOR elimination on the packed rows."""
    pivots: dict[int, int] = {}
    for row in M.rows:
        while row:
            lead = row.bit_length() - 1
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = row
                break
            row ^= pivot
    return len(pivots)


def _eliminate(a: np.ndarray, prime: int) -> int:
    """In-place row reduction of ``a`` modulo ``prime``; returns the rank."""
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        candidates = np.flatnonzero(a[rank:, col])
        if candidates.size == 0:
            continue
        pivot = rank + int(candidates[0])
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inverse = pow(int(a[rank, col]), -1, prime)
        a[rank, col:] = (a[rank, col:] * inverse) % prime
        below = rank + 1 + np.flatnonzero(a[rank + 1:, col])
        if below.size:
            factors = a[below, col].reshape(-1, 1)
            a[below, col:] = (a[below, col:] - factors * a[rank, col:]) % prime
        rank += 1
    return rank


def rank_mod_p(M: ZeroOneMatrix, prime: int) -> int:
    """Rank of M over the integers modulo ``prime``."""
    if prime < 2 or not isprime(prime):
        raise InvalidParameterError(f"{prime} is not a prime", details={'prime': prime})
    if M.n == 0 or M.ncols == 0:
        return 0
    if prime == RankPrimes.GF2:
        return rank_gf2(M)
    if prime < _INT64_PRIME_LIMIT:
        return _eliminate(M.to_array().astype(np.int64), prime)
    return _eliminate(M.to_array().astype(object), prime)


def rank_bareiss(M: ZeroOneMatrix) -> int:
    """Exact rational rank by fraction-free elimination on Python integers."""
    a = M.to_array().astype(int).tolist()
    nrows, ncols = M.n, M.ncols
    rank = 0
    previous = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((r for r in range(rank, nrows) if a[r][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        lead = a[rank][col]
        pivot_row = a[rank]
        for r in range(rank + 1, nrows):
            row = a[r]
            factor = row[col]
            for c in range(col, ncols):
                row[c] = (lead * row[c] - factor * pivot_row[c]) // previous
        previous = lead
        rank += 1
    return rank


def zero_line_bound(M: ZeroOneMatrix) -> int:
    """min(rows - |Z^row|, cols - |Z^col|), an upper bound on the rank."""
    zero_rows = sum(1 for r in M.rows if r == 0)
    zero_cols = sum(1 for r in M.transpose().rows if r == 0)
    return min(M.n - zero_rows, M.ncols - zero_cols)


def _strip_zero_lines(M: ZeroOneMatrix) -> ZeroOneMatrix:
    drop_rows = [i for i, r in enumerate(M.rows) if r == 0]
    drop_cols = [j for j, c in enumerate(M.transpose().rows) if c == 0]
    if not drop_rows and not drop_cols:
        return M
    return M.minor(drop_rows, drop_cols)


def random_primes(M: ZeroOneMatrix, count: int = 2,
                  low_bits: Optional[int] = None, high_bits: Optional[int] = None) -> list[int]:
    """
    Distinct primes drawn from (2^low_bits, 2^high_bits).

    The draw is keyed by the matrix contents so the rank stays a pure
    function of M.
    """
    low_bits = lab_setting('PRIME_LOW_BITS') if low_bits is None else low_bits
    high_bits = lab_setting('PRIME_HIGH_BITS') if high_bits is None else high_bits
    if not 2 <= low_bits < high_bits <= 62:
        raise InvalidParameterError(
            'Prime range must satisfy 2 <= low_bits < high_bits <= 62',
            details={'low_bits': low_bits, 'high_bits': high_bits},
        )
    key = int.from_bytes(hashlib.blake2b(M.to_bytes(), digest_size=16).digest(), 'little')
    rng = np.random.Generator(np.random.Philox(key=key))
    low = 1 << low_bits
    # Leave headroom so nextprime stays below 2^high_bits.
    high = (1 << high_bits) - (1 << max(1, high_bits - 42))
    primes: list[int] = []
    while len(primes) < count:
        candidate = int(nextprime(int(rng.integers(low, high, dtype=np.int64))))
        if candidate not in primes:
            primes.append(candidate)
    return primes


def rank_exact(M: ZeroOneMatrix, *, bareiss_max_n: Optional[int] = None,
               low_bits: Optional[int] = None, high_bits: Optional[int] = None) -> RankReport:
    """
    Rank of M over the rationals.

    When max(rows, cols) <= bareiss_max_n the modular result is confirmed by
    rank_bareiss and oracle_checked is set; bareiss_max_n=0 turns this off.
    """
    bareiss_max_n = lab_setting('BAREISS_MAX_N') if bareiss_max_n is None else bareiss_max_n
    confirm = max(M.n, M.ncols) <= bareiss_max_n
    upper = zero_line_bound(M)
    if upper == 0:
        return RankReport(rank=0, certified=True, oracle_checked=confirm, upper_bound=0)

    primes = [RankPrimes.GF2]
    best = rank_gf2(M)
    if best < upper:
        primes.append(RankPrimes.MERSENNE_31)
        best = max(best, rank_mod_p(M, RankPrimes.MERSENNE_31))
    certified = best == upper

    if not certified:
        core = _strip_zero_lines(M)
        for prime in random_primes(core, low_bits=low_bits, high_bits=high_bits):
            primes.append(prime)
            best = max(best, rank_mod_p(core, prime))
        certified = best == upper

    oracle_checked = False
    if confirm:
        exact = rank_bareiss(M)
        if exact != best:
            logger.error(
                'Modular rank disagrees with fraction-free rank',
                extra={'modular': best, 'exact': exact, 'primes': primes},
            )
            raise InternalInvariantError(
                'Modular rank disagrees with fraction-free rank',
                details={'modular': best, 'exact': exact, 'primes': primes},
            )
        oracle_checked = True
        certified = True

    if not certified:
        logger.debug('Rank not certified', extra={'n': M.n, 'rank': best, 'upper': upper})

    return RankReport(
        rank=best,
        certified=certified,
        primes_used=tuple(primes),
        oracle_checked=oracle_checked,
        upper_bound=upper,
    )


def rank(M: ZeroOneMatrix) -> int:
    """Shorthand for ``rank_exact(M).rank``."""
    return rank_exact(M).rank
