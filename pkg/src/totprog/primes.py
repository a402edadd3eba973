"""Sieving and progression-restricted prime counting.

Provides theta(x;q,a), psi(x;q,a) and the derived error terms S and R, the
progression primorials N-bar_k, and enumeration of the multiplicative sets
S_{q,a} = {n : p | n => p = a mod q}.  Log-domain accumulations are done in
mpmath arbitrary precision (sweep margins get down to 1e-3 while constants
enter at 1e-10, so doubles are not enough headroom).
"""

from __future__ import annotations

import bisect
import math
import struct
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp

__all__ = [
    "PrimeTable",
    "ProgressionStats",
    "PrimorialSeq",
    "SmoothSetEnumeration",
    "theta",
    "psi",
    "primorials",
    "enumerate_smooth",
]

_SEGMENT = 1 << 16
_PI_1E6 = 78498  # pi(10^6), build-time sanity pin


class PrimeTable:
    """Sorted primes up to `limit`, produced by a segmented sieve."""

    def __init__(self, limit: int):
        if limit < 2:
            limit = 2
        self.limit = int(limit)
        self.primes = _segmented_sieve(self.limit)
        if self.limit >= 10**6:
            n = bisect.bisect_right(self.primes, 10**6)
            if n != _PI_1E6:
                raise AssertionError(f"sieve self-check failed: pi(1e6) = {n}")

    def __len__(self):
        return len(self.primes)

    def upto(self, x) -> list[int]:
        if x > self.limit:
            raise ValueError(f"x={x} exceeds sieve limit {self.limit}")
        return self.primes[: bisect.bisect_right(self.primes, int(x))]

    # --- on-disk cache ---------------------------------------------------
    # header {magic, version, limit}; then first prime raw, followed by
    # half-gaps as single bytes (0xFF escapes to a 4-byte gap).

    _MAGIC = b"PTBL"
    _VERSION = 1

    def save_cache(self, path) -> None:
        out = bytearray(struct.pack("<4sIQ", self._MAGIC, self._VERSION, self.limit))
        prev = None
        for p in self.primes:
            if prev is None:
                out += struct.pack("<I", p)
            else:
                gap = p - prev
                half = gap >> 1
                if gap == 1:  # the 2 -> 3 step
                    out.append(0)
                elif half < 0xFF:
                    out.append(half)
                else:
                    out.append(0xFF)
                    out += struct.pack("<I", gap)
            prev = p
        with open(path, "wb") as fh:
            fh.write(bytes(out))

    @classmethod
    def load_cache(cls, path) -> "PrimeTable":
        with open(path, "rb") as fh:
            raw = fh.read()
        magic, version, limit = struct.unpack_from("<4sIQ", raw, 0)
        if magic != cls._MAGIC or version != cls._VERSION:
            raise ValueError("unrecognized sieve cache header")
        off = struct.calcsize("<4sIQ")
        primes = []
        if len(raw) > off:
            (p,) = struct.unpack_from("<I", raw, off)
            off += 4
            primes.append(p)
            while off < len(raw):
                code = raw[off]
                off += 1
                if code == 0:
                    gap = 1
                elif code == 0xFF:
                    (gap,) = struct.unpack_from("<I", raw, off)
                    off += 4
                else:
                    gap = code << 1
                p += gap
                primes.append(p)
        table = cls.__new__(cls)
        table.limit = limit
        table.primes = primes
        return table


def _segmented_sieve(limit: int) -> list[int]:
    root = int(math.isqrt(limit))
    base = bytearray([1]) * (root + 1)
    base[0:2] = b"\x00\x00"
    for i in range(2, int(math.isqrt(root)) + 1):
        if base[i]:
            base[i * i :: i] = bytearray(len(base[i * i :: i]))
    base_primes = [i for i in range(2, root + 1) if base[i]]
    primes = list(base_primes)
    lo = root + 1
    while lo <= limit:
        hi = min(lo + _SEGMENT, limit + 1)
        seg = bytearray([1]) * (hi - lo)
        for p in base_primes:
            start = max(p * p, (lo + p - 1) // p * p)
            seg[start - lo :: p] = bytearray(len(seg[start - lo :: p]))
        primes.extend(i + lo for i, flag in enumerate(seg) if flag)
        lo = hi
    return primes


@lru_cache(maxsize=4)
def default_table(limit: int = 2_000_000) -> PrimeTable:
    return PrimeTable(limit)


@dataclass(frozen=True)
class PrimorialSeq:
    q: int
    a: int
    entries: tuple  # (k, pbar_k, log Nbar_k, log phi(Nbar_k))


@dataclass(frozen=True)
class SmoothSetEnumeration:
    q: int
    a: int
    bound: int
    members: tuple  # sorted n <= bound with every prime factor = a mod q


class ProgressionStats:
    """theta/psi step data for primes (and prime powers) = a mod q.

    Cumulative sums are mpf at `prec` bits.  S(x) = theta(x) - x/phi(q) and
    R(x) = psi(x) - x/phi(q) are derived on demand, never stored.
    """

    def __init__(self, q: int, a: int, table: PrimeTable, prec: int = 192):
        if math.gcd(q, a) != 1:
            raise ValueError("q and a must be coprime")
        self.q, self.a = q, a % q if q > 1 else 1
        self.table = table
        self.prec = prec
        self.phi = len([n for n in range(1, max(q, 2)) if math.gcd(n, q) == 1]) or 1
        with mp.workprec(prec):
            self.pbar = [p for p in table.primes if (p - self.a) % q == 0 or q == 1]
            acc = mp.mpf(0)
            self.theta_cum = []
            for p in self.pbar:
                acc += mp.log(p)
                self.theta_cum.append(acc)
            acc = mp.mpf(0)
            self.log1m_cum = []  # running sum of log(1 - 1/pbar)
            for p in self.pbar:
                acc += mp.log1p(mp.mpf(-1) / p)
                self.log1m_cum.append(acc)
            # prime powers p^k <= limit with p^k = a mod q (k >= 2)
            powers = []
            for p in table.primes:
                pk = p * p
                if pk > table.limit:
                    break
                while pk <= table.limit:
                    if (pk - self.a) % q == 0 or q == 1:
                        powers.append((pk, p))
                    pk *= p
            powers.sort()
            self.power_points = [pk for pk, _ in powers]
            acc = mp.mpf(0)
            self.power_cum = []
            for _, p in powers:
                acc += mp.log(p)
                self.power_cum.append(acc)

    # --- step functions --------------------------------------------------

    def theta(self, x) -> mp.mpf:
        if x > self.table.limit:
            raise ValueError(f"x={x} exceeds sieve limit {self.table.limit}")
        i = bisect.bisect_right(self.pbar, int(x))
        return self.theta_cum[i - 1] if i else mp.mpf(0)

    def psi(self, x) -> mp.mpf:
        if x > self.table.limit:
            raise ValueError(f"x={x} exceeds sieve limit {self.table.limit}")
        j = bisect.bisect_right(self.power_points, int(x))
        extra = self.power_cum[j - 1] if j else mp.mpf(0)
        return self.theta(x) + extra

    def log_one_minus(self, x) -> mp.mpf:
        """Sum of log(1 - 1/pbar) over progression primes pbar <= x."""
        i = bisect.bisect_right(self.pbar, int(x))
        return self.log1m_cum[i - 1] if i else mp.mpf(0)

    def S(self, x) -> mp.mpf:
        return self.theta(x) - mp.mpf(x) / self.phi

    def R(self, x) -> mp.mpf:
        return self.psi(x) - mp.mpf(x) / self.phi

    # --- derived sequences ------------------------------------------------

    def primorials(self, k_max: int) -> PrimorialSeq:
        if k_max > len(self.pbar):
            raise ValueError("sieve exhausted before k_max progression primes")
        entries = tuple(
            (k + 1, self.pbar[k], self.theta_cum[k], self.theta_cum[k] + self.log1m_cum[k])
            for k in range(k_max)
        )
        return PrimorialSeq(self.q, self.a, entries)


def stats(q: int, a: int, table: PrimeTable | None = None, prec: int = 192) -> ProgressionStats:
    return _stats_cached(q, a, table or default_table(), prec)


@lru_cache(maxsize=64)
def _stats_cached(q, a, table, prec):
    return ProgressionStats(q, a, table, prec)


def theta(x, q: int, a: int, table: PrimeTable | None = None) -> mp.mpf:
    return stats(q, a, table).theta(x)


def psi(x, q: int, a: int, table: PrimeTable | None = None) -> mp.mpf:
    return stats(q, a, table).psi(x)


def primorials(q: int, a: int, k_max: int, table: PrimeTable | None = None) -> PrimorialSeq:
    return stats(q, a, table).primorials(k_max)


def enumerate_smooth(q: int, a: int, X: int, table: PrimeTable | None = None) -> SmoothSetEnumeration:
    """All n <= X whose prime factors are all = a mod q (excluding 1),
    by depth-first products over the progression primes."""
    st = stats(q, a, table)
    admissible = [p for p in st.pbar if p <= X]
    found: list[int] = []

    def extend(value: int, start: int) -> None:
        for i in range(start, len(admissible)):
            nxt = value * admissible[i]
            if nxt > X:
                break
            found.append(nxt)
            extend(nxt, i)

    extend(1, 0)
    return SmoothSetEnumeration(q, a % q if q > 1 else 1, X, tuple(sorted(found)))
