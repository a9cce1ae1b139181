"""Exact restricted partition counts by big-integer dynamic programming.

A PartsSpec names an allowed-parts set (prime k-th powers, integer k-th
powers, primes, or an explicit list); count_table builds the full table of
counts up to N with the classic Euler-product DP.  brute_force_count is a
deliberately independent enumeration oracle for testing, and the cache
functions give the counts a stable on-disk text form.
"""

import re
from dataclasses import dataclass, field

import numpy as np

from . import kernels, nt


@dataclass(frozen=True)
class PartsSpec:
    """Description of an allowed-parts set.

    kind is one of "prime_powers", "integer_powers", "primes", "explicit";
    k applies to the two power kinds, parts to explicit lists.  Use the
    classmethod constructors rather than building instances by hand.
    """

    kind: str
    k: int | None = None
    parts: tuple[int, ...] | None = None

    @classmethod
    def prime_powers(cls, k: int) -> "PartsSpec":
        if k < 1:
            raise ValueError("k must be positive")
        return cls("prime_powers", k=int(k))

    @classmethod
    def integer_powers(cls, k: int) -> "PartsSpec":
        if k < 1:
            raise ValueError("k must be positive")
        return cls("integer_powers", k=int(k))

    @classmethod
    def primes(cls) -> "PartsSpec":
        return cls("primes")

    @classmethod
    def explicit(cls, parts) -> "PartsSpec":
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError("explicit parts must be positive")
        if len(set(parts)) != len(parts):
            raise ValueError("explicit parts must be duplicate-free")
        return cls("explicit", parts=tuple(sorted(parts)))

    def canonical(self) -> str:
        """Canonical spec string, also used in cache file headers."""
        if self.kind == "prime_powers":
            return f"prime_powers({self.k})"
        if self.kind == "integer_powers":
            return f"integer_powers({self.k})"
        if self.kind == "primes":
            return "primes"
        return "explicit(" + ",".join(str(p) for p in self.parts) + ")"

    @classmethod
    def from_string(cls, text: str) -> "PartsSpec":
        """Parse a canonical spec string such as ``prime_powers(2)``."""
        text = text.strip()
        if text == "primes":
            return cls.primes()
        m = re.fullmatch(r"(prime_powers|integer_powers)\((\d+)\)", text)
        if m:
            k = int(m.group(2))
            return getattr(cls, m.group(1))(k)
        m = re.fullmatch(r"explicit\(([\d,]+)\)", text)
        if m:
            return cls.explicit(int(p) for p in m.group(1).split(","))
        raise ValueError(f"unrecognized parts spec: {text!r}")


def generate_parts(spec: PartsSpec, N: int) -> list[int]:
    """All elements of the parts set that are <= N, ascending."""
    N = int(N)
    if N < 0:
        raise ValueError("N must be nonnegative")
    if spec.kind == "prime_powers":
        ps = nt.sieve_primes(nt.introot(N, spec.k)).primes
        return [int(p) ** spec.k for p in ps]
    if spec.kind == "primes":
        return [int(p) for p in nt.sieve_primes(N).primes]
    if spec.kind == "integer_powers":
        return [m**spec.k for m in range(1, nt.introot(N, spec.k) + 1)]
    return [p for p in spec.parts if p <= N]


@dataclass(frozen=True, eq=False)
class CountTable:
    """Exact counts p_A(n) for n = 0..N over the parts set A.

    Attributes:
        spec: the parts set.
        N: largest index.
        counts: list of N+1 arbitrary-precision ints, counts[0] = 1.
    """

    spec: PartsSpec
    N: int
    counts: list = field(repr=False)


def count_table(spec: PartsSpec, N: int) -> CountTable:
    """Build the count table by in-place accumulation.

    For each part a (ascending) and each m = a..N, counts[m] += counts[m-a].
    Counts are Python ints, so no overflow tier exists; the heavy inner loop
    runs in the compiled kernel when available.
    """
    N = int(N)
    if N < 0:
        raise ValueError("N must be nonnegative")
    counts = [0] * (N + 1)
    counts[0] = 1
    parts = np.asarray(generate_parts(spec, N), dtype=np.int64)
    if parts.size:
        kernels.dp_accumulate(counts, parts)
    return CountTable(spec, N, counts)


def brute_force_count(spec: PartsSpec, n: int, cap: int = 200) -> int:
    """Count partitions of n by pure enumeration (test oracle).

    Enumerates nonincreasing part sequences recursively with no memoization,
    so it shares no logic with the DP.  Exponential: refuses n above cap.
    """
    n = int(n)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise ValueError(f"oracle cap exceeded: n = {n} > cap = {cap}")
    parts = generate_parts(spec, n)[::-1]  # descending

    def rec(remaining: int, start: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for i in range(start, len(parts)):
            if parts[i] <= remaining:
                total += rec(remaining - parts[i], i)
        return total

    return rec(n, 0)


_CACHE_HEADER = re.compile(r"# ppk-counts v1 spec=(\S+) N=(\d+)\n?")


def write_count_cache(path, table: CountTable) -> None:
    """Write a count table as decimal text with a self-describing header."""
    lines = [f"# ppk-counts v1 spec={table.spec.canonical()} N={table.N}\n"]
    lines.extend(f"{n} {c}\n" for n, c in enumerate(table.counts))
    with open(path, "w", encoding="ascii") as fh:
        fh.writelines(lines)


def read_count_cache(path) -> CountTable:
    """Read and validate a count cache file written by write_count_cache."""
    with open(path, encoding="ascii") as fh:
        header = fh.readline()
        m = _CACHE_HEADER.fullmatch(header)
        if not m:
            raise ValueError(f"bad count cache header: {header!r}")
        spec = PartsSpec.from_string(m.group(1))
        N = int(m.group(2))
        counts = []
        for expect, line in enumerate(fh):
            fields = line.split()
            if len(fields) != 2 or int(fields[0]) != expect:
                raise ValueError(f"corrupt count cache line {expect + 2}: {line!r}")
            value = int(fields[1])
            if value < 0:
                raise ValueError(f"negative count in cache at n = {expect}")
            counts.append(value)
    if len(counts) != N + 1:
        raise ValueError(f"count cache body has {len(counts)} rows, expected {N + 1}")
    return CountTable(spec, N, counts)
