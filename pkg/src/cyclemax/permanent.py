"""Permanents of 0/1 matrices and the permanent-based cycle bounds.

Two routes to the same number:

* :func:`ryser_permanent`, Ryser's inclusion-exclusion formula on a dense
  matrix, subsets visited in Gray-code order (``O(2^n n)``).
* :func:`block_permanent`, the block form for matrices whose diagonal blocks are
  identities and whose off-diagonal blocks are all-zero or all-one. It sums over
  how many columns are taken from each block instead of which ones, so the cost
  is ``O(p^2 prod(n_i + 1))`` rather than ``O(2^n)``.

Large block permanents are evaluated residue-wise modulo several 31-bit primes
with numpy and reassembled by the Chinese remainder theorem. The modulus always
exceeds the product of row sums, which bounds the permanent, so the result is
exact.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb, prod
from typing import Sequence

import numpy as np

from .graph import BlowupSpec, Graph, GraphError

RYSER_MAX_N = 30
# block sums with fewer k-vectors than this use plain integer arithmetic
EXACT_PATH_LIMIT = 20_000
_INNER_TARGET = 1 << 17


class PermanentError(GraphError):
    pass


@dataclass(frozen=True)
class BlockMatrixSpec:
    """Block 0/1 matrix: identity blocks on the diagonal, ``h[i][j] * J`` elsewhere."""

    sizes: tuple[int, ...]
    h: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        h = tuple(tuple(int(x) for x in row) for row in self.h)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "h", h)
        p = len(sizes)
        if p == 0:
            raise PermanentError("block spec needs at least one block")
        if any(s < 1 for s in sizes):
            raise PermanentError("block sizes must be positive")
        if len(h) != p or any(len(row) != p for row in h):
            raise PermanentError(f"h must be {p}x{p}")
        for i in range(p):
            if h[i][i] != 0:
                raise PermanentError("h must have a zero diagonal")
            for j in range(p):
                if h[i][j] not in (0, 1) or h[i][j] != h[j][i]:
                    raise PermanentError("h must be a symmetric 0/1 matrix")

    @property
    def p(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @classmethod
    def from_blowup(cls, spec: BlowupSpec) -> "BlockMatrixSpec":
        kept = [i for i, s in enumerate(spec.sizes) if s > 0]
        h = spec.base.adjacency_matrix()
        return cls(
            tuple(spec.sizes[i] for i in kept),
            tuple(tuple(h[i][j] for j in kept) for i in kept),
        )

    @classmethod
    def from_json(cls, data: dict) -> "BlockMatrixSpec":
        try:
            p, sizes, h = data["p"], data["sizes"], data["h"]
        except (KeyError, TypeError) as exc:
            raise PermanentError(f"block spec JSON needs keys p, sizes, h ({exc})") from None
        if p != len(sizes):
            raise PermanentError(f"p={p} but {len(sizes)} sizes given")
        return cls(tuple(sizes), tuple(tuple(r) for r in h))

    def to_json(self) -> dict:
        return {"p": self.p, "sizes": list(self.sizes), "h": [list(r) for r in self.h]}


def expand_block_spec(spec: BlockMatrixSpec) -> list[list[int]]:
    """The full ``n x n`` 0/1 matrix described by ``spec``."""
    block_of = [i for i, s in enumerate(spec.sizes) for _ in range(s)]
    n = len(block_of)
    return [
        [1 if r == c else spec.h[block_of[r]][block_of[c]] for c in range(n)]
        for r in range(n)
    ]


def ryser_permanent(matrix: Sequence[Sequence[int]]) -> int:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise PermanentError("matrix must be square")
    if n > RYSER_MAX_N:
        raise PermanentError(f"dense Ryser limited to n <= {RYSER_MAX_N}")
    if n == 0:
        return 1
    cols = [[matrix[i][j] for i in range(n)] for j in range(n)]
    rowsums = [0] * n
    total = 0
    chosen = 0
    gray = 0
    for step in range(1, 1 << n):
        # column whose membership flips between consecutive Gray codes
        j = (step & -step).bit_length() - 1
        gray ^= 1 << j
        if gray >> j & 1:
            chosen += 1
            for i, a in enumerate(cols[j]):
                if a:
                    rowsums[i] += a
        else:
            chosen -= 1
            for i, a in enumerate(cols[j]):
                if a:
                    rowsums[i] -= a
        term = prod(rowsums)
        total += -term if (n - chosen) & 1 else term
    return total


def _neighbours(spec: BlockMatrixSpec) -> list[list[int]]:
    return [[c for c in range(spec.p) if spec.h[r][c]] for r in range(spec.p)]


def block_permanent_exact(spec: BlockMatrixSpec) -> int:
    """Block Ryser sum in plain integer arithmetic (the reference route)."""
    sizes = spec.sizes
    nbrs = _neighbours(spec)
    binoms = [[comb(s, k) for k in range(s + 1)] for s in sizes]
    result = 0
    for ks in product(*(range(s + 1) for s in sizes)):
        cprod = 1
        for row, s in enumerate(sizes):
            rsum = sum(ks[c] for c in nbrs[row])
            # pow(0, 0) == 1, the empty-product convention this sum needs
            cprod *= (rsum + 1) ** ks[row] * rsum ** (s - ks[row])
            if not cprod:
                break
        if not cprod:
            continue
        coeff = 1
        for i, s in enumerate(sizes):
            coeff *= binoms[i][ks[i]]
        sign = (sum(sizes) - sum(ks)) & 1
        result += -cprod * coeff if sign else cprod * coeff
    if result < 0:
        raise AssertionError("negative permanent")
    return result


# --- multi-modular route ----------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # bases 2, 3, 5, 7 are deterministic below 3.2e9
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _primes(count: int) -> tuple[int, ...]:
    out = []
    c = (1 << 31) - 1
    while len(out) < count:
        if _is_prime(c):
            out.append(c)
        c -= 2
    return tuple(out)


def _row_sum_bound(spec: BlockMatrixSpec) -> int:
    bound = 1
    for r, s in enumerate(spec.sizes):
        row = 1 + sum(spec.sizes[c] for c in range(spec.p) if spec.h[r][c])
        bound *= row**s
    return bound


def _crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        # x + m*t == r (mod q)
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
    return x


def _modular_sums(spec: BlockMatrixSpec, primes: tuple[int, ...], threads: int) -> list[int]:
    p = spec.p
    sizes = spec.sizes
    H = np.array(spec.h, dtype=np.int64)
    P = np.array(primes, dtype=np.int64)[:, None]
    nprimes = len(primes)
    rmax = max(sum(sizes[c] for c in range(p) if spec.h[r][c]) for r in range(p))
    width = max(sizes) + 1
    # power[q, row, r, k] = (r+1)^k r^(n_row-k) mod prime q
    power = np.zeros((nprimes, p, rmax + 1, width), dtype=np.int64)
    coeff = np.zeros((nprimes, p, width), dtype=np.int64)
    for qi, q in enumerate(primes):
        for row, s in enumerate(sizes):
            for r in range(rmax + 1):
                for k in range(s + 1):
                    power[qi, row, r, k] = pow(r + 1, k, q) * pow(r, s - k, q) % q
            for k in range(s + 1):
                c = comb(s, k) % q
                coeff[qi, row, k] = (q - c) % q if (s - k) & 1 else c

    # inner dimensions: trailing blocks whose k-grid stays under the target size
    inner = []
    count = 1
    for i in range(p - 1, -1, -1):
        if count * (sizes[i] + 1) > _INNER_TARGET and inner:
            break
        inner.insert(0, i)
        count *= sizes[i] + 1
    outer = [i for i in range(p) if i not in inner]
    grids = np.meshgrid(*(np.arange(sizes[i] + 1) for i in inner), indexing="ij")
    kin = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
    rs_inner = kin @ H[:, inner].T  # contribution of inner k's to every row sum

    # per-prime coefficient of the inner k-vector, independent of the outer part
    cin = np.ones((nprimes, len(kin)), dtype=np.int64)
    for col, i in enumerate(inner):
        cin = cin * coeff[:, i, kin[:, col]] % P

    def chunk(outer_values: Sequence[tuple[int, ...]]) -> np.ndarray:
        acc = np.zeros(nprimes, dtype=np.int64)
        for ko in outer_values:
            rs = rs_inner + (H[:, outer] @ np.array(ko, dtype=np.int64) if outer else 0)
            val = cin.copy()
            for col, i in enumerate(outer):
                val = val * coeff[:, i, ko[col]][:, None] % P
            for row in range(p):
                if row in inner:
                    krow = kin[:, inner.index(row)]
                else:
                    krow = ko[outer.index(row)]
                val = val * power[:, row, rs[:, row], krow] % P
            acc = (acc + val.sum(axis=1) % P[:, 0]) % P[:, 0]
        return acc

    outer_all = list(product(*(range(sizes[i] + 1) for i in outer)))
    if threads > 1 and len(outer_all) > 1:
        step = -(-len(outer_all) // threads)
        pieces = [outer_all[i : i + step] for i in range(0, len(outer_all), step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partial = list(pool.map(chunk, pieces))
    else:
        partial = [chunk(outer_all)]
    total = np.zeros(nprimes, dtype=np.int64)
    for part in partial:
        total = (total + part) % P[:, 0]
    return [int(x) for x in total]


def default_threads() -> int:
    env = os.environ.get("CYCLEMAX_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def block_permanent_modular(spec: BlockMatrixSpec, threads: int | None = None) -> int:
    bound = _row_sum_bound(spec)
    count = 1
    while prod(_primes(count)) <= bound:
        count += 1
    primes = _primes(count)
    residues = _modular_sums(spec, primes, threads or default_threads())
    value = _crt(residues, primes)
    if value > bound:
        raise AssertionError("modular reconstruction exceeded the row-sum bound")
    return value


def block_permanent(spec: BlockMatrixSpec, threads: int | None = None) -> int:
    """Exact permanent of ``expand_block_spec(spec)``."""
    vectors = prod(s + 1 for s in spec.sizes)
    if vectors <= EXACT_PATH_LIMIT:
        return block_permanent_exact(spec)
    return block_permanent_modular(spec, threads)


# --- cycle bounds -----------------------------------------------------------


def cycle_bound_perm(g: Graph) -> int:
    """``floor(perm(A + I) / 2)`` for the adjacency matrix ``A`` of ``g``."""
    if g.n > RYSER_MAX_N:
        raise PermanentError(f"dense permanent bound limited to n <= {RYSER_MAX_N}")
    a = g.adjacency_matrix()
    for i in range(g.n):
        a[i][i] = 1
    return ryser_permanent(a) // 2


def cycle_bound_blowup(spec: BlockMatrixSpec | BlowupSpec, threads: int | None = None) -> int:
    """``floor(perm / 2)`` of the block matrix of a blowup: bounds the cycles of
    every graph homomorphic to the base with these part sizes."""
    if isinstance(spec, BlowupSpec):
        spec = BlockMatrixSpec.from_blowup(spec)
    return block_permanent(spec, threads) // 2


# --- cycle-shaped block structure ------------------------------------------
#
# When the off-diagonal pattern ``h`` is a single cycle, the permanent counts
# (i) a set of fixed points in each block and (ii) a bijection of the remaining
# rows onto the remaining columns where block i sends a_i rows forward and b_i
# rows backward along the cycle. Column balance forces a_{i-1} - b_i = delta for
# one constant delta, so
#
#   perm = sum_delta trace(W_0 W_1 ... W_{L-1}),
#   W_i[a_{i-1}, a_i] = n_i! m_i! / ((n_i - m_i)! a_i! b_i!),
#   b_i = a_{i-1} - delta,  m_i = a_i + b_i <= n_i,
#
# which costs O(L s^4) instead of O(L^2 s^L) for part sizes around s.

_RING_PRIME_BITS = 21


def cycle_order(spec: BlockMatrixSpec) -> list[int] | None:
    """Blocks in cyclic order if ``h`` is one cycle through all ``p >= 3`` blocks."""
    p = spec.p
    nbrs = _neighbours(spec)
    if p < 3 or any(len(x) != 2 for x in nbrs):
        return None
    order = [0]
    prev, cur = -1, 0
    while True:
        nxt = nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
        if nxt == 0:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order if len(order) == p else None


def _primes_exceeding(bound: int, bits: int) -> tuple[int, ...]:
    """Descending primes below ``2^bits`` whose product exceeds ``bound``."""
    out, modulus = [], 1
    c = (1 << bits) - 1
    while modulus <= bound:
        if _is_prime(c):
            out.append(c)
            modulus *= c
        c -= 2
    return tuple(out)


def _mulmod(x: np.ndarray, y: np.ndarray, p: np.ndarray) -> np.ndarray:
    z = x * y  # exact: both factors < 2^21
    return z - np.floor(z / p) * p


def _ring_residues(sizes: Sequence[int], primes: Sequence[int]) -> list[int]:
    top = max(sizes)
    nq = len(primes)
    fact = np.ones((nq, top + 1), dtype=np.int64)
    P = np.array(primes, dtype=np.int64)
    for x in range(1, top + 1):
        fact[:, x] = fact[:, x - 1] * x % P
    inv = np.array(
        [[pow(int(f), -1, q) for f in row] for row, q in zip(fact, primes)], dtype=np.int64
    )
    Pf = P.astype(np.float64)
    Pq = Pf[:, None, None, None]
    deltas = np.arange(-top, top + 1)

    # 1/k! padded with zeros so that negative b picks up a zero
    inv_pad = np.zeros((nq, 3 * top + 2))
    inv_pad[:, top : 2 * top + 1] = inv
    chain = None
    for i, n_i in enumerate(sizes):
        n_prev = sizes[i - 1]
        # g(m) = n! m! / (n - m)!, zero outside 0..n; m = a + a_prev - delta
        g = np.zeros((nq, 3 * top + 2))
        ms = np.arange(n_i + 1)
        g[:, top + ms] = (fact[:, n_i][:, None] * fact[:, ms] % P[:, None]) * inv[:, n_i - ms] % P[:, None]
        a_prev = np.arange(n_prev + 1)
        a_cur = np.arange(n_i + 1)
        b = a_prev[None, :] - deltas[:, None]  # (delta, a_prev)
        m = b[:, :, None] + a_cur[None, None, :]
        w = g[:, np.clip(m + top, 0, g.shape[1] - 1)]
        # 1/b! and 1/a_prev! together; a_prev is the previous block's a
        rows = _mulmod(
            inv_pad[:, np.clip(b + top, 0, inv_pad.shape[1] - 1)],
            inv_pad[:, top + a_prev][:, None, :],
            Pf[:, None, None],
        )
        w = _mulmod(w, rows[:, :, :, None], Pq)
        if chain is None:
            chain = w
        else:
            # entries < 2^21 and at most 2^11 terms keep each dot product exact
            z = np.matmul(chain, w)
            chain = z - np.floor(z / Pq) * Pq
    traces = np.trace(chain, axis1=2, axis2=3)  # (prime, delta)
    return [int(int(t.sum()) % q) for t, q in zip(traces, primes)]


def cycle_block_permanent(spec: BlockMatrixSpec) -> int:
    """Exact permanent of a block matrix whose pattern ``h`` is a single cycle.

    Same value as :func:`block_permanent`; the cycle structure lets the sum run
    over one circulation parameter and a chain of small matrix products.
    """
    order = cycle_order(spec)
    if order is None:
        raise PermanentError("h is not a single cycle through all blocks")
    sizes = [spec.sizes[i] for i in order]
    if max(sizes) + 1 > 1 << 11:
        raise PermanentError("block too large for the float64 ring evaluator")
    bound = _row_sum_bound(spec)
    primes = _primes_exceeding(bound, _RING_PRIME_BITS)
    value = _crt(_ring_residues(sizes, primes), primes)
    if value > bound:
        raise AssertionError("ring reconstruction exceeded the row-sum bound")
    return value
