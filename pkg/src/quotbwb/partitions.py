"""Partitions, GL highest weights, and their index combinatorics.

Partitions are plain tuples of positive integers in weakly decreasing
order with trailing zeros never stored, so tuple equality is partition
equality.  Weights (weakly decreasing integer sequences, possibly
negative) keep their full entry list: two weights of different lengths
are different objects even when they agree up to trailing zeros.
"""

from dataclasses import dataclass
from functools import cache
from typing import Iterable, Optional, Sequence, Union

Partition = tuple[int, ...]


def parity_sign(k: int) -> int:
    """(-1)^k as an exact integer, valid for negative k."""
    return -1 if k & 1 else 1


def partition(parts: Iterable[int]) -> Partition:
    """Canonicalize an iterable into a partition (validating monotonicity)."""
    p = tuple(int(x) for x in parts)
    while p and p[-1] == 0:
        p = p[:-1]
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"not weakly decreasing: {p}")
    if p and p[-1] < 0:
        raise ValueError(f"negative part in partition: {p}")
    return p


def size(lam: Partition) -> int:
    return sum(lam)


def part(lam: Sequence[int], i: int) -> int:
    """i-th part (1-indexed), zero beyond the stored length."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram: result[j] = #{i : lam_i >= j+1}."""
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def contains(lam: Partition, nu: Partition) -> bool:
    """Whether nu fits inside lam row by row."""
    return len(nu) <= len(lam) and all(nu[i] <= lam[i] for i in range(len(nu)))


def durfee_rank(lam: Partition) -> int:
    """Side length of the Durfee square: largest j with lam_j >= j."""
    j = 0
    while part(lam, j + 1) >= j + 1:
        j += 1
    return j


@dataclass(frozen=True)
class Weight:
    """A GL highest weight: weakly decreasing integers of explicit length."""

    entries: tuple[int, ...]

    def __post_init__(self):
        e = tuple(int(x) for x in self.entries)
        if any(e[i] < e[i + 1] for i in range(len(e) - 1)):
            raise ValueError(f"not weakly decreasing: {e}")
        object.__setattr__(self, "entries", e)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def total(self) -> int:
        return sum(self.entries)


WeightLike = Union[Weight, Partition, Sequence[int]]


def as_weight(w: WeightLike, length: int) -> Weight:
    """Embed a partition or weight into a weight of the given length.

    Partitions pad with trailing zeros.  Weights of the exact length pass
    through; shorter weights gain interior zeros at the sign boundary,
    matching the canonical form (gamma, 0...0, -delta).  A partition with
    more parts than `length` has no embedding (the Schur functor of a
    bundle of that rank is zero) and raises ValueError; callers treat
    that as the zero bundle.
    """
    entries = tuple(w.entries) if isinstance(w, Weight) else tuple(int(x) for x in w)
    if len(entries) > length:
        raise ValueError(f"weight {entries} does not fit in length {length}")
    pos = tuple(x for x in entries if x > 0)
    zer = tuple(x for x in entries if x == 0)
    neg = tuple(x for x in entries if x < 0)
    if pos + zer + neg != entries:
        raise ValueError(f"not weakly decreasing: {entries}")
    return Weight(pos + (0,) * (length - len(pos) - len(neg)) + neg)


def negate_reverse(w: Weight) -> Weight:
    """The dual weight -w = (-w_k, ..., -w_1)."""
    return Weight(tuple(-x for x in reversed(w.entries)))


def shift(w: Weight, c: int) -> Weight:
    """Add c to every entry (a determinant twist)."""
    return Weight(tuple(x + c for x in w.entries))


def split_signs(w: Weight) -> tuple[Partition, Partition]:
    """Write w = (gamma, -delta) and return the partitions (gamma, delta)."""
    gamma = partition(x for x in w.entries if x > 0)
    delta = partition(-x for x in reversed(w.entries) if x < 0)
    return gamma, delta


def t_index(chi: WeightLike, t: int) -> Optional[int]:
    """The t-index of a weakly decreasing sequence, or None.

    j qualifies when chi_j >= j + t and chi_{j+1} <= j (the boundary
    conditions j = 0 and j = length drop the vacuous half).  For t >= 0
    at most one j qualifies; for t = 0 it is the Durfee rank.
    """
    entries = tuple(chi.entries) if isinstance(chi, Weight) else tuple(chi)
    m = len(entries)
    found = None
    for j in range(m + 1):
        ok_low = j == 0 or entries[j - 1] >= j + t
        if isinstance(chi, Weight):
            ok_high = j == m or entries[j] <= j
        else:
            ok_high = part(entries, j + 1) <= j
        if ok_low and ok_high:
            if found is not None:
                raise AssertionError(f"t-index not unique for {entries}, t={t}")
            found = j
    return found


def t_eta_indices(mu: Partition, t: int, eta: Weight) -> list[int]:
    """All qualifying (t; eta)-indices of mu, smallest first.

    i qualifies when mu_{i+1-s} >= i + t - gamma^dag_s and
    mu_{i+s} <= i + delta^dag_s for all s >= 1, where eta = (gamma, -delta).
    Constraints with row index <= 0 are vacuous; rows past mu are zero.
    """
    gamma, delta = split_signs(eta)
    gdag, ddag = conjugate(gamma), conjugate(delta)
    out = []
    for i in range(0, len(mu) + len(gamma) + 1):
        ok = all(part(mu, i + 1 - s) >= i + t - part(gdag, s) for s in range(1, i + 1))
        if ok:
            ok = all(part(mu, i + s) <= i + part(ddag, s)
                     for s in range(1, len(mu) - i + 1))
        if ok:
            out.append(i)
    return out


def t_eta_index(mu: Partition, t: int, eta: Weight) -> Optional[int]:
    """Smallest (t; eta)-index of mu, or None when none qualifies."""
    found = t_eta_indices(mu, t, eta)
    return found[0] if found else None


def partitions_in_box(rows: int, cols: int, total: Optional[int] = None) -> list[Partition]:
    """All partitions with <= rows parts, each <= cols, in descending lex order.

    With `total` given, only partitions of that size.  The order is fixed so
    that parallel scans chunk the same list identically on every run.
    """
    if total is not None and (total < 0 or total > rows * cols):
        return []
    out: list[Partition] = []

    def rec(prefix: list[int], bound: int, remaining: Optional[int]):
        if remaining == 0 or len(prefix) == rows:
            if remaining in (None, 0):
                out.append(tuple(prefix))
            return
        if remaining is None:
            out.append(tuple(prefix))
        top = min(bound, cols)
        if remaining is not None:
            top = min(top, remaining)
        slots = rows - len(prefix)
        for x in range(top, 0, -1):
            if remaining is not None and x * slots < remaining:
                break
            prefix.append(x)
            rec(prefix, x, None if remaining is None else remaining - x)
            prefix.pop()

    rec([], cols, total)
    return out


@cache
def subpartitions(lam: Partition, max_rows: Optional[int] = None) -> tuple[Partition, ...]:
    """All partitions contained in lam (optionally with a row cap)."""
    rows = len(lam) if max_rows is None else min(max_rows, len(lam))
    out: list[Partition] = []

    def rec(prefix: list[int], r: int):
        out.append(partition(prefix))
        if r >= rows:
            return
        hi = min(lam[r], prefix[-1] if prefix else lam[0])
        for x in range(hi, 0, -1):
            prefix.append(x)
            rec(prefix, r + 1)
            prefix.pop()

    rec([], 0)
    return tuple(sorted(set(out), reverse=True))


def inversions(seq: Sequence[int]) -> int:
    """Pairs i < j with seq[i] < seq[j]: the length of the permutation
    sorting seq into strictly decreasing order.  Stable merge count."""
    arr = list(seq)
    if len(arr) < 2:
        return 0

    def count(a: list[int]) -> tuple[list[int], int]:
        if len(a) <= 1:
            return a, 0
        mid = len(a) // 2
        left, nl = count(a[:mid])
        right, nr = count(a[mid:])
        merged, n, i, j = [], nl + nr, 0, 0
        while i < len(left) and j < len(right):
            if left[i] >= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                n += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, n

    return count(arr)[1]


def abacus_check(alpha: Partition, lam: Partition, slots: int, q: int
                 ) -> Optional[tuple[int, bool]]:
    """Sorting-permutation length and bounds for the two-block abacus string.

    Builds (alpha_i, alpha_{i-1}+1, ..., alpha_1+i-1, lam_q, ..., lam_1+q-1)
    with alpha padded to `slots` parts and lam to q parts.  Returns None on a
    repetition; otherwise (length, bound_holds) where bound_holds checks both
    length <= |alpha| and alpha_{i-s} >= q - lam^dag_s for 0 <= s < i.
    """
    if len(alpha) > slots or len(lam) > q:
        raise ValueError("declared block sizes too small")
    block_a = [part(alpha, slots - s) + s for s in range(slots)]
    block_l = [part(lam, q - s) + s for s in range(q)]
    word = block_a + block_l
    if len(set(word)) != len(word):
        return None
    # ascending sort here (each block is already increasing), so count
    # out-of-order pairs for the increasing order
    length = inversions([-x for x in word])
    ldag = conjugate(lam)
    bound = length <= size(alpha) and all(
        part(alpha, slots - s) >= q - (q if s == 0 else part(ldag, s))
        for s in range(slots)
    )
    return length, bound


def format_parts(seq: Sequence[int]) -> str:
    """Comma-separated rendering; the empty partition prints as ''."""
    return ",".join(str(x) for x in seq)


def parse_parts(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(piece) for piece in text.split(","))
