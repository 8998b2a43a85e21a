"""Exact Schur-functor dimensions and Littlewood-Richardson expansions.

Everything is arbitrary-precision integer arithmetic.  LR coefficients are
counted by depth-first enumeration of column-strict skew fillings whose
reverse reading word is a lattice word; Horn, Weyl, size and containment
predicates serve only as pruning filters (positivity never comes from a
saturation shortcut).  Memo tables are keyed on canonical tuples and grow
unboundedly; the `lr` triple cache can be persisted by the CLI.
"""

from dataclasses import dataclass
from typing import Optional

from .partitions import (
    Partition,
    Weight,
    WeightLike,
    as_weight,
    conjugate,
    contains,
    part,
    partition,
    partitions_in_box,
    shift,
    size,
    subpartitions,
)

_LR_CACHE: dict[tuple[Partition, Partition, Partition], int] = {}
_SKEW_CACHE: dict[tuple[Partition, Partition, Optional[int]], dict[Partition, int]] = {}
_LR_EXPAND_CACHE: dict[tuple[Partition, Partition, Optional[int]], dict[Partition, int]] = {}
_SUM_CACHE: dict[tuple[Partition, int, Optional[int]], dict[Partition, int]] = {}


def hook_lengths(lam: Partition) -> list[int]:
    dag = conjugate(lam)
    return [lam[i] - j + dag[j - 1] - i for i in range(len(lam))
            for j in range(1, lam[i] + 1)]


def schur_dim(lam: Partition, n: int) -> int:
    """Hook-content formula: prod (n + j - i) / hook(i, j), exactly.

    Zero when lam has more than n rows (the content factor at cell (n+1, 1)
    vanishes), so the result is the dimension of the Schur functor applied
    to an n-dimensional space.
    """
    lam = partition(lam)
    if len(lam) > n:
        return 0
    num = 1
    for i in range(len(lam)):
        for j in range(1, lam[i] + 1):
            num *= n + j - (i + 1)
    den = 1
    for h in hook_lengths(lam):
        den *= h
    assert num % den == 0
    return num // den


def weight_dim(w: WeightLike, n: int) -> int:
    """Dimension of the irreducible GL_n representation with highest weight w.

    Embeds w into length n, twists by a power of the determinant until all
    entries are nonnegative, and evaluates hook-content on the resulting
    partition.  Weights that do not fit in length n give zero.
    """
    try:
        ww = as_weight(w, n)
    except ValueError:
        return 0
    c = -min(ww.entries, default=0)
    if c > 0:
        ww = shift(ww, c)
    return schur_dim(partition(ww.entries), n)


def _skew_cells(lam: Partition, nu: Partition) -> list[tuple[int, int]]:
    """Cells of lam/nu in reverse reading order: rows top-down, right-to-left."""
    return [(r, c) for r in range(1, len(lam) + 1)
            for c in range(lam[r - 1], part(nu, r), -1)]


def skew_expand(lam: Partition, nu: Partition, max_rows: Optional[int] = None
                ) -> dict[Partition, int]:
    """Expansion of the skew Schur functor: {beta: c^lam_{nu, beta}}.

    Counts LR fillings of lam/nu cell by cell in reverse reading order.
    `max_rows` caps the number of distinct letters (partitions beta with
    more rows are dropped, matching a rank-limited target bundle).
    """
    lam, nu = partition(lam), partition(nu)
    if not contains(lam, nu):
        raise ValueError(f"{nu} is not contained in {lam}")
    if max_rows is not None and max_rows >= size(lam) - size(nu):
        max_rows = None
    key = (lam, nu, max_rows)
    hit = _SKEW_CACHE.get(key)
    if hit is not None:
        return hit
    cells = _skew_cells(lam, nu)
    ncells = len(cells)
    cap = ncells if max_rows is None else max_rows
    counts = [0] * (cap + 2)
    grid: dict[tuple[int, int], int] = {}
    out: dict[Partition, int] = {}

    def fill(idx: int):
        if idx == ncells:
            beta = partition(counts[1:1 + cap])
            out[beta] = out.get(beta, 0) + 1
            return
        r, c = cells[idx]
        above = grid.get((r - 1, c), 0)
        right = grid.get((r, c + 1), cap + 1) if c + 1 <= lam[r - 1] else cap + 1
        for x in range(above + 1, min(r, cap, right) + 1):
            if x > 1 and counts[x] >= counts[x - 1]:
                continue
            counts[x] += 1
            grid[(r, c)] = x
            fill(idx + 1)
            counts[x] -= 1
        grid.pop((r, c), None)

    fill(0)
    _SKEW_CACHE[key] = out
    return out


def lr_expand(alpha: Partition, beta: Partition, max_rows: Optional[int] = None
              ) -> dict[Partition, int]:
    """Tensor-product expansion {gamma: c^gamma_{alpha, beta}}.

    Builds chains alpha = g0 < g1 < ... by adding horizontal strips of sizes
    beta_i subject to the lattice condition (the count of letter i in rows
    <= r never exceeds the count of letter i-1 in rows <= r-1).
    """
    alpha, beta = partition(alpha), partition(beta)
    if max_rows is not None and max_rows >= len(alpha) + len(beta):
        max_rows = None
    key = (alpha, beta, max_rows)
    hit = _LR_EXPAND_CACHE.get(key)
    if hit is not None:
        return hit
    rowcap = max_rows if max_rows is not None else len(alpha) + len(beta)
    out: dict[Partition, int] = {}

    def add_letter(shape: tuple[int, ...], prev_cum: Optional[tuple[int, ...]],
                   letter: int):
        if letter > len(beta):
            gam = partition(shape)
            out[gam] = out.get(gam, 0) + 1
            return
        b = beta[letter - 1]
        nrows = min(rowcap, len(shape) + 1)
        srows = [0] * nrows

        def place(r: int, placed: int):
            if placed == b:
                new = tuple((shape[i] if i < len(shape) else 0) + srows[i]
                            for i in range(nrows))
                cum, tot = [], 0
                for i in range(nrows):
                    tot += srows[i]
                    cum.append(tot)
                add_letter(new, tuple(cum), letter + 1)
                return
            if r > nrows:
                return
            old = shape[r - 1] if r - 1 < len(shape) else 0
            hi = b - placed
            if r >= 2:
                above_old = shape[r - 2] if r - 2 < len(shape) else 0
                hi = min(hi, above_old - old)
            if prev_cum is not None:
                allowed = (prev_cum[r - 2] if r >= 2 else 0) - placed
                hi = min(hi, allowed)
            for s in range(hi, -1, -1):
                srows[r - 1] = s
                place(r + 1, placed + s)
            srows[r - 1] = 0

        place(1, 0)

    add_letter(alpha, None, 1)
    out = {g: m for g, m in out.items() if max_rows is None or len(g) <= max_rows}
    _LR_EXPAND_CACHE[key] = out
    return out


@dataclass(frozen=True)
class HornRecord:
    size: bool
    weyl: bool
    dominance1: bool
    dominance2: Optional[bool]

    def all_hold(self) -> bool:
        return self.size and self.weyl and self.dominance1 and self.dominance2 in (True, None)


def _prefix(seq, s: int) -> int:
    return sum(seq[:s])


def horn_predicates(alpha, beta, gamma) -> HornRecord:
    """Necessary conditions for c^gamma_{alpha, beta} != 0.

    size: |alpha| + |beta| = |gamma|; weyl: alpha_i + beta_j >= gamma_{i+j-1};
    dominance1: partial sums of gamma bounded by those of alpha + beta;
    dominance2: partial sums of alpha and beta bounded by double-width sums
    of gamma.  dominance2 is evaluated for partitions only (None for weights,
    where the inequality is stated but untested).
    """
    seqs = []
    all_partitions = True
    for x in (alpha, beta, gamma):
        if isinstance(x, Weight):
            seqs.append(tuple(x.entries))
            all_partitions = False
        else:
            seqs.append(partition(x))
    a, b, g = seqs
    ok_size = sum(a) + sum(b) == sum(g)
    ok_weyl = True
    for i in range(1, len(g) + 1):
        for j in range(1, len(g) + 2 - i):
            ai = a[i - 1] if i <= len(a) else (0 if all_partitions else None)
            bj = b[j - 1] if j <= len(b) else (0 if all_partitions else None)
            if ai is None or bj is None:
                continue
            if ai + bj < g[i + j - 2]:
                ok_weyl = False
    top = max(len(a), len(b), len(g)) + 1
    ok_dom1 = all(_prefix(g, s) <= _prefix(a, s) + _prefix(b, s) for s in range(1, top))
    if all_partitions:
        ok_dom2 = all(_prefix(a, t) + _prefix(b, t) <= _prefix(g, 2 * t)
                      for t in range(1, top))
    else:
        ok_dom2 = None
    return HornRecord(ok_size, ok_weyl, ok_dom1, ok_dom2)


def lr(alpha: Partition, beta: Partition, gamma: Partition) -> int:
    """The Littlewood-Richardson coefficient c^gamma_{alpha, beta}.

    Fast zero paths (size, containment, Horn) then a direct count of
    lattice-word fillings of gamma/alpha with content beta, memoized on
    the swap-canonical key.
    """
    alpha, beta, gamma = partition(alpha), partition(beta), partition(gamma)
    if alpha > beta:
        alpha, beta = beta, alpha
    if size(alpha) + size(beta) != size(gamma):
        return 0
    if not contains(gamma, alpha) or not contains(gamma, beta):
        return 0
    if not horn_predicates(alpha, beta, gamma).all_hold():
        return 0
    key = (alpha, beta, gamma)
    hit = _LR_CACHE.get(key)
    if hit is not None:
        return hit
    cells = _skew_cells(gamma, alpha)
    counts = [0] * (len(beta) + 2)
    grid: dict[tuple[int, int], int] = {}
    total = 0

    def fill(idx: int) -> int:
        if idx == len(cells):
            return 1
        n = 0
        r, c = cells[idx]
        above = grid.get((r - 1, c), 0)
        right = grid.get((r, c + 1), len(beta) + 1) if c + 1 <= gamma[r - 1] else len(beta) + 1
        for x in range(above + 1, min(r, len(beta), right) + 1):
            if counts[x] >= beta[x - 1]:
                continue
            if x > 1 and counts[x] >= counts[x - 1]:
                continue
            counts[x] += 1
            grid[(r, c)] = x
            n += fill(idx + 1)
            counts[x] -= 1
        grid.pop((r, c), None)
        return n

    total = fill(0)
    _LR_CACHE[key] = total
    return total


def direct_sum_expand(gamma: Partition, max_rows: Optional[int] = None
                      ) -> list[tuple[Partition, Partition, int]]:
    """All (alpha, beta, c^gamma_{alpha, beta}) with nonzero coefficient.

    The decomposition of a Schur functor of a direct sum; deterministic
    (alpha descending, then beta descending) ordering.
    """
    gamma = partition(gamma)
    out = []
    for alpha in subpartitions(gamma, max_rows):
        exp = skew_expand(gamma, alpha, max_rows)
        for beta in sorted(exp, reverse=True):
            out.append((alpha, beta, exp[beta]))
    return out


def cauchy_terms(t: int) -> list[Partition]:
    """All partitions of size t, in the fixed descending-lex order."""
    return partitions_in_box(t, t, t) if t > 0 else [()]


def weight_tensor_expand(eta: WeightLike, rho: WeightLike, length: int
                         ) -> dict[Weight, int]:
    """Generalized LR expansion of S^eta x S^rho for GL_length.

    Both factors are shifted by determinant powers until they are
    partitions, expanded classically, and the results shifted back;
    only weights fitting in `length` survive.
    """
    we, wr = as_weight(eta, length), as_weight(rho, length)
    m = max(0, -min(we.entries, default=0))
    k = max(0, -min(wr.entries, default=0))
    a = partition(shift(we, m).entries)
    b = partition(shift(wr, k).entries)
    out: dict[Weight, int] = {}
    for gam, mult in lr_expand(a, b, max_rows=length).items():
        w = shift(as_weight(gam, length), -(m + k))
        out[w] = out.get(w, 0) + mult
    return out


def tensor_expand_many(weights: list[WeightLike], length: int) -> dict[Weight, int]:
    """Fold weight_tensor_expand over a list (empty product = trivial weight)."""
    acc = {as_weight((), length): 1}
    for w in weights:
        nxt: dict[Weight, int] = {}
        for base, m0 in acc.items():
            for res, m1 in weight_tensor_expand(base, w, length).items():
                nxt[res] = nxt.get(res, 0) + m0 * m1
        acc = nxt
    return acc


def schur_of_sum_copies(beta: Partition, copies: int, max_rows: Optional[int] = None
                        ) -> dict[Partition, int]:
    """Decompose S^beta(U + ... + U) (`copies` summands) into S^theta(U).

    Iterated direct-sum expansion recombined through LR; pure LR data, no
    Kronecker coefficients.
    """
    beta = partition(beta)
    if copies <= 0:
        return {(): 1} if not beta else {}
    key = (beta, copies, max_rows)
    if key in _SUM_CACHE:
        return _SUM_CACHE[key]
    if copies == 1:
        out = {beta: 1} if max_rows is None or len(beta) <= max_rows else {}
    else:
        out = {}
        rest_cap = None if max_rows is None else max_rows * (copies - 1)
        for a in subpartitions(beta, max_rows):
            for b, c in skew_expand(beta, a, rest_cap).items():
                for theta1, m1 in schur_of_sum_copies(b, copies - 1,
                                                      max_rows).items():
                    for theta, m2 in lr_expand(a, theta1, max_rows).items():
                        out[theta] = out.get(theta, 0) + c * m1 * m2
    _SUM_CACHE[key] = out
    return out


def lemma45_check(sigma: Partition, lam: Partition, chi: WeightLike, s: int) -> bool:
    """Conjugate-sum inequality for generalized LR factors.

    sigma^dag_1 + ... + sigma^dag_s - |lam| <= chi^dag_1 + ... + chi^dag_s,
    where chi^dag_j counts entries of chi that are >= j.
    """
    entries = tuple(chi.entries) if isinstance(chi, Weight) else tuple(chi)
    sdag = conjugate(partition(sigma))
    lhs = sum(part(sdag, j) for j in range(1, s + 1)) - size(partition(lam))
    rhs = sum(sum(1 for x in entries if x >= j) for j in range(1, s + 1))
    return lhs <= rhs


def koszul_pair_mult(theta: Partition, sigma: Partition, max_rows: int) -> int:
    """Sum over alpha, beta of c^theta_{alpha,beta} * c^sigma_{alpha,beta}.

    Evaluated as sum_alpha <s_{theta/alpha}, s_{sigma/alpha}> over common
    subpartitions with at most `max_rows` rows.
    """
    theta, sigma = partition(theta), partition(sigma)
    if size(theta) != size(sigma):
        return 0
    meet = partition(min(part(theta, i), part(sigma, i))
                     for i in range(1, min(len(theta), len(sigma)) + 1))
    total = 0
    for alpha in subpartitions(meet, max_rows):
        e1 = skew_expand(theta, alpha, max_rows)
        e2 = skew_expand(sigma, alpha, max_rows)
        if len(e2) < len(e1):
            e1, e2 = e2, e1
        total += sum(m * e2.get(b, 0) for b, m in e1.items())
    return total


def lr_cache_snapshot() -> dict[tuple[Partition, Partition, Partition], int]:
    return dict(_LR_CACHE)


def lr_cache_merge(entries: dict[tuple[Partition, Partition, Partition], int]) -> None:
    for (a, b, g), c in entries.items():
        if a > b:
            a, b = b, a
        _LR_CACHE[(a, b, g)] = c
