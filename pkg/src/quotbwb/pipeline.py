"""Quot-scheme cohomology via the two-Grassmannian embedding.

The embedding parameters, the exterior-power expansion of the cutting
bundle, the first page of the hypercohomology spectral sequence for
arbitrary insertions on the four universal bundles, and a conservative
assembler: exact tables are claimed only when every differential is
provably zero or forced (nonnegativity pinning, Euler pinning), otherwise
per-degree bounds are reported.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bwb import CohomTable, GrSpec, coh_bundle, kunneth
from .partitions import (
    Partition,
    parity_sign,
    Weight,
    WeightLike,
    as_weight,
    conjugate,
    negate_reverse,
    partition,
    partitions_in_box,
    size,
    split_signs,
    subpartitions,
)
from .schur import (
    koszul_pair_mult,
    lr_expand,
    schur_dim,
    skew_expand,
    weight_tensor_expand,
)


@dataclass(frozen=True)
class QuotSetup:
    """Rank-r degree-d quotients of V = O(-b_1) + ... + O(-b_n) on P^1.

    The twist m fixes the Grassmannian embedding; m >= b + d is required.
    Irreducibility of the parameter space holds unconditionally for the
    trivial splitting; for nontrivial splittings it is an assumption
    (recorded by `irreducibility_assumed`), since no effective threshold
    for d is available.
    """

    n: int
    r: int
    d: int
    splitting: tuple[int, ...] = ()
    m: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.r < self.n:
            raise ValueError("need 0 < r < n")
        if self.d < 0:
            raise ValueError("need d >= 0")
        s = tuple(self.splitting) if self.splitting else (0,) * self.n
        if len(s) != self.n or list(s) != sorted(s) or s[0] != 0:
            raise ValueError("splitting must be 0 = b_1 <= ... <= b_n")
        object.__setattr__(self, "splitting", s)
        m = self.m if self.m is not None else self.b + self.d
        if m < self.b + self.d:
            raise ValueError(f"twist m = {m} below b + d = {self.b + self.d}")
        object.__setattr__(self, "m", m)

    @property
    def b(self) -> int:
        return sum(self.splitting)

    @property
    def irreducibility_assumed(self) -> bool:
        return any(self.splitting)

    @property
    def quot_dim(self) -> int:
        return self.n * self.d + self.r * self.b + self.r * (self.n - self.r)


@dataclass(frozen=True)
class StrommeParams:
    """Derived data of the embedding into Gr(k1, N1) x Gr(k2, N2)."""

    n1: int
    k1: int
    r1: int
    n2: int
    k2: int
    r2: int
    quot_dim: int

    @property
    def rank_k(self) -> int:
        return 2 * self.k1 * self.r2

    @property
    def gr1(self) -> GrSpec:
        return GrSpec(self.k1, self.n1)

    @property
    def gr2(self) -> GrSpec:
        return GrSpec(self.k2, self.n2)


def stromme(setup: QuotSetup) -> StrommeParams:
    """Embedding parameters at twist m: section counts of V(m-1) and V(m)."""
    n, r, d, b, m = setup.n, setup.r, setup.d, setup.b, setup.m
    p = StrommeParams(
        n1=n * m - b,
        k1=(n - r) * m - b - d,
        r1=r * m + d,
        n2=n * (m + 1) - b,
        k2=(n - r) * (m + 1) - b - d,
        r2=r * (m + 1) + d,
        quot_dim=setup.quot_dim,
    )
    if p.k1 < 0:
        raise ValueError(f"negative k1 = {p.k1} (m too small)")
    assert p.n1 == p.k1 + p.r1 and p.n2 == p.k2 + p.r2
    assert p.k1 * p.r1 + p.k2 * p.r2 - p.rank_k == p.quot_dim
    return p


@dataclass(frozen=True)
class InsertionSpec:
    """Weights of Schur functors inserted on the four universal bundles.

    a1/a2 land on the rank k1/k2 subbundles (the sub-side tautological
    bundles), b1/b2 on the rank r1/r2 quotients.  Entries are partitions
    (padded to the bundle rank) or exact-length weights; a dual bundle
    S^w(E^dual) is entered as the bundle-side weight negate_reverse(w).
    """

    a1: tuple[WeightLike, ...] = ()
    b1: tuple[WeightLike, ...] = ()
    a2: tuple[WeightLike, ...] = ()
    b2: tuple[WeightLike, ...] = ()

    def key(self) -> tuple:
        def norm(ws):
            return tuple(tuple(w.entries) if isinstance(w, Weight) else tuple(w)
                         for w in ws)
        return (norm(self.a1), norm(self.b1), norm(self.a2), norm(self.b2))


EMPTY_INSERTION = InsertionSpec()


@dataclass(frozen=True)
class KoszulTerm:
    t: int
    mu: Partition
    sigma: Partition
    mult: int


def koszul_sigma_expansion(mu: Partition, r2: int) -> dict[Partition, int]:
    """Full expansion of S^{mu^dag}(B2^dual + B2^dual) into S^sigma(B2^dual).

    Multiplicity of sigma is sum over alpha, beta of
    c^{mu^dag}_{alpha,beta} * c^sigma_{alpha,beta}.
    """
    theta = conjugate(mu)
    out: dict[Partition, int] = {}
    for alpha in subpartitions(theta, r2):
        for beta, c1 in skew_expand(theta, alpha, r2).items():
            for sigma, c2 in lr_expand(alpha, beta, r2).items():
                out[sigma] = out.get(sigma, 0) + c1 * c2
    return out


def koszul_terms(params: StrommeParams, t: int) -> list[KoszulTerm]:
    """Summands (mu, sigma, mult) of the t-th exterior power of K^dual.

    mu runs over the k1 x 2r2 box with |mu| = t; sigma over partitions
    with at most r2 rows.  Zero multiplicities are omitted; ordering is
    the fixed descending-lex order on mu then sigma.
    """
    if not 0 <= t <= params.rank_k:
        raise ValueError(f"t = {t} outside [0, {params.rank_k}]")
    terms = []
    for mu in partitions_in_box(params.k1, 2 * params.r2, t):
        exp = koszul_sigma_expansion(mu, params.r2)
        for sigma in sorted(exp, reverse=True):
            if exp[sigma]:
                terms.append(KoszulTerm(t, mu, sigma, exp[sigma]))
    return terms


def _scan_pairs(params: StrommeParams, ins: InsertionSpec, t_range) -> list:
    """E1 contributions (t, q, value, mu, sigma, mult) for t in the range.

    Both Grassmannian factors are evaluated first; the LR-expensive pair
    multiplicity is computed only when neither factor vanishes.
    """
    lo, hi = t_range
    coh2_cache: dict[Partition, CohomTable] = {}
    out = []
    for t in range(lo, hi + 1):
        for mu in partitions_in_box(params.k1, 2 * params.r2, t):
            f1 = coh_bundle(params.gr1, (mu,) + tuple(ins.a1), ins.b1)
            if not f1:
                continue
            sig_cols = min(2 * params.k1, t) if t else 0
            for sigma in partitions_in_box(params.r2, sig_cols, t):
                f2 = coh2_cache.get(sigma)
                if f2 is None:
                    dual = negate_reverse(as_weight(sigma, params.r2))
                    f2 = coh_bundle(params.gr2, ins.a2, (dual,) + tuple(ins.b2))
                    coh2_cache[sigma] = f2
                if not f2:
                    continue
                mult = koszul_pair_mult(conjugate(mu), sigma, params.r2)
                if not mult:
                    continue
                for q, v in sorted(kunneth(f1, f2).items()):
                    out.append((t, q, mult * v, mu, sigma, mult))
    return out


@dataclass
class E1Page:
    """Sparse (t, q) -> dimension table with contributing-term diagnostics."""

    params: StrommeParams
    entries: dict[tuple[int, int], int]
    contributions: dict[tuple[int, int], list[tuple[Partition, Partition, int, int]]]

    def euler(self) -> int:
        return sum(parity_sign(q - t) * v for (t, q), v in self.entries.items())


def _worker(args):
    params, ins_key, t_range = args
    return _scan_pairs(params, InsertionSpec(*ins_key), t_range)


def e1_page(params: StrommeParams, ins: InsertionSpec = EMPTY_INSERTION,
            t_range: Optional[tuple[int, int]] = None, jobs: int = 1) -> E1Page:
    """First page of the Koszul spectral sequence for the given insertions.

    E1[t, q] = H^q of (insertions) x (t-th Koszul term), contributing to
    total degree q - t.  The t-range splits across a process pool when
    jobs > 1; partial pages merge by addition, so the result is identical
    for any worker count.
    """
    lo, hi = t_range if t_range is not None else (0, params.rank_k)
    lo, hi = max(lo, 0), min(hi, params.rank_k)
    if jobs > 1 and hi > lo:
        cuts = [lo + (hi + 1 - lo) * i // jobs for i in range(jobs + 1)]
        ranges = [(cuts[i], cuts[i + 1] - 1) for i in range(jobs)
                  if cuts[i + 1] > cuts[i]]
        with ProcessPoolExecutor(max_workers=len(ranges)) as pool:
            chunks = list(pool.map(_worker, [(params, ins.key(), r) for r in ranges]))
        rows = [row for chunk in chunks for row in chunk]
    else:
        rows = _scan_pairs(params, ins, (lo, hi))
    entries: dict[tuple[int, int], int] = {}
    contribs: dict[tuple[int, int], list] = {}
    for t, q, val, mu, sigma, mult in rows:
        entries[(t, q)] = entries.get((t, q), 0) + val
        contribs.setdefault((t, q), []).append((mu, sigma, mult, val))
    entries = {k: v for k, v in entries.items() if v}
    return E1Page(params, entries, {k: contribs[k] for k in entries})


# ------------------------------------------------------------------ assembly


@dataclass
class QuotReport:
    """Assembled cohomology: exact table, or per-degree (lower, upper) bounds.

    euler is always exact.  `degenerate` records that no differential can
    be nonzero for positional reasons (E1 = Einf on the nose); `exact` may
    hold without degeneracy when forced differentials pin every degree.
    """

    euler: int
    exact: bool
    table: Optional[dict[int, int]]
    lower: dict[int, int]
    upper: dict[int, int]
    degenerate: bool
    relations: list[tuple[int, int, int]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def max_degree(self) -> Optional[int]:
        nonzero = [d for d, v in self.upper.items() if v]
        return max(nonzero) if nonzero else None

    def is_zero(self) -> bool:
        return self.exact and not any(self.table.values())


def resolve_page(cells: dict[tuple[int, int], int]) -> QuotReport:
    """Conservative resolution of a sparse spectral-sequence page.

    Cells are keyed (column, row): every differential moves (c, q) to
    (c + r, q - r + 1) for some page r >= 1, raising the total degree
    c + q by one.  Sound facts used, and nothing else:
      - entries with no structural partner survive;
      - total cohomology vanishes in negative degrees, forcing the
        alternating cascade of differential ranks out of them;
      - remaining uncertainty yields per-degree bounds from the capacity
        of potential differentials, with single-degree uncertainty pinned
        by the exact Euler characteristic.
    """
    cells = {k: v for k, v in cells.items() if v}
    sums: dict[int, int] = {}
    for (c, q), v in cells.items():
        sums[c + q] = sums.get(c + q, 0) + v
    euler = sum(parity_sign(t) * v for t, v in sums.items())
    if not sums:
        return QuotReport(0, True, {}, {}, {}, True)
    tmin, tmax = min(sums), max(sums)

    def is_pair(e1, e2):
        (c1, q1), (c2, q2) = e1, e2
        return c2 > c1 and q2 == q1 - (c2 - c1) + 1

    cap: dict[int, int] = {}
    for t in range(tmin, tmax):
        src = [e for e in cells if sum(e) == t]
        tgt = [e for e in cells if sum(e) == t + 1]
        live_src = sum(cells[e] for e in src if any(is_pair(e, f) for f in tgt))
        live_tgt = sum(cells[f] for f in tgt if any(is_pair(e, f) for e in src))
        cap[t] = min(live_src, live_tgt)

    notes: list[str] = []
    # Degrees below zero carry no cohomology, so the differential rank
    # leaving degree t < 0 is S_t minus the rank arriving from t - 1.
    prev = 0
    for t in range(tmin, 0):
        out = sums.get(t, 0) - prev
        if out < 0 or out > cap.get(t, 0):
            raise ArithmeticError(
                f"page cannot cancel its negative-degree entries at {t}")
        prev = out
    forced_in0 = prev
    if forced_in0:
        notes.append(f"negative-degree entries force a differential of rank "
                     f"{forced_in0} into degree 0")

    adj: dict[int, int] = {t: v for t, v in sums.items() if t > 0}
    if sums.get(0, 0) or forced_in0:
        adj[0] = sums.get(0, 0) - forced_in0
        if adj[0] < 0:
            raise ArithmeticError("forced cascade exceeds the degree-0 entry")
    free_cap = {t: c for t, c in cap.items() if t >= 0}

    upper = {t: v for t, v in adj.items() if v}
    lower = {}
    for t, v in adj.items():
        lo = max(0, v - free_cap.get(t - 1, 0) - free_cap.get(t, 0))
        if lo:
            lower[t] = lo
    degenerate = all(c == 0 for c in cap.values())

    uncertain = [t for t in adj if upper.get(t, 0) != lower.get(t, 0)]
    relations = []
    if len(uncertain) == 2 and abs(uncertain[0] - uncertain[1]) == 1:
        a, b = sorted(uncertain)
        relations.append((b, a, adj.get(b, 0) - adj.get(a, 0)))
    if len(uncertain) == 1:
        t0 = uncertain[0]
        rest = sum(parity_sign(t) * upper.get(t, 0) for t in upper if t != t0)
        pinned = parity_sign(t0) * (euler - rest)
        if not lower.get(t0, 0) <= pinned <= upper.get(t0, 0):
            raise ArithmeticError("Euler pinning escaped the bounds")
        notes.append(f"degree {t0} pinned by the exact Euler characteristic")
        if pinned:
            upper[t0] = pinned
            lower[t0] = pinned
        else:
            upper.pop(t0, None)
            lower.pop(t0, None)
        uncertain = []

    exact = not uncertain
    table = dict(upper) if exact else None
    if exact and not degenerate:
        notes.append("nonzero differentials forced by nonnegativity; "
                     "table exact nonetheless")
    return QuotReport(euler, exact, table, lower, upper, degenerate,
                      relations, notes)


def assemble(page: E1Page) -> QuotReport:
    """Resolve the Koszul page: E1[t, q] sits in column -t, total degree q - t."""
    report = resolve_page({(-t, q): v for (t, q), v in page.entries.items()})
    assert report.euler == page.euler()
    return report


def euler(params: StrommeParams, ins: InsertionSpec = EMPTY_INSERTION,
          jobs: int = 1) -> int:
    """Exact Euler characteristic: alternating sum over the whole page."""
    return e1_page(params, ins, jobs=jobs).euler()


def scan(setup: QuotSetup, ins: InsertionSpec = EMPTY_INSERTION,
         jobs: int = 1) -> QuotReport:
    return assemble(e1_page(stromme(setup), ins, jobs=jobs))


# ------------------------------------------------------------------ verifiers


@dataclass
class Verdict:
    """Outcome of checking one statement on one instance.

    `hypotheses_hold` gates the claim; `matches` reports whether the scan
    agreed with the asserted conclusion (None when hypotheses fail and the
    statement is vacuous on the instance).
    """

    statement: str
    hypotheses_hold: bool
    matches: Optional[bool]
    expected: Optional[dict[int, int]]
    report: QuotReport
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.matches is None or self.matches


def verify_thm41(setup: QuotSetup, eta: WeightLike, rho: WeightLike,
                 jobs: int = 1) -> Verdict:
    """Two-insertion vanishing / global-sections statement.

    eta rides the first quotient bundle (length r1), rho the second
    (length r2).  With eta = (gamma, -delta), rho = (lambda, -nu): under
    the size and first-part hypotheses, mixed signs kill all cohomology,
    and pure partitions give exactly the degree-0 product of Schur
    dimensions of the section spaces.
    """
    params = stromme(setup)
    we, wr = as_weight(eta, params.r1), as_weight(rho, params.r2)
    gamma, delta = split_signs(we)
    lam, nu = split_signs(wr)
    n, r, d, b = setup.n, setup.r, setup.d, setup.b
    hyp_size = (n - r) * (size(lam) + size(gamma)) + r * (size(nu) + size(delta)) \
        < n * d + r * b + n
    hyp_first = (nu[0] if nu else 0) + (delta[0] if delta else 0) < n - r
    hyp = hyp_size and hyp_first
    report = assemble(e1_page(params, InsertionSpec(b1=(we,), b2=(wr,)), jobs=jobs))
    if delta or nu:
        statement = "mixed-sign insertions have no cohomology"
        expected: dict[int, int] = {}
    else:
        statement = "partition insertions have only the degree-0 sections"
        dim0 = schur_dim(gamma, params.n1) * schur_dim(lam, params.n2)
        expected = {0: dim0} if dim0 else {}
    matches = None
    if hyp:
        matches = report.exact and report.table == expected
    notes = [] if hyp else ["hypotheses fail; statement vacuous on this instance"]
    return Verdict(statement, hyp, matches, expected, report, notes)


def verify_prop47(setup: QuotSetup, eta: WeightLike, rho: WeightLike,
                  jobs: int = 1) -> Verdict:
    """Degree-concentration bound: nothing above |delta| + |nu|."""
    params = stromme(setup)
    we, wr = as_weight(eta, params.r1), as_weight(rho, params.r2)
    _, delta = split_signs(we)
    _, nu = split_signs(wr)
    bound = size(delta) + size(nu)
    report = assemble(e1_page(params, InsertionSpec(b1=(we,), b2=(wr,)), jobs=jobs))
    top = report.max_degree()
    matches = top is None or top <= bound
    return Verdict(f"no cohomology above degree {bound}", True, matches,
                   None, report)


@dataclass
class ExtResult:
    table: CohomTable
    hypotheses_hold: bool
    notes: list[str]


def ext_table(setup: QuotSetup, nu: Partition, lam: Partition) -> ExtResult:
    """Ext groups between Schur functors of the degree-(m-1) tautological bundle.

    Computed on the Grassmannian side: expand S^nu(B1)^dual x S^lambda(B1)
    into weights and sum the BWB tables.  Hypothesis violations are
    reported, not fatal.
    """
    params = stromme(setup)
    nu, lam = partition(nu), partition(lam)
    n, r, d, b = setup.n, setup.r, setup.d, setup.b
    notes = []
    hyp_first = not nu or nu[0] < n - r
    hyp_size = r * size(nu) + (n - r) * size(lam) < n * d + r * b + n
    if not hyp_first:
        notes.append(f"nu_1 = {nu[0]} is not below n - r = {n - r}")
    if not hyp_size:
        notes.append("size hypothesis fails")
    try:
        dual_nu = negate_reverse(as_weight(nu, params.r1))
        lam_w = as_weight(lam, params.r1)
    except ValueError:
        return ExtResult({}, hyp_first and hyp_size, notes + ["zero bundle"])
    table: CohomTable = {}
    for w, mult in weight_tensor_expand(dual_nu, lam_w, params.r1).items():
        for q, v in coh_bundle(params.gr1, (), (w,)).items():
            table[q] = table.get(q, 0) + mult * v
    table = {q: v for q, v in table.items() if v}
    return ExtResult(table, hyp_first and hyp_size, notes)


@dataclass
class ClosedForm:
    table: CohomTable
    hypotheses_hold: bool
    degree: Optional[int]


def line_coh(e: int) -> tuple[int, int]:
    """(h^0, h^1) of the line bundle O(e) on P^1."""
    return max(e + 1, 0), max(-e - 1, 0)


def bundle_coh(splitting: Sequence[int], e: int) -> tuple[int, int]:
    """(h^0, h^1) of V(e) for V = sum O(-b_i)."""
    h0 = h1 = 0
    for bi in splitting:
        a, c = line_coh(e - bi)
        h0 += a
        h1 += c
    return h0, h1


def closed_form_multi(n: int, r: int, d: int, splitting: Sequence[int],
                      inserts: Sequence[tuple[int, Partition]]) -> ClosedForm:
    """Stable closed form for quotient-side Schur insertions.

    Each insert (e_j, lam_j) contributes the graded Schur functor of the
    cohomology of V(e_j): the piece S^{lam/nu}(H^0) x S^{nu^dag}(H^1)
    sits in degree |nu|.  When every V(e_j) has cohomology in a single
    degree this collapses to the single nonzero degree
    D = sum of |lam_j| over the H^1 factors.
    """
    splitting = tuple(splitting) if splitting else (0,) * n
    total = sum(size(partition(lam)) for _, lam in inserts)
    b = sum(splitting)
    hyp = total * (n - r) < n * d + r * b + n
    table: CohomTable = {0: 1}
    for e, lam in inserts:
        lam = partition(lam)
        h0, h1 = bundle_coh(splitting, e)
        factor: CohomTable = {}
        for nu in subpartitions(lam):
            inner = sum(c * schur_dim(beta, h0)
                        for beta, c in skew_expand(lam, nu).items())
            v = inner * schur_dim(conjugate(nu), h1)
            if v:
                factor[size(nu)] = factor.get(size(nu), 0) + v
        table = kunneth(table, factor)
    table = {q: v for q, v in table.items() if v}
    degree = next(iter(table)) if len(table) == 1 else None
    return ClosedForm(table, hyp, degree)
