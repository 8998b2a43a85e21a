"""Borel-Weil-Bott on a single Grassmannian, plus Kunneth combination.

The core routine takes weights on the duals of the universal sub- and
quotient bundles, forms the rho-shifted vector, and reads the unique
nonvanishing degree off the sorting permutation.  `coh_bundle` is the
bundle-side wrapper: weights on A and B themselves, tensor-expanded and
converted to the dual convention before the sort.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

from .partitions import (
    Partition,
    parity_sign,
    Weight,
    WeightLike,
    as_weight,
    inversions,
    negate_reverse,
    partition,
    size,
    split_signs,
    t_eta_indices,
    t_index,
)
from .schur import tensor_expand_many, weight_dim

CohomTable = dict[int, int]


@dataclass(frozen=True)
class GrSpec:
    """Grassmannian Gr(k, n) of k-dimensional subspaces of C^n."""

    k: int
    n: int

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError(f"invalid Grassmannian Gr({self.k},{self.n})")

    @property
    def quotient_rank(self) -> int:
        return self.n - self.k

    @property
    def dim(self) -> int:
        return self.k * (self.n - self.k)


@dataclass(frozen=True)
class BwbOutcome:
    """Result of BWB for one weight pair: vanishing, or one (degree, weight).

    `weight` is the highest weight of the dual answer S^gamma(C^n)^dual,
    i.e. negate_reverse(gamma); `gamma` is kept for printing next to it.
    """

    vanishes: bool
    degree: int = 0
    gamma: Optional[Weight] = None
    weight: Optional[Weight] = None
    dim: int = 0


def bwb_dual_weights(gr: GrSpec, rho: WeightLike, chi: WeightLike) -> BwbOutcome:
    """Cohomology of S^rho(A^dual) x S^chi(B^dual) on Gr(k, n).

    omega = (rho, chi) + (n-1, ..., 0); a repetition kills everything,
    otherwise the inversion count of omega is the single degree and the
    sorted-and-unshifted weight gamma gives the answer S^gamma(C^n)^dual.
    """
    rho = as_weight(rho, gr.k)
    chi = as_weight(chi, gr.quotient_rank)
    omega = [x + (gr.n - 1 - i) for i, x in enumerate(tuple(rho) + tuple(chi))]
    if len(set(omega)) != len(omega):
        return BwbOutcome(vanishes=True)
    degree = inversions(omega)
    gamma = Weight(tuple(x - (gr.n - 1 - i)
                         for i, x in enumerate(sorted(omega, reverse=True))))
    dual = negate_reverse(gamma)
    return BwbOutcome(False, degree, gamma, dual, weight_dim(gamma, gr.n))


def _combine(weights: Sequence[WeightLike], length: int) -> Optional[dict[Weight, int]]:
    """Tensor-expand bundle-side weights; None marks a zero bundle."""
    try:
        return tensor_expand_many(list(weights), length)
    except ValueError:
        return None


def coh_bundle(gr: GrSpec, a_weights: Sequence[WeightLike] = (),
               b_weights: Sequence[WeightLike] = ()) -> CohomTable:
    """Total cohomology table of a tensor product of universal bundles.

    `a_weights` act on the rank-k subbundle A, `b_weights` on the rank
    (n-k) quotient B; entries may be partitions (padded) or exact-length
    weights.  Each side is tensor-expanded, every summand converted to the
    dual convention S^w(E) = S^{-w}(E^dual), and the BWB degrees summed.
    A partition too long for its bundle means the zero bundle: empty table.
    """
    a_exp = _combine(a_weights, gr.k)
    b_exp = _combine(b_weights, gr.quotient_rank)
    if a_exp is None or b_exp is None:
        return {}
    table: CohomTable = {}
    for wa, ma in a_exp.items():
        rho = negate_reverse(wa)
        for wb, mb in b_exp.items():
            out = bwb_dual_weights(gr, rho, negate_reverse(wb))
            if out.vanishes or out.dim == 0:
                continue
            table[out.degree] = table.get(out.degree, 0) + ma * mb * out.dim
    return {d: v for d, v in table.items() if v}


def index_nonvanish(chi: WeightLike, k: int) -> Optional[tuple[int, int]]:
    """Fast criterion for S^chi(B^dual) on Gr(k, n): (k-index j, degree kj).

    None exactly when the core algorithm vanishes at rho = 0.
    """
    j = t_index(chi, k)
    return None if j is None else (j, k * j)


def index_degree_bound(mu: Partition, eta: WeightLike, gr: GrSpec
                       ) -> Optional[tuple[int, int]]:
    """(n-k; eta)-index of mu and the degree bound |delta| + sum(mu_1..i) - i^2.

    Among qualifying indices the one minimizing the bound is reported (the
    defining inequalities do not pin i uniquely); None when none qualifies.
    """
    mu = partition(mu)
    eta = as_weight(eta, gr.quotient_rank)
    _, delta = split_signs(eta)
    candidates = t_eta_indices(mu, gr.quotient_rank, eta)
    if not candidates:
        return None
    best = min(candidates, key=lambda i: sum(mu[:i]) - i * i)
    return best, size(delta) + sum(mu[:best]) - best * best


def kunneth(t1: CohomTable, t2: CohomTable) -> CohomTable:
    """Degree-convolution of two cohomology tables."""
    out: CohomTable = {}
    for d1, v1 in t1.items():
        for d2, v2 in t2.items():
            out[d1 + d2] = out.get(d1 + d2, 0) + v1 * v2
    return out


def table_scale(t: CohomTable, c: int) -> CohomTable:
    return {d: c * v for d, v in t.items()} if c else {}


def table_add(acc: CohomTable, t: CohomTable, c: int = 1) -> None:
    for d, v in t.items():
        acc[d] = acc.get(d, 0) + c * v


def table_euler(t: CohomTable) -> int:
    return sum(parity_sign(d) * v for d, v in t.items())
