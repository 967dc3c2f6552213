"""Alternating-sign analytics of the pendant-path recurrence.

Sweeping the Laplacian of an n-vertex tree at the average degree
d = 2 - 2/n produces, along a pendant path, the orbit of
phi(t) = 2/n - 1/t.  A generalized pendant path (a path whose far end
carries r pendant 2-vertex paths) starts this orbit at

    b_1(r) = x_1 + r*(1 - 1/x_2),   x_1 = 2/n - 1,  x_2 = 2/n - 1/x_1,

and the signs of b_1, b_2, ... decide how many path eigenvalues sit below
or above the average.  This module computes the threshold r_0 below which
b_1 < 0, the oscillation period and phase of the orbit, the exact largest k
with b_{2k+1} < 0 (k_0), the maximum length of the alternating -,+ pattern
(mlas = 2*k_0 + 2) with its closed-form lower bound, and the eigenvalue
split of double-broom trees, cross-checked against the congruence sweep.

Sign-critical quantities (b values, r_0, broom root values) are computed in
exact rational arithmetic; the trigonometric phase/period formulas are
float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import OutOfDomainError, PatternNotFoundError, PreconditionViolatedError
from .recurrence import OrbitResult, RecurrenceParams, iterate
from .treediag import InertiaTriple, MatrixKind, RootedTree, build_matrix, build_tree, diagonalize, locate


@dataclass(frozen=True)
class PendantConfig:
    """Tree order n (>= 3) and pendant 2-path count r (>= 0)."""

    n: int
    r: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 3:
            raise OutOfDomainError(f"n must be an integer >= 3, got {self.n!r}")
        if not isinstance(self.r, int) or self.r < 0:
            raise OutOfDomainError(f"r must be a nonnegative integer, got {self.r!r}")

    @property
    def x1(self) -> Fraction:
        return Fraction(2, self.n) - 1

    @property
    def x2(self) -> Fraction:
        return Fraction(2, self.n) - 1 / self.x1

    @property
    def b1(self) -> Fraction:
        return self.x1 + self.r * (1 - 1 / self.x2)

    def params(self, exact: bool = True) -> RecurrenceParams:
        if exact:
            return RecurrenceParams(Fraction(2, self.n), Fraction(-1))
        return RecurrenceParams(2.0 / self.n, -1.0)


def in_domain(n: int, r: int) -> bool:
    """True for n >= 8 and 1 <= r <= floor(n/4), where the k_0 formula holds."""
    return n >= 8 and 1 <= r <= n // 4


def _check_domain(cfg: PendantConfig, allow_r0: bool = False) -> None:
    lo = 0 if allow_r0 else 1
    if cfg.n < 8 or not (lo <= cfg.r <= cfg.n // 4):
        raise OutOfDomainError(
            f"(n={cfg.n}, r={cfg.r}) outside n >= 8, {lo} <= r <= floor(n/4)"
        )


def b_sequence(cfg: PendantConfig, count: int, exact: bool = False) -> OrbitResult:
    """First ``count`` values of b_j: b_1 as above, b_{j+1} = 2/n - 1/b_j."""
    if exact:
        return iterate(cfg.params(exact=True), cfg.b1, count)
    return iterate(cfg.params(exact=False), float(cfg.b1), count)


def b_at(cfg: PendantConfig, j: int) -> Fraction:
    """Exact value of b_j (1-based)."""
    orbit = b_sequence(cfg, j, exact=True)
    if len(orbit.values) < j:
        raise PatternNotFoundError(f"b sequence hit zero before index {j}")
    return orbit.values[j - 1]


def r0(n: int) -> Fraction:
    """Exact threshold (n-2)(n^2+2n-4) / (4n(n-1)); b_1(r) < 0 iff r <= floor(r0)."""
    if not isinstance(n, int) or n < 3:
        raise OutOfDomainError(f"n must be an integer >= 3, got {n!r}")
    return Fraction((n - 2) * (n * n + 2 * n - 4), 4 * n * (n - 1))


def phi_n(n: int) -> float:
    """Rotation angle per step: arctan(sqrt(n^2 - 1)), in (0, pi/2)."""
    if n < 3:
        raise OutOfDomainError(f"n must be >= 3, got {n}")
    return math.atan(math.sqrt(n * n - 1.0))


def period_n(n: int) -> float:
    """Oscillation period pi / arctan(sqrt(n^2 - 1)); always > 2, -> 2 as n grows."""
    return math.pi / phi_n(n)


def omega_r(cfg: PendantConfig) -> float:
    """Phase offset of the b orbit.

    omega_r = arctan((1 - n*b_1)/sqrt(n^2-1)) - arctan(sqrt(n^2-1)); lies in
    (-pi/2, -pi/4) on the domain and decreases strictly in r.  r = 0 is
    allowed and recovers the plain-path phase -phi/2.
    """
    _check_domain(cfg, allow_r0=True)
    n = cfg.n
    root = math.sqrt(n * n - 1.0)
    return math.atan((1.0 - n * float(cfg.b1)) / root) - math.atan(root)


def h_function(n: int, r: int, m: int) -> float:
    """Candidate count H(n, r, m) = 1/(P-2) + (omega_r - arctan(cot phi))/(phi (P-2)) - m P/(P-2).

    m indexes the period branch; m = 0 recovers the first positive zero and
    hence the true k_0.  Sign pattern on the domain: H > 0 for m in {-1, 0}
    and H < 0 for m = 1.
    """
    cfg = PendantConfig(n, r)
    _check_domain(cfg)
    phi = phi_n(n)
    p = period_n(n)
    omega = omega_r(cfg)
    gap = p - 2.0
    return 1.0 / gap + (omega - math.atan(1.0 / math.tan(phi))) / (phi * gap) - m * p / gap


def k0(cfg: PendantConfig) -> int:
    """Largest k with b_{2k+1} < 0: floor of H(n, r, 0)."""
    _check_domain(cfg)
    return math.floor(h_function(cfg.n, cfg.r, 0))


def j_star(cfg: PendantConfig) -> float:
    """First positive zero of the continuous extension of j -> b_j."""
    _check_domain(cfg)
    phi = phi_n(cfg.n)
    return (math.atan(1.0 / math.tan(phi)) - omega_r(cfg)) / phi


def mlas(cfg: PendantConfig) -> int:
    """Maximum length of the alternating -,+ prefix of b_j: 2*k_0 + 2.

    r = 0 means the plain path orbit x_j, whose alternating prefix exceeds
    the r = 1 value by 2.
    """
    if cfg.r == 0:
        return mlas(PendantConfig(cfg.n, 1)) + 2
    return 2 * k0(cfg) + 2


def mlas_direct(cfg: PendantConfig, j_max: Optional[int] = None) -> int:
    """mlas by scanning exact signs of b_j; the certificate for mlas().

    Returns (first positive odd index) - 1.  Raises PatternNotFoundError
    when b_1 > 0 (no alternating prefix exists), when the scan exhausts
    ``j_max`` (default 4n), or when the orbit hits zero.
    """
    limit = 4 * cfg.n if j_max is None else j_max
    alpha = Fraction(2, cfg.n)
    x = cfg.b1
    if x > 0:
        raise PatternNotFoundError(
            f"b_1(n={cfg.n}, r={cfg.r}) = {x} > 0: no alternating prefix"
        )
    j = 1
    while j <= limit:
        if x == 0:
            raise PatternNotFoundError(f"b_{j}(n={cfg.n}, r={cfg.r}) = 0: orbit terminates")
        if j % 2 == 1 and x > 0:
            return j - 1
        x = alpha - 1 / x
        j += 1
    raise PatternNotFoundError(
        f"no positive odd-index term within j <= {limit} for (n={cfg.n}, r={cfg.r})"
    )


def mlas_lower_bound(cfg: PendantConfig) -> int:
    """Closed-form lower bound max(2*floor(pi/8*(n-2)) - 4*(r-1), 2)."""
    _check_domain(cfg)
    raw = 2 * math.floor(math.pi / 8.0 * (cfg.n - 2)) - 4 * (cfg.r - 1)
    return max(raw, 2)


@dataclass(frozen=True)
class MlasReport:
    """All alternating-sign analytics for one (n, r) pair."""

    n: int
    r: int
    period: float
    phi_angle: float
    omega_r: float
    j_star: float
    k0: int
    mlas: int
    lower_bound: int


def build_report(cfg: PendantConfig) -> MlasReport:
    _check_domain(cfg)
    return MlasReport(
        n=cfg.n,
        r=cfg.r,
        period=period_n(cfg.n),
        phi_angle=phi_n(cfg.n),
        omega_r=omega_r(cfg),
        j_star=j_star(cfg),
        k0=k0(cfg),
        mlas=mlas(cfg),
        lower_bound=mlas_lower_bound(cfg),
    )


# ---------------------------------------------------------------------------
# double brooms and the star-up transform


@dataclass(frozen=True)
class DoubleBroom:
    """Two star vertices with r and R pendant 2-paths, joined through paths
    of 2q and 2p vertices that meet at a degree-2 root; n = 2r+2R+2q+2p+1."""

    r: int
    q: int
    p: int
    R: int

    def __post_init__(self) -> None:
        for name in ("r", "q", "p", "R"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise OutOfDomainError(f"{name} must be a positive integer, got {v!r}")

    @property
    def n(self) -> int:
        return 2 * self.r + 2 * self.R + 2 * self.q + 2 * self.p + 1


@dataclass(frozen=True)
class BroomLayout:
    tree: RootedTree
    root: int
    left_star: int
    right_star: int


def double_broom_layout(b: DoubleBroom) -> BroomLayout:
    """Deterministic labeling: left pendants 1..2r (leaf, inner pairs), left
    path 2r+1..2r+2q star-first, root, right path root+1.. adjacent-first,
    right pendants last (inner, leaf pairs)."""
    edges: List[Tuple[int, int]] = []
    left_star = 2 * b.r + 1
    for i in range(b.r):
        leaf, inner = 1 + 2 * i, 2 + 2 * i
        edges.append((leaf, inner))
        edges.append((inner, left_star))
    for v in range(left_star, left_star + 2 * b.q - 1):
        edges.append((v, v + 1))
    root = 2 * b.r + 2 * b.q + 1
    edges.append((root - 1, root))
    right_star = root + 2 * b.p
    edges.append((root, root + 1))
    for v in range(root + 1, right_star):
        edges.append((v, v + 1))
    for i in range(b.R):
        inner = right_star + 1 + 2 * i
        leaf = inner + 1
        edges.append((right_star, inner))
        edges.append((inner, leaf))
    return BroomLayout(build_tree(edges, root=root), root, left_star, right_star)


def double_broom_tree(b: DoubleBroom) -> RootedTree:
    """The double-broom tree, rooted at its central degree-2 vertex."""
    return double_broom_layout(b).tree


class RootSign(Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"
    ZERO = "zero"


@dataclass(frozen=True)
class BroomSigma:
    """Eigenvalue split of a double broom at the average degree.

    sigma counts Laplacian eigenvalues strictly above 2 - 2/n; root_sign is
    the sign of the root's final sweep value; hypotheses_met records whether
    the closed-form side counting applied (when False the result comes from
    the congruence sweep alone).
    """

    sigma: int
    root_sign: RootSign
    hypotheses_met: bool
    inertia: InertiaTriple


def _broom_hypotheses(b: DoubleBroom) -> bool:
    n = b.n
    limit = (n - 1) // 4
    if not (b.r < limit and b.R < limit):
        return False
    if not (in_domain(n, b.r) and in_domain(n, b.R)):
        return False
    return (
        2 * b.q <= mlas_lower_bound(PendantConfig(n, b.r))
        and 2 * b.p <= mlas_lower_bound(PendantConfig(n, b.R))
    )


def double_broom_sigma(b: DoubleBroom) -> BroomSigma:
    """sigma(T) and the root sign, exact.

    When the side-counting hypotheses hold, the root value equals
    2/n - 1/b_{2q}(r) - 1/b_{2p}(R) and sigma is r+R+q+p plus one when that
    value is positive; the congruence sweep cross-checks the count (and is
    the fallback when the hypotheses fail).
    """
    layout = double_broom_layout(b)
    n = b.n
    d = 2 - Fraction(2, n)
    lap = build_matrix(layout.tree, MatrixKind.LAPLACIAN)
    inertia = locate(lap, d, exact=True)
    root_value = diagonalize(lap, d, exact=True)[layout.root]
    if root_value > 0:
        sign = RootSign.POSITIVE
    elif root_value < 0:
        sign = RootSign.NEGATIVE
    else:
        sign = RootSign.ZERO

    hypotheses = _broom_hypotheses(b)
    if hypotheses:
        try:
            formula = (
                Fraction(2, n)
                - 1 / b_at(PendantConfig(n, b.r), 2 * b.q)
                - 1 / b_at(PendantConfig(n, b.R), 2 * b.p)
            )
        except (PatternNotFoundError, ZeroDivisionError):
            hypotheses = False
        else:
            half = b.r + b.R + b.q + b.p
            predicted = half + (1 if formula > 0 else 0)
            if formula != root_value or predicted != inertia.above:
                raise RuntimeError(
                    f"side counting disagrees with the sweep for {b}: "
                    f"formula {formula} vs root {root_value}, "
                    f"predicted {predicted} vs above {inertia.above}"
                )
    return BroomSigma(
        sigma=inertia.above,
        root_sign=sign,
        hypotheses_met=hypotheses,
        inertia=inertia,
    )


def star_up(tree: RootedTree, star: int) -> RootedTree:
    """Shorten the pendant path at ``star`` by two vertices and give the star
    one more pendant 2-path.

    ``star`` must carry only pendant 2-paths plus exactly one path neighbor,
    the path must run through two degree-2 vertices before reaching anything
    else, and that anchor must not be a leaf.  Vertex ids and count are
    preserved: the two removed path vertices become the new pendant 2-path.
    """
    n = tree.n
    if not (1 <= star <= n):
        raise PreconditionViolatedError(f"star vertex {star} outside 1..{n}")
    neighbors = _neighbors(tree, star)
    pendant_inner = []
    others = []
    for w in neighbors:
        wn = _neighbors(tree, w)
        if len(wn) == 2:
            far = wn[0] if wn[1] == star else wn[1]
            if len(_neighbors(tree, far)) == 1:
                pendant_inner.append(w)
                continue
        others.append(w)
    if len(others) != 1:
        raise PreconditionViolatedError(
            f"star {star} must have exactly one non-pendant neighbor, found {len(others)}"
        )
    r = len(pendant_inner)
    if r > n // 4 - 1:
        raise PreconditionViolatedError(
            f"star {star} already carries r = {r} > floor(n/4) - 1 pendant 2-paths"
        )
    a = others[0]
    a_nb = _neighbors(tree, a)
    if len(a_nb) != 2:
        raise PreconditionViolatedError(f"path vertex {a} must have degree 2")
    bv = a_nb[0] if a_nb[1] == star else a_nb[1]
    b_nb = _neighbors(tree, bv)
    if len(b_nb) != 2:
        raise PreconditionViolatedError(f"path vertex {bv} must have degree 2")
    c = b_nb[0] if b_nb[1] == a else b_nb[1]
    if len(_neighbors(tree, c)) < 2:
        raise PreconditionViolatedError(f"path anchor {c} must not be a leaf")
    new_edges = [e for e in _undirected_edges(tree) if e != _key(bv, c)]
    new_edges.append(_key(star, c))
    return build_tree(new_edges, root=tree.root)


def _neighbors(tree: RootedTree, v: int) -> List[int]:
    out = list(tree.children(v))
    p = tree.parent(v)
    if p is not None:
        out.append(p)
    return out


def _key(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _undirected_edges(tree: RootedTree) -> List[Tuple[int, int]]:
    return [_key(c, p) for c, p in tree.edges()]
