"""Lower bounds on the optimal delivery rate R*(M) of a (K, L, N) network.

Four bound families are implemented.  Each family is the maximum of finitely
many affine functions of the cache memory M, so each is convex and
non-increasing in M.  All arithmetic is exact rational (fractions.Fraction);
no floats enter this module.

Family identifiers used throughout (curve files, witnesses, CLI):

* ``cutset_thm1``   -- cut-set counting over s users reading min(s+L-1, K) caches
* ``improved_thm2`` -- refinement with a second parameter l (number of
  transmissions charged at full rate), tighter for mid-range M
* ``hkd_lemma2``    -- prior window-counting bound; only applicable when
  L <= floor(K/2)
* ``hkd2_lemma3``   -- prior cut-set bound without the min(.., K) cap on
  the cache coefficient
* ``best``          -- pointwise maximum of the applicable families,
  clamped below at zero
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .params import MaccParams

Rational = Fraction
MemoryLike = Union[int, str, Fraction]

FAMILY_IDS = ("cutset_thm1", "improved_thm2", "hkd_lemma2", "hkd2_lemma3", "best")

#: Order in which families are consulted by best_lower_bound (first strict
#: maximum wins ties).
_BEST_ORDER = ("cutset_thm1", "improved_thm2", "hkd_lemma2", "hkd2_lemma3")


def as_memory(M: MemoryLike) -> Fraction:
    """Coerce a memory value to an exact Fraction.

    Floats are rejected: every value in this module must stay exact.
    """
    if isinstance(M, float):
        raise TypeError("memory must be exact; pass an int, Fraction, or string like '2/3'")
    return Fraction(M)


def _check_memory(params: MaccParams, M: MemoryLike) -> Fraction:
    m = as_memory(M)
    if not 0 <= m <= params.N:
        raise ValueError(f"memory M={m} outside [0, N={params.N}]")
    return m


@dataclass(frozen=True)
class BoundPoint:
    """One evaluated point of a bound: R at memory M, with the maximizing
    search parameters recorded as a witness."""

    M: Fraction
    R: Fraction
    witness: dict


@dataclass(frozen=True)
class BoundCurve:
    """A bound family sampled on a memory grid (the data behind a plot)."""

    params: MaccParams
    bound_id: str
    points: tuple[BoundPoint, ...]


class _Term:
    """Affine term value(M) = intercept - slope * M with its witness."""

    __slots__ = ("witness", "intercept", "slope")

    def __init__(self, witness: dict, intercept: Fraction, slope: Fraction):
        self.witness = witness
        self.intercept = intercept
        self.slope = slope

    def value_at(self, M: Fraction) -> Fraction:
        return self.intercept - self.slope * M


def _maximize(terms: Iterable[_Term], M: Fraction) -> BoundPoint:
    """Maximum over affine terms; the first maximizer in iteration order wins,
    which realizes the smallest-parameter tie-breaking rule."""
    best: _Term | None = None
    best_value: Fraction | None = None
    for term in terms:
        value = term.value_at(M)
        if best_value is None or value > best_value:
            best, best_value = term, value
    if best is None or best_value is None:
        raise ValueError("empty term set")
    return BoundPoint(M=M, R=best_value, witness=dict(best.witness))


# ---------------------------------------------------------------------------
# term enumeration (tie-break order: ascending s, then l, then t, then b)
# ---------------------------------------------------------------------------


def _cutset_terms(params: MaccParams) -> Iterator[_Term]:
    K, L, N = params.K, params.L, params.N
    for s in range(1, min(K, N) + 1):
        p = min(s + L - 1, K)
        yield _Term({"s": s}, Fraction(s), Fraction(p, N // s))


def _lemma3_terms(params: MaccParams) -> Iterator[_Term]:
    K, L, N = params.K, params.L, params.N
    for s in range(1, min(K, N) + 1):
        yield _Term({"s": s}, Fraction(s), Fraction(s + L - 1, N // s))


def _improved_terms(params: MaccParams) -> Iterator[_Term]:
    K, L, N = params.K, params.L, params.N
    for s in range(1, K + 1):
        p = min(s + L - 1, K)
        shortfall_weight = 1 - Fraction(p, K)
        for l in range(1, -(-N // s) + 1):
            intercept = Fraction(
                N - shortfall_weight * max(0, N - l * s) - max(0, N - l * K), l
            )
            yield _Term({"s": s, "l": l}, intercept, Fraction(p, l))


def _lemma2_terms(params: MaccParams, b_max: int) -> Iterator[_Term]:
    K, L, N = params.K, params.L, params.N
    half = K // 2
    for s in range(1, half + 1):
        for t in range(1, K + 1):
            if not L <= s * t <= half:
                continue
            lam = Fraction(1) if s * t == L else Fraction(1, 2)
            for b in range(1, b_max + 1):
                intercept = lam * min(Fraction(s * t - L + 1), Fraction(N, s * b))
                yield _Term({"s": s, "t": t, "b": b}, intercept, Fraction(t, b))


# ---------------------------------------------------------------------------
# single-term evaluation (used for witness verification and restricted tests)
# ---------------------------------------------------------------------------


def cutset_term(params: MaccParams, s: int, M: MemoryLike) -> Fraction:
    """Value of the cut-set term for a given s: s - min(s+L-1, K) * M / floor(N/s)."""
    m = as_memory(M)
    if not 1 <= s <= min(params.K, params.N):
        raise ValueError(f"s={s} outside [1, min(K, N)]")
    p = min(s + params.L - 1, params.K)
    return s - Fraction(p, params.N // s) * m


def improved_term(params: MaccParams, s: int, l: int, M: MemoryLike) -> Fraction:
    """Value of the refined term at (s, l):
    (1/l) * (N - (1 - p/K)(N - l*s)^+ - (N - l*K)^+ - p*M), p = min(s+L-1, K)."""
    m = as_memory(M)
    K, L, N = params.K, params.L, params.N
    if not 1 <= s <= K:
        raise ValueError(f"s={s} outside [1, K]")
    if not 1 <= l <= -(-N // s):
        raise ValueError(f"l={l} outside [1, ceil(N/s)]")
    p = min(s + L - 1, K)
    return Fraction(
        N - (1 - Fraction(p, K)) * max(0, N - l * s) - max(0, N - l * K) - p * m, l
    )


def hkd_lemma2_term(params: MaccParams, s: int, t: int, b: int, M: MemoryLike) -> Fraction:
    """Value of the window-counting term at (s, t, b):
    lambda * min(s*t - L + 1, N/(s*b)) - (t/b) * M, lambda = 1 if s*t == L else 1/2."""
    m = as_memory(M)
    K, L, N = params.K, params.L, params.N
    if b < 1 or not 1 <= t <= K or s < 1 or not L <= s * t <= K // 2:
        raise ValueError(f"(s={s}, t={t}, b={b}) outside the searched parameter set")
    lam = Fraction(1) if s * t == L else Fraction(1, 2)
    return lam * min(Fraction(s * t - L + 1), Fraction(N, s * b)) - Fraction(t, b) * m


def hkd2_lemma3_term(params: MaccParams, s: int, M: MemoryLike) -> Fraction:
    """Value of the uncapped cut-set term for a given s: s - (s+L-1) * M / floor(N/s)."""
    m = as_memory(M)
    if not 1 <= s <= min(params.K, params.N):
        raise ValueError(f"s={s} outside [1, min(K, N)]")
    return s - Fraction(s + params.L - 1, params.N // s) * m


# ---------------------------------------------------------------------------
# bound families
# ---------------------------------------------------------------------------


def cutset_bound(params: MaccParams, M: MemoryLike) -> BoundPoint:
    """Cut-set lower bound: max over s in [1, min(K, N)] of cutset_term.

    The raw maximum is returned; it may be negative for large M (display
    layers clamp at zero).
    """
    m = _check_memory(params, M)
    return _maximize(_cutset_terms(params), m)


def improved_bound(params: MaccParams, M: MemoryLike) -> BoundPoint:
    """Refined lower bound: max over s in [1, K], l in [1, ceil(N/s)] of
    improved_term.  Dominates cutset_bound on [0, N/L]."""
    m = _check_memory(params, M)
    return _maximize(_improved_terms(params), m)


def hkd_lemma2_bound(
    params: MaccParams, M: MemoryLike, b_max: int | None = None
) -> BoundPoint | None:
    """Prior window-counting bound, maximized over its (s, t, b) set.

    Returns None when the parameter set is empty, i.e. L > floor(K/2).
    b ranges over [1, b_max]; the default cap b_max = N is safe because for
    b > N both objective terms shrink at rate 1/b and every searched point is
    dominated by a smaller b.  Pass a larger b_max to widen the search.
    """
    m = _check_memory(params, M)
    if params.L > params.K // 2:
        return None
    if b_max is None:
        b_max = params.N
    if b_max < 1:
        raise ValueError(f"b_max must be >= 1, got {b_max}")
    return _maximize(_lemma2_terms(params, b_max), m)


def hkd2_lemma3_bound(params: MaccParams, M: MemoryLike) -> BoundPoint:
    """Prior cut-set bound: like cutset_bound but the cache coefficient is
    s+L-1 without the min(.., K) cap, so it is never tighter."""
    m = _check_memory(params, M)
    return _maximize(_lemma3_terms(params), m)


def best_lower_bound(params: MaccParams, M: MemoryLike) -> BoundPoint:
    """Pointwise maximum of the applicable families, clamped below at zero.

    The witness records the winning family and its parameters; when the
    clamp raises a negative maximum to zero the witness gains
    ``clamped: True``.
    """
    m = _check_memory(params, M)
    best: BoundPoint | None = None
    best_family = ""
    for family in _BEST_ORDER:
        point = evaluate_bound(params, family, m)
        if point is None:
            continue
        if best is None or point.R > best.R:
            best, best_family = point, family
    assert best is not None  # cutset always applicable
    witness = {"family": best_family, **best.witness}
    value = best.R
    if value < 0:
        value = Fraction(0)
        witness["clamped"] = True
    return BoundPoint(M=m, R=value, witness=witness)


def evaluate_bound(params: MaccParams, bound_id: str, M: MemoryLike) -> BoundPoint | None:
    """Evaluate one family by id; None means inapplicable at these params."""
    if bound_id == "cutset_thm1":
        return cutset_bound(params, M)
    if bound_id == "improved_thm2":
        return improved_bound(params, M)
    if bound_id == "hkd_lemma2":
        return hkd_lemma2_bound(params, M)
    if bound_id == "hkd2_lemma3":
        return hkd2_lemma3_bound(params, M)
    if bound_id == "best":
        return best_lower_bound(params, M)
    raise ValueError(f"unknown bound id {bound_id!r}; expected one of {FAMILY_IDS}")


def evaluate_witness(params: MaccParams, bound_id: str, witness: dict, M: MemoryLike) -> Fraction:
    """Re-evaluate the single term named by a witness (must reproduce R)."""
    if bound_id == "best":
        family = witness["family"]
        inner = {k: v for k, v in witness.items() if k not in ("family", "clamped")}
        value = evaluate_witness(params, family, inner, M)
        return max(Fraction(0), value) if witness.get("clamped") else value
    if bound_id == "cutset_thm1":
        return cutset_term(params, witness["s"], M)
    if bound_id == "improved_thm2":
        return improved_term(params, witness["s"], witness["l"], M)
    if bound_id == "hkd_lemma2":
        return hkd_lemma2_term(params, witness["s"], witness["t"], witness["b"], M)
    if bound_id == "hkd2_lemma3":
        return hkd2_lemma3_term(params, witness["s"], M)
    raise ValueError(f"unknown bound id {bound_id!r}")


# ---------------------------------------------------------------------------
# sweeps and grids
# ---------------------------------------------------------------------------


def uniform_grid(start: MemoryLike, stop: MemoryLike, count: int) -> list[Fraction]:
    """count exact rationals uniformly spaced on [start, stop], endpoints included."""
    lo, hi = as_memory(start), as_memory(stop)
    if count < 2:
        raise ValueError(f"grid count must be >= 2, got {count}")
    if hi <= lo:
        raise ValueError(f"grid needs start < stop, got [{lo}, {hi}]")
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def default_memory_grid(params: MaccParams, count: int = 101) -> list[Fraction]:
    """Default sweep grid: uniform on [0, N/L]."""
    return uniform_grid(0, Fraction(params.N, params.L), count)


def sweep_curve(
    params: MaccParams, bound_id: str, m_grid: Sequence[MemoryLike]
) -> BoundCurve:
    """Evaluate one family on a strictly increasing memory grid.

    Points keep the raw (unclamped) R values; export layers clamp at zero.
    An inapplicable family yields a curve with no points.
    """
    if bound_id not in FAMILY_IDS:
        raise ValueError(f"unknown bound id {bound_id!r}; expected one of {FAMILY_IDS}")
    grid = [_check_memory(params, m) for m in m_grid]
    if not grid:
        raise ValueError("empty memory grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("memory grid must be strictly increasing")

    # The term set is independent of M: enumerate once, reuse per grid point.
    if bound_id == "best":
        points = tuple(best_lower_bound(params, m) for m in grid)
        return BoundCurve(params=params, bound_id=bound_id, points=points)
    if bound_id == "cutset_thm1":
        terms: list[_Term] = list(_cutset_terms(params))
    elif bound_id == "improved_thm2":
        terms = list(_improved_terms(params))
    elif bound_id == "hkd2_lemma3":
        terms = list(_lemma3_terms(params))
    else:  # hkd_lemma2
        if params.L > params.K // 2:
            return BoundCurve(params=params, bound_id=bound_id, points=())
        terms = list(_lemma2_terms(params, params.N))
    points = tuple(_maximize(terms, m) for m in grid)
    return BoundCurve(params=params, bound_id=bound_id, points=points)


# ---------------------------------------------------------------------------
# dominance verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DominanceEntry:
    """Exact family values at one grid point, with dominance margins."""

    M: Fraction
    improved: Fraction
    cutset: Fraction
    lemma3: Fraction
    #: improved >= cutset is only claimed on [0, N/L]
    improved_vs_cutset_checked: bool

    @property
    def improved_margin(self) -> Fraction:
        return self.improved - self.cutset

    @property
    def cutset_margin(self) -> Fraction:
        return self.cutset - self.lemma3


@dataclass(frozen=True)
class DominanceReport:
    """Per-point dominance comparison; a violation is data, not an exception."""

    params: MaccParams
    entries: tuple[DominanceEntry, ...]
    violations: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        from .serialize import fraction_str

        return {
            "params": {"K": self.params.K, "L": self.params.L, "N": self.params.N},
            "points": [
                {
                    "M": fraction_str(e.M),
                    "improved_thm2": fraction_str(e.improved),
                    "cutset_thm1": fraction_str(e.cutset),
                    "hkd2_lemma3": fraction_str(e.lemma3),
                    "improved_vs_cutset_checked": e.improved_vs_cutset_checked,
                    "improved_margin": fraction_str(e.improved_margin),
                    "cutset_margin": fraction_str(e.cutset_margin),
                }
                for e in self.entries
            ],
            "violations": list(self.violations),
        }


def verify_dominance(params: MaccParams, m_grid: Sequence[MemoryLike]) -> DominanceReport:
    """Check the two dominance relations on a grid with exact comparison:
    improved >= cutset (grid points above N/L are skipped for this check)
    and cutset >= lemma3 (everywhere on [0, N])."""
    from .serialize import fraction_str

    grid = [_check_memory(params, m) for m in m_grid]
    if not grid:
        raise ValueError("empty memory grid")
    full_access = Fraction(params.N, params.L)
    cutset_terms = list(_cutset_terms(params))
    improved_terms = list(_improved_terms(params))
    lemma3_terms = list(_lemma3_terms(params))

    entries = []
    violations = []
    for m in grid:
        improved = _maximize(improved_terms, m).R
        cutset = _maximize(cutset_terms, m).R
        lemma3 = _maximize(lemma3_terms, m).R
        checked = m <= full_access
        entries.append(
            DominanceEntry(
                M=m,
                improved=improved,
                cutset=cutset,
                lemma3=lemma3,
                improved_vs_cutset_checked=checked,
            )
        )
        if checked and improved < cutset:
            violations.append(
                {
                    "check": "improved_vs_cutset",
                    "M": fraction_str(m),
                    "lhs": fraction_str(improved),
                    "rhs": fraction_str(cutset),
                }
            )
        if cutset < lemma3:
            violations.append(
                {
                    "check": "cutset_vs_lemma3",
                    "M": fraction_str(m),
                    "lhs": fraction_str(cutset),
                    "rhs": fraction_str(lemma3),
                }
            )
    return DominanceReport(params=params, entries=tuple(entries), violations=tuple(violations))


def uncoded_threshold_gap(params: MaccParams) -> tuple[Fraction, Fraction]:
    """(N/L, ceil(K/L) * N/K): the memory where coded placement reaches rate 0
    versus the smallest memory any uncoded placement needs for rate 0.

    The second value exceeds the first exactly when L does not divide K.
    """
    coded = Fraction(params.N, params.L)
    uncoded = Fraction(-(-params.K // params.L) * params.N, params.K)
    return coded, uncoded
