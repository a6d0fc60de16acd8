"""Structural predicates (regular, normal, strictly normal, level-connected,
strongly regular) and regular chain coverings.

Every checker returns a small result object carrying a witness on failure,
and serializes to the JSON certificate shape
{property, holds, witness, profile | lambda_table}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import RankedPoset
from .errors import (
    ChainLimitError,
    LevelTooLargeError,
    NotGradedError,
    NotNormalError,
    NotUPosetError,
)
from .flows import matching_min_cut_side, transportation

ENUM_LEVEL_CAP = 22


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a structural check, with an optional failure witness."""

    property: str
    holds: bool
    witness: tuple[int, ...] | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        obj = {
            "property": self.property,
            "holds": self.holds,
            "witness": list(self.witness) if self.witness is not None else None,
        }
        for key, value in self.detail.items():
            obj[key] = value
        return obj


@dataclass(frozen=True)
class LambdaTable:
    """Interval level-counts of a strongly regular poset.

    entries[(i, k, l)] is the number of rank-i elements between any comparable
    pair with ranks (k, l); every other triple counts zero.
    """

    height: int
    entries: dict[tuple[int, int, int], int]

    def get(self, i: int, k: int, l: int) -> int:
        return self.entries.get((i, k, l), 0)

    def to_json(self) -> dict:
        return {f"{i},{k},{l}": v for (i, k, l), v in sorted(self.entries.items())}


def _require_graded(poset: RankedPoset) -> None:
    if not poset.is_graded:
        raise NotGradedError(f"{poset.name} is not graded")


# -- regularity ----------------------------------------------------------------


def check_regular(poset: RankedPoset) -> CheckResult:
    """Down- and up-degrees must depend only on the rank.

    On success the detail carries the per-rank degree profile; on failure the
    witness is a same-rank pair with differing degree.
    """
    _require_graded(poset)
    for label, degree in (("lower", poset.d_minus), ("upper", poset.d_plus)):
        for i, level in enumerate(poset.levels):
            ref = level[0]
            for x in level[1:]:
                if degree(x) != degree(ref):
                    return CheckResult(
                        "regular",
                        False,
                        witness=(ref, x),
                        detail={"rank": i, "degree": label},
                    )
    profile = {
        "d_minus": [poset.d_minus(level[0]) for level in poset.levels],
        "d_plus": [poset.d_plus(level[0]) for level in poset.levels],
    }
    return CheckResult("regular", True, detail={"profile": profile})


def degree_profile(poset: RankedPoset) -> tuple[list[int], list[int]]:
    """(d_minus, d_plus) per rank; raises if the poset is not regular."""
    res = check_regular(poset)
    if not res.holds:
        from .errors import NotRegularError

        raise NotRegularError(f"{poset.name} is not regular")
    prof = res.detail["profile"]
    return prof["d_minus"], prof["d_plus"]


# -- normality ----------------------------------------------------------------


def _level_pair_edges(poset: RankedPoset, i: int) -> list[tuple[int, int]]:
    """Cover edges (upper, lower) between levels i and i-1."""
    return [(hi, lo) for lo, hi in poset.covers if poset.ranks[hi] == i]


def _normal_level_enumerate(
    poset: RankedPoset, i: int, strict: bool
) -> tuple[int, ...] | None:
    """Scan subsets of level i for a normalized-matching violation.

    Returns a violating (or, for strict mode, tight) subset, or None.
    Strict mode skips the full level.
    """
    upper = poset.levels[i]
    n_up = len(upper)
    if n_up > ENUM_LEVEL_CAP:
        raise LevelTooLargeError(
            f"level {i} of {poset.name} has {n_up} elements (> {ENUM_LEVEL_CAP})"
        )
    n_i = poset.whitney[i]
    n_lo = poset.whitney[i - 1]
    # shadow masks over the lower level, in local bit positions
    lower_pos = {x: b for b, x in enumerate(poset.levels[i - 1])}
    shadow = []
    for x in upper:
        m = 0
        for y in poset.down_adj[x]:
            m |= 1 << lower_pos[y]
        shadow.append(m)
    gamma = [0] * (1 << n_up)
    top = (1 << n_up) - 1
    for mask in range(1, 1 << n_up):
        low = mask & -mask
        gamma[mask] = gamma[mask ^ low] | shadow[low.bit_length() - 1]
        if strict and mask == top:
            continue
        lhs = mask.bit_count() * n_lo
        rhs = gamma[mask].bit_count() * n_i
        if lhs > rhs or (strict and lhs == rhs):
            return tuple(upper[b] for b in range(n_up) if (mask >> b) & 1)
    return None


def check_normal(poset: RankedPoset, mode: str = "flow") -> CheckResult:
    """Normalized matching between every pair of consecutive levels.

    flow mode decides each level pair by integer max-flow feasibility and
    extracts a violating subset from a minimum cut; enumerate mode scans all
    subsets of the upper level (capped at 22 elements per level).
    """
    _require_graded(poset)
    if mode not in ("flow", "enumerate"):
        raise ValueError(f"unknown mode {mode!r}")
    levels_detail = []
    for i in range(1, poset.height + 1):
        if mode == "enumerate":
            witness = _normal_level_enumerate(poset, i, strict=False)
            ok = witness is None
        else:
            upper = poset.levels[i]
            lower = poset.levels[i - 1]
            edges = _level_pair_edges(poset, i)
            supply = {x: poset.whitney[i - 1] for x in upper}
            demand = {y: poset.whitney[i] for y in lower}
            ok, bad_rows = matching_min_cut_side(upper, lower, edges, supply, demand)
            witness = None if ok else tuple(sorted(bad_rows))
        levels_detail.append({"level": i, "ok": ok})
        if not ok:
            return CheckResult(
                "normal",
                False,
                witness=witness,
                detail={"mode": mode, "level": i, "levels": levels_detail},
            )
    return CheckResult("normal", True, detail={"mode": mode, "levels": levels_detail})


def check_level_connected(poset: RankedPoset) -> CheckResult:
    """Each consecutive-level bipartite cover graph must be connected."""
    _require_graded(poset)
    for i in range(poset.height):
        nodes = list(poset.levels[i]) + list(poset.levels[i + 1])
        adjacency = {x: set() for x in nodes}
        for lo, hi in poset.covers:
            if poset.ranks[lo] == i:
                adjacency[lo].add(hi)
                adjacency[hi].add(lo)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            for y in adjacency[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(nodes):
            return CheckResult(
                "level-connected", False, witness=None, detail={"level": i}
            )
    return CheckResult("level-connected", True)


def check_strictly_normal(poset: RankedPoset) -> CheckResult:
    """Strict normalized matching for every nonempty proper level subset.

    Fast path: regular and level-connected posets qualify outright.
    Otherwise each level (at most 22 elements) is scanned exhaustively and a
    tight subset is returned on failure.
    """
    _require_graded(poset)
    if check_regular(poset).holds and check_level_connected(poset).holds:
        return CheckResult("strictly-normal", True, detail={"method": "fast-path"})
    for i in range(1, poset.height + 1):
        witness = _normal_level_enumerate(poset, i, strict=True)
        if witness is not None:
            return CheckResult(
                "strictly-normal",
                False,
                witness=witness,
                detail={"method": "enumeration", "level": i},
            )
    return CheckResult("strictly-normal", True, detail={"method": "enumeration"})


def check_strongly_regular(poset: RankedPoset) -> CheckResult:
    """Interval level-counts must depend only on (i, r(a), r(b)).

    On success the detail carries the full lambda table; a failure witness is
    a pair of comparable pairs whose intervals disagree at some level.
    """
    if not poset.is_u_poset:
        raise NotUPosetError(f"{poset.name} is not a U-poset")
    entries: dict[tuple[int, int, int], int] = {}
    origin: dict[tuple[int, int, int], tuple[int, int]] = {}
    for a in range(poset.n):
        k = poset.ranks[a]
        reach = poset.up_mask[a]
        b_mask = reach
        while b_mask:
            low = b_mask & -b_mask
            b = low.bit_length() - 1
            b_mask ^= low
            l = poset.ranks[b]
            interval = reach & poset.down_mask[b]
            for i in range(k, l + 1):
                count = (interval & poset.level_mask[i]).bit_count()
                key = (i, k, l)
                if key not in entries:
                    entries[key] = count
                    origin[key] = (a, b)
                elif entries[key] != count:
                    a0, b0 = origin[key]
                    return CheckResult(
                        "strongly-regular",
                        False,
                        witness=(a0, b0, a, b),
                        detail={"triple": list(key)},
                    )
    table = LambdaTable(height=poset.height, entries=entries)
    return CheckResult(
        "strongly-regular",
        True,
        detail={"lambda_table": table.to_json(), "table": table},
    )


def lambda_table(poset: RankedPoset) -> LambdaTable:
    res = check_strongly_regular(poset)
    if not res.holds:
        from .errors import NotStronglyRegularError

        raise NotStronglyRegularError(f"{poset.name} is not strongly regular")
    return res.detail["table"]


# -- chain coverings ----------------------------------------------------------------


@dataclass(frozen=True)
class ChainCovering:
    """Per-cover-edge transition weights inducing a weighting of maximal chains.

    g(x, y) >= 0 with row sums 1/N_i over each x in level i (i < top) and
    column sums 1/N_{i+1} over each y in level i+1.  The induced chain weight
    is f(C) = (1/N_0) * prod over edges (x, y) of g(x, y) * N_{rank(x)}.
    """

    poset: RankedPoset
    g: dict[tuple[int, int], Fraction]

    def chain_weight(self, chain: Sequence[int]) -> Fraction:
        w = Fraction(1, self.poset.whitney[0])
        for x, y in zip(chain, chain[1:]):
            w *= self.g.get((x, y), Fraction(0)) * self.poset.whitney[self.poset.ranks[x]]
        return w

    def to_json(self) -> dict:
        return {
            f"{x},{y}": f"{w.numerator}/{w.denominator}" for (x, y), w in sorted(self.g.items())
        }


def build_chain_covering(poset: RankedPoset) -> ChainCovering:
    """Solve the per-level-pair transportation problems for a regular covering.

    Each consecutive level pair is scaled to an integer max-flow instance;
    infeasibility of any pair certifies a normality violation.
    """
    _require_graded(poset)
    g: dict[tuple[int, int], Fraction] = {}
    for i in range(poset.height):
        upper_size = poset.whitney[i + 1]
        lower_size = poset.whitney[i]
        edges = [(lo, hi) for lo, hi in poset.covers if poset.ranks[lo] == i]
        supply = {x: upper_size for x in poset.levels[i]}
        demand = {y: lower_size for y in poset.levels[i + 1]}
        flow = transportation(poset.levels[i], poset.levels[i + 1], edges, supply, demand)
        if flow is None:
            raise NotNormalError(
                f"{poset.name}: no regular covering, levels {i}..{i + 1} infeasible"
            )
        denom = lower_size * upper_size
        for (x, y), amount in flow.items():
            g[(x, y)] = Fraction(amount, denom)
    return ChainCovering(poset=poset, g=g)


@dataclass(frozen=True)
class CoveringReport:
    holds: bool
    marginals_ok: bool
    chains_ok: bool
    total: Fraction
    violations: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "marginals_ok": self.marginals_ok,
            "chains_ok": self.chains_ok,
            "total": f"{self.total.numerator}/{self.total.denominator}",
            "violations": list(self.violations),
        }


def verify_chain_covering(
    poset: RankedPoset, covering: ChainCovering, limit: int = 100_000
) -> CoveringReport:
    """Check the covering twice: marginal conditions on g, and full chain enumeration.

    Chain enumeration verifies that the induced weights sum to one and hit
    every element with mass 1/N_{rank}; the two routes must agree.
    """
    violations: list[str] = []
    marginals_ok = True
    for (x, y), w in covering.g.items():
        if w < 0:
            marginals_ok = False
            violations.append(f"negative weight on edge ({x},{y})")
    for i in range(poset.height):
        for x in poset.levels[i]:
            row = sum(
                (covering.g.get((x, y), Fraction(0)) for y in poset.up_adj[x]),
                Fraction(0),
            )
            if row != Fraction(1, poset.whitney[i]):
                marginals_ok = False
                violations.append(f"row sum at element {x}")
        for y in poset.levels[i + 1]:
            col = sum(
                (covering.g.get((x, y), Fraction(0)) for x in poset.down_adj[y]),
                Fraction(0),
            )
            if col != Fraction(1, poset.whitney[i + 1]):
                marginals_ok = False
                violations.append(f"column sum at element {y}")

    total = poset.count_maximal_chains().total
    if total > limit:
        raise ChainLimitError(f"{total} maximal chains exceed the cap {limit}")
    chains = poset.enumerate_maximal_chains(limit)
    chains_ok = True
    mass = Fraction(0)
    per_element = [Fraction(0)] * poset.n
    for chain in chains:
        w = covering.chain_weight(chain)
        mass += w
        for x in chain:
            per_element[x] += w
    if mass != 1:
        chains_ok = False
        violations.append("total chain mass differs from 1")
    for x in range(poset.n):
        if per_element[x] != Fraction(1, poset.whitney[poset.ranks[x]]):
            chains_ok = False
            violations.append(f"element mass at {x}")
    return CoveringReport(
        holds=marginals_ok and chains_ok,
        marginals_ok=marginals_ok,
        chains_ok=chains_ok,
        total=mass,
        violations=tuple(violations),
    )


def level_size_identity_holds(poset: RankedPoset) -> bool:
    """Exact check of N_k = (d+_0 ... d+_{k-1}) / (d-_1 ... d-_k) on a regular poset."""
    d_minus, d_plus = degree_profile(poset)
    for k in range(1, poset.height + 1):
        value = Fraction(poset.whitney[0])
        for i in range(k):
            value *= d_plus[i]
        for i in range(1, k + 1):
            value /= d_minus[i]
        if value != poset.whitney[k]:
            return False
    return True
