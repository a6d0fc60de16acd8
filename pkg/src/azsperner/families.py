"""Generators for the poset families used throughout: Boolean lattices, star
powers, subspace and affine posets over GF(q), chain products, divisor
lattices, truncations, direct products, and the two six-element
counterexample posets.

Each generator is a pure function returning a validated RankedPoset.  Element
counts are capped at desk scale because everything downstream is exhaustive.
"""

from __future__ import annotations

import math
from itertools import combinations, product as iproduct

from .core import RankedPoset, build_poset
from .errors import (
    NotPrimePowerError,
    PosetError,
    RankOutOfRangeError,
    SizeLimitError,
)
from .gf import field, gaussian_binomial, is_prime_power

ELEMENT_CAP = 100_000


def gen_boolean(n: int) -> RankedPoset:
    """The Boolean lattice of subsets of {1..n}; rank is cardinality."""
    if not 0 <= n <= 20:
        raise SizeLimitError(f"boolean lattice needs 0 <= n <= 20, got {n}")
    size = 1 << n
    elements = [(m, bin(m).count("1")) for m in range(size)]
    covers = []
    for m in range(size):
        for j in range(n):
            if not (m >> j) & 1:
                covers.append((m, m | (1 << j)))
    labels = ["{" + ",".join(str(j + 1) for j in range(n) if (m >> j) & 1) + "}" for m in range(size)]
    return build_poset(elements, covers, name=f"boolean:{n}", labels=labels)


def gen_star_power(k: int, n: int) -> RankedPoset:
    """n-fold product of a one-bottom, k-top star; rank counts nonzero coordinates.

    Tuples in {0..k}^n with x <= y iff x agrees with y on every nonzero
    coordinate of x.
    """
    if k < 1 or n < 1:
        raise PosetError("star power needs k >= 1 and n >= 1")
    size = (k + 1) ** n
    if size > ELEMENT_CAP:
        raise SizeLimitError(f"star power has {size} elements (> {ELEMENT_CAP})")
    tuples = list(iproduct(range(k + 1), repeat=n))
    index = {t: i for i, t in enumerate(tuples)}
    elements = [(i, sum(1 for c in t if c)) for i, t in enumerate(tuples)]
    covers = []
    for t, i in index.items():
        for j, c in enumerate(t):
            if c:
                lower = t[:j] + (0,) + t[j + 1 :]
                covers.append((index[lower], i))
    labels = ["(" + ",".join(map(str, t)) + ")" for t in tuples]
    return build_poset(elements, covers, name=f"star:{k},{n}", labels=labels)


def gen_chain_product(sizes: list[int] | tuple[int, ...]) -> RankedPoset:
    """Product of chains with the given (non-increasing) element counts.

    Rank is the coordinate sum.  meta["strict_normal_expected"] records the
    sufficient condition k_2 + ... + k_n >= k_1 for strict normality.
    """
    sizes = tuple(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise PosetError("chain sizes must be positive")
    if list(sizes) != sorted(sizes, reverse=True):
        raise PosetError("chain sizes must be non-increasing")
    total = math.prod(sizes)
    if total > ELEMENT_CAP:
        raise SizeLimitError(f"chain product has {total} elements (> {ELEMENT_CAP})")
    tuples = list(iproduct(*(range(s) for s in sizes)))
    index = {t: i for i, t in enumerate(tuples)}
    elements = [(i, sum(t)) for i, t in enumerate(tuples)]
    covers = []
    for t, i in index.items():
        for j, c in enumerate(t):
            if c + 1 < sizes[j]:
                upper = t[:j] + (c + 1,) + t[j + 1 :]
                covers.append((i, index[upper]))
    labels = ["(" + ",".join(map(str, t)) + ")" for t in tuples]
    meta = {"strict_normal_expected": sum(sizes[1:]) >= sizes[0]}
    return build_poset(
        elements, covers, name="chains:" + ",".join(map(str, sizes)), labels=labels, meta=meta
    )


def gen_divisor_lattice(m: int) -> RankedPoset:
    """Divisors of m under divisibility; rank counts prime factors with multiplicity."""
    if m < 1:
        raise PosetError("modulus must be positive")
    divisors = [d for d in range(1, m + 1) if m % d == 0]
    if len(divisors) > ELEMENT_CAP:
        raise SizeLimitError("too many divisors")
    index = {d: i for i, d in enumerate(divisors)}

    def omega(d: int) -> int:
        count = 0
        f = 2
        while f * f <= d:
            while d % f == 0:
                d //= f
                count += 1
            f += 1
        return count + (1 if d > 1 else 0)

    primes = [p for p in divisors if omega(p) == 1]
    elements = [(i, omega(d)) for d, i in index.items()]
    covers = []
    for d in divisors:
        for p in primes:
            if d * p <= m and m % (d * p) == 0:
                covers.append((index[d], index[d * p]))
    labels = [str(d) for d in divisors]
    return build_poset(elements, covers, name=f"divisor:{m}", labels=labels)


# -- subspace machinery ----------------------------------------------------


def _rref_bases(n: int, k: int, q: int):
    """Yield every reduced row-echelon basis of a k-dim subspace of GF(q)^n."""
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(n), k):
        free_pos = [
            (i, j)
            for i in range(k)
            for j in range(n)
            if j > pivots[i] and j not in pivots
        ]
        for values in iproduct(range(q), repeat=len(free_pos)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free_pos, values):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


def _span(rows, n: int, q: int) -> frozenset[tuple[int, ...]]:
    gf = field(q)
    vectors = {tuple([0] * n)}
    for row in rows:
        vectors = {
            gf.vec_add(v, gf.vec_scale(c, row)) for v in vectors for c in range(q)
        }
    return frozenset(vectors)


def _vec_label(v: tuple[int, ...]) -> str:
    return "".join(map(str, v))


def gen_subspace_lattice(n: int, q: int) -> RankedPoset:
    """All subspaces of GF(q)^n ordered by inclusion; rank is dimension."""
    if not is_prime_power(q):
        raise NotPrimePowerError(f"q={q} is not a prime power <= 9")
    count = sum(gaussian_binomial(n, k, q) for k in range(n + 1))
    if count > ELEMENT_CAP:
        raise SizeLimitError(f"subspace lattice has {count} elements (> {ELEMENT_CAP})")
    spaces: list[tuple[frozenset, int, str]] = []
    for k in range(n + 1):
        for basis in _rref_bases(n, k, q):
            span = _span(basis, n, q)
            label = "[" + " ".join(_vec_label(r) for r in basis) + "]"
            spaces.append((span, k, label))
    elements = [(i, k) for i, (_, k, _) in enumerate(spaces)]
    covers = []
    by_dim: dict[int, list[int]] = {}
    for i, (_, k, _) in enumerate(spaces):
        by_dim.setdefault(k, []).append(i)
    for k in range(n):
        for i in by_dim.get(k, []):
            for j in by_dim.get(k + 1, []):
                if spaces[i][0] <= spaces[j][0]:
                    covers.append((i, j))
    labels = [lab for _, _, lab in spaces]
    return build_poset(elements, covers, name=f"subspace:{n},{q}", labels=labels)


def gen_affine_poset(n: int, q: int) -> RankedPoset:
    """All affine subspaces (cosets v + U) of GF(q)^n ordered by inclusion.

    Rank is the dimension of the direction space; all q^n points are minimal,
    so there is no universal lower bound.
    """
    if not is_prime_power(q):
        raise NotPrimePowerError(f"q={q} is not a prime power <= 9")
    gf = field(q)
    count = sum(gaussian_binomial(n, k, q) * q ** (n - k) for k in range(n + 1))
    if count > ELEMENT_CAP:
        raise SizeLimitError(f"affine poset has {count} elements (> {ELEMENT_CAP})")
    all_points = list(iproduct(range(q), repeat=n))
    seen: dict[frozenset, tuple[int, str]] = {}
    order: list[frozenset] = []
    for k in range(n + 1):
        for basis in _rref_bases(n, k, q):
            span = _span(basis, n, q)
            for v in all_points:
                coset = frozenset(gf.vec_add(v, u) for u in span)
                if coset in seen:
                    continue
                rep = min(coset)
                label = _vec_label(rep) + "+[" + " ".join(_vec_label(r) for r in basis) + "]"
                seen[coset] = (k, label)
                order.append(coset)
    elements = [(i, seen[c][0]) for i, c in enumerate(order)]
    by_dim: dict[int, list[int]] = {}
    for i, c in enumerate(order):
        by_dim.setdefault(seen[c][0], []).append(i)
    covers = []
    for k in range(n):
        for i in by_dim.get(k, []):
            for j in by_dim.get(k + 1, []):
                if order[i] <= order[j]:
                    covers.append((i, j))
    labels = [seen[c][1] for c in order]
    return build_poset(elements, covers, name=f"affine:{n},{q}", labels=labels)


# -- derived constructions ----------------------------------------------------


def truncate(poset: RankedPoset, lo: int, hi: int) -> RankedPoset:
    """Keep levels lo..hi and re-rank from zero."""
    if not 0 <= lo < hi <= poset.height:
        raise RankOutOfRangeError(
            f"need 0 <= lo < hi <= {poset.height}, got ({lo},{hi})"
        )
    keep = [x for x in range(poset.n) if lo <= poset.ranks[x] <= hi]
    remap = {x: i for i, x in enumerate(keep)}
    elements = [(remap[x], poset.ranks[x] - lo) for x in keep]
    covers = [
        (remap[a], remap[b]) for a, b in poset.covers if a in remap and b in remap
    ]
    labels = [poset.labels[x] for x in keep]
    return build_poset(
        elements, covers, name=f"trunc({poset.name},{lo},{hi})", labels=labels
    )


def product(p: RankedPoset, q: RankedPoset) -> RankedPoset:
    """Direct product with componentwise order; rank is the rank sum."""
    if p.n * q.n > ELEMENT_CAP:
        raise SizeLimitError("product too large")
    nq = q.n
    elements = [
        (x * nq + y, p.ranks[x] + q.ranks[y]) for x in range(p.n) for y in range(q.n)
    ]
    covers = []
    for x in range(p.n):
        for y in range(q.n):
            me = x * nq + y
            for x2 in p.up_adj[x]:
                covers.append((me, x2 * nq + y))
            for y2 in q.up_adj[y]:
                covers.append((me, x * nq + y2))
    labels = [f"({p.labels[x]},{q.labels[y]})" for x in range(p.n) for y in range(q.n)]
    return build_poset(elements, covers, name=f"prod({p.name},{q.name})", labels=labels)


def gen_fig1a() -> RankedPoset:
    """Six-element ranked poset that is normal but not regular.

    Levels z | p,c | a,b | t with covers z<p, z<c, p<a, p<b, c<b, a<t, b<t.
    Its antichain {a, c} makes the upset-boundary identity overshoot (5/4).
    """
    labels = ["z", "p", "c", "a", "b", "t"]
    ranks = [0, 1, 1, 2, 2, 3]
    cover_labels = [("z", "p"), ("z", "c"), ("p", "a"), ("p", "b"), ("c", "b"), ("a", "t"), ("b", "t")]
    idx = {lab: i for i, lab in enumerate(labels)}
    covers = [(idx[a], idx[b]) for a, b in cover_labels]
    return build_poset(list(enumerate(ranks)), covers, name="fig1a", labels=labels)


def gen_fig1b() -> RankedPoset:
    """Six-element ranked poset that is normal and regular but not level-connected.

    Two parallel chains share only the bottom and top: the rank-1/rank-2
    bipartite graph splits into two components.
    """
    labels = ["z", "p", "q", "a", "b", "t"]
    ranks = [0, 1, 1, 2, 2, 3]
    cover_labels = [("z", "p"), ("z", "q"), ("p", "a"), ("q", "b"), ("a", "t"), ("b", "t")]
    idx = {lab: i for i, lab in enumerate(labels)}
    covers = [(idx[a], idx[b]) for a, b in cover_labels]
    return build_poset(list(enumerate(ranks)), covers, name="fig1b", labels=labels)


# -- whitney oracles ----------------------------------------------------


def whitney_oracle(name_kind: str, *args) -> list[int]:
    """Independent level-size predictions for the generated families."""
    if name_kind == "boolean":
        (n,) = args
        return [math.comb(n, i) for i in range(n + 1)]
    if name_kind == "star":
        k, n = args
        return [math.comb(n, i) * k**i for i in range(n + 1)]
    if name_kind == "subspace":
        n, q = args
        return [gaussian_binomial(n, k, q) for k in range(n + 1)]
    if name_kind == "affine":
        n, q = args
        return [gaussian_binomial(n, k, q) * q ** (n - k) for k in range(n + 1)]
    if name_kind == "chains":
        sizes = args[0]
        acc = [1]
        for s in sizes:
            new = [0] * (len(acc) + s - 1)
            for i, c in enumerate(acc):
                for j in range(s):
                    new[i + j] += c
            acc = new
        return acc
    raise PosetError(f"no whitney oracle for {name_kind}")


# -- spec-string parser ----------------------------------------------------


def _split_top_level(s: str) -> list[str]:
    parts = []
    depth = 0
    cur = []
    for ch in s:
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_poset_spec(spec: str) -> RankedPoset:
    """Build a poset from a family spec string.

    Examples: "boolean:4", "star:2,3", "chains:3,2,2", "subspace:3,2",
    "affine:2,2", "divisor:360", "trunc(boolean:5,1,3)", "fig1a",
    "prod(boolean:3,chains:3,2)".
    """
    spec = spec.strip()
    if spec == "fig1a":
        return gen_fig1a()
    if spec == "fig1b":
        return gen_fig1b()
    if spec.startswith("trunc(") and spec.endswith(")"):
        inner = _split_top_level(spec[len("trunc(") : -1])
        if len(inner) < 3:
            raise PosetError(f"trunc needs (spec,lo,hi): {spec!r}")
        lo, hi = int(inner[-2]), int(inner[-1])
        return truncate(parse_poset_spec(",".join(inner[:-2])), lo, hi)
    if spec.startswith("prod(") and spec.endswith(")"):
        inner = _split_top_level(spec[len("prod(") : -1])
        for cut in range(1, len(inner)):
            left = ",".join(inner[:cut])
            right = ",".join(inner[cut:])
            try:
                return product(parse_poset_spec(left), parse_poset_spec(right))
            except (PosetError, ValueError):
                continue
        raise PosetError(f"cannot split product spec {spec!r}")
    if ":" not in spec:
        raise PosetError(f"unrecognized poset spec {spec!r}")
    kind, _, argstr = spec.partition(":")
    args = [int(a) for a in argstr.split(",")] if argstr else []
    if kind == "boolean":
        return gen_boolean(*args)
    if kind == "star":
        return gen_star_power(*args)
    if kind == "chains":
        return gen_chain_product(args)
    if kind == "subspace":
        return gen_subspace_lattice(*args)
    if kind == "affine":
        return gen_affine_poset(*args)
    if kind == "divisor":
        return gen_divisor_lattice(*args)
    raise PosetError(f"unknown poset kind {kind!r}")
