"""Bounded lattice-point enumeration for grid sets.

A grid is {base + k1*g1 + ... + km*gm : ki in N} written additively in the
exponent embedding Q^n.  All generators are lexicographically positive, so
no nontrivial nonnegative combination vanishes; a positive linear weight
functional therefore exists and bounds every exponent search exactly.
"""

from __future__ import annotations

from fractions import Fraction


def leading_index(vec):
    """Index of the first nonzero coordinate, or None for the zero vector."""
    for i, c in enumerate(vec):
        if c != 0:
            return i
    return None


def is_lex_positive(vec):
    i = leading_index(vec)
    return i is not None and vec[i] > 0


def positive_weights(vectors, extra=()):
    """Weights (M^(n-1), ..., M, 1) giving every vector in `vectors` a
    strictly positive weight.  All of `vectors` must be lex-positive; the
    `extra` vectors merely contribute to the magnitude estimate so that the
    same functional can be evaluated on them too."""
    vecs = list(vectors)
    if not vecs:
        return (Fraction(1),)
    n = len(vecs[0])
    entries = [abs(c) for v in list(vecs) + list(extra) for c in v]
    maxabs = max(entries) if entries else Fraction(0)
    min_lead = None
    for v in vecs:
        i = leading_index(v)
        if i is None or v[i] <= 0:
            raise ValueError("vector %r is not lex-positive" % (v,))
        if min_lead is None or v[i] < min_lead:
            min_lead = v[i]
    m = max(Fraction(2), 2 * maxabs / min_lead + 1)
    m = Fraction(m.__ceil__())
    return tuple(m ** (n - 1 - i) for i in range(n))


def weight(wts, vec):
    return sum(w * c for w, c in zip(wts, vec))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vscale(k, a):
    return tuple(k * x for x in a)


def nonneg_solutions(generators, target):
    """All (k1, ..., km) in N^m with sum ki*gi == target.

    Finite because the generators are lex-positive (Neumann's condition);
    the weight functional bounds the depth-first search.
    """
    gens = [tuple(g) for g in generators]
    target = tuple(target)
    if not gens:
        return [()] if all(c == 0 for c in target) else []
    wts = positive_weights(gens, extra=[target])
    gw = [weight(wts, g) for g in gens]
    out = []
    ks = [0] * len(gens)

    def rec(i, rest, rest_w):
        if rest_w < 0:
            return
        if i == len(gens):
            if all(c == 0 for c in rest):
                out.append(tuple(ks))
            return
        g, w = gens[i], gw[i]
        k = 0
        cur, cur_w = rest, rest_w
        while cur_w >= 0:
            ks[i] = k
            rec(i + 1, cur, cur_w)
            k += 1
            cur = _vsub(cur, g)
            cur_w -= w
        ks[i] = 0

    rec(0, target, weight(wts, target))
    return out


def grid_points(generators, base, count=None):
    """Iterate grid elements base + sum ki*gi in increasing lex order.

    Only valid when lex order on the embedding coincides with the universe
    order (true for all vectorized universes here).  The iteration is a
    heap walk over the exponent lattice, deduplicated by value.
    """
    import heapq

    gens = [tuple(g) for g in generators]
    base = tuple(base)
    heap = [base]
    seen = {base}
    emitted = 0
    while heap and (count is None or emitted < count):
        v = heapq.heappop(heap)
        yield v
        emitted += 1
        for g in gens:
            w = tuple(x + y for x, y in zip(v, g))
            if w not in seen:
                seen.add(w)
                heapq.heappush(heap, w)


def shares_leading_index(generators):
    """True when all generators have the same leading coordinate, which makes
    the grid have order type omega (finitely many points below any bound in
    the same block)."""
    idx = None
    for g in generators:
        i = leading_index(g)
        if i is None:
            continue
        if idx is None:
            idx = i
        elif idx != i:
            return False
    return True


def grid_points_upto(generators, base, bound):
    """Elements of the grid that are lex <= bound, as a sorted list, or None
    when that set is infinite or not decidably finite."""
    gens = [tuple(g) for g in generators if any(c != 0 for c in g)]
    base = tuple(base)
    bound = tuple(bound)
    if not gens:
        return [base] if base <= bound else []
    if not shares_leading_index(gens):
        return None
    lead = leading_index(gens[0])
    if base[:lead] < bound[:lead]:
        return None  # the whole grid sits below the bound's block
    if base[:lead] > bound[:lead]:
        return []
    out = []
    for v in grid_points(gens, base):
        if v > bound:
            break
        out.append(v)
    return out
