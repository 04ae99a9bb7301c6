"""Described subsets of a universe: the effective support language.

A DescribedSet is a finite union of atoms (explicit finite sets, order
intervals, arithmetic progressions, grids, complements-within, products).
Membership is always decidable; finiteness, order-type classification and
pairwise intersection finiteness are decided per atom kind, with an honest
``None`` ("undecided") when no rule applies.
"""

from __future__ import annotations

import heapq
import itertools
from fractions import Fraction

from .gridsolve import (
    grid_points,
    grid_points_upto,
    is_lex_positive,
    nonneg_solutions,
    shares_leading_index,
)
from .universe import PairUniverse, Universe, UniverseError

# direction / order-type classes of an infinite atom
FINITE = "finite"
UP = "up"        # order type omega: increasing, finite initial segments
DOWN = "down"    # reverse of UP
WO = "wo"        # well ordered, possibly of type > omega
DENSE = "dense"  # densely ordered somewhere (neither WO nor reverse-WO)
UNKNOWN = "unknown"


class SetError(ValueError):
    pass


class Atom:
    def __init__(self, universe):
        self.universe = universe

    def contains(self, el):
        raise NotImplementedError

    def is_finite(self):
        """True / False / None (undecided)."""
        raise NotImplementedError

    def classify(self):
        """One of FINITE, UP, DOWN, WO, DENSE, UNKNOWN; an over-approximation
        is never returned for the unbounded side (subset-shaped atoms report
        their superset's class, which is sound for bounded verdicts only —
        callers consult `exact_class`)."""
        raise NotImplementedError

    def exact_class(self):
        return True

    def elements(self):
        """All elements (finite atoms only)."""
        raise SetError("atom is not finite")

    def iter_increasing(self):
        raise SetError("cannot enumerate %r in increasing order" % self)

    def elements_upto(self, bound):
        """Sorted list of elements <= bound, or None when infinite/undecided."""
        return None

    def elements_downto(self, bound):
        """Sorted list of elements >= bound, or None when infinite/undecided."""
        return None

    def to_record(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.to_record() == other.to_record()

    def __hash__(self):
        return hash(str(self.to_record()))

    def __repr__(self):
        return self.format()


class FiniteAtom(Atom):
    def __init__(self, universe, elements):
        super().__init__(universe)
        self.els = frozenset(universe.check(e) for e in elements)

    def contains(self, el):
        return el in self.els

    def is_finite(self):
        return True

    def classify(self):
        return FINITE

    def elements(self):
        return list(self.els)

    def iter_increasing(self):
        return iter(sorted(self.els, key=self.universe.key))

    def elements_upto(self, bound):
        k = self.universe.key
        return sorted((e for e in self.els if k(e) <= k(bound)), key=k)

    def elements_downto(self, bound):
        k = self.universe.key
        return sorted((e for e in self.els if k(e) >= k(bound)), key=k)

    def format(self):
        return "{" + ", ".join(sorted(self.universe.format(e) for e in self.els)) + "}"

    def to_record(self):
        return {"atom": "finite", "elements": sorted(self.universe.format(e) for e in self.els)}


class IntervalAtom(Atom):
    """Order interval with optional endpoints; numeric ordered universes."""

    def __init__(self, universe, lo=None, hi=None, lo_strict=False, hi_strict=False):
        if not universe.is_ordered:
            raise SetError("interval atom needs an ordered universe")
        super().__init__(universe)
        self.lo = universe.check(lo) if lo is not None else None
        self.hi = universe.check(hi) if hi is not None else None
        self.lo_strict = lo_strict
        self.hi_strict = hi_strict

    def contains(self, el):
        k = self.universe.key
        if self.lo is not None:
            if k(el) < k(self.lo) or (self.lo_strict and k(el) == k(self.lo)):
                return False
        if self.hi is not None:
            if k(el) > k(self.hi) or (self.hi_strict and k(el) == k(self.hi)):
                return False
        return self.universe.contains(el)

    def _discrete(self):
        return self.universe.kind in ("naturals", "integers", "finite")

    def is_finite(self):
        if self.universe.kind == "finite":
            return True
        if self.lo is not None and self.hi is not None:
            if self._discrete():
                return True
            lo_k, hi_k = self.universe.key(self.lo), self.universe.key(self.hi)
            if lo_k > hi_k or (lo_k == hi_k and (self.lo_strict or self.hi_strict)):
                return True  # empty
            if lo_k == hi_k:
                return True  # single point
            return False  # dense
        if self.universe.kind == "naturals" and self.hi is not None:
            return True
        return False

    def classify(self):
        fin = self.is_finite()
        if fin:
            return FINITE
        if self._discrete():
            if self.hi is None and self.lo is not None:
                return UP
            if self.lo is None and self.hi is not None:
                return DOWN
            return UNKNOWN  # all of Z: neither
        return DENSE

    def elements(self):
        if not self.is_finite():
            raise SetError("interval is infinite")
        if self.universe.kind == "finite":
            return [e for e in self.universe.labels if self.contains(e)]
        if self._discrete() or self.universe.kind == "naturals":
            lo = self.lo if self.lo is not None else 0
            lo = lo + 1 if self.lo_strict else lo
            hi = self.hi - 1 if self.hi_strict else self.hi
            return [n for n in range(int(lo), int(hi) + 1)]
        # dense universe: empty or a single point
        out = []
        if self.lo is not None and self.contains(self.lo):
            out.append(self.lo)
        return out

    def iter_increasing(self):
        if self.is_finite():
            return iter(sorted(self.elements(), key=self.universe.key))
        if self._discrete() and self.lo is not None:
            lo = int(self.lo) + (1 if self.lo_strict else 0)
            return iter(itertools.count(lo))
        raise SetError("cannot enumerate interval in increasing order")

    def elements_upto(self, bound):
        cls = self.classify()
        if cls == FINITE:
            k = self.universe.key
            return sorted((e for e in self.elements() if k(e) <= k(bound)), key=k)
        if cls == UP:
            clipped = IntervalAtom(self.universe, self.lo, bound, self.lo_strict, False)
            return sorted(clipped.elements(), key=self.universe.key)
        return None

    def elements_downto(self, bound):
        cls = self.classify()
        if cls == FINITE:
            k = self.universe.key
            return sorted((e for e in self.elements() if k(e) >= k(bound)), key=k)
        if cls == DOWN:
            clipped = IntervalAtom(self.universe, bound, self.hi, False, self.hi_strict)
            return sorted(clipped.elements(), key=self.universe.key)
        return None

    def format(self):
        lo = self.universe.format(self.lo) if self.lo is not None else "-inf"
        hi = self.universe.format(self.hi) if self.hi is not None else "+inf"
        return "%s%s, %s%s" % ("(" if self.lo_strict or self.lo is None else "[",
                               lo, hi,
                               ")" if self.hi_strict or self.hi is None else "]")

    def to_record(self):
        return {
            "atom": "interval",
            "lo": self.universe.format(self.lo) if self.lo is not None else None,
            "hi": self.universe.format(self.hi) if self.hi is not None else None,
            "lo_strict": self.lo_strict,
            "hi_strict": self.hi_strict,
        }


class ProgressionAtom(Atom):
    """Arithmetic progression start, start+step, ... (count terms or infinite)."""

    def __init__(self, universe, start, step, count=None):
        if not universe.has_monoid or not universe.is_ordered:
            raise SetError("progression atom needs an ordered monoid universe")
        super().__init__(universe)
        self.start = universe.check(start)
        self.step = universe.check(step)
        self.count = count
        if universe.key(self.step) == universe.key(universe.unit):
            raise SetError("progression step must differ from the unit")

    def direction_up(self):
        return self.universe.key(self.step) > self.universe.key(self.universe.unit)

    def contains(self, el):
        if not self.universe.contains(el):
            return False
        d = tuple(
            a - b
            for a, b in zip(self.universe.vectorize(el), self.universe.vectorize(self.start))
        )
        s = self.universe.vectorize(self.step)
        k = None
        for di, si in zip(d, s):
            if si == 0:
                if di != 0:
                    return False
            else:
                ki = di / si
                if k is None:
                    k = ki
                elif k != ki:
                    return False
        if k is None or k.denominator != 1 or k < 0:
            return False
        return self.count is None or k < self.count

    def is_finite(self):
        return self.count is not None

    def classify(self):
        if self.count is not None:
            return FINITE
        return UP if self.direction_up() else DOWN

    def elements(self):
        if self.count is None:
            raise SetError("progression is infinite")
        out, cur = [], self.start
        for _ in range(self.count):
            out.append(cur)
            cur = self.universe.op(cur, self.step)
        return out

    def _iter_raw(self):
        cur = self.start
        n = 0
        while self.count is None or n < self.count:
            yield cur
            cur = self.universe.op(cur, self.step)
            n += 1

    def iter_increasing(self):
        if self.count is not None:
            return iter(sorted(self.elements(), key=self.universe.key))
        if not self.direction_up():
            raise SetError("decreasing progression has no increasing enumeration")
        return self._iter_raw()

    def elements_upto(self, bound):
        k = self.universe.key
        if self.count is not None:
            return sorted((e for e in self.elements() if k(e) <= k(bound)), key=k)
        if not self.direction_up():
            return None
        out = []
        for e in self._iter_raw():
            if k(e) > k(bound):
                break
            out.append(e)
        return out

    def elements_downto(self, bound):
        k = self.universe.key
        if self.count is not None:
            return sorted((e for e in self.elements() if k(e) >= k(bound)), key=k)
        if self.direction_up():
            return None
        out = []
        for e in self._iter_raw():
            if k(e) < k(bound):
                break
            out.append(e)
        return sorted(out, key=k)

    def format(self):
        u = self.universe
        tail = "" if self.count is None else "; count=%d" % self.count
        return "prog(%s; %s%s)" % (u.format(self.start), u.format(self.step), tail)

    def to_record(self):
        u = self.universe
        return {
            "atom": "progression",
            "start": u.format(self.start),
            "step": u.format(self.step),
            "count": self.count,
        }


class GridAtom(Atom):
    """{base * g1^k1 * ... * gm^km : ki in N}; every generator above the unit."""

    def __init__(self, universe, base, generators):
        if not universe.has_monoid or not universe.is_ordered:
            raise SetError("grid atom needs an ordered monoid universe")
        super().__init__(universe)
        self.base = universe.check(base)
        self.generators = tuple(universe.check(g) for g in generators)
        uk = universe.key(universe.unit)
        for g in self.generators:
            if not universe.key(g) > uk:
                raise SetError("grid generator %s is not above the unit" % universe.format(g))

    def _gen_vecs(self):
        return [self.universe.vectorize(g) for g in self.generators]

    def contains(self, el):
        if not self.universe.contains(el):
            return False
        t = tuple(
            a - b
            for a, b in zip(self.universe.vectorize(el), self.universe.vectorize(self.base))
        )
        return bool(nonneg_solutions(self._gen_vecs(), t))

    def is_finite(self):
        return not self.generators

    def classify(self):
        if not self.generators:
            return FINITE
        if shares_leading_index(self._gen_vecs()):
            return UP
        return WO

    def elements(self):
        if self.generators:
            raise SetError("grid is infinite")
        return [self.base]

    def iter_increasing(self):
        dev = self.universe.devectorize
        return (dev(v) for v in grid_points(self._gen_vecs(), self.universe.vectorize(self.base)))

    def elements_upto(self, bound):
        pts = grid_points_upto(
            self._gen_vecs(),
            self.universe.vectorize(self.base),
            self.universe.vectorize(bound),
        )
        if pts is None:
            return None
        return [self.universe.devectorize(v) for v in pts]

    def format(self):
        u = self.universe
        return "grid(%s; %s)" % (u.format(self.base), ", ".join(u.format(g) for g in self.generators))

    def to_record(self):
        u = self.universe
        return {
            "atom": "grid",
            "base": u.format(self.base),
            "generators": [u.format(g) for g in self.generators],
        }


class ComplementAtom(Atom):
    """within \\ inner, for `inner` a DescribedSet and `within` an atom."""

    def __init__(self, inner, within):
        super().__init__(within.universe)
        if inner.universe != within.universe:
            raise SetError("complement parts live on different universes")
        self.inner = inner
        self.within = within

    def contains(self, el):
        return self.within.contains(el) and not self.inner.contains(el)

    def is_finite(self):
        if self.within.is_finite():
            return True
        return None

    def classify(self):
        # Subset of `within`: its class is an over-approximation, sound only
        # for bounded-side verdicts.
        return self.within.classify()

    def exact_class(self):
        return False

    def elements(self):
        return [e for e in self.within.elements() if not self.inner.contains(e)]

    def iter_increasing(self):
        return (e for e in self.within.iter_increasing() if not self.inner.contains(e))

    def elements_upto(self, bound):
        base = self.within.elements_upto(bound)
        if base is None:
            return None
        return [e for e in base if not self.inner.contains(e)]

    def elements_downto(self, bound):
        base = self.within.elements_downto(bound)
        if base is None:
            return None
        return [e for e in base if not self.inner.contains(e)]

    def format(self):
        return "diff(%s; %s)" % (self.within.format(), self.inner.format())

    def to_record(self):
        return {"atom": "complement", "within": self.within.to_record(), "inner": self.inner.to_record()}


class ProductAtom(Atom):
    """left x right, on a pair universe."""

    def __init__(self, universe, left, right):
        if not isinstance(universe, PairUniverse):
            raise SetError("product atom needs a pair universe")
        super().__init__(universe)
        if left.universe != universe.left or right.universe != universe.right:
            raise SetError("product components live on the wrong universes")
        self.left = left
        self.right = right

    def contains(self, el):
        return (
            self.universe.contains(el)
            and self.left.contains(el[0])
            and self.right.contains(el[1])
        )

    def is_finite(self):
        lf, rf = self.left.is_finite(), self.right.is_finite()
        le, re_ = self.left.is_empty(), self.right.is_empty()
        if le is True or re_ is True:
            return True
        if lf is True and rf is True:
            return True
        if lf is False and re_ is False:
            return False
        if rf is False and le is False:
            return False
        return None

    def classify(self):
        if self.is_finite() is True:
            return FINITE
        return UNKNOWN

    def elements(self):
        if self.is_finite() is not True:
            raise SetError("product atom is not known finite")
        if self.left.is_empty() is True or self.right.is_empty() is True:
            return []
        return [(a, b) for a in self.left.elements() for b in self.right.elements()]

    def iter_increasing(self):
        return ((a, b) for a in self.left.iter_increasing() for b in self.right.iter_increasing())

    def format(self):
        return "product(%s; %s)" % (self.left.format(), self.right.format())

    def to_record(self):
        return {"atom": "product", "left": self.left.to_record(), "right": self.right.to_record()}


class DescribedSet:
    """A finite union of atoms over one universe."""

    def __init__(self, universe, atoms=()):
        self.universe = universe
        self.atoms = tuple(atoms)
        for a in self.atoms:
            if a.universe != universe:
                raise SetError("atom universe mismatch")

    # constructors --------------------------------------------------------
    @classmethod
    def finite(cls, universe, elements):
        return cls(universe, [FiniteAtom(universe, elements)])

    @classmethod
    def empty(cls, universe):
        return cls(universe, [])

    @classmethod
    def progression(cls, universe, start, step, count=None):
        return cls(universe, [ProgressionAtom(universe, start, step, count)])

    @classmethod
    def grid(cls, universe, base, generators):
        return cls(universe, [GridAtom(universe, base, generators)])

    @classmethod
    def interval(cls, universe, lo=None, hi=None, lo_strict=False, hi_strict=False):
        return cls(universe, [IntervalAtom(universe, lo, hi, lo_strict, hi_strict)])

    @classmethod
    def product(cls, universe, left, right):
        return cls(universe, [ProductAtom(universe, left, right)])

    def union(self, other):
        if other.universe != self.universe:
            raise SetError("universe mismatch in union")
        return DescribedSet(self.universe, self.atoms + other.atoms)

    def complement_within(self, within):
        """Elements of `within` (a DescribedSet) not in this set."""
        return DescribedSet(
            self.universe, [ComplementAtom(self, a) for a in within.atoms]
        )

    # queries ---------------------------------------------------------------
    def contains(self, el):
        return any(a.contains(el) for a in self.atoms)

    def is_empty(self):
        if not self.atoms:
            return True
        verdicts = []
        for a in self.atoms:
            if a.is_finite() is True:
                verdicts.append(len(a.elements()) == 0)
            else:
                fin = a.is_finite()
                verdicts.append(False if fin is False else None)
        if any(v is False for v in verdicts):
            return False
        if all(v is True for v in verdicts):
            return True
        return None

    def is_finite(self):
        verdicts = [a.is_finite() for a in self.atoms]
        if any(v is False for v in verdicts):
            return False
        if all(v is True for v in verdicts):
            return True
        return None

    def elements(self):
        out = set()
        for a in self.atoms:
            out.update(a.elements())
        return out

    def iter_increasing(self):
        """Increasing enumeration without repetitions (ordered universes)."""
        key = self.universe.key
        merged = heapq.merge(*[a.iter_increasing() for a in self.atoms], key=key)
        sentinel = object()
        last = sentinel
        for e in merged:
            if last is not sentinel and e == last:
                continue
            yield e
            last = e

    def first_n(self, n):
        return list(itertools.islice(self.iter_increasing(), n))

    def elements_upto(self, bound):
        out = set()
        for a in self.atoms:
            part = a.elements_upto(bound)
            if part is None:
                return None
            out.update(part)
        return sorted(out, key=self.universe.key)

    def elements_downto(self, bound):
        out = set()
        for a in self.atoms:
            part = a.elements_downto(bound)
            if part is None:
                return None
            out.update(part)
        return sorted(out, key=self.universe.key)

    def translate(self, el):
        """Image of this set under gamma -> el * gamma (monoid universes)."""
        u = self.universe
        el = u.check(el)
        out = []
        for a in self.atoms:
            if isinstance(a, FiniteAtom):
                out.append(FiniteAtom(u, [u.op(el, e) for e in a.els]))
            elif isinstance(a, ProgressionAtom):
                out.append(ProgressionAtom(u, u.op(el, a.start), a.step, a.count))
            elif isinstance(a, GridAtom):
                out.append(GridAtom(u, u.op(el, a.base), a.generators))
            else:
                raise SetError("cannot translate atom %r" % a)
        return DescribedSet(u, out)

    def format(self):
        if not self.atoms:
            return "{}"
        return " | ".join(a.format() for a in self.atoms)

    def to_record(self):
        return {"universe": self.universe.to_record(), "atoms": [a.to_record() for a in self.atoms]}

    def __eq__(self, other):
        return isinstance(other, DescribedSet) and self.to_record() == other.to_record()

    def __hash__(self):
        return hash(str(self.to_record()))

    def __repr__(self):
        return "DescribedSet(%s)" % self.format()


def set_from_record(rec, universe=None):
    from .universe import universe_from_record

    if universe is None:
        universe = universe_from_record(rec["universe"])
    atoms = [_atom_from_record(a, universe) for a in rec["atoms"]]
    return DescribedSet(universe, atoms)


def _atom_from_record(rec, u):
    kind = rec["atom"]
    if kind == "finite":
        return FiniteAtom(u, [u.parse(t) for t in rec["elements"]])
    if kind == "interval":
        lo = u.parse(rec["lo"]) if rec["lo"] is not None else None
        hi = u.parse(rec["hi"]) if rec["hi"] is not None else None
        return IntervalAtom(u, lo, hi, rec["lo_strict"], rec["hi_strict"])
    if kind == "progression":
        return ProgressionAtom(u, u.parse(rec["start"]), u.parse(rec["step"]), rec["count"])
    if kind == "grid":
        return GridAtom(u, u.parse(rec["base"]), [u.parse(g) for g in rec["generators"]])
    if kind == "complement":
        within = _atom_from_record(rec["within"], u)
        inner = set_from_record(rec["inner"], u)
        return ComplementAtom(inner, within)
    if kind == "product":
        left = set_from_record(rec["left"], u.left)
        right = set_from_record(rec["right"], u.right)
        return ProductAtom(u, left, right)
    raise SetError("unknown atom record %r" % kind)


# ---------------------------------------------------------------------------
# pairwise intersection analysis


def _prog_prog_intersection(p1, p2):
    """Intersection of two infinite progressions; exact."""
    u = p1.universe
    s1, s2 = u.vectorize(p1.start), u.vectorize(p2.start)
    d1, d2 = u.vectorize(p1.step), u.vectorize(p2.step)
    # parallel test: d2 == r * d1 for a scalar r
    r = None
    parallel = True
    for a, b in zip(d1, d2):
        if a == 0 and b == 0:
            continue
        if a == 0 or b == 0:
            parallel = False
            break
        q = Fraction(b) / Fraction(a)
        if r is None:
            r = q
        elif r != q:
            parallel = False
            break
    if not parallel:
        # solve k*d1 - l*d2 = s2 - s1: at most one solution
        c = tuple(x - y for x, y in zip(s2, s1))
        rows = [(d1[i], -d2[i], c[i]) for i in range(len(d1))]
        sol = _solve_two_unknowns(rows)
        if sol is None:
            return (True, [])
        k, l = sol
        if k.denominator == 1 and l.denominator == 1 and k >= 0 and l >= 0:
            el = u.devectorize(tuple(s + k * d for s, d in zip(s1, d1)))
            return (True, [el])
        return (True, [])
    # parallel: both progressions run along direction d1
    i = next((j for j in range(len(d1)) if d1[j] != 0), None)
    # element s1 + k d1 lies on line of p2 iff offsets match off-direction
    base_diff = tuple(x - y for x, y in zip(s2, s1))
    t = Fraction(base_diff[i]) / d1[i]
    if any(base_diff[j] != t * d1[j] for j in range(len(d1))):
        return (True, [])  # different parallel lines
    # s1 + k d1 = s2 + l d2  =>  k - l*r = t
    if (r > 0) == (Fraction(1) > 0) and r > 0:
        same_dir = True
    else:
        same_dir = False
    if same_dir:
        # infinitely many common points iff k = t + l*r has infinitely many
        # integer solutions with k,l >= 0
        sols = _congruence_solutions(t, r, limit=3)
        if len(sols) >= 2:
            return (False, None)
        return (True, [_prog_el(p1, k) for k, _ in sols])
    # opposite directions: p2 runs downward along d1; common points bounded
    out = []
    l = 0
    while True:
        k = t + l * r
        if k < 0:
            break
        if k.denominator == 1:
            out.append(_prog_el(p1, k))
        l += 1
        if l > 10 ** 6:
            raise SetError("progression intersection runaway")
    return (True, out)


def _congruence_solutions(t, r, limit):
    """Nonnegative integer pairs (k, l) with k = t + l*r, first `limit` of them."""
    out = []
    l = 0
    guard = 0
    while len(out) < limit and guard < 10 ** 5:
        k = t + l * r
        if k >= 0 and k.denominator == 1:
            out.append((k, l))
        l += 1
        guard += 1
    return out


def _prog_el(p, k):
    u = p.universe
    s = u.vectorize(p.start)
    d = u.vectorize(p.step)
    return u.devectorize(tuple(a + k * b for a, b in zip(s, d)))


def _solve_two_unknowns(rows):
    """Solve rows of (a, b, c) meaning a*k + b*l = c; None if inconsistent,
    (k, l) if a unique solution exists, raises SetError on underdetermined."""
    pivot = None
    for i, (a1, b1, _) in enumerate(rows):
        for j in range(i + 1, len(rows)):
            a2, b2, _ = rows[j]
            if a1 * b2 - a2 * b1 != 0:
                pivot = (i, j)
                break
        if pivot:
            break
    if pivot is None:
        raise SetError("underdetermined progression system")
    i, j = pivot
    a1, b1, c1 = rows[i]
    a2, b2, c2 = rows[j]
    det = a1 * b2 - a2 * b1
    k = Fraction(c1 * b2 - c2 * b1, 1) / det
    l = Fraction(a1 * c2 - a2 * c1, 1) / det
    for a, b, c in rows:
        if a * k + b * l != c:
            return None
    return (k, l)


def atom_intersection(a1, a2):
    """(finite?, elements) for the intersection of two atoms.

    Returns (True, list) when the intersection is decidably finite and
    enumerable, (False, None) when decidably infinite, (None, None) when
    undecided.  Never returns a wrong definite answer.
    """
    f1, f2 = a1.is_finite(), a2.is_finite()
    if f1 is True:
        return (True, [e for e in a1.elements() if a2.contains(e)])
    if f2 is True:
        return (True, [e for e in a2.elements() if a1.contains(e)])

    if isinstance(a1, ProductAtom) and isinstance(a2, ProductAtom):
        lf, le = described_intersection(a1.left, a2.left)
        rf, re_ = described_intersection(a1.right, a2.right)
        if lf is True and rf is True:
            return (True, [(x, y) for x in le for y in re_])
        if (lf is True and not le) or (rf is True and not re_):
            return (True, [])
        if lf is False and rf is False:
            return (False, None)
        if lf is False and rf is True and re_:
            return (False, None)
        if rf is False and lf is True and le:
            return (False, None)
        return (None, None)

    if isinstance(a1, ProgressionAtom) and isinstance(a2, ProgressionAtom):
        return _prog_prog_intersection(a1, a2)

    if a1 == a2:
        return (False, None)

    c1, c2 = a1.classify(), a2.classify()
    # an UP set meets anything bounded above in finitely many points
    for up, other in ((a1, a2), (a2, a1)):
        if up.classify() != UP or not up.exact_class():
            continue
        bound = _sup_element(other)
        if bound is not None:
            part = up.elements_upto(bound)
            if part is not None:
                return (True, [e for e in part if other.contains(e)])
    for down, other in ((a1, a2), (a2, a1)):
        if down.classify() != DOWN or not down.exact_class():
            continue
        bound = _inf_element(other)
        if bound is not None:
            part = down.elements_downto(bound)
            if part is not None:
                return (True, [e for e in part if other.contains(e)])
    # interval clipping
    for iv, other in ((a1, a2), (a2, a1)):
        if isinstance(iv, IntervalAtom) and other.classify() in (UP, DOWN):
            if iv.hi is not None and other.classify() == UP:
                part = other.elements_upto(iv.hi)
                if part is not None:
                    return (True, [e for e in part if iv.contains(e)])
            if iv.lo is not None and other.classify() == DOWN:
                part = other.elements_downto(iv.lo)
                if part is not None:
                    return (True, [e for e in part if iv.contains(e)])
    _ = (c1, c2)
    return (None, None)


def _sup_element(atom):
    """An upper bound for the atom when one is evident."""
    if isinstance(atom, ProgressionAtom) and not atom.direction_up():
        return atom.start
    if isinstance(atom, IntervalAtom) and atom.hi is not None:
        return atom.hi
    if isinstance(atom, ComplementAtom):
        return _sup_element(atom.within)
    return None


def _inf_element(atom):
    if isinstance(atom, ProgressionAtom) and atom.direction_up():
        return atom.start
    if isinstance(atom, GridAtom):
        return None  # base is minimal only for nonnegative grids; stay safe
    if isinstance(atom, IntervalAtom) and atom.lo is not None:
        return atom.lo
    if isinstance(atom, ComplementAtom):
        return _inf_element(atom.within)
    return None


def described_intersection(s1, s2):
    """(finite?, elements) for the intersection of two described sets."""
    if s1.universe != s2.universe:
        raise SetError("universe mismatch in intersection")
    total = set()
    for a1 in s1.atoms:
        for a2 in s2.atoms:
            fin, els = atom_intersection(a1, a2)
            if fin is False:
                return (False, None)
            if fin is None:
                return (None, None)
            total.update(els)
    return (True, sorted(total, key=s1.universe.key) if s1.universe.is_ordered else list(total))
