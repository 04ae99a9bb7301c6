"""Constructive basis duality and one-step sigma-span closure on k^N.

Everything here is exact rational linear algebra on finite coordinate
prefixes: reduced row echelon forms, kernel bases, and window-restricted
membership in the space of certified infinite sums from a generator list.
"""

from __future__ import annotations

from fractions import Fraction


class ClosureError(ValueError):
    pass


class IdempotenceFailure(AssertionError):
    """A second sigma-span round produced a new vector; carries the witness."""

    def __init__(self, witness):
        super().__init__(
            "one-step sigma-span closure failed; witness: %r" % (witness,)
        )
        self.witness = witness


# -- exact linear algebra ----------------------------------------------------


def rref(rows):
    """Reduced row echelon form.  Returns (reduced nonzero rows, pivot cols)."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        sel = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    return mat[:rank], pivots


def rank(rows):
    return len(rref(rows)[0])


def solve_combination(columns, target):
    """Coefficients expressing target as a combination of the columns, or
    None.  Exact; columns and target are equal-length vectors."""
    if not columns:
        return [] if all(c == 0 for c in target) else None
    n = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(len(columns))] + [Fraction(target[i])]
           for i in range(n)]
    red, pivots = rref(aug)
    m = len(columns)
    coeffs = [Fraction(0)] * m
    for row, p in zip(red, pivots):
        if p == m:
            return None  # inconsistent
        coeffs[p] = row[m]
    # verify (free variables were set to zero)
    for i in range(n):
        if sum(coeffs[j] * Fraction(columns[j][i]) for j in range(m)) != Fraction(target[i]):
            return None
    return coeffs


def kernel_basis(rows, ncols):
    """Basis of the joint kernel of the rows inside k^ncols, each vector
    scaled to leading coefficient 1 and sorted by leading coordinate."""
    red, pivots = rref([list(r) + [Fraction(0)] * (ncols - len(r)) for r in rows])
    pivot_set = set(pivots)
    out = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[j]
        lead = next(i for i in range(ncols) if v[i] != 0)
        lc = v[lead]
        out.append(([x / lc for x in v], lead))
    out.sort(key=lambda t: t[1])
    return [v for v, _ in out]


# -- constructive dual bases --------------------------------------------------


class FunctionalFamily:
    """Finitely many finite-support functionals on k^(N), given as rows
    {coordinate: scalar}.  Dependent rows are allowed; the construction
    tracks their recovery coefficients through the pivot structure."""

    def __init__(self, rows):
        self.rows = [dict(r) for r in rows]
        for r in self.rows:
            for n, c in r.items():
                if not isinstance(n, int) or n < 0:
                    raise ClosureError("row coordinates must be naturals")
        self.width = 1 + max((n for r in self.rows for n in r), default=-1)

    def as_lists(self, width=None):
        w = width or max(self.width, 1)
        return [[Fraction(r.get(j, 0)) for j in range(w)] for r in self.rows]


class ConstructedBasis:
    """A prefix b_0, b_1, ... of a basis of k^(N) whose dual coordinate
    functionals span the given rows.

    recovery[m] = list of (j, coefficient) with xi_m = sum c_j * delta_{b_j};
    bounds[m] = N_m with xi_m(b_n) = 0 for all n >= N_m."""

    def __init__(self, vectors, recovery, bounds, pivots, independent_rank):
        self.vectors = vectors
        self.recovery = recovery
        self.bounds = bounds
        self.pivots = pivots
        self.rank = independent_rank


def dual_basis_construction(family, depth):
    """Build `depth` basis vectors: the pivot coordinates complement the joint
    kernel, then kernel vectors by increasing leading coordinate, then the
    untouched standard vectors."""
    width = max(family.width, 1)
    rows = family.as_lists(width)
    red, pivots = rref(rows)
    r = len(pivots)
    vectors = []
    # complement of the joint kernel: the pivot coordinates themselves
    for p in pivots:
        v = [Fraction(0)] * width
        v[p] = Fraction(1)
        vectors.append(v)
    vectors.extend(kernel_basis(red, width))
    # beyond the materialized prefix the standard basis continues unchanged
    j = width
    while len(vectors) < depth:
        v = [Fraction(0)] * (j + 1)
        v[j] = Fraction(1)
        vectors.append(v)
        j += 1
    vectors = vectors[:depth]

    def pad(v, w):
        return v + [Fraction(0)] * (w - len(v))

    recovery, bounds = [], []
    for row in rows:
        coeffs = []
        for jj in range(min(r, len(vectors))):
            val = sum(row[i] * vectors[jj][i] for i in range(min(width, len(vectors[jj]))))
            if val != 0:
                coeffs.append((jj, val))
        recovery.append(coeffs)
        bounds.append(r)
    return ConstructedBasis(
        [pad(v, max(width, len(v))) for v in vectors], recovery, bounds, pivots, r
    )


# -- one-step sigma-span -----------------------------------------------------


class PatternGenerator:
    """The family (template shifted by k*step)_{k in N}; always summable:
    each coordinate meets at most |template| members."""

    def __init__(self, template, step):
        self.template = {int(n): Fraction(c) for n, c in dict(template).items()}
        if step < 1:
            raise ClosureError("pattern step must be positive")
        self.step = int(step)

    def member(self, k):
        return {n + k * self.step: c for n, c in self.template.items()}

    def members_touching(self, window):
        """All k whose member meets coordinates < window."""
        if not self.template:
            return []
        lo = min(self.template)
        kmax = max(0, (window - 1 - lo) // self.step)
        return list(range(kmax + 1))

    def full_sum_window(self, window):
        """Window restriction of the certified sum over all k, weights 1."""
        out = [Fraction(0)] * window
        for k in range(0, (window // self.step) + 2):
            for n, c in self.member(k).items():
                if n < window:
                    out[n] += c
        return out


class VectorGenerator:
    def __init__(self, coords):
        self.coords = {int(n): Fraction(c) for n, c in dict(coords).items()}

    def window(self, window):
        return [self.coords.get(i, Fraction(0)) for i in range(window)]


class SigmaSpanOracle:
    """Window-restricted membership in the one-step sigma-span of the
    generators: a candidate is accepted only with a verified certificate
    (a finite combination of family members and certified full pattern sums)."""

    def __init__(self, generators, window):
        self.generators = list(generators)
        self.window = window
        self.columns = []   # (description, window vector)
        for gi, g in enumerate(self.generators):
            if isinstance(g, VectorGenerator):
                self.columns.append((("vector", gi), g.window(window)))
            elif isinstance(g, PatternGenerator):
                for k in g.members_touching(window):
                    vec = [Fraction(0)] * window
                    for n, c in g.member(k).items():
                        if n < window:
                            vec[n] += c
                    self.columns.append((("member", gi, k), vec))
                self.columns.append((("pattern-sum", gi), g.full_sum_window(window)))
            else:
                raise ClosureError("unknown generator %r" % (g,))

    def decide(self, candidate):
        """candidate: dict or list of window coordinates.  Returns
        ('accepted', certificate) or ('rejected', None)."""
        if isinstance(candidate, dict):
            target = [Fraction(candidate.get(i, 0)) for i in range(self.window)]
        else:
            target = [Fraction(c) for c in candidate] + [Fraction(0)] * (
                self.window - len(candidate)
            )
            target = target[: self.window]
        coeffs = solve_combination([vec for _, vec in self.columns], target)
        if coeffs is None:
            return ("rejected", None)
        cert = [
            (desc, c) for (desc, _), c in zip(self.columns, coeffs) if c != 0
        ]
        return ("accepted", cert)


def sigma_span_window(generators, window):
    return SigmaSpanOracle(generators, window)


def default_battery(generators, window):
    """Candidate vectors derived from the generators: members, partial and
    full pattern sums, pairwise combinations, and a few off-span probes."""
    battery = []
    oracle_cols = SigmaSpanOracle(generators, window).columns
    for _, vec in oracle_cols:
        battery.append(list(vec))
    for i in range(len(oracle_cols)):
        for j in range(i + 1, min(i + 3, len(oracle_cols))):
            battery.append([a + 2 * b for a, b in zip(oracle_cols[i][1], oracle_cols[j][1])])
    for probe in range(min(4, window)):
        v = [Fraction(0)] * window
        v[probe] = Fraction(1)
        battery.append(v)
    return battery


def idempotence_check(generators, window, battery=None, weaken_first=0):
    """Two rounds of sigma-span; PASS iff the second round accepts nothing
    the first round did not.  A FAIL raises with the witness vector.

    `weaken_first` drops that many trailing columns from the first round's
    oracle; it is a fault-injection knob that exercises the abort path."""
    if battery is None:
        battery = default_battery(generators, window)
    first = sigma_span_window(generators, window)
    if weaken_first:
        first.columns = first.columns[:-weaken_first]
    round1 = [first.decide(v) for v in battery]
    accepted = [
        v for v, (verdict, _) in zip(battery, round1) if verdict == "accepted"
    ]
    second_gens = list(generators) + [
        VectorGenerator({i: c for i, c in enumerate(v) if c != 0}) for v in accepted
    ]
    second = sigma_span_window(second_gens, window)
    new = []
    for v, (verdict, _) in zip(battery, round1):
        v2, _ = second.decide(v)
        if v2 == "accepted" and verdict != "accepted":
            new.append(v)
    if new:
        raise IdempotenceFailure(
            {
                "generators": [type(g).__name__ for g in generators],
                "window": window,
                "new_vectors": [[str(c) for c in v] for v in new],
            }
        )
    return {
        "verdict": "PASS",
        "battery": len(battery),
        "accepted_round1": len(accepted),
    }


# -- the dense-but-sum-closed finite shadow ----------------------------------


def dense_sigma_closed_example(prefix_dim, window, phi=None, targets=(), families=()):
    """A labeled finite shadow of the dense sum-closed subspace: vectors
    f_v = (v, phi(v)) for v in k^prefix_dim, with density solves against the
    given first-projection targets and sum-closedness spot checks."""
    n = prefix_dim
    if phi is None:
        phi = [[Fraction((i + 1) ** (j + 1)) for j in range(n)] for i in range(window)]
    if len(phi) != window or any(len(r) != n for r in phi):
        raise ClosureError("phi must be a window x prefix_dim matrix")
    if rank([list(col) for col in zip(*phi)]) < min(n, window):
        raise ClosureError("phi prefix is not injective")

    def f_of(v):
        img = [sum(phi[i][j] * v[j] for j in range(n)) for i in range(window)]
        return list(v) + img

    density = []
    for target in targets:
        # target: dict coordinate -> value on the phi-image coordinates
        cols = [[phi[i][j] for i in sorted(target)] for j in range(n)]
        goal = [Fraction(target[i]) for i in sorted(target)]
        sol = solve_combination(cols, goal)
        density.append(
            {"target": {str(k): str(Fraction(x)) for k, x in target.items()},
             "solved": sol is not None,
             "witness": [str(c) for c in sol] if sol is not None else None}
        )
    closed = []
    for fam in families:
        # fam: list of (weight, v-vector); the sum of f_v's must be f of the
        # weighted v-sum (linearity = sum-closedness at finite scale)
        total_v = [sum(Fraction(w) * Fraction(v[j]) for w, v in fam) for j in range(n)]
        lhs = [sum(Fraction(w) * x for (w, v), x in zip(fam, cols))
               for cols in zip(*[f_of([Fraction(c) for c in v]) for _, v in fam])]
        closed.append(lhs == f_of(total_v))
    return {
        "label": "finite shadow of an uncountable construction",
        "prefix_dim": n,
        "window": window,
        "density": density,
        "sigma_closed_spot_checks": closed,
    }
