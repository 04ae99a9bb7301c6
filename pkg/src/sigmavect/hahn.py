"""Hahn-series arithmetic on grid-certified supports.

Supports admitted to arithmetic are finite unions of finite sets and grids
{b + k1*g1 + ... + km*gm} with every generator strictly above the unit.  That
makes the convolution decomposition sets finite and computable (bounded
lattice-point enumeration) and gives the summability bound behind Neumann
summation: any element has only finitely many representations as a sum of n
support elements, with n bounded by a positive weight functional.
"""

from __future__ import annotations

from fractions import Fraction

from .gridsolve import nonneg_solutions, positive_weights, weight
from .sets import DescribedSet, FiniteAtom, GridAtom, ProgressionAtom, SetError
from .series import FiniteSeries, LazySeries, SeriesError, delta, zero_series
from .universe import UniverseError


class HahnError(SeriesError):
    pass


def _grid_atoms(u, cert):
    """Certificate atoms normalized to finite sets and grids (an increasing
    progression is the one-generator grid on its step)."""
    out = []
    for a in cert.atoms:
        if isinstance(a, (FiniteAtom, GridAtom)):
            out.append(a)
        elif isinstance(a, ProgressionAtom):
            if a.count is not None:
                out.append(FiniteAtom(u, a.elements()))
            elif a.direction_up():
                out.append(GridAtom(u, a.start, [a.step]))
            else:
                raise HahnError("decreasing support %r is not grid-certified" % a)
        else:
            raise HahnError("certificate atom %r is not grid-certified" % a)
    return out


def _check_hahn(f):
    u = f.universe
    if not (u.is_ordered and u.has_monoid):
        raise HahnError("Hahn arithmetic needs an ordered monoid universe")
    _grid_atoms(u, f.certificate)
    return f


def unit_series(field, universe, bornology):
    return delta(field, universe, bornology, universe.unit)


def _try_sub(u, gamma, alpha):
    """gamma - alpha in the universe, or None when it falls outside."""
    try:
        return u.devectorize(
            tuple(a - b for a, b in zip(u.vectorize(gamma), u.vectorize(alpha)))
        )
    except (UniverseError, ValueError):
        return None


def _decompositions(u, atom_f, atom_g, gamma):
    """All pairs (alpha, beta) with alpha in atom_f, beta in atom_g and
    alpha + beta = gamma."""
    pairs = set()
    ff, fg = isinstance(atom_f, FiniteAtom), isinstance(atom_g, FiniteAtom)
    if ff:
        for a in atom_f.elements():
            b = _try_sub(u, gamma, a)
            if b is not None and atom_g.contains(b):
                pairs.add((a, b))
        return pairs
    if fg:
        return {(a, b) for b, a in _decompositions(u, atom_g, atom_f, gamma)}
    # grid x grid: solve sum(ki gi) + sum(lj hj) = gamma - bf - bg
    gens_f = [u.vectorize(g) for g in atom_f.generators]
    gens_g = [u.vectorize(g) for g in atom_g.generators]
    base = tuple(
        x + y for x, y in zip(u.vectorize(atom_f.base), u.vectorize(atom_g.base))
    )
    target = tuple(x - y for x, y in zip(u.vectorize(gamma), base))
    bf = u.vectorize(atom_f.base)
    for sol in nonneg_solutions(gens_f + gens_g, target):
        avec = list(bf)
        for k, g in zip(sol[: len(gens_f)], gens_f):
            avec = [x + k * y for x, y in zip(avec, g)]
        alpha = u.devectorize(tuple(avec))
        beta = _try_sub(u, gamma, alpha)
        if beta is not None:
            pairs.add((alpha, beta))
    return pairs


def _minkowski_atoms(u, atom_f, atom_g):
    """Atoms covering {a + b : a in atom_f, b in atom_g}."""
    ff, fg = isinstance(atom_f, FiniteAtom), isinstance(atom_g, FiniteAtom)
    if ff and fg:
        return [
            FiniteAtom(u, {u.op(a, b) for a in atom_f.elements() for b in atom_g.elements()})
        ]
    if ff:
        return [GridAtom(u, u.op(a, atom_g.base), atom_g.generators) for a in atom_f.elements()]
    if fg:
        return [GridAtom(u, u.op(atom_f.base, b), atom_f.generators) for b in atom_g.elements()]
    gens = []
    for g in atom_f.generators + atom_g.generators:
        if g not in gens:
            gens.append(g)
    return [GridAtom(u, u.op(atom_f.base, atom_g.base), gens)]


def _dedupe_atoms(atoms):
    seen, out = set(), []
    for a in atoms:
        r = str(a.to_record())
        if r not in seen:
            seen.add(r)
            out.append(a)
    return out


def cauchy_product(f, g, bornology=None):
    """Convolution: coefficient at gamma sums f(alpha) g(beta) over the finite
    set of decompositions gamma = alpha + beta inside the certificates.

    The optional bornology overrides the output's support ideal (used by
    module actions, where the two factors live in different spaces)."""
    _check_hahn(f)
    _check_hahn(g)
    if f.universe != g.universe or f.field != g.field:
        raise HahnError("product across different universes or fields")
    u, field = f.universe, f.field
    out_b = bornology if bornology is not None else f.bornology
    if isinstance(f, FiniteSeries) and isinstance(g, FiniteSeries):
        acc = {}
        for a, ca in f.terms.items():
            for b, cb in g.terms.items():
                gam = u.op(a, b)
                acc[gam] = acc.get(gam, field.zero) + ca * cb
        return FiniteSeries(field, u, out_b, acc)
    f_atoms = _grid_atoms(u, f.certificate)
    g_atoms = _grid_atoms(u, g.certificate)
    atoms = []
    for af in f_atoms:
        for ag in g_atoms:
            atoms.extend(_minkowski_atoms(u, af, ag))
    cert = DescribedSet(u, _dedupe_atoms(atoms))

    def oracle(gamma):
        pairs = set()
        for af in f_atoms:
            for ag in g_atoms:
                pairs |= _decompositions(u, af, ag, gamma)
        total = field.zero
        for a, b in pairs:
            total = total + f.coeff(a) * g.coeff(b)
        return total

    return LazySeries(field, u, out_b, oracle, cert, check_certificate=False)


def product_many(series):
    out = None
    for f in series:
        out = f if out is None else cauchy_product(out, f)
    if out is None:
        raise HahnError("empty product needs an explicit space")
    return out


def leading_term(f, window=32):
    """(least support monomial, coefficient), or None when the first `window`
    certificate elements all carry zero (the 'zero-to-window' verdict)."""
    _check_hahn(f)
    probed = 0
    for gamma in f.certificate.iter_increasing():
        if probed == window:
            return None
        probed += 1
        c = f.coeff(gamma)
        if not f.field.is_zero(c):
            return (gamma, c)
    return None


def _positive_support_vectors(u, cert):
    """Generator vectors witnessing that every certificate element is > unit;
    raises when the certificate does not certify Supp > 1."""
    uk = u.key(u.unit)
    vecs = []
    for a in _grid_atoms(u, cert):
        if isinstance(a, FiniteAtom):
            for e in a.elements():
                if not u.key(e) > uk:
                    raise HahnError(
                        "certificate element %s is not above the unit" % u.format(e)
                    )
                vecs.append(tuple(u.vectorize(e)))
        elif isinstance(a, GridAtom):
            if not u.key(a.base) > uk:
                raise HahnError(
                    "grid base %s is not above the unit" % u.format(a.base)
                )
            vecs.append(tuple(u.vectorize(a.base)))
            vecs.extend(tuple(u.vectorize(g)) for g in a.generators)
        else:
            raise HahnError("certificate atom %r is not grid-certified" % a)
    return vecs


def neumann_sum(eps, coeffs=None):
    """Sum over n of coeffs(n) * eps^n, defined whenever Supp(eps) > 1.

    Each monomial gamma receives contributions from only finitely many n: a
    positive weight functional gives every support element weight >= m0 > 0,
    so eps^n cannot reach gamma once n * m0 exceeds the weight of gamma.
    """
    _check_hahn(eps)
    u, field = eps.universe, eps.field
    if coeffs is None:
        coeffs = lambda n: field.one
    one = unit_series(field, u, eps.bornology)
    vecs = _positive_support_vectors(u, eps.certificate)
    if not vecs:
        return FiniteSeries(field, u, eps.bornology, {u.unit: coeffs(0)})
    wts = positive_weights(vecs)
    m0 = min(weight(wts, v) for v in vecs)
    gens = []
    for v in vecs:
        el = u.devectorize(v)
        if el not in gens:
            gens.append(el)
    cert = DescribedSet.grid(u, u.unit, gens)

    powers = [one]

    def power(n):
        while len(powers) <= n:
            powers.append(cauchy_product(powers[-1], eps))
        return powers[n]

    def oracle(gamma):
        w = weight(wts, tuple(u.vectorize(gamma)))
        nmax = int(w / m0) if w >= 0 else 0
        total = field.zero
        for n in range(nmax + 1):
            total = total + field.of(coeffs(n)) * power(n).coeff(gamma)
        return total

    return LazySeries(field, u, eps.bornology, oracle, cert, check_certificate=False)


def _positive_part_atoms(u, cert):
    """Atoms covering cert's elements that are strictly above the unit, each
    certifying positivity on its own.  Elements <= unit are dropped; they are
    only sound to drop when the caller has verified their coefficients are
    zero (leading-term normalization does)."""
    uk = u.key(u.unit)
    out = []
    for a in _grid_atoms(u, cert):
        if isinstance(a, FiniteAtom):
            keep = [e for e in a.elements() if u.key(e) > uk]
            if keep:
                out.append(FiniteAtom(u, keep))
        elif isinstance(a, GridAtom):
            if u.key(a.base) > uk:
                out.append(a)
                continue
            low = DescribedSet(u, [a]).elements_upto(u.unit)
            if low is None:
                raise HahnError(
                    "cannot split certificate atom %s at the unit" % a.format()
                )
            for p in low:
                for g in a.generators:
                    q = u.op(p, g)
                    if u.key(q) > uk:
                        out.append(GridAtom(u, q, a.generators))
        else:
            raise HahnError("certificate atom %r is not grid-certified" % a)
    return _dedupe_atoms(out)


def monomial_shift(f, shift, scalar=1):
    """scalar * x^shift * f."""
    u, field = f.universe, f.field
    shift = u.check(shift)
    c = field.of(scalar)
    if isinstance(f, FiniteSeries):
        return FiniteSeries(
            field, u, f.bornology, {u.op(shift, g): c * v for g, v in f.terms.items()}
        )
    cert = f.certificate.translate(shift)

    def oracle(gamma):
        a = _try_sub(u, gamma, shift)
        if a is None:
            return field.zero
        return c * f.coeff(a)

    return LazySeries(field, u, f.bornology, oracle, cert, check_certificate=False)


def invert_unit(f, window=32):
    """Multiplicative inverse: write f = c * x^g0 * (1 - eps) with
    Supp(eps) > 1 and return c^-1 * x^-g0 * sum eps^n."""
    _check_hahn(f)
    u, field = f.universe, f.field
    if not u.is_group:
        raise HahnError("inversion needs a group universe")
    lt = leading_term(f, window)
    if lt is None:
        raise HahnError("zero to window %d; cannot invert" % window)
    g0, c = lt
    cinv = field.one / c
    # normalized = c^-1 x^-g0 f has leading term 1 at the unit
    normalized = monomial_shift(f, u.inv(g0), cinv)
    if isinstance(normalized, FiniteSeries):
        terms = dict(normalized.terms)
        terms.pop(u.unit, None)
        uk = u.key(u.unit)
        for g in terms:
            if not u.key(g) > uk:
                raise HahnError("support element %s below the leading term" % u.format(g))
        eps = FiniteSeries(field, u, f.bornology, {g: -v for g, v in terms.items()})
    else:
        atoms = _positive_part_atoms(u, normalized.certificate)
        cert = DescribedSet(u, atoms)

        def oracle(gamma, _norm=normalized):
            return -_norm.coeff(gamma)

        eps = LazySeries(field, u, f.bornology, oracle, cert, check_certificate=False)
    ns = neumann_sum(eps)
    return monomial_shift(ns, u.inv(g0), cinv)


def truncate(f, bound):
    """Finite series equal to f on monomials <= bound."""
    _check_hahn(f)
    u = f.universe
    els = f.certificate.elements_upto(bound)
    if els is None:
        raise HahnError(
            "certificate %s cannot be enumerated up to %s"
            % (f.certificate.format(), u.format(bound))
        )
    return FiniteSeries(f.field, u, f.bornology, {g: f.coeff(g) for g in els})
