"""The dual side of the group: reflection length, the noncrossing partition
lattice NC(W, c), reduced T-words and their commutation classes, the heap
order on reflections, and the positive cluster complex.

Reflections are referred to by their positive-root index throughout; a
T-chain is the tuple of root indices of its reflection word.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

from . import linalg
from .cambrian import lex_least_word, sorting_word
from .errors import InvalidInputError


def reflection_length(system, w):
    """Absolute length: the rank of (w - 1) acting on V."""
    cached = system._lT_cache.get(w)
    if cached is not None:
        return cached
    mat = system.matrix_of(w)
    one = system.field.one()
    for i in range(system.rank):
        mat[i][i] = mat[i][i] - one
    val = linalg.mat_rank(system.field, mat)
    system._lT_cache[w] = val
    return val


def nc_membership(system, pi, c):
    """True iff pi lies in the interval [e, c] of absolute order."""
    r = reflection_length(system, c)
    return (reflection_length(system, pi)
            + reflection_length(system, system.multiply(system.inverse[pi], c)) == r)


def noncrossing_partitions(system, c):
    """All elements of NC(W, c), cached per Coxeter element."""
    key = ("nc", c)
    if key not in system._caches:
        system._caches[key] = frozenset(
            w for w in range(system.order) if nc_membership(system, w, c))
    return system._caches[key]


def enumerate_twords(system, c):
    """All reduced T-words for c, as tuples of root indices, in lexicographic
    order of reflection indices."""
    key = ("twords", c)
    if key in system._caches:
        return system._caches[key]
    if not system.is_standard_coxeter(c):
        raise InvalidInputError("Coxeter element must be standard")
    nc = noncrossing_partitions(system, c)
    r = system.rank
    n = system.num_positive_roots
    refl = system.reflection
    out = []

    def extend(pi, depth, prefix):
        if depth == r:
            assert pi == c
            out.append(tuple(prefix))
            return
        for i in range(n):
            x = system.multiply(pi, refl[i])
            if x in nc and reflection_length(system, x) == depth + 1:
                prefix.append(i)
                extend(x, depth + 1, prefix)
                prefix.pop()

    extend(0, 0, [])
    result = tuple(out)
    system._caches[key] = result
    return result


def chain_elements(system, chain):
    """Prefix products pi_0 = e, pi_1, ..., pi_r of a T-chain."""
    out = [0]
    for i in chain:
        out.append(system.multiply(out[-1], system.reflection[i]))
    return out


class HeapOrder:
    """The partial order on reflections read off from the inversion sequence
    of the sorting word of the long element: position i precedes position j
    when i < j and the letters do not commute, closed transitively."""

    def __init__(self, system, c):
        word = sorting_word(system, system.w0, lex_least_word(system, c))
        letters = [s for s, _ in word]
        seq = system.inversion_sequence(tuple(letters))
        n = system.num_positive_roots
        assert len(seq) == n and len(set(seq)) == n
        self.sequence = seq
        self.position = {t: p for p, t in enumerate(seq)}
        refl = [system.reflection[i] for i in seq]
        commutes = [[system.multiply(a, b) == system.multiply(b, a)
                     for b in refl] for a in refl]
        reach = [0] * n
        for i in range(n - 1, -1, -1):
            bits = 1 << i
            for j in range(i + 1, n):
                if not commutes[i][j]:
                    bits |= reach[j]
            reach[i] = bits
        self._reach = reach

    def leq(self, t, t_prime):
        """t precedes t_prime (root indices); reflexive."""
        return bool(self._reach[self.position[t]] >> self.position[t_prime] & 1)

    def covers(self):
        n = len(self.sequence)
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                if not (self._reach[i] >> j & 1):
                    continue
                if any((self._reach[i] >> k & 1) and (self._reach[k] >> j & 1)
                       for k in range(i + 1, j)):
                    continue
                out.append((self.sequence[i], self.sequence[j]))
        return out

    def comparable_pairs(self):
        n = len(self.sequence)
        return [(self.sequence[i], self.sequence[j])
                for i in range(n) for j in range(i + 1, n)
                if self._reach[i] >> j & 1]

    def is_increasing(self, chain):
        return not any(self.leq(chain[j], chain[i])
                       for i in range(len(chain)) for j in range(i + 1, len(chain)))

    def is_decreasing(self, chain):
        return not any(self.leq(chain[i], chain[j])
                       for i in range(len(chain)) for j in range(i + 1, len(chain)))


def heap_order(system, c):
    key = ("heap", c)
    if key not in system._caches:
        system._caches[key] = HeapOrder(system, c)
    return system._caches[key]


class CommClass:
    """A commutation class of reduced T-words, keyed by its reflection set."""

    __slots__ = ("reflections", "representative", "increasing", "decreasing")

    def __init__(self, reflections, representative, increasing, decreasing):
        self.reflections = reflections
        self.representative = representative
        self.increasing = increasing
        self.decreasing = decreasing

    def __eq__(self, other):
        return isinstance(other, CommClass) and self.reflections == other.reflections

    def __hash__(self):
        return hash(self.reflections)

    def __repr__(self):
        flag = "inc" if self.increasing else ("dec" if self.decreasing else "mid")
        return f"CommClass({sorted(self.reflections)}, {flag})"


def classify_class(system, c, chain):
    """The commutation class of a reduced T-word, with heap flags."""
    heap = heap_order(system, c)
    roots = [system.roots[i] for i in chain]
    if linalg.mat_rank(system.field, roots) != len(chain):
        raise InvalidInputError("chain roots are not linearly independent")
    return CommClass(frozenset(chain), tuple(chain),
                     heap.is_increasing(chain), heap.is_decreasing(chain))


def commutation_classes(system, c):
    """All commutation classes of reduced T-words for c."""
    key = ("classes", c)
    if key in system._caches:
        return system._caches[key]
    by_set = {}
    for chain in enumerate_twords(system, c):
        by_set.setdefault(frozenset(chain), chain)
    out = tuple(classify_class(system, c, chain)
                for _, chain in sorted(by_set.items(), key=lambda kv: kv[1]))
    system._caches[key] = out
    return out


def cat_plus(system):
    """The positive Catalan number prod (h - 1 + e_i) / d_i, per component."""
    if not system.is_irreducible:
        warnings.warn("positive Catalan number computed per irreducible factor")
    total = Fraction(1)
    for degs, h in zip(system.component_degrees, system.component_h):
        for d in degs:
            total *= Fraction(h - 1 + (d - 1), d)
    if total.denominator != 1:
        raise InvalidInputError("positive Catalan number is not an integer")
    return int(total)


def sorted_position_word(system, c):
    """The inversion sequence (a_1, ..., a_N) of the sorting word of the
    long element for c^(-1); every reflection appears exactly once."""
    cinv = system.inverse[c]
    word = sorting_word(system, system.w0, lex_least_word(system, cinv))
    return system.inversion_sequence(tuple(s for s, _ in word))


def positive_cluster_complex(system, c):
    """Maximal faces of the positive cluster complex, as 1-based position
    sets in the inversion sequence of the long element's c^(-1)-sorting word.

    The facets are the position sets of the heap-decreasing reduced T-words;
    flagness (facets = maximal cliques of the 1-skeleton) is verified.
    """
    seq = sorted_position_word(system, c)
    pos = {t: i + 1 for i, t in enumerate(seq)}
    faces = []
    for cls in commutation_classes(system, c):
        if cls.decreasing:
            faces.append(frozenset(pos[t] for t in cls.reflections))
    faces_set = set(faces)
    vertices = sorted(set().union(*faces)) if faces else []
    edges = {frozenset((a, b)) for f in faces for a in f for b in f if a < b}
    cliques = _maximal_cliques(vertices, edges)
    if set(cliques) != faces_set:
        raise InvalidInputError("positive cluster complex is not flag")
    return tuple(sorted(tuple(sorted(f)) for f in faces_set))


def _maximal_cliques(vertices, edges):
    adj = {v: set() for v in vertices}
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    out = []

    def bron_kerbosch(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda v: len(adj[v] & p))
        for v in sorted(p - adj[pivot]):
            bron_kerbosch(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    if vertices:
        bron_kerbosch(set(), set(vertices), set())
    return out


def rank2_parabolic(system, t_roots):
    """Reflections of the rank-2 parabolic closure of the given reflections,
    ordered so that the first and last are the canonical generators and all
    roots lie in the nonnegative span of the extreme pair.
    """
    gens = [system.reflection[i] for i in t_roots]
    seen = {0}
    queue = [0]
    while queue:
        w = queue.pop()
        for g in gens:
            v = system.multiply(w, g)
            if v not in seen:
                seen.add(v)
                queue.append(v)
    refl = sorted(system.root_of_reflection[w] for w in seen
                  if w in system.root_of_reflection)
    if len(refl) == 1:
        return refl
    # exact planar coordinates in a basis of two of the roots
    basis = _independent_pair(system, refl)
    coords = {}
    for i in refl:
        coords[i] = _plane_coordinates(system, basis, i)
    for a in refl:
        for b in refl:
            if a == b:
                continue
            if all(_in_plane_cone(coords[a], coords[b], coords[i])
                   for i in refl):
                ordered = sorted(
                    refl, key=lambda i: _slope_key(coords[a], coords[b], coords[i]))
                if ordered[0] != a:
                    ordered.reverse()
                assert ordered[0] == a and ordered[-1] == b
                return ordered
    raise InvalidInputError("rank-2 root set has no extreme pair; bug")


def _independent_pair(system, refl):
    first = refl[0]
    for j in refl[1:]:
        if linalg.mat_rank(system.field, [system.roots[first], system.roots[j]]) == 2:
            return (first, j)
    raise InvalidInputError("reflections span a line, not a plane")


def _plane_coordinates(system, basis, i):
    """Solve beta_i = x * beta_a + y * beta_b exactly."""
    a, b = basis
    ra, rb, ri = system.roots[a], system.roots[b], system.roots[i]
    field = system.field
    for p in range(system.rank):
        for q in range(p + 1, system.rank):
            det = ra[p] * rb[q] - ra[q] * rb[p]
            if det.is_zero():
                continue
            x = (ri[p] * rb[q] - ri[q] * rb[p]) / det
            y = (ra[p] * ri[q] - ra[q] * ri[p]) / det
            if all((x * ra[k] + y * rb[k] - ri[k]).is_zero()
                   for k in range(system.rank)):
                return (x, y)
    raise InvalidInputError("root does not lie in the plane of the basis")


def _in_plane_cone(ca, cb, ci):
    """Is root i in the nonnegative span of roots a and b (2D coordinates)?"""
    det = ca[0] * cb[1] - ca[1] * cb[0]
    if det.is_zero():
        return False
    x = (ci[0] * cb[1] - ci[1] * cb[0]) / det
    y = (ca[0] * ci[1] - ca[1] * ci[0]) / det
    return x.sign() >= 0 and y.sign() >= 0


def _slope_key(ca, cb, ci):
    """Sort key rotating from ray a (key 0) toward ray b, exact.

    Distinct positive roots are never proportional, so at most one root sits
    on the b-ray (x = 0) and the constant tail key is safe.
    """
    det = ca[0] * cb[1] - ca[1] * cb[0]
    x = (ci[0] * cb[1] - ci[1] * cb[0]) / det
    y = (ca[0] * ci[1] - ca[1] * ci[0]) / det
    if x.sign() == 0:
        return (1, _ScalarKey(x))
    return (0, _ScalarKey(y / x))


class _ScalarKey:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return (self.value - other.value).sign() < 0

    def __eq__(self, other):
        return (self.value - other.value).is_zero()


def hurwitz_move(system, chain, i):
    """(t_i, t_(i+1)) -> (t_(i+1), t_(i+1) t_i t_(i+1)) at position i."""
    a, b = chain[i], chain[i + 1]
    tb = system.reflection[b]
    conj = system.multiply(system.multiply(tb, system.reflection[a]), tb)
    new = list(chain)
    new[i], new[i + 1] = b, system.root_of_reflection[conj]
    return tuple(new)
