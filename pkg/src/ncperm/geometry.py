"""Exact geometry: base points, the distinguished cone vertices delta_t, cone
containment, simplex volumes, an independent pulling-triangulation volume
oracle for the permutahedron, the totally-stable slope search, and the
regular-triangulation certificate.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import absolute, linalg, lp
from .cambrian import lex_least_word, sorting_word
from .errors import InternalConsistencyError, InvalidInputError


# -- points of V ------------------------------------------------------------


def base_point(system, mode="canonical", seed=None):
    """A certified interior point of the base chamber.

    Canonical mode: the point with <beta_s, y> = 1 for every simple s.
    Random mode: positive weight combinations with denominators <= 64.
    """
    if mode == "canonical":
        coeffs = [Fraction(1)] * system.rank
    elif mode == "random":
        rng = random.Random(seed)
        coeffs = []
        for _ in range(system.rank):
            den = rng.randint(1, 64)
            coeffs.append(Fraction(rng.randint(1, 2 * den), den))
    else:
        raise InvalidInputError(f"unknown base point mode {mode!r}")
    zero = system.field.zero()
    y = tuple(sum((system.weights[s][k] * coeffs[s] for s in range(system.rank)),
                  zero) for k in range(system.rank))
    for i in range(system.num_positive_roots):
        if system.pair_root(i, y).sign() <= 0:
            raise InternalConsistencyError("base point is not interior")
    return y


def vertex_points(system, y):
    """All permutahedron vertices w(y), indexed by element id."""
    key = ("verts", y)
    if key in system._caches:
        return system._caches[key]
    verts = [None] * system.order
    verts[0] = y
    for w in sorted(range(system.order), key=lambda x: system.length[x]):
        if w == 0:
            continue
        s = system.descents(w, "left")[0]
        verts[w] = system.vec_apply_simple(s, verts[system.lmult[w][s]])
    verts = tuple(verts)
    system._caches[key] = verts
    return verts


# -- delta vertices and cones -------------------------------------------------


def delta_vertices(system, c):
    """The map t -> delta_t = (1 - c^(-1))^(-1) beta_t^vee, exact.

    Also rebuilt along the sorting word of the long element for c^(-1)
    (delta_(a_i) = s_1 ... s_(i-1) applied to the weight of s_i) and checked
    to agree entry for entry.
    """
    key = ("delta", c)
    if key in system._caches:
        return system._caches[key]
    if not system.is_standard_coxeter(c):
        raise InvalidInputError("Coxeter element must be standard")
    cinv = system.inverse[c]
    mat = system.matrix_of(cinv)
    one = system.field.one()
    m = [[(one if i == j else system.field.zero()) - mat[i][j]
          for j in range(system.rank)] for i in range(system.rank)]
    minv = linalg.mat_inverse(system.field, m)
    delta = {t: linalg.mat_vec(system.field, minv, system.coroots[t])
             for t in range(system.num_positive_roots)}
    # cross-check against the sorting-word construction
    word = [s for s, _ in sorting_word(system, system.w0,
                                       lex_least_word(system, cinv))]
    seq = system.inversion_sequence(tuple(word))
    prefix = 0
    for i, s in enumerate(word):
        expected = system.act(prefix, system.weights[s])
        if expected != delta[seq[i]]:
            raise InternalConsistencyError(
                "delta vertex identity (1 - c^(-1)) delta = coroot failed")
        prefix = system.rmult[prefix][s]
    system._caches[key] = delta
    return delta


class Cone:
    """A simplicial cone spanned by named generators."""

    __slots__ = ("reflections", "generators")

    def __init__(self, generators, reflections=None):
        self.generators = tuple(generators)
        self.reflections = None if reflections is None else tuple(reflections)

    def __repr__(self):
        tag = list(self.reflections) if self.reflections is not None else "chamber"
        return f"Cone({tag})"


def cone_basis_inverse(system, cone):
    """Inverse of the generator matrix; the cone must be full and simplicial."""
    r = system.rank
    if len(cone.generators) != r:
        raise InvalidInputError("outer cone needs exactly rank generators")
    cols = [[cone.generators[j][i] for j in range(r)] for i in range(r)]
    try:
        return linalg.mat_inverse(system.field, cols)
    except InvalidInputError:
        raise InvalidInputError("outer cone generators are linearly dependent")


def cone_contains(system, inner, outer, outer_inverse=None):
    """inner is contained in outer iff every generator of inner solves as a
    nonnegative combination of outer's independent generators."""
    inv = cone_basis_inverse(system, outer) if outer_inverse is None else outer_inverse
    for g in inner.generators:
        coords = linalg.mat_vec(system.field, inv, g)
        if any(x.sign() < 0 for x in coords):
            return False
    return True


def chamber_cone(system, u):
    """The closed chamber u^(-1) B as the cone on the moved weights."""
    uinv = system.inverse[u]
    return Cone(tuple(system.act(uinv, system.weights[s])
                      for s in range(system.rank)))


def delta_cone(system, c, reflections):
    delta = delta_vertices(system, c)
    refl = tuple(sorted(reflections))
    return Cone(tuple(delta[t] for t in refl), refl)


def halfspace_cone_rays(system, roots):
    """Extreme rays of an intersection of exactly rank halfspaces
    <beta_t, x> >= 0: ray i solves <beta_(t_j), x> = delta_(i j)."""
    r = system.rank
    if len(roots) != r:
        raise InvalidInputError("need exactly rank halfspaces")
    mat = [list(system._pair_rows[t]) for t in roots]
    inv = linalg.mat_inverse(system.field, mat)
    return [tuple(inv[k][i] for k in range(r)) for i in range(r)]


# -- volumes -----------------------------------------------------------------


def simplex_volume(system, vertices):
    """Unnormalized volume |det(v_1 - v_0, ..., v_r - v_0)| (the factor r!
    is dropped consistently everywhere)."""
    v0 = vertices[0]
    rows = [[v[k] - v0[k] for k in range(system.rank)] for v in vertices[1:]]
    det = linalg.mat_det(system.field, rows)
    return -det if det.sign() < 0 else det


def _coset_minrep(system, w, gens):
    changed = True
    while changed:
        changed = False
        for s in gens:
            if system.right_inv_bits[w] >> s & 1:
                w = system.rmult[w][s]
                changed = True
    return w


def _coset_elements(system, w, gens):
    seen = {w}
    queue = [w]
    while queue:
        x = queue.pop()
        for s in gens:
            y = system.rmult[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def pulling_simplices(system, pull_choice=0):
    """A triangulation of the permutahedron by recursive pulling over the
    coset face lattice, independent of the chain machinery.

    Returns vertex-id tuples.  pull_choice rotates which vertex of each face
    is pulled, exercising well-definedness of the total volume.
    """
    key = ("pulling", pull_choice)
    if key in system._caches:
        return system._caches[key]
    memo = {}

    def rec(minrep, gens):
        state = (minrep, gens)
        if state in memo:
            return memo[state]
        if not gens:
            out = ((minrep,),)
            memo[state] = out
            return out
        elems = _coset_elements(system, minrep, gens)
        pull = elems[pull_choice % len(elems)]
        out = []
        for s in gens:
            sub = tuple(g for g in gens if g != s)
            facets = sorted({_coset_minrep(system, x, sub) for x in elems})
            for m2 in facets:
                members = _coset_elements(system, m2, sub)
                if pull in members:
                    continue
                for simplex in rec(m2, sub):
                    out.append((pull,) + simplex)
        out = tuple(out)
        memo[state] = out
        return out

    result = rec(0, tuple(range(system.rank)))
    system._caches[key] = result
    return result


def permutahedron_volume_oracle(system, y, pull_choice=0):
    """Total unnormalized volume of the permutahedron at y, fully independent
    of the chain triangulation."""
    verts = vertex_points(system, y)
    total = system.field.zero()
    for simplex in pulling_simplices(system, pull_choice):
        total = total + simplex_volume(system, [verts[w] for w in simplex])
    return total


# -- total stability and regularity --------------------------------------------


def pairing_with_root_functional(system, gamma, vec):
    """<gamma, x> for gamma given by rational coordinates in the root basis."""
    acc = system.field.zero()
    for i, g in enumerate(gamma):
        if g:
            row_val = system.field.zero()
            for j, c in enumerate(vec):
                if not c.is_zero():
                    row_val = row_val + system.pairing[i][j] * c
            acc = acc + row_val * g
    return acc


def slope_denominators(system, y):
    return [system.pair_root(t, y) for t in range(system.num_positive_roots)]


def find_stability(system, c, attempts=32, seed=0):
    """Search for (y*, gamma*) whose slope function is strictly increasing
    along the heap order: mu(beta_t) < mu(beta_t') whenever t precedes t'.

    Simply-laced groups only (rational root data).  Returns (y, gamma) with
    gamma in root-basis coordinates, or None when every attempt fails.
    """
    if not system.simply_laced:
        raise InvalidInputError("stability search requires a simply-laced group")
    heap = absolute.heap_order(system, c)
    covers = heap.covers()
    r = system.rank
    cols = {}
    for t in range(system.num_positive_roots):
        cols[t] = [system.pair_root(i, system.coroots[t]).as_fraction()
                   for i in range(r)]
    for attempt in range(attempts):
        y = base_point(system) if attempt == 0 else \
            base_point(system, "random", seed=seed + attempt)
        y_val = {t: system.pair_root(t, y).as_fraction()
                 for t in range(system.num_positive_roots)}
        rows = []
        for t, t2 in covers:
            rows.append([cols[t][i] * y_val[t2] - cols[t2][i] * y_val[t]
                         for i in range(r)])
        gamma = lp.linear_feasibility(rows, [Fraction(-1)] * len(rows))
        if gamma is None:
            continue
        ok = True
        for t, t2 in heap.comparable_pairs():
            lhs = sum(g * cols[t][i] for i, g in enumerate(gamma)) * y_val[t2]
            rhs = sum(g * cols[t2][i] for i, g in enumerate(gamma)) * y_val[t]
            if not lhs < rhs:
                ok = False
                break
        if ok:
            return y, tuple(gamma)
    return None


def height_function(system, y, gamma, eps):
    """ht(w y) = <gamma, w^(-1) y> - eps * 2^length(w), as field scalars."""
    verts = vertex_points(system, y)
    eps = Fraction(eps)
    out = []
    for w in range(system.order):
        base = pairing_with_root_functional(system, gamma, verts[system.inverse[w]])
        out.append(base - system.field.rational(eps * 2 ** system.length[w]))
    return out


def certify_regular(system, cells, y, gamma, eps):
    """Check that every cell lifts to a lower facet: solve the hyperplane
    through the lifted cell vertices and require every other lifted vertex
    strictly above it.

    cells: sequence of vertex-element-id tuples.  Returns a dict with either
    a full certificate or the first violating (cell index, element).
    """
    if system.field.degree == 1:
        return _certify_regular_rational(system, cells, y, gamma, eps)
    verts = vertex_points(system, y)
    heights = height_function(system, y, gamma, eps)
    r = system.rank
    hyperplanes = []
    for idx, cell in enumerate(cells):
        rows = [list(verts[w]) + [heights[w], -system.field.one()] for w in cell]
        normal = linalg.nullspace_vector(system.field, rows)
        if normal is None:
            raise InternalConsistencyError("lifted cell vertices span everything")
        b = normal[r]
        if b.is_zero():
            raise InternalConsistencyError("degenerate lifted hyperplane")
        if b.sign() < 0:
            normal = tuple(-x for x in normal)
        lam, b, xi = normal[:r], normal[r], normal[r + 1]
        members = set(cell)
        for w in range(system.order):
            if w in members:
                continue
            val = sum((lam[k] * verts[w][k] for k in range(r)),
                      b * heights[w]) - xi
            if val.sign() <= 0:
                return {"ok": False, "epsilon": Fraction(eps),
                        "violation": {"cell": idx, "element": w}}
        hyperplanes.append(normal)
    return {"ok": True, "epsilon": Fraction(eps), "hyperplanes": hyperplanes}


def _certify_regular_rational(system, cells, y, gamma, eps):
    """Integerized fast path over the rationals: clear denominators globally
    (sign tests are invariant under the per-axis scalings) and run the
    vertex sweep with machine-integer dot products."""
    from math import lcm

    r = system.rank
    verts = vertex_points(system, y)
    heights = height_function(system, y, gamma, eps)
    fverts = [tuple(x.as_fraction() for x in v) for v in verts]
    fheights = [h.as_fraction() for h in heights]
    dv = 1
    for v in fverts:
        for x in v:
            dv = lcm(dv, x.denominator)
    dh = 1
    for h in fheights:
        dh = lcm(dh, h.denominator)
    iverts = [tuple(int(x * dv) for x in v) for v in fverts]
    iheights = [int(h * dh) for h in fheights]

    hyperplanes = []
    order = system.order
    for idx, cell in enumerate(cells):
        rows = [[Fraction(c) for c in iverts[w]] + [Fraction(iheights[w]),
                                                    Fraction(-1)]
                for w in cell]
        normal = _nullspace_fractions(rows)
        if normal is None:
            raise InternalConsistencyError("lifted cell vertices span everything")
        scale = 1
        for x in normal:
            scale = lcm(scale, x.denominator)
        inormal = [int(x * scale) for x in normal]
        if inormal[r] == 0:
            raise InternalConsistencyError("degenerate lifted hyperplane")
        if inormal[r] < 0:
            inormal = [-x for x in inormal]
        lam, b, xi = inormal[:r], inormal[r], inormal[r + 1]
        members = set(cell)
        for w in range(order):
            if w in members:
                continue
            vw = iverts[w]
            val = b * iheights[w] - xi
            for k in range(r):
                val += lam[k] * vw[k]
            if val <= 0:
                return {"ok": False, "epsilon": Fraction(eps),
                        "violation": {"cell": idx, "element": w}}
        hyperplanes.append(tuple(inormal))
    return {"ok": True, "epsilon": Fraction(eps), "hyperplanes": hyperplanes}


def _nullspace_fractions(rows):
    """Kernel vector of a small Fraction matrix with nullity >= 1."""
    m, n = len(rows), len(rows[0])
    rows = [list(r) for r in rows]
    pivots = []
    rank_row = 0
    for col in range(n):
        piv = next((i for i in range(rank_row, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank_row], rows[piv] = rows[piv], rows[rank_row]
        inv = 1 / rows[rank_row][col]
        rows[rank_row] = [x * inv for x in rows[rank_row]]
        for i in range(m):
            if i != rank_row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank_row])]
        pivots.append(col)
        rank_row += 1
    free = [j for j in range(n) if j not in pivots]
    if not free:
        return None
    j0 = free[0]
    vec = [Fraction(0)] * n
    vec[j0] = Fraction(1)
    for i, col in enumerate(pivots):
        vec[col] = -rows[i][j0]
    return vec


def regular_certificate(system, cells, y, gamma,
                        eps_start=Fraction(1, 1024), max_halvings=60):
    """Run the halving schedule; the slope criterion guarantees success for
    sufficiently small eps, so failure after the schedule is reported, not
    raised."""
    eps = Fraction(eps_start)
    last = None
    for _ in range(max_halvings + 1):
        result = certify_regular(system, cells, y, gamma, eps)
        if result["ok"]:
            return result
        last = result
        eps /= 2
    return last
