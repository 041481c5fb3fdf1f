"""Finite Coxeter groups in their reflection representation.

A group is built once, breadth-first, as a table of signed permutations of
the positive roots; afterwards every element is an integer index and all
word/order queries are table lookups.  Roots live in V* (coordinates in the
simple-root basis), coroots and all points live in V (coordinates in the
simple-coroot basis), and the pairing matrix A[i][j] = <beta_i, beta_j^vee>
carries the Cartan data exactly over the scalar field.
"""

from __future__ import annotations

import json
import hashlib
import os
import warnings
from fractions import Fraction

from .errors import GroupTooLargeError, InvalidInputError
from .numfield import FieldSpec, RATIONALS, field_make
from . import linalg

CACHE_FORMAT_VERSION = 1

_ROOT_CAP = 20000


def _named_coxeter_matrix(label):
    label = label.strip()
    kind = label[0].upper()
    if kind == "I":
        inner = label[2:].strip("()")
        m = int(inner)
        if m < 2:
            raise InvalidInputError("I2(m) needs m >= 2")
        return [[1, m], [m, 1]]
    try:
        n = int(label[1:])
    except ValueError:
        raise InvalidInputError(f"cannot parse type label {label!r}") from None
    if n < 1:
        raise InvalidInputError(f"rank must be positive in {label!r}")

    def path(bonds):
        mat = [[2] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = 1
        for i, m in enumerate(bonds):
            mat[i][i + 1] = mat[i + 1][i] = m
        return mat

    if kind == "A":
        return path([3] * (n - 1))
    if kind in ("B", "C"):
        if n < 2:
            raise InvalidInputError("type B needs rank >= 2")
        return path([3] * (n - 2) + [4])
    if kind == "D":
        if n < 3:
            raise InvalidInputError("type D needs rank >= 3")
        mat = path([3] * (n - 2) + [2])
        mat[n - 3][n - 1] = mat[n - 1][n - 3] = 3
        mat[n - 2][n - 1] = mat[n - 1][n - 2] = 2
        return mat
    if kind == "E":
        if n not in (6, 7, 8):
            raise InvalidInputError("type E needs rank 6, 7 or 8")
        # chain 0-2-3-4-...-(n-1) with node 1 attached to node 3
        mat = [[2] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = 1
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        for a, b in edges:
            mat[a][b] = mat[b][a] = 3
        return mat
    if kind == "F":
        if n != 4:
            raise InvalidInputError("type F needs rank 4")
        return path([3, 4, 3])
    if kind == "G":
        if n != 2:
            raise InvalidInputError("type G needs rank 2")
        return path([6])
    if kind == "H":
        if n not in (2, 3, 4):
            raise InvalidInputError("type H needs rank 2, 3 or 4")
        return path([5] + [3] * (n - 2))
    raise InvalidInputError(f"unknown type label {label!r}")


def _validate_matrix(mat):
    r = len(mat)
    for i in range(r):
        if len(mat[i]) != r:
            raise InvalidInputError("Coxeter matrix must be square")
        if mat[i][i] != 1:
            raise InvalidInputError("Coxeter matrix needs m(s,s) = 1")
        for j in range(r):
            if mat[i][j] != mat[j][i]:
                raise InvalidInputError("Coxeter matrix must be symmetric")
            if i != j and (not isinstance(mat[i][j], int) or mat[i][j] < 2):
                raise InvalidInputError("off-diagonal entries must be integers >= 2")
    # a cycle in the Coxeter graph forces an infinite group: reject up front
    # (this also guarantees the crystallographic edge orientations below are
    # consistent, since the graph is a forest)
    seen, parent = set(), {}
    for start in range(r):
        if start in seen:
            continue
        stack = [(start, -1)]
        while stack:
            node, par = stack.pop()
            if node in seen:
                raise GroupTooLargeError("group too large / not finite (cyclic diagram)")
            seen.add(node)
            parent[node] = par
            for nxt in range(r):
                if nxt != node and nxt != par and mat[node][nxt] >= 3:
                    stack.append((nxt, node))
    return r


def _pairing_matrix(mat, field):
    """A[i][j] = <beta_i, beta_j^vee> for the chosen root normalization.

    Edges of order 3 are symmetric (-1, -1); orders 4 and 6 use the
    crystallographic splits (-1, -2) and (-1, -3) so that types B, C, F and
    G stay rational; all other orders get the symmetric value -2cos(pi/m).
    """
    r = len(mat)
    A = [[field.zero()] * r for _ in range(r)]
    for i in range(r):
        A[i][i] = field.rational(2)
    for i in range(r):
        for j in range(i + 1, r):
            m = mat[i][j]
            if m == 2:
                continue
            if m == 3:
                A[i][j] = A[j][i] = field.rational(-1)
            elif m == 4:
                A[i][j], A[j][i] = field.rational(-1), field.rational(-2)
            elif m == 6:
                A[i][j], A[j][i] = field.rational(-1), field.rational(-3)
            else:
                c = -field.two_cos(m)
                A[i][j] = A[j][i] = c
    return A


class CoxeterSystem:
    """Immutable tables for one finite Coxeter group.

    Elements are integers indexing the breadth-first element table; positive
    roots are integers indexing the root table.  All derived caches (Bruhat
    closure, reflection multiplication) are built lazily and only append.
    """

    def __init__(self, coxeter_matrix, type_label, field, size_cap=2_000_000):
        self.coxeter_matrix = tuple(tuple(row) for row in coxeter_matrix)
        self.type_label = type_label
        self.field = field
        self.rank = len(coxeter_matrix)
        self.size_cap = size_cap
        self.pairing = _pairing_matrix(self.coxeter_matrix, field)
        self._build_roots()
        self._build_elements()
        self._build_structure()
        self._refl_mult = None
        self._down_bits = None
        self._lT_cache = {}
        self._caches = {}

    # -- construction --------------------------------------------------------

    def _root_apply_simple(self, coords, s):
        pairing = self.pairing
        val = None
        for k, c in enumerate(coords):
            if not c.is_zero():
                term = c * pairing[k][s]
                val = term if val is None else val + term
        if val is None:
            val = self.field.zero()
        new = list(coords)
        new[s] = new[s] - val
        return tuple(new)

    def vec_apply_simple(self, s, vec):
        """Action of the simple reflection s on a point of V (coroot coords)."""
        pairing = self.pairing
        val = self.field.zero()
        for j, c in enumerate(vec):
            if not c.is_zero():
                val = val + pairing[s][j] * c
        new = list(vec)
        new[s] = new[s] - val
        return tuple(new)

    def _build_roots(self):
        r = self.rank
        zero, one = self.field.zero(), self.field.one()
        roots = []
        root_index = {}
        coroots = []
        for s in range(r):
            coords = tuple(one if k == s else zero for k in range(r))
            roots.append(coords)
            coroots.append(coords)
            root_index[coords] = s
        queue = list(range(r))
        while queue:
            i = queue.pop(0)
            for s in range(r):
                new = self._root_apply_simple(roots[i], s)
                signs = {c.sign() for c in new}
                if -1 in signs and 1 in signs:
                    raise InvalidInputError("root with mixed signs; invalid realization")
                if -1 in signs:
                    continue
                if new not in root_index:
                    if len(roots) >= _ROOT_CAP:
                        raise GroupTooLargeError("group too large / not finite")
                    root_index[new] = len(roots)
                    roots.append(new)
                    coroots.append(self.vec_apply_simple(s, coroots[i]))
                    queue.append(len(roots) - 1)
        self.roots = tuple(roots)
        self.coroots = tuple(coroots)
        self.root_index = root_index
        self.num_positive_roots = len(roots)
        # pairing rows: pair_root(i, x) = sum_k row[i][k] * x[k]
        pairing = self.pairing
        rows = []
        for b in roots:
            rows.append(tuple(
                sum((b[k] * pairing[k][j] for k in range(r) if not b[k].is_zero()),
                    self.field.zero())
                for j in range(r)))
        self._pair_rows = tuple(rows)

    def pair_root(self, i, vec):
        """Exact pairing <beta_i, x> for x in V."""
        row = self._pair_rows[i]
        acc = self.field.zero()
        for j, c in enumerate(vec):
            if not c.is_zero():
                acc = acc + row[j] * c
        return acc

    def _simple_perms(self):
        n = self.num_positive_roots
        perms = []
        for s in range(self.rank):
            perm = []
            for i in range(n):
                new = self._root_apply_simple(self.roots[i], s)
                if new in self.root_index:
                    perm.append(self.root_index[new] + 1)
                else:
                    neg = tuple(-c for c in new)
                    perm.append(-(self.root_index[neg] + 1))
            perms.append(tuple(perm))
        return perms

    def _build_elements(self):
        n = self.num_positive_roots
        r = self.rank
        simple_perms = self._simple_perms()
        identity = tuple(range(1, n + 1))
        perms = [identity]
        perm_id = {identity: 0}
        self.length = [0]
        self.word = [()]
        self.rmult = [[-1] * r]
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                pw = perms[w]
                for s in range(r):
                    ps = simple_perms[s]
                    out = tuple(ps[v - 1] if v > 0 else -ps[-v - 1] for v in pw)
                    wid = perm_id.get(out)
                    if wid is None:
                        if len(perms) >= self.size_cap:
                            raise GroupTooLargeError("group too large / not finite")
                        wid = len(perms)
                        perm_id[out] = wid
                        perms.append(out)
                        self.length.append(self.length[w] + 1)
                        self.word.append(self.word[w] + (s,))
                        self.rmult.append([-1] * r)
                        nxt.append(wid)
                    self.rmult[w][s] = wid
            frontier = nxt
        self.order = len(perms)
        self.left_inv_bits = [0] * self.order
        for w, pw in enumerate(perms):
            bits = 0
            for i, v in enumerate(pw):
                if v < 0:
                    bits |= 1 << i
            self.left_inv_bits[w] = bits
        # reflections: the element acting as the reflection through root i
        self.reflection = []
        for i in range(n):
            bi = self.roots[i]
            covec = self.coroots[i]
            perm = []
            for j in range(n):
                bj = self.roots[j]
                coef = self.pair_root(j, covec)
                new = tuple(bj[k] - coef * bi[k] for k in range(r))
                if new in self.root_index:
                    perm.append(self.root_index[new] + 1)
                else:
                    neg = tuple(-c for c in new)
                    perm.append(-(self.root_index[neg] + 1))
            self.reflection.append(perm_id[tuple(perm)])
        self.root_of_reflection = {t: i for i, t in enumerate(self.reflection)}

    def _build_structure(self):
        # inverses by folding reversed words, then left multiplication tables
        self.inverse = [0] * self.order
        for w in range(self.order):
            cur = 0
            for s in reversed(self.word[w]):
                cur = self.rmult[cur][s]
            self.inverse[w] = cur
        self.lmult = [[self.inverse[self.rmult[self.inverse[w]][s]]
                       for s in range(self.rank)] for w in range(self.order)]
        self.right_inv_bits = [self.left_inv_bits[self.inverse[w]]
                               for w in range(self.order)]
        longest = [w for w in range(self.order)
                   if self.length[w] == self.num_positive_roots]
        if len(longest) != 1:
            raise InvalidInputError("long element is not unique; build is broken")
        self.w0 = longest[0]
        # fundamental weights: columns of the inverse pairing matrix
        ainv = linalg.mat_inverse(self.field, self.pairing)
        self.weights = tuple(tuple(ainv[k][j] for k in range(self.rank))
                             for j in range(self.rank))
        self._components = self._connected_components()
        self._degree_data()

    def _connected_components(self):
        r = self.rank
        seen = set()
        comps = []
        for start in range(r):
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(r):
                    if j not in seen and self.coxeter_matrix[i][j] >= 3:
                        seen.add(j)
                        stack.append(j)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def _parabolic_elements(self, gens):
        """Element ids of the standard parabolic subgroup on these generators."""
        seen = {0}
        queue = [0]
        while queue:
            w = queue.pop()
            for s in gens:
                v = self.rmult[w][s]
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return sorted(seen)

    def _degree_data(self):
        comp_degrees = []
        comp_h = []
        for comp in self._components:
            elems = self._parabolic_elements(comp)
            poincare = [0] * (max(self.length[w] for w in elems) + 1)
            for w in elems:
                poincare[self.length[w]] += 1
            degs = _factor_poincare(poincare)
            if degs is None:
                raise InvalidInputError("Poincare polynomial failed to factor")
            comp_degrees.append(tuple(degs))
            cox = 0
            for s in comp:
                cox = self.rmult[cox][s]
            power, h = cox, 1
            while power != 0:
                power = self.multiply(power, cox)
                h += 1
            comp_h.append(h)
        self.component_degrees = tuple(comp_degrees)
        self.component_h = tuple(comp_h)
        self.degrees = tuple(sorted(d for degs in comp_degrees for d in degs))
        self.exponents = tuple(d - 1 for d in self.degrees)
        prod = 1
        for d in self.degrees:
            prod *= d
        if prod != self.order or sum(self.exponents) != self.num_positive_roots:
            raise InvalidInputError("degree invariants failed; build is broken")
        self.coxeter_number = max(self.degrees) if len(self._components) == 1 else None

    # -- basic queries ---------------------------------------------------------

    @property
    def is_irreducible(self):
        return len(self._components) == 1

    @property
    def simply_laced(self):
        return all(self.coxeter_matrix[i][j] <= 3
                   for i in range(self.rank) for j in range(self.rank) if i != j)

    def multiply(self, u, v):
        cur = u
        for s in self.word[v]:
            cur = self.rmult[cur][s]
        return cur

    def act(self, w, vec):
        """The point w(x) in V for x in V, exact."""
        for s in reversed(self.word[w]):
            vec = self.vec_apply_simple(s, vec)
        return vec

    def matrix_of(self, w):
        """Matrix of w acting on V in the simple-coroot basis (columns)."""
        zero, one = self.field.zero(), self.field.one()
        cols = [self.act(w, tuple(one if k == j else zero for k in range(self.rank)))
                for j in range(self.rank)]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]

    def left_inversions(self, w):
        return self.left_inv_bits[w]

    def right_inversions(self, w):
        return self.right_inv_bits[w]

    def descents(self, w, side="right"):
        bits = self.right_inv_bits[w] if side == "right" else self.left_inv_bits[w]
        return [s for s in range(self.rank) if bits >> s & 1]

    def length_inversions(self, w):
        """(length, left inversions, right inversions, left/right descents)."""
        left = {i for i in range(self.num_positive_roots)
                if self.left_inv_bits[w] >> i & 1}
        right = {i for i in range(self.num_positive_roots)
                 if self.right_inv_bits[w] >> i & 1}
        return (self.length[w], left, right,
                set(self.descents(w, "left")), set(self.descents(w, "right")))

    def reduced_word(self, w):
        """Reduced S-word by greedy stripping of the smallest right descent."""
        out = []
        while w != 0:
            s = next(s for s in range(self.rank) if self.right_inv_bits[w] >> s & 1)
            out.append(s)
            w = self.rmult[w][s]
        return tuple(reversed(out))

    def word_of(self, w):
        return self.word[w]

    def element_of_word(self, word):
        cur = 0
        for s in word:
            cur = self.rmult[cur][s]
        return cur

    def inversion_sequence(self, word):
        """Root indices of the inversion sequence of a reduced word."""
        w = self.element_of_word(word)
        if self.length[w] != len(word):
            raise InvalidInputError("word is not reduced")
        out = []
        prefix = 0
        for s in word:
            t = self.multiply(self.multiply(prefix, self.reflection[s]),
                              self.inverse[prefix])
            out.append(self.root_of_reflection[t])
            prefix = self.rmult[prefix][s]
        return tuple(out)

    def in_parabolic(self, w, gens):
        gens = set(gens)
        return all(s in gens for s in self.reduced_word(w))

    # -- reflection multiplication and Bruhat order ------------------------------

    def reflection_table(self):
        if self._refl_mult is None:
            table = []
            for w in range(self.order):
                row = []
                for t in self.reflection:
                    row.append(self.multiply(w, t))
                table.append(row)
            self._refl_mult = table
        return self._refl_mult

    def bruhat_covers_up(self, w):
        table = self.reflection_table()[w]
        lw = self.length[w]
        return [v for v in table if self.length[v] == lw + 1]

    def bruhat_covers_down(self, w):
        table = self.reflection_table()[w]
        lw = self.length[w]
        return [v for v in table if self.length[v] == lw - 1]

    def _bruhat_bits(self):
        if self._down_bits is None:
            bits = [0] * self.order
            for w in sorted(range(self.order), key=lambda x: self.length[x]):
                b = 1 << w
                for v in self.bruhat_covers_down(w):
                    b |= bits[v]
                bits[w] = b
            self._down_bits = bits
        return self._down_bits

    def bruhat_leq(self, u, v):
        return bool(self._bruhat_bits()[v] >> u & 1)

    def bruhat_interval(self, u, v):
        bits = self._bruhat_bits()
        top = bits[v]
        return [x for x in _iter_bits(top) if bits[x] >> u & 1]

    # -- weak order --------------------------------------------------------------

    def weak_leq(self, u, v, side="right"):
        if side == "right":
            a, b = self.left_inv_bits[u], self.left_inv_bits[v]
        else:
            a, b = self.right_inv_bits[u], self.right_inv_bits[v]
        return a & b == a

    def weak_lattice(self, op, u, v, side="right"):
        """Meet or join in the (left or right) weak order."""
        if op == "meet":
            cands = [w for w in range(self.order)
                     if self.weak_leq(w, u, side) and self.weak_leq(w, v, side)]
            best = max(cands, key=lambda w: self.length[w])
            if any(not self.weak_leq(w, best, side) for w in cands):
                raise InvalidInputError("weak order meet failed; not a lattice?")
        elif op == "join":
            cands = [w for w in range(self.order)
                     if self.weak_leq(u, w, side) and self.weak_leq(v, w, side)]
            best = min(cands, key=lambda w: self.length[w])
            if any(not self.weak_leq(best, w, side) for w in cands):
                raise InvalidInputError("weak order join failed; not a lattice?")
        else:
            raise InvalidInputError(f"unknown lattice operation {op!r}")
        return best

    # -- distinguished elements ----------------------------------------------------

    def longest_element(self):
        return self.w0

    def coxeter_elements(self):
        """All standard Coxeter elements, deduplicated, sorted by id."""
        import itertools
        out = set()
        for perm in itertools.permutations(range(self.rank)):
            out.add(self.element_of_word(perm))
        return sorted(out)

    def is_standard_coxeter(self, c):
        word = self.reduced_word(c)
        return len(word) == self.rank and len(set(word)) == self.rank

    # -- pretty printing -------------------------------------------------------------

    def word_str(self, w):
        word = self.reduced_word(w)
        return "e" if not word else "".join(f"s{s + 1}" for s in word)

    def __repr__(self):
        return (f"CoxeterSystem({self.type_label}, |W|={self.order}, "
                f"N={self.num_positive_roots})")

    # -- cache ------------------------------------------------------------------------

    def cache_key(self):
        payload = json.dumps({"matrix": self.coxeter_matrix,
                              "field": [str(c) for c in self.field.min_poly]},
                             sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def save_cache(self, cache_dir):
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, f"group-{self.cache_key()}.json")
        blob = {
            "format_version": CACHE_FORMAT_VERSION,
            "type_label": self.type_label,
            "coxeter_matrix": [list(r) for r in self.coxeter_matrix],
            "order": self.order,
            "words": ["".join(str(s) for s in w) if len(w) < 10 else list(w)
                      for w in self.word],
        }
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(blob, fh)
        os.replace(tmp, path)
        return path


def _iter_bits(bits):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _q_integer(d):
    return [1] * d


def _poly_div_exact(p, q):
    p = list(p)
    out = [0] * (len(p) - len(q) + 1)
    while len(p) >= len(q):
        if p[-1] == 0:
            p.pop()
            continue
        if p[-1] % q[-1] != 0:
            return None
        c = p[-1] // q[-1]
        pos = len(p) - len(q)
        out[pos] = c
        for i in range(len(q)):
            p[pos + i] -= c * q[i]
        p.pop()
    if any(c != 0 for c in p):
        return None
    return out


def _factor_poincare(poincare):
    """Degrees d_i with Poincare(q) = prod over i of (1 + q + ... + q^(d_i - 1)).

    Greedy smallest-first with backtracking; the multiset of degrees is a
    classical invariant, but intermediate greedy choices can dead-end.
    """
    poly = list(poincare)
    while poly and poly[-1] == 0:
        poly.pop()
    if poly == [1]:
        return []
    for d in range(2, len(poly) + 1):
        quot = _poly_div_exact(poly, _q_integer(d))
        if quot is None:
            continue
        rest = _factor_poincare(quot)
        if rest is not None:
            return sorted([d] + rest)
    return None


def build_group(spec, matrix=None, size_cap=2_000_000, degree_bound=8):
    """Build a CoxeterSystem from a type label or an explicit Coxeter matrix."""
    if matrix is not None or spec == "matrix":
        if matrix is None:
            raise InvalidInputError("spec 'matrix' requires an explicit matrix")
        label = "matrix"
        mat = [list(row) for row in matrix]
    else:
        label = spec.strip()
        mat = _named_coxeter_matrix(label)
    _validate_matrix(mat)
    ms = {mat[i][j] for i in range(len(mat)) for j in range(len(mat)) if i != j}
    field = field_make(ms or {2}, degree_bound=degree_bound)
    return CoxeterSystem(mat, label, field, size_cap=size_cap)


def load_or_build(spec, matrix=None, size_cap=2_000_000, cache_dir=None):
    """Build a group, touching the cache directory when one is given.

    The expensive tables are cheap to rebuild at desk scale, so the cache is
    a fidelity check as much as a speedup: when a cached dump exists we
    rebuild and verify the stored word table matches.
    """
    system = build_group(spec, matrix=matrix, size_cap=size_cap)
    if cache_dir:
        path = os.path.join(cache_dir, f"group-{system.cache_key()}.json")
        if os.path.exists(path):
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    blob = json.load(fh)
                if blob.get("format_version") != CACHE_FORMAT_VERSION or \
                        blob.get("order") != system.order:
                    warnings.warn("stale group cache ignored")
            except (OSError, json.JSONDecodeError):
                warnings.warn("unreadable group cache ignored")
        else:
            system.save_cache(cache_dir)
    return system
