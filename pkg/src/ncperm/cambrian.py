"""Sorting words, sortable elements, the Cambrian projection, the positive
cone of bases W_c^+, and the explicit skip construction of the distinguished
decreasing chain.
"""

from __future__ import annotations

from .errors import InvalidInputError


def lex_least_word(system, w):
    """The lexicographically least reduced word of w in generator indices."""
    out = []
    v = w
    while v != 0:
        s = next(s for s in range(system.rank) if system.left_inv_bits[v] >> s & 1)
        out.append(s)
        v = system.lmult[v][s]
    return tuple(out)


def sorting_word(system, w, c_word):
    """Letters of the sorting word of w along copies of c_word.

    Returns a list of (generator, copy_index) pairs: the lexicographically
    first reduced subword of the infinite repetition of c_word.
    """
    v = w
    out = []
    copy = 0
    while v != 0:
        copy += 1
        progressed = False
        for s in c_word:
            if system.left_inv_bits[v] >> s & 1:
                out.append((s, copy))
                v = system.lmult[v][s]
                progressed = True
        if not progressed:
            raise InvalidInputError("element is not in the span of the word letters")
    return out


def is_sortable(system, w, c):
    """Sortable means the per-copy letter sets are nested.

    c may be a standard Coxeter element of a standard parabolic subgroup;
    w must then lie in that subgroup.
    """
    word = lex_least_word(system, c)
    if len(set(word)) != len(word):
        raise InvalidInputError("Coxeter element must be standard")
    sets = {}
    for s, copy in sorting_word(system, w, word):
        sets.setdefault(copy, set()).add(s)
    copies = [sets[k] for k in sorted(sets)]
    return all(b <= a for a, b in zip(copies, copies[1:]))


def sortables(system, c):
    key = ("sortables", c)
    if key not in system._caches:
        support = set(lex_least_word(system, c))
        system._caches[key] = frozenset(
            w for w in range(system.order)
            if system.in_parabolic(w, support) and is_sortable(system, w, c))
    return system._caches[key]


def pi_down(system, u, c):
    """The maximum sortable element weakly below u in the right weak order."""
    key = ("pidown", c)
    memo = system._caches.setdefault(key, {})
    sortable = sortables(system, c)

    def rec(w):
        if w in memo:
            return memo[w]
        if w in sortable:
            memo[w] = w
            return w
        cands = {rec(system.rmult[w][s]) for s in system.descents(w, "right")}
        best = max(cands, key=lambda x: system.length[x])
        if any(not system.weak_leq(x, best, "right") for x in cands):
            raise InvalidInputError("Cambrian projection lost its maximum; bug")
        memo[w] = best
        return best

    return rec(u)


def cambrian_class(system, u, c):
    """Representative (the sortable minimum) of the Cambrian class of u."""
    return pi_down(system, u, c)


def pi_down_parabolic(system, u, gens, c_par):
    """Cambrian projection into a standard parabolic subgroup: project the
    weak-order meet with the parabolic's long element."""
    par = system._parabolic_elements(gens)
    w0j = max(par, key=lambda w: system.length[w])
    return pi_down(system, system.weak_lattice("meet", u, w0j, "right"), c_par)


def enumerate_w_c_plus(system, c):
    """All u with l(uc) = l(u) + rank, sorted by (length, id); cross-checked
    against the left-weak-order ideal below w0 * c^(-1)."""
    key = ("wcplus", c)
    if key in system._caches:
        return system._caches[key]
    if not system.is_standard_coxeter(c):
        raise InvalidInputError("Coxeter element must be standard")
    r = system.rank
    out = [u for u in range(system.order)
           if system.length[system.multiply(u, c)] == system.length[u] + r]
    top = system.multiply(system.w0, system.inverse[c])
    ideal = {u for u in range(system.order) if system.weak_leq(u, top, "left")}
    if set(out) != ideal:
        raise InvalidInputError("W_c+ mismatch with weak-order ideal; bug")
    out.sort(key=lambda u: (system.length[u], u))
    result = tuple(out)
    system._caches[key] = result
    return result


def decreasing_class_via_skips(system, u, c):
    """The distinguished heap-decreasing chain concordant with u, built from
    the skips of the sorting word of u^(-1) along the reversed word of c.

    Requires u in W_c^+ with sortable inverse (callers project first).
    """
    r = system.rank
    if system.length[system.multiply(u, c)] != system.length[u] + r:
        raise InvalidInputError("base element is not in W_c+")
    cinv = system.inverse[c]
    if not is_sortable(system, system.inverse[u], cinv):
        raise InvalidInputError("inverse is not sortable; apply the Cambrian "
                                "projection first")
    rev_word = tuple(reversed(lex_least_word(system, c)))
    pos_of_letter = {s: p for p, s in enumerate(rev_word)}

    used = set()
    v = system.inverse[u]
    copy = 0
    while v != 0:
        copy += 1
        for p, s in enumerate(rev_word):
            if system.left_inv_bits[v] >> s & 1:
                used.add((copy, p))
                v = system.lmult[v][s]
    max_copy = copy

    skips = {}
    for s in range(r):
        p = pos_of_letter[s]
        b = next(k for k in range(1, max_copy + 2) if (k, p) not in used)
        skips[s] = (b, p)
    skip_positions = {pos for pos in skips.values()}

    marked = sorted(used | skip_positions)
    prefix = {}
    acc = 0
    for pos in marked:
        prefix[pos] = acc
        acc = system.rmult[acc][rev_word[pos[1]]]

    chain = []
    for pos in sorted(skip_positions):
        s = rev_word[pos[1]]
        q = prefix[pos]
        t = system.multiply(system.multiply(q, system.reflection[s]),
                            system.inverse[q])
        chain.append(system.root_of_reflection[t])

    # the chain must be a maximal Bruhat-increasing walk from u to uc
    cur = u
    for i in chain:
        nxt = system.multiply(cur, system.reflection[i])
        if system.length[nxt] != system.length[cur] + 1:
            raise InvalidInputError("skip chain is not Bruhat-increasing; bug")
        cur = nxt
    if cur != system.multiply(u, c):
        raise InvalidInputError("skip chain does not multiply to c; bug")
    return tuple(chain)
