"""Helpers for reading type-A elements as permutations in tests.

The reflection representation of A_(n-1) identifies the simple coroot
basis with e_i - e_(i+1) in R^n; an element w then permutes the e_i, and
we write sigma for the permutation with w(e_i) = e_(sigma(i)), 1-based.
"""


def perm_of(system, w):
    n = system.rank + 1
    sigma = list(range(1, n + 1))
    for s in system.word_of(w):
        # acc = acc o (s, s+1): apply the transposition first
        sigma[s], sigma[s + 1] = sigma[s + 1], sigma[s]
    return tuple(sigma)


def element_of_perm(system, sigma):
    n = len(sigma)
    sigma = list(sigma)
    word = []
    # bubble sort records a reduced word for sigma^(-1); reverse it
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if sigma[i] > sigma[i + 1]:
                sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
                word.append(i)
                changed = True
    w = 0
    for s in reversed(word):
        w = system.rmult[w][s]
    return w


def transposition(system, i, j):
    """Reflection element swapping coordinates i < j (1-based)."""
    if i > j:
        i, j = j, i
    zero, one = system.field.zero(), system.field.one()
    coords = tuple(one if i - 1 <= k <= j - 2 else zero for k in range(system.rank))
    return system.reflection[system.root_index[coords]]


def cycles_of(system, w):
    """Cycle notation (as a frozenset of tuples, fixed points omitted)."""
    sigma = perm_of(system, w)
    seen, cycles = set(), []
    for start in range(1, len(sigma) + 1):
        if start in seen or sigma[start - 1] == start:
            continue
        cyc, cur = [], start
        while cur not in seen:
            seen.add(cur)
            cyc.append(cur)
            cur = sigma[cur - 1]
        # canonical rotation: smallest entry first
        k = cyc.index(min(cyc))
        cycles.append(tuple(cyc[k:] + cyc[:k]))
    return frozenset(cycles)
