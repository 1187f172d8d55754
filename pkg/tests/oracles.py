"""Independent reference computations, written without the package's linear algebra.

Everything here is deliberately naive: plain Python integers and
fractions, itertools enumeration, no numpy.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def span_size(rows: list[list[int]], p: int) -> int:
    """Number of vectors in the span of ``rows`` over F_p, by enumerating combinations."""
    if not rows:
        return 1
    n = len(rows[0])
    seen = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = tuple(sum(c * r[k] for c, r in zip(coeffs, rows)) % p for k in range(n))
        seen.add(v)
    return len(seen)


def brute_rank(rows: list[list[int]], p: int) -> int:
    size = span_size(rows, p)
    r = 0
    while p ** r < size:
        r += 1
    assert p ** r == size
    return r


def fraction_rank(rows: list[list]) -> int:
    """Textbook Gaussian elimination over Q with Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    rank, cols = 0, len(m[0])
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def rank_mod(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    if not m:
        return 0
    rank, cols = 0, len(m[0])
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [a * inv % p for a in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def rank_of(rows: list[list], p: int | None) -> int:
    return fraction_rank(rows) if p is None else rank_mod(rows, p)


# sheaves as plain data: leq(a, b), dims list, rho[(a, b)] nested lists (a >= b)

def plain(F):
    """Plain-Python view of a package sheaf: (n, leq, dims, rho, p)."""
    P = F.base
    n = len(P)
    leq = [[P._leq(a, b) for b in range(n)] for a in range(n)]
    rho = {}
    for a in range(n):
        for b in range(n):
            if leq[b][a]:
                rho[a, b] = [list(row) for row in F.r(a, b).tolist()]
    p = F.field.p if F.field.is_prime else None
    return n, leq, list(F.dims), rho, p


def strict_chains(n, leq, length):
    out = []
    for combo in itertools.permutations(range(n), length + 1):
        if all(leq[x][y] and x != y for x, y in zip(combo, combo[1:])):
            out.append(combo)
    return sorted(out)


def naive_cohomology(F) -> list[int]:
    """``H^n`` from the strict-chain complex built from scratch with Fraction/mod-p ranks."""
    n, leq, dims, rho, p = plain(F)
    chains = []
    k = 0
    while True:
        cs = strict_chains(n, leq, k)
        if not cs:
            break
        chains.append(cs)
        k += 1
    cdims, offs = [], []
    for cs in chains:
        pos, off = 0, {}
        for c in cs:
            off[c] = pos
            pos += dims[c[0]]
        cdims.append(pos)
        offs.append(off)
    ranks = []
    for deg in range(len(chains) - 1):
        M = [[0] * cdims[deg] for _ in range(cdims[deg + 1])]
        for c, row in offs[deg + 1].items():
            h = dims[c[0]]
            for k2 in range(len(c)):
                face = c[:k2] + c[k2 + 1:]
                col = offs[deg][face]
                if k2 == 0:
                    block = rho[c[1], c[0]]
                    for t in range(h):
                        for s in range(dims[c[1]]):
                            M[row + t][col + s] += block[t][s]
                else:
                    for t in range(h):
                        M[row + t][col + t] += (-1) ** k2
        ranks.append(rank_of(M, p))
    return [cdims[d] - (ranks[d] if d < len(ranks) else 0) - (ranks[d - 1] if d >= 1 else 0)
            for d in range(len(cdims))]


def enumerate_sections(F, members) -> int:
    """``dim Γ`` over ``members`` (a down-set) by enumerating all families; small F_p only."""
    n, leq, dims, rho, p = plain(F)
    assert p is not None
    spaces = [list(itertools.product(range(p), repeat=dims[a])) for a in members]
    count = 0
    for family in itertools.product(*spaces):
        x = dict(zip(members, family))
        ok = True
        for a in members:
            for b in members:
                if a != b and leq[b][a]:
                    img = tuple(sum(rho[a, b][t][s] * x[a][s] for s in range(dims[a])) % p for t in range(dims[b]))
                    if img != x[b]:
                        ok = False
                        break
            if not ok:
                break
        count += ok
    d = 0
    while p ** d < count:
        d += 1
    assert p ** d == count
    return d


def image_sets(F, order, i, p):
    """The image ``ρ_{r,i}(F_r)`` as a set of vectors, for each ``r`` at or above ``i`` in ``order``."""
    _, _, dims, rho, _ = plain(F)
    out = []
    pos = order.index(i)
    for r in order[pos:]:
        vecs = set()
        for x in itertools.product(range(p), repeat=dims[r]):
            vecs.add(tuple(sum(rho[r, i][t][s] * x[s] for s in range(dims[r])) % p for t in range(dims[i])))
        out.append(frozenset(vecs))
    return out
