"""Gorenstein test that does not use corners at all.

k_t(Y) has an initial ideal generated by the diagonal products, so its
h-vector is that of the complex of cell sets containing no strictly
increasing chain of length t.  The ring is a Cohen-Macaulay domain, so it
is Gorenstein exactly when that h-vector is a palindrome.
"""

from math import comb


def face_counts(Y, t):
    cells = sorted(Y.points)
    counts = {}

    def walk(start, chosen, size):
        counts[size] = counts.get(size, 0) + 1
        for j in range(start, len(cells)):
            p, q = cells[j]
            longest = 1 + max((k for (r, c), k in chosen if r < p and c < q), default=0)
            if longest >= t:
                continue
            chosen.append((cells[j], longest))
            walk(j + 1, chosen, size + 1)
            chosen.pop()

    walk(0, [], 0)
    return counts


def h_vector(counts):
    d = max(counts)
    h = [sum((-1) ** (k - i) * comb(d - i, k - i) * counts.get(i, 0) for i in range(k + 1))
         for k in range(d + 1)]
    while h and h[-1] == 0:
        h.pop()
    return h


def is_gorenstein(Y, t):
    h = h_vector(face_counts(Y, t))
    return h == h[::-1]
