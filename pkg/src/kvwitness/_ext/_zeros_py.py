"""Pure-Python common-zero enumeration over P^2(F_q)."""

from __future__ import annotations


def common_zeros(q, maxdeg, add, mul, terms, offsets):
    """Points of P^2(F_q) where every form vanishes.

    ``add`` and ``mul`` are flattened q*q tables of element codes.  Form ``f``
    is the run ``terms[4*offsets[f]:4*offsets[f+1]]`` of quadruples
    ``(i, j, k, c)`` meaning ``c * x^i y^j z^k``.  Points are normalised with
    last nonzero coordinate 1 and visited as ``[x:y:1]`` (x outer), then
    ``[x:1:0]``, then ``[1:0:0]``; output keeps that order.
    """
    nforms = len(offsets) - 1
    forms = [
        [tuple(terms[4 * t:4 * t + 4]) for t in range(offsets[f], offsets[f + 1])]
        for f in range(nforms)
    ]
    pw = []
    for a in range(q):
        row = [1]
        for _ in range(maxdeg):
            row.append(mul[row[-1] * q + a])
        pw.append(row)

    def vanishes(x, y, z):
        px, py, pz = pw[x], pw[y], pw[z]
        for form in forms:
            acc = 0
            for i, j, k, c in form:
                v = mul[mul[px[i] * q + py[j]] * q + pz[k]]
                acc = add[acc * q + mul[c * q + v]]
            if acc:
                return False
        return True

    out = []
    for x in range(q):
        for y in range(q):
            if vanishes(x, y, 1):
                out.append((x, y, 1))
    for x in range(q):
        if vanishes(x, 1, 0):
            out.append((x, 1, 0))
    if vanishes(1, 0, 0):
        out.append((1, 0, 0))
    return out
