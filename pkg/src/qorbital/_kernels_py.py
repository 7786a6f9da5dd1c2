"""Pure-Python versions of the hot kernels.

Signatures match the compiled ``_ckernels`` module exactly; see ``_accel``.
"""


def poly_mulmod(a, b, table, phi):
    """Multiply two coefficient vectors of length ``phi`` and reduce.

    ``table[e]`` is the power-basis vector of ``x**e`` modulo the cyclotomic
    polynomial, for ``0 <= e < 2*phi - 1``.
    """
    prod = [0] * (2 * phi - 1)
    for i in range(phi):
        ai = a[i]
        if ai:
            for j in range(phi):
                bj = b[j]
                if bj:
                    prod[i + j] += ai * bj
    return reduce_exponents(prod, table, phi)


def reduce_exponents(coeffs, table, phi):
    out = [0] * phi
    for e, c in enumerate(coeffs):
        if c:
            row = table[e]
            for t in range(phi):
                r = row[t]
                if r:
                    out[t] += c * r
    return out


def pair_classes(ent, nz, n):
    """Union-find over index pairs of an ``n x n`` magic matrix.

    ``ent[i][j]`` is an entry id and ``nz[a][b]`` says whether the product of
    entries ``a`` and ``b`` is nonzero.  Pairs ``(i, k)`` and ``(j, l)`` are
    merged when ``u_ij u_kl != 0``.  Returns ``(roots, raw)`` where ``roots``
    maps flat pair index ``i*n + k`` to its class root and ``raw`` counts the
    nonzero quadruples.
    """
    size = n * n
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    raw = 0
    for i in range(n):
        row_i = ent[i]
        for k in range(n):
            row_k = ent[k]
            src = i * n + k
            for j in range(n):
                nz_row = nz[row_i[j]]
                for l in range(n):
                    if nz_row[row_k[l]]:
                        raw += 1
                        a = find(src)
                        b = find(j * n + l)
                        if a != b:
                            if a < b:
                                parent[b] = a
                            else:
                                parent[a] = b
    return [find(x) for x in range(size)], raw
