"""Pure-python (numpy) kernel backend.

Must stay behaviourally identical to the Cython backend in _closure.pyx:
same discovery order, same parent links, same errors.
"""

import numpy as np

from ..errors import CapacityError


def closure(gens, m, cap):
    """Breadth-first closure of the identity under right-multiplication by gens.

    gens: (k, d, d) int64 array of move matrices (already inverse-augmented).
    Returns (elements, parents, parent_gens) where
    elements[i] = elements[parents[i]] @ gens[parent_gens[i]] mod m
    and element 0 is the identity (parents[0] = parent_gens[0] = -1).
    """
    k, d, _ = gens.shape
    gens = gens % m
    ident = np.ascontiguousarray(np.eye(d, dtype=np.int64))
    elems = [ident]
    index = {ident.tobytes(): 0}
    parents = [-1]
    parent_gens = [-1]
    frontier = [0]
    while frontier:
        stack = np.stack([elems[i] for i in frontier])
        prods = np.einsum("fij,gjk->fgik", stack, gens) % m
        new_frontier = []
        for a, i in enumerate(frontier):
            for j in range(k):
                y = np.ascontiguousarray(prods[a, j])
                key = y.tobytes()
                if key not in index:
                    if len(elems) >= cap:
                        raise CapacityError(cap, len(elems))
                    index[key] = len(elems)
                    new_frontier.append(len(elems))
                    elems.append(y)
                    parents.append(i)
                    parent_gens.append(j)
        frontier = new_frontier
    return (
        np.ascontiguousarray(np.stack(elems)),
        np.array(parents, dtype=np.int64),
        np.array(parent_gens, dtype=np.int64),
    )


def action_table(elems, left, right, m, index):
    """ids of (left @ x @ right) mod m for every x in elems.

    index maps raw int64 row-major bytes to element id.  A product outside
    the indexed set raises KeyError carrying the source element id.
    """
    prods = np.matmul(np.matmul(left % m, elems), right % m) % m
    out = np.empty(len(elems), dtype=np.int64)
    for i in range(len(elems)):
        key = np.ascontiguousarray(prods[i]).tobytes()
        try:
            out[i] = index[key]
        except KeyError:
            raise KeyError(i) from None
    return out
