"""Finite matrix group enumeration and (twisted) conjugacy class partitions.

Elements are interned: an ElementId is the dense integer position in BFS
discovery order from the identity, which makes every run over the same
generator list reproduce the same ordering, representatives and labels.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import IntegrityError, StructuralError
from .modring import ModMatrix, Modulus, canonical_key, is_symplectic, mat_inverse

DEFAULT_CAP = 10**7


@dataclass
class Partition:
    """Labeling of every group element by conjugacy class.

    kind is "ordinary" or "twisted"; for twisted partitions the inducing
    automorphism's serializable descriptor is attached.  Representatives
    are the lexicographically minimal canonical_key of each class.
    """

    class_of: np.ndarray
    representatives: np.ndarray
    class_sizes: np.ndarray
    kind: str
    automorphism: dict | None = None

    @property
    def n_classes(self) -> int:
        return len(self.representatives)


def class_count(p: Partition) -> int:
    """Number of distinct classes in the partition (the Reidemeister number)."""
    return p.n_classes


class FiniteGroup:
    """Interned, fully enumerated matrix group over Z_m.

    Built through generate_group; immutable afterwards.  generators holds
    the ids of the inverse-augmented generating set actually used for BFS.
    """

    def __init__(self, elements, parents, parent_gens, gen_matrices, gen_source,
                 modulus, symplectic):
        self.elements = elements  # (G, d, d) int64
        self.parents = parents
        self.parent_gens = parent_gens
        self.gen_matrices = gen_matrices  # (k, d, d), inverse-augmented
        self.gen_source = gen_source  # aug index -> index into the user's list
        self.modulus = modulus
        self.symplectic = symplectic
        self.identity = 0
        self._raw_index = {elements[i].tobytes(): i for i in range(len(elements))}
        self.key_index = {}
        self._keys = []
        for i in range(len(elements)):
            k = canonical_key(self.element(i))
            self._keys.append(k)
            self.key_index[k] = i
        self.generators = [self._raw_index[np.ascontiguousarray(g).tobytes()]
                           for g in gen_matrices]
        self._inverse_ids = {}
        self._left_tables = {}
        self._negation = None
        self._lex_order = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements.shape[1]

    @property
    def m(self) -> int:
        return self.modulus.m

    def element(self, i: int) -> ModMatrix:
        return ModMatrix(self.elements[i], self.modulus)

    def key_of(self, i: int) -> bytes:
        return self._keys[i]

    def id_of(self, mat: ModMatrix) -> int:
        try:
            return self._raw_index[mat.entries.tobytes()]
        except KeyError:
            raise StructuralError("matrix is not an element of this group") from None

    def contains(self, mat: ModMatrix) -> bool:
        return mat.entries.tobytes() in self._raw_index

    def mul_ids(self, i: int, j: int) -> int:
        prod = (self.elements[i] @ self.elements[j]) % self.m
        return self._raw_index[np.ascontiguousarray(prod).tobytes()]

    def inverse_id(self, i: int) -> int:
        hit = self._inverse_ids.get(i)
        if hit is None:
            inv = mat_inverse(self.element(i))
            hit = self._raw_index[inv.entries.tobytes()]
            self._inverse_ids[i] = hit
            self._inverse_ids[hit] = i
        return hit

    def action_table(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """ids of left @ x @ right over all elements x; raises IntegrityError on escape."""
        key = (np.ascontiguousarray(left).tobytes(), np.ascontiguousarray(right).tobytes())
        hit = self._left_tables.get(key)
        if hit is None:
            try:
                hit = kernels.action_table(self.elements, left, right, self.m,
                                           self._raw_index)
            except KeyError as e:
                bad = int(e.args[0])
                raise IntegrityError(
                    f"action image of element {bad} is not in the group") from None
            self._left_tables[key] = hit
        return hit

    def negation_table(self) -> np.ndarray:
        """id of -x for every element x (requires -I in the group)."""
        if self._negation is None:
            d = self.dim
            neg_ident = (-np.eye(d, dtype=np.int64)) % self.m
            self._negation = self.action_table(neg_ident, np.eye(d, dtype=np.int64))
        return self._negation

    def lex_order(self) -> np.ndarray:
        """Element ids sorted by canonical_key (ascending)."""
        if self._lex_order is None:
            self._lex_order = np.array(
                sorted(range(self.order), key=self._keys.__getitem__), dtype=np.int64)
        return self._lex_order

    def verify_closure(self, exhaustive_limit=2000, samples=10**5, seed=0):
        """Check closure under multiplication: exhaustively on small groups,
        on random pairs above the limit.  Raises IntegrityError on failure."""
        n = self.order
        if n <= exhaustive_limit:
            pairs = ((i, j) for i in range(n) for j in range(n))
        else:
            rng = random.Random(seed)
            pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for i, j in pairs:
            prod = (self.elements[i] @ self.elements[j]) % self.m
            if np.ascontiguousarray(prod).tobytes() not in self._raw_index:
                raise IntegrityError(f"product of elements {i} and {j} escapes the group")
        return True


def _dedupe(mats):
    seen = set()
    out = []
    src = []
    for idx, g in mats:
        k = np.ascontiguousarray(g).tobytes()
        if k not in seen:
            seen.add(k)
            out.append(g)
            src.append(idx)
    return out, src


def generate_group(gens, cap=DEFAULT_CAP, symplectic=None) -> FiniteGroup:
    """Enumerate the group generated by gens by breadth-first closure.

    Generators are augmented with their inverses before BFS so the move
    set is symmetric.  If symplectic is None it is inferred from the
    generators; when set (or inferred) every element is verified against
    the symplectic condition.
    """
    if not gens:
        raise StructuralError("at least one generator required")
    mod = gens[0].modulus
    d = gens[0].dim
    for g in gens:
        if g.dim != d or g.m != mod.m:
            raise StructuralError("generators must share dimension and modulus")
    inverses = [mat_inverse(g) for g in gens]  # raises SingularMatrixError
    if symplectic is None:
        symplectic = all(is_symplectic(g) for g in gens)
    pairs = [(i, g.entries) for i, g in enumerate(gens)]
    pairs += [(i, g.entries) for i, g in enumerate(inverses)]
    aug, source = _dedupe(pairs)
    gen_stack = np.ascontiguousarray(np.stack(aug))
    elements, parents, parent_gens = kernels.closure(gen_stack, mod.m, cap)
    if symplectic:
        from .modring import symplectic_form

        J = symplectic_form(d // 2) % mod.m
        lhs = np.einsum("gji,jk,gkl->gil", elements, J, elements) % mod.m
        if not np.all(lhs == J):
            bad = int(np.nonzero(np.any(lhs != J, axis=(1, 2)))[0][0])
            raise IntegrityError(f"element {bad} violates the symplectic condition")
    return FiniteGroup(elements, parents, parent_gens, gen_stack, source, mod, symplectic)


def twisted_classes(g: FiniteGroup, phi) -> Partition:
    """Partition of g into twisted conjugacy classes of phi.

    Orbits of the action a . x = a x phi(a)^-1, computed by BFS from each
    undiscovered element (in id order) using only the augmented generators.
    With phi the identity this is ordinary conjugacy.
    """
    moves = []
    for s in g.generators:
        a = g.elements[s]
        b = g.elements[g.inverse_id(phi.apply_id(s))]
        moves.append(g.action_table(a, b))
    moves = np.stack(moves) if moves else np.empty((0, g.order), dtype=np.int64)
    n = g.order
    class_of = np.full(n, -1, dtype=np.int64)
    n_classes = 0
    for root in range(n):
        if class_of[root] != -1:
            continue
        cid = n_classes
        n_classes += 1
        class_of[root] = cid
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for t in range(len(moves)):
                y = int(moves[t, x])
                if class_of[y] == -1:
                    class_of[y] = cid
                    queue.append(y)
    sizes = np.bincount(class_of, minlength=n_classes).astype(np.int64)
    reps = np.full(n_classes, -1, dtype=np.int64)
    for i in g.lex_order():
        c = class_of[i]
        if reps[c] == -1:
            reps[c] = i
    kind = "ordinary" if phi.descriptor.get("kind") == "identity" else "twisted"
    auto = None if kind == "ordinary" else phi.descriptor
    return Partition(class_of, reps, sizes, kind, auto)


def ordinary_classes(g: FiniteGroup) -> Partition:
    from .automorphisms import identity_automorphism

    return twisted_classes(g, identity_automorphism(g))


def restrict_to(p: Partition, subset) -> list[tuple[int, int]]:
    """Class labels of exactly the requested element ids, in input order."""
    n = len(p.class_of)
    out = []
    for i in subset:
        if not 0 <= i < n:
            raise StructuralError(f"unknown element id {i}")
        out.append((int(i), int(p.class_of[i])))
    return out
