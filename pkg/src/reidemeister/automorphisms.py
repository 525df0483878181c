"""Automorphisms of an enumerated group: inner, diagonal sign-flip,
character twists and compositions.

An Automorphism is stored as the permutation it induces on the element
table.  Construction always validates: images must stay inside the group,
the map must be a bijection, and the homomorphism property is verified on
every (generator, element) pair -- which by induction on word length
covers all pairs -- plus seeded random pairs as a belt-and-braces check.
Equality is permutation equality, so inner(D) == sign_flip.
"""

from __future__ import annotations

import hashlib
import random
from math import gcd

import numpy as np

from .errors import (IntegrityError, PreconditionError, StructuralError,
                     UnsupportedTwistError)
from .group import FiniteGroup
from .modring import ModMatrix, mat_inverse

RANDOM_PAIR_SAMPLES = 1000


def _validate_automorphism(g: FiniteGroup, perm: np.ndarray, what: str, seed=0):
    n = g.order
    if perm.shape != (n,):
        raise IntegrityError(f"{what}: image table has wrong size")
    if not np.array_equal(np.sort(perm), np.arange(n)):
        raise IntegrityError(f"{what}: not a bijection of the element table")
    if perm[g.identity] != g.identity:
        raise IntegrityError(f"{what}: identity not fixed")
    ident = np.eye(g.dim, dtype=np.int64)
    for s in g.generators:
        # phi(s x) == phi(s) phi(x) for every x; exhaustive over the group,
        # and sufficient for all pairs by induction on word length.
        left = g.action_table(g.elements[s], ident)
        left_img = g.action_table(g.elements[perm[s]], ident)
        if not np.array_equal(perm[left], left_img[perm]):
            raise IntegrityError(f"{what}: homomorphism property fails at generator {s}")
    rng = random.Random(seed)
    for _ in range(min(RANDOM_PAIR_SAMPLES, n * n)):
        i, j = rng.randrange(n), rng.randrange(n)
        if perm[g.mul_ids(i, j)] != g.mul_ids(int(perm[i]), int(perm[j])):
            raise IntegrityError(f"{what}: homomorphism property fails at pair ({i},{j})")


class Automorphism:
    """Evaluable, validated self-map of a FiniteGroup."""

    def __init__(self, group: FiniteGroup, perm: np.ndarray, descriptor: dict,
                 _validated=False):
        self.group = group
        self.perm = np.asarray(perm, dtype=np.int64)
        self.descriptor = descriptor
        self._order = None
        if not _validated:
            _validate_automorphism(group, self.perm, descriptor.get("kind", "?"))

    def apply_id(self, i: int) -> int:
        return int(self.perm[i])

    def __call__(self, x):
        if isinstance(x, ModMatrix):
            return self.group.element(self.apply_id(self.group.id_of(x)))
        return self.apply_id(x)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.group is other.group and np.array_equal(self.perm, other.perm)

    def __hash__(self):
        return hash(self.perm.tobytes())

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self.perm, np.arange(self.group.order)))

    def order(self) -> int:
        """Least k >= 1 with phi^k the identity map, from the cycle structure."""
        if self._order is None:
            n = self.group.order
            seen = np.zeros(n, dtype=bool)
            result = 1
            for i in range(n):
                if seen[i]:
                    continue
                length = 0
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = int(self.perm[j])
                    length += 1
                result = result * length // gcd(result, length)
            self._order = result
        return self._order


def automorphism_order(a: Automorphism) -> int:
    return a.order()


def identity_automorphism(g: FiniteGroup) -> Automorphism:
    return Automorphism(g, np.arange(g.order, dtype=np.int64),
                        {"kind": "identity"}, _validated=True)


def sign_flip(g: FiniteGroup) -> Automorphism:
    """Entrywise multiplication by (-1)^(i+j); conjugation by diag(1,-1,1,-1,...)."""
    d = g.dim
    signs = np.fromfunction(lambda i, j: 1 - 2 * ((i + j) % 2), (d, d), dtype=np.int64)
    images = (g.elements * signs.astype(np.int64)) % g.m
    perm = np.empty(g.order, dtype=np.int64)
    for i in range(g.order):
        key = np.ascontiguousarray(images[i]).tobytes()
        hit = g._raw_index.get(key)
        if hit is None:
            raise IntegrityError(
                f"sign-flip image of element {i} is not in the group "
                "(group not normalized by diag(1,-1,...))")
        perm[i] = hit
    auto = Automorphism(g, perm, {"kind": "sign_flip"})
    return auto


def inner(g: FiniteGroup, u: ModMatrix) -> Automorphism:
    """Conjugation x -> u x u^-1; u must normalize the group."""
    if u.dim != g.dim or u.m != g.m:
        raise StructuralError("conjugator has wrong dimension or modulus")
    uinv = mat_inverse(u)
    for s in g.generators:
        conj = (u.entries @ g.elements[s] @ uinv.entries) % g.m
        if np.ascontiguousarray(conj).tobytes() not in g._raw_index:
            raise IntegrityError(
                f"conjugate of generator {s} escapes the group: u does not normalize it")
    perm = g.action_table(u.entries, uinv.entries)
    desc = {"kind": "inner", "conjugator": [int(x) for x in u.entries.ravel()]}
    return Automorphism(g, perm, desc)


class Character:
    """Homomorphism of the group into {+1, -1}, stored per element id."""

    def __init__(self, group: FiniteGroup, values: np.ndarray, _validated=False):
        self.group = group
        self.values = np.asarray(values, dtype=np.int64)
        if not _validated:
            self.validate()

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "Character":
        return cls(group, np.ones(group.order, dtype=np.int64), _validated=True)

    @classmethod
    def from_generator_values(cls, group: FiniteGroup, gen_values) -> "Character":
        """Extend values given per (un-augmented) generator along BFS parents.

        gen_values: sequence of +-1, one per generator as passed to
        generate_group; an inverse generator inherits its source's value.
        """
        aug_values = [int(gen_values[src]) for src in group.gen_source]
        if any(v not in (1, -1) for v in aug_values):
            raise StructuralError("character values must be +1 or -1")
        vals = np.empty(group.order, dtype=np.int64)
        vals[0] = 1
        for i in range(1, group.order):
            vals[i] = vals[group.parents[i]] * aug_values[group.parent_gens[i]]
        return cls(group, vals)

    @property
    def is_trivial(self) -> bool:
        return bool(np.all(self.values == 1))

    def validate(self, seed=0):
        g = self.group
        if self.values.shape != (g.order,):
            raise IntegrityError("character table has wrong size")
        if not np.all(np.isin(self.values, (1, -1))):
            raise IntegrityError("character values outside {+1,-1}")
        if self.values[g.identity] != 1:
            raise IntegrityError("character does not send identity to +1")
        ident = np.eye(g.dim, dtype=np.int64)
        for s in g.generators:
            left = g.action_table(g.elements[s], ident)
            if not np.array_equal(self.values[left], self.values[s] * self.values):
                raise IntegrityError(f"character not multiplicative at generator {s}")
        rng = random.Random(seed)
        n = g.order
        for _ in range(min(RANDOM_PAIR_SAMPLES, n * n)):
            i, j = rng.randrange(n), rng.randrange(n)
            if self.values[g.mul_ids(i, j)] != self.values[i] * self.values[j]:
                raise IntegrityError(f"character not multiplicative at pair ({i},{j})")
        return True

    def digest(self) -> str:
        return hashlib.sha256(self.values.tobytes()).hexdigest()[:16]

    def kernel_ids(self) -> np.ndarray:
        return np.nonzero(self.values == 1)[0]


def character_twist(chi: Character, base: Automorphism) -> Automorphism:
    """g -> chi(g) * base(g).  Needs -I in the group so images stay inside."""
    g = base.group
    if chi.group is not g:
        raise StructuralError("character and automorphism live on different groups")
    if chi.is_trivial:
        return base
    neg_ident = ModMatrix((-np.eye(g.dim, dtype=np.int64)) % g.m, g.modulus)
    if not g.contains(neg_ident):
        raise UnsupportedTwistError("-I is not in the group; character twist undefined")
    neg = g.negation_table()
    perm = np.where(chi.values == 1, base.perm, neg[base.perm])
    desc = {"kind": "character_twist", "character": chi.digest(),
            "base": base.descriptor}
    return Automorphism(g, perm, desc)


def compose(outer: Automorphism, inner_map: Automorphism) -> Automorphism:
    """outer after inner_map, as permutations of the element table."""
    if outer.group is not inner_map.group:
        raise StructuralError("cannot compose automorphisms of different groups")
    perm = outer.perm[inner_map.perm]
    desc = {"kind": "compose", "outer": outer.descriptor, "inner": inner_map.descriptor}
    return Automorphism(outer.group, perm, desc, _validated=True)


def parse_descriptor(g: FiniteGroup, spec: str) -> Automorphism:
    """Build an automorphism from a CLI-style descriptor string.

    Accepted forms: "identity", "sign_flip", "inner:<comma-entries>",
    "twist:<character-file>" (character twist of the identity).
    """
    if spec == "identity":
        return identity_automorphism(g)
    if spec == "sign_flip":
        return sign_flip(g)
    if spec.startswith("inner:"):
        raw = spec[len("inner:"):]
        try:
            entries = [int(x) for x in raw.split(",")]
        except ValueError:
            raise PreconditionError(f"bad inner conjugator entries: {raw!r}") from None
        d = g.dim
        if len(entries) != d * d:
            raise PreconditionError(
                f"inner conjugator needs {d * d} entries, got {len(entries)}")
        return inner(g, ModMatrix(np.array(entries).reshape(d, d), g.modulus))
    if spec.startswith("twist:"):
        chi = load_character_file(g, spec[len("twist:"):])
        return character_twist(chi, identity_automorphism(g))
    raise PreconditionError(f"unknown automorphism descriptor {spec!r}")


def load_character_file(g: FiniteGroup, path: str) -> Character:
    """Character file: one line per generator, "<hex canonical_key>=+1|-1"."""
    from .modring import canonical_key

    table = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise PreconditionError(f"{path}:{lineno}: expected key=value")
            key_hex, val = line.split("=", 1)
            val = val.strip()
            if val not in ("+1", "-1", "1"):
                raise PreconditionError(f"{path}:{lineno}: value must be +1 or -1")
            table[key_hex.strip().lower()] = 1 if val in ("+1", "1") else -1
    gen_values = []
    n_user = max(g.gen_source) + 1
    user_keys = [None] * n_user
    for aug_idx, src in enumerate(g.gen_source):
        if user_keys[src] is None:
            mat = ModMatrix(g.gen_matrices[aug_idx], g.modulus)
            user_keys[src] = canonical_key(mat).hex()
    for src, key_hex in enumerate(user_keys):
        if key_hex not in table:
            raise PreconditionError(f"character file missing generator {src} ({key_hex})")
        gen_values.append(table[key_hex])
    return Character.from_generator_values(g, gen_values)
