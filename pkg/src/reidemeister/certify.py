"""Independent cross-checks and machine-readable certificates.

Each operation recomputes a claimed relation by a code path disjoint from
the one under test (e.g. ordinary conjugacy inside a semidirect product
versus twisted-orbit BFS) and packages the exact results, with a verdict,
into a Certificate.  All quantities are exact integers; nothing here is
approximate.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .automorphisms import (Automorphism, Character, character_twist, compose,
                            identity_automorphism, inner, sign_flip)
from .errors import CapacityError, PreconditionError, StructuralError
from .generators import sp_order, standard_generators
from .group import (DEFAULT_CAP, FiniteGroup, Partition, class_count,
                    generate_group, twisted_classes)
from .modring import ModMatrix, Modulus, TorusElement, _is_prime

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class Certificate:
    """Machine-readable verdict tying a computed quantity to a claim."""

    claim_id: str
    paper_anchor: str
    inputs: dict = field(default_factory=dict)
    computed: dict = field(default_factory=dict)
    verdict: str = INCONCLUSIVE

    def to_dict(self) -> dict:
        return {
            "format": 1,
            "claim_id": self.claim_id,
            "paper_anchor": self.paper_anchor,
            "inputs": self.inputs,
            "computed": self.computed,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class SemidirectGroup:
    """G x|_phi Z_m as pairs (element id, k), with the twisted product.

    Never re-interned as matrices; only the conjugacy structure is needed.
    """

    def __init__(self, base: FiniteGroup, phi: Automorphism, cap=DEFAULT_CAP):
        self.base = base
        self.phi = phi
        self.m = phi.order()
        if base.order * self.m > cap:
            raise CapacityError(cap, base.order * self.m)
        # phi_pow[k] = permutation of phi^k
        self.phi_pow = [np.arange(base.order, dtype=np.int64)]
        for _ in range(1, self.m):
            self.phi_pow.append(phi.perm[self.phi_pow[-1]])

    @property
    def order(self) -> int:
        return self.base.order * self.m

    def mult(self, a, b):
        g, k = a
        h, l = b
        return (self.base.mul_ids(g, int(self.phi_pow[k % self.m][h])),
                (k + l) % self.m)

    def inv(self, a):
        g, k = a
        ginv = self.base.inverse_id(g)
        return (int(self.phi_pow[(-k) % self.m][ginv]), (-k) % self.m)

    def conjugate(self, c, x):
        return self.mult(self.mult(c, x), self.inv(c))

    def coset_conjugacy_classes(self, k=1):
        """Ordinary-conjugacy class labels of the coset {(g, k)}, by orbit BFS
        under conjugation by the semidirect group's generators."""
        conjugators = [(s, 0) for s in self.base.generators]
        if self.m > 1:
            conjugators += [(self.base.identity, 1), (self.base.identity, self.m - 1)]
        n = self.base.order
        labels = np.full(n, -1, dtype=np.int64)
        n_classes = 0
        for root in range(n):
            if labels[root] != -1:
                continue
            cid = n_classes
            n_classes += 1
            labels[root] = cid
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for c in conjugators:
                    y, kk = self.conjugate(c, (x, k))
                    if kk != k % self.m:
                        raise StructuralError(
                            "conjugation changed the Z_m component; broken product")
                    if labels[y] == -1:
                        labels[y] = cid
                        queue.append(y)
        return labels, n_classes


def semidirect_oracle(g: FiniteGroup, phi: Automorphism, cap=DEFAULT_CAP) -> Certificate:
    """Twisted class count of phi versus ordinary conjugacy in the coset G.t
    of G x|_phi Z_m; the two are computed by disjoint code paths."""
    semi = SemidirectGroup(g, phi, cap=cap)
    _, coset_classes = semi.coset_conjugacy_classes(k=1 if semi.m > 1 else 0)
    twisted = class_count(twisted_classes(g, phi))
    return Certificate(
        claim_id="lemma6.2-semidirect",
        paper_anchor="Lemma 6.2",
        inputs={"modulus": g.m, "n": g.dim // 2, "group_order": g.order,
                "automorphism": phi.descriptor, "automorphism_order": semi.m},
        computed={"twisted_class_count": twisted,
                  "coset_conjugacy_class_count": coset_classes,
                  "semidirect_order": semi.order},
        verdict=PASS if twisted == coset_classes else FAIL,
    )


def shift_bijection_check(g: FiniteGroup, phi: Automorphism, theta: int) -> Certificate:
    """Right multiplication by theta^-1 must send classes of phi bijectively
    onto classes of (inner(theta) . phi); verified class-by-class."""
    theta = int(theta)
    theta_mat = g.element(theta)
    shifted = compose(inner(g, theta_mat), phi)
    p1 = twisted_classes(g, phi)
    p2 = twisted_classes(g, shifted)
    theta_inv = g.elements[g.inverse_id(theta)]
    ident = np.eye(g.dim, dtype=np.int64)
    rmul = g.action_table(ident, theta_inv)
    # image class labels under x -> x theta^-1, per source class
    image_label = np.full(p1.n_classes, -1, dtype=np.int64)
    well_defined = True
    for x in range(g.order):
        c = p1.class_of[x]
        lab = p2.class_of[rmul[x]]
        if image_label[c] == -1:
            image_label[c] = lab
        elif image_label[c] != lab:
            well_defined = False
    bijective = (well_defined
                 and len(set(int(v) for v in image_label)) == p1.n_classes
                 and p1.n_classes == p2.n_classes)
    return Certificate(
        claim_id="lemma2.1-shift-bijection",
        paper_anchor="Lemma 2.1",
        inputs={"modulus": g.m, "n": g.dim // 2, "theta": theta,
                "automorphism": phi.descriptor},
        computed={"class_count": p1.n_classes,
                  "shifted_class_count": p2.n_classes,
                  "map_well_defined": well_defined,
                  "map_bijective": bijective},
        verdict=PASS if bijective else FAIL,
    )


def _refined_partition(g: FiniteGroup, phi: Automorphism, h_ids: np.ndarray):
    """Orbits of y -> a y phi(a)^-1 for a in the subgroup H, using every
    element of H as a move (fixture-scale groups only)."""
    n = g.order
    moves = []
    for a in h_ids:
        left = g.elements[int(a)]
        right = g.elements[g.inverse_id(phi.apply_id(int(a)))]
        moves.append(g.action_table(left, right))
    labels = np.full(n, -1, dtype=np.int64)
    count = 0
    for root in range(n):
        if labels[root] != -1:
            continue
        cid = count
        count += 1
        labels[root] = cid
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for t in moves:
                y = int(t[x])
                if labels[y] == -1:
                    labels[y] = cid
                    queue.append(y)
    return labels, count


def refined_split_check(g: FiniteGroup, phi: Automorphism, chi: Character) -> Certificate:
    """H = ker(chi) refinement: each phi-class splits into at most two
    H-refined subsets, and each (chi.phi)-class is a union of them."""
    if chi.is_trivial:
        raise PreconditionError("refined split check needs a nontrivial character")
    h_ids = chi.kernel_ids()
    refined, n_refined = _refined_partition(g, phi, h_ids)
    p_phi = twisted_classes(g, phi)
    p_twist = twisted_classes(g, character_twist(chi, phi))
    # subsets per phi-class
    split_counts = {}
    for x in range(g.order):
        split_counts.setdefault(int(p_phi.class_of[x]), set()).add(int(refined[x]))
    max_split = max(len(v) for v in split_counts.values())
    unsplit = sum(1 for v in split_counts.values() if len(v) == 1)
    # each refined subset must lie inside a single (chi.phi)-class
    union_ok = True
    owner = np.full(n_refined, -1, dtype=np.int64)
    for x in range(g.order):
        r = int(refined[x])
        lab = int(p_twist.class_of[x])
        if owner[r] == -1:
            owner[r] = lab
        elif owner[r] != lab:
            union_ok = False
    ok = max_split <= 2 and union_ok
    return Certificate(
        claim_id="lemma3.1-refined-split",
        paper_anchor="Lemma 3.1",
        inputs={"modulus": g.m, "group_order": g.order,
                "automorphism": phi.descriptor, "character": chi.digest()},
        computed={"phi_class_count": p_phi.n_classes,
                  "twisted_class_count": p_twist.n_classes,
                  "refined_class_count": n_refined,
                  "max_subsets_per_class": max_split,
                  "classes_with_single_subset": unsplit,
                  "twist_classes_are_unions": union_ok},
        verdict=PASS if ok else FAIL,
    )


def quotient_epi_check(g: FiniteGroup, q: FiniteGroup, phi: Automorphism,
                       phi_q: Automorphism | None = None) -> Certificate:
    """Entrywise residue reduction Z_m -> Z_m' must map Reidemeister classes
    of phi onto those of the induced map, and so R(phi) >= R(induced)."""
    if g.m % q.m != 0:
        raise StructuralError(f"target modulus {q.m} does not divide {g.m}")
    if g.dim != q.dim:
        raise StructuralError("dimension mismatch between group and quotient")
    proj = np.empty(g.order, dtype=np.int64)
    for i in range(g.order):
        reduced = ModMatrix(g.elements[i] % q.m, q.modulus)
        try:
            proj[i] = q.id_of(reduced)
        except StructuralError:
            raise StructuralError(
                f"reduction of element {i} is not in the target group") from None
    if len(set(int(x) for x in proj)) != q.order:
        raise StructuralError("reduction does not map onto the target group")
    # induced automorphism on the quotient, from proj o phi = phi_bar o proj
    induced = np.full(q.order, -1, dtype=np.int64)
    for i in range(g.order):
        src, dst = int(proj[i]), int(proj[phi.apply_id(i)])
        if induced[src] == -1:
            induced[src] = dst
        elif induced[src] != dst:
            raise StructuralError(
                "automorphism does not commute with the reduction; no induced map")
    for s in g.generators:
        if induced[proj[s]] != proj[phi.apply_id(s)]:
            raise StructuralError(f"reduction/automorphism mismatch at generator {s}")
    phi_bar = phi_q if phi_q is not None else Automorphism(
        q, induced, {"kind": "induced", "base": phi.descriptor})
    if phi_q is not None and not np.array_equal(phi_q.perm, induced):
        raise StructuralError("supplied quotient automorphism is not the induced one")
    p_g = twisted_classes(g, phi)
    p_q = twisted_classes(q, phi_bar)
    class_image = np.full(p_g.n_classes, -1, dtype=np.int64)
    well_defined = True
    for x in range(g.order):
        c = int(p_g.class_of[x])
        lab = int(p_q.class_of[proj[x]])
        if class_image[c] == -1:
            class_image[c] = lab
        elif class_image[c] != lab:
            well_defined = False
    surjective = len(set(int(v) for v in class_image)) == p_q.n_classes
    ok = well_defined and surjective and p_g.n_classes >= p_q.n_classes
    return Certificate(
        claim_id="eq2-quotient-epimorphism",
        paper_anchor="section 2, eq. (2); Lemma 2.2",
        inputs={"modulus": g.m, "target_modulus": q.m, "n": g.dim // 2,
                "automorphism": phi.descriptor},
        computed={"group_order": g.order, "target_order": q.order,
                  "class_count": p_g.n_classes,
                  "target_class_count": p_q.n_classes,
                  "class_map_well_defined": well_defined,
                  "class_map_surjective": surjective},
        verdict=PASS if ok else FAIL,
    )


def _sp_group(n, m, cap):
    return generate_group(standard_generators(n, m), cap=cap)


def prop32_certificate(p: int, cap=DEFAULT_CAP) -> Certificate:
    """Sp(2, Z_p) with the sign-flip: R >= (p-3)/2, |V1| as predicted, and
    the torus pairing w-bar ~ -w-bar^-1 for every unit w outside V1."""
    if p < 5 or not _is_prime(p):
        raise PreconditionError(f"need a prime p >= 5, got {p}")
    g = _sp_group(1, p, cap)
    phi = sign_flip(g)
    part = twisted_classes(g, phi)
    bound = (p - 3) // 2
    v1 = [w for w in range(1, p) if (w * w) % p == p - 1]
    v1_expected = 2 if (p - 1) % 4 == 0 else 0
    # torus class structure
    torus_ids = {w: g.id_of(TorusElement(w, 1).realize(p)) for w in range(1, p)}
    pairing_ok = True
    exact_pairs = True
    torus_by_class = {}
    for w, tid in torus_ids.items():
        torus_by_class.setdefault(int(part.class_of[tid]), []).append(w)
    for w in range(1, p):
        if w in v1:
            continue
        partner = (-pow(w, -1, p)) % p
        cw = int(part.class_of[torus_ids[w]])
        if cw != int(part.class_of[torus_ids[partner]]):
            pairing_ok = False
        members = set(torus_by_class[cw])
        if members != {w, partner}:
            exact_pairs = False
    r = part.n_classes
    ok = r >= bound and pairing_ok and len(v1) == v1_expected
    return Certificate(
        claim_id="prop3.2-lower-bound",
        paper_anchor="Proposition 3.2",
        inputs={"n": 1, "modulus": p, "automorphism": phi.descriptor},
        computed={"group_order": g.order, "expected_order": p * (p * p - 1),
                  "class_count": r, "bound": bound,
                  "v1_size": len(v1), "v1_expected": v1_expected,
                  "torus_pairing_ok": pairing_ok,
                  "torus_classes_exactly_pairs": exact_pairs,
                  "v1_class_labels": sorted(
                      int(part.class_of[torus_ids[w]]) for w in v1)},
        verdict=PASS if ok else FAIL,
    )


def growth_scan(primes, n=1, cap=DEFAULT_CAP) -> Certificate:
    """R(sign_flip) across an ascending prime list, with the (p-3)/2 bound.

    Verdict is pass only if every row meets the bound and the R column is
    strictly increasing; a capacity overrun yields an inconclusive
    certificate retaining the completed rows.
    """
    primes = [int(p) for p in primes]
    if primes != sorted(primes) or len(set(primes)) != len(primes):
        raise PreconditionError("primes must be strictly ascending")
    for p in primes:
        if p < 3 or not _is_prime(p):
            raise PreconditionError(f"{p} is not an admissible prime (need >= 3)")
    rows = []
    capacity_hit = None
    for p in primes:
        try:
            g = _sp_group(n, p, cap)
        except CapacityError:
            capacity_hit = p
            break
        part = twisted_classes(g, sign_flip(g))
        rows.append({"p": p, "group_order": g.order,
                     "reidemeister_count": part.n_classes, "bound": (p - 3) // 2})
    bound_ok = all(r["reidemeister_count"] >= r["bound"] for r in rows)
    counts = [r["reidemeister_count"] for r in rows]
    monotone = all(a < b for a, b in zip(counts, counts[1:]))
    if capacity_hit is not None:
        verdict = INCONCLUSIVE
    else:
        verdict = PASS if bound_ok and monotone else FAIL
    computed = {"rows": rows, "bound_ok": bound_ok, "strictly_increasing": monotone}
    if capacity_hit is not None:
        computed["capacity_exceeded_at"] = capacity_hit
    return Certificate(
        claim_id="lemma2.2-growth-evidence",
        paper_anchor="Lemma 2.2; Proposition 3.2",
        inputs={"n": n, "primes": primes},
        computed=computed,
        verdict=verdict,
    )


def growth_rows_csv(cert: Certificate) -> str:
    lines = ["p,group_order,reidemeister_count,bound"]
    for r in cert.computed.get("rows", []):
        lines.append(f"{r['p']},{r['group_order']},{r['reidemeister_count']},{r['bound']}")
    return "\n".join(lines) + "\n"


def thm33_block_certificate(p: int = 3, n: int = 2, w: int | None = None,
                            cap=DEFAULT_CAP) -> Certificate:
    """Exhaustive block-structure filter for the torus reduction over Sp(2n, Z_p).

    Finds every M with M wbar phi(M)^-1 in the torus (equivalently
    M wbar = T phi(M) for some torus element T, so no inverses are
    needed) and checks that its off-diagonal 2x2 blocks against rows and
    columns 3..2n vanish.
    """
    if n < 2:
        raise PreconditionError("block analysis needs half-dimension n >= 2")
    if not _is_prime(p):
        raise PreconditionError(f"block analysis is restricted to prime moduli, got {p}")
    mod = Modulus(p)
    units = mod.units()
    if w is None:
        w = next(u for u in units if u != 1)
    if w % p == 0 or w not in units:
        raise PreconditionError(f"w = {w} is not a unit mod {p}")
    g = _sp_group(n, p, cap)
    d = 2 * n
    wbar = TorusElement(w, n).realize(p).entries
    signs = np.fromfunction(lambda i, j: 1 - 2 * ((i + j) % 2), (d, d), dtype=np.int64)
    elems = g.elements
    lhs = (elems @ wbar) % p
    flipped = (elems * signs) % p
    hits = np.zeros(g.order, dtype=bool)
    for u in units:
        t = TorusElement(u, n).realize(p).entries
        rhs = (t @ flipped) % p
        hits |= np.all(lhs == rhs, axis=(1, 2))
    hit_ids = np.nonzero(hits)[0]
    off_low = elems[hit_ids][:, 2:, :2]
    off_high = elems[hit_ids][:, :2, 2:]
    violating = np.nonzero(off_low.any(axis=(1, 2)) | off_high.any(axis=(1, 2)))[0]
    computed = {"group_order": g.order, "w": w,
                "solutions_in_torus": int(len(hit_ids)),
                "block_violations": int(len(violating))}
    if len(violating):
        first = int(hit_ids[violating[0]])
        computed["first_violation_id"] = first
        computed["first_violation_entries"] = [int(x) for x in elems[first].ravel()]
    return Certificate(
        claim_id="thm3.3-block-structure",
        paper_anchor="Theorem 3.3 proof",
        inputs={"n": n, "modulus": p, "w": w},
        computed=computed,
        verdict=PASS if len(violating) == 0 else FAIL,
    )
