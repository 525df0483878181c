import numpy as np
import pytest

import reidemeister as rm
from reidemeister.automorphisms import parse_descriptor
from reidemeister.errors import (IntegrityError, PreconditionError,
                                 UnsupportedTwistError)


class TestSignFlip:
    def test_fixes_identity(self, sp2_5):
        phi = rm.sign_flip(sp2_5)
        assert phi.apply_id(sp2_5.identity) == sp2_5.identity

    def test_entrywise_signs(self, sp2_7):
        phi = rm.sign_flip(sp2_7)
        m = rm.ModMatrix([[2, 3], [3, 5]], 7)  # det = 1 mod 7
        assert phi(m) == rm.ModMatrix([[2, -3], [-3, 5]], 7)

    def test_involution(self, sp2_5):
        phi = rm.sign_flip(sp2_5)
        assert np.array_equal(phi.perm[phi.perm], np.arange(sp2_5.order))
        assert rm.automorphism_order(phi) == 2

    def test_dim4(self):
        g = rm.generate_group(rm.standard_generators(2, 3))
        phi = rm.sign_flip(g)
        m = g.element(5)
        signs = np.fromfunction(lambda i, j: 1 - 2 * ((i + j) % 2), (4, 4))
        expected = rm.ModMatrix(m.entries * signs.astype(np.int64), 3)
        assert phi(m) == expected


class TestInner:
    def test_identity_conjugator(self, sp2_5):
        phi = rm.inner(sp2_5, rm.ModMatrix.identity(2, 5))
        assert phi == rm.identity_automorphism(sp2_5)

    def test_group_element_gives_ordinary_count(self, sp2_5):
        theta = sp2_5.element(7)
        count = rm.class_count(rm.twisted_classes(sp2_5, rm.inner(sp2_5, theta)))
        assert count == rm.class_count(rm.ordinary_classes(sp2_5))

    def test_diag_matches_sign_flip(self, sp2_5, sp2_7):
        for g in (sp2_5, sp2_7):
            d = rm.ModMatrix([[1, 0], [0, -1]], g.m)
            assert rm.inner(g, d) == rm.sign_flip(g)

    def test_composition_law(self, sp2_5):
        u = sp2_5.element(3)
        v = sp2_5.element(11)
        left = rm.compose(rm.inner(sp2_5, u), rm.inner(sp2_5, v))
        right = rm.inner(sp2_5, rm.mat_mul(u, v))
        assert left == right

    def test_non_normalizing_conjugator(self, dihedral8):
        with pytest.raises(IntegrityError):
            rm.inner(dihedral8, rm.ModMatrix([[1, 1], [0, 1]], 3))

    def test_order_vs_element_order(self, sp2_5):
        # u of element order 4 with central square: the induced permutation
        # has order 2, not 4
        u = rm.ModMatrix([[0, 1], [-1, 0]], 5)
        uid = sp2_5.id_of(u)
        u2 = sp2_5.mul_ids(uid, uid)
        assert sp2_5.element(u2) == rm.ModMatrix([[-1, 0], [0, -1]], 5)
        phi = rm.inner(sp2_5, u)
        assert rm.automorphism_order(phi) == 2

    def test_descriptor(self, sp2_5):
        u = sp2_5.element(3)
        desc = rm.inner(sp2_5, u).descriptor
        assert desc["kind"] == "inner"
        assert desc["conjugator"] == [int(x) for x in u.entries.ravel()]


class TestCharacter:
    def test_trivial(self, sp2_5):
        chi = rm.Character.trivial(sp2_5)
        assert chi.is_trivial
        assert chi.validate()

    def test_determinant_character(self, dihedral8, dihedral8_chi):
        assert not dihedral8_chi.is_trivial
        assert dihedral8_chi.validate()
        assert dihedral8_chi.values[dihedral8.identity] == 1

    def test_from_generator_values(self, dihedral8, dihedral8_chi):
        # dihedral generators: rotation (det 1), reflection (det -1)
        chi = rm.Character.from_generator_values(dihedral8, [1, -1])
        assert np.array_equal(chi.values, dihedral8_chi.values)

    def test_inconsistent_values_rejected(self, sp2_5):
        # Sp(2, Z_5) is perfect: no nontrivial character can exist
        with pytest.raises(IntegrityError):
            rm.Character.from_generator_values(sp2_5, [-1, 1])

    def test_bad_values_rejected(self, dihedral8):
        with pytest.raises(Exception):
            rm.Character.from_generator_values(dihedral8, [1, 2])


class TestCharacterTwist:
    def test_trivial_character_is_noop(self, sp2_5):
        base = rm.sign_flip(sp2_5)
        assert rm.character_twist(rm.Character.trivial(sp2_5), base) == base

    def test_twist_twice(self, dihedral8, dihedral8_chi):
        base = rm.identity_automorphism(dihedral8)
        once = rm.character_twist(dihedral8_chi, base)
        twice = rm.character_twist(dihedral8_chi, once)
        assert once != base
        assert twice == base

    def test_twisted_is_valid_automorphism(self, dihedral8, dihedral8_chi):
        base = rm.inner(dihedral8, dihedral8.element(1))
        twisted = rm.character_twist(dihedral8_chi, base)
        # construction re-validates; spot check a few pairs directly
        for i in range(dihedral8.order):
            for j in range(dihedral8.order):
                assert twisted.apply_id(dihedral8.mul_ids(i, j)) == \
                    dihedral8.mul_ids(twisted.apply_id(i), twisted.apply_id(j))

    def test_missing_negative_identity(self):
        shear = rm.generate_group([rm.ModMatrix([[1, 1], [0, 1]], 3)])
        assert shear.order == 3
        chi = rm.Character(shear, np.array([1, -1, 1]), _validated=True)
        with pytest.raises(UnsupportedTwistError):
            rm.character_twist(chi, rm.identity_automorphism(shear))

    def test_descriptor(self, dihedral8, dihedral8_chi):
        t = rm.character_twist(dihedral8_chi, rm.identity_automorphism(dihedral8))
        assert t.descriptor["kind"] == "character_twist"
        assert t.descriptor["character"] == dihedral8_chi.digest()


class TestParseDescriptor:
    def test_named(self, sp2_5):
        assert parse_descriptor(sp2_5, "identity").is_identity
        assert parse_descriptor(sp2_5, "sign_flip") == rm.sign_flip(sp2_5)

    def test_inner_entries(self, sp2_5):
        phi = parse_descriptor(sp2_5, "inner:1,0,0,-1")
        assert phi == rm.sign_flip(sp2_5)

    def test_bad_specs(self, sp2_5):
        with pytest.raises(PreconditionError):
            parse_descriptor(sp2_5, "frobenius")
        with pytest.raises(PreconditionError):
            parse_descriptor(sp2_5, "inner:1,2,3")
        with pytest.raises(PreconditionError):
            parse_descriptor(sp2_5, "inner:a,b,c,d")


class TestOrder:
    def test_identity(self, sp2_5):
        assert rm.automorphism_order(rm.identity_automorphism(sp2_5)) == 1

    def test_lazy_idempotent(self, sp2_5):
        phi = rm.sign_flip(sp2_5)
        assert phi.order() == phi.order() == 2
