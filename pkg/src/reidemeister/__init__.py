"""Twisted conjugacy (Reidemeister) class enumeration and certification
for finite symplectic matrix groups over Z_m."""

from .automorphisms import (Automorphism, Character, automorphism_order,
                            character_twist, compose, identity_automorphism,
                            inner, sign_flip)
from .certify import (Certificate, SemidirectGroup, growth_scan,
                      prop32_certificate, quotient_epi_check,
                      refined_split_check, semidirect_oracle,
                      shift_bijection_check, thm33_block_certificate)
from .errors import (CapacityError, IntegrityError, PreconditionError,
                     SingularMatrixError, StructuralError, UnsupportedTwistError)
from .generators import sp_order, standard_generators, transvection
from .group import (FiniteGroup, Partition, class_count, generate_group,
                    ordinary_classes, restrict_to, twisted_classes)
from .kernels import BACKEND as KERNEL_BACKEND
from .modring import (ModMatrix, Modulus, TorusElement, canonical_key, det,
                      from_canonical_key, is_symplectic, mat_inverse, mat_mul)

__version__ = "0.1.0"

__all__ = [
    "Automorphism", "CapacityError", "Certificate", "Character", "FiniteGroup",
    "IntegrityError", "KERNEL_BACKEND", "ModMatrix", "Modulus", "Partition",
    "PreconditionError", "SemidirectGroup", "SingularMatrixError",
    "StructuralError", "TorusElement", "UnsupportedTwistError",
    "automorphism_order", "canonical_key", "character_twist", "class_count",
    "compose", "det", "from_canonical_key", "generate_group", "growth_scan",
    "identity_automorphism", "inner", "is_symplectic", "mat_inverse", "mat_mul",
    "ordinary_classes", "prop32_certificate", "quotient_epi_check",
    "refined_split_check", "restrict_to", "semidirect_oracle",
    "shift_bijection_check", "sign_flip", "sp_order", "standard_generators",
    "thm33_block_certificate", "transvection", "twisted_classes",
]
