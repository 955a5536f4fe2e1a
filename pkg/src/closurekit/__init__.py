"""Exact commutative-algebra toolkit for closure operations on ideals and modules.

Polynomial rings over Q and F_p (and their quotients), Gröbner bases for
submodules of free modules, closure-membership tests with checkable
certificates, forcing algebras, exactness criteria for free complexes,
constructible partitions and finite Čech complexes.
"""

from .poly import GF, QQ, PolyRing, Poly, grevlex, lex
from .text import ParseError, parse_poly, print_canonical, ring_from_text
from .groebner import (GroebnerBasis, ModuleVector, groebner_basis, is_member, saturate,
                       submodule_member, syzygies)
from .ideals import FPModule, Ideal, SubmoduleData, radical_member
from .forcing import build_forcing, has_ring_section, is_spec_surjective
from .closures import (ClosureCertificate, SearchBounds, closure_member, frobenius_closure_member,
                       integral_closure_member, radical_closure_member, ratliff_rush_member,
                       verify_certificate)

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "PolyRing", "Poly", "grevlex", "lex", "ParseError", "parse_poly", "print_canonical",
    "ring_from_text", "GroebnerBasis", "ModuleVector", "groebner_basis", "is_member", "saturate",
    "submodule_member", "syzygies", "FPModule", "Ideal", "SubmoduleData", "radical_member",
    "build_forcing", "has_ring_section", "is_spec_surjective", "ClosureCertificate", "SearchBounds",
    "closure_member", "frobenius_closure_member", "integral_closure_member", "radical_closure_member",
    "ratliff_rush_member", "verify_certificate",
]
