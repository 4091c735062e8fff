"""Exact-arithmetic models of quantum-torus matrix algebras, their
shift-covariant realization, fermionic Fock representations, and the
general-linear dual-pair bookkeeping used to verify the decomposition
identities at bounded degree."""

__version__ = "0.1.0"
