"""Exception and warning types shared across the package."""

from __future__ import annotations


class CqglabError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(CqglabError):
    """Operands do not live over the same algebra or have the wrong shape."""


class InvalidSpec(CqglabError):
    """A structure-constant spec is malformed (shapes, singular antipode, ...)."""


class InvalidGroupTable(CqglabError):
    """A multiplication table is not a group table."""


class NotASubgroup(CqglabError):
    """A set of element indices is not closed under multiplication/inverse."""


class NoHaar(CqglabError):
    """The invariance system has no solution: not a CQG-algebra spec."""


class NonUniqueHaar(CqglabError):
    """The invariance system has more than one normalized solution."""


class PositivityFailure(CqglabError):
    """A Gram matrix that must be positive definite is not."""


class NoF(CqglabError):
    """No nonzero intertwiner to the doubly contragredient partner exists."""


class TraceZero(CqglabError):
    """tr F or tr F^{-1} vanishes, so the ratio formulas are undefined."""


class NotUnitary(CqglabError):
    """An operation requiring a unitary corepresentation got a non-unitary one."""


class NotIrreducible(CqglabError):
    """An operation requiring an irreducible corepresentation got a reducible one."""


class DecompositionStall(CqglabError):
    """Random commutant splitting failed to separate an invariant subspace."""


class MultiplicityMismatch(CqglabError):
    """Intertwiner solution-space dimension disagrees with the character count."""


class SingularC(CqglabError):
    """The assembled Clebsch-Gordan matrix is not invertible."""


class NonIntegerMultiplicity(CqglabError):
    """A character inner product is not close to a nonnegative integer."""


class CoidealMismatch(CqglabError):
    """A coaction leg escapes the subalgebra that should carry it."""


class SchemaError(CqglabError):
    """A JSON file does not match the expected schema."""


class LinearDependenceWarning(UserWarning):
    """Products of basis functions are linearly dependent; coupled sets may vanish."""
