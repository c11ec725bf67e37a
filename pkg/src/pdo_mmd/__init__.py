"""PDO-MMD - Mercer kernels from pseudo-differential operator symbols and MMD tooling."""

__version__ = "0.1.0"
__all__ = ["__version__"]
