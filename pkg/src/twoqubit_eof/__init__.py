"""twoqubit-eof: entanglement of formation for two-qubit density matrices."""

__version__ = "0.1.0"
__all__ = ["__version__"]
