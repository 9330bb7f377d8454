"""Generic covers of the plane branched over curves with singularities of
type x^n = y^m: classification, monodromy checks, numeric tracking,
invariants and certified counterexamples."""

__version__ = "0.1.0"
