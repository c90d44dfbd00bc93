"""qcatk: finite simplicial sets, quasicategories, and desk-scale
Waldhausen K-theory verification."""

__version__ = "0.1.0"
