"""Guard placement on 1.5D orthogonal terrains."""

__version__ = "0.1.0"
