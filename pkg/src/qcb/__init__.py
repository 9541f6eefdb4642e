"""Exact noncommutative algebra for the multiparameter reflection equation algebra.

Submodules: ``scalars``, ``ncpoly``, ``tensor_r``, ``minors``,
``invariants_ch``, ``inverse``, ``exprio`` and ``cli``.
"""
__version__ = "0.1.0"
