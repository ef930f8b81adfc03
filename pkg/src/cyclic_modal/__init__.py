"""Cyclic modal formulas represented as guarded labeled graphs."""
from __future__ import annotations

from .formula import Formula
from .graph import bisimilar, canon, isomorphic, minimize
from .kernels import BACKEND
from .syntax import parse, render

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Formula",
    "bisimilar",
    "canon",
    "isomorphic",
    "minimize",
    "parse",
    "render",
]
