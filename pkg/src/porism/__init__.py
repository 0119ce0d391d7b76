"""Exact Poncelet-process toolkit for conic pairs over finite fields, Q and Q(sqrt d)."""

__version__ = "0.1.0"
