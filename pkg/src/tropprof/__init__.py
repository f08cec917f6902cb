"""Certify pure binomial inequalities in homomorphism numbers of almost-stars."""

__version__ = "0.1.0"
