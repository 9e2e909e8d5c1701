"""Counterexample construction and root-bound checks."""
