"""Graphs, permutation groups, polynomials and real roots."""
