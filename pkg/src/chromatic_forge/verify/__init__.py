"""Exhaustive verification over small graph families."""
