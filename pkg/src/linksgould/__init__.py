"""Exact evaluation and analysis of the Links-Gould invariants LG^{2,1} and LG^{1,1}."""
